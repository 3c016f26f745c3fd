//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::record::Format;

#[derive(Debug, Parser)]
#[command(name = "ellipsoid", version, about = "Surface areas, projections and mean curvatures of n-dimensional ellipsoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Master seed for every Monte Carlo stream. Seeded output is reproducible byte for byte.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: u64,

    /// Relative tolerance of quadratures and series.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Also evaluate an independent oracle; exit with status 3 if it disagrees.
    #[arg(long, global = true)]
    pub validate: bool,

    /// Worker threads for Monte Carlo (results do not depend on this).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct AxesArgs {
    /// Semi-axes, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub axes: Option<String>,

    /// File with one semi-axis per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    pub axes_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SphereMethod {
    /// Deterministic one-dimensional moment integral.
    #[value(alias = "moment_integral")]
    Integral,
    /// Gaussian Monte Carlo.
    #[value(alias = "gaussian_mc")]
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FdMethod {
    /// Series when every |x| <= 0.95, integral otherwise.
    Auto,
    Series,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Auto,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Direct,
    #[value(alias = "published_closed_form")]
    Published,
    Normalized,
    /// Limit constant for the regime suggested by the shape of (n, k).
    Asymptotic,
    #[value(name = "asymptotic_fixed_k")]
    AsymptoticFixedK,
    #[value(name = "asymptotic_fixed_codim")]
    AsymptoticFixedCodim,
    #[value(name = "asymptotic_joint")]
    AsymptoticJoint,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Surface area of the ellipsoid with the given semi-axes.
    ///
    /// Validation compares the integral with Monte Carlo (or the reverse);
    /// it passes when the two agree within 5 combined standard errors.
    Surface {
        #[command(flatten)]
        axes: AxesArgs,
        #[arg(long, value_enum, default_value = "integral")]
        method: SphereMethod,
    },
    /// Isoperimetric ratio, surface area over volume.
    ///
    /// Validation as for `surface`.
    Ratio {
        #[command(flatten)]
        axes: AxesArgs,
        #[arg(long, value_enum, default_value = "integral")]
        method: SphereMethod,
    },
    /// Sharp constants c_n and C_n bounding the ratio norm against the Euclidean norm.
    ///
    /// Validation evaluates the two extremal cases by the integral; tolerance 1e-9 relative.
    RatioBounds {
        #[arg(long)]
        dim: usize,
    },
    /// Large-dimension approximation of the isoperimetric ratio.
    ///
    /// Validation compares with the integral; tolerance 5e-2 relative.
    Asymptotics {
        #[command(flatten)]
        axes: AxesArgs,
    },
    /// Lauricella F_D(a; b; c; x).
    ///
    /// Validation cross-checks series against integral; tolerance 1e-8 relative.
    Fd {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Comma separated.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Comma separated, same length as `b`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: FdMethod,
    },
    /// Isoperimetric ratio through its hypergeometric representation.
    ///
    /// Reports the as-printed variant alongside. Validation compares the
    /// corrected variant with the integral; tolerance 1e-8 relative.
    RatioFd {
        #[command(flatten)]
        axes: AxesArgs,
        /// Scale in the arguments 1 − α q². Defaults to the value centring them around 0.
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Volume of the orthogonal projection onto a subspace.
    ///
    /// Validation compares with the Gram-determinant volume; tolerance 1e-10 relative.
    Project {
        #[command(flatten)]
        axes: AxesArgs,
        /// Spanning vectors: `e1,e3` for coordinate vectors, or `1,0,0;0,1,1` for explicit ones.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "basis_file", required_unless_present = "basis_file")]
        basis: Option<String>,
        /// File with one spanning vector per line, components separated by commas or spaces.
        #[arg(long)]
        basis_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        form: FormArg,
    },
    /// k-th integral mean curvature by Monte Carlo over random subspaces.
    ///
    /// Validation uses the closed form for balls (4σ plus 1e-9 relative), the
    /// surface-area integral for k = 0 (4σ), and the two-sided bounds
    /// otherwise (inside within 3σ).
    Meancurv {
        #[command(flatten)]
        axes: AxesArgs,
        #[arg(long)]
        k: usize,
    },
    /// Two-sided bounds on the k-th integral mean curvature.
    ///
    /// Validation draws a Monte Carlo estimate and requires it inside the bounds within 3σ.
    Bounds {
        #[command(flatten)]
        axes: AxesArgs,
        #[arg(long)]
        k: usize,
    },
    /// Ratio of the mean curvatures of the ball and the flat ball, in several forms.
    ///
    /// Validation compares the selected form with its independently derived
    /// value; tolerance 1e-8 relative. Forms printed with errors fail.
    RatioConstants {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "direct")]
        mode: ModeArg,
    },
    /// Audit of printed formulas against their validated counterparts.
    ///
    /// CSV output has one row per entry. Validation fails if any entry
    /// marked confirmed deviates by more than 1e-8.
    Ledger,
}
