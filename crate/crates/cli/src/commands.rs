//! Sub-command implementations.

use std::fs;
use std::path::Path;

use serde_json::Value;

use ellipsoid_measures::curvature::{
    curvature_bounds, kubota_mc, mk_ball, mk_ratio, AsymptoticRegime, CurvatureQuery, RatioMode,
};
use ellipsoid_measures::lauricella::{centred_alpha, fd_integral, fd_series, ratio_via_fd, FdParams, SERIES_MAX_ABS_X};
use ellipsoid_measures::ledger::{formula_ledger, LedgerStatus, CONFIRM_TOL};
use ellipsoid_measures::projection::{projected_volume, projected_volume_gram, Subspace, SubspaceBasis, VolumeForm};
use ellipsoid_measures::surface::{ratio_asymptotic, ratio_bounds, ratio_norm, surface_area, RatioMethod};
use ellipsoid_measures::{Estimate, MonteCarloConfig, MultiIndex, QuadratureConfig};

use crate::args::{AxesArgs, Command, Common, FdMethod, FormArg, ModeArg, SphereMethod};
use crate::record::RunRecord;
use crate::CliError;

/// Result of a command before serialization.
pub enum Output {
    Record(RunRecord),
    /// A record whose `extra.entries` is also emitted as a CSV table.
    Table(RunRecord, Vec<Value>),
}

pub struct Outcome {
    pub output: Output,
    /// False when `--validate` found a deviation beyond tolerance.
    pub valid: bool,
}

const MC_SIGMAS: f64 = 5.0;
const BOUND_SIGMAS: f64 = 3.0;
const BALL_SIGMAS: f64 = 4.0;
const ASYMPTOTIC_TOL: f64 = 5e-2;
const BOUNDS_TOL: f64 = 1e-9;
const FD_TOL: f64 = 1e-8;
const PROJECT_TOL: f64 = 1e-10;

struct Ctx<'a> {
    common: &'a Common,
}

impl Ctx<'_> {
    fn mc(&self) -> MonteCarloConfig {
        let seed = self.common.seed.unwrap_or(MonteCarloConfig::default().master_seed);
        MonteCarloConfig::new(self.common.samples, seed)
    }

    fn quad(&self) -> QuadratureConfig {
        QuadratureConfig::with_rel_tol(self.common.tol)
    }

    fn sphere(&self, m: SphereMethod) -> RatioMethod {
        match m {
            SphereMethod::Integral => RatioMethod::MomentIntegral(self.quad()),
            SphereMethod::Mc => RatioMethod::MonteCarlo(self.mc()),
        }
    }

    fn other(&self, m: SphereMethod) -> RatioMethod {
        match m {
            SphereMethod::Integral => self.sphere(SphereMethod::Mc),
            SphereMethod::Mc => self.sphere(SphereMethod::Integral),
        }
    }

    /// Attaches the seed and sample count that produced a Monte Carlo value.
    fn stamp(&self, mut r: RunRecord, e: &Estimate) -> RunRecord {
        if !e.method.is_deterministic() {
            let cfg = self.mc();
            r.std_error = Some(e.std_error);
            r.seed = Some(cfg.master_seed);
            r.samples = Some(e.samples_used);
        }
        r
    }
}

fn rel_dev(value: f64, oracle: f64) -> f64 {
    ((value - oracle) / oracle).abs()
}

/// Agreement of two estimates within `sigmas` combined standard errors,
/// with a rounding floor for when both are deterministic.
fn agree(a: &Estimate, b: &Estimate, sigmas: f64) -> bool {
    let s = a.std_error.hypot(b.std_error);
    (a.value - b.value).abs() <= sigmas * s + 1e-9 * b.value.abs()
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{flag}: cannot parse {t:?} as a number")))
        })
        .collect()
}

fn read_axes(args: &AxesArgs) -> Result<(Vec<f64>, Value), CliError> {
    match (&args.axes, &args.axes_file) {
        (Some(s), _) => {
            let v = parse_list("--axes", s)?;
            Ok((v.clone(), v.into()))
        }
        (None, Some(path)) => {
            let text = read_file("--axes-file", path)?;
            let v = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| {
                    l.parse::<f64>()
                        .map_err(|_| CliError::Usage(format!("--axes-file: cannot parse {l:?} as a number")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((v, path.display().to_string().into()))
        }
        (None, None) => Err(CliError::Usage("one of --axes or --axes-file is required".into())),
    }
}

fn read_file(flag: &str, path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{flag}: {}: {e}", path.display())))
}

fn axes_key(axes: &AxesArgs) -> &'static str {
    if axes.axes.is_some() {
        "axes"
    } else {
        "axes_file"
    }
}

/// Parses `e1,e3` or `1,0,0;0,1,1`.
fn parse_basis(spec: &str, n: usize) -> Result<SubspaceBasis, CliError> {
    let spec = spec.trim();
    let coordinate: Option<Vec<usize>> = spec
        .split(',')
        .map(|t| t.trim().strip_prefix('e').and_then(|d| d.parse().ok()))
        .collect();
    if let Some(labels) = coordinate {
        let idx = MultiIndex::from_one_based(&labels, n).map_err(|e| CliError::Usage(format!("--basis: {e}")))?;
        return SubspaceBasis::coordinate(&idx).map_err(|e| CliError::Usage(format!("--basis: {e}")));
    }
    let vectors = spec
        .split(';')
        .map(|v| parse_list("--basis", v))
        .collect::<Result<Vec<_>, _>>()?;
    vectors_to_basis("--basis", &vectors, n)
}

fn vectors_to_basis(flag: &str, vectors: &[Vec<f64>], n: usize) -> Result<SubspaceBasis, CliError> {
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(CliError::Usage(format!(
            "{flag}: vector has {} components but there are {n} semi-axes",
            v.len()
        )));
    }
    SubspaceBasis::from_vectors(vectors).map_err(|e| CliError::Usage(format!("{flag}: {e}")))
}

fn regime(mode: ModeArg, n: usize, k: usize) -> RatioMode {
    match mode {
        ModeArg::Direct => RatioMode::Direct,
        ModeArg::Published => RatioMode::PublishedClosedForm,
        ModeArg::Normalized => RatioMode::Normalized,
        ModeArg::Asymptotic => RatioMode::Asymptotic(AsymptoticRegime::for_query(n, k)),
        ModeArg::AsymptoticFixedK => RatioMode::Asymptotic(AsymptoticRegime::FixedOrder),
        ModeArg::AsymptoticFixedCodim => RatioMode::Asymptotic(AsymptoticRegime::FixedCodimension),
        ModeArg::AsymptoticJoint => RatioMode::Asymptotic(AsymptoticRegime::Joint),
    }
}

pub fn execute(command: &Command, common: &Common) -> Result<Outcome, CliError> {
    let ctx = Ctx { common };
    let validate = common.validate;
    let mut valid = true;
    let record = match command {
        Command::Surface { axes, method } | Command::Ratio { axes, method } => {
            let name = if matches!(command, Command::Surface { .. }) { "surface" } else { "ratio" };
            let (a, shown) = read_axes(axes)?;
            let eval = |m: &RatioMethod| -> Result<Estimate, CliError> {
                if name == "surface" {
                    Ok(surface_area(&a, m)?)
                } else {
                    let q: Vec<f64> = a.iter().map(|x| 1.0 / x).collect();
                    Ok(ratio_norm(&q, m)?.estimate())
                }
            };
            let e = eval(&ctx.sphere(*method))?;
            let mut r = ctx.stamp(RunRecord::new(name, e.value, e.method.as_str()), &e).param(axes_key(axes), shown);
            if validate {
                let o = eval(&ctx.other(*method))?;
                valid = agree(&e, &o, MC_SIGMAS);
                r.oracle_value = Some(o.value);
                r.oracle_deviation = Some(rel_dev(e.value, o.value));
                r = r.extra("oracle_method", o.method.as_str()).extra("oracle_sigmas", e.sigma_distance(&o));
                if !o.method.is_deterministic() {
                    r = ctx.stamp(r, &o);
                }
            }
            r
        }
        Command::RatioBounds { dim } => {
            let b = ratio_bounds(*dim)?;
            let mut r = RunRecord::new("ratio-bounds", b.lower, "closed_form")
                .param("dim", *dim)
                .extra("c_n", b.lower)
                .extra("C_n", b.upper)
                .extra("c_n_over_C_n", b.lower / b.upper);
            if validate {
                let m = ctx.sphere(SphereMethod::Integral);
                let mut e1 = vec![0.0; *dim];
                e1[0] = 1.0;
                let lo = ratio_norm(&e1, &m)?.norm_value;
                let hi = ratio_norm(&vec![1.0; *dim], &m)?.norm_value / (*dim as f64).sqrt();
                let dev = rel_dev(b.lower, lo).max(rel_dev(b.upper, hi));
                valid = dev <= BOUNDS_TOL;
                r.oracle_value = Some(lo);
                r.oracle_deviation = Some(dev);
                r = r.extra("oracle_C_n", hi);
            }
            r
        }
        Command::Asymptotics { axes } => {
            let (a, shown) = read_axes(axes)?;
            let q: Vec<f64> = a.iter().map(|x| 1.0 / x).collect();
            let v = ratio_asymptotic(&q)?;
            let mut r = RunRecord::new("asymptotics", v.value, "asymptotic")
                .param(axes_key(axes), shown)
                .extra("lindeberg_ratio", v.lindeberg_ratio);
            if validate {
                let o = ratio_norm(&q, &ctx.sphere(SphereMethod::Integral))?.ratio;
                let dev = rel_dev(v.value, o);
                valid = dev <= ASYMPTOTIC_TOL;
                r.oracle_value = Some(o);
                r.oracle_deviation = Some(dev);
            }
            r
        }
        Command::Fd { a, b, c, x, method } => {
            let bv = parse_list("--b", b)?;
            let xv = parse_list("--x", x)?;
            let p = FdParams::new(*a, bv.clone(), *c, xv.clone())?;
            let series_ok = p.max_abs_x() <= SERIES_MAX_ABS_X;
            let use_series = match method {
                FdMethod::Auto => series_ok,
                FdMethod::Series => true,
                FdMethod::Integral => false,
            };
            let series = || fd_series(&p, common.tol, ellipsoid_measures::lauricella::DEFAULT_MAX_TOTAL_DEGREE);
            let (value, name) = if use_series {
                (series()?, "series")
            } else {
                (fd_integral(&p, &ctx.quad())?, "integral")
            };
            let mut r = RunRecord::new("fd", value, name)
                .param("a", *a)
                .param("b", bv)
                .param("c", *c)
                .param("x", xv);
            if validate {
                // Near |x| = 1 only the integral is available; check it against a tighter run.
                let (o, oname) = if use_series {
                    (fd_integral(&p, &ctx.quad())?, "integral")
                } else if series_ok {
                    (series()?, "series")
                } else {
                    (fd_integral(&p, &QuadratureConfig::with_rel_tol(common.tol * 1e-2))?, "integral_refined")
                };
                let dev = rel_dev(value, o);
                valid = dev <= FD_TOL;
                r.oracle_value = Some(o);
                r.oracle_deviation = Some(dev);
                r = r.extra("oracle_method", oname);
            }
            r
        }
        Command::RatioFd { axes, alpha } => {
            let (a, shown) = read_axes(axes)?;
            let q: Vec<f64> = a.iter().map(|x| 1.0 / x).collect();
            let alpha = match alpha {
                Some(al) => *al,
                None => centred_alpha(&q)?,
            };
            let rep = ratio_via_fd(&q, alpha, &ctx.quad())?;
            let mut r = RunRecord::new("ratio-fd", rep.corrected.value, "hypergeometric")
                .param(axes_key(axes), shown)
                .param("alpha", alpha)
                .extra("printed_value", rep.printed.value)
                .extra("printed_deviation_factor", rep.printed.deviation_factor().map(Value::from).unwrap_or(Value::Null));
            if validate {
                let dev = rep.corrected.relative_deviation().unwrap_or(f64::INFINITY);
                valid = dev <= FD_TOL;
                r.oracle_value = Some(rep.oracle);
                r.oracle_deviation = Some(dev);
                r = r.extra("oracle_method", "moment_integral");
            }
            r
        }
        Command::Project { axes, basis, basis_file, form } => {
            let (a, shown) = read_axes(axes)?;
            let n = a.len();
            let (omega, basis_shown) = match (basis, basis_file) {
                (Some(s), _) => (parse_basis(s, n)?, Value::from(s.clone())),
                (None, Some(path)) => {
                    let text = read_file("--basis-file", path)?;
                    let vectors = text
                        .lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(|l| {
                            l.split(|c: char| c == ',' || c.is_whitespace())
                                .filter(|t| !t.is_empty())
                                .map(|t| parse_list("--basis-file", t).map(|v| v[0]))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    (vectors_to_basis("--basis-file", &vectors, n)?, Value::from(path.display().to_string()))
                }
                (None, None) => return Err(CliError::Usage("one of --basis or --basis-file is required".into())),
            };
            let sub = Subspace::from(omega.clone());
            let f = match form {
                FormArg::Auto => VolumeForm::auto(&a, &sub),
                FormArg::One => VolumeForm::PrincipalMinors,
                FormArg::Two => VolumeForm::FrameMinors,
                FormArg::Three => VolumeForm::ComplementPrincipalMinors,
                FormArg::Four => VolumeForm::ComplementFrameMinors,
                FormArg::Singular => VolumeForm::Singular,
            };
            let v = projected_volume(&a, &sub, f)?;
            let key = if basis.is_some() { "basis" } else { "basis_file" };
            let mut r = RunRecord::new("project", v, format!("form_{f}"))
                .param(axes_key(axes), shown)
                .param(key, basis_shown)
                .param("form", f.as_str());
            if validate {
                let o = projected_volume_gram(&a, &omega)?;
                let dev = rel_dev(v, o);
                valid = dev <= PROJECT_TOL;
                r.oracle_value = Some(o);
                r.oracle_deviation = Some(dev);
                r = r.extra("oracle_method", "gram_determinant");
            }
            r
        }
        Command::Meancurv { axes, k } => {
            let (a, shown) = read_axes(axes)?;
            let query = CurvatureQuery::from_axes(&a, *k)?;
            let e = kubota_mc(&query, &ctx.mc())?;
            let mut r = ctx
                .stamp(RunRecord::new("meancurv", e.value, e.method.as_str()), &e)
                .param(axes_key(axes), shown)
                .param("k", *k);
            if validate {
                let n = a.len();
                let ball = a.iter().all(|x| *x == a[0]) && a[0] > 0.0;
                if ball {
                    let o = mk_ball(n, *k, a[0])?;
                    valid = agree(&e, &Estimate::exact(o, ellipsoid_measures::Method::ClosedForm), BALL_SIGMAS);
                    r.oracle_value = Some(o);
                    r.oracle_deviation = Some(rel_dev(e.value, o));
                    r = r.extra("oracle_method", "closed_form");
                } else if *k == 0 && a.iter().all(|x| *x > 0.0) {
                    let o = surface_area(&a, &ctx.sphere(SphereMethod::Integral))?;
                    valid = agree(&e, &o, BALL_SIGMAS);
                    r.oracle_value = Some(o.value);
                    r.oracle_deviation = Some(rel_dev(e.value, o.value));
                    r = r.extra("oracle_method", "surface_area");
                } else {
                    let b = curvature_bounds(&query)?;
                    let (ok, dev) = bounds_check(e.value, e.std_error, b.lower, b.upper);
                    valid = ok;
                    r.oracle_deviation = Some(dev);
                    r = r.extra("lower", b.lower).extra("upper", b.upper).extra("oracle_method", "bounds");
                }
            }
            r
        }
        Command::Bounds { axes, k } => {
            let (a, shown) = read_axes(axes)?;
            let query = CurvatureQuery::from_axes(&a, *k)?;
            let b = curvature_bounds(&query)?;
            let mut r = RunRecord::new("bounds", b.upper, "closed_form")
                .param(axes_key(axes), shown)
                .param("k", *k)
                .extra("lower", b.lower)
                .extra("upper", b.upper)
                .extra("amplitude", b.amplitude);
            if validate {
                let e = kubota_mc(&query, &ctx.mc())?;
                let (ok, dev) = bounds_check(e.value, e.std_error, b.lower, b.upper);
                valid = ok;
                r.oracle_value = Some(e.value);
                r.oracle_deviation = Some(dev);
                r.seed = Some(ctx.mc().master_seed);
                r.samples = Some(e.samples_used);
                r = r.extra("oracle_method", e.method.as_str()).extra("oracle_std_error", e.std_error);
            }
            r
        }
        Command::RatioConstants { dim, k, mode } => {
            let m = regime(*mode, *dim, *k);
            let rep = mk_ratio(*dim, *k, m)?;
            let opt = |x: Option<f64>| x.map(Value::from).unwrap_or(Value::Null);
            let mut r = RunRecord::new("ratio-constants", rep.value, m.to_string())
                .param("dim", *dim)
                .param("k", *k)
                .extra("published", opt(rep.published))
                .extra("validated", rep.validated)
                .extra("deviation_factor", opt(rep.deviation_factor()));
            if validate {
                let oracle = if m == RatioMode::Direct {
                    let ball = mk_ball(*dim, *k, 1.0)?;
                    ball / ellipsoid_measures::curvature::mk_flat_ball(*dim, *k)?
                } else {
                    rep.validated
                };
                let dev = rel_dev(rep.value, oracle);
                valid = dev <= FD_TOL;
                r.oracle_value = Some(oracle);
                r.oracle_deviation = Some(dev);
            }
            r
        }
        Command::Ledger => {
            let entries = formula_ledger(&ctx.quad())?;
            if validate {
                valid = entries.iter().all(|e| {
                    e.status != LedgerStatus::Confirmed
                        || e.deviation_factor.is_none_or(|f| (f - 1.0).abs() <= CONFIRM_TOL)
                });
            }
            let misprints = entries.iter().filter(|e| e.status == LedgerStatus::Misprint).count();
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| serde_json::to_value(e).expect("ledger entries serialize"))
                .collect();
            let r = RunRecord::new("ledger", entries.len() as f64, "formula_ledger")
                .extra("misprints", misprints)
                .extra("entries", Value::Array(rows.clone()));
            return Ok(Outcome {
                output: Output::Table(r, rows),
                valid,
            });
        }
    };
    Ok(Outcome {
        output: Output::Record(record),
        valid,
    })
}

/// Whether `v ± 3σ` meets `[lower, upper]`, and the relative distance outside it.
fn bounds_check(v: f64, sigma: f64, lower: f64, upper: f64) -> (bool, f64) {
    let ok = v >= lower - BOUND_SIGMAS * sigma && v <= upper + BOUND_SIGMAS * sigma;
    let dev = if v < lower {
        (lower - v) / lower
    } else if v > upper {
        (v - upper) / upper
    } else {
        0.0
    };
    (ok, dev)
}
