//! Orthogonal projections of ellipsoids.
//!
//! A `k`-dimensional subspace is given either by an orthonormal frame `Ω`
//! (`n × k`) or by its projector `P = ΩΩᵀ`. The `k`-volume of the projection
//! of the ellipsoid with semi-axes `a` onto the subspace has four equivalent
//! minor expansions,
//!
//! ```text
//! (1)  κ_k √(Σ_{|i|=k}   P_i a_i²)
//! (2)  κ_k √(Σ_{|i|=k}   (Ω_i)² a_i²)
//! (3)  κ_k ∏a √(Σ_{|j|=n−k} P⊥_j / a_j²)
//! (4)  κ_k ∏a √(Σ_{|j|=n−k} (Ω⊥_j)² / a_j²)
//! ```
//!
//! where `P_i` is a principal minor, `Ω_i` the `k × k` minor on rows `i`,
//! `a_i = ∏_{j∈i} a_j`, and `⊥` marks the orthogonal complement. The product
//! of the singular values of `P·diag(a)` gives a fifth, independent route.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{binomial, check_axes, elementary_symmetric, ln_unit_ball_volume, MultiIndex};
use crate::sphere::fill_gaussian;

/// Frames with `max |ΩᵀΩ − I|` at most this are accepted as they are.
pub const ORTHONORMAL_TOL: f64 = 1e-12;
/// Frames up to this error are re-orthonormalized; worse ones are rejected.
pub const REPAIR_TOL: f64 = 1e-6;
/// Idempotence and symmetry tolerance for projectors.
pub const PROJECTOR_TOL: f64 = 1e-12;
/// Distance of the trace from an integer tolerated for projectors.
pub const TRACE_TOL: f64 = 1e-10;
/// Singular values below this fraction of the largest count as zero.
pub const RANK_CUTOFF: f64 = 1e-13;
/// Largest number of minors an enumeration form will visit.
pub const MAX_ENUMERATION: f64 = 2.0e6;

fn orthonormality_error(m: &DMatrix<f64>) -> f64 {
    let g = m.transpose() * m;
    let mut err = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            err = err.max((g[(i, j)] - target).abs());
        }
    }
    err
}

/// Modified Gram–Schmidt, applied twice.
fn gram_schmidt(m: &mut DMatrix<f64>) -> Result<()> {
    for _ in 0..2 {
        for j in 0..m.ncols() {
            for i in 0..j {
                let d = m.column(i).dot(&m.column(j));
                let ci = m.column(i).clone_owned();
                m.column_mut(j).axpy(-d, &ci, 1.0);
            }
            let norm = m.column(j).norm();
            if !(norm > 1e-8) {
                return Err(Error::NotOrthonormal(1.0));
            }
            m.column_mut(j).scale_mut(1.0 / norm);
        }
    }
    Ok(())
}

/// An orthonormal `n × k` frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    columns: DMatrix<f64>,
}

impl SubspaceBasis {
    /// Accepts a frame whose orthonormality error is at most [`ORTHONORMAL_TOL`].
    pub fn new(columns: DMatrix<f64>) -> Result<Self> {
        Self::check_shape(&columns)?;
        let err = orthonormality_error(&columns);
        if !(err <= ORTHONORMAL_TOL) {
            return Err(Error::NotOrthonormal(err));
        }
        Ok(SubspaceBasis { columns })
    }

    /// Builds a frame from basis vectors, re-orthonormalizing when the error
    /// is in `(ORTHONORMAL_TOL, REPAIR_TOL]`.
    pub fn from_vectors(vectors: &[Vec<f64>]) -> Result<Self> {
        let k = vectors.len();
        if k == 0 {
            return Err(Error::Dimension("a subspace needs at least one basis vector".into()));
        }
        let n = vectors[0].len();
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension(format!(
                "basis vectors have lengths {n} and {}",
                v.len()
            )));
        }
        if vectors.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::domain("basis vectors must be finite"));
        }
        let mut columns = DMatrix::from_fn(n, k, |i, j| vectors[j][i]);
        Self::check_shape(&columns)?;
        let err = orthonormality_error(&columns);
        if err <= ORTHONORMAL_TOL {
            return Ok(SubspaceBasis { columns });
        }
        if err > REPAIR_TOL {
            return Err(Error::NotOrthonormal(err));
        }
        gram_schmidt(&mut columns)?;
        SubspaceBasis::new(columns)
    }

    /// The span of the standard basis vectors `e_i`, `i ∈ idx`.
    pub fn coordinate(idx: &MultiIndex) -> Result<Self> {
        if idx.is_empty() {
            return Err(Error::Dimension("a subspace needs at least one basis vector".into()));
        }
        let n = idx.ambient_dim();
        let mut columns = DMatrix::zeros(n, idx.len());
        for (j, i) in idx.iter().enumerate() {
            columns[(i, j)] = 1.0;
        }
        Ok(SubspaceBasis { columns })
    }

    fn check_shape(m: &DMatrix<f64>) -> Result<()> {
        let (n, k) = m.shape();
        if k == 0 || k > n {
            return Err(Error::Dimension(format!(
                "a frame must have 1 <= k <= n columns, got n = {n}, k = {k}"
            )));
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.columns.nrows()
    }

    pub fn sub_dim(&self) -> usize {
        self.columns.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.columns
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.columns
    }

    pub fn projector(&self) -> Projector {
        projector_from_basis(self)
    }

    /// An orthonormal frame of the orthogonal complement; `None` when `k = n`.
    pub fn complement(&self) -> Option<SubspaceBasis> {
        self.projector().complement().basis()
    }

    /// `Ω R` for a `k × k` orthogonal `R`.
    pub fn rotated(&self, r: &DMatrix<f64>) -> Result<SubspaceBasis> {
        if r.shape() != (self.sub_dim(), self.sub_dim()) {
            return Err(Error::Dimension(format!(
                "rotation must be {k}×{k}",
                k = self.sub_dim()
            )));
        }
        SubspaceBasis::new(&self.columns * r)
    }
}

/// A symmetric idempotent `n × n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: DMatrix<f64>,
    rank: usize,
}

impl Projector {
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        let (n, m) = matrix.shape();
        if n != m || n == 0 {
            return Err(Error::Dimension(format!("projector must be square, got {n}×{m}")));
        }
        let asym = (&matrix - matrix.transpose()).amax();
        if !(asym <= PROJECTOR_TOL) {
            return Err(Error::NotProjector(format!("asymmetry {asym:e}")));
        }
        let idem = (&matrix * &matrix - &matrix).amax();
        if !(idem <= PROJECTOR_TOL) {
            return Err(Error::NotProjector(format!("max |P² − P| = {idem:e}")));
        }
        let trace = matrix.trace();
        let rank = trace.round();
        if !((trace - rank).abs() <= TRACE_TOL) {
            return Err(Error::NotProjector(format!("trace {trace} is not an integer")));
        }
        Ok(Projector {
            matrix,
            rank: rank as usize,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `I − P`.
    pub fn complement(&self) -> Projector {
        let n = self.dim();
        Projector {
            matrix: DMatrix::identity(n, n) - &self.matrix,
            rank: n - self.rank,
        }
    }

    /// An orthonormal frame of the range; `None` for the zero projector.
    pub fn basis(&self) -> Option<SubspaceBasis> {
        if self.rank == 0 {
            return None;
        }
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        let mut columns = DMatrix::from_fn(self.dim(), self.rank, |i, j| eig.eigenvectors[(i, order[j])]);
        gram_schmidt(&mut columns).ok()?;
        Some(SubspaceBasis { columns })
    }
}

/// `P = ΩΩᵀ`.
pub fn projector_from_basis(omega: &SubspaceBasis) -> Projector {
    let m = omega.matrix();
    let mut p = m * m.transpose();
    // exact symmetry
    for i in 0..p.nrows() {
        for j in 0..i {
            let v = 0.5 * (p[(i, j)] + p[(j, i)]);
            p[(i, j)] = v;
            p[(j, i)] = v;
        }
    }
    Projector {
        matrix: p,
        rank: omega.sub_dim(),
    }
}

/// Determinant of a square matrix stored row-major, by LU with partial pivoting.
fn lu_det(mut a: Vec<f64>, k: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..k {
        let (piv, pmax) = (col..k)
            .map(|r| (r, a[r * k + col].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax == 0.0 {
            return 0.0;
        }
        if piv != col {
            for c in 0..k {
                a.swap(piv * k + c, col * k + c);
            }
            det = -det;
        }
        let d = a[col * k + col];
        det *= d;
        for r in col + 1..k {
            let f = a[r * k + col] / d;
            if f != 0.0 {
                for c in col + 1..k {
                    a[r * k + c] -= f * a[col * k + c];
                }
            }
        }
    }
    det
}

/// Determinant of the submatrix of `a` on the given rows and columns.
pub fn minor_det(a: &DMatrix<f64>, rows: &MultiIndex, cols: &MultiIndex) -> Result<f64> {
    if rows.len() != cols.len() {
        return Err(Error::Dimension(format!(
            "minor needs as many rows as columns, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    if rows.ambient_dim() != a.nrows() || cols.ambient_dim() != a.ncols() {
        return Err(Error::Dimension(format!(
            "multi-indices address a {}×{} matrix, got {}×{}",
            rows.ambient_dim(),
            cols.ambient_dim(),
            a.nrows(),
            a.ncols()
        )));
    }
    let k = rows.len();
    let mut sub = Vec::with_capacity(k * k);
    for i in rows.iter() {
        for j in cols.iter() {
            sub.push(a[(i, j)]);
        }
    }
    Ok(lu_det(sub, k))
}

/// The increasing complement of a multi-index.
pub fn complement(i: &MultiIndex) -> MultiIndex {
    i.complement()
}

/// Which expansion [`projected_volume`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VolumeForm {
    #[serde(rename = "1")]
    PrincipalMinors,
    #[serde(rename = "2")]
    FrameMinors,
    #[serde(rename = "3")]
    ComplementPrincipalMinors,
    #[serde(rename = "4")]
    ComplementFrameMinors,
    #[serde(rename = "singular")]
    Singular,
}

impl VolumeForm {
    pub const ALL: [VolumeForm; 5] = [
        VolumeForm::PrincipalMinors,
        VolumeForm::FrameMinors,
        VolumeForm::ComplementPrincipalMinors,
        VolumeForm::ComplementFrameMinors,
        VolumeForm::Singular,
    ];

    /// Forms 1/2 for `k <= n/2`, forms 3/4 above, falling back to 1/2 when
    /// some axis is zero. Frame forms are preferred when a frame is given.
    pub fn auto(axes: &[f64], subspace: &Subspace) -> VolumeForm {
        let (n, k) = (subspace.ambient_dim(), subspace.sub_dim());
        let complement = 2 * k > n && axes.iter().all(|a| *a > 0.0);
        match (subspace, complement) {
            (Subspace::Basis(_), false) => VolumeForm::FrameMinors,
            (Subspace::Basis(_), true) => VolumeForm::ComplementFrameMinors,
            (Subspace::Projector(_), false) => VolumeForm::PrincipalMinors,
            (Subspace::Projector(_), true) => VolumeForm::ComplementPrincipalMinors,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VolumeForm::PrincipalMinors => "1",
            VolumeForm::FrameMinors => "2",
            VolumeForm::ComplementPrincipalMinors => "3",
            VolumeForm::ComplementFrameMinors => "4",
            VolumeForm::Singular => "singular",
        }
    }
}

impl fmt::Display for VolumeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VolumeForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(VolumeForm::PrincipalMinors),
            "2" => Ok(VolumeForm::FrameMinors),
            "3" => Ok(VolumeForm::ComplementPrincipalMinors),
            "4" => Ok(VolumeForm::ComplementFrameMinors),
            "singular" => Ok(VolumeForm::Singular),
            other => Err(Error::domain(format!(
                "unknown volume form {other:?}; expected 1, 2, 3, 4 or singular"
            ))),
        }
    }
}

/// A subspace given by a frame or by its projector.
#[derive(Debug, Clone, PartialEq)]
pub enum Subspace {
    Basis(SubspaceBasis),
    Projector(Projector),
}

impl Subspace {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Subspace::Basis(b) => b.ambient_dim(),
            Subspace::Projector(p) => p.dim(),
        }
    }

    pub fn sub_dim(&self) -> usize {
        match self {
            Subspace::Basis(b) => b.sub_dim(),
            Subspace::Projector(p) => p.rank(),
        }
    }

    pub fn projector(&self) -> Projector {
        match self {
            Subspace::Basis(b) => b.projector(),
            Subspace::Projector(p) => p.clone(),
        }
    }

    pub fn basis(&self) -> Option<SubspaceBasis> {
        match self {
            Subspace::Basis(b) => Some(b.clone()),
            Subspace::Projector(p) => p.basis(),
        }
    }
}

impl From<SubspaceBasis> for Subspace {
    fn from(b: SubspaceBasis) -> Self {
        Subspace::Basis(b)
    }
}

impl From<Projector> for Subspace {
    fn from(p: Projector) -> Self {
        Subspace::Projector(p)
    }
}

fn check_enumeration(n: usize, k: usize) -> Result<()> {
    let count = binomial(n, k);
    if count > MAX_ENUMERATION {
        return Err(Error::domain(format!(
            "this form visits C({n},{k}) = {count:e} minors; use form 1 or singular"
        )));
    }
    Ok(())
}

/// How `Σ_{|i|=k} P_i a_i²` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorSumPath {
    /// `e_k` of the eigenvalues of `diag(a) P diag(a)`.
    Eigenvalues,
    /// Sum over all `C(n, k)` principal minors.
    Enumeration,
}

/// `Σ_{|i|=k} P_i a_i²`, the sum of the principal `k`-minors of
/// `diag(a) P diag(a)`.
pub fn weighted_principal_minor_sum(axes: &[f64], p: &DMatrix<f64>, k: usize, path: MinorSumPath) -> Result<f64> {
    let n = axes.len();
    if p.shape() != (n, n) {
        return Err(Error::Dimension(format!(
            "{n} semi-axes against a {}×{} matrix",
            p.nrows(),
            p.ncols()
        )));
    }
    if k > n {
        return Err(Error::Index(format!("minor order {k} exceeds dimension {n}")));
    }
    match path {
        MinorSumPath::Eigenvalues => {
            let m = DMatrix::from_fn(n, n, |i, j| axes[i] * p[(i, j)] * axes[j]);
            let eig = SymmetricEigen::new(m).eigenvalues;
            let clamped: Vec<f64> = eig.iter().map(|v| v.max(0.0)).collect();
            elementary_symmetric(&clamped, k)
        }
        MinorSumPath::Enumeration => {
            check_enumeration(n, k)?;
            let mut sum = 0.0;
            for idx in MultiIndex::all(n, k) {
                let w = idx.product(axes);
                sum += minor_det(p, &idx, &idx)? * w * w;
            }
            Ok(sum)
        }
    }
}

/// `Σ_{|i|=k} (Ω_i)² w_i²` over the `k × k` row minors of a frame.
fn weighted_frame_minor_sum(omega: &DMatrix<f64>, weights: &[f64]) -> Result<f64> {
    let (n, k) = omega.shape();
    check_enumeration(n, k)?;
    let all_cols = MultiIndex::full(k);
    let mut sum = 0.0;
    for idx in MultiIndex::all(n, k) {
        let d = minor_det(omega, &idx, &all_cols)?;
        let w = idx.product(weights);
        sum += d * d * w * w;
    }
    Ok(sum)
}

/// Sum of the squares of the `k × k` minors of `Ω`; equals 1 for an orthonormal frame.
pub fn sum_sq_minors(omega: &SubspaceBasis) -> Result<f64> {
    weighted_frame_minor_sum(omega.matrix(), &vec![1.0; omega.ambient_dim()])
}

fn first_zero_axis(axes: &[f64]) -> Option<usize> {
    axes.iter().position(|a| *a == 0.0)
}

/// `k`-volume of the orthogonal projection of the ellipsoid with the given
/// semi-axes onto the subspace.
pub fn projected_volume(axes: &[f64], subspace: &Subspace, form: VolumeForm) -> Result<f64> {
    check_axes(axes, true)?;
    let n = axes.len();
    if subspace.ambient_dim() != n {
        return Err(Error::Dimension(format!(
            "{n} semi-axes against a subspace of R^{}",
            subspace.ambient_dim()
        )));
    }
    let k = subspace.sub_dim();
    if k == 0 {
        return Err(Error::Dimension("the subspace must have dimension at least 1".into()));
    }
    let kappa = ln_unit_ball_volume(k).exp();

    match form {
        VolumeForm::PrincipalMinors => {
            let p = subspace.projector();
            let s = weighted_principal_minor_sum(axes, p.matrix(), k, MinorSumPath::Eigenvalues)?;
            Ok(kappa * s.sqrt())
        }
        VolumeForm::FrameMinors => {
            let b = subspace.basis().ok_or_else(|| Error::Dimension("empty subspace".into()))?;
            Ok(kappa * weighted_frame_minor_sum(b.matrix(), axes)?.sqrt())
        }
        VolumeForm::ComplementPrincipalMinors | VolumeForm::ComplementFrameMinors => {
            if let Some(index) = first_zero_axis(axes) {
                return Err(Error::DegenerateAxis { index });
            }
            let ln_prod: f64 = axes.iter().map(|a| a.ln()).sum();
            let inv: Vec<f64> = axes.iter().map(|a| 1.0 / a).collect();
            let s = if k == n {
                1.0
            } else if form == VolumeForm::ComplementPrincipalMinors {
                let q = subspace.projector().complement();
                check_enumeration(n, n - k)?;
                weighted_principal_minor_sum(&inv, q.matrix(), n - k, MinorSumPath::Enumeration)?
            } else {
                let b = subspace.basis().ok_or_else(|| Error::Dimension("empty subspace".into()))?;
                let c = b.complement().ok_or_else(|| Error::Dimension("empty complement".into()))?;
                weighted_frame_minor_sum(c.matrix(), &inv)?
            };
            Ok(kappa * (ln_prod + 0.5 * s.ln()).exp())
        }
        VolumeForm::Singular => {
            let p = subspace.projector();
            let m = DMatrix::from_fn(n, n, |i, j| p.matrix()[(i, j)] * axes[j]);
            let mut sv: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
            sv.sort_by(|a, b| b.total_cmp(a));
            let cutoff = RANK_CUTOFF * sv[0];
            let rank = sv.iter().filter(|s| **s > cutoff).count();
            if rank < k {
                return Ok(0.0);
            }
            Ok(kappa * sv[..k].iter().product::<f64>())
        }
    }
}

/// `κ_k √det(Ωᵀ diag(a²) Ω)`, the frame expansion summed by Cauchy–Binet.
pub fn projected_volume_gram(axes: &[f64], omega: &SubspaceBasis) -> Result<f64> {
    check_axes(axes, true)?;
    let m = omega.matrix();
    if m.nrows() != axes.len() {
        return Err(Error::Dimension(format!(
            "{} semi-axes against a subspace of R^{}",
            axes.len(),
            m.nrows()
        )));
    }
    Ok(gram_volume(axes, m))
}

pub(crate) fn gram_volume(axes: &[f64], m: &DMatrix<f64>) -> f64 {
    let k = m.ncols();
    let mut g = vec![0.0; k * k];
    for i in 0..k {
        for j in i..k {
            let v: f64 = (0..m.nrows()).map(|r| m[(r, i)] * m[(r, j)] * axes[r] * axes[r]).sum();
            g[i * k + j] = v;
            g[j * k + i] = v;
        }
    }
    let det = lu_det(g, k).max(0.0);
    ln_unit_ball_volume(k).exp() * det.sqrt()
}

/// A Haar-distributed orthonormal `n × m` frame: thin QR of a Gaussian
/// matrix with the diagonal of `R` made positive.
pub fn haar_frame<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<SubspaceBasis> {
    if m == 0 || m > n {
        return Err(Error::Dimension(format!("need 1 <= m <= n, got n = {n}, m = {m}")));
    }
    let mut data = vec![0.0; n * m];
    fill_gaussian(rng, &mut data);
    Ok(SubspaceBasis {
        columns: haar_from_gaussian(DMatrix::from_vec(n, m, data)),
    })
}

pub(crate) fn haar_from_gaussian(g: DMatrix<f64>) -> DMatrix<f64> {
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..q.ncols() {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::chunk_stream;
    use std::f64::consts::PI;

    fn idx(labels: &[usize], n: usize) -> MultiIndex {
        MultiIndex::from_one_based(labels, n).unwrap()
    }

    #[test]
    fn coordinate_projector_is_diagonal() {
        let b = SubspaceBasis::coordinate(&idx(&[1, 3], 4)).unwrap();
        let p = b.projector();
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j && (i == 0 || i == 2) { 1.0 } else { 0.0 };
                assert_eq!(p.matrix()[(i, j)], e);
            }
        }
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn projector_fixes_frame_columns() {
        let mut rng = chunk_stream(3, 0);
        for n in 2..7 {
            for k in 1..=n {
                let b = haar_frame(n, k, &mut rng).unwrap();
                let p = b.projector();
                let pw = p.matrix() * b.matrix();
                assert!((pw - b.matrix()).amax() < 1e-12);
                assert!(Projector::from_matrix(p.matrix().clone()).is_ok());
            }
        }
    }

    #[test]
    fn frame_validation_and_repair() {
        let err = SubspaceBasis::from_vectors(&[vec![1.0, 0.1, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::NotOrthonormal(e) if e > 1e-7));
        let b = SubspaceBasis::from_vectors(&[vec![1.0 + 1e-9, 0.0, 0.0], vec![1e-9, 1.0, 0.0]]).unwrap();
        assert!(orthonormality_error(b.matrix()) < 1e-15);
        assert!(SubspaceBasis::from_vectors(&[vec![1.0, 0.0], vec![0.0]]).is_err());
        assert!(SubspaceBasis::new(DMatrix::zeros(2, 3)).is_err());
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(Projector::from_matrix(bad), Err(Error::NotProjector(_))));
    }

    #[test]
    fn minors_of_identity() {
        let i4 = DMatrix::<f64>::identity(4, 4);
        assert_eq!(minor_det(&i4, &idx(&[1, 3], 4), &idx(&[1, 3], 4)).unwrap(), 1.0);
        assert_eq!(minor_det(&i4, &idx(&[1, 3], 4), &idx(&[2, 3], 4)).unwrap(), 0.0);
        assert!(minor_det(&i4, &idx(&[1], 4), &idx(&[2, 3], 4)).is_err());
        let s = DMatrix::from_row_slice(2, 2, &[2.0, 4.0, 1.0, 2.0]);
        assert_eq!(minor_det(&s, &MultiIndex::full(2), &MultiIndex::full(2)).unwrap(), 0.0);
    }

    #[test]
    fn complement_example() {
        assert_eq!(complement(&idx(&[1, 2], 4)).one_based(), vec![3, 4]);
    }

    #[test]
    fn axis_aligned_ellipse() {
        let b = SubspaceBasis::coordinate(&idx(&[1, 2], 3)).unwrap();
        let s = Subspace::from(b);
        for form in VolumeForm::ALL {
            let v = projected_volume(&[3.0, 2.0, 1.0], &s, form).unwrap();
            assert!((v - 6.0 * PI).abs() < 1e-12, "{form}: {v}");
        }
    }

    #[test]
    fn segment_length() {
        let v = [0.6, 0.0, 0.8];
        let a = [3.0, 2.0, 1.0];
        let b = SubspaceBasis::from_vectors(&[v.to_vec()]).unwrap();
        let expect = 2.0 * (0.36f64 * 9.0 + 0.64).sqrt();
        for form in VolumeForm::ALL {
            let got = projected_volume(&a, &b.clone().into(), form).unwrap();
            assert!((got - expect).abs() < 1e-12, "{form}");
        }
    }

    #[test]
    fn degenerate_axes() {
        let b = SubspaceBasis::coordinate(&idx(&[1, 2], 3)).unwrap();
        let s = Subspace::from(b);
        let a = [3.0, 0.0, 1.0];
        assert!(matches!(
            projected_volume(&a, &s, VolumeForm::ComplementFrameMinors),
            Err(Error::DegenerateAxis { index: 1 })
        ));
        assert_eq!(projected_volume(&a, &s, VolumeForm::Singular).unwrap(), 0.0);
        assert_eq!(projected_volume(&a, &s, VolumeForm::PrincipalMinors).unwrap(), 0.0);
        assert_eq!(VolumeForm::auto(&a, &s), VolumeForm::FrameMinors);
    }

    #[test]
    fn form_names_round_trip() {
        for f in VolumeForm::ALL {
            assert_eq!(f.as_str().parse::<VolumeForm>().unwrap(), f);
        }
        assert!("5".parse::<VolumeForm>().is_err());
    }

    #[test]
    fn gram_route_matches_singular_values() {
        let mut rng = chunk_stream(11, 0);
        let a = [1.5, 0.7, 2.2, 1.0, 0.3];
        for k in 1..=5 {
            let b = haar_frame(5, k, &mut rng).unwrap();
            let g = projected_volume_gram(&a, &b).unwrap();
            let s = projected_volume(&a, &b.into(), VolumeForm::Singular).unwrap();
            assert!(((g - s) / s).abs() < 1e-12);
        }
    }

    #[test]
    fn complement_frame_spans_kernel() {
        let mut rng = chunk_stream(5, 1);
        let b = haar_frame(6, 2, &mut rng).unwrap();
        let c = b.complement().unwrap();
        assert_eq!(c.sub_dim(), 4);
        assert!((b.matrix().transpose() * c.matrix()).amax() < 1e-12);
        let full = haar_frame(3, 3, &mut rng).unwrap();
        assert!(full.complement().is_none());
    }
}
