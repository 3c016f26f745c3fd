//! Measures of n-dimensional ellipsoids: surface area and isoperimetric
//! ratio, volumes of orthogonal projections, and integral mean curvatures.
//!
//! Closed forms are paired with independent numerical routes (Monte Carlo
//! over the sphere or the Grassmannian, adaptive quadrature, singular
//! values) so each result can be cross-checked.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvature;
pub mod error;
pub mod geom;
pub mod lauricella;
pub mod ledger;
pub mod projection;
pub mod quadrature;
pub mod report;
pub mod sphere;
pub mod surface;

pub use error::{Error, Result};
pub use geom::{Ellipsoid, MultiIndex};
pub use quadrature::QuadratureConfig;
pub use report::{Estimate, EvaluationReport, Method};
pub use sphere::MonteCarloConfig;
