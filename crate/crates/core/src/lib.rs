//! Reproducing-kernel structure of the radial Sobolev spaces on the unit ball.
//!
//! The space `H_n` of radial functions `u` on `B_n` with `u = 0` on the sphere,
//! normed by `‖∇u‖_{L²(B_n)}`, is a reproducing kernel Hilbert space over the
//! radius `(0, 1]`. This crate provides
//!
//! - [`kernels`]: the closed-form kernels (truncated logarithm for `n = 2`,
//!   truncated power for `n > 2`), the Moser family and sphere constants;
//! - [`quadrature`]: adaptive weighted quadrature for `<u, v>_n`, so every
//!   closed form can be checked against an independent integral, and a
//!   Monte-Carlo estimate of the planar Dirichlet energy;
//! - [`interpolation`]: Gram matrices and minimal-norm interpolation;
//! - [`moser`]: Trudinger-Moser exponential functionals and family scans.
//!
//! ```
//! use radial_rkhs::{apply_evaluation, Dimension, KernelExpansion, KernelPoint, QuadratureSpec};
//!
//! let dim = Dimension::new(3.0)?;
//! let u = KernelExpansion::new(dim, vec![0.2, 0.7], vec![1.5, -0.5])?;
//! let t = KernelPoint::new(0.4)?;
//! let reproduced = apply_evaluation(dim, t, &u.profile(), &QuadratureSpec::default())?;
//! assert!((reproduced - u.evaluate(0.4)?).abs() < 1e-10);
//! # Ok::<(), radial_rkhs::Error>(())
//! ```

pub mod error;
pub mod interpolation;
pub mod kernels;
pub mod moser;
pub mod profile;
pub mod quadrature;

pub use error::{Error, Result};
pub use interpolation::{GramSystem, KernelExpansion, NodeSet, DEFAULT_MIN_NODE};
pub use kernels::{
    alpha_critical, ball_volume, eval_functional_norm, gamma2, gamma_n, gamma_n_with,
    kernel_derivative, kernel_derivative_with, kernel_k, kernel_k_with, moser_mu,
    sphere_measure, tm_candidate, Dimension, KernelFamily, KernelPoint, KernelVariant,
    SignConvention,
};
pub use moser::{
    geometric_grid, moser_scan, tm_average, tm_functional, unit_norm_check, ScanFamily,
    ScanPoint, ScanResult, TmParameters, TmValue, EXPONENT_CAP,
};
pub use profile::{Envelope, RadialProfile};
pub use quadrature::{
    apply_evaluation, apply_evaluation_with, derivative_consistency, gradient_ln_norm,
    inner_product, inner_product_detailed, isometry_check_2d, sobolev_norm, QuadratureResult,
    QuadratureSpec, MIN_SAMPLES as MONTE_CARLO_MIN_SAMPLES, ORIGIN_CUTOFF,
};
