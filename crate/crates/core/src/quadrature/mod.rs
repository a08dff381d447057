//! Weighted radial quadrature on (0, 1].
//!
//! The Hilbert structure of `H_n` is
//!
//! ```text
//! <u, v>_n = ω_{n-1} ∫_0^1 u'(r) v'(r) r^(n-1) dr
//! ```
//!
//! which is the radial form of `∫_{B_n} ∇u · ∇v dx`. Integrals are taken by
//! bisection-adaptive Gauss-Legendre panels whose boundaries always include the
//! kinks of both arguments, so each panel sees a smooth integrand.
//!
//! Integration starts at [`ORIGIN_CUTOFF`]; the sliver `(0, ORIGIN_CUTOFF]` is
//! bounded through each profile's [`Envelope`](crate::Envelope) and that bound
//! is charged against the error budget.

mod adaptive;
mod monte_carlo;
mod rule;

pub use adaptive::QuadratureResult;
pub use monte_carlo::{isometry_check_2d, MIN_SAMPLES};

pub(crate) use adaptive::integrate;

use crate::error::{Error, Result};
use crate::kernels::{sphere_measure, Dimension, KernelFamily, KernelPoint, SignConvention};
use crate::profile::RadialProfile;

/// Lower integration limit for derivative integrals.
pub const ORIGIN_CUTOFF: f64 = 1e-14;

/// Tolerance and refinement policy for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of panel bisections per integral.
    pub max_subdivisions: usize,
    /// Gauss-Legendre nodes per panel.
    pub base_nodes: usize,
    /// Put panel boundaries at profile kinks. Turning this off is only useful
    /// for checking that the integrator copes with interior kinks on its own.
    pub split_at_kinks: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-13,
            abs_tol: 1e-15,
            max_subdivisions: 4000,
            base_nodes: 20,
            split_at_kinks: true,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if !open_unit(self.rel_tol) {
            return Err(Error::Spec(format!("rel_tol = {} not in (0, 1)", self.rel_tol)));
        }
        if !open_unit(self.abs_tol) {
            return Err(Error::Spec(format!("abs_tol = {} not in (0, 1)", self.abs_tol)));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Spec("max_subdivisions must be at least 1".into()));
        }
        if !(1..=200).contains(&self.base_nodes) {
            return Err(Error::Spec(format!(
                "base_nodes = {} not in 1..=200",
                self.base_nodes
            )));
        }
        Ok(())
    }
}

/// Panel boundaries `[lower, kinks..., 1]` from the union of the profiles' kinks.
pub(crate) fn breakpoints(lower: f64, profiles: &[&RadialProfile], split: bool) -> Vec<f64> {
    let mut points = vec![lower];
    if split {
        let mut kinks: Vec<f64> = profiles
            .iter()
            .flat_map(|p| p.kinks().iter().copied())
            .filter(|&k| k > lower && k < 1.0)
            .collect();
        kinks.sort_by(f64::total_cmp);
        kinks.dedup();
        points.extend(kinks);
    }
    points.push(1.0);
    points
}

fn check_envelope(u: &RadialProfile, limit: f64) -> Result<()> {
    let env = u.envelope();
    if env.coefficient > 0.0 && env.power >= limit {
        return Err(Error::NonIntegrable {
            label: u.label().to_owned(),
            power: env.power,
            limit,
        });
    }
    Ok(())
}

/// `<u, v>_n` with its error estimate.
pub fn inner_product_detailed(
    dim: Dimension,
    u: &RadialProfile,
    v: &RadialProfile,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let n = dim.get();
    check_envelope(u, n / 2.0)?;
    check_envelope(v, n / 2.0)?;
    let omega = sphere_measure(dim);

    // ω ∫_0^δ C_u C_v r^(n-1-p_u-p_v) dr
    let (eu, ev) = (u.envelope(), v.envelope());
    let exponent = n - eu.power - ev.power;
    let tail = omega * eu.coefficient * ev.coefficient * ORIGIN_CUTOFF.powf(exponent) / exponent;

    let weight = n - 1.0;
    let integrand = |r: f64| u.derivative(r) * v.derivative(r) * r.powf(weight);
    let points = breakpoints(ORIGIN_CUTOFF, &[u, v], spec.split_at_kinks);
    let q = integrate(&integrand, &points, spec, tail / omega)?;
    Ok(QuadratureResult {
        value: omega * q.value,
        error: omega * q.error,
        subdivisions: q.subdivisions,
    })
}

/// `<u, v>_n = ω_{n-1} ∫_0^1 u' v' r^(n-1) dr`.
pub fn inner_product(
    dim: Dimension,
    u: &RadialProfile,
    v: &RadialProfile,
    spec: &QuadratureSpec,
) -> Result<f64> {
    inner_product_detailed(dim, u, v, spec).map(|q| q.value)
}

/// `<k_t, u>_n`; equals `u(t)` up to quadrature error.
pub fn apply_evaluation(
    dim: Dimension,
    t: KernelPoint,
    u: &RadialProfile,
    spec: &QuadratureSpec,
) -> Result<f64> {
    apply_evaluation_with(dim, t, u, spec, SignConvention::Corrected)
}

pub fn apply_evaluation_with(
    dim: Dimension,
    t: KernelPoint,
    u: &RadialProfile,
    spec: &QuadratureSpec,
    convention: SignConvention,
) -> Result<f64> {
    let kernel = KernelFamily::reproducing_with(dim, t, convention).profile();
    inner_product(dim, &kernel, u, spec)
}

/// `‖u‖_n = √<u, u>_n`, i.e. the L² norm of the gradient on `B_n`.
pub fn sobolev_norm(dim: Dimension, u: &RadialProfile, spec: &QuadratureSpec) -> Result<f64> {
    Ok(inner_product(dim, u, u, spec)?.max(0.0).sqrt())
}

/// `(ω_{n-1} ∫_0^1 |u'|^n r^(n-1) dr)^(1/n)`, the L^n norm of the gradient.
pub fn gradient_ln_norm(dim: Dimension, u: &RadialProfile, spec: &QuadratureSpec) -> Result<f64> {
    let n = dim.get();
    check_envelope(u, 1.0)?;
    let omega = sphere_measure(dim);
    let env = u.envelope();
    let exponent = n * (1.0 - env.power);
    let tail = env.coefficient.powf(n) * ORIGIN_CUTOFF.powf(exponent) / exponent;

    let integrand = |r: f64| u.derivative(r).abs().powf(n) * r.powf(n - 1.0);
    let points = breakpoints(ORIGIN_CUTOFF, &[u], spec.split_at_kinks);
    let q = integrate(&integrand, &points, spec, tail)?;
    Ok((omega * q.value).max(0.0).powf(1.0 / n))
}

/// `|u(b) - u(a) - ∫_a^b u'(r) dr|` for `0 < a < b <= 1`: zero for a
/// consistent profile, up to quadrature error.
pub fn derivative_consistency(
    u: &RadialProfile,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(a > 0.0 && a < b && b <= 1.0) {
        return Err(crate::error::domain("a", a, "(0, b) with b <= 1"));
    }
    let mut points = vec![a];
    points.extend(u.kinks().iter().copied().filter(|&k| k > a && k < b));
    points.push(b);
    let q = integrate(&|r| u.derivative(r), &points, spec, 0.0)?;
    Ok((u.value(b) - u.value(a) - q.value).abs())
}
