//! Closed-form kernels on the radial interval (0, 1].
//!
//! For the planar case the reproducing kernel of `H_2` is the truncated
//! logarithm
//!
//! ```text
//! k_t(r) = (1 / 2π) · min{ log 1/r, log 1/t }
//! ```
//!
//! and for `n > 2` it is the truncated power
//!
//! ```text
//! k_t(r) = min{ r^(2-n) - 1, t^(2-n) - 1 } / ((n - 2) · ω_{n-1})
//! ```
//!
//! Both are constant on `(0, t]` (the plateau), have a single kink at `r = t`
//! and vanish at `r = 1`. Since `r ↦ r^(2-n)` is decreasing, the minimum is always
//! attained at `max(t, r)`, which is how every closed form below is evaluated.

use std::f64::consts::{PI, TAU};

use crate::error::{domain, Error, Result};
use crate::profile::{Envelope, RadialProfile};

/// Ambient dimension `n` of the ball `B_n`.
///
/// Integer values are the geometric cases. Real values above 2 are accepted so
/// that the power-law kernel can be followed continuously down to `n = 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Dimension(f64);

impl Dimension {
    pub const PLANE: Dimension = Dimension(2.0);

    pub fn new(n: f64) -> Result<Self> {
        if n.is_finite() && n >= 2.0 {
            Ok(Dimension(n))
        } else {
            Err(Error::Dimension(n))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `true` for `n = 2`, where the logarithmic kernel applies.
    pub fn is_plane(self) -> bool {
        self.0 == 2.0
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A radius in `(0, 1]`, used both for kernel centers and evaluation points.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct KernelPoint(f64);

impl KernelPoint {
    pub const BOUNDARY: KernelPoint = KernelPoint(1.0);

    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t > 0.0 && t <= 1.0 {
            Ok(KernelPoint(t))
        } else {
            Err(domain("t", t, "(0, 1]"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_boundary(self) -> bool {
        self.0 == 1.0
    }
}

/// Sign of the power-law prefactor for `n > 2`.
///
/// `Literal` takes the prefactor `1 / ((2 - n) ω_{n-1})` at face value. That
/// kernel is negative, so `K(t, t) < 0` and pairing it against `u` returns
/// `-u(t)`. It exists only so the regression suite can observe the difference.
/// The planar kernel is unaffected by either choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Corrected,
    Literal,
}

impl SignConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            SignConvention::Corrected => "corrected",
            SignConvention::Literal => "literal",
        }
    }

    pub(crate) fn factor(self, dim: Dimension) -> f64 {
        match self {
            SignConvention::Literal if !dim.is_plane() => -1.0,
            _ => 1.0,
        }
    }
}

/// Γ(x) for x > 0. Integer and half-integer arguments use the exact recurrence
/// from Γ(1) = 1 or Γ(1/2) = √π so that the geometric cases come out clean.
fn gamma_fn(x: f64) -> f64 {
    let twice = 2.0 * x;
    if twice.fract() == 0.0 && twice <= 340.0 {
        let (mut acc, mut y) = if x.fract() == 0.0 {
            (1.0, 1.0)
        } else {
            (PI.sqrt(), 0.5)
        };
        while y < x {
            acc *= y;
            y += 1.0;
        }
        acc
    } else {
        statrs::function::gamma::gamma(x)
    }
}

/// `log(expm1(x))` for `x >= 0`, without overflowing for large `x`.
pub(crate) fn ln_expm1(x: f64) -> f64 {
    if x > 40.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

/// Surface measure `ω_{n-1} = 2 π^{n/2} / Γ(n/2)` of the unit sphere in `R^n`.
pub fn sphere_measure(dim: Dimension) -> f64 {
    let n = dim.get();
    2.0 * PI.powf(n / 2.0) / gamma_fn(n / 2.0)
}

/// Volume `ω_{n-1} / n` of the unit ball.
pub fn ball_volume(dim: Dimension) -> f64 {
    sphere_measure(dim) / dim.get()
}

/// Critical Trudinger-Moser exponent `α_n = n · ω_{n-1}^{1/(n-1)}`; `α_2 = 4π`.
pub fn alpha_critical(dim: Dimension) -> f64 {
    let n = dim.get();
    n * sphere_measure(dim).powf(1.0 / (n - 1.0))
}

/// Reproducing kernel with the sphere measure and sign resolved once, for use
/// in hot loops. `value`/`derivative` take raw radii already known to be valid.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KernelConstants {
    n: f64,
    omega: f64,
    sign: f64,
}

impl KernelConstants {
    pub(crate) fn new(dim: Dimension, convention: SignConvention) -> Self {
        KernelConstants {
            n: dim.get(),
            omega: sphere_measure(dim),
            sign: convention.factor(dim),
        }
    }

    pub(crate) fn value(&self, t: f64, r: f64) -> f64 {
        let m = t.max(r);
        if self.n == 2.0 {
            // `0 - ln` rather than `-ln` so the boundary value is +0
            (0.0 - m.ln()) / self.omega
        } else {
            let excess = self.n - 2.0;
            self.sign * (excess * (0.0 - m.ln())).exp_m1() / (excess * self.omega)
        }
    }

    /// Classical derivative in `r`; the left (plateau) branch is returned at the kink.
    pub(crate) fn derivative(&self, t: f64, r: f64) -> f64 {
        if r <= t {
            0.0
        } else {
            -self.sign * ((1.0 - self.n) * r.ln()).exp() / self.omega
        }
    }
}

/// Planar kernel `(1/2π) · min{log 1/r, log 1/t}`.
pub fn gamma2(t: KernelPoint, r: KernelPoint) -> f64 {
    (0.0 - t.get().max(r.get()).ln()) / TAU
}

/// Power-law kernel for `n > 2` with the positive prefactor `1/((n-2) ω_{n-1})`.
pub fn gamma_n(dim: Dimension, t: KernelPoint, r: KernelPoint) -> Result<f64> {
    gamma_n_with(dim, t, r, SignConvention::Corrected)
}

pub fn gamma_n_with(
    dim: Dimension,
    t: KernelPoint,
    r: KernelPoint,
    convention: SignConvention,
) -> Result<f64> {
    if dim.is_plane() {
        return Err(domain("n", dim.get(), "(2, ∞) (use gamma2 for n = 2)"));
    }
    Ok(KernelConstants::new(dim, convention).value(t.get(), r.get()))
}

/// `K(t, s) = <k_t, k_s> = k_t(s)`.
pub fn kernel_k(dim: Dimension, t: KernelPoint, s: KernelPoint) -> f64 {
    kernel_k_with(dim, t, s, SignConvention::Corrected)
}

pub fn kernel_k_with(
    dim: Dimension,
    t: KernelPoint,
    s: KernelPoint,
    convention: SignConvention,
) -> f64 {
    if dim.is_plane() {
        gamma2(t, s)
    } else {
        KernelConstants::new(dim, convention).value(t.get(), s.get())
    }
}

/// `d/dr k_t(r)`: zero on the plateau, `-r^(1-n) / ω_{n-1}` beyond the center.
pub fn kernel_derivative(dim: Dimension, t: KernelPoint, r: KernelPoint) -> Result<f64> {
    kernel_derivative_with(dim, t, r, SignConvention::Corrected)
}

pub fn kernel_derivative_with(
    dim: Dimension,
    t: KernelPoint,
    r: KernelPoint,
    convention: SignConvention,
) -> Result<f64> {
    if r == t {
        return Err(Error::Kink(t.get()));
    }
    Ok(KernelConstants::new(dim, convention).derivative(t.get(), r.get()))
}

/// Moser function `μ_s(r) = min{log 1/r, log 1/s} / √(2π log 1/s)`.
pub fn moser_mu(s: KernelPoint, r: KernelPoint) -> Result<f64> {
    if s.is_boundary() {
        return Err(domain("s", s.get(), "(0, 1)"));
    }
    Ok(Shape::moser(s.get()).value(r.get()))
}

/// Norm of the evaluation functional `u ↦ u(t)`, i.e. `√K(t, t)`.
pub fn eval_functional_norm(dim: Dimension, t: KernelPoint) -> f64 {
    kernel_k(dim, t, t).max(0.0).sqrt()
}

/// Higher-dimensional Moser-type candidate
/// `(ω (t^(2-n) - 1)/(n-2))^(-1/n) · min{r^(2-n) - 1, t^(2-n) - 1} / (n-2)`.
///
/// The exponent `-1/n` does not make these unit vectors in `H_n`; callers that
/// need the unit sphere normalize by the computed norm.
pub fn tm_candidate(dim: Dimension, t: KernelPoint, r: KernelPoint) -> Result<f64> {
    if dim.is_plane() {
        return Err(domain("n", dim.get(), "(2, ∞)"));
    }
    if t.is_boundary() {
        return Err(domain("t", t.get(), "(0, 1)"));
    }
    Ok(Shape::candidate(dim, t.get(), SignConvention::Corrected).value(r.get()))
}

/// Which closed form a [`KernelFamily`] member follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelVariant {
    ReproducingKernel,
    MoserFunction,
    TmCandidate,
}

impl KernelVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelVariant::ReproducingKernel => "reproducing",
            KernelVariant::MoserFunction => "moser",
            KernelVariant::TmCandidate => "candidate",
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Kernel {
        constants: KernelConstants,
        t: f64,
    },
    Moser {
        log_inv_s: f64,
        normalizer: f64,
    },
    Candidate {
        n: f64,
        t: f64,
        sign: f64,
        /// log of `(ω (t^(2-n) - 1)/(n-2))^(-1/n)`
        log_scale: f64,
    },
}

impl Shape {
    fn moser(s: f64) -> Shape {
        let log_inv_s = -s.ln();
        Shape::Moser {
            log_inv_s,
            normalizer: (TAU * log_inv_s).sqrt(),
        }
    }

    fn candidate(dim: Dimension, t: f64, convention: SignConvention) -> Shape {
        let n = dim.get();
        let excess = n - 2.0;
        let log_plateau = ln_expm1(-excess * t.ln());
        let log_scale = -(sphere_measure(dim).ln() + log_plateau - excess.ln()) / n;
        Shape::Candidate {
            n,
            t,
            sign: convention.factor(dim),
            log_scale,
        }
    }

    fn center(&self) -> f64 {
        match *self {
            Shape::Kernel { t, .. } | Shape::Candidate { t, .. } => t,
            Shape::Moser { log_inv_s, .. } => (-log_inv_s).exp(),
        }
    }

    fn value(&self, r: f64) -> f64 {
        match *self {
            Shape::Kernel { constants, t } => constants.value(t, r),
            Shape::Moser {
                log_inv_s,
                normalizer,
            } => (0.0 - r.ln()).min(log_inv_s) / normalizer,
            Shape::Candidate {
                n,
                t,
                sign,
                log_scale,
            } => {
                let excess = n - 2.0;
                let x = -excess * t.max(r).ln();
                if x == 0.0 {
                    0.0
                } else {
                    sign * (log_scale + ln_expm1(x) - excess.ln()).exp()
                }
            }
        }
    }

    fn derivative(&self, r: f64) -> f64 {
        match *self {
            Shape::Kernel { constants, t } => constants.derivative(t, r),
            Shape::Moser {
                log_inv_s,
                normalizer,
            } => {
                if -r.ln() >= log_inv_s {
                    0.0
                } else {
                    -1.0 / (r * normalizer)
                }
            }
            Shape::Candidate {
                n,
                t,
                sign,
                log_scale,
            } => {
                if r <= t {
                    0.0
                } else {
                    -sign * (log_scale + (1.0 - n) * r.ln()).exp()
                }
            }
        }
    }
}

/// One member of a kernel family, validated at construction.
#[derive(Debug, Clone, Copy)]
pub struct KernelFamily {
    dim: Dimension,
    center: KernelPoint,
    variant: KernelVariant,
    shape: Shape,
}

impl KernelFamily {
    pub fn new(dim: Dimension, center: KernelPoint, variant: KernelVariant) -> Result<Self> {
        Self::with_convention(dim, center, variant, SignConvention::Corrected)
    }

    pub fn with_convention(
        dim: Dimension,
        center: KernelPoint,
        variant: KernelVariant,
        convention: SignConvention,
    ) -> Result<Self> {
        let t = center.get();
        let shape = match variant {
            KernelVariant::ReproducingKernel => Shape::Kernel {
                constants: KernelConstants::new(dim, convention),
                t,
            },
            KernelVariant::MoserFunction => {
                if !dim.is_plane() {
                    return Err(domain("n", dim.get(), "{2} (Moser functions are planar)"));
                }
                if center.is_boundary() {
                    return Err(domain("s", t, "(0, 1)"));
                }
                Shape::moser(t)
            }
            KernelVariant::TmCandidate => {
                if dim.is_plane() {
                    return Err(domain("n", dim.get(), "(2, ∞)"));
                }
                if center.is_boundary() {
                    return Err(domain("t", t, "(0, 1)"));
                }
                Shape::candidate(dim, t, convention)
            }
        };
        Ok(KernelFamily {
            dim,
            center,
            variant,
            shape,
        })
    }

    pub fn reproducing(dim: Dimension, center: KernelPoint) -> Self {
        Self::reproducing_with(dim, center, SignConvention::Corrected)
    }

    pub fn reproducing_with(
        dim: Dimension,
        center: KernelPoint,
        convention: SignConvention,
    ) -> Self {
        KernelFamily {
            dim,
            center,
            variant: KernelVariant::ReproducingKernel,
            shape: Shape::Kernel {
                constants: KernelConstants::new(dim, convention),
                t: center.get(),
            },
        }
    }

    pub fn moser(center: KernelPoint) -> Result<Self> {
        Self::new(Dimension::PLANE, center, KernelVariant::MoserFunction)
    }

    pub fn candidate(dim: Dimension, center: KernelPoint) -> Result<Self> {
        Self::new(dim, center, KernelVariant::TmCandidate)
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn center(&self) -> KernelPoint {
        self.center
    }

    pub fn variant(&self) -> KernelVariant {
        self.variant
    }

    pub fn evaluate(&self, r: KernelPoint) -> f64 {
        self.shape.value(r.get())
    }

    pub fn derivative(&self, r: KernelPoint) -> Result<f64> {
        if r == self.center {
            return Err(Error::Kink(r.get()));
        }
        Ok(self.shape.derivative(r.get()))
    }

    /// The member as a [`RadialProfile`] with its kink at the center.
    pub fn profile(&self) -> RadialProfile {
        let shape = self.shape;
        let center = shape.center();
        let kinks = if self.center.is_boundary() {
            Vec::new()
        } else {
            vec![self.center.get()]
        };
        let label = format!(
            "{}(n={}, t={})",
            self.variant.as_str(),
            self.dim,
            self.center.get()
        );
        debug_assert!(center > 0.0);
        // Derivative vanishes on the plateau (0, t), so nothing to bound near 0.
        RadialProfile::new(
            label,
            move |r| shape.value(r),
            move |r| shape.derivative(r),
            kinks,
            Envelope::VANISHING,
        )
        .expect("kernel family profiles satisfy the profile invariants")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(t: f64) -> KernelPoint {
        KernelPoint::new(t).unwrap()
    }

    fn d(n: f64) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn sphere_measure_low_dimensions() {
        assert_relative_eq!(sphere_measure(d(2.0)), TAU, max_relative = 1e-15);
        assert_relative_eq!(sphere_measure(d(3.0)), 4.0 * PI, max_relative = 1e-15);
        // Γ(2) = 1
        assert_relative_eq!(sphere_measure(d(4.0)), 2.0 * PI * PI, max_relative = 1e-15);
        // Γ(5/2) = 3√π/4, so ω_4 = 8π²/3
        assert_relative_eq!(
            sphere_measure(d(5.0)),
            8.0 * PI * PI / 3.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn sphere_measure_is_continuous_in_dimension() {
        let below = sphere_measure(d(3.0 - 1e-9 + 1e-9));
        let off_grid = sphere_measure(d(3.0 + 1e-9));
        assert_relative_eq!(below, off_grid, max_relative = 1e-8);
        assert_relative_eq!(sphere_measure(d(2.0 + 1e-9)), TAU, max_relative = 1e-8);
    }

    #[test]
    fn rejects_low_dimension() {
        assert_eq!(Dimension::new(1.5), Err(Error::Dimension(1.5)));
        assert!(Dimension::new(f64::NAN).is_err());
    }

    #[test]
    fn alpha_critical_values() {
        assert_eq!(alpha_critical(d(2.0)), 4.0 * PI);
        assert_eq!(alpha_critical(d(2.0)), 2.0 * TAU);
        assert_relative_eq!(
            alpha_critical(d(3.0)),
            3.0 * (4.0 * PI).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn gamma2_examples() {
        assert_relative_eq!(gamma2(p(0.5), p(0.25)), 0.110_317_800_076_325_8, epsilon = 1e-15);
        assert_eq!(gamma2(p(0.5), p(1.0)), 0.0);
        assert_eq!(gamma2(p(0.3), p(0.7)), gamma2(p(0.7), p(0.3)));
    }

    #[test]
    fn gamma_n_examples() {
        let quarter_pi_inv = 1.0 / (4.0 * PI);
        assert_relative_eq!(gamma_n(d(3.0), p(0.5), p(0.5)).unwrap(), quarter_pi_inv, max_relative = 1e-14);
        assert_relative_eq!(gamma_n(d(3.0), p(0.5), p(0.25)).unwrap(), quarter_pi_inv, max_relative = 1e-14);
        assert_eq!(gamma_n(d(3.0), p(0.5), p(1.0)).unwrap(), 0.0);
        assert!(matches!(gamma_n(d(2.0), p(0.5), p(0.4)), Err(Error::Domain { .. })));
    }

    #[test]
    fn literal_sign_negates_only_power_kernels() {
        let lit = gamma_n_with(d(3.0), p(0.5), p(0.5), SignConvention::Literal).unwrap();
        assert_relative_eq!(lit, -1.0 / (4.0 * PI), max_relative = 1e-14);
        assert_eq!(
            kernel_k_with(d(2.0), p(0.5), p(0.3), SignConvention::Literal),
            kernel_k(d(2.0), p(0.5), p(0.3))
        );
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(kernel_derivative(d(2.0), p(0.5), p(0.25)).unwrap(), 0.0);
        assert_relative_eq!(
            kernel_derivative(d(2.0), p(0.5), p(0.75)).unwrap(),
            -0.212_206_590_789_193_8,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            kernel_derivative(d(3.0), p(0.5), p(0.75)).unwrap(),
            -0.141_471_060_526_129_2,
            max_relative = 1e-14
        );
        assert_eq!(
            kernel_derivative(d(3.0), p(0.5), p(0.5)),
            Err(Error::Kink(0.5))
        );
    }

    #[test]
    fn derivative_matches_finite_differences() {
        for &n in &[2.0, 3.0, 4.0, 2.5] {
            for &(t, r) in &[(0.2, 0.6), (0.5, 0.9), (0.05, 0.3)] {
                let h = 1e-6;
                let fd = (kernel_k(d(n), p(t), p(r + h)) - kernel_k(d(n), p(t), p(r - h))) / (2.0 * h);
                let exact = kernel_derivative(d(n), p(t), p(r)).unwrap();
                assert_relative_eq!(fd, exact, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn moser_examples() {
        let e_inv = (-1.0f64).exp();
        assert_relative_eq!(moser_mu(p(e_inv), p(e_inv)).unwrap(), 0.398_942_280_401_432_7, max_relative = 1e-14);
        assert_eq!(moser_mu(p(0.5), p(1.0)).unwrap(), 0.0);
        let lhs = moser_mu(p(0.5), p(0.7)).unwrap();
        let rhs = TAU * gamma2(p(0.5), p(0.7)) / (TAU * 2f64.ln()).sqrt();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
        assert!(moser_mu(p(1.0), p(0.5)).is_err());
    }

    #[test]
    fn moser_plateau_identity() {
        for &s in &[0.9, 0.5, 1e-4, 1e-8, 1e-300] {
            let plateau = moser_mu(p(s), p(s)).unwrap();
            assert_relative_eq!(plateau * plateau * TAU, -f64::ln(s), max_relative = 1e-14);
        }
    }

    #[test]
    fn eval_norm_examples() {
        let t = (-TAU).exp();
        assert_relative_eq!(eval_functional_norm(d(2.0), p(t)), 1.0, max_relative = 1e-14);
        assert_eq!(eval_functional_norm(d(2.0), p(1.0)), 0.0);
        assert_relative_eq!(eval_functional_norm(d(3.0), p(0.5)), 0.282_094_791_773_878_1, max_relative = 1e-14);
        let a = eval_functional_norm(d(3.0), p(0.2));
        let b = eval_functional_norm(d(3.0), p(0.3));
        assert!(a > b);
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(tm_candidate(d(3.0), p(0.5), p(1.0)).unwrap(), 0.0);
        let at_center = tm_candidate(d(3.0), p(0.5), p(0.5)).unwrap();
        assert_relative_eq!(at_center, (4.0 * PI).powf(-1.0 / 3.0), max_relative = 1e-14);
        assert_relative_eq!(at_center, 0.430_127_006_914_049_8, max_relative = 1e-14);
        assert_eq!(tm_candidate(d(3.0), p(0.5), p(0.25)).unwrap(), at_center);
        assert!(tm_candidate(d(3.0), p(1.0), p(0.5)).is_err());
        assert!(tm_candidate(d(2.0), p(0.5), p(0.5)).is_err());
    }

    #[test]
    fn candidate_naive_formula_agrees_off_extremes() {
        let n = 4.0;
        let omega = sphere_measure(d(n));
        for &(t, r) in &[(0.3, 0.6), (0.3, 0.1), (0.8, 0.9)] {
            let plateau = f64::powf(t, 2.0 - n) - 1.0;
            let naive = (omega * plateau / (n - 2.0)).powf(-1.0 / n) / (n - 2.0)
                * (f64::powf(r, 2.0 - n) - 1.0).min(plateau);
            assert_relative_eq!(tm_candidate(d(n), p(t), p(r)).unwrap(), naive, max_relative = 1e-13);
        }
    }

    #[test]
    fn tiny_centers_stay_finite() {
        let t = p(1e-300);
        assert!(gamma2(t, t).is_finite());
        assert!(gamma_n(d(3.0), t, t).unwrap().is_finite());
        assert!(moser_mu(t, t).unwrap().is_finite());
        let c = tm_candidate(d(4.0), p(1e-200), p(1e-200)).unwrap();
        assert!(c.is_finite() && c > 0.0);
    }

    #[test]
    fn family_invariants() {
        assert!(KernelFamily::moser(p(1.0)).is_err());
        assert!(KernelFamily::new(d(3.0), p(0.5), KernelVariant::MoserFunction).is_err());
        assert!(KernelFamily::candidate(d(2.0), p(0.5)).is_err());
        let k = KernelFamily::reproducing(d(2.0), p(1.0));
        assert_eq!(k.evaluate(p(0.3)), 0.0);
        let prof = k.profile();
        assert!(prof.kinks().is_empty());
    }

    #[test]
    fn family_profiles_match_closed_forms() {
        let k = KernelFamily::reproducing(d(3.0), p(0.4)).profile();
        let m = KernelFamily::moser(p(0.4)).unwrap().profile();
        let c = KernelFamily::candidate(d(3.0), p(0.4)).unwrap().profile();
        for &r in &[0.1, 0.4, 0.7, 1.0] {
            assert_eq!(k.value(r), kernel_k(d(3.0), p(0.4), p(r)));
            assert_eq!(m.value(r), moser_mu(p(0.4), p(r)).unwrap());
            assert_relative_eq!(c.value(r), tm_candidate(d(3.0), p(0.4), p(r)).unwrap(), max_relative = 1e-15);
        }
    }
}
