//! Trudinger-Moser exponential functionals on radial profiles.
//!
//! For radial `u` the ball integral reduces to
//!
//! ```text
//! ∫_{B_n} exp(α |u|^{n/(n-1)}) dx = ω_{n-1} ∫_0^1 exp(α |u(r)|^{n/(n-1)}) r^(n-1) dr
//! ```
//!
//! Scans follow a one-parameter family (`μ_s` in the plane, normalized
//! candidates above) rather than the full unit ball of the constraint set, so
//! they probe the supremum from below and never compute it.

use std::cell::Cell;

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::kernels::{alpha_critical, ball_volume, sphere_measure, Dimension, KernelFamily, KernelPoint};
use crate::profile::RadialProfile;
use crate::quadrature::{breakpoints, integrate, sobolev_norm, QuadratureSpec};

/// Exponents above this are clipped and the result flagged.
pub const EXPONENT_CAP: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmParameters {
    dim: Dimension,
    alpha: f64,
    exponent_power: f64,
}

impl TmParameters {
    pub fn new(dim: Dimension, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(domain("alpha", alpha, "(0, ∞)"));
        }
        let n = dim.get();
        Ok(TmParameters {
            dim,
            alpha,
            exponent_power: n / (n - 1.0),
        })
    }

    /// `α = α_n`.
    pub fn critical(dim: Dimension) -> Self {
        Self::new(dim, alpha_critical(dim)).expect("critical exponent is positive")
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `n / (n - 1)`.
    pub fn exponent_power(&self) -> f64 {
        self.exponent_power
    }
}

/// A functional value with its overflow flag. When `overflow` is set the
/// exponent was clipped at [`EXPONENT_CAP`] somewhere, so `value` is a lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmValue {
    pub value: f64,
    pub overflow: bool,
}

/// `∫_{B_n} exp(α |u|^{n/(n-1)}) dx`.
pub fn tm_functional(params: &TmParameters, u: &RadialProfile, spec: &QuadratureSpec) -> Result<TmValue> {
    let n = params.dim.get();
    let overflow = Cell::new(false);
    let integrand = |r: f64| {
        let mut exponent = params.alpha * u.value(r).abs().powf(params.exponent_power);
        if exponent > EXPONENT_CAP {
            overflow.set(true);
            exponent = EXPONENT_CAP;
        }
        exponent.exp() * r.powf(n - 1.0)
    };
    // the integrand is bounded, so integrating down to 0 is safe
    let points = breakpoints(0.0, &[u], spec.split_at_kinks);
    let q = integrate(&integrand, &points, spec, 0.0)?;
    Ok(TmValue {
        value: sphere_measure(params.dim) * q.value,
        overflow: overflow.get(),
    })
}

/// `(1/|B_n|) ∫_{B_n} exp(α |u|^{n/(n-1)}) dx`.
pub fn tm_average(params: &TmParameters, u: &RadialProfile, spec: &QuadratureSpec) -> Result<TmValue> {
    let total = tm_functional(params, u, spec)?;
    Ok(TmValue {
        value: total.value / ball_volume(params.dim),
        ..total
    })
}

/// `‖u‖_n`; members of the Moser family sit at 1.
pub fn unit_norm_check(dim: Dimension, member: &RadialProfile, spec: &QuadratureSpec) -> Result<f64> {
    sobolev_norm(dim, member, spec)
}

/// `s_k = start · ratio^k`, `k = 0..count`.
pub fn geometric_grid(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * ratio.powi(k as i32)).collect()
}

/// Which family a scan walks along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFamily {
    /// `μ_s` (planar only).
    Moser,
    /// Higher-dimensional candidates rescaled to unit `H_n` norm at runtime.
    NormalizedCandidate,
}

impl ScanFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanFamily::Moser => "moser",
            ScanFamily::NormalizedCandidate => "normalized-candidate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub s: f64,
    /// Functional at the unit-norm member; `None` if this point failed.
    pub value: Option<f64>,
    /// Functional at the candidate before normalization (`n > 2` only).
    pub raw_value: Option<f64>,
    pub overflow: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub dim: Dimension,
    pub alpha: f64,
    pub family: ScanFamily,
    pub points: Vec<ScanPoint>,
}

impl ScanResult {
    pub fn s_grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.s).collect()
    }

    pub fn functional_values(&self) -> Vec<Option<f64>> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn overflow_flags(&self) -> Vec<bool> {
        self.points.iter().map(|p| p.overflow).collect()
    }

    /// Running maximum of the values along the grid; failed points carry the
    /// previous maximum forward.
    pub fn running_max(&self) -> Vec<Option<f64>> {
        let mut best: Option<f64> = None;
        self.points
            .iter()
            .map(|p| {
                if let Some(v) = p.value {
                    best = Some(best.map_or(v, |b| b.max(v)));
                }
                best
            })
            .collect()
    }
}

fn scan_point(params: &TmParameters, s: f64, spec: &QuadratureSpec) -> Result<ScanPoint> {
    if !(s > 0.0 && s < 1.0) {
        return Err(domain("s", s, "(0, 1)"));
    }
    let center = KernelPoint::new(s)?;
    if params.dim.is_plane() {
        let member = KernelFamily::moser(center)?.profile();
        let v = tm_functional(params, &member, spec)?;
        Ok(ScanPoint {
            s,
            value: Some(v.value),
            raw_value: None,
            overflow: v.overflow,
            error: None,
        })
    } else {
        let candidate = KernelFamily::candidate(params.dim, center)?.profile();
        let raw = tm_functional(params, &candidate, spec)?;
        let norm = sobolev_norm(params.dim, &candidate, spec)?;
        let unit = candidate.scaled(1.0 / norm)?;
        let v = tm_functional(params, &unit, spec)?;
        Ok(ScanPoint {
            s,
            value: Some(v.value),
            raw_value: Some(raw.value),
            overflow: v.overflow || raw.overflow,
            error: None,
        })
    }
}

/// Evaluate the functional along the family at each `s`. Failing points are
/// recorded with their error message; the scan itself only fails on a bad `alpha`.
pub fn moser_scan(dim: Dimension, alpha: f64, s_grid: &[f64], spec: &QuadratureSpec) -> Result<ScanResult> {
    let params = TmParameters::new(dim, alpha)?;
    let points = s_grid
        .par_iter()
        .map(|&s| {
            scan_point(&params, s, spec).unwrap_or_else(|e| ScanPoint {
                s,
                value: None,
                raw_value: None,
                overflow: false,
                error: Some(e.to_string()),
            })
        })
        .collect();
    Ok(ScanResult {
        dim,
        alpha,
        family: if dim.is_plane() {
            ScanFamily::Moser
        } else {
            ScanFamily::NormalizedCandidate
        },
        points,
    })
}
