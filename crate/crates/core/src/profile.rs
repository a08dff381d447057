use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Tolerance on `|u(1)|` accepted at construction.
const BOUNDARY_TOL: f64 = 1e-12;

/// Declared bound `|u'(r)| <= coefficient · r^(-power)` near the origin.
///
/// Quadrature starts just above `r = 0`; the envelope bounds what the skipped
/// sliver can contribute. Square integrability against `r^(n-1) dr` needs
/// `power < n/2`, which is checked when the profile is integrated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub coefficient: f64,
    pub power: f64,
}

impl Envelope {
    /// Derivative identically zero near the origin.
    pub const VANISHING: Envelope = Envelope {
        coefficient: 0.0,
        power: 0.0,
    };

    pub fn bounded(coefficient: f64) -> Self {
        Envelope {
            coefficient,
            power: 0.0,
        }
    }

    pub fn power_law(coefficient: f64, power: f64) -> Self {
        Envelope { coefficient, power }
    }
}

/// A radial function `u` on `(0, 1]` with `u(1) = 0`, together with its
/// classical derivative and the interior points where that derivative jumps.
///
/// The derivative closure is evaluated away from kinks only (quadrature nodes
/// are panel-interior), so its value exactly at a kink does not matter.
#[derive(Clone)]
pub struct RadialProfile {
    label: String,
    value: RadialFn,
    derivative: RadialFn,
    kinks: Vec<f64>,
    envelope: Envelope,
}

impl RadialProfile {
    pub fn new<V, D>(
        label: impl Into<String>,
        value: V,
        derivative: D,
        kinks: Vec<f64>,
        envelope: Envelope,
    ) -> Result<Self>
    where
        V: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let label = label.into();
        let invalid = |reason: String| Error::Profile {
            label: label.clone(),
            reason,
        };

        let at_one = value(1.0);
        if at_one.is_nan() || at_one.abs() > BOUNDARY_TOL {
            return Err(invalid(format!("u(1) = {at_one}, expected 0")));
        }
        if let Some(bad) = kinks.iter().find(|k| !(**k > 0.0 && **k < 1.0)) {
            return Err(invalid(format!("kink {bad} is not inside (0, 1)")));
        }
        if let Some(w) = kinks.windows(2).find(|w| w[0] >= w[1]) {
            return Err(invalid(format!(
                "kinks must be sorted and distinct, found {} then {}",
                w[0], w[1]
            )));
        }
        if !(envelope.coefficient >= 0.0 && envelope.coefficient.is_finite())
            || !(envelope.power >= 0.0 && envelope.power.is_finite())
        {
            return Err(invalid(format!("bad envelope {envelope:?}")));
        }

        Ok(RadialProfile {
            label,
            value: Arc::new(value),
            derivative: Arc::new(derivative),
            kinks,
            envelope,
        })
    }

    pub fn zero() -> Self {
        RadialProfile::new("zero", |_| 0.0, |_| 0.0, Vec::new(), Envelope::VANISHING)
            .expect("zero profile is valid")
    }

    /// `Σ a_i u_i`, with kinks merged and envelopes combined conservatively.
    pub fn linear_combination(terms: &[(f64, &RadialProfile)]) -> Result<Self> {
        let parts: Vec<(f64, RadialProfile)> =
            terms.iter().map(|(a, u)| (*a, (*u).clone())).collect();

        let mut kinks: Vec<f64> = parts.iter().flat_map(|(_, u)| u.kinks.iter().copied()).collect();
        kinks.sort_by(f64::total_cmp);
        kinks.dedup();

        // On (0, 1], r^(-p) <= r^(-p_max), so the largest power dominates.
        let envelope = Envelope {
            coefficient: parts
                .iter()
                .map(|(a, u)| a.abs() * u.envelope.coefficient)
                .sum(),
            power: parts
                .iter()
                .map(|(_, u)| u.envelope.power)
                .fold(0.0, f64::max),
        };
        let label = parts
            .iter()
            .map(|(a, u)| format!("{a}*{}", u.label))
            .collect::<Vec<_>>()
            .join(" + ");

        let value_parts = parts.clone();
        RadialProfile::new(
            label,
            move |r| value_parts.iter().map(|(a, u)| a * u.value(r)).sum(),
            move |r| parts.iter().map(|(a, u)| a * u.derivative(r)).sum(),
            kinks,
            envelope,
        )
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        RadialProfile::linear_combination(&[(factor, self)])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn value(&self, r: f64) -> f64 {
        (self.value)(r)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        (self.derivative)(r)
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("label", &self.label)
            .field("kinks", &self.kinks)
            .field("envelope", &self.envelope)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonzero_boundary_value() {
        let err = RadialProfile::new("shifted", |r| 2.0 - r, |_| -1.0, vec![], Envelope::bounded(1.0));
        assert!(matches!(err, Err(Error::Profile { .. })));
    }

    #[test]
    fn rejects_bad_kinks() {
        let mk = |kinks: Vec<f64>| {
            RadialProfile::new("p", |r| 1.0 - r, |_| -1.0, kinks, Envelope::bounded(1.0))
        };
        assert!(mk(vec![0.5, 0.3]).is_err());
        assert!(mk(vec![0.3, 0.3]).is_err());
        assert!(mk(vec![1.0]).is_err());
        assert!(mk(vec![0.0]).is_err());
        assert!(mk(vec![0.2, 0.7]).is_ok());
    }

    #[test]
    fn rejects_bad_envelope() {
        let err = RadialProfile::new("p", |r| 1.0 - r, |_| -1.0, vec![], Envelope::power_law(-1.0, 0.0));
        assert!(err.is_err());
    }

    #[test]
    fn combination_merges_kinks() {
        let a = RadialProfile::new("a", |r| 1.0 - r, |_| -1.0, vec![0.5], Envelope::bounded(1.0)).unwrap();
        let b = RadialProfile::new("b", |r| 1.0 - r, |_| -1.0, vec![0.25, 0.5], Envelope::power_law(2.0, 0.3)).unwrap();
        let c = RadialProfile::linear_combination(&[(2.0, &a), (-1.0, &b)]).unwrap();
        assert_eq!(c.kinks(), &[0.25, 0.5]);
        assert_eq!(c.envelope(), Envelope::power_law(4.0, 0.3));
        assert_eq!(c.value(0.5), 0.5);
        assert_eq!(c.derivative(0.3), -1.0);
    }
}
