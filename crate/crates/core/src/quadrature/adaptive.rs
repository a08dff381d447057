use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::rule::GaussLegendre;
use super::QuadratureSpec;
use crate::error::{Error, Result};

/// Value of an adaptive integral with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    abs: f64,
    error: f64,
}

impl Panel {
    fn value(&self) -> f64 {
        self.left + self.right
    }
}

/// Max-heap entry keyed on panel error; ties broken by panel index so the
/// refinement order is fully deterministic.
#[derive(Debug, PartialEq)]
struct Worst(f64, usize);

impl Eq for Worst {}

impl PartialOrd for Worst {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Worst {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .total_cmp(&other.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

struct Integrator<'a, F> {
    f: &'a F,
    rule: GaussLegendre,
}

impl<F: Fn(f64) -> f64> Integrator<'_, F> {
    fn quad(&self, a: f64, b: f64) -> Result<(f64, f64)> {
        self.rule.apply(self.f, a, b).map_err(Error::NonFinite)
    }

    /// Compare the one-panel rule against the two half-panel rules.
    fn assess(&self, a: f64, b: f64, whole: Option<f64>) -> Result<Panel> {
        let whole = match whole {
            Some(q) => q,
            None => self.quad(a, b)?.0,
        };
        let m = 0.5 * (a + b);
        let (left, left_abs) = self.quad(a, m)?;
        let (right, right_abs) = self.quad(m, b)?;
        Ok(Panel {
            a,
            b,
            left,
            right,
            abs: left_abs + right_abs,
            error: (whole - (left + right)).abs(),
        })
    }
}

/// Integrate `f` over `[breakpoints[0], breakpoints[last]]`, never placing a
/// node on a breakpoint. Panels are bisected worst-first until the summed
/// error is at most `max(abs_tol, rel_tol·|I|)`, or the roundoff floor of the
/// absolute integral when that is larger. `extra_error` is charged against
/// the same budget (used for analytically bounded tails).
pub(crate) fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
    extra_error: f64,
) -> Result<QuadratureResult> {
    spec.validate()?;
    let integrator = Integrator {
        f,
        rule: GaussLegendre::new(spec.base_nodes),
    };

    let mut panels = Vec::new();
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            panels.push(integrator.assess(w[0], w[1], None)?);
        }
    }
    let mut heap: BinaryHeap<Worst> = panels
        .iter()
        .enumerate()
        .map(|(i, p)| Worst(p.error, i))
        .collect();
    let mut live = vec![true; panels.len()];
    // error of panels too narrow to bisect further
    let mut frozen_error = 0.0;
    let mut subdivisions = 0;

    loop {
        let (mut value, mut error, mut abs) = (0.0, frozen_error + extra_error, 0.0);
        for (p, _) in panels.iter().zip(&live).filter(|(_, l)| **l) {
            value += p.value();
            error += p.error;
            abs += p.abs;
        }
        let tolerance = spec.abs_tol.max(spec.rel_tol * value.abs());
        let roundoff = 50.0 * f64::EPSILON * abs;
        if error <= tolerance.max(roundoff) {
            return Ok(QuadratureResult {
                value,
                error,
                subdivisions,
            });
        }

        let Some(Worst(_, idx)) = heap.pop() else {
            return Err(Error::NonConvergence {
                estimate: value,
                error,
                tolerance,
                subdivisions,
            });
        };
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                estimate: value,
                error,
                tolerance,
                subdivisions,
            });
        }

        let worst = panels[idx];
        let m = 0.5 * (worst.a + worst.b);
        if !(m > worst.a && m < worst.b) || (worst.b - worst.a) <= 8.0 * f64::EPSILON * worst.b {
            // keep its value, stop refining it
            frozen_error += worst.error;
            panels[idx].error = 0.0;
            continue;
        }

        live[idx] = false;
        for child in [
            integrator.assess(worst.a, m, Some(worst.left))?,
            integrator.assess(m, worst.b, Some(worst.right))?,
        ] {
            heap.push(Worst(child.error, panels.len()));
            panels.push(child);
            live.push(true);
        }
        subdivisions += 1;
    }
}
