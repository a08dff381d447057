use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub(crate) struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton iteration from the Tricomi starting guesses.
    pub(crate) fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;

        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let step = legendre_ratio(n, x);
                x -= step;
                if step.abs() <= 1e-16 {
                    break;
                }
            }
            let dp = legendre_slope(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// `(∫_a^b f, ∫_a^b |f|)` with the rule mapped onto `[a, b]`.
    /// Returns the offending abscissa if `f` is not finite there.
    pub(crate) fn apply<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> Result<(f64, f64), f64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let r = mid + half * x;
            let y = f(r);
            if !y.is_finite() {
                return Err(r);
            }
            sum += w * y;
            abs_sum += w * y.abs();
        }
        Ok((half * sum, half * abs_sum))
    }
}

/// Newton step `P_n(x) / P_n'(x)`.
fn legendre_ratio(n: usize, x: f64) -> f64 {
    legendre_pair(n, x).0 / legendre_slope(n, x)
}

/// `P_n'(x) = n (x P_n - P_{n-1}) / (x² - 1)`.
fn legendre_slope(n: usize, x: f64) -> f64 {
    let (p, p_prev) = legendre_pair(n, x);
    n as f64 * (x * p - p_prev) / (x * x - 1.0)
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    if n == 0 {
        (1.0, 0.0)
    } else {
        (p, p_prev)
    }
}
