use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::profile::RadialProfile;

pub const MIN_SAMPLES: usize = 10_000;

/// Samples per independent ChaCha stream.
const CHUNK: usize = 1 << 14;

/// Points closer than this to the origin are redrawn.
const ORIGIN_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.count == 0.0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

/// Monte-Carlo estimate of the planar Dirichlet energy `∫_{B_2} |∇(Tu)|² dx`
/// of the radial extension `Tu(x) = u(|x|)`, using `∇(Tu)(x) = u'(|x|) x/|x|`.
///
/// Points are uniform on the disk (radius `√U`, angle `2πV`). Chunk `j` of
/// [`CHUNK`] samples draws from ChaCha stream `j` of `seed`, and chunk
/// statistics are merged in index order, so the output depends only on
/// `(seed, sample_count)`.
///
/// Returns `(estimate, standard_error)`.
pub fn isometry_check_2d(u: &RadialProfile, sample_count: usize, seed: u64) -> Result<(f64, f64)> {
    if sample_count < MIN_SAMPLES {
        return Err(domain("sample_count", sample_count as f64, "[10000, ∞)"));
    }
    let chunks = sample_count.div_ceil(CHUNK);
    let partials: Vec<Result<Moments>> = (0..chunks)
        .into_par_iter()
        .map(|j| {
            let len = CHUNK.min(sample_count - j * CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64);
            let mut moments = Moments::default();
            for _ in 0..len {
                let (x1, x2) = loop {
                    let radius = rng.random::<f64>().sqrt();
                    let angle = TAU * rng.random::<f64>();
                    if radius >= ORIGIN_GUARD {
                        break (radius * angle.cos(), radius * angle.sin());
                    }
                };
                let norm = x1.hypot(x2);
                let slope = u.derivative(norm);
                let (g1, g2) = (slope * x1 / norm, slope * x2 / norm);
                let energy = g1 * g1 + g2 * g2;
                if !energy.is_finite() {
                    return Err(Error::NonFinite(norm));
                }
                moments.push(energy);
            }
            Ok(moments)
        })
        .collect();

    let mut total = Moments::default();
    for part in partials {
        total = total.merge(part?);
    }
    let variance = if total.count > 1.0 {
        total.m2 / (total.count - 1.0)
    } else {
        0.0
    };
    Ok((PI * total.mean, PI * (variance / total.count).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{Dimension, KernelFamily, KernelPoint};
    use crate::profile::Envelope;

    #[test]
    fn zero_profile_is_exactly_zero() {
        assert_eq!(isometry_check_2d(&RadialProfile::zero(), MIN_SAMPLES, 1).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn too_few_samples() {
        assert!(isometry_check_2d(&RadialProfile::zero(), 10, 1).is_err());
    }

    #[test]
    fn constant_gradient_has_no_variance() {
        // |∇(1 - |x|)| = 1 everywhere: energy is the disk area
        let u = RadialProfile::new("1-r", |r| 1.0 - r, |_| -1.0, vec![], Envelope::bounded(1.0)).unwrap();
        let (est, se) = isometry_check_2d(&u, 20_000, 3).unwrap();
        assert!((est - PI).abs() < 1e-12);
        assert!(se < 1e-12);
    }

    #[test]
    fn same_seed_same_answer() {
        let k = KernelFamily::reproducing(Dimension::PLANE, KernelPoint::new(0.5).unwrap()).profile();
        let a = isometry_check_2d(&k, 50_000, 42).unwrap();
        let b = isometry_check_2d(&k, 50_000, 42).unwrap();
        let c = isometry_check_2d(&k, 50_000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn kernel_energy_within_four_standard_errors() {
        let k = KernelFamily::reproducing(Dimension::PLANE, KernelPoint::new(0.5).unwrap()).profile();
        let (est, se) = isometry_check_2d(&k, 200_000, 7).unwrap();
        let exact = 2f64.ln() / TAU;
        assert!((est - exact).abs() <= 4.0 * se, "{est} vs {exact} (se {se})");
    }

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..37].iter().for_each(|&x| a.push(x));
        xs[37..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(b);
        assert!((merged.mean - whole.mean).abs() < 1e-15);
        assert!((merged.m2 - whole.m2).abs() < 1e-12);
    }
}
