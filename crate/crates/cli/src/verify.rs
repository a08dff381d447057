//! The invariant suite behind `radial-rkhs verify`.
//!
//! Random inputs come from a ChaCha stream seeded by `--seed`, and nothing
//! time-dependent is reported, so equal configurations give identical reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use radial_rkhs::{
    apply_evaluation_with, gamma2, gamma_n, inner_product, isometry_check_2d, kernel_k_with,
    sobolev_norm, Dimension, GramSystem, KernelExpansion, KernelFamily, KernelPoint, NodeSet,
    QuadratureSpec, RadialProfile, SignConvention, MONTE_CARLO_MIN_SAMPLES,
};

use crate::args::RunConfig;
use crate::commands::{F_INNER, F_MOSER, F_PLANAR, F_POWER};
use crate::output::{format_real, Artifact, Table};
use crate::CliError;

pub const MOSER_CENTERS: [f64; 5] = [0.9, 0.5, 0.1, 1e-4, 1e-8];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    /// Passing means `measured <= tolerance`; an error fails the check with its message.
    fn bounded(name: &'static str, tolerance: f64, outcome: Result<(f64, String), radial_rkhs::Error>) -> Self {
        match outcome {
            Ok((measured, detail)) => Check {
                name,
                passed: measured <= tolerance,
                measured,
                tolerance,
                detail,
            },
            Err(e) => Check {
                name,
                passed: false,
                measured: f64::NAN,
                tolerance,
                detail: e.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub dim: Dimension,
    pub convention: SignConvention,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn artifact(&self) -> Artifact {
        let mut table = Table::new(&["check", "passed", "measured", "tolerance", "detail"]);
        for c in &self.checks {
            table.push(vec![c.name.into(), c.passed.into(), c.measured.into(), c.tolerance.into(), c.detail.clone().into()]);
        }
        let mut formulas = vec![F_PLANAR, F_INNER, F_MOSER];
        if !self.dim.is_plane() {
            formulas.insert(1, F_POWER);
        }
        let mut artifact = Artifact::new(table, formulas);
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        artifact.summary = vec![
            ("all_passed", self.all_passed().into()),
            ("checks", self.checks.len().into()),
            ("failed", failed.into()),
        ];
        artifact
    }
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

fn point(t: f64) -> KernelPoint {
    KernelPoint::new(t).expect("suite radii lie in (0, 1]")
}

/// Distinct sorted nodes in `(lo, hi)`, pairwise at least `gap` apart.
fn random_nodes(rng: &mut ChaCha8Rng, count: usize, lo: f64, hi: f64, gap: f64) -> Vec<f64> {
    let mut nodes: Vec<f64> = Vec::with_capacity(count);
    while nodes.len() < count {
        let x = rng.random_range(lo..hi);
        if nodes.iter().all(|y| (x - y).abs() >= gap) {
            nodes.push(x);
        }
    }
    nodes.sort_by(f64::total_cmp);
    nodes
}

fn random_expansion(rng: &mut ChaCha8Rng, dim: Dimension) -> KernelExpansion {
    let terms = rng.random_range(1..=5);
    let centers = (0..terms).map(|_| rng.random_range(0.02..0.98)).collect();
    let coefficients = (0..terms).map(|_| rng.random_range(-2.0..=2.0)).collect();
    KernelExpansion::new(dim, centers, coefficients).expect("centers are valid")
}

pub const EXPANSIONS: usize = 10;
pub const IDENTITY_POINTS: usize = 20;

/// `max |<k_t, u> - u(t)|` over a t-grid and random expansions `u`. The
/// expansions always use the corrected kernel; only the representer `k_t`
/// follows `convention`.
pub fn reproducing_identity(
    dim: Dimension,
    spec: &QuadratureSpec,
    convention: SignConvention,
    rng: &mut ChaCha8Rng,
    expansions: usize,
) -> Result<(f64, String), radial_rkhs::Error> {
    let ts = linspace(0.02, 0.98, IDENTITY_POINTS);
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..expansions {
        let u = random_expansion(rng, dim);
        let profile = u.profile();
        for &t in &ts {
            let exact = u.evaluate(t)?;
            let got = apply_evaluation_with(dim, point(t), &profile, spec, convention)?;
            let residual = (got - exact).abs();
            if residual > worst.0 {
                worst = (residual, exact.abs());
            }
        }
    }
    let ratio = if worst.1 > 0.0 { worst.0 / worst.1 } else { 0.0 };
    Ok((
        worst.0,
        format!(
            "{} t in [0.02, 0.98] x {expansions} expansions; worst residual / |u(t)| = {}",
            ts.len(),
            format_real(ratio)
        ),
    ))
}

fn kernel_diagonal(dim: Dimension, convention: SignConvention) -> (f64, String) {
    let ts = linspace(0.02, 0.98, IDENTITY_POINTS);
    let lowest = ts
        .iter()
        .map(|&t| kernel_k_with(dim, point(t), point(t), convention))
        .fold(f64::INFINITY, f64::min);
    // measured is -min K(t,t), so the check passes when every diagonal entry is positive
    (-lowest, format!("min K(t,t) over {} t = {}", ts.len(), format_real(lowest)))
}

fn gram_psd(dim: Dimension, convention: SignConvention, rng: &mut ChaCha8Rng) -> Result<(f64, String), radial_rkhs::Error> {
    let nodes = random_nodes(rng, 12, 0.02, 0.98, 1e-3);
    let set = NodeSet::new(dim, nodes, vec![0.0; 12])?;
    let system = GramSystem::build_with(set, convention);
    let lo = system.min_eigenvalue();
    Ok((-lo, format!("12 random nodes; min eigenvalue = {}", format_real(lo))))
}

/// Largest relative gap between closed-form Gram entries and quadrature.
pub fn gram_agreement(
    dim: Dimension,
    spec: &QuadratureSpec,
    convention: SignConvention,
    nodes: &[f64],
) -> Result<(f64, String), radial_rkhs::Error> {
    let profiles: Vec<RadialProfile> = nodes
        .iter()
        .map(|&t| KernelFamily::reproducing_with(dim, point(t), convention).profile())
        .collect();
    let mut worst = 0.0f64;
    for (i, &ti) in nodes.iter().enumerate() {
        for (j, &tj) in nodes.iter().enumerate() {
            let closed = kernel_k_with(dim, point(ti), point(tj), convention);
            let quad = inner_product(dim, &profiles[i], &profiles[j], spec)?;
            worst = worst.max(((quad - closed) / closed).abs());
        }
    }
    Ok((worst, format!("{0}x{0} random nodes, relative", nodes.len())))
}

/// Profiles used for the planar isometry check, with their closed-form energy.
pub fn isometry_cases() -> Result<Vec<(&'static str, RadialProfile, f64)>, radial_rkhs::Error> {
    let plane = Dimension::PLANE;
    let half = point(0.5);
    let sum = KernelExpansion::new(plane, vec![0.2, 0.5, 0.8], vec![1.0, -0.5, 0.75])?;
    Ok(vec![
        ("k_0.5", KernelFamily::reproducing(plane, half).profile(), kernel_k_with(plane, half, half, SignConvention::Corrected)),
        ("mu_0.5", KernelFamily::moser(half)?.profile(), 1.0),
        ("3-term", sum.profile(), sum.norm().powi(2)),
    ])
}

/// Worst `|estimate - exact| / standard error` over the isometry cases.
pub fn isometry(samples: usize, seed: u64) -> Result<(f64, String), radial_rkhs::Error> {
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (label, profile, exact) in isometry_cases()? {
        let (estimate, se) = isometry_check_2d(&profile, samples, seed)?;
        let z = (estimate - exact).abs() / se;
        worst = worst.max(z);
        parts.push(format!("{label}: z = {}", format_real(z)));
    }
    Ok((worst, format!("{samples} samples; {}", parts.join("; "))))
}

pub fn moser_norms(spec: &QuadratureSpec) -> Result<(f64, String), radial_rkhs::Error> {
    let mut worst = 0.0f64;
    for &s in &MOSER_CENTERS {
        let mu = KernelFamily::moser(point(s))?.profile();
        worst = worst.max((sobolev_norm(Dimension::PLANE, &mu, spec)? - 1.0).abs());
    }
    Ok((worst, "max |‖μ_s‖ - 1| over s in {0.9, 0.5, 0.1, 1e-4, 1e-8}".into()))
}

pub fn dimension_continuity(eps: f64) -> (f64, String) {
    let grid = linspace(0.05, 0.95, 10);
    let near = Dimension::new(2.0 + eps).expect("admissible");
    let mut worst = 0.0f64;
    for &t in &grid {
        for &r in &grid {
            let gap = gamma_n(near, point(t), point(r)).expect("n > 2") - gamma2(point(t), point(r));
            worst = worst.max(gap.abs());
        }
    }
    (worst, format!("10x10 grid in [0.05, 0.95]^2, n = 2 + {}", format_real(eps)))
}

fn interpolation(dim: Dimension, convention: SignConvention, rng: &mut ChaCha8Rng) -> Result<(f64, String), radial_rkhs::Error> {
    let nodes = random_nodes(rng, 8, 0.02, 0.98, 0.01);
    let values: Vec<f64> = nodes.iter().map(|_| rng.random_range(-2.0..=2.0)).collect();
    let scale = 1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut system = GramSystem::build_with(NodeSet::new(dim, nodes.clone(), values.clone())?, convention);
    let fit = system.fit_min_norm()?;
    let mut worst = 0.0f64;
    for (t, y) in nodes.iter().zip(&values) {
        worst = worst.max((fit.evaluate(*t)? - y).abs());
    }
    Ok((worst / scale, "8 random nodes; max |s(t_i) - y_i| / (1 + max |y|)".into()))
}

pub fn run_suite(config: &RunConfig, samples: usize) -> Result<Report, CliError> {
    if samples < MONTE_CARLO_MIN_SAMPLES {
        return Err(CliError::Input(radial_rkhs::Error::Domain {
            what: "samples",
            value: samples as f64,
            range: "[10000, ∞)",
        }));
    }
    let (dim, spec, conv) = (config.dim, &config.spec, config.convention);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut checks = vec![
        Check::bounded("reproducing_identity", 1e-8, reproducing_identity(dim, spec, conv, &mut rng, EXPANSIONS)),
        {
            let (m, d) = kernel_diagonal(dim, conv);
            Check::bounded("kernel_diagonal_positive", 0.0, Ok((m, d)))
        },
        Check::bounded("gram_psd", 1e-12, gram_psd(dim, conv, &mut rng)),
    ];
    let nodes = random_nodes(&mut rng, 8, 0.02, 0.98, 1e-3);
    checks.push(Check::bounded("gram_quadrature_agreement", 1e-10, gram_agreement(dim, spec, conv, &nodes)));
    checks.push(Check::bounded("interpolation_residual", 1e-9, interpolation(dim, conv, &mut rng)));
    checks.push(Check::bounded("isometry_monte_carlo_planar", 4.0, isometry(samples, config.seed)));
    checks.push(Check::bounded("moser_unit_norm", 1e-10, moser_norms(spec)));
    checks.push(Check::bounded("dimension_continuity", 1e-4, Ok(dimension_continuity(1e-6))));

    Ok(Report {
        dim,
        convention: conv,
        checks,
    })
}
