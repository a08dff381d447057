use std::fs::File;
use std::path::Path;

use radial_rkhs::{
    alpha_critical, inner_product, kernel_k_with, moser_scan, Error, GramSystem, KernelFamily,
    KernelPoint, KernelVariant, NodeSet, DEFAULT_MIN_NODE,
};

use crate::args::{FamilyChoice, GramArgs, InterpArgs, KernelArgs, MoserArgs, RunConfig};
use crate::output::{Artifact, Cell, Table};
use crate::CliError;

pub const F_PLANAR: (&str, &str) = ("kernel.planar", "K(t,r) = ln(1/max(t,r)) / (2π)");
pub const F_POWER: (&str, &str) = (
    "kernel.power",
    "K(t,r) = (max(t,r)^(2-n) - 1) / ((n-2) ω_{n-1}),  ω_{n-1} = 2π^(n/2) / Γ(n/2)",
);
pub const F_MOSER: (&str, &str) = ("moser", "μ_s(r) = min(ln(1/r), ln(1/s)) / sqrt(2π ln(1/s))");
pub const F_CANDIDATE: (&str, &str) = (
    "candidate",
    "(ω (t^(2-n) - 1)/(n-2))^(-1/n) · min(r^(2-n) - 1, t^(2-n) - 1) / (n-2)",
);
pub const F_INNER: (&str, &str) = ("inner_product", "<u,v>_n = ω_{n-1} ∫_0^1 u'(r) v'(r) r^(n-1) dr");
pub const F_TM: (&str, &str) = ("tm_functional", "∫_{B_n} exp(α |u|^(n/(n-1))) dx,  α_n = n ω_{n-1}^(1/(n-1))");

fn kernel_formula(config: &RunConfig) -> (&'static str, &'static str) {
    if config.dim.is_plane() {
        F_PLANAR
    } else {
        F_POWER
    }
}

fn points(values: &[f64]) -> Result<Vec<KernelPoint>, CliError> {
    values
        .iter()
        .map(|&v| KernelPoint::new(v).map_err(CliError::Input))
        .collect()
}

pub fn kernel(config: &RunConfig, args: &KernelArgs) -> Result<Artifact, CliError> {
    let centers = points(&args.centers.0)?;
    let grid = points(&args.grid.0)?;
    let dim = config.dim;

    let variants: Vec<KernelVariant> = match args.family {
        FamilyChoice::Reproducing => vec![KernelVariant::ReproducingKernel],
        FamilyChoice::Moser => vec![KernelVariant::MoserFunction],
        FamilyChoice::Candidate => vec![KernelVariant::TmCandidate],
        FamilyChoice::All if dim.is_plane() => {
            vec![KernelVariant::ReproducingKernel, KernelVariant::MoserFunction]
        }
        FamilyChoice::All => vec![KernelVariant::ReproducingKernel, KernelVariant::TmCandidate],
    };
    let explicit = args.family != FamilyChoice::All;

    // build every member before evaluating anything
    let mut members = Vec::new();
    for &variant in &variants {
        for &t in &centers {
            match KernelFamily::with_convention(dim, t, variant, config.convention) {
                Ok(member) => members.push(member),
                // `all` skips the boundary center for families that need t < 1
                Err(_) if !explicit && t.is_boundary() => {}
                Err(e) => return Err(CliError::Input(e)),
            }
        }
    }

    let mut table = Table::new(&["family", "t", "r", "value"]);
    for member in &members {
        for r in &grid {
            table.push(vec![
                member.variant().as_str().into(),
                member.center().get().into(),
                r.get().into(),
                member.evaluate(*r).into(),
            ]);
        }
    }

    let mut formulas = Vec::new();
    for variant in variants {
        formulas.push(match variant {
            KernelVariant::ReproducingKernel => kernel_formula(config),
            KernelVariant::MoserFunction => F_MOSER,
            KernelVariant::TmCandidate => F_CANDIDATE,
        });
    }
    Ok(Artifact::new(table, formulas))
}

pub fn gram(config: &RunConfig, args: &GramArgs) -> Result<Artifact, CliError> {
    let dim = config.dim;
    let node_set = NodeSet::new(dim, args.nodes.0.clone(), vec![0.0; args.nodes.0.len()])?;
    let nodes = node_set.nodes().to_vec();
    let system = GramSystem::build_with(node_set, config.convention);

    let profiles: Vec<_> = nodes
        .iter()
        .map(|&t| KernelFamily::reproducing_with(dim, t, config.convention).profile())
        .collect();
    let mut table = Table::new(&["i", "j", "t_i", "t_j", "closed_form", "quadrature", "relative_difference"]);
    let mut worst = 0.0f64;
    for (i, ti) in nodes.iter().enumerate() {
        for (j, tj) in nodes.iter().enumerate() {
            let closed = kernel_k_with(dim, *ti, *tj, config.convention);
            let quad = inner_product(dim, &profiles[i], &profiles[j], &config.spec)?;
            let rel = ((quad - closed) / closed).abs();
            worst = worst.max(rel);
            table.push(vec![i.into(), j.into(), ti.get().into(), tj.get().into(), closed.into(), quad.into(), rel.into()]);
        }
    }

    let mut artifact = Artifact::new(table, vec![kernel_formula(config), F_INNER]);
    artifact.summary = vec![
        ("min_eigenvalue", system.min_eigenvalue().into()),
        ("condition_estimate", system.condition_estimate().into()),
        ("max_relative_difference", worst.into()),
    ];
    Ok(artifact)
}

/// `t,value` pairs. A first row that does not parse as two numbers is taken as a header.
pub fn read_pairs(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let file = File::open(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let (mut nodes, mut values) = (Vec::new(), Vec::new());
    for (index, record) in reader.records().enumerate() {
        let line = index + 1;
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Option<Vec<f64>> = record.iter().map(|f| f.parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[t, y]) => {
                nodes.push(t);
                values.push(y);
            }
            None if line == 1 && record.len() == 2 => {}
            _ => {
                return Err(CliError::Usage(format!(
                    "{} line {line}: expected two numbers `t,value`, got `{}`",
                    path.display(),
                    record.iter().collect::<Vec<_>>().join(",")
                )))
            }
        }
    }
    Ok((nodes, values))
}

pub fn interp(config: &RunConfig, args: &InterpArgs) -> Result<Artifact, CliError> {
    let (nodes, values) = read_pairs(&args.input)?;
    let floor = if args.allow_small_nodes { 0.0 } else { DEFAULT_MIN_NODE };
    let node_set = NodeSet::with_min_node(config.dim, nodes, values, floor)?;
    let grid = match &args.grid {
        Some(list) => points(&list.0)?,
        None => node_set.nodes().to_vec(),
    };

    let mut system = GramSystem::build_with(node_set, config.convention);
    let fit = system.fit_min_norm()?;

    let mut table = Table::new(&["record", "index", "t", "value"]);
    for (i, (t, c)) in fit.centers().iter().zip(fit.coefficients()).enumerate() {
        table.push(vec!["coefficient".into(), i.into(), t.get().into(), (*c).into()]);
    }
    for (i, r) in grid.iter().enumerate() {
        table.push(vec!["interpolant".into(), i.into(), r.get().into(), fit.evaluate(r.get())?.into()]);
    }
    let norm = fit.norm();
    let condition = system.condition_estimate();
    let residual = system.residual().unwrap_or(0.0);
    for (name, v) in [
        ("norm", norm),
        ("condition_estimate", condition),
        ("jitter", system.jitter()),
        ("max_residual", residual),
    ] {
        table.push(vec![name.into(), Cell::Empty, Cell::Empty, v.into()]);
    }

    let mut artifact = Artifact::new(table, vec![kernel_formula(config), ("coefficients", "G c = y,  G_ij = K(t_i, t_j)")]);
    artifact.summary = vec![
        ("norm", norm.into()),
        ("condition_estimate", condition.into()),
        ("jitter", system.jitter().into()),
        ("max_residual", residual.into()),
    ];
    Ok(artifact)
}

pub fn moser(config: &RunConfig, args: &MoserArgs) -> Result<Artifact, CliError> {
    let mult = args.alpha_mult;
    if !(mult.is_finite() && mult > 0.0) {
        return Err(CliError::Input(Error::Domain {
            what: "alpha-mult",
            value: mult,
            range: "(0, ∞)",
        }));
    }
    let critical = alpha_critical(config.dim);
    let alpha = mult * critical;
    let grid = radial_rkhs::geometric_grid(args.s_grid.start, args.s_grid.ratio, args.s_grid.count);
    let scan = moser_scan(config.dim, alpha, &grid, &config.spec)?;

    let mut table = Table::new(&["s", "value", "running_max", "overflow_flag", "raw_value", "error"]);
    for (point, best) in scan.points.iter().zip(scan.running_max()) {
        table.push(vec![
            point.s.into(),
            point.value.into(),
            best.into(),
            point.overflow.into(),
            point.raw_value.into(),
            point.error.clone().map_or(Cell::Empty, Cell::Text),
        ]);
    }

    let mut formulas = vec![F_TM];
    formulas.push(if config.dim.is_plane() { F_MOSER } else { F_CANDIDATE });
    let mut artifact = Artifact::new(table, formulas);
    artifact.summary = vec![
        ("alpha", alpha.into()),
        ("alpha_critical", critical.into()),
        ("alpha_multiplier", mult.into()),
        ("family", scan.family.as_str().into()),
        ("any_overflow", scan.overflow_flags().into_iter().any(|f| f).into()),
    ];
    artifact.note = Some(if config.dim.is_plane() {
        "scope: the supremum over the unit ball is probed only along the one-parameter Moser family; \
         overflow_flag marks exponents clipped at 700, where the value is only a lower bound"
    } else {
        "scope: the supremum over the unit ball is probed only along a one-parameter family; for n > 2 each \
         candidate is rescaled to unit norm by its computed norm before the functional is taken, and raw_value \
         is the functional of the unscaled candidate"
    });
    Ok(artifact)
}
