use proptest::prelude::*;
use radial_rkhs::{
    apply_evaluation, eval_functional_norm, gamma2, gamma_n, inner_product, kernel_k,
    sobolev_norm, Dimension, GramSystem, KernelExpansion, KernelFamily, KernelPoint, NodeSet,
    QuadratureSpec, RadialProfile,
};

fn d(n: f64) -> Dimension {
    Dimension::new(n).unwrap()
}

fn p(t: f64) -> KernelPoint {
    KernelPoint::new(t).unwrap()
}

fn radius() -> impl Strategy<Value = f64> {
    0.001f64..=1.0
}

fn interior() -> impl Strategy<Value = f64> {
    0.02f64..0.98
}

fn integer_dim() -> impl Strategy<Value = f64> {
    prop_oneof![Just(2.0), Just(3.0), Just(4.0)]
}

/// Up to `max` centers in (0.02, 0.98), pairwise at least `gap` apart.
fn spread_nodes(max: usize, gap: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(interior(), 1..=max).prop_map(move |mut v| {
        v.sort_by(f64::total_cmp);
        let mut out: Vec<f64> = Vec::new();
        for x in v {
            if out.last().is_none_or(|&l| x - l >= gap) {
                out.push(x);
            }
        }
        out
    })
}

fn expansion(max_terms: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    prop::collection::vec((interior(), -2.0f64..2.0), 1..=max_terms)
        .prop_map(|terms| terms.into_iter().unzip())
}

fn min_eigenvalue(nodes: &[f64], n: f64) -> f64 {
    let values = vec![0.0; nodes.len()];
    GramSystem::build(NodeSet::new(d(n), nodes.to_vec(), values).unwrap()).min_eigenvalue()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernels_are_symmetric(t in radius(), r in radius(), n in 2.0001f64..6.0) {
        prop_assert_eq!(gamma2(p(t), p(r)), gamma2(p(r), p(t)));
        prop_assert_eq!(gamma_n(d(n), p(t), p(r)).unwrap(), gamma_n(d(n), p(r), p(t)).unwrap());
    }

    #[test]
    fn kernels_vanish_on_the_sphere(t in radius(), n in 2.0f64..6.0) {
        prop_assert_eq!(kernel_k(d(n), p(t), p(1.0)), 0.0);
        if t < 1.0 {
            prop_assert_eq!(radial_rkhs::moser_mu(p(t), p(1.0)).unwrap(), 0.0);
            if n > 2.0 {
                prop_assert_eq!(radial_rkhs::tm_candidate(d(n), p(t), p(1.0)).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn kernels_are_nonincreasing_with_a_plateau(t in interior(), a in radius(), b in radius(), n in 2.0f64..5.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let k = |r: f64| kernel_k(d(n), p(t), p(r));
        prop_assert!(k(lo) >= k(hi));
        prop_assert!(k(lo) >= 0.0);
        if hi <= t {
            prop_assert_eq!(k(lo), k(hi));
        }
    }

    #[test]
    fn kernel_k_is_the_closed_form(t in radius(), s in radius(), n in integer_dim()) {
        let closed = if n == 2.0 { gamma2(p(t), p(s)) } else { gamma_n(d(n), p(t), p(s)).unwrap() };
        prop_assert_eq!(kernel_k(d(n), p(t), p(s)).to_bits(), closed.to_bits());
    }

    #[test]
    fn gram_is_psd(nodes in spread_nodes(12, 1e-9), n in integer_dim()) {
        prop_assert!(min_eigenvalue(&nodes, n) >= -1e-12);
    }

    #[test]
    fn inner_product_is_symmetric((c1, w1) in expansion(4), (c2, w2) in expansion(4), n in integer_dim()) {
        let spec = QuadratureSpec::default();
        let u = KernelExpansion::new(d(n), c1, w1).unwrap().profile();
        let v = KernelExpansion::new(d(n), c2, w2).unwrap().profile();
        let uv = inner_product(d(n), &u, &v, &spec).unwrap();
        let vu = inner_product(d(n), &v, &u, &spec).unwrap();
        prop_assert!((uv - vu).abs() <= 1e-14 * (1.0 + uv.abs()));
    }

    #[test]
    fn inner_product_is_bilinear(
        (c1, w1) in expansion(3), (c2, w2) in expansion(3), (c3, w3) in expansion(3),
        a in -3.0f64..3.0, b in -3.0f64..3.0, n in integer_dim(),
    ) {
        let spec = QuadratureSpec::default();
        let u = KernelExpansion::new(d(n), c1, w1).unwrap().profile();
        let v = KernelExpansion::new(d(n), c2, w2).unwrap().profile();
        let w = KernelExpansion::new(d(n), c3, w3).unwrap().profile();
        let combo = RadialProfile::linear_combination(&[(a, &u), (b, &v)]).unwrap();
        let lhs = inner_product(d(n), &combo, &w, &spec).unwrap();
        let rhs = a * inner_product(d(n), &u, &w, &spec).unwrap() + b * inner_product(d(n), &v, &w, &spec).unwrap();
        let scale = 1.0 + lhs.abs() + rhs.abs();
        prop_assert!((lhs - rhs).abs() <= 10.0 * spec.rel_tol * scale * 100.0, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn quadrature_matches_closed_form_kernel(t in interior(), s in interior(), n in integer_dim()) {
        let spec = QuadratureSpec::default();
        let kt = KernelFamily::reproducing(d(n), p(t)).profile();
        let ks = KernelFamily::reproducing(d(n), p(s)).profile();
        let q = inner_product(d(n), &kt, &ks, &spec).unwrap();
        let exact = kernel_k(d(n), p(t), p(s));
        prop_assert!(((q - exact) / exact).abs() <= 1e-10, "{} vs {}", q, exact);
    }

    #[test]
    fn reproducing_identity((centers, coefs) in expansion(5), t in interior(), n in integer_dim()) {
        let spec = QuadratureSpec::default();
        let u = KernelExpansion::new(d(n), centers, coefs).unwrap();
        let got = apply_evaluation(d(n), p(t), &u.profile(), &spec).unwrap();
        prop_assert!((got - u.evaluate(t).unwrap()).abs() <= 1e-8);
    }

    #[test]
    fn interpolates_its_data(nodes in spread_nodes(12, 0.01), seed in any::<u64>(), n in prop_oneof![Just(2.0), Just(3.0)]) {
        let values: Vec<f64> = nodes.iter().enumerate()
            .map(|(i, _)| ((seed.wrapping_add(i as u64) % 1000) as f64 / 250.0) - 2.0)
            .collect();
        let y_max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut sys = GramSystem::build(NodeSet::new(d(n), nodes.clone(), values.clone()).unwrap());
        let fit = sys.fit_min_norm().unwrap();
        for (t, y) in nodes.iter().zip(&values) {
            prop_assert!((fit.evaluate(*t).unwrap() - y).abs() <= 1e-9 * (1.0 + y_max));
        }
    }

    #[test]
    fn expansion_norm_matches_quadrature((centers, coefs) in expansion(5), n in integer_dim()) {
        let spec = QuadratureSpec::default();
        let u = KernelExpansion::new(d(n), centers, coefs).unwrap();
        let q = sobolev_norm(d(n), &u.profile(), &spec).unwrap();
        prop_assert!((u.norm() - q).abs() <= 1e-8, "{} vs {}", u.norm(), q);
    }

    #[test]
    fn evaluation_is_bounded_by_norms((centers, coefs) in expansion(5), t in interior(), n in integer_dim()) {
        let u = KernelExpansion::new(d(n), centers, coefs).unwrap();
        let bound = eval_functional_norm(d(n), p(t)) * u.norm();
        prop_assert!(u.evaluate(t).unwrap().abs() <= bound + 1e-10);
    }

    #[test]
    fn min_norm_interpolant_beats_perturbations(
        nodes in spread_nodes(6, 0.02),
        extra in spread_nodes(3, 0.02),
        seed in any::<u32>(),
    ) {
        let dim = d(2.0);
        let values: Vec<f64> = (0..nodes.len()).map(|i| (((seed as usize + 7 * i) % 41) as f64 / 10.0) - 2.0).collect();
        let mut sys = GramSystem::build(NodeSet::new(dim, nodes.clone(), values).unwrap());
        let best = sys.fit_min_norm().unwrap();

        // w vanishes at the data nodes and is nonzero at the extra ones
        let extra: Vec<f64> = extra.into_iter().filter(|z| nodes.iter().all(|t| (t - z).abs() > 0.01)).collect();
        prop_assume!(!extra.is_empty());
        let mut all = nodes.clone();
        all.extend(&extra);
        let mut targets = vec![0.0; nodes.len()];
        targets.extend(extra.iter().map(|z| z - 0.5));
        let mut aug = GramSystem::build(NodeSet::new(dim, all, targets).unwrap());
        let w = aug.fit_min_norm().unwrap();
        for t in &nodes {
            prop_assert!(w.evaluate(*t).unwrap().abs() < 1e-9);
        }
        let perturbed = best.plus(&w).unwrap();
        prop_assert!(perturbed.norm() >= best.norm() - 1e-10);
    }
}

#[test]
fn dimension_continuity() {
    for &(t, r) in &[(0.1, 0.3), (0.5, 0.2), (0.9, 0.95), (0.05, 0.05)] {
        let planar = gamma2(p(t), p(r));
        let coarse = (gamma_n(d(2.0 + 1e-3), p(t), p(r)).unwrap() - planar).abs();
        let fine = (gamma_n(d(2.0 + 1e-6), p(t), p(r)).unwrap() - planar).abs();
        let scale = f64::ln(r).abs().max(1e-3) * f64::ln(t).abs().max(1e-3);
        assert!(coarse <= 10.0 * 1e-3 * scale.max(1.0), "eps = 1e-3: {coarse}");
        assert!(fine <= 1e-4, "eps = 1e-6: {fine}");
        assert!(fine < coarse);
    }
}
