//! Minimal-norm interpolation in `H_n`.
//!
//! Given data `(t_i, y_i)`, the smallest-norm `u ∈ H_n` with `u(t_i) = y_i`
//! lies in the span of the kernels `k_{t_i}`; its coefficients solve
//! `G c = y` with `G_ij = K(t_i, t_j)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{domain, Error, Result};
use crate::kernels::{Dimension, KernelConstants, KernelPoint, SignConvention};
use crate::profile::{Envelope, RadialProfile};

/// Nodes below this are rejected unless a smaller floor is requested:
/// `K(t, t)` blows up as `t → 0`.
pub const DEFAULT_MIN_NODE: f64 = 1e-6;

/// Nodes closer than this count as duplicates.
pub const MIN_NODE_GAP: f64 = 1e-12;

/// Relative size of the first jitter, in units of `trace(G) / m`.
const JITTER_START: f64 = 1e-12;
const JITTER_GROWTH: f64 = 100.0;
const JITTER_ESCALATIONS: usize = 3;

/// Interpolation data: distinct nodes in `(0, 1)`, sorted ascending, with values.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    dim: Dimension,
    nodes: Vec<KernelPoint>,
    values: Vec<f64>,
}

impl NodeSet {
    pub fn new(dim: Dimension, nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::with_min_node(dim, nodes, values, DEFAULT_MIN_NODE)
    }

    /// As [`NodeSet::new`] with a custom lower floor for the nodes
    /// (pass `0.0` to accept anything in `(0, 1)`).
    pub fn with_min_node(
        dim: Dimension,
        nodes: Vec<f64>,
        values: Vec<f64>,
        min_node: f64,
    ) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::LengthMismatch {
                nodes: nodes.len(),
                values: values.len(),
            });
        }
        let mut pairs = Vec::with_capacity(nodes.len());
        for (&t, &y) in nodes.iter().zip(&values) {
            if !(t > 0.0 && t < 1.0) {
                return Err(domain("t", t, "(0, 1)"));
            }
            if t < min_node {
                return Err(domain("t", t, "[minimum node, 1); lower the node floor to allow it"));
            }
            if !y.is_finite() {
                return Err(domain("value", y, "finite reals"));
            }
            pairs.push((t, y));
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(w) = pairs.windows(2).find(|w| w[1].0 - w[0].0 <= MIN_NODE_GAP) {
            return Err(Error::DuplicateNode(w[1].0));
        }

        Ok(NodeSet {
            dim,
            nodes: pairs
                .iter()
                .map(|&(t, _)| KernelPoint::new(t))
                .collect::<Result<_>>()?,
            values: pairs.iter().map(|&(_, y)| y).collect(),
        })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn nodes(&self) -> &[KernelPoint] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `u(r) = Σ c_i K(t_i, r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelExpansion {
    dim: Dimension,
    centers: Vec<KernelPoint>,
    coefficients: Vec<f64>,
    convention: SignConvention,
}

impl KernelExpansion {
    pub fn new(dim: Dimension, centers: Vec<f64>, coefficients: Vec<f64>) -> Result<Self> {
        if centers.len() != coefficients.len() {
            return Err(Error::LengthMismatch {
                nodes: centers.len(),
                values: coefficients.len(),
            });
        }
        if let Some(c) = coefficients.iter().find(|c| !c.is_finite()) {
            return Err(domain("coefficient", *c, "finite reals"));
        }
        Ok(KernelExpansion {
            dim,
            centers: centers
                .into_iter()
                .map(KernelPoint::new)
                .collect::<Result<_>>()?,
            coefficients,
            convention: SignConvention::Corrected,
        })
    }

    pub fn empty(dim: Dimension) -> Self {
        KernelExpansion {
            dim,
            centers: Vec::new(),
            coefficients: Vec::new(),
            convention: SignConvention::Corrected,
        }
    }

    pub fn with_convention(mut self, convention: SignConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn centers(&self) -> &[KernelPoint] {
        &self.centers
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    fn constants(&self) -> KernelConstants {
        KernelConstants::new(self.dim, self.convention)
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        let r = KernelPoint::new(r)?.get();
        let k = self.constants();
        Ok(self
            .centers
            .iter()
            .zip(&self.coefficients)
            .map(|(t, c)| c * k.value(t.get(), r))
            .sum())
    }

    /// Gram matrix over this expansion's centers.
    pub fn gram(&self) -> DMatrix<f64> {
        gram_matrix(self.constants(), &self.centers)
    }

    /// `√(cᵀ G c)`.
    pub fn norm(&self) -> f64 {
        let c = DVector::from_column_slice(&self.coefficients);
        let g = self.gram();
        c.dot(&(&g * &c)).max(0.0).sqrt()
    }

    /// Concatenate two expansions in the same space.
    pub fn plus(&self, other: &KernelExpansion) -> Result<KernelExpansion> {
        if self.dim != other.dim {
            return Err(Error::Dimension(other.dim.get()));
        }
        let mut out = self.clone();
        out.centers.extend_from_slice(&other.centers);
        out.coefficients.extend_from_slice(&other.coefficients);
        Ok(out)
    }

    /// The expansion as a profile, kinked at its interior centers.
    pub fn profile(&self) -> RadialProfile {
        let k = self.constants();
        let terms: Vec<(f64, f64)> = self
            .centers
            .iter()
            .zip(&self.coefficients)
            .map(|(t, c)| (t.get(), *c))
            .collect();
        let mut kinks: Vec<f64> = terms.iter().map(|&(t, _)| t).filter(|&t| t < 1.0).collect();
        kinks.sort_by(f64::total_cmp);
        kinks.dedup();
        let value_terms = terms.clone();
        RadialProfile::new(
            format!("expansion(n={}, terms={})", self.dim, terms.len()),
            move |r| value_terms.iter().map(|&(t, c)| c * k.value(t, r)).sum(),
            move |r| terms.iter().map(|&(t, c)| c * k.derivative(t, r)).sum(),
            kinks,
            Envelope::VANISHING,
        )
        .expect("kernel expansions satisfy the profile invariants")
    }
}

fn gram_matrix(k: KernelConstants, points: &[KernelPoint]) -> DMatrix<f64> {
    let m = points.len();
    DMatrix::from_fn(m, m, |i, j| k.value(points[i].get(), points[j].get()))
}

/// Gram matrix of a node set, plus the solve state of the interpolation problem.
#[derive(Debug, Clone)]
pub struct GramSystem {
    node_set: NodeSet,
    convention: SignConvention,
    gram: DMatrix<f64>,
    jitter: f64,
    jitter_history: Vec<f64>,
    coefficients: Option<Vec<f64>>,
}

impl GramSystem {
    pub fn build(node_set: NodeSet) -> Self {
        Self::build_with(node_set, SignConvention::Corrected)
    }

    pub fn build_with(node_set: NodeSet, convention: SignConvention) -> Self {
        let gram = gram_matrix(KernelConstants::new(node_set.dim, convention), &node_set.nodes);
        GramSystem {
            node_set,
            convention,
            gram,
            jitter: 0.0,
            jitter_history: Vec::new(),
            coefficients: None,
        }
    }

    pub fn node_set(&self) -> &NodeSet {
        &self.node_set
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// Jitter added to the diagonal by the accepted solve.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Every nonzero jitter that was tried, in order.
    pub fn jitter_history(&self) -> &[f64] {
        &self.jitter_history
    }

    pub fn coefficients(&self) -> Option<&[f64]> {
        self.coefficients.as_deref()
    }

    fn eigenvalues(&self) -> DVector<f64> {
        SymmetricEigen::new(self.gram.clone()).eigenvalues
    }

    /// Smallest eigenvalue of the unjittered Gram matrix (`+∞` when empty).
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `λ_max / λ_min`, infinite when the matrix is not positive definite.
    pub fn condition_estimate(&self) -> f64 {
        let eig = self.eigenvalues();
        if eig.is_empty() {
            return 1.0;
        }
        let lo = eig.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo > 0.0 {
            hi / lo
        } else {
            f64::INFINITY
        }
    }

    /// Solve `G c = y` by Cholesky. If factorization fails, a diagonal jitter of
    /// `1e-12 · trace/m` is added and grown ×100 up to three times.
    pub fn fit_min_norm(&mut self) -> Result<KernelExpansion> {
        let m = self.node_set.len();
        let y = DVector::from_column_slice(&self.node_set.values);
        let scale = if m > 0 { self.gram.trace() / m as f64 } else { 0.0 };

        let mut jitter = 0.0;
        self.jitter_history.clear();
        for attempt in 0..=JITTER_ESCALATIONS + 1 {
            if attempt > 0 {
                jitter = if attempt == 1 {
                    JITTER_START * scale.abs()
                } else {
                    jitter * JITTER_GROWTH
                };
                self.jitter_history.push(jitter);
            }
            let shifted = &self.gram + DMatrix::identity(m, m) * jitter;
            if let Some(chol) = shifted.cholesky() {
                let c = chol.solve(&y);
                if c.iter().all(|x| x.is_finite()) {
                    let coefficients: Vec<f64> = c.iter().copied().collect();
                    self.jitter = jitter;
                    self.coefficients = Some(coefficients.clone());
                    return Ok(KernelExpansion {
                        dim: self.node_set.dim,
                        centers: self.node_set.nodes.clone(),
                        coefficients,
                        convention: self.convention,
                    });
                }
            }
        }
        Err(Error::Singular {
            condition: self.condition_estimate(),
            jitter_history: self.jitter_history.clone(),
        })
    }

    /// `max_i |(G c)_i - y_i|` after a solve.
    pub fn residual(&self) -> Option<f64> {
        let c = DVector::from_column_slice(self.coefficients.as_deref()?);
        let y = DVector::from_column_slice(&self.node_set.values);
        Some((&self.gram * c - y).amax())
    }
}
