//! Matching-polytope machinery: the doubled graph, the Gomory-Hu based
//! minimum-odd-cut check, and the separation oracle for P1.
//!
//! Membership of connection activations in the matching polytope reduces to
//! perfect-matching-polytope membership of a doubled graph: two copies of
//! the support joined by rung edges `(v, v')` weighted `1 - lambda_hat(
//! delta(v))`. In the doubled graph every vertex has weighted degree exactly
//! 1, so the only thing left to check is that every odd cut has weight at
//! least 1 — and by the Padberg-Rao reduction the minimum odd cut is always
//! induced by some edge of a Gomory-Hu tree.

use serde::Serialize;

use crate::capacity::FeasiblePoint;
use crate::error::{Error, Result};
use crate::flowgraph::{gomory_hu_tree, WeightedUndirectedGraph};
use crate::netmodel::{Network, UndirectedSupport};

/// Connection activations, aligned with [`UndirectedSupport::edges`].
pub type ConnectionActivations = Vec<f64>;

/// The doubled graph: base vertices `0..n`, mirror vertices `n..2n`, base
/// and mirror copies of every support edge, plus one rung per vertex.
#[derive(Debug, Clone)]
pub struct DoubledGraph {
    base_vertex_count: usize,
    pub graph: WeightedUndirectedGraph,
}

impl DoubledGraph {
    pub fn base_vertex_count(&self) -> usize {
        self.base_vertex_count
    }

    /// Mirror copy of a base vertex.
    pub fn mirror(&self, v: usize) -> usize {
        v + self.base_vertex_count
    }

    /// Build without the degree-bound precondition; negative rung weights
    /// are clamped to zero. Reference-oracle use only.
    pub fn build_unchecked(support: &UndirectedSupport, lh: &[f64]) -> DoubledGraph {
        build_doubled(support, lh)
    }
}

fn build_doubled(support: &UndirectedSupport, lh: &[f64]) -> DoubledGraph {
    let n = support.vertex_count();
    let mut edges = Vec::with_capacity(2 * support.edge_count() + n);
    for (e, &(i, j)) in support.edges().iter().enumerate() {
        let w = lh[e].max(0.0);
        edges.push((i, j, w));
        edges.push((i + n, j + n, w));
    }
    for v in 0..n {
        let deg: f64 = support.incident_edges(v).iter().map(|&e| lh[e]).sum();
        edges.push((v, v + n, (1.0 - deg).max(0.0)));
    }
    let graph = WeightedUndirectedGraph::new(2 * n, edges)
        .expect("doubled-graph edges are valid by construction");
    DoubledGraph { base_vertex_count: n, graph }
}

/// Doubled-graph construction. Requires `lambda_hat(delta(v)) <= 1 + eps`
/// at every vertex; tiny negative rung weights are clamped to zero.
pub fn double_graph(support: &UndirectedSupport, lh: &[f64], eps: f64) -> Result<DoubledGraph> {
    if lh.len() != support.edge_count() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} connection activations, got {}",
            support.edge_count(),
            lh.len()
        )));
    }
    for v in 0..support.vertex_count() {
        let deg: f64 = support.incident_edges(v).iter().map(|&e| lh[e]).sum();
        if deg > 1.0 + eps {
            return Err(Error::DegreeBoundExceeded { node: v, value: deg });
        }
    }
    Ok(build_doubled(support, lh))
}

/// Scan the Gomory-Hu tree of the doubled graph in construction order and
/// return the first odd component with cut weight below `1 - eps`, or
/// `None` when every odd cut weighs at least that much.
pub fn check_min_odd_cut(gt: &DoubledGraph, eps: f64) -> Result<Option<Vec<usize>>> {
    let tree = gomory_hu_tree(&gt.graph)?;
    for edge in tree.edges() {
        if edge.alpha < 1.0 - eps {
            let size = edge.side_u_bits().iter().filter(|&&b| b).count();
            if size % 2 == 1 {
                return Ok(Some(edge.side_containing(edge.u)));
            }
        }
    }
    Ok(None)
}

/// Global minimum over the tree-induced odd cuts of an even-order graph:
/// the minimum odd cut of the whole graph. Returns its value and one odd
/// side (the first minimizer in tree construction order).
pub fn min_odd_cut_tree(g: &WeightedUndirectedGraph) -> Result<(f64, Vec<usize>)> {
    if g.vertex_count() % 2 != 0 {
        return Err(Error::Precondition(format!(
            "minimum odd cut via tree scan needs an even vertex count, got {}",
            g.vertex_count()
        )));
    }
    let tree = gomory_hu_tree(g)?;
    let mut best: Option<(f64, Vec<usize>)> = None;
    for edge in tree.edges() {
        let size = edge.side_u_bits().iter().filter(|&&b| b).count();
        if size % 2 == 1 && best.as_ref().map_or(true, |(b, _)| edge.alpha < *b) {
            best = Some((edge.alpha, edge.side_containing(edge.u)));
        }
    }
    best.ok_or_else(|| {
        Error::Numerical("gomory-hu tree of an even-order graph has no odd split".into())
    })
}

/// A facet of the matching polytope over a fixed support graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingFacet {
    /// `-lambda_hat_e <= 0`.
    NonNeg { edge: usize },
    /// `sum_{e incident to v} lambda_hat_e <= 1`.
    Degree { vertex: usize },
    /// `sum_{e inside S} lambda_hat_e <= (|S| - 1) / 2`.
    OddSet { vertices: Vec<usize> },
}

impl MatchingFacet {
    /// The facet as a row `a . lambda_hat <= b` over the support's edges.
    pub fn row(&self, support: &UndirectedSupport) -> (Vec<f64>, f64) {
        let mut a = vec![0.0; support.edge_count()];
        match self {
            MatchingFacet::NonNeg { edge } => {
                a[*edge] = -1.0;
                (a, 0.0)
            }
            MatchingFacet::Degree { vertex } => {
                for e in support.incident_edges(*vertex) {
                    a[e] = 1.0;
                }
                (a, 1.0)
            }
            MatchingFacet::OddSet { vertices } => {
                let mut inside = vec![false; support.vertex_count()];
                for &v in vertices {
                    inside[v] = true;
                }
                for (e, &(i, j)) in support.edges().iter().enumerate() {
                    if inside[i] && inside[j] {
                        a[e] = 1.0;
                    }
                }
                (a, (vertices.len() as f64 - 1.0) / 2.0)
            }
        }
    }

    /// Violation `a . lambda_hat - b` of this row at a point.
    pub fn violation(&self, support: &UndirectedSupport, lh: &[f64]) -> f64 {
        let (a, b) = self.row(support);
        a.iter().zip(lh).map(|(x, y)| x * y).sum::<f64>() - b
    }
}

/// Map an odd violator of the doubled graph back to a base odd set: with
/// `W_a` the base part and `W_b` the mirror part (as base indices), the
/// violating set is `W_a \ W_b` when that difference is odd, else
/// `W_b \ W_a`.
fn map_violator_to_base(wf: &[usize], base_count: usize) -> Vec<usize> {
    let mut in_a = vec![false; base_count];
    let mut in_b = vec![false; base_count];
    for &v in wf {
        if v < base_count {
            in_a[v] = true;
        } else {
            in_b[v - base_count] = true;
        }
    }
    let a_minus_b: Vec<usize> = (0..base_count).filter(|&v| in_a[v] && !in_b[v]).collect();
    if a_minus_b.len() % 2 == 1 {
        a_minus_b
    } else {
        (0..base_count).filter(|&v| in_b[v] && !in_a[v]).collect()
    }
}

fn separate_odd_set(
    support: &UndirectedSupport,
    lh: &[f64],
    eps: f64,
) -> Result<Option<MatchingFacet>> {
    let doubled = double_graph(support, lh, eps)?;
    let Some(wf) = check_min_odd_cut(&doubled, eps)? else {
        return Ok(None);
    };
    let z = map_violator_to_base(&wf, support.vertex_count());
    let facet = MatchingFacet::OddSet { vertices: z.clone() };
    let violation = facet.violation(support, lh);
    // Cuts below 1 - eps in the doubled graph translate to base odd sets
    // violated by more than eps / 2; anything else is an internal fault.
    if z.len() < 3 || z.len() % 2 == 0 || violation <= eps / 2.0 {
        return Err(Error::Numerical(format!(
            "odd-cut mapping produced a non-violating set {z:?} (violation {violation:.3e})"
        )));
    }
    Ok(Some(facet))
}

/// Separation oracle for the matching polytope in connection-activation
/// space: nonnegativity rows, then degree rows, then the odd-set check.
/// Returns the first violated facet, or `None` for members.
pub fn m_polytope_separate(
    support: &UndirectedSupport,
    lh: &[f64],
    eps: f64,
) -> Result<Option<MatchingFacet>> {
    if lh.len() != support.edge_count() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} connection activations, got {}",
            support.edge_count(),
            lh.len()
        )));
    }
    for (e, &v) in lh.iter().enumerate() {
        if v < -eps {
            return Ok(Some(MatchingFacet::NonNeg { edge: e }));
        }
    }
    for v in 0..support.vertex_count() {
        let deg: f64 = support.incident_edges(v).iter().map(|&e| lh[e]).sum();
        if deg > 1.0 + eps {
            return Ok(Some(MatchingFacet::Degree { vertex: v }));
        }
    }
    separate_odd_set(support, lh, eps)
}

/// One violated P1 constraint together with the violation amount.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum ViolatedConstraint {
    NonNegFlow { from: usize, to: usize, violation: f64 },
    FlowCap { from: usize, to: usize, violation: f64 },
    FlowConservation { node: usize, violation: f64 },
    CouplingDef { i: usize, j: usize, violation: f64 },
    DegreeBound { node: usize, violation: f64 },
    OddSet { vertices: Vec<usize>, violation: f64 },
    NonNegLambda { from: usize, to: usize, violation: f64 },
    NonNegLambdaHat { i: usize, j: usize, violation: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleVerdict {
    Feasible,
    Violated(ViolatedConstraint),
}

/// Polynomial-time separation oracle for P1.
///
/// Checks the polynomial families directly in the fixed order (1d), (1g),
/// (1a), (1b), (1c), (1e) — links and edges scanned lexicographically —
/// and returns the first violation. When all pass, builds the doubled graph
/// from the point's connection activations and runs the minimum-odd-cut
/// check; a violating component maps back to an odd-set constraint.
pub fn separation_oracle(net: &Network, y: &FeasiblePoint, eps: f64) -> Result<OracleVerdict> {
    if !y.dimensions_match(net) {
        return Err(Error::DimensionMismatch(
            "feasible point is not dimensioned for this network".into(),
        ));
    }
    let support = net.support();
    let links = net.links();

    // (1d) lambda >= 0
    for (l, link) in links.iter().enumerate() {
        let v = y.link_activations[l];
        if v < -eps {
            return Ok(OracleVerdict::Violated(ViolatedConstraint::NonNegLambda {
                from: link.from,
                to: link.to,
                violation: -v,
            }));
        }
    }
    // (1g) lambda_hat >= 0
    for (e, &(i, j)) in support.edges().iter().enumerate() {
        let v = y.connection_activations[e];
        if v < -eps {
            return Ok(OracleVerdict::Violated(ViolatedConstraint::NonNegLambdaHat {
                i,
                j,
                violation: -v,
            }));
        }
    }
    // (1a) 0 <= F <= lambda * l
    for (l, link) in links.iter().enumerate() {
        let f = y.flows[l];
        if f < -eps {
            return Ok(OracleVerdict::Violated(ViolatedConstraint::NonNegFlow {
                from: link.from,
                to: link.to,
                violation: -f,
            }));
        }
        let cap = y.link_activations[l] * link.capacity;
        if f > cap + eps {
            return Ok(OracleVerdict::Violated(ViolatedConstraint::FlowCap {
                from: link.from,
                to: link.to,
                violation: f - cap,
            }));
        }
    }
    // (1b) conservation at relays
    for relay in 1..=net.n_relays() {
        let mut balance = 0.0;
        for (l, link) in links.iter().enumerate() {
            if link.from == relay {
                balance += y.flows[l];
            } else if link.to == relay {
                balance -= y.flows[l];
            }
        }
        if balance.abs() > eps {
            return Ok(OracleVerdict::Violated(ViolatedConstraint::FlowConservation {
                node: relay,
                violation: balance.abs(),
            }));
        }
    }
    // (1c) lambda_hat = lambda_fwd + lambda_rev
    for (e, &(i, j)) in support.edges().iter().enumerate() {
        let fwd = net.link_index(i, j).map_or(0.0, |l| y.link_activations[l]);
        let rev = net.link_index(j, i).map_or(0.0, |l| y.link_activations[l]);
        let gap = y.connection_activations[e] - fwd - rev;
        if gap.abs() > eps {
            return Ok(OracleVerdict::Violated(ViolatedConstraint::CouplingDef {
                i,
                j,
                violation: gap.abs(),
            }));
        }
    }
    // (1e) degree bounds
    for v in 0..net.node_count() {
        let deg: f64 = support
            .incident_edges(v)
            .iter()
            .map(|&e| y.connection_activations[e])
            .sum();
        if deg > 1.0 + eps {
            return Ok(OracleVerdict::Violated(ViolatedConstraint::DegreeBound {
                node: v,
                violation: deg - 1.0,
            }));
        }
    }
    // (1f) odd sets via the doubled graph
    match separate_odd_set(&support, &y.connection_activations, eps)? {
        None => Ok(OracleVerdict::Feasible),
        Some(facet) => {
            let violation = facet.violation(&support, &y.connection_activations);
            match facet {
                MatchingFacet::OddSet { vertices } => Ok(OracleVerdict::Violated(
                    ViolatedConstraint::OddSet { vertices, violation },
                )),
                other => Err(Error::Numerical(format!(
                    "odd-set separation returned a non-odd-set facet {other:?}"
                ))),
            }
        }
    }
}
