//! From an optimal P1 point to an explicit schedule.
//!
//! The optimal connection activations lie in the matching polytope of the
//! support graph, so they decompose into a convex combination of at most
//! `|E| + 1` matchings: repeatedly pick a vertex with the optimization
//! oracle, shoot a ray from it through the current point to the polytope
//! boundary, record the facet that stopped the ray, and restrict the next
//! vertex search to all facets seen so far. Each matching then becomes a
//! network state once its edges are oriented; a single splitting pass per
//! support edge makes the per-direction activation times match the LP's
//! link activations exactly.

use serde_json::json;

use crate::blossom::max_weight_matching_raw;
use crate::capacity::CapacitySolution;
use crate::error::{Error, Result};
use crate::flowgraph::max_flow_directed;
use crate::matchpoly::{m_polytope_separate, MatchingFacet};
use crate::netmodel::{Network, UndirectedSupport};
use crate::DEFAULT_TOLERANCE;

/// Activations below this are pruned from final schedules.
const PRUNE_ACTIVATION: f64 = 1e-12;
/// Connection activations below this are dropped before decomposition.
const DROP_EDGE_ACTIVATION: f64 = 1e-10;

/// A matching over a support graph, stored as sorted edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    pub fn new(support: &UndirectedSupport, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let mut used = vec![false; support.vertex_count()];
        for &e in &edges {
            let (i, j) = support.edges()[e];
            if used[i] || used[j] {
                return Err(Error::Precondition(format!(
                    "edges do not form a matching: vertex reuse at edge ({i},{j})"
                )));
            }
            used[i] = true;
            used[j] = true;
        }
        Ok(Matching { edges })
    }

    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    /// Selected support-edge indices, sorted.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// 0/1 indicator vector over the support's edges.
    pub fn indicator(&self, edge_count: usize) -> Vec<f64> {
        let mut x = vec![0.0; edge_count];
        for &e in &self.edges {
            x[e] = 1.0;
        }
        x
    }

    pub fn weight(&self, weights: &[f64]) -> f64 {
        self.edges.iter().map(|&e| weights[e]).sum()
    }
}

/// Maximum-weight matching with a deterministic tie-break: after the
/// blossom optimum fixes the achievable weight, edges are committed
/// greedily in index order whenever keeping them still reaches that weight,
/// so the lexicographically earliest optimal edge set wins.
pub fn max_weight_matching(support: &UndirectedSupport, weights: &[f64]) -> Matching {
    assert_eq!(weights.len(), support.edge_count(), "one weight per support edge");
    let n = support.vertex_count();
    let best = constrained_best_weight(support, weights, &[]);
    let tol = 1e-9 * (1.0 + best.abs());

    let mut forced: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    let mut forced_weight = 0.0;
    for e in 0..support.edge_count() {
        let (i, j) = support.edges()[e];
        if used[i] || used[j] {
            continue;
        }
        let mut blocked = used.clone();
        blocked[i] = true;
        blocked[j] = true;
        let rest = constrained_best_weight(support, weights, &blocked);
        if forced_weight + weights[e] + rest >= best - tol {
            forced.push(e);
            forced_weight += weights[e];
            used[i] = true;
            used[j] = true;
        }
    }
    Matching { edges: forced }
}

/// Best matching weight over edges avoiding the blocked vertices.
fn constrained_best_weight(
    support: &UndirectedSupport,
    weights: &[f64],
    blocked: &[bool],
) -> f64 {
    let edges: Vec<(usize, usize, f64)> = support
        .edges()
        .iter()
        .enumerate()
        .filter(|&(_, &(i, j))| blocked.is_empty() || (!blocked[i] && !blocked[j]))
        .map(|(e, &(i, j))| (i, j, weights[e]))
        .collect();
    if edges.is_empty() {
        return 0.0;
    }
    let mate = max_weight_matching_raw(support.vertex_count(), &edges);
    edges
        .iter()
        .filter(|&&(i, j, _)| mate[i] == j)
        .map(|&(_, _, w)| w)
        .sum()
}

/// Largest `t >= 1` with `base + t * (through - base)` still inside the
/// matching polytope. Nonnegativity and degree crossings are intersected
/// analytically; odd-set facets are then discovered by evaluating the
/// separation oracle at the current bound and clamping to each returned
/// row's exact crossing until the bound point is accepted. Returns the
/// boundary point, the parameter, and the facet tight there.
pub fn ray_shoot(
    support: &UndirectedSupport,
    base: &[f64],
    through: &[f64],
    eps: f64,
) -> Result<(Vec<f64>, f64, MatchingFacet)> {
    let ecount = support.edge_count();
    assert_eq!(base.len(), ecount);
    assert_eq!(through.len(), ecount);
    let dir: Vec<f64> = through.iter().zip(base).map(|(y, m)| y - m).collect();
    if dir.iter().all(|d| d.abs() <= 1e-14) {
        return Err(Error::Precondition("ray through == base".into()));
    }

    // Exact first bound from the nonnegativity and degree facets.
    //
    // A row whose slope along the ray is at noise level does not bound it:
    // it is a facet the whole ray rides (both endpoints tight up to
    // drift), so it is skipped. A substantive-slope row crossing just
    // below 1 is a boundary start and clamps to 1. A crossing materially
    // below 1 means the through point was never feasible.
    let ride_tol = 1e-9;
    let hard_viol = 1e-6;
    let mut t = f64::INFINITY;
    let mut facet: Option<MatchingFacet> = None;
    let mut consider = |slope: f64, viol_at_through: f64, row: MatchingFacet| -> Result<()> {
        if slope <= ride_tol {
            return Ok(());
        }
        if viol_at_through > hard_viol {
            return Err(Error::Precondition(format!(
                "ray through-point violates {row:?} by {viol_at_through}"
            )));
        }
        // viol(x(t)) = viol(through) + (t - 1) * slope; crossing at
        // t = 1 - viol/slope, clamped to the feasible start.
        let cross = (1.0 - viol_at_through / slope).max(1.0);
        if cross < t {
            t = cross;
            facet = Some(row);
        }
        Ok(())
    };
    for e in 0..ecount {
        consider(-dir[e], -through[e], MatchingFacet::NonNeg { edge: e })?;
    }
    for v in 0..support.vertex_count() {
        let incident = support.incident_edges(v);
        let dm: f64 = incident.iter().map(|&e| base[e]).sum();
        let dd: f64 = incident.iter().map(|&e| dir[e]).sum();
        consider(dd, dm + dd - 1.0, MatchingFacet::Degree { vertex: v })?;
    }
    let Some(mut facet) = facet else {
        return Err(Error::Numerical(
            "ray never leaves the polytope through a nonnegativity or degree facet".into(),
        ));
    };

    // An odd-set facet can only cut the bound further down. The candidate
    // point x(t) already satisfies nonnegativity and degree rows, so any
    // violated row the oracle reports there is an odd set strictly crossed
    // below t; clamp and repeat until x(t) is accepted.
    for _round in 0..(4 * (ecount + support.vertex_count()) + 16) {
        let candidate = point_at(base, &dir, t);
        let Some(hit) = m_polytope_separate(support, &candidate, eps)? else {
            return Ok((candidate, t, facet));
        };
        let (a, b) = hit.row(support);
        let denom: f64 = a.iter().zip(&dir).map(|(x, y)| x * y).sum();
        if denom <= 1e-14 {
            // Not crossed by the ray. Within tolerance this is a facet the
            // whole ray rides; anything larger means the start point was
            // infeasible.
            let viol = hit.violation(support, &candidate);
            if viol <= 2.0 * eps {
                return Ok((candidate, t, hit));
            }
            return Err(Error::Numerical(format!(
                "oracle inconsistency: facet {hit:?} violated by {viol} at the bound point \
                 but not crossed by the ray (the ray start must have been infeasible)"
            )));
        }
        let base_val: f64 = a.iter().zip(base).map(|(x, y)| x * y).sum();
        let cross = (b - base_val) / denom;
        if cross >= t - 1e-12 * t.max(1.0) {
            return Err(Error::Numerical(format!(
                "oracle returned facet {hit:?} violated at t = {t} yet crossing at {cross} >= t"
            )));
        }
        t = cross.max(1.0);
        facet = hit;
    }
    Err(Error::Numerical("ray shooting did not converge".into()))
}

fn point_at(base: &[f64], dir: &[f64], t: f64) -> Vec<f64> {
    base.iter().zip(dir).map(|(m, d)| m + t * d).collect()
}

/// Is this point (numerically) a matching indicator vector?
fn as_vertex(support: &UndirectedSupport, x: &[f64]) -> Option<Matching> {
    let mut edges = Vec::new();
    for (e, &v) in x.iter().enumerate() {
        if (v - 1.0).abs() <= 1e-8 {
            edges.push(e);
        } else if v.abs() > 1e-8 {
            return None;
        }
    }
    Matching::new(support, edges).ok()
}

/// Decompose feasible connection activations into a convex combination of
/// at most `|E| + 1` matchings (vertices of the matching polytope).
pub fn caratheodory_decompose(
    support: &UndirectedSupport,
    lh: &[f64],
) -> Result<Vec<(f64, Matching)>> {
    let eps = DEFAULT_TOLERANCE;
    if let Some(facet) = m_polytope_separate(support, lh, eps)? {
        return Err(Error::Precondition(format!(
            "connection activations are outside the matching polytope: violated {facet:?}"
        )));
    }
    let ecount = support.edge_count();
    let mut result: Vec<(f64, Matching)> = Vec::new();
    let mut y: Vec<f64> = lh.to_vec();
    let mut remaining = 1.0; // product of (1 - theta_j) so far
    let all_ones = vec![1.0; ecount]; // c_0
    let mut facet_sum: Vec<f64> = vec![0.0; ecount];
    let mut have_facet = false;

    for _i in 0..=ecount {
        if remaining <= 1e-9 {
            // The unassigned mass cannot move the reconstruction by more
            // than itself; absorb it into the empty matching.
            result.push((remaining, Matching::empty()));
            return finish_decomposition(support, lh, result);
        }
        if let Some(vertex) = as_vertex(support, &y) {
            result.push((remaining, vertex));
            return finish_decomposition(support, lh, result);
        }
        let c = if have_facet { &facet_sum } else { &all_ones };
        let m = max_weight_matching(support, c);
        let mvec = m.indicator(ecount);
        if y.iter().zip(&mvec).all(|(a, b)| (a - b).abs() <= 1e-12) {
            result.push((remaining, m));
            return finish_decomposition(support, lh, result);
        }
        let (mut y_next, t, facet) = ray_shoot(support, &mvec, &y, eps)?;
        // Snap floating-point dust: a coordinate that landed on (or drifted
        // a hair past) its nonnegativity facet must read exactly zero, or
        // later rays amplify the dust by their parameter.
        for v in y_next.iter_mut() {
            if v.abs() <= 1e-12 {
                *v = 0.0;
            }
        }
        let theta = (t - 1.0) / t;
        if theta > 1e-15 {
            result.push((theta * remaining, m));
        }
        remaining /= t;
        y = y_next;
        let (a, _) = facet.row(support);
        for (s, v) in facet_sum.iter_mut().zip(a) {
            *s += v;
        }
        have_facet = true;
    }
    Err(Error::Numerical(
        "caratheodory decomposition did not reach a vertex within |E|+1 iterations".into(),
    ))
}

fn finish_decomposition(
    support: &UndirectedSupport,
    lh: &[f64],
    result: Vec<(f64, Matching)>,
) -> Result<Vec<(f64, Matching)>> {
    let ecount = support.edge_count();
    let mut recon = vec![0.0; ecount];
    let mut total = 0.0;
    for (phi, m) in &result {
        total += phi;
        for &e in m.edges() {
            recon[e] += phi;
        }
    }
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::Numerical(format!(
            "caratheodory weights sum to {total}, not 1"
        )));
    }
    for e in 0..ecount {
        if (recon[e] - lh[e]).abs() > 1e-8 {
            return Err(Error::Numerical(format!(
                "caratheodory reconstruction off by {} at edge {e}",
                (recon[e] - lh[e]).abs()
            )));
        }
    }
    Ok(result)
}

/// One network state: a set of directed links, no two sharing a node, with
/// the source never receiving and the destination never transmitting.
/// Entry `(j, i)` of the matrix view is 1 exactly when link `i -> j` is
/// active.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateMatrix {
    node_count: usize,
    links: Vec<(usize, usize)>,
}

impl StateMatrix {
    pub fn new(node_count: usize, mut links: Vec<(usize, usize)>) -> Result<Self> {
        links.sort_unstable();
        links.dedup();
        let mut touched = vec![false; node_count];
        for &(from, to) in &links {
            if from >= node_count || to >= node_count {
                return Err(Error::NodeOutOfRange { from, to, max_node: node_count - 1 });
            }
            if from == to {
                return Err(Error::SelfLoop { node: from });
            }
            if to == 0 {
                return Err(Error::LinkIntoSource { from, to });
            }
            if from == node_count - 1 {
                return Err(Error::LinkOutOfDestination { from, to });
            }
            // Half-duplex single-beam: each node appears in at most one
            // active link, in either role.
            if touched[from] || touched[to] {
                return Err(Error::Precondition(format!(
                    "state is not a directed matching: node reused by link {from}->{to}"
                )));
            }
            touched[from] = true;
            touched[to] = true;
        }
        Ok(StateMatrix { node_count, links })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Active links `(from, to)`, sorted.
    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    pub fn activates(&self, from: usize, to: usize) -> bool {
        self.links.binary_search(&(from, to)).is_ok()
    }

    /// Dense 0/1 matrix with entry `(j, i) = 1` for active link `i -> j`.
    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.node_count]; self.node_count];
        for &(from, to) in &self.links {
            m[to][from] = 1;
        }
        m
    }
}

/// A schedule: network states with activation fractions summing to <= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub states: Vec<(StateMatrix, f64)>,
}

impl Schedule {
    pub fn total_activation(&self) -> f64 {
        self.states.iter().map(|(_, phi)| phi).sum()
    }

    /// JSON rendering: states sorted by descending fraction, then by link
    /// list.
    pub fn to_json(&self) -> serde_json::Value {
        let mut entries: Vec<(&StateMatrix, f64)> =
            self.states.iter().map(|(s, phi)| (s, *phi)).collect();
        entries.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap()
                .then_with(|| a.0.links().cmp(b.0.links()))
        });
        let states: Vec<_> = entries
            .iter()
            .map(|(s, phi)| {
                json!({
                    "links": s.links().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                    "fraction": phi,
                })
            })
            .collect();
        json!({ "states": states, "total_activation": self.total_activation() })
    }
}

/// Orient a matching into a network state with the default direction
/// `i -> j` for every selected edge `(i, j)`, `i < j`.
pub fn matching_to_state_matrix(
    m: &Matching,
    support: &UndirectedSupport,
    node_count: usize,
) -> StateMatrix {
    let links: Vec<(usize, usize)> = m.edges().iter().map(|&e| support.edges()[e]).collect();
    StateMatrix::new(node_count, links)
        .expect("a matching with default directions is a valid state")
}

/// Per-edge directed activation targets: `forward` is the time for
/// `i -> j` (the default direction) and `reverse` for `j -> i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedActivation {
    pub forward: f64,
    pub reverse: f64,
}

/// Split and flip weighted states until, for every support edge, the time
/// spent in each direction matches the targets. Scans support edges in
/// order; within an edge, accumulates state activations until the forward
/// target is met, splitting the state that crosses it and flipping the
/// remainder to the reverse direction.
pub fn directionalize(
    support: &UndirectedSupport,
    weighted: &[(f64, Matching)],
    targets: &[DirectedActivation],
    node_count: usize,
) -> Result<Schedule> {
    assert_eq!(targets.len(), support.edge_count());
    let split_tol = 1e-10;

    for (e, &(i, j)) in support.edges().iter().enumerate() {
        let total: f64 = weighted
            .iter()
            .filter(|(_, m)| m.contains(e))
            .map(|(phi, _)| phi)
            .sum();
        let want = targets[e].forward + targets[e].reverse;
        if (total - want).abs() > 1e-8 {
            return Err(Error::Precondition(format!(
                "activation mismatch at edge ({i},{j}): matchings give {total}, \
                 lambda gives {want}"
            )));
        }
    }

    let mut states: Vec<(f64, StateMatrix)> = weighted
        .iter()
        .map(|(phi, m)| (*phi, matching_to_state_matrix(m, support, node_count)))
        .collect();

    for (e, &(i, j)) in support.edges().iter().enumerate() {
        if targets[e].reverse <= split_tol {
            // Nothing to flip; every state keeps the default direction.
            continue;
        }
        let target = targets[e].forward;
        let mut acc = 0.0;
        let mut k = 0;
        while k < states.len() {
            if !states[k].1.activates(i, j) {
                k += 1;
                continue;
            }
            let phi = states[k].0;
            if acc + phi < target - split_tol {
                acc += phi;
                k += 1;
            } else if (acc + phi - target).abs() <= split_tol {
                flip_remaining(&mut states, k + 1, i, j)?;
                break;
            } else {
                // Split state k: keep `target - acc` forward, give the rest
                // to a reversed copy appended at the end.
                let keep = target - acc;
                let spill = acc + phi - target;
                states[k].0 = keep.max(0.0);
                let flipped = flip_state(&states[k].1, i, j)?;
                flip_remaining(&mut states, k + 1, i, j)?;
                states.push((spill, flipped));
                break;
            }
        }
    }

    let mut kept: Vec<(StateMatrix, f64)> = states
        .into_iter()
        .filter(|(phi, s)| *phi > PRUNE_ACTIVATION && !s.links().is_empty())
        .map(|(phi, s)| (s, phi))
        .collect();

    // Conservation re-check after pruning.
    for (e, &(i, j)) in support.edges().iter().enumerate() {
        let fwd: f64 = kept
            .iter()
            .filter(|(s, _)| s.activates(i, j))
            .map(|(_, phi)| phi)
            .sum();
        let rev: f64 = kept
            .iter()
            .filter(|(s, _)| s.activates(j, i))
            .map(|(_, phi)| phi)
            .sum();
        if (fwd - targets[e].forward).abs() > 1e-8 || (rev - targets[e].reverse).abs() > 1e-8 {
            return Err(Error::Numerical(format!(
                "per-direction totals drifted at edge ({i},{j}): \
                 {fwd}/{rev} vs {}/{}",
                targets[e].forward, targets[e].reverse
            )));
        }
    }
    kept.shrink_to_fit();
    Ok(Schedule { states: kept })
}

fn flip_state(state: &StateMatrix, i: usize, j: usize) -> Result<StateMatrix> {
    let links: Vec<(usize, usize)> = state
        .links()
        .iter()
        .map(|&(a, b)| if (a, b) == (i, j) { (j, i) } else { (a, b) })
        .collect();
    StateMatrix::new(state.node_count(), links)
}

fn flip_remaining(states: &mut [(f64, StateMatrix)], from: usize, i: usize, j: usize) -> Result<()> {
    for k in from..states.len() {
        if states[k].1.activates(i, j) {
            states[k].1 = flip_state(&states[k].1, i, j)?;
        }
    }
    Ok(())
}

/// Effective per-link activation totals of a schedule, and the rate it
/// achieves: the s-t min cut of the network with capacities scaled by the
/// totals.
pub fn verify_schedule(net: &Network, schedule: &Schedule) -> Result<(Vec<f64>, f64)> {
    let mut totals = vec![0.0; net.links().len()];
    for (state, phi) in &schedule.states {
        for &(from, to) in state.links() {
            let Some(l) = net.link_index(from, to) else {
                return Err(Error::ScheduleInvalidLink { from, to });
            };
            totals[l] += phi;
        }
    }
    let arcs: Vec<(usize, usize, f64)> = net
        .links()
        .iter()
        .enumerate()
        .map(|(l, link)| (link.from, link.to, totals[l] * link.capacity))
        .collect();
    let (rate, _) = max_flow_directed(net.node_count(), &arcs, net.source(), net.destination())?;
    Ok((totals, rate))
}

/// Full pipeline from an optimal P1 solution to a schedule: drop inactive
/// support edges, decompose the connection activations, orient the
/// matchings against the solution's link activations.
pub fn schedule_from_solution(net: &Network, sol: &CapacitySolution) -> Result<Schedule> {
    let support = net.support();
    let mut kept_edges = Vec::new();
    let mut lh = Vec::new();
    let mut targets = Vec::new();
    for (e, &(i, j)) in support.edges().iter().enumerate() {
        let v = sol.point.connection_activations[e];
        if v > DROP_EDGE_ACTIVATION {
            kept_edges.push((i, j));
            lh.push(v);
            let forward = net.link_index(i, j).map_or(0.0, |l| sol.point.link_activations[l]);
            let reverse = net.link_index(j, i).map_or(0.0, |l| sol.point.link_activations[l]);
            targets.push(DirectedActivation { forward, reverse });
        }
    }
    if kept_edges.is_empty() {
        return Ok(Schedule { states: Vec::new() });
    }
    let sub = UndirectedSupport::new(net.node_count(), kept_edges);
    // Rescale so forward + reverse matches the kept activation exactly;
    // the LP already guarantees this within tolerance.
    let decomp = caratheodory_decompose(&sub, &lh)?;
    directionalize(&sub, &decomp, &targets, net.node_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(n: usize, edges: &[(usize, usize)]) -> UndirectedSupport {
        UndirectedSupport::new(n, edges.iter().copied())
    }

    fn triangle() -> UndirectedSupport {
        support(3, &[(0, 1), (0, 2), (1, 2)])
    }

    #[test]
    fn mwm_all_negative_is_empty() {
        let m = max_weight_matching(&triangle(), &[-1.0, -2.0, -0.5]);
        assert_eq!(m.edges(), &[] as &[usize]);
    }

    #[test]
    fn mwm_triangle_picks_heaviest() {
        let m = max_weight_matching(&triangle(), &[3.0, 2.0, 2.0]);
        assert_eq!(m.edges(), &[0]);
    }

    #[test]
    fn mwm_tie_break_prefers_low_index() {
        // Both single edges of the path weigh 1; lexicographic preference
        // commits edge 0.
        let s = support(3, &[(0, 1), (1, 2)]);
        let m = max_weight_matching(&s, &[1.0, 1.0]);
        assert_eq!(m.edges(), &[0]);
    }

    #[test]
    fn mwm_matches_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(2..=8);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen::<f64>() < 0.6 {
                        edges.push((i, j));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let s = support(n, &edges);
            let w: Vec<f64> = (0..s.edge_count()).map(|_| rng.gen_range(-3.0..6.0)).collect();
            let got = max_weight_matching(&s, &w).weight(&w);
            let want = crate::refcheck::enumerate_matchings(&s)
                .unwrap()
                .iter()
                .map(|m| m.weight(&w))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
        }
    }

    #[test]
    fn ray_shoot_hits_nonneg_facet_exactly() {
        // Path 0-1-2, base = matching {(0,1)}, through y = (0.5, 0.5):
        // ray leaves through the nonnegativity facet of edge 0 at t = 2.
        let s = support(3, &[(0, 1), (1, 2)]);
        let (y1, t, facet) = ray_shoot(&s, &[1.0, 0.0], &[0.5, 0.5], 1e-9).unwrap();
        assert!((t - 2.0).abs() < 1e-9);
        assert_eq!(facet, MatchingFacet::NonNeg { edge: 0 });
        assert!((y1[0] - 0.0).abs() < 1e-9 && (y1[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ray_shoot_boundary_start_returns_t1() {
        // y sits on the nonnegativity facet of edge 0, which the ray
        // crosses transversally, so the maximizer is y itself.
        let s = support(3, &[(0, 1), (1, 2)]);
        let (y1, t, facet) = ray_shoot(&s, &[1.0, 0.0], &[0.0, 0.5], 1e-9).unwrap();
        assert!((t - 1.0).abs() < 1e-12, "t = {t}");
        assert_eq!(facet, MatchingFacet::NonNeg { edge: 0 });
        assert!((y1[0] - 0.0).abs() < 1e-12 && (y1[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ray_shoot_finds_odd_set_facet() {
        // From the empty matching through the scaled triangle point, the
        // first crossing is the odd-set facet at t = (1/0.9).
        let s = triangle();
        let (_, t, facet) = ray_shoot(&s, &[0.0, 0.0, 0.0], &[0.3, 0.3, 0.3], 1e-9).unwrap();
        assert_eq!(facet, MatchingFacet::OddSet { vertices: vec![0, 1, 2] });
        assert!((t - 1.0 / 0.9).abs() < 1e-9, "t = {t}");
    }

    #[test]
    fn decompose_vertex_is_identity() {
        let s = support(3, &[(0, 1), (1, 2)]);
        let out = caratheodory_decompose(&s, &[1.0, 0.0]).unwrap();
        assert_eq!(out.len(), 1);
        assert!((out[0].0 - 1.0).abs() < 1e-12);
        assert_eq!(out[0].1.edges(), &[0]);
    }

    #[test]
    fn decompose_path_halves() {
        let s = support(3, &[(0, 1), (1, 2)]);
        let out = caratheodory_decompose(&s, &[0.5, 0.5]).unwrap();
        assert_eq!(out.len(), 2);
        let mut weights: Vec<(Vec<usize>, f64)> =
            out.iter().map(|(phi, m)| (m.edges().to_vec(), *phi)).collect();
        weights.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(weights[0].0, vec![0]);
        assert!((weights[0].1 - 0.5).abs() < 1e-9);
        assert_eq!(weights[1].0, vec![1]);
        assert!((weights[1].1 - 0.5).abs() < 1e-9);
    }

    #[test]
    fn decompose_single_edge_with_slack() {
        // 0.3 of a single edge: 0.3 on the edge matching, 0.7 on empty.
        let s = support(2, &[(0, 1)]);
        let out = caratheodory_decompose(&s, &[0.3]).unwrap();
        assert_eq!(out.len(), 2);
        assert!((out[0].0 - 0.3).abs() < 1e-9);
        assert_eq!(out[0].1.edges(), &[0]);
        assert!((out[1].0 - 0.7).abs() < 1e-9);
        assert!(out[1].1.edges().is_empty());
    }

    #[test]
    fn decompose_rejects_infeasible_point() {
        assert!(matches!(
            caratheodory_decompose(&triangle(), &[0.5, 0.5, 0.5]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn state_matrix_matches_worked_example() {
        // Support {(0,1),(0,2),(1,2),(1,3),(2,3)} with matching
        // {(0,1),(2,3)}: matrix entries (1,0) and (3,2).
        let s = support(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let m = Matching::new(&s, vec![0, 4]).unwrap();
        let sm = matching_to_state_matrix(&m, &s, 4);
        let mat = sm.to_matrix();
        assert_eq!(mat[1][0], 1);
        assert_eq!(mat[3][2], 1);
        let ones: usize = mat.iter().flatten().map(|&x| x as usize).sum();
        assert_eq!(ones, 2);
    }

    #[test]
    fn empty_matching_gives_zero_matrix() {
        let s = triangle();
        let sm = matching_to_state_matrix(&Matching::empty(), &s, 3);
        assert!(sm.links().is_empty());
        assert!(sm.to_matrix().iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn state_matrix_rejects_role_violations() {
        assert!(StateMatrix::new(3, vec![(1, 0)]).is_err()); // into source
        assert!(StateMatrix::new(3, vec![(2, 1)]).is_err()); // out of destination
        assert!(StateMatrix::new(4, vec![(0, 1), (1, 2)]).is_err()); // HD violation
    }

    #[test]
    fn directionalize_single_state_unchanged() {
        let s = support(2, &[(0, 1)]);
        let m = Matching::new(&s, vec![0]).unwrap();
        let sched = directionalize(
            &s,
            &[(1.0, m)],
            &[DirectedActivation { forward: 1.0, reverse: 0.0 }],
            2,
        )
        .unwrap();
        assert_eq!(sched.states.len(), 1);
        assert_eq!(sched.states[0].0.links(), &[(0, 1)]);
        assert!((sched.states[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn directionalize_splits_one_state() {
        // One full-time matching on the interior edge (1,2), split 0.4/0.6.
        let s = support(4, &[(1, 2)]);
        let m = Matching::new(&s, vec![0]).unwrap();
        let sched = directionalize(
            &s,
            &[(1.0, m)],
            &[DirectedActivation { forward: 0.4, reverse: 0.6 }],
            4,
        )
        .unwrap();
        assert_eq!(sched.states.len(), 2);
        let fwd: f64 = sched
            .states
            .iter()
            .filter(|(st, _)| st.activates(1, 2))
            .map(|(_, phi)| phi)
            .sum();
        let rev: f64 = sched
            .states
            .iter()
            .filter(|(st, _)| st.activates(2, 1))
            .map(|(_, phi)| phi)
            .sum();
        assert!((fwd - 0.4).abs() < 1e-12);
        assert!((rev - 0.6).abs() < 1e-12);
    }

    #[test]
    fn directionalize_rejects_mismatched_targets() {
        let s = support(2, &[(0, 1)]);
        let m = Matching::new(&s, vec![0]).unwrap();
        assert!(matches!(
            directionalize(
                &s,
                &[(1.0, m)],
                &[DirectedActivation { forward: 0.2, reverse: 0.2 }],
                2,
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn verify_empty_schedule_is_zero() {
        let net = crate::netmodel::generate_random_network(1, 1.0, 3);
        let (totals, rate) = verify_schedule(&net, &Schedule { states: Vec::new() }).unwrap();
        assert!(totals.iter().all(|&t| t == 0.0));
        assert_eq!(rate, 0.0);
    }

    #[test]
    fn verify_single_link_full_time() {
        let net = crate::netmodel::Network::new(
            0,
            vec![crate::netmodel::Link { from: 0, to: 1, capacity: 7.0 }],
        )
        .unwrap();
        let state = StateMatrix::new(2, vec![(0, 1)]).unwrap();
        let (_, rate) = verify_schedule(&net, &Schedule { states: vec![(state, 1.0)] }).unwrap();
        assert_eq!(rate, 7.0);
    }

    #[test]
    fn verify_rejects_nonexistent_link() {
        let net = crate::netmodel::Network::new(
            1,
            vec![crate::netmodel::Link { from: 0, to: 2, capacity: 1.0 }],
        )
        .unwrap();
        let state = StateMatrix::new(3, vec![(0, 1)]).unwrap();
        assert!(matches!(
            verify_schedule(&net, &Schedule { states: vec![(state, 1.0)] }),
            Err(Error::ScheduleInvalidLink { from: 0, to: 1 })
        ));
    }

    #[test]
    fn schedule_json_sorted_by_fraction() {
        let s1 = StateMatrix::new(3, vec![(0, 1)]).unwrap();
        let s2 = StateMatrix::new(3, vec![(1, 2)]).unwrap();
        let sched = Schedule { states: vec![(s1, 0.25), (s2, 0.75)] };
        let json = sched.to_json();
        assert_eq!(json["states"][0]["fraction"], 0.75);
        assert_eq!(json["states"][1]["fraction"], 0.25);
    }
}
