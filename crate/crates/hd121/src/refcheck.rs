//! Exponential-time reference oracles certifying the fast path on small
//! instances: state enumeration, the exponential scheduling LP, odd-cut and
//! matching enumeration, brute-force polytope membership.
//!
//! Size guards are hard errors, never silent truncation.

use crate::capacity::FeasiblePoint;
use crate::error::{Error, Result};
use crate::flowgraph::WeightedUndirectedGraph;
use crate::matchpoly::MatchingFacet;
use crate::netmodel::{Network, UndirectedSupport};
use crate::scheduler::Matching;
use crate::simplex::{KernelRow, RowSense, Tableau};

/// A network state: directed links, no two sharing a node, source never
/// receiving, destination never transmitting.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NetworkState {
    pub links: Vec<(usize, usize)>,
}

fn guard(what: &str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::GuardExceeded { what: what.into(), limit, actual });
    }
    Ok(())
}

/// All matchings of a support graph, in a deterministic order (sorted by
/// their edge-index lists), the empty matching first.
pub fn enumerate_matchings(support: &UndirectedSupport) -> Result<Vec<Matching>> {
    guard("enumerate_matchings vertex count", support.vertex_count(), 10)?;
    Ok(all_matchings(support))
}

fn all_matchings(support: &UndirectedSupport) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut used = vec![false; support.vertex_count()];
    let mut picked = Vec::new();
    fn rec(
        support: &UndirectedSupport,
        e: usize,
        used: &mut Vec<bool>,
        picked: &mut Vec<usize>,
        out: &mut Vec<Matching>,
    ) {
        if e == support.edge_count() {
            out.push(Matching::new(support, picked.clone()).expect("picked edges are disjoint"));
            return;
        }
        rec(support, e + 1, used, picked, out);
        let (i, j) = support.edges()[e];
        if !used[i] && !used[j] {
            used[i] = true;
            used[j] = true;
            picked.push(e);
            rec(support, e + 1, used, picked, out);
            picked.pop();
            used[i] = false;
            used[j] = false;
        }
    }
    rec(support, 0, &mut used, &mut picked, &mut out);
    out.sort_by(|a, b| a.edges().cmp(b.edges()));
    out
}

/// All network states: every matching of the undirected support expanded
/// into every orientation backed by an existing directed link. Includes the
/// empty state; deterministic order.
pub fn enumerate_states(net: &Network) -> Result<Vec<NetworkState>> {
    guard("enumerate_states node count", net.node_count(), 12)?;
    let support = net.support();
    let matchings = all_matchings(&support);
    let mut states = Vec::new();
    for m in &matchings {
        // Directions available per selected edge.
        let options: Vec<Vec<(usize, usize)>> = m
            .edges()
            .iter()
            .map(|&e| {
                let (i, j) = support.edges()[e];
                let mut dirs = Vec::new();
                if net.link_index(i, j).is_some() {
                    dirs.push((i, j));
                }
                if net.link_index(j, i).is_some() {
                    dirs.push((j, i));
                }
                dirs
            })
            .collect();
        let mut combo: Vec<(usize, usize)> = Vec::new();
        fn expand(
            options: &[Vec<(usize, usize)>],
            k: usize,
            combo: &mut Vec<(usize, usize)>,
            states: &mut Vec<NetworkState>,
        ) {
            if k == options.len() {
                let mut links = combo.clone();
                links.sort_unstable();
                states.push(NetworkState { links });
                return;
            }
            for &dir in &options[k] {
                combo.push(dir);
                expand(options, k + 1, combo, states);
                combo.pop();
            }
        }
        expand(&options, 0, &mut combo, &mut states);
    }
    states.sort();
    states.dedup();
    Ok(states)
}

/// Solve the exponential scheduling LP exactly: one activation variable per
/// enumerated state, flow variables per link, conservation at relays, and
/// the unit time budget. Returns the optimum and the states with nonzero
/// activation.
pub fn brute_force_capacity(net: &Network) -> Result<(f64, Vec<(NetworkState, f64)>)> {
    let states = enumerate_states(net)?;
    let n_links = net.links().len();
    let n_states = states.len();
    if n_links == 0 {
        return Ok((0.0, Vec::new()));
    }
    // Columns: flows (0..n_links), state activations (n_links..).
    let mut objective = vec![0.0; n_links + n_states];
    for (l, link) in net.links().iter().enumerate() {
        if link.from == net.source() {
            objective[l] = 1.0;
        }
    }
    let mut rows = Vec::new();
    for (l, link) in net.links().iter().enumerate() {
        let mut coeffs = vec![(l, 1.0)];
        for (s, state) in states.iter().enumerate() {
            if state.links.binary_search(&(link.from, link.to)).is_ok() {
                coeffs.push((n_links + s, -link.capacity));
            }
        }
        rows.push(KernelRow { coeffs, sense: RowSense::Le, rhs: 0.0 });
    }
    for relay in 1..=net.n_relays() {
        let mut coeffs = Vec::new();
        for (l, link) in net.links().iter().enumerate() {
            if link.from == relay {
                coeffs.push((l, 1.0));
            } else if link.to == relay {
                coeffs.push((l, -1.0));
            }
        }
        rows.push(KernelRow { coeffs, sense: RowSense::Eq, rhs: 0.0 });
    }
    rows.push(KernelRow {
        coeffs: (0..n_states).map(|s| (n_links + s, 1.0)).collect(),
        sense: RowSense::Le,
        rhs: 1.0,
    });
    let mut tableau = Tableau::new(n_links + n_states, &objective, &rows)?;
    let capacity = tableau.solve_primal()?;
    let x = tableau.primal_values();
    let activations: Vec<(NetworkState, f64)> = states
        .into_iter()
        .enumerate()
        .filter(|&(s, _)| x[n_links + s] > 1e-12)
        .map(|(s, state)| (state, x[n_links + s]))
        .collect();
    Ok((capacity, activations))
}

/// Exhaustive minimum odd cut: scan all vertex bipartitions (vertex 0 fixed
/// on one side) and keep the best odd side. Among equal minimizers the
/// lexicographically smallest odd vertex set wins.
pub fn brute_force_min_odd_cut(g: &WeightedUndirectedGraph) -> Result<(f64, Vec<usize>)> {
    let n = g.vertex_count();
    guard("brute_force_min_odd_cut vertex count", n, 16)?;
    if n < 2 {
        return Err(Error::GraphTooSmall { vertex_count: n, required: 2 });
    }
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 0u32..(1u32 << (n - 1)) {
        // Side containing vertex 0: bit k of mask selects vertex k+1.
        let side: Vec<bool> = std::iter::once(true)
            .chain((1..n).map(|v| mask & (1 << (v - 1)) != 0))
            .collect();
        let size = side.iter().filter(|&&b| b).count();
        if size == n {
            continue; // not a proper cut
        }
        let odd_side: Vec<usize> = if size % 2 == 1 {
            (0..n).filter(|&v| side[v]).collect()
        } else if (n - size) % 2 == 1 {
            (0..n).filter(|&v| !side[v]).collect()
        } else {
            continue;
        };
        let value = g.cut_weight(&side);
        let better = match &best {
            None => true,
            Some((bv, bs)) => value < *bv || (value == *bv && odd_side < *bs),
        };
        if better {
            best = Some((value, odd_side));
        }
    }
    best.ok_or_else(|| Error::Numerical("no odd cut exists".into()))
}

/// Brute-force matching-polytope membership: nonnegativity, all degree
/// bounds, and every odd-set constraint by enumeration. Returns the first
/// violated constraint (edges, then vertices, then odd sets in ascending
/// bitmask order) as a witness, or `None` for members.
pub fn m_polytope_membership_bruteforce(
    support: &UndirectedSupport,
    lh: &[f64],
    eps: f64,
) -> Result<Option<MatchingFacet>> {
    let n = support.vertex_count();
    guard("m_polytope_membership vertex count", n, 14)?;
    assert_eq!(lh.len(), support.edge_count());
    for (e, &v) in lh.iter().enumerate() {
        if v < -eps {
            return Ok(Some(MatchingFacet::NonNeg { edge: e }));
        }
    }
    for v in 0..n {
        let deg: f64 = support.incident_edges(v).iter().map(|&e| lh[e]).sum();
        if deg > 1.0 + eps {
            return Ok(Some(MatchingFacet::Degree { vertex: v }));
        }
    }
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size % 2 == 0 || size < 3 {
            continue;
        }
        let inside: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
        let total: f64 = support
            .edges()
            .iter()
            .enumerate()
            .filter(|&(_, &(i, j))| inside[i] && inside[j])
            .map(|(e, _)| lh[e])
            .sum();
        if total > (size as f64 - 1.0) / 2.0 + eps {
            let vertices: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
            return Ok(Some(MatchingFacet::OddSet { vertices }));
        }
    }
    Ok(None)
}

/// Brute-force perfect-matching-polytope membership of a weighted graph
/// viewed as a point: weighted degrees must equal 1 and every odd cut must
/// weigh at least 1.
pub fn pm_polytope_membership_bruteforce(g: &WeightedUndirectedGraph, eps: f64) -> Result<bool> {
    let n = g.vertex_count();
    guard("pm_polytope_membership vertex count", n, 16)?;
    for &(_, _, w) in g.edges() {
        if w < -eps {
            return Ok(false);
        }
    }
    for v in 0..n {
        if (g.degree_weight(v) - 1.0).abs() > eps {
            return Ok(false);
        }
    }
    for mask in 1u32..(1u32 << (n.saturating_sub(1))) {
        let side: Vec<bool> = std::iter::once(true)
            .chain((1..n).map(|v| mask & (1 << (v - 1)) != 0))
            .collect();
        let size = side.iter().filter(|&&b| b).count();
        if size == n {
            continue;
        }
        if size % 2 == 1 || (n - size) % 2 == 1 {
            if g.cut_weight(&side) < 1.0 - eps {
                return Ok(false);
            }
        }
    }
    // The all-on-one-side singleton {0} case is covered by mask iteration
    // only when n > 1; degree checks handle n == 1.
    Ok(true)
}

/// Map a P0 solution into P1's variable space: per-link activation is the
/// total activation of states carrying the link.
pub fn p0_solution_to_point(
    net: &Network,
    flows_hint: Option<&[f64]>,
    activations: &[(NetworkState, f64)],
) -> FeasiblePoint {
    let support = net.support();
    let mut link_activations = vec![0.0; net.links().len()];
    for (state, phi) in activations {
        for &(from, to) in &state.links {
            if let Some(l) = net.link_index(from, to) {
                link_activations[l] += phi;
            }
        }
    }
    let connection_activations = support
        .edges()
        .iter()
        .map(|&(i, j)| {
            net.link_index(i, j).map_or(0.0, |l| link_activations[l])
                + net.link_index(j, i).map_or(0.0, |l| link_activations[l])
        })
        .collect();
    let flows = match flows_hint {
        Some(f) => f.to_vec(),
        None => vec![0.0; net.links().len()],
    };
    FeasiblePoint { flows, link_activations, connection_activations }
}
