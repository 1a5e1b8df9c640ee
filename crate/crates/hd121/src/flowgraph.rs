//! Weighted-graph kernel: maximum flow / minimum cut and Gomory-Hu cut
//! trees.
//!
//! The Gomory-Hu construction is the contraction scheme (a true cut tree,
//! not a flow-equivalent shortcut): removing any tree edge yields a vertex
//! bipartition that is a minimum cut between its endpoints in the source
//! graph. Downstream odd-cut checks consume those bipartitions.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Simple undirected graph with finite nonnegative edge capacities.
/// Edges are normalized to `u < v` and kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedUndirectedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedUndirectedGraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut norm = Vec::new();
        for (a, b, c) in edges {
            if a == b {
                return Err(Error::SelfLoop { node: a });
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::VertexOutOfRange { vertex: a.max(b), vertex_count });
            }
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidEdgeCapacity { u: a.min(b), v: a.max(b), capacity: c });
            }
            norm.push((a.min(b), a.max(b), c));
        }
        norm.sort_by(|x, y| (x.0, x.1).partial_cmp(&(y.0, y.1)).unwrap());
        for w in norm.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::DuplicateEdge { u: w[0].0, v: w[0].1 });
            }
        }
        Ok(WeightedUndirectedGraph { vertex_count, edges: norm })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges sorted by `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Weighted degree of `v`: total weight of edges incident to `v`.
    pub fn degree_weight(&self, v: usize) -> f64 {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| a == v || b == v)
            .map(|&(_, _, c)| c)
            .sum()
    }

    /// Total weight of edges with exactly one endpoint in `side`.
    pub fn cut_weight(&self, side: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| side[a] != side[b])
            .map(|&(_, _, c)| c)
            .sum()
    }

    /// Total weight of edges with both endpoints in `side`.
    pub fn internal_weight(&self, side: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| side[a] && side[b])
            .map(|&(_, _, c)| c)
            .sum()
    }

    /// Total weight of edges with one endpoint in `a_side` and the other in
    /// `b_side` (the two sides must be disjoint for a meaningful answer).
    pub fn cross_weight(&self, a_side: &[bool], b_side: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| (a_side[a] && b_side[b]) || (a_side[b] && b_side[a]))
            .map(|&(_, _, c)| c)
            .sum()
    }
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: f64,
}

/// Dinic max-flow over adjacency arc lists. Undirected edges become two
/// mutually-reverse arcs each carrying the full edge capacity.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    eps: f64,
}

impl FlowNetwork {
    pub fn from_undirected(g: &WeightedUndirectedGraph) -> Self {
        let mut net = FlowNetwork { adj: vec![Vec::new(); g.vertex_count()], eps: 0.0 };
        let mut max_cap: f64 = 1.0;
        for &(u, v, c) in g.edges() {
            net.push_pair(u, v, c, c);
            max_cap = max_cap.max(c);
        }
        net.eps = 1e-12 * max_cap;
        net
    }

    pub fn from_directed(vertex_count: usize, arcs: &[(usize, usize, f64)]) -> Self {
        let mut net = FlowNetwork { adj: vec![Vec::new(); vertex_count], eps: 0.0 };
        let mut max_cap: f64 = 1.0;
        for &(u, v, c) in arcs {
            net.push_pair(u, v, c, 0.0);
            max_cap = max_cap.max(c);
        }
        net.eps = 1e-12 * max_cap;
        net
    }

    fn push_pair(&mut self, u: usize, v: usize, cap_uv: f64, cap_vu: f64) {
        let iu = self.adj[u].len();
        let iv = self.adj[v].len();
        self.adj[u].push(Arc { to: v, rev: iv, cap: cap_uv });
        self.adj[v].push(Arc { to: u, rev: iu, cap: cap_vu });
    }

    fn bfs_levels(&self, s: usize, t: usize, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[s] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for arc in &self.adj[u] {
                if arc.cap > self.eps && level[arc.to] < 0 {
                    level[arc.to] = level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        level[t] >= 0
    }

    fn dfs_push(&mut self, u: usize, t: usize, pushed: f64, level: &[i32], iter: &mut [usize]) -> f64 {
        if u == t {
            return pushed;
        }
        while iter[u] < self.adj[u].len() {
            let i = iter[u];
            let (to, cap) = {
                let arc = &self.adj[u][i];
                (arc.to, arc.cap)
            };
            if cap > self.eps && level[to] == level[u] + 1 {
                let got = self.dfs_push(to, t, pushed.min(cap), level, iter);
                if got > 0.0 {
                    let rev = self.adj[u][i].rev;
                    self.adj[u][i].cap -= got;
                    self.adj[to][rev].cap += got;
                    return got;
                }
            }
            iter[u] += 1;
        }
        0.0
    }

    /// Run max-flow from `s` to `t`, consuming residual capacity. Returns
    /// the flow value and the residual-reachable side containing `s` (a
    /// minimum cut's source side).
    pub fn max_flow(&mut self, s: usize, t: usize) -> (f64, Vec<bool>) {
        let n = self.adj.len();
        let mut total = 0.0;
        let mut level = vec![-1i32; n];
        while self.bfs_levels(s, t, &mut level) {
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.dfs_push(s, t, f64::INFINITY, &level, &mut iter);
                if pushed <= 0.0 {
                    break;
                }
                total += pushed;
            }
        }
        let mut side = vec![false; n];
        side[s] = true;
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for arc in &self.adj[u] {
                if arc.cap > self.eps && !side[arc.to] {
                    side[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        (total, side)
    }
}

/// Minimum s-t cut of an undirected graph. Returns the cut value and the
/// sorted vertex set of the cut side containing `s` (residual-reachable
/// vertices, the canonical deterministic choice).
pub fn max_flow(g: &WeightedUndirectedGraph, s: usize, t: usize) -> Result<(f64, Vec<usize>)> {
    check_endpoints(g.vertex_count(), s, t)?;
    let (value, side) = FlowNetwork::from_undirected(g).max_flow(s, t);
    Ok((value, bools_to_sorted(&side)))
}

/// Minimum s-t cut of a directed graph given as arcs `(from, to, capacity)`.
pub fn max_flow_directed(
    vertex_count: usize,
    arcs: &[(usize, usize, f64)],
    s: usize,
    t: usize,
) -> Result<(f64, Vec<usize>)> {
    check_endpoints(vertex_count, s, t)?;
    let (value, side) = FlowNetwork::from_directed(vertex_count, arcs).max_flow(s, t);
    Ok((value, bools_to_sorted(&side)))
}

/// Like [`max_flow_directed`], but also returns the per-arc flow values
/// (aligned with the input arcs, clamped into `[0, capacity]`).
pub fn max_flow_directed_with_flows(
    vertex_count: usize,
    arcs: &[(usize, usize, f64)],
    s: usize,
    t: usize,
) -> Result<(f64, Vec<f64>)> {
    check_endpoints(vertex_count, s, t)?;
    let mut net = FlowNetwork { adj: vec![Vec::new(); vertex_count], eps: 0.0 };
    let mut handles = Vec::with_capacity(arcs.len());
    let mut max_cap: f64 = 1.0;
    for &(u, v, c) in arcs {
        handles.push((u, net.adj[u].len()));
        net.push_pair(u, v, c, 0.0);
        max_cap = max_cap.max(c);
    }
    net.eps = 1e-12 * max_cap;
    let (value, _) = net.max_flow(s, t);
    let flows = handles
        .iter()
        .zip(arcs)
        .map(|(&(u, i), &(_, _, cap))| (cap - net.adj[u][i].cap).clamp(0.0, cap))
        .collect();
    Ok((value, flows))
}

fn check_endpoints(vertex_count: usize, s: usize, t: usize) -> Result<()> {
    if s >= vertex_count || t >= vertex_count {
        return Err(Error::VertexOutOfRange { vertex: s.max(t), vertex_count });
    }
    if s == t {
        return Err(Error::IdenticalEndpoints { vertex: s });
    }
    Ok(())
}

fn bools_to_sorted(side: &[bool]) -> Vec<usize> {
    side.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// One edge of a Gomory-Hu tree: endpoints, its minimum-cut value `alpha`,
/// and the bipartition induced by removing it from the tree.
#[derive(Debug, Clone)]
pub struct GomoryHuEdge {
    pub u: usize,
    pub v: usize,
    pub alpha: f64,
    side_u: Vec<bool>,
}

impl GomoryHuEdge {
    /// Membership bits of the bipartition side containing `self.u`.
    pub fn side_u_bits(&self) -> &[bool] {
        &self.side_u
    }

    /// Sorted vertices of the side containing `w`.
    pub fn side_containing(&self, w: usize) -> Vec<usize> {
        if self.side_u[w] {
            bools_to_sorted(&self.side_u)
        } else {
            let inv: Vec<bool> = self.side_u.iter().map(|&b| !b).collect();
            bools_to_sorted(&inv)
        }
    }
}

/// Gomory-Hu cut tree. For every tree edge `(u, v)` the stored bipartition
/// is a minimum-capacity u-v cut of the source graph with value `alpha`.
#[derive(Debug, Clone)]
pub struct GomoryHuTree {
    vertex_count: usize,
    edges: Vec<GomoryHuEdge>,
}

impl GomoryHuTree {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Tree edges in construction order.
    pub fn edges(&self) -> &[GomoryHuEdge] {
        &self.edges
    }

    /// Minimum u-v cut from the tree: the minimum `alpha` along the unique
    /// u-v tree path, with the stored bipartition of that bottleneck edge
    /// oriented to contain `u`. Ties pick the edge closest to `u`.
    pub fn min_cut_query(&self, u: usize, v: usize) -> Result<(f64, Vec<usize>)> {
        check_endpoints(self.vertex_count, u, v)?;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertex_count];
        for (idx, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, idx));
            adj[e.v].push((e.u, idx));
        }
        // BFS parents from u, then walk back from v.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        seen[u] = true;
        let mut queue = VecDeque::new();
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &(y, idx) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, idx));
                    queue.push_back(y);
                }
            }
        }
        if !seen[v] {
            return Err(Error::Numerical(format!(
                "gomory-hu tree is not spanning: no path {u}..{v}"
            )));
        }
        let mut path = Vec::new();
        let mut cur = v;
        while cur != u {
            let (prev, idx) = parent[cur].expect("walk follows BFS parents");
            path.push(idx);
            cur = prev;
        }
        path.reverse();
        let mut best = path[0];
        for &idx in &path[1..] {
            if self.edges[idx].alpha < self.edges[best].alpha {
                best = idx;
            }
        }
        let e = &self.edges[best];
        Ok((e.alpha, e.side_containing(u)))
    }

    /// Debug dump: one `u v alpha` line per tree edge, sorted by `(u, v)`.
    pub fn dump(&self) -> String {
        let mut lines: Vec<(usize, usize, f64)> = self
            .edges
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v), e.alpha))
            .collect();
        lines.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        lines
            .iter()
            .map(|(u, v, a)| format!("{u} {v} {a}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Build a Gomory-Hu tree with the contraction scheme, using exactly
/// `|V| - 1` max-flow runs.
pub fn gomory_hu_tree(g: &WeightedUndirectedGraph) -> Result<GomoryHuTree> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::GraphTooSmall { vertex_count: n, required: 2 });
    }

    // Supernodes holding disjoint vertex sets, connected by tree edges.
    let mut nodes: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut tree: Vec<(usize, usize, f64)> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);

    while let Some(x) = queue.pop_front() {
        if nodes[x].len() < 2 {
            continue;
        }
        let k = nodes[x].len();
        let (s, t) = (nodes[x][0], nodes[x][1]);

        // Components of the current tree with x removed.
        let mut comp: Vec<Option<usize>> = vec![None; nodes.len()];
        let mut n_comp = 0;
        for start in 0..nodes.len() {
            if start == x || comp[start].is_some() {
                continue;
            }
            let id = n_comp;
            n_comp += 1;
            comp[start] = Some(id);
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for &(p, q, _) in &tree {
                    let other = if p == a { q } else if q == a { p } else { continue };
                    if other != x && comp[other].is_none() {
                        comp[other] = Some(id);
                        stack.push(other);
                    }
                }
            }
        }

        // Contract every component to a single vertex; x's vertices stay
        // individual at ids 0..k, components take ids k..k+n_comp.
        let cn = k + n_comp;
        let mut vid = vec![usize::MAX; n];
        for (pos, &v) in nodes[x].iter().enumerate() {
            vid[v] = pos;
        }
        for (ni, node) in nodes.iter().enumerate() {
            if ni != x {
                let c = comp[ni].expect("every other supernode is in a component");
                for &v in node {
                    vid[v] = k + c;
                }
            }
        }
        let mut cap = vec![0.0f64; cn * cn];
        for &(a, b, c) in g.edges() {
            let (ia, ib) = (vid[a], vid[b]);
            if ia != ib {
                cap[ia * cn + ib] += c;
                cap[ib * cn + ia] += c;
            }
        }
        let mut contracted = Vec::new();
        for i in 0..cn {
            for j in (i + 1)..cn {
                if cap[i * cn + j] > 0.0 {
                    contracted.push((i, j, cap[i * cn + j]));
                }
            }
        }
        let cg = WeightedUndirectedGraph::new(cn, contracted)
            .expect("contracted capacities are valid");
        let (w, side) = FlowNetwork::from_undirected(&cg).max_flow(vid[s], vid[t]);

        // Split x along the cut.
        let mut xs = Vec::new();
        let mut xt = Vec::new();
        for &v in &nodes[x] {
            if side[vid[v]] {
                xs.push(v);
            } else {
                xt.push(v);
            }
        }
        debug_assert!(xs.contains(&s) && xt.contains(&t));
        let newi = nodes.len();
        nodes[x] = xs;
        nodes.push(xt);
        for e in tree.iter_mut() {
            let other = if e.0 == x { e.1 } else if e.1 == x { e.0 } else { continue };
            let cid = k + comp[other].expect("neighbor is in a component");
            if !side[cid] {
                if e.0 == x {
                    e.0 = newi;
                } else {
                    e.1 = newi;
                }
            }
        }
        tree.push((x, newi, w));
        if nodes[x].len() >= 2 {
            queue.push_back(x);
        }
        if nodes[newi].len() >= 2 {
            queue.push_back(newi);
        }
    }

    // All supernodes are singletons now; materialize vertex-level edges and
    // their removal bipartitions.
    let reps: Vec<usize> = nodes.iter().map(|set| set[0]).collect();
    let raw: Vec<(usize, usize, f64)> =
        tree.iter().map(|&(a, b, w)| (reps[a], reps[b], w)).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (idx, &(u, v, _)) in raw.iter().enumerate() {
        adj[u].push((v, idx));
        adj[v].push((u, idx));
    }
    let mut edges = Vec::with_capacity(raw.len());
    for (idx, &(u, v, alpha)) in raw.iter().enumerate() {
        let mut side_u = vec![false; n];
        side_u[u] = true;
        let mut stack = vec![u];
        while let Some(a) = stack.pop() {
            for &(b, eidx) in &adj[a] {
                if eidx != idx && !side_u[b] {
                    side_u[b] = true;
                    stack.push(b);
                }
            }
        }
        edges.push(GomoryHuEdge { u, v, alpha, side_u });
    }
    Ok(GomoryHuTree { vertex_count: n, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Six-vertex weighted graph with integer weights chosen so the minimum
    /// 1-5 cut is 13 with unique side {0,1,2}; certified below against full
    /// cut enumeration.
    fn six_vertex_graph() -> WeightedUndirectedGraph {
        WeightedUndirectedGraph::new(
            6,
            vec![
                (0, 1, 10.0),
                (0, 2, 8.0),
                (1, 2, 5.0),
                (1, 3, 4.0),
                (1, 4, 2.0),
                (2, 3, 3.0),
                (2, 4, 2.0),
                (2, 5, 2.0),
                (3, 4, 6.0),
                (3, 5, 7.0),
                (4, 5, 9.0),
            ],
        )
        .unwrap()
    }

    /// Exhaustive minimum s-t cut by subset enumeration.
    fn brute_min_cut(g: &WeightedUndirectedGraph, s: usize, t: usize) -> (f64, Vec<usize>) {
        let n = g.vertex_count();
        let mut best = f64::INFINITY;
        let mut best_side = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & (1 << s) == 0 || mask & (1 << t) != 0 {
                continue;
            }
            let side: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
            let w = g.cut_weight(&side);
            if w < best {
                best = w;
                best_side = bools_to_sorted(&side);
            }
        }
        (best, best_side)
    }

    fn random_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> WeightedUndirectedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen::<f64>() < density {
                    // Quarter-integer weights keep all cut arithmetic exact.
                    let w = rng.gen_range(0..=40) as f64 / 4.0;
                    edges.push((u, v, w));
                }
            }
        }
        WeightedUndirectedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn single_edge_cut() {
        let g = WeightedUndirectedGraph::new(2, vec![(0, 1, 3.5)]).unwrap();
        let (v, side) = max_flow(&g, 0, 1).unwrap();
        assert_eq!(v, 3.5);
        assert_eq!(side, vec![0]);
    }

    #[test]
    fn disconnected_pair_has_zero_cut() {
        let g = WeightedUndirectedGraph::new(4, vec![(0, 1, 2.0), (2, 3, 2.0)]).unwrap();
        let (v, side) = max_flow(&g, 0, 3).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(side, vec![0, 1]);
    }

    #[test]
    fn identical_endpoints_rejected() {
        let g = WeightedUndirectedGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        assert!(matches!(max_flow(&g, 1, 1), Err(Error::IdenticalEndpoints { vertex: 1 })));
    }

    #[test]
    fn six_vertex_min_cut_is_13_at_012() {
        let g = six_vertex_graph();
        let (enum_v, enum_side) = brute_min_cut(&g, 1, 5);
        assert_eq!(enum_v, 13.0);
        assert_eq!(enum_side, vec![0, 1, 2]);
        let (v, side) = max_flow(&g, 1, 5).unwrap();
        assert_eq!(v, 13.0);
        assert_eq!(side, vec![0, 1, 2]);
    }

    #[test]
    fn directed_max_flow_ignores_reverse_direction() {
        let arcs = vec![(0, 1, 4.0), (1, 2, 2.5)];
        let (v, _) = max_flow_directed(3, &arcs, 0, 2).unwrap();
        assert_eq!(v, 2.5);
        let (back, _) = max_flow_directed(3, &arcs, 2, 0).unwrap();
        assert_eq!(back, 0.0);
    }

    #[test]
    fn two_vertex_tree() {
        let g = WeightedUndirectedGraph::new(2, vec![(0, 1, 2.25)]).unwrap();
        let t = gomory_hu_tree(&g).unwrap();
        assert_eq!(t.edges().len(), 1);
        let e = &t.edges()[0];
        assert_eq!(e.alpha, 2.25);
        let (v, side) = t.min_cut_query(0, 1).unwrap();
        assert_eq!(v, 2.25);
        assert_eq!(side, vec![0]);
    }

    #[test]
    fn tree_rejects_tiny_graphs() {
        let g = WeightedUndirectedGraph::new(1, Vec::new()).unwrap();
        assert!(matches!(gomory_hu_tree(&g), Err(Error::GraphTooSmall { .. })));
    }

    #[test]
    fn star_tree_is_the_star() {
        // Each leaf's min cut is its own edge, so the tree mirrors the star.
        let caps = [3.0, 1.0, 4.0, 1.5, 5.0];
        let edges: Vec<_> = caps.iter().enumerate().map(|(i, &c)| (0, i + 1, c)).collect();
        let g = WeightedUndirectedGraph::new(6, edges).unwrap();
        let t = gomory_hu_tree(&g).unwrap();
        for leaf in 1..6 {
            let (v, side) = t.min_cut_query(0, leaf).unwrap();
            assert_eq!(v, caps[leaf - 1]);
            assert!(!side.contains(&leaf));
        }
        let (v_15, _) = t.min_cut_query(1, 5).unwrap();
        assert_eq!(v_15, caps[0].min(caps[4]));
    }

    #[test]
    fn tree_queries_match_max_flow_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..30 {
            let n = rng.gen_range(2..=8);
            let g = random_graph(n, 0.7, &mut rng);
            let t = gomory_hu_tree(&g).unwrap();
            assert_eq!(t.edges().len(), n - 1);
            for u in 0..n {
                for v in (u + 1)..n {
                    let (tv, side) = t.min_cut_query(u, v).unwrap();
                    let (fv, _) = max_flow(&g, u, v).unwrap();
                    assert_eq!(tv, fv, "round {round} pair ({u},{v})");
                    assert!(side.contains(&u) && !side.contains(&v));
                }
            }
        }
    }

    #[test]
    fn tree_bipartitions_certify_their_alpha() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(2..=9);
            let g = random_graph(n, 0.6, &mut rng);
            let t = gomory_hu_tree(&g).unwrap();
            for e in t.edges() {
                assert_eq!(g.cut_weight(e.side_u_bits()), e.alpha);
                let (fv, _) = max_flow(&g, e.u, e.v).unwrap();
                assert_eq!(fv, e.alpha);
            }
        }
    }

    #[test]
    fn counting_identity_on_random_graphs() {
        // For every S: sum of degree weights over S = cut(S) + 2 * internal(S).
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let n = rng.gen_range(2..=9);
            let g = random_graph(n, 0.6, &mut rng);
            let mask: u32 = rng.gen_range(0..(1 << n));
            let side: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
            let lhs: f64 = (0..n).filter(|&v| side[v]).map(|v| g.degree_weight(v)).sum();
            let rhs = g.cut_weight(&side) + 2.0 * g.internal_weight(&side);
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn dump_is_sorted_and_stable() {
        let g = six_vertex_graph();
        let t = gomory_hu_tree(&g).unwrap();
        let d1 = t.dump();
        let d2 = gomory_hu_tree(&g).unwrap().dump();
        assert_eq!(d1, d2);
        let mut lines: Vec<&str> = d1.lines().collect();
        let sorted = {
            let mut s = lines.clone();
            s.sort();
            s
        };
        lines.sort();
        assert_eq!(lines, sorted);
    }
}
