//! Cross-oracle batteries: every polynomial-time stage is replayed against
//! its exponential-time reference on randomized small instances.

use hd121::capacity::{solve_p1, FeasiblePoint};
use hd121::flowgraph::{gomory_hu_tree, max_flow, WeightedUndirectedGraph};
use hd121::matchpoly::{min_odd_cut_tree, separation_oracle, OracleVerdict};
use hd121::netmodel::{generate_random_network, Network};
use hd121::refcheck::{
    brute_force_capacity, brute_force_min_odd_cut, m_polytope_membership_bruteforce,
};
use hd121::scheduler::{schedule_from_solution, verify_schedule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct BatteryOutcome {
    pub name: &'static str,
    pub checks: usize,
}

/// A failed comparison, carrying enough context to reproduce it.
pub struct Mismatch {
    pub battery: &'static str,
    pub detail: String,
    pub reproducer: String,
}

type BatteryResult = Result<BatteryOutcome, Box<Mismatch>>;

pub struct Config {
    pub max_relays: usize,
    pub trials: usize,
    pub seed: u64,
    /// Deliberately flip one verdict to exercise the mismatch path.
    pub inject_fault: bool,
}

fn fail(battery: &'static str, detail: String, reproducer: String) -> BatteryResult {
    Err(Box::new(Mismatch { battery, detail, reproducer }))
}

fn point_json(net: &Network, y: &FeasiblePoint) -> String {
    serde_json::json!({
        "network": serde_json::from_str::<serde_json::Value>(&net.to_json_string()).unwrap(),
        "flows": y.flows,
        "link_activations": y.link_activations,
        "connection_activations": y.connection_activations,
    })
    .to_string()
}

/// Oracle verdicts vs brute-force matching-polytope membership.
pub fn oracle_equivalence(cfg: &Config) -> BatteryResult {
    let name = "oracle-equivalence";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = 0;
    for trial in 0..cfg.trials {
        let n_relays = rng.gen_range(0..=cfg.max_relays.min(3));
        let net = generate_random_network(n_relays, rng.gen_range(0.4..=1.0), rng.gen());
        let support = net.support();
        let scale = if trial % 3 == 0 { 0.25 } else { 1.0 };
        let lh: Vec<f64> = (0..support.edge_count())
            .map(|_| scale * rng.gen_range(0..=64) as f64 / 64.0)
            .collect();
        let mut link_act = vec![0.0; net.links().len()];
        for (e, &(i, j)) in support.edges().iter().enumerate() {
            match (net.link_index(i, j), net.link_index(j, i)) {
                (Some(l), None) | (None, Some(l)) => link_act[l] = lh[e],
                (Some(l1), Some(l2)) => {
                    let cut = rng.gen_range(0..=64) as f64 / 64.0 * lh[e];
                    link_act[l1] = cut;
                    link_act[l2] = lh[e] - cut;
                }
                (None, None) => unreachable!(),
            }
        }
        let y = FeasiblePoint {
            flows: vec![0.0; net.links().len()],
            link_activations: link_act,
            connection_activations: lh.clone(),
        };
        let fast = match separation_oracle(&net, &y, 1e-9) {
            Ok(v) => v,
            Err(e) => return fail(name, format!("oracle error: {e}"), point_json(&net, &y)),
        };
        let brute = m_polytope_membership_bruteforce(&support, &lh, 1e-9)
            .expect("guarded sizes are respected");
        let mut fast_feasible = matches!(fast, OracleVerdict::Feasible);
        if cfg.inject_fault && trial == cfg.trials / 2 {
            fast_feasible = !fast_feasible;
        }
        if fast_feasible != brute.is_none() {
            return fail(
                name,
                format!(
                    "separation oracle said {:?}, brute force said {:?}",
                    fast,
                    brute.map(|w| format!("{w:?}"))
                ),
                point_json(&net, &y),
            );
        }
        checks += 1;
    }
    Ok(BatteryOutcome { name, checks })
}

/// solve_p1 vs the exponential scheduling LP.
pub fn capacity_equivalence(cfg: &Config) -> BatteryResult {
    let name = "capacity-equivalence";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let mut checks = 0;
    for _ in 0..cfg.trials.div_ceil(2) {
        let n_relays = rng.gen_range(0..=cfg.max_relays.min(4));
        let net = generate_random_network(n_relays, rng.gen_range(0.3..=1.0), rng.gen());
        let fast = match solve_p1(&net) {
            Ok(sol) => sol.capacity,
            Err(e) => return fail(name, format!("solver error: {e}"), net.to_json_string()),
        };
        let (brute, _) = brute_force_capacity(&net).expect("guarded sizes are respected");
        if (fast - brute).abs() > 1e-6 {
            return fail(
                name,
                format!("p1 capacity {fast} vs brute-force {brute}"),
                net.to_json_string(),
            );
        }
        checks += 1;
    }
    Ok(BatteryOutcome { name, checks })
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> WeightedUndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < 0.7 {
                edges.push((u, v, rng.gen_range(0..=40) as f64 / 4.0));
            }
        }
    }
    WeightedUndirectedGraph::new(n, edges).unwrap()
}

fn graph_json(g: &WeightedUndirectedGraph) -> String {
    serde_json::json!({
        "vertex_count": g.vertex_count(),
        "edges": g.edges().iter().map(|&(u, v, c)| serde_json::json!([u, v, c])).collect::<Vec<_>>(),
    })
    .to_string()
}

/// Gomory-Hu tree queries and bipartitions vs direct max-flow.
pub fn gomory_hu_correctness(cfg: &Config) -> BatteryResult {
    let name = "gomory-hu";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    let mut checks = 0;
    for _ in 0..cfg.trials {
        let n = rng.gen_range(2..=8);
        let g = random_graph(n, &mut rng);
        let tree = gomory_hu_tree(&g).expect("graph has >= 2 vertices");
        for e in tree.edges() {
            if g.cut_weight(e.side_u_bits()) != e.alpha {
                return fail(
                    name,
                    format!("bipartition of tree edge ({},{}) does not certify alpha", e.u, e.v),
                    graph_json(&g),
                );
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                let (tv, _) = tree.min_cut_query(u, v).unwrap();
                let (fv, _) = max_flow(&g, u, v).unwrap();
                if tv != fv {
                    return fail(
                        name,
                        format!("tree query ({u},{v}) = {tv}, max-flow = {fv}"),
                        graph_json(&g),
                    );
                }
                checks += 1;
            }
        }
    }
    Ok(BatteryOutcome { name, checks })
}

/// Tree-induced minimum odd cut vs exhaustive enumeration.
pub fn odd_cut_equivalence(cfg: &Config) -> BatteryResult {
    let name = "min-odd-cut";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(3));
    let mut checks = 0;
    for _ in 0..cfg.trials {
        let n = 2 * rng.gen_range(1..=5);
        let g = random_graph(n, &mut rng);
        let (tree_val, _) = min_odd_cut_tree(&g).expect("even order");
        let (brute_val, _) = brute_force_min_odd_cut(&g).expect("guarded");
        if tree_val != brute_val {
            return fail(
                name,
                format!("tree minimum {tree_val} vs brute-force {brute_val}"),
                graph_json(&g),
            );
        }
        checks += 1;
    }
    Ok(BatteryOutcome { name, checks })
}

/// Full pipeline: the emitted schedule achieves the computed capacity.
pub fn pipeline_achievability(cfg: &Config) -> BatteryResult {
    let name = "pipeline";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(4));
    let mut checks = 0;
    for _ in 0..cfg.trials.div_ceil(2) {
        let n_relays = rng.gen_range(0..=cfg.max_relays);
        let net = generate_random_network(n_relays, rng.gen_range(0.3..=1.0), rng.gen());
        let outcome = solve_p1(&net)
            .and_then(|sol| schedule_from_solution(&net, &sol).map(|s| (sol, s)))
            .and_then(|(sol, sched)| verify_schedule(&net, &sched).map(|(_, r)| (sol, r)));
        match outcome {
            Ok((sol, rate)) => {
                if (rate - sol.capacity).abs() > 1e-6 {
                    return fail(
                        name,
                        format!("schedule rate {rate} vs capacity {}", sol.capacity),
                        net.to_json_string(),
                    );
                }
            }
            Err(e) => return fail(name, format!("pipeline error: {e}"), net.to_json_string()),
        }
        checks += 1;
    }
    Ok(BatteryOutcome { name, checks })
}

pub fn run_all(cfg: &Config) -> Result<Vec<BatteryOutcome>, Box<Mismatch>> {
    Ok(vec![
        oracle_equivalence(cfg)?,
        capacity_equivalence(cfg)?,
        gomory_hu_correctness(cfg)?,
        odd_cut_equivalence(cfg)?,
        pipeline_achievability(cfg)?,
    ])
}
