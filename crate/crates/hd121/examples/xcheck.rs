//! Cross-check solve_p1 against a fresh solve of its final row set.
fn main() {
    let path = std::env::args().nth(1).expect("network file");
    let net = hd121::netmodel::Network::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let sol = hd121::capacity::solve_p1(&net).unwrap();
    let support = net.support();
    let mut lp = hd121::capacity::build_base_lp(&net);
    for cut in &sol.generated_cuts {
        lp.add_odd_set(support.edges(), cut).unwrap();
    }
    let (_, fresh) = hd121::capacity::solve_restricted_lp(&lp).unwrap();
    println!(
        "p1 capacity {:.9}, fresh solve of the same rows {:.9}, gap {:.2e}",
        sol.capacity,
        fresh,
        (sol.capacity - fresh).abs()
    );
    assert!((sol.capacity - fresh).abs() < 1e-6, "warm-started path disagrees with fresh solve");
}
