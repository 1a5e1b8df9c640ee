//! Stage-by-stage probe for a network file: solve, decompose, verify.
use std::time::Instant;

fn main() {
    let path = std::env::args().nth(1).expect("network file");
    let text = std::fs::read_to_string(&path).expect("read");
    let net = hd121::netmodel::Network::parse(&text).expect("parse");
    eprintln!("parsed: {} relays, {} links", net.n_relays(), net.links().len());
    let t0 = Instant::now();
    let sol = hd121::capacity::solve_p1(&net).expect("solve");
    eprintln!("solved: capacity {:.6} after {:?} ({} cuts)", sol.capacity, t0.elapsed(), sol.generated_cuts.len());
    let t1 = Instant::now();
    let sched = hd121::scheduler::schedule_from_solution(&net, &sol).expect("schedule");
    eprintln!("scheduled: {} states after {:?}", sched.states.len(), t1.elapsed());
    let (_, rate) = hd121::scheduler::verify_schedule(&net, &sched).expect("verify");
    eprintln!("verified: rate {rate:.6}");
}
