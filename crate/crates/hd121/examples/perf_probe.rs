//! Wall-clock probe of the full pipeline on dense random networks.
//! Usage: cargo run --release -p hd121 --example perf_probe -- [N...]

use std::time::Instant;

fn main() {
    let sizes: Vec<usize> = {
        let args: Vec<usize> = std::env::args()
            .skip(1)
            .map(|a| a.parse().expect("relay counts"))
            .collect();
        if args.is_empty() {
            vec![10, 20, 30]
        } else {
            args
        }
    };
    for n in sizes {
        let net = hd121::netmodel::generate_random_network(n, 1.0, 42);
        let t0 = Instant::now();
        let sol = hd121::capacity::solve_p1(&net).expect("solve");
        let t_solve = t0.elapsed();
        let sched = hd121::scheduler::schedule_from_solution(&net, &sol).expect("schedule");
        let (_, rate) = hd121::scheduler::verify_schedule(&net, &sched).expect("verify");
        println!(
            "N={n:3} links={} capacity={:.6} rate={:.6} cuts={} states={} solve={:.2?} total={:.2?}",
            net.links().len(),
            sol.capacity,
            rate,
            sol.generated_cuts.len(),
            sched.states.len(),
            t_solve,
            t0.elapsed()
        );
    }
}
