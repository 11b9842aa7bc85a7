use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let mut last = t0;
    for c in tlzero::checks::run_suite("all", None).unwrap() {
        let now = Instant::now();
        println!(
            "{} {} ({:.2}s) - {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            (now - last).as_secs_f64(),
            c.details
        );
        last = now;
    }
    println!("total {:.2}s", t0.elapsed().as_secs_f64());
}
