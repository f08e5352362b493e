//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one status line. The process fails if any required
//! criterion fails; with `ACCEPTANCE_STRICT` set, optional ones count too.

use mixed_turan::selftest::{criteria, DEFAULT_SEED};

fn main() {
    let strict = std::env::var_os("ACCEPTANCE_STRICT").is_some();
    let mut fatal = vec![];
    for c in criteria() {
        let r = c.run(DEFAULT_SEED);
        println!(
            "criterion {:<3} {} {}{}: {} [{:.3}s / {}s]",
            r.id,
            r.status(),
            r.title,
            if r.required { "" } else { " (optional)" },
            r.detail,
            r.elapsed.as_secs_f64(),
            r.budget.as_secs()
        );
        if !r.passed && (r.required || strict) {
            fatal.push(r.id);
        }
    }
    if fatal.is_empty() {
        println!("acceptance: all required criteria passed");
    } else {
        println!("acceptance: failed {}", fatal.join(", "));
        std::process::exit(1);
    }
}
