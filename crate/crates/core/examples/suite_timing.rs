use dlens_core::gen::GenConfig;
use dlens_core::laws::{run_suite, suites};

fn main() {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let only = std::env::args().nth(2);
    let cfg = GenConfig { seed: 7, count, ..GenConfig::default() };
    for s in suites().iter().filter(|s| only.as_deref().map_or(true, |o| o == s.name)) {
        let out = run_suite(s, &cfg);
        let first = out.failures.first().map(|c| format!("#{} {}", c.index, c.detail)).unwrap_or_default();
        println!("{:<28} {:>8.2?} fail={} {}", out.name, out.elapsed, out.failures.len(), first);
    }
}
