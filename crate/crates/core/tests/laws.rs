use dlens_core::gen::GenConfig;
use dlens_core::laws::{run_suite, suite, suites};

#[test]
fn every_suite_passes_on_a_small_sample() {
    let cfg = GenConfig { seed: 7, count: 24, ..GenConfig::default() };
    let mut failed = Vec::new();
    for s in suites() {
        let out = run_suite(&s, &cfg);
        println!("{:<28} {:>3} instances  {:?}", out.name, out.instances, out.elapsed);
        if let Some(c) = out.failures.first() {
            failed.push(format!("{} #{}: {}", out.name, c.index, c.detail));
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn suites_are_named_uniquely_and_found_by_name() {
    let all = suites();
    for s in &all {
        assert_eq!(suite(s.name).map(|t| t.name), Some(s.name));
        assert_eq!(all.iter().filter(|t| t.name == s.name).count(), 1);
        assert!(!s.statement.is_empty());
    }
    assert!(suite("no-such-suite").is_none());
}

#[test]
fn outcomes_do_not_depend_on_scheduling() {
    let cfg = GenConfig { seed: 3, count: 16, ..GenConfig::default() };
    let s = suite("classification-agreement").unwrap();
    let a = run_suite(&s, &cfg);
    let b = run_suite(&s, &cfg);
    assert_eq!(a.failures.len(), b.failures.len());
    assert_eq!(a.instances, 16);
}
