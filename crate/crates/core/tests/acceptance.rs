//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use dlens_core::error::Error;
use dlens_core::gen::{self, GenConfig, LensShape};
use dlens_core::idx::pushforward_idx;
use dlens_core::laws::{self, opfib_verdicts, run_suite, suite};
use dlens_core::fincat::PushoutBound;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn cfg(seed: u64, count: usize) -> GenConfig {
    GenConfig { seed, count, ..GenConfig::default() }
}

/// Runs the named suites at `count` instances each, all of which must pass.
fn suites(names: &[&str], c: &GenConfig) -> Outcome {
    let mut parts = Vec::new();
    for name in names {
        let out = run_suite(&suite(name).expect("registered suite"), c);
        if let Some(x) = out.failures.first() {
            return fail(format!("{name}: {} failures, first at #{}: {}", out.failures.len(), x.index, x.detail));
        }
        parts.push(format!("{name} {}/{}", out.instances, out.instances));
    }
    pass(parts.join(", "))
}

fn lens_dialens() -> Outcome {
    let c = GenConfig { max_objects: 5, max_morphisms: 20, max_fibre: 4, ..cfg(101, 500) };
    suites(&["lens-dialens"], &c)
}

fn roundtrips() -> Outcome {
    suites(&["roundtrips"], &cfg(102, 500))
}

fn split_opfib() -> Outcome {
    let c = cfg(103, 500);
    let out = run_suite(&suite("split-opfib-agreement").expect("suite"), &c);
    if let Some(x) = out.failures.first() {
        return fail(format!("{} disagreements, first at #{}: {}", out.failures.len(), x.index, x.detail));
    }
    let positives = (0..c.count).filter(|&i| opfib_verdicts(&c, i).0[0]).count();
    let constructed = (0..c.count).filter(|&i| opfib_verdicts(&c, i).1).count();
    let msg = format!("500/500 agree, {positives} positives ({constructed} constructed)");
    if constructed >= 50 { pass(msg) } else { fail(msg) }
}

fn laxity() -> Outcome {
    let c = cfg(104, 500);
    let mut valid = 0;
    let mut mutations = 0;
    let mut i = 0;
    while valid < 500 || mutations < 500 {
        let rng = &mut c.rng(i);
        let x = gen::random_idx(rng, &c, LensShape::General);
        match laws::laxity_agrees(&x.to_raw()) {
            Ok(true) => valid += 1,
            Ok(false) => return fail(format!("generated instance #{i} rejected")),
            Err(e) => return fail(format!("instance #{i}: {e}")),
        }
        if let Some(m) = gen::mutate_idx(rng, &x) {
            if let Err(e) = laws::laxity_agrees(&m) {
                return fail(format!("mutation of #{i}: {e}"));
            }
            mutations += 1;
        }
        i += 1;
    }
    pass(format!("{valid} valid, {mutations} mutations agree"))
}

fn smult() -> Outcome {
    suites(&["interchange", "associator-pentagon", "sigma-naturality", "adjunction-triangles"], &cfg(105, 200))
}

fn factorizations() -> Outcome {
    let c = cfg(106, 300);
    let first = suites(&["comprehensive-factorization"], &c);
    if !first.ok {
        return first;
    }
    let pairs = match laws::orthogonality_catalog(3) {
        Ok(n) => n,
        Err(e) => return fail(format!("orthogonality: {e}")),
    };
    for i in 0..c.count {
        let l = gen::random_lens(&mut c.rng(i), &c, LensShape::General);
        let fac = dlens_core::lens::epi_mono_factorization(&l);
        let (e, m) = (&fac.first, &fac.second);
        let ok = e.law_violations().is_ok()
            && m.law_violations().is_ok()
            && e.functor().is_surjective_on_objects()
            && m.functor().is_fully_faithful()
            && m.functor().is_injective_on_objects()
            && e.then(m).map(|x| x.to_raw() == l.to_raw()).unwrap_or(false);
        if !ok {
            return fail(format!("epi-mono factorization of lens #{i}"));
        }
    }
    pass(format!("{}, {pairs} orthogonal pairs, epi-mono 300/300", first.detail))
}

fn classification() -> Outcome {
    suites(&["classification-agreement"], &cfg(107, 500))
}

fn transport() -> Outcome {
    let pb = suites(&["pullback-elements"], &cfg(108, 200));
    if !pb.ok {
        return pb;
    }
    let (decided, undecided, cones) = match laws::pushforward_exhaustive(3, 12) {
        Ok(n) => n,
        Err(e) => return fail(format!("pushforward: {e}")),
    };
    let (x, g) = laws::curated_loop_case();
    match pushforward_idx(&x, &g, PushoutBound::default()) {
        Err(Error::Undecided(_)) => {}
        Ok(_) => return fail("curated loop case produced output"),
        Err(e) => return fail(format!("curated loop case: {e}")),
    }
    pass(format!("{}, pushforward {decided} decided ({cones} cones) + {undecided} undecided, loop case undecided", pb.detail))
}

fn products() -> Outcome {
    let instances = laws::small_idx_instances();
    match laws::products_exhaustive(&instances, &instances) {
        Ok(n) => pass(format!("{} instances, {n} pairs", instances.len())),
        Err(e) => fail(e),
    }
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("lens and diagrammatic lens", 60, lens_dialens),
        ("elements/fibres round trips", 60, roundtrips),
        ("split-opfibration detectors", 120, split_opfib),
        ("laxity and category laws", 60, laxity),
        ("SMult coherence", 60, smult),
        ("factorizations", 120, factorizations),
        ("classification agreement", 60, classification),
        ("transport", 180, transport),
        ("(co)products", 60, products),
    ];
    // Criterion numbers on the command line select a subset.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut all = true;
    for (n, (name, limit, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(n + 1)) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed < Duration::from_secs(*limit);
        all &= ok;
        println!(
            "criterion {}: {} {name} ({:.1}s of {limit}s) {}",
            n + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
