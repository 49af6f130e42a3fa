use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use dlens_core::fincat::{FinFunctor, RawFunctor};
use dlens_core::gen::catalog;
use dlens_core::idx::fibres;
use dlens_core::laws::curated_loop_case;
use dlens_core::lens::{projection_lens, DeltaLens};
use serde_json::Value;

fn scratch() -> PathBuf {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("dlens-cli-{}-{}", std::process::id(), NEXT.fetch_add(1, Ordering::SeqCst)));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, value: &impl serde::Serialize) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn dlens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlens")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn roundtrip_on_fibres_of_the_identity_lens() {
    let dir = scratch();
    let id = DeltaLens::identity(Arc::new(catalog::interval()));
    let x = write(&dir, "x.json", &fibres(&id).to_raw());
    let out = dlens(&["roundtrip", "-i", s(&x)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["invertible"], true);
}

#[test]
fn check_laws_split_opfib_agreement_passes() {
    let out = dlens(&["check-laws", "split-opfib-agreement", "--seed", "42", "--count", "500"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("PASS split-opfib-agreement"), "{text}");
    assert!(text.contains("500/500"));
}

#[test]
fn check_laws_rejects_unknown_suites_and_lists_known_ones() {
    assert_eq!(code(&dlens(&["check-laws", "no-such-suite"])), 2);
    let listed = dlens(&["check-laws", "--list"]);
    assert_eq!(code(&listed), 0);
    assert_eq!(String::from_utf8_lossy(&listed.stdout).lines().count(), dlens_core::laws::suites().len());
}

#[test]
fn epi_mono_of_a_surjective_lens_has_an_invertible_mono_part() {
    let dir = scratch();
    let two = Arc::new(catalog::interval());
    let l = projection_lens(&Arc::new(catalog::discrete(2)), &two);
    let path = write(&dir, "p.json", &l.to_raw());
    let outdir = dir.join("out");
    assert_eq!(code(&dlens(&["factor", "--kind", "epi_mono", "-i", s(&path), "-o", s(&outdir)])), 0);
    let mono = DeltaLens::from_raw(&serde_json::from_value(read(&outdir.join("p.mono.json"))).unwrap()).unwrap();
    assert!(mono.functor().is_isomorphism());
    let epi = DeltaLens::from_raw(&serde_json::from_value(read(&outdir.join("p.epi.json"))).unwrap()).unwrap();
    assert!(epi.functor().is_surjective_on_objects());
}

#[test]
fn comprehensive_and_ioo_factorizations_write_valid_files() {
    let dir = scratch();
    let l = projection_lens(&Arc::new(catalog::interval()), &Arc::new(catalog::interval()));
    let path = write(&dir, "l.json", &l.to_raw());
    let outdir = dir.join("out");
    for kind in ["comprehensive", "ioo_dopf"] {
        assert_eq!(code(&dlens(&["factor", "--kind", kind, "-i", s(&path), "-o", s(&outdir)])), 0);
    }
    let files: Vec<PathBuf> = std::fs::read_dir(&outdir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 5);
    let mut args = vec!["validate", "-i"];
    args.extend(files.iter().map(|p| s(p)));
    assert_eq!(code(&dlens(&args)), 0);
}

#[test]
fn exit_codes_distinguish_bad_input_from_failed_laws() {
    let dir = scratch();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"objects\": [").unwrap();
    assert_eq!(code(&dlens(&["validate", "-i", s(&bad)])), 2);
    let unknown = write(&dir, "odd.json", &serde_json::json!({ "hello": 1 }));
    assert_eq!(code(&dlens(&["validate", "-i", s(&unknown)])), 2);

    let mut raw = catalog::interval().to_raw();
    raw.compose.retain(|c| !(c.first == "u" && c.then != "u"));
    let broken = write(&dir, "broken.json", &raw);
    let out = dlens(&["validate", "-i", s(&broken)]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report[s(&broken)]["report"]["violations"].as_array().unwrap().is_empty());
    assert_eq!(code(&dlens(&["fibres", "-i", s(&broken)])), 2);
}

#[test]
fn pushforward_of_the_loop_case_is_undecided() {
    let dir = scratch();
    let (x, g) = curated_loop_case();
    let xp = write(&dir, "x.json", &x.to_raw());
    let gp = write(&dir, "g.json", &RawFunctor { dom: None, ..g.to_raw() });
    let out = dlens(&["pushforward", "-i", s(&xp), s(&gp)]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undecided"));
}

#[test]
fn pushforward_and_pullback_along_identities() {
    let dir = scratch();
    let two = Arc::new(catalog::interval());
    let x = fibres(&projection_lens(&Arc::new(catalog::discrete(2)), &two));
    let xp = write(&dir, "x.json", &x.to_raw());
    let id = FinFunctor::identity(two.clone());
    let along = write(&dir, "along.json", &RawFunctor { dom: None, ..id.to_raw() });
    let into = write(&dir, "into.json", &RawFunctor { cod: None, ..id.to_raw() });
    for (cmd, gp) in [("pushforward", &along), ("pullback", &into)] {
        let out = dlens(&[cmd, "-i", s(&xp), s(gp)]);
        assert_eq!(code(&out), 0, "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let y: dlens_core::idx::RawIndexedSmf = serde_json::from_slice(&out.stdout).unwrap();
        let y = dlens_core::idx::IndexedSmf::from_raw(&y).unwrap();
        for o in x.base().objects() {
            assert_eq!(y.objset(o).len(), x.objset(o).len());
        }
    }
}

#[test]
fn generation_is_byte_identical_for_a_seed() {
    let dir = scratch();
    let (a, b) = (dir.join("a"), dir.join("b"));
    for (d, seed) in [(&a, "9"), (&b, "9")] {
        assert_eq!(code(&dlens(&["gen", "--kind", "indexed", "--seed", seed, "--count", "5", "-o", s(d)])), 0);
    }
    for i in 0..5 {
        let name = format!("indexed-{i:04}.json");
        assert_eq!(std::fs::read(a.join(&name)).unwrap(), std::fs::read(b.join(&name)).unwrap());
    }
    let files: Vec<PathBuf> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().path()).collect();
    let mut args = vec!["validate", "-i"];
    args.extend(files.iter().map(|p| s(p)));
    assert_eq!(code(&dlens(&args)), 0);
}

#[test]
fn generated_kinds_validate() {
    let dir = scratch();
    for kind in ["category", "functor", "lens", "dopf", "smf", "cell"] {
        let d = dir.join(kind);
        assert_eq!(code(&dlens(&["gen", "--kind", kind, "--count", "3", "--seed", "1", "-o", s(&d)])), 0);
        let files: Vec<PathBuf> = std::fs::read_dir(&d).unwrap().map(|e| e.unwrap().path()).collect();
        assert_eq!(files.len(), 3);
        let mut args = vec!["validate", "-i"];
        args.extend(files.iter().map(|p| s(p)));
        let out = dlens(&args);
        assert_eq!(code(&out), 0, "{kind}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(code(&dlens(&["gen", "--max-fibre", "0"])), 2);
}

#[test]
fn compose_smf_and_classify() {
    let dir = scratch();
    let path = dlens_core::gen::random_smf_path(&mut dlens_core::gen::GenConfig::default().rng(0), 2, 3);
    let m1 = write(&dir, "m1.json", &path[0].to_raw());
    let m2 = write(&dir, "m2.json", &path[1].to_raw());
    let out = dlens(&["compose-smf", "-i", s(&m1), s(&m2)]);
    assert_eq!(code(&out), 0);
    let c: dlens_core::smult::RawSmf = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(dlens_core::smult::Smf::from_raw(&c).unwrap(), path[0].then(&path[1]).unwrap());
    assert_eq!(code(&dlens(&["compose-smf", "-i", s(&m2), s(&m1)])), 2);

    let x = write(&dir, "x.json", &fibres(&DeltaLens::identity(Arc::new(catalog::interval()))).to_raw());
    let out = dlens(&["classify", "-i", s(&x)]);
    assert_eq!(code(&out), 0);
    let report: dlens_core::classify::ClassReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.all_agree());
    assert!(String::from_utf8_lossy(&out.stderr).contains("discrete_opfibration"));
}

#[test]
fn elements_of_invalid_data_needs_allow_invalid() {
    let dir = scratch();
    let x = fibres(&projection_lens(&Arc::new(catalog::interval()), &Arc::new(catalog::interval())));
    let mut raw = x.to_raw();
    let mu = raw.mu.iter_mut().find(|m| m.table.len() > 1).unwrap();
    let other = mu.table[1].result.clone();
    mu.table[0].result = other;
    let path = write(&dir, "m.json", &raw);
    assert!(!dlens_core::idx::validate_indexed_smf(&raw).is_ok());
    assert_eq!(code(&dlens(&["elements", "-i", s(&path)])), 2);
    let outdir = dir.join("out");
    assert_eq!(code(&dlens(&["elements", "--allow-invalid", "-i", s(&path), "-o", s(&outdir)])), 1);
    let report = read(&outdir.join("m.elements.report.json"));
    assert!(!report["elements"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn dot_format_writes_graphviz() {
    let dir = scratch();
    let x = write(&dir, "x.json", &fibres(&DeltaLens::identity(Arc::new(catalog::interval()))).to_raw());
    let outdir = dir.join("out");
    assert_eq!(code(&dlens(&["elements", "-i", s(&x), "-o", s(&outdir), "--format", "dot"])), 0);
    let dot = std::fs::read_to_string(outdir.join("x.elements.dot")).unwrap();
    assert!(dot.starts_with("digraph") && dot.contains("style=bold"));
}

#[test]
fn named_category_references_resolve_by_file_stem() {
    let dir = scratch();
    let two = write(&dir, "two.json", &catalog::interval().to_raw());
    let one = write(&dir, "one.json", &catalog::terminal().to_raw());
    let bang = serde_json::json!({
        "dom": "two",
        "cod": "one",
        "obj_map": { "⊥": "*", "⊤": "*" },
        "mor_map": { "id[⊥]": "id[*]", "id[⊤]": "id[*]", "u": "id[*]" },
    });
    let f = write(&dir, "bang.json", &bang);
    let out = dlens(&["validate", "-i", s(&two), s(&one), s(&f)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let missing = write(&dir, "lost.json", &serde_json::json!({ "dom": "nowhere", "cod": "one", "obj_map": {}, "mor_map": {} }));
    assert_eq!(code(&dlens(&["validate", "-i", s(&one), s(&missing)])), 1);
}
