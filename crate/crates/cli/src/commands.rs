use std::collections::BTreeMap;
use std::path::PathBuf;

use dlens_core::classify::classify;
use dlens_core::fincat::{comprehensive_factorization, to_dot, FinCat, FinFunctor, PushoutBound, RawFunctor};
use dlens_core::gen::{self, GenConfig, LensShape};
use dlens_core::idx::{
    elements, elements_raw, fibres, pullback_idx, pushforward_idx, roundtrip_idx, roundtrip_lens, IndexedSmf,
    RawIndexedSmf,
};
use dlens_core::laws::{run_suite, suite, suites, SuiteOutcome};
use dlens_core::lens::{epi_mono_factorization, ioo_ff_factorization, DeltaLens, RawDeltaLens};
use dlens_core::smult::{compose_smf, Smf};
use serde::Serialize;
use serde_json::json;

use crate::doc::{Doc, Kind, Workspace};
use crate::{CliError, FactorKind, GenKind};

/// Files produced by a command, written to a directory or printed.
pub struct Output {
    dir: Option<PathBuf>,
    dot: bool,
    files: Vec<(String, String)>,
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

impl Output {
    pub fn new(dir: Option<PathBuf>, dot: bool) -> Output {
        Output { dir, dot, files: Vec::new() }
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) {
        self.files.push((format!("{name}.json"), pretty(value)));
    }

    pub fn dot(&mut self, name: &str, render: impl FnOnce() -> String) {
        if self.dot {
            self.files.push((format!("{name}.dot"), render()));
        }
    }

    pub fn category(&mut self, name: &str, c: &FinCat) {
        self.json(name, &c.to_raw());
        self.dot(name, || to_dot(c, name, |_| None));
    }

    pub fn functor(&mut self, name: &str, f: &FinFunctor) {
        self.json(name, &f.to_raw());
        self.dot(name, || to_dot(f.dom(), name, |m| Some(format!("xlabel=\"↦ {}\"", f.cod().mor_name(f.mor(m))))));
    }

    pub fn lens(&mut self, name: &str, l: &DeltaLens) {
        self.json(name, &l.to_raw());
        self.dot(name, || l.to_dot(name));
    }

    pub fn indexed(&mut self, name: &str, x: &IndexedSmf) {
        self.json(name, &x.to_raw());
        self.dot(name, || DeltaLens::from_raw(&elements_raw(x)).map(|l| l.to_dot(name)).unwrap_or_default());
    }

    pub fn flush(self) -> Result<(), CliError> {
        match &self.dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
                for (name, content) in &self.files {
                    let path = dir.join(name);
                    std::fs::write(&path, content).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                }
            }
            None if self.files.is_empty() => {}
            None if self.files.len() == 1 => print!("{}", self.files[0].1),
            None => {
                let all: BTreeMap<&str, serde_json::Value> = self
                    .files
                    .iter()
                    .map(|(n, c)| (n.as_str(), serde_json::from_str(c).unwrap_or_else(|_| json!(c))))
                    .collect();
                print!("{}", pretty(&all));
            }
        }
        Ok(())
    }
}

fn single<'a>(ws: &'a Workspace, kinds: &[Kind], what: &str) -> Result<&'a Doc, CliError> {
    let mut found = ws.of_kind(kinds);
    match (found.next(), found.next()) {
        (Some(d), None) => Ok(d),
        (None, _) => Err(CliError::Input(format!("expected one {what} among the inputs"))),
        (Some(_), Some(_)) => Err(CliError::Input(format!("expected exactly one {what} among the inputs"))),
    }
}

fn load_lens(doc: &Doc) -> Result<DeltaLens, CliError> {
    Ok(DeltaLens::from_raw(&doc.parse::<RawDeltaLens>()?)?)
}

fn load_indexed(doc: &Doc) -> Result<IndexedSmf, CliError> {
    Ok(IndexedSmf::from_raw(&doc.parse::<RawIndexedSmf>()?)?)
}

/// Indexed data given directly or as a lens to take fibres of.
fn indexed_input(ws: &Workspace) -> Result<(String, IndexedSmf), CliError> {
    let doc = single(ws, &[Kind::Indexed, Kind::Lens], "indexed split multivalued function or lens")?;
    let x = match doc.kind {
        Kind::Lens => fibres(&load_lens(doc)?),
        _ => load_indexed(doc)?,
    };
    Ok((doc.stem(), x))
}

/// A functor document, with a missing endpoint filled in by `default`.
fn functor_input(ws: &Workspace, dom: Option<&FinCat>, cod: Option<&FinCat>) -> Result<FinFunctor, CliError> {
    let doc = single(ws, &[Kind::Functor], "functor")?;
    let mut raw: RawFunctor = doc.parse()?;
    let fill = |c: Option<&FinCat>| c.map(|c| dlens_core::fincat::CatRef::Inline(c.to_raw()));
    if raw.dom.is_none() {
        raw.dom = fill(dom);
    }
    if raw.cod.is_none() {
        raw.cod = fill(cod);
    }
    Ok(FinFunctor::from_raw(&raw, &ws.categories)?)
}

pub fn validate(ws: &Workspace, out: &mut Output) -> Result<bool, CliError> {
    let mut all_ok = true;
    let mut reports = BTreeMap::new();
    for doc in &ws.docs {
        let report = ws.validate(doc)?;
        eprintln!("{}: {} {}", doc.path.display(), doc.kind, report);
        all_ok &= report.is_ok();
        reports.insert(doc.path.display().to_string(), json!({ "kind": doc.kind.to_string(), "report": report }));
    }
    out.json("validation", &reports);
    Ok(all_ok)
}

pub fn elements_cmd(ws: &Workspace, allow_invalid: bool, out: &mut Output) -> Result<bool, CliError> {
    let doc = single(ws, &[Kind::Indexed], "indexed split multivalued function")?;
    let raw: RawIndexedSmf = doc.parse()?;
    let stem = doc.stem();
    let report = dlens_core::idx::validate_indexed_smf(&raw);
    if !report.is_ok() {
        if !allow_invalid {
            return Err(CliError::Input(format!("{}: {report}", doc.path.display())));
        }
        eprintln!("{}: {report}", doc.path.display());
        let x = IndexedSmf::from_raw_unchecked(&raw)?;
        let lens = elements_raw(&x);
        let lens_report = dlens_core::lens::check_delta_lens(&lens);
        eprintln!("elements: {lens_report}");
        out.json(&format!("{stem}.elements"), &lens);
        out.json(&format!("{stem}.elements.report"), &json!({ "indexed": report, "elements": lens_report }));
        return Ok(false);
    }
    let el = elements(&IndexedSmf::from_raw(&raw)?)?;
    out.lens(&format!("{stem}.elements"), &el.lens);
    out.json(&format!("{stem}.elements.names"), &json!({ "objects": el.objects, "morphisms": el.morphisms }));
    Ok(true)
}

pub fn fibres_cmd(ws: &Workspace, out: &mut Output) -> Result<bool, CliError> {
    let doc = single(ws, &[Kind::Lens], "delta lens")?;
    let x = fibres(&load_lens(doc)?);
    out.indexed(&format!("{}.fibres", doc.stem()), &x);
    Ok(true)
}

pub fn roundtrip(ws: &Workspace, out: &mut Output) -> Result<bool, CliError> {
    let doc = single(ws, &[Kind::Lens, Kind::Indexed], "delta lens or indexed split multivalued function")?;
    let (witness, report, invertible) = match doc.kind {
        Kind::Lens => {
            let w = roundtrip_lens(&load_lens(doc)?)?;
            (serde_json::to_value(w.to_raw()).expect("serializable"), w.law_violations(), w.is_invertible())
        }
        _ => {
            let w = roundtrip_idx(&load_indexed(doc)?)?;
            let raw = json!({
                "theta0": w.theta0.iter().map(|f| f.table()).collect::<Vec<_>>(),
                "theta1": w.theta1.iter().map(|f| f.table()).collect::<Vec<_>>(),
            });
            (raw, w.law_violations(), w.is_invertible())
        }
    };
    let ok = report.is_ok() && invertible;
    eprintln!("{}: round trip {}", doc.path.display(), if ok { "invertible" } else { "FAILED" });
    out.json(
        &format!("{}.roundtrip", doc.stem()),
        &json!({ "kind": doc.kind.to_string(), "valid": report, "invertible": invertible, "witness": witness }),
    );
    Ok(ok)
}

pub fn classify_cmd(ws: &Workspace, out: &mut Output) -> Result<bool, CliError> {
    let (stem, x) = indexed_input(ws)?;
    let report = classify(&x)?;
    eprint!("{report}");
    out.json(&format!("{stem}.classes"), &report);
    Ok(report.all_agree())
}

pub fn factor(ws: &Workspace, kind: FactorKind, out: &mut Output) -> Result<bool, CliError> {
    match kind {
        FactorKind::Comprehensive => {
            let doc = single(ws, &[Kind::Functor, Kind::Lens], "functor or lens")?;
            let f = match doc.kind {
                Kind::Lens => load_lens(doc)?.functor().clone(),
                _ => functor_input(ws, None, None)?,
            };
            let fac = comprehensive_factorization(&f);
            let stem = doc.stem();
            out.category(&format!("{stem}.middle"), &fac.mid);
            out.functor(&format!("{stem}.initial"), &fac.first);
            out.functor(&format!("{stem}.dopf"), &fac.second);
            Ok(fac.first.is_initial() && fac.second.is_discrete_opfibration())
        }
        FactorKind::IooDopf => {
            let doc = single(ws, &[Kind::Lens], "delta lens")?;
            let fac = ioo_ff_factorization(&load_lens(doc)?);
            out.functor(&format!("{}.ioo", doc.stem()), &fac.first);
            out.lens(&format!("{}.ff", doc.stem()), &fac.second);
            Ok(fac.first.is_identity_on_objects() && fac.second.law_violations().is_ok())
        }
        FactorKind::EpiMono => {
            let doc = single(ws, &[Kind::Lens], "delta lens")?;
            let fac = epi_mono_factorization(&load_lens(doc)?);
            out.lens(&format!("{}.epi", doc.stem()), &fac.first);
            out.lens(&format!("{}.mono", doc.stem()), &fac.second);
            Ok(fac.first.functor().is_surjective_on_objects()
                && fac.second.functor().is_fully_faithful()
                && fac.second.functor().is_injective_on_objects())
        }
    }
}

pub fn compose(ws: &Workspace, out: &mut Output) -> Result<bool, CliError> {
    let docs: Vec<&Doc> = ws.of_kind(&[Kind::Smf]).collect();
    if docs.len() < 2 {
        return Err(CliError::Input("compose-smf needs at least two split multivalued functions".into()));
    }
    let mut acc = Smf::from_raw(&docs[0].parse()?)?;
    for d in &docs[1..] {
        acc = compose_smf(&acc, &Smf::from_raw(&d.parse()?)?)?;
    }
    let name = docs.iter().map(|d| d.stem()).collect::<Vec<_>>().join(".");
    out.json(&format!("{name}.composite"), &acc.to_raw());
    Ok(acc.validate().is_ok())
}

pub fn pullback(ws: &Workspace, out: &mut Output) -> Result<bool, CliError> {
    let (stem, x) = indexed_input(ws)?;
    let k = functor_input(ws, None, Some(x.base()))?;
    let y = pullback_idx(&x, &k)?;
    out.indexed(&format!("{stem}.pullback"), &y);
    Ok(true)
}

pub fn pushforward(ws: &Workspace, bound: PushoutBound, out: &mut Output) -> Result<bool, CliError> {
    let (stem, x) = indexed_input(ws)?;
    let g = functor_input(ws, Some(x.base()), None)?;
    let y = pushforward_idx(&x, &g, bound)?;
    out.indexed(&format!("{stem}.pushforward"), &y);
    Ok(true)
}

pub fn generate(cfg: &GenConfig, kind: GenKind, out: &mut Output) -> Result<bool, CliError> {
    cfg.check()?;
    for i in 0..cfg.count {
        let rng = &mut cfg.rng(i);
        let name = format!("{}-{i:04}", kind.as_str());
        match kind {
            GenKind::Category => out.category(&name, &gen::random_category(rng, cfg)),
            GenKind::Functor => out.functor(&name, &gen::random_functor_pair(rng, cfg)),
            GenKind::Lens => out.lens(&name, &gen::random_lens(rng, cfg, LensShape::General)),
            GenKind::Dopf => out.lens(&name, &gen::random_lens(rng, cfg, LensShape::Dopf)),
            GenKind::Indexed => out.indexed(&name, &gen::random_idx(rng, cfg, LensShape::General)),
            GenKind::Smf => out.json(&name, &gen::random_smf(rng, cfg.max_fibre).to_raw()),
            GenKind::Cell => out.json(&name, &gen::random_cell(rng, cfg.max_fibre).to_raw()),
        }
    }
    Ok(true)
}

pub fn list_suites() {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    for s in suites() {
        if writeln!(stdout, "{:<28} {:<9} {}", s.name, s.module, s.statement).is_err() {
            break;
        }
    }
}

pub fn check_laws(names: &[String], cfg: &GenConfig, out: &mut Output) -> Result<bool, CliError> {
    cfg.check()?;
    let selected = if names.is_empty() || names.iter().any(|n| n == "all") {
        suites()
    } else {
        names
            .iter()
            .map(|n| suite(n).ok_or_else(|| CliError::Input(format!("unknown suite `{n}`"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    let mut all_ok = true;
    for s in &selected {
        let outcome: SuiteOutcome = run_suite(s, cfg);
        let status = if outcome.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<28} {}/{} in {:.2?}  {}",
            outcome.name,
            outcome.instances - outcome.failures.len(),
            outcome.instances,
            outcome.elapsed,
            outcome.statement
        );
        for c in outcome.failures.iter().take(3) {
            println!("     #{}: {}", c.index, c.detail);
        }
        if !outcome.passed() {
            all_ok = false;
            out.json(&format!("counterexamples-{}", outcome.name), &json!({ "config": cfg, "outcome": outcome }));
        }
    }
    Ok(all_ok)
}
