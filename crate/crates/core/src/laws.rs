//! Property suites over seeded instances, and the exhaustive oracles they
//! rely on.
//!
//! A [`Suite`] checks one family of laws on the instance with a given index;
//! [`run_suite`] runs it over `0..count` in parallel and reports failures in
//! index order, so the outcome does not depend on scheduling.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify, ClassTag};
use crate::error::Error;
use crate::fincat::{
    comprehensive_factorization, coproduct, decalage, product, pullback, pushout_along_ioo, subcategory, Cone,
    FinCat, FinFunctor, FunctorSearch, Mor, Obj, PushoutBound, RawCategory,
};
use crate::gen::{self, catalog, GenConfig, LensShape};
use crate::idx::*;
use crate::lens::*;
use crate::names::pair;
use crate::smult::*;

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

#[derive(Clone, Copy)]
pub struct Suite {
    pub name: &'static str,
    pub module: &'static str,
    pub statement: &'static str,
    pub check: fn(&GenConfig, usize) -> Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub statement: String,
    pub seed: u64,
    pub instances: usize,
    pub failures: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(suite: &Suite, cfg: &GenConfig) -> SuiteOutcome {
    let start = Instant::now();
    let mut failures: Vec<Counterexample> = (0..cfg.count)
        .into_par_iter()
        .filter_map(|i| (suite.check)(cfg, i).err().map(|detail| Counterexample { index: i, detail }))
        .collect();
    failures.sort_by_key(|c| c.index);
    SuiteOutcome {
        name: suite.name.to_string(),
        statement: suite.statement.to_string(),
        seed: cfg.seed,
        instances: cfg.count,
        failures,
        elapsed: start.elapsed(),
    }
}

pub fn suite(name: &str) -> Option<Suite> {
    suites().into_iter().find(|s| s.name == name)
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite {
            name: "category-constructions",
            module: "fincat",
            statement: "products, coproducts, pullbacks, décalage and comprehensive factorizations are categories",
            check: category_constructions,
        },
        Suite {
            name: "comprehensive-factorization",
            module: "fincat",
            statement: "every functor is an initial functor followed by a discrete opfibration",
            check: comprehensive,
        },
        Suite {
            name: "orthogonality",
            module: "fincat",
            statement: "initial functors are orthogonal to discrete opfibrations",
            check: orthogonality,
        },
        Suite {
            name: "pullback-universal",
            module: "fincat",
            statement: "pullbacks of categories have the universal property",
            check: pullback_universal,
        },
        Suite {
            name: "pushout-universal",
            module: "fincat",
            statement: "decided pushouts along identity-on-objects functors have the universal property",
            check: pushout_universal,
        },
        Suite {
            name: "smf-composition",
            module: "smult",
            statement: "loose composites of split multivalued functions are split, with the pullback count",
            check: smf_composition,
        },
        Suite { name: "interchange", module: "smult", statement: "the interchange law for cells", check: interchange },
        Suite {
            name: "associator-pentagon",
            module: "smult",
            statement: "associators and unitors are invertible and satisfy the pentagon",
            check: associator_pentagon,
        },
        Suite {
            name: "sigma-naturality",
            module: "smult",
            statement: "σ is natural with respect to cells",
            check: sigma_natural,
        },
        Suite {
            name: "comparison-functoriality",
            module: "smult",
            statement: "U₁ and U₂ preserve composites strictly, K∗ up to an invertible compositor",
            check: comparison_functoriality,
        },
        Suite {
            name: "adjunction-triangles",
            module: "smult",
            statement: "triangle identities for the coreflective and reflective embeddings of Sq(Set)",
            check: adjunction_triangles,
        },
        Suite {
            name: "lens-dialens",
            module: "lens",
            statement: "delta lenses are equivalent to diagrammatic delta lenses",
            check: lens_dialens,
        },
        Suite {
            name: "split-opfib-agreement",
            module: "lens",
            statement: "opcartesian, weakly opcartesian, décalage and fibrewise detectors agree",
            check: split_opfib_agreement,
        },
        Suite {
            name: "retrofunctor-cofree",
            module: "lens",
            statement: "underlying retrofunctors satisfy R1–R3 and cofree lenses reproduce their lifts",
            check: retrofunctor_cofree,
        },
        Suite {
            name: "laxity-vs-category-laws",
            module: "idx",
            statement: "indexed data validates iff its elements form a category and a delta lens",
            check: laxity,
        },
        Suite {
            name: "roundtrips",
            module: "idx",
            statement: "elements and fibres are mutually inverse up to canonical isomorphism",
            check: roundtrips,
        },
        Suite {
            name: "pullback-elements",
            module: "idx",
            statement: "elements of a reindexing are the pullback of the elements",
            check: pullback_elements,
        },
        Suite {
            name: "pushforward-opcartesian",
            module: "idx",
            statement: "pushforward is opcartesian or undecided",
            check: pushforward_opcartesian,
        },
        Suite {
            name: "idx-products",
            module: "idx",
            statement: "products and coproducts of indexed data have their universal properties",
            check: idx_products,
        },
        Suite {
            name: "morphism-functoriality",
            module: "idx",
            statement: "elements and fibres act functorially on morphisms",
            check: morphism_functoriality,
        },
        Suite {
            name: "classification-agreement",
            module: "classify",
            statement: "indexed-level and lens-level class predicates agree",
            check: classification,
        },
        Suite {
            name: "generation",
            module: "cli",
            statement: "generation is deterministic and yields valid instances",
            check: generation,
        },
    ]
}

/// A configuration shrunk so that exhaustive enumeration stays cheap.
pub fn small(cfg: &GenConfig, objects: usize, fibre: usize) -> GenConfig {
    GenConfig {
        max_objects: cfg.max_objects.min(objects),
        max_fibre: cfg.max_fibre.min(fibre),
        max_hom: cfg.max_hom.min(2),
        max_morphisms: cfg.max_morphisms.min(8),
        ..cfg.clone()
    }
}

// ---------------------------------------------------------------------------
// Exhaustive oracles.

/// Categories used as test objects in universal-property searches.
pub fn probes(max_objects: usize) -> Vec<Arc<FinCat>> {
    catalog::all(max_objects).into_iter().map(|(_, c)| c).collect()
}

/// Unique mediating functor for every cone over `(f, g)` from a probe.
pub fn check_pullback_universal(f: &FinFunctor, g: &FinFunctor, cone: &Cone, probes: &[Arc<FinCat>]) -> Check {
    for t in probes {
        for a in FunctorSearch::new(t, f.dom()).all() {
            let af = ok(a.then(f), "composite")?;
            for b in FunctorSearch::new(t, g.dom()).all() {
                if af != ok(b.then(g), "composite")? {
                    continue;
                }
                let n = FunctorSearch::new(t, &cone.cat)
                    .all()
                    .into_iter()
                    .filter(|h| h.then(&cone.left).ok() == Some(a.clone()) && h.then(&cone.right).ok() == Some(b.clone()))
                    .count();
                ensure(n == 1, || format!("{n} mediating functors from a probe with {} objects", t.num_objects()))?;
            }
        }
    }
    Ok(())
}

/// Unique mediating functor for every cocone under `(p, i)` into a probe.
pub fn check_pushout_universal(
    p: &FinFunctor,
    i: &FinFunctor,
    left: &FinFunctor,
    right: &FinFunctor,
    probes: &[Arc<FinCat>],
) -> Check {
    ensure(p.then(left).ok() == i.then(right).ok(), || "cocone does not commute".into())?;
    let apex = left.cod().clone();
    for t in probes {
        for a in FunctorSearch::new(p.cod(), t).all() {
            let pa = ok(p.then(&a), "composite")?;
            for y in FunctorSearch::new(i.cod(), t).all() {
                if pa != ok(i.then(&y), "composite")? {
                    continue;
                }
                let mut search = FunctorSearch::new(&apex, t);
                let mut consistent = true;
                for m in p.cod().morphisms() {
                    consistent &= search.fix_mor(left.mor(m), a.mor(m));
                }
                for m in i.cod().morphisms() {
                    consistent &= search.fix_mor(right.mor(m), y.mor(m));
                }
                let n = if consistent { search.run(Some(2)).len() } else { 0 };
                ensure(n == 1, || format!("{n} mediating functors into a probe with {} objects", t.num_objects()))?;
            }
        }
    }
    Ok(())
}

/// Every commuting square from `e` to `d` has exactly one diagonal filler.
pub fn check_orthogonal(e: &FinFunctor, d: &FinFunctor) -> Check {
    let (a, m) = (e.dom(), e.cod());
    let (y, z) = (d.dom(), d.cod());
    for g in FunctorSearch::new(a, y).all() {
        let gd = ok(g.then(d), "composite")?;
        for h in FunctorSearch::new(m, z).all() {
            if gd != ok(e.then(&h), "composite")? {
                continue;
            }
            let mut search = FunctorSearch::new(m, y).allow(|w, k| d.mor(k) == h.mor(w));
            let mut consistent = true;
            for w in a.morphisms() {
                consistent &= search.fix_mor(e.mor(w), g.mor(w));
            }
            let n = if consistent { search.run(Some(2)).len() } else { 0 };
            ensure(n == 1, || format!("{n} diagonal fillers"))?;
        }
    }
    Ok(())
}

/// Orthogonality of the initial part of every catalog functor against every
/// catalog discrete opfibration, on categories with at most `max_objects`
/// objects. Returns the number of pairs checked.
pub fn orthogonality_catalog(max_objects: usize) -> std::result::Result<usize, String> {
    let cats = probes(max_objects);
    let mut initial = Vec::new();
    let mut dopfs = Vec::new();
    for a in &cats {
        for b in &cats {
            for f in FunctorSearch::new(a, b).all() {
                if f.is_discrete_opfibration() {
                    dopfs.push(f.clone());
                }
                let fac = comprehensive_factorization(&f);
                ensure(fac.first.is_initial() && fac.second.is_discrete_opfibration(), || "factorization".into())?;
                initial.push(fac.first);
            }
        }
    }
    initial.dedup_by(|x, y| x == y);
    let mut n = 0;
    for e in &initial {
        for d in &dopfs {
            check_orthogonal(e, d)?;
            n += 1;
        }
    }
    Ok(n)
}

/// Functors `h` making `(h, k)` a lens morphism `l -> m`.
pub fn lens_morphisms_over(l: &DeltaLens, m: &DeltaLens, k: &FinFunctor) -> Vec<FinFunctor> {
    let Ok(fk) = l.functor().then(k) else { return Vec::new() };
    let found = FunctorSearch::new(l.dom(), m.dom()).allow(|w, v| m.functor().mor(v) == fk.mor(w)).all();
    found
        .into_iter()
        .filter(|h| LensMorphism::new_unchecked(l.clone(), m.clone(), h.clone(), k.clone()).law_violations().is_ok())
        .collect()
}

fn all_functions(d: &FinSet, c: &FinSet, keep: impl Fn(usize, usize) -> bool) -> Vec<FinFunction> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for i in d.indices() {
        out = out
            .into_iter()
            .flat_map(|m| c.indices().filter(|&j| keep(i, j)).map(move |j| [m.clone(), vec![j]].concat()).collect::<Vec<_>>())
            .collect();
    }
    out.into_iter().map(|m| FinFunction::new(d.clone(), c.clone(), m)).collect()
}

/// Every choice of one entry from each list.
fn choices<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.into_iter()
            .flat_map(|prefix| list.iter().map(move |x| [prefix.clone(), vec![x.clone()]].concat()))
            .collect()
    })
}

/// Every indexed morphism `source -> target` over the base functor `k`.
///
/// Object components are enumerated freely; each carrier component is then
/// restricted to values compatible with `s`, `t` and `σ` before the full law
/// check.
pub fn idx_morphisms_over(source: &IndexedSmf, target: &IndexedSmf, k: &FinFunctor) -> Vec<IdxMorphism> {
    let b = source.base().clone();
    let objs: Vec<Vec<FinFunction>> =
        b.objects().map(|o| all_functions(source.objset(o), target.objset(k.ob(o)), |_, _| true)).collect();
    let mut out = Vec::new();
    for theta0 in choices(&objs) {
        let mors: Vec<Vec<FinFunction>> = b
            .morphisms()
            .map(|u| {
                let (fu, gu) = (source.carrier(u), target.carrier(k.mor(u)));
                let (tx, ty) = (&theta0[b.src(u).0], &theta0[b.tgt(u).0]);
                let forced: HashMap<usize, usize> =
                    fu.src().indices().map(|a| (fu.sigma.at(a), gu.sigma.at(tx.at(a)))).collect();
                all_functions(fu.carrier(), gu.carrier(), |i, j| {
                    gu.s.at(j) == tx.at(fu.s.at(i))
                        && gu.t.at(j) == ty.at(fu.t.at(i))
                        && forced.get(&i).map_or(true, |&f| f == j)
                })
            })
            .collect();
        for theta1 in choices(&mors) {
            let m = IdxMorphism::new_unchecked(source.clone(), target.clone(), k.clone(), theta0.clone(), theta1);
            if m.law_violations().is_ok() {
                out.push(m);
            }
        }
    }
    out
}

/// Every indexed morphism `source -> target` over any base functor.
pub fn idx_morphisms(source: &IndexedSmf, target: &IndexedSmf) -> Vec<IdxMorphism> {
    FunctorSearch::new(source.base(), target.base())
        .all()
        .iter()
        .flat_map(|k| idx_morphisms_over(source, target, k))
        .collect()
}

/// Morphisms between two fixed indexed data, as a plain key.
fn idx_key(m: &IdxMorphism) -> Vec<usize> {
    let (k, b) = (&m.k, m.source.base());
    let mut key: Vec<usize> = b.objects().map(|o| k.ob(o).0).collect();
    key.extend(b.morphisms().map(|u| k.mor(u).0));
    for th in m.theta0.iter().chain(&m.theta1) {
        key.extend(th.dom().indices().map(|i| th.at(i)));
    }
    key
}

fn morphisms_between(source: &IndexedSmf, target: &IndexedSmf, over_identity: bool) -> Vec<IdxMorphism> {
    if !over_identity {
        idx_morphisms(source, target)
    } else if source.base() == target.base() {
        idx_morphisms_over(source, target, &FinFunctor::identity(source.base().clone()))
    } else {
        Vec::new()
    }
}

/// Whether `pairs` hits each of the `expected` pairs exactly once, given
/// that every pair is drawn from a set of that size.
fn bijective(pairs: Vec<(Vec<usize>, Vec<usize>)>, expected: usize) -> Check {
    let n = pairs.len();
    let distinct: std::collections::HashSet<_> = pairs.into_iter().collect();
    ensure(n == expected && distinct.len() == n, || {
        format!("{n} mediating morphisms ({} distinct) for {expected} cones", distinct.len())
    })
}

/// The product universal property against every probe: composing with the
/// projections is a bijection from morphisms into the product onto pairs of
/// morphisms into the factors.
pub fn check_product_universal(lim: &IdxLimit, probes: &[IndexedSmf], over_identity: bool) -> Check {
    let (x, y) = (&lim.left.target, &lim.right.target);
    for t in probes {
        let expected = morphisms_between(t, x, over_identity).len() * morphisms_between(t, y, over_identity).len();
        let pairs = morphisms_between(t, &lim.object, over_identity)
            .iter()
            .map(|m| Ok((idx_key(&ok(m.then(&lim.left), "composite")?), idx_key(&ok(m.then(&lim.right), "composite")?))))
            .collect::<std::result::Result<Vec<_>, String>>()?;
        bijective(pairs, expected)?;
    }
    Ok(())
}

/// The coproduct universal property against every probe, dually.
pub fn check_coproduct_universal(lim: &IdxLimit, probes: &[IndexedSmf], over_identity: bool) -> Check {
    let (x, y) = (&lim.left.source, &lim.right.source);
    for t in probes {
        let expected = morphisms_between(x, t, over_identity).len() * morphisms_between(y, t, over_identity).len();
        let pairs = morphisms_between(&lim.object, t, over_identity)
            .iter()
            .map(|m| Ok((idx_key(&ok(lim.left.then(m), "composite")?), idx_key(&ok(lim.right.then(m), "composite")?))))
            .collect::<std::result::Result<Vec<_>, String>>()?;
        bijective(pairs, expected)?;
    }
    Ok(())
}

/// The opcartesian property of the unit of pushforward against the given
/// lenses over the codomain of `g`.
pub fn check_opcartesian(unit: &LensMorphism, targets: &[DeltaLens]) -> std::result::Result<usize, String> {
    let (l, pushed, g) = (&unit.source, &unit.target, &unit.k);
    ensure(unit.law_violations().is_ok(), || format!("unit: {}", unit.law_violations()))?;
    let id_c = FinFunctor::identity(g.cod().clone());
    let mut cones = 0;
    for t in targets.iter().filter(|t| t.cod() == g.cod()) {
        let mediators = lens_morphisms_over(pushed, t, &id_c);
        for h in lens_morphisms_over(l, t, g) {
            let n = mediators.iter().filter(|k| unit.h.then(k).ok() == Some(h.clone())).count();
            ensure(n == 1, || format!("{n} mediating lens morphisms"))?;
            cones += 1;
        }
    }
    Ok(cones)
}

/// Every lens between catalog categories with at most `max_objects`
/// objects, at most `per_functor` structures per functor.
pub fn catalog_lenses(max_objects: usize, per_functor: usize) -> Vec<DeltaLens> {
    let cats = probes(max_objects);
    let mut out = Vec::new();
    for a in &cats {
        for b in &cats {
            for f in FunctorSearch::new(a, b).all() {
                out.extend(gen::enumerate::lens_structures(&f, Some(per_functor)));
            }
        }
    }
    out
}

/// The opcartesian property of pushforward for every catalog lens with
/// codomain of at most two objects and domain of at most `max_morphisms`
/// morphisms, along every functor into a catalog category with at most two
/// objects. Returns the counts of decided cases, undecided cases and cones
/// checked.
pub fn pushforward_exhaustive(
    max_objects: usize,
    max_morphisms: usize,
) -> std::result::Result<(usize, usize, usize), String> {
    let lenses: Vec<DeltaLens> = catalog_lenses(max_objects, 8)
        .into_iter()
        .filter(|l| l.cod().num_objects() <= 2 && l.dom().num_morphisms() <= max_morphisms)
        .collect();
    let targets = catalog_lenses(2, 4);
    let results: Vec<std::result::Result<Option<usize>, String>> = lenses
        .par_iter()
        .flat_map_iter(|l| {
            let targets = &targets;
            probes(2).into_iter().flat_map(move |c| {
                FunctorSearch::new(l.cod(), &c).all().into_iter().map(move |g| {
                    match pushforward_lens(l, &g, PushoutBound::default()) {
                        Ok(unit) => check_opcartesian(&unit, targets).map(Some),
                        Err(Error::Undecided(_)) => Ok(None),
                        Err(e) => Err(format!("pushforward failed: {e}")),
                    }
                })
            })
        })
        .collect();
    let mut counts = (0, 0, 0);
    for r in results {
        match r? {
            Some(cones) => {
                counts.0 += 1;
                counts.2 += cones;
            }
            None => counts.1 += 1,
        }
    }
    Ok(counts)
}

/// Two parallel arrows over `u` with one chosen lift, pushed to the terminal
/// category: the gluing creates a free endomorphism, so the answer must be
/// Undecided rather than a finite table.
pub fn curated_loop_case() -> (IndexedSmf, FinFunctor) {
    let pp = Arc::new(catalog::parallel_pair());
    let two = Arc::new(catalog::interval());
    let ob = |o: Obj| two.obj(if pp.obj_name(o) == "x" { "⊥" } else { "⊤" }).expect("object");
    let f = FinFunctor::new(
        pp.clone(),
        two.clone(),
        pp.objects().map(ob).collect(),
        pp.morphisms()
            .map(|m| if pp.is_identity(m) { two.identity(ob(pp.src(m))) } else { two.mor("u").expect("u") })
            .collect(),
    )
    .expect("functor");
    let lift = pp.mor("f").expect("f");
    let l = DeltaLens::new(f, |o, u| if two.is_identity(u) { pp.identity(o) } else { lift }).expect("lens");
    let one = Arc::new(catalog::terminal());
    let bang = FunctorSearch::new(&two, &one).first().expect("terminal");
    (fibres(&l), bang)
}

/// Every indexed data over catalog bases with at most two objects and
/// fibres of at most two elements that arises from catalog lenses.
pub fn small_idx_instances() -> Vec<IndexedSmf> {
    let mut out: Vec<IndexedSmf> = Vec::new();
    for l in catalog_lenses(3, 4) {
        if l.cod().num_objects() > 2 {
            continue;
        }
        let x = fibres(&l);
        if x.base().objects().all(|o| x.objset(o).len() <= 2) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Product and coproduct universal properties, both over varying bases and
/// fibrewise, for every unordered pair from `instances`, tested against every probe
/// from `instances`. Returns the number of pairs checked.
pub fn products_exhaustive(instances: &[IndexedSmf], probes: &[IndexedSmf]) -> std::result::Result<usize, String> {
    let pairs: Vec<(&IndexedSmf, &IndexedSmf)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, x)| instances[i..].iter().map(move |y| (x, y)))
        .collect();
    let results: Vec<Check> = pairs
        .par_iter()
        .map(|&(x, y)| {
            if x.base() == y.base() {
                let same: Vec<IndexedSmf> = probes.iter().filter(|t| t.base() == x.base()).cloned().collect();
                check_product_universal(&ok(fib_product_idx(x, y), "fibre product")?, &same, true)?;
                check_coproduct_universal(&ok(fib_coproduct_idx(x, y), "fibre coproduct")?, &same, true)?;
            }
            if x.base().num_objects() * y.base().num_objects() <= 2 {
                check_product_universal(&product_idx(x, y), probes, false)?;
            }
            if x.base().num_objects() + y.base().num_objects() <= 3 {
                check_coproduct_universal(&coproduct_idx(x, y), probes, false)?;
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Check>()?;
    Ok(pairs.len())
}

// ---------------------------------------------------------------------------
// Per-instance checks.

fn report(r: crate::report::ValidationReport, what: &str) -> Check {
    ensure(r.is_ok(), || format!("{what}: {r}"))
}

fn category_constructions(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let c3 = small(cfg, 3, 3);
    let a = Arc::new(gen::random_category(rng, &c3));
    let b = Arc::new(gen::random_category(rng, &c3));
    report(a.law_violations(), "random category")?;
    let p = product(&a, &b);
    report(p.cat.law_violations(), "product")?;
    report(p.left.law_violations(), "projection")?;
    let s = coproduct(&a, &b);
    report(s.cat.law_violations(), "coproduct")?;
    let dec = decalage(&a);
    report(dec.cat.law_violations(), "décalage")?;
    report(dec.counit.law_violations(), "décalage counit")?;
    ensure(dec.cat.num_objects() == a.num_morphisms(), || "décalage object count".into())?;
    let c = Arc::new(gen::random_category(rng, &c3));
    let (Some(f), Some(g)) = (gen::random_functor(rng, &a, &c), gen::random_functor(rng, &b, &c)) else {
        return Err("no functor into a nonempty category".into());
    };
    let pb = ok(pullback(&f, &g), "pullback")?;
    report(pb.cat.law_violations(), "pullback")?;
    let fac = comprehensive_factorization(&f);
    report(fac.mid.law_violations(), "factorization middle")
}

fn comprehensive(cfg: &GenConfig, i: usize) -> Check {
    let f = gen::random_functor_pair(&mut cfg.rng(i), cfg);
    let fac = comprehensive_factorization(&f);
    ensure(fac.first.is_initial(), || "first factor is not initial".into())?;
    ensure(fac.second.is_discrete_opfibration(), || "second factor is not a discrete opfibration".into())?;
    ensure(ok(fac.first.then(&fac.second), "composite")? == f, || "factors do not compose to the input".into())
}

fn orthogonality(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let c = small(cfg, 3, 2);
    let f = gen::random_functor_pair(rng, &c);
    let e = comprehensive_factorization(&f).first;
    let d = gen::random_lens(rng, &c, LensShape::Dopf);
    check_orthogonal(&e, d.functor())
}

fn pullback_universal(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let c = small(cfg, 2, 2);
    let base = Arc::new(gen::random_category(rng, &c));
    let a = Arc::new(gen::random_category(rng, &c));
    let b = Arc::new(gen::random_category(rng, &c));
    let (Some(f), Some(g)) = (gen::random_functor(rng, &a, &base), gen::random_functor(rng, &b, &base)) else {
        return Err("no functor".into());
    };
    let cone = ok(pullback(&f, &g), "pullback")?;
    check_pullback_universal(&f, &g, &cone, &probes(2))
}

fn pushout_universal(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let c = small(cfg, 3, 2);
    let a = Arc::new(gen::random_category(rng, &c));
    let mut mors: Vec<Mor> = a.objects().map(|o| a.identity(o)).collect();
    let extra: Vec<Mor> = a.morphisms().filter(|&m| !a.is_identity(m) && rng.gen_bool(0.5)).collect();
    // Keep the chosen arrows only if they are closed under composition.
    let closed = extra.iter().all(|&m| extra.iter().all(|&n| a.compose(m, n).map_or(true, |k| extra.contains(&k) || a.is_identity(k))));
    if closed {
        mors.extend(extra);
    }
    let (x, p) = ok(subcategory(&a, &mors, &[]), "subcategory")?;
    let y = Arc::new(gen::random_category(rng, &c));
    let Some(j) = gen::random_functor(rng, &x, &y) else { return Err("no functor".into()) };
    match pushout_along_ioo(&p, &j, PushoutBound::default()) {
        Ok(po) => check_pushout_universal(&p, &j, &po.left, &po.right, &probes(2)),
        Err(Error::Undecided(_)) => Ok(()),
        Err(e) => Err(format!("pushout failed: {e}")),
    }
}

fn smf_composition(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let path = gen::random_smf_path(rng, 2, cfg.max_fibre);
    let (m1, m2) = (&path[0], &path[1]);
    let c = ok(compose_smf(m1, m2), "compose")?;
    report(validate_smf(&c), "composite")?;
    let expected: usize = m1
        .tgt()
        .indices()
        .map(|b| preimage_size(&m1.t, b) * preimage_size(&m2.s, b))
        .sum();
    ensure(c.carrier().len() == expected, || format!("carrier has {} elements, expected {expected}", c.carrier().len()))
}

fn preimage_size(f: &FinFunction, b: usize) -> usize {
    f.dom().indices().filter(|&i| f.at(i) == b).count()
}

fn interchange(cfg: &GenConfig, i: usize) -> Check {
    let [[c11, c12], [c21, c22]] = gen::random_grid(&mut cfg.rng(i), cfg.max_fibre.min(3));
    for c in [&c11, &c12, &c21, &c22] {
        report(c.validate(), "generated cell")?;
    }
    let rows = ok(ok(c11.loose_then(&c12), "row")?.tight_then(&ok(c21.loose_then(&c22), "row")?), "rows")?;
    let cols = ok(ok(c11.tight_then(&c21), "column")?.loose_then(&ok(c12.tight_then(&c22), "column")?), "columns")?;
    report(rows.validate(), "composite")?;
    ensure(rows == cols, || "interchange fails".into())
}

fn associator_pentagon(cfg: &GenConfig, i: usize) -> Check {
    let path = gen::random_smf_path(&mut cfg.rng(i), 4, cfg.max_fibre.min(3));
    let (m1, m2, m3, m4) = (&path[0], &path[1], &path[2], &path[3]);
    let a = ok(associator(m1, m2, m3), "associator")?;
    report(a.validate(), "associator")?;
    ensure(a.is_invertible(), || "associator is not invertible".into())?;
    let inv = a.inverse().ok_or("no inverse")?;
    ensure(ok(a.tight_then(&inv), "inverse")?.is_identity(), || "associator inverse".into())?;
    for u in [left_unitor(m1), right_unitor(m1)] {
        report(u.validate(), "unitor")?;
        ensure(u.is_invertible(), || "unitor is not invertible".into())?;
    }
    let id = SmultCell::identity_on;
    let m34 = ok(m3.then(m4), "compose")?;
    let m23 = ok(m2.then(m3), "compose")?;
    let m12 = ok(m1.then(m2), "compose")?;
    let left = ok(
        ok(associator(m1, m2, &m34), "associator")?.tight_then(&ok(associator(&m12, m3, m4), "associator")?),
        "pentagon",
    )?;
    let right = ok(id(m1).loose_then(&ok(associator(m2, m3, m4), "associator")?), "whisker")?;
    let right = ok(right.tight_then(&ok(associator(m1, &m23, m4), "associator")?), "pentagon")?;
    let right = ok(right.tight_then(&ok(ok(associator(m1, m2, m3), "associator")?.loose_then(&id(m4)), "whisker")?), "pentagon")?;
    ensure(left == right, || "pentagon fails".into())
}

fn sigma_natural(cfg: &GenConfig, i: usize) -> Check {
    let c = gen::random_cell(&mut cfg.rng(i), cfg.max_fibre.min(3));
    report(c.validate(), "generated cell")?;
    report(sigma_component(&c.top).validate(), "σ component")?;
    let (lhs, rhs) = ok(sigma_naturality(&c), "naturality")?;
    ensure(lhs == rhs, || "σ naturality square does not commute".into())
}

fn comparison_functoriality(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let max = cfg.max_fibre.min(3);
    let path = gen::random_smf_path(rng, 2, max);
    let (m1, m2) = (&path[0], &path[1]);
    let m12 = ok(m1.then(m2), "compose")?;
    ensure(u1(&m12) == ok(u1(m1).then(&u1(m2)), "compose")?, || "U₁ on loose composites".into())?;
    ensure(u2(&m12) == ok(u2(m1).then(&u2(m2)), "compose")?, || "U₂ on loose composites".into())?;
    let [[c11, c12], [c21, _]] = gen::random_grid(rng, max);
    let loose = ok(c11.loose_then(&c12), "compose")?;
    let tight = ok(c11.tight_then(&c21), "compose")?;
    ensure(u1_cell(&loose) == ok(u1_cell(&c11).loose_then(&u1_cell(&c12)), "U₁")?, || "U₁ on loose cells".into())?;
    ensure(u2_cell(&loose) == ok(u2_cell(&c11).loose_then(&u2_cell(&c12)), "U₂")?, || "U₂ on loose cells".into())?;
    ensure(u1_cell(&tight) == ok(u1_cell(&c11).tight_then(&u1_cell(&c21)), "U₁")?, || "U₁ on tight cells".into())?;
    ensure(u2_cell(&tight) == ok(u2_cell(&c11).tight_then(&u2_cell(&c21)), "U₂")?, || "U₂ on tight cells".into())?;
    let (f, g) = (u1(m1), u1(m2));
    let comp = ok(k_star_compositor(&f, &g), "compositor")?;
    report(comp.validate(), "compositor")?;
    ensure(comp.alpha.is_bijective(), || "K∗ compositor is not invertible".into())?;
    let sq = u1_cell(&tight);
    report(k_star_cell(&sq).validate(), "K∗ on a square")
}

fn adjunction_triangles(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let m = gen::random_smf(rng, cfg.max_fibre.min(3));
    let f = u1(&gen::random_smf(rng, cfg.max_fibre.min(3)));
    let eps = counit_component(&m);
    report(eps.validate(), "counit")?;
    let whisker = u1_cell(&eps);
    ensure(whisker.left.is_identity() && whisker.right.is_identity() && whisker.top == whisker.bottom, || {
        "U₁ε is not an identity".into()
    })?;
    ensure(counit_component(&embed_coreflective(&f)).is_identity(), || "ε at an embedded function".into())?;
    let eta = reflective_unit_component(&m);
    report(eta.validate(), "unit")?;
    let whisker = u1_cell(&eta);
    ensure(whisker.left.is_identity() && whisker.right.is_identity() && whisker.top == whisker.bottom, || {
        "U₁η is not an identity".into()
    })?;
    ensure(u1(&embed_reflective(&f)) == f, || "U₁ R is not the identity".into())?;
    ensure(reflective_unit_component(&embed_reflective(&f)).is_identity(), || "η at an embedded function".into())
}

/// A copy of `c` with every morphism name prefixed, and the isomorphism
/// into it.
fn renamed(c: &Arc<FinCat>, prefix: &str) -> std::result::Result<FinFunctor, String> {
    let raw = c.to_raw();
    let rn = |s: &str| format!("{prefix}{s}");
    let copy = RawCategory {
        objects: raw.objects.clone(),
        morphisms: raw
            .morphisms
            .iter()
            .map(|m| crate::fincat::RawMorphism { id: rn(&m.id), src: m.src.clone(), tgt: m.tgt.clone() })
            .collect(),
        identities: raw.identities.iter().map(|(k, v)| (k.clone(), rn(v))).collect(),
        compose: raw
            .compose
            .iter()
            .map(|k| crate::fincat::RawComposite { first: rn(&k.first), then: rn(&k.then), result: rn(&k.result) })
            .collect(),
    };
    let d = Arc::new(ok(FinCat::from_raw(&copy), "renamed copy")?);
    ok(
        FinFunctor::new(
            c.clone(),
            d.clone(),
            c.objects().map(|o| d.obj(c.obj_name(o)).expect("renamed")).collect(),
            c.morphisms().map(|m| d.mor(&rn(c.mor_name(m))).expect("renamed")).collect(),
        ),
        "renaming",
    )
}

fn lens_dialens(cfg: &GenConfig, i: usize) -> Check {
    let l = gen::random_lens(&mut cfg.rng(i), cfg, LensShape::General);
    report(l.law_violations(), "generated lens")?;
    let d = hat_lambda(&l);
    report(d.law_violations(), "Λ̂ of a lens")?;
    let back = ok(hat_upsilon(&d), "Υ̂")?;
    ensure(back.to_raw() == l.to_raw(), || "Υ̂ Λ̂ is not the identity".into())?;
    // A diagram whose top category is a renamed copy of the chosen lifts.
    let iso = renamed(d.p().dom(), "c.")?;
    let inv_obj: Vec<Obj> = {
        let mut v = vec![Obj(0); iso.cod().num_objects()];
        for o in iso.dom().objects() {
            v[iso.ob(o).0] = o;
        }
        v
    };
    let inv_mor: Vec<Mor> = {
        let mut v = vec![Mor(0); iso.cod().num_morphisms()];
        for m in iso.dom().morphisms() {
            v[iso.mor(m).0] = m;
        }
        v
    };
    let inv = FinFunctor::new_unchecked(iso.cod().clone(), iso.dom().clone(), inv_obj, inv_mor);
    let p = ok(inv.then(d.p()), "composite")?;
    let d2 = ok(DiaLens::new(p.clone(), d.f().clone()), "diagram")?;
    let (l2, j) = ok(lens_from_diagram(&d2), "Υ")?;
    let (_, incl) = lambda(&l2);
    ensure(j.is_isomorphism() && j.is_identity_on_objects(), || "j is not an identity-on-objects iso".into())?;
    ensure(ok(j.then(&incl), "composite")? == p, || "inclusion ∘ j ≠ p".into())
}

fn opfib_instance(cfg: &GenConfig, i: usize) -> DeltaLens {
    let shape = match i % 5 {
        0 => LensShape::Projection,
        1 => LensShape::Dopf,
        _ => LensShape::General,
    };
    gen::random_lens(&mut cfg.rng(i), cfg, shape)
}

/// The split-opfibration verdicts of the four detectors, and whether the
/// instance was built as a positive.
pub fn opfib_verdicts(cfg: &GenConfig, i: usize) -> ([bool; 4], bool) {
    let l = opfib_instance(cfg, i);
    let v = [
        is_split_opfibration(&l, OpfibMode::Opcartesian),
        is_split_opfibration(&l, OpfibMode::WeaklyOpcartesian),
        is_split_opfibration(&l, OpfibMode::Decalage),
        is_split_opfibration_idx(&fibres(&l)),
    ];
    (v, i % 5 < 2)
}

fn split_opfib_agreement(cfg: &GenConfig, i: usize) -> Check {
    let (v, positive) = opfib_verdicts(cfg, i);
    ensure(v.iter().all(|&x| x == v[0]), || format!("detectors disagree: {v:?}"))?;
    ensure(!positive || v[0], || "constructed split opfibration rejected".into())
}

fn retrofunctor_cofree(cfg: &GenConfig, i: usize) -> Check {
    let l = gen::random_lens(&mut cfg.rng(i), &small(cfg, 3, 2), LensShape::General);
    let r = l.underlying_retrofunctor();
    report(r.law_violations(), "underlying retrofunctor")?;
    let c = cofree_lens(&r);
    report(c.law_violations(), "cofree lens")?;
    let (a, b, x) = (r.dom(), r.cod(), c.dom());
    for o in a.objects() {
        for &u in b.out_of(r.ob(o)) {
            let xo = x.obj(a.obj_name(o)).ok_or("cofree object")?;
            let want = pair(a.mor_name(r.lift(o, u)), b.mor_name(u));
            ensure(x.mor_name(c.lift(xo, u)) == want, || format!("cofree lift at ({}, {})", a.obj_name(o), b.mor_name(u)))?;
        }
    }
    ensure(is_cofree(&c), || "cofree lens not recognised".into())
}

/// Whether validation of `raw` agrees with validating its elements.
pub fn laxity_agrees(raw: &RawIndexedSmf) -> std::result::Result<bool, String> {
    let valid = validate_indexed_smf(raw).is_ok();
    let lens_ok = match IndexedSmf::from_raw_unchecked(raw) {
        Ok(x) => check_delta_lens(&elements_raw(&x)).is_ok(),
        Err(_) => false,
    };
    ensure(valid == lens_ok, || format!("validation says {valid}, elements say {lens_ok}"))?;
    Ok(valid)
}

fn laxity(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let x = gen::random_idx(rng, cfg, LensShape::General);
    ensure(laxity_agrees(&x.to_raw())?, || "generated data rejected".into())?;
    if let Some(m) = gen::mutate_idx(rng, &x) {
        laxity_agrees(&m)?;
    }
    Ok(())
}

fn roundtrips(cfg: &GenConfig, i: usize) -> Check {
    let l = gen::random_lens(&mut cfg.rng(i), cfg, LensShape::General);
    let w = ok(roundtrip_lens(&l), "lens round trip")?;
    ensure(w.is_invertible(), || "lens witness".into())?;
    let x = fibres(&l);
    let v = ok(roundtrip_idx(&x), "indexed round trip")?;
    ensure(v.is_invertible(), || "indexed witness".into())
}

fn pullback_elements(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let c = small(cfg, 3, 3);
    let l = gen::random_lens(rng, &c, LensShape::General);
    let x = fibres(&l);
    let d = Arc::new(gen::random_category(rng, &c));
    let Some(k) = gen::random_functor(rng, &d, l.cod()) else { return Err("no functor".into()) };
    pullback_commutes(&x, &l, &k)
}

/// `El(k* X) ≅ El(X) ×_B D` via `(d, a) ↦ (a, d)`.
pub fn pullback_commutes(x: &IndexedSmf, l: &DeltaLens, k: &FinFunctor) -> Check {
    let y = ok(pullback_idx(x, k), "reindexing")?;
    report(y.law_violations(), "reindexed data")?;
    let el = ok(elements(&y), "elements")?;
    let lx = ok(elements(x), "elements")?.lens;
    let cone = ok(pullback(lx.functor(), k), "pullback")?;
    let (e, p) = (el.lens.dom(), &cone.cat);
    let obj_map = e
        .objects()
        .map(|o| {
            let (dn, a) = &el.objects[e.obj_name(o)];
            p.obj(&pair(&pair(&lx_name_obj(x, l, a, dn, k)?, a), dn)).ok_or_else(|| "object".to_string())
        })
        .collect::<std::result::Result<Vec<_>, String>>();
    let obj_map = match obj_map {
        Ok(v) => v,
        Err(_) => return Err("element names do not match the pullback".into()),
    };
    let mor_map = e
        .morphisms()
        .map(|m| {
            let (un, w) = &el.morphisms[e.mor_name(m)];
            let u = k.cod().mor_name(k.mor(k.dom().mor(un).expect("base morphism")));
            p.mor(&pair(&pair(u, w), un)).ok_or_else(|| "morphism".to_string())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    let h = ok(FinFunctor::new(e.clone(), p.clone(), obj_map, mor_map), "comparison")?;
    ensure(h.is_isomorphism(), || "comparison is not an isomorphism".into())
}

fn lx_name_obj(_x: &IndexedSmf, _l: &DeltaLens, _a: &str, dn: &str, k: &FinFunctor) -> std::result::Result<String, String> {
    let d = k.dom().obj(dn).ok_or("base object")?;
    Ok(k.cod().obj_name(k.ob(d)).to_string())
}

fn pushforward_opcartesian(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let c = small(cfg, 2, 2);
    let l = gen::random_lens(rng, &c, LensShape::General);
    let cats = probes(2);
    let target = cats.choose(rng).expect("catalog").clone();
    let Some(g) = gen::random_functor(rng, l.cod(), &target) else { return Ok(()) };
    let targets: Vec<DeltaLens> = catalog_lenses(2, 2).into_iter().filter(|t| t.cod() == &target).take(8).collect();
    match pushforward_lens(&l, &g, PushoutBound::default()) {
        Ok(unit) => check_opcartesian(&unit, &targets).map(|_| ()),
        Err(Error::Undecided(_)) => Ok(()),
        Err(e) => Err(format!("pushforward failed: {e}")),
    }
}

fn idx_products(cfg: &GenConfig, i: usize) -> Check {
    let rng = &mut cfg.rng(i);
    let c = GenConfig { max_morphisms: 4, ..small(cfg, 2, 2) };
    let (l1, l2) = gen::random_lens_pair(rng, &c);
    let (x, y) = (fibres(&l1), fibres(&l2));
    let t = fibres(&gen::random_lens_pair(rng, &c).0);
    let same: Vec<IndexedSmf> = vec![x.clone(), y.clone()];
    check_product_universal(&ok(fib_product_idx(&x, &y), "fibre product")?, &same, true)?;
    check_coproduct_universal(&ok(fib_coproduct_idx(&x, &y), "fibre coproduct")?, &same, true)?;
    if x.base().num_objects() * t.base().num_objects() <= 2 {
        check_product_universal(&product_idx(&x, &t), &[y.clone()], false)?;
    }
    if x.base().num_objects() + t.base().num_objects() <= 3 {
        check_coproduct_universal(&coproduct_idx(&x, &t), &[y], false)?;
    }
    Ok(())
}

fn morphism_functoriality(cfg: &GenConfig, i: usize) -> Check {
    let l = gen::random_lens(&mut cfg.rng(i), &small(cfg, 3, 3), LensShape::General);
    let m1 = counit_at(&l);
    let m0 = counit_at(&m1.source);
    let both = ok(m0.then(&m1), "lens composite")?;
    let (f0, f1) = (ok(fibres_morphism(&m0), "fibres")?, ok(fibres_morphism(&m1), "fibres")?);
    report(f1.law_violations(), "fibres of a morphism")?;
    ensure(ok(fibres_morphism(&both), "fibres")? == ok(f0.then(&f1), "composite")?, || "fibres on composites".into())?;
    ensure(
        ok(fibres_morphism(&LensMorphism::identity(&l)), "fibres")? == IdxMorphism::identity(&fibres(&l)),
        || "fibres on identities".into(),
    )?;
    let e1 = ok(elements_morphism(&f1), "elements")?;
    report(e1.law_violations(), "elements of a morphism")?;
    // Conjugating by the round-trip witnesses recovers the original.
    let (ws, wt) = (ok(roundtrip_lens(&m1.source), "witness")?, ok(roundtrip_lens(&m1.target), "witness")?);
    let lhs = ok(ws.then(&m1), "composite")?;
    let rhs = ok(e1.then(&wt), "composite")?;
    ensure(lhs.h == rhs.h && lhs.k == rhs.k, || "elements ∘ fibres differs from the identity".into())
}

fn classification(cfg: &GenConfig, i: usize) -> Check {
    let l = gen::random_lens(&mut cfg.rng(i), cfg, if i % 4 == 0 { LensShape::Dopf } else { LensShape::General });
    let x = fibres(&l);
    let r = ok(classify(&x), "classify")?;
    ensure(r.all_agree(), || format!("disagreement on {:?}", r.disagreements().collect::<Vec<_>>()))?;
    let h = |t| r.get(t).idx;
    ensure(
        h(ClassTag::BijectiveOnObjects) == (h(ClassTag::InjectiveOnObjects) && h(ClassTag::SurjectiveOnObjects)),
        || "bijective ≠ injective ∧ surjective".into(),
    )?;
    if h(ClassTag::DiscreteOpfibration) {
        ensure(h(ClassTag::SplitOpfibration), || "dopf but not split".into())?;
        let b = x.base();
        ensure(b.morphisms().all(|u| counit_component(x.carrier(u)).is_invertible()), || "counit not invertible".into())?;
        if h(ClassTag::FullyFaithful) {
            ensure(b.morphisms().all(|u| reflective_unit_component(x.carrier(u)).is_invertible()), || {
                "unit not invertible".into()
            })?;
        }
    }
    Ok(())
}

fn generation(cfg: &GenConfig, i: usize) -> Check {
    let a = gen::random_lens(&mut cfg.rng(i), cfg, LensShape::General);
    let b = gen::random_lens(&mut cfg.rng(i), cfg, LensShape::General);
    ensure(a.to_raw() == b.to_raw(), || "generation is not deterministic".into())?;
    report(a.law_violations(), "generated lens")?;
    let x = fibres(&a);
    report(validate_indexed_smf(&x.to_raw()), "generated indexed data")?;
    let cell = gen::random_cell(&mut cfg.rng(i), 3);
    report(cell.validate(), "generated cell")
}

/// Per-tag counts of positive verdicts over instances, used to confirm a
/// suite exercises both outcomes.
pub fn class_counts(cfg: &GenConfig) -> HashMap<ClassTag, usize> {
    let mut out = HashMap::new();
    for i in 0..cfg.count {
        let x = fibres(&gen::random_lens(&mut cfg.rng(i), cfg, LensShape::General));
        if let Ok(r) = classify(&x) {
            for v in r.verdicts.iter().filter(|v| v.idx) {
                *out.entry(v.tag).or_default() += 1;
            }
        }
    }
    out
}
