#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use dlens_core::fincat::{FinCat, FinFunctor, FunctorSearch};
use dlens_core::gen::catalog;

pub fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

/// Functor given by name lists; panics when the data is not a functor.
pub fn functor(dom: &Arc<FinCat>, cod: &Arc<FinCat>, objs: &[(&str, &str)], mors: &[(&str, &str)]) -> FinFunctor {
    let obj_map: BTreeMap<String, String> = objs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let mut mor_map: BTreeMap<String, String> = mors.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    // Identities follow the object map unless given explicitly.
    for o in dom.objects() {
        let id = dom.mor_name(dom.identity(o)).to_string();
        if !mor_map.contains_key(&id) {
            let target = cod.obj(&obj_map[dom.obj_name(o)]).expect("target object");
            mor_map.insert(id, cod.mor_name(cod.identity(target)).to_string());
        }
    }
    FinFunctor::from_names(dom.clone(), cod.clone(), &obj_map, &mor_map).expect("functor")
}

/// The unique functor into the terminal category.
pub fn to_terminal(dom: &Arc<FinCat>) -> FinFunctor {
    let t = arc(catalog::terminal());
    FunctorSearch::new(dom, &t).first().expect("terminal")
}

/// Categories used as test objects in universal-property searches.
pub fn probes() -> Vec<Arc<FinCat>> {
    catalog::all(3).into_iter().map(|(_, c)| c).collect()
}

/// Checks the pushout property of `(left: A -> P, right: Y -> P)` under
/// `p: X -> A`, `i: X -> Y` against every probe category.
pub fn check_pushout_property(p: &FinFunctor, i: &FinFunctor, left: &FinFunctor, right: &FinFunctor) -> Result<(), String> {
    let pcat = left.cod().clone();
    for t in probes() {
        for a in FunctorSearch::new(p.cod(), &t).all() {
            for y in FunctorSearch::new(i.cod(), &t).all() {
                if p.then(&a).unwrap() != i.then(&y).unwrap() {
                    continue;
                }
                let mut search = FunctorSearch::new(&pcat, &t);
                let mut ok = true;
                for m in p.cod().morphisms() {
                    ok &= search.fix_mor(left.mor(m), a.mor(m));
                }
                for m in i.cod().morphisms() {
                    ok &= search.fix_mor(right.mor(m), y.mor(m));
                }
                let count = if ok { search.run(Some(2)).len() } else { 0 };
                if count != 1 {
                    return Err(format!("{count} mediating functors into {:?}", t));
                }
            }
        }
    }
    Ok(())
}

/// Checks the pullback property of `(left: P -> X, right: P -> Y)` over
/// `f: X -> A`, `g: Y -> A` against every probe category as apex.
pub fn check_pullback_property(f: &FinFunctor, g: &FinFunctor, left: &FinFunctor, right: &FinFunctor) -> Result<(), String> {
    let pcat = left.dom().clone();
    for t in probes() {
        for a in FunctorSearch::new(&t, f.dom()).all() {
            for b in FunctorSearch::new(&t, g.dom()).all() {
                if a.then(f).unwrap() != b.then(g).unwrap() {
                    continue;
                }
                let mediating: Vec<_> = FunctorSearch::new(&t, &pcat)
                    .all()
                    .into_iter()
                    .filter(|h| h.then(left).unwrap() == a && h.then(right).unwrap() == b)
                    .collect();
                if mediating.len() != 1 {
                    return Err(format!("{} mediating functors from {:?}", mediating.len(), t));
                }
            }
        }
    }
    Ok(())
}

/// `L⁻`: the span `w1: a0 -> a1`, `w2: a0 -> a2` over `𝟚`, lifting `u` to `w1`.
pub fn l_minus() -> dlens_core::lens::DeltaLens {
    let a = arc(catalog::v_shape());
    let b = arc(catalog::interval());
    let f = functor(&a, &b, &[("a0", "⊥"), ("a1", "⊤"), ("a2", "⊤")], &[("w1", "u"), ("w2", "u")]);
    let w1 = a.mor("w1").unwrap();
    dlens_core::lens::DeltaLens::new(f, |o, u| if b.is_identity(u) { a.identity(o) } else { w1 }).expect("L⁻")
}

/// Every lens between catalog categories with at most `max_objects`
/// objects, capped per functor.
pub fn small_lenses(max_objects: usize) -> Vec<dlens_core::lens::DeltaLens> {
    let cats = catalog::all(max_objects);
    let mut out = Vec::new();
    for (_, a) in &cats {
        for (_, b) in &cats {
            for f in FunctorSearch::new(a, b).all() {
                out.extend(dlens_core::gen::enumerate::lens_structures(&f, Some(8)));
            }
        }
    }
    out
}

/// `X⁻` over `𝟚` as wire data: `F(⊥) = {p}`, `F(⊤) = {q1, q2}`,
/// `F(u) = {α1, α2}` with `t αi = qi` and `σ_u p = α1`.
pub fn x_minus_raw() -> dlens_core::idx::RawIndexedSmf {
    let json = serde_json::json!({
        "base": catalog::interval().to_raw(),
        "objsets": {"⊥": ["p"], "⊤": ["q1", "q2"]},
        "carriers": {
            "id[⊥]": {"elems": ["p"], "s": {"p": "p"}, "t": {"p": "p"}, "sigma": {"p": "p"}},
            "id[⊤]": {"elems": ["q1", "q2"], "s": {"q1": "q1", "q2": "q2"}, "t": {"q1": "q1", "q2": "q2"},
                       "sigma": {"q1": "q1", "q2": "q2"}},
            "u": {"elems": ["α1", "α2"], "s": {"α1": "p", "α2": "p"}, "t": {"α1": "q1", "α2": "q2"},
                  "sigma": {"p": "α1"}}
        },
        "mu": [
            {"u": "id[⊥]", "v": "id[⊥]", "table": [{"alpha": "p", "beta": "p", "result": "p"}]},
            {"u": "id[⊥]", "v": "u", "table": [
                {"alpha": "p", "beta": "α1", "result": "α1"},
                {"alpha": "p", "beta": "α2", "result": "α2"}]},
            {"u": "u", "v": "id[⊤]", "table": [
                {"alpha": "α1", "beta": "q1", "result": "α1"},
                {"alpha": "α2", "beta": "q2", "result": "α2"}]},
            {"u": "id[⊤]", "v": "id[⊤]", "table": [
                {"alpha": "q1", "beta": "q1", "result": "q1"},
                {"alpha": "q2", "beta": "q2", "result": "q2"}]}
        ]
    });
    serde_json::from_value(json).expect("wire format")
}

/// Constant indexed data with one element everywhere.
pub fn terminal_idx(base: &Arc<FinCat>) -> dlens_core::idx::IndexedSmf {
    use dlens_core::smult::{FinFunction, FinSet, Smf};
    let one = FinSet::new(["*"]).unwrap();
    let id = FinFunction::identity(&one);
    dlens_core::idx::IndexedSmf::new(
        base.clone(),
        base.objects().map(|_| one.clone()).collect(),
        base.morphisms().map(|_| Smf::new_unchecked(id.clone(), id.clone(), id.clone())).collect(),
        |_, _, _, _| 0,
    )
    .expect("terminal indexed data")
}

/// `p, q` over `f` and `r` over `g` between `x` and `y`; a lens that is not cofree.
pub fn three_arrows_over_two() -> dlens_core::lens::DeltaLens {
    let mut b = dlens_core::fincat::CatBuilder::new();
    let (x, y) = (b.object("x").unwrap(), b.object("y").unwrap());
    let ix = b.identity_morphism("id[x]", x).unwrap();
    let iy = b.identity_morphism("id[y]", y).unwrap();
    for name in ["p", "q", "r"] {
        let m = b.morphism(name, x, y).unwrap();
        b.compose(ix, m, m);
        b.compose(m, iy, m);
    }
    b.compose(ix, ix, ix);
    b.compose(iy, iy, iy);
    let a = arc(b.build_checked().unwrap());
    let pp = arc(catalog::parallel_pair());
    let f = functor(&a, &pp, &[("x", "x"), ("y", "y")], &[("p", "f"), ("q", "f"), ("r", "g")]);
    let (p, r) = (a.mor("p").unwrap(), a.mor("r").unwrap());
    let g = pp.mor("g").unwrap();
    dlens_core::lens::DeltaLens::new(f, |o, u| {
        if pp.is_identity(u) {
            a.identity(o)
        } else if u == g {
            r
        } else {
            p
        }
    })
    .unwrap()
}
