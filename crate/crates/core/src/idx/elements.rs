use std::collections::BTreeMap;
use std::sync::Arc;

use super::indexed::IndexedSmf;
use super::morphism::IdxMorphism;
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, Mor, RawCategory, RawComposite, RawFunctor, RawMorphism};
use crate::lens::{DeltaLens, LensMorphism, RawDeltaLens, RawLift};
use crate::names::pair;
use crate::smult::{FinFunction, FinSet, Smf};

/// The lens of elements together with the provenance of its identifiers.
#[derive(Clone, Debug)]
pub struct Elements {
    pub lens: DeltaLens,
    /// Object id of the category of elements to `(base object, element)`.
    pub objects: BTreeMap<String, (String, String)>,
    /// Morphism id to `(base morphism, element)`.
    pub morphisms: BTreeMap<String, (String, String)>,
}

/// The category of elements and its projection, as raw data, without
/// checking that the input satisfies its axioms. Objects are `(x,a)` and
/// morphisms `(u,α)`.
pub fn elements_raw(x: &IndexedSmf) -> RawDeltaLens {
    let b = &**x.base();
    let mut cat = RawCategory::default();
    let mut functor = RawFunctor { dom: None, cod: None, obj_map: BTreeMap::new(), mor_map: BTreeMap::new() };
    let mut lifts = Vec::new();
    for o in b.objects() {
        for a in x.objset(o).elems() {
            let name = pair(b.obj_name(o), a);
            cat.objects.push(name.clone());
            functor.obj_map.insert(name.clone(), b.obj_name(o).to_string());
            let id = b.identity(o);
            let ida = x.carrier(id).sigma.apply(a).expect("total");
            cat.identities.insert(name, pair(b.mor_name(id), ida));
        }
    }
    let el_src = |u: Mor, m: &Smf, al: usize| pair(b.obj_name(b.src(u)), m.src().name(m.s.at(al)));
    let el_tgt = |u: Mor, m: &Smf, al: usize| pair(b.obj_name(b.tgt(u)), m.tgt().name(m.t.at(al)));
    for u in b.morphisms() {
        let m = x.carrier(u);
        for al in m.carrier().indices() {
            let name = pair(b.mor_name(u), m.carrier().name(al));
            cat.morphisms.push(RawMorphism { id: name.clone(), src: el_src(u, m, al), tgt: el_tgt(u, m, al) });
            functor.mor_map.insert(name, b.mor_name(u).to_string());
        }
        for a in m.src().indices() {
            lifts.push(RawLift {
                object: pair(b.obj_name(b.src(u)), m.src().name(a)),
                over: b.mor_name(u).to_string(),
                lift: pair(b.mor_name(u), m.carrier().name(m.sigma.at(a))),
            });
        }
    }
    for (u, v) in b.composable_pairs() {
        let vu = b.then(u, v);
        let (mu_, mv, mvu) = (x.carrier(u), x.carrier(v), x.carrier(vu));
        for (al, be) in x.pairs(u, v) {
            let r = x.mu(u, v, al, be).expect("total");
            cat.compose.push(RawComposite {
                first: pair(b.mor_name(u), mu_.carrier().name(al)),
                then: pair(b.mor_name(v), mv.carrier().name(be)),
                result: pair(b.mor_name(vu), mvu.carrier().name(r)),
            });
        }
    }
    lifts.sort();
    RawDeltaLens { cat_a: cat, cat_b: b.to_raw(), functor, lifts }
}

/// The lens of elements `El(X) -> B`, with lifts `φ((x,a), u) = (u, σ_u a)`.
pub fn elements(x: &IndexedSmf) -> Result<Elements> {
    let report = x.law_violations();
    if !report.is_ok() {
        return Err(Error::invalid("indexed split multivalued function", report));
    }
    let raw = elements_raw(x);
    let lens = DeltaLens::from_raw(&raw)?;
    let b = x.base();
    let mut objects = BTreeMap::new();
    for o in b.objects() {
        for a in x.objset(o).elems() {
            objects.insert(pair(b.obj_name(o), a), (b.obj_name(o).to_string(), a.clone()));
        }
    }
    let mut morphisms = BTreeMap::new();
    for u in b.morphisms() {
        for al in x.carrier(u).carrier().elems() {
            morphisms.insert(pair(b.mor_name(u), al), (b.mor_name(u).to_string(), al.clone()));
        }
    }
    Ok(Elements { lens, objects, morphisms })
}

/// The fibres of a lens: `F(x)` and `F(u)` are the objects and morphisms
/// over `x` and `u`, `s` and `t` are source and target, `σ_u a = φ(a, u)`
/// and `μ` is composition.
pub fn fibres(l: &DeltaLens) -> IndexedSmf {
    let (a, b, f) = (l.dom(), l.cod(), l.functor());
    let objsets: Vec<FinSet> = b
        .objects()
        .map(|x| FinSet::new(a.objects().filter(|&o| f.ob(o) == x).map(|o| a.obj_name(o).to_string())).expect("distinct"))
        .collect();
    let over: Vec<FinSet> = b
        .morphisms()
        .map(|u| FinSet::new(a.morphisms().filter(|&w| f.mor(w) == u).map(|w| a.mor_name(w).to_string())).expect("distinct"))
        .collect();
    let carriers: Vec<Smf> = b
        .morphisms()
        .map(|u| {
            let (xs, ys, c) = (&objsets[b.src(u).0], &objsets[b.tgt(u).0], &over[u.0]);
            let mor = |n: &str| a.mor(n).expect("member");
            let obj = |n: &str| a.obj(n).expect("member");
            let s = FinFunction::from_fn(c, xs, |w| a.obj_name(a.src(mor(w))).to_string()).expect("fibre");
            let t = FinFunction::from_fn(c, ys, |w| a.obj_name(a.tgt(mor(w))).to_string()).expect("fibre");
            let sigma = FinFunction::from_fn(xs, c, |o| a.mor_name(l.lift(obj(o), u)).to_string()).expect("DL1");
            Smf::new_unchecked(s, t, sigma)
        })
        .collect();
    IndexedSmf::new_unchecked(b.clone(), objsets, carriers.clone(), |u, v, al, be| {
        let w1 = a.mor(carriers[u.0].carrier().name(al)).expect("member");
        let w2 = a.mor(carriers[v.0].carrier().name(be)).expect("member");
        let vu = b.then(u, v);
        carriers[vu.0].carrier().index(a.mor_name(a.then(w1, w2))).expect("functoriality")
    })
}

/// The canonical lens isomorphism `El(fibres(l)) -> l` over the identity,
/// `(x,a) ↦ a` and `(u,α) ↦ α`, verified before it is returned.
pub fn roundtrip_lens(l: &DeltaLens) -> Result<LensMorphism> {
    let el = elements(&fibres(l))?;
    let (src, a) = (el.lens.dom(), l.dom());
    let h = FinFunctor::new_unchecked(
        src.clone(),
        a.clone(),
        src.objects().map(|o| a.obj(&el.objects[src.obj_name(o)].1).expect("round trip")).collect(),
        src.morphisms().map(|m| a.mor(&el.morphisms[src.mor_name(m)].1).expect("round trip")).collect(),
    );
    let k = FinFunctor::identity(l.cod().clone());
    let m = LensMorphism::new_unchecked(el.lens, l.clone(), h, k);
    let report = m.law_violations();
    if !report.is_ok() || !m.is_invertible() {
        return Err(Error::Witness(format!("lens round trip: {report}")));
    }
    Ok(m)
}

/// The canonical isomorphism `X -> fibres(El(X))` over the identity,
/// `a ↦ (x,a)` and `α ↦ (u,α)`, verified before it is returned.
pub fn roundtrip_idx(x: &IndexedSmf) -> Result<IdxMorphism> {
    let el = elements(x)?;
    let back = fibres(&el.lens);
    let b = x.base().clone();
    let theta0 = b
        .objects()
        .map(|o| FinFunction::from_fn(x.objset(o), back.objset(o), |a| pair(b.obj_name(o), a)))
        .collect::<Result<Vec<_>>>()?;
    let theta1 = b
        .morphisms()
        .map(|u| FinFunction::from_fn(x.carrier(u).carrier(), back.carrier(u).carrier(), |al| pair(b.mor_name(u), al)))
        .collect::<Result<Vec<_>>>()?;
    let m = IdxMorphism::new_unchecked(x.clone(), back, FinFunctor::identity(b), theta0, theta1);
    let report = m.law_violations();
    if !report.is_ok() || !m.is_invertible() {
        return Err(Error::Witness(format!("indexed round trip: {report}")));
    }
    Ok(m)
}

pub(crate) fn same_base(x: &IndexedSmf, y: &IndexedSmf) -> Result<Arc<crate::fincat::FinCat>> {
    if x.base() != y.base() {
        return Err(Error::Mismatch("indexed data over different bases".into()));
    }
    Ok(x.base().clone())
}
