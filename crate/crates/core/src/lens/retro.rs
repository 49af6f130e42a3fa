use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::delta::{resolve_lifts, DeltaLens, RawLift};
use super::morphism::LensMorphism;
use crate::error::{Error, Result};
use crate::fincat::{assemble, FinCat, FinFunctor, Mor, Obj, RawCategory, UnionFind};
use crate::names::pair;
use crate::report::ValidationReport;

/// Wire format of a retrofunctor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRetrofunctor {
    pub cat_a: RawCategory,
    pub cat_b: RawCategory,
    pub obj_map: BTreeMap<String, String>,
    pub lifts: Vec<RawLift>,
}

/// An object assignment `A -> B` with lifts `φ(a, u: fa -> b)` in `A`, and no
/// action on morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retrofunctor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    obj_map: Vec<Obj>,
    lifts: Vec<HashMap<Mor, Mor>>,
}

impl Retrofunctor {
    pub fn new_unchecked(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<Obj>,
        mut lift: impl FnMut(Obj, Mor) -> Mor,
    ) -> Retrofunctor {
        let lifts = dom.objects().map(|a| cod.out_of(obj_map[a.0]).iter().map(|&u| (u, lift(a, u))).collect()).collect();
        Retrofunctor { dom, cod, obj_map, lifts }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn ob(&self, a: Obj) -> Obj {
        self.obj_map[a.0]
    }

    pub fn lift(&self, a: Obj, u: Mor) -> Mor {
        self.lifts[a.0][&u]
    }

    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (a_cat, b_cat) = (&*self.dom, &*self.cod);
        let names = |a: Obj, u: Mor| vec![a_cat.obj_name(a).to_string(), b_cat.mor_name(u).to_string()];
        let mut typed = Vec::new();
        for a in a_cat.objects() {
            for &u in b_cat.out_of(self.ob(a)) {
                let w = self.lift(a, u);
                if a_cat.src(w) != a {
                    report.push("lift source", names(a, u));
                    continue;
                }
                if self.ob(a_cat.tgt(w)) != b_cat.tgt(u) {
                    report.push("R1", names(a, u));
                    continue;
                }
                if b_cat.is_identity(u) && w != a_cat.identity(a) {
                    report.push("R2", names(a, u));
                }
                typed.push((a, u, w));
            }
        }
        for (a, u, w) in typed {
            let a2 = a_cat.tgt(w);
            for &v in b_cat.out_of(b_cat.tgt(u)) {
                let w2 = self.lift(a2, v);
                if a_cat.compose(w, w2) != Some(self.lift(a, b_cat.then(u, v))) {
                    let mut wit = names(a, u);
                    wit.push(b_cat.mor_name(v).to_string());
                    report.push("R3", wit);
                }
            }
        }
        report
    }

    pub fn to_raw(&self) -> RawRetrofunctor {
        let mut lifts = Vec::new();
        for a in self.dom.objects() {
            for &u in self.cod.out_of(self.ob(a)) {
                lifts.push(RawLift {
                    object: self.dom.obj_name(a).to_string(),
                    over: self.cod.mor_name(u).to_string(),
                    lift: self.dom.mor_name(self.lift(a, u)).to_string(),
                });
            }
        }
        lifts.sort();
        RawRetrofunctor {
            cat_a: self.dom.to_raw(),
            cat_b: self.cod.to_raw(),
            obj_map: self
                .dom
                .objects()
                .map(|a| (self.dom.obj_name(a).to_string(), self.cod.obj_name(self.ob(a)).to_string()))
                .collect(),
            lifts,
        }
    }

    pub fn from_raw(raw: &RawRetrofunctor) -> Result<Retrofunctor> {
        let (r, report) = resolve_retro(raw);
        match r {
            Some(r) if report.is_ok() => {
                let laws = r.law_violations();
                if laws.is_ok() {
                    Ok(r)
                } else {
                    Err(Error::invalid("retrofunctor", laws))
                }
            }
            _ => Err(Error::invalid("retrofunctor", report)),
        }
    }
}

fn resolve_retro(raw: &RawRetrofunctor) -> (Option<Retrofunctor>, ValidationReport) {
    let mut report = ValidationReport::new();
    let (a, b) = match (FinCat::from_raw(&raw.cat_a), FinCat::from_raw(&raw.cat_b)) {
        (Ok(a), Ok(b)) => (Arc::new(a), Arc::new(b)),
        (a, b) => {
            for e in [a.err(), b.err()].into_iter().flatten() {
                report.malformed("component category invalid", [e.to_string()]);
            }
            return (None, report);
        }
    };
    let mut obj_map = Vec::with_capacity(a.num_objects());
    for o in a.objects() {
        match raw.obj_map.get(a.obj_name(o)).and_then(|t| b.obj(t)) {
            Some(t) => obj_map.push(t),
            None => report.malformed("object map not total or not into the codomain", [a.obj_name(o)]),
        }
    }
    if !report.is_ok() {
        return (None, report);
    }
    match resolve_lifts(&a, &b, &obj_map, &raw.lifts, &mut report) {
        Some(lifts) => (Some(Retrofunctor { dom: a, cod: b, obj_map, lifts }), report),
        None => (None, report),
    }
}

/// Reports malformed data and every violated retrofunctor axiom.
pub fn check_retrofunctor(raw: &RawRetrofunctor) -> ValidationReport {
    let (r, mut report) = resolve_retro(raw);
    if let Some(r) = r {
        report.extend(r.law_violations());
    }
    report
}

impl DeltaLens {
    /// Forgets the action on morphisms.
    pub fn underlying_retrofunctor(&self) -> Retrofunctor {
        Retrofunctor::new_unchecked(
            self.dom().clone(),
            self.cod().clone(),
            self.functor().obj_map().to_vec(),
            |a, u| self.lift(a, u),
        )
    }
}

/// The cofree lens on a retrofunctor `r: A -> B`. Its domain has the
/// objects of `A` and morphisms `(w,u): a -> a'` for `w: a -> a'` in `A`
/// and `u: r a -> r a'` in `B`; the functor is the second projection and
/// `φ(a, u) = (r.lift(a, u), u)`.
pub fn cofree_lens(r: &Retrofunctor) -> DeltaLens {
    let (a, b) = (r.dom(), r.cod());
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    for w in a.morphisms() {
        for &u in b.hom(r.ob(a.src(w)), r.ob(a.tgt(w))) {
            index.insert((w, u), arrows.len());
            arrows.push((w, u));
        }
    }
    let objects = a.objects().map(|o| a.obj_name(o).to_string()).collect();
    let morphisms = arrows.iter().map(|&(w, u)| (pair(a.mor_name(w), b.mor_name(u)), a.src(w).0, a.tgt(w).0)).collect();
    let identities: Vec<usize> = a.objects().map(|o| index[&(a.identity(o), b.identity(r.ob(o)))]).collect();
    let asm = assemble(objects, morphisms, &identities, |i, j| {
        let ((w1, u1), (w2, u2)) = (arrows[i], arrows[j]);
        index[&(a.then(w1, w2), b.then(u1, u2))]
    })
    .expect("cofree names are distinct");
    let obj_map = asm.obj_images(|o| r.ob(Obj(o)));
    let mor_map = asm.mor_images(|m| arrows[m].1);
    let x = Arc::new(asm.cat);
    let f = FinFunctor::new_unchecked(x.clone(), b.clone(), obj_map, mor_map);
    let mor_of = asm.mor_of;
    let obj_local: HashMap<Obj, usize> = asm.obj_of.iter().enumerate().map(|(l, &o)| (o, l)).collect();
    DeltaLens::new_unchecked(f, |xo, u| {
        let ao = Obj(obj_local[&xo]);
        mor_of[index[&(r.lift(ao, u), u)]]
    })
}

/// Evidence that a lens is cofree: a retrofunctor and an invertible lens
/// morphism from the lens to the cofree lens on it.
#[derive(Clone, Debug)]
pub struct CofreeWitness {
    pub retrofunctor: Retrofunctor,
    pub iso: LensMorphism,
}

/// Searches for a congruence on the domain `X` of `l` whose classes meet
/// every fibre `f⁻¹(u) ∩ X(a, a')` exactly once; the quotient then carries a
/// retrofunctor `r` with `l ≅ cofree_lens(r)`. Returns `None` when no such
/// congruence exists.
pub fn cofree_witness(l: &DeltaLens) -> Option<CofreeWitness> {
    let classes = cofree_congruence(l)?;
    Some(witness_from_classes(l, &classes))
}

/// Whether `l` is in the image, up to isomorphism, of the cofree lens
/// construction.
pub fn is_cofree(l: &DeltaLens) -> bool {
    cofree_congruence(l).is_some()
}

/// Morphisms of `X` over `u` between fixed endpoints, for every `u`.
fn fibres_by_hom(l: &DeltaLens) -> Option<HashMap<(Obj, Obj), Vec<Vec<Mor>>>> {
    let (x, b, f) = (l.dom(), l.cod(), l.functor());
    let mut out = HashMap::new();
    for s in x.objects() {
        for t in x.objects() {
            let base = b.hom(f.ob(s), f.ob(t));
            if base.is_empty() {
                continue;
            }
            let mut fibres: Vec<Vec<Mor>> = vec![Vec::new(); base.len()];
            for &w in x.hom(s, t) {
                let k = base.iter().position(|&u| u == f.mor(w)).expect("image in hom");
                fibres[k].push(w);
            }
            if fibres.iter().any(|fb| fb.len() != fibres[0].len()) {
                return None;
            }
            out.insert((s, t), fibres);
        }
    }
    Some(out)
}

/// Closes a partition under composition on both sides. Returns `false` when
/// some class acquires two members over the same base morphism.
fn close(l: &DeltaLens, uf: &mut UnionFind) -> bool {
    let x = l.dom();
    loop {
        let mut changed = false;
        for w in x.morphisms() {
            let r = uf.find(w.0);
            if r == w.0 {
                continue;
            }
            let rep = Mor(r);
            for &v in x.out_of(x.tgt(w)) {
                changed |= uf.union(x.then(w, v).0, x.then(rep, v).0);
            }
            for &v in x.into_obj(x.src(w)) {
                changed |= uf.union(x.then(v, w).0, x.then(v, rep).0);
            }
        }
        if !changed {
            break;
        }
    }
    let mut seen = HashMap::new();
    for w in x.morphisms() {
        let key = (uf.find(w.0), l.functor().mor(w));
        if seen.insert(key, w).is_some() {
            return false;
        }
    }
    true
}

fn cofree_congruence(l: &DeltaLens) -> Option<Vec<usize>> {
    let fibres = fibres_by_hom(l)?;
    let mut uf = UnionFind::new(l.dom().num_morphisms());
    if !close(l, &mut uf) {
        return None;
    }
    let mut keys: Vec<_> = fibres.keys().copied().collect();
    keys.sort();
    search(l, &fibres, &keys, uf).map(|mut uf| (0..l.dom().num_morphisms()).map(|i| uf.find(i)).collect())
}

/// Depth-first search: pick a class missing some base morphism and try each
/// candidate partner over it.
fn search(
    l: &DeltaLens,
    fibres: &HashMap<(Obj, Obj), Vec<Vec<Mor>>>,
    keys: &[(Obj, Obj)],
    mut uf: UnionFind,
) -> Option<UnionFind> {
    for key in keys {
        let fbs = &fibres[key];
        for &w in &fbs[0] {
            let r = uf.find(w.0);
            for fb in &fbs[1..] {
                if fb.iter().any(|&v| uf.find(v.0) == r) {
                    continue;
                }
                for &v in fb {
                    let rv = uf.find(v.0);
                    // v must not already share a class with another member of fibre 0.
                    if fbs[0].iter().any(|&w0| uf.find(w0.0) == rv) {
                        continue;
                    }
                    let mut next = uf.clone();
                    next.union(w.0, v.0);
                    if close(l, &mut next) {
                        if let Some(done) = search(l, fibres, keys, next) {
                            return Some(done);
                        }
                    }
                }
                return None;
            }
        }
    }
    Some(uf)
}

fn witness_from_classes(l: &DeltaLens, classes: &[usize]) -> CofreeWitness {
    let (x, b, f) = (l.dom(), l.cod(), l.functor());
    let mut reps: Vec<usize> = classes.to_vec();
    reps.sort();
    reps.dedup();
    let local: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let objects = x.objects().map(|o| x.obj_name(o).to_string()).collect();
    let morphisms = reps.iter().map(|&r| (x.mor_name(Mor(r)).to_string(), x.src(Mor(r)).0, x.tgt(Mor(r)).0)).collect();
    let identities: Vec<usize> = x.objects().map(|o| local[&classes[x.identity(o).0]]).collect();
    let asm = assemble(objects, morphisms, &identities, |i, j| {
        local[&classes[x.then(Mor(reps[i]), Mor(reps[j])).0]]
    })
    .expect("quotient names are distinct");
    let quotient = Arc::new(asm.cat.clone());
    let class_mor = |w: Mor| asm.mor_of[local[&classes[w.0]]];
    let obj_of = |o: Obj| asm.obj_of[o.0];
    let obj_back: HashMap<Obj, Obj> = x.objects().map(|o| (obj_of(o), o)).collect();
    let retro = Retrofunctor::new_unchecked(
        quotient.clone(),
        b.clone(),
        quotient.objects().map(|q| f.ob(obj_back[&q])).collect(),
        |q, u| class_mor(l.lift(obj_back[&q], u)),
    );
    let cofree = cofree_lens(&retro);
    let y = cofree.dom().clone();
    let h = FinFunctor::new_unchecked(
        x.clone(),
        y.clone(),
        x.objects().map(|o| y.obj(x.obj_name(o)).expect("same objects")).collect(),
        x.morphisms()
            .map(|w| {
                let name = pair(quotient.mor_name(class_mor(w)), b.mor_name(f.mor(w)));
                y.mor(&name).expect("cofree morphism")
            })
            .collect(),
    );
    let iso = LensMorphism::new_unchecked(l.clone(), cofree, h, FinFunctor::identity(b.clone()));
    CofreeWitness { retrofunctor: retro, iso }
}
