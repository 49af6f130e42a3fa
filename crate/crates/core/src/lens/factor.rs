use std::collections::HashMap;
use std::sync::Arc;

use super::delta::DeltaLens;
use crate::fincat::{assemble, full_subcategory, FinFunctor, Mor, Obj};
use crate::names::triple;

/// A lens factored as an identity-on-objects functor followed by a fully
/// faithful lens.
#[derive(Clone, Debug)]
pub struct IooFfFactorization {
    pub first: FinFunctor,
    pub second: DeltaLens,
}

/// A lens factored as a surjective-on-objects lens followed by a fully
/// faithful, injective-on-objects lens.
#[derive(Clone, Debug)]
pub struct EpiMonoFactorization {
    pub first: DeltaLens,
    pub second: DeltaLens,
}

/// The middle category has the objects of `A` and morphisms
/// `(a, u, a'): a -> a'` for `u: f a -> f a'`. The second factor lifts `u`
/// at `a` to `(a, u, tgt φ(a, u))`.
pub fn ioo_ff_factorization(l: &DeltaLens) -> IooFfFactorization {
    let (a, b, f) = (l.dom(), l.cod(), l.functor());
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    for s in a.objects() {
        for t in a.objects() {
            for &u in b.hom(f.ob(s), f.ob(t)) {
                index.insert((s, u, t), arrows.len());
                arrows.push((s, u, t));
            }
        }
    }
    let objects = a.objects().map(|o| a.obj_name(o).to_string()).collect();
    let morphisms = arrows
        .iter()
        .map(|&(s, u, t)| (triple(a.obj_name(s), b.mor_name(u), a.obj_name(t)), s.0, t.0))
        .collect();
    let identities: Vec<usize> = a.objects().map(|o| index[&(o, b.identity(f.ob(o)), o)]).collect();
    let asm = assemble(objects, morphisms, &identities, |i, j| {
        let ((s, u, _), (_, v, t)) = (arrows[i], arrows[j]);
        index[&(s, b.then(u, v), t)]
    })
    .expect("factorization names are distinct");
    let mid = Arc::new(asm.cat.clone());
    let to_mid = |o: Obj| asm.obj_of[o.0];
    let first = FinFunctor::new_unchecked(
        a.clone(),
        mid.clone(),
        a.objects().map(to_mid).collect(),
        a.morphisms().map(|w| asm.mor_of[index[&(a.src(w), f.mor(w), a.tgt(w))]]).collect(),
    );
    let back: HashMap<Obj, Obj> = a.objects().map(|o| (to_mid(o), o)).collect();
    let g = FinFunctor::new_unchecked(
        mid.clone(),
        b.clone(),
        asm.obj_images(|o| f.ob(Obj(o))),
        asm.mor_images(|m| arrows[m].1),
    );
    let second = DeltaLens::new_unchecked(g, |m, u| {
        let s = back[&m];
        let t = a.tgt(l.lift(s, u));
        asm.mor_of[index[&(s, u, t)]]
    });
    IooFfFactorization { first, second }
}

/// Corestricts `l` to the full image of its functor, which is closed under
/// outgoing morphisms, and includes that image back into `B`.
pub fn epi_mono_factorization(l: &DeltaLens) -> EpiMonoFactorization {
    let (a, f) = (l.dom(), l.functor());
    let mut image: Vec<Obj> = a.objects().map(|o| f.ob(o)).collect();
    image.sort();
    image.dedup();
    let (sub, incl) = full_subcategory(l.cod(), &image);
    let obj_back: HashMap<Obj, Obj> = sub.objects().map(|o| (incl.ob(o), o)).collect();
    let mor_back: HashMap<Mor, Mor> = sub.morphisms().map(|m| (incl.mor(m), m)).collect();
    let core = FinFunctor::new_unchecked(
        a.clone(),
        sub.clone(),
        a.objects().map(|o| obj_back[&f.ob(o)]).collect(),
        a.morphisms().map(|w| mor_back[&f.mor(w)]).collect(),
    );
    let first = DeltaLens::new_unchecked(core, |o, u| l.lift(o, incl.mor(u)));
    let second = DeltaLens::new_unchecked(incl.clone(), |_, u| mor_back[&u]);
    EpiMonoFactorization { first, second }
}
