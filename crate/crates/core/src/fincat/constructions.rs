//! Limits, colimits and other derived categories.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::{assemble, FinCat, Mor, Obj};
use super::functor::FinFunctor;
use crate::error::{Error, Result};
use crate::names::{inl, inr, pair, triple};

/// A category with two outgoing functors, such as a product or a pullback.
#[derive(Clone, Debug)]
pub struct Cone {
    pub cat: Arc<FinCat>,
    pub left: FinFunctor,
    pub right: FinFunctor,
}

/// A category with two incoming functors, such as a coproduct or a pushout.
#[derive(Clone, Debug)]
pub struct Cocone {
    pub cat: Arc<FinCat>,
    pub left: FinFunctor,
    pub right: FinFunctor,
}

pub fn product(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Cone {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let mb = b.num_morphisms();
    let objects = a
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| pair(a.obj_name(x), b.obj_name(y)))
        .collect();
    let morphisms = a
        .morphisms()
        .flat_map(|f| b.morphisms().map(move |g| (f, g)))
        .map(|(f, g)| {
            (
                pair(a.mor_name(f), b.mor_name(g)),
                a.src(f).0 * nb + b.src(g).0,
                a.tgt(f).0 * nb + b.tgt(g).0,
            )
        })
        .collect();
    let identities: Vec<usize> = (0..na * nb)
        .map(|o| a.identity(Obj(o / nb)).0 * mb + b.identity(Obj(o % nb)).0)
        .collect();
    let asm = assemble(objects, morphisms, &identities, |f, g| {
        a.then(Mor(f / mb), Mor(g / mb)).0 * mb + b.then(Mor(f % mb), Mor(g % mb)).0
    })
    .expect("product names are distinct");
    let left_o = asm.obj_images(|o| Obj(o / nb));
    let left_m = asm.mor_images(|m| Mor(m / mb));
    let right_o = asm.obj_images(|o| Obj(o % nb));
    let right_m = asm.mor_images(|m| Mor(m % mb));
    let cat = Arc::new(asm.cat);
    Cone {
        left: FinFunctor::new_unchecked(cat.clone(), a.clone(), left_o, left_m),
        right: FinFunctor::new_unchecked(cat.clone(), b.clone(), right_o, right_m),
        cat,
    }
}

pub fn coproduct(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Cocone {
    let (na, ma) = (a.num_objects(), a.num_morphisms());
    let objects = a
        .objects()
        .map(|x| inl(a.obj_name(x)))
        .chain(b.objects().map(|y| inr(b.obj_name(y))))
        .collect();
    let morphisms = a
        .morphisms()
        .map(|f| (inl(a.mor_name(f)), a.src(f).0, a.tgt(f).0))
        .chain(b.morphisms().map(|g| (inr(b.mor_name(g)), na + b.src(g).0, na + b.tgt(g).0)))
        .collect();
    let identities: Vec<usize> = a
        .objects()
        .map(|x| a.identity(x).0)
        .chain(b.objects().map(|y| ma + b.identity(y).0))
        .collect();
    let asm = assemble(objects, morphisms, &identities, |f, g| {
        if f < ma {
            a.then(Mor(f), Mor(g)).0
        } else {
            ma + b.then(Mor(f - ma), Mor(g - ma)).0
        }
    })
    .expect("coproduct names are distinct");
    let cat = Arc::new(asm.cat);
    let left = FinFunctor::new_unchecked(
        a.clone(),
        cat.clone(),
        a.objects().map(|x| asm.obj_of[x.0]).collect(),
        a.morphisms().map(|f| asm.mor_of[f.0]).collect(),
    );
    let right = FinFunctor::new_unchecked(
        b.clone(),
        cat.clone(),
        b.objects().map(|y| asm.obj_of[na + y.0]).collect(),
        b.morphisms().map(|g| asm.mor_of[ma + g.0]).collect(),
    );
    Cocone { cat, left, right }
}

/// The pullback `X ×_A Y` of `f: X -> A` and `g: Y -> A`, with objects and
/// morphisms named as pairs.
pub fn pullback(f: &FinFunctor, g: &FinFunctor) -> Result<Cone> {
    if f.cod() != g.cod() {
        return Err(Error::Mismatch("pullback legs have different codomains".into()));
    }
    let (x, y) = (f.dom(), g.dom());
    let mut obj_pairs = Vec::new();
    let mut obj_local = HashMap::new();
    for a in x.objects() {
        for b in y.objects() {
            if f.ob(a) == g.ob(b) {
                obj_local.insert((a, b), obj_pairs.len());
                obj_pairs.push((a, b));
            }
        }
    }
    let mut by_image: HashMap<Mor, Vec<Mor>> = HashMap::new();
    for v in y.morphisms() {
        by_image.entry(g.mor(v)).or_default().push(v);
    }
    let mut mor_pairs = Vec::new();
    let mut mor_local = HashMap::new();
    for w in x.morphisms() {
        for &v in by_image.get(&f.mor(w)).map(Vec::as_slice).unwrap_or(&[]) {
            mor_local.insert((w, v), mor_pairs.len());
            mor_pairs.push((w, v));
        }
    }
    let objects = obj_pairs.iter().map(|&(a, b)| pair(x.obj_name(a), y.obj_name(b))).collect();
    let morphisms = mor_pairs
        .iter()
        .map(|&(w, v)| {
            (
                pair(x.mor_name(w), y.mor_name(v)),
                obj_local[&(x.src(w), y.src(v))],
                obj_local[&(x.tgt(w), y.tgt(v))],
            )
        })
        .collect();
    let identities: Vec<usize> =
        obj_pairs.iter().map(|&(a, b)| mor_local[&(x.identity(a), y.identity(b))]).collect();
    let asm = assemble(objects, morphisms, &identities, |i, j| {
        let ((w1, v1), (w2, v2)) = (mor_pairs[i], mor_pairs[j]);
        mor_local[&(x.then(w1, w2), y.then(v1, v2))]
    })?;
    let left_o = asm.obj_images(|o| obj_pairs[o].0);
    let left_m = asm.mor_images(|m| mor_pairs[m].0);
    let right_o = asm.obj_images(|o| obj_pairs[o].1);
    let right_m = asm.mor_images(|m| mor_pairs[m].1);
    let cat = Arc::new(asm.cat);
    Ok(Cone {
        left: FinFunctor::new_unchecked(cat.clone(), x.clone(), left_o, left_m),
        right: FinFunctor::new_unchecked(cat.clone(), y.clone(), right_o, right_m),
        cat,
    })
}

/// The codiscrete category on the given objects: exactly one morphism
/// `(a,b)` between any two objects.
pub fn codiscrete(objects: &[String]) -> FinCat {
    let n = objects.len();
    let morphisms = (0..n * n).map(|k| (pair(&objects[k / n], &objects[k % n]), k / n, k % n)).collect();
    let identities: Vec<usize> = (0..n).map(|o| o * n + o).collect();
    assemble(objects.to_vec(), morphisms, &identities, |f, g| (f / n) * n + g % n)
        .expect("codiscrete names are distinct")
        .cat
}

/// The identity-on-objects functor from a category to the codiscrete
/// category on its objects.
pub fn to_codiscrete(cat: &Arc<FinCat>) -> FinFunctor {
    let names: Vec<String> = cat.objects().map(|o| cat.obj_name(o).to_string()).collect();
    let cod = Arc::new(codiscrete(&names));
    let obj_map = cat.objects().map(|o| cod.obj(cat.obj_name(o)).expect("same objects")).collect();
    let mor_map = cat
        .morphisms()
        .map(|m| cod.mor(&pair(cat.obj_name(cat.src(m)), cat.obj_name(cat.tgt(m)))).expect("codiscrete hom"))
        .collect();
    FinFunctor::new_unchecked(cat.clone(), cod, obj_map, mor_map)
}

/// The subcategory on a set of morphisms, which must contain the relevant
/// identities and be closed under composition. Objects are the endpoints of
/// the given morphisms together with `extra_objects`.
pub fn subcategory(cat: &Arc<FinCat>, mors: &[Mor], extra_objects: &[Obj]) -> Result<(Arc<FinCat>, FinFunctor)> {
    let mut keep_obj = vec![false; cat.num_objects()];
    for &m in mors {
        keep_obj[cat.src(m).0] = true;
        keep_obj[cat.tgt(m).0] = true;
    }
    for &o in extra_objects {
        keep_obj[o.0] = true;
    }
    let objs: Vec<Obj> = cat.objects().filter(|o| keep_obj[o.0]).collect();
    let mut obj_local = vec![usize::MAX; cat.num_objects()];
    for (i, o) in objs.iter().enumerate() {
        obj_local[o.0] = i;
    }
    let mut ms: Vec<Mor> = mors.to_vec();
    ms.sort();
    ms.dedup();
    let mut mor_local = vec![usize::MAX; cat.num_morphisms()];
    for (i, m) in ms.iter().enumerate() {
        mor_local[m.0] = i;
    }
    let mut identities = Vec::with_capacity(objs.len());
    for &o in &objs {
        let i = mor_local[cat.identity(o).0];
        if i == usize::MAX {
            return Err(Error::Precondition(format!("subcategory lacks identity on {}", cat.obj_name(o))));
        }
        identities.push(i);
    }
    let mut missing = None;
    let asm = assemble(
        objs.iter().map(|&o| cat.obj_name(o).to_string()).collect(),
        ms.iter().map(|&m| (cat.mor_name(m).to_string(), obj_local[cat.src(m).0], obj_local[cat.tgt(m).0])).collect(),
        &identities,
        |f, g| {
            let h = cat.then(ms[f], ms[g]);
            let l = mor_local[h.0];
            if l == usize::MAX {
                missing = Some(h);
                0
            } else {
                l
            }
        },
    )?;
    if let Some(h) = missing {
        return Err(Error::Precondition(format!("subcategory not closed under composition at {}", cat.mor_name(h))));
    }
    let obj_map = asm.obj_images(|o| objs[o]);
    let mor_map = asm.mor_images(|m| ms[m]);
    let sub = Arc::new(asm.cat);
    let incl = FinFunctor::new_unchecked(sub.clone(), cat.clone(), obj_map, mor_map);
    Ok((sub, incl))
}

/// The full subcategory on the given objects and its inclusion.
pub fn full_subcategory(cat: &Arc<FinCat>, objs: &[Obj]) -> (Arc<FinCat>, FinFunctor) {
    let mut keep = vec![false; cat.num_objects()];
    for o in objs {
        keep[o.0] = true;
    }
    let mors: Vec<Mor> = cat.morphisms().filter(|&m| keep[cat.src(m).0] && keep[cat.tgt(m).0]).collect();
    subcategory(cat, &mors, objs).expect("full subcategories are closed")
}

/// Objects `(x, u: F x -> c)` of the comma category `F ↓ c`, grouped into
/// connected components. Both the components and their members are listed
/// in index order.
pub fn comma_components(f: &FinFunctor, c: Obj) -> Vec<Vec<(Obj, Mor)>> {
    let (x, cc) = (f.dom(), f.cod());
    let mut elems = Vec::new();
    let mut index = HashMap::new();
    for a in x.objects() {
        for &u in cc.hom(f.ob(a), c) {
            index.insert((a, u), elems.len());
            elems.push((a, u));
        }
    }
    let mut uf = UnionFind::new(elems.len());
    for w in x.morphisms() {
        if x.is_identity(w) {
            continue;
        }
        let fw = f.mor(w);
        for &u2 in cc.hom(f.ob(x.tgt(w)), c) {
            let u1 = cc.then(fw, u2);
            uf.union(index[&(x.src(w), u1)], index[&(x.tgt(w), u2)]);
        }
    }
    uf.groups().into_iter().map(|g| g.into_iter().map(|i| elems[i]).collect()).collect()
}

/// The comma category `F ↓ c`. Objects are `(x,u)`, morphisms are
/// `(w,u,u')` with `u' ∘ F w = u`.
pub fn comma_over(f: &FinFunctor, c: Obj) -> FinCat {
    let (x, cc) = (f.dom(), f.cod());
    let mut elems = Vec::new();
    let mut index = HashMap::new();
    for a in x.objects() {
        for &u in cc.hom(f.ob(a), c) {
            index.insert((a, u), elems.len());
            elems.push((a, u));
        }
    }
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    for w in x.morphisms() {
        for &u2 in cc.hom(f.ob(x.tgt(w)), c) {
            let u1 = cc.then(f.mor(w), u2);
            arrow_index.insert((w, u1, u2), arrows.len());
            arrows.push((w, u1, u2));
        }
    }
    let objects = elems.iter().map(|&(a, u)| pair(x.obj_name(a), cc.mor_name(u))).collect();
    let morphisms = arrows
        .iter()
        .map(|&(w, u1, u2)| {
            (
                triple(x.mor_name(w), cc.mor_name(u1), cc.mor_name(u2)),
                index[&(x.src(w), u1)],
                index[&(x.tgt(w), u2)],
            )
        })
        .collect();
    let identities: Vec<usize> = elems.iter().map(|&(a, u)| arrow_index[&(x.identity(a), u, u)]).collect();
    assemble(objects, morphisms, &identities, |i, j| {
        let ((w1, u1, _), (w2, _, u3)) = (arrows[i], arrows[j]);
        arrow_index[&(x.then(w1, w2), u1, u3)]
    })
    .expect("comma names are distinct")
    .cat
}

/// Connected components of a category, in index order.
pub fn pi0(cat: &FinCat) -> Vec<Vec<Obj>> {
    let mut uf = UnionFind::new(cat.num_objects());
    for m in cat.morphisms() {
        uf.union(cat.src(m).0, cat.tgt(m).0);
    }
    uf.groups().into_iter().map(|g| g.into_iter().map(Obj).collect()).collect()
}

impl FinFunctor {
    /// Every comma category `F ↓ c` is nonempty and connected.
    pub fn is_initial(&self) -> bool {
        self.cod().objects().all(|c| comma_components(self, c).len() == 1)
    }
}

/// A factorization `F = second ∘ first` through a middle category.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub mid: Arc<FinCat>,
    pub first: FinFunctor,
    pub second: FinFunctor,
}

/// Factors `F: X -> C` as an initial functor followed by a discrete
/// opfibration. The middle category is the category of elements of
/// `c ↦ π₀(F ↓ c)`; each component is named `[x,u]` after its first member.
pub fn comprehensive_factorization(f: &FinFunctor) -> Factorization {
    let (x, c) = (f.dom(), f.cod());
    let comps: Vec<Vec<Vec<(Obj, Mor)>>> = c.objects().map(|o| comma_components(f, o)).collect();
    let mut comp_of: HashMap<(Obj, Mor), usize> = HashMap::new();
    let mut objects = Vec::new();
    let mut labels = Vec::new();
    let mut obj_base = Vec::new();
    let mut first_local = vec![0usize; c.num_objects()];
    for o in c.objects() {
        first_local[o.0] = objects.len();
        for comp in &comps[o.0] {
            let (a, u) = comp[0];
            let label = format!("[{},{}]", x.obj_name(a), c.mor_name(u));
            for &e in comp {
                comp_of.insert(e, objects.len());
            }
            objects.push(pair(c.obj_name(o), &label));
            labels.push(label);
            obj_base.push((o, comp[0]));
        }
    }
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    for v in c.morphisms() {
        let s = c.src(v);
        for k in 0..comps[s.0].len() {
            let local = first_local[s.0] + k;
            let (a, u) = obj_base[local].1;
            let target = comp_of[&(a, c.then(u, v))];
            arrow_index.insert((v, local), arrows.len());
            arrows.push((v, local, target));
        }
    }
    let morphisms = arrows
        .iter()
        .map(|&(v, s, t)| (pair(c.mor_name(v), &labels[s]), s, t))
        .collect();
    let identities: Vec<usize> =
        obj_base.iter().enumerate().map(|(l, &(o, _))| arrow_index[&(c.identity(o), l)]).collect();
    let asm = assemble(objects, morphisms, &identities, |i, j| {
        let ((v1, s, _), (v2, _, _)) = (arrows[i], arrows[j]);
        arrow_index[&(c.then(v1, v2), s)]
    })
    .expect("factorization names are distinct");
    let second_o = asm.obj_images(|l| obj_base[l].0);
    let second_m = asm.mor_images(|m| arrows[m].0);
    let mid = Arc::new(asm.cat);
    let second = FinFunctor::new_unchecked(mid.clone(), c.clone(), second_o, second_m);
    let first_o = x.objects().map(|a| asm.obj_of[comp_of[&(a, c.identity(f.ob(a)))]]).collect();
    let first_m = x
        .morphisms()
        .map(|w| {
            let a = x.src(w);
            let local = comp_of[&(a, c.identity(f.ob(a)))];
            asm.mor_of[arrow_index[&(f.mor(w), local)]]
        })
        .collect();
    let first = FinFunctor::new_unchecked(x.clone(), mid.clone(), first_o, first_m);
    Factorization { mid, first, second }
}

/// The décalage `Dec(A)`, the coproduct of the slices `A/a`, with its
/// counit `Dec(A) -> A` sending an object `g: x -> a` to `x`.
#[derive(Clone, Debug)]
pub struct Decalage {
    pub cat: Arc<FinCat>,
    pub counit: FinFunctor,
}

/// Objects are named after morphisms of `A`; a morphism `(h,g')` goes from
/// `g' ∘ h` to `g'`.
pub fn decalage(a: &Arc<FinCat>) -> Decalage {
    let objects: Vec<String> = a.morphisms().map(|g| a.mor_name(g).to_string()).collect();
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    for g2 in a.morphisms() {
        for &h in a.into_obj(a.src(g2)) {
            arrow_index.insert((h, g2), arrows.len());
            arrows.push((h, g2));
        }
    }
    let morphisms = arrows
        .iter()
        .map(|&(h, g2)| (pair(a.mor_name(h), a.mor_name(g2)), a.then(h, g2).0, g2.0))
        .collect();
    let identities: Vec<usize> = a.morphisms().map(|g| arrow_index[&(a.identity(a.src(g)), g)]).collect();
    let asm = assemble(objects, morphisms, &identities, |i, j| {
        let ((h1, _), (h2, g3)) = (arrows[i], arrows[j]);
        arrow_index[&(a.then(h1, h2), g3)]
    })
    .expect("décalage names are distinct");
    let counit_o = asm.obj_images(|g| a.src(Mor(g)));
    let counit_m = asm.mor_images(|m| arrows[m].0);
    let cat = Arc::new(asm.cat);
    Decalage { counit: FinFunctor::new_unchecked(cat.clone(), a.clone(), counit_o, counit_m), cat }
}

/// `Dec(f): Dec(X) -> Dec(A)`.
pub fn decalage_map(f: &FinFunctor, dec_x: &Decalage, dec_a: &Decalage) -> FinFunctor {
    let (x, a) = (f.dom(), f.cod());
    let (dx, da) = (&dec_x.cat, &dec_a.cat);
    let obj_map = dx
        .objects()
        .map(|o| {
            let g = x.mor(dx.obj_name(o)).expect("décalage object");
            da.obj(a.mor_name(f.mor(g))).expect("image object")
        })
        .collect();
    // Morphisms of Dec(X) are (h, g'), recoverable from the counit and the
    // target object.
    let mor_map = dx
        .morphisms()
        .map(|m| {
            let h = dec_x.counit.mor(m);
            let g2 = x.mor(dx.obj_name(dx.tgt(m))).expect("décalage object");
            da.mor(&pair(a.mor_name(f.mor(h)), a.mor_name(f.mor(g2)))).expect("image morphism")
        })
        .collect();
    FinFunctor::new_unchecked(dx.clone(), da.clone(), obj_map, mor_map)
}

#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Merges two classes, keeping the smaller representative. Returns
    /// whether anything changed.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Classes in order of their least member, each sorted.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            let k = *slot.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(i);
        }
        out
    }
}

/// The functor determined by an object map and its values on morphisms that
/// generate `dom` under composition. Fails when the generators do not reach
/// every morphism or their values are inconsistent.
pub fn induced_functor(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    obj_map: Vec<Obj>,
    generators: &[(Mor, Mor)],
) -> Result<FinFunctor> {
    let mut image: Vec<Option<Mor>> = vec![None; dom.num_morphisms()];
    let mut queue = Vec::new();
    for o in dom.objects() {
        image[dom.identity(o).0] = Some(cod.identity(obj_map[o.0]));
        queue.push(dom.identity(o));
    }
    let mut out_gens: Vec<Vec<(Mor, Mor)>> = vec![Vec::new(); dom.num_objects()];
    for &(g, v) in generators {
        out_gens[dom.src(g).0].push((g, v));
    }
    while let Some(m) = queue.pop() {
        let im = image[m.0].expect("queued morphisms have images");
        for &(g, v) in &out_gens[dom.tgt(m).0] {
            let c = dom.then(m, g);
            let ic = cod
                .compose(im, v)
                .ok_or_else(|| Error::Precondition(format!("generator {} has an ill-typed image", dom.mor_name(g))))?;
            match image[c.0] {
                Some(prev) if prev != ic => {
                    return Err(Error::Precondition(format!(
                        "generators send {} to both {} and {}",
                        dom.mor_name(c),
                        cod.mor_name(prev),
                        cod.mor_name(ic)
                    )))
                }
                Some(_) => {}
                None => {
                    image[c.0] = Some(ic);
                    queue.push(c);
                }
            }
        }
    }
    let mor_map = image
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::Precondition(format!("{} is not generated", dom.mor_name(Mor(i))))))
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(dom.clone(), cod.clone(), obj_map, mor_map)
}
