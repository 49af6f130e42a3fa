use super::elements::{elements, fibres, same_base};
use super::indexed::IndexedSmf;
use super::morphism::IdxMorphism;
use crate::error::{Error, Result};
use crate::fincat::{
    comprehensive_factorization, coproduct, induced_functor, product, pushout_along_ioo, FinFunctor, Mor, Obj, PushoutBound,
};
use crate::lens::{hat_lambda, hat_upsilon, DeltaLens, DiaLens, LensMorphism};
use crate::names::{inl, inr, pair};
use crate::smult::{FinFunction, FinSet, Smf};

/// Whether every `α ∈ F(u)` factors uniquely as `μ_(u, id)(σ_u(s_u α), χ)`
/// with `χ ∈ F(id_y)` starting at `t_u(σ_u(s_u α))`.
pub fn is_split_opfibration_idx(x: &IndexedSmf) -> bool {
    let b = x.base();
    b.morphisms().all(|u| {
        let m = x.carrier(u);
        let idy = b.identity(b.tgt(u));
        let mid = x.carrier(idy);
        m.carrier().indices().all(|al| {
            let lift = m.sigma.at(m.s.at(al));
            let start = m.t.at(lift);
            let hits = mid
                .carrier()
                .indices()
                .filter(|&chi| mid.s.at(chi) == start && x.mu(u, idy, lift, chi) == Some(al))
                .count();
            hits == 1
        })
    })
}

/// Re-indexing along `k: D -> B`: `x ↦ F(k x)`, `u ↦ F(k u)`.
pub fn pullback_idx(x: &IndexedSmf, k: &FinFunctor) -> Result<IndexedSmf> {
    if k.cod() != x.base() {
        return Err(Error::Mismatch("re-indexing functor does not land in the base".into()));
    }
    let d = k.dom().clone();
    let objsets = d.objects().map(|o| x.objset(k.ob(o)).clone()).collect();
    let carriers = d.morphisms().map(|u| x.carrier(k.mor(u)).clone()).collect();
    Ok(IndexedSmf::new_unchecked(d, objsets, carriers, |u, v, al, be| {
        x.mu(k.mor(u), k.mor(v), al, be).expect("functor preserves composable pairs")
    }))
}

/// The opcartesian transport along `g: B -> C`. The lens of elements is
/// turned into a diagram `Λ -> A -> B`; `g f p` is factored as an initial
/// functor `e: Λ -> M` followed by a discrete opfibration `M -> C`; `p` is
/// pushed out along `e`; and the fibres of the resulting lens are returned.
pub fn pushforward_idx(x: &IndexedSmf, g: &FinFunctor, bound: PushoutBound) -> Result<IndexedSmf> {
    if g.dom() != x.base() {
        return Err(Error::Mismatch("transport functor does not start at the base".into()));
    }
    let unit = pushforward_lens(&elements(x)?.lens, g, bound)?;
    let out = fibres(&unit.target);
    let report = out.law_violations();
    if !report.is_ok() {
        return Err(Error::Undecided(format!("transported data failed validation: {report}")));
    }
    Ok(out)
}

/// The opcartesian lens morphism over `g` out of `l`; its target is the
/// transported lens.
pub fn pushforward_lens(l: &DeltaLens, g: &FinFunctor, bound: PushoutBound) -> Result<LensMorphism> {
    if g.dom() != l.cod() {
        return Err(Error::Mismatch("transport functor does not start at the codomain".into()));
    }
    let d = hat_lambda(l);
    let fg = l.functor().then(g)?;
    let fact = comprehensive_factorization(&d.p().then(&fg)?);
    let cocone = pushout_along_ioo(d.p(), &fact.first, bound)?;
    let (a, m, p) = (l.dom(), &fact.mid, &cocone.cat);
    let mut obj_map = vec![Obj(0); p.num_objects()];
    for o in m.objects() {
        obj_map[cocone.right.ob(o).0] = fact.second.ob(o);
    }
    let mut gens: Vec<(Mor, Mor)> = a.morphisms().map(|w| (cocone.left.mor(w), fg.mor(w))).collect();
    gens.extend(m.morphisms().map(|v| (cocone.right.mor(v), fact.second.mor(v))));
    let induced = induced_functor(p, g.cod(), obj_map, &gens)
        .map_err(|e| Error::Undecided(format!("pushout cocone does not induce a functor: {e}")))?;
    let dia = DiaLens::new(cocone.right.clone(), induced)
        .map_err(|e| Error::Undecided(format!("transported diagram failed validation: {e}")))?;
    let pushed = hat_upsilon(&dia)?;
    LensMorphism::new(l.clone(), pushed, cocone.left.clone(), g.clone())
        .map_err(|e| Error::Undecided(format!("transport unit failed validation: {e}")))
}

/// A product or coproduct with its two structure morphisms.
#[derive(Clone, Debug)]
pub struct IdxLimit {
    pub object: IndexedSmf,
    pub left: IdxMorphism,
    pub right: IdxMorphism,
}

struct PairSet {
    set: FinSet,
    decode: Vec<(usize, usize)>,
}

impl PairSet {
    fn new(a: &FinSet, b: &FinSet) -> PairSet {
        let set = FinSet::product(a, b);
        let mut decode = vec![(0, 0); set.len()];
        for i in a.indices() {
            for j in b.indices() {
                decode[set.index(&pair(a.name(i), b.name(j))).expect("member")] = (i, j);
            }
        }
        PairSet { set, decode }
    }

    fn encode(&self, a: &FinSet, b: &FinSet, i: usize, j: usize) -> usize {
        self.set.index(&pair(a.name(i), b.name(j))).expect("member")
    }
}

/// Tag and index for each element of `A + B`.
fn sum_decode(a: &FinSet, b: &FinSet) -> (FinSet, Vec<(bool, usize)>) {
    let set = FinSet::coproduct(a, b);
    let mut decode = vec![(true, 0); set.len()];
    for i in a.indices() {
        decode[set.index(&inl(a.name(i))).expect("member")] = (true, i);
    }
    for j in b.indices() {
        decode[set.index(&inr(b.name(j))).expect("member")] = (false, j);
    }
    (set, decode)
}

/// The product over `B × D`, with `F(x,d) = F(x) × G(d)`.
pub fn product_idx(x: &IndexedSmf, y: &IndexedSmf) -> IdxLimit {
    let cone = product(x.base(), y.base());
    let base = cone.cat.clone();
    let (pl, pr) = (&cone.left, &cone.right);
    let objsets: Vec<FinSet> = base.objects().map(|o| FinSet::product(x.objset(pl.ob(o)), y.objset(pr.ob(o)))).collect();
    let carriers: Vec<Smf> = base.morphisms().map(|u| x.carrier(pl.mor(u)).product(y.carrier(pr.mor(u)))).collect();
    let pairs: Vec<PairSet> = base
        .morphisms()
        .map(|u| PairSet::new(x.carrier(pl.mor(u)).carrier(), y.carrier(pr.mor(u)).carrier()))
        .collect();
    let object = IndexedSmf::new_unchecked(base.clone(), objsets, carriers, |u, v, al, be| {
        let ((a1, b1), (a2, b2)) = (pairs[u.0].decode[al], pairs[v.0].decode[be]);
        let vu = base.then(u, v);
        let r1 = x.mu(pl.mor(u), pl.mor(v), a1, a2).expect("componentwise pullback");
        let r2 = y.mu(pr.mor(u), pr.mor(v), b1, b2).expect("componentwise pullback");
        pairs[vu.0].encode(x.carrier(pl.mor(vu)).carrier(), y.carrier(pr.mor(vu)).carrier(), r1, r2)
    });
    let project = |target: &IndexedSmf, k: &FinFunctor, first: bool| {
        let pick = |f: (FinFunction, FinFunction)| if first { f.0 } else { f.1 };
        let theta0 = base
            .objects()
            .map(|o| pick(FinFunction::projections(x.objset(pl.ob(o)), y.objset(pr.ob(o)))))
            .collect();
        let theta1 = base
            .morphisms()
            .map(|u| pick(FinFunction::projections(x.carrier(pl.mor(u)).carrier(), y.carrier(pr.mor(u)).carrier())))
            .collect();
        IdxMorphism::new_unchecked(object.clone(), target.clone(), k.clone(), theta0, theta1)
    };
    let left = project(x, pl, true);
    let right = project(y, pr, false);
    IdxLimit { object, left, right }
}

/// The coproduct over `B + D`, keeping element names.
pub fn coproduct_idx(x: &IndexedSmf, y: &IndexedSmf) -> IdxLimit {
    let cocone = coproduct(x.base(), y.base());
    let base = cocone.cat.clone();
    let (il, ir) = (&cocone.left, &cocone.right);
    let n_obj = base.num_objects();
    let mut objsets = vec![FinSet::empty(); n_obj];
    for o in x.base().objects() {
        objsets[il.ob(o).0] = x.objset(o).clone();
    }
    for o in y.base().objects() {
        objsets[ir.ob(o).0] = y.objset(o).clone();
    }
    let mut side_mor: Vec<(bool, Mor)> = vec![(true, Mor(0)); base.num_morphisms()];
    for u in x.base().morphisms() {
        side_mor[il.mor(u).0] = (true, u);
    }
    for u in y.base().morphisms() {
        side_mor[ir.mor(u).0] = (false, u);
    }
    let pick = |left: bool| if left { x } else { y };
    let carriers = side_mor.iter().map(|&(s, u)| pick(s).carrier(u).clone()).collect();
    let object = IndexedSmf::new_unchecked(base.clone(), objsets, carriers, |u, v, al, be| {
        let ((s, u0), (_, v0)) = (side_mor[u.0], side_mor[v.0]);
        pick(s).mu(u0, v0, al, be).expect("same summand")
    });
    let inject = |source: &IndexedSmf, k: &FinFunctor| {
        let b = source.base();
        IdxMorphism::new_unchecked(
            source.clone(),
            object.clone(),
            k.clone(),
            b.objects().map(|o| FinFunction::identity(source.objset(o))).collect(),
            b.morphisms().map(|u| FinFunction::identity(source.carrier(u).carrier())).collect(),
        )
    };
    let left = inject(x, il);
    let right = inject(y, ir);
    IdxLimit { object, left, right }
}

/// The fibrewise product over a common base, `F(x) × G(x)`.
pub fn fib_product_idx(x: &IndexedSmf, y: &IndexedSmf) -> Result<IdxLimit> {
    let base = same_base(x, y)?;
    let objsets = base.objects().map(|o| FinSet::product(x.objset(o), y.objset(o))).collect();
    let carriers = base.morphisms().map(|u| x.carrier(u).product(y.carrier(u))).collect();
    let pairs: Vec<PairSet> = base.morphisms().map(|u| PairSet::new(x.carrier(u).carrier(), y.carrier(u).carrier())).collect();
    let object = IndexedSmf::new_unchecked(base.clone(), objsets, carriers, |u, v, al, be| {
        let ((a1, b1), (a2, b2)) = (pairs[u.0].decode[al], pairs[v.0].decode[be]);
        let vu = base.then(u, v);
        let r1 = x.mu(u, v, a1, a2).expect("componentwise pullback");
        let r2 = y.mu(u, v, b1, b2).expect("componentwise pullback");
        pairs[vu.0].encode(x.carrier(vu).carrier(), y.carrier(vu).carrier(), r1, r2)
    });
    let id = FinFunctor::identity(base.clone());
    let project = |target: &IndexedSmf, first: bool| {
        let pick = |f: (FinFunction, FinFunction)| if first { f.0 } else { f.1 };
        IdxMorphism::new_unchecked(
            object.clone(),
            target.clone(),
            id.clone(),
            base.objects().map(|o| pick(FinFunction::projections(x.objset(o), y.objset(o)))).collect(),
            base.morphisms()
                .map(|u| pick(FinFunction::projections(x.carrier(u).carrier(), y.carrier(u).carrier())))
                .collect(),
        )
    };
    let left = project(x, true);
    let right = project(y, false);
    Ok(IdxLimit { object, left, right })
}

/// The fibrewise coproduct over a common base, `F(x) + G(x)`.
pub fn fib_coproduct_idx(x: &IndexedSmf, y: &IndexedSmf) -> Result<IdxLimit> {
    let base = same_base(x, y)?;
    let objsets = base.objects().map(|o| FinSet::coproduct(x.objset(o), y.objset(o))).collect();
    let carriers = base.morphisms().map(|u| x.carrier(u).coproduct(y.carrier(u))).collect();
    let sums: Vec<(FinSet, Vec<(bool, usize)>)> =
        base.morphisms().map(|u| sum_decode(x.carrier(u).carrier(), y.carrier(u).carrier())).collect();
    let object = IndexedSmf::new_unchecked(base.clone(), objsets, carriers, |u, v, al, be| {
        let ((left, a), (_, b)) = (sums[u.0].1[al], sums[v.0].1[be]);
        let vu = base.then(u, v);
        let set = &sums[vu.0].0;
        if left {
            set.index(&inl(x.carrier(vu).carrier().name(x.mu(u, v, a, b).expect("same summand")))).expect("member")
        } else {
            set.index(&inr(y.carrier(vu).carrier().name(y.mu(u, v, a, b).expect("same summand")))).expect("member")
        }
    });
    let id = FinFunctor::identity(base.clone());
    let inject = |source: &IndexedSmf, first: bool| {
        let pick = |f: (FinFunction, FinFunction)| if first { f.0 } else { f.1 };
        IdxMorphism::new_unchecked(
            source.clone(),
            object.clone(),
            id.clone(),
            base.objects().map(|o| pick(FinFunction::injections(x.objset(o), y.objset(o)))).collect(),
            base.morphisms()
                .map(|u| pick(FinFunction::injections(x.carrier(u).carrier(), y.carrier(u).carrier())))
                .collect(),
        )
    };
    let left = inject(x, true);
    let right = inject(y, false);
    Ok(IdxLimit { object, left, right })
}
