use super::elements::{elements, fibres};
use super::indexed::IndexedSmf;
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, Mor};
use crate::lens::LensMorphism;
use crate::names::pair;
use crate::report::ValidationReport;
use crate::smult::FinFunction;

/// A morphism of indexed data `(k, θ)`: a base functor `k` and functions
/// `θ_x: F(x) -> G(k x)`, `θ_u: F(u) -> G(k u)` commuting with all structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdxMorphism {
    pub source: IndexedSmf,
    pub target: IndexedSmf,
    pub k: FinFunctor,
    pub theta0: Vec<FinFunction>,
    pub theta1: Vec<FinFunction>,
}

impl IdxMorphism {
    pub fn new(
        source: IndexedSmf,
        target: IndexedSmf,
        k: FinFunctor,
        theta0: Vec<FinFunction>,
        theta1: Vec<FinFunction>,
    ) -> Result<IdxMorphism> {
        let m = Self::new_unchecked(source, target, k, theta0, theta1);
        let report = m.law_violations();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(Error::invalid("indexed morphism", report))
        }
    }

    pub fn new_unchecked(
        source: IndexedSmf,
        target: IndexedSmf,
        k: FinFunctor,
        theta0: Vec<FinFunction>,
        theta1: Vec<FinFunction>,
    ) -> IdxMorphism {
        IdxMorphism { source, target, k, theta0, theta1 }
    }

    pub fn identity(x: &IndexedSmf) -> IdxMorphism {
        let b = x.base();
        IdxMorphism {
            source: x.clone(),
            target: x.clone(),
            k: FinFunctor::identity(b.clone()),
            theta0: b.objects().map(|o| FinFunction::identity(x.objset(o))).collect(),
            theta1: b.morphisms().map(|u| FinFunction::identity(x.carrier(u).carrier())).collect(),
        }
    }

    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (f, g, k) = (&self.source, &self.target, &self.k);
        let b = f.base();
        if k.dom() != f.base() || k.cod() != g.base() {
            report.malformed("base functor does not join the bases", Vec::<String>::new());
            return report;
        }
        for o in b.objects() {
            let th = &self.theta0[o.0];
            if th.dom() != f.objset(o) || th.cod() != g.objset(k.ob(o)) {
                report.malformed("θ on an object has the wrong type", [b.obj_name(o)]);
            }
        }
        for u in b.morphisms() {
            let th = &self.theta1[u.0];
            if th.dom() != f.carrier(u).carrier() || th.cod() != g.carrier(k.mor(u)).carrier() {
                report.malformed("θ on a morphism has the wrong type", [b.mor_name(u)]);
            }
        }
        if !report.is_ok() {
            return report;
        }
        for u in b.morphisms() {
            let (fu, gu, th) = (f.carrier(u), g.carrier(k.mor(u)), &self.theta1[u.0]);
            let (tx, ty) = (&self.theta0[b.src(u).0], &self.theta0[b.tgt(u).0]);
            for al in fu.carrier().indices() {
                if gu.s.at(th.at(al)) != tx.at(fu.s.at(al)) {
                    report.push("θ commutes with s", [b.mor_name(u), fu.carrier().name(al)]);
                }
                if gu.t.at(th.at(al)) != ty.at(fu.t.at(al)) {
                    report.push("θ commutes with t", [b.mor_name(u), fu.carrier().name(al)]);
                }
            }
            for a in fu.src().indices() {
                if th.at(fu.sigma.at(a)) != gu.sigma.at(tx.at(a)) {
                    report.push("θ commutes with σ", [b.mor_name(u), fu.src().name(a)]);
                }
            }
        }
        if !report.is_ok() {
            return report;
        }
        for (u, v) in b.composable_pairs() {
            let vu = b.then(u, v);
            for (al, be) in f.pairs(u, v) {
                let lhs = self.theta1[vu.0].at(f.mu(u, v, al, be).expect("total"));
                let rhs = g.mu(k.mor(u), k.mor(v), self.theta1[u.0].at(al), self.theta1[v.0].at(be));
                if Some(lhs) != rhs {
                    report.push(
                        "θ commutes with μ",
                        [
                            b.mor_name(u),
                            b.mor_name(v),
                            f.carrier(u).carrier().name(al),
                            f.carrier(v).carrier().name(be),
                        ],
                    );
                }
            }
        }
        report
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &IdxMorphism) -> Result<IdxMorphism> {
        let k = self.k.then(&next.k)?;
        let b = self.source.base();
        let theta0 = b
            .objects()
            .map(|o| self.theta0[o.0].then(&next.theta0[self.k.ob(o).0]))
            .collect::<Result<Vec<_>>>()?;
        let theta1 = b
            .morphisms()
            .map(|u| self.theta1[u.0].then(&next.theta1[self.k.mor(u).0]))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdxMorphism { source: self.source.clone(), target: next.target.clone(), k, theta0, theta1 })
    }

    pub fn is_invertible(&self) -> bool {
        self.k.is_isomorphism()
            && self.theta0.iter().all(FinFunction::is_bijective)
            && self.theta1.iter().all(FinFunction::is_bijective)
    }
}

/// `El(k, θ)`: `(x,a) ↦ (k x, θ_x a)` and `(u,α) ↦ (k u, θ_u α)`, over `k`.
pub fn elements_morphism(m: &IdxMorphism) -> Result<LensMorphism> {
    let (src, tgt) = (elements(&m.source)?, elements(&m.target)?);
    let (b, d) = (m.source.base(), m.target.base());
    let (ea, ec) = (src.lens.dom().clone(), tgt.lens.dom().clone());
    let mut obj_map = vec![crate::fincat::Obj(0); ea.num_objects()];
    for o in b.objects() {
        for (i, a) in m.source.objset(o).elems().iter().enumerate() {
            let image = pair(d.obj_name(m.k.ob(o)), m.target.objset(m.k.ob(o)).name(m.theta0[o.0].at(i)));
            obj_map[ea.obj(&pair(b.obj_name(o), a)).expect("element").0] = ec.obj(&image).expect("element");
        }
    }
    let mut mor_map = vec![Mor(0); ea.num_morphisms()];
    for u in b.morphisms() {
        let ku = m.k.mor(u);
        for (i, al) in m.source.carrier(u).carrier().elems().iter().enumerate() {
            let image = pair(d.mor_name(ku), m.target.carrier(ku).carrier().name(m.theta1[u.0].at(i)));
            mor_map[ea.mor(&pair(b.mor_name(u), al)).expect("element").0] = ec.mor(&image).expect("element");
        }
    }
    let h = FinFunctor::new_unchecked(ea, ec, obj_map, mor_map);
    Ok(LensMorphism::new_unchecked(src.lens, tgt.lens, h, m.k.clone()))
}

/// The restriction of `h` to fibres: `θ_x a = h a` and `θ_u w = h w`.
pub fn fibres_morphism(m: &LensMorphism) -> Result<IdxMorphism> {
    let (f, g) = (fibres(&m.source), fibres(&m.target));
    let (a, c) = (m.source.dom(), m.target.dom());
    let b = f.base().clone();
    let theta0 = b
        .objects()
        .map(|o| {
            FinFunction::from_fn(f.objset(o), g.objset(m.k.ob(o)), |x| {
                c.obj_name(m.h.ob(a.obj(x).expect("fibre"))).to_string()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let theta1 = b
        .morphisms()
        .map(|u| {
            FinFunction::from_fn(f.carrier(u).carrier(), g.carrier(m.k.mor(u)).carrier(), |w| {
                c.mor_name(m.h.mor(a.mor(w).expect("fibre"))).to_string()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdxMorphism { source: f, target: g, k: m.k.clone(), theta0, theta1 })
}
