use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::delta::DeltaLens;
use super::morphism::LensMorphism;
use crate::error::{Error, Result};
use crate::fincat::{subcategory, validate_functor_between, FinCat, FinFunctor, Mor, Obj, RawCategory, RawFunctor};
use crate::report::ValidationReport;

/// Wire format of a diagrammatic lens `X --p--> A --f--> B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiaLens {
    pub cat_x: RawCategory,
    pub cat_a: RawCategory,
    pub cat_b: RawCategory,
    pub p: RawFunctor,
    pub f: RawFunctor,
}

/// A pair `p: X -> A`, `f: A -> B` with `p` identity-on-objects and `f p` a
/// discrete opfibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiaLens {
    p: FinFunctor,
    f: FinFunctor,
}

impl DiaLens {
    pub fn new(p: FinFunctor, f: FinFunctor) -> Result<DiaLens> {
        let d = DiaLens { p, f };
        let report = d.law_violations();
        if report.is_ok() {
            Ok(d)
        } else {
            Err(Error::invalid("diagrammatic lens", report))
        }
    }

    pub fn new_unchecked(p: FinFunctor, f: FinFunctor) -> DiaLens {
        DiaLens { p, f }
    }

    pub fn p(&self) -> &FinFunctor {
        &self.p
    }

    pub fn f(&self) -> &FinFunctor {
        &self.f
    }

    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.p.cod() != self.f.dom() {
            report.malformed("p and f are not composable", Vec::<String>::new());
            return report;
        }
        if !self.p.is_identity_on_objects() {
            report.push("p identity-on-objects", Vec::<String>::new());
        }
        let fp = self.p.then(&self.f).expect("composable");
        if !fp.is_discrete_opfibration() {
            let x = self.p.dom();
            for a in x.objects() {
                for &u in fp.cod().out_of(fp.ob(a)) {
                    let n = x.out_of(a).iter().filter(|&&w| fp.mor(w) == u).count();
                    if n != 1 {
                        report.push("f p discrete opfibration", [x.obj_name(a), fp.cod().mor_name(u)]);
                    }
                }
            }
        }
        report
    }

    pub fn to_raw(&self) -> RawDiaLens {
        RawDiaLens {
            cat_x: self.p.dom().to_raw(),
            cat_a: self.f.dom().to_raw(),
            cat_b: self.f.cod().to_raw(),
            p: self.p.to_raw_maps(),
            f: self.f.to_raw_maps(),
        }
    }

    pub fn from_raw(raw: &RawDiaLens) -> Result<DiaLens> {
        let (d, report) = resolve_dialens(raw);
        match d {
            Some(d) if report.is_ok() => {
                let laws = d.law_violations();
                if laws.is_ok() {
                    Ok(d)
                } else {
                    Err(Error::invalid("diagrammatic lens", laws))
                }
            }
            _ => Err(Error::invalid("diagrammatic lens", report)),
        }
    }
}

fn resolve_dialens(raw: &RawDiaLens) -> (Option<DiaLens>, ValidationReport) {
    let mut report = ValidationReport::new();
    for (what, sub) in [
        ("p", validate_functor_between(&raw.cat_x, &raw.cat_a, &raw.p.obj_map, &raw.p.mor_map)),
        ("f", validate_functor_between(&raw.cat_a, &raw.cat_b, &raw.f.obj_map, &raw.f.mor_map)),
    ] {
        if sub.has_malformed() {
            report.malformed(&format!("functor {what} is malformed"), [sub.to_string()]);
        } else {
            report.extend(sub);
        }
    }
    if !report.is_ok() {
        return (None, report);
    }
    let x = Arc::new(FinCat::from_raw(&raw.cat_x).expect("validated"));
    let a = Arc::new(FinCat::from_raw(&raw.cat_a).expect("validated"));
    let b = Arc::new(FinCat::from_raw(&raw.cat_b).expect("validated"));
    let p = FinFunctor::from_names(x, a.clone(), &raw.p.obj_map, &raw.p.mor_map).expect("validated");
    let f = FinFunctor::from_names(a, b, &raw.f.obj_map, &raw.f.mor_map).expect("validated");
    (Some(DiaLens { p, f }), report)
}

/// Reports malformed data, functor law failures and violated diagrammatic
/// lens conditions.
pub fn check_dialens(raw: &RawDiaLens) -> ValidationReport {
    let (d, mut report) = resolve_dialens(raw);
    if let Some(d) = d {
        report.extend(d.law_violations());
    }
    report
}

/// The wide subcategory `Λ` of chosen lifts and its inclusion into the domain.
pub fn lambda(l: &DeltaLens) -> (Arc<FinCat>, FinFunctor) {
    let a = l.dom();
    let mut mors: Vec<Mor> = l.lift_entries().into_iter().map(|(_, _, w)| w).collect();
    mors.sort();
    mors.dedup();
    let all: Vec<Obj> = a.objects().collect();
    subcategory(a, &mors, &all).expect("lifts of a valid lens form a wide subcategory")
}

/// The unique lens structure on a discrete opfibration.
pub fn dopf_lens(f: &FinFunctor) -> Result<DeltaLens> {
    if !f.is_discrete_opfibration() {
        return Err(Error::Precondition("functor is not a discrete opfibration".into()));
    }
    let a = f.dom();
    Ok(DeltaLens::new_unchecked(f.clone(), |o, u| {
        *a.out_of(o).iter().find(|&&w| f.mor(w) == u).expect("dopf has a lift")
    }))
}

/// The lens of a diagram, with lifts `φ(a, u) = p(ψ(a, u))` where `ψ` is the
/// unique lift along `f p`, and the isomorphism `j: X -> Λ` with
/// `incl ∘ j = p`.
pub fn lens_from_diagram(d: &DiaLens) -> Result<(DeltaLens, FinFunctor)> {
    let report = d.law_violations();
    if !report.is_ok() {
        return Err(Error::invalid("diagrammatic lens", report));
    }
    let (p, f) = (&d.p, &d.f);
    let x = p.dom();
    let x_of: HashMap<Obj, Obj> = x.objects().map(|o| (p.ob(o), o)).collect();
    let fp = p.then(f)?;
    let lens = DeltaLens::new_unchecked(f.clone(), |a, u| {
        let xo = x_of[&a];
        let w = *x.out_of(xo).iter().find(|&&w| fp.mor(w) == u).expect("fp is a dopf");
        p.mor(w)
    });
    let (lam, incl) = lambda(&lens);
    let lam_of: HashMap<Mor, Mor> = lam.morphisms().map(|m| (incl.mor(m), m)).collect();
    let obj_map = x.objects().map(|o| lam.obj(p.cod().obj_name(p.ob(o))).expect("wide")).collect();
    let mor_map = x.morphisms().map(|w| lam_of[&p.mor(w)]).collect();
    let j = FinFunctor::new_unchecked(x.clone(), lam, obj_map, mor_map);
    Ok((lens, j))
}

/// `(incl, f)` where `incl: Λ -> A` is the inclusion of chosen lifts.
pub fn hat_lambda(l: &DeltaLens) -> DiaLens {
    let (_, incl) = lambda(l);
    DiaLens { p: incl, f: l.functor().clone() }
}

pub fn hat_upsilon(d: &DiaLens) -> Result<DeltaLens> {
    lens_from_diagram(d).map(|(l, _)| l)
}

/// The counit `(incl, 1_B)` from the discrete opfibration `f ∘ incl` of
/// chosen lifts to `l`.
pub fn counit_at(l: &DeltaLens) -> LensMorphism {
    let (_, incl) = lambda(l);
    let fi = incl.then(l.functor()).expect("composable");
    let source = dopf_lens(&fi).expect("lifts form a discrete opfibration");
    LensMorphism::new_unchecked(source, l.clone(), incl, FinFunctor::identity(l.cod().clone()))
}
