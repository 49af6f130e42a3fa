use serde::{Deserialize, Serialize};

use super::delta::{check_delta_lens, DeltaLens, RawDeltaLens};
use crate::error::{Error, Result};
use crate::fincat::{validate_functor_between, FinFunctor, RawFunctor};
use crate::report::ValidationReport;

/// Wire format of a lens morphism; `h` and `k` carry maps only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLensMorphism {
    pub source: RawDeltaLens,
    pub target: RawDeltaLens,
    pub h: RawFunctor,
    pub k: RawFunctor,
}

/// A commuting square of functors `h: A -> C`, `k: B -> D` between lenses
/// `(f, φ): A -> B` and `(g, ψ): C -> D` that carries chosen lifts to chosen
/// lifts.
#[derive(Clone, Debug)]
pub struct LensMorphism {
    pub source: DeltaLens,
    pub target: DeltaLens,
    pub h: FinFunctor,
    pub k: FinFunctor,
}

impl LensMorphism {
    pub fn new(source: DeltaLens, target: DeltaLens, h: FinFunctor, k: FinFunctor) -> Result<LensMorphism> {
        let m = Self::new_unchecked(source, target, h, k);
        let report = m.law_violations();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(Error::invalid("lens morphism", report))
        }
    }

    pub fn new_unchecked(source: DeltaLens, target: DeltaLens, h: FinFunctor, k: FinFunctor) -> LensMorphism {
        LensMorphism { source, target, h, k }
    }

    pub fn identity(l: &DeltaLens) -> LensMorphism {
        LensMorphism {
            source: l.clone(),
            target: l.clone(),
            h: FinFunctor::identity(l.dom().clone()),
            k: FinFunctor::identity(l.cod().clone()),
        }
    }

    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (f, g) = (self.source.functor(), self.target.functor());
        if self.h.dom() != f.dom() || self.h.cod() != g.dom() || self.k.dom() != f.cod() || self.k.cod() != g.cod() {
            report.malformed("lens morphism components do not match the lenses", Vec::<String>::new());
            return report;
        }
        let a = f.dom();
        for m in a.morphisms() {
            if self.k.mor(f.mor(m)) != g.mor(self.h.mor(m)) {
                report.push("square commutes", [a.mor_name(m)]);
            }
        }
        if !report.is_ok() {
            return report;
        }
        for (o, u, w) in self.source.lift_entries() {
            if self.h.mor(w) != self.target.lift(self.h.ob(o), self.k.mor(u)) {
                report.push("lift preservation", [a.obj_name(o), f.cod().mor_name(u)]);
            }
        }
        report
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LensMorphism) -> Result<LensMorphism> {
        Ok(LensMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            h: self.h.then(&next.h)?,
            k: self.k.then(&next.k)?,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.h.is_isomorphism() && self.k.is_isomorphism()
    }
}

impl LensMorphism {
    pub fn to_raw(&self) -> RawLensMorphism {
        RawLensMorphism {
            source: self.source.to_raw(),
            target: self.target.to_raw(),
            h: self.h.to_raw_maps(),
            k: self.k.to_raw_maps(),
        }
    }

    pub fn from_raw(raw: &RawLensMorphism) -> Result<LensMorphism> {
        let report = check_lens_morphism(raw);
        if !report.is_ok() {
            return Err(Error::invalid("lens morphism", report));
        }
        let source = DeltaLens::from_raw(&raw.source)?;
        let target = DeltaLens::from_raw(&raw.target)?;
        let h = FinFunctor::from_names(source.dom().clone(), target.dom().clone(), &raw.h.obj_map, &raw.h.mor_map)?;
        let k = FinFunctor::from_names(source.cod().clone(), target.cod().clone(), &raw.k.obj_map, &raw.k.mor_map)?;
        Ok(LensMorphism { source, target, h, k })
    }
}

/// Reports malformed data in either lens or component functor, and every
/// violated lens morphism condition.
pub fn check_lens_morphism(raw: &RawLensMorphism) -> ValidationReport {
    let mut report = ValidationReport::new();
    for (what, sub) in [("source lens", check_delta_lens(&raw.source)), ("target lens", check_delta_lens(&raw.target))] {
        if !sub.is_ok() {
            report.malformed(&format!("{what} is invalid"), [sub.to_string()]);
        }
    }
    if !report.is_ok() {
        return report;
    }
    let (s, t) = (&raw.source, &raw.target);
    for (what, sub) in [
        ("h", validate_functor_between(&s.cat_a, &t.cat_a, &raw.h.obj_map, &raw.h.mor_map)),
        ("k", validate_functor_between(&s.cat_b, &t.cat_b, &raw.k.obj_map, &raw.k.mor_map)),
    ] {
        if sub.has_malformed() {
            report.malformed(&format!("functor {what} is malformed"), [sub.to_string()]);
        } else {
            report.extend(sub);
        }
    }
    if !report.is_ok() {
        return report;
    }
    let source = DeltaLens::from_raw(s).expect("checked");
    let target = DeltaLens::from_raw(t).expect("checked");
    let h = FinFunctor::from_names(source.dom().clone(), target.dom().clone(), &raw.h.obj_map, &raw.h.mor_map)
        .expect("checked");
    let k = FinFunctor::from_names(source.cod().clone(), target.cod().clone(), &raw.k.obj_map, &raw.k.mor_map)
        .expect("checked");
    LensMorphism { source, target, h, k }.law_violations()
}
