use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{to_dot, FinCat, FinFunctor, Mor, Obj, RawCategory, RawFunctor};
use crate::report::ValidationReport;

/// One entry `φ(object, over) = lift` of a lift table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RawLift {
    pub object: String,
    pub over: String,
    pub lift: String,
}

/// Wire format of a delta lens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDeltaLens {
    pub cat_a: RawCategory,
    pub cat_b: RawCategory,
    pub functor: RawFunctor,
    pub lifts: Vec<RawLift>,
}

/// A functor `f: A -> B` with a chosen lift `φ(a, u): a -> a'` for every
/// object `a` and every `u: f a -> b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaLens {
    f: FinFunctor,
    lifts: Vec<HashMap<Mor, Mor>>,
}

impl DeltaLens {
    /// Builds a lens from a lift rule and checks the lens axioms.
    pub fn new(f: FinFunctor, lift: impl FnMut(Obj, Mor) -> Mor) -> Result<DeltaLens> {
        let l = Self::new_unchecked(f, lift);
        let report = l.law_violations();
        if report.is_ok() {
            Ok(l)
        } else {
            Err(Error::invalid("delta lens", report))
        }
    }

    pub fn new_unchecked(f: FinFunctor, mut lift: impl FnMut(Obj, Mor) -> Mor) -> DeltaLens {
        let (a, b) = (f.dom().clone(), f.cod().clone());
        let lifts = a.objects().map(|o| b.out_of(f.ob(o)).iter().map(|&u| (u, lift(o, u))).collect()).collect();
        DeltaLens { f, lifts }
    }

    /// The identity functor with `φ(a, u) = u`.
    pub fn identity(cat: Arc<FinCat>) -> DeltaLens {
        DeltaLens::new_unchecked(FinFunctor::identity(cat), |_, u| u)
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.f
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        self.f.dom()
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        self.f.cod()
    }

    /// `φ(a, u)`; panics when `u` does not start at `f a`.
    pub fn lift(&self, a: Obj, u: Mor) -> Mor {
        match self.lifts[a.0].get(&u) {
            Some(&w) => w,
            None => panic!("no lift of {} at {}", self.cod().mor_name(u), self.dom().obj_name(a)),
        }
    }

    /// All `(a, u)` pairs with their lifts, in index order.
    pub fn lift_entries(&self) -> Vec<(Obj, Mor, Mor)> {
        let mut out = Vec::new();
        for a in self.dom().objects() {
            for &u in self.cod().out_of(self.f.ob(a)) {
                out.push((a, u, self.lift(a, u)));
            }
        }
        out
    }

    /// Whether `w` is a chosen lift.
    pub fn is_lift(&self, w: Mor) -> bool {
        let a = self.dom().src(w);
        self.lifts[a.0].get(&self.f.mor(w)) == Some(&w)
    }

    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (a_cat, b_cat) = (&**self.dom(), &**self.cod());
        let names = |a: Obj, u: Mor| [a_cat.obj_name(a).to_string(), b_cat.mor_name(u).to_string()];
        for (a, u, w) in self.lift_entries() {
            if a_cat.src(w) != a {
                report.push("lift source", names(a, u));
                continue;
            }
            if self.f.mor(w) != u {
                report.push("DL1", names(a, u));
            }
            if b_cat.is_identity(u) && w != a_cat.identity(a) {
                report.push("DL2", names(a, u));
            }
        }
        for (a, u, w) in self.lift_entries() {
            if a_cat.src(w) != a || self.f.mor(w) != u {
                continue;
            }
            let a2 = a_cat.tgt(w);
            for &v in b_cat.out_of(b_cat.tgt(u)) {
                if b_cat.src(v) != self.f.ob(a2) {
                    // DL1 already failed at a2's lifts; skip ill-typed pairs.
                    continue;
                }
                let lhs = self.lift(a, b_cat.then(u, v));
                let w2 = self.lift(a2, v);
                if a_cat.src(w2) != a2 || a_cat.compose(w, w2) != Some(lhs) {
                    let mut wit = names(a, u).to_vec();
                    wit.push(b_cat.mor_name(v).to_string());
                    report.push("DL3", wit);
                }
            }
        }
        report
    }

    /// `(g, ψ) ∘ (f, φ)` with lifts `φ(a, ψ(f a, u))`.
    pub fn then(&self, next: &DeltaLens) -> Result<DeltaLens> {
        let f = self.f.then(&next.f)?;
        Ok(DeltaLens::new_unchecked(f, |a, u| self.lift(a, next.lift(self.f.ob(a), u))))
    }

    pub fn to_raw(&self) -> RawDeltaLens {
        let (a, b) = (self.dom(), self.cod());
        let mut lifts: Vec<RawLift> = self
            .lift_entries()
            .into_iter()
            .map(|(o, u, w)| RawLift {
                object: a.obj_name(o).to_string(),
                over: b.mor_name(u).to_string(),
                lift: a.mor_name(w).to_string(),
            })
            .collect();
        lifts.sort();
        RawDeltaLens { cat_a: a.to_raw(), cat_b: b.to_raw(), functor: self.f.to_raw_maps(), lifts }
    }

    pub fn from_raw(raw: &RawDeltaLens) -> Result<DeltaLens> {
        let (l, report) = resolve_lens(raw);
        match l {
            Some(l) if report.is_ok() => {
                let laws = l.law_violations();
                if laws.is_ok() {
                    Ok(l)
                } else {
                    Err(Error::invalid("delta lens", laws))
                }
            }
            _ => Err(Error::invalid("delta lens", report)),
        }
    }

    /// Graphviz rendering of the domain with chosen lifts drawn bold.
    pub fn to_dot(&self, title: &str) -> String {
        to_dot(self.dom(), title, |w| self.is_lift(w).then(|| "style=bold, color=blue".to_string()))
    }
}

/// Parses the component categories, functor and lift table, reporting every
/// malformed reference. Lift entries are checked for presence and
/// uniqueness, not for the lens axioms.
pub(crate) fn resolve_lifts(
    a: &FinCat,
    b: &FinCat,
    obj_map: &[Obj],
    raw: &[RawLift],
    report: &mut ValidationReport,
) -> Option<Vec<HashMap<Mor, Mor>>> {
    let mut lifts: Vec<HashMap<Mor, Mor>> = vec![HashMap::new(); a.num_objects()];
    for e in raw {
        let (o, u, w) = (a.obj(&e.object), b.mor(&e.over), a.mor(&e.lift));
        match (o, u, w) {
            (Some(o), Some(u), Some(w)) => {
                if b.src(u) != obj_map[o.0] {
                    report.malformed("lift key not over the object's image", [&e.object, &e.over]);
                } else if lifts[o.0].insert(u, w).is_some() {
                    report.malformed("duplicate lift entry", [&e.object, &e.over]);
                }
            }
            _ => report.malformed("lift entry references unknown identifiers", [&e.object, &e.over, &e.lift]),
        }
    }
    for o in a.objects() {
        for &u in b.out_of(obj_map[o.0]) {
            if !lifts[o.0].contains_key(&u) {
                report.malformed("lift table not dense", [a.obj_name(o), b.mor_name(u)]);
            }
        }
    }
    report.is_ok().then_some(lifts)
}

fn resolve_lens(raw: &RawDeltaLens) -> (Option<DeltaLens>, ValidationReport) {
    let mut report = crate::fincat::validate_functor_between(
        &raw.cat_a,
        &raw.cat_b,
        &raw.functor.obj_map,
        &raw.functor.mor_map,
    );
    if !report.is_ok() {
        return (None, report);
    }
    let a = Arc::new(FinCat::from_raw(&raw.cat_a).expect("validated"));
    let b = Arc::new(FinCat::from_raw(&raw.cat_b).expect("validated"));
    let f = FinFunctor::from_names(a.clone(), b.clone(), &raw.functor.obj_map, &raw.functor.mor_map).expect("validated");
    match resolve_lifts(&a, &b, f.obj_map(), &raw.lifts, &mut report) {
        Some(lifts) => (Some(DeltaLens { f, lifts }), report),
        None => (None, report),
    }
}

/// Reports malformed data, failed functor laws, and every violated lens
/// axiom (DL1–DL3 and lift source).
pub fn check_delta_lens(raw: &RawDeltaLens) -> ValidationReport {
    let (l, mut report) = resolve_lens(raw);
    if let Some(l) = l {
        report.extend(l.law_violations());
    }
    report
}
