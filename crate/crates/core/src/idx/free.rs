use std::sync::Arc;

use crate::fincat::{FinCat, Mor, Obj};
use crate::names::{inl, inr, tuple};
use crate::report::ValidationReport;
use crate::smult::{FinFunction, FinSet, Smf};

/// The carriers of the free indexed data on a category: sets, legs and
/// splittings, without comparisons. Deliberately not an [`IndexedSmf`],
/// so it cannot be passed where `μ` is required.
///
/// [`IndexedSmf`]: super::IndexedSmf
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCarriers {
    pub base: Arc<FinCat>,
    pub objsets: Vec<FinSet>,
    pub carriers: Vec<Smf>,
}

impl FreeCarriers {
    pub fn objset(&self, x: Obj) -> &FinSet {
        &self.objsets[x.0]
    }

    pub fn carrier(&self, u: Mor) -> &Smf {
        &self.carriers[u.0]
    }

    /// Splitting (L1) and boundary typing only.
    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let b = &*self.base;
        for u in b.morphisms() {
            let m = &self.carriers[u.0];
            if m.src() != &self.objsets[b.src(u).0] || m.tgt() != &self.objsets[b.tgt(u).0] {
                report.malformed("carrier boundary differs from the object sets", [b.mor_name(u)]);
                continue;
            }
            for a in m.src().indices() {
                if m.s.at(m.sigma.at(a)) != a {
                    report.push("L1", [b.mor_name(u), m.src().name(a)]);
                }
            }
        }
        report
    }
}

/// `Fr(x) = Σ_b B(b, x)`, named by the morphisms themselves. `Fr(u)` for
/// `u: x -> y` is a copy `inl(α)` of `Fr(x)` together with the tuples
/// `inr((α,β,γ,δ))` where `β α = 1`, `δ γ β = u` and `γ` is not an identity.
pub fn free_carriers(base: &Arc<FinCat>) -> FreeCarriers {
    let b = &**base;
    let objsets: Vec<FinSet> = b
        .objects()
        .map(|x| FinSet::new(b.into_obj(x).iter().map(|&m| b.mor_name(m).to_string())).expect("distinct"))
        .collect();
    let carriers = b
        .morphisms()
        .map(|u| {
            let (x, y) = (b.src(u), b.tgt(u));
            let mut elems: Vec<(String, Mor, Mor)> =
                b.into_obj(x).iter().map(|&al| (inl(b.mor_name(al)), al, b.then(al, u))).collect();
            for &al in b.into_obj(x) {
                for &be in b.out_of(x) {
                    if b.then(al, be) != b.identity(b.src(al)) {
                        continue;
                    }
                    for &ga in b.out_of(b.tgt(be)).iter().filter(|&&g| !b.is_identity(g)) {
                        for &de in b.hom(b.tgt(ga), y) {
                            if b.then(b.then(be, ga), de) == u {
                                let name = tuple(&[b.mor_name(al), b.mor_name(be), b.mor_name(ga), b.mor_name(de)]);
                                elems.push((inr(&name), al, de));
                            }
                        }
                    }
                }
            }
            let set = FinSet::new(elems.iter().map(|e| e.0.clone())).expect("distinct");
            let (xs, ys) = (&objsets[x.0], &objsets[y.0]);
            let mut s = vec![0; set.len()];
            let mut t = vec![0; set.len()];
            for (name, al, img) in &elems {
                let k = set.index(name).expect("member");
                s[k] = xs.index(b.mor_name(*al)).expect("member");
                t[k] = ys.index(b.mor_name(*img)).expect("member");
            }
            let sigma = xs.elems().iter().map(|al| set.index(&inl(al)).expect("member")).collect();
            Smf::new_unchecked(
                FinFunction::new(set.clone(), xs.clone(), s),
                FinFunction::new(set.clone(), ys.clone(), t),
                FinFunction::new(xs.clone(), set, sigma),
            )
        })
        .collect();
    FreeCarriers { base: base.clone(), objsets, carriers }
}
