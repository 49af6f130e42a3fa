use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{validate_category, FinCat, Mor, Obj, RawCategory};
use crate::report::ValidationReport;
use crate::smult::{FinFunction, FinSet, Smf};

/// Wire format of the split multivalued function over one base morphism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCarrier {
    pub elems: Vec<String>,
    pub s: BTreeMap<String, String>,
    pub t: BTreeMap<String, String>,
    pub sigma: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RawMuEntry {
    pub alpha: String,
    pub beta: String,
    pub result: String,
}

/// The comparison `μ_(u,v): F(u,v) -> F(v ∘ u)` as a table on pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMu {
    pub u: String,
    pub v: String,
    pub table: Vec<RawMuEntry>,
}

/// Wire format of an indexed split multivalued function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawIndexedSmf {
    pub base: RawCategory,
    pub objsets: BTreeMap<String, Vec<String>>,
    pub carriers: BTreeMap<String, RawCarrier>,
    pub mu: Vec<RawMu>,
}

type MuTable = HashMap<(usize, usize), usize>;

/// A lax double functor from the loose double category of a finite base
/// into split multivalued functions: a set `F(x)` per object, a split
/// multivalued function `F(u): F(x) ⇸ F(y)` per morphism, and comparisons
/// `μ_(u,v)` on pairs `(α, β)` with `t_u α = s_v β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedSmf {
    base: Arc<FinCat>,
    objsets: Vec<FinSet>,
    carriers: Vec<Smf>,
    mu: HashMap<(Mor, Mor), MuTable>,
}

impl IndexedSmf {
    /// Builds the data from a rule for `μ`, queried on every composable
    /// pair of base morphisms and every pair in `F(u,v)`. Checks L1–L6.
    pub fn new(
        base: Arc<FinCat>,
        objsets: Vec<FinSet>,
        carriers: Vec<Smf>,
        mu: impl FnMut(Mor, Mor, usize, usize) -> usize,
    ) -> Result<IndexedSmf> {
        let x = Self::new_unchecked(base, objsets, carriers, mu);
        let report = x.law_violations();
        if report.is_ok() {
            Ok(x)
        } else {
            Err(Error::invalid("indexed split multivalued function", report))
        }
    }

    pub fn new_unchecked(
        base: Arc<FinCat>,
        objsets: Vec<FinSet>,
        carriers: Vec<Smf>,
        mut mu: impl FnMut(Mor, Mor, usize, usize) -> usize,
    ) -> IndexedSmf {
        let mut table = HashMap::new();
        for (u, v) in base.composable_pairs() {
            let entries = pullback(&carriers[u.0], &carriers[v.0])
                .into_iter()
                .map(|(a, b)| ((a, b), mu(u, v, a, b)))
                .collect();
            table.insert((u, v), entries);
        }
        IndexedSmf { base, objsets, carriers, mu: table }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn objset(&self, x: Obj) -> &FinSet {
        &self.objsets[x.0]
    }

    pub fn carrier(&self, u: Mor) -> &Smf {
        &self.carriers[u.0]
    }

    /// `μ_(u,v)(α, β)`, or `None` off `F(u,v)`.
    pub fn mu(&self, u: Mor, v: Mor, alpha: usize, beta: usize) -> Option<usize> {
        self.mu.get(&(u, v))?.get(&(alpha, beta)).copied()
    }

    /// The pairs of `F(u,v)` in lexicographic index order.
    pub fn pairs(&self, u: Mor, v: Mor) -> Vec<(usize, usize)> {
        pullback(&self.carriers[u.0], &self.carriers[v.0])
    }

    /// The unit comparison at `x`, which is forced to be `σ_(id x)`.
    pub fn eta(&self, x: Obj) -> &FinFunction {
        &self.carriers[self.base.identity(x).0].sigma
    }

    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let b = &*self.base;
        for u in b.morphisms() {
            let m = &self.carriers[u.0];
            if m.src() != &self.objsets[b.src(u).0] || m.tgt() != &self.objsets[b.tgt(u).0] {
                report.malformed("carrier boundary differs from the object sets", [b.mor_name(u)]);
            }
        }
        if !report.is_ok() {
            return report;
        }
        let name = |u: Mor, i: usize| self.carriers[u.0].carrier().name(i).to_string();
        for u in b.morphisms() {
            let m = &self.carriers[u.0];
            for a in m.src().indices() {
                if m.s.at(m.sigma.at(a)) != a {
                    report.push("L1", [b.mor_name(u), m.src().name(a)]);
                }
            }
        }
        for (u, v) in b.composable_pairs() {
            let (mu_, mv) = (&self.carriers[u.0], &self.carriers[v.0]);
            let vu = b.then(u, v);
            let mvu = &self.carriers[vu.0];
            for (al, be) in self.pairs(u, v) {
                let r = self.mu(u, v, al, be).expect("total");
                if mvu.s.at(r) != mu_.s.at(al) || mvu.t.at(r) != mv.t.at(be) {
                    report.push("L2", [b.mor_name(u).into(), b.mor_name(v).into(), name(u, al), name(v, be)]);
                }
            }
            for a in mu_.src().indices() {
                let al = mu_.sigma.at(a);
                let be = mv.sigma.at(mu_.t.at(al));
                if self.mu(u, v, al, be) != Some(mvu.sigma.at(a)) {
                    report.push("L3", [b.mor_name(u), b.mor_name(v), mu_.src().name(a)]);
                }
            }
        }
        for u in b.morphisms() {
            let m = &self.carriers[u.0];
            let (idx, idy) = (b.identity(b.src(u)), b.identity(b.tgt(u)));
            for al in m.carrier().indices() {
                let left = self.carriers[idx.0].sigma.at(m.s.at(al));
                if self.mu(idx, u, left, al) != Some(al) {
                    report.push("L4", [b.mor_name(u).into(), name(u, al)]);
                }
                let right = self.carriers[idy.0].sigma.at(m.t.at(al));
                if self.mu(u, idy, al, right) != Some(al) {
                    report.push("L5", [b.mor_name(u).into(), name(u, al)]);
                }
            }
        }
        for (u, v) in b.composable_pairs() {
            let vu = b.then(u, v);
            for &w in b.out_of(b.tgt(v)) {
                let wv = b.then(v, w);
                for (al, be) in self.pairs(u, v) {
                    let ab = self.mu(u, v, al, be).expect("total");
                    for (be2, ga) in self.pairs(v, w) {
                        if be2 != be {
                            continue;
                        }
                        let bg = self.mu(v, w, be, ga).expect("total");
                        let lhs = self.mu(vu, w, ab, ga);
                        let rhs = self.mu(u, wv, al, bg);
                        if lhs != rhs || lhs.is_none() {
                            report.push(
                                "L6",
                                [
                                    b.mor_name(u).into(),
                                    b.mor_name(v).into(),
                                    b.mor_name(w).into(),
                                    name(u, al),
                                    name(v, be),
                                    name(w, ga),
                                ],
                            );
                        }
                    }
                }
            }
        }
        report
    }

    pub fn to_raw(&self) -> RawIndexedSmf {
        let b = &*self.base;
        let objsets = b.objects().map(|x| (b.obj_name(x).to_string(), self.objsets[x.0].elems().to_vec())).collect();
        let carriers = b
            .morphisms()
            .map(|u| {
                let m = &self.carriers[u.0];
                let raw = RawCarrier {
                    elems: m.carrier().elems().to_vec(),
                    s: m.s.table(),
                    t: m.t.table(),
                    sigma: m.sigma.table(),
                };
                (b.mor_name(u).to_string(), raw)
            })
            .collect();
        let mut mu = Vec::new();
        for (u, v) in b.composable_pairs() {
            let (cu, cv, cvu) = (self.carriers[u.0].carrier(), self.carriers[v.0].carrier(), self.carriers[b.then(u, v).0].carrier());
            let mut table: Vec<RawMuEntry> = self
                .pairs(u, v)
                .into_iter()
                .map(|(a, be)| RawMuEntry {
                    alpha: cu.name(a).to_string(),
                    beta: cv.name(be).to_string(),
                    result: cvu.name(self.mu(u, v, a, be).expect("total")).to_string(),
                })
                .collect();
            table.sort();
            mu.push(RawMu { u: b.mor_name(u).to_string(), v: b.mor_name(v).to_string(), table });
        }
        mu.sort_by(|l, r| (&l.u, &l.v).cmp(&(&r.u, &r.v)));
        RawIndexedSmf { base: b.to_raw(), objsets, carriers, mu }
    }

    pub fn from_raw(raw: &RawIndexedSmf) -> Result<IndexedSmf> {
        let (x, report) = resolve(raw);
        match x {
            Some(x) if report.is_ok() => {
                let laws = x.law_violations();
                if laws.is_ok() {
                    Ok(x)
                } else {
                    Err(Error::invalid("indexed split multivalued function", laws))
                }
            }
            _ => Err(Error::invalid("indexed split multivalued function", report)),
        }
    }

    /// Resolves well-formed data without checking L1–L6.
    pub fn from_raw_unchecked(raw: &RawIndexedSmf) -> Result<IndexedSmf> {
        match resolve(raw) {
            (Some(x), _) => Ok(x),
            (None, report) => Err(Error::invalid("indexed split multivalued function", report)),
        }
    }
}

/// Index pairs `(α, β)` with `t_u α = s_v β`.
pub(crate) fn pullback(mu: &Smf, mv: &Smf) -> Vec<(usize, usize)> {
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); mv.src().len()];
    for be in mv.carrier().indices() {
        by_src[mv.s.at(be)].push(be);
    }
    let mut out = Vec::new();
    for al in mu.carrier().indices() {
        for &be in by_src.get(mu.t.at(al)).map(Vec::as_slice).unwrap_or(&[]) {
            out.push((al, be));
        }
    }
    out
}

fn resolve(raw: &RawIndexedSmf) -> (Option<IndexedSmf>, ValidationReport) {
    let mut report = ValidationReport::new();
    let sub = validate_category(&raw.base);
    if !sub.is_ok() {
        report.malformed("base is not a valid category", [sub.to_string()]);
        return (None, report);
    }
    let base = Arc::new(FinCat::from_raw(&raw.base).expect("validated"));
    let b = &*base;
    let mut objsets = Vec::new();
    for x in b.objects() {
        match raw.objsets.get(b.obj_name(x)).map(|e| FinSet::new(e.iter().cloned())) {
            Some(Ok(set)) => objsets.push(set),
            Some(Err(e)) => report.malformed("object set has duplicate elements", [b.obj_name(x).to_string(), e.to_string()]),
            None => report.malformed("missing object set", [b.obj_name(x)]),
        }
    }
    for k in raw.objsets.keys().filter(|k| b.obj(k).is_none()) {
        report.malformed("object set for an unknown object", [k.as_str()]);
    }
    for k in raw.carriers.keys().filter(|k| b.mor(k).is_none()) {
        report.malformed("carrier for an unknown morphism", [k.as_str()]);
    }
    if !report.is_ok() {
        return (None, report);
    }
    let mut carriers = Vec::new();
    for u in b.morphisms() {
        let un = b.mor_name(u);
        let Some(c) = raw.carriers.get(un) else {
            report.malformed("missing carrier", [un]);
            continue;
        };
        let set = match FinSet::new(c.elems.iter().cloned()) {
            Ok(s) => s,
            Err(e) => {
                report.malformed("carrier has duplicate elements", [un.to_string(), e.to_string()]);
                continue;
            }
        };
        let (xs, ys) = (&objsets[b.src(u).0], &objsets[b.tgt(u).0]);
        let parts = (
            FinFunction::from_names(&set, xs, &c.s),
            FinFunction::from_names(&set, ys, &c.t),
            FinFunction::from_names(xs, &set, &c.sigma),
        );
        match parts {
            (Ok(s), Ok(t), Ok(sigma)) => carriers.push(Smf::new_unchecked(s, t, sigma)),
            (s, t, sigma) => {
                for (leg, e) in [("s", s.err()), ("t", t.err()), ("sigma", sigma.err())] {
                    if let Some(e) = e {
                        report.malformed("carrier leg is not a total function", [un.to_string(), leg.to_string(), e.to_string()]);
                    }
                }
            }
        }
    }
    if !report.is_ok() {
        return (None, report);
    }
    let mut given: HashMap<(Mor, Mor), HashMap<(usize, usize), usize>> = HashMap::new();
    for entry in &raw.mu {
        let (Some(u), Some(v)) = (b.mor(&entry.u), b.mor(&entry.v)) else {
            report.malformed("μ for unknown morphisms", [&entry.u, &entry.v]);
            continue;
        };
        if b.compose(u, v).is_none() {
            report.malformed("μ for a non-composable pair", [&entry.u, &entry.v]);
            continue;
        }
        let vu = b.then(u, v);
        let (cu, cv, cvu) = (&carriers[u.0], &carriers[v.0], &carriers[vu.0]);
        let table = given.entry((u, v)).or_default();
        for e in &entry.table {
            let (al, be, r) = (cu.carrier().index(&e.alpha), cv.carrier().index(&e.beta), cvu.carrier().index(&e.result));
            match (al, be, r) {
                (Some(al), Some(be), Some(r)) => {
                    if cu.t.at(al) != cv.s.at(be) {
                        report.malformed("μ entry off the pullback", [&entry.u, &entry.v, &e.alpha, &e.beta]);
                    } else if table.insert((al, be), r).is_some() {
                        report.malformed("duplicate μ entry", [&entry.u, &entry.v, &e.alpha, &e.beta]);
                    }
                }
                _ => report.malformed("μ entry references unknown elements", [&entry.u, &entry.v, &e.alpha, &e.beta, &e.result]),
            }
        }
    }
    for (u, v) in b.composable_pairs() {
        let t = given.get(&(u, v));
        for (al, be) in pullback(&carriers[u.0], &carriers[v.0]) {
            if t.and_then(|t| t.get(&(al, be))).is_none() {
                report.malformed(
                    "μ table not total",
                    [b.mor_name(u), b.mor_name(v), carriers[u.0].carrier().name(al), carriers[v.0].carrier().name(be)],
                );
            }
        }
    }
    if !report.is_ok() {
        return (None, report);
    }
    for (u, v) in b.composable_pairs() {
        given.entry((u, v)).or_default();
    }
    let x = IndexedSmf { base, objsets, carriers, mu: given };
    (Some(x), report)
}

/// Reports malformed data and every violated axiom L1–L6.
pub fn validate_indexed_smf(raw: &RawIndexedSmf) -> ValidationReport {
    let (x, mut report) = resolve(raw);
    if let Some(x) = x {
        report.extend(x.law_violations());
    }
    report
}
