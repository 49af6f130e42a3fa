//! Class membership of indexed data, decided twice.
//!
//! Each tag has an indexed-level test phrased on the sets `F(x)` and the
//! spans `F(u)`, and a lens-level test phrased on the elements lens. The two
//! are computed independently and reported side by side.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{Mor, Obj};
use crate::idx::{elements, is_split_opfibration_idx, IndexedSmf};
use crate::lens::{is_cofree, is_split_opfibration, DeltaLens, OpfibMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    DiscreteOpfibration,
    FullyFaithful,
    InjectiveOnObjects,
    BijectiveOnObjects,
    SurjectiveOnObjects,
    Faithful,
    DiscreteFibration,
    SplitOpfibration,
    Cofree,
}

impl ClassTag {
    pub const ALL: [ClassTag; 9] = [
        ClassTag::DiscreteOpfibration,
        ClassTag::FullyFaithful,
        ClassTag::InjectiveOnObjects,
        ClassTag::BijectiveOnObjects,
        ClassTag::SurjectiveOnObjects,
        ClassTag::Faithful,
        ClassTag::DiscreteFibration,
        ClassTag::SplitOpfibration,
        ClassTag::Cofree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::DiscreteOpfibration => "discrete_opfibration",
            ClassTag::FullyFaithful => "fully_faithful",
            ClassTag::InjectiveOnObjects => "injective_on_objects",
            ClassTag::BijectiveOnObjects => "bijective_on_objects",
            ClassTag::SurjectiveOnObjects => "surjective_on_objects",
            ClassTag::Faithful => "faithful",
            ClassTag::DiscreteFibration => "discrete_fibration",
            ClassTag::SplitOpfibration => "split_opfibration",
            ClassTag::Cofree => "cofree",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub tag: ClassTag,
    pub idx: bool,
    pub lens: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub verdicts: Vec<ClassVerdict>,
}

impl ClassReport {
    pub fn get(&self, tag: ClassTag) -> &ClassVerdict {
        self.verdicts.iter().find(|v| v.tag == tag).expect("every tag is reported")
    }

    /// The agreed verdict, or `None` when the two tests disagree.
    pub fn holds(&self, tag: ClassTag) -> Option<bool> {
        let v = self.get(tag);
        v.agree.then_some(v.idx)
    }

    pub fn all_agree(&self) -> bool {
        self.verdicts.iter().all(|v| v.agree)
    }

    pub fn disagreements(&self) -> impl Iterator<Item = ClassTag> + '_ {
        self.verdicts.iter().filter(|v| !v.agree).map(|v| v.tag)
    }
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<22} {:>5} {:>5}  agree", "class", "idx", "lens")?;
        for v in &self.verdicts {
            writeln!(f, "{:<22} {:>5} {:>5}  {}", v.tag.as_str(), v.idx, v.lens, if v.agree { "yes" } else { "NO" })?;
        }
        Ok(())
    }
}

/// Classifies valid indexed data under every tag.
pub fn classify(x: &IndexedSmf) -> Result<ClassReport> {
    let report = x.law_violations();
    if !report.is_ok() {
        return Err(Error::invalid("indexed split multivalued function", report));
    }
    let l = elements(x)?.lens;
    let verdicts = ClassTag::ALL
        .iter()
        .map(|&tag| {
            let (i, le) = (idx_verdict(x, tag), lens_verdict(&l, tag));
            ClassVerdict { tag, idx: i, lens: le, agree: i == le }
        })
        .collect();
    Ok(ClassReport { verdicts })
}

pub fn idx_verdict(x: &IndexedSmf, tag: ClassTag) -> bool {
    let b = x.base();
    let sizes = || b.objects().map(|o| x.objset(o).len());
    let spans = || b.morphisms().map(|u| x.carrier(u));
    match tag {
        ClassTag::DiscreteOpfibration => spans().all(|m| m.s.is_bijective()),
        ClassTag::DiscreteFibration => spans().all(|m| m.t.is_bijective()),
        ClassTag::FullyFaithful => spans().all(|m| m.carrier().len() == m.src().len() * m.tgt().len() && m.span().is_jointly_monic()),
        ClassTag::Faithful => spans().all(|m| m.span().is_jointly_monic()),
        ClassTag::InjectiveOnObjects => sizes().all(|n| n <= 1),
        ClassTag::BijectiveOnObjects => sizes().all(|n| n == 1),
        ClassTag::SurjectiveOnObjects => sizes().all(|n| n >= 1),
        ClassTag::SplitOpfibration => is_split_opfibration_idx(x),
        ClassTag::Cofree => spans_factor_through_object_pairs(x),
    }
}

pub fn lens_verdict(l: &DeltaLens, tag: ClassTag) -> bool {
    let f = l.functor();
    match tag {
        ClassTag::DiscreteOpfibration => f.is_discrete_opfibration(),
        ClassTag::DiscreteFibration => f.is_discrete_fibration(),
        ClassTag::FullyFaithful => f.is_fully_faithful(),
        ClassTag::Faithful => f.is_faithful(),
        ClassTag::InjectiveOnObjects => f.is_injective_on_objects(),
        ClassTag::BijectiveOnObjects => f.is_bijective_on_objects(),
        ClassTag::SurjectiveOnObjects => f.is_surjective_on_objects(),
        ClassTag::SplitOpfibration => is_split_opfibration(l, OpfibMode::Opcartesian),
        ClassTag::Cofree => is_cofree(l),
    }
}

/// Element of some `F(u)`: the base morphism and the index in its carrier.
type Elem = (Mor, usize);

/// Whether there are sets `F(α, β)` depending only on the endpoints, with
/// every `F(u)` restricted to `(α, β)` in bijection with `F(α, β)`, and the
/// comparisons `μ` descending to a composition on them.
///
/// For each pair of base objects one morphism is taken as reference and the
/// search assigns each element of every other parallel `F(u)` to an element of
/// the reference carrier with the same endpoints, injectively, keeping the
/// induced composition table single-valued.
fn spans_factor_through_object_pairs(x: &IndexedSmf) -> bool {
    let b = x.base();
    let mut reference: HashMap<(Obj, Obj), Mor> = HashMap::new();
    for u in b.morphisms() {
        let key = (b.src(u), b.tgt(u));
        if b.is_identity(u) {
            reference.insert(key, u);
        } else {
            reference.entry(key).or_insert(u);
        }
    }
    let endpoints = |(u, i): Elem| {
        let m = x.carrier(u);
        (m.s.at(i), m.t.at(i))
    };
    let mut slots = Vec::new();
    for u in b.morphisms() {
        let r = reference[&(b.src(u), b.tgt(u))];
        let mut count: HashMap<(usize, usize), isize> = HashMap::new();
        for i in x.carrier(u).carrier().indices() {
            *count.entry(endpoints((u, i))).or_default() += 1;
        }
        for j in x.carrier(r).carrier().indices() {
            *count.entry(endpoints((r, j))).or_default() -= 1;
        }
        if count.values().any(|&c| c != 0) {
            return false;
        }
        if u != r {
            slots.extend(x.carrier(u).carrier().indices().map(|i| (u, i)));
        }
    }
    let mut search = ClassSearch { x, reference, class: HashMap::new(), used: HashSet::new(), table: HashMap::new() };
    for u in b.morphisms().filter(|u| search.reference[&(b.src(*u), b.tgt(*u))] == *u) {
        for i in x.carrier(u).carrier().indices() {
            search.class.insert((u, i), (u, i));
        }
    }
    if !search.consistent_all() {
        return false;
    }
    search.run(&slots)
}

struct ClassSearch<'a> {
    x: &'a IndexedSmf,
    reference: HashMap<(Obj, Obj), Mor>,
    class: HashMap<Elem, Elem>,
    used: HashSet<(Mor, Elem)>,
    table: HashMap<(Elem, Elem), Elem>,
}

impl ClassSearch<'_> {
    fn run(&mut self, slots: &[Elem]) -> bool {
        let Some((&e, rest)) = slots.split_first() else { return true };
        let (u, i) = e;
        let b = self.x.base();
        let r = self.reference[&(b.src(u), b.tgt(u))];
        let (m, mr) = (self.x.carrier(u), self.x.carrier(r));
        let ends = (m.s.at(i), m.t.at(i));
        for j in mr.carrier().indices().filter(|&j| (mr.s.at(j), mr.t.at(j)) == ends) {
            let c = (r, j);
            if self.used.contains(&(u, c)) {
                continue;
            }
            let snapshot = self.table.clone();
            self.class.insert(e, c);
            self.used.insert((u, c));
            if self.consistent_at(e) && self.run(rest) {
                return true;
            }
            self.class.remove(&e);
            self.used.remove(&(u, c));
            self.table = snapshot;
        }
        false
    }

    /// Records the composite classes of every fully assigned μ entry and
    /// fails on a clash.
    fn consistent_all(&mut self) -> bool {
        let b = self.x.base().clone();
        for (u, v) in b.composable_pairs() {
            for (al, be) in self.x.pairs(u, v) {
                if !self.record(u, v, al, be) {
                    return false;
                }
            }
        }
        true
    }

    fn consistent_at(&mut self, (w, i): Elem) -> bool {
        let b = self.x.base().clone();
        for (u, v) in b.composable_pairs() {
            let involved = u == w || v == w || b.then(u, v) == w;
            if !involved {
                continue;
            }
            for (al, be) in self.x.pairs(u, v) {
                let touches = (u == w && al == i) || (v == w && be == i) || b.then(u, v) == w;
                if touches && !self.record(u, v, al, be) {
                    return false;
                }
            }
        }
        true
    }

    fn record(&mut self, u: Mor, v: Mor, al: usize, be: usize) -> bool {
        let b = self.x.base();
        let vu = b.then(u, v);
        let r = self.x.mu(u, v, al, be).expect("total μ");
        let (Some(&cu), Some(&cv), Some(&cr)) = (self.class.get(&(u, al)), self.class.get(&(v, be)), self.class.get(&(vu, r)))
        else {
            return true;
        };
        *self.table.entry((cu, cv)).or_insert(cr) == cr
    }
}
