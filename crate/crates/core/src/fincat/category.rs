use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Index of an object in a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub usize);

/// Index of a morphism in a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub usize);

impl Obj {
    pub fn index(self) -> usize {
        self.0
    }
}

impl Mor {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `result = then ∘ first`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComposite {
    pub first: String,
    pub then: String,
    pub result: String,
}

/// Wire format of a finite category.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<RawComposite>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct MorData {
    name: String,
    src: Obj,
    tgt: Obj,
}

/// A finite category stored as a closed composition table.
///
/// Objects and morphisms are kept sorted by identifier, so two categories
/// built from the same data compare equal regardless of insertion order.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    identities: Vec<Mor>,
    compose: HashMap<(Mor, Mor), Mor>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
    outgoing: Vec<Vec<Mor>>,
    incoming: Vec<Vec<Mor>>,
    homs: HashMap<(Obj, Obj), Vec<Mor>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.compose == other.compose
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self
                    .morphisms
                    .iter()
                    .map(|m| format!("{}: {} -> {}", m.name, self.objects[m.src.0], self.objects[m.tgt.0]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl FinCat {
    pub fn empty() -> Self {
        CatBuilder::new().build().expect("empty category")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn obj(&self, name: &str) -> Option<Obj> {
        self.obj_index.get(name).copied()
    }

    pub fn mor(&self, name: &str) -> Option<Mor> {
        self.mor_index.get(name).copied()
    }

    pub fn obj_or_err(&self, name: &str) -> Result<Obj> {
        self.obj(name).ok_or_else(|| Error::UnknownId { kind: "object", name: name.to_string() })
    }

    pub fn mor_or_err(&self, name: &str) -> Result<Mor> {
        self.mor(name).ok_or_else(|| Error::UnknownId { kind: "morphism", name: name.to_string() })
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m.0].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m.0].tgt
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        let s = self.src(m);
        s == self.tgt(m) && self.identities[s.0] == m
    }

    /// `then ∘ first`, or `None` when the pair is not composable.
    pub fn compose(&self, first: Mor, then: Mor) -> Option<Mor> {
        self.compose.get(&(first, then)).copied()
    }

    /// `then ∘ first` for a pair known to be composable.
    pub fn then(&self, first: Mor, then: Mor) -> Mor {
        match self.compose(first, then) {
            Some(m) => m,
            None => panic!(
                "morphisms {} and {} are not composable",
                self.mor_name(first),
                self.mor_name(then)
            ),
        }
    }

    /// Composite of a path given in diagrammatic order.
    pub fn compose_path(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &m| self.compose(acc, m))
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn out_of(&self, a: Obj) -> &[Mor] {
        &self.outgoing[a.0]
    }

    pub fn into_obj(&self, b: Obj) -> &[Mor] {
        &self.incoming[b.0]
    }

    /// All composable pairs `(first, then)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.morphisms().flat_map(move |f| self.out_of(self.tgt(f)).iter().map(move |&g| (f, g)))
    }

    pub fn to_raw(&self) -> RawCategory {
        let mut compose: Vec<RawComposite> = self
            .compose
            .iter()
            .map(|(&(f, g), &h)| RawComposite {
                first: self.mor_name(f).to_string(),
                then: self.mor_name(g).to_string(),
                result: self.mor_name(h).to_string(),
            })
            .collect();
        compose.sort_by(|a, b| (&a.first, &a.then).cmp(&(&b.first, &b.then)));
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| RawMorphism {
                    id: m.name.clone(),
                    src: self.objects[m.src.0].clone(),
                    tgt: self.objects[m.tgt.0].clone(),
                })
                .collect(),
            identities: self
                .objects()
                .map(|o| (self.obj_name(o).to_string(), self.mor_name(self.identity(o)).to_string()))
                .collect(),
            compose,
        }
    }

    /// Parses and validates raw data.
    pub fn from_raw(raw: &RawCategory) -> Result<FinCat> {
        let (cat, mut report) = resolve_raw(raw);
        match cat {
            Some(cat) => {
                report.extend(cat.law_violations());
                if report.is_ok() {
                    Ok(cat)
                } else {
                    Err(Error::invalid("category", report))
                }
            }
            None => Err(Error::invalid("category", report)),
        }
    }

    /// Every violated category law, with witnessing morphisms.
    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let name = |m: Mor| self.mor_name(m).to_string();
        for o in self.objects() {
            let i = self.identity(o);
            if self.src(i) != o || self.tgt(i) != o {
                report.push("identity endpoints", [self.obj_name(o).to_string(), name(i)]);
            }
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.tgt(f)) {
                match self.compose.get(&(f, g)) {
                    None => report.push("composition table not closed", [name(f), name(g)]),
                    Some(&h) => {
                        if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                            report.push("composite endpoints", [name(f), name(g), name(h)]);
                        }
                    }
                }
            }
        }
        let mut extra: Vec<(Mor, Mor)> =
            self.compose.keys().filter(|&&(f, g)| self.tgt(f) != self.src(g)).copied().collect();
        extra.sort();
        for (f, g) in extra {
            report.push("composite of non-composable pair", [name(f), name(g)]);
        }
        for f in self.morphisms() {
            let ids = self.identity(self.src(f));
            if self.src(ids) == self.src(f) && self.compose(ids, f) != Some(f) {
                report.push("left unit law", [name(f)]);
            }
            let idt = self.identity(self.tgt(f));
            if self.src(idt) == self.tgt(f) && self.compose(f, idt) != Some(f) {
                report.push("right unit law", [name(f)]);
            }
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.tgt(f)) {
                let Some(fg) = self.compose(f, g) else { continue };
                for &h in self.out_of(self.tgt(g)) {
                    let Some(gh) = self.compose(g, h) else { continue };
                    let left = self.compose(fg, h);
                    let right = self.compose(f, gh);
                    if left.is_none() || left != right {
                        report.push("associativity", [name(f), name(g), name(h)]);
                    }
                }
            }
        }
        report
    }
}

/// Resolves names in raw data. Returns `None` for the category when the data
/// is too malformed to check laws on.
fn resolve_raw(raw: &RawCategory) -> (Option<FinCat>, ValidationReport) {
    let mut report = ValidationReport::new();
    let mut b = CatBuilder::new();
    for o in &raw.objects {
        if b.object(o.clone()).is_err() {
            report.malformed("duplicate object", [o.clone()]);
        }
    }
    for m in &raw.morphisms {
        let (Some(s), Some(t)) = (b.obj_index.get(&m.src).copied(), b.obj_index.get(&m.tgt).copied()) else {
            report.malformed("morphism endpoint is not an object", [m.id.clone()]);
            continue;
        };
        if b.morphism(m.id.clone(), s, t).is_err() {
            report.malformed("duplicate morphism", [m.id.clone()]);
        }
    }
    for (o, m) in &raw.identities {
        match (b.obj_index.get(o).copied(), b.mor_index.get(m).copied()) {
            (Some(o), Some(m)) => b.identity(o, m),
            _ => report.malformed("identity refers to unknown id", [o.clone(), m.clone()]),
        }
    }
    for o in &raw.objects {
        if let Some(&oi) = b.obj_index.get(o) {
            if !b.identities.contains_key(&oi) {
                report.malformed("missing identity", [o.clone()]);
            }
        }
    }
    for c in &raw.compose {
        let ids = [&c.first, &c.then, &c.result].map(|n| b.mor_index.get(n).copied());
        match ids {
            [Some(f), Some(g), Some(h)] => {
                if b.compose.insert((f, g), h).is_some_and(|prev| prev != h) {
                    report.malformed("conflicting composite entries", [c.first.clone(), c.then.clone()]);
                }
            }
            _ => report.malformed(
                "composite refers to unknown morphism",
                [c.first.clone(), c.then.clone(), c.result.clone()],
            ),
        }
    }
    if !report.is_ok() {
        return (None, report);
    }
    match b.build() {
        Ok(cat) => (Some(cat), report),
        Err(e) => {
            report.malformed("unbuildable", [e.to_string()]);
            (None, report)
        }
    }
}

/// Reports violated category laws for raw data; never fails.
pub fn validate_category(raw: &RawCategory) -> ValidationReport {
    let (cat, mut report) = resolve_raw(raw);
    if let Some(cat) = cat {
        report.extend(cat.law_violations());
    }
    report
}

/// Incremental constructor used by every construction in the crate.
///
/// Indices returned by the builder are builder-local; [`CatBuilder::build`]
/// sorts by name and reindexes.
#[derive(Clone, Debug, Default)]
pub struct CatBuilder {
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    morphisms: Vec<(String, usize, usize)>,
    mor_index: HashMap<String, usize>,
    identities: HashMap<usize, usize>,
    compose: HashMap<(usize, usize), usize>,
}

impl CatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.obj_index.contains_key(&name) {
            return Err(Error::Duplicate(name));
        }
        let i = self.objects.len();
        self.obj_index.insert(name.clone(), i);
        self.objects.push(name);
        Ok(i)
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: usize, tgt: usize) -> Result<usize> {
        let name = name.into();
        if self.mor_index.contains_key(&name) {
            return Err(Error::Duplicate(name));
        }
        let i = self.morphisms.len();
        self.mor_index.insert(name.clone(), i);
        self.morphisms.push((name, src, tgt));
        Ok(i)
    }

    /// Adds a morphism and registers it as the identity on `obj`.
    pub fn identity_morphism(&mut self, name: impl Into<String>, obj: usize) -> Result<usize> {
        let m = self.morphism(name, obj, obj)?;
        self.identity(obj, m);
        Ok(m)
    }

    pub fn identity(&mut self, obj: usize, mor: usize) {
        self.identities.insert(obj, mor);
    }

    pub fn compose(&mut self, first: usize, then: usize, result: usize) {
        self.compose.insert((first, then), result);
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.mor_index.get(name).copied()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn src_of(&self, m: usize) -> usize {
        self.morphisms[m].1
    }

    pub fn tgt_of(&self, m: usize) -> usize {
        self.morphisms[m].2
    }

    /// Finalises without checking category laws. Fails only when an object
    /// lacks an identity.
    pub fn build(self) -> Result<FinCat> {
        let mut obj_order: Vec<usize> = (0..self.objects.len()).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut obj_new = vec![0; self.objects.len()];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new;
        }
        let mut mor_order: Vec<usize> = (0..self.morphisms.len()).collect();
        mor_order.sort_by(|&a, &b| self.morphisms[a].0.cmp(&self.morphisms[b].0));
        let mut mor_new = vec![0; self.morphisms.len()];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new;
        }

        let objects: Vec<String> = obj_order.iter().map(|&o| self.objects[o].clone()).collect();
        let morphisms: Vec<MorData> = mor_order
            .iter()
            .map(|&m| {
                let (name, s, t) = &self.morphisms[m];
                MorData { name: name.clone(), src: Obj(obj_new[*s]), tgt: Obj(obj_new[*t]) }
            })
            .collect();
        let mut identities = Vec::with_capacity(objects.len());
        for &old in &obj_order {
            match self.identities.get(&old) {
                Some(&m) => identities.push(Mor(mor_new[m])),
                None => return Err(Error::Precondition(format!("object {} has no identity", self.objects[old]))),
            }
        }
        let compose = self
            .compose
            .iter()
            .map(|(&(f, g), &h)| ((Mor(mor_new[f]), Mor(mor_new[g])), Mor(mor_new[h])))
            .collect();

        let obj_index = objects.iter().enumerate().map(|(i, n)| (n.clone(), Obj(i))).collect();
        let mor_index = morphisms.iter().enumerate().map(|(i, m)| (m.name.clone(), Mor(i))).collect();
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        let mut homs: HashMap<(Obj, Obj), Vec<Mor>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.src.0].push(Mor(i));
            incoming[m.tgt.0].push(Mor(i));
            homs.entry((m.src, m.tgt)).or_default().push(Mor(i));
        }
        Ok(FinCat { objects, morphisms, identities, compose, obj_index, mor_index, outgoing, incoming, homs })
    }

    /// Finalises and checks every category law.
    pub fn build_checked(self) -> Result<FinCat> {
        let cat = self.build()?;
        let report = cat.law_violations();
        if report.is_ok() {
            Ok(cat)
        } else {
            Err(Error::invalid("category", report))
        }
    }
}

/// A category assembled from builder-local data, together with the map from
/// local indices to the final sorted ones.
pub(crate) struct Assembled {
    pub cat: FinCat,
    pub obj_of: Vec<Obj>,
    pub mor_of: Vec<Mor>,
}

impl Assembled {
    /// Object map indexed by final object, from an image given on local indices.
    pub fn obj_images(&self, img: impl Fn(usize) -> Obj) -> Vec<Obj> {
        let mut out = vec![Obj(0); self.obj_of.len()];
        for (local, &fin) in self.obj_of.iter().enumerate() {
            out[fin.0] = img(local);
        }
        out
    }

    pub fn mor_images(&self, img: impl Fn(usize) -> Mor) -> Vec<Mor> {
        let mut out = vec![Mor(0); self.mor_of.len()];
        for (local, &fin) in self.mor_of.iter().enumerate() {
            out[fin.0] = img(local);
        }
        out
    }
}

/// Builds a category from local data. `compose(first, then)` is queried for
/// every locally composable pair and must return the local composite.
pub(crate) fn assemble(
    objects: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    identities: &[usize],
    mut compose: impl FnMut(usize, usize) -> usize,
) -> Result<Assembled> {
    let mut b = CatBuilder::new();
    for o in &objects {
        b.object(o.clone())?;
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (i, (name, s, t)) in morphisms.iter().enumerate() {
        b.morphism(name.clone(), *s, *t)?;
        out[*s].push(i);
    }
    for (o, &m) in identities.iter().enumerate() {
        b.identity(o, m);
    }
    for (f, (_, _, t)) in morphisms.iter().enumerate() {
        for &g in &out[*t] {
            let h = compose(f, g);
            b.compose(f, g, h);
        }
    }
    let cat = b.build()?;
    let obj_of = objects.iter().map(|n| cat.obj(n).expect("object present")).collect();
    let mor_of = morphisms.iter().map(|(n, _, _)| cat.mor(n).expect("morphism present")).collect();
    Ok(Assembled { cat, obj_of, mor_of })
}
