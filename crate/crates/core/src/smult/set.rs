use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::names::{inl, inr, pair};

/// A finite set of named elements, kept in sorted order.
#[derive(Clone)]
pub struct FinSet {
    elems: Arc<Vec<String>>,
    index: Arc<HashMap<String, usize>>,
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.elems, &other.elems) || self.elems == other.elems
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}

impl FinSet {
    pub fn new<S: Into<String>>(elems: impl IntoIterator<Item = S>) -> Result<FinSet> {
        let mut v: Vec<String> = elems.into_iter().map(Into::into).collect();
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate(w[0].clone()));
        }
        let index = v.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(FinSet { elems: Arc::new(v), index: Arc::new(index) })
    }

    pub fn empty() -> FinSet {
        FinSet::new(Vec::<String>::new()).expect("empty set")
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elems[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn elems(&self) -> &[String] {
        &self.elems
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// `A × B` with elements `(a,b)`.
    pub fn product(a: &FinSet, b: &FinSet) -> FinSet {
        FinSet::new(a.elems.iter().flat_map(|x| b.elems.iter().map(move |y| pair(x, y)))).expect("distinct pairs")
    }

    /// `A + B` with elements `inl(a)` and `inr(b)`.
    pub fn coproduct(a: &FinSet, b: &FinSet) -> FinSet {
        FinSet::new(a.elems.iter().map(|x| inl(x)).chain(b.elems.iter().map(|y| inr(y)))).expect("distinct tags")
    }
}

/// A total function between finite sets.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFunction {
    dom: FinSet,
    cod: FinSet,
    map: Vec<usize>,
}

impl fmt::Debug for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.map.iter().enumerate().map(|(i, &j)| (self.dom.name(i), self.cod.name(j)))).finish()
    }
}

impl FinFunction {
    pub fn new(dom: FinSet, cod: FinSet, map: Vec<usize>) -> FinFunction {
        assert_eq!(dom.len(), map.len());
        debug_assert!(map.iter().all(|&j| j < cod.len()));
        FinFunction { dom, cod, map }
    }

    /// Builds a function from an element-wise rule given on names.
    pub fn from_fn(dom: &FinSet, cod: &FinSet, mut f: impl FnMut(&str) -> String) -> Result<FinFunction> {
        let mut map = Vec::with_capacity(dom.len());
        for e in dom.elems() {
            let img = f(e);
            match cod.index(&img) {
                Some(j) => map.push(j),
                None => return Err(Error::UnknownId { kind: "element", name: img }),
            }
        }
        Ok(FinFunction { dom: dom.clone(), cod: cod.clone(), map })
    }

    /// Builds a function from a name table, which must be total on `dom`
    /// and land in `cod`.
    pub fn from_names(dom: &FinSet, cod: &FinSet, table: &BTreeMap<String, String>) -> Result<FinFunction> {
        if let Some(k) = table.keys().find(|k| !dom.contains(k)) {
            return Err(Error::UnknownId { kind: "element", name: k.clone() });
        }
        let mut map = Vec::with_capacity(dom.len());
        for e in dom.elems() {
            let img = table.get(e).ok_or_else(|| Error::Precondition(format!("function undefined at {e}")))?;
            map.push(cod.index(img).ok_or_else(|| Error::UnknownId { kind: "element", name: img.clone() })?);
        }
        Ok(FinFunction { dom: dom.clone(), cod: cod.clone(), map })
    }

    pub fn identity(set: &FinSet) -> FinFunction {
        FinFunction { dom: set.clone(), cod: set.clone(), map: set.indices().collect() }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn at(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply(&self, name: &str) -> Option<&str> {
        self.dom.index(name).map(|i| self.cod.name(self.map[i]))
    }

    pub fn table(&self) -> BTreeMap<String, String> {
        self.map.iter().enumerate().map(|(i, &j)| (self.dom.name(i).to_string(), self.cod.name(j).to_string())).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FinFunction) -> Result<FinFunction> {
        if self.cod != next.dom {
            return Err(Error::Mismatch("function composition boundary".into()));
        }
        Ok(FinFunction { dom: self.dom.clone(), cod: next.cod.clone(), map: self.map.iter().map(|&j| next.map[j]).collect() })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &j in &self.map {
            seen[j] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijective() {
            return None;
        }
        let mut map = vec![0; self.cod.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Some(FinFunction { dom: self.cod.clone(), cod: self.dom.clone(), map })
    }

    /// `⟨self, other⟩: X -> A × B` into [`FinSet::product`].
    pub fn pairing(&self, other: &FinFunction, product: &FinSet) -> Result<FinFunction> {
        if self.dom != other.dom {
            return Err(Error::Mismatch("pairing of functions with different domains".into()));
        }
        FinFunction::from_fn(&self.dom, product, |x| pair(self.apply(x).unwrap(), other.apply(x).unwrap()))
    }

    /// `self × other: A × B -> C × D`.
    pub fn product(&self, other: &FinFunction) -> FinFunction {
        let dom = FinSet::product(&self.dom, &other.dom);
        let cod = FinSet::product(&self.cod, &other.cod);
        let mut map = vec![0; dom.len()];
        for i in self.dom.indices() {
            for j in other.dom.indices() {
                let k = dom.index(&pair(self.dom.name(i), other.dom.name(j))).expect("member");
                map[k] = cod.index(&pair(self.cod.name(self.map[i]), other.cod.name(other.map[j]))).expect("member");
            }
        }
        FinFunction { dom, cod, map }
    }

    /// `self + other: A + B -> C + D`.
    pub fn coproduct(&self, other: &FinFunction) -> FinFunction {
        let dom = FinSet::coproduct(&self.dom, &other.dom);
        let cod = FinSet::coproduct(&self.cod, &other.cod);
        let mut map = vec![0; dom.len()];
        for i in self.dom.indices() {
            map[dom.index(&inl(self.dom.name(i))).expect("member")] =
                cod.index(&inl(self.cod.name(self.map[i]))).expect("member");
        }
        for j in other.dom.indices() {
            map[dom.index(&inr(other.dom.name(j))).expect("member")] =
                cod.index(&inr(other.cod.name(other.map[j]))).expect("member");
        }
        FinFunction { dom, cod, map }
    }

    /// The projections `A × B -> A` and `A × B -> B`.
    pub fn projections(a: &FinSet, b: &FinSet) -> (FinFunction, FinFunction) {
        let prod = FinSet::product(a, b);
        let mut left = vec![0; prod.len()];
        let mut right = vec![0; prod.len()];
        for i in a.indices() {
            for j in b.indices() {
                let k = prod.index(&pair(a.name(i), b.name(j))).expect("member");
                left[k] = i;
                right[k] = j;
            }
        }
        (
            FinFunction { dom: prod.clone(), cod: a.clone(), map: left },
            FinFunction { dom: prod, cod: b.clone(), map: right },
        )
    }

    /// The injections `A -> A + B` and `B -> A + B`.
    pub fn injections(a: &FinSet, b: &FinSet) -> (FinFunction, FinFunction) {
        let sum = FinSet::coproduct(a, b);
        let left = a.elems().iter().map(|x| sum.index(&inl(x)).expect("member")).collect();
        let right = b.elems().iter().map(|y| sum.index(&inr(y)).expect("member")).collect();
        (
            FinFunction { dom: a.clone(), cod: sum.clone(), map: left },
            FinFunction { dom: b.clone(), cod: sum, map: right },
        )
    }
}
