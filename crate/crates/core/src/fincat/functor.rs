use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{validate_category, FinCat, Mor, Obj, RawCategory};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A category given inline or by name in a surrounding document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatRef {
    Named(String),
    Inline(RawCategory),
}

impl CatRef {
    pub fn resolve<'a>(&'a self, cats: &'a BTreeMap<String, RawCategory>) -> Result<&'a RawCategory> {
        match self {
            CatRef::Inline(raw) => Ok(raw),
            CatRef::Named(name) => {
                cats.get(name).ok_or_else(|| Error::UnknownId { kind: "category", name: name.clone() })
            }
        }
    }
}

/// Wire format of a functor. The endpoints may be omitted when the
/// surrounding document supplies them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dom: Option<CatRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cod: Option<CatRef>,
    pub obj_map: BTreeMap<String, String>,
    pub mor_map: BTreeMap<String, String>,
}

impl RawFunctor {
    pub fn endpoints<'a>(
        &'a self,
        cats: &'a BTreeMap<String, RawCategory>,
    ) -> Result<(&'a RawCategory, &'a RawCategory)> {
        match (&self.dom, &self.cod) {
            (Some(d), Some(c)) => Ok((d.resolve(cats)?, c.resolve(cats)?)),
            _ => Err(Error::Precondition("functor is missing its domain or codomain".into())),
        }
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    /// Builds a functor and checks the functor laws.
    pub fn new(dom: Arc<FinCat>, cod: Arc<FinCat>, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> Result<Self> {
        let f = Self::new_unchecked(dom, cod, obj_map, mor_map);
        let report = f.law_violations();
        if report.is_ok() {
            Ok(f)
        } else {
            Err(Error::invalid("functor", report))
        }
    }

    pub fn new_unchecked(dom: Arc<FinCat>, cod: Arc<FinCat>, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> Self {
        assert_eq!(obj_map.len(), dom.num_objects());
        assert_eq!(mor_map.len(), dom.num_morphisms());
        FinFunctor { dom, cod, obj_map, mor_map }
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        let obj_map = cat.objects().collect();
        let mor_map = cat.morphisms().collect();
        FinFunctor { dom: cat.clone(), cod: cat, obj_map, mor_map }
    }

    /// Builds a functor from identifier maps and checks the laws.
    pub fn from_names(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: &BTreeMap<String, String>,
        mor_map: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut report = ValidationReport::new();
        let (objs, mors) = resolve_maps(&dom, &cod, obj_map, mor_map, &mut report);
        if !report.is_ok() {
            return Err(Error::invalid("functor", report));
        }
        Self::new(dom, cod, objs, mors)
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn ob(&self, o: Obj) -> Obj {
        self.obj_map[o.0]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m.0]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FinFunctor) -> Result<FinFunctor> {
        if !Arc::ptr_eq(&self.cod, &next.dom) && *self.cod != *next.dom {
            return Err(Error::Mismatch("functor codomain differs from next domain".into()));
        }
        Ok(FinFunctor {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            obj_map: self.obj_map.iter().map(|&o| next.ob(o)).collect(),
            mor_map: self.mor_map.iter().map(|&m| next.mor(m)).collect(),
        })
    }

    /// Same assignment, re-targeted at an equal copy of the codomain.
    pub fn with_cod(&self, cod: Arc<FinCat>) -> Result<FinFunctor> {
        if *cod != *self.cod {
            return Err(Error::Mismatch("replacement codomain differs".into()));
        }
        Ok(FinFunctor { cod, ..self.clone() })
    }

    pub fn law_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (d, c) = (&*self.dom, &*self.cod);
        for m in d.morphisms() {
            let fm = self.mor(m);
            if c.src(fm) != self.ob(d.src(m)) || c.tgt(fm) != self.ob(d.tgt(m)) {
                report.push("src/tgt preservation", [d.mor_name(m).to_string()]);
            }
        }
        for o in d.objects() {
            if self.mor(d.identity(o)) != c.identity(self.ob(o)) {
                report.push("identity preservation", [d.obj_name(o).to_string()]);
            }
        }
        for (f, g) in d.composable_pairs() {
            let lhs = self.mor(d.then(f, g));
            if c.compose(self.mor(f), self.mor(g)) != Some(lhs) {
                report.push("composition preservation", [d.mor_name(f).to_string(), d.mor_name(g).to_string()]);
            }
        }
        report
    }

    pub fn to_raw(&self) -> RawFunctor {
        let d = &*self.dom;
        RawFunctor {
            dom: Some(CatRef::Inline(d.to_raw())),
            cod: Some(CatRef::Inline(self.cod.to_raw())),
            obj_map: d
                .objects()
                .map(|o| (d.obj_name(o).to_string(), self.cod.obj_name(self.ob(o)).to_string()))
                .collect(),
            mor_map: d
                .morphisms()
                .map(|m| (d.mor_name(m).to_string(), self.cod.mor_name(self.mor(m)).to_string()))
                .collect(),
        }
    }

    pub fn from_raw(raw: &RawFunctor, cats: &BTreeMap<String, RawCategory>) -> Result<FinFunctor> {
        let (d, c) = raw.endpoints(cats)?;
        let dom = Arc::new(FinCat::from_raw(d)?);
        let cod = Arc::new(FinCat::from_raw(c)?);
        Self::from_names(dom, cod, &raw.obj_map, &raw.mor_map)
    }

    /// The same assignment without embedded endpoints.
    pub fn to_raw_maps(&self) -> RawFunctor {
        RawFunctor { dom: None, cod: None, ..self.to_raw() }
    }
}

fn resolve_maps(
    dom: &FinCat,
    cod: &FinCat,
    obj_map: &BTreeMap<String, String>,
    mor_map: &BTreeMap<String, String>,
    report: &mut ValidationReport,
) -> (Vec<Obj>, Vec<Mor>) {
    let mut objs = Vec::with_capacity(dom.num_objects());
    for o in dom.objects() {
        let name = dom.obj_name(o);
        match obj_map.get(name).map(|t| (t, cod.obj(t))) {
            Some((_, Some(t))) => objs.push(t),
            Some((t, None)) => report.malformed("object image is not an object of the codomain", [name, t.as_str()]),
            None => report.malformed("object map not total", [name]),
        }
    }
    let mut mors = Vec::with_capacity(dom.num_morphisms());
    for m in dom.morphisms() {
        let name = dom.mor_name(m);
        match mor_map.get(name).map(|t| (t, cod.mor(t))) {
            Some((_, Some(t))) => mors.push(t),
            Some((t, None)) => {
                report.malformed("morphism image is not a morphism of the codomain", [name, t.as_str()])
            }
            None => report.malformed("morphism map not total", [name]),
        }
    }
    for k in obj_map.keys().filter(|k| dom.obj(k).is_none()) {
        report.malformed("object map key is not an object of the domain", [k.as_str()]);
    }
    for k in mor_map.keys().filter(|k| dom.mor(k).is_none()) {
        report.malformed("morphism map key is not a morphism of the domain", [k.as_str()]);
    }
    (objs, mors)
}

/// Reports malformed references and violated functor laws; never fails.
pub fn validate_functor(raw: &RawFunctor, cats: &BTreeMap<String, RawCategory>) -> ValidationReport {
    match raw.endpoints(cats) {
        Ok((d, c)) => validate_functor_between(d, c, &raw.obj_map, &raw.mor_map),
        Err(_) => {
            let mut report = ValidationReport::new();
            report.malformed("unknown domain or codomain", Vec::<String>::new());
            report
        }
    }
}

/// As [`validate_functor`], with explicit endpoints.
pub fn validate_functor_between(
    dom_raw: &RawCategory,
    cod_raw: &RawCategory,
    obj_map: &BTreeMap<String, String>,
    mor_map: &BTreeMap<String, String>,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    for (side, r) in [("domain", dom_raw), ("codomain", cod_raw)] {
        let sub = validate_category(r);
        if !sub.is_ok() {
            report.malformed(&format!("{side} is not a valid category"), [sub.to_string()]);
        }
    }
    if !report.is_ok() {
        return report;
    }
    let dom = Arc::new(FinCat::from_raw(dom_raw).expect("validated"));
    let cod = Arc::new(FinCat::from_raw(cod_raw).expect("validated"));
    let (objs, mors) = resolve_maps(&dom, &cod, obj_map, mor_map, &mut report);
    if !report.is_ok() {
        return report;
    }
    FinFunctor::new_unchecked(dom, cod, objs, mors).law_violations()
}
