use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;

use super::cells::SmultCell;
use super::set::{FinFunction, FinSet};
use super::smf::Smf;

/// Wire format of a split multivalued function.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSmf {
    pub src: Vec<String>,
    pub carrier: Vec<String>,
    pub tgt: Vec<String>,
    pub s: BTreeMap<String, String>,
    pub t: BTreeMap<String, String>,
    pub sigma: BTreeMap<String, String>,
}

/// A split multivalued function given inline or by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SmfRef {
    Named(String),
    Inline(RawSmf),
}

/// Wire format of a cell of SMult.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCell {
    pub top: SmfRef,
    pub bottom: SmfRef,
    pub left: BTreeMap<String, String>,
    pub right: BTreeMap<String, String>,
    pub alpha: BTreeMap<String, String>,
}

impl SmfRef {
    pub fn resolve<'a>(&'a self, named: &'a BTreeMap<String, RawSmf>) -> Result<&'a RawSmf> {
        match self {
            SmfRef::Inline(r) => Ok(r),
            SmfRef::Named(n) => named.get(n).ok_or_else(|| Error::UnknownId { kind: "smf", name: n.clone() }),
        }
    }
}

impl Smf {
    pub fn to_raw(&self) -> RawSmf {
        RawSmf {
            src: self.src().elems().to_vec(),
            carrier: self.carrier().elems().to_vec(),
            tgt: self.tgt().elems().to_vec(),
            s: self.s.table(),
            t: self.t.table(),
            sigma: self.sigma.table(),
        }
    }

    /// Parses without checking the splitting law.
    pub fn from_raw_unchecked(raw: &RawSmf) -> Result<Smf> {
        let src = FinSet::new(raw.src.iter().cloned())?;
        let carrier = FinSet::new(raw.carrier.iter().cloned())?;
        let tgt = FinSet::new(raw.tgt.iter().cloned())?;
        Ok(Smf::new_unchecked(
            FinFunction::from_names(&carrier, &src, &raw.s)?,
            FinFunction::from_names(&carrier, &tgt, &raw.t)?,
            FinFunction::from_names(&src, &carrier, &raw.sigma)?,
        ))
    }

    pub fn from_raw(raw: &RawSmf) -> Result<Smf> {
        let m = Self::from_raw_unchecked(raw)?;
        let report = m.validate();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(Error::invalid("split multivalued function", report))
        }
    }
}

/// Malformed data is reported as such; otherwise the splitting law is checked.
pub fn validate_raw_smf(raw: &RawSmf) -> ValidationReport {
    match Smf::from_raw_unchecked(raw) {
        Ok(m) => m.validate(),
        Err(e) => {
            let mut report = ValidationReport::new();
            report.malformed("malformed split multivalued function", [e.to_string()]);
            report
        }
    }
}

impl SmultCell {
    pub fn to_raw(&self) -> RawCell {
        RawCell {
            top: SmfRef::Inline(self.top.to_raw()),
            bottom: SmfRef::Inline(self.bottom.to_raw()),
            left: self.left.table(),
            right: self.right.table(),
            alpha: self.alpha.table(),
        }
    }

    pub fn from_raw(raw: &RawCell, named: &BTreeMap<String, RawSmf>) -> Result<SmultCell> {
        let top = Smf::from_raw(raw.top.resolve(named)?)?;
        let bottom = Smf::from_raw(raw.bottom.resolve(named)?)?;
        let left = FinFunction::from_names(top.src(), bottom.src(), &raw.left)?;
        let right = FinFunction::from_names(top.tgt(), bottom.tgt(), &raw.right)?;
        let alpha = FinFunction::from_names(top.carrier(), bottom.carrier(), &raw.alpha)?;
        SmultCell::new(top, bottom, left, right, alpha)
    }
}
