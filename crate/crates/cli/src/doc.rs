//! Input documents. Each file holds one JSON value whose shape determines
//! its kind; categories and split multivalued functions can be referenced
//! by other files through the file stem.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use dlens_core::fincat::{validate_category, validate_functor, RawCategory, RawFunctor};
use dlens_core::idx::{validate_indexed_smf, RawIndexedSmf};
use dlens_core::lens::{check_delta_lens, check_dialens, check_retrofunctor, RawDeltaLens, RawDiaLens, RawRetrofunctor};
use dlens_core::smult::{validate_raw_smf, RawCell, RawSmf, SmultCell};
use dlens_core::ValidationReport;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Category,
    Functor,
    Lens,
    DiaLens,
    Retrofunctor,
    Smf,
    Cell,
    Indexed,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Category => "category",
            Kind::Functor => "functor",
            Kind::Lens => "delta lens",
            Kind::DiaLens => "diagrammatic lens",
            Kind::Retrofunctor => "retrofunctor",
            Kind::Smf => "split multivalued function",
            Kind::Cell => "cell",
            Kind::Indexed => "indexed split multivalued function",
        })
    }
}

fn has(v: &Value, keys: &[&str]) -> bool {
    keys.iter().all(|k| v.get(k).is_some())
}

pub fn kind_of(v: &Value) -> Option<Kind> {
    if !v.is_object() {
        return None;
    }
    let kind = if has(v, &["base", "objsets"]) {
        Kind::Indexed
    } else if has(v, &["cat_x", "p", "f"]) {
        Kind::DiaLens
    } else if has(v, &["cat_a", "cat_b", "functor", "lifts"]) {
        Kind::Lens
    } else if has(v, &["cat_a", "cat_b", "obj_map", "lifts"]) {
        Kind::Retrofunctor
    } else if has(v, &["top", "bottom", "alpha"]) {
        Kind::Cell
    } else if has(v, &["src", "carrier", "tgt", "sigma"]) {
        Kind::Smf
    } else if has(v, &["obj_map", "mor_map"]) {
        Kind::Functor
    } else if has(v, &["objects", "morphisms"]) {
        Kind::Category
    } else {
        return None;
    };
    Some(kind)
}

pub struct Doc {
    pub path: PathBuf,
    pub kind: Kind,
    pub value: Value,
}

impl Doc {
    pub fn stem(&self) -> String {
        self.path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    }

    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        serde_json::from_value(self.value.clone())
            .map_err(|e| CliError::Input(format!("{}: not a valid {}: {e}", self.path.display(), self.kind)))
    }
}

/// Every input document, with named categories and Smfs by file stem.
pub struct Workspace {
    pub docs: Vec<Doc>,
    pub categories: BTreeMap<String, RawCategory>,
    pub smfs: BTreeMap<String, RawSmf>,
}

impl Workspace {
    pub fn load(paths: &[PathBuf]) -> Result<Workspace, CliError> {
        let mut ws = Workspace { docs: Vec::new(), categories: BTreeMap::new(), smfs: BTreeMap::new() };
        for path in paths {
            let doc = read(path)?;
            match doc.kind {
                Kind::Category => {
                    ws.categories.insert(doc.stem(), doc.parse()?);
                }
                Kind::Smf => {
                    ws.smfs.insert(doc.stem(), doc.parse()?);
                }
                _ => {}
            }
            ws.docs.push(doc);
        }
        Ok(ws)
    }

    pub fn of_kind(&self, kinds: &[Kind]) -> impl Iterator<Item = &Doc> + '_ {
        let kinds = kinds.to_vec();
        self.docs.iter().filter(move |d| kinds.contains(&d.kind))
    }

    pub fn validate(&self, doc: &Doc) -> Result<ValidationReport, CliError> {
        Ok(match doc.kind {
            Kind::Category => validate_category(&doc.parse()?),
            Kind::Functor => validate_functor(&doc.parse::<RawFunctor>()?, &self.categories),
            Kind::Lens => check_delta_lens(&doc.parse::<RawDeltaLens>()?),
            Kind::DiaLens => check_dialens(&doc.parse::<RawDiaLens>()?),
            Kind::Retrofunctor => check_retrofunctor(&doc.parse::<RawRetrofunctor>()?),
            Kind::Smf => validate_raw_smf(&doc.parse()?),
            Kind::Cell => match SmultCell::from_raw(&doc.parse::<RawCell>()?, &self.smfs) {
                Ok(_) => ValidationReport::new(),
                Err(dlens_core::Error::Invalid { report, .. }) => report,
                Err(e) => {
                    let mut report = ValidationReport::new();
                    report.malformed("malformed cell", [e.to_string()]);
                    report
                }
            },
            Kind::Indexed => validate_indexed_smf(&doc.parse::<RawIndexedSmf>()?),
        })
    }
}

fn read(path: &Path) -> Result<Doc, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: malformed JSON: {e}", path.display())))?;
    let kind = kind_of(&value)
        .ok_or_else(|| CliError::Input(format!("{}: unrecognised document shape", path.display())))?;
    Ok(Doc { path: path.to_path_buf(), kind, value })
}
