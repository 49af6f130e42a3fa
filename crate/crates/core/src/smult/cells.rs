use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::names::pair;
use crate::report::ValidationReport;

use super::set::FinFunction;
use super::smf::{Smf, SpanMor};

/// A cell of SMult: tight maps `f` (left) and `g` (right) with a carrier map
/// `α` between split multivalued functions.
///
/// ```text
///   A --top--> B
///   f    α     g
///   C -bottom> D
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmultCell {
    pub top: Smf,
    pub bottom: Smf,
    pub left: FinFunction,
    pub right: FinFunction,
    pub alpha: FinFunction,
}

/// A cell of Span: as [`SmultCell`] without the splitting equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCell {
    pub top: SpanMor,
    pub bottom: SpanMor,
    pub left: FinFunction,
    pub right: FinFunction,
    pub alpha: FinFunction,
}

/// A commuting square of functions, the cells of Sq(Set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqCell {
    pub top: FinFunction,
    pub bottom: FinFunction,
    pub left: FinFunction,
    pub right: FinFunction,
}

fn check_span_cell(
    top: &SpanMor,
    bottom: &SpanMor,
    left: &FinFunction,
    right: &FinFunction,
    alpha: &FinFunction,
    report: &mut ValidationReport,
) -> bool {
    if left.dom() != top.src() || left.cod() != bottom.src() {
        report.malformed("left boundary does not match", Vec::<String>::new());
    }
    if right.dom() != top.tgt() || right.cod() != bottom.tgt() {
        report.malformed("right boundary does not match", Vec::<String>::new());
    }
    if alpha.dom() != top.carrier() || alpha.cod() != bottom.carrier() {
        report.malformed("carrier map does not match", Vec::<String>::new());
    }
    if !report.is_ok() {
        return false;
    }
    for x in top.carrier().indices() {
        let ax = alpha.at(x);
        if bottom.s.at(ax) != left.at(top.s.at(x)) {
            report.push("q1 α = f p1", [top.carrier().name(x)]);
        }
        if bottom.t.at(ax) != right.at(top.t.at(x)) {
            report.push("q2 α = g p2", [top.carrier().name(x)]);
        }
    }
    true
}

/// `(x,y) ↦ (αx, βy)` between composite carriers.
fn product_map(
    top: &SpanMor,
    bottom: &SpanMor,
    first: (&SpanMor, &FinFunction),
    second: (&SpanMor, &FinFunction),
) -> Result<FinFunction> {
    let (m1, a1) = first;
    let (m2, a2) = second;
    let mut table = BTreeMap::new();
    for x in m1.carrier().indices() {
        for y in m2.carrier().indices() {
            if m1.t.at(x) == m2.s.at(y) {
                let (xn, yn) = (m1.carrier().name(x), m2.carrier().name(y));
                table.insert(pair(xn, yn), pair(a1.apply(xn).unwrap(), a2.apply(yn).unwrap()));
            }
        }
    }
    FinFunction::from_names(top.carrier(), bottom.carrier(), &table)
}

impl SpanCell {
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        check_span_cell(&self.top, &self.bottom, &self.left, &self.right, &self.alpha, &mut report);
        report
    }

    pub fn new(top: SpanMor, bottom: SpanMor, left: FinFunction, right: FinFunction, alpha: FinFunction) -> Result<Self> {
        let c = SpanCell { top, bottom, left, right, alpha };
        let report = c.validate();
        if report.is_ok() {
            Ok(c)
        } else {
            Err(Error::invalid("span cell", report))
        }
    }

    pub fn identity_on(m: &SpanMor) -> SpanCell {
        SpanCell {
            top: m.clone(),
            bottom: m.clone(),
            left: FinFunction::identity(m.src()),
            right: FinFunction::identity(m.tgt()),
            alpha: FinFunction::identity(m.carrier()),
        }
    }

    /// Vertical pasting: `self` above `below`.
    pub fn tight_then(&self, below: &SpanCell) -> Result<SpanCell> {
        if self.bottom != below.top {
            return Err(Error::Mismatch("tight composition of span cells".into()));
        }
        Ok(SpanCell {
            top: self.top.clone(),
            bottom: below.bottom.clone(),
            left: self.left.then(&below.left)?,
            right: self.right.then(&below.right)?,
            alpha: self.alpha.then(&below.alpha)?,
        })
    }

    /// Horizontal pasting: `self` to the left of `next`.
    pub fn loose_then(&self, next: &SpanCell) -> Result<SpanCell> {
        if self.right != next.left {
            return Err(Error::Mismatch("loose composition of span cells".into()));
        }
        let top = self.top.then(&next.top)?;
        let bottom = self.bottom.then(&next.bottom)?;
        let alpha = product_map(&top, &bottom, (&self.top, &self.alpha), (&next.top, &next.alpha))?;
        Ok(SpanCell { top, bottom, left: self.left.clone(), right: next.right.clone(), alpha })
    }
}

impl SqCell {
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let typed = self.left.dom() == self.top.dom()
            && self.left.cod() == self.bottom.dom()
            && self.right.dom() == self.top.cod()
            && self.right.cod() == self.bottom.cod();
        if !typed {
            report.malformed("square boundaries do not match", Vec::<String>::new());
            return report;
        }
        for a in self.top.dom().indices() {
            if self.bottom.at(self.left.at(a)) != self.right.at(self.top.at(a)) {
                report.push("square commutes", [self.top.dom().name(a)]);
            }
        }
        report
    }

    pub fn tight_then(&self, below: &SqCell) -> Result<SqCell> {
        if self.bottom != below.top {
            return Err(Error::Mismatch("tight composition of squares".into()));
        }
        Ok(SqCell {
            top: self.top.clone(),
            bottom: below.bottom.clone(),
            left: self.left.then(&below.left)?,
            right: self.right.then(&below.right)?,
        })
    }

    pub fn loose_then(&self, next: &SqCell) -> Result<SqCell> {
        if self.right != next.left {
            return Err(Error::Mismatch("loose composition of squares".into()));
        }
        Ok(SqCell {
            top: self.top.then(&next.top)?,
            bottom: self.bottom.then(&next.bottom)?,
            left: self.left.clone(),
            right: next.right.clone(),
        })
    }
}

impl SmultCell {
    pub fn new(top: Smf, bottom: Smf, left: FinFunction, right: FinFunction, alpha: FinFunction) -> Result<Self> {
        let c = SmultCell { top, bottom, left, right, alpha };
        let report = c.validate();
        if report.is_ok() {
            Ok(c)
        } else {
            Err(Error::invalid("cell", report))
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (top, bottom) = (self.top.span(), self.bottom.span());
        if !check_span_cell(&top, &bottom, &self.left, &self.right, &self.alpha, &mut report) {
            return report;
        }
        for a in self.top.src().indices() {
            if self.alpha.at(self.top.sigma.at(a)) != self.bottom.sigma.at(self.left.at(a)) {
                report.push("α φ = ψ f", [self.top.src().name(a)]);
            }
        }
        report
    }

    /// The identity cell on a loose morphism.
    pub fn identity_on(m: &Smf) -> SmultCell {
        SmultCell {
            top: m.clone(),
            bottom: m.clone(),
            left: FinFunction::identity(m.src()),
            right: FinFunction::identity(m.tgt()),
            alpha: FinFunction::identity(m.carrier()),
        }
    }

    /// The identity cell on a tight morphism `f`, between identity loose
    /// morphisms.
    pub fn identity_on_tight(f: &FinFunction) -> SmultCell {
        SmultCell {
            top: Smf::identity(f.dom()),
            bottom: Smf::identity(f.cod()),
            left: f.clone(),
            right: f.clone(),
            alpha: f.clone(),
        }
    }

    pub fn underlying_span_cell(&self) -> SpanCell {
        SpanCell {
            top: self.top.span(),
            bottom: self.bottom.span(),
            left: self.left.clone(),
            right: self.right.clone(),
            alpha: self.alpha.clone(),
        }
    }

    /// Vertical pasting: `self` above `below`.
    pub fn tight_then(&self, below: &SmultCell) -> Result<SmultCell> {
        if self.bottom != below.top {
            return Err(Error::Mismatch("tight composition of cells".into()));
        }
        Ok(SmultCell {
            top: self.top.clone(),
            bottom: below.bottom.clone(),
            left: self.left.then(&below.left)?,
            right: self.right.then(&below.right)?,
            alpha: self.alpha.then(&below.alpha)?,
        })
    }

    /// Horizontal pasting: `self` to the left of `next`.
    pub fn loose_then(&self, next: &SmultCell) -> Result<SmultCell> {
        if self.right != next.left {
            return Err(Error::Mismatch("loose composition of cells".into()));
        }
        let top = self.top.then(&next.top)?;
        let bottom = self.bottom.then(&next.bottom)?;
        let alpha = product_map(
            &top.span(),
            &bottom.span(),
            (&self.top.span(), &self.alpha),
            (&next.top.span(), &next.alpha),
        )?;
        Ok(SmultCell { top, bottom, left: self.left.clone(), right: next.right.clone(), alpha })
    }

    /// The inverse in the tight direction, when all three maps are bijective.
    pub fn inverse(&self) -> Option<SmultCell> {
        Some(SmultCell {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
            left: self.left.inverse()?,
            right: self.right.inverse()?,
            alpha: self.alpha.inverse()?,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.left.is_bijective() && self.right.is_bijective() && self.alpha.is_bijective()
    }

    /// Whether `left`, `right` and `α` are all identities.
    pub fn is_identity(&self) -> bool {
        self.top == self.bottom && self.left.is_identity() && self.right.is_identity() && self.alpha.is_identity()
    }
}

/// `c1` above `c2`.
pub fn tight_compose_cells(c1: &SmultCell, c2: &SmultCell) -> Result<SmultCell> {
    c1.tight_then(c2)
}

/// `c1` to the left of `c2`.
pub fn loose_compose_cells(c1: &SmultCell, c2: &SmultCell) -> Result<SmultCell> {
    c1.loose_then(c2)
}

/// The associator `m1.then(m2.then(m3)) ⇒ m1.then(m2).then(m3)`, which
/// re-brackets `(x,(y,z))` as `((x,y),z)`.
pub fn associator(m1: &Smf, m2: &Smf, m3: &Smf) -> Result<SmultCell> {
    let top = m1.then(&m2.then(m3)?)?;
    let bottom = m1.then(m2)?.then(m3)?;
    let mut table = BTreeMap::new();
    for x in m1.carrier().indices() {
        for y in m2.carrier().indices().filter(|&y| m2.s.at(y) == m1.t.at(x)) {
            for z in m3.carrier().indices().filter(|&z| m3.s.at(z) == m2.t.at(y)) {
                let (xn, yn, zn) = (m1.carrier().name(x), m2.carrier().name(y), m3.carrier().name(z));
                table.insert(pair(xn, &pair(yn, zn)), pair(&pair(xn, yn), zn));
            }
        }
    }
    let alpha = FinFunction::from_names(top.carrier(), bottom.carrier(), &table)?;
    Ok(SmultCell {
        left: FinFunction::identity(top.src()),
        right: FinFunction::identity(top.tgt()),
        top,
        bottom,
        alpha,
    })
}

/// `identity(A).then(m) ⇒ m`, sending `(a,x)` to `x`.
pub fn left_unitor(m: &Smf) -> SmultCell {
    let top = Smf::identity(m.src()).then(m).expect("identity is composable");
    let table = m
        .carrier()
        .elems()
        .iter()
        .map(|x| (pair(m.s.apply(x).unwrap(), x), x.clone()))
        .collect();
    let alpha = FinFunction::from_names(top.carrier(), m.carrier(), &table).expect("unitor");
    SmultCell {
        left: FinFunction::identity(m.src()),
        right: FinFunction::identity(m.tgt()),
        top,
        bottom: m.clone(),
        alpha,
    }
}

/// `m.then(identity(B)) ⇒ m`, sending `(x,b)` to `x`.
pub fn right_unitor(m: &Smf) -> SmultCell {
    let top = m.then(&Smf::identity(m.tgt())).expect("identity is composable");
    let table = m
        .carrier()
        .elems()
        .iter()
        .map(|x| (pair(x, m.t.apply(x).unwrap()), x.clone()))
        .collect();
    let alpha = FinFunction::from_names(top.carrier(), m.carrier(), &table).expect("unitor");
    SmultCell {
        left: FinFunction::identity(m.src()),
        right: FinFunction::identity(m.tgt()),
        top,
        bottom: m.clone(),
        alpha,
    }
}
