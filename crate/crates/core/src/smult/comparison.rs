//! The comparison double functors U₁: SMult → Sq(Set), U₂: SMult → Span and
//! K∗: Sq(Set) → Span, the globular transformation σ between them, and the
//! units and counits of the two adjunctions with Sq(Set).

use crate::error::Result;
use crate::names::pair;

use super::cells::{SmultCell, SpanCell, SqCell};
use super::set::{FinFunction, FinSet};
use super::smf::{Smf, SpanMor};

/// `t ∘ σ`.
pub fn u1(m: &Smf) -> FinFunction {
    m.sigma.then(&m.t).expect("splitting lands in the carrier")
}

pub fn u1_cell(c: &SmultCell) -> SqCell {
    SqCell { top: u1(&c.top), bottom: u1(&c.bottom), left: c.left.clone(), right: c.right.clone() }
}

/// Forgets the splitting.
pub fn u2(m: &Smf) -> SpanMor {
    m.span()
}

pub fn u2_cell(c: &SmultCell) -> SpanCell {
    c.underlying_span_cell()
}

/// The companion span `(1_A, A, f)`.
pub fn k_star(f: &FinFunction) -> SpanMor {
    SpanMor { s: FinFunction::identity(f.dom()), t: f.clone() }
}

pub fn k_star_cell(c: &SqCell) -> SpanCell {
    SpanCell {
        top: k_star(&c.top),
        bottom: k_star(&c.bottom),
        left: c.left.clone(),
        right: c.right.clone(),
        alpha: c.left.clone(),
    }
}

/// The component `K∗U₁(m) ⇒ U₂(m)`, with carrier map `σ`.
pub fn sigma_component(m: &Smf) -> SpanCell {
    SpanCell {
        top: k_star(&u1(m)),
        bottom: u2(m),
        left: FinFunction::identity(m.src()),
        right: FinFunction::identity(m.tgt()),
        alpha: m.sigma.clone(),
    }
}

/// Both sides of the naturality square of σ at a cell, as span cells from
/// `K∗U₁(top)` to `U₂(bottom)`.
pub fn sigma_naturality(c: &SmultCell) -> Result<(SpanCell, SpanCell)> {
    let lhs = sigma_component(&c.top).tight_then(&u2_cell(c))?;
    let rhs = k_star_cell(&u1_cell(c)).tight_then(&sigma_component(&c.bottom))?;
    Ok((lhs, rhs))
}

/// The canonical comparison `K∗(f).then(K∗(g)) ⇒ K∗(g ∘ f)`, sending
/// `(a, f a)` to `a`.
pub fn k_star_compositor(f: &FinFunction, g: &FinFunction) -> Result<SpanCell> {
    let top = k_star(f).then(&k_star(g))?;
    let bottom = k_star(&f.then(g)?);
    let table = f.dom().elems().iter().map(|a| (pair(a, f.apply(a).unwrap()), a.clone())).collect();
    let alpha = FinFunction::from_names(top.carrier(), bottom.carrier(), &table)?;
    Ok(SpanCell {
        left: FinFunction::identity(f.dom()),
        right: FinFunction::identity(g.cod()),
        top,
        bottom,
        alpha,
    })
}

/// `(1_A, A, f, 1_A)`, the left adjoint to U₁ (coreflective).
pub fn embed_coreflective(f: &FinFunction) -> Smf {
    Smf { s: FinFunction::identity(f.dom()), t: f.clone(), sigma: FinFunction::identity(f.dom()) }
}

/// The counit `embed_coreflective(U₁ m) ⇒ m`, with carrier map `σ`.
pub fn counit_component(m: &Smf) -> SmultCell {
    SmultCell {
        top: embed_coreflective(&u1(m)),
        bottom: m.clone(),
        left: FinFunction::identity(m.src()),
        right: FinFunction::identity(m.tgt()),
        alpha: m.sigma.clone(),
    }
}

/// The action of `embed_coreflective` on a commuting square.
pub fn embed_coreflective_cell(c: &SqCell) -> SmultCell {
    SmultCell {
        top: embed_coreflective(&c.top),
        bottom: embed_coreflective(&c.bottom),
        left: c.left.clone(),
        right: c.right.clone(),
        alpha: c.left.clone(),
    }
}

/// `(π_A, A×B, π_B, ⟨1_A, f⟩)`, the right adjoint to U₁ (reflective).
pub fn embed_reflective(f: &FinFunction) -> Smf {
    let (a, b) = (f.dom(), f.cod());
    let ab = FinSet::product(a, b);
    let mut s = Vec::with_capacity(ab.len());
    let mut t = Vec::with_capacity(ab.len());
    let mut index = std::collections::HashMap::new();
    for x in a.indices() {
        for y in b.indices() {
            index.insert(ab.index(&pair(a.name(x), b.name(y))).unwrap(), (x, y));
        }
    }
    for k in ab.indices() {
        let (x, y) = index[&k];
        s.push(x);
        t.push(y);
    }
    let sigma = FinFunction::identity(a).pairing(f, &ab).expect("same domain");
    Smf { s: FinFunction::new(ab.clone(), a.clone(), s), t: FinFunction::new(ab, b.clone(), t), sigma }
}

/// The unit `m ⇒ embed_reflective(U₁ m)`, with carrier map `⟨s, t⟩`.
pub fn reflective_unit_component(m: &Smf) -> SmultCell {
    let bottom = embed_reflective(&u1(m));
    let alpha = m.s.pairing(&m.t, bottom.carrier()).expect("legs share the carrier");
    SmultCell {
        top: m.clone(),
        bottom,
        left: FinFunction::identity(m.src()),
        right: FinFunction::identity(m.tgt()),
        alpha,
    }
}

/// The action of `embed_reflective` on a commuting square.
pub fn embed_reflective_cell(c: &SqCell) -> SmultCell {
    let top = embed_reflective(&c.top);
    let bottom = embed_reflective(&c.bottom);
    let alpha = FinFunction::from_fn(top.carrier(), bottom.carrier(), |ab| {
        let k = top.carrier().index(ab).unwrap();
        let (a, b) = (top.s.at(k), top.t.at(k));
        pair(c.left.cod().name(c.left.at(a)), c.right.cod().name(c.right.at(b)))
    })
    .expect("product carriers");
    SmultCell { top, bottom, left: c.left.clone(), right: c.right.clone(), alpha }
}
