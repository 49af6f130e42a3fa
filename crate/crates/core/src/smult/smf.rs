use crate::error::{Error, Result};
use crate::names::pair;
use crate::report::ValidationReport;

use super::set::{FinFunction, FinSet};

/// A span `A <-s- X -t-> B` of finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMor {
    pub s: FinFunction,
    pub t: FinFunction,
}

impl SpanMor {
    pub fn new(s: FinFunction, t: FinFunction) -> Result<SpanMor> {
        if s.dom() != t.dom() {
            return Err(Error::Mismatch("span legs have different domains".into()));
        }
        Ok(SpanMor { s, t })
    }

    pub fn src(&self) -> &FinSet {
        self.s.cod()
    }

    pub fn carrier(&self) -> &FinSet {
        self.s.dom()
    }

    pub fn tgt(&self) -> &FinSet {
        self.t.cod()
    }

    pub fn identity(a: &FinSet) -> SpanMor {
        SpanMor { s: FinFunction::identity(a), t: FinFunction::identity(a) }
    }

    /// Whether `⟨s, t⟩` is injective, so the span is a relation.
    pub fn is_jointly_monic(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.carrier().indices().all(|x| seen.insert((self.s.at(x), self.t.at(x))))
    }

    /// `next ∘ self` on the carrier of composable pairs `(x,y)`.
    pub fn then(&self, next: &SpanMor) -> Result<SpanMor> {
        if self.tgt() != next.src() {
            return Err(Error::Mismatch("span composition boundary".into()));
        }
        let (carrier, left, right) = pullback_pairs(&self.t, &next.s);
        let s = FinFunction::new(carrier.clone(), self.src().clone(), left.iter().map(|&x| self.s.at(x)).collect());
        let t = FinFunction::new(carrier, next.tgt().clone(), right.iter().map(|&y| next.t.at(y)).collect());
        Ok(SpanMor { s, t })
    }
}

/// The set `{(x,y) | f x = g y}` and, per element, the indices of `x` and `y`.
fn pullback_pairs(f: &FinFunction, g: &FinFunction) -> (FinSet, Vec<usize>, Vec<usize>) {
    let mut by_image: Vec<Vec<usize>> = vec![Vec::new(); g.cod().len()];
    for y in g.dom().indices() {
        by_image[g.at(y)].push(y);
    }
    let mut pairs: Vec<(String, usize, usize)> = Vec::new();
    for x in f.dom().indices() {
        for &y in &by_image[f.at(x)] {
            pairs.push((pair(f.dom().name(x), g.dom().name(y)), x, y));
        }
    }
    let set = FinSet::new(pairs.iter().map(|p| p.0.clone())).expect("distinct pairs");
    let mut left = vec![0; set.len()];
    let mut right = vec![0; set.len()];
    for (name, x, y) in pairs {
        let k = set.index(&name).expect("member");
        left[k] = x;
        right[k] = y;
    }
    (set, left, right)
}

/// A split multivalued function `(s, X, t, σ)` from `A` to `B`: a span with
/// a chosen section `σ` of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smf {
    pub s: FinFunction,
    pub t: FinFunction,
    pub sigma: FinFunction,
}

/// Optional restrictions on split multivalued functions, all off by default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SmfFlags {
    /// Require `⟨s, t⟩` to be injective.
    pub jointly_monic: bool,
}

impl Smf {
    /// Builds and validates.
    pub fn new(s: FinFunction, t: FinFunction, sigma: FinFunction) -> Result<Smf> {
        let m = Smf { s, t, sigma };
        let report = m.validate();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(Error::invalid("split multivalued function", report))
        }
    }

    pub fn new_unchecked(s: FinFunction, t: FinFunction, sigma: FinFunction) -> Smf {
        Smf { s, t, sigma }
    }

    pub fn src(&self) -> &FinSet {
        self.s.cod()
    }

    pub fn carrier(&self) -> &FinSet {
        self.s.dom()
    }

    pub fn tgt(&self) -> &FinSet {
        self.t.cod()
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(SmfFlags::default())
    }

    pub fn validate_with(&self, flags: SmfFlags) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.s.dom() != self.t.dom() {
            report.malformed("legs have different domains", Vec::<String>::new());
        }
        if self.sigma.dom() != self.src() || self.sigma.cod() != self.carrier() {
            report.malformed("splitting is not a function from source to carrier", Vec::<String>::new());
        }
        if !report.is_ok() {
            return report;
        }
        for a in self.src().indices() {
            if self.s.at(self.sigma.at(a)) != a {
                report.push("splitting", [self.src().name(a), self.carrier().name(self.sigma.at(a))]);
            }
        }
        if !self.s.is_surjective() {
            report.push("s surjective", Vec::<String>::new());
        }
        if flags.jointly_monic && !self.span().is_jointly_monic() {
            report.push("jointly monic", Vec::<String>::new());
        }
        report
    }

    /// `(1_A, A, 1_A, 1_A)`.
    pub fn identity(a: &FinSet) -> Smf {
        let id = FinFunction::identity(a);
        Smf { s: id.clone(), t: id.clone(), sigma: id }
    }

    /// The underlying span.
    pub fn span(&self) -> SpanMor {
        SpanMor { s: self.s.clone(), t: self.t.clone() }
    }

    /// `next ∘ self`. The carrier is the set of pairs `(x,y)` with
    /// `t x = s' y`, and the splitting sends `a` to `(σa, σ'(t σ a))`.
    pub fn then(&self, next: &Smf) -> Result<Smf> {
        if self.tgt() != next.src() {
            return Err(Error::Mismatch("loose composition boundary".into()));
        }
        let span = self.span().then(&next.span())?;
        let sigma = FinFunction::from_fn(self.src(), span.carrier(), |a| {
            let x = self.sigma.apply(a).unwrap();
            let y = next.sigma.apply(self.t.apply(x).unwrap()).unwrap();
            pair(x, y)
        })?;
        Ok(Smf { s: span.s, t: span.t, sigma })
    }
}

impl Smf {
    /// Componentwise product `(s × s', X × X', t × t', σ × σ')`.
    pub fn product(&self, other: &Smf) -> Smf {
        Smf { s: self.s.product(&other.s), t: self.t.product(&other.t), sigma: self.sigma.product(&other.sigma) }
    }

    /// Componentwise coproduct.
    pub fn coproduct(&self, other: &Smf) -> Smf {
        Smf {
            s: self.s.coproduct(&other.s),
            t: self.t.coproduct(&other.t),
            sigma: self.sigma.coproduct(&other.sigma),
        }
    }
}

pub fn identity_smf(a: &FinSet) -> Smf {
    Smf::identity(a)
}

/// `m2 ∘ m1`.
pub fn compose_smf(m1: &Smf, m2: &Smf) -> Result<Smf> {
    m1.then(m2)
}

pub fn validate_smf(m: &Smf) -> ValidationReport {
    m.validate()
}
