use std::collections::BTreeMap;

use dlens_core::gen::{random_cell, random_grid, random_smf, random_smf_path, GenConfig};
use dlens_core::names::pair;
use dlens_core::smult::*;
use proptest::prelude::*;

fn set(elems: &[&str]) -> FinSet {
    FinSet::new(elems.iter().copied()).unwrap()
}

fn table(entries: &[(&str, &str)]) -> BTreeMap<String, String> {
    entries.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn raw(src: &[&str], carrier: &[&str], tgt: &[&str], s: &[(&str, &str)], t: &[(&str, &str)], sigma: &[(&str, &str)]) -> RawSmf {
    RawSmf {
        src: src.iter().map(|x| x.to_string()).collect(),
        carrier: carrier.iter().map(|x| x.to_string()).collect(),
        tgt: tgt.iter().map(|x| x.to_string()).collect(),
        s: table(s),
        t: table(t),
        sigma: table(sigma),
    }
}

fn function(dom: &FinSet, cod: &FinSet, entries: &[(&str, &str)]) -> FinFunction {
    FinFunction::from_names(dom, cod, &table(entries)).unwrap()
}

/// `A = {a0, a1}`, carrier `{x0, x1, x2}` with `x0, x1` over `a0`, `B = {b0, b1}`.
fn sample() -> Smf {
    Smf::from_raw(&raw(
        &["a0", "a1"],
        &["x0", "x1", "x2"],
        &["b0", "b1"],
        &[("x0", "a0"), ("x1", "a0"), ("x2", "a1")],
        &[("x0", "b0"), ("x1", "b1"), ("x2", "b1")],
        &[("a0", "x1"), ("a1", "x2")],
    ))
    .unwrap()
}

fn preimage(f: &FinFunction, b: usize) -> usize {
    f.dom().indices().filter(|&i| f.at(i) == b).count()
}

#[test]
fn identity_smf_is_valid() {
    let a = set(&["p", "q"]);
    let id = identity_smf(&a);
    assert!(validate_smf(&id).is_ok());
    assert!(id.s.is_identity() && id.t.is_identity() && id.sigma.is_identity());
    assert!(u1(&id).is_identity());
}

#[test]
fn section_outside_its_fibre_is_reported() {
    let bad = raw(
        &["a0", "a1"],
        &["x0", "x1"],
        &["b"],
        &[("x0", "a0"), ("x1", "a1")],
        &[("x0", "b"), ("x1", "b")],
        &[("a0", "x1"), ("a1", "x1")],
    );
    let report = validate_raw_smf(&bad);
    assert!(!report.is_ok());
    assert!(!report.has_malformed());
    assert!(Smf::from_raw(&bad).is_err());
}

#[test]
fn empty_smf_is_valid_and_missing_entries_are_malformed() {
    let empty = raw(&[], &[], &["b"], &[], &[], &[]);
    assert!(validate_raw_smf(&empty).is_ok());
    let partial = raw(&["a"], &["x"], &["b"], &[], &[("x", "b")], &[("a", "x")]);
    assert!(validate_raw_smf(&partial).has_malformed());
}

#[test]
fn composite_carrier_is_the_set_of_matching_pairs() {
    let m = sample();
    let n = Smf::from_raw(&raw(
        &["b0", "b1"],
        &["y0", "y1", "y2"],
        &["c"],
        &[("y0", "b0"), ("y1", "b1"), ("y2", "b1")],
        &[("y0", "c"), ("y1", "c"), ("y2", "c")],
        &[("b0", "y0"), ("b1", "y2")],
    ))
    .unwrap();
    let c = compose_smf(&m, &n).unwrap();
    assert!(validate_smf(&c).is_ok());
    let mut names: Vec<&str> = c.carrier().elems().iter().map(String::as_str).collect();
    names.sort();
    assert_eq!(names, ["(x0,y0)", "(x1,y1)", "(x1,y2)", "(x2,y1)", "(x2,y2)"]);
    // a ↦ (σa, σ'(t σ a))
    assert_eq!(c.sigma.apply("a0"), Some("(x1,y2)"));
    assert_eq!(c.sigma.apply("a1"), Some("(x2,y2)"));
    assert_eq!(c.s.apply("(x2,y1)"), Some("a1"));
}

#[test]
fn functions_compose_as_functions() {
    let (a, b, c) = (set(&["1", "2", "3"]), set(&["p", "q"]), set(&["z", "w"]));
    let f = function(&a, &b, &[("1", "p"), ("2", "q"), ("3", "q")]);
    let g = function(&b, &c, &[("p", "w"), ("q", "z")]);
    let composite = compose_smf(&embed_coreflective(&f), &embed_coreflective(&g)).unwrap();
    assert_eq!(composite.carrier().len(), a.len());
    assert!(composite.s.is_bijective());
    assert_eq!(u1(&composite), f.then(&g).unwrap());
}

#[test]
fn composition_checks_the_boundary() {
    let m = sample();
    assert!(compose_smf(&m, &m).is_err());
}

#[test]
fn identity_composites_are_isomorphic_not_equal() {
    let m = sample();
    for u in [left_unitor(&m), right_unitor(&m)] {
        assert_ne!(u.top, m);
        assert!(u.validate().is_ok());
        assert!(u.is_invertible());
        assert_eq!(u.bottom, m);
    }
    assert_eq!(right_unitor(&m).alpha.apply("(x1,b1)"), Some("x1"));
    assert_eq!(left_unitor(&m).alpha.apply("(a0,x1)"), Some("x1"));
}

#[test]
fn identity_cells_compose_to_identity_cells() {
    let m = sample();
    let id = SmultCell::identity_on(&m);
    assert!(id.validate().is_ok());
    assert!(id.tight_then(&id).unwrap().is_identity());
    let f = function(&set(&["a0", "a1"]), &set(&["a0", "a1"]), &[("a0", "a1"), ("a1", "a0")]);
    let tid = SmultCell::identity_on_tight(&f);
    assert!(tid.validate().is_ok());
    assert_eq!(tid.left, f);
}

#[test]
fn cell_equations_are_checked() {
    let m = sample();
    let mut c = SmultCell::identity_on(&m);
    c.alpha = function(m.carrier(), m.carrier(), &[("x0", "x1"), ("x1", "x1"), ("x2", "x2")]);
    let report = c.validate();
    assert!(!report.is_ok());
    assert!(SmultCell::new(c.top.clone(), c.bottom.clone(), c.left.clone(), c.right.clone(), c.alpha.clone()).is_err());
}

#[test]
fn tight_composite_composes_the_boundaries() {
    let rng = &mut GenConfig::default().rng(5);
    let top = random_cell(rng, 3);
    let below = dlens_core::gen::random_cell_below(rng, &top.bottom, None, "c");
    let both = tight_compose_cells(&top, &below).unwrap();
    assert!(both.validate().is_ok());
    assert_eq!(both.left, top.left.then(&below.left).unwrap());
    assert_eq!(both.right, top.right.then(&below.right).unwrap());
    assert_eq!(both.alpha, top.alpha.then(&below.alpha).unwrap());
}

#[test]
fn associator_on_singletons_is_the_unique_map() {
    let one = |a: &str, x: &str, b: &str| Smf::from_raw(&raw(&[a], &[x], &[b], &[(x, a)], &[(x, b)], &[(a, x)])).unwrap();
    let (m1, m2, m3) = (one("a", "x", "b"), one("b", "y", "c"), one("c", "z", "d"));
    let cell = associator(&m1, &m2, &m3).unwrap();
    assert!(cell.validate().is_ok());
    assert_eq!(cell.alpha.apply("(x,(y,z))"), Some("((x,y),z)"));
    assert!(cell.is_invertible());
}

#[test]
fn k_star_is_a_companion() {
    let f = function(&set(&["1", "2"]), &set(&["p"]), &[("1", "p"), ("2", "p")]);
    let k = k_star(&f);
    assert!(k.s.is_identity());
    assert_eq!(k.t, f);
    let comp = k_star_compositor(&f, &FinFunction::identity(f.cod())).unwrap();
    assert!(comp.validate().is_ok());
    assert!(comp.alpha.is_bijective());
    assert_eq!(comp.alpha.apply("(1,p)"), Some("1"));
}

#[test]
fn sigma_component_has_the_splitting_as_carrier_map() {
    let m = sample();
    let c = sigma_component(&m);
    assert!(c.validate().is_ok());
    assert_eq!(c.alpha, m.sigma);
    assert_eq!(c.bottom, u2(&m));
    let id = sigma_component(&identity_smf(m.src()));
    assert!(id.alpha.is_identity() && id.left.is_identity() && id.right.is_identity());
    assert_eq!(id.top, id.bottom);
}

#[test]
fn counit_and_reflective_unit_have_the_described_shapes() {
    let m = sample();
    let eps = counit_component(&m);
    assert!(eps.validate().is_ok());
    assert!(eps.left.is_identity());
    assert_eq!(eps.alpha, m.sigma);
    let f = u1(&m);
    assert!(counit_component(&embed_coreflective(&f)).is_identity());

    let r = embed_reflective(&f);
    assert!(validate_smf(&r).is_ok());
    assert_eq!(r.carrier().len(), m.src().len() * m.tgt().len());
    let eta = reflective_unit_component(&m);
    assert!(eta.validate().is_ok());
    for x in m.carrier().elems() {
        let expected = pair(m.s.apply(x).unwrap(), m.t.apply(x).unwrap());
        assert_eq!(eta.alpha.apply(x), Some(expected.as_str()));
    }
    assert!(reflective_unit_component(&r).is_invertible());
}

#[test]
fn json_round_trip() {
    let m = sample();
    let json = serde_json::to_string(&m.to_raw()).unwrap();
    let back: RawSmf = serde_json::from_str(&json).unwrap();
    assert_eq!(Smf::from_raw(&back).unwrap(), m);
    let cell = reflective_unit_component(&m);
    let raw_cell: RawCell = serde_json::from_str(&serde_json::to_string(&cell.to_raw()).unwrap()).unwrap();
    assert_eq!(SmultCell::from_raw(&raw_cell, &BTreeMap::new()).unwrap(), cell);
    let named: BTreeMap<String, RawSmf> = [("m".to_string(), m.to_raw())].into();
    let by_name = RawCell {
        top: SmfRef::Named("m".into()),
        bottom: SmfRef::Named("m".into()),
        left: m.src().elems().iter().map(|a| (a.clone(), a.clone())).collect(),
        right: m.tgt().elems().iter().map(|b| (b.clone(), b.clone())).collect(),
        alpha: m.carrier().elems().iter().map(|x| (x.clone(), x.clone())).collect(),
    };
    assert!(SmultCell::from_raw(&by_name, &named).unwrap().is_identity());
    let missing = RawCell { top: SmfRef::Named("n".into()), ..by_name };
    assert!(SmultCell::from_raw(&missing, &named).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composite_size_matches_the_fibre_count(seed in any::<u64>()) {
        let path = random_smf_path(&mut GenConfig { seed, ..GenConfig::default() }.rng(0), 2, 3);
        let (m1, m2) = (&path[0], &path[1]);
        let c = compose_smf(m1, m2).unwrap();
        prop_assert!(validate_smf(&c).is_ok());
        let expected: usize = m1.tgt().indices().map(|b| preimage(&m1.t, b) * preimage(&m2.s, b)).sum();
        prop_assert_eq!(c.carrier().len(), expected);
    }

    #[test]
    fn associator_is_a_bijection(seed in any::<u64>()) {
        let path = random_smf_path(&mut GenConfig { seed, ..GenConfig::default() }.rng(0), 3, 3);
        let a = associator(&path[0], &path[1], &path[2]).unwrap();
        prop_assert!(a.validate().is_ok());
        prop_assert!(a.alpha.is_bijective());
        let inv = a.inverse().unwrap();
        prop_assert!(inv.tight_then(&a).unwrap().is_identity());
    }

    #[test]
    fn interchange_holds(seed in any::<u64>()) {
        let [[c11, c12], [c21, c22]] = random_grid(&mut GenConfig { seed, ..GenConfig::default() }.rng(0), 3);
        let rows = c11.loose_then(&c12).unwrap().tight_then(&c21.loose_then(&c22).unwrap()).unwrap();
        let cols = c11.tight_then(&c21).unwrap().loose_then(&c12.tight_then(&c22).unwrap()).unwrap();
        prop_assert!(rows.validate().is_ok());
        prop_assert_eq!(rows, cols);
    }

    #[test]
    fn sigma_is_natural(seed in any::<u64>()) {
        let c = random_cell(&mut GenConfig { seed, ..GenConfig::default() }.rng(0), 3);
        let (lhs, rhs) = sigma_naturality(&c).unwrap();
        prop_assert!(lhs.validate().is_ok());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn u1_and_u2_preserve_loose_composites(seed in any::<u64>()) {
        let path = random_smf_path(&mut GenConfig { seed, ..GenConfig::default() }.rng(0), 2, 3);
        let both = path[0].then(&path[1]).unwrap();
        prop_assert_eq!(u1(&both), u1(&path[0]).then(&u1(&path[1])).unwrap());
        prop_assert_eq!(u2(&both), u2(&path[0]).then(&u2(&path[1])).unwrap());
    }

    #[test]
    fn triangle_identities(seed in any::<u64>()) {
        let rng = &mut GenConfig { seed, ..GenConfig::default() }.rng(0);
        let m = random_smf(rng, 3);
        let f = u1(&random_smf(rng, 3));
        let eps = u1_cell(&counit_component(&m));
        prop_assert!(eps.left.is_identity() && eps.right.is_identity() && eps.top == eps.bottom);
        prop_assert!(counit_component(&embed_coreflective(&f)).is_identity());
        let eta = u1_cell(&reflective_unit_component(&m));
        prop_assert!(eta.left.is_identity() && eta.right.is_identity() && eta.top == eta.bottom);
        prop_assert!(reflective_unit_component(&embed_reflective(&f)).is_identity());
    }
}
