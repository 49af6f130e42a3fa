mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::{arc, functor, to_terminal};
use dlens_core::error::Error;
use dlens_core::fincat::*;
use dlens_core::gen::catalog;

fn interval_raw() -> RawCategory {
    catalog::interval().to_raw()
}

#[test]
fn terminal_and_interval_validate() {
    assert!(validate_category(&catalog::terminal().to_raw()).is_ok());
    assert!(validate_category(&interval_raw()).is_ok());
    assert!(validate_category(&RawCategory::default()).is_ok());
}

#[test]
fn broken_right_unit_is_reported_at_u() {
    let mut raw = interval_raw();
    for c in raw.compose.iter_mut() {
        if c.first == "u" && c.then == "id[⊤]" {
            c.result = "id[⊥]".into();
        }
    }
    let report = validate_category(&raw);
    let unit: Vec<_> = report.laws_matching("right unit law").collect();
    assert_eq!(unit.len(), 1);
    assert!(unit[0].witness.contains(&"u".to_string()));
    assert!(!report.has_malformed());
}

#[test]
fn partial_tables_and_dangling_references_are_rejected() {
    let mut raw = interval_raw();
    raw.compose.retain(|c| !(c.first == "u" && c.then == "id[⊤]"));
    let report = validate_category(&raw);
    assert!(report.mentions("composition table not closed") || report.has_malformed());

    let mut raw = interval_raw();
    raw.morphisms[0].src = "nowhere".into();
    assert!(validate_category(&raw).has_malformed());
}

#[test]
fn validate_functor_examples() {
    let two = interval_raw();
    let one = catalog::terminal().to_raw();
    let cats: BTreeMap<String, RawCategory> = [("two".to_string(), two.clone()), ("one".to_string(), one)].into();
    let id = FinFunctor::identity(arc(catalog::interval())).to_raw();
    assert!(validate_functor(&id, &cats).is_ok());

    let bang = RawFunctor {
        dom: Some(CatRef::Named("two".into())),
        cod: Some(CatRef::Named("one".into())),
        obj_map: [("⊥", "*"), ("⊤", "*")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        mor_map: [("id[⊥]", "id[*]"), ("id[⊤]", "id[*]"), ("u", "id[*]")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    assert!(validate_functor(&bang, &cats).is_ok());

    let mut bad = id.clone();
    bad.mor_map.insert("u".into(), "id[⊥]".into());
    let report = validate_functor(&bad, &cats);
    assert!(report.mentions("src/tgt preservation"));
    assert!(!report.has_malformed());

    let mut dangling = id;
    dangling.mor_map.insert("u".into(), "v".into());
    assert!(validate_functor(&dangling, &cats).has_malformed());
}

#[test]
fn predicates_on_small_functors() {
    let two = arc(catalog::interval());
    let id = FinFunctor::identity(two.clone());
    assert!(id.is_identity_on_objects() && id.is_discrete_opfibration() && id.is_discrete_fibration());
    assert!(id.is_fully_faithful() && id.is_faithful() && id.is_bijective_on_objects());

    let bang = to_terminal(&two);
    assert!(!bang.is_identity_on_objects());
    assert!(!bang.is_fully_faithful());
    assert!(bang.is_surjective_on_objects());

    let v = arc(catalog::v_shape());
    let f = functor(&v, &two, &[("a0", "⊥"), ("a1", "⊤"), ("a2", "⊤")], &[("w1", "u"), ("w2", "u")]);
    assert!(!f.is_discrete_opfibration());
    assert!(f.is_faithful());

    let empty = arc(catalog::empty());
    let e = FunctorSearch::new(&empty, &two).first().unwrap();
    assert!(e.is_discrete_opfibration() && e.is_discrete_fibration() && e.is_faithful());

    let j = to_codiscrete(&two);
    assert!(j.is_bijective_on_objects() && j.is_faithful() && j.is_identity_on_objects());
}

#[test]
fn product_projection_is_a_discrete_opfibration_only_for_discrete_factors() {
    let d2 = arc(catalog::discrete(2));
    let two = arc(catalog::interval());
    assert!(product(&d2, &two).right.is_discrete_opfibration());
    assert!(!product(&two, &two).right.is_discrete_opfibration());
}

#[test]
fn comma_and_components() {
    let one = arc(catalog::terminal());
    assert_eq!(comma_over(&FinFunctor::identity(one.clone()), Obj(0)).num_objects(), 1);
    let two = arc(catalog::interval());
    let top = two.obj("⊤").unwrap();
    let c = comma_over(&FinFunctor::identity(two.clone()), top);
    assert_eq!(c.num_objects(), 2);
    assert_eq!(c.num_morphisms() - c.num_objects(), 1);
    let empty = arc(catalog::empty());
    let e = FunctorSearch::new(&empty, &two).first().unwrap();
    assert_eq!(comma_over(&e, top).num_objects(), 0);

    assert_eq!(pi0(&catalog::discrete(3)).len(), 3);
    assert_eq!(pi0(&catalog::interval()).len(), 1);
    assert_eq!(pi0(&catalog::v_shape()).len(), 1);
}

#[test]
fn initial_functor_examples() {
    let two = arc(catalog::interval());
    let one = arc(catalog::terminal());
    let empty = arc(catalog::empty());
    assert!(FinFunctor::identity(two.clone()).is_initial());
    assert!(!FunctorSearch::new(&empty, &one).first().unwrap().is_initial());
    let bot = functor(&one, &two, &[("*", "⊥")], &[]);
    assert!(bot.is_initial());
    let top = functor(&one, &two, &[("*", "⊤")], &[]);
    assert!(!top.is_initial());
}

fn check_factorization(f: &FinFunctor) {
    let fac = comprehensive_factorization(f);
    assert!(fac.mid.law_violations().is_ok());
    assert!(fac.first.law_violations().is_ok());
    assert!(fac.second.law_violations().is_ok());
    assert!(fac.first.is_initial());
    assert!(fac.second.is_discrete_opfibration());
    assert_eq!(&fac.first.then(&fac.second).unwrap(), f);
}

#[test]
fn comprehensive_factorization_examples() {
    let two = arc(catalog::interval());
    let one = arc(catalog::terminal());
    let bot = functor(&one, &two, &[("*", "⊥")], &[]);
    let fac = comprehensive_factorization(&bot);
    assert_eq!(fac.mid.num_objects(), 2);
    assert!(fac.second.is_isomorphism());
    check_factorization(&bot);

    let v = arc(catalog::v_shape());
    let bang = to_terminal(&v);
    let fac = comprehensive_factorization(&bang);
    assert_eq!(fac.mid.num_objects(), 1);
    assert_eq!(fac.mid.num_morphisms(), 1);
    check_factorization(&bang);

    let id = FinFunctor::identity(two.clone());
    let fac = comprehensive_factorization(&id);
    assert!(fac.first.is_isomorphism());
    check_factorization(&id);

    for (_, a) in catalog::all(3) {
        for (_, b) in catalog::all(3) {
            for f in FunctorSearch::new(&a, &b).run(Some(40)) {
                check_factorization(&f);
            }
        }
    }
}

#[test]
fn decalage_counts() {
    let one = arc(catalog::terminal());
    let dec = decalage(&one);
    assert_eq!((dec.cat.num_objects(), dec.cat.num_morphisms()), (1, 1));
    let two = arc(catalog::interval());
    let dec = decalage(&two);
    assert_eq!(dec.cat.num_objects(), 3);
    assert!(dec.counit.is_surjective_on_objects());
    for (_, a) in catalog::all(3) {
        let dec = decalage(&a);
        assert_eq!(dec.cat.num_objects(), a.num_morphisms());
        assert!(dec.cat.law_violations().is_ok());
        assert!(dec.counit.law_violations().is_ok());
    }
}

#[test]
fn pullback_examples_and_universal_property() {
    let two = arc(catalog::interval());
    let one = arc(catalog::terminal());
    let id = FinFunctor::identity(two.clone());
    let v = arc(catalog::v_shape());
    let f = functor(&v, &two, &[("a0", "⊥"), ("a1", "⊤"), ("a2", "⊤")], &[("w1", "u"), ("w2", "u")]);
    let pb = pullback(&f, &id).unwrap();
    assert!(pb.left.is_isomorphism());

    let bot = functor(&one, &two, &[("*", "⊥")], &[]);
    let top = functor(&one, &two, &[("*", "⊤")], &[]);
    assert_eq!(pullback(&bot, &top).unwrap().cat.num_objects(), 0);

    let pb = pullback(&f, &f).unwrap();
    let matching = v.objects().flat_map(|a| v.objects().map(move |b| (a, b))).filter(|&(a, b)| f.ob(a) == f.ob(b)).count();
    assert_eq!(pb.cat.num_objects(), matching);
    common::check_pullback_property(&f, &f, &pb.left, &pb.right).unwrap();
    let pb = pullback(&bot, &f).unwrap();
    common::check_pullback_property(&bot, &f, &pb.left, &pb.right).unwrap();
}

#[test]
fn codiscrete_counts() {
    let one = codiscrete(&["*".to_string()]);
    assert_eq!((one.num_objects(), one.num_morphisms()), (1, 1));
    let two = codiscrete(&["a".to_string(), "b".to_string()]);
    assert_eq!(two.num_morphisms(), 4);
    assert!(two.law_violations().is_ok());
    let j = to_codiscrete(&arc(catalog::interval()));
    assert!(j.is_identity_on_objects() && j.is_faithful());
    // The interval has no morphism ⊤ -> ⊥, so the comparison is not full.
    assert!(!j.is_full());
}

fn pushout_ok(p: &FinFunctor, i: &FinFunctor) -> Cocone {
    let po = pushout_along_ioo(p, i, PushoutBound::default()).unwrap();
    assert!(po.cat.law_violations().is_ok());
    assert!(po.left.law_violations().is_ok() && po.right.law_violations().is_ok());
    assert_eq!(p.then(&po.left).unwrap(), i.then(&po.right).unwrap());
    common::check_pushout_property(p, i, &po.left, &po.right).unwrap();
    po
}

#[test]
fn pushout_along_identity_and_discrete() {
    let two = arc(catalog::interval());
    let id = FinFunctor::identity(two.clone());
    let po = pushout_ok(&id, &id);
    assert_eq!(po.cat.num_morphisms(), 3);

    let pp = arc(catalog::parallel_pair());
    let (disc, incl) = subcategory(&pp, &[pp.identity(Obj(0)), pp.identity(Obj(1))], &[]).unwrap();
    let po = pushout_ok(&incl, &FinFunctor::identity(disc));
    assert_eq!(po.cat.num_morphisms(), pp.num_morphisms());
}

#[test]
fn pushout_glues_one_arrow_of_a_parallel_pair() {
    let pp = arc(catalog::parallel_pair());
    let f = pp.mor("f").unwrap();
    let (x, incl) = subcategory(&pp, &[f, pp.identity(Obj(0)), pp.identity(Obj(1))], &[]).unwrap();
    let two = arc(catalog::interval());
    let i = functor(&x, &two, &[("x", "⊥"), ("y", "⊤")], &[("f", "u")]);
    let po = pushout_ok(&incl, &i);
    assert_eq!(po.cat.num_morphisms(), 4);
}

#[test]
fn free_loop_is_undecided() {
    let two = arc(catalog::interval());
    let d2 = arc(catalog::discrete(2));
    let (disc, incl) = subcategory(&two, &[two.identity(Obj(0)), two.identity(Obj(1))], &[]).unwrap();
    let _ = d2;
    let bang = to_terminal(&disc);
    match pushout_along_ioo(&incl, &bang, PushoutBound::default()) {
        Err(Error::Undecided(_)) => {}
        other => panic!("expected undecided, got {other:?}"),
    }
}

#[test]
fn dot_export_lists_non_identity_edges() {
    let dot = to_dot(&catalog::v_shape(), "V", |_| None);
    assert_eq!(dot.matches("->").count(), 2);
    assert!(dot.contains("\"w1\""));
}

#[test]
fn json_round_trip() {
    let c = catalog::chain(3);
    let json = serde_json::to_string(&c.to_raw()).unwrap();
    let back: RawCategory = serde_json::from_str(&json).unwrap();
    assert_eq!(FinCat::from_raw(&back).unwrap(), c);
    let _: Arc<FinCat> = Arc::new(c);
}
