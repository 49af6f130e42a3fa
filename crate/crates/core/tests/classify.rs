mod common;

use std::collections::BTreeMap;

use common::{arc, l_minus, small_lenses, terminal_idx, three_arrows_over_two, x_minus_raw};
use dlens_core::classify::*;
use dlens_core::fincat::is_discrete;
use dlens_core::gen::catalog;
use dlens_core::idx::*;
use dlens_core::lens::*;

fn verdict(x: &IndexedSmf, tag: ClassTag) -> bool {
    let r = classify(x).unwrap();
    assert!(r.all_agree(), "{r}");
    r.holds(tag).unwrap()
}

#[test]
fn constant_terminal_data() {
    for (_, b) in catalog::all(3) {
        let r = classify(&terminal_idx(&b)).unwrap();
        assert!(r.all_agree(), "{r}");
        for tag in [
            ClassTag::BijectiveOnObjects,
            ClassTag::DiscreteOpfibration,
            ClassTag::FullyFaithful,
            ClassTag::SplitOpfibration,
            ClassTag::Cofree,
        ] {
            assert_eq!(r.holds(tag), Some(true), "{tag}");
        }
    }
}

#[test]
fn x_minus_classes() {
    let x = IndexedSmf::from_raw(&x_minus_raw()).unwrap();
    assert!(verdict(&x, ClassTag::Faithful));
    assert!(!verdict(&x, ClassTag::DiscreteOpfibration));
    assert!(!verdict(&x, ClassTag::SplitOpfibration));
    assert!(!verdict(&x, ClassTag::InjectiveOnObjects));
    assert!(verdict(&x, ClassTag::SurjectiveOnObjects));
    assert_eq!(fibres(&l_minus()).to_raw().objsets.len(), 2);
}

#[test]
fn projections() {
    let cats = catalog::all(2);
    for (_, a) in &cats {
        for (_, b) in &cats {
            let x = fibres(&projection_lens(a, b));
            assert!(verdict(&x, ClassTag::SplitOpfibration));
            let dopf = is_discrete(a) || b.num_objects() == 0;
            assert_eq!(verdict(&x, ClassTag::DiscreteOpfibration), dopf);
        }
    }
}

#[test]
fn both_implementations_agree_on_all_small_lenses() {
    let mut positives: BTreeMap<ClassTag, (usize, usize)> = BTreeMap::new();
    for l in small_lenses(3) {
        let r = classify(&fibres(&l)).unwrap();
        assert!(r.all_agree(), "{:?} on {:?}", r.disagreements().collect::<Vec<_>>(), l.to_raw());
        for v in &r.verdicts {
            let e = positives.entry(v.tag).or_default();
            if v.idx {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
    }
    for (tag, (yes, no)) in positives {
        assert!(yes > 0 && no > 0, "{tag}: {yes} positive, {no} negative");
    }
}

#[test]
fn implications_between_classes() {
    for l in small_lenses(3) {
        let x = fibres(&l);
        let r = classify(&x).unwrap();
        let h = |t| r.holds(t).unwrap();
        if h(ClassTag::DiscreteOpfibration) {
            assert!(h(ClassTag::SplitOpfibration));
            assert!(counit_at(&l).is_invertible());
        }
        assert_eq!(
            h(ClassTag::BijectiveOnObjects),
            h(ClassTag::InjectiveOnObjects) && h(ClassTag::SurjectiveOnObjects)
        );
        if h(ClassTag::FullyFaithful) {
            assert!(h(ClassTag::Faithful));
        }
    }
}

#[test]
fn cofree_examples() {
    assert!(!verdict(&fibres(&three_arrows_over_two()), ClassTag::Cofree));
    for l in small_lenses(2).into_iter().chain([three_arrows_over_two()]) {
        let c = cofree_lens(&l.underlying_retrofunctor());
        assert!(verdict(&fibres(&c), ClassTag::Cofree));
    }
    // Over a thin base every lens is cofree.
    let chain = arc(catalog::chain(3));
    for l in small_lenses(3).into_iter().filter(|l| *l.cod() == chain) {
        assert!(verdict(&fibres(&l), ClassTag::Cofree));
    }
}

#[test]
fn invalid_input_is_rejected() {
    let mut raw = x_minus_raw();
    for m in raw.mu.iter_mut().filter(|m| m.u == "id[⊥]" && m.v == "u") {
        m.table[0].result = "α2".into();
    }
    let x = IndexedSmf::from_raw_unchecked(&raw).unwrap();
    assert!(classify(&x).is_err());
}

#[test]
fn report_formats() {
    let r = classify(&IndexedSmf::from_raw(&x_minus_raw()).unwrap()).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["verdicts"][0]["tag"], "discrete_opfibration");
    assert_eq!(json["verdicts"].as_array().unwrap().len(), 9);
    let back: ClassReport = serde_json::from_value(json).unwrap();
    assert_eq!(back, r);
    let table = r.to_string();
    assert_eq!(table.lines().count(), 10);
    assert!(table.contains("split_opfibration"));
}
