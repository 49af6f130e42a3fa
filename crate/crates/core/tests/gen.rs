use dlens_core::classify::{classify, ClassTag};
use dlens_core::gen::*;
use dlens_core::idx::fibres;
use dlens_core::lens::{is_split_opfibration, OpfibMode};

fn cfg(seed: u64) -> GenConfig {
    GenConfig { seed, max_objects: 5, max_hom: 3, max_fibre: 4, max_morphisms: 20, acyclic: false, count: 200 }
}

#[test]
fn generation_is_deterministic_per_index() {
    let c = cfg(7);
    for i in 0..20 {
        let a = random_lens(&mut c.rng(i), &c, LensShape::General).to_raw();
        let b = random_lens(&mut c.rng(i), &c, LensShape::General).to_raw();
        assert_eq!(a, b);
    }
    let x = random_category(&mut c.rng(0), &c).to_raw();
    let y = random_category(&mut cfg(8).rng(0), &c).to_raw();
    let z = random_category(&mut c.rng(1), &c).to_raw();
    assert!(x != y || x != z);
}

#[test]
fn categories_respect_bounds() {
    for acyclic in [false, true] {
        let c = GenConfig { acyclic, ..cfg(1) };
        for i in 0..c.count {
            let cat = random_category(&mut c.rng(i), &c);
            assert!(cat.law_violations().is_ok());
            assert!(cat.num_objects() <= c.max_objects && cat.num_morphisms() <= c.max_morphisms);
            for x in cat.objects() {
                for y in cat.objects() {
                    assert!(cat.hom(x, y).len() <= c.max_hom);
                    if acyclic && x != y {
                        assert!(cat.hom(x, y).is_empty() || cat.hom(y, x).is_empty());
                    }
                }
            }
        }
    }
    assert!(GenConfig { max_fibre: 0, ..cfg(0) }.check().is_err());
}

#[test]
fn lenses_are_valid_and_varied() {
    let c = cfg(3);
    let mut seen = std::collections::BTreeMap::<ClassTag, (usize, usize)>::new();
    for i in 0..c.count {
        for shape in [LensShape::General, LensShape::Dopf, LensShape::Projection] {
            let l = random_lens(&mut c.rng(i), &c, shape);
            assert!(l.law_violations().is_ok(), "{shape:?} #{i}: {}", l.law_violations());
            let x = fibres(&l);
            assert!(x.law_violations().is_ok());
            match shape {
                LensShape::Dopf => assert!(l.functor().is_discrete_opfibration()),
                LensShape::Projection => assert!(is_split_opfibration(&l, OpfibMode::Opcartesian)),
                LensShape::General => {
                    for o in x.base().objects() {
                        assert!(x.objset(o).len() <= c.max_fibre);
                    }
                    let r = classify(&x).unwrap();
                    for v in r.verdicts {
                        let e = seen.entry(v.tag).or_default();
                        if v.idx {
                            e.0 += 1
                        } else {
                            e.1 += 1
                        }
                    }
                }
            }
        }
    }
    for (tag, (yes, no)) in seen {
        assert!(yes > 0 && no > 0, "{tag}: {yes}/{no}");
    }
}

#[test]
fn cells_and_grids_are_valid() {
    let c = cfg(5);
    for i in 0..c.count {
        let mut rng = c.rng(i);
        let m = random_smf(&mut rng, 3);
        assert!(m.validate().is_ok());
        let cell = random_cell(&mut rng, 3);
        assert!(cell.validate().is_ok(), "{}", cell.validate());
        let [[a, b], [d, e]] = random_grid(&mut rng, 3);
        for x in [&a, &b, &d, &e] {
            assert!(x.validate().is_ok(), "{}", x.validate());
        }
        assert_eq!(a.right, b.left);
        assert_eq!(a.bottom, d.top);
        let path = random_smf_path(&mut rng, 4, 3);
        for w in path.windows(2) {
            assert_eq!(w[0].tgt(), w[1].src());
        }
    }
}

#[test]
fn mutations_change_one_entry() {
    let c = cfg(9);
    let mut made = 0;
    for i in 0..50 {
        let x = random_idx(&mut c.rng(i), &c, LensShape::General);
        if let Some(raw) = mutate_idx(&mut c.rng(1000 + i), &x) {
            assert_ne!(raw, x.to_raw());
            made += 1;
        }
    }
    assert!(made > 25);
}
