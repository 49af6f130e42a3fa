mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::{arc, functor, l_minus, small_lenses, terminal_idx, x_minus_raw};
use dlens_core::error::Error;
use dlens_core::fincat::*;
use dlens_core::gen::catalog;
use dlens_core::idx::*;
use dlens_core::lens::*;
use dlens_core::names::pair;
use dlens_core::smult::{FinFunction, FinSet};

fn x_minus() -> IndexedSmf {
    IndexedSmf::from_raw(&x_minus_raw()).expect("X⁻ is valid")
}

/// Lenses over `𝟚` or `𝟙` with small fibres, for enumeration-heavy tests.
fn tiny_lenses() -> Vec<DeltaLens> {
    small_lenses(3)
        .into_iter()
        .filter(|l| l.cod().num_objects() <= 2 && l.dom().num_morphisms() <= 6)
        .collect()
}

#[test]
fn terminal_indexed_data_is_valid_and_its_elements_are_the_base() {
    for (_, b) in catalog::all(3) {
        let x = terminal_idx(&b);
        assert!(validate_indexed_smf(&x.to_raw()).is_ok());
        let el = elements(&x).unwrap();
        assert!(el.lens.functor().is_isomorphism());
        assert!(is_split_opfibration_idx(&x));
    }
}

#[test]
fn x_minus_elements_are_l_minus() {
    let x = x_minus();
    let el = elements(&x).unwrap();
    let (e, l) = (el.lens.dom(), l_minus());
    let rename: BTreeMap<&str, &str> = [
        ("(⊥,p)", "a0"),
        ("(⊤,q1)", "a1"),
        ("(⊤,q2)", "a2"),
        ("(u,α1)", "w1"),
        ("(u,α2)", "w2"),
        ("(id[⊥],p)", "id[a0]"),
        ("(id[⊤],q1)", "id[a1]"),
        ("(id[⊤],q2)", "id[a2]"),
    ]
    .into_iter()
    .collect();
    let a = l.dom();
    let h = FinFunctor::new(
        e.clone(),
        a.clone(),
        e.objects().map(|o| a.obj(rename[e.obj_name(o)]).unwrap()).collect(),
        e.morphisms().map(|m| a.mor(rename[e.mor_name(m)]).unwrap()).collect(),
    )
    .unwrap();
    let iso = LensMorphism::new(el.lens.clone(), l.clone(), h, FinFunctor::identity(l.cod().clone())).unwrap();
    assert!(iso.is_invertible());
    assert_eq!(el.objects["(⊤,q2)"], ("⊤".to_string(), "q2".to_string()));

    // fibres(L⁻) is X⁻ after renaming a0 ↦ p and so on.
    let f = fibres(&l);
    let b = f.base();
    let sizes: Vec<usize> = b.morphisms().map(|u| f.carrier(u).carrier().len()).collect();
    let expected: Vec<usize> = b.morphisms().map(|u| x.carrier(u).carrier().len()).collect();
    assert_eq!(sizes, expected);
    let u = b.mor("u").unwrap();
    assert_eq!(f.carrier(u).sigma.apply("a0"), Some("w1"));
}

#[test]
fn element_counts() {
    for l in small_lenses(3) {
        let x = fibres(&l);
        let el = elements(&x).unwrap();
        let b = x.base();
        let objs: usize = b.objects().map(|o| x.objset(o).len()).sum();
        let mors: usize = b.morphisms().map(|u| x.carrier(u).carrier().len()).sum();
        assert_eq!(el.lens.dom().num_objects(), objs);
        assert_eq!(el.lens.dom().num_morphisms(), mors);
        // F(u,v) has one pair per composable pair of morphisms over u and v.
        let a = l.dom();
        for (u, v) in b.composable_pairs() {
            let count = a
                .composable_pairs()
                .filter(|&(w1, w2)| l.functor().mor(w1) == u && l.functor().mor(w2) == v)
                .count();
            assert_eq!(x.pairs(u, v).len(), count);
        }
    }
}

#[test]
fn fibres_of_identity_are_singletons() {
    let c = arc(catalog::chain(3));
    let x = fibres(&DeltaLens::identity(c.clone()));
    for o in c.objects() {
        assert_eq!(x.objset(o).elems(), &[c.obj_name(o).to_string()]);
    }
    for u in c.morphisms() {
        assert_eq!(x.carrier(u).carrier().elems(), &[c.mor_name(u).to_string()]);
    }
}

#[test]
fn perturbing_a_unit_comparison_breaks_l4() {
    let mut raw = x_minus_raw();
    for m in raw.mu.iter_mut().filter(|m| m.u == "id[⊥]" && m.v == "u") {
        for e in m.table.iter_mut().filter(|e| e.beta == "α1") {
            e.result = "α2".into();
        }
    }
    let report = validate_indexed_smf(&raw);
    assert!(!report.has_malformed());
    assert!(report.laws_matching("L4").count() >= 1);
    assert!(!check_delta_lens(&elements_raw(&IndexedSmf::from_raw_unchecked(&raw).unwrap())).is_ok());
}

#[test]
fn validation_agrees_with_elements_under_mutation() {
    let mut checked = 0;
    for l in small_lenses(3).into_iter().filter(|l| l.dom().num_morphisms() <= 8) {
        let raw = fibres(&l).to_raw();
        assert!(validate_indexed_smf(&raw).is_ok());
        for (i, m) in raw.mu.iter().enumerate() {
            let carrier = &raw.carriers[&pair_target(&raw, &m.u, &m.v)].elems;
            for (j, e) in m.table.iter().enumerate() {
                for other in carrier.iter().filter(|c| **c != e.result) {
                    let mut bad = raw.clone();
                    bad.mu[i].table[j].result = other.clone();
                    let report = validate_indexed_smf(&bad);
                    let x = IndexedSmf::from_raw_unchecked(&bad).unwrap();
                    let lens_ok = check_delta_lens(&elements_raw(&x)).is_ok();
                    assert_eq!(report.is_ok(), lens_ok);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

fn pair_target(raw: &RawIndexedSmf, u: &str, v: &str) -> String {
    raw.base.compose.iter().find(|c| c.first == u && c.then == v).unwrap().result.clone()
}

#[test]
fn round_trips_on_all_small_lenses() {
    for l in small_lenses(3) {
        let w = roundtrip_lens(&l).unwrap();
        assert!(w.is_invertible());
        let x = fibres(&l);
        let m = roundtrip_idx(&x).unwrap();
        assert!(m.is_invertible());
    }
    roundtrip_idx(&x_minus()).unwrap();
}

#[test]
fn morphism_functoriality() {
    let l = l_minus();
    let id = LensMorphism::identity(&l);
    let m = fibres_morphism(&id).unwrap();
    assert_eq!(m, IdxMorphism::identity(&fibres(&l)));
    let back = elements_morphism(&m).unwrap();
    assert!(back.law_violations().is_ok());
    assert!(back.h.is_identity_on_objects());

    for l in small_lenses(2) {
        let c = counit_at(&l);
        let m = fibres_morphism(&c).unwrap();
        assert!(m.law_violations().is_ok(), "{}", m.law_violations());
        let e = elements_morphism(&m).unwrap();
        assert!(e.law_violations().is_ok());
        // Composition: counit then identity.
        let twice = m.then(&IdxMorphism::identity(&m.target)).unwrap();
        assert_eq!(twice, m);
        let lm = c.then(&LensMorphism::identity(&l)).unwrap();
        assert_eq!(fibres_morphism(&lm).unwrap(), m);
    }
}

#[test]
fn split_opfibration_criterion() {
    assert!(!is_split_opfibration_idx(&x_minus()));
    for l in small_lenses(3) {
        let x = fibres(&l);
        assert_eq!(is_split_opfibration_idx(&x), is_split_opfibration(&l, OpfibMode::Opcartesian));
    }
}

#[test]
fn reindexing() {
    let x = x_minus();
    let b = x.base().clone();
    assert_eq!(pullback_idx(&x, &FinFunctor::identity(b.clone())).unwrap(), x);

    let one = arc(catalog::terminal());
    let pick_top = functor(&one, &b, &[("*", "⊤")], &[]);
    let y = pullback_idx(&x, &pick_top).unwrap();
    assert!(y.law_violations().is_ok());
    assert_eq!(y.objset(Obj(0)).len(), 2);

    // El of the re-indexed data is the pullback of El.
    for l in small_lenses(2) {
        let x = fibres(&l);
        for (_, d) in catalog::all(2) {
            for k in FunctorSearch::new(&d, l.cod()).all() {
                let y = pullback_idx(&x, &k).unwrap();
                assert!(y.law_violations().is_ok());
                let el = elements(&y).unwrap();
                let cone = pullback(l.functor(), &k).unwrap();
                let (e, p) = (el.lens.dom(), &cone.cat);
                let h = FinFunctor::new(
                    e.clone(),
                    p.clone(),
                    e.objects()
                        .map(|o| {
                            let (dn, a) = &el.objects[e.obj_name(o)];
                            p.obj(&pair(a, dn)).unwrap()
                        })
                        .collect(),
                    e.morphisms()
                        .map(|m| {
                            let (un, w) = &el.morphisms[e.mor_name(m)];
                            p.mor(&pair(w, un)).unwrap()
                        })
                        .collect(),
                )
                .unwrap();
                assert!(h.is_isomorphism());
            }
        }
    }
}

fn parallel_over_two() -> DeltaLens {
    let pp = arc(catalog::parallel_pair());
    let two = arc(catalog::interval());
    let f = functor(&pp, &two, &[("x", "⊥"), ("y", "⊤")], &[("f", "u"), ("g", "u")]);
    let lift = pp.mor("f").unwrap();
    DeltaLens::new(f, |o, u| if two.is_identity(u) { pp.identity(o) } else { lift }).unwrap()
}

#[test]
fn pushforward_along_identity_and_collapse() {
    let x = x_minus();
    let b = x.base().clone();
    let same = pushforward_idx(&x, &FinFunctor::identity(b.clone()), PushoutBound::default()).unwrap();
    for o in b.objects() {
        assert_eq!(same.objset(o).len(), x.objset(o).len());
    }
    for u in b.morphisms() {
        assert_eq!(same.carrier(u).carrier().len(), x.carrier(u).carrier().len());
    }
    assert!(elements(&same).unwrap().lens.dom().num_morphisms() == 5);

    // Two points pushed along g: 1 -> C become two copies of the
    // representable at g(*), so each fibre over c has 2 |C(g*, c)| objects.
    let disc = arc(catalog::discrete(2));
    let dopf = dopf_lens(&common::to_terminal(&disc)).unwrap();
    let xd = fibres(&dopf);
    for (_, c) in catalog::all(2) {
        for g in FunctorSearch::new(dopf.cod(), &c).all() {
            let y = pushforward_idx(&xd, &g, PushoutBound::default()).unwrap();
            for o in c.objects() {
                assert_eq!(y.objset(o).len(), 2 * c.hom(g.ob(Obj(0)), o).len());
            }
        }
    }

    // Gluing the two ends of a parallel pair with one lifted arrow leaves a
    // free endomorphism.
    let l = parallel_over_two();
    let to_one = common::to_terminal(l.cod());
    match pushforward_idx(&fibres(&l), &to_one, PushoutBound::default()) {
        Err(Error::Undecided(_)) => {}
        other => panic!("expected Undecided, got {other:?}"),
    }
}

/// Lens morphisms from `l` to `m` over a fixed base functor `k`.
fn lens_morphisms_over(l: &DeltaLens, m: &DeltaLens, k: &FinFunctor) -> Vec<FinFunctor> {
    FunctorSearch::new(l.dom(), m.dom())
        .all()
        .into_iter()
        .filter(|h| {
            LensMorphism::new_unchecked(l.clone(), m.clone(), h.clone(), k.clone()).law_violations().is_ok()
        })
        .collect()
}

#[test]
fn pushforward_is_opcartesian() {
    let mut checked = 0;
    for l in tiny_lenses() {
        for (_, c) in catalog::all(2) {
            for g in FunctorSearch::new(l.cod(), &c).all() {
                let Ok(unit) = pushforward_lens(&l, &g, PushoutBound::default()) else { continue };
                assert!(unit.law_violations().is_ok());
                let y = pushforward_idx(&fibres(&l), &g, PushoutBound::default()).unwrap();
                let direct = fibres(&unit.target);
                for u in c.morphisms() {
                    assert_eq!(y.carrier(u).carrier().len(), direct.carrier(u).carrier().len());
                }
                let id_c = FinFunctor::identity(c.clone());
                for t in small_lenses(2).into_iter().filter(|t| *t.cod() == c).take(6) {
                    for h in lens_morphisms_over(&l, &t, &g) {
                        let h = LensMorphism::new(l.clone(), t.clone(), h, g.clone()).unwrap();
                        let mediating = lens_morphisms_over(&unit.target, &t, &id_c)
                            .into_iter()
                            .filter(|k| unit.h.then(k).unwrap() == h.h)
                            .count();
                        assert_eq!(mediating, 1);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 20, "{checked}");
}

#[test]
fn products_and_coproducts() {
    let x = x_minus();
    let two = x.base().clone();
    let t1 = terminal_idx(&arc(catalog::terminal()));
    let p = product_idx(&x, &t1);
    assert!(p.object.law_violations().is_ok());
    assert!(p.left.law_violations().is_ok() && p.right.law_violations().is_ok());
    assert!(p.left.is_invertible());

    let q = product_idx(&x, &x);
    for o in q.object.base().objects() {
        let (a, b) = (q.left.k.ob(o), q.right.k.ob(o));
        assert_eq!(q.object.objset(o).len(), x.objset(a).len() * x.objset(b).len());
    }
    assert!(q.object.law_violations().is_ok());

    let s = coproduct_idx(&x, &x);
    assert!(s.object.law_violations().is_ok());
    assert!(s.left.law_violations().is_ok() && s.right.law_violations().is_ok());
    assert_eq!(s.object.base().num_objects(), 4);

    let fp = fib_product_idx(&x, &x).unwrap();
    let fs = fib_coproduct_idx(&x, &x).unwrap();
    for o in two.objects() {
        assert_eq!(fp.object.objset(o).len(), x.objset(o).len().pow(2));
        assert_eq!(fs.object.objset(o).len(), 2 * x.objset(o).len());
    }
    assert!(fp.object.law_violations().is_ok() && fs.object.law_violations().is_ok());
    assert!(fp.left.law_violations().is_ok() && fs.right.law_violations().is_ok());

    let other = terminal_idx(&arc(catalog::chain(3)));
    assert!(matches!(fib_product_idx(&x, &other), Err(Error::Mismatch(_))));
}

#[test]
fn fibre_product_matches_the_lens_level_pullback() {
    for l in small_lenses(2) {
        let cone = pullback(l.functor(), l.functor()).unwrap();
        let (pl, pr, p) = (&cone.left, &cone.right, &cone.cat);
        let f = pl.then(l.functor()).unwrap();
        let direct = DeltaLens::new(f, |o, u| {
            let (w1, w2) = (l.lift(pl.ob(o), u), l.lift(pr.ob(o), u));
            p.mor(&pair(l.dom().mor_name(w1), l.dom().mor_name(w2))).unwrap()
        })
        .unwrap();
        let x = fibres(&l);
        let fp = fib_product_idx(&x, &x).unwrap();
        assert_eq!(fp.object.to_raw(), fibres(&direct).to_raw());
    }
}

/// Every indexed morphism `source -> target` over the identity of the base.
fn idx_morphisms(source: &IndexedSmf, target: &IndexedSmf) -> Vec<IdxMorphism> {
    let b = source.base().clone();
    let mut slots: Vec<(FinSet, FinSet)> = b.objects().map(|o| (source.objset(o).clone(), target.objset(o).clone())).collect();
    slots.extend(b.morphisms().map(|u| (source.carrier(u).carrier().clone(), target.carrier(u).carrier().clone())));
    let all_functions = |(d, c): &(FinSet, FinSet)| -> Vec<FinFunction> {
        let mut out = vec![Vec::new()];
        for _ in d.indices() {
            out = out.into_iter().flat_map(|m: Vec<usize>| c.indices().map(move |j| [m.clone(), vec![j]].concat())).collect();
        }
        out.into_iter().map(|m| FinFunction::new(d.clone(), c.clone(), m)).collect()
    };
    let choices: Vec<Vec<FinFunction>> = slots.iter().map(all_functions).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let fs: Vec<FinFunction> = pick.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let (t0, t1) = fs.split_at(b.num_objects());
        let m = IdxMorphism::new_unchecked(source.clone(), target.clone(), FinFunctor::identity(b.clone()), t0.to_vec(), t1.to_vec());
        if m.law_violations().is_ok() {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn fibrewise_universal_properties() {
    let two = arc(catalog::interval());
    let samples: Vec<IndexedSmf> = tiny_lenses()
        .into_iter()
        .filter(|l| **l.cod() == *two && l.dom().num_objects() <= 2)
        .map(|l| fibres(&l))
        .take(4)
        .collect();
    let mut checked = 0;
    for x in &samples {
        for y in &samples {
            let prod = fib_product_idx(x, y).unwrap();
            let sum = fib_coproduct_idx(x, y).unwrap();
            for t in &samples {
                for f in idx_morphisms(t, x) {
                    for g in idx_morphisms(t, y) {
                        let med = idx_morphisms(t, &prod.object)
                            .into_iter()
                            .filter(|m| m.then(&prod.left).unwrap() == f && m.then(&prod.right).unwrap() == g)
                            .count();
                        assert_eq!(med, 1);
                        checked += 1;
                    }
                }
                for f in idx_morphisms(x, t) {
                    for g in idx_morphisms(y, t) {
                        let med = idx_morphisms(&sum.object, t)
                            .into_iter()
                            .filter(|m| sum.left.then(m).unwrap() == f && sum.right.then(m).unwrap() == g)
                            .count();
                        assert_eq!(med, 1);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10, "{checked}");
}

#[test]
fn free_carriers_examples() {
    let one = arc(catalog::terminal());
    let fr = free_carriers(&one);
    assert_eq!(fr.objset(Obj(0)).elems(), &["id[*]".to_string()]);

    let two = arc(catalog::interval());
    let fr = free_carriers(&two);
    let (bot, top, u) = (two.obj("⊥").unwrap(), two.obj("⊤").unwrap(), two.mor("u").unwrap());
    assert_eq!(fr.objset(bot).len(), 1);
    assert_eq!(fr.objset(top).len(), 2);
    // The copy of Fr(⊥) plus the single tuple (id⊥, id⊥, u, id⊤).
    assert_eq!(fr.carrier(u).carrier().len(), 2);
    assert!(fr.carrier(u).carrier().contains("inr((id[⊥],id[⊥],u,id[⊤]))"));
    assert!(fr.law_violations().is_ok());

    // Independent count of the displayed set by brute force over 4-tuples.
    for (_, b) in catalog::all(3) {
        let fr = free_carriers(&b);
        assert!(fr.law_violations().is_ok());
        for u in b.morphisms() {
            let (x, y) = (b.src(u), b.tgt(u));
            let mut n = b.into_obj(x).len();
            for al in b.morphisms() {
                for be in b.morphisms() {
                    for ga in b.morphisms() {
                        for de in b.morphisms() {
                            let ok = b.tgt(al) == x
                                && b.src(be) == x
                                && b.compose(al, be) == Some(b.identity(b.src(al)))
                                && b.src(ga) == b.tgt(be)
                                && !b.is_identity(ga)
                                && b.src(de) == b.tgt(ga)
                                && b.tgt(de) == y
                                && b.compose(b.then(be, ga), de) == Some(u);
                            n += ok as usize;
                        }
                    }
                }
            }
            assert_eq!(fr.carrier(u).carrier().len(), n);
        }
    }
}

#[test]
fn wire_format_round_trip() {
    let raw = x_minus_raw();
    let json = serde_json::to_string(&raw).unwrap();
    let back: RawIndexedSmf = serde_json::from_str(&json).unwrap();
    let x = IndexedSmf::from_raw(&back).unwrap();
    assert_eq!(IndexedSmf::from_raw(&x.to_raw()).unwrap(), x);

    let mut missing = raw.clone();
    missing.mu.retain(|m| m.u != "u");
    assert!(validate_indexed_smf(&missing).mentions("μ table not total"));
    let mut dangling = raw;
    dangling.carriers.get_mut("u").unwrap().sigma.insert("p".into(), "nowhere".into());
    assert!(validate_indexed_smf(&dangling).has_malformed());
    let _: Arc<FinCat> = x.base().clone();
}
