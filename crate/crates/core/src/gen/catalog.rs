//! Small named categories used as fixtures and as targets of exhaustive
//! searches.

use std::sync::Arc;

use crate::fincat::{assemble, FinCat};
use crate::names::{id_of, pair};

fn build(objects: &[&str], arrows: &[(&str, usize, usize)], compose: impl Fn(usize, usize) -> usize) -> FinCat {
    let n = objects.len();
    let mut morphisms: Vec<(String, usize, usize)> =
        objects.iter().enumerate().map(|(i, o)| (id_of(o), i, i)).collect();
    morphisms.extend(arrows.iter().map(|&(name, s, t)| (name.to_string(), s, t)));
    let identities: Vec<usize> = (0..n).collect();
    // Identities are handled here so `compose` only sees non-identity pairs.
    assemble(objects.iter().map(|s| s.to_string()).collect(), morphisms, &identities, |f, g| {
        if f < n {
            g
        } else if g < n {
            f
        } else {
            n + compose(f - n, g - n)
        }
    })
    .expect("catalog categories are well formed")
    .cat
}

fn no_composites(f: usize, g: usize) -> usize {
    panic!("unexpected composable pair {f}, {g}")
}

/// The empty category.
pub fn empty() -> FinCat {
    FinCat::empty()
}

/// The terminal category `𝟙` with object `*`.
pub fn terminal() -> FinCat {
    build(&["*"], &[], no_composites)
}

/// The interval `𝟚`: `u: ⊥ -> ⊤`.
pub fn interval() -> FinCat {
    build(&["⊥", "⊤"], &[("u", 0, 1)], no_composites)
}

/// The discrete category on `x0, …, x(n-1)`.
pub fn discrete(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    build(&refs, &[], no_composites)
}

/// `w1: a0 -> a1`, `w2: a0 -> a2`.
pub fn v_shape() -> FinCat {
    build(&["a0", "a1", "a2"], &[("w1", 0, 1), ("w2", 0, 2)], no_composites)
}

/// `w1: a1 -> a0`, `w2: a2 -> a0`.
pub fn cospan() -> FinCat {
    build(&["a0", "a1", "a2"], &[("w1", 1, 0), ("w2", 2, 0)], no_composites)
}

/// The linear order `c0 < c1 < … < c(n-1)`, with morphisms named `(ci,cj)`.
pub fn chain(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            arrows.push((pair(&names[i], &names[j]), i, j));
        }
    }
    let index = |i: usize, j: usize| arrows.iter().position(|a| a.1 == i && a.2 == j).expect("arrow");
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arrow_refs: Vec<(&str, usize, usize)> = arrows.iter().map(|(s, i, j)| (s.as_str(), *i, *j)).collect();
    build(&refs, &arrow_refs, |f, g| index(arrows[f].1, arrows[g].2))
}

/// Two parallel morphisms `f, g: x -> y`.
pub fn parallel_pair() -> FinCat {
    build(&["x", "y"], &[("f", 0, 1), ("g", 0, 1)], no_composites)
}

/// The cyclic group of order `n` on one object, generated by `g`.
pub fn cyclic(n: usize) -> FinCat {
    assert!(n >= 1);
    let power = |k: usize| match k {
        0 => id_of("*"),
        1 => "g".to_string(),
        _ => format!("g^{k}"),
    };
    assemble(vec!["*".to_string()], (0..n).map(|k| (power(k), 0, 0)).collect(), &[0], |f, g| (f + g) % n)
        .expect("cyclic group")
        .cat
}

/// The monoid `{1, e}` with `e ∘ e = e`, on one object.
pub fn idempotent() -> FinCat {
    build(&["*"], &[("e", 0, 0)], |_, _| 0)
}

/// Every catalog category with at most `max_objects` objects.
pub fn all(max_objects: usize) -> Vec<(&'static str, Arc<FinCat>)> {
    let entries: Vec<(&'static str, FinCat)> = vec![
        ("empty", empty()),
        ("terminal", terminal()),
        ("interval", interval()),
        ("discrete2", discrete(2)),
        ("discrete3", discrete(3)),
        ("v_shape", v_shape()),
        ("cospan", cospan()),
        ("chain3", chain(3)),
        ("parallel_pair", parallel_pair()),
        ("cyclic2", cyclic(2)),
        ("cyclic3", cyclic(3)),
        ("idempotent", idempotent()),
    ];
    entries.into_iter().filter(|(_, c)| c.num_objects() <= max_objects).map(|(n, c)| (n, Arc::new(c))).collect()
}
