use serde::{Deserialize, Serialize};

use super::delta::DeltaLens;
use super::diagram::hat_lambda;
use std::sync::Arc;

use crate::fincat::{decalage, decalage_map, product, pullback, FinCat};

/// How [`is_split_opfibration`] decides the question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpfibMode {
    /// Every chosen lift is opcartesian.
    Opcartesian,
    /// Every chosen lift is weakly opcartesian.
    WeaklyOpcartesian,
    /// `Dec(f) ∘ π₂: Λ ×_A Dec(A) -> Dec(B)` is a discrete opfibration.
    Decalage,
}

impl OpfibMode {
    pub const ALL: [OpfibMode; 3] = [OpfibMode::Opcartesian, OpfibMode::WeaklyOpcartesian, OpfibMode::Decalage];
}

/// The projection `A × B -> B` lifting `u` at `(a, b)` to `(1_a, u)`.
pub fn projection_lens(a: &Arc<FinCat>, b: &Arc<FinCat>) -> DeltaLens {
    let cone = product(a, b);
    let (pa, pc) = (&cone.left, &cone.cat);
    DeltaLens::new_unchecked(cone.right.clone(), |o, u| {
        let x = pa.ob(o);
        let w = pc.out_of(o).iter().copied().find(|&w| pa.mor(w) == a.identity(x) && cone.right.mor(w) == u);
        w.expect("product has every pair")
    })
}

/// Whether the chosen lifts of a lens make its functor a split opfibration.
pub fn is_split_opfibration(l: &DeltaLens, mode: OpfibMode) -> bool {
    match mode {
        OpfibMode::Opcartesian => opcartesian(l),
        OpfibMode::WeaklyOpcartesian => weakly_opcartesian(l),
        OpfibMode::Decalage => by_decalage(l),
    }
}

fn opcartesian(l: &DeltaLens) -> bool {
    let (a, b, f) = (l.dom(), l.cod(), l.functor());
    l.lift_entries().into_iter().all(|(o, u, phi)| {
        let mid = a.tgt(phi);
        a.out_of(o).iter().all(|&w| {
            b.out_of(b.tgt(u)).iter().filter(|&&v| b.then(u, v) == f.mor(w)).all(|&v| {
                let hits = a.hom(mid, a.tgt(w)).iter().filter(|&&w2| a.then(phi, w2) == w && f.mor(w2) == v).count();
                hits == 1
            })
        })
    })
}

fn weakly_opcartesian(l: &DeltaLens) -> bool {
    let (a, b, f) = (l.dom(), l.cod(), l.functor());
    a.morphisms().all(|w| {
        let phi = l.lift(a.src(w), f.mor(w));
        let hits = a
            .hom(a.tgt(phi), a.tgt(w))
            .iter()
            .filter(|&&w2| a.then(phi, w2) == w && b.is_identity(f.mor(w2)))
            .count();
        hits == 1
    })
}

fn by_decalage(l: &DeltaLens) -> bool {
    let d = hat_lambda(l);
    let dec_a = decalage(l.dom());
    let dec_b = decalage(l.cod());
    let cone = pullback(d.p(), &dec_a.counit).expect("same codomain");
    let dec_f = decalage_map(l.functor(), &dec_a, &dec_b);
    cone.right.then(&dec_f).expect("composable").is_discrete_opfibration()
}
