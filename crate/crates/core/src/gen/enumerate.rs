//! Exhaustive enumeration of lens structures on small functors.

use std::collections::HashMap;

use crate::fincat::{FinFunctor, Mor, Obj};
use crate::lens::DeltaLens;

/// Every lens structure on `f`, up to `limit` of them. Lifts of identities
/// are fixed to identities and other keys range over morphisms satisfying
/// DL1; complete tables are kept when DL3 holds.
pub fn lens_structures(f: &FinFunctor, limit: Option<usize>) -> Vec<DeltaLens> {
    let (a, b) = (f.dom(), f.cod());
    let mut keys: Vec<(Obj, Mor, Vec<Mor>)> = Vec::new();
    for o in a.objects() {
        for &u in b.out_of(f.ob(o)) {
            let cands: Vec<Mor> = if b.is_identity(u) {
                vec![a.identity(o)]
            } else {
                a.out_of(o).iter().copied().filter(|&w| f.mor(w) == u).collect()
            };
            if cands.is_empty() {
                return Vec::new();
            }
            keys.push((o, u, cands));
        }
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; keys.len()];
    loop {
        let table: HashMap<(Obj, Mor), Mor> = keys.iter().zip(&choice).map(|((o, u, c), &i)| ((*o, *u), c[i])).collect();
        let l = DeltaLens::new_unchecked(f.clone(), |o, u| table[&(o, u)]);
        if l.law_violations().is_ok() {
            out.push(l);
            if limit.is_some_and(|n| out.len() >= n) {
                return out;
            }
        }
        // Odometer step.
        let mut k = 0;
        loop {
            if k == keys.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < keys[k].2.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
