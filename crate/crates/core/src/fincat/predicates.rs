//! Property tests on functors, each decided by enumeration.

use std::collections::HashMap;

use super::category::{FinCat, Mor};
use super::functor::FinFunctor;

impl FinFunctor {
    /// Domain and codomain share their object identifiers and the object map
    /// is the identity on them.
    pub fn is_identity_on_objects(&self) -> bool {
        let (d, c) = (self.dom(), self.cod());
        d.num_objects() == c.num_objects()
            && d.objects().all(|o| d.obj_name(o) == c.obj_name(self.ob(o)))
    }

    /// Every `(a, u: F a -> b)` has exactly one `w` out of `a` with `F w = u`.
    pub fn is_discrete_opfibration(&self) -> bool {
        let (d, c) = (self.dom(), self.cod());
        d.objects().all(|a| {
            let mut count: HashMap<Mor, usize> = HashMap::new();
            for &w in d.out_of(a) {
                *count.entry(self.mor(w)).or_default() += 1;
            }
            let outs = c.out_of(self.ob(a));
            count.len() == outs.len() && outs.iter().all(|u| count.get(u) == Some(&1))
        })
    }

    /// Every `(a', u: b -> F a')` has exactly one `w` into `a'` with `F w = u`.
    pub fn is_discrete_fibration(&self) -> bool {
        let (d, c) = (self.dom(), self.cod());
        d.objects().all(|a| {
            let mut count: HashMap<Mor, usize> = HashMap::new();
            for &w in d.into_obj(a) {
                *count.entry(self.mor(w)).or_default() += 1;
            }
            let ins = c.into_obj(self.ob(a));
            count.len() == ins.len() && ins.iter().all(|u| count.get(u) == Some(&1))
        })
    }

    pub fn is_faithful(&self) -> bool {
        let d = self.dom();
        d.objects().all(|a| {
            d.objects().all(|b| {
                let mut seen: Vec<Mor> = d.hom(a, b).iter().map(|&w| self.mor(w)).collect();
                seen.sort();
                seen.windows(2).all(|p| p[0] != p[1])
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let (d, c) = (self.dom(), self.cod());
        d.objects().all(|a| {
            d.objects().all(|b| {
                let image: std::collections::HashSet<Mor> = d.hom(a, b).iter().map(|&w| self.mor(w)).collect();
                image.len() == c.hom(self.ob(a), self.ob(b)).len()
            })
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        let (d, c) = (self.dom(), self.cod());
        self.is_faithful()
            && d.objects()
                .all(|a| d.objects().all(|b| d.hom(a, b).len() == c.hom(self.ob(a), self.ob(b)).len()))
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut images: Vec<_> = self.obj_map().to_vec();
        images.sort();
        images.windows(2).all(|p| p[0] != p[1])
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut hit = vec![false; self.cod().num_objects()];
        for o in self.obj_map() {
            hit[o.0] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective_on_objects(&self) -> bool {
        self.is_injective_on_objects() && self.is_surjective_on_objects()
    }

    pub fn is_bijective_on_morphisms(&self) -> bool {
        let mut images: Vec<_> = self.mor_map().to_vec();
        images.sort();
        images.dedup();
        images.len() == self.dom().num_morphisms() && images.len() == self.cod().num_morphisms()
    }

    /// An isomorphism of categories.
    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective_on_objects() && self.is_bijective_on_morphisms()
    }
}

/// True when every object has exactly the identity as endomorphism and no
/// other morphisms exist.
pub fn is_discrete(cat: &FinCat) -> bool {
    cat.num_morphisms() == cat.num_objects()
}
