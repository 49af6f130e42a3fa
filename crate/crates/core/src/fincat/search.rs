use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use super::functor::FinFunctor;

/// Exhaustive search for functors between two finite categories, optionally
/// with some images pinned in advance and a filter on morphism images.
pub struct FunctorSearch<'a> {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    fixed_obj: Vec<Option<Obj>>,
    fixed_mor: Vec<Option<Mor>>,
    allowed: Option<Box<dyn Fn(Mor, Mor) -> bool + 'a>>,
}

struct State {
    obj: Vec<Option<Obj>>,
    mor: Vec<Option<Mor>>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: &Arc<FinCat>, cod: &Arc<FinCat>) -> Self {
        FunctorSearch {
            dom: dom.clone(),
            cod: cod.clone(),
            fixed_obj: vec![None; dom.num_objects()],
            fixed_mor: vec![None; dom.num_morphisms()],
            allowed: None,
        }
    }

    /// Pins an object image. Returns false on a conflicting earlier pin.
    pub fn fix_obj(&mut self, o: Obj, image: Obj) -> bool {
        match self.fixed_obj[o.0] {
            Some(prev) => prev == image,
            None => {
                self.fixed_obj[o.0] = Some(image);
                true
            }
        }
    }

    /// Pins a morphism image and its endpoints.
    pub fn fix_mor(&mut self, m: Mor, image: Mor) -> bool {
        let (s, t) = (self.dom.src(m), self.dom.tgt(m));
        let (is, it) = (self.cod.src(image), self.cod.tgt(image));
        let ok = match self.fixed_mor[m.0] {
            Some(prev) => prev == image,
            None => {
                self.fixed_mor[m.0] = Some(image);
                true
            }
        };
        ok && self.fix_obj(s, is) && self.fix_obj(t, it)
    }

    /// Restricts each morphism `m` to images `n` with `allowed(m, n)`.
    pub fn allow(mut self, allowed: impl Fn(Mor, Mor) -> bool + 'a) -> Self {
        self.allowed = Some(Box::new(allowed));
        self
    }

    pub fn first(&self) -> Option<FinFunctor> {
        self.run(Some(1)).into_iter().next()
    }

    pub fn all(&self) -> Vec<FinFunctor> {
        self.run(None)
    }

    pub fn run(&self, limit: Option<usize>) -> Vec<FinFunctor> {
        let d = &*self.dom;
        let mut triples: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); d.num_morphisms()];
        for (f, g) in d.composable_pairs() {
            let h = d.then(f, g);
            triples[f.0].push((f, g, h));
            if g != f {
                triples[g.0].push((f, g, h));
            }
            if h != f && h != g {
                triples[h.0].push((f, g, h));
            }
        }
        let mut state = State { obj: vec![None; d.num_objects()], mor: vec![None; d.num_morphisms()] };
        let mut out = Vec::new();
        self.assign_obj(0, &mut state, &triples, limit, &mut out);
        out
    }

    fn assign_obj(
        &self,
        k: usize,
        st: &mut State,
        triples: &[Vec<(Mor, Mor, Mor)>],
        limit: Option<usize>,
        out: &mut Vec<FinFunctor>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        if k == self.dom.num_objects() {
            // Identities are forced once objects are placed.
            for o in self.dom.objects() {
                let id = self.dom.identity(o);
                let img = self.cod.identity(st.obj[o.0].expect("assigned"));
                if self.fixed_mor[id.0].is_some_and(|m| m != img) || !self.permits(id, img) {
                    return;
                }
                st.mor[id.0] = Some(img);
            }
            self.assign_mor(0, st, triples, limit, out);
            for o in self.dom.objects() {
                st.mor[self.dom.identity(o).0] = None;
            }
            return;
        }
        let candidates: Vec<Obj> = match self.fixed_obj[k] {
            Some(o) => vec![o],
            None => self.cod.objects().collect(),
        };
        for c in candidates {
            st.obj[k] = Some(c);
            self.assign_obj(k + 1, st, triples, limit, out);
        }
        st.obj[k] = None;
    }

    fn permits(&self, m: Mor, n: Mor) -> bool {
        self.allowed.as_ref().is_none_or(|f| f(m, n))
    }

    fn assign_mor(
        &self,
        k: usize,
        st: &mut State,
        triples: &[Vec<(Mor, Mor, Mor)>],
        limit: Option<usize>,
        out: &mut Vec<FinFunctor>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let d = &*self.dom;
        if k == d.num_morphisms() {
            let obj = st.obj.iter().map(|o| o.expect("assigned")).collect();
            let mor = st.mor.iter().map(|m| m.expect("assigned")).collect();
            out.push(FinFunctor::new_unchecked(self.dom.clone(), self.cod.clone(), obj, mor));
            return;
        }
        let m = Mor(k);
        if d.is_identity(m) {
            self.assign_mor(k + 1, st, triples, limit, out);
            return;
        }
        let (s, t) = (st.obj[d.src(m).0].expect("assigned"), st.obj[d.tgt(m).0].expect("assigned"));
        let candidates: Vec<Mor> = match self.fixed_mor[k] {
            Some(n) if self.cod.src(n) == s && self.cod.tgt(n) == t => vec![n],
            Some(_) => return,
            None => self.cod.hom(s, t).to_vec(),
        };
        for n in candidates {
            if !self.permits(m, n) {
                continue;
            }
            st.mor[k] = Some(n);
            let consistent = triples[k].iter().all(|&(f, g, h)| match (st.mor[f.0], st.mor[g.0], st.mor[h.0]) {
                (Some(a), Some(b), Some(c)) => self.cod.compose(a, b) == Some(c),
                _ => true,
            });
            if consistent {
                self.assign_mor(k + 1, st, triples, limit, out);
            }
        }
        st.mor[k] = None;
    }
}
