//! Seeded random instances.
//!
//! Every generator takes an explicit RNG; [`GenConfig::rng`] derives one per
//! instance index so serial and parallel runs see the same instances.
//!
//! Categories are concrete: each object carries a small set, morphisms are
//! functions, and a random family of generating functions is closed under
//! composition. Lenses are sub-lenses of a lens whose domain has morphisms
//! `(a, a', d, u)` with `d` in a small monoid, built around a copresheaf of
//! chosen lifts, so DL1–DL3 hold by construction.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{assemble, FinCat, FinFunctor, FunctorSearch, Mor, Obj, UnionFind};
use crate::idx::{fibres, IndexedSmf};
use crate::lens::{projection_lens, DeltaLens};
use crate::names::id_of;
use crate::smult::{FinFunction, FinSet, Smf, SmultCell};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenConfig {
    pub seed: u64,
    pub max_objects: usize,
    /// Upper bound on every hom-set, identities included.
    pub max_hom: usize,
    pub max_fibre: usize,
    pub max_morphisms: usize,
    pub acyclic: bool,
    pub count: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, max_objects: 4, max_hom: 3, max_fibre: 3, max_morphisms: 20, acyclic: false, count: 100 }
    }
}

impl GenConfig {
    pub fn check(&self) -> Result<()> {
        let bounds = [self.max_objects, self.max_hom, self.max_fibre, self.max_morphisms, self.count];
        if bounds.contains(&0) {
            return Err(Error::Precondition("generator bounds must be positive".into()));
        }
        Ok(())
    }

    /// The RNG of instance `index`.
    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

type Func = Vec<usize>;

fn then(f: &Func, g: &Func) -> Func {
    f.iter().map(|&x| g[x]).collect()
}

fn random_func(rng: &mut impl Rng, dom: usize, cod: usize) -> Func {
    (0..dom).map(|_| rng.gen_range(0..cod)).collect()
}

/// A concrete category: objects with carrier sizes and morphisms as functions.
struct Concrete {
    sizes: Vec<usize>,
    /// `(src, tgt, function)`; the first `sizes.len()` entries are identities.
    mors: Vec<(usize, usize, Func)>,
}

impl Concrete {
    fn index(&self) -> HashMap<(usize, usize, Func), usize> {
        self.mors.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
    }

    /// Adds `m` and every composite, or leaves `self` unchanged and returns
    /// false when a bound would be exceeded.
    fn add_closed(&mut self, m: (usize, usize, Func), max_hom: usize, max_morphisms: usize) -> bool {
        let saved = self.mors.len();
        let mut index = self.index();
        if index.contains_key(&m) {
            return true;
        }
        index.insert(m.clone(), self.mors.len());
        self.mors.push(m);
        let mut hom: HashMap<(usize, usize), usize> = HashMap::new();
        for (s, t, _) in &self.mors {
            *hom.entry((*s, *t)).or_default() += 1;
        }
        if hom.values().any(|&k| k > max_hom) || self.mors.len() > max_morphisms {
            self.mors.truncate(saved);
            return false;
        }
        let mut frontier = saved;
        while frontier < self.mors.len() {
            let end = self.mors.len();
            let mut fresh = Vec::new();
            for i in 0..end {
                for j in 0..end {
                    if i < frontier && j < frontier {
                        continue;
                    }
                    let ((s, t, f), (s2, t2, g)) = (&self.mors[i], &self.mors[j]);
                    if t != s2 {
                        continue;
                    }
                    let c = (*s, *t2, then(f, g));
                    if !index.contains_key(&c) {
                        index.insert(c.clone(), usize::MAX);
                        fresh.push(c);
                    }
                }
            }
            frontier = end;
            for c in fresh {
                let n = hom.entry((c.0, c.1)).or_default();
                *n += 1;
                if *n > max_hom || self.mors.len() >= max_morphisms {
                    self.mors.truncate(saved);
                    return false;
                }
                self.mors.push(c);
            }
        }
        true
    }

    fn build(&self) -> FinCat {
        let n = self.sizes.len();
        let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let morphisms = self
            .mors
            .iter()
            .enumerate()
            .map(|(i, (s, t, _))| (if i < n { id_of(&objects[i]) } else { format!("m{}", i - n) }, *s, *t))
            .collect();
        let index = self.index();
        let identities: Vec<usize> = (0..n).collect();
        assemble(objects, morphisms, &identities, |i, j| {
            let ((s, _, f), (_, t, g)) = (&self.mors[i], &self.mors[j]);
            index[&(*s, *t, then(f, g))]
        })
        .expect("closed under composition")
        .cat
    }
}

fn random_concrete(rng: &mut impl Rng, cfg: &GenConfig) -> Concrete {
    let n = rng.gen_range(1..=cfg.max_objects);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let mors = sizes.iter().enumerate().map(|(i, &k)| (i, i, (0..k).collect())).collect();
    let mut c = Concrete { sizes, mors };
    let attempts = rng.gen_range(0..=2 * n);
    for _ in 0..attempts {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (i, j) = if cfg.acyclic {
            if i == j {
                continue;
            }
            (i.min(j), i.max(j))
        } else {
            (i, j)
        };
        let f = random_func(rng, c.sizes[i], c.sizes[j]);
        c.add_closed((i, j, f), cfg.max_hom, cfg.max_morphisms);
    }
    c
}

/// A random finite category within the bounds of `cfg`.
pub fn random_category(rng: &mut impl Rng, cfg: &GenConfig) -> FinCat {
    random_concrete(rng, cfg).build()
}

/// A random functor between the two categories, drawn from the first few
/// found by search. Constant functors always exist when `b` is nonempty.
pub fn random_functor(rng: &mut impl Rng, a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<FinFunctor> {
    let mut search = FunctorSearch::new(a, b);
    if let Some(o) = a.objects().next() {
        if b.num_objects() == 0 {
            return None;
        }
        search.fix_obj(o, Obj(rng.gen_range(0..b.num_objects())));
    }
    let found = search.run(Some(16));
    found.choose(rng).cloned().or_else(|| FunctorSearch::new(a, b).first())
}

/// A random functor between two random categories.
pub fn random_functor_pair(rng: &mut impl Rng, cfg: &GenConfig) -> FinFunctor {
    let a = Arc::new(random_category(rng, cfg));
    let b = Arc::new(random_category(rng, cfg));
    random_functor(rng, &a, &b).expect("target is nonempty")
}

/// Which family a random lens is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LensShape {
    General,
    /// Only the chosen lifts: a discrete opfibration.
    Dopf,
    /// A product projection.
    Projection,
}

/// Elements of the lift copresheaf: a concrete element with a copy tag, or a
/// morphism out of the representing object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum KElem {
    Conc(usize, usize, usize),
    Rep(usize),
}

/// A random lens of the given shape.
pub fn random_lens(rng: &mut impl Rng, cfg: &GenConfig, shape: LensShape) -> DeltaLens {
    if shape == LensShape::Projection {
        let small = GenConfig { max_objects: cfg.max_objects.min(3), ..cfg.clone() };
        let a = Arc::new(random_category(rng, &GenConfig { max_objects: cfg.max_fibre.min(3), ..small.clone() }));
        let b = Arc::new(random_category(rng, &small));
        return projection_lens(&a, &b);
    }
    let base = random_concrete(rng, cfg);
    lens_over(rng, cfg, shape, &base)
}

/// Two random lenses over the same random base.
pub fn random_lens_pair(rng: &mut impl Rng, cfg: &GenConfig) -> (DeltaLens, DeltaLens) {
    let base = random_concrete(rng, cfg);
    let first = lens_over(rng, cfg, LensShape::General, &base);
    let second = lens_over(rng, cfg, LensShape::General, &base);
    (first, second)
}

fn lens_over(rng: &mut impl Rng, cfg: &GenConfig, shape: LensShape, base: &Concrete) -> DeltaLens {
    let b = Arc::new(base.build());
    let n = base.sizes.len();
    let bidx = base.index();
    let mor_of: Vec<Mor> = (0..base.mors.len())
        .map(|i| b.mor(&if i < n { id_of(&format!("x{i}")) } else { format!("m{}", i - n) }).expect("built morphism"))
        .collect();
    let local_of: HashMap<Mor, usize> = mor_of.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    // The lift copresheaf K as a random subfunctor of S × copies ⊔ B(c, -).
    let copies = rng.gen_range(1..=2);
    let rep = rng.gen_bool(0.3).then(|| rng.gen_range(0..n));
    let act = |e: &KElem, u: usize| -> KElem {
        let (s, _, f) = &base.mors[u];
        match *e {
            KElem::Conc(x, el, k) => {
                debug_assert_eq!(x, *s);
                KElem::Conc(base.mors[u].1, f[el], k)
            }
            KElem::Rep(m) => {
                let (ms, _, mf) = &base.mors[m];
                let c = (*ms, base.mors[u].1, then(mf, f));
                KElem::Rep(bidx[&c])
            }
        }
    };
    let over = |e: &KElem| match *e {
        KElem::Conc(x, _, _) => x,
        KElem::Rep(m) => base.mors[m].1,
    };
    let mut seeds: Vec<KElem> = Vec::new();
    for x in 0..n {
        for el in 0..base.sizes[x] {
            for k in 0..copies {
                if rng.gen_bool(0.5) {
                    seeds.push(KElem::Conc(x, el, k));
                }
            }
        }
    }
    if let Some(c) = rep {
        seeds.push(KElem::Rep(c));
    }
    let mut k_elems: Vec<KElem> = Vec::new();
    let mut k_index: HashMap<KElem, usize> = HashMap::new();
    let mut stack = seeds;
    while let Some(e) = stack.pop() {
        if k_index.contains_key(&e) {
            continue;
        }
        let x = over(&e);
        let fibre = k_elems.iter().filter(|f| over(f) == x).count();
        if fibre >= cfg.max_fibre {
            // Drop the whole orbit rather than break functoriality.
            continue;
        }
        k_index.insert(e.clone(), k_elems.len());
        k_elems.push(e.clone());
        for u in 0..base.mors.len() {
            if base.mors[u].0 == x {
                stack.push(act(&e, u));
            }
        }
    }
    // Orbits cut short by the fibre bound are removed until K is closed.
    loop {
        let bad: Vec<usize> = (0..k_elems.len())
            .filter(|&i| {
                (0..base.mors.len())
                    .any(|u| base.mors[u].0 == over(&k_elems[i]) && !k_index.contains_key(&act(&k_elems[i], u)))
            })
            .collect();
        if bad.is_empty() {
            break;
        }
        let keep: Vec<KElem> = (0..k_elems.len()).filter(|i| !bad.contains(i)).map(|i| k_elems[i].clone()).collect();
        k_elems = keep;
        k_index = k_elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    }

    // A small monoid of endofunctions on two points.
    let mut monoid: Vec<Func> = vec![vec![0, 1]];
    if shape == LensShape::General && rng.gen_bool(0.5) {
        let g = random_func(rng, 2, 2);
        let mut cur = g.clone();
        while !monoid.contains(&cur) {
            monoid.push(cur.clone());
            cur = then(&cur, &g);
        }
    }
    let d_index: HashMap<Func, usize> = monoid.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();

    type AMor = (usize, usize, usize, usize);
    let lift = |a: usize, u: usize| -> AMor { (a, k_index[&act(&k_elems[a], u)], 0, u) };
    let mut a_mors: Vec<AMor> = Vec::new();
    let mut a_index: HashMap<AMor, usize> = HashMap::new();
    for a in 0..k_elems.len() {
        let x = over(&k_elems[a]);
        let m = lift(a, x);
        a_index.insert(m, a_mors.len());
        a_mors.push(m);
    }
    for a in 0..k_elems.len() {
        for u in 0..base.mors.len() {
            if base.mors[u].0 == over(&k_elems[a]) && u >= n {
                let m = lift(a, u);
                if !a_index.contains_key(&m) {
                    a_index.insert(m, a_mors.len());
                    a_mors.push(m);
                }
            }
        }
    }
    let compose_a = |p: &AMor, q: &AMor| -> AMor {
        let (pu, qu) = (&base.mors[p.3], &base.mors[q.3]);
        let c = (pu.0, qu.1, then(&pu.2, &qu.2));
        (p.0, q.1, d_index[&then(&monoid[p.2], &monoid[q.2])], bidx[&c])
    };
    if shape == LensShape::General && !k_elems.is_empty() {
        let cap = cfg.max_morphisms.max(a_mors.len()) * 2;
        let extras = if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..=4) };
        let mut added_extras = 0;
        for _ in 0..extras * 4 {
            if added_extras == extras {
                break;
            }
            let a = rng.gen_range(0..k_elems.len());
            let x = over(&k_elems[a]);
            let us: Vec<usize> = (0..base.mors.len()).filter(|&u| base.mors[u].0 == x).collect();
            let Some(&u) = us.choose(rng) else { continue };
            let ends: Vec<usize> = (0..k_elems.len()).filter(|&e| over(&k_elems[e]) == base.mors[u].1).collect();
            let Some(&a2) = ends.choose(rng) else { continue };
            let extra = (a, a2, rng.gen_range(0..monoid.len()), u);
            let saved = a_mors.len();
            let mut added = vec![extra];
            let mut ok = true;
            while let Some(m) = added.pop() {
                if a_index.contains_key(&m) {
                    continue;
                }
                if a_mors.len() >= cap {
                    ok = false;
                    break;
                }
                a_index.insert(m, a_mors.len());
                a_mors.push(m);
                for i in 0..a_mors.len() {
                    let p = a_mors[i];
                    if p.1 == m.0 {
                        added.push(compose_a(&p, &m));
                    }
                    if m.1 == p.0 {
                        added.push(compose_a(&m, &p));
                    }
                }
            }
            if !ok {
                for m in a_mors.drain(saved..) {
                    a_index.remove(&m);
                }
            } else if a_mors.len() > saved {
                added_extras += 1;
            }
        }
    }

    let objects: Vec<String> = (0..k_elems.len()).map(|i| format!("a{i}")).collect();
    let morphisms: Vec<(String, usize, usize)> = a_mors
        .iter()
        .enumerate()
        .map(|(i, m)| (if i < k_elems.len() { id_of(&objects[i]) } else { format!("w{}", i - k_elems.len()) }, m.0, m.1))
        .collect();
    let identities: Vec<usize> = (0..k_elems.len()).collect();
    let asm = assemble(objects, morphisms, &identities, |i, j| a_index[&compose_a(&a_mors[i], &a_mors[j])])
        .expect("closed under composition");
    let a = Arc::new(asm.cat);
    let mut obj_map = vec![Obj(0); a.num_objects()];
    for (i, e) in k_elems.iter().enumerate() {
        obj_map[asm.obj_of[i].0] = b.obj(&format!("x{}", over(e))).expect("object");
    }
    let mut mor_map = vec![Mor(0); a.num_morphisms()];
    for (i, m) in a_mors.iter().enumerate() {
        mor_map[asm.mor_of[i].0] = mor_of[m.3];
    }
    let f = FinFunctor::new_unchecked(a.clone(), b.clone(), obj_map, mor_map);
    let local_obj: HashMap<Obj, usize> = asm.obj_of.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    DeltaLens::new_unchecked(f, |o, u| asm.mor_of[a_index[&lift(local_obj[&o], local_of[&u])]])
}

/// Random valid indexed data, as the fibres of a random lens.
pub fn random_idx(rng: &mut impl Rng, cfg: &GenConfig, shape: LensShape) -> IndexedSmf {
    fibres(&random_lens(rng, cfg, shape))
}

fn named(prefix: &str, n: usize) -> FinSet {
    FinSet::new((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct")
}

/// A random split multivalued function between random sets of size at most
/// `max`.
pub fn random_smf(rng: &mut impl Rng, max: usize) -> Smf {
    let (na, nb) = (rng.gen_range(0..=max), rng.gen_range(1..=max.max(1)));
    random_smf_between(rng, &named("a", na), &named("b", nb), max)
}

/// A random split multivalued function `src ⇸ tgt`; `tgt` must be nonempty
/// when `src` is.
pub fn random_smf_between(rng: &mut impl Rng, src: &FinSet, tgt: &FinSet, max_extra: usize) -> Smf {
    let extra = if src.is_empty() || tgt.is_empty() { 0 } else { rng.gen_range(0..=max_extra) };
    let n = src.len() + extra;
    let carrier = named("x", n);
    let s: Func = (0..n).map(|i| if i < src.len() { i } else { rng.gen_range(0..src.len()) }).collect();
    let t = random_func(rng, n, tgt.len());
    Smf::new_unchecked(
        FinFunction::new(carrier.clone(), src.clone(), s),
        FinFunction::new(carrier.clone(), tgt.clone(), t),
        FinFunction::new(src.clone(), carrier, (0..src.len()).collect()),
    )
}

/// A random cell with the given top and, optionally, the given left tight
/// map; the right map and the bottom are built so that the cell exists.
pub fn random_cell_below(rng: &mut impl Rng, top: &Smf, left: Option<&FinFunction>, tag: &str) -> SmultCell {
    let left = match left {
        Some(f) => f.clone(),
        None => {
            let nc = rng.gen_range(usize::from(!top.src().is_empty())..=top.src().len() + 1);
            FinFunction::new(top.src().clone(), named(&format!("{tag}c"), nc), random_func(rng, top.src().len(), nc))
        }
    };
    let (a, b, c) = (top.src(), top.tgt(), left.cod().clone());
    // Right map: a quotient of B forced by the section, plus random merges.
    let mut uf = UnionFind::new(b.len());
    let mut first: HashMap<usize, usize> = HashMap::new();
    for x in a.indices() {
        let tb = top.t.at(top.sigma.at(x));
        if let Some(&other) = first.get(&left.at(x)) {
            uf.union(tb, other);
        } else {
            first.insert(left.at(x), tb);
        }
    }
    if b.len() > 1 && rng.gen_bool(0.3) {
        uf.union(rng.gen_range(0..b.len()), rng.gen_range(0..b.len()));
    }
    let mut class_of: HashMap<usize, usize> = HashMap::new();
    let mut right_map = Vec::with_capacity(b.len());
    for y in b.indices() {
        let r = uf.find(y);
        let next = class_of.len();
        right_map.push(*class_of.entry(r).or_insert(next));
    }
    let mut nd = class_of.len() + rng.gen_range(0..=1);
    if nd == 0 && !c.is_empty() {
        nd = 1;
    }
    let d = named(&format!("{tag}d"), nd);
    let right = FinFunction::new(b.clone(), d.clone(), right_map);

    // Bottom carrier: sections of C first, then images of the other elements.
    let mut s_n: Func = c.indices().collect();
    let mut t_n: Func = Vec::new();
    for z in c.indices() {
        match first.get(&z) {
            Some(&tb) => t_n.push(right.at(tb)),
            None => t_n.push(rng.gen_range(0..nd)),
        }
    }
    let in_section: HashMap<usize, usize> = a.indices().map(|x| (top.sigma.at(x), x)).collect();
    let mut alpha = Vec::with_capacity(top.carrier().len());
    for e in top.carrier().indices() {
        if let Some(&x) = in_section.get(&e) {
            alpha.push(left.at(x));
            continue;
        }
        let (s, t) = (left.at(top.s.at(e)), right.at(top.t.at(e)));
        let reuse = (0..s_n.len()).filter(|&i| s_n[i] == s && t_n[i] == t).collect::<Vec<_>>();
        match reuse.choose(rng) {
            Some(&i) if rng.gen_bool(0.4) => alpha.push(i),
            _ => {
                alpha.push(s_n.len());
                s_n.push(s);
                t_n.push(t);
            }
        }
    }
    if !c.is_empty() && nd > 0 {
        for _ in 0..rng.gen_range(0..=1) {
            s_n.push(rng.gen_range(0..c.len()));
            t_n.push(rng.gen_range(0..nd));
        }
    }
    let carrier = named(&format!("{tag}y"), s_n.len());
    let bottom = Smf::new_unchecked(
        FinFunction::new(carrier.clone(), c.clone(), s_n),
        FinFunction::new(carrier.clone(), d, t_n),
        FinFunction::new(c.clone(), carrier.clone(), c.indices().collect()),
    );
    let alpha = FinFunction::new(top.carrier().clone(), carrier, alpha);
    SmultCell { top: top.clone(), bottom, left, right, alpha }
}

/// A random cell with a random top.
pub fn random_cell(rng: &mut impl Rng, max: usize) -> SmultCell {
    let top = random_smf(rng, max);
    random_cell_below(rng, &top, None, "")
}

/// A 2×2 grid `[[c11, c12], [c21, c22]]` of composable cells.
pub fn random_grid(rng: &mut impl Rng, max: usize) -> [[SmultCell; 2]; 2] {
    let m1 = random_smf(rng, max);
    let ne = rng.gen_range(1..=max.max(1));
    let m2 = random_smf_between(rng, m1.tgt(), &named("e", ne), max);
    let c11 = random_cell_below(rng, &m1, None, "p");
    let c12 = random_cell_below(rng, &m2, Some(&c11.right), "q");
    let c21 = random_cell_below(rng, &c11.bottom, None, "r");
    let c22 = random_cell_below(rng, &c12.bottom, Some(&c21.right), "s");
    [[c11, c12], [c21, c22]]
}

/// A composable sequence of `n` random split multivalued functions.
pub fn random_smf_path(rng: &mut impl Rng, n: usize, max: usize) -> Vec<Smf> {
    let mut out = vec![random_smf(rng, max)];
    for i in 1..n {
        let nt = rng.gen_range(1..=max.max(1));
        let tgt = named(&format!("o{i}_"), nt);
        let next = random_smf_between(rng, out[i - 1].tgt(), &tgt, max);
        out.push(next);
    }
    out
}

/// A single-point mutation of indexed wire data: one μ result, σ value or
/// target leg is redirected to another element of the same set.
pub fn mutate_idx(rng: &mut impl Rng, x: &IndexedSmf) -> Option<crate::idx::RawIndexedSmf> {
    let mut raw = x.to_raw();
    let mut sites: Vec<(u8, usize, usize)> = Vec::new();
    for (i, m) in raw.mu.iter().enumerate() {
        for j in 0..m.table.len() {
            sites.push((0, i, j));
        }
    }
    let keys: Vec<String> = raw.carriers.keys().cloned().collect();
    for (i, k) in keys.iter().enumerate() {
        let c = &raw.carriers[k];
        for j in 0..c.sigma.len() {
            sites.push((1, i, j));
        }
        for j in 0..c.elems.len() {
            sites.push((2, i, j));
        }
    }
    let targets_of = |raw: &crate::idx::RawIndexedSmf, u: &str| -> String {
        raw.base.morphisms.iter().find(|m| m.id == u).map(|m| m.tgt.clone()).expect("morphism")
    };
    for _ in 0..8 {
        let &(kind, i, j) = sites.choose(rng)?;
        match kind {
            0 => {
                let m = &raw.mu[i];
                let vu = raw.base.compose.iter().find(|c| c.first == m.u && c.then == m.v).expect("composable").result.clone();
                let pool = &raw.carriers[&vu].elems;
                let cur = &m.table[j].result;
                let others: Vec<&String> = pool.iter().filter(|e| *e != cur).collect();
                if let Some(&o) = others.choose(rng) {
                    let o = o.clone();
                    raw.mu[i].table[j].result = o;
                    return Some(raw);
                }
            }
            1 => {
                let c = &raw.carriers[&keys[i]];
                let (key, cur) = c.sigma.iter().nth(j).map(|(k, v)| (k.clone(), v.clone())).expect("entry");
                let others: Vec<String> = c.elems.iter().filter(|e| **e != cur).cloned().collect();
                if let Some(o) = others.choose(rng) {
                    raw.carriers.get_mut(&keys[i]).expect("carrier").sigma.insert(key, o.clone());
                    return Some(raw);
                }
            }
            _ => {
                let y = targets_of(&raw, &keys[i]);
                let c = &raw.carriers[&keys[i]];
                let e = c.elems[j].clone();
                let cur = c.t[&e].clone();
                let others: Vec<String> = raw.objsets[&y].iter().filter(|o| **o != cur).cloned().collect();
                if let Some(o) = others.choose(rng) {
                    raw.carriers.get_mut(&keys[i]).expect("carrier").t.insert(e, o.clone());
                    return Some(raw);
                }
            }
        }
    }
    None
}
