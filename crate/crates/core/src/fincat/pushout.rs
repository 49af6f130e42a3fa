//! Pushouts of finite categories along identity-on-objects functors.
//!
//! The pushout of `p: X -> A` (identity on objects) and `i: X -> Y` has the
//! objects of `Y` and is presented by generators (the non-identity morphisms
//! of `A` and `Y`) and relations (both composition tables and the gluing
//! `p(w) = i(w)`). The presentation is enumerated as a coset table in the
//! style of Todd and Coxeter: one node per morphism, one root per object.
//! Enumeration may not terminate, so it is cut off at a word length and a
//! morphism count; a table that is still incomplete yields
//! [`Error::Undecided`].

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::category::{assemble, Mor, Obj};
use super::constructions::Cocone;
use super::functor::FinFunctor;
use crate::error::{Error, Result};
use crate::names::{inl, inr};

/// Cut-offs for pushout enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PushoutBound {
    pub word_length: usize,
    pub max_morphisms: usize,
}

impl Default for PushoutBound {
    fn default() -> Self {
        PushoutBound { word_length: 8, max_morphisms: 10_000 }
    }
}

impl PushoutBound {
    pub const WORD_ENV: &'static str = "DLENS_PUSHOUT_WORD_BOUND";
    pub const SIZE_ENV: &'static str = "DLENS_PUSHOUT_SIZE_BOUND";

    /// The defaults, overridden by the environment variables
    /// [`Self::WORD_ENV`] and [`Self::SIZE_ENV`] when they parse.
    pub fn from_env() -> Self {
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse::<usize>().ok());
        let d = PushoutBound::default();
        PushoutBound {
            word_length: read(Self::WORD_ENV).unwrap_or(d.word_length),
            max_morphisms: read(Self::SIZE_ENV).unwrap_or(d.max_morphisms),
        }
    }
}

struct Gen {
    name: String,
    src: usize,
    tgt: usize,
}

struct Node {
    root: usize,
    obj: usize,
    depth: usize,
    edges: Vec<Option<usize>>,
}

struct Table<'a> {
    gens: &'a [Gen],
    slot: &'a [usize],
    gens_from: &'a [Vec<usize>],
    nodes: Vec<Node>,
    parent: Vec<usize>,
    alive: usize,
    bound: PushoutBound,
    overflow: bool,
    changed: bool,
}

impl<'a> Table<'a> {
    fn find(&mut self, mut n: usize) -> usize {
        while self.parent[n] != n {
            self.parent[n] = self.parent[self.parent[n]];
            n = self.parent[n];
        }
        n
    }

    fn new_node(&mut self, root: usize, obj: usize, depth: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node { root, obj, depth, edges: vec![None; self.gens_from[obj].len()] });
        self.parent.push(id);
        self.alive += 1;
        id
    }

    fn follow(&mut self, n: usize, g: usize) -> Option<usize> {
        let n = self.find(n);
        let t = self.nodes[n].edges[self.slot[g]]?;
        Some(self.find(t))
    }

    fn follow_or_define(&mut self, n: usize, g: usize) -> Option<usize> {
        let n = self.find(n);
        if let Some(t) = self.follow(n, g) {
            return Some(t);
        }
        let depth = self.nodes[n].depth + 1;
        if depth > self.bound.word_length
            || self.alive >= self.bound.max_morphisms
            || self.nodes.len() >= self.bound.max_morphisms.saturating_mul(16)
        {
            self.overflow = true;
            return None;
        }
        let t = self.new_node(self.nodes[n].root, self.gens[g].tgt, depth);
        self.nodes[n].edges[self.slot[g]] = Some(t);
        self.changed = true;
        Some(t)
    }

    fn trace(&mut self, n: usize, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(self.find(n), |m, &g| self.follow_or_define(m, g))
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            debug_assert_eq!(self.nodes[ra].obj, self.nodes[rb].obj);
            debug_assert_eq!(self.nodes[ra].root, self.nodes[rb].root);
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
            self.alive -= 1;
            self.changed = true;
            self.nodes[lo].depth = self.nodes[lo].depth.min(self.nodes[hi].depth);
            let moved = std::mem::take(&mut self.nodes[hi].edges);
            for (s, t) in moved.into_iter().enumerate() {
                if let Some(t) = t {
                    match self.nodes[lo].edges[s] {
                        Some(t2) => queue.push((t, t2)),
                        None => self.nodes[lo].edges[s] = Some(t),
                    }
                }
            }
        }
    }

    /// Enforces `n·short = n·long`, deducing the last edge of `long` when it
    /// is missing.
    fn apply(&mut self, n: usize, short: &[usize], long: &[usize]) {
        let Some(l) = self.trace(n, short) else { return };
        let Some((&last, init)) = long.split_last() else {
            self.merge(n, l);
            return;
        };
        let Some(m) = self.trace(n, init) else { return };
        match self.follow(m, last) {
            Some(t) => self.merge(t, l),
            None => {
                let m = self.find(m);
                let l = self.find(l);
                self.nodes[m].edges[self.slot[last]] = Some(l);
                self.changed = true;
            }
        }
    }
}

/// Pushout of `p: X -> A` and `i: X -> Y` where `p` is identity on objects.
///
/// The result has the objects of `Y`. Identities keep their names from `Y`,
/// a generator from `A` is named `inl(f)`, one from `Y` is named `inr(v)`,
/// and every other morphism is named by its shortlex-least word, joined
/// with `;` in diagrammatic order.
pub fn pushout_along_ioo(p: &FinFunctor, i: &FinFunctor, bound: PushoutBound) -> Result<Cocone> {
    if p.dom() != i.dom() {
        return Err(Error::Mismatch("pushout legs have different domains".into()));
    }
    if !p.is_identity_on_objects() {
        return Err(Error::Precondition("pushout leg is not identity on objects".into()));
    }
    let (x, a, y) = (p.dom(), p.cod(), i.cod());
    // Objects of A are those of X, so each lands on i(x) in Y.
    let a_obj: Vec<usize> = a
        .objects()
        .map(|o| i.ob(x.obj(a.obj_name(o)).expect("identity on objects")).0)
        .collect();

    let mut raw: Vec<(String, usize, usize, bool, Mor)> = Vec::new();
    for f in a.morphisms().filter(|&f| !a.is_identity(f)) {
        raw.push((inl(a.mor_name(f)), a_obj[a.src(f).0], a_obj[a.tgt(f).0], true, f));
    }
    for v in y.morphisms().filter(|&v| !y.is_identity(v)) {
        raw.push((inr(y.mor_name(v)), y.src(v).0, y.tgt(v).0, false, v));
    }
    raw.sort_by(|l, r| l.0.cmp(&r.0));
    let mut gen_a = vec![None; a.num_morphisms()];
    let mut gen_y = vec![None; y.num_morphisms()];
    let mut gens = Vec::with_capacity(raw.len());
    for (k, (name, src, tgt, from_a, m)) in raw.into_iter().enumerate() {
        if from_a {
            gen_a[m.0] = Some(k);
        } else {
            gen_y[m.0] = Some(k);
        }
        gens.push(Gen { name, src, tgt });
    }
    let word_a = |f: Mor| gen_a[f.0].into_iter().collect::<Vec<_>>();
    let word_y = |v: Mor| gen_y[v.0].into_iter().collect::<Vec<_>>();

    let n_obj = y.num_objects();
    let mut gens_from = vec![Vec::new(); n_obj];
    let mut slot = vec![0; gens.len()];
    for (k, g) in gens.iter().enumerate() {
        slot[k] = gens_from[g.src].len();
        gens_from[g.src].push(k);
    }

    let mut rel_set: HashSet<(usize, Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut add_rel = |base: usize, l: Vec<usize>, r: Vec<usize>| {
        if l != r {
            let (short, long) = if l.len() <= r.len() { (l, r) } else { (r, l) };
            rel_set.insert((base, short, long));
        }
    };
    for (f, g) in a.composable_pairs() {
        if !a.is_identity(f) && !a.is_identity(g) {
            let mut lhs = word_a(f);
            lhs.extend(word_a(g));
            add_rel(a_obj[a.src(f).0], word_a(a.then(f, g)), lhs);
        }
    }
    for (f, g) in y.composable_pairs() {
        if !y.is_identity(f) && !y.is_identity(g) {
            let mut lhs = word_y(f);
            lhs.extend(word_y(g));
            add_rel(y.src(f).0, word_y(y.then(f, g)), lhs);
        }
    }
    for w in x.morphisms() {
        add_rel(i.ob(x.src(w)).0, word_a(p.mor(w)), word_y(i.mor(w)));
    }
    let mut rels: Vec<_> = rel_set.into_iter().collect();
    rels.sort();
    let mut rels_at = vec![Vec::new(); n_obj];
    for (base, short, long) in rels {
        rels_at[base].push((short, long));
    }

    let mut t = Table {
        gens: &gens,
        slot: &slot,
        gens_from: &gens_from,
        nodes: Vec::new(),
        parent: Vec::new(),
        alive: 0,
        bound,
        overflow: false,
        changed: false,
    };
    for o in 0..n_obj {
        t.new_node(o, o, 0);
    }
    loop {
        t.changed = false;
        t.overflow = false;
        let mut k = 0;
        while k < t.nodes.len() {
            if t.find(k) == k {
                let obj = t.nodes[k].obj;
                for &g in &gens_from[obj] {
                    t.follow_or_define(k, g);
                }
                for (short, long) in &rels_at[obj] {
                    if t.find(k) != k {
                        break;
                    }
                    t.apply(k, short, long);
                }
            }
            k += 1;
        }
        if !t.changed {
            break;
        }
    }

    let live: Vec<usize> = (0..t.nodes.len()).filter(|&n| t.parent[n] == n).collect();
    let incomplete = live.iter().any(|&n| t.nodes[n].edges.iter().any(Option::is_none));
    if incomplete || t.overflow {
        return Err(Error::Undecided(format!(
            "pushout enumeration exceeded word length {} or {} morphisms",
            bound.word_length, bound.max_morphisms
        )));
    }

    // Shortlex-least words by breadth-first search in generator-name order.
    let mut word: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    for o in 0..n_obj {
        word.insert(o, Vec::new());
        queue.push_back(o);
    }
    while let Some(n) = queue.pop_front() {
        let obj = t.nodes[n].obj;
        for &g in &gens_from[obj] {
            let m = t.follow(n, g).expect("complete table");
            if !word.contains_key(&m) {
                let mut w = word[&n].clone();
                w.push(g);
                word.insert(m, w);
                queue.push_back(m);
            }
        }
    }
    let local: HashMap<usize, usize> = live.iter().enumerate().map(|(l, &n)| (n, l)).collect();
    let name_of = |n: usize| -> String {
        let w = &word[&n];
        if w.is_empty() {
            y.mor_name(y.identity(Obj(t.nodes[n].root))).to_string()
        } else {
            w.iter().map(|&g| gens[g].name.as_str()).collect::<Vec<_>>().join(";")
        }
    };
    let objects = y.objects().map(|o| y.obj_name(o).to_string()).collect();
    let morphisms = live.iter().map(|&n| (name_of(n), t.nodes[n].root, t.nodes[n].obj)).collect();
    let identities: Vec<usize> = (0..n_obj).map(|o| local[&o]).collect();
    let mut table = t;
    let asm = assemble(objects, morphisms, &identities, |f, g| {
        let m = table.trace(live[f], &word[&live[g]]).expect("complete table");
        local[&table.find(m)]
    })?;
    let node_of_word = |table: &mut Table, root: usize, w: &[usize]| -> Mor {
        let m = table.trace(root, w).expect("complete table");
        asm.mor_of[local[&table.find(m)]]
    };
    let cat = Arc::new(asm.cat.clone());
    let left = FinFunctor::new_unchecked(
        a.clone(),
        cat.clone(),
        a.objects().map(|o| asm.obj_of[a_obj[o.0]]).collect(),
        a.morphisms().map(|f| node_of_word(&mut table, a_obj[a.src(f).0], &word_a(f))).collect(),
    );
    let right = FinFunctor::new_unchecked(
        y.clone(),
        cat.clone(),
        y.objects().map(|o| asm.obj_of[o.0]).collect(),
        y.morphisms().map(|v| node_of_word(&mut table, y.src(v).0, &word_y(v))).collect(),
    );
    Ok(Cocone { cat, left, right })
}
