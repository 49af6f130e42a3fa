use dlens_core::classify::{classify, ClassTag};
use dlens_core::gen::{random_lens, GenConfig, LensShape};
use dlens_core::idx::fibres;

fn main() {
    let cfg = GenConfig { max_objects: 5, max_morphisms: 20, max_fibre: 4, count: 500, seed: 101, ..GenConfig::default() };
    let mut hist = std::collections::BTreeMap::new();
    let mut tags = std::collections::BTreeMap::new();
    for i in 0..cfg.count {
        let l = random_lens(&mut cfg.rng(i), &cfg, LensShape::General);
        let key = (l.cod().num_objects(), l.cod().num_morphisms(), l.dom().num_objects(), l.dom().num_morphisms());
        *hist.entry((key.0, key.2.min(12) / 3)).or_insert(0) += 1;
        let r = classify(&fibres(&l)).unwrap();
        for t in ClassTag::ALL {
            *tags.entry(t.as_str()).or_insert(0) += r.get(t).idx as usize;
        }
    }
    println!("(base objects, dom objects/3): count  {hist:?}");
    println!("{tags:#?}");
}
