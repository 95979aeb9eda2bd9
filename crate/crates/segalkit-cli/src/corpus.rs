//! Deterministic corpus: the named small categories and functors, plus
//! seeded random objects, maps and chains used by the randomized criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segalkit::bisset::{BiGenId, BiMap, BiSimplex, FinBiSet};
use segalkit::cylinder::ChainOverB;
use segalkit::fincat::{self, FinCat, SetFunctor};
use segalkit::ordinal::OrdinalMap;
use segalkit::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Corpus categories: `(name, category, is_poset, is_groupoid_with_nonid)`.
pub fn categories() -> Vec<(String, FinCat, bool, bool)> {
    vec![
        ("path0".into(), fincat::path_category(0), true, false),
        ("path1".into(), fincat::path_category(1), true, false),
        ("path2".into(), fincat::path_category(2), true, false),
        ("cospan".into(), fincat::cospan_category(), true, false),
        ("span".into(), fincat::span_category(), true, false),
        ("discrete3".into(), fincat::discrete_category(3), true, false),
        ("parallel".into(), fincat::parallel_pair(), false, false),
        ("z2".into(), fincat::cyclic_group(2), false, true),
        ("z3".into(), fincat::cyclic_group(3), false, true),
    ]
}

pub fn category_by_name(name: &str) -> Result<FinCat> {
    categories()
        .into_iter()
        .find(|(n, _, _, _)| n == name)
        .map(|(_, c, _, _)| c)
        .ok_or_else(|| Error::Parse(format!("unknown category {name}")))
}

/// Nerve truncation for a corpus category: exact where finite, otherwise the
/// given default.
pub fn nerve_bound(c: &FinCat, default: usize) -> Option<usize> {
    match c.nerve_dimension() {
        Some(_) => None,
        None => Some(default),
    }
}

/// Functor corpus per category: representables at each object, a constant,
/// and a small coproduct of representables where available.
pub fn functors_for(c: &FinCat) -> Vec<(String, SetFunctor)> {
    let mut out = Vec::new();
    for x in 0..c.objects.len() {
        out.push((format!("rep{x}"), SetFunctor::representable(c, x)));
    }
    out.push(("const1".into(), SetFunctor::constant(c, 1)));
    out.push(("const2".into(), SetFunctor::constant(c, 2)));
    if c.objects.len() >= 2 {
        // coproduct of the first two representables
        let a = SetFunctor::representable(c, 0);
        let b = SetFunctor::representable(c, 1);
        let sets: Vec<Vec<String>> = (0..c.objects.len())
            .map(|o| {
                let mut s: Vec<String> = a.sets[o].iter().map(|e| format!("l{e}")).collect();
                s.extend(b.sets[o].iter().map(|e| format!("r{e}")));
                s
            })
            .collect();
        let maps: Vec<Vec<usize>> = (0..c.arrows.len())
            .map(|f| {
                let src = c.arrows[f].src;
                let mut m: Vec<usize> = a.maps[f].clone();
                let offset = a.sets[c.arrows[f].tgt].len();
                m.extend(b.maps[f].iter().map(|&v| v + offset));
                debug_assert_eq!(m.len(), sets[src].len());
                m
            })
            .collect();
        let f = SetFunctor { sets, maps };
        if f.validate(c).is_ok() {
            out.push(("rep0+rep1".into(), f));
        }
    }
    out
}

/// A random bisimplicial complex with cells in total dimension <= 2: some
/// vertices, then edges in both directions, then a few (1,1) squares when
/// their boundary data can be matched.
pub fn random_biset(rng: &mut ChaCha8Rng, max_cells: usize) -> Arc<FinBiSet> {
    let verts = rng.gen_range(1..=3usize);
    let mut labels: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    labels.insert((0, 0), (0..verts).map(|i| format!("v{i}")).collect());
    let mut faces1: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>> = BTreeMap::new();
    let mut faces2: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>> = BTreeMap::new();

    let v = |idx: usize| BiSimplex::of(BiGenId { n: 0, m: 0, idx });
    let h_edges = rng.gen_range(0..=2usize.min(max_cells));
    if h_edges > 0 {
        let mut lvl = Vec::new();
        let mut lab = Vec::new();
        for i in 0..h_edges {
            lab.push(format!("h{i}"));
            lvl.push(vec![v(rng.gen_range(0..verts)), v(rng.gen_range(0..verts))]);
        }
        labels.insert((1, 0), lab);
        faces1.insert((1, 0), lvl);
    }
    let v_edges = rng.gen_range(0..=2usize.min(max_cells));
    if v_edges > 0 {
        let mut lvl = Vec::new();
        let mut lab = Vec::new();
        for i in 0..v_edges {
            lab.push(format!("w{i}"));
            lvl.push(vec![v(rng.gen_range(0..verts)), v(rng.gen_range(0..verts))]);
        }
        labels.insert((0, 1), lab);
        faces2.insert((0, 1), lvl);
    }
    let x = FinBiSet::build(labels, faces1, faces2).expect("random complex is valid");
    Arc::new(x)
}

/// A random map between random small objects: enumerate a few maps and pick
/// one at random; retries until a nonempty hom-set shows up.
pub fn random_map(rng: &mut ChaCha8Rng) -> BiMap {
    loop {
        let x = random_biset(rng, 2);
        let y = random_biset(rng, 2);
        let homs = segalkit::bisset::bi_homs_filtered(&x, &y, &|_, _| Ok(true), Some(12))
            .expect("hom enumeration");
        if homs.is_empty() {
            continue;
        }
        let k = rng.gen_range(0..homs.len());
        return homs[k].clone();
    }
}

/// A random chain of nerves of small posets over the point, length `m`.
pub fn random_chain(rng: &mut ChaCha8Rng, m: usize) -> Result<ChainOverB> {
    let pt = Arc::new(segalkit::bisset::box_(0, 0));
    // random increasing sequence of path categories with monotone maps
    let mut sizes = Vec::new();
    for _ in 0..=m {
        sizes.push(rng.gen_range(0..=2usize));
    }
    let objects: Vec<Arc<FinBiSet>> = sizes
        .iter()
        .map(|&s| {
            let (x, _) = segalkit::segal::disc_nerve(&fincat::path_category(s), None)?;
            Ok(x)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::new();
    for j in 0..m {
        // a monotone vertex map [sizes[j]] -> [sizes[j+1]] induces a functor
        let choices = segalkit::ordinal::enumerate_maps(sizes[j], sizes[j + 1]);
        let tau = choices[rng.gen_range(0..choices.len())].clone();
        maps.push(nerve_map_of_monotone(&tau, &objects[j], &objects[j + 1])?);
    }
    let to_base = objects.iter().map(|o| BiMap::terminal(o.clone())).collect();
    ChainOverB::new(pt, objects, to_base, maps)
}

/// The nerve map induced by a monotone map of path categories, on the
/// discrete embeddings.
pub fn nerve_map_of_monotone(
    tau: &OrdinalMap,
    src: &Arc<FinBiSet>,
    tgt: &Arc<FinBiSet>,
) -> Result<BiMap> {
    let s = fincat::path_category(tau.dom());
    let t = fincat::path_category(tau.cod());
    let find = |c: &FinCat, i: usize, j: usize| {
        c.arrows.iter().position(|a| a.src == i && a.tgt == j).unwrap()
    };
    let on_arrows = s
        .arrows
        .iter()
        .map(|a| find(&t, tau.at(a.src), tau.at(a.tgt)))
        .collect();
    let u = fincat::CatFunctor {
        source: s,
        target: t,
        on_objects: tau.values().to_vec(),
        on_arrows,
    };
    let nm = segalkit::segal::nerve_map(&u, None)?;
    let lifted = segalkit::bisset::disc_map(&nm)?;
    if lifted.source() != src || lifted.target() != tgt {
        return Err(Error::Invalid("nerve map endpoints differ from the given objects".into()));
    }
    Ok(lifted)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
