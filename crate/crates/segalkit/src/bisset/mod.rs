//! Finite bisimplicial sets.
//!
//! The presentation mirrors the simplicial one: generators graded by bidegree
//! `(n, m)`, with face assignments along each axis written as a pair of
//! surjections applied to a lower generator. Rows `X_n` are materialized as
//! finite simplicial sets; they are the bridge every fibration and Segal
//! check uses.

mod build;
mod homs;
mod limits;
mod ops;
#[cfg(test)]
mod tests;

pub use build::{bi_pushout, extract_biset, reindex, reindex_map, BiExtracted, BiLevels, BiPushout, DeltaFunctor, Reindexed};
pub use homs::{bi_hom_enum, bi_homs_filtered, bi_isomorphic, bi_isomorphisms, bi_maps_over};
pub use limits::{bi_coproduct, bi_fiber, bi_product, bi_product_capped, bi_pullback, BiCoproduct, BiProduct, BiPullback};
pub use ops::{factor_through_sub, skeleton_pushout_check, tau_decompose, twist_projection, SkeletonStep, TauPiece, TwistProjection};

use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use crate::sset::{FinSSet, GenId, SSetMap, Simplex};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Generator identifier: bidegree plus insertion index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiGenId {
    pub n: usize,
    pub m: usize,
    pub idx: usize,
}

impl fmt::Debug for BiGenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.n, self.m, self.idx)
    }
}

/// A bisimplex in normal form: a pair of surjections applied to a generator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiSimplex {
    pub gen: BiGenId,
    pub e1: OrdinalMap,
    pub e2: OrdinalMap,
}

impl fmt::Debug for BiSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nondegenerate() {
            write!(f, "{:?}", self.gen)
        } else {
            write!(f, "({:?},{:?})*{:?}", self.e1.values(), self.e2.values(), self.gen)
        }
    }
}

impl BiSimplex {
    pub fn of(gen: BiGenId) -> BiSimplex {
        BiSimplex {
            gen,
            e1: OrdinalMap::identity(gen.n),
            e2: OrdinalMap::identity(gen.m),
        }
    }

    /// Bidegree of the level this cell lives in.
    pub fn level(&self) -> (usize, usize) {
        (self.e1.dom(), self.e2.dom())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.e1.is_identity() && self.e2.is_identity()
    }
}

/// A finite bisimplicial set.
#[derive(Clone)]
pub struct FinBiSet {
    labels: BTreeMap<(usize, usize), Vec<String>>,
    /// first-axis faces: `n + 1` entries per generator with `n > 0`
    faces1: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
    /// second-axis faces: `m + 1` entries per generator with `m > 0`
    faces2: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
}

impl PartialEq for FinBiSet {
    fn eq(&self, other: &Self) -> bool {
        self.faces1 == other.faces1 && self.faces2 == other.faces2
            && self.gen_counts() == other.gen_counts()
    }
}
impl Eq for FinBiSet {}

impl fmt::Debug for FinBiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinBiSet{:?}", self.gen_counts())
    }
}

impl FinBiSet {
    pub fn build(
        labels: BTreeMap<(usize, usize), Vec<String>>,
        faces1: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
        faces2: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
    ) -> Result<FinBiSet> {
        let x = FinBiSet { labels, faces1, faces2 };
        x.validate()?;
        Ok(x)
    }

    pub fn empty() -> FinBiSet {
        FinBiSet { labels: BTreeMap::new(), faces1: BTreeMap::new(), faces2: BTreeMap::new() }
    }

    pub fn validate(&self) -> Result<()> {
        for (&(n, m), labs) in &self.labels {
            let count = labs.len();
            let f1 = self.faces1.get(&(n, m)).map_or(0, |v| v.len());
            let f2 = self.faces2.get(&(n, m)).map_or(0, |v| v.len());
            if (n > 0 && f1 != count) || (n == 0 && f1 != 0 && f1 != count) {
                return Err(Error::Invalid(format!("faces1 count mismatch at ({n},{m})")));
            }
            if (m > 0 && f2 != count) || (m == 0 && f2 != 0 && f2 != count) {
                return Err(Error::Invalid(format!("faces2 count mismatch at ({n},{m})")));
            }
            for idx in 0..count {
                let g = BiGenId { n, m, idx };
                if n > 0 {
                    let fs = &self.faces1[&(n, m)][idx];
                    if fs.len() != n + 1 {
                        return Err(Error::Invalid(format!("{g:?} has {} axis-1 faces", fs.len())));
                    }
                    for s in fs {
                        self.check_cell(s, (n - 1, m))?;
                    }
                }
                if m > 0 {
                    let fs = &self.faces2[&(n, m)][idx];
                    if fs.len() != m + 1 {
                        return Err(Error::Invalid(format!("{g:?} has {} axis-2 faces", fs.len())));
                    }
                    for s in fs {
                        self.check_cell(s, (n, m - 1))?;
                    }
                }
            }
        }
        // simplicial identities along and across the axes
        for g in self.all_gens() {
            let (n, m) = (g.n, g.m);
            let cell = BiSimplex::of(g);
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let a = self.act(&ordinal::face(i, n - 1)?, &OrdinalMap::identity(m), &self.face1(g, j)?)?;
                        let b = self.act(&ordinal::face(j - 1, n - 1)?, &OrdinalMap::identity(m), &self.face1(g, i)?)?;
                        if a != b {
                            return Err(Error::Invalid(format!("axis-1 identity failed on {g:?}")));
                        }
                    }
                }
            }
            if m >= 2 {
                for j in 1..=m {
                    for i in 0..j {
                        let a = self.act(&OrdinalMap::identity(n), &ordinal::face(i, m - 1)?, &self.face2(g, j)?)?;
                        let b = self.act(&OrdinalMap::identity(n), &ordinal::face(j - 1, m - 1)?, &self.face2(g, i)?)?;
                        if a != b {
                            return Err(Error::Invalid(format!("axis-2 identity failed on {g:?}")));
                        }
                    }
                }
            }
            if n > 0 && m > 0 {
                for i in 0..=n {
                    for j in 0..=m {
                        let a = self.act(&ordinal::face(i, n)?, &OrdinalMap::identity(m - 1), &self.act(&OrdinalMap::identity(n), &ordinal::face(j, m)?, &cell)?)?;
                        let b = self.act(&OrdinalMap::identity(n - 1), &ordinal::face(j, m)?, &self.act(&ordinal::face(i, n)?, &OrdinalMap::identity(m), &cell)?)?;
                        if a != b {
                            return Err(Error::Invalid(format!("mixed identity failed on {g:?}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_cell(&self, s: &BiSimplex, level: (usize, usize)) -> Result<()> {
        if s.level() != level {
            return Err(Error::Invalid(format!("cell {s:?} not at level {level:?}")));
        }
        if !self.has_gen(s.gen) {
            return Err(Error::Invalid(format!("cell references missing generator {:?}", s.gen)));
        }
        if s.e1.cod() != s.gen.n || !s.e1.is_surjective() || s.e2.cod() != s.gen.m || !s.e2.is_surjective() {
            return Err(Error::Invalid(format!("cell {s:?} has non-normal surjections")));
        }
        Ok(())
    }

    pub fn gen_counts(&self) -> BTreeMap<(usize, usize), usize> {
        self.labels.iter().map(|(&k, v)| (k, v.len())).filter(|&(_, c)| c > 0).collect()
    }

    pub fn gen_count(&self) -> usize {
        self.labels.values().map(|v| v.len()).sum()
    }

    pub fn has_gen(&self, g: BiGenId) -> bool {
        self.labels.get(&(g.n, g.m)).is_some_and(|v| g.idx < v.len())
    }

    pub fn gens_at(&self, n: usize, m: usize) -> impl Iterator<Item = BiGenId> + '_ {
        let count = self.labels.get(&(n, m)).map_or(0, |v| v.len());
        (0..count).map(move |idx| BiGenId { n, m, idx })
    }

    pub fn all_gens(&self) -> Vec<BiGenId> {
        self.labels
            .iter()
            .flat_map(|(&(n, m), v)| (0..v.len()).map(move |idx| BiGenId { n, m, idx }))
            .collect()
    }

    pub fn label(&self, g: BiGenId) -> &str {
        &self.labels[&(g.n, g.m)][g.idx]
    }

    pub fn labels(&self) -> &BTreeMap<(usize, usize), Vec<String>> {
        &self.labels
    }

    pub fn gen_by_label(&self, label: &str) -> Option<BiGenId> {
        for (&(n, m), v) in &self.labels {
            if let Some(idx) = v.iter().position(|l| l == label) {
                return Some(BiGenId { n, m, idx });
            }
        }
        None
    }

    /// Largest first-axis degree carrying a generator.
    pub fn dim1(&self) -> Option<usize> {
        self.labels.iter().filter(|(_, v)| !v.is_empty()).map(|(&(n, _), _)| n).max()
    }

    /// Largest second-axis degree carrying a generator.
    pub fn dim2(&self) -> Option<usize> {
        self.labels.iter().filter(|(_, v)| !v.is_empty()).map(|(&(_, m), _)| m).max()
    }

    /// Largest total degree carrying a generator.
    pub fn total_dim(&self) -> Option<usize> {
        self.labels
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&(n, m), _)| n + m)
            .max()
    }

    pub fn face1(&self, g: BiGenId, k: usize) -> Result<BiSimplex> {
        self.faces1
            .get(&(g.n, g.m))
            .and_then(|v| v.get(g.idx))
            .and_then(|fs| fs.get(k))
            .cloned()
            .ok_or_else(|| Error::IndexRange(format!("axis-1 face {k} of {g:?}")))
    }

    pub fn face2(&self, g: BiGenId, k: usize) -> Result<BiSimplex> {
        self.faces2
            .get(&(g.n, g.m))
            .and_then(|v| v.get(g.idx))
            .and_then(|fs| fs.get(k))
            .cloned()
            .ok_or_else(|| Error::IndexRange(format!("axis-2 face {k} of {g:?}")))
    }

    /// Functorial action of a pair `(τ1, τ2)` on a cell.
    pub fn act(&self, t1: &OrdinalMap, t2: &OrdinalMap, s: &BiSimplex) -> Result<BiSimplex> {
        let c1 = s.e1.compose(t1)?;
        let c2 = s.e2.compose(t2)?;
        let (s1, d1) = c1.epi_mono_factor();
        let (s2, d2) = c2.epi_mono_factor();
        let t = self.act_injective(&d1, &d2, s.gen)?;
        Ok(BiSimplex { gen: t.gen, e1: t.e1.compose(&s1)?, e2: t.e2.compose(&s2)? })
    }

    fn act_injective(&self, d1: &OrdinalMap, d2: &OrdinalMap, g: BiGenId) -> Result<BiSimplex> {
        if !d1.is_identity() {
            let a = *d1.missing_indices().last().unwrap();
            let dp = OrdinalMap::new(
                d1.values().iter().map(|&v| if v < a { v } else { v - 1 }).collect(),
                d1.cod() - 1,
            )?;
            let f = self.face1(g, a)?;
            return self.act(&dp, d2, &f);
        }
        if !d2.is_identity() {
            let a = *d2.missing_indices().last().unwrap();
            let dp = OrdinalMap::new(
                d2.values().iter().map(|&v| if v < a { v } else { v - 1 }).collect(),
                d2.cod() - 1,
            )?;
            let f = self.face2(g, a)?;
            return self.act(d1, &dp, &f);
        }
        Ok(BiSimplex::of(g))
    }

    /// All cells of level `(n, m)`, in canonical order.
    pub fn level(&self, n: usize, m: usize) -> Result<Vec<BiSimplex>> {
        let mut out = Vec::new();
        for (&(gn, gm), labs) in &self.labels {
            if gn > n || gm > m || labs.is_empty() {
                continue;
            }
            let e1s = ordinal::enumerate_epis(n, gn);
            let e2s = ordinal::enumerate_epis(m, gm);
            for idx in 0..labs.len() {
                for e1 in &e1s {
                    for e2 in &e2s {
                        out.push(BiSimplex {
                            gen: BiGenId { n: gn, m: gm, idx },
                            e1: e1.clone(),
                            e2: e2.clone(),
                        });
                    }
                }
            }
        }
        out.sort();
        crate::budget::check(out.len(), "bisimplicial level")?;
        Ok(out)
    }

    pub fn level_count(&self, n: usize, m: usize) -> Result<usize> {
        Ok(self.level(n, m)?.len())
    }

    /// Vertices = generators at bidegree `(0, 0)`.
    pub fn vertices(&self) -> Vec<BiGenId> {
        self.gens_at(0, 0).collect()
    }

    /// All rows are discrete simplicial sets, i.e. every generator has
    /// second-axis degree zero.
    pub fn is_discrete(&self) -> bool {
        self.labels.iter().all(|(&(_, m), v)| m == 0 || v.is_empty())
    }

    /// Non-degenerate cells per bidegree.
    pub fn nondegenerate(&self) -> BTreeMap<(usize, usize), Vec<BiGenId>> {
        let mut out = BTreeMap::new();
        for g in self.all_gens() {
            out.entry((g.n, g.m)).or_insert_with(Vec::new).push(g);
        }
        out
    }
}

/// Place a simplicial set along the first axis (rows become discrete).
pub fn disc(x: &FinSSet) -> FinBiSet {
    let mut labels = BTreeMap::new();
    let mut faces1 = BTreeMap::new();
    for d in 0..x.gen_counts().len() {
        let gens: Vec<GenId> = x.gens(d).collect();
        if gens.is_empty() {
            continue;
        }
        labels.insert((d, 0), gens.iter().map(|&g| x.label(g).to_string()).collect());
        if d > 0 {
            let lifted = gens
                .iter()
                .map(|&g| {
                    x.faces_of(g)
                        .iter()
                        .map(|s| BiSimplex {
                            gen: BiGenId { n: s.gen.dim, m: 0, idx: s.gen.idx },
                            e1: s.epi.clone(),
                            e2: OrdinalMap::identity(0),
                        })
                        .collect()
                })
                .collect();
            faces1.insert((d, 0), lifted);
        }
    }
    FinBiSet { labels, faces1, faces2: BTreeMap::new() }
}

/// Lift a simplicial map along the first-axis embedding.
pub fn disc_map(f: &SSetMap) -> Result<BiMap> {
    let src = Arc::new(disc(f.source()));
    let tgt = Arc::new(disc(f.target()));
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in src.all_gens() {
        let img = f.gen_image(GenId { dim: g.n, idx: g.idx });
        assign.entry((g.n, g.m)).or_default().push(BiSimplex {
            gen: BiGenId { n: img.gen.dim, m: 0, idx: img.gen.idx },
            e1: img.epi.clone(),
            e2: OrdinalMap::identity(0),
        });
    }
    BiMap::new(src, tgt, assign)
}

/// Place a simplicial set along the second axis (the constant embedding).
pub fn constant(x: &FinSSet) -> FinBiSet {
    let mut labels = BTreeMap::new();
    let mut faces2 = BTreeMap::new();
    for d in 0..x.gen_counts().len() {
        let gens: Vec<GenId> = x.gens(d).collect();
        if gens.is_empty() {
            continue;
        }
        labels.insert((0, d), gens.iter().map(|&g| x.label(g).to_string()).collect());
        if d > 0 {
            let lifted = gens
                .iter()
                .map(|&g| {
                    x.faces_of(g)
                        .iter()
                        .map(|s| BiSimplex {
                            gen: BiGenId { n: 0, m: s.gen.dim, idx: s.gen.idx },
                            e1: OrdinalMap::identity(0),
                            e2: s.epi.clone(),
                        })
                        .collect()
                })
                .collect();
            faces2.insert((0, d), lifted);
        }
    }
    FinBiSet { labels, faces2, faces1: BTreeMap::new() }
}

/// The standard bisimplex: cells of level `(p, q)` are pairs of monotone maps
/// into `[n]` and `[m]`; generators are the pairs of injections.
pub fn box_(n: usize, m: usize) -> FinBiSet {
    let mut labels = BTreeMap::new();
    let mut faces1 = BTreeMap::new();
    let mut faces2 = BTreeMap::new();
    for k in 0..=n {
        let aks = ordinal::enumerate_monos(k, n);
        for l in 0..=m {
            let bls = ordinal::enumerate_monos(l, m);
            let mut labs = Vec::new();
            let mut f1 = Vec::new();
            let mut f2 = Vec::new();
            for a in &aks {
                for b in &bls {
                    labs.push(format!("{}|{}", word(a), word(b)));
                    if k > 0 {
                        let lower = ordinal::enumerate_monos(k - 1, n);
                        let mut fs = Vec::new();
                        for i in 0..=k {
                            let fa = a.compose(&ordinal::face(i, k).unwrap()).unwrap();
                            let ai = lower.binary_search(&fa).unwrap();
                            fs.push(BiSimplex::of(BiGenId {
                                n: k - 1,
                                m: l,
                                idx: ai * bls.len() + bls.iter().position(|x| x == b).unwrap(),
                            }));
                        }
                        f1.push(fs);
                    }
                    if l > 0 {
                        let lower = ordinal::enumerate_monos(l - 1, m);
                        let mut fs = Vec::new();
                        for j in 0..=l {
                            let fb = b.compose(&ordinal::face(j, l).unwrap()).unwrap();
                            let bj = lower.binary_search(&fb).unwrap();
                            fs.push(BiSimplex::of(BiGenId {
                                n: k,
                                m: l - 1,
                                idx: aks.iter().position(|x| x == a).unwrap() * lower.len() + bj,
                            }));
                        }
                        f2.push(fs);
                    }
                }
            }
            labels.insert((k, l), labs);
            if k > 0 {
                faces1.insert((k, l), f1);
            }
            if l > 0 {
                faces2.insert((k, l), f2);
            }
        }
    }
    FinBiSet { labels, faces1, faces2 }
}

fn word(t: &OrdinalMap) -> String {
    t.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join("")
}

/// Decode a cell of `box_(n, m)` into its classifying pair of monotone maps.
pub fn box_decode(n: usize, m: usize, s: &BiSimplex) -> (OrdinalMap, OrdinalMap) {
    let aks = ordinal::enumerate_monos(s.gen.n, n);
    let bls = ordinal::enumerate_monos(s.gen.m, m);
    let a = &aks[s.gen.idx / bls.len()];
    let b = &bls[s.gen.idx % bls.len()];
    (a.compose(&s.e1).unwrap(), b.compose(&s.e2).unwrap())
}

/// Encode a pair of monotone maps as a cell of `box_(n, m)`.
pub fn box_encode(n: usize, m: usize, a: &OrdinalMap, b: &OrdinalMap) -> BiSimplex {
    let (s1, d1) = a.epi_mono_factor();
    let (s2, d2) = b.epi_mono_factor();
    let aks = ordinal::enumerate_monos(d1.dom(), n);
    let bls = ordinal::enumerate_monos(d2.dom(), m);
    let ai = aks.binary_search(&d1).unwrap();
    let bi = bls.binary_search(&d2).unwrap();
    BiSimplex { gen: BiGenId { n: d1.dom(), m: d2.dom(), idx: ai * bls.len() + bi }, e1: s1, e2: s2 }
}

/// `F[n]`: the discrete standard simplex along the first axis.
pub fn f_disc(n: usize) -> FinBiSet {
    box_(n, 0)
}

/// Keep generators selected by a face-closed predicate; returns the subobject
/// and its inclusion.
pub fn bi_subobject(x: &FinBiSet, keep: &dyn Fn(BiGenId) -> bool) -> Result<(Arc<FinBiSet>, BiMap)> {
    let mut new_idx: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut labels: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for g in x.all_gens() {
        if keep(g) {
            new_idx.entry((g.n, g.m)).or_default().push(g.idx);
            labels.entry((g.n, g.m)).or_default().push(x.label(g).to_string());
        }
    }
    let lookup = |g: BiGenId| -> Result<BiGenId> {
        new_idx
            .get(&(g.n, g.m))
            .and_then(|v| v.binary_search(&g.idx).ok())
            .map(|idx| BiGenId { n: g.n, m: g.m, idx })
            .ok_or_else(|| Error::Invalid(format!("subobject not face-closed at {g:?}")))
    };
    let relabel = |s: &BiSimplex| -> Result<BiSimplex> {
        Ok(BiSimplex { gen: lookup(s.gen)?, e1: s.e1.clone(), e2: s.e2.clone() })
    };
    let mut faces1 = BTreeMap::new();
    let mut faces2 = BTreeMap::new();
    for (&key, olds) in &new_idx {
        if key.0 > 0 {
            let v: Vec<Vec<BiSimplex>> = olds
                .iter()
                .map(|&old| {
                    x.faces1[&key][old].iter().map(relabel).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            faces1.insert(key, v);
        }
        if key.1 > 0 {
            let v: Vec<Vec<BiSimplex>> = olds
                .iter()
                .map(|&old| {
                    x.faces2[&key][old].iter().map(relabel).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            faces2.insert(key, v);
        }
    }
    let sub = Arc::new(FinBiSet { labels, faces1, faces2 });
    let assign = new_idx
        .iter()
        .map(|(&(n, m), olds)| {
            ((n, m), olds.iter().map(|&old| BiSimplex::of(BiGenId { n, m, idx: old })).collect())
        })
        .collect();
    let include = BiMap::new_unchecked(sub.clone(), Arc::new(x.clone()), assign);
    Ok((sub, include))
}

/// Boundary of the standard bisimplex: everything except the top generator.
pub fn boundary_box(n: usize, m: usize) -> Result<(Arc<FinBiSet>, BiMap)> {
    if n == 0 && m == 0 {
        return Err(Error::IndexRange("boundary_box(0,0) is empty; use FinBiSet::empty".into()));
    }
    let b = box_(n, m);
    bi_subobject(&b, &|g| !(g.n == n && g.m == m))
}

/// `∂F[n]` with its inclusion into `F[n]`.
pub fn df_disc(n: usize) -> Result<(Arc<FinBiSet>, BiMap)> {
    boundary_box(n, 0)
}

/// The discrete horn along the first axis, inside `F[n]`.
pub fn f_horn(n: usize, i: usize) -> Result<(Arc<FinBiSet>, BiMap)> {
    if n == 0 || i > n {
        return Err(Error::IndexRange(format!("f_horn({n},{i})")));
    }
    let missing = ordinal::face(i, n)?;
    let monos = ordinal::enumerate_monos(n - 1, n);
    let drop_idx = monos.binary_search(&missing).unwrap();
    let b = box_(n, 0);
    bi_subobject(&b, &|g| {
        !(g.n == n && g.m == 0) && !(g.n == n - 1 && g.m == 0 && g.idx == drop_idx)
    })
}

/// Smallest sub-bisimplicial set agreeing in total degree `<= k`.
pub fn bis_skeleton(x: &FinBiSet, k: isize) -> Result<Arc<FinBiSet>> {
    Ok(bi_subobject(x, &|g| (g.n + g.m) as isize <= k)?.0)
}

/// A map of finite bisimplicial sets.
#[derive(Clone, PartialEq, Eq)]
pub struct BiMap {
    source: Arc<FinBiSet>,
    target: Arc<FinBiSet>,
    assign: BTreeMap<(usize, usize), Vec<BiSimplex>>,
}

impl fmt::Debug for BiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiMap{:?}", self.assign)
    }
}

impl BiMap {
    pub fn new(
        source: Arc<FinBiSet>,
        target: Arc<FinBiSet>,
        assign: BTreeMap<(usize, usize), Vec<BiSimplex>>,
    ) -> Result<BiMap> {
        let f = BiMap { source, target, assign };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinBiSet>,
        target: Arc<FinBiSet>,
        assign: BTreeMap<(usize, usize), Vec<BiSimplex>>,
    ) -> BiMap {
        BiMap { source, target, assign }
    }

    pub fn validate(&self) -> Result<()> {
        for (&(n, m), labs) in self.source.labels.iter() {
            let level = self.assign.get(&(n, m)).map_or(0, |v| v.len());
            if level != labs.len() {
                return Err(Error::Invalid(format!("assignment count mismatch at ({n},{m})")));
            }
            for (idx, s) in self.assign.get(&(n, m)).into_iter().flatten().enumerate() {
                if s.level() != (n, m) {
                    return Err(Error::Invalid(format!(
                        "image of ({n},{m};{idx}) has level {:?}",
                        s.level()
                    )));
                }
                if !self.target.has_gen(s.gen) {
                    return Err(Error::Invalid("image references missing generator".into()));
                }
            }
        }
        for g in self.source.all_gens() {
            for k in 0..=g.n {
                if g.n == 0 {
                    break;
                }
                let via_src = self.apply(&self.source.face1(g, k)?)?;
                let via_tgt = self.target.act(
                    &ordinal::face(k, g.n)?,
                    &OrdinalMap::identity(g.m),
                    self.gen_image(g),
                )?;
                if via_src != via_tgt {
                    return Err(Error::Invalid(format!("axis-1 naturality fails at {g:?}")));
                }
            }
            for k in 0..=g.m {
                if g.m == 0 {
                    break;
                }
                let via_src = self.apply(&self.source.face2(g, k)?)?;
                let via_tgt = self.target.act(
                    &OrdinalMap::identity(g.n),
                    &ordinal::face(k, g.m)?,
                    self.gen_image(g),
                )?;
                if via_src != via_tgt {
                    return Err(Error::Invalid(format!("axis-2 naturality fails at {g:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: Arc<FinBiSet>) -> BiMap {
        let assign = x
            .labels
            .iter()
            .map(|(&(n, m), v)| {
                ((n, m), (0..v.len()).map(|idx| BiSimplex::of(BiGenId { n, m, idx })).collect())
            })
            .collect();
        BiMap { source: x.clone(), target: x, assign }
    }

    pub fn source(&self) -> &Arc<FinBiSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinBiSet> {
        &self.target
    }

    pub fn gen_image(&self, g: BiGenId) -> &BiSimplex {
        &self.assign[&(g.n, g.m)][g.idx]
    }

    pub fn assignments(&self) -> &BTreeMap<(usize, usize), Vec<BiSimplex>> {
        &self.assign
    }

    pub fn apply(&self, s: &BiSimplex) -> Result<BiSimplex> {
        let t = self.gen_image(s.gen);
        Ok(BiSimplex { gen: t.gen, e1: t.e1.compose(&s.e1)?, e2: t.e2.compose(&s.e2)? })
    }

    pub fn compose(&self, f: &BiMap) -> Result<BiMap> {
        if f.target.as_ref() != self.source.as_ref() {
            return Err(Error::DimensionMismatch("composition source/target mismatch".into()));
        }
        let assign = f
            .assign
            .iter()
            .map(|(&k, v)| Ok((k, v.iter().map(|s| self.apply(s)).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(BiMap { source: f.source.clone(), target: self.target.clone(), assign })
    }

    pub fn is_isomorphism(&self) -> bool {
        if self.source.gen_counts() != self.target.gen_counts() {
            return false;
        }
        for (_, level) in self.assign.iter() {
            let mut seen = std::collections::BTreeSet::new();
            for s in level {
                if !s.is_nondegenerate() || !seen.insert(s.gen) {
                    return false;
                }
            }
        }
        true
    }

    /// The unique map to the terminal object `box_(0, 0)`.
    pub fn terminal(x: Arc<FinBiSet>) -> BiMap {
        let pt = Arc::new(box_(0, 0));
        let v = BiGenId { n: 0, m: 0, idx: 0 };
        let assign = x
            .labels
            .iter()
            .map(|(&(n, m), labs)| {
                (
                    (n, m),
                    (0..labs.len())
                        .map(|_| BiSimplex {
                            gen: v,
                            e1: OrdinalMap::new(vec![0; n + 1], 0).unwrap(),
                            e2: OrdinalMap::new(vec![0; m + 1], 0).unwrap(),
                        })
                        .collect(),
                )
            })
            .collect();
        BiMap { source: x, target: pt, assign }
    }

    /// The map from the point classifying a vertex.
    pub fn from_vertex(x: Arc<FinBiSet>, v: BiGenId) -> Result<BiMap> {
        if (v.n, v.m) != (0, 0) || !x.has_gen(v) {
            return Err(Error::Precondition(format!("{v:?} is not a vertex")));
        }
        let mut assign = BTreeMap::new();
        assign.insert((0, 0), vec![BiSimplex::of(v)]);
        Ok(BiMap { source: Arc::new(box_(0, 0)), target: x, assign })
    }

    /// Characteristic map of a cell: the map from the standard bisimplex of
    /// the cell's level classifying it.
    pub fn classifying(x: Arc<FinBiSet>, cell: &BiSimplex) -> Result<BiMap> {
        let (n, m) = cell.level();
        let b = Arc::new(box_(n, m));
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for g in b.all_gens() {
            let (a, bb) = box_decode(n, m, &BiSimplex::of(g));
            let img = x.act(&a, &bb, cell)?;
            assign.entry((g.n, g.m)).or_default().push(img);
        }
        Ok(BiMap { source: b, target: x, assign })
    }
}

/// The simplicial set `X_n` (first index frozen), with its correspondence to
/// bisimplicial cells.
pub struct Row {
    pub n: usize,
    pub object: Arc<FinSSet>,
    /// per simplicial dimension: the (first-axis surjection, generator) pairs
    gens: Vec<Vec<(OrdinalMap, BiGenId)>>,
    source: Arc<FinBiSet>,
}

impl Row {
    /// Translate a bisimplicial cell at level `(n, m)` into a row simplex.
    pub fn encode(&self, cell: &BiSimplex) -> Result<Simplex> {
        let (row_e1, gen) = (cell.e1.clone(), cell.gen);
        let dim = gen.m;
        let idx = self.gens[dim]
            .binary_search(&(row_e1, gen))
            .map_err(|_| Error::Invalid(format!("cell {cell:?} not in row {}", self.n)))?;
        Ok(Simplex { gen: GenId { dim, idx }, epi: cell.e2.clone() })
    }

    /// Translate a row simplex back into a bisimplicial cell.
    pub fn decode(&self, s: &Simplex) -> BiSimplex {
        let (e1, gen) = self.gens[s.gen.dim][s.gen.idx].clone();
        BiSimplex { gen, e1, e2: s.epi.clone() }
    }

    pub fn biset(&self) -> &Arc<FinBiSet> {
        &self.source
    }
}

/// Materialize row `n` of a bisimplicial set.
pub fn row(x: &Arc<FinBiSet>, n: usize) -> Result<Row> {
    let maxm = x.dim2().map_or(-1, |m| m as isize);
    let mut gens: Vec<Vec<(OrdinalMap, BiGenId)>> = Vec::new();
    for m in 0..=maxm.max(-1) {
        let m = m as usize;
        let mut here = Vec::new();
        for (&(gn, gm), labs) in x.labels.iter() {
            if gm != m || gn > n || labs.is_empty() {
                continue;
            }
            for e1 in ordinal::enumerate_epis(n, gn) {
                for idx in 0..labs.len() {
                    here.push((e1.clone(), BiGenId { n: gn, m: gm, idx }));
                }
            }
        }
        here.sort();
        gens.push(here);
    }
    while gens.last().is_some_and(|v| v.is_empty()) {
        gens.pop();
    }
    let mut labels = Vec::new();
    let mut faces = Vec::new();
    for (m, here) in gens.iter().enumerate() {
        labels.push(
            here.iter()
                .map(|(e1, g)| {
                    if e1.is_identity() {
                        x.label(*g).to_string()
                    } else {
                        format!("{}{:?}", x.label(*g), e1.values())
                    }
                })
                .collect::<Vec<String>>(),
        );
        let mut level = Vec::new();
        for (e1, g) in here {
            let mut fs = Vec::new();
            if m > 0 {
                let cell = BiSimplex { gen: *g, e1: e1.clone(), e2: OrdinalMap::identity(m) };
                for k in 0..=m {
                    let moved = x.act(&OrdinalMap::identity(n), &ordinal::face(k, m)?, &cell)?;
                    let dim = moved.gen.m;
                    let idx = gens[dim]
                        .binary_search(&(moved.e1.clone(), moved.gen))
                        .expect("row face present");
                    fs.push(Simplex { gen: GenId { dim, idx }, epi: moved.e2 });
                }
            }
            level.push(fs);
        }
        faces.push(level);
    }
    let object = Arc::new(FinSSet::build(labels, faces)?);
    Ok(Row { n, object, gens, source: x.clone() })
}

/// The simplicial map between rows induced by a first-axis arrow
/// `τ : [a] -> [b]`, going `row(X, b) -> row(X, a)`.
pub fn row_action(x: &Arc<FinBiSet>, tau: &OrdinalMap, row_b: &Row, row_a: &Row) -> Result<SSetMap> {
    if row_b.n != tau.cod() || row_a.n != tau.dom() {
        return Err(Error::DimensionMismatch("row_action indices mismatch".into()));
    }
    let mut assign = Vec::new();
    for dim in 0..row_b.gens.len() {
        let mut level = Vec::new();
        for (e1, g) in &row_b.gens[dim] {
            let cell = BiSimplex { gen: *g, e1: e1.clone(), e2: OrdinalMap::identity(dim) };
            let moved = x.act(tau, &OrdinalMap::identity(dim), &cell)?;
            level.push(row_a.encode(&moved)?);
        }
        assign.push(level);
    }
    SSetMap::new(row_b.object.clone(), row_a.object.clone(), assign)
}

/// The simplicial map `row(X, n) -> row(Y, n)` induced by a bisimplicial map.
pub fn row_map(f: &BiMap, row_x: &Row, row_y: &Row) -> Result<SSetMap> {
    if row_x.n != row_y.n {
        return Err(Error::DimensionMismatch("row_map on different rows".into()));
    }
    let mut assign = Vec::new();
    for dim in 0..row_x.gens.len() {
        let mut level = Vec::new();
        for (e1, g) in &row_x.gens[dim] {
            let cell = BiSimplex { gen: *g, e1: e1.clone(), e2: OrdinalMap::identity(dim) };
            level.push(row_y.encode(&f.apply(&cell)?)?);
        }
        assign.push(level);
    }
    SSetMap::new(row_x.object.clone(), row_y.object.clone(), assign)
}
