//! Normal-form extraction from bisimplicial level data, pushouts, and
//! reindexing along endofunctors of the index category.

use super::{BiGenId, BiMap, BiSimplex, FinBiSet};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Levelwise presentation of a bisimplicial set.
pub trait BiLevels {
    type Elt: Clone + Ord + std::fmt::Debug;
    fn elems(&self, n: usize, m: usize) -> Result<Vec<Self::Elt>>;
    /// Action of `(τ1, τ2)` on an element of level `(τ1.cod, τ2.cod)`.
    fn act(&self, t1: &OrdinalMap, t2: &OrdinalMap, e: &Self::Elt) -> Result<Self::Elt>;
}

impl BiLevels for FinBiSet {
    type Elt = BiSimplex;
    fn elems(&self, n: usize, m: usize) -> Result<Vec<BiSimplex>> {
        self.level(n, m)
    }
    fn act(&self, t1: &OrdinalMap, t2: &OrdinalMap, e: &BiSimplex) -> Result<BiSimplex> {
        FinBiSet::act(self, t1, t2, e)
    }
}

pub struct BiExtracted<E> {
    pub object: Arc<FinBiSet>,
    pub levels: BTreeMap<(usize, usize), Vec<E>>,
    pub normal: BTreeMap<(usize, usize), BTreeMap<E, BiSimplex>>,
    pub gen_elem: BTreeMap<BiGenId, E>,
}

impl<E: Clone + Ord + std::fmt::Debug> BiExtracted<E> {
    pub fn normal_form(&self, level: (usize, usize), e: &E) -> Result<BiSimplex> {
        self.normal
            .get(&level)
            .and_then(|m| m.get(e))
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("element {e:?} unknown at level {level:?}")))
    }
}

/// Extract the normal-form presentation of levels `(0..=max_n, 0..=max_m)`.
/// The oracle must have no non-degenerate cells outside that window.
pub fn extract_biset<O: BiLevels>(oracle: &O, max_n: isize, max_m: isize) -> Result<BiExtracted<O::Elt>> {
    let mut levels = BTreeMap::new();
    let mut normal: BTreeMap<(usize, usize), BTreeMap<O::Elt, BiSimplex>> = BTreeMap::new();
    let mut gen_elem = BTreeMap::new();
    let mut labels: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    let mut faces1 = BTreeMap::new();
    let mut faces2 = BTreeMap::new();

    for n in 0..=max_n.max(-1) {
        for m in 0..=max_m.max(-1) {
            let (n, m) = (n as usize, m as usize);
            let elems = oracle.elems(n, m)?;
            crate::budget::check(elems.len(), "bisimplicial level extraction")?;
            let mut nf_here: BTreeMap<O::Elt, BiSimplex> = BTreeMap::new();
            let mut lab = Vec::new();
            let mut f1 = Vec::new();
            let mut f2 = Vec::new();
            for e in &elems {
                let mut settled = false;
                for i in 0..n {
                    let y = oracle.act(&ordinal::face(i, n)?, &OrdinalMap::identity(m), e)?;
                    let back = oracle.act(&ordinal::degeneracy(i, n - 1)?, &OrdinalMap::identity(m), &y)?;
                    if back == *e {
                        let under = normal[&(n - 1, m)]
                            .get(&y)
                            .ok_or_else(|| Error::Invalid("oracle not closed under axis-1 faces".into()))?;
                        nf_here.insert(
                            e.clone(),
                            BiSimplex {
                                gen: under.gen,
                                e1: under.e1.compose(&ordinal::degeneracy(i, n - 1)?)?,
                                e2: under.e2.clone(),
                            },
                        );
                        settled = true;
                        break;
                    }
                }
                if !settled {
                    for j in 0..m {
                        let y = oracle.act(&OrdinalMap::identity(n), &ordinal::face(j, m)?, e)?;
                        let back =
                            oracle.act(&OrdinalMap::identity(n), &ordinal::degeneracy(j, m - 1)?, &y)?;
                        if back == *e {
                            let under = normal[&(n, m - 1)]
                                .get(&y)
                                .ok_or_else(|| Error::Invalid("oracle not closed under axis-2 faces".into()))?;
                            nf_here.insert(
                                e.clone(),
                                BiSimplex {
                                    gen: under.gen,
                                    e1: under.e1.clone(),
                                    e2: under.e2.compose(&ordinal::degeneracy(j, m - 1)?)?,
                                },
                            );
                            settled = true;
                            break;
                        }
                    }
                }
                if settled {
                    continue;
                }
                let g = BiGenId { n, m, idx: lab.len() };
                lab.push(format!("e{}x{}_{}", n, m, lab.len()));
                if n > 0 {
                    let mut fs = Vec::new();
                    for k in 0..=n {
                        let y = oracle.act(&ordinal::face(k, n)?, &OrdinalMap::identity(m), e)?;
                        fs.push(
                            normal[&(n - 1, m)]
                                .get(&y)
                                .cloned()
                                .ok_or_else(|| Error::Invalid("oracle not closed under axis-1 faces".into()))?,
                        );
                    }
                    f1.push(fs);
                }
                if m > 0 {
                    let mut fs = Vec::new();
                    for k in 0..=m {
                        let y = oracle.act(&OrdinalMap::identity(n), &ordinal::face(k, m)?, e)?;
                        fs.push(
                            normal[&(n, m - 1)]
                                .get(&y)
                                .cloned()
                                .ok_or_else(|| Error::Invalid("oracle not closed under axis-2 faces".into()))?,
                        );
                    }
                    f2.push(fs);
                }
                nf_here.insert(e.clone(), BiSimplex::of(g));
                gen_elem.insert(g, e.clone());
            }
            if !lab.is_empty() {
                labels.insert((n, m), lab);
                if n > 0 {
                    faces1.insert((n, m), f1);
                }
                if m > 0 {
                    faces2.insert((n, m), f2);
                }
            }
            levels.insert((n, m), elems);
            normal.insert((n, m), nf_here);
        }
    }
    let object = Arc::new(FinBiSet::build(labels, faces1, faces2)?);
    Ok(BiExtracted { object, levels, normal, gen_elem })
}

/// An endofunctor of the index category, applied to the first axis.
///
/// `first_bound` reports a first-axis dimension bound for reindexed objects:
/// if the input has no generators above first-axis degree `d`, then the
/// reindexed object has no non-degenerate cells above first-axis degree
/// `first_bound(d)`. This keeps reindexing finite and exact.
#[derive(Clone)]
pub struct DeltaFunctor {
    pub name: &'static str,
    pub on_objects: fn(usize) -> usize,
    pub on_arrows: fn(&OrdinalMap) -> OrdinalMap,
    pub first_bound: fn(usize) -> usize,
}

impl DeltaFunctor {
    /// The order-reversing involution.
    pub fn opposite() -> DeltaFunctor {
        DeltaFunctor {
            name: "opposite",
            on_objects: |n| n,
            on_arrows: |t| t.opposite(),
            // relabels cells without changing dimensions
            first_bound: |d| d,
        }
    }

    /// The edgewise subdivision `[n] ↦ [2n+1]`.
    pub fn twist() -> DeltaFunctor {
        DeltaFunctor {
            name: "twist",
            on_objects: |n| 2 * n + 1,
            on_arrows: |t| t.twist(),
            // a cell of the reindexed object at level n is a cell of the
            // input at level 2n+1 whose surjection must keep one side of
            // each of the n symmetric collapse pairs, forcing n <= d
            first_bound: |d| d,
        }
    }

    /// Preserves identities and composition on all arrows of size `<= 3`.
    pub fn validate(&self) -> Result<()> {
        for n in 0..=3usize {
            let id = OrdinalMap::identity(n);
            if !(self.on_arrows)(&id).is_identity() {
                return Err(Error::Invalid(format!("{} does not preserve identities", self.name)));
            }
            if (self.on_arrows)(&id).dom() != (self.on_objects)(n) {
                return Err(Error::Invalid(format!("{} object/arrow actions disagree", self.name)));
            }
        }
        for a in 0..=3usize {
            for b in 0..=3usize {
                for c in 0..=3usize {
                    for f in ordinal::enumerate_maps(a, b) {
                        for g in ordinal::enumerate_maps(b, c) {
                            let lhs = (self.on_arrows)(&g.compose(&f)?);
                            let rhs = (self.on_arrows)(&g).compose(&(self.on_arrows)(&f))?;
                            if lhs != rhs {
                                return Err(Error::Invalid(format!(
                                    "{} does not preserve composition",
                                    self.name
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

struct ReindexLevels<'a> {
    phi: &'a DeltaFunctor,
    x: &'a FinBiSet,
}

impl<'a> BiLevels for ReindexLevels<'a> {
    type Elt = BiSimplex;
    fn elems(&self, n: usize, m: usize) -> Result<Vec<BiSimplex>> {
        self.x.level((self.phi.on_objects)(n), m)
    }
    fn act(&self, t1: &OrdinalMap, t2: &OrdinalMap, e: &BiSimplex) -> Result<BiSimplex> {
        self.x.act(&(self.phi.on_arrows)(t1), t2, e)
    }
}

/// The reindexed object with its correspondence tables. Exact up to the
/// first-axis dimension it was built with; `first_cap` further truncates when
/// only low levels are needed.
pub struct Reindexed {
    pub object: Arc<FinBiSet>,
    pub base: Arc<FinBiSet>,
    pub functor: DeltaFunctor,
    pub ex: BiExtracted<BiSimplex>,
    pub first_dim: isize,
}

impl Reindexed {
    /// Translate a cell of the base object at level `(Φ(n), m)` into a cell
    /// of the reindexed object at level `(n, m)`. Levels beyond the
    /// extraction window hold only degenerate cells, which are peeled down
    /// into the tables.
    pub fn encode(&self, level: (usize, usize), cell: &BiSimplex) -> Result<BiSimplex> {
        if self.ex.normal.contains_key(&level) {
            return self.ex.normal_form(level, cell);
        }
        let (n, m) = level;
        for i in 0..n {
            let d = (self.functor.on_arrows)(&ordinal::face(i, n)?);
            let s = (self.functor.on_arrows)(&ordinal::degeneracy(i, n - 1)?);
            let y = self.base.act(&d, &OrdinalMap::identity(m), cell)?;
            if self.base.act(&s, &OrdinalMap::identity(m), &y)? == *cell {
                let under = self.encode((n - 1, m), &y)?;
                return Ok(BiSimplex {
                    gen: under.gen,
                    e1: under.e1.compose(&ordinal::degeneracy(i, n - 1)?)?,
                    e2: under.e2,
                });
            }
        }
        for j in 0..m {
            let y = self.base.act(
                &OrdinalMap::identity((self.functor.on_objects)(n)),
                &ordinal::face(j, m)?,
                cell,
            )?;
            let back = self.base.act(
                &OrdinalMap::identity((self.functor.on_objects)(n)),
                &ordinal::degeneracy(j, m - 1)?,
                &y,
            )?;
            if back == *cell {
                let under = self.encode((n, m - 1), &y)?;
                return Ok(BiSimplex {
                    gen: under.gen,
                    e1: under.e1,
                    e2: under.e2.compose(&ordinal::degeneracy(j, m - 1)?)?,
                });
            }
        }
        Err(Error::Invalid(format!(
            "cell {cell:?} at level {level:?} is outside the reindexing window"
        )))
    }

    /// The base-object cell realizing a generator.
    pub fn decode(&self, g: BiGenId) -> Result<&BiSimplex> {
        self.ex
            .gen_elem
            .get(&g)
            .ok_or_else(|| Error::Invalid(format!("unknown generator {g:?}")))
    }
}

/// Reindex along a functor of the first axis. `first_cap` bounds the
/// first-axis dimension of the result: exactness holds at levels `<= cap`.
pub fn reindex(phi: &DeltaFunctor, x: &Arc<FinBiSet>, first_cap: Option<usize>) -> Result<Reindexed> {
    phi.validate()?;
    let natural = x.dim1().map_or(-1, |d| (phi.first_bound)(d) as isize);
    let first_dim = match first_cap {
        Some(c) => natural.min(c as isize),
        None => natural,
    };
    let max_m = x.dim2().map_or(-1, |m| m as isize);
    let oracle = ReindexLevels { phi, x };
    let ex = extract_biset(&oracle, first_dim, max_m)?;
    Ok(Reindexed { object: ex.object.clone(), base: x.clone(), functor: phi.clone(), ex, first_dim })
}

/// Transport a map along a reindexing (both sides reindexed by the same
/// functor and caps).
pub fn reindex_map(f: &BiMap, rx: &Reindexed, ry: &Reindexed) -> Result<BiMap> {
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in rx.object.all_gens() {
        let cell = rx.decode(g)?;
        let img = f.apply(cell)?;
        let enc = ry.encode((g.n, g.m), &img)?;
        assign.entry((g.n, g.m)).or_default().push(enc);
    }
    BiMap::new(rx.object.clone(), ry.object.clone(), assign)
}

enum Side {
    Left,
    Right,
}

pub struct BiPushout {
    pub object: Arc<FinBiSet>,
    pub from_left: BiMap,
    pub from_right: BiMap,
    gen_origin: Vec<(Side, BiSimplex)>,
}

struct BiQuotientLevels<'a> {
    f: &'a BiMap,
    g: &'a BiMap,
    reps: std::cell::RefCell<BTreeMap<(usize, usize), BTreeMap<(u8, BiSimplex), (u8, BiSimplex)>>>,
}

impl<'a> BiQuotientLevels<'a> {
    fn rep_map(&self, n: usize, m: usize) -> Result<BTreeMap<(u8, BiSimplex), (u8, BiSimplex)>> {
        if let Some(r) = self.reps.borrow().get(&(n, m)) {
            return Ok(r.clone());
        }
        let mut all: Vec<(u8, BiSimplex)> = Vec::new();
        all.extend(self.f.target().level(n, m)?.into_iter().map(|s| (0u8, s)));
        all.extend(self.g.target().level(n, m)?.into_iter().map(|s| (1u8, s)));
        all.sort();
        let pos: BTreeMap<(u8, BiSimplex), usize> =
            all.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut parent: Vec<usize> = (0..all.len()).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for a in self.f.source().level(n, m)? {
            let fa = (0u8, self.f.apply(&a)?);
            let ga = (1u8, self.g.apply(&a)?);
            let (i, j) = (pos[&fa], pos[&ga]);
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            let (lo, hi) = if all[ri] <= all[rj] { (ri, rj) } else { (rj, ri) };
            parent[hi] = lo;
        }
        let mut map = BTreeMap::new();
        for (i, e) in all.iter().enumerate() {
            let r = find(&mut parent, i);
            map.insert(e.clone(), all[r].clone());
        }
        self.reps.borrow_mut().insert((n, m), map.clone());
        Ok(map)
    }
}

impl<'a> BiLevels for BiQuotientLevels<'a> {
    type Elt = (u8, BiSimplex);
    fn elems(&self, n: usize, m: usize) -> Result<Vec<(u8, BiSimplex)>> {
        let map = self.rep_map(n, m)?;
        let mut reps: Vec<_> = map.into_values().collect();
        reps.sort();
        reps.dedup();
        Ok(reps)
    }
    fn act(&self, t1: &OrdinalMap, t2: &OrdinalMap, e: &(u8, BiSimplex)) -> Result<(u8, BiSimplex)> {
        let moved = if e.0 == 0 {
            (0u8, self.f.target().act(t1, t2, &e.1)?)
        } else {
            (1u8, self.g.target().act(t1, t2, &e.1)?)
        };
        Ok(self.rep_map(t1.dom(), t2.dom())?[&moved].clone())
    }
}

/// Pushout of `X <-f- A -g-> Y`, levelwise in both axes.
pub fn bi_pushout(f: &BiMap, g: &BiMap) -> Result<BiPushout> {
    if f.source() != g.source() {
        return Err(Error::DimensionMismatch("pushout legs have different sources".into()));
    }
    let oracle = BiQuotientLevels { f, g, reps: Default::default() };
    let n1 = f.target().dim1().map_or(-1, |d| d as isize);
    let n2 = g.target().dim1().map_or(-1, |d| d as isize);
    let m1 = f.target().dim2().map_or(-1, |d| d as isize);
    let m2 = g.target().dim2().map_or(-1, |d| d as isize);
    let ex = extract_biset(&oracle, n1.max(n2), m1.max(m2))?;

    let map_from = |side: u8, obj: &Arc<FinBiSet>| -> Result<BiMap> {
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for gsrc in obj.all_gens() {
            let e = oracle.rep_map(gsrc.n, gsrc.m)?[&(side, BiSimplex::of(gsrc))].clone();
            assign
                .entry((gsrc.n, gsrc.m))
                .or_default()
                .push(ex.normal_form((gsrc.n, gsrc.m), &e)?);
        }
        BiMap::new(obj.clone(), ex.object.clone(), assign)
    };
    let from_left = map_from(0, f.target())?;
    let from_right = map_from(1, g.target())?;

    let mut gen_origin = Vec::new();
    for g0 in ex.object.all_gens() {
        let (side, s) = ex.gen_elem[&g0].clone();
        gen_origin.push((if side == 0 { Side::Left } else { Side::Right }, s));
    }
    Ok(BiPushout { object: ex.object, from_left, from_right, gen_origin })
}

impl BiPushout {
    pub fn copair(&self, u: &BiMap, v: &BiMap) -> Result<BiMap> {
        if u.target() != v.target() {
            return Err(Error::DimensionMismatch("cocone targets differ".into()));
        }
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for (g, origin) in self.object.all_gens().into_iter().zip(&self.gen_origin) {
            let img = match origin {
                (Side::Left, s) => u.apply(s)?,
                (Side::Right, s) => v.apply(s)?,
            };
            assign.entry((g.n, g.m)).or_default().push(img);
        }
        BiMap::new(self.object.clone(), u.target().clone(), assign)
    }
}
