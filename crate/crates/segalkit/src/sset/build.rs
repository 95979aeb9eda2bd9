//! Extraction of normal-form presentations from levelwise data, and the
//! colimits built on top of it.
//!
//! A [`SLevels`] value answers "what are the simplices in level `n`" and "how
//! does a monotone map act"; the extractor finds the non-degenerate elements
//! level by level and reassembles a [`FinSSet`], keeping the correspondence
//! tables so structural maps can be transported.

use super::{FinSSet, GenId, SSetMap, Simplex};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Levelwise presentation of a simplicial set.
pub trait SLevels {
    type Elt: Clone + Ord + std::fmt::Debug;
    /// Elements of level `n`, sorted and deduplicated.
    fn elems(&self, n: usize) -> Result<Vec<Self::Elt>>;
    /// Action of `tau : [m] -> [n]` on an element of level `n`.
    fn act(&self, tau: &OrdinalMap, e: &Self::Elt) -> Result<Self::Elt>;
}

impl SLevels for FinSSet {
    type Elt = Simplex;
    fn elems(&self, n: usize) -> Result<Vec<Simplex>> {
        let mut l = self.level(n)?;
        l.sort();
        Ok(l)
    }
    fn act(&self, tau: &OrdinalMap, e: &Simplex) -> Result<Simplex> {
        FinSSet::act(self, tau, e)
    }
}

/// Result of normal-form extraction: the object plus, per level, the element
/// list and each element's normal form.
pub struct Extracted<E> {
    pub object: Arc<FinSSet>,
    pub levels: Vec<Vec<E>>,
    pub normal: Vec<BTreeMap<E, Simplex>>,
    /// The element realizing each generator.
    pub gen_elem: BTreeMap<GenId, E>,
}

impl<E: Clone + Ord + std::fmt::Debug> Extracted<E> {
    pub fn normal_form(&self, n: usize, e: &E) -> Result<Simplex> {
        self.normal
            .get(n)
            .and_then(|m| m.get(e))
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("element {e:?} unknown at level {n}")))
    }
}

/// Extract a normal-form presentation from levels `0..=max_dim`. The oracle
/// must present a functor whose non-degenerate simplices all live in
/// dimensions `<= max_dim`; the simplicial identities are re-verified on the
/// extracted object.
pub fn extract_sset<O: SLevels>(oracle: &O, max_dim: isize) -> Result<Extracted<O::Elt>> {
    let mut levels: Vec<Vec<O::Elt>> = Vec::new();
    let mut normal: Vec<BTreeMap<O::Elt, Simplex>> = Vec::new();
    let mut gen_elem = BTreeMap::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();

    for n in 0..=max_dim.max(-1) {
        let n = n as usize;
        let elems = oracle.elems(n)?;
        crate::budget::check(elems.len(), "level extraction")?;
        let mut nf_here: BTreeMap<O::Elt, Simplex> = BTreeMap::new();
        let mut lab = Vec::new();
        let mut fcs = Vec::new();
        for e in &elems {
            let mut done = false;
            for i in 0..n {
                // e degenerate through sigma^i iff reinserting the i-th face
                // reproduces it
                let y = oracle.act(&ordinal::face(i, n)?, e)?;
                let back = oracle.act(&ordinal::degeneracy(i, n - 1)?, &y)?;
                if back == *e {
                    let under = normal[n - 1]
                        .get(&y)
                        .ok_or_else(|| Error::Invalid("oracle level not closed under faces".into()))?;
                    let epi = under.epi.compose(&ordinal::degeneracy(i, n - 1)?)?;
                    nf_here.insert(e.clone(), Simplex { gen: under.gen, epi });
                    done = true;
                    break;
                }
            }
            if done {
                continue;
            }
            // new generator
            let g = GenId { dim: n, idx: lab.len() };
            lab.push(format!("e{}_{}", n, lab.len()));
            if n > 0 {
                let mut fs = Vec::new();
                for k in 0..=n {
                    let y = oracle.act(&ordinal::face(k, n)?, e)?;
                    let s = normal[n - 1]
                        .get(&y)
                        .ok_or_else(|| Error::Invalid("oracle level not closed under faces".into()))?;
                    fs.push(s.clone());
                }
                fcs.push(fs);
            } else {
                fcs.push(Vec::new());
            }
            nf_here.insert(e.clone(), Simplex::of(g));
            gen_elem.insert(g, e.clone());
        }
        levels.push(elems);
        normal.push(nf_here);
        labels.push(lab);
        faces.push(fcs);
    }
    while faces.last().is_some_and(|l| l.is_empty()) {
        faces.pop();
        labels.pop();
    }
    let object = Arc::new(FinSSet::build(labels, faces)?);
    Ok(Extracted { object, levels, normal, gen_elem })
}

enum Side {
    Left,
    Right,
}

/// Pushout data: the object, the two structural maps, and enough bookkeeping
/// to produce universal maps out of it.
pub struct PushoutSSet {
    pub object: Arc<FinSSet>,
    pub from_left: SSetMap,
    pub from_right: SSetMap,
    gen_origin: Vec<(Side, Simplex)>,
}

struct QuotientLevels<'a> {
    f: &'a SSetMap,
    g: &'a SSetMap,
    /// per level: representative of each class
    reps: std::cell::RefCell<BTreeMap<usize, BTreeMap<(u8, Simplex), (u8, Simplex)>>>,
}

impl<'a> QuotientLevels<'a> {
    fn rep_map(&self, n: usize) -> Result<BTreeMap<(u8, Simplex), (u8, Simplex)>> {
        if let Some(m) = self.reps.borrow().get(&n) {
            return Ok(m.clone());
        }
        let x = self.f.target();
        let y = self.g.target();
        let mut all: Vec<(u8, Simplex)> = Vec::new();
        all.extend(x.level(n)?.into_iter().map(|s| (0u8, s)));
        all.extend(y.level(n)?.into_iter().map(|s| (1u8, s)));
        all.sort();
        // union-find keyed by position
        let pos: BTreeMap<(u8, Simplex), usize> =
            all.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut parent: Vec<usize> = (0..all.len()).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for a in self.f.source().level(n)? {
            let fa = (0u8, self.f.apply(&a)?);
            let ga = (1u8, self.g.apply(&a)?);
            let (i, j) = (pos[&fa], pos[&ga]);
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            // keep the smaller element as root for canonical representatives
            let (lo, hi) = if all[ri] <= all[rj] { (ri, rj) } else { (rj, ri) };
            parent[hi] = lo;
        }
        let mut map = BTreeMap::new();
        for (i, e) in all.iter().enumerate() {
            let r = find(&mut parent, i);
            map.insert(e.clone(), all[r].clone());
        }
        self.reps.borrow_mut().insert(n, map.clone());
        Ok(map)
    }
}

impl<'a> SLevels for QuotientLevels<'a> {
    type Elt = (u8, Simplex);
    fn elems(&self, n: usize) -> Result<Vec<(u8, Simplex)>> {
        let m = self.rep_map(n)?;
        let mut reps: Vec<_> = m.values().cloned().collect();
        reps.sort();
        reps.dedup();
        Ok(reps)
    }
    fn act(&self, tau: &OrdinalMap, e: &(u8, Simplex)) -> Result<(u8, Simplex)> {
        let moved = if e.0 == 0 {
            (0u8, self.f.target().act(tau, &e.1)?)
        } else {
            (1u8, self.g.target().act(tau, &e.1)?)
        };
        Ok(self.rep_map(tau.dom())?[&moved].clone())
    }
}

/// Pushout of `X <-f- A -g-> Y`, computed levelwise and renormalized.
pub fn pushout(f: &SSetMap, g: &SSetMap) -> Result<PushoutSSet> {
    if f.source() != g.source() {
        return Err(Error::DimensionMismatch("pushout legs have different sources".into()));
    }
    let oracle = QuotientLevels { f, g, reps: Default::default() };
    let dx = f.target().dim().map_or(-1, |d| d as isize);
    let dy = g.target().dim().map_or(-1, |d| d as isize);
    let ex = extract_sset(&oracle, dx.max(dy))?;

    let map_from = |side: u8, obj: &Arc<FinSSet>| -> Result<SSetMap> {
        let mut assign = Vec::new();
        for d in 0..obj.gen_counts().len() {
            let mut level = Vec::new();
            for gsrc in obj.gens(d) {
                let e = oracle.rep_map(d)?[&(side, Simplex::of(gsrc))].clone();
                level.push(ex.normal_form(d, &e)?);
            }
            assign.push(level);
        }
        SSetMap::new(obj.clone(), ex.object.clone(), assign)
    };
    let from_left = map_from(0, f.target())?;
    let from_right = map_from(1, g.target())?;

    let mut gen_origin = Vec::new();
    for g0 in ex.object.all_gens() {
        let (side, s) = ex.gen_elem[&g0].clone();
        gen_origin.push((if side == 0 { Side::Left } else { Side::Right }, s));
    }
    Ok(PushoutSSet { object: ex.object, from_left, from_right, gen_origin })
}

impl PushoutSSet {
    /// Universal property: the map out of the pushout induced by a cocone
    /// `u : X -> T`, `v : Y -> T` with `u ∘ f == v ∘ g`.
    pub fn copair(&self, u: &SSetMap, v: &SSetMap) -> Result<SSetMap> {
        if u.target() != v.target() {
            return Err(Error::DimensionMismatch("cocone targets differ".into()));
        }
        let mut assign: Vec<Vec<Simplex>> = vec![Vec::new(); self.object.gen_counts().len()];
        for (g, origin) in self.object.all_gens().into_iter().zip(&self.gen_origin) {
            let img = match origin {
                (Side::Left, s) => u.apply(s)?,
                (Side::Right, s) => v.apply(s)?,
            };
            assign[g.dim].push(img);
        }
        SSetMap::new(self.object.clone(), u.target().clone(), assign)
    }
}
