//! Map enumeration and isomorphism search for bisimplicial sets.

use super::{BiGenId, BiMap, BiSimplex, FinBiSet};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use std::collections::BTreeMap;
use std::sync::Arc;

/// All maps `source -> target` with generator images satisfying `allow`,
/// backtracking in canonical generator order (bidegrees lexicographically).
pub fn bi_homs_filtered(
    source: &Arc<FinBiSet>,
    target: &Arc<FinBiSet>,
    allow: &dyn Fn(BiGenId, &BiSimplex) -> Result<bool>,
    limit: Option<usize>,
) -> Result<Vec<BiMap>> {
    let gens = source.all_gens();
    let mut assign: BTreeMap<BiGenId, BiSimplex> = BTreeMap::new();
    let mut out = Vec::new();
    search(source, target, &gens, 0, allow, &mut assign, &mut out, limit)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    source: &Arc<FinBiSet>,
    target: &Arc<FinBiSet>,
    gens: &[BiGenId],
    at: usize,
    allow: &dyn Fn(BiGenId, &BiSimplex) -> Result<bool>,
    assign: &mut BTreeMap<BiGenId, BiSimplex>,
    out: &mut Vec<BiMap>,
    limit: Option<usize>,
) -> Result<bool> {
    if limit.is_some_and(|l| out.len() >= l) {
        return Ok(true);
    }
    if at == gens.len() {
        let mut by_level: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for g in gens {
            by_level.entry((g.n, g.m)).or_default().push(assign[g].clone());
        }
        out.push(BiMap::new_unchecked(source.clone(), target.clone(), by_level));
        return Ok(limit.is_some_and(|l| out.len() >= l));
    }
    let g = gens[at];
    // face requirements from already-assigned generators
    let mut req1: Vec<Option<BiSimplex>> = Vec::new();
    let mut req2: Vec<Option<BiSimplex>> = Vec::new();
    if g.n > 0 {
        for k in 0..=g.n {
            let f = source.face1(g, k)?;
            req1.push(match assign.get(&f.gen) {
                Some(t) => Some(BiSimplex {
                    gen: t.gen,
                    e1: t.e1.compose(&f.e1)?,
                    e2: t.e2.compose(&f.e2)?,
                }),
                None => None,
            });
        }
    }
    if g.m > 0 {
        for k in 0..=g.m {
            let f = source.face2(g, k)?;
            req2.push(match assign.get(&f.gen) {
                Some(t) => Some(BiSimplex {
                    gen: t.gen,
                    e1: t.e1.compose(&f.e1)?,
                    e2: t.e2.compose(&f.e2)?,
                }),
                None => None,
            });
        }
    }
    for cand in target.level(g.n, g.m)? {
        if !allow(g, &cand)? {
            continue;
        }
        let mut ok = true;
        for (k, req) in req1.iter().enumerate() {
            if let Some(req) = req {
                if &target.act(&ordinal::face(k, g.n)?, &OrdinalMap::identity(g.m), &cand)? != req {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            for (k, req) in req2.iter().enumerate() {
                if let Some(req) = req {
                    if &target.act(&OrdinalMap::identity(g.n), &ordinal::face(k, g.m)?, &cand)? != req
                    {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        assign.insert(g, cand);
        if search(source, target, gens, at + 1, allow, assign, out, limit)? {
            return Ok(true);
        }
        assign.remove(&g);
    }
    Ok(false)
}

pub fn bi_hom_enum(source: &Arc<FinBiSet>, target: &Arc<FinBiSet>) -> Result<Vec<BiMap>> {
    bi_homs_filtered(source, target, &|_, _| Ok(true), None)
}

/// All maps over a common base: `c` with `py ∘ c == px`.
pub fn bi_maps_over(px: &BiMap, py: &BiMap) -> Result<Vec<BiMap>> {
    if px.target() != py.target() {
        return Err(Error::DimensionMismatch("structure maps have different bases".into()));
    }
    bi_homs_filtered(px.source(), py.source(), &|g, cand| {
        Ok(py.apply(cand)? == *px.gen_image(g))
    }, None)
}

/// Isomorphism search with canonical-order pruning.
pub fn bi_isomorphisms(
    x: &Arc<FinBiSet>,
    y: &Arc<FinBiSet>,
    allow: &dyn Fn(BiGenId, BiGenId) -> Result<bool>,
    limit: Option<usize>,
) -> Result<Vec<BiMap>> {
    if x.gen_counts() != y.gen_counts() {
        return Ok(Vec::new());
    }
    let gens = x.all_gens();
    let mut assign: BTreeMap<BiGenId, BiGenId> = BTreeMap::new();
    let mut used: std::collections::BTreeSet<BiGenId> = Default::default();
    let mut out = Vec::new();
    iso_search(x, y, &gens, 0, allow, &mut assign, &mut used, &mut out, limit)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    x: &Arc<FinBiSet>,
    y: &Arc<FinBiSet>,
    gens: &[BiGenId],
    at: usize,
    allow: &dyn Fn(BiGenId, BiGenId) -> Result<bool>,
    assign: &mut BTreeMap<BiGenId, BiGenId>,
    used: &mut std::collections::BTreeSet<BiGenId>,
    out: &mut Vec<BiMap>,
    limit: Option<usize>,
) -> Result<bool> {
    if limit.is_some_and(|l| out.len() >= l) {
        return Ok(true);
    }
    if at == gens.len() {
        let mut by_level: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for g in gens {
            by_level.entry((g.n, g.m)).or_default().push(BiSimplex::of(assign[g]));
        }
        out.push(BiMap::new_unchecked(x.clone(), y.clone(), by_level));
        return Ok(limit.is_some_and(|l| out.len() >= l));
    }
    let g = gens[at];
    for h in y.gens_at(g.n, g.m) {
        if used.contains(&h) || !allow(g, h)? {
            continue;
        }
        let mut ok = true;
        if g.n > 0 {
            for k in 0..=g.n {
                let fx = x.face1(g, k)?;
                let fy = y.face1(h, k)?;
                if fx.e1 != fy.e1 || fx.e2 != fy.e2 || assign.get(&fx.gen) != Some(&fy.gen) {
                    ok = false;
                    break;
                }
            }
        }
        if ok && g.m > 0 {
            for k in 0..=g.m {
                let fx = x.face2(g, k)?;
                let fy = y.face2(h, k)?;
                if fx.e1 != fy.e1 || fx.e2 != fy.e2 || assign.get(&fx.gen) != Some(&fy.gen) {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        assign.insert(g, h);
        used.insert(h);
        if iso_search(x, y, gens, at + 1, allow, assign, used, out, limit)? {
            return Ok(true);
        }
        assign.remove(&g);
        used.remove(&h);
    }
    Ok(false)
}

pub fn bi_isomorphic(x: &Arc<FinBiSet>, y: &Arc<FinBiSet>) -> Result<bool> {
    Ok(!bi_isomorphisms(x, y, &|_, _| Ok(true), Some(1))?.is_empty())
}
