//! Map enumeration, isomorphism search, mapping spaces, homotopy of maps and
//! connected components.

use super::{product, FinSSet, GenId, SSetMap, Simplex};
use crate::error::{Error, Result};
use crate::ordinal;
use std::collections::BTreeMap;
use std::sync::Arc;

/// All maps `source -> target` whose generator images satisfy `allow`, by
/// backtracking in canonical generator order. Candidate images are tried in
/// canonical simplex order, so the output order is deterministic. `limit`
/// stops the search early.
pub fn homs_filtered(
    source: &Arc<FinSSet>,
    target: &Arc<FinSSet>,
    allow: &dyn Fn(GenId, &Simplex) -> Result<bool>,
    limit: Option<usize>,
) -> Result<Vec<SSetMap>> {
    let gens = source.all_gens();
    let mut assign: BTreeMap<GenId, Simplex> = BTreeMap::new();
    let mut out = Vec::new();
    search(source, target, &gens, 0, allow, &mut assign, &mut out, limit)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    source: &Arc<FinSSet>,
    target: &Arc<FinSSet>,
    gens: &[GenId],
    at: usize,
    allow: &dyn Fn(GenId, &Simplex) -> Result<bool>,
    assign: &mut BTreeMap<GenId, Simplex>,
    out: &mut Vec<SSetMap>,
    limit: Option<usize>,
) -> Result<bool> {
    if limit.is_some_and(|l| out.len() >= l) {
        return Ok(true);
    }
    if at == gens.len() {
        let by_level = (0..source.gen_counts().len())
            .map(|d| source.gens(d).map(|g| assign[&g].clone()).collect())
            .collect();
        out.push(SSetMap::new_unchecked(source.clone(), target.clone(), by_level));
        return Ok(limit.is_some_and(|l| out.len() >= l));
    }
    let g = gens[at];
    // required faces from already-assigned lower generators
    let mut required: Vec<Option<Simplex>> = Vec::new();
    if g.dim > 0 {
        for k in 0..=g.dim {
            let f = source.face(g, k)?;
            let img = assign.get(&f.gen).map(|t| Simplex {
                gen: t.gen,
                epi: t.epi.compose(&f.epi).unwrap(),
            });
            required.push(img);
        }
    }
    for cand in target.level(g.dim)? {
        if !allow(g, &cand)? {
            continue;
        }
        let mut ok = true;
        for (k, req) in required.iter().enumerate() {
            if let Some(req) = req {
                if &target.act(&ordinal::face(k, g.dim)?, &cand)? != req {
                    ok = false;
                    break;
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

/// All maps, unrestricted.
pub fn hom_enum(source: &Arc<FinSSet>, target: &Arc<FinSSet>) -> Result<Vec<SSetMap>> {
    homs_filtered(source, target, &|_, _| Ok(true), None)
}

/// All maps `c : X -> Y` over `Z`, i.e. with `pY ∘ c == pX`.
pub fn maps_over(px: &SSetMap, py: &SSetMap) -> Result<Vec<SSetMap>> {
    if px.target() != py.target() {
        return Err(Error::DimensionMismatch("structure maps have different bases".into()));
    }
    homs_filtered(px.source(), py.source(), &|g, cand| {
        Ok(py.apply(cand)? == *px.gen_image(g))
    }, None)
}

/// Isomorphisms `X -> Y`: generator bijections per dimension commuting with
/// faces, optionally filtered.
pub fn isomorphisms(
    x: &Arc<FinSSet>,
    y: &Arc<FinSSet>,
    allow: &dyn Fn(GenId, GenId) -> Result<bool>,
    limit: Option<usize>,
) -> Result<Vec<SSetMap>> {
    if x.gen_counts() != y.gen_counts() {
        return Ok(Vec::new());
    }
    let gens = x.all_gens();
    let mut assign: BTreeMap<GenId, GenId> = BTreeMap::new();
    let mut used: std::collections::BTreeSet<GenId> = Default::default();
    let mut out = Vec::new();
    iso_search(x, y, &gens, 0, allow, &mut assign, &mut used, &mut out, limit)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    x: &Arc<FinSSet>,
    y: &Arc<FinSSet>,
    gens: &[GenId],
    at: usize,
    allow: &dyn Fn(GenId, GenId) -> Result<bool>,
    assign: &mut BTreeMap<GenId, GenId>,
    used: &mut std::collections::BTreeSet<GenId>,
    out: &mut Vec<SSetMap>,
    limit: Option<usize>,
) -> Result<bool> {
    if limit.is_some_and(|l| out.len() >= l) {
        return Ok(true);
    }
    if at == gens.len() {
        let by_level = (0..x.gen_counts().len())
            .map(|d| x.gens(d).map(|g| Simplex::of(assign[&g])).collect())
            .collect();
        out.push(SSetMap::new_unchecked(x.clone(), y.clone(), by_level));
        return Ok(limit.is_some_and(|l| out.len() >= l));
    }
    let g = gens[at];
    for cand_idx in 0..y.gens(g.dim).count() {
        let h = GenId { dim: g.dim, idx: cand_idx };
        if used.contains(&h) || !allow(g, h)? {
            continue;
        }
        // face compatibility
        let mut ok = true;
        if g.dim > 0 {
            for k in 0..=g.dim {
                let fx = x.face(g, k)?;
                let fy = y.face(h, k)?;
                if fx.epi != fy.epi || assign.get(&fx.gen) != Some(&fy.gen) {
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

/// Is there an isomorphism at all?
pub fn isomorphic(x: &Arc<FinSSet>, y: &Arc<FinSSet>) -> Result<bool> {
    Ok(!isomorphisms(x, y, &|_, _| Ok(true), Some(1))?.is_empty())
}

/// Level `n` of the mapping space `Map(Y, X)`: all maps `Y × Δ[n] -> X`.
pub fn map_space_level(y: &Arc<FinSSet>, x: &Arc<FinSSet>, n: usize) -> Result<Vec<SSetMap>> {
    let p = product(y, &Arc::new(super::standard(n)))?;
    hom_enum(&p.object, x)
}

/// Level `n` of the relative mapping space over `z`: maps `Y × Δ[n] -> X`
/// commuting with the projections to `Z` (the `Δ[n]` factor maps through `Y`).
pub fn map_space_over(
    py: &SSetMap,
    px: &SSetMap,
    n: usize,
) -> Result<Vec<SSetMap>> {
    if py.target() != px.target() {
        return Err(Error::DimensionMismatch("structure maps have different bases".into()));
    }
    let p = product(py.source(), &Arc::new(super::standard(n)))?;
    let over = py.compose(&p.pr1)?;
    homs_filtered(&p.object, px.source(), &|g, cand| {
        Ok(px.apply(cand)? == *over.gen_image(g))
    }, None)
}

/// Are `f, g : X -> Y` over `Z` homotopic over `Z`? Decided as the
/// transitive-symmetric closure of the one-step relation "there is
/// `h : X × Δ[1] -> Y` over `Z` with ends `f` and `g`", since the relative
/// mapping space need not be fibrant for arbitrary inputs.
pub fn homotopic_over(
    px: &SSetMap,
    py: &SSetMap,
    f: &SSetMap,
    g: &SSetMap,
) -> Result<bool> {
    let check_leg = |u: &SSetMap| -> Result<()> {
        if u.source() != px.source() || u.target() != py.source() {
            return Err(Error::Precondition("maps must go X -> Y".into()));
        }
        if py.compose(u)? != *px {
            return Err(Error::Precondition("maps must commute with projections to Z".into()));
        }
        Ok(())
    };
    check_leg(f)?;
    check_leg(g)?;
    let vertices = maps_over(px, py)?;
    if f == g {
        return Ok(true);
    }
    let idx_of = |m: &SSetMap| vertices.iter().position(|v| v == m);
    let (fi, gi) = match (idx_of(f), idx_of(g)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Invalid("maps not found among maps over Z".into())),
    };
    // one-step homotopies
    let x = px.source();
    let interval = Arc::new(super::standard(1));
    let p = product(x, &interval)?;
    let over = px.compose(&p.pr1)?;
    let homotopies = homs_filtered(&p.object, py.source(), &|gid, cand| {
        Ok(py.apply(cand)? == *over.gen_image(gid))
    }, None)?;

    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let end_map = |h: &SSetMap, k: usize| -> Result<SSetMap> {
        let vk = SSetMap::to_standard(x.clone(), 1, &|_| k)?;
        let section = p.pair(&SSetMap::identity(x.clone()), &vk)?;
        h.compose(&section)
    };
    for h in &homotopies {
        let h0 = end_map(h, 0)?;
        let h1 = end_map(h, 1)?;
        if let (Some(a), Some(b)) = (idx_of(&h0), idx_of(&h1)) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    Ok(find(&mut parent, fi) == find(&mut parent, gi))
}

/// Partition of the vertices into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Sorted classes of vertex generators; each class sorted, classes ordered
    /// by smallest member.
    pub classes: Vec<Vec<GenId>>,
}

impl Partition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
    pub fn class_of(&self, v: GenId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }
    /// Smallest identifier in the class of `v`.
    pub fn representative(&self, v: GenId) -> Option<GenId> {
        self.class_of(v).map(|i| self.classes[i][0])
    }
    pub fn same(&self, a: GenId, b: GenId) -> bool {
        self.class_of(a).is_some() && self.class_of(a) == self.class_of(b)
    }
}

/// Connected components: union-find closure of the relation generated by the
/// endpoints of 1-dimensional generators.
pub fn pi0(x: &FinSSet) -> Result<Partition> {
    let n = x.gens(0).count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for e in x.gens(1) {
        let a = x.face(e, 0)?.gen.idx;
        let b = x.face(e, 1)?.gen.idx;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut classes: BTreeMap<usize, Vec<GenId>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(GenId { dim: 0, idx: i });
    }
    Ok(Partition { classes: classes.into_values().collect() })
}

/// Convenience wrapper used by tests and the CLI: a vertex-constant map.
pub fn constant_vertex_map(x: Arc<FinSSet>, n: usize, k: usize) -> Result<SSetMap> {
    SSetMap::to_standard(x, n, &|_| k)
}

