//! Finite simplicial sets in normal form.
//!
//! An object is presented by its non-degenerate simplices ("generators"),
//! graded by dimension, together with a face assignment for every generator:
//! each face is a possibly-degenerate simplex, written uniquely as an epi in
//! the index category applied to a lower generator. Every simplex of every
//! level is then a pair `(epi, generator)`, and the whole functor is
//! recovered from the stored faces.

mod build;
#[cfg(test)]
mod tests;
mod homs;
mod limits;

pub use build::{extract_sset, pushout, Extracted, PushoutSSet, SLevels};
pub use homs::{
    constant_vertex_map, hom_enum, homotopic_over, homs_filtered, isomorphic, isomorphisms,
    map_space_level, map_space_over, maps_over, pi0, Partition,
};
pub use limits::{coproduct, fiber, product, pullback, CoproductSSet, ProductSSet, PullbackSSet};

use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use std::fmt;
use std::sync::Arc;

/// Identifier of a generator: dimension plus insertion index. The canonical
/// order on generators is the derived lexicographic one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId {
    pub dim: usize,
    pub idx: usize,
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dim, self.idx)
    }
}

/// A simplex in normal form: a surjection applied to a generator. The
/// surjection goes `[level] ->> [gen.dim]`; an identity surjection means the
/// simplex is the generator itself.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub gen: GenId,
    pub epi: OrdinalMap,
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.epi.is_identity() {
            write!(f, "{:?}", self.gen)
        } else {
            write!(f, "{:?}*{:?}", self.epi.values(), self.gen)
        }
    }
}

impl Simplex {
    /// The generator seen as a simplex of its own dimension.
    pub fn of(gen: GenId) -> Simplex {
        Simplex { gen, epi: OrdinalMap::identity(gen.dim) }
    }

    /// The level this simplex lives in.
    pub fn level(&self) -> usize {
        self.epi.dom()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.epi.is_identity()
    }
}

/// A finite simplicial set presented by generators and faces.
#[derive(Clone)]
pub struct FinSSet {
    /// `labels[d][i]` is the display name of generator `(d, i)`.
    labels: Vec<Vec<String>>,
    /// `faces[d][i][k]` is the `k`-th face of generator `(d, i)`; present for
    /// `d >= 1`, with `d + 1` entries.
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl PartialEq for FinSSet {
    fn eq(&self, other: &Self) -> bool {
        // labels are cosmetic; structural identity is generator-and-face data
        self.faces == other.faces
            && self.gen_counts() == other.gen_counts()
    }
}
impl Eq for FinSSet {}

impl fmt::Debug for FinSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSSet{:?}", self.gen_counts())
    }
}

impl FinSSet {
    /// Assemble an object from labels and face assignments, validating the
    /// normal-form invariants: faces land one dimension lower and the
    /// simplicial identities hold on every generator.
    pub fn build(labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<FinSSet> {
        if labels.len() != faces.len() {
            return Err(Error::Invalid("labels/faces grading mismatch".into()));
        }
        let x = FinSSet { labels, faces };
        x.validate()?;
        Ok(x)
    }

    /// Check all structural invariants. `build` calls this; deserialized
    /// objects go through it as well.
    pub fn validate(&self) -> Result<()> {
        for (d, level) in self.faces.iter().enumerate() {
            if self.labels[d].len() != level.len() {
                return Err(Error::Invalid(format!("label count mismatch at dim {d}")));
            }
            for (i, fs) in level.iter().enumerate() {
                let expect = if d == 0 { 0 } else { d + 1 };
                if fs.len() != expect {
                    return Err(Error::Invalid(format!(
                        "generator ({d},{i}) has {} faces, expected {expect}",
                        fs.len()
                    )));
                }
                for (k, s) in fs.iter().enumerate() {
                    if s.level() + 1 != d {
                        return Err(Error::Invalid(format!(
                            "face {k} of ({d},{i}) has level {}",
                            s.level()
                        )));
                    }
                    if !self.has_gen(s.gen) {
                        return Err(Error::Invalid(format!(
                            "face {k} of ({d},{i}) references missing generator {:?}",
                            s.gen
                        )));
                    }
                    if s.epi.cod() != s.gen.dim || !s.epi.is_surjective() {
                        return Err(Error::Invalid(format!(
                            "face {k} of ({d},{i}) has a non-normal surjection"
                        )));
                    }
                }
            }
        }
        // simplicial identities: d_i d_j = d_{j-1} d_i for i < j
        for d in 2..self.faces.len() {
            for i in 0..self.faces[d].len() {
                let g = GenId { dim: d, idx: i };
                for j in 1..=d {
                    for k in 0..j {
                        let a = self.act(&ordinal::face(k, d - 1)?, &self.face(g, j)?)?;
                        let b = self.act(&ordinal::face(j - 1, d - 1)?, &self.face(g, k)?)?;
                        if a != b {
                            return Err(Error::Invalid(format!(
                                "simplicial identity d_{k} d_{j} failed on {g:?}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> FinSSet {
        FinSSet { labels: Vec::new(), faces: Vec::new() }
    }

    /// Number of generators in each dimension.
    pub fn gen_counts(&self) -> Vec<usize> {
        self.faces.iter().map(|l| l.len()).collect()
    }

    pub fn gen_count(&self) -> usize {
        self.faces.iter().map(|l| l.len()).sum()
    }

    /// Largest dimension carrying a generator, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        (0..self.faces.len()).filter(|&d| !self.faces[d].is_empty()).max()
    }

    pub fn has_gen(&self, g: GenId) -> bool {
        g.dim < self.faces.len() && g.idx < self.faces[g.dim].len()
    }

    /// Generators of one dimension, in canonical order.
    pub fn gens(&self, dim: usize) -> impl Iterator<Item = GenId> + '_ {
        let n = if dim < self.faces.len() { self.faces[dim].len() } else { 0 };
        (0..n).map(move |idx| GenId { dim, idx })
    }

    /// All generators in canonical order.
    pub fn all_gens(&self) -> Vec<GenId> {
        (0..self.faces.len()).flat_map(|d| self.gens(d)).collect()
    }

    pub fn label(&self, g: GenId) -> &str {
        &self.labels[g.dim][g.idx]
    }

    pub fn labels(&self) -> &Vec<Vec<String>> {
        &self.labels
    }

    /// Generator index by label, if present.
    pub fn gen_by_label(&self, label: &str) -> Option<GenId> {
        for (d, level) in self.labels.iter().enumerate() {
            if let Some(idx) = level.iter().position(|l| l == label) {
                return Some(GenId { dim: d, idx });
            }
        }
        None
    }

    /// The `k`-th stored face of a generator (dimension must be positive).
    pub fn face(&self, g: GenId, k: usize) -> Result<Simplex> {
        if g.dim == 0 {
            return Err(Error::IndexRange(format!("face of a vertex {g:?}")));
        }
        self.faces[g.dim][g.idx]
            .get(k)
            .cloned()
            .ok_or_else(|| Error::IndexRange(format!("face {k} of {g:?}")))
    }

    pub fn faces_of(&self, g: GenId) -> &[Simplex] {
        &self.faces[g.dim][g.idx]
    }

    /// Functorial action: apply `τ : [m] -> [level of s]` to a simplex.
    pub fn act(&self, tau: &OrdinalMap, s: &Simplex) -> Result<Simplex> {
        let c = s.epi.compose(tau)?;
        let (sigma, delta) = c.epi_mono_factor();
        let t = self.act_injective(&delta, s.gen)?;
        Ok(Simplex { epi: t.epi.compose(&sigma)?, gen: t.gen })
    }

    fn act_injective(&self, delta: &OrdinalMap, g: GenId) -> Result<Simplex> {
        if delta.is_identity() {
            return Ok(Simplex::of(g));
        }
        // peel the largest missing index: delta = d^a ∘ delta'
        let a = *delta.missing_indices().last().unwrap();
        let dp = OrdinalMap::new(
            delta.values().iter().map(|&v| if v < a { v } else { v - 1 }).collect(),
            delta.cod() - 1,
        )?;
        let f = self.face(g, a)?;
        self.act(&dp, &f)
    }

    /// All simplices in one level, in canonical order.
    pub fn level(&self, n: usize) -> Result<Vec<Simplex>> {
        let mut out = Vec::new();
        for k in 0..=n.min(self.faces.len().saturating_sub(1)) {
            let epis = ordinal::enumerate_epis(n, k);
            for idx in 0..self.faces.get(k).map_or(0, |l| l.len()) {
                for e in &epis {
                    out.push(Simplex { gen: GenId { dim: k, idx }, epi: e.clone() });
                }
            }
        }
        crate::budget::check(out.len(), "simplicial level")?;
        Ok(out)
    }

    pub fn level_count(&self, n: usize) -> Result<usize> {
        Ok(self.level(n)?.len())
    }

    /// Vertices, i.e. dimension-0 generators.
    pub fn vertices(&self) -> Vec<GenId> {
        self.gens(0).collect()
    }
}

/// Standard `n`-simplex: generators in dimension `d` are the injections
/// `[d] -> [n]`, faces are composed injections.
pub fn standard(n: usize) -> FinSSet {
    let mut labels = Vec::new();
    let mut faces = Vec::new();
    for d in 0..=n {
        let monos = ordinal::enumerate_monos(d, n);
        labels.push(
            monos
                .iter()
                .map(|m| m.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))
                .collect(),
        );
        let mut level = Vec::new();
        for m in &monos {
            if d == 0 {
                level.push(Vec::new());
                continue;
            }
            let lower = ordinal::enumerate_monos(d - 1, n);
            let mut fs = Vec::new();
            for k in 0..=d {
                let comp = m.compose(&ordinal::face(k, d).unwrap()).unwrap();
                let idx = lower.binary_search(&comp).unwrap();
                fs.push(Simplex::of(GenId { dim: d - 1, idx }));
            }
            level.push(fs);
        }
        faces.push(level);
    }
    FinSSet { labels, faces }
}

/// The simplex of `standard(n)` classified by a monotone map into `[n]`.
pub fn standard_simplex(tau: &OrdinalMap) -> Simplex {
    let (sigma, delta) = tau.epi_mono_factor();
    let monos = ordinal::enumerate_monos(delta.dom(), tau.cod());
    let idx = monos.binary_search(&delta).unwrap();
    Simplex { gen: GenId { dim: delta.dom(), idx }, epi: sigma }
}

/// Recover the classifying monotone map of a simplex of `standard(n)`.
pub fn standard_decode(n: usize, s: &Simplex) -> OrdinalMap {
    let monos = ordinal::enumerate_monos(s.gen.dim, n);
    monos[s.gen.idx].compose(&s.epi).unwrap()
}

/// Keep the generators selected by `keep`; fails if the selection is not
/// closed under faces. Returns the subobject and its inclusion.
pub fn subobject(x: &FinSSet, keep: &dyn Fn(GenId) -> bool) -> Result<(FinSSet, SSetMap)> {
    let mut new_idx = vec![Vec::new(); x.faces.len()];
    let mut labels = vec![Vec::new(); x.faces.len()];
    for g in x.all_gens() {
        if keep(g) {
            new_idx[g.dim].push(g.idx);
            labels[g.dim].push(x.label(g).to_string());
        }
    }
    let lookup = |g: GenId| -> Result<GenId> {
        new_idx[g.dim]
            .binary_search(&g.idx)
            .map(|idx| GenId { dim: g.dim, idx })
            .map_err(|_| Error::Invalid(format!("subobject not face-closed at {g:?}")))
    };
    let mut faces = vec![Vec::new(); x.faces.len()];
    for (d, level) in new_idx.iter().enumerate() {
        for &old in level {
            let fs = x.faces[d][old]
                .iter()
                .map(|s| Ok(Simplex { gen: lookup(s.gen)?, epi: s.epi.clone() }))
                .collect::<Result<Vec<_>>>()?;
            faces[d].push(fs);
        }
    }
    while faces.last().is_some_and(|l| l.is_empty()) {
        faces.pop();
        labels.pop();
    }
    let sub = FinSSet { labels, faces };
    let mut assign: Vec<Vec<Simplex>> = new_idx
        .iter()
        .enumerate()
        .map(|(d, level)| level.iter().map(|&old| Simplex::of(GenId { dim: d, idx: old })).collect())
        .collect();
    assign.truncate(sub.faces.len());
    let include = SSetMap::new_unchecked(Arc::new(sub.clone()), Arc::new(x.clone()), assign);
    Ok((sub, include))
}

/// Boundary of the standard simplex: everything but the top generator.
pub fn boundary(n: usize) -> Result<FinSSet> {
    if n == 0 {
        return Err(Error::IndexRange("boundary(0) is the empty object; use FinSSet::empty".into()));
    }
    Ok(subobject(&standard(n), &|g| g.dim < n)?.0)
}

/// Horn: drop the top generator and its `k`-th codimension-one face.
pub fn horn(n: usize, k: usize) -> Result<FinSSet> {
    if n == 0 || k > n {
        return Err(Error::IndexRange(format!("horn({n},{k})")));
    }
    let missing = ordinal::face(k, n)?;
    let monos = ordinal::enumerate_monos(n - 1, n);
    let drop_idx = monos.binary_search(&missing).unwrap();
    Ok(subobject(&standard(n), &|g| {
        g.dim < n && !(g.dim == n - 1 && g.idx == drop_idx)
    })?
    .0)
}

/// The subobject generated by generators of dimension `<= n` (`n = -1` gives
/// the empty object).
pub fn skeleton(x: &FinSSet, n: isize) -> Result<FinSSet> {
    Ok(subobject(x, &|g| (g.dim as isize) <= n)?.0)
}

/// A map of finite simplicial sets, stored by generator images.
#[derive(Clone, PartialEq, Eq)]
pub struct SSetMap {
    source: Arc<FinSSet>,
    target: Arc<FinSSet>,
    /// `assign[d][i]` is the image of generator `(d, i)`, a simplex of level `d`.
    assign: Vec<Vec<Simplex>>,
}

impl fmt::Debug for SSetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SSetMap{:?}", self.assign)
    }
}

impl SSetMap {
    pub fn new(source: Arc<FinSSet>, target: Arc<FinSSet>, assign: Vec<Vec<Simplex>>) -> Result<SSetMap> {
        let f = SSetMap { source, target, assign };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinSSet>,
        target: Arc<FinSSet>,
        assign: Vec<Vec<Simplex>>,
    ) -> SSetMap {
        SSetMap { source, target, assign }
    }

    pub fn validate(&self) -> Result<()> {
        if self.assign.len() != self.source.faces.len() {
            return Err(Error::Invalid("assignment grading mismatch".into()));
        }
        for (d, level) in self.assign.iter().enumerate() {
            if level.len() != self.source.faces[d].len() {
                return Err(Error::Invalid(format!("assignment count mismatch at dim {d}")));
            }
            for (i, s) in level.iter().enumerate() {
                if s.level() != d {
                    return Err(Error::Invalid(format!(
                        "image of ({d},{i}) has level {}",
                        s.level()
                    )));
                }
                if !self.target.has_gen(s.gen) {
                    return Err(Error::Invalid(format!(
                        "image of ({d},{i}) references missing target generator"
                    )));
                }
            }
        }
        // commutes with faces
        for d in 1..self.assign.len() {
            for i in 0..self.assign[d].len() {
                let g = GenId { dim: d, idx: i };
                for k in 0..=d {
                    let via_source = self.apply(&self.source.face(g, k)?)?;
                    let via_target =
                        self.target.act(&ordinal::face(k, d)?, &self.assign[d][i])?;
                    if via_source != via_target {
                        return Err(Error::Invalid(format!(
                            "map does not commute with face {k} of {g:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: Arc<FinSSet>) -> SSetMap {
        let assign = (0..x.faces.len())
            .map(|d| x.gens(d).map(Simplex::of).collect())
            .collect();
        SSetMap { source: x.clone(), target: x, assign }
    }

    pub fn source(&self) -> &Arc<FinSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSSet> {
        &self.target
    }

    pub fn gen_image(&self, g: GenId) -> &Simplex {
        &self.assign[g.dim][g.idx]
    }

    pub fn assignments(&self) -> &Vec<Vec<Simplex>> {
        &self.assign
    }

    /// Image of an arbitrary simplex.
    pub fn apply(&self, s: &Simplex) -> Result<Simplex> {
        let t = self.gen_image(s.gen);
        Ok(Simplex { gen: t.gen, epi: t.epi.compose(&s.epi)? })
    }

    /// `g.compose(f)` is `g ∘ f`.
    pub fn compose(&self, f: &SSetMap) -> Result<SSetMap> {
        if f.target.as_ref() != self.source.as_ref() {
            return Err(Error::DimensionMismatch("composition source/target mismatch".into()));
        }
        let assign = f
            .assign
            .iter()
            .map(|level| level.iter().map(|s| self.apply(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(SSetMap { source: f.source.clone(), target: self.target.clone(), assign })
    }

    /// Bijective on generators with identity surjections.
    pub fn is_isomorphism(&self) -> bool {
        if self.source.gen_counts() != self.target.gen_counts() {
            return false;
        }
        for level in &self.assign {
            let mut seen = std::collections::BTreeSet::new();
            for s in level {
                if !s.is_nondegenerate() || !seen.insert(s.gen) {
                    return false;
                }
            }
        }
        true
    }

    /// The unique map to the point.
    pub fn terminal(x: Arc<FinSSet>) -> SSetMap {
        let pt = Arc::new(standard(0));
        let v = GenId { dim: 0, idx: 0 };
        let assign = (0..x.faces.len())
            .map(|d| {
                (0..x.faces[d].len())
                    .map(|_| Simplex {
                        gen: v,
                        epi: OrdinalMap::new(vec![0; d + 1], 0).unwrap(),
                    })
                    .collect()
            })
            .collect();
        SSetMap { source: x, target: pt, assign }
    }

    /// The map from the point classifying a vertex.
    pub fn from_vertex(x: Arc<FinSSet>, v: GenId) -> Result<SSetMap> {
        if v.dim != 0 || !x.has_gen(v) {
            return Err(Error::Precondition(format!("{v:?} is not a vertex")));
        }
        Ok(SSetMap {
            source: Arc::new(standard(0)),
            target: x,
            assign: vec![vec![Simplex::of(v)]],
        })
    }

    /// A map into `standard(n)` from its value on vertices: every generator
    /// goes to the simplex classified by its vertex word.
    pub fn to_standard(x: Arc<FinSSet>, n: usize, vertex_value: &dyn Fn(GenId) -> usize) -> Result<SSetMap> {
        let target = Arc::new(standard(n));
        let mut assign = Vec::new();
        for d in 0..x.faces.len() {
            let mut level = Vec::new();
            for g in x.gens(d) {
                let mut word = Vec::new();
                for v in 0..=d {
                    let vx = x.act(&ordinal::vertex(v, d)?, &Simplex::of(g))?;
                    word.push(vertex_value(vx.gen));
                }
                let tau = OrdinalMap::new(word, n).map_err(|_| {
                    Error::Invalid(format!("vertex word of {g:?} is not monotone"))
                })?;
                level.push(standard_simplex(&tau));
            }
            assign.push(level);
        }
        SSetMap::new(x, target, assign)
    }
}
