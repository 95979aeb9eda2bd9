//! Finite limits and coproducts of simplicial sets.
//!
//! Products are presented by shuffle cells: the non-degenerate simplices of
//! `X × Y` are the pairs of simplices whose surjection parts are jointly
//! injective. Pullbacks are the face-closed subobjects of products where the
//! two composites agree.

use super::{FinSSet, GenId, SSetMap, Simplex};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Collapse the common degeneracy of a pair: returns `(sigma, a', b')` with
/// `a = sigma^*(a')`, `b = sigma^*(b')` and `(a', b')` jointly injective.
pub(crate) fn joint_normalize(a: &Simplex, b: &Simplex) -> (OrdinalMap, Simplex, Simplex) {
    let n = a.epi.dom();
    debug_assert_eq!(n, b.epi.dom());
    let mut keep = vec![0usize];
    for i in 1..=n {
        if a.epi.at(i) != a.epi.at(i - 1) || b.epi.at(i) != b.epi.at(i - 1) {
            keep.push(i);
        }
    }
    let r = keep.len() - 1;
    // sv[i] = index of the last kept position <= i
    let mut sv = Vec::with_capacity(n + 1);
    for i in 0..=n {
        sv.push(keep.iter().take_while(|&&k| k <= i).count() - 1);
    }
    let sigma = OrdinalMap::new(sv, r).unwrap();
    let a2 = Simplex {
        gen: a.gen,
        epi: OrdinalMap::new(keep.iter().map(|&i| a.epi.at(i)).collect(), a.epi.cod()).unwrap(),
    };
    let b2 = Simplex {
        gen: b.gen,
        epi: OrdinalMap::new(keep.iter().map(|&i| b.epi.at(i)).collect(), b.epi.cod()).unwrap(),
    };
    (sigma, a2, b2)
}

fn jointly_injective(a: &OrdinalMap, b: &OrdinalMap) -> bool {
    (1..=a.dom()).all(|i| a.at(i) > a.at(i - 1) || b.at(i) > b.at(i - 1))
}

/// A product together with its projections and the shuffle-cell index used to
/// build maps into it.
pub struct ProductSSet {
    pub object: Arc<FinSSet>,
    pub pr1: SSetMap,
    pub pr2: SSetMap,
    index: BTreeMap<(Simplex, Simplex), GenId>,
}

impl ProductSSet {
    /// The simplex of the product corresponding to a matched pair.
    pub fn simplex(&self, a: &Simplex, b: &Simplex) -> Result<Simplex> {
        if a.level() != b.level() {
            return Err(Error::DimensionMismatch("pair levels differ".into()));
        }
        let (sigma, a2, b2) = joint_normalize(a, b);
        let gen = *self
            .index
            .get(&(a2, b2))
            .ok_or_else(|| Error::Invalid("pair is not a cell of the product".into()))?;
        Ok(Simplex { gen, epi: sigma })
    }

    /// Universal property: the map `⟨u, v⟩` into the product.
    pub fn pair(&self, u: &SSetMap, v: &SSetMap) -> Result<SSetMap> {
        if u.source() != v.source() {
            return Err(Error::DimensionMismatch("cone legs have different sources".into()));
        }
        let src = u.source().clone();
        let mut assign = Vec::new();
        for d in 0..src.gen_counts().len() {
            let mut level = Vec::new();
            for g in src.gens(d) {
                let s = Simplex::of(g);
                level.push(self.simplex(&u.apply(&s)?, &v.apply(&s)?)?);
            }
            assign.push(level);
        }
        SSetMap::new(src, self.object.clone(), assign)
    }

    /// The generator pair backing a product generator.
    pub fn components(&self, g: GenId) -> (&Simplex, &Simplex) {
        let s1 = self.pr1.gen_image(g);
        let s2 = self.pr2.gen_image(g);
        (s1, s2)
    }
}

/// Cartesian product with shuffle-cell generators.
pub fn product(x: &Arc<FinSSet>, y: &Arc<FinSSet>) -> Result<ProductSSet> {
    build_product_like(x, y, &|_, _| Ok(true))
}

fn build_product_like(
    x: &Arc<FinSSet>,
    y: &Arc<FinSSet>,
    admit: &dyn Fn(&Simplex, &Simplex) -> Result<bool>,
) -> Result<ProductSSet> {
    let dx = x.dim().map_or(-1, |d| d as isize);
    let dy = y.dim().map_or(-1, |d| d as isize);
    let top = if dx < 0 || dy < 0 { -1 } else { dx + dy };

    let mut index: BTreeMap<(Simplex, Simplex), GenId> = BTreeMap::new();
    let mut gens_per_dim: Vec<Vec<(Simplex, Simplex)>> = Vec::new();
    for n in 0..=top.max(-1) {
        let n = n as usize;
        let mut here = Vec::new();
        for s in x.level(n)? {
            for t in y.level(n)? {
                if jointly_injective(&s.epi, &t.epi) && admit(&s, &t)? {
                    here.push((s.clone(), t.clone()));
                }
            }
        }
        here.sort();
        crate::budget::check(here.len(), "product generators")?;
        for (i, pair) in here.iter().enumerate() {
            index.insert(pair.clone(), GenId { dim: n, idx: i });
        }
        gens_per_dim.push(here);
    }

    let mut labels = Vec::new();
    let mut faces = Vec::new();
    for (n, here) in gens_per_dim.iter().enumerate() {
        labels.push(
            here.iter()
                .map(|(a, b)| format!("({}|{})", pair_label(x, a), pair_label(y, b)))
                .collect::<Vec<_>>(),
        );
        let mut level = Vec::new();
        for (a, b) in here {
            let mut fs = Vec::new();
            if n > 0 {
                for k in 0..=n {
                    let d = ordinal::face(k, n)?;
                    let fa = x.act(&d, a)?;
                    let fb = y.act(&d, b)?;
                    let (sigma, a2, b2) = joint_normalize(&fa, &fb);
                    let gen = *index.get(&(a2, b2)).expect("face of product cell is a product cell");
                    fs.push(Simplex { gen, epi: sigma });
                }
            }
            level.push(fs);
        }
        faces.push(level);
    }
    while faces.last().is_some_and(|l| l.is_empty()) {
        faces.pop();
        labels.pop();
    }
    let object = Arc::new(FinSSet::build(labels, faces)?);
    let assign1 = gens_per_dim
        .iter()
        .map(|here| here.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    let assign2 = gens_per_dim
        .iter()
        .map(|here| here.iter().map(|(_, b)| b.clone()).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    let trim = |mut v: Vec<Vec<Simplex>>| {
        v.truncate(object.gen_counts().len());
        v
    };
    let pr1 = SSetMap::new(object.clone(), x.clone(), trim(assign1))?;
    let pr2 = SSetMap::new(object.clone(), y.clone(), trim(assign2))?;
    Ok(ProductSSet { object, pr1, pr2, index })
}

/// Pullback of `f : X -> Z` and `g : Y -> Z`, as the subobject of the product
/// where the two composites agree.
pub struct PullbackSSet {
    pub inner: ProductSSet,
}

impl PullbackSSet {
    pub fn object(&self) -> &Arc<FinSSet> {
        &self.inner.object
    }
    pub fn pr1(&self) -> &SSetMap {
        &self.inner.pr1
    }
    pub fn pr2(&self) -> &SSetMap {
        &self.inner.pr2
    }
    pub fn pair(&self, u: &SSetMap, v: &SSetMap) -> Result<SSetMap> {
        self.inner.pair(u, v)
    }
}

pub fn pullback(f: &SSetMap, g: &SSetMap) -> Result<PullbackSSet> {
    if f.target() != g.target() {
        return Err(Error::DimensionMismatch("pullback targets differ".into()));
    }
    let inner = build_product_like(f.source(), g.source(), &|s, t| {
        Ok(f.apply(s)? == g.apply(t)?)
    })?;
    Ok(PullbackSSet { inner })
}

/// Fiber of `f : Y -> X` over a vertex, with its inclusion into `Y`.
pub fn fiber(f: &SSetMap, x: GenId) -> Result<(Arc<FinSSet>, SSetMap)> {
    let v = SSetMap::from_vertex(f.target().clone(), x)?;
    let pb = pullback(&v, f)?;
    Ok((pb.object().clone(), pb.pr2().clone()))
}

fn pair_label(x: &FinSSet, s: &Simplex) -> String {
    if s.is_nondegenerate() {
        x.label(s.gen).to_string()
    } else {
        format!(
            "{}{:?}",
            x.label(s.gen),
            s.epi.values()
        )
    }
}

/// Disjoint union with its two injections.
pub struct CoproductSSet {
    pub object: Arc<FinSSet>,
    pub in1: SSetMap,
    pub in2: SSetMap,
}

impl CoproductSSet {
    /// Universal property: copair of two maps with a common target.
    pub fn copair(&self, u: &SSetMap, v: &SSetMap) -> Result<SSetMap> {
        if u.target() != v.target() {
            return Err(Error::DimensionMismatch("cocone legs have different targets".into()));
        }
        let x = u.source();
        let mut assign: Vec<Vec<Simplex>> =
            vec![Vec::new(); self.object.gen_counts().len()];
        for (d, level) in assign.iter_mut().enumerate() {
            for _ in self.object.gens(d) {
                level.push(Simplex::of(GenId { dim: 0, idx: 0 })); // placeholder
            }
        }
        for g in x.all_gens() {
            let img = self.in1.gen_image(g);
            assign[img.gen.dim][img.gen.idx] = u.gen_image(g).clone();
        }
        for g in v.source().all_gens() {
            let img = self.in2.gen_image(g);
            assign[img.gen.dim][img.gen.idx] = v.gen_image(g).clone();
        }
        SSetMap::new(self.object.clone(), u.target().clone(), assign)
    }
}

pub fn coproduct(x: &Arc<FinSSet>, y: &Arc<FinSSet>) -> Result<CoproductSSet> {
    let xs = x.gen_counts();
    let ys = y.gen_counts();
    let dims = xs.len().max(ys.len());
    let mut labels = Vec::new();
    let mut faces = Vec::new();
    for d in 0..dims {
        let mut lab = Vec::new();
        let mut lev = Vec::new();
        for g in x.gens(d) {
            lab.push(format!("l_{}", x.label(g)));
            lev.push(x.faces_of(g).to_vec());
        }
        let offset = x.gens(d).count();
        for g in y.gens(d) {
            lab.push(format!("r_{}", y.label(g)));
            lev.push(
                y.faces_of(g)
                    .iter()
                    .map(|s| Simplex {
                        gen: GenId {
                            dim: s.gen.dim,
                            idx: s.gen.idx + x.gens(s.gen.dim).count(),
                        },
                        epi: s.epi.clone(),
                    })
                    .collect(),
            );
        }
        let _ = offset;
        lab.shrink_to_fit();
        labels.push(lab);
        faces.push(lev);
    }
    let object = Arc::new(FinSSet::build(labels, faces)?);
    let assign1 = (0..xs.len())
        .map(|d| x.gens(d).map(|g| Simplex::of(GenId { dim: d, idx: g.idx })).collect())
        .collect();
    let assign2 = (0..ys.len())
        .map(|d| {
            y.gens(d)
                .map(|g| Simplex::of(GenId { dim: d, idx: g.idx + x.gens(d).count() }))
                .collect()
        })
        .collect();
    let in1 = SSetMap::new(x.clone(), object.clone(), assign1)?;
    let in2 = SSetMap::new(y.clone(), object.clone(), assign2)?;
    Ok(CoproductSSet { object, in1, in2 })
}
