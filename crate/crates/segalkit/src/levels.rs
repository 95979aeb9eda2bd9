//! Virtual simplicial sets: level oracles for objects with no finite global
//! presentation, chiefly mapping spaces. Levels are cached as they are
//! queried, and functoriality of the transition action is revalidated on each
//! newly materialized level.

use crate::bisset::{bi_homs_filtered, bi_product, constant, BiMap, BiProduct, BiSimplex, FinBiSet};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use crate::sset::{standard, SLevels};
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;
use std::sync::Arc;

/// The second-axis levels of a bisimplicial set at a frozen first index.
pub struct BiRow<'a> {
    pub x: &'a Arc<FinBiSet>,
    pub n: usize,
}

impl<'a> SLevels for BiRow<'a> {
    type Elt = BiSimplex;
    fn elems(&self, m: usize) -> Result<Vec<BiSimplex>> {
        self.x.level(self.n, m)
    }
    fn act(&self, tau: &OrdinalMap, e: &BiSimplex) -> Result<BiSimplex> {
        self.x.act(&OrdinalMap::identity(self.n), tau, e)
    }
}

/// Mapping-space levels `m ↦ Hom_Z(A × Δ[m], X)`, optionally over a base.
/// Elements are indices into the canonical enumeration of each level.
pub struct MapSpace {
    a: Arc<FinBiSet>,
    x: Arc<FinBiSet>,
    /// structure maps `(A -> Z, X -> Z)` for the relative variant
    over: Option<(BiMap, BiMap)>,
    cache: RefCell<BTreeMap<usize, Rc<LevelData>>>,
}

pub struct LevelData {
    pub product: BiProduct,
    pub maps: Vec<BiMap>,
}

impl MapSpace {
    pub fn new(a: Arc<FinBiSet>, x: Arc<FinBiSet>, over: Option<(BiMap, BiMap)>) -> Result<MapSpace> {
        if let Some((pa, px)) = &over {
            if pa.target() != px.target() || pa.source() != &a || px.source() != &x {
                return Err(Error::Precondition("mapping space structure maps mismatch".into()));
            }
        }
        Ok(MapSpace { a, x, over, cache: RefCell::new(BTreeMap::new()) })
    }

    pub fn domain(&self) -> &Arc<FinBiSet> {
        &self.a
    }

    pub fn target(&self) -> &Arc<FinBiSet> {
        &self.x
    }

    /// Materialize level `m`.
    pub fn level(&self, m: usize) -> Result<Rc<LevelData>> {
        if let Some(d) = self.cache.borrow().get(&m) {
            return Ok(d.clone());
        }
        let cyl = Arc::new(constant(&standard(m)));
        let product = bi_product(&self.a, &cyl)?;
        let maps = match &self.over {
            None => bi_homs_filtered(&product.object, &self.x, &|_, _| Ok(true), None)?,
            Some((pa, px)) => {
                let struct_map = pa.compose(&product.pr1)?;
                bi_homs_filtered(&product.object, &self.x, &|g, cand| {
                    Ok(px.apply(cand)? == *struct_map.gen_image(g))
                }, None)?
            }
        };
        crate::budget::check(maps.len(), "mapping space level")?;
        let data = Rc::new(LevelData { product, maps });
        self.cache.borrow_mut().insert(m, data.clone());
        self.revalidate(m)?;
        Ok(data)
    }

    /// The underlying map of an element.
    pub fn map_at(&self, m: usize, idx: usize) -> Result<BiMap> {
        let d = self.level(m)?;
        d.maps
            .get(idx)
            .cloned()
            .ok_or_else(|| Error::IndexRange(format!("mapping space element {idx} at level {m}")))
    }

    /// Index of a map in a level, if present.
    pub fn index_of(&self, m: usize, f: &BiMap) -> Result<usize> {
        let d = self.level(m)?;
        d.maps
            .iter()
            .position(|g| g == f)
            .ok_or_else(|| Error::Invalid("map not an element of the mapping space level".into()))
    }

    /// Transition along `τ : [m'] -> [m]`: precompose with `A × Δ[τ]`.
    pub fn transition(&self, tau: &OrdinalMap, idx: usize) -> Result<usize> {
        let src = self.level(tau.cod())?;
        let dst = self.level(tau.dom())?;
        let f = &src.maps[idx];
        // induced map A × Δ[m'] -> A × Δ[m]
        let tau_map = constant_map_of(tau)?;
        let induced = src
            .product
            .pair(&dst.product.pr1, &tau_map.compose(&dst.product.pr2)?)?;
        let moved = f.compose(&induced)?;
        dst.maps
            .iter()
            .position(|g| g == &moved)
            .ok_or_else(|| Error::Invalid("mapping space transition left the level".into()))
    }

    fn revalidate(&self, m: usize) -> Result<()> {
        // identity action must fix every element
        let count = self.cache.borrow()[&m].maps.len();
        for i in 0..count {
            if self.transition(&OrdinalMap::identity(m), i)? != i {
                return Err(Error::RouteDisagreement(
                    "mapping space identity action moved an element".into(),
                ));
            }
        }
        // a simplicial identity against the previous level, when available
        if m >= 1 && self.cache.borrow().contains_key(&(m - 1)) && m >= 2 {
            for i in 0..count.min(8) {
                for j in 1..=m.min(2) {
                    for k in 0..j {
                        let a = self.transition(
                            &ordinal::face(k, m - 1)?,
                            self.transition(&ordinal::face(j, m)?, i)?,
                        )?;
                        let b = self.transition(
                            &ordinal::face(j - 1, m - 1)?,
                            self.transition(&ordinal::face(k, m)?, i)?,
                        )?;
                        if a != b {
                            return Err(Error::RouteDisagreement(
                                "mapping space transitions break simplicial identities".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl SLevels for MapSpace {
    type Elt = usize;
    fn elems(&self, m: usize) -> Result<Vec<usize>> {
        Ok((0..self.level(m)?.maps.len()).collect())
    }
    fn act(&self, tau: &OrdinalMap, e: &usize) -> Result<usize> {
        self.transition(tau, *e)
    }
}

/// The bisimplicial map `constant(Δ[τ]) : constant(Δ[m']) -> constant(Δ[m])`.
pub fn constant_map_of(tau: &OrdinalMap) -> Result<BiMap> {
    let src = Arc::new(constant(&standard(tau.dom())));
    let dst = Arc::new(constant(&standard(tau.cod())));
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in src.all_gens() {
        // generator = injection [g.m] -> [m']; its image is classified by the
        // composite with tau
        let monos = ordinal::enumerate_monos(g.m, tau.dom());
        let composite = tau.compose(&monos[g.idx])?;
        let (epi, mono) = composite.epi_mono_factor();
        let dst_monos = ordinal::enumerate_monos(mono.dom(), tau.cod());
        let idx = dst_monos.binary_search(&mono).unwrap();
        assign.entry((g.n, g.m)).or_default().push(BiSimplex {
            gen: crate::bisset::BiGenId { n: 0, m: mono.dom(), idx },
            e1: OrdinalMap::identity(0),
            e2: epi,
        });
    }
    BiMap::new(src, dst, assign)
}
