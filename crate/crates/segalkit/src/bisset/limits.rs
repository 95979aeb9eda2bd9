//! Finite limits and coproducts of bisimplicial sets, levelwise in both axes.

use super::{BiGenId, BiMap, BiSimplex, FinBiSet};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Collapse the common degeneracies of a pair of cells, axis by axis.
pub(crate) fn bi_joint_normalize(a: &BiSimplex, b: &BiSimplex) -> (OrdinalMap, OrdinalMap, BiSimplex, BiSimplex) {
    let (s1, ka) = collapse(&a.e1, &b.e1);
    let (s2, kb) = collapse(&a.e2, &b.e2);
    let a2 = BiSimplex { gen: a.gen, e1: pick(&a.e1, &ka), e2: pick(&a.e2, &kb) };
    let b2 = BiSimplex { gen: b.gen, e1: pick(&b.e1, &ka), e2: pick(&b.e2, &kb) };
    (s1, s2, a2, b2)
}

fn collapse(a: &OrdinalMap, b: &OrdinalMap) -> (OrdinalMap, Vec<usize>) {
    let n = a.dom();
    let mut keep = vec![0usize];
    for i in 1..=n {
        if a.at(i) != a.at(i - 1) || b.at(i) != b.at(i - 1) {
            keep.push(i);
        }
    }
    let r = keep.len() - 1;
    let mut sv = Vec::with_capacity(n + 1);
    for i in 0..=n {
        sv.push(keep.iter().take_while(|&&k| k <= i).count() - 1);
    }
    (OrdinalMap::new(sv, r).unwrap(), keep)
}

fn pick(e: &OrdinalMap, keep: &[usize]) -> OrdinalMap {
    OrdinalMap::new(keep.iter().map(|&i| e.at(i)).collect(), e.cod()).unwrap()
}

fn jointly_injective(a: &OrdinalMap, b: &OrdinalMap) -> bool {
    (1..=a.dom()).all(|i| a.at(i) > a.at(i - 1) || b.at(i) > b.at(i - 1))
}

pub struct BiProduct {
    pub object: Arc<FinBiSet>,
    pub pr1: BiMap,
    pub pr2: BiMap,
    index: BTreeMap<(BiSimplex, BiSimplex), BiGenId>,
}

impl BiProduct {
    pub fn simplex(&self, a: &BiSimplex, b: &BiSimplex) -> Result<BiSimplex> {
        if a.level() != b.level() {
            return Err(Error::DimensionMismatch("pair levels differ".into()));
        }
        let (s1, s2, a2, b2) = bi_joint_normalize(a, b);
        let gen = *self
            .index
            .get(&(a2, b2))
            .ok_or_else(|| Error::Invalid("pair is not a cell of the product".into()))?;
        Ok(BiSimplex { gen, e1: s1, e2: s2 })
    }

    pub fn pair(&self, u: &BiMap, v: &BiMap) -> Result<BiMap> {
        if u.source() != v.source() {
            return Err(Error::DimensionMismatch("cone legs have different sources".into()));
        }
        let src = u.source().clone();
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for g in src.all_gens() {
            let s = BiSimplex::of(g);
            let img = self.simplex(&u.apply(&s)?, &v.apply(&s)?)?;
            assign.entry((g.n, g.m)).or_default().push(img);
        }
        BiMap::new(src, self.object.clone(), assign)
    }
}

pub fn bi_product(x: &Arc<FinBiSet>, y: &Arc<FinBiSet>) -> Result<BiProduct> {
    build_product_like(x, y, None, &|_, _| Ok(true))
}

/// The first-axis truncation of the product: generators are only enumerated
/// through first-axis dimension `first_cap`, so levels `<= first_cap` agree
/// with the full product. Higher levels are absent, not approximated.
pub fn bi_product_capped(
    x: &Arc<FinBiSet>,
    y: &Arc<FinBiSet>,
    first_cap: usize,
) -> Result<BiProduct> {
    build_product_like(x, y, Some(first_cap), &|_, _| Ok(true))
}

fn build_product_like(
    x: &Arc<FinBiSet>,
    y: &Arc<FinBiSet>,
    first_cap: Option<usize>,
    admit: &dyn Fn(&BiSimplex, &BiSimplex) -> Result<bool>,
) -> Result<BiProduct> {
    let (tn, tm) = match (x.dim1(), x.dim2(), y.dim1(), y.dim2()) {
        (Some(a), Some(b), Some(c), Some(d)) => ((a + c) as isize, (b + d) as isize),
        _ => (-1, -1),
    };
    let tn = match first_cap {
        Some(c) => tn.min(c as isize),
        None => tn,
    };
    let mut index = BTreeMap::new();
    let mut gens: BTreeMap<(usize, usize), Vec<(BiSimplex, BiSimplex)>> = BTreeMap::new();
    for n in 0..=tn.max(-1) {
        for m in 0..=tm.max(-1) {
            let (n, m) = (n as usize, m as usize);
            let mut here = Vec::new();
            for s in x.level(n, m)? {
                for t in y.level(n, m)? {
                    if jointly_injective(&s.e1, &t.e1)
                        && jointly_injective(&s.e2, &t.e2)
                        && admit(&s, &t)?
                    {
                        here.push((s.clone(), t.clone()));
                    }
                }
            }
            here.sort();
            crate::budget::check(here.len(), "bisimplicial product generators")?;
            for (i, pair) in here.iter().enumerate() {
                index.insert(pair.clone(), BiGenId { n, m, idx: i });
            }
            if !here.is_empty() {
                gens.insert((n, m), here);
            }
        }
    }

    let mut labels = BTreeMap::new();
    let mut faces1 = BTreeMap::new();
    let mut faces2 = BTreeMap::new();
    for (&(n, m), here) in &gens {
        labels.insert(
            (n, m),
            here.iter()
                .map(|(a, b)| format!("({:?}|{:?})", a, b))
                .collect::<Vec<String>>(),
        );
        if n > 0 {
            let mut lvl = Vec::new();
            for (a, b) in here {
                let mut fs = Vec::new();
                for k in 0..=n {
                    let d = ordinal::face(k, n)?;
                    let fa = x.act(&d, &OrdinalMap::identity(m), a)?;
                    let fb = y.act(&d, &OrdinalMap::identity(m), b)?;
                    let (s1, s2, a2, b2) = bi_joint_normalize(&fa, &fb);
                    let gen = *index.get(&(a2, b2)).expect("face of product cell");
                    fs.push(BiSimplex { gen, e1: s1, e2: s2 });
                }
                lvl.push(fs);
            }
            faces1.insert((n, m), lvl);
        }
        if m > 0 {
            let mut lvl = Vec::new();
            for (a, b) in here {
                let mut fs = Vec::new();
                for k in 0..=m {
                    let d = ordinal::face(k, m)?;
                    let fa = x.act(&OrdinalMap::identity(n), &d, a)?;
                    let fb = y.act(&OrdinalMap::identity(n), &d, b)?;
                    let (s1, s2, a2, b2) = bi_joint_normalize(&fa, &fb);
                    let gen = *index.get(&(a2, b2)).expect("face of product cell");
                    fs.push(BiSimplex { gen, e1: s1, e2: s2 });
                }
                lvl.push(fs);
            }
            faces2.insert((n, m), lvl);
        }
    }
    let object = Arc::new(FinBiSet::build(labels, faces1, faces2)?);
    let assign1 = gens
        .iter()
        .map(|(&k, here)| (k, here.iter().map(|(a, _)| a.clone()).collect()))
        .collect();
    let assign2 = gens
        .iter()
        .map(|(&k, here)| (k, here.iter().map(|(_, b)| b.clone()).collect()))
        .collect();
    let pr1 = BiMap::new(object.clone(), x.clone(), assign1)?;
    let pr2 = BiMap::new(object.clone(), y.clone(), assign2)?;
    Ok(BiProduct { object, pr1, pr2, index })
}

pub struct BiPullback {
    pub inner: BiProduct,
}

impl BiPullback {
    pub fn object(&self) -> &Arc<FinBiSet> {
        &self.inner.object
    }
    pub fn pr1(&self) -> &BiMap {
        &self.inner.pr1
    }
    pub fn pr2(&self) -> &BiMap {
        &self.inner.pr2
    }
    pub fn pair(&self, u: &BiMap, v: &BiMap) -> Result<BiMap> {
        self.inner.pair(u, v)
    }
}

pub fn bi_pullback(f: &BiMap, g: &BiMap) -> Result<BiPullback> {
    if f.target() != g.target() {
        return Err(Error::DimensionMismatch("pullback targets differ".into()));
    }
    let inner =
        build_product_like(f.source(), g.source(), None, &|s, t| Ok(f.apply(s)? == g.apply(t)?))?;
    Ok(BiPullback { inner })
}

/// Fiber of `f : Y -> X` over a vertex, with its inclusion into `Y`.
pub fn bi_fiber(f: &BiMap, x: BiGenId) -> Result<(Arc<FinBiSet>, BiMap)> {
    let v = BiMap::from_vertex(f.target().clone(), x)?;
    let pb = bi_pullback(&v, f)?;
    Ok((pb.object().clone(), pb.pr2().clone()))
}

pub struct BiCoproduct {
    pub object: Arc<FinBiSet>,
    pub in1: BiMap,
    pub in2: BiMap,
}

impl BiCoproduct {
    pub fn copair(&self, u: &BiMap, v: &BiMap) -> Result<BiMap> {
        if u.target() != v.target() {
            return Err(Error::DimensionMismatch("cocone targets differ".into()));
        }
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = self
            .object
            .labels()
            .iter()
            .map(|(&k, labs)| {
                (k, vec![BiSimplex::of(BiGenId { n: 0, m: 0, idx: 0 }); labs.len()])
            })
            .collect();
        for g in u.source().all_gens() {
            let img = self.in1.gen_image(g);
            assign.get_mut(&(img.gen.n, img.gen.m)).unwrap()[img.gen.idx] = u.gen_image(g).clone();
        }
        for g in v.source().all_gens() {
            let img = self.in2.gen_image(g);
            assign.get_mut(&(img.gen.n, img.gen.m)).unwrap()[img.gen.idx] = v.gen_image(g).clone();
        }
        BiMap::new(self.object.clone(), u.target().clone(), assign)
    }
}

pub fn bi_coproduct(x: &Arc<FinBiSet>, y: &Arc<FinBiSet>) -> Result<BiCoproduct> {
    let mut labels: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    let mut faces1 = BTreeMap::new();
    let mut faces2 = BTreeMap::new();
    let offset = |key: (usize, usize)| x.labels().get(&key).map_or(0, |v| v.len());
    for (&k, labs) in x.labels() {
        labels.entry(k).or_default().extend(labs.iter().map(|l| format!("l_{l}")));
    }
    for (&k, labs) in y.labels() {
        labels.entry(k).or_default().extend(labs.iter().map(|l| format!("r_{l}")));
    }
    let shift = |s: &BiSimplex| BiSimplex {
        gen: BiGenId { n: s.gen.n, m: s.gen.m, idx: s.gen.idx + offset((s.gen.n, s.gen.m)) },
        e1: s.e1.clone(),
        e2: s.e2.clone(),
    };
    for (&k, labs) in labels.iter() {
        let (n, m) = k;
        let xcount = offset(k);
        if n > 0 {
            let lvl = (0..labs.len())
                .map(|idx| -> Result<Vec<BiSimplex>> {
                    if idx < xcount {
                        (0..=n).map(|j| x.face1(BiGenId { n, m, idx }, j)).collect()
                    } else {
                        let g = BiGenId { n, m, idx: idx - xcount };
                        (0..=n).map(|j| y.face1(g, j).map(|s| shift(&s))).collect()
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            faces1.insert(k, lvl);
        }
        if m > 0 {
            let lvl = (0..labs.len())
                .map(|idx| -> Result<Vec<BiSimplex>> {
                    if idx < xcount {
                        (0..=m).map(|j| x.face2(BiGenId { n, m, idx }, j)).collect()
                    } else {
                        let g = BiGenId { n, m, idx: idx - xcount };
                        (0..=m).map(|j| y.face2(g, j).map(|s| shift(&s))).collect()
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            faces2.insert(k, lvl);
        }
    }
    let object = Arc::new(FinBiSet::build(labels, faces1, faces2)?);
    let assign1 = x
        .labels()
        .iter()
        .map(|(&(n, m), labs)| {
            ((n, m), (0..labs.len()).map(|idx| BiSimplex::of(BiGenId { n, m, idx })).collect())
        })
        .collect();
    let assign2 = y
        .labels()
        .iter()
        .map(|(&(n, m), labs)| {
            (
                (n, m),
                (0..labs.len())
                    .map(|idx| BiSimplex::of(BiGenId { n, m, idx: idx + offset((n, m)) }))
                    .collect(),
            )
        })
        .collect();
    let in1 = BiMap::new(x.clone(), object.clone(), assign1)?;
    let in2 = BiMap::new(y.clone(), object.clone(), assign2)?;
    Ok(BiCoproduct { object, in1, in2 })
}
