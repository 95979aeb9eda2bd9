//! Undercategories, the twisted-arrow fiber, the category of elements, and
//! the desk-scale evaluation checks that reproduce the classical statement on
//! nerves.

use crate::bisset::{
    bi_fiber, bi_homs_filtered, bi_maps_over, bi_product, box_, box_decode,
    box_encode, extract_biset, f_disc, twist_projection, BiExtracted, BiGenId, BiLevels,
    BiMap, BiProduct, BiSimplex, FinBiSet, TwistProjection,
};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, SetFunctor};
use crate::ordinal::{self, OrdinalMap};
use crate::segal::{disc_nerve, Tier};
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;
use std::sync::Arc;

/// Level oracle for the undercategory `x\X`: level `(n, m)` is the set of
/// maps `F[1] × box(n, m) -> X` whose 0-end is constant at `x`. Levels are
/// cached; elements are indices into the canonical enumeration.
pub struct UnderLevels {
    pub x: Arc<FinBiSet>,
    pub vertex: BiGenId,
    f1: Arc<FinBiSet>,
    cache: RefCell<BTreeMap<(usize, usize), Rc<UnderLevelData>>>,
}

pub struct UnderLevelData {
    pub product: BiProduct,
    pub maps: Vec<BiMap>,
}

impl UnderLevels {
    pub fn new(x: Arc<FinBiSet>, vertex: BiGenId) -> Result<UnderLevels> {
        if (vertex.n, vertex.m) != (0, 0) || !x.has_gen(vertex) {
            return Err(Error::Precondition("base point must be a vertex".into()));
        }
        Ok(UnderLevels { x, vertex, f1: Arc::new(f_disc(1)), cache: RefCell::new(BTreeMap::new()) })
    }

    /// The constant cell at the base vertex, at a given level.
    fn constant_cell(&self, n: usize, m: usize) -> BiSimplex {
        BiSimplex {
            gen: self.vertex,
            e1: OrdinalMap::new(vec![0; n + 1], 0).unwrap(),
            e2: OrdinalMap::new(vec![0; m + 1], 0).unwrap(),
        }
    }

    pub fn level(&self, n: usize, m: usize) -> Result<Rc<UnderLevelData>> {
        if let Some(d) = self.cache.borrow().get(&(n, m)) {
            return Ok(d.clone());
        }
        let bx = Arc::new(box_(n, m));
        let product = bi_product(&self.f1, &bx)?;
        let maps = bi_homs_filtered(&product.object, &self.x, &|g, cand| {
            let s = product.pr1.gen_image(g);
            let u = box_decode(1, 0, s).0;
            if u.values().iter().all(|&v| v == 0) {
                Ok(*cand == self.constant_cell(g.n, g.m))
            } else {
                Ok(true)
            }
        }, None)?;
        crate::budget::check(maps.len(), "undercategory level")?;
        let data = Rc::new(UnderLevelData { product, maps });
        self.cache.borrow_mut().insert((n, m), data.clone());
        Ok(data)
    }

    /// The identity element at level `(0, 0)`: the degenerate edge at `x`.
    pub fn id_elt(&self) -> Result<usize> {
        let data = self.level(0, 0)?;
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for g in data.product.object.all_gens() {
            assign.entry((g.n, g.m)).or_default().push(self.constant_cell(g.n, g.m));
        }
        let idmap = BiMap::new_unchecked(data.product.object.clone(), self.x.clone(), assign);
        data.maps
            .iter()
            .position(|f| f == &idmap)
            .ok_or_else(|| Error::Invalid("identity element missing from the undercategory".into()))
    }

    /// The projection to `X`: evaluation at the 1-end.
    pub fn project(&self, n: usize, m: usize, idx: usize) -> Result<BiSimplex> {
        let data = self.level(n, m)?;
        let one_end = box_encode(1, 0, &OrdinalMap::new(vec![1; n + 1], 1)?, &OrdinalMap::new(vec![0; m + 1], 0)?);
        let top = BiSimplex::of(BiGenId { n, m, idx: top_box_index(n, m) });
        let cell = data.product.simplex(&one_end, &top)?;
        data.maps[idx].apply(&cell)
    }

    /// The underlying map of an element.
    pub fn map_at(&self, n: usize, m: usize, idx: usize) -> Result<BiMap> {
        Ok(self.level(n, m)?.maps[idx].clone())
    }

    pub fn index_of(&self, n: usize, m: usize, f: &BiMap) -> Result<usize> {
        self.level(n, m)?
            .maps
            .iter()
            .position(|g| g == f)
            .ok_or_else(|| Error::Invalid("map is not an undercategory element".into()))
    }
}

fn top_box_index(n: usize, m: usize) -> usize {
    // the (id, id) generator of box(n, m) is unique at bidegree (n, m)
    let _ = (n, m);
    0
}

impl BiLevels for UnderLevels {
    type Elt = usize;
    fn elems(&self, n: usize, m: usize) -> Result<Vec<usize>> {
        Ok((0..self.level(n, m)?.maps.len()).collect())
    }
    fn act(&self, t1: &OrdinalMap, t2: &OrdinalMap, e: &usize) -> Result<usize> {
        let (n, m) = (t1.cod(), t2.cod());
        let src = self.level(n, m)?;
        let dst = self.level(t1.dom(), t2.dom())?;
        // precompose with F[1] × box(τ1, τ2)
        let bx = Arc::new(box_(n, m));
        let induced_box = BiMap::classifying(bx, &box_encode(n, m, t1, t2))?;
        let induced = src
            .product
            .pair(&dst.product.pr1, &induced_box.compose(&dst.product.pr2)?)?;
        let moved = src.maps[*e].compose(&induced)?;
        dst.maps
            .iter()
            .position(|g| g == &moved)
            .ok_or_else(|| Error::Invalid("undercategory transition left the level".into()))
    }
}

/// Materialized undercategory of a discrete object: a finite presentation of
/// the levels up to `first_cap`.
pub struct Under {
    pub levels: UnderLevels,
    pub object: Arc<FinBiSet>,
    pub ex: BiExtracted<usize>,
    /// projection to the base object
    pub to_x: BiMap,
    /// the generator or cell carrying `id_x`
    pub id_cell: BiSimplex,
}

/// Materialize `x\X` for a discrete `X`, exact in first-axis levels
/// `<= first_cap`.
pub fn under(x: &Arc<FinBiSet>, vertex: BiGenId, first_cap: usize) -> Result<Under> {
    if !x.is_discrete() {
        return Err(Error::Precondition(
            "only discrete undercategories are materialized; use UnderLevels directly".into(),
        ));
    }
    let levels = UnderLevels::new(x.clone(), vertex)?;
    let ex = extract_biset(&levels, first_cap as isize, 0)?;
    let object = ex.object.clone();
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in object.all_gens() {
        let idx = ex.gen_elem[&g];
        assign.entry((g.n, g.m)).or_default().push(levels.project(g.n, g.m, idx)?);
    }
    let to_x = BiMap::new(object.clone(), x.clone(), assign)?;
    let id_cell = ex.normal_form((0, 0), &levels.id_elt()?)?;
    Ok(Under { levels, object, ex, to_x, id_cell })
}

/// The multiplication map `F[1] × F[1] -> F[1]`, `(i, j) ↦ i·j`.
pub fn min_map() -> Result<(BiProduct, BiMap)> {
    let f1 = Arc::new(f_disc(1));
    let p = bi_product(&f1, &f1)?;
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in p.object.all_gens() {
        let u = box_decode(1, 0, p.pr1.gen_image(g)).0;
        let v = box_decode(1, 0, p.pr2.gen_image(g)).0;
        let w = OrdinalMap::new(
            (0..=g.n).map(|k| u.at(k) * v.at(k)).collect(),
            1,
        )?;
        assign
            .entry((g.n, g.m))
            .or_default()
            .push(box_encode(1, 0, &w, &OrdinalMap::identity(0)));
    }
    let m = BiMap::new(p.object.clone(), f1, assign)?;
    Ok((p, m))
}

/// Verification report for the undercategory retraction: precomposition with
/// the multiplication map retracts the double undercategory onto the
/// undercategory.
#[derive(Clone, Debug)]
pub struct UnderRetraction {
    pub id_fixed: bool,
    pub section_levels: Vec<(usize, usize, bool)>,
    pub kills_corner: bool,
}

/// Build and verify the retraction `r : x\X -> id_x\(x\X)` on levels
/// `(n, m) <= max_level`.
pub fn under_retraction(
    x: &Arc<FinBiSet>,
    vertex: BiGenId,
    max_level: (usize, usize),
) -> Result<UnderRetraction> {
    let levels = UnderLevels::new(x.clone(), vertex)?;
    let (p11, mul) = min_map()?;

    // m(A) = 0 for the corner A = (F[1] × {0}) ∪ ({0} × F[1])
    let mut kills_corner = true;
    for g in p11.object.all_gens() {
        let u = box_decode(1, 0, p11.pr1.gen_image(g)).0;
        let v = box_decode(1, 0, p11.pr2.gen_image(g)).0;
        let in_corner = u.values().iter().all(|&a| a == 0) || v.values().iter().all(|&a| a == 0);
        if in_corner {
            let w = box_decode(1, 0, mul.gen_image(g)).0;
            if w.values().iter().any(|&a| a != 0) {
                kills_corner = false;
            }
        }
    }

    // r(α) = α ∘ (m × id); pr2 evaluates the outer interval at its 1-end,
    // which composes with r to the identity because m(1, j) = j
    let mut section_levels = Vec::new();
    let one = OrdinalMap::new(vec![1, 1], 1)?;
    for n in 0..=max_level.0 {
        for m in 0..=max_level.1 {
            let data = levels.level(n, m)?;
            let mut all_ok = true;
            for alpha in &data.maps {
                // build r(α) on F[1] × (F[1] × box(n, m)) and restrict the
                // outer interval to 1; compare with α
                let q = bi_product(&Arc::new(f_disc(1)), &data.product.object)?;
                // the map q -> F[1] × box(n,m): (outer, (inner, cell)) ↦ (m(outer, inner), cell)
                let to_dom = {
                    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
                    for g in q.object.all_gens() {
                        let outer = box_decode(1, 0, q.pr1.gen_image(g)).0;
                        let inner_cell = q.pr2.gen_image(g);
                        let inner = box_decode(1, 0, &data.product.pr1.apply(inner_cell)?).0;
                        let boxc = data.product.pr2.apply(inner_cell)?;
                        let w = OrdinalMap::new(
                            (0..=g.n).map(|k| outer.at(k) * inner.at(k)).collect(),
                            1,
                        )?;
                        let img = data.product.simplex(
                            &box_encode(1, 0, &w, &OrdinalMap::new(vec![0; g.m + 1], 0)?),
                            &boxc,
                        )?;
                        assign.entry((g.n, g.m)).or_default().push(img);
                    }
                    BiMap::new(q.object.clone(), data.product.object.clone(), assign)?
                };
                let r_alpha = alpha.compose(&to_dom)?;
                // restrict the outer interval to its 1-end
                let outer_one = {
                    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
                    for g in data.product.object.all_gens() {
                        let const1 = box_encode(
                            1,
                            0,
                            &one.compose(&OrdinalMap::new(vec![0; g.n + 1], 1)?)?,
                            &OrdinalMap::new(vec![0; g.m + 1], 0)?,
                        );
                        let img = q.simplex(&const1, &BiSimplex::of(g))?;
                        assign.entry((g.n, g.m)).or_default().push(img);
                    }
                    BiMap::new(data.product.object.clone(), q.object.clone(), assign)?
                };
                if &r_alpha.compose(&outer_one)? != alpha {
                    all_ok = false;
                }
            }
            section_levels.push((n, m, all_ok));
        }
    }

    // r fixes the identity: r(id_x) is the constant map, which is id_{id_x}
    let id_idx = levels.id_elt()?;
    let id_map = levels.map_at(0, 0, id_idx)?;
    let q = bi_product(&Arc::new(f_disc(1)), &levels.level(0, 0)?.product.object)?;
    let to_dom = {
        let data = levels.level(0, 0)?;
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for g in q.object.all_gens() {
            let outer = box_decode(1, 0, q.pr1.gen_image(g)).0;
            let inner_cell = q.pr2.gen_image(g);
            let inner = box_decode(1, 0, &data.product.pr1.apply(inner_cell)?).0;
            let boxc = data.product.pr2.apply(inner_cell)?;
            let w = OrdinalMap::new((0..=g.n).map(|k| outer.at(k) * inner.at(k)).collect(), 1)?;
            let img = data.product.simplex(
                &box_encode(1, 0, &w, &OrdinalMap::new(vec![0; g.m + 1], 0)?),
                &boxc,
            )?;
            assign.entry((g.n, g.m)).or_default().push(img);
        }
        BiMap::new(q.object.clone(), data.product.object.clone(), assign)?
    };
    let r_id = id_map.compose(&to_dom)?;
    // id_{id_x} is the fully constant map on the double interval
    let constant = {
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for g in q.object.all_gens() {
            assign.entry((g.n, g.m)).or_default().push(BiSimplex {
                gen: vertex,
                e1: OrdinalMap::new(vec![0; g.n + 1], 0)?,
                e2: OrdinalMap::new(vec![0; g.m + 1], 0)?,
            });
        }
        BiMap::new_unchecked(q.object.clone(), x.clone(), assign)
    };
    let id_fixed = r_id == constant;
    Ok(UnderRetraction { id_fixed, section_levels, kills_corner })
}

/// `τ' : [n+1] -> [m+1]` with `τ'(0) = 0` and `τ'(i+1) = τ(i) + 1`.
pub fn tau_prime(tau: &OrdinalMap) -> OrdinalMap {
    let mut values = vec![0usize];
    values.extend(tau.values().iter().map(|&v| v + 1));
    OrdinalMap::new(values, tau.cod() + 1).unwrap()
}

/// The shifted-level model of the undercategory: level `n` is the fiber of
/// the initial-vertex evaluation `X_{n+1} -> X_0` at `x`, with first-axis
/// action through `τ'`.
pub struct TildeUnder {
    pub x: Arc<FinBiSet>,
    pub vertex: BiGenId,
    pub object: Arc<FinBiSet>,
    pub ex: BiExtracted<BiSimplex>,
    /// projection to `X`, induced by dropping the initial vertex
    pub to_x: BiMap,
}

struct TildeLevels<'a> {
    x: &'a Arc<FinBiSet>,
    vertex: BiGenId,
}

impl<'a> BiLevels for TildeLevels<'a> {
    type Elt = BiSimplex;
    fn elems(&self, n: usize, m: usize) -> Result<Vec<BiSimplex>> {
        let want = BiSimplex {
            gen: self.vertex,
            e1: OrdinalMap::identity(0),
            e2: OrdinalMap::new(vec![0; m + 1], 0).unwrap(),
        };
        Ok(self
            .x
            .level(n + 1, m)?
            .into_iter()
            .filter(|c| {
                self.x
                    .act(&ordinal::vertex(0, n + 1).unwrap(), &OrdinalMap::identity(m), c)
                    .map(|v| v == want)
                    .unwrap_or(false)
            })
            .collect())
    }
    fn act(&self, t1: &OrdinalMap, t2: &OrdinalMap, e: &BiSimplex) -> Result<BiSimplex> {
        self.x.act(&tau_prime(t1), t2, e)
    }
}

pub fn tilde_under(x: &Arc<FinBiSet>, vertex: BiGenId, first_cap: usize) -> Result<TildeUnder> {
    if (vertex.n, vertex.m) != (0, 0) || !x.has_gen(vertex) {
        return Err(Error::Precondition("base point must be a vertex".into()));
    }
    let natural = x.dim1().map_or(-1, |d| d as isize);
    let cap = (first_cap as isize).min(natural);
    let oracle = TildeLevels { x, vertex };
    let max_m = x.dim2().map_or(-1, |m| m as isize);
    let ex = extract_biset(&oracle, cap, max_m)?;
    let object = ex.object.clone();
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in object.all_gens() {
        let cell = &ex.gen_elem[&g];
        let img = x.act(&ordinal::shift(1, g.n, g.n + 1)?, &OrdinalMap::identity(g.m), cell)?;
        assign.entry((g.n, g.m)).or_default().push(img);
    }
    let to_x = BiMap::new(object.clone(), x.clone(), assign)?;
    Ok(TildeUnder { x: x.clone(), vertex, object, ex, to_x })
}

/// The comparison from the shifted model to the undercategory oracle: level
/// `n` sends a cell of `X_{n+1}` to the prism-induced map, via
/// `[n] × [1] -> [n+1] : (i, j) ↦ (i + j)·j`.
pub struct PsiPrime<'a> {
    pub tilde: &'a TildeUnder,
    pub under: &'a UnderLevels,
}

impl<'a> PsiPrime<'a> {
    /// Image of a tilde-cell at level `(n, m)`, as an undercategory index.
    pub fn apply(&self, n: usize, m: usize, cell: &BiSimplex) -> Result<usize> {
        let data = self.under.level(n, m)?;
        let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
        for g in data.product.object.all_gens() {
            let u = box_decode(1, 0, data.product.pr1.gen_image(g)).0;
            let (a, b) = box_decode(n, m, data.product.pr2.gen_image(g));
            let w = OrdinalMap::new(
                (0..=g.n).map(|k| (a.at(k) + u.at(k)) * u.at(k)).collect(),
                n + 1,
            )?;
            let img = self.tilde.x.act(&w, &b, cell)?;
            assign.entry((g.n, g.m)).or_default().push(img);
        }
        let f = BiMap::new_unchecked(data.product.object.clone(), self.tilde.x.clone(), assign);
        self.under.index_of(n, m, &f)
    }

    /// Levelwise bijectivity check up to the given level, meaningful for
    /// discrete bases.
    pub fn bijective_up_to(&self, max_n: usize) -> Result<bool> {
        let oracle = TildeLevels { x: &self.tilde.x, vertex: self.tilde.vertex };
        for n in 0..=max_n {
            let cells = oracle.elems(n, 0)?;
            let total = self.under.level(n, 0)?.maps.len();
            let mut images: Vec<usize> = cells
                .iter()
                .map(|c| self.apply(n, 0, c))
                .collect::<Result<Vec<_>>>()?;
            images.sort();
            images.dedup();
            if images.len() != cells.len() || cells.len() != total {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The twisted-arrow fiber `{x} ×_{X^op} M(X)` with the second comparison
/// map from the shifted model.
pub struct PsiDoublePrime {
    pub projection: TwistProjection,
    pub fiber: Arc<FinBiSet>,
    pub fiber_incl: BiMap,
    pub psi: BiMap,
}

pub fn psi_dprime(x: &Arc<FinBiSet>, vertex: BiGenId, first_cap: usize) -> Result<PsiDoublePrime> {
    let tilde = tilde_under(x, vertex, first_cap)?;
    psi_dprime_with(x, vertex, first_cap, &tilde)
}

pub fn psi_dprime_with(
    x: &Arc<FinBiSet>,
    vertex: BiGenId,
    first_cap: usize,
    tilde: &TildeUnder,
) -> Result<PsiDoublePrime> {
    let tp = twist_projection(x, Some(first_cap))?;
    // the vertex of the opposite object corresponding to x
    let op_vertex = tp.opposite.encode((0, 0), &BiSimplex::of(vertex))?;
    let to_op = tp.product.pr1.compose(&tp.pi)?;
    let (fiber, fiber_incl) = bi_fiber(&to_op, op_vertex.gen)?;
    // reverse lookup: twisted cells in the fiber -> fiber generators
    let mut back: BTreeMap<BiSimplex, BiGenId> = BTreeMap::new();
    for g in fiber.all_gens() {
        back.insert(fiber_incl.gen_image(g).clone(), g);
    }
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in tilde.object.all_gens() {
        let cell = &tilde.ex.gen_elem[&g]; // in X_{n+1, m}
        let n = g.n;
        // r : [2n+1] -> [n+1] with r(i) = 0 and r(n+1+i) = i+1
        let mut values = vec![0usize; n + 1];
        values.extend(1..=n + 1);
        let r = OrdinalMap::new(values, n + 1)?;
        let zeta = x.act(&r, &OrdinalMap::identity(g.m), cell)?;
        let tw = tp.twisted.encode((g.n, g.m), &zeta)?;
        // express the twisted cell as a fiber cell
        let fib_gen = back.get(&BiSimplex::of(tw.gen)).ok_or_else(|| {
            Error::Invalid("twisted image escaped the fiber over the base point".into())
        })?;
        assign.entry((g.n, g.m)).or_default().push(BiSimplex {
            gen: *fib_gen,
            e1: tw.e1,
            e2: tw.e2,
        });
    }
    let psi = BiMap::new(tilde.object.clone(), fiber.clone(), assign)?;
    Ok(PsiDoublePrime { projection: tp, fiber, fiber_incl, psi })
}

/// Check the section identity: projecting a ψ''-image back along the final
/// segment recovers the original cell.
pub fn psi_dprime_section_check(
    x: &Arc<FinBiSet>,
    tilde: &TildeUnder,
    pd: &PsiDoublePrime,
) -> Result<bool> {
    for g in tilde.object.all_gens() {
        let n = g.n;
        let cell = &tilde.ex.gen_elem[&g];
        let img = pd.psi.gen_image(g);
        // the underlying cell of X behind the twisted image: the twisted
        // first-axis action is through the subdivision functor
        let zeta_cell = {
            let t = pd.fiber_incl.apply(img)?;
            let raw = pd.projection.twisted.decode(t.gen)?.clone();
            x.act(&t.e1.twist(), &t.e2, &raw)?
        };
        let back = x.act(&ordinal::shift(n, n + 1, 2 * n + 1)?, &OrdinalMap::identity(g.m), &zeta_cell)?;
        if &back != cell {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A set-valued functor realized as a discrete fibration over the nerve.
pub struct ElementsFibration {
    pub cat: FinCat,
    pub functor: SetFunctor,
    pub nerve_tier: Tier,
    pub base: Arc<FinBiSet>,
    pub total: Arc<FinBiSet>,
    pub projection: BiMap,
}

/// Build the category-of-elements fibration: total cells over a chain are
/// elements of the functor at the chain's start, transported covariantly.
pub fn elements(c: &FinCat, f: &SetFunctor, bound: Option<usize>) -> Result<ElementsFibration> {
    f.validate(c)?;
    let (base, tier) = disc_nerve(c, bound)?;
    let dim = base.dim1().unwrap_or(0);
    let chains = crate::segal::enumerate_chains_pub(c, dim)?;

    // generators at (d, 0): (chain, element of F at the chain start)
    let mut labels: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    let mut faces1: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>> = BTreeMap::new();
    let mut gen_index: Vec<BTreeMap<(Vec<usize>, usize), usize>> = Vec::new();
    for d in 0..=dim {
        let mut level_labels = Vec::new();
        let mut index = BTreeMap::new();
        if d == 0 {
            for (o, name) in c.objects.iter().enumerate() {
                for (v, elt) in f.sets[o].iter().enumerate() {
                    index.insert((vec![o], v), level_labels.len());
                    level_labels.push(format!("{name}.{elt}"));
                }
            }
        } else {
            for ch in &chains[d] {
                let start = c.arrows[ch[0]].src;
                for v in 0..f.sets[start].len() {
                    index.insert((ch.clone(), v), level_labels.len());
                    level_labels.push(format!("{ch:?}.{v}"));
                }
            }
        }
        labels.insert((d, 0), level_labels);
        gen_index.push(index);
    }
    for d in 1..=dim {
        let mut level_faces = Vec::new();
        for ch in &chains[d] {
            let start = c.arrows[ch[0]].src;
            for v in 0..f.sets[start].len() {
                let mut fs = Vec::new();
                for i in 0..=d {
                    let (raw, v2): (Vec<usize>, usize) = if i == 0 {
                        (ch[1..].to_vec(), f.maps[ch[0]][v])
                    } else if i == d {
                        (ch[..d - 1].to_vec(), v)
                    } else {
                        let mut glued = ch[..i - 1].to_vec();
                        glued.push(c.comp(ch[i - 1], ch[i])?);
                        glued.extend_from_slice(&ch[i + 1..]);
                        (glued, v)
                    };
                    fs.push(elements_normalize(c, &raw, v2, ch, i, &gen_index)?);
                }
                level_faces.push(fs);
            }
        }
        faces1.insert((d, 0), level_faces);
    }
    let total = Arc::new(FinBiSet::build(labels, faces1, BTreeMap::new())?);

    // projection: forget the element
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for d in 0..=dim {
        let mut level = Vec::new();
        if d == 0 {
            for (o, _) in c.objects.iter().enumerate() {
                for _ in 0..f.sets[o].len() {
                    level.push(BiSimplex::of(BiGenId { n: 0, m: 0, idx: o }));
                }
            }
        } else {
            for (i, ch) in chains[d].iter().enumerate() {
                let start = c.arrows[ch[0]].src;
                for _ in 0..f.sets[start].len() {
                    level.push(BiSimplex::of(BiGenId { n: d, m: 0, idx: i }));
                }
            }
        }
        assign.insert((d, 0), level);
    }
    let projection = BiMap::new(total.clone(), base.clone(), assign)?;
    Ok(ElementsFibration { cat: c.clone(), functor: f.clone(), nerve_tier: tier, base, total, projection })
}

fn elements_normalize(
    c: &FinCat,
    raw: &[usize],
    v: usize,
    full_chain: &[usize],
    face_idx: usize,
    gen_index: &[BTreeMap<(Vec<usize>, usize), usize>],
) -> Result<BiSimplex> {
    let kept: Vec<usize> = raw.iter().copied().filter(|&a| !c.is_identity_arrow(a)).collect();
    let mut values = vec![0usize];
    let mut seen = 0usize;
    for &a in raw {
        if !c.is_identity_arrow(a) {
            seen += 1;
        }
        values.push(seen);
    }
    let epi = OrdinalMap::new(values, kept.len())?;
    let idx = if kept.is_empty() {
        // a vertex: the start object of the face
        let obj = if raw.is_empty() {
            // the face collapsed to a single vertex of the original chain
            if face_idx == 0 {
                c.arrows[full_chain[0]].tgt
            } else {
                c.arrows[full_chain[0]].src
            }
        } else {
            c.arrows[raw[0]].src
        };
        gen_index[0][&(vec![obj], v)]
    } else {
        gen_index[kept.len()][&(kept.clone(), v)]
    };
    Ok(BiSimplex {
        gen: BiGenId { n: kept.len(), m: 0, idx },
        e1: epi,
        e2: OrdinalMap::identity(0),
    })
}

impl ElementsFibration {
    /// The fiber elements over a vertex of the base.
    pub fn fiber_over(&self, object: usize) -> Result<Vec<BiGenId>> {
        let mut out = Vec::new();
        for g in self.total.gens_at(0, 0) {
            if self.projection.gen_image(g).gen.idx == object {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Run the left-fibration decider on the projection.
    pub fn verify_left(&self, bound: usize) -> Result<crate::lifting::Decision> {
        crate::lifting::check_left_fibration(&self.projection, bound)
    }
}

/// Report of the discrete evaluation check at one input.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EvaluationReport {
    pub maps_over: usize,
    pub fiber_size: usize,
    pub bijective: bool,
    pub psi_prime_bijective: bool,
}

/// The discrete evaluation check: maps from the undercategory into an
/// elements fibration over the nerve evaluate bijectively, at the identity,
/// onto the fiber. This is the decidable instance of the evaluation
/// statement, and literally the classical lemma for the category.
pub fn evaluation_check(
    c: &FinCat,
    x_obj: usize,
    f: &SetFunctor,
    bound: Option<usize>,
) -> Result<EvaluationReport> {
    let e = elements(c, f, bound)?;
    let base = e.base.clone();
    if crate::segal::check_segal_discrete(&base, 2)?.is_err() {
        return Err(Error::Precondition("nerve fails the discrete Segal check".into()));
    }
    let vertex = BiGenId { n: 0, m: 0, idx: x_obj };
    let cap = base.dim1().unwrap_or(1).saturating_sub(1).max(1);
    let u = under(&base, vertex, cap)?;
    // ψ' bijectivity ties the materialized undercategory to the shifted model
    let tilde = tilde_under(&base, vertex, cap)?;
    let psi = PsiPrime { tilde: &tilde, under: &u.levels };
    let psi_prime_bijective = psi.bijective_up_to(cap.min(2))?;

    let over = bi_maps_over(&u.to_x, &e.projection)?;
    let mut values = Vec::new();
    for m in &over {
        let at_id = m.apply(&u.id_cell)?;
        values.push(at_id);
    }
    values.sort();
    let before = values.len();
    values.dedup();
    let injective = values.len() == before;
    let fiber = e.fiber_over(x_obj)?;
    let bijective = injective
        && values.len() == fiber.len()
        && values.iter().all(|v| v.is_nondegenerate() && fiber.contains(&v.gen));
    Ok(EvaluationReport {
        maps_over: over.len(),
        fiber_size: fiber.len(),
        bijective,
        psi_prime_bijective,
    })
}

/// Fiber counts of the twisted projection against hom-sets, with the
/// compatibility of endpoint evaluation and composition.
#[derive(Clone, Debug, serde::Serialize)]
pub struct YonedaFfReport {
    pub pairs: Vec<(usize, usize, usize, usize)>,
    pub counts_match: bool,
    pub naturality: bool,
}

pub fn fully_faithful_yoneda_check(c: &FinCat, bound: Option<usize>) -> Result<YonedaFfReport> {
    let (x, _) = disc_nerve(c, bound.or(Some(3)))?;
    if x.dim1().unwrap_or(0) < 3 && c.nerve_dimension().is_none() {
        return Err(Error::Precondition("nerve truncation must reach dimension 3".into()));
    }
    let tp = twist_projection(&x, Some(1))?;
    // count fiber cells over each vertex pair
    let mut pairs = Vec::new();
    let mut counts_match = true;
    for a in 0..c.objects.len() {
        for b in 0..c.objects.len() {
            let mut count = 0;
            for g in tp.twisted.object.gens_at(0, 0) {
                let img = tp.pi.gen_image(g);
                let op_part = tp.product.pr1.apply(img)?;
                let x_part = tp.product.pr2.apply(img)?;
                let op_decoded = tp.opposite.decode(op_part.gen)?;
                if op_decoded.gen.idx == a && x_part.gen.idx == b {
                    count += 1;
                }
            }
            let hom = c.hom(a, b).len();
            if count != hom {
                counts_match = false;
            }
            pairs.push((a, b, count, hom));
        }
    }

    // naturality: for every composable triple (u, f, v) the twisted edge of
    // the 3-chain runs from the middle arrow f to the outer composite v∘f∘u,
    // and its projection carries the factorization pair (u, v)
    let mut naturality = true;
    let edge_of = |arrow: usize| -> Result<BiSimplex> {
        // nerve 1-cells are non-identity arrows in canonical order; identity
        // arrows give degenerate edges
        nerve_edge_cell(c, &x, arrow)
    };
    for (u, au) in c.arrows.iter().enumerate() {
        for (f, af) in c.arrows.iter().enumerate() {
            if au.tgt != af.src {
                continue;
            }
            for (v, av) in c.arrows.iter().enumerate() {
                if af.tgt != av.src {
                    continue;
                }
                let chain_cell = nerve_chain_cell(c, &x, &[u, f, v])?;
                let tw = tp.twisted.encode((1, 0), &chain_cell)?;
                let init = tp
                    .twisted
                    .object
                    .act(&ordinal::vertex(0, 1)?, &OrdinalMap::identity(0), &tw)?;
                let term = tp
                    .twisted
                    .object
                    .act(&ordinal::vertex(1, 1)?, &OrdinalMap::identity(0), &tw)?;
                let vfu = c.comp(c.comp(u, f)?, v)?;
                let want_init = tp.twisted.encode((0, 0), &edge_of(f)?)?;
                let want_term = tp.twisted.encode((0, 0), &edge_of(vfu)?)?;
                if init != want_init || term != want_term {
                    naturality = false;
                }
                // the projection of the twisted edge carries (u, v)
                let pi_img = {
                    let img = tp.pi.gen_image(tw.gen);
                    let moved = tp.product.object.act(&tw.e1, &tw.e2, img)?;
                    (
                        tp.product.pr1.apply(&moved)?,
                        tp.product.pr2.apply(&moved)?,
                    )
                };
                let op_edge = {
                    // the opposite object relabels cells in place
                    let cell = nerve_chain_cell(c, &x, &[u])?;
                    tp.opposite.encode((1, 0), &cell)?
                };
                let x_edge = nerve_chain_cell(c, &x, &[v])?;
                if pi_img.0 != op_edge || pi_img.1 != x_edge {
                    naturality = false;
                }
            }
        }
    }
    Ok(YonedaFfReport { pairs, counts_match, naturality })
}

/// The cell of the (disc) nerve carrying an arrow: its non-degenerate edge,
/// or the degenerate edge at the object for identities.
pub fn nerve_edge_cell(c: &FinCat, x: &Arc<FinBiSet>, arrow: usize) -> Result<BiSimplex> {
    if c.is_identity_arrow(arrow) {
        let o = c.arrows[arrow].src;
        return Ok(BiSimplex {
            gen: BiGenId { n: 0, m: 0, idx: o },
            e1: ordinal::degeneracy(0, 0)?,
            e2: OrdinalMap::identity(0),
        });
    }
    let non_id: Vec<usize> = (0..c.arrows.len()).filter(|&a| !c.is_identity_arrow(a)).collect();
    let idx = non_id.iter().position(|&a| a == arrow).unwrap();
    if !x.has_gen(BiGenId { n: 1, m: 0, idx }) {
        return Err(Error::Invalid("nerve truncation too low for the edge".into()));
    }
    Ok(BiSimplex::of(BiGenId { n: 1, m: 0, idx }))
}

/// The cell of the (disc) nerve carrying a chain of arrows (identities
/// allowed), normalized.
pub fn nerve_chain_cell(c: &FinCat, x: &Arc<FinBiSet>, raw: &[usize]) -> Result<BiSimplex> {
    let kept: Vec<usize> = raw.iter().copied().filter(|&a| !c.is_identity_arrow(a)).collect();
    let mut values = vec![0usize];
    let mut seen = 0usize;
    for &a in raw {
        if !c.is_identity_arrow(a) {
            seen += 1;
        }
        values.push(seen);
    }
    let epi = OrdinalMap::new(values, kept.len())?;
    if kept.is_empty() {
        let o = c.arrows[raw[0]].src;
        return Ok(BiSimplex {
            gen: BiGenId { n: 0, m: 0, idx: o },
            e1: epi,
            e2: OrdinalMap::identity(0),
        });
    }
    let chains = crate::segal::enumerate_chains_pub(c, kept.len())?;
    let idx = chains[kept.len()]
        .iter()
        .position(|ch| ch == &kept)
        .ok_or_else(|| Error::Invalid("chain not found in the nerve".into()))?;
    let g = BiGenId { n: kept.len(), m: 0, idx };
    if !x.has_gen(g) {
        return Err(Error::Invalid("nerve truncation too low for the chain".into()));
    }
    Ok(BiSimplex { gen: g, e1: epi, e2: OrdinalMap::identity(0) })
}
