//! The twisted-arrow projection, the decomposition of objects over
//! `B × F[m]`, and the skeleton pushout presentation.

use super::{
    bi_coproduct, bi_isomorphic, bi_product, bi_pushout, bi_subobject, bis_skeleton, boundary_box,
    box_, box_decode, reindex, row, row_map, BiGenId, BiMap, BiProduct, BiSimplex, DeltaFunctor,
    FinBiSet, Reindexed,
};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdinalMap};
use crate::sset::{subobject, FinSSet, SSetMap};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The projection from the twisted-arrow object to `opposite × identity`,
/// whose level-`n` components restrict a `(2n+1)`-cell to its first and last
/// `n + 1` vertices.
pub struct TwistProjection {
    pub twisted: Reindexed,
    pub opposite: Reindexed,
    pub product: BiProduct,
    pub pi: BiMap,
}

/// Build the twisted-arrow projection, exact up to first-axis dimension
/// `first_cap` (when given) and otherwise up to the natural bound.
pub fn twist_projection(x: &Arc<FinBiSet>, first_cap: Option<usize>) -> Result<TwistProjection> {
    let twisted = reindex(&DeltaFunctor::twist(), x, first_cap)?;
    // the opposite must be exact wherever the twisted object has cells
    let op_cap = twisted.first_dim.max(0) as usize;
    let opposite = reindex(&DeltaFunctor::opposite(), x, first_cap.map(|c| c.max(op_cap)))?;
    // the projection target is only probed at the twisted object's levels
    let product = match first_cap {
        Some(c) => super::bi_product_capped(&opposite.object, x, c.max(op_cap))?,
        None => bi_product(&opposite.object, x)?,
    };
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in twisted.object.all_gens() {
        let (n, m) = (g.n, g.m);
        let cell = twisted.decode(g)?; // a cell of x at (2n+1, m)
        let head = x.act(&ordinal::shift(0, n, 2 * n + 1)?, &OrdinalMap::identity(m), cell)?;
        let tail = x.act(&ordinal::shift(n + 1, n, 2 * n + 1)?, &OrdinalMap::identity(m), cell)?;
        let head_op = opposite.encode((n, m), &head)?;
        let img = product.simplex(&head_op, &tail)?;
        assign.entry((n, m)).or_default().push(img);
    }
    let pi = BiMap::new(twisted.object.clone(), product.object.clone(), assign)?;
    Ok(TwistProjection { twisted, opposite, product, pi })
}

/// One piece of the decomposition of `X -> B × F[m]` at level `n`: the part
/// of the row `X_n` sitting over a given `τ : [n] -> [m]`.
pub struct TauPiece {
    pub tau: OrdinalMap,
    pub piece: Arc<FinSSet>,
    /// inclusion into the full row `X_n`
    pub include: SSetMap,
    /// the projection of the piece to `row(B, n)`
    pub to_base: SSetMap,
}

/// Decompose level `n` of a map `X -> B × F[m]` (given by its two components)
/// into the pieces indexed by `τ : [n] -> [m]`. The pieces partition the row.
pub fn tau_decompose(
    x_to_b: &BiMap,
    x_to_f: &BiMap,
    m: usize,
    n: usize,
) -> Result<Vec<TauPiece>> {
    if x_to_b.source() != x_to_f.source() {
        return Err(Error::Precondition("component maps have different sources".into()));
    }
    if x_to_f.target().as_ref() != &box_(m, 0) {
        return Err(Error::Precondition(
            "second component does not land in the discrete standard simplex".into(),
        ));
    }
    let x = x_to_b.source().clone();
    let b = x_to_b.target().clone();
    let row_x = row(&x, n)?;
    let row_b = row(&b, n)?;
    let to_base_full = row_map(x_to_b, &row_x, &row_b)?;

    // τ of a row generator is the classifying map of its F[m]-component;
    // it only depends on the first axis, so the assignment is face-closed.
    let tau_of = |s: &crate::sset::Simplex| -> Result<OrdinalMap> {
        let cell = row_x.decode(s);
        let f_cell = x_to_f.apply(&cell)?;
        let (a, _) = box_decode(m, 0, &f_cell);
        Ok(a)
    };

    let mut out = Vec::new();
    for tau in ordinal::enumerate_maps(n, m) {
        let keep = |g: crate::sset::GenId| -> bool {
            tau_of(&crate::sset::Simplex::of(g)).map(|t| t == tau).unwrap_or(false)
        };
        let (piece, include) = subobject(&row_x.object, &keep)?;
        let to_base = to_base_full.compose(&include)?;
        out.push(TauPiece { tau, piece: Arc::new(piece), include, to_base });
    }
    // disjoint and jointly exhaustive by construction; verify the count
    let total: usize = out.iter().map(|p| p.piece.gen_count()).sum();
    if total != row_x.object.gen_count() {
        return Err(Error::RouteDisagreement(
            "tau pieces do not partition the row generators".into(),
        ));
    }
    Ok(out)
}


/// Factor a map through a subobject of its target, given the inclusion.
pub fn factor_through_sub(f: &BiMap, sub: &Arc<FinBiSet>, incl: &BiMap) -> Result<BiMap> {
    let mut back: BTreeMap<BiGenId, BiGenId> = BTreeMap::new();
    for g in sub.all_gens() {
        back.insert(incl.gen_image(g).gen, g);
    }
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = BTreeMap::new();
    for g in f.source().all_gens() {
        let img = f.gen_image(g);
        let sub_gen = back.get(&img.gen).ok_or_else(|| {
            Error::Invalid(format!("image of {g:?} does not lie in the subobject"))
        })?;
        assign.entry((g.n, g.m)).or_default().push(BiSimplex {
            gen: *sub_gen,
            e1: img.e1.clone(),
            e2: img.e2.clone(),
        });
    }
    BiMap::new(f.source().clone(), sub.clone(), assign)
}

/// One step of the skeleton pushout verification.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SkeletonStep {
    pub total_degree: usize,
    pub attached_cells: usize,
    pub matched: bool,
}

/// Copair of compatible maps out of an iterated coproduct, given the
/// component inclusions.
fn nary_copair(
    total: &Arc<FinBiSet>,
    incls: &[BiMap],
    maps: &[BiMap],
    target: &Arc<FinBiSet>,
) -> Result<BiMap> {
    let placeholder = BiSimplex::of(BiGenId { n: 0, m: 0, idx: 0 });
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = total
        .labels()
        .iter()
        .map(|(&k, v)| (k, vec![placeholder.clone(); v.len()]))
        .collect();
    for (incl, f) in incls.iter().zip(maps) {
        if f.target() != target {
            return Err(Error::DimensionMismatch("copair cocone targets differ".into()));
        }
        for g in incl.source().all_gens() {
            let pos = incl.gen_image(g).gen;
            assign.get_mut(&(pos.n, pos.m)).unwrap()[pos.idx] = f.gen_image(g).clone();
        }
    }
    BiMap::new(total.clone(), target.clone(), assign)
}

/// Verify that each skeleton arises from the previous one by attaching a
/// standard bisimplex along its boundary for every non-degenerate cell of the
/// given total degree.
pub fn skeleton_pushout_check(x: &Arc<FinBiSet>, max_total: usize) -> Result<Vec<SkeletonStep>> {
    let mut out = Vec::new();
    for total in 1..=max_total {
        let prev = bis_skeleton(x, total as isize - 1)?;
        let (_, prev_incl) = bi_subobject(x, &|g| g.n + g.m < total)?;
        let target = bis_skeleton(x, total as isize)?;
        let cells: Vec<BiGenId> = x
            .all_gens()
            .into_iter()
            .filter(|g| g.n + g.m == total)
            .collect();
        if cells.is_empty() {
            let matched = bi_isomorphic(&prev, &target)?;
            out.push(SkeletonStep { total_degree: total, attached_cells: 0, matched });
            continue;
        }
        // iterated coproducts ⊔ box and ⊔ ∂box, tracking component inclusions
        let fold = |parts: Vec<Arc<FinBiSet>>| -> Result<(Arc<FinBiSet>, Vec<BiMap>)> {
            let mut acc = parts[0].clone();
            let mut incls = vec![BiMap::identity(acc.clone())];
            for p in &parts[1..] {
                let c = bi_coproduct(&acc, p)?;
                for i in incls.iter_mut() {
                    *i = c.in1.compose(i)?;
                }
                incls.push(c.in2.clone());
                acc = c.object;
            }
            Ok((acc, incls))
        };
        let box_parts: Vec<Arc<FinBiSet>> =
            cells.iter().map(|g| Arc::new(box_(g.n, g.m))).collect();
        let mut bnd_parts = Vec::new();
        let mut bnd_to_box = Vec::new();
        for g in &cells {
            let (bb, bb_incl) = boundary_box(g.n, g.m)?;
            bnd_parts.push(bb);
            bnd_to_box.push(bb_incl);
        }
        let (boxes_obj, box_incls) = fold(box_parts)?;
        let (bnd_obj, bnd_incls) = fold(bnd_parts)?;

        // ⊔∂box -> ⊔box: componentwise boundary inclusions
        let comp_to_boxes: Vec<BiMap> = (0..cells.len())
            .map(|k| box_incls[k].compose(&bnd_to_box[k]))
            .collect::<Result<_>>()?;
        // ⊔∂box -> sk_{total-1}: characteristic maps restricted to boundaries
        let comp_to_prev: Vec<BiMap> = cells
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let chi = BiMap::classifying(x.clone(), &BiSimplex::of(*g))?;
                factor_through_sub(&chi.compose(&bnd_to_box[k])?, &prev, &prev_incl)
            })
            .collect::<Result<_>>()?;
        let leg_box = nary_copair(&bnd_obj, &bnd_incls, &comp_to_boxes, &boxes_obj)?;
        let leg_prev = nary_copair(&bnd_obj, &bnd_incls, &comp_to_prev, &prev)?;
        let po = bi_pushout(&leg_prev, &leg_box)?;
        let matched = bi_isomorphic(&po.object, &target)?;
        out.push(SkeletonStep { total_degree: total, attached_cells: cells.len(), matched });
    }
    Ok(out)
}
