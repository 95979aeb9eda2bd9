//! Exact integer homology of finite simplicial sets.
//!
//! Chains are normalized: one free generator per non-degenerate simplex, with
//! degenerate faces contributing zero to the boundary. Smith normal form is
//! computed over arbitrary-precision integers, so no overflow can silently
//! corrupt a torsion coefficient. The weak-equivalence verdict here is a
//! necessary test only and its vocabulary says so.

use crate::error::{Error, Result};
use crate::sset::{pi0, FinSSet, SSetMap};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix { rows, cols, data: entries.iter().map(|&e| BigInt::from(e)).collect() }
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matrix product shapes".into()));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) += v;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }
}

/// Invariant factors and rank of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// nonzero diagonal entries, each dividing the next, all positive
    pub factors: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| **f > BigInt::from(1)).cloned().collect()
    }
}

/// Smith normal form by integer row/column reduction with smallest-pivot
/// selection.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut a = m.clone();
    let mut factors = Vec::new();
    let mut top = 0usize;
    while top < a.rows && top < a.cols {
        // find the nonzero entry of smallest magnitude in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for r in top..a.rows {
            for c in top..a.cols {
                if !a.at(r, c).is_zero()
                    && pivot.is_none_or(|(pr, pc)| a.at(r, c).abs() < a.at(pr, pc).abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        swap_rows(&mut a, top, pr);
        swap_cols(&mut a, top, pc);
        if a.at(top, top).is_negative() {
            negate_row(&mut a, top);
        }
        // clear the row and column; restart the pivot hunt when a remainder
        // smaller than the pivot appears
        let mut dirty = false;
        for r in top + 1..a.rows {
            let q = a.at(r, top) / a.at(top, top);
            if !q.is_zero() {
                row_sub(&mut a, r, top, &q);
            }
            if !a.at(r, top).is_zero() {
                dirty = true;
            }
        }
        for c in top + 1..a.cols {
            let q = a.at(top, c) / a.at(top, top);
            if !q.is_zero() {
                col_sub(&mut a, c, top, &q);
            }
            if !a.at(top, c).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // pivot must divide the rest of the block; if not, fold an offending
        // row in and restart
        let mut offender = None;
        'scan: for r in top + 1..a.rows {
            for c in top + 1..a.cols {
                if !(a.at(r, c) % a.at(top, top)).is_zero() {
                    offender = Some(r);
                    break 'scan;
                }
            }
        }
        if let Some(r) = offender {
            row_add(&mut a, top, r);
            continue;
        }
        factors.push(a.at(top, top).clone());
        top += 1;
    }
    Snf { factors }
}

fn swap_rows(a: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
}

fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows {
        a.data.swap(r * a.cols + i, r * a.cols + j);
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for c in 0..a.cols {
        let v = -a.at(i, c).clone();
        *a.at_mut(i, c) = v;
    }
}

fn row_sub(a: &mut IntMatrix, r: usize, from: usize, q: &BigInt) {
    for c in 0..a.cols {
        let v = a.at(r, c) - q * a.at(from, c);
        *a.at_mut(r, c) = v;
    }
}

fn row_add(a: &mut IntMatrix, r: usize, from: usize) {
    for c in 0..a.cols {
        let v = a.at(r, c) + a.at(from, c);
        *a.at_mut(r, c) = v;
    }
}

fn col_sub(a: &mut IntMatrix, c: usize, from: usize, q: &BigInt) {
    for r in 0..a.rows {
        let v = a.at(r, c) - q * a.at(r, from);
        *a.at_mut(r, c) = v;
    }
}

/// Normalized chain complex of a finite simplicial set.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// rank per degree = number of generators
    pub ranks: Vec<usize>,
    /// `boundary[d]` maps degree `d` to degree `d - 1`, for `d >= 1`
    pub boundary: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    pub fn boundary_at(&self, d: usize) -> Option<&IntMatrix> {
        if d == 0 {
            None
        } else {
            self.boundary.get(d - 1)
        }
    }

    /// `∂ ∘ ∂ == 0` in every degree.
    pub fn verify(&self) -> Result<()> {
        for d in 2..self.ranks.len() {
            let a = self.boundary_at(d - 1).unwrap();
            let b = self.boundary_at(d).unwrap();
            if !a.mul(b)?.is_zero() {
                return Err(Error::Invalid(format!("∂∂ ≠ 0 between degrees {d} and {}", d - 2)));
            }
        }
        Ok(())
    }
}

/// Boundary of a generator: alternating sum of faces, degenerate faces
/// contributing zero.
pub fn chain_complex(x: &FinSSet) -> Result<ChainComplex> {
    let ranks = x.gen_counts();
    let mut boundary = Vec::new();
    for d in 1..ranks.len() {
        let mut m = IntMatrix::zero(ranks[d - 1], ranks[d]);
        for (col, g) in x.gens(d).enumerate() {
            for (i, f) in x.faces_of(g).iter().enumerate() {
                if f.is_nondegenerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *m.at_mut(f.gen.idx, col) += BigInt::from(sign);
                }
            }
        }
        boundary.push(m);
    }
    let c = ChainComplex { ranks, boundary };
    c.verify()?;
    Ok(c)
}

/// Betti number and torsion coefficients in one degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<String>,
}

/// `H_d(X; Z)` of the normalized complex.
pub fn homology(x: &FinSSet, d: usize) -> Result<HomologyGroup> {
    let c = chain_complex(x)?;
    homology_of(&c, d)
}

pub fn homology_of(c: &ChainComplex, d: usize) -> Result<HomologyGroup> {
    let n_d = c.rank(d);
    let rank_in = c.boundary_at(d).map_or(0, |m| smith_normal_form(m).rank());
    let snf_out = c.boundary_at(d + 1).map(smith_normal_form);
    let rank_out = snf_out.as_ref().map_or(0, Snf::rank);
    if n_d < rank_in + rank_out {
        return Err(Error::Invalid("rank bookkeeping failed".into()));
    }
    let betti = n_d - rank_in - rank_out;
    let torsion = snf_out
        .map(|s| s.torsion().iter().map(|t| t.to_string()).collect())
        .unwrap_or_default();
    Ok(HomologyGroup { betti, torsion })
}

/// Per-degree homology report.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HomologyReport {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyReport {
    pub fn validate(&self) -> Result<()> {
        for g in &self.groups {
            let mut prev: Option<BigInt> = None;
            for t in &g.torsion {
                let v: BigInt = t.parse().map_err(|_| Error::Parse("torsion entry".into()))?;
                if v < BigInt::from(2) {
                    return Err(Error::Invalid("torsion factor < 2".into()));
                }
                if let Some(p) = prev {
                    if !(&v % &p).is_zero() {
                        return Err(Error::Invalid("torsion factors do not divide in order".into()));
                    }
                }
                prev = Some(v);
            }
        }
        Ok(())
    }
}

pub fn homology_report(x: &FinSSet, max_degree: usize) -> Result<HomologyReport> {
    let c = chain_complex(x)?;
    let groups = (0..=max_degree).map(|d| homology_of(&c, d)).collect::<Result<Vec<_>>>()?;
    let r = HomologyReport { groups };
    r.validate()?;
    Ok(r)
}

/// The chain map induced by a simplicial map: a non-degenerate image
/// contributes its generator, a degenerate image contributes zero.
pub fn chain_map(f: &SSetMap) -> Result<Vec<IntMatrix>> {
    let src = chain_complex(f.source())?;
    let tgt = chain_complex(f.target())?;
    let degrees = src.ranks.len().max(tgt.ranks.len());
    let mut out = Vec::new();
    for d in 0..degrees {
        let mut m = IntMatrix::zero(tgt.rank(d), src.rank(d));
        for (col, g) in f.source().gens(d).enumerate() {
            let img = f.gen_image(g);
            if img.is_nondegenerate() {
                *m.at_mut(img.gen.idx, col) += BigInt::from(1);
            }
        }
        out.push(m);
    }
    // naturality: ∂ f = f ∂
    for d in 1..degrees {
        if src.rank(d) == 0 {
            continue;
        }
        let lhs = tgt
            .boundary_at(d)
            .map(|b| b.mul(&out[d]))
            .transpose()?
            .unwrap_or_else(|| IntMatrix::zero(tgt.rank(d - 1), src.rank(d)));
        let rhs = out[d - 1].mul(src.boundary_at(d).unwrap())?;
        if lhs != rhs {
            return Err(Error::Invalid("chain map does not commute with boundaries".into()));
        }
    }
    Ok(out)
}

/// Verdict vocabulary for the necessary weak-equivalence test. There is no
/// positive certification: a map that passes is merely `Consistent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum WeVerdict {
    RefutedWe,
    Consistent,
}

/// Necessary test for being a weak equivalence: the map of connected
/// components must be a bijection and the mapping cone must be acyclic in
/// degrees `<= bound + 1`. Failure refutes; success certifies nothing.
pub fn we_necessary(f: &SSetMap, bound: usize) -> Result<(WeVerdict, String)> {
    // π0 bijectivity
    let p_src = pi0(f.source())?;
    let p_tgt = pi0(f.target())?;
    let mut hit = vec![false; p_tgt.count()];
    for class in &p_src.classes {
        let img = f.gen_image(class[0]).gen;
        let t = p_tgt.class_of(img).ok_or_else(|| Error::Invalid("lost vertex class".into()))?;
        if hit[t] {
            return Ok((WeVerdict::RefutedWe, "π0 map is not injective".into()));
        }
        hit[t] = true;
    }
    if hit.iter().any(|h| !h) {
        return Ok((WeVerdict::RefutedWe, "π0 map is not surjective".into()));
    }

    // mapping cone: C_d = X_{d-1} ⊕ Y_d with ∂(x, y) = (-∂x, ∂y - f(x))
    let cx = chain_complex(f.source())?;
    let cy = chain_complex(f.target())?;
    let fm = chain_map(f)?;
    let degrees = bound + 2;
    let rank = |d: usize| {
        let xr = if d >= 1 { cx.rank(d - 1) } else { 0 };
        xr + cy.rank(d)
    };
    let mut cone_boundary: Vec<IntMatrix> = Vec::new();
    for d in 1..=degrees {
        let (rows, cols) = (rank(d - 1), rank(d));
        let mut m = IntMatrix::zero(rows, cols);
        let x_rows = if d >= 2 { cx.rank(d - 2) } else { 0 };
        // block -∂_X on the top-left: (d-1) -> (d-2) of X
        if d >= 2 {
            if let Some(bx) = cx.boundary_at(d - 1) {
                for r in 0..bx.rows {
                    for c in 0..bx.cols {
                        *m.at_mut(r, c) = -bx.at(r, c).clone();
                    }
                }
            }
        }
        // block -f on the bottom-left: X_{d-1} -> Y_{d-1}
        if d >= 1 && cx.rank(d - 1) > 0 {
            if let Some(fd) = fm.get(d - 1) {
                for r in 0..fd.rows {
                    for c in 0..fd.cols {
                        *m.at_mut(x_rows + r, c) = -fd.at(r, c).clone();
                    }
                }
            }
        }
        // block ∂_Y on the bottom-right
        if let Some(by) = cy.boundary_at(d) {
            for r in 0..by.rows {
                for c in 0..by.cols {
                    *m.at_mut(x_rows + r, cx.rank(d - 1) + c) = by.at(r, c).clone();
                }
            }
        }
        cone_boundary.push(m);
    }
    let cone = ChainComplex { ranks: (0..=degrees).map(rank).collect(), boundary: cone_boundary };
    cone.verify()?;
    for d in 0..=bound + 1 {
        let h = homology_of(&cone, d)?;
        if h.betti != 0 || !h.torsion.is_empty() {
            return Ok((
                WeVerdict::RefutedWe,
                format!("mapping cone has H_{d} = (betti {}, torsion {:?})", h.betti, h.torsion),
            ));
        }
    }
    Ok((WeVerdict::Consistent, format!("cone acyclic through degree {}", bound + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, standard, subobject, SSetMap};
    use std::sync::Arc;

    /// Oracle: determinantal divisors by brute-force minors, for tiny
    /// matrices. `factor_k = d_k / d_{k-1}` with `d_k` the gcd of all k-by-k
    /// minors.
    fn snf_oracle(m: &IntMatrix) -> Vec<BigInt> {
        use num_traits::One;
        fn dets(m: &IntMatrix, k: usize) -> BigInt {
            // gcd of all k×k minors
            fn combs(n: usize, k: usize) -> Vec<Vec<usize>> {
                if k == 0 {
                    return vec![Vec::new()];
                }
                if n < k {
                    return Vec::new();
                }
                let mut out = combs(n - 1, k);
                for mut c in combs(n - 1, k - 1) {
                    c.push(n - 1);
                    out.push(c);
                }
                out
            }
            fn det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
                if rows.is_empty() {
                    return BigInt::one();
                }
                let mut acc = BigInt::zero();
                for (i, &r) in rows.iter().enumerate() {
                    let sub_rows: Vec<usize> =
                        rows.iter().filter(|&&x| x != r).cloned().collect();
                    let minor = det(m, &sub_rows, &cols[1..]);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    acc += BigInt::from(sign) * m.at(r, cols[0]) * minor;
                }
                acc
            }
            let mut g = BigInt::zero();
            for rows in combs(m.rows, k) {
                for cols in combs(m.cols, k) {
                    g = num_integer_gcd(&g, &det(m, &rows, &cols));
                }
            }
            g
        }
        fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
            let (mut a, mut b) = (a.abs(), b.abs());
            while !b.is_zero() {
                let r = &a % &b;
                a = b;
                b = r;
            }
            a
        }
        let maxk = m.rows.min(m.cols);
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=maxk {
            let dk = dets(m, k);
            if dk.is_zero() {
                break;
            }
            out.push(&dk / &prev);
            prev = dk;
        }
        out
    }

    #[test]
    fn snf_simple_cases() {
        assert_eq!(smith_normal_form(&IntMatrix::zero(2, 3)).rank(), 0);
        let m = IntMatrix::from_i64(1, 1, &[2]);
        assert_eq!(smith_normal_form(&m).factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn snf_matches_minor_oracle() {
        let cases: Vec<IntMatrix> = vec![
            IntMatrix::from_i64(2, 2, &[2, 4, 4, 8]),
            IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]),
            IntMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]),
            IntMatrix::from_i64(3, 3, &[6, 0, 0, 0, 10, 0, 0, 0, 15]),
            IntMatrix::from_i64(3, 2, &[-1, 1, 1, -1, 0, 2]),
            IntMatrix::from_i64(2, 2, &[0, -3, 3, 0]),
        ];
        for m in cases {
            let snf = smith_normal_form(&m);
            let oracle = snf_oracle(&m);
            assert_eq!(snf.factors, oracle, "matrix {m:?}");
            // divisibility chain
            for w in snf.factors.windows(2) {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn chain_complex_of_interval_and_circle() {
        let c = chain_complex(&standard(1)).unwrap();
        assert_eq!(c.ranks, vec![2, 1]);
        let b = c.boundary_at(1).unwrap();
        // faces: d0 = terminal vertex (+), d1 = initial vertex (-)
        let col: Vec<i64> = vec![1, -1];
        let signs: Vec<BigInt> = col.into_iter().map(BigInt::from).collect();
        let got: Vec<BigInt> = vec![b.at(1, 0).clone(), b.at(0, 0).clone()];
        assert_eq!(got, signs);

        let c = chain_complex(&boundary(2).unwrap()).unwrap();
        assert_eq!(c.ranks, vec![3, 3]);
        c.verify().unwrap();
    }

    #[test]
    fn sphere_homology() {
        // circle
        let h = homology_report(&boundary(2).unwrap(), 2).unwrap();
        assert_eq!(h.groups[0], HomologyGroup { betti: 1, torsion: vec![] });
        assert_eq!(h.groups[1], HomologyGroup { betti: 1, torsion: vec![] });
        assert_eq!(h.groups[2], HomologyGroup { betti: 0, torsion: vec![] });
        // 2-sphere
        let h = homology_report(&boundary(3).unwrap(), 3).unwrap();
        assert_eq!(h.groups[0].betti, 1);
        assert_eq!(h.groups[1].betti, 0);
        assert_eq!(h.groups[2].betti, 1);
        assert_eq!(h.groups[3].betti, 0);
        assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn simplices_are_acyclic() {
        for n in 0..=3 {
            let h = homology_report(&standard(n), 3).unwrap();
            assert_eq!(h.groups[0].betti, 1);
            for d in 1..=3 {
                assert_eq!(h.groups[d], HomologyGroup { betti: 0, torsion: vec![] }, "H_{d} of standard({n})");
            }
        }
    }

    #[test]
    fn coproduct_homology_is_direct_sum() {
        let x = Arc::new(boundary(2).unwrap());
        let y = Arc::new(standard(1));
        let c = crate::sset::coproduct(&x, &y).unwrap();
        for d in 0..=2 {
            let hx = homology(&x, d).unwrap();
            let hy = homology(&y, d).unwrap();
            let hc = homology(&c.object, d).unwrap();
            assert_eq!(hc.betti, hx.betti + hy.betti);
        }
    }

    #[test]
    fn we_necessary_verdicts() {
        // identity is consistent
        let x = Arc::new(boundary(2).unwrap());
        let (v, _) = we_necessary(&SSetMap::identity(x.clone()), 2).unwrap();
        assert_eq!(v, WeVerdict::Consistent);

        // collapsing two points to one is refuted by π0
        let b1 = Arc::new(boundary(1).unwrap());
        let (v, why) = we_necessary(&SSetMap::terminal(b1), 2).unwrap();
        assert_eq!(v, WeVerdict::RefutedWe);
        assert!(why.contains("π0"));

        // the boundary inclusion ∂Δ[2] -> Δ[2] is refuted in homology
        let d2 = Arc::new(standard(2));
        let (_, incl) = subobject(&d2, &|g| g.dim < 2).unwrap();
        let (v, why) = we_necessary(&incl, 2).unwrap();
        assert_eq!(v, WeVerdict::RefutedWe, "{why}");
        assert!(why.contains("cone"));
    }

    #[test]
    fn homology_invariant_under_generator_relabeling() {
        // isomorphic objects have equal reports
        let x = boundary(2).unwrap();
        let relabeled = FinSSet::build(
            x.labels().iter().map(|l| l.iter().map(|s| format!("z_{s}")).collect()).collect(),
            (0..x.gen_counts().len())
                .map(|d| x.gens(d).map(|g| x.faces_of(g).to_vec()).collect())
                .collect(),
        )
        .unwrap();
        for d in 0..=1 {
            assert_eq!(homology(&x, d).unwrap(), homology(&relabeled, d).unwrap());
        }
    }
}
