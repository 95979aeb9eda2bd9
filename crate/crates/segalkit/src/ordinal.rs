//! The index category of finite ordinals.
//!
//! Objects are the ordered sets `[n] = {0 < 1 < ... < n}`, represented by the
//! single natural `n`; arrows are weakly increasing maps, stored as their
//! value sequences. Composition is pointwise, equality is structural, and the
//! lexicographic order on value sequences is the canonical enumeration order
//! used everywhere else in the crate.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A weakly increasing map `[n] -> [m]` of finite ordinals.
///
/// `values` has length `n + 1`; `cod` is `m`. The domain is implicit in the
/// length of `values`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrdinalMap {
    cod: usize,
    values: Vec<usize>,
}

impl std::fmt::Debug for OrdinalMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.dom(), self.cod, self.values)
    }
}

impl OrdinalMap {
    /// Build a map from its value sequence, checking monotonicity and range.
    pub fn new(values: Vec<usize>, cod: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("ordinal map needs at least one value".into()));
        }
        for w in values.windows(2) {
            if w[0] > w[1] {
                return Err(Error::Invalid(format!(
                    "values {values:?} are not weakly increasing"
                )));
            }
        }
        if *values.last().unwrap() > cod {
            return Err(Error::Invalid(format!(
                "value {} exceeds codomain [{}]",
                values.last().unwrap(),
                cod
            )));
        }
        Ok(OrdinalMap { cod, values })
    }

    pub fn identity(n: usize) -> Self {
        OrdinalMap { cod: n, values: (0..=n).collect() }
    }

    /// Domain size: the map goes `[dom()] -> [cod()]`.
    pub fn dom(&self) -> usize {
        self.values.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Injective = strictly increasing.
    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Surjective = hits every element of the codomain.
    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.cod
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `g.compose(f)` is `g ∘ f`, defined when `f.cod == g.dom`.
    pub fn compose(&self, f: &OrdinalMap) -> Result<OrdinalMap> {
        if f.cod != self.dom() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.dom(),
                self.cod,
                f.dom(),
                f.cod
            )));
        }
        Ok(OrdinalMap {
            cod: self.cod,
            values: f.values.iter().map(|&i| self.values[i]).collect(),
        })
    }

    /// The involution reversing the order of both ordinals: the result sends
    /// `n - i` to `m - τ(i)`.
    pub fn opposite(&self) -> OrdinalMap {
        let n = self.dom();
        let m = self.cod;
        OrdinalMap {
            cod: m,
            values: (0..=n).map(|k| m - self.values[n - k]).collect(),
        }
    }

    /// The edgewise-subdivision functor on arrows: `[n] -> [m]` is sent to
    /// `[2n+1] -> [2m+1]`, acting by the opposite map on the first `n + 1`
    /// elements and by a shifted copy of the original on the last `n + 1`.
    pub fn twist(&self) -> OrdinalMap {
        let n = self.dom();
        let m = self.cod;
        let mut values = Vec::with_capacity(2 * n + 2);
        for k in 0..=n {
            values.push(m - self.values[n - k]);
        }
        for j in 0..=n {
            values.push(m + 1 + self.values[j]);
        }
        OrdinalMap { cod: 2 * m + 1, values }
    }

    /// Unique epi-mono factorization: returns `(surjection, injection)` with
    /// `injection ∘ surjection == self`.
    pub fn epi_mono_factor(&self) -> (OrdinalMap, OrdinalMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let surj_values = self
            .values
            .iter()
            .map(|v| image.iter().position(|w| w == v).unwrap())
            .collect();
        let surj = OrdinalMap { cod: image.len() - 1, values: surj_values };
        let inj = OrdinalMap { cod: self.cod, values: image };
        (surj, inj)
    }

    /// Indices `a` with `a` missing from the image. Only meaningful for
    /// injections, where they determine the map.
    pub fn missing_indices(&self) -> Vec<usize> {
        let mut hit = vec![false; self.cod + 1];
        for &v in &self.values {
            hit[v] = true;
        }
        (0..=self.cod).filter(|&a| !hit[a]).collect()
    }
}

/// The injection `[n-1] -> [n]` whose image misses `i`.
pub fn face(i: usize, n: usize) -> Result<OrdinalMap> {
    if n == 0 || i > n {
        return Err(Error::IndexRange(format!("face({i}, {n})")));
    }
    Ok(OrdinalMap {
        cod: n,
        values: (0..n).map(|k| if k < i { k } else { k + 1 }).collect(),
    })
}

/// The surjection `[n+1] -> [n]` repeating `i`.
pub fn degeneracy(i: usize, n: usize) -> Result<OrdinalMap> {
    if i > n {
        return Err(Error::IndexRange(format!("degeneracy({i}, {n})")));
    }
    Ok(OrdinalMap {
        cod: n,
        values: (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect(),
    })
}

/// The map `[m] -> [n]` with `i ↦ k_i`, given the weakly increasing tuple
/// `k_0 <= ... <= k_m <= n`.
pub fn delta_tuple(ks: &[usize], n: usize) -> Result<OrdinalMap> {
    if ks.is_empty() {
        return Err(Error::IndexRange("delta_tuple needs a nonempty tuple".into()));
    }
    OrdinalMap::new(ks.to_vec(), n)
        .map_err(|_| Error::IndexRange(format!("delta_tuple({ks:?}, {n})")))
}

/// The shifted inclusion `e^i : [m] -> [n]`, `k ↦ k + i`, for `0 <= i <= n - m`.
pub fn shift(i: usize, m: usize, n: usize) -> Result<OrdinalMap> {
    if m > n || i > n - m {
        return Err(Error::IndexRange(format!("shift({i}, {m}, {n})")));
    }
    Ok(OrdinalMap { cod: n, values: (0..=m).map(|k| k + i).collect() })
}

/// The vertex inclusion `[0] -> [n]` hitting `k`.
pub fn vertex(k: usize, n: usize) -> Result<OrdinalMap> {
    if k > n {
        return Err(Error::IndexRange(format!("vertex({k}, {n})")));
    }
    Ok(OrdinalMap { cod: n, values: vec![k] })
}

/// All weakly increasing maps `[n] -> [m]`, in lexicographic order of value
/// sequences. There are `C(n+m+1, n+1)` of them.
pub fn enumerate_maps(n: usize, m: usize) -> Vec<OrdinalMap> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n + 1];
    loop {
        out.push(OrdinalMap { cod: m, values: current.clone() });
        // next weakly increasing tuple in lexicographic order
        let mut i = n + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < m {
                current[i] += 1;
                for j in i + 1..=n {
                    current[j] = current[i];
                }
                break;
            }
        }
    }
}

/// All epis `[n] ->> [k]`, in lexicographic order.
pub fn enumerate_epis(n: usize, k: usize) -> Vec<OrdinalMap> {
    if k > n {
        return Vec::new();
    }
    enumerate_maps(n, k).into_iter().filter(|t| t.is_surjective()).collect()
}

/// All injections `[k] -> [n]`, in lexicographic order.
pub fn enumerate_monos(k: usize, n: usize) -> Vec<OrdinalMap> {
    if k > n {
        return Vec::new();
    }
    enumerate_maps(k, n).into_iter().filter(|t| t.is_injective()).collect()
}

/// Binomial coefficient, used by counting oracles.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn om(values: &[usize], cod: usize) -> OrdinalMap {
        OrdinalMap::new(values.to_vec(), cod).unwrap()
    }

    #[test]
    fn compose_identity_law() {
        let d1 = face(1, 2).unwrap();
        assert_eq!(OrdinalMap::identity(2).compose(&d1).unwrap(), d1);
        assert_eq!(d1.compose(&OrdinalMap::identity(1)).unwrap(), d1);
    }

    #[test]
    fn compose_s0_d0_is_identity() {
        let s0 = degeneracy(0, 0).unwrap(); // [1] -> [0]
        let d0 = face(0, 1).unwrap(); // [0] -> [1]
        assert_eq!(s0.compose(&d0).unwrap(), OrdinalMap::identity(0));
    }

    #[test]
    fn compose_pointwise() {
        // d^2:[1]->[2] after d^0:[0]->[1] picks out the vertex 1 of [2]
        let d2 = face(2, 2).unwrap();
        let d0 = face(0, 1).unwrap();
        let c = d2.compose(&d0).unwrap();
        assert_eq!(c, om(&[1], 2));
    }

    #[test]
    fn compose_dimension_mismatch() {
        let d0 = face(0, 1).unwrap();
        assert!(d0.compose(&d0).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(face(0, 1).unwrap(), om(&[1], 1));
        assert_eq!(degeneracy(0, 1).unwrap(), om(&[0, 0, 1], 1));
        assert_eq!(delta_tuple(&[0, 0], 1).unwrap(), om(&[0, 0], 1));
        assert_eq!(shift(2, 1, 3).unwrap(), om(&[2, 3], 3));
        assert!(face(3, 2).is_err());
        assert!(degeneracy(2, 1).is_err());
        assert!(shift(3, 1, 3).is_err());
        assert!(delta_tuple(&[2, 1], 3).is_err());
    }

    #[test]
    fn opposite_formulas() {
        for n in 0..=4 {
            assert_eq!(OrdinalMap::identity(n).opposite(), OrdinalMap::identity(n));
        }
        // ι(d^0:[0]->[1]) = d^1
        assert_eq!(face(0, 1).unwrap().opposite(), om(&[0], 1));
        assert_eq!(om(&[0], 1).opposite(), om(&[1], 1));
    }

    #[test]
    fn opposite_involutive_and_functorial() {
        for n in 0..=4 {
            for m in 0..=4 {
                for t in enumerate_maps(n, m) {
                    assert_eq!(t.opposite().opposite(), t);
                }
            }
        }
        for a in 0..=3 {
            for b in 0..=3 {
                for c in 0..=3 {
                    for f in enumerate_maps(a, b) {
                        for g in enumerate_maps(b, c) {
                            let gf = g.compose(&f).unwrap();
                            assert_eq!(
                                gf.opposite(),
                                g.opposite().compose(&f.opposite()).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twist_values() {
        assert_eq!(OrdinalMap::identity(1).twist(), OrdinalMap::identity(3));
        // twist(d^0:[0]->[1]) has values (0, 3)
        assert_eq!(face(0, 1).unwrap().twist(), om(&[0, 3], 3));
    }

    #[test]
    fn twist_functorial() {
        for a in 0..=3 {
            for b in 0..=3 {
                for c in 0..=3 {
                    for f in enumerate_maps(a, b) {
                        for g in enumerate_maps(b, c) {
                            let gf = g.compose(&f).unwrap();
                            assert_eq!(gf.twist(), g.twist().compose(&f.twist()).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twist_preserves_epis_and_monos() {
        for n in 0..=3 {
            for m in 0..=3 {
                for t in enumerate_maps(n, m) {
                    let tw = t.twist();
                    assert_eq!(t.is_surjective(), tw.is_surjective());
                    assert_eq!(t.is_injective(), tw.is_injective());
                }
            }
        }
    }

    #[test]
    fn epi_mono_factorization() {
        let (s, i) = OrdinalMap::identity(3).epi_mono_factor();
        assert!(s.is_identity() && i.is_identity());

        // τ:[1]->[2] with values (1,1): surjection s^0, injection hitting 1
        let t = om(&[1, 1], 2);
        let (s, i) = t.epi_mono_factor();
        assert_eq!(s, om(&[0, 0], 0));
        assert_eq!(i, om(&[1], 2));

        for n in 0..=4 {
            for m in 0..=4 {
                for t in enumerate_maps(n, m) {
                    let (s, i) = t.epi_mono_factor();
                    assert!(s.is_surjective());
                    assert!(i.is_injective());
                    assert_eq!(i.compose(&s).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn epi_mono_factorization_unique() {
        // brute-force uniqueness witness on small sizes
        for n in 0..=3 {
            for m in 0..=3 {
                for t in enumerate_maps(n, m) {
                    let mut found = 0;
                    for k in 0..=n.min(m) {
                        for s in enumerate_epis(n, k) {
                            for i in enumerate_monos(k, m) {
                                if i.compose(&s).unwrap() == t {
                                    found += 1;
                                }
                            }
                        }
                    }
                    assert_eq!(found, 1, "factorization of {t:?} not unique");
                }
            }
        }
    }

    #[test]
    fn enumerate_counts_and_order() {
        let maps = enumerate_maps(1, 1);
        assert_eq!(
            maps,
            vec![om(&[0, 0], 1), om(&[0, 1], 1), om(&[1, 1], 1)]
        );
        assert_eq!(enumerate_maps(2, 1).len(), 4);
        for m in 0..=4 {
            assert_eq!(enumerate_maps(0, m).len(), m + 1);
        }
        for n in 0..=4 {
            for m in 0..=4 {
                let all = enumerate_maps(n, m);
                assert_eq!(all.len(), binomial(n + m + 1, n + 1));
                let mut dedup = all.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
                assert!(all.windows(2).all(|w| w[0] < w[1]), "lex order violated");
            }
        }
    }

    #[test]
    fn simplicial_identities_exhaustive() {
        // d^j d^i = d^i d^{j-1} for i < j
        for n in 1..=5 {
            for j in 0..=n + 1 {
                for i in 0..j {
                    let lhs = face(j, n + 1).unwrap().compose(&face(i, n).unwrap()).unwrap();
                    let rhs = face(i, n + 1).unwrap().compose(&face(j - 1, n).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // s^j s^i = s^i s^{j+1} for i <= j
        for n in 0..=5 {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = degeneracy(i, n).unwrap().compose(&degeneracy(j + 1, n + 1).unwrap()).unwrap();
                    let rhs = degeneracy(j, n).unwrap().compose(&degeneracy(i, n + 1).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // s^j d^i relations
        for n in 1..=5 {
            for j in 0..=n - 1 {
                for i in 0..=n {
                    let c = degeneracy(j, n - 1).unwrap().compose(&face(i, n).unwrap()).unwrap();
                    if i < j {
                        let rhs = face(i, n - 1).unwrap().compose(&degeneracy(j - 1, n - 2).unwrap()).unwrap();
                        assert_eq!(c, rhs);
                    } else if i == j || i == j + 1 {
                        assert!(c.is_identity());
                    } else {
                        let rhs = face(i - 1, n - 1).unwrap().compose(&degeneracy(j, n - 2).unwrap()).unwrap();
                        assert_eq!(c, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn missing_indices_of_injections() {
        let d = face(1, 3).unwrap();
        assert_eq!(d.missing_indices(), vec![1]);
        let v = vertex(2, 4).unwrap();
        assert_eq!(v.missing_indices(), vec![0, 1, 3, 4]);
    }
}
