//! Finite categories with explicit composition tables, functors into sets,
//! and the factories used by the rest of the crate as test inputs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite category: objects and arrows are indices, composition is a full
/// table, identities are designated arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// `compose[&(f, g)] = g ∘ f` for composable `f : a -> b`, `g : b -> c`.
    pub compose: BTreeMap<(usize, usize), usize>,
    /// identity arrow of each object
    pub identity: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

impl FinCat {
    pub fn validate(&self) -> Result<()> {
        if self.identity.len() != self.objects.len() {
            return Err(Error::Invalid("one identity per object required".into()));
        }
        for (o, &i) in self.identity.iter().enumerate() {
            let a = self.arrows.get(i).ok_or_else(|| Error::Invalid("missing identity arrow".into()))?;
            if a.src != o || a.tgt != o {
                return Err(Error::Invalid(format!("identity of {o} has wrong endpoints")));
            }
        }
        for a in &self.arrows {
            if a.src >= self.objects.len() || a.tgt >= self.objects.len() {
                return Err(Error::Invalid(format!("arrow {} has missing endpoints", a.name)));
            }
        }
        // totality and endpoint correctness of composition
        for (f, af) in self.arrows.iter().enumerate() {
            for (g, ag) in self.arrows.iter().enumerate() {
                if af.tgt == ag.src {
                    let c = *self
                        .compose
                        .get(&(f, g))
                        .ok_or_else(|| Error::Invalid(format!("missing composite {f};{g}")))?;
                    let ac = &self.arrows[c];
                    if ac.src != af.src || ac.tgt != ag.tgt {
                        return Err(Error::Invalid(format!("composite {f};{g} has wrong endpoints")));
                    }
                } else if self.compose.contains_key(&(f, g)) {
                    return Err(Error::Invalid(format!("composite of non-composable {f};{g}")));
                }
            }
        }
        // identity laws
        for (f, af) in self.arrows.iter().enumerate() {
            if self.compose[&(self.identity[af.src], f)] != f
                || self.compose[&(f, self.identity[af.tgt])] != f
            {
                return Err(Error::Invalid(format!("identity law fails at {f}")));
            }
        }
        // associativity, full table
        for (f, af) in self.arrows.iter().enumerate() {
            for (g, ag) in self.arrows.iter().enumerate() {
                if af.tgt != ag.src {
                    continue;
                }
                for (h, ah) in self.arrows.iter().enumerate() {
                    if ag.tgt != ah.src {
                        continue;
                    }
                    let lhs = self.compose[&(self.compose[&(f, g)], h)];
                    let rhs = self.compose[&(f, self.compose[&(g, h)])];
                    if lhs != rhs {
                        return Err(Error::Invalid(format!("associativity fails at {f};{g};{h}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_identity_arrow(&self, f: usize) -> bool {
        self.identity.contains(&f)
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| self.arrows[f].src == x && self.arrows[f].tgt == y)
            .collect()
    }

    /// `g ∘ f`, defined when `f.tgt == g.src`.
    pub fn comp(&self, f: usize, g: usize) -> Result<usize> {
        self.compose
            .get(&(f, g))
            .copied()
            .ok_or_else(|| Error::Precondition(format!("arrows {f},{g} not composable")))
    }

    /// The longest chain of composable non-identity arrows, or `None` when
    /// such chains are unbounded (a cycle of non-identity arrows exists).
    pub fn nerve_dimension(&self) -> Option<usize> {
        let k = self.objects.len();
        // adjacency via non-identity arrows
        let mut adj = vec![vec![false; k]; k];
        for (f, a) in self.arrows.iter().enumerate() {
            if !self.is_identity_arrow(f) {
                adj[a.src][a.tgt] = true;
            }
        }
        // cycle detection including self-loops
        for s in 0..k {
            let mut reach = adj[s].clone();
            loop {
                let mut grew = false;
                for u in 0..k {
                    if reach[u] {
                        for v in 0..k {
                            if adj[u][v] && !reach[v] {
                                reach[v] = true;
                                grew = true;
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            if reach[s] {
                return None;
            }
        }
        // longest path in the DAG of non-identity arrows
        let mut best = vec![0usize; k];
        let mut changed = true;
        while changed {
            changed = false;
            for (f, a) in self.arrows.iter().enumerate() {
                if !self.is_identity_arrow(f) && best[a.src] < best[a.tgt] + 1 {
                    best[a.src] = best[a.tgt] + 1;
                    changed = true;
                }
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    /// Arrows invertible in the category.
    pub fn isomorphism_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| {
                let a = &self.arrows[f];
                self.hom(a.tgt, a.src).iter().any(|&g| {
                    self.compose[&(f, g)] == self.identity[a.src]
                        && self.compose[&(g, f)] == self.identity[a.tgt]
                })
            })
            .collect()
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    pub source: FinCat,
    pub target: FinCat,
    pub on_objects: Vec<usize>,
    pub on_arrows: Vec<usize>,
}

impl CatFunctor {
    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.target.validate()?;
        if self.on_objects.len() != self.source.objects.len()
            || self.on_arrows.len() != self.source.arrows.len()
        {
            return Err(Error::Invalid("functor data has wrong lengths".into()));
        }
        for (f, a) in self.source.arrows.iter().enumerate() {
            let fa = &self.target.arrows[self.on_arrows[f]];
            if fa.src != self.on_objects[a.src] || fa.tgt != self.on_objects[a.tgt] {
                return Err(Error::Invalid(format!("functor breaks endpoints at {f}")));
            }
        }
        for (o, &i) in self.source.identity.iter().enumerate() {
            if self.on_arrows[i] != self.target.identity[self.on_objects[o]] {
                return Err(Error::Invalid(format!("functor breaks identity at {o}")));
            }
        }
        for (&(f, g), &c) in &self.source.compose {
            let lhs = self.on_arrows[c];
            let rhs = self.target.compose[&(self.on_arrows[f], self.on_arrows[g])];
            if lhs != rhs {
                return Err(Error::Invalid(format!("functor breaks composition at {f};{g}")));
            }
        }
        Ok(())
    }
}

/// A set-valued functor on a finite category: a set per object, a function
/// per arrow (covariant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFunctor {
    /// element names per object
    pub sets: Vec<Vec<String>>,
    /// `maps[f][i]` = index of the image of element `i` under arrow `f`
    pub maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn validate(&self, c: &FinCat) -> Result<()> {
        if self.sets.len() != c.objects.len() || self.maps.len() != c.arrows.len() {
            return Err(Error::Invalid("functor data has wrong lengths".into()));
        }
        for (f, a) in c.arrows.iter().enumerate() {
            if self.maps[f].len() != self.sets[a.src].len() {
                return Err(Error::Invalid(format!("arrow {f} map has wrong domain size")));
            }
            for &v in &self.maps[f] {
                if v >= self.sets[a.tgt].len() {
                    return Err(Error::Invalid(format!("arrow {f} map leaves the target set")));
                }
            }
        }
        for &i in &c.identity {
            if self.maps[i].iter().enumerate().any(|(k, &v)| k != v) {
                return Err(Error::Invalid("functor breaks identities".into()));
            }
        }
        for (&(f, g), &cfg) in &c.compose {
            for e in 0..self.maps[f].len() {
                if self.maps[cfg][e] != self.maps[g][self.maps[f][e]] {
                    return Err(Error::Invalid(format!("functor breaks composition at {f};{g}")));
                }
            }
        }
        Ok(())
    }

    /// The representable functor `Hom(x, -)`.
    pub fn representable(c: &FinCat, x: usize) -> SetFunctor {
        let sets: Vec<Vec<String>> = (0..c.objects.len())
            .map(|y| c.hom(x, y).iter().map(|&f| c.arrows[f].name.clone()).collect())
            .collect();
        let homs: Vec<Vec<usize>> = (0..c.objects.len()).map(|y| c.hom(x, y)).collect();
        let maps = (0..c.arrows.len())
            .map(|g| {
                let a = &c.arrows[g];
                homs[a.src]
                    .iter()
                    .map(|&f| {
                        let composite = c.compose[&(f, g)];
                        homs[a.tgt].iter().position(|&h| h == composite).unwrap()
                    })
                    .collect()
            })
            .collect();
        SetFunctor { sets, maps }
    }

    /// The constant functor at a `k`-element set.
    pub fn constant(c: &FinCat, k: usize) -> SetFunctor {
        SetFunctor {
            sets: vec![(0..k).map(|i| format!("c{i}")).collect(); c.objects.len()],
            maps: vec![(0..k).collect(); c.arrows.len()],
        }
    }
}

/// Search for an isomorphism of categories.
pub fn cat_isomorphic(a: &FinCat, b: &FinCat) -> bool {
    if a.objects.len() != b.objects.len() || a.arrows.len() != b.arrows.len() {
        return false;
    }
    // backtrack over object bijections, then match arrows hom-set by hom-set
    let k = a.objects.len();
    let mut perm = Vec::new();
    let mut used = vec![false; k];
    fn go(a: &FinCat, b: &FinCat, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = a.objects.len();
        if perm.len() == k {
            return match_arrows(a, b, perm);
        }
        for cand in 0..k {
            if used[cand] {
                continue;
            }
            perm.push(cand);
            used[cand] = true;
            if go(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[cand] = false;
        }
        false
    }
    fn match_arrows(a: &FinCat, b: &FinCat, perm: &[usize]) -> bool {
        // assign arrow images hom-set-wise by backtracking
        let mut images: Vec<Option<usize>> = vec![None; a.arrows.len()];
        let mut used = vec![false; b.arrows.len()];
        for (o, &po) in perm.iter().enumerate() {
            images[a.identity[o]] = Some(b.identity[po]);
            used[b.identity[po]] = true;
        }
        fn assign(
            a: &FinCat,
            b: &FinCat,
            perm: &[usize],
            f: usize,
            images: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
        ) -> bool {
            if f == a.arrows.len() {
                // verify composition table
                for (&(x, y), &c) in &a.compose {
                    let bx = images[x].unwrap();
                    let by = images[y].unwrap();
                    if b.compose[&(bx, by)] != images[c].unwrap() {
                        return false;
                    }
                }
                return true;
            }
            if images[f].is_some() {
                return assign(a, b, perm, f + 1, images, used);
            }
            let arr = &a.arrows[f];
            for cand in b.hom(perm[arr.src], perm[arr.tgt]) {
                if used[cand] {
                    continue;
                }
                images[f] = Some(cand);
                used[cand] = true;
                if assign(a, b, perm, f + 1, images, used) {
                    return true;
                }
                images[f] = None;
                used[cand] = false;
            }
            false
        }
        assign(a, b, perm, 0, &mut images, &mut used)
    }
    go(a, b, &mut perm, &mut used)
}

/// The poset category `[n]`.
pub fn path_category(n: usize) -> FinCat {
    let objects = (0..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    let mut arrow_idx = BTreeMap::new();
    for i in 0..=n {
        for j in i..=n {
            arrow_idx.insert((i, j), arrows.len());
            arrows.push(Arrow { name: format!("{i}to{j}"), src: i, tgt: j });
        }
    }
    let mut compose = BTreeMap::new();
    for (&(i, j), &f) in &arrow_idx {
        for (&(j2, k), &g) in &arrow_idx {
            if j == j2 {
                compose.insert((f, g), arrow_idx[&(i, k)]);
            }
        }
    }
    let identity = (0..=n).map(|i| arrow_idx[&(i, i)]).collect();
    FinCat { objects, arrows, compose, identity }
}

/// The one-object cyclic group of order `k`.
pub fn cyclic_group(k: usize) -> FinCat {
    let arrows = (0..k).map(|i| Arrow { name: format!("g{i}"), src: 0, tgt: 0 }).collect();
    let mut compose = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            compose.insert((i, j), (i + j) % k);
        }
    }
    FinCat { objects: vec!["*".into()], arrows, compose, identity: vec![0] }
}

/// A discrete category on `k` objects.
pub fn discrete_category(k: usize) -> FinCat {
    FinCat {
        objects: (0..k).map(|i| i.to_string()).collect(),
        arrows: (0..k).map(|i| Arrow { name: format!("id{i}"), src: i, tgt: i }).collect(),
        compose: (0..k).map(|i| ((i, i), i)).collect(),
        identity: (0..k).collect(),
    }
}

/// Two objects with two parallel non-identity arrows.
pub fn parallel_pair() -> FinCat {
    let objects = vec!["a".into(), "b".into()];
    let arrows = vec![
        Arrow { name: "ida".into(), src: 0, tgt: 0 },
        Arrow { name: "idb".into(), src: 1, tgt: 1 },
        Arrow { name: "f".into(), src: 0, tgt: 1 },
        Arrow { name: "g".into(), src: 0, tgt: 1 },
    ];
    let mut compose = BTreeMap::new();
    compose.insert((0, 0), 0);
    compose.insert((1, 1), 1);
    compose.insert((0, 2), 2);
    compose.insert((2, 1), 2);
    compose.insert((0, 3), 3);
    compose.insert((3, 1), 3);
    FinCat { objects, arrows, compose, identity: vec![0, 1] }
}

/// The cospan poset `a -> c <- b`.
pub fn cospan_category() -> FinCat {
    let objects = vec!["a".into(), "b".into(), "c".into()];
    let arrows = vec![
        Arrow { name: "ida".into(), src: 0, tgt: 0 },
        Arrow { name: "idb".into(), src: 1, tgt: 1 },
        Arrow { name: "idc".into(), src: 2, tgt: 2 },
        Arrow { name: "ac".into(), src: 0, tgt: 2 },
        Arrow { name: "bc".into(), src: 1, tgt: 2 },
    ];
    let mut compose = BTreeMap::new();
    for i in 0..3 {
        compose.insert((i, i), i);
    }
    compose.insert((0, 3), 3);
    compose.insert((3, 2), 3);
    compose.insert((1, 4), 4);
    compose.insert((4, 2), 4);
    FinCat { objects, arrows, compose, identity: vec![0, 1, 2] }
}

/// The span poset `a <- c -> b` (dual of the cospan).
pub fn span_category() -> FinCat {
    let objects = vec!["a".into(), "b".into(), "c".into()];
    let arrows = vec![
        Arrow { name: "ida".into(), src: 0, tgt: 0 },
        Arrow { name: "idb".into(), src: 1, tgt: 1 },
        Arrow { name: "idc".into(), src: 2, tgt: 2 },
        Arrow { name: "ca".into(), src: 2, tgt: 0 },
        Arrow { name: "cb".into(), src: 2, tgt: 1 },
    ];
    let mut compose = BTreeMap::new();
    for i in 0..3 {
        compose.insert((i, i), i);
    }
    compose.insert((3, 0), 3);
    compose.insert((2, 3), 3);
    compose.insert((4, 1), 4);
    compose.insert((2, 4), 4);
    FinCat { objects, arrows, compose, identity: vec![0, 1, 2] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factories_validate() {
        for c in [
            path_category(0),
            path_category(1),
            path_category(2),
            cyclic_group(1),
            cyclic_group(2),
            cyclic_group(3),
            discrete_category(3),
            parallel_pair(),
            cospan_category(),
            span_category(),
        ] {
            c.validate().unwrap();
        }
    }

    #[test]
    fn nerve_dimensions() {
        assert_eq!(path_category(2).nerve_dimension(), Some(2));
        assert_eq!(discrete_category(3).nerve_dimension(), Some(0));
        assert_eq!(cyclic_group(2).nerve_dimension(), None);
        assert_eq!(parallel_pair().nerve_dimension(), Some(1));
    }

    #[test]
    fn isomorphism_arrows() {
        assert_eq!(path_category(2).isomorphism_arrows().len(), 3); // identities only
        assert_eq!(cyclic_group(3).isomorphism_arrows().len(), 3); // all of them
        assert_eq!(parallel_pair().isomorphism_arrows().len(), 2);
    }

    #[test]
    fn representable_functor_is_functorial() {
        for c in [path_category(2), cyclic_group(2), cospan_category()] {
            for x in 0..c.objects.len() {
                SetFunctor::representable(&c, x).validate(&c).unwrap();
            }
            SetFunctor::constant(&c, 2).validate(&c).unwrap();
        }
    }

    #[test]
    fn category_isomorphism_search() {
        assert!(cat_isomorphic(&path_category(2), &path_category(2)));
        assert!(!cat_isomorphic(&path_category(2), &cospan_category()));
        assert!(cat_isomorphic(&span_category(), &span_category()));
        assert!(!cat_isomorphic(&cyclic_group(2), &path_category(0)));
    }
}
