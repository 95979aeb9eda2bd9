use super::*;
use crate::ordinal::{self, binomial, OrdinalMap};
use std::sync::Arc;

fn arc(x: FinSSet) -> Arc<FinSSet> {
    Arc::new(x)
}

/// Independent counting oracle: weakly increasing tuples of length `n+1` in
/// `{0..m}`, counted by direct enumeration over all tuples.
fn brute_monotone_count(n: usize, m: usize) -> usize {
    let mut count = 0;
    let total = (m + 1).pow((n + 1) as u32);
    for code in 0..total {
        let mut c = code;
        let mut tuple = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            tuple.push(c % (m + 1));
            c /= m + 1;
        }
        if tuple.windows(2).all(|w| w[0] <= w[1]) {
            count += 1;
        }
    }
    count
}

#[test]
fn standard_cells() {
    let d1 = standard(1);
    assert_eq!(d1.gen_counts(), vec![2, 1]);
    let d2 = standard(2);
    for d in 0..=2 {
        assert_eq!(d2.gens(d).count(), binomial(3, d + 1));
    }
    d2.validate().unwrap();
}

#[test]
fn boundary_and_horn_cells() {
    let b1 = boundary(1).unwrap();
    assert_eq!(b1.gen_counts(), vec![2]);
    assert_eq!(pi0(&b1).unwrap().count(), 2);

    let h21 = horn(2, 1).unwrap();
    assert_eq!(h21.gen_counts(), vec![3, 2]);
    // the two edges are the 01 and 12 faces
    let kept: Vec<&str> = h21.gens(1).map(|g| h21.label(g)).collect();
    assert_eq!(kept, vec!["01", "12"]);
    assert!(horn(2, 3).is_err());
}

#[test]
fn level_counts_against_brute_force() {
    // levels of standard(m) at n are the monotone tuples
    for n in 0..=3 {
        for m in 0..=3 {
            assert_eq!(standard(m).level_count(n).unwrap(), brute_monotone_count(n, m));
        }
    }
    // point is terminal: one simplex per level
    assert_eq!(standard(0).level_count(3).unwrap(), 1);
    assert_eq!(standard(1).level_count(1).unwrap(), 3);
    // boundary(2) has every 1-simplex of standard(2): 3 edges + 3 degenerate
    assert_eq!(boundary(2).unwrap().level_count(1).unwrap(), 6);
    assert_eq!(standard(2).level_count(1).unwrap(), 6);
}

#[test]
fn ez_normal_form_unique_on_levels() {
    // (epi, generator) -> simplex is a bijection onto each level by
    // construction; cross-check against the brute-force count for standard(2)
    for n in 0..=4 {
        let mut seen = std::collections::BTreeSet::new();
        for s in standard(2).level(n).unwrap() {
            assert!(s.epi.is_surjective());
            assert!(seen.insert(s));
        }
        assert_eq!(seen.len(), brute_monotone_count(n, 2));
    }
}

#[test]
fn act_identity_and_faces() {
    let d2 = arc(standard(2));
    let top = Simplex::of(GenId { dim: 2, idx: 0 });
    assert_eq!(d2.act(&OrdinalMap::identity(2), &top).unwrap(), top);
    // face 0 of the top cell of standard(2) is the 12-edge
    let f0 = d2.act(&ordinal::face(0, 2).unwrap(), &top).unwrap();
    assert!(f0.is_nondegenerate());
    assert_eq!(d2.label(f0.gen), "12");
}

#[test]
fn act_functorial_exhaustive() {
    let d2 = standard(2);
    for a in 0..=3usize {
        for b in 0..=3usize {
            for c in 0..=3usize {
                for tau in ordinal::enumerate_maps(a, b) {
                    for sigma in ordinal::enumerate_maps(b, c) {
                        for s in d2.level(c).unwrap() {
                            let one = d2.act(&sigma.compose(&tau).unwrap(), &s).unwrap();
                            let two = d2.act(&tau, &d2.act(&sigma, &s).unwrap()).unwrap();
                            assert_eq!(one, two);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn standard_simplex_codec_roundtrip() {
    for n in 0..=3 {
        for m in 0..=3 {
            for tau in ordinal::enumerate_maps(n, m) {
                let s = standard_simplex(&tau);
                assert_eq!(standard_decode(m, &s), tau);
            }
        }
    }
}

#[test]
fn skeleton_of_standard_is_boundary() {
    let sk = skeleton(&standard(2), 1).unwrap();
    assert_eq!(sk, boundary(2).unwrap());
    assert_eq!(skeleton(&standard(2), -1).unwrap(), FinSSet::empty());
    // increasing and exhaustive
    let x = standard(3);
    let mut prev = 0;
    for n in 0..=3isize {
        let cnt = skeleton(&x, n).unwrap().gen_count();
        assert!(cnt >= prev);
        prev = cnt;
    }
    assert_eq!(skeleton(&x, 3).unwrap(), x);
}

#[test]
fn product_unit_law_and_shuffles() {
    let pt = arc(standard(0));
    let y = arc(standard(2));
    let p = product(&pt, &y).unwrap();
    assert!(isomorphic(&p.object, &y).unwrap());

    // Δ[1] × Δ[1] has exactly two non-degenerate 2-cells
    let i1 = arc(standard(1));
    let p11 = product(&i1, &i1).unwrap();
    assert_eq!(p11.object.gens(2).count(), 2);
    // 3 × 3 simplices in level 1
    assert_eq!(p11.object.level_count(1).unwrap(), 9);
    assert_eq!(
        p11.object.level_count(1).unwrap(),
        i1.level_count(1).unwrap() * i1.level_count(1).unwrap()
    );
}

#[test]
fn product_levels_are_pairs() {
    let x = arc(standard(2));
    let y = arc(boundary(2).unwrap());
    let p = product(&x, &y).unwrap();
    for n in 0..=3 {
        assert_eq!(
            p.object.level_count(n).unwrap(),
            x.level_count(n).unwrap() * y.level_count(n).unwrap()
        );
    }
    p.object.validate().unwrap();
}

#[test]
fn product_universal_property_exhaustive() {
    // cones from standard(k), k <= 2, into Δ[1] × Δ[1]
    let i1 = arc(standard(1));
    let p = product(&i1, &i1).unwrap();
    for k in 0..=2usize {
        let s = arc(standard(k));
        let cones_u = hom_enum(&s, &i1).unwrap();
        for u in &cones_u {
            for v in &cones_u {
                let m = p.pair(u, v).unwrap();
                assert_eq!(p.pr1.compose(&m).unwrap(), *u);
                assert_eq!(p.pr2.compose(&m).unwrap(), *v);
            }
        }
        // pairing is a bijection onto maps into the product
        let into_p = hom_enum(&s, &p.object).unwrap();
        assert_eq!(into_p.len(), cones_u.len() * cones_u.len());
    }
}

#[test]
fn pushout_along_identity() {
    let a = arc(boundary(2).unwrap());
    let y = arc(standard(2));
    let (_, incl) = subobject(&y, &|g| g.dim < 2).unwrap();
    // X = A, f = id: pushout is Y
    let id = SSetMap::identity(a.clone());
    let f = SSetMap::new(a.clone(), y.clone(), incl.assignments().clone()).unwrap();
    let po = pushout(&id, &f).unwrap();
    assert!(isomorphic(&po.object, &y).unwrap());
}

/// Glue two vertices of `x` together; returns the quotient and the map from `x`.
fn glue_vertices(x: &Arc<FinSSet>, i: GenId, j: GenId) -> (Arc<FinSSet>, SSetMap) {
    let pt = arc(standard(0));
    let two = coproduct(&pt, &pt).unwrap();
    let to_x = two
        .copair(
            &SSetMap::from_vertex(x.clone(), i).unwrap(),
            &SSetMap::from_vertex(x.clone(), j).unwrap(),
        )
        .unwrap();
    let fold = two
        .copair(&SSetMap::identity(pt.clone()), &SSetMap::identity(pt))
        .unwrap();
    let po = pushout(&to_x, &fold).unwrap();
    (po.object, po.from_left)
}

#[test]
fn boundary_is_union_of_faces() {
    // boundary(2) is the union of three edges glued along shared vertices:
    // a: 0->1, b: 1->2, c: 0->2. Vertex layout in the double coproduct is
    // a0 a1 b0 b1 c0 c1 = indices 0..6. standard(1) puts the initial vertex
    // at index 0.
    let e = arc(standard(1));
    let c1 = coproduct(&e, &e).unwrap();
    let c2 = coproduct(&c1.object, &e).unwrap();
    let three = c2.object.clone();
    let v = |idx: usize| GenId { dim: 0, idx };

    let (x1, q1) = glue_vertices(&three, v(1), v(2)); // a1 ~ b0
    let track = |q: &SSetMap, g: GenId| q.gen_image(g).gen;
    let (x2, q2) = glue_vertices(&x1, track(&q1, v(3)), track(&q1, v(5))); // b1 ~ c1
    let a0 = track(&q2, track(&q1, v(0)));
    let c0 = track(&q2, track(&q1, v(4)));
    let (circle, _) = glue_vertices(&x2, a0, c0); // a0 ~ c0

    assert_eq!(circle.gen_counts(), vec![3, 3]);
    assert!(isomorphic(&circle, &arc(boundary(2).unwrap())).unwrap());
}

#[test]
fn fiber_of_projection_is_the_other_factor() {
    let x = arc(standard(1));
    let y = arc(boundary(2).unwrap());
    let p = product(&x, &y).unwrap();
    let (fib, _) = fiber(&p.pr1, GenId { dim: 0, idx: 0 }).unwrap();
    assert!(isomorphic(&fib, &y).unwrap());
}

#[test]
fn pullback_universal_property() {
    // pullback of Δ[1] -> Δ[0] <- Δ[1] is the product
    let i1 = arc(standard(1));
    let t1 = SSetMap::terminal(i1.clone());
    let pb = pullback(&t1, &t1).unwrap();
    let pr = product(&i1, &i1).unwrap();
    assert!(isomorphic(pb.object(), &pr.object).unwrap());
    // cones through the pullback factor uniquely
    for k in 0..=2usize {
        let s = arc(standard(k));
        for u in hom_enum(&s, &i1).unwrap() {
            for v in hom_enum(&s, &i1).unwrap() {
                let m = pb.pair(&u, &v).unwrap();
                assert_eq!(pb.pr1().compose(&m).unwrap(), u);
                assert_eq!(pb.pr2().compose(&m).unwrap(), v);
            }
        }
    }
}

#[test]
fn pi0_properties() {
    assert_eq!(pi0(&standard(4)).unwrap().count(), 1);
    assert_eq!(pi0(&boundary(1).unwrap()).unwrap().count(), 2);
    let x = arc(boundary(1).unwrap());
    let y = arc(standard(2));
    let c = coproduct(&x, &y).unwrap();
    assert_eq!(
        pi0(&c.object).unwrap().count(),
        pi0(&x).unwrap().count() + pi0(&y).unwrap().count()
    );
}

#[test]
fn hom_counts_match_binomials() {
    // |Hom(Δ[n], Δ[m])| = C(n+m+1, n+1), the number of monotone maps
    for n in 0..=3 {
        for m in 0..=3 {
            let cnt = hom_enum(&arc(standard(n)), &arc(standard(m))).unwrap().len();
            assert_eq!(cnt, binomial(n + m + 1, n + 1), "hom({n},{m})");
            assert_eq!(cnt, brute_monotone_count(n, m));
        }
    }
}

#[test]
fn hom_horn_and_terminal() {
    assert_eq!(hom_enum(&arc(standard(1)), &arc(standard(1))).unwrap().len(), 3);
    // maps Λ¹[2] -> Δ[1]: chains a0<=a1, a1<=a2 with no 02 constraint; all
    // such triples are monotone, so brute force gives 4
    assert_eq!(hom_enum(&arc(horn(2, 1).unwrap()), &arc(standard(1))).unwrap().len(), 4);
    for x in [standard(2), boundary(3).unwrap(), horn(3, 0).unwrap()] {
        assert_eq!(hom_enum(&arc(x), &arc(standard(0))).unwrap().len(), 1);
    }
}

#[test]
fn map_space_levels() {
    let pt = arc(standard(0));
    let x = arc(boundary(2).unwrap());
    for n in 0..=2 {
        assert_eq!(
            map_space_level(&pt, &x, n).unwrap().len(),
            x.level_count(n).unwrap()
        );
    }
    assert_eq!(map_space_level(&arc(standard(1)), &arc(standard(1)), 0).unwrap().len(), 3);
}

#[test]
fn homotopic_over_point() {
    let pt = arc(standard(0));
    let i1 = arc(standard(1));
    let ppt = SSetMap::identity(pt.clone());
    let pi1 = SSetMap::terminal(i1.clone());
    let v0 = SSetMap::from_vertex(i1.clone(), GenId { dim: 0, idx: 0 }).unwrap();
    let v1 = SSetMap::from_vertex(i1.clone(), GenId { dim: 0, idx: 1 }).unwrap();
    assert!(homotopic_over(&ppt, &pi1, &v0, &v0).unwrap());
    assert!(homotopic_over(&ppt, &pi1, &v0, &v1).unwrap());

    let b1 = arc(boundary(1).unwrap());
    let pb1 = SSetMap::terminal(b1.clone());
    let w0 = SSetMap::from_vertex(b1.clone(), GenId { dim: 0, idx: 0 }).unwrap();
    let w1 = SSetMap::from_vertex(b1.clone(), GenId { dim: 0, idx: 1 }).unwrap();
    assert!(!homotopic_over(&ppt, &pb1, &w0, &w1).unwrap());
}

#[test]
fn pi0_stable_under_connected_attachment() {
    // attaching a 2-cell to connected vertices keeps pi0
    let x = standard(2);
    let before = pi0(&boundary(2).unwrap()).unwrap().count();
    let after = pi0(&x).unwrap().count();
    assert_eq!(before, after);
}
