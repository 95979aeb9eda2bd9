use super::*;
use crate::ordinal::{self, binomial, OrdinalMap};
use crate::sset::{boundary, isomorphic, standard};
use std::sync::Arc;

fn arc(x: FinBiSet) -> Arc<FinBiSet> {
    Arc::new(x)
}

#[test]
fn box_cells_and_representability() {
    // box(n, 0) is the discrete standard simplex, box(0, m) the constant one
    assert_eq!(box_(2, 0), disc(&standard(2)));
    assert_eq!(box_(0, 2), constant(&standard(2)));
    // |cells of box(1,1) at (1,1)| = |Hom([1],[1])|^2 = 9
    assert_eq!(box_(1, 1).level_count(1, 1).unwrap(), 9);
    // levels are pairs of monotone maps
    for n in 0..=2 {
        for m in 0..=2 {
            let b = box_(n, m);
            for p in 0..=2 {
                for q in 0..=2 {
                    assert_eq!(
                        b.level_count(p, q).unwrap(),
                        binomial(p + n + 1, p + 1) * binomial(q + m + 1, q + 1)
                    );
                }
            }
            b.validate().unwrap();
        }
    }
}

#[test]
fn box_agrees_with_product_of_embeddings() {
    let direct = arc(box_(2, 1));
    let via_product = bi_product(&arc(disc(&standard(2))), &arc(constant(&standard(1)))).unwrap();
    assert!(bi_isomorphic(&direct, &via_product.object).unwrap());
}

#[test]
fn box_codec_roundtrip() {
    let b = box_(2, 1);
    for p in 0..=2 {
        for q in 0..=2 {
            for s in b.level(p, q).unwrap() {
                let (a, bb) = box_decode(2, 1, &s);
                assert_eq!(box_encode(2, 1, &a, &bb), s);
            }
        }
    }
}

#[test]
fn boundary_box_drops_top_cell() {
    let (db, incl) = boundary_box(1, 0).unwrap();
    assert_eq!(db.gen_counts().get(&(0, 0)), Some(&2));
    assert_eq!(db.gen_count(), 2);
    incl.validate().unwrap();
    let (bb, _) = boundary_box(1, 1).unwrap();
    assert_eq!(bb.gen_count(), box_(1, 1).gen_count() - 1);
}

#[test]
fn rows_of_disc_and_constant() {
    // row(F(n), k) is the discrete set Hom([k],[n])
    for n in 0..=2 {
        for k in 0..=2 {
            let r = row(&arc(f_disc(n)), k).unwrap();
            assert_eq!(r.object.gen_counts(), vec![binomial(k + n + 1, k + 1)]);
        }
    }
    // row(constant(Y), n) = Y
    let y = boundary(2).unwrap();
    for n in 0..=2 {
        let r = row(&arc(constant(&y)), n).unwrap();
        assert!(isomorphic(&r.object, &Arc::new(y.clone())).unwrap());
    }
    // row levels of box(1,1) at 0: (X_0)_m = 2 * (m + 2)
    let r0 = row(&arc(box_(1, 1)), 0).unwrap();
    for m in 0..=3 {
        assert_eq!(r0.object.level_count(m).unwrap(), 2 * (m + 2));
    }
}

#[test]
fn row_encode_decode() {
    let x = arc(box_(1, 1));
    for n in 0..=2 {
        let r = row(&x, n).unwrap();
        for m in 0..=2 {
            for cell in x.level(n, m).unwrap() {
                let s = r.encode(&cell).unwrap();
                assert_eq!(r.decode(&s), cell);
            }
        }
    }
}

#[test]
fn act_mixed_functoriality() {
    let x = box_(1, 1);
    for a in 0..=2usize {
        for b in 0..=2usize {
            for t1 in ordinal::enumerate_maps(a, b) {
                for t2 in ordinal::enumerate_maps(a, b) {
                    for s in x.level(b, b).unwrap() {
                        let one = x.act(&t1, &t2, &s).unwrap();
                        let two = x
                            .act(&OrdinalMap::identity(a), &t2, &x.act(&t1, &OrdinalMap::identity(b), &s).unwrap())
                            .unwrap();
                        assert_eq!(one, two);
                    }
                }
            }
        }
    }
}

#[test]
fn opposite_involutive() {
    let x = arc(box_(2, 1));
    let op = reindex(&DeltaFunctor::opposite(), &x, None).unwrap();
    let opop = reindex(&DeltaFunctor::opposite(), &op.object, None).unwrap();
    assert!(bi_isomorphic(&opop.object, &x).unwrap());
    // opposite(F(1)) ≅ F(1): the 1-simplex is self-dual
    let f1 = arc(f_disc(1));
    let opf1 = reindex(&DeltaFunctor::opposite(), &f1, None).unwrap();
    assert!(bi_isomorphic(&opf1.object, &f1).unwrap());
}

#[test]
fn twisted_levels_are_odd_levels() {
    // twisted(X)_n = X_{2n+1}
    let x = arc(box_(2, 0));
    let tw = reindex(&DeltaFunctor::twist(), &x, None).unwrap();
    for n in 0..=2 {
        for m in 0..=1 {
            assert_eq!(
                tw.object.level_count(n, m).unwrap(),
                x.level_count(2 * n + 1, m).unwrap(),
                "level ({n},{m})"
            );
        }
    }
    // row(twisted(X), 0) = row(X, 1)
    let r_tw = row(&tw.object, 0).unwrap();
    let r_x1 = row(&x, 1).unwrap();
    assert!(isomorphic(&r_tw.object, &r_x1.object).unwrap());
}

#[test]
fn twist_projection_level_zero_is_endpoint_evaluation() {
    // the fiber of pi over (x, y) at level 0 counts monotone arrows x -> y in [1]
    let x = arc(f_disc(1));
    let tp = twist_projection(&x, None).unwrap();
    tp.pi.validate().unwrap();
    // twisted(F(1))_0 = F(1)_1 = Hom([1],[1]): 3 cells
    assert_eq!(tp.twisted.object.level_count(0, 0).unwrap(), 3);
    // endpoints: cell tau goes to (tau(0) in op, tau(1))
    for g in tp.twisted.object.gens_at(0, 0) {
        let cell = tp.twisted.decode(g).unwrap();
        let img = tp.pi.gen_image(g);
        let (a, _) = box_decode(1, 0, &tp.product.pr2.apply(img).unwrap());
        let tau = box_decode(1, 0, cell).0;
        assert_eq!(a.at(0), tau.at(1), "second component is the final vertex");
    }
}

#[test]
fn twist_projection_natural() {
    // naturality: pi_Y ∘ twisted(f) == (op(f) × f) ∘ pi_X for a map of boxes
    let x = arc(box_(1, 0));
    let y = arc(box_(2, 0));
    // f: the inclusion of the 02 edge
    let cell = box_encode(2, 0, &ordinal::delta_tuple(&[0, 2], 2).unwrap(), &OrdinalMap::identity(0));
    let f = BiMap::classifying(y.clone(), &cell).unwrap();
    assert_eq!(f.source().as_ref(), x.as_ref());

    let tx = twist_projection(&x, None).unwrap();
    let ty = twist_projection(&y, None).unwrap();
    let tf = reindex_map(&f, &tx.twisted, &ty.twisted).unwrap();
    let of = reindex_map(&f, &tx.opposite, &ty.opposite).unwrap();
    let lhs = ty.pi.compose(&tf).unwrap();
    let prod_f = ty
        .product
        .pair(
            &of.compose(&tx.product.pr1).unwrap(),
            &f.compose(&tx.product.pr2).unwrap(),
        )
        .unwrap();
    let rhs = prod_f.compose(&tx.pi).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn product_unit_and_fiber() {
    let pt = arc(box_(0, 0));
    let y = arc(box_(1, 1));
    let p = bi_product(&pt, &y).unwrap();
    assert!(bi_isomorphic(&p.object, &y).unwrap());

    let xy = bi_product(&arc(f_disc(1)), &y).unwrap();
    let (fib, _) = bi_fiber(&xy.pr1, BiGenId { n: 0, m: 0, idx: 0 }).unwrap();
    assert!(bi_isomorphic(&fib, &y).unwrap());
}

#[test]
fn f1_times_f1_has_two_prism_cells() {
    let f1 = arc(f_disc(1));
    let p = bi_product(&f1, &f1).unwrap();
    assert_eq!(p.object.gens_at(2, 0).count(), 2);
}

#[test]
fn skeleton_and_nondegenerate() {
    let b = box_(1, 1);
    let sk1 = bis_skeleton(&b, 1).unwrap();
    let (bb, _) = boundary_box(1, 1).unwrap();
    assert!(bi_isomorphic(&sk1, &bb).unwrap());
    assert_eq!(bis_skeleton(&b, -1).unwrap().as_ref(), &FinBiSet::empty());

    let nd = f_disc(2).nondegenerate();
    for d in 0..=2usize {
        assert_eq!(nd[&(d, 0)].len(), binomial(3, d + 1));
    }
    assert!(nd.keys().all(|&(_, m)| m == 0));
}

#[test]
fn pushout_of_boundary_attachment_is_skeleton_step() {
    // attaching box(1,1) along boundary_box(1,1) to the boundary itself
    // reproduces box(1,1)
    let b = arc(box_(1, 1));
    let (bb, incl) = boundary_box(1, 1).unwrap();
    let id = BiMap::identity(bb.clone());
    let po = bi_pushout(&id, &incl).unwrap();
    assert!(bi_isomorphic(&po.object, &b).unwrap());
}

#[test]
fn tau_decompose_trivial_and_counts() {
    // m = 0: a single piece, the whole row
    let x = arc(box_(1, 0));
    let to_b = BiMap::terminal(x.clone());
    let to_f = BiMap::terminal(x.clone());
    for n in 0..=2 {
        let pieces = tau_decompose(&to_b, &to_f, 0, n).unwrap();
        assert_eq!(pieces.len(), 1);
        let r = row(&x, n).unwrap();
        assert_eq!(pieces[0].piece.gen_count(), r.object.gen_count());
    }
    // piece count at level n over F(m) is C(n+m+1, n+1)
    let f2 = arc(f_disc(2));
    let to_b2 = BiMap::terminal(f2.clone());
    let to_f2 = BiMap::identity(f2.clone());
    for n in 0..=2 {
        let pieces = tau_decompose(&to_b2, &to_f2, 2, n).unwrap();
        assert_eq!(pieces.len(), binomial(n + 3, n + 1));
        // pieces partition: each cell of the row in exactly one piece
        let total: usize = pieces.iter().map(|p| p.piece.gen_count()).sum();
        assert_eq!(total, row(&f2, n).unwrap().object.gen_count());
    }
}

#[test]
fn row_action_and_naturality() {
    let x = arc(box_(1, 1));
    let r1 = row(&x, 1).unwrap();
    let r0 = row(&x, 0).unwrap();
    let d0 = row_action(&x, &ordinal::face(0, 1).unwrap(), &r1, &r0).unwrap();
    let d1 = row_action(&x, &ordinal::face(1, 1).unwrap(), &r1, &r0).unwrap();
    d0.validate().unwrap();
    d1.validate().unwrap();
    // the two vertex restrictions of the interval are distinct
    assert_ne!(d0, d1);
}

#[test]
fn coproduct_counts() {
    let x = arc(f_disc(1));
    let y = arc(box_(0, 1));
    let c = bi_coproduct(&x, &y).unwrap();
    assert_eq!(c.object.gen_count(), x.gen_count() + y.gen_count());
    c.in1.validate().unwrap();
    c.in2.validate().unwrap();
}

#[test]
fn reindex_preserves_levels_on_products() {
    // (ι*(X × Y))_{n,m} has the same cardinality as (ι*X × ι*Y)_{n,m}
    let x = arc(box_(1, 0));
    let y = arc(box_(1, 1));
    let p = bi_product(&x, &y).unwrap();
    let op_p = reindex(&DeltaFunctor::opposite(), &p.object, None).unwrap();
    let op_x = reindex(&DeltaFunctor::opposite(), &x, None).unwrap();
    let op_y = reindex(&DeltaFunctor::opposite(), &y, None).unwrap();
    let p_op = bi_product(&op_x.object, &op_y.object).unwrap();
    for n in 0..=2 {
        for m in 0..=2 {
            assert_eq!(
                op_p.object.level_count(n, m).unwrap(),
                p_op.object.level_count(n, m).unwrap()
            );
        }
    }
}

#[test]
fn skeleton_pushout_presentation() {
    // box(1,1) and the nerve of the cospan, through total degree 3
    let objs: Vec<Arc<FinBiSet>> = vec![
        arc(box_(1, 1)),
        crate::segal::disc_nerve(&crate::fincat::cospan_category(), None).unwrap().0,
    ];
    for x in objs {
        let steps = skeleton_pushout_check(&x, 3).unwrap();
        assert!(steps.iter().all(|s| s.matched), "{steps:?}");
    }
}
