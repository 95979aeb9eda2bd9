use crate::bisset::{constant, disc, BiMap, BiSimplex};
use crate::fincat::*;
use crate::segal::*;
use crate::sset::{isomorphic, standard};
use std::sync::Arc;

#[test]
fn nerve_of_path_categories() {
    let (n1, tier) = nerve(&path_category(1), None).unwrap();
    assert_eq!(tier, Tier::ExactDiscrete);
    assert!(isomorphic(&Arc::new(n1), &Arc::new(standard(1))).unwrap());
    let (n2, _) = nerve(&path_category(2), None).unwrap();
    assert!(isomorphic(&Arc::new(n2), &Arc::new(standard(2))).unwrap());
}

#[test]
fn nerve_of_cyclic_group_truncated() {
    assert!(nerve(&cyclic_group(2), None).is_err());
    let (n, tier) = nerve(&cyclic_group(2), Some(4)).unwrap();
    assert_eq!(tier, Tier::Bounded(4));
    // one vertex, one non-degenerate cell in each dimension 1..=4
    assert_eq!(n.gen_counts(), vec![1, 1, 1, 1, 1]);
    // z/3: 2^d chains of non-identity arrows
    let (n3, _) = nerve(&cyclic_group(3), Some(3)).unwrap();
    assert_eq!(n3.gen_counts(), vec![1, 2, 4, 8]);
}

#[test]
fn nerve_level_counts_composable_pairs() {
    // |N(C)_2| = # composable pairs of arrows
    for c in [path_category(2), cospan_category(), parallel_pair()] {
        let (n, _) = nerve(&c, None).unwrap();
        let pairs = c
            .arrows
            .iter()
            .enumerate()
            .flat_map(|(f, af)| {
                c.arrows
                    .iter()
                    .enumerate()
                    .filter(move |(_, ag)| af.tgt == ag.src)
                    .map(move |(g, _)| (f, g))
            })
            .count();
        assert_eq!(n.level_count(2).unwrap(), pairs, "category {:?}", c.objects);
    }
}

#[test]
fn segal_map_counts_on_nerves() {
    // both sides of the level-2 comparison for the nerve of [2] have
    // |Hom([2],[2])| = 10 vertices, and the comparison is a bijection
    let (x, _) = disc_nerve(&path_category(2), None).unwrap();
    let sm = segal_map(&x, 2).unwrap();
    assert_eq!(sm.phi.source().gens(0).count(), 10);
    assert_eq!(sm.target.gens(0).count(), 10);
    assert!(check_segal_discrete(&x, 4).unwrap().is_ok());
}

#[test]
fn nerves_are_segal() {
    for c in [
        path_category(0),
        path_category(1),
        path_category(2),
        discrete_category(3),
        cospan_category(),
        span_category(),
        parallel_pair(),
    ] {
        let (x, _) = disc_nerve(&c, None).unwrap();
        assert!(check_segal_discrete(&x, 4).unwrap().is_ok(), "category {:?}", c.objects);
    }
    for k in 2..=3 {
        let (x, _) = disc_nerve(&cyclic_group(k), Some(5)).unwrap();
        assert!(check_segal_discrete(&x, 4).unwrap().is_ok(), "cyclic({k})");
    }
}

#[test]
fn missing_composite_fails_segal() {
    // the 1-skeleton of the nerve of [2] has a composable pair but no filler
    let (n2, _) = nerve(&path_category(2), None).unwrap();
    let sk1 = crate::sset::skeleton(&n2, 1).unwrap();
    let x = Arc::new(disc(&sk1));
    let w = check_segal_discrete(&x, 2).unwrap().unwrap_err();
    assert_eq!(w.level, 2);
    assert!(w.row_cells < w.chain_cells);
}

#[test]
fn non_discrete_is_rejected() {
    let x = Arc::new(constant(&standard(1)));
    assert!(check_segal_discrete(&x, 2).is_err());
}

#[test]
fn mapping_sets_of_nerves() {
    let (x, _) = disc_nerve(&path_category(1), None).unwrap();
    let verts = x.vertices();
    // map(0, 1) has one element, map(1, 0) none
    assert_eq!(mapping_set(&x, verts[0], verts[1]).unwrap().len(), 1);
    assert_eq!(mapping_set(&x, verts[1], verts[0]).unwrap().len(), 0);
    // identities
    let id0 = identity_elt(&x, verts[0]).unwrap();
    assert!(mapping_set(&x, verts[0], verts[0]).unwrap().contains(&id0));
}

#[test]
fn homotopy_category_round_trip() {
    for c in [
        path_category(1),
        path_category(2),
        discrete_category(2),
        cospan_category(),
        span_category(),
        parallel_pair(),
    ] {
        let (x, _) = disc_nerve(&c, None).unwrap();
        let ho = homotopy_category(&x).unwrap();
        assert!(cat_isomorphic(&ho, &c), "round trip failed for {:?}", c.objects);
    }
    for k in 2..=3 {
        let c = cyclic_group(k);
        let (x, _) = disc_nerve(&c, Some(4)).unwrap();
        let ho = homotopy_category(&x).unwrap();
        assert!(cat_isomorphic(&ho, &c), "round trip failed for cyclic({k})");
    }
}

#[test]
fn homotopy_category_of_point() {
    let (x, _) = disc_nerve(&path_category(0), None).unwrap();
    let ho = homotopy_category(&x).unwrap();
    assert_eq!(ho.objects.len(), 1);
    assert_eq!(ho.arrows.len(), 1);
}

#[test]
fn cyclic_composition_table() {
    let c = cyclic_group(3);
    let (x, _) = disc_nerve(&c, Some(4)).unwrap();
    let ho = homotopy_category(&x).unwrap();
    assert!(cat_isomorphic(&ho, &c));
    // composition is the group law: every arrow is invertible
    assert_eq!(ho.isomorphism_arrows().len(), 3);
}

#[test]
fn heq_and_completeness() {
    // posets: only identities are invertible; complete
    for c in [path_category(1), path_category(2), cospan_category()] {
        let (x, _) = disc_nerve(&c, None).unwrap();
        let heq = heq_subset(&x).unwrap();
        assert_eq!(heq.len(), c.objects.len());
        let (complete, verts, heq_count) = is_complete_discrete(&x).unwrap();
        assert!(complete);
        assert_eq!(verts, heq_count);
    }
    // groupoids with non-identity elements: not complete
    let (x, _) = disc_nerve(&cyclic_group(2), Some(4)).unwrap();
    let (complete, verts, heq_count) = is_complete_discrete(&x).unwrap();
    assert!(!complete);
    assert_eq!(verts, 1);
    assert_eq!(heq_count, 2);
    // discrete categories: complete
    let (x, _) = disc_nerve(&discrete_category(3), None).unwrap();
    assert!(is_complete_discrete(&x).unwrap().0);
}

#[test]
fn heq_closed_under_composition_and_identities() {
    for c in [path_category(2), cyclic_group(3), parallel_pair()] {
        let bound = if c.nerve_dimension().is_none() { Some(4) } else { None };
        let (x, _) = disc_nerve(&c, bound).unwrap();
        let ho = homotopy_category(&x).unwrap();
        let isos = ho.isomorphism_arrows();
        for &i in &ho.identity {
            assert!(isos.contains(&i));
        }
        for &f in &isos {
            for &g in &isos {
                if ho.arrows[f].tgt == ho.arrows[g].src {
                    assert!(isos.contains(&ho.compose[&(f, g)]));
                }
            }
        }
    }
}

#[test]
fn fully_faithful_checks() {
    // identity is fully faithful
    let (x, _) = disc_nerve(&path_category(2), None).unwrap();
    assert!(fully_faithful_discrete(&BiMap::identity(x.clone())).unwrap());

    // a full subcategory inclusion is fully faithful: [1] inside [2] on {0,1}
    let incl = CatFunctor {
        source: path_category(1),
        target: path_category(2),
        on_objects: vec![0, 1],
        on_arrows: vec![0, 3, 1], // 0to0, 0to1, 1to1 in path(2) indexing
    };
    let arrows: Vec<usize> = {
        // recompute: path_category(2) arrows are (0,0),(0,1),(0,2),(1,1),(1,2),(2,2)
        let t = path_category(2);
        let find = |i: usize, j: usize| {
            t.arrows.iter().position(|a| a.src == i && a.tgt == j).unwrap()
        };
        vec![find(0, 0), find(0, 1), find(1, 1)]
    };
    let incl = CatFunctor { on_arrows: arrows, ..incl };
    incl.validate().unwrap();
    let f = nerve_map(&incl, None).unwrap();
    let bif = lift_nerve_map(&f);
    assert!(fully_faithful_discrete(&bif).unwrap());

    // the collapse of the parallel pair onto [1] is not fully faithful
    let t = path_category(1);
    let s = parallel_pair();
    let to01 = t.arrows.iter().position(|a| a.src == 0 && a.tgt == 1).unwrap();
    let collapse = CatFunctor {
        source: s.clone(),
        target: t.clone(),
        on_objects: vec![0, 1],
        on_arrows: vec![t.identity[0], t.identity[1], to01, to01],
    };
    collapse.validate().unwrap();
    let f = nerve_map(&collapse, None).unwrap();
    let bif = lift_nerve_map(&f);
    assert!(!fully_faithful_discrete(&bif).unwrap());
}

/// Lift a simplicial map of nerves to the discrete embeddings.
fn lift_nerve_map(f: &crate::sset::SSetMap) -> BiMap {
    let src = Arc::new(disc(f.source()));
    let tgt = Arc::new(disc(f.target()));
    let mut assign: std::collections::BTreeMap<(usize, usize), Vec<BiSimplex>> = Default::default();
    for g in src.all_gens() {
        let img = f.gen_image(crate::sset::GenId { dim: g.n, idx: g.idx });
        assign.entry((g.n, g.m)).or_default().push(BiSimplex {
            gen: crate::bisset::BiGenId { n: img.gen.dim, m: 0, idx: img.gen.idx },
            e1: img.epi.clone(),
            e2: crate::ordinal::OrdinalMap::identity(0),
        });
    }
    BiMap::new(src, tgt, assign).unwrap()
}

#[test]
fn prime_components_on_posets_and_groupoids() {
    // posets: primes are the degenerate edges, middle edges recover the
    // identities = heq
    for c in [path_category(2), cospan_category()] {
        let (x, _) = disc_nerve(&c, None).unwrap();
        let pc = prime_components(&x).unwrap();
        assert_eq!(pc.tier, Tier::ExactDiscrete);
        assert_eq!(pc.x1_prime.len(), c.objects.len());
        assert!(pc.matches_heq, "category {:?}", c.objects);
    }
    // cyclic(2): components are singletons so X'_1 = degenerate edges only,
    // but the middle-edge image of X'_3 recovers both arrows = heq
    let (x, _) = disc_nerve(&cyclic_group(2), Some(4)).unwrap();
    let pc = prime_components(&x).unwrap();
    assert_eq!(pc.x1_prime.len(), 1);
    assert_eq!(pc.middle_edges.len(), 2);
    assert!(pc.matches_heq);
    // the point: everything trivial
    let (x, _) = disc_nerve(&path_category(0), None).unwrap();
    let pc = prime_components(&x).unwrap();
    assert!(pc.matches_heq);
    assert_eq!(pc.middle_edges.len(), 1);
}

#[test]
fn fully_faithful_composition_stability() {
    let (x, _) = disc_nerve(&path_category(1), None).unwrap();
    let id = BiMap::identity(x);
    let comp = id.compose(&id).unwrap();
    assert!(fully_faithful_discrete(&comp).unwrap());
}
