use crate::bisset::{BiGenId, BiMap, BiSimplex};
use crate::fincat::*;
use crate::ordinal::OrdinalMap;
use crate::segal::disc_nerve;
use crate::yoneda::*;
use std::sync::Arc;

fn v(idx: usize) -> BiGenId {
    BiGenId { n: 0, m: 0, idx }
}

#[test]
fn under_levels_of_path_nerve() {
    // (x\X)_{0,0} for X the nerve of [1], x = 0: the identity and the arrow
    let (x, _) = disc_nerve(&path_category(1), None).unwrap();
    let u = UnderLevels::new(x.clone(), v(0)).unwrap();
    assert_eq!(u.level(0, 0).unwrap().maps.len(), 2);
    // over x = 1 only the identity remains
    let u1 = UnderLevels::new(x.clone(), v(1)).unwrap();
    assert_eq!(u1.level(0, 0).unwrap().maps.len(), 1);
    // the identity element exists and projects to the degenerate edge's end
    let idx = u.id_elt().unwrap();
    let p = u.project(0, 0, idx).unwrap();
    assert_eq!(p.gen, v(0));
}

#[test]
fn under_on_the_point_is_trivial() {
    let (x, _) = disc_nerve(&path_category(0), None).unwrap();
    let u = UnderLevels::new(x.clone(), v(0)).unwrap();
    for n in 0..=1 {
        for m in 0..=1 {
            assert_eq!(u.level(n, m).unwrap().maps.len(), 1, "level ({n},{m})");
        }
    }
}

#[test]
fn under_level_zero_matches_tilde() {
    // (x\X)_0 = {x} ×_{X_0} X_1 as sets
    let (x, _) = disc_nerve(&path_category(2), None).unwrap();
    for obj in 0..3 {
        let u = UnderLevels::new(x.clone(), v(obj)).unwrap();
        let arrows_from = crate::segal::mapping_set(&x, v(obj), v(0)).unwrap().len()
            + crate::segal::mapping_set(&x, v(obj), v(1)).unwrap().len()
            + crate::segal::mapping_set(&x, v(obj), v(2)).unwrap().len();
        assert_eq!(u.level(0, 0).unwrap().maps.len(), arrows_from);
    }
}

#[test]
fn materialized_under_projects_over_x() {
    let (x, _) = disc_nerve(&path_category(2), None).unwrap();
    let u = under(&x, v(0), 1).unwrap();
    u.to_x.validate().unwrap();
    assert_eq!(u.id_cell.level(), (0, 0));
}

#[test]
fn retraction_identities() {
    let (x, _) = disc_nerve(&path_category(2), None).unwrap();
    let r = under_retraction(&x, v(0), (1, 1)).unwrap();
    assert!(r.kills_corner, "the multiplication map must send the corner to 0");
    assert!(r.id_fixed, "r(id_x) = id_{{id_x}}");
    assert!(r.section_levels.iter().all(|&(_, _, ok)| ok), "{:?}", r.section_levels);
}

#[test]
fn tau_prime_formula() {
    let t = OrdinalMap::new(vec![0, 2], 2).unwrap();
    let tp = tau_prime(&t);
    assert_eq!(tp.values(), &[0, 1, 3]);
    assert_eq!(tp.cod(), 3);
}

#[test]
fn tilde_under_chains() {
    // for the nerve of [2] and x = 0, tilde levels are chains out of 0
    let (x, _) = disc_nerve(&path_category(2), None).unwrap();
    let t = tilde_under(&x, v(0), 2).unwrap();
    // level (0,0): arrows out of 0 (three: id, 0->1, 0->2)
    assert_eq!(t.object.gens_at(0, 0).count() , 3);
    t.to_x.validate().unwrap();
}

#[test]
fn psi_prime_level_zero_is_identity_like() {
    // on nerves, ψ' is a levelwise bijection; at level 0 both sides are the
    // arrows out of x
    let (x, _) = disc_nerve(&path_category(2), None).unwrap();
    let t = tilde_under(&x, v(0), 1).unwrap();
    let u = UnderLevels::new(x.clone(), v(0)).unwrap();
    let psi = PsiPrime { tilde: &t, under: &u };
    assert!(psi.bijective_up_to(1).unwrap());
    // level-0 identification: the projections to X agree cell by cell
    for g in t.object.gens_at(0, 0) {
        let cell = t.ex.gen_elem[&g].clone();
        let idx = psi.apply(0, 0, &cell).unwrap();
        assert_eq!(u.project(0, 0, idx).unwrap(), t.to_x.gen_image(g).clone());
    }
}

#[test]
fn psi_dprime_is_a_section() {
    for c in [path_category(1), path_category(2), cospan_category()] {
        let (x, _) = disc_nerve(&c, None).unwrap();
        let t = tilde_under(&x, v(0), 2).unwrap();
        let pd = psi_dprime_with(&x, v(0), 2, &t).unwrap();
        pd.psi.validate().unwrap();
        assert!(psi_dprime_section_check(&x, &t, &pd).unwrap());
        // injectivity on generators follows from the section property
    }
    // a groupoid, truncated
    let (x, _) = disc_nerve(&cyclic_group(2), Some(7)).unwrap();
    let t = tilde_under(&x, v(0), 3).unwrap();
    let pd = psi_dprime_with(&x, v(0), 3, &t).unwrap();
    assert!(psi_dprime_section_check(&x, &t, &pd).unwrap());
}

#[test]
fn psi_maps_commute_with_projections() {
    // both ψ' and ψ'' are maps over X on levels <= 2
    let (x, _) = disc_nerve(&path_category(2), None).unwrap();
    let t = tilde_under(&x, v(0), 2).unwrap();
    let u = UnderLevels::new(x.clone(), v(0)).unwrap();
    let psi = PsiPrime { tilde: &t, under: &u };
    for g in t.object.all_gens() {
        if g.n > 2 {
            continue;
        }
        let cell = t.ex.gen_elem[&g].clone();
        let idx = psi.apply(g.n, g.m, &cell).unwrap();
        assert_eq!(
            u.project(g.n, g.m, idx).unwrap(),
            t.to_x.gen_image(g).clone(),
            "ψ' over X at {g:?}"
        );
    }
    let pd = psi_dprime_with(&x, v(0), 2, &t).unwrap();
    // ψ'' over X: the twisted tail projection composed with ψ'' equals to_x
    let tail = pd.projection.product.pr2.compose(&pd.projection.pi).unwrap();
    let via = tail.compose(&pd.fiber_incl.compose(&pd.psi).unwrap()).unwrap();
    assert_eq!(via, t.to_x);
}

#[test]
fn elements_of_constant_functor_is_the_nerve() {
    let c = path_category(1);
    let f = SetFunctor::constant(&c, 1);
    let e = elements(&c, &f, None).unwrap();
    assert!(crate::bisset::bi_isomorphic(&e.total, &e.base).unwrap());
    assert!(e.verify_left(2).unwrap().is_ok());
}

#[test]
fn elements_cells_and_fibers() {
    // C = [1], F(0) = {a}, F(1) = {a', b'}, F(0->1)(a) = a'
    let c = path_category(1);
    let to01 = c.arrows.iter().position(|a| a.src == 0 && a.tgt == 1).unwrap();
    let mut maps = vec![vec![0]; c.arrows.len()];
    maps[c.identity[0]] = vec![0];
    maps[c.identity[1]] = vec![0, 1];
    maps[to01] = vec![0];
    let f = SetFunctor { sets: vec![vec!["a".into()], vec!["a1".into(), "b1".into()]], maps };
    f.validate(&c).unwrap();
    let e = elements(&c, &f, None).unwrap();
    assert_eq!(e.fiber_over(0).unwrap().len(), 1);
    assert_eq!(e.fiber_over(1).unwrap().len(), 2);
    // total non-degenerate edges: one per (non-identity arrow, element at its
    // source) = 1
    assert_eq!(e.total.gens_at(1, 0).count(), 1);
    assert!(e.verify_left(2).unwrap().is_ok());
}

#[test]
fn representable_elements_match_twisted_fiber() {
    // elements of Hom(x, -) agree levelwise with {x} ×_{X^op} M(X)
    for c in [path_category(1), path_category(2), span_category()] {
        let (x, _) = disc_nerve(&c, None).unwrap();
        for obj in 0..c.objects.len() {
            let f = SetFunctor::representable(&c, obj);
            let e = elements(&c, &f, None).unwrap();
            let cap = x.dim1().unwrap_or(1);
            let pd = psi_dprime(&x, v(obj), cap).unwrap();
            assert!(
                crate::bisset::bi_isomorphic(&e.total, &pd.fiber).unwrap(),
                "category {:?} object {obj}",
                c.objects
            );
        }
    }
}

#[test]
fn orientation_flip_fails_left_fibration() {
    // transporting along final vertices builds the fibration of the opposite
    // variance: a presheaf G on [1] with G(1) = {y, z}, G(0) = {y0}, both
    // elements restricting to y0, gives a total object with two edges out of
    // the single point over 0. That is a perfectly good object over the
    // nerve, but not a left fibration: the initial-vertex restriction is not
    // a bijection.
    let c = path_category(1);
    let to01 = c.arrows.iter().position(|a| a.src == 0 && a.tgt == 1).unwrap();
    let (base, _) = disc_nerve(&c, None).unwrap();
    let mut labels = std::collections::BTreeMap::new();
    labels.insert(
        (0, 0),
        vec!["over0.y0".to_string(), "over1.y".to_string(), "over1.z".to_string()],
    );
    labels.insert((1, 0), vec!["edge.y".to_string(), "edge.z".to_string()]);
    let mut faces1 = std::collections::BTreeMap::new();
    faces1.insert(
        (1, 0),
        vec![
            vec![BiSimplex::of(v(1)), BiSimplex::of(v(0))], // y0 -> y
            vec![BiSimplex::of(v(2)), BiSimplex::of(v(0))], // y0 -> z
        ],
    );
    let total = Arc::new(
        crate::bisset::FinBiSet::build(labels, faces1, Default::default()).unwrap(),
    );
    let mut assign = std::collections::BTreeMap::new();
    assign.insert(
        (0, 0),
        vec![BiSimplex::of(v(0)), BiSimplex::of(v(1)), BiSimplex::of(v(1))],
    );
    let non_id: Vec<usize> = (0..c.arrows.len()).filter(|&a| !c.is_identity_arrow(a)).collect();
    let edge_idx = non_id.iter().position(|&a| a == to01).unwrap();
    let base_edge = BiSimplex::of(BiGenId { n: 1, m: 0, idx: edge_idx });
    assign.insert((1, 0), vec![base_edge.clone(), base_edge]);
    let projection = BiMap::new(total, base, assign).unwrap();
    let d = crate::lifting::check_left_fibration(&projection, 2).unwrap();
    assert!(d.is_err(), "the flipped orientation must fail");
}

#[test]
fn evaluation_check_classical_yoneda() {
    // representables: the evaluation bijection lands on Hom(x, x)
    let c = path_category(1);
    for obj in 0..2 {
        let f = SetFunctor::representable(&c, obj);
        let rep = evaluation_check(&c, obj, &f, None).unwrap();
        assert!(rep.bijective, "object {obj}: {rep:?}");
        assert!(rep.psi_prime_bijective);
        assert_eq!(rep.maps_over, rep.fiber_size);
    }
    // the worked example: F(0) = {a}, F(1) = {a', b'}
    let to01 = c.arrows.iter().position(|a| a.src == 0 && a.tgt == 1).unwrap();
    let mut maps = vec![vec![0]; c.arrows.len()];
    maps[c.identity[1]] = vec![0, 1];
    maps[to01] = vec![0];
    let f = SetFunctor { sets: vec![vec!["a".into()], vec!["a1".into(), "b1".into()]], maps };
    let rep = evaluation_check(&c, 0, &f, None).unwrap();
    assert!(rep.bijective);
    assert_eq!(rep.maps_over, 1, "|Map_X(x\\X, E)_0| = |F(0)| = 1");

    // empty fiber: both sides empty
    let g = SetFunctor {
        sets: vec![vec![], vec!["only".into()]],
        maps: {
            let mut m = vec![vec![]; c.arrows.len()];
            m[c.identity[1]] = vec![0];
            m
        },
    };
    g.validate(&c).unwrap();
    let rep = evaluation_check(&c, 0, &g, None).unwrap();
    assert!(rep.bijective);
    assert_eq!(rep.maps_over, 0);
    assert_eq!(rep.fiber_size, 0);
}

#[test]
fn yoneda_fully_faithful_fibers() {
    // C = [1]: fibers over (0,0),(0,1),(1,0),(1,1) have sizes 1,1,0,1
    let rep = fully_faithful_yoneda_check(&path_category(1), None).unwrap();
    assert!(rep.counts_match);
    assert!(rep.naturality);
    let sizes: Vec<usize> = rep.pairs.iter().map(|&(_, _, n, _)| n).collect();
    assert_eq!(sizes, vec![1, 1, 0, 1]);

    // cyclic(2): all fibers have size 2
    let rep = fully_faithful_yoneda_check(&cyclic_group(2), Some(4)).unwrap();
    assert!(rep.counts_match);
    assert!(rep.naturality);
    assert!(rep.pairs.iter().all(|&(_, _, n, _)| n == 2));

    // discrete: Kronecker delta
    let rep = fully_faithful_yoneda_check(&discrete_category(2), None).unwrap();
    assert!(rep.counts_match);
    for &(a, b, n, _) in &rep.pairs {
        assert_eq!(n, usize::from(a == b));
    }
}

#[test]
fn elements_pullback_compatibility() {
    // restricting an elements fibration along a functor gives the elements of
    // the restricted set-functor
    let t = path_category(2);
    let s = path_category(1);
    let find = |i: usize, j: usize| t.arrows.iter().position(|a| a.src == i && a.tgt == j).unwrap();
    let u = CatFunctor {
        source: s.clone(),
        target: t.clone(),
        on_objects: vec![0, 1],
        on_arrows: vec![find(0, 0), find(0, 1), find(1, 1)],
    };
    u.validate().unwrap();
    let f = SetFunctor::representable(&t, 0);
    let e_big = elements(&t, &f, None).unwrap();

    // restricted functor on s
    let f_small = SetFunctor {
        sets: u.on_objects.iter().map(|&o| f.sets[o].clone()).collect(),
        maps: u.on_arrows.iter().map(|&a| f.maps[a].clone()).collect(),
    };
    f_small.validate(&s).unwrap();
    let e_small = elements(&s, &f_small, None).unwrap();

    // pull the big fibration back along the nerve map of u
    let nm = crate::segal::nerve_map(&u, None).unwrap();
    let bim = {
        let src = Arc::new(crate::bisset::disc(nm.source()));
        let tgt = Arc::new(crate::bisset::disc(nm.target()));
        let mut assign: std::collections::BTreeMap<(usize, usize), Vec<BiSimplex>> =
            Default::default();
        for g in src.all_gens() {
            let img = nm.gen_image(crate::sset::GenId { dim: g.n, idx: g.idx });
            assign.entry((g.n, g.m)).or_default().push(BiSimplex {
                gen: BiGenId { n: img.gen.dim, m: 0, idx: img.gen.idx },
                e1: img.epi.clone(),
                e2: OrdinalMap::identity(0),
            });
        }
        BiMap::new(src, tgt, assign).unwrap()
    };
    let pb = crate::bisset::bi_pullback(&bim, &e_big.projection).unwrap();
    assert!(crate::bisset::bi_isomorphic(pb.object(), &e_small.total).unwrap());
}
