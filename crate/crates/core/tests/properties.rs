//! Property tests over seeded random groupoids and selections.

mod common;

use common::*;
use graded_core::miyashita::dual_basis_freedom;
use graded_core::{
    build_das, commutant, dual_basis, sigma_general, DasBuild, FiniteGroupoid, GradedAction, MorphismId, SelectionSpec,
    Subspace,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_build(seed: u64) -> (FiniteGroupoid, DasBuild) {
    let mut rng = StdRng::seed_from_u64(seed);
    let g = random_groupoid(&mut rng);
    let len = rng.gen_range(1..=8);
    let sel = (0..len)
        .map(|_| MorphismId(rng.gen_range(0..g.morphism_count())))
        .collect();
    let b = build_das(&SelectionSpec::new(g.category().clone(), sel).unwrap()).unwrap();
    (g, b)
}

fn covering_build(seed: u64) -> (FiniteGroupoid, DasBuild) {
    let mut rng = StdRng::seed_from_u64(seed);
    let g = random_groupoid(&mut rng);
    let sel = covering_selection(&g, 2, &mut rng);
    let b = build(&g, sel);
    (g, b)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn composition_bookkeeping(seed in any::<u64>()) {
        let g = random_groupoid(&mut StdRng::seed_from_u64(seed));
        for s in g.morphism_ids() {
            prop_assert_eq!(g.inverse(g.inverse(s)), s);
            prop_assert_eq!(g.compose(s, g.inverse(s)), Some(g.identity(g.cod(s))));
            for t in g.morphism_ids() {
                prop_assert_eq!(g.compose(s, t).is_some(), g.dom(s) == g.cod(t));
                if let Some(st) = g.compose(s, t) {
                    prop_assert_eq!(g.dom(st), g.dom(t));
                    prop_assert_eq!(g.cod(st), g.cod(s));
                }
            }
        }
    }

    #[test]
    fn subgroupoids_are_closure_fixed_points(seed in any::<u64>()) {
        let g = random_groupoid(&mut StdRng::seed_from_u64(seed));
        let all = g.enumerate_subgroupoids(20).unwrap();
        for h in &all {
            prop_assert!(g.is_subgroupoid(h.morphisms()));
            prop_assert_eq!(&g.closure(h.morphisms().iter().copied()), h);
        }
        for (i, a) in all.iter().enumerate() {
            prop_assert!(all[i + 1..].iter().all(|b| b != a));
        }
    }

    #[test]
    fn components_are_maximal(seed in any::<u64>()) {
        let g = random_groupoid(&mut StdRng::seed_from_u64(seed));
        let comps = g.connected_components();
        let block_of = |s: MorphismId| comps.iter().position(|c| c.contains(s)).unwrap();
        let total: usize = comps.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, g.morphism_count());
        for s in g.morphism_ids() {
            for t in g.morphism_ids() {
                if g.compose(s, t).is_some() {
                    prop_assert_eq!(block_of(s), block_of(t));
                }
            }
        }
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                let (oa, ob) = (a.objects(g.category()), b.objects(g.category()));
                prop_assert!(oa.iter().all(|o| !ob.contains(o)));
            }
        }
    }

    #[test]
    fn grading_sum_is_direct(seed in any::<u64>()) {
        let (_, b) = random_build(seed);
        let sum: usize = b.graded.component_dims().iter().sum();
        prop_assert_eq!(sum, b.graded.total().dim());
        let pairs: usize = b.positions.all().iter().map(|x| x.len()).sum();
        prop_assert_eq!(sum, pairs);
    }

    #[test]
    fn strongness_shortcut_matches_full_scan(seed in any::<u64>()) {
        let (g, b) = random_build(seed);
        let ga = &b.graded;
        prop_assert!(ga.check_filter().is_ok());
        let shortcut = g.morphism_ids().all(|s| {
            ga.product(ga.component(s), ga.component(g.inverse(s))) == *ga.object_component(g.cod(s))
        });
        let full = g.morphism_ids().all(|s| {
            g.morphism_ids().all(|t| match g.compose(s, t) {
                Some(st) => ga.product(ga.component(s), ga.component(t)) == *ga.component(st),
                None => true,
            })
        });
        prop_assert_eq!(shortcut, full);
        prop_assert_eq!(ga.check_strong().is_ok(), full);
        prop_assert_eq!(ga.check_strong_exhaustive().is_ok(), full);
    }

    #[test]
    fn zero_vertex_rings_come_in_pairs(seed in any::<u64>()) {
        let (g, b) = random_build(seed);
        let ga = &b.graded;
        if ga.check_strong().is_ok() {
            for s in g.morphism_ids() {
                prop_assert_eq!(
                    ga.object_component(g.dom(s)).is_zero(),
                    ga.object_component(g.cod(s)).is_zero()
                );
            }
        }
    }

    #[test]
    fn unital_cancellative_gradings_are_locally_unital(seed in any::<u64>()) {
        let (_, b) = random_build(seed);
        if b.graded.check_unital().is_ok() {
            prop_assert!(b.graded.local_units().is_ok());
        }
    }

    #[test]
    fn commutant_is_antitone_and_exact(seed in any::<u64>(), picks in proptest::collection::vec(any::<bool>(), 16)) {
        let (_, b) = random_build(seed);
        let ga = &b.graded;
        let alg = ga.algebra();
        let r = ga.total();
        let basis = r.basis();
        let chosen: Vec<_> = basis.iter().zip(picks.iter().cycle()).filter(|(_, &p)| p).map(|(v, _)| v.clone()).collect();
        let small = Subspace::span(r.ambient_dim(), chosen.iter().take(chosen.len() / 2).cloned()).unwrap();
        let large = Subspace::span(r.ambient_dim(), chosen.iter().cloned()).unwrap();
        let c_small = commutant(alg, r, &small).unwrap();
        let c_large = commutant(alg, r, &large).unwrap();
        prop_assert!(c_large.is_subspace_of(&c_small));
        for y in c_large.basis() {
            prop_assert!(r.contains(y));
            for x in large.basis() {
                prop_assert_eq!(alg.mul(x, y), alg.mul(y, x));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn sigma_is_a_ring_isomorphism(seed in any::<u64>()) {
        let (g, b) = covering_build(seed);
        let act = GradedAction::new(&b.graded).unwrap();
        let alg = b.graded.algebra();
        for s in g.morphism_ids() {
            let sigma = act.sigma(s);
            prop_assert_eq!(sigma.source(), act.commutant_at(g.dom(s)));
            prop_assert_eq!(sigma.target(), act.commutant_at(g.cod(s)));
            prop_assert!(sigma.inverse().is_some());
            let basis = sigma.source().basis();
            for u in basis {
                for v in basis {
                    let lhs = sigma.apply(&alg.mul(u, v)).unwrap();
                    let rhs = alg.mul(&sigma.apply(u).unwrap(), &sigma.apply(v).unwrap());
                    prop_assert_eq!(lhs, rhs);
                }
            }
            let unit = act.local_units().unit(g.dom(s));
            prop_assert_eq!(&sigma.apply(unit).unwrap(), act.local_units().unit(g.cod(s)));
        }
    }

    #[test]
    fn sigma_of_a_composite_pair(seed in any::<u64>()) {
        let (g, b) = covering_build(seed);
        let act = GradedAction::new(&b.graded).unwrap();
        for s in g.morphism_ids() {
            for t in g.morphism_ids().filter(|&t| g.dom(s) == g.cod(t)) {
                let xy = act.pair(s).compose(act.pair(t)).unwrap();
                prop_assert_eq!(xy.x(), b.graded.component(g.compose(s, t).unwrap()));
                let direct = sigma_general(&xy, &dual_basis(&xy).unwrap()).unwrap();
                prop_assert_eq!(direct, act.sigma(s).compose(act.sigma(t)).unwrap());
            }
        }
    }

    #[test]
    fn dual_bases_sum_to_the_unit(seed in any::<u64>()) {
        let (g, b) = covering_build(seed);
        let act = GradedAction::new(&b.graded).unwrap();
        let alg = b.graded.algebra();
        for s in g.morphism_ids() {
            let p = act.pair(s);
            let d = dual_basis(p).unwrap();
            prop_assert_eq!(&d.sum(alg), &p.a().unit);
            for (x, y) in d.pairs() {
                prop_assert!(p.x().contains(x));
                prop_assert!(p.xinv().contains(y));
            }
            prop_assert!(dual_basis_freedom(p).is_ok());
        }
    }
}
