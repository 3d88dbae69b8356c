use brunlie_core::dkho::{CombedBasis, CombedLie, SubspaceCache, SubspaceSpec};
use brunlie_core::freelie::witt_dimension;
use brunlie_core::pentagon::{grt1_space, pent_k_space, pent_phi, pent_space, PentFlavor};
use brunlie_core::{sample, Scalar};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn combed_bracket_is_a_lie_bracket(seed in any::<u64>(), n in 3u8..=5, d1 in 1usize..=2, d2 in 1usize..=2, d3 in 1usize..=2) {
        let mut rng = sample::rng(seed);
        let a = sample::combed(&mut rng, n, d1);
        let b = sample::combed(&mut rng, n, d2);
        let c = sample::combed(&mut rng, n, d3);
        prop_assert!(a.bracket(&b).add(&b.bracket(&a)).is_zero());
        let j = a.bracket(&b.bracket(&c)).add(&b.bracket(&c.bracket(&a))).add(&c.bracket(&a.bracket(&b)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn strand_deletion_is_a_homomorphism(seed in any::<u64>(), n in 3u8..=5, d1 in 1usize..=3, d2 in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let a = sample::combed(&mut rng, n, d1);
        let b = sample::combed(&mut rng, n, d2);
        for i in 1..=n {
            let lhs = a.bracket(&b).delete_strand(i).unwrap();
            let rhs = a.delete_strand(i).unwrap().bracket(&b.delete_strand(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn basis_coordinates_roundtrip(seed in any::<u64>(), n in 2u8..=5, d in 1usize..=4) {
        let mut rng = sample::rng(seed);
        let e = sample::combed(&mut rng, n, d);
        let b = CombedBasis::new(n, d);
        prop_assert_eq!(b.from_coords(&b.coords(&e)), e);
    }

    #[test]
    fn pentagon_images_die_under_every_deletion(seed in any::<u64>(), d in 2usize..=6) {
        let mut rng = sample::rng(seed);
        let phi = sample::lie(&mut rng, 2, d);
        let g = pent_phi(&phi);
        for i in 1..=4 {
            prop_assert!(g.delete_strand(i).unwrap().is_zero());
        }
    }

    #[test]
    fn pentagon_map_is_linear(seed in any::<u64>(), d in 1usize..=5) {
        let mut rng = sample::rng(seed);
        let a = sample::lie(&mut rng, 2, d);
        let b = sample::lie(&mut rng, 2, d);
        let c = sample::coeff(&mut rng);
        prop_assert_eq!(pent_phi(&a.add(&b.scale(&c))), pent_phi(&a).add(&pent_phi(&b).scale(&c)));
    }
}

#[test]
fn infinitesimal_braid_relations() {
    for n in 3..=6u8 {
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    if k == i || k == j {
                        continue;
                    }
                    let tij = CombedLie::t(n, i, j);
                    let s = CombedLie::t(n, i, k).add(&CombedLie::t(n, j, k));
                    assert!(tij.bracket(&s).is_zero(), "4T failed at {} {} {}", i, j, k);
                    for l in k + 1..=n {
                        if l != i && l != j {
                            assert!(tij.bracket(&CombedLie::t(n, k, l)).is_zero());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn combing_dimensions() {
    for n in 2..=5u8 {
        for d in 1..=5usize {
            let expected: u64 = (1..n as u64).map(|r| witt_dimension(r, d as u64)).sum();
            assert_eq!(
                CombedBasis::new(n, d).dim() as u64,
                expected,
                "t_{} degree {}",
                n,
                d
            );
        }
    }
}

#[test]
fn brunnian_parts_are_subalgebras_and_nested() {
    let mut cache = SubspaceCache::new();
    for d in 1..=4 {
        let brun = cache.subspace(&SubspaceSpec::Brun(4), d).unwrap();
        let whole = cache.subspace(&SubspaceSpec::Whole(4), d).unwrap();
        assert!(brun.is_subspace_of(&whole));
        for (m, k) in [(1, 3), (2, 2)] {
            let mixed = cache.subspace(&SubspaceSpec::BrunMixed(m, k), d).unwrap();
            let dk = cache.subspace(&SubspaceSpec::Dk(m, k), d).unwrap();
            assert!(mixed.is_subspace_of(&dk));
            assert!(
                brun.is_subspace_of(&mixed),
                "brun_4 inside brun_{{{},{}}} in degree {}",
                m,
                k,
                d
            );
        }
        cache.verify_subalgebra(&SubspaceSpec::Brun(4), d).unwrap();
    }
}

#[test]
fn solution_spaces_shrink_with_k() {
    let mut cache = SubspaceCache::new();
    for w in 3..=5 {
        let full = pent_space(w).unwrap();
        assert!(grt1_space(w).unwrap().is_subspace_of(&full));
        for flavor in PentFlavor::ALL {
            let s1 = pent_k_space(w, flavor, 1, &mut cache).unwrap();
            let s2 = pent_k_space(w, flavor, 2, &mut cache).unwrap();
            assert!(s2.is_subspace_of(&s1), "{} weight {}", flavor.name(), w);
            assert!(full.is_subspace_of(&s2), "{} weight {}", flavor.name(), w);
        }
    }
}

#[test]
fn generator_scaling() {
    let t = CombedLie::t(4, 2, 4);
    assert_eq!(t.scale(&Scalar::from_int(2)).sub(&t), t);
    assert!(CombedLie::generator(4, 3, 3).is_err());
}
