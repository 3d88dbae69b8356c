use brunlie_core::dkho::SubspaceCache;
use brunlie_core::dmr::{dmr0_space, dmr_diagram_check, LambdaRule};
use brunlie_core::emergent::{
    ab_j, closed_identification, delta_sym, middle_square_defect, pent1_krv_closed,
    pent1_krv_route, Variant,
};
use brunlie_core::krv::{
    cocycle_defect, cyclic_words, div_mu_check, hamiltonian, ihara_bracket, sd, sd_inverse,
    sd_special_space, TangentialDerivation,
};
use brunlie_core::ncalg::CyclicPoly;
use brunlie_core::pentagon::grt1_space;
use brunlie_core::{sample, LieElement, NCPoly, Scalar};
use proptest::prelude::*;

fn lsym(w: usize) -> Vec<LieElement> {
    sd_special_space(w).unwrap().elements()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn divergence_is_a_cocycle(seed in any::<u64>(), d1 in 1usize..=4, d2 in 1usize..=4) {
        let mut rng = sample::rng(seed);
        let u = TangentialDerivation::new(sample::poly(&mut rng, 2, d1, 4), sample::poly(&mut rng, 2, d1, 4)).unwrap();
        let v = TangentialDerivation::new(sample::poly(&mut rng, 2, d2, 4), sample::poly(&mut rng, 2, d2, 4)).unwrap();
        prop_assert!(cocycle_defect(&u, &v).is_zero());
    }

    #[test]
    fn sd_is_injective(seed in any::<u64>(), d in 2usize..=7) {
        let mut rng = sample::rng(seed);
        let psi = sample::lie(&mut rng, 2, d);
        prop_assert_eq!(sd_inverse(&sd(&psi), d).unwrap(), psi);
    }

    #[test]
    fn routes_to_the_closed_form_agree(seed in any::<u64>(), d in 2usize..=5) {
        let mut rng = sample::rng(seed);
        let psi = sample::lie(&mut rng, 2, d);
        let mut cache = SubspaceCache::new();
        for v in [Variant::T13T23, Variant::T12T23] {
            let a = pent1_krv_route(&psi, v, &mut cache).unwrap();
            prop_assert_eq!(closed_identification(&a), pent1_krv_closed(&psi, v).unwrap());
        }
    }

    #[test]
    fn dmr_diagram_commutes(seed in any::<u64>(), d in 3usize..=5) {
        let mut rng = sample::rng(seed);
        let psi = sample::lie(&mut rng, 2, d);
        prop_assert!(dmr_diagram_check(&psi, LambdaRule::Surjection).unwrap().commutes());
    }
}

#[test]
fn hamiltonians_are_special() {
    for d in 1..=8 {
        for w in cyclic_words(d) {
            let c = CyclicPoly::term(w.clone(), Scalar::one());
            assert!(hamiltonian(&c).unwrap().is_special(), "{:?}", w);
        }
    }
}

#[test]
fn div_mu_up_to_degree_seven() {
    for d in 2..=7 {
        for w in cyclic_words(d) {
            assert!(div_mu_check(&w).unwrap(), "{:?}", w);
        }
    }
}

#[test]
fn grt1_inside_dmr0() {
    for w in 3..=6 {
        assert!(
            grt1_space(w)
                .unwrap()
                .is_subspace_of(&dmr0_space(w).unwrap()),
            "weight {}",
            w
        );
    }
}

#[test]
fn special_part_is_closed_under_ihara_bracket() {
    for (a, b) in [(3, 5), (3, 4)] {
        let target = sd_special_space(a + b).unwrap();
        for e in lsym(a) {
            for f in lsym(b) {
                assert!(target.contains(&ihara_bracket(&e, &f).unwrap()));
            }
        }
    }
}

#[test]
fn symmetric_coproduct_lands_in_commutators() {
    for w in 3..=6 {
        for e in lsym(w) {
            let u = sd(&e);
            for k in 1..=5 {
                let f = NCPoly::monomial(1, vec![0; k], Scalar::one());
                assert!(
                    u.apply(&delta_sym(&f)).cyclic().is_zero(),
                    "weight {} power {}",
                    w,
                    k
                );
            }
        }
    }
}

#[test]
fn abelianization_kills_brackets() {
    let mut cache = SubspaceCache::new();
    for (a, b) in [(3, 3), (3, 5)] {
        for e in lsym(a) {
            for f in lsym(b) {
                let g = ihara_bracket(&e, &f).unwrap();
                assert!(
                    ab_j(&g, &mut cache).unwrap().is_zero(),
                    "weights {} {}",
                    a,
                    b
                );
            }
        }
    }
}

#[test]
fn middle_square_on_the_special_part() {
    let mut cache = SubspaceCache::new();
    for w in 3..=6 {
        for e in lsym(w) {
            assert!(
                middle_square_defect(&e, &mut cache).unwrap().is_zero(),
                "weight {}",
                w
            );
        }
    }
}
