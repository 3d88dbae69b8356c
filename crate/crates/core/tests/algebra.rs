use brunlie_core::freelie::{lie_coords, lyndon_words, witt_dimension, FreeAssoc};
use brunlie_core::ncalg::{all_words, symmetrize, tensor_mul, wedge_project, TensorPoly};
use brunlie_core::sample;
use brunlie_core::{LieElement, NCPoly, Scalar};
use proptest::prelude::*;

fn word(w: &[u8]) -> NCPoly {
    NCPoly::monomial(2, w.to_vec(), Scalar::one())
}

/// `m∘(S⊗1)` on a tensor.
fn s_then_multiply(t: &TensorPoly, rank: u8) -> NCPoly {
    let mut out = NCPoly::zero(rank);
    for ((l, r), c) in t.iter() {
        let p = &NCPoly::monomial(rank, l.clone(), c.clone()).antipode()
            * &NCPoly::monomial(rank, r.clone(), Scalar::one());
        out = &out + &p;
    }
    out
}

#[test]
fn hopf_axioms_on_short_words() {
    for d in 0..=5 {
        for w in all_words(2, d) {
            let p = word(&w);
            let eps = if d == 0 {
                NCPoly::one(2)
            } else {
                NCPoly::zero(2)
            };
            assert_eq!(
                s_then_multiply(&p.coproduct(), 2),
                eps,
                "antipode axiom on {:?}",
                w
            );
            for v in all_words(2, 5 - d) {
                let q = word(&v);
                assert_eq!(
                    (&p * &q).coproduct(),
                    tensor_mul(&p.coproduct(), &q.coproduct())
                );
                assert_eq!((&p * &q).antipode(), &q.antipode() * &p.antipode());
            }
        }
    }
}

#[test]
fn coproduct_is_coassociative() {
    for d in 0..=5 {
        for w in all_words(2, d) {
            let t = word(&w).coproduct();
            // (Δ⊗1)Δ and (1⊗Δ)Δ as lists of triples
            let mut left = std::collections::BTreeMap::<(Vec<u8>, Vec<u8>, Vec<u8>), Scalar>::new();
            let mut right = left.clone();
            for ((a, b), c) in t.iter() {
                for ((a1, a2), c1) in word(a).coproduct().iter() {
                    *left.entry((a1.clone(), a2.clone(), b.clone())).or_default() += &(c * c1);
                }
                for ((b1, b2), c2) in word(b).coproduct().iter() {
                    *right
                        .entry((a.clone(), b1.clone(), b2.clone()))
                        .or_default() += &(c * c2);
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            assert_eq!(left, right);
        }
    }
}

#[test]
fn rotations_sum_to_m_times_the_class() {
    for d in 1..=8 {
        for w in all_words(2, d) {
            let n = symmetrize(2, &w).cyclic();
            assert_eq!(
                n,
                word(&w).cyclic().scale(&Scalar::from_int(d as i64)),
                "{:?}",
                w
            );
        }
    }
}

#[test]
fn lyndon_counts_follow_witt() {
    for a in 1..=4u8 {
        for d in 1..=8usize {
            if a == 4 && d == 8 {
                continue;
            }
            assert_eq!(
                lyndon_words(a, d).len() as u64,
                witt_dimension(a as u64, d as u64),
                "rank {} degree {}",
                a,
                d
            );
        }
    }
    assert_eq!(witt_dimension(4, 8), 8160);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_reassembles(seed in any::<u64>(), d in 0usize..=6) {
        let mut rng = sample::rng(seed);
        let p = &sample::poly(&mut rng, 2, d, 5) + &NCPoly::constant(2, Scalar::from_int(3));
        let dec = p.decompose_right_left().unwrap();
        let mut right = NCPoly::constant(2, dec.counit.clone());
        let mut left = right.clone();
        for i in 0..2u8 {
            right = &right + &dec.right[i as usize].lmul_letter(i);
            left = &left + &dec.left[i as usize].rmul_letter(i);
        }
        prop_assert_eq!(&right, &p);
        prop_assert_eq!(&left, &p);
    }

    #[test]
    fn trace_property(seed in any::<u64>(), d1 in 1usize..=3, d2 in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let p = sample::poly(&mut rng, 2, d1, 3);
        let q = sample::poly(&mut rng, 2, d2, 3);
        prop_assert_eq!((&p * &q).cyclic(), (&q * &p).cyclic());
    }

    #[test]
    fn reduced_coproduct_kills_commutators(seed in any::<u64>(), d1 in 1usize..=4, d2 in 1usize..=4) {
        let mut rng = sample::rng(seed);
        let u = sample::poly(&mut rng, 2, d1, 3);
        let v = sample::poly(&mut rng, 2, d2, 3);
        let c = &(&u * &v) - &(&v * &u);
        prop_assert!(wedge_project(&c.delta_tilde()).is_zero());
    }

    #[test]
    fn lie_normal_form_roundtrip(seed in any::<u64>(), d in 1usize..=8) {
        let mut rng = sample::rng(seed);
        let e = sample::lie(&mut rng, 2, d);
        prop_assert_eq!(lie_coords(&e.to_ncpoly()).unwrap(), e);
    }

    #[test]
    fn jacobi_and_antisymmetry(seed in any::<u64>(), d1 in 1usize..=2, d2 in 1usize..=2, d3 in 1usize..=2) {
        let mut rng = sample::rng(seed);
        let a = sample::lie(&mut rng, 3, d1);
        let b = sample::lie(&mut rng, 3, d2);
        let c = sample::lie(&mut rng, 3, d3);
        prop_assert!(a.bracket(&b).add(&b.bracket(&a)).is_zero());
        let j = a.bracket(&b.bracket(&c)).add(&b.bracket(&c.bracket(&a))).add(&c.bracket(&a.bracket(&b)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn substitution_respects_brackets(seed in any::<u64>(), d1 in 1usize..=3, d2 in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let phi = sample::lie(&mut rng, 2, d1);
        let psi = sample::lie(&mut rng, 2, d2);
        let a = sample::lie(&mut rng, 3, 1).to_ncpoly();
        let b = sample::lie(&mut rng, 3, 2).to_ncpoly();
        let alg = FreeAssoc::new(3);
        let lhs = phi.bracket(&psi).substitute(&alg, &[a.clone(), b.clone()]).unwrap();
        let p = phi.substitute(&alg, &[a.clone(), b.clone()]).unwrap();
        let q = psi.substitute(&alg, &[a, b]).unwrap();
        prop_assert_eq!(lhs, p.commutator(&q));
    }
}

#[test]
fn known_brackets() {
    let x = LieElement::generator(2, 0);
    let y = LieElement::generator(2, 1);
    let e = x.bracket(&x.bracket(&y));
    assert_eq!(
        e.to_ncpoly(),
        &(&word(&[0, 0, 1]) - &word(&[0, 1, 0]).scale(&Scalar::from_int(2))) + &word(&[1, 0, 0])
    );
    assert!(lie_coords(&word(&[0, 1])).is_err());
}
