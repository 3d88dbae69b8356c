//! Seeded random inputs for property checks.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dkho::{CombedBasis, CombedLie};
use crate::freelie::{lyndon_words, LieElement};
use crate::linalg::SVec;
use crate::ncalg::{NCPoly, Word};
use crate::scalar::Scalar;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero integer.
pub fn coeff<R: Rng>(rng: &mut R) -> Scalar {
    let v: i64 = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        Scalar::from_int(v)
    } else {
        Scalar::from_int(-v)
    }
}

/// A nonzero homogeneous Lie element with a few random Lyndon terms.
pub fn lie<R: Rng>(rng: &mut R, rank: u8, degree: usize) -> LieElement {
    let words = lyndon_words(rank, degree);
    loop {
        let mut e = LieElement::zero(rank);
        let k = rng.gen_range(1..=words.len().min(4));
        for _ in 0..k {
            let w = words[rng.gen_range(0..words.len())].clone();
            e.add_scaled(&coeff(rng), &LieElement::basis(rank, w));
        }
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random homogeneous polynomial (not necessarily Lie).
pub fn poly<R: Rng>(rng: &mut R, rank: u8, degree: usize, terms: usize) -> NCPoly {
    let mut p = NCPoly::zero(rank);
    for _ in 0..terms {
        let w: Word = (0..degree).map(|_| rng.gen_range(0..rank)).collect();
        p.add_term(w, coeff(rng));
    }
    p
}

/// A random homogeneous element of `t_n` (zero when that degree is empty).
pub fn combed<R: Rng>(rng: &mut R, n: u8, degree: usize) -> CombedLie {
    let b = CombedBasis::new(n, degree);
    if b.dim() == 0 {
        return CombedLie::zero(n);
    }
    let k = rng.gen_range(1..=b.dim().min(4));
    let mut v: SVec = Vec::new();
    for _ in 0..k {
        v.push((rng.gen_range(0..b.dim()), coeff(rng)));
    }
    v.sort_by_key(|p| p.0);
    v.dedup_by_key(|p| p.0);
    b.from_coords(&v)
}

/// A pure braid word of `len` random pure generators `A_{ij}^{±1}`.
pub fn pure_braid<R: Rng>(rng: &mut R, n: u8, len: usize) -> crate::braids::BraidWord {
    let mut b = crate::braids::BraidWord::identity(n);
    for _ in 0..len {
        let j = rng.gen_range(2..=n);
        let i = rng.gen_range(1..j);
        let a = crate::braids::BraidWord::pure_generator(n, i, j).expect("valid generator");
        let a = if rng.gen_bool(0.5) { a } else { a.inverse() };
        b = b.compose(&a).expect("same strand count");
    }
    b
}

/// A product of commutators of random pure generators: every exponent sum
/// vanishes, so each one-strand deletion of a 3-braid is trivial.
pub fn balanced_pure_braid<R: Rng>(
    rng: &mut R,
    n: u8,
    commutators: usize,
) -> crate::braids::BraidWord {
    let mut b = crate::braids::BraidWord::identity(n);
    for _ in 0..commutators {
        let k = rng.gen_range(1..=2);
        let u = pure_braid(rng, n, k);
        let v = pure_braid(rng, n, 1);
        let c = u
            .compose(&v)
            .and_then(|x| x.compose(&u.inverse()))
            .and_then(|x| x.compose(&v.inverse()))
            .expect("same strand count");
        b = b.compose(&c).expect("same strand count");
    }
    b
}

/// A random reduced word of length at most `len`.
pub fn free_word<R: Rng>(rng: &mut R, rank: u8, len: usize) -> crate::braids::FreeGroupWord {
    let letters = (0..len)
        .map(|_| {
            (
                rng.gen_range(1..=rank),
                if rng.gen_bool(0.5) { 1 } else { -1 },
            )
        })
        .collect();
    crate::braids::FreeGroupWord::new(rank, letters).expect("valid letters")
}
