//! Noncommutative polynomials over finite alphabets, their Hopf structure and
//! cyclic words.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

pub type Letter = u8;
pub type Word = Vec<Letter>;

/// Pairs of words, the basis of `A ⊗ A`.
pub type TensorPoly = LinComb<(Word, Word)>;
/// Cyclic words keyed by their minimal rotation.
pub type CyclicPoly = LinComb<Word>;
/// `|a| ∧ |b|` stored once with `a < b`, both nonempty.
pub type WedgePoly = LinComb<(Word, Word)>;

/// A noncommutative polynomial over the alphabet `{0, .., rank-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    rank: u8,
    terms: LinComb<Word>,
}

/// Right and left decomposition `x = ε + Σ x_i·dR_i = ε + Σ dL_i·x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub counit: Scalar,
    pub right: Vec<NCPoly>,
    pub left: Vec<NCPoly>,
}

impl NCPoly {
    pub fn zero(rank: u8) -> Self {
        NCPoly {
            rank,
            terms: LinComb::new(),
        }
    }

    pub fn one(rank: u8) -> Self {
        Self::monomial(rank, Vec::new(), Scalar::one())
    }

    pub fn constant(rank: u8, c: Scalar) -> Self {
        Self::monomial(rank, Vec::new(), c)
    }

    pub fn letter(rank: u8, i: Letter) -> Self {
        assert!(i < rank, "letter {} outside alphabet of rank {}", i, rank);
        Self::monomial(rank, vec![i], Scalar::one())
    }

    pub fn monomial(rank: u8, w: Word, c: Scalar) -> Self {
        debug_assert!(w.iter().all(|&l| l < rank));
        NCPoly {
            rank,
            terms: LinComb::term(w, c),
        }
    }

    pub fn from_terms(rank: u8, terms: LinComb<Word>) -> Self {
        debug_assert!(terms.keys().all(|w| w.iter().all(|&l| l < rank)));
        NCPoly { rank, terms }
    }

    /// Builds from `(word, coefficient)` pairs, rejecting out-of-range letters.
    pub fn try_from_terms(
        rank: u8,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Self> {
        let mut out = LinComb::new();
        for (w, c) in terms {
            if let Some(&l) = w.iter().find(|&&l| l >= rank) {
                return Err(Error::IndexOutOfRange(alloc::format!(
                    "letter {} for rank {}",
                    l,
                    rank
                )));
            }
            out.add_term(w, c);
        }
        Ok(NCPoly { rank, terms: out })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Word> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, w: &[Letter]) -> Scalar {
        self.terms
            .get(&w.to_vec())
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn counit(&self) -> Scalar {
        self.coeff(&[])
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        debug_assert!(w.iter().all(|&l| l < self.rank));
        self.terms.add_term(w, c);
    }

    fn check(&self, other: &NCPoly) -> Result<()> {
        if self.rank != other.rank {
            Err(Error::AlphabetMismatch {
                left: self.rank,
                right: other.rank,
            })
        } else {
            Ok(())
        }
    }

    /// `self += c·other`; panics on alphabet mismatch.
    pub fn add_scaled(&mut self, c: &Scalar, other: &NCPoly) {
        self.check(other).expect("alphabet mismatch");
        self.terms.add_scaled(c, &other.terms);
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check(other)?;
        Ok(NCPoly {
            rank: self.rank,
            terms: &self.terms + &other.terms,
        })
    }

    pub fn try_sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check(other)?;
        Ok(NCPoly {
            rank: self.rank,
            terms: &self.terms - &other.terms,
        })
    }

    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check(other)?;
        let mut out = LinComb::new();
        for (u, a) in self.terms.iter() {
            for (v, b) in other.terms.iter() {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        Ok(NCPoly {
            rank: self.rank,
            terms: out,
        })
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        NCPoly {
            rank: self.rank,
            terms: self.terms.scale(c),
        }
    }

    /// `ab − ba`
    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        &(self * other) - &(other * self)
    }

    /// Multiplies by a single letter on the left.
    pub fn lmul_letter(&self, l: Letter) -> NCPoly {
        self.terms_map(|w| {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(l);
            v.extend_from_slice(w);
            v
        })
    }

    /// Multiplies by a single letter on the right.
    pub fn rmul_letter(&self, l: Letter) -> NCPoly {
        self.terms_map(|w| {
            let mut v = w.clone();
            v.push(l);
            v
        })
    }

    fn terms_map(&self, f: impl FnMut(&Word) -> Word) -> NCPoly {
        NCPoly {
            rank: self.rank,
            terms: self.terms.map_keys(f),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> NCPoly {
        NCPoly {
            rank: self.rank,
            terms: self.terms.filter(|w| w.len() == d),
        }
    }

    /// Drops every word longer than `d`.
    pub fn truncate(&self, d: usize) -> NCPoly {
        NCPoly {
            rank: self.rank,
            terms: self.terms.filter(|w| w.len() <= d),
        }
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|w| w.len()).collect()
    }

    /// The common length of all words, if there is one; `None` for zero too.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let ds = self.degrees();
        if ds.len() == 1 {
            ds.into_iter().next()
        } else {
            None
        }
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    /// Renames letters; `f` returns the new letter.
    pub fn map_letters(&self, new_rank: u8, f: impl Fn(Letter) -> Letter) -> NCPoly {
        NCPoly {
            rank: new_rank,
            terms: self.terms.map_keys(|w| w.iter().map(|&l| f(l)).collect()),
        }
    }

    /// The algebra homomorphism sending letter `i` to `images[i]`.
    pub fn substitute(&self, images: &[NCPoly]) -> Result<NCPoly> {
        if images.len() != self.rank as usize {
            return Err(Error::ArityMismatch {
                expected: self.rank as usize,
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.rank,
            None => return Ok(self.clone()),
        };
        if let Some(p) = images.iter().find(|p| p.rank != target) {
            return Err(Error::AlphabetMismatch {
                left: target,
                right: p.rank,
            });
        }
        Ok(self.subst_rec(images, target))
    }

    fn subst_rec(&self, images: &[NCPoly], target: u8) -> NCPoly {
        let mut out = NCPoly::constant(target, self.counit());
        let dec = self.right_parts();
        for (a, part) in dec.into_iter().enumerate() {
            if part.is_zero() || images[a].is_zero() {
                continue;
            }
            let inner = part.subst_rec(images, target);
            out.add_scaled(&Scalar::one(), &(&images[a] * &inner));
        }
        out
    }

    /// `dR_i` for every letter: `x = ε + Σ x_i·dR_i(x)`.
    fn right_parts(&self) -> Vec<NCPoly> {
        let mut parts = vec![NCPoly::zero(self.rank); self.rank as usize];
        for (w, c) in self.terms.iter() {
            if let Some((&first, rest)) = w.split_first() {
                parts[first as usize]
                    .terms
                    .add_term(rest.to_vec(), c.clone());
            }
        }
        parts
    }

    fn left_parts(&self) -> Vec<NCPoly> {
        let mut parts = vec![NCPoly::zero(self.rank); self.rank as usize];
        for (w, c) in self.terms.iter() {
            if let Some((&last, rest)) = w.split_last() {
                parts[last as usize]
                    .terms
                    .add_term(rest.to_vec(), c.clone());
            }
        }
        parts
    }

    /// `dR_i(x)`, the part of `x` after a leading `x_i`.
    pub fn d_right(&self, i: Letter) -> NCPoly {
        let mut out = NCPoly::zero(self.rank);
        for (w, c) in self.terms.iter() {
            if w.first() == Some(&i) {
                out.terms.add_term(w[1..].to_vec(), c.clone());
            }
        }
        out
    }

    /// `dL_i(x)`, the part of `x` before a trailing `x_i`.
    pub fn d_left(&self, i: Letter) -> NCPoly {
        let mut out = NCPoly::zero(self.rank);
        for (w, c) in self.terms.iter() {
            if w.last() == Some(&i) {
                out.terms.add_term(w[..w.len() - 1].to_vec(), c.clone());
            }
        }
        out
    }

    pub fn decompose(&self) -> Decomposition {
        Decomposition {
            counit: self.counit(),
            right: self.right_parts(),
            left: self.left_parts(),
        }
    }

    /// The decomposition on the two-letter alphabet.
    pub fn decompose_right_left(&self) -> Result<Decomposition> {
        if self.rank != 2 {
            return Err(Error::WrongAlphabet {
                expected: 2,
                found: self.rank,
            });
        }
        Ok(self.decompose())
    }

    pub fn reverse(&self) -> NCPoly {
        self.terms_map(|w| w.iter().rev().copied().collect())
    }

    /// `S(w) = (−1)^{|w|} reverse(w)`
    pub fn antipode(&self) -> NCPoly {
        let mut out = LinComb::new();
        for (w, c) in self.terms.iter() {
            let r: Word = w.iter().rev().copied().collect();
            let v = if w.len() % 2 == 1 { -c } else { c.clone() };
            out.add_term(r, v);
        }
        NCPoly {
            rank: self.rank,
            terms: out,
        }
    }

    /// `Δ`, letters primitive: each word splits over all subsets of positions.
    pub fn coproduct(&self) -> TensorPoly {
        self.split_sum(false)
    }

    /// `(1 ⊗ S)∘Δ`
    pub fn delta_tilde(&self) -> TensorPoly {
        self.split_sum(true)
    }

    fn split_sum(&self, twist: bool) -> TensorPoly {
        let mut out = TensorPoly::new();
        for (w, c) in self.terms.iter() {
            let n = w.len();
            assert!(n < 32, "word too long for coproduct");
            for mask in 0u32..(1u32 << n) {
                let mut l = Vec::new();
                let mut r = Vec::new();
                for (i, &x) in w.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        l.push(x);
                    } else {
                        r.push(x);
                    }
                }
                if twist {
                    let k = r.len();
                    r.reverse();
                    let v = if k % 2 == 1 { -c } else { c.clone() };
                    out.add_term((l, r), v);
                } else {
                    out.add_term((l, r), c.clone());
                }
            }
        }
        out
    }

    /// The reduced coaction `μ`: merges each adjacent pair of equal letters.
    pub fn reduced_coaction(&self) -> NCPoly {
        let mut out = LinComb::new();
        for (w, c) in self.terms.iter() {
            for i in 0..w.len().saturating_sub(1) {
                if w[i] == w[i + 1] {
                    let mut v = Vec::with_capacity(w.len() - 1);
                    v.extend_from_slice(&w[..=i]);
                    v.extend_from_slice(&w[i + 2..]);
                    out.add_term(v, c.clone());
                }
            }
        }
        NCPoly {
            rank: self.rank,
            terms: out,
        }
    }

    /// `|p|`
    pub fn cyclic(&self) -> CyclicPoly {
        self.terms.map_keys(|w| cyclic_canon(w))
    }
}

/// The lexicographically least rotation of `w`.
pub fn cyclic_canon(w: &[Letter]) -> Word {
    let n = w.len();
    let mut best = 0;
    for s in 1..n {
        for k in 0..n {
            let a = w[(s + k) % n];
            let b = w[(best + k) % n];
            if a != b {
                if a < b {
                    best = s;
                }
                break;
            }
        }
    }
    (0..n).map(|k| w[(best + k) % n]).collect()
}

/// `N(|w|)`: the sum of all `m` rotations of `w`.
pub fn symmetrize(rank: u8, w: &[Letter]) -> NCPoly {
    let n = w.len();
    let mut out = NCPoly::zero(rank);
    if n == 0 {
        return NCPoly::one(rank);
    }
    for s in 0..n {
        let r: Word = (0..n).map(|k| w[(s + k) % n]).collect();
        out.add_term(r, Scalar::one());
    }
    out
}

/// `N` extended linearly to cyclic polynomials.
pub fn symmetrize_poly(rank: u8, c: &CyclicPoly) -> NCPoly {
    let mut out = NCPoly::zero(rank);
    for (w, v) in c.iter() {
        out.add_scaled(v, &symmetrize(rank, w));
    }
    out
}

/// Applies `|·|` in each factor, drops degree-0 factors and antisymmetrizes.
pub fn wedge_project(t: &TensorPoly) -> WedgePoly {
    let mut out = WedgePoly::new();
    for ((u, v), c) in t.iter() {
        if u.is_empty() || v.is_empty() {
            continue;
        }
        let a = cyclic_canon(u);
        let b = cyclic_canon(v);
        match a.cmp(&b) {
            core::cmp::Ordering::Less => out.add_term((a, b), c.clone()),
            core::cmp::Ordering::Greater => out.add_term((b, a), -c),
            core::cmp::Ordering::Equal => {}
        }
    }
    out
}

/// `(a⊗b)(c⊗d) = ac ⊗ bd`
pub fn tensor_mul(s: &TensorPoly, t: &TensorPoly) -> TensorPoly {
    let mut out = TensorPoly::new();
    for ((a, b), x) in s.iter() {
        for ((c, d), y) in t.iter() {
            let mut l = a.clone();
            l.extend_from_slice(c);
            let mut r = b.clone();
            r.extend_from_slice(d);
            out.add_term((l, r), x * y);
        }
    }
    out
}

/// `p ⊗ q`
pub fn tensor(p: &NCPoly, q: &NCPoly) -> TensorPoly {
    let mut out = TensorPoly::new();
    for (a, x) in p.terms().iter() {
        for (b, y) in q.terms().iter() {
            out.add_term((a.clone(), b.clone()), x * y);
        }
    }
    out
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.try_add(rhs).expect("alphabet mismatch")
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.try_sub(rhs).expect("alphabet mismatch")
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.try_mul(rhs).expect("alphabet mismatch")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}·", c)?;
            if w.is_empty() {
                write!(f, "1")?;
            }
            for l in w {
                write!(f, "x{}", l)?;
            }
        }
        Ok(())
    }
}

/// Every word of length `d` over `rank` letters, in lexicographic order.
pub fn all_words(rank: u8, d: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * rank as usize);
        for w in &out {
            for l in 0..rank {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u8) -> NCPoly {
        NCPoly::letter(2, i)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(
            &x(0) * &x(1),
            NCPoly::monomial(2, vec![0, 1], Scalar::one())
        );
        let p = &x(0) * &x(1);
        assert!((&p - &p).is_zero());
        let h = x(0).scale(&Scalar::ratio(1, 2));
        assert_eq!(&h + &h, x(0));
        assert!(x(0).try_add(&NCPoly::letter(3, 0)).is_err());
    }

    #[test]
    fn hopf_examples() {
        let d = x(0).coproduct();
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&(vec![0], vec![])), Scalar::one());
        assert_eq!(d.coeff(&(vec![], vec![0])), Scalar::one());
        assert_eq!((&x(0) * &x(1)).antipode(), &x(1) * &x(0));
        let t = x(0).delta_tilde();
        assert_eq!(t.coeff(&(vec![], vec![0])), Scalar::from_int(-1));
        assert_eq!(
            NCPoly::constant(2, Scalar::from_int(3)).counit(),
            Scalar::from_int(3)
        );
    }

    #[test]
    fn decomposition_examples() {
        let p = &x(0) * &x(1);
        let d = p.decompose_right_left().unwrap();
        assert_eq!(d.right[0], x(1));
        assert!(d.right[1].is_zero());
        assert_eq!(d.left[1], x(0));
        let b = x(0).commutator(&x(1));
        let d = b.decompose();
        assert_eq!(d.right[0], x(1));
        assert_eq!(d.right[1], -&x(0));
        let d = NCPoly::one(2).decompose();
        assert!(d.counit.is_one() && d.right.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn coaction_examples() {
        assert_eq!((&x(0) * &x(0)).reduced_coaction(), x(0));
        assert!((&x(0) * &x(1)).reduced_coaction().is_zero());
        assert_eq!((&(&x(0) * &x(0)) * &x(1)).reduced_coaction(), &x(0) * &x(1));
        assert!(x(0).reduced_coaction().is_zero());
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!((&x(0) * &x(1)).cyclic(), (&x(1) * &x(0)).cyclic());
        assert!(x(0).commutator(&x(1)).cyclic().is_zero());
        assert_eq!(cyclic_canon(&[1, 0, 0, 1]), vec![0, 0, 1, 1]);
        assert_eq!(symmetrize(2, &[0, 1]), &(&x(0) * &x(1)) + &(&x(1) * &x(0)));
        assert_eq!(
            symmetrize(2, &[0, 0]),
            (&x(0) * &x(0)).scale(&Scalar::from_int(2))
        );
    }

    #[test]
    fn wedge_examples() {
        let t = tensor(&x(0), &x(1));
        let w = wedge_project(&t);
        assert_eq!(w.coeff(&(vec![0], vec![1])), Scalar::one());
        assert!(wedge_project(&tensor(&x(0), &x(0))).is_zero());
        let s = &tensor(&x(0), &x(1)) + &tensor(&x(1), &x(0));
        assert!(wedge_project(&s).is_zero());
    }

    #[test]
    fn substitution() {
        let p = &x(0) * &x(1);
        let s = p.substitute(&[&x(0) + &x(1), NCPoly::zero(2)]).unwrap();
        assert!(s.is_zero());
        let s = p.substitute(&[x(1), x(0)]).unwrap();
        assert_eq!(s, &x(1) * &x(0));
        assert!(p.substitute(&[x(0)]).is_err());
    }
}
