//! Free Lie algebras in the Lyndon basis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ncalg::{Letter, NCPoly, Word};
use crate::scalar::Scalar;

/// Whether `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[Letter]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|s| {
        let rot = w[s..].iter().chain(w[..s].iter());
        w.iter().lt(rot)
    })
}

/// All Lyndon words of length `d` over `rank` letters, lexicographically.
pub fn lyndon_words(rank: u8, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if d == 0 || rank == 0 {
        return out;
    }
    // Duval's generation of all Lyndon words of length ≤ d
    let mut w: Vec<Letter> = vec![0];
    loop {
        if w.len() == d {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == rank - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(l) => *l += 1,
        }
    }
    out
}

/// `(1/d) Σ_{e | d} μ(e) a^{d/e}`
pub fn witt_dimension(rank: u64, d: u64) -> u64 {
    if d == 0 {
        return 0;
    }
    let mut total: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            total += mobius(e) as i128 * (rank as i128).pow((d / e) as u32);
        }
    }
    (total / d as i128) as u64
}

fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `(u, v)` with `v` the longest proper Lyndon suffix of `w`.
pub fn standard_factorization(w: &[Letter]) -> Option<(Word, Word)> {
    if w.len() < 2 {
        return None;
    }
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| (w[..i].to_vec(), w[i..].to_vec()))
}

/// Cache of expanded standard bracketings `P_w`.
#[derive(Clone, Debug, Default)]
pub struct BracketCache {
    rank: u8,
    memo: BTreeMap<Word, NCPoly>,
}

impl BracketCache {
    pub fn new(rank: u8) -> Self {
        BracketCache {
            rank,
            memo: BTreeMap::new(),
        }
    }

    pub fn expand(&mut self, w: &[Letter]) -> NCPoly {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let p = match standard_factorization(w) {
            None => NCPoly::letter(self.rank, w[0]),
            Some((u, v)) => {
                let a = self.expand(&u);
                let b = self.expand(&v);
                a.commutator(&b)
            }
        };
        self.memo.insert(w.to_vec(), p.clone());
        p
    }
}

/// A Lie element given by its coordinates on the Lyndon basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LieElement {
    rank: u8,
    coords: LinComb<Word>,
}

impl LieElement {
    pub fn zero(rank: u8) -> Self {
        LieElement {
            rank,
            coords: LinComb::new(),
        }
    }

    pub fn generator(rank: u8, i: Letter) -> Self {
        assert!(i < rank);
        LieElement {
            rank,
            coords: LinComb::term(vec![i], Scalar::one()),
        }
    }

    /// The basis element `P_w`; `w` must be Lyndon.
    pub fn basis(rank: u8, w: Word) -> Self {
        assert!(is_lyndon(&w) && w.iter().all(|&l| l < rank));
        LieElement {
            rank,
            coords: LinComb::term(w, Scalar::one()),
        }
    }

    pub fn from_coords(rank: u8, coords: LinComb<Word>) -> Result<Self> {
        for w in coords.keys() {
            if !is_lyndon(w) || w.iter().any(|&l| l >= rank) {
                return Err(Error::Precondition(alloc::format!(
                    "{:?} is not a Lyndon word of rank {}",
                    w,
                    rank
                )));
            }
        }
        Ok(LieElement { rank, coords })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn coords(&self) -> &LinComb<Word> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn homogeneous_part(&self, d: usize) -> LieElement {
        LieElement {
            rank: self.rank,
            coords: self.coords.filter(|w| w.len() == d),
        }
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.coords.keys().map(|w| w.len());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        LieElement {
            rank: self.rank,
            coords: self.coords.scale(c),
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        assert_eq!(self.rank, other.rank, "alphabet mismatch");
        LieElement {
            rank: self.rank,
            coords: &self.coords + &other.coords,
        }
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        assert_eq!(self.rank, other.rank, "alphabet mismatch");
        LieElement {
            rank: self.rank,
            coords: &self.coords - &other.coords,
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &LieElement) {
        assert_eq!(self.rank, other.rank, "alphabet mismatch");
        self.coords.add_scaled(c, &other.coords);
    }

    pub fn to_ncpoly(&self) -> NCPoly {
        let mut cache = BracketCache::new(self.rank);
        self.to_ncpoly_with(&mut cache)
    }

    pub fn to_ncpoly_with(&self, cache: &mut BracketCache) -> NCPoly {
        let mut out = NCPoly::zero(self.rank);
        for (w, c) in self.coords.iter() {
            out.add_scaled(c, &cache.expand(w));
        }
        out
    }

    pub fn bracket(&self, other: &LieElement) -> LieElement {
        let p = self.to_ncpoly().commutator(&other.to_ncpoly());
        lie_coords(&p).expect("bracket of Lie elements is Lie")
    }

    /// Evaluates the element in a target Lie algebra, one image per letter.
    pub fn substitute<A: LieAlgebra>(&self, alg: &A, images: &[A::Elem]) -> Result<A::Elem> {
        if images.len() != self.rank as usize {
            return Err(Error::ArityMismatch {
                expected: self.rank as usize,
                found: images.len(),
            });
        }
        let mut memo: BTreeMap<Word, A::Elem> = BTreeMap::new();
        let mut out = alg.zero();
        for (w, c) in self.coords.iter() {
            let v = eval_lyndon(alg, images, w, &mut memo);
            alg.add_scaled(&mut out, c, &v);
        }
        Ok(out)
    }

    /// Substitution into the free associative algebra on `target_rank` letters.
    pub fn substitute_poly(&self, images: &[NCPoly]) -> Result<NCPoly> {
        let target = images.first().map(|p| p.rank()).unwrap_or(self.rank);
        self.substitute(&FreeAssoc::new(target), images)
    }
}

fn eval_lyndon<A: LieAlgebra>(
    alg: &A,
    images: &[A::Elem],
    w: &[Letter],
    memo: &mut BTreeMap<Word, A::Elem>,
) -> A::Elem {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let v = match standard_factorization(w) {
        None => images[w[0] as usize].clone(),
        Some((u, v)) => {
            let a = eval_lyndon(alg, images, &u, memo);
            let b = eval_lyndon(alg, images, &v, memo);
            alg.bracket(&a, &b)
        }
    };
    memo.insert(w.to_vec(), v.clone());
    v
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.coords.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}·P(", c)?;
            for l in w {
                write!(f, "x{}", l)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Lyndon coordinates by triangular elimination: the least word of `P_w` is
/// `w` itself with coefficient 1. Fails when the remainder has a least word
/// that is not Lyndon, which happens exactly when `p` is not Lie.
pub fn lie_coords(p: &NCPoly) -> Result<LieElement> {
    let mut cache = BracketCache::new(p.rank());
    lie_coords_with(p, &mut cache)
}

pub fn lie_coords_with(p: &NCPoly, cache: &mut BracketCache) -> Result<LieElement> {
    let mut rem = p.terms().clone();
    let mut coords = LinComb::new();
    while let Some((w, c)) = rem.first() {
        let (w, c) = (w.clone(), c.clone());
        if !is_lyndon(&w) {
            return Err(Error::NotLie);
        }
        let e = cache.expand(&w);
        rem.add_scaled(&(-&c), e.terms());
        coords.add_term(w, c);
    }
    Ok(LieElement {
        rank: p.rank(),
        coords,
    })
}

/// Left-normed bracketing `θ(w1…wm) = [..[w1,w2],..,wm]`, extended linearly.
pub fn dynkin_theta(p: &NCPoly) -> NCPoly {
    let rank = p.rank();
    let mut out = NCPoly::zero(rank);
    for (w, c) in p.terms().iter() {
        if w.is_empty() {
            continue;
        }
        let mut acc = NCPoly::letter(rank, w[0]);
        for &l in &w[1..] {
            acc = &acc.rmul_letter(l) - &acc.lmul_letter(l);
        }
        out.add_scaled(c, &acc);
    }
    out
}

/// Result of the Dynkin test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieForm {
    Lie(LieElement),
    /// `θ(p) − m·p` summed over degrees (plus any constant term).
    NotLie(NCPoly),
}

/// Lyndon coordinates of `p` if every degree-`m` part satisfies `θ(p) = m·p`.
pub fn lie_normal_form(p: &NCPoly) -> LieForm {
    let mut defect = NCPoly::zero(p.rank());
    for d in p.degrees() {
        let part = p.homogeneous_part(d);
        if d == 0 {
            defect.add_scaled(&Scalar::one(), &part);
            continue;
        }
        let t = dynkin_theta(&part);
        let diff = &t - &part.scale(&Scalar::from_int(d as i64));
        defect.add_scaled(&Scalar::one(), &diff);
    }
    if !defect.is_zero() {
        return LieForm::NotLie(defect);
    }
    match lie_coords(p) {
        Ok(e) => LieForm::Lie(e),
        Err(_) => LieForm::NotLie(defect),
    }
}

/// A graded Lie algebra in which Lie words can be evaluated.
pub trait LieAlgebra {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn add_scaled(&self, acc: &mut Self::Elem, c: &Scalar, x: &Self::Elem);
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// The free associative algebra with the commutator bracket.
#[derive(Clone, Copy, Debug)]
pub struct FreeAssoc {
    pub rank: u8,
}

impl FreeAssoc {
    pub fn new(rank: u8) -> Self {
        FreeAssoc { rank }
    }
}

impl LieAlgebra for FreeAssoc {
    type Elem = NCPoly;
    fn zero(&self) -> NCPoly {
        NCPoly::zero(self.rank)
    }
    fn add_scaled(&self, acc: &mut NCPoly, c: &Scalar, x: &NCPoly) {
        acc.add_scaled(c, x);
    }
    fn bracket(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.commutator(b)
    }
}

/// Splits `e ∈ 𝕃(a, b, t)` (letters 0, 1, 2) as `𝕃(a, b) ⋉ (t)`: the part
/// free of `t`, and the ideal part modulo its derived algebra, keyed by the
/// word `u` of the monomial `ad_{u1}…ad_{uk}(t)`.
pub fn lazard_split(e: &LieElement) -> Result<(LieElement, LinComb<Word>)> {
    if e.rank() != 3 {
        return Err(Error::WrongAlphabet {
            expected: 3,
            found: e.rank(),
        });
    }
    let outer: LinComb<Word> = e.coords().filter(|w| !w.contains(&2));
    let outer = LieElement {
        rank: 2,
        coords: outer,
    };
    let inner = e.coords().filter(|w| w.contains(&2));
    let inner = LieElement {
        rank: 3,
        coords: inner,
    }
    .to_ncpoly();
    let mut ideal = LinComb::new();
    for (w, c) in inner.terms().iter() {
        if let Some((&2, rest)) = w.split_last() {
            if !rest.contains(&2) {
                ideal.add_term(rest.to_vec(), c.clone());
            }
        }
    }
    Ok((outer, ideal))
}
