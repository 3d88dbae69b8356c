//! Braid words, the Artin action, strand operations, the pentagon braid,
//! Magnus expansions and Johnson-type classes on the Brunnian filtration.
//!
//! Conventions: `σ_i` crosses the strands at positions `i, i+1` with the left
//! strand passing over; strands are labelled by their starting position. The
//! Artin action is `σ_i: x_i ↦ x_i x_{i+1} x_i^{-1}, x_{i+1} ↦ x_i`, composed so
//! that `act(ab) = act(a)∘act(b)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dkho::{CombedLie, SubspaceCache, SubspaceSpec};
use crate::error::{Error, Result};
use crate::freelie::lie_coords;
use crate::lincomb::LinComb;
use crate::ncalg::{Letter, NCPoly, Word};
use crate::scalar::Scalar;

/// Generator index (1-based) and sign `±1`.
pub type Crossing = (u8, i8);

/// Largest Artin image (total letters) the exact word routines will build.
pub const ARTIN_WORD_LIMIT: usize = 1 << 20;

fn free_reduce(letters: &mut Vec<(u8, i8)>) {
    let mut out: Vec<(u8, i8)> = Vec::with_capacity(letters.len());
    for &(g, s) in letters.iter() {
        match out.last() {
            Some(&(h, t)) if h == g && t == -s => {
                out.pop();
            }
            _ => out.push((g, s)),
        }
    }
    *letters = out;
}

fn parse_letters(text: &str, lower: char, upper: char) -> Result<Vec<(u8, i8)>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "e" || tok == "1" {
            continue;
        }
        let mut chars = tok.chars();
        let head = chars.next().unwrap_or(' ');
        let sign = if head == lower {
            1
        } else if head == upper {
            -1
        } else {
            return Err(Error::Precondition(format!("bad letter `{}`", tok)));
        };
        let idx: u8 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad letter `{}`", tok)))?;
        out.push((idx, sign));
    }
    Ok(out)
}

fn write_letters(
    f: &mut fmt::Formatter<'_>,
    letters: &[(u8, i8)],
    lower: char,
    upper: char,
) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "e");
    }
    for (k, &(g, s)) in letters.iter().enumerate() {
        if k > 0 {
            write!(f, " ")?;
        }
        write!(f, "{}{}", if s > 0 { lower } else { upper }, g)?;
    }
    Ok(())
}

/// A word in the Artin generators of `B_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    n: u8,
    word: Vec<Crossing>,
    fixed: u8,
}

impl BraidWord {
    pub fn new(n: u8, word: Vec<Crossing>) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("braid on 0 strands".into()));
        }
        for &(i, s) in &word {
            if i == 0 || i >= n || (s != 1 && s != -1) {
                return Err(Error::IndexOutOfRange(format!(
                    "crossing ({}, {}) on {} strands",
                    i, s, n
                )));
            }
        }
        Ok(BraidWord { n, word, fixed: 0 })
    }

    pub fn identity(n: u8) -> Self {
        BraidWord {
            n,
            word: Vec::new(),
            fixed: 0,
        }
    }

    pub fn sigma(n: u8, i: u8, sign: i8) -> Result<Self> {
        Self::new(n, vec![(i, sign)])
    }

    /// The pure generator `A_{ij} = σ_{j-1}⋯σ_{i+1}σ_i²σ_{i+1}^{-1}⋯σ_{j-1}^{-1}`.
    pub fn pure_generator(n: u8, i: u8, j: u8) -> Result<Self> {
        if i == 0 || i >= j || j > n {
            return Err(Error::IndexOutOfRange(format!(
                "A_{}{} on {} strands",
                i, j, n
            )));
        }
        let mut w: Vec<Crossing> = (i + 1..j).rev().map(|k| (k, 1)).collect();
        w.push((i, 1));
        w.push((i, 1));
        w.extend((i + 1..j).map(|k| (k, -1)));
        Self::new(n, w)
    }

    /// Parses `"s1 s1 S2"` (capital letter = inverse, `e` = identity).
    pub fn parse(n: u8, text: &str) -> Result<Self> {
        Self::new(n, parse_letters(text, 's', 'S')?)
    }

    /// Marks strands `1..=m` as fixed.
    pub fn with_fixed(mut self, m: u8) -> Result<Self> {
        if m > self.n {
            return Err(Error::IndexOutOfRange(format!(
                "{} fixed strands of {}",
                m, self.n
            )));
        }
        self.fixed = m;
        Ok(self)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn word(&self) -> &[Crossing] {
        &self.word
    }

    pub fn fixed(&self) -> u8 {
        self.fixed
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn reduced(&self) -> Self {
        let mut w = self.word.clone();
        free_reduce(&mut w);
        BraidWord {
            n: self.n,
            word: w,
            fixed: self.fixed,
        }
    }

    /// Concatenation followed by free reduction.
    pub fn compose(&self, other: &BraidWord) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        let mut w = self.word.clone();
        w.extend_from_slice(&other.word);
        free_reduce(&mut w);
        Ok(BraidWord {
            n: self.n,
            word: w,
            fixed: self.fixed,
        })
    }

    /// `σ_i ↦ σ_i^{-1}`.
    pub fn mirror(&self) -> Self {
        BraidWord {
            n: self.n,
            word: self.word.iter().map(|&(i, s)| (i, -s)).collect(),
            fixed: self.fixed,
        }
    }

    pub fn inverse(&self) -> Self {
        let word = self.word.iter().rev().map(|&(i, s)| (i, -s)).collect();
        BraidWord {
            n: self.n,
            word,
            fixed: self.fixed,
        }
    }

    /// `perm[p]` is the final position (0-based) of the strand starting at `p`.
    pub fn permutation(&self) -> Vec<u8> {
        let mut at: Vec<u8> = (0..self.n).collect();
        for &(i, _) in &self.word {
            at.swap(i as usize - 1, i as usize);
        }
        let mut perm = vec![0u8; self.n as usize];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand as usize] = pos as u8;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation()
            .iter()
            .enumerate()
            .all(|(p, &q)| p == q as usize)
    }

    fn check_strand(&self, i: u8, max: u8) -> Result<()> {
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange(format!(
                "strand {} of {}",
                i, self.n
            )));
        }
        Ok(())
    }

    /// Removes the strand starting at position `i`.
    pub fn delete(&self, i: u8) -> Result<Self> {
        self.check_strand(i, self.n)?;
        if self.n == 1 {
            return Err(Error::IndexOutOfRange(
                "cannot delete the only strand".into(),
            ));
        }
        let mut pos = i - 1;
        let mut w = Vec::with_capacity(self.word.len());
        for &(k, s) in &self.word {
            if k - 1 == pos {
                pos = k;
            } else if k == pos {
                pos = k - 1;
            } else if k < pos {
                w.push((k, s));
            } else {
                w.push((k - 1, s));
            }
        }
        let fixed = if i <= self.fixed {
            self.fixed - 1
        } else {
            self.fixed
        };
        Ok(BraidWord {
            n: self.n - 1,
            word: w,
            fixed,
        })
    }

    /// Inserts a strand at starting position `i` that passes behind every crossing.
    pub fn insert_trivial(&self, i: u8) -> Result<Self> {
        self.check_strand(i, self.n + 1)?;
        let q = i - 1;
        let mut w = Vec::with_capacity(self.word.len());
        for &(k, s) in &self.word {
            if k == q {
                w.push((k, 1));
                w.push((k + 1, s));
                w.push((k, -1));
            } else if k < q {
                w.push((k, s));
            } else {
                w.push((k + 1, s));
            }
        }
        let fixed = if i <= self.fixed {
            self.fixed + 1
        } else {
            self.fixed
        };
        Ok(BraidWord {
            n: self.n + 1,
            word: w,
            fixed,
        })
    }

    /// Replaces the strand starting at `i` by two parallel strands.
    pub fn double(&self, i: u8) -> Result<Self> {
        self.check_strand(i, self.n)?;
        let mut d = i - 1;
        let mut w = Vec::with_capacity(2 * self.word.len());
        for &(k, s) in &self.word {
            if k - 1 == d {
                w.push((d + 2, s));
                w.push((d + 1, s));
                d += 1;
            } else if k == d {
                w.push((d, s));
                w.push((d + 1, s));
                d -= 1;
            } else if k < d {
                w.push((k, s));
            } else {
                w.push((k + 1, s));
            }
        }
        let fixed = if i <= self.fixed {
            self.fixed + 1
        } else {
            self.fixed
        };
        Ok(BraidWord {
            n: self.n + 1,
            word: w,
            fixed,
        })
    }

    fn require_pure(&self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            Err(Error::NotPure)
        }
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.n)?;
        write_letters(f, &self.word, 's', 'S')?;
        write!(f, "]")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.word, 's', 'S')
    }
}

// ---------------------------------------------------------------------------
// Garside normal form

type Perm = Vec<u8>;

fn perm_inverse(p: &[u8]) -> Perm {
    let mut inv = vec![0u8; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v as usize] = i as u8;
    }
    inv
}

fn delta_perm(n: usize) -> Perm {
    (0..n).map(|p| (n - 1 - p) as u8).collect()
}

fn tau(p: &[u8]) -> Perm {
    let n = p.len();
    (0..n).map(|q| (n - 1) as u8 - p[n - 1 - q]).collect()
}

/// `A σ_i` is no longer simple (`inv` is the inverse permutation of `A`).
fn finishes_with(inv: &[u8], i: usize) -> bool {
    inv[i] > inv[i + 1]
}

fn starts_with(b: &[u8], i: usize) -> bool {
    b[i] > b[i + 1]
}

fn normalize_pair(a: &mut Perm, b: &mut Perm) -> bool {
    let n = a.len();
    let mut changed = false;
    loop {
        let inv = perm_inverse(a);
        let found =
            (0..n.saturating_sub(1)).find(|&i| starts_with(b, i) && !finishes_with(&inv, i));
        let Some(i) = found else { break };
        // a ← a σ_i, b ← σ_i^{-1} b
        let (p, q) = (inv[i] as usize, inv[i + 1] as usize);
        a[p] = (i + 1) as u8;
        a[q] = i as u8;
        b.swap(i, i + 1);
        changed = true;
    }
    changed
}

/// Left normal form `Δ^k A_1 ⋯ A_r` (each `A_j` a permutation braid, given by
/// its permutation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarsideForm {
    pub delta_power: i64,
    pub factors: Vec<Vec<u8>>,
}

pub fn garside_normal_form(b: &BraidWord) -> GarsideForm {
    let n = b.n as usize;
    let delta = delta_perm(n);
    let ident: Perm = (0..n as u8).collect();
    let mut k: i64 = 0;
    let mut fs: Vec<Perm> = Vec::new();
    for &(i, s) in &b.word {
        let i = i as usize - 1;
        if s > 0 {
            let mut p = ident.clone();
            p.swap(i, i + 1);
            fs.push(p);
        } else {
            for f in fs.iter_mut() {
                *f = tau(f);
            }
            k -= 1;
            // Δσ_i^{-1} = s_i ∘ δ
            let p: Perm = delta
                .iter()
                .map(|&v| {
                    if v as usize == i {
                        (i + 1) as u8
                    } else if v as usize == i + 1 {
                        i as u8
                    } else {
                        v
                    }
                })
                .collect();
            fs.push(p);
        }
    }
    loop {
        let mut changed = false;
        for j in 0..fs.len().saturating_sub(1) {
            let (left, right) = fs.split_at_mut(j + 1);
            if normalize_pair(&mut left[j], &mut right[0]) {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut factors = Vec::new();
    for f in fs {
        if f == delta && factors.is_empty() {
            k += 1;
        } else if f != ident {
            factors.push(f);
        }
    }
    GarsideForm {
        delta_power: k,
        factors,
    }
}

pub fn is_trivial(b: &BraidWord) -> bool {
    let g = garside_normal_form(b);
    g.delta_power == 0 && g.factors.is_empty()
}

pub fn braid_eq(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    Ok(is_trivial(&a.compose(&b.inverse())?))
}

/// Pure-braid triviality; errors on non-pure input.
pub fn is_trivial_pure(b: &BraidWord) -> Result<bool> {
    b.require_pure()?;
    Ok(is_trivial(b))
}

/// Deletes each strand of `moving` (default: the non-fixed strands) and tests triviality.
pub fn is_brunnian(b: &BraidWord, moving: Option<&[u8]>) -> Result<bool> {
    b.require_pure()?;
    let default: Vec<u8> = (b.fixed + 1..=b.n).collect();
    for &i in moving.unwrap_or(&default) {
        if !is_trivial(&b.delete(i)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Free groups and the Artin action

/// A freely reduced word in `x_1, …, x_r` (generator indices are 1-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeGroupWord {
    rank: u8,
    letters: Vec<(u8, i8)>,
}

impl FreeGroupWord {
    pub fn new(rank: u8, mut letters: Vec<(u8, i8)>) -> Result<Self> {
        for &(g, s) in &letters {
            if g == 0 || g > rank || (s != 1 && s != -1) {
                return Err(Error::IndexOutOfRange(format!(
                    "letter ({}, {}) of F_{}",
                    g, s, rank
                )));
            }
        }
        free_reduce(&mut letters);
        Ok(FreeGroupWord { rank, letters })
    }

    pub fn identity(rank: u8) -> Self {
        FreeGroupWord {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: u8, i: u8) -> Result<Self> {
        Self::new(rank, vec![(i, 1)])
    }

    /// Parses `"x1 X2"` (capital letter = inverse).
    pub fn parse(rank: u8, text: &str) -> Result<Self> {
        Self::new(rank, parse_letters(text, 'x', 'X')?)
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn letters(&self) -> &[(u8, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeGroupWord) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::AlphabetMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut l = self.letters.clone();
        l.extend_from_slice(&other.letters);
        free_reduce(&mut l);
        Ok(FreeGroupWord {
            rank: self.rank,
            letters: l,
        })
    }

    pub fn inverse(&self) -> Self {
        FreeGroupWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&(g, s)| (g, -s)).collect(),
        }
    }

    pub fn commutator(&self, other: &FreeGroupWord) -> Result<Self> {
        self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())
    }

    /// `x_i ↦ 1`, later generators shift down.
    pub fn delete_generator(&self, i: u8) -> Result<Self> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange(format!(
                "generator {} of F_{}",
                i, self.rank
            )));
        }
        let letters = self
            .letters
            .iter()
            .filter(|l| l.0 != i)
            .map(|&(g, s)| (if g > i { g - 1 } else { g }, s))
            .collect();
        Self::new(self.rank - 1, letters)
    }

    /// Substitutes the images of the generators.
    pub fn substitute(&self, images: &[FreeGroupWord]) -> Result<Self> {
        if images.len() != self.rank as usize {
            return Err(Error::ArityMismatch {
                expected: self.rank as usize,
                found: images.len(),
            });
        }
        let rank = images.first().map(|w| w.rank).unwrap_or(0);
        let mut out: Vec<(u8, i8)> = Vec::new();
        for &(g, s) in &self.letters {
            let img = &images[g as usize - 1];
            if img.rank != rank {
                return Err(Error::AlphabetMismatch {
                    left: rank,
                    right: img.rank,
                });
            }
            if s > 0 {
                out.extend_from_slice(&img.letters);
            } else {
                out.extend(img.letters.iter().rev().map(|&(h, t)| (h, -t)));
            }
            if out.len() > ARTIN_WORD_LIMIT {
                return Err(Error::Precondition(format!(
                    "word exceeds {} letters",
                    ARTIN_WORD_LIMIT
                )));
            }
        }
        free_reduce(&mut out);
        Ok(FreeGroupWord { rank, letters: out })
    }
}

impl fmt::Debug for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.rank)?;
        write_letters(f, &self.letters, 'x', 'X')?;
        write!(f, "]")
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters, 'x', 'X')
    }
}

/// Images of `x_1, …, x_n` under the Artin action of `b`.
pub fn artin_images(b: &BraidWord) -> Result<Vec<FreeGroupWord>> {
    let n = b.n;
    let mut imgs: Vec<FreeGroupWord> = (1..=n)
        .map(|i| FreeGroupWord {
            rank: n,
            letters: vec![(i, 1)],
        })
        .collect();
    for &(i, s) in &b.word {
        let (a, c) = (imgs[i as usize - 1].clone(), imgs[i as usize].clone());
        if s > 0 {
            imgs[i as usize - 1] = a.mul(&c)?.mul(&a.inverse())?;
            imgs[i as usize] = a;
        } else {
            imgs[i as usize - 1] = c.clone();
            imgs[i as usize] = c.inverse().mul(&a)?.mul(&c)?;
        }
        if imgs.iter().map(|w| w.len()).sum::<usize>() > ARTIN_WORD_LIMIT {
            return Err(Error::Precondition(format!(
                "Artin images exceed {} letters",
                ARTIN_WORD_LIMIT
            )));
        }
    }
    Ok(imgs)
}

pub fn artin_action(b: &BraidWord, w: &FreeGroupWord) -> Result<FreeGroupWord> {
    if w.rank != b.n {
        return Err(Error::StrandMismatch {
            left: b.n as usize,
            right: w.rank as usize,
        });
    }
    w.substitute(&artin_images(b)?)
}

fn check_fiber_precondition(b: &BraidWord) -> Result<()> {
    b.require_pure()?;
    if b.n < 2 {
        return Err(Error::Precondition("need at least two strands".into()));
    }
    if !is_trivial(&b.delete(b.n)?) {
        return Err(Error::Precondition(
            "deleting the last strand does not give the trivial braid".into(),
        ));
    }
    Ok(())
}

/// The element of the last-strand fiber `F_{n-1} = ⟨A_{1n}, …, A_{n-1,n}⟩`,
/// with `A_{in} ↦ x_i`. Read off from the mirror braid, whose action sends
/// `x_n` to `P x_n P^{-1}` with `P ≡ u^{-1}` modulo `x_n`.
pub fn comb_to_free(b: &BraidWord) -> Result<FreeGroupWord> {
    check_fiber_precondition(b)?;
    let n = b.n;
    let img = artin_images(&b.mirror())?.swap_remove(n as usize - 1);
    let l = &img.letters;
    let p = l.len() / 2;
    let conj_ok = l.len() % 2 == 1
        && l[p] == (n, 1)
        && (0..p).all(|k| l[k].0 == l[l.len() - 1 - k].0 && l[k].1 == -l[l.len() - 1 - k].1);
    if !conj_ok {
        return Err(Error::Unknown(format!(
            "Artin image of x_{} is not a conjugate of it",
            n
        )));
    }
    let prefix: Vec<(u8, i8)> = l[..p].iter().filter(|x| x.0 != n).copied().collect();
    Ok(FreeGroupWord::new(n - 1, prefix)?.inverse())
}

/// `x_i ↦ A_{i,n}`.
pub fn fiber_braid(u: &FreeGroupWord) -> Result<BraidWord> {
    let n = u.rank + 1;
    let mut out = BraidWord::identity(n);
    for &(g, s) in &u.letters {
        let a = BraidWord::pure_generator(n, g, n)?;
        out = out.compose(&if s > 0 { a } else { a.inverse() })?;
    }
    Ok(out)
}

/// `Pent(Φ) = Φ^{2,3,4}Φ^{1,23,4}Φ^{1,2,3}(Φ^{12,3,4})^{-1}(Φ^{1,2,34})^{-1}`
/// with the bracketing `((12)3)4`.
pub fn pent_braid(phi: &BraidWord) -> Result<BraidWord> {
    if phi.n != 3 {
        return Err(Error::StrandMismatch {
            left: 3,
            right: phi.n as usize,
        });
    }
    phi.require_pure()?;
    let factors = [
        phi.insert_trivial(1)?,
        phi.double(2)?,
        phi.insert_trivial(4)?,
        phi.double(1)?.inverse(),
        phi.double(3)?.inverse(),
    ];
    let mut out = BraidWord::identity(4);
    for f in &factors {
        out = out.compose(f)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Magnus expansion

/// `M(w)` truncated above degree `degree`, as a polynomial in `X_1, …, X_r`
/// (letter `i-1` stands for `X_i`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MagnusSeries {
    pub degree: usize,
    pub poly: NCPoly,
}

impl MagnusSeries {
    /// `M − 1`.
    pub fn reduced(&self) -> NCPoly {
        &self.poly - &NCPoly::one(self.poly.rank())
    }

    /// Lowest degree of `M − 1` (`None` if it vanishes up to the truncation).
    pub fn leading_degree(&self) -> Option<usize> {
        self.reduced().min_degree()
    }

    pub fn leading_term(&self) -> NCPoly {
        let r = self.reduced();
        match r.min_degree() {
            Some(d) => r.homogeneous_part(d),
            None => r,
        }
    }
}

/// Truncated product.
pub fn mul_trunc(a: &NCPoly, b: &NCPoly, degree: usize) -> NCPoly {
    let mut by_deg: Vec<Vec<(&Word, &Scalar)>> = vec![Vec::new(); degree + 1];
    for (w, c) in b.terms().iter() {
        if w.len() <= degree {
            by_deg[w.len()].push((w, c));
        }
    }
    let mut out: LinComb<Word> = LinComb::new();
    for (u, c) in a.terms().iter() {
        if u.len() > degree {
            continue;
        }
        for bucket in &by_deg[..=degree - u.len()] {
            for &(v, d) in bucket {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, c * d);
            }
        }
    }
    NCPoly::from_terms(a.rank(), out)
}

/// `(1 + X)^{-1} = Σ (−X)^k` for a letter.
fn letter_series(rank: u8, l: Letter, sign: i8, degree: usize) -> NCPoly {
    let mut p = NCPoly::one(rank);
    if sign > 0 {
        if degree >= 1 {
            p.add_term(vec![l], Scalar::one());
        }
    } else {
        for k in 1..=degree {
            p.add_term(vec![l; k], Scalar::sign(k));
        }
    }
    p
}

pub fn magnus(w: &FreeGroupWord, degree: usize) -> Result<MagnusSeries> {
    if degree == 0 {
        return Err(Error::DegreeTooLow { degree, min: 1 });
    }
    let mut p = NCPoly::one(w.rank);
    for &(g, s) in &w.letters {
        p = mul_trunc(&p, &letter_series(w.rank, g - 1, s, degree), degree);
    }
    Ok(MagnusSeries { degree, poly: p })
}

/// The Artin automorphism of `b` on the truncated Magnus algebra:
/// `M(b(x_i))` and `M(b(x_i)^{-1})`.
#[derive(Clone, Debug)]
pub struct MagnusAut {
    pub degree: usize,
    pub images: Vec<NCPoly>,
    pub inverses: Vec<NCPoly>,
}

impl MagnusAut {
    pub fn from_braid(b: &BraidWord, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeTooLow { degree, min: 1 });
        }
        let n = b.n;
        let mut images: Vec<NCPoly> = (0..n).map(|i| letter_series(n, i, 1, degree)).collect();
        let mut inverses: Vec<NCPoly> = (0..n).map(|i| letter_series(n, i, -1, degree)).collect();
        for &(i, s) in &b.word {
            let (k, l) = (i as usize - 1, i as usize);
            let (a, c, ai, ci) = (
                images[k].clone(),
                images[l].clone(),
                inverses[k].clone(),
                inverses[l].clone(),
            );
            if s > 0 {
                images[k] = mul_trunc(&mul_trunc(&a, &c, degree), &ai, degree);
                inverses[k] = mul_trunc(&mul_trunc(&a, &ci, degree), &ai, degree);
                images[l] = a;
                inverses[l] = ai;
            } else {
                images[k] = c.clone();
                inverses[k] = ci.clone();
                images[l] = mul_trunc(&mul_trunc(&ci, &a, degree), &c, degree);
                inverses[l] = mul_trunc(&mul_trunc(&ci, &ai, degree), &c, degree);
            }
        }
        Ok(MagnusAut {
            degree,
            images,
            inverses,
        })
    }

    /// `M(b(w))`.
    pub fn apply(&self, w: &FreeGroupWord) -> Result<NCPoly> {
        if w.rank as usize != self.images.len() {
            return Err(Error::StrandMismatch {
                left: self.images.len(),
                right: w.rank as usize,
            });
        }
        let mut p = NCPoly::one(w.rank);
        for &(g, s) in &w.letters {
            let f = if s > 0 {
                &self.images[g as usize - 1]
            } else {
                &self.inverses[g as usize - 1]
            };
            p = mul_trunc(&p, f, self.degree);
        }
        Ok(p)
    }
}

/// `M(comb_to_free(b))` computed on truncated series, without building words.
pub fn fiber_magnus(b: &BraidWord, degree: usize) -> Result<MagnusSeries> {
    check_fiber_precondition(b)?;
    if degree == 0 {
        return Err(Error::DegreeTooLow { degree, min: 1 });
    }
    let n = b.n;
    let last = n - 1;
    // terms `X_n w` of `M(P x_n P^{-1})` give `M(P^{-1})` modulo `X_n`
    let aut = MagnusAut::from_braid(&b.mirror(), degree + 1)?;
    let mut a: LinComb<Word> = LinComb::new();
    for (w, c) in aut.images[last as usize].terms().iter() {
        if let Some((&l, tail)) = w.split_first() {
            if l == last && !tail.contains(&last) {
                a.add_term(tail.to_vec(), c.clone());
            }
        }
    }
    Ok(MagnusSeries {
        degree,
        poly: NCPoly::from_terms(n - 1, a),
    })
}

/// `X_i ↦ 0` (letters above `i` shift down).
pub fn magnus_delete(p: &NCPoly, i: u8) -> Result<NCPoly> {
    if i == 0 || i > p.rank() {
        return Err(Error::IndexOutOfRange(format!(
            "generator {} of rank {}",
            i,
            p.rank()
        )));
    }
    let l = i - 1;
    let terms = p
        .terms()
        .filter(|w| !w.contains(&l))
        .map_keys(|w| w.iter().map(|&a| if a > l { a - 1 } else { a }).collect());
    Ok(NCPoly::from_terms(p.rank() - 1, terms))
}

/// Lowest-degree report for `M(Pent(Φ)) − 1` on the last-strand fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NTrivialityReport {
    pub truncation: usize,
    /// `None` means no nonzero term up to the truncation (`≥ D+1`).
    pub leading_degree: Option<usize>,
    pub leading_term: NCPoly,
    /// `φ_k ∈ ∩ ker pr^i` over the moving fiber letters
    pub in_deletion_kernels: bool,
    /// the leading term is a Lie element
    pub lie: bool,
    /// under `X_i ↦ t_{i4}` the leading term lies in the Brunnian subalgebra
    pub in_brun: bool,
}

/// The subspace of `t_4` matching `fixed` fixed strands.
fn brun_spec(fixed: u8) -> SubspaceSpec {
    if fixed == 0 {
        SubspaceSpec::Brun(4)
    } else {
        SubspaceSpec::BrunMixed(fixed, 4 - fixed)
    }
}

pub fn n_triviality_report(
    phi: &BraidWord,
    degree: usize,
    fixed: u8,
    cache: &mut SubspaceCache,
) -> Result<NTrivialityReport> {
    if fixed > 3 {
        return Err(Error::IndexOutOfRange(format!(
            "{} fixed strands of 4",
            fixed
        )));
    }
    let pent = pent_braid(phi)?;
    let m = fiber_magnus(&pent, degree)?;
    let lead = m.leading_term();
    let k = m.leading_degree();
    let mut in_kernels = true;
    for i in fixed + 1..=3 {
        if !magnus_delete(&lead, i)?.is_zero() {
            in_kernels = false;
        }
    }
    let lie = lie_coords(&lead).is_ok();
    let in_brun = match k {
        None => true,
        Some(d) if lie => {
            let e = CombedLie::from_components(
                4,
                vec![NCPoly::zero(1), NCPoly::zero(2), lead.clone()],
            )?;
            let sub = cache.subspace(&brun_spec(fixed), d)?;
            let coords = cache.basis(4, d).coords(&e);
            sub.contains_coords(&coords)
        }
        Some(_) => false,
    };
    Ok(NTrivialityReport {
        truncation: degree,
        leading_degree: k,
        leading_term: lead,
        in_deletion_kernels: in_kernels,
        lie,
        in_brun,
    })
}

// ---------------------------------------------------------------------------
// Johnson-type classes on the Brunnian filtration

/// `M([g,a]) − 1 = M(g(a)) M(a)^{-1} − 1`, truncated.
pub fn johnson_series(g: &BraidWord, a: &FreeGroupWord, degree: usize) -> Result<NCPoly> {
    let aut = MagnusAut::from_braid(g, degree)?;
    let ga = aut.apply(a)?;
    let ainv = magnus(&a.inverse(), degree)?.poly;
    Ok(&mul_trunc(&ga, &ainv, degree) - &NCPoly::one(a.rank))
}

/// Truncated filtration level of a group element given `M − 1`:
/// `0` unless every moving deletion vanishes; otherwise the largest `j` with
/// no terms below degree `j·s` (`s` = number of moving letters).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub level: usize,
    /// `M − 1` vanishes up to the truncation, so the level is only a lower bound
    pub saturated: bool,
}

pub fn brunnian_level(reduced: &NCPoly, moving: &[u8], degree: usize) -> Result<LevelReport> {
    let s = moving.len().max(1);
    let Some(low) = reduced.min_degree() else {
        return Ok(LevelReport {
            level: degree / s,
            saturated: true,
        });
    };
    for &i in moving {
        if !magnus_delete(reduced, i)?.is_zero() {
            return Ok(LevelReport {
                level: 0,
                saturated: false,
            });
        }
    }
    Ok(LevelReport {
        level: (low / s).max(1),
        saturated: false,
    })
}

/// The class of `[g, a]`: `M([g,a]) − 1` restricted to degrees `[e, 2e)`,
/// where `e` is its lowest degree, and the truncated filtration level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonClass {
    pub leading_degree: Option<usize>,
    pub class: NCPoly,
    pub level: LevelReport,
}

fn window(p: &NCPoly, lo: usize, hi: usize) -> NCPoly {
    NCPoly::from_terms(
        p.rank(),
        p.terms().filter(|w| w.len() >= lo && w.len() < hi),
    )
}

pub fn johnson(
    g: &BraidWord,
    a: &FreeGroupWord,
    moving: &[u8],
    degree: usize,
) -> Result<JohnsonClass> {
    g.require_pure()?;
    let s = johnson_series(g, a, degree)?;
    let e = s.min_degree();
    let class = match e {
        Some(e) => window(&s, e, 2 * e),
        None => s.clone(),
    };
    Ok(JohnsonClass {
        leading_degree: e,
        class,
        level: brunnian_level(&s, moving, degree)?,
    })
}

fn conj(a: &FreeGroupWord, p: &NCPoly, degree: usize) -> Result<NCPoly> {
    let m = magnus(a, degree)?.poly;
    let mi = magnus(&a.inverse(), degree)?.poly;
    Ok(mul_trunc(&mul_trunc(&m, p, degree), &mi, degree))
}

/// `d_0(ab) − d_0(a) − {}^a d_0(b)` on degrees below `e_a + e_b`.
pub fn cocycle_defect(
    g: &BraidWord,
    a: &FreeGroupWord,
    b: &FreeGroupWord,
    degree: usize,
) -> Result<NCPoly> {
    let da = johnson_series(g, a, degree)?;
    let db = johnson_series(g, b, degree)?;
    let dab = johnson_series(g, &a.mul(b)?, degree)?;
    let (Some(ea), Some(eb)) = (da.min_degree(), db.min_degree()) else {
        return Ok(&(&dab - &da) - &conj(a, &db, degree)?);
    };
    let full = &(&dab - &da) - &conj(a, &db, degree)?;
    Ok(window(&full, 0, ea + eb))
}

/// `d_1({}^a b) − [d_0(a), {}^a b] − {}^a d_1(b)` on the degrees where the
/// linearization is exact.
pub fn compatibility_defect(
    g: &BraidWord,
    a: &FreeGroupWord,
    b: &FreeGroupWord,
    degree: usize,
) -> Result<NCPoly> {
    let ab = a.mul(b)?.mul(&a.inverse())?;
    let da = johnson_series(g, a, degree)?;
    let db = johnson_series(g, b, degree)?;
    let dab = johnson_series(g, &ab, degree)?;
    let c = magnus(&ab, degree)?.reduced();
    let lhs = &(&dab - &conj(a, &db, degree)?)
        - &(&mul_trunc(&da, &c, degree) - &mul_trunc(&c, &da, degree));
    let (ea, eb, ec) = match (da.min_degree(), db.min_degree(), c.min_degree()) {
        (Some(x), Some(y), Some(z)) => (x, y, z),
        _ => return Ok(lhs),
    };
    Ok(window(&lhs, 0, (ea + eb).min(ea + ec + ea.min(ec))))
}

/// Memberships of `g` in `G^0_m` and `G^1_m`, decided by the truncated level
/// oracle on the generators of `K_0` and on sampled elements of `K_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationMembership {
    pub g0: bool,
    pub g1: bool,
}

impl FiltrationMembership {
    /// `G_m = G^0_m ∩ G^1_m`
    pub fn g(&self) -> bool {
        self.g0 && self.g1
    }

    /// `G^1_m ≤ G^0_m` on this sample.
    pub fn consistent(&self) -> bool {
        !self.g1 || self.g0
    }
}

pub fn filtration_memberships(
    g: &BraidWord,
    m: usize,
    moving: &[u8],
    k1_samples: &[FreeGroupWord],
    degree: usize,
) -> Result<FiltrationMembership> {
    g.require_pure()?;
    let at_least = |a: &FreeGroupWord, j: usize| -> Result<bool> {
        let lv = brunnian_level(&johnson_series(g, a, degree)?, moving, degree)?;
        Ok(lv.level >= j)
    };
    let mut g0 = true;
    for i in 1..=g.n {
        if !at_least(&FreeGroupWord::generator(g.n, i)?, m)? {
            g0 = false;
        }
    }
    let mut g1 = true;
    for b in k1_samples {
        if !at_least(b, m + 1)? {
            g1 = false;
        }
    }
    Ok(FiltrationMembership { g0, g1 })
}

/// A degree-`m` derivation of the eg-Lie algebra with `L_+` free on `rank`
/// generators, stored as `d_0` on coset representatives of `L_0` and `d_1`
/// on the generators of `L_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgDerivation {
    pub degree: usize,
    pub rank: u8,
    pub d0: BTreeMap<FreeGroupWord, NCPoly>,
    pub d1: Vec<NCPoly>,
}

impl EgDerivation {
    pub fn new(
        degree: usize,
        rank: u8,
        d0: BTreeMap<FreeGroupWord, NCPoly>,
        d1: Vec<NCPoly>,
    ) -> Result<Self> {
        if d1.len() != rank as usize {
            return Err(Error::ArityMismatch {
                expected: rank as usize,
                found: d1.len(),
            });
        }
        for p in &d1 {
            if p.rank() != rank {
                return Err(Error::WrongAlphabet {
                    expected: rank,
                    found: p.rank(),
                });
            }
            if !p.is_zero() && p.homogeneous_degree() != Some(degree + 1) {
                return Err(Error::NotHomogeneous);
            }
        }
        for p in d0.values() {
            if p.rank() != rank {
                return Err(Error::WrongAlphabet {
                    expected: rank,
                    found: p.rank(),
                });
            }
            if !p.is_zero() && p.homogeneous_degree() != Some(degree) {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(EgDerivation {
            degree,
            rank,
            d0,
            d1,
        })
    }

    /// `d_i` on `L_i`: the derivation extending `d_1`.
    pub fn extend(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(self.rank);
        for (w, c) in p.terms().iter() {
            for (k, &l) in w.iter().enumerate() {
                let pre = NCPoly::monomial(self.rank, w[..k].to_vec(), c.clone());
                let post = NCPoly::monomial(self.rank, w[k + 1..].to_vec(), Scalar::one());
                out = &out + &(&(&pre * &self.d1[l as usize]) * &post);
            }
        }
        out
    }

    fn d0_at(&self, a: &FreeGroupWord) -> NCPoly {
        self.d0
            .get(a)
            .cloned()
            .unwrap_or_else(|| NCPoly::zero(self.rank))
    }

    /// `[d,d']_0(a) = d(d'_0 a) − d'(d_0 a) − [d_0 a, d'_0 a]`,
    /// `[d,d']_1(a) = d(d'_1 a) − d'(d_1 a)`.
    pub fn bracket(&self, other: &EgDerivation) -> Result<EgDerivation> {
        if self.rank != other.rank {
            return Err(Error::AlphabetMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut keys: Vec<&FreeGroupWord> = self.d0.keys().collect();
        keys.extend(other.d0.keys());
        keys.sort();
        keys.dedup();
        let mut d0 = BTreeMap::new();
        for a in keys {
            let (x, y) = (self.d0_at(a), other.d0_at(a));
            let v = &(&self.extend(&y) - &other.extend(&x)) - &x.commutator(&y);
            d0.insert(a.clone(), v);
        }
        let d1 = self
            .d1
            .iter()
            .zip(&other.d1)
            .map(|(x, y)| &self.extend(y) - &other.extend(x))
            .collect();
        Ok(EgDerivation {
            degree: self.degree + other.degree,
            rank: self.rank,
            d0,
            d1,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.d0.values().all(|p| p.is_zero()) && self.d1.iter().all(|p| p.is_zero())
    }

    pub fn sub(&self, other: &EgDerivation) -> EgDerivation {
        let mut d0 = self.d0.clone();
        for (a, p) in &other.d0 {
            let cur = d0.remove(a).unwrap_or_else(|| NCPoly::zero(self.rank));
            d0.insert(a.clone(), &cur - p);
        }
        let d1 = self.d1.iter().zip(&other.d1).map(|(x, y)| x - y).collect();
        EgDerivation {
            degree: self.degree,
            rank: self.rank,
            d0,
            d1,
        }
    }

    pub fn add(&self, other: &EgDerivation) -> EgDerivation {
        let neg = EgDerivation {
            degree: other.degree,
            rank: other.rank,
            d0: other.d0.iter().map(|(a, p)| (a.clone(), -p)).collect(),
            d1: other.d1.iter().map(|p| -p).collect(),
        };
        self.sub(&neg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn b(n: u8, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    fn f(r: u8, s: &str) -> FreeGroupWord {
        FreeGroupWord::parse(r, s).unwrap()
    }

    #[test]
    fn braid_ops_examples() {
        assert!(b(2, "s1").compose(&b(2, "S1")).unwrap().is_empty());
        assert!(b(2, "s1 s1").is_pure());
        assert_eq!(b(3, "s1 s2").inverse(), b(3, "S2 S1"));
        assert_eq!(b(3, "s1 S2").to_string(), "s1 S2");
        assert!(BraidWord::parse(3, "s3").is_err());
        assert!(b(2, "s1").compose(&b(3, "s1")).is_err());
    }

    #[test]
    fn artin_examples() {
        assert_eq!(
            artin_action(&b(2, "s1"), &f(2, "x1")).unwrap(),
            f(2, "x1 x2 X1")
        );
        let w = f(3, "x1 X3 x2");
        assert_eq!(artin_action(&BraidWord::identity(3), &w).unwrap(), w);
        assert_eq!(
            artin_action(&b(2, "s1 s1"), &f(2, "x1 x2")).unwrap(),
            f(2, "x1 x2")
        );
    }

    #[test]
    fn strand_examples() {
        assert_eq!(
            BraidWord::identity(3).delete(2).unwrap(),
            BraidWord::identity(2)
        );
        assert!(b(3, "s2 s2").delete(3).unwrap().is_empty());
        let d = b(2, "s1 s1").double(1).unwrap();
        assert_eq!(d, b(3, "s2 s1 s1 s2"));
        assert_eq!(d.delete(1).unwrap(), b(2, "s1 s1"));
        let x = b(3, "s1 S2 s1 s1 s2");
        assert!(braid_eq(&x.insert_trivial(2).unwrap().delete(2).unwrap(), &x).unwrap());
        assert!(b(3, "s2 s2").delete(4).is_err());
    }

    #[test]
    fn garside_decides_relations() {
        assert!(is_trivial(&b(3, "s1 s2 s1 S2 S1 S2")));
        assert!(is_trivial(&b(4, "s1 s3 S1 S3")));
        assert!(!is_trivial(&b(3, "s1 s2 S1 S2")));
        assert!(!is_trivial(&b(2, "s1 s1")));
        let full_twist = b(3, "s1 s2 s1 s1 s2 s1");
        assert_eq!(garside_normal_form(&full_twist).delta_power, 2);
        assert!(garside_normal_form(&full_twist).factors.is_empty());
    }

    #[test]
    fn pent_examples() {
        let id = pent_braid(&BraidWord::identity(3)).unwrap();
        assert!(is_trivial(&id));
        let phi = b(3, "s1 s1");
        let p = pent_braid(&phi).unwrap();
        assert!(p.is_pure());
        // deleting a strand of `σ1²` is not trivial, and neither is Pent(σ1²)
        assert!(!is_brunnian(&p, None).unwrap());
        assert!(is_trivial(&p.delete(1).unwrap()));
        assert!(!is_trivial(&p.delete(4).unwrap()));
        let a12 = BraidWord::pure_generator(3, 1, 2).unwrap();
        let a23 = BraidWord::pure_generator(3, 2, 3).unwrap();
        let c = a12
            .compose(&a23)
            .unwrap()
            .compose(&a12.inverse())
            .unwrap()
            .compose(&a23.inverse())
            .unwrap();
        assert!(is_brunnian(&pent_braid(&c).unwrap(), None).unwrap());
        assert!(pent_braid(&b(3, "s1")).is_err());
    }

    #[test]
    fn comb_examples() {
        assert!(comb_to_free(&BraidWord::identity(3)).unwrap().is_identity());
        assert_eq!(comb_to_free(&b(2, "s1 s1")).unwrap(), f(1, "x1"));
        for n in 2..=5u8 {
            for i in 1..n {
                let a = BraidWord::pure_generator(n, i, n).unwrap();
                assert_eq!(
                    comb_to_free(&a).unwrap(),
                    FreeGroupWord::generator(n - 1, i).unwrap()
                );
            }
        }
        assert!(comb_to_free(&b(3, "s1 s1")).is_err());
    }

    #[test]
    fn magnus_examples() {
        let m = magnus(&f(2, "x1"), 3).unwrap();
        assert_eq!(m.poly, &NCPoly::one(2) + &NCPoly::letter(2, 0));
        let m = magnus(&f(1, "X1"), 3).unwrap();
        let expect = NCPoly::try_from_terms(
            1,
            [
                (vec![], Scalar::one()),
                (vec![0], Scalar::from_int(-1)),
                (vec![0, 0], Scalar::one()),
                (vec![0, 0, 0], Scalar::from_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(m.poly, expect);
        let m = magnus(&f(2, "x1 x2 X1 X2"), 2).unwrap();
        assert_eq!(
            m.reduced(),
            NCPoly::letter(2, 0).commutator(&NCPoly::letter(2, 1))
        );
        assert!(magnus(&f(2, "x1"), 0).is_err());
    }

    #[test]
    fn n_triviality_examples() {
        let mut cache = SubspaceCache::new();
        let r = n_triviality_report(&BraidWord::identity(3), 5, 0, &mut cache).unwrap();
        assert_eq!(r.leading_degree, None);
        assert!(n_triviality_report(&b(3, "s1 s1"), 4, 0, &mut cache).is_err());
        let a12 = BraidWord::pure_generator(3, 1, 2).unwrap();
        let a23 = BraidWord::pure_generator(3, 2, 3).unwrap();
        let c = a12
            .compose(&a23)
            .unwrap()
            .compose(&a12.inverse())
            .unwrap()
            .compose(&a23.inverse())
            .unwrap();
        let r = n_triviality_report(&c, 5, 0, &mut cache).unwrap();
        assert_eq!(r.leading_degree, Some(4));
        assert!(r.in_deletion_kernels && r.lie && r.in_brun);
    }

    #[test]
    fn johnson_examples() {
        let a = f(3, "x1 X2");
        let j = johnson(&BraidWord::identity(3), &a, &[1, 2, 3], 4).unwrap();
        assert_eq!(j.leading_degree, None);
        assert!(j.class.is_zero());
        let g = sample_commutator();
        let (x, y) = (f(3, "x1 x3"), f(3, "X2 x1"));
        assert!(cocycle_defect(&g, &x, &y, 6).unwrap().is_zero());
        let k1 = f(3, "x1 x2 X1 X2").commutator(&f(3, "x3")).unwrap();
        assert!(compatibility_defect(&g, &x, &k1, 7).unwrap().is_zero());
    }

    fn sample_commutator() -> BraidWord {
        let a12 = BraidWord::pure_generator(3, 1, 2).unwrap();
        let a23 = BraidWord::pure_generator(3, 2, 3).unwrap();
        a12.compose(&a23)
            .unwrap()
            .compose(&a12.inverse())
            .unwrap()
            .compose(&a23.inverse())
            .unwrap()
    }

    #[test]
    fn eg_bracket_antisymmetry() {
        let x = NCPoly::letter(2, 0);
        let y = NCPoly::letter(2, 1);
        let xy = x.commutator(&y);
        let mut d0 = BTreeMap::new();
        d0.insert(f(2, "x1"), xy.clone());
        let d = EgDerivation::new(2, 2, d0, vec![x.commutator(&xy), y.commutator(&xy)]).unwrap();
        assert!(d.bracket(&d).unwrap().is_zero());
        let mut e0 = BTreeMap::new();
        e0.insert(f(2, "x1"), xy.clone());
        e0.insert(f(2, "x2"), xy.scale(&Scalar::from_int(3)));
        let e = EgDerivation::new(2, 2, e0, vec![y.commutator(&xy), NCPoly::zero(2)]).unwrap();
        assert!(d
            .bracket(&e)
            .unwrap()
            .add(&e.bracket(&d).unwrap())
            .is_zero());
        assert!(EgDerivation::new(2, 2, BTreeMap::new(), vec![x.clone(), y.clone()]).is_err());
    }
}
