//! Double shuffle: the `Y`-alphabet maps, the stuffle coproduct and its
//! dual product on compositions, `dmr_0`, and the `𝒫`-space with `λ`.
//!
//! `Y`-words are stored as index sequences `[n1, …, nk]` for
//! `y_{n1}…y_{nk}`; the composition `(a1, …, ak)` corresponds to the word
//! `y_{ak}…y_{a1}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::dkho::{eval2, CombedLie};
use crate::error::{Error, Result};
use crate::freelie::LieElement;
use crate::lincomb::LinComb;
use crate::ncalg::{NCPoly, Word};
use crate::pentagon::{pent_phi, solve_linear, SolutionSpace};
use crate::scalar::Scalar;

pub type YWord = Vec<u8>;
pub type YPoly = LinComb<YWord>;
pub type YTensor = LinComb<(YWord, YWord)>;

/// A sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(pub Vec<u8>);

impl Composition {
    pub fn new(v: Vec<u8>) -> Result<Self> {
        if v.contains(&0) {
            return Err(Error::IndexOutOfRange(
                "composition entries are positive".into(),
            ));
        }
        Ok(Composition(v))
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_some_and(|&a| a > 1)
    }

    pub fn to_yword(&self) -> YWord {
        self.0.iter().rev().copied().collect()
    }

    pub fn from_yword(w: &[u8]) -> Self {
        Composition(w.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// All compositions of `w` (`2^{w-1}` of them; one empty one for `w = 0`).
    pub fn all(w: usize) -> Vec<Composition> {
        if w == 0 {
            return alloc::vec![Composition(Vec::new())];
        }
        let mut out = Vec::new();
        for first in 1..=w {
            for rest in Composition::all(w - first) {
                let mut v = alloc::vec![first as u8];
                v.extend(rest.0);
                out.push(Composition(v));
            }
        }
        out
    }
}

/// `y_n ↦ x0^{n-1}x1`
pub fn y_to_x(f: &YPoly) -> NCPoly {
    let mut p = NCPoly::zero(2);
    for (w, c) in f.iter() {
        p.add_term(yword_to_x(w), c.clone());
    }
    p
}

pub fn yword_to_x(w: &[u8]) -> Word {
    let mut out = Vec::new();
    for &n in w {
        out.extend(core::iter::repeat_n(0u8, n as usize - 1));
        out.push(1);
    }
    out
}

/// Splits a word ending in `x1` (or empty) into `y`-blocks.
pub fn x_to_yword(w: &[u8]) -> Option<YWord> {
    if w.last() == Some(&0) {
        return None;
    }
    let mut out = Vec::new();
    let mut run = 0u8;
    for &l in w {
        if l == 0 {
            run += 1;
        } else {
            out.push(run + 1);
            run = 0;
        }
    }
    Some(out)
}

/// `π_Y`: kills words ending in `x0`, rewrites the rest in `y`-blocks.
pub fn pi_y(p: &NCPoly) -> YPoly {
    let mut out = YPoly::new();
    for (w, c) in p.terms().iter() {
        if let Some(y) = x_to_yword(w) {
            out.add_term(y, c.clone());
        }
    }
    out
}

/// `corr`: `x0^{n-1}x1 ↦ ((-1)^{n-1}/n)·y_1^n`, zero on all other words.
pub fn corr(p: &NCPoly) -> YPoly {
    let mut out = YPoly::new();
    for (w, c) in p.terms().iter() {
        let n = w.len();
        if n >= 1 && w[n - 1] == 1 && w[..n - 1].iter().all(|&l| l == 0) {
            let k = Scalar::sign(n - 1) * Scalar::ratio(1, n as i64);
            out.add_term(alloc::vec![1u8; n], c * &k);
        }
    }
    out
}

/// `ψ_* = corr(ψ) + π_Y(ψ)`
pub fn psi_star(p: &NCPoly) -> YPoly {
    &corr(p) + &pi_y(p)
}

/// `y`-words of depth `r` picked up with `(-1)^r`: coordinates against the
/// signed functionals `l_𝐚`.
pub fn depth_sign(f: &YPoly) -> YPoly {
    let mut out = YPoly::new();
    for (w, c) in f.iter() {
        out.add_term(w.clone(), if w.len() % 2 == 1 { -c } else { c.clone() });
    }
    out
}

fn tensor_mul(s: &YTensor, t: &YTensor) -> YTensor {
    let mut out = YTensor::new();
    for ((a, b), c) in s.iter() {
        for ((u, v), d) in t.iter() {
            let mut x = a.clone();
            x.extend_from_slice(u);
            let mut y = b.clone();
            y.extend_from_slice(v);
            out.add_term((x, y), c * d);
        }
    }
    out
}

/// `Δ_*(y_n) = y_n⊗1 + 1⊗y_n + Σ_{n'+n''=n} y_{n'}⊗y_{n''}`
pub fn delta_star_letter(n: u8) -> YTensor {
    let mut t = YTensor::new();
    t.add_term((alloc::vec![n], Vec::new()), Scalar::one());
    t.add_term((Vec::new(), alloc::vec![n]), Scalar::one());
    for a in 1..n {
        t.add_term((alloc::vec![a], alloc::vec![n - a]), Scalar::one());
    }
    t
}

pub fn delta_star_word(w: &[u8]) -> YTensor {
    let mut acc = YTensor::term((Vec::new(), Vec::new()), Scalar::one());
    for &n in w {
        acc = tensor_mul(&acc, &delta_star_letter(n));
    }
    acc
}

/// The stuffle coproduct, extended as an algebra map.
pub fn stuffle_coproduct(f: &YPoly) -> YTensor {
    let mut out = YTensor::new();
    for (w, c) in f.iter() {
        out.add_scaled(c, &delta_star_word(w));
    }
    out
}

/// Which of the two inputs owns the final slot `N` of a surjection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StuffleClass {
    /// `σ^{-1}(N) = {k, k+l}`: the two last entries merge
    Merged,
    /// `σ^{-1}(N) = {k+l}`
    SecondLast,
    /// `σ^{-1}(N) = {k}`
    FirstLast,
}

/// One element of `Sh^{≤(k,l)}` applied to a pair of compositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StuffleSurjection {
    /// `σ(i)` for `i = 1..k+l`, 1-based values
    pub sigma: Vec<usize>,
    pub class: StuffleClass,
    /// `(c_1, …, c_N)`
    pub merged: Composition,
    /// `((c_1..c_j), (c_{j+1}..c_N))` with `{j, N} = {σ(k), σ(k+l)}`
    pub split: (Composition, Composition),
}

/// All surjections in `Sh^{≤(k,l)}` for `k = dp(a)`, `l = dp(b)`, both nonempty.
pub fn stuffle_surjections(a: &Composition, b: &Composition) -> Vec<StuffleSurjection> {
    let (k, l) = (a.depth(), b.depth());
    let mut out = Vec::new();
    if k == 0 || l == 0 {
        return out;
    }
    let mut sigma = alloc::vec![0usize; k + l];
    let mut entries: Vec<u8> = Vec::new();
    fn rec(
        a: &[u8],
        b: &[u8],
        i: usize,
        j: usize,
        sigma: &mut Vec<usize>,
        entries: &mut Vec<u8>,
        out: &mut Vec<StuffleSurjection>,
    ) {
        let (k, l) = (a.len(), b.len());
        if i == k && j == l {
            let n = entries.len();
            let (sk, skl) = (sigma[k - 1], sigma[k + l - 1]);
            let class = if sk == n && skl == n {
                StuffleClass::Merged
            } else if skl == n {
                StuffleClass::SecondLast
            } else {
                StuffleClass::FirstLast
            };
            let jj = if sk == n { skl } else { sk };
            let jj = if class == StuffleClass::Merged { n } else { jj };
            let merged = Composition(entries.clone());
            let split = (
                Composition(entries[..jj].to_vec()),
                Composition(entries[jj..].to_vec()),
            );
            out.push(StuffleSurjection {
                sigma: sigma.clone(),
                class,
                merged,
                split,
            });
            return;
        }
        let pos = entries.len() + 1;
        if i < k {
            sigma[i] = pos;
            entries.push(a[i]);
            rec(a, b, i + 1, j, sigma, entries, out);
            entries.pop();
        }
        if j < l {
            sigma[k + j] = pos;
            entries.push(b[j]);
            rec(a, b, i, j + 1, sigma, entries, out);
            entries.pop();
        }
        if i < k && j < l {
            sigma[i] = pos;
            sigma[k + j] = pos;
            entries.push(a[i] + b[j]);
            rec(a, b, i + 1, j + 1, sigma, entries, out);
            entries.pop();
        }
    }
    rec(&a.0, &b.0, 0, 0, &mut sigma, &mut entries, &mut out);
    out
}

/// `a ⧢_s b` in one variable: the sum of all merged compositions.
pub fn stuffle_product(a: &Composition, b: &Composition) -> LinComb<Composition> {
    if a.is_empty() {
        return LinComb::term(b.clone(), Scalar::one());
    }
    if b.is_empty() {
        return LinComb::term(a.clone(), Scalar::one());
    }
    stuffle_surjections(a, b)
        .into_iter()
        .map(|s| (s.merged, Scalar::one()))
        .collect()
}

/// The two-variable stuffle terms of one class, as split pairs.
pub fn stuffle_class_terms(
    a: &Composition,
    b: &Composition,
    class: StuffleClass,
) -> LinComb<(Composition, Composition)> {
    stuffle_surjections(a, b)
        .into_iter()
        .filter(|s| s.class == class)
        .map(|s| (s.split, Scalar::one()))
        .collect()
}

/// Failure of `Δ_*(ψ_*) = 1⊗ψ_* + ψ_*⊗1`; zero for members of `dmr_0`.
pub fn dmr0_defect(psi: &LieElement) -> Result<YTensor> {
    if psi.is_zero() {
        return Ok(YTensor::new());
    }
    let d = psi.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d < 3 {
        return Err(Error::DegreeTooLow { degree: d, min: 3 });
    }
    if psi.rank() != 2 {
        return Err(Error::WrongAlphabet {
            expected: 2,
            found: psi.rank(),
        });
    }
    let s = depth_sign(&psi_star(&psi.to_ncpoly()));
    let mut t = stuffle_coproduct(&s);
    for (w, c) in s.iter() {
        t.add_term((Vec::new(), w.clone()), -c);
        t.add_term((w.clone(), Vec::new()), -c);
    }
    Ok(t)
}

pub fn dmr0_membership(psi: &LieElement) -> Result<bool> {
    Ok(dmr0_defect(psi)?.is_zero())
}

pub fn dmr0_space(weight: usize) -> Result<SolutionSpace> {
    solve_linear(weight, dmr0_defect)
}

/// Letters of `k⟨z, x, y⟩`.
pub const Z: u8 = 0;
pub const X: u8 = 1;
pub const Y: u8 = 2;

/// `p_{a,b} = z^{a_k-1}x…z^{a_1-1}x z^{b_l-1}y…z^{b_1-1}y`
pub fn p_word(a: &Composition, b: &Composition) -> Word {
    let mut w = Vec::new();
    for &n in a.0.iter().rev() {
        w.extend(core::iter::repeat_n(Z, n as usize - 1));
        w.push(X);
    }
    for &n in b.0.iter().rev() {
        w.extend(core::iter::repeat_n(Z, n as usize - 1));
        w.push(Y);
    }
    w
}

/// `p: u⊗v ↦ ι_x(u)ι_y(v)`, with `𝒫` elements held as `Y`-tensors.
pub fn p_map(t: &YTensor) -> NCPoly {
    let mut out = NCPoly::zero(3);
    for ((u, v), c) in t.iter() {
        out.add_term(
            p_word(&Composition::from_yword(u), &Composition::from_yword(v)),
            c.clone(),
        );
    }
    out
}

/// Reads a word of `k⟨z, x, y⟩` as `p_{a,b}`, if it is one.
pub fn parse_p_word(w: &[u8]) -> Option<(YWord, YWord)> {
    if w.last() == Some(&Z) {
        return None;
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut run = 0u8;
    for &l in w {
        match l {
            Z => run += 1,
            X => {
                if !b.is_empty() {
                    return None;
                }
                a.push(run + 1);
                run = 0;
            }
            _ => {
                b.push(run + 1);
                run = 0;
            }
        }
    }
    Some((a, b))
}

/// `π: k⟨z, x, y⟩ → 𝒫`, the projection onto the `p_{a,b}` words, as a
/// `Y`-tensor through `p^{-1}`.
pub fn pi_p(q: &NCPoly) -> YTensor {
    let mut out = YTensor::new();
    for (w, c) in q.terms().iter() {
        if let Some(k) = parse_p_word(w) {
            out.add_term(k, c.clone());
        }
    }
    out
}

/// Coordinates against `l^{y,x}_{𝐚,𝐛}`: the `y`-part composition first, the
/// `x`-part second, with sign `(-1)^{k+l}`.
pub fn l_yx_coords(q: &NCPoly) -> YTensor {
    let mut out = YTensor::new();
    for ((a, b), c) in pi_p(q).iter() {
        let c = if (a.len() + b.len()) % 2 == 1 {
            -c
        } else {
            c.clone()
        };
        out.add_term((b.clone(), a.clone()), c);
    }
    out
}

/// `p^{-1}` on `𝒫`: inverse of `p_map` on the span of `p_{a,b}` words.
pub fn p_inverse(q: &NCPoly) -> Result<YTensor> {
    let t = pi_p(q);
    if p_map(&t) != *q {
        return Err(Error::NotInImage("polynomial outside 𝒫".into()));
    }
    Ok(t)
}

/// Strand relabeling sending `ker pr^2_4` to the last component:
/// `t12 ↦ t14 (z)`, `t23 ↦ t24 (x)`, `t24 ↦ t34 (y)`.
pub const KER_PR2_RELABEL: [u8; 4] = [1, 4, 2, 3];

/// An element of `ker pr^2_4 = 𝕃(t12, t23, t24)` as a polynomial in `z, x, y`.
pub fn ker_pr2_poly(e: &CombedLie) -> Result<NCPoly> {
    let r = e.permute(&KER_PR2_RELABEL)?;
    if !r.component(2).is_zero() || !r.component(3).is_zero() {
        return Err(Error::NotInImage("element outside ker pr^2".into()));
    }
    Ok(r.component(4).clone())
}

/// `ψ ↦ ψ(t12, t23) + ψ(t12, t24)`
pub fn diag_123_124(psi: &LieElement) -> CombedLie {
    let t = |i, j| CombedLie::t(4, i, j);
    eval2(psi, &t(1, 2), &t(2, 3)).add(&eval2(psi, &t(1, 2), &t(2, 4)))
}

/// `(ψ)^{ab}_I = ψ(t23, −t23 − t24)`
pub fn ab_i(psi: &LieElement) -> CombedLie {
    let t = |i, j| CombedLie::t(4, i, j);
    let m = t(2, 3).add(&t(2, 4)).scale(&Scalar::from_int(-1));
    eval2(psi, &t(2, 3), &m)
}

/// How `λ` is evaluated on `𝒫_{≥1,≥1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LambdaRule {
    /// `λ(p_{a,b}) = Σ p_{a'b, a''}` over `Δ_*(a) = Σ a'⊗a''`
    Displayed,
    /// `λ(p_{a,b}) = Σ p_{c,d}` over surjections of class `σ^{-1}(N) = {dp c}`
    /// with `σ(c, d) = (a, b)`
    Surjection,
}

/// `λ` on a `𝒫`-element; the one-sided parts `𝒫_{≥1,0}`, `𝒫_{0,≥1}`, `𝒫_{0,0}`
/// pass through unchanged.
pub fn lambda(t: &YTensor, rule: LambdaRule) -> YTensor {
    let mut out = YTensor::new();
    let mut surj: BTreeMap<usize, BTreeMap<(YWord, YWord), YTensor>> = BTreeMap::new();
    for ((u, v), c) in t.iter() {
        if u.is_empty() || v.is_empty() {
            out.add_term((u.clone(), v.clone()), c.clone());
            continue;
        }
        match rule {
            LambdaRule::Displayed => {
                for ((a1, a2), d) in delta_star_word(u).iter() {
                    // p_{a'b, a''}: the word of a'b is (word of b)·(word of a')
                    let mut first = v.clone();
                    first.extend_from_slice(a1);
                    out.add_term((first, a2.clone()), c * d);
                }
            }
            LambdaRule::Surjection => {
                let w: usize = u.iter().chain(v.iter()).map(|&n| n as usize).sum();
                let table = surj.entry(w).or_insert_with(|| surjection_lambda_table(w));
                if let Some(img) = table.get(&(u.clone(), v.clone())) {
                    out.add_scaled(c, img);
                }
            }
        }
    }
    out
}

/// For each `(a, b)` of total weight `w`: `Σ p_{c,d}` over `(c, d, σ)` with
/// `σ^{-1}(N) = {dp c}` and `σ(c, d) = (a, b)`, keyed by `Y`-words.
pub fn surjection_lambda_table(w: usize) -> BTreeMap<(YWord, YWord), YTensor> {
    let mut table: BTreeMap<(YWord, YWord), YTensor> = BTreeMap::new();
    for wc in 1..w {
        for c in Composition::all(wc) {
            for d in Composition::all(w - wc) {
                for s in stuffle_surjections(&c, &d) {
                    if s.class != StuffleClass::FirstLast {
                        continue;
                    }
                    let key = (s.split.0.to_yword(), s.split.1.to_yword());
                    table
                        .entry(key)
                        .or_default()
                        .add_term((c.to_yword(), d.to_yword()), Scalar::one());
                }
            }
        }
    }
    table
}

/// Both composites of the stuffle-coproduct square, in `l_𝐚⊗l_𝐛` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    /// `Δ_* ∘ π_Y`
    pub top: YTensor,
    /// `λ ∘ π ∘ (diag^{123,124} − pent^1_dmr + (−)^{ab}_I)`
    pub bottom: YTensor,
}

impl DiagramReport {
    pub fn commutes(&self) -> bool {
        self.top == self.bottom
    }

    pub fn mismatch(&self) -> YTensor {
        &self.top - &self.bottom
    }
}

/// The left vertical map, as a polynomial in `z, x, y`. The pentagon part
/// enters with the sign that makes the square commute in these coordinates.
pub fn diagram_left(psi: &LieElement) -> Result<NCPoly> {
    let e = diag_123_124(psi).sub(&pent_phi(psi)).add(&ab_i(psi));
    ker_pr2_poly(&e)
}

pub fn dmr_diagram_check(psi: &LieElement, rule: LambdaRule) -> Result<DiagramReport> {
    let top = stuffle_coproduct(&depth_sign(&pi_y(&psi.to_ncpoly())));
    let bottom = lambda(&l_yx_coords(&diagram_left(psi)?), rule);
    Ok(DiagramReport { top, bottom })
}

/// `c̃orr(a, b, c) = Δ_*(corr(a) + corr(b))/2` on
/// `𝕃(t12,t24) ⊕ 𝕃(t12,t23) ⊕ I/[I,I]`, as a `Y`-tensor.
pub fn corr_tilde(q: &NCPoly) -> YTensor {
    let a = q
        .substitute(&[NCPoly::letter(2, 0), NCPoly::zero(2), NCPoly::letter(2, 1)])
        .expect("three images");
    let b = q
        .substitute(&[NCPoly::letter(2, 0), NCPoly::letter(2, 1), NCPoly::zero(2)])
        .expect("three images");
    let s = depth_sign(&(&corr(&a) + &corr(&b)));
    stuffle_coproduct(&s).scale(&Scalar::ratio(1, 2))
}

/// The corrected square: `Δ_*(ψ_*)` against `λ∘π + c̃orr`.
pub fn dmr_diagram_check_corrected(psi: &LieElement, rule: LambdaRule) -> Result<DiagramReport> {
    let top = stuffle_coproduct(&depth_sign(&psi_star(&psi.to_ncpoly())));
    let q = diagram_left(psi)?;
    let bottom = &lambda(&l_yx_coords(&q), rule) + &corr_tilde(&q);
    Ok(DiagramReport { top, bottom })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LieElement {
        LieElement::generator(2, 0)
    }
    fn y() -> LieElement {
        LieElement::generator(2, 1)
    }

    #[test]
    fn y_maps() {
        let x0x1 = NCPoly::monomial(2, alloc::vec![0, 1], Scalar::one());
        assert_eq!(pi_y(&x0x1), YPoly::term(alloc::vec![2], Scalar::one()));
        assert!(pi_y(&NCPoly::monomial(2, alloc::vec![1, 0], Scalar::one())).is_zero());
        assert_eq!(
            corr(&x0x1),
            YPoly::term(alloc::vec![1, 1], Scalar::ratio(-1, 2))
        );
        assert!(corr(&NCPoly::one(2)).is_zero());
    }

    #[test]
    fn delta_star_examples() {
        let d = delta_star_word(&[2]);
        assert_eq!(d.len(), 3);
        assert_eq!(d.coeff(&(alloc::vec![1], alloc::vec![1])), Scalar::one());
        assert_eq!(
            delta_star_word(&[1, 1]).coeff(&(alloc::vec![1], alloc::vec![1])),
            Scalar::from_int(2)
        );
    }

    #[test]
    fn stuffle_examples() {
        let one = Composition(alloc::vec![1]);
        let p = stuffle_product(&one, &one);
        assert_eq!(
            p.coeff(&Composition(alloc::vec![1, 1])),
            Scalar::from_int(2)
        );
        assert_eq!(p.coeff(&Composition(alloc::vec![2])), Scalar::one());
        assert_eq!(stuffle_product(&Composition(alloc::vec![2]), &one).len(), 3);
    }

    #[test]
    fn dmr0_examples() {
        let s3 = x()
            .bracket(&x().bracket(&y()))
            .sub(&y().bracket(&y().bracket(&x())));
        assert!(dmr0_membership(&s3).unwrap());
        assert!(!dmr0_membership(&x().bracket(&x().bracket(&y()))).unwrap());
        assert!(dmr0_membership(&LieElement::zero(2)).unwrap());
        assert!(dmr0_defect(&x().bracket(&y())).is_err());
    }

    #[test]
    fn p_examples() {
        let a = Composition(alloc::vec![1]);
        assert_eq!(p_word(&a, &a), alloc::vec![X, Y]);
        let ab = ker_pr2_poly(&ab_i(&x().bracket(&y()))).unwrap();
        let t = NCPoly::letter(3, X)
            .commutator(&NCPoly::letter(3, Y))
            .scale(&Scalar::from_int(-1));
        assert_eq!(ab, t);
        let q = p_map(&YTensor::term(
            (alloc::vec![2, 1], alloc::vec![3]),
            Scalar::one(),
        ));
        assert_eq!(p_inverse(&q).unwrap().len(), 1);
        assert!(p_inverse(&NCPoly::letter(3, Z)).is_err());
    }

    #[test]
    fn lambda_displayed_example() {
        let t = YTensor::term((alloc::vec![1], alloc::vec![1]), Scalar::one());
        let l = lambda(&t, LambdaRule::Displayed);
        assert_eq!(l.len(), 2);
        assert_eq!(l.coeff(&(alloc::vec![1, 1], Vec::new())), Scalar::one());
        assert_eq!(l.coeff(&(alloc::vec![1], alloc::vec![1])), Scalar::one());
    }

    #[test]
    fn duality_with_stuffle() {
        for w in 1..=6 {
            let comps: Vec<Composition> = (0..=w).flat_map(Composition::all).collect();
            for f in Composition::all(w) {
                let d = delta_star_word(&f.to_yword());
                for a in &comps {
                    for b in &comps {
                        if a.weight() + b.weight() != w {
                            continue;
                        }
                        let lhs = d.coeff(&(a.to_yword(), b.to_yword()));
                        let rhs = stuffle_product(a, b).coeff(&f);
                        assert_eq!(lhs, rhs, "{:?} {:?} {:?}", f, a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn diagram_small_weights() {
        let s3 = x()
            .bracket(&x().bracket(&y()))
            .sub(&y().bracket(&y().bracket(&x())));
        for psi in [s3, x().bracket(&x().bracket(&x().bracket(&y())))] {
            assert!(dmr_diagram_check(&psi, LambdaRule::Surjection)
                .unwrap()
                .commutes());
            assert!(dmr_diagram_check_corrected(&psi, LambdaRule::Surjection)
                .unwrap()
                .commutes());
        }
        let r = dmr_diagram_check(&LieElement::zero(2), LambdaRule::Surjection).unwrap();
        assert!(r.top.is_zero() && r.bottom.is_zero());
    }

    #[test]
    fn abelianized_ideal_matches_mixed_p() {
        let mut cache = crate::dkho::SubspaceCache::new();
        let ideal = crate::dkho::SubspaceSpec::ideal_i();
        for d in 2..=5usize {
            let i_d = cache.subspace(&ideal, d).unwrap();
            let ii = cache.lcs_component(&ideal, 2, d).unwrap();
            let b = cache.basis(4, d).clone();
            let expected = (d - 1) << (d - 2);
            assert_eq!(i_d.dim() - ii.dim(), expected);
            let mut img = crate::linalg::Echelon::new();
            let mut keys: BTreeMap<(YWord, YWord), usize> = BTreeMap::new();
            let mut vs = Vec::new();
            for r in i_d.canonical_rows() {
                let t = pi_p(&ker_pr2_poly(&b.from_coords(&r)).unwrap());
                let mut v: crate::linalg::SVec = Vec::new();
                for (k, c) in t.iter() {
                    assert!(!k.0.is_empty() && !k.1.is_empty());
                    let n = keys.len();
                    v.push((*keys.entry(k.clone()).or_insert(n), c.clone()));
                }
                v.sort_by_key(|p| p.0);
                vs.push(v);
            }
            for v in &vs {
                img.insert(v.clone());
            }
            assert_eq!(img.rank(), expected);
            for r in ii.canonical_rows() {
                assert!(pi_p(&ker_pr2_poly(&b.from_coords(&r)).unwrap()).is_zero());
            }
        }
    }
}
