//! Drinfeld–Kohno algebras `t_n` in combed form, their morphisms, and the
//! kernel and filtration subspaces built from them.
//!
//! `t_n` is the iterated semidirect product of the free Lie algebras
//! `F_s = 𝕃(t_{1s}, …, t_{s-1,s})`, `s = 2..n`. Component `s` is stored as a
//! Lie polynomial whose letter `k` stands for `t_{k+1,s}`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::freelie::{lie_coords_with, lyndon_words, BracketCache, LieAlgebra, LieElement};
use crate::linalg::{self, Echelon, SVec};
use crate::ncalg::{Letter, NCPoly, Word};
use crate::scalar::Scalar;

/// An element of `t_n` in combed normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct CombedLie {
    n: u8,
    comps: Vec<NCPoly>,
}

impl CombedLie {
    pub fn zero(n: u8) -> Self {
        assert!(n >= 1);
        let comps = (2..=n).map(|s| NCPoly::zero(s - 1)).collect();
        CombedLie { n, comps }
    }

    /// `t_{ij}` (order of `i`, `j` irrelevant).
    pub fn generator(n: u8, i: u8, j: u8) -> Result<Self> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == 0 || i == j || j > n {
            return Err(Error::IndexOutOfRange(format!("t_{}{} in t_{}", i, j, n)));
        }
        let mut e = Self::zero(n);
        e.comps[(j - 2) as usize] = NCPoly::letter(j - 1, i - 1);
        Ok(e)
    }

    /// Shorthand for generators known to be valid.
    pub fn t(n: u8, i: u8, j: u8) -> Self {
        Self::generator(n, i, j).expect("valid generator")
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Component `s` (`2 ≤ s ≤ n`).
    pub fn component(&self, s: u8) -> &NCPoly {
        &self.comps[(s - 2) as usize]
    }

    pub fn from_components(n: u8, comps: Vec<NCPoly>) -> Result<Self> {
        if comps.len() + 1 != n as usize {
            return Err(Error::ArityMismatch {
                expected: n as usize - 1,
                found: comps.len(),
            });
        }
        for (k, c) in comps.iter().enumerate() {
            if c.rank() as usize != k + 1 {
                return Err(Error::WrongAlphabet {
                    expected: k as u8 + 1,
                    found: c.rank(),
                });
            }
        }
        Ok(CombedLie { n, comps })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &CombedLie) {
        assert_eq!(self.n, other.n, "strand count mismatch");
        for (a, b) in self.comps.iter_mut().zip(other.comps.iter()) {
            a.add_scaled(c, b);
        }
    }

    pub fn add(&self, other: &CombedLie) -> CombedLie {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &CombedLie) -> CombedLie {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), other);
        out
    }

    pub fn scale(&self, c: &Scalar) -> CombedLie {
        CombedLie {
            n: self.n,
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> CombedLie {
        CombedLie {
            n: self.n,
            comps: self.comps.iter().map(|p| p.homogeneous_part(d)).collect(),
        }
    }

    pub fn degrees(&self) -> alloc::collections::BTreeSet<usize> {
        self.comps.iter().flat_map(|p| p.degrees()).collect()
    }

    pub fn try_bracket(&self, other: &CombedLie) -> Result<CombedLie> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        Ok(self.bracket(other))
    }

    /// The bracket of `t_n`; panics on strand mismatch.
    pub fn bracket(&self, other: &CombedLie) -> CombedLie {
        assert_eq!(self.n, other.n, "strand count mismatch");
        let mut out = CombedLie::zero(self.n);
        for s in 2..=self.n {
            let a = self.component(s);
            if a.is_zero() {
                continue;
            }
            for s2 in 2..=self.n {
                let b = other.component(s2);
                if b.is_zero() {
                    continue;
                }
                match s.cmp(&s2) {
                    core::cmp::Ordering::Equal => {
                        out.comps[(s - 2) as usize].add_scaled(&Scalar::one(), &a.commutator(b));
                    }
                    core::cmp::Ordering::Less => {
                        let v = act(s, a, s2, b);
                        out.comps[(s2 - 2) as usize].add_scaled(&Scalar::one(), &v);
                    }
                    core::cmp::Ordering::Greater => {
                        let v = act(s2, b, s, a);
                        out.comps[(s - 2) as usize].add_scaled(&Scalar::from_int(-1), &v);
                    }
                }
            }
        }
        out
    }

    /// `pr^i_n`: deletes strand `i`.
    pub fn delete_strand(&self, i: u8) -> Result<CombedLie> {
        if i == 0 || i > self.n || self.n < 2 {
            return Err(Error::IndexOutOfRange(format!(
                "strand {} of t_{}",
                i, self.n
            )));
        }
        let m = self.n - 1;
        let mut out = CombedLie::zero(m.max(1));
        if m < 2 {
            return Ok(out);
        }
        let relabel = |a: u8| if a < i { a } else { a - 1 };
        for s in 2..=self.n {
            if s == i {
                continue;
            }
            let p = self.component(s);
            if p.is_zero() {
                continue;
            }
            let s2 = relabel(s);
            if s2 < 2 {
                continue;
            }
            let mut q = NCPoly::zero(s2 - 1);
            'words: for (w, c) in p.terms().iter() {
                let mut v = Vec::with_capacity(w.len());
                for &l in w {
                    let a = l + 1;
                    if a == i {
                        continue 'words;
                    }
                    v.push(relabel(a) - 1);
                }
                q.add_term(v, c.clone());
            }
            out.comps[(s2 - 2) as usize].add_scaled(&Scalar::one(), &q);
        }
        Ok(out)
    }

    /// Evaluates the Lie homomorphism `t_{ij} ↦ image(i, j)` into `t_target`.
    pub fn apply_hom(&self, target: u8, image: impl Fn(u8, u8) -> CombedLie) -> CombedLie {
        let alg = Combed::new(target);
        let mut out = CombedLie::zero(target);
        for s in 2..=self.n {
            let p = self.component(s);
            if p.is_zero() {
                continue;
            }
            let mut cache = BracketCache::new(s - 1);
            let e = lie_coords_with(p, &mut cache).expect("combed components are Lie");
            let imgs: Vec<CombedLie> = (1..s).map(|k| image(k, s)).collect();
            let v = e.substitute(&alg, &imgs).expect("arity");
            out.add_scaled(&Scalar::one(), &v);
        }
        out
    }

    /// `g ↦ g^f` for the partial map given by the preimages `f^{-1}(1), …`.
    pub fn partial_map(&self, preimages: &[Vec<u8>], target: u8) -> Result<CombedLie> {
        if preimages.len() != self.n as usize {
            return Err(Error::ArityMismatch {
                expected: self.n as usize,
                found: preimages.len(),
            });
        }
        let mut seen = vec![false; target as usize + 1];
        for p in preimages.iter().flatten() {
            if *p == 0 || *p > target || seen[*p as usize] {
                return Err(Error::IndexOutOfRange(format!(
                    "malformed partial map {:?}",
                    preimages
                )));
            }
            seen[*p as usize] = true;
        }
        Ok(self.apply_hom(target, |i, j| {
            let mut g = CombedLie::zero(target);
            for &a in &preimages[(i - 1) as usize] {
                for &b in &preimages[(j - 1) as usize] {
                    g.add_scaled(&Scalar::one(), &CombedLie::t(target, a, b));
                }
            }
            g
        }))
    }

    /// Relabels strands: `t_{ij} ↦ t_{σ(i)σ(j)}`, `perm[i-1] = σ(i)`.
    pub fn permute(&self, perm: &[u8]) -> Result<CombedLie> {
        let pre: Vec<Vec<u8>> = perm.iter().map(|&p| vec![p]).collect();
        self.partial_map(&pre, self.n)
    }

    /// Coefficient of `t_{ij}` in the degree-one part.
    pub fn linear_coeff(&self, i: u8, j: u8) -> Scalar {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.component(j).coeff(&[i - 1])
    }
}

/// `x·y` for `x ∈ F_s`, `y ∈ F_{s2}`, `s < s2`: `x` acts through
/// `D_{u1…ur} = D_{u1}∘…∘D_{ur}` on its associative expansion.
fn act(s: u8, x: &NCPoly, s2: u8, y: &NCPoly) -> NCPoly {
    debug_assert!(s < s2);
    let mut out = y.scale(&x.counit());
    let dec = x.decompose();
    for (a, part) in dec.left.iter().enumerate() {
        if part.is_zero() {
            continue;
        }
        let ya = generator_action(a as u8 + 1, s, s2, y);
        if ya.is_zero() {
            continue;
        }
        out.add_scaled(&Scalar::one(), &act(s, part, s2, &ya));
    }
    out
}

/// `t_{ij}·y` for `y ∈ F_s`, `i < j < s`, as a derivation on words:
/// `t_ij·t_is = [t_is, t_js]`, `t_ij·t_js = [t_js, t_is]`, zero otherwise.
pub fn generator_action(i: u8, j: u8, s: u8, y: &NCPoly) -> NCPoly {
    debug_assert!(i < j && j < s);
    let (li, lj) = (i - 1, j - 1);
    let mut out = NCPoly::zero(y.rank());
    for (w, c) in y.terms().iter() {
        for (p, &l) in w.iter().enumerate() {
            let (a, b) = if l == li {
                (li, lj)
            } else if l == lj {
                (lj, li)
            } else {
                continue;
            };
            let mut v1: Word = Vec::with_capacity(w.len() + 1);
            v1.extend_from_slice(&w[..p]);
            v1.push(a);
            v1.push(b);
            v1.extend_from_slice(&w[p + 1..]);
            let mut v2 = v1.clone();
            v2[p] = b;
            v2[p + 1] = a;
            out.add_term(v1, c.clone());
            out.add_term(v2, -c);
        }
    }
    out
}

/// `t_n` as a target for Lie-word evaluation.
#[derive(Clone, Copy, Debug)]
pub struct Combed {
    pub n: u8,
}

impl Combed {
    pub fn new(n: u8) -> Self {
        Combed { n }
    }
}

impl LieAlgebra for Combed {
    type Elem = CombedLie;
    fn zero(&self) -> CombedLie {
        CombedLie::zero(self.n)
    }
    fn add_scaled(&self, acc: &mut CombedLie, c: &Scalar, x: &CombedLie) {
        acc.add_scaled(c, x);
    }
    fn bracket(&self, a: &CombedLie, b: &CombedLie) -> CombedLie {
        a.bracket(b)
    }
}

impl fmt::Debug for CombedLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for s in 2..=self.n {
            let p = self.component(s);
            for (w, c) in p.terms().iter() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}·", c)?;
                for l in w {
                    write!(f, "t{}{}", l + 1, s)?;
                }
            }
        }
        Ok(())
    }
}

/// `φ(a, b)` for a two-letter Lie element evaluated in `t_n`.
pub fn eval2(phi: &LieElement, a: &CombedLie, b: &CombedLie) -> CombedLie {
    let alg = Combed::new(a.n());
    phi.substitute(&alg, &[a.clone(), b.clone()])
        .expect("two images")
}

/// The degree-`d` Lyndon basis of `t_n`: pairs `(s, w)` ordered by component,
/// then Lyndon order.
#[derive(Clone, Debug)]
pub struct CombedBasis {
    n: u8,
    degree: usize,
    entries: Vec<(u8, Word)>,
    index: BTreeMap<(u8, Word), usize>,
    expansions: Vec<NCPoly>,
}

impl CombedBasis {
    pub fn new(n: u8, degree: usize) -> Self {
        let mut entries = Vec::new();
        let mut expansions = Vec::new();
        for s in 2..=n {
            let mut cache = BracketCache::new(s - 1);
            for w in lyndon_words(s - 1, degree) {
                expansions.push(cache.expand(&w));
                entries.push((s, w));
            }
        }
        let index = entries
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        CombedBasis {
            n,
            degree,
            entries,
            index,
            expansions,
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize) -> &(u8, Word) {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[(u8, Word)] {
        &self.entries
    }

    pub fn element(&self, i: usize) -> CombedLie {
        let (s, _) = self.entries[i];
        let mut e = CombedLie::zero(self.n);
        e.comps[(s - 2) as usize] = self.expansions[i].clone();
        e
    }

    pub fn from_coords(&self, v: &SVec) -> CombedLie {
        let mut e = CombedLie::zero(self.n);
        for (i, c) in v {
            let (s, _) = self.entries[*i];
            e.comps[(s - 2) as usize].add_scaled(c, &self.expansions[*i]);
        }
        e
    }

    /// Coordinates of the degree-`d` part of `e`.
    pub fn coords(&self, e: &CombedLie) -> SVec {
        assert_eq!(e.n(), self.n, "strand count mismatch");
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        for s in 2..=self.n {
            let p = e.component(s);
            let mut rem = p.terms().filter(|w| w.len() == self.degree);
            while let Some((w, c)) = rem.first() {
                let (w, c) = (w.clone(), c.clone());
                let i = *self
                    .index
                    .get(&(s, w.clone()))
                    .unwrap_or_else(|| panic!("component {} is not a Lie polynomial", s));
                rem.add_scaled(&(-&c), self.expansions[i].terms());
                out.push((i, c));
            }
        }
        out.sort_by_key(|p| p.0);
        out
    }
}

/// A subspace of the degree-`d` part of `t_n`, in combed coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    pub n: u8,
    pub degree: usize,
    pub basis: Echelon,
}

impl GradedSubspace {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn zero(n: u8, degree: usize) -> Self {
        GradedSubspace {
            n,
            degree,
            basis: Echelon::new(),
        }
    }

    pub fn canonical_rows(&self) -> Vec<SVec> {
        self.basis.canonical_rows()
    }

    pub fn contains_coords(&self, v: &SVec) -> bool {
        self.basis.contains(v)
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.basis.is_subspace_of(&other.basis)
    }

    pub fn intersection(&self, other: &GradedSubspace) -> GradedSubspace {
        GradedSubspace {
            n: self.n,
            degree: self.degree,
            basis: self.basis.intersection(&other.basis),
        }
    }
}

/// Canonical representative of `v` modulo `sub`: zero exactly when `v ∈ sub`.
pub fn mod_reduce(v: &SVec, sub: &GradedSubspace) -> SVec {
    sub.basis.reduce(v)
}

/// Named subspaces of `t_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubspaceSpec {
    /// all of `t_n`
    Whole(u8),
    /// `dk_{m,k}` inside `t_{m+k}`
    Dk(u8, u8),
    /// `∩ ker pr^i_n` over the listed strands
    Kernel(u8, Vec<u8>),
    /// `brun_n`
    Brun(u8),
    /// `brun_{m,k}` inside `t_{m+k}`
    BrunMixed(u8, u8),
    /// ideal generated by the listed generators inside `dk_{m, n-m}`
    /// (`m = 1` gives all of `t_n`)
    Ideal {
        n: u8,
        m: u8,
        gens: Vec<(u8, u8)>,
    },
    /// `f(ad t23, ad t24)[t23, t24]` in `t_4`
    WI,
    /// `f(ad t24) t34` in `t_4`
    WJ,
    Intersection(Vec<SubspaceSpec>),
    /// standard lower central series term `Γ_k` of a subalgebra
    Lcs(Box<SubspaceSpec>, usize),
}

impl SubspaceSpec {
    /// Strand count of the ambient `t_n`.
    pub fn ambient(&self) -> u8 {
        match self {
            SubspaceSpec::Whole(n) | SubspaceSpec::Brun(n) | SubspaceSpec::Kernel(n, _) => *n,
            SubspaceSpec::Dk(m, k) | SubspaceSpec::BrunMixed(m, k) => m + k,
            SubspaceSpec::Ideal { n, .. } => *n,
            SubspaceSpec::WI | SubspaceSpec::WJ => 4,
            SubspaceSpec::Intersection(v) => v.first().map(|s| s.ambient()).unwrap_or(1),
            SubspaceSpec::Lcs(s, _) => s.ambient(),
        }
    }

    /// `I = brun_{1,3}`
    pub fn ideal_i() -> Self {
        SubspaceSpec::BrunMixed(1, 3)
    }

    /// `J = brun_{2,2}`
    pub fn ideal_j() -> Self {
        SubspaceSpec::BrunMixed(2, 2)
    }
}

/// Memo of computed subspaces and bases, keyed by `(spec, degree)`.
#[derive(Clone, Debug, Default)]
pub struct SubspaceCache {
    subspaces: BTreeMap<(SubspaceSpec, usize), GradedSubspace>,
    bases: BTreeMap<(u8, usize), CombedBasis>,
}

impl SubspaceCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(&mut self, n: u8, d: usize) -> &CombedBasis {
        self.bases
            .entry((n, d))
            .or_insert_with(|| CombedBasis::new(n, d))
    }

    pub fn get(&self, spec: &SubspaceSpec, d: usize) -> Option<&GradedSubspace> {
        self.subspaces.get(&(spec.clone(), d))
    }

    pub fn insert(&mut self, spec: SubspaceSpec, d: usize, sub: GradedSubspace) {
        self.subspaces.insert((spec, d), sub);
    }

    pub fn subspace(&mut self, spec: &SubspaceSpec, d: usize) -> Result<GradedSubspace> {
        if d == 0 {
            return Err(Error::DegreeTooLow { degree: 0, min: 1 });
        }
        if let Some(s) = self.get(spec, d) {
            return Ok(s.clone());
        }
        let sub = self.compute(spec, d)?;
        self.insert(spec.clone(), d, sub.clone());
        Ok(sub)
    }

    fn compute(&mut self, spec: &SubspaceSpec, d: usize) -> Result<GradedSubspace> {
        let n = spec.ambient();
        match spec {
            SubspaceSpec::Whole(_) => {
                let dim = self.basis(n, d).dim();
                Ok(unit_span(n, d, 0..dim))
            }
            SubspaceSpec::Dk(m, _) => {
                let m = *m;
                let b = self.basis(n, d);
                let idx: Vec<usize> = (0..b.dim()).filter(|&i| b.entry(i).0 > m).collect();
                Ok(unit_span(n, d, idx.into_iter()))
            }
            SubspaceSpec::Kernel(_, strands) => {
                for &i in strands {
                    if i == 0 || i > n {
                        return Err(Error::IndexOutOfRange(format!("strand {} of t_{}", i, n)));
                    }
                }
                self.kernel_of_deletions(n, strands, d)
            }
            SubspaceSpec::Brun(_) => {
                let strands: Vec<u8> = (1..=n).collect();
                self.kernel_of_deletions(n, &strands, d)
            }
            SubspaceSpec::BrunMixed(m, k) => {
                let strands: Vec<u8> = (m + 1..=m + k).collect();
                self.kernel_of_deletions(n, &strands, d)
            }
            SubspaceSpec::Ideal { m, gens, .. } => {
                for &(i, j) in gens {
                    CombedLie::generator(n, i, j)?;
                }
                if d == 1 {
                    let b = self.basis(n, 1).clone();
                    let mut e = Echelon::new();
                    for &(i, j) in gens {
                        e.insert(b.coords(&CombedLie::t(n, i, j)));
                    }
                    return Ok(GradedSubspace {
                        n,
                        degree: 1,
                        basis: e,
                    });
                }
                let prev = self.subspace(spec, d - 1)?;
                let bprev = self.basis(n, d - 1).clone();
                let b = self.basis(n, d).clone();
                let amb: Vec<CombedLie> = ambient_generators(n, *m);
                let mut e = Echelon::new();
                for row in prev.basis.rows() {
                    let y = bprev.from_coords(row);
                    for g in &amb {
                        e.insert(b.coords(&g.bracket(&y)));
                    }
                }
                Ok(GradedSubspace {
                    n,
                    degree: d,
                    basis: e,
                })
            }
            SubspaceSpec::WI => {
                let b = self.basis(4, d).clone();
                let mut e = Echelon::new();
                if d >= 2 {
                    let t23 = CombedLie::t(4, 2, 3);
                    let t24 = CombedLie::t(4, 2, 4);
                    for k in 1..d {
                        let l = d - k;
                        let mut v = t23.bracket(&t24);
                        for _ in 1..l {
                            v = t24.bracket(&v);
                        }
                        for _ in 1..k {
                            v = t23.bracket(&v);
                        }
                        e.insert(b.coords(&v));
                    }
                }
                Ok(GradedSubspace {
                    n: 4,
                    degree: d,
                    basis: e,
                })
            }
            SubspaceSpec::WJ => {
                let b = self.basis(4, d).clone();
                let t24 = CombedLie::t(4, 2, 4);
                let mut v = CombedLie::t(4, 3, 4);
                for _ in 1..d {
                    v = t24.bracket(&v);
                }
                let mut e = Echelon::new();
                e.insert(b.coords(&v));
                Ok(GradedSubspace {
                    n: 4,
                    degree: d,
                    basis: e,
                })
            }
            SubspaceSpec::Intersection(specs) => {
                let mut acc: Option<GradedSubspace> = None;
                for s in specs {
                    if s.ambient() != n {
                        return Err(Error::StrandMismatch {
                            left: n as usize,
                            right: s.ambient() as usize,
                        });
                    }
                    let sub = self.subspace(s, d)?;
                    acc = Some(match acc {
                        None => sub,
                        Some(a) => a.intersection(&sub),
                    });
                }
                acc.ok_or_else(|| Error::Unknown("empty intersection".into()))
            }
            SubspaceSpec::Lcs(inner, k) => {
                let k = *k;
                if k == 0 {
                    return Err(Error::Unknown("Γ_0".into()));
                }
                if k == 1 {
                    return self.subspace(inner, d);
                }
                let prev = SubspaceSpec::Lcs(inner.clone(), k - 1);
                let b = self.basis(n, d).clone();
                let mut e = Echelon::new();
                for e1 in 1..d {
                    let a = self.subspace(inner, e1)?;
                    if a.dim() == 0 {
                        continue;
                    }
                    let g = self.subspace(&prev, d - e1)?;
                    if g.dim() == 0 {
                        continue;
                    }
                    let ba = self.basis(n, e1).clone();
                    let bg = self.basis(n, d - e1).clone();
                    let xs: Vec<CombedLie> = a.basis.rows().map(|r| ba.from_coords(r)).collect();
                    let ys: Vec<CombedLie> = g.basis.rows().map(|r| bg.from_coords(r)).collect();
                    for x in &xs {
                        for y in &ys {
                            e.insert(b.coords(&x.bracket(y)));
                        }
                    }
                }
                Ok(GradedSubspace {
                    n,
                    degree: d,
                    basis: e,
                })
            }
        }
    }

    fn kernel_of_deletions(&mut self, n: u8, strands: &[u8], d: usize) -> Result<GradedSubspace> {
        let b = self.basis(n, d).clone();
        let target = self.basis(n - 1, d).clone();
        let tdim = target.dim();
        let mut cols = Vec::with_capacity(b.dim());
        for i in 0..b.dim() {
            let e = b.element(i);
            let mut col: SVec = Vec::new();
            for (k, &st) in strands.iter().enumerate() {
                let img = e.delete_strand(st)?;
                let c = target.coords(&img);
                col.extend(c.into_iter().map(|(j, v)| (j + k * tdim, v)));
            }
            cols.push(col);
        }
        let ker = linalg::kernel(&cols);
        Ok(GradedSubspace {
            n,
            degree: d,
            basis: Echelon::from_vectors(ker.iter()),
        })
    }

    /// Checks `[sub_e, sub_f] ⊆ sub_{e+f}` for `e + f ≤ d`.
    pub fn verify_subalgebra(&mut self, spec: &SubspaceSpec, d: usize) -> Result<()> {
        let n = spec.ambient();
        for total in 2..=d {
            let target = self.subspace(spec, total)?;
            let bt = self.basis(n, total).clone();
            for e1 in 1..total {
                let a = self.subspace(spec, e1)?;
                let c = self.subspace(spec, total - e1)?;
                let ba = self.basis(n, e1).clone();
                let bc = self.basis(n, total - e1).clone();
                for r in a.basis.rows() {
                    let x = ba.from_coords(r);
                    for s in c.basis.rows() {
                        let y = bc.from_coords(s);
                        if !target.contains_coords(&bt.coords(&x.bracket(&y))) {
                            return Err(Error::NotSubalgebra);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `Γ_k` of `spec` at degree `d`, after checking `spec` is a subalgebra.
    pub fn lcs_component(
        &mut self,
        spec: &SubspaceSpec,
        k: usize,
        d: usize,
    ) -> Result<GradedSubspace> {
        self.verify_subalgebra(spec, d)?;
        self.subspace(&SubspaceSpec::Lcs(Box::new(spec.clone()), k), d)
    }
}

fn unit_span(n: u8, d: usize, idx: impl Iterator<Item = usize>) -> GradedSubspace {
    let mut e = Echelon::new();
    for i in idx {
        e.insert(vec![(i, Scalar::one())]);
    }
    GradedSubspace {
        n,
        degree: d,
        basis: e,
    }
}

/// Degree-one generators of `dk_{m, n-m}`.
fn ambient_generators(n: u8, m: u8) -> Vec<CombedLie> {
    let mut out = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            if j > m {
                out.push(CombedLie::t(n, i, j));
            }
        }
    }
    out
}

/// `g = c·(t12 + t13 + t23) + ψ(t12, t23)` for `g ∈ t_3`.
pub fn t3_center_split(g: &CombedLie) -> Result<(Scalar, LieElement)> {
    if g.n() != 3 {
        return Err(Error::StrandMismatch {
            left: 3,
            right: g.n() as usize,
        });
    }
    let central = g.linear_coeff(1, 3);
    let mut free = LieElement::zero(2);
    let a = g.linear_coeff(1, 2) - &central;
    let b = g.linear_coeff(2, 3) - &central;
    free.add_scaled(&a, &LieElement::generator(2, 0));
    free.add_scaled(&b, &LieElement::generator(2, 1));
    let t12 = CombedLie::t(3, 1, 2);
    let t23 = CombedLie::t(3, 2, 3);
    for d in g.degrees() {
        if d < 2 {
            continue;
        }
        let basis = CombedBasis::new(3, d);
        let words = lyndon_words(2, d);
        let cols: Vec<SVec> = words
            .iter()
            .map(|w| basis.coords(&eval2(&LieElement::basis(2, w.clone()), &t12, &t23)))
            .collect();
        let target = basis.coords(&g.homogeneous_part(d));
        let x = linalg::solve(&cols, &target)
            .ok_or_else(|| Error::NotInImage("t_3 element outside the span of t12, t23".into()))?;
        for (i, c) in x {
            free.add_scaled(&c, &LieElement::basis(2, words[i].clone()));
        }
    }
    Ok((central, free))
}

/// An element of `p_{n+1}`, realized as `t_n` modulo its center, with the
/// coefficient of `t_{n-1,n}` eliminated in degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSphereElement {
    inner: CombedLie,
}

impl PSphereElement {
    /// `K_n: t_n → p_{n+1}`
    pub fn from_t(g: &CombedLie) -> Self {
        let n = g.n();
        let mut inner = g.clone();
        if n >= 2 {
            let c = g.linear_coeff(n - 1, n);
            if !c.is_zero() {
                inner.add_scaled(&(-&c), &center(n));
            }
        }
        PSphereElement { inner }
    }

    /// `X_{ij}` in `p_{n}` for `1 ≤ i < j ≤ n`, with `X_{i,n}` expressed
    /// through `Σ_j X_{ij} = 0`.
    pub fn x(n: u8, i: u8, j: u8) -> Result<Self> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == 0 || i == j || j > n || n < 3 {
            return Err(Error::IndexOutOfRange(format!("X_{}{} in p_{}", i, j, n)));
        }
        let m = n - 1;
        if j <= m {
            return Ok(Self::from_t(&CombedLie::t(m, i, j)));
        }
        let mut g = CombedLie::zero(m);
        for k in 1..=m {
            if k != i {
                g.add_scaled(&Scalar::from_int(-1), &CombedLie::t(m, i, k));
            }
        }
        Ok(Self::from_t(&g))
    }

    pub fn inner(&self) -> &CombedLie {
        &self.inner
    }

    /// Number of points `n` of `p_n`.
    pub fn points(&self) -> u8 {
        self.inner.n() + 1
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn bracket(&self, other: &PSphereElement) -> PSphereElement {
        Self::from_t(&self.inner.bracket(&other.inner))
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &PSphereElement) {
        self.inner.add_scaled(c, &other.inner);
    }

    /// `spr^i_n: p_n → p_{n-1}`
    pub fn delete_point(&self, i: u8) -> Result<PSphereElement> {
        let n = self.points();
        if i == 0 || i > n || n < 4 {
            return Err(Error::IndexOutOfRange(format!("point {} of p_{}", i, n)));
        }
        let m = n - 1;
        if i <= m {
            return Ok(Self::from_t(&self.inner.delete_strand(i)?));
        }
        let img = self.inner.apply_hom(m - 1, |a, b| {
            if b < m {
                CombedLie::t(m - 1, a, b)
            } else {
                PSphereElement::x(m, a, m).expect("valid").inner
            }
        });
        Ok(Self::from_t(&img))
    }
}

/// `Σ_{i<j≤n} t_{ij}`
pub fn center(n: u8) -> CombedLie {
    let mut z = CombedLie::zero(n);
    for j in 2..=n {
        for i in 1..j {
            z.add_scaled(&Scalar::one(), &CombedLie::t(n, i, j));
        }
    }
    z
}

/// Parses pentagon superscripts like `"1,23,4"` into preimage lists.
pub fn parse_partial_map(s: &str) -> Result<Vec<Vec<u8>>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::IndexOutOfRange(format!("bad strand label in {}", s)))
                })
                .collect::<Result<Vec<u8>>>()
        })
        .collect()
}

/// The letter of `t_{ij}` inside its component: `(component, letter)`.
pub fn generator_slot(i: u8, j: u8) -> (u8, Letter) {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (j, i - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: u8, j: u8) -> CombedLie {
        CombedLie::t(4, i, j)
    }

    #[test]
    fn bracket_examples() {
        assert!(t(1, 2).bracket(&t(3, 4)).is_zero());
        assert_eq!(t(1, 2).bracket(&t(1, 4)), t(1, 4).bracket(&t(2, 4)));
        assert!(t(1, 3).bracket(&t(1, 3)).is_zero());
    }

    #[test]
    fn generator_action_examples() {
        let y = NCPoly::letter(3, 0);
        let v = generator_action(1, 2, 4, &y);
        assert_eq!(v, NCPoly::letter(3, 0).commutator(&NCPoly::letter(3, 1)));
        assert!(generator_action(1, 2, 4, &NCPoly::letter(3, 2)).is_zero());
        let v = generator_action(1, 2, 4, &NCPoly::letter(3, 1));
        assert_eq!(v, NCPoly::letter(3, 1).commutator(&NCPoly::letter(3, 0)));
    }

    #[test]
    fn relations_hold() {
        for n in [4u8, 5] {
            let gens: Vec<(u8, u8)> = (2..=n).flat_map(|j| (1..j).map(move |i| (i, j))).collect();
            for &(i, j) in &gens {
                for &(k, l) in &gens {
                    let a = CombedLie::t(n, i, j);
                    if i != k && i != l && j != k && j != l {
                        assert!(a.bracket(&CombedLie::t(n, k, l)).is_zero());
                    }
                }
                for k in 1..=n {
                    if k == i || k == j {
                        continue;
                    }
                    let s = CombedLie::t(n, i, k).add(&CombedLie::t(n, j, k));
                    assert!(CombedLie::t(n, i, j).bracket(&s).is_zero());
                }
            }
        }
    }

    #[test]
    fn hom_examples() {
        assert!(t(1, 4).delete_strand(4).unwrap().is_zero());
        assert_eq!(t(1, 2).delete_strand(4).unwrap(), CombedLie::t(3, 1, 2));
        assert_eq!(t(2, 4).delete_strand(1).unwrap(), CombedLie::t(3, 1, 3));
        let g = CombedLie::t(3, 1, 2);
        let f = parse_partial_map("1,23,4").unwrap();
        assert_eq!(g.partial_map(&f, 4).unwrap(), t(1, 2).add(&t(1, 3)));
        let k = PSphereElement::from_t(&CombedLie::t(3, 1, 2));
        assert_eq!(k, PSphereElement::x(4, 1, 2).unwrap());
    }

    #[test]
    fn center_split_examples() {
        let c = center(3);
        let (z, f) = t3_center_split(&c).unwrap();
        assert!(z.is_one() && f.is_zero());
        let (z, f) = t3_center_split(&CombedLie::t(3, 1, 2)).unwrap();
        assert!(z.is_zero());
        assert_eq!(f, LieElement::generator(2, 0));
        let g = CombedLie::t(3, 1, 3).bracket(&CombedLie::t(3, 2, 3));
        let (z, f) = t3_center_split(&g).unwrap();
        assert!(z.is_zero());
        assert_eq!(
            f,
            LieElement::basis(2, vec![0, 1]).scale(&Scalar::from_int(-1))
        );
    }

    #[test]
    fn dimensions_match_combing() {
        use crate::freelie::witt_dimension;
        for d in 1..=6usize {
            let b = CombedBasis::new(4, d);
            let expect =
                witt_dimension(2, d as u64) + witt_dimension(3, d as u64) + u64::from(d == 1);
            assert_eq!(b.dim() as u64, expect);
        }
    }

    #[test]
    fn subspace_examples() {
        let mut cache = SubspaceCache::new();
        assert_eq!(cache.subspace(&SubspaceSpec::Brun(4), 1).unwrap().dim(), 0);
        assert_eq!(cache.subspace(&SubspaceSpec::Dk(2, 2), 1).unwrap().dim(), 5);
        assert_eq!(cache.subspace(&SubspaceSpec::WJ, 2).unwrap().dim(), 1);
        let j = SubspaceSpec::ideal_j();
        let g2 = cache.lcs_component(&j, 2, 2).unwrap();
        assert_eq!(g2.dim(), 0);
    }

    #[test]
    fn coords_roundtrip() {
        let b = CombedBasis::new(4, 3);
        let e = t(1, 2).bracket(&t(2, 3).bracket(&t(3, 4)));
        let v = b.coords(&e);
        assert_eq!(b.from_coords(&v), e);
    }
}
