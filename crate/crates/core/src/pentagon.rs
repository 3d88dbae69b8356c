//! The pentagon map `t_3 → t_4`, its Brunnian truncations, `grt_1`, and
//! solution spaces of linear conditions on `𝕃(x, y)`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::dkho::{eval2, CombedLie, PSphereElement, SubspaceCache, SubspaceSpec};
use crate::error::{Error, Result};
use crate::freelie::{lyndon_words, FreeAssoc, LieElement};
use crate::linalg::{self, Echelon, SVec};
use crate::lincomb::LinComb;
use crate::ncalg::{NCPoly, Word};
use crate::scalar::Scalar;

/// The partial maps of the five pentagon terms with their signs.
pub const PENT_TERMS: [(&str, i64); 5] = [
    ("1,2,3", 1),
    ("1,23,4", 1),
    ("2,3,4", 1),
    ("12,3,4", -1),
    ("1,2,34", -1),
];

/// `pent(g) = g^{1,2,3} + g^{1,23,4} + g^{2,3,4} − g^{12,3,4} − g^{1,2,34}`
pub fn pent_eval(g: &CombedLie) -> Result<CombedLie> {
    if g.n() != 3 {
        return Err(Error::StrandMismatch {
            left: 3,
            right: g.n() as usize,
        });
    }
    let mut out = CombedLie::zero(4);
    for (f, sign) in PENT_TERMS {
        let pre = crate::dkho::parse_partial_map(f)?;
        out.add_scaled(&Scalar::from_int(sign), &g.partial_map(&pre, 4)?);
    }
    Ok(out)
}

/// `pent(φ(t12, t23))`, evaluated term by term without passing through `t_3`.
pub fn pent_phi(phi: &LieElement) -> CombedLie {
    assert_eq!(phi.rank(), 2, "φ must be a two-letter Lie element");
    let t = |i, j| CombedLie::t(4, i, j);
    let terms = [
        (t(2, 3), t(3, 4), 1),
        (t(1, 3).add(&t(2, 3)), t(3, 4), -1),
        (t(1, 2).add(&t(1, 3)), t(2, 4).add(&t(3, 4)), 1),
        (t(1, 2), t(2, 3).add(&t(2, 4)), -1),
        (t(1, 2), t(2, 3), 1),
    ];
    let mut out = CombedLie::zero(4);
    for (a, b, s) in terms {
        out.add_scaled(&Scalar::from_int(s), &eval2(phi, &a, &b));
    }
    out
}

/// The sphere pentagon `p_4 → p_5`, as the image of `pent(φ(t12, t23))`
/// under `K_4`.
pub fn pent_sphere(phi: &LieElement) -> PSphereElement {
    PSphereElement::from_t(&pent_phi(phi))
}

/// Which Brunnian subalgebra the pentagon defect is truncated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PentFlavor {
    /// `brun_4 ⊂ t_4`
    Grt,
    /// `brun_{1,3} ⊂ dk_{1,3}`
    Dmr,
    /// `brun_{2,2} ⊂ dk_{2,2}`
    Krv,
}

impl PentFlavor {
    pub const ALL: [PentFlavor; 3] = [PentFlavor::Grt, PentFlavor::Dmr, PentFlavor::Krv];

    pub fn brun(self) -> SubspaceSpec {
        match self {
            PentFlavor::Grt => SubspaceSpec::Brun(4),
            PentFlavor::Dmr => SubspaceSpec::BrunMixed(1, 3),
            PentFlavor::Krv => SubspaceSpec::BrunMixed(2, 2),
        }
    }

    /// The subspace killed by `pent^k`: the `k`-th filtration step, which
    /// is the standard `Γ_{k+1}` (so `k = 1` quotients by the derived algebra).
    pub fn filtration(self, k: usize) -> SubspaceSpec {
        SubspaceSpec::Lcs(Box::new(self.brun()), k + 1)
    }

    pub fn name(self) -> &'static str {
        match self {
            PentFlavor::Grt => "grt",
            PentFlavor::Dmr => "dmr",
            PentFlavor::Krv => "krv",
        }
    }
}

/// `pent^k_flavor(φ)` as a canonical remainder modulo the filtration step;
/// empty exactly when it vanishes.
pub fn pent_k_eval(
    phi: &LieElement,
    flavor: PentFlavor,
    k: usize,
    cache: &mut SubspaceCache,
) -> Result<SVec> {
    let d = match phi.homogeneous_degree() {
        None if phi.is_zero() => return Ok(Vec::new()),
        None => return Err(Error::NotHomogeneous),
        Some(d) => d,
    };
    if d < 2 {
        return Err(Error::DegreeTooLow { degree: d, min: 2 });
    }
    if k == 0 {
        return Err(Error::Precondition("k ≥ 1".into()));
    }
    let sub = cache.subspace(&flavor.filtration(k), d)?;
    let v = cache.basis(4, d).coords(&pent_phi(phi));
    Ok(sub.basis.reduce(&v))
}

/// Defects of the three `grt_1` conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grt1Report {
    /// `φ(x0, x1) + φ(x1, x0)`
    pub antisym: LieElement,
    /// `φ(x0, x1) + φ(x1, x∞) + φ(x∞, x0)`
    pub hexagon: LieElement,
    /// `pent(φ(t12, t23))`
    pub pentagon: CombedLie,
}

impl Grt1Report {
    pub fn antisym_ok(&self) -> bool {
        self.antisym.is_zero()
    }
    pub fn hexagon_ok(&self) -> bool {
        self.hexagon.is_zero()
    }
    pub fn pentagon_ok(&self) -> bool {
        self.pentagon.is_zero()
    }
    pub fn passes(&self) -> bool {
        self.antisym_ok() && self.hexagon_ok() && self.pentagon_ok()
    }
}

fn x_images() -> (NCPoly, NCPoly, NCPoly) {
    let x0 = NCPoly::letter(2, 0);
    let x1 = NCPoly::letter(2, 1);
    let xinf = -(&x0 + &x1);
    (x0, x1, xinf)
}

/// `φ(a, b)` in the free algebra on `x0, x1`, back in Lyndon coordinates.
pub fn eval_free(phi: &LieElement, a: &NCPoly, b: &NCPoly) -> LieElement {
    let p = phi
        .substitute(&FreeAssoc::new(2), &[a.clone(), b.clone()])
        .expect("two images");
    crate::freelie::lie_coords(&p).expect("substitution of Lie elements is Lie")
}

/// The antisymmetry defect `φ(x0, x1) + φ(x1, x0)`.
pub fn antisym_defect(phi: &LieElement) -> LieElement {
    let (x0, x1, _) = x_images();
    phi.add(&eval_free(phi, &x1, &x0))
}

/// The hexagon defect `φ(x0, x1) + φ(x1, x∞) + φ(x∞, x0)`.
pub fn hexagon_defect(phi: &LieElement) -> LieElement {
    let (x0, x1, xi) = x_images();
    phi.add(&eval_free(phi, &x1, &xi))
        .add(&eval_free(phi, &xi, &x0))
}

pub fn grt1_membership(phi: &LieElement) -> Grt1Report {
    Grt1Report {
        antisym: antisym_defect(phi),
        hexagon: hexagon_defect(phi),
        pentagon: pent_phi(phi),
    }
}

/// A subspace of the weight-`w` part of `𝕃(x, y)` in Lyndon coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub weight: usize,
    pub words: Vec<Word>,
    pub basis: Echelon,
}

impl SolutionSpace {
    pub fn whole(weight: usize) -> Self {
        let words = lyndon_words(2, weight);
        let basis = Echelon::from_vectors(
            (0..words.len())
                .map(|i| vec![(i, Scalar::one())])
                .collect::<Vec<_>>()
                .iter(),
        );
        SolutionSpace {
            weight,
            words,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn coords(&self, e: &LieElement) -> SVec {
        let index: BTreeMap<&Word, usize> =
            self.words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut v: SVec = e
            .homogeneous_part(self.weight)
            .coords()
            .iter()
            .map(|(w, c)| (index[w], c.clone()))
            .collect();
        v.sort_by_key(|p| p.0);
        v
    }

    pub fn element(&self, v: &SVec) -> LieElement {
        let mut e = LieElement::zero(2);
        for (i, c) in v {
            e.add_scaled(c, &LieElement::basis(2, self.words[*i].clone()));
        }
        e
    }

    /// Canonical basis elements.
    pub fn elements(&self) -> Vec<LieElement> {
        self.basis
            .canonical_rows()
            .iter()
            .map(|r| self.element(r))
            .collect()
    }

    pub fn contains(&self, e: &LieElement) -> bool {
        self.basis.contains(&self.coords(e))
    }

    pub fn is_subspace_of(&self, other: &SolutionSpace) -> bool {
        self.weight == other.weight && self.basis.is_subspace_of(&other.basis)
    }

    pub fn same_span(&self, other: &SolutionSpace) -> bool {
        self.weight == other.weight && self.basis.same_span(&other.basis)
    }

    pub fn intersection(&self, other: &SolutionSpace) -> SolutionSpace {
        SolutionSpace {
            weight: self.weight,
            words: self.words.clone(),
            basis: self.basis.intersection(&other.basis),
        }
    }
}

/// Kernel of a linear map on the weight-`w` Lyndon basis of `𝕃(x, y)`,
/// given by its values as formal combinations over any ordered key.
pub fn solve_linear<K: Ord + Clone>(
    weight: usize,
    mut f: impl FnMut(&LieElement) -> Result<LinComb<K>>,
) -> Result<SolutionSpace> {
    let words = lyndon_words(2, weight);
    let mut keys: BTreeMap<K, usize> = BTreeMap::new();
    let mut cols: Vec<SVec> = Vec::with_capacity(words.len());
    for w in &words {
        let img = f(&LieElement::basis(2, w.clone()))?;
        let mut col: SVec = Vec::with_capacity(img.len());
        for (k, c) in img.iter() {
            let n = keys.len();
            let idx = *keys.entry(k.clone()).or_insert(n);
            col.push((idx, c.clone()));
        }
        col.sort_by_key(|p| p.0);
        cols.push(col);
    }
    let ker = linalg::kernel(&cols);
    Ok(SolutionSpace {
        weight,
        words,
        basis: Echelon::from_vectors(ker.iter()),
    })
}

/// Word coefficients of a combed element, tagged by component.
pub fn combed_terms(e: &CombedLie, tag: u8) -> LinComb<(u8, u8, Word)> {
    let mut out = LinComb::new();
    for s in 2..=e.n() {
        for (w, c) in e.component(s).terms().iter() {
            out.add_term((tag, s, w.clone()), c.clone());
        }
    }
    out
}

pub fn lie_terms(e: &LieElement, tag: u8) -> LinComb<(u8, u8, Word)> {
    e.coords().map_keys(|w| (tag, 0, w.clone()))
}

/// The solution space of `pent(φ) = 0`.
pub fn pent_space(weight: usize) -> Result<SolutionSpace> {
    solve_linear(weight, |phi| Ok(combed_terms(&pent_phi(phi), 0)))
}

/// The solution space of the three `grt_1` conditions.
pub fn grt1_space(weight: usize) -> Result<SolutionSpace> {
    solve_linear(weight, |phi| {
        let r = grt1_membership(phi);
        let mut v = lie_terms(&r.antisym, 0);
        v.add_scaled(&Scalar::one(), &lie_terms(&r.hexagon, 1));
        v.add_scaled(&Scalar::one(), &combed_terms(&r.pentagon, 2));
        Ok(v)
    })
}

/// The solution space of `pent^k_flavor(φ) = 0`.
pub fn pent_k_space(
    weight: usize,
    flavor: PentFlavor,
    k: usize,
    cache: &mut SubspaceCache,
) -> Result<SolutionSpace> {
    if weight < 2 {
        return Err(Error::DegreeTooLow {
            degree: weight,
            min: 2,
        });
    }
    let sub = cache.subspace(&flavor.filtration(k), weight)?;
    let basis = cache.basis(4, weight).clone();
    solve_linear(weight, |phi| {
        let r = sub.basis.reduce(&basis.coords(&pent_phi(phi)));
        Ok(r.into_iter().collect::<LinComb<usize>>())
    })
}

/// One weight/level row of the containment audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub weight: usize,
    pub k: usize,
    /// dimensions of the `grt`, `dmr`, `krv` solution spaces
    pub dims: [usize; 3],
    pub pent_dim: usize,
    /// named containments and whether they hold
    pub checks: Vec<(&'static str, bool)>,
}

impl AuditRow {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

/// Checks `Sol(pent) ⊆ Sol(pent^k) ⊆ Sol(pent^k_dmr) ⊆ Sol(pent^k_krv)` and
/// `Sol(pent^k_•) ⊆ Sol(pent^{k-1}_•)`.
pub fn implication_audit(
    max_weight: usize,
    max_k: usize,
    cache: &mut SubspaceCache,
) -> Result<Vec<AuditRow>> {
    let mut rows = Vec::new();
    for w in 2..=max_weight {
        let pent = pent_space(w)?;
        let mut prev: Option<[SolutionSpace; 3]> = None;
        for k in 1..=max_k {
            let g = pent_k_space(w, PentFlavor::Grt, k, cache)?;
            let d = pent_k_space(w, PentFlavor::Dmr, k, cache)?;
            let r = pent_k_space(w, PentFlavor::Krv, k, cache)?;
            let mut checks = vec![
                ("pent ⊆ grt", pent.is_subspace_of(&g)),
                ("grt ⊆ dmr", g.is_subspace_of(&d)),
                ("dmr ⊆ krv", d.is_subspace_of(&r)),
            ];
            if let Some([pg, pd, pr]) = &prev {
                checks.push(("grt(k) ⊆ grt(k-1)", g.is_subspace_of(pg)));
                checks.push(("dmr(k) ⊆ dmr(k-1)", d.is_subspace_of(pd)));
                checks.push(("krv(k) ⊆ krv(k-1)", r.is_subspace_of(pr)));
            }
            rows.push(AuditRow {
                weight: w,
                k,
                dims: [g.dim(), d.dim(), r.dim()],
                pent_dim: pent.dim(),
                checks,
            });
            prev = Some([g, d, r]);
        }
    }
    Ok(rows)
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
    fn pent_of_generator() {
        let g = CombedLie::t(3, 1, 2);
        assert_eq!(pent_eval(&g).unwrap(), CombedLie::t(4, 1, 2));
        assert_eq!(pent_phi(&x()), CombedLie::t(4, 1, 2));
        assert!(pent_eval(&CombedLie::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn pent_routes_agree() {
        let phi = x().bracket(&x().bracket(&y()));
        let g = eval2(&phi, &CombedLie::t(3, 1, 2), &CombedLie::t(3, 2, 3));
        assert_eq!(pent_eval(&g).unwrap(), pent_phi(&phi));
    }

    #[test]
    fn sigma3_is_in_grt1() {
        let s3 = x()
            .bracket(&x().bracket(&y()))
            .sub(&y().bracket(&y().bracket(&x())));
        assert!(grt1_membership(&s3).passes());
        let r = grt1_membership(&x().bracket(&y()));
        assert!(r.antisym_ok());
        assert!(!r.hexagon_ok());
        assert_eq!(grt1_space(2).unwrap().dim(), 0);
        let sp = grt1_space(3).unwrap();
        assert_eq!(sp.dim(), 1);
        assert!(sp.contains(&s3));
    }
}
