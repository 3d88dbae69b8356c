//! `dk_{2,2}` modulo `[J, J]` for `J = (t34)`: the isomorphism
//! `La: J/[J,J] ≅ k⟨x0, x1⟩`, both descriptions of `pent^1_krv`, the
//! `δ`-maps, `p̃ent`, `grt^em_1`, and the `krv` equivalence audit.

use alloc::vec::Vec;

use crate::dkho::{eval2, CombedBasis, CombedLie, GradedSubspace, SubspaceCache, SubspaceSpec};
use crate::error::{Error, Result};
use crate::freelie::LieElement;
use crate::linalg::{self, SVec};
use crate::lincomb::LinComb;
use crate::ncalg::{all_words, tensor, NCPoly, TensorPoly, Word};
use crate::pentagon::{pent_eval, pent_phi, solve_linear, SolutionSpace};
use crate::scalar::Scalar;

fn x(i: u8) -> NCPoly {
    NCPoly::letter(2, i)
}

fn t(i: u8, j: u8) -> CombedLie {
    CombedLie::t(4, i, j)
}

/// `J = brun_{2,2} = c_{2,2} = (t34)` in `t_4`.
pub fn ideal_j() -> SubspaceSpec {
    SubspaceSpec::ideal_j()
}

/// The emergent ideal `c_{m,n} = (t_{m+1,m+n}, …, t_{m+n−1,m+n})` of `dk_{m,n}`.
pub fn emergent_ideal(m: u8, n: u8) -> SubspaceSpec {
    let top = m + n;
    SubspaceSpec::Ideal {
        n: top,
        m,
        gens: (m + 1..top).map(|i| (i, top)).collect(),
    }
}

/// `La^{-1}(w) = ad_{t_{w1,4}}…ad_{t_{wk,4}}(t34)`, letters `x0 ↦ t14`, `x1 ↦ t24`.
pub fn la_inverse_word(w: &[u8]) -> CombedLie {
    let mut e = t(3, 4);
    for &l in w.iter().rev() {
        e = t(l + 1, 4).bracket(&e);
    }
    e
}

pub fn la_inverse(p: &NCPoly) -> CombedLie {
    let mut e = CombedLie::zero(4);
    for (w, c) in p.terms().iter() {
        e.add_scaled(c, &la_inverse_word(w));
    }
    e
}

/// `La` in one degree of `t_4`.
#[derive(Clone, Debug)]
pub struct LaMap {
    degree: usize,
    words: Vec<Word>,
    cols: Vec<SVec>,
    jj: GradedSubspace,
    basis: CombedBasis,
}

impl LaMap {
    pub fn new(degree: usize, cache: &mut SubspaceCache) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeTooLow { degree, min: 1 });
        }
        let jj = cache.lcs_component(&ideal_j(), 2, degree)?;
        let basis = cache.basis(4, degree).clone();
        let words = all_words(2, degree - 1);
        let cols = words
            .iter()
            .map(|w| jj.basis.reduce(&basis.coords(&la_inverse_word(w))))
            .collect();
        Ok(LaMap {
            degree,
            words,
            cols,
            jj,
            basis,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn commutator_ideal(&self) -> &GradedSubspace {
        &self.jj
    }

    /// `La(e mod [J, J])`; errors when `e` is not in `J`.
    pub fn la(&self, e: &CombedLie) -> Result<NCPoly> {
        let v = self
            .jj
            .basis
            .reduce(&self.basis.coords(&e.homogeneous_part(self.degree)));
        let sol = linalg::solve(&self.cols, &v)
            .ok_or_else(|| Error::NotInImage("element outside J".into()))?;
        let mut p = NCPoly::zero(2);
        for (i, c) in sol {
            p.add_term(self.words[i].clone(), c);
        }
        Ok(p)
    }

    /// `e mod [J, J]` as coordinates.
    pub fn reduce(&self, e: &CombedLie) -> SVec {
        self.jj
            .basis
            .reduce(&self.basis.coords(&e.homogeneous_part(self.degree)))
    }
}

/// Which `t_3` embedding of `ψ` the pentagon is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// `ψ(t13, t23)`
    T13T23,
    /// `ψ(t12, t23)`
    T12T23,
}

/// The `t_3` element the pentagon is evaluated on.
pub fn embed_t3(psi: &LieElement, variant: Variant) -> CombedLie {
    let a = match variant {
        Variant::T13T23 => CombedLie::t(3, 1, 3),
        Variant::T12T23 => CombedLie::t(3, 1, 2),
    };
    eval2(psi, &a, &CombedLie::t(3, 2, 3))
}

fn homogeneous_degree_at_least_2(psi: &LieElement) -> Result<Option<usize>> {
    if psi.is_zero() {
        return Ok(None);
    }
    let d = psi.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d < 2 {
        return Err(Error::DegreeTooLow { degree: d, min: 2 });
    }
    Ok(Some(d))
}

/// `La∘pent^1_krv` computed in `dk_{2,2}/[J, J]`.
pub fn pent1_krv_route(
    psi: &LieElement,
    variant: Variant,
    cache: &mut SubspaceCache,
) -> Result<NCPoly> {
    let Some(d) = homogeneous_degree_at_least_2(psi)? else {
        return Ok(NCPoly::zero(2));
    };
    let p = match variant {
        Variant::T13T23 => pent_eval(&embed_t3(psi, variant))?,
        Variant::T12T23 => pent_phi(psi),
    };
    LaMap::new(d, cache)?.la(&p)
}

/// `(dR_1 ψ)(x0+x1, 0) − dR_1 ψ − (dR_1 ψ)(x1, 0) − μ(ψ)`
pub fn closed_form(p: &NCPoly) -> NCPoly {
    let d = p.d_right(1);
    let zero = NCPoly::zero(2);
    let a = d
        .substitute(&[&x(0) + &x(1), zero.clone()])
        .expect("two images");
    let b = d.substitute(&[x(1), zero]).expect("two images");
    &(&(&a - &d) - &b) - &p.reduced_coaction()
}

/// `p ↦ −S(p)`: the identification of `J/[J,J]` in which the closed form
/// is written, relative to `La`.
pub fn closed_identification(p: &NCPoly) -> NCPoly {
    -&p.antipode()
}

/// `ψ ↦ ψ(−x0−x1, x1)`
pub fn reparametrize(psi: &LieElement) -> NCPoly {
    psi.substitute_poly(&[-&(&x(0) + &x(1)), x(1)])
        .expect("two images")
}

/// The closed form of `La∘pent^1_krv`.
pub fn pent1_krv_closed(psi: &LieElement, variant: Variant) -> Result<NCPoly> {
    if homogeneous_degree_at_least_2(psi)?.is_none() {
        return Ok(NCPoly::zero(2));
    }
    Ok(match variant {
        Variant::T13T23 => closed_form(&psi.to_ncpoly()),
        Variant::T12T23 => closed_form(&reparametrize(psi)),
    })
}

/// `f(x)` in `k[x]`, as a one-letter polynomial, evaluated at `v`.
fn eval_one(f: &NCPoly, v: &NCPoly) -> NCPoly {
    f.substitute(core::slice::from_ref(v)).expect("one image")
}

/// `δ0(f) = x0 f(x0+x1) − x0 f(x0)`
pub fn delta0(f: &NCPoly) -> NCPoly {
    let s = &x(0) + &x(1);
    &(&x(0) * &eval_one(f, &s)) - &(&x(0) * &eval_one(f, &x(0)))
}

/// `δ1(f) = x1 f(x0+x1) − x1 f(x1)`
pub fn delta1(f: &NCPoly) -> NCPoly {
    let s = &x(0) + &x(1);
    &(&x(1) * &eval_one(f, &s)) - &(&x(1) * &eval_one(f, &x(1)))
}

/// `δ_sym(f) = (x0+x1) f(x0+x1) − x0 f(x0) − x1 f(x1)`
pub fn delta_sym(f: &NCPoly) -> NCPoly {
    let s = &x(0) + &x(1);
    let v = &(&s * &eval_one(f, &s)) - &(&x(0) * &eval_one(f, &x(0)));
    &v - &(&x(1) * &eval_one(f, &x(1)))
}

/// `(ψ)^{ab}_J`: `ψ(t24, t34) ∈ W_J = {f(ad t24) t34}`, returned as `f ∈ k[x]`.
pub fn ab_j(psi: &LieElement, cache: &mut SubspaceCache) -> Result<NCPoly> {
    let Some(d) = homogeneous_degree_at_least_2(psi)? else {
        return Ok(NCPoly::zero(1));
    };
    let img = LaMap::new(d, cache)?.la(&eval2(psi, &t(2, 4), &t(3, 4)))?;
    let mut f = NCPoly::zero(1);
    let mut residual = NCPoly::zero(2);
    for (w, c) in img.terms().iter() {
        if w.iter().all(|&l| l == 1) {
            f.add_term(alloc::vec![0; w.len()], c.clone());
        } else {
            residual.add_term(w.clone(), c.clone());
        }
    }
    if !residual.is_zero() {
        return Err(Error::NotInImage(alloc::format!(
            "ab_J image outside W_J, residual {:?}",
            residual
        )));
    }
    Ok(f)
}

/// Which combination `p̃ent` to form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PentTilde {
    One,
    Zero,
    Sym,
}

/// `p̃ent_1 = x1·La∘pent^1_krv + δ1∘ab_J`,
/// `p̃ent_0 = σ(x1·La∘pent^1_krv) + δ0∘ab_J`, `p̃ent_sym` their sum.
/// The `δ`-terms enter with `+` for `pent` and `La` as implemented here.
pub fn pent_tilde(psi: &LieElement, which: PentTilde, cache: &mut SubspaceCache) -> Result<NCPoly> {
    if homogeneous_degree_at_least_2(psi)?.is_none() {
        return Ok(NCPoly::zero(2));
    }
    let p = pent1_krv_route(psi, Variant::T12T23, cache)?.lmul_letter(1);
    let f = ab_j(psi, cache)?;
    let one = || &p + &delta1(&f);
    let zero = || &crate::krv::swap_letters(&p) + &delta0(&f);
    Ok(match which {
        PentTilde::One => one(),
        PentTilde::Zero => zero(),
        PentTilde::Sym => &one() + &zero(),
    })
}

/// `∘_+(p̃ent_1, p̃ent_0)` on the image of `sd`: `sd(ψ) ↦ p̃ent_sym(ψ)`.
pub fn middle_map(
    u: &crate::krv::TangentialDerivation,
    degree: usize,
    cache: &mut SubspaceCache,
) -> Result<NCPoly> {
    let psi = crate::krv::sd_inverse(u, degree)?;
    pent_tilde(&psi, PentTilde::Sym, cache)
}

/// `(1/m)|p̃ent_sym(ψ)| − div(sd(ψ))` for `ψ` of degree `m`.
pub fn middle_square_defect(
    psi: &LieElement,
    cache: &mut SubspaceCache,
) -> Result<crate::ncalg::CyclicPoly> {
    let Some(m) = homogeneous_degree_at_least_2(psi)? else {
        return Ok(LinComb::new());
    };
    let left = pent_tilde(psi, PentTilde::Sym, cache)?
        .cyclic()
        .scale(&Scalar::ratio(1, m as i64));
    Ok(&left - &crate::krv::divergence(&crate::krv::sd(psi)))
}

/// The three `grt^em_1` defects: `ψ(y,0) − ψ(x+y,0)`,
/// `(dR_yψ)(x,y) + (dR_yψ)(y,0) − (dR_yψ)(x+y,0) + μ(ψ)`, `[x,ψ(y,x)] + [y,ψ(x,y)]`.
/// The middle one is minus the closed form of `La∘pent^1_krv` (variant `t13,t23`).
pub fn grt_em_defects(psi: &LieElement) -> [NCPoly; 3] {
    let p = psi.to_ncpoly();
    let zero = NCPoly::zero(2);
    let s = &x(0) + &x(1);
    let e1 = &p.substitute(&[x(1), zero.clone()]).expect("two images")
        - &p.substitute(&[s.clone(), zero.clone()])
            .expect("two images");
    let d = p.d_right(1);
    let e2 = &(&(&d + &d.substitute(&[x(1), zero.clone()]).expect("two images"))
        - &d.substitute(&[s, zero]).expect("two images"))
        + &p.reduced_coaction();
    let swapped = crate::krv::swap_letters(&p);
    let e3 = &x(0).commutator(&swapped) + &x(1).commutator(&p);
    [e1, e2, e3]
}

pub fn grt_em_membership(psi: &LieElement) -> bool {
    grt_em_defects(psi).iter().all(|d| d.is_zero())
}

pub fn grt_em_space(weight: usize) -> Result<SolutionSpace> {
    solve_linear(weight, |psi| {
        let mut out: LinComb<(u8, Word)> = LinComb::new();
        for (k, d) in grt_em_defects(psi).iter().enumerate() {
            out.add_scaled(
                &Scalar::one(),
                &d.terms().map_keys(|w| (k as u8, w.clone())),
            );
        }
        Ok(out)
    })
}

/// `{φ : pent^1_krv(φ) = 0}` through the `La` route.
pub fn pent1_krv_space(weight: usize, cache: &mut SubspaceCache) -> Result<SolutionSpace> {
    let la = LaMap::new(weight, cache)?;
    solve_linear(weight, |psi| {
        Ok(la
            .reduce(&pent_phi(psi))
            .into_iter()
            .collect::<LinComb<usize>>())
    })
}

/// The image of `φ(−t13−t23, t23)` in `U(dk_{2,2})/(t34) ≅ k⟨x,y⟩⊗k⟨x,y⟩`
/// minus the two primitive parts: `Δ(q) − q⊗1 − 1⊗q` for `q = φ(−x−y, x)`.
pub fn quotient_defect(phi: &NCPoly) -> Result<TensorPoly> {
    let q = phi.substitute(&[-&(&x(0) + &x(1)), x(0)])?;
    let one = NCPoly::one(2);
    Ok(&(&q.coproduct() - &tensor(&q, &one)) - &tensor(&one, &q))
}

/// The `4T` relations of `dk_{2,2}` as pairs that must agree.
pub fn four_t_relations() -> Vec<(CombedLie, CombedLie)> {
    alloc::vec![
        (t(1, 3).bracket(&t(3, 4)), t(3, 4).bracket(&t(1, 4))),
        (t(2, 3).bracket(&t(3, 4)), t(3, 4).bracket(&t(2, 4))),
        (t(1, 3).bracket(&t(2, 4)), CombedLie::zero(4)),
        (
            t(1, 4).bracket(&t(1, 3)),
            t(1, 4).bracket(&t(3, 4)).scale(&Scalar::from_int(-1))
        ),
        (
            t(2, 4).bracket(&t(2, 3)),
            t(2, 4).bracket(&t(3, 4)).scale(&Scalar::from_int(-1))
        ),
        (t(1, 4).bracket(&t(2, 3)), CombedLie::zero(4)),
    ]
}

/// One weight of the `krv` equivalence audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrvAuditRow {
    pub weight: usize,
    /// solutions of the `sd`-speciality equation and `pent^1_krv = 0`
    pub dim_a: usize,
    /// `{φ : sd(φ) ∈ krv^sym_2}` per span convention
    pub dim_b: [usize; 2],
    /// `Sol(dmr_0) ∩ Sol(sd-speciality)`
    pub dim_c: usize,
    pub equal: [bool; 2],
    pub contained: [bool; 2],
    pub grt_em_dim: usize,
}

impl KrvAuditRow {
    /// The first span convention for which `A = B` and `C ⊆ B`.
    pub fn convention(&self) -> Option<crate::krv::SpanConvention> {
        (0..2)
            .find(|&i| self.equal[i] && self.contained[i])
            .map(|i| crate::krv::SpanConvention::ALL[i])
    }
}

pub fn krv_equivalence_audit(weight: usize, cache: &mut SubspaceCache) -> Result<KrvAuditRow> {
    if weight < 3 {
        return Err(Error::DegreeTooLow {
            degree: weight,
            min: 3,
        });
    }
    let special = crate::krv::sd_special_space(weight)?;
    let a = special.intersection(&pent1_krv_space(weight, cache)?);
    let c = crate::dmr::dmr0_space(weight)?.intersection(&special);
    let mut dim_b = [0; 2];
    let mut equal = [false; 2];
    let mut contained = [false; 2];
    for (i, conv) in crate::krv::SpanConvention::ALL.iter().enumerate() {
        let b = crate::krv::krv_sym_space(weight, *conv)?;
        dim_b[i] = b.dim();
        equal[i] = a.same_span(&b);
        contained[i] = c.is_subspace_of(&b);
    }
    Ok(KrvAuditRow {
        weight,
        dim_a: a.dim(),
        dim_b,
        dim_c: c.dim(),
        equal,
        contained,
        grt_em_dim: grt_em_space(weight)?.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lx() -> LieElement {
        LieElement::generator(2, 0)
    }
    fn ly() -> LieElement {
        LieElement::generator(2, 1)
    }

    #[test]
    fn la_examples() {
        let mut cache = SubspaceCache::new();
        let la2 = LaMap::new(2, &mut cache).unwrap();
        assert_eq!(la2.la(&t(1, 4).bracket(&t(3, 4))).unwrap(), x(0));
        let la1 = LaMap::new(1, &mut cache).unwrap();
        assert_eq!(la1.la(&t(3, 4)).unwrap(), NCPoly::one(2));
        let la3 = LaMap::new(3, &mut cache).unwrap();
        let e = t(1, 4).bracket(&t(2, 4).bracket(&t(3, 4)));
        assert_eq!(
            la3.la(&e).unwrap(),
            NCPoly::monomial(2, alloc::vec![0, 1], Scalar::one())
        );
        assert!(la2.la(&t(1, 2).bracket(&t(2, 3))).is_err());
    }

    #[test]
    fn four_t_holds() {
        for (a, b) in four_t_relations() {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn delta_examples() {
        let f = NCPoly::letter(1, 0);
        assert_eq!(
            delta_sym(&f),
            &NCPoly::monomial(2, alloc::vec![0, 1], Scalar::one())
                + &NCPoly::monomial(2, alloc::vec![1, 0], Scalar::one())
        );
        assert!(delta0(&NCPoly::one(1)).is_zero());
    }

    #[test]
    fn routes_agree_small() {
        let mut cache = SubspaceCache::new();
        let mut rng = crate::sample::rng(2);
        for d in 2..=5 {
            let psi = crate::sample::lie(&mut rng, 2, d);
            for v in [Variant::T13T23, Variant::T12T23] {
                let a = pent1_krv_route(&psi, v, &mut cache).unwrap();
                assert_eq!(
                    closed_identification(&a),
                    pent1_krv_closed(&psi, v).unwrap()
                );
            }
        }
        assert!(pent1_krv_closed(&lx().bracket(&ly()), Variant::T13T23)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn middle_square_weight3() {
        let mut cache = SubspaceCache::new();
        let s3 = lx()
            .bracket(&lx().bracket(&ly()))
            .sub(&ly().bracket(&ly().bracket(&lx())));
        assert!(middle_square_defect(&s3, &mut cache).unwrap().is_zero());
        let u = crate::krv::sd(&s3);
        assert_eq!(
            middle_map(&u, 3, &mut cache).unwrap(),
            pent_tilde(&s3, PentTilde::Sym, &mut cache).unwrap()
        );
    }

    #[test]
    fn ab_j_example() {
        let mut cache = SubspaceCache::new();
        assert_eq!(
            ab_j(&lx().bracket(&ly()), &mut cache).unwrap(),
            NCPoly::letter(1, 0)
        );
    }
}
