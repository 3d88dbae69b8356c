//! Frozen values. Any change here is a behavior change and needs a reason.

use brunlie_core::braids::{is_brunnian, is_trivial, n_triviality_report, pent_braid, BraidWord};
use brunlie_core::dkho::{
    center, CombedBasis, CombedLie, PSphereElement, SubspaceCache, SubspaceSpec,
};
use brunlie_core::dmr::dmr0_space;
use brunlie_core::emergent::{grt_em_space, pent1_krv_space};
use brunlie_core::krv::{krv_sym_space, sd_special_space, SpanConvention};
use brunlie_core::linalg::Echelon;
use brunlie_core::pentagon::{grt1_space, pent_k_space, pent_space, PentFlavor};
use brunlie_core::Result;

fn dims(
    ws: std::ops::RangeInclusive<usize>,
    mut f: impl FnMut(usize) -> Result<usize>,
) -> Vec<usize> {
    ws.map(|w| f(w).unwrap()).collect()
}

#[test]
fn subspace_dimensions() {
    let mut cache = SubspaceCache::new();
    let table: [(SubspaceSpec, [usize; 5]); 7] = [
        (SubspaceSpec::Whole(4), [6, 4, 10, 21, 54]),
        (SubspaceSpec::Brun(4), [0, 0, 2, 9, 30]),
        (SubspaceSpec::Dk(2, 2), [5, 4, 10, 21, 54]),
        (SubspaceSpec::BrunMixed(2, 2), [1, 2, 6, 15, 42]),
        (SubspaceSpec::BrunMixed(1, 3), [0, 1, 4, 12, 36]),
        (SubspaceSpec::WI, [0, 1, 2, 3, 4]),
        (SubspaceSpec::WJ, [1, 1, 1, 1, 1]),
    ];
    for (spec, expected) in table {
        let got: Vec<usize> = (1..=5)
            .map(|d| cache.subspace(&spec, d).unwrap().dim())
            .collect();
        assert_eq!(got, expected, "{:?}", spec);
    }
}

#[test]
fn sphere_generators() {
    // the x_ij of five points span a 5-dimensional space inside t_4 / center
    let basis = CombedBasis::new(4, 1);
    let mut ech = Echelon::new();
    for i in 1..=5 {
        for j in i + 1..=5 {
            ech.insert(basis.coords(PSphereElement::x(5, i, j).unwrap().inner()));
        }
    }
    assert_eq!(ech.rank(), 5);
    let z = center(4);
    for i in 1..=4 {
        for j in i + 1..=4 {
            assert!(z.bracket(&CombedLie::t(4, i, j)).is_zero());
        }
    }
}

#[test]
fn solution_space_dimensions() {
    let grt = dims(1..=8, |w| grt1_space(w).map(|s| s.dim()));
    assert_eq!(grt, [0, 0, 1, 0, 1, 0, 1, 1]);
    assert_eq!(
        dims(1..=8, |w| pent_space(w).map(|s| s.dim())),
        [0, 1, 1, 0, 1, 0, 1, 1]
    );
    assert_eq!(
        dims(3..=8, |w| dmr0_space(w).map(|s| s.dim())),
        grt[2..].to_vec()
    );
    assert_eq!(
        dims(2..=8, |w| sd_special_space(w).map(|s| s.dim())),
        [0, 1, 0, 2, 0, 4, 2]
    );
    assert_eq!(
        dims(2..=8, |w| grt_em_space(w).map(|s| s.dim())),
        [0, 1, 0, 1, 0, 1, 1]
    );
    assert_eq!(
        dims(3..=7, |w| krv_sym_space(w, SpanConvention::WithInfinity)
            .map(|s| s.dim())),
        [1, 0, 1, 0, 1]
    );
    let mut cache = SubspaceCache::new();
    assert_eq!(
        dims(3..=7, |w| pent1_krv_space(w, &mut cache).map(|s| s.dim())),
        [1, 0, 1, 0, 1]
    );
    for flavor in PentFlavor::ALL {
        for k in 1..=2 {
            assert_eq!(
                dims(2..=6, |w| pent_k_space(w, flavor, k, &mut cache)
                    .map(|s| s.dim())),
                [1, 1, 0, 1, 0],
                "{} k={}",
                flavor.name(),
                k
            );
        }
    }
}

#[test]
fn pentagon_of_a_full_twist_is_not_brunnian() {
    let phi = BraidWord::parse(3, "s1 s1").unwrap();
    let p = pent_braid(&phi).unwrap();
    let trivial: Vec<bool> = (1..=4).map(|i| is_trivial(&p.delete(i).unwrap())).collect();
    assert_eq!(trivial, [true, true, false, false]);
    assert!(!is_brunnian(&p, None).unwrap());
}

#[test]
fn commutator_pentagon_leading_term() {
    let phi = BraidWord::parse(3, "s1 s1 s2 s2 S1 S1 S2 S2").unwrap();
    let p = pent_braid(&phi).unwrap();
    assert!(is_brunnian(&p, None).unwrap());
    let r = n_triviality_report(&phi, 6, 0, &mut SubspaceCache::new()).unwrap();
    assert_eq!(r.leading_degree, Some(4));
    assert!(r.lie && r.in_deletion_kernels && r.in_brun);
}
