use std::sync::Arc;

use proptest::prelude::*;
use ringel_core::algebra::*;
use ringel_core::endo::tier2_isomorphism;
use ringel_core::generators::fixtures::*;
use ringel_core::generators::*;
use ringel_core::linalg::{q, Rational};

fn build(p: &MonomialPresentation) -> Arc<FiniteDimAlgebra> {
    Arc::new(build_monomial_algebra(p).unwrap())
}

fn a2() -> Quiver {
    Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap()
}

fn names(a: &FiniteDimAlgebra) -> Vec<String> {
    let mut v: Vec<String> = a.basis().iter().map(|b| b.name.clone()).collect();
    v.sort();
    v
}

/// Counts paths avoiding every forbidden word as a subpath, by direct enumeration.
fn count_surviving_paths(p: &MonomialPresentation, bound: usize) -> usize {
    let q = &p.quiver;
    (0..=bound)
        .flat_map(|len| q.paths_of_length(len))
        .filter(|path| !p.forbidden.iter().any(|f| path.contains_subpath(f)))
        .count()
}

#[test]
fn knorrer_5_2_basis() {
    let k = build(&knorrer(5, 2).unwrap());
    assert_eq!(k.dim(), 5);
    assert_eq!(names(&k), vec!["e", "z1", "z2", "z2*z1", "z2^2"]);
    let rad: Vec<usize> = (1..=3).map(|i| k.radical_power_basis(i).len()).collect();
    assert_eq!(rad, vec![4, 2, 0]);
}

#[test]
fn ex7_basis() {
    let a = build(&ex7());
    assert_eq!(names(&a), vec!["e", "x", "x^2", "y", "y^2"]);
}

#[test]
fn opposite_of_k52_is_k53() {
    let k52 = build(&knorrer(5, 2).unwrap());
    let k53 = build(&knorrer(5, 3).unwrap());
    assert!(tier2_isomorphism(&k52.opposite(), &k53).unwrap().is_some());
}

#[test]
fn corner_of_a2() {
    let a = build(&truncated(&a2(), 2).unwrap());
    assert_eq!(a.dim(), 3);
    assert_eq!(a.corner(&[0]).unwrap().dim(), 1);
    assert_eq!(a.corner(&[1]).unwrap().dim(), 1);
    assert_eq!(a.corner(&[0, 1]).unwrap().dim(), 3);
}

#[test]
fn truncated_and_nakayama() {
    assert_eq!(build(&truncated(&jordan_quiver(), 3).unwrap()).dim(), 3);
    let c = build(&truncated(&cyclic_quiver(2), 3).unwrap());
    assert_eq!(c.dim(), 6);
    let n = build(&nakayama_cyclic(2, 3).unwrap());
    assert_eq!(n.cartan_matrix(), c.cartan_matrix());
}

#[test]
fn hj_expansions() {
    let h = hj_continued_fraction(2, 1).unwrap();
    assert_eq!(h.coefficients, vec![2]);
    let h = hj_continued_fraction(5, 2).unwrap();
    assert_eq!(h.coefficients, vec![3, 2]);
    assert_eq!(h.evaluate(), Rational::new(5.into(), 2.into()));
    let h = hj_continued_fraction(5, 3).unwrap();
    assert_eq!(h.coefficients, vec![2, 3]);
    assert!(hj_continued_fraction(4, 2).is_err());
}

#[test]
fn staircase_on_jordan() {
    let n = staircase_nilpotent(&jordan_quiver(), 2).unwrap();
    assert_eq!(n.quiver.vertex_count(), 2);
    assert_eq!(n.quiver.arrows().len(), 2);
    let a = build_presented_algebra(&n, 16).unwrap();
    assert_eq!(a.dim(), 5);
    assert!(staircase_nilpotent(&jordan_quiver(), 0).is_err());
}

#[test]
fn adr_family_of_dual_numbers_cubed() {
    let a = build(&truncated(&jordan_quiver(), 3).unwrap());
    let dims: Vec<usize> = adr_family(&a).unwrap().iter().map(|m| m.module.dim()).collect();
    assert_eq!(dims, vec![1, 2, 3]);
}

#[test]
fn lambda_presentations() {
    let l32 = build_presented_algebra(&lambda_3_2(), 16).unwrap();
    assert_eq!(l32.dim(), 19);
    let l23 = build_presented_algebra(&lambda_2_3(), 16).unwrap();
    assert_eq!(l23.dim(), 23);
    assert_eq!(l32.provenance(), Provenance::Presented);
}

#[test]
fn self_injectivity() {
    assert!(ringel_core::modules::is_self_injective(&build(&nakayama_cyclic(2, 3).unwrap())));
    assert!(!ringel_core::modules::is_self_injective(&build(&truncated(&a2(), 2).unwrap())));
}

#[test]
fn semisimple_products() {
    let q = Quiver::new(&["1", "2"], &[] as &[(&str, &str, &str)]).unwrap();
    let a = build(&truncated(&q, 1).unwrap());
    assert_eq!(a.dim(), 2);
    assert_eq!(a.cartan_matrix(), vec![vec![1, 0], vec![0, 1]]);
    assert!(a.radical_basis().is_empty());
}

#[test]
fn invalid_inputs() {
    assert!(Quiver::new(&["1"], &[("a", "1", "2")]).is_err());
    assert!(MonomialPresentation::from_words("bad", jordan_quiver(), &["y"]).is_err());
    assert!(build_monomial_algebra(&MonomialPresentation::new("inf", jordan_quiver(), vec![]).unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_monomial_structure(seed in 0u64..500) {
        let p = random_monomial(seed, 14).unwrap();
        let a = build(&p);
        a.validate().unwrap();
        prop_assert_eq!(a.dim(), count_surviving_paths(&p, 8));
        let sum: usize = a.cartan_matrix().iter().flatten().sum();
        prop_assert_eq!(sum, a.dim());
        let op = a.opposite();
        prop_assert_eq!(op.dim(), a.dim());
        prop_assert!(tier2_isomorphism(&op.opposite(), &a).unwrap().is_some());
        let id = a.identity();
        for i in 0..a.dim() {
            let b = a.basis_vector(i);
            prop_assert_eq!(a.mul(&id, &b), b.clone());
            prop_assert_eq!(a.mul(&b, &id), b);
        }
    }

    #[test]
    fn random_monomial_associative(seed in 0u64..500, x in 0usize..64, y in 0usize..64, z in 0usize..64) {
        let a = build(&random_monomial(seed, 14).unwrap());
        let n = a.dim();
        let (x, y, z) = (a.basis_vector(x % n), a.basis_vector(y % n), a.basis_vector(z % n));
        let mut xs = x.clone();
        xs.iter_mut().for_each(|c| *c *= q(3));
        prop_assert_eq!(a.mul(&a.mul(&xs, &y), &z), a.mul(&xs, &a.mul(&y, &z)));
    }
}
