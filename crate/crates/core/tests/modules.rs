use std::sync::Arc;

use proptest::prelude::*;
use ringel_core::algebra::*;
use ringel_core::endo::build_er;
use ringel_core::generators::fixtures::*;
use ringel_core::generators::*;
use ringel_core::ideals::*;
use ringel_core::linalg::{RationalMatrix, Subspace};
use ringel_core::modules::*;

fn build(p: &MonomialPresentation) -> Arc<FiniteDimAlgebra> {
    Arc::new(build_monomial_algebra(p).unwrap())
}

fn kn(r: u64, a: u64) -> Arc<FiniteDimAlgebra> {
    build(&knorrer(r, a).unwrap())
}

#[test]
fn hom_into_regular() {
    let k52 = kn(5, 2);
    let c = iso_classes(&k52).unwrap();
    assert_eq!(hom_space(&c[2].module(), &regular_module(&k52)).unwrap().dim(), 2);
    let k53 = kn(5, 3);
    let c = iso_classes(&k53).unwrap();
    assert_eq!(hom_space(&c[2].module(), &regular_module(&k53)).unwrap().dim(), 3);
    let s = simple_module(&k52, 0).unwrap();
    assert_eq!(hom_space(&s, &s).unwrap().dim(), 1);
}

#[test]
fn hom_maps_intertwine() {
    let k = kn(5, 3);
    let r = regular_module(&k);
    for m in iso_classes(&k).unwrap() {
        let h = hom_space(&m.module(), &r).unwrap();
        for f in h.maps() {
            assert!(f.is_homomorphism());
            assert!(h.coords(&f.matrix).is_some());
        }
    }
}

#[test]
fn map_calculus_extremes() {
    let k = kn(5, 2);
    let p = projective_module(&k, 0).unwrap();
    let id = p.identity_map().calculus();
    assert_eq!((id.kernel.dim(), id.cokernel.dim()), (0, 0));
    let zero = ModuleMap::new(p.clone(), p.clone(), RationalMatrix::zeros(5, 5)).unwrap().calculus();
    assert_eq!((zero.kernel.dim(), zero.cokernel.dim()), (5, 5));
    let (rad, inc) = p.submodule_on(&p.radical(), "rad");
    assert_eq!(rad.dim(), 4);
    let top = inc.calculus().cokernel;
    assert!(is_isomorphic(&top, &simple_module(&k, 0).unwrap()));
    assert!(ModuleMap::new(p.clone(), p, RationalMatrix::zeros(4, 5)).is_err());
}

#[test]
fn projective_covers_of_e_k52() {
    let er = build_er(&kn(5, 2)).unwrap();
    let e = &er.algebra;
    assert_eq!(projective_module(e, 0).unwrap().dim_vector(), vec![5, 2, 1]);
    assert_eq!(render_loewy(&projective_module(e, 2).unwrap()), "2;1;0 0");
    let s = simple_module(e, 1).unwrap();
    assert_eq!(render_loewy(&s), "1");
    let cover = projective_cover(&s).unwrap();
    assert!(cover.is_surjective());
    assert_eq!(cover.source.dim(), projective_module(e, 1).unwrap().dim());
    let p = projective_module(e, 1).unwrap();
    assert!(projective_cover(&p).unwrap().is_iso());
    assert!(is_projective(&p));
    assert!(!is_projective(&s));
}

#[test]
fn projective_of_e_k53() {
    let er = build_er(&kn(5, 3)).unwrap();
    assert_eq!(projective_module(&er.algebra, 2).unwrap().dim_vector(), vec![3, 2, 1]);
}

#[test]
fn rigidity() {
    assert!(is_rigid(&regular_module(&kn(5, 2))));
    assert!(!is_rigid(&regular_module(&kn(5, 3))));
    assert!(is_rigid(&simple_module(&kn(5, 3), 0).unwrap()));
}

#[test]
fn decompositions() {
    let k = kn(5, 2);
    let r = regular_module(&k);
    let parts = decompose(&r.submodule_on(&r.radical(), "rad").0).unwrap();
    assert_eq!(parts.len(), 2);
    let z1 = MonomialIdeal::by_name(&k, "z1").unwrap().module();
    assert!(parts.iter().all(|p| is_isomorphic(p, &z1)));

    let s = simple_module(&k, 0).unwrap();
    assert!(is_indecomposable(&s).unwrap());
    let (ss, _) = direct_sum(&[s.clone(), s.clone()]).unwrap();
    assert!(!is_indecomposable(&ss).unwrap());
    assert_eq!(decompose(&s).unwrap().len(), 1);

    let e = build_er(&k).unwrap().algebra;
    let parts = decompose(&regular_module(&e)).unwrap();
    assert_eq!(parts.len(), 3);
    for i in 0..3 {
        let p = projective_module(&e, i).unwrap();
        assert_eq!(parts.iter().filter(|m| is_isomorphic(m, &p)).count(), 1);
    }
}

#[test]
fn duality() {
    let k = kn(5, 2);
    let op = Arc::new(k.opposite());
    let s = simple_module(&k, 0).unwrap();
    assert!(is_isomorphic(&s.dualize(&op).unwrap(), &simple_module(&op, 0).unwrap()));

    let e = build_er(&k).unwrap().algebra;
    let e_op = Arc::new(e.opposite());
    for i in 0..3 {
        let p = projective_module(&e, i).unwrap();
        let d = p.dualize(&e_op).unwrap();
        assert_eq!(d.dim(), p.dim());
        assert_eq!(loewy_data(&d).top, loewy_data(&p).socle);
        assert_eq!(loewy_data(&d).radical_layers, loewy_data(&p).socle_layers);
        assert_eq!(loewy_data(&d).socle_layers, loewy_data(&p).radical_layers);
        assert_eq!(hom_space(&simple_module(&e_op, i).unwrap(), &d).unwrap().dim(), 1);
    }
}

#[test]
fn ext_and_global_dimension() {
    let er = build_er(&kn(5, 2)).unwrap();
    let e = &er.algebra;
    let p0 = projective_module(e, 0).unwrap();
    for i in 0..3 {
        let s = simple_module(e, i).unwrap();
        assert_eq!(ext1(&p0, &s).unwrap().dim, 0);
        let (omega, inc) = syzygy(&s).unwrap();
        assert_eq!(omega.dim() + 1, projective_module(e, i).unwrap().dim());
        assert!(inc.is_injective());
    }
    match global_dimension(e, 6).unwrap() {
        GlobalDimension::Finite(d) => assert!(d <= 2),
        other => panic!("global dimension {other}"),
    }
    let dual = build(&truncated(&jordan_quiver(), 2).unwrap());
    assert_eq!(global_dimension(&dual, 5).unwrap(), GlobalDimension::Exceeds(5));
    let ss = build(&truncated(&Quiver::new(&["1"], &[] as &[(&str, &str, &str)]).unwrap(), 1).unwrap());
    assert_eq!(global_dimension(&ss, 3).unwrap(), GlobalDimension::Finite(0));
}

#[test]
fn generated_submodules() {
    let k = kn(5, 2);
    let r = regular_module(&k);
    let all: Vec<_> = (0..5).map(|i| k.basis_vector(i)).collect();
    assert_eq!(r.submodule_generated(&all, "all").0.dim(), 5);
    assert_eq!(r.submodule_generated(&[ringel_core::linalg::zero_vec(5)], "0").0.dim(), 0);
    assert!(r.span_closure(&[k.identity()]).contains_subspace(&Subspace::full(5)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_module_structure(seed in 0u64..300) {
        let a = build(&random_monomial(seed, 10).unwrap());
        let r = regular_module(&a);
        r.validate().unwrap();
        for i in 0..a.vertex_count() {
            let p = projective_module(&a, i).unwrap();
            let s = simple_module(&a, i).unwrap();
            prop_assert_eq!(hom_space(&p, &s).unwrap().dim(), 1);
            prop_assert_eq!(ext1(&p, &s).unwrap().dim, 0);
            for (j, &arrows) in a.gabriel_arrow_counts()[i].iter().enumerate() {
                let sj = simple_module(&a, j).unwrap();
                prop_assert_eq!(ext1(&s, &sj).unwrap().dim, arrows);
            }
            let data = loewy_data(&p);
            let total: usize = data.composition_factors.iter().sum();
            prop_assert_eq!(total, p.dim());
        }
        let parts = decompose(&r).unwrap();
        prop_assert_eq!(parts.len(), a.vertex_count());
    }
}
