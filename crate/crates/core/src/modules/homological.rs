use std::sync::Arc;

use num_traits::Zero;

use super::{direct_sum, hom_space, is_isomorphic, projective_module, simple_module, AlgebraModule, ModuleMap};
use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{zero_vec, Rational, RationalMatrix, Subspace};

/// Projective cover ⊕ P_{v_k} → M built from a basis of the top.
pub fn projective_cover(m: &AlgebraModule) -> Result<ModuleMap> {
    if m.is_zero() {
        return Err(Error::Input("projective cover of the zero module".into()));
    }
    let a = m.algebra();
    let pres = m.presentation();
    let parts = pres.gens.iter().map(|&(v, _)| projective_module(a, v)).collect::<Result<Vec<_>>>()?;
    let (cover, _) = direct_sum(&parts)?;
    // the cover basis of the presentation lists (k, b) in the same order as the direct sum
    Ok(ModuleMap { source: cover, target: m.clone(), matrix: pres.pi.clone() })
}

/// Kernel of the projective cover, as a submodule of the cover.
pub fn syzygy(m: &AlgebraModule) -> Result<(AlgebraModule, ModuleMap)> {
    let cover = projective_cover(m)?;
    let ker = Subspace::span(cover.source.dim(), m.presentation().kernel.clone());
    Ok(cover.source.submodule_on(&ker, format!("Ω({})", m.label())))
}

/// dim of the projective cover of the top equals dim M.
pub fn is_projective(m: &AlgebraModule) -> bool {
    if m.is_zero() {
        return true;
    }
    m.presentation().kernel.is_empty()
}

/// Projective dimension, or `None` when it exceeds `bound`.
pub fn projective_dimension(m: &AlgebraModule, bound: usize) -> Option<usize> {
    let mut cur = m.clone();
    for d in 0..=bound {
        if is_projective(&cur) {
            return Some(d);
        }
        cur = syzygy(&cur).ok()?.0;
    }
    None
}

/// Ext^1 with a basis of representing cocycles in Hom(ΩM, N).
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    pub cocycles: Vec<ModuleMap>,
}

/// Ext^1(M, N) = coker(Hom(P, N) → Hom(ΩM, N)) for the projective cover P → M.
pub fn ext1(m: &AlgebraModule, n: &AlgebraModule) -> Result<Ext1> {
    if !super::same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Input("ext1: modules over different algebras".into()));
    }
    if m.is_zero() || n.is_zero() || is_projective(m) {
        return Ok(Ext1 { dim: 0, cocycles: Vec::new() });
    }
    let (omega, incl) = syzygy(m)?;
    let h = hom_space(&omega, n)?;
    if h.dim() == 0 {
        return Ok(Ext1 { dim: 0, cocycles: Vec::new() });
    }
    let a = m.algebra();
    let pres = m.presentation();
    // Hom(P, N) = ⊕ e_{v_k} N: a generator image determines the map on the cover
    let mut restricted: Vec<Vec<Rational>> = Vec::new();
    for (k, &(v, _)) in pres.gens.iter().enumerate() {
        for c in n.vertex_indices(v) {
            let cols: Vec<Vec<Rational>> = pres
                .cover_basis
                .iter()
                .map(|&(kk, b)| if kk == k { n.action(b).column(c) } else { zero_vec(n.dim()) })
                .collect();
            let phi = RationalMatrix::from_columns(&cols, n.dim());
            let r = phi.mul(&incl.matrix);
            restricted.push(h.coords(&r).expect("restriction is not a homomorphism"));
        }
    }
    let _ = a;
    let image = Subspace::span(h.dim(), restricted);
    let cocycles = image.complement_indices().into_iter().map(|i| h.map(i)).collect::<Vec<_>>();
    Ok(Ext1 { dim: h.dim() - image.dim(), cocycles })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalDimension {
    Finite(usize),
    Exceeds(usize),
}

impl std::fmt::Display for GlobalDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlobalDimension::Finite(d) => write!(f, "{d}"),
            GlobalDimension::Exceeds(b) => write!(f, ">{b}"),
        }
    }
}

/// Maximum projective dimension of the simples, truncated at `bound`.
pub fn global_dimension(a: &Arc<FiniteDimAlgebra>, bound: usize) -> Result<GlobalDimension> {
    let mut best = 0;
    for i in 0..a.vertex_count() {
        let s = simple_module(a, i)?;
        match projective_dimension(&s, bound) {
            Some(d) => best = best.max(d),
            None => return Ok(GlobalDimension::Exceeds(bound)),
        }
    }
    Ok(GlobalDimension::Finite(best))
}

/// Indecomposable injective at vertex i: the dual of the right projective e_i A.
pub fn injective_module(a: &Arc<FiniteDimAlgebra>, op: &Arc<FiniteDimAlgebra>, i: usize) -> Result<AlgebraModule> {
    let right = projective_module(op, i)?;
    Ok(right.dualize(a)?.with_label(format!("I{}", a.vertex_labels()[i])))
}

/// Every indecomposable injective is projective.
pub fn is_self_injective(a: &FiniteDimAlgebra) -> bool {
    let a = Arc::new(a.clone());
    let op = Arc::new(a.opposite());
    let projectives: Vec<AlgebraModule> =
        (0..a.vertex_count()).map(|j| projective_module(&a, j).expect("vertex in range")).collect();
    (0..a.vertex_count()).all(|i| {
        let inj = injective_module(&a, &op, i).expect("vertex in range");
        projectives.iter().any(|p| p.dim() == inj.dim() && p.dim_vector() == inj.dim_vector() && is_isomorphic(p, &inj))
    })
}

#[allow(dead_code)]
fn is_zero_matrix(m: &RationalMatrix) -> bool {
    m.entries().iter().all(Zero::is_zero)
}
