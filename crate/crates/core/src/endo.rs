//! Endomorphism algebras of finite module collections, E_R, the ADR algebra, and
//! structural comparison of independently built algebras.

use std::sync::Arc;

use itertools::Itertools;
use num_traits::Zero;

use crate::algebra::{BasisElement, FiniteDimAlgebra, Provenance, Quiver, SparseVec};
use crate::error::{Error, Result};
use crate::generators::adr_family;
use crate::ideals::{ensure_monomial, is_ideally_ordered, iso_classes, MonomialIdeal};
use crate::linalg::{zero_vec, Rational, RationalMatrix};
use crate::modules::{hom_space, is_indecomposable, is_isomorphic, AlgebraModule, HomSpace};

/// End(⊕ M_i) with one idempotent per summand: e_j A e_i = Hom(M_i, M_j) and the product
/// is composition.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    pub algebra: Arc<FiniteDimAlgebra>,
    pub labels: Vec<String>,
    pub modules: Vec<AlgebraModule>,
    /// `hom[i][j]` = Hom(M_i, M_j).
    pub hom: Vec<Vec<HomSpace>>,
    /// First algebra basis index of the block Hom(M_i, M_j).
    pub offsets: Vec<Vec<usize>>,
    /// Summands corresponding to the regular module (the idempotent e_0).
    pub e0: Vec<usize>,
    /// Ideal layer of each summand, when the summands are ideals.
    pub layers: Option<Vec<usize>>,
    /// Ideals of the base algebra indexing the summands (E_R only).
    pub ideals: Option<Vec<MonomialIdeal>>,
    pub ideally_ordered: Option<bool>,
}

impl EndoAlgebra {
    pub fn vertex_count(&self) -> usize {
        self.modules.len()
    }

    /// dim Hom(M_i, M_j), indexed `[i][j]`.
    pub fn dim_grid(&self) -> Vec<Vec<usize>> {
        self.hom.iter().map(|row| row.iter().map(HomSpace::dim).collect()).collect()
    }

    /// Algebra vector of a map M_i → M_j.
    pub fn element_of_map(&self, i: usize, j: usize, f: &RationalMatrix) -> Option<Vec<Rational>> {
        let c = self.hom[i][j].coords(f)?;
        let mut v = zero_vec(self.algebra.dim());
        for (k, x) in c.into_iter().enumerate() {
            v[self.offsets[i][j] + k] = x;
        }
        Some(v)
    }

    /// The block of `v` in e_j A e_i as a map M_i → M_j.
    pub fn map_of_element(&self, i: usize, j: usize, v: &[Rational]) -> RationalMatrix {
        let h = &self.hom[i][j];
        let off = self.offsets[i][j];
        h.combination(&v[off..off + h.dim()])
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        self.algebra.cartan_matrix()
    }

    pub fn gabriel_quiver(&self) -> Quiver {
        gabriel_quiver(&self.algebra)
    }
}

/// Builds the endomorphism algebra of pairwise non-isomorphic indecomposable modules.
pub fn endomorphism_algebra(modules: &[AlgebraModule], labels: &[String]) -> Result<EndoAlgebra> {
    if modules.is_empty() {
        return Err(Error::Input("endomorphism algebra of an empty collection".into()));
    }
    if labels.len() != modules.len() {
        return Err(Error::Input("one label per module is required".into()));
    }
    for (i, m) in modules.iter().enumerate() {
        if m.is_zero() || !is_indecomposable(m)? {
            return Err(Error::Input(format!("module '{}' is not indecomposable", labels[i])));
        }
        for (j, n) in modules[..i].iter().enumerate() {
            if is_isomorphic(m, n) {
                return Err(Error::Input(format!("modules '{}' and '{}' are isomorphic", labels[j], labels[i])));
            }
        }
    }
    let r = modules.len();
    let mut hom = Vec::with_capacity(r);
    for m in modules {
        hom.push(modules.iter().map(|n| hom_space(m, n)).collect::<Result<Vec<_>>>()?);
    }
    let mut offsets = vec![vec![0; r]; r];
    let mut basis = Vec::new();
    for i in 0..r {
        for j in 0..r {
            offsets[i][j] = basis.len();
            for k in 0..hom[i][j].dim() {
                basis.push(BasisElement {
                    name: format!("{}<-{}#{}", labels[j], labels[i], k),
                    source: i,
                    target: j,
                    grade: None,
                });
            }
        }
    }
    let n = basis.len();
    let mut table: Vec<SparseVec> = vec![Vec::new(); n * n];
    // (f: M_i -> M_j) * (g: M_k -> M_i) = f∘g in Hom(M_k, M_j)
    for i in 0..r {
        for j in 0..r {
            for (p, f) in hom[i][j].basis.iter().enumerate() {
                for k in 0..r {
                    for (s, g) in hom[k][i].basis.iter().enumerate() {
                        let c = hom[k][j].coords(&f.mul(g)).expect("composite is a homomorphism");
                        let off = offsets[k][j];
                        table[(offsets[i][j] + p) * n + offsets[k][i] + s] = c
                            .into_iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(t, x)| (off + t, x))
                            .collect();
                    }
                }
            }
        }
    }
    let idempotents = (0..r)
        .map(|i| {
            let id = RationalMatrix::identity(modules[i].dim());
            let c = hom[i][i].coords(&id).expect("identity is an endomorphism");
            c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(t, x)| (offsets[i][i] + t, x)).collect()
        })
        .collect();
    let name = format!("End({})", modules[0].algebra().name());
    let algebra = FiniteDimAlgebra::new_checked(
        name,
        labels.to_vec(),
        basis,
        table,
        idempotents,
        Provenance::Endomorphism,
        None,
    )?;
    Ok(EndoAlgebra {
        algebra: Arc::new(algebra),
        labels: labels.to_vec(),
        modules: modules.to_vec(),
        hom,
        offsets,
        e0: Vec::new(),
        layers: None,
        ideals: None,
        ideally_ordered: None,
    })
}

/// E_R = End_R of the monomial ideal classes, labelled 0, 1, ... in layer order.
pub fn build_er(r: &Arc<FiniteDimAlgebra>) -> Result<EndoAlgebra> {
    ensure_monomial(r)?;
    let classes = iso_classes(r)?;
    let modules: Vec<AlgebraModule> = classes.iter().map(MonomialIdeal::module).collect();
    let labels: Vec<String> = (0..classes.len()).map(|i| i.to_string()).collect();
    let mut e = endomorphism_algebra(&modules, &labels)?;
    let name = format!("E({})", r.name());
    e.algebra = Arc::new((*e.algebra).clone().with_name(name));
    e.e0 = (0..classes.len()).filter(|&i| classes[i].is_lazy()).collect();
    e.layers = Some(classes.iter().map(MonomialIdeal::layer).collect());
    e.ideally_ordered = Some(is_ideally_ordered(r)?.ordered);
    e.ideals = Some(classes);
    Ok(e)
}

/// The ADR algebra End(⊕ Re/rad^l Re).
pub fn build_adr(r: &Arc<FiniteDimAlgebra>) -> Result<EndoAlgebra> {
    let family = adr_family(r)?;
    let modules: Vec<AlgebraModule> = family.iter().map(|m| m.module.clone()).collect();
    let labels: Vec<String> = family.iter().map(|m| format!("{}/{}", r.vertex_labels()[m.vertex], m.length)).collect();
    let mut e = endomorphism_algebra(&modules, &labels)?;
    e.algebra = Arc::new((*e.algebra).clone().with_name(format!("ADR({})", r.name())));
    e.e0 = family
        .iter()
        .enumerate()
        .filter(|(_, m)| m.module.dim() == r.basis_with_source(m.vertex).len())
        .map(|(i, _)| i)
        .collect();
    Ok(e)
}

/// Gabriel quiver: one arrow i → j per dimension of e_j (rad/rad²) e_i.
pub fn gabriel_quiver(a: &FiniteDimAlgebra) -> Quiver {
    let counts = a.gabriel_arrow_counts();
    let labels = a.vertex_labels();
    let mut arrows = Vec::new();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            for k in 0..c {
                arrows.push(crate::algebra::Arrow {
                    label: format!("g{}_{}_{}", labels[i], labels[j], k),
                    source: i,
                    target: j,
                });
            }
        }
    }
    Quiver::from_parts(labels.to_vec(), arrows)
}

/// Permutations p of 0..n (vertex i of the first object ↦ p[i]) with `same(i, j, p[i], p[j])`
/// for all pairs, in lexicographic order.
pub fn matching_permutations(n: usize, same: impl Fn(usize, usize, usize, usize) -> bool) -> Vec<Vec<usize>> {
    (0..n).permutations(n).filter(|p| (0..n).all(|i| (0..n).all(|j| same(i, j, p[i], p[j])))).collect()
}

/// Tier-2 comparison: a vertex bijection preserving Gabriel arrow counts and Cartan entries,
/// with equal radical layer dimensions. Limited to 8 vertices.
pub fn tier2_isomorphism(a: &FiniteDimAlgebra, b: &FiniteDimAlgebra) -> Result<Option<Vec<usize>>> {
    let n = a.vertex_count();
    if n > 8 {
        return Err(Error::Unsupported("tier-2 comparison is limited to 8 vertices".into()));
    }
    if n != b.vertex_count() || a.dim() != b.dim() || a.radical_layer_dims() != b.radical_layer_dims() {
        return Ok(None);
    }
    let (ga, gb) = (a.gabriel_arrow_counts(), b.gabriel_arrow_counts());
    let (ca, cb) = (a.cartan_matrix(), b.cartan_matrix());
    Ok(matching_permutations(n, |i, j, pi, pj| ga[i][j] == gb[pi][pj] && ca[i][j] == cb[pi][pj]).into_iter().next())
}

/// Tier-3 comparison: a bijection of summands matching the Hom-dimension grid, restricted
/// to bijections allowed by `allowed(i, p_i)`.
pub fn grid_matching(a: &[Vec<usize>], b: &[Vec<usize>], allowed: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    // backtracking: assign vertices in order, checking all earlier pairs
    fn go(
        a: &[Vec<usize>],
        b: &[Vec<usize>],
        allowed: &dyn Fn(usize, usize) -> bool,
        p: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = p.len();
        if i == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c] || !allowed(i, c) {
                continue;
            }
            let ok = a[i][i] == b[c][c] && (0..i).all(|k| a[i][k] == b[c][p[k]] && a[k][i] == b[p[k]][c]);
            if ok {
                p.push(c);
                used[c] = true;
                if go(a, b, allowed, p, used) {
                    return true;
                }
                used[c] = false;
                p.pop();
            }
        }
        false
    }
    let mut p = Vec::new();
    let mut used = vec![false; n];
    go(a, b, &allowed, &mut p, &mut used).then_some(p)
}

/// Checks e_0 E_R e_0 ≅ R^op through r ↦ (x ↦ x·r): bijective and ρ_r ρ_s = ρ_{sr}.
pub fn check_corner_is_opposite(er: &EndoAlgebra, r: &FiniteDimAlgebra) -> Result<bool> {
    let rho = right_multiplications(er, r)?;
    let e0_dim: usize = er.e0.iter().flat_map(|&i| er.e0.iter().map(move |&j| er.hom[i][j].dim())).sum();
    if e0_dim != r.dim() || crate::linalg::rank_of(&rho, er.algebra.dim()) != r.dim() {
        return Ok(false);
    }
    for s in 0..r.dim() {
        for t in 0..r.dim() {
            let lhs = er.algebra.mul(&rho[t], &rho[s]);
            let mut rhs = zero_vec(er.algebra.dim());
            for (k, x) in r.product(s, t) {
                for (y, z) in rhs.iter_mut().zip(&rho[*k]) {
                    *y += x * z;
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For every basis path r of R, the element ρ_r ∈ e_0 E_R e_0 given by right multiplication
/// Re_{t(r)} → Re_{s(r)}.
pub fn right_multiplications(er: &EndoAlgebra, r: &FiniteDimAlgebra) -> Result<Vec<Vec<Rational>>> {
    let ideals = er.ideals.as_ref().ok_or_else(|| Error::Input("not an E_R algebra".into()))?;
    let summand_of = |v: usize| -> Result<usize> {
        let e = r.idempotent_basis_index(v).ok_or_else(|| Error::Unsupported("non-monomial base".into()))?;
        er.e0
            .iter()
            .copied()
            .find(|&i| ideals[i].generator() == e)
            .ok_or_else(|| Error::Build(format!("no summand for the projective at {}", r.vertex_labels()[v])))
    };
    let mut out = Vec::with_capacity(r.dim());
    for b in 0..r.dim() {
        let (v, w) = (r.basis()[b].target, r.basis()[b].source);
        let (i, j) = (summand_of(v)?, summand_of(w)?);
        let (src, tgt) = (ideals[i].basis(), ideals[j].basis());
        let mut f = RationalMatrix::zeros(tgt.len(), src.len());
        for (c, &x) in src.iter().enumerate() {
            for (k, y) in r.product(x, b) {
                let row = tgt.iter().position(|t| t == k).expect("x·r lies in Re_s");
                f.set(row, c, y.clone());
            }
        }
        let v = er
            .element_of_map(i, j, &f)
            .ok_or_else(|| Error::TheoremViolation("right multiplication is not R-linear".into()))?;
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_monomial_algebra;
    use crate::generators::{fixtures, knorrer, truncated};

    fn er_of(p: crate::algebra::MonomialPresentation) -> (Arc<FiniteDimAlgebra>, EndoAlgebra) {
        let r = Arc::new(build_monomial_algebra(&p).unwrap());
        let e = build_er(&r).unwrap();
        (r, e)
    }

    #[test]
    fn knorrer_grids() {
        let (r, e) = er_of(knorrer(5, 2).unwrap());
        assert_eq!(e.dim_grid(), vec![vec![5, 2, 1], vec![4, 2, 1], vec![2, 1, 1]]);
        assert_eq!(e.algebra.dim(), 19);
        assert!(check_corner_is_opposite(&e, &r).unwrap());
        let (_, e) = er_of(knorrer(5, 3).unwrap());
        assert_eq!(e.dim_grid(), vec![vec![5, 3, 1], vec![4, 3, 1], vec![3, 2, 1]]);
    }

    #[test]
    fn auslander_algebra_of_dual_numbers() {
        let (_, e) = er_of(truncated(&fixtures::jordan_quiver(), 2).unwrap());
        assert_eq!(e.algebra.dim(), 5);
        let q = e.gabriel_quiver();
        assert_eq!(q.arrows().len(), 2);
    }
}
