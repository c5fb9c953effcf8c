//! Finite-dimensional left modules, their maps, and homological algebra.

mod decompose;
mod hom;
mod homological;
mod loewy;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, zero_vec, Rational, RationalMatrix, Subspace};

pub use decompose::{decompose, is_indecomposable, is_isomorphic};
pub use hom::{hom_space, HomSpace};
pub use homological::{
    ext1, global_dimension, is_projective, is_self_injective, projective_cover, projective_dimension, syzygy, Ext1,
    GlobalDimension,
};
pub use loewy::{is_rigid, loewy_data, render_loewy, LoewyData};

pub(crate) use hom::Presentation;

struct ModuleData {
    algebra: Arc<FiniteDimAlgebra>,
    vertex_of: Vec<usize>,
    action: Vec<RationalMatrix>,
    label: String,
    presentation: OnceLock<Presentation>,
}

/// A left module over a finite-dimensional algebra, with a basis adapted to the idempotents:
/// basis vector k lies in e_{vertex_of[k]} M.
#[derive(Clone)]
pub struct AlgebraModule(Arc<ModuleData>);

impl fmt::Debug for AlgebraModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraModule({}, dim {}, factors {:?})", self.label(), self.dim(), self.dim_vector())
    }
}

pub fn same_algebra(a: &Arc<FiniteDimAlgebra>, b: &Arc<FiniteDimAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraModule {
    /// Builds a module and checks that the action is a representation.
    pub fn new(
        algebra: Arc<FiniteDimAlgebra>,
        vertex_of: Vec<usize>,
        action: Vec<RationalMatrix>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let m = Self::from_parts(algebra, vertex_of, action, label);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(
        algebra: Arc<FiniteDimAlgebra>,
        vertex_of: Vec<usize>,
        action: Vec<RationalMatrix>,
        label: impl Into<String>,
    ) -> Self {
        AlgebraModule(Arc::new(ModuleData {
            algebra,
            vertex_of,
            action,
            label: label.into(),
            presentation: OnceLock::new(),
        }))
    }

    pub fn algebra(&self) -> &Arc<FiniteDimAlgebra> {
        &self.0.algebra
    }

    pub fn dim(&self) -> usize {
        self.0.vertex_of.len()
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn with_label(&self, label: impl Into<String>) -> AlgebraModule {
        Self::from_parts(self.0.algebra.clone(), self.0.vertex_of.clone(), self.0.action.clone(), label)
    }

    pub fn vertex_of(&self) -> &[usize] {
        &self.0.vertex_of
    }

    /// Basis indices lying in e_i M.
    pub fn vertex_indices(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.0.vertex_of[k] == i).collect()
    }

    /// Action matrix of the algebra basis element `b`.
    pub fn action(&self, b: usize) -> &RationalMatrix {
        &self.0.action[b]
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, x: &[Rational]) -> RationalMatrix {
        let n = self.dim();
        let mut out = RationalMatrix::zeros(n, n);
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.0.action[b].scale(c));
            }
        }
        out
    }

    /// dim e_i M for each vertex; equals the composition multiplicities [M : S_i].
    pub fn dim_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.0.algebra.vertex_count()];
        for &v in &self.0.vertex_of {
            d[v] += 1;
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub(crate) fn presentation(&self) -> &Presentation {
        self.0.presentation.get_or_init(|| Presentation::compute(self))
    }

    /// Checks ρ(e_i), the Peirce adaptation of the basis, and multiplicativity.
    pub fn validate(&self) -> Result<()> {
        let a = &self.0.algebra;
        let n = self.dim();
        if self.0.action.len() != a.dim() {
            return Err(Error::Input("module needs one action matrix per algebra basis element".into()));
        }
        if self.0.action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Input("action matrix has the wrong shape".into()));
        }
        for i in 0..a.vertex_count() {
            let e = self.action_of(&a.idempotent(i));
            for r in 0..n {
                for c in 0..n {
                    let expect = r == c && self.0.vertex_of[r] == i;
                    let x = e.get(r, c);
                    if (expect && *x != crate::linalg::q(1)) || (!expect && !x.is_zero()) {
                        return Err(Error::Input(format!("idempotent e_{i} acts incorrectly")));
                    }
                }
            }
        }
        let d = a.dim();
        let work = d * d * n * n * n;
        let pairs: Vec<(usize, usize)> = if work <= 1_000_000 {
            (0..d).flat_map(|x| (0..d).map(move |y| (x, y))).collect()
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            (0..200).map(|_| (rng.random_range(0..d), rng.random_range(0..d))).collect()
        };
        for (x, y) in pairs {
            if a.basis()[x].source != a.basis()[y].target {
                if !self.0.action[x].mul(&self.0.action[y]).is_zero() {
                    return Err(Error::Input("action is not multiplicative".into()));
                }
                continue;
            }
            let lhs = self.action_of(&dense_product(a, x, y));
            if lhs != self.0.action[x].mul(&self.0.action[y]) {
                return Err(Error::Input("action is not multiplicative".into()));
            }
        }
        Ok(())
    }

    /// The same module viewed over a structurally equal algebra handle.
    pub fn rebind(&self, algebra: &Arc<FiniteDimAlgebra>) -> Result<AlgebraModule> {
        if !same_algebra(&self.0.algebra, algebra) {
            return Err(Error::Input("rebind: algebras differ".into()));
        }
        Ok(Self::from_parts(algebra.clone(), self.0.vertex_of.clone(), self.0.action.clone(), self.0.label.clone()))
    }

    /// A-span of `vectors`, as a subspace of this module.
    pub fn span_closure(&self, vectors: &[Vec<Rational>]) -> Subspace {
        let a = &self.0.algebra;
        let mut out = Vec::new();
        for v in vectors {
            if is_zero_vec(v) {
                continue;
            }
            for b in 0..a.dim() {
                let w = self.0.action[b].mul_vec(v);
                if !is_zero_vec(&w) {
                    out.push(w);
                }
            }
        }
        Subspace::span(self.dim(), out)
    }

    /// The submodule on an A-stable subspace, with its inclusion map.
    pub fn submodule_on(&self, sub: &Subspace, label: impl Into<String>) -> (AlgebraModule, ModuleMap) {
        let a = &self.0.algebra;
        let basis = sub.basis();
        let k = basis.len();
        let vertex_of: Vec<usize> = sub.pivots().iter().map(|&p| self.0.vertex_of[p]).collect();
        let action = (0..a.dim())
            .map(|b| {
                let cols: Vec<Vec<Rational>> = basis
                    .iter()
                    .map(|v| sub.coords(&self.0.action[b].mul_vec(v)).expect("subspace is not A-stable"))
                    .collect();
                RationalMatrix::from_columns(&cols, k)
            })
            .collect();
        let m = Self::from_parts(a.clone(), vertex_of, action, label);
        let incl = RationalMatrix::from_columns(basis, self.dim());
        let map = ModuleMap { source: m.clone(), target: self.clone(), matrix: incl };
        (m, map)
    }

    /// The quotient by an A-stable subspace, with its projection map.
    pub fn quotient_by(&self, sub: &Subspace, label: impl Into<String>) -> (AlgebraModule, ModuleMap) {
        let a = &self.0.algebra;
        let keep = sub.complement_indices();
        let k = keep.len();
        let project = |v: &[Rational]| -> Vec<Rational> {
            let red = sub.reduce(v);
            keep.iter().map(|&i| red[i].clone()).collect()
        };
        let vertex_of: Vec<usize> = keep.iter().map(|&i| self.0.vertex_of[i]).collect();
        let action = (0..a.dim())
            .map(|b| {
                let cols: Vec<Vec<Rational>> = keep.iter().map(|&i| project(&self.0.action[b].column(i))).collect();
                RationalMatrix::from_columns(&cols, k)
            })
            .collect();
        let m = Self::from_parts(a.clone(), vertex_of, action, label);
        let cols: Vec<Vec<Rational>> =
            (0..self.dim()).map(|i| project(&crate::linalg::unit_vec(self.dim(), i))).collect();
        let proj = RationalMatrix::from_columns(&cols, k);
        let map = ModuleMap { source: self.clone(), target: m.clone(), matrix: proj };
        (m, map)
    }

    /// Submodule generated by `vectors`, with inclusion.
    pub fn submodule_generated(
        &self,
        vectors: &[Vec<Rational>],
        label: impl Into<String>,
    ) -> (AlgebraModule, ModuleMap) {
        let sub = self.span_closure(vectors);
        self.submodule_on(&sub, label)
    }

    /// rad(A)·X for a subspace X.
    pub fn radical_of(&self, x: &Subspace) -> Subspace {
        let rad = self.0.algebra.radical_basis();
        let acts: Vec<RationalMatrix> = rad.iter().map(|r| self.action_of(r)).collect();
        let mut out = Vec::new();
        for m in &acts {
            for v in x.basis() {
                let w = m.mul_vec(v);
                if !is_zero_vec(&w) {
                    out.push(w);
                }
            }
        }
        Subspace::span(self.dim(), out)
    }

    pub fn radical(&self) -> Subspace {
        self.radical_of(&Subspace::full(self.dim()))
    }

    /// Vector space dual, a left module over the opposite algebra.
    pub fn dualize(&self, opposite: &Arc<FiniteDimAlgebra>) -> Result<AlgebraModule> {
        let a = &self.0.algebra;
        if opposite.dim() != a.dim() || opposite.vertex_count() != a.vertex_count() {
            return Err(Error::Input("dualize: algebra is not the opposite of the module's algebra".into()));
        }
        let action = self.0.action.iter().map(RationalMatrix::transpose).collect();
        Ok(Self::from_parts(opposite.clone(), self.0.vertex_of.clone(), action, format!("D({})", self.0.label)))
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap { source: self.clone(), target: self.clone(), matrix: RationalMatrix::identity(self.dim()) }
    }
}

fn dense_product(a: &FiniteDimAlgebra, x: usize, y: usize) -> Vec<Rational> {
    let mut v = zero_vec(a.dim());
    for (k, c) in a.product(x, y) {
        v[*k] = c.clone();
    }
    v
}

/// The projective module A e_i.
pub fn projective_module(a: &Arc<FiniteDimAlgebra>, i: usize) -> Result<AlgebraModule> {
    if i >= a.vertex_count() {
        return Err(Error::Input(format!("no idempotent with index {i}")));
    }
    let idx = a.basis_with_source(i);
    Ok(column_module(a, &idx, format!("P{}", a.vertex_labels()[i])))
}

/// The regular module A.
pub fn regular_module(a: &Arc<FiniteDimAlgebra>) -> AlgebraModule {
    let idx: Vec<usize> = (0..a.dim()).collect();
    column_module(a, &idx, a.name().to_string())
}

/// Left ideal spanned by the basis elements `idx` (must be closed under left multiplication).
pub(crate) fn column_module(a: &Arc<FiniteDimAlgebra>, idx: &[usize], label: String) -> AlgebraModule {
    let pos = |b: usize| idx.iter().position(|&c| c == b);
    let k = idx.len();
    let vertex_of = idx.iter().map(|&c| a.basis()[c].target).collect();
    let action = (0..a.dim())
        .map(|b| {
            let mut m = RationalMatrix::zeros(k, k);
            for (j, &c) in idx.iter().enumerate() {
                for (t, x) in a.product(b, c) {
                    let i = pos(*t).expect("basis span is not a left ideal");
                    m.set(i, j, x.clone());
                }
            }
            m
        })
        .collect();
    AlgebraModule::from_parts(a.clone(), vertex_of, action, label)
}

/// The simple module S_i = top(A e_i).
pub fn simple_module(a: &Arc<FiniteDimAlgebra>, i: usize) -> Result<AlgebraModule> {
    let p = projective_module(a, i)?;
    let rad = p.radical();
    Ok(p.quotient_by(&rad, format!("S{}", a.vertex_labels()[i])).0)
}

/// Direct sum with the canonical injections.
pub fn direct_sum(parts: &[AlgebraModule]) -> Result<(AlgebraModule, Vec<ModuleMap>)> {
    let Some(first) = parts.first() else {
        return Err(Error::Input("direct sum of no modules".into()));
    };
    let a = first.algebra().clone();
    if parts.iter().any(|m| !same_algebra(m.algebra(), &a)) {
        return Err(Error::Input("direct sum over different algebras".into()));
    }
    let n: usize = parts.iter().map(AlgebraModule::dim).sum();
    let mut vertex_of = Vec::new();
    for m in parts {
        vertex_of.extend_from_slice(m.vertex_of());
    }
    let action = (0..a.dim())
        .map(|b| {
            let mut out = RationalMatrix::zeros(n, n);
            let mut off = 0;
            for m in parts {
                let x = m.action(b);
                for r in 0..m.dim() {
                    for c in 0..m.dim() {
                        let v = x.get(r, c);
                        if !v.is_zero() {
                            out.set(off + r, off + c, v.clone());
                        }
                    }
                }
                off += m.dim();
            }
            out
        })
        .collect();
    let label = parts.iter().map(|m| m.label().to_string()).collect::<Vec<_>>().join(" + ");
    let sum = AlgebraModule::from_parts(a, vertex_of, action, label);
    let mut maps = Vec::new();
    let mut off = 0;
    for m in parts {
        let mut mat = RationalMatrix::zeros(n, m.dim());
        for i in 0..m.dim() {
            mat.set(off + i, i, crate::linalg::q(1));
        }
        maps.push(ModuleMap { source: m.clone(), target: sum.clone(), matrix: mat });
        off += m.dim();
    }
    Ok((sum, maps))
}

/// A module homomorphism; `matrix` is dim(target) × dim(source).
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: AlgebraModule,
    pub target: AlgebraModule,
    pub matrix: RationalMatrix,
}

/// Kernel, image and cokernel of a map, with their structure maps.
#[derive(Clone, Debug)]
pub struct MapCalculus {
    pub kernel: AlgebraModule,
    pub kernel_inclusion: ModuleMap,
    pub image: AlgebraModule,
    pub image_inclusion: ModuleMap,
    pub cokernel: AlgebraModule,
    pub cokernel_projection: ModuleMap,
}

impl ModuleMap {
    pub fn new(source: AlgebraModule, target: AlgebraModule, matrix: RationalMatrix) -> Result<Self> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::Input("map between modules over different algebras".into()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Input("map matrix has the wrong shape".into()));
        }
        let f = ModuleMap { source, target, matrix };
        if !f.is_homomorphism() {
            return Err(Error::Input("matrix does not intertwine the actions".into()));
        }
        Ok(f)
    }

    pub fn is_homomorphism(&self) -> bool {
        let a = self.source.algebra();
        (0..a.dim()).all(|b| self.matrix.mul(self.source.action(b)) == self.target.action(b).mul(&self.matrix))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { source: other.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn kernel_space(&self) -> Subspace {
        Subspace::span(self.source.dim(), crate::linalg::kernel_basis(&self.matrix))
    }

    pub fn image_space(&self) -> Subspace {
        let cols = (0..self.matrix.cols()).map(|c| self.matrix.column(c));
        Subspace::span(self.target.dim(), cols)
    }

    pub fn calculus(&self) -> MapCalculus {
        let (kernel, kernel_inclusion) = self.source.submodule_on(&self.kernel_space(), "ker");
        let im = self.image_space();
        let (image, image_inclusion) = self.target.submodule_on(&im, "im");
        let (cokernel, cokernel_projection) = self.target.quotient_by(&im, "coker");
        MapCalculus { kernel, kernel_inclusion, image, image_inclusion, cokernel, cokernel_projection }
    }
}
