use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::quiver::{Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, zero_vec, Rational, RationalMatrix, Subspace};

pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Monomial,
    Presented,
    Endomorphism,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    /// Index of the idempotent e_s with b e_s = b.
    pub source: usize,
    /// Index of the idempotent e_t with e_t b = b.
    pub target: usize,
    pub grade: Option<usize>,
}

/// Path data for algebras presented by a quiver: basis element `i` is the class of `paths[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathData {
    pub quiver: Quiver,
    pub paths: Vec<Path>,
}

/// A finite-dimensional algebra given by structure constants on a basis adapted to a
/// complete set of primitive orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    name: String,
    vertex_labels: Vec<String>,
    basis: Vec<BasisElement>,
    table: Vec<SparseVec>,
    idempotents: Vec<SparseVec>,
    provenance: Provenance,
    path_data: Option<PathData>,
    radical: OnceLock<Vec<Vec<Rational>>>,
}

impl PartialEq for FiniteDimAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_labels == other.vertex_labels
            && self.basis == other.basis
            && self.table == other.table
            && self.idempotents == other.idempotents
    }
}

impl Eq for FiniteDimAlgebra {}

fn sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn dense(v: &SparseVec, n: usize) -> Vec<Rational> {
    let mut out = zero_vec(n);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

impl FiniteDimAlgebra {
    /// Assembles an algebra; `table[a * dim + b]` holds the product of basis elements a and b.
    pub fn from_parts(
        name: impl Into<String>,
        vertex_labels: Vec<String>,
        basis: Vec<BasisElement>,
        table: Vec<SparseVec>,
        idempotents: Vec<SparseVec>,
        provenance: Provenance,
        path_data: Option<PathData>,
    ) -> Self {
        FiniteDimAlgebra {
            name: name.into(),
            vertex_labels,
            basis,
            table,
            idempotents,
            provenance,
            path_data,
            radical: OnceLock::new(),
        }
    }

    /// As [`from_parts`](Self::from_parts) followed by [`validate`](Self::validate).
    pub fn new_checked(
        name: impl Into<String>,
        vertex_labels: Vec<String>,
        basis: Vec<BasisElement>,
        table: Vec<SparseVec>,
        idempotents: Vec<SparseVec>,
        provenance: Provenance,
        path_data: Option<PathData>,
    ) -> Result<Self> {
        let a = Self::from_parts(name, vertex_labels, basis, table, idempotents, provenance, path_data);
        a.validate()?;
        Ok(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn path_data(&self) -> Option<&PathData> {
        self.path_data.as_ref()
    }

    pub fn is_graded(&self) -> bool {
        !self.basis.is_empty() && self.basis.iter().all(|b| b.grade.is_some())
    }

    /// Product of two basis elements as a sparse vector.
    pub fn product(&self, a: usize, b: usize) -> &SparseVec {
        &self.table[a * self.dim() + b]
    }

    pub fn idempotent(&self, i: usize) -> Vec<Rational> {
        dense(&self.idempotents[i], self.dim())
    }

    pub fn idempotent_sparse(&self, i: usize) -> &SparseVec {
        &self.idempotents[i]
    }

    pub fn identity(&self) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for e in &self.idempotents {
            for (i, x) in e {
                out[*i] += x;
            }
        }
        out
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (k, v) in self.product(a, b) {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        crate::linalg::unit_vec(self.dim(), i)
    }

    /// For a monomial algebra: the basis element equal to the product, or `None` when zero.
    pub fn monomial_product(&self, a: usize, b: usize) -> Option<usize> {
        match self.product(a, b).as_slice() {
            [] => None,
            [(k, _)] => Some(*k),
            _ => panic!("monomial_product on a non-monomial product"),
        }
    }

    /// Every product of basis elements is zero or a single basis element, and every
    /// idempotent is a basis element.
    pub fn is_monomial(&self) -> bool {
        self.table.iter().all(|p| p.is_empty() || (p.len() == 1 && p[0].1.is_one()))
            && self.idempotents.iter().all(|e| e.len() == 1 && e[0].1.is_one())
    }

    /// Basis index of the idempotent e_i (monomial algebras only).
    pub fn idempotent_basis_index(&self, i: usize) -> Option<usize> {
        match self.idempotents[i].as_slice() {
            [(k, x)] if x.is_one() => Some(*k),
            _ => None,
        }
    }

    pub fn basis_with_source(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].source == i).collect()
    }

    pub fn basis_with_target(&self, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].target == j).collect()
    }

    /// Basis of e_j A e_i.
    pub fn block(&self, j: usize, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].target == j && self.basis[b].source == i).collect()
    }

    /// Cartan matrix, entry (i, j) = dim e_i A e_j.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut c = vec![vec![0; n]; n];
        for b in &self.basis {
            c[b.target][b.source] += 1;
        }
        c
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult_matrix(&self, x: &[Rational]) -> RationalMatrix {
        let n = self.dim();
        let mut m = RationalMatrix::zeros(n, n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for c in 0..n {
                for (k, v) in self.product(a, c) {
                    let cur = m.get(*k, c) + xa * v;
                    m.set(*k, c, cur);
                }
            }
        }
        m
    }

    /// Checks idempotents, Peirce adaptation of the basis and associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let r = self.vertex_count();
        if self.idempotents.len() != r {
            return Err(Error::Build("idempotent count differs from vertex count".into()));
        }
        for i in 0..r {
            let ei = self.idempotent(i);
            for j in 0..r {
                let ej = self.idempotent(j);
                let p = self.mul(&ei, &ej);
                let expect = if i == j { ei.clone() } else { zero_vec(n) };
                if p != expect {
                    return Err(Error::Build(format!("idempotents e_{i}, e_{j} are not orthogonal idempotents")));
                }
            }
        }
        let one = self.identity();
        for b in 0..n {
            let v = self.basis_vector(b);
            if self.mul(&one, &v) != v || self.mul(&v, &one) != v {
                return Err(Error::Build("idempotents do not sum to the identity".into()));
            }
            let bs = &self.basis[b];
            let et = self.idempotent(bs.target);
            let es = self.idempotent(bs.source);
            if self.mul(&et, &v) != v || self.mul(&v, &es) != v {
                return Err(Error::Build(format!("basis element {} is not in its Peirce block", bs.name)));
            }
        }
        self.check_associativity()
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.dim();
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            let mut left = zero_vec(n);
            for (k, x) in self.product(a, b) {
                for (m, y) in self.product(*k, c) {
                    left[*m] += x * y;
                }
            }
            let mut right = zero_vec(n);
            for (k, x) in self.product(b, c) {
                for (m, y) in self.product(a, *k) {
                    right[*m] += x * y;
                }
            }
            if left != right {
                return Err(Error::Build(format!(
                    "associativity fails on ({}, {}, {})",
                    self.basis[a].name, self.basis[b].name, self.basis[c].name
                )));
            }
            Ok(())
        };
        if n < 200 {
            for a in 0..n {
                for b in 0..n {
                    if self.basis[a].source != self.basis[b].target {
                        continue;
                    }
                    for c in 0..n {
                        if self.basis[b].source == self.basis[c].target {
                            check(a, b, c)?;
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..1000 {
                check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
            }
        }
        Ok(())
    }

    /// Basis of the Jacobson radical, adapted to the Peirce decomposition.
    pub fn radical_basis(&self) -> &[Vec<Rational>] {
        self.radical.get_or_init(|| self.compute_radical())
    }

    fn compute_radical(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        if self.is_graded() && self.graded_positive_part_nilpotent() {
            return (0..n).filter(|&b| self.basis[b].grade.unwrap() > 0).map(|b| self.basis_vector(b)).collect();
        }
        // trace form: rad = kernel of (a, b) -> Tr(L_{ab})
        let traces: Vec<Rational> = (0..n)
            .map(|k| {
                let mut t = Rational::zero();
                for m in 0..n {
                    for (i, x) in self.product(k, m) {
                        if *i == m {
                            t += x;
                        }
                    }
                }
                t
            })
            .collect();
        let mut g = RationalMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let mut s = Rational::zero();
                for (k, x) in self.product(a, b) {
                    s += x * &traces[*k];
                }
                g.set(a, b, s);
            }
        }
        let ker = kernel_basis(&g);
        self.peirce_adapt(&ker)
    }

    fn graded_positive_part_nilpotent(&self) -> bool {
        self.basis.iter().all(|b| b.grade.is_some())
            && (0..self.dim()).all(|a| {
                (0..self.dim()).all(|b| {
                    let ga = self.basis[a].grade.unwrap();
                    let gb = self.basis[b].grade.unwrap();
                    self.product(a, b).iter().all(|(k, _)| self.basis[*k].grade == Some(ga + gb))
                })
            })
    }

    /// Re-expresses the span of `vectors` (assumed Peirce-graded) in a block-adapted rref basis.
    pub fn peirce_adapt(&self, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let r = self.vertex_count();
        let mut out = Vec::new();
        for t in 0..r {
            for s in 0..r {
                let idx = self.block(t, s);
                if idx.is_empty() {
                    continue;
                }
                let proj = vectors.iter().map(|v| {
                    let mut w = zero_vec(n);
                    for &i in &idx {
                        w[i] = v[i].clone();
                    }
                    w
                });
                out.extend(Subspace::span(n, proj).basis().iter().cloned());
            }
        }
        out
    }

    /// Basis of rad^k.
    pub fn radical_power_basis(&self, k: usize) -> Vec<Vec<Rational>> {
        let n = self.dim();
        if k == 0 {
            return (0..n).map(|b| self.basis_vector(b)).collect();
        }
        if self.is_graded() && self.graded_positive_part_nilpotent() {
            return (0..n).filter(|&b| self.basis[b].grade.unwrap() >= k).map(|b| self.basis_vector(b)).collect();
        }
        let rad = self.radical_basis().to_vec();
        let mut cur = rad.clone();
        for _ in 1..k {
            let mut prods = Vec::new();
            for x in &rad {
                for y in &cur {
                    prods.push(self.mul(x, y));
                }
            }
            cur = self.peirce_adapt(&prods);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    /// Dimensions of e_j (rad / rad^2) e_i, indexed `[i][j]`: arrows i → j of the Gabriel quiver.
    pub fn gabriel_arrow_counts(&self) -> Vec<Vec<usize>> {
        let r = self.vertex_count();
        let rad = self.radical_basis();
        let rad2 = self.radical_power_basis(2);
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let idx = self.block(j, i);
                        let count =
                            |vs: &[Vec<Rational>]| vs.iter().filter(|v| idx.iter().any(|&b| !v[b].is_zero())).count();
                        count(rad) - count(&rad2)
                    })
                    .collect()
            })
            .collect()
    }

    /// dim rad^k / rad^(k+1) for k = 0, 1, ... until zero.
    pub fn radical_layer_dims(&self) -> Vec<usize> {
        let mut dims = Vec::new();
        let mut k = 0;
        loop {
            let d = self.radical_power_basis(k).len();
            dims.push(d);
            if d == 0 {
                break;
            }
            k += 1;
        }
        dims.windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// The opposite algebra: same basis, reversed multiplication.
    pub fn opposite(&self) -> FiniteDimAlgebra {
        let n = self.dim();
        let basis = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| BasisElement {
                name: match &self.path_data {
                    Some(pd) => pd.paths[i].reversed().name(&pd.quiver.reversed()),
                    None => b.name.clone(),
                },
                source: b.target,
                target: b.source,
                grade: b.grade,
            })
            .collect();
        let mut table = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.product(b, a).clone();
            }
        }
        let path_data = self
            .path_data
            .as_ref()
            .map(|pd| PathData { quiver: pd.quiver.reversed(), paths: pd.paths.iter().map(Path::reversed).collect() });
        let name = match self.name.strip_suffix("^op") {
            Some(s) => s.to_string(),
            None => format!("{}^op", self.name),
        };
        FiniteDimAlgebra::from_parts(
            name,
            self.vertex_labels.clone(),
            basis,
            table,
            self.idempotents.clone(),
            match self.provenance {
                Provenance::Monomial => Provenance::Monomial,
                _ => Provenance::Derived,
            },
            path_data,
        )
    }

    /// eAe for e the sum of the chosen idempotents.
    pub fn corner(&self, subset: &[usize]) -> Result<FiniteDimAlgebra> {
        if subset.is_empty() {
            return Err(Error::Input("corner: empty vertex subset".into()));
        }
        let mut vs: Vec<usize> = subset.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.iter().any(|&v| v >= self.vertex_count()) {
            return Err(Error::Input("corner: vertex out of range".into()));
        }
        let new_vertex = |v: usize| vs.iter().position(|&w| w == v);
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&b| new_vertex(self.basis[b].source).is_some() && new_vertex(self.basis[b].target).is_some())
            .collect();
        let new_index = |b: usize| keep.iter().position(|&c| c == b);
        let m = keep.len();
        let basis = keep
            .iter()
            .map(|&b| {
                let e = &self.basis[b];
                BasisElement {
                    name: e.name.clone(),
                    source: new_vertex(e.source).unwrap(),
                    target: new_vertex(e.target).unwrap(),
                    grade: e.grade,
                }
            })
            .collect();
        let mut table = vec![Vec::new(); m * m];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                table[i * m + j] =
                    self.product(a, b).iter().map(|(k, x)| (new_index(*k).unwrap(), x.clone())).collect();
            }
        }
        let idempotents = vs
            .iter()
            .map(|&v| self.idempotents[v].iter().map(|(k, x)| (new_index(*k).unwrap(), x.clone())).collect())
            .collect();
        let path_data = self.path_data.as_ref().map(|pd| PathData {
            quiver: pd.quiver.clone(),
            paths: keep.iter().map(|&b| pd.paths[b].clone()).collect(),
        });
        let provenance =
            if self.provenance == Provenance::Monomial { Provenance::Monomial } else { Provenance::Derived };
        Ok(FiniteDimAlgebra::from_parts(
            format!("{}[corner]", self.name),
            vs.iter().map(|&v| self.vertex_labels[v].clone()).collect(),
            basis,
            table,
            idempotents,
            provenance,
            path_data.filter(|_| vs.len() == self.vertex_count()),
        ))
    }

    /// A/J for a two-sided ideal J spanned by `ideal`. Vertices whose idempotent lies in J
    /// are dropped. Returns the quotient and the list of surviving vertices.
    pub fn quotient(&self, ideal: &[Vec<Rational>]) -> (FiniteDimAlgebra, Vec<usize>) {
        let n = self.dim();
        let adapted = self.peirce_adapt(ideal);
        let sub = Subspace::span(n, adapted);
        let keep = sub.complement_indices();
        let m = keep.len();
        let new_index = |b: usize| keep.iter().position(|&c| c == b).unwrap();
        let project = |v: &[Rational]| -> SparseVec {
            let red = sub.reduce(v);
            keep.iter().enumerate().filter(|(_, &b)| !red[b].is_zero()).map(|(i, &b)| (i, red[b].clone())).collect()
        };
        let alive: Vec<usize> = (0..self.vertex_count()).filter(|&v| !sub.contains(&self.idempotent(v))).collect();
        let new_vertex = |v: usize| alive.iter().position(|&w| w == v).expect("basis element over a dead vertex");
        let basis = keep
            .iter()
            .map(|&b| {
                let e = &self.basis[b];
                BasisElement {
                    name: e.name.clone(),
                    source: new_vertex(e.source),
                    target: new_vertex(e.target),
                    grade: e.grade,
                }
            })
            .collect();
        let mut table = vec![Vec::new(); m * m];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                table[i * m + j] = project(&dense(self.product(a, b), n));
            }
        }
        let idempotents = alive.iter().map(|&v| project(&self.idempotent(v))).collect();
        let _ = new_index;
        let alg = FiniteDimAlgebra::from_parts(
            format!("{}/J", self.name),
            alive.iter().map(|&v| self.vertex_labels[v].clone()).collect(),
            basis,
            table,
            idempotents,
            Provenance::Derived,
            None,
        );
        (alg, alive)
    }

    /// The algebra with its vertices permuted: new vertex k is old vertex `perm[k]`.
    pub fn relabel_vertices(&self, labels: Vec<String>) -> FiniteDimAlgebra {
        let mut a = self.clone();
        a.vertex_labels = labels;
        a
    }

    pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
        sparse(v)
    }
}
