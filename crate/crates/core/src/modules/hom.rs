use num_traits::Zero;

use super::{same_algebra, AlgebraModule, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, kernel_from_rref, rref_rows, zero_vec, Rational, RationalMatrix, Subspace};

/// A projective presentation built from the top: generators g_k ∈ e_{v_k} M, the cover
/// π: ⊕ A e_{v_k} → M, its kernel, and a linear section of π.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// (vertex, basis index in M) of each top generator.
    pub gens: Vec<(usize, usize)>,
    /// Basis of the cover: (generator k, algebra basis element b with source v_k).
    pub cover_basis: Vec<(usize, usize)>,
    pub pi: RationalMatrix,
    pub kernel: Vec<Vec<Rational>>,
    /// dim(cover) × dim(M) with π · section = id.
    pub section: RationalMatrix,
}

impl Presentation {
    pub(crate) fn compute(m: &AlgebraModule) -> Presentation {
        let a = m.algebra();
        let rad = m.radical();
        let gens: Vec<(usize, usize)> = rad.complement_indices().into_iter().map(|i| (m.vertex_of()[i], i)).collect();
        let mut cover_basis = Vec::new();
        for (k, &(v, _)) in gens.iter().enumerate() {
            for b in a.basis_with_source(v) {
                cover_basis.push((k, b));
            }
        }
        let cols: Vec<Vec<Rational>> = cover_basis.iter().map(|&(k, b)| m.action(b).column(gens[k].1)).collect();
        let pi = RationalMatrix::from_columns(&cols, m.dim());
        let kernel = kernel_basis(&pi);
        let section = right_inverse(&pi);
        Presentation { gens, cover_basis, pi, kernel, section }
    }
}

/// A right inverse of a surjective matrix.
fn right_inverse(pi: &RationalMatrix) -> RationalMatrix {
    let (r, c) = (pi.rows(), pi.cols());
    let mut rows: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row = pi.row(i).to_vec();
            row.extend((0..r).map(|j| if i == j { crate::linalg::q(1) } else { Rational::zero() }));
            row
        })
        .collect();
    let pivots = rref_rows(&mut rows, c + r);
    let mut s = RationalMatrix::zeros(c, r);
    for (row, &p) in rows.iter().zip(&pivots) {
        assert!(p < c, "projective cover map is not surjective");
        for j in 0..r {
            let x = &row[c + j];
            if !x.is_zero() {
                s.set(p, j, x.clone());
            }
        }
    }
    s
}

/// Hom_A(M, N) with its canonical rref basis (maps flattened row-major).
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: AlgebraModule,
    pub target: AlgebraModule,
    pub basis: Vec<RationalMatrix>,
    flat: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn map(&self, i: usize) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix: self.basis[i].clone() }
    }

    pub fn maps(&self) -> Vec<ModuleMap> {
        (0..self.dim()).map(|i| self.map(i)).collect()
    }

    /// Coordinates of a map in the canonical basis.
    pub fn coords(&self, f: &RationalMatrix) -> Option<Vec<Rational>> {
        self.flat.coords(f.entries())
    }

    pub fn combination(&self, c: &[Rational]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.target.dim(), self.source.dim());
        for (x, b) in c.iter().zip(&self.basis) {
            if !x.is_zero() {
                out = out.add(&b.scale(x));
            }
        }
        out
    }

    pub(crate) fn from_matrices(source: AlgebraModule, target: AlgebraModule, maps: Vec<RationalMatrix>) -> HomSpace {
        let (r, c) = (target.dim(), source.dim());
        let flat = Subspace::span(r * c, maps.into_iter().map(|m| m.entries().to_vec()));
        let basis = flat
            .basis()
            .iter()
            .map(|v| {
                RationalMatrix::from_rows_shaped(v.chunks(c.max(1)).take(r).map(<[Rational]>::to_vec).collect(), c)
            })
            .collect();
        HomSpace { source, target, basis, flat }
    }
}

/// Hom_A(M, N), solved through the top presentation of M.
pub fn hom_space(m: &AlgebraModule, n: &AlgebraModule) -> Result<HomSpace> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Input("hom_space: modules over different algebras".into()));
    }
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(HomSpace::from_matrices(m.clone(), n.clone(), Vec::new()));
    }
    let pres = m.presentation();
    let nv: Vec<Vec<usize>> = (0..m.algebra().vertex_count()).map(|i| n.vertex_indices(i)).collect();
    // unknowns: for generator k, coordinates of its image in e_{v_k} N
    let mut offset = Vec::with_capacity(pres.gens.len());
    let mut total = 0;
    for &(v, _) in &pres.gens {
        offset.push(total);
        total += nv[v].len();
    }
    if total == 0 {
        return Ok(HomSpace::from_matrices(m.clone(), n.clone(), Vec::new()));
    }
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    for w in &pres.kernel {
        let mut block = vec![zero_vec(total); n.dim()];
        for (col, x) in w.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (k, b) = pres.cover_basis[col];
            let v = pres.gens[k].0;
            let act = n.action(b);
            for (j, &c) in nv[v].iter().enumerate() {
                for (r, row) in block.iter_mut().enumerate() {
                    let y = act.get(r, c);
                    if !y.is_zero() {
                        row[offset[k] + j] += x * y;
                    }
                }
            }
        }
        eqs.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    let pivots = rref_rows(&mut eqs, total);
    let sols = kernel_from_rref(&eqs, &pivots, total);
    let maps = sols
        .into_iter()
        .map(|sol| {
            // Φ on the cover, then compose with the section
            let cols: Vec<Vec<Rational>> = pres
                .cover_basis
                .iter()
                .map(|&(k, b)| {
                    let v = pres.gens[k].0;
                    let mut img = zero_vec(n.dim());
                    for (j, &c) in nv[v].iter().enumerate() {
                        let s = &sol[offset[k] + j];
                        if s.is_zero() {
                            continue;
                        }
                        for (r, out) in img.iter_mut().enumerate() {
                            let y = n.action(b).get(r, c);
                            if !y.is_zero() {
                                *out += s * y;
                            }
                        }
                    }
                    img
                })
                .collect();
            RationalMatrix::from_columns(&cols, n.dim()).mul(&pres.section)
        })
        .collect();
    Ok(HomSpace::from_matrices(m.clone(), n.clone(), maps))
}
