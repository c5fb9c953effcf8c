use std::collections::HashMap;

use num_traits::{One, Zero};

use super::fda::{BasisElement, FiniteDimAlgebra, PathData, Provenance, SparseVec};
use super::quiver::{canonical_cmp, compose, Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{rref_rows, zero_vec, Rational};

pub const DEFAULT_MAX_DEGREE: usize = 32;

/// A quiver with a set of forbidden paths generating a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPresentation {
    pub name: String,
    pub quiver: Quiver,
    pub forbidden: Vec<Path>,
}

impl MonomialPresentation {
    /// Drops duplicate generators and generators containing another one.
    pub fn new(name: impl Into<String>, quiver: Quiver, forbidden: Vec<Path>) -> Result<Self> {
        if let Some(p) = forbidden.iter().find(|p| p.is_lazy()) {
            return Err(Error::Input(format!("forbidden lazy path at vertex {}", quiver.vertices()[p.source])));
        }
        let mut fs = forbidden;
        fs.sort_by(canonical_cmp);
        fs.dedup();
        let reduced: Vec<Path> =
            fs.iter().filter(|p| !fs.iter().any(|q| q != *p && p.contains_subpath(q))).cloned().collect();
        Ok(MonomialPresentation { name: name.into(), quiver, forbidden: reduced })
    }

    pub fn from_words(name: impl Into<String>, quiver: Quiver, words: &[&str]) -> Result<Self> {
        let paths = words.iter().map(|w| quiver.parse_word(w)).collect::<Result<Vec<_>>>()?;
        Self::new(name, quiver, paths)
    }
}

/// A quiver with linear relations; each relation is a combination of parallel paths
/// that is set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPresentation {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<Vec<(Rational, Path)>>,
}

impl LinearPresentation {
    pub fn new(name: impl Into<String>, quiver: Quiver, relations: Vec<Vec<(Rational, Path)>>) -> Result<Self> {
        let mut rels = Vec::new();
        for rel in relations {
            let mut combined: Vec<(Rational, Path)> = Vec::new();
            for (c, p) in rel {
                match combined.iter_mut().find(|(_, q)| *q == p) {
                    Some(entry) => entry.0 += c,
                    None => combined.push((c, p)),
                }
            }
            combined.retain(|(c, _)| !c.is_zero());
            if combined.is_empty() {
                continue;
            }
            let (s, t) = (combined[0].1.source, combined[0].1.target);
            if combined.iter().any(|(_, p)| p.source != s || p.target != t) {
                return Err(Error::Input("relation mixes non-parallel paths".into()));
            }
            rels.push(combined);
        }
        Ok(LinearPresentation { name: name.into(), quiver, relations: rels })
    }

    pub fn from_monomial(p: &MonomialPresentation) -> Self {
        LinearPresentation {
            name: p.name.clone(),
            quiver: p.quiver.clone(),
            relations: p.forbidden.iter().map(|f| vec![(Rational::one(), f.clone())]).collect(),
        }
    }

    /// True if every relation is a single path with coefficient.
    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(|r| r.len() == 1)
    }

    pub fn to_monomial(&self) -> Option<MonomialPresentation> {
        if !self.is_monomial() {
            return None;
        }
        MonomialPresentation::new(
            self.name.clone(),
            self.quiver.clone(),
            self.relations.iter().map(|r| r[0].1.clone()).collect(),
        )
        .ok()
    }
}

/// Builds kQ/I for a monomial ideal I.
pub fn build_monomial_algebra(p: &MonomialPresentation) -> Result<FiniteDimAlgebra> {
    let q = &p.quiver;
    let window = p.forbidden.iter().map(Path::len).max().unwrap_or(1).max(1) - 1;
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::lazy).collect();
    let mut level = all.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for path in &level {
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.source != path.target {
                    continue;
                }
                let ext = compose(&q.arrow_path(ai), path).unwrap();
                if p.forbidden.iter().any(|f| ext.ends_with(f)) {
                    continue;
                }
                if let Some(cycle) = repeated_state(q, &ext, window) {
                    return Err(Error::Build(format!(
                        "monomial presentation '{}' is not finite-dimensional: the cycle {} survives",
                        p.name,
                        cycle.name(q)
                    )));
                }
                next.push(ext);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.sort_by(canonical_cmp);
    let index: HashMap<Path, usize> = all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = all.len();
    let mut table = vec![Vec::new(); n * n];
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            if let Some(c) = compose(a, b) {
                if let Some(&k) = index.get(&c) {
                    table[i * n + j] = vec![(k, Rational::one())];
                }
            }
        }
    }
    let basis = all
        .iter()
        .map(|path| BasisElement {
            name: path.name(q),
            source: path.source,
            target: path.target,
            grade: Some(path.len()),
        })
        .collect();
    let idempotents = (0..q.vertex_count()).map(|v| vec![(index[&Path::lazy(v)], Rational::one())]).collect();
    FiniteDimAlgebra::new_checked(
        p.name.clone(),
        q.vertices().to_vec(),
        basis,
        table,
        idempotents,
        Provenance::Monomial,
        Some(PathData { quiver: q.clone(), paths: all }),
    )
}

/// Detects a repeated (vertex, last `window` arrows) state along `path`; the piece between
/// the repeats can be pumped without creating a forbidden subpath.
fn repeated_state(q: &Quiver, path: &Path, window: usize) -> Option<Path> {
    let n = path.len();
    if n < window + 1 {
        return None;
    }
    let vertex_after = |t: usize| if t == 0 { path.source } else { q.arrows()[path.arrows[t - 1]].target };
    let state = |t: usize| (vertex_after(t), &path.arrows[t - window..t]);
    let last = state(n);
    for t in window..n {
        if state(t) == last {
            let arrows = path.arrows[t..n].to_vec();
            let v = vertex_after(t);
            return Some(Path { source: v, target: v, arrows });
        }
    }
    None
}

/// Paths of one degree, the reduced ideal rows there, and their pivots.
type DegreeData = (Vec<Path>, Vec<Vec<Rational>>, Vec<usize>);

/// Builds kQ/I for an ideal generated by length-homogeneous linear relations, degree by degree.
pub fn build_presented_algebra(p: &LinearPresentation, max_degree: usize) -> Result<FiniteDimAlgebra> {
    let q = &p.quiver;
    let mut rel_by_degree: HashMap<usize, Vec<&Vec<(Rational, Path)>>> = HashMap::new();
    for r in &p.relations {
        let d = r[0].1.len();
        if r.iter().any(|(_, path)| path.len() != d) {
            return Err(Error::Unsupported("relations must be homogeneous in path length".into()));
        }
        rel_by_degree.entry(d).or_default().push(r);
    }
    // per degree: paths (canonical order), ideal rows in rref with columns in reverse canonical order
    let mut degrees: Vec<DegreeData> = Vec::new();
    let mut prev_paths: Vec<Path> = Vec::new();
    let mut prev_rows: Vec<Vec<Rational>> = Vec::new();
    let mut d = 0;
    loop {
        if d > max_degree {
            return Err(Error::Build(format!("presentation '{}' did not terminate below degree {max_degree}", p.name)));
        }
        let paths = q.paths_of_length(d);
        if paths.len() > 200_000 {
            return Err(Error::Build(format!("presentation '{}' has too many paths in degree {d}", p.name)));
        }
        let m = paths.len();
        let col: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, path)| (path, m - 1 - i)).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for r in rel_by_degree.get(&d).into_iter().flatten() {
            let mut v = zero_vec(m);
            for (c, path) in r.iter() {
                v[col[path]] += c;
            }
            rows.push(v);
        }
        for row in &prev_rows {
            for (ai, a) in q.arrows().iter().enumerate() {
                let ap = q.arrow_path(ai);
                let mut left = zero_vec(m);
                let mut right = zero_vec(m);
                let (mut lnz, mut rnz) = (false, false);
                for (c, x) in row.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let path = &prev_paths[prev_paths.len() - 1 - c];
                    if path.target == a.source {
                        left[col[&compose(&ap, path).unwrap()]] += x;
                        lnz = true;
                    }
                    if path.source == a.target {
                        right[col[&compose(path, &ap).unwrap()]] += x;
                        rnz = true;
                    }
                }
                if lnz {
                    rows.push(left);
                }
                if rnz {
                    rows.push(right);
                }
            }
        }
        let pivots = rref_rows(&mut rows, m);
        let done = pivots.len() == m;
        prev_paths = paths.clone();
        prev_rows = rows.clone();
        degrees.push((paths, rows, pivots));
        if done {
            break;
        }
        d += 1;
    }
    // basis: non-pivot paths of each degree
    let mut basis_paths: Vec<Path> = Vec::new();
    for (paths, _, pivots) in &degrees {
        let m = paths.len();
        for (i, path) in paths.iter().enumerate() {
            if !pivots.contains(&(m - 1 - i)) {
                basis_paths.push(path.clone());
            }
        }
    }
    let n = basis_paths.len();
    let index: HashMap<&Path, usize> = basis_paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let normal_form = |path: &Path| -> SparseVec {
        let dd = path.len();
        if dd >= degrees.len() {
            return Vec::new();
        }
        if let Some(&i) = index.get(path) {
            return vec![(i, Rational::one())];
        }
        let (paths, rows, pivots) = &degrees[dd];
        let m = paths.len();
        let c = m - 1 - paths.iter().position(|x| x == path).unwrap();
        let r = pivots.iter().position(|&x| x == c).unwrap();
        let mut out = Vec::new();
        for (cc, x) in rows[r].iter().enumerate() {
            if cc != c && !x.is_zero() {
                let other = &paths[m - 1 - cc];
                out.push((index[other], -x.clone()));
            }
        }
        out
    };
    let mut table = vec![Vec::new(); n * n];
    for (i, a) in basis_paths.iter().enumerate() {
        for (j, b) in basis_paths.iter().enumerate() {
            if let Some(c) = compose(a, b) {
                let mut v = normal_form(&c);
                v.sort_by_key(|(k, _)| *k);
                table[i * n + j] = v;
            }
        }
    }
    let basis = basis_paths
        .iter()
        .map(|path| BasisElement {
            name: path.name(q),
            source: path.source,
            target: path.target,
            grade: Some(path.len()),
        })
        .collect();
    let idempotents = (0..q.vertex_count())
        .map(|v| match index.get(&Path::lazy(v)) {
            Some(&i) => Ok(vec![(i, Rational::one())]),
            None => Err(Error::Build("a relation kills a vertex idempotent".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteDimAlgebra::new_checked(
        p.name.clone(),
        q.vertices().to_vec(),
        basis,
        table,
        idempotents,
        Provenance::Presented,
        Some(PathData { quiver: q.clone(), paths: basis_paths }),
    )
}
