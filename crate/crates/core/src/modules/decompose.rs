use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{hom_space, AlgebraModule, HomSpace};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Rational, RationalMatrix, Subspace};

/// Basis of the radical of the algebra spanned by `maps`, via the trace form of the
/// (faithful) action on the module.
fn radical_of_maps(maps: &[RationalMatrix]) -> Subspace {
    let d = maps.len();
    let mut g = RationalMatrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let t = maps[a].mul(&maps[b]).trace();
            g.set(a, b, t.clone());
            g.set(b, a, t);
        }
    }
    Subspace::span(d, kernel_basis(&g))
}

/// End(M)/rad is one-dimensional.
pub fn is_indecomposable(m: &AlgebraModule) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::Input("is_indecomposable: zero module".into()));
    }
    let end = hom_space(m, m)?;
    let rad = radical_of_maps(&end.basis);
    Ok(end.dim() - rad.dim() == 1)
}

fn in_radical(end: &HomSpace, rad: &Subspace, f: &RationalMatrix) -> bool {
    rad.contains(&end.coords(f).expect("not an endomorphism"))
}

/// Lifts an idempotent modulo the radical with e ← 3e² − 2e³.
fn lift_idempotent(e: &RationalMatrix) -> Option<RationalMatrix> {
    let mut e = e.clone();
    for _ in 0..64 {
        let e2 = e.mul(&e);
        if e2 == e {
            return Some(e);
        }
        let e3 = e2.mul(&e);
        e = e2.scale(&crate::linalg::q(3)).sub(&e3.scale(&crate::linalg::q(2)));
    }
    None
}

/// Characteristic polynomial coefficients c_0..c_n (monic) by Faddeev–LeVerrier.
fn char_poly(a: &RationalMatrix) -> Vec<Rational> {
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = RationalMatrix::zeros(n, n);
    let id = RationalMatrix::identity(n);
    for k in 1..=n {
        mk = a.mul(&mk).add(&id.scale(&c[n - k + 1]));
        let t = a.mul(&mk).trace();
        c[n - k] = -t / Rational::from_integer(BigInt::from(k));
    }
    c
}

fn eval(poly: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let limit = BigInt::from(1_000_000u64);
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n && i <= limit {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            out.push(&n / &i);
        }
        i += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Distinct rational roots of a polynomial.
fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for c in poly {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = poly.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].clone();
    let an = ints.last().unwrap().clone();
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for s in [1i64, -1] {
                let x = Rational::new(&p * BigInt::from(s), q.clone());
                if !roots.contains(&x) && eval(poly, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots
}

/// Fitting decomposition for φ − λ: generalized λ-eigenspace and its complement.
fn fitting_split(phi: &RationalMatrix, lambda: &Rational) -> Option<(Subspace, Subspace)> {
    let n = phi.rows();
    let shifted = phi.sub(&RationalMatrix::identity(n).scale(lambda));
    let p = shifted.pow(n);
    let ker = Subspace::span(n, kernel_basis(&p));
    let im = Subspace::span(n, (0..n).map(|c| p.column(c)));
    if ker.dim() == 0 || im.dim() == 0 {
        return None;
    }
    Some((ker, im))
}

fn split_once(m: &AlgebraModule) -> Result<Option<(Subspace, Subspace)>> {
    let end = hom_space(m, m)?;
    let rad = radical_of_maps(&end.basis);
    if end.dim() - rad.dim() <= 1 {
        return Ok(None);
    }
    let n = m.dim();
    let id = RationalMatrix::identity(n);
    let mut candidates: Vec<RationalMatrix> = end.basis.clone();
    for a in &end.basis {
        for b in &end.basis {
            candidates.push(a.mul(b));
        }
    }
    for phi in &candidates {
        if in_radical(&end, &rad, phi) || in_radical(&end, &rad, &id.sub(phi)) {
            continue;
        }
        let sq = phi.mul(phi).sub(phi);
        if in_radical(&end, &rad, &sq) {
            if let Some(e) = lift_idempotent(phi) {
                let im = Subspace::span(n, (0..n).map(|c| e.column(c)));
                let ker = Subspace::span(n, kernel_basis(&e));
                if im.dim() > 0 && ker.dim() > 0 {
                    return Ok(Some((im, ker)));
                }
            }
        }
    }
    for phi in &candidates {
        if in_radical(&end, &rad, phi) {
            continue;
        }
        for lambda in rational_roots(&char_poly(phi)) {
            if let Some(s) = fitting_split(phi, &lambda) {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// Krull–Schmidt decomposition into indecomposable summands.
pub fn decompose(m: &AlgebraModule) -> Result<Vec<AlgebraModule>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    match split_once(m)? {
        None => Ok(vec![m.clone()]),
        Some((x, y)) => {
            let (mx, _) = m.submodule_on(&x, format!("{}[a]", m.label()));
            let (my, _) = m.submodule_on(&y, format!("{}[b]", m.label()));
            let mut out = decompose(&mx)?;
            out.extend(decompose(&my)?);
            Ok(out)
        }
    }
}

/// Isomorphism test. For indecomposables, M ≅ N iff some g∘f with f: M → N, g: N → M is
/// invertible; otherwise summands are matched greedily.
pub fn is_isomorphic(m: &AlgebraModule, n: &AlgebraModule) -> bool {
    if m.dim() != n.dim() || m.dim_vector() != n.dim_vector() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let ind_m = is_indecomposable(m).unwrap_or(false);
    let ind_n = is_indecomposable(n).unwrap_or(false);
    if ind_m && ind_n {
        return indecomposables_isomorphic(m, n);
    }
    if ind_m != ind_n {
        return false;
    }
    let (Ok(dm), Ok(dn)) = (decompose(m), decompose(n)) else {
        return false;
    };
    if dm.len() != dn.len() {
        return false;
    }
    let mut used = vec![false; dn.len()];
    for x in &dm {
        let Some(j) = (0..dn.len()).find(|&j| !used[j] && is_isomorphic(x, &dn[j])) else {
            return false;
        };
        used[j] = true;
    }
    true
}

fn indecomposables_isomorphic(m: &AlgebraModule, n: &AlgebraModule) -> bool {
    let (Ok(f), Ok(g)) = (hom_space(m, n), hom_space(n, m)) else {
        return false;
    };
    for a in &f.basis {
        if a.rank() != m.dim() {
            continue;
        }
        return true;
    }
    for a in &f.basis {
        for b in &g.basis {
            if b.mul(a).is_invertible() {
                return true;
            }
        }
    }
    false
}
