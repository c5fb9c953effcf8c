//! Named algebra families and fixed example algebras.

use std::sync::Arc;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    build_monomial_algebra, FiniteDimAlgebra, LinearPresentation, MonomialPresentation, Path, Quiver,
};
use crate::error::{Error, Result};
use crate::linalg::{q, Rational};
use crate::modules::{is_isomorphic, loewy_data, projective_module, AlgebraModule};

/// Hirzebruch–Jung continued fraction r/a = α_1 − 1/(α_2 − 1/(… − 1/α_n)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJExpansion {
    pub r: u64,
    pub a: u64,
    pub coefficients: Vec<u64>,
}

impl HJExpansion {
    pub fn evaluate(&self) -> Rational {
        let mut it = self.coefficients.iter().rev();
        let mut acc = q(*it.next().expect("nonempty expansion") as i64);
        for &c in it {
            acc = q(c as i64) - acc.recip();
        }
        acc
    }
}

pub fn hj_continued_fraction(r: u64, a: u64) -> Result<HJExpansion> {
    if a == 0 || a >= r || r.gcd(&a) != 1 {
        return Err(Error::Input(format!("need 0 < a < r coprime, got r = {r}, a = {a}")));
    }
    let mut coefficients = Vec::new();
    let (mut num, mut den) = (r, a);
    while den != 0 {
        let c = num.div_ceil(den);
        coefficients.push(c);
        let rem = c * den - num;
        num = den;
        den = rem;
    }
    Ok(HJExpansion { r, a, coefficients })
}

fn knorrer_quiver(l: usize) -> Quiver {
    let names: Vec<String> = (1..=l).map(|i| format!("z{i}")).collect();
    let arrows: Vec<(String, String, String)> =
        names.iter().map(|n| (n.clone(), "e".to_string(), "e".to_string())).collect();
    Quiver::new(&["e".to_string()], &arrows).expect("valid quiver")
}

/// The Knörrer invariant algebra K_{r,a}.
pub fn knorrer(r: u64, a: u64) -> Result<MonomialPresentation> {
    if a == 0 || a >= r || r.gcd(&a) != 1 {
        return Err(Error::Input(format!("need 0 < a < r coprime, got r = {r}, a = {a}")));
    }
    let beta = hj_continued_fraction(r, r - a)?.coefficients;
    let l = beta.len();
    let quiver = knorrer_quiver(l);
    let z = |i: usize| format!("z{i}");
    let mut words: Vec<String> = Vec::new();
    for i in 1..=l {
        for j in (i + 1)..=l {
            words.push(format!("{}*{}", z(i), z(j)));
        }
    }
    for i in 1..=l {
        for j in 1..=i {
            let mut factors = vec![z(i)];
            for k in (j..=i).rev() {
                let e = beta[k - 1] - 2;
                if e > 0 {
                    factors.push(format!("{}^{e}", z(k)));
                }
            }
            factors.push(z(j));
            words.push(factors.join("*"));
        }
    }
    let refs: Vec<&str> = words.iter().map(String::as_str).collect();
    MonomialPresentation::from_words(format!("K_{r},{a}"), quiver, &refs)
}

/// kQ/J^m.
pub fn truncated(quiver: &Quiver, m: usize) -> Result<MonomialPresentation> {
    if m == 0 {
        return Err(Error::Input("truncation degree must be at least 1".into()));
    }
    let forbidden = quiver.paths_of_length(m);
    MonomialPresentation::new(format!("trunc{m}"), quiver.clone(), forbidden)
}

pub fn cyclic_quiver(n: usize) -> Quiver {
    let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> =
        (1..=n).map(|i| (format!("x{i}"), i.to_string(), (i % n + 1).to_string())).collect();
    Quiver::new(&vs, &arrows).expect("valid quiver")
}

/// kC_n/J^m.
pub fn nakayama_cyclic(n: usize, m: usize) -> Result<MonomialPresentation> {
    if n == 0 {
        return Err(Error::Input("cyclic quiver needs at least one vertex".into()));
    }
    let mut p = truncated(&cyclic_quiver(n), m)?;
    p.name = format!("Nak_{n},{m}");
    Ok(p)
}

/// A seeded random monomial algebra of dimension at most `max_dim`: one or two vertices,
/// up to three arrows, all paths of a random length m in 2..=4 killed together with a
/// random sample of shorter paths.
pub fn random_monomial(seed: u64, max_dim: usize) -> Result<MonomialPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.random_range(1..=2usize);
        let k = rng.random_range(1..=3usize);
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (0..k)
            .map(|a| {
                let s = rng.random_range(1..=n);
                let t = rng.random_range(1..=n);
                (format!("{}", (b'a' + a as u8) as char), s.to_string(), t.to_string())
            })
            .collect();
        let quiver = Quiver::new(&vs, &arrows)?;
        let m = rng.random_range(2..=4usize);
        let mut forbidden = quiver.paths_of_length(m);
        for len in 2..m {
            for p in quiver.paths_of_length(len) {
                if rng.random_bool(0.35) {
                    forbidden.push(p);
                }
            }
        }
        let p = MonomialPresentation::new(format!("rand{seed}"), quiver, forbidden)?;
        if build_monomial_algebra(&p)?.dim() <= max_dim {
            return Ok(p);
        }
    }
}

/// The staircase nilpotent quiver algebra N_s(Q).
pub fn staircase_nilpotent(quiver: &Quiver, s: usize) -> Result<LinearPresentation> {
    if s == 0 {
        return Err(Error::Input("staircase height must be at least 1".into()));
    }
    let v = |i: usize, l: usize| format!("v{}_{}", quiver.vertices()[i], l);
    let mut vertices = Vec::new();
    for i in 0..quiver.vertex_count() {
        for l in 1..=s {
            vertices.push(v(i, l));
        }
    }
    let b = |i: usize, l: usize| format!("b{}_{}", quiver.vertices()[i], l);
    let al = |a: usize, l: usize| format!("{}_{}", quiver.arrows()[a].label, l);
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for i in 0..quiver.vertex_count() {
        for l in 1..s {
            arrows.push((b(i, l), v(i, l + 1), v(i, l)));
        }
    }
    for (ai, a) in quiver.arrows().iter().enumerate() {
        for l in 2..=s {
            arrows.push((al(ai, l), v(a.target, l - 1), v(a.source, l)));
        }
    }
    let nq = Quiver::new(&vertices, &arrows)?;
    let mut relations = Vec::new();
    for (ai, a) in quiver.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        if s >= 2 {
            let w = nq.parse_word(&format!("{}*{}", b(i, 1), al(ai, 2)))?;
            relations.push(vec![(q(1), w)]);
        }
        for l in 2..s {
            let lhs = nq.parse_word(&format!("{}*{}", b(i, l), al(ai, l + 1)))?;
            let rhs = nq.parse_word(&format!("{}*{}", al(ai, l), b(j, l - 1)))?;
            relations.push(vec![(q(1), lhs), (q(-1), rhs)]);
        }
    }
    LinearPresentation::new(format!("N_{s}"), nq, relations)
}

/// Number of paths from `from` to `to` in Q with length in [lo, hi).
pub fn count_paths(quiver: &Quiver, from: usize, to: usize, lo: i64, hi: i64) -> usize {
    (lo.max(0)..hi.max(0))
        .map(|len| quiver.paths_of_length(len as usize).iter().filter(|p| p.source == from && p.target == to).count())
        .sum()
}

/// A member of the ADR family: Re_v / rad^l Re_v.
#[derive(Clone, Debug)]
pub struct AdrMember {
    pub vertex: usize,
    pub length: usize,
    pub module: AlgebraModule,
}

/// The modules Re/rad^i Re, deduplicated up to isomorphism.
pub fn adr_family(a: &Arc<FiniteDimAlgebra>) -> Result<Vec<AdrMember>> {
    let mut out: Vec<AdrMember> = Vec::new();
    for v in 0..a.vertex_count() {
        let p = projective_module(a, v)?;
        let data = loewy_data(&p);
        for l in 1..=data.loewy_length() {
            let (m, _) = p.quotient_by(&data.radical_series[l], format!("P{}/rad^{l}", a.vertex_labels()[v]));
            if !out.iter().any(|x| is_isomorphic(&x.module, &m)) {
                out.push(AdrMember { vertex: v, length: l, module: m });
            }
        }
    }
    Ok(out)
}

/// Fixed example algebras.
pub mod fixtures {
    use super::*;

    fn one_vertex(arrows: &[&str]) -> Quiver {
        let a: Vec<(&str, &str, &str)> = arrows.iter().map(|x| (*x, "e", "e")).collect();
        Quiver::new(&["e"], &a).expect("valid quiver")
    }

    /// k⟨x,y⟩/(x³, xy, yx, y³): not ideally ordered.
    pub fn ex7() -> MonomialPresentation {
        MonomialPresentation::from_words("ex7", one_vertex(&["x", "y"]), &["x^3", "x*y", "y*x", "y^3"]).unwrap()
    }

    /// Loops a, b, c at 1 and arrows x, y: 1 → 2 with I = (a,b,c)² + (yb, xc).
    pub fn good_left() -> MonomialPresentation {
        let q = Quiver::new(
            &["1", "2"],
            &[("a", "1", "1"), ("b", "1", "1"), ("c", "1", "1"), ("x", "1", "2"), ("y", "1", "2")],
        )
        .unwrap();
        let mut words: Vec<String> = Vec::new();
        for u in ["a", "b", "c"] {
            for w in ["a", "b", "c"] {
                words.push(format!("{u}*{w}"));
            }
        }
        words.push("y*b".into());
        words.push("x*c".into());
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        MonomialPresentation::from_words("good_left", q, &refs).unwrap()
    }

    /// k⟨x,y⟩/(x³, y³, y²x, yx², xy).
    pub fn left_not_right() -> MonomialPresentation {
        MonomialPresentation::from_words(
            "left_not_right",
            one_vertex(&["x", "y"]),
            &["x^3", "y^3", "y^2*x", "y*x^2", "x*y"],
        )
        .unwrap()
    }

    /// Loop x at 1 and an arrow a: 1 → 2.
    pub fn loop_arrow_quiver() -> Quiver {
        Quiver::new(&["1", "2"], &[("x", "1", "1"), ("a", "1", "2")]).unwrap()
    }

    /// kQ/J² on the loop-and-arrow quiver.
    pub fn loop_arrow() -> MonomialPresentation {
        let mut p = truncated(&loop_arrow_quiver(), 2).unwrap();
        p.name = "loop_arrow".into();
        p
    }

    pub fn jordan_quiver() -> Quiver {
        Quiver::new(&["1"], &[("x", "1", "1")]).unwrap()
    }

    pub fn two_cycle_quiver() -> Quiver {
        cyclic_quiver(2)
    }

    fn lambda_quiver(k2_from_far: bool) -> Quiver {
        let k2 = if k2_from_far { ("k2", "2", "0") } else { ("k2", "1", "0") };
        Quiver::new(&["0", "1", "2"], &[("a1", "1", "0"), ("a2", "2", "1"), ("c1", "0", "1"), ("c2", "1", "2"), k2])
            .unwrap()
    }

    fn rel(q: &Quiver, terms: &[(i64, &str)]) -> Vec<(Rational, Path)> {
        terms.iter().map(|(c, w)| (super::q(*c), q.parse_word(w).unwrap())).collect()
    }

    /// Λ_[3,2]: relations c2a2 = 0, a2c2 = c1k2, c1a1 = 0.
    pub fn lambda_3_2() -> LinearPresentation {
        let q = lambda_quiver(false);
        let rels = vec![rel(&q, &[(1, "c2*a2")]), rel(&q, &[(1, "a2*c2"), (-1, "c1*k2")]), rel(&q, &[(1, "c1*a1")])];
        LinearPresentation::new("Lambda_3_2", q, rels).unwrap()
    }

    /// Λ_[2,3]: relations c2a2 = 0, c2c1k2 = 0, c1a1 = a2c2.
    pub fn lambda_2_3() -> LinearPresentation {
        let q = lambda_quiver(true);
        let rels = vec![rel(&q, &[(1, "c2*a2")]), rel(&q, &[(1, "c2*c1*k2")]), rel(&q, &[(1, "c1*a1"), (-1, "a2*c2")])];
        LinearPresentation::new("Lambda_2_3", q, rels).unwrap()
    }
}
