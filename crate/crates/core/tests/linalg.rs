use proptest::prelude::*;
use ringel_core::linalg::*;

fn m(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64(rows)
}

/// Rank by integer Bareiss elimination, independent of the rational code paths.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let (mut rank, mut prev) = (0, 1i128);
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            for k in c + 1..ncols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

#[test]
fn rref_examples() {
    let (r, piv) = rref(&m(&[&[2, 4], &[1, 3]]));
    assert_eq!(r, RationalMatrix::identity(2));
    assert_eq!(piv, vec![0, 1]);
    let (r, piv) = rref(&m(&[&[1, 2, 3], &[2, 4, 6]]));
    assert_eq!(r, m(&[&[1, 2, 3], &[0, 0, 0]]));
    assert_eq!(piv, vec![0]);
    let (r, piv) = rref(&RationalMatrix::zeros(2, 3));
    assert!(r.is_zero());
    assert!(piv.is_empty());
}

#[test]
fn kernel_and_solve() {
    let k = kernel_basis(&m(&[&[1, 1]]));
    assert_eq!(k, vec![vec![q(-1), q(1)]]);
    let a = m(&[&[1, 2], &[3, 4]]);
    assert_eq!(solve_linear(&a, &[q(5), q(6)]).unwrap(), Some(vec![q(-4), qf(9, 2)]));
    let s = m(&[&[1, 1], &[1, 1]]);
    assert_eq!(solve_linear(&s, &[q(1), q(2)]).unwrap(), None);
    assert!(solve_linear(&s, &[q(1)]).is_err());
}

#[test]
fn rational_text() {
    assert_eq!(fmt_rational(&qf(-6, 4)), "-3/2");
    assert_eq!(fmt_rational(&q(7)), "7");
    assert_eq!(parse_rational("-3/2"), Some(qf(-3, 2)));
    assert_eq!(parse_rational("1/0"), None);
    assert_eq!(parse_rational("x"), None);
}

#[test]
fn subspaces() {
    let u = Subspace::span(3, [unit_vec(3, 0), unit_vec(3, 1)]);
    let w = Subspace::span(3, [unit_vec(3, 1), unit_vec(3, 2)]);
    assert_eq!(u.intersection(&w).dim(), 1);
    assert_eq!(u.sum(&w).dim(), 3);
    assert!(u.contains(&[q(2), q(-1), q(0)]));
    assert!(!u.contains(&[q(0), q(0), q(1)]));
    assert_eq!(u.coords(&[q(2), q(-1), q(0)]).unwrap().len(), 2);
    assert!(Subspace::full(3).contains_subspace(&u));
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    m(&refs)
}

proptest! {
    #[test]
    fn rank_matches_integer_elimination(rows in matrix()) {
        let a = to_matrix(&rows);
        prop_assert_eq!(a.rank(), integer_rank(&rows));
        prop_assert_eq!(bareiss_rank(&a), a.rank());
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn kernel_is_complementary(rows in matrix()) {
        let a = to_matrix(&rows);
        let k = kernel_basis(&a);
        prop_assert_eq!(k.len() + a.rank(), a.cols());
        prop_assert_eq!(rank_of(&k, a.cols()), k.len());
        for v in &k {
            prop_assert!(is_zero_vec(&a.mul_vec(v)));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(rows in matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
        let a = to_matrix(&rows);
        let x: Vec<Rational> = seed[..a.cols()].iter().map(|&v| q(v)).collect();
        let b = a.mul_vec(&x);
        let y = solve_linear(&a, &b).unwrap().expect("consistent");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn dimension_formula(a in matrix(), b in matrix()) {
        let n = 5;
        let pad = |rows: &[Vec<i64>]| -> Vec<Vec<Rational>> {
            rows.iter().map(|r| (0..n).map(|i| q(r.get(i).copied().unwrap_or(0))).collect()).collect()
        };
        let u = Subspace::span(n, pad(&a));
        let w = Subspace::span(n, pad(&b));
        prop_assert_eq!(u.sum(&w).dim() + u.intersection(&w).dim(), u.dim() + w.dim());
    }
}
