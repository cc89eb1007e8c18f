use bubble_core::linalg::{determinant_symbolic, integer_matrix, rational_matrix, specialize};
use bubble_core::{determinant, rank, Error, ExactMatrix, LaurentScalar, ParameterSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
}

fn square() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7).prop_flat_map(small)
}

/// Textbook elimination over Q with partial pivoting on the first nonzero
/// entry; returns (det, rank).
fn reference(rows: &[Vec<i64>]) -> (BigRational, usize) {
    let n = rows.len();
    let c = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut det = BigRational::one();
    let mut r = 0;
    for col in 0..c {
        let Some(p) = (r..n).find(|&i| !a[i][col].is_zero()) else {
            det = BigRational::zero();
            continue;
        };
        if p != r {
            a.swap(p, r);
            det = -det;
        }
        det *= a[r][col].clone();
        for i in r + 1..n {
            let f = &a[i][col] / &a[r][col];
            for j in col..c {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
    }
    if r < n {
        det = BigRational::zero();
    }
    (det, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_reference(rows in square()) {
        let (det, rk) = reference(&rows);
        prop_assert_eq!(determinant(&integer_matrix(&rows)).unwrap(), det.to_integer());
        prop_assert_eq!(determinant(&rational_matrix(&rows)).unwrap(), det);
        prop_assert_eq!(rank(&rational_matrix(&rows)).unwrap(), rk);
    }

    #[test]
    fn determinant_is_multiplicative(pair in (1usize..6).prop_flat_map(|n| (small(n), small(n)))) {
        let a = integer_matrix(&pair.0);
        let b = integer_matrix(&pair.1);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(determinant(&ab).unwrap(), determinant(&a).unwrap() * determinant(&b).unwrap());
    }

    #[test]
    fn transpose_invariance(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..7)) {
        let m = rational_matrix(&rows);
        prop_assert_eq!(rank(&m).unwrap(), rank(&m.transpose()).unwrap());
        if m.is_square() {
            prop_assert_eq!(determinant(&m).unwrap(), determinant(&m.transpose()).unwrap());
        }
    }

    #[test]
    fn row_swap_negates(rows in (2usize..6).prop_flat_map(small), a in 0usize..6, b in 0usize..6) {
        let n = rows.len();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let m = integer_matrix(&rows);
        let mut s = m.clone();
        s.swap_rows(a, b);
        prop_assert_eq!(determinant(&s).unwrap(), -determinant(&m).unwrap());
    }

    #[test]
    fn symbolic_determinant_commutes_with_evaluation(
        cells in prop::collection::vec((-2i32..=2, -3i64..=3), 9),
        x in 2i64..6,
    ) {
        let m = ExactMatrix::from_fn(3, 3, LaurentScalar::zero(1), |i, j| {
            let (e, c) = cells[3 * i + j];
            LaurentScalar::monomial(1, vec![e], c) + LaurentScalar::constant(1, (i == j) as i64)
        });
        let point = ParameterSpec::parse_list(&[x.to_string()]).unwrap();
        let lhs = bubble_core::scalar::evaluate(&determinant(&m).unwrap(), &point).unwrap();
        let rhs = determinant(&specialize(&m, &point).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn symbolic_guard() {
    let m = ExactMatrix::identity(5, LaurentScalar::zero(1));
    assert_eq!(determinant_symbolic(&m, 5).unwrap(), LaurentScalar::one(1));
    assert!(matches!(determinant_symbolic(&m, 4), Err(Error::SymbolicTooLarge { dim: 5, limit: 4 })));
}

#[test]
fn block_diagonal_matrix() {
    let m = integer_matrix(&[vec![2, 0, 1], vec![0, 3, 0], vec![1, 0, 1]]);
    assert_eq!(m.diagonal_blocks(), vec![vec![0, 2], vec![1]]);
    assert_eq!(determinant(&m).unwrap(), BigInt::from(3));
}
