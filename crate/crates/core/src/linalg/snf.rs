//! Smith normal form over the integers with transform tracking.
//!
//! Classical elimination: the pivot is the nonzero entry of least absolute
//! value in the trailing block; its row and column are cleared by Euclidean
//! steps, and whenever the pivot fails to divide some trailing entry the
//! offending row is added onto the pivot row and elimination resumes.

use num_bigint::BigInt;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::ExactInt;

/// `p · M · q = diag(diag[0], …, diag[rank-1], 0, …, 0)` with `p`, `q`
/// unimodular and each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition<T> {
    pub p: Matrix<T>,
    pub q: Matrix<T>,
    pub diag: Vec<T>,
    pub rank: usize,
}

impl<T: ExactInt> SmithDecomposition<T> {
    /// The `rows × cols` diagonal matrix `p · M · q`.
    pub fn diagonal_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.p.rows(), self.q.rows());
        for (i, s) in self.diag.iter().enumerate() {
            d[(i, i)] = s.clone();
        }
        d
    }

    pub fn to_bigint(&self) -> SmithDecomposition<BigInt> {
        let conv = |x: &T| BigInt::from_i128(x.to_i128().expect("machine integer fits in i128")).unwrap();
        SmithDecomposition {
            p: self.p.map(conv),
            q: self.q.map(conv),
            diag: self.diag.iter().map(conv).collect(),
            rank: self.rank,
        }
    }
}

// row_dst -= factor * row_src
fn row_sub<T: ExactInt>(a: &mut Matrix<T>, dst: usize, src: usize, factor: &T) -> Result<()> {
    for j in 0..a.cols() {
        if a[(src, j)].is_zero() {
            continue;
        }
        let delta = factor.checked_mul(&a[(src, j)]).ok_or(Error::Overflow)?;
        a[(dst, j)] = a[(dst, j)].checked_sub(&delta).ok_or(Error::Overflow)?;
    }
    Ok(())
}

// col_dst -= factor * col_src
fn col_sub<T: ExactInt>(a: &mut Matrix<T>, dst: usize, src: usize, factor: &T) -> Result<()> {
    for i in 0..a.rows() {
        if a[(i, src)].is_zero() {
            continue;
        }
        let delta = factor.checked_mul(&a[(i, src)]).ok_or(Error::Overflow)?;
        a[(i, dst)] = a[(i, dst)].checked_sub(&delta).ok_or(Error::Overflow)?;
    }
    Ok(())
}

fn negate_row<T: ExactInt>(a: &mut Matrix<T>, row: usize) -> Result<()> {
    for j in 0..a.cols() {
        a[(row, j)] = T::zero().checked_sub(&a[(row, j)]).ok_or(Error::Overflow)?;
    }
    Ok(())
}

// q with |x - q·d| <= |d|/2
fn nearest_quotient<T: ExactInt>(x: &T, d: &T) -> T {
    let (q, r) = x.div_mod_floor(d);
    if r.abs() > d.abs() - r.abs() {
        if d.is_positive() == r.is_positive() {
            q + T::one()
        } else {
            q - T::one()
        }
    } else {
        q
    }
}

fn abs_less<T: ExactInt>(x: &T, y: &T) -> bool {
    x.abs() < y.abs()
}

pub fn integer_snf<T: ExactInt>(matrix: &Matrix<T>) -> Result<SmithDecomposition<T>> {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    let mut a = matrix.clone();
    let mut p = Matrix::<T>::identity(rows);
    let mut q = Matrix::<T>::identity(cols);
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| abs_less(x, &a[(bi, bj)])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        p.swap_rows(t, pi);
        a.swap_cols(t, pj);
        q.swap_cols(t, pj);

        loop {
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let f = nearest_quotient(&a[(i, t)], &a[(t, t)]);
                    row_sub(&mut a, i, t, &f)?;
                    row_sub(&mut p, i, t, &f)?;
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let f = nearest_quotient(&a[(t, j)], &a[(t, t)]);
                    col_sub(&mut a, j, t, &f)?;
                    col_sub(&mut q, j, t, &f)?;
                }
            }

            // Remainders left in the pivot row/column are smaller than the
            // pivot; move the smallest one into place and go again.
            let mut smaller: Option<(usize, usize)> = None;
            let cands = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
            for (i, j) in cands {
                let x = &a[(i, j)];
                if !x.is_zero() && smaller.is_none_or(|(si, sj)| abs_less(x, &a[(si, sj)])) {
                    smaller = Some((i, j));
                }
            }
            if let Some((i, j)) = smaller {
                if j == t {
                    a.swap_rows(t, i);
                    p.swap_rows(t, i);
                } else {
                    a.swap_cols(t, j);
                    q.swap_cols(t, j);
                }
                continue;
            }

            let pivot = a[(t, t)].clone();
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = T::zero() - T::one();
                    row_sub(&mut a, t, i, &minus_one)?;
                    row_sub(&mut p, t, i, &minus_one)?;
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            negate_row(&mut a, t)?;
            negate_row(&mut p, t)?;
        }
        diag.push(a[(t, t)].clone());
    }

    let rank = diag.len();
    Ok(SmithDecomposition { p, q, diag, rank })
}

/// Runs the elimination in `i64` and repeats it in arbitrary precision if a
/// machine operation would overflow.
pub fn integer_snf_promoting(matrix: &Matrix<i64>) -> SmithDecomposition<BigInt> {
    match integer_snf(matrix) {
        Ok(snf) => snf.to_bigint(),
        Err(_) => {
            integer_snf(&matrix.map(|&x| BigInt::from(x))).expect("arbitrary-precision elimination cannot overflow")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed, Zero};

    fn m(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        Matrix::from_rows(rows).unwrap()
    }

    // Bareiss fraction-free determinant.
    fn det(a: &Matrix<BigInt>) -> BigInt {
        let n = a.rows();
        let mut a = a.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(i) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, i);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn check(mat: &Matrix<i64>) -> SmithDecomposition<i64> {
        let snf = integer_snf(mat).unwrap();
        assert!(snf.diag.iter().all(|s| s.is_positive()));
        for w in snf.diag.windows(2) {
            assert_eq!(w[1] % w[0], 0, "{:?}", snf.diag);
        }
        let big = snf.to_bigint();
        let pmq = big
            .p
            .checked_mul(&mat.map(|&x| BigInt::from(x)))
            .unwrap()
            .checked_mul(&big.q)
            .unwrap();
        assert_eq!(pmq, big.diagonal_matrix());
        assert_eq!(det(&big.p).abs(), BigInt::one());
        assert_eq!(det(&big.q).abs(), BigInt::one());
        snf
    }

    #[test]
    fn single_row_of_ones() {
        let snf = check(&m(vec![vec![1, 1, 1]]));
        assert_eq!(snf.diag, vec![1]);
        assert_eq!(snf.rank, 1);
    }

    #[test]
    fn identity() {
        assert_eq!(check(&Matrix::identity(2)).diag, vec![1, 1]);
    }

    #[test]
    fn power_of_triangle() {
        let b = m(vec![
            vec![1, 1, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 1, 1],
            vec![1, 1, 0, 0, 1, 1],
        ]);
        let snf = check(&b);
        let reduced: Vec<i64> = snf.diag.iter().map(|s| num_integer::gcd(*s, 4)).collect();
        assert_eq!(reduced, vec![1, 1, 2]);
    }

    #[test]
    fn textbook_example() {
        let snf = check(&m(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(snf.diag, vec![2, 6, 12]);
    }

    #[test]
    fn zero_and_empty() {
        let snf = check(&Matrix::zeros(3, 2));
        assert_eq!(snf.rank, 0);
        let snf = integer_snf(&Matrix::<i64>::zeros(0, 3)).unwrap();
        assert_eq!((snf.p.rows(), snf.q.rows(), snf.rank), (0, 3, 0));
    }

    #[test]
    fn overflow_is_reported_and_promoted() {
        let mat = m(vec![vec![2, i64::MAX], vec![3, 1]]);
        assert_eq!(integer_snf(&mat).unwrap_err(), Error::Overflow);
        let promoted = integer_snf_promoting(&mat);
        let pm = promoted
            .p
            .checked_mul(&mat.map(|&x| BigInt::from(x)))
            .unwrap()
            .checked_mul(&promoted.q)
            .unwrap();
        assert_eq!(pm, promoted.diagonal_matrix());
    }

    #[test]
    fn i8_overflow_detected() {
        let mat = Matrix::from_rows(vec![vec![97i8, 89], vec![89, 83]]).unwrap();
        match integer_snf(&mat) {
            Err(Error::Overflow) => {}
            Ok(s) => {
                let pm = s.p.checked_mul(&mat).and_then(|x| x.checked_mul(&s.q));
                assert_eq!(pm, Some(s.diagonal_matrix()));
            }
            Err(e) => panic!("{e}"),
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Matrix<i64>> {
            (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), r)
                    .prop_map(|rows| Matrix::from_rows(rows).unwrap())
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]
            #[test]
            fn reconstructs_diagonal(mat in small_matrix()) {
                check(&mat);
            }

            #[test]
            fn zero_one_matrices(rows in proptest::collection::vec(proptest::collection::vec(0i64..=1, 7), 1..7)) {
                check(&Matrix::from_rows(rows).unwrap());
            }
        }
    }
}
