//! Elimination over the two-element field on packed bit rows.

use super::Matrix;
use crate::scalar::ExactInt;

const WORD: usize = 64;

#[derive(Clone, Debug)]
struct BitRows {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitRows {
    // `extra` appends that many zero columns after the matrix columns.
    fn from_matrix<T: ExactInt>(mat: &Matrix<T>, extra: usize) -> Self {
        let words = (mat.cols() + extra).div_ceil(WORD).max(1);
        let rows = mat
            .iter_rows()
            .map(|r| {
                let mut bits = vec![0u64; words];
                for (j, x) in r.iter().enumerate() {
                    if x.is_odd() {
                        bits[j / WORD] |= 1 << (j % WORD);
                    }
                }
                bits
            })
            .collect();
        BitRows { words, rows }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / WORD] >> (j % WORD) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i][j / WORD] |= 1 << (j % WORD);
    }

    /// Reduced row echelon form over the first `cols` columns; returns the
    /// pivot column of each of the leading rows.
    fn echelon(&mut self, cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..self.rows.len()).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot_row = self.rows[r].clone();
            for i in 0..self.rows.len() {
                if i != r && self.get(i, c) {
                    for w in 0..self.words {
                        self.rows[i][w] ^= pivot_row[w];
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        pivots
    }
}

/// Rank of `mat` with entries reduced mod 2.
pub fn rank_gf2<T: ExactInt>(mat: &Matrix<T>) -> usize {
    BitRows::from_matrix(mat, 0).echelon(mat.cols()).len()
}

/// Some solution of `mat · y ≡ rhs (mod 2)` with free variables set to 0,
/// or `None` when the system is inconsistent.
pub fn solve_gf2<T: ExactInt>(mat: &Matrix<T>, rhs: &[bool]) -> Option<Vec<u8>> {
    assert_eq!(rhs.len(), mat.rows(), "right-hand side length");
    let n = mat.cols();
    let mut bits = BitRows::from_matrix(mat, 1);
    for (i, &b) in rhs.iter().enumerate() {
        if b {
            bits.set(i, n);
        }
    }
    let pivots = bits.echelon(n);
    if (pivots.len()..bits.rows.len()).any(|i| bits.get(i, n)) {
        return None;
    }
    let mut y = vec![0u8; n];
    for (row, &col) in pivots.iter().enumerate() {
        y[col] = u8::from(bits.get(row, n));
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_gf2(&mat(vec![vec![1, 1, 1]])), 1);
        let triangle = mat(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(rank_gf2(&triangle), 2);
        let c3 = mat(vec![
            vec![1, 1, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 1, 1],
            vec![1, 1, 0, 0, 1, 1],
        ]);
        assert_eq!(rank_gf2(&c3), 2);
        assert_eq!(rank_gf2(&mat(vec![vec![2, 4], vec![6, 8]])), 0);
        assert_eq!(rank_gf2(&Matrix::<i64>::identity(130)), 130);
    }

    #[test]
    fn solves() {
        let triangle = mat(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(solve_gf2(&triangle, &[true, true, true]), None);
        assert_eq!(solve_gf2(&triangle, &[false; 3]), Some(vec![0, 0, 0]));
        let path = mat(vec![vec![1, 1, 0], vec![0, 1, 1]]);
        let y = solve_gf2(&path, &[true, true]).unwrap();
        assert_eq!((y[0] + y[1]) % 2, 1);
        assert_eq!((y[1] + y[2]) % 2, 1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn brute_rank(rows: &[Vec<u8>], n: usize) -> usize {
            // dimension of the row space = log2 of the number of distinct combinations
            let mut span = std::collections::BTreeSet::new();
            for mask in 0u32..(1 << rows.len()) {
                let mut v = vec![0u8; n];
                for (i, r) in rows.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        for j in 0..n {
                            v[j] ^= r[j];
                        }
                    }
                }
                span.insert(v);
            }
            span.len().trailing_zeros() as usize
        }

        proptest! {
            #[test]
            fn rank_matches_span(rows in prop::collection::vec(prop::collection::vec(0u8..=1, 6), 1..8)) {
                let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()).unwrap();
                prop_assert_eq!(rank_gf2(&m), brute_rank(&rows, 6));
            }

            #[test]
            fn solutions_satisfy(rows in prop::collection::vec(prop::collection::vec(0u8..=1, 5), 1..6), seed in any::<u32>()) {
                let rhs: Vec<bool> = (0..rows.len()).map(|i| seed >> i & 1 == 1).collect();
                let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()).unwrap();
                let exists = (0u32..32).any(|y| rows.iter().zip(&rhs).all(|(r, &b)| {
                    (r.iter().enumerate().map(|(j, &a)| a as u32 * (y >> j & 1)).sum::<u32>() % 2 == 1) == b
                }));
                match solve_gf2(&m, &rhs) {
                    Some(y) => {
                        prop_assert!(exists);
                        for (r, &b) in rows.iter().zip(&rhs) {
                            let s: u32 = r.iter().zip(&y).map(|(&a, &v)| (a * v) as u32).sum();
                            prop_assert_eq!(s % 2 == 1, b);
                        }
                    }
                    None => prop_assert!(!exists),
                }
            }
        }
    }
}
