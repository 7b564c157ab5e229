//! Linear systems over `Z_m`, solved through the integer Smith form.
//!
//! With `P·B·Q = D`, the substitution `y = Q·z` turns `B·y ≡ c` into the
//! decoupled congruences `s_i·z_i ≡ (P·c)_i (mod m)`. Each one is solvable
//! iff `gcd(s_i, m)` divides the right-hand side, and then contributes a
//! cyclic factor `Z_gcd(s_i, m)`; unconstrained coordinates contribute `Z_m`.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::arith::{add_mod, gcd, mod_inverse, mul_mod};
use super::snf::{integer_snf, SmithDecomposition};
use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::ExactInt;

/// Invariant divisors of a matrix over `Z_m`: `gcd(s_i, m)` for each integer
/// invariant factor, keeping only values below `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModInvariants {
    pub modulus: u64,
    pub divisors: Vec<u64>,
}

impl ModInvariants {
    pub fn r_m(&self) -> usize {
        self.divisors.len()
    }

    /// Number of odd divisors; equals the rank over `Z_2` when `m` is even.
    pub fn odd_count(&self) -> usize {
        self.divisors.iter().filter(|&&d| d % 2 == 1).count()
    }
}

pub fn invariant_divisors_mod<T: ExactInt>(snf: &SmithDecomposition<T>, m: u64) -> Result<ModInvariants> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let divisors = snf
        .diag
        .iter()
        .map(|s| s.residue(m).map(|r| gcd(r, m)).ok_or(Error::Overflow))
        .filter(|d| d.as_ref().map_or(true, |&d| d < m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModInvariants { modulus: m, divisors })
}

/// `{y ∈ Z_m^n : B·y ≡ c}` as `particular + ⊕ Z_{free_moduli[j]}·basis[j]`.
///
/// The homogeneous part is described even when the system is inconsistent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSpace {
    pub modulus: u64,
    pub dimension: usize,
    pub particular: Option<Vec<u64>>,
    pub free_moduli: Vec<u64>,
    pub basis: Vec<Vec<u64>>,
}

impl SolutionSpace {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    pub fn cardinality(&self) -> BigUint {
        if self.particular.is_none() {
            return BigUint::ZERO;
        }
        self.free_moduli
            .iter()
            .fold(BigUint::one(), |acc, &c| acc * BigUint::from(c))
    }

    /// The element with parameter tuple `params` (`params[j] < free_moduli[j]`).
    pub fn element(&self, params: &[u64]) -> Option<Vec<u64>> {
        let mut y = self.particular.clone()?;
        assert_eq!(params.len(), self.basis.len());
        for (t, b) in params.iter().zip(&self.basis) {
            for (yi, bi) in y.iter_mut().zip(b) {
                *yi = add_mod(*yi, mul_mod(*t, *bi, self.modulus), self.modulus);
            }
        }
        Some(y)
    }
}

fn residues<T: ExactInt>(mat: &Matrix<T>, m: u64) -> Result<Matrix<u64>> {
    let rows = mat
        .iter_rows()
        .map(|r| r.iter().map(|x| x.residue(m).ok_or(Error::Overflow)).collect())
        .collect::<Result<Vec<Vec<u64>>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, mat.cols()));
    }
    Matrix::from_rows(rows)
}

fn mat_vec_mod(a: &Matrix<u64>, x: &[u64], m: u64) -> Vec<u64> {
    a.iter_rows()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(0, |acc, (&r, &v)| add_mod(acc, mul_mod(r, v, m), m))
        })
        .collect()
}

/// Solves `B·y ≡ c (mod m)`. With `pin_first` the solutions are restricted to
/// `y_1 = 0`; this requires `B·1 ≡ 0`, so that the restriction is the
/// quotient of the solution module by `Z_m·1`.
pub fn solve_mod<T: ExactInt>(b: &Matrix<T>, c: &[T], m: u64, pin_first: bool) -> Result<SolutionSpace> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    if c.len() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: b.rows(),
            found: c.len(),
        });
    }
    let n = b.cols();
    let mut rhs: Vec<u64> = c
        .iter()
        .map(|x| x.residue(m).ok_or(Error::Overflow))
        .collect::<Result<_>>()?;

    let system = if pin_first {
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let b_mod = residues(b, m)?;
        if b_mod
            .iter_rows()
            .any(|r| r.iter().fold(0, |acc, &x| add_mod(acc, x, m)) != 0)
        {
            return Err(Error::PinnedRowSums(m));
        }
        // Append the row e_1 with right-hand side 0: the Smith form of the
        // stacked system splits Z_m·1 off the homogeneous module.
        let mut rows: Vec<Vec<T>> = b.iter_rows().map(<[T]>::to_vec).collect();
        let mut pin = vec![T::zero(); n];
        pin[0] = T::one();
        rows.push(pin);
        rhs.push(0);
        Matrix::from_rows(rows)?
    } else {
        b.clone()
    };

    let snf = integer_snf(&system)?;
    let p = residues(&snf.p, m)?;
    let q = residues(&snf.q, m)?;
    let transformed = mat_vec_mod(&p, &rhs, m);

    let mut consistent = true;
    let mut z0 = vec![0u64; n];
    let mut generators: Vec<(usize, u64, u64)> = Vec::new(); // (coordinate, step, order)
    for (i, s) in snf.diag.iter().enumerate() {
        let s = s.residue(m).ok_or(Error::Overflow)?;
        let g = gcd(s, m);
        let ci = transformed[i];
        let step = m / g;
        if g > 1 {
            generators.push((i, step, g));
        }
        if ci % g != 0 {
            consistent = false;
            continue;
        }
        let inv = mod_inverse(s / g, step).expect("s/g is a unit modulo m/g");
        z0[i] = mul_mod(ci / g, inv, step);
    }
    if transformed[snf.rank..].iter().any(|&x| x != 0) {
        consistent = false;
    }
    generators.extend((snf.rank..n).map(|j| (j, 1, m)));

    let basis = generators
        .iter()
        .map(|&(j, step, _)| (0..n).map(|i| mul_mod(q[(i, j)], step, m)).collect())
        .collect();
    let free_moduli = generators.iter().map(|&(_, _, order)| order).collect();
    let particular = consistent.then(|| mat_vec_mod(&q, &z0, m));

    Ok(SolutionSpace {
        modulus: m,
        dimension: n,
        particular,
        free_moduli,
        basis,
    })
}

/// [`solve_mod`] in `i64`, repeated in arbitrary precision on overflow.
pub fn solve_mod_promoting(b: &Matrix<i64>, c: &[i64], m: u64, pin_first: bool) -> Result<SolutionSpace> {
    match solve_mod(b, c, m, pin_first) {
        Err(Error::Overflow) => {
            let c: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            solve_mod(&b.map(|&x| BigInt::from(x)), &c, m, pin_first)
        }
        other => other,
    }
}

/// Mixed-radix walk over the parameter tuples of a [`SolutionSpace`], the
/// last parameter varying fastest.
#[derive(Clone, Debug)]
pub struct Solutions {
    modulus: u64,
    moduli: Vec<u64>,
    basis: Vec<Vec<u64>>,
    digits: Vec<u64>,
    current: Option<Vec<u64>>,
    remaining: usize,
}

impl Iterator for Solutions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.current.as_mut()?;
        let out = current.clone();
        self.remaining -= 1;
        if self.remaining > 0 {
            // c_j·basis_j ≡ 0, so a wrapping digit still just adds basis_j.
            for j in (0..self.digits.len()).rev() {
                for (y, b) in current.iter_mut().zip(&self.basis[j]) {
                    *y = add_mod(*y, *b, self.modulus);
                }
                self.digits[j] += 1;
                if self.digits[j] < self.moduli[j] {
                    break;
                }
                self.digits[j] = 0;
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = if self.current.is_some() { self.remaining } else { 0 };
        (left, Some(left))
    }
}

impl ExactSizeIterator for Solutions {}

pub fn enumerate_solutions(space: &SolutionSpace, cap: usize) -> Result<Solutions> {
    if cap == 0 {
        return Err(Error::ZeroCap);
    }
    let card = space.cardinality();
    let remaining = if card < BigUint::from(cap) {
        usize::try_from(&card).expect("smaller than cap")
    } else {
        cap
    };
    Ok(Solutions {
        modulus: space.modulus,
        moduli: space.free_moduli.clone(),
        basis: space.basis.clone(),
        digits: vec![0; space.free_moduli.len()],
        current: space.particular.clone(),
        remaining,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        Matrix::from_rows(rows).unwrap()
    }

    // Independent oracle: every vector of Z_m^n.
    fn brute(b: &Matrix<i64>, c: &[i64], m: u64, pin: bool) -> BTreeSet<Vec<u64>> {
        let n = b.cols();
        let total = (m as usize).pow(n as u32);
        (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let d = (code % m as usize) as u64;
                        code /= m as usize;
                        d
                    })
                    .collect::<Vec<u64>>()
            })
            .filter(|y| !pin || y[0] == 0)
            .filter(|y| {
                b.iter_rows().zip(c).all(|(row, &ci)| {
                    let s: i64 = row.iter().zip(y).map(|(&a, &v)| a * v as i64).sum();
                    (s - ci).rem_euclid(m as i64) == 0
                })
            })
            .collect()
    }

    fn all(space: &SolutionSpace) -> BTreeSet<Vec<u64>> {
        enumerate_solutions(space, usize::MAX).unwrap().collect()
    }

    #[test]
    fn divisors_of_power_of_triangle() {
        let b = mat(vec![
            vec![1, 1, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 1, 1],
            vec![1, 1, 0, 0, 1, 1],
        ]);
        let snf = integer_snf(&b).unwrap();
        let inv4 = invariant_divisors_mod(&snf, 4).unwrap();
        assert_eq!(inv4.divisors, vec![1, 1, 2]);
        assert_eq!(inv4.r_m(), 3);
        assert_eq!(invariant_divisors_mod(&snf, 2).unwrap().divisors, vec![1, 1]);
        let single = integer_snf(&mat(vec![vec![1, 1, 1]])).unwrap();
        assert_eq!(invariant_divisors_mod(&single, 3).unwrap().divisors, vec![1]);
        assert!(invariant_divisors_mod(&single, 1).is_err());
    }

    #[test]
    fn single_edge_homogeneous() {
        let b = mat(vec![vec![1, 1, 1]]);
        let space = solve_mod(&b, &[0], 3, true).unwrap();
        assert_eq!(space.cardinality(), BigUint::from(3u32));
        let expected: BTreeSet<Vec<u64>> = [vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]].into_iter().collect();
        assert_eq!(all(&space), expected);
        assert_eq!(brute(&b, &[0], 3, true), expected);
    }

    #[test]
    fn single_edge_inhomogeneous() {
        let b = mat(vec![vec![1, 1, 1, 1]]);
        let space = solve_mod(&b, &[2], 4, true).unwrap();
        assert!(space.is_consistent());
        assert_eq!(space.cardinality(), BigUint::from(16u32));
        assert_eq!(brute(&b, &[2], 4, true).len(), 16);
        assert_eq!(all(&space), brute(&b, &[2], 4, true));
    }

    #[test]
    fn odd_cycle_has_no_two_colouring() {
        let b = mat(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let space = solve_mod(&b, &[1, 1, 1], 2, true).unwrap();
        assert!(space.particular.is_none());
        assert_eq!(space.cardinality(), BigUint::ZERO);
        assert_eq!(enumerate_solutions(&space, 5).unwrap().count(), 0);
    }

    #[test]
    fn cap_semantics() {
        let b = mat(vec![vec![1, 1, 1, 1]]);
        let space = solve_mod(&b, &[2], 4, true).unwrap();
        let first: BTreeSet<_> = enumerate_solutions(&space, 10).unwrap().collect();
        assert_eq!(first.len(), 10);
        assert_eq!(enumerate_solutions(&space, 10).unwrap().len(), 10);
        assert!(matches!(enumerate_solutions(&space, 0), Err(Error::ZeroCap)));
    }

    #[test]
    fn pinning_needs_balanced_rows() {
        let b = mat(vec![vec![1, 1, 0]]);
        assert!(matches!(solve_mod(&b, &[0], 3, true), Err(Error::PinnedRowSums(3))));
        assert!(solve_mod(&b, &[0], 3, false).is_ok());
        assert!(matches!(
            solve_mod(&b, &[0, 1], 3, false),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pinned_structure_matches_divisor_formula() {
        // Z_4: divisors [1,1,2], n - 1 - r = 2 => Z2 + Z4 + Z4
        let b = mat(vec![
            vec![1, 1, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 1, 1],
            vec![1, 1, 0, 0, 1, 1],
        ]);
        let space = solve_mod(&b, &[0, 0, 0], 4, true).unwrap();
        assert_eq!(space.free_moduli, vec![2, 4, 4]);
        assert_eq!(space.cardinality(), BigUint::from(32u32));
        assert_eq!(all(&space), brute(&b, &[0, 0, 0], 4, true));
    }

    #[test]
    fn promoting_matches_machine_path() {
        let b = mat(vec![vec![3, 5, 7], vec![2, 2, 8]]);
        for m in 2..9 {
            let a = solve_mod(&b, &[1, 2], m, false).unwrap();
            let p = solve_mod_promoting(&b, &[1, 2], m, false).unwrap();
            assert_eq!(a, p);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn system() -> impl Strategy<Value = (Matrix<i64>, Vec<i64>, u64)> {
            (1usize..=4, 1usize..=5, prop::sample::select(vec![2u64, 3, 4, 6])).prop_flat_map(|(k, n, m)| {
                (
                    prop::collection::vec(prop::collection::vec(-3i64..=3, n), k),
                    prop::collection::vec(-5i64..=5, k),
                    Just(m),
                )
                    .prop_map(|(rows, c, m)| (Matrix::from_rows(rows).unwrap(), c, m))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            #[test]
            fn solution_set_matches_brute_force((b, c, m) in system()) {
                let space = solve_mod(&b, &c, m, false).unwrap();
                let expected = brute(&b, &c, m, false);
                prop_assert_eq!(space.cardinality(), BigUint::from(expected.len()));
                let listed: Vec<Vec<u64>> = enumerate_solutions(&space, usize::MAX).unwrap().collect();
                prop_assert_eq!(listed.len(), expected.len());
                prop_assert_eq!(listed.into_iter().collect::<BTreeSet<_>>(), expected);
            }

            #[test]
            fn pinned_balanced_systems((rows, c, m) in (1usize..=4, 2usize..=5, prop::sample::select(vec![2u64, 3, 4, 6]))
                .prop_flat_map(|(k, n, m)| (
                    prop::collection::vec(prop::collection::vec(0i64..=2, n - 1), k),
                    prop::collection::vec(0i64..6, k),
                    Just(m),
                )))
            {
                // last column balances each row sum to a multiple of m
                let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut r| {
                    let s: i64 = r.iter().sum();
                    r.push((-s).rem_euclid(m as i64));
                    r
                }).collect();
                let b = Matrix::from_rows(rows).unwrap();
                let space = solve_mod(&b, &c, m, true).unwrap();
                let expected = brute(&b, &c, m, true);
                let listed: BTreeSet<Vec<u64>> = enumerate_solutions(&space, usize::MAX).unwrap().collect();
                prop_assert_eq!(space.cardinality(), BigUint::from(expected.len()));
                prop_assert_eq!(listed, expected);
            }
        }
    }
}
