//! Independent checks: tensor application on complex vectors, eigen-equation
//! residuals, diagonal similarity of the Laplacian and signless Laplacian,
//! and exhaustive solution counts.
//!
//! The order-`m` tensors are never materialized. Summing the adjacency entry
//! `1/(m-1)!` over the `(m-1)!` orderings of an edge cancels the coefficient,
//! so `(A x^{m-1})_i = Σ_{e ∋ i} Π_{j ∈ e, j ≠ i} x_j`.

pub use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::Matrix;
use crate::scalar::Real;
use crate::spectral::{EigenKind, ResidueEigenvector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    Adjacency,
    Laplacian,
    Signless,
}

impl From<EigenKind> for TensorKind {
    fn from(kind: EigenKind) -> Self {
        match kind {
            EigenKind::Laplacian => TensorKind::Laplacian,
            EigenKind::Signless => TensorKind::Signless,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector<F> {
    entries: Vec<Complex<F>>,
}

impl<F: Real> ComplexVector<F> {
    pub fn new(entries: Vec<Complex<F>>) -> Self {
        ComplexVector { entries }
    }

    pub fn from_real(values: &[F]) -> Self {
        Self::new(values.iter().map(|&v| Complex::new(v, F::zero())).collect())
    }

    pub fn ones(n: usize) -> Self {
        Self::new(vec![Complex::new(F::one(), F::zero()); n])
    }

    pub fn entries(&self) -> &[Complex<F>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.entries.iter().map(Complex::conj).collect())
    }

    pub fn inf_norm(&self) -> F {
        self.entries.iter().map(|z| z.norm()).fold(F::zero(), F::max)
    }

    pub fn is_zero_free(&self) -> bool {
        self.entries.iter().all(|z| z.norm_sqr() > F::zero())
    }
}

/// `exp(2πi·t/m)` for `t = 0..m`. Quarter turns are exact, and equal
/// exponents always map to bit-identical values.
#[derive(Clone, Debug)]
pub struct RootsOfUnity<F> {
    table: Vec<Complex<F>>,
}

impl<F: Real> RootsOfUnity<F> {
    pub fn new(m: u64) -> Self {
        let (zero, one) = (F::zero(), F::one());
        let table = (0..m)
            .map(|t| match (4 * t) % m == 0 {
                true if t == 0 => Complex::new(one, zero),
                true if 4 * t == m => Complex::new(zero, one),
                true if 2 * t == m => Complex::new(-one, zero),
                true => Complex::new(zero, -one),
                false => {
                    let angle = F::TAU() * F::from(t).unwrap() / F::from(m).unwrap();
                    Complex::new(angle.cos(), angle.sin())
                }
            })
            .collect();
        RootsOfUnity { table }
    }

    pub fn get(&self, t: u64) -> Complex<F> {
        self.table[(t % self.table.len() as u64) as usize]
    }
}

/// `x_j = exp(2πi·α_j/m)`.
pub fn exponent_to_vector<F: Real>(alpha: &ResidueEigenvector) -> ComplexVector<F> {
    let roots = RootsOfUnity::new(alpha.modulus());
    ComplexVector::new(alpha.alpha().iter().map(|&a| roots.get(a)).collect())
}

fn check_len<F>(h: &Hypergraph, x: &ComplexVector<F>) -> Result<()> {
    if x.entries.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: x.entries.len(),
        });
    }
    Ok(())
}

/// `T x^{m-1}` for the adjacency, Laplacian `D - A` or signless `D + A`.
pub fn apply_tensor<F: Real>(h: &Hypergraph, kind: TensorKind, x: &ComplexVector<F>) -> Result<ComplexVector<F>> {
    check_len(h, x)?;
    let zero = Complex::new(F::zero(), F::zero());
    let mut adj = vec![zero; h.n()];
    for e in h.edges() {
        for &i in e {
            let prod = e
                .iter()
                .filter(|&&j| j != i)
                .fold(Complex::new(F::one(), F::zero()), |acc, &j| acc * x.entries[j]);
            adj[i] = adj[i] + prod;
        }
    }
    if kind == TensorKind::Adjacency {
        return Ok(ComplexVector::new(adj));
    }
    let power = (h.m() - 1) as u32;
    let out = h
        .degrees()
        .into_iter()
        .zip(adj)
        .zip(&x.entries)
        .map(|((deg, a), xi)| {
            let diag = xi.powu(power) * F::from(deg).unwrap();
            match kind {
                TensorKind::Laplacian => diag - a,
                _ => diag + a,
            }
        })
        .collect();
    Ok(ComplexVector::new(out))
}

/// `‖T x^{m-1} - λ x^{[m-1]}‖_∞ / max(1, ‖x‖_∞)^{m-1}`.
pub fn residual<F: Real>(h: &Hypergraph, kind: TensorKind, lambda: Complex<F>, x: &ComplexVector<F>) -> Result<F> {
    check_len(h, x)?;
    let norm = x.inf_norm();
    if norm == F::zero() {
        return Err(Error::ZeroVector);
    }
    let power = (h.m() - 1) as u32;
    let tx = apply_tensor(h, kind, x)?;
    let diff = tx
        .entries
        .iter()
        .zip(&x.entries)
        .map(|(t, xi)| (t - lambda * xi.powu(power)).norm())
        .fold(F::zero(), F::max);
    Ok(diff / norm.max(F::one()).powi(power as i32))
}

/// Diagonal of a unit-modulus diagonal matrix `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalGauge<F> {
    entries: Vec<Complex<F>>,
}

impl<F: Real> DiagonalGauge<F> {
    pub fn new(entries: Vec<Complex<F>>) -> Self {
        DiagonalGauge { entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![Complex::new(F::one(), F::zero()); n])
    }

    /// `d_v = exp(2πi·y_v/m)` for a vertex labelling `y`.
    pub fn from_exponents(y: &[u64], m: u64) -> Self {
        let roots = RootsOfUnity::new(m);
        Self::new(y.iter().map(|&t| roots.get(t)).collect())
    }

    /// `d_v = -1` on side 1 and `+1` on side 0.
    pub fn from_signs(sides: &[u8]) -> Self {
        let one = F::one();
        Self::new(
            sides
                .iter()
                .map(|&s| Complex::new(if s == 1 { -one } else { one }, F::zero()))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[Complex<F>] {
        &self.entries
    }
}

/// Whether `Q = D^{-(m-1)} L D` entrywise, to tolerance `tol`.
///
/// Diagonal positions agree for any unit gauge. At an edge position with
/// leading index `i` the Laplacian entry is `-1/(m-1)!` and the signless
/// entry `+1/(m-1)!`, so the check is `-d_i^{-(m-1)} Π_{j ∈ e∖i} d_j = 1`.
pub fn verify_diag_similarity<F: Real>(h: &Hypergraph, gauge: &DiagonalGauge<F>, tol: F) -> Result<bool> {
    if gauge.entries.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: gauge.entries.len(),
        });
    }
    for (index, d) in gauge.entries.iter().enumerate() {
        let modulus = d.norm();
        if (modulus - F::one()).abs() > tol {
            return Err(Error::NonUnitGauge {
                index,
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let power = (h.m() - 1) as u32;
    let one = Complex::new(F::one(), F::zero());
    for e in h.edges() {
        for &i in e {
            let scale = gauge.entries[i].inv().powu(power);
            let prod = e
                .iter()
                .filter(|&&j| j != i)
                .fold(one, |acc, &j| acc * gauge.entries[j]);
            let entry = -(scale * prod);
            if (entry - one).norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest number of candidate vectors [`brute_force_count`] will visit.
pub const BRUTE_FORCE_BUDGET: u128 = 1 << 20;

/// Exhaustive count of `y ∈ Z_m^n` (with `y_1 = 0` when pinned) such that
/// `B·y ≡ c (mod m)`.
pub fn brute_force_count(b: &Matrix<i64>, c: &[i64], m: u64, pin_first: bool) -> Result<u64> {
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
    let free: Vec<usize> = (usize::from(pin_first)..n).collect();
    let candidates = (m as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if candidates > BRUTE_FORCE_BUDGET {
        return Err(Error::BudgetExceeded {
            candidates,
            budget: BRUTE_FORCE_BUDGET,
        });
    }

    let mi = m as i64;
    let target: Vec<i64> = c.iter().map(|x| x.rem_euclid(mi)).collect();
    // column j as (row, coefficient mod m), zeros dropped
    let columns: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|j| {
            (0..b.rows())
                .map(|i| (i, b[(i, j)].rem_euclid(mi)))
                .filter(|&(_, a)| a != 0)
                .collect()
        })
        .collect();

    let mut sums = vec![0i64; b.rows()];
    let mut mismatched = sums.iter().zip(&target).filter(|(s, t)| s != t).count();
    let mut digits = vec![0u64; free.len()];
    let mut count = 0u64;
    loop {
        if mismatched == 0 {
            count += 1;
        }
        // Odometer step; a wrapping digit has added its column m times, which
        // is zero mod m, so every step adds exactly one column.
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            for &(row, a) in &columns[free[pos]] {
                let before = sums[row] == target[row];
                sums[row] = (sums[row] + a) % mi;
                let after = sums[row] == target[row];
                match (before, after) {
                    (true, false) => mismatched += 1,
                    (false, true) => mismatched -= 1,
                    _ => {}
                }
            }
            digits[pos] += 1;
            if digits[pos] < m {
                break;
            }
            digits[pos] = 0;
        }
    }
}
