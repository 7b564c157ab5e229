//! Eigenvectors of the Laplacian and signless Laplacian tensors of a
//! connected uniform hypergraph for the eigenvalue zero.
//!
//! Up to scaling, every such eigenvector has entries `exp(2πi·α_v/m)` with
//! `α_1 = 0`, and the admissible exponent vectors are exactly the solutions
//! of `B·α ≡ 0` (Laplacian) or `B·α ≡ m/2·1` (signless) over `Z_m` with
//! `α_1 = 0`, where `B` is the incidence matrix. Real (H-) eigenvectors
//! correspond to the same systems over `Z_2`. Counting and listing them is
//! therefore a matter of exact linear algebra.

mod report;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use report::{format_module_structure, ExactCount, ZeroSpectrumReport};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{
    composition_length, enumerate_solutions, integer_snf_promoting, invariant_divisors_mod, rank_gf2, solve_gf2,
    solve_mod_promoting, Matrix, ModInvariants, SolutionSpace, Solutions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EigenKind {
    Laplacian,
    Signless,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Exponent vector of a normalized first eigenvector: `x_v = exp(2πi·α_v/m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueEigenvector {
    alpha: Vec<u64>,
    modulus: u64,
}

impl ResidueEigenvector {
    pub fn new(alpha: Vec<u64>, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        match alpha.first() {
            None => return Err(Error::InvalidExponent("empty exponent vector".into())),
            Some(&a) if a != 0 => return Err(Error::InvalidExponent(format!("first exponent is {a}, expected 0"))),
            _ => {}
        }
        if let Some(a) = alpha.iter().find(|&&a| a >= modulus) {
            return Err(Error::InvalidExponent(format!(
                "exponent {a} is not a residue modulo {modulus}"
            )));
        }
        Ok(ResidueEigenvector { alpha, modulus })
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Whether every edge sum satisfies the congruence for `kind`.
    pub fn satisfies(&self, h: &Hypergraph, kind: EigenKind) -> bool {
        let m = self.modulus;
        if self.alpha.len() != h.n() || m != h.m() as u64 {
            return false;
        }
        let target = match kind {
            EigenKind::Laplacian => 0,
            EigenKind::Signless if m % 2 == 0 => m / 2,
            EigenKind::Signless => return false,
        };
        h.edges()
            .iter()
            .all(|e| e.iter().map(|&v| self.alpha[v]).sum::<u64>() % m == target)
    }
}

impl fmt::Display for ResidueEigenvector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// A bipartition `{V_0, V_1}` with vertex 1 in `V_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    sides: Vec<u8>,
}

impl Bipartition {
    fn from_sides(sides: Vec<u8>) -> Self {
        debug_assert_eq!(sides.first(), Some(&0));
        Bipartition { sides }
    }

    /// `sides()[v]` is 0 or 1 for each 0-based vertex `v`.
    pub fn sides(&self) -> &[u8] {
        &self.sides
    }

    /// 0-based vertices on the given side.
    pub fn part(&self, side: u8) -> Vec<usize> {
        (0..self.sides.len()).filter(|&v| self.sides[v] == side).collect()
    }

    /// Number of vertices of `edge` on side 1.
    pub fn meet(&self, edge: &[usize]) -> usize {
        edge.iter().filter(|&&v| self.sides[v] == 1).count()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |side| {
            self.part(side)
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{}}} | {{{}}}", show(0), show(1))
    }
}

// Incidence matrix of a connected hypergraph.
fn connected_incidence(h: &Hypergraph) -> Result<Matrix<i64>> {
    let components = h.component_count();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(h.incidence_matrix().to_matrix())
}

fn modulus(h: &Hypergraph) -> u64 {
    h.m() as u64
}

fn rhs(h: &Hypergraph, kind: EigenKind) -> Option<Vec<i64>> {
    let m = h.m() as i64;
    match kind {
        EigenKind::Laplacian => Some(vec![0; h.k()]),
        EigenKind::Signless if m % 2 == 0 => Some(vec![m / 2; h.k()]),
        EigenKind::Signless => None,
    }
}

/// Invariant divisors of the incidence matrix over `Z_m` (no connectivity
/// requirement).
pub fn incidence_invariants(h: &Hypergraph) -> ModInvariants {
    let snf = integer_snf_promoting(&h.incidence_matrix().to_matrix());
    invariant_divisors_mod(&snf, modulus(h)).expect("uniformity is at least 2")
}

/// Pinned exponent space for `kind`: `{α : B·α ≡ rhs, α_1 = 0}`. `None` for
/// the signless kind with odd uniformity, where no right-hand side exists.
pub fn exponent_space(h: &Hypergraph, kind: EigenKind) -> Result<Option<SolutionSpace>> {
    let b = connected_incidence(h)?;
    rhs(h, kind)
        .map(|c| solve_mod_promoting(&b, &c, modulus(h), true))
        .transpose()
}

/// Pinned `Z_2` space for `parity`: `{β : B·β ≡ 0 or 1 (mod 2), β_1 = 0}`.
fn bipartition_space(h: &Hypergraph, parity: Parity) -> Result<SolutionSpace> {
    let b = connected_incidence(h)?;
    if h.m() % 2 == 1 {
        return Err(Error::OddUniformity(h.m()));
    }
    let c = vec![i64::from(parity == Parity::Odd); h.k()];
    solve_mod_promoting(&b, &c, 2, true)
}

fn pow(base: u64, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

fn laplacian_count_from(inv: &ModInvariants, n: usize) -> Result<BigUint> {
    let free = (n - 1)
        .checked_sub(inv.r_m())
        .ok_or_else(|| Error::InvariantBreach(format!("r_m = {} exceeds n - 1 = {}", inv.r_m(), n - 1)))?;
    let torsion = inv
        .divisors
        .iter()
        .fold(BigUint::one(), |acc, &d| acc * BigUint::from(d));
    Ok(pow(inv.modulus, free) * torsion)
}

/// `m^(n-1-r) · Π d_i`.
pub fn count_first_laplacian(h: &Hypergraph) -> Result<BigUint> {
    connected_incidence(h)?;
    laplacian_count_from(&incidence_invariants(h), h.n())
}

/// Equal to the Laplacian count when `B·y ≡ m/2·1` is solvable, else 0.
pub fn count_first_signless(h: &Hypergraph) -> Result<BigUint> {
    if is_odd_colorable(h)? {
        count_first_laplacian(h)
    } else {
        Ok(BigUint::ZERO)
    }
}

pub fn count_first(h: &Hypergraph, kind: EigenKind) -> Result<BigUint> {
    match kind {
        EigenKind::Laplacian => count_first_laplacian(h),
        EigenKind::Signless => count_first_signless(h),
    }
}

/// Number of first eigenvectors that are real up to scaling.
pub fn count_h(h: &Hypergraph, kind: EigenKind) -> Result<BigUint> {
    let b = connected_incidence(h)?;
    if h.m() % 2 == 1 {
        return Ok(match kind {
            EigenKind::Laplacian => BigUint::one(),
            EigenKind::Signless => BigUint::ZERO,
        });
    }
    let solvable = match kind {
        EigenKind::Laplacian => true,
        EigenKind::Signless => solve_gf2(&b, &vec![true; h.k()]).is_some(),
    };
    if !solvable {
        return Ok(BigUint::ZERO);
    }
    Ok(pow(2, h.n() - 1 - rank_gf2(&b)))
}

/// Number of first eigenvectors that cannot be scaled to a real vector.
pub fn count_n(h: &Hypergraph, kind: EigenKind) -> Result<BigUint> {
    let total = count_first(h, kind)?;
    let real = count_h(h, kind)?;
    if real > total {
        return Err(Error::InvariantBreach(format!(
            "{real} H-eigenvectors exceed {total} eigenvectors"
        )));
    }
    Ok(total - real)
}

/// An odd-coloring `f` with every edge sum `≡ m/2 (mod m)` and `f(1) = 0`:
/// the particular solution of the Smith-form back-substitution.
pub fn odd_coloring(h: &Hypergraph) -> Result<Option<ResidueEigenvector>> {
    let Some(space) = exponent_space(h, EigenKind::Signless)? else {
        return Ok(None);
    };
    space
        .particular
        .map(|alpha| ResidueEigenvector::new(alpha, modulus(h)))
        .transpose()
}

pub fn is_odd_colorable(h: &Hypergraph) -> Result<bool> {
    Ok(odd_coloring(h)?.is_some())
}

/// An odd bipartition, if any. Requires even uniformity.
pub fn odd_bipartition(h: &Hypergraph) -> Result<Option<Bipartition>> {
    let b = connected_incidence(h)?;
    if h.m() % 2 == 1 {
        return Err(Error::OddUniformity(h.m()));
    }
    Ok(solve_gf2(&b, &vec![true; h.k()]).map(|mut y| {
        // B·1 ≡ 0 (mod 2), so flipping every side keeps a solution
        if y[0] == 1 {
            y.iter_mut().for_each(|v| *v ^= 1);
        }
        Bipartition::from_sides(y)
    }))
}

pub fn is_odd_bipartite(h: &Hypergraph) -> Result<bool> {
    Ok(odd_bipartition(h)?.is_some())
}

pub struct Eigenvectors {
    modulus: u64,
    inner: Option<Solutions>,
}

impl Iterator for Eigenvectors {
    type Item = ResidueEigenvector;

    fn next(&mut self) -> Option<ResidueEigenvector> {
        let alpha = self.inner.as_mut()?.next()?;
        Some(ResidueEigenvector {
            alpha,
            modulus: self.modulus,
        })
    }
}

/// Streams the exponent vectors of the first eigenvectors of `kind`, at most
/// `cap` of them, in mixed-radix order of the solution parameters.
pub fn enumerate_eigenvectors(h: &Hypergraph, kind: EigenKind, cap: usize) -> Result<Eigenvectors> {
    if cap == 0 {
        return Err(Error::ZeroCap);
    }
    let inner = exponent_space(h, kind)?
        .map(|space| enumerate_solutions(&space, cap))
        .transpose()?;
    Ok(Eigenvectors {
        modulus: modulus(h),
        inner,
    })
}

pub struct Bipartitions {
    inner: Solutions,
}

impl Iterator for Bipartitions {
    type Item = Bipartition;

    fn next(&mut self) -> Option<Bipartition> {
        let y = self.inner.next()?;
        Some(Bipartition::from_sides(y.into_iter().map(|v| v as u8).collect()))
    }
}

/// Streams even (odd) bipartitions: every edge meets `V_1` in an even (odd)
/// number of vertices. The even stream starts with the trivial bipartition.
pub fn enumerate_bipartitions(h: &Hypergraph, parity: Parity, cap: usize) -> Result<Bipartitions> {
    let space = bipartition_space(h, parity)?;
    Ok(Bipartitions {
        inner: enumerate_solutions(&space, cap)?,
    })
}

/// Cyclic factors predicted by the divisors: `Z_d` for each `d ≠ 1`, then
/// `n - 1 - r_m` copies of `Z_m`.
pub fn module_structure(inv: &ModInvariants, n: usize) -> Vec<u64> {
    let free = (n - 1).saturating_sub(inv.r_m());
    inv.divisors
        .iter()
        .copied()
        .filter(|&d| d != 1)
        .chain(std::iter::repeat_n(inv.modulus, free))
        .collect()
}

fn breach<T: fmt::Display>(what: &str, left: T, right: T) -> Error {
    Error::InvariantBreach(format!("{what}: {left} != {right}"))
}

/// Every count and decision for a connected hypergraph, cross-checked: the
/// closed-form counts are compared with the sizes of the explicitly solved
/// systems, and the `Z_2` rank with the odd divisors over `Z_m`.
pub fn zero_spectrum_report(h: &Hypergraph) -> Result<ZeroSpectrumReport> {
    let b = connected_incidence(h)?;
    let (n, m) = (h.n(), modulus(h));
    let even = m % 2 == 0;

    let inv = incidence_invariants(h);
    let r_m = inv.r_m();
    if r_m < 1 || r_m > n - 1 {
        return Err(Error::InvariantBreach(format!("r_m = {r_m} outside 1..={}", n - 1)));
    }
    let count_l = laplacian_count_from(&inv, n)?;
    let laplacian = exponent_space(h, EigenKind::Laplacian)?.expect("laplacian system exists");
    if laplacian.cardinality() != count_l {
        return Err(breach(
            "laplacian count vs solved system",
            laplacian.cardinality(),
            count_l,
        ));
    }
    let structure = module_structure(&inv, n);
    if laplacian.free_moduli != structure {
        return Err(Error::InvariantBreach(format!(
            "module structure {:?} differs from divisor prediction {structure:?}",
            laplacian.free_moduli
        )));
    }
    let composition: u64 = structure.iter().map(|&d| u64::from(composition_length(d))).sum();

    let signless = exponent_space(h, EigenKind::Signless)?;
    let odd_colorable = signless.as_ref().is_some_and(SolutionSpace::is_consistent);
    let count_q = signless.as_ref().map_or(BigUint::ZERO, SolutionSpace::cardinality);
    if count_q != BigUint::ZERO && count_q != count_l {
        return Err(breach("signless count vs laplacian count", count_q, count_l));
    }

    let r_bar = rank_gf2(&b);
    let count_h_l = count_h(h, EigenKind::Laplacian)?;
    let count_h_q = count_h(h, EigenKind::Signless)?;
    let (odd_bipartite, even_bip, odd_bip) = if even {
        if r_bar != inv.odd_count() {
            return Err(breach("Z_2 rank vs odd divisors", r_bar, inv.odd_count()));
        }
        let even_space = bipartition_space(h, Parity::Even)?.cardinality();
        let odd_space = bipartition_space(h, Parity::Odd)?.cardinality();
        if even_space != count_h_l {
            return Err(breach("even bipartitions vs H-count", even_space, count_h_l));
        }
        if odd_space != count_h_q {
            return Err(breach("odd bipartitions vs H-count", odd_space, count_h_q));
        }
        if count_h_q != BigUint::ZERO && count_h_q != count_h_l {
            return Err(breach("signless vs laplacian H-count", count_h_q, count_h_l));
        }
        (
            count_h_q != BigUint::ZERO,
            Some(ExactCount(even_space)),
            Some(ExactCount(odd_space)),
        )
    } else {
        (false, None, None)
    };
    if count_h_l > count_l || count_h_q > count_q {
        return Err(Error::InvariantBreach("more H-eigenvectors than eigenvectors".into()));
    }
    if odd_bipartite && !odd_colorable {
        return Err(Error::InvariantBreach("odd-bipartite but not odd-colorable".into()));
    }

    Ok(ZeroSpectrumReport {
        n,
        m: h.m(),
        k: h.k(),
        r_m,
        divisors: inv.divisors.clone(),
        r_bar,
        count_n_laplacian: ExactCount(&count_l - &count_h_l),
        count_n_signless: ExactCount(&count_q - &count_h_q),
        count_laplacian: ExactCount(count_l),
        count_signless: ExactCount(count_q),
        count_h_laplacian: ExactCount(count_h_l),
        count_h_signless: ExactCount(count_h_q),
        odd_colorable,
        odd_bipartite,
        module_structure: structure,
        composition_length: composition,
        even_bipartitions: even_bip,
        odd_bipartitions: odd_bip,
    })
}
