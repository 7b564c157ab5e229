//! Zero eigenvalue of the Laplacian and signless Laplacian tensors of
//! uniform hypergraphs.
//!
//! First eigenvectors of a connected `m`-uniform hypergraph correspond to
//! solutions of a linear system over `Z_m` in the incidence matrix, so all
//! counts, decisions and enumerations here reduce to a Smith normal form of
//! that matrix. [`oracle`] evaluates the tensors directly and is used to
//! cross-check the algebra.
//!
//! ```
//! use hypereig::{gen_power, zero_spectrum_report, Hypergraph};
//!
//! let triangle = Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
//! let h = gen_power(&triangle, 4).unwrap();
//! let report = zero_spectrum_report(&h).unwrap();
//! assert_eq!(report.count_laplacian, 32);
//! assert_eq!(report.count_signless, 32);
//! assert_eq!(report.count_h_laplacian, 8);
//! ```

pub mod error;
pub mod hypergraph;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use hypergraph::{
    gen_complete, gen_cored_star, gen_power, gen_random_connected, parse_hypergraph, Component, Hypergraph,
    IncidenceMatrix,
};
pub use linalg::{Matrix, ModInvariants, SmithDecomposition, SolutionSpace};
pub use oracle::{ComplexVector, DiagonalGauge, TensorKind};
pub use scalar::{ExactInt, Real};
pub use spectral::{
    count_first, count_first_laplacian, count_first_signless, count_h, count_n, enumerate_bipartitions,
    enumerate_eigenvectors, is_odd_bipartite, is_odd_colorable, odd_bipartition, odd_coloring, zero_spectrum_report,
    Bipartition, EigenKind, ExactCount, Parity, ResidueEigenvector, ZeroSpectrumReport,
};

pub type IntMatrix = Matrix<i64>;
pub type BigIntMatrix = Matrix<num_bigint::BigInt>;
pub type IntSmith = SmithDecomposition<i64>;
pub type BigSmith = SmithDecomposition<num_bigint::BigInt>;
pub type ComplexVector64 = ComplexVector<f64>;
pub type ComplexVector32 = ComplexVector<f32>;
pub type DiagonalGauge64 = DiagonalGauge<f64>;
