//! Exact symbolic analysis of derivations of polynomial rings.
//!
//! The coefficient domain is `R = Q[t1..tm]` (rational constants, `m >= 0`)
//! and the ambient ring is `B = R[X1..Xn]`. An `R`-derivation of `B` is
//! given by the images of the generators `X1..Xn` and extends by the
//! Leibniz rule; constants always map to zero.
//!
//! The crate provides:
//!
//! * [`ring`]: sparse multivariate polynomials over exact rationals and
//!   fraction-free linear algebra over the constant subring,
//! * [`derivation`]: derivations as data: application, commutators,
//!   nilpotency indices and local-nilpotency certificates,
//! * [`structure`]: structural classification (missing variable,
//!   triangularity up to permutation, linearity with coefficient matrix),
//! * [`witness`]: construction of commuting witness derivations and
//!   assembly of non-rigidity certificates for kernels,
//! * [`parse`]: the expression grammar used by spec files and reports,
//! * [`report`]: the analysis pipeline, report documents and the
//!   independent re-verification of emitted reports.

pub mod derivation;
pub mod parse;
pub mod random;
pub mod report;
pub mod ring;
pub mod structure;
pub mod witness;

pub use derivation::{CertMethod, CertifyError, Derivation, LndCertificate};
pub use parse::{parse_expression, ParseError};
pub use report::{
    run_pipeline, verify_report, DerivationSpec, PipelineError, PipelineOptions, Report, Status,
    Strategy, VerifyError,
};
pub use ring::{
    matrix_is_nilpotent, matrix_rank, nullspace_vector, ConstMatrix, ConstVector, Poly, RingError,
    Sym, VarTable,
};
pub use structure::{classify, linear_coefficients, Classification};
pub use witness::{
    assemble_certificate, collect_samples, dixmier_sample, find_local_slice, witness_divergence,
    witness_linear, witness_missing_variable, witness_triangular, Branch, KernelSample,
    NonRigidityCertificate, Provenance, SampleOrigin, WitnessError,
};
