//! R-derivations of B = R[X1..Xn] as data.
//!
//! A derivation is determined by its images on the generators: constants
//! map to zero, and everything else follows from additivity and Leibniz.
//! Consequently two derivations are equal iff their image lists are, and
//! a derivation vanishing on all generators is the zero derivation; both
//! facts are used below without per-call re-verification.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ring::{matrix_is_nilpotent, Poly, RingError, VarTable};
use crate::structure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    table: Arc<VarTable>,
    images: Vec<Poly>,
}

/// How local nilpotency was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMethod {
    LinearMatrix,
    TriangularStructure,
    BoundedIteration,
}

impl fmt::Display for CertMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertMethod::LinearMatrix => "LINEAR_MATRIX",
            CertMethod::TriangularStructure => "TRIANGULAR_STRUCTURE",
            CertMethod::BoundedIteration => "BOUNDED_ITERATION",
        })
    }
}

/// Evidence that D is locally nilpotent: per-generator indices with the
/// method that produced them. Invariant: D^{nu_i}(X_i) = 0 and, when
/// nu_i > 0, D^{nu_i - 1}(X_i) != 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LndCertificate {
    pub indices: Vec<usize>,
    pub method: CertMethod,
    /// Deepest iteration any generator needed (max of the indices).
    pub budget_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    /// Proof of non-membership; only the exact linear path produces it.
    #[error("not locally nilpotent: the linear coefficient matrix is not nilpotent")]
    NotLnd,
    /// The iteration budget ran out; says nothing about non-nilpotency.
    #[error("iteration budget {budget} exhausted before reaching zero")]
    BudgetExceeded { budget: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl Derivation {
    /// Builds D from the generator images f1..fn (one per variable).
    pub fn new(table: &Arc<VarTable>, images: Vec<Poly>) -> Result<Self, RingError> {
        if images.len() != table.num_variables() {
            return Err(RingError::DimensionMismatch {
                expected: table.num_variables(),
                got: images.len(),
            });
        }
        for img in &images {
            if img.table() != table {
                return Err(RingError::MismatchedTable);
            }
        }
        Ok(Derivation {
            table: Arc::clone(table),
            images,
        })
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        Derivation {
            table: Arc::clone(table),
            images: vec![Poly::zero(table); table.num_variables()],
        }
    }

    /// The coordinate derivation d/dX_j.
    pub fn coordinate(table: &Arc<VarTable>, j: usize) -> Self {
        let mut images = vec![Poly::zero(table); table.num_variables()];
        images[j] = Poly::one(table);
        Derivation {
            table: Arc::clone(table),
            images,
        }
    }

    /// The linear derivation with images f_i = sum_j a_ij X_j.
    pub fn from_matrix(a: &crate::ring::ConstMatrix) -> Self {
        let table = a.table();
        let n = a.size();
        let images = (0..n)
            .map(|i| {
                let mut acc = Poly::zero(table);
                for j in 0..n {
                    acc = &acc + &(a.get(i, j) * &Poly::var(table, j));
                }
                acc
            })
            .collect();
        Derivation {
            table: Arc::clone(table),
            images,
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    /// D(p) = sum_i f_i * partial(p, X_i).
    pub fn apply(&self, p: &Poly) -> Result<Poly, RingError> {
        if p.table() != &self.table {
            return Err(RingError::MismatchedTable);
        }
        let mut acc = Poly::zero(&self.table);
        for (i, f) in self.images.iter().enumerate() {
            let d = p.partial(self.table.variable(i));
            if d.is_zero() || f.is_zero() {
                continue;
            }
            acc = &acc + &(f * &d);
        }
        Ok(acc)
    }

    /// D^k(p).
    pub fn apply_power(&self, p: &Poly, k: usize) -> Result<Poly, RingError> {
        let mut q = p.clone();
        for _ in 0..k {
            if q.is_zero() {
                break;
            }
            q = self.apply(&q)?;
        }
        Ok(q)
    }

    /// [D, E] as a derivation: images D(E(X_i)) - E(D(X_i)).
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation, RingError> {
        if self.table != other.table {
            return Err(RingError::MismatchedTable);
        }
        let images = (0..self.images.len())
            .map(|i| {
                let de = self.apply(other.image(i))?;
                let ed = other.apply(self.image(i))?;
                Ok(&de - &ed)
            })
            .collect::<Result<Vec<_>, RingError>>()?;
        Ok(Derivation {
            table: Arc::clone(&self.table),
            images,
        })
    }

    pub fn commutes_with(&self, other: &Derivation) -> Result<bool, RingError> {
        Ok(self.commutator(other)?.is_zero())
    }

    /// Least nu <= budget with D^nu(p) = 0; nu(0) = 0 by convention.
    pub fn nilpotency_index(&self, p: &Poly, budget: usize) -> Result<usize, CertifyError> {
        assert!(budget >= 1, "iteration budget must be at least 1");
        if p.table() != &self.table {
            return Err(CertifyError::Ring(RingError::MismatchedTable));
        }
        if p.is_zero() {
            return Ok(0);
        }
        let mut nu = 1usize;
        let mut q = self.apply(p)?;
        while !q.is_zero() {
            nu += 1;
            if nu > budget {
                return Err(CertifyError::BudgetExceeded { budget });
            }
            q = self.apply(&q)?;
        }
        Ok(nu)
    }

    /// Certifies local nilpotency.
    ///
    /// Linear derivations are decided exactly through the coefficient
    /// matrix (the only path that can return `NotLnd`, and the budget is
    /// irrelevant because generator indices are bounded by n). Triangular
    /// derivations terminate by structure but the budget is still
    /// enforced. Everything else is bounded iteration, where running out
    /// of budget is inconclusive.
    pub fn certify_lnd(&self, budget: usize) -> Result<LndCertificate, CertifyError> {
        assert!(budget >= 1, "iteration budget must be at least 1");
        let n = self.table.num_variables();
        if let Some(a) = structure::detect_linear(self) {
            if matrix_is_nilpotent(&a).is_none() {
                return Err(CertifyError::NotLnd);
            }
            let indices = (0..n)
                .map(|i| {
                    self.nilpotency_index(&Poly::var(&self.table, i), n + 1)
                        .expect("generator index of a nilpotent linear derivation is at most n")
                })
                .collect::<Vec<_>>();
            let budget_used = indices.iter().copied().max().unwrap_or(0);
            return Ok(LndCertificate {
                indices,
                method: CertMethod::LinearMatrix,
                budget_used,
            });
        }
        let method = if structure::detect_triangular(self).is_some() {
            CertMethod::TriangularStructure
        } else {
            CertMethod::BoundedIteration
        };
        let mut indices = Vec::with_capacity(n);
        for i in 0..n {
            indices.push(self.nilpotency_index(&Poly::var(&self.table, i), budget)?);
        }
        let budget_used = indices.iter().copied().max().unwrap_or(0);
        Ok(LndCertificate {
            indices,
            method,
            budget_used,
        })
    }

    /// True iff every image has vanishing row sum sum_j partial(f_i, X_j);
    /// equivalently sum_j d/dX_j annihilates every image.
    pub fn divergence_condition(&self) -> bool {
        let n = self.table.num_variables();
        self.images.iter().all(|f| {
            let mut s = Poly::zero(&self.table);
            for j in 0..n {
                s = &s + &f.partial(self.table.variable(j));
            }
            s.is_zero()
        })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} |-> {}", self.table.name(self.table.variable(i)), img)?;
        }
        Ok(())
    }
}
