//! Exact arithmetic foundation: the symbol table, sparse multivariate
//! polynomials over `Q`, and fraction-free linear algebra over the
//! constant subring `R = Q[t1..tm]`.

mod linalg;
mod poly;

pub use linalg::{matrix_is_nilpotent, matrix_rank, nullspace_vector, ConstMatrix, ConstVector};
pub use poly::{Monomial, Poly};

use std::fmt;
use std::sync::Arc;

/// Errors raised by the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("polynomials belong to different symbol tables")]
    MismatchedTable,
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("invalid symbol name `{0}`: expected an identifier")]
    InvalidSymbolName(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("a symbol table needs at least one variable")]
    NoVariables,
    #[error("matrix entry at ({0}, {1}) is not constant")]
    NonConstantEntry(usize, usize),
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix has full rank: no nonzero nullvector exists")]
    FullRank,
}

/// A declared symbol: either a ring constant `t_i` or a variable `X_i`.
///
/// The payload is the index into the owning table's constant or variable
/// list. Symbols are only meaningful together with the table that issued
/// them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    Constant(usize),
    Variable(usize),
}

/// The symbol table of one analysis: an ordered list of constants
/// (generators of `R`, possibly empty) and an ordered list of variables
/// (generators of `B` over `R`, at least one).
///
/// Symbol order is fixed for the lifetime of the analysis; it determines
/// the canonical monomial order and every deterministic tie-break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    constants: Vec<String>,
    variables: Vec<String>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    /// Builds a table from constant and variable names. Names must be
    /// distinct identifiers and at least one variable is required.
    pub fn new<S: Into<String>>(
        constants: impl IntoIterator<Item = S>,
        variables: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Self>, RingError> {
        let constants: Vec<String> = constants.into_iter().map(Into::into).collect();
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            return Err(RingError::NoVariables);
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in constants.iter().chain(variables.iter()) {
            if !is_identifier(name) {
                return Err(RingError::InvalidSymbolName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(RingError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Arc::new(VarTable { constants, variables }))
    }

    pub fn num_constants(&self) -> usize {
        self.constants.len()
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Length of an exponent vector: constants first, then variables.
    pub fn width(&self) -> usize {
        self.constants.len() + self.variables.len()
    }

    pub fn constant(&self, index: usize) -> Sym {
        assert!(index < self.constants.len(), "constant index out of range");
        Sym::Constant(index)
    }

    pub fn variable(&self, index: usize) -> Sym {
        assert!(index < self.variables.len(), "variable index out of range");
        Sym::Variable(index)
    }

    /// Looks a name up in declaration order (constants, then variables).
    pub fn resolve(&self, name: &str) -> Result<Sym, RingError> {
        if let Some(i) = self.constants.iter().position(|c| c == name) {
            return Ok(Sym::Constant(i));
        }
        if let Some(i) = self.variables.iter().position(|v| v == name) {
            return Ok(Sym::Variable(i));
        }
        Err(RingError::UndeclaredSymbol(name.to_string()))
    }

    pub fn name(&self, sym: Sym) -> &str {
        match sym {
            Sym::Constant(i) => &self.constants[i],
            Sym::Variable(i) => &self.variables[i],
        }
    }

    pub fn constant_names(&self) -> &[String] {
        &self.constants
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variables
    }

    /// Slot of a symbol inside an exponent vector.
    pub fn slot(&self, sym: Sym) -> usize {
        match sym {
            Sym::Constant(i) => {
                assert!(i < self.constants.len(), "constant index out of range");
                i
            }
            Sym::Variable(i) => {
                assert!(i < self.variables.len(), "variable index out of range");
                self.constants.len() + i
            }
        }
    }

    /// Inverse of [`VarTable::slot`].
    pub fn sym_at(&self, slot: usize) -> Sym {
        if slot < self.constants.len() {
            Sym::Constant(slot)
        } else {
            let i = slot - self.constants.len();
            assert!(i < self.variables.len(), "slot out of range");
            Sym::Variable(i)
        }
    }

    /// Iterator over every declared symbol in slot order.
    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.width()).map(|s| self.sym_at(s))
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")?;
        if !self.constants.is_empty() {
            write!(f, "[{}]", self.constants.join(", "))?;
        }
        write!(f, "[{}]", self.variables.join(", "))
    }
}
