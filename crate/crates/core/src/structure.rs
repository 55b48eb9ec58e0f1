//! Structural classification of a derivation in the given coordinates.
//!
//! All detectors work with the declared variable order only; recognizing
//! triangularity or linearity after a general polynomial change of
//! coordinates is out of scope. Ties always break to the smallest
//! declaration index, so classification is deterministic.

use std::sync::Arc;

use crate::derivation::Derivation;
use crate::ring::{ConstMatrix, Poly, VarTable};

/// Everything the detectors can say about a derivation. A derivation may
/// satisfy several detectors at once; all facts are recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Smallest j such that no image involves X_j.
    pub missing_variable: Option<usize>,
    /// Variable order sigma with image(sigma[i]) over X_sigma[0..i] only.
    pub triangular_order: Option<Vec<usize>>,
    /// A with image_i = sum_j A[i][j] X_j, when every image is a
    /// homogeneous degree-1 form over R.
    pub linear_matrix: Option<ConstMatrix>,
    /// Per-image row sums sum_j partial(f_i, X_j) all vanish.
    pub divergence_zero: bool,
}

/// Smallest variable index absent from every image, if any.
pub fn detect_missing_variable(d: &Derivation) -> Option<usize> {
    let table = d.table();
    (0..table.num_variables())
        .find(|&j| d.images().iter().all(|f| f.degree_in(table.variable(j)) == 0))
}

fn dependencies(f: &Poly, table: &Arc<VarTable>) -> Vec<usize> {
    (0..table.num_variables())
        .filter(|&j| f.degree_in(table.variable(j)) > 0)
        .collect()
}

/// A variable order making D triangular, via topological sort of the
/// dependency graph (smallest index first among available sources);
/// `None` when the graph is cyclic.
pub fn detect_triangular(d: &Derivation) -> Option<Vec<usize>> {
    let table = d.table();
    let n = table.num_variables();
    let deps: Vec<Vec<usize>> = d.images().iter().map(|f| dependencies(f, table)).collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .find(|&v| !placed[v] && deps[v].iter().all(|&u| placed[u]))?;
        placed[next] = true;
        order.push(next);
    }
    Some(order)
}

/// The R-coefficients (c_1..c_n) of a homogeneous degree-1 form
/// p = sum_j c_j X_j; `None` when p has a term of variable-degree != 1.
/// The zero polynomial is the empty form.
pub fn linear_coefficients(p: &Poly) -> Option<Vec<Poly>> {
    let table = p.table();
    let n = table.num_variables();
    let first_var = table.num_constants();
    let mut coeffs = vec![Poly::zero(table); n];
    for (m, c) in p.terms() {
        let var_exps = &m.exponents()[first_var..];
        if var_exps.iter().sum::<u64>() != 1 {
            return None;
        }
        let j = var_exps.iter().position(|&e| e == 1).expect("degree 1");
        // the constant part of the term joins the R-coefficient of X_j
        let mut coeff = Poly::constant(table, c.clone());
        for (slot, &e) in m.exponents()[..first_var].iter().enumerate() {
            if e > 0 {
                coeff = &coeff * &Poly::sym(table, table.constant(slot)).pow(e);
            }
        }
        coeffs[j] = &coeffs[j] + &coeff;
    }
    Some(coeffs)
}

/// The coefficient matrix when every image is homogeneous of degree 1 in
/// the variables with coefficients in R; `None` otherwise.
pub fn detect_linear(d: &Derivation) -> Option<ConstMatrix> {
    let table = d.table();
    let n = table.num_variables();
    let mut entries = Vec::with_capacity(n * n);
    for f in d.images() {
        entries.extend(linear_coefficients(f)?);
    }
    Some(ConstMatrix::new(table, n, entries).expect("constant entries by construction"))
}

/// Runs every detector.
pub fn classify(d: &Derivation) -> Classification {
    Classification {
        missing_variable: detect_missing_variable(d),
        triangular_order: detect_triangular(d),
        linear_matrix: detect_linear(d),
        divergence_zero: d.divergence_condition(),
    }
}
