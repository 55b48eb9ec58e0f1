//! Seeded random generators for kernel sampling and property tests.
//!
//! Everything here is deterministic for a fixed seed: the pipeline feeds
//! a ChaCha stream created by [`seeded_rng`], so reports are reproducible
//! byte for byte.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::derivation::Derivation;
use crate::ring::{ConstMatrix, Poly, VarTable};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero_small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> BigRational {
    let mut v = 0i64;
    while v == 0 {
        v = rng.gen_range(-bound..=bound);
    }
    BigRational::from_integer(BigInt::from(v))
}

/// Sparse polynomial in the variables only: 1 to 3 terms of total degree
/// 1 or 2 with nonzero integer coefficients in [-3, 3]. Used as Dixmier
/// probe material.
pub fn random_sample_poly<R: Rng + ?Sized>(table: &Arc<VarTable>, rng: &mut R) -> Poly {
    let n = table.num_variables();
    let terms = rng.gen_range(1..=3);
    let mut acc = Poly::zero(table);
    for _ in 0..terms {
        let mut m = Poly::var(table, rng.gen_range(0..n));
        if rng.gen_bool(0.5) {
            m = &m * &Poly::var(table, rng.gen_range(0..n));
        }
        acc = &acc + &m.scale(&nonzero_small(rng, 3));
    }
    if acc.is_zero() {
        // term cancellation; fall back to a fixed nonzero probe
        acc = Poly::var(table, 0);
    }
    acc
}

/// Random polynomial over all declared symbols: up to `max_terms` terms
/// of total degree at most `max_degree`, rational coefficients with
/// small numerator and denominator. Exercises exact arithmetic.
pub fn random_poly<R: Rng + ?Sized>(
    table: &Arc<VarTable>,
    max_degree: u64,
    max_terms: usize,
    rng: &mut R,
) -> Poly {
    let width = table.width();
    let terms = rng.gen_range(0..=max_terms);
    let mut acc = Poly::zero(table);
    for _ in 0..terms {
        let mut m = Poly::one(table);
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            let slot = rng.gen_range(0..width);
            m = &m * &Poly::sym(table, table.sym_at(slot));
        }
        let numer = nonzero_small(rng, 4);
        let denom = BigRational::from_integer(BigInt::from(rng.gen_range(1..=3i64)));
        acc = &acc + &m.scale(&(numer / denom));
    }
    acc
}

/// Random triangular derivation in a uniformly random variable order:
/// each image has 0 to 2 terms of total degree at most `max_degree` in
/// the earlier variables, with nonzero integer coefficients in [-3, 3].
pub fn random_triangular_derivation<R: Rng + ?Sized>(
    table: &Arc<VarTable>,
    max_degree: u64,
    rng: &mut R,
) -> Derivation {
    let n = table.num_variables();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut images = vec![Poly::zero(table); n];
    for (pos, &v) in order.iter().enumerate() {
        let allowed = &order[..pos];
        let terms = rng.gen_range(0..=2);
        let mut acc = Poly::zero(table);
        for _ in 0..terms {
            let mut m = Poly::constant(table, nonzero_small(rng, 3));
            if !allowed.is_empty() {
                for _ in 0..rng.gen_range(0..=max_degree) {
                    let pick = allowed[rng.gen_range(0..allowed.len())];
                    m = &m * &Poly::var(table, pick);
                }
            }
            acc = &acc + &m;
        }
        images[v] = acc;
    }
    Derivation::new(table, images).expect("one image per variable")
}

/// Nilpotent rank-one 2x2 integer matrix built as v w^T with w^T v = 0
/// and v, w nonzero.
pub fn random_nilpotent_rank_one_2x2<R: Rng + ?Sized>(
    table: &Arc<VarTable>,
    rng: &mut R,
) -> ConstMatrix {
    let v1 = nonzero_small(rng, 3);
    let v2 = nonzero_small(rng, 3);
    let k = nonzero_small(rng, 2);
    // w = k (v2, -v1) is orthogonal to v
    let w1 = &k * &v2;
    let w2 = -(&k * &v1);
    let entries = vec![
        Poly::constant(table, &v1 * &w1),
        Poly::constant(table, &v1 * &w2),
        Poly::constant(table, &v2 * &w1),
        Poly::constant(table, &v2 * &w2),
    ];
    ConstMatrix::new(table, 2, entries).expect("constant entries")
}

/// Random rank-deficient square matrix over the constant subring, built
/// as an n x r times r x n product with r < n; factor entries are random
/// constants of degree at most 1 in each parameter, so product entries
/// stay at degree 2 or below.
pub fn random_rank_deficient_matrix<R: Rng + ?Sized>(
    table: &Arc<VarTable>,
    n: usize,
    rng: &mut R,
) -> ConstMatrix {
    assert!(n >= 2, "need room for a rank deficiency");
    let r = rng.gen_range(1..n);
    let mut factor = |rows: usize, cols: usize| -> Vec<Poly> {
        (0..rows * cols)
            .map(|_| {
                let mut p = Poly::constant(
                    table,
                    BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2i64))),
                );
                for c in 0..table.num_constants() {
                    if rng.gen_bool(0.4) {
                        let coeff = nonzero_small(rng, 2);
                        let term = Poly::sym(table, table.constant(c)).scale(&coeff);
                        p = &p + &term;
                    }
                }
                p
            })
            .collect()
    };
    let left = factor(n, r);
    let right = factor(r, n);
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Poly::zero(table);
            for k in 0..r {
                acc = &acc + &(&left[i * r + k] * &right[k * n + j]);
            }
            entries.push(acc);
        }
    }
    ConstMatrix::new(table, n, entries).expect("constant entries")
}
