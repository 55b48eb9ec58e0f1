//! Exact linear algebra over the constant subring R.
//!
//! Matrices and vectors hold constant polynomials only. Elimination is
//! fraction-free (Bareiss), so every intermediate value stays inside R
//! and every division is exact by construction.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::{RingError, Sym, VarTable};

/// A square matrix with entries in R, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstMatrix {
    table: Arc<VarTable>,
    n: usize,
    entries: Vec<Poly>,
}

impl ConstMatrix {
    /// Builds an n-by-n matrix from row-major entries; every entry must
    /// lie in the constant subring.
    pub fn new(table: &Arc<VarTable>, n: usize, entries: Vec<Poly>) -> Result<Self, RingError> {
        if entries.len() != n * n {
            return Err(RingError::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        for (k, e) in entries.iter().enumerate() {
            if e.table() != table {
                return Err(RingError::MismatchedTable);
            }
            if !e.is_constant() {
                return Err(RingError::NonConstantEntry(k / n, k % n));
            }
        }
        Ok(ConstMatrix {
            table: Arc::clone(table),
            n,
            entries,
        })
    }

    pub fn zero(table: &Arc<VarTable>, n: usize) -> Self {
        ConstMatrix {
            table: Arc::clone(table),
            n,
            entries: vec![Poly::zero(table); n * n],
        }
    }

    pub fn identity(table: &Arc<VarTable>, n: usize) -> Self {
        let mut m = Self::zero(table, n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(table);
        }
        m
    }

    /// Convenience constructor from integer rows.
    pub fn from_int_rows(table: &Arc<VarTable>, rows: &[&[i64]]) -> Result<Self, RingError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(RingError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for &v in *row {
                entries.push(Poly::from_int(table, v));
            }
        }
        Self::new(table, n, entries)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn try_mul(&self, other: &ConstMatrix) -> Result<ConstMatrix, RingError> {
        if self.table != other.table {
            return Err(RingError::MismatchedTable);
        }
        if self.n != other.n {
            return Err(RingError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(&self.table);
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(ConstMatrix {
            table: Arc::clone(&self.table),
            n,
            entries,
        })
    }

    /// Matrix-vector product A·v.
    pub fn apply(&self, v: &ConstVector) -> Result<ConstVector, RingError> {
        if self.table != v.table {
            return Err(RingError::MismatchedTable);
        }
        if v.len() != self.n {
            return Err(RingError::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let entries = (0..self.n)
            .map(|i| {
                let mut acc = Poly::zero(&self.table);
                for j in 0..self.n {
                    acc = &acc + &(self.get(i, j) * v.get(j));
                }
                acc
            })
            .collect();
        Ok(ConstVector {
            table: Arc::clone(&self.table),
            entries,
        })
    }
}

impl fmt::Display for ConstMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A vector with entries in R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstVector {
    table: Arc<VarTable>,
    entries: Vec<Poly>,
}

impl ConstVector {
    pub fn new(table: &Arc<VarTable>, entries: Vec<Poly>) -> Result<Self, RingError> {
        for (i, e) in entries.iter().enumerate() {
            if e.table() != table {
                return Err(RingError::MismatchedTable);
            }
            if !e.is_constant() {
                return Err(RingError::NonConstantEntry(i, 0));
            }
        }
        Ok(ConstVector {
            table: Arc::clone(table),
            entries,
        })
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Removes the rational content, removes the polynomial GCD of the
    /// entries when the constants are univariate (m <= 1), and flips the
    /// overall sign so the first nonzero entry has a positive leading
    /// coefficient. The span is unchanged.
    pub fn normalized(&self) -> ConstVector {
        let mut entries = self.entries.clone();
        let content = joint_content(&entries);
        if !content.is_zero() && !content.is_one() {
            let inv = content.recip();
            for e in &mut entries {
                *e = e.scale(&inv);
            }
        }
        if self.table.num_constants() == 1 {
            let t = self.table.constant(0);
            let mut g = Poly::zero(&self.table);
            for e in &entries {
                g = univariate_gcd(&g, e, t);
            }
            if !g.is_zero() && !g.is_one() {
                for e in &mut entries {
                    *e = e.div_exact(&g).expect("gcd divides every entry");
                }
            }
        }
        if let Some(first) = entries.iter().find(|e| !e.is_zero()) {
            if first.leading_coefficient().is_negative() {
                for e in &mut entries {
                    *e = -&*e;
                }
            }
        }
        ConstVector {
            table: Arc::clone(&self.table),
            entries,
        }
    }
}

impl fmt::Display for ConstVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// Common rational content of a set of polynomials: gcd of all numerators
/// over lcm of all denominators. Zero when every polynomial is zero.
fn joint_content(polys: &[Poly]) -> BigRational {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for p in polys {
        for (_, c) in p.terms() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    if num_gcd.is_zero() {
        BigRational::zero()
    } else {
        BigRational::new(num_gcd, den_lcm)
    }
}

/// Coefficient of t^d in a univariate constant polynomial.
fn univariate_coeff(p: &Poly, slot: usize, d: u64) -> BigRational {
    p.terms()
        .find(|(m, _)| m.exponent(slot) == d)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(BigRational::zero)
}

/// Primitive GCD in Q[t] by the Euclidean algorithm. Inputs must be
/// constant polynomials over a table with exactly one constant symbol.
pub(crate) fn univariate_gcd(a: &Poly, b: &Poly, t: Sym) -> Poly {
    let table = a.table();
    let slot = table.slot(t);
    let mut a = a.primitive_part();
    let mut b = b.primitive_part();
    while !b.is_zero() {
        let db = b.degree_in(t);
        let lb = univariate_coeff(&b, slot, db);
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(t) >= db {
            let dr = r.degree_in(t);
            let lr = univariate_coeff(&r, slot, dr);
            let shift = Poly::sym(table, t).pow(dr - db).scale(&(lr / &lb));
            r = &r - &(&shift * &b);
        }
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part()
}

/// Rank over Frac(R), computed by the same fraction-free elimination
/// used for the nullspace.
pub fn matrix_rank(a: &ConstMatrix) -> usize {
    let n = a.size();
    let table = a.table();
    let mut m: Vec<Vec<Poly>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut prev = Poly::one(table);
    let mut r = 0usize;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..n {
                let num = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = Poly::zero(table);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Decides nilpotency exactly: returns the least k with A^k = 0 if one
/// exists (k <= n always suffices), otherwise `None`.
pub fn matrix_is_nilpotent(a: &ConstMatrix) -> Option<usize> {
    let n = a.size();
    if n == 0 {
        return Some(0);
    }
    let mut power = a.clone();
    for k in 1..=n {
        if power.is_zero() {
            return Some(k);
        }
        if k < n {
            power = power.try_mul(a).expect("same table and size");
        }
    }
    None
}

/// A nonzero Λ with AΛ = 0, entries in R, content-normalized.
///
/// Fraction-free Bareiss echelon followed by fraction-free
/// back-substitution: the first free column in elimination order carries
/// the seed value 1, and already-solved entries are rescaled by each
/// pivot instead of dividing, so no fractions ever appear.
pub fn nullspace_vector(a: &ConstMatrix) -> Result<ConstVector, RingError> {
    let n = a.size();
    let table = a.table();
    let mut m: Vec<Vec<Poly>> = (0..n).map(|i| a.row(i).to_vec()).collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = Poly::one(table);
    let mut r = 0usize;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..n {
                let num = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = Poly::zero(table);
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let Some(free) = (0..n).find(|c| !pivot_cols.contains(c)) else {
        return Err(RingError::FullRank);
    };

    let mut lambda: Vec<Option<Poly>> = vec![None; n];
    lambda[free] = Some(Poly::one(table));
    for &(pr, pc) in pivots.iter().rev() {
        if pc > free {
            // rows whose pivot sits right of the seed column touch only
            // unset entries and zero free entries; their equations hold
            // with λ_{pc} = 0
            lambda[pc] = Some(Poly::zero(table));
            continue;
        }
        let mut s = Poly::zero(table);
        for j in pc + 1..n {
            if let Some(v) = &lambda[j] {
                s = &s + &(&m[pr][j] * v);
            }
        }
        let pivot = m[pr][pc].clone();
        for entry in lambda.iter_mut().flatten() {
            *entry = &*entry * &pivot;
        }
        lambda[pc] = Some(-&s);
    }

    let entries: Vec<Poly> = lambda
        .into_iter()
        .map(|e| e.unwrap_or_else(|| Poly::zero(table)))
        .collect();
    let v = ConstVector {
        table: Arc::clone(table),
        entries,
    };
    Ok(v.normalized())
}
