//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under the
//! lexicographic order on the concatenated (constants, variables) vector,
//! so structural equality is semantic equality and iteration order is
//! canonical. No zero coefficient is ever stored; `num_rational` keeps
//! every coefficient in lowest terms with a positive denominator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{RingError, Sym, VarTable};

/// An exponent vector over all declared symbols, constants first.
///
/// `Ord` is the lexicographic order on the raw vector; together with the
/// fixed symbol order of the table this is the canonical term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Box<[u64]>);

impl Monomial {
    pub fn unit(width: usize) -> Self {
        Monomial(vec![0; width].into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn exponent(&self, slot: usize) -> u64 {
        self.0[slot]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, or `None` when some exponent of `other`
    /// exceeds ours.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Box<[u64]>>>()
            .map(Monomial)
    }
}

/// A sparse multivariate polynomial over `Q`, tied to a [`VarTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, BigRational::one())
    }

    pub fn constant(table: &Arc<VarTable>, value: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::unit(table.width()), value);
        }
        Poly {
            table: Arc::clone(table),
            terms,
        }
    }

    pub fn from_int(table: &Arc<VarTable>, value: i64) -> Self {
        Self::constant(table, BigRational::from_integer(BigInt::from(value)))
    }

    /// The polynomial consisting of the single symbol `sym`.
    pub fn sym(table: &Arc<VarTable>, sym: Sym) -> Self {
        let mut exps = vec![0u64; table.width()];
        exps[table.slot(sym)] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps.into_boxed_slice()), BigRational::one());
        Poly {
            table: Arc::clone(table),
            terms,
        }
    }

    /// The generator `X_index`.
    pub fn var(table: &Arc<VarTable>, index: usize) -> Self {
        Self::sym(table, table.variable(index))
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_unit() && c.is_one())
                .unwrap_or(false)
    }

    /// True iff the polynomial lies in the constant subring `R`, i.e.
    /// every term has zero exponent on all variables.
    pub fn is_constant(&self) -> bool {
        let first_var = self.table.num_constants();
        self.terms
            .keys()
            .all(|m| m.exponents()[first_var..].iter().all(|&e| e == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The constant-term coefficient (zero when absent).
    pub fn constant_coefficient(&self) -> BigRational {
        self.terms
            .get(&Monomial::unit(self.table.width()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Largest exponent of `sym` over all terms.
    pub fn degree_in(&self, sym: Sym) -> u64 {
        let slot = self.table.slot(sym);
        self.terms
            .keys()
            .map(|m| m.exponent(slot))
            .max()
            .unwrap_or(0)
    }

    /// Largest total degree in the variables (constants not counted);
    /// zero for the zero polynomial.
    pub fn variable_degree(&self) -> u64 {
        let first_var = self.table.num_constants();
        self.terms
            .keys()
            .map(|m| m.exponents()[first_var..].iter().sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    fn same_table(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, RingError> {
        if !self.same_table(other) {
            return Err(RingError::MismatchedTable);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Poly {
            table: Arc::clone(&self.table),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, RingError> {
        if !self.same_table(other) {
            return Err(RingError::MismatchedTable);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), -c.clone());
        }
        Ok(Poly {
            table: Arc::clone(&self.table),
            terms,
        })
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, RingError> {
        if !self.same_table(other) {
            return Err(RingError::MismatchedTable);
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(Poly {
            table: Arc::clone(&self.table),
            terms,
        })
    }

    pub fn scale(&self, factor: &BigRational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(&self.table);
        }
        Poly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u64) -> Poly {
        let mut acc = Poly::one(&self.table);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to a declared symbol.
    pub fn partial(&self, sym: Sym) -> Poly {
        let slot = self.table.slot(sym);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(slot);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[slot] = e - 1;
            Self::insert_term(
                &mut terms,
                Monomial(exps.into_boxed_slice()),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        Poly {
            table: Arc::clone(&self.table),
            terms,
        }
    }

    /// Partial derivative by symbol name; fails on undeclared names.
    pub fn partial_named(&self, name: &str) -> Result<Poly, RingError> {
        Ok(self.partial(self.table.resolve(name)?))
    }

    fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of the lexicographically largest monomial; zero for
    /// the zero polynomial.
    pub fn leading_coefficient(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Exact quotient `self / divisor`, or `None` when the division does
    /// not come out exactly (including any nonzero `self` with zero
    /// `divisor`).
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(self.same_table(divisor), "div_exact across tables");
        if self.is_zero() {
            return Some(Poly::zero(&self.table));
        }
        if divisor.is_zero() {
            return None;
        }
        let (lead_m, lead_c) = divisor.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot_terms = BTreeMap::new();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lead_m)?;
            let qc = c / lead_c;
            // rem -= (qc * qm) * divisor
            let mut step = BTreeMap::new();
            for (dm, dc) in &divisor.terms {
                Self::insert_term(&mut step, qm.mul(dm), dc * &qc);
            }
            for (sm, sc) in step {
                Self::insert_term(&mut rem.terms, sm, -sc);
            }
            Self::insert_term(&mut quot_terms, qm, qc);
        }
        Some(Poly {
            table: Arc::clone(&self.table),
            terms: quot_terms,
        })
    }

    /// The positive rational `g` such that `self / g` has coprime integer
    /// coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigRational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new(num_gcd, den_lcm)
        }
    }

    /// Divides out the content and fixes the sign of the leading
    /// coefficient to be positive. Returns `self` unchanged when zero.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut content = self.content();
        if self.leading_coefficient().is_negative() {
            content = -content;
        }
        self.scale(&content.recip())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial addition across tables")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs)
            .expect("polynomial subtraction across tables")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs)
            .expect("polynomial multiplication across tables")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<VarTable> {
        VarTable::new(["t"], ["x1", "x2", "x3"]).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zero_is_empty_and_absorbing() {
        let tab = table();
        let z = Poly::zero(&tab);
        let x1 = Poly::var(&tab, 0);
        assert!(z.is_zero());
        assert_eq!(&z * &x1, z);
        assert_eq!(&z + &x1, x1);
    }

    #[test]
    fn cancellation_removes_terms() {
        let tab = table();
        let x1 = Poly::var(&tab, 0);
        let sum = &x1 - &x1;
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn product_expands_and_collects() {
        let tab = table();
        let x1 = Poly::var(&tab, 0);
        let x2 = Poly::var(&tab, 1);
        // (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2
        let s = &x1 + &x2;
        let sq = s.pow(2);
        assert_eq!(sq.num_terms(), 3);
        let expect = &(&x1 * &x1) + &(&(&x1 * &x2).scale(&rat(2, 1)) + &(&x2 * &x2));
        assert_eq!(sq, expect);
    }

    #[test]
    fn mismatched_tables_error() {
        let a = VarTable::new(["t"], ["x1"]).unwrap();
        let b = VarTable::new([], ["x1"]).unwrap();
        let pa = Poly::var(&a, 0);
        let pb = Poly::var(&b, 0);
        assert!(matches!(pa.try_add(&pb), Err(RingError::MismatchedTable)));
    }

    #[test]
    fn partial_applies_power_rule() {
        let tab = table();
        let t = Poly::sym(&tab, tab.constant(0));
        let x1 = Poly::var(&tab, 0);
        let x2 = Poly::var(&tab, 1);
        // d/dx1 (t x1^3 x2) = 3 t x1^2 x2
        let p = &(&t * &x1.pow(3)) * &x2;
        let d = p.partial(tab.variable(0));
        let expect = (&(&t * &x1.pow(2)) * &x2).scale(&rat(3, 1));
        assert_eq!(d, expect);
        // constants differentiate to zero in the variables
        assert!(t.partial(tab.variable(0)).is_zero());
        // and t itself is a legal direction too
        assert!(p.partial(tab.constant(0)).partial(tab.constant(0)).is_zero());
    }

    #[test]
    fn constant_detection_ignores_parameters() {
        let tab = table();
        let t = Poly::sym(&tab, tab.constant(0));
        let x1 = Poly::var(&tab, 0);
        let c = &(&t * &t) + &Poly::from_int(&tab, 5);
        assert!(c.is_constant());
        assert!(!(&c + &x1).is_constant());
        assert!(Poly::zero(&tab).is_constant());
    }

    #[test]
    fn div_exact_detects_exact_and_inexact() {
        let tab = table();
        let x1 = Poly::var(&tab, 0);
        let x2 = Poly::var(&tab, 1);
        let p = &(&x1 * &x1) - &(&x2 * &x2);
        let q = &x1 - &x2;
        let quot = p.div_exact(&q).unwrap();
        assert_eq!(quot, &x1 + &x2);
        assert_eq!(&quot * &q, p);
        // x1^2 + x2 is not divisible by x1 - x2
        let bad = &(&x1 * &x1) + &x2;
        assert!(bad.div_exact(&q).is_none());
        assert!(q.div_exact(&Poly::zero(&tab)).is_none());
        assert!(Poly::zero(&tab).div_exact(&q).unwrap().is_zero());
    }

    #[test]
    fn content_and_primitive_part() {
        let tab = table();
        let x1 = Poly::var(&tab, 0);
        let x2 = Poly::var(&tab, 1);
        // 4/3 x2 - 2 x1  ->  content 2/3, primitive part 3x1 - 2x2 sign-flipped
        let p = &x2.scale(&rat(4, 3)) - &x1.scale(&rat(2, 1));
        assert_eq!(p.content(), rat(2, 3));
        let prim = p.primitive_part();
        // leading monomial is x1 (lex largest), its coefficient must be positive
        assert!(prim.leading_coefficient().is_positive());
        assert_eq!(prim, &x1.scale(&rat(3, 1)) - &x2.scale(&rat(2, 1)));
        assert!(Poly::zero(&tab).primitive_part().is_zero());
    }

    #[test]
    fn display_is_canonical() {
        let tab = table();
        let t = Poly::sym(&tab, tab.constant(0));
        let x1 = Poly::var(&tab, 0);
        let x2 = Poly::var(&tab, 1);
        let p = &(&(&t * &x1).scale(&rat(-2, 1)) + &x2.pow(3).scale(&rat(1, 2))) + &Poly::from_int(&tab, 7);
        assert_eq!(p.to_string(), "-2*t*x1 + 1/2*x2^3 + 7");
        assert_eq!(Poly::zero(&tab).to_string(), "0");
        assert_eq!(Poly::from_int(&tab, -3).to_string(), "-3");
        assert_eq!(x1.to_string(), "x1");
    }

    #[test]
    fn degree_accessors() {
        let tab = table();
        let t = Poly::sym(&tab, tab.constant(0));
        let x1 = Poly::var(&tab, 0);
        let x3 = Poly::var(&tab, 2);
        let p = &(&t.pow(4) * &x1.pow(2)) + &x3.pow(3);
        assert_eq!(p.degree_in(tab.constant(0)), 4);
        assert_eq!(p.degree_in(tab.variable(0)), 2);
        assert_eq!(p.variable_degree(), 3);
        assert_eq!(Poly::zero(&tab).variable_degree(), 0);
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: terms in descending monomial order, explicit
    /// `*` and `^`, rational coefficients as `p/q`. The output parses
    /// back to the identical polynomial under the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if m.is_unit() {
                write_coefficient(f, &abs)?;
                continue;
            }
            let mut lead = true;
            if !abs.is_one() {
                write_coefficient(f, &abs)?;
                lead = false;
            }
            for slot in 0..self.table.width() {
                let e = m.exponent(slot);
                if e == 0 {
                    continue;
                }
                if !lead {
                    write!(f, "*")?;
                }
                lead = false;
                write!(f, "{}", self.table.name(self.table.sym_at(slot)))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
            debug_assert!(!lead);
        }
        Ok(())
    }
}
