use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector, one signed entry per colour.
pub type Exponent = Vec<i32>;

/// Multivariate Laurent polynomial with integer coefficients in `d0..d{m-1}`.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
/// lexicographic and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentScalar {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The indeterminate `d{var}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable d{var} out of range for {nvars} colours");
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::monomial(nvars, e, 1)
    }

    pub fn monomial(nvars: usize, exponent: Exponent, c: impl Into<BigInt>) -> Self {
        assert_eq!(exponent.len(), nvars);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { nvars, terms }
    }

    /// `prod_i d_i^{powers[i]}`.
    pub fn loop_monomial(powers: &[u32]) -> Self {
        let e = powers.iter().map(|&p| p as i32).collect();
        Self::monomial(powers.len(), e, 1)
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            out.add_term(e, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ColourCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    fn shift(&self, by: &[i32]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Integer power. Negative exponents are only defined for monomials,
    /// which are the units of the Laurent ring.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            let inv = self.monomial_inverse().ok_or(Error::InexactDivision)?;
            return inv.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Inverse of a unit: `+-x^e` maps to `+-x^{-e}`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.terms.iter().next()?;
        if self.terms.len() != 1 || !(c.is_one() || (-c).is_one()) {
            return None;
        }
        Some(Self::monomial(self.nvars, e.iter().map(|x| -x).collect(), c.clone()))
    }

    /// Componentwise minimum exponent over all terms.
    fn min_exponent(&self) -> Exponent {
        let mut m = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (mi, &x) in m.iter_mut().zip(e) {
                *mi = (*mi).min(x);
            }
        }
        m
    }

    /// Exact division in the Laurent ring.
    ///
    /// Both operands are normalised to polynomials with no monomial factor;
    /// the quotient of such polynomials, when it exists, is itself such a
    /// polynomial, so lexicographic long division terminates.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let a_shift = self.min_exponent();
        let d_shift = divisor.min_exponent();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shift(&neg(&a_shift));
        let d = divisor.shift(&neg(&d_shift));
        let (d_lead_e, d_lead_c) = {
            let (e, c) = d.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term() {
            let qe: Exponent = e.iter().zip(&d_lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = c.div_rem(&d_lead_c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let t = Self::monomial(self.nvars, qe, qc);
            rem = &rem - &(&t * &d);
            quot = &quot + &t;
        }
        let total: Vec<i32> = a_shift.iter().zip(&d_shift).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&total))
    }

    /// Maps each exponent through `f` (used to relabel variables).
    pub fn map_variables(&self, nvars: usize, f: impl Fn(&[i32]) -> Exponent) -> Self {
        Self::from_terms(nvars, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: &LaurentScalar) -> LaurentScalar {
                self.$try(rhs).expect("Laurent operands with different colour counts")
            }
        }
        impl $tr for LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: LaurentScalar) -> LaurentScalar {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[i32]) -> fmt::Result {
    let mut first = true;
    for (i, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if x == 1 {
            write!(f, "d{i}")?;
        } else {
            write!(f, "d{i}^{x}")?;
        }
    }
    Ok(())
}

/// Canonical printing: leading (lexicographically largest) term first,
/// e.g. `d0^2 - 1` or `d0*d1`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let constant = e.iter().all(|&x| x == 0);
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if constant {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(i: usize) -> LaurentScalar {
        LaurentScalar::var(2, i)
    }

    #[test]
    fn monomial_product() {
        let sq = &d(0) * &d(0);
        assert_eq!(sq, LaurentScalar::monomial(2, vec![2, 0], 1));
        assert_eq!(sq.to_string(), "d0^2");
    }

    #[test]
    fn cancellation_drops_zero_terms() {
        let s = &(&d(0) + &d(1)) + &(-&d(1));
        assert_eq!(s, d(0));
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn laurent_inverse_monomial() {
        let inv = d(0).pow(-1).unwrap();
        assert!((&d(0) * &inv).is_one());
        assert_eq!(inv.to_string(), "d0^-1");
    }

    #[test]
    fn mismatched_colour_count() {
        let a = LaurentScalar::var(1, 0);
        let b = LaurentScalar::var(2, 0);
        assert_eq!(a.try_add(&b), Err(Error::ColourCountMismatch { left: 1, right: 2 }));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn printing_is_canonical() {
        let p = &(&d(0) * &d(0)) - &LaurentScalar::one(2);
        assert_eq!(p.to_string(), "d0^2 - 1");
        let q = &(&d(0) * &d(1)).scale(&BigInt::from(-3)) + &d(1);
        assert_eq!(q.to_string(), "-3*d0*d1 + d1");
        assert_eq!(LaurentScalar::zero(3).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let x = d(0);
        let one = LaurentScalar::one(2);
        let a = &(&x * &x) - &one; // d0^2 - 1
        let b = &x - &one;
        assert_eq!(a.div_exact(&b).unwrap(), &x + &one);
        assert_eq!(a.div_exact(&x).unwrap(), &x - &x.pow(-1).unwrap());
        let c = &x + &LaurentScalar::constant(2, 2);
        assert_eq!(a.div_exact(&c), Err(Error::InexactDivision));
        let shifted = &a * &d(1).pow(-3).unwrap();
        assert_eq!(shifted.div_exact(&b).unwrap(), &(&x + &one) * &d(1).pow(-3).unwrap());
        assert_eq!(a.div_exact(&LaurentScalar::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn power_of_non_unit_rejects_negative() {
        let p = &d(0) + &d(1);
        assert!(p.pow(-1).is_err());
        assert_eq!(p.pow(2).unwrap().num_terms(), 3);
    }
}
