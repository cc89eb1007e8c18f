use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub_scaled(a: &mut QPoly, b: &[BigRational], scale: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] -= c * scale;
    }
    trim(a);
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("division by the zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        poly_sub_scaled(&mut r, b, &c, shift);
        q[shift] = c;
    }
    trim(&mut q);
    (q, r)
}

/// Integer cyclotomic polynomial Phi_n, lowest degree first.
pub fn cyclotomic(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // z^n - 1 divided by Phi_d for every proper divisor d.
    let mut p: QPoly = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let phi: QPoly = cyclotomic(d).into_iter().map(BigRational::from_integer).collect();
        let (q, r) = poly_divrem(&p, &phi);
        debug_assert!(r.is_empty());
        p = q;
    }
    p.into_iter().map(|c| c.to_integer()).collect()
}

/// Minimal polynomial over Q of `2 cos(pi / l)`, lowest degree first.
///
/// Obtained from the palindromic `Phi_{2l}(z) = z^k p(z + 1/z)` by rewriting
/// each `z^j + z^-j` as the Dickson polynomial `C_j(x)` with `C_0 = 2`,
/// `C_1 = x`, `C_{j+1} = x C_j - C_{j-1}`.
pub fn minpoly_for_order(l: u32) -> Result<Vec<BigInt>> {
    if l < 2 {
        return Err(Error::InvalidOrder(l));
    }
    let phi = cyclotomic(2 * l);
    let k = (phi.len() - 1) / 2;
    let mut dickson: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![0.into(), 1.into()]];
    while dickson.len() <= k {
        let j = dickson.len();
        let mut next = vec![BigInt::zero(); j + 1];
        for (i, c) in dickson[j - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in dickson[j - 2].iter().enumerate() {
            next[i] -= c;
        }
        dickson.push(next);
    }
    let mut p = vec![BigInt::zero(); k + 1];
    p[0] += &phi[k];
    for j in 1..=k {
        for (i, c) in dickson[j].iter().enumerate() {
            p[i] += &phi[k + j] * c;
        }
    }
    Ok(p)
}

/// The field Q[a]/(minpoly) for a monic irreducible `minpoly`.
#[derive(Clone, PartialEq, Eq)]
pub struct NumberField {
    minpoly: QPoly,
    /// `a^(deg + i)` reduced, for `i in 0..deg-1`.
    reductions: Vec<QPoly>,
}

impl NumberField {
    /// Builds the field from a monic polynomial, lowest degree first.
    pub fn new(minpoly: Vec<BigRational>) -> Arc<Self> {
        let mut minpoly = minpoly;
        trim(&mut minpoly);
        assert!(minpoly.len() >= 2, "minimal polynomial must have degree >= 1");
        assert!(minpoly.last().unwrap().is_one(), "minimal polynomial must be monic");
        let deg = minpoly.len() - 1;
        let mut reductions = Vec::with_capacity(deg.saturating_sub(1));
        // a^deg = -(lower terms)
        let mut cur: QPoly = minpoly[..deg].iter().map(|c| -c).collect();
        trim(&mut cur);
        for _ in 0..deg.saturating_sub(1) {
            reductions.push(cur.clone());
            let mut shifted = vec![BigRational::zero()];
            shifted.extend(cur.iter().cloned());
            if shifted.len() > deg {
                let top = shifted.pop().unwrap();
                let lower: QPoly = minpoly[..deg].iter().map(|c| -c * &top).collect();
                for (s, l) in shifted.iter_mut().zip(lower) {
                    *s += l;
                }
            }
            trim(&mut shifted);
            cur = shifted;
        }
        Arc::new(Self { minpoly, reductions })
    }

    pub fn from_integer_minpoly(p: &[BigInt]) -> Arc<Self> {
        Self::new(p.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Q itself, presented as Q[a]/(a).
    pub fn rationals() -> Arc<Self> {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// Q(2 cos(pi/l)).
    pub fn for_order(l: u32) -> Result<Arc<Self>> {
        Ok(Self::from_integer_minpoly(&minpoly_for_order(l)?))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigRational] {
        &self.minpoly
    }

    fn reduce(&self, mut p: QPoly) -> Vec<BigRational> {
        let deg = self.degree();
        while p.len() > deg {
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = p.len() - deg; // p had degree deg + k
            for (i, c) in self.reductions_for(k).iter().enumerate() {
                p[i] += c * &top;
            }
        }
        p.resize(deg, BigRational::zero());
        p
    }

    fn reductions_for(&self, k: usize) -> QPoly {
        if k < self.reductions.len() {
            self.reductions[k].clone()
        } else {
            // Only reached for products of unreduced inputs.
            let mut mono = vec![BigRational::zero(); self.degree() + k + 1];
            mono[self.degree() + k] = BigRational::one();
            poly_divrem(&mono, &self.minpoly).1
        }
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.minpoly)
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({self})")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &[BigRational]) -> fmt::Result {
    let mut first = true;
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "a")?;
                } else {
                    write!(f, "a^{i}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Element of a number field Q[a]/(p(a)), stored as `deg p` rational coefficients.
#[derive(Clone)]
pub struct AlgebraicScalar {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl AlgebraicScalar {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, r: BigRational) -> Self {
        let mut out = Self::zero(field);
        out.set_constant(r);
        out
    }

    fn set_constant(&mut self, r: BigRational) {
        // In Q[a]/(a) the generator itself is zero; the constant slot is still index 0.
        self.coeffs[0] = r;
    }

    pub fn from_integer(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    /// The class of `a`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self { field: field.clone(), coeffs: field.reduce(vec![BigRational::zero(), BigRational::one()]) }
    }

    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Self {
        let mut c = coeffs;
        trim(&mut c);
        Self { field: field.clone(), coeffs: field.reduce(c) }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.minpoly == other.field.minpoly {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        Ok(Self { field: self.field.clone(), coeffs: self.field.reduce(prod) })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// `(element, minpoly)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a: QPoly = self.coeffs.clone();
        trim(&mut a);
        let mut r0: QPoly = self.field.minpoly.clone();
        let mut r1 = a;
        let mut s0: QPoly = Vec::new();
        let mut s1: QPoly = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s2 = s0.clone();
            poly_sub_scaled(&mut s2, &qs, &BigRational::one(), 0);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd; a constant because minpoly is irreducible.
        if r0.len() != 1 {
            return Err(Error::DivisionByZero);
        }
        let g = r0[0].clone();
        let inv: QPoly = s0.iter().map(|c| c / &g).collect();
        Ok(Self { field: self.field.clone(), coeffs: self.field.reduce(inv) })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    /// Numerical value, taking `a` to be `root`. Test and diagnostic use only.
    pub fn to_f64_at(&self, root: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().enumerate().map(|(i, c)| c.to_f64().unwrap() * root.powi(i as i32)).sum()
    }
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraicScalar {}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
                self.$try(rhs).expect("algebraic operands from different fields")
            }
        }
        impl $tr for AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, rhs: AlgebraicScalar) -> AlgebraicScalar {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        AlgebraicScalar { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        -&self
    }
}

/// Polynomial in the generator `a`; the field is printed separately.
impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod ({})", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(p: &[BigInt]) -> Vec<i64> {
        use num_traits::ToPrimitive;
        p.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(ints(&cyclotomic(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(ints(&cyclotomic(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn minpolys_of_named_orders() {
        assert_eq!(ints(&minpoly_for_order(2).unwrap()), vec![0, 1]);
        assert_eq!(ints(&minpoly_for_order(3).unwrap()), vec![-1, 1]);
        assert_eq!(ints(&minpoly_for_order(4).unwrap()), vec![-2, 0, 1]);
        assert_eq!(ints(&minpoly_for_order(5).unwrap()), vec![-1, -1, 1]);
        assert_eq!(minpoly_for_order(1), Err(Error::InvalidOrder(1)));
        assert_eq!(minpoly_for_order(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn minpoly_degree_is_half_totient() {
        let phi = |n: u32| (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count();
        for l in 2..=20 {
            assert_eq!(minpoly_for_order(l).unwrap().len() - 1, phi(2 * l) / 2, "l = {l}");
        }
    }

    #[test]
    fn sqrt2_inverse() {
        let k = NumberField::for_order(4).unwrap();
        let a = AlgebraicScalar::generator(&k);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.coeffs(), &[q(0, 1), q(1, 2)]);
        assert!((&inv * &a).is_one());
    }

    #[test]
    fn one_plus_sqrt2_inverse() {
        let k = NumberField::for_order(4).unwrap();
        let a = AlgebraicScalar::generator(&k);
        let x = &AlgebraicScalar::one(&k) + &a;
        let inv = x.inverse().unwrap();
        assert_eq!(inv, &a - &AlgebraicScalar::one(&k));
    }

    #[test]
    fn rational_inverse_and_zero() {
        let k = NumberField::for_order(4).unwrap();
        let three = AlgebraicScalar::from_integer(&k, 3);
        assert_eq!(three.inverse().unwrap(), AlgebraicScalar::from_rational(&k, q(1, 3)));
        assert_eq!(AlgebraicScalar::zero(&k).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rationals_field() {
        let k = NumberField::rationals();
        assert_eq!(k.degree(), 1);
        assert!(AlgebraicScalar::generator(&k).is_zero());
        let x = AlgebraicScalar::from_rational(&k, q(2, 3));
        assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = AlgebraicScalar::one(&NumberField::for_order(4).unwrap());
        let b = AlgebraicScalar::one(&NumberField::for_order(5).unwrap());
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn printing() {
        let k = NumberField::for_order(4).unwrap();
        let a = AlgebraicScalar::generator(&k);
        let x = &a.inverse().unwrap() - &AlgebraicScalar::from_integer(&k, 3);
        assert_eq!(x.to_string(), "1/2*a - 3");
        assert_eq!(k.to_string(), "a^2 - 2");
        assert_eq!(AlgebraicScalar::zero(&k).to_string(), "0");
    }
}
