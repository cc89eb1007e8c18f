use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::{AlgebraicScalar, NumberField};
use super::laurent::LaurentScalar;
use crate::error::{Error, Result};

/// Order `l >= 2` of a root of unity: the least `l` with `q^(2l) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOrder(u32);

impl RootOrder {
    pub fn new(l: u32) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidOrder(l));
        }
        Ok(Self(l))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for RootOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Value assigned to one colour's loop parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Rational(BigRational),
    /// `delta = 2 cos(pi / l)`.
    RootOfUnity(RootOrder),
    Generic,
}

impl Param {
    pub fn rational(n: i64) -> Self {
        Param::Rational(BigRational::from_integer(n.into()))
    }

    pub fn root(l: u32) -> Result<Self> {
        Ok(Param::RootOfUnity(RootOrder::new(l)?))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Param::Rational(r) => r.is_zero(),
            Param::RootOfUnity(l) => l.get() == 2,
            Param::Generic => false,
        }
    }

    /// Root-of-unity order needed by the representation-theoretic formulas.
    ///
    /// Rational values in `{-1, 0, 1}` are the only rational roots of unity
    /// of the form `q + 1/q` besides `+-2`, which is rejected.
    pub fn order(&self, colour: usize) -> Result<Option<RootOrder>> {
        match self {
            Param::RootOfUnity(l) => Ok(Some(*l)),
            Param::Generic => Ok(None),
            Param::Rational(r) => {
                if !r.is_integer() {
                    return Ok(None);
                }
                match r.to_integer().to_i64() {
                    Some(0) => Ok(Some(RootOrder(2))),
                    Some(1) | Some(-1) => Ok(Some(RootOrder(3))),
                    Some(2) | Some(-2) => Err(Error::UnsupportedOrderOne { colour, value: r.to_string() }),
                    _ => Ok(None),
                }
            }
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    /// `<integer>`, `<p>/<q>`, `root:<l>` or `generic`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "generic" {
            return Ok(Param::Generic);
        }
        if let Some(l) = s.strip_prefix("root:") {
            let l: u32 = l.parse().map_err(|_| Error::Parse(format!("bad root-of-unity order in {s:?}")))?;
            return Param::root(l);
        }
        let bad = || Error::Parse(format!("expected <integer>, <p>/<q>, root:<l> or generic, got {s:?}"));
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?),
        };
        Ok(Param::Rational(r))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Rational(r) => write!(f, "{r}"),
            Param::RootOfUnity(l) => write!(f, "root:{l}"),
            Param::Generic => write!(f, "generic"),
        }
    }
}

/// One parameter per colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterSpec(Vec<Param>);

impl ParameterSpec {
    pub fn new(params: Vec<Param>) -> Self {
        Self(params)
    }

    pub fn generic(m: usize) -> Self {
        Self(vec![Param::Generic; m])
    }

    pub fn parse_list<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<_>>>().map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn params(&self) -> &[Param] {
        &self.0
    }

    pub fn is_generic(&self) -> bool {
        self.0.iter().any(|p| matches!(p, Param::Generic))
    }

    pub fn orders(&self) -> Result<Vec<Option<RootOrder>>> {
        self.0.iter().enumerate().map(|(j, p)| p.order(j)).collect()
    }

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(Param::is_zero)
    }

    pub fn first_zero(&self) -> Option<usize> {
        self.0.iter().position(Param::is_zero)
    }

    pub fn check_colours(&self, m: usize) -> Result<()> {
        if self.0.len() != m {
            return Err(Error::ColourCountMismatch { left: self.0.len(), right: m });
        }
        Ok(())
    }

    /// Reorders colours: entry `j` of the result is entry `perm[j]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self(perm.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl fmt::Display for ParameterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Evaluation homomorphism from the Laurent ring into one number field.
///
/// Every root-of-unity value `2 cos(pi/l_j)` lies in `Q(2 cos(pi/L))` with
/// `L = lcm(l_j)`: it is `C_{L/l_j}(a)` for the Dickson polynomial `C_k`.
/// Working in that single field keeps Gaussian elimination inside a field
/// even when two colours share a value.
#[derive(Clone, Debug)]
pub struct Specialization {
    field: Arc<NumberField>,
    images: Vec<AlgebraicScalar>,
}

/// `C_k(x)` evaluated at `x` (`C_0 = 2`, `C_1 = x`).
fn dickson(x: &AlgebraicScalar, k: u32) -> AlgebraicScalar {
    let field = x.field();
    let mut prev = AlgebraicScalar::from_integer(field, 2);
    if k == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..k {
        let next = &(x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

impl Specialization {
    pub fn new(spec: &ParameterSpec) -> Result<Self> {
        if let Some(j) = spec.0.iter().position(|p| matches!(p, Param::Generic)) {
            return Err(Error::GenericParameter { colour: j });
        }
        let lcm = spec
            .0
            .iter()
            .filter_map(|p| match p {
                Param::RootOfUnity(l) => Some(l.get()),
                _ => None,
            })
            .fold(1u32, |acc, l| acc.lcm(&l));
        let field = if lcm == 1 { NumberField::rationals() } else { NumberField::for_order(lcm)? };
        let gen = AlgebraicScalar::generator(&field);
        let images = spec
            .0
            .iter()
            .map(|p| match p {
                Param::Rational(r) => AlgebraicScalar::from_rational(&field, r.clone()),
                Param::RootOfUnity(l) => dickson(&gen, lcm / l.get()),
                Param::Generic => unreachable!(),
            })
            .collect();
        Ok(Self { field, images })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn colours(&self) -> usize {
        self.images.len()
    }

    /// Image of `d{j}`.
    pub fn image(&self, j: usize) -> &AlgebraicScalar {
        &self.images[j]
    }

    pub fn evaluate(&self, p: &LaurentScalar) -> Result<AlgebraicScalar> {
        if p.nvars() != self.images.len() {
            return Err(Error::ColourCountMismatch { left: p.nvars(), right: self.images.len() });
        }
        let mut inverses: Vec<Option<AlgebraicScalar>> = vec![None; self.images.len()];
        let mut acc = AlgebraicScalar::zero(&self.field);
        for (e, c) in p.terms() {
            let mut term = AlgebraicScalar::from_rational(&self.field, BigRational::from_integer(c.clone()));
            for (j, &x) in e.iter().enumerate() {
                if x > 0 {
                    term = &term * &self.images[j].pow(x as u32);
                } else if x < 0 {
                    if inverses[j].is_none() {
                        let inv =
                            self.images[j].inverse().map_err(|_| Error::NonInvertibleSpecialization { colour: j })?;
                        inverses[j] = Some(inv);
                    }
                    term = &term * &inverses[j].as_ref().unwrap().pow((-x) as u32);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// Evaluates `p` at `point`, which must have no generic entries.
pub fn evaluate(p: &LaurentScalar, point: &ParameterSpec) -> Result<AlgebraicScalar> {
    Specialization::new(point)?.evaluate(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(items: &[&str]) -> ParameterSpec {
        ParameterSpec::parse_list(items).unwrap()
    }

    fn d(i: usize) -> LaurentScalar {
        LaurentScalar::var(2, i)
    }

    #[test]
    fn parses_grammar() {
        assert_eq!("3".parse::<Param>().unwrap(), Param::rational(3));
        assert_eq!("-1/2".parse::<Param>().unwrap(), Param::Rational(BigRational::new((-1).into(), 2.into())));
        assert_eq!("root:4".parse::<Param>().unwrap(), Param::root(4).unwrap());
        assert_eq!("generic".parse::<Param>().unwrap(), Param::Generic);
        assert_eq!("root:1".parse::<Param>(), Err(Error::InvalidOrder(1)));
        assert!("x".parse::<Param>().is_err());
        assert!("1/0".parse::<Param>().is_err());
    }

    #[test]
    fn orders_of_rational_values() {
        let s = spec(&["0", "1", "-1", "3", "1/2", "root:5"]);
        let o: Vec<Option<u32>> = s.orders().unwrap().iter().map(|o| o.map(RootOrder::get)).collect();
        assert_eq!(o, vec![Some(2), Some(3), Some(3), None, None, Some(5)]);
        assert!(matches!(spec(&["2"]).orders(), Err(Error::UnsupportedOrderOne { colour: 0, .. })));
        assert!(matches!(spec(&["-2"]).orders(), Err(Error::UnsupportedOrderOne { .. })));
    }

    #[test]
    fn zero_factor() {
        let x = evaluate(&(&d(0) * &d(1)), &spec(&["0", "root:4"])).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn square_of_sqrt2() {
        let x = evaluate(&d(1).pow(2).unwrap(), &spec(&["0", "root:4"])).unwrap();
        assert_eq!(x, AlgebraicScalar::from_integer(x.field(), 2));
    }

    #[test]
    fn constant_survives() {
        let p = &d(0) + &LaurentScalar::constant(2, 3);
        let x = evaluate(&p, &spec(&["0", "root:4"])).unwrap();
        assert_eq!(x, AlgebraicScalar::from_integer(x.field(), 3));
    }

    #[test]
    fn negative_power_of_zero_value() {
        let p = d(0).pow(-1).unwrap();
        assert_eq!(evaluate(&p, &spec(&["0", "root:4"])), Err(Error::NonInvertibleSpecialization { colour: 0 }));
        let q = d(1).pow(-2).unwrap();
        let x = evaluate(&q, &spec(&["0", "root:4"])).unwrap();
        assert_eq!(x, AlgebraicScalar::from_rational(x.field(), BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn generic_entries_are_rejected() {
        assert_eq!(evaluate(&d(0), &spec(&["generic", "1"])), Err(Error::GenericParameter { colour: 0 }));
    }

    #[test]
    fn shared_field_for_mixed_orders() {
        // lcm(3, 4) = 12; both images must be the right real numbers.
        let s = Specialization::new(&spec(&["root:3", "root:4"])).unwrap();
        assert_eq!(s.field().degree(), 4);
        let root = 2.0 * (std::f64::consts::PI / 12.0).cos();
        assert!((s.image(0).to_f64_at(root) - 1.0).abs() < 1e-12);
        assert!((s.image(1).to_f64_at(root) - 2f64.sqrt()).abs() < 1e-12);
    }
}
