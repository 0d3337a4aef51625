//! Elements of Q, Q(sqrt D) and Q(omega).
//!
//! An element is `a + b*g` where `g` is the field generator. Mixing two
//! different generators is an error; plain rationals combine with anything.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// Q(sqrt D), D squarefree and not 0 or 1.
    Sqrt(i64),
    /// Q(omega), omega^2 + omega + 1 = 0.
    Omega,
}

impl Field {
    pub fn sqrt(d: i64) -> Result<Self, Error> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidGenerator(format!("sqrt({d}) is not a squarefree generator")));
        }
        Ok(Field::Sqrt(d))
    }

    /// Smallest common field, if the two are compatible.
    pub fn join(self, other: Field) -> Result<Field, Error> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::FieldMismatch(a.to_string(), b.to_string())),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Sqrt(d) => write!(f, "Q(sqrt({d}))"),
            Field::Omega => write!(f, "Q(omega)"),
        }
    }
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Squarefree part of a nonzero integer, sign included.
pub fn squarefree_part(n: &BigInt) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs().to_u64()?;
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out *= m;
    Some(sign * out as i64)
}

#[derive(Clone)]
pub struct QuadExt {
    field: Field,
    a: Rational,
    b: Rational,
}

impl QuadExt {
    pub fn new(field: Field, a: Rational, b: Rational) -> Result<Self, Error> {
        if field == Field::Rational && !b.is_zero() {
            return Err(Error::InvalidGenerator("Q has no generator coefficient".into()));
        }
        Ok(QuadExt { field, a, b })
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { field: Field::Rational, a, b: Rational::zero() }
    }

    /// The generator itself, `g`.
    pub fn generator(field: Field) -> Result<Self, Error> {
        QuadExt::new(field, Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn base(&self) -> &Rational {
        &self.a
    }

    pub fn coeff(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn try_add(&self, rhs: &QuadExt) -> Result<QuadExt, Error> {
        let field = self.field.join(rhs.field)?;
        Ok(QuadExt { field, a: &self.a + &rhs.a, b: &self.b + &rhs.b })
    }

    pub fn try_sub(&self, rhs: &QuadExt) -> Result<QuadExt, Error> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &QuadExt) -> Result<QuadExt, Error> {
        let field = self.field.join(rhs.field)?;
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let cross = &self.a * &rhs.b + &self.b * &rhs.a;
        let (a, b) = match field {
            Field::Rational => (ac, cross),
            Field::Sqrt(d) => (ac + bd * Rational::from(d), cross),
            // g^2 = -1 - g
            Field::Omega => (ac - &bd, cross - bd),
        };
        Ok(QuadExt { field, a, b })
    }

    /// Algebraic conjugate: g -> -g for square roots, omega -> omega^2.
    pub fn conjugate(&self) -> QuadExt {
        match self.field {
            Field::Rational => self.clone(),
            Field::Sqrt(_) => QuadExt { field: self.field, a: self.a.clone(), b: -&self.b },
            Field::Omega => QuadExt { field: self.field, a: &self.a - &self.b, b: -&self.b },
        }
    }

    pub fn norm(&self) -> Rational {
        self.try_mul(&self.conjugate())
            .expect("same field")
            .a
    }

    pub fn inv(&self) -> Result<QuadExt, Error> {
        let n = self.norm();
        let inv_n = QuadExt::rational(n.recip()?);
        self.conjugate().try_mul(&inv_n)
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        QuadExt { field: self.field, a: &self.a * k, b: &self.b * k }
    }

    pub fn pow(&self, exp: u32) -> QuadExt {
        let mut acc = QuadExt { field: self.field, a: Rational::one(), b: Rational::zero() };
        for _ in 0..exp {
            acc = acc.try_mul(self).expect("same field");
        }
        acc
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for QuadExt {}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.field {
            Field::Rational => return write!(f, "{}", self.a),
            Field::Sqrt(d) => format!("sqrt({d})"),
            Field::Omega => "w".to_string(),
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*{}", self.b, g),
            (false, false) => write!(f, "{} + {}*{}", self.a, self.b, g),
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

// Operator forms panic on a field mismatch; the `try_*` methods report it.
impl<'a, 'b> Add<&'b QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &'b QuadExt) -> QuadExt {
        self.try_add(rhs).unwrap()
    }
}

impl<'a, 'b> Sub<&'b QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &'b QuadExt) -> QuadExt {
        self.try_sub(rhs).unwrap()
    }
}

impl<'a, 'b> Mul<&'b QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &'b QuadExt) -> QuadExt {
        self.try_mul(rhs).unwrap()
    }
}

impl<'a> Neg for &'a QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { field: self.field, a: -&self.a, b: -&self.b }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn sqrt_generator_squares_to_d() {
        let f = Field::sqrt(3).unwrap();
        let g = QuadExt::generator(f).unwrap();
        assert_eq!(&g * &g, QuadExt::rational(q(3, 1)));
    }

    #[test]
    fn omega_is_primitive_cube_root() {
        let w = QuadExt::generator(Field::Omega).unwrap();
        let w2 = &w * &w;
        assert_eq!(w2, QuadExt::new(Field::Omega, q(-1, 1), q(-1, 1)).unwrap());
        assert_eq!(&w2 * &w, QuadExt::one());
        assert!((&(&QuadExt::one() + &w) + &w2).is_zero());
    }

    #[test]
    fn generator_validation() {
        assert!(Field::sqrt(4).is_err());
        assert!(Field::sqrt(1).is_err());
        assert!(Field::sqrt(12).is_err());
        assert!(Field::sqrt(-3).is_ok());
        assert!(QuadExt::new(Field::Rational, q(1, 1), q(1, 1)).is_err());
    }

    #[test]
    fn mixed_generators_rejected() {
        let a = QuadExt::generator(Field::sqrt(2).unwrap()).unwrap();
        let b = QuadExt::generator(Field::sqrt(3).unwrap()).unwrap();
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch(..))));
        let w = QuadExt::generator(Field::Omega).unwrap();
        assert!(a.try_add(&w).is_err());
        assert!(a.try_add(&QuadExt::one()).is_ok());
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(12)), Some(3));
        assert_eq!(squarefree_part(&BigInt::from(-8)), Some(-2));
        assert_eq!(squarefree_part(&BigInt::from(49)), Some(1));
    }

    fn elem(field: Field) -> impl Strategy<Value = QuadExt> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
            .prop_map(move |(a, b, c, d)| QuadExt::new(field, q(a, b), q(c, d)).unwrap())
    }

    fn any_field() -> impl Strategy<Value = Field> {
        prop_oneof![Just(Field::Sqrt(2)), Just(Field::Sqrt(3)), Just(Field::Sqrt(-1)), Just(Field::Omega)]
    }

    proptest! {
        #[test]
        fn ring_axioms((x, y, z) in any_field().prop_flat_map(|f| (elem(f), elem(f), elem(f)))) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&x + &(-&x)).is_zero());
        }

        #[test]
        fn inverse(x in any_field().prop_flat_map(elem)) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inv().unwrap(), QuadExt::one());
        }
    }
}
