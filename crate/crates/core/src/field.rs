//! Exact scalar fields: prime fields GF(p) and the rationals.
//!
//! A [`Field`] is a small value (the prime, or a unit marker for Q) that
//! carries the arithmetic for its element type. Matrices and algebras hold a
//! copy of their field so that no global state is needed.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    /// 0 for Q, otherwise the prime p.
    fn characteristic(&self) -> u64;
    /// Number of elements for finite fields.
    fn order(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Uniform element for finite fields; a small integer in [-9, 9] for Q.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// All elements in a fixed order (finite fields only).
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn to_json(&self, a: &Self::Elem) -> Value;
    fn parse_json(&self, v: &Value) -> Result<Self::Elem>;
    fn display(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `sum_i xs[i] * ys[i]`.
    fn dot<'a, I>(&self, xs: &[Self::Elem], ys: I) -> Self::Elem
    where
        I: Iterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.zero();
        for (x, y) in xs.iter().zip(ys) {
            if !self.is_zero(x) && !self.is_zero(y) {
                acc = self.add(&acc, &self.mul(x, y));
            }
        }
        acc
    }

    /// `y += a * x`.
    fn axpy(&self, y: &mut [Self::Elem], a: &Self::Elem, x: &[Self::Elem]) {
        if self.is_zero(a) {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(a, xi));
            }
        }
    }

    fn scale_in_place(&self, y: &mut [Self::Elem], a: &Self::Elem) {
        for yi in y.iter_mut() {
            *yi = self.mul(a, yi);
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// Largest supported prime; products of two residues then fit in 32 bits and
/// a `u64` accumulator absorbs any realistic dot product without reduction.
pub const MAX_PRIME: u64 = 1 << 16;

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(Fp { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Fp {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(a, self.p as u64 - 2))
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.p).collect())
    }
    fn to_json(&self, a: &u32) -> Value {
        Value::from(*a)
    }
    fn parse_json(&self, v: &Value) -> Result<u32> {
        match v.as_u64() {
            Some(n) if n < self.p as u64 => Ok(n as u32),
            _ => Err(Error::Scalar(format!(
                "expected an integer in 0..{}, found {v}",
                self.p
            ))),
        }
    }
    fn display(&self, a: &u32) -> String {
        a.to_string()
    }

    fn dot<'a, I>(&self, xs: &[u32], ys: I) -> u32
    where
        I: Iterator<Item = &'a u32>,
    {
        // delayed reduction: every product is < 2^32
        let mut acc: u64 = 0;
        let mut pending = 0u32;
        for (x, y) in xs.iter().zip(ys) {
            acc += *x as u64 * *y as u64;
            pending += 1;
            if pending == u32::MAX {
                acc %= self.p as u64;
                pending = 0;
            }
        }
        (acc % self.p as u64) as u32
    }

    fn axpy(&self, y: &mut [u32], a: &u32, x: &[u32]) {
        if *a == 0 {
            return;
        }
        let p = self.p as u64;
        let a = *a as u64;
        for (yi, xi) in y.iter_mut().zip(x) {
            if *xi != 0 {
                *yi = ((*yi as u64 + a * *xi as u64) % p) as u32;
            }
        }
    }
}

/// The rational numbers, with arbitrary-precision reduced fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn to_json(&self, a: &BigRational) -> Value {
        Value::from(self.display(a))
    }
    fn parse_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(self.from_i64(n.as_i64().unwrap())),
            _ => Err(Error::Scalar(format!(
                "expected a rational string \"a/b\", found {v}"
            ))),
        }
    }
    fn display(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Scalar(format!("malformed rational \"{s}\""));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(n, d);
    debug_assert!(!r.denom().is_negative());
    Ok(r)
}

/// Runtime description of a field, as read from files and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 {
            Fp::new(characteristic)?;
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_only() {
        assert!(Fp::new(5).is_ok());
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(FieldSpec::new(0).unwrap().is_rational());
        assert!(FieldSpec::new(9).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(5).unwrap();
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.neg(&2), 3);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-2), 3);
        for a in 1..5u32 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.dot(&[1, 2, 3], [4, 4, 4].iter()), 4);
    }

    #[test]
    fn rational_parsing() {
        let q = Rationals;
        let half = q.parse_json(&Value::from("2/4")).unwrap();
        assert_eq!(q.display(&half), "1/2");
        assert_eq!(q.display(&q.parse_json(&Value::from("-3")).unwrap()), "-3");
        assert!(q.parse_json(&Value::from("1/0")).is_err());
        assert!(q.parse_json(&Value::from("x")).is_err());
        let f = Fp::new(3).unwrap();
        assert!(f.parse_json(&Value::from(3)).is_err());
    }
}
