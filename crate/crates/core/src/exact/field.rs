//! Exact scalar fields.
//!
//! Hot loops work with a field *context* (`Rationals`, `PrimeField`,
//! `QuadraticExtension`) and its plain element type, so that the modulus is
//! carried once instead of per element. `FieldScalar` is the tagged,
//! self-describing value used at API and serialization boundaries.

use std::fmt;
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{self, Matrix};
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Reduce a rational modulo a prime; `None` when the denominator vanishes.
pub fn rational_mod(r: &Rational, q: u64) -> Option<u64> {
    let m = BigInt::from(q);
    let num = r.numer().mod_floor(&m).to_u64()?;
    let den = r.denom().mod_floor(&m).to_u64()?;
    let inv = inv_mod(den, q)?;
    Some(mul_mod(num, inv, q))
}

#[inline]
pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(q as i128) as u64)
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A field context. Elements are plain values; all arithmetic goes through
/// the context so that moduli never have to be compared at runtime.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of a rational; `None` when its denominator is not invertible.
    fn from_rational(&self, r: &Rational) -> Option<Self::Elem>;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&rat(v)).expect("integers embed in every field")
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&self, m: &mut Matrix<Self::Elem>) -> Vec<usize> {
        matrix::gauss_jordan(self, m)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, r: &Rational) -> Option<Rational> {
        Some(r.clone())
    }
    fn rref(&self, m: &mut Matrix<Rational>) -> Vec<usize> {
        matrix::fraction_free_rref(m)
    }
}

/// The prime field F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Canonical projective representative: first nonzero entry scaled to 1.
    /// Returns `false` for the zero vector.
    pub fn normalize(&self, v: &mut [u64]) -> bool {
        let Some(lead) = v.iter().copied().find(|&x| x != 0) else {
            return false;
        };
        if lead != 1 {
            let inv = inv_mod(lead, self.q).expect("nonzero in a field");
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, self.q);
            }
        }
        true
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.q)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            inv_mod(*a, self.q)
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_rational(&self, r: &Rational) -> Option<u64> {
        rational_mod(r, self.q)
    }
}

/// F_{q^2} = F_q[s]/(s^2 - d) with `d` the smallest quadratic non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticExtension {
    base: PrimeField,
    nonresidue: u64,
}

impl QuadraticExtension {
    pub fn new(q: u64) -> Result<Self> {
        let base = PrimeField::new(q)?;
        if q == 2 {
            return Err(Error::Invalid("quadratic extension needs an odd prime".into()));
        }
        let nonresidue = (2..q)
            .find(|&d| pow_mod(d, (q - 1) / 2, q) == q - 1)
            .expect("odd primes have non-residues");
        Ok(QuadraticExtension { base, nonresidue })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }
}

impl Field for QuadraticExtension {
    type Elem = (u64, u64);

    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn one(&self) -> (u64, u64) {
        (1, 0)
    }
    fn add(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn mul(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        let f = &self.base;
        let re = f.add(&f.mul(&a.0, &b.0), &f.mul(&self.nonresidue, &f.mul(&a.1, &b.1)));
        let im = f.add(&f.mul(&a.0, &b.1), &f.mul(&a.1, &b.0));
        (re, im)
    }
    fn neg(&self, a: &(u64, u64)) -> (u64, u64) {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn inv(&self, a: &(u64, u64)) -> Option<(u64, u64)> {
        let f = &self.base;
        let norm = f.sub(&f.mul(&a.0, &a.0), &f.mul(&self.nonresidue, &f.mul(&a.1, &a.1)));
        let inv = f.inv(&norm)?;
        Some((f.mul(&a.0, &inv), f.mul(&f.neg(&a.1), &inv)))
    }
    fn is_zero(&self, a: &(u64, u64)) -> bool {
        a.0 == 0 && a.1 == 0
    }
    fn from_rational(&self, r: &Rational) -> Option<(u64, u64)> {
        self.base.from_rational(r).map(|v| (v, 0))
    }
}

/// A self-describing exact scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldScalar {
    Rational(Rational),
    Fq { value: u64, q: u64 },
    Fq2 { re: u64, im: u64, q: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Fq(u64),
    Fq2(u64),
}

impl FieldScalar {
    pub fn fq(value: u64, q: u64) -> Result<Self> {
        PrimeField::new(q)?;
        Ok(FieldScalar::Fq { value: value % q, q })
    }

    pub fn fq2(re: u64, im: u64, q: u64) -> Result<Self> {
        QuadraticExtension::new(q)?;
        Ok(FieldScalar::Fq2 { re: re % q, im: im % q, q })
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldScalar::Rational(_) => FieldKind::Rational,
            FieldScalar::Fq { q, .. } => FieldKind::Fq(*q),
            FieldScalar::Fq2 { q, .. } => FieldKind::Fq2(*q),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Fq { value, .. } => *value == 0,
            FieldScalar::Fq2 { re, im, .. } => *re == 0 && *im == 0,
        }
    }

    fn binary(
        &self,
        other: &Self,
        qop: impl Fn(&Rational, &Rational) -> Option<Rational>,
        pop: impl Fn(&PrimeField, &u64, &u64) -> Option<u64>,
        eop: impl Fn(&QuadraticExtension, &(u64, u64), &(u64, u64)) -> Option<(u64, u64)>,
    ) -> Result<Self> {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => {
                qop(a, b).map(FieldScalar::Rational).ok_or(Error::DivisionByZero)
            }
            (FieldScalar::Fq { value: a, q }, FieldScalar::Fq { value: b, q: q2 }) if q == q2 => {
                let f = PrimeField::new(*q)?;
                pop(&f, a, b)
                    .map(|value| FieldScalar::Fq { value, q: *q })
                    .ok_or(Error::DivisionByZero)
            }
            (FieldScalar::Fq2 { re: a0, im: a1, q }, FieldScalar::Fq2 { re: b0, im: b1, q: q2 })
                if q == q2 =>
            {
                let f = QuadraticExtension::new(*q)?;
                eop(&f, &(*a0, *a1), &(*b0, *b1))
                    .map(|(re, im)| FieldScalar::Fq2 { re, im, q: *q })
                    .ok_or(Error::DivisionByZero)
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| Some(a + b), |f, a, b| Some(f.add(a, b)), |f, a, b| Some(f.add(a, b)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| Some(a - b), |f, a, b| Some(f.sub(a, b)), |f, a, b| Some(f.sub(a, b)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| Some(a * b), |f, a, b| Some(f.mul(a, b)), |f, a, b| Some(f.mul(a, b)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.binary(
            other,
            |a, b| (!b.is_zero()).then(|| a / b),
            |f, a, b| f.div(a, b),
            |f, a, b| f.div(a, b),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let one = match self {
            FieldScalar::Rational(_) => FieldScalar::Rational(Rational::one()),
            FieldScalar::Fq { q, .. } => FieldScalar::Fq { value: 1, q: *q },
            FieldScalar::Fq2 { q, .. } => FieldScalar::Fq2 { re: 1, im: 0, q: *q },
        };
        one.try_div(self)
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{r}"),
            FieldScalar::Fq { value, q } => write!(f, "{value} (mod {q})"),
            FieldScalar::Fq2 { re, im, q } => write!(f, "{re}+{im}s (mod {q})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarDoc {
    Rational(String),
    Fq { value: u64, q: u64 },
    Fq2 { re: u64, im: u64, q: u64 },
}

impl Serialize for FieldScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = match self {
            FieldScalar::Rational(r) => ScalarDoc::Rational(rational_string(r)),
            FieldScalar::Fq { value, q } => ScalarDoc::Fq { value: *value, q: *q },
            FieldScalar::Fq2 { re, im, q } => ScalarDoc::Fq2 { re: *re, im: *im, q: *q },
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match ScalarDoc::deserialize(d)? {
            ScalarDoc::Rational(s) => parse_rational(&s).map(FieldScalar::Rational).map_err(D::Error::custom),
            ScalarDoc::Fq { value, q } => FieldScalar::fq(value, q).map_err(D::Error::custom),
            ScalarDoc::Fq2 { re, im, q } => FieldScalar::fq2(re, im, q).map_err(D::Error::custom),
        }
    }
}

/// Rationals always serialize as "a/b" strings.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serde adapter for `Vec<Rational>` as a list of "a/b" strings.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(rational_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        use serde::de::Error as _;
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}

/// Least common multiple of the denominators, as an integer.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn sign_of(r: &Rational) -> Sign {
    r.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_297));
    }

    #[test]
    fn rational_reduction_mod_q() {
        assert_eq!(rational_mod(&ratio(1, 2), 7), Some(4));
        assert_eq!(rational_mod(&ratio(-3, 1), 7), Some(4));
        assert_eq!(rational_mod(&ratio(1, 7), 7), None);
    }

    #[test]
    fn quadratic_extension_inverse() {
        let f = QuadraticExtension::new(11).unwrap();
        assert_eq!(f.nonresidue(), 2);
        for a in 0..11 {
            for b in 0..11 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let x = (a, b);
                assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), (1, 0));
            }
        }
    }

    #[test]
    fn scalar_mixing_is_rejected() {
        let a = FieldScalar::fq(3, 7).unwrap();
        let b = FieldScalar::fq(3, 11).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch)));
        let r = FieldScalar::Rational(rat(1));
        assert!(matches!(a.try_mul(&r), Err(Error::FieldMismatch)));
    }

    #[test]
    fn scalar_serde_shapes() {
        let r = FieldScalar::Rational(ratio(-3, 6));
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-1/2\"");
        let f = FieldScalar::fq(12, 11).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"value":1,"q":11}"#);
        let back: FieldScalar = serde_json::from_str(r#"{"value":1,"q":11}"#).unwrap();
        assert_eq!(back, f);
        let back: FieldScalar = serde_json::from_str("\"4/6\"").unwrap();
        assert_eq!(back, FieldScalar::Rational(ratio(2, 3)));
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&ratio(2, 1)), None);
        assert_eq!(rational_sqrt(&ratio(-1, 1)), None);
    }
}
