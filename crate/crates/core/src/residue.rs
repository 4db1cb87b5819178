//! Residues modulo p^e for odd primes p and e in {1, 2, 3}.
//!
//! [`Residue`] is the value type that crosses module boundaries and ends up in
//! reports. The O(p^2) scans run on a [`ModRing`] instead: [`WordRing`] keeps
//! elements in a `u64` with `u128` intermediate products while p^e < 2^63,
//! and [`BigRing`] takes over above that. [`RingChoice`] picks between them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::primes::require_odd_prime;

/// A validated prime-power modulus p^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    e: u32,
}

impl Modulus {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        require_odd_prime(p)?;
        if !(1..=3).contains(&e) {
            return Err(Error::Exponent(e));
        }
        Ok(Modulus { p, e })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn value(&self) -> BigUint {
        BigUint::from(self.p).pow(self.e)
    }

    /// p^e as a machine word when it stays below 2^63.
    pub fn word(&self) -> Option<u64> {
        let m = (self.p as u128).checked_pow(self.e)?;
        (m < 1u128 << 63).then_some(m as u64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigUint,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: &BigInt, modulus: Modulus) -> Self {
        let m = BigInt::from(modulus.value());
        let value = value.mod_floor(&m).to_biguint().expect("mod_floor is nonnegative");
        Residue { value, modulus }
    }

    pub fn from_i64(value: i64, modulus: Modulus) -> Self {
        Residue::new(&BigInt::from(value), modulus)
    }

    pub fn zero(modulus: Modulus) -> Self {
        Residue { value: BigUint::zero(), modulus }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn pow(&self, exp: u64) -> Residue {
        Residue { value: self.value.modpow(&BigUint::from(exp), &self.modulus.value()), modulus: self.modulus }
    }

    fn combine(&self, rhs: &Residue, op: impl FnOnce(BigInt, BigInt) -> BigInt) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residues with different moduli");
        let out = op(BigInt::from(self.value.clone()), BigInt::from(rhs.value.clone()));
        Residue::new(&out, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for &Residue {
    type Output = Residue;
    fn add(self, rhs: &Residue) -> Residue {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &Residue {
    type Output = Residue;
    fn sub(self, rhs: &Residue) -> Residue {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul for &Residue {
    type Output = Residue;
    fn mul(self, rhs: &Residue) -> Residue {
        self.combine(rhs, |a, b| a * b)
    }
}

impl Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::new(&-BigInt::from(self.value.clone()), self.modulus)
    }
}

fn big_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.mod_floor(m).extended_gcd(m);
    ext.gcd.is_one().then(|| ext.x.mod_floor(m))
}

/// Image of a p-integral rational in Z/p^e.
pub fn mod_reduce(q: &Rational, p: u64, e: u32) -> Result<Residue> {
    reduce_in(q, Modulus::new(p, e)?)
}

pub fn reduce_in(q: &Rational, modulus: Modulus) -> Result<Residue> {
    let p = BigInt::from(modulus.p());
    if q.denom().is_multiple_of(&p) {
        return Err(Error::NonPIntegral { value: q.to_string(), p: modulus.p() });
    }
    let m = BigInt::from(modulus.value());
    let inv = big_inverse(q.denom(), &m).expect("denominator coprime to p");
    Ok(Residue::new(&(q.numer() * inv), modulus))
}

pub fn mod_inv(a: &Residue) -> Result<Residue> {
    let m = BigInt::from(a.modulus.value());
    big_inverse(&BigInt::from(a.value.clone()), &m)
        .map(|v| Residue::new(&v, a.modulus))
        .ok_or_else(|| Error::NotInvertible {
            value: a.value.to_string(),
            p: a.modulus.p(),
            e: a.modulus.exponent(),
        })
}

/// Arithmetic in Z/p^e on a ring-specific element representation.
#[allow(clippy::wrong_self_convention)]
pub trait ModRing: Sync + Send {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn modulus(&self) -> Modulus;
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn to_residue(&self, a: &Self::Elem) -> Residue;

    fn zero(&self) -> Self::Elem {
        self.from_u64(0)
    }

    fn one(&self) -> Self::Elem {
        self.from_u64(1)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        if n >= 0 {
            self.from_u64(n as u64)
        } else {
            self.neg(&self.from_u64(n.unsigned_abs()))
        }
    }

    fn from_rational(&self, q: &Rational) -> Result<Self::Elem> {
        let p = self.modulus().p();
        if q.denom().is_multiple_of(&BigInt::from(p)) {
            return Err(Error::NonPIntegral { value: q.to_string(), p });
        }
        let den = self.inv(&self.from_bigint(q.denom())).expect("unit denominator");
        Ok(self.mul(&self.from_bigint(q.numer()), &den))
    }

    fn from_residue(&self, r: &Residue) -> Self::Elem {
        assert_eq!(r.modulus(), self.modulus(), "residue from a different ring");
        self.from_bigint(&BigInt::from(r.value().clone()))
    }
}

/// Word-sized ring, p^e < 2^63.
#[derive(Debug, Clone, Copy)]
pub struct WordRing {
    modulus: Modulus,
    m: u64,
}

impl WordRing {
    pub fn new(modulus: Modulus) -> Option<Self> {
        modulus.word().map(|m| WordRing { modulus, m })
    }
}

impl ModRing for WordRing {
    type Elem = u64;

    fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn from_u64(&self, n: u64) -> u64 {
        n % self.m
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.m)).to_u64().expect("reduced below a u64 modulus")
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        let (mut r0, mut r1) = (self.m as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        (r0 == 1).then(|| s0.rem_euclid(self.m as i128) as u64)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn to_residue(&self, a: &u64) -> Residue {
        Residue { value: BigUint::from(*a), modulus: self.modulus }
    }
}

/// Arbitrary-precision ring for moduli at or above 2^63.
#[derive(Debug, Clone)]
pub struct BigRing {
    modulus: Modulus,
    m: BigInt,
}

impl BigRing {
    pub fn new(modulus: Modulus) -> Self {
        BigRing { modulus, m: BigInt::from(modulus.value()) }
    }
}

impl ModRing for BigRing {
    type Elem = BigInt;

    fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn from_u64(&self, n: u64) -> BigInt {
        BigInt::from(n).mod_floor(&self.m)
    }

    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.m)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a + b).mod_floor(&self.m)
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a - b).mod_floor(&self.m)
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.m)
    }

    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        big_inverse(a, &self.m)
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn to_residue(&self, a: &BigInt) -> Residue {
        debug_assert!(a.sign() != Sign::Minus);
        Residue::new(a, self.modulus)
    }
}

pub enum RingChoice {
    Word(WordRing),
    Big(BigRing),
}

impl RingChoice {
    pub fn for_modulus(modulus: Modulus) -> Self {
        match WordRing::new(modulus) {
            Some(ring) => RingChoice::Word(ring),
            None => RingChoice::Big(BigRing::new(modulus)),
        }
    }
}

/// Runs `$body` with `$ring` bound to the ring [`RingChoice`] selects.
macro_rules! with_ring {
    ($modulus:expr, |$ring:ident| $body:expr) => {
        match $crate::residue::RingChoice::for_modulus($modulus) {
            $crate::residue::RingChoice::Word(ref $ring) => $body,
            $crate::residue::RingChoice::Big(ref $ring) => $body,
        }
    };
}
pub(crate) use with_ring;
