//! Exact arithmetic: arbitrary-precision rationals, binomial coefficients,
//! rising factorials, harmonic numbers and the Legendre symbol.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::primes::{pow_mod, require_odd_prime};

/// Signed fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"` or a bare integer, optional leading sign, no whitespace.
pub fn parse_rational(text: &str) -> Result<Rational> {
    fn parse_int(part: &str, whole: &str) -> Result<BigInt> {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("malformed rational {whole:?}")));
        }
        part.trim_start_matches('+')
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("malformed rational {whole:?}: {e}")))
    }
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text, text)?)),
        Some((num, den)) => {
            if den.starts_with(['-', '+']) {
                return Err(Error::Parse(format!("sign not allowed in denominator of {text:?}")));
            }
            let den = parse_int(den, text)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(num, text)?, den))
        }
    }
}

/// C(n, k) for integer arguments; zero when `k < 0` or `k > n`.
pub fn binom_int(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    BigInt::from(acc)
}

/// Generalized binomial coefficient x(x-1)...(x-k+1)/k!.
pub fn binom_gen(x: &Rational, k: u64) -> Rational {
    let mut num = Rational::one();
    let mut fact = BigInt::one();
    for j in 0..k {
        num *= x - Rational::from_integer(BigInt::from(j));
        fact *= j + 1;
    }
    num / Rational::from_integer(fact)
}

/// Rising factorial (x)_k = x(x+1)...(x+k-1).
pub fn pochhammer(x: &Rational, k: u64) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * (x + Rational::from_integer(BigInt::from(j))))
}

pub fn harmonic(n: u64) -> Rational {
    // common-denominator accumulation: sum of L/j over lcm L, reduced once
    let lcm = (1..=n).fold(BigInt::one(), |l, j| l.lcm(&BigInt::from(j)));
    let num = (1..=n).fold(BigInt::zero(), |s, j| s + &lcm / j);
    Rational::new(num, lcm)
}

/// (-1)^k as a small integer.
pub fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LegendreValue {
    MinusOne,
    Zero,
    PlusOne,
}

impl LegendreValue {
    pub fn value(self) -> i64 {
        match self {
            LegendreValue::MinusOne => -1,
            LegendreValue::Zero => 0,
            LegendreValue::PlusOne => 1,
        }
    }
}

impl fmt::Display for LegendreValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Legendre symbol (a/p) by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<LegendreValue> {
    require_odd_prime(p)?;
    let a = (a as i128).rem_euclid(p as i128) as u64;
    Ok(match pow_mod(a, (p - 1) / 2, p) {
        0 => LegendreValue::Zero,
        1 => LegendreValue::PlusOne,
        r if r == p - 1 => LegendreValue::MinusOne,
        r => unreachable!("Euler criterion produced {r} mod prime {p}"),
    })
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}
