//! Primality testing and prime enumeration.

use std::collections::HashMap;

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

pub fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Unbounded incremental sieve of Eratosthenes.
///
/// Each composite is discovered through the smallest prime that has reached
/// it, so memory grows with the number of primes below the square root of the
/// current candidate rather than with the candidate itself.
#[derive(Debug, Default)]
pub struct PrimeSieve {
    next: u64,
    // composite -> the primes whose multiple it is
    pending: HashMap<u64, Vec<u64>>,
}

impl PrimeSieve {
    pub fn new() -> Self {
        PrimeSieve { next: 2, pending: HashMap::new() }
    }
}

impl Iterator for PrimeSieve {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let n = self.next;
            self.next = self.next.checked_add(1)?;
            match self.pending.remove(&n) {
                None => {
                    if let Some(sq) = n.checked_mul(n) {
                        self.pending.insert(sq, vec![n]);
                    }
                    return Some(n);
                }
                Some(factors) => {
                    for q in factors {
                        if let Some(next) = n.checked_add(q) {
                            self.pending.entry(next).or_default().push(q);
                        }
                    }
                }
            }
        }
    }
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn odd_primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    PrimeSieve::new()
        .take_while(move |&p| p <= hi)
        .filter(move |&p| p >= lo && p != 2)
}
