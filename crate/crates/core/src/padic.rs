//! p-integral rationals split as x = m + p*t with m the least nonnegative
//! residue of x modulo p.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::Result;
use crate::exact::{int, rat, Rational};
use crate::primes::require_odd_prime;
use crate::residue::{mod_reduce, Residue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicRational {
    x: Rational,
    p: u64,
    m: u64,
    t: Rational,
}

impl PadicRational {
    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Least nonnegative residue of x modulo p.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// The exact p-integral quotient (x - m)/p.
    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// t modulo p^e.
    pub fn t_mod(&self, e: u32) -> Residue {
        mod_reduce(&self.t, self.p, e).expect("t is p-integral by construction")
    }

    /// True when 2x + 1 is divisible by p, i.e. m = (p-1)/2.
    pub fn is_half_point(&self) -> bool {
        2 * self.m + 1 == self.p
    }

    /// The image of x under x -> -1-x, which sends m to p-1-m.
    pub fn reflect(&self) -> PadicRational {
        padic_split(&(int(-1) - &self.x), self.p).expect("reflection preserves p-integrality")
    }

    /// `self` when m <= (p-1)/2, otherwise its reflection.
    pub fn lower_half(&self) -> PadicRational {
        if 2 * self.m + 1 > self.p {
            self.reflect()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} + {}*({})", self.x, self.m, self.p, self.t)
    }
}

pub fn padic_split(x: &Rational, p: u64) -> Result<PadicRational> {
    require_odd_prime(p)?;
    let m = mod_reduce(x, p, 1)?.value().to_u64().expect("residue below p");
    let t = (x - Rational::from_integer(BigInt::from(m))) / Rational::from_integer(BigInt::from(p));
    Ok(PadicRational { x: x.clone(), p, m, t })
}

/// Confirms the closed forms of <-1/4>_p, <-1/3>_p and <-1/6>_p by residue
/// class of p. Rows whose denominator is divisible by p are skipped.
pub fn residue_table_check(p: u64) -> Result<bool> {
    require_odd_prime(p)?;
    let quarter = if p % 4 == 1 { (p - 1) / 4 } else { (3 * p - 1) / 4 };
    let mut ok = padic_split(&rat(-1, 4), p)?.m() == quarter;
    if p > 3 {
        let third = if p % 3 == 1 { (p - 1) / 3 } else { (2 * p - 1) / 3 };
        let sixth = if p % 6 == 1 { (p - 1) / 6 } else { (5 * p - 1) / 6 };
        ok &= padic_split(&rat(-1, 3), p)?.m() == third;
        ok &= padic_split(&rat(-1, 6), p)?.m() == sixth;
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::primes::odd_primes_in;

    #[test]
    fn split_examples() {
        assert_eq!(padic_split(&rat(-1, 2), 5).unwrap().m(), 2);
        assert_eq!(padic_split(&rat(-1, 3), 7).unwrap().m(), 2);
        assert_eq!(padic_split(&rat(-1, 6), 11).unwrap().m(), 9);
        assert_eq!(padic_split(&rat(-1, 4), 13).unwrap().m(), 3);
        assert_eq!(padic_split(&rat(-1, 4), 7).unwrap().m(), 5);
        assert_eq!(padic_split(&rat(-1, 3), 5).unwrap().m(), 3);
        assert!(matches!(padic_split(&rat(1, 5), 5), Err(Error::NonPIntegral { .. })));
    }

    #[test]
    fn split_is_consistent() {
        for p in odd_primes_in(3, 50) {
            for (a, b) in [(-1, 2), (2, 5), (-17, 19), (0, 1), (40, 1), (-7, 4)] {
                let x = rat(a, b);
                let Ok(s) = padic_split(&x, p) else { continue };
                let recombined = int(s.m() as i64) + int(p as i64) * s.t();
                assert_eq!(recombined, x);
                let lhs = mod_reduce(&x, p, 2).unwrap();
                let m = Residue::from_i64(s.m() as i64, lhs.modulus());
                let pt = &Residue::from_i64(p as i64, lhs.modulus()) * &s.t_mod(2);
                assert_eq!(lhs, &m + &pt);
                assert_eq!(s.reflect().m(), p - 1 - s.m());
                assert!(2 * s.lower_half().m() < p);
            }
        }
    }

    #[test]
    fn residue_table() {
        for p in odd_primes_in(3, 400) {
            assert!(residue_table_check(p).unwrap(), "p = {p}");
        }
    }
}
