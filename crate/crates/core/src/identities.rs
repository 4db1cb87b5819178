//! Exact checks of the closed-form binomial identities the supercongruences
//! rest on. Everything here is rational arithmetic; nothing is approximated.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binom_int, int, pochhammer, rat, sign, Rational};

fn r(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// C(n,k) C(n+k,k) for k = 0..=n.
fn legendre_coefficients(n: u64) -> Vec<BigInt> {
    (0..=n).map(|k| binom_int(n, k as i64) * binom_int(n + k, k as i64)).collect()
}

fn double_sum(n: u64, kernel: impl Fn(u64, u64) -> Rational) -> Rational {
    let a = legendre_coefficients(n);
    let mut acc = Rational::zero();
    for k in 0..=n {
        for l in 0..=n {
            acc += r(&a[k as usize] * &a[l as usize]) * kernel(k, l);
        }
    }
    acc
}

fn minus_two_pow(k: u64) -> Rational {
    r(BigInt::from(sign(k)) << k)
}

/// sum_{k,l<=n} C(n,k)C(n+k,k)C(n,l)C(n+l,l) (-2)^{k+l} / ((k+l+1) C(k+l,k)).
pub fn beta_double_sum(n: u64) -> Rational {
    double_sum(n, |k, l| minus_two_pow(k + l) / r(BigInt::from(k + l + 1) * binom_int(k + l, k as i64)))
}

/// (-1)^n / (2n+1).
pub fn beta_double_sum_closed(n: u64) -> Rational {
    rat(sign(n), 2 * n as i64 + 1)
}

/// sum_{k,l<=n} C(n,k)C(n+k,k)C(n,l)C(n+l,l) (-2)^{k+l} / C(k+l+2, k+1).
pub fn shifted_beta_double_sum(n: u64) -> Rational {
    double_sum(n, |k, l| minus_two_pow(k + l) / r(binom_int(k + l + 2, k as i64 + 1)))
}

/// 1/4 - (-1)^n (2n^2+2n-1) / (8n+4).
pub fn shifted_beta_double_sum_closed(n: u64) -> Rational {
    let n = n as i64;
    rat(1, 4) - rat(sign(n as u64) * (2 * n * n + 2 * n - 1), 8 * n + 4)
}

/// sum_{k,l<=n} C(n,k)C(n+k,k)C(n,l)C(n+l,l) (-1)^l / (k+l+1), which equals
/// (-1)^n/(2n+1) once the inner partial-fraction sums collapse.
pub fn alternating_double_sum(n: u64) -> Rational {
    double_sum(n, |k, l| rat(sign(l), (k + l + 1) as i64))
}

fn is_pole(n: u64, x: &Rational) -> bool {
    x.is_integer() && *x <= int(0) && *x >= int(-(n as i64))
}

/// sum_{l<=n} (-1)^l / (x+l) C(n+l,l) C(n,l).
pub fn pfd_sum(n: u64, x: &Rational) -> Result<Rational> {
    if is_pole(n, x) {
        return Err(Error::Pole { x: x.to_string(), n });
    }
    Ok((0..=n).fold(Rational::zero(), |acc, l| {
        acc + r(binom_int(n + l, l as i64) * binom_int(n, l as i64)) * int(sign(l))
            / (x + int(l as i64))
    }))
}

/// (1-x)_n / (x)_{n+1}.
pub fn pfd_closed(n: u64, x: &Rational) -> Result<Rational> {
    if is_pole(n, x) {
        return Err(Error::Pole { x: x.to_string(), n });
    }
    Ok(pochhammer(&(int(1) - x), n) / pochhammer(x, n + 1))
}

pub fn pfd_check(n: u64, x: &Rational) -> Result<bool> {
    Ok(pfd_sum(n, x)? == pfd_closed(n, x)?)
}

/// sum_{i=0}^{k+l} (-1)^i / (i+shift) C(i,l) C(l,i-k).
pub fn alternating_inner_sum(k: u64, l: u64, shift: u64) -> Rational {
    (0..=k + l).fold(Rational::zero(), |acc, i| {
        let c = binom_int(i, l as i64) * binom_int(l, i as i64 - k as i64);
        if c.is_zero() {
            return acc;
        }
        acc + r(c) * rat(sign(i), (i + shift) as i64)
    })
}

/// Closed forms of [`alternating_inner_sum`] for shifts 1 and 2:
/// (-1)^{k+l} / ((k+l+1) C(k+l,l)) and (-1)^{k+l} / C(k+l+2, l+1).
pub fn alternating_inner_closed(k: u64, l: u64, shift: u64) -> Rational {
    let s = int(sign(k + l));
    match shift {
        1 => s / r(BigInt::from(k + l + 1) * binom_int(k + l, l as i64)),
        2 => s / r(binom_int(k + l + 2, l as i64 + 1)),
        _ => {
            // general partial-fraction form at x = shift
            let x = int(shift as i64);
            s * pochhammer(&x, l) * pochhammer(&x, k) / pochhammer(&x, k + l + 1)
        }
    }
}

/// Partial-fraction form behind both inner sums, at a free rational x:
/// sum_i (-1)^{l+k+i}/(x+i) C(i,l) C(l,i-k) = (x)_l (x)_k / (x)_{l+k+1}.
pub fn inner_pfd_check(k: u64, l: u64, x: &Rational) -> Result<bool> {
    if is_pole(k + l, x) {
        return Err(Error::Pole { x: x.to_string(), n: k + l });
    }
    let lhs = (0..=k + l).fold(Rational::zero(), |acc, i| {
        let c = binom_int(i, l as i64) * binom_int(l, i as i64 - k as i64);
        acc + r(c) * int(sign(l + k + i)) / (x + int(i as i64))
    });
    Ok(lhs == pochhammer(x, l) * pochhammer(x, k) / pochhammer(x, l + k + 1))
}

/// Both sides of sum_{n<N} C(n,k)C(n,l) = N sum_{i<=k+l} C(i,l)C(l,i-k)C(N-1,i)/(i+1).
pub fn binom_conv_sum(big_n: u64, k: u64, l: u64) -> (Rational, Rational) {
    assert!(big_n >= 1, "N must be positive");
    let lhs = (0..big_n).fold(BigInt::zero(), |acc, n| acc + binom_int(n, k as i64) * binom_int(n, l as i64));
    let inner = (0..=k + l).fold(Rational::zero(), |acc, i| {
        let c = binom_int(i, l as i64) * binom_int(l, i as i64 - k as i64) * binom_int(big_n - 1, i as i64);
        acc + r(c) / int(i as i64 + 1)
    });
    (r(lhs), int(big_n as i64) * inner)
}

/// Both sides of sum_{n<N} (n+1)C(n,k)C(n,l) = sum_i N(N+1)/(i+2) C(i,l)C(l,i-k)C(N-1,i).
pub fn weighted_binom_conv_sum(big_n: u64, k: u64, l: u64) -> (Rational, Rational) {
    assert!(big_n >= 1, "N must be positive");
    let lhs = (0..big_n).fold(BigInt::zero(), |acc, n| {
        acc + BigInt::from(n + 1) * binom_int(n, k as i64) * binom_int(n, l as i64)
    });
    let scale = int((big_n * (big_n + 1)) as i64);
    let rhs = (0..=k + l).fold(Rational::zero(), |acc, i| {
        let c = binom_int(i, l as i64) * binom_int(l, i as i64 - k as i64) * binom_int(big_n - 1, i as i64);
        acc + &scale * r(c) / int(i as i64 + 2)
    });
    (r(lhs), rhs)
}

/// z-derivative of the Pfaff reflection:
/// sum_k C(n,k)C(n+k,k) k (-z)^{k-1} = (-1)^{n-1} sum_k C(n,k)C(n+k,k) k (z-1)^{k-1}.
pub fn pfaff_derivative_check(n: u64, z: &Rational) -> bool {
    let a = legendre_coefficients(n);
    let side = |arg: &Rational| {
        let mut pow = int(1);
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc += r(&a[k as usize] * BigInt::from(k)) * &pow;
            pow *= arg;
        }
        acc
    };
    side(&-z) == int(sign(n + 1)) * side(&(z - int(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_double_sum_small() {
        assert_eq!(beta_double_sum(0), int(1));
        assert_eq!(beta_double_sum(1), rat(-1, 3));
        assert_eq!(beta_double_sum_closed(1), rat(-1, 3));
    }

    #[test]
    fn shifted_beta_double_sum_small() {
        assert_eq!(shifted_beta_double_sum(0), rat(1, 2));
        assert_eq!(shifted_beta_double_sum(1), rat(1, 2));
        assert_eq!(shifted_beta_double_sum_closed(0), rat(1, 2));
        assert_eq!(shifted_beta_double_sum_closed(1), rat(1, 2));
    }

    #[test]
    fn alternating_double_sum_small() {
        for n in 0..=12 {
            assert_eq!(alternating_double_sum(n), beta_double_sum_closed(n));
        }
    }

    #[test]
    fn pfd_examples() {
        assert_eq!(pfd_sum(1, &int(3)).unwrap(), rat(-1, 6));
        assert!(pfd_check(1, &int(3)).unwrap());
        for n in 1..=12u64 {
            for k in 0..n {
                assert_eq!(pfd_sum(n, &int(k as i64 + 1)).unwrap(), int(0));
            }
            let expected = rat(sign(n), 1) / r(BigInt::from(2 * n + 1) * binom_int(2 * n, n as i64));
            assert_eq!(pfd_sum(n, &int(n as i64 + 1)).unwrap(), expected);
        }
        assert!(matches!(pfd_check(3, &int(-2)), Err(Error::Pole { .. })));
        assert!(matches!(pfd_check(3, &int(0)), Err(Error::Pole { .. })));
        assert!(pfd_check(3, &int(-4)).unwrap());
    }

    #[test]
    fn inner_sum_examples() {
        assert_eq!(alternating_inner_sum(0, 0, 2), rat(1, 2));
        assert_eq!(alternating_inner_sum(1, 1, 2), rat(1, 6));
        assert_eq!(alternating_inner_sum(0, 0, 1), int(1));
        assert_eq!(alternating_inner_sum(1, 1, 1), rat(1, 6));
        assert_eq!(alternating_inner_closed(1, 1, 1), rat(1, 6));
        assert_eq!(alternating_inner_closed(1, 1, 2), rat(1, 6));
        assert!(inner_pfd_check(2, 3, &rat(5, 3)).unwrap());
        assert!(matches!(inner_pfd_check(2, 3, &int(-5)), Err(Error::Pole { .. })));
    }

    #[test]
    fn general_shift_matches_named_forms() {
        for k in 0..6 {
            for l in 0..6 {
                for shift in 1..5 {
                    let x = int(shift as i64);
                    let general = int(sign(k + l)) * pochhammer(&x, l) * pochhammer(&x, k) / pochhammer(&x, k + l + 1);
                    assert_eq!(alternating_inner_closed(k, l, shift), general);
                    assert_eq!(alternating_inner_sum(k, l, shift), general);
                }
            }
        }
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(binom_conv_sum(3, 1, 1), (int(5), int(5)));
        assert_eq!(binom_conv_sum(1, 0, 0), (int(1), int(1)));
        assert_eq!(weighted_binom_conv_sum(3, 1, 1), (int(14), int(14)));
        assert_eq!(weighted_binom_conv_sum(1, 0, 0), (int(1), int(1)));
    }

    #[test]
    fn pfaff_derivative_examples() {
        for z in [rat(3, 7), int(-2), rat(11, 4)] {
            assert!(pfaff_derivative_check(1, &z));
        }
        for n in 1..=25 {
            assert!(pfaff_derivative_check(n, &rat(3, 7)));
            assert!(pfaff_derivative_check(n, &int(-2)));
        }
    }
}
