//! The polynomial sequences S_n(x, y), t_n(x) = S_n(x, -2), s_n(x) = S_n(x, -1)
//! and the Apéry-like numbers J2(n) = s_n(-1/2), evaluated exactly over the
//! rationals or modulo p^e.
//!
//! Every family is a binomial transform of a weight sequence,
//!
//! ```text
//! S_n(x, y) = sum_k C(n, k) w_k,    w_k = C(x, k) C(x + k, k) (-y)^k,
//! ```
//!
//! using C(-1-x, k) = (-1)^k C(x + k, k). The modular path builds w_k mod p^e
//! from the ratio w_k / w_{k-1} = (-y)(x - k + 1)(x + k) / k^2, which only
//! inverts k^2 and therefore stays exact for k < p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binom_gen, binom_int, int, rat, sign, Rational};
use crate::padic::PadicRational;
use crate::par::Exec;
use crate::residue::{with_ring, ModRing, Modulus, Residue};

fn r_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

fn r_pow(q: &Rational, k: u64) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * q)
}

/// S_n(x, y) straight from the defining sum with C(-1-x, k).
pub fn s_poly(n: u64, x: &Rational, y: &Rational) -> Rational {
    let reflected = int(-1) - x;
    (0..=n).fold(Rational::zero(), |acc, k| {
        acc + r_int(&binom_int(n, k as i64)) * binom_gen(x, k) * binom_gen(&reflected, k) * r_pow(y, k)
    })
}

/// t_n(x) = sum_k C(n,k) C(x,k) C(x+k,k) 2^k.
pub fn t_seq(n: u64, x: &Rational) -> Rational {
    (0..=n).fold(Rational::zero(), |acc, k| {
        let shifted = x + int(k as i64);
        acc + r_int(&binom_int(n, k as i64))
            * binom_gen(x, k)
            * binom_gen(&shifted, k)
            * r_int(&(BigInt::one() << k))
    })
}

pub fn s_seq(n: u64, x: &Rational) -> Rational {
    s_poly(n, x, &int(-1))
}

/// J2(n) = sum_k C(n,k) (-1)^k C(-1/2, k)^2.
pub fn j2(n: u64) -> Rational {
    let half = rat(-1, 2);
    (0..=n).fold(Rational::zero(), |acc, k| {
        let c = binom_gen(&half, k);
        acc + r_int(&binom_int(n, k as i64)) * int(sign(k)) * &c * &c
    })
}

/// Exact weights w_k = C(x,k) C(x+k,k) (-y)^k for k < len.
pub fn exact_weights(x: &Rational, y: &Rational, len: usize) -> Vec<Rational> {
    let minus_y = -y;
    // C(x,k) = prod (x-j+1)/j and C(x+k,k) = prod (x+j)/j over j = 1..k
    let mut lower = Rational::one();
    let mut upper = Rational::one();
    let mut power = Rational::one();
    let mut out = Vec::with_capacity(len);
    for k in 0..len as i64 {
        if k > 0 {
            lower = lower * (x - int(k - 1)) / int(k);
            upper = upper * (x + int(k)) / int(k);
            power *= &minus_y;
        }
        out.push(&lower * &upper * &power);
    }
    out
}

/// Exact rows S_n(x, y) for the requested indices, sharing one weight vector.
pub fn exact_rows(x: &Rational, y: &Rational, rows: &[u64], exec: Exec) -> Vec<Rational> {
    let len = rows.iter().max().map_or(0, |&n| n as usize + 1);
    let weights = exact_weights(x, y, len);
    // integer accumulation over a common denominator
    let den = weights.iter().fold(BigInt::one(), |d, w| d.lcm(w.denom()));
    let nums: Vec<BigInt> = weights.iter().map(|w| w.numer() * (&den / w.denom())).collect();
    exec.map_slice(rows, |&n| {
        let mut acc = BigInt::zero();
        for (k, num) in nums.iter().enumerate().take(n as usize + 1) {
            acc += binom_int(n, k as i64) * num;
        }
        Rational::new(acc, den.clone())
    })
}

/// Weights w_k mod p^e for k < len via the ratio recurrence.
pub fn weight_table<R: ModRing>(ring: &R, x: &Rational, y: &Rational, len: usize) -> Result<Vec<R::Elem>> {
    let p = ring.modulus().p();
    if len as u64 > p {
        return Err(Error::Degenerate(format!(
            "weight recurrence needs 1/k^2 for k < {len}, but {p} divides k = {p}"
        )));
    }
    let xr = ring.from_rational(x)?;
    let minus_y = ring.neg(&ring.from_rational(y)?);
    let mut weights = Vec::with_capacity(len);
    let mut w = ring.one();
    for k in 0..len as u64 {
        if k > 0 {
            let falling = ring.sub(&xr, &ring.from_u64(k - 1));
            let rising = ring.add(&xr, &ring.from_u64(k));
            let k2 = ring.from_u64(k * k);
            let inv = ring.inv(&k2).ok_or_else(|| Error::Degenerate(format!("{k}^2 not a unit mod {}", ring.modulus())))?;
            w = ring.mul(&ring.mul(&w, &minus_y), &ring.mul(&ring.mul(&falling, &rising), &inv));
        }
        weights.push(w.clone());
    }
    Ok(weights)
}

/// Inverses of 1..len-1 (index 0 unused), requires len <= p.
fn small_inverses<R: ModRing>(ring: &R, len: usize) -> Vec<R::Elem> {
    let mut invs = vec![ring.zero(); len.max(1)];
    for (k, slot) in invs.iter_mut().enumerate().skip(1) {
        *slot = ring.inv(&ring.from_u64(k as u64)).expect("k < p is a unit");
    }
    invs
}

/// Binomial transform rows_n = sum_k C(n,k) weights_k for n < weights.len().
pub fn binomial_transform<R: ModRing>(ring: &R, weights: &[R::Elem], exec: Exec) -> Vec<R::Elem> {
    let invs = small_inverses(ring, weights.len());
    exec.map(0..weights.len(), |n| {
        let mut c = ring.one();
        let mut acc = weights[0].clone();
        for k in 1..=n {
            c = ring.mul(&ring.mul(&c, &ring.from_u64((n + 1 - k) as u64)), &invs[k]);
            acc = ring.add(&acc, &ring.mul(&c, &weights[k]));
        }
        acc
    })
}

/// S_n(x, y) mod p^e for n < p.
pub fn s_rows_mod<R: ModRing>(ring: &R, x: &Rational, y: &Rational, exec: Exec) -> Result<Vec<R::Elem>> {
    let p = ring.modulus().p() as usize;
    let weights = weight_table(ring, x, y, p)?;
    Ok(binomial_transform(ring, &weights, exec))
}

/// Residues of t_n(x) mod p^e for n = 0..p-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub x: PadicRational,
    /// The second argument of S_n(x, y): -2 for t_n, -1 for s_n.
    pub y: Rational,
    pub modulus: Modulus,
    pub values: Vec<Residue>,
}

pub fn table_mod(x: &PadicRational, e: u32, y: &Rational, exec: Exec) -> Result<SequenceTable> {
    let modulus = Modulus::new(x.p(), e)?;
    let values = with_ring!(modulus, |ring| {
        s_rows_mod(ring, x.x(), y, exec)?.iter().map(|v| ring.to_residue(v)).collect()
    });
    Ok(SequenceTable { x: x.clone(), y: y.clone(), modulus, values })
}

pub fn t_table_mod(e: u32, x: &PadicRational, exec: Exec) -> Result<SequenceTable> {
    table_mod(x, e, &int(-2), exec)
}

pub fn s_table_mod(e: u32, x: &PadicRational, exec: Exec) -> Result<SequenceTable> {
    table_mod(x, e, &int(-1), exec)
}

/// Pfaff reflection: sum_k C(n,k)C(n+k,k)(-z)^k = (-1)^n sum_k C(n,k)C(n+k,k)(z-1)^k.
pub fn pfaff_check(n: u64, z: &Rational) -> bool {
    let side = |arg: &Rational| {
        (0..=n).fold(Rational::zero(), |acc, k| {
            acc + r_int(&(binom_int(n, k as i64) * binom_int(n + k, k as i64))) * r_pow(arg, k)
        })
    };
    side(&-z) == int(sign(n)) * side(&(z - int(1)))
}

/// t_n(x) = t_n(-1-x).
pub fn t_symmetry_check(n: u64, x: &Rational) -> bool {
    t_seq(n, x) == t_seq(n, &(int(-1) - x))
}
