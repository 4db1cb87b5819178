//! Batch runner for the exact identity checks.
//!
//! Identities with a free variable are polynomial (or rational-function)
//! identities, so each is evaluated at more distinct points than its degree.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{int, rat, Rational};
use crate::identities::{
    alternating_double_sum, alternating_inner_closed, alternating_inner_sum, beta_double_sum,
    beta_double_sum_closed, binom_conv_sum, inner_pfd_check, pfaff_derivative_check, pfd_check, pfd_closed,
    pfd_sum, shifted_beta_double_sum, shifted_beta_double_sum_closed, weighted_binom_conv_sum,
};
use crate::par::Exec;
use crate::primes::odd_primes_in;
use crate::sequences::{pfaff_check, t_symmetry_check};

#[derive(Debug, Clone)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `count` distinct seeded rationals a/b, |a| <= 60, 1 <= b <= 25, none an
/// integer in [-n, 0].
pub fn sample_points(count: usize, n: u64, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = rat(rng.random_range(-60..=60), rng.random_range(1..=25));
        let pole = q.is_integer() && q <= int(0) && q >= int(-(n as i64));
        if !pole && seen.insert(q.clone()) {
            out.push(q);
        }
    }
    out
}

fn family<C: Sync>(
    name: &'static str,
    cases: Vec<C>,
    exec: Exec,
    check: impl Fn(&C) -> Option<String> + Sync + Send,
) -> IdentityOutcome {
    let started = Instant::now();
    let failures: Vec<String> = exec.map_slice(&cases, check).into_iter().flatten().collect();
    IdentityOutcome { name, cases: cases.len(), failures, elapsed: started.elapsed() }
}

fn verdict(ok: bool, what: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(what)
}

pub fn closed_form_sums(nmax: u64, exec: Exec) -> Vec<IdentityOutcome> {
    let ns: Vec<u64> = (0..=nmax).collect();
    vec![
        family("beta-double-sum", ns.clone(), exec, |&n| {
            let got = beta_double_sum(n);
            verdict(got == beta_double_sum_closed(n), || format!("n = {n}: got {got}"))
        }),
        family("shifted-beta-double-sum", ns.clone(), exec, |&n| {
            let got = shifted_beta_double_sum(n);
            verdict(got == shifted_beta_double_sum_closed(n), || format!("n = {n}: got {got}"))
        }),
        family("alternating-double-sum", ns.into_iter().filter(|&n| n <= 25).collect(), exec, |&n| {
            let got = alternating_double_sum(n);
            verdict(got == beta_double_sum_closed(n), || format!("n = {n}: got {got}"))
        }),
    ]
}

pub fn support_identities(exec: Exec) -> Vec<IdentityOutcome> {
    let mut out = Vec::new();

    let mut pfd_cases = Vec::new();
    for n in 0..=20u64 {
        for x in sample_points(20.max(n as usize + 2), n, 100 + n) {
            pfd_cases.push((n, x));
        }
    }
    out.push(family("partial-fractions", pfd_cases, exec, |(n, x)| match pfd_check(*n, x) {
        Ok(ok) => verdict(ok, || format!("n = {n}, x = {x}")),
        Err(e) => Some(format!("n = {n}, x = {x}: {e}")),
    }));

    let mut special = Vec::new();
    for n in 1..=20u64 {
        special.extend((0..=n).map(|k| (n, k)));
    }
    out.push(family("partial-fractions-special", special, exec, |&(n, k)| {
        let x = int(k as i64 + 1);
        let got = pfd_sum(n, &x).ok()?;
        // vanishes for k < n; at k = n the closed form is (-1)^n/((2n+1)C(2n,n))
        let want = if k < n { int(0) } else { pfd_closed(n, &x).ok()? };
        verdict(got == want, || format!("n = {n}, x = {x}: got {got}"))
    }));

    let mut pfaff_cases = Vec::new();
    for n in 0..=30u64 {
        pfaff_cases.extend(sample_points(n as usize + 2, 0, 200 + n).into_iter().map(|z| (n, z)));
    }
    out.push(family("pfaff", pfaff_cases, exec, |(n, z)| verdict(pfaff_check(*n, z), || format!("n = {n}, z = {z}"))));

    let mut deriv_cases = Vec::new();
    for n in 1..=25u64 {
        deriv_cases.extend(sample_points(n as usize + 1, 0, 300 + n).into_iter().map(|z| (n, z)));
    }
    out.push(family("pfaff-derivative", deriv_cases, exec, |(n, z)| {
        verdict(pfaff_derivative_check(*n, z), || format!("n = {n}, z = {z}"))
    }));

    let mut sym_cases = Vec::new();
    for n in 0..=30u64 {
        sym_cases.extend(sample_points(20, 0, 400 + n).into_iter().map(|x| (n, x)));
    }
    out.push(family("t-symmetry", sym_cases, exec, |(n, x)| verdict(t_symmetry_check(*n, x), || format!("n = {n}, x = {x}"))));

    let grid: Vec<(u64, u64)> = (0..=15).flat_map(|k| (0..=15).map(move |l| (k, l))).collect();
    for (name, shift) in [("inner-sum-reciprocal-n+1", 1), ("inner-sum-reciprocal-n+2", 2)] {
        out.push(family(name, grid.clone(), exec, move |&(k, l)| {
            let got = alternating_inner_sum(k, l, shift);
            verdict(got == alternating_inner_closed(k, l, shift), || format!("k = {k}, l = {l}: got {got}"))
        }));
    }

    let mut inner_pfd = Vec::new();
    for k in 0..=8u64 {
        for l in 0..=8u64 {
            inner_pfd.extend(sample_points(k as usize + l as usize + 2, k + l, 500 + 16 * k + l).into_iter().map(|x| (k, l, x)));
        }
    }
    out.push(family("inner-partial-fractions", inner_pfd, exec, |(k, l, x)| match inner_pfd_check(*k, *l, x) {
        Ok(ok) => verdict(ok, || format!("k = {k}, l = {l}, x = {x}")),
        Err(e) => Some(format!("k = {k}, l = {l}, x = {x}: {e}")),
    }));

    // both sides are polynomials in N of degree <= k+l+2
    let mut conv = Vec::new();
    for k in 0..=8u64 {
        for l in 0..=8u64 {
            conv.extend((1..=12.max(k + l + 3)).map(|n| (n, k, l)));
        }
    }
    for p in odd_primes_in(3, 31) {
        for k in 0..p {
            for l in 0..p {
                conv.push((p, k, l));
            }
        }
    }
    out.push(family("binomial-convolution", conv.clone(), exec, |&(n, k, l)| {
        let (lhs, rhs) = binom_conv_sum(n, k, l);
        verdict(lhs == rhs, || format!("N = {n}, k = {k}, l = {l}: {lhs} vs {rhs}"))
    }));
    out.push(family("weighted-binomial-convolution", conv, exec, |&(n, k, l)| {
        let (lhs, rhs) = weighted_binom_conv_sum(n, k, l);
        verdict(lhs == rhs, || format!("N = {n}, k = {k}, l = {l}: {lhs} vs {rhs}"))
    }));

    out
}

/// The closed-form double sums up to `nmax` followed by the support identities.
pub fn identity_suite(nmax: u64, exec: Exec) -> Vec<IdentityOutcome> {
    let mut all = closed_form_sums(nmax, exec);
    all.extend(support_identities(exec));
    all
}
