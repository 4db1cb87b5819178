//! Verification of the supercongruences for sums of t_n(x)^2 and their
//! supporting block estimates.
//!
//! Every check returns a [`CongruenceReport`] holding both sides as residues
//! mod p^e; a statement holds for (p, x) exactly when the residues coincide.
//! Rationals enter only through [`mod_reduce`], so a non-p-integral argument
//! is an error rather than a failed comparison.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{binom_gen, binom_int, harmonic, int, legendre, rat, sign, Rational};
use crate::padic::{padic_split, PadicRational};
use crate::par::Exec;
use crate::residue::{reduce_in, with_ring, ModRing, Modulus, Residue};
use crate::sequences::{exact_rows, s_table_mod, t_table_mod, weight_table, SequenceTable};

/// One of the four (a, b, x, c) instances of sum (an+b) t_n(x)^2 = c*p mod p^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightedCase {
    pub a: i64,
    pub b: i64,
    pub x: (i64, i64),
    pub expected_p_multiple: i64,
    /// Smallest prime the statement covers.
    pub min_prime: u64,
}

pub const HALF_CASE: WeightedCase = WeightedCase { a: 8, b: 5, x: (-1, 2), expected_p_multiple: 2, min_prime: 3 };
pub const QUARTER_CASE: WeightedCase = WeightedCase { a: 32, b: 21, x: (-1, 4), expected_p_multiple: 8, min_prime: 3 };
pub const THIRD_CASE: WeightedCase = WeightedCase { a: 18, b: 7, x: (-1, 3), expected_p_multiple: 0, min_prime: 5 };
pub const SIXTH_CASE: WeightedCase = WeightedCase { a: 72, b: 49, x: (-1, 6), expected_p_multiple: 18, min_prime: 5 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statement {
    /// sum t_n(x)^2 mod p^2.
    Theorem1,
    /// sum (n+1) t_n(x)^2 mod p^2.
    Theorem2,
    /// One of the fixed weighted cases; its x is part of the statement.
    Conjecture(WeightedCase),
    /// User-supplied weight an+b and expected value c*p, over the configured x values.
    Weighted { a: i64, b: i64, expected_p_multiple: i64 },
    /// p-adic expansion of C(x,k)C(x+k,k) mod p^2 for every k < p.
    Expansion,
    SigmaCore,
    SigmaStrip,
    TauCore,
    TauStrip,
    SigmaBlocks,
    TauBlocks,
    /// sum J2(n)^2 = (-1/p) mod p^3.
    Kw,
    /// sum s_n(x)^2 mod p^2.
    SunS,
    ResidueTable,
}

impl Statement {
    pub fn conjecture_cases() -> [Statement; 4] {
        [HALF_CASE, QUARTER_CASE, THIRD_CASE, SIXTH_CASE].map(Statement::Conjecture)
    }

    pub fn lemma_family() -> [Statement; 7] {
        use Statement::*;
        [Expansion, SigmaCore, SigmaStrip, TauCore, TauStrip, SigmaBlocks, TauBlocks]
    }

    /// Whether the statement iterates over configured x values.
    pub fn takes_x(&self) -> bool {
        !matches!(self, Statement::Conjecture(_) | Statement::Kw | Statement::ResidueTable)
    }

    /// Expands a statement id or group name.
    pub fn parse_group(id: &str) -> Result<Vec<Statement>> {
        use Statement::*;
        Ok(match id {
            "conjecture" => Statement::conjecture_cases().to_vec(),
            "lemmas" => Statement::lemma_family().to_vec(),
            "all" => {
                let mut all = vec![Theorem1, Theorem2];
                all.extend(Statement::conjecture_cases());
                all.extend(Statement::lemma_family());
                all.extend([Kw, SunS, ResidueTable]);
                all
            }
            other => vec![other.parse()?],
        })
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Statement::*;
        match self {
            Theorem1 => f.write_str("theorem1"),
            Theorem2 => f.write_str("theorem2"),
            Conjecture(c) if *c == HALF_CASE => f.write_str("conj-half"),
            Conjecture(c) if *c == QUARTER_CASE => f.write_str("conj-quarter"),
            Conjecture(c) if *c == THIRD_CASE => f.write_str("conj-third"),
            Conjecture(c) if *c == SIXTH_CASE => f.write_str("conj-sixth"),
            Conjecture(c) => write!(f, "conj({}n+{})", c.a, c.b),
            Weighted { a, b, expected_p_multiple } => write!(f, "weighted({a}n+{b}={expected_p_multiple}p)"),
            Expansion => f.write_str("expansion"),
            SigmaCore => f.write_str("sigma-core"),
            SigmaStrip => f.write_str("sigma-strip"),
            TauCore => f.write_str("tau-core"),
            TauStrip => f.write_str("tau-strip"),
            SigmaBlocks => f.write_str("sigma-blocks"),
            TauBlocks => f.write_str("tau-blocks"),
            Kw => f.write_str("kw"),
            SunS => f.write_str("sun-s"),
            ResidueTable => f.write_str("residue-table"),
        }
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Statement::*;
        Ok(match s {
            "theorem1" => Theorem1,
            "theorem2" => Theorem2,
            "conj-half" => Conjecture(HALF_CASE),
            "conj-quarter" => Conjecture(QUARTER_CASE),
            "conj-third" => Conjecture(THIRD_CASE),
            "conj-sixth" => Conjecture(SIXTH_CASE),
            "expansion" => Expansion,
            "sigma-core" => SigmaCore,
            "sigma-strip" => SigmaStrip,
            "tau-core" => TauCore,
            "tau-strip" => TauStrip,
            "sigma-blocks" => SigmaBlocks,
            "tau-blocks" => TauBlocks,
            "kw" => Kw,
            "sun-s" => SunS,
            "residue-table" => ResidueTable,
            other => return Err(Error::Parse(format!("unknown statement {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub statement: Statement,
    pub p: u64,
    pub x: Option<Rational>,
    pub lhs: Residue,
    pub rhs: Residue,
    pub pass: bool,
    pub wall_time: Duration,
    /// Extra failure context, e.g. the first mismatching row or block.
    pub detail: Option<String>,
}

impl CongruenceReport {
    fn new(statement: Statement, p: u64, x: Option<&Rational>, lhs: Residue, rhs: Residue, started: Instant) -> Self {
        let pass = lhs == rhs;
        CongruenceReport { statement, p, x: x.cloned(), lhs, rhs, pass, wall_time: started.elapsed(), detail: None }
    }

    /// Marks the report failed with `detail` unless `detail` is `None`.
    pub fn fail_with(mut self, detail: Option<String>) -> Self {
        if let Some(d) = detail {
            self.pass = false;
            self.detail = Some(match self.detail.take() {
                Some(prev) => format!("{prev}; {d}"),
                None => d,
            });
        }
        self
    }

    pub fn modulus(&self) -> Modulus {
        self.lhs.modulus()
    }
}

fn p_rat(p: u64) -> Rational {
    int(p as i64)
}

fn square_sum(table: &SequenceTable, weight: impl Fn(u64) -> i64) -> Residue {
    table.values.iter().enumerate().fold(Residue::zero(table.modulus), |acc, (n, v)| {
        let w = Residue::from_i64(weight(n as u64), table.modulus);
        &acc + &(&w * &(v * v))
    })
}

/// sum t_n^2 and sum (n+1) t_n^2 over a table.
pub fn square_sums(table: &SequenceTable) -> (Residue, Residue) {
    (square_sum(table, |_| 1), square_sum(table, |n| n as i64 + 1))
}

/// Right-hand side of the mod p^2 evaluation of sum t_n(x)^2.
pub fn theorem1_rhs(x: &PadicRational) -> Result<Residue> {
    let p = x.p();
    if x.is_half_point() {
        return reduce_in(&int(legendre(-1, p)?.value()), Modulus::new(p, 2)?);
    }
    let m = int(x.m() as i64);
    let value = int(sign(x.m())) * (p_rat(p) + int(2) * (x.x() - &m)) / (int(2) * x.x() + int(1));
    reduce_in(&value, Modulus::new(p, 2)?)
}

/// Right-hand side of the mod p^2 evaluation of sum (n+1) t_n(x)^2.
pub fn theorem2_rhs(x: &PadicRational) -> Result<Residue> {
    let p = x.p();
    let quarter_p = p_rat(p) / int(4);
    if x.is_half_point() {
        let value = quarter_p + rat(3, 8) * int(legendre(-1, p)?.value());
        return reduce_in(&value, Modulus::new(p, 2)?);
    }
    let xv = x.x();
    let m = int(x.m() as i64);
    let quad = int(2) * xv * xv + int(2) * xv - int(1);
    let value = quarter_p
        - int(sign(x.m())) * quad * (p_rat(p) + int(2) * (xv - &m)) / (int(8) * xv + int(4));
    reduce_in(&value, Modulus::new(p, 2)?)
}

pub fn theorem1_check(p: u64, x: &Rational, exec: Exec) -> Result<CongruenceReport> {
    let started = Instant::now();
    let split = padic_split(x, p)?;
    let table = t_table_mod(2, &split, exec)?;
    let (lhs, _) = square_sums(&table);
    Ok(CongruenceReport::new(Statement::Theorem1, p, Some(x), lhs, theorem1_rhs(&split)?, started))
}

pub fn theorem2_check(p: u64, x: &Rational, exec: Exec) -> Result<CongruenceReport> {
    let started = Instant::now();
    let split = padic_split(x, p)?;
    let table = t_table_mod(2, &split, exec)?;
    let (_, lhs) = square_sums(&table);
    Ok(CongruenceReport::new(Statement::Theorem2, p, Some(x), lhs, theorem2_rhs(&split)?, started))
}

/// sum (an+b) t_n(x)^2 mod p^2 against `expected`.
///
/// The left side is summed directly and also rebuilt as
/// a * sum (n+1) t_n^2 + (b-a) * sum t_n^2; a disagreement fails the report.
pub fn weighted_sum_check(
    p: u64,
    a: i64,
    b: i64,
    x: &Rational,
    expected: &Residue,
    exec: Exec,
) -> Result<CongruenceReport> {
    let started = Instant::now();
    let split = padic_split(x, p)?;
    let table = t_table_mod(2, &split, exec)?;
    let lhs = square_sum(&table, |n| a * n as i64 + b);
    let (plain, weighted) = square_sums(&table);
    let md = table.modulus;
    let cross = &(&Residue::from_i64(a, md) * &weighted) + &(&Residue::from_i64(b - a, md) * &plain);
    let statement = Statement::Weighted { a, b, expected_p_multiple: 0 };
    let report = CongruenceReport::new(statement, p, Some(x), lhs.clone(), expected.clone(), started);
    let mismatch = (cross != lhs).then(|| format!("direct sum {lhs} differs from recombined {cross}"));
    Ok(report.fail_with(mismatch))
}

/// Runs one of the fixed weighted cases at prime `p`.
pub fn conjecture_check(p: u64, case: WeightedCase, exec: Exec) -> Result<CongruenceReport> {
    if p < case.min_prime {
        return Err(Error::HypothesisViolated(format!("requires p >= {}", case.min_prime)));
    }
    let expected = Residue::from_i64(case.expected_p_multiple * p as i64, Modulus::new(p, 2)?);
    let x = rat(case.x.0, case.x.1);
    let mut report = weighted_sum_check(p, case.a, case.b, &x, &expected, exec)?;
    report.statement = Statement::Conjecture(case);
    Ok(report)
}

/// sum J2(n)^2 mod p^3 against the Legendre symbol (-1/p).
pub fn kw_check(p: u64, exec: Exec) -> Result<CongruenceReport> {
    let started = Instant::now();
    let split = padic_split(&rat(-1, 2), p)?;
    let table = s_table_mod(3, &split, exec)?;
    let (lhs, _) = square_sums(&table);
    let rhs = Residue::from_i64(legendre(-1, p)?.value(), table.modulus);
    Ok(CongruenceReport::new(Statement::Kw, p, None, lhs, rhs, started))
}

/// sum s_n(x)^2 mod p^2 for p > 3 and 2x+1 a p-unit.
pub fn sun_s_check(p: u64, x: &Rational, exec: Exec) -> Result<CongruenceReport> {
    let started = Instant::now();
    if p <= 3 {
        return Err(Error::HypothesisViolated("requires p > 3".into()));
    }
    let split = padic_split(x, p)?;
    if split.is_half_point() {
        return Err(Error::HypothesisViolated(format!("x = {x} is congruent to -1/2 mod {p}")));
    }
    let table = s_table_mod(2, &split, exec)?;
    let (lhs, _) = square_sums(&table);
    Ok(CongruenceReport::new(Statement::SunS, p, Some(x), lhs, theorem1_rhs(&split)?, started))
}

/// How much of a table the exact-rational oracle recomputes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleMode {
    Off,
    /// Every row for p <= 50, five seeded random rows above.
    #[default]
    Spot,
    Full,
}

impl FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(OracleMode::Off),
            "spot" => Ok(OracleMode::Spot),
            "full" => Ok(OracleMode::Full),
            other => Err(Error::Parse(format!("unknown oracle mode {other:?}"))),
        }
    }
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMode::Off => "off",
            OracleMode::Spot => "spot",
            OracleMode::Full => "full",
        })
    }
}

pub const SPOT_FULL_LIMIT: u64 = 50;
pub const SPOT_ROWS: usize = 5;

/// Rows the oracle recomputes for a table of length `p`.
pub fn oracle_rows(p: u64, mode: OracleMode, seed: u64) -> Vec<u64> {
    match mode {
        OracleMode::Off => Vec::new(),
        OracleMode::Full => (0..p).collect(),
        OracleMode::Spot if p <= SPOT_FULL_LIMIT => (0..p).collect(),
        OracleMode::Spot => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut rows: Vec<u64> = sample(&mut rng, p as usize, SPOT_ROWS).into_iter().map(|i| i as u64).collect();
            rows.sort_unstable();
            rows
        }
    }
}

/// Recomputes the selected rows of `table` in exact arithmetic. When every row
/// is covered the two square sums are recomputed exactly as well. Returns a
/// description of the first disagreement, or `None`.
pub fn oracle_verify(table: &SequenceTable, mode: OracleMode, seed: u64, exec: Exec) -> Result<Option<String>> {
    let p = table.x.p();
    let rows = oracle_rows(p, mode, seed);
    if rows.is_empty() {
        return Ok(None);
    }
    let exact = exact_rows(table.x.x(), &table.y, &rows, exec);
    for (&n, value) in rows.iter().zip(&exact) {
        let reduced = reduce_in(value, table.modulus)?;
        if reduced != table.values[n as usize] {
            return Ok(Some(format!("oracle row {n}: fast {} exact {}", table.values[n as usize], reduced)));
        }
    }
    if rows.len() as u64 == p {
        let (plain, weighted) = square_sums(table);
        let mut exact_plain = Rational::zero();
        let mut exact_weighted = Rational::zero();
        for (n, v) in exact.iter().enumerate() {
            let sq = v * v;
            exact_weighted += int(n as i64 + 1) * &sq;
            exact_plain += sq;
        }
        let exact_plain = reduce_in(&exact_plain, table.modulus)?;
        let exact_weighted = reduce_in(&exact_weighted, table.modulus)?;
        if exact_plain != plain || exact_weighted != weighted {
            return Ok(Some(format!(
                "oracle sums: fast ({plain}, {weighted}) exact ({exact_plain}, {exact_weighted})"
            )));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// p-adic expansion of C(x,k)C(x+k,k) and the block decomposition.

fn require_lower_half(x: &PadicRational) -> Result<()> {
    if 2 * x.m() + 1 > x.p() {
        return Err(Error::Regime { p: x.p(), m: x.m(), reason: "m > (p-1)/2; reflect x to -1-x first" });
    }
    Ok(())
}

fn require_strict_lower_half(x: &PadicRational) -> Result<()> {
    if 2 * x.m() + 1 >= x.p() {
        return Err(Error::Regime { p: x.p(), m: x.m(), reason: "requires m < (p-1)/2" });
    }
    Ok(())
}

/// The residue the expansion predicts for C(x,k)C(x+k,k) mod p^2.
pub fn expansion_prediction(x: &PadicRational, k: u64) -> Result<Residue> {
    require_lower_half(x)?;
    let (p, m) = (x.p(), x.m());
    let modulus = Modulus::new(p, 2)?;
    let pt = p_rat(p) * x.t();
    let value = if k <= m {
        let base = binom_int(m, k as i64) * binom_int(m + k, k as i64);
        Rational::from_integer(base) * (int(1) + &pt * harmonic(m + k) - &pt * harmonic(m - k))
    } else if k + m >= p {
        Rational::zero()
    } else {
        // m < k <= p-1-m, only reachable when m < (p-1)/2
        let num = Rational::from_integer(binom_int(m + k, k as i64));
        let den = Rational::from_integer(BigInt::from(k - m) * binom_int(k, m as i64));
        int(sign(m + k + 1)) * pt * num / den
    };
    reduce_in(&value, modulus)
}

/// C(x,k)C(x+k,k) mod p^2 against its predicted expansion.
pub fn expansion_check(x: &PadicRational, k: u64) -> Result<bool> {
    let prediction = expansion_prediction(x, k)?;
    let xv = x.x();
    let actual = binom_gen(xv, k) * binom_gen(&(xv + int(k as i64)), k);
    Ok(reduce_in(&actual, prediction.modulus())? == prediction)
}

/// Checks the expansion for every k < p. The report sides are the sums of
/// the actual and predicted residues; `pass` requires agreement at every k.
pub fn expansion_report(p: u64, x: &Rational, exec: Exec) -> Result<CongruenceReport> {
    let started = Instant::now();
    let split = padic_split(x, p)?;
    require_lower_half(&split)?;
    let modulus = Modulus::new(p, 2)?;
    let rows = exec.map(0..p as usize, |k| -> Result<(Residue, Residue)> {
        let xv = split.x();
        let actual = binom_gen(xv, k as u64) * binom_gen(&(xv + int(k as i64)), k as u64);
        Ok((reduce_in(&actual, modulus)?, expansion_prediction(&split, k as u64)?))
    });
    let mut lhs = Residue::zero(modulus);
    let mut rhs = Residue::zero(modulus);
    let mut first_bad = None;
    for (k, row) in rows.into_iter().enumerate() {
        let (a, b) = row?;
        if a != b && first_bad.is_none() {
            first_bad = Some(format!("k = {k}: actual {a} predicted {b}"));
        }
        lhs = &lhs + &a;
        rhs = &rhs + &b;
    }
    let report = CongruenceReport::new(Statement::Expansion, p, Some(x), lhs, rhs, started);
    Ok(report.fail_with(first_bad))
}

/// Which inner weight multiplies the block summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockWeight {
    /// p/(n+1) C(p-1, n): the summands of sum t_n(x)^2.
    Plain,
    /// p(p+1)/(n+2) C(p-1, n): the summands of sum (n+1) t_n(x)^2.
    Linear,
}

/// Summands of the (k, l) grid for one x, mod p^2:
/// A_k A_l 2^{k+l} sum_{n=0}^{k+l} c_n C(n,l) C(l,n-k),
/// with A_k = C(x,k)C(x+k,k) and c_n the inner weight.
#[derive(Debug, Clone)]
pub struct BlockGrid {
    pub x: PadicRational,
    pub weight: BlockWeight,
    modulus: Modulus,
    // row-major p x p
    cells: Vec<Residue>,
}

impl BlockGrid {
    pub fn new(x: &PadicRational, weight: BlockWeight, exec: Exec) -> Result<Self> {
        let p = x.p();
        let modulus = Modulus::new(p, 2)?;
        let cells = with_ring!(modulus, |ring| {
            grid_cells(ring, x, weight, exec)?.iter().map(|c| ring.to_residue(c)).collect()
        });
        Ok(BlockGrid { x: x.clone(), weight, modulus, cells })
    }

    pub fn cell(&self, k: u64, l: u64) -> &Residue {
        &self.cells[(k * self.x.p() + l) as usize]
    }

    /// Sum over k in `ks`, l in `ls` (inclusive bounds, empty when lo > hi).
    pub fn rect(&self, ks: (u64, u64), ls: (u64, u64)) -> Residue {
        let mut acc = Residue::zero(self.modulus);
        for k in ks.0..=ks.1.min(self.x.p() - 1) {
            for l in ls.0..=ls.1.min(self.x.p() - 1) {
                acc = &acc + self.cell(k, l);
            }
        }
        acc
    }

    /// Sum over the whole grid.
    pub fn total(&self) -> Residue {
        let p = self.x.p();
        self.rect((0, p - 1), (0, p - 1))
    }

    /// The nine blocks, indexed [row][col] by the k and l ranges
    /// [0, m], [m+1, p-1-m], [p-m, p-1].
    pub fn blocks(&self) -> [[Residue; 3]; 3] {
        let (p, m) = (self.x.p(), self.x.m());
        let ranges = [(0, m), (m + 1, p - 1 - m), (p - m, p - 1)];
        std::array::from_fn(|i| std::array::from_fn(|j| self.rect(ranges[i], ranges[j])))
    }
}

fn grid_cells<R: ModRing>(ring: &R, x: &PadicRational, weight: BlockWeight, exec: Exec) -> Result<Vec<R::Elem>> {
    let p = x.p();
    let pu = p as usize;
    let a = weight_table(ring, x.x(), &int(-1), pu)?;
    let mut pow2 = vec![ring.one(); 2 * pu];
    for i in 1..pow2.len() {
        pow2[i] = ring.add(&pow2[i - 1], &pow2[i - 1]);
    }
    // c_n for n < p; C(p-1, n) vanishes beyond
    let inner: Vec<R::Elem> = (0..p)
        .map(|n| {
            let scale = match weight {
                BlockWeight::Plain => rat(p as i64, n as i64 + 1),
                BlockWeight::Linear => rat((p * (p + 1)) as i64, n as i64 + 2),
            };
            let c = scale * Rational::from_integer(binom_int(p - 1, n as i64));
            ring.from_rational(&c)
        })
        .collect::<Result<_>>()?;
    let mut pascal = vec![vec![ring.zero(); pu]; pu];
    for i in 0..pu {
        pascal[i][0] = ring.one();
        for j in 1..=i {
            pascal[i][j] = ring.add(&pascal[i - 1][j - 1], &pascal[i - 1][j]);
        }
    }
    let binom = |n: usize, k: usize| if k <= n { pascal[n][k].clone() } else { ring.zero() };
    let rows = exec.map(0..pu, |k| {
        (0..pu)
            .map(|l| {
                let mut kernel = ring.zero();
                // C(n,l) C(l,n-k) is nonzero only for max(k,l) <= n <= k+l
                for (n, c) in inner.iter().enumerate().take((k + l).min(pu - 1) + 1).skip(k.max(l)) {
                    let term = ring.mul(&binom(n, l), &binom(l, n - k));
                    kernel = ring.add(&kernel, &ring.mul(&term, c));
                }
                let outer = ring.mul(&ring.mul(&a[k], &a[l]), &pow2[k + l]);
                ring.mul(&outer, &kernel)
            })
            .collect::<Vec<_>>()
    });
    Ok(rows.into_iter().flatten().collect())
}

fn lemma_rhs(x: &PadicRational, statement: Statement) -> Result<Rational> {
    let (p, m) = (p_rat(x.p()), x.m() as i64);
    let s = int(sign(x.m()));
    let quad = 2 * m * m + 2 * m - 1;
    Ok(match statement {
        Statement::SigmaCore => s * p / int(2 * m + 1),
        Statement::SigmaStrip => s * p * x.t() / int(2 * m + 1),
        Statement::TauCore => p.clone() / int(4) - s * int(quad) * p / int(8 * m + 4),
        Statement::TauStrip => s * p * x.t() * int(-quad) / int(8 * m + 4),
        other => unreachable!("{other} is not a block-sum statement"),
    })
}

/// The four partial-sum estimates: the [0,m]^2 block and the
/// [0,m] x [m+1, p-1-m] strip, for both inner weights. Requires m < (p-1)/2.
pub fn block_sum_check(p: u64, x: &Rational, statement: Statement, exec: Exec) -> Result<CongruenceReport> {
    let started = Instant::now();
    let split = padic_split(x, p)?;
    require_strict_lower_half(&split)?;
    let weight = match statement {
        Statement::SigmaCore | Statement::SigmaStrip => BlockWeight::Plain,
        Statement::TauCore | Statement::TauStrip => BlockWeight::Linear,
        other => return Err(Error::Parse(format!("{other} is not a block-sum statement"))),
    };
    let grid = BlockGrid::new(&split, weight, exec)?;
    let m = split.m();
    let lhs = match statement {
        Statement::SigmaCore | Statement::TauCore => grid.rect((0, m), (0, m)),
        _ => grid.rect((0, m), (m + 1, p - 1 - m)),
    };
    let rhs = reduce_in(&lemma_rhs(&split, statement)?, lhs.modulus())?;
    Ok(CongruenceReport::new(statement, p, Some(x), lhs, rhs, started))
}

/// Block sums of one grid and the verdict on the six blocks expected to vanish.
#[derive(Debug, Clone)]
pub struct BlockVerdict {
    pub blocks: [[Residue; 3]; 3],
    /// (row, col) of blocks that should vanish mod p^2 but do not.
    pub nonvanishing: Vec<(usize, usize)>,
    /// The two off-diagonal strips [0,m] x [m+1,p-1-m] and its transpose agree.
    pub strips_symmetric: bool,
}

impl BlockVerdict {
    pub fn passes(&self) -> bool {
        self.nonvanishing.is_empty() && self.strips_symmetric
    }
}

/// Every block except [0,m]^2 and the two strips vanishes mod p^2, and the
/// strips agree. Requires m < (p-1)/2.
pub fn block_vanishing_check(x: &PadicRational, weighted: bool, exec: Exec) -> Result<BlockVerdict> {
    require_strict_lower_half(x)?;
    let weight = if weighted { BlockWeight::Linear } else { BlockWeight::Plain };
    let grid = BlockGrid::new(x, weight, exec)?;
    let blocks = grid.blocks();
    const VANISHING: [(usize, usize); 6] = [(0, 2), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)];
    let nonvanishing = VANISHING.into_iter().filter(|&(i, j)| !blocks[i][j].is_zero()).collect();
    let strips_symmetric = blocks[0][1] == blocks[1][0];
    Ok(BlockVerdict { blocks, nonvanishing, strips_symmetric })
}

/// Report form of [`block_vanishing_check`]: lhs is the sum of the six
/// vanishing blocks, rhs is zero.
pub fn block_vanishing_report(p: u64, x: &Rational, weighted: bool, exec: Exec) -> Result<CongruenceReport> {
    let started = Instant::now();
    let split = padic_split(x, p)?;
    let verdict = block_vanishing_check(&split, weighted, exec)?;
    let modulus = Modulus::new(p, 2)?;
    let lhs = verdict
        .nonvanishing
        .iter()
        .fold(Residue::zero(modulus), |acc, &(i, j)| &acc + &verdict.blocks[i][j]);
    let statement = if weighted { Statement::TauBlocks } else { Statement::SigmaBlocks };
    let mut report = CongruenceReport::new(statement, p, Some(x), lhs, Residue::zero(modulus), started);
    if !verdict.nonvanishing.is_empty() {
        report = report.fail_with(Some(format!("nonvanishing blocks {:?}", verdict.nonvanishing)));
    }
    if !verdict.strips_symmetric {
        report = report.fail_with(Some(format!(
            "strips differ: {} vs {}",
            verdict.blocks[0][1], verdict.blocks[1][0]
        )));
    }
    Ok(report)
}
