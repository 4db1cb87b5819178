//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::One;
use serde_json::Value;

use supercong::congruence::{
    conjecture_check, oracle_verify, theorem1_check, theorem2_check, CongruenceReport, OracleMode, HALF_CASE,
};
use supercong::exact::{int, rat, Rational};
use supercong::harness::config::{resolve_statements, SuiteConfig};
use supercong::harness::identity_suite::{closed_form_sums, support_identities, IdentityOutcome};
use supercong::harness::run::{run_suite, x_grid, RunSummary};
use supercong::padic::padic_split;
use supercong::par::Exec;
use supercong::primes::odd_primes_in;
use supercong::sequences::{s_table_mod, t_table_mod, SequenceTable};

struct Verdict {
    pass: bool,
    note: String,
}

fn verdict(pass: bool, note: impl Into<String>) -> Verdict {
    Verdict { pass, note: note.into() }
}

fn suite(statements: &[&str], pmin: u64, pmax: u64, grid: bool) -> SuiteConfig {
    let ids: Vec<String> = statements.iter().map(|s| s.to_string()).collect();
    let mut cfg = SuiteConfig::new(resolve_statements(&ids, None, None).unwrap());
    cfg.prime_min = pmin;
    cfg.prime_max = Some(pmax);
    if grid {
        cfg.x_integers = Some(20);
        cfg.x_random = 10;
    }
    cfg.oracle_mode = OracleMode::Off;
    cfg
}

fn run(cfg: &mut SuiteConfig, dir: &tempfile::TempDir, name: &str) -> RunSummary {
    cfg.output_path = dir.path().join(format!("{name}.jsonl"));
    run_suite(cfg).expect("suite runs")
}

fn summary_note(s: &RunSummary) -> String {
    let mut note = format!("{} checks, {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
    if let Some(f) = s.failures.first() {
        note.push_str(&format!("; first failure {} p={} lhs={} rhs={}", f.statement, f.p, f.lhs, f.rhs));
    }
    note
}

fn clean(s: &RunSummary) -> bool {
    s.failed == 0 && s.passed > 0 && s.total == s.passed + s.failed + s.skipped
}

fn skip_reasons_are(s: &RunSummary, allowed: &[&str]) -> bool {
    s.records
        .iter()
        .filter_map(|r| r.skipped_reason.as_deref())
        .all(|reason| allowed.iter().any(|a| reason.contains(a)))
}

fn families(outcomes: &[IdentityOutcome]) -> (bool, String) {
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.name).collect();
    let cases: usize = outcomes.iter().map(|o| o.cases).sum();
    (failed.is_empty(), format!("{} families, {cases} cases, failing {failed:?}", outcomes.len()))
}

fn within(elapsed: Duration, budget_secs: u64) -> bool {
    elapsed <= Duration::from_secs(budget_secs)
}

fn criterion_1() -> Verdict {
    let started = Instant::now();
    let (ok, note) = families(&closed_form_sums(40, Exec::Parallel)[..2]);
    // independent statement of the two closed forms
    let formulas = (0..=40i64).all(|n| {
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        let beta = &sign / int(2 * n + 1);
        let shifted = rat(1, 4) - &sign * int(2 * n * n + 2 * n - 1) / int(8 * n + 4);
        supercong::identities::beta_double_sum(n as u64) == beta
            && supercong::identities::shifted_beta_double_sum(n as u64) == shifted
    });
    let elapsed = started.elapsed();
    verdict(ok && formulas && within(elapsed, 30), format!("n <= 40: {note}, {elapsed:.1?}"))
}

fn criterion_2() -> Verdict {
    let started = Instant::now();
    let (ok, note) = families(&support_identities(Exec::Parallel));
    let elapsed = started.elapsed();
    verdict(ok && within(elapsed, 60), format!("{note}, {elapsed:.1?}"))
}

fn half_plus_p_probes(check: fn(u64, &Rational, Exec) -> supercong::Result<CongruenceReport>) -> (bool, usize) {
    let mut count = 0;
    let ok = odd_primes_in(3, 200).all(|p| {
        count += 1;
        let x = rat(-1, 2) + int(p as i64);
        check(p, &x, Exec::Parallel).map(|r| r.pass).unwrap_or(false)
    });
    (ok, count)
}

fn theorem_criterion(statement: &str, dir: &tempfile::TempDir) -> Verdict {
    let started = Instant::now();
    let mut cfg = suite(&[statement], 3, 200, true);
    let s = run(&mut cfg, dir, statement);
    let check = if statement == "theorem1" { theorem1_check } else { theorem2_check };
    let (probes, n_probes) = half_plus_p_probes(check);
    let elapsed = started.elapsed();
    let pass = clean(&s) && skip_reasons_are(&s, &["-integral"]) && probes && within(elapsed, 300);
    verdict(pass, format!("{}; x = -1/2+p probes {n_probes} ({probes}); {elapsed:.1?}", summary_note(&s)))
}

fn criterion_5(dir: &tempfile::TempDir) -> Verdict {
    let mut cfg = suite(&["conjecture"], 3, 200, false);
    let s = run(&mut cfg, dir, "conjecture");
    let example = conjecture_check(5, HALF_CASE, Exec::Sequential).map(|r| r.lhs.value().to_string() == "10");
    let pass = clean(&s) && skip_reasons_are(&s, &["requires p >= 5"]) && example == Ok(true);
    verdict(pass, format!("{}; p = 5 half case sum = 10 mod 25: {example:?}", summary_note(&s)))
}

fn criterion_6(dir: &tempfile::TempDir) -> Verdict {
    let started = Instant::now();
    let mut cfg = suite(&["lemmas"], 3, 50, true);
    let s = run(&mut cfg, dir, "lemmas");
    let elapsed = started.elapsed();
    let pass = clean(&s) && skip_reasons_are(&s, &["-integral", "m < (p-1)/2"]) && within(elapsed, 120);
    verdict(pass, format!("{}; {elapsed:.1?}", summary_note(&s)))
}

fn criterion_7(dir: &tempfile::TempDir) -> Verdict {
    let mut kw = suite(&["kw"], 3, 100, false);
    let k = run(&mut kw, dir, "kw");
    let mut sun = suite(&["sun-s"], 5, 100, true);
    let s = run(&mut sun, dir, "sun-s");
    let pass = clean(&k) && k.skipped == 0 && clean(&s) && skip_reasons_are(&s, &["-integral", "-1/2"]);
    verdict(pass, format!("kw: {}; sun-s: {}", summary_note(&k), summary_note(&s)))
}

fn oracle_check(
    name: String,
    table: supercong::Result<SequenceTable>,
    tables: &mut usize,
    mismatches: &mut Vec<String>,
) {
    *tables += 1;
    match table.and_then(|t| oracle_verify(&t, OracleMode::Spot, 1, Exec::Parallel)) {
        Ok(None) => {}
        Ok(Some(d)) => mismatches.push(format!("{name}: {d}")),
        Err(e) => mismatches.push(format!("{name}: {e}")),
    }
}

fn criterion_8() -> Verdict {
    let started = Instant::now();
    let cfg = suite(&["theorem1"], 3, 200, true);
    let mut tables = 0usize;
    let mut mismatches = Vec::new();
    for p in odd_primes_in(3, 200) {
        for x in x_grid(&cfg, p) {
            let Ok(split) = padic_split(&x, p) else { continue };
            oracle_check(format!("t p={p} x={x}"), t_table_mod(2, &split, Exec::Parallel), &mut tables, &mut mismatches);
            if p <= 100 {
                oracle_check(format!("s p={p} x={x}"), s_table_mod(2, &split, Exec::Parallel), &mut tables, &mut mismatches);
            }
        }
        if p <= 100 {
            let half = padic_split(&rat(-1, 2), p).expect("odd prime");
            oracle_check(format!("s mod p^3 p={p}"), s_table_mod(3, &half, Exec::Parallel), &mut tables, &mut mismatches);
        }
    }
    let elapsed = started.elapsed();
    verdict(
        mismatches.is_empty(),
        format!(
            "{tables} tables (full for p <= 50, 5 rows beyond), {} mismatches {:?}, {elapsed:.1?}",
            mismatches.len(),
            mismatches.first()
        ),
    )
}

fn criterion_9(dir: &tempfile::TempDir) -> Verdict {
    let bin = env!("CARGO_BIN_EXE_supercong");
    let mut notes = Vec::new();
    let mut pass = true;
    let probes: [(&str, &[&str]); 4] = [
        ("theorem1", &["--x=-1/3"]),
        ("conj-sixth", &[]),
        ("kw", &[]),
        ("sigma-core", &["--x=-1/4"]),
    ];
    for (statement, extra) in probes {
        let out = dir.path().join(format!("neg-{statement}.jsonl"));
        let o = Command::new(bin)
            .args(["verify", "--statement", statement, "--pmin", "29", "--pmax", "29", "--rhs-offset", "1"])
            .args(extra)
            .args(["--out", out.to_str().unwrap()])
            .output()
            .expect("binary runs");
        let text = std::fs::read_to_string(&out).unwrap_or_default();
        let records: Vec<Value> = text.lines().filter_map(|l| serde_json::from_str(l).ok()).collect();
        let pinpointed = records.len() == 1 && records[0]["statement"] == statement && records[0]["p"] == 29 && records[0]["pass"] == false;
        let offset_is_p = records.first().is_some_and(|r| {
            let modulus: num_bigint::BigInt = r["modulus"].as_str().unwrap_or("0").parse().unwrap_or_default();
            let lhs: num_bigint::BigInt = r["lhs"].as_str().unwrap_or("0").parse().unwrap_or_default();
            let rhs: num_bigint::BigInt = r["rhs"].as_str().unwrap_or("0").parse().unwrap_or_default();
            modulus > num_bigint::BigInt::one() && (rhs - lhs - 29 + &modulus * 4) % &modulus == num_bigint::BigInt::from(0)
        });
        let stderr = String::from_utf8_lossy(&o.stderr);
        let ok = o.status.code() == Some(1) && pinpointed && offset_is_p && stderr.contains(&format!("FAIL {statement} p=29"));
        pass &= ok;
        notes.push(format!("{statement}:{}", if ok { "exit 1" } else { "MISSED" }));
    }
    verdict(pass, notes.join(" "))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("closed-form double sums", Box::new(criterion_1)),
        ("support identities", Box::new(criterion_2)),
        ("theorem1 grid", Box::new(|| theorem_criterion("theorem1", &dir))),
        ("theorem2 grid", Box::new(|| theorem_criterion("theorem2", &dir))),
        ("weighted conjecture cases", Box::new(|| criterion_5(&dir))),
        ("lemma family", Box::new(|| criterion_6(&dir))),
        ("kw and sun-s", Box::new(|| criterion_7(&dir))),
        ("oracle equivalence", Box::new(criterion_8)),
        ("negative control", Box::new(|| criterion_9(&dir))),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        all &= v.pass;
        println!("criterion {} {name}: {} ({})", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.note);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
