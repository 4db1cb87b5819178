use std::fmt::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harness::run::{LogRecord, RunSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Jsonl,
    Tap,
    Human,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(ReportFormat::Jsonl),
            "tap" => Ok(ReportFormat::Tap),
            "human" => Ok(ReportFormat::Human),
            other => Err(Error::Parse(format!("unknown report format {other:?}"))),
        }
    }
}

fn label(r: &LogRecord) -> String {
    match &r.x {
        Some(x) => format!("{} p={} x={}", r.statement, r.p, x),
        None => format!("{} p={}", r.statement, r.p),
    }
}

fn opt(s: &Option<String>) -> &str {
    s.as_deref().unwrap_or("-")
}

pub fn emit_report(summary: &RunSummary, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Jsonl => {
            for r in &summary.records {
                out.push_str(&serde_json::to_string(r).expect("log records serialize"));
                out.push('\n');
            }
        }
        ReportFormat::Tap => {
            out.push_str("TAP version 13\n");
            let _ = writeln!(out, "1..{}", summary.records.len());
            for (i, r) in summary.records.iter().enumerate() {
                let n = i + 1;
                match (r.pass, &r.skipped_reason) {
                    (_, Some(reason)) => {
                        let _ = writeln!(out, "ok {n} - {} # SKIP {reason}", label(r));
                    }
                    (Some(true), None) => {
                        let _ = writeln!(out, "ok {n} - {}", label(r));
                    }
                    _ => {
                        let _ = writeln!(out, "not ok {n} - {}", label(r));
                        let _ = writeln!(out, "  # lhs={} rhs={} modulus={}", opt(&r.lhs), opt(&r.rhs), opt(&r.modulus));
                        if let Some(d) = &r.detail {
                            let _ = writeln!(out, "  # {d}");
                        }
                    }
                }
            }
        }
        ReportFormat::Human => {
            let _ = writeln!(out, "{:<14} {:>6} {:>10} {:>14} {:>14}  result", "statement", "p", "x", "lhs", "rhs");
            for r in &summary.records {
                let result = match (r.pass, &r.skipped_reason) {
                    (_, Some(reason)) => format!("skipped ({reason})"),
                    (Some(true), None) => "pass".to_string(),
                    _ => format!("FAIL{}", r.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()),
                };
                let _ = writeln!(
                    out,
                    "{:<14} {:>6} {:>10} {:>14} {:>14}  {result}",
                    r.statement,
                    r.p,
                    opt(&r.x),
                    opt(&r.lhs),
                    opt(&r.rhs)
                );
            }
            if summary.total > 0 {
                let _ = writeln!(
                    out,
                    "total={} passed={} failed={} skipped={}",
                    summary.total, summary.passed, summary.failed, summary.skipped
                );
            }
        }
    }
    out
}
