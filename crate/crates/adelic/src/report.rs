//! Per-prime congruence reports shared by every verifier sweep.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Violation,
    Skip,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Violation => "violation",
            Verdict::Skip => "skip",
        }
    }
}

/// One row of a congruence sweep: the prime, both sides, and the outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CongruenceRow {
    pub q: String,
    pub p: u64,
    pub ord: Option<u64>,
    pub index: Option<u64>,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub verdict: Verdict,
    pub skip_reason: String,
}

impl CongruenceRow {
    pub fn ok(q: String, p: u64, ord: u64, index: u64, lhs: u64, rhs: u64) -> CongruenceRow {
        let verdict = if lhs == rhs { Verdict::Ok } else { Verdict::Violation };
        CongruenceRow { q, p, ord: Some(ord), index: Some(index), lhs: Some(lhs), rhs: Some(rhs), verdict, skip_reason: String::new() }
    }

    pub fn skip(q: String, p: u64, reason: &str) -> CongruenceRow {
        CongruenceRow {
            q,
            p,
            ord: None,
            index: None,
            lhs: None,
            rhs: None,
            verdict: Verdict::Skip,
            skip_reason: reason.to_string(),
        }
    }
}

/// A full sweep report, in ascending prime order.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub rows: Vec<CongruenceRow>,
}

impl CongruenceReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Violation).count()
    }

    pub fn oks(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Ok).count()
    }

    pub fn skips(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Skip).count()
    }

    pub const CSV_HEADER: &'static str = "q,p,ord,index,lhs,rhs,verdict,skip_reason";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.q,
                r.p,
                opt(r.ord),
                opt(r.index),
                opt(r.lhs),
                opt(r.rhs),
                r.verdict.as_str(),
                r.skip_reason
            ));
        }
        out
    }
}
