//! Executable checks of the classical facts about `s_k(G)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::count::count_report;
use crate::group::PGroupType;
use crate::primes::is_odd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub subject: String,
    pub status: CheckStatus,
}

impl CheckRecord {
    pub fn pass(name: &str, subject: impl fmt::Display) -> Self {
        Self::new(name, subject, CheckStatus::Pass)
    }

    pub fn fail(name: &str, subject: impl fmt::Display, witness: impl Into<String>) -> Self {
        Self::new(
            name,
            subject,
            CheckStatus::Fail {
                witness: witness.into(),
            },
        )
    }

    pub fn skipped(name: &str, subject: impl fmt::Display, reason: impl Into<String>) -> Self {
        Self::new(
            name,
            subject,
            CheckStatus::Skipped {
                reason: reason.into(),
            },
        )
    }

    fn new(name: &str, subject: impl fmt::Display, status: CheckStatus) -> Self {
        CheckRecord {
            name: name.to_string(),
            subject: subject.to_string(),
            status,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.status, CheckStatus::Fail { .. })
    }
}

/// Ordered list of check outcomes. Failures are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        !self.checks.iter().any(CheckRecord::is_failure)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.is_failure())
    }

    pub fn status_of(&self, name: &str) -> Option<&CheckStatus> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.status)
    }
}

pub const CONGRUENCE: &str = "congruence";
pub const CONGRUENCE2: &str = "congruence2";
pub const DUALITY: &str = "duality";
pub const UNIMODAL: &str = "unimodal";
pub const FRATTINI: &str = "frattini";

/// Runs the five layer checks on one group type:
///
/// - `congruence`: `s_k ≡ 1 (mod p)` for `1 <= k <= n-1`
/// - `congruence2`: `s_k ≡ 1 + p (mod p^2)`, odd `p` and non-cyclic only
/// - `duality`: `s_k = s_{n-k}`, on the polynomials
/// - `unimodal`: `s_k - s_{k-1}` has non-negative coefficients for `k <= n/2`
/// - `frattini`: `s_{n-1} = (p^rank - 1)/(p - 1)`
pub fn verify_theorems(t: &PGroupType) -> VerificationReport {
    let report = count_report(t);
    let p = t.p_int();
    let n = t.n() as usize;
    let inner = 1..n.max(1);
    let mut out = VerificationReport::new();

    let bad = inner.clone().find(|&k| !(&report.s[k] % &p).is_one());
    out.push(match bad {
        None => CheckRecord::pass(CONGRUENCE, t),
        Some(k) => CheckRecord::fail(CONGRUENCE, t, format!("k={k}: s_k={}", report.s[k])),
    });

    out.push(if !is_odd(t.p()) {
        CheckRecord::skipped(CONGRUENCE2, t, "p = 2")
    } else if t.is_cyclic() {
        CheckRecord::skipped(CONGRUENCE2, t, "cyclic")
    } else {
        let p2 = &p * &p;
        let want: BigInt = (&p + 1u32).mod_floor(&p2);
        match inner.clone().find(|&k| report.s[k].mod_floor(&p2) != want) {
            None => CheckRecord::pass(CONGRUENCE2, t),
            Some(k) => CheckRecord::fail(CONGRUENCE2, t, format!("k={k}: s_k={}", report.s[k])),
        }
    });

    out.push(
        match (0..=n).find(|&k| report.s_poly[k] != report.s_poly[n - k]) {
            None => CheckRecord::pass(DUALITY, t),
            Some(k) => CheckRecord::fail(
                DUALITY,
                t,
                format!("k={k}: {} != {}", report.s_poly[k], report.s_poly[n - k]),
            ),
        },
    );

    out.push(
        match (1..=n / 2)
            .find(|&k| !(&report.s_poly[k] - &report.s_poly[k - 1]).has_nonnegative_coeffs())
        {
            None => CheckRecord::pass(UNIMODAL, t),
            Some(k) => CheckRecord::fail(
                UNIMODAL,
                t,
                format!(
                    "k={k}: s_k - s_(k-1) = {}",
                    &report.s_poly[k] - &report.s_poly[k - 1]
                ),
            ),
        },
    );

    out.push(if n == 0 {
        CheckRecord::skipped(FRATTINI, t, "trivial group")
    } else {
        let want: BigInt = (p.pow(t.rank() as u32) - 1) / (&p - 1);
        if report.s[n - 1] == want {
            CheckRecord::pass(FRATTINI, t)
        } else {
            CheckRecord::fail(
                FRATTINI,
                t,
                format!("s_(n-1)={} but (p^rank-1)/(p-1)={want}", report.s[n - 1]),
            )
        }
    });

    out
}
