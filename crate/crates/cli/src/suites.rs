use betalattice::beta::{
    beta_image_size, hereditary_beta_le_one, hereditary_classification, image_size_classification,
};
use betalattice::classify::{
    list, rank2_monotone_scan, second_min_check, third_min_check, ClassificationReport,
};
use betalattice::oracle::oracle_check;
use betalattice::verify::{CONGRUENCE, CONGRUENCE2, DUALITY, FRATTINI, UNIMODAL};
use betalattice::{
    format_decimal, partitions_of, verify_theorems, CheckRecord, CheckStatus, PGroupType,
    Partition, Result,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Congruence,
    Congruence2,
    Duality,
    Unimodal,
    Rank2mono,
    Secondmin,
    Thirdmin,
    Hereditary,
    Image,
    Frattini,
    Oracle,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Congruence => "congruence",
            Suite::Congruence2 => "congruence2",
            Suite::Duality => "duality",
            Suite::Unimodal => "unimodal",
            Suite::Rank2mono => "rank2mono",
            Suite::Secondmin => "secondmin",
            Suite::Thirdmin => "thirdmin",
            Suite::Hereditary => "hereditary",
            Suite::Image => "image",
            Suite::Frattini => "frattini",
            Suite::Oracle => "oracle",
        }
    }
}

pub struct Bounds {
    pub n_max: Option<u32>,
    pub cap: u64,
}

pub const DEFAULT_N_MAX: u32 = 8;

/// A check outcome plus optional extra context for passing records.
pub struct Row {
    pub record: CheckRecord,
    pub detail: Option<String>,
}

impl Row {
    fn plain(record: CheckRecord) -> Self {
        Row {
            record,
            detail: None,
        }
    }
}

pub fn run(
    suite: Suite,
    p: u64,
    bounds: &Bounds,
    progress: &mut dyn FnMut(&str),
) -> Result<Vec<Row>> {
    let base = PGroupType::new(p, Partition::empty())?;
    let n_max = bounds.n_max.unwrap_or(DEFAULT_N_MAX);
    let mut rows = Vec::new();
    match suite {
        Suite::Congruence
        | Suite::Congruence2
        | Suite::Duality
        | Suite::Unimodal
        | Suite::Frattini => {
            let name = match suite {
                Suite::Congruence => CONGRUENCE,
                Suite::Congruence2 => CONGRUENCE2,
                Suite::Duality => DUALITY,
                Suite::Unimodal => UNIMODAL,
                _ => FRATTINI,
            };
            for n in 1..=n_max {
                progress(&format!("p={p} n={n}"));
                for d in partitions_of(n, None) {
                    let report = verify_theorems(&base.with_partition(d));
                    let record = report
                        .checks
                        .into_iter()
                        .find(|c| c.name == name)
                        .expect("every check is always reported");
                    rows.push(Row::plain(record));
                }
            }
        }
        Suite::Rank2mono => {
            for n in 4..=n_max {
                progress(&format!("p={p} n={n}"));
                let report = rank2_monotone_scan(p, n)?;
                rows.extend(report.checks.into_iter().map(Row::plain));
            }
        }
        Suite::Secondmin => {
            for n in 3..=n_max {
                progress(&format!("p={p} n={n}"));
                rows.push(classification_row("secondmin", &second_min_check(p, n)?));
            }
        }
        Suite::Thirdmin => {
            if p == 2 {
                rows.push(Row::plain(CheckRecord::skipped(
                    "thirdmin",
                    format!("p={p}"),
                    "p = 2",
                )));
            } else {
                for n in 4..=n_max {
                    progress(&format!("p={p} n={n}"));
                    rows.push(classification_row("thirdmin", &third_min_check(p, n)?));
                }
            }
        }
        Suite::Hereditary => {
            for n in 1..=n_max {
                progress(&format!("p={p} n={n}"));
                for d in partitions_of(n, None) {
                    let t = base.with_partition(d);
                    let got = hereditary_beta_le_one(&t);
                    let want = hereditary_classification(&t);
                    let record = if got == want {
                        CheckRecord::pass("hereditary", &t)
                    } else {
                        CheckRecord::fail(
                            "hereditary",
                            &t,
                            format!("enumeration says {got}, classification says {want}"),
                        )
                    };
                    rows.push(Row {
                        record,
                        detail: Some(format!("all subgroups have beta <= 1: {got}")),
                    });
                }
            }
        }
        Suite::Image => {
            for n in 1..=n_max {
                progress(&format!("p={p} n={n}"));
                for d in partitions_of(n, None) {
                    let t = base.with_partition(d);
                    let size = beta_image_size(&t);
                    let ok = match image_size_classification(&t) {
                        Some(k) => size == k,
                        None => size > 2,
                    };
                    let record = if ok {
                        CheckRecord::pass("image", &t)
                    } else {
                        CheckRecord::fail(
                            "image",
                            &t,
                            format!("|Im beta| = {size} contradicts the classification"),
                        )
                    };
                    rows.push(Row {
                        record,
                        detail: Some(format!("|Im beta| = {size}")),
                    });
                }
            }
        }
        Suite::Oracle => {
            let mut n = 0u32;
            while u128::from(p).pow(n) <= u128::from(bounds.cap)
                && bounds.n_max.is_none_or(|m| n <= m)
            {
                progress(&format!("p={p} n={n}"));
                for d in partitions_of(n, None) {
                    let report = oracle_check(&base.with_partition(d), bounds.cap)?;
                    rows.extend(report.checks.into_iter().map(Row::plain));
                }
                n += 1;
            }
        }
    }
    Ok(rows)
}

fn classification_row(name: &str, r: &ClassificationReport) -> Row {
    let subject = format!("p={} n={}", r.p, r.n);
    let mut detail = format!(
        "minimum beta {} ({}) at {}",
        r.minimum,
        format_decimal(&r.minimum, 12),
        list(&r.extremal)
    );
    if let Some(th) = &r.threshold {
        detail.push_str(&format!(
            "; at or below {th}: {}",
            list(&r.at_or_below_threshold)
        ));
    }
    let failures: Vec<String> = r
        .checks
        .checks
        .iter()
        .filter_map(|c| match &c.status {
            CheckStatus::Fail { witness } => Some(format!("{}: {witness}", c.name)),
            _ => None,
        })
        .collect();
    let record = if failures.is_empty() {
        CheckRecord::pass(name, subject)
    } else {
        CheckRecord::fail(name, subject, failures.join("; "))
    };
    Row {
        record,
        detail: Some(detail),
    }
}
