mod output;
mod suites;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use betalattice::beta::parse_rational;
use betalattice::density::{approximate, ApproxLimits, ApproxResult};
use betalattice::{
    alpha, beta, beta_of_type, count_report, partitions_of, AbelianGroupSpec, CheckStatus, Error,
    PGroupType, Partition,
};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use output::{columns, rational, rational_text, Format, Report};
use suites::{Bounds, Suite};

#[derive(Parser)]
#[command(
    name = "betalattice",
    version,
    about = "Exact subgroup-lattice statistics of finite abelian groups"
)]
struct Cli {
    /// Output format; csv applies to `table` only.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Report elapsed_ms as 0 so repeated runs give identical output.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Suppress progress lines on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Layer counts s_k, |L(G)| and beta for one p-group, e.g. `2:[1,3]`.
    Count { spec: String },
    /// beta and alpha of a finite abelian group, e.g. `2:[1];3:[1]`.
    Beta {
        /// Empty or omitted means the trivial group.
        spec: Option<String>,
    },
    /// Run a verification suite over every type within the bounds.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        p: Vec<u64>,
        /// Largest exponent n (default 8; the oracle suite is bounded by --cap alone).
        #[arg(long)]
        n_max: Option<u32>,
        /// Largest group order the oracle enumerates.
        #[arg(long, default_value_t = 512)]
        cap: u64,
    },
    /// Find a group whose beta is within eps of the target.
    Approx {
        /// Decimal or a/b.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long, default_value_t = 10_000)]
        max_primes: usize,
        #[arg(long, default_value_t = 10_000_000)]
        max_prime: u64,
    },
    /// beta for every abelian group of order p^n.
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// A finished report and the exit code it implies.
struct Outcome {
    report: Report,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let quiet = cli.quiet;
    let result = match cli.command {
        Command::Count { spec } => cmd_count(&spec),
        Command::Beta { spec } => cmd_beta(spec.as_deref().unwrap_or("")),
        Command::Verify {
            suite,
            p,
            n_max,
            cap,
        } => cmd_verify(suite, &p, Bounds { n_max, cap }, quiet),
        Command::Approx {
            target,
            eps,
            max_primes,
            max_prime,
        } => cmd_approx(
            &target,
            &eps,
            ApproxLimits {
                max_primes,
                max_prime,
            },
        ),
        Command::Table { p, n } => cmd_table(p, n),
    };
    let elapsed = if cli.no_timing {
        0
    } else {
        start.elapsed().as_millis() as u64
    };

    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => return fail(2, &msg),
        Err(Failure::Lib(e)) => {
            let code = match e {
                Error::Parse(_) | Error::Domain(_) => 2,
                Error::Resource(_) | Error::Exhausted { .. } => 3,
                Error::Internal(_) => 1,
            };
            return fail(code, &e.to_string());
        }
    };
    let text = match cli.format {
        Format::Human => outcome.report.human.clone(),
        Format::Json => outcome.report.to_json(elapsed),
        Format::Csv => match outcome.report.to_csv() {
            Some(t) => t,
            None => {
                return fail(
                    2,
                    &format!(
                        "csv output is not available for `{}`",
                        outcome.report.command
                    ),
                )
            }
        },
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code)
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn parse_spec(text: &str) -> Result<AbelianGroupSpec, Failure> {
    Ok(text.parse::<AbelianGroupSpec>()?)
}

fn cmd_count(text: &str) -> Result<Outcome, Failure> {
    let spec = parse_spec(text)?;
    let [t] = spec.components() else {
        return Err(Failure::Usage(format!(
            "count needs exactly one p-component, got {}",
            spec.components().len()
        )));
    };
    let r = count_report(t);
    let b = beta_of_type(t);
    let mut report = Report::new("count");
    report.input("spec", t.to_string());

    let layers: Vec<Value> =
        r.s.iter()
            .zip(&r.s_poly)
            .enumerate()
            .map(|(k, (s, f))| {
                json!({
                    "k": k,
                    "s_k": s.to_string(),
                    "polynomial": f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
    report.results.push(json!({
        "group": t.to_string(),
        "order": t.order().to_string(),
        "layers": layers,
        "total": r.total.to_string(),
        "beta": rational(&b),
    }));

    report.line(format!("group {t}, order {}", t.order()));
    let mut table = vec![vec![
        "k".to_string(),
        "s_k".to_string(),
        "as polynomial in q = p".to_string(),
    ]];
    for (k, (s, f)) in r.s.iter().zip(&r.s_poly).enumerate() {
        table.push(vec![k.to_string(), s.to_string(), f.to_string()]);
    }
    report.human.push_str(&columns(&table));
    report.line(format!("|L| = {}", r.total));
    report.line(format!("beta = {}", rational_text(&b)));
    Ok(Outcome { report, code: 0 })
}

fn cmd_beta(text: &str) -> Result<Outcome, Failure> {
    let spec = parse_spec(text)?;
    let (b, a) = (beta(&spec), alpha(&spec));
    let mut report = Report::new("beta");
    report.input("spec", spec.to_string());
    report.results.push(json!({
        "group": spec.to_string(),
        "order": spec.order().to_string(),
        "beta": rational(&b),
        "alpha": rational(&a),
    }));
    if spec.components().is_empty() {
        report.line("trivial group, order 1");
    } else {
        report.line(format!("group {spec}, order {}", spec.order()));
    }
    report.line(format!("beta = {}", rational_text(&b)));
    report.line(format!("alpha = {}", rational_text(&a)));
    Ok(Outcome { report, code: 0 })
}

fn cmd_verify(
    suite: Suite,
    primes: &[u64],
    bounds: Bounds,
    quiet: bool,
) -> Result<Outcome, Failure> {
    let mut report = Report::new("verify");
    report.input("suite", suite.name());
    report.input("p", primes.to_vec());
    report.input("n_max", bounds.n_max.map_or(Value::Null, Value::from));
    report.input("cap", bounds.cap);

    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for &p in primes {
        let mut progress = |msg: &str| {
            if !quiet {
                eprintln!("[{}] {msg}", suite.name());
            }
        };
        for row in suites::run(suite, p, &bounds, &mut progress)? {
            let rec = &row.record;
            let (status, note) = match &rec.status {
                CheckStatus::Pass => ("pass", row.detail.clone()),
                CheckStatus::Fail { witness } => ("fail", Some(witness.clone())),
                CheckStatus::Skipped { reason } => ("skipped", Some(reason.clone())),
            };
            *counts.entry(status).or_default() += 1;
            if status == "fail" {
                failures.push(format!(
                    "FAIL {} {}: {}",
                    rec.name,
                    rec.subject,
                    note.as_deref().unwrap_or("")
                ));
            } else if matches!(suite, Suite::Secondmin | Suite::Thirdmin) {
                report.line(format!(
                    "{} {}: {}",
                    rec.subject,
                    status,
                    note.as_deref().unwrap_or("")
                ));
            }
            report.results.push(json!({
                "check": rec.name,
                "subject": rec.subject,
                "status": status,
                "detail": note,
            }));
        }
    }
    report.pass = failures.is_empty();
    for f in &failures {
        report.line(f);
    }
    let n = |k: &str| counts.get(k).copied().unwrap_or(0);
    report.line(format!(
        "{}: {} passed, {} failed, {} skipped; {}",
        suite.name(),
        n("pass"),
        n("fail"),
        n("skipped"),
        if report.pass { "PASS" } else { "FAIL" }
    ));
    let code = if report.pass { 0 } else { 1 };
    Ok(Outcome { report, code })
}

fn approx_json(r: &ApproxResult) -> Value {
    json!({
        "group": r.group.to_string(),
        "achieved": rational(&r.achieved),
        "error": rational(&r.error),
        "primes_used": r.primes_used,
        "largest_prime": r.largest_prime,
    })
}

fn cmd_approx(target: &str, eps: &str, limits: ApproxLimits) -> Result<Outcome, Failure> {
    let x = parse_rational(target)?;
    let e = parse_rational(eps)?;
    let mut report = Report::new("approx");
    report.input("target", rational(&x));
    report.input("eps", rational(&e));
    report.input("max_primes", limits.max_primes);
    report.input("max_prime", limits.max_prime);

    let (r, code) = match approximate(&x, &e, &limits) {
        Ok(r) => (r, 0),
        Err(Error::Exhausted { reason, best }) => {
            report.pass = false;
            report.line(format!("limits exhausted: {reason}; best so far:"));
            (*best, 3)
        }
        Err(other) => return Err(other.into()),
    };
    let mut row = approx_json(&r);
    row["within_eps"] = Value::Bool(r.error <= e);
    report.results.push(row);
    let witness = if r.group.components().is_empty() {
        "trivial group".to_string()
    } else {
        r.group.to_string()
    };
    report.line(format!("witness {witness}"));
    report.line(format!("beta = {}", rational_text(&r.achieved)));
    report.line(format!("error = {}", rational_text(&r.error)));
    report.line(format!(
        "primes used {}, largest {}",
        r.primes_used, r.largest_prime
    ));
    Ok(Outcome { report, code })
}

fn cmd_table(p: u64, n: u32) -> Result<Outcome, Failure> {
    if n == 0 {
        return Err(Failure::Usage("table needs n >= 1".into()));
    }
    let base = PGroupType::new(p, Partition::empty())?;
    let rows: Vec<(PGroupType, _)> = partitions_of(n, None)
        .into_iter()
        .map(|d| {
            let t = base.with_partition(d);
            let r = count_report(&t);
            (t, r.total)
        })
        .collect();
    let betas: Vec<_> = rows.iter().map(|(t, _)| beta_of_type(t)).collect();
    let mut seen: BTreeMap<_, usize> = BTreeMap::new();
    for b in &betas {
        *seen.entry(b.clone()).or_default() += 1;
    }

    let mut report = Report::new("table");
    report.input("p", p);
    report.input("n", n);
    let mut human = vec![vec![
        "type".into(),
        "|L|".into(),
        "beta".into(),
        "decimal".into(),
        "duplicate".into(),
    ]];
    let mut records = Vec::new();
    for ((t, total), b) in rows.iter().zip(&betas) {
        let dup = seen[b] > 1;
        let ty = t.partition().to_string();
        let exact = format!("{}/{}", b.numer(), b.denom());
        let dec = betalattice::format_decimal(b, 12);
        report.results.push(json!({
            "type": ty,
            "lattice_size": total.to_string(),
            "beta": rational(b),
            "duplicate_beta": dup,
        }));
        human.push(vec![
            ty.clone(),
            total.to_string(),
            exact.clone(),
            dec.clone(),
            if dup { "yes" } else { "" }.into(),
        ]);
        records.push(vec![ty, total.to_string(), exact, dec, dup.to_string()]);
    }
    report.line(format!("abelian groups of order {p}^{n}"));
    report.human.push_str(&columns(&human));
    report.csv = Some((
        vec![
            "type",
            "lattice_size",
            "beta",
            "beta_decimal",
            "duplicate_beta",
        ],
        records,
    ));
    Ok(Outcome { report, code: 0 })
}
