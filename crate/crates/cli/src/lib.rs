//! Command-line front end for `ratrecover`.
//!
//! Results go to stdout, diagnostics to stderr. Exit status is 0 for a
//! certified (or otherwise conclusive) result, 2 for an uncertified one and 1
//! for usage, parse or domain errors.

pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ratrecover::bench::{bench, BenchConfig};
use ratrecover::poly::{recover_polynomial, PolynomialApprox};
use ratrecover::validation::{
    demonstrate_gap_with_limit, farey_oracle_with_limit, make_counterexample, DEFAULT_ORACLE_LIMIT,
};
use ratrecover::{
    cf_expand, parse_decimal, recover_checked, render, threshold_uniqueness, BigInt, BigRational,
    BoundedTarget, Error, RecoveryWarning,
};

use crate::report::*;

/// Overrides the exhaustive-search limit of the oracle.
pub const ORACLE_LIMIT_ENV: &str = "RATRECOVER_MAX_ORACLE_N";

#[derive(Debug, Parser)]
#[command(
    name = "ratrecover",
    version,
    about = "Recover exact rationals from approximations"
)]
pub struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recover the rational with denominator <= bound behind an approximation.
    Recover {
        /// Decimal literal or p/q fraction.
        #[arg(long, allow_hyphen_values = true)]
        approx: String,
        #[arg(long)]
        bound: u64,
        /// Known strict bound on |approx - hidden value|.
        #[arg(long)]
        claimed_error: Option<String>,
    },
    /// Canonical continued-fraction expansion.
    Cf {
        #[arg(long, allow_hyphen_values = true)]
        approx: String,
    },
    /// Full convergent trail of the expansion.
    Convergents {
        #[arg(long, allow_hyphen_values = true)]
        approx: String,
    },
    /// Exhaustive nearest-fraction search within the uniqueness radius.
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        approx: String,
        #[arg(long)]
        bound: u64,
    },
    /// The (n-1)/n instance that defeats the continued-fraction method.
    Counterexample {
        #[arg(long)]
        n: u64,
    },
    /// Run recovery and the oracle on the counterexample side by side.
    Gap {
        #[arg(long)]
        n: u64,
    },
    /// Recover exact coefficients of an approximate polynomial file.
    PolyRecover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        bound: u64,
    },
    /// Seeded success rates per error band, as CSV.
    Bench {
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Make the first trial of the top band the (n-1)/n counterexample.
        #[arg(long)]
        inject: bool,
    },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub status: u8,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid {ORACLE_LIMIT_ENV}: {0:?}")]
    Env(String),
}

fn conclusive(ok: bool) -> u8 {
    if ok {
        0
    } else {
        2
    }
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

fn oracle_limit() -> Result<u64, CliError> {
    match std::env::var(ORACLE_LIMIT_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Env(v)),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

fn join_values(values: impl Iterator<Item = String>) -> String {
    values.collect::<Vec<_>>().join(", ")
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut out = Output {
        stdout: String::new(),
        stderr: String::new(),
        status: 0,
    };
    match &cli.command {
        Command::Recover {
            approx,
            bound,
            claimed_error,
        } => {
            let value = parse_decimal(approx)?;
            let bound = BoundedTarget::new(*bound)?;
            let claimed = match claimed_error {
                Some(c) => parse_decimal(c)?,
                None => BigRational::from_integer(0.into()),
            };
            let checked = recover_checked(&value, bound, &claimed)?;
            let warning = checked.warning.map(|w| match w {
                RecoveryWarning::OutsideRecoveryRadius => {
                    "claimed error exceeds the recovery radius; the result may be wrong".to_owned()
                }
            });
            let r = &checked.result;
            out.status = conclusive(r.certified);
            if let Some(w) = &warning {
                out.stderr.push_str(&format!("warning: {w}\n"));
            }
            if cli.json {
                out.stdout = json(&RecoverReport::new(approx, bound, r, warning));
            } else {
                let t = Thresholds::for_bound(bound);
                let trail = join_values(r.trail.iter().map(|s| render(&s.value())));
                let mut text = format!(
                    "input:      {approx}\nbound:      {bound}\nradii:      legacy {}, improved {}, uniqueness {}\ntrail:      {trail}\n",
                    t.legacy, t.improved, t.uniqueness
                );
                if let Some(next) = &r.exceeded {
                    text.push_str(&format!(
                        "next:       {} (denominator above bound)\n",
                        render(&next.value())
                    ));
                }
                text.push_str(&format!(
                    "result:     {}\nresidual:   {}\ncertified:  {}\n",
                    render(&r.recovered),
                    render(&r.residual),
                    if r.certified { "yes" } else { "no" }
                ));
                out.stdout = text;
            }
        }
        Command::Cf { approx } => {
            let value = parse_decimal(approx)?;
            let cf = cf_expand(&value);
            out.stdout = if cli.json {
                json(&CfReport {
                    input: approx.clone(),
                    value: render(&value),
                    quotients: cf.quotients().iter().map(ToString::to_string).collect(),
                })
            } else {
                format!("{cf}\n")
            };
        }
        Command::Convergents { approx } => {
            let value = parse_decimal(approx)?;
            let steps = cf_expand(&value).convergents();
            out.stdout = if cli.json {
                json(&ConvergentsReport {
                    input: approx.clone(),
                    value: render(&value),
                    trail: steps.iter().map(TrailStep::from).collect(),
                })
            } else {
                let mut text = String::from("index quotient h/k\n");
                for s in &steps {
                    text.push_str(&format!("{} {} {}/{}\n", s.index, s.quotient, s.h, s.k));
                }
                text
            };
        }
        Command::Oracle { approx, bound } => {
            let value = parse_decimal(approx)?;
            let bound = BoundedTarget::new(*bound)?;
            let found = farey_oracle_with_limit(&value, bound, oracle_limit()?)?;
            out.status = conclusive(found.is_some());
            out.stdout = if cli.json {
                json(&OracleReport {
                    input: approx.clone(),
                    bound: bound.get(),
                    radius: render(&threshold_uniqueness::<BigInt>(bound)),
                    result: found.as_ref().map(Fraction::from),
                })
            } else {
                match &found {
                    Some(v) => format!("{}\n", render(v)),
                    None => "none\n".to_owned(),
                }
            };
        }
        Command::Counterexample { n } => {
            let inst = make_counterexample(*n)?;
            let report = CounterexampleReport {
                n: *n,
                target: render(&inst.target),
                approx: render(&inst.approx),
                error: render(&inst.error),
                quotients: cf_expand(&inst.approx)
                    .quotients()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                thresholds: Thresholds::for_bound(inst.bound()),
            };
            out.stdout = if cli.json {
                json(&report)
            } else {
                format!(
                    "target:     {}\napprox:     {}\nexpansion:  [{}]\nerror:      {}\nimproved:   {}\nuniqueness: {}\n",
                    report.target,
                    report.approx,
                    report.quotients.join(", "),
                    report.error,
                    report.thresholds.improved,
                    report.thresholds.uniqueness
                )
            };
        }
        Command::Gap { n } => {
            let gap = demonstrate_gap_with_limit(*n, oracle_limit()?)?;
            out.status = conclusive(gap.holds());
            let report = GapReport {
                n: *n,
                target: render(&gap.instance.target),
                approx: render(&gap.instance.approx),
                error: render(&gap.instance.error),
                within_uniqueness: gap.within_uniqueness,
                outside_recovery_radius: gap.outside_recovery_radius,
                cf_result: Fraction::from(&gap.cf_result.recovered),
                oracle_result: gap.oracle_result.as_ref().map(Fraction::from),
                holds: gap.holds(),
            };
            out.stdout = if cli.json {
                json(&report)
            } else {
                format!(
                    "target:     {}\napprox:     {}\nerror:      {}\ncf:         {}\noracle:     {}\ngap holds:  {}\n",
                    report.target,
                    report.approx,
                    report.error,
                    render(&gap.cf_result.recovered),
                    gap.oracle_result.as_ref().map(render).unwrap_or_else(|| "none".into()),
                    if report.holds { "yes" } else { "no" }
                )
            };
        }
        Command::PolyRecover { input, bound } => {
            let bound = BoundedTarget::new(*bound)?;
            let text = std::fs::read_to_string(input).map_err(|source| CliError::Io {
                path: input.clone(),
                source,
            })?;
            let approx = PolynomialApprox::parse(&text)?;
            let got = recover_polynomial(&approx, bound)?;
            out.status = conclusive(got.certified);
            out.stdout = if cli.json {
                json(&PolyReport {
                    bound: bound.get(),
                    variables: got.polynomial.variables().to_vec(),
                    terms: got
                        .polynomial
                        .terms()
                        .into_iter()
                        .map(|(e, c)| PolyTerm {
                            coefficient: render(c),
                            exponents: e.clone(),
                        })
                        .collect(),
                    certified: got.certified,
                    uncertified_terms: got.uncertified_terms.clone(),
                })
            } else {
                got.polynomial.to_file_format()
            };
            if !got.certified {
                out.stderr.push_str(&format!(
                    "warning: {} coefficient(s) not certified\n",
                    got.uncertified_terms.len()
                ));
            }
        }
        Command::Bench {
            bound,
            trials,
            seed,
            inject,
        } => {
            let mut config = BenchConfig::new(BoundedTarget::new(*bound)?, *trials, *seed);
            config.inject_counterexample = *inject;
            config.oracle_limit = oracle_limit()?;
            let report = bench(&config)?;
            out.stdout = if cli.json {
                json(&BenchReport {
                    bound: *bound,
                    trials: *trials,
                    seed: *seed,
                    rows: report
                        .bands
                        .iter()
                        .map(|b| BenchRow {
                            band: b.band.name().to_owned(),
                            cf_successes: b.cf_successes,
                            oracle_successes: b.oracle_successes,
                            trials: b.trials,
                        })
                        .collect(),
                })
            } else {
                report.to_csv()
            };
        }
    }
    Ok(out)
}
