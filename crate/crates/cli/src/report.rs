//! JSON documents emitted with `--json`. Big integers are strings so no
//! precision is lost in transit.

use serde::{Deserialize, Serialize};

use ratrecover::{
    render, threshold_improved, threshold_legacy, threshold_uniqueness, BigInt, BigRational,
    BoundedTarget, ConvergentStep, RecoveryResult, Termination,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for Fraction {
    fn from(value: &BigRational) -> Self {
        Fraction {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub legacy: String,
    pub improved: String,
    pub uniqueness: String,
}

impl Thresholds {
    pub fn for_bound(bound: BoundedTarget) -> Self {
        Thresholds {
            legacy: render(&threshold_legacy::<BigInt>(bound)),
            improved: render(&threshold_improved::<BigInt>(bound)),
            uniqueness: render(&threshold_uniqueness::<BigInt>(bound)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailStep {
    pub index: usize,
    pub quotient: String,
    pub h: String,
    pub k: String,
}

impl From<&ConvergentStep> for TrailStep {
    fn from(step: &ConvergentStep) -> Self {
        TrailStep {
            index: step.index,
            quotient: step.quotient.to_string(),
            h: step.h.to_string(),
            k: step.k.to_string(),
        }
    }
}

pub fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::DenominatorExceeded => "denominator_exceeded",
        Termination::ExactTermination => "exact_termination",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoverReport {
    pub input: String,
    pub bound: u64,
    pub thresholds: Thresholds,
    pub result: Fraction,
    pub certified: bool,
    pub termination: String,
    pub trail: Vec<TrailStep>,
    pub exceeded: Option<TrailStep>,
    pub residual: String,
    pub warning: Option<String>,
}

impl RecoverReport {
    pub fn new(
        input: &str,
        bound: BoundedTarget,
        r: &RecoveryResult,
        warning: Option<String>,
    ) -> Self {
        RecoverReport {
            input: input.to_owned(),
            bound: bound.get(),
            thresholds: Thresholds::for_bound(bound),
            result: Fraction::from(&r.recovered),
            certified: r.certified,
            termination: termination_name(r.termination).to_owned(),
            trail: r.trail.iter().map(TrailStep::from).collect(),
            exceeded: r.exceeded.as_ref().map(TrailStep::from),
            residual: render(&r.residual),
            warning,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfReport {
    pub input: String,
    pub value: String,
    pub quotients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentsReport {
    pub input: String,
    pub value: String,
    pub trail: Vec<TrailStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub input: String,
    pub bound: u64,
    pub radius: String,
    pub result: Option<Fraction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub n: u64,
    pub target: String,
    pub approx: String,
    pub error: String,
    pub quotients: Vec<String>,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub n: u64,
    pub target: String,
    pub approx: String,
    pub error: String,
    pub within_uniqueness: bool,
    pub outside_recovery_radius: bool,
    pub cf_result: Fraction,
    pub oracle_result: Option<Fraction>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyReport {
    pub bound: u64,
    pub variables: Vec<String>,
    pub terms: Vec<PolyTerm>,
    pub certified: bool,
    pub uncertified_terms: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub band: String,
    pub cf_successes: u64,
    pub oracle_successes: u64,
    pub trials: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReport {
    pub bound: u64,
    pub trials: u64,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}
