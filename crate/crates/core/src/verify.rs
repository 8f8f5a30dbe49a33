//! Suite runner and machine-readable reports (`"schema": "qalg-report/1"`).

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::EvalError;
use crate::coefficient::Coefficient;
use crate::dsl::suite::{Identity, Mode, Suite};
use crate::dsl::{evaluate, render, Env};
use crate::engine::{take_thread_steps, CheckStatus, EngineError, Entry, RewriteEngine};
use crate::expr::Expression;
use crate::observables::{Catalog, Symbolic};
use crate::oracle::{self, OracleOutcome, OracleStatus};
use crate::scalar::Field;
use crate::symbol::Gen;

pub const REPORT_SCHEMA: &str = "qalg-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Failed,
    UndefinedCommutator,
    Diverged,
    SectorUnsupported,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceRemainder {
    pub indices: String,
    pub remainder: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub tags: Vec<String>,
    pub status: Status,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub remainders: Vec<InstanceRemainder>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub oracle: OracleOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub failed: usize,
    pub undefined_commutator: usize,
    pub diverged: usize,
    pub sector_unsupported: usize,
    pub error: usize,
    pub seed: u64,
    pub trials: usize,
    pub truncation_override: Option<u32>,
    pub convention_hash: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub summary: Summary,
    pub determined_constants: BTreeMap<String, String>,
    pub identities: Vec<IdentityReport>,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub trunc_override: Option<u32>,
    pub seed: u64,
    /// Oracle trials per identity; 0 skips the oracle.
    pub trials: usize,
    /// Record step counts and wall time (not reproducible across runs).
    pub trace: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { trunc_override: None, seed: 0, trials: oracle::DEFAULT_TRIALS, trace: false }
    }
}

/// Outcome of the symbolic check of one identity.
#[derive(Debug, Clone)]
pub struct SymbolicOutcome {
    pub status: Status,
    pub residual: Option<String>,
    pub constant: Option<String>,
    pub remainders: Vec<InstanceRemainder>,
    pub detail: Option<String>,
}

impl SymbolicOutcome {
    fn status(status: Status, detail: String) -> Self {
        SymbolicOutcome { status, residual: None, constant: None, remainders: Vec::new(), detail: Some(detail) }
    }
}

pub fn format_env(env: &Env) -> String {
    env.iter().map(|(k, v)| format!("{}={}", k, v)).collect::<Vec<_>>().join(",")
}

fn error_outcome(e: EvalError) -> SymbolicOutcome {
    let status = match &e {
        EvalError::Engine(EngineError::UndefinedCommutator(..)) => Status::UndefinedCommutator,
        EvalError::Engine(EngineError::Diverged { .. }) => Status::Diverged,
        EvalError::Engine(EngineError::SectorUnsupported(_)) => Status::SectorUnsupported,
        _ => Status::Error,
    };
    SymbolicOutcome::status(status, e.to_string())
}

fn check_status_outcome<T: Field>(st: CheckStatus<T>, env: &Env) -> Option<SymbolicOutcome> {
    match st {
        CheckStatus::Verified => None,
        CheckStatus::Failed { residual } => Some(SymbolicOutcome {
            status: Status::Failed,
            residual: Some(format!("[{}] {}", format_env(env), render(&residual))),
            constant: None,
            remainders: Vec::new(),
            detail: None,
        }),
        CheckStatus::UndefinedCommutator(a, b) => Some(SymbolicOutcome::status(
            Status::UndefinedCommutator,
            format!("commutator ({}, {}) is undefined", a, b),
        )),
        CheckStatus::Diverged { steps } => {
            Some(SymbolicOutcome::status(Status::Diverged, format!("diverged after {} steps", steps)))
        }
        CheckStatus::SectorUnsupported(e) => Some(SymbolicOutcome::status(Status::SectorUnsupported, e)),
        CheckStatus::Error(e) => Some(SymbolicOutcome::status(Status::Error, e)),
    }
}

/// `c` with `l = c·r`, read off one monomial of `r`.
fn ratio<T: Field>(l: &Expression<T>, r: &Expression<T>) -> Option<Coefficient<T>> {
    let (m, rc) = r.terms().next()?;
    let inv = rc.inverse()?;
    Some(l.coefficient(m).cloned().unwrap_or_else(Coefficient::zero) * inv)
}

/// Symbolic check of every index instance of `id`.
pub fn check_symbolic<T: Field>(
    engine: &RewriteEngine<T>,
    catalog: &Catalog<T>,
    id: &Identity,
    trunc_override: Option<u32>,
) -> SymbolicOutcome {
    let trunc = trunc_override.unwrap_or(id.spec.truncation);
    let alg = Symbolic::new(engine, catalog, trunc);
    let mut constant: Option<Coefficient<T>> = None;
    let mut remainders = Vec::new();
    for env in &id.instances {
        let sides = evaluate(&alg, &id.lhs, env).and_then(|l| Ok((l, evaluate(&alg, &id.rhs, env)?)));
        let (lhs, rhs) = match sides {
            Ok(s) => s,
            Err(e) => return error_outcome(e),
        };
        match id.spec.mode {
            Mode::Equal => {
                if let Some(out) = check_status_outcome(engine.check_equal(&lhs, &rhs), env) {
                    return out;
                }
            }
            Mode::Proportional => {
                let canon = engine.canonical(&lhs).and_then(|l| Ok((l, engine.canonical(&rhs)?)));
                let (l, r) = match canon {
                    Ok(x) => x,
                    Err(e) => return error_outcome(e.into()),
                };
                if constant.is_none() && !r.is_zero() {
                    match ratio(&l, &r) {
                        Some(c) => constant = Some(c),
                        None => {
                            return SymbolicOutcome::status(
                                Status::Failed,
                                "proportionality constant is not a single invertible term".into(),
                            )
                        }
                    }
                }
                let c = constant.clone().unwrap_or_else(Coefficient::zero);
                if let Some(out) = check_status_outcome(engine.check_equal(&lhs, &rhs.scale(&c)), env) {
                    return out;
                }
            }
            Mode::ScalarPart => {
                if rhs.terms().any(|(m, _)| *m != crate::expr::Monomial::one()) {
                    return SymbolicOutcome::status(Status::Error, "classical part is operator valued".into());
                }
                let diff = match engine.normalize(&(lhs - rhs)) {
                    Ok(d) => d,
                    Err(e) => return error_outcome(e.into()),
                };
                let declared = match &id.remainder {
                    Some(node) => match evaluate(&alg, node, env) {
                        Ok(r) => Some(r),
                        Err(e) => return error_outcome(e),
                    },
                    None => None,
                };
                let bad = match &declared {
                    Some(r) => match engine.check_equal(&diff, r) {
                        CheckStatus::Verified => None,
                        CheckStatus::Failed { residual } => Some(render(&residual)),
                        other => return check_status_outcome(other, env).expect("not verified"),
                    },
                    None => {
                        let scalar = diff.scalar_part();
                        (!scalar.is_zero()).then(|| scalar.render())
                    }
                };
                if let Some(res) = bad {
                    return SymbolicOutcome {
                        status: Status::Failed,
                        residual: Some(format!("[{}] {}", format_env(env), res)),
                        constant: None,
                        remainders: Vec::new(),
                        detail: None,
                    };
                }
                let rest = if declared.is_some() { diff } else { diff.operator_part() };
                if !rest.is_zero() {
                    remainders.push(InstanceRemainder { indices: format_env(env), remainder: render(&rest) });
                }
            }
        }
    }
    SymbolicOutcome {
        status: Status::Verified,
        residual: None,
        constant: constant.map(|c| c.render()),
        remainders,
        detail: None,
    }
}

/// SHA-256 of the conventions and the full commutator table.
pub fn convention_hash<T: Field>(engine: &RewriteEngine<T>) -> String {
    let mut sheet = String::new();
    sheet.push_str("commutator (A,B) = (AB-BA)/(i*hbar)\n");
    sheet.push_str("symmetrized A.B = (AB+BA)/2; A/B = A.(1/B)\n");
    sheet.push_str("metric diag(+,-,-,-); eps^0123 = +1\n");
    sheet.push_str("W^mu = -1/2 eps^{mu nu rho sigma} J_{nu rho} P_sigma; spin 1/2\n");
    sheet.push_str("rank rho < P < W < J < D < C < gamma < eps\n");
    let gens = Gen::all();
    for &a in &gens {
        for &b in &gens {
            let text = match engine.table().get(a, b) {
                Some(Entry::Defined(e)) => render(e),
                Some(Entry::Undefined) => "undefined".into(),
                None => "missing".into(),
            };
            sheet.push_str(&format!("({},{}) = {}\n", a, b, text));
        }
    }
    let digest = Sha256::digest(sheet.as_bytes());
    digest.iter().map(|b| format!("{:02x}", b)).collect()
}

fn check_one(
    engine: &RewriteEngine<crate::Scalar>,
    catalog: &Catalog<crate::Scalar>,
    id: &Identity,
    opts: &Options,
) -> IdentityReport {
    let start = Instant::now();
    take_thread_steps();
    let sym = check_symbolic(engine, catalog, id, opts.trunc_override);
    let steps = take_thread_steps();
    let mut status = sym.status;
    let mut detail = sym.detail;
    let oracle = if opts.trials == 0 {
        OracleOutcome::not_run()
    } else {
        oracle::check_identity(id, opts.trials, opts.seed, opts.trunc_override)
    };
    if status == Status::Verified && oracle.status == OracleStatus::Failed {
        status = Status::Failed;
        detail = Some("symbolic engine and oracle disagree".into());
    }
    IdentityReport {
        name: id.spec.name.clone(),
        tags: id.spec.tags.clone(),
        status,
        instances: id.instances.len(),
        residual: sym.residual,
        constant: sym.constant,
        remainders: sym.remainders,
        detail,
        oracle,
        steps: opts.trace.then_some(steps),
        wall_ms: opts.trace.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs every identity of `suite`: symbolic check, then the oracle.
pub fn run_suite(suite: &Suite, opts: &Options) -> VerificationReport {
    let engine = crate::engine();
    let catalog = crate::catalog();
    let mut identities: Vec<IdentityReport> =
        suite.identities.par_iter().map(|id| check_one(engine, catalog, id, opts)).collect();
    identities.sort_by(|a, b| a.name.cmp(&b.name));
    let mut summary = Summary {
        total: identities.len(),
        seed: opts.seed,
        trials: opts.trials,
        truncation_override: opts.trunc_override,
        convention_hash: convention_hash(engine),
        ..Summary::default()
    };
    let mut determined_constants = BTreeMap::new();
    for r in &identities {
        match r.status {
            Status::Verified => summary.verified += 1,
            Status::Failed => summary.failed += 1,
            Status::UndefinedCommutator => summary.undefined_commutator += 1,
            Status::Diverged => summary.diverged += 1,
            Status::SectorUnsupported => summary.sector_unsupported += 1,
            Status::Error => summary.error += 1,
        }
        if let Some(c) = &r.constant {
            determined_constants.insert(r.name.clone(), c.clone());
        }
    }
    VerificationReport { schema: REPORT_SCHEMA, summary, determined_constants, identities }
}

impl VerificationReport {
    /// 0 all verified, 1 any failure, 2 configuration or evaluation errors.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.error > 0 {
            2
        } else if s.failed + s.diverged + s.undefined_commutator + s.sector_unsupported > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.identities {
            out.push_str(&format!("{:<6} {:<22} oracle={}", r.name, format!("{:?}", r.status), r.oracle.status.as_str()));
            if let Some(c) = &r.constant {
                out.push_str(&format!(" constant={}", c));
            }
            if let Some(t) = r.wall_ms {
                out.push_str(&format!(" {}ms steps={}", t, r.steps.unwrap_or(0)));
            }
            out.push('\n');
            if let Some(res) = &r.residual {
                out.push_str(&format!("       residual {}\n", res));
            }
            if let Some(d) = &r.detail {
                out.push_str(&format!("       {}\n", d));
            }
            for rem in &r.remainders {
                out.push_str(&format!("       remainder [{}] {}\n", rem.indices, rem.remainder));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "total {}  verified {}  failed {}  undefined {}  diverged {}  unsupported {}  error {}  seed {}\n",
            s.total, s.verified, s.failed, s.undefined_commutator, s.diverged, s.sector_unsupported, s.error, s.seed
        ));
        out
    }
}
