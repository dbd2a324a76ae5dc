//! Seeded randomized audit of the orbit statements.
//!
//! Each claim draws from its own stream (`stream_id(claim_id)`) and each
//! trial reseeds, so the report depends only on `(seed, trials,
//! height_bound)` and is identical with or without the `parallel` feature.
//! A `FLAG` means sampled or constructed evidence disagrees with a literal
//! reading of the checked statement; every flag carries exact evidence that
//! can be replayed with the public predicates.

mod claims;
mod claims_complex;
pub mod sampler;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

pub use sampler::{sample_group, stream_id, Sampler, SamplerConfig};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FLAG")]
    Flag,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Flag => "FLAG",
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub status: Status,
    pub trials: usize,
    pub evidence: Vec<Value>,
    pub description: String,
}

/// How trials and claims are scheduled. Results do not depend on it.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Execution {
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
}

/// Per-claim context: sampler factory plus the execution mode.
pub struct Ctx<'a> {
    pub cfg: &'a SamplerConfig,
    pub stream: u64,
    exec: Execution,
}

/// At most this many sampled counterexamples are kept per claim.
const MAX_EVIDENCE: usize = 3;

impl Ctx<'_> {
    pub fn sampler(&self, trial: usize) -> Sampler {
        Sampler::new(self.cfg, self.stream, trial as u64)
    }

    /// Runs `f` once per trial and returns all outputs in trial order.
    pub fn map_trials<T: Send>(&self, n: usize, f: impl Fn(&mut Sampler, usize) -> T + Sync + Send) -> Vec<T> {
        let run = |t: usize| f(&mut self.sampler(t), t);
        match self.exec {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(run).collect(),
            _ => (0..n).map(run).collect(),
        }
    }

    /// Counterexamples from the lowest-numbered failing trials.
    pub fn search(&self, f: impl Fn(&mut Sampler, usize) -> Option<Value> + Sync + Send) -> Vec<Value> {
        self.map_trials(self.cfg.trials, f).into_iter().flatten().take(MAX_EVIDENCE).collect()
    }
}

type ClaimFn = fn(&Ctx) -> (Vec<Value>, bool);

/// A claim returns its evidence and whether that evidence is a flag
/// (counterexamples) rather than a certificate.
pub(crate) struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    pub run: ClaimFn,
}

fn registry() -> Vec<Claim> {
    let mut all = claims::real_claims();
    all.extend(claims::sl2_claims());
    all.extend(claims_complex::complex_claims());
    all
}

pub fn claim_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = registry().iter().map(|c| c.id).collect();
    ids.sort_unstable();
    ids
}

fn run_claim(cfg: &SamplerConfig, exec: Execution, c: &Claim) -> ClaimRecord {
    let ctx = Ctx { cfg, stream: stream_id(c.id), exec };
    let (evidence, flagged) = (c.run)(&ctx);
    ClaimRecord {
        claim_id: c.id.to_string(),
        status: if flagged { Status::Flag } else { Status::Pass },
        trials: cfg.trials,
        evidence,
        description: c.description.to_string(),
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct AuditReport {
    pub config: SamplerConfig,
    pub claims: Vec<ClaimRecord>,
}

pub fn run_audit(cfg: &SamplerConfig) -> AuditReport {
    run_audit_with(cfg, Execution::default())
}

pub fn run_audit_with(cfg: &SamplerConfig, exec: Execution) -> AuditReport {
    let reg = registry();
    let mut claims: Vec<ClaimRecord> = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => reg.par_iter().map(|c| run_claim(cfg, exec, c)).collect(),
        _ => reg.iter().map(|c| run_claim(cfg, exec, c)).collect(),
    };
    claims.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    AuditReport { config: *cfg, claims }
}

/// Runs a single claim by id.
pub fn run_claim_by_id(cfg: &SamplerConfig, id: &str) -> Option<ClaimRecord> {
    registry().iter().find(|c| c.id == id).map(|c| run_claim(cfg, Execution::default(), c))
}

impl AuditReport {
    pub fn count(&self, s: Status) -> usize {
        self.claims.iter().filter(|c| c.status == s).count()
    }

    pub fn has_flags(&self) -> bool {
        self.count(Status::Flag) > 0
    }

    pub fn get(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config,
            "claims": self.claims,
            "summary": { "pass": self.count(Status::Pass), "flag": self.count(Status::Flag) },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "audit seed={} trials={} height_bound={}", c.seed, c.trials, c.height_bound);
        for r in &self.claims {
            let _ = writeln!(out, "{:<4} {:<32} {}", r.status.as_str(), r.claim_id, r.description);
            if r.status == Status::Flag {
                for e in &r.evidence {
                    let _ = writeln!(out, "       evidence: {e}");
                }
            }
        }
        let _ = writeln!(out, "summary: {} PASS, {} FLAG", self.count(Status::Pass), self.count(Status::Flag));
        out
    }
}
