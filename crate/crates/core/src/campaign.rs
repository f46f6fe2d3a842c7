//! Seeded fuzz campaigns over random instances.
//!
//! Trials run in parallel and are merged in trial order, so a report depends
//! only on its parameters. The first failure is shrunk by greedy edge and
//! vertex deletion.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::{check_instance, CheckConfig, CheckStatus, InstanceReport};
use crate::generate::{generate, rng_for, InstanceClass};
use crate::hypergraph::Hypergraph;
use crate::lyubeznik::{CertificateKind, CertificateVerdict};
use crate::vertex_set::VertexSet;

pub const SCHEMA_VERSION: u32 = 1;

/// Failing trials kept in a report beyond the first.
pub const MAX_REPORTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzParams {
    pub class: InstanceClass,
    pub vertices: usize,
    pub edges: usize,
    pub count: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub info: usize,
    /// Cases examined, summed over instances.
    pub cases: usize,
}

impl CheckTally {
    pub fn status(&self) -> CheckStatus {
        if self.fail > 0 {
            CheckStatus::Fail
        } else if self.pass > 0 {
            CheckStatus::Pass
        } else if self.info > 0 {
            CheckStatus::Info
        } else {
            CheckStatus::NotApplicable
        }
    }
}

/// A failing instance, replayable from the embedded instance or from the
/// campaign seed and trial number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
    pub instance: Hypergraph,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shrunk: Option<Hypergraph>,
}

/// The first verified certificate of a kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSample {
    pub trial: Option<u64>,
    pub instance: Hypergraph,
    pub verdict: CertificateVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<FuzzParams>,
    pub config: CheckConfig,
    pub instances: usize,
    pub checks: BTreeMap<String, CheckTally>,
    pub certificates: BTreeMap<CertificateKind, usize>,
    pub witnesses: Vec<WitnessSample>,
    pub failures: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<u64>,
}

impl CampaignReport {
    fn new(params: Option<FuzzParams>, config: &CheckConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            params,
            config: config.clone(),
            instances: 0,
            checks: BTreeMap::new(),
            certificates: BTreeMap::new(),
            witnesses: Vec::new(),
            failures: Vec::new(),
            runtime_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, report: &InstanceReport, seed: Option<u64>, trial: Option<u64>) {
        self.instances += 1;
        for c in &report.checks {
            let t = self.checks.entry(c.name.clone()).or_default();
            t.cases += c.cases;
            match c.status {
                CheckStatus::Pass => t.pass += 1,
                CheckStatus::Fail => t.fail += 1,
                CheckStatus::NotApplicable => t.not_applicable += 1,
                CheckStatus::Info => t.info += 1,
            }
        }
        for v in &report.certificates {
            let seen = self.certificates.entry(v.kind).or_default();
            if *seen == 0 {
                self.witnesses.push(WitnessSample {
                    trial,
                    instance: report.instance.clone(),
                    verdict: v.clone(),
                });
            }
            *seen += 1;
        }
        for c in report.failures() {
            if self.failures.len() > MAX_REPORTED_FAILURES {
                break;
            }
            self.failures.push(Counterexample {
                check: c.name.clone(),
                detail: c.detail.clone().unwrap_or_default(),
                seed,
                trial,
                instance: report.instance.clone(),
                shrunk: None,
            });
        }
    }

    fn shrink_first(&mut self) {
        let config = self.config.clone();
        if let Some(first) = self.failures.first_mut() {
            first.shrunk = Some(shrink(&first.instance, &first.check, &config));
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(p) = &self.params {
            out.push_str(&format!(
                "class {} vertices {} edges {} count {} seed {}\n",
                p.class, p.vertices, p.edges, p.count, p.seed
            ));
        }
        out.push_str(&format!("instances {}  field {}\n", self.instances, self.config.field));
        out.push_str(&format!("{:<36} {:>5} {:>5} {:>5} {:>5} {:>8}\n", "check", "pass", "fail", "n/a", "info", "cases"));
        for (name, t) in &self.checks {
            out.push_str(&format!(
                "{name:<36} {:>5} {:>5} {:>5} {:>5} {:>8}\n",
                t.pass, t.fail, t.not_applicable, t.info, t.cases
            ));
        }
        for (kind, n) in &self.certificates {
            out.push_str(&format!("certificates {kind:?}: {n}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("FAIL {}: {}", f.check, f.detail));
            if let Some(t) = f.trial {
                out.push_str(&format!(" (trial {t})"));
            }
            out.push('\n');
        }
        if let Some(ms) = self.runtime_ms {
            out.push_str(&format!("runtime {ms} ms\n"));
        }
        out
    }
}

/// Runs every check on one instance and reports it in campaign form.
pub fn check_report(h: &Hypergraph, config: &CheckConfig) -> (InstanceReport, CampaignReport) {
    let instance = check_instance(h, config);
    let mut report = CampaignReport::new(None, config);
    report.absorb(&instance, None, None);
    report.shrink_first();
    (instance, report)
}

/// The instance of trial `trial`.
pub fn trial_instance(params: &FuzzParams, trial: u64) -> Hypergraph {
    generate(params.class, params.vertices, params.edges, &mut rng_for(params.seed, trial))
}

pub fn run_fuzz(params: &FuzzParams, config: &CheckConfig) -> CampaignReport {
    let reports: Vec<InstanceReport> = (0..params.count as u64)
        .into_par_iter()
        .map(|trial| check_instance(&trial_instance(params, trial), config))
        .collect();
    let mut report = CampaignReport::new(Some(params.clone()), config);
    for (trial, r) in reports.iter().enumerate() {
        report.absorb(r, Some(params.seed), Some(trial as u64));
    }
    report.shrink_first();
    report
}

fn fails(h: &Hypergraph, check: &str, config: &CheckConfig) -> bool {
    check_instance(h, config)
        .outcome(check)
        .is_some_and(|c| c.status == CheckStatus::Fail)
}

/// Shrinks `h` while `check` keeps failing.
pub fn shrink(h: &Hypergraph, check: &str, config: &CheckConfig) -> Hypergraph {
    shrink_by(h, |g| fails(g, check, config))
}

/// Greedily takes the first single deletion that still satisfies `keeps`,
/// trying edges before vertices, until none does. Returns `h` unchanged if
/// it does not satisfy `keeps`.
pub fn shrink_by(h: &Hypergraph, keeps: impl Fn(&Hypergraph) -> bool) -> Hypergraph {
    let mut current = h.clone();
    if !keeps(&current) {
        return current;
    }
    while let Some(smaller) = single_deletions(&current).into_iter().find(|g| keeps(g)) {
        current = smaller;
    }
    current
}

/// Every hypergraph obtained by deleting one edge, or one vertex together
/// with its edges.
pub fn single_deletions(h: &Hypergraph) -> Vec<Hypergraph> {
    let edges = (0..h.m()).map(|s| h.delete_edge(s).expect("edge in range"));
    let vertices = (0..h.n()).map(|v| {
        let keep = h.vertices().difference(&VertexSet::singleton(v));
        h.induced_subhypergraph(&keep).expect("subset of V")
    });
    edges.chain(vertices).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(class: InstanceClass, count: usize, seed: u64) -> FuzzParams {
        FuzzParams {
            class,
            vertices: 6,
            edges: 5,
            count,
            seed,
        }
    }

    #[test]
    fn fuzz_is_deterministic() {
        let p = params(InstanceClass::General, 12, 7);
        let a = serde_json::to_string(&run_fuzz(&p, &CheckConfig::default())).unwrap();
        let b = serde_json::to_string(&run_fuzz(&p, &CheckConfig::default())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chordal_campaign_passes() {
        let r = run_fuzz(&params(InstanceClass::Chordal, 10, 1), &CheckConfig::default());
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.instances, 10);
        assert!(r.checks["nonvanishing_characterization"].pass > 0);
    }

    #[test]
    fn shrinker_reaches_a_minimal_failure() {
        let h = crate::named::path(7);
        let pd_at_least_3 = |g: &Hypergraph| {
            crate::hochster::betti_table(g, crate::FieldChoice::Rational).is_ok_and(|t| t.pd() >= 3)
        };
        let small = shrink_by(&h, pd_at_least_3);
        assert!(pd_at_least_3(&small));
        assert!(single_deletions(&small).iter().all(|g| !pd_at_least_3(g)));
        assert!(small.n() < h.n());
        assert_eq!(shrink(&h, "degree_window", &CheckConfig::default()), h);
    }
}
