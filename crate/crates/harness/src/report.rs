//! Campaign reports: a canonical section that depends only on the inputs and
//! a runtime section with timings.

use crate::ratio::{ratio, Failure};
use num_rational::Ratio;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    #[serde(rename = "wR")]
    pub w_r: u64,
    pub packed: u64,
    pub valid: bool,
}

/// One isomorphism class, sampled instance or graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassResult {
    pub key: String,
    /// How many enumerated or sampled instances fell into this class.
    pub multiplicity: u64,
    pub size: usize,
    pub triangles: usize,
    pub nu: Option<u64>,
    pub tau: Option<u64>,
    pub ratio: Option<String>,
    pub fano_free: bool,
    pub chi: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
}

impl ClassResult {
    fn exact_ratio(&self) -> Option<Ratio<u64>> {
        ratio(self.tau?, self.nu?)
    }

    fn solved(&self) -> bool {
        self.nu.is_some() && self.tau.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub key: String,
    pub predicate: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub instances: u64,
    pub classes: u64,
    pub solved: u64,
    pub unsolved: u64,
    /// Instances without triangles that campaigns skip.
    pub skipped: u64,
    pub fano_free: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioWitness {
    pub key: String,
    pub ratio: String,
    pub nu: u64,
    pub tau: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Extremal {
    pub max_ratio: Option<RatioWitness>,
    pub max_ratio_fano_free: Option<RatioWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Canonical {
    pub campaign: String,
    pub tool_version: String,
    pub parameters: BTreeMap<String, String>,
    pub counts: Counts,
    pub extremal: Extremal,
    pub violations: Vec<Violation>,
    pub classes: Vec<ClassResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuntimeStats {
    pub wall_ms: u128,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub canonical: Canonical,
    pub runtime: RuntimeStats,
}

fn witness(c: &ClassResult) -> RatioWitness {
    let r = c.exact_ratio().expect("witness has a ratio");
    RatioWitness { key: c.key.clone(), ratio: r.to_string(), nu: c.nu.unwrap_or(0), tau: c.tau.unwrap_or(0) }
}

impl CampaignReport {
    /// Assembles a report; counts and extremal ratios are derived from `classes`.
    pub fn new(
        campaign: &str,
        parameters: BTreeMap<String, String>,
        classes: Vec<ClassResult>,
        skipped: u64,
        failures: Vec<(String, Failure)>,
        runtime: RuntimeStats,
    ) -> Self {
        let mut counts = Counts {
            instances: classes.iter().map(|c| c.multiplicity).sum::<u64>() + skipped,
            classes: classes.len() as u64,
            skipped,
            ..Counts::default()
        };
        let mut extremal = Extremal::default();
        for c in &classes {
            if c.solved() {
                counts.solved += 1;
            } else {
                counts.unsolved += 1;
            }
            if c.fano_free {
                counts.fano_free += 1;
            }
            let Some(r) = c.exact_ratio() else { continue };
            let beats = |w: &Option<RatioWitness>| w.as_ref().is_none_or(|w| r > Ratio::new(w.tau, w.nu));
            if beats(&extremal.max_ratio) {
                extremal.max_ratio = Some(witness(c));
            }
            if c.fano_free && beats(&extremal.max_ratio_fano_free) {
                extremal.max_ratio_fano_free = Some(witness(c));
            }
        }
        let violations = failures
            .into_iter()
            .map(|(key, f)| Violation { key, predicate: f.predicate.to_string(), detail: f.detail })
            .collect();
        CampaignReport {
            canonical: Canonical {
                campaign: campaign.to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                parameters,
                counts,
                extremal,
                violations,
                classes,
            },
            runtime,
        }
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// 0 when every predicate holds, 2 on violations, 3 when only unsolved instances remain.
    pub fn exit_code(&self) -> i32 {
        if !self.canonical.violations.is_empty() {
            2
        } else if self.canonical.counts.unsolved > 0 {
            3
        } else {
            0
        }
    }

    pub fn summary(&self) -> String {
        let c = &self.canonical;
        let mut out = String::new();
        let _ = writeln!(out, "campaign {} (version {})", c.campaign, c.tool_version);
        for (k, v) in &c.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let n = &c.counts;
        let _ = writeln!(
            out,
            "  instances {}, classes {}, solved {}, unsolved {}, skipped {}, fano-free classes {}",
            n.instances, n.classes, n.solved, n.unsolved, n.skipped, n.fano_free
        );
        let show = |w: &Option<RatioWitness>| match w {
            Some(w) => format!("{} (nu {}, tau {}) at {}", w.ratio, w.nu, w.tau, w.key),
            None => "none".to_string(),
        };
        let _ = writeln!(out, "  max tau/nu {}", show(&c.extremal.max_ratio));
        let _ = writeln!(out, "  max tau/nu without Fano {}", show(&c.extremal.max_ratio_fano_free));
        let _ = writeln!(out, "  violations {}", c.violations.len());
        for v in c.violations.iter().take(20) {
            let _ = writeln!(out, "    {} {}: {}", v.key, v.predicate, v.detail);
        }
        let _ = writeln!(out, "  wall time {} ms on {} threads", self.runtime.wall_ms, self.runtime.jobs);
        out
    }
}
