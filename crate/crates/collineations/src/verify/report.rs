//! Report assembly: one deterministic JSON object per audit run, plus the
//! derived human-readable summary. JSON is the source of truth; the text
//! rendering is produced from it and never the other way around.

use super::catalog::{CaseReport, CaseStatus};
use super::lemmas::{Discrepancy, LemmaAudit};

#[derive(Debug)]
pub struct Report {
    pub seed: u64,
    pub samples: usize,
    pub lemma_audit: LemmaAudit,
    pub cases: Vec<CaseReport>,
    pub discrepancies: Vec<Discrepancy>,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "seed": self.seed,
            "samples": self.samples,
            "lemmas": self.lemma_audit.entries.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
            "cases": self.cases.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "discrepancies": self.discrepancies.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
        })
    }

    /// Byte-stable rendering: fixed struct field order above, `BTreeMap`
    /// underneath every object, no floats anywhere.
    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        out.push('\n');
        out
    }

    /// True when the run found no internal-consistency failures. Paper
    /// discrepancies (refuted cases, ledgered lemma entries) do not count:
    /// they are findings, not failures.
    pub fn engine_consistent(&self) -> bool {
        self.lemma_audit.unexplained.is_empty()
    }

    pub fn summary_text(&self) -> String {
        let mut lines = Vec::new();
        lines.push(format!(
            "lemma audit: {}/{} Lie components confirmed, {} ledgered, {} unexplained",
            self.lemma_audit.lie_confirmed,
            self.lemma_audit.lie_total,
            self.lemma_audit.lie_total - self.lemma_audit.lie_confirmed,
            self.lemma_audit.unexplained.len(),
        ));
        for case in &self.cases {
            let mut line = format!(
                "{}: {} ({}/{} samples, engine dimensions {:?})",
                case.case_id,
                case.status.as_str(),
                case.samples_matching,
                case.samples_run,
                case.engine_dimensions,
            );
            if case.status != CaseStatus::Confirmed {
                if let Some(ce) = &case.counterexample {
                    line.push_str(&format!(
                        "; counterexample at {:?}: engine dimension {}",
                        ce.params, ce.engine_dimension
                    ));
                }
            }
            lines.push(line);
        }
        lines.push(format!("discrepancy ledger: {} entries", self.discrepancies.len()));
        lines.join("\n")
    }
}
