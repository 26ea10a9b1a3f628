//! The audit layer: lemma fixtures, the theorem-case catalog, and the
//! deterministic JSON report combining both.

pub mod catalog;
pub mod lemmas;
pub mod report;

pub use catalog::{load_catalog, run_catalog, CaseRecord, CaseReport, CaseStatus};
pub use lemmas::{audit, ledger, load_fixture, Discrepancy, LemmaAudit, LemmaFixture};
pub use report::Report;
