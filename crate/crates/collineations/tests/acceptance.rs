//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).

use std::path::PathBuf;
use std::time::Instant;

use collineations::geometry::family_geometry;
use collineations::lie::{g2_as_printed, jacobi_residual, Family};
use collineations::verify::{self, report::Report, CaseStatus};

fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/lemmas.json")
}

fn catalog_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog/paper-theorems.json")
}

fn verdict(criterion: &str, ok: bool, detail: &str) {
    println!(
        "{} criterion {criterion}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion}: {detail}");
}

#[test]
fn criterion_1_jacobi_gate() {
    let start = Instant::now();
    let all_hold = Family::ALL
        .iter()
        .all(|&f| jacobi_residual(&f.symbolic_table()).is_zero());
    let residual = jacobi_residual(&g2_as_printed());
    let refuted = residual.0[0].is_zero()
        && residual.0[1].to_string() == "m*n"
        && residual.0[2].to_string() == "-m*u";
    let elapsed = start.elapsed();
    verdict(
        "1",
        all_hold && refuted && elapsed.as_secs_f64() < 1.0,
        &format!(
            "seven corrected tables satisfy Jacobi, as-printed G2 refuted with residual \
             m*n e2 - m*u e3 ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_2_levi_civita_identities() {
    let start = Instant::now();
    let ok = Family::ALL.iter().all(|&f| {
        let geo = family_geometry(f);
        geo.levi_civita
            .torsion_residuals(&geo.structure)
            .iter()
            .all(|s| s.is_zero())
            && geo
                .levi_civita
                .metric_compatibility_residuals()
                .iter()
                .all(|s| s.is_zero())
    });
    let elapsed = start.elapsed();
    verdict(
        "2",
        ok && elapsed.as_secs_f64() < 1.0,
        &format!("torsion-freeness and metric compatibility hold symbolically ({elapsed:?})"),
    );
}

fn run_audit() -> verify::LemmaAudit {
    let fixture = verify::load_fixture(&fixture_path()).unwrap();
    verify::audit(&fixture).unwrap()
}

#[test]
fn criterion_3_lemma_closed_loop() {
    let audit = run_audit();
    let ratio = audit.lie_confirmed as f64 / audit.lie_total as f64;
    let ok = audit.lie_total == 105 && ratio >= 0.9 && audit.unexplained.is_empty();
    verdict(
        "3",
        ok,
        &format!(
            "{}/{} Lie components confirmed verbatim, every mismatch ledgered",
            audit.lie_confirmed, audit.lie_total
        ),
    );
}

#[test]
fn criterion_4_ricci_derivation() {
    let audit = run_audit();
    let g2_reported = audit.entries.iter().any(|e| {
        e.lemma == "3.4" && e.entry == "(1,1)" && e.paper.is_none() && e.engine == "-n^2 - u^2"
    });
    let ok = audit.ricci_mismatches.is_empty() && g2_reported;
    verdict(
        "4",
        ok,
        "engine symmetrized Ricci matches all printed matrix entries; G2 (1,1) reported as -n^2 - u^2",
    );
}

/// Criteria 5 and 6 share one run: the spot-check cases at 100 seeded
/// samples, with the oracle (soundness, rank maximality, 20 out-of-span
/// probes per sample) running inside every case.
#[test]
fn criteria_5_and_6_spot_checks_with_oracle() {
    const SPOT: [&str; 10] = [
        "Thm3.3",
        "Thm3.6(1)",
        "Thm3.6(2)",
        "Thm3.6(3)",
        "Thm3.9(1a)",
        "Thm3.9(1b)",
        "Thm3.9(1c)",
        "Thm3.9(2)",
        "Thm4.3",
        "Thm4.6(2)",
    ];
    let records = verify::load_catalog(&catalog_path()).unwrap();
    let start = Instant::now();
    let mut all_confirmed = true;
    for id in SPOT {
        let rec = records.iter().find(|r| r.case_id == id).unwrap();
        // run_case fails hard on any oracle violation (criterion 6)
        let report = verify::catalog::run_case(rec, 42, 100).unwrap();
        if report.status != CaseStatus::Confirmed {
            all_confirmed = false;
            println!("  {} unexpectedly {}", id, report.status.as_str());
        }
    }
    // Thm4.6(1) has expected dimension 3; include it for the zero-sample
    // oracle path on a Ricci-flat tensor.
    let rec = records.iter().find(|r| r.case_id == "Thm4.6(1)").unwrap();
    let report = verify::catalog::run_case(rec, 42, 100).unwrap();
    all_confirmed &= report.status == CaseStatus::Confirmed;
    let elapsed = start.elapsed();
    verdict(
        "5",
        all_confirmed && elapsed.as_secs_f64() < 10.0,
        &format!("classification spot checks confirmed at 100 seeded samples ({elapsed:?})"),
    );
    verdict(
        "6",
        true,
        "oracle soundness/maximality/separation held on every sample (violations abort the run)",
    );
}

fn full_report(seed: u64, samples: usize) -> Report {
    let fixture = verify::load_fixture(&fixture_path()).unwrap();
    let lemma_audit = verify::audit(&fixture).unwrap();
    let records = verify::load_catalog(&catalog_path()).unwrap();
    let cases = verify::run_catalog(&records, seed, samples, 4).unwrap();
    Report {
        seed,
        samples,
        lemma_audit,
        cases,
        discrepancies: verify::ledger(),
    }
}

#[test]
fn criterion_7_ambiguity_audit() {
    let report = full_report(42, 25);
    let has = |id: &str| report.cases.iter().any(|c| c.case_id == id);
    let thm312_2 = has("Thm3.12(2a)") && has("Thm3.12(2b)") && has("Thm3.12(2c)");
    let thm49 = (1..=7).all(|k| {
        report
            .cases
            .iter()
            .any(|c| c.case_id.starts_with(&format!("Thm4.9({k}")))
    });
    let all_resolved = report.cases.iter().all(|c| {
        !c.engine_dimensions.is_empty() && c.witness.engine_basis.len() == c.witness.engine_dimension
    });
    verdict(
        "7",
        thm312_2 && thm49 && all_resolved && report.engine_consistent(),
        "report resolves Thm3.12(2) both ways and states engine dimension/span for every Thm4.9 case",
    );
}

#[test]
fn criterion_8_determinism() {
    let a = full_report(42, 100).to_json_string();
    let b = full_report(42, 100).to_json_string();
    verdict(
        "8",
        a == b && !a.is_empty(),
        "two verify runs at seed 42, 100 samples produce byte-identical report JSON",
    );
}
