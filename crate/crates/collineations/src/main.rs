//! Command-line front end: geometry queries per family, collineation
//! classification, Jacobi validation of user-supplied algebras, and the full
//! audit with its deterministic JSON report.
//!
//! Exit codes: 0 = success (paper-discrepancy findings included), 1 = usage
//! error, 2 = internal-consistency failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use collineations::geometry::{family_geometry, BilinearForm, ConnectionTable};
use collineations::lie::{jacobi_residual, Family, FamilySpec, Mode, StructureConstants};
use collineations::scalar::{Rational, Var};
use collineations::solver::{oracle_check, CollineationBasis, NumericStructure};
use collineations::verify::{self, report::Report};

#[derive(Parser)]
#[command(
    name = "collineations",
    about = "Exact Ricci-collineation classification on the 3D Lorentzian Lie group families G1-G7"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    /// Levi-Civita connection.
    Lc,
    /// Yano connection of the product structure.
    Yano,
}

#[derive(Subcommand)]
enum Command {
    /// Print the symmetrized Ricci tensor of a family, symbolic or numeric.
    Ricci {
        family: String,
        /// Comma-separated parameter values, e.g. m=1,n=1/2.
        #[arg(long)]
        params: Option<String>,
    },
    /// Print a connection table of a family, symbolic or numeric.
    Connection {
        family: String,
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value = "yano")]
        which: Which,
    },
    /// Classify the left-invariant Ricci collineations at given parameters.
    Collineate {
        family: String,
        #[arg(long)]
        params: String,
    },
    /// Validate a user-supplied bracket table against the Jacobi identity.
    Jacobi {
        /// JSON file with {"c12": [..], "c13": [..], "c23": [..]}.
        #[arg(long)]
        input: PathBuf,
    },
    /// Full audit: lemma fixtures plus every theorem case of the catalog.
    Verify {
        #[arg(long, default_value = "catalog/paper-theorems.json")]
        catalog: PathBuf,
        #[arg(long, default_value = "fixtures/lemmas.json")]
        fixtures: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Fixture check only: the symbolic lemma audit.
    Lemmas {
        #[arg(long, default_value = "fixtures/lemmas.json")]
        fixtures: PathBuf,
    },
}

const EXIT_USAGE: u8 = 1;
const EXIT_INCONSISTENT: u8 = 2;

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn parse_family(name: &str) -> Result<Family, String> {
    Family::from_name(name).ok_or_else(|| format!("unknown family `{name}` (expected G1..G7)"))
}

fn parse_params(text: &str) -> Result<BTreeMap<Var, Rational>, String> {
    let mut out = BTreeMap::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| format!("malformed parameter `{piece}` (expected key=value)"))?;
        let var = Var::from_name(key.trim())
            .ok_or_else(|| format!("unknown parameter `{}` (expected m, n, u, v)", key.trim()))?;
        let rat: Rational = value
            .trim()
            .parse()
            .map_err(|e| format!("bad value for {}: {e}", key.trim()))?;
        if out.insert(var, rat).is_some() {
            return Err(format!("parameter {} given twice", key.trim()));
        }
    }
    Ok(out)
}

/// Build the numeric bracket table, enforcing the family's constraints.
fn numeric_family(
    family: Family,
    params: &BTreeMap<Var, Rational>,
) -> Result<StructureConstants, String> {
    collineations::lie::make_family(&FamilySpec {
        family,
        params: params.clone(),
        mode: Mode::Numeric,
    })
    .map_err(|e| e.to_string())
}

fn print_form(form: &BilinearForm) {
    println!("{}", serde_json::to_string_pretty(&form.to_json()).expect("serializable"));
}

fn print_connection(table: &ConnectionTable) {
    println!("{}", serde_json::to_string_pretty(&table.to_json()).expect("serializable"));
}

fn cmd_ricci(family: &str, params: Option<&str>) -> Result<ExitCode, String> {
    let family = parse_family(family)?;
    let geo = family_geometry(family);
    match params {
        None => print_form(&geo.ricci_symmetrized),
        Some(text) => {
            let params = parse_params(text)?;
            numeric_family(family, &params)?;
            let numeric = geo
                .ricci_symmetrized
                .eval(&params)
                .map_err(|e| e.to_string())?;
            print_form(&numeric);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_connection(family: &str, params: Option<&str>, which: Which) -> Result<ExitCode, String> {
    let family = parse_family(family)?;
    let geo = family_geometry(family);
    let table = match which {
        Which::Lc => &geo.levi_civita,
        Which::Yano => &geo.yano,
    };
    match params {
        None => print_connection(table),
        Some(text) => {
            let params = parse_params(text)?;
            numeric_family(family, &params)?;
            let mut numeric = table.clone();
            for row in numeric.gamma.iter_mut().flatten() {
                for entry in row.0.iter_mut() {
                    *entry = collineations::scalar::Scalar::Rat(
                        entry.eval(&params).map_err(|e| e.to_string())?,
                    );
                }
            }
            print_connection(&numeric);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_collineate(family: &str, params: &str) -> Result<ExitCode, String> {
    let family = parse_family(family)?;
    let params = parse_params(params)?;
    let table = numeric_family(family, &params)?;
    let geo = family_geometry(family);
    let tensor = geo
        .ricci_symmetrized
        .eval(&params)
        .map_err(|e| e.to_string())?;
    let t = collineations::solver::numeric_form(&tensor).map_err(|e| e.to_string())?;
    let ns = NumericStructure::from_table(&table, &params).map_err(|e| e.to_string())?;
    let sol = CollineationBasis::solve(&t, &ns);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    if let Err(detail) = oracle_check(&t, &ns, &sol, &mut rng, 20) {
        eprintln!("internal-consistency failure: {detail}");
        return Ok(ExitCode::from(EXIT_INCONSISTENT));
    }
    println!("{}", serde_json::to_string_pretty(&sol.to_json()).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_jacobi(input: &PathBuf) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))?;
    let table = StructureConstants::from_json(&value).map_err(|e| e.to_string())?;
    let residual = jacobi_residual(&table);
    let holds = residual.is_zero();
    let output = serde_json::json!({
        "jacobi": holds,
        "residual": residual.0.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&output).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_lemmas(fixtures: &PathBuf) -> Result<ExitCode, String> {
    let fixture = verify::load_fixture(fixtures).map_err(|e| e.to_string())?;
    let audit = verify::audit(&fixture).map_err(|e| e.to_string())?;
    println!(
        "lemma audit: {}/{} Lie components confirmed, {} ledgered, {} unexplained",
        audit.lie_confirmed,
        audit.lie_total,
        audit.lie_total - audit.lie_confirmed,
        audit.unexplained.len(),
    );
    for entry in audit.entries.iter().filter(|e| !e.matched) {
        println!(
            "  mismatch {} {}: paper {} engine {} ({})",
            entry.lemma,
            entry.entry,
            entry.paper.as_deref().unwrap_or("-"),
            entry.engine,
            entry.note.as_deref().unwrap_or("UNEXPLAINED"),
        );
    }
    if audit.unexplained.is_empty() && audit.ricci_mismatches.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("internal-consistency failure: unexplained lemma mismatches");
        Ok(ExitCode::from(EXIT_INCONSISTENT))
    }
}

fn cmd_verify(
    catalog: &PathBuf,
    fixtures: &PathBuf,
    seed: u64,
    samples: usize,
    json: Option<&PathBuf>,
    jobs: usize,
) -> Result<ExitCode, String> {
    let fixture = verify::load_fixture(fixtures).map_err(|e| e.to_string())?;
    let lemma_audit = verify::audit(&fixture).map_err(|e| e.to_string())?;
    let records = verify::load_catalog(catalog).map_err(|e| e.to_string())?;
    let cases = match verify::run_catalog(&records, seed, samples, jobs) {
        Ok(cases) => cases,
        Err(e @ verify::catalog::CatalogError::OracleViolation { .. })
        | Err(e @ verify::catalog::CatalogError::Unsatisfiable { .. }) => {
            eprintln!("internal-consistency failure: {e}");
            return Ok(ExitCode::from(EXIT_INCONSISTENT));
        }
        Err(e) => return Err(e.to_string()),
    };
    let report = Report {
        seed,
        samples,
        lemma_audit,
        cases,
        discrepancies: verify::ledger(),
    };
    let consistent = report.engine_consistent();
    match json {
        Some(path) => {
            std::fs::write(path, report.to_json_string())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!("{}", report.summary_text());
            println!("report written to {}", path.display());
        }
        None => println!("{}", report.to_json_string()),
    }
    if consistent {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("internal-consistency failure: unexplained lemma mismatches");
        Ok(ExitCode::from(EXIT_INCONSISTENT))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ricci { family, params } => cmd_ricci(family, params.as_deref()),
        Command::Connection {
            family,
            params,
            which,
        } => cmd_connection(family, params.as_deref(), *which),
        Command::Collineate { family, params } => cmd_collineate(family, params),
        Command::Jacobi { input } => cmd_jacobi(input),
        Command::Lemmas { fixtures } => cmd_lemmas(fixtures),
        Command::Verify {
            catalog,
            fixtures,
            seed,
            samples,
            json,
            jobs,
        } => cmd_verify(catalog, fixtures, *seed, *samples, json.as_ref(), *jobs),
    };
    match result {
        Ok(code) => code,
        Err(msg) => usage_error(&msg),
    }
}
