//! `spectre`: command-line front end for spectre-core.
//!
//! Exit codes: 0 on success, 1 when the library reports a domain error (its
//! variant name is printed first), 2 on usage or file errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use spectre_core::classify::{invariants, kulikov_type, newton_lc_tests, InvariantReport};
use spectre_core::io::{format_mixed_spec, format_spec, parse_nodes, parse_poly, parse_spec};
use spectre_core::joins::{join, suspend};
use spectre_core::newton_spectrum::{brieskorn_poincare, newton_mixed_spectrum};
use spectre_core::nonisolated::{jk_infinity, jk_pg_bound, slc_table, sss_difference, Branch, BranchData};
use spectre_core::polytope::NewtonData;
use spectre_core::rat::{fmt_frac, parse_rat};
use spectre_core::schoen::{evaluation_rank_with, NodalFamily, RankMode};
use spectre_core::weighted::{qh_spectrum, verify_tables, WeightVector};
use spectre_core::{Error, MixedSpectrum, Spectrum};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "spectre", version, about = "Exact spectra of hypersurface singularities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Print progress notes to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Hodge–Deligne table from the Newton polyhedron (mixed spectrum).
    Danilov,
    /// Poincaré series of the Newton filtration (spectrum only).
    Brieskorn,
    /// Danilov, falling back to Brieskorn when the polyhedron is not simple.
    Auto,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Table {
    /// Calabi–Yau tail rows (pure and mixed).
    Tcy,
    /// Non-isolated slc surface rows.
    Tx,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum from weights or from a Newton polyhedron.
    Spectrum {
        /// Comma-separated weights, e.g. 1/2,1/4,1/4.
        #[arg(long, conflicts_with = "newton", required_unless_present = "newton")]
        qh: Option<String>,
        /// `.poly` file with the monomial support.
        #[arg(long)]
        newton: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Route::Auto, requires = "newton")]
        route: Route,
    },
    /// Sebastiani–Thom join of two mixed spectra.
    Join { a: PathBuf, b: PathBuf },
    /// Join with z^R.
    Suspend {
        #[arg(long)]
        r: i64,
        file: PathBuf,
    },
    /// Invariants read off a spectrum, or polytope tests for a support.
    Classify {
        #[arg(conflicts_with = "newton", required_unless_present = "newton")]
        file: Option<PathBuf>,
        #[arg(long)]
        newton: Option<PathBuf>,
    },
    /// Kulikov type of the degeneration attached to a Newton polyhedron.
    Kulikov {
        #[arg(long)]
        newton: PathBuf,
    },
    /// Closed form of the J_{κ,∞} spectrum.
    Jkinf {
        #[arg(long)]
        kappa: i64,
    },
    /// Steenbrink–Siersma–Saito difference for a non-isolated germ.
    Sss {
        #[arg(long)]
        iso: PathBuf,
        #[arg(long)]
        branches: PathBuf,
        #[arg(long)]
        r: i64,
    },
    /// Evaluation rank at the nodes of a hypersurface in P^{2m}.
    Schoen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        nodes: PathBuf,
        /// Also run the exact cyclotomic elimination.
        #[arg(long)]
        certify: bool,
    },
    /// Re-verify a shipped dataset.
    Tables {
        #[arg(long, value_enum)]
        check: Table,
    },
}

/// Why a command failed.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            // Malformed input files are the user's to fix, like bad flags.
            Error::Parse(msg) => Failure::Usage(format!("Parse: {msg}")),
            e => Failure::Domain(e),
        }
    }
}

/// A command's result in both output formats.
struct Report {
    text: String,
    json: Value,
    /// Set when the command ran but found a failed check.
    failed: Option<Error>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, failed: None }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn mixed_json(s: &MixedSpectrum) -> Value {
    Value::Array(
        s.iter()
            .map(|(a, w, m)| json!({"alpha": fmt_frac(a), "weight": w, "mult": m}))
            .collect(),
    )
}

fn plain_json(s: &Spectrum) -> Value {
    Value::Array(s.iter().map(|(a, m)| json!({"alpha": fmt_frac(a), "mult": m})).collect())
}

fn mixed_report(command: &str, n: Option<i64>, s: &MixedSpectrum, extra: &[(&str, Value)]) -> Report {
    let mut text = String::new();
    let mut json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "n": n,
        "kind": "mixed",
        "total": s.total(),
        "bracket": s.to_string(),
        "entries": mixed_json(s),
    });
    for (k, v) in extra {
        let shown = match v {
            Value::String(x) => x.clone(),
            v => v.to_string(),
        };
        writeln!(text, "# {k}: {shown}").unwrap();
        json[*k] = v.clone();
    }
    text.push_str(&format_mixed_spec(n, s));
    Report::ok(text, json)
}

fn plain_report(command: &str, n: Option<i64>, s: &Spectrum) -> Report {
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "n": n,
        "kind": "plain",
        "total": s.total(),
        "entries": plain_json(s),
    });
    Report::ok(format_spec(n, s), json)
}

fn newton_data(path: &Path) -> Result<NewtonData, Failure> {
    Ok(NewtonData::build(&parse_poly(&read(path)?)?))
}

fn cmd_spectrum(qh: Option<&str>, newton: Option<&Path>, route: Route) -> Result<Report, Failure> {
    if let Some(w) = qh {
        let w = WeightVector::parse(w)?;
        let s = qh_spectrum(&w)?;
        return Ok(mixed_report("spectrum", Some(w.n()), &s, &[]));
    }
    let path = newton.ok_or_else(|| Failure::Usage("one of --qh or --newton is required".into()))?;
    let nd = newton_data(path)?;
    let n = Some(nd.n());
    let danilov = || newton_mixed_spectrum(&nd);
    match route {
        Route::Danilov => Ok(mixed_report("spectrum", n, &danilov()?, &[])),
        Route::Brieskorn => Ok(plain_report("spectrum", n, &brieskorn_poincare(&nd)?)),
        Route::Auto => match danilov() {
            Ok(s) => Ok(mixed_report("spectrum", n, &s, &[])),
            Err(Error::ConditionIIIViolated(_)) => {
                Ok(plain_report("spectrum", n, &brieskorn_poincare(&nd)?))
            }
            Err(e) => Err(e.into()),
        },
    }
}

fn cmd_join(a: &Path, b: &Path) -> Result<Report, Failure> {
    let fa = parse_spec(&read(a)?)?;
    let fb = parse_spec(&read(b)?)?;
    let s = join(fa.mixed()?, fb.mixed()?)?;
    let n = fa.n.zip(fb.n).map(|(x, y)| x + y + 1);
    Ok(mixed_report("join", n, &s, &[]))
}

fn cmd_suspend(r: i64, file: &Path) -> Result<Report, Failure> {
    let f = parse_spec(&read(file)?)?;
    let s = suspend(f.mixed()?, r)?;
    Ok(mixed_report("suspend", f.n.map(|n| n + 1), &s, &[]))
}

fn invariants_text(inv: &InvariantReport, out: &mut String) {
    writeln!(out, "sigma_min: {}", inv.sigma_min).unwrap();
    writeln!(out, "lct: {}", inv.lct).unwrap();
    writeln!(out, "minimal_exponent: {}", inv.period_exponent).unwrap();
    writeln!(out, "lambda_f: {}", inv.lambda_f).unwrap();
    writeln!(out, "max_k_log_canonical: {}", inv.max_k_lc).unwrap();
    writeln!(out, "du_bois: {}", inv.du_bois).unwrap();
    writeln!(out, "rational: {}", inv.rational).unwrap();
    writeln!(out, "generation_level_bound: {}", inv.gen_level_bound).unwrap();
    let jn: Vec<String> = inv.jumping_in_unit.iter().map(ToString::to_string).collect();
    writeln!(out, "jumping_numbers_in_unit_interval: {}", jn.join(" ")).unwrap();
}

fn invariants_json(inv: &InvariantReport) -> Value {
    json!({
        "sigma_min": inv.sigma_min.to_string(),
        "lct": inv.lct.to_string(),
        "minimal_exponent": inv.period_exponent.to_string(),
        "lambda_f": inv.lambda_f,
        "max_k_log_canonical": inv.max_k_lc,
        "du_bois": inv.du_bois,
        "rational": inv.rational,
        "generation_level_bound": inv.gen_level_bound,
        "jumping_numbers_in_unit_interval":
            inv.jumping_in_unit.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn cmd_classify(file: Option<&Path>, newton: Option<&Path>) -> Result<Report, Failure> {
    let mut text = String::new();
    let mut json = json!({"schema_version": SCHEMA_VERSION, "command": "classify"});
    if let Some(path) = newton {
        let nd = newton_data(path)?;
        let lc = newton_lc_tests(&nd)?;
        writeln!(text, "n: {}", nd.n()).unwrap();
        writeln!(text, "newton_log_canonical: {}", lc.lc).unwrap();
        writeln!(text, "newton_rational: {}", lc.rational).unwrap();
        json["n"] = json!(nd.n());
        json["newton"] = json!({"log_canonical": lc.lc, "rational": lc.rational});
        match newton_mixed_spectrum(&nd) {
            Ok(s) => {
                let inv = invariants(nd.n(), &s)?;
                invariants_text(&inv, &mut text);
                json["invariants"] = invariants_json(&inv);
            }
            Err(Error::ConditionIIIViolated(msg)) => {
                writeln!(text, "# spectrum invariants skipped: ConditionIIIViolated: {msg}").unwrap();
                json["invariants"] = Value::Null;
            }
            Err(e) => return Err(e.into()),
        }
        return Ok(Report::ok(text, json));
    }
    let path = file.ok_or_else(|| Failure::Usage("a .spec file or --newton is required".into()))?;
    let f = parse_spec(&read(path)?)?;
    let n = f
        .n
        .ok_or_else(|| Failure::Usage(format!("{} lacks a '# n: N' header", path.display())))?;
    let s = match &f.data {
        spectre_core::io::SpecData::Mixed(m) => m.clone(),
        spectre_core::io::SpecData::Plain(p) => {
            MixedSpectrum::from_entries(p.iter().map(|(a, m)| (a.clone(), 0, m)))
        }
    };
    let inv = invariants(n, &s)?;
    writeln!(text, "n: {n}").unwrap();
    invariants_text(&inv, &mut text);
    json["n"] = json!(n);
    json["invariants"] = invariants_json(&inv);
    Ok(Report::ok(text, json))
}

fn cmd_kulikov(newton: &Path) -> Result<Report, Failure> {
    let nd = newton_data(newton)?;
    let k = kulikov_type(&nd)?;
    let text = format!("kulikov_type: {}\nwitness: {}\n", k.kulikov_type, k.witness);
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "kulikov",
        "n": nd.n(),
        "kulikov_type": k.kulikov_type,
        "witness": k.witness,
    });
    Ok(Report::ok(text, json))
}

fn cmd_jkinf(kappa: i64) -> Result<Report, Failure> {
    let s = jk_infinity(kappa)?;
    let order = s.project().monodromy_order().to_string();
    let pg = jk_pg_bound(&[kappa])?;
    Ok(mixed_report(
        "jkinf",
        Some(2),
        &s,
        &[("kappa", json!(kappa)), ("monodromy_order", json!(order)), ("pg_bound", json!(pg))],
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchJson {
    lim_spectrum: String,
    betas: Vec<String>,
    #[serde(default = "one")]
    mu: i64,
}

fn one() -> i64 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchesJson {
    branches: Vec<BranchJson>,
    #[serde(default)]
    sigma1: Option<String>,
}

fn cmd_sss(iso: &Path, branches: &Path, r: i64) -> Result<Report, Failure> {
    let f = parse_spec(&read(iso)?)?;
    let raw: BranchesJson = serde_json::from_str(&read(branches)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", branches.display())))?;
    let mut bd = BranchData::default();
    for b in raw.branches {
        bd.branches.push(Branch {
            lim_spectrum: MixedSpectrum::parse_bracket(&b.lim_spectrum)?,
            betas: b.betas.iter().map(|x| parse_rat(x)).collect::<Result<_, _>>()?,
            mu: b.mu,
        });
    }
    let sigma1 = raw.sigma1.as_deref().map(MixedSpectrum::parse_bracket).transpose()?;
    let res = sss_difference(f.mixed()?, &bd, r, sigma1.as_ref())?;
    let mut extra = vec![("r", json!(r)), ("difference", json!(res.difference.to_string()))];
    match res.sigma2 {
        Some(s2) => {
            extra.push(("sigma1", json!(res.sigma1.unwrap_or_default().to_string())));
            Ok(mixed_report("sss", f.n, &s2, &extra))
        }
        None => Ok(mixed_report("sss", f.n, &res.difference, &extra)),
    }
}

fn cmd_schoen(m: usize, degree: usize, nodes: &Path, certify: bool) -> Result<Report, Failure> {
    let nf = parse_nodes(&read(nodes)?)?;
    let fam = NodalFamily::new(m, degree, nf.conductor, nf.nodes)?;
    let mode = if certify { RankMode::Certified } else { RankMode::Modular };
    let rep = evaluation_rank_with(&fam, mode)?;
    let mut text = String::new();
    writeln!(text, "nodes: {}", rep.delta).unwrap();
    writeln!(text, "section_degree: {}", rep.section_degree).unwrap();
    writeln!(text, "section_dim: {}", rep.section_dim).unwrap();
    for (p, r) in &rep.modular_ranks {
        writeln!(text, "rank_mod_{p}: {r}").unwrap();
    }
    if let Some(e) = rep.exact_rank {
        writeln!(text, "exact_rank: {e}").unwrap();
    }
    writeln!(text, "r: {}", rep.r).unwrap();
    writeln!(text, "rk_N: {}", rep.rk_n).unwrap();
    writeln!(text, "dim_W: {}", rep.dim_w).unwrap();
    writeln!(text, "phantom: {}", rep.phantom).unwrap();
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "schoen",
        "m": m,
        "degree": degree,
        "conductor": fam.conductor,
        "nodes": rep.delta,
        "section_degree": rep.section_degree,
        "section_dim": rep.section_dim,
        "modular_ranks": rep.modular_ranks.iter()
            .map(|(p, r)| json!({"prime": p, "rank": r})).collect::<Vec<_>>(),
        "exact_rank": rep.exact_rank,
        "r": rep.r,
        "rk_N": rep.rk_n,
        "dim_W": rep.dim_w,
        "phantom": rep.phantom,
    });
    Ok(Report::ok(text, json))
}

fn cmd_tables(check: Table) -> Result<Report, Failure> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let (passed, total, failed) = match check {
        Table::Tcy => {
            let checks = verify_tables()?;
            let mut problems = Vec::new();
            for c in &checks {
                let verdict = if c.ok { "PASS" } else { "FAIL" };
                writeln!(text, "{verdict} {} {}", c.yonemura_id, c.label).unwrap();
                for m in &c.mismatches {
                    writeln!(text, "  {m}").unwrap();
                    problems.push(format!("{}: {m}", c.label));
                }
                rows.push(json!({
                    "id": c.yonemura_id, "label": c.label, "ok": c.ok, "mismatches": c.mismatches,
                }));
            }
            let passed = checks.iter().filter(|c| c.ok).count();
            (passed, checks.len(), (!problems.is_empty()).then(|| Error::MismatchReport(problems)))
        }
        Table::Tx => match slc_table() {
            Ok(reports) => {
                for r in &reports {
                    writeln!(text, "PASS {} {} sigma2 = {}", r.symbol, r.instance, r.sigma2).unwrap();
                    rows.push(json!({
                        "symbol": r.symbol, "instance": r.instance, "ok": true,
                        "iso": r.iso.to_string(), "sigma2": r.sigma2.to_string(),
                        "iso_provenance": r.iso_provenance,
                    }));
                }
                (reports.len(), reports.len(), None)
            }
            Err(Error::MismatchReport(problems)) => {
                for p in &problems {
                    writeln!(text, "FAIL {p}").unwrap();
                }
                (0, problems.len(), Some(Error::MismatchReport(problems)))
            }
            Err(e) => return Err(e.into()),
        },
    };
    writeln!(text, "{passed}/{total} rows pass").unwrap();
    let name = match check {
        Table::Tcy => "tcy",
        Table::Tx => "tx",
    };
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "tables",
        "table": name,
        "passed": passed,
        "total": total,
        "rows": rows,
    });
    Ok(Report { text, json, failed })
}

fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Spectrum { qh, newton, route } => {
            cmd_spectrum(qh.as_deref(), newton.as_deref(), *route)
        }
        Command::Join { a, b } => cmd_join(a, b),
        Command::Suspend { r, file } => cmd_suspend(*r, file),
        Command::Classify { file, newton } => cmd_classify(file.as_deref(), newton.as_deref()),
        Command::Kulikov { newton } => cmd_kulikov(newton),
        Command::Jkinf { kappa } => cmd_jkinf(*kappa),
        Command::Sss { iso, branches, r } => cmd_sss(iso, branches, *r),
        Command::Schoen { m, degree, nodes, certify } => cmd_schoen(*m, *degree, nodes, *certify),
        Command::Tables { check } => cmd_tables(*check),
    }
}

/// Applies `SPECTRE_THREADS` to the global rayon pool.
fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("SPECTRE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("SPECTRE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<Option<Error>, Failure> {
    configure_threads()?;
    if cli.verbose {
        eprintln!("spectre: {:?}", cli.command);
    }
    let report = dispatch(&cli.command)?;
    let body = match cli.format {
        Format::Text => report.text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(report.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(e)) | Err(Failure::Domain(e)) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
