//! `ccybe`: verify r-matrices, expand brackets, check the equation catalog,
//! generate family instances, run searches and test Virasoro candidates.
//!
//! Exit status: 0 when the check passes, 1 when it fails, 2 on usage or
//! parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ccybe_core::conformal::ConfTensor;
use ccybe_core::exactpoly::{parse_poly, syms, MPoly, Registry, Sym};
use ccybe_core::families::{family_rmat, vir_rmatrix, FamilyCase, FamilySpec};
use ccybe_core::rmatfile::{AlgebraName, RMatFile};
use ccybe_core::search::{content_hash_of, parse_grid, run_search, Ansatz, SearchConfig, SearchMode};
use ccybe_core::ybe::profile::COND_FULL_NAMES;
use ccybe_core::ybe::{
    ccybe_bracket, check_catalog, cond_full_residues, diagonal_of, invariance_defect, is_strict_solution,
    reduced_bracket, weak_defect, EquationCatalog,
};
use ccybe_core::{ConfAlgebra, RMat};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ccybe",
    version,
    about = "Exact checks for the conformal classical Yang-Baxter equation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Invariance,
    Weak,
    Strict,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an r-matrix file for invariance, the weak equation or the strict equation.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Check::Weak)]
        mode: Check,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print ⟦r, r⟧ before and after reduction modulo the total derivative.
    Expand { input: PathBuf },
    /// Re-derive the equation catalog and compare it with the transcription.
    Catalog {
        /// Catalog file to check instead of the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Write the r-matrix file of a family instance.
    Family {
        /// Family case (lemma1, thm5_i, thm5_ii, thm5_iii, cor6_i, cor6_ii, cor6_iii, vir).
        #[arg(required_unless_present = "spec")]
        case: Option<String>,
        /// Parameter assignments such as `alpha=1` or `lhh=s`.
        #[arg(value_name = "NAME=EXPR")]
        params: Vec<String>,
        /// Monic polynomial f(t).
        #[arg(long)]
        f: Option<String>,
        /// Virasoro coefficient B(x, y), for the vir case.
        #[arg(long)]
        b: Option<String>,
        /// Family spec file (JSON) instead of the positional arguments.
        #[arg(long, conflicts_with_all = ["case", "params", "f", "b"])]
        spec: Option<PathBuf>,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search over a grid of diagonal profiles.
    Search {
        #[arg(long, default_value = "weak")]
        mode: String,
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = AnsatzArg::Odd)]
        ansatz: AnsatzArg,
        #[arg(long, allow_hyphen_values = true, default_value = "-1,0,1")]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-1,0,1")]
        constants: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report path (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check r = B(d1, d2) v⊗v over Vir for a polynomial B(x, y).
    Vir {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Check::Weak)]
        mode: Check,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AnsatzArg {
    Odd,
    Raw,
}

/// Usage and parse errors; everything else is a pass or a fail.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<bool, Usage> {
    match cmd {
        Cmd::Verify { input, mode, format } => {
            let (alg_name, r) = load_rmat(&input)?;
            Ok(verify(alg_name, &r, mode, format))
        }
        Cmd::Expand { input } => {
            let (alg_name, r) = load_rmat(&input)?;
            expand(alg_name, &r);
            Ok(true)
        }
        Cmd::Catalog { catalog } => {
            let cat = match catalog {
                Some(path) => EquationCatalog::from_json(&read(&path)?)?,
                None => EquationCatalog::stock(),
            };
            Ok(catalog_check(&cat))
        }
        Cmd::Family {
            case,
            params,
            f,
            b,
            spec,
            out,
        } => {
            let spec = match spec {
                Some(path) => FamilySpec::from_json(&read(&path)?)?,
                None => family_spec(case.as_deref().unwrap_or_default(), &params, f, b)?,
            };
            let r = family_rmat(&spec)?;
            let algebra = if spec.case == FamilyCase::Vir {
                AlgebraName::Vir
            } else {
                AlgebraName::CurSl2
            };
            let text = RMatFile::from_rmat(algebra, &r).to_json();
            match out {
                Some(path) => fs::write(&path, text + "\n").map_err(|e| Usage(format!("{}: {e}", path.display())))?,
                None => println!("{text}"),
            }
            Ok(true)
        }
        Cmd::Search {
            mode,
            max_degree,
            ansatz,
            coeffs,
            constants,
            jobs,
            out,
        } => {
            let mode = SearchMode::parse(&mode).ok_or_else(|| Usage(format!("unknown search mode '{mode}'")))?;
            let ansatz = match ansatz {
                AnsatzArg::Odd => Ansatz::Odd,
                AnsatzArg::Raw => Ansatz::Raw,
            };
            let cfg = SearchConfig::new(max_degree, ansatz, parse_grid(&coeffs)?, parse_grid(&constants)?, mode)
                .with_workers(jobs);
            let rep = run_search(&cfg)?;
            println!("mode: {}", mode.name());
            println!("candidates scanned: {}", rep.candidates_scanned);
            println!("nodes visited: {}", rep.nodes_visited);
            println!("survivors: {}", rep.survivors.len());
            let labelled = rep.survivors.iter().filter(|s| s.family.is_some()).count();
            println!("survivors matching a normal form: {labelled}");
            println!("characterization failures: {}", rep.characterization_failures.len());
            println!("verification failures: {}", rep.verification_failures.len());
            for f in &rep.characterization_failures {
                println!("  {:?}: {}", f.profile, f.reason);
            }
            println!("content hash: {}", rep.content_hash);
            println!("time: {} ms", rep.timing_ms);
            if let Some(path) = out {
                fs::write(&path, rep.to_json() + "\n").map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            }
            Ok(rep.characterization_failures.is_empty())
        }
        Cmd::Vir { expr, mode, format } => {
            let b = parse_poly(&expr, &Registry::with_names(["x", "y"]))?;
            Ok(verify(AlgebraName::Vir, &vir_rmatrix(&b), mode, format))
        }
    }
}

fn read(path: &Path) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn load_rmat(path: &Path) -> Result<(AlgebraName, RMat), Usage> {
    let file = RMatFile::from_json(&read(path)?).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let (_, r) = file.to_rmat().map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Ok((file.algebra, r))
}

fn family_spec(case: &str, params: &[String], f: Option<String>, b: Option<String>) -> Result<FamilySpec, Usage> {
    let case = FamilyCase::parse(case).ok_or_else(|| Usage(format!("unknown family case '{case}'")))?;
    let mut spec = match b {
        Some(text) => {
            if case != FamilyCase::Vir {
                return Err(Usage("--b applies to the vir case only".into()));
            }
            FamilySpec::vir(parse_poly(&text, &Registry::with_names(["x", "y"]))?)
        }
        None => FamilySpec::new(case),
    };
    for p in params {
        let (name, value) = FamilySpec::parse_param(p)?;
        spec.params.insert(name, value);
    }
    if let Some(text) = f {
        spec.f = parse_poly(&text, &Registry::auto())?;
    }
    Ok(spec)
}

fn tuple_names(alg: &ConfAlgebra, tuple: &[u8]) -> Vec<String> {
    tuple.iter().map(|&i| alg.name_of(i)).collect()
}

fn tensor_records(alg: &ConfAlgebra, generator: Option<u8>, t: &ConfTensor) -> Vec<Value> {
    t.iter()
        .map(|(tuple, c)| {
            let mut rec = json!({ "tuple": tuple_names(alg, tuple), "poly": c.to_string() });
            if let Some(a) = generator {
                rec["generator"] = json!(alg.name_of(a));
            }
            rec
        })
        .collect()
}

fn check_name(c: Check) -> &'static str {
    match c {
        Check::Invariance => "invariance",
        Check::Weak => "weak",
        Check::Strict => "strict",
    }
}

/// Residues of the invariance relations on the diagonal, by pair name.
fn invariance_residues(alg_name: AlgebraName, r: &RMat) -> Vec<(String, MPoly)> {
    let diag = diagonal_of(r);
    match alg_name {
        AlgebraName::CurSl2 => COND_FULL_NAMES
            .iter()
            .zip(cond_full_residues(&diag))
            .map(|(n, p)| (n.to_string(), p))
            .collect(),
        AlgebraName::Vir => {
            let lam = MPoly::var(syms::lam());
            let res = &diag.at(0, 0, &lam) + &diag.at(0, 0, &-&lam);
            vec![("vv".into(), res)]
        }
    }
}

/// The Virasoro weak residue at `d3 = 0`, `d1 = -2t`, `d2 = t`.
fn vir_specialization(t: &ConfTensor) -> MPoly {
    let tt = MPoly::var(syms::t());
    t.project(&[0, 0, 0]).subst_many(&[
        (Sym::slot(3), MPoly::zero()),
        (Sym::slot(1), -&(&tt + &tt)),
        (Sym::slot(2), tt.clone()),
    ])
}

fn verify(alg_name: AlgebraName, r: &RMat, mode: Check, format: Format) -> bool {
    let alg = alg_name.algebra();
    let mut defects = Vec::new();
    let mut residues = Vec::new();
    let mut specializations = Vec::new();
    match mode {
        Check::Invariance => {
            for (a, t) in invariance_defect(&alg, r) {
                defects.extend(tensor_records(&alg, Some(a), &t));
            }
            if !defects.is_empty() {
                for (name, p) in invariance_residues(alg_name, r) {
                    if !p.is_zero() {
                        residues.push(json!({ "relation": name, "poly": p.to_string() }));
                    }
                }
            }
        }
        Check::Weak => {
            for (a, t) in weak_defect(&alg, r) {
                if alg_name == AlgebraName::Vir && !t.is_zero() {
                    specializations.push(json!({
                        "at": "d3 = 0, d1 = -2*t, d2 = t",
                        "poly": vir_specialization(&t).to_string(),
                    }));
                }
                defects.extend(tensor_records(&alg, Some(a), &t));
            }
        }
        Check::Strict => {
            let (_, red) = is_strict_solution(&alg, r);
            defects.extend(tensor_records(&alg, None, &red));
        }
    }
    let pass = defects.is_empty();
    let mut body = json!({
        "algebra": alg_label(alg_name),
        "check": check_name(mode),
        "pass": pass,
        "defects": defects,
    });
    if !residues.is_empty() {
        body["residues"] = json!(residues);
    }
    if !specializations.is_empty() {
        body["specializations"] = json!(specializations);
    }
    match format {
        Format::Json => {
            body["content_hash"] = json!(content_hash_of(&body));
            println!("{}", serde_json::to_string_pretty(&body).expect("report serializes"));
        }
        Format::Text => print_verify_text(&body),
    }
    pass
}

fn print_verify_text(body: &Value) {
    println!("algebra: {}", body["algebra"].as_str().unwrap_or_default());
    println!("check: {}", body["check"].as_str().unwrap_or_default());
    println!("result: {}", if body["pass"] == json!(true) { "pass" } else { "fail" });
    for d in body["defects"].as_array().into_iter().flatten() {
        let tuple: Vec<&str> = d["tuple"]
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(Value::as_str)
            .collect();
        let tuple = tuple.join(" ⊗ ");
        match d["generator"].as_str() {
            Some(g) => println!("defect {g} on {tuple}: {}", d["poly"].as_str().unwrap_or_default()),
            None => println!("defect {tuple}: {}", d["poly"].as_str().unwrap_or_default()),
        }
    }
    for r in body["residues"].as_array().into_iter().flatten() {
        println!(
            "residue {}: {}",
            r["relation"].as_str().unwrap_or_default(),
            r["poly"].as_str().unwrap_or_default()
        );
    }
    for s in body["specializations"].as_array().into_iter().flatten() {
        println!(
            "specialized at {}: {}",
            s["at"].as_str().unwrap_or_default(),
            s["poly"].as_str().unwrap_or_default()
        );
    }
}

fn alg_label(a: AlgebraName) -> &'static str {
    match a {
        AlgebraName::CurSl2 => "cur_sl2",
        AlgebraName::Vir => "vir",
    }
}

fn expand(alg_name: AlgebraName, r: &RMat) {
    let alg = alg_name.algebra();
    for (label, t) in [
        ("bracket", ccybe_bracket(&alg, r)),
        ("reduced", reduced_bracket(&alg, r)),
    ] {
        println!("{label}:");
        if t.is_zero() {
            println!("  0");
        }
        for (tuple, c) in t.iter() {
            println!("  {}: {c}", tuple_names(&alg, tuple).join(" ⊗ "));
        }
    }
}

fn catalog_check(cat: &EquationCatalog) -> bool {
    let checks = check_catalog(cat);
    for c in &checks {
        match (&c.scale, &c.diff, &c.error) {
            (_, _, Some(err)) => println!("{:<14} error: {err}", c.name),
            (Some(scale), _, None) => println!("{:<14} ok (scale {scale})", c.name),
            (None, Some(diff), None) => println!("{:<14} mismatch, difference of normalized forms: {diff}", c.name),
            (None, None, None) => println!("{:<14} mismatch", c.name),
        }
    }
    let bad = checks.iter().filter(|c| !c.ok()).count();
    println!("{} entries checked, {bad} failing", checks.len());
    bad == 0
}
