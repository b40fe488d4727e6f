use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use kahler_core::algebra::GradedAlgebra;
use kahler_core::eagon_northcott::build_en;
use kahler_core::fitting::{euler_minor_identity, fitting_profile, prop31_probe};
use kahler_core::groebner::set_default_step_budget;
use kahler_core::rees::{find_test_element, rees_ideal_with};
use kahler_core::resolution::depth_and_cm;
use kahler_core::verifier::{
    cases_in_dir, corpus, en_matrix, is_matrix_file, overall_outcome, parse_matrix_file, resolve_case, run_cases,
    AlgebraSummary, CaseFile, PipelineOptions, Report, DEFAULT_ROWOPS,
};
use kahler_core::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Checks Fitting conditions, linear type and Cohen-Macaulayness of Rees
/// algebras of Kähler differentials of graded complete intersections.
#[derive(Parser, Debug)]
#[command(name = "kahler", version)]
struct Cli {
    /// Seed for test elements and random row operations.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Reduction-step budget for each Gröbner basis computation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for multi-case runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include stage timings in reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a case.
    Validate { case: String },
    /// Evaluate the F_t condition, globally and off the irrelevant ideal.
    FtCheck {
        case: String,
        #[arg(long = "t", allow_negative_numbers = true)]
        t: i64,
    },
    /// Compute the Rees ideal and decide linear type.
    LinearType { case: String },
    /// Depth and Cohen-Macaulayness of the Rees algebra.
    ReesCm { case: String },
    /// Compare I_t of the Jacobian with the minors of its last t rows.
    Prop31 {
        case: String,
        #[arg(long)]
        rowops: Option<usize>,
    },
    /// Dump an Eagon-Northcott complex.
    EnDump { input: String },
    /// Run the full pipeline on a case file or a directory of them.
    Verify { path: String },
    /// Run the embedded corpus.
    Corpus,
}

fn error_code(e: &Error) -> u8 {
    if e.is_resource() {
        3
    } else {
        match e {
            Error::ContextMismatch(_) | Error::ResolutionTooLong(_) | Error::Json(_) => 2,
            _ => 4,
        }
    }
}

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, text: String, value: serde_json::Value) {
        match self.format {
            Format::Text => print!("{}", text),
            Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        }
    }

    fn reports(&self, reports: &[Report]) {
        match self.format {
            Format::Text => {
                for r in reports {
                    print!("{}", r.to_text());
                }
            }
            Format::Json => println!("{}", serde_json::to_string_pretty(reports).expect("json")),
        }
    }
}

fn load_algebra(arg: &str) -> Result<(CaseFile, GradedAlgebra)> {
    let case = resolve_case(arg)?;
    let alg = case.algebra()?;
    Ok((case, alg))
}

fn validate(out: &Out, arg: &str) -> Result<u8> {
    let case = resolve_case(arg)?;
    match case.algebra() {
        Ok(alg) => {
            let s = AlgebraSummary::of(&alg);
            let text = format!("{}: valid (n = {}, c = {}, d = {})\n", case.name, s.n, s.c, s.d);
            out.emit(text, json!({ "case": case.name, "valid": true, "violations": [], "algebra": s }));
            Ok(0)
        }
        Err(Error::Validation(v)) => {
            let mut text = format!("{}: invalid\n", case.name);
            for x in &v {
                text.push_str(&format!("  {} [{}]\n", x, x.hypothesis()));
            }
            out.emit(text, json!({ "case": case.name, "valid": false, "violations": v, "algebra": null }));
            Ok(4)
        }
        Err(e) => Err(e),
    }
}

fn ft_check(out: &Out, arg: &str, t: i64) -> Result<u8> {
    let (case, alg) = load_algebra(arg)?;
    let profile = fitting_profile(&alg, &alg.jacobian_presentation()?)?;
    let global = profile.ft(t);
    let off = profile.ft_off_irrelevant(t);
    let mut text = format!("{}: F_{} {}, off the irrelevant ideal {}\n", case.name, t, word(global.holds), word(off.holds));
    for l in &profile.levels {
        let need = l.i as i64 - profile.rank as i64 + t + 1;
        text.push_str(&format!("  i = {}: height {:?}, required {}, m-primary {}\n", l.i, l.height, need, l.m_primary));
    }
    out.emit(text, json!({ "case": case.name, "t": t, "profile": profile, "global": global, "off_irrelevant": off }));
    Ok(0)
}

fn word(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn linear_type(out: &Out, arg: &str, seed: Option<u64>) -> Result<u8> {
    let (case, alg) = load_algebra(arg)?;
    if !alg.is_reduced()? {
        return Err(Error::NotReduced);
    }
    let seed = seed.unwrap_or_else(|| case.seed(0));
    let g = find_test_element(&alg, seed)?;
    let rees = rees_ideal_with(&alg, &g)?;
    let torsion: Vec<String> = rees.torsion.iter().map(|p| p.to_string()).collect();
    let mut text = format!("{}: linear type {}\n  test element {}\n", case.name, rees.is_linear_type(), g);
    for t in &torsion {
        text.push_str(&format!("  torsion {}\n", t));
    }
    let basis: Vec<String> = rees.ideal.groebner()?.iter().map(|p| p.to_string()).collect();
    out.emit(
        text,
        json!({
            "case": case.name,
            "seed": seed,
            "linear_type": rees.is_linear_type(),
            "test_element": g.to_string(),
            "rees_basis": basis,
            "torsion": torsion,
        }),
    );
    Ok(0)
}

fn rees_cm(out: &Out, arg: &str, seed: Option<u64>) -> Result<u8> {
    let (case, alg) = load_algebra(arg)?;
    if !alg.is_reduced()? {
        return Err(Error::NotReduced);
    }
    let seed = seed.unwrap_or_else(|| case.seed(0));
    let rees = rees_ideal_with(&alg, &find_test_element(&alg, seed)?)?;
    let report = depth_and_cm(&rees.ideal)?;
    let text = format!(
        "{}: dim {}, pd {}, depth {}, Cohen-Macaulay {}\n  betti {:?}\n",
        case.name, report.dim, report.pd, report.depth, report.cohen_macaulay, report.betti
    );
    out.emit(text, json!({ "case": case.name, "seed": seed, "depth": report }));
    Ok(0)
}

fn prop31(out: &Out, arg: &str, rowops: Option<usize>, seed: Option<u64>) -> Result<u8> {
    let (case, alg) = load_algebra(arg)?;
    let seed = seed.unwrap_or_else(|| case.seed(0));
    let rowops = rowops.unwrap_or(if case.mode.rowops > 0 { case.mode.rowops } else { DEFAULT_ROWOPS });
    let record = prop31_probe(&alg, rowops, seed)?;
    let euler = euler_minor_identity(&alg)?;
    let text = format!(
        "{}: t = {}, I_t(theta) = I_t(theta') {}, height {:?}, violations {} of {}\n  euler minor identity {}\n",
        case.name,
        record.t,
        record.original.equal,
        record.original.height_all,
        record.violations(),
        1 + record.row_operations.len(),
        word(euler.vanishes)
    );
    let failed = record.violations() > 0 || !euler.vanishes;
    out.emit(text, json!({ "case": case.name, "seed": seed, "record": record, "euler_minor": euler }));
    Ok(if failed { 2 } else { 0 })
}

fn en_dump(out: &Out, arg: &str) -> Result<u8> {
    let path = Path::new(arg);
    let file_text = if path.is_file() { Some(std::fs::read_to_string(path)?) } else { None };
    let (name, source, m) = match file_text {
        Some(text) if is_matrix_file(&text) => (arg.to_string(), "matrix_file".to_string(), parse_matrix_file(&text)?),
        _ => {
            let (case, alg) = load_algebra(arg)?;
            let (source, m) = en_matrix(&alg)?;
            (case.name, source, m)
        }
    };
    let en = build_en(&m)?;
    let is_complex = en.complex.is_complex()?;
    let text = format!("{} ({}), {}x{}\n{}is complex: {}\n", name, source, en.t, en.m, en.complex.to_text(), is_complex);
    out.emit(
        text,
        json!({
            "input": name,
            "source": source,
            "t": en.t,
            "m": en.m,
            "is_complex": is_complex,
            "first_row_d2_columns": en.first_row_d2_columns(),
            "complex": en.complex.dump(),
        }),
    );
    Ok(if is_complex { 0 } else { 2 })
}

fn verify(out: &Out, cases: Vec<CaseFile>, opts: &PipelineOptions) -> u8 {
    let reports = run_cases(&cases, opts);
    out.reports(&reports);
    overall_outcome(&reports).exit_code() as u8
}

fn run(cli: Cli) -> Result<u8> {
    let out = Out { format: cli.format };
    let opts = PipelineOptions { seed: cli.seed, rowops: None, timings: cli.timings };
    match cli.command {
        Command::Validate { case } => validate(&out, &case),
        Command::FtCheck { case, t } => ft_check(&out, &case, t),
        Command::LinearType { case } => linear_type(&out, &case, cli.seed),
        Command::ReesCm { case } => rees_cm(&out, &case, cli.seed),
        Command::Prop31 { case, rowops } => prop31(&out, &case, rowops, cli.seed),
        Command::EnDump { input } => en_dump(&out, &input),
        Command::Verify { path } => {
            let p = Path::new(&path);
            let cases = if p.is_dir() { cases_in_dir(p)? } else { vec![resolve_case(&path)?] };
            Ok(verify(&out, cases, &opts))
        }
        Command::Corpus => Ok(verify(&out, corpus(), &opts)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(b) = cli.budget {
        set_default_step_budget(b);
    }
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("kahler: cannot configure {} workers: {}", j, e);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("kahler: {}", e);
            ExitCode::from(error_code(&e))
        }
    }
}
