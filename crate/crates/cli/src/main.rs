//! `germcalc`: batch runner, REPL, and witness verifier for the exact
//! polynomial-germ engine.

mod session;

use clap::{Parser, Subcommand};
use germcalc_core::verdict::{Budgets, Verdict, Witness};
use session::{budgets_from_env, Session};
use std::io::{BufRead, Read, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "germcalc", about = "exact computation with polynomial germs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script (path or `-` for standard input); one JSON object per
    /// query on standard output, summaries on standard error.
    Run {
        path: String,
        #[arg(long)]
        enum_budget: Option<u64>,
        #[arg(long)]
        gb_budget: Option<u64>,
        #[arg(long)]
        curve_budget: Option<u64>,
    },
    /// Interactive loop over the same command set; errors are per-line.
    Repl {
        #[arg(long)]
        enum_budget: Option<u64>,
        #[arg(long)]
        gb_budget: Option<u64>,
        #[arg(long)]
        curve_budget: Option<u64>,
    },
    /// Replay a serialized verdict or witness (path or `-`) through exact
    /// arithmetic; exits 0 iff it verifies.
    VerifyWitness { path: String },
}

fn budgets(enum_budget: Option<u64>, gb: Option<u64>, curve: Option<u64>) -> Result<Budgets, String> {
    let mut b = match std::env::var("GERMCALC_BUDGETS") {
        Ok(v) => budgets_from_env(&v)?,
        Err(_) => Budgets::default(),
    };
    if let Some(e) = enum_budget {
        b.enumeration = e;
    }
    if let Some(g) = gb {
        b.groebner = g;
    }
    if let Some(c) = curve {
        b.curve = c;
    }
    Ok(b)
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))
    }
}

fn run_script(text: &str, budgets: Budgets) -> ExitCode {
    let mut session = Session::new(budgets);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    for (i, raw) in text.lines().enumerate() {
        match session.execute(i + 1, raw) {
            Ok(Some(output)) => {
                if let Some(json) = output.json {
                    writeln!(stdout.lock(), "{}", json).ok();
                }
                writeln!(stderr.lock(), "{}", output.summary).ok();
            }
            Ok(None) => {}
            Err(e) => {
                writeln!(stderr.lock(), "error: {}", e).ok();
                return ExitCode::from(1);
            }
        }
    }
    if session.engine_defect {
        writeln!(
            stderr.lock(),
            "engine defect: a theorem-of-zeros cross-check disagreed conclusively"
        )
        .ok();
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

fn repl(budgets: Budgets) -> ExitCode {
    let mut session = Session::new(budgets);
    let stdin = std::io::stdin();
    let stderr = std::io::stderr();
    let mut line_no = 0usize;
    eprint!("germcalc> ");
    for raw in stdin.lock().lines() {
        let raw = match raw {
            Ok(l) => l,
            Err(_) => break,
        };
        line_no += 1;
        match session.execute(line_no, &raw) {
            Ok(Some(output)) => {
                if let Some(json) = output.json {
                    println!("{}", json);
                }
                writeln!(stderr.lock(), "{}", output.summary).ok();
            }
            Ok(None) => {}
            Err(e) => {
                writeln!(stderr.lock(), "error: {}", e).ok();
            }
        }
        eprint!("germcalc> ");
    }
    eprintln!();
    if session.engine_defect {
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

fn verify(path: &str) -> ExitCode {
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };
    let mut checked = 0usize;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value: serde_json::Value = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(e) => {
                eprintln!("error: line {}: not JSON: {}", i + 1, e);
                return ExitCode::from(1);
            }
        };
        // accept a bare witness, a verdict, or a query object with a
        // "verdict" field (as emitted by `germcalc run`)
        let witnesses = extract_witnesses(&value);
        if witnesses.is_empty() {
            eprintln!("line {}: nothing to verify (no conclusive witness)", i + 1);
            continue;
        }
        for w in witnesses {
            match germcalc_core::verify_witness(&w) {
                Ok(()) => checked += 1,
                Err(e) => {
                    eprintln!("error: line {}: {}", i + 1, e);
                    return ExitCode::from(1);
                }
            }
        }
    }
    eprintln!("verified {} witness(es)", checked);
    ExitCode::SUCCESS
}

/// Pull every replayable witness out of a JSON value: bare witnesses,
/// verdicts, query records, and realclosure/nss reports.
fn extract_witnesses(value: &serde_json::Value) -> Vec<Witness> {
    let mut out = Vec::new();
    collect(value, &mut out);
    return out;

    fn collect(value: &serde_json::Value, out: &mut Vec<Witness>) {
        if let Ok(v) = serde_json::from_value::<Verdict>(value.clone()) {
            if v.outcome != germcalc_core::Outcome::Unknown {
                if let Some(w) = v.witness {
                    out.push(w);
                }
            }
            return;
        }
        if value.get("kind").is_some() {
            if let Ok(w) = serde_json::from_value::<Witness>(value.clone()) {
                out.push(w);
                return;
            }
        }
        match value {
            serde_json::Value::Object(map) => {
                for v in map.values() {
                    collect(v, out);
                }
            }
            serde_json::Value::Array(items) => {
                for v in items {
                    collect(v, out);
                }
            }
            _ => {}
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            path,
            enum_budget,
            gb_budget,
            curve_budget,
        } => {
            let budgets = match budgets(enum_budget, gb_budget, curve_budget) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return ExitCode::from(1);
                }
            };
            let text = match read_input(&path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return ExitCode::from(1);
                }
            };
            run_script(&text, budgets)
        }
        Command::Repl {
            enum_budget,
            gb_budget,
            curve_budget,
        } => match budgets(enum_budget, gb_budget, curve_budget) {
            Ok(b) => repl(b),
            Err(e) => {
                eprintln!("error: {}", e);
                ExitCode::from(1)
            }
        },
        Command::VerifyWitness { path } => verify(&path),
    }
}
