use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use pikit_core::{
    compile_traced, entails, incrpi_batch_traced, load_kb, parse_clause, parse_clause_file, save_kb, Clause,
    ClauseSet, CompiledKB, Entailment, LimitExceeded, ResourceLimits, Signature, TraceRecord,
};

#[derive(Parser)]
#[command(name = "pikit", version, about = "Compile clause sets into prime implicates and query them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a clause file into a knowledge base.
    Compile {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Add the clauses of a file to a compiled knowledge base, one at a time.
    Add {
        kb: PathBuf,
        clauses: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Ask whether a clause follows from a knowledge base. Exits 0 on YES, 1 on NO.
    Query { kb: PathBuf, clause: String },
    /// Print the prime implicates of a knowledge base.
    Show { kb: PathBuf },
}

#[derive(Args)]
struct RunFlags {
    #[arg(long, env = "PIKIT_MAX_ROUNDS", default_value_t = pikit_core::closure::DEFAULT_MAX_ROUNDS)]
    max_rounds: usize,
    #[arg(long, default_value_t = pikit_core::closure::DEFAULT_MAX_CLAUSES)]
    max_clauses: usize,
    /// Write one line per consensus attempt to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

impl RunFlags {
    fn limits(&self) -> ResourceLimits {
        ResourceLimits { max_rounds: self.max_rounds, max_clauses: self.max_clauses }
    }
}

enum Failure {
    Limit(LimitExceeded),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn read_clauses(path: &Path) -> anyhow::Result<(Vec<Clause>, Signature)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = parse_clause_file(&text).map_err(|e| anyhow!("{}:{e}", path.display()))?;
    Ok((file.clauses, file.signature))
}

fn check_signature(known: &Signature, clauses: &[Clause]) -> anyhow::Result<()> {
    let mut sig = known.clone();
    for c in clauses {
        sig.observe_clause(c).map_err(|e| anyhow!("clause {c} conflicts with the knowledge base: {e}"))?;
    }
    Ok(())
}

fn write_trace(path: &Path, records: &[TraceRecord]) -> anyhow::Result<()> {
    let mut out = String::new();
    for r in records {
        writeln!(out, "{r}").unwrap();
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<CompiledKB> {
    load_kb(path).map_err(anyhow::Error::from)
}

fn save(kb: &CompiledKB, path: &Path) -> anyhow::Result<()> {
    save_kb(kb, path).map_err(anyhow::Error::from)
}

fn render_show(kb: &CompiledKB) -> String {
    let mut out = String::new();
    writeln!(out, "# {} prime implicates", kb.pi.len()).unwrap();
    for m in &kb.pi {
        let clause = if m.clause.is_empty() { "[]".to_string() } else { format!("{}.", m.clause) };
        if m.assoc.is_empty() {
            writeln!(out, "{}  {clause}", m.id).unwrap();
        } else {
            writeln!(out, "{}  {clause}  assoc {{{}}}", m.id, m.assoc).unwrap();
        }
    }
    let s = &kb.stats;
    writeln!(
        out,
        "# stats: rounds={} consensus_attempts={} subsumption_checks={}",
        s.rounds, s.consensus_attempts, s.subsumption_checks
    )
    .unwrap();
    writeln!(out, "# digest: {}", kb.source_digest).unwrap();
    out
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Compile { input, output, run } => {
            let (clauses, _) = read_clauses(&input)?;
            let set = ClauseSet::from_inputs(clauses, 1);
            let compiled = compile_traced(&set, run.limits(), run.trace.is_some()).map_err(Failure::Limit)?;
            if let Some(t) = &run.trace {
                write_trace(t, &compiled.trace)?;
            }
            save(&compiled.kb, &output)?;
            println!("compiled {} clauses into {} prime implicates", set.len(), compiled.kb.pi.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Add { kb, clauses, output, run } => {
            let base = load(&kb)?;
            let (new, _) = read_clauses(&clauses)?;
            check_signature(&base.signature, &new)?;
            let report = incrpi_batch_traced(&base, &new, run.limits(), run.trace.is_some()).map_err(|e| {
                eprintln!("error: clause {}. could not be added", new[e.index]);
                Failure::Limit(e.source)
            })?;
            if let Some(t) = &run.trace {
                let all: Vec<TraceRecord> = report.steps.iter().flat_map(|s| s.trace.iter().cloned()).collect();
                write_trace(t, &all)?;
            }
            for (c, step) in new.iter().zip(&report.steps) {
                println!("{}: {c}.", step.outcome);
            }
            save(&report.result, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Query { kb, clause } => {
            let base = load(&kb)?;
            let q = parse_clause(&clause).map_err(|e| anyhow!("query: {e}"))?;
            check_signature(&base.signature, std::slice::from_ref(&q))?;
            match entails(&base, &q) {
                Entailment::Yes { witness, subst } => {
                    let clause = if witness.clause.is_empty() { "[]".into() } else { format!("{}.", witness.clause) };
                    println!("YES");
                    println!("witness {} {clause}", witness.id);
                    println!("subst {{{subst}}}");
                    Ok(ExitCode::SUCCESS)
                }
                Entailment::Tautology => {
                    println!("YES");
                    println!("tautology");
                    Ok(ExitCode::SUCCESS)
                }
                Entailment::No => {
                    println!("NO");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Show { kb } => {
            print!("{}", render_show(&load(&kb)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Limit(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
