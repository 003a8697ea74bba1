use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lecycle::cycles::{milnor_number, Singularity};
use lecycle::equisingularity::{check_with_frame, milnor_equisingular_check, Verdict};
use lecycle::report::{self, exit, AnalysisRequest, ErrorObject, ResultCache};
use lecycle::{Error, Result};

/// Lê numbers, polar cycles and Milnor equisingularity of hypersurface singularities.
#[derive(Parser)]
#[command(name = "lecycle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: critical locus, invariants, verdict and Betti statements.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sampling: Sampling,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
        /// Reuse and store reports in this directory.
        #[arg(long, env = "LECYCLE_CACHE_DIR")]
        cache: Option<PathBuf>,
    },
    /// Milnor number of an isolated singularity.
    Milnor {
        #[command(flatten)]
        input: Input,
    },
    /// Invariants of one frame: the given one, or the first generic sample.
    LeNumbers {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Milnor equisingularity verdict with its evidence.
    CheckEquisingular {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Regression corpus commands.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Runs every entry and compares it with its expected values.
    Run {
        file: PathBuf,
        #[arg(long, env = "LECYCLE_CACHE_DIR")]
        cache: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write `<id>.json` reports and `summary.json` here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Polynomial, e.g. "x^2*y^2 + w^2".
    poly: String,
    /// Variable order; defaults to the sorted identifiers of the polynomial.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Rows separated by ';', entries by ',': row k is the linear form z_k.
    #[arg(long)]
    frame: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
    #[arg(long, default_value_t = 8)]
    max_frames: usize,
    #[arg(long, default_value_t = 5)]
    retries: usize,
}

impl Input {
    fn request(&self, sampling: Option<&Sampling>) -> AnalysisRequest {
        let mut req = AnalysisRequest::new(self.poly.clone());
        req.vars = self.vars.clone();
        req.frame = self.frame.clone();
        if let Some(s) = sampling {
            req.seed = s.seed;
            req.max_steps = s.max_steps;
            req.max_frames = s.max_frames;
            req.retry_budget = s.retries;
        }
        req
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Analyze { input, sampling, timings, cache } => {
            let mut req = input.request(Some(&sampling));
            req.timings = timings;
            let report = match cache {
                Some(dir) => ResultCache::open(dir)?.analyze(&req)?.0,
                None => report::analyze(&req)?,
            };
            if input.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(report.exit_code())
        }
        Command::Milnor { input } => {
            let (f, _) = input.request(None).resolve()?;
            let mu = milnor_number(&lecycle::Engine::default(), &f)?;
            if input.json {
                println!("{}", serde_json::json!({ "milnor_number": mu }));
            } else {
                println!("{mu}");
            }
            Ok(exit::OK)
        }
        Command::LeNumbers { input, sampling } => {
            let req = input.request(Some(&sampling));
            let (f, frame) = req.resolve()?;
            let engine = req.engine();
            let sing = Singularity::new(&engine, &f)?;
            let (frame, record) = match frame {
                Some(frame) => {
                    let record = sing.invariant_record(&engine, &frame)?;
                    (frame, record)
                }
                None => {
                    let verdict = milnor_equisingular_check(&engine, &f, &req.sampling())?;
                    match verdict.decisive {
                        Some(pair) => pair,
                        None if sing.s() == 0 => {
                            let id = lecycle::CoordinateFrame::identity(sing.nvars());
                            let record = sing.invariant_record(&engine, &id)?;
                            (id, record)
                        }
                        None => {
                            return Err(Error::GenericityFailure(
                                verdict.note.unwrap_or_else(|| "no generic frame found".into()),
                            ))
                        }
                    }
                }
            };
            if input.json {
                let value = serde_json::json!({ "frame": frame.matrix_strings(), "record": record });
                println!("{}", to_json(&value));
            } else {
                let rows: Vec<String> = frame.matrix_strings().iter().map(|r| r.join(",")).collect();
                println!("frame = {}", rows.join(";"));
                println!("s = {}", record.s);
                println!("mu0(f0) = {}", record.mu0_f0);
                println!("(Gamma.V) = {}", record.gamma_s_dot_v);
                println!("lambda^{} = {}", record.s, record.lambda_s);
                if let Some(c) = record.curve {
                    println!("gamma^1 = {}, lambda^0 = {}, tau = {}", c.gamma1, c.lambda0, c.tau);
                }
            }
            Ok(exit::OK)
        }
        Command::CheckEquisingular { input, sampling } => {
            let req = input.request(Some(&sampling));
            let (f, frame) = req.resolve()?;
            let engine = req.engine();
            let verdict = match &frame {
                Some(frame) => check_with_frame(&engine, &f, frame, &req.sampling())?,
                None => milnor_equisingular_check(&engine, &f, &req.sampling())?,
            };
            if input.json {
                println!("{}", to_json(&verdict));
            } else {
                println!("{}", verdict.verdict.as_str());
                for ev in &verdict.evidence {
                    let rows: Vec<String> = ev.frame.iter().map(|r| r.join(",")).collect();
                    println!(
                        "  frame {}: gamma_is_zero={:?} mu0={:?} lambda={:?}{}",
                        rows.join(";"),
                        ev.gamma_is_zero,
                        ev.mu0_f0,
                        ev.lambda_s,
                        ev.rejected.as_ref().map(|r| format!(" rejected: {r}")).unwrap_or_default()
                    );
                }
                if let Some(note) = &verdict.note {
                    println!("note: {note}");
                }
            }
            Ok(if verdict.verdict == Verdict::Indeterminate { exit::INDETERMINATE } else { exit::OK })
        }
        Command::Corpus { command: CorpusCommand::Run { file, cache, jobs, out } } => {
            let corpus = report::load_corpus(&file)?;
            let cache = cache.map(ResultCache::open).transpose()?;
            let summary = report::run_corpus(&corpus, cache.as_ref(), jobs)?;
            if let Some(out) = out {
                std::fs::create_dir_all(&out)?;
                for o in &summary.outcomes {
                    if let Some(r) = &o.report {
                        std::fs::write(out.join(format!("{}.json", o.id)), r.to_json())?;
                    }
                }
                std::fs::write(out.join("summary.json"), to_json(&summary))?;
            }
            println!("{}", to_json(&summary));
            Ok(summary.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { exit::OK as u8 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let obj = ErrorObject::from(&e);
            eprintln!("{}", serde_json::json!({ "error": obj }));
            ExitCode::from(obj.exit_code as u8)
        }
    }
}
