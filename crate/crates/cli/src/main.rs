//! `mvam`: train, query and check lattice-valued associative memories.
//!
//! Exit statuses:
//! 0 success, 1 usage/parse error or unknown element, 2 invalid lattice,
//! 3 patterns not storable (model still written), 4 a theorem check was
//! falsified, 5 learning failed to reproduce the closed-form weights.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use mvam_core::io::{self, FormatError, ModelFile, PatternFile};
use mvam_core::learning::{self, LearningError};
use mvam_core::oracle::{
    random_family, theorem_report_with, ReportOptions, TheoremReport, VerdictStatus,
};
use mvam_core::{
    check_storability, classify, init_model_with, C0Mode, Element, Lattice, MemoryError,
    MemoryModel, PatternFamily,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "mvam", version, about = "Lattice-valued associative memory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a lattice file describes a finite distributive lattice.
    ValidateLattice { lattice: PathBuf },
    /// Build a model from a pattern family and report storability.
    Train(TrainArgs),
    /// Recall the output vector for one input.
    Recall {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated input components.
        #[arg(long)]
        x: String,
    },
    /// Recall inputs and name the winning output(s).
    Classify {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated output labels.
        #[arg(long)]
        labels: String,
        /// Comma-separated input components; repeat for several inputs.
        #[arg(long, required = true)]
        x: Vec<String>,
    },
    /// Check the solution theorems on a pattern family (JSON report).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    lattice: PathBuf,
    #[arg(long)]
    patterns: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Derive the weights by iterative learning and write its trace (JSON lines).
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Compute input thresholds with the literal double-meet form.
    #[arg(long)]
    c0_literal: bool,
    /// Learning iteration guard (default: patterns + 2).
    #[arg(long, requires = "trace")]
    max_steps: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    lattice: PathBuf,
    #[arg(long)]
    patterns: PathBuf,
    /// Also check random families on the same lattice, seeded with N.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random families in the seeded sweep.
    #[arg(long, default_value_t = 100, requires = "seed")]
    instances: usize,
    #[arg(long)]
    c0_literal: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let code = match e {
            FormatError::Lattice(_) => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<MemoryError> for Failure {
    fn from(e: MemoryError) -> Self {
        Failure::new(1, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<Arc<Lattice>, Failure> {
    let spec = io::parse_lattice_spec(&read(path)?).map_err(|e| located(path, e))?;
    Lattice::build(&spec)
        .map(Arc::new)
        .map_err(|e| Failure::new(2, format!("{}: invalid lattice: {e}", path.display())))
}

fn load_family(lattice: &Arc<Lattice>, path: &Path) -> Result<PatternFamily, Failure> {
    PatternFile::parse(&read(path)?)
        .and_then(|file| file.to_family(lattice))
        .map_err(|e| located(path, e))
}

fn load_model(path: &Path) -> Result<MemoryModel, Failure> {
    ModelFile::parse(&read(path)?)
        .and_then(|file| file.to_model())
        .map_err(|e| located(path, e))
}

fn located(path: &Path, e: FormatError) -> Failure {
    let f = Failure::from(e);
    Failure::new(f.code, format!("{}: {}", path.display(), f.message))
}

/// Parses one comma-separated input row; `row` is 1-based for messages.
fn parse_row(lattice: &Lattice, text: &str, n: usize, row: usize) -> Result<Vec<Element>, Failure> {
    let names: Vec<&str> = text.split(',').map(str::trim).collect();
    if names.len() != n {
        return Err(Failure::new(
            1,
            format!(
                "input {row}: expected {n} components, found {}",
                names.len()
            ),
        ));
    }
    names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            lattice
                .parse(name)
                .map_err(|e| Failure::new(1, format!("input {row}, x[{}]: {e}", i + 1)))
        })
        .collect()
}

fn names(lattice: &Lattice, values: &[Element]) -> String {
    values
        .iter()
        .map(|&e| lattice.display(e).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn validate_lattice(path: &Path) -> Result<u8, Failure> {
    let l = load_lattice(path)?;
    match l.generators() {
        Some(gens) => println!(
            "valid: powerset lattice, {} elements, generators {}",
            l.size(),
            gens.join(" ")
        ),
        None => println!("valid: distributive lattice, {} elements", l.size()),
    }
    Ok(0)
}

fn train(args: &TrainArgs) -> Result<u8, Failure> {
    let lattice = load_lattice(&args.lattice)?;
    let family = load_family(&lattice, &args.patterns)?;
    let mode = if args.c0_literal {
        C0Mode::Literal
    } else {
        C0Mode::PerConnection
    };
    let mut model = init_model_with(&family, mode);

    if let Some(trace_path) = &args.trace {
        let max_steps = args
            .max_steps
            .unwrap_or_else(|| learning::default_max_steps(family.len()));
        let result = learning::train(
            &family,
            model.input_thresholds(),
            model.output_thresholds(),
            max_steps,
        );
        let trace = match result {
            Ok(trace) => trace,
            Err(LearningError::NotConverged(trace)) => {
                let mut out = Vec::new();
                io::write_trace(&lattice, &trace, &mut out)?;
                write(trace_path, &String::from_utf8_lossy(&out))?;
                return Err(Failure::new(
                    5,
                    format!("learning did not converge within {max_steps} steps"),
                ));
            }
            Err(LearningError::NotAtomic) => {
                return Err(Failure::new(
                    1,
                    "--trace requires a powerset lattice (learning works on generator sets)",
                ))
            }
            Err(e) => return Err(Failure::new(1, e.to_string())),
        };
        let mut out = Vec::new();
        io::write_trace(&lattice, &trace, &mut out)?;
        write(trace_path, &String::from_utf8_lossy(&out))?;
        let learned = learning::to_elements(&lattice, trace.final_weights())
            .map_err(|e| Failure::new(1, e.to_string()))?;
        if &learned != model.weights() {
            return Err(Failure::new(
                5,
                "learned weights differ from the closed-form initialization",
            ));
        }
        model = MemoryModel::new(
            lattice.clone(),
            learned,
            model.input_thresholds().clone(),
            model.output_thresholds().to_vec(),
        )?;
    }

    write(
        &args.out,
        &io::to_canonical_json(&ModelFile::from_model(&model)),
    )?;
    let report = check_storability(&family, &model, model.output_thresholds())?;
    let mut exact = 0;
    for pair in family.pairs() {
        exact += usize::from(model.recall(&pair.x)? == pair.y);
    }
    println!("storable: {}", report.pass);
    println!("exact recall: {exact}/{} pairs", family.len());
    for v in &report.violations {
        println!("violation: {v}");
    }
    Ok(if report.pass { 0 } else { 3 })
}

fn recall(model_path: &Path, x: &str) -> Result<u8, Failure> {
    let model = load_model(model_path)?;
    let l = model.lattice();
    let input = parse_row(l, x, model.n(), 1)?;
    println!("{}", names(l, &model.recall(&input)?));
    Ok(0)
}

fn classify_inputs(model_path: &Path, labels: &str, inputs: &[String]) -> Result<u8, Failure> {
    let model = load_model(model_path)?;
    let l = model.lattice();
    let labels: Vec<String> = labels.split(',').map(|s| s.trim().to_string()).collect();
    if labels.len() != model.m() {
        return Err(Failure::new(
            1,
            format!("expected {} labels, found {}", model.m(), labels.len()),
        ));
    }
    // Parse everything first so a bad row produces no partial output.
    let rows = inputs
        .iter()
        .enumerate()
        .map(|(r, text)| parse_row(l, text, model.n(), r + 1))
        .collect::<Result<Vec<_>, _>>()?;
    for x in rows {
        let decision = classify(&model, &x, &labels)?;
        let mut line = format!(
            "{} → {}",
            names(l, &decision.outputs),
            decision.winner_labels.join("|")
        );
        if decision.ambiguous {
            line.push_str(" AMBIGUOUS");
        }
        println!("{line}");
    }
    Ok(0)
}

#[derive(Default)]
struct Counts([usize; 4]);

impl Counts {
    fn add(&mut self, status: VerdictStatus) {
        let slot = match status {
            VerdictStatus::Holds => 0,
            VerdictStatus::Vacuous => 1,
            VerdictStatus::Falsified => 2,
            VerdictStatus::Skipped => 3,
        };
        self.0[slot] += 1;
    }

    fn to_json(&self) -> Value {
        let [holds, vacuous, falsified, skipped] = self.0;
        json!({"holds": holds, "vacuous": vacuous, "falsified": falsified, "skipped": skipped})
    }
}

/// Random families over `lattice`, each dimension capped at 2 so that every
/// instance stays small enough to enumerate.
fn sweep(
    lattice: &Arc<Lattice>,
    shape: (usize, usize, usize),
    seed: u64,
    instances: usize,
    options: ReportOptions,
) -> Result<(Value, bool), Failure> {
    let (n, m, p) = (shape.0.min(2), shape.1.min(2), shape.2.min(2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [Counts::default(), Counts::default(), Counts::default()];
    let mut first = Value::Null;
    for index in 0..instances {
        let family = random_family(lattice, n, m, rng.gen_range(1..=p), &mut rng);
        let report =
            theorem_report_with(&family, options).map_err(|e| Failure::new(1, e.to_string()))?;
        counts[0].add(report.bounds.status);
        counts[1].add(report.dominance.status);
        counts[2].add(report.storability.status);
        if first.is_null() && report.any_falsified() {
            first = json!({
                "instance": index,
                "patterns": io::PatternFile::from_family(&family),
                "report": report,
            });
        }
    }
    let falsified = !first.is_null();
    Ok((
        json!({
            "seed": seed,
            "instances": instances,
            "shape": {"n": n, "m": m, "max_patterns": p},
            "upper_bound": counts[0].to_json(),
            "initial_model_solves": counts[1].to_json(),
            "storability": counts[2].to_json(),
            "first_counterexample": first,
        }),
        falsified,
    ))
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let lattice = load_lattice(&args.lattice)?;
    let family = load_family(&lattice, &args.patterns)?;
    let options = ReportOptions {
        c0_mode: if args.c0_literal {
            C0Mode::Literal
        } else {
            C0Mode::PerConnection
        },
        skip_if_too_large: true,
        ..ReportOptions::default()
    };
    let report: TheoremReport =
        theorem_report_with(&family, options).map_err(|e| Failure::new(1, e.to_string()))?;
    let mut falsified = report.any_falsified();
    let mut out = json!({ "report": report });
    if let Some(seed) = args.seed {
        let shape = (family.n(), family.m(), family.len());
        let (summary, bad) = sweep(&lattice, shape, seed, args.instances, options)?;
        out["sweep"] = summary;
        falsified |= bad;
    }
    print!("{}", io::to_canonical_json(&out));
    Ok(if falsified { 4 } else { 0 })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::ValidateLattice { lattice } => validate_lattice(&lattice),
        Command::Train(args) => train(&args),
        Command::Recall { model, x } => recall(&model, &x),
        Command::Classify { model, labels, x } => classify_inputs(&model, &labels, &x),
        Command::Verify(args) => verify(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
