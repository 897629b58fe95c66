//! `pco`: evaluate, transform, and check probabilistic causal formulas on
//! multiteam models. Exit codes: 0 for true/valid/success, 1 for
//! false/countermodel, 2 for usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use pco_core::{
    build_canonical, check_entailment, check_validity, normal_form, push_prob_inward,
    CausalMultiteam, EnumerationBudget, PcoFormula, SampleBudget, SchemaId, Signature, Verdict,
};

use pco_cli::{
    parse_description, parse_formula, parse_intervention, parse_model, print_formula,
    print_rational, write_model,
};

#[derive(Parser)]
#[command(name = "pco", version, about = "Causal multiteam model checker")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a formula on a model; prints true or false.
    Eval { model: PathBuf, formula: String },
    /// Print the exact probability of a row-level formula.
    Prob { model: PathBuf, formula: String },
    /// Apply an intervention `X=1,Y=2` and print or save the result.
    Intervene {
        model: PathBuf,
        spec: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Keep only the rows satisfying a row-level formula.
    Observe {
        model: PathBuf,
        formula: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a formula to normal form.
    Nf {
        formula: String,
        #[arg(long)]
        sig: PathBuf,
        /// Also push probability atoms through counterfactuals.
        #[arg(long)]
        push_prob: bool,
    },
    /// Print the weak contradictory negation of a formula.
    Negc {
        formula: String,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Build the canonical model of a weight description.
    Canonical {
        description: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Search all models up to a row bound for a countermodel.
    Validity {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        max_rows: usize,
        formula: String,
    },
    /// Like validity, but assuming premises.
    Entails {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        max_rows: usize,
        /// May be given multiple times.
        #[arg(long = "premise")]
        premises: Vec<String>,
        formula: String,
    },
    /// Check sampled instances of an axiom schema for validity.
    AxiomCheck {
        #[arg(long)]
        schema: String,
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        max_rows: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for countermodel files (defaults to the working directory).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

type AppResult<T> = Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> AppResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_model(path: &Path) -> AppResult<CausalMultiteam> {
    Ok(parse_model(&read(path)?)?)
}

fn load_sig(path: &Path) -> AppResult<Signature> {
    Ok(pco_cli::parse_signature(&read(path)?)?)
}

/// Prints to stdout; a closed pipe ends output quietly instead of panicking.
fn emit(text: impl std::fmt::Display) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = write!(out, "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: stdout: {e}");
            std::process::exit(2);
        }
    }
}

fn emitln(text: impl std::fmt::Display) {
    emit(format_args!("{text}\n"));
}

fn emit_model(model: &CausalMultiteam, out: Option<&Path>) -> AppResult<()> {
    let text = write_model(model);
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => emit(text),
    }
    Ok(())
}

fn print_countermodel(model: &CausalMultiteam) {
    emitln("# countermodel");
    emit(write_model(model));
}

fn run(cmd: Cmd) -> AppResult<ExitCode> {
    match cmd {
        Cmd::Eval { model, formula } => {
            let model = load_model(&model)?;
            let phi = parse_formula(&formula, model.sig())?;
            let holds = model.eval_pco(&phi)?;
            emitln(holds);
            Ok(ExitCode::from(u8::from(!holds)))
        }
        Cmd::Prob { model, formula } => {
            let model = load_model(&model)?;
            let alpha = pco_cli::parse_co_formula(&formula, model.sig())?;
            let p = model.prob(&alpha)?;
            emitln(print_rational(&p));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Intervene { model, spec, out } => {
            let model = load_model(&model)?;
            let spec = parse_intervention(&spec, model.sig())?;
            emit_model(&model.intervene(&spec)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Observe {
            model,
            formula,
            out,
        } => {
            let model = load_model(&model)?;
            let alpha = pco_cli::parse_co_formula(&formula, model.sig())?;
            emit_model(&model.observe(&alpha)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Nf {
            formula,
            sig,
            push_prob,
        } => {
            let sig = load_sig(&sig)?;
            let phi = parse_formula(&formula, &sig)?;
            let mut nf = normal_form(&sig, &phi)?;
            if push_prob {
                nf = push_prob_inward(&nf)?;
            }
            emitln(print_formula(&nf, &sig));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Negc { formula, sig } => {
            let sig = load_sig(&sig)?;
            let phi = parse_formula(&formula, &sig)?;
            emitln(print_formula(&phi.neg_c(&sig), &sig));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Canonical { description, out } => {
            let desc = parse_description(&read(&description)?)?;
            let model = build_canonical(&desc)?;
            emit_model(&model, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validity {
            sig,
            max_rows,
            formula,
        } => {
            let sig = load_sig(&sig)?;
            let phi = parse_formula(&formula, &sig)?;
            let budget = EnumerationBudget::new(sig, max_rows);
            match check_validity(&phi, &budget)? {
                Verdict::ValidOnBudget { models_checked } => {
                    emitln(format_args!("VALID on all {models_checked} models"));
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Counterexample(model) => {
                    print_countermodel(&model);
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Cmd::Entails {
            sig,
            max_rows,
            premises,
            formula,
        } => {
            let sig = load_sig(&sig)?;
            let premises = premises
                .iter()
                .map(|p| parse_formula(p, &sig))
                .collect::<Result<Vec<PcoFormula>, _>>()?;
            let phi = parse_formula(&formula, &sig)?;
            let budget = EnumerationBudget::new(sig, max_rows);
            match check_entailment(&premises, &phi, &budget)? {
                Verdict::ValidOnBudget { models_checked } => {
                    emitln(format_args!("VALID on all {models_checked} models"));
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Counterexample(model) => {
                    print_countermodel(&model);
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Cmd::AxiomCheck {
            schema,
            sig,
            samples,
            max_rows,
            seed,
            out_dir,
        } => {
            let id = SchemaId::from_str(&schema)?;
            let sig = load_sig(&sig)?;
            let sample = SampleBudget::new(samples, seed);
            let budget = EnumerationBudget::new(sig, max_rows);
            let check = pco_core::check_schema(id, &sample, &budget)?;
            let dir = out_dir.unwrap_or_else(|| PathBuf::from("."));
            let mut all_valid = true;
            for (k, (_, verdict)) in check.results.iter().enumerate() {
                match verdict {
                    Verdict::ValidOnBudget { .. } => {
                        emitln(format_args!("SCHEMA {id} instance {k}: VALID"));
                    }
                    Verdict::Counterexample(model) => {
                        all_valid = false;
                        let path = dir.join(format!("{id}-instance-{k}.model"));
                        fs::write(&path, write_model(model))
                            .map_err(|e| format!("{}: {e}", path.display()))?;
                        emitln(format_args!(
                            "SCHEMA {id} instance {k}: FAIL {}",
                            path.display()
                        ));
                    }
                }
            }
            Ok(if all_valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
