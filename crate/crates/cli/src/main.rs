use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use ncf_core::circuit::{emit, load_json, metrics, CostModel, Format, Mode};
use ncf_core::grouping::{MIN_WINDOW_SINGLE, MIN_WINDOW_TWO};
use ncf_core::hamlib::{self, LatticeSpec, Model};
use ncf_core::oracle::oracle_cap;
use ncf_core::pipeline::{compile, verify_program};
use ncf_core::PauliTerm;

const VERIFY_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "ncf",
    version,
    about = "Fuse Pauli rotations behind Clifford frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a lattice benchmark as a term file.
    Gen {
        #[arg(long)]
        model: Model,
        /// Lattice shape, `AxB` or `AxBxC`.
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 1.0)]
        dt: f64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile and print a metrics report.
    Compile(RunArgs),
    /// Compile (or load) a program and check it against the dense oracle.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        max_qubits: Option<usize>,
        /// Check this JSON program instead of compiling one.
        #[arg(long)]
        program: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = "ncf1q")]
    mode: Mode,
    /// Window size; 4 for ncf1q and 128 for ncf2q by default.
    #[arg(long)]
    window: Option<usize>,
    #[arg(long, default_value_t = 0.001)]
    eps: f64,
    #[arg(long, default_value_t = 1.0)]
    dt: f64,
    /// Term file (`<coefficient> <pauli>` per line).
    #[arg(long, conflicts_with_all = ["model", "dims"])]
    input: Option<PathBuf>,
    #[arg(long, requires = "dims")]
    model: Option<Model>,
    #[arg(long, requires = "model")]
    dims: Option<String>,
    /// Write the compiled program here.
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long, default_value = "qasm")]
    format: Format,
    /// Accepted for reproducible harness runs; compilation is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Self { code: 1, error }
    }
}

impl From<ncf_core::Error> for Failure {
    fn from(e: ncf_core::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn lattice_spec(model: Model, dims: &str, dt: f64) -> anyhow::Result<LatticeSpec> {
    let mut spec = LatticeSpec::new(model, &hamlib::parse_dims(dims)?)?;
    spec.dt = dt;
    Ok(spec)
}

impl RunArgs {
    fn validate(&self) -> anyhow::Result<()> {
        CostModel::with_eps(self.eps)?;
        if !(self.dt.is_finite() && self.dt != 0.0) {
            bail!("dt must be finite and non-zero");
        }
        let min = match self.mode {
            Mode::Baseline => return Ok(()),
            Mode::Ncf1q => MIN_WINDOW_SINGLE,
            Mode::Ncf2q => MIN_WINDOW_TWO,
        };
        if let Some(w) = self.window {
            if w < min {
                bail!("window {w} is below the minimum {min} for {}", self.mode);
            }
        }
        Ok(())
    }

    fn terms(&self) -> anyhow::Result<Vec<PauliTerm>> {
        match (&self.input, self.model, &self.dims) {
            (Some(path), _, _) => hamlib::load_terms(path, self.dt)
                .with_context(|| format!("reading {}", path.display())),
            (None, Some(model), Some(dims)) => {
                Ok(hamlib::generate(&lattice_spec(model, dims, self.dt)?)?)
            }
            _ => bail!("pass --input or both --model and --dims"),
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(model: Model, dims: &str, dt: f64, out: Option<&Path>) -> Result<(), Failure> {
    let spec = lattice_spec(model, dims, dt)?;
    let terms = hamlib::generate(&spec)?;
    write_out(out, &hamlib::format_terms(&terms, dt))?;
    eprintln!("{} terms on {} qubits", terms.len(), spec.num_qubits());
    Ok(())
}

fn cmd_compile(args: &RunArgs) -> Result<(), Failure> {
    args.validate()?;
    let terms = args.terms()?;
    let compiled = compile(&terms, args.mode, args.window)?;
    let report = metrics(
        &compiled.program,
        &CostModel::with_eps(args.eps)?,
        terms.len(),
    );
    if let Some(path) = &args.emit {
        write_out(Some(path), &emit(&compiled.program, args.format)?)?;
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?
    );
    eprintln!(
        "{}: {} terms -> {} unitaries in {} layers, est. T-count {:.1}",
        args.mode, report.n_paulis, report.unitary_count, report.unitary_depth, report.est_t_count
    );
    Ok(())
}

fn cmd_verify(
    args: &RunArgs,
    max_qubits: Option<usize>,
    program: Option<&Path>,
) -> Result<(), Failure> {
    args.validate()?;
    let cap = oracle_cap();
    let max_qubits = max_qubits.unwrap_or(cap);
    if max_qubits > cap {
        return Err(
            anyhow::anyhow!("--max-qubits {max_qubits} exceeds the oracle cap {cap}").into(),
        );
    }
    let terms = args.terms()?;
    let n = terms.first().map(PauliTerm::num_qubits).unwrap_or(0);
    if n > max_qubits {
        return Err(anyhow::anyhow!("{n} qubits exceeds --max-qubits {max_qubits}").into());
    }
    let program = match program {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            load_json(&text)?
        }
        None => compile(&terms, args.mode, args.window)?.program,
    };
    let report = verify_program(&program, &terms, VERIFY_TOL)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?
    );
    if report.passed {
        eprintln!("PASS: {}", report.message);
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            error: anyhow::anyhow!("verification failed: {}", report.message),
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("warn")),
        )
        .with_writer(std::io::stderr)
        .init();

    let result = match &cli.command {
        Command::Gen {
            model,
            dims,
            dt,
            out,
        } => cmd_gen(*model, dims, *dt, out.as_deref()),
        Command::Compile(args) => cmd_compile(args),
        Command::Verify {
            run,
            max_qubits,
            program,
        } => cmd_verify(run, *max_qubits, program.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
