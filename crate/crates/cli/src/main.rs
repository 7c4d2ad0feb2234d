use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use supermat::error::Error;
use supermat::expr::{evaluate, parse, Value};
use supermat::grassmann::AlgebraSignature;
use supermat::json::{from_json, to_json, AlgebraObject};
use supermat::verify::{run_suite, RepChoice, SuiteOptions};

// writes to stdout, ignoring a closed pipe
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rep {
    Pauli,
    Dirac,
}

/// Exact operator algebra on Grassmann algebras.
#[derive(Debug, Parser)]
#[command(name = "supermat", version)]
struct Cli {
    /// Number of Grassmann generators.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Number of primed generators (defaults to n).
    #[arg(long, global = true)]
    nd: Option<usize>,
    /// Master seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trials per signature (suite default when omitted).
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression and print the result.
    Eval { expr: String },
    /// Run a verification suite: iso, projectors, clifford, susy, transpose or all.
    Verify {
        suite: String,
        #[arg(long, value_enum, default_value_t = Rep::Pauli)]
        rep: Rep,
        /// Run trials on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Evaluate an expression to a state or operator and write it as JSON.
    Export {
        expr: String,
        /// Output file (standard output when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Read a JSON document and print its contents.
    Import { file: PathBuf },
}

fn signature(cli: &Cli) -> Result<AlgebraSignature, Error> {
    let n = cli.n.unwrap_or(3);
    AlgebraSignature::new(n, cli.nd.unwrap_or(n))
}

fn print_value(v: &Value, format: Format) {
    match (format, v) {
        (Format::Text, v) => {
            let text = v.to_string();
            out!("{}\n", text.trim_end());
        }
        (Format::Json, Value::Scalar(s)) => {
            out!(
                "{}\n",
                serde_json::json!({ "kind": "scalar", "value": s.to_string() })
            );
        }
        (Format::Json, Value::State(s)) => out!("{}\n", to_json(&AlgebraObject::State(s.clone()))),
        (Format::Json, Value::Operator(o)) => {
            out!("{}\n", to_json(&AlgebraObject::Operator(o.clone())))
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Eval { expr } => {
            let sig = signature(cli)?;
            let v = evaluate(&parse(expr, sig)?, sig)?;
            print_value(&v, cli.format);
            Ok(0)
        }
        Command::Verify {
            suite,
            rep,
            sequential,
        } => {
            let mut opts = SuiteOptions {
                trials: cli.trials,
                seed: cli.seed,
                n: cli.n,
                n_d: cli.nd,
                rep: match rep {
                    Rep::Pauli => RepChoice::Pauli,
                    Rep::Dirac => RepChoice::Dirac,
                },
                ..SuiteOptions::default()
            };
            if *sequential {
                opts.exec = supermat::exec::Exec::Sequential;
            }
            let report = run_suite(suite, &opts)?;
            match cli.format {
                Format::Text => out!("{report}"),
                Format::Json => out!(
                    "{}\n",
                    serde_json::to_string_pretty(&report).expect("reports serialize")
                ),
            }
            Ok(if report.passed() { 0 } else { EXIT_FAILED })
        }
        Command::Export { expr, output } => {
            let sig = signature(cli)?;
            let obj = match evaluate(&parse(expr, sig)?, sig)? {
                Value::State(s) => AlgebraObject::State(s),
                Value::Operator(o) => AlgebraObject::Operator(o),
                Value::Scalar(_) => {
                    return Err(Error::TypeMismatch(
                        "only states and operators can be exported".into(),
                    ))
                }
            };
            let text = to_json(&obj) + "\n";
            match output {
                Some(path) => fs::write(path, text)
                    .map_err(|e| Error::MalformedDocument(format!("{}: {e}", path.display())))?,
                None => out!("{text}"),
            }
            Ok(0)
        }
        Command::Import { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| Error::MalformedDocument(format!("{}: {e}", file.display())))?;
            let v = match from_json(&text)? {
                AlgebraObject::State(s) => Value::State(s),
                AlgebraObject::Operator(o) => Value::Operator(o),
            };
            if cli.format == Format::Text {
                let sig = match &v {
                    Value::State(s) => s.sig(),
                    Value::Operator(o) => o.sig(),
                    Value::Scalar(_) => unreachable!(),
                };
                out!("{} on {sig}\n", v.kind());
            }
            print_value(&v, cli.format);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
