use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cocycle_cli::commands::{
    cmd_check, cmd_classify, cmd_normal_form, cmd_simulate, load_document, parse_convention,
    CliError, LatticeSpec, NormalFormMode, SimulateArgs, Task,
};
use cocycle_cli::document::Document;
use cocycle_cli::report::{Format, RunReport};

#[derive(Parser)]
#[command(name = "cocycle", version, about = "Cocycle states over (Z_2)^m: checks, normal forms, censuses, simulations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Cocycle and multilinearity verdicts for a tensor or cochain document.
    Check {
        #[arg(long)]
        input: String,
    },
    /// Diagonal, disjoint or edge-disjoint normal form of a tensor.
    NormalForm {
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "disjoint")]
        mode: String,
        /// Fiducial cell for edge-disjoint mode, as i,j,k.
        #[arg(long)]
        fiducial: Option<String>,
    },
    /// Orbit census of all m x m x m tensors.
    Classify {
        #[arg(long)]
        m: usize,
        /// adopted, gauge-only or with-color-permutations.
        #[arg(long, default_value = "adopted")]
        convention: String,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Build a cocycle state on a lattice and run one task on it.
    Simulate {
        #[arg(long)]
        input: Option<String>,
        /// chain-N or WxH.
        #[arg(long)]
        lattice: String,
        /// symmetry, reduce, embed, schmidt or sweep.
        #[arg(long)]
        task: String,
        /// Seeds random measurement outcomes for the reduce task.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        allow_large: bool,
    },
}

fn read(path: &str) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    load_document(path, &text)
}

fn parse_cell(s: &str) -> Result<(usize, usize, usize), CliError> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("fiducial {s:?} is not i,j,k")))?;
    match parts[..] {
        [i, j, k] => Ok((i, j, k)),
        _ => Err(CliError::Usage(format!("fiducial {s:?} is not i,j,k"))),
    }
}

fn run(cli: &Cli) -> Result<RunReport, CliError> {
    match &cli.command {
        Command::Check { input } => cmd_check(&read(input)?),
        Command::NormalForm {
            input,
            mode,
            fiducial,
        } => {
            let fiducial = fiducial.as_deref().map(parse_cell).transpose()?;
            cmd_normal_form(&read(input)?, mode.parse::<NormalFormMode>()?, fiducial)
        }
        Command::Classify {
            m,
            convention,
            threads,
            allow_large,
        } => cmd_classify(*m, parse_convention(convention)?, *threads, *allow_large),
        Command::Simulate {
            input,
            lattice,
            task,
            seed,
            m,
            allow_large,
        } => {
            let doc = input.as_deref().map(read).transpose()?;
            let args = SimulateArgs {
                lattice: lattice.parse::<LatticeSpec>()?,
                task: task.parse::<Task>()?,
                seed: *seed,
                m: *m,
                allow_large: *allow_large,
            };
            cmd_simulate(doc.as_ref(), &args)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Structured => Format::Structured,
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
