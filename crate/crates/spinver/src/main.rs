use clap::{Parser, Subcommand, ValueEnum};
use spinver::cli::{
    cmd_all, cmd_classify, cmd_clifford, cmd_embed, cmd_lemma_cohomo, cmd_stabilizer, CliError,
    RunOptions, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use spinver::report::Report;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "spinver",
    about = "Exact verification of real spin bundle classification over CP^3 \
             and the embedding certificate for real projective 7-space in R^11"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: OutputFormat,
    /// Seed for the randomized (but reproducible) exact sample checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of exact samples per randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Irreducible-representation table and structural checks for Cl_n.
    Clifford {
        /// Algebra dimension, 1..=12.
        #[arg(long)]
        n: i64,
    },
    /// Solve the stabilizer condition for a set of omega indices.
    Stabilizer {
        /// Comma-separated form indices in 1..=6, e.g. 1,2,6.
        #[arg(long, value_delimiter = ',', required = true)]
        forms: Vec<usize>,
    },
    /// Verify the characteristic-class identities for one n in 3..=6.
    LemmaCohomo {
        #[arg(long)]
        n: u32,
        /// Use the repeated-entry transcription of the n = 6 weight
        /// list; the identities are then expected to fail.
        #[arg(long)]
        typo_weights: bool,
    },
    /// Count the spin bundles with the given characteristic data.
    Classify {
        /// Bundle rank, >= 2.
        #[arg(long)]
        n: u32,
        /// Coefficient of x^2 in p1.
        #[arg(long)]
        p1: i64,
        /// Euler coefficient: of x^2 for rank 4, of x^3 for rank 6.
        #[arg(long)]
        euler: Option<i64>,
    },
    /// Run the embedding pipeline and print the certificate.
    Embed {
        /// Select the non-divisible candidate instead; the run must
        /// fail at step (iii).
        #[arg(long)]
        tamper: bool,
    },
    /// Every suite in sequence; nonzero exit on any failure.
    All {
        /// Inject the repeated-entry weight list into the n = 6 case.
        #[arg(long)]
        typo_weights: bool,
    },
}

fn emit(report: &Report, format: OutputFormat) -> ExitCode {
    match format {
        OutputFormat::Text => print!("{}", report.to_text()),
        OutputFormat::Json => println!("{}", report.to_json()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions { seed: cli.seed, samples: cli.samples };
    let result: Result<Report, CliError> = match cli.command {
        Command::Clifford { n } => cmd_clifford(n, &opts),
        Command::Stabilizer { forms } => cmd_stabilizer(&forms, &opts),
        Command::LemmaCohomo { n, typo_weights } => cmd_lemma_cohomo(n, typo_weights, &opts),
        Command::Classify { n, p1, euler } => cmd_classify(n, p1, euler, &opts),
        Command::Embed { tamper } => Ok(cmd_embed(tamper, &opts)),
        Command::All { typo_weights } => Ok(cmd_all(typo_weights, &opts)),
    };
    match result {
        Ok(report) => emit(&report, cli.output),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
