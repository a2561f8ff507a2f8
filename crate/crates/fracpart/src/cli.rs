use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, IdentityScheme, Knobs, Mode, Outcome, UsageError};
use crate::output::{emit, Cell, Format, OutputSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED_CHECK: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fracpart",
    version,
    about = "Reciprocally weighted partition counts"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Significant digits for floats (default: shortest round-trip form).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=40))]
    pub precision: Option<u32>,
    /// Write to PATH instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Largest N for exact rational tables.
    #[arg(long, global = true, default_value_t = fracpart_core::frac_dp::DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
    /// Largest n for brute-force enumeration.
    #[arg(long, global = true, default_value_t = fracpart_core::partition::DEFAULT_ENUMERATION_CAP)]
    pub enumeration_cap: usize,
    /// Kahan-compensated accumulation in the float sweep.
    #[arg(long, global = true)]
    pub compensated: bool,
    /// Run independent verification checks on separate threads.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Bfile,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SchemeArg {
    Cycle,
    Bell,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of b(n,k) by largest part.
    Bnk {
        /// Last row n.
        #[arg(long)]
        n: usize,
        /// First row (defaults to n).
        #[arg(long)]
        from: Option<usize>,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Compare float against exact for every row up to n instead of tabulating.
        #[arg(long)]
        compare: bool,
    },
    /// b(0..N).
    Bseries {
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Float)]
        mode: ModeArg,
    },
    /// b(n)/n, optionally only the last WINDOW indices.
    Ratio {
        #[arg(long)]
        to: usize,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Float)]
        mode: ModeArg,
    },
    /// Two-point c0 + c1/n fit and gaps to exp(-gamma).
    Fit {
        #[arg(long)]
        to: usize,
        #[arg(long, requires = "n2")]
        n1: Option<usize>,
        #[arg(long, requires = "n1")]
        n2: Option<usize>,
    },
    /// Samples of x -> b(n, floor(n x)) and their trapezoid integral.
    Fx {
        #[arg(long)]
        n: usize,
        /// Grid step 1/m, written as 0.01 or 1/100.
        #[arg(long, default_value = "0.01")]
        resolution: String,
    },
    /// Generating-function cross-checks against the recurrence.
    SeriesVerify {
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Cycle-index and factorial-cycle identities.
    Identities {
        #[arg(long, value_enum, default_value_t = SchemeArg::All)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 40)]
        to: usize,
    },
    /// Brute-force enumeration against the recurrence and the product.
    Oracle {
        #[arg(long, default_value_t = 30)]
        to: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Moebius function and Mertens prefix sums.
    Mertens {
        #[arg(long)]
        to: usize,
    },
}

impl GlobalArgs {
    fn spec(&self) -> OutputSpec {
        OutputSpec {
            format: match self.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
                FormatArg::Bfile => Format::Bfile,
            },
            precision: self.precision.map(|p| p as usize),
            destination: self.output.clone(),
        }
    }

    fn knobs(&self) -> Knobs {
        Knobs {
            exact_cap: self.exact_cap,
            enumeration_cap: self.enumeration_cap,
            compensated: self.compensated,
            parallel: self.parallel,
        }
    }
}

/// Dispatches a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome, UsageError> {
    let knobs = cli.global.knobs();
    match &cli.command {
        Command::Bnk {
            n,
            from,
            k_min,
            k_max,
            mode,
            compare,
        } => {
            if *compare {
                commands::bnk_compare(*n, &knobs)
            } else {
                commands::bnk(
                    from.unwrap_or(*n),
                    *n,
                    *k_min,
                    *k_max,
                    (*mode).into(),
                    &knobs,
                )
            }
        }
        Command::Bseries { to, mode } => commands::bseries(*to, (*mode).into(), &knobs),
        Command::Ratio { to, window, mode } => {
            commands::ratio(*to, *window, (*mode).into(), &knobs)
        }
        Command::Fit { to, n1, n2 } => commands::fit(*to, n1.zip(*n2), &knobs),
        Command::Fx { n, resolution } => commands::fx(*n, commands::parse_resolution(resolution)?),
        Command::SeriesVerify { n } => commands::series_verify(*n, &knobs),
        Command::Identities { scheme, to } => {
            let scheme = match scheme {
                SchemeArg::Cycle => IdentityScheme::Cycle,
                SchemeArg::Bell => IdentityScheme::Bell,
                SchemeArg::All => IdentityScheme::All,
            };
            commands::identities(scheme, *to, &knobs)
        }
        Command::Oracle { to, mode } => commands::oracle(*to, (*mode).into(), &knobs),
        Command::Mertens { to } => commands::mertens_table(*to),
    }
}

/// Parses `args`, runs the command, writes the output, and returns the exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("fracpart: {e}");
            return EXIT_USAGE;
        }
    };
    report(&outcome, &cli.global.spec())
}

/// Writes the outcome's table and maps it to an exit status, naming failed checks on stderr.
pub fn report(outcome: &Outcome, spec: &OutputSpec) -> u8 {
    if let Err(e) = emit(&outcome.table, spec) {
        eprintln!("fracpart: {e}");
        return EXIT_USAGE;
    }
    if outcome.passed {
        return EXIT_OK;
    }
    for row in &outcome.table.rows {
        if let (Some(Cell::Text(status)), Some(Cell::Text(name))) = (row.first(), row.get(1)) {
            if status == "FAIL" {
                eprintln!("fracpart: FAIL {name}");
            }
        }
    }
    EXIT_FAILED_CHECK
}
