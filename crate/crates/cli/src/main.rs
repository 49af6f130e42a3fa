//! `dlens`: validate, construct, classify and property-check delta lenses
//! and indexed split multivalued functions stored as JSON.
//!
//! Exit codes: 0 success, 1 a law or property failed, 2 bad input,
//! 3 a bounded computation could not decide.

mod commands;
mod doc;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dlens_core::fincat::PushoutBound;
use dlens_core::gen::GenConfig;

use commands::Output;
use doc::Workspace;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Undecided(String),
}

impl From<dlens_core::Error> for CliError {
    fn from(e: dlens_core::Error) -> Self {
        match e {
            dlens_core::Error::Undecided(_) => CliError::Undecided(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FactorKind {
    /// Initial functor followed by a discrete opfibration.
    Comprehensive,
    /// Identity-on-objects functor followed by a fully faithful lens.
    #[value(name = "ioo_dopf", alias = "ioo-dopf")]
    IooDopf,
    /// Surjective-on-objects lens followed by a fully faithful, injective-on-objects lens.
    #[value(name = "epi_mono", alias = "epi-mono")]
    EpiMono,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Category,
    Functor,
    Lens,
    Dopf,
    Indexed,
    Smf,
    Cell,
}

impl GenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Category => "category",
            GenKind::Functor => "functor",
            GenKind::Lens => "lens",
            GenKind::Dopf => "dopf",
            GenKind::Indexed => "indexed",
            GenKind::Smf => "smf",
            GenKind::Cell => "cell",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dlens", version, about = "Delta lenses, split multivalued functions and their indexed form")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON files. Categories and split multivalued functions may be
    /// referenced from other inputs by file stem.
    #[arg(long, short, global = true, num_args = 1..)]
    input: Vec<PathBuf>,

    /// Directory for output files; without it results go to stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// `dot` writes Graphviz files next to the JSON ones.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, default_value_t = 100)]
    count: usize,

    /// Word-length bound for pushouts (overrides DLENS_PUSHOUT_WORD_BOUND).
    #[arg(long, global = true)]
    bound: Option<usize>,

    /// Keep going on inputs that fail validation where the command allows it.
    #[arg(long, global = true)]
    allow_invalid: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate every input and report violated laws.
    Validate,
    /// Category of elements of indexed data, as a delta lens.
    Elements,
    /// Fibres of a delta lens, as indexed data.
    Fibres,
    /// Check that elements and fibres invert each other on the input.
    Roundtrip,
    /// Decide every class predicate at both levels and compare.
    Classify,
    /// Factor a functor or lens.
    Factor {
        #[arg(long, value_enum)]
        kind: FactorKind,
    },
    /// Loose composite of the input split multivalued functions, in order.
    ComposeSmf,
    /// Reindex indexed data along a functor into its base.
    Pullback,
    /// Transport indexed data along a functor out of its base.
    Pushforward,
    /// Generate random valid instances.
    Gen {
        #[arg(long, value_enum, default_value = "lens")]
        kind: GenKind,
        #[arg(long)]
        max_objects: Option<usize>,
        #[arg(long)]
        max_hom: Option<usize>,
        #[arg(long)]
        max_fibre: Option<usize>,
        #[arg(long)]
        max_morphisms: Option<usize>,
        #[arg(long)]
        acyclic: bool,
    },
    /// Run property suites over seeded random instances.
    CheckLaws {
        /// Suite names; `all` or nothing runs every suite.
        suites: Vec<String>,
        /// Print the available suites and exit.
        #[arg(long)]
        list: bool,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let mut out = Output::new(cli.output.clone(), cli.format == Format::Dot);
    let cfg = GenConfig { seed: cli.seed, count: cli.count, ..GenConfig::default() };
    let ok = match cli.command {
        Command::Gen { kind, max_objects, max_hom, max_fibre, max_morphisms, acyclic } => {
            let cfg = GenConfig {
                max_objects: max_objects.unwrap_or(cfg.max_objects),
                max_hom: max_hom.unwrap_or(cfg.max_hom),
                max_fibre: max_fibre.unwrap_or(cfg.max_fibre),
                max_morphisms: max_morphisms.unwrap_or(cfg.max_morphisms),
                acyclic,
                ..cfg
            };
            commands::generate(&cfg, kind, &mut out)?
        }
        Command::CheckLaws { list: true, .. } => {
            commands::list_suites();
            return Ok(true);
        }
        Command::CheckLaws { suites, .. } => commands::check_laws(&suites, &cfg, &mut out)?,
        command => {
            let ws = Workspace::load(&cli.input)?;
            match command {
                Command::Validate => commands::validate(&ws, &mut out)?,
                Command::Elements => commands::elements_cmd(&ws, cli.allow_invalid, &mut out)?,
                Command::Fibres => commands::fibres_cmd(&ws, &mut out)?,
                Command::Roundtrip => commands::roundtrip(&ws, &mut out)?,
                Command::Classify => commands::classify_cmd(&ws, &mut out)?,
                Command::Factor { kind } => commands::factor(&ws, kind, &mut out)?,
                Command::ComposeSmf => commands::compose(&ws, &mut out)?,
                Command::Pullback => commands::pullback(&ws, &mut out)?,
                Command::Pushforward => {
                    let mut bound = PushoutBound::from_env();
                    if let Some(b) = cli.bound {
                        bound.word_length = b;
                    }
                    commands::pushforward(&ws, bound, &mut out)?
                }
                Command::Gen { .. } | Command::CheckLaws { .. } => unreachable!(),
            }
        }
    };
    out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Undecided(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
