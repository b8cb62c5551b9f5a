use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gwakit::commands::{self, Format, GwaSource, Selection, Settings, XModFilters};
use gwakit::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(
    name = "gwakit",
    version,
    about = "Enumerate and verify groups with action and their crossed modules"
)]
struct Cli {
    /// Largest group order any command will accept.
    #[arg(long, global = true, env = "GWAKIT_MAX_ORDER", default_value_t = gwakit_core::DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Worker threads for parallel stages (defaults to one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Groups with action on a single group.
    #[command(subcommand)]
    Gwa(GwaCommand),
    /// Crossed modules of groups with action.
    #[command(subcommand)]
    Xmod(XModCommand),
    /// Simplicial groups with action.
    #[command(subcommand)]
    Simplicial(SimplicialCommand),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GwaInput {
    /// Group spec such as `8:5`, `A4` or `klein4`.
    #[arg(long)]
    group: Option<String>,
    /// A gwa_list catalog.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

impl GwaInput {
    fn source(self) -> GwaSource {
        match (self.group, self.input) {
            (Some(g), _) => GwaSource::Spec(g),
            (None, Some(p)) => GwaSource::Catalog(p),
            (None, None) => unreachable!("clap enforces one input"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum GwaCommand {
    /// List every action of a group on itself; prints the count.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a gwa_list catalog into isomorphism classes.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Ideal counts, or the ideals of one structure with `--index`.
    Ideals {
        #[command(flatten)]
        input: GwaInput,
        #[arg(long)]
        index: Option<usize>,
    },
    /// Morphisms between two structures of one list.
    Morphisms {
        #[command(flatten)]
        input: GwaInput,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Source group spec.
    #[arg(long)]
    source: String,
    /// Restrict to one structure on the source group.
    #[arg(long)]
    source_index: Option<usize>,
    /// Range group spec.
    #[arg(long)]
    range: String,
    /// Restrict to one structure on the range group.
    #[arg(long)]
    range_index: Option<usize>,
}

impl PairArgs {
    fn selections(&self) -> (Selection, Selection) {
        (
            Selection {
                spec: self.source.clone(),
                index: self.source_index,
            },
            Selection {
                spec: self.range.clone(),
                index: self.range_index,
            },
        )
    }
}

#[derive(Subcommand, Debug)]
enum XModCommand {
    /// Count derived action pairs.
    Actions {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Enumerate pre-crossed and crossed modules.
    Enumerate {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        filter: Vec<FilterArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify an xmod_enumeration catalog.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SimplicialCommand {
    /// Send each crossed module to simplicial form and back.
    Roundtrip {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    /// Count crossed modules whose source and range satisfy Condition 1.
    C1,
}

fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let settings = Settings {
        max_order: cli.max_order,
        jobs: cli.jobs,
    };
    match cli.command {
        Command::Gwa(GwaCommand::Enumerate { group, out: path }) => {
            commands::gwa_enumerate(&group, path.as_deref(), &settings, out).map(drop)
        }
        Command::Gwa(GwaCommand::Classify {
            input,
            out: path,
            format,
        }) => {
            let format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
            commands::classify(&input, path.as_deref(), format, &settings, out).map(drop)
        }
        Command::Gwa(GwaCommand::Ideals { input, index }) => {
            commands::gwa_ideals(&input.source(), index, &settings, out)
        }
        Command::Gwa(GwaCommand::Morphisms { input, from, to }) => {
            commands::gwa_morphisms(&input.source(), from, to, &settings, out)
        }
        Command::Xmod(XModCommand::Actions { pair }) => {
            let (s, r) = pair.selections();
            commands::xmod_actions(&s, &r, &settings, out)
        }
        Command::Xmod(XModCommand::Enumerate {
            pair,
            filter,
            out: path,
        }) => {
            let (s, r) = pair.selections();
            let filters = XModFilters {
                c1: filter.contains(&FilterArg::C1),
            };
            commands::xmod_enumerate(&s, &r, filters, path.as_deref(), &settings, out).map(drop)
        }
        Command::Xmod(XModCommand::Check { input }) => commands::xmod_check(&input, &settings, out),
        Command::Simplicial(SimplicialCommand::Roundtrip { input, out: path }) => {
            commands::simplicial_roundtrip(&input, path.as_deref(), &settings, out).map(drop)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let result = run(cli, &mut lock).and_then(|()| {
        lock.flush().map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
