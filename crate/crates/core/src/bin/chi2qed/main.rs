//! `chi2qed` — simulations, spectra, sweeps and feasibility reports for
//! χ⁽²⁾-coupled microcavities.
//!
//! Every subcommand accepts `--config <file.json>` (a flat map of flag names
//! to values) and `--output <path>`; flags win over config values, which win
//! over defaults. Exit codes: 0 ok, 2 usage, 3 numerical/resource failure.

mod commands;
mod output;
mod params;

use std::process::ExitCode;

use clap::{Arg, ArgMatches, Command};

use params::{add_args, ArgSpec, Params};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
        }
    }
}

impl From<chi2qed::Error> for CliError {
    fn from(e: chi2qed::Error) -> Self {
        match e {
            chi2qed::Error::Domain(_) | chi2qed::Error::Format(_) => CliError::Usage(e.to_string()),
            chi2qed::Error::Resource(_) | chi2qed::Error::Io(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(format!("i/o: {e}"))
    }
}

type Handler = fn(&Params) -> Result<output::Document, CliError>;

struct Subcommand {
    path: &'static [&'static str],
    about: &'static str,
    specs: &'static [ArgSpec],
    run: Handler,
}

const SUBCOMMANDS: &[Subcommand] = &[
    Subcommand {
        path: &["evolve"],
        about: "Integrate the damped population dynamics from |1,0>",
        specs: commands::EVOLVE,
        run: commands::evolve,
    },
    Subcommand {
        path: &["spectrum"],
        about: "Dressed-state energies and linewidths versus detuning, or a two-Lorentzian lineshape",
        specs: commands::SPECTRUM,
        run: commands::spectrum,
    },
    Subcommand {
        path: &["feasibility"],
        about: "Platform strong-coupling estimates",
        specs: commands::FEASIBILITY,
        run: commands::feasibility,
    },
    Subcommand {
        path: &["sweep"],
        about: "Criterion margins over a Cartesian grid of n, f_c, Q and detuning",
        specs: commands::SWEEP,
        run: commands::sweep,
    },
    Subcommand {
        path: &["coupling", "contract"],
        about: "Contract the chi(2) tensor with three polarisation vectors",
        specs: commands::CONTRACT,
        run: commands::contract,
    },
    Subcommand {
        path: &["coupling", "overlap"],
        about: "Overlap integral of three sampled mode profiles",
        specs: commands::OVERLAP,
        run: commands::overlap,
    },
    Subcommand {
        path: &["coupling", "omega"],
        about: "Coupling constant and half Rabi period from mode parameters",
        specs: commands::OMEGA,
        run: commands::omega,
    },
];

fn common_args(cmd: Command) -> Command {
    cmd.arg(
        Arg::new("config")
            .long("config")
            .value_name("FILE")
            .help("JSON document of flag values"),
    )
    .arg(
        Arg::new("output")
            .long("output")
            .short('o')
            .value_name("FILE")
            .help("Write to FILE instead of stdout"),
    )
}

fn build_cli() -> Command {
    let mut root = Command::new("chi2qed")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Strong coupling between single photons in chi(2) microcavities")
        .subcommand_required(true)
        .arg_required_else_help(true);
    let mut coupling = Command::new("coupling")
        .about("Tensor contraction, overlap and coupling-constant utilities")
        .subcommand_required(true);
    for sc in SUBCOMMANDS {
        let cmd = common_args(add_args(
            Command::new(*sc.path.last().unwrap()).about(sc.about),
            sc.specs,
        ));
        if sc.path.len() == 1 {
            root = root.subcommand(cmd);
        } else {
            coupling = coupling.subcommand(cmd);
        }
    }
    root.subcommand(coupling)
}

fn find(matches: &ArgMatches) -> Option<(&'static Subcommand, &ArgMatches)> {
    let (name, sub) = matches.subcommand()?;
    let (path, leaf): (Vec<&str>, &ArgMatches) = match sub.subcommand() {
        Some((inner, leaf)) if name == "coupling" => (vec![name, inner], leaf),
        _ => (vec![name], sub),
    };
    SUBCOMMANDS
        .iter()
        .find(|s| s.path == path.as_slice())
        .map(|s| (s, leaf))
}

fn load_config(path: &str) -> Result<serde_json::Map<String, serde_json::Value>, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config '{path}': {e}")))?;
    match serde_json::from_str(&text) {
        Ok(serde_json::Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::Usage(format!("config '{path}' must be a JSON object"))),
        Err(e) => Err(CliError::Usage(format!("config '{path}': {e}"))),
    }
}

fn run(matches: &ArgMatches) -> Result<(), CliError> {
    let (sc, leaf) = find(matches).ok_or_else(|| CliError::Usage("unknown command".into()))?;
    let config = leaf.get_one::<String>("config").map(|p| load_config(p)).transpose()?;
    let params = Params::resolve(sc.specs, leaf, config.as_ref())?;
    let doc = (sc.run)(&params)?;
    let text = doc.render(&sc.path.join(" "), &params)?;
    match leaf.get_one::<String>("output") {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let matches = match build_cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&matches) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chi2qed: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
