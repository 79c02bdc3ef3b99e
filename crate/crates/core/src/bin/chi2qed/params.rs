//! Flag/config resolution and unit-suffixed quantity parsing.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use clap::{Arg, ArgMatches, Command};
use serde_json::Value;

use crate::CliError;

/// One command-line parameter.
pub struct ArgSpec {
    pub name: &'static str,
    pub help: &'static str,
    pub default: Option<&'static str>,
}

pub const fn arg(name: &'static str, help: &'static str, default: Option<&'static str>) -> ArgSpec {
    ArgSpec { name, help, default }
}

pub fn add_args(mut cmd: Command, specs: &'static [ArgSpec]) -> Command {
    for s in specs {
        let mut help = s.help.to_string();
        if let Some(d) = s.default {
            help.push_str(&format!(" [default: {d}]"));
        }
        cmd = cmd.arg(
            Arg::new(s.name)
                .long(s.name)
                .value_name("VALUE")
                .help(help)
                .allow_hyphen_values(true),
        );
    }
    cmd
}

/// Fully resolved parameters of one run; flags beat config values beat defaults.
#[derive(Debug, Clone, Default)]
pub struct Params {
    values: BTreeMap<&'static str, String>,
}

impl Params {
    pub fn resolve(
        specs: &'static [ArgSpec],
        matches: &ArgMatches,
        config: Option<&serde_json::Map<String, Value>>,
    ) -> Result<Self, CliError> {
        if let Some(cfg) = config {
            for key in cfg.keys() {
                if !specs.iter().any(|s| s.name == key) {
                    return Err(CliError::Usage(format!(
                        "config key '{key}' is not a parameter of this command"
                    )));
                }
            }
        }
        let mut values = BTreeMap::new();
        for s in specs {
            let from_flag = matches.get_one::<String>(s.name).cloned();
            let from_config = config.and_then(|c| c.get(s.name)).map(json_to_string);
            if let Some(v) = from_flag.or(from_config).or(s.default.map(str::to_string)) {
                values.insert(s.name, v);
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    pub fn has(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn require(&self, name: &str) -> Result<&str, CliError> {
        self.get(name)
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{name}")))
    }

    pub fn quantity(&self, name: &str, kind: Kind) -> Result<f64, CliError> {
        parse_quantity(self.require(name)?, kind).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
    }

    pub fn opt_quantity(&self, name: &str, kind: Kind) -> Result<Option<f64>, CliError> {
        self.get(name).map(|_| self.quantity(name, kind)).transpose()
    }

    pub fn usize(&self, name: &str) -> Result<usize, CliError> {
        let raw = self.require(name)?;
        raw.parse::<usize>()
            .map_err(|_| CliError::Usage(format!("--{name}: expected a non-negative integer, got '{raw}'")))
    }

    /// `# key = value` lines.
    pub fn header_lines(&self) -> Vec<String> {
        self.values.iter().map(|(k, v)| format!("{k} = {v}")).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.values
                .iter()
                .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                .collect(),
        )
    }
}

fn json_to_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// seconds; fs, ps, ns, us, ms, s
    Time,
    /// metres; pm, nm, um, μm, mm, m
    Length,
    /// rad/s; plain numbers or `rad/s`, while Hz-suffixed values are cyclic
    /// frequencies converted as ω = 2πf
    AngularFrequency,
    /// m/V; pm/V
    Susceptibility,
    Plain,
}

pub fn parse_quantity(raw: &str, kind: Kind) -> Result<f64, String> {
    let s = raw.trim();
    let split = s
        .char_indices()
        .find(|&(i, c)| c.is_alphabetic() && !is_exponent(s, i) || c == 'μ' || c == '/')
        .map(|(i, _)| i)
        .unwrap_or(s.len());
    let (num, unit) = s.split_at(split);
    let unit = unit.trim();
    if s == "inf" {
        return Ok(f64::INFINITY);
    }
    let value: f64 = num
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse '{raw}' as a number"))?;
    // (factor, power of ten); negative powers divide by an exact 10^k so
    // that e.g. 930nm is the same double as 930e-9
    let (factor, pow10): (f64, i32) = match (kind, unit) {
        (_, "") => (1.0, 0),
        (Kind::Time, "s") => (1.0, 0),
        (Kind::Time, "ms") => (1.0, -3),
        (Kind::Time, "us") | (Kind::Time, "μs") => (1.0, -6),
        (Kind::Time, "ns") => (1.0, -9),
        (Kind::Time, "ps") => (1.0, -12),
        (Kind::Time, "fs") => (1.0, -15),
        (Kind::Length, "m") => (1.0, 0),
        (Kind::Length, "mm") => (1.0, -3),
        (Kind::Length, "um") | (Kind::Length, "μm") => (1.0, -6),
        (Kind::Length, "nm") => (1.0, -9),
        (Kind::Length, "pm") => (1.0, -12),
        (Kind::AngularFrequency, "rad/s") => (1.0, 0),
        (Kind::AngularFrequency, "THz") => (2.0 * PI, 12),
        (Kind::AngularFrequency, "GHz") => (2.0 * PI, 9),
        (Kind::AngularFrequency, "MHz") => (2.0 * PI, 6),
        (Kind::AngularFrequency, "Hz") => (2.0 * PI, 0),
        (Kind::Susceptibility, "m/V") => (1.0, 0),
        (Kind::Susceptibility, "pm/V") => (1.0, -12),
        (_, u) => return Err(format!("unit '{u}' not accepted here")),
    };
    if value.is_nan() {
        return Err(format!("'{raw}' is not a number"));
    }
    let scaled = if pow10 >= 0 {
        value * 10f64.powi(pow10)
    } else {
        value / 10f64.powi(-pow10)
    };
    Ok(factor * scaled)
}

/// True when the `e`/`E` at byte `i` is the exponent of a float literal.
fn is_exponent(s: &str, i: usize) -> bool {
    let b = s.as_bytes();
    if !(b[i] == b'e' || b[i] == b'E') || i == 0 {
        return false;
    }
    let prev_digit = b[i - 1].is_ascii_digit() || b[i - 1] == b'.';
    let next = b.get(i + 1).copied();
    let next_ok = match next {
        Some(c) if c.is_ascii_digit() => true,
        Some(b'+') | Some(b'-') => b.get(i + 2).is_some_and(|c| c.is_ascii_digit()),
        _ => false,
    };
    prev_digit && next_ok
}

/// Parses a comma list (`1,10,100`) or a range `start:stop:count[:log|lin]`.
pub fn parse_values(raw: &str, kind: Kind) -> Result<Vec<f64>, String> {
    if raw.contains(':') {
        let parts: Vec<&str> = raw.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("range '{raw}' must be start:stop:count[:log|lin]"));
        }
        let start = parse_quantity(parts[0], kind)?;
        let stop = parse_quantity(parts[1], kind)?;
        let count: usize = parts[2].parse().map_err(|_| format!("bad count in '{raw}'"))?;
        if count == 0 {
            return Err("range count must be >= 1".into());
        }
        let log = match parts.get(3).copied() {
            None | Some("lin") => false,
            Some("log") => true,
            Some(other) => return Err(format!("unknown spacing '{other}'")),
        };
        if log && !(start > 0.0 && stop > 0.0) {
            return Err("log ranges need positive endpoints".into());
        }
        Ok((0..count)
            .map(|i| {
                let f = if count == 1 { 0.0 } else { i as f64 / (count - 1) as f64 };
                if log {
                    10f64.powf(start.log10() + f * (stop.log10() - start.log10()))
                } else {
                    start + f * (stop - start)
                }
            })
            .collect())
    } else {
        raw.split(',').map(|p| parse_quantity(p, kind)).collect()
    }
}

pub fn parse_vector(raw: &str) -> Result<[f64; 3], String> {
    let v = raw
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad vector component '{p}'"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != 3 {
        return Err(format!("vector '{raw}' needs 3 components"));
    }
    Ok([v[0], v[1], v[2]])
}
