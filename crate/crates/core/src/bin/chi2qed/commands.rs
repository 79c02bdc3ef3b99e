//! Subcommand parameter tables and handlers.

use std::f64::consts::PI;
use std::io::{BufReader, Read};

use nalgebra::Vector3;
use rayon::prelude::*;
use serde_json::{json, Value};

use chi2qed::analytic::{
    damped_rabi_frequency, effective_linewidths, strong_coupling_spectral_criterion, strong_coupling_time_criterion,
    transmission_spectrum, DressedSpectrum, ReducedModel,
};
use chi2qed::chi2::{
    coupling_constant, overlap_integral_complex, overlap_shortcut, rotation_aligning, Chi2Tensor, FieldGrid,
};
use chi2qed::constants::C;
use chi2qed::dynamics::{
    build_lindblad, csv_row, evolve_subsystem_strided, SubsystemState, Truncation, TRACE_CSV_HEADER,
};
use chi2qed::feasibility::{platform_report, Assumptions, FeasibilityReport};
use chi2qed::mode::{CavityMode, CoupledSystem, Scheme};
use chi2qed::platform::Platform;

use crate::output::{num, Document};
use crate::params::{arg, parse_values, parse_vector, ArgSpec, Kind, Params};
use crate::CliError;

/// Largest sweep grid accepted.
const MAX_GRID_POINTS: usize = 10_000_000;

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn format_of<'a>(p: &'a Params, allowed: &[&str]) -> Result<&'a str, CliError> {
    let f = p.require("format")?;
    if allowed.contains(&f) {
        Ok(f)
    } else {
        usage(format!("--format must be one of {}, got '{f}'", allowed.join("|")))
    }
}

fn scheme_of(p: &Params) -> Result<Scheme, CliError> {
    match p.require("scheme")? {
        "two-mode" => Ok(Scheme::TwoMode),
        "three-mode" => Ok(Scheme::ThreeMode),
        other => usage(format!("--scheme must be two-mode or three-mode, got '{other}'")),
    }
}

/// Reduced model from --scheme/--tau-a/--tau-b/--omega/--alpha at the given detuning.
fn model_of(p: &Params, detuning: f64) -> Result<ReducedModel, CliError> {
    let scheme = scheme_of(p)?;
    let tau_a = p.quantity("tau-a", Kind::Time)?;
    let tau_b = p.quantity("tau-b", Kind::Time)?;
    let omega = p.quantity("omega", Kind::AngularFrequency)?;
    let model = match (scheme, p.has("alpha")) {
        (Scheme::TwoMode, true) => return usage("--alpha applies only to --scheme three-mode"),
        (Scheme::ThreeMode, false) => return usage("--alpha is required with --scheme three-mode"),
        (Scheme::TwoMode, false) => ReducedModel::two_mode(tau_a, tau_b, omega, detuning)?,
        (Scheme::ThreeMode, true) => {
            let alpha = p.quantity("alpha", Kind::Plain)?;
            ReducedModel::three_mode(tau_a, tau_b, omega, alpha, detuning)?
        }
    };
    Ok(model)
}

const MODEL_ARGS_NOTE: &str = "two-mode|three-mode";

pub static EVOLVE: &[ArgSpec] = &[
    arg("scheme", MODEL_ARGS_NOTE, Some("two-mode")),
    arg("tau-a", "Lifetime of mode a (e.g. 9.5ps)", None),
    arg("tau-b", "Lifetime of mode b (e.g. 9.5ps)", None),
    arg(
        "omega",
        "Coupling constant Omega in rad/s (or THz/GHz as cyclic frequency)",
        None,
    ),
    arg("alpha", "Seed amplitude |alpha| (three-mode only)", None),
    arg("detuning", "Detuning Delta in rad/s", Some("0")),
    arg("t-final", "End time (e.g. 100ps)", None),
    arg("dt-max", "Upper bound on the integrator step", Some("inf")),
    arg("stride", "Record every N-th step", Some("1")),
    arg("oracle", "Also integrate the full master equation: full-lindblad", None),
    arg("format", "csv|json", Some("csv")),
];

pub fn evolve(p: &Params) -> Result<Document, CliError> {
    let format = format_of(p, &["csv", "json"])?;
    let model = model_of(p, p.quantity("detuning", Kind::AngularFrequency)?)?;
    let t_final = p.quantity("t-final", Kind::Time)?;
    let dt_max = p.quantity("dt-max", Kind::Time)?;
    let stride = p.usize("stride")?;
    if stride == 0 {
        return usage("--stride must be >= 1");
    }
    let trace = evolve_subsystem_strided(&model, &SubsystemState::excited(), t_final, dt_max, stride)?;
    let oracle = match p.get("oracle") {
        None => None,
        Some("full-lindblad") => {
            let gen = build_lindblad(&model, Truncation::minimal(model.scheme))?;
            let o = gen.evolve_trace(t_final, dt_max, stride)?;
            if o.times.len() != trace.times.len() {
                return Err(CliError::Numerical("oracle and subsystem time grids differ".into()));
            }
            Some(o)
        }
        Some(other) => return usage(format!("--oracle must be full-lindblad, got '{other}'")),
    };

    if format == "json" {
        let col = |f: &dyn Fn(&SubsystemState) -> f64| -> Vec<f64> { trace.states.iter().map(f).collect() };
        let mut body = json!({
            "integrator": { "name": trace.metadata.integrator, "step": trace.metadata.step, "steps": trace.metadata.steps },
            "trace": {
                "t": trace.times,
                "rho11": col(&|s| s.rho11),
                "rho22": col(&|s| s.rho22),
                "rho33": col(&|s| s.rho33),
                "rho44": col(&|s| s.rho44),
                "imV": col(&|s| s.v),
                "trace_total": col(&|s| s.total_population()),
            }
        });
        if let Some(o) = &oracle {
            let t = &mut body["trace"];
            t["rho11_lindblad"] = json!(o.states.iter().map(|s| s.rho11).collect::<Vec<_>>());
            t["rho22_lindblad"] = json!(o.states.iter().map(|s| s.rho22).collect::<Vec<_>>());
        }
        return Ok(Document::Json(body));
    }

    let mut columns: Vec<String> = TRACE_CSV_HEADER.split(',').map(str::to_string).collect();
    if oracle.is_some() {
        columns.push("rho11_lindblad".into());
        columns.push("rho22_lindblad".into());
    }
    let rows = trace
        .times
        .iter()
        .zip(&trace.states)
        .enumerate()
        .map(|(i, (&t, s))| {
            let mut row: Vec<String> = csv_row(t, s).split(',').map(str::to_string).collect();
            if let Some(o) = &oracle {
                row.push(num(o.states[i].rho11));
                row.push(num(o.states[i].rho22));
            }
            row
        })
        .collect();
    Ok(Document::Csv { columns, rows })
}

pub static SPECTRUM: &[ArgSpec] = &[
    arg(
        "mode",
        "crossing (E and Gamma versus detuning) or lineshape (S(omega) at one detuning)",
        Some("crossing"),
    ),
    arg("scheme", MODEL_ARGS_NOTE, Some("two-mode")),
    arg("tau-a", "Lifetime of mode a", None),
    arg("tau-b", "Lifetime of mode b", None),
    arg("omega", "Coupling constant Omega (rad/s)", None),
    arg("alpha", "Seed amplitude |alpha| (three-mode only)", None),
    arg(
        "detuning",
        "Detuning list/range a:b:n[:log|lin] (crossing) or single value (lineshape)",
        Some("0"),
    ),
    arg(
        "lambda-a",
        "Wavelength of mode a; energies become absolute instead of relative to omega_a",
        None,
    ),
    arg("points", "Samples of S(omega) (lineshape)", Some("801")),
    arg(
        "window",
        "Half-width of the lineshape window in rad/s [default: splitting + 5 linewidths]",
        None,
    ),
    arg("format", "csv|json", Some("csv")),
];

/// Γ± with the g = 0, Δ = 0 limit split evenly.
fn linewidths(model: &ReducedModel) -> Result<(f64, f64), CliError> {
    if model.omega_prime() > 0.0 {
        Ok(effective_linewidths(model)?)
    } else {
        let half = 0.25 * (model.gamma1 + model.gamma2);
        Ok((half, half))
    }
}

pub fn spectrum(p: &Params) -> Result<Document, CliError> {
    let format = format_of(p, &["csv", "json"])?;
    let base = model_of(p, 0.0)?;
    let omega_a = match p.opt_quantity("lambda-a", Kind::Length)? {
        Some(l) if l > 0.0 => 2.0 * PI * C / l,
        Some(_) => return usage("--lambda-a must be > 0"),
        None => 0.0,
    };
    let detunings = parse_values(p.require("detuning")?, Kind::AngularFrequency)
        .map_err(|e| CliError::Usage(format!("--detuning: {e}")))?;
    let (columns, rows): (Vec<&str>, Vec<Vec<f64>>) = match p.require("mode")? {
        "crossing" => {
            let rows = detunings
                .iter()
                .map(|&d| {
                    let m = base.with_detuning(d)?;
                    let (gp, gm) = linewidths(&m)?;
                    // fixed ω_a: bare centre (ω_a + 2ω_b)/2 = ω_a - Δ/2
                    let centre = omega_a - 0.5 * d;
                    let op = m.omega_prime();
                    Ok(vec![d, centre + 0.5 * op, centre - 0.5 * op, op, gp, gm])
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            (
                vec!["delta", "e_plus", "e_minus", "splitting", "gamma_plus", "gamma_minus"],
                rows,
            )
        }
        "lineshape" => {
            if detunings.len() != 1 {
                return usage("--detuning must be a single value with --mode lineshape");
            }
            let d = detunings[0];
            let m = base.with_detuning(d)?;
            let spec = DressedSpectrum::new(&m, omega_a - 0.5 * d)?;
            let points = p.usize("points")?;
            if points < 2 {
                return usage("--points must be >= 2");
            }
            let window = match p.opt_quantity("window", Kind::AngularFrequency)? {
                Some(w) if w > 0.0 => w,
                Some(_) => return usage("--window must be > 0"),
                None => 0.5 * spec.omega_prime + 5.0 * spec.gamma_plus.max(spec.gamma_minus),
            };
            let centre = omega_a - 0.5 * d;
            let omegas: Vec<f64> = (0..points)
                .map(|i| centre - window + 2.0 * window * i as f64 / (points - 1) as f64)
                .collect();
            let s = transmission_spectrum(&spec, &omegas)?;
            (
                vec!["omega", "S"],
                omegas.into_iter().zip(s).map(|(w, s)| vec![w, s]).collect(),
            )
        }
        other => return usage(format!("--mode must be crossing or lineshape, got '{other}'")),
    };
    Ok(table(format, &columns, rows))
}

fn table(format: &str, columns: &[&str], rows: Vec<Vec<f64>>) -> Document {
    if format == "json" {
        let mut obj = serde_json::Map::new();
        for (j, c) in columns.iter().enumerate() {
            obj.insert(c.to_string(), json!(rows.iter().map(|r| r[j]).collect::<Vec<_>>()));
        }
        Document::Json(json!({ "columns": columns, "data": Value::Object(obj) }))
    } else {
        Document::Csv {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: rows.into_iter().map(|r| r.into_iter().map(num).collect()).collect(),
        }
    }
}

pub static FEASIBILITY: &[ArgSpec] = &[
    arg("platform", "pcdmc|micropillar|microdisk|all", Some("all")),
    arg("assumptions", "Named assumption set", Some("paper-default")),
    arg("format", "text|json", Some("text")),
];

fn platforms_of(p: &Params) -> Result<Vec<Platform>, CliError> {
    match p.require("platform")? {
        "all" => Ok(Platform::ALL.to_vec()),
        name => name
            .parse::<Platform>()
            .map(|x| vec![x])
            .map_err(|_| CliError::Usage(format!("--platform: unknown platform '{name}'"))),
    }
}

fn assumptions_of(p: &Params) -> Result<Assumptions, CliError> {
    Assumptions::by_name(p.require("assumptions")?).map_err(|e| CliError::Usage(format!("--assumptions: {e}")))
}

pub fn feasibility(p: &Params) -> Result<Document, CliError> {
    let format = format_of(p, &["text", "json"])?;
    let assumptions = assumptions_of(p)?;
    let reports = platforms_of(p)?
        .into_iter()
        .map(|pl| platform_report(&pl.preset(), &assumptions))
        .collect::<Result<Vec<FeasibilityReport>, _>>()?;
    if format == "json" {
        return Ok(Document::Json(json!({ "reports": reports })));
    }
    let body = reports
        .iter()
        .map(FeasibilityReport::to_text)
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Document::Text(body))
}

pub static SWEEP: &[ArgSpec] = &[
    arg("platform", "pcdmc|micropillar|microdisk", Some("pcdmc")),
    arg("assumptions", "Named assumption set", Some("paper-default")),
    arg(
        "n",
        "Seed photon numbers: list a,b,c or range start:stop:count[:log|lin]",
        Some("1e6"),
    ),
    arg("fc", "Seed mode-volume factors f_c", Some("1")),
    arg("q", "Quality factors [default: platform value]", None),
    arg("detuning", "Detunings in rad/s", Some("0")),
    arg("jobs", "Worker threads (0 = all cores)", Some("0")),
    arg("format", "csv|json", Some("csv")),
];

struct SweepRow {
    index: [usize; 4],
    value: [f64; 4],
    margin_time: f64,
    margin_spectral: f64,
    rabi: Option<f64>,
    splitting: f64,
}

pub fn sweep(p: &Params) -> Result<Document, CliError> {
    let format = format_of(p, &["csv", "json"])?;
    let platforms = platforms_of(p)?;
    if platforms.len() != 1 {
        return usage("--platform must name a single platform for a sweep");
    }
    let preset = platforms[0].preset();
    let assumptions = assumptions_of(p)?;
    let axis = |name: &str, kind: Kind| -> Result<Vec<f64>, CliError> {
        let v = parse_values(p.require(name)?, kind).map_err(|e| CliError::Usage(format!("--{name}: {e}")))?;
        if v.is_empty() {
            return usage(format!("--{name} is empty"));
        }
        Ok(v)
    };
    let ns = axis("n", Kind::Plain)?;
    let fcs = axis("fc", Kind::Plain)?;
    let qs = match p.get("q") {
        Some(_) => axis("q", Kind::Plain)?,
        None => vec![assumptions.quality_factor.unwrap_or(preset.quality_factor)],
    };
    let deltas = axis("detuning", Kind::AngularFrequency)?;
    let dims = [ns.len(), fcs.len(), qs.len(), deltas.len()];
    let total = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .unwrap_or(usize::MAX);
    if total > MAX_GRID_POINTS {
        return Err(CliError::Numerical(format!(
            "sweep grid has {total} points, limit is {MAX_GRID_POINTS}"
        )));
    }

    let reports = qs
        .iter()
        .map(|&q| {
            platform_report(
                &preset,
                &Assumptions {
                    quality_factor: Some(q),
                    ..assumptions.clone()
                },
            )
        })
        .collect::<Result<Vec<_>, _>>()?;

    let jobs = p.usize("jobs")?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Numerical(format!("thread pool: {e}")))?;
    let point = |k: usize| -> Result<SweepRow, CliError> {
        let i3 = k % dims[3];
        let i2 = (k / dims[3]) % dims[2];
        let i1 = (k / (dims[3] * dims[2])) % dims[1];
        let i0 = k / (dims[3] * dims[2] * dims[1]);
        let (n, fc, q, d) = (ns[i0], fcs[i1], qs[i2], deltas[i3]);
        let model = reports[i2].seeded_model(n, fc, d)?;
        Ok(SweepRow {
            index: [i0, i1, i2, i3],
            value: [n, fc, q, d],
            margin_time: strong_coupling_time_criterion(&model)?.margin,
            margin_spectral: strong_coupling_spectral_criterion(&model)?.margin,
            rabi: damped_rabi_frequency(&model),
            splitting: model.omega_prime(),
        })
    };
    // indexed parallel collect keeps lexicographic order
    let rows = pool.install(|| (0..total).into_par_iter().map(point).collect::<Result<Vec<_>, _>>())?;

    if format == "json" {
        let data: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "index": r.index, "n": r.value[0], "fc": r.value[1], "q": r.value[2], "detuning": r.value[3],
                    "margin_time": r.margin_time, "margin_spectral": r.margin_spectral,
                    "rabi_2omega_r": r.rabi, "splitting": r.splitting,
                })
            })
            .collect();
        return Ok(Document::Json(json!({ "rows": data })));
    }
    let columns = [
        "i_n",
        "i_fc",
        "i_q",
        "i_detuning",
        "n",
        "fc",
        "q",
        "detuning",
        "margin_time",
        "margin_spectral",
        "rabi_2omega_r",
        "splitting",
    ];
    let rows = rows
        .iter()
        .map(|r| {
            let mut row: Vec<String> = r.index.iter().map(|i| i.to_string()).collect();
            row.extend(r.value.iter().map(|&v| num(v)));
            row.push(num(r.margin_time));
            row.push(num(r.margin_spectral));
            row.push(r.rabi.map(num).unwrap_or_default());
            row.push(num(r.splitting));
            row
        })
        .collect();
    Ok(Document::Csv {
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows,
    })
}

fn tensor_of(p: &Params) -> Result<Chi2Tensor, CliError> {
    let chi = p.quantity("chi2", Kind::Susceptibility)?;
    let t = Chi2Tensor::zinc_blende(chi);
    match p.require("orientation")? {
        "identity" => Ok(t),
        // crystal [111] along the lab z axis
        "111" => Ok(t.rotate(&rotation_aligning(
            &Vector3::new(1.0, 1.0, 1.0).normalize(),
            &Vector3::z(),
        ))?),
        other => usage(format!("--orientation must be identity or 111, got '{other}'")),
    }
}

fn kv_document(format: &str, pairs: &[(&str, Value)]) -> Document {
    if format == "json" {
        Document::Json(Value::Object(
            pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        ))
    } else {
        let mut s = String::new();
        for (k, v) in pairs {
            let text = match v {
                Value::Number(n) => n.as_f64().map(num).unwrap_or_else(|| n.to_string()),
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k} = {text}\n"));
        }
        Document::Text(s)
    }
}

pub static CONTRACT: &[ArgSpec] = &[
    arg(
        "e1",
        "Polarisation of the first field, x,y,z (normalised on input)",
        Some("1,1,1"),
    ),
    arg("e2", "Polarisation of the second field", Some("1,1,1")),
    arg("e3", "Polarisation of the third field", Some("1,1,1")),
    arg(
        "chi2",
        "|chi2| of the zinc-blende tensor (m/V or pm/V)",
        Some("200pm/V"),
    ),
    arg(
        "orientation",
        "identity (crystal axes = lab axes) or 111 (crystal [111] along lab z)",
        Some("identity"),
    ),
    arg("format", "text|json", Some("text")),
];

pub fn contract(p: &Params) -> Result<Document, CliError> {
    let format = format_of(p, &["text", "json"])?;
    let tensor = tensor_of(p)?;
    let unit = |name: &str| -> Result<Vector3<f64>, CliError> {
        let v = Vector3::from(parse_vector(p.require(name)?).map_err(|e| CliError::Usage(format!("--{name}: {e}")))?);
        let n = v.norm();
        if !(n > 0.0 && n.is_finite()) {
            return usage(format!("--{name} must be a non-zero vector"));
        }
        Ok(v / n)
    };
    let value = tensor.contract(&unit("e1")?, &unit("e2")?, &unit("e3")?)?;
    let chi = p.quantity("chi2", Kind::Susceptibility)?;
    Ok(kv_document(
        format,
        &[("contraction", json!(value)), ("relative_to_chi2", json!(value / chi))],
    ))
}

pub static OVERLAP: &[ArgSpec] = &[
    arg("field-a", "Grid file for E_a (text or binary)", None),
    arg("field-b", "Grid file for E_b", None),
    arg("field-c", "Grid file for E_c [default: same as field-b]", None),
    arg("chi2", "|chi2| of the zinc-blende tensor", Some("200pm/V")),
    arg("orientation", "identity or 111", Some("identity")),
    arg("format", "text|json", Some("text")),
];

fn read_grid(path: &str) -> Result<FieldGrid, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read grid '{path}': {e}")))?;
    let parsed = if bytes.starts_with(b"FGRD") {
        FieldGrid::read_binary(bytes.as_slice())
    } else {
        FieldGrid::read_text(BufReader::new(bytes.as_slice().by_ref()))
    };
    parsed.map_err(|e| CliError::Usage(format!("grid '{path}': {e}")))
}

pub fn overlap(p: &Params) -> Result<Document, CliError> {
    let format = format_of(p, &["text", "json"])?;
    let tensor = tensor_of(p)?;
    let fa = read_grid(p.require("field-a")?)?;
    let fb = read_grid(p.require("field-b")?)?;
    let fc = match p.get("field-c") {
        Some(path) => read_grid(path)?,
        None => fb.clone(),
    };
    let ov = overlap_integral_complex(&tensor, &fa, &fb, &fc)?;
    Ok(kv_document(
        format,
        &[
            ("overlap_re", json!(ov.re)),
            ("overlap_im", json!(ov.im)),
            ("overlap_abs", json!(ov.norm())),
            ("cells", json!(fa.len())),
            ("cell_volume", json!(fa.cell_volume())),
        ],
    ))
}

pub static OMEGA: &[ArgSpec] = &[
    arg("scheme", MODEL_ARGS_NOTE, Some("three-mode")),
    arg("lambda-a", "Wavelength of mode a", Some("750nm")),
    arg("lambda-b", "Wavelength of mode b", Some("1.5um")),
    arg("lambda-c", "Wavelength of mode c [default: lambda-b]", None),
    arg("q", "Quality factor shared by all modes", Some("18000")),
    arg("n-index", "Refractive index", Some("3.4")),
    arg("volume-factor", "Mode volume in units of (lambda/n)^3", Some("0.7")),
    arg("fc", "Extra volume factor of the seed mode c", Some("1")),
    arg("chi2", "|chi2| used by the overlap shortcut", Some("200pm/V")),
    arg("overlap-fraction", "Overlap as a fraction of |chi2| V_a", Some("0.5")),
    arg(
        "overlap",
        "Explicit overlap integral (m^4/V); overrides the shortcut",
        None,
    ),
    arg("alpha", "Seed amplitude |alpha| (three-mode)", Some("1")),
    arg("format", "text|json", Some("text")),
];

pub fn omega(p: &Params) -> Result<Document, CliError> {
    let format = format_of(p, &["text", "json"])?;
    let scheme = scheme_of(p)?;
    let la = p.quantity("lambda-a", Kind::Length)?;
    let lb = p.quantity("lambda-b", Kind::Length)?;
    let lc = p.opt_quantity("lambda-c", Kind::Length)?.unwrap_or(lb);
    let q = p.quantity("q", Kind::Plain)?;
    let n = p.quantity("n-index", Kind::Plain)?;
    let factor = p.quantity("volume-factor", Kind::Plain)?;
    let fc = p.quantity("fc", Kind::Plain)?;
    let mode_a = CavityMode::with_volume_factor(la, q, n, factor)?;
    let mode_b = CavityMode::with_volume_factor(lb, q, n, factor)?;
    let overlap = match p.opt_quantity("overlap", Kind::Plain)? {
        Some(o) => o,
        None => overlap_shortcut(
            p.quantity("chi2", Kind::Susceptibility)?,
            mode_a.mode_volume,
            p.quantity("overlap-fraction", Kind::Plain)?,
        ),
    };
    let alpha = p.quantity("alpha", Kind::Plain)?;
    let system = match scheme {
        Scheme::TwoMode => CoupledSystem::two_mode(mode_a, mode_b, 0.0)?,
        Scheme::ThreeMode => {
            let mode_c = CavityMode::with_volume_factor(lc, q, n, factor * fc)?;
            CoupledSystem::three_mode(mode_a, mode_b, mode_c, 0.0, alpha)?
        }
    };
    let om = coupling_constant(&system, overlap)?;
    let system = system.with_coupling(om)?;
    let model = ReducedModel::from_system(&system)?;
    let mut pairs = vec![
        ("omega", json!(om)),
        ("g", json!(model.g)),
        ("tau_a", json!(model.tau_a())),
        ("tau_b", json!(model.tau_b())),
        ("tau_eff", json!(model.tau_eff())),
        ("overlap", json!(overlap)),
    ];
    if model.g > 0.0 {
        pairs.insert(2, ("half_rabi_period", json!(model.half_rabi_period())));
        pairs.push(("margin_time", json!(strong_coupling_time_criterion(&model)?.margin)));
        pairs.push((
            "margin_spectral",
            json!(strong_coupling_spectral_criterion(&model)?.margin),
        ));
    }
    Ok(kv_document(format, &pairs))
}
