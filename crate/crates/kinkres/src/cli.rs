//! Command-line surface: flag/config-file resolution, the five
//! subcommands, and exit-code policy (0 success, 1 usage/config error,
//! 2 numerical failure, 3 verification FAIL).

use crate::kink::{
    linear_closed_form, normalize_numerically, ode_residual_sup, potential, spinor_neg,
    spinor_pos, Method, PhysicalParams, SpinorSample,
};
use crate::oracle::{
    matching_determinant, proportionality_deviation, IntegratorConfig,
};
use crate::output::{OutputRecord, Value};
use crate::resonance::{
    certified_count, find_resonances, linear_candidates, SearchBox, SolverConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or configuration: exit code 1.
    Usage(String),
    /// A computation could not be completed: exit code 2.
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    ExactPos,
    ExactNeg,
    Linear,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::ExactPos => Method::ExactPos,
            MethodArg::ExactNeg => Method::ExactNeg,
            MethodArg::Linear => Method::Linear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Pos,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Lambda,
    K,
    /// Sweep Lambda and k together (Lambda = k).
    LambdaK,
}

#[derive(Debug, Parser)]
#[command(
    name = "kinkres",
    version,
    about = "Complex resonances of the 1-D Dirac equation with a kink-like potential"
)]
pub struct Cli {
    /// Fermion mass (natural units).
    #[arg(long, global = true)]
    pub m: Option<f64>,
    /// Field strength of the kink-like potential.
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Steepness (inverse width) of the kink; must be nonzero.
    #[arg(long, global = true)]
    pub k: Option<f64>,
    /// Point-interaction strength at the origin.
    #[arg(long, global = true)]
    pub g: Option<f64>,
    /// Flat JSON file mirroring the flags; flags override the file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Residual tolerance of the root finder.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Search box as re_min,re_max,im_min,im_max.
    #[arg(long = "box", global = true, value_name = "RE_MIN,RE_MAX,IM_MIN,IM_MAX")]
    pub box_spec: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample V(x) = Lambda tanh(kx) for one or more (Lambda, k) pairs.
    Potential {
        #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 121)]
        points: usize,
        /// Comma-separated Lambda:k pairs; default 1:1,1:3,1:5.
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Search the selected spectral equation for complex roots.
    Resonances {
        #[arg(long, default_value_t = 0)]
        n_min: u32,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::ExactPos)]
        method: MethodArg,
    },
    /// Export the two-component wavefunction on a half-line grid.
    Wavefunction {
        /// Quantum number; resolved to a root of the selected method.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = MethodArg::ExactPos)]
        method: MethodArg,
        /// Explicit complex energy (overrides --n).
        #[arg(long, allow_hyphen_values = true)]
        energy_re: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        energy_im: Option<f64>,
        #[arg(long, value_enum, default_value_t = SideArg::Pos)]
        side: SideArg,
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 30.0, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 301)]
        points: usize,
        /// Rescale so the sampled |phi|^2 integrates to one.
        #[arg(long)]
        normalize: bool,
    },
    /// Cross-check closed-form roots against the integration oracle.
    Verify {
        #[arg(long, default_value_t = 0)]
        n_min: u32,
        #[arg(long, default_value_t = 1)]
        n_max: u32,
        /// Debug: shift each root by this amount before checking.
        #[arg(long, allow_hyphen_values = true)]
        perturb: Option<f64>,
    },
    /// Track the resonance trajectory along a parameter sweep.
    Sweep {
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// Comma-separated sweep values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::ExactPos)]
        method: MethodArg,
    },
}

/// Fully resolved run configuration after file/flag merging.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: PhysicalParams,
    pub format: FormatArg,
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub box_spec: Option<SearchBox>,
}

#[derive(Debug, serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    m: Option<f64>,
    lambda: Option<f64>,
    k: Option<f64>,
    g: Option<f64>,
    format: Option<String>,
    out: Option<PathBuf>,
    tol: Option<f64>,
    #[serde(rename = "box")]
    box_spec: Option<String>,
}

fn parse_box(text: &str) -> Result<SearchBox, CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("bad --box value {text:?}: {e}")))?;
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--box needs 4 comma-separated numbers, got {}",
            parts.len()
        )));
    }
    SearchBox::new(parts[0], parts[1], parts[2], parts[3], 24)
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text).map_err(|e| {
                CliError::Usage(format!("bad config {}: {e}", path.display()))
            })?
        }
        None => FileConfig::default(),
    };
    let m = cli.m.or(file.m).unwrap_or(1.0);
    let lambda = cli.lambda.or(file.lambda).unwrap_or(0.2);
    let k = cli.k.or(file.k).unwrap_or(0.1);
    let g = cli.g.or(file.g).unwrap_or(0.0);
    let params =
        PhysicalParams::new(m, lambda, k, g).map_err(|e| CliError::Usage(e.to_string()))?;
    let format = cli
        .format
        .or(match file.format.as_deref() {
            Some("csv") => Some(FormatArg::Csv),
            Some("json") => Some(FormatArg::Json),
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "config format must be csv or json, got {other:?}"
                )))
            }
            None => None,
        })
        .unwrap_or(FormatArg::Json);
    let tol = cli.tol.or(file.tol).unwrap_or(1e-12);
    if !(tol > 0.0) {
        return Err(CliError::Usage(format!("tol must be positive, got {tol}")));
    }
    let box_spec = match cli.box_spec.as_deref().or(file.box_spec.as_deref()) {
        Some(text) => Some(parse_box(text)?),
        None => None,
    };
    Ok(RunConfig {
        params,
        format: cli.format.unwrap_or(format),
        out: cli.out.clone().or(file.out),
        tol,
        box_spec,
    })
}

fn search_box(cfg: &RunConfig) -> SearchBox {
    cfg.box_spec
        .unwrap_or_else(|| SearchBox::default_for(&cfg.params))
}

fn solver(cfg: &RunConfig) -> SolverConfig {
    SolverConfig {
        tol: cfg.tol,
        dedup_radius: (cfg.tol * 1e4).max(1e-8),
        ..Default::default()
    }
}

fn echo_params(rec: &mut OutputRecord, p: &PhysicalParams) {
    rec.input("m", p.m)
        .input("lambda", p.lambda)
        .input("k", p.k)
        .input("g", p.g);
}

pub fn cmd_potential(
    _cfg: &RunConfig,
    x_min: f64,
    x_max: f64,
    points: usize,
    pairs: Option<&str>,
) -> Result<OutputRecord, CliError> {
    if !(x_min < x_max) || points < 2 {
        return Err(CliError::Usage(format!(
            "need x_min < x_max and at least 2 points, got [{x_min}, {x_max}] x {points}"
        )));
    }
    let pair_list: Vec<(f64, f64)> = match pairs {
        None => vec![(1.0, 1.0), (1.0, 3.0), (1.0, 5.0)],
        Some(text) => text
            .split(',')
            .map(|p| {
                let mut it = p.split(':');
                let l = it
                    .next()
                    .and_then(|t| t.trim().parse::<f64>().ok())
                    .ok_or_else(|| CliError::Usage(format!("bad pair {p:?}")))?;
                let k = it
                    .next()
                    .and_then(|t| t.trim().parse::<f64>().ok())
                    .ok_or_else(|| CliError::Usage(format!("bad pair {p:?}")))?;
                if it.next().is_some() {
                    return Err(CliError::Usage(format!("bad pair {p:?}")));
                }
                if k == 0.0 {
                    return Err(CliError::Usage("pair with k = 0 rejected".into()));
                }
                Ok((l, k))
            })
            .collect::<Result<_, _>>()?,
    };
    let mut rec = OutputRecord::new("potential");
    rec.input("x_min", x_min)
        .input("x_max", x_max)
        .input("points", points as i64);
    rec.input(
        "pairs",
        serde_json::json!(pair_list
            .iter()
            .map(|&(l, k)| format!("{l}:{k}"))
            .collect::<Vec<_>>()),
    );
    rec.columns.push("x".into());
    for &(l, k) in &pair_list {
        rec.columns.push(format!("V_lambda{l}_k{k}"));
    }
    for i in 0..points {
        let x = x_min + (x_max - x_min) * i as f64 / (points - 1) as f64;
        let mut row = vec![Value::Real(x)];
        for &(l, k) in &pair_list {
            let p = PhysicalParams::new(1.0, l, k, 0.0)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            row.push(Value::Real(potential(&p, x)));
        }
        rec.rows.push(row);
    }
    Ok(rec)
}

fn push_resonance_rows(rec: &mut OutputRecord, results: &[crate::kink::ResonanceResult]) {
    rec.columns = vec![
        "n".into(),
        "energy".into(),
        "residual".into(),
        "decay_ok".into(),
        "method".into(),
    ];
    for r in results {
        rec.rows.push(vec![
            Value::Int(i64::from(r.n)),
            r.energy.into(),
            Value::Real(r.residual),
            Value::Bool(r.decay_ok),
            Value::Text(r.method.label().into()),
        ]);
    }
}

pub fn cmd_resonances(
    cfg: &RunConfig,
    n_min: u32,
    n_max: u32,
    method: Method,
) -> Result<OutputRecord, CliError> {
    if n_min > n_max {
        return Err(CliError::Usage(format!(
            "n_min {n_min} exceeds n_max {n_max}"
        )));
    }
    let bx = search_box(cfg);
    let results = find_resonances(&cfg.params, n_min..=n_max, method, &bx, &solver(cfg));
    let mut rec = OutputRecord::new("resonances");
    echo_params(&mut rec, &cfg.params);
    rec.input("n_min", n_min as i64)
        .input("n_max", n_max as i64)
        .input("method", method.label())
        .input(
            "box",
            serde_json::json!([bx.re_min, bx.re_max, bx.im_min, bx.im_max]),
        );
    push_resonance_rows(&mut rec, &results);
    for n in n_min..=n_max {
        let key = format!("winding_n{n}");
        match certified_count(&cfg.params, n, method, &bx, 2000) {
            Ok(w) => rec.diagnostic(&key, w),
            Err(e) => rec.diagnostic(&key, format!("unavailable: {e}")),
        };
    }
    if cfg.params.lambda == 0.0 && method == Method::ExactPos {
        rec.diagnostic(
            "note",
            "no resonances: without a field the spectral residual is the constant -(2n+2)",
        );
    }
    if method == Method::Linear {
        let cands: Vec<serde_json::Value> =
            linear_candidates(&cfg.params, n_min..=n_max, &bx, cfg.tol)
                .into_iter()
                .map(|(n, e, flipped)| {
                    serde_json::json!({
                        "n": n,
                        "re": e.re,
                        "im": e.im,
                        "branch_flipped": flipped,
                    })
                })
                .collect();
        rec.diagnostic("linear_closed_form_candidates", serde_json::json!(cands));
    }
    Ok(rec)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_wavefunction(
    cfg: &RunConfig,
    n: Option<u32>,
    method: Method,
    energy: Option<Complex64>,
    side: SideArg,
    x_min: f64,
    x_max: f64,
    points: usize,
    normalize: bool,
) -> Result<OutputRecord, CliError> {
    if !(x_min < x_max) || points < 2 {
        return Err(CliError::Usage(format!(
            "need x_min < x_max and at least 2 points, got [{x_min}, {x_max}] x {points}"
        )));
    }
    match side {
        SideArg::Pos if x_min <= 0.0 => {
            return Err(CliError::Usage(format!(
                "grid must lie strictly inside x > 0, got x_min = {x_min}"
            )))
        }
        SideArg::Neg if x_max >= 0.0 => {
            return Err(CliError::Usage(format!(
                "grid must lie strictly inside x < 0, got x_max = {x_max}"
            )))
        }
        _ => {}
    }
    let (e, n_used) = match (energy, n) {
        (Some(e), _) => (e, n.unwrap_or(0)),
        (None, Some(n)) => {
            let bx = search_box(cfg);
            let found =
                find_resonances(&cfg.params, n..=n, method, &bx, &solver(cfg));
            let best = found
                .iter()
                .find(|r| r.decay_ok)
                .or_else(|| found.first())
                .ok_or_else(|| {
                    CliError::Numerical(format!(
                        "no {} root found for n = {n} in the search box",
                        method.label()
                    ))
                })?;
            (best.energy, n)
        }
        (None, None) => {
            return Err(CliError::Usage(
                "provide either --energy-re/--energy-im or --n".into(),
            ))
        }
    };
    let mut samples: Vec<SpinorSample> = Vec::with_capacity(points);
    for i in 0..points {
        let x = x_min + (x_max - x_min) * i as f64 / (points - 1) as f64;
        let s = match side {
            SideArg::Pos => spinor_pos(&cfg.params, e, n_used, x),
            SideArg::Neg => spinor_neg(&cfg.params, e, n_used, x),
        }
        .map_err(|err| CliError::Numerical(err.to_string()))?;
        samples.push(s);
    }
    let mut rec = OutputRecord::new("wavefunction");
    echo_params(&mut rec, &cfg.params);
    rec.input("energy", serde_json::json!({"re": e.re, "im": e.im}))
        .input("n", n_used as i64)
        .input("side", if side == SideArg::Pos { "pos" } else { "neg" })
        .input("x_min", x_min)
        .input("x_max", x_max)
        .input("points", points as i64);
    let mut scale = Complex64::new(1.0, 0.0);
    if normalize {
        scale = normalize_numerically(&samples)
            .map_err(|err| CliError::Numerical(err.to_string()))?;
        rec.diagnostic(
            "normalization_scale",
            serde_json::json!({"re": scale.re, "im": scale.im}),
        );
    }
    rec.columns = vec!["x".into(), "phi".into(), "theta".into(), "abs_phi_sq".into()];
    for s in &samples {
        let phi = scale * s.phi;
        let theta = scale * s.theta;
        rec.rows.push(vec![
            Value::Real(s.x),
            phi.into(),
            theta.into(),
            Value::Real(phi.norm_sqr()),
        ]);
    }
    Ok(rec)
}

/// Thresholds of the verification gates.
const ODE_GATE: f64 = 1e-6;
const ORACLE_GATE: f64 = 1e-6;

pub fn cmd_verify(
    cfg: &RunConfig,
    n_min: u32,
    n_max: u32,
    perturb: Option<f64>,
) -> Result<(OutputRecord, bool), CliError> {
    if n_min > n_max {
        return Err(CliError::Usage(format!(
            "n_min {n_min} exceeds n_max {n_max}"
        )));
    }
    let p = &cfg.params;
    let bx = search_box(cfg);
    let roots = find_resonances(p, n_min..=n_max, Method::ExactPos, &bx, &solver(cfg));
    let mut rec = OutputRecord::new("verify");
    echo_params(&mut rec, p);
    rec.input("n_min", n_min as i64).input("n_max", n_max as i64);
    if let Some(d) = perturb {
        rec.input("perturb", d);
    }
    rec.columns = vec![
        "n".into(),
        "energy".into(),
        "ode_residual".into(),
        "oracle_deviation".into(),
        "wronskian_abs".into(),
        "pass".into(),
    ];
    if roots.is_empty() {
        rec.diagnostic("note", "no closed-form roots in the box: vacuous PASS");
        return Ok((rec, false));
    }
    let k_abs = p.k.abs();
    let icfg = IntegratorConfig::default();
    let mut any_fail = false;
    for r in &roots {
        let e = r.energy + perturb.unwrap_or(0.0);
        let ode = ode_residual_sup(p, e, r.n, 0.1 / k_abs, 5.0 / k_abs, 50)
            .map_err(|err| CliError::Numerical(err.to_string()))?;
        let xs: Vec<f64> = (0..20)
            .map(|i| (0.2 + 2.8 * f64::from(i) / 19.0) / k_abs)
            .collect();
        let dev = proportionality_deviation(p, e, r.n, &icfg, &xs)
            .map_err(|err| CliError::Numerical(err.to_string()))?;
        let w = matching_determinant(p, e, &icfg)
            .map(|m| m.wronskian.norm())
            .map_err(|err| CliError::Numerical(err.to_string()))?;
        let pass = ode < ODE_GATE && dev < ORACLE_GATE;
        any_fail |= !pass;
        rec.rows.push(vec![
            Value::Int(i64::from(r.n)),
            e.into(),
            Value::Real(ode),
            Value::Real(dev),
            Value::Real(w),
            Value::Bool(pass),
        ]);
    }
    rec.diagnostic(
        "thresholds",
        serde_json::json!({"ode": ODE_GATE, "oracle": ORACLE_GATE, "wronskian": "reported only"}),
    );
    Ok((rec, any_fail))
}

pub fn cmd_sweep(
    cfg: &RunConfig,
    axis: AxisArg,
    values: &str,
    n: u32,
    method: Method,
) -> Result<OutputRecord, CliError> {
    let vals: Vec<f64> = values
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("bad --values list: {e}")))?;
    if vals.is_empty() {
        return Err(CliError::Usage("empty sweep".into()));
    }
    let mut rec = OutputRecord::new("sweep");
    echo_params(&mut rec, &cfg.params);
    rec.input(
        "axis",
        match axis {
            AxisArg::Lambda => "lambda",
            AxisArg::K => "k",
            AxisArg::LambdaK => "lambda-k",
        },
    )
    .input("n", n as i64)
    .input("method", method.label())
    .input("values", serde_json::json!(vals));
    rec.columns = vec![
        "value".into(),
        "n".into(),
        "energy".into(),
        "residual".into(),
        "decay_ok".into(),
        "e_linear".into(),
        "exact_linear_gap".into(),
    ];
    let mut failures: Vec<String> = Vec::new();
    for &v in &vals {
        let (l, k) = match axis {
            AxisArg::Lambda => (v, cfg.params.k),
            AxisArg::K => (cfg.params.lambda, v),
            AxisArg::LambdaK => (v, v),
        };
        let p = match PhysicalParams::new(cfg.params.m, l, k, cfg.params.g) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("value {v}: {e}"));
                continue;
            }
        };
        let bx = cfg.box_spec.unwrap_or_else(|| SearchBox::default_for(&p));
        let found = find_resonances(&p, n..=n, method, &bx, &solver(cfg));
        let e_lin = linear_closed_form(&p, n);
        match found.iter().find(|r| r.decay_ok).or_else(|| found.first()) {
            Some(r) => {
                rec.rows.push(vec![
                    Value::Real(v),
                    Value::Int(i64::from(n)),
                    r.energy.into(),
                    Value::Real(r.residual),
                    Value::Bool(r.decay_ok),
                    e_lin.into(),
                    Value::Real((r.energy - e_lin).norm()),
                ]);
            }
            None => failures.push(format!("value {v}: no root in box")),
        }
    }
    if !failures.is_empty() {
        rec.diagnostic("failures", serde_json::json!(failures));
    }
    Ok(rec)
}

/// Run the parsed command; the boolean is the verification-FAIL signal.
pub fn run(cli: &Cli) -> Result<(OutputRecord, bool), CliError> {
    let cfg = resolve_config(cli)?;
    match &cli.command {
        Command::Potential {
            x_min,
            x_max,
            points,
            pairs,
        } => Ok((
            cmd_potential(&cfg, *x_min, *x_max, *points, pairs.as_deref())?,
            false,
        )),
        Command::Resonances {
            n_min,
            n_max,
            method,
        } => Ok((
            cmd_resonances(&cfg, *n_min, *n_max, (*method).into())?,
            false,
        )),
        Command::Wavefunction {
            n,
            method,
            energy_re,
            energy_im,
            side,
            x_min,
            x_max,
            points,
            normalize,
        } => {
            let energy = match (energy_re, energy_im) {
                (None, None) => None,
                (re, im) => Some(Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0))),
            };
            Ok((
                cmd_wavefunction(
                    &cfg,
                    *n,
                    (*method).into(),
                    energy,
                    *side,
                    *x_min,
                    *x_max,
                    *points,
                    *normalize,
                )?,
                false,
            ))
        }
        Command::Verify {
            n_min,
            n_max,
            perturb,
        } => cmd_verify(&cfg, *n_min, *n_max, *perturb),
        Command::Sweep {
            axis,
            values,
            n,
            method,
        } => Ok((cmd_sweep(&cfg, *axis, values, *n, (*method).into())?, false)),
    }
}

fn emit(cfg_format: FormatArg, out: &Option<PathBuf>, rec: &OutputRecord) -> Result<(), CliError> {
    let text = match cfg_format {
        FormatArg::Json => rec
            .to_json()
            .map_err(|e| CliError::Numerical(e.to_string()))?,
        FormatArg::Csv => rec
            .to_csv()
            .map_err(|e| CliError::Numerical(e.to_string()))?,
    };
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_impl<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    match run(&cli) {
        Ok((rec, verify_failed)) => {
            if let Err(e) = emit(cfg.format, &cfg.out, &rec) {
                eprintln!("{e}");
                return 1;
            }
            if verify_failed {
                3
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Usage(_) => 1,
                CliError::Numerical(_) => 2,
            }
        }
    }
}
