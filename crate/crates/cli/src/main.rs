//! Command-line front end: spectra, scans, gap maps, crossing loci, SUSY
//! reports, grid dumps, unit conversions, and the factorization table, all
//! emitted as self-describing CSV or JSON.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use pendulum_core::error::Error as CoreError;
use pendulum_core::grid::{
    effective_potential, solve_grid, EffectivePotentialSpec, GridMethod, GridSolution,
    GridWavefunction, ThetaGrid, DEFAULT_GRID_POINTS,
};
use pendulum_core::model::{
    eta_from_molecule, zeta_from_molecule, InteractionParams, MoleculeSpec,
};
use pendulum_core::spectral::{self, Spectrum};
use pendulum_core::susy::{
    analytic_wavefunction, classify, intertwine_down, partner_pair, susy_point,
    free_rotor_ladder, SusyCase, SusyClass,
};
use pendulum_core::topology;

const SCHEMA_VERSION: &str = "pendulum-csv-1";
const DEFAULT_ENERGY_CUTOFF: f64 = 10000.0;

// ---------------------------------------------------------------------------
// argument surface

#[derive(Parser, Debug)]
#[command(
    name = "pendulum",
    version,
    about = "Spherical quantum pendulum under orienting and aligning fields: \
             spectra, observables, eigensurface topology, SUSY factorizations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// output file; stdout when omitted
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// worker threads for parameter scans (default: PENDULUM_THREADS or all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Basis,
    Grid,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Backend {
    Adapted,
    SineDvr,
}

impl Backend {
    fn grid_method(self) -> GridMethod {
        match self {
            Backend::Adapted => GridMethod::Adapted,
            Backend::SineDvr => GridMethod::SineDvr,
        }
    }
}

/// Inclusive-endpoint range `start:stop:count`, or a single scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Range {
    start: f64,
    stop: f64,
    count: usize,
}

impl Range {
    fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = |what: &str| format!("{what} in range '{s}' (expected start:stop:count or a scalar)");
        match parts.as_slice() {
            [x] => {
                let v: f64 = x.parse().map_err(|_| bad("bad scalar"))?;
                Ok(Range { start: v, stop: v, count: 1 })
            }
            [a, b, n] => {
                let start: f64 = a.parse().map_err(|_| bad("bad start"))?;
                let stop: f64 = b.parse().map_err(|_| bad("bad stop"))?;
                let count: usize = n.parse().map_err(|_| bad("bad count"))?;
                if count == 0 {
                    return Err(bad("count must be >= 1"));
                }
                if count == 1 && start != stop {
                    return Err(bad("count 1 needs start == stop"));
                }
                if !(start.is_finite() && stop.is_finite()) {
                    return Err(bad("non-finite endpoint"));
                }
                Ok(Range { start, stop, count })
            }
            _ => Err(bad("wrong number of fields")),
        }
    }
}

impl Serialize for Range {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}:{}:{}", self.start, self.stop, self.count))
    }
}

fn parse_case(s: &str) -> Result<SusyCase, String> {
    match s {
        "1+" => Ok(SusyCase::OnePlus),
        "1-" => Ok(SusyCase::OneMinus),
        "2+" => Ok(SusyCase::TwoPlus),
        "2-" => Ok(SusyCase::TwoMinus),
        _ => Err(format!("unknown case '{s}' (expected 1+, 1-, 2+ or 2-)")),
    }
}

fn serialize_case<S: serde::Serializer>(c: &SusyCase, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(c.label())
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
enum Cmd {
    /// Lowest eigenenergies and directional observables at one (η, ζ)
    Spectrum(SpectrumArgs),
    /// Eigensurfaces over an (η, ζ) product grid
    Scan(ScanArgs),
    /// Gaps between adjacent surfaces over an (η, ζ) product grid
    Gaps(GapsArgs),
    /// Avoided-intersection loci along η at fixed ζ
    Crossings(CrossingsArgs),
    /// Factorization point report: partner potentials, class, ε, measured E₀
    Susy(SusyArgs),
    /// Effective 1D potential and wavefunction samples on the θ grid
    Grid(GridArgs),
    /// Field/molecule parameters → dimensionless η, ζ
    Convert(ConvertArgs),
    /// Factorization table over all cases at fixed β
    Table1(Table1Args),
    /// Free-rotor reference: energies and ladder-built wavefunction checks
    Fieldfree(FieldfreeArgs),
}

#[derive(Args, Debug, Serialize)]
struct SpectrumArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long)]
    eta: f64,
    #[arg(long)]
    zeta: f64,
    #[arg(long, default_value_t = 10)]
    n_states: usize,
    #[arg(long, value_enum, default_value_t = Method::Basis)]
    method: Method,
    /// basis truncation; converged automatic choice when omitted
    #[arg(long)]
    j_max: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid_points: usize,
    #[arg(long, default_value_t = DEFAULT_ENERGY_CUTOFF)]
    energy_cutoff: f64,
}

#[derive(Args, Debug, Serialize)]
struct ScanArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// η samples, start:stop:count (inclusive) or scalar
    #[arg(long)]
    eta: Range,
    /// ζ samples, start:stop:count (inclusive) or scalar
    #[arg(long)]
    zeta: Range,
    #[arg(long, default_value_t = 6)]
    n_states: usize,
    #[arg(long, default_value_t = DEFAULT_ENERGY_CUTOFF)]
    energy_cutoff: f64,
}

#[derive(Args, Debug, Serialize)]
struct GapsArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long)]
    eta: Range,
    #[arg(long)]
    zeta: Range,
    #[arg(long, default_value_t = 6)]
    n_states: usize,
    /// lower rank of the gap pair; all adjacent pairs when omitted
    #[arg(long)]
    pair: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ENERGY_CUTOFF)]
    energy_cutoff: f64,
}

#[derive(Args, Debug, Serialize)]
struct CrossingsArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long)]
    zeta: Range,
    #[arg(long, default_value_t = 3)]
    kmax: u32,
    /// η sweep spacing (must be <= 0.25)
    #[arg(long, default_value_t = 0.25)]
    spacing: f64,
}

#[derive(Args, Debug, Serialize)]
struct SusyArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// factorization branch: 1+, 1-, 2+ or 2-
    #[arg(long, value_parser = parse_case)]
    #[serde(serialize_with = "serialize_case")]
    case: SusyCase,
    #[arg(long, default_value_t = 10.0)]
    beta: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid_points: usize,
}

#[derive(Args, Debug, Serialize)]
struct GridArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long)]
    eta: f64,
    #[arg(long)]
    zeta: f64,
    #[arg(long, default_value_t = 6)]
    n_states: usize,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid_points: usize,
    #[arg(long, value_enum, default_value_t = Backend::Adapted)]
    backend: Backend,
    #[arg(long, default_value_t = DEFAULT_ENERGY_CUTOFF)]
    energy_cutoff: f64,
}

#[derive(Args, Debug, Serialize)]
struct ConvertArgs {
    /// permanent dipole moment, debye
    #[arg(long, default_value_t = 0.0)]
    dipole: f64,
    /// rotational constant, cm⁻¹
    #[arg(long)]
    rot_const: f64,
    /// parallel polarizability volume, Å³
    #[arg(long, default_value_t = 0.0)]
    alpha_par: f64,
    /// perpendicular polarizability volume, Å³
    #[arg(long, default_value_t = 0.0)]
    alpha_perp: f64,
    /// static field strength, kV/cm
    #[arg(long, default_value_t = 0.0)]
    field: f64,
    /// laser intensity, W/cm² (ζ field source when nonzero)
    #[arg(long, default_value_t = 0.0)]
    intensity: f64,
}

#[derive(Args, Debug, Serialize)]
struct Table1Args {
    #[arg(long, default_value_t = 10.0)]
    beta: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid_points: usize,
}

#[derive(Args, Debug, Serialize)]
struct FieldfreeArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// highest j reported
    #[arg(long, default_value_t = 5)]
    j_top: u32,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid_points: usize,
}

// ---------------------------------------------------------------------------
// errors and output plumbing

#[derive(Debug)]
enum CliError {
    /// bad flag value → exit 2, message names the flag
    Validation(String),
    /// solver failure → exit 3, message carries the parameter context
    Solver(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Solver(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn invalid(flag: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{flag}: {why}"))
}

/// One tabular result: schema name, config echo, columns, stringified rows.
struct Report {
    schema: String,
    config: serde_json::Value,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

/// 12 significant digits, fixed exponential format, so identical inputs
/// give byte-identical files.
fn fmt_f(v: f64) -> String {
    format!("{:.11e}", v)
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn render_csv(r: &Report) -> String {
    let config = r.config.to_string();
    let mut out = String::new();
    let _ = writeln!(out, "# schema: {}/{}", SCHEMA_VERSION, r.schema);
    let _ = writeln!(out, "# version: {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# config: {config}");
    let _ = writeln!(out, "# config-hash: {:016x}", fnv1a64(config.as_bytes()));
    let _ = writeln!(out, "{}", r.columns.join(","));
    for row in &r.rows {
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

fn render_json(r: &Report) -> String {
    let config = r.config.to_string();
    let doc = serde_json::json!({
        "schema": format!("{}/{}", SCHEMA_VERSION, r.schema),
        "version": env!("CARGO_PKG_VERSION"),
        "config": r.config,
        "config_hash": format!("{:016x}", fnv1a64(config.as_bytes())),
        "columns": r.columns,
        "rows": r.rows,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// shared helpers

fn check_params(eta: f64, zeta: f64) -> CliResult<InteractionParams> {
    if !eta.is_finite() {
        return Err(invalid("--eta", "must be finite"));
    }
    if !(zeta.is_finite() && zeta >= 0.0) {
        return Err(invalid("--zeta", "must be finite and >= 0"));
    }
    InteractionParams::new(eta, zeta).map_err(|e| invalid("--eta/--zeta", e))
}

fn check_n_states(n: usize) -> CliResult<usize> {
    if n == 0 {
        return Err(invalid("--n-states", "must be >= 1"));
    }
    Ok(n)
}

fn check_grid(n: usize) -> CliResult<ThetaGrid> {
    ThetaGrid::new(n).map_err(|e| invalid("--grid-points", e))
}

fn solve_basis(m: u32, params: InteractionParams, n: usize, j_max: Option<u32>) -> CliResult<Spectrum> {
    spectral::solve_params(m, params, n, j_max).map_err(|e| {
        CliError::Solver(format!("basis solve at m={m}, eta={}, zeta={}: {e}", params.eta, params.zeta))
    })
}

fn solve_on_grid(
    spec: &EffectivePotentialSpec,
    grid: &ThetaGrid,
    n: usize,
    method: GridMethod,
) -> CliResult<GridSolution> {
    solve_grid(spec, grid, n, method).map_err(|e| {
        CliError::Solver(format!("grid solve at m={}, eta={}, zeta={}: {e}", spec.m, spec.params.eta, spec.params.zeta))
    })
}

/// ⟨f(θ)⟩ of a normalized grid state under the trapezoid rule.
fn grid_expectation(wf: &GridWavefunction, f: impl Fn(f64) -> f64) -> f64 {
    let weighted: Vec<f64> = wf
        .values
        .iter()
        .zip(wf.grid.nodes.iter())
        .map(|(&v, &t)| v * f(t))
        .collect();
    wf.grid.inner(&weighted, &wf.values)
}

// ---------------------------------------------------------------------------
// subcommand bodies

fn run_spectrum(a: &SpectrumArgs, config: serde_json::Value) -> CliResult<Report> {
    let params = check_params(a.eta, a.zeta)?;
    let n = check_n_states(a.n_states)?;
    let columns = ["method", "m", "eta", "zeta", "rank", "J", "energy", "cos", "cos2"];
    let mut rows = Vec::new();
    if matches!(a.method, Method::Basis | Method::Both) {
        let s = solve_basis(a.m, params, n, a.j_max)?;
        for k in 0..n {
            if s.energies[k] > a.energy_cutoff {
                continue;
            }
            rows.push(vec![
                "basis".into(),
                a.m.to_string(),
                fmt_f(a.eta),
                fmt_f(a.zeta),
                k.to_string(),
                s.labels[k].j.to_string(),
                fmt_f(s.energies[k]),
                fmt_f(spectral::orientation_cosine(&s, k)),
                fmt_f(spectral::alignment_cosine(&s, k)),
            ]);
        }
    }
    if matches!(a.method, Method::Grid | Method::Both) {
        let grid = check_grid(a.grid_points)?;
        let spec = EffectivePotentialSpec::new(a.m, params);
        let sol = solve_on_grid(&spec, &grid, n, GridMethod::Adapted)?;
        for k in 0..n {
            if sol.energies[k] > a.energy_cutoff {
                continue;
            }
            rows.push(vec![
                "grid".into(),
                a.m.to_string(),
                fmt_f(a.eta),
                fmt_f(a.zeta),
                k.to_string(),
                (a.m + k as u32).to_string(),
                fmt_f(sol.energies[k]),
                fmt_f(grid_expectation(&sol.states[k], |t| t.cos())),
                fmt_f(grid_expectation(&sol.states[k], |t| t.cos() * t.cos())),
            ]);
        }
    }
    Ok(Report {
        schema: "spectrum".into(),
        config,
        columns: columns.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

/// Energy tables over the product grid, solved in parallel; the per-point
/// solver is the same dense basis path `spectrum` uses, so scan rows
/// reproduce `spectrum` values byte-for-byte.
fn scan_energies(m: u32, etas: &[f64], zetas: &[f64], n: usize) -> CliResult<Vec<(f64, f64, Vec<f64>)>> {
    let points: Vec<(f64, f64)> = zetas
        .iter()
        .flat_map(|&z| etas.iter().map(move |&e| (e, z)))
        .collect();
    points
        .par_iter()
        .map(|&(eta, zeta)| {
            let params = check_params(eta, zeta)?;
            let s = solve_basis(m, params, n, None)?;
            Ok((eta, zeta, s.energies))
        })
        .collect()
}

fn run_scan(a: &ScanArgs, config: serde_json::Value) -> CliResult<Report> {
    let n = check_n_states(a.n_states)?;
    let table = scan_energies(a.m, &a.eta.values(), &a.zeta.values(), n)?;
    let mut rows = Vec::new();
    for (eta, zeta, energies) in table {
        for (k, &e) in energies.iter().enumerate() {
            if e > a.energy_cutoff {
                continue;
            }
            rows.push(vec![
                a.m.to_string(),
                fmt_f(eta),
                fmt_f(zeta),
                k.to_string(),
                fmt_f(e),
            ]);
        }
    }
    Ok(Report {
        schema: "scan".into(),
        config,
        columns: ["m", "eta", "zeta", "rank", "energy"].iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn run_gaps(a: &GapsArgs, config: serde_json::Value) -> CliResult<Report> {
    let n = check_n_states(a.n_states)?;
    if let Some(p) = a.pair {
        if p + 1 >= n {
            return Err(invalid("--pair", format!("pair ({}, {}) needs n_states > {}", p, p + 1, p + 1)));
        }
    }
    let table = scan_energies(a.m, &a.eta.values(), &a.zeta.values(), n)?;
    let mut rows = Vec::new();
    for (eta, zeta, energies) in table {
        let pairs: Vec<usize> = match a.pair {
            Some(p) => vec![p],
            None => (0..n - 1).collect(),
        };
        for p in pairs {
            if energies[p + 1] > a.energy_cutoff {
                continue;
            }
            rows.push(vec![
                a.m.to_string(),
                fmt_f(eta),
                fmt_f(zeta),
                p.to_string(),
                fmt_f(energies[p + 1] - energies[p]),
            ]);
        }
    }
    Ok(Report {
        schema: "gaps".into(),
        config,
        columns: ["m", "eta", "zeta", "pair", "gap"].iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn run_crossings(a: &CrossingsArgs, config: serde_json::Value) -> CliResult<Report> {
    if a.kmax == 0 {
        return Err(invalid("--kmax", "must be >= 1"));
    }
    if !(a.spacing > 0.0 && a.spacing <= 0.25) {
        return Err(invalid("--spacing", "must be in (0, 0.25]"));
    }
    let zetas = a.zeta.values();
    if zetas.iter().any(|&z| !(z > 0.0)) {
        return Err(invalid("--zeta", "crossing search needs zeta > 0"));
    }
    let per_zeta: Vec<Vec<topology::CrossingResult>> = zetas
        .par_iter()
        .map(|&z| {
            topology::find_crossings(a.m, z, a.kmax, a.spacing)
                .map_err(|e| CliError::Solver(format!("crossing search at zeta={z}: {e}")))
        })
        .collect::<CliResult<_>>()?;
    let mut rows = Vec::new();
    for (z, results) in zetas.iter().zip(per_zeta) {
        for r in results {
            match r.locus {
                Some(l) => rows.push(vec![
                    r.k.to_string(),
                    fmt_f(*z),
                    fmt_f(l.eta_star),
                    fmt_f(l.predicted_eta),
                    fmt_f(l.gap),
                ]),
                None => rows.push(vec![r.k.to_string(), fmt_f(*z), String::new(), String::new(), String::new()]),
            }
        }
    }
    Ok(Report {
        schema: "crossings".into(),
        config,
        columns: ["k", "zeta", "eta_star", "predicted_eta", "gap"].iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn run_susy(a: &SusyArgs, config: serde_json::Value) -> CliResult<Report> {
    if !(a.beta.is_finite() && a.beta > 0.0) {
        return Err(invalid("--beta", "must be finite and > 0"));
    }
    let grid = check_grid(a.grid_points)?;
    let point = susy_point(a.m, a.case, a.beta)?;
    let pair = partner_pair(&point)?;
    let class = classify(&point);
    let sol1 = solve_on_grid(&pair.v1, &grid, 2, GridMethod::Adapted)?;
    let sol2 = solve_on_grid(&pair.v2, &grid, 2, GridMethod::Adapted)?;

    let potential_string = |s: &EffectivePotentialSpec| {
        let (c2, cc, c1, c2p, c0) = s.coefficients();
        let mut out = String::new();
        let mut term = |c: f64, name: &str| {
            if c != 0.0 {
                let _ = write!(out, "{}{}{}", if c >= 0.0 && !out.is_empty() { " + " } else if c < 0.0 { " - " } else { "" }, fmt_f(c.abs()), name);
            }
        };
        term(c2, "*csc^2");
        term(cc, "*cot*csc");
        term(c1, "*cos");
        term(c2p, "*cos^2");
        term(c0, "");
        if out.is_empty() {
            out.push('0');
        }
        out
    };

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut info = |key: &str, v1: String, v2: String| {
        rows.push(vec!["info".into(), key.into(), v1, v2]);
    };
    info("m", a.m.to_string(), String::new());
    info("case", point.case.label().into(), String::new());
    info("beta", fmt_f(a.beta), String::new());
    info("alpha_gamma", fmt_f(point.w.alpha), fmt_f(point.w.gamma));
    info("eta_zeta", fmt_f(point.eta), fmt_f(point.zeta));
    info("k", point.k.to_string(), String::new());
    info("epsilon", fmt_f(point.epsilon), String::new());
    info("class", class.class.label().into(), if class.marginal { "marginal".into() } else { String::new() });
    if let Some(alt) = class.alternate {
        info("class_alternate", alt.label().into(), String::new());
    }
    info("psi_exponents", fmt_f(class.psi_exponents.0), fmt_f(class.psi_exponents.1));
    if let Some(labels) = pair.partner_labels {
        info("partner_labels", labels.m_tilde.to_string(), labels.k_tilde.to_string());
    }
    info("V1", potential_string(&pair.v1), String::new());
    info("V2", potential_string(&pair.v2), String::new());
    info("E0_measured", fmt_f(sol1.energies[0]), fmt_f(sol2.energies[0]));
    info("E0_minus_epsilon", fmt_f(sol1.energies[0] - point.epsilon), fmt_f(sol2.energies[0] - point.epsilon));
    if class.class == SusyClass::Standard {
        // ψ_ε annihilation check: A kills the analytic ground state
        let psi = analytic_wavefunction(&point, &grid)?;
        let a_psi = intertwine_down(&point.w, &psi)?;
        info("annihilation_residual", fmt_f(a_psi.norm() / psi.norm()), String::new());
    }
    for (i, &theta) in grid.nodes.iter().enumerate() {
        rows.push(vec![
            "potential".into(),
            fmt_f(theta),
            fmt_f(effective_potential(&pair.v1, theta)?),
            fmt_f(effective_potential(&pair.v2, theta)?),
        ]);
        let _ = i;
    }
    Ok(Report {
        schema: "susy".into(),
        config,
        columns: ["row_type", "key_or_theta", "v1", "v2"].iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn run_grid(a: &GridArgs, config: serde_json::Value) -> CliResult<Report> {
    let params = check_params(a.eta, a.zeta)?;
    let n = check_n_states(a.n_states)?;
    let grid = check_grid(a.grid_points)?;
    let spec = EffectivePotentialSpec::new(a.m, params);
    let sol = solve_on_grid(&spec, &grid, n, a.backend.grid_method())?;
    let kept: Vec<usize> = (0..n).filter(|&k| sol.energies[k] <= a.energy_cutoff).collect();
    let mut columns = vec!["theta".to_string(), "V".to_string()];
    for &k in &kept {
        columns.push(format!("psi_{k}"));
    }
    let mut rows = Vec::new();
    for (i, &theta) in grid.nodes.iter().enumerate() {
        let mut row = vec![fmt_f(theta), fmt_f(effective_potential(&spec, theta)?)];
        for &k in &kept {
            row.push(fmt_f(sol.states[k].values[i]));
        }
        rows.push(row);
    }
    Ok(Report { schema: "grid".into(), config, columns, rows })
}

fn run_convert(a: &ConvertArgs, config: serde_json::Value) -> CliResult<Report> {
    let eta_spec = MoleculeSpec {
        dipole: a.dipole,
        rot_const: a.rot_const,
        alpha_par: 0.0,
        alpha_perp: 0.0,
        field_static: a.field,
        intensity: 0.0,
    };
    // ζ field source: the laser intensity when given, else the static field
    let zeta_spec = MoleculeSpec {
        dipole: 0.0,
        rot_const: a.rot_const,
        alpha_par: a.alpha_par,
        alpha_perp: a.alpha_perp,
        field_static: if a.intensity > 0.0 { 0.0 } else { a.field },
        intensity: a.intensity,
    };
    let eta = eta_from_molecule(&eta_spec).map_err(|e| invalid("--dipole/--field/--rot-const", e))?;
    let zeta = zeta_from_molecule(&zeta_spec)
        .map_err(|e| invalid("--alpha-par/--alpha-perp/--intensity", e))?;
    if eta < 0.0 {
        eprintln!(
            "warning: eta = {eta} < 0; interpret through the mirror symmetry \
             theta -> pi - theta (equivalent to |eta| with reversed orientation)"
        );
    }
    let rows = vec![
        vec!["eta".to_string(), fmt_f(eta)],
        vec!["zeta".to_string(), fmt_f(zeta)],
        vec![
            "zeta_field_source".to_string(),
            if a.intensity > 0.0 { "intensity".to_string() } else { "static".to_string() },
        ],
    ];
    Ok(Report {
        schema: "convert".into(),
        config,
        columns: ["quantity", "value"].iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn run_table1(a: &Table1Args, config: serde_json::Value) -> CliResult<Report> {
    if !(a.beta.is_finite() && a.beta > 0.0) {
        return Err(invalid("--beta", "must be finite and > 0"));
    }
    let grid = check_grid(a.grid_points)?;
    // m = 0 collapses the four branches into one (γ = 0 and α = −1/2 agree)
    let mut entries = vec![(0u32, SusyCase::OneMinus)];
    for m in 1..=2u32 {
        for case in SusyCase::ALL {
            entries.push((m, case));
        }
    }
    let mut rows = Vec::new();
    for (m, case) in entries {
        let point = susy_point(m, case, a.beta)?;
        let pair = partner_pair(&point)?;
        let class = classify(&point);
        let sol1 = solve_on_grid(&pair.v1, &grid, 1, GridMethod::Adapted)?;
        let sol2 = solve_on_grid(&pair.v2, &grid, 1, GridMethod::Adapted)?;
        // where the class predicts ε in a spectrum, report that deviation;
        // for broken pairs report E₀⁽¹⁾ − ε as the diagnostic
        let deviation = match class.class {
            SusyClass::Standard | SusyClass::Broken => sol1.energies[0] - point.epsilon,
            SusyClass::Inverted => sol2.energies[0] - point.epsilon,
        };
        let (mt, kt) = pair
            .partner_labels
            .map(|l| (l.m_tilde.to_string(), l.k_tilde.to_string()))
            .unwrap_or_default();
        rows.push(vec![
            m.to_string(),
            case.label().into(),
            fmt_f(point.eta),
            fmt_f(point.zeta),
            point.k.to_string(),
            class.class.label().into(),
            mt,
            kt,
            fmt_f(point.epsilon),
            fmt_f(sol1.energies[0]),
            fmt_f(sol2.energies[0]),
            fmt_f(deviation),
        ]);
    }
    Ok(Report {
        schema: "table1".into(),
        config,
        columns: [
            "m", "case", "eta", "zeta", "k", "class", "m_tilde", "k_tilde", "epsilon",
            "e0_v1", "e0_v2", "deviation",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        rows,
    })
}

fn run_fieldfree(a: &FieldfreeArgs, config: serde_json::Value) -> CliResult<Report> {
    if a.j_top < a.m {
        return Err(invalid("--j-top", format!("must be >= m ({})", a.m)));
    }
    let grid = check_grid(a.grid_points)?;
    let params = InteractionParams::free_rotor();
    let spec = EffectivePotentialSpec::new(a.m, params);
    let n = (a.j_top - a.m + 1) as usize;
    let sol = solve_on_grid(&spec, &grid, n, GridMethod::Adapted)?;
    let mut rows = Vec::new();
    for j in a.m..=a.j_top {
        let rank = (j - a.m) as usize;
        let ladder = free_rotor_ladder(j, a.m, &grid)?;
        let overlap = ladder.overlap(&sol.states[rank]).abs();
        rows.push(vec![
            j.to_string(),
            fmt_f((j * (j + 1)) as f64),
            fmt_f(sol.energies[rank]),
            fmt_f(overlap),
        ]);
    }
    Ok(Report {
        schema: "fieldfree".into(),
        config,
        columns: ["j", "energy", "grid_energy", "ladder_overlap"].iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

// ---------------------------------------------------------------------------

fn run(cli: Cli) -> CliResult<()> {
    let threads = match cli.threads {
        Some(t) => t,
        None => std::env::var("PENDULUM_THREADS")
            .ok()
            .map(|v| v.parse().map_err(|_| invalid("PENDULUM_THREADS", "not an integer")))
            .transpose()?
            .unwrap_or(0),
    };
    // 0 = rayon's default (all cores); ignore failure if a pool exists
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();

    let config = serde_json::to_value(&cli.cmd).expect("config serializes");
    let report = match &cli.cmd {
        Cmd::Spectrum(a) => run_spectrum(a, config)?,
        Cmd::Scan(a) => run_scan(a, config)?,
        Cmd::Gaps(a) => run_gaps(a, config)?,
        Cmd::Crossings(a) => run_crossings(a, config)?,
        Cmd::Susy(a) => run_susy(a, config)?,
        Cmd::Grid(a) => run_grid(a, config)?,
        Cmd::Convert(a) => run_convert(a, config)?,
        Cmd::Table1(a) => run_table1(a, config)?,
        Cmd::Fieldfree(a) => run_fieldfree(a, config)?,
    };
    let text = match cli.format {
        Format::Csv => render_csv(&report),
        Format::Json => render_json(&report),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| invalid("--output", e))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
