//! Command-line front end. Every artifact is written under `--out` and
//! carries the hash of the effective configuration.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bloch::{
    d_locus_distance, degeneracy_scan, refine_degeneracies, BlochModel, Character, RefineConfig,
};
use crate::closure::{classify_point, standard_suite, ClassifyConfig, ParamPoint};
use crate::error::{Error, Result};
use crate::geometry::{DPoint, GPoint, LatticeKind, LatticeSpec};
use crate::phase::{parse_rational, Phase};
use crate::repn::{butterfly, coprime_fluxes};
use crate::symbolic::{d_relation_checks, verify_x1, verify_x3, verify_x6};

pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Decimal places kept for every float written to disk.
pub const FLOAT_DIGITS: i32 = 12;

#[derive(Parser, Debug)]
#[command(name = "wirenet", version, about = "Harper operators of the P, D and G wire networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Lattice data.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Commutative (zero field) spectra.
    Bloch {
        #[command(subcommand)]
        action: BlochAction,
    },
    /// Spectra over rational fluxes along one axis pair.
    Butterfly,
    /// Full / proper / commutative verdicts at exact parameter points.
    Classify,
    /// Symbolic reduction chain and phase relations.
    Verify,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeAction {
    Show,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlochAction {
    /// Degeneracy scan on a uniform character grid.
    Scan,
    /// Spectra along a piecewise linear path of characters.
    Bands,
}

/// Flags shared by all subcommands; each overrides the config file.
#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// JSON file with the same keys as the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Built-in lattice: P, D or G.
    #[arg(long, global = true)]
    pub lattice: Option<String>,
    /// Lattice spec file (JSON) instead of a built-in.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Comma separated fluxes `p/N`.
    #[arg(long, global = true)]
    pub flux: Option<String>,
    /// Sweep every coprime flux with denominator up to this value.
    #[arg(long, global = true)]
    pub max_den: Option<i64>,
    /// Axis pair carrying the flux: 12, 13 or 23.
    #[arg(long, global = true)]
    pub axis: Option<u8>,
    /// Twist lattice size per direction.
    #[arg(long, global = true)]
    pub twists: Option<usize>,
    /// Parameter point, e.g. `chi=(1/8,1/8,0)` or `phi=(1/4,3/4,0)`; repeatable.
    #[arg(long = "point", global = true)]
    pub points: Vec<String>,
    /// Classify the built-in cross-validation suite.
    #[arg(long, global = true)]
    pub suite: bool,
    /// Refine grid minima into degeneracy clusters.
    #[arg(long, global = true)]
    pub refine: bool,
    /// Path vertices in turns, `;` separated, e.g. `0,0,0;1/2,0,0`.
    #[arg(long, global = true)]
    pub path: Option<String>,
    /// Samples per path segment.
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Omit the timestamp so reruns are byte-identical.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

/// Effective configuration after merging the config file and the flags.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub lattice: Option<String>,
    pub spec: Option<PathBuf>,
    pub grid: usize,
    pub tol: f64,
    pub flux: Vec<String>,
    pub max_den: Option<i64>,
    pub axis: u8,
    pub twists: usize,
    pub points: Vec<String>,
    pub suite: bool,
    pub refine: bool,
    pub path: Option<String>,
    pub steps: usize,
    pub out: PathBuf,
    pub seed: u64,
    pub no_timestamp: bool,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            command: String::new(),
            lattice: None,
            spec: None,
            grid: 32,
            tol: 1e-6,
            flux: vec![],
            max_den: None,
            axis: 12,
            twists: 4,
            points: vec![],
            suite: false,
            refine: false,
            path: None,
            steps: 32,
            out: PathBuf::from("wirenet-out"),
            seed: 42,
            no_timestamp: false,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lattice { .. } => "lattice show",
        Command::Bloch { action: BlochAction::Scan } => "bloch scan",
        Command::Bloch { action: BlochAction::Bands } => "bloch bands",
        Command::Butterfly => "butterfly",
        Command::Classify => "classify",
        Command::Verify => "verify",
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig> {
        let f = &cli.flags;
        let mut c = match &f.config {
            Some(p) => RunConfig::from_json(&fs::read_to_string(p)?)?,
            None => RunConfig::default(),
        };
        c.command = command_name(&cli.command).into();
        if f.lattice.is_some() {
            c.lattice = f.lattice.clone();
        }
        if f.spec.is_some() {
            c.spec = f.spec.clone();
        }
        if let Some(v) = f.grid {
            c.grid = v;
        }
        if let Some(v) = f.tol {
            c.tol = v;
        }
        if let Some(v) = &f.flux {
            c.flux = v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        }
        if f.max_den.is_some() {
            c.max_den = f.max_den;
        }
        if let Some(v) = f.axis {
            c.axis = v;
        }
        if let Some(v) = f.twists {
            c.twists = v;
        }
        if !f.points.is_empty() {
            c.points = f.points.clone();
        }
        c.suite |= f.suite;
        c.refine |= f.refine;
        if f.path.is_some() {
            c.path = f.path.clone();
        }
        if let Some(v) = f.steps {
            c.steps = v;
        }
        if let Some(v) = &f.out {
            c.out = v.clone();
        }
        if let Some(v) = f.seed {
            c.seed = v;
        }
        c.no_timestamp |= f.no_timestamp;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config("tol must be positive".into()));
        }
        if self.grid == 0 || self.steps == 0 || self.twists == 0 {
            return Err(Error::Config("grid, steps and twists must be positive".into()));
        }
        if self.lattice.is_some() && self.spec.is_some() {
            return Err(Error::Config("give either --lattice or --spec".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<RunConfig> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    /// SHA-256 over the configuration, ignoring the output location and the
    /// timestamp switch.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.out = PathBuf::new();
        c.no_timestamp = false;
        let bytes = serde_json::to_vec(&c).expect("config serializes");
        Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    fn lattice_spec(&self) -> Result<LatticeSpec> {
        match (&self.spec, &self.lattice) {
            (Some(p), _) => LatticeSpec::from_json(&fs::read_to_string(p)?),
            (None, Some(name)) => LatticeSpec::builtin(name),
            (None, None) => Err(Error::Config("--lattice or --spec required".into())),
        }
    }

    fn lattice_kind(&self) -> Result<Option<LatticeKind>> {
        self.lattice.as_deref().map(LatticeKind::parse).transpose()
    }
}

/// Rounds to `FLOAT_DIGITS` decimals and clears negative zero.
pub fn fixed(x: f64) -> f64 {
    let s = 10f64.powi(FLOAT_DIGITS);
    let r = (x * s).round() / s;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = fixed(n.as_f64().unwrap_or(0.0));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

fn fmt_f(x: f64) -> String {
    format!("{:.*}", FLOAT_DIGITS as usize, fixed(x))
}

/// Writes `name` under the output directory as an enveloped JSON document.
fn write_json(cfg: &RunConfig, name: &str, result: Value) -> Result<PathBuf> {
    let mut doc = json!({
        "command": cfg.command,
        "config_hash": cfg.hash(),
        "config": serde_json::to_value(cfg)?,
        "result": round_floats(result),
    });
    if !cfg.no_timestamp {
        let t = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        doc["generated_at"] = json!(t);
    }
    write_file(cfg, name, &(serde_json::to_string_pretty(&doc)? + "\n"))
}

fn write_csv(cfg: &RunConfig, name: &str, header: &str, rows: &[String]) -> Result<PathBuf> {
    let mut s = format!("# config_hash={}\n{header}\n", cfg.hash());
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    write_file(cfg, name, &s)
}

fn write_file(cfg: &RunConfig, name: &str, body: &str) -> Result<PathBuf> {
    fs::create_dir_all(&cfg.out)?;
    let p = cfg.out.join(name);
    fs::write(&p, body)?;
    Ok(p)
}

/// Outcome of a run: artifacts, a console summary and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub summary: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::EigenNonConvergence(_) | Error::ClosureOverflow { .. } | Error::Representation(_) => {
            EXIT_NUMERICAL
        }
        _ => EXIT_CONFIG,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = RunConfig::from_cli(cli)?;
    match cli.command {
        Command::Lattice { .. } => lattice_show(&cfg),
        Command::Bloch { action: BlochAction::Scan } => bloch_scan(&cfg),
        Command::Bloch { action: BlochAction::Bands } => bloch_bands(&cfg),
        Command::Butterfly => run_butterfly(&cfg),
        Command::Classify => classify(&cfg),
        Command::Verify => verify(&cfg),
    }
}

/// Parses, runs and reports; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    match run(&cli) {
        Ok(o) => {
            print!("{}", o.summary);
            for f in &o.files {
                println!("wrote {}", f.display());
            }
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn lattice_show(cfg: &RunConfig) -> Result<Outcome> {
    let spec = cfg.lattice_spec()?;
    spec.validate()?;
    let body = spec.to_json()?;
    let value: Value = serde_json::from_str(&body)?;
    let f = write_json(cfg, "lattice.json", value)?;
    Ok(Outcome { files: vec![f], summary: body + "\n", code: 0 })
}

fn bloch_scan(cfg: &RunConfig) -> Result<Outcome> {
    let spec = cfg.lattice_spec()?;
    let model = BlochModel::from_spec(&spec)?;
    let is_d = spec.kind() == Some(LatticeKind::D);
    let report = degeneracy_scan(&model, cfg.grid, cfg.tol)?;
    let spacing = TAU / cfg.grid as f64;
    let mut header = "i,j,k,phi1,phi2,phi3,min_gap".to_string();
    if is_d {
        header.push_str(",locus_distance");
    }
    for j in 0..model.k {
        let _ = write!(header, ",e{j}");
    }
    let mut max_dist: f64 = 0.0;
    let rows: Vec<String> = report
        .points
        .iter()
        .map(|p| {
            let mut r = format!("{},{},{}", p.index[0], p.index[1], p.index[2]);
            for a in p.angles {
                let _ = write!(r, ",{}", fmt_f(a));
            }
            let _ = write!(r, ",{}", fmt_f(p.min_gap));
            if is_d {
                let d = d_locus_distance(p.angles);
                max_dist = max_dist.max(d);
                let _ = write!(r, ",{}", fmt_f(d));
            }
            for e in &p.eigenvalues {
                let _ = write!(r, ",{}", fmt_f(*e));
            }
            r
        })
        .collect();
    let mut summary = json!({
        "grid": cfg.grid,
        "tol": cfg.tol,
        "spacing": spacing,
        "flagged": report.points.len(),
    });
    if is_d {
        summary["max_locus_distance"] = json!(max_dist);
        summary["within_two_spacings"] = json!(max_dist < 2.0 * spacing);
    }
    let mut result = json!({ "summary": summary, "points": serde_json::to_value(&report.points)? });
    if cfg.refine {
        let locus = refine_degeneracies(&model, cfg.grid, &RefineConfig::for_grid(cfg.grid))?;
        result["refined"] = serde_json::to_value(&locus)?;
    }
    let files = vec![
        write_csv(cfg, "scan.csv", &header, &rows)?,
        write_json(cfg, "scan.json", result)?,
    ];
    let text = format!("flagged {} of {} grid points\n", report.points.len(), cfg.grid.pow(3));
    Ok(Outcome { files, summary: text, code: 0 })
}

/// Path vertices in turns; default runs through the symmetric points.
fn parse_path(s: Option<&str>) -> Result<Vec<[f64; 3]>> {
    let s = s.unwrap_or("0,0,0;1/2,0,0;1/2,1/2,0;1/2,1/2,1/2;0,0,0");
    s.split(';')
        .map(|v| {
            let parts: Vec<&str> = v.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Config(format!("path vertex `{v}` needs three components")));
            }
            let mut out = [0.0; 3];
            for (o, p) in out.iter_mut().zip(parts) {
                let r = parse_rational(p)?;
                *o = *r.numer() as f64 / *r.denom() as f64 * TAU;
            }
            Ok(out)
        })
        .collect()
}

fn bloch_bands(cfg: &RunConfig) -> Result<Outcome> {
    let spec = cfg.lattice_spec()?;
    let model = BlochModel::from_spec(&spec)?;
    let verts = parse_path(cfg.path.as_deref())?;
    if verts.len() < 2 {
        return Err(Error::Config("path needs at least two vertices".into()));
    }
    let mut header = "s,phi1,phi2,phi3".to_string();
    for j in 0..model.k {
        let _ = write!(header, ",e{j}");
    }
    let mut rows = vec![];
    let mut points = vec![];
    for (seg, w) in verts.windows(2).enumerate() {
        let last = seg == verts.len() - 2;
        let n = cfg.steps + usize::from(last);
        for i in 0..n {
            let t = i as f64 / cfg.steps as f64;
            let phi = [0, 1, 2].map(|d| w[0][d] + t * (w[1][d] - w[0][d]));
            let e = model.eigenvalues(&Character::from_angles(phi))?;
            let s = seg as f64 + t;
            let mut r = fmt_f(s);
            for a in phi {
                let _ = write!(r, ",{}", fmt_f(a));
            }
            for x in &e {
                let _ = write!(r, ",{}", fmt_f(*x));
            }
            rows.push(r);
            points.push(json!({ "s": s, "angles": phi, "eigenvalues": e }));
        }
    }
    let files = vec![
        write_csv(cfg, "bands.csv", &header, &rows)?,
        write_json(cfg, "bands.json", json!({ "points": points }))?,
    ];
    Ok(Outcome { files, summary: format!("{} path samples\n", rows.len()), code: 0 })
}

fn parse_flux(s: &str) -> Result<(i64, i64)> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| Error::Config(format!("flux `{s}` is not p/N")))?;
    let n: i64 = n.trim().parse().map_err(|_| Error::InvalidRational(s.into()))?;
    let d: i64 = d.trim().parse().map_err(|_| Error::InvalidRational(s.into()))?;
    if d < 1 {
        return Err(Error::InvalidRational(s.into()));
    }
    Ok((n, d))
}

fn run_butterfly(cfg: &RunConfig) -> Result<Outcome> {
    let kind = cfg.lattice_kind()?.unwrap_or(LatticeKind::P);
    let fluxes = if !cfg.flux.is_empty() {
        cfg.flux.iter().map(|s| parse_flux(s)).collect::<Result<Vec<_>>>()?
    } else {
        let max = cfg.max_den.unwrap_or(8);
        coprime_fluxes(&(1..=max).collect::<Vec<_>>())
    };
    let b = butterfly(kind, cfg.axis, &fluxes, cfg.twists, 64)?;
    let mut rows = vec![];
    for f in &b.fluxes {
        for (t, spec) in f.spectra.iter().enumerate() {
            for (j, e) in spec.iter().enumerate() {
                rows.push(format!("{},{},{},{},{}", f.num, f.den, t, j, fmt_f(*e)));
            }
        }
    }
    let bands: Vec<Value> = b
        .fluxes
        .iter()
        .map(|f| json!({ "num": f.num, "den": f.den, "bands": f.bands, "gaps": f.gaps }))
        .collect();
    let result = json!({
        "lattice": kind.to_string(),
        "axis": b.axis,
        "twist_grid": b.twist_grid,
        "fluxes": bands,
    });
    let files = vec![
        write_csv(cfg, "butterfly.csv", "flux_num,flux_den,twist_index,eigen_index,eigenvalue", &rows)?,
        write_json(cfg, "butterfly.json", result)?,
    ];
    Ok(Outcome { files, summary: format!("{} fluxes\n", b.fluxes.len()), code: 0 })
}

fn triple(s: &str) -> Result<[Phase; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("`({s})` needs three components")));
    }
    let mut out = [Phase::ONE; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse()?;
    }
    Ok(out)
}

/// Parses `chi=(a,b,c)[,q=(..)]` or `phi=(a,b,c)[,alpha=(..)]` with exact
/// rational turns; optional derived values must agree.
pub fn parse_point(s: &str) -> Result<ParamPoint> {
    let mut fields: Vec<(String, [Phase; 3])> = vec![];
    let mut rest = s.trim();
    while !rest.is_empty() {
        let (key, tail) = rest
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("point `{s}`: expected key=(..)")))?;
        let tail = tail.trim_start();
        let body = tail
            .strip_prefix('(')
            .and_then(|t| t.split_once(')'))
            .ok_or_else(|| Error::Config(format!("point `{s}`: expected parenthesised triple")))?;
        fields.push((key.trim().to_lowercase(), triple(body.0)?));
        rest = body.1.trim_start().trim_start_matches(',').trim_start();
    }
    let get = |k: &str| fields.iter().find(|(n, _)| n == k).map(|(_, v)| *v);
    let check = |name: &str, derived: [Phase; 3]| -> Result<()> {
        match get(name) {
            Some(given) if given != derived => Err(Error::InconsistentParams(format!(
                "{name} given as {:?}, derived {:?}",
                given.map(|p| p.to_string()),
                derived.map(|p| p.to_string())
            ))),
            _ => Ok(()),
        }
    };
    if let Some(chi) = get("chi") {
        let p = DPoint::new(chi);
        check("q", p.q())?;
        return Ok(ParamPoint::D(p));
    }
    if let Some(phi) = get("phi") {
        let p = GPoint::new(phi);
        check("alpha", p.alpha())?;
        return Ok(ParamPoint::G(p));
    }
    Err(Error::Config(format!("point `{s}` needs chi=(..) or phi=(..)")))
}

fn classify(cfg: &RunConfig) -> Result<Outcome> {
    let mut points: Vec<(String, ParamPoint)> = cfg
        .points
        .iter()
        .map(|s| Ok((s.clone(), parse_point(s)?)))
        .collect::<Result<_>>()?;
    if cfg.suite {
        points.extend(standard_suite().into_iter().map(|p| (p.label.to_string(), p.point)));
    }
    if points.is_empty() {
        return Err(Error::Config("classify needs --point or --suite".into()));
    }
    if let Some(kind) = cfg.lattice_kind()? {
        if let Some((s, _)) = points.iter().find(|(_, p)| p.kind() != kind) {
            return Err(Error::Config(format!("point `{s}` does not belong to lattice {kind}")));
        }
    }
    let ccfg = ClassifyConfig { lattice_m: cfg.twists, seed: cfg.seed, ..ClassifyConfig::default() };
    let mut verdicts = vec![];
    let mut text = String::new();
    let mut all_agree = true;
    for (label, p) in &points {
        let v = classify_point(p, &ccfg)?;
        all_agree &= v.agree;
        let _ = writeln!(
            text,
            "{label}: observed {:?}, predicted {} ({:?}), closure {}/{}, agree={}",
            v.observed, v.predicted_case, v.predicted, v.closure_dim, v.reference_full_dim, v.agree
        );
        let mut value = serde_json::to_value(&v)?;
        value["label"] = json!(label);
        verdicts.push(value);
    }
    let f = write_json(cfg, "classify.json", json!({ "all_agree": all_agree, "verdicts": verdicts }))?;
    Ok(Outcome { files: vec![f], summary: text, code: if all_agree { 0 } else { EXIT_MISMATCH } })
}

fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let reports = [verify_x1(), verify_x3(), verify_x6()];
    let relations = d_relation_checks(100, cfg.seed);
    let tol = cfg.tol.min(1e-12);
    let ok = reports.iter().all(|r| r.passed()) && relations.iter().all(|r| r.passed(tol));
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{}: {}", r.check, r.status);
    }
    for r in &relations {
        let _ = writeln!(text, "{}: {} (max residual {:.2e})", r.name, if r.passed(tol) { "pass" } else { "fail" }, r.max_residual);
    }
    let f = write_json(
        cfg,
        "verify.json",
        json!({ "pass": ok, "reports": reports, "relations": relations, "relation_tol": tol }),
    )?;
    Ok(Outcome { files: vec![f], summary: text, code: if ok { 0 } else { EXIT_MISMATCH } })
}

/// Reads an artifact written by a run, for tests and tooling.
pub fn read_artifact(dir: &Path, name: &str) -> Result<String> {
    Ok(fs::read_to_string(dir.join(name))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("wirenet").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn points_parse_exactly() {
        let p = parse_point("chi=(1,1,1),q=(1,1,1)").unwrap();
        assert_eq!(p, ParamPoint::D(DPoint::new([Phase::ONE; 3])));
        let g = parse_point("phi=(1/4, 3/4, 0)").unwrap();
        assert!(matches!(g, ParamPoint::G(_)));
        assert!(parse_point("chi=(0.5,0,0)").is_err());
        assert!(matches!(
            parse_point("chi=(1/8,0,0),q=(1,1,1)"),
            Err(Error::InconsistentParams(_))
        ));
        assert!(parse_point("psi=(0,0,0)").is_err());
    }

    #[test]
    fn config_round_trips_and_flags_override() {
        let cli = parse(&["bloch", "scan", "--lattice", "D", "--grid", "16", "--seed", "7"]);
        let c = RunConfig::from_cli(&cli).unwrap();
        assert_eq!((c.grid, c.seed, c.command.as_str()), (16, 7, "bloch scan"));
        assert_eq!(RunConfig::from_json(&c.to_json().unwrap()).unwrap(), c);
        let mut moved = c.clone();
        moved.out = PathBuf::from("elsewhere");
        assert_eq!(moved.hash(), c.hash());
        moved.grid = 17;
        assert_ne!(moved.hash(), c.hash());
    }

    #[test]
    fn rejects_bad_config() {
        let cli = parse(&["verify", "--tol=-1"]);
        assert!(matches!(RunConfig::from_cli(&cli), Err(Error::Config(_))));
        assert!(RunConfig::from_json("{\"bogus\": 1}").is_err());
    }

    #[test]
    fn fixed_precision() {
        assert_eq!(fixed(-1e-15), 0.0);
        assert_eq!(fmt_f(1.0 / 3.0), "0.333333333333");
        assert_eq!(parse_flux("2/5").unwrap(), (2, 5));
        assert!(parse_flux("2/0").is_err());
        assert_eq!(parse_path(Some("0,0,0;1/2,0,0")).unwrap()[1][0], TAU / 2.0);
    }
}
