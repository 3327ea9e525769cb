use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use discgeom::complex::ComplexPoint;
use discgeom::defexpr::Params;
use discgeom::disc::{
    contains_bidisc, estimate_index, radius_profile, uniform_sweep, DiscQuery, SweepConfig,
};
use discgeom::domains::{catalog_get, families, load_domain_file, Domain, PointKind};
use discgeom::fit::geometric_grid;
use discgeom::geometry::{
    boundary_point, contact_order, frame_at, levi_form, normal_projection, BoundaryPoint,
};
use discgeom::hoelder::{
    derivative_growth, make_halfspace_power, tangential_gain, GainConfig, GrowthSite,
};
use discgeom::report::{self, num, point, Report};
use discgeom::verify::{self, Suite};
use discgeom::Error;

#[derive(Parser, Debug)]
#[command(name = "discgeom", version, about = "Disc property, Levi form and Hoelder gain analysis of domains in C^n")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (0: rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog families, parameters and reference points.
    ListDomains,
    /// Boundary projection, frame, Levi form and contact orders.
    Frame(PointArgs),
    /// Bidisc containment, radius profile and index estimate.
    Disc(DiscArgs),
    /// Tangential versus normal Hoelder exponents of a half-space power.
    Gain(GainArgs),
    /// Disc check over a boundary patch with a constants lattice.
    Sweep(SweepArgs),
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "fast")]
        suite: String,
    },
}

#[derive(Args, Debug, Clone)]
struct DomainArgs {
    /// Catalog family name.
    #[arg(long, conflicts_with = "domain_file")]
    domain: Option<String>,
    /// TOML domain file.
    #[arg(long)]
    domain_file: Option<PathBuf>,
    /// Catalog parameters, `k=v` (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
}

#[derive(Args, Debug, Clone)]
struct PointArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// `re,im;re,im;...` or `ref:LABEL`; defaults to the first reference point.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    #[arg(long, default_value_t = 1e-6)]
    delta_min: f64,
    #[arg(long, default_value_t = 1e-2)]
    delta_max: f64,
    #[arg(long, default_value_t = 13)]
    delta_steps: usize,
}

impl GridArgs {
    fn grid(&self) -> anyhow::Result<Vec<f64>> {
        if !(self.delta_min > 0.0 && self.delta_max > self.delta_min && self.delta_steps >= 2) {
            return Err(anyhow!("need 0 < delta-min < delta-max and delta-steps >= 2"));
        }
        Ok(geometric_grid(self.delta_min, self.delta_max, self.delta_steps))
    }
}

#[derive(Args, Debug, Clone)]
struct DiscArgs {
    #[command(flatten)]
    at: PointArgs,
    /// Tangent direction; defaults to the reference direction or the first frame tangent.
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, default_value_t = 0.5)]
    c1: f64,
    #[arg(long, default_value_t = 0.01)]
    c2: f64,
    #[arg(long, default_value_t = 8)]
    k_cap: u32,
    #[command(flatten)]
    grid: GridArgs,
    /// Also write `(delta, rho)` as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct GainArgs {
    #[command(flatten)]
    at: PointArgs,
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    #[arg(long, default_value_t = 0.3)]
    alpha: f64,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, default_value_t = 1.0)]
    c2: f64,
    #[arg(long, default_value_t = 1e-10)]
    delta_min: f64,
    #[arg(long, default_value_t = 1e-6)]
    delta_max: f64,
    #[arg(long, default_value_t = 9)]
    delta_steps: usize,
    /// Also write `(h_cap, envelope)` as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SweepArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Patch points separated by `|`, or `refs` for every reference point.
    #[arg(long, default_value = "refs", allow_hyphen_values = true)]
    points: String,
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, default_value_t = 0.5)]
    c1: f64,
    #[arg(long, default_value_t = 0.01)]
    c2: f64,
    #[arg(long, value_delimiter = ',')]
    lattice_c1: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    lattice_c2: Vec<f64>,
    #[command(flatten)]
    grid: GridArgs,
}

/// Exit 2 for configuration problems, 1 for analysis failures.
enum Failure {
    Config(anyhow::Error),
    Analysis(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let config = matches!(
            e,
            Error::Parse(_)
                | Error::UnknownDomain(_)
                | Error::InvalidParameter { .. }
                | Error::TooManyVariables { .. }
                | Error::InvalidArgument(_)
                | Error::DomainFile(_)
        );
        if config {
            Failure::Config(e.into())
        } else {
            Failure::Analysis(e.into())
        }
    }
}

fn config<T>(r: anyhow::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Config)
}

fn parse_params(list: &[String]) -> anyhow::Result<Params> {
    let mut out = Params::new();
    for item in list.iter().filter(|s| !s.trim().is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("parameter `{item}` is not k=v"))?;
        let v: f64 = v.trim().parse().with_context(|| format!("parameter `{k}`"))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn load_domain(a: &DomainArgs, cfg: &mut Map<String, Value>) -> Result<Domain, Failure> {
    let params = config(parse_params(&a.params))?;
    cfg.insert("params".into(), Value::Object(params.iter().map(|(k, v)| (k.clone(), num(*v))).collect()));
    match (&a.domain, &a.domain_file) {
        (Some(name), None) => {
            cfg.insert("domain".into(), Value::from(name.clone()));
            Ok(catalog_get(name, &params)?)
        }
        (None, Some(path)) => {
            cfg.insert("domain_file".into(), Value::from(path.display().to_string()));
            if !params.is_empty() {
                return Err(Failure::Config(anyhow!("--params applies to catalog domains only")));
            }
            Ok(load_domain_file(path)?)
        }
        _ => Err(Failure::Config(anyhow!("give exactly one of --domain or --domain-file"))),
    }
}

fn parse_point(d: &Domain, text: &str) -> Result<ComplexPoint, Failure> {
    let z = if let Some(label) = text.strip_prefix("ref:") {
        d.reference(label)
            .map(|r| r.point.clone())
            .ok_or_else(|| Failure::Config(anyhow!("no reference point `{label}` on {}", d.name)))?
    } else {
        text.parse::<ComplexPoint>().map_err(|e| Failure::Config(anyhow!(e)))?
    };
    if z.dim() != d.n {
        return Err(Failure::Config(anyhow!("point has {} coordinates, domain has n = {}", z.dim(), d.n)));
    }
    Ok(z)
}

/// Boundary point for the seed: accepted as is when already on the boundary.
fn locate(d: &Domain, seed: ComplexPoint) -> Result<BoundaryPoint, Failure> {
    let on = matches!(d.r(&seed), Ok(v) if v.abs() <= 1e-12);
    Ok(if on { boundary_point(d, seed)? } else { normal_projection(d, &seed)? })
}

fn resolve_point(d: &Domain, a: &PointArgs, cfg: &mut Map<String, Value>) -> Result<(BoundaryPoint, Option<ComplexPoint>), Failure> {
    let (seed, dir) = match &a.point {
        Some(t) => {
            let z = parse_point(d, t)?;
            let dir = t.strip_prefix("ref:").and_then(|l| d.reference(l)).and_then(|r| r.direction.clone());
            (z, dir)
        }
        None => {
            let r = d.references.first().ok_or_else(|| Failure::Config(anyhow!("--point is required for {}", d.name)))?;
            (r.point.clone(), r.direction.clone())
        }
    };
    cfg.insert("point".into(), point(&seed));
    Ok((locate(d, seed)?, dir))
}

fn tangent(d: &Domain, bp: &BoundaryPoint, given: &Option<String>, fallback: Option<ComplexPoint>) -> Result<(ComplexPoint, ComplexPoint), Failure> {
    let fr = frame_at(d, bp)?;
    let raw = match given {
        Some(t) => parse_point(d, t)?,
        None => fallback.unwrap_or_else(|| fr.l[0].clone()),
    };
    let mut v = ComplexPoint::zeros(d.n);
    for l in &fr.l {
        v = v.axpy(raw.herm(l), l);
    }
    if !(v.norm() > 1e-12) {
        return Err(Failure::Config(anyhow!("direction {raw} has no tangential component")));
    }
    Ok((fr.n, v.normalized()))
}

fn kind_text(k: &PointKind) -> String {
    match k {
        PointKind::StronglyPseudoconvex => "strongly_pseudoconvex".into(),
        PointKind::InfiniteType => "infinite_type".into(),
        PointKind::FiniteType { order } => format!("finite_type({order})"),
        PointKind::Generic => "generic".into(),
    }
}

fn cmd_list(seed: u64) -> Result<Report, Failure> {
    let mut r = Report::new("list-domains", "domain catalog", seed);
    let mut out = Vec::new();
    for f in families() {
        let mut m = Map::new();
        m.insert("name".into(), Value::from(f.name));
        m.insert("n".into(), Value::from(f.n as u64));
        m.insert("formula".into(), Value::from(f.formula));
        m.insert("local".into(), Value::from(f.local));
        m.insert("note".into(), Value::from(f.note));
        let params: Vec<Value> = f
            .params
            .iter()
            .map(|p| {
                let mut pm = Map::new();
                pm.insert("name".into(), Value::from(p.name));
                pm.insert("default".into(), num(p.default));
                pm.insert("constraint".into(), Value::from(p.constraint));
                Value::Object(pm)
            })
            .collect();
        m.insert("params".into(), Value::Array(params));
        let refs = match catalog_get(f.name, &Params::new()) {
            Ok(d) => d
                .references
                .iter()
                .map(|rp| {
                    let mut pm = Map::new();
                    pm.insert("label".into(), Value::from(rp.label.clone()));
                    pm.insert("point".into(), point(&rp.point));
                    pm.insert("kind".into(), Value::from(kind_text(&rp.kind)));
                    pm.insert("direction".into(), rp.direction.as_ref().map_or(Value::Null, point));
                    pm.insert("note".into(), Value::from(rp.note.clone()));
                    Value::Object(pm)
                })
                .collect(),
            Err(_) => vec![],
        };
        m.insert("references".into(), Value::Array(refs));
        out.push(Value::Object(m));
    }
    r.results = Value::Array(out);
    Ok(r)
}

fn cmd_frame(a: &PointArgs, seed: u64) -> Result<Report, Failure> {
    let mut r = Report::new("frame", "Levi form and contact order", seed);
    let d = load_domain(&a.domain, &mut r.config)?;
    let (bp, _) = resolve_point(&d, a, &mut r.config)?;
    let fr = frame_at(&d, &bp)?;
    let levi = levi_form(&d, &bp, &fr)?;
    let radii = geometric_grid(1e-2, 2e-1, 10);
    let mut contacts = Vec::new();
    for l in &fr.l {
        match contact_order(&d, &bp, l, &radii, 12.0) {
            Ok(c) => contacts.push(report::contact_value(&c)),
            Err(e) => {
                r.diagnostics.push(format!("contact order along {l}: {e}"));
                contacts.push(Value::Null);
            }
        }
    }
    let mut m = Map::new();
    m.insert("boundary_point".into(), point(&bp.p));
    m.insert("residual".into(), num(bp.residual));
    m.insert("frame".into(), report::frame_value(&fr));
    m.insert("levi".into(), report::levi_value(&levi));
    m.insert("contact_orders".into(), Value::Array(contacts));
    r.results = Value::Object(m);
    Ok(r)
}

fn write_csv(path: &Option<PathBuf>, text: String) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(Failure::Config)?;
    }
    Ok(())
}

fn cmd_disc(a: &DiscArgs, seed: u64) -> Result<Report, Failure> {
    let mut r = Report::new("disc", "disc property of index k", seed);
    let d = load_domain(&a.at.domain, &mut r.config)?;
    let (bp, dir) = resolve_point(&d, &a.at, &mut r.config)?;
    let (n, l) = tangent(&d, &bp, &a.direction, dir)?;
    let deltas = config(a.grid.grid())?;
    for (k, v) in [("k", Value::from(a.k)), ("c1", num(a.c1)), ("c2", num(a.c2)), ("k_cap", Value::from(a.k_cap)), ("deltas", report::nums(&deltas))] {
        r.config.insert(k.into(), v);
    }
    let mut checks = Vec::new();
    for &delta in &deltas {
        let q = DiscQuery { p: bp.p.clone(), n: n.clone(), l: l.clone(), c1: a.c1, c2: a.c2, k: a.k, delta };
        q.validate()?;
        let mut m = Map::new();
        m.insert("delta".into(), num(delta));
        match contains_bidisc(&d, &q) {
            Ok(c) => {
                m.insert("containment".into(), report::containment_value(&c));
            }
            Err(e) => {
                m.insert("error".into(), Value::from(e.to_string()));
            }
        }
        checks.push(Value::Object(m));
    }
    let profile = radius_profile(&d, &bp.p, &n, &l, a.c1, &deltas)?;
    let est = estimate_index(&profile, a.k_cap)?;
    let rows: Vec<Vec<f64>> = profile.usable().iter().map(|(d, r)| vec![*d, *r]).collect();
    write_csv(&a.csv, report::csv(&["delta", "rho"], &rows))?;
    let mut m = Map::new();
    m.insert("boundary_point".into(), point(&bp.p));
    m.insert("normal".into(), point(&n));
    m.insert("direction".into(), point(&l));
    m.insert("containment".into(), Value::Array(checks));
    m.insert("profile".into(), report::profile_value(&profile));
    m.insert("index".into(), report::index_value(&est));
    r.results = Value::Object(m);
    Ok(r)
}

fn cmd_gain(a: &GainArgs, seed: u64) -> Result<Report, Failure> {
    let mut r = Report::new("gain", "Hoelder gain along complex tangential directions", seed);
    let d = load_domain(&a.at.domain, &mut r.config)?;
    let (bp, dir) = resolve_point(&d, &a.at, &mut r.config)?;
    let (n, l) = tangent(&d, &bp, &a.direction, dir)?;
    let grid = GridArgs { delta_min: a.delta_min, delta_max: a.delta_max, delta_steps: a.delta_steps };
    let deltas = config(grid.grid())?;
    for (k, v) in [("alpha", num(a.alpha)), ("k", Value::from(a.k)), ("c2", num(a.c2)), ("deltas", report::nums(&deltas))] {
        r.config.insert(k.into(), v);
    }
    let f = make_halfspace_power(&d, &bp, a.alpha, seed)?;
    let mut cfg = GainConfig::new(a.k);
    cfg.c2 = a.c2;
    cfg.deltas = deltas.clone();
    let g = tangential_gain(&d, &f, &bp, &l, &cfg)?;
    let rows: Vec<Vec<f64>> = g.per_delta.iter().map(|x| vec![x.h_cap, x.envelope]).collect();
    write_csv(&a.csv, report::csv(&["h_cap", "envelope"], &rows))?;
    let mut m = Map::new();
    m.insert("boundary_point".into(), point(&bp.p));
    m.insert("function".into(), Value::from(f.label.clone()));
    m.insert("gain".into(), report::gain_value(&g));
    for (key, v, site) in [("normal_growth", &n, GrowthSite::Axis), ("tangential_growth", &l, GrowthSite::Lifted { frac: 0.1 })] {
        match derivative_growth(&d, &f, &bp, v, a.k, &deltas, site) {
            Ok(e) => {
                m.insert(key.into(), report::growth_value(&e));
            }
            Err(e) => r.diagnostics.push(format!("{key}: {e}")),
        }
    }
    r.results = Value::Object(m);
    Ok(r)
}

fn cmd_sweep(a: &SweepArgs, seed: u64) -> Result<Report, Failure> {
    let mut r = Report::new("sweep", "uniform disc property of index k", seed);
    let d = load_domain(&a.domain, &mut r.config)?;
    let seeds: Vec<ComplexPoint> = if a.points == "refs" {
        d.references.iter().map(|p| p.point.clone()).collect()
    } else {
        a.points.split('|').map(|t| parse_point(&d, t.trim())).collect::<Result<_, _>>()?
    };
    let patch: Vec<BoundaryPoint> = seeds.into_iter().map(|z| locate(&d, z)).collect::<Result<_, _>>()?;
    let deltas = config(a.grid.grid())?;
    let mut cfg = SweepConfig::new(a.k, a.c1, a.c2, deltas.clone());
    cfg.lattice_c1 = a.lattice_c1.clone();
    cfg.lattice_c2 = a.lattice_c2.clone();
    if let Some(t) = &a.direction {
        cfg.directions = Some(vec![parse_point(&d, t)?]);
    }
    for (k, v) in [
        ("k", Value::from(a.k)),
        ("c1", num(a.c1)),
        ("c2", num(a.c2)),
        ("deltas", report::nums(&deltas)),
        ("lattice_c1", report::nums(&a.lattice_c1)),
        ("lattice_c2", report::nums(&a.lattice_c2)),
        ("patch", Value::Array(patch.iter().map(|b| point(&b.p)).collect())),
    ] {
        r.config.insert(k.into(), v);
    }
    let s = uniform_sweep(&d, &patch, &cfg)?;
    r.results = report::sweep_value(&s);
    if !s.all_pass {
        r.diagnostics.push("some points fail at the configured constants".into());
    }
    Ok(r)
}

/// Run a small disc analysis twice through this executable and compare bytes.
fn self_determinism() -> Result<bool, String> {
    let exe = std::env::current_exe().map_err(|e| e.to_string())?;
    let run = || -> Result<Vec<u8>, String> {
        let out = std::process::Command::new(&exe)
            .args(["disc", "--domain", "dangelo", "--point", "0;0;0", "--direction", "0;0;1", "--k", "6"])
            .args(["--delta-min", "1e-6", "--delta-max", "1e-4", "--delta-steps", "6"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(String::from_utf8_lossy(&out.stderr).into_owned());
        }
        Ok(out.stdout)
    };
    Ok(run()? == run()?)
}

fn run(cli: &Cli) -> Result<(Report, bool), Failure> {
    match &cli.cmd {
        Command::ListDomains => Ok((cmd_list(cli.seed)?, true)),
        Command::Frame(a) => Ok((cmd_frame(a, cli.seed)?, true)),
        Command::Disc(a) => Ok((cmd_disc(a, cli.seed)?, true)),
        Command::Gain(a) => Ok((cmd_gain(a, cli.seed)?, true)),
        Command::Sweep(a) => Ok((cmd_sweep(a, cli.seed)?, true)),
        Command::Verify { suite } => {
            let suite: Suite = suite.parse().map_err(|e: String| Failure::Config(anyhow!(e)))?;
            let mut results = Vec::new();
            for c in verify::CRITERIA.iter() {
                let res = verify::run_criterion(c.id, suite, &self_determinism);
                eprintln!("{}", res.line());
                results.push(res);
            }
            let ok = results.iter().all(|c| c.pass);
            Ok((verify::suite_report(suite, &results), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (report, ok) = match run(&cli) {
        Ok(x) => x,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
        Err(Failure::Analysis(e)) => {
            eprintln!("analysis failed: {e:#}");
            return ExitCode::from(1);
        }
    };
    let text = report.to_json();
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: writing {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
