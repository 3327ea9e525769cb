//! The acceptance suite: eleven criteria, each reported with a measured value
//! and its tolerance.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::complex::ComplexPoint;
use crate::defexpr::Params;
use crate::disc::{
    contains_bidisc, estimate_index, radius_profile, DiscQuery, RadiusProfile, Sampling, Verdict,
};
use crate::domains::{catalog_get, families, Domain, PointKind};
use crate::error::Result;
use crate::fit::geometric_grid;
use crate::geometry::{
    boundary_point, frame_at, integrate_tangential_curve, levi_form, BoundaryPoint, Steering,
};
use crate::hoelder::{
    curve_gain, derivative_growth, hoelder_exponent, interior_samples, make_halfspace_power,
    tangential_gain, GainConfig, GrowthSite, HoloTestFunction,
};
use crate::numdiff::{complex_hessian, fd_crosscheck, hermitian_defect};
use crate::report::{num, Report};

/// Frozen brute-force values of k_hat for egg(m), m = 2, 3, at (0,1) along
/// (1,0), c1 = 0.5, 13 δ values on [1e-6, 1e-2].
pub const EGG_ORACLE_K: [(u32, f64); 2] = [(2, 4.000686679868), (3, 6.001030019802)];

const SEED: u64 = 20240611;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Fast => "fast",
            Suite::Full => "full",
        }
    }

    fn ball_points(self) -> usize {
        match self {
            Suite::Fast => 5,
            Suite::Full => 20,
        }
    }

    fn fd_points(self) -> usize {
        match self {
            Suite::Fast => 20,
            Suite::Full => 100,
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            _ => Err(format!("unknown suite `{s}` (fast, full)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub property: &'static str,
    pub pass: bool,
    pub measured: Value,
    pub tolerance: String,
    pub details: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            crate::report::to_json(&self.measured).split_whitespace().collect::<Vec<_>>().join(" ")
        )
    }
}

struct Check {
    pass: bool,
    measured: Map<String, Value>,
    details: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { pass: true, measured: Map::new(), details: vec![] }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.details.push(what.into());
        }
    }

    fn put(&mut self, key: &str, v: Value) {
        self.measured.insert(key.to_string(), v);
    }
}

fn pt(c: &[(f64, f64)]) -> ComplexPoint {
    ComplexPoint::from_re_im(c)
}

fn params(kv: &[(&str, f64)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn default_deltas() -> Vec<f64> {
    geometric_grid(1e-6, 1e-2, 13)
}

fn profile_at(d: &Domain, bp: &BoundaryPoint, l: &ComplexPoint, c1: f64) -> Result<(RadiusProfile, ComplexPoint)> {
    let fr = frame_at(d, bp)?;
    Ok((radius_profile(d, &bp.p, &fr.n, l, c1, &default_deltas())?, fr.n))
}

fn max_rel_err(profile: &RadiusProfile, oracle: impl Fn(f64) -> f64) -> f64 {
    profile
        .deltas
        .iter()
        .zip(&profile.rhos)
        .map(|(d, r)| r.map_or(f64::INFINITY, |r| (r / oracle(*d) - 1.0).abs()))
        .fold(0.0, f64::max)
}

fn random_sphere_point(rng: &mut ChaCha8Rng) -> ComplexPoint {
    loop {
        let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return pt(&[(x[0] / n, x[1] / n), (x[2] / n, x[3] / n)]);
        }
    }
}

fn c1_ball_index(suite: Suite) -> Result<Check> {
    let d = catalog_get("ball", &Params::new())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut c = Check::new();
    let (mut worst_k, mut min_r2, mut worst_rho) = (2.0f64, 1.0f64, 0.0f64);
    let c1 = 0.5;
    for _ in 0..suite.ball_points() {
        let bp = boundary_point(&d, random_sphere_point(&mut rng))?;
        let l = frame_at(&d, &bp)?.l[0].clone();
        let (profile, _) = profile_at(&d, &bp, &l, c1)?;
        let e = estimate_index(&profile, 8)?;
        let err = max_rel_err(&profile, |dl| (1.0 - (1.0 - (1.0 - c1) * dl).powi(2)).sqrt());
        if (e.k_hat - 2.0).abs() > (worst_k - 2.0).abs() {
            worst_k = e.k_hat;
        }
        min_r2 = min_r2.min(e.r_squared);
        worst_rho = worst_rho.max(err);
        c.require((1.9..=2.1).contains(&e.k_hat), format!("k_hat {} at {}", e.k_hat, bp.p));
        c.require(e.r_squared >= 0.99, format!("r^2 {} at {}", e.r_squared, bp.p));
        c.require(err <= 0.02, format!("rho error {err} at {}", bp.p));
    }
    c.put("points", Value::from(suite.ball_points() as u64));
    c.put("worst_k_hat", num(worst_k));
    c.put("min_r_squared", num(min_r2));
    c.put("max_rho_rel_error", num(worst_rho));
    Ok(c)
}

fn c2_egg(_: Suite) -> Result<Check> {
    let mut c = Check::new();
    for (m, oracle) in EGG_ORACLE_K {
        let d = catalog_get("egg", &params(&[("m", m as f64)]))?;
        let bp = boundary_point(&d, pt(&[(0.0, 0.0), (1.0, 0.0)]))?;
        let (profile, _) = profile_at(&d, &bp, &pt(&[(1.0, 0.0), (0.0, 0.0)]), 0.5)?;
        let e = estimate_index(&profile, 8)?;
        let rel = (e.k_hat / oracle - 1.0).abs();
        c.put(&format!("m{m}_k_hat"), num(e.k_hat));
        c.put(&format!("m{m}_oracle"), num(oracle));
        c.require(rel <= 0.05, format!("m={m}: k_hat {} vs oracle {oracle}", e.k_hat));
    }
    Ok(c)
}

fn c3_dangelo_origin(_: Suite) -> Result<Check> {
    let d = catalog_get("dangelo", &Params::new())?;
    let bp = boundary_point(&d, ComplexPoint::zeros(3))?;
    let c1 = 0.5;
    let (profile, _) = profile_at(&d, &bp, &ComplexPoint::basis(3, 2), c1)?;
    let e = estimate_index(&profile, 8)?;
    let err = max_rel_err(&profile, |dl| ((1.0 - c1) * dl).powf(1.0 / 6.0));
    let mut c = Check::new();
    c.put("k_hat", num(e.k_hat));
    c.put("max_rho_rel_error", num(err));
    c.require((5.8..=6.2).contains(&e.k_hat), format!("k_hat {}", e.k_hat));
    c.require(err <= 0.02, format!("rho error {err}"));
    Ok(c)
}

fn c4_dangelo_curve(_: Suite) -> Result<Check> {
    let d = catalog_get("dangelo", &params(&[("chart", 1.0)]))?;
    let rp = d.reference("curve(0.1)").expect("catalog point").clone();
    let bp = boundary_point(&d, rp.point)?;
    let (profile, _) = profile_at(&d, &bp, &ComplexPoint::basis(3, 2), 0.5)?;
    let e = estimate_index(&profile, 8)?;
    let mut c = Check::new();
    c.put("slope", num(e.slope));
    c.put("verdict", Value::from(crate::report::verdict_text(&e.verdict)));
    c.require(e.verdict == Verdict::ExceedsCap, format!("verdict {:?}", e.verdict));
    Ok(c)
}

fn c5_worm(_: Suite) -> Result<Check> {
    let d = catalog_get("worm", &params(&[("beta", 2.0)]))?;
    let labels: Vec<String> = d
        .references
        .iter()
        .filter(|r| r.label.starts_with('A'))
        .take(3)
        .map(|r| r.label.clone())
        .collect();
    let deltas = geometric_grid(1e-6, 1e-4, 5);
    let mut c = Check::new();
    let mut checks = 0u64;
    let mut verdicts = Vec::new();
    for label in &labels {
        let bp = boundary_point(&d, d.reference(label).expect("label").point.clone())?;
        let fr = frame_at(&d, &bp)?;
        let l = fr.l[0].clone();
        for k in 2..=8 {
            for &delta in &deltas {
                let q = DiscQuery { p: bp.p.clone(), n: fr.n.clone(), l: l.clone(), c1: 0.01, c2: 0.01, k, delta };
                let ok = contains_bidisc(&d, &q)?.contained;
                checks += 1;
                c.require(ok, format!("{label}: k={k} delta={delta:e} not contained"));
            }
        }
        let (profile, _) = profile_at(&d, &bp, &l, 0.01)?;
        let e = estimate_index(&profile, 8)?;
        verdicts.push(Value::from(format!("{label}: {}", crate::report::verdict_text(&e.verdict))));
        c.require(e.verdict == Verdict::ExceedsCap, format!("{label}: verdict {:?}", e.verdict));
    }
    c.put("containment_checks", Value::from(checks));
    c.put("verdicts", Value::Array(verdicts));
    Ok(c)
}

fn c6_levi(_: Suite) -> Result<Check> {
    let d = catalog_get("worm", &params(&[("beta", 2.0)]))?;
    let mut c = Check::new();
    let (mut max_a, mut min_s) = (0.0f64, f64::INFINITY);
    let a_pts: Vec<_> = d.references.iter().filter(|r| r.kind == PointKind::InfiniteType).take(10).collect();
    let s_pts: Vec<_> = d.references.iter().filter(|r| r.kind == PointKind::StronglyPseudoconvex).take(10).collect();
    c.require(a_pts.len() == 10 && s_pts.len() == 10, "catalog lacks 10 + 10 worm points");
    for r in a_pts {
        let bp = boundary_point(&d, r.point.clone())?;
        let m = levi_form(&d, &bp, &frame_at(&d, &bp)?)?.min_eigenvalue;
        max_a = max_a.max(m.abs());
        c.require(m.abs() <= 1e-8, format!("{}: min eigenvalue {m:e}", r.label));
    }
    for r in s_pts {
        let bp = boundary_point(&d, r.point.clone())?;
        let m = levi_form(&d, &bp, &frame_at(&d, &bp)?)?.min_eigenvalue;
        min_s = min_s.min(m);
        c.require(m > 1e-4, format!("{}: min eigenvalue {m:e}", r.label));
    }
    c.put("annulus_max_abs_eigenvalue", num(max_a));
    c.put("strongly_pseudoconvex_min_eigenvalue", num(min_s));
    Ok(c)
}

fn c7_negative_control(_: Suite) -> Result<Check> {
    let d = catalog_get("c3_mixed", &Params::new())?;
    let bp = boundary_point(&d, ComplexPoint::zeros(3))?;
    let n = frame_at(&d, &bp)?.n;
    let mut c = Check::new();
    let (c1, c2) = (0.5, 1.0);
    for b in [(0.866, 0.5), (0.6, 0.8), (0.0, 1.0)] {
        let l = pt(&[(0.0, 0.0), (b.0, 0.0), (b.1, 0.0)]).normalized();
        let q = DiscQuery { p: bp.p.clone(), n: n.clone(), l, c1, c2, k: 7, delta: 1e-14 };
        let res = contains_bidisc(&d, &q)?;
        let w = &res.witness;
        let valid = d.r(&w.point).map_or(true, |v| v >= 0.0)
            && w.w1.norm() <= c1 * q.delta * (1.0 + 1e-12)
            && w.w2.norm() <= q.bidisc().r2 * (1.0 + 1e-12);
        c.require(!res.contained, format!("direction (0,{},{}) contained at k=7", b.0, b.1));
        c.require(valid, format!("direction (0,{},{}): invalid witness", b.0, b.1));
        c.put(&format!("witness_r_b3_{}", b.1), num(w.r));
    }
    let mut positive = 0u64;
    for delta in geometric_grid(1e-14, 1e-6, 9) {
        let q = DiscQuery { p: bp.p.clone(), n: n.clone(), l: ComplexPoint::basis(3, 1), c1, c2, k: 8, delta };
        let ok = contains_bidisc(&d, &q)?.contained;
        positive += ok as u64;
        c.require(ok, format!("direction (0,1,0) not contained at delta {delta:e}"));
    }
    c.put("positive_contained", Value::from(positive));
    Ok(c)
}

fn ball_f(d: &Domain) -> Result<(BoundaryPoint, HoloTestFunction)> {
    let bp = boundary_point(d, pt(&[(1.0, 0.0), (0.0, 0.0)]))?;
    let f = make_halfspace_power(d, &bp, 0.3, SEED)?;
    Ok((bp, f))
}

fn c8_ball_gain(_: Suite) -> Result<Check> {
    let d = catalog_get("ball", &Params::new())?;
    let (bp, f) = ball_f(&d)?;
    let g = tangential_gain(&d, &f, &bp, &pt(&[(0.0, 0.0), (1.0, 0.0)]), &GainConfig::new(2))?;
    let delta = 1e-10;
    let start = pt(&[(1.0 - delta, 0.0), (0.0, 0.0)]);
    let curve = integrate_tangential_curve(&d, &start, &Steering::TangentIndex(0), 0.1, 1e-3, 10.0 * delta)?;
    let cg = curve_gain(&d, &f, &curve, Some((1e-3, 1e-1)))?;
    let mut c = Check::new();
    c.put("normal_exponent", num(g.normal.exponent));
    c.put("tangential_exponent", num(g.tangential.exponent));
    c.put("ratio", num(g.ratio));
    c.put("curve_exponent", num(cg.exponent));
    c.require((g.normal.exponent - 0.3).abs() <= 0.03, "normal exponent");
    c.require((g.tangential.exponent - 0.6).abs() <= 0.06, "tangential exponent");
    c.require((cg.effective() - 0.6).abs() <= 0.06, "curve exponent");
    c.require((1.8..=2.2).contains(&g.ratio), "ratio");
    Ok(c)
}

fn c9_dangelo_gain(_: Suite) -> Result<Check> {
    let d = catalog_get("dangelo", &Params::new())?;
    let bp = boundary_point(&d, ComplexPoint::zeros(3))?;
    let f = make_halfspace_power(&d, &bp, 0.1, SEED)?;
    let g = tangential_gain(&d, &f, &bp, &ComplexPoint::basis(3, 2), &GainConfig::new(6))?;
    let mut c = Check::new();
    c.put("tangential_exponent", num(g.tangential.effective()));
    c.put("normal_exponent", num(g.normal.effective()));
    c.require(g.tangential.effective() >= 0.55, "pooled tangential exponent");
    Ok(c)
}

fn c10_growth(_: Suite) -> Result<Check> {
    let d = catalog_get("ball", &Params::new())?;
    let (bp, f) = ball_f(&d)?;
    let deltas = geometric_grid(1e-8, 1e-4, 9);
    let normal = derivative_growth(&d, &f, &bp, &pt(&[(1.0, 0.0), (0.0, 0.0)]), 2, &deltas, GrowthSite::Axis)?;
    let tangent =
        derivative_growth(&d, &f, &bp, &pt(&[(0.0, 0.0), (1.0, 0.0)]), 2, &deltas, GrowthSite::Lifted { frac: 0.1 })?;
    let mut c = Check::new();
    c.put("normal_slope", num(normal.slope));
    c.put("tangential_slope", num(tangent.slope));
    c.require((normal.slope + 0.7).abs() <= 0.05, "normal slope");
    c.require(tangent.vanishing || tangent.slope >= -0.55, "tangential slope");
    Ok(c)
}

fn engine_domains() -> Result<Vec<Domain>> {
    let mut out = Vec::new();
    for fam in families() {
        if fam.name == "dsl" {
            continue;
        }
        out.push(catalog_get(fam.name, &Params::new())?);
    }
    out.push(catalog_get("dangelo", &params(&[("chart", 1.0)]))?);
    Ok(out)
}

fn c11_engine(suite: Suite, determinism: &dyn Fn() -> std::result::Result<bool, String>) -> Result<Check> {
    let mut c = Check::new();
    let (mut fd, mut herm, mut frame) = (0.0f64, 0.0f64, 0.0f64);
    for d in engine_domains()? {
        let center = d.references.first().map_or(d.interior.clone(), |r| r.point.clone());
        let pts = interior_samples(&d, &center, suite.fd_points(), SEED);
        c.require(pts.len() == suite.fd_points(), format!("{}: only {} sample points", d.name, pts.len()));
        for z in &pts {
            let e = fd_crosscheck(&d, z, 1e-6)?;
            fd = fd.max(e);
            c.require(e <= 1e-6, format!("{}: fd mismatch {e:e} at {z}", d.name));
        }
        for r in &d.references {
            let h = hermitian_defect(&complex_hessian(&d, &r.point)?);
            herm = herm.max(h);
            c.require(h <= 1e-10, format!("{} {}: hermitian defect {h:e}", d.name, r.label));
            let bp = boundary_point(&d, r.point.clone())?;
            let fr = frame_at(&d, &bp)?;
            let mut err = (fr.n.norm() - 1.0).abs();
            err = err.max(fr.jn.sub(&fr.n.scale(Complex64::new(0.0, 1.0))).norm());
            for (a, la) in fr.l.iter().enumerate() {
                err = err.max(la.herm(&fr.n).norm());
                for (b, lb) in fr.l.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    err = err.max((la.herm(lb) - want).norm());
                }
            }
            frame = frame.max(err);
            c.require(err <= 1e-10, format!("{} {}: frame defect {err:e}", d.name, r.label));
        }
    }
    // synthetic power laws through both fitters
    let deltas = default_deltas();
    let profile = RadiusProfile {
        rhos: deltas.iter().map(|d| Some(0.7 * d.powf(0.2))).collect(),
        errors: vec![None; deltas.len()],
        deltas,
        c1: 0.5,
        sampling: Sampling::default(),
    };
    let idx = estimate_index(&profile, 8)?;
    let ball = catalog_get("ball", &Params::new())?;
    let f = HoloTestFunction::closure(
        "2.5 z1^0.37",
        0.37,
        std::sync::Arc::new(|z: &ComplexPoint| {
            let w = z.coords()[0];
            if w.norm() == 0.0 {
                w
            } else {
                w.powf(0.37) * 2.5
            }
        }),
    );
    let h = hoelder_exponent(&ball, &f, &ComplexPoint::zeros(2), &ComplexPoint::basis(2, 0), &geometric_grid(1e-6, 1e-1, 11))?;
    let fit_err = (idx.slope - 0.2).abs().max((h.exponent - 0.37).abs());
    c.require(fit_err <= 1e-9, format!("power-law recovery error {fit_err:e}"));
    let det = determinism();
    c.require(det == Ok(true), format!("determinism: {det:?}"));
    c.put("max_fd_rel_error", num(fd));
    c.put("max_hermitian_defect", num(herm));
    c.put("max_frame_defect", num(frame));
    c.put("power_law_error", num(fit_err));
    c.put("deterministic", Value::from(det == Ok(true)));
    Ok(c)
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub property: &'static str,
    pub tolerance: &'static str,
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "ball index 2", property: "C^2 strongly pseudoconvex boundaries have disc index 2", tolerance: "k_hat in [1.9, 2.1], r^2 >= 0.99, rho within 2% of closed form" },
    Criterion { id: 2, name: "egg finite type", property: "finite type 2m gives index 2m", tolerance: "k_hat within 5% of the brute-force oracle" },
    Criterion { id: 3, name: "dangelo origin", property: "index 6 at an infinite-type point of finite regular type", tolerance: "k_hat in [5.8, 6.2], rho within 2% of ((1-c1) delta)^(1/6)" },
    Criterion { id: 4, name: "dangelo curve", property: "unbounded index along the curve in chart coordinates", tolerance: "verdict exceeds_cap, k_cap = 8" },
    Criterion { id: 5, name: "worm annulus", property: "unbounded disc index on the worm annulus", tolerance: "bidiscs contained for k = 2..8, delta in [1e-6, 1e-4]; verdict exceeds_cap" },
    Criterion { id: 6, name: "levi degeneracy", property: "Levi form degenerate on the annulus, positive off it", tolerance: "|min eig| <= 1e-8 on A; min eig > 1e-4 off A" },
    Criterion { id: 7, name: "negative control", property: "mixed tangent directions fail index 7 on c3_mixed", tolerance: "not contained with valid witness; (0,1,0) contained at k = 8" },
    Criterion { id: 8, name: "ball gain", property: "tangential Hoelder gain alpha -> 2 alpha on the ball", tolerance: "normal 0.30 +- 0.03, tangential 0.60 +- 0.06, ratio in [1.8, 2.2]" },
    Criterion { id: 9, name: "dangelo gain", property: "local gain alpha -> k alpha at the dangelo origin", tolerance: "pooled tangential exponent >= 0.55" },
    Criterion { id: 10, name: "derivative growth", property: "Cauchy-type growth of derivatives near the boundary", tolerance: "normal slope -0.70 +- 0.05, tangential slope >= -0.55" },
    Criterion { id: 11, name: "engine integrity", property: "derivative engine, frames, fitters and determinism", tolerance: "fd <= 1e-6 rel, hermitian <= 1e-10, frame <= 1e-10, power law <= 1e-9, identical bytes" },
];

/// Run one criterion; analysis errors count as failures.
pub fn run_criterion(id: u32, suite: Suite, determinism: &dyn Fn() -> std::result::Result<bool, String>) -> CriterionResult {
    let meta = CRITERIA.iter().find(|c| c.id == id).expect("criterion id in 1..=11");
    let outcome = match id {
        1 => c1_ball_index(suite),
        2 => c2_egg(suite),
        3 => c3_dangelo_origin(suite),
        4 => c4_dangelo_curve(suite),
        5 => c5_worm(suite),
        6 => c6_levi(suite),
        7 => c7_negative_control(suite),
        8 => c8_ball_gain(suite),
        9 => c9_dangelo_gain(suite),
        10 => c10_growth(suite),
        _ => c11_engine(suite, determinism),
    };
    let (pass, measured, details) = match outcome {
        Ok(c) => (c.pass, Value::Object(c.measured), c.details),
        Err(e) => (false, Value::Null, vec![format!("error: {e}")]),
    };
    CriterionResult {
        id,
        name: meta.name,
        property: meta.property,
        pass,
        measured,
        tolerance: meta.tolerance.to_string(),
        details,
    }
}

/// In-process determinism check: the same analysis rendered twice.
pub fn report_determinism() -> std::result::Result<bool, String> {
    let render = || -> Result<String> {
        let d = catalog_get("dangelo", &Params::new())?;
        let bp = boundary_point(&d, ComplexPoint::zeros(3))?;
        let fr = frame_at(&d, &bp)?;
        let p = radius_profile(&d, &bp.p, &fr.n, &ComplexPoint::basis(3, 2), 0.5, &geometric_grid(1e-6, 1e-4, 6))?;
        let mut r = Report::new("disc", "disc property", SEED);
        r.results = crate::report::profile_value(&p);
        Ok(r.to_json())
    };
    let a = render().map_err(|e| e.to_string())?;
    let b = render().map_err(|e| e.to_string())?;
    Ok(a == b)
}

pub fn run_suite(suite: Suite, determinism: &dyn Fn() -> std::result::Result<bool, String>) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.id, suite, determinism)).collect()
}

pub fn suite_report(suite: Suite, results: &[CriterionResult]) -> Report {
    let mut r = Report::new("verify", "acceptance suite", SEED);
    r.config.insert("suite".into(), Value::from(suite.name()));
    let items: Vec<Value> = results
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("id".into(), Value::from(c.id));
            m.insert("name".into(), Value::from(c.name));
            m.insert("property".into(), Value::from(c.property));
            m.insert("pass".into(), Value::from(c.pass));
            m.insert("measured".into(), c.measured.clone());
            m.insert("tolerance".into(), Value::from(c.tolerance.clone()));
            m.insert("details".into(), Value::from(c.details.clone()));
            Value::Object(m)
        })
        .collect();
    let all = results.iter().all(|c| c.pass);
    let mut res = Map::new();
    res.insert("criteria".into(), Value::Array(items));
    res.insert("all_pass".into(), Value::from(all));
    r.results = Value::Object(res);
    r.diagnostics = results.iter().flat_map(|c| c.details.iter().map(move |d| format!("criterion {}: {d}", c.id))).collect();
    r
}
