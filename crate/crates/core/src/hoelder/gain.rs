use num_complex::Complex64;
use rayon::prelude::*;

use super::HoloTestFunction;
use crate::complex::ComplexPoint;
use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::fit::{fit_loglog, geometric_grid};
use crate::geometry::{boundary_point, complex_gradient, frame_at, line_root, BoundaryPoint, Curve};

/// Differences below this (relative to `max(1, |f|)`) count as zero.
const FLAT_REL: f64 = 1e-14;
const MIN_FIT: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct HoelderEstimate {
    /// Fitted slope; NaN when flat.
    pub exponent: f64,
    pub log_constant: f64,
    pub r_squared: f64,
    pub h_range: (f64, f64),
    /// Every difference was below the noise floor.
    pub flat: bool,
    /// `(h, difference)`.
    pub samples: Vec<(f64, f64)>,
}

impl HoelderEstimate {
    /// The exponent, with flat estimates counted as infinite.
    pub fn effective(&self) -> f64 {
        if self.flat {
            f64::INFINITY
        } else {
            self.exponent
        }
    }
}

fn estimate(samples: Vec<(f64, f64)>, scale: f64) -> Result<HoelderEstimate> {
    let lo = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let hi = samples.iter().map(|s| s.0).fold(0.0, f64::max);
    let floor = FLAT_REL * scale.max(1.0);
    if !samples.is_empty() && samples.iter().all(|s| s.1 <= floor) {
        return Ok(HoelderEstimate {
            exponent: f64::NAN,
            log_constant: f64::NAN,
            r_squared: 0.0,
            h_range: (lo, hi),
            flat: true,
            samples,
        });
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let fit = fit_loglog(&xs, &ys, MIN_FIT)?;
    Ok(HoelderEstimate {
        exponent: fit.slope,
        log_constant: fit.log_constant,
        r_squared: fit.r_squared,
        h_range: (lo, hi),
        flat: false,
        samples,
    })
}

/// Phases of the complex step `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phases {
    /// `h e^{2πij/m}`, `j < m`.
    Circle(usize),
    /// Positive real `h` only.
    Ray,
}

impl Phases {
    fn list(self) -> Vec<Complex64> {
        match self {
            Phases::Ray => vec![Complex64::new(1.0, 0.0)],
            Phases::Circle(m) => {
                (0..m.max(1)).map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m as f64)).collect()
            }
        }
    }
}

fn inside(d: &Domain, z: &ComplexPoint) -> Result<()> {
    match d.r(z) {
        Ok(v) if v < 0.0 => Ok(()),
        Ok(v) => Err(Error::ExitDomain(format!("r = {v:e} at {z}"))),
        Err(e) => Err(Error::ExitDomain(format!("{e} at {z}"))),
    }
}

/// Fit of `max_phase |f(path(h)) - f(path(0))|` against `|h|`.
pub fn hoelder_exponent_along<P>(
    d: &Domain,
    f: &HoloTestFunction,
    path: P,
    h_grid: &[f64],
    phases: Phases,
) -> Result<HoelderEstimate>
where
    P: Fn(Complex64) -> Result<ComplexPoint> + Sync,
{
    let q = path(Complex64::new(0.0, 0.0))?;
    inside(d, &q)?;
    let f0 = f.eval(&q)?;
    let ph = phases.list();
    let rows: Vec<Result<(f64, f64)>> = h_grid
        .par_iter()
        .map(|&h| {
            let mut worst = 0.0f64;
            for e in &ph {
                let z = path(e * h)?;
                inside(d, &z)?;
                worst = worst.max((f.eval(&z)? - f0).norm());
            }
            Ok((h, worst))
        })
        .collect();
    estimate(rows.into_iter().collect::<Result<_>>()?, f0.norm())
}

/// Fit of `max over 8 phases |f(Q + h v) - f(Q)|` against `h`.
pub fn hoelder_exponent(
    d: &Domain,
    f: &HoloTestFunction,
    q: &ComplexPoint,
    v: &ComplexPoint,
    h_grid: &[f64],
) -> Result<HoelderEstimate> {
    hoelder_exponent_along(d, f, |h| Ok(q.axpy(h, v)), h_grid, Phases::Circle(8))
}

/// How the tangential step is realized near the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HPolicy {
    /// `Q + h L`.
    Straight,
    /// Move `p` to the boundary point `p_h` over `p + h L` (along `N_p`)
    /// and step inward: `Q_h = p_h - δ N_{p_h}`.
    BoundaryParallel,
}

fn unit_normal(d: &Domain, z: &ComplexPoint) -> Result<ComplexPoint> {
    let (_, g) = complex_gradient(d, z)?;
    let n = g.norm();
    if !(n > 0.0) {
        return Err(Error::DegenerateGradient { grad_norm: n });
    }
    Ok(g.scale_real(1.0 / n))
}

/// Boundary point over `p + h L`, found along `n`.
fn lift(d: &Domain, p: &ComplexPoint, n: &ComplexPoint, l: &ComplexPoint, h: Complex64) -> Result<ComplexPoint> {
    if h.norm() == 0.0 {
        return Ok(p.clone());
    }
    line_root(d, &p.axpy(h, l), n, h.norm_sqr().max(1e-300))
}

/// Interior point at parameter `h` and depth δ under the policy.
fn displaced(
    d: &Domain,
    p: &ComplexPoint,
    n: &ComplexPoint,
    l: &ComplexPoint,
    delta: f64,
    h: Complex64,
    policy: HPolicy,
) -> Result<ComplexPoint> {
    match policy {
        HPolicy::Straight => Ok(p.axpy(Complex64::new(-delta, 0.0), n).axpy(h, l)),
        HPolicy::BoundaryParallel => {
            let ph = lift(d, p, n, l, h)?;
            let nh = unit_normal(d, &ph)?;
            Ok(ph.axpy(Complex64::new(-delta, 0.0), &nh))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GainConfig {
    pub k: u32,
    pub c2: f64,
    pub deltas: Vec<f64>,
    /// h values per δ, geometric on `[cap / h_span, cap]`.
    pub h_points: usize,
    pub h_span: f64,
    pub phases: Phases,
    pub policy: HPolicy,
}

impl GainConfig {
    pub fn new(k: u32) -> Self {
        GainConfig {
            k,
            c2: 1.0,
            deltas: geometric_grid(1e-10, 1e-6, 9),
            h_points: 8,
            h_span: 100.0,
            phases: Phases::Circle(8),
            policy: HPolicy::BoundaryParallel,
        }
    }

    /// `c2 δ^{1/k} / 10`.
    pub fn h_cap(&self, delta: f64) -> f64 {
        self.c2 * delta.powf(1.0 / self.k as f64) / 10.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaGain {
    pub delta: f64,
    pub h_cap: f64,
    /// Largest tangential difference over the capped h grid.
    pub envelope: f64,
    /// Pointwise fit inside the cap; `None` when it degenerates.
    pub pointwise: Option<HoelderEstimate>,
    /// `|f(p - δN) - f(p - 2δN)|`.
    pub normal_difference: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GainReport {
    /// Envelope against the cap over δ: exponent of `sup_{|h| <= cap} |Δf|` in `cap`.
    pub tangential: HoelderEstimate,
    /// Normal differences against δ.
    pub normal: HoelderEstimate,
    /// Tangential over normal exponent (infinite when the tangential side is flat).
    pub ratio: f64,
    pub per_delta: Vec<DeltaGain>,
    pub direction: ComplexPoint,
}

/// Tangential versus normal Hölder exponents of `f` at `p` along `l`.
pub fn tangential_gain(
    d: &Domain,
    f: &HoloTestFunction,
    p: &BoundaryPoint,
    l: &ComplexPoint,
    cfg: &GainConfig,
) -> Result<GainReport> {
    if cfg.k == 0 || !(cfg.c2 > 0.0) || cfg.deltas.is_empty() || cfg.h_points < 2 || !(cfg.h_span > 1.0) {
        return Err(Error::InvalidArgument("gain needs k >= 1, c2 > 0, deltas, h_points >= 2, h_span > 1".into()));
    }
    let n = unit_normal(d, &p.p)?;
    let l = l.normalized();
    let rows: Vec<Result<DeltaGain>> = cfg
        .deltas
        .par_iter()
        .map(|&delta| {
            let cap = cfg.h_cap(delta);
            let hs = geometric_grid(cap / cfg.h_span, cap, cfg.h_points);
            let path = |h: Complex64| displaced(d, &p.p, &n, &l, delta, h, cfg.policy);
            let q = path(Complex64::new(0.0, 0.0))?;
            inside(d, &q)?;
            let f0 = f.eval(&q)?;
            let mut samples = Vec::with_capacity(hs.len());
            for &h in &hs {
                let mut worst = 0.0f64;
                for e in cfg.phases.list() {
                    let z = path(e * h)?;
                    inside(d, &z)?;
                    worst = worst.max((f.eval(&z)? - f0).norm());
                }
                samples.push((h, worst));
            }
            let envelope = samples.iter().map(|s| s.1).fold(0.0, f64::max);
            let pointwise = estimate(samples, f0.norm()).ok();
            let q2 = p.p.axpy(Complex64::new(-2.0 * delta, 0.0), &n);
            let q1 = p.p.axpy(Complex64::new(-delta, 0.0), &n);
            inside(d, &q1)?;
            inside(d, &q2)?;
            let normal_difference = (f.eval(&q1)? - f.eval(&q2)?).norm();
            Ok(DeltaGain { delta, h_cap: cap, envelope, pointwise, normal_difference })
        })
        .collect();
    let per_delta: Vec<DeltaGain> = rows.into_iter().collect::<Result<_>>()?;
    let scale = f.eval(&p.p.axpy(Complex64::new(-cfg.deltas[0], 0.0), &n))?.norm();
    let tangential = estimate(per_delta.iter().map(|g| (g.h_cap, g.envelope)).collect(), scale)?;
    let normal = estimate(per_delta.iter().map(|g| (g.delta, g.normal_difference)).collect(), scale)?;
    let ratio = tangential.effective() / normal.effective();
    Ok(GainReport { tangential, normal, ratio, per_delta, direction: l })
}

/// Where the directional derivative is taken.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthSite {
    /// At `p - δN`.
    Axis,
    /// At the boundary-parallel point `Q_h` with `h = frac δ^{1/k}`, along the
    /// direction re-projected onto the tangent space there.
    Lifted { frac: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    /// Slope of `log |f'|` against `log δ`; NaN when vanishing.
    pub slope: f64,
    pub log_constant: f64,
    pub r_squared: f64,
    /// The derivative is zero to rounding at every δ.
    pub vanishing: bool,
    /// `(δ, |f'|)`.
    pub samples: Vec<(f64, f64)>,
}

/// Growth of the complex derivative of `f` along `v` as δ -> 0.
/// Steps are `1e-2 δ` for normal directions and `1e-2 δ^{1/k}` for tangential ones.
pub fn derivative_growth(
    d: &Domain,
    f: &HoloTestFunction,
    p: &BoundaryPoint,
    v: &ComplexPoint,
    k: u32,
    deltas: &[f64],
    site: GrowthSite,
) -> Result<GrowthEstimate> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let n = unit_normal(d, &p.p)?;
    let v = v.normalized();
    let normal = v.herm(&n).norm() >= std::f64::consts::FRAC_1_SQRT_2;
    let tangent = v.axpy(-v.herm(&n), &n).normalized();
    let rows: Vec<Result<(f64, f64, f64)>> = deltas
        .par_iter()
        .map(|&delta| {
            let (q, u) = match site {
                GrowthSite::Axis => (p.p.axpy(Complex64::new(-delta, 0.0), &n), v.clone()),
                GrowthSite::Lifted { frac } => {
                    let h = Complex64::new(frac * delta.powf(1.0 / k as f64), 0.0);
                    let ph = lift(d, &p.p, &n, &tangent, h)?;
                    let bp = boundary_point(d, ph)?;
                    let fr = frame_at(d, &bp)?;
                    let q = bp.p.axpy(Complex64::new(-delta, 0.0), &fr.n);
                    let u = if normal {
                        fr.n.scale(v.herm(&n) / v.herm(&n).norm())
                    } else {
                        let mut w = ComplexPoint::zeros(v.dim());
                        for l in &fr.l {
                            w = w.axpy(tangent.herm(l), l);
                        }
                        w.normalized()
                    };
                    (q, u)
                }
            };
            let s = if normal { 1e-2 * delta } else { 1e-2 * delta.powf(1.0 / k as f64) };
            let g = |t: f64| -> Result<Complex64> {
                let z = q.axpy(Complex64::new(t, 0.0), &u);
                inside(d, &z)?;
                f.eval(&z)
            };
            let der = (-g(2.0 * s)? + g(s)? * 8.0 - g(-s)? * 8.0 + g(-2.0 * s)?) / (12.0 * s);
            Ok((delta, der.norm(), f.eval(&q)?.norm()))
        })
        .collect();
    let rows: Vec<(f64, f64, f64)> = rows.into_iter().collect::<Result<_>>()?;
    let samples: Vec<(f64, f64)> = rows.iter().map(|r| (r.0, r.1)).collect();
    if rows.iter().all(|r| r.1 <= 1e-10 * r.2.max(1.0)) {
        return Ok(GrowthEstimate { slope: f64::NAN, log_constant: f64::NAN, r_squared: 0.0, vanishing: true, samples });
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let fit = fit_loglog(&xs, &ys, MIN_FIT)?;
    Ok(GrowthEstimate {
        slope: fit.slope,
        log_constant: fit.log_constant,
        r_squared: fit.r_squared,
        vanishing: false,
        samples,
    })
}

/// Fit of `|f(γ(s)) - f(γ(0))|` against arclength `s`, optionally restricted to `s_range`.
pub fn curve_gain(
    d: &Domain,
    f: &HoloTestFunction,
    curve: &Curve,
    s_range: Option<(f64, f64)>,
) -> Result<HoelderEstimate> {
    let (s0, z0) = curve.samples.first().ok_or_else(|| Error::InvalidArgument("empty curve".into()))?;
    inside(d, z0)?;
    let f0 = f.eval(z0)?;
    let mut samples = Vec::new();
    for (s, z) in &curve.samples[1..] {
        let t = s - s0;
        if let Some((lo, hi)) = s_range {
            if t < lo || t > hi {
                continue;
            }
        }
        inside(d, z)?;
        samples.push((t, (f.eval(z)? - f0).norm()));
    }
    estimate(samples, f0.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defexpr::Params;
    use crate::domains::catalog_get;
    use crate::geometry::{integrate_tangential_curve, Steering};
    use crate::hoelder::make_halfspace_power;
    use std::sync::Arc;

    fn pt(c: &[(f64, f64)]) -> ComplexPoint {
        ComplexPoint::from_re_im(c)
    }

    fn ball_setup() -> (Domain, BoundaryPoint, HoloTestFunction) {
        let d = catalog_get("ball", &Params::new()).unwrap();
        let p = boundary_point(&d, pt(&[(1.0, 0.0), (0.0, 0.0)])).unwrap();
        let f = make_halfspace_power(&d, &p, 0.3, 0).unwrap();
        (d, p, f)
    }

    #[test]
    fn synthetic_power_law_recovered() {
        let samples: Vec<(f64, f64)> = geometric_grid(1e-5, 1e-1, 9).into_iter().map(|h| (h, 2.5 * h.powf(0.37))).collect();
        let e = estimate(samples, 1.0).unwrap();
        assert!((e.exponent - 0.37).abs() < 1e-9);
        assert!((e.log_constant - 2.5f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn ball_normal_exponent() {
        let (d, _, f) = ball_setup();
        // the inward ray must stay inside, so δ sits well below the h grid
        let delta = 1e-10;
        let q = pt(&[(1.0 - delta, 0.0), (0.0, 0.0)]);
        let v = pt(&[(-1.0, 0.0), (0.0, 0.0)]);
        let e = hoelder_exponent_along(&d, &f, |h| Ok(q.axpy(h, &v)), &geometric_grid(1e-5, 1e-3, 9), Phases::Ray)
            .unwrap();
        assert!((e.exponent - 0.3).abs() < 0.03, "{}", e.exponent);
    }

    #[test]
    fn ball_straight_tangent_is_flat_but_boundary_parallel_gains() {
        let (d, p, f) = ball_setup();
        let delta = 1e-10;
        let q = pt(&[(1.0 - delta, 0.0), (0.0, 0.0)]);
        let l = pt(&[(0.0, 0.0), (1.0, 0.0)]);
        let straight = hoelder_exponent(&d, &f, &q, &l, &geometric_grid(1e-7, 1e-6, 5)).unwrap();
        assert!(straight.flat);
        let n = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let e = hoelder_exponent_along(
            &d,
            &f,
            |h| displaced(&d, &p.p, &n, &l, delta, h, HPolicy::BoundaryParallel),
            &geometric_grid(1e-3, 1e-1, 9),
            Phases::Circle(8),
        )
        .unwrap();
        assert!((e.exponent - 0.6).abs() < 0.05, "{}", e.exponent);
    }

    #[test]
    fn linear_function_has_exponent_one() {
        let d = catalog_get("ball", &Params::new()).unwrap();
        let f = HoloTestFunction::closure(
            "linear",
            1.0,
            Arc::new(|z: &ComplexPoint| z.coords()[0] * Complex64::new(0.5, 1.0) - z.coords()[1] * 2.0),
        );
        let q = pt(&[(0.2, 0.1), (-0.3, 0.0)]);
        let v = pt(&[(0.6, 0.0), (0.0, 0.8)]);
        let e = hoelder_exponent(&d, &f, &q, &v, &geometric_grid(1e-5, 1e-2, 7)).unwrap();
        assert!((e.exponent - 1.0).abs() < 1e-6);
    }

    #[test]
    fn exit_domain_is_reported() {
        let (d, _, f) = ball_setup();
        let q = pt(&[(0.999, 0.0), (0.0, 0.0)]);
        let v = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let r = hoelder_exponent(&d, &f, &q, &v, &geometric_grid(1e-4, 1e-2, 4));
        assert!(matches!(r, Err(Error::ExitDomain(_))));
    }

    #[test]
    fn ball_gain_ratio_two() {
        let (d, p, f) = ball_setup();
        let g = tangential_gain(&d, &f, &p, &pt(&[(0.0, 0.0), (1.0, 0.0)]), &GainConfig::new(2)).unwrap();
        assert!((g.normal.exponent - 0.3).abs() < 0.03, "{}", g.normal.exponent);
        assert!((g.tangential.exponent - 0.6).abs() < 0.06, "{}", g.tangential.exponent);
        assert!((g.ratio - 2.0).abs() < 0.2);
    }

    #[test]
    fn gain_pooled_exponent_is_stable_under_h_density() {
        let (d, p, f) = ball_setup();
        let l = pt(&[(0.0, 0.0), (1.0, 0.0)]);
        let mut cfg = GainConfig::new(2);
        let a = tangential_gain(&d, &f, &p, &l, &cfg).unwrap();
        cfg.h_points = 15;
        let b = tangential_gain(&d, &f, &p, &l, &cfg).unwrap();
        assert!((a.tangential.exponent - b.tangential.exponent).abs() < 0.01);
    }

    #[test]
    fn dangelo_gain_is_k_alpha() {
        let d = catalog_get("dangelo", &Params::new()).unwrap();
        let p = boundary_point(&d, ComplexPoint::zeros(3)).unwrap();
        let f = make_halfspace_power(&d, &p, 0.1, 0).unwrap();
        let g = tangential_gain(&d, &f, &p, &pt(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]), &GainConfig::new(6)).unwrap();
        assert!((g.tangential.exponent - 0.6).abs() < 0.08, "{}", g.tangential.exponent);
        assert!(g.tangential.effective() >= g.normal.effective() - 0.05);
    }

    #[test]
    fn ball_derivative_growth() {
        let (d, p, f) = ball_setup();
        let deltas = geometric_grid(1e-8, 1e-4, 9);
        let normal = derivative_growth(&d, &f, &p, &pt(&[(1.0, 0.0), (0.0, 0.0)]), 2, &deltas, GrowthSite::Axis).unwrap();
        assert!((normal.slope + 0.7).abs() < 0.05, "{}", normal.slope);
        let l = pt(&[(0.0, 0.0), (1.0, 0.0)]);
        let axis = derivative_growth(&d, &f, &p, &l, 2, &deltas, GrowthSite::Axis).unwrap();
        assert!(axis.vanishing);
        let lifted = derivative_growth(&d, &f, &p, &l, 2, &deltas, GrowthSite::Lifted { frac: 0.1 }).unwrap();
        assert!(lifted.slope >= -0.55, "{}", lifted.slope);
    }

    #[test]
    fn linear_derivative_does_not_grow() {
        let (d, p, _) = ball_setup();
        let f = HoloTestFunction::expression("2*z1 - i*z2", 2, Params::new(), 1.0).unwrap();
        let g = derivative_growth(&d, &f, &p, &pt(&[(1.0, 0.0), (0.0, 0.0)]), 2, &geometric_grid(1e-8, 1e-4, 5), GrowthSite::Axis)
            .unwrap();
        assert!(g.slope.abs() < 1e-6);
    }

    #[test]
    fn ball_curve_gain() {
        let (d, _, f) = ball_setup();
        let delta = 1e-10;
        let start = pt(&[(1.0 - delta, 0.0), (0.0, 0.0)]);
        let c = integrate_tangential_curve(&d, &start, &Steering::TangentIndex(0), 0.1, 1e-3, 10.0 * delta).expect("curve");
        let e = curve_gain(&d, &f, &c, Some((1e-3, 1e-1))).unwrap();
        assert!((e.exponent - 0.6).abs() < 0.06, "{}", e.exponent);
        let k = HoloTestFunction::closure("const", 1.0, Arc::new(|_: &ComplexPoint| Complex64::new(2.0, 0.0)));
        assert!(curve_gain(&d, &k, &c, None).unwrap().flat);
    }
}
