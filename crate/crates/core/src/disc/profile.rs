use num_complex::Complex64;
use rayon::prelude::*;

use super::{contains_bidisc_with, Bidisc, Sampling};
use crate::complex::ComplexPoint;
use crate::domains::Domain;
use crate::error::{Error, EvalError, Result};
use crate::fit::fit_loglog;

/// Relative tolerance of the radius bisection.
const RHO_TOL: f64 = 1e-3;
/// Fewest successful δ samples for a profile.
const MIN_PROFILE: usize = 6;

fn contained(d: &Domain, b: &Bidisc, s: &Sampling) -> Result<bool> {
    match contains_bidisc_with(d, b, s) {
        Ok(c) => Ok(c.contained),
        Err(Error::Eval(EvalError::Locality { .. })) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Largest sample-certified tangential radius ρ with the bidisc of radii
/// `(c1 δ, ρ)` at `p - δN` inside the domain.
pub fn max_tangential_radius_with(
    d: &Domain,
    p: &ComplexPoint,
    n: &ComplexPoint,
    l: &ComplexPoint,
    c1: f64,
    delta: f64,
    s: &Sampling,
) -> Result<f64> {
    let q = p.axpy(Complex64::new(-delta, 0.0), n);
    match d.r(&q) {
        Ok(v) if v < 0.0 => {}
        Ok(v) => return Err(Error::CenterOutside { r: v }),
        Err(_) => return Err(Error::CenterOutside { r: f64::NAN }),
    }
    let disc = |rho: f64| Bidisc { q: q.clone(), n: n.clone(), l: l.clone(), r1: c1 * delta, r2: rho };
    let mut hi = d.diameter;
    if contained(d, &disc(hi), s)? {
        return Ok(hi);
    }
    let mut lo = hi;
    let mut found = false;
    for _ in 0..200 {
        lo *= 0.5;
        if contained(d, &disc(lo), s)? {
            found = true;
            break;
        }
        hi = lo;
    }
    if !found {
        return Ok(0.0);
    }
    while hi - lo > RHO_TOL * lo {
        let mid = 0.5 * (lo + hi);
        if contained(d, &disc(mid), s)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

pub fn max_tangential_radius(
    d: &Domain,
    p: &ComplexPoint,
    n: &ComplexPoint,
    l: &ComplexPoint,
    c1: f64,
    delta: f64,
) -> Result<f64> {
    max_tangential_radius_with(d, p, n, l, c1, delta, &Sampling::default())
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusProfile {
    pub deltas: Vec<f64>,
    /// `None` where the radius search failed.
    pub rhos: Vec<Option<f64>>,
    pub errors: Vec<Option<String>>,
    pub c1: f64,
    pub sampling: Sampling,
}

impl RadiusProfile {
    /// `(δ, ρ)` pairs with a positive radius.
    pub fn usable(&self) -> Vec<(f64, f64)> {
        self.deltas
            .iter()
            .zip(&self.rhos)
            .filter_map(|(d, r)| r.filter(|r| *r > 0.0).map(|r| (*d, r)))
            .collect()
    }
}

/// ρ(δ) over a δ grid; per-δ failures are kept as gaps.
pub fn radius_profile_with(
    d: &Domain,
    p: &ComplexPoint,
    n: &ComplexPoint,
    l: &ComplexPoint,
    c1: f64,
    deltas: &[f64],
    s: &Sampling,
) -> Result<RadiusProfile> {
    let results: Vec<Result<f64>> = deltas
        .par_iter()
        .map(|&delta| max_tangential_radius_with(d, p, n, l, c1, delta, s))
        .collect();
    let mut rhos = Vec::with_capacity(deltas.len());
    let mut errors = Vec::with_capacity(deltas.len());
    for r in results {
        match r {
            Ok(v) => {
                rhos.push(Some(v));
                errors.push(None);
            }
            Err(e) => {
                rhos.push(None);
                errors.push(Some(e.to_string()));
            }
        }
    }
    let profile = RadiusProfile { deltas: deltas.to_vec(), rhos, errors, c1, sampling: *s };
    let ok = profile.usable().len();
    if ok < MIN_PROFILE {
        return Err(Error::DegenerateFit { usable: ok, needed: MIN_PROFILE });
    }
    Ok(profile)
}

pub fn radius_profile(
    d: &Domain,
    p: &ComplexPoint,
    n: &ComplexPoint,
    l: &ComplexPoint,
    c1: f64,
    deltas: &[f64],
) -> Result<RadiusProfile> {
    radius_profile_with(d, p, n, l, c1, deltas, &Sampling::default())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Verdict {
    Finite(f64),
    ExceedsCap,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexEstimate {
    pub slope: f64,
    pub k_hat: f64,
    pub r_squared: f64,
    pub verdict: Verdict,
    pub k_cap: u32,
}

/// Fit `log ρ` against `log δ`: the index is the reciprocal slope.
pub fn estimate_index(profile: &RadiusProfile, k_cap: u32) -> Result<IndexEstimate> {
    let pts = profile.usable();
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let fit = fit_loglog(&xs, &ys, MIN_PROFILE)?;
    let s = fit.slope;
    let floor = 1.0 / k_cap as f64;
    let verdict = if s < floor {
        Verdict::ExceedsCap
    } else if s <= 1.05 && fit.r_squared >= 0.98 {
        Verdict::Finite(1.0 / s)
    } else {
        Verdict::Inconclusive
    };
    Ok(IndexEstimate { slope: s, k_hat: 1.0 / s, r_squared: fit.r_squared, verdict, k_cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defexpr::Params;
    use crate::domains::catalog_get;
    use crate::fit::geometric_grid;

    fn pt(c: &[(f64, f64)]) -> ComplexPoint {
        ComplexPoint::from_re_im(c)
    }

    #[test]
    fn synthetic_power_law() {
        let deltas = geometric_grid(1e-6, 1e-2, 13);
        let profile = RadiusProfile {
            rhos: deltas.iter().map(|d| Some(3.0 * d.powf(0.25))).collect(),
            errors: vec![None; deltas.len()],
            deltas,
            c1: 0.5,
            sampling: Sampling::default(),
        };
        let e = estimate_index(&profile, 8).unwrap();
        assert!((e.slope - 0.25).abs() < 1e-9);
        assert!((e.k_hat - 4.0).abs() < 1e-8);
        assert!((e.r_squared - 1.0).abs() < 1e-12);
        assert!(matches!(e.verdict, Verdict::Finite(k) if (k - 4.0).abs() < 1e-8));
    }

    #[test]
    fn ball_radius_matches_closed_form() {
        let d = catalog_get("ball", &Params::new()).unwrap();
        let (p, n, l) = (pt(&[(1.0, 0.0), (0.0, 0.0)]), pt(&[(1.0, 0.0), (0.0, 0.0)]), pt(&[(0.0, 0.0), (1.0, 0.0)]));
        for delta in [1e-6, 1e-4, 1e-3] {
            let rho = max_tangential_radius(&d, &p, &n, &l, 0.5, delta).unwrap();
            let expect = (1.0 - (1.0 - 0.5 * delta).powi(2)).sqrt();
            assert!((rho / expect - 1.0).abs() < 0.02, "{delta}: {rho} vs {expect}");
        }
    }

    #[test]
    fn dangelo_radius_matches_closed_form() {
        let d = catalog_get("dangelo", &Params::new()).unwrap();
        let p = ComplexPoint::zeros(3);
        let n = pt(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let l = pt(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let delta = 1e-4;
        let rho = max_tangential_radius(&d, &p, &n, &l, 0.5, delta).unwrap();
        let expect = (0.5 * delta).powf(1.0 / 6.0);
        assert!((rho / expect - 1.0).abs() < 0.02, "{rho} vs {expect}");
    }

    #[test]
    fn center_outside() {
        let d = catalog_get("ball", &Params::new()).unwrap();
        let r = max_tangential_radius(
            &d,
            &pt(&[(1.0, 0.0), (0.0, 0.0)]),
            &pt(&[(-1.0, 0.0), (0.0, 0.0)]),
            &pt(&[(0.0, 0.0), (1.0, 0.0)]),
            0.5,
            1e-3,
        );
        assert!(matches!(r, Err(Error::CenterOutside { .. })));
    }
}
