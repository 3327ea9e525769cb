//! Bidisc containment and the disc property of index k.
//!
//! The bidisc at a boundary point `p` with outward normal `N` and unit
//! tangent `L` is `{Q - w1 N + w2 L : |w1| <= r1, |w2| <= r2}`, `Q = p - δN`,
//! with `r1 = c1 δ` and `r2 = c2 δ^{1/k}`.

mod profile;
mod sweep;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::complex::ComplexPoint;
use crate::domains::Domain;
use crate::error::{Error, EvalError, Result};

pub use profile::{
    estimate_index, max_tangential_radius, radius_profile, IndexEstimate, RadiusProfile, Verdict,
};
pub use sweep::{uniform_sweep, PointSweep, SweepConfig, SweepReport, UniformConstants};

/// `Q - w1 N + w2 L`.
pub fn embed(q: &ComplexPoint, n: &ComplexPoint, l: &ComplexPoint, w1: Complex64, w2: Complex64) -> ComplexPoint {
    q.axpy(-w1, n).axpy(w2, l)
}

/// Sampling lattice for containment checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sampling {
    /// Radii per factor, including 0 and the full radius.
    pub n_r: usize,
    /// Phases per factor, starting at 0.
    pub n_theta: usize,
    /// Coordinate-search iterations from the lattice maximum.
    pub refine_iters: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { n_r: 6, n_theta: 24, refine_iters: 20 }
    }
}

/// A bidisc `{q - w1 n + w2 l : |w1| <= r1, |w2| <= r2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bidisc {
    pub q: ComplexPoint,
    pub n: ComplexPoint,
    pub l: ComplexPoint,
    pub r1: f64,
    pub r2: f64,
}

/// Disc-property query at a boundary point.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscQuery {
    pub p: ComplexPoint,
    pub n: ComplexPoint,
    pub l: ComplexPoint,
    pub c1: f64,
    pub c2: f64,
    pub k: u32,
    pub delta: f64,
}

impl DiscQuery {
    pub fn validate(&self) -> Result<()> {
        if !(self.c1 > 0.0 && self.c1 < 1.0) {
            return Err(Error::InvalidArgument(format!("c1 = {} must lie in (0, 1)", self.c1)));
        }
        if !(self.c2 > 0.0) || !(self.delta > 0.0) || self.k == 0 {
            return Err(Error::InvalidArgument("need c2 > 0, delta > 0, k >= 1".into()));
        }
        Ok(())
    }

    pub fn center(&self) -> ComplexPoint {
        self.p.axpy(Complex64::new(-self.delta, 0.0), &self.n)
    }

    pub fn bidisc(&self) -> Bidisc {
        Bidisc {
            q: self.center(),
            n: self.n.clone(),
            l: self.l.clone(),
            r1: self.c1 * self.delta,
            r2: self.c2 * self.delta.powf(1.0 / self.k as f64),
        }
    }
}

/// A sample where r is nonnegative (or undefined).
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub point: ComplexPoint,
    pub w1: Complex64,
    pub w2: Complex64,
    /// r at the point; `+inf` when a guard excludes it.
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Containment {
    pub contained: bool,
    /// Maximizer of r over the samples; a witness of non-containment when `!contained`.
    pub witness: Witness,
    pub evaluations: usize,
}

fn polar_samples(radius: f64, s: &Sampling) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for i in 1..s.n_r {
        let rho = radius * i as f64 / (s.n_r - 1) as f64;
        for j in 0..s.n_theta {
            out.push(Complex64::from_polar(rho, std::f64::consts::TAU * j as f64 / s.n_theta as f64));
        }
    }
    out
}

/// r at a bidisc sample: guards give `+inf`, locality is an error.
fn sample(d: &Domain, b: &Bidisc, w1: Complex64, w2: Complex64) -> std::result::Result<f64, EvalError> {
    match d.r(&embed(&b.q, &b.n, &b.l, w1, w2)) {
        Ok(v) => Ok(v),
        Err(EvalError::Guard(_)) | Err(EvalError::DomainOfDefinition { .. }) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

fn clamp_disc(w: Complex64, r: f64) -> Complex64 {
    let m = w.norm();
    if m > r {
        w * (r / m)
    } else {
        w
    }
}

/// Sample-certified containment of a bidisc in the domain.
pub fn contains_bidisc_with(d: &Domain, b: &Bidisc, s: &Sampling) -> Result<Containment> {
    let s1 = polar_samples(b.r1, s);
    let s2 = polar_samples(b.r2, s);
    let rows: Vec<std::result::Result<(f64, usize), EvalError>> = s1
        .par_iter()
        .map(|&w1| {
            let mut best = (f64::NEG_INFINITY, 0);
            for (j, &w2) in s2.iter().enumerate() {
                let v = sample(d, b, w1, w2)?;
                if v > best.0 {
                    best = (v, j);
                }
            }
            Ok(best)
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    for (i, row) in rows.into_iter().enumerate() {
        let (v, j) = row?;
        if v > best.0 {
            best = (v, i, j);
        }
    }
    let mut evaluations = s1.len() * s2.len();
    let (mut w1, mut w2) = (s1[best.1], s2[best.2]);
    let mut val = best.0;
    if val < 0.0 && s.refine_iters > 0 {
        // coordinate search on (Re w1, Im w1, Re w2, Im w2)
        let mut steps = [b.r1 / (s.n_r as f64), b.r2 / (s.n_r as f64)];
        for _ in 0..s.refine_iters {
            let mut improved = false;
            for coord in 0..4 {
                let (disc, im) = (coord / 2, coord % 2 == 1);
                for sgn in [1.0, -1.0] {
                    let delta = if im { Complex64::new(0.0, sgn * steps[disc]) } else { Complex64::new(sgn * steps[disc], 0.0) };
                    let (c1, c2) = if disc == 0 {
                        (clamp_disc(w1 + delta, b.r1), w2)
                    } else {
                        (w1, clamp_disc(w2 + delta, b.r2))
                    };
                    let v = sample(d, b, c1, c2)?;
                    evaluations += 1;
                    if v > val {
                        val = v;
                        w1 = c1;
                        w2 = c2;
                        improved = true;
                    }
                }
            }
            if val >= 0.0 {
                break;
            }
            if !improved {
                steps[0] *= 0.5;
                steps[1] *= 0.5;
            }
        }
    }
    let witness = Witness { point: embed(&b.q, &b.n, &b.l, w1, w2), w1, w2, r: val };
    Ok(Containment { contained: val < 0.0, witness, evaluations })
}

/// Containment of the query's bidisc with the default sampling.
pub fn contains_bidisc(d: &Domain, q: &DiscQuery) -> Result<Containment> {
    q.validate()?;
    contains_bidisc_with(d, &q.bidisc(), &Sampling::default())
}
