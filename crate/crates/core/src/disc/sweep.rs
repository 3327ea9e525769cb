use rayon::prelude::*;

use super::{contains_bidisc_with, DiscQuery, Sampling, Witness};
use crate::complex::ComplexPoint;
use crate::domains::Domain;
use crate::error::{Error, EvalError, Result};
use crate::geometry::{frame_at, BoundaryPoint};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub k: u32,
    pub c1: f64,
    pub c2: f64,
    /// Ascending δ grid.
    pub deltas: Vec<f64>,
    /// Candidate constants for the uniform search.
    pub lattice_c1: Vec<f64>,
    pub lattice_c2: Vec<f64>,
    /// Tangent directions; `None` uses every vector of each point's frame.
    pub directions: Option<Vec<ComplexPoint>>,
    pub sampling: Sampling,
}

impl SweepConfig {
    pub fn new(k: u32, c1: f64, c2: f64, deltas: Vec<f64>) -> Self {
        SweepConfig {
            k,
            c1,
            c2,
            deltas,
            lattice_c1: vec![],
            lattice_c2: vec![],
            directions: None,
            sampling: Sampling::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSweep {
    pub point: ComplexPoint,
    pub directions: Vec<ComplexPoint>,
    /// `passes[dir][delta]` at the configured `(c1, c2)`.
    pub passes: Vec<Vec<bool>>,
    /// First failure: `(direction index, δ, witness)`.
    pub failure: Option<(usize, f64, Witness)>,
    pub error: Option<String>,
}

impl PointSweep {
    pub fn all_pass(&self) -> bool {
        self.error.is_none() && self.passes.iter().flatten().all(|p| *p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformConstants {
    pub c1: f64,
    pub c2: f64,
    /// Largest grid δ such that every grid δ' <= δ passes at every point.
    pub delta0: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub points: Vec<PointSweep>,
    pub all_pass: bool,
    pub uniform: Option<UniformConstants>,
}

fn tangent_directions(d: &Domain, bp: &BoundaryPoint, cfg: &SweepConfig) -> Result<(ComplexPoint, Vec<ComplexPoint>)> {
    let frame = frame_at(d, bp)?;
    let dirs = match &cfg.directions {
        None => frame.l.clone(),
        Some(list) => {
            let mut out = Vec::with_capacity(list.len());
            for a in list {
                let mut v = ComplexPoint::zeros(a.dim());
                for l in &frame.l {
                    v = v.axpy(a.herm(l), l);
                }
                let n = v.norm();
                if !(n > 1e-12) {
                    return Err(Error::InvalidArgument(format!("direction {a} is not tangential")));
                }
                out.push(v.scale_real(1.0 / n));
            }
            out
        }
    };
    Ok((frame.n, dirs))
}

/// Pass/fail per δ; locality errors count as failure.
fn passes_over_grid(
    d: &Domain,
    p: &ComplexPoint,
    n: &ComplexPoint,
    l: &ComplexPoint,
    k: u32,
    c1: f64,
    c2: f64,
    deltas: &[f64],
    s: &Sampling,
) -> Result<(Vec<bool>, Option<(f64, Witness)>)> {
    let mut out = Vec::with_capacity(deltas.len());
    let mut failure = None;
    for &delta in deltas {
        let q = DiscQuery { p: p.clone(), n: n.clone(), l: l.clone(), c1, c2, k, delta };
        q.validate()?;
        let ok = match contains_bidisc_with(d, &q.bidisc(), s) {
            Ok(c) => {
                if !c.contained && failure.is_none() {
                    failure = Some((delta, c.witness));
                }
                c.contained
            }
            Err(Error::Eval(EvalError::Locality { .. })) => false,
            Err(e) => return Err(e),
        };
        out.push(ok);
    }
    Ok((out, failure))
}

/// Largest δ index such that every earlier grid entry passes.
fn delta0_index(passes: &[bool]) -> Option<usize> {
    let run = passes.iter().take_while(|p| **p).count();
    run.checked_sub(1)
}

fn sweep_point(d: &Domain, bp: &BoundaryPoint, cfg: &SweepConfig) -> PointSweep {
    let mut ps = PointSweep { point: bp.p.clone(), directions: vec![], passes: vec![], failure: None, error: None };
    let (n, dirs) = match tangent_directions(d, bp, cfg) {
        Ok(x) => x,
        Err(e) => {
            ps.error = Some(e.to_string());
            return ps;
        }
    };
    for (i, l) in dirs.iter().enumerate() {
        match passes_over_grid(d, &bp.p, &n, l, cfg.k, cfg.c1, cfg.c2, &cfg.deltas, &cfg.sampling) {
            Ok((p, f)) => {
                if ps.failure.is_none() {
                    ps.failure = f.map(|(delta, w)| (i, delta, w));
                }
                ps.passes.push(p);
            }
            Err(e) => {
                ps.error = Some(e.to_string());
                break;
            }
        }
    }
    ps.directions = dirs;
    ps
}

/// Run the disc check over a patch of boundary points and search the
/// constant lattice for uniform `(c1, c2, δ0)`.
pub fn uniform_sweep(d: &Domain, patch: &[BoundaryPoint], cfg: &SweepConfig) -> Result<SweepReport> {
    if cfg.deltas.is_empty() || cfg.deltas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("delta grid must be nonempty and ascending".into()));
    }
    let points: Vec<PointSweep> = patch.par_iter().map(|bp| sweep_point(d, bp, cfg)).collect();
    let all_pass = points.iter().all(PointSweep::all_pass);

    let mut candidates = Vec::new();
    for &c2 in &cfg.lattice_c2 {
        for &c1 in &cfg.lattice_c1 {
            candidates.push((c1, c2));
        }
    }
    let frames: Vec<Result<(ComplexPoint, Vec<ComplexPoint>)>> =
        patch.iter().map(|bp| tangent_directions(d, bp, cfg)).collect();
    let mut uniform: Option<UniformConstants> = None;
    if frames.iter().all(|f| f.is_ok()) {
        let results: Vec<Option<UniformConstants>> = candidates
            .par_iter()
            .map(|&(c1, c2)| {
                let mut idx = cfg.deltas.len() - 1;
                for (bp, f) in patch.iter().zip(&frames) {
                    let (n, dirs) = f.as_ref().ok()?;
                    for l in dirs {
                        let (p, _) = passes_over_grid(d, &bp.p, n, l, cfg.k, c1, c2, &cfg.deltas, &cfg.sampling).ok()?;
                        idx = idx.min(delta0_index(&p)?);
                    }
                }
                Some(UniformConstants { c1, c2, delta0: cfg.deltas[idx] })
            })
            .collect();
        for u in results.into_iter().flatten() {
            let better = match uniform {
                None => true,
                Some(b) => (u.c2, u.c1, u.delta0) > (b.c2, b.c1, b.delta0),
            };
            if better {
                uniform = Some(u);
            }
        }
    }
    Ok(SweepReport { points, all_pass, uniform })
}
