use num_complex::Complex64;

use super::{frame_at, normal_projection};
use crate::complex::ComplexPoint;
use crate::domains::Domain;
use crate::error::{Error, Result};

/// How the unit velocity is chosen from the tangent space at `π(γ(t))`.
#[derive(Clone, Debug, PartialEq)]
pub enum Steering {
    /// Fixed index into the frame's tangent basis.
    TangentIndex(usize),
    /// Fixed ambient vector projected onto the tangent space.
    Ambient(ComplexPoint),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    /// `(arclength, point)`.
    pub samples: Vec<(f64, ComplexPoint)>,
}

impl Curve {
    pub fn end(&self) -> &ComplexPoint {
        &self.samples.last().expect("curve has samples").1
    }
}

/// Unit tangential field at `z`, phase-aligned with `prev` when given.
fn field(
    d: &Domain,
    z: &ComplexPoint,
    steering: &Steering,
    prev: Option<&ComplexPoint>,
    collar: Option<f64>,
) -> Result<ComplexPoint> {
    let bp = normal_projection(d, z)?;
    let dist = bp.p.sub(z).norm();
    if let Some(limit) = collar.filter(|c| dist > *c) {
        return Err(Error::CollarExit { distance: dist, limit });
    }
    let frame = frame_at(d, &bp)?;
    let v = match steering {
        Steering::TangentIndex(i) => frame
            .l
            .get(*i)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("tangent index {i} out of range")))?,
        Steering::Ambient(a) => {
            let mut v = ComplexPoint::zeros(z.dim());
            for l in &frame.l {
                v = v.axpy(a.herm(l), l);
            }
            let n = v.norm();
            if !(n > 1e-12) {
                return Err(Error::InvalidArgument("steering vector is normal to the boundary".into()));
            }
            v.scale_real(1.0 / n)
        }
    };
    Ok(match prev {
        Some(p) => {
            let c = p.herm(&v);
            if c.norm() > 0.0 {
                v.scale(c / c.norm())
            } else {
                v
            }
        }
        None => v,
    })
}

/// Explicit midpoint integration of a unit-speed complex tangential curve.
/// Fails with a collar error when the distance of a curve point to the
/// boundary exceeds `delta0 / 5` (midpoint stages are not checked).
pub fn integrate_tangential_curve(
    d: &Domain,
    start: &ComplexPoint,
    steering: &Steering,
    length: f64,
    step: f64,
    delta0: f64,
) -> Result<Curve> {
    if !(step > 0.0 && step <= length / 10.0) {
        return Err(Error::InvalidArgument(format!("step {step} must be in (0, length/10]")));
    }
    if !d.contains(start) {
        return Err(Error::ExitDomain(format!("start {start} is not inside")));
    }
    let collar = delta0 / 5.0;
    let steps = (length / step).round() as usize;
    let h = length / steps as f64;
    let mut z = start.clone();
    let mut prev: Option<ComplexPoint> = None;
    let mut samples = vec![(0.0, z.clone())];
    for i in 0..steps {
        let v1 = field(d, &z, steering, prev.as_ref(), Some(collar))?;
        let mid = z.axpy(Complex64::new(0.5 * h, 0.0), &v1);
        let v2 = field(d, &mid, steering, Some(&v1), None)?;
        z = z.axpy(Complex64::new(h, 0.0), &v2);
        prev = Some(v2);
        samples.push(((i + 1) as f64 * h, z.clone()));
    }
    let bp = normal_projection(d, &z)?;
    let dist = bp.p.sub(&z).norm();
    if dist > collar {
        return Err(Error::CollarExit { distance: dist, limit: collar });
    }
    Ok(Curve { samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defexpr::Params;
    use crate::domains::catalog_get;

    #[test]
    fn ball_curve_stays_on_inner_sphere() {
        let d = catalog_get("ball", &Params::new()).unwrap();
        let delta = 1e-3;
        let start = ComplexPoint::from_re_im(&[(1.0 - delta, 0.0), (0.0, 0.0)]);
        let step = 0.01;
        let c = integrate_tangential_curve(&d, &start, &Steering::TangentIndex(0), 0.5, step, 10.0 * delta)
            .unwrap();
        for (_, z) in &c.samples {
            assert!((z.norm() - (1.0 - delta)).abs() < step * step, "{}", z.norm());
        }
        for w in c.samples.windows(2) {
            assert!(w[1].1.sub(&w[0].1).norm() <= 1.5 * (w[1].0 - w[0].0));
        }
    }

    #[test]
    fn flz1_flat_piece_keeps_distance() {
        let d = catalog_get("flz1", &Params::new()).unwrap();
        let delta = 1e-4;
        let start = ComplexPoint::from_re_im(&[(delta, 0.0), (0.0, 0.0)]);
        let ambient = ComplexPoint::from_re_im(&[(0.0, 0.0), (1.0, 1.0)]);
        let c = integrate_tangential_curve(&d, &start, &Steering::Ambient(ambient), 0.6, 0.02, 10.0 * delta)
            .unwrap();
        for (_, z) in &c.samples {
            let bp = normal_projection(&d, z).unwrap();
            assert!((bp.p.sub(z).norm() - delta).abs() < 1e-8);
        }
    }

    #[test]
    fn step_halving_converges() {
        let d = catalog_get("egg", &Params::new()).unwrap();
        let start = ComplexPoint::from_re_im(&[(0.3, 0.0), (0.0, 0.0)]);
        let p = normal_projection(&d, &start).unwrap();
        let delta = 1e-3;
        let n = p.p.sub(&start).normalized();
        let q = p.p.axpy(Complex64::new(-delta, 0.0), &n);
        let end = |h: f64| {
            integrate_tangential_curve(&d, &q, &Steering::TangentIndex(0), 0.4, h, 10.0 * delta)
                .unwrap()
                .end()
                .clone()
        };
        let (a, b, c) = (end(0.02), end(0.01), end(0.005));
        let e1 = a.sub(&b).norm();
        let e2 = b.sub(&c).norm();
        assert!(e2 < e1 / 1.9, "{e1} {e2}");
    }

    #[test]
    fn collar_exit() {
        let d = catalog_get("ball", &Params::new()).unwrap();
        let start = ComplexPoint::from_re_im(&[(0.9, 0.0), (0.0, 0.0)]);
        let r = integrate_tangential_curve(&d, &start, &Steering::TangentIndex(0), 0.5, 0.01, 0.01);
        assert!(matches!(r, Err(Error::CollarExit { .. })));
    }
}
