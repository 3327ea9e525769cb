//! Boundary points, frames, Levi forms, contact orders and tangential curves.

mod contact;
mod curve;
mod frame;

use num_complex::Complex64;

use crate::complex::ComplexPoint;
use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::numdiff::value_and_gradient;

pub use contact::{contact_order, ContactOrder};
pub use curve::{integrate_tangential_curve, Curve, Steering};
pub use frame::{frame_at, frame_with_order, levi_form, LeviForm, Frame};

/// Gradients below this norm count as degenerate.
pub const MIN_GRAD: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub p: ComplexPoint,
    pub residual: f64,
    pub grad_norm: f64,
}

/// Real gradient of r as a vector of C^n: `(r_x1 + i r_y1, ...)`.
pub fn complex_gradient(d: &Domain, z: &ComplexPoint) -> Result<(f64, ComplexPoint)> {
    let (v, g) = value_and_gradient(d, z)?;
    let c = g.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
    Ok((v, ComplexPoint::new(c)))
}

/// Check `p` as a boundary point (|r| small relative to the gradient).
pub fn boundary_point(d: &Domain, p: ComplexPoint) -> Result<BoundaryPoint> {
    let (v, g) = complex_gradient(d, &p)?;
    let grad_norm = g.norm();
    if !(grad_norm > MIN_GRAD) {
        return Err(Error::DegenerateGradient { grad_norm });
    }
    Ok(BoundaryPoint { p, residual: v.abs(), grad_norm })
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Root of `t -> r(base + t dir)` in the bracket `[a, b]` with `r(a) r(b) <= 0`:
/// bisection to a tight bracket, then Newton while the residual decreases.
fn refine_root(d: &Domain, base: &ComplexPoint, dir: &ComplexPoint, mut a: f64, mut b: f64) -> Result<f64> {
    let at = |t: f64| base.axpy(Complex64::new(t, 0.0), dir);
    let mut ra = d.r(&at(a))?;
    if ra == 0.0 {
        return Ok(a);
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        let rm = d.r(&at(m))?;
        if rm == 0.0 {
            return Ok(m);
        }
        if sign(rm) == sign(ra) {
            a = m;
            ra = rm;
        } else {
            b = m;
        }
    }
    let mut t = 0.5 * (a + b);
    let mut best = d.r(&at(t))?.abs();
    for _ in 0..30 {
        let (v, g) = complex_gradient(d, &at(t))?;
        // directional derivative: Re <grad, dir>
        let slope: f64 = g.coords().iter().zip(dir.coords()).map(|(g, u)| g.re * u.re + g.im * u.im).sum();
        if slope == 0.0 || v == 0.0 {
            break;
        }
        let next = t - v / slope;
        let rn = match d.r(&at(next)) {
            Ok(x) => x.abs(),
            Err(_) => break,
        };
        if rn < best {
            t = next;
            best = rn;
        } else {
            break;
        }
    }
    Ok(t)
}

/// Locate the boundary on the ray `seed + t dir`, `t` in `[0, T]`, where `T`
/// reaches twice the domain diameter. The ray is scanned on a uniform grid
/// for the first sign change of r.
pub fn project_to_boundary(d: &Domain, seed: &ComplexPoint, dir: &ComplexPoint) -> Result<BoundaryPoint> {
    let len = dir.norm();
    if !(len > 0.0) {
        return Err(Error::InvalidArgument("search direction is zero".into()));
    }
    let t_max = 2.0 * d.diameter / len;
    let steps = 400;
    let at = |t: f64| seed.axpy(Complex64::new(t, 0.0), dir);
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=steps {
        let t = t_max * i as f64 / steps as f64;
        let Ok(v) = d.r(&at(t)) else {
            prev = None;
            continue;
        };
        if v == 0.0 {
            return boundary_point(d, at(t));
        }
        if let Some((tp, vp)) = prev {
            if sign(v) != sign(vp) {
                let root = refine_root(d, seed, dir, tp, t)?;
                return boundary_point(d, at(root));
            }
        }
        prev = Some((t, v));
    }
    Err(Error::NoSignChange)
}

/// Root of r on the line `base + t dir` nearest to `t = 0`, searched by
/// doubling `|t|` from `scale` on the side where r moves toward 0.
pub fn line_root(d: &Domain, base: &ComplexPoint, dir: &ComplexPoint, scale: f64) -> Result<ComplexPoint> {
    let (v, g) = complex_gradient(d, base)?;
    if v == 0.0 {
        return Ok(base.clone());
    }
    let slope: f64 = g.coords().iter().zip(dir.coords()).map(|(g, u)| g.re * u.re + g.im * u.im).sum();
    let s = if (v > 0.0) == (slope > 0.0) { -1.0 } else { 1.0 };
    let mut step = if slope != 0.0 { (v / slope).abs().max(scale) } else { scale };
    let mut last = 0.0;
    for _ in 0..200 {
        let t = s * step;
        let w = base.axpy(Complex64::new(t, 0.0), dir);
        match d.r(&w) {
            Ok(x) if sign(x) != sign(v) => {
                let root = refine_root(d, base, dir, last, t)?;
                return Ok(base.axpy(Complex64::new(root, 0.0), dir));
            }
            Ok(_) => last = t,
            Err(_) => break,
        }
        step *= 2.0;
    }
    Err(Error::NoSignChange)
}

/// Approximate normal projection of `q`: root of r along the gradient line through `q`.
pub fn normal_projection(d: &Domain, q: &ComplexPoint) -> Result<BoundaryPoint> {
    let (v, g) = complex_gradient(d, q)?;
    let gn = g.norm();
    if !(gn > MIN_GRAD) {
        return Err(Error::DegenerateGradient { grad_norm: gn });
    }
    let dir = g.scale_real(1.0 / gn);
    let p = line_root(d, q, &dir, (v.abs() / gn).max(1e-300))?;
    boundary_point(d, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defexpr::Params;
    use crate::domains::catalog_get;

    fn get(name: &str) -> Domain {
        catalog_get(name, &Params::new()).unwrap()
    }

    fn pt(c: &[(f64, f64)]) -> ComplexPoint {
        ComplexPoint::from_re_im(c)
    }

    #[test]
    fn ball_projection() {
        let bp = project_to_boundary(&get("ball"), &ComplexPoint::zeros(2), &pt(&[(1.0, 0.0), (0.0, 0.0)]))
            .unwrap();
        assert!((bp.p[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(bp.residual < 1e-15);
    }

    #[test]
    fn worm_projection() {
        let d = get("worm");
        let bp = project_to_boundary(&d, &pt(&[(-0.1, 0.0), (1.0, 0.0)]), &pt(&[(1.0, 0.0), (0.0, 0.0)]))
            .unwrap();
        assert!(bp.p.sub(&pt(&[(0.0, 0.0), (1.0, 0.0)])).norm() < 1e-10);
    }

    #[test]
    fn dangelo_projection() {
        let d = get("dangelo");
        let bp = project_to_boundary(
            &d,
            &pt(&[(-0.5, 0.0), (0.0, 0.0), (0.0, 0.0)]),
            &pt(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
        )
        .unwrap();
        assert!(bp.p.norm() < 1e-15);
    }

    #[test]
    fn no_sign_change() {
        let d = get("ball");
        let r = project_to_boundary(&d, &pt(&[(3.0, 0.0), (0.0, 0.0)]), &pt(&[(1.0, 0.0), (0.0, 0.0)]));
        assert!(matches!(r, Err(Error::NoSignChange)));
    }

    #[test]
    fn normal_projection_on_ball() {
        let d = get("ball");
        let q = pt(&[(0.6 * 0.999, 0.0), (0.0, 0.8 * 0.999)]);
        let bp = normal_projection(&d, &q).unwrap();
        assert!(bp.p.sub(&pt(&[(0.6, 0.0), (0.0, 0.8)])).norm() < 1e-14);
    }
}
