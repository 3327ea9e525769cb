//! Derivatives of real-valued functions of complex points.
//!
//! Real coordinates are ordered `(x_1, y_1, ..., x_n, y_n)` with `z_j = x_j + i y_j`.
//! Wirtinger derivatives follow `d/dz = (d/dx - i d/dy) / 2` and
//! `d/dzbar = (d/dx + i d/dy) / 2`.

mod scalar;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use scalar::{Dual, Jet2, Scalar, MAX_VARS};

use crate::complex::{ComplexPoint, Cx};
use crate::error::{Error, EvalError, Result};

/// A real-valued function on C^n that can be evaluated with value, first-
/// and second-order scalars.
pub trait RealFunction: Sync {
    fn dim(&self) -> usize;
    fn eval_f64(&self, z: &[Cx<f64>]) -> std::result::Result<f64, EvalError>;
    fn eval_dual(&self, z: &[Cx<Dual>]) -> std::result::Result<Dual, EvalError>;
    fn eval_jet(&self, z: &[Cx<Jet2>]) -> std::result::Result<Jet2, EvalError>;

    fn value(&self, z: &ComplexPoint) -> std::result::Result<f64, EvalError> {
        self.eval_f64(&z.lift())
    }
}

/// Wirtinger first derivatives r_{z_j} and r_{zbar_j}.
#[derive(Clone, Debug, PartialEq)]
pub struct WirtingerData {
    pub dz: Vec<Complex64>,
    pub dzbar: Vec<Complex64>,
}

fn check_dim(f: &dyn RealFunction, z: &ComplexPoint) -> Result<()> {
    let n = z.dim();
    if n != f.dim() {
        return Err(EvalError::Dimension { got: n, expected: f.dim() }.into());
    }
    if 2 * n > MAX_VARS {
        return Err(Error::TooManyVariables { n, max: MAX_VARS / 2 });
    }
    Ok(())
}

fn seed_dual(z: &ComplexPoint) -> Vec<Cx<Dual>> {
    z.coords()
        .iter()
        .enumerate()
        .map(|(j, c)| Cx::new(Dual::var(c.re, 2 * j), Dual::var(c.im, 2 * j + 1)))
        .collect()
}

fn seed_jet(z: &ComplexPoint) -> Vec<Cx<Jet2>> {
    z.coords()
        .iter()
        .enumerate()
        .map(|(j, c)| Cx::new(Jet2::var(c.re, 2 * j), Jet2::var(c.im, 2 * j + 1)))
        .collect()
}

/// Value and real gradient `(dr/dx_1, dr/dy_1, ..., dr/dx_n, dr/dy_n)`.
pub fn value_and_gradient(f: &dyn RealFunction, z: &ComplexPoint) -> Result<(f64, Vec<f64>)> {
    check_dim(f, z)?;
    let d = f.eval_dual(&seed_dual(z))?;
    let g = d.d[..2 * z.dim()].to_vec();
    if g.iter().any(|x| !x.is_finite()) {
        return Err(EvalError::NonFinite.into());
    }
    Ok((d.v, g))
}

pub fn real_gradient(f: &dyn RealFunction, z: &ComplexPoint) -> Result<Vec<f64>> {
    value_and_gradient(f, z).map(|(_, g)| g)
}

pub fn wirtinger_from_gradient(g: &[f64]) -> WirtingerData {
    let dz: Vec<Complex64> = g
        .chunks(2)
        .map(|c| Complex64::new(0.5 * c[0], -0.5 * c[1]))
        .collect();
    let dzbar = dz.iter().map(|c| c.conj()).collect();
    WirtingerData { dz, dzbar }
}

pub fn wirtinger_first(f: &dyn RealFunction, z: &ComplexPoint) -> Result<WirtingerData> {
    Ok(wirtinger_from_gradient(&real_gradient(f, z)?))
}

/// Complex Hessian `H[j][k] = r_{z_j zbar_k}` from second-order jets.
pub fn complex_hessian(f: &dyn RealFunction, z: &ComplexPoint) -> Result<DMatrix<Complex64>> {
    check_dim(f, z)?;
    let n = z.dim();
    let jet = f.eval_jet(&seed_jet(z))?;
    let h = &jet.h;
    let m = DMatrix::from_fn(n, n, |j, k| {
        let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
        Complex64::new(
            0.25 * (h[xj][xk] + h[yj][yk]),
            0.25 * (h[xj][yk] - h[yj][xk]),
        )
    });
    if m.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(EvalError::NonFinite.into());
    }
    Ok(m)
}

/// Central-difference gradient with step `h`.
pub fn central_gradient(f: &dyn RealFunction, z: &ComplexPoint, h: f64) -> Result<Vec<f64>> {
    let n = z.dim();
    let mut g = Vec::with_capacity(2 * n);
    for j in 0..n {
        for dir in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
            let mut plus = z.clone();
            let mut minus = z.clone();
            plus[j] += dir * h;
            minus[j] -= dir * h;
            g.push((f.value(&plus)? - f.value(&minus)?) / (2.0 * h));
        }
    }
    Ok(g)
}

/// Max over components of |dual - central difference|, relative to the
/// largest dual gradient component.
pub fn fd_crosscheck(f: &dyn RealFunction, z: &ComplexPoint, h: f64) -> Result<f64> {
    if h <= 0.0 {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let exact = real_gradient(f, z)?;
    let approx = central_gradient(f, z, h)?;
    let scale = exact.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    Ok(exact
        .iter()
        .zip(approx.iter())
        .map(|(a, b)| (a - b).abs() / scale)
        .fold(0.0, f64::max))
}

/// Max |H - H^*| relative to `max(1, max |H|)`; vanishing Hessians are
/// compared in absolute terms.
pub fn hermitian_defect(h: &DMatrix<Complex64>) -> f64 {
    let scale = h.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let mut worst = 0.0f64;
    for j in 0..h.nrows() {
        for k in 0..h.ncols() {
            worst = worst.max((h[(j, k)] - h[(k, j)].conj()).norm());
        }
    }
    worst / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defexpr::{evaluate_generic, parse, ExprAst, Params};

    struct Expr(ExprAst);

    impl RealFunction for Expr {
        fn dim(&self) -> usize {
            self.0.n
        }
        fn eval_f64(&self, z: &[Cx<f64>]) -> std::result::Result<f64, EvalError> {
            evaluate_generic(&self.0, z, &Params::new())
        }
        fn eval_dual(&self, z: &[Cx<Dual>]) -> std::result::Result<Dual, EvalError> {
            evaluate_generic(&self.0, z, &Params::new())
        }
        fn eval_jet(&self, z: &[Cx<Jet2>]) -> std::result::Result<Jet2, EvalError> {
            evaluate_generic(&self.0, z, &Params::new())
        }
    }

    fn f(src: &str, n: usize) -> Expr {
        Expr(parse(src, n).unwrap())
    }

    fn pt(c: &[(f64, f64)]) -> ComplexPoint {
        ComplexPoint::from_re_im(c)
    }

    #[test]
    fn sphere_gradient() {
        let g = real_gradient(&f("abs2(z1) + abs2(z2) - 1", 2), &pt(&[(1.0, 0.0), (0.0, 0.0)]))
            .unwrap();
        assert_eq!(g, vec![2.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn re_z1_gradient_everywhere() {
        let g = real_gradient(&f("Re(z1)", 2), &pt(&[(0.3, -2.0), (5.0, 1.0)])).unwrap();
        assert_eq!(g, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn dangelo_gradient_on_curve() {
        // product rule with a vanishing factor z2^2 - z3^3 = 0 on the curve
        let z = ComplexPoint::new(vec![0.0.into(), 0.001.into(), 0.01.into()]);
        let g = real_gradient(&f("Re(z1) + abs2(z2^2 - z3^3)", 3), &z).unwrap();
        assert_eq!(g[0], 1.0);
        assert_eq!(g[1], 0.0);
        for x in &g[2..] {
            assert!(x.abs() < 1e-20, "{x}");
        }
    }

    #[test]
    fn wirtinger_examples() {
        let w = wirtinger_first(&f("Re(z1)", 2), &pt(&[(0.2, 0.1), (0.0, 0.0)])).unwrap();
        assert_eq!(w.dz, vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)]);
        let z = pt(&[(0.3, -0.7), (0.1, 0.0)]);
        let w = wirtinger_first(&f("abs2(z1)", 2), &z).unwrap();
        assert!((w.dz[0] - z[0].conj()).norm() < 1e-15);
        assert_eq!(w.dzbar[0], w.dz[0].conj());
    }

    #[test]
    fn hessian_of_sphere_is_identity() {
        let h = complex_hessian(&f("abs2(z1) + abs2(z2)", 2), &pt(&[(0.4, 0.3), (-1.0, 2.0)]))
            .unwrap();
        assert_eq!(h, DMatrix::identity(2, 2));
    }

    #[test]
    fn hessian_of_quartic_term() {
        // d^2 (z2 zbar2)^2 / dz2 dzbar2 = 4 |z2|^2
        let h = complex_hessian(&f("Re(z1) + abs2(z2)^2", 2), &pt(&[(0.0, 0.0), (1.0, 0.0)]))
            .unwrap();
        assert!((h[(1, 1)] - Complex64::new(4.0, 0.0)).norm() < 1e-14);
        assert_eq!(h[(0, 0)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn hessian_of_pluriharmonic_is_zero() {
        let h = complex_hessian(&f("Re(z1^3 + z1*z2)", 2), &pt(&[(0.4, 0.3), (-1.0, 2.0)]))
            .unwrap();
        assert!(h.iter().all(|c| c.norm() < 1e-13));
    }

    #[test]
    fn crosscheck_polynomial() {
        let d = fd_crosscheck(
            &f("abs2(z1)^2 + Re(z1*z2^2) - abs2(z2)", 2),
            &pt(&[(0.3, 0.2), (-0.4, 0.5)]),
            1e-5,
        )
        .unwrap();
        assert!(d < 1e-8, "{d}");
    }

    #[test]
    fn crosscheck_flat_exponential() {
        let d = fd_crosscheck(
            &f("Re(z1) + exp(-1/abs2(z2))", 2),
            &pt(&[(-0.1, 0.0), (0.5, 0.0)]),
            1e-5,
        )
        .unwrap();
        assert!(d < 1e-6, "{d}");
    }

    #[test]
    fn crosscheck_linear_is_exact_at_dyadic_points() {
        let h = 2f64.powi(-17);
        let d = fd_crosscheck(&f("Re(z1)", 2), &pt(&[(0.5, 0.25), (0.0, 0.0)]), h).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn crosscheck_rejects_nonpositive_step() {
        assert!(fd_crosscheck(&f("Re(z1)", 2), &pt(&[(0.0, 0.0), (0.0, 0.0)]), 0.0).is_err());
    }

    #[test]
    fn too_many_variables() {
        let src = "Re(z1) + abs2(z5)";
        let z = ComplexPoint::zeros(5);
        assert!(matches!(
            real_gradient(&f(src, 5), &z),
            Err(Error::TooManyVariables { .. })
        ));
    }
}
