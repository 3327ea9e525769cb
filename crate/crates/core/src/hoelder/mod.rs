//! Hölder exponents of holomorphic test functions near the boundary.
//!
//! Normal differences of an α-Lipschitz holomorphic function behave like
//! `δ^α`; along complex tangential directions inside the `δ^{1/k}` cap they
//! behave like `|h|^{kα}`. This module measures both, plus the growth of
//! directional derivatives as δ -> 0.

mod gain;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::ComplexPoint;
use crate::defexpr::{evaluate_complex_node, parse_any, Node, Params};
use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::geometry::{complex_gradient, BoundaryPoint};

pub use gain::{
    curve_gain, derivative_growth, hoelder_exponent, hoelder_exponent_along, tangential_gain,
    DeltaGain, GainConfig, GainReport, GrowthEstimate, GrowthSite, HPolicy, HoelderEstimate, Phases,
};

/// Interior samples used by the half-space support check.
pub const SUPPORT_SAMPLES: usize = 1000;

pub type UserFn = Arc<dyn Fn(&ComplexPoint) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum TestKind {
    /// `(c - Σ z_j a_j)^α`.
    HalfspacePower { a: ComplexPoint, c: Complex64 },
    /// `(c - z_j)^α`, `j` zero-based.
    CoordinatePower { j: usize, c: Complex64 },
    /// Complex-valued expression in z1..zn.
    Expr { node: Node, params: Params },
    Closure(UserFn),
}

impl fmt::Debug for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestKind::HalfspacePower { a, c } => write!(f, "HalfspacePower {{ a: {a}, c: {c} }}"),
            TestKind::CoordinatePower { j, c } => write!(f, "CoordinatePower {{ j: {j}, c: {c} }}"),
            TestKind::Expr { node, .. } => write!(f, "Expr({node})"),
            TestKind::Closure(_) => write!(f, "Closure"),
        }
    }
}

/// A holomorphic test function on the domain.
#[derive(Clone, Debug)]
pub struct HoloTestFunction {
    pub kind: TestKind,
    /// Nominal Lipschitz exponent (1 for user functions without one).
    pub alpha: f64,
    pub label: String,
}

impl HoloTestFunction {
    pub fn halfspace_power(a: ComplexPoint, c: Complex64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let label = format!("({c} - <z,{a}>)^{alpha}");
        Ok(HoloTestFunction { kind: TestKind::HalfspacePower { a, c }, alpha, label })
    }

    pub fn coordinate_power(j: usize, c: Complex64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let label = format!("({c} - z{})^{alpha}", j + 1);
        Ok(HoloTestFunction { kind: TestKind::CoordinatePower { j, c }, alpha, label })
    }

    /// Parse a complex expression such as `(1 - z1)^3 + z2`.
    pub fn expression(text: &str, n: usize, params: Params, alpha: f64) -> Result<Self> {
        let node = parse_any(text, n)?;
        Ok(HoloTestFunction { kind: TestKind::Expr { node, params }, alpha, label: text.to_string() })
    }

    pub fn closure(label: &str, alpha: f64, f: UserFn) -> Self {
        HoloTestFunction { kind: TestKind::Closure(f), alpha, label: label.to_string() }
    }

    /// Base of the power for the power kinds.
    pub fn base(&self, z: &ComplexPoint) -> Option<Complex64> {
        match &self.kind {
            TestKind::HalfspacePower { a, c } => {
                Some(c - z.coords().iter().zip(a.coords()).map(|(z, a)| z * a).sum::<Complex64>())
            }
            TestKind::CoordinatePower { j, c } => Some(c - z.coords()[*j]),
            _ => None,
        }
    }

    /// `f(z)`, principal branch for the power kinds.
    pub fn eval(&self, z: &ComplexPoint) -> Result<Complex64> {
        match &self.kind {
            TestKind::HalfspacePower { .. } | TestKind::CoordinatePower { .. } => {
                let b = self.base(z).expect("power kind");
                if b == Complex64::new(0.0, 0.0) {
                    return Ok(b);
                }
                Ok(b.powf(self.alpha))
            }
            TestKind::Expr { node, params } => Ok(evaluate_complex_node(node, z, params)?),
            TestKind::Closure(f) => Ok(f(z)),
        }
    }

    /// Check `Re(base) > 0` on interior samples of `d` near `center`.
    /// Returns the number of samples checked.
    pub fn check_support(&self, d: &Domain, center: &ComplexPoint, seed: u64) -> Result<usize> {
        if self.base(center).is_none() {
            return Ok(0);
        }
        let samples = interior_samples(d, center, SUPPORT_SAMPLES, seed);
        if samples.is_empty() {
            return Err(Error::SupportFailure("no interior samples found".into()));
        }
        for z in &samples {
            let b = self.base(z).expect("power kind");
            if !(b.re > 0.0) {
                return Err(Error::SupportFailure(format!("Re base = {:e} at {z}", b.re)));
            }
        }
        Ok(samples.len())
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "alpha".into(), reason: format!("{alpha} not in (0, 1]") })
    }
}

/// Seeded interior points: half in a cube of half-width `R` around `center`,
/// half within `R/10`, where `R` is the locality radius or the diameter.
pub fn interior_samples(d: &Domain, center: &ComplexPoint, count: usize, seed: u64) -> Vec<ComplexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let big = d.locality.unwrap_or(d.diameter);
    let mut out = Vec::with_capacity(count);
    let max_tries = 2000 * count;
    for t in 0..max_tries {
        if out.len() == count {
            break;
        }
        let radius = if t % 2 == 0 { big } else { 0.1 * big };
        let z = ComplexPoint::new(
            center
                .coords()
                .iter()
                .map(|c| c + Complex64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius)))
                .collect(),
        );
        if matches!(d.r(&z), Ok(v) if v < 0.0) {
            out.push(z);
        }
    }
    out
}

/// `(⟨p - z, a⟩)^α` with `a` the unit complex normal covector `∂r(p)`.
/// Fails with a support error when the half-space misses a sampled interior point.
pub fn make_halfspace_power(d: &Domain, p: &BoundaryPoint, alpha: f64, seed: u64) -> Result<HoloTestFunction> {
    let (_, g) = complex_gradient(d, &p.p)?;
    let a = ComplexPoint::new(g.coords().iter().map(|c| c.conj()).collect()).normalized();
    let c: Complex64 = p.p.coords().iter().zip(a.coords()).map(|(z, a)| z * a).sum();
    let f = HoloTestFunction::halfspace_power(a, c, alpha)?;
    f.check_support(d, &p.p, seed)?;
    Ok(f)
}

/// Relative disagreement between the complex derivative along `v` and along `i v`.
pub fn cauchy_riemann_defect(f: &HoloTestFunction, z: &ComplexPoint, v: &ComplexPoint, s: f64) -> Result<f64> {
    let d_along = |w: Complex64| -> Result<Complex64> {
        let g = |t: f64| f.eval(&z.axpy(w * t, v));
        Ok((-g(2.0 * s)? + g(s)? * 8.0 - g(-s)? * 8.0 + g(-2.0 * s)?) / (12.0 * s * w))
    };
    let a = d_along(Complex64::new(1.0, 0.0))?;
    let b = d_along(Complex64::new(0.0, 1.0))?;
    let scale = a.norm().max(b.norm());
    Ok(if scale == 0.0 { 0.0 } else { (a - b).norm() / scale })
}
