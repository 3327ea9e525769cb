//! Smooth one-variable pieces that the expression language cannot write:
//! flat exponentials, the worm's φ and the two χ cutoffs.
//!
//! Each kernel returns value, first and second derivative so that dual
//! numbers propagate through it via [`Scalar::chain`].

use crate::numdiff::Scalar;

/// `exp(-u^{-a})` for `u > 0`, and its limit 0 (with all derivatives) for `u <= 0`.
pub fn flat_exp(u: f64, a: f64) -> [f64; 3] {
    if u <= 0.0 {
        return [0.0; 3];
    }
    let p = u.powf(-a);
    let g = (-p).exp();
    if g == 0.0 {
        return [0.0; 3];
    }
    let d1 = g * a * p / u;
    let d2 = g * (a * a * p * p - a * (a + 1.0) * p) / (u * u);
    [g, d1, d2]
}

/// Quintic matching value, slope and curvature at both ends of `[t0, t1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermiteBridge {
    t0: f64,
    width: f64,
    c: [f64; 6],
}

impl HermiteBridge {
    pub fn new(t0: f64, t1: f64, left: [f64; 3], right: [f64; 3]) -> Self {
        let h = t1 - t0;
        let (a0, a1, a2) = (left[0], left[1] * h, 0.5 * left[2] * h * h);
        let big_a = right[0] - (a0 + a1 + a2);
        let big_b = right[1] * h - (a1 + 2.0 * a2);
        let big_c = right[2] * h * h - 2.0 * a2;
        let a3 = 10.0 * big_a - 4.0 * big_b + 0.5 * big_c;
        let a4 = -15.0 * big_a + 7.0 * big_b - big_c;
        let a5 = 6.0 * big_a - 3.0 * big_b + 0.5 * big_c;
        HermiteBridge { t0, width: h, c: [a0, a1, a2, a3, a4, a5] }
    }

    pub fn eval(&self, t: f64) -> [f64; 3] {
        let u = (t - self.t0) / self.width;
        let c = &self.c;
        let v = c[0] + u * (c[1] + u * (c[2] + u * (c[3] + u * (c[4] + u * c[5]))));
        let d = c[1] + u * (2.0 * c[2] + u * (3.0 * c[3] + u * (4.0 * c[4] + u * 5.0 * c[5])));
        let dd = 2.0 * c[2] + u * (6.0 * c[3] + u * (12.0 * c[4] + u * 20.0 * c[5]));
        [v, d / self.width, dd / (self.width * self.width)]
    }
}

/// Named scalar kernels used by the built-in catalog families.
#[derive(Clone, Debug, PartialEq)]
pub enum SmoothKernel {
    /// `exp(-u^{-a})`, flat at 0.
    FlatExp { a: f64 },
    /// Worm φ: `s g(|x| - (β - π/2))`.
    WormPhi { beta: f64, scale: f64 },
    /// χ of the first FLZ example, as a function of `t = |z2|^2`.
    Flz1Chi { alpha: f64, eps: f64, kappa: f64, tau: f64, bridge: HermiteBridge },
    /// χ(|z|) of the second FLZ example, written as a function of `t = |z|^2`.
    Flz2Chi { alpha: f64, kappa: f64, beta: f64 },
}

/// Breakpoint of the worm profile g between the flat exponential and its quadratic tail.
const WORM_KNEE: f64 = 0.4;

fn worm_g(t: f64) -> [f64; 3] {
    if t <= WORM_KNEE {
        return flat_exp(t, 1.0);
    }
    let [g0, g1, g2] = flat_exp(WORM_KNEE, 1.0);
    let u = t - WORM_KNEE;
    [g0 + g1 * u + 0.5 * g2 * u * u, g1 + g2 * u, g2]
}

impl SmoothKernel {
    pub fn worm_phi(beta: f64) -> Self {
        SmoothKernel::WormPhi { beta, scale: 1.0 }
    }

    pub fn flz1_chi(alpha: f64, eps: f64, kappa: f64, tau: f64) -> Self {
        let left_t = 1.0 + eps;
        let mut left = flat_exp(eps, alpha / 2.0);
        left[0] += 1.0;
        let right_t = 1.0 + kappa;
        let bridge = HermiteBridge::new(left_t, right_t, left, [right_t - tau, 1.0, 0.0]);
        SmoothKernel::Flz1Chi { alpha, eps, kappa, tau, bridge }
    }

    /// β is fixed by χ(1) = 1.
    pub fn flz2_chi(alpha: f64, kappa: f64) -> Self {
        let beta = kappa * (1.0 / (2.0 * kappa - kappa * kappa).powf(alpha / 2.0)).exp();
        SmoothKernel::Flz2Chi { alpha, kappa, beta }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SmoothKernel::FlatExp { .. } => "flat_exp",
            SmoothKernel::WormPhi { .. } => "worm_phi",
            SmoothKernel::Flz1Chi { .. } => "flz1_chi",
            SmoothKernel::Flz2Chi { .. } => "flz2_chi",
        }
    }

    /// Value, first and second derivative at `t`.
    pub fn derivs(&self, t: f64) -> [f64; 3] {
        match *self {
            SmoothKernel::FlatExp { a } => flat_exp(t, a),
            SmoothKernel::WormPhi { beta, scale } => {
                let c = beta - std::f64::consts::FRAC_PI_2;
                let [g0, g1, g2] = worm_g(t.abs() - c);
                let sign = if t < 0.0 { -1.0 } else { 1.0 };
                [scale * g0, scale * sign * g1, scale * g2]
            }
            SmoothKernel::Flz1Chi { alpha, eps, kappa, tau, ref bridge } => {
                if t <= 1.0 {
                    [1.0, 0.0, 0.0]
                } else if t <= 1.0 + eps {
                    let [g0, g1, g2] = flat_exp(t - 1.0, alpha / 2.0);
                    [1.0 + g0, g1, g2]
                } else if t < 1.0 + kappa {
                    bridge.eval(t)
                } else {
                    [t - tau, 1.0, 0.0]
                }
            }
            SmoothKernel::Flz2Chi { alpha, kappa, beta } => {
                let c = 1.0 - kappa;
                let [g0, g1, g2] = flat_exp(t - c * c, alpha / 2.0);
                [c + beta * g0, beta * g1, beta * g2]
            }
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.derivs(t)[0]
    }

    pub fn apply<T: Scalar>(&self, x: T) -> T {
        let [f0, f1, f2] = self.derivs(x.value());
        x.chain(f0, f1, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central(k: &SmoothKernel, t: f64, h: f64) -> (f64, f64) {
        let (a, b, c) = (k.value(t - h), k.value(t), k.value(t + h));
        ((c - a) / (2.0 * h), (c - 2.0 * b + a) / (h * h))
    }

    fn check_against_differences(k: &SmoothKernel, ts: &[f64]) {
        for &t in ts {
            let [_, d1, d2] = k.derivs(t);
            let (f1, _) = central(k, t, 1e-6);
            let (_, f2) = central(k, t, 1e-4);
            let s1 = d1.abs().max(1e-3);
            let s2 = d2.abs().max(1e-2);
            assert!((d1 - f1).abs() / s1 < 1e-6, "{} d1 at {t}: {d1} vs {f1}", k.name());
            assert!((d2 - f2).abs() / s2 < 1e-4, "{} d2 at {t}: {d2} vs {f2}", k.name());
        }
    }

    #[test]
    fn flat_exp_matches_closed_form() {
        let [g, d1, d2] = flat_exp(0.5, 1.0);
        let e = (-2.0f64).exp();
        assert!((g - e).abs() < 1e-16);
        assert!((d1 - 4.0 * e).abs() < 1e-15);
        assert!((d2 - e * (16.0 - 16.0)).abs() < 1e-14);
        assert_eq!(flat_exp(0.0, 1.0), [0.0; 3]);
        assert_eq!(flat_exp(1e-300, 1.0), [0.0; 3]);
    }

    #[test]
    fn bridge_matches_endpoint_data() {
        let b = HermiteBridge::new(1.0, 2.0, [1.0, 0.5, 0.25], [3.0, -1.0, 2.0]);
        let l = b.eval(1.0);
        let r = b.eval(2.0);
        for (x, y) in l.iter().zip([1.0, 0.5, 0.25]) {
            assert!((x - y).abs() < 1e-12);
        }
        for (x, y) in r.iter().zip([3.0, -1.0, 2.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_derivatives_agree_with_differences() {
        let grid: Vec<f64> = (1..60).map(|i| 0.05 * i as f64 - 1.5).collect();
        check_against_differences(&SmoothKernel::worm_phi(2.0), &grid);
        let pos: Vec<f64> = (1..40).map(|i| 0.05 * i as f64).collect();
        check_against_differences(&SmoothKernel::FlatExp { a: 1.0 }, &pos);
        let chi: Vec<f64> = [0.5, 1.02, 1.04, 1.06, 1.08, 1.2, 2.0].to_vec();
        check_against_differences(&SmoothKernel::flz1_chi(1.0, 0.05, 0.1, 0.05), &chi);
        let chi2: Vec<f64> = [0.5, 0.85, 0.9, 1.0, 1.1].to_vec();
        check_against_differences(&SmoothKernel::flz2_chi(0.5, 0.1), &chi2);
    }

    #[test]
    fn worm_phi_shape() {
        let beta = 2.0;
        let k = SmoothKernel::worm_phi(beta);
        let c = beta - std::f64::consts::FRAC_PI_2;
        for i in 0..=100 {
            let x = -c + 2.0 * c * i as f64 / 100.0;
            assert_eq!(k.value(x), 0.0);
        }
        for i in 0..400 {
            let x = -4.0 + 0.02 * i as f64;
            assert!((k.value(x) - k.value(-x)).abs() < 1e-12);
            assert!(k.derivs(x)[2] >= -1e-12, "not convex at {x}");
            assert!(k.value(x) >= 0.0);
        }
        // crosses 1 with nonzero slope inside the quadratic regime
        let mut lo = c + WORM_KNEE;
        let mut hi = 4.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if k.value(mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!(lo > c + WORM_KNEE && k.derivs(lo)[1] > 0.1);
    }

    #[test]
    fn flz1_chi_is_convex_and_pinned() {
        let k = SmoothKernel::flz1_chi(1.0, 0.05, 0.1, 0.05);
        assert_eq!(k.value(0.3), 1.0);
        assert_eq!(k.value(1.0), 1.0);
        assert!((k.value(2.0) - 1.95).abs() < 1e-15);
        for i in 0..=2000 {
            let t = 0.9 + 0.3 * i as f64 / 2000.0;
            assert!(k.derivs(t)[2] >= -1e-12, "chi'' < 0 at {t}");
        }
    }

    #[test]
    fn flz2_chi_hits_one_at_one() {
        let k = SmoothKernel::flz2_chi(0.5, 0.1);
        assert!((k.value(1.0) - 1.0).abs() < 1e-12);
        assert_eq!(k.value(0.81), 0.9);
        assert_eq!(k.derivs(0.5), [0.9, 0.0, 0.0]);
    }
}
