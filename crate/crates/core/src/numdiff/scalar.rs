//! Scalar types that carry derivatives through arithmetic.
//!
//! Every defining function in the crate is written once, generically over
//! [`Scalar`], and evaluated with plain `f64`, first-order [`Dual`] numbers or
//! second-order [`Jet2`] numbers. `Jet2` is the second-order truncated Taylor
//! expansion, i.e. the same object as a dual number nested inside a dual
//! number, with the symmetric mixed part stored once.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Maximum number of real tangent directions (2n for n <= 4).
pub const MAX_VARS: usize = 8;

pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;

    fn value(&self) -> f64;

    /// True when the value and every carried derivative are exactly zero.
    fn is_zero(&self) -> bool;

    /// Apply a scalar function `g` given `g(x), g'(x), g''(x)` at `x = self.value()`.
    fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self;

    fn scale(&self, k: f64) -> Self {
        self.chain(self.value() * k, k, 0.0)
    }

    fn add_cst(&self, k: f64) -> Self {
        self.chain(self.value() + k, 1.0, 0.0)
    }

    fn exp(&self) -> Self {
        let e = self.value().exp();
        self.chain(e, e, e)
    }

    /// Natural log; caller guarantees a positive argument.
    fn ln(&self) -> Self {
        let x = self.value();
        self.chain(x.ln(), 1.0 / x, -1.0 / (x * x))
    }

    /// Square root; derivatives are infinite at 0.
    fn sqrt(&self) -> Self {
        let x = self.value();
        let s = x.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * x))
    }

    fn recip(&self) -> Self {
        let x = self.value();
        self.chain(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x))
    }

    /// `x^a` for `x > 0` and real `a`, computed as `exp(a ln x)`.
    fn powf(&self, a: f64) -> Self {
        let x = self.value();
        let v = (a * x.ln()).exp();
        self.chain(v, a * v / x, a * (a - 1.0) * v / (x * x))
    }

    fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.chain(s, c, -s)
    }

    fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.chain(c, -s, -c)
    }

    fn powi(&self, k: u32) -> Self {
        let mut acc = Self::cst(1.0);
        for _ in 0..k {
            acc = acc * *self;
        }
        acc
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn chain(&self, f0: f64, _f1: f64, _f2: f64) -> Self {
        f0
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
    fn add_cst(&self, k: f64) -> Self {
        self + k
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn recip(&self) -> Self {
        1.0 / self
    }
    fn powf(&self, a: f64) -> Self {
        (a * self.ln()).exp()
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
}

/// First-order forward-mode dual number with up to [`MAX_VARS`] tangents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: [f64; MAX_VARS],
}

impl Dual {
    pub fn var(v: f64, index: usize) -> Self {
        let mut d = [0.0; MAX_VARS];
        d[index] = 1.0;
        Dual { v, d }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(o.d.iter()) {
            *a += b;
        }
        Dual { v: self.v + o.v, d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(o.d.iter()) {
            *a -= b;
        }
        Dual { v: self.v - o.v, d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        let mut d = [0.0; MAX_VARS];
        for (i, x) in d.iter_mut().enumerate() {
            *x = self.v * o.d[i] + o.v * self.d[i];
        }
        Dual { v: self.v * o.v, d }
    }
}

impl Div for Dual {
    type Output = Dual;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Dual) -> Dual {
        self * o.recip()
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        let mut d = self.d;
        d.iter_mut().for_each(|x| *x = -*x);
        Dual { v: -self.v, d }
    }
}

impl Scalar for Dual {
    fn cst(v: f64) -> Self {
        Dual { v, d: [0.0; MAX_VARS] }
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn is_zero(&self) -> bool {
        self.v == 0.0 && self.d.iter().all(|x| *x == 0.0)
    }
    fn chain(&self, f0: f64, f1: f64, _f2: f64) -> Self {
        let mut d = [0.0; MAX_VARS];
        if f1 != 0.0 {
            for (x, s) in d.iter_mut().zip(self.d.iter()) {
                *x = f1 * s;
            }
        }
        Dual { v: f0, d }
    }
}

/// Second-order jet: value, gradient and (full, symmetric) Hessian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub g: [f64; MAX_VARS],
    pub h: [[f64; MAX_VARS]; MAX_VARS],
}

impl Jet2 {
    pub fn var(v: f64, index: usize) -> Self {
        let mut g = [0.0; MAX_VARS];
        g[index] = 1.0;
        Jet2 { v, g, h: [[0.0; MAX_VARS]; MAX_VARS] }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(mut self, o: Jet2) -> Jet2 {
        self.v += o.v;
        for i in 0..MAX_VARS {
            self.g[i] += o.g[i];
            for j in 0..MAX_VARS {
                self.h[i][j] += o.h[i][j];
            }
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(mut self) -> Jet2 {
        self.v = -self.v;
        for i in 0..MAX_VARS {
            self.g[i] = -self.g[i];
            for j in 0..MAX_VARS {
                self.h[i][j] = -self.h[i][j];
            }
        }
        self
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let mut out = Jet2::cst(self.v * o.v);
        for i in 0..MAX_VARS {
            out.g[i] = self.v * o.g[i] + o.v * self.g[i];
            for j in 0..MAX_VARS {
                out.h[i][j] = self.v * o.h[i][j]
                    + o.v * self.h[i][j]
                    + self.g[i] * o.g[j]
                    + o.g[i] * self.g[j];
            }
        }
        out
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Scalar for Jet2 {
    fn cst(v: f64) -> Self {
        Jet2 { v, g: [0.0; MAX_VARS], h: [[0.0; MAX_VARS]; MAX_VARS] }
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn is_zero(&self) -> bool {
        self.v == 0.0
            && self.g.iter().all(|x| *x == 0.0)
            && self.h.iter().flatten().all(|x| *x == 0.0)
    }
    fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut out = Jet2::cst(f0);
        for i in 0..MAX_VARS {
            out.g[i] = f1 * self.g[i];
            for j in 0..MAX_VARS {
                let mut x = 0.0;
                if f1 != 0.0 {
                    x += f1 * self.h[i][j];
                }
                if f2 != 0.0 {
                    x += f2 * self.g[i] * self.g[j];
                }
                out.h[i][j] = x;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_product_rule() {
        let u = Dual::var(3.0, 0);
        let v = Dual::var(2.0, 1);
        let w = u * v;
        assert_eq!(w.v, 6.0);
        assert_eq!(w.d[0], 2.0);
        assert_eq!(w.d[1], 3.0);
    }

    #[test]
    fn jet_second_derivative_of_exp_square() {
        // f(x) = exp(x^2), f'' = (2 + 4x^2) exp(x^2)
        let x = Jet2::var(0.7, 0);
        let f = (x * x).exp();
        let e = (0.49f64).exp();
        assert!((f.g[0] - 1.4 * e).abs() < 1e-14);
        assert!((f.h[0][0] - (2.0 + 4.0 * 0.49) * e).abs() < 1e-13);
    }

    #[test]
    fn jet_mixed_partial() {
        // f = x * y^2 -> f_xy = 2y
        let x = Jet2::var(1.5, 0);
        let y = Jet2::var(-0.5, 1);
        let f = x * y * y;
        assert_eq!(f.h[0][1], -1.0);
        assert_eq!(f.h[1][0], -1.0);
        assert_eq!(f.h[1][1], 3.0);
    }

    #[test]
    fn division_matches_quotient_rule() {
        let x = Dual::var(2.0, 0);
        let f = Dual::cst(1.0) / (x * x);
        assert!((f.d[0] + 2.0 / 8.0).abs() < 1e-15);
    }
}
