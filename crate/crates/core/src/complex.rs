//! Complex numbers over a generic [`Scalar`] and points of C^n.

use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::numdiff::Scalar;

/// A complex number whose real and imaginary parts are [`Scalar`]s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }

    pub fn real(re: T) -> Self {
        Cx { re, im: T::cst(0.0) }
    }

    pub fn cst(c: Complex64) -> Self {
        Cx { re: T::cst(c.re), im: T::cst(c.im) }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn conj(self) -> Self {
        Cx { re: self.re, im: -self.im }
    }

    /// |w|^2 = Re(w conj(w)).
    pub fn abs2(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, k: f64) -> Self {
        Cx { re: self.re.scale(k), im: self.im.scale(k) }
    }

    pub fn mul_real(self, k: T) -> Self {
        Cx { re: self.re * k, im: self.im * k }
    }

    pub fn exp(self) -> Self {
        let m = self.re.exp();
        Cx { re: m * self.im.cos(), im: m * self.im.sin() }
    }

    /// `e^{i t}` for real `t`.
    pub fn cis(t: T) -> Self {
        Cx { re: t.cos(), im: t.sin() }
    }

    pub fn powi(self, k: u32) -> Self {
        let mut acc = Cx::real(T::cst(1.0));
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }

    /// Principal square root built from real square roots only.
    pub fn sqrt(self) -> Self {
        if self.abs2().value() == 0.0 {
            return Cx::real(T::cst(0.0));
        }
        let m = self.abs2().sqrt();
        // take the larger part from a sum without cancellation, the other by division
        if self.re.value() >= 0.0 {
            let re = ((m + self.re).scale(0.5)).sqrt();
            Cx { re, im: self.im / re.scale(2.0) }
        } else {
            let mag = ((m - self.re).scale(0.5)).sqrt();
            let im = if self.im.value() < 0.0 { -mag } else { mag };
            Cx { re: self.im / im.scale(2.0), im }
        }
    }
}

impl<T: Scalar> Add for Cx<T> {
    type Output = Cx<T>;
    fn add(self, o: Self) -> Self {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: Scalar> Sub for Cx<T> {
    type Output = Cx<T>;
    fn sub(self, o: Self) -> Self {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: Scalar> Mul for Cx<T> {
    type Output = Cx<T>;
    fn mul(self, o: Self) -> Self {
        Cx {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<T: Scalar> Div for Cx<T> {
    type Output = Cx<T>;
    fn div(self, o: Self) -> Self {
        let d = o.abs2().recip();
        (self * o.conj()).mul_real(d)
    }
}

impl<T: Scalar> Neg for Cx<T> {
    type Output = Cx<T>;
    fn neg(self) -> Self {
        Cx { re: -self.re, im: -self.im }
    }
}

/// A point z = (z_1, ..., z_n) of C^n.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoint(pub Vec<Complex64>);

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Self {
        ComplexPoint(coords)
    }

    pub fn zeros(n: usize) -> Self {
        ComplexPoint(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn from_re_im(pairs: &[(f64, f64)]) -> Self {
        ComplexPoint(pairs.iter().map(|&(a, b)| Complex64::new(a, b)).collect())
    }

    /// Unit vector along coordinate `j` (0-based).
    pub fn basis(n: usize, j: usize) -> Self {
        let mut p = ComplexPoint::zeros(n);
        p.0[j] = Complex64::new(1.0, 0.0);
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    /// Euclidean norm in C^n = R^{2n}.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hermitian product <a, b> = sum a_j conj(b_j).
    pub fn herm(&self, other: &ComplexPoint) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn scale(&self, w: Complex64) -> ComplexPoint {
        ComplexPoint(self.0.iter().map(|c| c * w).collect())
    }

    pub fn scale_real(&self, k: f64) -> ComplexPoint {
        ComplexPoint(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &ComplexPoint) -> ComplexPoint {
        ComplexPoint(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ComplexPoint) -> ComplexPoint {
        ComplexPoint(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    /// `self + w * v` with complex scalar `w`.
    pub fn axpy(&self, w: Complex64, v: &ComplexPoint) -> ComplexPoint {
        ComplexPoint(self.0.iter().zip(v.0.iter()).map(|(a, b)| a + w * b).collect())
    }

    pub fn normalized(&self) -> ComplexPoint {
        self.scale_real(1.0 / self.norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Lift to generic complex coordinates with constant parts.
    pub fn lift<T: Scalar>(&self) -> Vec<Cx<T>> {
        self.0.iter().map(|c| Cx::cst(*c)).collect()
    }
}

impl Index<usize> for ComplexPoint {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for ComplexPoint {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| format!("{},{}", c.re + 0.0, c.im + 0.0)).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl std::str::FromStr for ComplexPoint {
    type Err = String;

    /// Parses `"re,im;re,im;..."`; a lone number is a real coordinate.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut coords = Vec::new();
        for part in s.split(';') {
            let nums: Vec<&str> = part.split(',').map(str::trim).collect();
            let num = |t: &str| t.parse::<f64>().map_err(|e| format!("bad number `{t}`: {e}"));
            let c = match nums.as_slice() {
                [re] => Complex64::new(num(re)?, 0.0),
                [re, im] => Complex64::new(num(re)?, num(im)?),
                _ => return Err(format!("bad coordinate `{part}`, expected `re,im`")),
            };
            coords.push(c);
        }
        Ok(ComplexPoint(coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_sqrt_matches_num_complex() {
        for &(a, b) in &[(1.0, 2.0), (-3.0, 0.5), (-2.0, -1e-3), (0.25, 0.0)] {
            let w = Cx::<f64>::new(a, b).sqrt();
            let r = Complex64::new(a, b).sqrt();
            assert!((w.value() - r).norm() < 1e-14);
        }
    }

    #[test]
    fn herm_is_conjugate_linear_in_second_slot() {
        let a = ComplexPoint::from_re_im(&[(1.0, 1.0), (0.0, 2.0)]);
        let b = ComplexPoint::from_re_im(&[(0.5, -1.0), (3.0, 0.0)]);
        let i = Complex64::new(0.0, 1.0);
        let lhs = a.herm(&b.scale(i));
        assert!((lhs - a.herm(&b) * (-i)).norm() < 1e-15);
    }
}
