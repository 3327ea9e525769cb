//! Ordinary least squares for power laws `y = C x^s` on log-log axes.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    /// Natural log of the constant C.
    pub log_constant: f64,
    pub r_squared: f64,
    pub used: usize,
}

/// Fit `log y = log C + s log x` over the samples with finite positive `x` and `y`.
pub fn fit_loglog(xs: &[f64], ys: &[f64], min_points: usize) -> Result<LogLogFit> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| x.is_finite() && y.is_finite() && **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let needed = min_points.max(2);
    if pts.len() < needed {
        return Err(Error::DegenerateFit { usable: pts.len(), needed });
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit { usable: 1, needed });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        let sse: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
        (1.0 - sse / syy).clamp(0.0, 1.0)
    };
    Ok(LogLogFit { slope, log_constant: intercept, r_squared, used: pts.len() })
}

/// `count` points from `lo` to `hi` equally spaced in log scale.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let xs = geometric_grid(1e-6, 1e-2, 12);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(0.25)).collect();
        let f = fit_loglog(&xs, &ys, 6).unwrap();
        assert!((f.slope - 0.25).abs() < 1e-9);
        assert!((f.log_constant - 3f64.ln()).abs() < 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        let r = fit_loglog(&[1.0, 2.0, 3.0], &[1.0, 0.0, -1.0], 2);
        assert!(matches!(r, Err(Error::DegenerateFit { usable: 1, needed: 2 })));
    }

    #[test]
    fn grid_endpoints_exact() {
        let g = geometric_grid(1e-6, 1e-2, 13);
        assert_eq!(g[0], 1e-6);
        assert_eq!(g[12], 1e-2);
        assert!((g[3] / g[0] - 10.0).abs() < 1e-12);
    }
}
