use num_complex::Complex64;

use super::BoundaryPoint;
use crate::complex::ComplexPoint;
use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::fit::fit_loglog;

const PHASES: usize = 16;
/// Below this |r| counts as an exact zero.
const FLAT: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq)]
pub struct ContactOrder {
    /// Fitted order of vanishing (NaN when every sample is flat).
    pub order: f64,
    pub r_squared: f64,
    /// The order is at least `cap`: slope above the cap or r vanishes on the grid.
    pub at_least_cap: bool,
    pub cap: f64,
    /// `(radius, max over phases of |r|)`.
    pub samples: Vec<(f64, f64)>,
}

/// Order of vanishing of `ζ -> r(p + ζ L)` from a log-log fit over radii.
pub fn contact_order(
    d: &Domain,
    p: &BoundaryPoint,
    l: &ComplexPoint,
    radii: &[f64],
    cap: f64,
) -> Result<ContactOrder> {
    let mut samples = Vec::with_capacity(radii.len());
    for &eps in radii {
        let mut worst: Option<f64> = None;
        for k in 0..PHASES {
            let zeta = Complex64::from_polar(eps, std::f64::consts::TAU * k as f64 / PHASES as f64);
            if let Ok(v) = d.r(&p.p.axpy(zeta, l)) {
                worst = Some(worst.map_or(v.abs(), |w: f64| w.max(v.abs())));
            }
        }
        if let Some(w) = worst {
            samples.push((eps, w));
        }
    }
    let usable: Vec<&(f64, f64)> = samples.iter().filter(|s| s.1 >= FLAT).collect();
    // r vanishes identically on the small radii
    if usable.len() < 4 && samples.len() - usable.len() >= 4 {
        return Ok(ContactOrder { order: f64::NAN, r_squared: 0.0, at_least_cap: true, cap, samples });
    }
    if usable.len() < 4 {
        return Err(Error::DegenerateFit { usable: usable.len(), needed: 4 });
    }
    let xs: Vec<f64> = usable.iter().map(|s| s.0).collect();
    let ys: Vec<f64> = usable.iter().map(|s| s.1).collect();
    let fit = fit_loglog(&xs, &ys, 4)?;
    Ok(ContactOrder {
        order: fit.slope,
        r_squared: fit.r_squared,
        at_least_cap: fit.slope > cap,
        cap,
        samples,
    })
}
