use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{complex_gradient, BoundaryPoint, MIN_GRAD};
use crate::complex::ComplexPoint;
use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::numdiff::complex_hessian;

/// Gram-Schmidt candidates whose projection is shorter than this are skipped.
const SKIP_NORM: f64 = 1e-6;

/// Orthonormal frame at a boundary point.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    /// Real unit outward normal as a vector of C^n.
    pub n: ComplexPoint,
    /// `J N = i N`.
    pub jn: ComplexPoint,
    /// Unit complex normal `conj(dr/dz) / |dr/dz|`; equals `n`.
    pub nu: ComplexPoint,
    /// Hermitian-orthonormal basis of the holomorphic tangent space.
    pub l: Vec<ComplexPoint>,
    pub grad_norm: f64,
}

/// Frame with the default Gram-Schmidt order: standard basis vectors by
/// decreasing Hermitian distance from `nu`, ties by index.
pub fn frame_at(d: &Domain, p: &BoundaryPoint) -> Result<Frame> {
    frame_with_order(d, p, None)
}

/// Frame with an explicit candidate order (a permutation of `0..n`).
pub fn frame_with_order(d: &Domain, p: &BoundaryPoint, order: Option<&[usize]>) -> Result<Frame> {
    let (_, g) = complex_gradient(d, &p.p)?;
    let gn = g.norm();
    if !(gn > MIN_GRAD) {
        return Err(Error::DegenerateGradient { grad_norm: gn });
    }
    let n = g.scale_real(1.0 / gn);
    let dim = n.dim();
    let order: Vec<usize> = match order {
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort_unstable();
            if sorted != (0..dim).collect::<Vec<_>>() {
                return Err(Error::InvalidArgument(format!("{o:?} is not a permutation of 0..{dim}")));
            }
            o.to_vec()
        }
        None => {
            let mut idx: Vec<usize> = (0..dim).collect();
            let dist = |j: usize| (1.0 - n[j].norm_sqr()).max(0.0).sqrt();
            idx.sort_by(|&a, &b| dist(b).total_cmp(&dist(a)));
            idx
        }
    };
    let mut l: Vec<ComplexPoint> = Vec::with_capacity(dim - 1);
    for &j in &order {
        if l.len() == dim - 1 {
            break;
        }
        let mut v = ComplexPoint::basis(dim, j);
        // two passes for orthogonality at round-off level
        for _ in 0..2 {
            v = v.axpy(-v.herm(&n), &n);
            for u in &l {
                v = v.axpy(-v.herm(u), u);
            }
        }
        let norm = v.norm();
        if norm < SKIP_NORM {
            continue;
        }
        l.push(v.scale_real(1.0 / norm));
    }
    let jn = n.scale(Complex64::new(0.0, 1.0));
    Ok(Frame { nu: n.clone(), jn, n, l, grad_norm: gn })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeviForm {
    pub matrix: DMatrix<Complex64>,
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
}

/// Complex Hessian restricted to the frame's tangent basis.
pub fn levi_form(d: &Domain, p: &BoundaryPoint, frame: &Frame) -> Result<LeviForm> {
    let h = complex_hessian(d, &p.p)?;
    let m = frame.l.len();
    let mut mat = DMatrix::from_fn(m, m, |a, b| {
        let (la, lb) = (&frame.l[a], &frame.l[b]);
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..h.nrows() {
            for k in 0..h.ncols() {
                s += h[(j, k)] * la[j] * lb[k].conj();
            }
        }
        s
    });
    let herm = (&mat + mat.adjoint()).scale(0.5);
    mat = herm;
    let eig = SymmetricEigen::new(mat.clone());
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let min_eigenvalue = eigenvalues.first().copied().unwrap_or(f64::NAN);
    Ok(LeviForm { matrix: mat, eigenvalues, min_eigenvalue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defexpr::Params;
    use crate::domains::catalog_get;
    use crate::geometry::boundary_point;

    fn setup(name: &str, p: &[(f64, f64)]) -> (Domain, BoundaryPoint) {
        let d = catalog_get(name, &Params::new()).unwrap();
        let bp = boundary_point(&d, ComplexPoint::from_re_im(p)).unwrap();
        (d, bp)
    }

    #[test]
    fn ball_frame() {
        let (d, bp) = setup("ball", &[(1.0, 0.0), (0.0, 0.0)]);
        let f = frame_at(&d, &bp).unwrap();
        assert_eq!(f.n, ComplexPoint::from_re_im(&[(1.0, 0.0), (0.0, 0.0)]));
        assert_eq!(f.l, vec![ComplexPoint::from_re_im(&[(0.0, 0.0), (1.0, 0.0)])]);
        assert_eq!(f.jn, ComplexPoint::from_re_im(&[(0.0, 1.0), (0.0, 0.0)]));
    }

    #[test]
    fn worm_tangent_is_z2_axis() {
        let (d, bp) = setup("worm", &[(0.0, 0.0), (1.0, 0.0)]);
        let f = frame_at(&d, &bp).unwrap();
        assert!(f.l[0][0].norm() < 1e-15);
        assert!((f.l[0][1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dangelo_tangent_plane() {
        let (d, bp) = setup("dangelo", &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let f = frame_at(&d, &bp).unwrap();
        assert_eq!(f.l.len(), 2);
        for l in &f.l {
            assert_eq!(l[0], Complex64::new(0.0, 0.0));
        }
        assert!((f.l[0].herm(&f.l[1])).norm() < 1e-15);
    }

    #[test]
    fn levi_examples() {
        let (d, bp) = setup("ball", &[(0.6, 0.0), (0.0, 0.8)]);
        let lf = levi_form(&d, &bp, &frame_at(&d, &bp).unwrap()).unwrap();
        assert!((lf.min_eigenvalue - 1.0).abs() < 1e-12);
        let (d, bp) = setup("worm", &[(0.0, 0.0), (1.0, 0.0)]);
        let lf = levi_form(&d, &bp, &frame_at(&d, &bp).unwrap()).unwrap();
        assert!(lf.min_eigenvalue.abs() < 1e-9);
    }

    #[test]
    fn worm_strongly_pseudoconvex_references() {
        let d = catalog_get("worm", &Params::new()).unwrap();
        for r in d.references.iter().filter(|r| r.label.starts_with("spc")) {
            let bp = boundary_point(&d, r.point.clone()).unwrap();
            let lf = levi_form(&d, &bp, &frame_at(&d, &bp).unwrap()).unwrap();
            assert!(lf.min_eigenvalue > 1e-4, "{}: {}", r.label, lf.min_eigenvalue);
        }
    }

    #[test]
    fn permuted_order_rejects_non_permutation() {
        let (d, bp) = setup("ball", &[(1.0, 0.0), (0.0, 0.0)]);
        assert!(frame_with_order(&d, &bp, Some(&[0, 0])).is_err());
    }
}
