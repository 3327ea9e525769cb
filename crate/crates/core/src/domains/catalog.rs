use std::f64::consts::{FRAC_PI_2, SQRT_2};

use num_complex::Complex64;

use super::{Builtin, Chart, Definition, Domain, Guard, PointKind, ReferencePoint, SmoothKernel};
use crate::complex::ComplexPoint;
use crate::defexpr::{parse, Params};
use crate::error::{Error, EvalError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ParamInfo {
    pub name: &'static str,
    pub default: f64,
    pub constraint: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub n: usize,
    pub formula: &'static str,
    pub local: bool,
    pub params: Vec<ParamInfo>,
    pub note: &'static str,
}

fn p(name: &'static str, default: f64, constraint: &'static str) -> ParamInfo {
    ParamInfo { name, default, constraint }
}

/// Catalog families in listing order.
pub fn families() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo {
            name: "ball",
            n: 2,
            formula: "|z1|^2 + |z2|^2 - 1",
            local: false,
            params: vec![],
            note: "strongly pseudoconvex everywhere; disc index 2",
        },
        FamilyInfo {
            name: "egg",
            n: 2,
            formula: "|z1|^(2m) + |z2|^2 - 1",
            local: false,
            params: vec![p("m", 2.0, "integer, 1 <= m <= 16")],
            note: "(0,1): finite type 2m along (1,0)",
        },
        FamilyInfo {
            name: "worm",
            n: 2,
            formula: "|z1 + exp(i log|z2|^2)|^2 - 1 + phi(log|z2|^2)",
            local: false,
            params: vec![p("beta", 2.0, "beta > pi/2")],
            note: "annulus A = {(0,z2): exp(-beta/2+pi/4) <= |z2| <= exp(beta/2-pi/4)}: \
                   weakly pseudoconvex, disc index unbounded; strictly pseudoconvex elsewhere",
        },
        FamilyInfo {
            name: "flz1",
            n: 2,
            formula: "|z1 - sqrt(3)|^2 + chi(|z2|^2) - 4",
            local: false,
            params: vec![
                p("alpha", 1.0, "0 < alpha <= 2, chi convex"),
                p("eps", 0.05, "0 < eps < kappa"),
                p("kappa", 0.1, "kappa > 0"),
                p("tau", 0.05, "0 < tau < kappa"),
            ],
            note: "flat piece {|z1 - sqrt(3)|^2 = 3, |z2| <= 1}: disc index unbounded",
        },
        FamilyInfo {
            name: "flz2",
            n: 2,
            formula: "chi(|z1|) + chi(|z2|) - 2 + kappa",
            local: false,
            params: vec![
                p("alpha", 0.5, "0 < alpha < 1"),
                p("kappa", 0.1, "0 < kappa < 1"),
            ],
            note: "flat pieces P1 = {|z1| = 1, |z2| <= 1-kappa}, P2 = {|z2| = 1, |z1| <= 1-kappa}",
        },
        FamilyInfo {
            name: "expflat",
            n: 2,
            formula: "Re(z1) + exp(-1/|z2|^2)",
            local: true,
            params: vec![],
            note: "origin: infinite type along (0,1)",
        },
        FamilyInfo {
            name: "double_expflat",
            n: 2,
            formula: "exp(-|z1|^-alpha1) + exp(-|z2|^-alpha2) - exp(-1)",
            local: false,
            params: vec![
                p("alpha1", 2.0, "alpha1 > 0"),
                p("alpha2", 2.0, "alpha2 > 0"),
            ],
            note: "circle {(0,z2): |z2| = 1}: disc index unbounded along (1,0)",
        },
        FamilyInfo {
            name: "dangelo",
            n: 3,
            formula: "Re(z1) + |z2^2 - z3^3|^2",
            local: true,
            params: vec![p("chart", 0.0, "0: z coordinates, 1: w = (z1, z2^2 - z3^3, z3)")],
            note: "origin: infinite type, finite regular type (index 6 along z3); \
                   curve (0, t^3, t^2): infinite regular type",
        },
        FamilyInfo {
            name: "c3_mixed",
            n: 3,
            formula: "Re(z1) + exp(-1/|z2|^2) + |z3|^6",
            local: true,
            params: vec![],
            note: "origin: index unbounded along z2, index 6 along z3",
        },
        FamilyInfo {
            name: "dsl",
            n: 0,
            formula: "user expression",
            local: false,
            params: vec![],
            note: "loaded from a domain file",
        },
    ]
}

fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name: name.to_string(), reason: reason.into() }
}

fn resolve_params(info: &FamilyInfo, given: &Params) -> Result<Params> {
    for key in given.keys() {
        if !info.params.iter().any(|p| p.name == key) {
            return Err(invalid(key, format!("not a parameter of {}", info.name)));
        }
    }
    let mut out = Params::new();
    for pi in &info.params {
        let v = given.get(pi.name).copied().unwrap_or(pi.default);
        if !v.is_finite() {
            return Err(invalid(pi.name, "must be finite"));
        }
        out.insert(pi.name.to_string(), v);
    }
    Ok(out)
}

fn pt(c: &[(f64, f64)]) -> ComplexPoint {
    ComplexPoint::from_re_im(c)
}

fn rp(label: impl Into<String>, point: ComplexPoint, kind: PointKind, dir: Option<ComplexPoint>, note: &str) -> ReferencePoint {
    ReferencePoint { label: label.into(), point, kind, direction: dir, note: note.to_string() }
}

fn expr_domain(name: &str, text: &str, n: usize, params: Params) -> Result<Domain> {
    Ok(Domain {
        name: name.to_string(),
        n,
        params,
        definition: Definition::Expr(parse(text, n)?),
        chart: None,
        guards: vec![],
        locality: None,
        interior: ComplexPoint::zeros(n),
        diameter: 2.0,
        references: vec![],
    })
}

fn builtin_domain(name: &str, n: usize, params: Params, b: Builtin) -> Domain {
    Domain {
        name: name.to_string(),
        n,
        params,
        definition: Definition::Builtin(b),
        chart: None,
        guards: vec![],
        locality: None,
        interior: ComplexPoint::zeros(n),
        diameter: 2.0,
        references: vec![],
    }
}

/// Build a catalog domain; missing parameters take their defaults.
pub fn catalog_get(name: &str, params: &Params) -> Result<Domain> {
    let info = families()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownDomain(name.to_string()))?;
    if name == "dsl" {
        return Err(invalid("expr", "dsl domains are built from an expression (domain file)"));
    }
    let prm = resolve_params(&info, params)?;
    let get = |k: &str| prm[k];
    let e1 = || pt(&[(1.0, 0.0), (0.0, 0.0)]);
    let e2 = || pt(&[(0.0, 0.0), (1.0, 0.0)]);
    let mut d = match name {
        "ball" => {
            let mut d = expr_domain(name, "abs2(z1) + abs2(z2) - 1", 2, prm)?;
            let s = 1.0 / SQRT_2;
            d.references = vec![
                rp("(1,0)", e1(), PointKind::StronglyPseudoconvex, Some(e2()), "index 2"),
                rp("(0,1)", e2(), PointKind::StronglyPseudoconvex, Some(e1()), "index 2"),
                rp(
                    "diagonal",
                    pt(&[(s, 0.0), (0.0, s)]),
                    PointKind::StronglyPseudoconvex,
                    None,
                    "index 2",
                ),
            ];
            d
        }
        "egg" => {
            let m = get("m");
            if m.fract() != 0.0 || !(1.0..=16.0).contains(&m) {
                return Err(invalid("m", "must be an integer in [1, 16]"));
            }
            let text = format!("abs2(z1)^{} + abs2(z2) - 1", m as u32);
            let mut d = expr_domain(name, &text, 2, prm)?;
            d.references = vec![
                rp(
                    "(0,1)",
                    e2(),
                    PointKind::FiniteType { order: 2.0 * m },
                    Some(e1()),
                    "weakly pseudoconvex pole for m > 1; expected index 2m along (1,0)",
                ),
                rp("(1,0)", e1(), PointKind::StronglyPseudoconvex, Some(e2()), "index 2"),
            ];
            d
        }
        "worm" => worm(get("beta"), prm)?,
        "flz1" => flz1(prm)?,
        "flz2" => flz2(prm)?,
        "expflat" => {
            let mut d = builtin_domain(name, 2, prm, Builtin::ExpFlat);
            d.locality = Some(1.0);
            d.interior = pt(&[(-0.5, 0.0), (0.0, 0.0)]);
            d.references = vec![
                rp("origin", ComplexPoint::zeros(2), PointKind::InfiniteType, Some(e2()), "index unbounded along (0,1)"),
                rp("(-e^-4, 1/2)", pt(&[(-(-4.0f64).exp(), 0.0), (0.5, 0.0)]), PointKind::Generic, None, ""),
            ];
            d
        }
        "double_expflat" => {
            let (a1, a2) = (get("alpha1"), get("alpha2"));
            if a1 <= 0.0 || a2 <= 0.0 {
                return Err(invalid("alpha1/alpha2", "must be positive"));
            }
            let mut d = builtin_domain(name, 2, prm, Builtin::DoubleExpFlat { a1, a2 });
            d.diameter = 3.0;
            d.references = [0.0, 1.0, 2.0, 4.0]
                .iter()
                .map(|&th| {
                    let z2 = Complex64::from_polar(1.0, th);
                    rp(
                        format!("E(theta={th})"),
                        ComplexPoint::new(vec![0.0.into(), z2]),
                        PointKind::InfiniteType,
                        Some(e1()),
                        "circle {(0,z2): |z2| = 1}, index unbounded along (1,0)",
                    )
                })
                .collect();
            // equal moduli: 2 exp(-s^-a) = e^-1 needs a1 = a2; use z1 only otherwise
            if a1 == a2 {
                let s = (1.0 + 2f64.ln()).powf(-1.0 / a1);
                d.references.push(rp("diagonal", pt(&[(s, 0.0), (s, 0.0)]), PointKind::Generic, None, ""));
            }
            d
        }
        "dangelo" => dangelo(get("chart"), prm)?,
        "c3_mixed" => {
            let mut d = builtin_domain(name, 3, prm, Builtin::C3Mixed);
            d.locality = Some(1.0);
            d.interior = pt(&[(-0.5, 0.0), (0.0, 0.0), (0.0, 0.0)]);
            let o = ComplexPoint::zeros(3);
            d.references = vec![
                rp("origin/z2", o.clone(), PointKind::InfiniteType, Some(ComplexPoint::basis(3, 1)), "index unbounded along z2"),
                rp("origin/z3", o, PointKind::FiniteType { order: 6.0 }, Some(ComplexPoint::basis(3, 2)), "index 6 along z3"),
            ];
            d
        }
        _ => return Err(Error::UnknownDomain(name.to_string())),
    };
    if d.r(&d.interior).map_or(true, |v| v >= -1e-6) {
        return Err(invalid("interior", format!("witness {} is not inside", d.interior)));
    }
    d.name = name.to_string();
    Ok(d)
}

fn worm(beta: f64, prm: Params) -> Result<Domain> {
    if beta <= FRAC_PI_2 {
        return Err(invalid("beta", "must exceed pi/2"));
    }
    let phi = SmoothKernel::worm_phi(beta);
    let mut d = builtin_domain("worm", 2, prm, Builtin::Worm { phi: phi.clone() });
    d.guards = vec![Guard::NonZero(2)];
    d.interior = pt(&[(-1.0, 0.0), (1.0, 0.0)]);
    d.diameter = 8.0;
    let c = beta - FRAC_PI_2;
    let e2 = ComplexPoint::basis(2, 1);
    let mut refs = vec![rp(
        "A:(0,1)",
        e2.clone(),
        PointKind::InfiniteType,
        Some(e2.clone()),
        "on annulus A, expected disc index >= any k",
    )];
    for (i, frac) in [-1.0, -0.5, 0.0, 0.5, 1.0].iter().enumerate() {
        for (j, arg) in [0.0, 2.0].iter().enumerate() {
            if i == 2 && j == 0 {
                continue;
            }
            let z2 = Complex64::from_polar((frac * c / 2.0).exp(), *arg);
            refs.push(rp(
                format!("A[{}]", refs.len()),
                ComplexPoint::new(vec![0.0.into(), z2]),
                PointKind::InfiniteType,
                Some(e2.clone()),
                "on annulus A, Levi form degenerate",
            ));
        }
    }
    // strongly pseudoconvex: |z1 + e^{i theta}|^2 = 1 - phi(theta), theta = log|z2|^2
    let thetas = [0.8, -0.8, 1.0, -1.0, 1.2, -1.2, 1.5, -1.5, 1.8, -1.6];
    let psis = [0.3, 1.0, 2.0, 3.0, -1.5];
    for (i, &th) in thetas.iter().enumerate() {
        let psi = psis[i % psis.len()];
        let rad = (1.0 - phi.value(th)).sqrt();
        let z1 = -Complex64::from_polar(1.0, th) + Complex64::from_polar(rad, th + psi);
        let z2 = Complex64::from_polar((th / 2.0).exp(), 0.7);
        refs.push(rp(
            format!("spc[{i}]"),
            ComplexPoint::new(vec![z1, z2]),
            PointKind::StronglyPseudoconvex,
            None,
            "off the annulus, strictly pseudoconvex",
        ));
    }
    d.references = refs;
    Ok(d)
}

fn flz1(prm: Params) -> Result<Domain> {
    let (alpha, eps, kappa, tau) = (prm["alpha"], prm["eps"], prm["kappa"], prm["tau"]);
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(invalid("alpha", "must be in (0, 2]"));
    }
    if !(eps > 0.0 && eps < kappa) {
        return Err(invalid("eps", "need 0 < eps < kappa"));
    }
    if !(tau > 0.0 && tau < kappa) {
        return Err(invalid("tau", "need 0 < tau < kappa"));
    }
    let chi = SmoothKernel::flz1_chi(alpha, eps, kappa, tau);
    for i in 0..=1000 {
        let t = 1.0 + eps + (kappa - eps) * i as f64 / 1000.0;
        let [_, d1, d2] = chi.derivs(t);
        if d2 < -1e-12 || d1 < 0.0 {
            return Err(invalid("alpha", format!("chi is not convex and increasing near t = {t:.4}")));
        }
    }
    let mut d = builtin_domain("flz1", 2, prm, Builtin::Flz1 { chi: chi.clone() });
    let r3 = 3f64.sqrt();
    d.interior = pt(&[(r3, 0.0), (0.0, 0.0)]);
    d.diameter = 6.0;
    let e2 = ComplexPoint::basis(2, 1);
    let on_flat = |psi: f64, z2: Complex64| {
        let z1 = Complex64::new(r3, 0.0) + Complex64::from_polar(r3, psi);
        ComplexPoint::new(vec![z1, z2])
    };
    let note = "flat piece, index unbounded along (0,1)";
    d.references = vec![
        rp("E:(0,0)", ComplexPoint::zeros(2), PointKind::InfiniteType, Some(e2.clone()), note),
        rp("E:(0,1/2)", pt(&[(0.0, 0.0), (0.5, 0.0)]), PointKind::InfiniteType, Some(e2.clone()), note),
        rp("E:(0,0.9i)", pt(&[(0.0, 0.0), (0.0, 0.9)]), PointKind::InfiniteType, Some(e2.clone()), note),
        rp("Et:psi=1", on_flat(1.0 + std::f64::consts::PI, Complex64::new(0.3, 0.2)), PointKind::InfiniteType, Some(e2.clone()), note),
    ];
    let t: f64 = 2.25;
    let x = 4.0 + tau - t;
    d.references.push(rp(
        "spc",
        pt(&[(r3 - x.sqrt(), 0.0), (t.sqrt(), 0.0)]),
        PointKind::StronglyPseudoconvex,
        None,
        "spherical part",
    ));
    Ok(d)
}

fn flz2(prm: Params) -> Result<Domain> {
    let (alpha, kappa) = (prm["alpha"], prm["kappa"]);
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("alpha", "must be in (0, 1)"));
    }
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(invalid("kappa", "must be in (0, 1)"));
    }
    let chi = SmoothKernel::flz2_chi(alpha, kappa);
    let SmoothKernel::Flz2Chi { beta, .. } = chi else { unreachable!() };
    let mut d = builtin_domain("flz2", 2, prm, Builtin::Flz2 { chi, kappa });
    d.diameter = 3.0;
    let (e1, e2) = (ComplexPoint::basis(2, 0), ComplexPoint::basis(2, 1));
    let note1 = "P1, index unbounded along (0,1)";
    let note2 = "P2, index unbounded along (1,0)";
    d.references = vec![
        rp("P1:(1,0)", pt(&[(1.0, 0.0), (0.0, 0.0)]), PointKind::InfiniteType, Some(e2.clone()), note1),
        rp("P1:(1,1/2)", pt(&[(1.0, 0.0), (0.5, 0.0)]), PointKind::InfiniteType, Some(e2.clone()), note1),
        rp(
            "P1:(e^i,i/2)",
            ComplexPoint::new(vec![Complex64::from_polar(1.0, 1.0), Complex64::new(0.0, 0.5)]),
            PointKind::InfiniteType,
            Some(e2),
            note1,
        ),
        rp("P2:(1/2,1)", pt(&[(0.5, 0.0), (1.0, 0.0)]), PointKind::InfiniteType, Some(e1), note2),
    ];
    // |z1| = |z2| = s with chi(s) = 1 - kappa/2
    let c = 1.0 - kappa;
    let u = (-(kappa / (2.0 * beta)).ln()).powf(-2.0 / alpha);
    let s = (c * c + u).sqrt();
    d.references.push(rp("diagonal", pt(&[(s, 0.0), (s, 0.0)]), PointKind::Generic, None, ""));
    Ok(d)
}

fn dangelo(chart: f64, prm: Params) -> Result<Domain> {
    let mut d = expr_domain("dangelo", "Re(z1) + abs2(z2^2 - z3^3)", 3, prm)?;
    d.locality = Some(1.0);
    d.interior = pt(&[(-0.5, 0.0), (0.0, 0.0), (0.0, 0.0)]);
    let zeta = 0.1f64;
    let e3 = ComplexPoint::basis(3, 2);
    if chart == 0.0 {
        d.references = vec![
            rp("origin", ComplexPoint::zeros(3), PointKind::FiniteType { order: 6.0 }, Some(e3), "index 6 along z3; infinite type, finite regular type"),
            rp(
                "curve(0.1)",
                pt(&[(0.0, 0.0), (zeta.powi(3), 0.0), (zeta.powi(2), 0.0)]),
                PointKind::InfiniteType,
                None,
                "on (0, t^3, t^2): index unbounded along w3 in chart coordinates",
            ),
        ];
    } else if chart == 1.0 {
        d.chart = Some(Chart::DAngelo);
        d.interior = pt(&[(-0.5, 0.0), (0.0, 0.0), (zeta * zeta, 0.0)]);
        d.references = vec![rp(
            "curve(0.1)",
            pt(&[(0.0, 0.0), (0.0, 0.0), (zeta * zeta, 0.0)]),
            PointKind::InfiniteType,
            Some(e3),
            "image of (0, t^3, t^2), t = 0.1; index unbounded along w3",
        )];
    } else {
        return Err(invalid("chart", "must be 0 or 1"));
    }
    Ok(d)
}

/// A domain from a user expression.
pub fn dsl_domain(
    name: &str,
    text: &str,
    n: usize,
    params: Params,
    guards: Vec<Guard>,
    locality: Option<f64>,
    interior: Option<ComplexPoint>,
) -> Result<Domain> {
    let ast = parse(text, n)?;
    for p in ast.params() {
        if !params.contains_key(&p) {
            return Err(EvalError::MissingParameter(p).into());
        }
    }
    let mut d = Domain {
        name: name.to_string(),
        n,
        params,
        definition: Definition::Expr(ast),
        chart: None,
        guards,
        locality,
        interior: ComplexPoint::zeros(n),
        diameter: locality.map_or(4.0, |b| 2.0 * b),
        references: vec![],
    };
    let candidates: Vec<ComplexPoint> = match interior {
        Some(z) => vec![z],
        None => {
            let mut c = vec![ComplexPoint::zeros(n)];
            for j in 0..n {
                for w in [-0.5, 0.5] {
                    c.push(ComplexPoint::basis(n, j).scale_real(w));
                }
            }
            c
        }
    };
    match candidates.into_iter().find(|z| d.r(z).map_or(false, |v| v < -1e-6)) {
        Some(z) => d.interior = z,
        None => return Err(invalid("interior", "no interior witness found; set `interior` in the domain file")),
    }
    Ok(d)
}

/// Named reference boundary points of a domain.
pub fn reference_points(d: &Domain) -> Vec<ReferencePoint> {
    d.references.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numdiff::{complex_hessian, wirtinger_first};

    fn get(name: &str, kv: &[(&str, f64)]) -> Domain {
        let params = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        catalog_get(name, &params).unwrap()
    }

    #[test]
    fn egg_values() {
        let d = get("egg", &[("m", 2.0)]);
        assert_eq!(d.r(&pt(&[(1.0, 0.0), (0.0, 0.0)])).unwrap(), 0.0);
        assert_eq!(d.r(&pt(&[(0.0, 0.0), (0.0, 0.0)])).unwrap(), -1.0);
    }

    #[test]
    fn worm_contains_unit_point_of_annulus() {
        let d = get("worm", &[("beta", 2.0)]);
        assert_eq!(d.r(&pt(&[(0.0, 0.0), (1.0, 0.0)])).unwrap(), 0.0);
        assert!(d.reference("A:(0,1)").is_some());
    }

    #[test]
    fn worm_guard() {
        let d = get("worm", &[]);
        assert_eq!(
            d.r(&pt(&[(0.0, 0.0), (0.0, 0.0)])),
            Err(EvalError::Guard("z2 != 0".into()))
        );
    }

    #[test]
    fn worm_beta_constraint() {
        let params = [("beta".to_string(), 1.5)].into_iter().collect();
        assert!(matches!(catalog_get("worm", &params), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn worm_wirtinger_at_unit_point() {
        let d = get("worm", &[]);
        let w = wirtinger_first(&d, &pt(&[(0.0, 0.0), (1.0, 0.0)])).unwrap();
        assert!((w.dz[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(w.dz[1], Complex64::new(0.0, 0.0));
        let h = complex_hessian(&d, &pt(&[(0.0, 0.0), (1.0, 0.0)])).unwrap();
        assert!(h[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn dangelo_curve_point() {
        let d = get("dangelo", &[]);
        let v = d.r(&pt(&[(0.0, 0.0), (0.001, 0.0), (0.01, 0.0)])).unwrap();
        assert!(v.abs() < 1e-20);
        assert_eq!(
            d.r(&pt(&[(0.0, 0.0), (0.0, 0.0), (1.5, 0.0)])),
            Err(EvalError::Locality { radius: 1.0 })
        );
    }

    #[test]
    fn dangelo_chart_pulls_back_to_flat_form() {
        let d = get("dangelo", &[("chart", 1.0)]);
        let w = pt(&[(-0.3, 0.1), (0.02, -0.01), (0.01, 0.0)]);
        let expect = -0.3 + 0.02f64.powi(2) + 0.01f64.powi(2);
        assert!((d.r(&w).unwrap() - expect).abs() < 1e-15);
        let z = pt(&[(0.0, 0.0), (0.001, 0.0), (0.01, 0.0)]);
        let back = Chart::DAngelo.inverse(&z);
        assert!(back.sub(&pt(&[(0.0, 0.0), (0.0, 0.0), (0.01, 0.0)])).norm() < 1e-18);
    }

    #[test]
    fn expflat_limit_at_origin() {
        let d = get("expflat", &[]);
        assert_eq!(d.r(&ComplexPoint::zeros(2)).unwrap(), 0.0);
        let g = crate::numdiff::real_gradient(&d, &ComplexPoint::zeros(2)).unwrap();
        assert_eq!(g, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn unknown_family_and_parameter() {
        assert!(matches!(catalog_get("torus", &Params::new()), Err(Error::UnknownDomain(_))));
        let params = [("q".to_string(), 1.0)].into_iter().collect();
        assert!(matches!(catalog_get("ball", &params), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn every_family_has_interior_and_boundary_references() {
        for f in families() {
            if f.name == "dsl" {
                continue;
            }
            let d = get(f.name, &[]);
            assert!(d.r(&d.interior).unwrap() < -1e-6, "{}", f.name);
            for r in reference_points(&d) {
                let v = d.r(&r.point).unwrap();
                assert!(v.abs() < 1e-10, "{} {}: r = {v}", f.name, r.label);
                let g = crate::numdiff::real_gradient(&d, &r.point).unwrap();
                let gn = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!(gn > 1e-8, "{} {}", f.name, r.label);
            }
        }
    }

    #[test]
    fn flz1_alpha_half_is_rejected() {
        let params = [("alpha".to_string(), 0.5)].into_iter().collect();
        assert!(matches!(catalog_get("flz1", &params), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn dsl_needs_parameters() {
        let err = dsl_domain("x", "abs2(z1) + abs2(z2) - $R", 2, Params::new(), vec![], None, None);
        assert!(matches!(err, Err(Error::Eval(EvalError::MissingParameter(_)))));
        let params = [("R".to_string(), 2.0)].into_iter().collect();
        let d = dsl_domain("x", "abs2(z1) + abs2(z2) - $R", 2, params, vec![], None, None).unwrap();
        assert_eq!(d.interior, ComplexPoint::zeros(2));
    }
}
