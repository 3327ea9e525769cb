//! Domains `Ω = {r < 0}`: the built-in catalog, user expressions and domain files.

mod catalog;
mod file;
mod kernels;

use std::fmt;

use crate::complex::{ComplexPoint, Cx};
use crate::defexpr::{evaluate_complex_node, evaluate_generic, ExprAst, Node, Params};
use crate::error::EvalError;
use crate::numdiff::{Dual, Jet2, RealFunction, Scalar};

pub use catalog::{catalog_get, dsl_domain, families, reference_points, FamilyInfo, ParamInfo};
pub use file::{load_domain_file, parse_domain_file, DomainFile};
pub use kernels::{flat_exp, HermiteBridge, SmoothKernel};

/// Defining functions that need smooth pieces outside the expression language.
#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    /// `|z1|^2 + 2 Re(z1 e^{-iθ}) + φ(θ)`, `θ = log|z2|^2`.
    Worm { phi: SmoothKernel },
    /// `|z1 - √3|^2 + χ(|z2|^2) - 4`.
    Flz1 { chi: SmoothKernel },
    /// `χ(|z1|) + χ(|z2|) - 2 + κ`.
    Flz2 { chi: SmoothKernel, kappa: f64 },
    /// `Re(z1) + exp(-1/|z2|^2)`.
    ExpFlat,
    /// `exp(-|z1|^{-α1}) + exp(-|z2|^{-α2}) - e^{-1}`.
    DoubleExpFlat { a1: f64, a2: f64 },
    /// `Re(z1) + exp(-1/|z2|^2) + |z3|^6`.
    C3Mixed,
}

impl Builtin {
    fn eval<T: Scalar>(&self, z: &[Cx<T>]) -> T {
        let flat = |t: T, a: f64| SmoothKernel::FlatExp { a }.apply(t);
        match self {
            Builtin::Worm { phi } => {
                let t = z[1].abs2();
                let theta = t.ln();
                let rot = Cx::new(theta.cos(), -theta.sin());
                let cross = (z[0] * rot).re;
                z[0].abs2() + cross.scale(2.0) + phi.apply(theta)
            }
            Builtin::Flz1 { chi } => {
                let w = Cx::new(z[0].re.add_cst(-3f64.sqrt()), z[0].im);
                w.abs2() + chi.apply(z[1].abs2()).add_cst(-4.0)
            }
            Builtin::Flz2 { chi, kappa } => {
                (chi.apply(z[0].abs2()) + chi.apply(z[1].abs2())).add_cst(kappa - 2.0)
            }
            Builtin::ExpFlat => z[0].re + flat(z[1].abs2(), 1.0),
            Builtin::DoubleExpFlat { a1, a2 } => (flat(z[0].abs2(), a1 / 2.0)
                + flat(z[1].abs2(), a2 / 2.0))
            .add_cst(-(-1.0f64).exp()),
            Builtin::C3Mixed => z[0].re + flat(z[1].abs2(), 1.0) + z[2].abs2().powi(3),
        }
    }
}

/// Holomorphic change of coordinates `w -> z`; the domain is analysed in `w`.
#[derive(Clone, Debug, PartialEq)]
pub enum Chart {
    /// `z1 = w1`, `z2 = sqrt(w2 + w3^3)`, `z3 = w3`, inverting `w2 = z2^2 - z3^3`.
    DAngelo,
}

impl Chart {
    pub fn forward<T: Scalar>(&self, w: &[Cx<T>]) -> Vec<Cx<T>> {
        match self {
            Chart::DAngelo => vec![w[0], (w[1] + w[2].powi(3)).sqrt(), w[2]],
        }
    }

    /// `z -> w`.
    pub fn inverse(&self, z: &ComplexPoint) -> ComplexPoint {
        match self {
            Chart::DAngelo => {
                ComplexPoint::new(vec![z[0], z[1] * z[1] - z[2].powi(3), z[2]])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Definition {
    Expr(ExprAst),
    Builtin(Builtin),
}

/// Excluded locus; evaluation there is an error.
#[derive(Clone, Debug, PartialEq)]
pub enum Guard {
    /// `z_j != 0` (1-based).
    NonZero(usize),
    /// `expr > 0`, with `expr` real-valued.
    Positive(Node),
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::NonZero(j) => write!(f, "z{j} != 0"),
            Guard::Positive(node) => write!(f, "{node} > 0"),
        }
    }
}

/// What is expected of a reference boundary point.
#[derive(Clone, Debug, PartialEq)]
pub enum PointKind {
    StronglyPseudoconvex,
    /// Disc index along `direction` unbounded.
    InfiniteType,
    /// Disc index `order` along `direction`.
    FiniteType { order: f64 },
    Generic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferencePoint {
    pub label: String,
    pub point: ComplexPoint,
    pub kind: PointKind,
    pub direction: Option<ComplexPoint>,
    pub note: String,
}

/// A domain `Ω = {r < 0}` with its evaluation constraints.
#[derive(Clone, Debug)]
pub struct Domain {
    pub name: String,
    pub n: usize,
    pub params: Params,
    pub definition: Definition,
    pub chart: Option<Chart>,
    pub guards: Vec<Guard>,
    /// Coordinate box `|z_j| < b` in which `r` is a valid local defining function.
    pub locality: Option<f64>,
    /// A point with `r < 0`.
    pub interior: ComplexPoint,
    /// Upper bound for tangential radii.
    pub diameter: f64,
    pub references: Vec<ReferencePoint>,
}

impl Domain {
    /// r at `w` (chart coordinates if the domain has a chart), generic over scalars.
    pub fn eval<T: Scalar>(&self, w: &[Cx<T>]) -> Result<T, EvalError> {
        if w.len() != self.n {
            return Err(EvalError::Dimension { got: w.len(), expected: self.n });
        }
        let mapped;
        let z = match &self.chart {
            Some(c) => {
                mapped = c.forward(w);
                &mapped[..]
            }
            None => w,
        };
        if let Some(b) = self.locality {
            if z.iter().any(|c| !(c.abs2().value() < b * b)) {
                return Err(EvalError::Locality { radius: b });
            }
        }
        if !self.guards.is_empty() {
            let zv = ComplexPoint::new(z.iter().map(|c| c.value()).collect());
            self.check_guards(&zv)?;
        }
        let v = match &self.definition {
            Definition::Expr(ast) => evaluate_generic(ast, z, &self.params)?,
            Definition::Builtin(b) => b.eval(z),
        };
        if !v.value().is_finite() {
            return Err(EvalError::NonFinite);
        }
        Ok(v)
    }

    fn check_guards(&self, z: &ComplexPoint) -> Result<(), EvalError> {
        for g in &self.guards {
            let ok = match g {
                Guard::NonZero(j) => z[*j - 1].norm_sqr() > 0.0,
                Guard::Positive(node) => evaluate_complex_node(node, z, &self.params)?.re > 0.0,
            };
            if !ok {
                return Err(EvalError::Guard(g.to_string()));
            }
        }
        Ok(())
    }

    pub fn r(&self, z: &ComplexPoint) -> Result<f64, EvalError> {
        self.eval::<f64>(&z.lift())
    }

    /// Inside `Ω`: `r < 0` and evaluation is valid.
    pub fn contains(&self, z: &ComplexPoint) -> bool {
        matches!(self.r(z), Ok(v) if v < 0.0)
    }

    pub fn is_local(&self) -> bool {
        self.locality.is_some()
    }

    pub fn reference(&self, label: &str) -> Option<&ReferencePoint> {
        self.references.iter().find(|r| r.label == label)
    }
}

impl RealFunction for Domain {
    fn dim(&self) -> usize {
        self.n
    }
    fn eval_f64(&self, z: &[Cx<f64>]) -> Result<f64, EvalError> {
        self.eval(z)
    }
    fn eval_dual(&self, z: &[Cx<Dual>]) -> Result<Dual, EvalError> {
        self.eval(z)
    }
    fn eval_jet(&self, z: &[Cx<Jet2>]) -> Result<Jet2, EvalError> {
        self.eval(z)
    }
}
