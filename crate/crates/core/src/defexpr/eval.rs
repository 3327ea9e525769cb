use std::collections::BTreeMap;

use super::ast::{BinaryOp, ExprAst, Node, UnaryOp};
use crate::complex::{ComplexPoint, Cx};
use crate::error::EvalError;
use crate::numdiff::Scalar;

pub type Params = BTreeMap<String, f64>;

fn undefined(op: &'static str, node: &Node) -> EvalError {
    EvalError::DomainOfDefinition { op, expr: node.to_string() }
}

fn eval_node<T: Scalar>(node: &Node, z: &[Cx<T>], params: &Params) -> Result<Cx<T>, EvalError> {
    Ok(match node {
        Node::Real(x) => Cx::real(T::cst(*x)),
        Node::Imag => Cx::new(T::cst(0.0), T::cst(1.0)),
        Node::Const(c) => Cx::real(T::cst(c.value())),
        Node::Var(j) => z[*j - 1],
        Node::Param(p) => match params.get(p) {
            Some(v) => Cx::real(T::cst(*v)),
            None => return Err(EvalError::MissingParameter(p.clone())),
        },
        Node::Unary(op, a) => {
            let x = eval_node(a, z, params)?;
            match op {
                UnaryOp::Neg => -x,
                UnaryOp::Conj => x.conj(),
                UnaryOp::Re => Cx::real(x.re),
                UnaryOp::Im => Cx::real(x.im),
                UnaryOp::Abs2 => Cx::real(x.abs2()),
                UnaryOp::Abs => Cx::real(x.abs2().sqrt()),
                UnaryOp::Exp => {
                    if x.im.is_zero() {
                        Cx::real(x.re.exp())
                    } else {
                        x.exp()
                    }
                }
                UnaryOp::Log => {
                    if x.re.value() <= 0.0 {
                        return Err(undefined("log", node));
                    }
                    Cx::real(x.re.ln())
                }
                UnaryOp::Sqrt => {
                    if x.re.value() < 0.0 {
                        return Err(undefined("sqrt", node));
                    }
                    Cx::real(x.re.sqrt())
                }
            }
        }
        Node::Binary(op, a, b) => {
            let x = eval_node(a, z, params)?;
            if *op == BinaryOp::Pow {
                return pow(node, x, b, z, params);
            }
            let y = eval_node(b, z, params)?;
            match op {
                BinaryOp::Add => x + y,
                BinaryOp::Sub => x - y,
                BinaryOp::Mul => x * y,
                BinaryOp::Div => {
                    if y.abs2().value() == 0.0 {
                        return Err(undefined("division", node));
                    }
                    if y.im.is_zero() {
                        let r = y.re.recip();
                        Cx::new(x.re * r, x.im * r)
                    } else {
                        x / y
                    }
                }
                BinaryOp::Pow => unreachable!(),
            }
        }
    })
}

fn pow<T: Scalar>(
    node: &Node,
    base: Cx<T>,
    exp: &Node,
    z: &[Cx<T>],
    params: &Params,
) -> Result<Cx<T>, EvalError> {
    if let Some(k) = exp.integer_literal() {
        let p = base.powi(k.unsigned_abs());
        if k >= 0 {
            return Ok(p);
        }
        if p.abs2().value() == 0.0 {
            return Err(undefined("negative power", node));
        }
        return Ok(Cx::real(T::cst(1.0)) / p);
    }
    let e = eval_node(exp, z, params)?;
    if base.re.value() <= 0.0 {
        return Err(undefined("real power", node));
    }
    if is_constant(exp) {
        return Ok(Cx::real(base.re.powf(e.re.value())));
    }
    // variable exponent: exp(e * ln x)
    Ok(Cx::real((e.re * base.re.ln()).exp()))
}

fn is_constant(node: &Node) -> bool {
    match node {
        Node::Real(_) | Node::Const(_) | Node::Param(_) | Node::Imag => true,
        Node::Var(_) => false,
        Node::Unary(_, a) => is_constant(a),
        Node::Binary(_, a, b) => is_constant(a) && is_constant(b),
    }
}

/// Evaluate a real-valued expression with any scalar type.
pub fn evaluate_generic<T: Scalar>(
    ast: &ExprAst,
    z: &[Cx<T>],
    params: &Params,
) -> Result<T, EvalError> {
    if z.len() != ast.n {
        return Err(EvalError::Dimension { got: z.len(), expected: ast.n });
    }
    let v = eval_node(&ast.root, z, params)?;
    if !v.re.value().is_finite() {
        return Err(EvalError::NonFinite);
    }
    Ok(v.re)
}

/// Evaluate r(z) as a real number.
pub fn evaluate(ast: &ExprAst, z: &ComplexPoint, params: &Params) -> Result<f64, EvalError> {
    evaluate_generic::<f64>(ast, &z.lift(), params)
}

/// Evaluate an expression that may be complex-valued (no realness requirement).
pub fn evaluate_complex_node(
    node: &Node,
    z: &ComplexPoint,
    params: &Params,
) -> Result<num_complex::Complex64, EvalError> {
    let v = eval_node::<f64>(node, &z.lift(), params)?;
    Ok(v.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defexpr::parse;

    fn pt(c: &[(f64, f64)]) -> ComplexPoint {
        ComplexPoint::from_re_im(c)
    }

    #[test]
    fn unit_sphere_point() {
        let ast = parse("abs2(z1) + abs2(z2) - 1", 2).unwrap();
        let v = evaluate(&ast, &pt(&[(1.0, 0.0), (0.0, 0.0)]), &Params::new()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn dangelo_vanishes_on_curve() {
        let ast = parse("Re(z1) + abs2(z2^2 - z3^3)", 3).unwrap();
        let zeta = num_complex::Complex64::new(0.1, 0.0);
        let z = ComplexPoint::new(vec![0.0.into(), zeta.powi(3), zeta.powi(2)]);
        let v = evaluate(&ast, &z, &Params::new()).unwrap();
        assert!(v.abs() < 1e-30);
    }

    #[test]
    fn log_of_zero_is_an_error() {
        let ast = parse("log(abs2(z2)) + Re(z1)", 2).unwrap();
        let err = evaluate(&ast, &pt(&[(0.0, 0.0), (0.0, 0.0)]), &Params::new()).unwrap_err();
        assert!(matches!(err, EvalError::DomainOfDefinition { op: "log", .. }));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let ast = parse("Re(z1) + exp(-1/abs2(z2))", 2).unwrap();
        let err = evaluate(&ast, &pt(&[(0.0, 0.0), (0.0, 0.0)]), &Params::new()).unwrap_err();
        match err {
            EvalError::DomainOfDefinition { op, expr } => {
                assert_eq!(op, "division");
                assert!(expr.contains("abs2(z2)"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_parameter() {
        let ast = parse("abs2(z1) + abs2(z2) - $R", 2).unwrap();
        assert_eq!(
            evaluate(&ast, &pt(&[(0.0, 0.0), (0.0, 0.0)]), &Params::new()),
            Err(EvalError::MissingParameter("R".into()))
        );
    }

    #[test]
    fn complex_literal_arithmetic() {
        let ast = parse("Im((1 + 2*i) * z1) + 0*Re(z2)", 2).unwrap();
        let v = evaluate(&ast, &pt(&[(3.0, 0.0), (0.0, 0.0)]), &Params::new()).unwrap();
        assert_eq!(v, 6.0);
    }
}
