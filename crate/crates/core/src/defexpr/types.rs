//! Realness type pass: every node is either real or complex, and real nodes
//! additionally track whether they are provably nonnegative.

use super::ast::{BinaryOp, Node, UnaryOp};
use crate::error::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ty {
    Complex,
    Real { nonneg: bool },
}

impl Ty {
    pub fn is_real(self) -> bool {
        matches!(self, Ty::Real { .. })
    }

    fn nonneg(self) -> bool {
        matches!(self, Ty::Real { nonneg: true })
    }
}

pub fn type_of(node: &Node) -> Result<Ty, ParseError> {
    Ok(match node {
        Node::Real(x) => Ty::Real { nonneg: *x >= 0.0 },
        Node::Imag | Node::Var(_) => Ty::Complex,
        Node::Const(_) => Ty::Real { nonneg: true },
        Node::Param(_) => Ty::Real { nonneg: false },
        Node::Unary(op, a) => {
            let t = type_of(a)?;
            match op {
                UnaryOp::Neg => match t {
                    Ty::Complex => Ty::Complex,
                    Ty::Real { .. } => Ty::Real { nonneg: false },
                },
                UnaryOp::Conj => t,
                UnaryOp::Re | UnaryOp::Im => Ty::Real { nonneg: false },
                UnaryOp::Abs | UnaryOp::Abs2 => Ty::Real { nonneg: true },
                UnaryOp::Exp => match t {
                    Ty::Complex => Ty::Complex,
                    Ty::Real { .. } => Ty::Real { nonneg: true },
                },
                UnaryOp::Log => {
                    if !t.is_real() {
                        return Err(ParseError::Realness(format!(
                            "log requires a real argument: `{a}`"
                        )));
                    }
                    Ty::Real { nonneg: false }
                }
                UnaryOp::Sqrt => {
                    if !t.is_real() {
                        return Err(ParseError::Realness(format!(
                            "sqrt requires a real argument: `{a}`"
                        )));
                    }
                    Ty::Real { nonneg: true }
                }
            }
        }
        Node::Binary(op, a, b) => {
            let ta = type_of(a)?;
            let tb = type_of(b)?;
            match op {
                BinaryOp::Add | BinaryOp::Mul | BinaryOp::Div => {
                    if ta.is_real() && tb.is_real() {
                        Ty::Real { nonneg: ta.nonneg() && tb.nonneg() }
                    } else {
                        Ty::Complex
                    }
                }
                BinaryOp::Sub => {
                    if ta.is_real() && tb.is_real() {
                        Ty::Real { nonneg: false }
                    } else {
                        Ty::Complex
                    }
                }
                BinaryOp::Pow => {
                    if !tb.is_real() {
                        return Err(ParseError::Realness(format!(
                            "exponent must be real: `{b}`"
                        )));
                    }
                    match b.integer_literal() {
                        Some(k) => match ta {
                            Ty::Complex => Ty::Complex,
                            Ty::Real { nonneg } => Ty::Real { nonneg: nonneg || k % 2 == 0 },
                        },
                        None => {
                            if !ta.nonneg() {
                                return Err(ParseError::Realness(format!(
                                    "non-integer power needs a provably nonnegative real base: `{a}`"
                                )));
                            }
                            Ty::Real { nonneg: true }
                        }
                    }
                }
            }
        }
    })
}

pub fn check_real_root(root: &Node) -> Result<(), ParseError> {
    match type_of(root)? {
        Ty::Real { .. } => Ok(()),
        Ty::Complex => Err(ParseError::Realness(format!(
            "root expression `{root}` is complex-valued; wrap it in Re(), Im(), abs() or abs2()"
        ))),
    }
}
