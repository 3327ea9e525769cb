//! Defining-function expressions: a small language for real-valued functions
//! of complex variables `z1..zn`.
//!
//! Expressions are parsed into an immutable [`ExprAst`], checked by a realness
//! type pass (the root must be real; non-integer powers need a provably
//! nonnegative real base) and evaluated with any [`Scalar`](crate::numdiff::Scalar)
//! so that derivatives come for free.
//!
//! `abs2(w)` is `|w|^2` and is smooth everywhere; `abs(w)` is not smooth at 0.

mod ast;
mod eval;
mod parser;
mod types;

pub use ast::{BinaryOp, ExprAst, NamedConst, Node, UnaryOp};
pub use eval::{evaluate, evaluate_complex_node, evaluate_generic, Params};
pub use parser::{parse, parse_any};
pub use types::{type_of, Ty};
