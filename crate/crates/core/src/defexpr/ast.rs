use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedConst {
    Pi,
    E,
}

impl NamedConst {
    pub fn value(self) -> f64 {
        match self {
            NamedConst::Pi => std::f64::consts::PI,
            NamedConst::E => std::f64::consts::E,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Conj,
    Re,
    Im,
    Abs,
    Abs2,
    Exp,
    Log,
    Sqrt,
}

impl UnaryOp {
    pub fn function_name(self) -> Option<&'static str> {
        Some(match self {
            UnaryOp::Neg => return None,
            UnaryOp::Conj => "conj",
            UnaryOp::Re => "Re",
            UnaryOp::Im => "Im",
            UnaryOp::Abs => "abs",
            UnaryOp::Abs2 => "abs2",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
        })
    }

    pub fn from_function_name(name: &str) -> Option<UnaryOp> {
        Some(match name {
            "conj" => UnaryOp::Conj,
            "Re" => UnaryOp::Re,
            "Im" => UnaryOp::Im,
            "abs" => UnaryOp::Abs,
            "abs2" => UnaryOp::Abs2,
            "exp" => UnaryOp::Exp,
            "log" => UnaryOp::Log,
            "sqrt" => UnaryOp::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

/// Expression node. Variables are 1-based (`Var(1)` is z1).
#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Real(f64),
    /// The imaginary unit `i`; complex constants are written `a + b*i`.
    Imag,
    Const(NamedConst),
    Var(usize),
    Param(String),
    Unary(UnaryOp, Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
}

impl Node {
    pub fn unary(op: UnaryOp, a: Node) -> Node {
        Node::Unary(op, Box::new(a))
    }

    pub fn binary(op: BinaryOp, a: Node, b: Node) -> Node {
        Node::Binary(op, Box::new(a), Box::new(b))
    }

    /// Integer value of an exponent written as a (possibly negated) integral literal.
    pub fn integer_literal(&self) -> Option<i32> {
        match self {
            Node::Real(x) if x.fract() == 0.0 && x.abs() <= 64.0 => Some(*x as i32),
            Node::Unary(UnaryOp::Neg, a) => a.integer_literal().map(|k| -k),
            _ => None,
        }
    }

    fn collect_params(&self, out: &mut BTreeSet<String>) {
        match self {
            Node::Param(p) => {
                out.insert(p.clone());
            }
            Node::Unary(_, a) => a.collect_params(out),
            Node::Binary(_, a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            _ => {}
        }
    }

    pub fn max_var(&self) -> usize {
        match self {
            Node::Var(j) => *j,
            Node::Unary(_, a) => a.max_var(),
            Node::Binary(_, a, b) => a.max_var().max(b.max_var()),
            _ => 0,
        }
    }
}

/// Fully parenthesized rendering that re-parses to the same tree.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Real(x) if x.is_sign_negative() => write!(f, "({x:?})"),
            Node::Real(x) => write!(f, "{x:?}"),
            Node::Imag => write!(f, "i"),
            Node::Const(NamedConst::Pi) => write!(f, "pi"),
            Node::Const(NamedConst::E) => write!(f, "e"),
            Node::Var(j) => write!(f, "z{j}"),
            Node::Param(p) => write!(f, "${p}"),
            Node::Unary(UnaryOp::Neg, a) => write!(f, "(-{a})"),
            Node::Unary(op, a) => write!(f, "{}({a})", op.function_name().unwrap_or("?")),
            Node::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

/// A parsed, type-checked defining-function expression.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprAst {
    pub root: Node,
    pub n: usize,
}

impl ExprAst {
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.root.collect_params(&mut out);
        out
    }

    pub fn pretty(&self) -> String {
        self.root.to_string()
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}
