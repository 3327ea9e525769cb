//! Tokenizer and recursive-descent parser for defining-function expressions.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" unary ] ;
//! atom    = number | "i" | "pi" | "e" | var | param
//!         | func "(" expr ")" | "(" expr ")" ;
//! var     = "z" digit { digit } ;
//! param   = "$" ident ;
//! func    = "Re" | "Im" | "abs" | "abs2" | "exp" | "log" | "sqrt" | "conj" ;
//! ```

use super::ast::{BinaryOp, ExprAst, NamedConst, Node, UnaryOp};
use super::types::check_real_root;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Param(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Param(s) => format!("`${s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(position: usize, expected: &[&str], found: String) -> ParseError {
    ParseError::Syntax {
        position,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            // exponent only when followed by digits (so `2*e` stays a constant)
            if i < chars.len() && (chars[i].1 == 'e' || chars[i].1 == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j].1 == '+' || chars[j].1 == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].1.is_ascii_digit() {
                    while j < chars.len() && chars[j].1.is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let end = if i < chars.len() { chars[i].0 } else { text.len() };
            let lit = &text[chars[start].0..end];
            let v: f64 = lit
                .parse()
                .map_err(|_| syntax(pos, &["number"], format!("`{lit}`")))?;
            out.push((pos, Tok::Num(v)));
            continue;
        }
        if c == '$' || c.is_alphabetic() || c == '_' {
            let start = if c == '$' { i + 1 } else { i };
            let mut j = start;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            if j == start {
                return Err(syntax(pos, &["parameter name"], "`$`".into()));
            }
            let end = if j < chars.len() { chars[j].0 } else { text.len() };
            let name = text[chars[start].0..end].to_string();
            out.push((pos, if c == '$' { Tok::Param(name) } else { Tok::Ident(name) }));
            i = j;
            continue;
        }
        return Err(syntax(pos, &["expression"], format!("`{c}`")));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), &[label], self.peek().describe()))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Node::unary(UnaryOp::Neg, self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.unary()?;
            return Ok(Node::binary(BinaryOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(x) => Ok(Node::Real(x)),
            Tok::Param(p) => Ok(Node::Param(p)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(op) = UnaryOp::from_function_name(&name) {
                    self.expect(Tok::LParen, "`(`")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Node::unary(op, arg));
                }
                match name.as_str() {
                    "i" => return Ok(Node::Imag),
                    "pi" => return Ok(Node::Const(NamedConst::Pi)),
                    "e" => return Ok(Node::Const(NamedConst::E)),
                    _ => {}
                }
                if let Some(digits) = name.strip_prefix('z') {
                    if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                        let j: usize = digits.parse().map_err(|_| {
                            syntax(pos, &["variable"], format!("`{name}`"))
                        })?;
                        if j == 0 || j > self.n {
                            return Err(ParseError::Dimension { index: j, n: self.n });
                        }
                        return Ok(Node::Var(j));
                    }
                }
                Err(syntax(
                    pos,
                    &["variable z1..zn", "constant", "function"],
                    format!("`{name}`"),
                ))
            }
            other => Err(syntax(
                pos,
                &["number", "variable", "function", "`(`", "`-`"],
                other.describe(),
            )),
        }
    }
}

/// Parse without the realness check on the root.
pub fn parse_any(text: &str, n: usize) -> Result<Node, ParseError> {
    if n < 2 {
        return Err(ParseError::BadDimension(n));
    }
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, n };
    let root = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.pos(),
            &["operator", "end of input"],
            p.peek().describe(),
        ));
    }
    Ok(root)
}

/// Parse a real-valued defining function in the variables z1..zn.
pub fn parse(text: &str, n: usize) -> Result<ExprAst, ParseError> {
    let root = parse_any(text, n)?;
    check_real_root(&root)?;
    Ok(ExprAst { root, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_plus_structure() {
        let ast = parse("Re(z1) + abs2(z2)", 2).unwrap();
        assert_eq!(
            ast.root,
            Node::binary(
                BinaryOp::Add,
                Node::unary(UnaryOp::Re, Node::Var(1)),
                Node::unary(UnaryOp::Abs2, Node::Var(2))
            )
        );
    }

    #[test]
    fn flat_exponential_parses() {
        assert!(parse("Re(z1) + exp(-1/abs2(z2))", 2).is_ok());
    }

    #[test]
    fn complex_root_rejected() {
        assert!(matches!(parse("z1 + z2", 2), Err(ParseError::Realness(_))));
    }

    #[test]
    fn variable_beyond_dimension() {
        assert_eq!(
            parse("abs2(z3)", 2),
            Err(ParseError::Dimension { index: 3, n: 2 })
        );
    }

    #[test]
    fn juxtaposition_is_a_syntax_error() {
        match parse("2 abs2(z1)", 2) {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unclosed_paren_reports_position() {
        match parse("Re(z1", 2) {
            Err(ParseError::Syntax { position, expected, .. }) => {
                assert_eq!(position, 5);
                assert_eq!(expected, vec!["`)`".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn power_binds_tighter_than_negation() {
        let ast = parse_any("-z1^2", 2).unwrap();
        assert!(matches!(ast, Node::Unary(UnaryOp::Neg, _)));
    }

    #[test]
    fn scientific_literals_and_e_constant() {
        let a = parse_any("1e-7 * e", 2).unwrap();
        assert_eq!(
            a,
            Node::binary(BinaryOp::Mul, Node::Real(1e-7), Node::Const(NamedConst::E))
        );
    }

    #[test]
    fn pretty_print_reparses() {
        let src = "Re(z1) + abs2(z2^2 - z3^3) - $kappa * exp(-1/abs2(z2)) + abs2(z1)^1.5";
        let ast = parse(src, 3).unwrap();
        let again = parse(&ast.pretty(), 3).unwrap();
        assert_eq!(ast, again);
    }
}
