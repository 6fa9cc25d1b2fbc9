//! Arithmetic expressions in `x` and `y`.
//!
//! ```text
//! Expr   := Term (('+' | '-') Term)*
//! Term   := Factor (('*' | '/') Factor)*
//! Factor := Unary ('^' Factor)?
//! Unary  := '-'? Atom
//! Atom   := number | 'x' | 'y' | 'abs(' Expr ')'
//!         | 'min(' Expr ',' Expr ')' | 'max(' Expr ',' Expr ')' | '(' Expr ')'
//! ```
//!
//! The unary minus applies to an atom only, so `-x^2` reads as `(-x)^2`.
//! Exponents must be constant integers.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    /// Byte offset into the source.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero at x = {x}, y = {y}")]
    DivisionByZero { x: f64, y: f64 },
    #[error("non-finite result {value} at x = {x}, y = {y}")]
    NonFinite { x: f64, y: f64, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Abs(Box<Expr>),
    Call(Func, Box<Expr>, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, EvalError> {
        let v = self.eval_raw(x, y)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { x, y, value: v })
        }
    }

    fn eval_raw(&self, x: f64, y: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var(Var::X) => x,
            Expr::Var(Var::Y) => y,
            Expr::Neg(e) => -e.eval_raw(x, y)?,
            Expr::Abs(e) => e.eval_raw(x, y)?.abs(),
            Expr::Call(f, a, b) => {
                let (a, b) = (a.eval_raw(x, y)?, b.eval_raw(x, y)?);
                match f {
                    Func::Min => a.min(b),
                    Func::Max => a.max(b),
                }
            }
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval_raw(x, y)?, b.eval_raw(x, y)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b == 0.0 => return Err(EvalError::DivisionByZero { x, y }),
                    BinOp::Div => a / b,
                }
            }
            Expr::Pow(base, n) => {
                let b = base.eval_raw(x, y)?;
                if b == 0.0 && *n < 0 {
                    return Err(EvalError::DivisionByZero { x, y });
                }
                b.powi(*n)
            }
        })
    }

    pub fn uses(&self, var: Var) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(v) => *v == var,
            Expr::Neg(e) | Expr::Abs(e) | Expr::Pow(e, _) => e.uses(var),
            Expr::Call(_, a, b) | Expr::Bin(_, a, b) => a.uses(var) || b.uses(var),
        }
    }
}

/// Fully parenthesised; reparses to an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var(Var::X) => f.write_str("x"),
            Expr::Var(Var::Y) => f.write_str("y"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Abs(e) => write!(f, "abs({e})"),
            Expr::Call(Func::Min, a, b) => write!(f, "min({a}, {b})"),
            Expr::Call(Func::Max, a, b) => write!(f, "max({a}, {b})"),
            Expr::Bin(op, a, b) => {
                let sym = match op {
                    BinOp::Add => '+',
                    BinOp::Sub => '-',
                    BinOp::Mul => '*',
                    BinOp::Div => '/',
                };
                write!(f, "({a} {sym} {b})")
            }
            Expr::Pow(e, n) => write!(f, "({e}^{n})"),
        }
    }
}

pub fn parse_expression(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error(format!("unexpected '{}'", p.peek_char().unwrap_or(' '))));
    }
    Ok(e)
}

/// Nesting limit for parentheses, calls and exponent chains.
pub const MAX_DEPTH: usize = 128;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_char()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => Err(self.error(format!("expected '{c}', found '{found}'"))),
                None => Err(self.error(format!("expected '{c}', found end of input"))),
            }
        }
    }

    fn nested<T>(&mut self, inner: impl FnOnce(&mut Self) -> Result<T, ParseError>) -> Result<T, ParseError> {
        if self.depth >= MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        self.depth += 1;
        let out = inner(self);
        self.depth -= 1;
        out
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.nested(Self::sum)
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some('+') => BinOp::Add,
                Some('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some('*') => BinOp::Mul,
                Some('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.unary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let exponent = self.nested(Self::factor)?;
        let n = constant_integer(&exponent)
            .ok_or(ParseError { position: at, message: "exponent must be a constant integer".into() })?;
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.atom()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.identifier(),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                end = k;
            }
        }
        let text = &self.src[start..end];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos = end;
                Ok(Expr::Num(v))
            }
            _ => Err(self.error(format!("malformed number '{text}'"))),
        }
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        let name = &rest[..len];
        self.pos += len;
        match name {
            "x" => Ok(Expr::Var(Var::X)),
            "y" => Ok(Expr::Var(Var::Y)),
            "abs" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Abs(Box::new(e)))
            }
            "min" | "max" => {
                let func = if name == "min" { Func::Min } else { Func::Max };
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Call(func, Box::new(a), Box::new(b)))
            }
            _ => Err(ParseError { position: start, message: format!("unknown identifier '{name}'") }),
        }
    }
}

fn constant_integer(e: &Expr) -> Option<i32> {
    if e.uses(Var::X) || e.uses(Var::Y) {
        return None;
    }
    let v = e.eval(0.0, 0.0).ok()?;
    (v.fract() == 0.0 && v.abs() <= 1024.0).then_some(v as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, x: f64, y: f64) -> f64 {
        parse_expression(src).unwrap().eval(x, y).unwrap()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(eval("0.5*x^2", 2.0, 0.0), 2.0);
        assert_eq!(eval("x*(y-x)", 1.0, 3.0), 2.0);
        assert_eq!(eval("-abs(y-x)", 0.0, 1.0), -1.0);
    }

    #[test]
    fn precedence() {
        assert_eq!(eval("1+2*3", 0.0, 0.0), 7.0);
        assert_eq!(eval("2^3^2", 0.0, 0.0), 512.0);
        assert_eq!(eval("-x^2", 3.0, 0.0), 9.0);
        assert_eq!(eval("0-x^2", 3.0, 0.0), -9.0);
        assert_eq!(eval("8/4/2", 0.0, 0.0), 1.0);
        assert_eq!(eval("min(x, y) + max(x, y)", 1.0, 5.0), 6.0);
        assert_eq!(eval("x^-1", 4.0, 0.0), 0.25);
        assert_eq!(eval("1.5e1", 0.0, 0.0), 15.0);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expression("x + z").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.message.contains("unknown identifier 'z'"));
        let e = parse_expression("x^y").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_expression("x^0.5").is_err());
        assert_eq!(parse_expression("(x").unwrap_err().position, 2);
        assert_eq!(parse_expression("x )").unwrap_err().position, 2);
        assert!(parse_expression("").is_err());
        assert!(parse_expression("min(x)").is_err());
        assert!(parse_expression("--x").is_err());
        let deep = format!("{}x{}", "(".repeat(500), ")".repeat(500));
        assert!(parse_expression(&deep).unwrap_err().message.contains("too deeply"));
        assert!(parse_expression(&"2^".repeat(500)).is_err());
    }

    #[test]
    fn evaluation_errors() {
        let e = parse_expression("1/(y-x)").unwrap();
        assert_eq!(e.eval(1.0, 1.0), Err(EvalError::DivisionByZero { x: 1.0, y: 1.0 }));
        let e = parse_expression("x^-2").unwrap();
        assert!(e.eval(0.0, 0.0).is_err());
        let e = parse_expression("1e300*x*x").unwrap();
        assert!(matches!(e.eval(1e300, 0.0), Err(EvalError::NonFinite { .. })));
    }

    #[test]
    fn display_reparses() {
        for src in ["-x^2", "x*(y-x)", "abs(x)-min(1, -y)/3", "2^-3", "1e-7*x"] {
            let e = parse_expression(src).unwrap();
            assert_eq!(parse_expression(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }

    #[test]
    fn variable_usage() {
        let e = parse_expression("0.5*x^2").unwrap();
        assert!(e.uses(Var::X) && !e.uses(Var::Y));
    }
}
