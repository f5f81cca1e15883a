//! Scalar expression front-end: parsing, printing, jet evaluation.
//!
//! The grammar (also documented in the README):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" unary)?                    // right-associative
//! atom   := number | ident "(" expr ")" | ident | "(" expr ")"
//! ```
//!
//! `^` binds above `*`/`/` which bind above `+`/`-`; unary minus binds below
//! `^` (so `-x^2` is `-(x^2)`). Whitespace is insignificant. Error offsets
//! are 0-based character positions into the input.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::scalar::Scalar;

/// Built-in single-argument functions. `Log` is the natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
}

impl UnaryFn {
    fn name(self) -> &'static str {
        match self {
            UnaryFn::Sin => "sin",
            UnaryFn::Cos => "cos",
            UnaryFn::Tan => "tan",
            UnaryFn::Exp => "exp",
            UnaryFn::Log => "log",
            UnaryFn::Sqrt => "sqrt",
            UnaryFn::Sinh => "sinh",
            UnaryFn::Cosh => "cosh",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => UnaryFn::Sin,
            "cos" => UnaryFn::Cos,
            "tan" => UnaryFn::Tan,
            "exp" => UnaryFn::Exp,
            "log" => UnaryFn::Log,
            "sqrt" => UnaryFn::Sqrt,
            "sinh" => UnaryFn::Sinh,
            "cosh" => UnaryFn::Cosh,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Parsed scalar expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(String),
    Neg(Box<Expr>),
    Call(UnaryFn, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

// `neg`/`add`/`mul` below are folding constructors, not ring operations, so
// the std operator traits would be misleading here.
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    /// Negation that folds constants, so printed trees re-parse identically.
    pub fn neg(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(-c),
            other => Expr::Neg(Box::new(other)),
        }
    }

    pub fn add(self, rhs: Expr) -> Expr {
        match (&self, &rhs) {
            (Expr::Const(a), _) if *a == 0.0 => rhs,
            (_, Expr::Const(b)) if *b == 0.0 => self,
            _ => Expr::Binary(BinOp::Add, Box::new(self), Box::new(rhs)),
        }
    }

    pub fn mul(self, rhs: Expr) -> Expr {
        match (&self, &rhs) {
            (Expr::Const(a), _) if *a == 0.0 => Expr::Const(0.0),
            (_, Expr::Const(b)) if *b == 0.0 => Expr::Const(0.0),
            (Expr::Const(a), _) if *a == 1.0 => rhs,
            (_, Expr::Const(b)) if *b == 1.0 => self,
            _ => Expr::Binary(BinOp::Mul, Box::new(self), Box::new(rhs)),
        }
    }

    pub fn call(f: UnaryFn, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    /// Set of variable names appearing in the tree.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(name) => {
                out.insert(name.clone());
            }
            Expr::Neg(a) | Expr::Call(_, a) => a.collect_vars(out),
            Expr::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluate with each variable bound to a jet. All jets must share one
    /// order; the result has that order.
    pub fn eval_jet<F: Scalar>(&self, bindings: &Bindings<'_, F>) -> Result<Jet<F>> {
        match self {
            Expr::Const(c) => Ok(Jet::constant(F::lit(*c), bindings.order())),
            Expr::Var(name) => bindings.get(name).cloned().ok_or_else(|| Error::Domain {
                context: name.clone(),
                message: "unbound variable".to_string(),
            }),
            Expr::Neg(a) => Ok(a.eval_jet(bindings)?.neg()),
            Expr::Call(f, a) => {
                let x = a.eval_jet(bindings)?;
                let r = match f {
                    UnaryFn::Sin => Ok(x.sin()),
                    UnaryFn::Cos => Ok(x.cos()),
                    UnaryFn::Tan => x.tan(),
                    UnaryFn::Exp => Ok(x.exp()),
                    UnaryFn::Log => x.ln(),
                    UnaryFn::Sqrt => x.sqrt(),
                    UnaryFn::Sinh => Ok(x.sinh()),
                    UnaryFn::Cosh => Ok(x.cosh()),
                };
                r.map_err(|e| Error::domain(self.to_string(), e.message()))
            }
            Expr::Binary(op, a, b) => {
                let x = a.eval_jet(bindings)?;
                let y = b.eval_jet(bindings)?;
                match op {
                    BinOp::Add => Ok(x.add(&y)),
                    BinOp::Sub => Ok(x.sub(&y)),
                    BinOp::Mul => Ok(x.mul(&y)),
                    BinOp::Div => x
                        .div(&y)
                        .map_err(|e| Error::domain(self.to_string(), e.message())),
                    BinOp::Pow => x
                        .pow(&y)
                        .map_err(|e| Error::domain(self.to_string(), e.message())),
                }
            }
        }
    }

    /// Plain value evaluation (order-0 jets).
    pub fn eval_value<F: Scalar>(&self, vars: &[(String, F)]) -> Result<F> {
        let jets: Vec<(String, Jet<F>)> = vars
            .iter()
            .map(|(n, v)| (n.clone(), Jet::constant(*v, 0)))
            .collect();
        Ok(self.eval_jet(&Bindings::new(&jets))?.value())
    }

    /// Symbolic partial derivative with respect to `var`. No simplification
    /// beyond constant 0/1 folding; used to build Jacobian component trees
    /// that are then themselves jet-evaluated.
    pub fn derivative(&self, var: &str) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var(name) => {
                if name == var {
                    Expr::Const(1.0)
                } else {
                    Expr::Const(0.0)
                }
            }
            Expr::Neg(a) => a.derivative(var).neg(),
            Expr::Call(f, a) => {
                let da = a.derivative(var);
                let outer = match f {
                    UnaryFn::Sin => Expr::call(UnaryFn::Cos, (**a).clone()),
                    UnaryFn::Cos => Expr::call(UnaryFn::Sin, (**a).clone()).neg(),
                    UnaryFn::Tan => {
                        // 1 / cos(a)^2
                        let c = Expr::call(UnaryFn::Cos, (**a).clone());
                        Expr::Binary(
                            BinOp::Div,
                            Box::new(Expr::Const(1.0)),
                            Box::new(Expr::Binary(
                                BinOp::Pow,
                                Box::new(c),
                                Box::new(Expr::Const(2.0)),
                            )),
                        )
                    }
                    UnaryFn::Exp => Expr::call(UnaryFn::Exp, (**a).clone()),
                    UnaryFn::Log => Expr::Binary(
                        BinOp::Div,
                        Box::new(Expr::Const(1.0)),
                        Box::new((**a).clone()),
                    ),
                    UnaryFn::Sqrt => Expr::Binary(
                        BinOp::Div,
                        Box::new(Expr::Const(0.5)),
                        Box::new(Expr::call(UnaryFn::Sqrt, (**a).clone())),
                    ),
                    UnaryFn::Sinh => Expr::call(UnaryFn::Cosh, (**a).clone()),
                    UnaryFn::Cosh => Expr::call(UnaryFn::Sinh, (**a).clone()),
                };
                outer.mul(da)
            }
            Expr::Binary(op, a, b) => {
                let da = a.derivative(var);
                let db = b.derivative(var);
                match op {
                    BinOp::Add => da.add(db),
                    BinOp::Sub => match (&da, &db) {
                        (_, Expr::Const(z)) if *z == 0.0 => da,
                        (Expr::Const(z), _) if *z == 0.0 => db.neg(),
                        _ => Expr::Binary(BinOp::Sub, Box::new(da), Box::new(db)),
                    },
                    BinOp::Mul => da.mul((**b).clone()).add((**a).clone().mul(db)),
                    BinOp::Div => {
                        // (da*b - a*db) / b^2
                        let num = match &db {
                            Expr::Const(z) if *z == 0.0 => da.mul((**b).clone()),
                            _ => Expr::Binary(
                                BinOp::Sub,
                                Box::new(da.mul((**b).clone())),
                                Box::new((**a).clone().mul(db)),
                            ),
                        };
                        Expr::Binary(
                            BinOp::Div,
                            Box::new(num),
                            Box::new(Expr::Binary(
                                BinOp::Pow,
                                Box::new((**b).clone()),
                                Box::new(Expr::Const(2.0)),
                            )),
                        )
                    }
                    BinOp::Pow => match (&**b, &db) {
                        // constant exponent: c * a^(c-1) * da
                        (Expr::Const(c), _) => Expr::Const(*c)
                            .mul(Expr::Binary(
                                BinOp::Pow,
                                Box::new((**a).clone()),
                                Box::new(Expr::Const(c - 1.0)),
                            ))
                            .mul(da),
                        // general: a^b * (db*log(a) + b*da/a)
                        _ => {
                            let left = db.mul(Expr::call(UnaryFn::Log, (**a).clone()));
                            let right = (**b).clone().mul(Expr::Binary(
                                BinOp::Div,
                                Box::new(da),
                                Box::new((**a).clone()),
                            ));
                            Expr::Binary(
                                BinOp::Pow,
                                Box::new((**a).clone()),
                                Box::new((**b).clone()),
                            )
                            .mul(left.add(right))
                        }
                    },
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, _, _) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, _, _) => 2,
            Expr::Neg(_) => 3,
            Expr::Binary(BinOp::Pow, _, _) => 4,
            Expr::Const(c) if *c < 0.0 => 3,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, needs_paren: bool) -> fmt::Result {
            if needs_paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(name) => write!(f, "{name}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                child(f, a, a.precedence() < 3)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Binary(op, a, b) => {
                let (sym, prec) = match op {
                    BinOp::Add => ("+", 1),
                    BinOp::Sub => ("-", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                    BinOp::Pow => ("^", 4),
                };
                if *op == BinOp::Pow {
                    // right-associative
                    child(f, a, a.precedence() <= prec)?;
                    write!(f, "{sym}")?;
                    child(f, b, b.precedence() < prec)
                } else {
                    child(f, a, a.precedence() < prec)?;
                    write!(f, "{sym}")?;
                    child(f, b, b.precedence() <= prec)
                }
            }
        }
    }
}

/// Variable-to-jet bindings for evaluation.
pub struct Bindings<'a, F> {
    entries: &'a [(String, Jet<F>)],
}

impl<'a, F: Scalar> Bindings<'a, F> {
    pub fn new(entries: &'a [(String, Jet<F>)]) -> Self {
        if let Some(first) = entries.first() {
            debug_assert!(
                entries.iter().all(|(_, j)| j.order() == first.1.order()),
                "all bound jets must share one order"
            );
        }
        Bindings { entries }
    }

    fn get(&self, name: &str) -> Option<&Jet<F>> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, j)| j)
    }

    fn order(&self) -> usize {
        self.entries.first().map(|(_, j)| j.order()).unwrap_or(0)
    }
}

/// Parse `text` against the declared variable set.
pub fn parse(text: &str, vars: &BTreeSet<String>) -> Result<Expr> {
    let mut parser = Parser {
        chars: text.char_indices().peekable(),
        text,
        vars,
    };
    parser.skip_ws();
    if parser.chars.peek().is_none() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty expression".to_string(),
        });
    }
    let expr = parser.parse_expr()?;
    parser.skip_ws();
    if let Some(&(pos, c)) = parser.chars.peek() {
        return Err(Error::Syntax {
            offset: pos,
            message: format!("unexpected trailing input starting with '{c}'"),
        });
    }
    Ok(expr)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    vars: &'a BTreeSet<String>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn eof_offset(&self) -> usize {
        self.text.chars().count()
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '+')) => {
                    self.chars.next();
                    let rhs = self.parse_term()?;
                    lhs = Expr::Binary(BinOp::Add, Box::new(lhs), Box::new(rhs));
                }
                Some(&(_, '-')) => {
                    self.chars.next();
                    let rhs = self.parse_term()?;
                    lhs = Expr::Binary(BinOp::Sub, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_unary()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '*')) => {
                    self.chars.next();
                    let rhs = self.parse_unary()?;
                    lhs = Expr::Binary(BinOp::Mul, Box::new(lhs), Box::new(rhs));
                }
                Some(&(_, '/')) => {
                    self.chars.next();
                    let rhs = self.parse_unary()?;
                    lhs = Expr::Binary(BinOp::Div, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        self.skip_ws();
        if let Some(&(_, '-')) = self.chars.peek() {
            self.chars.next();
            let inner = self.parse_unary()?;
            return Ok(inner.neg());
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr> {
        let base = self.parse_atom()?;
        self.skip_ws();
        if let Some(&(_, '^')) = self.chars.peek() {
            self.chars.next();
            let exponent = self.parse_unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let Some(&(start, c)) = self.chars.peek() else {
            return Err(self.err(self.eof_offset(), "expected operand, found end of input"));
        };
        if c == '(' {
            self.chars.next();
            let inner = self.parse_expr()?;
            self.skip_ws();
            match self.chars.next() {
                Some((_, ')')) => Ok(inner),
                Some((pos, other)) => Err(self.err(pos, format!("expected ')', found '{other}'"))),
                None => Err(self.err(self.eof_offset(), "unbalanced parenthesis: expected ')'")),
            }
        } else if c.is_ascii_digit() || c == '.' {
            self.parse_number(start)
        } else if c.is_alphabetic() || c == '_' {
            self.parse_ident(start)
        } else {
            Err(self.err(start, format!("expected operand, found '{c}'")))
        }
    }

    fn parse_number(&mut self, start: usize) -> Result<Expr> {
        let mut seen_exp = false;
        while let Some(&(pos, c)) = self.chars.peek() {
            let take = c.is_ascii_digit()
                || c == '.'
                || (!seen_exp && (c == 'e' || c == 'E') && {
                    // lookahead: exponent must continue with digit or sign
                    let rest = &self.text[pos + c.len_utf8()..];
                    let mut it = rest.chars();
                    match it.next() {
                        Some(d) if d.is_ascii_digit() => true,
                        Some('+') | Some('-') => it.next().is_some_and(|d| d.is_ascii_digit()),
                        _ => false,
                    }
                });
            if !take {
                break;
            }
            if c == 'e' || c == 'E' {
                seen_exp = true;
                self.chars.next();
                if let Some(&(_, s)) = self.chars.peek() {
                    if s == '+' || s == '-' {
                        self.chars.next();
                    }
                }
                continue;
            }
            self.chars.next();
        }
        // recover the consumed span from the original text
        let tail = self
            .chars
            .peek()
            .map(|&(p, _)| p)
            .unwrap_or(self.text.len());
        let token = &self.text[start..tail];
        token
            .parse::<f64>()
            .map(Expr::Const)
            .map_err(|_| self.err(start, format!("malformed number literal `{token}`")))
    }

    fn parse_ident(&mut self, start: usize) -> Result<Expr> {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_alphanumeric() || *c == '_') {
            self.chars.next();
        }
        let tail = self
            .chars
            .peek()
            .map(|&(p, _)| p)
            .unwrap_or(self.text.len());
        let name = &self.text[start..tail];
        self.skip_ws();
        if let Some(&(_, '(')) = self.chars.peek() {
            let func = UnaryFn::from_name(name)
                .ok_or_else(|| self.err(start, format!("unknown function `{name}`")))?;
            self.chars.next(); // consume '('
            let arg = self.parse_expr()?;
            self.skip_ws();
            match self.chars.next() {
                Some((_, ')')) => Ok(Expr::call(func, arg)),
                Some((pos, other)) => Err(self.err(pos, format!("expected ')', found '{other}'"))),
                None => Err(self.err(self.eof_offset(), "unbalanced parenthesis: expected ')'")),
            }
        } else if self.vars.contains(name) {
            Ok(Expr::var(name))
        } else {
            Err(self.err(start, format!("unknown identifier `{name}`")))
        }
    }
}

/// Convenience: a variable set from string slices.
pub fn var_set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn eval_at(e: &Expr, binds: &[(&str, f64)]) -> f64 {
        let v: Vec<(String, f64)> = binds.iter().map(|(n, x)| (n.to_string(), *x)).collect();
        e.eval_value(&v).unwrap()
    }

    #[test]
    fn parses_single_call() {
        let e = parse("cos(u1)", &var_set(&["u1"])).unwrap();
        assert_eq!(e, Expr::call(UnaryFn::Cos, Expr::var("u1")));
    }

    #[test]
    fn parses_arithmetic_with_precedence() {
        let e = parse("2*u1 + u2^2", &var_set(&["u1", "u2"])).unwrap();
        assert_relative_eq!(eval_at(&e, &[("u1", 1.0), ("u2", 3.0)]), 11.0);
    }

    #[test]
    fn power_is_right_associative_and_above_mul() {
        let e = parse("2^3^2", &var_set(&[])).unwrap();
        assert_relative_eq!(eval_at(&e, &[]), 512.0);
        let e = parse("2*3^2", &var_set(&[])).unwrap();
        assert_relative_eq!(eval_at(&e, &[]), 18.0);
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let e = parse("-t^2", &var_set(&["t"])).unwrap();
        assert_relative_eq!(eval_at(&e, &[("t", 3.0)]), -9.0);
        let e = parse("2^-2", &var_set(&[])).unwrap();
        assert_relative_eq!(eval_at(&e, &[]), 0.25);
    }

    #[test]
    fn unbalanced_paren_reports_end_of_input() {
        let err = parse("cos(u1", &var_set(&["u1"])).unwrap_err();
        match err {
            Error::Syntax { offset, .. } => assert_eq!(offset, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier_and_function() {
        assert!(matches!(
            parse("cos(x)", &var_set(&["u1"])),
            Err(Error::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            parse("frob(u1)", &var_set(&["u1"])),
            Err(Error::Syntax { offset: 0, .. })
        ));
    }

    #[test]
    fn empty_operand_errors() {
        assert!(parse("", &var_set(&[])).is_err());
        assert!(parse("1 + ", &var_set(&[])).is_err());
        assert!(parse("1 + * 2", &var_set(&[])).is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse("2 * u1 +   u2 ^ 2", &var_set(&["u1", "u2"])).unwrap();
        let b = parse("2*u1+u2^2", &var_set(&["u1", "u2"])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scientific_literals() {
        let e = parse("1e-3 + 2.5E2", &var_set(&[])).unwrap();
        assert_relative_eq!(eval_at(&e, &[]), 0.001 + 250.0);
    }

    #[test]
    fn print_parse_roundtrip_structural() {
        let vars = var_set(&["t", "u"]);
        for text in [
            "-t^2",
            "t--u",
            "(t+u)*(t-u)",
            "t/u/2",
            "t-(u-1)",
            "2^-t",
            "sin(cos(t))*sqrt(u+2)",
            "-(t+u)",
            "t^(u+1)^2",
            "(t^u)^2",
            "1/(1+t^2)",
        ] {
            let once = parse(text, &vars).unwrap();
            let twice = parse(&once.to_string(), &vars).unwrap();
            assert_eq!(once, twice, "round-trip failed for `{text}` -> `{once}`");
        }
    }

    #[test]
    fn jet_eval_sine_seed() {
        let e = parse("sin(t)", &var_set(&["t"])).unwrap();
        let binds = vec![("t".to_string(), Jet::<f64>::variable(0.0, 3))];
        let j = e.eval_jet(&Bindings::new(&binds)).unwrap();
        assert_eq!(
            (j.derivative(0), j.derivative(1), j.derivative(2)),
            (0.0, 1.0, 0.0)
        );
        assert_relative_eq!(j.derivative(3), -1.0);
    }

    #[test]
    fn domain_error_carries_subexpression() {
        let e = parse("1/(t-1) + sqrt(t-4)", &var_set(&["t"])).unwrap();
        let binds = vec![("t".to_string(), Jet::<f64>::variable(2.0, 1))];
        let err = e.eval_jet(&Bindings::new(&binds)).unwrap_err();
        match err {
            Error::Domain { context, .. } => assert!(context.contains("sqrt("), "{context}"),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn symbolic_derivative_matches_jet() {
        let vars = var_set(&["t"]);
        for text in [
            "t^3 - 2*t + 1",
            "sin(t)*exp(t/2)",
            "sqrt(t+2)/cosh(t)",
            "log(t+3)^2",
            "tan(t/4)",
        ] {
            let e = parse(text, &vars).unwrap();
            let de = e.derivative("t");
            for &t0 in &[0.1, 0.9, 2.3] {
                let binds = vec![("t".to_string(), Jet::<f64>::variable(t0, 1))];
                let jet = e.eval_jet(&Bindings::new(&binds)).unwrap();
                let sym = eval_at(&de, &[("t", t0)]);
                assert_relative_eq!(jet.derivative(1), sym, max_relative = 1e-12);
            }
        }
    }
}
