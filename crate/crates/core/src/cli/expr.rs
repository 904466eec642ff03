use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{AlgebraError, Element, GradedFreeAlgebra};
use crate::fgl::{f_add, formal_inverse, n_series, FglError};
use crate::symbolic::{tokenize, CoefficientPoly, Cursor, SymbolicError, Token, VarContext};

/// Expressions over the named classes of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Int(BigInt),
    Name(String),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Neg(Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, u32),
    /// `fadd(x, y)`, the formal sum.
    Fadd(Box<Expression>, Box<Expression>),
    /// `chi(x)`, the formal inverse.
    Chi(Box<Expression>),
    /// `nser(n, x)`, the n-series.
    Nser(i64, Box<Expression>),
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fgl(#[from] FglError),
}

impl Expression {
    pub fn parse(s: &str) -> Result<Self, SymbolicError> {
        let toks = tokenize(s)?;
        let mut cur = Cursor::new(&toks, s.len());
        let e = sum(&mut cur)?;
        if cur.peek().is_some() {
            return Err(cur.error("trailing input"));
        }
        Ok(e)
    }

    /// Evaluates in `alg`; names are named classes, Lazard generators or
    /// `b`.
    pub fn eval(&self, alg: &GradedFreeAlgebra) -> Result<Element, EvalError> {
        use Expression::*;
        let law = alg.law();
        Ok(match self {
            Int(n) => alg.scalar(CoefficientPoly::constant(n.clone())),
            Name(name) => match alg.named(name) {
                Some(e) => e.clone(),
                None => match VarContext::new().resolve(name) {
                    Some(v) => alg.scalar(CoefficientPoly::var(v)),
                    None => return Err(EvalError::UnknownName(name.clone())),
                },
            },
            Add(a, b) => &a.eval(alg)? + &b.eval(alg)?,
            Sub(a, b) => &a.eval(alg)? - &b.eval(alg)?,
            Neg(a) => -&a.eval(alg)?,
            Mul(a, b) => alg.mul(&a.eval(alg)?, &b.eval(alg)?),
            Pow(a, e) => alg.pow(&a.eval(alg)?, *e),
            Fadd(a, b) => f_add(alg, law, &a.eval(alg)?, &b.eval(alg)?),
            Chi(a) => formal_inverse(alg, law, &a.eval(alg)?),
            Nser(n, a) => n_series(alg, law, *n, &a.eval(alg)?)?,
        })
    }

    // binding strength: sums 1, products 2, negation 3, powers 4, atoms 5
    fn level(&self) -> u8 {
        match self {
            Expression::Add(..) | Expression::Sub(..) => 1,
            Expression::Mul(..) => 2,
            Expression::Neg(_) => 3,
            Expression::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        use Expression::*;
        match self {
            Int(n) => write!(f, "{n}"),
            Name(s) => write!(f, "{s}"),
            Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
            Fadd(a, b) => write!(f, "fadd({a}, {b})"),
            Chi(a) => write!(f, "chi({a})"),
            Nser(n, a) => write!(f, "nser({n}, {a})"),
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

fn sum(cur: &mut Cursor) -> Result<Expression, SymbolicError> {
    let mut acc = product(cur)?;
    loop {
        if cur.eat('+') {
            acc = Expression::Add(Box::new(acc), Box::new(product(cur)?));
        } else if cur.eat('-') {
            acc = Expression::Sub(Box::new(acc), Box::new(product(cur)?));
        } else {
            return Ok(acc);
        }
    }
}

fn product(cur: &mut Cursor) -> Result<Expression, SymbolicError> {
    let mut acc = unary(cur)?;
    loop {
        if cur.eat('*') || cur.starts_factor() {
            acc = Expression::Mul(Box::new(acc), Box::new(unary(cur)?));
        } else {
            return Ok(acc);
        }
    }
}

fn unary(cur: &mut Cursor) -> Result<Expression, SymbolicError> {
    if cur.eat('-') {
        return Ok(Expression::Neg(Box::new(unary(cur)?)));
    }
    let base = atom(cur)?;
    if cur.eat('^') {
        Ok(Expression::Pow(Box::new(base), cur.exponent()?))
    } else {
        Ok(base)
    }
}

fn integer(cur: &mut Cursor) -> Result<i64, SymbolicError> {
    let neg = cur.eat('-');
    match cur.bump() {
        Some(Token::Int(n)) => {
            let n = i64::try_from(&n).map_err(|_| cur.error("integer too large"))?;
            Ok(if neg { -n } else { n })
        }
        _ => {
            cur.pos -= 1;
            Err(cur.error("expected an integer"))
        }
    }
}

fn atom(cur: &mut Cursor) -> Result<Expression, SymbolicError> {
    match cur.bump() {
        Some(Token::Int(n)) => Ok(Expression::Int(n)),
        Some(Token::Ident(name)) => {
            if !cur.eat('(') {
                return Ok(Expression::Name(name));
            }
            let e = match name.as_str() {
                "fadd" => {
                    let a = sum(cur)?;
                    cur.expect(',')?;
                    Expression::Fadd(Box::new(a), Box::new(sum(cur)?))
                }
                "chi" => Expression::Chi(Box::new(sum(cur)?)),
                "nser" => {
                    let n = integer(cur)?;
                    cur.expect(',')?;
                    Expression::Nser(n, Box::new(sum(cur)?))
                }
                _ => return Err(cur.error(format!("unknown function '{name}'"))),
            };
            cur.expect(')')?;
            Ok(e)
        }
        Some(Token::Sym('(')) => {
            let e = sum(cur)?;
            cur.expect(')')?;
            Ok(e)
        }
        _ => {
            cur.pos = cur.pos.saturating_sub(1);
            Err(cur.error("expected a number, name, call or '('"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_and_reparses() {
        for s in [
            "fadd(nser(4, alpha), chi(nser(2, e)))^2*alpha",
            "a - (b - c)",
            "-x^2 + 3*(y + z)",
            "(-x)^2",
            "nser(-3, h)*h",
        ] {
            let e = Expression::parse(s).unwrap();
            assert_eq!(Expression::parse(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn rejects_unknown_functions() {
        assert!(Expression::parse("foo(x)").is_err());
        assert!(Expression::parse("nser(x, y)").is_err());
    }
}
