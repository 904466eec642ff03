//! Text grammar for polynomials: integers, identifiers, `+ - * ^` and
//! parentheses. `*` may be omitted between factors.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;

use super::variable::parse_lazard_name;
use super::{CoefficientPoly, SymbolicError, Variable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

pub(crate) fn tokenize(s: &str) -> Result<Vec<(usize, Token)>, SymbolicError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = BigInt::from_str(&s[start..i]).expect("digits");
            out.push((start, Token::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(s[start..i].to_string())));
        } else if "+-*^(),".contains(c) {
            out.push((i, Token::Sym(c)));
            i += 1;
        } else {
            return Err(SymbolicError::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

/// Names known to the parser. Lazard generators (`a12`, `a21`, `a1_10`) and
/// `b` resolve without declaration; geometric variables must be declared.
#[derive(Clone, Debug, Default)]
pub struct VarContext {
    vars: BTreeMap<String, Variable>,
}

impl VarContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, degree: i32) -> Self {
        self.declare(Variable::new(name, degree));
        self
    }

    pub fn declare(&mut self, v: Variable) {
        self.vars.insert(v.name().to_string(), v);
    }

    pub fn resolve(&self, name: &str) -> Option<Variable> {
        if let Some(v) = self.vars.get(name) {
            return Some(v.clone());
        }
        if name == "b" {
            return Some(Variable::beta());
        }
        parse_lazard_name(name).map(|(i, j)| Variable::lazard(i, j))
    }

    /// Reads a juxtaposed run such as `a11u` as the product `a11*u`,
    /// preferring the longest known name at each step.
    pub fn resolve_product(&self, name: &str) -> Option<Vec<Variable>> {
        if name.is_empty() {
            return Some(Vec::new());
        }
        for cut in (1..=name.len()).rev() {
            if !name.is_char_boundary(cut) {
                continue;
            }
            let head = &name[..cut];
            let known = self.vars.contains_key(head)
                || head == "b"
                || (head.len() == 3 && parse_lazard_name(head).is_some());
            if known {
                if let Some(mut rest) = self.resolve_product(&name[cut..]) {
                    let mut out = vec![self.resolve(head)?];
                    out.append(&mut rest);
                    return Some(out);
                }
            }
        }
        None
    }
}

pub(crate) struct Cursor<'a> {
    pub toks: &'a [(usize, Token)],
    pub pos: usize,
    pub len: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [(usize, Token)], len: usize) -> Self {
        Cursor { toks, pos: 0, len }
    }

    pub fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    pub fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> SymbolicError {
        SymbolicError::Parse {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), SymbolicError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn exponent(&mut self) -> Result<u32, SymbolicError> {
        match self.bump() {
            Some(Token::Int(n)) => u32::try_from(&n).map_err(|_| self.error("exponent too large")),
            _ => {
                self.pos -= 1;
                Err(self.error("expected a nonnegative integer exponent"))
            }
        }
    }

    /// True if the next token can start a factor (for implicit products).
    pub fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::Sym('('))
        )
    }
}

/// Parses a polynomial, resolving names in `ctx`.
pub fn parse_poly(s: &str, ctx: &VarContext) -> Result<CoefficientPoly, SymbolicError> {
    let toks = tokenize(s)?;
    let mut cur = Cursor::new(&toks, s.len());
    let p = sum(&mut cur, ctx)?;
    if cur.peek().is_some() {
        return Err(cur.error("trailing input"));
    }
    Ok(p)
}

fn sum(cur: &mut Cursor, ctx: &VarContext) -> Result<CoefficientPoly, SymbolicError> {
    let mut acc = if cur.eat('-') {
        -product(cur, ctx)?
    } else {
        product(cur, ctx)?
    };
    loop {
        if cur.eat('+') {
            acc += &product(cur, ctx)?;
        } else if cur.eat('-') {
            acc -= &product(cur, ctx)?;
        } else {
            return Ok(acc);
        }
    }
}

fn product(cur: &mut Cursor, ctx: &VarContext) -> Result<CoefficientPoly, SymbolicError> {
    let mut acc = power(cur, ctx)?;
    loop {
        if cur.eat('*') || cur.starts_factor() {
            acc = &acc * &power(cur, ctx)?;
        } else {
            return Ok(acc);
        }
    }
}

fn power(cur: &mut Cursor, ctx: &VarContext) -> Result<CoefficientPoly, SymbolicError> {
    // an exponent binds to the last name of a juxtaposed run only
    let (prefix, base) = atom(cur, ctx)?;
    if cur.eat('^') {
        let e = cur.exponent()?;
        Ok(&prefix * &base.pow(e))
    } else {
        Ok(&prefix * &base)
    }
}

fn atom(
    cur: &mut Cursor,
    ctx: &VarContext,
) -> Result<(CoefficientPoly, CoefficientPoly), SymbolicError> {
    let one = CoefficientPoly::one();
    let at = cur.offset();
    match cur.bump() {
        Some(Token::Int(n)) => Ok((one, CoefficientPoly::constant(n))),
        Some(Token::Ident(name)) => {
            if let Some(v) = ctx.resolve(&name) {
                return Ok((one, CoefficientPoly::var(v)));
            }
            match ctx.resolve_product(&name) {
                Some(mut vs) => {
                    let last = CoefficientPoly::var(vs.pop().expect("nonempty run"));
                    let prefix = vs
                        .into_iter()
                        .fold(one, |acc, v| &acc * &CoefficientPoly::var(v));
                    Ok((prefix, last))
                }
                None => Err(SymbolicError::UnknownName { pos: at, name }),
            }
        }
        Some(Token::Sym('(')) => {
            let p = sum(cur, ctx)?;
            cur.expect(')')?;
            Ok((one, p))
        }
        Some(Token::Sym('-')) => Ok((one, -power(cur, ctx)?)),
        _ => {
            cur.pos = cur.pos.saturating_sub(1);
            Err(cur.error("expected a number, name or '('"))
        }
    }
}
