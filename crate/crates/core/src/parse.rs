//! Text syntax for sequences (in `n`) and values/prototypes (in `w`).
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' exponent)?
//! atom   := number | 'n' | 'w' | 'ω' | func '(' expr ')' | '(' expr ')'
//!         | 'exp^w(w)' | 'ln^w(w)'
//! exponent := ['-'] number | '(' ['-'] number ['/' number] ')'
//! ```

use num_traits::{One, Signed, Zero};

use crate::engine;
use crate::error::{InputError, ParseError, ProtoError};
use crate::expr::SeqExpr;
use crate::innumber::InNumber;
use crate::limit::Term;
use crate::prototype::{Prototype, TowerDirection};
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
}

/// Syntax tree shared by both contexts.
#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Num(Scalar),
    /// `'n'` or `'w'` at a byte offset.
    Var(char, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Scalar),
    Call(Func, Box<Ast>),
    Tower(TowerDirection, usize),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
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
            return Ok(());
        }
        Err(match self.peek() {
            None => syntax(self.pos, format!("unexpected end of input, expected '{c}'")),
            Some(found) => syntax(self.pos, format!("expected '{c}', found '{found}'")),
        })
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Scalar, ParseError> {
        if self.eat('(') {
            let negative = self.eat('-');
            let mut v = self.number()?;
            if self.eat('/') {
                let at = self.pos;
                let d = self.number()?;
                if d.is_zero() {
                    return Err(syntax(at, "zero denominator in exponent"));
                }
                v /= d;
            }
            self.expect(')')?;
            return Ok(if negative { -v } else { v });
        }
        let negative = self.eat('-');
        let v = self.number()?;
        Ok(if negative { -v } else { v })
    }

    fn number(&mut self) -> Result<Scalar, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end == start {
            return Err(match self.rest().chars().next() {
                None => syntax(start, "unexpected end of input, expected a number"),
                Some(c) => syntax(start, format!("expected a number, found '{c}'")),
            });
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
        self.pos = end;
        scalar::parse_decimal(&self.src[start..end]).ok_or_else(|| syntax(start, format!("malformed number '{}'", &self.src[start..end])))
    }

    fn ident(&mut self) -> &'a str {
        let rest = self.rest();
        let len = rest.char_indices().find(|(_, c)| !c.is_alphabetic()).map_or(rest.len(), |(i, _)| i);
        self.pos += len;
        &rest[..len]
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let start = match self.peek() {
            None => return Err(syntax(self.pos, "unexpected end of input")),
            Some(c) if c.is_ascii_digit() || c == '.' => return Ok(Ast::Num(self.number()?)),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                return Ok(e);
            }
            Some(_) => self.pos,
        };
        let name = self.ident();
        match name {
            "n" => Ok(Ast::Var('n', start)),
            "w" | "ω" => Ok(Ast::Var('w', start)),
            "exp" | "ln" => {
                let save = self.pos;
                if self.eat('^') {
                    let at = self.pos;
                    let marker = self.ident();
                    if marker == "w" || marker == "ω" {
                        self.expect('(')?;
                        self.skip_ws();
                        let inner_at = self.pos;
                        let inner = self.ident();
                        if inner != "w" && inner != "ω" {
                            return Err(syntax(inner_at, "the cardinal-jump atom takes only 'w' as argument"));
                        }
                        self.expect(')')?;
                        let dir = if name == "exp" { TowerDirection::Exp } else { TowerDirection::Log };
                        return Ok(Ast::Tower(dir, start));
                    }
                    if marker.is_empty() {
                        self.pos = save;
                    } else {
                        return Err(syntax(at, format!("unexpected '{marker}' after '{name}^'")));
                    }
                }
                let f = if name == "exp" { Func::Exp } else { Func::Ln };
                self.call(f)
            }
            "sin" => self.call(Func::Sin),
            "cos" => self.call(Func::Cos),
            "" => {
                let c = self.rest().chars().next().expect("peeked");
                Err(syntax(start, format!("unexpected '{c}'")))
            }
            other => Err(syntax(start, format!("unknown identifier '{other}'"))),
        }
    }

    fn call(&mut self, f: Func) -> Result<Ast, ParseError> {
        self.expect('(')?;
        let arg = self.expr()?;
        self.expect(')')?;
        Ok(Ast::Call(f, Box::new(arg)))
    }
}

/// Parses without deciding the context.
pub fn parse_ast(src: &str) -> Result<Ast, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let ast = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(syntax(p.pos, format!("unexpected '{c}'")));
    }
    Ok(ast)
}

impl Ast {
    /// First variable occurrence, if any.
    pub fn first_var(&self) -> Option<(char, usize)> {
        match self {
            Ast::Num(_) => None,
            Ast::Var(c, pos) => Some((*c, *pos)),
            Ast::Tower(_, pos) => Some(('w', *pos)),
            Ast::Neg(a) | Ast::Pow(a, _) | Ast::Call(_, a) => a.first_var(),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => a.first_var().or_else(|| b.first_var()),
        }
    }

    fn find_var(&self, wanted: char) -> Option<usize> {
        match self {
            Ast::Num(_) => None,
            Ast::Var(c, pos) => (*c == wanted).then_some(*pos),
            Ast::Tower(_, pos) => (wanted == 'w').then_some(*pos),
            Ast::Neg(a) | Ast::Pow(a, _) | Ast::Call(_, a) => a.find_var(wanted),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => a.find_var(wanted).or_else(|| b.find_var(wanted)),
        }
    }

    /// The sequence with `w` read as `n`; fails on cardinal-jump atoms.
    fn to_seq_lenient(&self) -> Result<SeqExpr, InputError> {
        let go = |a: &Ast| a.to_seq_lenient();
        Ok(match self {
            Ast::Num(c) => SeqExpr::Const(c.clone()),
            Ast::Var(..) => SeqExpr::IndexN,
            Ast::Neg(a) => SeqExpr::c(-1).mul(go(a)?),
            Ast::Add(a, b) => go(a)?.add(go(b)?),
            Ast::Sub(a, b) => go(a)?.sub(go(b)?),
            Ast::Mul(a, b) => go(a)?.mul(go(b)?),
            Ast::Div(a, b) => go(a)?.div(go(b)?),
            Ast::Pow(a, e) => go(a)?.pow(e.clone()),
            Ast::Call(f, a) => {
                let x = go(a)?;
                match f {
                    Func::Exp => x.exp(),
                    Func::Ln => x.ln(),
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                }
            }
            Ast::Tower(..) => return Err(ProtoError::TowerArithmetic("cardinal-jump atoms have no expansion").into()),
        })
    }
}

/// A sequence expression in `n`.
pub fn parse_seq(src: &str) -> Result<SeqExpr, InputError> {
    let ast = parse_ast(src)?;
    if let Some(pos) = ast.find_var('w') {
        return Err(ParseError::Context { pos, symbol: 'w', context: "sequence" }.into());
    }
    ast.to_seq_lenient()
}

/// A value in `w`: either a number of the field or a cardinal-jump class.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Number(InNumber),
    Class(Prototype),
}

impl Value {
    /// The prototype when the value is a single term with coefficient one.
    pub fn as_prototype(&self) -> Option<Prototype> {
        match self {
            Value::Class(p) => Some(p.clone()),
            Value::Number(x) if x.is_limit() && x.num().len() == 1 => {
                let t = x.leading_term().expect("one term");
                t.coeff.is_one().then_some(t.proto)
            }
            Value::Number(_) => None,
        }
    }
}

fn single_term(x: &InNumber) -> Option<Term> {
    (x.is_limit() && x.num().len() == 1).then(|| x.leading_term().expect("one term"))
}

fn real_fn(c: &Scalar, f: fn(f64) -> f64) -> Option<Scalar> {
    scalar::approx_f64(f(scalar::to_f64(c)))
}

struct ValueEval {
    depth: usize,
}

impl ValueEval {
    fn fallback(&self, ast: &Ast) -> Result<Value, InputError> {
        Ok(Value::Number(engine::limit_of(&ast.to_seq_lenient()?, self.depth)?))
    }

    fn number(&self, ast: &Ast) -> Result<InNumber, InputError> {
        match self.eval(ast)? {
            Value::Number(x) => Ok(x),
            Value::Class(_) => Err(ProtoError::TowerArithmetic("cardinal-jump atoms only support products and powers").into()),
        }
    }

    fn class_operand(v: Value) -> Result<Prototype, InputError> {
        let shown = match &v {
            Value::Number(x) => x.to_string(),
            Value::Class(p) => p.to_string(),
        };
        v.as_prototype().ok_or(InputError::NotAPrototype(shown))
    }

    fn eval(&self, ast: &Ast) -> Result<Value, InputError> {
        use Value::*;
        Ok(match ast {
            Ast::Num(c) => Number(InNumber::constant(c.clone())),
            Ast::Var(..) => Number(InNumber::from(Prototype::omega())),
            Ast::Tower(dir, _) => Class(Prototype::tower(*dir)),
            Ast::Neg(a) => Number(self.number(a)?.neg()),
            Ast::Add(a, b) => Number(self.number(a)?.add(&self.number(b)?)),
            Ast::Sub(a, b) => Number(self.number(a)?.sub(&self.number(b)?)),
            Ast::Mul(a, b) | Ast::Div(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let div = matches!(ast, Ast::Div(..));
                match (x, y) {
                    (Number(x), Number(y)) => Number(if div { x.div(&y)? } else { x.mul(&y) }),
                    (x, y) => {
                        let (p, q) = (Self::class_operand(x)?, Self::class_operand(y)?);
                        Class(if div { p.div(&q)? } else { p.mul(&q)? })
                    }
                }
            }
            Ast::Pow(a, e) => match self.eval(a)? {
                Class(p) => Class(p.pow(e)?),
                Number(x) => {
                    if e.is_integer() {
                        let k: i64 = e.numer().try_into().map_err(|_| ProtoError::NotRepresentable(format!("exponent {e}")))?;
                        Number(x.powi(k)?)
                    } else {
                        match single_term(&x) {
                            Some(t) if t.coeff.is_positive() => {
                                let c = if t.coeff.is_one() {
                                    Scalar::one()
                                } else {
                                    scalar::approx_f64(scalar::to_f64(&t.coeff).powf(scalar::to_f64(e)))
                                        .ok_or_else(|| ProtoError::NotRepresentable(format!("{}^{}", t.coeff, e)))?
                                };
                                Number(InNumber::from(Term::new(c, t.proto.pow(e)?)))
                            }
                            _ => return self.fallback(ast),
                        }
                    }
                }
            },
            Ast::Call(Func::Ln, a) => match single_term(&self.number(a)?) {
                Some(t) if t.coeff.is_positive() => {
                    let ln_c = if t.coeff.is_one() { Scalar::zero() } else { real_fn(&t.coeff, f64::ln).unwrap_or_else(Scalar::zero) };
                    Number(t.proto.log_of()?.add(&InNumber::constant(ln_c)))
                }
                _ => return self.fallback(ast),
            },
            Ast::Call(Func::Exp, a) => {
                let x = self.number(a)?;
                if x.is_zero() {
                    return Ok(Number(InNumber::one()));
                }
                let s = x.split_infinite()?;
                if s.rest.is_zero() {
                    return Ok(Number(InNumber::from(Prototype::exp_of(&x)?)));
                }
                return self.fallback(ast);
            }
            Ast::Call(..) => return self.fallback(ast),
        })
    }
}

/// A value in `w`. Exponentials, logarithms and powers are exact where the
/// result is a single class; otherwise the expansion is taken to `depth`
/// terms.
pub fn parse_value(src: &str, depth: usize) -> Result<Value, InputError> {
    let ast = parse_ast(src)?;
    if let Some(pos) = ast.find_var('n') {
        return Err(ParseError::Context { pos, symbol: 'n', context: "value" }.into());
    }
    ValueEval { depth }.eval(&ast)
}

/// A prototype: a value that is a single term with coefficient one.
pub fn parse_proto(src: &str) -> Result<Prototype, InputError> {
    let v = parse_value(src, 4)?;
    v.as_prototype().ok_or_else(|| InputError::NotAPrototype(src.trim().to_string()))
}

/// Either reading, chosen by the variable that appears.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Sequence(SeqExpr),
    Value(Value),
}

/// Reads `src` as a sequence when it mentions `n`, otherwise as a value.
/// Mixing `n` and `w` is a context error.
pub fn parse_expr(src: &str, depth: usize) -> Result<Parsed, InputError> {
    let ast = parse_ast(src)?;
    match ast.first_var() {
        Some(('n', _)) => Ok(Parsed::Sequence(parse_seq(src)?)),
        _ => Ok(Parsed::Value(parse_value(src, depth)?)),
    }
}
