//! Sequence expressions in the index variable `n`.

use std::fmt;

use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum SeqExpr {
    Const(Scalar),
    IndexN,
    Add(Box<SeqExpr>, Box<SeqExpr>),
    Sub(Box<SeqExpr>, Box<SeqExpr>),
    Mul(Box<SeqExpr>, Box<SeqExpr>),
    Div(Box<SeqExpr>, Box<SeqExpr>),
    PowConst(Box<SeqExpr>, Scalar),
    Exp(Box<SeqExpr>),
    Ln(Box<SeqExpr>),
    Sin(Box<SeqExpr>),
    Cos(Box<SeqExpr>),
}

impl SeqExpr {
    pub fn n() -> Self {
        SeqExpr::IndexN
    }

    pub fn c(v: i64) -> Self {
        SeqExpr::Const(scalar::int(v))
    }

    pub fn constant(v: Scalar) -> Self {
        SeqExpr::Const(v)
    }

    pub fn add(self, r: SeqExpr) -> Self {
        SeqExpr::Add(Box::new(self), Box::new(r))
    }

    pub fn sub(self, r: SeqExpr) -> Self {
        SeqExpr::Sub(Box::new(self), Box::new(r))
    }

    pub fn mul(self, r: SeqExpr) -> Self {
        SeqExpr::Mul(Box::new(self), Box::new(r))
    }

    pub fn div(self, r: SeqExpr) -> Self {
        SeqExpr::Div(Box::new(self), Box::new(r))
    }

    pub fn pow(self, a: Scalar) -> Self {
        SeqExpr::PowConst(Box::new(self), a)
    }

    pub fn powi(self, a: i64) -> Self {
        self.pow(scalar::int(a))
    }

    pub fn exp(self) -> Self {
        SeqExpr::Exp(Box::new(self))
    }

    pub fn ln(self) -> Self {
        SeqExpr::Ln(Box::new(self))
    }

    pub fn sin(self) -> Self {
        SeqExpr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Self {
        SeqExpr::Cos(Box::new(self))
    }

    fn precedence(&self) -> u8 {
        match self {
            SeqExpr::Add(..) | SeqExpr::Sub(..) => 1,
            SeqExpr::Mul(..) | SeqExpr::Div(..) => 2,
            SeqExpr::Const(c) if *c < Scalar::from_integer(0.into()) || !c.is_integer() => 2,
            SeqExpr::PowConst(..) => 3,
            _ => 4,
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqExpr::Const(c) if c.is_integer() => write!(f, "{}", c.numer()),
            SeqExpr::Const(c) => write!(f, "{}/{}", c.numer(), c.denom()),
            SeqExpr::IndexN => write!(f, "n"),
            SeqExpr::Add(a, b) => {
                a.write_operand(f, 1)?;
                write!(f, " + ")?;
                b.write_operand(f, 2)
            }
            SeqExpr::Sub(a, b) => {
                a.write_operand(f, 1)?;
                write!(f, " - ")?;
                b.write_operand(f, 2)
            }
            SeqExpr::Mul(a, b) => {
                a.write_operand(f, 2)?;
                write!(f, "*")?;
                b.write_operand(f, 3)
            }
            SeqExpr::Div(a, b) => {
                a.write_operand(f, 2)?;
                write!(f, "/")?;
                b.write_operand(f, 3)
            }
            SeqExpr::PowConst(a, e) => {
                a.write_operand(f, 4)?;
                if e.is_integer() && *e >= Scalar::from_integer(0.into()) {
                    write!(f, "^{}", e.numer())
                } else if e.is_integer() {
                    write!(f, "^({})", e.numer())
                } else {
                    write!(f, "^({}/{})", e.numer(), e.denom())
                }
            }
            SeqExpr::Exp(a) => write!(f, "exp({a})"),
            SeqExpr::Ln(a) => write!(f, "ln({a})"),
            SeqExpr::Sin(a) => write!(f, "sin({a})"),
            SeqExpr::Cos(a) => write!(f, "cos({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_respects_precedence() {
        let e = SeqExpr::n().add(SeqExpr::c(1)).div(SeqExpr::n().sub(SeqExpr::c(1)));
        assert_eq!(e.to_string(), "(n + 1)/(n - 1)");
        let e = SeqExpr::n().exp().div(SeqExpr::n().powi(2));
        assert_eq!(e.to_string(), "exp(n)/n^2");
        let e = SeqExpr::c(1).sub(SeqExpr::n().sub(SeqExpr::c(2)));
        assert_eq!(e.to_string(), "1 - (n - 2)");
        let e = SeqExpr::n().pow(scalar::ratio(-1, 2));
        assert_eq!(e.to_string(), "n^(-1/2)");
    }
}
