//! Finite limits `Σ cᵢ·pᵢ`: real coefficients on strictly decreasing classes.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::prototype::Prototype;
use crate::scalar::{self, Scalar};

/// One summand `c·p` with `c ≠ 0`.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Scalar,
    pub proto: Prototype,
}

impl Term {
    pub fn new(coeff: Scalar, proto: Prototype) -> Self {
        Term { coeff, proto }
    }

    pub fn constant(coeff: Scalar) -> Self {
        Term { coeff, proto: Prototype::unit() }
    }

    /// `(cp)(dq) = (cd)(pq)`.
    pub fn mul(&self, other: &Term) -> Term {
        Term { coeff: &self.coeff * &other.coeff, proto: self.proto.product(&other.proto) }
    }

    /// `(cp)/(dq) = (c/d)(p/q)`.
    pub fn div(&self, other: &Term) -> Term {
        Term { coeff: &self.coeff / &other.coeff, proto: self.proto.quotient(&other.proto) }
    }

    pub fn neg(&self) -> Term {
        Term { coeff: -&self.coeff, proto: self.proto.clone() }
    }

    fn structurally_eq(&self, other: &Term) -> bool {
        self.coeff == other.coeff && self.proto.structurally_eq(&other.proto)
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.coeff == other.coeff && self.proto == other.proto
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.coeff.is_negative();
        if neg {
            write!(f, "-")?;
        }
        write_magnitude(f, &self.coeff.abs(), &self.proto)
    }
}

/// `|c|·p` without sign.
fn write_magnitude(f: &mut fmt::Formatter<'_>, c: &Scalar, p: &Prototype) -> fmt::Result {
    let coeff = scalar::render(c);
    let coeff = if coeff.contains('/') { format!("({coeff})") } else { coeff };
    match (c.is_one(), p.render_parts()) {
        (_, (None, None)) => write!(f, "{}", scalar::render(c)),
        (true, (Some(n), None)) => write!(f, "{n}"),
        (true, (Some(n), Some(d))) => write!(f, "{n}/{d}"),
        (true, (None, Some(d))) => write!(f, "1/{d}"),
        (false, (Some(n), None)) => write!(f, "{coeff}*{n}"),
        (false, (Some(n), Some(d))) => write!(f, "{coeff}*{n}/{d}"),
        (false, (None, Some(d))) => write!(f, "{coeff}/{d}"),
    }
}

/// A finite sum of terms in strictly decreasing class order, or zero.
#[derive(Clone, Debug, Default)]
pub struct Limit {
    terms: Vec<Term>,
}

impl Limit {
    pub fn zero() -> Self {
        Limit { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Limit::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Limit::from_term(Term::constant(c))
    }

    pub fn omega() -> Self {
        Limit::from_term(Term::new(Scalar::one(), Prototype::omega()))
    }

    pub fn from_term(term: Term) -> Self {
        if term.coeff.is_zero() {
            Limit::zero()
        } else {
            Limit { terms: vec![term] }
        }
    }

    /// Sorts and merges terms of equal class.
    pub fn from_terms(mut terms: Vec<Term>) -> Self {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by(|a, b| b.proto.compare(&a.proto));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = merged.last_mut() {
                if last.proto.compare(&t.proto) == Ordering::Equal {
                    last.coeff += t.coeff;
                    continue;
                }
            }
            merged.push(t);
        }
        merged.retain(|t| !t.coeff.is_zero());
        Limit { terms: merged }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].proto.is_unit() && self.terms[0].coeff.is_one()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn last(&self) -> Option<&Term> {
        self.terms.last()
    }

    /// Merge of two sorted term lists.
    pub fn add(&self, other: &Limit) -> Limit {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            let ord = if a.proto.structurally_eq(&b.proto) { Ordering::Equal } else { a.proto.compare(&b.proto) };
            match ord {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.coeff + &b.coeff;
                    if !c.is_zero() {
                        out.push(Term::new(c, a.proto.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Limit { terms: out }
    }

    pub fn neg(&self) -> Limit {
        Limit { terms: self.terms.iter().map(Term::neg).collect() }
    }

    pub fn sub(&self, other: &Limit) -> Limit {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Limit {
        if c.is_zero() {
            return Limit::zero();
        }
        Limit { terms: self.terms.iter().map(|t| Term::new(&t.coeff * c, t.proto.clone())).collect() }
    }

    /// Multiplying by a single term preserves the class order.
    pub fn scale_by_term(&self, term: &Term) -> Limit {
        if term.coeff.is_zero() {
            return Limit::zero();
        }
        Limit { terms: self.terms.iter().map(|t| t.mul(term)).collect() }
    }

    /// Full cross product, re-merged.
    pub fn mul(&self, other: &Limit) -> Limit {
        if self.is_zero() || other.is_zero() {
            return Limit::zero();
        }
        if other.terms.len() == 1 {
            return self.scale_by_term(&other.terms[0]);
        }
        if self.terms.len() == 1 {
            return other.scale_by_term(&self.terms[0]);
        }
        let mut acc = Limit::zero();
        for t in &self.terms {
            acc = acc.add(&other.scale_by_term(t));
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Limit {
        let mut acc = Limit::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sign of the leading term.
    pub fn sign(&self) -> Ordering {
        match self.terms.first() {
            None => Ordering::Equal,
            Some(t) if t.coeff.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// Value order: by the leading term of `self − other`.
    pub fn compare(&self, other: &Limit) -> Ordering {
        self.sub(other).sign()
    }

    /// Terms of class strictly above `bound`.
    pub fn above(&self, bound: &Prototype) -> Limit {
        Limit {
            terms: self
                .terms
                .iter()
                .take_while(|t| t.proto.compare(bound) == Ordering::Greater)
                .cloned()
                .collect(),
        }
    }

    pub fn take(&self, n: usize) -> Limit {
        Limit { terms: self.terms.iter().take(n).cloned().collect() }
    }

    pub(crate) fn structurally_eq(&self, other: &Limit) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| a.structurally_eq(b))
    }
}

impl PartialEq for Limit {
    fn eq(&self, other: &Self) -> bool {
        self.structurally_eq(other) || self.compare(other) == Ordering::Equal
    }
}

impl From<Term> for Limit {
    fn from(t: Term) -> Self {
        Limit::from_term(t)
    }
}

impl From<Prototype> for Limit {
    fn from(p: Prototype) -> Self {
        Limit::from_term(Term::new(Scalar::one(), p))
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_magnitude(f, &t.coeff.abs(), &t.proto)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn w_pow(k: i64) -> Prototype {
        Prototype::omega().pow(&int(k)).unwrap()
    }

    fn poly(coeffs: &[(i64, i64)]) -> Limit {
        Limit::from_terms(coeffs.iter().map(|&(c, k)| Term::new(int(c), w_pow_or_unit(k))).collect())
    }

    fn w_pow_or_unit(k: i64) -> Prototype {
        if k == 0 {
            Prototype::unit()
        } else {
            w_pow(k)
        }
    }

    #[test]
    fn addition_cancels() {
        let a = poly(&[(2, 1), (3, 0)]);
        let b = poly(&[(-2, 1), (1, -1)]);
        assert!(a.add(&b).structurally_eq(&poly(&[(3, 0), (1, -1)])));
        assert!(a.add(&Limit::zero()).structurally_eq(&a));
        let c = poly(&[(1, 2), (1, 1)]).add(&poly(&[(1, 2), (-1, 1)]));
        assert!(c.structurally_eq(&poly(&[(2, 2)])));
    }

    #[test]
    fn products() {
        let a = poly(&[(1, 1), (1, 0)]);
        let b = poly(&[(1, 1), (-1, 0)]);
        assert!(a.mul(&b).structurally_eq(&poly(&[(1, 2), (-1, 0)])));
        assert!(a.mul(&Limit::zero()).is_zero());
        let t = Term::new(int(3), w_pow(2)).mul(&Term::new(int(5), Prototype::log_atom(1)));
        assert_eq!(t.coeff, int(15));
        assert!(t.proto.structurally_eq(&w_pow(2).mul(&Prototype::log_atom(1)).unwrap()));
    }

    #[test]
    fn ordering() {
        assert_eq!(poly(&[(1, 1), (1, 0)]).compare(&poly(&[(1, 1)])), Ordering::Greater);
        assert_eq!(Limit::zero().compare(&poly(&[(-1, -1)])), Ordering::Greater);
        let exp_w = Prototype::exp_of(&crate::InNumber::from(Prototype::omega())).unwrap();
        let lhs = Limit::from_terms(vec![Term::new(int(1), exp_w), Term::new(int(-1), Prototype::omega())]);
        assert_eq!(lhs.compare(&poly(&[(1, 100)])), Ordering::Greater);
    }

    #[test]
    fn rendering() {
        assert_eq!(poly(&[(1, 0), (2, -1), (2, -2)]).to_string(), "1 + 2/w + 2/w^2");
        assert_eq!(poly(&[(-1, 1), (3, 0)]).to_string(), "-w + 3");
        let half = Limit::from_term(Term::new(crate::scalar::ratio(-1, 3), w_pow(-1)));
        assert_eq!(half.to_string(), "-(1/3)/w");
    }
}
