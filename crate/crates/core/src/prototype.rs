//! Prototypes of Archimedean classes.
//!
//! A prototype is a monomial `∏ bᵢ^rᵢ` over a hierarchy of bases: the
//! iterated logarithms `lnᵏ(ω)`, exponentials `exp(A)` of purely infinite
//! numbers, and the two cardinal-jump atoms `exp^ω(ω)` and `ln^ω(ω)`.
//! Factors are kept sorted by decreasing base, so every class has exactly
//! one representation (up to the best-effort normalization of ratio
//! arguments, see [`InNumber`]).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::ProtoError;
use crate::innumber::InNumber;
use crate::limit::{Limit, Term};
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TowerDirection {
    /// `exp^ω(ω)`, above every finite tower height.
    Exp,
    /// `ln^ω(ω)`, above one and below every finite-height infinite class.
    Log,
}

#[derive(Clone, Debug)]
pub enum BaseAtom {
    /// `lnᵏ(ω)`; `Log(0)` is ω itself.
    Log(u32),
    /// `exp(A)` with `A` purely infinite and leading coefficient one.
    Exp(Arc<InNumber>),
    Tower(TowerDirection),
}

/// Height of the dominant factor in the exp/log tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardinalHeight {
    LogTower,
    Finite(i64),
    ExpTower,
}

impl BaseAtom {
    pub fn omega() -> Self {
        BaseAtom::Log(0)
    }

    /// `ln(base)`. Fails for cardinal-jump atoms.
    pub fn log_value(&self) -> Result<InNumber, ProtoError> {
        match self {
            BaseAtom::Log(k) => Ok(InNumber::from(Prototype::log_atom(k + 1))),
            BaseAtom::Exp(arg) => Ok((**arg).clone()),
            BaseAtom::Tower(_) => Err(ProtoError::TowerArithmetic("logarithm of a cardinal-jump atom")),
        }
    }

    /// Exponential base whose argument is a genuine ratio rather than a
    /// single monomial. These arise only through the feedback rule.
    pub fn is_ratio_exp(&self) -> bool {
        matches!(self, BaseAtom::Exp(arg) if !arg.is_limit())
    }

    pub fn is_tower(&self) -> bool {
        matches!(self, BaseAtom::Tower(_))
    }

    fn height(&self) -> CardinalHeight {
        match self {
            BaseAtom::Log(k) => CardinalHeight::Finite(-(*k as i64)),
            BaseAtom::Exp(arg) => match arg.leading_term() {
                Some(t) => match t.proto.cardinal_height() {
                    Some(CardinalHeight::Finite(h)) => CardinalHeight::Finite(h + 1),
                    Some(other) => other,
                    None => CardinalHeight::Finite(1),
                },
                None => CardinalHeight::Finite(1),
            },
            BaseAtom::Tower(TowerDirection::Exp) => CardinalHeight::ExpTower,
            BaseAtom::Tower(TowerDirection::Log) => CardinalHeight::LogTower,
        }
    }

    pub fn structurally_eq(&self, other: &BaseAtom) -> bool {
        match (self, other) {
            (BaseAtom::Log(a), BaseAtom::Log(b)) => a == b,
            (BaseAtom::Exp(a), BaseAtom::Exp(b)) => Arc::ptr_eq(a, b) || a.structurally_eq(b),
            (BaseAtom::Tower(a), BaseAtom::Tower(b)) => a == b,
            _ => false,
        }
    }
}

/// Order of two bases as classes (`b₁` vs `b₂`), decided through their logarithms.
pub fn compare_bases(a: &BaseAtom, b: &BaseAtom) -> Ordering {
    use BaseAtom::*;
    match (a, b) {
        (Tower(x), Tower(y)) => match (x, y) {
            (TowerDirection::Exp, TowerDirection::Log) => Ordering::Greater,
            (TowerDirection::Log, TowerDirection::Exp) => Ordering::Less,
            _ => Ordering::Equal,
        },
        (Tower(TowerDirection::Exp), _) => Ordering::Greater,
        (_, Tower(TowerDirection::Exp)) => Ordering::Less,
        (Tower(TowerDirection::Log), _) => Ordering::Less,
        (_, Tower(TowerDirection::Log)) => Ordering::Greater,
        (Log(i), Log(j)) => j.cmp(i),
        (Exp(x), Exp(y)) => {
            if Arc::ptr_eq(x, y) {
                Ordering::Equal
            } else {
                x.compare(y)
            }
        }
        (Exp(x), Log(k)) => x.compare(&InNumber::from(Prototype::log_atom(k + 1))),
        (Log(k), Exp(y)) => InNumber::from(Prototype::log_atom(k + 1)).compare(y),
    }
}

#[derive(Clone, Debug, Default)]
pub struct Prototype {
    factors: Vec<(BaseAtom, Scalar)>,
}

impl Prototype {
    /// The class of the nonzero reals.
    pub fn unit() -> Self {
        Prototype { factors: Vec::new() }
    }

    pub fn omega() -> Self {
        Prototype::log_atom(0)
    }

    /// `lnᵏ(ω)`.
    pub fn log_atom(k: u32) -> Self {
        Prototype { factors: vec![(BaseAtom::Log(k), Scalar::one())] }
    }

    pub fn tower(direction: TowerDirection) -> Self {
        Prototype { factors: vec![(BaseAtom::Tower(direction), Scalar::one())] }
    }

    /// Canonical prototype from arbitrary factors: sorted by decreasing
    /// base, equal bases merged, zero exponents dropped.
    pub fn from_factors(factors: impl IntoIterator<Item = (BaseAtom, Scalar)>) -> Self {
        let mut list: Vec<(BaseAtom, Scalar)> = factors.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        list.sort_by(|a, b| compare_bases(&b.0, &a.0));
        let mut merged: Vec<(BaseAtom, Scalar)> = Vec::with_capacity(list.len());
        for (base, exp) in list {
            if let Some((last, acc)) = merged.last_mut() {
                if last.structurally_eq(&base) || compare_bases(last, &base) == Ordering::Equal {
                    *acc += exp;
                    continue;
                }
            }
            merged.push((base, exp));
        }
        merged.retain(|(_, e)| !e.is_zero());
        Prototype { factors: merged }
    }

    pub fn factors(&self) -> &[(BaseAtom, Scalar)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_infinite(&self) -> bool {
        self.compare(&Prototype::unit()) == Ordering::Greater
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.compare(&Prototype::unit()) == Ordering::Less
    }

    pub fn has_tower(&self) -> bool {
        self.factors.iter().any(|(b, _)| b.is_tower())
    }

    fn has_ratio_base(&self) -> bool {
        self.factors.iter().any(|(b, _)| b.is_ratio_exp())
    }

    /// Structural identity of the canonical form.
    pub fn structurally_eq(&self, other: &Prototype) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|((a, x), (b, y))| x == y && a.structurally_eq(b))
    }

    /// Class order. `Equal` means both belong to the same Archimedean class.
    pub fn compare(&self, other: &Prototype) -> Ordering {
        if self.has_ratio_base() || other.has_ratio_base() {
            self.compare_by_log_difference(other)
        } else {
            self.compare_lexicographic(other)
        }
    }

    /// Bases whose logarithms are distinct monomials dominate every power of
    /// smaller bases, so the first differing exponent decides.
    fn compare_lexicographic(&self, other: &Prototype) -> Ordering {
        let (mut i, mut j) = (0, 0);
        let (p, q) = (&self.factors, &other.factors);
        loop {
            match (p.get(i), q.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => return sign_ordering(e),
                (None, Some((_, e))) => return sign_ordering(e).reverse(),
                (Some((a, x)), Some((b, y))) => {
                    let by_base = if a.structurally_eq(b) { Ordering::Equal } else { compare_bases(a, b) };
                    match by_base {
                        Ordering::Greater => return sign_ordering(x),
                        Ordering::Less => return sign_ordering(y).reverse(),
                        Ordering::Equal => {
                            if x != y {
                                return x.cmp(y);
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
        }
    }

    /// Sign of the leading term of `ln(p) − ln(q)`; cardinal-jump exponents
    /// are compared before and after the finite-height part.
    fn compare_by_log_difference(&self, other: &Prototype) -> Ordering {
        let exp_tower = |p: &Prototype, dir| {
            p.factors
                .iter()
                .find(|(b, _)| matches!(b, BaseAtom::Tower(d) if *d == dir))
                .map(|(_, e)| e.clone())
                .unwrap_or_else(Scalar::zero)
        };
        let by_exp_tower = exp_tower(self, TowerDirection::Exp).cmp(&exp_tower(other, TowerDirection::Exp));
        if by_exp_tower != Ordering::Equal {
            return by_exp_tower;
        }
        let d = self.finite_log().sub(&other.finite_log());
        match d.leading_term() {
            Some(t) if t.proto.is_infinite() => sign_ordering(&t.coeff),
            _ => exp_tower(self, TowerDirection::Log).cmp(&exp_tower(other, TowerDirection::Log)),
        }
    }

    /// `ln` of the finite-height part (tower factors skipped).
    fn finite_log(&self) -> InNumber {
        let mut poly = Limit::zero();
        let mut rest = InNumber::zero();
        for (base, exp) in &self.factors {
            match base {
                BaseAtom::Log(k) => {
                    poly = poly.add(&Limit::from_term(Term::new(exp.clone(), Prototype::log_atom(k + 1))));
                }
                BaseAtom::Exp(arg) => {
                    if let Some(l) = arg.as_limit() {
                        poly = poly.add(&l.scale(exp));
                    } else {
                        rest = rest.add(&arg.scale(exp));
                    }
                }
                BaseAtom::Tower(_) => {}
            }
        }
        InNumber::from(poly).add(&rest)
    }

    /// `ln(p) = Σ rⱼ·ln(bⱼ)`; the unit prototype gives zero.
    pub fn log_of(&self) -> Result<InNumber, ProtoError> {
        if self.has_tower() {
            return Err(ProtoError::TowerArithmetic("logarithm of a cardinal-jump atom"));
        }
        Ok(self.finite_log())
    }

    /// Merge of factor lists with no tower checks.
    pub(crate) fn product(&self, other: &Prototype) -> Prototype {
        if other.is_unit() {
            return self.clone();
        }
        if self.is_unit() {
            return other.clone();
        }
        self.merge(other, false)
    }

    /// Linear merge of two canonical factor lists, negating `other` on request.
    fn merge(&self, other: &Prototype, negate: bool) -> Prototype {
        let (p, q) = (&self.factors, &other.factors);
        let theirs = |e: &Scalar| if negate { -e } else { e.clone() };
        let mut out = Vec::with_capacity(p.len() + q.len());
        let (mut i, mut j) = (0, 0);
        while i < p.len() && j < q.len() {
            let ((a, x), (b, y)) = (&p[i], &q[j]);
            let ord = if a.structurally_eq(b) { Ordering::Equal } else { compare_bases(a, b) };
            match ord {
                Ordering::Greater => {
                    out.push((a.clone(), x.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.clone(), theirs(y)));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = if negate { x - y } else { x + y };
                    if !e.is_zero() {
                        out.push((a.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(p[i..].iter().cloned());
        out.extend(q[j..].iter().map(|(b, y)| (b.clone(), theirs(y))));
        Prototype { factors: out }
    }

    pub(crate) fn reciprocal(&self) -> Prototype {
        Prototype { factors: self.factors.iter().map(|(b, e)| (b.clone(), -e)).collect() }
    }

    pub(crate) fn quotient(&self, other: &Prototype) -> Prototype {
        if other.is_unit() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub(crate) fn scaled_exponents(&self, a: &Scalar) -> Prototype {
        Prototype { factors: self.factors.iter().map(|(b, e)| (b.clone(), e * a)).collect() }
    }

    pub fn mul(&self, other: &Prototype) -> Result<Prototype, ProtoError> {
        check_tower_mix(self, other)?;
        Ok(self.product(other))
    }

    pub fn div(&self, other: &Prototype) -> Result<Prototype, ProtoError> {
        check_tower_mix(self, other)?;
        Ok(self.quotient(other))
    }

    pub fn pow(&self, a: &Scalar) -> Result<Prototype, ProtoError> {
        if a.is_zero() {
            return Err(ProtoError::ZeroExponent);
        }
        Ok(self.scaled_exponents(a))
    }

    /// Exp-tower height of the dominant factor; `None` for the unit class.
    pub fn cardinal_height(&self) -> Option<CardinalHeight> {
        self.factors.first().map(|(b, _)| b.height())
    }

    /// `exp(L)` for purely infinite `L` with positive leading coefficient.
    pub fn exp_of(arg: &InNumber) -> Result<Prototype, ProtoError> {
        let split = arg.split_infinite()?;
        if !split.rest.is_zero() || split.is_zero_infinite_part() {
            return Err(ProtoError::NotPurelyInfinite);
        }
        match arg.leading_term() {
            Some(t) if t.coeff.is_positive() => {}
            _ => return Err(ProtoError::NonPositiveLeading),
        }
        Ok(exp_class(&split.poly, split.ratio.as_ref()))
    }

    /// `f^g`, the class of `exp(g·ln f)`. Finite and infinitesimal parts of
    /// the exponent do not change the class; the unit prototype is returned
    /// when nothing infinite remains.
    pub fn pow_by_limit(&self, g: &InNumber) -> Result<Prototype, ProtoError> {
        let x = g.mul(&self.log_of()?);
        let split = x.split_infinite().map_err(|e| ProtoError::FeedbackConditionViolated(e.to_string()))?;
        if split.ratio.is_some() && !g.is_limit() {
            let t = g.den().scale_by_term(&Term::new(Scalar::one(), g.den().last().expect("nonzero").proto.reciprocal()));
            if !dominates_all_powers(self, &t)? {
                return Err(ProtoError::FeedbackConditionViolated(format!(
                    "ln({self}) does not dominate every power of {t}"
                )));
            }
        }
        Ok(exp_class(&split.poly, split.ratio.as_ref()))
    }
}

/// Whether `ln(f) > tⁿ` for every integer `n`. `t` must be positive with no
/// infinitesimal terms.
pub fn dominates_all_powers(f: &Prototype, t: &Limit) -> Result<bool, ProtoError> {
    let lead_t = match t.leading() {
        Some(term) if term.coeff.is_positive() => term,
        _ => return Err(ProtoError::FeedbackConditionViolated("t must be positive".into())),
    };
    if t.terms().iter().any(|term| term.proto.is_infinitesimal()) {
        return Err(ProtoError::FeedbackConditionViolated("t has infinitesimal terms".into()));
    }
    let log_f = f.log_of()?;
    let lead_log_f = match log_f.leading_term() {
        Some(term) if term.coeff.is_positive() && term.proto.is_infinite() => term,
        _ => return Ok(false),
    };
    if lead_t.proto.is_unit() {
        return Ok(true);
    }
    let lhs = lead_log_f.proto.log_of()?;
    let rhs = lead_t.proto.log_of()?;
    match (lhs.leading_term(), rhs.leading_term()) {
        (Some(a), Some(b)) => Ok(a.coeff.is_positive() && a.proto.compare(&b.proto) == Ordering::Greater),
        (Some(a), None) => Ok(a.coeff.is_positive()),
        _ => Ok(false),
    }
}

/// Class of `exp(poly + ratio)` for purely infinite parts. Each monomial
/// of `poly` becomes its own base (`exp(c·lnᵏ⁺¹ω)` folds to `lnᵏ(ω)^c`);
/// the ratio part becomes one base with its leading scalar folded into the
/// exponent.
pub(crate) fn exp_class(poly: &Limit, ratio: Option<&InNumber>) -> Prototype {
    let mut factors = Vec::new();
    for term in poly.terms() {
        let folded = match term.proto.factors() {
            [(BaseAtom::Log(k), e)] if *k >= 1 && e.is_one() => Some(BaseAtom::Log(k - 1)),
            _ => None,
        };
        let base = folded.unwrap_or_else(|| BaseAtom::Exp(Arc::new(InNumber::from(term.proto.clone()))));
        factors.push((base, term.coeff.clone()));
    }
    if let Some(r) = ratio {
        if let Some(lead) = r.leading_term() {
            let normalized = r.scale(&(Scalar::one() / &lead.coeff));
            factors.push((BaseAtom::Exp(Arc::new(normalized)), lead.coeff));
        }
    }
    Prototype::from_factors(factors)
}

fn sign_ordering(s: &Scalar) -> Ordering {
    if s.is_positive() {
        Ordering::Greater
    } else if s.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn check_tower_mix(p: &Prototype, q: &Prototype) -> Result<(), ProtoError> {
    let dirs = |x: &Prototype| {
        x.factors.iter().filter_map(|(b, _)| match b {
            BaseAtom::Tower(d) => Some(*d),
            _ => None,
        }).collect::<Vec<_>>()
    };
    let (a, b) = (dirs(p), dirs(q));
    if a.iter().any(|d| b.iter().any(|e| e != d)) {
        return Err(ProtoError::TowerArithmetic("product of exp-tower and log-tower atoms"));
    }
    Ok(())
}

impl PartialEq for Prototype {
    fn eq(&self, other: &Self) -> bool {
        self.structurally_eq(other) || self.compare(other) == Ordering::Equal
    }
}

impl fmt::Display for BaseAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseAtom::Log(0) => write!(f, "w"),
            BaseAtom::Log(k) => {
                for _ in 0..*k {
                    write!(f, "ln(")?;
                }
                write!(f, "w")?;
                for _ in 0..*k {
                    write!(f, ")")?;
                }
                Ok(())
            }
            BaseAtom::Exp(arg) => write!(f, "exp({arg})"),
            BaseAtom::Tower(TowerDirection::Exp) => write!(f, "exp^w(w)"),
            BaseAtom::Tower(TowerDirection::Log) => write!(f, "ln^w(w)"),
        }
    }
}

fn render_exponent(e: &Scalar) -> String {
    let s = scalar::render(e);
    if s.contains('/') || s.starts_with('-') {
        format!("^({s})")
    } else {
        format!("^{s}")
    }
}

impl Prototype {
    /// `(numerator, denominator)` factor strings, each `None` when empty.
    pub(crate) fn render_parts(&self) -> (Option<String>, Option<String>) {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (base, e) in &self.factors {
            let mag = e.abs();
            let s = if mag.is_one() { base.to_string() } else { format!("{base}{}", render_exponent(&mag)) };
            if e.is_positive() {
                num.push(s);
            } else {
                den.push(s);
            }
        }
        let num = (!num.is_empty()).then(|| num.join("*"));
        let den = (!den.is_empty()).then(|| den.join("/"));
        (num, den)
    }
}

impl fmt::Display for Prototype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render_parts() {
            (None, None) => write!(f, "1"),
            (Some(n), None) => write!(f, "{n}"),
            (None, Some(d)) => write!(f, "1/{d}"),
            (Some(n), Some(d)) => write!(f, "{n}/{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn w() -> Prototype {
        Prototype::omega()
    }
    fn ln_w() -> Prototype {
        Prototype::log_atom(1)
    }
    fn exp_w() -> Prototype {
        Prototype::exp_of(&InNumber::from(w())).unwrap()
    }

    #[test]
    fn generation_one_lemma() {
        for alpha in [ratio(1, 1000), int(1), int(1000)] {
            let power = w().pow(&alpha).unwrap();
            assert_eq!(ln_w().compare(&power), Ordering::Less);
            assert_eq!(power.compare(&exp_w()), Ordering::Less);
        }
    }

    #[test]
    fn identity_is_equal_class() {
        let p = exp_w().div(&w()).unwrap();
        assert_eq!(p.compare(&p), Ordering::Equal);
        assert!(p.div(&p).unwrap().is_unit());
    }

    #[test]
    fn exp_over_omega_beats_large_powers() {
        let p = exp_w().div(&w()).unwrap();
        assert_eq!(p.compare(&w().pow(&int(1000)).unwrap()), Ordering::Greater);
        assert_eq!(p.compare(&exp_w()), Ordering::Less);
    }

    #[test]
    fn exponent_arithmetic() {
        assert!(w().mul(&w()).unwrap().structurally_eq(&w().pow(&int(2)).unwrap()));
        let sq_log = ln_w().pow(&int(2)).unwrap();
        assert!(sq_log.pow(&ratio(1, 2)).unwrap().structurally_eq(&ln_w()));
        assert_eq!(w().pow(&Scalar::zero()), Err(ProtoError::ZeroExponent));
        assert!(exp_w().pow(&int(-1)).unwrap().is_infinitesimal());
    }

    #[test]
    fn log_of_is_a_homomorphism() {
        let p = w().pow(&int(2)).unwrap().mul(&ln_w()).unwrap();
        let expected = Limit::from_terms(vec![
            Term::new(int(2), ln_w()),
            Term::new(int(1), Prototype::log_atom(2)),
        ]);
        assert_eq!(p.log_of().unwrap(), InNumber::from(expected));
        assert_eq!(exp_w().log_of().unwrap(), InNumber::from(w()));
        assert!(Prototype::unit().log_of().unwrap().is_zero());
    }

    #[test]
    fn exp_of_inverts_log_of() {
        let two_ln = InNumber::from(Limit::from_term(Term::new(int(2), ln_w())));
        assert!(Prototype::exp_of(&two_ln).unwrap().structurally_eq(&w().pow(&int(2)).unwrap()));
        assert_eq!(exp_w().to_string(), "exp(w)");
        let neg = InNumber::from(Limit::from_term(Term::new(int(-1), w())));
        assert_eq!(Prototype::exp_of(&neg), Err(ProtoError::NonPositiveLeading));
        let finite = InNumber::from(Limit::from_terms(vec![Term::new(int(1), w()), Term::new(int(1), Prototype::unit())]));
        assert_eq!(Prototype::exp_of(&finite), Err(ProtoError::NotPurelyInfinite));
    }

    #[test]
    fn omega_to_one_over_omega_is_unit() {
        let g = InNumber::from(Limit::from_term(Term::new(int(1), w().reciprocal())));
        assert!(w().pow_by_limit(&g).unwrap().is_unit());
        let two = InNumber::from(Limit::constant(int(2)));
        assert!(w().pow_by_limit(&two).unwrap().structurally_eq(&w().pow(&int(2)).unwrap()));
    }

    #[test]
    fn dominance_checks() {
        let exp_exp = Prototype::exp_of(&InNumber::from(exp_w())).unwrap();
        let w_plus_1 = Limit::from_terms(vec![Term::new(int(1), w()), Term::new(int(1), Prototype::unit())]);
        assert!(dominates_all_powers(&exp_exp, &w_plus_1).unwrap());
        assert!(!dominates_all_powers(&exp_w(), &Limit::from_term(Term::new(int(1), w()))).unwrap());
        let exp_w2 = Prototype::exp_of(&InNumber::from(w().pow(&int(2)).unwrap())).unwrap();
        assert!(!dominates_all_powers(&exp_w2, &Limit::from_term(Term::new(int(1), w()))).unwrap());
        let with_small = Limit::from_terms(vec![Term::new(int(1), w()), Term::new(int(1), w().reciprocal())]);
        assert!(dominates_all_powers(&exp_exp, &with_small).is_err());
    }

    #[test]
    fn heights() {
        assert_eq!(w().cardinal_height(), Some(CardinalHeight::Finite(0)));
        let exp_exp = Prototype::exp_of(&InNumber::from(exp_w())).unwrap();
        assert_eq!(exp_exp.cardinal_height(), Some(CardinalHeight::Finite(2)));
        assert_eq!(Prototype::log_atom(2).cardinal_height(), Some(CardinalHeight::Finite(-2)));
        assert_eq!(Prototype::tower(TowerDirection::Exp).cardinal_height(), Some(CardinalHeight::ExpTower));
        assert_eq!(Prototype::unit().cardinal_height(), None);
    }

    #[test]
    fn classification() {
        assert!(exp_w().is_infinite());
        assert!(w().reciprocal().is_infinitesimal());
        assert!(Prototype::unit().is_unit());
        assert!(!Prototype::unit().is_infinite() && !Prototype::unit().is_infinitesimal());
    }

    #[test]
    fn cardinal_jump_ordering() {
        let up = Prototype::tower(TowerDirection::Exp);
        let down = Prototype::tower(TowerDirection::Log);
        let deep_log = Prototype::log_atom(40);
        let exp_exp = Prototype::exp_of(&InNumber::from(exp_w())).unwrap();
        assert_eq!(up.compare(&exp_exp), Ordering::Greater);
        assert_eq!(down.compare(&deep_log), Ordering::Less);
        assert!(down.is_infinite());
        assert_eq!(up.mul(&down).unwrap_err(), ProtoError::TowerArithmetic("product of exp-tower and log-tower atoms"));
        assert!(up.mul(&w()).is_ok());
        assert!(down.log_of().is_err());
    }
}
