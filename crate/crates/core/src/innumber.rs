//! Ratios of limits: the ordered field of infinite, finite and
//! infinitesimal numbers.
//!
//! Values are stored as exact `(num, den)` pairs. The canonical form scales
//! the denominator so its leading term is exactly `1`; a single-term
//! denominator is divided out, and exact long division is attempted so
//! that ratios which are really limits become limits. Equality is always
//! decided by cross-multiplication, never by form.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, ProtoError};
use crate::limit::{Limit, Term};
use crate::prototype::{BaseAtom, Prototype};
use crate::scalar::Scalar;

/// Upper bound on long-division steps when testing for exact division.
const EXACT_DIVISION_STEPS: usize = 32;
/// Upper bound on infinite quotient terms when splitting off an infinite part.
const INFINITE_PART_STEPS: usize = 64;

#[derive(Clone, Debug)]
pub struct InNumber {
    num: Limit,
    den: Limit,
}

/// `x = poly + ratio + rest` with `poly` and `ratio` purely infinite and
/// `rest` holding the finite and infinitesimal part exactly.
#[derive(Clone, Debug)]
pub struct InfiniteSplit {
    pub poly: Limit,
    pub ratio: Option<InNumber>,
    pub rest: InNumber,
}

impl InfiniteSplit {
    pub fn is_zero_infinite_part(&self) -> bool {
        self.poly.is_zero() && self.ratio.is_none()
    }

    /// `poly + ratio` as one number.
    pub fn infinite_part(&self) -> InNumber {
        let p = InNumber::from(self.poly.clone());
        match &self.ratio {
            Some(r) => p.add(r),
            None => p,
        }
    }
}

impl InNumber {
    pub fn new(num: Limit, den: Limit) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn zero() -> Self {
        InNumber { num: Limit::zero(), den: Limit::one() }
    }

    pub fn one() -> Self {
        InNumber { num: Limit::one(), den: Limit::one() }
    }

    pub fn constant(c: Scalar) -> Self {
        InNumber::from(Limit::constant(c))
    }

    fn normalized(num: Limit, den: Limit) -> Self {
        let lead = den.leading().expect("nonzero denominator");
        let inv = Term::new(Scalar::one() / &lead.coeff, lead.proto.reciprocal());
        let num = num.scale_by_term(&inv);
        let den = den.scale_by_term(&inv);
        if den.len() == 1 || num.is_zero() {
            return InNumber { num, den: Limit::one() };
        }
        match exact_quotient(&num, &den) {
            Some(q) => InNumber { num: q, den: Limit::one() },
            None => InNumber { num, den },
        }
    }

    pub fn num(&self) -> &Limit {
        &self.num
    }

    pub fn den(&self) -> &Limit {
        &self.den
    }

    /// True when the value is a finite sum (denominator one).
    pub fn is_limit(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_limit(&self) -> Option<&Limit> {
        self.is_limit().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn structurally_eq(&self, other: &InNumber) -> bool {
        self.num.structurally_eq(&other.num) && self.den.structurally_eq(&other.den)
    }

    pub fn add(&self, other: &InNumber) -> InNumber {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.is_limit() && other.is_limit() {
            return InNumber::from(self.num.add(&other.num));
        }
        if self.den.structurally_eq(&other.den) {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> InNumber {
        InNumber { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &InNumber) -> InNumber {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &InNumber) -> InNumber {
        if self.is_zero() || other.is_zero() {
            return InNumber::zero();
        }
        if self.is_limit() && other.is_limit() {
            return InNumber::from(self.num.mul(&other.num));
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Scalar) -> InNumber {
        InNumber { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_term(&self, t: &Term) -> InNumber {
        InNumber { num: self.num.scale_by_term(t), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<InNumber, AlgebraError> {
        InNumber::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &InNumber) -> Result<InNumber, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, k: i64) -> Result<InNumber, AlgebraError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = InNumber::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Sign of the value; denominators have a positive leading term.
    pub fn sign(&self) -> Ordering {
        self.num.sign()
    }

    /// Value order via `num_a·den_b` vs `num_b·den_a`.
    pub fn compare(&self, other: &InNumber) -> Ordering {
        if self.is_limit() && other.is_limit() {
            return self.num.compare(&other.num);
        }
        self.num.mul(&other.den).compare(&other.num.mul(&self.den))
    }

    /// Long-division expansion, one term at a time.
    pub fn expansion(&self) -> Expansion<'_> {
        Expansion { rem: self.num.clone(), den: &self.den }
    }

    /// The first `depth` terms of the expansion (fewer if it terminates).
    pub fn truncate(&self, depth: usize) -> Limit {
        Limit::from_terms(self.expansion().take(depth).collect())
    }

    pub fn leading_term(&self) -> Option<Term> {
        self.num.leading().cloned()
    }

    /// The `i`-th expansion term, counting from one.
    pub fn term_at(&self, i: usize) -> Option<Term> {
        if i == 0 {
            return None;
        }
        self.expansion().nth(i - 1)
    }

    /// Expansion terms of class strictly above `bound`, at most `cap` of them.
    pub fn terms_above(&self, bound: &Prototype, cap: usize) -> Limit {
        Limit::from_terms(
            self.expansion()
                .take(cap)
                .take_while(|t| t.proto.compare(bound) == Ordering::Greater)
                .collect(),
        )
    }

    /// Separates the purely infinite part.
    ///
    /// For a ratio, each numerator term `n` is handled on its own: if the
    /// expansion of `n/den` is infinite in every term (its logarithm
    /// dominates every power of the smallest denominator ratio) it joins the
    /// ratio part; otherwise long division must reach a non-infinite term in
    /// finitely many steps.
    pub fn split_infinite(&self) -> Result<InfiniteSplit, ProtoError> {
        if self.is_limit() {
            let (inf, rest): (Vec<Term>, Vec<Term>) =
                self.num.terms().iter().cloned().partition(|t| t.proto.is_infinite());
            return Ok(InfiniteSplit {
                poly: Limit::from_terms(inf),
                ratio: None,
                rest: InNumber::from(Limit::from_terms(rest)),
            });
        }
        let smallest = self.den.last().expect("nonzero").proto.reciprocal();
        let log_smallest = smallest.log_of()?;
        let mut poly = Limit::zero();
        let mut ratio_num = Limit::zero();
        let mut rest_num = Limit::zero();
        for n in self.num.terms() {
            if all_terms_infinite(&n.proto, &log_smallest)? {
                ratio_num = ratio_num.add(&Limit::from_term(n.clone()));
                continue;
            }
            let piece = Limit::from_term(n.clone());
            let mut quotient = Limit::zero();
            let mut finished = false;
            for t in (Expansion { rem: piece.clone(), den: &self.den }).take(INFINITE_PART_STEPS) {
                if !t.proto.is_infinite() {
                    finished = true;
                    break;
                }
                quotient = quotient.add(&Limit::from_term(t));
            }
            if !finished && !piece.sub(&quotient.mul(&self.den)).is_zero() {
                return Err(ProtoError::NotRepresentable(self.to_string()));
            }
            rest_num = rest_num.add(&piece.sub(&quotient.mul(&self.den)));
            poly = poly.add(&quotient);
        }
        let ratio = (!ratio_num.is_zero()).then(|| InNumber::normalized(ratio_num, self.den.clone()));
        Ok(InfiniteSplit { poly, ratio, rest: InNumber::normalized(rest_num, self.den.clone()) })
    }

    /// Purely infinite: no finite or infinitesimal part, and nonzero.
    pub fn is_purely_infinite(&self) -> bool {
        match self.split_infinite() {
            Ok(s) => s.rest.is_zero() && !s.is_zero_infinite_part(),
            Err(_) => false,
        }
    }
}

/// `p·mᵏ` infinite for every `k`, where `ln(1/m)` is given.
fn all_terms_infinite(p: &Prototype, log_inv_m: &InNumber) -> Result<bool, ProtoError> {
    if !p.is_infinite() {
        return Ok(false);
    }
    let log_p = p.log_of()?;
    match (log_p.leading_term(), log_inv_m.leading_term()) {
        (Some(a), Some(b)) => Ok(a.proto.compare(&b.proto) == Ordering::Greater),
        _ => Ok(false),
    }
}

/// Exponent sums per kind of base: ω, `ln(ω)`, deeper logarithms, and
/// exponentials. Each is additive under products of monomials.
const WEIGHTS: usize = 4;

fn weights(p: &Prototype) -> Option<[Scalar; WEIGHTS]> {
    let mut w: [Scalar; WEIGHTS] = Default::default();
    for (base, e) in p.factors() {
        let slot = match base {
            BaseAtom::Log(0) => 0,
            BaseAtom::Log(1) => 1,
            BaseAtom::Log(_) => 2,
            BaseAtom::Exp(_) if !base.is_ratio_exp() => 3,
            _ => return None,
        };
        w[slot] += e;
    }
    Some(w)
}

/// For each weight, the interval every quotient term must fall in:
/// `[min(num) − min(den), max(num) − max(den)]`. `None` when the weights do
/// not apply; an empty interval proves there is no exact quotient.
fn quotient_window(num: &Limit, den: &Limit) -> Option<Vec<(Scalar, Scalar)>> {
    let range = |l: &Limit| -> Option<Vec<(Scalar, Scalar)>> {
        let mut out: Option<Vec<(Scalar, Scalar)>> = None;
        for t in l.terms() {
            let w = weights(&t.proto)?;
            out = Some(match out {
                None => w.iter().map(|x| (x.clone(), x.clone())).collect(),
                Some(r) => r.into_iter().zip(w).map(|((lo, hi), x)| (lo.min(x.clone()), hi.max(x))).collect(),
            });
        }
        out
    };
    let (n, d) = (range(num)?, range(den)?);
    Some(n.into_iter().zip(d).map(|((nlo, nhi), (dlo, dhi))| (nlo - dlo, nhi - dhi)).collect())
}

fn in_window(p: &Prototype, window: &[(Scalar, Scalar)]) -> bool {
    match weights(p) {
        Some(w) => w.iter().zip(window).all(|(x, (lo, hi))| lo <= x && x <= hi),
        None => true,
    }
}

/// Exact quotient of `num` by `den` if it exists within the step bound.
fn exact_quotient(num: &Limit, den: &Limit) -> Option<Limit> {
    let lowest = num.last()?.div(den.last()?).proto;
    let window = quotient_window(num, den);
    if let Some(w) = &window {
        if w.iter().any(|(lo, hi)| lo > hi) {
            return None;
        }
    }
    let mut rem = num.clone();
    let mut q = Vec::new();
    for _ in 0..EXACT_DIVISION_STEPS {
        let Some(lead) = rem.leading() else {
            return Some(Limit::from_terms(q));
        };
        let t = lead.div(den.leading()?);
        if t.proto.compare(&lowest) == Ordering::Less {
            return None;
        }
        if let Some(w) = &window {
            if !in_window(&t.proto, w) {
                return None;
            }
        }
        rem = rem.sub(&den.scale_by_term(&t));
        q.push(t);
    }
    rem.is_zero().then(|| Limit::from_terms(q))
}

/// Iterator over long-division terms of `rem / den`.
pub struct Expansion<'a> {
    rem: Limit,
    den: &'a Limit,
}

impl Iterator for Expansion<'_> {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        let lead = self.rem.leading()?;
        let t = lead.div(self.den.leading()?);
        self.rem = self.rem.sub(&self.den.scale_by_term(&t));
        Some(t)
    }
}

impl PartialEq for InNumber {
    fn eq(&self, other: &Self) -> bool {
        self.structurally_eq(other) || self.compare(other) == Ordering::Equal
    }
}

impl From<Limit> for InNumber {
    fn from(l: Limit) -> Self {
        InNumber { num: l, den: Limit::one() }
    }
}

impl From<Prototype> for InNumber {
    fn from(p: Prototype) -> Self {
        InNumber::from(Limit::from(p))
    }
}

impl From<Term> for InNumber {
    fn from(t: Term) -> Self {
        InNumber::from(Limit::from_term(t))
    }
}

impl fmt::Display for InNumber {
    /// Ratios are shown with the denominator scaled so its last term is a
    /// constant, e.g. `(w + 1)/(w - 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_limit() {
            return write!(f, "{}", self.num);
        }
        let last = self.den.last().expect("nonzero");
        let k = Term::new(Scalar::one() / last.coeff.abs(), last.proto.reciprocal());
        let (num, den) = (self.num.scale_by_term(&k), self.den.scale_by_term(&k));
        let wrap = |l: &Limit| if l.len() > 1 { format!("({l})") } else { l.to_string() };
        let num_s = if num.len() == 1 && num.terms()[0].coeff < Scalar::zero() { format!("({num})") } else { wrap(&num) };
        write!(f, "{}/({})", num_s, den)
    }
}
