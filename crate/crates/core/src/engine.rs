//! Symbolic limits of sequence expressions.
//!
//! Every intermediate result is a value together with a bound on what was
//! dropped: truncation error (removable with more series terms) and
//! oscillation error (bounded but not convergent, e.g. `sin(n)`). A term is
//! certain when its class is strictly above both bounds.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::EngineError;
use crate::expr::SeqExpr;
use crate::innumber::InNumber;
use crate::limit::{Limit, Term};
use crate::prototype::{exp_class, Prototype};
use crate::scalar::{self, Scalar};

const GUARDS: [usize; 4] = [2, 4, 8, 16];
const EXTRA_TERMS: usize = 8;

#[derive(Clone, Debug, Default)]
struct Bound {
    trunc: Option<Prototype>,
    osc: Option<Prototype>,
}

fn max_class(a: Option<Prototype>, b: Option<Prototype>) -> Option<Prototype> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.compare(&y) == Ordering::Less { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn times(a: &Option<Prototype>, p: &Prototype) -> Option<Prototype> {
    a.as_ref().map(|x| x.product(p))
}

fn cross(a: &Option<Prototype>, b: &Option<Prototype>) -> Option<Prototype> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.product(y)),
        _ => None,
    }
}

impl Bound {
    fn exact() -> Self {
        Bound::default()
    }

    fn is_exact(&self) -> bool {
        self.trunc.is_none() && self.osc.is_none()
    }

    fn max(&self) -> Option<Prototype> {
        max_class(self.trunc.clone(), self.osc.clone())
    }

    fn join(&self, other: &Bound) -> Bound {
        Bound {
            trunc: max_class(self.trunc.clone(), other.trunc.clone()),
            osc: max_class(self.osc.clone(), other.osc.clone()),
        }
    }

    fn scaled(&self, p: &Prototype) -> Bound {
        Bound { trunc: times(&self.trunc, p), osc: times(&self.osc, p) }
    }

    fn add_trunc(mut self, p: Option<Prototype>) -> Bound {
        self.trunc = max_class(self.trunc, p);
        self
    }

    /// True when oscillation, not truncation, is what limits precision.
    fn osc_blocks(&self) -> bool {
        match (&self.osc, &self.trunc) {
            (Some(_), None) => true,
            (Some(o), Some(t)) => o.compare(t) != Ordering::Less,
            _ => false,
        }
    }

    fn at_least_unit(&self) -> bool {
        self.max().is_some_and(|m| !m.is_infinitesimal())
    }
}

#[derive(Clone, Debug)]
struct Approx {
    value: InNumber,
    err: Bound,
}

enum Failure {
    Engine(EngineError),
    NeedPrecision,
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure::Engine(e)
    }
}

type Step = Result<Approx, Failure>;

fn undefined(msg: impl Into<String>) -> Failure {
    Failure::Engine(EngineError::Undefined(msg.into()))
}

fn engine<E: Into<EngineError>>(e: E) -> Failure {
    Failure::Engine(e.into())
}

struct Evaluator {
    series_terms: usize,
    cap: usize,
}

impl Approx {
    fn exact(value: InNumber) -> Approx {
        Approx { value, err: Bound::exact() }
    }

    fn lead_class(&self) -> Option<Prototype> {
        self.value.leading_term().map(|t| t.proto)
    }
}

impl Evaluator {
    /// Drops value terms at or below the error bound and caps the length.
    fn settle(&self, value: InNumber, err: Bound) -> Approx {
        let Some(bound) = err.max() else {
            return Approx::exact(value);
        };
        let mut kept = Vec::new();
        let mut err = err;
        for t in value.expansion() {
            if t.proto.compare(&bound) != Ordering::Greater {
                break;
            }
            if kept.len() == self.cap {
                err = err.add_trunc(Some(t.proto));
                break;
            }
            kept.push(t);
        }
        Approx { value: InNumber::from(Limit::from_terms(kept)), err }
    }

    fn add(&self, a: &Approx, b: &Approx) -> Approx {
        self.settle(a.value.add(&b.value), a.err.join(&b.err))
    }

    fn neg(&self, a: &Approx) -> Approx {
        Approx { value: a.value.neg(), err: a.err.clone() }
    }

    fn mul(&self, a: &Approx, b: &Approx) -> Approx {
        let mut err = Bound::exact();
        if let Some(lb) = b.lead_class() {
            err = err.join(&a.err.scaled(&lb));
        }
        if let Some(la) = a.lead_class() {
            err = err.join(&b.err.scaled(&la));
        }
        err = err.join(&Bound {
            trunc: max_class(
                cross(&a.err.trunc, &b.err.trunc),
                max_class(cross(&a.err.trunc, &b.err.osc), cross(&a.err.osc, &b.err.trunc)),
            ),
            osc: cross(&a.err.osc, &b.err.osc),
        });
        self.settle(a.value.mul(&b.value), err)
    }

    fn scale(&self, a: &Approx, c: &Scalar) -> Approx {
        if c.is_zero() {
            return Approx::exact(InNumber::zero());
        }
        Approx { value: a.value.scale(c), err: a.err.clone() }
    }

    fn blocked(err: &Bound, what: &str) -> Failure {
        if err.osc_blocks() {
            Failure::Engine(EngineError::Oscillatory(what.to_string()))
        } else {
            Failure::NeedPrecision
        }
    }

    fn div(&self, a: &Approx, b: &Approx) -> Step {
        let Some(lead) = b.value.leading_term() else {
            if b.err.is_exact() {
                return Err(undefined("division by a zero limit"));
            }
            return Err(Self::blocked(&b.err, "divisor has no certain leading term"));
        };
        let lb = lead.proto;
        let inv_lb = lb.reciprocal();
        let value = a.value.div(&b.value).map_err(engine)?;
        let mut err = a.err.scaled(&inv_lb);
        let inv_lb2 = inv_lb.product(&inv_lb);
        let rel = b.err.scaled(&inv_lb2);
        if let Some(la) = a.lead_class() {
            err = err.join(&rel.scaled(&la));
        }
        err = err.join(&Bound {
            trunc: max_class(
                cross(&a.err.trunc, &rel.trunc),
                max_class(cross(&a.err.trunc, &rel.osc), cross(&a.err.osc, &rel.trunc)),
            ),
            osc: cross(&a.err.osc, &rel.osc),
        });
        Ok(self.settle(value, err))
    }

    fn powi(&self, a: &Approx, k: i64) -> Step {
        let base = if k < 0 { self.div(&Approx::exact(InNumber::one()), a)? } else { a.clone() };
        let mut acc = Approx::exact(InNumber::one());
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// `Σ_{j=0}^{K} coeffs(j)·u^j` with truncation error `lead(u)^{K+1}`.
    fn series(&self, u: &Approx, coeff: impl Fn(usize) -> Scalar) -> Approx {
        let mut acc = Approx::exact(InNumber::zero());
        let mut power = Approx::exact(InNumber::one());
        for j in 0..=self.series_terms {
            let c = coeff(j);
            if !c.is_zero() {
                acc = self.add(&acc, &self.scale(&power, &c));
            }
            power = self.mul(&power, u);
            if power.value.is_zero() && power.err.is_exact() {
                return acc;
            }
        }
        let rest = power.lead_class().or_else(|| power.err.max());
        let err = acc.err.clone().add_trunc(rest);
        self.settle(acc.value, err)
    }

    /// Splits an argument into infinite part, constant and infinitesimal part.
    fn split(&self, x: &Approx) -> Result<(Option<Prototype>, Scalar, Approx), Failure> {
        let s = x.value.split_infinite().map_err(engine)?;
        let inf = if s.is_zero_infinite_part() { None } else { Some(exp_class(&s.poly, s.ratio.as_ref())) };
        let k = s
            .rest
            .leading_term()
            .filter(|t| t.proto.is_unit())
            .map(|t| t.coeff)
            .unwrap_or_else(Scalar::zero);
        let u = s.rest.sub(&InNumber::constant(k.clone()));
        Ok((inf, k, self.settle(u, x.err.clone())))
    }

    fn ln(&self, x: &Approx) -> Step {
        let Some(lead) = x.value.leading_term() else {
            if x.err.is_exact() {
                return Err(undefined("logarithm of a zero limit"));
            }
            return Err(Self::blocked(&x.err, "argument of ln has no certain leading term"));
        };
        if !lead.coeff.is_positive() {
            return Err(undefined(format!("logarithm of a limit with negative leading term {lead}")));
        }
        let log_class = lead.proto.log_of().map_err(engine)?;
        let ln_c = real_fn(&lead.coeff, f64::ln)?;
        let inv = Term::new(Scalar::one() / &lead.coeff, lead.proto.reciprocal());
        let scaled = Approx { value: x.value.mul_term(&inv), err: x.err.scaled(&inv.proto) };
        let u = self.add(&scaled, &Approx::exact(InNumber::constant(-Scalar::one())));
        let s = self.series(&u, |j| {
            if j == 0 {
                Scalar::zero()
            } else {
                let sign = if j % 2 == 1 { 1 } else { -1 };
                scalar::ratio(sign, j as i64)
            }
        });
        let base = Approx::exact(log_class.add(&InNumber::constant(ln_c)));
        Ok(self.add(&base, &s))
    }

    fn exp(&self, x: &Approx) -> Step {
        if x.err.at_least_unit() {
            return Err(Self::blocked(&x.err, "argument of exp is not determined to a bounded error"));
        }
        let (inf, k, u) = self.split(x)?;
        let e_k = real_fn(&k, f64::exp)?;
        let s = self.series(&u, |j| Scalar::one() / factorial(j));
        let s = self.scale(&s, &e_k);
        Ok(match inf {
            Some(p) => Approx { value: s.value.mul_term(&Term::new(Scalar::one(), p.clone())), err: s.err.scaled(&p) },
            None => s,
        })
    }

    fn trig(&self, x: &Approx, cosine: bool) -> Step {
        let unit_osc = || Approx { value: InNumber::zero(), err: Bound { trunc: None, osc: Some(Prototype::unit()) } };
        if x.err.at_least_unit() {
            if x.err.osc_blocks() {
                return Ok(unit_osc());
            }
            return Err(Failure::NeedPrecision);
        }
        let (inf, k, u) = self.split(x)?;
        if inf.is_some() {
            return Ok(unit_osc());
        }
        let (sin_k, cos_k) = sin_cos(&k)?;
        let sin_u = self.series(&u, |j| match j % 4 {
            1 => Scalar::one() / factorial(j),
            3 => -Scalar::one() / factorial(j),
            _ => Scalar::zero(),
        });
        let cos_u = self.series(&u, |j| match j % 4 {
            0 => Scalar::one() / factorial(j),
            2 => -Scalar::one() / factorial(j),
            _ => Scalar::zero(),
        });
        Ok(if cosine {
            self.add(&self.scale(&cos_u, &cos_k), &self.scale(&sin_u, &-sin_k))
        } else {
            self.add(&self.scale(&cos_u, &sin_k), &self.scale(&sin_u, &cos_k))
        })
    }

    fn eval(&self, e: &SeqExpr) -> Step {
        Ok(match e {
            SeqExpr::Const(c) => Approx::exact(InNumber::constant(c.clone())),
            SeqExpr::IndexN => Approx::exact(InNumber::from(Prototype::omega())),
            SeqExpr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?),
            SeqExpr::Sub(a, b) => self.add(&self.eval(a)?, &self.neg(&self.eval(b)?)),
            SeqExpr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            SeqExpr::Div(a, b) => self.div(&self.eval(a)?, &self.eval(b)?)?,
            SeqExpr::PowConst(a, r) => {
                let x = self.eval(a)?;
                if r.is_integer() {
                    let k = r.numer().try_into().map_err(|_| undefined("exponent too large"))?;
                    self.powi(&x, k)?
                } else {
                    let l = self.ln(&x)?;
                    self.exp(&self.scale(&l, r))?
                }
            }
            SeqExpr::Exp(a) => self.exp(&self.eval(a)?)?,
            SeqExpr::Ln(a) => self.ln(&self.eval(a)?)?,
            SeqExpr::Sin(a) => self.trig(&self.eval(a)?, false)?,
            SeqExpr::Cos(a) => self.trig(&self.eval(a)?, true)?,
        })
    }
}

fn factorial(j: usize) -> Scalar {
    (1..=j as i64).fold(Scalar::one(), |acc, i| acc * scalar::int(i))
}

fn real_fn(x: &Scalar, f: fn(f64) -> f64) -> Result<Scalar, Failure> {
    if x.is_zero() && f(0.0) == 0.0 {
        return Ok(Scalar::zero());
    }
    if x.is_zero() {
        return scalar::approx_f64(f(0.0)).ok_or_else(|| undefined("non-finite constant"));
    }
    let v = f(scalar::to_f64(x));
    scalar::approx_f64(v).ok_or_else(|| undefined(format!("constant out of range: {}", scalar::render(x))))
}

/// `(sin k, cos k)` from a rational `tan(k/2)`, so that `sin² + cos² = 1`
/// holds exactly.
fn sin_cos(k: &Scalar) -> Result<(Scalar, Scalar), Failure> {
    if k.is_zero() {
        return Ok((Scalar::zero(), Scalar::one()));
    }
    let half = scalar::to_f64(k) / 2.0;
    let (s, c) = half.sin_cos();
    if c.abs() < 1e-300 {
        return Ok((Scalar::zero(), -Scalar::one()));
    }
    let t = scalar::approx_f64(s / c).ok_or_else(|| undefined("non-finite constant"))?;
    let d = Scalar::one() + &t * &t;
    Ok((scalar::int(2) * &t / &d, (Scalar::one() - &t * &t) / d))
}

/// The limit of `e` to `depth` terms. Exact results are returned as exact
/// ratios; otherwise the certain terms of the expansion.
pub fn limit_of(e: &SeqExpr, depth: usize) -> Result<InNumber, EngineError> {
    let depth = depth.max(1);
    let mut last = None;
    for guard in GUARDS {
        let ev = Evaluator { series_terms: depth + guard, cap: depth + guard + EXTRA_TERMS };
        let a = match ev.eval(e) {
            Ok(a) => a,
            Err(Failure::Engine(err)) => return Err(err),
            Err(Failure::NeedPrecision) => {
                last = None;
                continue;
            }
        };
        if a.err.is_exact() {
            return Ok(a.value);
        }
        let certain = a.value.truncate(depth);
        if certain.len() >= depth {
            return Ok(InNumber::from(certain));
        }
        if a.err.osc_blocks() {
            return Err(EngineError::Oscillatory(format!(
                "{e} has only {} certain term(s) before a bounded oscillating remainder",
                certain.len()
            )));
        }
        last = Some(certain);
    }
    match last {
        Some(l) => Ok(InNumber::from(l)),
        None => Err(EngineError::Undefined(format!("{e}: a divisor or logarithm argument vanishes to working precision"))),
    }
}

/// The leading term, or `None` when the limit is zero.
pub fn leading_term_limit(e: &SeqExpr) -> Result<Option<Term>, EngineError> {
    Ok(limit_of(e, 1)?.leading_term())
}

/// Whether `limit_of(e, depth)` succeeds; the error is returned as the reason.
pub fn is_smooth(e: &SeqExpr, depth: usize) -> (bool, Option<EngineError>) {
    match limit_of(e, depth) {
        Ok(_) => (true, None),
        Err(err) => (false, Some(err)),
    }
}

/// The classical limit when the leading term is a nonzero constant.
pub fn cauchy_check(e: &SeqExpr) -> Result<Option<Scalar>, EngineError> {
    Ok(leading_term_limit(e)?.filter(|t| t.proto.is_unit()).map(|t| t.coeff))
}
