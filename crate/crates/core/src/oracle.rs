//! Numeric evaluation at large finite indices, used to cross-check the
//! symbolic order and to fit leading terms to sampled data.

use std::cmp::Ordering;

use serde::Deserialize;

use crate::error::OracleError;
use crate::expr::SeqExpr;
use crate::innumber::InNumber;
use crate::limit::Limit;
use crate::prototype::{BaseAtom, Prototype};
use crate::scalar::{self, Scalar};
use crate::tower::{TowerValue, EQUAL_TOLERANCE};

/// Relative drift of `value/p(n)` over the sample tail below which a fit is
/// accepted.
pub const DEFAULT_DRIFT_TOLERANCE: f64 = 1e-2;
pub const MIN_SAMPLES: usize = 8;

/// `n ∈ {10², 10³, …, 10⁹}`.
pub fn default_schedule() -> Vec<TowerValue> {
    (2..=9).map(|k| TowerValue::from_f64(10f64.powi(k)).expect("finite")).collect()
}

fn domain(n: &TowerValue, what: impl Into<String>) -> OracleError {
    OracleError::DomainError { at: n.to_string(), what: what.into() }
}

fn scalar_value(c: &Scalar) -> TowerValue {
    TowerValue::from_f64(scalar::to_f64(c)).unwrap_or_else(TowerValue::zero)
}

/// `ln(b(n))` for a single base.
fn log_base(b: &BaseAtom, n: &TowerValue) -> Result<TowerValue, OracleError> {
    match b {
        BaseAtom::Log(k) => {
            let mut v = *n;
            for depth in 0..=*k {
                v = v.ln().ok_or_else(|| domain(n, format!("ln applied {depth} times is not positive")))?;
            }
            Ok(v)
        }
        BaseAtom::Exp(arg) => eval_limit(arg, n),
        BaseAtom::Tower(_) => Err(OracleError::TowerAtomNotEvaluable),
    }
}

/// `ln(p(n)) = Σ rⱼ·ln(bⱼ(n))`.
pub fn log_eval_proto(p: &Prototype, n: &TowerValue) -> Result<TowerValue, OracleError> {
    let mut acc = TowerValue::zero();
    for (b, r) in p.factors() {
        acc = acc.add(&log_base(b, n)?.scale(scalar::to_f64(r)));
    }
    Ok(acc)
}

/// `Π bⱼ(n)^rⱼ`, multiplied factor by factor so small values stay exact.
/// Factors too small for a double go through the log domain instead.
pub fn eval_proto(p: &Prototype, n: &TowerValue) -> Result<TowerValue, OracleError> {
    let mut acc = TowerValue::from_f64(1.0).expect("finite");
    for (b, r) in p.factors() {
        let v = match b {
            BaseAtom::Log(0) => *n,
            BaseAtom::Log(k) => log_base(&BaseAtom::Log(k - 1), n)?,
            _ => log_base(b, n)?.exp(),
        };
        let v = v.powf(scalar::to_f64(r)).ok_or_else(|| domain(n, format!("{b} is not positive")))?;
        if v.is_zero() {
            return Ok(log_eval_proto(p, n)?.exp());
        }
        acc = acc.mul(&v);
    }
    Ok(acc)
}

pub fn eval_proto_at(p: &Prototype, n: f64) -> Result<TowerValue, OracleError> {
    eval_proto(p, &index(n)?)
}

fn index(n: f64) -> Result<TowerValue, OracleError> {
    TowerValue::from_f64(n).ok_or_else(|| OracleError::DomainError { at: n.to_string(), what: "index is not finite".into() })
}

fn eval_sum(l: &Limit, n: &TowerValue) -> Result<TowerValue, OracleError> {
    let mut acc = TowerValue::zero();
    for t in l.terms() {
        acc = acc.add(&eval_proto(&t.proto, n)?.mul(&scalar_value(&t.coeff)));
    }
    Ok(acc)
}

pub fn eval_limit(x: &InNumber, n: &TowerValue) -> Result<TowerValue, OracleError> {
    let num = eval_sum(x.num(), n)?;
    if x.is_limit() {
        return Ok(num);
    }
    num.div(&eval_sum(x.den(), n)?).ok_or_else(|| domain(n, "denominator vanishes"))
}

pub fn eval_seq(e: &SeqExpr, n: &TowerValue) -> Result<TowerValue, OracleError> {
    let go = |x: &SeqExpr| eval_seq(x, n);
    Ok(match e {
        SeqExpr::Const(c) => scalar_value(c),
        SeqExpr::IndexN => *n,
        SeqExpr::Add(a, b) => go(a)?.add(&go(b)?),
        SeqExpr::Sub(a, b) => go(a)?.sub(&go(b)?),
        SeqExpr::Mul(a, b) => go(a)?.mul(&go(b)?),
        SeqExpr::Div(a, b) => go(a)?.div(&go(b)?).ok_or_else(|| domain(n, "division by zero"))?,
        SeqExpr::PowConst(a, r) => {
            let x = go(a)?;
            let rf = scalar::to_f64(r);
            if x.is_negative() {
                if !r.is_integer() {
                    return Err(domain(n, "fractional power of a negative value"));
                }
                let m = x.abs().powf(rf).ok_or_else(|| domain(n, "power of zero"))?;
                if r.numer() % 2 != 0.into() {
                    m.neg()
                } else {
                    m
                }
            } else {
                x.powf(rf).ok_or_else(|| domain(n, "negative power of zero"))?
            }
        }
        SeqExpr::Exp(a) => go(a)?.exp(),
        SeqExpr::Ln(a) => go(a)?.ln().ok_or_else(|| domain(n, "ln of a non-positive value"))?,
        SeqExpr::Sin(a) | SeqExpr::Cos(a) => {
            let x = go(a)?;
            if x.height() > 0 {
                return Err(domain(n, "sin/cos argument too large to evaluate"));
            }
            let v = if matches!(e, SeqExpr::Sin(_)) { x.to_f64().sin() } else { x.to_f64().cos() };
            TowerValue::from_f64(v).expect("finite")
        }
    })
}

pub fn eval_seq_at(e: &SeqExpr, n: f64) -> Result<TowerValue, OracleError> {
    eval_seq(e, &index(n)?)
}

/// Sign of `ln p(n) − ln q(n)`, summed base by base so that shared factors
/// cancel exactly.
pub fn compare_at(p: &Prototype, q: &Prototype, n: &TowerValue) -> Result<Ordering, OracleError> {
    let mut merged: Vec<(&BaseAtom, Scalar)> = Vec::new();
    let all = p.factors().iter().map(|(b, r)| (b, r.clone())).chain(q.factors().iter().map(|(b, s)| (b, -s.clone())));
    for (b, r) in all {
        match merged.iter_mut().find(|(m, _)| m.structurally_eq(b)) {
            Some(entry) => entry.1 += r,
            None => merged.push((b, r)),
        }
    }
    let mut d = TowerValue::zero();
    let mut largest = TowerValue::zero();
    for (b, r) in merged.iter().filter(|(_, r)| *r != Scalar::from_integer(0.into())) {
        let contrib = log_base(b, n)?.scale(scalar::to_f64(r));
        if contrib.abs().compare(&largest) == Ordering::Greater {
            largest = contrib.abs();
        }
        d = d.add(&contrib);
    }
    if d.is_zero() || d.abs().compare(&largest.scale(EQUAL_TOLERANCE)) != Ordering::Greater {
        return Ok(Ordering::Equal);
    }
    Ok(if d.is_negative() { Ordering::Less } else { Ordering::Greater })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericComparison {
    /// Ordering at the last schedule point.
    pub ordering: Ordering,
    /// Constant ordering over the last half of the schedule.
    pub stable: bool,
    pub per_point: Vec<Ordering>,
}

pub fn numeric_compare(p: &Prototype, q: &Prototype, schedule: &[TowerValue]) -> Result<NumericComparison, OracleError> {
    if schedule.is_empty() {
        return Err(OracleError::BadSamples { needed: 1, got: 0 });
    }
    let per_point = schedule.iter().map(|n| compare_at(p, q, n)).collect::<Result<Vec<_>, _>>()?;
    let tail = &per_point[per_point.len() / 2..];
    let ordering = *per_point.last().expect("nonempty");
    Ok(NumericComparison { ordering, stable: tail.iter().all(|o| *o == ordering), per_point })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fit {
    pub coeff: f64,
    pub proto: Prototype,
    pub drift: f64,
    /// Drift of every candidate, in input order.
    pub report: Vec<(Prototype, f64)>,
}

/// Picks the candidate whose ratio `value/p(n)` varies least over the last
/// half of the samples.
pub fn estimate_leading_term(samples: &[(f64, f64)], candidates: &[Prototype]) -> Result<Fit, OracleError> {
    estimate_leading_term_with(samples, candidates, DEFAULT_DRIFT_TOLERANCE)
}

pub fn estimate_leading_term_with(samples: &[(f64, f64)], candidates: &[Prototype], tolerance: f64) -> Result<Fit, OracleError> {
    let increasing = samples.windows(2).all(|w| w[0].0 < w[1].0);
    if samples.len() < MIN_SAMPLES || !increasing {
        let got = if increasing { samples.len() } else { 0 };
        return Err(OracleError::BadSamples { needed: MIN_SAMPLES, got });
    }
    let tail = &samples[samples.len() / 2..];
    let mut report = Vec::new();
    let mut best: Option<(f64, f64, &Prototype)> = None;
    for p in candidates {
        let mut ratios = Vec::with_capacity(tail.len());
        for &(n, v) in tail {
            let pn = eval_proto_at(p, n)?;
            let r = index(v)?.div(&pn).map(|x| x.to_f64()).unwrap_or(f64::INFINITY);
            ratios.push(r);
        }
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let (lo, hi) = ratios.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| (lo.min(r), hi.max(r)));
        let drift = if mean.is_finite() && mean != 0.0 { (hi - lo) / mean.abs() } else { f64::INFINITY };
        let drift = if drift.is_nan() { f64::INFINITY } else { drift };
        report.push((p.clone(), drift));
        if best.is_none_or(|(d, _, _)| drift < d) {
            best = Some((drift, mean, p));
        }
    }
    match best {
        Some((drift, coeff, proto)) if drift < tolerance => Ok(Fit { coeff, proto: proto.clone(), drift, report }),
        Some((drift, ..)) => Err(OracleError::NoStableCandidate { best_drift: drift }),
        None => Err(OracleError::NoStableCandidate { best_drift: f64::INFINITY }),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonSample {
    Pair(f64, f64),
    Object { n: f64, value: f64 },
}

/// Samples from CSV lines `n,value` (an optional header is skipped) or a
/// JSON array of `[n, value]` pairs or `{"n": .., "value": ..}` objects.
pub fn parse_samples(text: &str) -> Result<Vec<(f64, f64)>, OracleError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let items: Vec<JsonSample> = serde_json::from_str(trimmed).map_err(|e| OracleError::Ingest(e.to_string()))?;
        return Ok(items
            .into_iter()
            .map(|s| match s {
                JsonSample::Pair(n, v) | JsonSample::Object { n, value: v } => (n, v),
            })
            .collect());
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| OracleError::Ingest(e.to_string()))?;
        if record.len() != 2 {
            return Err(OracleError::Ingest(format!("line {}: expected 2 fields, got {}", i + 1, record.len())));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(n), Ok(v)) => out.push((n, v)),
            _ if i == 0 => continue,
            _ => return Err(OracleError::Ingest(format!("line {}: not a number", i + 1))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn w(k: i64) -> Prototype {
        Prototype::omega().pow(&int(k)).unwrap()
    }

    fn exp_w() -> Prototype {
        Prototype::exp_of(&InNumber::from(Prototype::omega())).unwrap()
    }

    fn tv(x: f64) -> TowerValue {
        TowerValue::from_f64(x).unwrap()
    }

    #[test]
    fn prototype_values() {
        let v = eval_proto_at(&w(2), 100.0).unwrap();
        assert_eq!((v.height(), v.mantissa().round()), (0, 10000.0));
        let e = eval_proto_at(&exp_w(), 100.0).unwrap();
        assert_eq!(e.height(), 1);
        assert!((e.mantissa() - 100.0).abs() < 1e-9);
        let t = Prototype::tower(crate::prototype::TowerDirection::Exp);
        assert_eq!(eval_proto_at(&t, 100.0), Err(OracleError::TowerAtomNotEvaluable));
        let sqrt = Prototype::exp_of(&InNumber::from(Prototype::omega().pow(&scalar::ratio(1, 2)).unwrap())).unwrap();
        let v = eval_proto_at(&exp_w().div(&sqrt).unwrap(), 1e6).unwrap();
        assert_eq!(v.height(), 1);
        assert!((v.mantissa() - 999_000.0).abs() < 1e-6);
    }

    #[test]
    fn log_atoms_need_a_large_enough_index() {
        assert!(matches!(eval_proto_at(&Prototype::log_atom(2), 2.0), Err(OracleError::DomainError { .. })));
        assert!(eval_proto_at(&Prototype::log_atom(2), 100.0).is_ok());
    }

    #[test]
    fn comparison_along_schedule() {
        let schedule: Vec<_> = [1e2, 1e4, 1e6, 1e8].iter().map(|&x| tv(x)).collect();
        let c = numeric_compare(&Prototype::log_atom(1), &Prototype::omega(), &schedule).unwrap();
        assert_eq!((c.ordering, c.stable), (Ordering::Less, true));
        let c = numeric_compare(&exp_w(), &exp_w(), &schedule).unwrap();
        assert_eq!((c.ordering, c.stable), (Ordering::Equal, true));
    }

    #[test]
    fn sequence_values() {
        let e = SeqExpr::n().add(SeqExpr::c(1)).div(SeqExpr::n().sub(SeqExpr::c(1)));
        let v = eval_seq_at(&e, 1e6).unwrap().to_f64();
        assert!((v - 1.000002).abs() < 1e-9);
        let x = eval_seq_at(&SeqExpr::n().exp(), 1000.0).unwrap();
        assert_eq!((x.height(), x.mantissa()), (1, 1000.0));
        let l = InNumber::from(Limit::omega().add(&Limit::one()));
        assert_eq!(eval_limit(&l, &tv(10.0)).unwrap().to_f64(), 11.0);
    }

    #[test]
    fn fitting() {
        let samples: Vec<_> = (4..=16).map(|k| {
            let n = 2f64.powi(k);
            (n, 3.0 * n * n + 5.0 * n)
        }).collect();
        let fit = estimate_leading_term(&samples, &[w(1), w(2), w(3)]).unwrap();
        assert!(fit.proto.structurally_eq(&w(2)));
        assert!((fit.coeff - 3.0).abs() < 1e-2);
        let constant: Vec<_> = (1..=10).map(|k| (k as f64, 7.0)).collect();
        let fit = estimate_leading_term(&constant, &[Prototype::unit()]).unwrap();
        assert_eq!(fit.coeff, 7.0);
        let osc: Vec<_> = (1..=40).map(|k| (k as f64, (k as f64).sin())).collect();
        assert!(matches!(estimate_leading_term(&osc, &[Prototype::unit(), w(1)]), Err(OracleError::NoStableCandidate { .. })));
        assert!(matches!(estimate_leading_term(&constant[..5], &[Prototype::unit()]), Err(OracleError::BadSamples { .. })));
    }

    #[test]
    fn sample_ingestion() {
        let csv = "n,value\n1, 2.5\n2,3\n";
        assert_eq!(parse_samples(csv).unwrap(), vec![(1.0, 2.5), (2.0, 3.0)]);
        assert_eq!(parse_samples("[[1, 2], [3, 4.5]]").unwrap(), vec![(1.0, 2.0), (3.0, 4.5)]);
        assert_eq!(parse_samples(r#"[{"n": 1, "value": 2}]"#).unwrap(), vec![(1.0, 2.0)]);
        assert!(parse_samples("1,2\nx,3\n").is_err());
    }
}
