//! Ordered chains of the first generations of prototypes.
//!
//! Entries are templates in the value syntax with real parameters `α`, `β`,
//! `γ`, `δ`. Each chain lists the combined generations up to its own, in
//! increasing order.

use std::cmp::Ordering;

use crate::error::InputError;
use crate::parse::parse_proto;
use crate::prototype::Prototype;
use crate::scalar::{self, Scalar};

const GENERATION_0: &[&str] = &["w"];

const GENERATION_1: &[&str] = &["ln(w)", "w^α", "exp(w)"];

const GENERATION_2: &[&str] = &[
    "ln(ln(w))",
    "ln(w)^α",
    "w^α/ln(w)",
    "w^α",
    "w^α*ln(w)",
    "exp(w)/w^α",
    "exp(w)/ln(w)",
    "exp(α*w)",
    "exp(w^α)",
    "exp(w)*ln(w)",
    "exp(w)*w^α",
    "exp(exp(w))",
];

const GENERATION_3: &[&str] = &[
    "ln(ln(ln(w)))",
    "ln(ln(w))^α",
    "ln(w)^α/ln(ln(w))",
    "ln(w)^α",
    "ln(w)^α*ln(ln(w))",
    "w^α/ln(w)/ln(ln(w))",
    "w^α/ln(w)^β",
    "w^α*ln(ln(w))/ln(w)",
    "w^α/ln(ln(w))",
    "exp(α*ln(w)^β)",
    "w^α*ln(ln(w))",
    "w^α*ln(w)/ln(ln(w))",
    "w^α*ln(w)^β",
    "w^α*ln(w)*ln(ln(w))",
    "exp(w^α/ln(w))",
    "exp(α*w^β)/w^γ/ln(w)^δ",
    "exp(w)/w^α/ln(ln(w))",
    "exp(α*w^β)/w^γ",
    "exp(w)*ln(ln(w))/w^α",
    "exp(α*w^β)*ln(w)^γ/w^δ",
    "exp(w)/ln(w)/ln(ln(w))",
    "exp(α*w^β)/ln(w)^γ",
    "exp(w)*ln(ln(w))/ln(w)",
    "exp(α*w^β)/ln(ln(w))",
    "exp(α*w^β)",
    "exp(α*w^β)*ln(ln(w))",
    "exp(w)*ln(w)/ln(ln(w))",
    "exp(α*w^β)*ln(w)^γ",
    "exp(w)*ln(w)*ln(ln(w))",
    "exp(α*w^β)*w^γ/ln(w)^δ",
    "exp(w)*w^α/ln(ln(w))",
    "exp(α*w^β)*w^γ",
    "exp(w)*w^α*ln(ln(w))",
    "exp(α*w^β)*w^γ*ln(w)^δ",
    "exp(w^α*ln(w))",
    "exp(exp(w)/w^α)",
    "exp(exp(w)/ln(w))",
    "exp(exp(w) - w)/w^α",
    "exp(exp(w) - w)/ln(w)",
    "exp(exp(w) - α*w^β)",
    "exp(exp(w) - w)*ln(w)",
    "exp(exp(w) - w)*w^α",
    "exp(exp(w))/w^α/ln(w)",
    "exp(exp(w))/w^α",
    "exp(exp(w))*ln(w)/w^α",
    "exp(exp(w))/ln(w)^α",
    "exp(exp(w))/ln(ln(w))",
    "exp(exp(α*w^β))",
    "exp(exp(w))*ln(ln(w))",
    "exp(exp(w))*ln(w)^α",
    "exp(exp(w))*w^α/ln(w)",
    "exp(exp(w))*w^α",
    "exp(exp(w))*w^α*ln(w)",
    "exp(exp(w) + w)/w^α",
    "exp(exp(w) + w)/ln(w)",
    "exp(exp(w) + α*w^β)",
    "exp(exp(w) + w)*ln(w)",
    "exp(exp(w) + w)*w^α",
    "exp(exp(w)*ln(w))",
    "exp(exp(w)*w^α)",
    "exp(exp(exp(w)))",
];

/// Templates of the chain for `generation` (0 to 3).
pub fn templates(generation: u32) -> Option<&'static [&'static str]> {
    match generation {
        0 => Some(GENERATION_0),
        1 => Some(GENERATION_1),
        2 => Some(GENERATION_2),
        3 => Some(GENERATION_3),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
}

impl Params {
    pub fn ones() -> Self {
        let one = scalar::int(1);
        Params { alpha: one.clone(), beta: one.clone(), gamma: one.clone(), delta: one }
    }

    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar) -> Self {
        Params { alpha, beta, gamma, delta }
    }
}

/// Substitutes parameters, each wrapped in parentheses.
pub fn instantiate(template: &str, params: &Params) -> String {
    let mut out = String::with_capacity(template.len() + 8);
    for c in template.chars() {
        let value = match c {
            'α' => &params.alpha,
            'β' => &params.beta,
            'γ' => &params.gamma,
            'δ' => &params.delta,
            _ => {
                out.push(c);
                continue;
            }
        };
        out.push('(');
        out.push_str(&scalar::render(value));
        out.push(')');
    }
    out
}

/// Every entry of the chain as `(template, prototype)`.
pub fn chain(generation: u32, params: &Params) -> Option<Result<Vec<(&'static str, Prototype)>, InputError>> {
    let t = templates(generation)?;
    Some(t.iter().map(|s| Ok((*s, parse_proto(&instantiate(s, params))?))).collect())
}

/// One class of a chain with every template that produced it.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub proto: Prototype,
    pub sources: Vec<&'static str>,
}

/// The chain at all parameters equal to one, with equal classes merged.
pub fn table(generation: u32) -> Option<Result<Vec<TableRow>, InputError>> {
    let entries = match chain(generation, &Params::ones())? {
        Ok(e) => e,
        Err(e) => return Some(Err(e)),
    };
    let mut rows: Vec<TableRow> = Vec::new();
    for (src, p) in entries {
        match rows.iter_mut().find(|r| r.proto.compare(&p) == Ordering::Equal) {
            Some(row) => row.sources.push(src),
            None => rows.push(TableRow { proto: p, sources: vec![src] }),
        }
    }
    Some(Ok(rows))
}
