//! Command dispatch and output rendering for the `omegalim` binary.

use std::cmp::Ordering;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::engine;
use crate::error::{EngineError, InputError, OracleError, ParseError};
use crate::generations;
use crate::innumber::InNumber;
use crate::limit::Term;
use crate::oracle;
use crate::parse::{self, Parsed, Value};
use crate::prototype::Prototype;
use crate::scalar;
use crate::tower::TowerValue;

pub const DEFAULT_DEPTH: usize = 4;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_OSCILLATORY: i32 = 3;
pub const EXIT_UNDEFINED: i32 = 4;
pub const EXIT_NO_FIT: i32 = 5;

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Limit { expr: String },
    Lead { expr: String },
    Compare { a: String, b: String },
    Table { generation: u32 },
    Eval { expr: String, at: String },
    Fit { file: PathBuf, candidates: String },
    Check { a: String, b: String, schedule: Option<String> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Limit { .. } => "limit",
            Command::Lead { .. } => "lead",
            Command::Compare { .. } => "compare",
            Command::Table { .. } => "table",
            Command::Eval { .. } => "eval",
            Command::Fit { .. } => "fit",
            Command::Check { .. } => "check",
        }
    }

    fn inputs(&self) -> Vec<String> {
        match self {
            Command::Limit { expr } | Command::Lead { expr } => vec![expr.clone()],
            Command::Compare { a, b } => vec![a.clone(), b.clone()],
            Command::Table { generation } => vec![generation.to_string()],
            Command::Eval { expr, at } => vec![expr.clone(), at.clone()],
            Command::Fit { file, candidates } => vec![file.display().to_string(), candidates.clone()],
            Command::Check { a, b, schedule } => {
                let mut v = vec![a.clone(), b.clone()];
                v.extend(schedule.clone());
                v
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandRequest {
    pub command: Command,
    pub depth: usize,
    pub output: OutputFormat,
    pub unicode: bool,
}

impl CommandRequest {
    pub fn new(command: Command) -> Self {
        CommandRequest { command, depth: DEFAULT_DEPTH, output: OutputFormat::Text, unicode: false }
    }
}

/// Exit code with the text destined for stdout or stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct JsonTerm {
    coeff: String,
    proto: String,
}

#[derive(Serialize)]
struct JsonOutput {
    command: String,
    input: Vec<String>,
    result: Option<String>,
    terms: Vec<JsonTerm>,
    diagnostics: Map<String, Json>,
}

struct Success {
    text: String,
    result: String,
    terms: Vec<(String, String)>,
    diagnostics: Map<String, Json>,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    position: Option<usize>,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let kind = match e {
            ParseError::Syntax { .. } => "parse",
            ParseError::Context { .. } => "context",
        };
        Failure { code: EXIT_PARSE, kind, position: Some(e.position()), message: e.to_string() }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let (code, kind) = match e {
            EngineError::Oscillatory(_) => (EXIT_OSCILLATORY, "oscillatory"),
            EngineError::Undefined(_) => (EXIT_UNDEFINED, "undefined"),
        };
        Failure { code, kind, position: None, message: e.to_string() }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Parse(p) => p.into(),
            InputError::Engine(x) => x.into(),
            other => Failure { code: EXIT_UNDEFINED, kind: "undefined", position: None, message: other.to_string() },
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let (code, kind) = match e {
            OracleError::NoStableCandidate { .. } => (EXIT_NO_FIT, "no_stable_candidate"),
            OracleError::Ingest(_) | OracleError::BadSamples { .. } => (EXIT_PARSE, "samples"),
            OracleError::DomainError { .. } | OracleError::TowerAtomNotEvaluable => (EXIT_UNDEFINED, "domain"),
        };
        Failure { code, kind, position: None, message: e.to_string() }
    }
}

fn ordering_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

fn term_pair(t: &Term) -> (String, String) {
    (scalar::render(&t.coeff), t.proto.to_string())
}

fn success(text: String, result: String) -> Success {
    Success { text, result, terms: Vec::new(), diagnostics: Map::new() }
}

fn run_limit(expr: &str, depth: usize) -> Result<Success, Failure> {
    let e = parse::parse_seq(expr)?;
    let x = engine::limit_of(&e, depth)?;
    let shown = x.truncate(depth);
    let mut text = shown.to_string();
    let mut s = success(String::new(), text.clone());
    if !x.is_limit() || x.num().len() > depth {
        text.push_str(&format!("\nexact: {x}"));
        s.diagnostics.insert("exact".into(), json!(x.to_string()));
    }
    s.text = text;
    s.terms = shown.terms().iter().map(term_pair).collect();
    s.diagnostics.insert("depth".into(), json!(depth));
    s.diagnostics.insert("emitted_terms".into(), json!(shown.len()));
    Ok(s)
}

fn run_lead(expr: &str) -> Result<Success, Failure> {
    let e = parse::parse_seq(expr)?;
    Ok(match engine::leading_term_limit(&e)? {
        Some(t) => {
            let mut s = success(t.to_string(), t.to_string());
            s.terms = vec![term_pair(&t)];
            s
        }
        None => success("0".into(), "0".into()),
    })
}

fn run_compare(a: &str, b: &str, depth: usize) -> Result<Success, Failure> {
    let (x, y) = (parse::parse_value(a, depth)?, parse::parse_value(b, depth)?);
    let (o, mode) = match (x.as_prototype(), y.as_prototype()) {
        (Some(p), Some(q)) => (p.compare(&q), "class"),
        _ => match (&x, &y) {
            (Value::Number(x), Value::Number(y)) => (x.compare(y), "value"),
            _ => {
                return Err(Failure {
                    code: EXIT_UNDEFINED,
                    kind: "undefined",
                    position: None,
                    message: "cardinal-jump classes compare only with prototypes".into(),
                })
            }
        },
    };
    let sym = ordering_symbol(o);
    let mut s = success(sym.into(), sym.into());
    s.diagnostics.insert("mode".into(), json!(mode));
    Ok(s)
}

fn run_table(generation: u32) -> Result<Success, Failure> {
    let rows = generations::table(generation).ok_or_else(|| Failure {
        code: EXIT_PARSE,
        kind: "parse",
        position: None,
        message: format!("generation must be 0, 1, 2 or 3, got {generation}"),
    })??;
    let mut lines = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut line = format!("{:>3}  {}", i + 1, row.proto);
        if row.sources.len() > 1 {
            line.push_str(&format!("  (= {})", row.sources.join(" = ")));
        }
        lines.push(line);
    }
    let chain = rows.iter().map(|r| r.proto.to_string()).collect::<Vec<_>>().join(" < ");
    let mut s = success(lines.join("\n"), chain);
    s.terms = rows.iter().map(|r| ("1".to_string(), r.proto.to_string())).collect();
    let merged: Vec<Json> = rows.iter().filter(|r| r.sources.len() > 1).map(|r| json!(r.sources)).collect();
    s.diagnostics.insert("entries".into(), json!(rows.len()));
    s.diagnostics.insert("merged".into(), Json::Array(merged));
    Ok(s)
}

/// An index: a decimal number, or `exp(m)` / `exp^h(m)`.
pub fn parse_index(src: &str) -> Result<TowerValue, ParseError> {
    let bad = |pos: usize| ParseError::Syntax { pos, msg: format!("not an index: '{src}'") };
    let s = src.trim();
    if let Some(rest) = s.strip_prefix("exp") {
        let (height, rest) = match rest.strip_prefix('^') {
            Some(r) => {
                let end = r.find('(').ok_or_else(|| bad(4))?;
                (r[..end].trim().parse::<u32>().map_err(|_| bad(4))?, &r[end..])
            }
            None => (1, rest),
        };
        let inner = rest.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| bad(3))?;
        let m = inner.trim().parse::<f64>().map_err(|_| bad(3))?;
        if !m.is_finite() || m < 0.0 {
            return Err(bad(3));
        }
        return Ok(TowerValue::tower(height, m));
    }
    let v = s.parse::<f64>().map_err(|_| bad(0))?;
    TowerValue::from_f64(v).ok_or_else(|| bad(0))
}

fn run_eval(expr: &str, at: &str, depth: usize) -> Result<Success, Failure> {
    let n = parse_index(at)?;
    let v = match parse::parse_expr(expr, depth)? {
        Parsed::Sequence(e) => oracle::eval_seq(&e, &n)?,
        Parsed::Value(Value::Number(x)) => oracle::eval_limit(&x, &n)?,
        Parsed::Value(Value::Class(p)) => oracle::eval_proto(&p, &n)?,
    };
    let mut s = success(v.to_string(), v.to_string());
    s.diagnostics.insert("height".into(), json!(v.height()));
    s.diagnostics.insert("mantissa".into(), json!(v.mantissa()));
    s.diagnostics.insert("negative".into(), json!(v.is_negative()));
    Ok(s)
}

fn parse_candidates(list: &str) -> Result<Vec<Prototype>, Failure> {
    list.split(',').filter(|c| !c.trim().is_empty()).map(|c| parse::parse_proto(c).map_err(Failure::from)).collect()
}

fn run_fit(file: &std::path::Path, candidates: &str) -> Result<Success, Failure> {
    let text = if file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(file)
    }
    .map_err(|e| Failure { code: EXIT_PARSE, kind: "samples", position: None, message: format!("{}: {e}", file.display()) })?;
    let samples = oracle::parse_samples(&text)?;
    let candidates = parse_candidates(candidates)?;
    let fit = oracle::estimate_leading_term(&samples, &candidates)?;
    let coeff = format!("{}", fit.coeff);
    let shown = if fit.proto.is_unit() { coeff.clone() } else { format!("{coeff}*{}", fit.proto) };
    let mut s = success(format!("{shown}\ndrift: {:.3e}", fit.drift), shown);
    s.terms = vec![(coeff, fit.proto.to_string())];
    let report: Vec<Json> = fit.report.iter().map(|(p, d)| json!({"proto": p.to_string(), "drift": d})).collect();
    s.diagnostics.insert("drift".into(), json!(fit.drift));
    s.diagnostics.insert("candidates".into(), Json::Array(report));
    Ok(s)
}

fn run_check(a: &str, b: &str, schedule: Option<&str>) -> Result<Success, Failure> {
    let (p, q) = (parse::parse_proto(a)?, parse::parse_proto(b)?);
    let points = match schedule {
        Some(list) => list.split(',').map(parse_index).collect::<Result<Vec<_>, _>>()?,
        None => oracle::default_schedule(),
    };
    let symbolic = p.compare(&q);
    let numeric = oracle::numeric_compare(&p, &q, &points)?;
    let agree = numeric.stable && numeric.ordering == symbolic;
    let text = format!(
        "symbolic: {}\nnumeric: {} ({})\nagreement: {}",
        ordering_symbol(symbolic),
        ordering_symbol(numeric.ordering),
        if numeric.stable { "stable" } else { "unstable" },
        if agree { "yes" } else { "no" }
    );
    let mut s = success(text, ordering_symbol(symbolic).into());
    s.diagnostics.insert("numeric".into(), json!(ordering_symbol(numeric.ordering)));
    s.diagnostics.insert("stable".into(), json!(numeric.stable));
    s.diagnostics.insert("agreement".into(), json!(agree));
    let per_point: Vec<Json> = points
        .iter()
        .zip(&numeric.per_point)
        .map(|(n, o)| json!({"n": n.to_string(), "ordering": ordering_symbol(*o)}))
        .collect();
    s.diagnostics.insert("per_point".into(), Json::Array(per_point));
    Ok(s)
}

fn dispatch(req: &CommandRequest) -> Result<Success, Failure> {
    let depth = req.depth.max(1);
    match &req.command {
        Command::Limit { expr } => run_limit(expr, depth),
        Command::Lead { expr } => run_lead(expr),
        Command::Compare { a, b } => run_compare(a, b, depth),
        Command::Table { generation } => run_table(*generation),
        Command::Eval { expr, at } => run_eval(expr, at, depth),
        Command::Fit { file, candidates } => run_fit(file, candidates),
        Command::Check { a, b, schedule } => run_check(a, b, schedule.as_deref()),
    }
}

fn omega(s: &str, unicode: bool) -> String {
    if unicode {
        s.replace('w', "ω")
    } else {
        s.to_string()
    }
}

/// Runs one command and renders its output in the requested format.
pub fn run(req: &CommandRequest) -> Outcome {
    let u = req.unicode;
    let outcome = dispatch(req);
    match req.output {
        OutputFormat::Text => match outcome {
            Ok(s) => Outcome { code: EXIT_OK, stdout: omega(&s.text, u) + "\n", stderr: String::new() },
            Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
        },
        OutputFormat::Json => {
            let mut out = JsonOutput {
                command: req.command.name().into(),
                input: req.command.inputs(),
                result: None,
                terms: Vec::new(),
                diagnostics: Map::new(),
            };
            let code = match outcome {
                Ok(s) => {
                    out.result = Some(omega(&s.result, u));
                    out.terms = s.terms.into_iter().map(|(c, p)| JsonTerm { coeff: c, proto: omega(&p, u) }).collect();
                    out.diagnostics = s.diagnostics;
                    out.diagnostics.insert("error".into(), Json::Null);
                    EXIT_OK
                }
                Err(f) => {
                    out.diagnostics.insert(
                        "error".into(),
                        json!({"kind": f.kind, "message": f.message, "position": f.position}),
                    );
                    f.code
                }
            };
            out.diagnostics.insert("exit_code".into(), json!(code));
            let body = serde_json::to_string_pretty(&out).expect("serializable");
            Outcome { code, stdout: body + "\n", stderr: String::new() }
        }
    }
}

/// Exact form of a value for display next to its expansion.
pub fn render_value(x: &InNumber, unicode: bool) -> String {
    omega(&x.to_string(), unicode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(command: Command) -> Outcome {
        run(&CommandRequest::new(command))
    }

    #[test]
    fn limit_output() {
        let mut req = CommandRequest::new(Command::Limit { expr: "(n+1)/(n-1)".into() });
        req.depth = 3;
        let out = run(&req);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout.lines().next(), Some("1 + 2/w + 2/w^2"));
        assert_eq!(out.stdout.lines().nth(1), Some("exact: (w + 1)/(w - 1)"));
    }

    #[test]
    fn compare_output() {
        let out = text(Command::Compare { a: "ln(w)".into(), b: "w^0.001".into() });
        assert_eq!(out.stdout, "<\n");
        let out = text(Command::Compare { a: "w + 1".into(), b: "w".into() });
        assert_eq!(out.stdout, ">\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(text(Command::Limit { expr: "sin(".into() }).code, EXIT_PARSE);
        assert_eq!(text(Command::Limit { expr: "w".into() }).code, EXIT_PARSE);
        assert_eq!(text(Command::Limit { expr: "sin(n)".into() }).code, EXIT_OSCILLATORY);
        assert_eq!(text(Command::Limit { expr: "ln(-n)".into() }).code, EXIT_UNDEFINED);
        assert_eq!(text(Command::Table { generation: 7 }).code, EXIT_PARSE);
    }

    #[test]
    fn index_syntax() {
        assert_eq!(parse_index("100").unwrap(), TowerValue::from_f64(100.0).unwrap());
        assert_eq!(parse_index("exp(100)").unwrap(), TowerValue::tower(1, 100.0));
        assert_eq!(parse_index("exp^2(40)").unwrap(), TowerValue::tower(2, 40.0));
        assert!(parse_index("exp(").is_err());
    }

    #[test]
    fn unicode_rendering() {
        let mut req = CommandRequest::new(Command::Lead { expr: "exp(n)*n".into() });
        req.unicode = true;
        assert_eq!(run(&req).stdout, "exp(ω)*ω\n");
    }
}
