//! Command implementations behind the `veronese-kit` binary.
//!
//! Each command returns a [`CommandResult`]: a status, a JSON payload tagged
//! with the schema version, and diagnostic lines for stderr. The binary only
//! parses arguments and prints.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use veronese::bracket::BracketPolynomial;
use veronese::config::{
    dimension_estimate, expected_dimension, AnyConfiguration, ComponentShape, ConfigDocument, PointConfiguration, SampleRecipe,
    Sampler, SCHEMA,
};
use veronese::conic::w2n_membership;
use veronese::gale::{duality_certificate, gale_of_config};
use veronese::higher::{generator_set, in_v_status, wdn_membership, Classification};
use veronese::transversal::{bounds, min_transversal, Hypergraph, SearchMode};
use veronese::verify::{run_suite, Suite};
use veronese::{Error, Field, FieldSpec, IndexSet, PrimeField, Rationals};

pub mod args;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Ok,
    PreconditionFailed,
    BudgetExceeded,
    /// A verification suite ran and some check failed.
    CheckFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::PreconditionFailed => 2,
            Status::BudgetExceeded => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    /// Plain-text rendering of the payload, when the command has one.
    pub text: Option<String>,
    pub log: Vec<String>,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult {
            status: Status::Ok,
            payload: tag(payload),
            text: None,
            log: Vec::new(),
        }
    }

    fn failed(e: Error) -> Self {
        let status = match e {
            Error::BudgetExceeded(_) => Status::BudgetExceeded,
            _ => Status::PreconditionFailed,
        };
        CommandResult {
            status,
            payload: tag(json!({ "status": status, "error": e.to_string() })),
            text: None,
            log: vec![format!("error: {e}")],
        }
    }

    fn with_log(mut self, line: impl Into<String>) -> Self {
        self.log.push(line.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// What goes to stdout: the text rendering if there is one, else the
    /// payload as pretty JSON.
    pub fn render(&self) -> String {
        match &self.text {
            Some(t) => t.clone(),
            None => serde_json::to_string_pretty(&self.payload).expect("payload serializes") + "\n",
        }
    }
}

/// Puts `"schema"` first in an object payload.
fn tag(payload: Value) -> Value {
    match payload {
        Value::Object(map) => {
            let mut out = serde_json::Map::new();
            out.insert("schema".into(), Value::from(SCHEMA));
            for (k, v) in map {
                if k != "schema" {
                    out.insert(k, v);
                }
            }
            Value::Object(out)
        }
        other => other,
    }
}

fn finish(r: veronese::Result<CommandResult>) -> CommandResult {
    r.unwrap_or_else(CommandResult::failed)
}

/// Runs `body` over the field described by `spec`.
macro_rules! over_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::PrimeField(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn set_json(s: &IndexSet) -> Value {
    json!(s.members())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqsFormat {
    BracketText,
    Json,
}

/// All defining equations for `n` points of ℙ^d, in generator order.
pub fn cmd_eqs(d: usize, n: usize, format: EqsFormat) -> CommandResult {
    finish(eqs(d, n, format))
}

fn eqs(d: usize, n: usize, format: EqsFormat) -> veronese::Result<CommandResult> {
    let least = if d == 2 { 6 } else { d + 4 };
    if d < 2 || n < least {
        return Err(Error::Precondition(format!(
            "equations exist for d ≥ 2 and n ≥ 6 (d = 2) or n ≥ d + 4; got d = {d}, n = {n}"
        )));
    }
    let gens = generator_set(d, n)?;
    let list: Vec<Value> = gens
        .iter()
        .map(|g| {
            let poly = g.poly.to_json();
            let mut entry = json!({ "I": set_json(&g.pattern) });
            if let Some(j) = &g.support {
                entry["J"] = set_json(j);
            }
            entry["ground"] = json!(poly.ground);
            entry["width"] = json!(poly.width);
            entry["terms"] = serde_json::to_value(&poly.terms).expect("terms serialize");
            entry
        })
        .collect();
    let mut out = CommandResult::ok(json!({ "d": d, "n": n, "count": gens.len(), "generators": list }))
        .with_log(format!("{} generators for d = {d}, n = {n}", gens.len()));
    if format == EqsFormat::BracketText {
        let mut text = String::new();
        for g in gens.iter() {
            text.push_str(&format!("{}: {}\n", g.label(), g.poly));
        }
        out.text = Some(text);
    }
    Ok(out)
}

/// Reads back the generators written by `eqs` in either format.
pub fn parse_generators(n: usize, text: &str) -> veronese::Result<Vec<BracketPolynomial>> {
    let bad = |m: String| Error::Precondition(m);
    if let Ok(doc) = serde_json::from_str::<Value>(text) {
        let gens = doc["generators"].as_array().ok_or_else(|| bad("missing \"generators\"".into()))?;
        return gens
            .iter()
            .map(|g| {
                let poly = serde_json::from_value(g.clone()).map_err(|e| bad(format!("generator: {e}")))?;
                BracketPolynomial::from_json(&poly)
            })
            .collect();
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (_, body) = line.split_once("]:").ok_or_else(|| bad(format!("unlabelled line {line:?}")))?;
            BracketPolynomial::parse(n, body)
        })
        .collect()
}

fn read_document(path: &Path) -> veronese::Result<ConfigDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))?;
    ConfigDocument::from_json(&text).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn load(path: &Path, field: Option<FieldSpec>) -> veronese::Result<(ConfigDocument, AnyConfiguration)> {
    let doc = read_document(path)?;
    let config = match field {
        None => doc.read()?,
        Some(FieldSpec::Rationals) => AnyConfiguration::Rational(doc.read_over(&Rationals)?),
        Some(FieldSpec::PrimeField(p)) => AnyConfiguration::Prime(doc.read_over(&PrimeField::new(p)?)?),
    };
    Ok((doc, config))
}

/// Evaluates the defining equations on the configuration in `path`. With
/// `field` set, the data are reread over that field instead of the one the
/// document names.
pub fn cmd_eval(path: &Path, field: Option<FieldSpec>, values: bool) -> CommandResult {
    finish(load(path, field).and_then(|(_, c)| match c {
        AnyConfiguration::Rational(p) => eval(&p, values),
        AnyConfiguration::Prime(p) => eval(&p, values),
    }))
}

fn in_v_json(d: usize, n: usize, cls: Classification) -> Value {
    use veronese::higher::InVStatus;
    match in_v_status(d, n, cls) {
        InVStatus::Yes => json!(true),
        InVStatus::No => json!(false),
        other => json!(other.to_string()),
    }
}

fn eval<F: Field>(p: &PointConfiguration<F>, values: bool) -> veronese::Result<CommandResult> {
    let f = p.field();
    let (d, n) = (p.d(), p.n());
    let degenerate = p.is_degenerate();
    let mut payload = json!({ "field": f.spec(), "d": d, "n": n, "degenerate": degenerate });
    match d {
        0 | 1 => {
            let cls = if degenerate { Classification::InY } else { Classification::InW_NotY };
            payload["all_vanish"] = json!(true);
            payload["checked"] = json!(0);
            payload["classification"] = json!(cls);
            payload["witness"] = Value::Null;
            payload["in_V"] = in_v_json(d, n, cls);
        }
        2 => {
            let r = w2n_membership(p, values)?;
            let cls = match (degenerate, r.all_vanish) {
                (true, _) => Classification::InY,
                (false, true) => Classification::InW_NotY,
                (false, false) => Classification::NotInW,
            };
            payload["all_vanish"] = json!(r.all_vanish);
            payload["checked"] = json!(r.checked);
            payload["classification"] = json!(cls);
            payload["witness"] = match r.witness() {
                Some(i) => json!({ "I": set_json(i) }),
                None => Value::Null,
            };
            payload["nonvanishing"] = json!(r.nonvanishing_sets.len());
            if let Some(vals) = &r.values {
                payload["values"] = vals.iter().map(|(i, v)| json!({ "I": set_json(i), "value": f.to_text(v) })).collect();
            }
            payload["in_V"] = in_v_json(d, n, cls);
        }
        _ => {
            let r = wdn_membership(p)?;
            payload["all_vanish"] = json!(r.all_vanish);
            payload["checked"] = json!(r.checked);
            payload["classification"] = json!(r.classification);
            payload["witness"] = match (&r.witness, &r.witness_value) {
                (Some((i, j)), Some(v)) => json!({ "I": set_json(i), "J": set_json(j), "value": f.to_text(v) }),
                _ => Value::Null,
            };
            payload["in_V"] = in_v_json(d, n, r.classification);
        }
    }
    Ok(CommandResult::ok(payload))
}

/// Gale transform of the configuration in `path`, written in the same
/// document format so it can be fed back in.
pub fn cmd_gale(path: &Path, field: Option<FieldSpec>) -> CommandResult {
    finish(load(path, field).and_then(|(doc, c)| match c {
        AnyConfiguration::Rational(p) => gale(&p, &doc),
        AnyConfiguration::Prime(p) => gale(&p, &doc),
    }))
}

fn gale<F: Field>(p: &PointConfiguration<F>, doc: &ConfigDocument) -> veronese::Result<CommandResult> {
    let g = gale_of_config(p)?;
    let cert = duality_certificate(p.field(), p.coords(), g.coords())?;
    if !cert.holds() {
        return Err(Error::Internal(format!("minor duality fails on {} sets", cert.failures.len())));
    }
    let mut out = ConfigDocument::from_config(&g);
    out.source = Some(format!("gale({})", doc.source.as_deref().unwrap_or("input")));
    out.seed = doc.seed;
    let payload = serde_json::to_value(&out).expect("document serializes");
    let lambda = p.field().to_text(&cert.lambda);
    Ok(CommandResult::ok(payload).with_log(format!("minor duality holds on {} sets, λ = {lambda}", cert.checked_sets)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleKind {
    Generic,
    Rnc,
    Degenerate,
    TwoLines,
    LinePlusPoint,
    /// Points on a chain of rational normal curves of these degrees.
    Chain(Vec<usize>),
    /// Points on a comb: a spine with the other curves attached to it.
    Comb(Vec<usize>),
}

impl fmt::Display for SampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            SampleKind::Generic => f.write_str("generic"),
            SampleKind::Rnc => f.write_str("rnc"),
            SampleKind::Degenerate => f.write_str("degenerate"),
            SampleKind::TwoLines => f.write_str("two-lines"),
            SampleKind::LinePlusPoint => f.write_str("line-plus-point"),
            SampleKind::Chain(v) => write!(f, "chain:{}", list(v)),
            SampleKind::Comb(v) => write!(f, "comb:{}", list(v)),
        }
    }
}

impl std::str::FromStr for SampleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let degrees = |rest: &str| -> Result<Vec<usize>, String> {
            rest.split(',').map(|t| t.trim().parse().map_err(|_| format!("bad degree {t:?}"))).collect()
        };
        Ok(match s {
            "generic" => SampleKind::Generic,
            "rnc" => SampleKind::Rnc,
            "degenerate" => SampleKind::Degenerate,
            "two-lines" => SampleKind::TwoLines,
            "line-plus-point" => SampleKind::LinePlusPoint,
            _ => match s.split_once(':') {
                Some(("chain", rest)) => SampleKind::Chain(degrees(rest)?),
                Some(("comb", rest)) => SampleKind::Comb(degrees(rest)?),
                _ => {
                    return Err(format!(
                        "unknown kind {s:?}; expected generic, rnc, degenerate, two-lines, line-plus-point, chain:a,b,… or comb:a,b,…"
                    ))
                }
            },
        })
    }
}

/// A seeded random configuration of the requested kind.
pub fn cmd_sample(kind: &SampleKind, d: usize, n: usize, seed: u64, field: FieldSpec) -> CommandResult {
    finish((|| over_field!(field, |f| sample(&f, kind, d, n, seed)))())
}

fn sample<F: Field>(f: &F, kind: &SampleKind, d: usize, n: usize, seed: u64) -> veronese::Result<CommandResult> {
    if d == 0 || n == 0 {
        return Err(Error::Precondition(format!("need d ≥ 1 and n ≥ 1, got d = {d}, n = {n}")));
    }
    let mut s = Sampler::new(f, SampleRecipe::new(seed));
    let plane = |what: &str| {
        if d == 2 {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} samples live in ℙ², got d = {d}")))
        }
    };
    let shaped = |degrees: &[usize]| {
        if degrees.iter().sum::<usize>() == d {
            Ok(())
        } else {
            Err(Error::Precondition(format!("curve degrees {degrees:?} must sum to d = {d}")))
        }
    };
    let p = match kind {
        SampleKind::Generic => s.generic(d, n),
        SampleKind::Rnc => s.rnc(d, n)?,
        SampleKind::Degenerate => s.degenerate(d, n),
        SampleKind::TwoLines => {
            plane("two-lines")?;
            s.two_lines(n)
        }
        SampleKind::LinePlusPoint => {
            plane("line-plus-point")?;
            s.line_plus_point(n)
        }
        SampleKind::Chain(v) => {
            shaped(v)?;
            s.quasi_veronese(d, &ComponentShape::chain(v), n)?.1
        }
        SampleKind::Comb(v) => {
            shaped(v)?;
            s.quasi_veronese(d, &ComponentShape::comb(v), n)?.1
        }
    };
    let mut doc = ConfigDocument::from_config(&p);
    doc.source = Some(kind.to_string());
    doc.seed = Some(seed);
    Ok(CommandResult::ok(serde_json::to_value(&doc).expect("document serializes")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeSource {
    /// Explicit 1-based edges.
    Lists(Vec<Vec<usize>>),
    /// Every `k`-subset.
    Complete,
    /// No edges: only bounds and, if asked, a smallest transversal example.
    None,
}

/// Parses edges given as a JSON array of arrays, e.g. `[[1,2,3],[4,5,6]]`.
pub fn parse_edges(text: &str) -> Result<Vec<Vec<usize>>, String> {
    serde_json::from_str(text).map_err(|e| format!("edges must be a JSON array of arrays of integers: {e}"))
}

/// Decides whether the edges meet every ordered partition of `[n]` into `k`
/// blocks, and reports the lower bounds on edge count. `search` also finds
/// a smallest transversal edge set.
pub fn cmd_transversal(n: usize, k: usize, edges: &EdgeSource, search: Option<SearchMode>) -> CommandResult {
    finish(transversal(n, k, edges, search))
}

fn transversal(n: usize, k: usize, edges: &EdgeSource, search: Option<SearchMode>) -> veronese::Result<CommandResult> {
    let b = bounds(n, k)?;
    let mut payload = json!({ "n": n, "k": k, "bounds": b });
    let hg = match edges {
        EdgeSource::Lists(lists) => Some(Hypergraph::from_lists(n, k, lists)?),
        EdgeSource::Complete => Some(Hypergraph::complete(n, k)?),
        EdgeSource::None => None,
    };
    if let Some(h) = hg {
        let failing = h.failing_partition();
        payload["edges"] = json!(h.edges().iter().map(|e| e.members().to_vec()).collect::<Vec<_>>());
        payload["edge_count"] = json!(h.len());
        payload["transversal"] = json!(failing.is_none());
        payload["failing_partition"] = match failing {
            Some(p) => json!(p.blocks().iter().map(|b| b.members().to_vec()).collect::<Vec<_>>()),
            None => Value::Null,
        };
    }
    if let Some(mode) = search {
        let m = min_transversal(n, k, mode)?;
        payload["smallest"] = json!({
            "mode": m.mode,
            "size": m.size,
            "example": m.example.edges().iter().map(|e| e.members().to_vec()).collect::<Vec<_>>(),
            "work": m.work,
        });
    }
    Ok(CommandResult::ok(payload))
}

/// Rank of the differential of the parametrization of configurations on
/// rational normal curves, next to the expected dimension.
pub fn cmd_dim(d: usize, n: usize, seed: u64, field: FieldSpec) -> CommandResult {
    finish((|| {
        if d == 0 || n < d + 3 {
            return Err(Error::Precondition(format!("need d ≥ 1 and n ≥ d + 3, got d = {d}, n = {n}")));
        }
        let rank = over_field!(field, |f| dimension_estimate(&f, d, n, seed)?);
        let expected = expected_dimension(d, n);
        Ok(CommandResult::ok(json!({
            "field": field,
            "d": d,
            "n": n,
            "seed": seed,
            "rank": rank,
            "expected": expected,
            "matches": rank == expected,
        })))
    })())
}

/// Runs an acceptance suite. Any failing check sets `CheckFailed`.
pub fn cmd_verify(suite: Suite, seed: u64, field: FieldSpec) -> CommandResult {
    let outcomes = run_suite(suite, field, seed);
    let passed = outcomes.iter().all(|o| o.passed);
    let mut out = CommandResult::ok(json!({
        "suite": suite,
        "field": field,
        "seed": seed,
        "passed": passed,
        "checks": outcomes,
    }));
    out.log = outcomes.iter().map(|o| o.to_string()).collect();
    if !passed {
        out.status = Status::CheckFailed;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_status() {
        assert_eq!(Status::Ok.exit_code(), 0);
        for s in [Status::PreconditionFailed, Status::BudgetExceeded, Status::CheckFailed] {
            assert_ne!(s.exit_code(), 0);
        }
    }

    #[test]
    fn schema_comes_first() {
        let v = tag(json!({ "b": 1, "a": 2, "schema": "old" }));
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["schema", "b", "a"]);
        assert_eq!(v["schema"], SCHEMA);
    }

    #[test]
    fn sample_kinds_round_trip_through_text() {
        for s in ["generic", "rnc", "degenerate", "two-lines", "line-plus-point", "chain:2,1", "comb:1,1,1"] {
            assert_eq!(s.parse::<SampleKind>().unwrap().to_string(), s);
        }
        assert!("chain:".parse::<SampleKind>().is_err());
        assert!("spiral".parse::<SampleKind>().is_err());
    }

    #[test]
    fn edges_parse_as_nested_arrays() {
        assert_eq!(parse_edges("[[1,2],[3, 4]]").unwrap(), vec![vec![1, 2], vec![3, 4]]);
        assert!(parse_edges("[1,2]").is_err());
    }

    #[test]
    fn generator_counts() {
        for (d, n, count) in [(2, 6, 1), (2, 7, 7), (2, 8, 28), (3, 7, 7), (3, 8, 56), (4, 8, 28)] {
            let r = cmd_eqs(d, n, EqsFormat::Json);
            assert_eq!(r.status, Status::Ok);
            assert_eq!(r.payload["count"], count, "(d, n) = ({d}, {n})");
            assert_eq!(r.payload["generators"].as_array().unwrap().len(), count);
        }
        for (d, n) in [(1, 9), (2, 5), (3, 6), (4, 7)] {
            assert_eq!(cmd_eqs(d, n, EqsFormat::BracketText).status, Status::PreconditionFailed);
        }
    }

    #[test]
    fn both_eqs_formats_parse_back() {
        for (d, n) in [(2, 7), (3, 8)] {
            let gens = generator_set(d, n).unwrap();
            let expect: Vec<&BracketPolynomial> = gens.iter().map(|g| &g.poly).collect();
            for format in [EqsFormat::BracketText, EqsFormat::Json] {
                let text = cmd_eqs(d, n, format).render();
                let back = parse_generators(n, &text).unwrap();
                assert_eq!(back.iter().collect::<Vec<_>>(), expect);
            }
        }
    }

    #[test]
    fn sample_rejects_mismatched_shapes() {
        let f = FieldSpec::default();
        assert_eq!(cmd_sample(&SampleKind::Chain(vec![2, 2]), 3, 8, 1, f).status, Status::PreconditionFailed);
        assert_eq!(cmd_sample(&SampleKind::TwoLines, 3, 8, 1, f).status, Status::PreconditionFailed);
        assert_eq!(cmd_sample(&SampleKind::Chain(vec![2, 1]), 3, 8, 1, f).status, Status::Ok);
    }

    #[test]
    fn transversal_budget_and_bounds() {
        let r = cmd_transversal(9, 6, &EdgeSource::None, Some(SearchMode::Exact));
        assert_eq!(r.status, Status::BudgetExceeded);
        let r = cmd_transversal(5, 3, &EdgeSource::Complete, Some(SearchMode::Exact));
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["transversal"], true);
        assert_eq!(r.payload["smallest"]["size"], 5);
        assert_eq!(r.payload["bounds"]["sterboul"], 5);
        let r = cmd_transversal(5, 6, &EdgeSource::Complete, None);
        assert_eq!(r.status, Status::PreconditionFailed);
    }

    #[test]
    fn dim_needs_enough_points() {
        assert_eq!(cmd_dim(3, 5, 0, FieldSpec::default()).status, Status::PreconditionFailed);
        let r = cmd_dim(2, 6, 0, FieldSpec::default());
        assert_eq!(r.payload["rank"], 11);
        assert_eq!(r.payload["matches"], true);
    }
}
