//! Session state and the line-oriented command DSL.
//!
//! A session holds a field, a base point, and named definitions. Object
//! definitions are stored as source text and materialized on demand, so a
//! later `field` change or a per-query `--field` override reinterprets the
//! same definitions in the other field without re-entry.
//!
//! Commands (one per line, `#` starts a comment):
//!
//! ```text
//! field real|complex
//! point {2: 5, 3: -1/2}
//! budget enum=64 gb=10000 curve=256
//! let g = x_1^2 + (x_2 - x_3)^2
//! ideal I = [x_1^2, x_2 - x_3]
//! template J = [x_{2k+1}^2 + (x_{2k+2} - x_{2k+3})^2]
//! system S = zero(I)
//! system P = point dims 1..3
//! member I g            # polynomial ideal membership
//! radmem I g            # localized radical membership (field-dispatched)
//! realclosure I [x_1, x_2]
//! refute I g [{2: s, 3: s}]
//! contains I J          # Z(I) subset of Z(J)
//! precedes S P          # system refinement
//! equiv S P
//! pointgerm I dims 1..3
//! nss I g               # theorem-of-zeros cross-check
//! invertible g
//! restrict g {1, 5}
//! dump g
//! ```

use germcalc_core::germ::{GeneratorStream, Germ, GermIdeal};
use germcalc_core::groebner::{Membership, StepBudget};
use germcalc_core::multigerm::{
    germ_vanishes_on, is_point_multigerm, nullstellensatz_check, point_system, precedes,
    setgerm_contains, zero_system, Agreement, SetGerm, SystemOfGerms,
};
use germcalc_core::parser::{
    parse_base_point, parse_poly, parse_template, print_canonical,
};
use germcalc_core::poly::VarIndex;
use germcalc_core::real::{refute_real_vanishing, Refutation};
use germcalc_core::verdict::{BudgetUse, Budgets, Verdict, WCurve, WPoly, Witness};
use germcalc_core::{FieldTag, Outcome, UniPoly};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
enum Definition {
    /// A single polynomial germ.
    Germ(String),
    /// A finite generator list.
    Ideal(Vec<String>),
    /// One-parameter generator templates.
    Templates(Vec<String>),
    /// A system: the zero-system of a named ideal/template stream, or the
    /// point system over given coordinates.
    ZeroOf(String),
    PointSystem(Vec<u32>),
}

pub struct Session {
    field: FieldTag,
    point_text: String,
    budgets: Budgets,
    definitions: BTreeMap<String, Definition>,
    /// Set when a nullstellensatz check produces a conclusive disagreement.
    pub engine_defect: bool,
}

pub struct LineOutput {
    /// One JSON object per query, none for definitions.
    pub json: Option<Value>,
    /// Human-readable summary for standard error.
    pub summary: String,
}

impl Session {
    pub fn new(budgets: Budgets) -> Session {
        Session {
            field: FieldTag::Real,
            point_text: "{}".to_string(),
            budgets,
            definitions: BTreeMap::new(),
            engine_defect: false,
        }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> ScriptError {
        ScriptError {
            line,
            message: message.into(),
        }
    }

    fn base(&self, line: usize, field: FieldTag) -> Result<germcalc_core::BasePoint, ScriptError> {
        parse_base_point(&self.point_text, field)
            .map_err(|e| self.err(line, format!("bad base point: {}", e)))
    }

    fn germ(&self, line: usize, name_or_expr: &str, field: FieldTag) -> Result<Germ, ScriptError> {
        let text = match self.definitions.get(name_or_expr) {
            Some(Definition::Germ(t)) => t.clone(),
            Some(_) => {
                return Err(self.err(line, format!("{} is not a germ", name_or_expr)));
            }
            None => name_or_expr.to_string(),
        };
        let poly = parse_poly(&text, field).map_err(|e| self.err(line, e.to_string()))?;
        Germ::new(poly, self.base(line, field)?).map_err(|e| self.err(line, e.to_string()))
    }

    fn ideal(&self, line: usize, name: &str, field: FieldTag) -> Result<GermIdeal, ScriptError> {
        match self.definitions.get(name) {
            Some(Definition::Ideal(gens)) => {
                let base = self.base(line, field)?;
                let mut germs = Vec::new();
                for g in gens {
                    let poly = parse_poly(g, field).map_err(|e| self.err(line, e.to_string()))?;
                    germs.push(
                        Germ::new(poly, base.clone())
                            .map_err(|e| self.err(line, e.to_string()))?,
                    );
                }
                GermIdeal::new(base, germs).map_err(|e| self.err(line, e.to_string()))
            }
            Some(Definition::Germ(_)) => {
                let g = self.germ(line, name, field)?;
                GermIdeal::new(self.base(line, field)?, vec![g])
                    .map_err(|e| self.err(line, e.to_string()))
            }
            _ => Err(self.err(line, format!("undefined ideal {}", name))),
        }
    }

    fn stream(
        &self,
        line: usize,
        name: &str,
        field: FieldTag,
    ) -> Result<GeneratorStream, ScriptError> {
        match self.definitions.get(name) {
            Some(Definition::Templates(texts)) => {
                let mut templates = Vec::new();
                for t in texts {
                    templates
                        .push(parse_template(t).map_err(|e| self.err(line, e.to_string()))?);
                }
                Ok(GeneratorStream::Templated {
                    templates,
                    base: self.base(line, field)?,
                    tag: field,
                })
            }
            Some(Definition::Ideal(_)) | Some(Definition::Germ(_)) => {
                Ok(GeneratorStream::Finite(self.ideal(line, name, field)?))
            }
            _ => Err(self.err(line, format!("undefined ideal or stream {}", name))),
        }
    }

    fn system(
        &self,
        line: usize,
        name: &str,
        field: FieldTag,
    ) -> Result<SystemOfGerms, ScriptError> {
        match self.definitions.get(name) {
            Some(Definition::ZeroOf(inner)) => {
                Ok(zero_system(self.stream(line, inner, field)?))
            }
            Some(Definition::PointSystem(dims)) => {
                let dims: BTreeSet<VarIndex> =
                    dims.iter().filter_map(|&d| VarIndex::new(d)).collect();
                point_system(&self.base(line, field)?, &dims)
                    .map_err(|e| self.err(line, e.to_string()))
            }
            Some(Definition::Ideal(_)) | Some(Definition::Templates(_))
            | Some(Definition::Germ(_)) => Ok(zero_system(self.stream(line, name, field)?)),
            None => Err(self.err(line, format!("undefined system {}", name))),
        }
    }

    /// Execute one line of the DSL.
    pub fn execute(&mut self, line_no: usize, raw: &str) -> Result<Option<LineOutput>, ScriptError> {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            return Ok(None);
        }

        // per-query field override: a trailing `--field real|complex`
        let (line, field) = match line.rsplit_once("--field") {
            Some((head, tail)) => {
                let f = match tail.trim() {
                    "real" => FieldTag::Real,
                    "complex" => FieldTag::Complex,
                    other => {
                        return Err(self.err(line_no, format!("unknown field {:?}", other)))
                    }
                };
                (head.trim(), f)
            }
            None => (line, self.field),
        };

        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };

        match keyword {
            "field" => {
                self.field = match rest {
                    "real" => FieldTag::Real,
                    "complex" => FieldTag::Complex,
                    other => {
                        return Err(self.err(line_no, format!("unknown field {:?}", other)))
                    }
                };
                Ok(None)
            }
            "point" => {
                // tolerate an optional name before the braces
                let braces = rest
                    .find('{')
                    .ok_or_else(|| self.err(line_no, "expected { after point"))?;
                let text = rest[braces..].to_string();
                parse_base_point(&text, field)
                    .map_err(|e| self.err(line_no, format!("bad base point: {}", e)))?;
                self.point_text = text;
                Ok(None)
            }
            "budget" => {
                for part in rest.split_whitespace() {
                    let (key, value) = part
                        .split_once('=')
                        .ok_or_else(|| self.err(line_no, "expected key=value"))?;
                    let value: u64 = value
                        .parse()
                        .map_err(|_| self.err(line_no, format!("bad budget {:?}", value)))?;
                    match key {
                        "enum" => self.budgets.enumeration = value,
                        "gb" => self.budgets.groebner = value,
                        "curve" => self.budgets.curve = value,
                        other => {
                            return Err(
                                self.err(line_no, format!("unknown budget {:?}", other))
                            )
                        }
                    }
                }
                Ok(None)
            }
            "let" => {
                let (name, expr) = split_definition(rest)
                    .ok_or_else(|| self.err(line_no, "expected: let name = expr"))?;
                parse_poly(expr, field).map_err(|e| self.err(line_no, e.to_string()))?;
                self.definitions
                    .insert(name.to_string(), Definition::Germ(expr.to_string()));
                Ok(None)
            }
            "ideal" => {
                let (name, expr) = split_definition(rest)
                    .ok_or_else(|| self.err(line_no, "expected: ideal name = [exprs]"))?;
                let gens = parse_bracket_list(expr)
                    .ok_or_else(|| self.err(line_no, "expected a [bracketed, list]"))?;
                for g in &gens {
                    parse_poly(g, field).map_err(|e| self.err(line_no, e.to_string()))?;
                }
                self.definitions
                    .insert(name.to_string(), Definition::Ideal(gens));
                Ok(None)
            }
            "template" => {
                let (name, expr) = split_definition(rest)
                    .ok_or_else(|| self.err(line_no, "expected: template name = [exprs]"))?;
                let texts = parse_bracket_list(expr)
                    .ok_or_else(|| self.err(line_no, "expected a [bracketed, list]"))?;
                for t in &texts {
                    parse_template(t).map_err(|e| self.err(line_no, e.to_string()))?;
                }
                self.definitions
                    .insert(name.to_string(), Definition::Templates(texts));
                Ok(None)
            }
            "system" => {
                let (name, expr) = split_definition(rest)
                    .ok_or_else(|| self.err(line_no, "expected: system name = zero(I)"))?;
                let def = if let Some(inner) = expr
                    .strip_prefix("zero(")
                    .and_then(|e| e.strip_suffix(')'))
                {
                    Definition::ZeroOf(inner.trim().to_string())
                } else if let Some(dims) = expr.strip_prefix("point dims") {
                    Definition::PointSystem(parse_dims(dims.trim()).ok_or_else(|| {
                        self.err(line_no, "expected: point dims a..b or a list")
                    })?)
                } else {
                    return Err(
                        self.err(line_no, "expected zero(name) or point dims a..b")
                    );
                };
                self.definitions.insert(name.to_string(), def);
                Ok(None)
            }
            "member" => {
                let (ideal_name, germ_expr) = two_args(rest)
                    .ok_or_else(|| self.err(line_no, "expected: member I f"))?;
                let ideal = self.ideal(line_no, ideal_name, field)?;
                let f = self.germ(line_no, germ_expr, field)?;
                let mut budget = StepBudget::new(self.budgets.groebner);
                let membership = germcalc_core::germ::poly_membership(
                    f.poly(),
                    &ideal.generator_polys(),
                    &mut budget,
                );
                let verdict = match membership {
                    Membership::In { .. } => Verdict::proved(
                        Witness::IdealMembership {
                            target: WPoly(f.poly().clone()),
                            gens: ideal.generator_polys().into_iter().map(WPoly).collect(),
                        },
                        BudgetUse {
                            groebner: budget.consumed(),
                            ..BudgetUse::default()
                        },
                    ),
                    Membership::NotIn { remainder, .. } => Verdict::refuted(
                        Witness::NonMembership {
                            target: WPoly(f.poly().clone()),
                            gens: ideal.generator_polys().into_iter().map(WPoly).collect(),
                            remainder: WPoly(remainder),
                        },
                        BudgetUse {
                            groebner: budget.consumed(),
                            ..BudgetUse::default()
                        },
                    ),
                    Membership::Exhausted { consumed } => Verdict::unknown(
                        "basis budget exhausted",
                        BudgetUse {
                            groebner: consumed,
                            ..BudgetUse::default()
                        },
                    ),
                };
                self.emit(line_no, "member", line, verdict)
            }
            "radmem" => {
                let (ideal_name, germ_expr) = two_args(rest)
                    .ok_or_else(|| self.err(line_no, "expected: radmem I f"))?;
                let ideal = self.ideal(line_no, ideal_name, field)?;
                let f = self.germ(line_no, germ_expr, field)?;
                let verdict = germ_vanishes_on(&ideal, &f, &self.budgets);
                self.emit(line_no, "radmem", line, verdict)
            }
            "realclosure" => {
                let (ideal_name, list) = two_args(rest)
                    .ok_or_else(|| self.err(line_no, "expected: realclosure I [targets]"))?;
                if field != FieldTag::Real {
                    return Err(self.err(line_no, "realclosure requires the real field"));
                }
                let ideal = self.ideal(line_no, ideal_name, field)?;
                let target_texts = parse_bracket_list(list)
                    .ok_or_else(|| self.err(line_no, "expected a [bracketed, list]"))?;
                let mut targets = Vec::new();
                for t in &target_texts {
                    targets.push(self.germ(line_no, t, field)?);
                }
                let mut verdicts = Vec::new();
                for t in &targets {
                    verdicts.push(germ_vanishes_on(&ideal, t, &self.budgets));
                }
                let json = json!({
                    "line": line_no,
                    "command": line,
                    "targets": target_texts,
                    "verdicts": verdicts,
                });
                let summary = format!(
                    "line {}: realclosure -> [{}]",
                    line_no,
                    verdicts
                        .iter()
                        .map(|v| outcome_text(v.outcome))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                Ok(Some(LineOutput {
                    json: Some(json),
                    summary,
                }))
            }
            "refute" => {
                if field != FieldTag::Real {
                    return Err(self.err(line_no, "refute requires the real field"));
                }
                let (ideal_name, rest2) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| self.err(line_no, "expected: refute I f [curve]"))?;
                let (germ_expr, curve_text) = match rest2.find('{') {
                    Some(i) => (rest2[..i].trim(), Some(rest2[i..].trim())),
                    None => (rest2.trim(), None),
                };
                let ideal = self.ideal(line_no, ideal_name, field)?;
                let f = self.germ(line_no, germ_expr, field)?;
                let curve = match curve_text {
                    Some(t) => Some(
                        parse_curve(t, &self.point_text)
                            .map_err(|e| self.err(line_no, e))?,
                    ),
                    None => None,
                };
                let verdict =
                    match refute_real_vanishing(&ideal, &f, curve.as_ref(), self.budgets.curve) {
                        Ok(Refutation::Refuted {
                            curve,
                            candidates_tried,
                            ..
                        }) => Verdict::refuted(
                            Witness::Curve {
                                target: WPoly(f.poly().clone()),
                                gens: ideal
                                    .generator_polys()
                                    .into_iter()
                                    .map(WPoly)
                                    .collect(),
                                curve: WCurve::from_curve(&curve),
                            },
                            BudgetUse {
                                curve: candidates_tried,
                                ..BudgetUse::default()
                            },
                        ),
                        Ok(Refutation::Unknown { candidates_tried }) => Verdict::unknown(
                            "no refuting curve found",
                            BudgetUse {
                                curve: candidates_tried,
                                ..BudgetUse::default()
                            },
                        ),
                        Err(e) => return Err(self.err(line_no, e.to_string())),
                    };
                self.emit(line_no, "refute", line, verdict)
            }
            "contains" => {
                let (a_name, b_name) = two_args(rest)
                    .ok_or_else(|| self.err(line_no, "expected: contains A B"))?;
                let a = SetGerm::of_ideal(&self.ideal(line_no, a_name, field)?);
                let b = SetGerm::of_ideal(&self.ideal(line_no, b_name, field)?);
                let verdict = setgerm_contains(&a, &b, &self.budgets);
                self.emit(line_no, "contains", line, verdict)
            }
            "precedes" | "equiv" => {
                let (a_name, b_name) = two_args(rest)
                    .ok_or_else(|| self.err(line_no, format!("expected: {} A B", keyword)))?;
                let a = self.system(line_no, a_name, field)?;
                let b = self.system(line_no, b_name, field)?;
                let verdict = if keyword == "precedes" {
                    precedes(&a, &b, &self.budgets)
                } else {
                    germcalc_core::multigerm::equiv(&a, &b, &self.budgets)
                };
                self.emit(line_no, keyword, line, verdict)
            }
            "pointgerm" => {
                let (name, dims_part) = rest
                    .split_once("dims")
                    .ok_or_else(|| self.err(line_no, "expected: pointgerm I dims a..b"))?;
                let dims = parse_dims(dims_part.trim())
                    .ok_or_else(|| self.err(line_no, "expected: dims a..b or a list"))?;
                let dims: BTreeSet<VarIndex> =
                    dims.into_iter().filter_map(VarIndex::new).collect();
                let stream = self.stream(line_no, name.trim(), field)?;
                let verdict = is_point_multigerm(&stream, &dims, &self.budgets);
                self.emit(line_no, "pointgerm", line, verdict)
            }
            "nss" => {
                let (ideal_name, germ_expr) =
                    two_args(rest).ok_or_else(|| self.err(line_no, "expected: nss I f"))?;
                let ideal = self.ideal(line_no, ideal_name, field)?;
                let f = self.germ(line_no, germ_expr, field)?;
                let report = nullstellensatz_check(&ideal, &f, &self.budgets);
                if report.agreement == Agreement::Disagree {
                    self.engine_defect = true;
                }
                let summary = format!(
                    "line {}: nss -> zero-ideal {} / radical {} ({:?})",
                    line_no,
                    outcome_text(report.zero_ideal_side.outcome),
                    outcome_text(report.radical_side.outcome),
                    report.agreement
                );
                Ok(Some(LineOutput {
                    json: Some(json!({
                        "line": line_no,
                        "command": line,
                        "report": report,
                    })),
                    summary,
                }))
            }
            "invertible" => {
                let g = self.germ(line_no, rest, field)?;
                let result = g.is_invertible();
                Ok(Some(LineOutput {
                    json: Some(json!({
                        "line": line_no,
                        "command": line,
                        "result": result,
                    })),
                    summary: format!("line {}: invertible -> {}", line_no, result),
                }))
            }
            "restrict" => {
                let (germ_expr, set_part) = rest
                    .split_once('{')
                    .ok_or_else(|| self.err(line_no, "expected: restrict g {vars}"))?;
                let set_part = set_part
                    .strip_suffix('}')
                    .ok_or_else(|| self.err(line_no, "unterminated variable set"))?;
                let mut s: BTreeSet<VarIndex> = BTreeSet::new();
                for part in set_part.split(',') {
                    let idx: u32 = part.trim().parse().map_err(|_| {
                        self.err(line_no, format!("bad variable index {:?}", part.trim()))
                    })?;
                    s.insert(
                        VarIndex::new(idx)
                            .ok_or_else(|| self.err(line_no, "indices start at 1"))?,
                    );
                }
                let g = self.germ(line_no, germ_expr.trim(), field)?;
                match g.restrict(&s) {
                    Ok(res) => Ok(Some(LineOutput {
                        json: Some(json!({
                            "line": line_no,
                            "command": line,
                            "result": print_canonical(res.poly()),
                            "indexing_set": res.indexing_set().iter().map(|x| x.get()).collect::<Vec<_>>(),
                        })),
                        summary: format!("line {}: restrict -> ok", line_no),
                    })),
                    Err(e) => Err(self.err(line_no, e.to_string())),
                }
            }
            "dump" => {
                let value = match self.definitions.get(rest) {
                    Some(Definition::Germ(t)) => json!({"kind": "germ", "text": t}),
                    Some(Definition::Ideal(gens)) => json!({"kind": "ideal", "generators": gens}),
                    Some(Definition::Templates(t)) => json!({"kind": "templates", "templates": t}),
                    Some(Definition::ZeroOf(n)) => json!({"kind": "zero_system", "of": n}),
                    Some(Definition::PointSystem(d)) => json!({"kind": "point_system", "dims": d}),
                    None => {
                        return Err(self.err(line_no, format!("undefined name {}", rest)))
                    }
                };
                Ok(Some(LineOutput {
                    json: Some(json!({
                        "line": line_no,
                        "command": line,
                        "definition": value,
                        "field": self.field,
                        "point": self.point_text,
                    })),
                    summary: format!("line {}: dump {}", line_no, rest),
                }))
            }
            other => Err(self.err(line_no, format!("unknown command {:?}", other))),
        }
    }

    fn emit(
        &self,
        line_no: usize,
        kind: &str,
        command: &str,
        verdict: Verdict,
    ) -> Result<Option<LineOutput>, ScriptError> {
        let summary = format!("line {}: {} -> {}", line_no, kind, outcome_text(verdict.outcome));
        Ok(Some(LineOutput {
            json: Some(json!({
                "line": line_no,
                "command": command,
                "verdict": verdict,
            })),
            summary,
        }))
    }
}

fn outcome_text(o: Outcome) -> &'static str {
    match o {
        Outcome::Proved => "proved",
        Outcome::Refuted => "refuted",
        Outcome::Unknown => "unknown",
    }
}

fn two_args(rest: &str) -> Option<(&str, &str)> {
    let (a, b) = rest.split_once(char::is_whitespace)?;
    let b = b.trim();
    if b.is_empty() {
        None
    } else {
        Some((a, b))
    }
}

fn split_definition(rest: &str) -> Option<(&str, &str)> {
    let (name, expr) = rest.split_once('=')?;
    let name = name.trim();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return None;
    }
    Some((name, expr.trim()))
}

fn parse_bracket_list(expr: &str) -> Option<Vec<String>> {
    let inner = expr.trim().strip_prefix('[')?.strip_suffix(']')?;
    // split on commas at paren depth zero
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in inner.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    Some(parts)
}

fn parse_dims(text: &str) -> Option<Vec<u32>> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let a: u32 = a.trim().parse().ok()?;
        let b: u32 = b.trim().trim_start_matches('=').trim().parse().ok()?;
        if a == 0 || b < a {
            return None;
        }
        return Some((a..=b).collect());
    }
    let mut out = Vec::new();
    for part in text.split(',') {
        out.push(part.trim().parse().ok()?);
    }
    Some(out)
}

/// Parse a curve literal like `{2: s, 3: -s + 1/2}` against the session
/// base point (real field).
fn parse_curve(
    text: &str,
    point_text: &str,
) -> Result<germcalc_core::RationalCurve, String> {
    let base = parse_base_point(point_text, FieldTag::Real).map_err(|e| e.to_string())?;
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or("curve must be enclosed in braces")?;
    let mut components = Vec::new();
    for entry in inner.split(',') {
        if entry.trim().is_empty() {
            continue;
        }
        let (idx, expr) = entry
            .split_once(':')
            .ok_or_else(|| format!("expected 'index: expr', got {:?}", entry))?;
        let idx: u32 = idx
            .trim()
            .parse()
            .map_err(|_| format!("bad variable index {:?}", idx.trim()))?;
        let x = VarIndex::new(idx).ok_or("indices start at 1")?;
        let u = UniPoly::parse(expr.trim())?;
        components.push((x, u));
    }
    germcalc_core::RationalCurve::new(base, components).map_err(|e| e.to_string())
}

/// Budgets from the GERMCALC_BUDGETS environment variable, e.g.
/// "enum=64,gb=10000,curve=256"; unknown keys are rejected.
pub fn budgets_from_env(var: &str) -> Result<Budgets, String> {
    let mut budgets = Budgets::default();
    for part in var.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value in GERMCALC_BUDGETS, got {:?}", part))?;
        let value: u64 = value
            .parse()
            .map_err(|_| format!("bad budget value {:?}", value))?;
        match key.trim() {
            "enum" => budgets.enumeration = value,
            "gb" => budgets.groebner = value,
            "curve" => budgets.curve = value,
            other => return Err(format!("unknown budget key {:?}", other)),
        }
    }
    Ok(budgets)
}

