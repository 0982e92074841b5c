//! The line-oriented scenario language: declarations of a base chart, a
//! shift, a Hamiltonian and named elements, followed by requested checks.
//!
//! ```text
//! # comment
//! coord x : 0
//! coord y : 0
//! shift 1
//! theta = p(x)*p(y)
//! element f : mc = x*y
//! check master
//! check mc f
//! ```

mod corpus;
mod expr;
mod report;
mod run;

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::calculus::OneForm;
use crate::error::Error;
use crate::graded::{Chart, GradedPoly, Monomial};
use crate::symplectic::{shift_cotangent, CotangentChart};
use expr::{evaluate, Env, ExprError};

pub use corpus::{corpus, corpus_entry, CorpusEntry};
pub use report::{CheckReport, Report, Residual};
pub use run::{run_scenario, sign_fingerprint, RunOptions};

/// Name of the formal parameter in curve elements.
pub const FORMAL_PARAMETER: &str = "nu";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: {source}")]
    Invalid {
        line: usize,
        column: usize,
        #[source]
        source: Error,
    },
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
    #[error("invalid check: {0}")]
    Check(String),
}

/// What a named element stands for, fixing its expected degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementRole {
    /// Base function of degree `n`.
    Mc,
    /// Base function of degree `n−1`.
    Gauge,
    /// Function on the cotangent chart of degree `n+1`.
    Ambient,
    /// 1-form of degree `n` on the base.
    Form,
    /// Polynomial curve `Σ_j ν^j f_j`, `f_j` base functions of degree `n`.
    Curve,
}

impl ElementRole {
    pub fn keyword(self) -> &'static str {
        match self {
            ElementRole::Mc => "mc",
            ElementRole::Gauge => "gauge",
            ElementRole::Ambient => "ambient",
            ElementRole::Form => "form",
            ElementRole::Curve => "curve",
        }
    }

    fn parse(s: &str) -> Option<ElementRole> {
        Some(match s {
            "mc" => ElementRole::Mc,
            "gauge" => ElementRole::Gauge,
            "ambient" => ElementRole::Ambient,
            "form" => ElementRole::Form,
            "curve" => ElementRole::Curve,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementValue {
    Poly(GradedPoly),
    Form(OneForm),
    /// `coeffs[j]` multiplies `ν^{j+1}`.
    Curve(Vec<GradedPoly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub role: ElementRole,
    pub value: ElementValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Master,
    Brackets(usize),
    Mc(String),
    McFormal(String, usize),
    Gauge(String, String),
    Kuranishi(String),
    Extended(String, String),
    GraphLagrangian(String),
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Master => write!(f, "master"),
            Check::Brackets(k) => write!(f, "brackets {k}"),
            Check::Mc(a) => write!(f, "mc {a}"),
            Check::McFormal(a, n) => write!(f, "mc-formal {a} {n}"),
            Check::Gauge(a, b) => write!(f, "gauge {a} {b}"),
            Check::Kuranishi(a) => write!(f, "kuranishi {a}"),
            Check::Extended(a, b) => write!(f, "extended {a} {b}"),
            Check::GraphLagrangian(a) => write!(f, "graph-lagrangian {a}"),
        }
    }
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    cot: CotangentChart,
    theta: GradedPoly,
    elements: Vec<Element>,
    checks: Vec<Check>,
}

impl Scenario {
    pub fn cotangent(&self) -> &CotangentChart {
        &self.cot
    }

    pub fn base(&self) -> &Chart {
        self.cot.base()
    }

    pub fn shift(&self) -> i64 {
        self.cot.shift()
    }

    pub fn theta(&self) -> &GradedPoly {
        &self.theta
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, name: &str) -> Option<&Element> {
        self.elements.iter().find(|e| e.name == name)
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// The same declarations with a different list of checks, validated
    /// against the declared elements.
    pub fn with_checks(&self, checks: Vec<Check>) -> Result<Scenario, ScenarioError> {
        for c in &checks {
            self.validate_check(c).map_err(ScenarioError::Check)?;
        }
        Ok(Scenario {
            checks,
            ..self.clone()
        })
    }

    fn validate_check(&self, check: &Check) -> Result<(), String> {
        use ElementRole::*;
        let want = |name: &str, roles: &[ElementRole]| -> Result<(), String> {
            match self.element(name) {
                None => Err(format!("unknown element `{name}`")),
                Some(e) if roles.contains(&e.role) => Ok(()),
                Some(e) => Err(format!(
                    "element `{name}` has role {}, expected {}",
                    e.role.keyword(),
                    roles.iter().map(|r| r.keyword()).collect::<Vec<_>>().join(" or ")
                )),
            }
        };
        match check {
            Check::Master | Check::Brackets(_) => Ok(()),
            Check::Mc(a) | Check::McFormal(a, _) => want(a, &[Mc, Curve]),
            Check::Gauge(a, b) => want(a, &[Mc]).and_then(|_| want(b, &[Gauge])),
            Check::Kuranishi(a) => want(a, &[Mc]),
            Check::Extended(a, b) => want(a, &[Mc]).and_then(|_| want(b, &[Ambient])),
            Check::GraphLagrangian(a) => want(a, &[Form]),
        }
    }

    /// Canonical source text; parsing it gives back an equal scenario.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in self.base().coords() {
            let _ = writeln!(out, "coord {} : {}", c.name, c.degree);
        }
        let _ = writeln!(out, "shift {}", self.shift());
        let _ = writeln!(out, "theta = {}", self.theta);
        for e in &self.elements {
            let _ = writeln!(
                out,
                "element {} : {} = {}",
                e.name,
                e.role.keyword(),
                render_value(self.base(), &e.value)
            );
        }
        for c in &self.checks {
            let _ = writeln!(out, "check {c}");
        }
        out
    }
}

fn render_value(base: &Chart, v: &ElementValue) -> String {
    match v {
        ElementValue::Poly(p) => p.to_string(),
        ElementValue::Form(alpha) => {
            let parts: Vec<String> = alpha
                .components()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("d({})*({c})", base.coordinate(i).name))
                .collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        }
        ElementValue::Curve(coeffs) => {
            let parts: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| match j {
                    0 => format!("{FORMAL_PARAMETER}*({c})"),
                    _ => format!("{FORMAL_PARAMETER}^{}*({c})", j + 1),
                })
                .collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        }
    }
}

/// One source line split into its leading keyword and the rest, with the
/// 1-based column where the rest starts.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn syntax(&self, column: usize, message: impl Into<String>) -> ScenarioError {
        ScenarioError::Syntax {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn invalid(&self, column: usize, source: Error) -> ScenarioError {
        ScenarioError::Invalid {
            line: self.number,
            column,
            source,
        }
    }

    /// Whitespace-separated words with their 1-based columns.
    fn words(&self) -> Vec<(&'a str, usize)> {
        let mut out = Vec::new();
        let mut start = None;
        for (col, (i, ch)) in self.text.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((i, col + 1)),
                (true, Some((s, c))) => {
                    out.push((&self.text[s..i], c));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((s, c)) = start {
            out.push((&self.text[s..], c));
        }
        out
    }

    /// The text after the first `=`, with its column.
    fn after_equals(&self) -> Option<(&'a str, usize)> {
        let at = self.text.find('=')?;
        let col = self.text[..at].chars().count() + 2;
        Some((&self.text[at + 1..], col))
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_count(line: &Line, word: Option<&(&str, usize)>, what: &str) -> Result<usize, ScenarioError> {
    match word {
        Some((w, col)) => w
            .parse()
            .map_err(|_| line.syntax(*col, format!("expected {what}, found `{w}`"))),
        None => Err(line.syntax(line.text.chars().count() + 1, format!("expected {what}"))),
    }
}

struct Contexts {
    base: Env,
    ambient: Env,
    form: Env,
    curve: Option<Env>,
}

fn contexts(cot: &CotangentChart) -> Contexts {
    let base = cot.base();
    let m = base.dim();
    let names: HashMap<String, usize> = (0..m).map(|i| (base.coordinate(i).name.clone(), i)).collect();
    let momenta: HashMap<String, usize> = names.iter().map(|(k, &i)| (k.clone(), cot.momentum(i))).collect();

    let mut form_decls: Vec<(String, i64)> = base
        .coords()
        .iter()
        .map(|c| (format!("d({})", c.name), c.degree as i64))
        .collect();
    form_decls.extend(base.coords().iter().map(|c| (c.name.clone(), c.degree as i64)));
    let form_chart = Chart::new(&form_decls).expect("differential names are distinct from coordinates");

    let mut curve_decls: Vec<(String, i64)> = base
        .coords()
        .iter()
        .map(|c| (c.name.clone(), c.degree as i64))
        .collect();
    curve_decls.push((FORMAL_PARAMETER.into(), 0));
    let curve = Chart::new(&curve_decls).ok().map(|chart| {
        let mut idents = names.clone();
        idents.insert(FORMAL_PARAMETER.into(), m);
        Env {
            chart,
            idents,
            momenta: None,
            differentials: None,
            context: "curve elements",
        }
    });

    Contexts {
        base: Env {
            chart: base.clone(),
            idents: names.clone(),
            momenta: None,
            differentials: None,
            context: "base functions",
        },
        ambient: Env {
            chart: cot.chart().clone(),
            idents: names.iter().map(|(k, &i)| (k.clone(), i)).collect(),
            momenta: Some(momenta),
            differentials: None,
            context: "theta",
        },
        form: Env {
            chart: form_chart,
            idents: names.iter().map(|(k, &i)| (k.clone(), m + i)).collect(),
            momenta: None,
            differentials: Some(names.clone()),
            context: "base functions",
        },
        curve,
    }
}

/// Splits a polynomial over `d(c)…, c…` into right coefficients.
fn split_form(base: &Chart, p: &GradedPoly) -> Result<OneForm, String> {
    let m = base.dim();
    let mut comps = vec![GradedPoly::zero(base); m];
    for (mono, c) in p.terms() {
        let (diffs, rest): (Vec<_>, Vec<_>) = mono.factors().iter().partition(|(i, _)| *i < m);
        match diffs.as_slice() {
            [(i, 1)] => {
                let rest: Vec<(usize, u32)> = rest.iter().map(|&(j, e)| (j - m, e)).collect();
                let mono = Monomial::from_sorted(base, rest).expect("factor of a valid monomial");
                comps[*i].add_term(mono, c.clone());
            }
            _ => return Err("1-form terms must contain exactly one differential d(..)".into()),
        }
    }
    Ok(OneForm::new(base, comps).expect("components on the base chart"))
}

/// Splits a polynomial over `c…, ν` into its `ν^j` coefficients, `j ≥ 1`.
fn split_curve(base: &Chart, p: &GradedPoly) -> Result<Vec<GradedPoly>, String> {
    let m = base.dim();
    let mut coeffs: Vec<GradedPoly> = Vec::new();
    for (mono, c) in p.terms() {
        let j = mono.exponent(m) as usize;
        if j == 0 {
            return Err(format!("curve terms must contain {FORMAL_PARAMETER}"));
        }
        while coeffs.len() < j {
            coeffs.push(GradedPoly::zero(base));
        }
        let rest: Vec<(usize, u32)> = mono.factors().iter().copied().filter(|(i, _)| *i < m).collect();
        let mono = Monomial::from_sorted(base, rest).expect("factor of a valid monomial");
        coeffs[j - 1].add_term(mono, c.clone());
    }
    Ok(coeffs)
}

/// Parses and validates scenario text. A θ failing the master equation is
/// accepted here and reported by the `master` check.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, t)| Line {
            number: i + 1,
            text: t,
        })
        .filter(|l| {
            let t = l.text.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect();

    // pass 1: chart and shift
    let mut decls: Vec<(String, i64)> = Vec::new();
    let mut decl_lines: Vec<usize> = Vec::new();
    let mut shift: Option<i64> = None;
    let mut shift_line = 0;
    for l in &lines {
        let words = l.words();
        match words[0].0 {
            "coord" => {
                let bad = || l.syntax(words[0].1, "expected `coord <name> : <degree>`");
                if words.len() != 4 || words[2].0 != ":" {
                    return Err(bad());
                }
                if !is_name(words[1].0) {
                    return Err(l.syntax(words[1].1, format!("invalid coordinate name `{}`", words[1].0)));
                }
                let degree: i64 = words[3]
                    .0
                    .parse()
                    .map_err(|_| l.syntax(words[3].1, "expected an integer degree"))?;
                if decls.iter().any(|(n, _)| n == words[1].0) {
                    return Err(l.invalid(words[1].1, Error::DuplicateCoordinate(words[1].0.into())));
                }
                if degree < 0 {
                    return Err(l.invalid(
                        words[3].1,
                        Error::NegativeDegree {
                            name: words[1].0.into(),
                            degree,
                        },
                    ));
                }
                decls.push((words[1].0.to_string(), degree));
                decl_lines.push(l.number);
            }
            "shift" => {
                if shift.is_some() {
                    return Err(l.syntax(words[0].1, "duplicate `shift` declaration"));
                }
                if words.len() != 2 {
                    return Err(l.syntax(words[0].1, "expected `shift <n>`"));
                }
                shift = Some(
                    words[1]
                        .0
                        .parse()
                        .map_err(|_| l.syntax(words[1].1, "expected an integer shift"))?,
                );
                shift_line = l.number;
            }
            "theta" | "element" | "check" => {}
            other => return Err(l.syntax(words[0].1, format!("unknown directive `{other}`"))),
        }
    }
    let shift = shift.ok_or(ScenarioError::Missing("shift"))?;
    let base = Chart::new(&decls).expect("declarations validated above");
    let cot = shift_cotangent(&base, shift).map_err(|e| ScenarioError::Invalid {
        line: shift_line,
        column: 7,
        source: e,
    })?;
    let ctx = contexts(&cot);
    let n = shift;

    // pass 2: theta, elements, checks
    let mut theta: Option<GradedPoly> = None;
    let mut elements: Vec<Element> = Vec::new();
    let mut pending_checks: Vec<(Check, usize, usize)> = Vec::new();
    let expr_err = |l: &Line, e: ExprError| l.syntax(e.column, e.message);
    for l in &lines {
        let words = l.words();
        match words[0].0 {
            "theta" => {
                if theta.is_some() {
                    return Err(l.syntax(words[0].1, "duplicate `theta` declaration"));
                }
                let (src, col) = l
                    .after_equals()
                    .ok_or_else(|| l.syntax(words[0].1, "expected `theta = <expr>`"))?;
                let value = evaluate(src, col, &ctx.ambient).map_err(|e| expr_err(l, e))?;
                value
                    .expect_degree("theta", n + 1)
                    .map_err(|e| l.invalid(col, e))?;
                theta = Some(value);
            }
            "element" => {
                let bad = || l.syntax(words[0].1, "expected `element <name> : <role> = <expr>`");
                if words.len() < 5 || words[2].0 != ":" {
                    return Err(bad());
                }
                let name = words[1].0;
                if !is_name(name) {
                    return Err(l.syntax(words[1].1, format!("invalid element name `{name}`")));
                }
                if elements.iter().any(|e| e.name == name) {
                    return Err(l.syntax(words[1].1, format!("duplicate element `{name}`")));
                }
                let role = ElementRole::parse(words[3].0)
                    .ok_or_else(|| l.syntax(words[3].1, format!("unknown role `{}`", words[3].0)))?;
                if !words[4].0.starts_with('=') {
                    return Err(bad());
                }
                let (src, col) = l.after_equals().ok_or_else(bad)?;
                let value = match role {
                    ElementRole::Mc | ElementRole::Gauge => {
                        let p = evaluate(src, col, &ctx.base).map_err(|e| expr_err(l, e))?;
                        let (what, d) = if role == ElementRole::Mc {
                            ("deformation", n)
                        } else {
                            ("gauge parameter", n - 1)
                        };
                        p.expect_degree(what, d).map_err(|e| l.invalid(col, e))?;
                        ElementValue::Poly(p)
                    }
                    ElementRole::Ambient => {
                        let p = evaluate(src, col, &ctx.ambient).map_err(|e| expr_err(l, e))?;
                        p.expect_degree("ambient deformation", n + 1)
                            .map_err(|e| l.invalid(col, e))?;
                        ElementValue::Poly(p)
                    }
                    ElementRole::Form => {
                        let p = evaluate(src, col, &ctx.form).map_err(|e| expr_err(l, e))?;
                        let alpha = split_form(&base, &p).map_err(|m| l.syntax(col, m))?;
                        match alpha.degree() {
                            Some(d) if d == n || alpha.is_zero() => {}
                            found => {
                                return Err(l.invalid(
                                    col,
                                    Error::DegreeMismatch {
                                        context: "1-form".into(),
                                        expected: n,
                                        found: found.map_or("inhomogeneous".into(), |d| d.to_string()),
                                    },
                                ))
                            }
                        }
                        ElementValue::Form(alpha)
                    }
                    ElementRole::Curve => {
                        let env = ctx.curve.as_ref().ok_or_else(|| {
                            l.syntax(
                                col,
                                format!("a coordinate named `{FORMAL_PARAMETER}` hides the formal parameter"),
                            )
                        })?;
                        let p = evaluate(src, col, env).map_err(|e| expr_err(l, e))?;
                        let coeffs = split_curve(&base, &p).map_err(|m| l.syntax(col, m))?;
                        for c in &coeffs {
                            c.expect_degree("curve coefficient", n)
                                .map_err(|e| l.invalid(col, e))?;
                        }
                        ElementValue::Curve(coeffs)
                    }
                };
                elements.push(Element {
                    name: name.to_string(),
                    role,
                    value,
                });
            }
            "check" => {
                let kind = words
                    .get(1)
                    .ok_or_else(|| l.syntax(words[0].1 + 5, "expected a check kind"))?;
                let arg = |i: usize| -> Result<String, ScenarioError> {
                    words
                        .get(i)
                        .map(|w| w.0.to_string())
                        .ok_or_else(|| l.syntax(l.text.chars().count() + 1, "missing check argument"))
                };
                let arity = match kind.0 {
                    "master" => 0,
                    "brackets" | "mc" | "kuranishi" | "graph-lagrangian" => 1,
                    _ => 2,
                };
                let check = match kind.0 {
                    "master" => Check::Master,
                    "brackets" => Check::Brackets(parse_count(l, words.get(2), "an arity")?),
                    "mc" => Check::Mc(arg(2)?),
                    "mc-formal" => Check::McFormal(arg(2)?, parse_count(l, words.get(3), "an order")?),
                    "gauge" => Check::Gauge(arg(2)?, arg(3)?),
                    "kuranishi" => Check::Kuranishi(arg(2)?),
                    "extended" => Check::Extended(arg(2)?, arg(3)?),
                    "graph-lagrangian" => Check::GraphLagrangian(arg(2)?),
                    other => return Err(l.syntax(kind.1, format!("unknown check `{other}`"))),
                };
                if let Some(extra) = words.get(2 + arity) {
                    return Err(l.syntax(extra.1, "unexpected trailing input"));
                }
                let col = words.get(2).map_or(kind.1, |w| w.1);
                pending_checks.push((check, l.number, col));
            }
            _ => {}
        }
    }
    let theta = theta.ok_or(ScenarioError::Missing("theta"))?;
    let mut scenario = Scenario {
        cot,
        theta,
        elements,
        checks: Vec::new(),
    };
    for (check, line, column) in pending_checks {
        scenario
            .validate_check(&check)
            .map_err(|message| ScenarioError::Syntax {
                line,
                column,
                message,
            })?;
        scenario.checks.push(check);
    }
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANE: &str = "\
# plane
coord x : 0
coord y : 0
coord a : 1
shift 1
theta = p(x)*p(y)
element f : mc = x*y*a + 1/2*x^2*a
element g : mc = x*a - y*a
element a : ambient = x*p(y)*p(x)
check master
check mc f
check extended f a
";

    #[test]
    fn parses_and_round_trips() {
        let s = parse_scenario(PLANE).unwrap();
        assert_eq!(s.base().dim(), 3);
        assert_eq!(s.shift(), 1);
        assert_eq!(s.elements().len(), 3);
        assert_eq!(s.checks().len(), 3);
        let again = parse_scenario(&s.render()).unwrap();
        assert_eq!(again, s);
        assert_eq!(again.render(), s.render());
    }

    #[test]
    fn wrong_theta_degree_is_rejected() {
        let text = PLANE.replace("theta = p(x)*p(y)", "theta = p(x)");
        let err = parse_scenario(&text).unwrap_err();
        assert!(matches!(
            err,
            ScenarioError::Invalid {
                line: 6,
                source: Error::DegreeMismatch { .. },
                ..
            }
        ));
    }

    #[test]
    fn no_checks_is_valid() {
        let s = parse_scenario("coord x : 0\nshift 1\ntheta = 0\n").unwrap();
        assert!(s.checks().is_empty());
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_scenario("coord x : 0\nshift 1\ntheta = p(x)*p(z)\n").unwrap_err();
        assert_eq!(
            err,
            ScenarioError::Syntax {
                line: 3,
                column: 16,
                message: "unknown coordinate `z`".into()
            }
        );
        let err = parse_scenario("coord x : 0\nshift 1\ntheta = 0\ncheck mc f\n").unwrap_err();
        assert!(matches!(
            err,
            ScenarioError::Syntax {
                line: 4,
                column: 10,
                ..
            }
        ));
    }

    #[test]
    fn forms_and_curves() {
        let text = "coord x : 0\ncoord y : 0\nshift 0\ntheta = 0\n\
                    element a : form = d(x)*y + x*d(y)\n\
                    element c : curve = nu*x + nu^3*(y - x)\n";
        let s = parse_scenario(text).unwrap();
        let Some(Element {
            value: ElementValue::Form(alpha),
            ..
        }) = s.element("a")
        else {
            panic!("form expected")
        };
        assert_eq!(alpha.component(0).to_string(), "y");
        assert_eq!(alpha.component(1).to_string(), "x");
        let Some(Element {
            value: ElementValue::Curve(c),
            ..
        }) = s.element("c")
        else {
            panic!("curve expected")
        };
        assert_eq!(c.len(), 3);
        assert!(c[1].is_zero());
        assert_eq!(parse_scenario(&s.render()).unwrap(), s);
    }
}
