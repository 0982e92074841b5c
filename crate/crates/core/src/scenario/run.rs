use std::time::Instant;

use super::report::{CheckReport, Report, Residual};
use super::{Check, ElementValue, Scenario};
use crate::error::{Error, Result};
use crate::graded::GradedPoly;
use crate::linfty::{
    gauge_flow_rhs, gauge_rhs, kuranishi, linfty_identity_residual, master_defect, mc_extended_residual,
    mc_formal_residual, mc_residual, FormalElement, LinftyStructure, DEFAULT_ARITY_CAP,
};
use crate::symplectic::CotangentChart;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Largest arity for which L∞ relations are evaluated.
    pub arity_cap: usize,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            arity_cap: DEFAULT_ARITY_CAP,
            timing: false,
        }
    }
}

/// The resolved Darboux signs `{q,p_q}` and `{p_q,q}`, one entry per base
/// degree present in the chart.
pub fn sign_fingerprint(cot: &CotangentChart) -> String {
    let table = cot.coordinate_table();
    let base = cot.base();
    let mut seen = Vec::new();
    let mut parts = Vec::new();
    for q in 0..base.dim() {
        let d = base.degree(q);
        if seen.contains(&d) {
            continue;
        }
        seen.push(d);
        let qn = GradedPoly::var(cot.chart(), q).to_string();
        let pn = GradedPoly::var(cot.chart(), cot.momentum(q)).to_string();
        let look = |a: &str, b: &str| {
            table
                .iter()
                .find(|(x, y, _)| x == a && y == b)
                .map_or("0".to_string(), |t| t.2.clone())
        };
        parts.push(format!(
            "|q|={d}: {{q,p}}={} {{p,q}}={}",
            look(&qn, &pn),
            look(&pn, &qn)
        ));
    }
    format!("n={}; {}", cot.shift(), parts.join("; "))
}

fn outcome(check: &Check, residuals: Vec<Residual>, passed: bool) -> CheckReport {
    CheckReport {
        check: check.to_string(),
        passed,
        residuals,
        note: None,
    }
}

fn failed(check: &Check, note: String) -> CheckReport {
    CheckReport {
        check: check.to_string(),
        passed: false,
        residuals: Vec::new(),
        note: Some(note),
    }
}

/// Nondecreasing index tuples of length `k` over `0..dim`.
fn multisets(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, &mut Vec::new(), &mut out);
    out
}

struct Runner<'a> {
    sc: &'a Scenario,
    s: std::result::Result<LinftyStructure, Error>,
    opts: &'a RunOptions,
}

impl Runner<'_> {
    fn poly(&self, name: &str) -> GradedPoly {
        match &self.sc.element(name).expect("validated at parse time").value {
            ElementValue::Poly(p) => p.clone(),
            ElementValue::Curve(c) => c.iter().fold(GradedPoly::zero(self.sc.base()), |acc, x| &acc + x),
            ElementValue::Form(_) => unreachable!("checks on forms are validated at parse time"),
        }
    }

    fn structure(&self) -> Result<&LinftyStructure> {
        self.s.as_ref().map_err(Clone::clone)
    }

    fn run(&self, check: &Check) -> CheckReport {
        match self.eval(check) {
            Ok(r) => r,
            Err(e) => failed(check, e.to_string()),
        }
    }

    fn eval(&self, check: &Check) -> Result<CheckReport> {
        let cot = self.sc.cotangent();
        match check {
            Check::Master => {
                let defect = master_defect(cot, self.sc.theta())?;
                let ok = defect.is_zero();
                Ok(outcome(check, vec![Residual::new("{theta,theta}/2", defect)], ok))
            }
            Check::Brackets(k) => self.brackets(check, *k),
            Check::Mc(name) => {
                let s = self.structure()?;
                let r = mc_residual(s, &self.poly(name))?;
                let ok = r.is_zero();
                Ok(outcome(check, vec![Residual::new(format!("MC({name})"), r)], ok))
            }
            Check::McFormal(name, order) => {
                let s = self.structure()?;
                let element = match &self.sc.element(name).expect("validated").value {
                    ElementValue::Curve(c) => FormalElement::from_curve(s, c, *order)?,
                    _ => FormalElement::taylor_lift(s, &self.poly(name), *order)?,
                };
                let r = mc_formal_residual(s, &element)?;
                let mut residuals = vec![Residual::new("order 0", &r.curvature)];
                for (k, o) in r.orders.iter().enumerate() {
                    residuals.push(Residual::new(format!("order {}", k + 1), o));
                }
                Ok(outcome(check, residuals, r.is_zero()))
            }
            Check::Gauge(f, lambda) => {
                let s = self.structure()?;
                let (f, l) = (self.poly(f), self.poly(lambda));
                let series = gauge_rhs(s, &f, &l)?;
                let flowed = gauge_flow_rhs(s, &f, &l)?;
                let ok = series == flowed;
                Ok(outcome(
                    check,
                    vec![
                        Residual::new("gauge vector", &series),
                        Residual::new("from flowed theta", &flowed),
                    ],
                    ok,
                ))
            }
            Check::Kuranishi(name) => {
                let s = self.structure()?;
                let r = kuranishi(s, &self.poly(name))?;
                let ok = r.is_zero();
                Ok(outcome(
                    check,
                    vec![Residual::new(format!("l2({name},{name})"), r)],
                    ok,
                ))
            }
            Check::Extended(f, theta_t) => {
                let s = self.structure()?;
                let (ambient, base) = mc_extended_residual(s, &self.poly(f), &self.poly(theta_t))?;
                let ok = ambient.is_zero() && base.is_zero();
                Ok(outcome(
                    check,
                    vec![
                        Residual::new(
                            format!("{{theta,{theta_t}}} + 1/2{{{theta_t},{theta_t}}}"),
                            ambient,
                        ),
                        Residual::new(format!("MC({f}; {theta_t})"), base),
                    ],
                    ok,
                ))
            }
            Check::GraphLagrangian(name) => {
                let ElementValue::Form(alpha) = &self.sc.element(name).expect("validated").value else {
                    unreachable!("validated at parse time")
                };
                let closed = cot.graph_is_lagrangian(alpha)?;
                let brute = cot.graph_ideal_closed(alpha)?;
                let base = self.sc.base();
                let residuals = alpha
                    .curl()
                    .stored()
                    .map(|(&(a, b), v)| {
                        Residual::new(
                            format!("curl({},{})", base.coordinate(a).name, base.coordinate(b).name),
                            v,
                        )
                    })
                    .collect();
                let mut r = outcome(check, residuals, closed && brute);
                if closed != brute {
                    r.passed = false;
                    r.note = Some(format!(
                        "closedness ({closed}) disagrees with the ideal test ({brute})"
                    ));
                }
                Ok(r)
            }
        }
    }

    /// Structure constants `l^j` on coordinate generators for `j ≤ k`, and the
    /// L∞ relations on all generator tuples up to arity `k`.
    fn brackets(&self, check: &Check, k: usize) -> Result<CheckReport> {
        let s = self.structure()?;
        if k > self.opts.arity_cap {
            return Err(Error::ArityCap {
                arity: k,
                cap: self.opts.arity_cap,
            });
        }
        let base = self.sc.base();
        let gens: Vec<GradedPoly> = (0..base.dim()).map(|i| GradedPoly::var(base, i)).collect();
        let label = |head: &str, idx: &[usize]| {
            let names: Vec<&str> = idx.iter().map(|&i| base.coordinate(i).name.as_str()).collect();
            format!("{head}({})", names.join(","))
        };
        let mut residuals = Vec::new();
        if !s.curvature().is_zero() {
            residuals.push(Residual::new("l0", s.curvature()));
        }
        let mut violations = Vec::new();
        for j in 1..=k {
            for idx in multisets(gens.len(), j) {
                let args: Vec<GradedPoly> = idx.iter().map(|&i| gens[i].clone()).collect();
                let v = s.bracket(&args)?;
                if !v.is_zero() {
                    residuals.push(Residual::new(label(&format!("l{j}"), &idx), v));
                }
                let rel = linfty_identity_residual(s, &args, self.opts.arity_cap)?;
                if !rel.is_zero() {
                    violations.push(Residual::new(label("relation", &idx), rel));
                }
            }
        }
        let ok = violations.is_empty();
        residuals.extend(violations);
        Ok(outcome(check, residuals, ok))
    }
}

/// Runs every check of `sc`. Checks needing the L∞ structure fail with a
/// diagnostic when θ violates the master equation.
pub fn run_scenario(name: &str, sc: &Scenario, opts: &RunOptions) -> Report {
    let runner = Runner {
        sc,
        s: LinftyStructure::new(sc.cotangent(), sc.theta().clone()),
        opts,
    };
    let mut checks = Vec::new();
    let mut timing = Vec::new();
    for c in sc.checks() {
        let start = Instant::now();
        checks.push(runner.run(c));
        timing.push(start.elapsed().as_millis());
    }
    Report {
        scenario: name.to_string(),
        shift: sc.shift(),
        signs: sign_fingerprint(sc.cotangent()),
        passed: checks.iter().all(|c| c.passed),
        checks,
        timing_ms: opts.timing.then_some(timing),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(4, 4).len(), 35);
    }

    #[test]
    fn failed_master_carries_defect() {
        // a non-Poisson bivector on three coordinates
        let text = "coord x : 0\ncoord y : 0\ncoord z : 0\nshift 1\n\
                    theta = x*p(y)*p(z) + y*p(x)*p(y)\nelement f : mc = 0\n\
                    check master\ncheck mc f\n";
        let sc = parse_scenario(text).unwrap();
        let r = run_scenario("bad", &sc, &RunOptions::default());
        assert!(!r.passed);
        assert_eq!(r.checks[0].residuals[0].value, "-x*p(x)*p(y)*p(z)");
        assert!(r.checks[1].note.as_deref().unwrap().contains("master equation"));
    }

    #[test]
    fn all_pass_lists_zero_residuals() {
        let text = "coord x : 0\ncoord y : 0\nshift 1\ntheta = p(x)*p(y)\ncheck master\n";
        let r = run_scenario("plane", &parse_scenario(text).unwrap(), &RunOptions::default());
        assert!(r.passed);
        assert_eq!(r.checks[0].residuals[0].value, "0");
        assert_eq!(r.to_text(), r.to_text());
    }
}
