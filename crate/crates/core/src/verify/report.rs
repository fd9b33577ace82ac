//! Aggregated verification report. Every check records its own outcome, so one
//! failing or infeasible check does not hide the others.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::bronowski::bronowski_fiber_statistic;
use super::config::RunConfig;
use super::secant::oadp_statistic;
use crate::cremona::{involutory_certificate, jacobian_det, jacobian_det_at, support_compare, QuadraticMap};
use crate::error::{Error, Result};
use crate::exact::field::rational_vec;
use crate::exact::sampling::{stream_rng, small_int_vec};
use crate::exact::{Field, PrimeField, Rational};
use crate::jordan::{CatalogKey, CubicJordanAlgebra};
use crate::varieties::hyperplane::classify_hyperplane_case_seeded;
use crate::varieties::jordan_geom::{inverse_projection_identity, jordan_point, sigma_cubics, sigma_cubics_singular_at};
use crate::varieties::{cubic_invariant, HyperplaneCase, HyperplaneCaseResult, ParamVariety, VarietyKind};

pub const SCHEMA_VERSION: u32 = 1;

/// Rank-one samples for the doubling check.
const DOUBLING_SAMPLES: u64 = 50;
/// Largest n for which the inverse-projection identity is expanded symbolically.
const SYMBOLIC_IDENTITY_MAX_DIM: usize = 9;
const IDENTITY_SAMPLES: u64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Axioms,
    Bronowski,
    DegreeRelation,
    Doubling,
    HyperplaneCase,
    Invariant,
    Involutory,
    Oadp,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Axioms,
        CheckKind::Bronowski,
        CheckKind::DegreeRelation,
        CheckKind::Doubling,
        CheckKind::HyperplaneCase,
        CheckKind::Invariant,
        CheckKind::Involutory,
        CheckKind::Oadp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Axioms => "axioms",
            CheckKind::Bronowski => "bronowski",
            CheckKind::DegreeRelation => "degree_relation",
            CheckKind::Doubling => "doubling",
            CheckKind::HyperplaneCase => "hyperplane_case",
            CheckKind::Invariant => "invariant",
            CheckKind::Involutory => "involutory",
            CheckKind::Oadp => "oadp",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('-', "_");
        CheckKind::ALL.into_iter().find(|k| k.name() == s).ok_or(Error::UnknownKey(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    Error,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
            CheckStatus::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub status: CheckStatus,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl CheckOutcome {
    fn verdict(pass: bool, detail: String, data: Value) -> Self {
        let status = if pass { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckOutcome { status, detail, data }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        CheckOutcome { status: CheckStatus::Skipped, detail: detail.into(), data: Value::Null }
    }

    fn from_error(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { needed, budget } => {
                CheckOutcome::skipped(format!("chart of {needed} points exceeds the budget of {budget}"))
            }
            e => CheckOutcome { status: CheckStatus::Error, detail: e.to_string(), data: Value::Null },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OadpReport {
    pub schema_version: u32,
    pub variety: String,
    pub n: usize,
    pub ambient_dim: usize,
    pub seed: u64,
    pub q: u64,
    pub trials: usize,
    /// Chart point at which the local checks are made.
    #[serde(with = "rational_vec")]
    pub x0: Vec<Rational>,
    pub checks: BTreeMap<String, CheckOutcome>,
    pub passed: bool,
}

impl OadpReport {
    pub fn check(&self, kind: CheckKind) -> Option<&CheckOutcome> {
        self.checks.get(kind.name())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for OadpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variety {}  n={}  P^{}  q={}  trials={}  seed={}", self.variety, self.n, self.ambient_dim, self.q, self.trials, self.seed)?;
        let width = self.checks.keys().map(String::len).max().unwrap_or(5).max(5);
        writeln!(f, "{:<width$}  {:<7}  detail", "check", "status")?;
        for (name, c) in &self.checks {
            writeln!(f, "{name:<width$}  {:<7}  {}", c.status.to_string(), c.detail)?;
        }
        write!(f, "verdict: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Point at which the local checks run: the origin for X_J (translations act
/// transitively on the chart), a seeded general point otherwise.
pub fn base_point(x: &ParamVariety, seed: u64) -> Result<Vec<Rational>> {
    match x.kind() {
        VarietyKind::Jordan { .. } => Ok(vec![Rational::zero(); x.dim()]),
        _ => x.general_point(seed),
    }
}

struct Context<'a> {
    x: &'a ParamVariety,
    config: &'a RunConfig,
    x0: Vec<Rational>,
    q: u64,
    algebra: Option<CubicJordanAlgebra>,
    classification: Option<Result<HyperplaneCaseResult>>,
}

impl Context<'_> {
    fn classification(&mut self) -> Result<HyperplaneCaseResult> {
        if self.classification.is_none() {
            self.classification = Some(classify_hyperplane_case_seeded(self.x, &self.x0, self.config.seed));
        }
        self.classification.clone().expect("just computed")
    }

    fn run(&mut self, kind: CheckKind) -> CheckOutcome {
        let result = match kind {
            CheckKind::Axioms => self.axioms(),
            CheckKind::Bronowski => self.bronowski(),
            CheckKind::DegreeRelation => self.degree_relation(),
            CheckKind::Doubling => self.doubling(),
            CheckKind::HyperplaneCase => self.hyperplane_case(),
            CheckKind::Invariant => self.invariant(),
            CheckKind::Involutory => self.involutory(),
            CheckKind::Oadp => self.oadp(),
        };
        result.unwrap_or_else(CheckOutcome::from_error)
    }

    fn oadp(&self) -> Result<CheckOutcome> {
        let c = self.config;
        let stat = oadp_statistic(self.x, self.q, c.trials, c.seed, c.chart_budget)?;
        let max = c.multi_secant_max(self.q);
        let detail = format!("multi-secant fraction {:.4} (max {max})", stat.multi_secant_fraction);
        Ok(CheckOutcome::verdict(stat.multi_secant_fraction <= max, detail, to_value(&stat)))
    }

    fn bronowski(&self) -> Result<CheckOutcome> {
        let stat = bronowski_fiber_statistic(self.x, &self.x0, self.q, self.config.chart_budget)?;
        let min = self.config.thresholds.singleton_min;
        let detail = format!("singleton fraction {:.4} (min {min})", stat.singleton_fraction);
        Ok(CheckOutcome::verdict(stat.singleton_fraction >= min, detail, to_value(&stat)))
    }

    fn hyperplane_case(&mut self) -> Result<CheckOutcome> {
        let res = self.classification()?;
        let delta = res.delta.map_or("not found".to_string(), |d| d.to_string());
        let detail = format!("{}, delta = {delta}", res.tag);
        let data = json!({ "tag": res.tag, "delta": res.delta });
        // X_J is always in the quadro-quadric hyperplane case
        let pass = self.algebra.is_none() || (res.tag == HyperplaneCase::H2 && res.delta == Some(1));
        Ok(CheckOutcome::verdict(pass, detail, data))
    }

    fn involutory(&mut self) -> Result<CheckOutcome> {
        let res = self.classification()?;
        if res.tag != HyperplaneCase::H2 {
            return Ok(CheckOutcome::skipped(format!("skipped: case {}", res.tag)));
        }
        let f = QuadraticMap::new(res.tau_bar)?;
        Ok(match involutory_certificate(&f) {
            Some(cert) => {
                let detail = format!("A {} identity, deg g = {}", if cert.is_identity() { "is" } else { "is not" }, cert.g.total_degree().unwrap_or(0));
                CheckOutcome::verdict(true, detail, to_value(&cert))
            }
            None => CheckOutcome::verdict(false, "no certificate A·f∘f = g·x".into(), Value::Null),
        })
    }

    fn invariant(&mut self) -> Result<CheckOutcome> {
        let res = self.classification()?;
        if res.tag == HyperplaneCase::NotHyperplane {
            return Ok(CheckOutcome::skipped("skipped: not a hyperplane case"));
        }
        let ci = cubic_invariant(self.x, &self.x0)?;
        let mut data = json!({ "hyperplane": rational_strings(&ci.hyperplane), "cubic": ci.cubic.to_string() });
        if res.tag == HyperplaneCase::H1 {
            let cone = ci.is_cone();
            return Ok(CheckOutcome::verdict(cone, format!("H1, cubic {} a cone", if cone { "is" } else { "is not" }), data));
        }
        let f = QuadraticMap::new(res.tau_bar)?;
        let n = self.x.dim();
        if n <= 3 {
            let jd = jacobian_det(&f)?;
            let ratio = jd.proportional_to(&ci.cubic);
            data["jacobian_ratio"] = json!(ratio.as_ref().map(crate::exact::field::rational_string));
            let detail = format!("C {} proportional to det J(tau_bar)", if ratio.is_some() { "is" } else { "is not" });
            return Ok(CheckOutcome::verdict(ratio.is_some(), detail, data));
        }
        let q = self.q;
        let field = PrimeField::new(q)?;
        let c = ci.cubic.compile(&field).ok_or(Error::BadReduction(q))?;
        let jac = f
            .jacobian_matrix()
            .iter()
            .map(|row| row.iter().map(|p| p.compile(&field)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::BadReduction(q))?;
        let stats = support_compare(&field, n, self.config.support_samples, self.config.seed, |x| {
            (field.is_zero(&c.eval(x)), field.is_zero(&jacobian_det_at(&field, &jac, x)))
        })?;
        let detail = format!("{} of {} points where exactly one of C, det J vanishes", stats.exactly_one, stats.points);
        data["support"] = to_value(&stats);
        Ok(CheckOutcome::verdict(stats.exactly_one == 0, detail, data))
    }

    fn axioms(&self) -> Result<CheckOutcome> {
        let Some(j) = &self.algebra else {
            return Ok(CheckOutcome::skipped("skipped: not a Jordan variety"));
        };
        let report = j.validate_axioms(self.config.term_budget);
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        let detail = if failed.is_empty() { format!("{} identities hold", report.checks.len()) } else { format!("failed: {}", failed.join(", ")) };
        Ok(CheckOutcome::verdict(failed.is_empty(), detail, to_value(&report)))
    }

    fn doubling(&self) -> Result<CheckOutcome> {
        let (Some(j), VarietyKind::Jordan { algebra }) = (&self.algebra, self.x.kind()) else {
            return Ok(CheckOutcome::skipped("skipped: not a Jordan variety"));
        };
        let Ok(key) = CatalogKey::from_str(algebra) else {
            return Ok(CheckOutcome::skipped("skipped: no rank-one sampler for this algebra"));
        };
        let cubics = sigma_cubics(j);
        let bad = (0..DOUBLING_SAMPLES)
            .filter(|&i| !sigma_cubics_singular_at(&cubics, &key.rank_one_point(&mut stream_rng(self.config.seed, i), 5)))
            .count();
        let detail = format!("{bad} of {DOUBLING_SAMPLES} base-locus points with a nonvanishing gradient");
        Ok(CheckOutcome::verdict(bad == 0, detail, Value::Null))
    }

    fn degree_relation(&mut self) -> Result<CheckOutcome> {
        let Some(j) = self.algebra.clone() else {
            return Ok(CheckOutcome::skipped("skipped: not a Jordan variety"));
        };
        let delta = self.classification()?.delta;
        let d = sigma_cubics(&j).iter().filter_map(|c| c.total_degree()).max().unwrap_or(0);
        let identity = if j.dim() <= SYMBOLIC_IDENTITY_MAX_DIM { inverse_projection_identity(&j) } else { inverse_identity_sampled(&j, self.config.seed)? };
        let pass = delta.is_some_and(|delta| d == 2 * delta + 1) && identity;
        let detail = format!("d = {d}, delta = {}, inverse identity {}", delta.map_or("?".into(), |v| v.to_string()), if identity { "holds" } else { "fails" });
        Ok(CheckOutcome::verdict(pass, detail, json!({ "d": d, "delta": delta })))
    }
}

/// [N(y) : v·y♯ : v²·y : v³] at y = x♯, v = N(x) equals N(x)²·P(x), at
/// seeded rational points.
fn inverse_identity_sampled(j: &CubicJordanAlgebra, seed: u64) -> Result<bool> {
    for i in 0..IDENTITY_SAMPLES {
        let x = small_int_vec(&mut stream_rng(seed, i), j.dim(), 7);
        let (y, v) = (j.adjoint(&x)?, j.norm(&x)?);
        let mut lhs = vec![j.norm(&y)?];
        lhs.extend(j.adjoint(&y)?.into_iter().map(|a| &v * a));
        lhs.extend(y.iter().map(|a| &v * &v * a));
        lhs.push(&v * &v * &v);
        let n2 = &v * &v;
        let rhs: Vec<Rational> = jordan_point(j, &x)?.into_iter().map(|a| &n2 * a).collect();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(crate::exact::field::rational_string).collect()
}

/// Runs the selected checks; outcomes are keyed (and rendered) by check name.
pub fn report_for(x: &ParamVariety, config: &RunConfig, kinds: &[CheckKind]) -> Result<OadpReport> {
    config.validate()?;
    let x0 = base_point(x, config.seed)?;
    let q = config.q_for_dim(x.dim());
    let mut ctx = Context { x, config, x0, q, algebra: x.algebra(), classification: None };
    let mut checks = BTreeMap::new();
    for &kind in kinds {
        checks.insert(kind.name().to_string(), ctx.run(kind));
    }
    let passed = checks.values().all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Skipped));
    Ok(OadpReport {
        schema_version: SCHEMA_VERSION,
        variety: x.kind().to_string(),
        n: x.dim(),
        ambient_dim: x.ambient_dim(),
        seed: config.seed,
        q,
        trials: config.trials,
        x0: ctx.x0,
        checks,
        passed,
    })
}

pub fn full_report(x: &ParamVariety, config: &RunConfig) -> Result<OadpReport> {
    report_for(x, config, &CheckKind::ALL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::build_catalog;
    use crate::varieties::{build_scroll, build_twisted_cubic, quartic_curve};

    fn quick() -> RunConfig {
        let mut c = RunConfig::default();
        c.trials = 60;
        c
    }

    #[test]
    fn diag3_passes_everything() {
        let x = build_twisted_cubic(&build_catalog("diag3").unwrap()).unwrap();
        let r = full_report(&x, &quick()).unwrap();
        assert!(r.passed, "{r}");
        assert!(r.checks.values().all(|c| c.status == CheckStatus::Pass), "{r}");
        let back: OadpReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn scroll_skips_involutory() {
        let x = build_scroll(&[1, 3]).unwrap();
        let r = full_report(&x, &quick()).unwrap();
        assert_eq!(r.check(CheckKind::HyperplaneCase).unwrap().data["tag"], "H1");
        let inv = r.check(CheckKind::Involutory).unwrap();
        assert_eq!((inv.status, inv.detail.as_str()), (CheckStatus::Skipped, "skipped: case H1"));
        assert_eq!(r.check(CheckKind::Oadp).unwrap().status, CheckStatus::Pass, "{r}");
        assert!(r.passed, "{r}");
    }

    #[test]
    fn quartic_control_fails() {
        let r = report_for(&quartic_curve(), &quick(), &[CheckKind::Oadp]).unwrap();
        assert_eq!(r.check(CheckKind::Oadp).unwrap().status, CheckStatus::Fail);
        assert!(!r.passed);
    }

    #[test]
    fn check_names_parse() {
        assert_eq!("hyperplane-case".parse::<CheckKind>().unwrap(), CheckKind::HyperplaneCase);
        assert!("nope".parse::<CheckKind>().is_err());
    }
}
