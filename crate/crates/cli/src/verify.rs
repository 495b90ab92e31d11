use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use sparseapprox::instances::{Family, InstanceSpec, Prediction, Relation};
use sparseapprox::lattice_approx::{approximate_lattice, residual, SparseSolution};
use sparseapprox::oracle::{lattice_app, lattice_objective, semigroup_app, semigroup_app_at, OracleReport};
use sparseapprox::semigroup_approx::{approximate_k2, approximate_semigroup};
use sparseapprox::{Budget, Error};

use crate::{Failure, Format};

const HEADER: &str = "instance,m,n,k,alg_error,bound,oracle,verdict";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "OK")]
    Ok,
    #[serde(rename = "VIOLATION")]
    Violation,
    #[serde(rename = "SKIPPED-budget")]
    SkippedBudget,
}

impl Verdict {
    fn as_str(&self) -> &'static str {
        match self {
            Verdict::Ok => "OK",
            Verdict::Violation => "VIOLATION",
            Verdict::SkippedBudget => "SKIPPED-budget",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub instance: String,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub alg_error: Option<String>,
    pub bound: String,
    pub oracle: Option<String>,
    pub verdict: Verdict,
}

pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn has_violation(&self) -> bool {
        self.rows.iter().any(|r| r.verdict == Verdict::Violation)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = String::from(HEADER);
                s.push('\n');
                for r in &self.rows {
                    let cells = [
                        r.instance.clone(),
                        r.m.to_string(),
                        r.n.to_string(),
                        r.k.to_string(),
                        r.alg_error.clone().unwrap_or_default(),
                        r.bound.clone(),
                        r.oracle.clone().unwrap_or_default(),
                        r.verdict.as_str().to_string(),
                    ];
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.rows).expect("rows serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Splits digit runs out so that `n=10` sorts after `n=9`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, String)> {
        let mut out: Vec<(bool, String)> = Vec::new();
        for c in s.chars() {
            let digit = c.is_ascii_digit();
            match out.last_mut() {
                Some((d, run)) if *d == digit => run.push(c),
                _ => out.push((digit, c.to_string())),
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            sa.len().cmp(&sb.len()).then_with(|| sa.cmp(sb))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

fn is_lattice_family(f: Family) -> bool {
    matches!(f, Family::Example1 | Family::Example2 | Family::RandomLattice)
}

struct Measured {
    alg: Option<BigRational>,
    oracle: Option<BigRational>,
    at_same_target: bool,
    self_check: bool,
}

fn measure(spec: &InstanceSpec, p: &Prediction, x: &[BigInt], b: &[BigInt]) -> sparseapprox::Result<BigRational> {
    p.norm.measure(&spec.matrix, &residual(&spec.matrix, x, b)?)
}

fn oracle_value(spec: &InstanceSpec, p: &Prediction, rep: &OracleReport) -> sparseapprox::Result<BigRational> {
    measure(spec, p, &rep.witness_x, &rep.witness_b)
}

fn algorithm(spec: &InstanceSpec, p: &Prediction, b: &[BigInt], budget: &Budget) -> sparseapprox::Result<SparseSolution> {
    let witness = match (&spec.target, &spec.witness) {
        (Some(t), Some(w)) if t.as_slice() == b => Some(w.as_slice()),
        _ => None,
    };
    match spec.family {
        f if is_lattice_family(f) => approximate_lattice(&spec.matrix, b, p.k, budget),
        Family::Prop14 if p.k == 2 => approximate_k2(&spec.generators()?, &b[0], witness, budget),
        _ => approximate_semigroup(&spec.semigroup()?, b, witness, p.k, budget),
    }
}

/// Runs the oracle, then the algorithm on the oracle's target, filling in
/// as much as the budget allows.
fn evaluate(spec: &InstanceSpec, p: &Prediction, budget: &Budget, out: &mut Measured) -> sparseapprox::Result<()> {
    let target = p.target.clone().or_else(|| spec.target.clone());
    let mut alg_target = target.clone();
    if is_lattice_family(spec.family) {
        match (&target, p.relation) {
            (Some(t), Relation::Ge) => {
                let (v, _) = lattice_objective(&spec.matrix, t, p.k, budget)?;
                out.oracle = Some(v);
            }
            _ => {
                let rep = lattice_app(&spec.matrix, p.k, budget)?;
                out.oracle = Some(oracle_value(spec, p, &rep)?);
                out.at_same_target = target.is_none();
                alg_target = Some(target.unwrap_or(rep.witness_b));
            }
        }
    } else {
        let inst = spec.semigroup()?;
        match &target {
            Some(t) => {
                let fixed = spec.family == Family::Example3BadBasis;
                let rep = semigroup_app_at(&inst, t, p.k, fixed, budget)?;
                out.oracle = Some(oracle_value(spec, p, &rep)?);
                out.at_same_target = true;
            }
            None => {
                let rep = semigroup_app(&inst, p.k, true, budget)?;
                out.oracle = Some(oracle_value(spec, p, &rep)?);
                out.at_same_target = true;
                alg_target = Some(rep.witness_b);
            }
        }
    }
    if let Some(b) = alg_target {
        // the semigroup construction needs every column inside cone(B)
        let sol = match algorithm(spec, p, &b, budget) {
            Err(Error::NotSimplicial) => return Ok(()),
            other => other?,
        };
        out.self_check = sol.verify(&spec.matrix, &b)?;
        out.alg = Some(measure(spec, p, &sol.x, &b)?);
    }
    Ok(())
}

fn verdict(p: &Prediction, m: &Measured) -> Verdict {
    let mut ok = m.self_check || m.alg.is_none();
    if let Some(v) = &m.oracle {
        ok &= p.relation.holds(v, &p.value);
    }
    if let Some(a) = &m.alg {
        if p.relation == Relation::Le {
            ok &= *a <= p.value;
        }
        if let (true, Some(v)) = (m.at_same_target, &m.oracle) {
            // no sparse approximation beats the exhaustive minimum
            ok &= a >= v;
        }
    }
    if ok {
        Verdict::Ok
    } else {
        Verdict::Violation
    }
}

pub fn run(instances: &[(String, InstanceSpec)], ks: &Option<Vec<usize>>, budget: &Budget) -> Result<Report, Failure> {
    let mut rows = Vec::new();
    for (id, spec) in instances {
        for p in &spec.predictions {
            if ks.as_ref().is_some_and(|ks| !ks.contains(&p.k)) {
                continue;
            }
            let mut m = Measured {
                alg: None,
                oracle: None,
                at_same_target: false,
                self_check: false,
            };
            let verdict = match evaluate(spec, p, budget, &mut m) {
                Ok(()) => verdict(p, &m),
                Err(Error::BudgetExceeded { .. }) => Verdict::SkippedBudget,
                Err(e) => return Err(Failure::from(e)),
            };
            rows.push(Row {
                instance: id.clone(),
                m: spec.matrix.rows(),
                n: spec.matrix.cols(),
                k: p.k,
                alg_error: m.alg.map(|v| v.to_string()),
                bound: p.value.to_string(),
                oracle: m.oracle.map(|v| v.to_string()),
                verdict,
            });
        }
    }
    rows.sort_by(|a, b| natural_cmp(&a.instance, &b.instance).then(a.k.cmp(&b.k)));
    Ok(Report { rows })
}
