use std::fmt::Write as _;

use anyhow::anyhow;
use gq_core::suites::{algebra_suite, cross_suite, groupoid_suite, poisson_suite, sheu_suite, SuiteReport};
use serde::Serialize;

use crate::args::{Suite, VerifyArgs};
use crate::output::emit;
use crate::{Outcome, UsageError};

#[derive(Serialize)]
struct Report<'a> {
    passed: bool,
    n: usize,
    t: f64,
    hbar: f64,
    max_level: i64,
    max_shift: i64,
    samples: usize,
    seed: Option<u64>,
    suites: &'a [SuiteReport],
}

fn csv(reports: &[SuiteReport]) -> String {
    let mut s = String::from("suite,check,passed,checked,failures,residual,tolerance");
    let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
    for r in reports {
        for c in &r.checks {
            let _ = write!(
                s,
                "\n{},{},{},{},{},{},{}",
                r.suite,
                c.name,
                c.passed,
                c.checked,
                c.failures,
                opt(c.residual),
                opt(c.tolerance)
            );
        }
    }
    s
}

pub fn run(a: &VerifyArgs) -> Result<Outcome, UsageError> {
    let params = a.geometry.params()?;
    let (lvl, sh) = (a.window.max_level, a.window.max_shift);
    if lvl < 0 || sh < 0 {
        return Err(anyhow!("--max-level and --max-shift must be nonnegative").into());
    }
    let seed = match (a.suite.is_random(), a.seed) {
        (true, None) => return Err(anyhow!("this suite is randomized: pass --seed or set GQ_SEED").into()),
        (_, s) => s.unwrap_or(0),
    };
    if a.suite.is_random() && a.samples == 0 {
        return Err(anyhow!("--samples must be positive").into());
    }
    let (n, t) = (params.n, params.t);
    let mut reports = Vec::new();
    let all = a.suite == Suite::All;
    if all || a.suite == Suite::Groupoid {
        reports.push(groupoid_suite(params, lvl, sh)?);
    }
    if all || a.suite == Suite::Sheu {
        reports.push(sheu_suite(params, lvl, sh)?);
    }
    if all || a.suite == Suite::Algebra {
        reports.push(algebra_suite(params, lvl, sh, a.samples, seed)?);
    }
    if all || a.suite == Suite::Poisson {
        reports.push(poisson_suite(n, t, a.samples, seed)?);
    }
    if all || a.suite == Suite::Cross {
        reports.push(cross_suite(n, t, a.samples, seed)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let body = if a.csv {
        csv(&reports)
    } else {
        serde_json::to_string_pretty(&Report {
            passed,
            n,
            t,
            hbar: params.hbar,
            max_level: lvl,
            max_shift: sh,
            samples: a.samples,
            seed: a.seed,
            suites: &reports,
        })?
    };
    emit(a.out.as_deref(), &body)?;
    for r in &reports {
        for c in r.failed_checks() {
            eprintln!("FAIL {}/{}", r.suite, c.name);
        }
    }
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}
