//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gq_core::bs::{enumerate, enumerate_units, ArrowLeaf, BsGroupoid, Params, Window};
use gq_core::convolution::{random_element, AlgebraElement};
use gq_core::suites::{
    action_formula_check, algebra_suite, axioms_check, cp1_checks, cross_suite, measure_check, pk_checks,
    poisson_suite, psi_checks, restriction_checks, spheres_checks, standard_checks, Check, SuiteReport,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn windows(ns: &[usize], ts: &[f64], level: i64, shift: i64) -> Vec<(BsGroupoid, Window)> {
    let mut out = Vec::new();
    for &n in ns {
        for &t in ts {
            let p = Params::new(n, t, LN_2).unwrap();
            out.push((BsGroupoid::new(p).unwrap(), enumerate(&p, level, shift)));
        }
    }
    out
}

fn label(w: &Window) -> String {
    format!("n={} t={}", w.params.n, w.params.t)
}

/// Folds checks over windows, keeping the first failure.
fn collect(results: impl IntoIterator<Item = (String, Check)>) -> (u64, f64, Option<String>) {
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut first = None;
    for (at, c) in results {
        checked += c.checked;
        worst = worst.max(c.residual.unwrap_or(0.0));
        if !c.passed && first.is_none() {
            first = Some(format!("{at}: {} failed ({} failures) {:?}", c.name, c.failures, c.witnesses.first()));
        }
    }
    (checked, worst, first)
}

fn suite_failures(reports: &[(String, SuiteReport)]) -> Option<String> {
    reports.iter().find(|(_, r)| !r.passed).map(|(at, r)| {
        let names: Vec<String> = r.failed_checks().map(|c| format!("{} {:?}", c.name, c.residual)).collect();
        format!("{at}: {}", names.join(", "))
    })
}

const T1: [f64; 5] = [0.0, 0.3, 0.5, 0.7, 1.0];

fn groupoid_axioms() -> Outcome {
    let start = Instant::now();
    let ws = windows(&[1, 2, 3, 4], &T1, 3, 3);
    let arrows: usize = ws.iter().map(|(_, w)| w.arrows.len()).sum();
    let (checked, _, fail) = collect(ws.iter().map(|(g, w)| (label(w), axioms_check(g, w).unwrap())));
    let took = start.elapsed();
    if let Some(f) = fail {
        return Err(f);
    }
    if took > Duration::from_secs(60) {
        return Err(format!("took {took:.1?}, budget 60 s"));
    }
    Ok(format!("20 windows, {arrows} arrows, {checked} arrows+pairs+triples, 0 violations, {took:.1?}"))
}

fn action_formula() -> Outcome {
    let ws = windows(&[1, 2, 3, 4], &T1, 3, 3);
    let (checked, worst, fail) = collect(ws.iter().map(|(g, w)| (label(w), action_formula_check(g, w))));
    match fail {
        Some(f) => Err(f),
        None => Ok(format!("{checked} arrows, max |Δc| = {worst:.2e}")),
    }
}

fn sheu_isomorphisms() -> Outcome {
    let mut results = Vec::new();
    for n in 1..=3 {
        let p = Params::new(n, 0.0, LN_2).unwrap();
        let w = enumerate(&p, 3, 3);
        results.extend(standard_checks(&p, &w).into_iter().map(|c| (label(&w), c)));
        for t in [0.25, 0.5, 0.75] {
            let p = Params::new(n, t, LN_2).unwrap();
            let w = enumerate(&p, 3, 3);
            results.extend(spheres_checks(&p, &w).into_iter().map(|c| (label(&w), c)));
            if n == 1 {
                results.extend(cp1_checks(&p, &w).into_iter().map(|c| (label(&w), c)));
            }
        }
    }
    let maps = results.len();
    let (checked, _, fail) = collect(results);
    match fail {
        Some(f) => Err(f),
        None => Ok(format!("{maps} map checks (standard, CP_1, spheres), {checked} items, 0 failures")),
    }
}

type Elem = AlgebraElement<ArrowLeaf>;

fn random_triples(w: &Window, count: usize, seed: u64) -> Vec<(Elem, Elem, Elem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut e = || random_element(&w.arrows, 40, &mut rng);
            (e(), e(), e())
        })
        .collect()
}

fn algebra_window() -> Params {
    Params::new(2, 0.5, LN_2).unwrap()
}

fn convolution_algebra() -> Outcome {
    let r = algebra_suite(algebra_window(), 3, 2, 1000, 2024).map_err(|e| e.to_string())?;
    let wanted = [
        "associativity",
        "star_involutive",
        "star_support",
        "star_antimultiplicative",
        "twist_cocycle",
        "twisted_associativity",
        "invalid_twist_rejected",
    ];
    let picked: Vec<&Check> = r.checks.iter().filter(|c| wanted.contains(&c.name.as_str())).collect();
    if picked.len() != wanted.len() {
        return Err("missing checks in the algebra report".into());
    }
    if let Some(c) = picked.iter().find(|c| !c.passed) {
        return Err(format!("{} failed: residual {:?} {:?}", c.name, c.residual, c.witnesses));
    }
    let res = |name: &str| picked.iter().find(|c| c.name == name).and_then(|c| c.residual).unwrap_or(0.0);
    Ok(format!(
        "1000 triples, support ≤ 50: assoc {:.1e}, (ab)* {:.1e}, twisted {:.1e}; invalid twist rejected",
        res("associativity"),
        res("star_antimultiplicative"),
        res("twisted_associativity")
    ))
}

fn modular_kms() -> Outcome {
    let ws = windows(&[1, 2, 3, 4], &T1, 3, 3);
    let (checked, worst, fail) = collect(ws.iter().map(|(g, w)| (label(w), measure_check(g, w))));
    if let Some(f) = fail {
        return Err(f);
    }
    let r = algebra_suite(algebra_window(), 3, 2, 500, 77).map_err(|e| e.to_string())?;
    let kms = r.checks.iter().find(|c| c.name == "kms").ok_or("no kms check")?;
    if !kms.passed {
        return Err(format!("KMS residual {:?}", kms.residual));
    }
    Ok(format!(
        "quasi-invariance on {checked} arrows (rel. {worst:.1e}); KMS on {} pairs, max {:.1e}",
        kms.checked,
        kms.residual.unwrap_or(0.0)
    ))
}

fn subgroupoids() -> Outcome {
    let ws = windows(&[1, 2, 3, 4], &T1, 3, 3);
    let mut results = Vec::new();
    for (g, w) in &ws {
        results.extend(pk_checks(g, w).unwrap().into_iter().map(|c| (label(w), c)));
    }
    let structural = results.len();
    for t in [0.0, 0.5, 1.0] {
        let p = Params::new(3, t, LN_2).unwrap();
        let g = BsGroupoid::new(p).unwrap();
        let w = enumerate(&p, 2, 2);
        let triples = random_triples(&w, 100, 5);
        let checks = restriction_checks(&g, &triples).map_err(|e| e.to_string())?;
        results.extend(checks.into_iter().map(|c| (label(&w), c)));
    }
    let (checked, _, fail) = collect(results);
    match fail {
        Some(f) => Err(f),
        None => Ok(format!(
            "{structural} P_k closure checks over 20 windows; restriction is an exact *-homomorphism with ideal kernel ({checked} items)"
        )),
    }
}

fn psi_duality() -> Outcome {
    let ws = windows(&[1, 2, 3], &T1, 3, 3);
    let mut results = Vec::new();
    for (g, w) in &ws {
        results.extend(psi_checks(g, w).unwrap().into_iter().map(|c| (label(w), c)));
    }
    let (checked, _, fail) = collect(results);
    match fail {
        Some(f) => Err(f),
        None => Ok(format!("15 windows onto their mirrors, involutive; {checked} items")),
    }
}

fn poisson_identities() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in 1..=3 {
        for t in [0.0, 0.3, 0.5, 1.0] {
            let r = poisson_suite(n, t, 100, 1).map_err(|e| e.to_string())?;
            reports.push((format!("n={n} t={t}"), r));
        }
    }
    let took = start.elapsed();
    if let Some(f) = suite_failures(&reports) {
        return Err(f);
    }
    if took > Duration::from_secs(120) {
        return Err(format!("took {took:.1?}, budget 120 s"));
    }
    let worst = |name: &str| {
        reports
            .iter()
            .flat_map(|(_, r)| r.checks.iter().filter(|c| c.name == name))
            .filter_map(|c| c.residual)
            .fold(0.0, f64::max)
    };
    Ok(format!(
        "12 (n,t) x 100 points: schouten {:.1e}, recursion {:.1e}, lenard {:.1e}, modular {:.1e}, involution {:.1e}, {took:.1?}",
        ["schouten_00", "schouten_0l", "schouten_tt"].iter().map(|s| worst(s)).fold(0.0, f64::max),
        worst("recursion"),
        worst("lenard"),
        worst("modular_field"),
        worst("involution"),
    ))
}

fn lie_crosscheck() -> Outcome {
    let mut reports = Vec::new();
    for n in 1..=3 {
        for t in [0.0, 0.25, 0.5, 0.9] {
            reports.push((format!("n={n} t={t}"), cross_suite(n, t, 100, 7).map_err(|e| e.to_string())?));
        }
    }
    if let Some(f) = suite_failures(&reports) {
        return Err(f);
    }
    let worst = reports
        .iter()
        .flat_map(|(_, r)| r.checks.iter().filter(|c| c.name == "raction"))
        .filter_map(|c| c.residual)
        .fold(0.0, f64::max);
    let walls: u64 = reports
        .iter()
        .flat_map(|(_, r)| r.checks.iter().filter(|c| c.name == "pk_invariance"))
        .map(|c| c.checked)
        .sum();
    Ok(format!("12 (n,t) x 100 samples, max residual {worst:.1e}; {walls} wall samples stay on P_k"))
}

fn documented_counts() -> Outcome {
    let got = [
        enumerate_units(&Params::new(1, 0.5, LN_2).unwrap(), 3).len(),
        enumerate_units(&Params::new(2, 0.5, LN_2).unwrap(), 2).len(),
        enumerate_units(&Params::new(2, 0.0, 1.0).unwrap(), 0).len(),
    ];
    if got == [7, 15, 3] {
        Ok("7, 15, 3".into())
    } else {
        Err(format!("got {got:?}, expected [7, 15, 3]"))
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("groupoid axioms", groupoid_axioms),
        ("action formula", action_formula),
        ("Sheu isomorphisms", sheu_isomorphisms),
        ("convolution algebra", convolution_algebra),
        ("modular cocycle and KMS", modular_kms),
        ("P_k subgroupoids", subgroupoids),
        ("psi duality", psi_duality),
        ("Poisson identities", poisson_identities),
        ("Lie-layer cross-check", lie_crosscheck),
        ("documented counts", documented_counts),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({:.1?})", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
