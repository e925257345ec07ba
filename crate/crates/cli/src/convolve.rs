use std::collections::HashMap;

use anyhow::{anyhow, bail};
use gq_core::bs::{modular_data, ArrowLeaf, BsGroupoid, Params};
use gq_core::convolution::{convolve, kms_check, AlgebraElement};
use gq_core::groupoid::{Cocycle2, TrivialCocycle};
use gq_core::suites::{bilinear_twist, square_twist, EXACT_TOL};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::args::ConvolveArgs;
use crate::output::{emit, read_json};
use crate::{Outcome, UsageError};

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Trivial,
    Bilinear,
    Square,
}

#[derive(Deserialize)]
struct TableEntry {
    first: ArrowLeaf,
    second: ArrowLeaf,
    re: f64,
    im: f64,
}

/// A named cocycle, or explicit values on pairs (missing pairs read as 1).
#[derive(Deserialize)]
#[serde(untagged)]
enum CocycleFile {
    Named { kind: Kind },
    Table(Vec<TableEntry>),
}

type Twist = Box<dyn Fn(&ArrowLeaf, &ArrowLeaf) -> Complex64 + Sync>;

fn twist(p: Params, file: CocycleFile) -> anyhow::Result<Twist> {
    Ok(match file {
        CocycleFile::Named { kind: Kind::Trivial } => Box::new(|a, b| TrivialCocycle.eval(a, b)),
        CocycleFile::Named { kind: Kind::Bilinear } => Box::new(bilinear_twist(p)),
        CocycleFile::Named { kind: Kind::Square } => Box::new(square_twist(p)),
        CocycleFile::Table(rows) => {
            let mut map = HashMap::new();
            for r in rows {
                let v = Complex64::new(r.re, r.im);
                if (v.norm() - 1.0).abs() > 1e-12 {
                    bail!("cocycle value {v} at {:?} . {:?} is off the unit circle", r.first, r.second);
                }
                map.insert((r.first, r.second), v);
            }
            Box::new(move |a, b| map.get(&(a.clone(), b.clone())).copied().unwrap_or(Complex64::new(1.0, 0.0)))
        }
    })
}

#[derive(Serialize)]
struct C {
    re: f64,
    im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        C { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct Kms {
    phi_ab: C,
    phi_b_sigma_a: C,
    residual: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct WithKms<'a> {
    product: &'a AlgebraElement<ArrowLeaf>,
    kms: Kms,
}

pub fn run(a: &ConvolveArgs) -> Result<Outcome, UsageError> {
    let params = a.geometry.params()?;
    let g = BsGroupoid::new(params)?;
    let x: AlgebraElement<ArrowLeaf> = read_json(&a.a)?;
    let y: AlgebraElement<ArrowLeaf> = read_json(&a.b)?;
    let zeta = match &a.cocycle {
        Some(path) => Some(twist(params, read_json(path)?)?),
        None => None,
    };
    let product = match &zeta {
        Some(z) => convolve(&g, &x, &y, z),
        None => convolve(&g, &x, &y, &TrivialCocycle),
    }
    .map_err(|e| anyhow!("input does not match the groupoid: {e}"))?;
    if !a.kms {
        emit(a.out.as_deref(), &serde_json::to_string_pretty(&product)?)?;
        return Ok(Outcome::Pass);
    }
    let f = |arrow: &ArrowLeaf| modular_data(&params, arrow).f_fs;
    let k = kms_check(&g, &x, &y, |u| g.measure_mu(u), &f)?;
    let passed = k.residual <= EXACT_TOL;
    let kms = Kms {
        phi_ab: k.phi_ab.into(),
        phi_b_sigma_a: k.phi_b_sigma_a.into(),
        residual: k.residual,
        tolerance: EXACT_TOL,
        passed,
    };
    emit(a.out.as_deref(), &serde_json::to_string_pretty(&WithKms { product: &product, kms })?)?;
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}
