//! Verification suites shared by the command line and the acceptance run.
//! Every suite returns named checks with counts, worst residuals and the
//! first few witnesses, in a JSON-stable shape.

use std::collections::HashSet;
use std::fmt::Debug;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bs::{
    action_formula, enumerate, modular_data, pk_predicate, psi_dual, shift_sum, ArrowLeaf, BsError, BsGroupoid, Params,
    UnitLeaf, Window,
};
use crate::convolution::{convolve, involution, kms_check, random_element, regular_rep, restrict, AlgebraElement};
use crate::groupoid::{
    check_cocycle2, check_groupoid_axioms, check_integer_cocycle1, check_left_translation, composable_pairs,
    composable_triples, DiscreteGroupoid, GroupoidError, TrivialCocycle,
};
use crate::poisson::identities::{modular_field, sample_point};
use crate::poisson::lie::{self, dist, is_sb, is_special_unitary, Order};
use crate::poisson::{crosscheck_batch, identity_batch, su2_check, PoissonError};
use crate::sheu::{
    check_round_trip, image_set, phi_cp1, phi_cp1_inv, phi_spheres, phi_spheres_inv, phi_standard, phi_standard_inv,
    t_window, verify_morphism, MorphismReport, SheuError, SheuF, SheuG, SheuGroupoid, SheuT,
};

/// Witnesses kept per check.
pub const MAX_REPORTED: usize = 10;

/// Tolerance of the algebra and measure checks.
pub const EXACT_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error(transparent)]
    Bs(#[from] BsError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Sheu(#[from] SheuError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub failures: u64,
    /// Worst residual for numerical checks, `null` for exact ones.
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn exact(name: impl Into<String>, checked: u64, failures: u64, witnesses: Vec<String>) -> Self {
        Check {
            name: name.into(),
            passed: failures == 0,
            checked,
            failures,
            residual: None,
            tolerance: None,
            witnesses,
        }
    }

    pub fn within(name: impl Into<String>, checked: u64, residual: f64, tol: f64) -> Self {
        let passed = residual <= tol;
        Check {
            name: name.into(),
            passed,
            checked,
            failures: u64::from(!passed),
            residual: Some(residual),
            tolerance: Some(tol),
            witnesses: Vec::new(),
        }
    }

    fn with_witnesses(mut self, w: Vec<String>) -> Self {
        self.witnesses = w;
        self
    }

    fn from_morphism(name: &str, rep: &MorphismReport) -> Self {
        Check::exact(name, rep.arrows as u64 + rep.pairs as u64, rep.failure_count as u64, rep.failures.clone())
    }
}

fn debug_all<T: Debug>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().take(MAX_REPORTED).map(|x| format!("{x:?}")).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>, notes: Vec<String>) -> Self {
        SuiteReport { suite: suite.into(), passed: checks.iter().all(|c| c.passed), checks, notes }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

// ---- lattice groupoid -------------------------------------------------------

pub fn axioms_check(g: &BsGroupoid, w: &Window) -> Result<Check, SuiteError> {
    let rep = check_groupoid_axioms(g, &w.arrows)?;
    let checked = rep.arrows as u64 + rep.pairs + rep.triples;
    Ok(Check::exact("axioms", checked, rep.violation_count, debug_all(&rep.violations)))
}

pub fn translation_check(g: &BsGroupoid, w: &Window) -> Result<Check, SuiteError> {
    let rep = check_left_translation(g, &w.arrows)?;
    Ok(Check::exact("left_translation", rep.pairs, rep.violation_count, debug_all(&rep.violations)))
}

/// Branch-shift targets against the real action formula.
pub fn action_formula_check(g: &BsGroupoid, w: &Window) -> Check {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for a in &w.arrows {
        let direct = action_formula(g.params(), &g.c_values(&a.src), &a.p);
        let lattice = g.c_values(&g.target(a));
        let r = direct.iter().zip(&lattice).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        if !(r <= EXACT_TOL) {
            bad.push(a);
        }
        worst = worst.max(r);
    }
    Check::within("action_formula", w.arrows.len() as u64, worst, EXACT_TOL).with_witnesses(debug_all(bad))
}

/// `Σ p` is exactly additive, so `f = ħ Σ p` is a cocycle.
pub fn modular_cocycle_check(g: &BsGroupoid, w: &Window) -> Result<Check, SuiteError> {
    let pairs = composable_pairs(g, &w.arrows);
    let rep = check_integer_cocycle1(g, &|a: &ArrowLeaf| shift_sum(a), &pairs)?;
    Ok(Check::exact("modular_cocycle", rep.checked as u64, rep.failures as u64, debug_all(rep.witness)))
}

/// `μ(l(γ)) = e^{f(γ)} μ(r(γ))`, relative.
pub fn measure_check(g: &BsGroupoid, w: &Window) -> Check {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for a in &w.arrows {
        let d = modular_data(g.params(), a).d;
        let (l, r) = (g.measure_mu(&a.src), g.measure_mu(&g.target(a)));
        let scale = l.max(d * r);
        let res = if scale == 0.0 { 0.0 } else { (l - d * r).abs() / scale };
        if !(res <= EXACT_TOL) {
            bad.push(a);
        }
        worst = worst.max(res);
    }
    Check::within("quasi_invariance", w.arrows.len() as u64, worst, EXACT_TOL).with_witnesses(debug_all(bad))
}

/// `P_k` is saturated (arrows never cross it) and closed under all structure maps.
pub fn pk_checks(g: &BsGroupoid, w: &Window) -> Result<Vec<Check>, SuiteError> {
    let mut out = Vec::new();
    for k in 1..=g.n() {
        let keep = pk_predicate(k);
        let crossing: Vec<&ArrowLeaf> = w.arrows.iter().filter(|a| keep(&a.src) != keep(&g.target(a))).collect();
        out.push(Check::exact(
            format!("p{k}_invariant"),
            w.arrows.len() as u64,
            crossing.len() as u64,
            debug_all(crossing),
        ));
        let sub: Vec<ArrowLeaf> = w.arrows.iter().filter(|a| keep(&a.src)).cloned().collect();
        let rep = check_groupoid_axioms(&g.pk_subgroupoid(k), &sub)?;
        let checked = rep.arrows as u64 + rep.pairs + rep.triples;
        out.push(Check::exact(format!("p{k}_subgroupoid"), checked, rep.violation_count, debug_all(&rep.violations)));
    }
    Ok(out)
}

/// `ψ` is an isomorphism of `G(t)` onto `G(1 − t)` carrying the window onto
/// the mirrored window, and squares to the identity.
pub fn psi_checks(g: &BsGroupoid, w: &Window) -> Result<Vec<Check>, SuiteError> {
    let p = *g.params();
    let h = BsGroupoid::new(p.dual())?;
    let rep = verify_morphism(|a: &ArrowLeaf| Ok(psi_dual(a)), g, &h, &w.arrows);
    let mirrored: HashSet<ArrowLeaf> = enumerate(&p.dual(), w.max_level, w.max_shift).arrows.into_iter().collect();
    let image: HashSet<ArrowLeaf> = w.arrows.iter().map(psi_dual).collect();
    let onto = u64::from(image != mirrored);
    let not_involutive: Vec<&ArrowLeaf> = w.arrows.iter().filter(|a| psi_dual(&psi_dual(a)) != **a).collect();
    Ok(vec![
        Check::from_morphism("psi_morphism", &rep),
        Check::exact("psi_onto_window", 1, onto, Vec::new()),
        Check::exact("psi_involutive", w.arrows.len() as u64, not_involutive.len() as u64, debug_all(not_involutive)),
    ])
}

pub fn groupoid_suite(params: Params, max_level: i64, max_shift: i64) -> Result<SuiteReport, SuiteError> {
    let g = BsGroupoid::new(params)?;
    let w = enumerate(&params, max_level, max_shift);
    let mut checks = vec![
        axioms_check(&g, &w)?,
        translation_check(&g, &w)?,
        action_formula_check(&g, &w),
        modular_cocycle_check(&g, &w)?,
        measure_check(&g, &w),
    ];
    checks.extend(pk_checks(&g, &w)?);
    checks.extend(psi_checks(&g, &w)?);
    let notes = vec![format!("window: {} units, {} arrows", w.units.len(), w.arrows.len())];
    Ok(SuiteReport::new("groupoid", checks, notes))
}

// ---- comparison groupoids ---------------------------------------------------

pub fn standard_checks(p: &Params, w: &Window) -> Vec<Check> {
    let g = BsGroupoid::new(*p).expect("validated");
    let h = SheuGroupoid::<SheuT>::new(p.n);
    let map = |a: &ArrowLeaf| phi_standard(p, a);
    let image = image_set(&w.arrows, map);
    let direct: HashSet<SheuT> = t_window(p.n, w.max_level, w.max_shift).into_iter().collect();
    vec![
        Check::from_morphism("standard_morphism", &verify_morphism(map, &g, &h, &w.arrows)),
        Check::from_morphism("standard_round_trip", &check_round_trip(map, |e| phi_standard_inv(p, e), &w.arrows)),
        Check::exact("standard_image", direct.len() as u64, u64::from(image != direct), Vec::new()),
    ]
}

pub fn cp1_checks(p: &Params, w: &Window) -> Vec<Check> {
    let g = BsGroupoid::new(*p).expect("validated");
    let h = SheuGroupoid::<SheuG>::new(1);
    let map = |a: &ArrowLeaf| phi_cp1(p, a);
    let image = image_set(&w.arrows, map);
    let outside: Vec<&SheuG> = image.iter().filter(|e| !e.is_member()).collect();
    vec![
        Check::from_morphism("cp1_morphism", &verify_morphism(map, &g, &h, &w.arrows)),
        Check::from_morphism("cp1_round_trip", &check_round_trip(map, |e| phi_cp1_inv(p, e), &w.arrows)),
        Check::exact("cp1_image", image.len() as u64, outside.len() as u64, debug_all(outside)),
    ]
}

/// On the part of the window lying over `c_n = 1 − t`.
pub fn spheres_checks(p: &Params, w: &Window) -> Vec<Check> {
    let g = BsGroupoid::new(*p).expect("validated");
    let sub = g.pk_subgroupoid(p.n);
    let h = SheuGroupoid::<SheuF>::new(p.n);
    let keep = pk_predicate(p.n);
    let arrows: Vec<ArrowLeaf> = w.arrows.iter().filter(|a| keep(&a.src)).cloned().collect();
    let map = |a: &ArrowLeaf| phi_spheres(p, a);
    let image = image_set(&arrows, map);
    let outside: Vec<&SheuF> = image.iter().filter(|e| !e.is_member()).collect();
    vec![
        Check::from_morphism("spheres_morphism", &verify_morphism(map, &sub, &h, &arrows)),
        Check::from_morphism("spheres_round_trip", &check_round_trip(map, |e| phi_spheres_inv(p, e), &arrows)),
        Check::exact("spheres_image", image.len() as u64, outside.len() as u64, debug_all(outside)),
    ]
}

/// Runs whichever maps apply to `params`.
pub fn sheu_suite(params: Params, max_level: i64, max_shift: i64) -> Result<SuiteReport, SuiteError> {
    let params = params.validated()?;
    let w = enumerate(&params, max_level, max_shift);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let interior = params.t > 0.0 && params.t < 1.0;
    if params.t == 0.0 {
        checks.extend(standard_checks(&params, &w));
    } else {
        notes.push("standard map skipped: needs t = 0".into());
    }
    if params.n == 1 && interior {
        checks.extend(cp1_checks(&params, &w));
    } else {
        notes.push("CP_1 map skipped: needs n = 1 and 0 < t < 1".into());
    }
    if interior {
        checks.extend(spheres_checks(&params, &w));
    } else {
        notes.push("sphere map skipped: needs 0 < t < 1".into());
    }
    Ok(SuiteReport::new("sheu", checks, notes))
}

// ---- convolution algebra ----------------------------------------------------

/// Largest support of random elements.
pub const MAX_SUPPORT: usize = 50;

type Elem = AlgebraElement<ArrowLeaf>;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_triples(pool: &[ArrowLeaf], count: usize, seed: u64, stream: u64) -> Vec<(Elem, Elem, Elem)> {
    let mut rng = rng_for(seed, stream);
    (0..count)
        .map(|_| {
            let mut e = || {
                let size = rng.gen_range(1..=MAX_SUPPORT);
                random_element(pool, size, &mut rng)
            };
            (e(), e(), e())
        })
        .collect()
}

/// `(a*b)*c − a*(b*c)` on random triples, optionally twisted.
pub fn associativity_residual<Z>(g: &BsGroupoid, triples: &[(Elem, Elem, Elem)], zeta: &Z) -> Result<f64, SuiteError>
where
    Z: crate::groupoid::Cocycle2<ArrowLeaf> + Sync,
{
    let worst = triples
        .par_iter()
        .map(|(a, b, c)| -> Result<f64, GroupoidError> {
            let left = convolve(g, &convolve(g, a, b, zeta)?, c, zeta)?;
            let right = convolve(g, a, &convolve(g, b, c, zeta)?, zeta)?;
            Ok(left.max_abs_diff(&right))
        })
        .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))?;
    Ok(worst)
}

/// Phase `e^{iα f(γ1) f(γ2)}` built from the modular cocycle.
pub fn bilinear_twist(p: Params) -> impl Fn(&ArrowLeaf, &ArrowLeaf) -> Complex64 + Sync {
    move |a, b| Complex64::from_polar(1.0, modular_data(&p, a).f_fs * modular_data(&p, b).f_fs)
}

/// `e^{iα f(γ1)²}`, which is not a cocycle.
pub fn square_twist(p: Params) -> impl Fn(&ArrowLeaf, &ArrowLeaf) -> Complex64 + Sync {
    move |a, _| Complex64::from_polar(1.0, modular_data(&p, a).f_fs.powi(2))
}

pub fn star_check(g: &BsGroupoid, triples: &[(Elem, Elem, Elem)]) -> Result<Vec<Check>, SuiteError> {
    let mut not_involutive = 0;
    let mut support = 0;
    let mut anti = 0.0f64;
    for (a, b, _) in triples {
        let sa = involution(g, a)?;
        not_involutive += u64::from(involution(g, &sa)? != *a);
        support += u64::from(sa.support_len() != a.support_len());
        let lhs = involution(g, &convolve(g, a, b, &TrivialCocycle)?)?;
        let rhs = convolve(g, &involution(g, b)?, &sa, &TrivialCocycle)?;
        anti = anti.max(lhs.max_abs_diff(&rhs));
    }
    let n = triples.len() as u64;
    Ok(vec![
        Check::exact("star_involutive", n, not_involutive, Vec::new()),
        Check::exact("star_support", n, support, Vec::new()),
        Check::within("star_antimultiplicative", n, anti, EXACT_TOL),
    ])
}

pub fn twist_checks(g: &BsGroupoid, w: &Window, triples: &[(Elem, Elem, Elem)]) -> Result<Vec<Check>, SuiteError> {
    let p = *g.params();
    let arrow_triples = composable_triples(g, &w.arrows, 200_000);
    let good = bilinear_twist(p);
    let bad = square_twist(p);
    let good_rep = check_cocycle2(g, &good, &arrow_triples, EXACT_TOL)?;
    let bad_rep = check_cocycle2(g, &bad, &arrow_triples, EXACT_TOL)?;
    let good_assoc = associativity_residual(g, triples, &good)?;
    let bad_assoc = associativity_residual(g, triples, &bad)?;
    // the negative control passes when the defect is seen by both the
    // identity checker and the product
    let rejected = !bad_rep.passed() && bad_assoc > 1e-6;
    Ok(vec![
        Check::exact("twist_cocycle", good_rep.checked as u64, good_rep.failures as u64, debug_all(good_rep.witness)),
        Check::within("twisted_associativity", triples.len() as u64, good_assoc, EXACT_TOL),
        Check::exact(
            "invalid_twist_rejected",
            triples.len() as u64,
            u64::from(!rejected),
            vec![format!("identity failures {}, product defect {bad_assoc:.3e}", bad_rep.failures)],
        ),
    ])
}

pub fn kms_checks(g: &BsGroupoid, triples: &[(Elem, Elem, Elem)]) -> Result<Check, SuiteError> {
    let p = *g.params();
    let f = |a: &ArrowLeaf| modular_data(&p, a).f_fs;
    let worst = triples
        .par_iter()
        .map(|(a, b, _)| kms_check(g, a, b, |u: &UnitLeaf| g.measure_mu(u), &f).map(|k| k.residual))
        .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))?;
    Ok(Check::within("kms", triples.len() as u64, worst, EXACT_TOL))
}

/// Restriction to each `P_k` is an exact *-homomorphism with an ideal kernel.
pub fn restriction_checks(g: &BsGroupoid, triples: &[(Elem, Elem, Elem)]) -> Result<Vec<Check>, SuiteError> {
    let mut out = Vec::new();
    let minus = Complex64::new(-1.0, 0.0);
    for k in 1..=g.n() {
        let keep = pk_predicate(k);
        let mut hom = 0;
        let mut star = 0;
        let mut ideal = 0;
        for (a, b, _) in triples {
            let ra = restrict(g, a, &keep);
            let rb = restrict(g, b, &keep);
            let ab = convolve(g, a, b, &TrivialCocycle)?;
            hom += u64::from(restrict(g, &ab, &keep).max_abs_diff(&convolve(g, &ra, &rb, &TrivialCocycle)?) != 0.0);
            star += u64::from(restrict(g, &involution(g, a)?, &keep) != involution(g, &ra)?);
            let off = a.plus(&ra.scale(minus));
            let left = restrict(g, &convolve(g, &off, b, &TrivialCocycle)?, &keep);
            let right = restrict(g, &convolve(g, b, &off, &TrivialCocycle)?, &keep);
            ideal += u64::from(left.max_abs() != 0.0 || right.max_abs() != 0.0);
        }
        let n = triples.len() as u64;
        out.push(Check::exact(format!("p{k}_restriction_homomorphism"), n, hom, Vec::new()));
        out.push(Check::exact(format!("p{k}_restriction_star"), n, star, Vec::new()));
        out.push(Check::exact(format!("p{k}_kernel_ideal"), n, ideal, Vec::new()));
    }
    Ok(out)
}

/// `π(a*b) = π(a)π(b)` on the window fibers over a few units, for pairs whose
/// matrices stay inside the window.
pub fn regular_rep_check(g: &BsGroupoid, w: &Window, samples: usize, seed: u64) -> Result<Check, SuiteError> {
    let small: Vec<ArrowLeaf> = w.arrows.iter().filter(|a| a.p.iter().all(|v| v.abs() <= 1)).cloned().collect();
    let mut rng = rng_for(seed, 3);
    let mut worst = 0.0f64;
    let mut closed = 0u64;
    for i in 0..samples {
        let x = w.units[i % w.units.len()].clone();
        let a = random_element(&small, rng.gen_range(1..=3), &mut rng);
        let b = random_element(&small, rng.gen_range(1..=3), &mut rng);
        let ab = convolve(g, &a, &b, &TrivialCocycle)?;
        let ra = regular_rep(g, &a, &x, &w.arrows, &TrivialCocycle)?;
        let rb = regular_rep(g, &b, &x, &w.arrows, &TrivialCocycle)?;
        if !(ra.closed && rb.closed) {
            continue;
        }
        closed += 1;
        let rab = regular_rep(g, &ab, &x, &w.arrows, &TrivialCocycle)?;
        worst = worst.max((rab.matrix - ra.matrix * rb.matrix).iter().fold(0.0, |m, z| m.max(z.norm())));
    }
    let mut c = Check::within("regular_rep_multiplicative", closed, worst, EXACT_TOL);
    if closed == 0 {
        c.passed = false;
        c.failures = 1;
        c.witnesses.push("no sample stayed inside the window".into());
    }
    Ok(c)
}

/// `samples` random triples (and pairs, taken from them) with support at most
/// [`MAX_SUPPORT`].
pub fn algebra_suite(
    params: Params,
    max_level: i64,
    max_shift: i64,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let g = BsGroupoid::new(params)?;
    let w = enumerate(&params, max_level, max_shift);
    let triples = random_triples(&w.arrows, samples, seed, 0);
    let mut checks = vec![Check::within(
        "associativity",
        samples as u64,
        associativity_residual(&g, &triples, &TrivialCocycle)?,
        EXACT_TOL,
    )];
    checks.extend(star_check(&g, &triples)?);
    checks.extend(twist_checks(&g, &w, &triples)?);
    checks.push(kms_checks(&g, &triples)?);
    checks.extend(restriction_checks(&g, &triples)?);
    checks.push(regular_rep_check(&g, &w, samples.min(200), seed)?);
    let notes = vec![format!("window: {} arrows; seed {seed}", w.arrows.len())];
    Ok(SuiteReport::new("algebra", checks, notes))
}

// ---- Poisson geometry -------------------------------------------------------

pub fn poisson_suite(n: usize, t: f64, samples: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    use crate::poisson::identities::tol;
    let b = identity_batch(n, t, samples, seed)?;
    let r = &b.worst;
    let m = samples as u64;
    let mut checks = vec![
        Check::within("recursion", m, r.recursion, tol::FIRST),
        Check::within("hamiltonian", m, r.hamiltonian, tol::FIRST),
        Check::within("lenard", m, r.lenard, tol::SECOND),
        Check::within("modular_field", m, r.modular, tol::SECOND),
        Check::within("involution", m, r.involution, tol::FIRST),
        Check::within("momentum_sign", m, r.momentum, tol::FIRST),
        Check::within("schouten_00", m, r.schouten_00, tol::FIRST),
        Check::within("schouten_0l", m, r.schouten_0l, tol::FIRST),
        Check::within("schouten_ll", m, r.schouten_ll, tol::FIRST),
        Check::within("schouten_tt", m, r.schouten_tt, tol::FIRST),
    ];
    let model = crate::poisson::PencilModel::new(n)?;
    let drift = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<f64, PoissonError> {
            let x = sample_point(n, seed, i).x();
            let a = modular_field(&model, &x, 0.0)?;
            let c = modular_field(&model, &x, 0.7)?;
            Ok(a.iter().zip(&c).fold(0.0f64, |m, (u, v)| m.max((u - v).abs())))
        })
        .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))?;
    checks.push(Check::within("modular_t_independent", m, drift, tol::SECOND));
    let mut notes = vec![format!(
        "sign of the inverse form: {:+}; points near c_k = 1 - t with the hamiltonian check skipped: {}",
        model.sign, b.skipped_points
    )];
    if n == 1 {
        let reps: Vec<_> = (0..samples as u64).map(|i| su2_check(sample_point(1, seed, i).y[0])).collect();
        let worst = |f: fn(&crate::poisson::Su2Report) -> f64| reps.iter().map(f).fold(0.0, f64::max);
        checks.push(Check::within("su2_projection", m, worst(|r| r.residual), tol::FIRST));
        checks.push(Check::within("kirillov_kostant", m, worst(|r| r.kk_residual), tol::FIRST));
        checks.push(Check::within("pairing_gram", m, worst(|r| r.gram_residual), tol::ALGEBRAIC));
        if let Some(r) = reps.first() {
            notes.push(format!("pushed-down SU(2) tensor / chart tensor = {:.12}", r.raw_ratio));
        }
    }
    Ok(SuiteReport::new("poisson", checks, notes))
}

pub fn cross_suite(n: usize, t: f64, samples: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    use crate::poisson::identities::tol;
    let b = crosscheck_batch(n, t, samples, seed)?;
    let m = samples as u64;
    let mut checks = vec![
        Check::within("raction", m, b.max_residual, tol::FIRST),
        Check::within("dressing_reconstruction", m, b.max_reconstruction, tol::ALGEBRAIC),
        Check::exact("pk_invariance", b.pk_samples as u64, b.pk_violations as u64, Vec::new()),
    ];
    let mut rng = rng_for(seed, u64::MAX);
    let mut iw = 0.0f64;
    let mut membership = 0u64;
    let mut additive = 0.0f64;
    for _ in 0..samples {
        let d = lie::random_sl(n + 1, &mut rng);
        let (u, bb) = lie::iwasawa(&d, Order::SuSb)?;
        let (b2, u2) = lie::iwasawa(&d, Order::SbSu)?;
        iw = iw.max(dist(&(&u * &bb), &d)).max(dist(&(&b2 * &u2), &d));
        membership += u64::from(
            !(is_special_unitary(&u, tol::ALGEBRAIC)
                && is_special_unitary(&u2, tol::ALGEBRAIC)
                && is_sb(&bb, tol::ALGEBRAIC)
                && is_sb(&b2, tol::ALGEBRAIC)),
        );
        let h = lie::momentum_h(&(&bb * &b2))?;
        let (h1, h2) = (lie::momentum_h(&bb)?, lie::momentum_h(&b2)?);
        additive = additive.max((0..n).fold(0.0, |acc, k| acc.max((h[k] - h1[k] - h2[k]).abs())));
    }
    checks.push(Check::within("iwasawa_reconstruction", m, iw, tol::ALGEBRAIC));
    checks.push(Check::exact("iwasawa_membership", m, membership, Vec::new()));
    checks.push(Check::within("momentum_h_additive", m, additive, tol::ALGEBRAIC));
    let notes = vec![format!(
        "leaf shift taken as {} log det_k; residual with log det_k as is: {:.3e}",
        lie::LEAF_SCALE,
        b.max_literal_residual
    )];
    Ok(SuiteReport::new("cross", checks, notes))
}
