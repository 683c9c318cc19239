//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`) plus its sub-results.
//! Everything is exact coefficient-field equality; the elapsed time is
//! reported for comparison against the expected desk-scale budgets.

use qflag_core::ncalg::{
    normal_form_with_strategy, oracle_ideal_membership, quantum_determinant, AlgebraSpec, Gen,
    NcPoly, Strategy,
};
use qflag_core::verify::{run_suite, Budget};
use qflag_core::QScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const SEED: u64 = 2026;

fn suite(name: &str, n: u8, budget: Budget) -> (bool, String) {
    match run_suite(name, n, SEED, budget) {
        Ok(r) => (
            r.all_passed(),
            format!("{name} N={n} [{budget}]: {} passed, {} failed", r.passed, r.failed),
        ),
        Err(e) => (false, format!("{name} N={n} [{budget}]: error: {e}")),
    }
}

fn conclude(id: u32, what: &str, started: Instant, parts: Vec<(bool, String)>) {
    let ok = parts.iter().all(|p| p.0);
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id:02} {verdict} ({:.1}s): {what}", started.elapsed().as_secs_f64());
    for (good, detail) in &parts {
        println!("    [{}] {detail}", if *good { "ok" } else { "FAILED" });
    }
    assert!(ok, "criterion {id:02} failed: {what}");
}

#[test]
fn criterion_01_hopf_axioms() {
    let t = Instant::now();
    let parts = vec![
        suite("hopf-axioms", 2, Budget::Exhaustive),
        suite("hopf-axioms", 3, Budget::Exhaustive),
    ];
    conclude(1, "Hopf axioms and exchange-relation compatibility, exhaustive at N = 2, 3", t, parts);
}

#[test]
fn criterion_02_coquasi_triangular() {
    let t = Instant::now();
    let parts = vec![
        suite("coquasi-triangular", 2, Budget::Exhaustive),
        suite("coquasi-triangular", 3, Budget::Sample(500)),
    ];
    conclude(2, "coquasi-triangular laws and quasi-commutativity", t, parts);
}

#[test]
fn criterion_03_killing_closed_forms() {
    let t = Instant::now();
    let parts = vec![
        suite("killing-closed-forms", 2, Budget::Exhaustive),
        suite("killing-closed-forms", 3, Budget::Sample(500)),
    ];
    conclude(3, "closed Killing values match the convolution recursion", t, parts);
}

#[test]
fn criterion_04_lambda_dimensions() {
    let t = Instant::now();
    let parts = vec![
        suite("lambda-basis-dimension", 2, Budget::Exhaustive),
        suite("lambda-basis-dimension", 3, Budget::default_for(3)),
        suite("lambda-basis-dimension", 4, Budget::default_for(4)),
        suite("vd-submodule", 2, Budget::Exhaustive),
        suite("vd-submodule", 3, Budget::default_for(3)),
    ];
    conclude(4, "left-invariant forms have dimensions N^2, (N-1)^2, and 2N-1", t, parts);
}

#[test]
fn criterion_05_su2_calculus_example() {
    let t = Instant::now();
    let parts = vec![
        suite("su2-ideal", 2, Budget::Exhaustive),
        suite("su2-3d-nonisomorphism", 2, Budget::Exhaustive),
    ];
    conclude(5, "the size-two calculus: ideal generators, witnesses, frames, module relations", t, parts);
}

#[test]
fn criterion_06_sphere_relations() {
    let t = Instant::now();
    let parts = vec![
        suite("sphere-relations", 2, Budget::Exhaustive),
        suite("sphere-relations", 3, Budget::Sample(500)),
        suite("sphere-relations", 4, Budget::Sample(500)),
    ];
    conclude(6, "sphere coordinate relations, d-formulas, and module relations", t, parts);
}

#[test]
fn criterion_07_hopf_galois_ver() {
    let t = Instant::now();
    let parts = vec![
        suite("hopf-galois-ver", 2, Budget::Exhaustive),
        suite("hopf-galois-ver", 3, Budget::Sample(100)),
    ];
    conclude(7, "canonical map identities and two-sided inversion for all three quotient maps", t, parts);
}

#[test]
fn criterion_08_adr_compatibility() {
    let t = Instant::now();
    let parts = vec![
        suite("adr-compatibility", 2, Budget::Exhaustive),
        suite("adr-compatibility", 3, Budget::Sample(500)),
    ];
    conclude(8, "the calculus ideal is a right-coideal under the adjoint coaction", t, parts);
}

#[test]
fn criterion_09_cpn_framing() {
    let t = Instant::now();
    let parts = vec![
        suite("cpn-framing", 2, Budget::Exhaustive),
        suite("cpn-framing", 3, Budget::Sample(200)),
        suite("podles-recovery", 2, Budget::Exhaustive),
    ];
    conclude(9, "projective-space framing, soldering, holomorphic split, and the size-two recovery", t, parts);
}

#[test]
fn criterion_10_connection() {
    let t = Instant::now();
    let parts = vec![
        suite("connection", 2, Budget::Exhaustive),
        suite("connection", 3, Budget::default_for(3)),
        suite("fiber-calculi", 2, Budget::Exhaustive),
        suite("fiber-calculi", 3, Budget::default_for(3)),
    ];
    conclude(10, "projector, fiber exchange relations, and both covariant derivative forms", t, parts);
}

fn random_word(rng: &mut ChaCha8Rng, n: u8, max_len: usize) -> Vec<Gen> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Gen::U(rng.gen_range(0..n), rng.gen_range(0..n))).collect()
}

fn random_raw(rng: &mut ChaCha8Rng, spec: AlgebraSpec, max_len: usize, terms: usize) -> Vec<(Vec<Gen>, QScalar)> {
    (0..rng.gen_range(1..=terms))
        .map(|_| {
            let c = QScalar::from_int(rng.gen_range(1..=3i64), spec.root)
                .mul(&QScalar::q_int(rng.gen_range(-2..=2), spec.root));
            let c = if rng.gen_bool(0.5) { c.neg() } else { c };
            (random_word(rng, spec.size, max_len), c)
        })
        .collect()
}

fn random_poly(rng: &mut ChaCha8Rng, spec: AlgebraSpec, max_len: usize, terms: usize) -> NcPoly {
    NcPoly::from_raw_terms(spec, random_raw(rng, spec, max_len, terms))
}

fn into_quotient(su: AlgebraSpec, f: &NcPoly) -> NcPoly {
    NcPoly::from_raw_terms(su, f.terms().map(|(m, c)| (m.0.clone(), c.clone())))
}

#[test]
fn criterion_11_oracle_consistency_and_confluence() {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in [2u8, 3u8] {
        let m = AlgebraSpec::matrix(n, u32::from(n));
        let su = AlgebraSpec::special_unitary(n, u32::from(n));
        let det_minus_one = quantum_determinant(m).sub(&NcPoly::one(m));
        let w_max = if n == 2 { 2 } else { 1 };

        // 50 representative pairs per size: half congruent modulo the
        // determinant ideal, half differing by a generator.
        let total = 50usize;
        let mut agree = 0usize;
        for trial in 0..total {
            let f = random_poly(&mut rng, m, 2, 2);
            let congruent = trial % 2 == 0;
            let g = if congruent {
                let w = random_poly(&mut rng, m, w_max, 2);
                f.add(&det_minus_one.mul(&w))
            } else {
                f.add(&NcPoly::gen(m, 1, 1).expect("generator"))
            };
            let diff = f.sub(&g);
            let bound = diff.degree().max(usize::from(n) + w_max) + 1;
            let by_oracle = oracle_ideal_membership(&diff, bound).expect("oracle runs");
            let by_equality = into_quotient(su, &f)
                .equals(&into_quotient(su, &g))
                .expect("equality decision");
            if by_oracle == congruent && by_equality == congruent {
                agree += 1;
            }
        }
        parts.push((
            agree == total,
            format!("oracle vs quotient equality N={n}: {agree}/{total} pairs agree"),
        ));

        // 100 random polynomials per size, reduced from both ends.
        let trials = 100usize;
        let mut confluent = 0usize;
        for _ in 0..trials {
            let raw = random_raw(&mut rng, su, 4, 3);
            let left = normal_form_with_strategy(su, raw.clone(), Strategy::Leftmost);
            let right = normal_form_with_strategy(su, raw.clone(), Strategy::Rightmost);
            let left_m = normal_form_with_strategy(m, raw.clone(), Strategy::Leftmost);
            let right_m = normal_form_with_strategy(m, raw, Strategy::Rightmost);
            if left == right && left_m == right_m {
                confluent += 1;
            }
        }
        parts.push((
            confluent == trials,
            format!("confluence N={n}: {confluent}/{trials} polynomials reduce order-independently"),
        ));
    }
    conclude(11, "quotient equality matches the ideal oracle; reduction is order-independent", t, parts);
}
