//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (run with --nocapture to see them). Tolerances are
//! pinned here, not configurable. Monte Carlo runs use fixed seeds, so the
//! suite is deterministic; the statistical bounds are 4-sigma (or Wilson
//! 95% containment for the rates that need billions of draws to resolve).

use seplab_analytic::chi::{chi_closed, chi_double_sum, chi_general, chi_special_2_minus_5_2_z};
use seplab_analytic::exact::sep_prob_exact;
use seplab_analytic::lovas::{half_i, half_j, q_split};
use seplab_analytic::quadrature::{sep_prob_quadrature, ExponentRule};
use seplab_analytic::rational::{rat, to_f64};
use seplab_analytic::volumes::{milz_strunz_volume, registry, vol_hs_complex};
use seplab_core::ensembles::{Family, Field, MeasureSpec};
use seplab_core::estimator::EstimatorState;
use seplab_core::runner::{default_threads, run_estimate, run_quasi_bures, RunOptions};
use std::time::Instant;

fn mc(
    field: Field,
    dims: (usize, usize),
    family: Family,
    samples: u64,
    seed: u64,
    x_states: bool,
) -> EstimatorState {
    let spec = MeasureSpec::new(field, dims, family);
    let opts = RunOptions {
        samples,
        seed,
        threads: default_threads(),
        x_states,
        checkpoint_stride: 0,
    };
    run_estimate(&spec, &opts).expect("estimation runs")
}

fn binom_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn assert_within_4_sigma(label: &str, p_hat: f64, target: f64, n: u64) {
    let sigma = binom_sigma(target, n);
    let z = (p_hat - target) / sigma;
    println!("  {label}: p_hat = {p_hat:.8}, target = {target:.8}, z = {z:+.2}");
    assert!(z.abs() <= 4.0, "{label}: p_hat {p_hat} vs {target} is {z:.2} sigma off");
}

#[test]
fn acceptance_01_exact_pipeline_rationals() {
    let cases = [
        (1u32, 0u32, rat(8, 33)),
        (1, 1, rat(61, 143)),
        (1, 2, rat(259, 442)),
        (2, 0, rat(26, 323)),
        (2, 1, rat(3736, 22287)),
    ];
    for (a, k, expect) in cases {
        let t0 = Instant::now();
        let got = sep_prob_exact(a, k);
        let dt = t0.elapsed();
        assert_eq!(got, expect, "(a={a}, k={k})");
        assert!(dt.as_secs_f64() < 1.0, "(a={a}, k={k}) took {dt:?}");
    }
    println!("ACCEPTANCE 1 PASS: exact pipeline reproduces 8/33, 61/143, 259/442, 26/323, 3736/22287 (each < 1 s)");
}

#[test]
fn acceptance_02_exact_vs_quadrature_grid() {
    for d in [2u32, 4, 6] {
        for k in [0u32, 1, 2] {
            let exact = to_f64(&sep_prob_exact(d / 2, k));
            let chi = chi_closed(d, k).unwrap();
            let t0 = Instant::now();
            let quad =
                sep_prob_quadrature(|z| chi.eval_f64(z), d, ExponentRule::Induced(k)).unwrap();
            let dt = t0.elapsed();
            assert!(
                (exact - quad).abs() <= 1e-9,
                "d={d} k={k}: |{exact} - {quad}| > 1e-9"
            );
            assert!(dt.as_secs_f64() < 10.0, "d={d} k={k} quadrature took {dt:?}");
        }
    }
    println!("ACCEPTANCE 2 PASS: |exact - quadrature| <= 1e-9 for d in {{2,4,6}}, k in {{0,1,2}} (each < 10 s)");
}

#[test]
fn acceptance_03_two_qubit_hs() {
    let n = 10_000_000;
    let t0 = Instant::now();
    let st = mc(Field::Complex, (2, 2), Family::HilbertSchmidt, n, 303, false);
    let dt = t0.elapsed().as_secs_f64();
    assert_within_4_sigma("two-qubit HS", st.p_hat(), 8.0 / 33.0, n);
    println!("ACCEPTANCE 3 PASS: two-qubit HS at 1e7 within 4 sigma of 8/33 ({dt:.0} s wall)");
}

#[test]
fn acceptance_04_two_rebit_hs() {
    let n = 10_000_000;
    let st = mc(Field::Real, (2, 2), Family::HilbertSchmidt, n, 304, false);
    assert_within_4_sigma("two-rebit HS", st.p_hat(), 29.0 / 64.0, n);
    println!("ACCEPTANCE 4 PASS: two-rebit HS at 1e7 within 4 sigma of 29/64");
}

#[test]
fn acceptance_05_qubit_qutrit_hs() {
    let n = 100_000_000;
    let st = mc(Field::Complex, (2, 3), Family::HilbertSchmidt, n, 305, false);
    assert_within_4_sigma("qubit-qutrit HS", st.p_hat(), 27.0 / 1000.0, n);
    println!("ACCEPTANCE 5 PASS: qubit-qutrit HS at 1e8 within 4 sigma of 27/1000");
}

#[test]
fn acceptance_06_rebit_retrit_hs() {
    let n = 100_000_000;
    let st = mc(Field::Real, (2, 3), Family::HilbertSchmidt, n, 306, false);
    assert_within_4_sigma("rebit-retrit HS", st.p_hat(), 860.0 / 6561.0, n);
    println!("ACCEPTANCE 6 PASS: rebit-retrit HS at 1e8 within 4 sigma of 860/6561");
}

#[test]
fn acceptance_07_small_p_systems() {
    let n = 100_000_000;
    // resolvable at 1e8: the 2x4 systems
    let st = mc(Field::Complex, (2, 4), Family::HilbertSchmidt, n, 3071, false);
    assert_within_4_sigma("2x4 complex HS", st.p_hat(), 16.0 / 12375.0, n);
    let st = mc(Field::Real, (2, 4), Family::HilbertSchmidt, n, 3072, false);
    assert_within_4_sigma("2x4 real HS", st.p_hat(), 201.0 / 8192.0, n);
    // not resolvable at desk scale: positive count and 95% CI containment
    let targets = [
        (Field::Complex, (2usize, 5usize), 125.0 / 4_790_016.0, "2x5 complex"),
        (Field::Real, (2, 5), 29_058.0 / 9_765_625.0, "2x5 real"),
        (Field::Complex, (3, 3), 323.0 / 3_161_088.0, "two-qutrit"),
    ];
    for (i, (field, dims, target, label)) in targets.into_iter().enumerate() {
        let st = mc(field, dims, Family::HilbertSchmidt, n, 3073 + i as u64, false);
        let (lo, hi) = st.wilson_ci(0.95);
        println!(
            "  {label}: hits = {}, p_hat = {:.4e}, ci = [{lo:.4e}, {hi:.4e}], target {target:.4e}"
        , st.hits, st.p_hat());
        assert!(st.hits > 0, "{label}: no hits at 1e8 samples");
        assert!(
            lo <= target && target <= hi,
            "{label}: target {target:.4e} outside 95% CI [{lo:.4e}, {hi:.4e}]"
        );
    }
    println!("ACCEPTANCE 7 PASS: 2x4 systems within 4 sigma; 2x5 and two-qutrit targets inside the Wilson 95% CI at 1e8");
}

#[test]
fn acceptance_08_x_states() {
    let n = 10_000_000;
    let pi2 = std::f64::consts::PI.powi(2);
    let x_real = 16.0 / (3.0 * pi2);
    let st_qubit = mc(Field::Complex, (2, 2), Family::HilbertSchmidt, n, 3081, true);
    assert_within_4_sigma("two-qubit X", st_qubit.p_hat(), 0.4, n);
    let mut reals = Vec::new();
    for (i, dims) in [(2usize, 2usize), (2, 3), (3, 3)].into_iter().enumerate() {
        let st = mc(Field::Real, dims, Family::HilbertSchmidt, n, 3082 + i as u64, true);
        let label = format!("real {}x{} X", dims.0, dims.1);
        assert_within_4_sigma(&label, st.p_hat(), x_real, n);
        reals.push(st.p_hat());
    }
    // pairwise equality of the three real-field estimates
    for i in 0..reals.len() {
        for j in i + 1..reals.len() {
            let sigma_i = binom_sigma(x_real, n);
            let sigma_j = binom_sigma(x_real, n);
            assert!(
                (reals[i] - reals[j]).abs() <= 4.0 * (sigma_i + sigma_j),
                "real X estimates {i} and {j} differ: {} vs {}",
                reals[i],
                reals[j]
            );
        }
    }
    println!("ACCEPTANCE 8 PASS: X-states reproduce 2/5 and 16/(3 pi^2) within 4 sigma; real-field values pairwise equal");
}

#[test]
fn acceptance_09_determinantal_split() {
    let n = 10_000_000;
    // HS equidivision across three systems
    for (field, dims, seed, label) in [
        (Field::Complex, (2usize, 2usize), 3091u64, "two-qubit"),
        (Field::Real, (2, 3), 3092, "rebit-retrit"),
        (Field::Complex, (2, 3), 3093, "qubit-qutrit"),
    ] {
        let st = mc(field, dims, Family::HilbertSchmidt, n, seed, false);
        let split = st.det_split();
        println!("  {label} HS det-split = {split:.5} ({} separable hits)", st.hits);
        assert!(
            (split - 0.5).abs() <= 0.005,
            "{label}: HS det split {split} deviates from 1/2"
        );
    }
    // induced qubit-qutrit splits move away from 1/2
    let st = mc(Field::Complex, (2, 3), Family::Induced(1), n, 3094, false);
    let split = st.det_split();
    println!("  qubit-qutrit induced k=1 det-split = {split:.5}");
    assert!((split - 0.312).abs() <= 0.008, "k=1 split {split}");
    let st = mc(Field::Complex, (2, 3), Family::Induced(2), n, 3095, false);
    let split = st.det_split();
    println!("  qubit-qutrit induced k=2 det-split = {split:.5}");
    assert!((split - 0.226).abs() <= 0.008, "k=2 split {split}");
    // analytic split values
    let q0 = q_split(0, 1.0).unwrap();
    assert!((q0 - 4.0 / 33.0).abs() <= 1e-9, "Q(0,1) = {q0}");
    let q1 = q_split(1, 1.0).unwrap();
    assert!((q1 - 45.0 / 286.0).abs() <= 1e-9, "Q(1,1) = {q1}");
    println!("ACCEPTANCE 9 PASS: HS det-split 0.500 +/- 0.005 (3 systems); induced k=1 -> 0.312, k=2 -> 0.226; Q(0,1) = 4/33, Q(1,1) = 45/286 to 1e-9");
}

#[test]
fn acceptance_10_operator_monotone_values() {
    let pi2 = std::f64::consts::PI.powi(2);
    let cases: [(u32, u32, f64, &str); 4] = [
        (2, 0, 1.0 - 256.0 / (27.0 * pi2), "d=2 k=0"),
        (2, 1, 4427.0 - 131_072.0 / (3.0 * pi2), "d=2 k=1"),
        (2, 2, -1_713_917.0 / 3.0 + 26_642_219_008.0 / (4725.0 * pi2), "d=2 k=2"),
        (4, 1, 27_637.0 / 168.0 - 50.0 * pi2 / 3.0, "d=4 k=1"),
    ];
    for (d, k, target, label) in cases {
        let chi = chi_closed(d, k).unwrap();
        let p = sep_prob_quadrature(|z| chi.eval_f64(z), d, ExponentRule::OpMonotoneSqrt(k))
            .unwrap();
        assert!((p - target).abs() <= 1e-8, "{label}: {p} vs {target}");
    }
    // the k = -5/2 special function at eta = -1/2
    let p = sep_prob_quadrature(chi_special_2_minus_5_2_z, 2, ExponentRule::Free(-0.5)).unwrap();
    let target = (21.0 * std::f64::consts::PI - 64.0) / (21.0 * std::f64::consts::PI);
    assert!((p - target).abs() <= 1e-8, "(21 pi - 64)/(21 pi): {p} vs {target}");
    println!("ACCEPTANCE 10 PASS: all five operator-monotone quadrature values reproduced to 1e-8");
}

#[test]
fn acceptance_11_quasirandom_bures() {
    let points = 20_000_000;
    let threads = default_threads();
    // two-qubit, s = 64
    let qubit_half = run_quasi_bures(Field::Complex, (2, 2), points, 0.5, threads, 0).unwrap();
    let qubit_zero = run_quasi_bures(Field::Complex, (2, 2), points, 0.0, threads, 0).unwrap();
    println!(
        "  two-qubit Bures: alpha0=1/2 -> {:.6}, alpha0=0 -> {:.6}",
        qubit_half.p_hat(),
        qubit_zero.p_hat()
    );
    assert!(
        (qubit_half.p_hat() - 0.07331).abs() <= 0.001,
        "two-qubit Bures {} vs 0.07331",
        qubit_half.p_hat()
    );
    assert!(
        (qubit_half.p_hat() - qubit_zero.p_hat()).abs() <= 0.0005,
        "two-qubit offset endpoints differ: {} vs {}",
        qubit_half.p_hat(),
        qubit_zero.p_hat()
    );
    // two-rebit, s = 36
    let rebit_half = run_quasi_bures(Field::Real, (2, 2), points, 0.5, threads, 0).unwrap();
    let rebit_zero = run_quasi_bures(Field::Real, (2, 2), points, 0.0, threads, 0).unwrap();
    println!(
        "  two-rebit Bures: alpha0=1/2 -> {:.6}, alpha0=0 -> {:.6}",
        rebit_half.p_hat(),
        rebit_zero.p_hat()
    );
    assert!(
        (rebit_half.p_hat() - 0.15709).abs() <= 0.001,
        "two-rebit Bures {} vs 0.15709",
        rebit_half.p_hat()
    );
    assert!(
        (rebit_half.p_hat() - rebit_zero.p_hat()).abs() <= 0.0005,
        "two-rebit offset endpoints differ: {} vs {}",
        rebit_half.p_hat(),
        rebit_zero.p_hat()
    );
    println!("ACCEPTANCE 11 PASS: quasirandom Bures estimates within 0.001 of 0.07331 / 0.15709; alpha0 endpoints agree to 5e-4");
}

#[test]
fn acceptance_12_property_suites() {
    // chi invariants: boundary values, divisibility (checked through the
    // independent double sum), monotone and bounded on a 1e-3 grid
    for d in [2u32, 4, 6] {
        for k in [0u32, 1, 2, 3] {
            let chi = chi_closed(d, k).unwrap();
            assert_eq!(chi.eval(&rat(0, 1)), rat(0, 1));
            assert_eq!(chi.eval(&rat(1, 1)), rat(1, 1));
            assert_eq!(chi.p, chi_general(d / 2, k).p);
            for i in [1i64, 7, 13, 19] {
                let z = rat(i, 20);
                let dsum = chi_double_sum(d, k, &z);
                // (chi - 1) / (1-z)^{k+1} from the independent route lands
                // exactly on p(z): divisibility by (1-z)^{k+1}
                let omz = rat(20 - i, 20);
                let mut pw = rat(1, 1);
                for _ in 0..=k {
                    pw *= &omz;
                }
                assert_eq!((dsum - rat(1, 1)) / pw, chi.p.eval(&rat(i, 20)), "d={d} k={k}");
            }
            let mut prev = -1e-12;
            for i in 0..=1000 {
                let v = chi.eval_f64(i as f64 / 1000.0);
                assert!((-1e-12..=1.0 + 1e-12).contains(&v));
                assert!(v >= prev - 1e-12);
                prev = v;
            }
        }
    }
    // I + J = chi at 50 points for 8 (d, k) pairs
    for d in [2u32, 4] {
        for k in [0u32, 1, 2, 3] {
            let chi = chi_closed(d, k).unwrap();
            for i in 1..=50 {
                let eps = i as f64 / 51.0;
                let sum = half_j(d, k, eps).unwrap() + half_i(d, k, eps).unwrap();
                assert!(
                    (sum - chi.eval_f64(eps * eps)).abs() <= 1e-11,
                    "J+I at d={d} k={k} eps={eps}"
                );
            }
        }
    }
    // spectrum-separable implies PPT with zero violations over 1e6 samples
    let mut violations = 0u64;
    for (field, dims, seed) in [
        (Field::Complex, (2usize, 2usize), 3121u64),
        (Field::Complex, (2, 3), 3122),
    ] {
        let spec = MeasureSpec::new(field, dims, Family::HilbertSchmidt);
        let mut stream = seplab_core::ensembles::RandomStream::pseudo(seed, 0);
        let mut ws = seplab_core::criteria::ClassifyScratch::default();
        for _ in 0..500_000 {
            let rho = seplab_core::ensembles::sample_density(&mut stream, &spec).unwrap();
            let v = seplab_core::criteria::classify_with(&rho, &mut ws).unwrap();
            if v.spectrum_separable && !v.ppt {
                violations += 1;
            }
        }
    }
    assert_eq!(violations, 0, "spectrum test certified a non-PPT state");
    // estimator merge associativity over a random partition
    {
        use seplab_core::criteria::Verdict;
        let mk = |i: u64| Verdict {
            ppt: i % 3 != 0,
            det_pt_greater: i % 2 == 0,
            spectrum_separable: i % 9 == 0,
            min_pt_eigenvalue: 0.0,
            negative_pt_count: 0,
            det_rho: 0.0,
            det_pt: 0.0,
        };
        let mut whole = EstimatorState::new();
        let mut parts = vec![EstimatorState::new(); 4];
        let mut rng = seplab_core::rng::CounterRng::new(3123, 0);
        for i in 0..10_000 {
            let v = mk(i);
            whole.update(&v);
            let k = (rng.uniform() * 4.0) as usize;
            parts[k.min(3)].update(&v);
        }
        let mut forward = EstimatorState::new();
        for p in &parts {
            forward.merge(p);
        }
        parts.reverse();
        let mut backward = EstimatorState::new();
        for p in &parts {
            backward.merge(p);
        }
        assert_eq!(forward, whole);
        assert_eq!(backward, whole);
    }
    // volume factorizations round-trip
    for r in registry() {
        assert!(r.value.factorization_roundtrip());
    }
    for n in [4u32, 6, 8, 10] {
        assert!(vol_hs_complex(n).factorization_roundtrip());
    }
    // Bloch-profile anchor: m = 2, r = 0 equals the N = 4 HS volume exactly
    let v0 = milz_strunz_volume(2, &rat(0, 1));
    assert_eq!(v0, vol_hs_complex(4));
    println!("ACCEPTANCE 12 PASS: chi invariants, J+I=chi (8 pairs x 50 points), spectrum=>PPT (1e6, zero violations), merge associativity, factorization round-trips, Bloch-profile anchor");
}
