mod common;

use basis_designs::design::{Basis, Provenance, WeightedBasisFamily};
use basis_designs::linalg::{c, frobenius, identity, projector, vectorize, CMatrix};
use basis_designs::random::{random_density_matrix, random_pure_state, trial_rng};
use basis_designs::tomography::{
    canonical_dual, estimated_probabilities, expected_error_fixed, expected_error_random_basis,
    frame_superop, is_informationally_complete, monte_carlo_error, povm_for_allocation, povm_from_family,
    reconstruct, simulate_with, tight_dual, worst_case_fidelity, DensityMatrix, MonteCarloConfig, Orientation,
    SamplingMode, ShotAllocation,
};

use common::{corpus, mubs};

#[test]
fn povm_elements_sum_to_identity() {
    for (name, fam) in corpus() {
        let povm = povm_from_family(&fam);
        let d = fam.dim();
        assert!((povm.taus().iter().sum::<f64>() - d as f64).abs() < 1e-10, "{name}");
        assert!(frobenius(&(povm.element_sum() - identity(d))) < 1e-10, "{name}");
        assert!(is_informationally_complete(&povm).unwrap(), "{name}");
    }
}

#[test]
fn frame_is_a_multiple_of_identity_on_traceless_operators() {
    for (name, fam) in corpus() {
        let d = fam.dim();
        let f = frame_superop(&povm_from_family(&fam)).unwrap();
        let i = vectorize(&identity(d));
        let p0 = CMatrix::identity(d * d, d * d) - &i * i.adjoint() / c(d as f64, 0.0);
        let restricted = &p0 * f * &p0;
        let dev = frobenius(&(restricted - &p0 / c((d + 1) as f64, 0.0)));
        assert!(dev < 1e-9, "{name}: {dev:e}");
    }
}

#[test]
fn canonical_and_tight_duals_coincide_for_designs() {
    for (name, fam) in corpus() {
        let povm = povm_from_family(&fam);
        let a = canonical_dual(&povm).unwrap();
        let b = tight_dual(&povm, None).unwrap();
        assert!(a.residual(&povm).unwrap() < 1e-8, "{name}");
        let dev = (0..povm.len()).map(|x| frobenius(&(a.operator(x) - b.operator(x)))).fold(0.0, f64::max);
        assert!(dev < 1e-8, "{name}: {dev:e}");
    }
}

#[test]
fn perturbed_family_needs_a_different_dual() {
    let fam = mubs(2);
    let (s, co) = 0.1f64.sin_cos();
    let rx = CMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(0.0, s), c(0.0, s), c(co, 0.0)]);
    let mut bases: Vec<Basis> = fam.bases().to_vec();
    bases[2] = Basis::new(&rx * bases[2].matrix()).unwrap();
    let pert = WeightedBasisFamily::new(bases, fam.weights().to_vec(), Provenance::named("perturbed")).unwrap();
    let povm = povm_from_family(&pert);
    let canonical = canonical_dual(&povm).unwrap();
    assert!(canonical.residual(&povm).unwrap() < 1e-8);
    let tight = tight_dual(&povm, None).unwrap();
    let dev = (0..povm.len()).map(|x| frobenius(&(canonical.operator(x) - tight.operator(x)))).fold(0.0, f64::max);
    assert!(dev > 1e-3, "{dev}");
}

#[test]
fn reconstruction_from_exact_probabilities() {
    // Pure |0><0| with qubit MUBs: p = (1/3)(1, 0, 1/2, 1/2, 1/2, 1/2).
    let fam = mubs(2);
    let povm = povm_from_family(&fam);
    let e0 = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let p = povm.probabilities(&e0);
    let want = [1.0, 0.0, 0.5, 0.5, 0.5, 0.5].map(|x| x / 3.0);
    for (a, b) in p.iter().zip(want) {
        assert!((a - b).abs() < 1e-12);
    }
    let back = reconstruct(&p, &tight_dual(&povm, None).unwrap()).unwrap();
    assert!(frobenius(&(back - e0)) < 1e-12);
}

#[test]
fn probability_estimates_are_unbiased_with_multinomial_covariance() {
    let fam = mubs(2);
    let n_a = 10_000u64;
    let alloc = ShotAllocation::uniform(3, n_a).unwrap();
    let povm = povm_for_allocation(&fam, &alloc).unwrap();
    let rho = DensityMatrix::new(random_density_matrix(2, &mut trial_rng(3, 0))).unwrap();
    let p = povm.probabilities(rho.matrix());
    let v = 1.0 / 3.0;
    let trials = 2000;
    let samples: Vec<Vec<f64>> = (0..trials)
        .map(|i| {
            let counts = simulate_with(&povm, &rho, &alloc, &mut trial_rng(40, i)).unwrap();
            estimated_probabilities(&counts, &alloc).unwrap()
        })
        .collect();
    let n = trials as f64;
    for x in 0..p.len() {
        let xs: Vec<f64> = samples.iter().map(|s| s[x]).collect();
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((mean - p[x]).abs() <= 4.0 * (var / n).sqrt(), "outcome {x}: {mean} vs {}", p[x]);
    }
    for a in 0..3 {
        for j in povm.basis_range(a) {
            for k in povm.basis_range(a) {
                let want = (v * p[j] * (j == k) as u8 as f64 - p[j] * p[k]) / n_a as f64;
                let prods: Vec<f64> = samples.iter().map(|s| (s[j] - p[j]) * (s[k] - p[k])).collect();
                let mean = prods.iter().sum::<f64>() / n;
                let var = prods.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
                assert!((mean - want).abs() <= 4.0 * (var / n).sqrt(), "cov({j},{k}): {mean:e} vs {want:e}");
            }
        }
    }
    // Different bases are independent.
    let prods: Vec<f64> = samples.iter().map(|s| (s[0] - p[0]) * (s[2] - p[2])).collect();
    let mean = prods.iter().sum::<f64>() / n;
    let var = prods.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
    assert!(mean.abs() <= 4.0 * (var / n).sqrt());
}

#[test]
fn monte_carlo_matches_the_exact_fixed_state_error() {
    for (name, fam) in corpus().into_iter().filter(|(_, f)| f.dim() <= 4) {
        let d = fam.dim();
        let v: Vec<f64> = fam.weight_values().iter().map(|w| w * d as f64).collect();
        let alloc = ShotAllocation::from_weights(&v, 300 * fam.len() as u64).unwrap();
        let povm = povm_for_allocation(&fam, &alloc).unwrap();
        let dual = canonical_dual(&povm).unwrap();
        let rho = DensityMatrix::new(random_density_matrix(d, &mut trial_rng(8, 0))).unwrap();
        let exact = expected_error_fixed(&povm, &dual, &rho, &alloc).unwrap();
        let cfg = MonteCarloConfig {
            trials: 1500,
            seed: 21,
            orientation: Orientation::Fixed,
            mode: SamplingMode::Fixed,
        };
        let mc = monte_carlo_error(&povm, &dual, &rho, &alloc, &cfg).unwrap();
        assert!((mc.mean - exact).abs() <= 4.0 * mc.std_error, "{name}: {} vs {exact}", mc.mean);
    }
}

#[test]
fn fixed_allocation_beats_random_bases_by_the_predicted_margin() {
    for (d, seed) in [(2u64, 1u64), (3, 2)] {
        let fam = mubs(d);
        let d = d as usize;
        let alloc = ShotAllocation::uniform(d + 1, 200).unwrap();
        let total = alloc.total();
        let povm = povm_for_allocation(&fam, &alloc).unwrap();
        let dual = tight_dual(&povm, None).unwrap();
        let rho = DensityMatrix::pure(&random_pure_state(d, &mut trial_rng(seed, 99))).unwrap();

        let fixed = expected_error_fixed(&povm, &dual, &rho, &alloc).unwrap();
        let random = expected_error_random_basis(&povm, &dual, &rho, total).unwrap();
        let margin = (d as f64 * rho.purity() - 1.0) / total as f64;
        assert!((random - fixed - margin).abs() < 1e-12);

        let run = |mode| {
            let cfg = MonteCarloConfig {
                trials: 3000,
                seed,
                orientation: Orientation::Fixed,
                mode,
            };
            monte_carlo_error(&povm, &dual, &rho, &alloc, &cfg).unwrap()
        };
        let a = run(SamplingMode::Fixed);
        let b = run(SamplingMode::RandomBasis);
        let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!(((b.mean - a.mean) - margin).abs() <= 3.0 * se, "d={d}: {} vs {margin}", b.mean - a.mean);
        assert!((a.mean - fixed).abs() <= 3.0 * a.std_error);
        assert!((b.mean - random).abs() <= 3.0 * b.std_error);
    }
}

#[test]
fn monte_carlo_is_independent_of_thread_count() {
    let fam = mubs(3);
    let alloc = ShotAllocation::uniform(4, 50).unwrap();
    let povm = povm_for_allocation(&fam, &alloc).unwrap();
    let dual = canonical_dual(&povm).unwrap();
    let rho = DensityMatrix::pure(&random_pure_state(3, &mut trial_rng(0, 0))).unwrap();
    let cfg = MonteCarloConfig {
        trials: 64,
        seed: 5,
        orientation: Orientation::Haar,
        mode: SamplingMode::Fixed,
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| monte_carlo_error(&povm, &dual, &rho, &alloc, &cfg).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn worst_case_fidelity_of_a_design_is_flat() {
    for (name, fam) in corpus().into_iter().filter(|(_, f)| f.dim() <= 6) {
        let d = fam.dim();
        let (f, psi) = worst_case_fidelity(&povm_from_family(&fam), 50, 1);
        assert!((f - 2.0 / (d + 1) as f64).abs() < 1e-9, "{name}: {f}");
        assert!((frobenius(&projector(&psi)) - 1.0).abs() < 1e-12);
    }
}
