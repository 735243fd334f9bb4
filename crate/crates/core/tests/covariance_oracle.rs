//! Cross-checks the closed-form pair covariance against brute-force
//! propagation of the full 2N×2N quadrature covariance through the real
//! symplectic representation of S.

use proptest::prelude::*;
use qscatter_core::*;

/// Quadrature covariance of the occupied input mode, written directly from
/// the state rather than from its photon-number moments.
fn input_block(state: &GaussianInput<f64>) -> [[f64; 2]; 2] {
    match *state {
        GaussianInput::Coherent { .. } => [[0.5, 0.0], [0.0, 0.5]],
        GaussianInput::Thermal { n_bar } => [[n_bar + 0.5, 0.0], [0.0, n_bar + 0.5]],
        GaussianInput::Squeezed { r, theta } => {
            // ½ R(θ/2) diag(e^{-2r}, e^{2r}) R(θ/2)ᵀ
            let (s, c) = (theta / 2.0).sin_cos();
            let (lo, hi) = (0.5 * (-2.0 * r).exp(), 0.5 * (2.0 * r).exp());
            [[c * c * lo + s * s * hi, c * s * (lo - hi)], [c * s * (lo - hi), s * s * lo + c * c * hi]]
        }
    }
}

fn propagate(state: &GaussianInput<f64>, s: &ScatteringMatrix<f64>, k_prime: usize) -> Vec<Vec<f64>> {
    let n = s.dim();
    let mut sigma_in = vec![vec![0.0; 2 * n]; 2 * n];
    for (k, row) in sigma_in.iter_mut().enumerate() {
        row[k] = 0.5;
    }
    let block = input_block(state);
    for a in 0..2 {
        for b in 0..2 {
            sigma_in[2 * k_prime + a][2 * k_prime + b] = block[a][b];
        }
    }
    // x_out = Re S x - Im S p, p_out = Im S x + Re S p
    let mut m = vec![vec![0.0; 2 * n]; 2 * n];
    for l in 0..n {
        for k in 0..n {
            let z = s.get(l, k);
            m[2 * l][2 * k] = z.re;
            m[2 * l][2 * k + 1] = -z.im;
            m[2 * l + 1][2 * k] = z.im;
            m[2 * l + 1][2 * k + 1] = z.re;
        }
    }
    let dim = 2 * n;
    let mut tmp = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            tmp[i][j] = (0..dim).map(|k| m[i][k] * sigma_in[k][j]).sum();
        }
    }
    let mut out = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            out[i][j] = (0..dim).map(|k| tmp[i][k] * m[j][k]).sum();
        }
    }
    out
}

fn assert_pair_matches(
    state: GaussianInput<f64>,
    n: usize,
    seed: u64,
    pair: ModePair,
) -> std::result::Result<(), TestCaseError> {
    let s = ScatteringMatrix::<f64>::haar_random(n, seed).unwrap();
    let full = propagate(&state, &s, pair.k_prime);
    let sigma = output_covariance(&state, &s, &pair).unwrap();
    let idx = [2 * pair.l, 2 * pair.l + 1, 2 * pair.m, 2 * pair.m + 1];
    let scale = full.iter().flatten().fold(1.0f64, |a, v| a.max(v.abs()));
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            prop_assert!(
                (sigma.get(a, b) - full[i][j]).abs() <= 1e-12 * scale,
                "entry ({a},{b}): closed form {} vs propagated {}",
                sigma.get(a, b),
                full[i][j]
            );
        }
    }
    Ok(())
}

fn pair_strategy() -> impl Strategy<Value = (usize, u64, ModePair)> {
    (2usize..=10, any::<u64>()).prop_flat_map(|(n, seed)| {
        (Just(n), Just(seed), 0..n, 0..n, 0..n - 1).prop_map(|(n, seed, k, l, m)| {
            let m = if m >= l { m + 1 } else { m };
            (n, seed, ModePair::new(k, l, m).unwrap())
        })
    })
}

proptest! {
    #[test]
    fn squeezed_closed_form_matches_propagation(
        (n, seed, pair) in pair_strategy(),
        r in 0.0f64..2.0,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        assert_pair_matches(GaussianInput::squeezed(r, theta).unwrap(), n, seed, pair)?;
    }

    #[test]
    fn thermal_closed_form_matches_propagation((n, seed, pair) in pair_strategy(), n_bar in 0.0f64..1e3) {
        assert_pair_matches(GaussianInput::thermal(n_bar).unwrap(), n, seed, pair)?;
    }

    #[test]
    fn standard_form_keeps_invariants((n, seed, pair) in pair_strategy(), r in 0.0f64..1.5, theta in 0.0f64..std::f64::consts::TAU) {
        let s = ScatteringMatrix::<f64>::haar_random(n, seed).unwrap();
        let sigma = output_covariance(&GaussianInput::squeezed(r, theta).unwrap(), &s, &pair).unwrap();
        prop_assert!(validate_physical(&sigma));
        let before = invariants(&sigma);
        let after = standard_form(&sigma).unwrap().invariants();
        for (x, y) in [
            (before.det_a, after.det_a),
            (before.det_b, after.det_b),
            (before.det_gamma, after.det_gamma),
            (before.det_sigma, after.det_sigma),
        ] {
            prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn swapping_the_pair_keeps_the_correlation((n, seed, pair) in pair_strategy(), r in 0.01f64..1.5) {
        let s = ScatteringMatrix::<f64>::haar_random(n, seed).unwrap();
        let state = GaussianInput::squeezed(r, 0.4).unwrap();
        let a = correlation_report(&output_covariance(&state, &s, &pair).unwrap()).unwrap();
        let b = correlation_report(&output_covariance(&state, &s, &pair.swapped()).unwrap()).unwrap();
        prop_assert!((a.c_value - b.c_value).abs() <= 1e-9 * a.c_value);
        prop_assert_eq!(a.separable, b.separable);
        prop_assert!((a.discord_measured_on_l - b.discord_measured_on_m).abs() < 1e-9);
    }
}

#[test]
fn squeezed_example_keeps_invariants() {
    let s = ScatteringMatrix::<f64>::haar_random(6, 2024).unwrap();
    let state = GaussianInput::squeezed(0.5, std::f64::consts::FRAC_PI_3).unwrap();
    let sigma = output_covariance(&state, &s, &ModePair::new(1, 0, 4).unwrap()).unwrap();
    let before = invariants(&sigma);
    let after = standard_form(&sigma).unwrap().invariants();
    assert!((before.det_sigma - after.det_sigma).abs() < 1e-9 * before.det_sigma);
    assert!((before.det_gamma - after.det_gamma).abs() < 1e-9);
}

/// The Monte Carlo estimator fixes outputs (0, 1); by Haar invariance any
/// other fixed pair gives the same mean.
#[test]
fn monte_carlo_pair_choice_is_immaterial() {
    let (n, n_bar, trials) = (6, 20.0, 10_000u64);
    let cfg = EnsembleConfig::new(n, n_bar, trials as usize, 77).unwrap();
    let fixed = mean_discord_mc(&cfg).unwrap();
    let other: Vec<f64> = (0..trials)
        .map(|i| {
            let s = ScatteringMatrix::<f64>::haar_random(n, derive_seed(1234, i)).unwrap();
            let sigma = output_covariance(
                &GaussianInput::thermal(n_bar).unwrap(),
                &s,
                &ModePair::new(3, 5, 2).unwrap(),
            )
            .unwrap();
            gaussian_discord(&standard_form(&sigma).unwrap(), MeasuredMode::First).unwrap()
        })
        .collect();
    let other = EnsembleStat::from_samples(&other);
    let sigma = (fixed.std_error.powi(2) + other.std_error.powi(2)).sqrt();
    assert!((fixed.mean - other.mean).abs() < 4.0 * sigma, "{fixed:?} vs {other:?}");
}
