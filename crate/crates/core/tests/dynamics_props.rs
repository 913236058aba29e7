//! Memory-model and mean-field properties.

use faraday_core::atom::builtin_cesium_d2;
use faraday_core::dynamics::{
    fidelity_approx, ideal_fidelity, mean_field_rotation, propagate_memory, transfer_gains, DecayRates,
    PhotonRatio, ProtocolConfig, ProtocolModel,
};
use faraday_core::polarizability::{tensor_coeffs, Detuning};
use faraday_core::scatter::Orientation;
use faraday_core::wigner::HalfInt;
use proptest::prelude::*;

/// Rates from canonical knobs: light (gamma_x, gamma_y), Gamma_x at fixed
/// Gamma_X, Gamma_P, and noise in excess of the fluctuation floor
/// (1 - e^{-2 Gamma})/2 that keeps the output variances physical.
fn rates_from_knobs(k: &[f64; 7]) -> DecayRates {
    let [gx, gy, sx, cx, cp, ex, ep] = *k;
    let floor = |g: f64| -(-2.0 * g).exp_m1() / 2.0;
    DecayRates::new([gx, gy], [sx, cx + sx / 2.0, cp + sx / 2.0], [floor(cx) + ex, floor(cp) + ep])
}

/// Fidelity with kappa chosen so that kappa_A = 1.
fn constrained_fidelity(rates: &DecayRates) -> f64 {
    let kappa = 1.0 / transfer_gains(rates, 1.0).kappa_a;
    let gains = transfer_gains(rates, kappa);
    propagate_memory(kappa, rates, &gains).unwrap().fidelity
}

fn cs_model(d: f64, detuning: f64) -> ProtocolModel {
    ProtocolModel::new(ProtocolConfig {
        atom: builtin_cesium_d2(),
        f: HalfInt::int(4),
        detuning: Detuning::Mhz(detuning),
        optical_depth: d,
        photon_ratio: PhotonRatio::Fixed(20.0),
        orientation: Orientation::Parallel,
        kappa: 1.0,
    })
    .unwrap()
}

proptest! {
    #[test]
    fn fidelity_nonincreasing_in_each_knob(k in proptest::array::uniform7(0.0f64..0.1), which in 0usize..7, step in 1e-4f64..0.05) {
        let f0 = constrained_fidelity(&rates_from_knobs(&k));
        let mut k2 = k;
        k2[which] += step;
        let f1 = constrained_fidelity(&rates_from_knobs(&k2));
        prop_assert!(f1 <= f0 + 1e-15, "knob {} raised fidelity {} -> {}", which, f0, f1);
        prop_assert!(f0 <= ideal_fidelity() + 1e-15);
    }

    #[test]
    fn fidelity_nonincreasing_under_rate_scaling(k in proptest::array::uniform7(0.0f64..0.1), s in 1.0f64..3.0) {
        let r = rates_from_knobs(&k);
        prop_assert!(constrained_fidelity(&r.scaled(s)) <= constrained_fidelity(&r) + 1e-15);
    }

    #[test]
    fn feedback_restores_means(k in proptest::array::uniform7(0.0f64..0.5), kappa in 0.1f64..3.0) {
        let r = rates_from_knobs(&k);
        let m = propagate_memory(kappa, &r, &transfer_gains(&r, kappa)).unwrap();
        prop_assert!((m.means.p_from_x_light + 1.0).abs() < 1e-15);
        prop_assert!(m.var_x >= 0.0 && m.var_p >= 0.0);
        prop_assert!(m.fidelity > 0.0 && m.fidelity <= 1.0);
    }

    #[test]
    fn approximation_residual_is_second_order(k in proptest::array::uniform7(0.0f64..0.1)) {
        // first-order terms agree exactly, so the residual is bounded by
        // a modest multiple of the largest rate squared
        let r = rates_from_knobs(&k);
        let m = [r.light_x, r.light_y, r.spin_x, r.spin_y, r.spin_z, r.noise_x, r.noise_p]
            .into_iter()
            .fold(0.0, f64::max);
        let err = (constrained_fidelity(&r) - fidelity_approx(&r)).abs();
        prop_assert!(err <= m * m, "residual {} at max rate {}", err, m);
    }

    #[test]
    fn mean_field_conserves_norms(
        spin in proptest::array::uniform3(-3.0f64..3.0),
        stokes in proptest::array::uniform3(-2.0f64..2.0),
        strength in 0.0f64..50.0,
    ) {
        let t = tensor_coeffs(&builtin_cesium_d2(), HalfInt::int(4), -700.0).unwrap();
        let (s, j) = mean_field_rotation(spin, stokes, &t, strength, 10_000).unwrap();
        let n = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        prop_assert!((n(s) - n(stokes)).abs() <= 1e-10 * n(stokes).max(1.0));
        prop_assert!((n(j) - n(spin)).abs() <= 1e-10 * n(spin).max(1.0));
    }
}

#[test]
fn kappa_a_rises_at_small_kappa() {
    let m = cs_model(50.0, -800.0);
    let mut prev = 0.0;
    for i in 1..=200 {
        let k = 0.01 * i as f64;
        let a = m.kappa_a(k).unwrap();
        assert!(a > prev, "kappa_A not increasing at kappa = {k}");
        // continuity on a fine step
        assert!((m.kappa_a(k + 1e-7).unwrap() - a).abs() < 1e-6);
        prev = a;
    }
}

#[test]
fn small_angle_faraday_rotation() {
    let t = tensor_coeffs(&builtin_cesium_d2(), HalfInt::int(4), -500.0).unwrap();
    // spin in the x-z plane so the a2 terms leave S_z alone to first order
    let (spin, stokes) = ([4.0, 0.0, 0.8], [1.0, 0.0, 0.0]);
    let err = |g: f64| {
        let (s, _) = mean_field_rotation(spin, stokes, &t, g, 1000).unwrap();
        let dy = s[1] - g * t.a1 * stokes[0] * spin[2];
        (dy.abs(), s[2].abs())
    };
    let (e1, z1) = err(1e-1);
    let (e2, z2) = err(5e-2);
    // at least quadratic in the strength (the S_y error is in fact cubic)
    assert!(e1 > 0.0 && e1 / e2 >= 3.5, "linear residual ratio {}", e1 / e2);
    assert!(z1 / z2 >= 3.5);
    assert!(e1 < 1e-2 * (1e-1 * t.a1 * spin[2]).abs());
}
