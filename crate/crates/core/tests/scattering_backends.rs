use geodesic_spectra::scattering::{phi_congruence, phi_moonshine, track_phase, ScatteringModel, SignMode};
use geodesic_spectra::spectra::{Family, SurfaceDescriptor};
use geodesic_spectra::Complex64;

fn congruence(q: u64) -> ScatteringModel {
    let s = SurfaceDescriptor::new(Family::Gamma0, q).unwrap();
    ScatteringModel::new(&s, SignMode::UpToSign).unwrap()
}

#[test]
fn gamma0_level_one_matches_moonshine_level_one() {
    let model = congruence(1);
    for i in 0..20 {
        let s = Complex64::new(0.3 + 0.02 * i as f64, -40.0 + 4.3 * i as f64);
        let a = phi_congruence(&model, s).unwrap();
        let b = phi_moonshine(1, s).unwrap();
        assert!((a - b).norm() < 1e-9, "s={s}: {a} vs {b}");
    }
}

#[test]
fn congruence_determinants_are_unimodular() {
    for q in [1u64, 2, 3, 5, 6] {
        let model = congruence(q);
        for t in [1.0, 5.0, 10.0, 37.3, 99.9] {
            let s = Complex64::new(0.5, t);
            let v = model.phi(s).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-8, "q={q} t={t}");
            let w = model.phi(Complex64::new(0.5, -t)).unwrap();
            assert!((v * w - 1.0).norm() < 1e-8, "q={q} t={t}");
        }
    }
}

#[test]
fn congruence_value_at_half_is_a_sign() {
    for q in [1u64, 2, 3, 5, 6] {
        let v = congruence(q).phi(Complex64::new(0.5, 0.0)).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-10 && v.im.abs() < 1e-10, "q={q}: {v}");
    }
}

#[test]
fn explicit_gamma0_prime_determinant() {
    // For Gamma_0(p) the 2x2 scattering matrix has determinant
    // phi_1(s)^2 (p^{2-2s} - 1) / (p^{2s} - 1), with phi_1 the modular one.
    for p in [2u64, 3, 5, 7] {
        let model = congruence(p);
        for s in [
            Complex64::new(0.5, 3.0),
            Complex64::new(0.6, 11.0),
            Complex64::new(0.4, -7.5),
        ] {
            let phi1 = phi_moonshine(1, s).unwrap();
            let pf = p as f64;
            let expect = phi1 * phi1 * (Complex64::new(pf, 0.0).powc(2.0 - 2.0 * s) - 1.0)
                / (Complex64::new(pf, 0.0).powc(2.0 * s) - 1.0);
            let got = model.phi(s).unwrap();
            assert!((got - expect).norm() < 1e-9 * expect.norm(), "p={p} s={s}");
        }
    }
}

#[test]
fn exact_sign_mode_requires_parity() {
    let s = SurfaceDescriptor::new(Family::Gamma0, 5).unwrap();
    assert!(ScatteringModel::new(&s, SignMode::Exact { h0: 1 }).is_err());
    let even = ScatteringModel::new(&s, SignMode::Exact { h0: 0 }).unwrap();
    assert_eq!(even.sign(), -1.0);
    let same = ScatteringModel::new(&s, SignMode::Exact { h0: 2 }).unwrap();
    assert_eq!(same.sign(), 1.0);
}

#[test]
fn winding_of_congruence_surface() {
    // The winding number of Gamma_0(5) is positive and grows like (h/pi) T log T.
    let model = congruence(5);
    let tr = track_phase(&model, 60.0, 1e-2).unwrap();
    let m = tr.m_at(60.0).unwrap();
    let main = 2.0 / std::f64::consts::PI * 60.0 * 60f64.ln();
    assert!(m > 0.0 && ((m - main) / 60.0).abs() < 3.0, "M={m}");
}
