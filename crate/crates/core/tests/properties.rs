use geodesic_spectra::arith::{kappa, pell_fundamental};
use geodesic_spectra::geodesics::{enumerate_norms, norm_from_trace};
use geodesic_spectra::lfunc::log_gamma;
use geodesic_spectra::spectra::ZeroDataset;
use geodesic_spectra::spectra::{counting_function, load_spectrum, SpectrumDataset, SurfaceDescriptor};
use geodesic_spectra::sums::{landau_sum, spectral_sum, spectral_sum_parallel, sum_exponentials};
use geodesic_spectra::Complex64;
use proptest::prelude::*;

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn dataset(ts: Vec<f64>) -> SpectrumDataset {
    let t_max = ts.last().copied().unwrap_or(1.0);
    SpectrumDataset::new(SurfaceDescriptor::modular(), ts, t_max, "prop").unwrap()
}

proptest! {
    #[test]
    fn counting_is_monotone(ts in prop::collection::vec(0.01f64..500.0, 1..200), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let d = dataset(sorted(ts));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let t_max = d.t_max();
        prop_assert!(counting_function(&d, lo * t_max).unwrap() <= counting_function(&d, hi * t_max).unwrap());
        prop_assert_eq!(counting_function(&d, t_max).unwrap(), d.len());
    }

    #[test]
    fn save_load_round_trip(ts in prop::collection::vec(0.001f64..1e4, 1..100)) {
        let d = dataset(sorted(ts));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("spectrum.txt");
        d.save(&path).unwrap();
        let back = load_spectrum(&path, d.surface.clone()).unwrap();
        prop_assert_eq!(back.t_values(), d.t_values());
        prop_assert_eq!(back.t_max(), d.t_max());
    }

    #[test]
    fn sum_is_additive_over_windows(
        ts in prop::collection::vec(0.01f64..300.0, 1..2000),
        x in 1.01f64..50.0,
        window in 1usize..300,
    ) {
        let d = dataset(sorted(ts));
        let t = d.t_max();
        let full = spectral_sum(&d, t, x).unwrap();
        let split = spectral_sum_parallel(&d, t, x, window).unwrap();
        prop_assert!((full - split).norm() < 1e-12);
        // Explicit disjoint windows.
        let parts: Complex64 = d.t_values().chunks(window).map(|c| sum_exponentials(c, x.ln())).sum();
        prop_assert!((full - parts).norm() < 1e-12 * (1.0 + d.len() as f64).sqrt());
    }

    #[test]
    fn conjugation_symmetry(ts in prop::collection::vec(0.01f64..300.0, 1..500), x in 1.01f64..50.0) {
        let d = dataset(sorted(ts));
        let s = spectral_sum(&d, d.t_max(), x).unwrap();
        let conj = sum_exponentials(d.t_values(), -x.ln());
        prop_assert!((s.conj() - conj).norm() < 1e-12);
    }

    #[test]
    fn log_gamma_recurrence(re in -30.0f64..60.0, im in -500.0f64..500.0) {
        let s = Complex64::new(re, im);
        prop_assume!(s.norm() > 1e-3);
        let lhs = log_gamma(s + 1.0).unwrap();
        let rhs = log_gamma(s).unwrap() + s.ln();
        prop_assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn landau_sum_is_deterministic(gs in prop::collection::vec(1.0f64..200.0, 0..200), x in 1.5f64..20.0) {
        let gs = sorted(gs);
        let z = ZeroDataset::new(gs, 200.0, "prop").unwrap();
        let a = landau_sum(&z, 200.0, x).unwrap();
        let b = landau_sum(&z, 200.0, x).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn pell_equation_holds_for_non_squares_up_to_500() {
    for d in 2..=500u64 {
        let r = (d as f64).sqrt() as u64;
        if r * r == d || (r + 1) * (r + 1) == d {
            continue;
        }
        assert!(pell_fundamental(d).unwrap().satisfies_equation(), "d={d}");
    }
}

#[test]
fn kappa_vanishes_exactly_at_modular_norms() {
    let norms = enumerate_norms(&SurfaceDescriptor::modular(), 2000.0).unwrap();
    for g in &norms {
        assert!(kappa(g.norm) < 1e-9);
    }
    // Off the norms, on a fine grid, kappa stays away from zero.
    let mut x: f64 = 2.0;
    while x < 2000.0 {
        let near = norms.iter().any(|g| (g.norm.ln() - x.ln()).abs() < 1e-3);
        if !near {
            assert!(kappa(x) > 1e-6, "x={x}");
        }
        x *= 1.0001;
    }
    assert!((norms[0].norm - norm_from_trace(3).unwrap()).abs() < 1e-15);
}
