use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{check_t, check_x, CompensatedComplex, SumsError};
use crate::spectra::SpectrumDataset;

/// Number of terms per window in [`spectral_sum_parallel`].
pub const DEFAULT_WINDOW: usize = 4096;

/// `exp(i t l)` with the rounding error of the product `t l` carried to
/// first order, so large phases lose no accuracy to the multiplication.
pub fn cis_product(t: f64, l: f64) -> Complex64 {
    let hi = t * l;
    let lo = t.mul_add(l, -hi);
    let (s, c) = hi.sin_cos();
    Complex64::new(c - s * lo, s + c * lo)
}

fn partial(ts: &[f64], log_x: f64) -> CompensatedComplex {
    ts.iter().map(|&t| cis_product(t, log_x)).collect()
}

/// `sum_j exp(i t_j log X)` with compensated accumulation.
pub fn sum_exponentials(ts: &[f64], log_x: f64) -> Complex64 {
    partial(ts, log_x).value()
}

/// `S(T, X) = sum_{t_j <= T} X^{i t_j}`.
pub fn spectral_sum(d: &SpectrumDataset, t: f64, x: f64) -> Result<Complex64, SumsError> {
    check_x("spectral_sum", x)?;
    let ts = d.window("spectral_sum", t)?;
    Ok(sum_exponentials(ts, x.ln()))
}

/// [`spectral_sum`] evaluated on fixed windows of `window` terms in parallel.
/// The windows and their merge order do not depend on the thread count, so
/// the result is reproducible bit for bit.
pub fn spectral_sum_parallel(d: &SpectrumDataset, t: f64, x: f64, window: usize) -> Result<Complex64, SumsError> {
    check_x("spectral_sum", x)?;
    if window == 0 {
        return Err(SumsError::Domain {
            op: "spectral_sum",
            msg: "window size must be positive".into(),
        });
    }
    let ts = d.window("spectral_sum", t)?;
    let log_x = x.ln();
    let parts: Vec<CompensatedComplex> = ts.par_chunks(window).map(|c| partial(c, log_x)).collect();
    let mut total = CompensatedComplex::new();
    for p in &parts {
        total.merge(p);
    }
    Ok(total.value())
}

/// Cosine and sine kernels and their normalisations at one `(T, X)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernels {
    pub r: f64,
    pub p: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub delta1: f64,
    pub delta2: f64,
}

/// Kernels from an already computed `S(T, X)` and the surface volume.
pub fn kernels_of_sum(s: Complex64, t: f64, x: f64, volume: f64) -> Kernels {
    let l = x.ln();
    let r = 2.0 * s.re;
    let p = 2.0 * s.im;
    let (sin, cos) = (t * l).sin_cos();
    let scale = volume / PI * t / l;
    Kernels {
        r,
        p,
        theta1: r - scale * sin,
        theta2: p + scale * cos,
        delta1: r / t,
        delta2: p / t,
    }
}

pub fn kernels(d: &SpectrumDataset, t: f64, x: f64) -> Result<Kernels, SumsError> {
    check_t("kernels", t)?;
    let s = spectral_sum(d, t, x)?;
    let k = kernels_of_sum(s, t, x, d.surface.volume);
    debug_assert!((Complex64::new(k.r, k.p) - 2.0 * s).norm() <= 1e-12 * (1.0 + s.norm()));
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{SpectraError, SurfaceDescriptor};

    fn dataset(ts: Vec<f64>) -> SpectrumDataset {
        let t_max = ts.last().copied().unwrap_or(1.0);
        SpectrumDataset::new(SurfaceDescriptor::modular(), ts, t_max, "synthetic").unwrap()
    }

    #[test]
    fn single_term() {
        let d = dataset(vec![3.7]);
        let s = spectral_sum(&d, 3.7, 5.0).unwrap();
        assert!((s - Complex64::cis(3.7 * 5f64.ln())).norm() < 1e-15);
        assert!((s.conj() - sum_exponentials(&[3.7], -(5f64.ln()))).norm() < 1e-15);
    }

    #[test]
    fn exact_phases() {
        let x = 7.0f64;
        let n = 1000;
        let ts: Vec<f64> = (1..=n).map(|j| 2.0 * PI * j as f64 / x.ln()).collect();
        let t_end = *ts.last().unwrap();
        let d = dataset(ts);
        let s = spectral_sum(&d, t_end, x).unwrap();
        assert!((s - n as f64).norm() < 1e-9);
        let k = kernels(&d, t_end, x).unwrap();
        assert!((k.delta1 - 2.0 * n as f64 / t_end).abs() < 1e-9);
    }

    #[test]
    fn geometric_closed_form() {
        let n = 10_000usize;
        let x = 3.3f64;
        let d = dataset((1..=n).map(|j| j as f64).collect());
        let s = spectral_sum(&d, n as f64, x).unwrap();
        let l = x.ln();
        let z = Complex64::cis(l);
        let expect = z * (cis_product(n as f64, l) - 1.0) / (z - 1.0);
        assert!((s - expect).norm() < 1e-12, "{}", (s - expect).norm());
    }

    #[test]
    fn parallel_matches_sequential() {
        let d = dataset((1..=20_000).map(|j| (j as f64).sqrt() * 3.0).collect());
        let t = d.t_max();
        for x in [2.0, 4.0, 22.95] {
            let a = spectral_sum(&d, t, x).unwrap();
            let b = spectral_sum_parallel(&d, t, x, 1000).unwrap();
            assert!((a - b).norm() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn empty_window_kernels() {
        let d = dataset(vec![10.0, 11.0]);
        let (t, x) = (5.0, 3.0f64);
        let k = kernels(&d, t, x).unwrap();
        assert_eq!((k.r, k.p), (0.0, 0.0));
        let expect = -(d.surface.volume / PI) * (t * x.ln()).sin() / x.ln() * t;
        assert!((k.theta1 - expect).abs() < 1e-14);
    }

    #[test]
    fn completeness_and_domain_errors() {
        let d = dataset(vec![1.0, 2.0]);
        assert!(matches!(
            spectral_sum(&d, 3.0, 2.0),
            Err(SumsError::Spectra(SpectraError::Completeness { .. }))
        ));
        assert!(spectral_sum(&d, 1.0, 1.0).is_err());
    }
}
