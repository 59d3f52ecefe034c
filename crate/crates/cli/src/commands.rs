use std::env;
use std::path::{Path, PathBuf};

use geodesic_spectra::geodesics::enumerate_norms;
use geodesic_spectra::scattering::{character_tuples, track_phase, PhaseTrack, ScatteringModel, SignMode};
use geodesic_spectra::spectra::{
    load_spectrum, load_zeros, volume_of, Family, SpectrumDataset, SurfaceDescriptor, ZeroDataset,
};
use geodesic_spectra::sums::{
    equidistribution, kernels_of_sum, landau_prediction, landau_sum, peak_scan, predict_fujii, predict_generic,
    predict_kernels, spectral_sum, weyl_residual, PeakClass, PeakConfig, PeakReport, Prediction,
};
use geodesic_spectra::Complex64;
use rayon::prelude::*;

use crate::args::*;
use crate::error::{CliError, Context};
use crate::output::{emit, Marker, Plot, Table};

pub const DATA_ENV: &str = "GEODESIC_SPECTRA_DATA";

pub fn run(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Sum(a) => sum(a),
        Command::Predict(a) => predict(a),
        Command::Landau(a) => landau(a),
        Command::Weyl(a) => weyl(a),
        Command::Peaks(a) => peaks(a),
        Command::Equidist(a) => equidist(a),
        Command::Scatter(a) => scatter(a),
    }
}

/// Relative paths that do not exist are looked up in the data directory.
fn data_path(p: &Path) -> PathBuf {
    if p.is_relative() && !p.exists() {
        if let Some(dir) = env::var_os(DATA_ENV) {
            return Path::new(&dir).join(p);
        }
    }
    p.to_path_buf()
}

fn surface_of(a: &SurfaceArgs) -> Result<SurfaceDescriptor, CliError> {
    const OP: &str = "surface";
    let (family, level) = match (&a.surface, &a.family) {
        (Some(s), _) => {
            let (f, l) = s.split_once(':').unwrap_or((s, "1"));
            let level = l
                .parse::<u64>()
                .map_err(|e| CliError::usage(OP, format!("--surface {s:?}: bad level: {e}")))?;
            (f.to_string(), level)
        }
        (None, Some(f)) => (f.clone(), a.level.unwrap_or(1)),
        // The reference datasets are for the level-5 moonshine group.
        (None, None) => ("moonshine".to_string(), a.level.unwrap_or(5)),
    };
    let params = || format!("family={family} level={level}");
    let family: Family = family.parse().ctx(OP, params)?;
    let mut surface = match (a.volume, a.cusps) {
        (None, None) => SurfaceDescriptor::new(family, level).ctx(OP, params)?,
        (Some(v), h) => SurfaceDescriptor::with_volume(family, level, v, h).ctx(OP, params)?,
        (None, Some(h)) => {
            let v = volume_of(family, level).ctx(OP, params)?;
            SurfaceDescriptor::with_volume(family, level, v, Some(h)).ctx(OP, params)?
        }
    };
    surface.c_gamma = a.c_gamma;
    Ok(surface)
}

fn default_spectrum(surface: &SurfaceDescriptor) -> Option<&'static str> {
    match (surface.family, surface.level) {
        (Family::MoonshinePlus, 5) => Some("g5plus.txt"),
        (Family::MoonshinePlus, 6) => Some("g6plus.txt"),
        _ => None,
    }
}

fn load_dataset(spectrum: Option<&Path>, surface: SurfaceDescriptor) -> Result<SpectrumDataset, CliError> {
    let path = match spectrum {
        Some(p) => data_path(p),
        None => {
            let name = default_spectrum(&surface)
                .ok_or_else(|| CliError::usage("load_spectrum", format!("--spectrum is required for {surface}")))?;
            let dir = env::var_os(DATA_ENV).ok_or_else(|| {
                CliError::usage("load_spectrum", format!("--spectrum not given and {DATA_ENV} is unset"))
            })?;
            Path::new(&dir).join(name)
        }
    };
    load_spectrum(&path, surface).ctx("load_spectrum", || format!("path={}", path.display()))
}

fn load_zero_file(p: &Path) -> Result<ZeroDataset, CliError> {
    let path = data_path(p);
    load_zeros(&path).ctx("load_zeros", || format!("path={}", path.display()))
}

fn track(surface: &SurfaceDescriptor, t_end: f64, tol: f64, compact: bool) -> Result<PhaseTrack, CliError> {
    if compact {
        return Ok(PhaseTrack::compact(t_end));
    }
    let params = || format!("surface={surface} T={t_end} tol={tol}");
    let model = ScatteringModel::new(surface, SignMode::UpToSign).ctx("scattering_model", params)?;
    track_phase(&model, t_end, tol).ctx("track_phase", params)
}

fn record_dataset(t: &mut Table, d: &SpectrumDataset) {
    t.provenance("spectrum", &d.source_label)
        .provenance("entries", d.len())
        .provenance("T_max", d.t_max())
        .provenance("surface", &d.surface);
}

fn write(table: &Table, out: &OutputArgs, plot: impl FnOnce(&Path) -> Plot<'_>) -> Result<(), CliError> {
    emit(out.output.as_deref(), &table.render())?;
    if let (Some(g), Some(csv)) = (&out.gnuplot, &out.output) {
        emit(Some(g), &plot(csv).script())?;
    }
    Ok(())
}

/// Points `(T, X)` along the grid.
fn grid_points(g: &GridArgs, default_t: Option<f64>) -> Result<Vec<(f64, f64)>, CliError> {
    let pts = g.grid.points();
    match g.axis {
        AxisArg::X => {
            let t = g
                .fixed_t
                .or(default_t)
                .ok_or_else(|| CliError::usage("grid", "--fixed-T is required on an X axis"))?;
            Ok(pts.into_iter().map(|x| (t, x)).collect())
        }
        AxisArg::T => {
            let x = g
                .fixed_x
                .ok_or_else(|| CliError::usage("grid", "--fixed-X is required on a T axis"))?;
            Ok(pts.into_iter().map(|t| (t, x)).collect())
        }
    }
}

fn record_grid(t: &mut Table, g: &GridArgs, pts: &[(f64, f64)]) {
    t.provenance("axis", axis_name(g.axis)).provenance("grid", g.grid);
    if let Some(&(tt, x)) = pts.first() {
        match g.axis {
            AxisArg::X => t.provenance("fixed_T", tt),
            AxisArg::T => t.provenance("fixed_X", x),
        };
    }
}

fn axis_name(a: AxisArg) -> &'static str {
    match a {
        AxisArg::X => "X",
        AxisArg::T => "T",
    }
}

fn axis_value(a: AxisArg, (t, x): (f64, f64)) -> f64 {
    match a {
        AxisArg::X => x,
        AxisArg::T => t,
    }
}

fn kind_name(k: KindArg) -> &'static str {
    match k {
        KindArg::S => "S",
        KindArg::R => "R",
        KindArg::P => "P",
        KindArg::Theta1 => "Theta1",
        KindArg::Theta2 => "Theta2",
        KindArg::Delta1 => "Delta1",
        KindArg::Delta2 => "Delta2",
    }
}

fn sum(a: &SumArgs) -> Result<(), CliError> {
    let surface = surface_of(&a.surface)?;
    let d = load_dataset(a.spectrum.as_deref(), surface)?;
    let pts = grid_points(&a.grid, Some(d.t_max()))?;
    let vol = d.surface.volume;
    let values: Vec<Vec<f64>> = pts
        .par_iter()
        .map(|&(t, x)| {
            let s = spectral_sum(&d, t, x).ctx("spectral_sum", || format!("T={t} X={x}"))?;
            let k = kernels_of_sum(s, t, x, vol);
            Ok(a.kind
                .iter()
                .flat_map(|kind| match kind {
                    KindArg::S => vec![s.re, s.im],
                    KindArg::R => vec![k.r],
                    KindArg::P => vec![k.p],
                    KindArg::Theta1 => vec![k.theta1],
                    KindArg::Theta2 => vec![k.theta2],
                    KindArg::Delta1 => vec![k.delta1],
                    KindArg::Delta2 => vec![k.delta2],
                })
                .collect())
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = Table::new("sum");
    record_dataset(&mut table, &d);
    record_grid(&mut table, &a.grid, &pts);
    table.provenance(
        "kind",
        a.kind.iter().map(|k| kind_name(*k)).collect::<Vec<_>>().join(","),
    );
    let mut columns = vec![axis_name(a.grid.axis).to_string()];
    for k in &a.kind {
        match k {
            KindArg::S => columns.extend(["re_S".to_string(), "im_S".to_string()]),
            other => columns.push(kind_name(*other).to_string()),
        }
    }
    table.columns(columns.clone());
    for (p, v) in pts.iter().zip(values) {
        let mut row = vec![axis_value(a.grid.axis, *p).to_string()];
        row.extend(v.iter().map(f64::to_string));
        table.row(row);
    }

    let mut markers = Vec::new();
    if a.mark_peaks {
        if a.grid.axis != AxisArg::X {
            return Err(CliError::usage("peak_scan", "--mark-peaks needs an X axis"));
        }
        let t = pts[0].0;
        let xs: Vec<f64> = pts.iter().map(|p| p.1).collect();
        let reports = peak_scan(&d, None, t, &xs, &PeakConfig::default()).ctx("peak_scan", || format!("T={t}"))?;
        for r in &reports {
            table.comment(format!(
                "peak: X={} class={} amplitude={}",
                r.x,
                class_label(&r.classification),
                r.amplitude
            ));
            markers.push(Marker {
                x: r.x,
                label: class_label(&r.classification),
            });
        }
    }
    write(&table, &a.out, |csv| Plot {
        csv,
        xlabel: axis_name(a.grid.axis),
        series: columns
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i + 1, c.clone()))
            .collect(),
        markers,
        points: false,
    })
}

fn prediction_cells(p: &Prediction) -> Vec<String> {
    [
        p.value.re,
        p.value.im,
        p.oscillatory.re,
        p.oscillatory.im,
        p.geodesic,
        p.continuous.re,
        p.continuous.im,
    ]
    .iter()
    .map(f64::to_string)
    .collect()
}

fn predict(a: &PredictArgs) -> Result<(), CliError> {
    let surface = surface_of(&a.surface)?;
    let pts = grid_points(&a.grid, None)?;
    let mut table = Table::new("predict");
    table.provenance("surface", &surface);
    record_grid(&mut table, &a.grid, &pts);
    let axis = axis_name(a.grid.axis);
    let params = |&(t, x): &(f64, f64)| move || format!("T={t} X={x}");

    let rows: Vec<Vec<String>> = match a.mode {
        PredictMode::Fujii => {
            table.provenance("mode", "fujii");
            let tuples = character_tuples(surface.family, surface.level);
            table.comment(format!(
                "character sum runs over the {} enumerated character tuples",
                tuples.len()
            ));
            table.comment("remainder: X^{iT}S(T)+O(G(T)) omitted");
            pts.par_iter()
                .map(|p| predict_fujii(&surface, &tuples, p.0, p.1).ctx("predict_fujii", params(p)))
                .map(|r| r.map(|v| prediction_cells(&v)))
                .collect::<Result<_, _>>()?
        }
        PredictMode::Generic | PredictMode::Kernels => {
            let t_end = pts.iter().map(|p| p.0).fold(1.0, f64::max);
            let tr = track(&surface, t_end, a.tol, a.compact)?;
            table
                .provenance("tol", a.tol)
                .provenance("compact", a.compact)
                .comment("remainder: O(T/log T) omitted");
            if a.mode == PredictMode::Generic {
                table.provenance("mode", "generic");
                pts.par_iter()
                    .map(|p| predict_generic(&surface, &tr, p.0, p.1).ctx("predict_generic", params(p)))
                    .map(|r| r.map(|v| prediction_cells(&v)))
                    .collect::<Result<_, _>>()?
            } else {
                table.provenance("mode", "kernels");
                pts.par_iter()
                    .map(|p| predict_kernels(&surface, &tr, p.0, p.1).ctx("predict_kernels", params(p)))
                    .map(|r| r.map(|k| vec![k.r.to_string(), k.p.to_string()]))
                    .collect::<Result<_, _>>()?
            }
        }
    };
    let columns: Vec<String> = match a.mode {
        PredictMode::Kernels => vec![axis.into(), "R_pred".into(), "P_pred".into()],
        _ => [
            axis,
            "re_pred",
            "im_pred",
            "re_oscillatory",
            "im_oscillatory",
            "geodesic",
            "re_continuous",
            "im_continuous",
        ]
        .map(String::from)
        .to_vec(),
    };
    table.columns(columns.clone());
    for (p, cells) in pts.iter().zip(rows) {
        let mut row = vec![axis_value(a.grid.axis, *p).to_string()];
        row.extend(cells);
        table.row(row);
    }
    write(&table, &a.out, |csv| Plot {
        csv,
        xlabel: axis,
        series: vec![(2, columns[1].clone()), (3, columns[2].clone())],
        markers: Vec::new(),
        points: false,
    })
}

fn landau(a: &LandauArgs) -> Result<(), CliError> {
    let z = load_zero_file(&a.zeros)?;
    let pts = grid_points(&a.grid, Some(z.t_max()))?;
    let rows: Vec<Complex64> = pts
        .par_iter()
        .map(|&(t, x)| landau_sum(&z, t, x).ctx("landau_sum", || format!("T={t} X={x}")))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new("landau");
    table
        .provenance("zeros", &z.source_label)
        .provenance("entries", z.len())
        .provenance("T_max", z.t_max());
    record_grid(&mut table, &a.grid, &pts);
    table
        .comment("zeros placed at 1/2 + i gamma")
        .columns([axis_name(a.grid.axis), "re_sum", "im_sum", "prediction"]);
    for (p, v) in pts.iter().zip(rows) {
        table.row(vec![
            axis_value(a.grid.axis, *p).to_string(),
            v.re.to_string(),
            v.im.to_string(),
            landau_prediction(p.0, p.1).to_string(),
        ]);
    }
    write(&table, &a.out, |csv| Plot {
        csv,
        xlabel: axis_name(a.grid.axis),
        series: vec![(2, "re sum".into()), (4, "prediction".into())],
        markers: Vec::new(),
        points: false,
    })
}

fn weyl(a: &WeylArgs) -> Result<(), CliError> {
    let surface = surface_of(&a.surface)?;
    let d = load_dataset(a.spectrum.as_deref(), surface)?;
    let grid = a.grid.points();
    let t_end = grid.last().copied().unwrap_or(1.0);
    let tr = track(&d.surface, t_end, a.tol, a.compact)?;
    let (series, fit) = weyl_residual(&d, &tr, &grid).ctx("weyl_residual", || format!("grid={}", a.grid))?;
    let mut table = Table::new("weyl");
    record_dataset(&mut table, &d);
    table
        .provenance("grid", a.grid)
        .provenance("tol", a.tol)
        .provenance("compact", a.compact)
        .comment(format!("c_gamma={} fitted={}", fit.c_gamma, fit.fitted_c))
        .comment(format!("constant={}", fit.constant))
        .comment("w(T) is absorbed into the fitted constant")
        .columns(["T", "residual"]);
    for (t, v) in series.grid.iter().zip(&series.values) {
        table.row(vec![t.to_string(), v.re.to_string()]);
    }
    write(&table, &a.out, |csv| Plot {
        csv,
        xlabel: "T",
        series: vec![(2, "residual".into())],
        markers: Vec::new(),
        points: false,
    })
}

fn class_label(c: &PeakClass) -> String {
    match c {
        PeakClass::GeodesicNorm {
            trace,
            primitive_trace,
            power,
        } => format!("geodesic(t={trace};t0={primitive_trace};k={power})"),
        PeakClass::EvenPrimePower { p, k } => format!("prime_power({p}^{})", 2 * k),
        PeakClass::Unclassified => "unclassified".into(),
    }
}

fn peak_cells(r: &PeakReport) -> Vec<String> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let (class, trace, t0, power, p, k) = match r.classification {
        PeakClass::GeodesicNorm {
            trace,
            primitive_trace,
            power,
        } => (
            "GeodesicNorm",
            Some(trace.to_string()),
            Some(primitive_trace.to_string()),
            Some(power.to_string()),
            None,
            None,
        ),
        PeakClass::EvenPrimePower { p, k } => (
            "EvenPrimePower",
            None,
            None,
            None,
            Some(p.to_string()),
            Some(k.to_string()),
        ),
        PeakClass::Unclassified => ("Unclassified", None, None, None, None, None),
    };
    vec![
        r.x.to_string(),
        r.x_grid.to_string(),
        r.amplitude.to_string(),
        opt(r.predicted_amplitude.map(|v| v.to_string())),
        class.to_string(),
        opt(trace),
        opt(t0),
        opt(power),
        opt(p),
        opt(k),
    ]
}

fn peaks(a: &PeaksArgs) -> Result<(), CliError> {
    let surface = surface_of(&a.surface)?;
    if let Some(x_max) = a.xmax {
        return norm_table(&surface, x_max, &a.out);
    }
    let d = load_dataset(a.spectrum.as_deref(), surface)?;
    let t = a.fixed_t.unwrap_or(d.t_max());
    let xs = a.grid.points();
    let tr = match d.surface.family {
        Family::MoonshinePlus => Some(track(&d.surface, t, a.tol, false)?),
        _ => None,
    };
    let config = PeakConfig {
        sigma: a.sigma,
        ..PeakConfig::default()
    };
    let reports = peak_scan(&d, tr.as_ref(), t, &xs, &config).ctx("peak_scan", || format!("T={t} grid={}", a.grid))?;
    let mut table = Table::new("peaks");
    record_dataset(&mut table, &d);
    table
        .provenance("grid", a.grid)
        .provenance("fixed_T", t)
        .provenance("sigma", a.sigma)
        .columns([
            "X",
            "X_grid",
            "amplitude",
            "predicted_amplitude",
            "class",
            "trace",
            "primitive_trace",
            "power",
            "p",
            "k",
        ]);
    let markers = reports
        .iter()
        .map(|r| Marker {
            x: r.x,
            label: class_label(&r.classification),
        })
        .collect();
    for r in &reports {
        table.row(peak_cells(r));
    }
    write(&table, &a.out, |csv| Plot {
        csv,
        xlabel: "X",
        series: vec![(3, "Delta1 peak".into()), (4, "predicted".into())],
        markers,
        points: true,
    })
}

fn norm_table(surface: &SurfaceDescriptor, x_max: f64, out: &OutputArgs) -> Result<(), CliError> {
    let norms = enumerate_norms(surface, x_max).ctx("enumerate_norms", || format!("surface={surface} xmax={x_max}"))?;
    let mut table = Table::new("peaks");
    table.provenance("surface", surface).provenance("xmax", x_max);
    if surface.family == Family::Gamma0 && surface.level > 1 {
        table.comment("multiplicities for level > 1 are experimental");
    }
    table.columns([
        "trace",
        "norm",
        "primitive_trace",
        "power",
        "multiplicity",
        "log_primitive_norm",
    ]);
    for g in &norms {
        table.row(vec![
            g.trace.to_string(),
            g.norm.to_string(),
            g.primitive_trace.to_string(),
            g.power.to_string(),
            g.multiplicity.to_string(),
            g.log_primitive_norm().to_string(),
        ]);
    }
    write(&table, out, |csv| Plot {
        csv,
        xlabel: "trace",
        series: vec![(2, "norm".into())],
        markers: Vec::new(),
        points: true,
    })
}

fn equidist(a: &EquidistArgs) -> Result<(), CliError> {
    let surface = surface_of(&a.surface)?;
    let d = load_dataset(a.spectrum.as_deref(), surface)?;
    let mut table = Table::new("equidist");
    record_dataset(&mut table, &d);
    table
        .provenance(
            "alpha",
            a.alpha.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
        )
        .provenance("m_max", a.m_max)
        .columns(["alpha", "m", "re_W", "im_W", "abs_W", "discrepancy"]);
    for &alpha in &a.alpha {
        let e = equidistribution(&d, alpha, a.m_max).ctx("equidistribution", || format!("alpha={alpha}"))?;
        for (m, w) in e.weyl_sums.iter().enumerate() {
            table.row(vec![
                alpha.to_string(),
                (m + 1).to_string(),
                w.re.to_string(),
                w.im.to_string(),
                w.norm().to_string(),
                e.discrepancy.to_string(),
            ]);
        }
    }
    write(&table, &a.out, |csv| Plot {
        csv,
        xlabel: "alpha",
        series: vec![(5, "|W_m|".into()), (6, "discrepancy".into())],
        markers: Vec::new(),
        points: true,
    })
}

fn scatter(a: &ScatterArgs) -> Result<(), CliError> {
    let surface = surface_of(&a.surface)?;
    let sign = a.h0.map_or(SignMode::UpToSign, |h0| SignMode::Exact { h0 });
    let params = || format!("surface={surface} tmax={} tol={}", a.tmax, a.tol);
    let model = ScatteringModel::new(&surface, sign).ctx("scattering_model", params)?;
    let tr = track_phase(&model, a.tmax, a.tol).ctx("track_phase", params)?;
    let mut table = Table::new("scatter");
    table
        .provenance("surface", &surface)
        .provenance("tmax", a.tmax)
        .provenance("tol", a.tol)
        .provenance("sign", model.sign())
        .columns(["t", "re_phi", "im_phi", "unwrapped_phase", "M"]);
    for i in 0..tr.grid().len() {
        let phi = tr.phi_values()[i];
        table.row(vec![
            tr.grid()[i].to_string(),
            phi.re.to_string(),
            phi.im.to_string(),
            tr.phase()[i].to_string(),
            tr.m_values()[i].to_string(),
        ]);
    }
    write(&table, &a.out, |csv| Plot {
        csv,
        xlabel: "t",
        series: vec![(5, "M".into())],
        markers: Vec::new(),
        points: false,
    })
}
