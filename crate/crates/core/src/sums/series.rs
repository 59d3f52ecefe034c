use std::fmt::Write as _;

use num_complex::Complex64;

/// What a [`SumSeries`] contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumKind {
    S,
    R,
    P,
    Theta1,
    Theta2,
    Delta1,
    Delta2,
    Landau,
    Prediction,
    Residual,
    MContribution,
}

impl SumKind {
    pub fn name(self) -> &'static str {
        match self {
            SumKind::S => "S",
            SumKind::R => "R",
            SumKind::P => "P",
            SumKind::Theta1 => "Theta1",
            SumKind::Theta2 => "Theta2",
            SumKind::Delta1 => "Delta1",
            SumKind::Delta2 => "Delta2",
            SumKind::Landau => "Landau",
            SumKind::Prediction => "Prediction",
            SumKind::Residual => "Residual",
            SumKind::MContribution => "M_contribution",
        }
    }

    /// Kinds whose values are real.
    pub fn is_real(self) -> bool {
        !matches!(
            self,
            SumKind::S | SumKind::Landau | SumKind::Prediction | SumKind::MContribution
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    T,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "X",
            Axis::T => "T",
        }
    }
}

/// Values of a sum, kernel or prediction on a grid of `X` or `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct SumSeries {
    pub kind: SumKind,
    pub axis: Axis,
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub surface: Option<String>,
    /// The parameter held fixed (`T` for an `X` axis and vice versa).
    pub fixed: Option<f64>,
    /// Free-form key/value annotations, e.g. fitted constants.
    pub metadata: Vec<(String, String)>,
}

impl SumSeries {
    pub fn new(kind: SumKind, axis: Axis, grid: Vec<f64>, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(grid.len(), values.len());
        Self {
            kind,
            axis,
            grid,
            values,
            surface: None,
            fixed: None,
            metadata: Vec::new(),
        }
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Column names for [`SumSeries::write_rows`].
    pub fn header(&self) -> String {
        let name = self.kind.name();
        if self.kind.is_real() {
            format!("{},{}", self.axis.name(), name)
        } else {
            format!("{},re_{name},im_{name}", self.axis.name())
        }
    }

    /// Metadata lines (without comment markers).
    pub fn metadata_lines(&self) -> Vec<String> {
        let mut out = vec![format!("kind={} axis={}", self.kind.name(), self.axis.name())];
        if let Some(s) = &self.surface {
            out.push(format!("surface={s}"));
        }
        if let Some(f) = self.fixed {
            let other = match self.axis {
                Axis::X => "T",
                Axis::T => "X",
            };
            out.push(format!("fixed {other}={f}"));
        }
        for (k, v) in &self.metadata {
            out.push(format!("{k}={v}"));
        }
        out
    }

    /// CSV data rows, one per grid point, using shortest round-trip formatting.
    pub fn write_rows(&self, out: &mut String) {
        for (x, v) in self.grid.iter().zip(&self.values) {
            if self.kind.is_real() {
                let _ = writeln!(out, "{x},{}", v.re);
            } else {
                let _ = writeln!(out, "{x},{},{}", v.re, v.im);
            }
        }
    }

    /// Complete CSV: `# ` metadata lines, header, rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in self.metadata_lines() {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{}", self.header());
        self.write_rows(&mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut s = SumSeries::new(
            SumKind::Delta1,
            Axis::X,
            vec![3.0, 3.5],
            vec![Complex64::new(0.25, 0.0), Complex64::new(-1.5, 0.0)],
        );
        s.fixed = Some(125.0);
        let csv = s.to_csv();
        assert!(csv.contains("X,Delta1\n3,0.25\n3.5,-1.5\n"));
        assert!(csv.contains("# fixed T=125\n"));
        let c = SumSeries::new(SumKind::S, Axis::T, vec![1.0], vec![Complex64::new(1.0, 2.0)]);
        assert!(c.to_csv().ends_with("T,re_S,im_S\n1,1,2\n"));
    }
}
