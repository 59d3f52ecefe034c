use std::fmt;
use std::str::FromStr;

/// A uniform grid `start:stop:step`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    /// Points `start + i step`; computed by multiplication so that no
    /// rounding accumulates along the grid.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, h] = parts.as_slice() else {
            return Err(format!("grid {s:?} must have the form start:stop:step"));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("grid {s:?}: {v:?}: {e}"));
        let (start, stop, step) = (num(a)?, num(b)?, num(h)?);
        if ![start, stop, step].iter().all(|v| v.is_finite()) {
            return Err(format!("grid {s:?} must be finite"));
        }
        if !(step > 0.0) {
            return Err(format!("grid {s:?}: step must be positive"));
        }
        if stop < start {
            return Err(format!("grid {s:?}: stop is below start"));
        }
        if (stop - start) / step > 1e7 {
            return Err(format!("grid {s:?} has more than 10^7 points"));
        }
        Ok(Self { start, stop, step })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}
