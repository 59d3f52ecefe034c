//! Surface descriptors and ingestion of eigenvalue and zero lists.
//!
//! Data files are UTF-8 text with one decimal number per line. Blank lines
//! and lines starting with `#` are ignored, except for the directive
//! `# T_max=<decimal>` which lowers the completeness height below the last
//! listed value.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{divisors, euler_phi, factorize, is_squarefree};

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("load_spectrum: cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("load_spectrum: line {line}: cannot parse {content:?} as a number")]
    Parse { line: usize, content: String },
    #[error("load_spectrum: line {line}: value {value} is smaller than the previous entry")]
    Order { line: usize, value: f64 },
    #[error("load_spectrum: line {line}: value {value} is not a positive finite number")]
    Domain { line: usize, value: f64 },
    #[error("load_spectrum: line {line}: {msg}")]
    Directive { line: usize, msg: String },
    #[error("load_spectrum: dataset contains no values")]
    Empty,
    #[error("{op}: height {t} exceeds the completeness height T_max={t_max}")]
    Completeness { op: &'static str, t: f64, t_max: f64 },
    #[error("volume_of: {family} level {level}: {msg}")]
    UnsupportedSurface { family: Family, level: u64, msg: String },
    #[error("surface: {0}")]
    InvalidSurface(String),
}

/// The kinds of surfaces the crate knows formulas for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `PSL_2(Z)`.
    Modular,
    Gamma0,
    Gamma1,
    /// The principal congruence subgroup `Gamma(q)`.
    GammaPrincipal,
    /// The moonshine group `Gamma_0(q)^+` for squarefree `q`.
    MoonshinePlus,
    /// Any other cofinite group; only data-driven operations apply.
    Custom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Modular => "modular",
            Family::Gamma0 => "gamma0",
            Family::Gamma1 => "gamma1",
            Family::GammaPrincipal => "gamma",
            Family::MoonshinePlus => "moonshine",
            Family::Custom => "custom",
        }
    }

    pub fn is_congruence(self) -> bool {
        matches!(self, Family::Gamma0 | Family::Gamma1 | Family::GammaPrincipal)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SpectraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "modular" | "psl2z" => Ok(Family::Modular),
            "gamma0" => Ok(Family::Gamma0),
            "gamma1" => Ok(Family::Gamma1),
            "gamma" | "principal" => Ok(Family::GammaPrincipal),
            "moonshine" | "moonshineplus" | "gamma0plus" => Ok(Family::MoonshinePlus),
            "custom" => Ok(Family::Custom),
            other => Err(SpectraError::InvalidSurface(format!(
                "unknown family {other:?} (expected modular, gamma0, gamma1, gamma, moonshine or custom)"
            ))),
        }
    }
}

/// Volume of `Gamma \ H` for the families with a closed form.
pub fn volume_of(family: Family, q: u64) -> Result<f64, SpectraError> {
    let unsupported = |msg: &str| SpectraError::UnsupportedSurface {
        family,
        level: q,
        msg: msg.to_string(),
    };
    if q == 0 {
        return Err(unsupported("level must be at least 1"));
    }
    let primes: Vec<f64> = factorize(q).into_iter().map(|(p, _)| p as f64).collect();
    let qf = q as f64;
    let v = match family {
        Family::Modular => {
            if q != 1 {
                return Err(unsupported("the modular group has level 1"));
            }
            PI / 3.0
        }
        Family::Gamma0 => PI / 3.0 * qf * primes.iter().map(|p| 1.0 + 1.0 / p).product::<f64>(),
        Family::Gamma1 => PI / 3.0 * qf * qf * primes.iter().map(|p| 1.0 - 1.0 / (p * p)).product::<f64>(),
        Family::GammaPrincipal => PI / 3.0 * qf.powi(3) * primes.iter().map(|p| 1.0 - 1.0 / (p * p)).product::<f64>(),
        Family::MoonshinePlus => match q {
            5 | 6 => PI,
            _ => {
                return Err(unsupported(
                    "no tabulated volume for this moonshine level; supply --volume explicitly",
                ))
            }
        },
        Family::Custom => return Err(unsupported("custom surfaces need an explicit volume")),
    };
    Ok(v)
}

/// Index `[PSL_2(Z) : Gamma_0(q)] = q prod_{p | q} (1 + 1/p)`, exactly.
pub fn gamma0_index(q: u64) -> u64 {
    factorize(q).iter().fold(q, |acc, &(p, _)| acc / p * (p + 1))
}

/// Number of inequivalent cusps.
///
/// For `Gamma_0(q)` this is `sum_{d | q} phi(gcd(d, q/d))`. For `Gamma_1(q)`
/// and `Gamma(q)` it is the number of character tuples in the scattering
/// determinant, which the determinant formula identifies with `h`.
pub fn cusp_count(family: Family, q: u64) -> Result<u64, SpectraError> {
    match family {
        Family::Modular | Family::MoonshinePlus => Ok(1),
        Family::Gamma0 => Ok(divisors(q).into_iter().map(|d| euler_phi(d.gcd(&(q / d)))).sum()),
        Family::Gamma1 | Family::GammaPrincipal => Ok(crate::scattering::character_tuples(family, q).len() as u64),
        Family::Custom => Err(SpectraError::UnsupportedSurface {
            family,
            level: q,
            msg: "custom surfaces need an explicit cusp count".into(),
        }),
    }
}

/// Group family, level and the geometric constants that enter the Weyl law.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceDescriptor {
    pub family: Family,
    pub level: u64,
    pub volume: f64,
    pub cusps: u64,
    /// Linear Weyl-law coefficient, fitted from data when `None`.
    pub c_gamma: Option<f64>,
}

impl SurfaceDescriptor {
    /// Descriptor with volume and cusp count from the closed forms.
    pub fn new(family: Family, level: u64) -> Result<Self, SpectraError> {
        let volume = volume_of(family, level)?;
        Self::with_volume(family, level, volume, None)
    }

    /// Descriptor with an explicit volume and optional cusp count.
    pub fn with_volume(family: Family, level: u64, volume: f64, cusps: Option<u64>) -> Result<Self, SpectraError> {
        let cusps = match cusps {
            Some(h) => h,
            None => cusp_count(family, level)?,
        };
        let s = Self {
            family,
            level,
            volume,
            cusps,
            c_gamma: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn modular() -> Self {
        Self::new(Family::Modular, 1).expect("modular surface is always valid")
    }

    fn validate(&self) -> Result<(), SpectraError> {
        let bad = |m: String| Err(SpectraError::InvalidSurface(m));
        if self.level == 0 {
            return bad("level must be at least 1".into());
        }
        if !(self.volume > 0.0 && self.volume.is_finite()) {
            return bad(format!("volume {} must be positive", self.volume));
        }
        if self.cusps == 0 {
            return bad("cusp count must be at least 1".into());
        }
        if self.family == Family::MoonshinePlus {
            if !is_squarefree(self.level) {
                return bad(format!("moonshine level {} is not squarefree", self.level));
            }
            if self.cusps != 1 {
                return bad("moonshine surfaces have exactly one cusp".into());
            }
        }
        if self.family == Family::Modular && self.level != 1 {
            return bad("the modular group has level 1".into());
        }
        if matches!(
            self.family,
            Family::Gamma0 | Family::Gamma1 | Family::GammaPrincipal | Family::Modular
        ) {
            let expect = volume_of(self.family, self.level)?;
            if (self.volume - expect).abs() > 1e-12 * expect {
                return bad(format!(
                    "volume {} differs from the index formula value {expect}",
                    self.volume
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SurfaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{} (volume={}, cusps={})",
            self.family, self.level, self.volume, self.cusps
        )
    }
}

struct ParsedList {
    values: Vec<f64>,
    t_max: Option<(usize, f64)>,
}

fn parse_list(text: &str) -> Result<ParsedList, SpectraError> {
    let mut values = Vec::new();
    let mut t_max = None;
    let mut prev = f64::NEG_INFINITY;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(comment) = s.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("T_max=") {
                let v: f64 = v.trim().parse().map_err(|_| SpectraError::Directive {
                    line,
                    msg: format!("cannot parse T_max value {:?}", v.trim()),
                })?;
                if !(v > 0.0 && v.is_finite()) {
                    return Err(SpectraError::Directive {
                        line,
                        msg: format!("T_max={v} must be positive"),
                    });
                }
                t_max = Some((line, v));
            }
            continue;
        }
        let v: f64 = s.parse().map_err(|_| SpectraError::Parse {
            line,
            content: s.to_string(),
        })?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(SpectraError::Domain { line, value: v });
        }
        if v < prev {
            return Err(SpectraError::Order { line, value: v });
        }
        prev = v;
        values.push(v);
    }
    Ok(ParsedList { values, t_max })
}

/// Applies the `T_max` directive: it may lower the height (entries above it
/// are dropped), never raise it above the last entry.
fn resolve_t_max(values: &mut Vec<f64>, directive: Option<(usize, f64)>) -> Result<f64, SpectraError> {
    let last = *values.last().ok_or(SpectraError::Empty)?;
    match directive {
        None => Ok(last),
        Some((line, v)) if v > last => Err(SpectraError::Directive {
            line,
            msg: format!("T_max={v} exceeds the last listed value {last}; it may only lower the height"),
        }),
        Some((_, v)) => {
            values.truncate(values.partition_point(|&t| t <= v));
            Ok(v)
        }
    }
}

fn read(path: &Path) -> Result<String, SpectraError> {
    fs::read_to_string(path).map_err(|source| SpectraError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn check_sorted_positive(values: &[f64]) -> Result<(), SpectraError> {
    let mut prev = f64::NEG_INFINITY;
    for (i, &v) in values.iter().enumerate() {
        if !(v > 0.0 && v.is_finite()) {
            return Err(SpectraError::Domain { line: i + 1, value: v });
        }
        if v < prev {
            return Err(SpectraError::Order { line: i + 1, value: v });
        }
        prev = v;
    }
    Ok(())
}

fn write_list(values: &[f64], t_max: f64, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    if values.last().is_none_or(|&l| l != t_max) {
        out.push_str(&format!("# T_max={t_max}\n"));
    }
    for v in values {
        // Display prints the shortest representation that parses back to
        // the same double.
        out.push_str(&format!("{v}\n"));
    }
    out
}

/// Spectral parameters `t_j` of a surface, complete up to `t_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDataset {
    pub surface: SurfaceDescriptor,
    t_values: Vec<f64>,
    t_max: f64,
    pub source_label: String,
}

impl SpectrumDataset {
    pub fn new(
        surface: SurfaceDescriptor,
        t_values: Vec<f64>,
        t_max: f64,
        source_label: impl Into<String>,
    ) -> Result<Self, SpectraError> {
        check_sorted_positive(&t_values)?;
        if !(t_max > 0.0) {
            return Err(SpectraError::Directive {
                line: 0,
                msg: format!("T_max={t_max} must be positive"),
            });
        }
        if let Some(&last) = t_values.last() {
            if last > t_max {
                return Err(SpectraError::Completeness {
                    op: "SpectrumDataset::new",
                    t: last,
                    t_max,
                });
            }
        }
        Ok(Self {
            surface,
            t_values,
            t_max,
            source_label: source_label.into(),
        })
    }

    pub fn parse(text: &str, surface: SurfaceDescriptor, label: impl Into<String>) -> Result<Self, SpectraError> {
        let ParsedList { mut values, t_max } = parse_list(text)?;
        let t_max = resolve_t_max(&mut values, t_max)?;
        Self::new(surface, values, t_max, label)
    }

    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.t_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_values.is_empty()
    }

    /// The entries `t_j <= t`, checking that `t` is within the complete range.
    pub fn window(&self, op: &'static str, t: f64) -> Result<&[f64], SpectraError> {
        if t > self.t_max {
            return Err(SpectraError::Completeness {
                op,
                t,
                t_max: self.t_max,
            });
        }
        Ok(&self.t_values[..self.t_values.partition_point(|&x| x <= t)])
    }

    pub fn to_text(&self) -> String {
        write_list(&self.t_values, self.t_max, &[format!("source: {}", self.source_label)])
    }

    pub fn save(&self, path: &Path) -> Result<(), SpectraError> {
        fs::write(path, self.to_text()).map_err(|source| SpectraError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Reads an eigenvalue list. The source label is the file path.
pub fn load_spectrum(path: &Path, surface: SurfaceDescriptor) -> Result<SpectrumDataset, SpectraError> {
    let text = read(path)?;
    SpectrumDataset::parse(&text, surface, path.display().to_string())
}

/// `N(T) = #{j : t_j <= T}`, counted with multiplicity.
pub fn counting_function(d: &SpectrumDataset, t: f64) -> Result<usize, SpectraError> {
    Ok(d.window("counting_function", t)?.len())
}

/// Ordinates of nontrivial Riemann zeros, complete up to `t_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroDataset {
    gamma_values: Vec<f64>,
    t_max: f64,
    pub source_label: String,
}

impl ZeroDataset {
    pub fn new(gamma_values: Vec<f64>, t_max: f64, source_label: impl Into<String>) -> Result<Self, SpectraError> {
        check_sorted_positive(&gamma_values)?;
        if let Some(&last) = gamma_values.last() {
            if last > t_max {
                return Err(SpectraError::Completeness {
                    op: "ZeroDataset::new",
                    t: last,
                    t_max,
                });
            }
        }
        Ok(Self {
            gamma_values,
            t_max,
            source_label: source_label.into(),
        })
    }

    pub fn parse(text: &str, label: impl Into<String>) -> Result<Self, SpectraError> {
        let ParsedList { mut values, t_max } = parse_list(text)?;
        let t_max = resolve_t_max(&mut values, t_max)?;
        Self::new(values, t_max, label)
    }

    pub fn gamma_values(&self) -> &[f64] {
        &self.gamma_values
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.gamma_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma_values.is_empty()
    }

    pub fn window(&self, op: &'static str, t: f64) -> Result<&[f64], SpectraError> {
        if t > self.t_max {
            return Err(SpectraError::Completeness {
                op,
                t,
                t_max: self.t_max,
            });
        }
        Ok(&self.gamma_values[..self.gamma_values.partition_point(|&x| x <= t)])
    }

    pub fn to_text(&self) -> String {
        write_list(
            &self.gamma_values,
            self.t_max,
            &[format!("source: {}", self.source_label)],
        )
    }
}

pub fn load_zeros(path: &Path) -> Result<ZeroDataset, SpectraError> {
    let text = read(path)?;
    ZeroDataset::parse(&text, path.display().to_string())
}
