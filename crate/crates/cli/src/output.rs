use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// A CSV table with a provenance block and free comment lines.
#[derive(Debug, Default)]
pub struct Table {
    provenance: Vec<String>,
    comments: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(command: &str) -> Self {
        Self {
            provenance: vec![
                format!("tool=geospectra {}", env!("CARGO_PKG_VERSION")),
                format!("command={command}"),
            ],
            ..Self::default()
        }
    }

    /// Records a configuration value or dataset label.
    pub fn provenance(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.provenance.push(format!("{key}={value}"));
        self
    }

    pub fn comment(&mut self, line: impl Into<String>) -> &mut Self {
        self.comments.push(line.into());
        self
    }

    pub fn columns<I, S>(&mut self, names: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.columns = names.into_iter().map(Into::into).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut out = String::from("# provenance:\n");
        for p in &self.provenance {
            let _ = writeln!(out, "#   {p}");
        }
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Write {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// A vertical marker at `x` with a text label.
#[derive(Debug, Clone)]
pub struct Marker {
    pub x: f64,
    pub label: String,
}

/// Gnuplot script drawing selected CSV columns against the first.
#[derive(Debug)]
pub struct Plot<'a> {
    pub csv: &'a Path,
    pub xlabel: &'a str,
    /// `(1-based column, title)`; the first series is solid, the rest dashed.
    pub series: Vec<(usize, String)>,
    pub markers: Vec<Marker>,
    pub points: bool,
}

impl Plot<'_> {
    pub fn script(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "set datafile separator ','");
        let _ = writeln!(s, "set datafile commentschars '#'");
        let _ = writeln!(s, "set key top right");
        let _ = writeln!(s, "set xlabel '{}'", self.xlabel);
        let _ = writeln!(s, "set xzeroaxis");
        for (i, m) in self.markers.iter().enumerate() {
            let _ = writeln!(
                s,
                "set arrow {} from {}, graph 0 to {}, graph 1 nohead dashtype 3 lc rgb 'gray40'",
                i + 1,
                m.x,
                m.x
            );
            let _ = writeln!(
                s,
                "set label {} '{}' at {}, graph 0.97 rotate by 90 right font ',8'",
                i + 1,
                m.label,
                m.x
            );
        }
        let file = self.csv.display().to_string().replace('\'', "''");
        let clauses: Vec<String> = self
            .series
            .iter()
            .enumerate()
            .map(|(i, (col, title))| {
                let src = if i == 0 { format!("'{file}'") } else { "''".to_string() };
                let style = if self.points {
                    "with points pt 7 ps 0.6".to_string()
                } else if i == 0 {
                    "with lines lw 1.5".to_string()
                } else {
                    format!("with lines lw 1 dashtype {}", i + 1)
                };
                format!("{src} using 1:{col} {style} title '{title}'")
            })
            .collect();
        let _ = writeln!(s, "plot {}", clauses.join(", \\\n     "));
        s
    }
}
