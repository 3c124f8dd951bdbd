use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::config::SweepConfig;
use super::sweep::{SweepResult, SweepRow};
use crate::error::{Error, Result};
use crate::quantifiers::Quantity;

/// A column that can be rendered as a heatmap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Quantity(Quantity),
    GapRatio,
    NFockUsed,
    MUsed,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Quantity(q) => q.name(),
            Field::GapRatio => "gap_ratio",
            Field::NFockUsed => "n_fock_used",
            Field::MUsed => "M_used",
        }
    }

    fn value(self, row: &SweepRow) -> Option<f64> {
        match self {
            Field::Quantity(q) => row.report.get(q),
            Field::GapRatio => row.report.gap_ratio,
            Field::NFockUsed => Some(row.report.n_fock_used as f64),
            Field::MUsed => Some(row.report.m_used as f64),
        }
    }
}

fn parse_field(name: &str, quantities: &[Quantity], include_gap: bool) -> Result<Field> {
    let f = match name {
        "gap_ratio" if include_gap => Field::GapRatio,
        "n_fock_used" => Field::NFockUsed,
        "M_used" | "m_used" => Field::MUsed,
        other => {
            let q: Quantity = other.parse()?;
            if !quantities.contains(&q) {
                return Err(Error::Config(format!(
                    "field '{other}' is not among the requested quantities"
                )));
            }
            Field::Quantity(q)
        }
    };
    Ok(f)
}

pub(crate) fn field_getter(name: &str, config: &SweepConfig) -> Result<Field> {
    parse_field(name, &config.quantities(), config.sweep.include_gap)
}

fn fmt_float(v: f64) -> String {
    format!("{v:?}")
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

/// Column names in output order.
pub fn csv_header(result: &SweepResult) -> Vec<String> {
    let mut h: Vec<String> = result.axes.iter().map(|a| a.as_str().to_string()).collect();
    h.extend(result.quantities.iter().map(|q| q.name().to_string()));
    if result.include_gap {
        h.push("gap_ratio".into());
    }
    h.extend(["n_fock_used", "M_used", "wall_ms"].map(String::from));
    h
}

/// Write the result table as CSV with LF line endings.
pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(csv_header(result))?;
    for row in &result.rows {
        let mut rec: Vec<String> = row.axis_values.iter().map(|&v| fmt_float(v)).collect();
        rec.extend(result.quantities.iter().map(|&q| opt(row.report.get(q))));
        if result.include_gap {
            rec.push(opt(row.report.gap_ratio));
        }
        rec.push(row.report.n_fock_used.to_string());
        rec.push(row.report.m_used.to_string());
        rec.push(if result.record_wall_time {
            fmt_float(row.wall_ms)
        } else {
            String::new()
        });
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_csv(result, BufWriter::new(File::create(path)?))
}

/// 8-bit grayscale image of one field plus its normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<u8>,
    /// Finite range; `None` when no value is finite.
    pub range: Option<(f64, f64)>,
}

impl Heatmap {
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn sidecar(&self, field: &str) -> String {
        match self.range {
            Some((lo, hi)) if lo == hi => format!(
                "field={field}\nmin={}\nmax={}\nnormalization=degenerate range, all finite values at 255\n",
                fmt_float(lo),
                fmt_float(hi)
            ),
            Some((lo, hi)) => format!(
                "field={field}\nmin={}\nmax={}\nnormalization=linear, pixel = round(255 * (v - min) / (max - min)); undefined = 0\n",
                fmt_float(lo),
                fmt_float(hi)
            ),
            None => format!("field={field}\nmin=\nmax=\nnormalization=no finite values; all pixels 0\n"),
        }
    }
}

/// Render `field` over a two-axis sweep: first axis left to right, second
/// axis from its largest value at the top row down to its smallest.
pub fn heatmap(result: &SweepResult, field: &str) -> Result<Heatmap> {
    if result.shape.len() != 2 {
        return Err(Error::Config(format!(
            "heatmap needs two axes, sweep has {}",
            result.shape.len()
        )));
    }
    let f = parse_field(field, &result.quantities, result.include_gap)?;
    let (w, h) = (result.shape[0], result.shape[1]);
    let value = |i: usize, j: usize| -> f64 {
        result
            .row_at(&[i, j])
            .and_then(|r| f.value(r))
            .unwrap_or(f64::NAN)
    };
    let finite: Vec<f64> = result
        .rows
        .iter()
        .filter_map(|r| f.value(r))
        .filter(|v| v.is_finite())
        .collect();
    let range = if finite.is_empty() {
        None
    } else {
        Some(
            finite
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                }),
        )
    };
    let mut pixels = Vec::with_capacity(w * h);
    for row in 0..h {
        let j = h - 1 - row;
        for i in 0..w {
            let v = value(i, j);
            let p = match range {
                Some(_) if !v.is_finite() => 0,
                Some((lo, hi)) if lo == hi => 255,
                Some((lo, hi)) => (255.0 * (v - lo) / (hi - lo)).round().clamp(0.0, 255.0) as u8,
                None => 0,
            };
            pixels.push(p);
        }
    }
    Ok(Heatmap {
        width: w,
        height: h,
        pixels,
        range,
    })
}

/// Write `<path>` and the sidecar `<path without extension>.range.txt`.
pub fn emit_heatmap(result: &SweepResult, field: &str, path: &Path) -> Result<PathBuf> {
    let hm = heatmap(result, field)?;
    fs::write(path, hm.to_pgm())?;
    let side = sidecar_path(path);
    fs::write(&side, hm.sidecar(field))?;
    Ok(side)
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.range.txt"))
}

/// Files written by [`write_outputs`].
#[derive(Debug, Clone)]
pub struct OutputFiles {
    pub csv: PathBuf,
    pub config: PathBuf,
    pub failures: PathBuf,
    pub heatmaps: Vec<PathBuf>,
}

/// Write the CSV, the resolved config, the failure list and any requested
/// heatmaps into `dir`.
pub fn write_outputs(
    result: &SweepResult,
    config: &SweepConfig,
    dir: &Path,
) -> Result<OutputFiles> {
    fs::create_dir_all(dir)?;
    let csv = dir.join(&config.output.csv);
    emit_csv(result, &csv)?;
    let cfg = dir.join("config.json");
    fs::write(
        &cfg,
        serde_json::to_string_pretty(&result.config_echo)? + "\n",
    )?;
    let failures = dir.join("failures.json");
    fs::write(
        &failures,
        serde_json::to_string_pretty(&result.failures)? + "\n",
    )?;
    let mut heatmaps = Vec::new();
    for name in &config.output.heatmaps {
        let p = dir.join(format!("{name}.pgm"));
        emit_heatmap(result, name, &p)?;
        heatmaps.push(p);
    }
    Ok(OutputFiles {
        csv,
        config: cfg,
        failures,
        heatmaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{Axis, AxisName};
    use crate::harness::run_sweep;

    fn sweep(quantities: Vec<Quantity>, nx: usize, ny: usize) -> SweepResult {
        let mut c = SweepConfig::default();
        c.sweep.axes = vec![
            Axis::linear(AxisName::G, 0.0, 0.5, nx),
            Axis::linear(AxisName::T, 0.2, 1.0, ny),
        ];
        c.sweep.quantities = quantities;
        run_sweep(&c).unwrap()
    }

    #[test]
    fn empty_quantities_give_diagnostic_columns() {
        let r = sweep(vec![], 2, 2);
        let mut buf = Vec::new();
        write_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "g,T,n_fock_used,M_used,wall_ms");
        assert!(!text.contains('\r'));
        assert!(lines[1].ends_with(','));
    }

    #[test]
    fn heatmap_shape_and_orientation() {
        let r = sweep(vec![Quantity::P0], 3, 2);
        let hm = heatmap(&r, "p0").unwrap();
        assert_eq!((hm.width, hm.height), (3, 2));
        let pgm = hm.to_pgm();
        assert!(pgm.starts_with(b"P5\n3 2\n255\n"));
        assert_eq!(pgm.len(), "P5\n3 2\n255\n".len() + 6);
        // p0 falls with temperature: the top row (highest T) is darker.
        assert!(hm.pixels[0] < hm.pixels[3]);
        assert!(hm.pixels.contains(&0) && hm.pixels.contains(&255));
        assert!(heatmap(&r, "lqu").is_err());
    }

    #[test]
    fn constant_field_is_full_scale() {
        // Decoupled qubits: the starting cutoff is already converged.
        let mut c = SweepConfig::default();
        c.sweep.axes = vec![
            Axis::linear(AxisName::Delta1, 1.0, 2.0, 2),
            Axis::linear(AxisName::Delta2, 1.0, 2.0, 2),
        ];
        c.sweep.quantities = vec![Quantity::P0];
        let r = run_sweep(&c).unwrap();
        let hm = heatmap(&r, "n_fock_used").unwrap();
        assert_eq!(hm.pixels, vec![255; 4]);
        assert!(hm.sidecar("n_fock_used").contains("degenerate"));
    }

    #[test]
    fn one_axis_heatmap_is_rejected() {
        let mut c = SweepConfig::default();
        c.sweep.axes = vec![Axis::linear(AxisName::G, 0.0, 0.5, 2)];
        c.sweep.quantities = vec![Quantity::P0];
        let r = run_sweep(&c).unwrap();
        assert!(heatmap(&r, "p0").is_err());
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(
            sidecar_path(Path::new("/x/g2.pgm")),
            PathBuf::from("/x/g2.range.txt")
        );
    }
}
