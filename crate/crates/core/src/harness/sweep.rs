use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{AxisName, SweepConfig};
use crate::error::{Error, Result};
use crate::quantifiers::{evaluate_all, EvaluateOptions, QuantifierReport, Quantity};

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub index: Vec<usize>,
    pub axis_values: Vec<f64>,
    pub report: QuantifierReport,
    pub wall_ms: f64,
}

/// A grid point whose evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointFailure {
    pub index: Vec<usize>,
    pub axis_values: Vec<f64>,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub axes: Vec<AxisName>,
    pub shape: Vec<usize>,
    pub quantities: Vec<Quantity>,
    pub include_gap: bool,
    pub record_wall_time: bool,
    /// Successful points in lexicographic index order.
    pub rows: Vec<SweepRow>,
    pub failures: Vec<PointFailure>,
    pub config_echo: serde_json::Value,
}

impl SweepResult {
    pub fn row_at(&self, index: &[usize]) -> Option<&SweepRow> {
        self.rows
            .binary_search_by(|r| r.index.as_slice().cmp(index))
            .ok()
            .map(|i| &self.rows[i])
    }
}

fn options(config: &SweepConfig) -> EvaluateOptions {
    EvaluateOptions {
        quantities: config.quantities(),
        include_gap: config.sweep.include_gap,
        gap_levels: config.bath.levels,
        route: config.bath.route,
        policy: config.sweep.cutoff,
        prune_tol: config.sweep.prune_tol,
        discord_side: config.sweep.discord_side,
    }
}

/// Grid index, axis values and the report with its wall time in ms.
type Evaluated = (
    Vec<usize>,
    Vec<f64>,
    std::result::Result<(QuantifierReport, f64), String>,
);

/// Evaluate every grid point; a failing point is recorded and skipped.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let opts = options(config);
    let values = config.axis_values();
    let grid = config.grid_indices();

    let eval = |idx: &Vec<usize>| -> Evaluated {
        let axis_values: Vec<f64> = idx.iter().zip(&values).map(|(&i, v)| v[i]).collect();
        let (params, t) = config.point(idx);
        let start = Instant::now();
        let out = config
            .bath_for(&params, t)
            .and_then(|bath| evaluate_all(&params, &bath, t, &opts))
            .map(|r| (r, start.elapsed().as_secs_f64() * 1e3))
            .map_err(|e| e.to_string());
        (idx.clone(), axis_values, out)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.sweep.workers)
        .build()
        .map_err(|e| {
            Error::Config(format!(
                "cannot start {} workers: {e}",
                config.sweep.workers
            ))
        })?;
    let results: Vec<_> = pool.install(|| grid.par_iter().map(eval).collect());

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (index, axis_values, out) in results {
        match out {
            Ok((report, wall_ms)) => rows.push(SweepRow {
                index,
                axis_values,
                report,
                wall_ms,
            }),
            Err(error) => failures.push(PointFailure {
                index,
                axis_values,
                error,
            }),
        }
    }
    Ok(SweepResult {
        axes: config.sweep.axes.iter().map(|a| a.name).collect(),
        shape: config.sweep.axes.iter().map(|a| a.points).collect(),
        quantities: opts.quantities,
        include_gap: opts.include_gap,
        record_wall_time: config.output.record_wall_time,
        rows,
        failures,
        config_echo: config.echo(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::Axis;

    #[test]
    fn small_grid_rows_in_order() {
        let mut c = SweepConfig::default();
        c.sweep.axes = vec![
            Axis::linear(AxisName::G, 0.0, 1.0, 2),
            Axis::linear(AxisName::T, 0.1, 1.0, 2),
        ];
        c.sweep.quantities = vec![Quantity::Concurrence, Quantity::MutualInfo, Quantity::P0];
        c.sweep.workers = 3;
        let r = run_sweep(&c).unwrap();
        assert!(r.failures.is_empty());
        let idx: Vec<_> = r.rows.iter().map(|r| r.index.clone()).collect();
        assert_eq!(idx, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        for row in &r.rows[..2] {
            assert!(row.report.concurrence.unwrap().abs() < 1e-9);
            assert!(row.report.mutual_info.unwrap().abs() < 1e-9);
        }
        assert!(r.rows[2].report.mutual_info.unwrap() > 1e-3);
        assert!(r.row_at(&[1, 1]).is_some());
    }

    #[test]
    fn failing_point_is_isolated() {
        let mut c = SweepConfig::default();
        c.sweep.axes = vec![Axis::linear(AxisName::G, 0.0, 30.0, 2)];
        c.sweep.quantities = vec![Quantity::P0];
        c.sweep.cutoff.hard_max = 64;
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].index, vec![1]);
        assert!(
            r.failures[0].error.contains("g1=30"),
            "{}",
            r.failures[0].error
        );
    }
}
