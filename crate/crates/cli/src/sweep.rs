//! Cartesian parameter sweeps with order-preserving parallel evaluation.

use std::str::FromStr;

use rayon::prelude::*;

use crate::commands::Computation;
use crate::error::{CliError, CliResult};
use crate::params::{kind_of, Kind, Params};
use crate::table::Row;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub log: bool,
}

impl FromStr for Axis {
    type Err = CliError;

    /// `name:min:max:steps[:log|linear]`.
    fn from_str(s: &str) -> CliResult<Axis> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(CliError::Config(format!("axis '{s}': expected name:min:max:steps[:log|linear]")));
        }
        let name = parts[0].trim_start_matches("--").to_string();
        if kind_of(&name) != Some(Kind::Number) {
            return Err(CliError::Config(format!("axis '{s}': '{name}' is not a numeric parameter")));
        }
        let num = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| CliError::Config(format!("axis '{s}': '{t}' is not a number")))
        };
        let (min, max) = (num(parts[1])?, num(parts[2])?);
        let steps = parts[3]
            .parse::<usize>()
            .map_err(|_| CliError::Config(format!("axis '{s}': '{}' is not a step count", parts[3])))?;
        if steps == 0 {
            return Err(CliError::Config(format!("axis '{s}': steps must be >= 1")));
        }
        let log = match parts.get(4).copied() {
            None | Some("linear") => false,
            Some("log") => true,
            Some(other) => return Err(CliError::Config(format!("axis '{s}': unknown spacing '{other}'"))),
        };
        if !(min.is_finite() && max.is_finite()) || (log && !(min > 0.0 && max > 0.0)) {
            return Err(CliError::Validation(format!("axis '{s}': bounds must be finite (and positive for log spacing)")));
        }
        Ok(Axis { name, min, max, steps, log })
    }
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / last;
                if i + 1 == self.steps {
                    self.max
                } else if self.log {
                    (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp()
                } else {
                    self.min + t * (self.max - self.min)
                }
            })
            .collect()
    }
}

/// All grid points, last axis varying fastest.
pub fn grid(axes: &[Axis], max_points: usize) -> CliResult<Vec<Vec<f64>>> {
    let total = axes.iter().try_fold(1usize, |acc, a| acc.checked_mul(a.steps));
    match total {
        Some(n) if n <= max_points => {}
        _ => {
            return Err(CliError::Validation(format!(
                "sweep of {} points exceeds the budget of {max_points}",
                total.map_or("overflowing".to_string(), |n| n.to_string())
            )))
        }
    }
    let mut points = vec![Vec::new()];
    for axis in axes {
        let values = axis.values();
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

/// Evaluates `computation` at every grid point on `workers` threads.
/// Row order and values do not depend on `workers`.
pub fn run_sweep(
    computation: Computation,
    base: &Params,
    axes: &[Axis],
    workers: usize,
    max_points: usize,
) -> CliResult<Vec<Row>> {
    if axes.is_empty() {
        return Err(CliError::Config("a sweep needs at least one --axis".into()));
    }
    let points = grid(axes, max_points)?;
    let eval = |point: &Vec<f64>| -> CliResult<Row> {
        let mut p = base.clone();
        for (axis, v) in axes.iter().zip(point) {
            p.set_number(&axis.name, *v);
        }
        let inner = computation.run(&p)?;
        let mut row = Row::default();
        for (axis, v) in axes.iter().zip(point) {
            row.num(format!("axis_{}", axis.name), *v, None);
        }
        row.columns.extend(inner.columns);
        Ok(row)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    pool.install(|| points.par_iter().map(eval).collect::<CliResult<Vec<Row>>>())
}
