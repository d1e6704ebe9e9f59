use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::Vector;

use super::bounds::Flag;
use super::config::Method;

/// Version of the CSV trace layout, written in the `schema` column.
pub const TRACE_SCHEMA: u32 = 1;

/// State at iterate `x_n` and the step `x_n -> x_{n+1}` taken from it.
/// The step fields are empty on the last record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateRecord {
    pub n: usize,
    pub x: Vec<f64>,
    pub gamma: Option<f64>,
    pub e_norm: Option<f64>,
    pub residual: f64,
    pub dist: Option<f64>,
    pub step_norm: Option<f64>,
    pub member: bool,
    pub fejer: Flag,
    pub contraction: Flag,
    pub step_bound: Flag,
}

impl IterateRecord {
    pub fn point(&self) -> Vector {
        Vector::from_column_slice(&self.x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    /// Record `n` was the first declared member of the solution set.
    Member {
        n: usize,
    },
    CapExceeded,
    Failed {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateTrace {
    pub method: Method,
    pub dim: usize,
    pub records: Vec<IterateRecord>,
    pub termination: Termination,
    /// Solution points the per-step inequalities were checked against.
    pub reference_points: Vec<Vec<f64>>,
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

impl IterateTrace {
    /// Number of steps taken before the first member iterate: `x_{ℓ+1}` is
    /// the first iterate declared in the solution set.
    pub fn l_obs(&self) -> Option<usize> {
        match self.termination {
            Termination::Member { n } => Some(n - 1),
            _ => None,
        }
    }

    pub fn first(&self) -> Option<&IterateRecord> {
        self.records.first()
    }

    pub fn last_point(&self) -> Option<Vector> {
        self.records.last().map(IterateRecord::point)
    }

    /// `Σ ||x_{i+1} - x_i||^2` over every recorded step.
    pub fn squared_path_length(&self) -> f64 {
        self.records.iter().filter_map(|r| r.step_norm).map(|s| s * s).sum()
    }

    /// First record index `n` with `residual <= tol`.
    pub fn first_residual_below(&self, tol: f64) -> Option<usize> {
        self.records.iter().find(|r| r.residual <= tol).map(|r| r.n)
    }

    /// First record index `n` with `dist <= tol`.
    pub fn first_dist_below(&self, tol: f64) -> Option<usize> {
        self.records
            .iter()
            .find(|r| r.dist.is_some_and(|d| d <= tol))
            .map(|r| r.n)
    }

    /// `(passes, failures)` of one per-step flag.
    pub fn tally(&self, select: impl Fn(&IterateRecord) -> Flag) -> (usize, usize) {
        self.records.iter().fold((0, 0), |(p, f), r| match select(r) {
            Flag::Pass => (p + 1, f),
            Flag::Fail => (p, f + 1),
            Flag::NotApplicable => (p, f),
        })
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["schema".to_string(), "n".to_string()];
        h.extend((0..self.dim).map(|i| format!("x_{i}")));
        h.extend(
            [
                "gamma",
                "e_norm",
                "residual",
                "dist",
                "step_norm",
                "fejer",
                "contraction",
                "step_bound",
            ]
            .map(String::from),
        );
        h
    }

    /// One row per record; absent values are empty, flags are
    /// `pass`/`fail`/`na`, floats use shortest round-trip formatting.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for r in &self.records {
            let mut row = vec![TRACE_SCHEMA.to_string(), r.n.to_string()];
            row.extend(r.x.iter().map(|v| num(*v)));
            row.extend([
                opt(r.gamma),
                opt(r.e_norm),
                num(r.residual),
                opt(r.dist),
                opt(r.step_norm),
                r.fejer.to_string(),
                r.contraction.to_string(),
                r.step_bound.to_string(),
            ]);
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}
