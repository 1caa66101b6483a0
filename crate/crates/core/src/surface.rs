//! Response curves and surfaces: sweep one or two inputs across their
//! universe with the others held fixed, and export the result as CSV or JSON.

use std::fmt::Write;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{linspace, Engine, EvalError};
use crate::models::{ATTACKER_MODEL, SUCCESS_MODEL};

pub const DEFAULT_STEPS: usize = 51;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("unknown input variable '{0}'")]
    UnknownVariable(String),
    #[error("a sweep takes 1 or 2 axes, got {0}")]
    AxisCount(usize),
    #[error("axis '{0}' is listed twice")]
    RepeatedAxis(String),
    #[error("'{0}' is both swept and fixed")]
    AxisFixed(String),
    #[error("missing fixed value for input '{0}'")]
    MissingFixed(String),
    #[error("steps must be at least 2, got {0}")]
    Steps(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub variable: String,
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepValues {
    Series(Vec<f64>),
    /// `grid[i][j]`: first axis at sample `i`, second at sample `j`.
    Grid(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub model: String,
    pub output: String,
    pub axes: Vec<SweepAxis>,
    /// Fixed inputs in declared order.
    pub fixed: IndexMap<String, f64>,
    pub values: SweepValues,
}

/// Sweeps `axes` (1 or 2 input names) over `steps` uniform samples each.
/// `fixed` must give a value for every other input.
pub fn sweep(
    engine: &Engine,
    axes: &[&str],
    fixed: &[(&str, f64)],
    steps: usize,
) -> Result<SweepResult, SweepError> {
    let fis = engine.fis();
    if !(1..=2).contains(&axes.len()) {
        return Err(SweepError::AxisCount(axes.len()));
    }
    if steps < 2 {
        return Err(SweepError::Steps(steps));
    }
    let mut axis_slots = Vec::with_capacity(axes.len());
    for (n, name) in axes.iter().enumerate() {
        let slot = fis
            .input_index(name)
            .ok_or_else(|| SweepError::UnknownVariable(name.to_string()))?;
        if axes[..n].contains(name) {
            return Err(SweepError::RepeatedAxis(name.to_string()));
        }
        axis_slots.push(slot);
    }
    for (name, _) in fixed {
        if fis.input_index(name).is_none() {
            return Err(SweepError::UnknownVariable(name.to_string()));
        }
        if axes.contains(name) {
            return Err(SweepError::AxisFixed(name.to_string()));
        }
    }

    let mut point = vec![0.0; fis.inputs.len()];
    let mut fixed_out = IndexMap::new();
    for (slot, var) in fis.inputs.iter().enumerate() {
        if axis_slots.contains(&slot) {
            continue;
        }
        // last assignment wins if a name is repeated
        let value = fixed
            .iter()
            .rev()
            .find(|(n, _)| *n == var.name)
            .map(|(_, v)| *v)
            .ok_or_else(|| SweepError::MissingFixed(var.name.clone()))?;
        point[slot] = value;
        fixed_out.insert(var.name.clone(), value);
    }

    let sweep_axes: Vec<SweepAxis> = axis_slots
        .iter()
        .map(|&slot| {
            let var = &fis.inputs[slot];
            SweepAxis {
                variable: var.name.clone(),
                samples: linspace(var.universe.0, var.universe.1, steps),
            }
        })
        .collect();

    let values = match sweep_axes.as_slice() {
        [x] => {
            let mut series = Vec::with_capacity(steps);
            for &sx in &x.samples {
                point[axis_slots[0]] = sx;
                series.push(engine.crisp(&point)?);
            }
            SweepValues::Series(series)
        }
        [x, y] => {
            let mut grid = Vec::with_capacity(steps);
            for &sx in &x.samples {
                point[axis_slots[0]] = sx;
                let mut row = Vec::with_capacity(steps);
                for &sy in &y.samples {
                    point[axis_slots[1]] = sy;
                    row.push(engine.crisp(&point)?);
                }
                grid.push(row);
            }
            SweepValues::Grid(grid)
        }
        _ => unreachable!("axis count checked above"),
    };

    Ok(SweepResult {
        model: fis.name.clone(),
        output: fis.output.name.clone(),
        axes: sweep_axes,
        fixed: fixed_out,
        values,
    })
}

impl SweepResult {
    /// Header `x[,y],value` naming the swept variables, then one row per
    /// sample, row-major. 2-D exports start with a `#` line giving the
    /// orientation.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match (&self.values, self.axes.as_slice()) {
            (SweepValues::Series(v), [x]) => {
                writeln!(out, "{},value", x.variable).unwrap();
                for (sx, val) in x.samples.iter().zip(v) {
                    writeln!(out, "{sx},{val}").unwrap();
                }
            }
            (SweepValues::Grid(g), [x, y]) => {
                writeln!(
                    out,
                    "# row-major: {} varies slowest (rows), {} fastest (columns); output {}",
                    x.variable, y.variable, self.output
                )
                .unwrap();
                writeln!(out, "{},{},value", x.variable, y.variable).unwrap();
                for (sx, row) in x.samples.iter().zip(g) {
                    for (sy, val) in y.samples.iter().zip(row) {
                        writeln!(out, "{sx},{sy},{val}").unwrap();
                    }
                }
            }
            _ => panic!("sweep values do not match the axes"),
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep serializes")
    }

    pub fn from_json(text: &str) -> Result<SweepResult, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Every computed value, in row-major order.
    pub fn flat_values(&self) -> Vec<f64> {
        match &self.values {
            SweepValues::Series(v) => v.clone(),
            SweepValues::Grid(g) => g.iter().flatten().copied().collect(),
        }
    }
}

/// Direction a figure's response is expected to move along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    NonDecreasing,
    NonIncreasing,
}

/// One of the reference response plots, as a sweep configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSweep {
    pub name: &'static str,
    pub model: &'static str,
    pub axes: Vec<(&'static str, Trend)>,
    pub fixed: Vec<(&'static str, f64)>,
}

impl FigureSweep {
    pub fn axis_names(&self) -> Vec<&'static str> {
        self.axes.iter().map(|(n, _)| *n).collect()
    }

    pub fn run(&self, engine: &Engine, steps: usize) -> Result<SweepResult, SweepError> {
        sweep(engine, &self.axis_names(), &self.fixed, steps)
    }
}

/// The eleven response plots: attacker surfaces at small/medium/big
/// motivation, knowledge slices for each attacker type, the resources slice,
/// and the success rate over profile and protection.
pub fn figure_fixtures() -> Vec<FigureSweep> {
    use Trend::*;
    let up = NonDecreasing;
    let knowledge = vec![("Knowledge", up)];
    let fig =
        |name, axes: Vec<(&'static str, Trend)>, fixed: Vec<(&'static str, f64)>| FigureSweep {
            name,
            model: ATTACKER_MODEL,
            axes,
            fixed,
        };
    vec![
        fig(
            "medium_motivation_surface",
            vec![("Knowledge", up), ("Resources", up)],
            vec![("Motivation", 0.5)],
        ),
        fig(
            "disgruntled_employee_knowledge_slice",
            knowledge.clone(),
            vec![("Resources", 0.1), ("Motivation", 0.5)],
        ),
        fig(
            "industrial_spy_knowledge_slice",
            knowledge.clone(),
            vec![("Resources", 0.9), ("Motivation", 0.5)],
        ),
        fig(
            "terrorist_knowledge_slice",
            knowledge.clone(),
            vec![("Resources", 0.5), ("Motivation", 0.5)],
        ),
        fig(
            "small_motivation_surface",
            vec![("Knowledge", up), ("Resources", up)],
            vec![("Motivation", 0.1)],
        ),
        fig(
            "script_kiddie_knowledge_slice",
            knowledge.clone(),
            vec![("Resources", 0.1), ("Motivation", 0.1)],
        ),
        fig(
            "hacker_knowledge_slice",
            knowledge.clone(),
            vec![("Resources", 0.5), ("Motivation", 0.1)],
        ),
        fig(
            "big_motivation_surface",
            vec![("Knowledge", up), ("Resources", up)],
            vec![("Motivation", 0.9)],
        ),
        fig(
            "cyber_warrior_knowledge_slice",
            knowledge,
            vec![("Resources", 0.9), ("Motivation", 0.9)],
        ),
        fig(
            "resources_saturation",
            vec![("Resources", up)],
            vec![("Knowledge", 0.9), ("Motivation", 0.5)],
        ),
        FigureSweep {
            name: "success_vs_profile_protection",
            model: SUCCESS_MODEL,
            axes: vec![("Profile", NonDecreasing), ("Protection", NonIncreasing)],
            fixed: vec![("Vulnerabilities", 0.5), ("Restore_cost", 0.9)],
        },
    ]
}

/// Largest step against `trend` along `axis` (0 = rows, 1 = columns).
/// Zero or negative means the sweep moves the expected way everywhere.
pub fn worst_violation(result: &SweepResult, axis: usize, trend: Trend) -> f64 {
    let against = |a: f64, b: f64| match trend {
        Trend::NonDecreasing => a - b,
        Trend::NonIncreasing => b - a,
    };
    let mut worst = f64::NEG_INFINITY;
    match &result.values {
        SweepValues::Series(v) => {
            for w in v.windows(2) {
                worst = worst.max(against(w[0], w[1]));
            }
        }
        SweepValues::Grid(g) => {
            for i in 0..g.len() {
                for j in 0..g[i].len() {
                    let next = if axis == 0 {
                        g.get(i + 1).map(|r| r[j])
                    } else {
                        g[i].get(j + 1).copied()
                    };
                    if let Some(n) = next {
                        worst = worst.max(against(g[i][j], n));
                    }
                }
            }
        }
    }
    worst
}
