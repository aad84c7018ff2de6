//! Seeded random networks with block structure, and parameter sweeps that
//! measure how rank statistics move across α and ε grids.
//!
//! Generation uses ChaCha8 (`rand_chacha`) seeded with `seed_from_u64`. One
//! `f64` is drawn uniformly from `[0, 1)` for every cell of the `n × n`
//! matrix in row-major order, and the cell is an edge iff the draw is below
//! the cell's density. Diagonal cells still consume their draw when the
//! diagonal is forced to zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use nalgebra::DMatrix;

use crate::eigenrank::{
    markovrank, pagerank, Method, PowerIterConfig, ScoreVector, DEGENERACY_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::rank_stats::{
    agreement_count, is_finer, is_identical_rank, rank_statistic, DEFAULT_TIE_TOLERANCE,
};

pub const BASELINE_ALPHA: f64 = 0.85;
pub const BASELINE_EPSILON: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockCell {
    pub rows: usize,
    pub cols: usize,
    pub density: f64,
}

/// A grid of blocks tiling a square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpec {
    pub grid: Vec<Vec<BlockCell>>,
    pub zero_diagonal: bool,
    pub seed: u64,
}

impl BlockSpec {
    /// Parses `"80x80@0.1,80x20@0;20x80@0.1,20x20@0.1"`: grid rows separated
    /// by `;`, cells by `,`, each cell `ROWSxCOLS@DENSITY`.
    pub fn parse(text: &str, zero_diagonal: bool, seed: u64) -> Result<Self> {
        let bad = |msg: String| Error::BlockSpec(msg);
        let mut grid = Vec::new();
        for row in text.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let mut cells = Vec::new();
            for cell in row.split(',').map(str::trim) {
                let (dims, density) = cell
                    .split_once('@')
                    .ok_or_else(|| bad(format!("cell {cell:?} lacks '@density'")))?;
                let (r, c) = dims
                    .split_once(['x', 'X'])
                    .ok_or_else(|| bad(format!("cell {cell:?} lacks 'ROWSxCOLS'")))?;
                let parse_dim = |s: &str| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|e| bad(format!("{s:?}: {e}")))
                };
                let density = density
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| bad(format!("{density:?}: {e}")))?;
                cells.push(BlockCell {
                    rows: parse_dim(r)?,
                    cols: parse_dim(c)?,
                    density,
                });
            }
            grid.push(cells);
        }
        let spec = Self {
            grid,
            zero_diagonal,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// A single `n × n` block of density `p`.
    pub fn uniform(n: usize, p: f64, zero_diagonal: bool, seed: u64) -> Self {
        Self {
            grid: vec![vec![BlockCell {
                rows: n,
                cols: n,
                density: p,
            }]],
            zero_diagonal,
            seed,
        }
    }

    /// Checks the tiling and returns the side length.
    pub fn validate(&self) -> Result<usize> {
        let bad = |msg: String| Err(Error::BlockSpec(msg));
        let Some(first) = self.grid.first() else {
            return bad("no blocks".into());
        };
        let widths: Vec<usize> = first.iter().map(|c| c.cols).collect();
        let mut height = 0;
        for (r, row) in self.grid.iter().enumerate() {
            if row.len() != widths.len() {
                return bad(format!(
                    "grid row {r} has {} cells, expected {}",
                    row.len(),
                    widths.len()
                ));
            }
            let h = row[0].rows;
            for (c, cell) in row.iter().enumerate() {
                if cell.rows != h {
                    return bad(format!(
                        "cell ({r}, {c}) has {} rows, expected {h}",
                        cell.rows
                    ));
                }
                if cell.cols != widths[c] {
                    return bad(format!(
                        "cell ({r}, {c}) has {} cols, expected {}",
                        cell.cols, widths[c]
                    ));
                }
                if !(0.0..=1.0).contains(&cell.density) {
                    return bad(format!(
                        "cell ({r}, {c}) density {} outside [0, 1]",
                        cell.density
                    ));
                }
                if cell.rows == 0 || cell.cols == 0 {
                    return bad(format!("cell ({r}, {c}) is empty"));
                }
            }
            height += h;
        }
        let width: usize = widths.iter().sum();
        if height != width {
            return bad(format!("blocks tile {height} x {width}, not a square"));
        }
        Ok(height)
    }

    /// Density of the block containing cell `(i, j)`, as a dense lookup.
    fn densities(&self, n: usize) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(n, n);
        let mut r0 = 0;
        for row in &self.grid {
            let mut c0 = 0;
            for cell in row {
                d.view_mut((r0, c0), (cell.rows, cell.cols))
                    .fill(cell.density);
                c0 += cell.cols;
            }
            r0 += row[0].rows;
        }
        d
    }
}

pub fn gen_block(spec: &BlockSpec) -> Result<AdjacencyMatrix> {
    let n = spec.validate()?;
    let densities = spec.densities(n);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut entries = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let draw: f64 = rng.random();
            if draw < densities[(i, j)] && !(spec.zero_diagonal && i == j) {
                entries[(i, j)] = 1.0;
            }
        }
    }
    AdjacencyMatrix::new(entries, (1..=n).map(|i| i.to_string()).collect())
}

/// Directed Erdős–Rényi graph: each off-diagonal cell is an edge with
/// probability `p`; the diagonal is zero.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<AdjacencyMatrix> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    gen_block(&BlockSpec::uniform(n, p, true, seed))
}

/// Two-community layout: a closed `big` block, a `small` block feeding into it
/// and into itself, and no edges from `big` to `small`.
pub fn feeder_spec(big: usize, small: usize, p: f64, seed: u64) -> BlockSpec {
    let cell = |rows, cols, density| BlockCell {
        rows,
        cols,
        density,
    };
    BlockSpec {
        grid: vec![
            vec![cell(big, big, p), cell(big, small, 0.0)],
            vec![cell(small, big, p), cell(small, small, p)],
        ],
        zero_diagonal: true,
        seed,
    }
}

/// Two isolated `side` blocks and a `feeder` block with edges into both.
pub fn split_spec(side: usize, feeder: usize, p: f64, seed: u64) -> BlockSpec {
    let cell = |rows, cols, density| BlockCell {
        rows,
        cols,
        density,
    };
    BlockSpec {
        grid: vec![
            vec![
                cell(side, side, p),
                cell(side, side, 0.0),
                cell(side, feeder, 0.0),
            ],
            vec![
                cell(side, side, 0.0),
                cell(side, side, p),
                cell(side, feeder, 0.0),
            ],
            vec![
                cell(feeder, side, p),
                cell(feeder, side, p),
                cell(feeder, feeder, p),
            ],
        ],
        zero_diagonal: true,
        seed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    PageRank,
    MarkovRank,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::PageRank => "pagerank",
            Family::MarkovRank => "markovrank",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointStatus {
    Ok,
    MultiplicityFailure { multiplicity: usize },
    Failed { message: String },
}

/// One ranking evaluated at one parameter value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPoint {
    pub family: Family,
    pub parameter: f64,
    pub status: PointStatus,
    /// Some score is at or below the degeneracy threshold.
    pub warning: bool,
    /// Number of scores at or below the degeneracy threshold.
    pub near_zero: usize,
    pub scores: Option<Vec<f64>>,
    pub ranks: Option<Vec<f64>>,
}

/// A grid point compared against a baseline point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub family: Family,
    pub parameter: f64,
    pub baseline_family: Family,
    pub baseline_parameter: f64,
    pub agreement: Option<usize>,
    pub identical: Option<bool>,
    /// The grid point's rank statistic is finer than the baseline's.
    pub finer: Option<bool>,
    /// The baseline's rank statistic is finer than the grid point's.
    pub baseline_finer: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub labels: Vec<String>,
    pub method: Method,
    pub tie_tolerance: f64,
    pub alphas: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub baselines: Vec<GridPoint>,
    pub points: Vec<GridPoint>,
    pub comparisons: Vec<Comparison>,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub method: Method,
    pub power: PowerIterConfig,
    pub tie_tolerance: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            method: Method::Exact,
            power: PowerIterConfig::precise(),
            tie_tolerance: DEFAULT_TIE_TOLERANCE,
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    family: &'a str,
    parameter: f64,
    baseline_family: &'a str,
    baseline_parameter: f64,
    status: &'a str,
    warning: bool,
    agreement: Option<usize>,
    identical: Option<bool>,
    finer: Option<bool>,
    baseline_finer: Option<bool>,
}

impl SweepReport {
    pub fn point(&self, family: Family, parameter: f64) -> Option<&GridPoint> {
        self.points
            .iter()
            .find(|p| p.family == family && p.parameter == parameter)
    }

    pub fn comparisons_against(&self, baseline: Family) -> impl Iterator<Item = &Comparison> {
        self.comparisons
            .iter()
            .filter(move |c| c.baseline_family == baseline)
    }

    pub fn multiplicity_failures(&self) -> impl Iterator<Item = &GridPoint> {
        self.points
            .iter()
            .filter(|p| matches!(p.status, PointStatus::MultiplicityFailure { .. }))
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// One row per comparison.
    pub fn to_csv(&self) -> Result<String> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        for c in &self.comparisons {
            let point = self
                .point(c.family, c.parameter)
                .expect("comparison refers to a grid point");
            let status = match point.status {
                PointStatus::Ok => "ok",
                PointStatus::MultiplicityFailure { .. } => "multiplicity_failure",
                PointStatus::Failed { .. } => "failed",
            };
            wtr.serialize(CsvRow {
                family: c.family.as_str(),
                parameter: c.parameter,
                baseline_family: c.baseline_family.as_str(),
                baseline_parameter: c.baseline_parameter,
                status,
                warning: point.warning,
                agreement: c.agreement,
                identical: c.identical,
                finer: c.finer,
                baseline_finer: c.baseline_finer,
            })?;
        }
        let bytes = wtr.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn evaluate(
    adjacency: &AdjacencyMatrix,
    family: Family,
    parameter: f64,
    options: &SweepOptions,
) -> GridPoint {
    let result = match family {
        Family::PageRank => pagerank(adjacency, parameter, options.method, &options.power),
        Family::MarkovRank => markovrank(adjacency, parameter, options.method, &options.power),
    };
    let mut point = GridPoint {
        family,
        parameter,
        status: PointStatus::Ok,
        warning: false,
        near_zero: 0,
        scores: None,
        ranks: None,
    };
    match result {
        Ok(scores) => {
            point.warning = scores.is_degenerate();
            point.near_zero = scores
                .values()
                .iter()
                .filter(|&&v| v <= DEGENERACY_THRESHOLD)
                .count();
            point.ranks = Some(rank_statistic(scores.values(), options.tie_tolerance).ranks);
            point.scores = Some(ScoreVector::values(&scores).to_vec());
        }
        Err(Error::Multiplicity { multiplicity }) => {
            point.status = PointStatus::MultiplicityFailure { multiplicity };
        }
        Err(e) => {
            point.status = PointStatus::Failed {
                message: e.to_string(),
            };
        }
    }
    point
}

fn compare(point: &GridPoint, baseline: &GridPoint, tol: f64) -> Comparison {
    let mut c = Comparison {
        family: point.family,
        parameter: point.parameter,
        baseline_family: baseline.family,
        baseline_parameter: baseline.parameter,
        agreement: None,
        identical: None,
        finer: None,
        baseline_finer: None,
    };
    if let (Some(x), Some(y)) = (&point.scores, &baseline.scores) {
        c.agreement = agreement_count(x, y, tol).ok();
        c.identical = is_identical_rank(x, y, tol).ok();
        c.finer = is_finer(x, y, tol).ok();
        c.baseline_finer = is_finer(y, x, tol).ok();
    }
    c
}

/// [`invariance_sweep_with`] using the exact method and default tie tolerance.
pub fn invariance_sweep(
    adjacency: &AdjacencyMatrix,
    alphas: &[f64],
    epsilons: &[f64],
) -> SweepReport {
    invariance_sweep_with(adjacency, alphas, epsilons, &SweepOptions::default())
}

/// Evaluates PageRank over `alphas` and MarkovRank over `epsilons`, and
/// compares every grid point against both baselines (α = 0.85, ε = 1).
/// Failing grid points are recorded, never propagated.
pub fn invariance_sweep_with(
    adjacency: &AdjacencyMatrix,
    alphas: &[f64],
    epsilons: &[f64],
    options: &SweepOptions,
) -> SweepReport {
    let jobs: Vec<(Family, f64)> = alphas
        .iter()
        .map(|&a| (Family::PageRank, a))
        .chain(epsilons.iter().map(|&e| (Family::MarkovRank, e)))
        .chain([
            (Family::PageRank, BASELINE_ALPHA),
            (Family::MarkovRank, BASELINE_EPSILON),
        ])
        .collect();
    let mut evaluated: Vec<GridPoint> = jobs
        .par_iter()
        .map(|&(family, parameter)| evaluate(adjacency, family, parameter, options))
        .collect();
    let baselines = evaluated.split_off(evaluated.len() - 2);
    let points = evaluated;

    let comparisons = points
        .iter()
        .flat_map(|p| {
            baselines
                .iter()
                .map(move |b| compare(p, b, options.tie_tolerance))
        })
        .collect();

    SweepReport {
        n: adjacency.n(),
        labels: adjacency.labels().to_vec(),
        method: options.method,
        tie_tolerance: options.tie_tolerance,
        alphas: alphas.to_vec(),
        epsilons: epsilons.to_vec(),
        baselines,
        points,
        comparisons,
    }
}
