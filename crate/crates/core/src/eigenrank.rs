//! Ranking vectors: the eigenvalue-1 eigenspace of a transition matrix,
//! power iteration, α-PageRank and ε-MarkovRank.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::chain::{
    augment_adjacency, damped_transition, transition_from_augmented, transition_from_patched,
    TransitionMatrix,
};
use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

/// Eigenvalues with real part above `1 - tol` count towards the multiplicity
/// of the eigenvalue 1.
pub const DEFAULT_EIGEN_TOLERANCE: f64 = 1e-5;

/// Scores at or below this are reported as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Non-negative scores over labelled nodes, normally summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreVector {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl ScoreVector {
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: values.len(),
            });
        }
        Ok(Self { labels, values })
    }

    /// Labels `"1".."n"`.
    pub fn unlabelled(values: Vec<f64>) -> Self {
        let labels = (1..=values.len()).map(|i| i.to_string()).collect();
        Self { labels, values }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Any score at or below [`DEGENERACY_THRESHOLD`] (negative included).
    ///
    /// Raised near the boundary of the parameter range on non-regular
    /// chains, where the eigenvector is numerically unstable.
    pub fn is_degenerate(&self) -> bool {
        self.values.iter().any(|&v| v <= DEGENERACY_THRESHOLD)
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &ScoreVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The eigenvalue-1 eigenspace of a transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpace {
    pub multiplicity: usize,
    /// A real eigenvector (unnormalized), present only when the multiplicity is one.
    pub vector: Option<DVector<f64>>,
    pub tolerance_used: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialVector {
    Uniform,
    /// Must match the chain dimension and sum to 1.
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerIterConfig {
    /// Stop once the largest entrywise change between iterates is at most this.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub initial: InitialVector,
}

impl Default for PowerIterConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-6,
            max_iterations: 1_000_000,
            initial: InitialVector::Uniform,
        }
    }
}

impl PowerIterConfig {
    /// Tolerance 1e-15, for comparing against the exact route.
    pub fn precise() -> Self {
        Self {
            tolerance: 1e-15,
            ..Self::default()
        }
    }

    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Power,
}

/// Result of [`stationary_power`].
#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    pub scores: ScoreVector,
    pub iterations: usize,
}

fn eigenvalues_near_one(matrix: &DMatrix<f64>, tol: f64) -> Result<usize> {
    let m = matrix.nrows();
    if m == 1 {
        return Ok(usize::from(matrix[(0, 0)] > 1.0 - tol));
    }
    let eigenvalues = matrix.complex_eigenvalues();
    if eigenvalues.iter().any(|z| !z.re.is_finite()) {
        return Err(Error::EigenSolver);
    }
    Ok(eigenvalues.iter().filter(|z| z.re > 1.0 - tol).count())
}

/// Solves `K v = 0` for a matrix of rank `m - 1` by Gaussian elimination
/// with full pivoting. The column left over after `m - 1` pivots is the free
/// variable, set to 1.
fn null_vector(k: &DMatrix<f64>) -> Result<DVector<f64>> {
    let m = k.nrows();
    let mut a = k.clone();
    let mut cols: Vec<usize> = (0..m).collect();
    for step in 0..m.saturating_sub(1) {
        let (mut pr, mut pc, mut best) = (step, step, 0.0);
        for c in step..m {
            for r in step..m {
                let v = a[(r, c)].abs();
                if v > best {
                    (pr, pc, best) = (r, c, v);
                }
            }
        }
        if best == 0.0 {
            return Err(Error::DegenerateEigenvector);
        }
        a.swap_rows(step, pr);
        a.swap_columns(step, pc);
        cols.swap(step, pc);
        let pivot = a[(step, step)];
        for r in step + 1..m {
            let f = a[(r, step)] / pivot;
            if f == 0.0 {
                continue;
            }
            a[(r, step)] = 0.0;
            for c in step + 1..m {
                let u = a[(step, c)];
                a[(r, c)] -= f * u;
            }
        }
    }
    let mut y = DVector::zeros(m);
    y[m - 1] = 1.0;
    for s in (0..m - 1).rev() {
        let mut acc = 0.0;
        for t in s + 1..m {
            acc += a[(s, t)] * y[t];
        }
        y[s] = -acc / a[(s, s)];
    }
    let mut v = DVector::zeros(m);
    for (pos, &col) in cols.iter().enumerate() {
        v[col] = y[pos];
    }
    Ok(v)
}

/// Multiplicity of the eigenvalue 1 and, when it is one, a real eigenvector.
///
/// The multiplicity counts eigenvalues whose real part exceeds `1 - tol`.
/// Eigenvalue 1 of a stochastic matrix is semisimple, so for multiplicity
/// one the eigenvector spans the null space of `M - I`.
pub fn eigenvalue_one_space(matrix: &TransitionMatrix, tol: f64) -> Result<EigenSpace> {
    let multiplicity = eigenvalues_near_one(matrix.entries(), tol)?;
    let vector = if multiplicity == 1 {
        let m = matrix.dim();
        let shifted = matrix.entries() - DMatrix::<f64>::identity(m, m);
        Some(null_vector(&shifted)?)
    } else {
        None
    };
    Ok(EigenSpace {
        multiplicity,
        vector,
        tolerance_used: tol,
    })
}

/// Divides by the entry sum; this also fixes the sign.
fn normalize(values: &[f64]) -> Result<Vec<f64>> {
    let sum: f64 = values.iter().sum();
    let scale: f64 = values.iter().map(|v| v.abs()).sum();
    if !sum.is_finite() || sum.abs() <= f64::EPSILON * scale || sum == 0.0 {
        return Err(Error::DegenerateEigenvector);
    }
    Ok(values.iter().map(|v| v / sum).collect())
}

fn exact_vector(matrix: &TransitionMatrix) -> Result<DVector<f64>> {
    let space = eigenvalue_one_space(matrix, DEFAULT_EIGEN_TOLERANCE)?;
    match space.vector {
        Some(v) => Ok(v),
        None => Err(Error::Multiplicity {
            multiplicity: space.multiplicity,
        }),
    }
}

/// Normalized eigenvalue-1 eigenvector of `matrix`, the stationary
/// distribution when it is unique.
pub fn stationary_exact(matrix: &TransitionMatrix) -> Result<ScoreVector> {
    let v = exact_vector(matrix)?;
    Ok(ScoreVector::unlabelled(normalize(v.as_slice())?))
}

fn initial_vector(initial: &InitialVector, m: usize) -> Result<DVector<f64>> {
    match initial {
        InitialVector::Uniform => Ok(DVector::from_element(m, 1.0 / m as f64)),
        InitialVector::Explicit(values) => {
            if values.len() != m {
                return Err(Error::InitialVector(format!(
                    "expected {m} entries, got {}",
                    values.len()
                )));
            }
            let sum: f64 = values.iter().sum();
            if (sum - 1.0).abs() > 1e-9 || values.iter().any(|v| !v.is_finite()) {
                return Err(Error::InitialVector(format!("entries sum to {sum}")));
            }
            Ok(DVector::from_column_slice(values))
        }
    }
}

fn iterate(matrix: &TransitionMatrix, cfg: &PowerIterConfig) -> Result<(DVector<f64>, usize)> {
    if cfg.tolerance.is_nan() || cfg.tolerance <= 0.0 {
        return Err(Error::InitialVector(format!(
            "tolerance must be positive, got {}",
            cfg.tolerance
        )));
    }
    let mut x = initial_vector(&cfg.initial, matrix.dim())?;
    for iteration in 1..=cfg.max_iterations {
        let next = matrix.step(&x);
        let diff = (&next - &x).amax();
        x = next;
        if diff <= cfg.tolerance {
            return Ok((x, iteration));
        }
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iterations,
        last: x.as_slice().to_vec(),
    })
}

/// Iterates `x_k = M x_{k-1}` until the largest entrywise change is within
/// `cfg.tolerance`.
pub fn stationary_power(matrix: &TransitionMatrix, cfg: &PowerIterConfig) -> Result<PowerResult> {
    let (x, iterations) = iterate(matrix, cfg)?;
    Ok(PowerResult {
        scores: ScoreVector::unlabelled(x.as_slice().to_vec()),
        iterations,
    })
}

/// The damped chain `αM̃ + ((1−α)/n)𝟏` of the patched adjacency.
pub fn pagerank_matrix(adjacency: &AdjacencyMatrix, alpha: f64) -> Result<TransitionMatrix> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let base = transition_from_patched(&adjacency.patch_zero_rows())?;
    damped_transition(&base, alpha)
}

/// The `(n+1)`-state chain of the ε-augmented patched adjacency.
pub fn markovrank_matrix(adjacency: &AdjacencyMatrix, epsilon: f64) -> Result<TransitionMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    let augmented = augment_adjacency(&adjacency.patch_zero_rows(), epsilon)?;
    transition_from_augmented(&augmented)
}

/// α-PageRank: the normalized eigenvalue-1 eigenvector of the damped chain.
pub fn pagerank(
    adjacency: &AdjacencyMatrix,
    alpha: f64,
    method: Method,
    cfg: &PowerIterConfig,
) -> Result<ScoreVector> {
    let matrix = pagerank_matrix(adjacency, alpha)?;
    let raw = match method {
        Method::Exact => exact_vector(&matrix)?,
        Method::Power => iterate(&matrix, cfg)?.0,
    };
    ScoreVector::new(adjacency.labels().to_vec(), normalize(raw.as_slice())?)
}

/// ε-MarkovRank: the eigenvalue-1 eigenvector of the augmented chain with
/// the auxiliary state dropped, renormalized over the original nodes.
///
/// For the power method an explicit initial vector has `n + 1` entries.
pub fn markovrank(
    adjacency: &AdjacencyMatrix,
    epsilon: f64,
    method: Method,
    cfg: &PowerIterConfig,
) -> Result<ScoreVector> {
    let matrix = markovrank_matrix(adjacency, epsilon)?;
    let raw = match method {
        Method::Exact => exact_vector(&matrix)?,
        Method::Power => iterate(&matrix, cfg)?.0,
    };
    let n = adjacency.n();
    ScoreVector::new(
        adjacency.labels().to_vec(),
        normalize(&raw.as_slice()[..n])?,
    )
}
