//! Transition matrices built from adjacency data, and the regularity test.
//!
//! Every matrix here is column-stochastic: it acts on probability column
//! vectors by `x_k = M x_{k-1}`, so column `i` holds the distribution of the
//! next step out of node `i`.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

/// Column sums must be within this of 1.
pub const STOCHASTIC_TOLERANCE: f64 = 1e-12;

/// How a transition matrix was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    /// Supplied directly by the caller.
    Given,
    /// `AᵀB⁻¹` of an adjacency matrix with no zero rows.
    Plain,
    /// Built from the zero-row patched adjacency.
    Patched,
    /// `αM + (1-α)/n` damping of a patched matrix.
    Damped(f64),
    /// The `(n+1)`-state chain of the augmented adjacency.
    Augmented(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    entries: DMatrix<f64>,
    provenance: Provenance,
}

impl TransitionMatrix {
    /// Validates a caller-supplied column-stochastic matrix.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::Empty);
        }
        for (col, column) in entries.column_iter().enumerate() {
            for (row, &value) in column.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
                if value < 0.0 {
                    return Err(Error::NegativeEntry { row, col, value });
                }
            }
            let sum = column.sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOLERANCE {
                return Err(Error::NotStochastic { col, sum });
            }
        }
        Ok(Self {
            entries,
            provenance: Provenance::Given,
        })
    }

    /// Row-major convenience constructor.
    pub fn from_row_slice(m: usize, data: &[f64]) -> Result<Self> {
        if data.len() != m * m {
            return Err(Error::NotSquare {
                rows: m,
                cols: data.len() / m.max(1),
            });
        }
        Self::new(DMatrix::from_row_slice(m, m, data))
    }

    fn built(entries: DMatrix<f64>, provenance: Provenance) -> Self {
        debug_assert!(entries
            .column_iter()
            .all(|c| (c.sum() - 1.0).abs() <= STOCHASTIC_TOLERANCE * entries.nrows() as f64));
        Self {
            entries,
            provenance,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    /// One step of the chain: `M x`.
    pub fn step(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.entries * x
    }
}

/// `ÃᵀB̃⁻¹` for an adjacency matrix whose rows all have positive sums.
pub fn transition_from_patched(patched: &AdjacencyMatrix) -> Result<TransitionMatrix> {
    let sums = patched.row_sums();
    if let Some(row) = sums.iter().position(|&s| s <= 0.0) {
        return Err(Error::ZeroRow { row });
    }
    let n = patched.n();
    let a = patched.entries();
    let entries = DMatrix::from_fn(n, n, |j, i| a[(i, j)] / sums[i]);
    Ok(TransitionMatrix::built(entries, Provenance::Patched))
}

/// `AᵀB⁻ + (1/n)𝟏(I − BB⁻)`, where `B⁻` is the Moore–Penrose inverse of the
/// diagonal out-degree matrix `B`.
///
/// Equal to [`transition_from_patched`] applied to the patched matrix; this
/// route goes through the generalized inverse instead.
pub fn transition_generalized_inverse(adjacency: &AdjacencyMatrix) -> TransitionMatrix {
    let n = adjacency.n();
    let out = DVector::from_vec(adjacency.row_sums());
    let pinv = out.map(|d| if d > 0.0 { 1.0 / d } else { 0.0 });
    let b = DMatrix::from_diagonal(&out);
    let b_pinv = DMatrix::from_diagonal(&pinv);
    let ones = DMatrix::from_element(n, n, 1.0 / n as f64);
    let projector = DMatrix::identity(n, n) - &b * &b_pinv;
    let entries = adjacency.entries().transpose() * b_pinv + ones * projector;
    let provenance = if adjacency.has_zero_row() {
        Provenance::Patched
    } else {
        Provenance::Plain
    };
    TransitionMatrix::built(entries, provenance)
}

/// `αM + ((1−α)/n)𝟏`, defined for `α ∈ (0, 1]`.
pub fn damped_transition(base: &TransitionMatrix, alpha: f64) -> Result<TransitionMatrix> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let n = base.dim() as f64;
    let teleport = (1.0 - alpha) / n;
    let entries = base.entries.map(|v| alpha * v + teleport);
    Ok(TransitionMatrix::built(entries, Provenance::Damped(alpha)))
}

/// The `(n+1) × (n+1)` augmented adjacency.
///
/// The top-left block is the patched adjacency, node `n+1` receives
/// `(ε/2)·rowsum_i/total` from node `i`, and links back to every original
/// node with weight 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedAdjacency {
    base: AdjacencyMatrix,
    epsilon: f64,
    entries: DMatrix<f64>,
}

impl AugmentedAdjacency {
    pub fn base(&self) -> &AdjacencyMatrix {
        &self.base
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

pub fn augment_adjacency(patched: &AdjacencyMatrix, epsilon: f64) -> Result<AugmentedAdjacency> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    let sums = patched.row_sums();
    if let Some(row) = sums.iter().position(|&s| s <= 0.0) {
        return Err(Error::ZeroRow { row });
    }
    let n = patched.n();
    let total: f64 = sums.iter().sum();
    let mut entries = DMatrix::zeros(n + 1, n + 1);
    entries
        .view_mut((0, 0), (n, n))
        .copy_from(patched.entries());
    for (i, s) in sums.iter().enumerate() {
        entries[(i, n)] = 0.5 * epsilon * s / total;
        entries[(n, i)] = 1.0;
    }
    Ok(AugmentedAdjacency {
        base: patched.clone(),
        epsilon,
        entries,
    })
}

/// `(Â^ε)ᵀ(B̂^ε)⁻¹`, the column-stochastic chain on `n+1` states.
pub fn transition_from_augmented(augmented: &AugmentedAdjacency) -> Result<TransitionMatrix> {
    let m = augmented.dim();
    let a = augmented.entries();
    let sums: Vec<f64> = a.row_iter().map(|r| r.sum()).collect();
    if let Some(row) = sums.iter().position(|&s| s <= 0.0) {
        return Err(Error::ZeroRow { row });
    }
    let entries = DMatrix::from_fn(m, m, |j, i| a[(i, j)] / sums[i]);
    Ok(TransitionMatrix::built(
        entries,
        Provenance::Augmented(augmented.epsilon),
    ))
}

/// Outcome of [`is_regular`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    /// Smallest `k` with `M^k` entrywise positive, when one was found.
    pub witness: Option<usize>,
}

/// `m² − 2m + 2`: any primitive `m × m` matrix has a positive power at or
/// below this exponent.
pub fn wielandt_bound(m: usize) -> usize {
    (m * m + 2).saturating_sub(2 * m)
}

/// Zero pattern of a square matrix, one bitset per row.
#[derive(Clone, PartialEq, Eq)]
struct Pattern {
    m: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Pattern {
    fn zeros(m: usize) -> Self {
        let words = m.div_ceil(64);
        Self {
            m,
            words,
            bits: vec![0; m * words],
        }
    }

    fn of(matrix: &DMatrix<f64>) -> Self {
        let m = matrix.nrows();
        let mut p = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                let v = matrix[(i, j)];
                assert!(v >= -1e-15, "negative transition entry {v} at ({i}, {j})");
                if v > 0.0 {
                    p.set(i, j);
                }
            }
        }
        p
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn all_set(&self) -> bool {
        (0..self.m).all(|i| (0..self.m).all(|j| self.get(i, j)))
    }

    /// Pattern of `self · rhs`.
    fn mul(&self, rhs: &Pattern) -> Pattern {
        let mut out = Pattern::zeros(self.m);
        for i in 0..self.m {
            let mut acc = vec![0u64; self.words];
            for l in 0..self.m {
                if self.get(i, l) {
                    for (a, b) in acc.iter_mut().zip(rhs.row(l)) {
                        *a |= b;
                    }
                }
            }
            out.bits[i * self.words..(i + 1) * self.words].copy_from_slice(&acc);
        }
        out
    }

    fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).filter(move |&j| self.get(i, j))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Irreducible and aperiodic, i.e. some power is entrywise positive.
fn is_primitive(p: &Pattern) -> bool {
    let m = p.m;
    // BFS levels from node 0 along i -> j whenever p[i][j] is set.
    let mut level = vec![usize::MAX; m];
    level[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for v in p.successors(u) {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if level.contains(&usize::MAX) {
        return false;
    }
    let mut back = vec![false; m];
    back[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (u, seen) in back.iter_mut().enumerate() {
            if !*seen && p.get(u, v) {
                *seen = true;
                queue.push_back(u);
            }
        }
    }
    if back.contains(&false) {
        return false;
    }
    // Period of a strongly connected graph: gcd of level[u] + 1 - level[v]
    // over all edges.
    let mut period = 0;
    for u in 0..m {
        for v in p.successors(u) {
            period = gcd(period, (level[u] + 1).abs_diff(level[v]));
        }
    }
    period == 1
}

/// Whether some power `M^k`, `k ≤ k_max`, is entrywise positive.
///
/// Only the zero pattern matters, so powers are taken over Boolean patterns
/// and never underflow. `k_max` defaults to the Wielandt bound.
pub fn is_regular(matrix: &TransitionMatrix, k_max: Option<usize>) -> Regularity {
    let m = matrix.dim();
    let k_max = k_max.unwrap_or_else(|| wielandt_bound(m));
    let base = Pattern::of(matrix.entries());
    let not_regular = Regularity {
        regular: false,
        witness: None,
    };
    if k_max == 0 || !is_primitive(&base) {
        return not_regular;
    }
    let mut power = base.clone();
    for k in 1..=k_max {
        if power.all_set() {
            return Regularity {
                regular: true,
                witness: Some(k),
            };
        }
        if k < k_max {
            power = power.mul(&base);
        }
    }
    not_regular
}
