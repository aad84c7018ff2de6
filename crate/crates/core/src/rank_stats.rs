//! Tie-aware rank statistics and the "finer than" / "identical" relations
//! between score vectors.
//!
//! Ranks are ascending (the smallest score gets rank 1) and tied entries
//! share the mean of the positions they occupy. Two scores tie when they are
//! linked by a chain of neighbours, in sorted order, each within the tie
//! tolerance of the next.

use crate::error::{Error, Result};

pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RankStatistic {
    pub ranks: Vec<f64>,
    pub tie_tolerance: f64,
}

/// Indices sorted by value, split into tie groups.
fn tie_groups(values: &[f64], tie_tol: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<f64> = None;
    for i in order {
        let v = values[i];
        match (prev, groups.last_mut()) {
            (Some(p), Some(group)) if (v - p).abs() <= tie_tol => group.push(i),
            _ => groups.push(vec![i]),
        }
        prev = Some(v);
    }
    groups
}

pub fn rank_statistic(values: &[f64], tie_tol: f64) -> RankStatistic {
    let mut ranks = vec![0.0; values.len()];
    let mut position = 0usize;
    for group in tie_groups(values, tie_tol) {
        // positions position+1 ..= position+len
        let len = group.len();
        let rank = position as f64 + (len as f64 + 1.0) / 2.0;
        for i in group {
            ranks[i] = rank;
        }
        position += len;
    }
    RankStatistic {
        ranks,
        tie_tolerance: tie_tol,
    }
}

fn check_lengths(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// Whether the rank statistic of `x` is finer than that of `y`: every
/// ordering `rank(x)_i <= rank(x)_j` carries over to `rank(y)`.
///
/// Walks the tie groups of `x` in ascending order; `y` must be constant on
/// each group and non-decreasing from one group to the next.
pub fn is_finer(x: &[f64], y: &[f64], tie_tol: f64) -> Result<bool> {
    check_lengths(x, y)?;
    let y_ranks = rank_statistic(y, tie_tol).ranks;
    let mut floor = f64::NEG_INFINITY;
    for group in tie_groups(x, tie_tol) {
        let r = y_ranks[group[0]];
        if group.iter().any(|&i| y_ranks[i] != r) || r < floor {
            return Ok(false);
        }
        floor = r;
    }
    Ok(true)
}

/// Both directions of [`is_finer`]; the same as equal rank statistics.
pub fn is_identical_rank(x: &[f64], y: &[f64], tie_tol: f64) -> Result<bool> {
    Ok(is_finer(x, y, tie_tol)? && is_finer(y, x, tie_tol)?)
}

/// Number of positions where the two rank statistics coincide.
pub fn agreement_count(x: &[f64], y: &[f64], tie_tol: f64) -> Result<usize> {
    check_lengths(x, y)?;
    let rx = rank_statistic(x, tie_tol).ranks;
    let ry = rank_statistic(y, tie_tol).ranks;
    Ok(rx.iter().zip(&ry).filter(|(a, b)| a == b).count())
}
