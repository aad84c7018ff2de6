use serde::{Deserialize, Serialize};

use markovrank::rank_stats::{rank_statistic, DEFAULT_TIE_TOLERANCE};
use markovrank::ScoreVector;

/// One line of ranking output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub label: String,
    pub score: f64,
    pub rank: f64,
}

pub fn records(scores: &ScoreVector) -> Vec<OutputRecord> {
    let ranks = rank_statistic(scores.values(), DEFAULT_TIE_TOLERANCE).ranks;
    scores
        .labels()
        .iter()
        .zip(scores.values())
        .zip(ranks)
        .map(|((label, &score), rank)| OutputRecord {
            label: label.clone(),
            score,
            rank,
        })
        .collect()
}

/// Ten significant digits, fixed-point for moderate magnitudes.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // an exact power of ten may round up a digit; still 10 significant
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.9e}")
    }
}

pub fn records_csv(records: &[OutputRecord]) -> String {
    let mut out = String::from("label,score,rank\n");
    for r in records {
        out.push_str(&csv_field(&r.label));
        out.push(',');
        out.push_str(&sig10(r.score));
        out.push(',');
        out.push_str(&r.rank.to_string());
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn records_json(records: &[OutputRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}
