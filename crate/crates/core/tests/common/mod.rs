//! Small reference networks and their known rankings, shared by the
//! integration tests of both crates.
#![allow(dead_code)]

use markovrank::AdjacencyMatrix;

pub fn net(rows: &[&[f64]]) -> AdjacencyMatrix {
    AdjacencyMatrix::from_rows(rows).expect("valid fixture")
}

pub fn dense_csv(rows: &[&[f64]]) -> String {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|v| format!("{v}"))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

pub const TEXTBOOK_CHAIN: [f64; 9] = [0.70, 0.15, 0.30, 0.20, 0.80, 0.20, 0.10, 0.05, 0.50];

pub const FOUR_NODE: &[&[f64]] = &[
    &[0.0, 1.0, 0.0, 1.0],
    &[1.0, 0.0, 1.0, 0.0],
    &[0.0, 1.0, 0.0, 0.0],
    &[0.0, 1.0, 0.0, 0.0],
];

pub const FOUR_NODE_PAGERANK: &[(f64, [f64; 4])] = &[
    (0.85, [0.2199138, 0.4292090, 0.2199138, 0.1309634]),
    (0.9, [0.2205707, 0.4346017, 0.2205707, 0.1242568]),
    (0.999, [0.2222037, 0.4443518, 0.2222037, 0.1112408]),
    (1.0, [0.2222222, 0.4444444, 0.2222222, 0.1111111]),
];

pub const FOUR_NODE_MARKOVRANK: &[(f64, [f64; 4])] = &[
    (0.0, [0.2222222, 0.4444444, 0.2222222, 0.1111111]),
    (0.1, [0.2220704, 0.4436754, 0.2220704, 0.1121837]),
    (1.0, [0.2209141, 0.4369806, 0.2209141, 0.1211911]),
];

pub const SIX_NODE: &[&[f64]] = &[
    &[0.0, 1.0, 0.0, 1.0, 1.0, 1.0],
    &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    &[0.0, 1.0, 0.0, 0.0, 1.0, 0.0],
    &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
    &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
];

pub const SIX_NODE_PAGERANK: &[(f64, [f64; 6])] = &[
    (
        0.85,
        [
            0.26186689, 0.26300737, 0.09549045, 0.15113717, 0.13454078, 0.09395734,
        ],
    ),
    (
        0.9,
        [
            0.27051626, 0.26685259, 0.08952441, 0.15039057, 0.13150107, 0.09121509,
        ],
    ),
    (
        1.0,
        [
            0.28846154, 0.27403846, 0.07692308, 0.14903846, 0.12500000, 0.08653846,
        ],
    ),
];

pub const SIX_NODE_MARKOVRANK: &[(f64, [f64; 6])] = &[
    (
        0.0,
        [
            0.28846154, 0.27403846, 0.07692308, 0.14903846, 0.12500000, 0.08653846,
        ],
    ),
    (
        1e-7,
        [
            0.28846154, 0.27403846, 0.07692308, 0.14903846, 0.12500000, 0.08653846,
        ],
    ),
    (
        1e-5,
        [
            0.28846148, 0.27403844, 0.07692312, 0.14903847, 0.12500002, 0.08653847,
        ],
    ),
    (
        0.1,
        [
            0.28789019, 0.27382451, 0.07732932, 0.14907766, 0.12521127, 0.08666706,
        ],
    ),
    (
        1.0,
        [
            0.28293661, 0.27193053, 0.08083711, 0.14942781, 0.12703084, 0.08783709,
        ],
    ),
];

pub const CYCLE_A: &[&[f64]] = &[&[0.0, 0.0, 1.0], &[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]];

/// A source node feeding a dead end and a closed two-cycle.
pub const SINK_B: &[&[f64]] = &[
    &[0.0, 1.0, 1.0, 1.0, 1.0],
    &[0.0, 0.0, 1.0, 0.0, 0.0],
    &[0.0, 0.0, 0.0, 0.0, 0.0],
    &[0.0, 0.0, 0.0, 0.0, 1.0],
    &[0.0, 0.0, 0.0, 1.0, 0.0],
];

/// Two closed classes, so the unperturbed chain has a repeated eigenvalue 1.
pub const SPLIT_C: &[&[f64]] = &[
    &[0.0, 1.0, 1.0, 1.0, 1.0, 1.0],
    &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
    &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    &[0.0, 1.0, 1.0, 0.0, 0.0, 0.0],
    &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
];

pub const SPLIT_C_MR_1E3: [f64; 6] = [
    6.944155e-06,
    2.666630e-01,
    1.999986e-01,
    1.333343e-01,
    1.999986e-01,
    1.999986e-01,
];
pub const SPLIT_C_MR_1: [f64; 6] = [
    0.006666667,
    0.263099099,
    0.198666667,
    0.134234234,
    0.198666667,
    0.198666667,
];

pub const ALPHA_SENSITIVE_D: &[&[f64]] = &[
    &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    &[0.0, 0.0, 1.0, 0.0, 1.0, 1.0],
    &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
    &[1.0, 1.0, 1.0, 0.0, 0.0, 0.0],
    &[1.0, 0.0, 0.0, 1.0, 0.0, 1.0],
    &[1.0, 0.0, 1.0, 1.0, 0.0, 0.0],
];

pub const D_RANKS_LOW_ALPHA: [f64; 6] = [5.0, 6.0, 4.0, 1.0, 3.0, 2.0];
pub const D_RANKS_HIGH: [f64; 6] = [5.0, 6.0, 3.0, 1.0, 4.0, 2.0];

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
