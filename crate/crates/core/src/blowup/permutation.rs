//! Horizontal edges x_{1,σ₁(i)} … x_{k−1,σ_{k−1}(i)} x_{k,i} under
//! permutations of the first k−1 classes.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::count::equal_size;
use crate::error::{input, Result};
use crate::partite::PartiteGraph;
use crate::rng::{rng_for, streams};

/// Indices i whose horizontal tuple is an edge.
pub fn permutation_slice(h: &PartiteGraph, sigmas: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = equal_size(h)?;
    let k = h.k();
    if sigmas.len() + 1 != k {
        return input(format!("{} permutations given, {} needed", sigmas.len(), k - 1));
    }
    for (j, s) in sigmas.iter().enumerate() {
        let mut seen = vec![false; n];
        if s.len() != n || s.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return input(format!("sigma {j} is not a permutation of 0..{n}"));
        }
    }
    Ok(horizontal(h, sigmas, n))
}

fn horizontal(h: &PartiteGraph, sigmas: &[Vec<usize>], n: usize) -> Vec<usize> {
    let k = h.k();
    let mut t = vec![0; k];
    (0..n)
        .filter(|&i| {
            for (j, s) in sigmas.iter().enumerate() {
                t[j] = s[i];
            }
            t[k - 1] = i;
            h.has(&t)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermutationStats {
    pub samples: usize,
    /// |E(H)|/n^{k−1}.
    pub expectation: f64,
    pub mean: f64,
    pub std_error: f64,
    pub min: usize,
    pub max: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub within_three_se: bool,
}

/// Samples `samples` independent uniform permutation tuples.
pub fn permutation_statistics(h: &PartiteGraph, samples: usize, seed: u64) -> Result<PermutationStats> {
    let n = equal_size(h)?;
    if samples < 2 {
        return input("need at least two samples");
    }
    let k = h.k();
    let mut rng = rng_for(seed, streams::PERMUTATION);
    let mut sigmas: Vec<Vec<usize>> = vec![(0..n).collect(); k - 1];
    let mut histogram = BTreeMap::new();
    let mut values = Vec::with_capacity(samples);
    for _ in 0..samples {
        for s in &mut sigmas {
            s.shuffle(&mut rng);
        }
        let v = horizontal(h, &sigmas, n).len();
        *histogram.entry(v).or_insert(0) += 1;
        values.push(v as f64);
    }
    let m = samples as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let std_error = (var / m).sqrt();
    let expectation = h.num_edges() as f64 / (n as f64).powi(k as i32 - 1);
    Ok(PermutationStats {
        samples,
        expectation,
        mean,
        std_error,
        min: values.iter().map(|&v| v as usize).min().unwrap_or(0),
        max: values.iter().map(|&v| v as usize).max().unwrap_or(0),
        histogram,
        within_three_se: (mean - expectation).abs() <= 3.0 * std_error,
    })
}
