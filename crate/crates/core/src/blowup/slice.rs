//! Splitting an r-coloured complete k-partite graph into r colour-dense
//! sub-blocks: the last class by majority colour, the others at random.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{failure, input, Result};
use crate::hypergraph::Colour;
use crate::partite::PartiteGraph;
use crate::rng::{rng_for, streams};

const RETRIES: usize = 100;

/// One density record: vertex `x` of part `j` of the last class has
/// `count` colour-j edges into X_1^j × … × X_{k−1}^j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityRecord {
    pub j: Colour,
    pub x: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicedPartition {
    pub k: usize,
    pub r: usize,
    /// |X_1| = … = |X_{k−1}|.
    pub big_n: usize,
    /// floor((1 − 1/(4kr^k))·N/r), the size of every X_i^j with j ≥ 1.
    pub part_size: usize,
    /// `parts[i][0]` is the leftover X_i^0 and `parts[i][j + 1]` is X_i^j
    /// (class indices) for i < k − 1.
    pub parts: Vec<Vec<Vec<usize>>>,
    /// `last[j]` = X_k^j.
    pub last: Vec<Vec<usize>>,
    pub records: Vec<DensityRecord>,
    /// Attempt (1-based) that met every density bound.
    pub attempts: usize,
}

impl SlicedPartition {
    /// |X_1^j|⋯|X_{k−1}^j|, the product the 1/(2r) bound scales.
    pub fn block_size(&self) -> u128 {
        (self.part_size as u128).pow((self.k - 1) as u32)
    }
}

/// floor((1 − 1/(4kr^k))·N/r) computed exactly.
pub fn mandated_part_size(k: usize, r: usize, big_n: usize) -> usize {
    let q = 4 * k as u128 * (r as u128).pow(k as u32);
    ((big_n as u128 * (q - 1)) / (q * r as u128)) as usize
}

fn majority_colours(h: &PartiteGraph) -> Vec<Colour> {
    let k = h.k();
    let last = h.sizes()[k - 1];
    let mut counts = vec![vec![0usize; h.r()]; last];
    for idx in 0..h.num_cells() {
        if let Some(c) = h.colour_at_index(idx) {
            counts[idx % last][c] += 1;
        }
    }
    counts
        .iter()
        .map(|row| {
            let best = row.iter().copied().max().unwrap_or(0);
            row.iter().position(|&c| c == best).unwrap_or(0)
        })
        .collect()
}

fn count_block(h: &PartiteGraph, blocks: &[&[usize]], x: usize, j: Colour) -> usize {
    let k = h.k();
    let mut t = vec![0; k];
    t[k - 1] = x;
    let mut count = 0;
    let mut pos = vec![0; k - 1];
    if blocks.iter().any(|b| b.is_empty()) {
        return 0;
    }
    loop {
        for (i, &p) in pos.iter().enumerate() {
            t[i] = blocks[i][p];
        }
        if h.colour(&t) == Some(j) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k - 1 {
                return count;
            }
            pos[i] += 1;
            if pos[i] < blocks[i].len() {
                break;
            }
            pos[i] = 0;
            i += 1;
        }
    }
}

fn records_for(h: &PartiteGraph, parts: &[Vec<Vec<usize>>], last: &[Vec<usize>]) -> Vec<DensityRecord> {
    let mut out = Vec::new();
    for (j, xs) in last.iter().enumerate() {
        let blocks: Vec<&[usize]> = parts.iter().map(|p| p[j + 1].as_slice()).collect();
        for &x in xs {
            out.push(DensityRecord { j, x, count: count_block(h, &blocks, x, j) });
        }
    }
    out
}

/// Deficits `(j, x, count, needed)` of records below the 1/(2r) bound.
fn deficits(records: &[DensityRecord], block: u128, r: usize) -> Vec<(Colour, usize, usize, f64)> {
    records
        .iter()
        .filter(|rec| (rec.count as u128) * 2 * (r as u128) < block)
        .map(|rec| (rec.j, rec.x, rec.count, block as f64 / (2 * r) as f64))
        .collect()
}

/// Majority split of the last class, then up to 100 seeded random
/// r-partitions of the other classes trimmed to the mandated size. Each
/// attempt shuffles a class and cuts r consecutive blocks, which draws the
/// trimmed parts from the same distribution as independent uniform
/// assignment conditioned on every part being large enough.
pub fn colour_slice(h: &PartiteGraph, seed: u64) -> Result<SlicedPartition> {
    let k = h.k();
    let r = h.r();
    if k < 2 || r == 0 {
        return input("colour slicing needs k ≥ 2 and at least one colour");
    }
    let big_n = h.sizes()[0];
    if h.sizes()[..k - 1].iter().any(|&s| s != big_n) || h.sizes()[k - 1] > big_n {
        return input(format!("classes {:?}: the first k − 1 must be equal and the last no larger", h.sizes()));
    }
    if h.num_edges() != h.num_cells() {
        return input("colour slicing needs a complete coloured host");
    }
    let part_size = mandated_part_size(k, r, big_n);
    let majority = majority_colours(h);
    let mut last = vec![Vec::new(); r];
    for (x, &c) in majority.iter().enumerate() {
        last[c].push(x);
    }
    let block = (part_size as u128).pow((k - 1) as u32);
    let mut rng = rng_for(seed, streams::SLICE);
    let mut best: Option<(usize, Vec<(Colour, usize, usize, f64)>)> = None;
    for attempt in 1..=RETRIES {
        let mut parts = Vec::with_capacity(k - 1);
        for _ in 0..k - 1 {
            let mut order: Vec<usize> = (0..big_n).collect();
            order.shuffle(&mut rng);
            let mut split: Vec<Vec<usize>> = (0..r).map(|j| order[j * part_size..(j + 1) * part_size].to_vec()).collect();
            split.insert(0, order[r * part_size..].to_vec());
            for part in &mut split {
                part.sort_unstable();
            }
            parts.push(split);
        }
        let records = records_for(h, &parts, &last);
        let bad = deficits(&records, block, r);
        if bad.is_empty() {
            return Ok(SlicedPartition { k, r, big_n, part_size, parts, last, records, attempts: attempt });
        }
        if best.as_ref().is_none_or(|(_, b)| bad.len() < b.len()) {
            best = Some((attempt, bad));
        }
    }
    let (attempt, bad) = best.expect("at least one attempt");
    let list: Vec<String> = bad.iter().map(|(j, x, c, need)| format!("(j={j}, x={x}): {c} < {need:.2}")).collect();
    failure(
        "colour slice",
        format!("no attempt met the density bound; best attempt {attempt} fails at {}", list.join(", ")),
    )
}

/// Re-derives every SlicedPartition invariant from `h`.
pub fn check_sliced_partition(h: &PartiteGraph, p: &SlicedPartition) -> std::result::Result<(), String> {
    let k = h.k();
    if p.k != k || p.r != h.r() || p.parts.len() + 1 != k || p.last.len() != p.r {
        return Err("shape does not match the host".into());
    }
    if p.part_size != mandated_part_size(k, p.r, p.big_n) {
        return Err(format!("part size {} is not the mandated floor", p.part_size));
    }
    for (i, split) in p.parts.iter().enumerate() {
        if split.len() != p.r + 1 {
            return Err(format!("class {i} has {} parts", split.len()));
        }
        for (j, part) in split.iter().enumerate().skip(1) {
            if part.len() != p.part_size {
                return Err(format!("X_{i}^{} has {} vertices", j - 1, part.len()));
            }
        }
        let mut all: Vec<usize> = split.iter().flatten().copied().collect();
        all.sort_unstable();
        if all != (0..h.sizes()[i]).collect::<Vec<_>>() {
            return Err(format!("parts of class {i} are not a partition"));
        }
    }
    let mut all: Vec<usize> = p.last.iter().flatten().copied().collect();
    all.sort_unstable();
    if all != (0..h.sizes()[k - 1]).collect::<Vec<_>>() {
        return Err("parts of the last class are not a partition".into());
    }
    let records = records_for(h, &p.parts, &p.last);
    if records != p.records {
        return Err("recorded edge counts differ from a recount".into());
    }
    if let Some((j, x, c, need)) = deficits(&records, p.block_size(), p.r).first() {
        return Err(format!("(j={j}, x={x}) has {c} edges, needs {need:.2}"));
    }
    Ok(())
}
