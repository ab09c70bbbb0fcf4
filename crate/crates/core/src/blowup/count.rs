//! Counting 2-blow-ups K_k^(k)(2) of single edges in k-partite k-graphs.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::partite::PartiteGraph;

/// Above this many indicator evaluations the f(t) chain is skipped.
const CHAIN_MAX_WORK: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupCount {
    pub k: usize,
    pub n: usize,
    pub edges: usize,
    /// Copies as vertex sets: one unordered pair per class.
    pub copies: u128,
    /// Copies with an ordered pair per class, 2^k per copy.
    pub ordered: u128,
    /// e^{2^k}/n^{k·2^k−2k} − k·n^{2k−1}, the bound on `ordered`.
    pub cs_bound: f64,
    pub bound_holds: bool,
    /// f(0), …, f(k): ordered pair-tuples (repeats allowed) on the last t
    /// classes with all 2^t combinations present, summed over the rest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<String>>,
    /// n^{2^t k−k−t} f(t) ≥ f(0)^{2^t} for every t, when the chain was computed.
    pub chain_holds: Option<bool>,
}

pub(crate) fn equal_size(h: &PartiteGraph) -> Result<usize> {
    match h.equal_classes() {
        Some(n) => Ok(n),
        None => input(format!("classes must have equal sizes, got {:?}", h.sizes())),
    }
}

/// Number of z in the last class completing every combination of the given
/// pairs (one per earlier class) to an edge.
fn common_last(h: &PartiteGraph, pairs: &[(usize, usize)], n: usize) -> usize {
    let k = h.k();
    let mut tuple = vec![0; k];
    (0..n)
        .filter(|&z| {
            tuple[k - 1] = z;
            (0..1usize << (k - 1)).all(|mask| {
                for (c, &(a, b)) in pairs.iter().enumerate() {
                    tuple[c] = if mask >> c & 1 == 1 { b } else { a };
                }
                h.has(&tuple)
            })
        })
        .count()
}

/// Every choice of one unordered pair in each of the first k−1 classes.
pub(crate) fn pair_tuples(k: usize, n: usize) -> Box<dyn Iterator<Item = Vec<(usize, usize)>>> {
    if k == 1 {
        return Box::new(std::iter::once(Vec::new()));
    }
    Box::new((0..k - 1).map(move |_| (0..n).tuple_combinations::<(usize, usize)>()).multi_cartesian_product())
}

pub fn count_k2_blowups(h: &PartiteGraph) -> Result<BlowupCount> {
    let n = equal_size(h)?;
    let k = h.k();
    let copies: u128 = pair_tuples(k, n)
        .map(|pairs| {
            let c = common_last(h, &pairs, n) as u128;
            c * c.saturating_sub(1) / 2
        })
        .sum();
    let ordered = copies << k;
    let edges = h.num_edges();

    // exact test of ordered ≥ e^{2^k}/n^{E} − k n^{2k−1} with E = k·2^k − 2k
    let two_k = 1u32 << k;
    let big_n = BigUint::from(n);
    let exp = k as u32 * two_k - 2 * k as u32;
    let lhs = (BigUint::from(ordered) + BigUint::from(k) * big_n.pow(2 * k as u32 - 1)) * big_n.pow(exp);
    let e_pow = BigUint::from(edges).pow(two_k);
    let bound_holds = lhs >= e_pow;
    let cs_bound = if n == 0 {
        0.0
    } else {
        let main = e_pow.to_f64().unwrap_or(f64::INFINITY) / big_n.pow(exp).to_f64().unwrap_or(f64::INFINITY);
        main - (k as f64) * (n as f64).powi(2 * k as i32 - 1)
    };

    let work: u128 = (0..=k).map(|t| (n as u128).pow((k + t) as u32) << t).sum();
    let (chain, chain_holds) = if n > 0 && work <= CHAIN_MAX_WORK {
        let f: Vec<BigUint> = (0..=k).map(|t| BigUint::from(f_value(h, n, t))).collect();
        let holds = (1..=k).all(|t| {
            let scale = big_n.pow((1u32 << t) * k as u32 - k as u32 - t as u32);
            &scale * &f[t] >= f[0].pow(1u32 << t)
        });
        (Some(f.iter().map(|v| v.to_string()).collect()), Some(holds))
    } else {
        (None, None)
    };
    Ok(BlowupCount { k, n, edges, copies, ordered, cs_bound, bound_holds, chain, chain_holds })
}

/// f(t) by direct enumeration.
fn f_value(h: &PartiteGraph, n: usize, t: usize) -> u128 {
    let k = h.k();
    let free = k - t;
    let mut total = 0u128;
    let mut tuple = vec![0; k];
    let prefix_count = n.pow(free as u32);
    let pair_count = n.pow(2 * t as u32);
    for p in 0..prefix_count {
        let mut rest = p;
        for c in (0..free).rev() {
            tuple[c] = rest % n;
            rest /= n;
        }
        for q in 0..pair_count {
            // digits of q: (x_s, y_s) for s in the last t classes
            let mut digits = vec![0; 2 * t];
            let mut rest = q;
            for d in digits.iter_mut().rev() {
                *d = rest % n;
                rest /= n;
            }
            let all = (0..1usize << t).all(|mask| {
                for s in 0..t {
                    tuple[free + s] = digits[2 * s + (mask >> s & 1)];
                }
                h.has(&tuple)
            });
            total += u128::from(all);
        }
    }
    total
}

/// Number of copies through each edge cell (indexed as in the partite graph).
pub fn copies_per_edge(h: &PartiteGraph) -> Result<Vec<usize>> {
    let mut out = vec![0usize; h.num_cells()];
    for_each_copy(h, |cells| {
        for &c in cells {
            out[c] += 1;
        }
    })?;
    Ok(out)
}

/// Calls `visit` with the 2^k cell indices of every copy.
pub(crate) fn for_each_copy(h: &PartiteGraph, mut visit: impl FnMut(&[usize])) -> Result<()> {
    let n = equal_size(h)?;
    let k = h.k();
    let mut tuple = vec![0; k];
    let mut cells = vec![0; 1 << k];
    for pairs in pair_tuples(k, n) {
        let zs: Vec<usize> = (0..n)
            .filter(|&z| {
                tuple[k - 1] = z;
                (0..1usize << (k - 1)).all(|mask| {
                    for (c, &(a, b)) in pairs.iter().enumerate() {
                        tuple[c] = if mask >> c & 1 == 1 { b } else { a };
                    }
                    h.has(&tuple)
                })
            })
            .collect();
        for (&z1, &z2) in zs.iter().tuple_combinations() {
            for (mask, cell) in cells.iter_mut().enumerate() {
                for (c, &(a, b)) in pairs.iter().enumerate() {
                    tuple[c] = if mask >> c & 1 == 1 { b } else { a };
                }
                tuple[k - 1] = if mask >> (k - 1) & 1 == 1 { z2 } else { z1 };
                *cell = h.index_of(&tuple);
            }
            visit(&cells);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{rng_for, streams};
    use rand::Rng;

    fn binomial2(n: usize) -> u128 {
        let n = n as u128;
        n * n.saturating_sub(1) / 2
    }

    pub(crate) fn random_partite(k: usize, n: usize, p: f64, seed: u64) -> PartiteGraph {
        let mut rng = rng_for(seed, streams::GENERATOR);
        let mut h = PartiteGraph::empty(vec![n; k], 1).unwrap();
        for idx in 0..h.num_cells() {
            if rng.gen_bool(p) {
                h.set_index(idx, Some(0));
            }
        }
        h
    }

    /// Unordered copies by checking every choice of a pair in every class.
    fn brute_force(h: &PartiteGraph) -> u128 {
        let k = h.k();
        let n = h.sizes()[0];
        let per_class: Vec<Vec<(usize, usize)>> = (0..k).map(|_| (0..n).tuple_combinations().collect()).collect();
        per_class
            .into_iter()
            .multi_cartesian_product()
            .filter(|pairs: &Vec<(usize, usize)>| {
                (0..1usize << k).all(|mask| {
                    let t: Vec<usize> = pairs.iter().enumerate().map(|(c, &(a, b))| if mask >> c & 1 == 1 { b } else { a }).collect();
                    h.has(&t)
                })
            })
            .count() as u128
    }

    #[test]
    fn complete_hosts() {
        for k in 1..=3usize {
            for n in 2..=4usize {
                let h = PartiteGraph::complete(vec![n; k], 1, |_| 0).unwrap();
                let c = count_k2_blowups(&h).unwrap();
                assert_eq!(c.copies, binomial2(n).pow(k as u32), "k {k} n {n}");
                assert!(c.bound_holds);
            }
        }
        let k3n3 = count_k2_blowups(&PartiteGraph::complete(vec![3; 3], 1, |_| 0).unwrap()).unwrap();
        assert_eq!(k3n3.copies, 27);
        for k in 1..=4 {
            assert_eq!(count_k2_blowups(&PartiteGraph::complete(vec![2; k], 1, |_| 0).unwrap()).unwrap().copies, 1);
        }
    }

    #[test]
    fn random_hosts_match_brute_force_and_bounds() {
        for seed in 0..40u64 {
            let k = 2 + (seed as usize % 2);
            let h = random_partite(k, 4, 0.7, seed);
            let c = count_k2_blowups(&h).unwrap();
            assert_eq!(c.copies, brute_force(&h), "seed {seed}");
            assert!(c.bound_holds, "seed {seed}");
            assert_eq!(c.chain_holds, Some(true), "seed {seed}");
            let f = c.chain.as_ref().unwrap();
            // ordered distinct copies ≥ f(k) − k n^{2k−1}
            let fk: i128 = f[k].parse().unwrap();
            assert!(c.ordered as i128 >= fk - (k as i128) * 4i128.pow(2 * k as u32 - 1));
            assert_eq!(f[0], c.edges.to_string());
        }
    }

    #[test]
    fn seed_nine_instance() {
        let h = random_partite(3, 4, 0.7, 9);
        let c = count_k2_blowups(&h).unwrap();
        assert_eq!(c.copies, brute_force(&h));
        assert!(c.bound_holds);
    }

    #[test]
    fn per_edge_counts_sum_to_2k_times_copies() {
        let h = random_partite(3, 4, 0.8, 3);
        let per = copies_per_edge(&h).unwrap();
        let c = count_k2_blowups(&h).unwrap();
        assert_eq!(per.iter().sum::<usize>() as u128, c.copies * 8);
        for (idx, &p) in per.iter().enumerate() {
            if !h.has_index(idx) {
                assert_eq!(p, 0);
            }
        }
    }

    #[test]
    fn unequal_classes_rejected() {
        let h = PartiteGraph::complete(vec![2, 3], 1, |_| 0).unwrap();
        assert!(count_k2_blowups(&h).is_err());
    }
}
