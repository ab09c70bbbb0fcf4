use itertools::Itertools;

use crate::cycle::TightCycle;
use crate::error::{Error, Result};
use crate::hypergraph::ColouredKGraph;

pub const ENUMERATE_MAX_N: usize = 10;

/// Every tight cycle of the given length, canonical and sorted. Plain brute
/// force over vertex subsets and orderings; shares no code with the search.
pub fn enumerate_tight_cycles(h: &ColouredKGraph, length: usize) -> Result<Vec<TightCycle>> {
    if h.k() != 3 || h.n() > ENUMERATE_MAX_N {
        return Err(Error::SizeGuard(format!(
            "enumeration is limited to k = 3 and n <= {ENUMERATE_MAX_N} (got k = {}, n = {})",
            h.k(),
            h.n()
        )));
    }
    let k = h.k();
    let mut out = Vec::new();
    if length < k + 1 || length > h.n() {
        return Ok(out);
    }
    for set in (0..h.n()).combinations(length) {
        let first = set[0];
        for rest in set[1..].iter().copied().permutations(length - 1) {
            if rest[0] > rest[length - 2] {
                continue;
            }
            let mut order = Vec::with_capacity(length);
            order.push(first);
            order.extend(rest);
            let ok = (0..length).all(|i| {
                let w = [order[i], order[(i + 1) % length], order[(i + 2) % length]];
                h.has_edge(&w)
            });
            if ok {
                out.push(TightCycle::new(order).canonical());
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
