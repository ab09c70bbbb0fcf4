use crate::error::{input, Result};
use crate::hypergraph::ColouredKGraph;

/// Smallest admissible class sizes: each is (k−1)·(sum so far) + 1.
pub fn default_sizes(k: usize, r: usize) -> Vec<usize> {
    let mut sizes = Vec::with_capacity(r);
    let mut prefix = 0;
    for _ in 0..r {
        let s = (k - 1) * prefix + 1;
        sizes.push(s);
        prefix += s;
    }
    sizes
}

/// Complete k-graph on classes V_1..V_r (consecutive ids), each edge
/// coloured by the lowest class it meets.
pub fn lower_bound_instance(k: usize, r: usize, sizes: Option<Vec<usize>>) -> Result<ColouredKGraph> {
    if k < 2 || r < 1 {
        return input(format!("need k >= 2 and r >= 1 (got k = {k}, r = {r})"));
    }
    let sizes = sizes.unwrap_or_else(|| default_sizes(k, r));
    if sizes.len() != r {
        return input(format!("{} class sizes given for r = {r}", sizes.len()));
    }
    let mut prefix = 0;
    for (i, &s) in sizes.iter().enumerate() {
        if s <= (k - 1) * prefix || s == 0 {
            return input(format!(
                "|V_{}| = {s} violates |V_i| > (k-1) * (|V_1| + .. + |V_(i-1)|) = {}",
                i + 1,
                (k - 1) * prefix
            ));
        }
        prefix += s;
    }
    let mut class = Vec::with_capacity(prefix);
    for (i, &s) in sizes.iter().enumerate() {
        class.extend(std::iter::repeat_n(i, s));
    }
    // edges are sorted, so the least vertex lies in the lowest class
    ColouredKGraph::complete(k, prefix, r, |e| class[e[0]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::min_mono_partition;

    #[test]
    fn default_size_sequences() {
        assert_eq!(default_sizes(3, 3), vec![1, 3, 9]);
        assert_eq!(default_sizes(2, 3), vec![1, 2, 4]);
    }

    #[test]
    fn oracle_minimum_equals_r() {
        for (k, r, sizes) in [(3, 2, vec![1, 3]), (2, 2, vec![1, 2]), (2, 3, vec![1, 2, 4]), (3, 2, vec![2, 5]), (2, 2, vec![3, 6])] {
            let h = lower_bound_instance(k, r, Some(sizes.clone())).unwrap();
            assert_eq!(min_mono_partition(&h, None).unwrap().minimum, Some(r), "k={k} r={r} sizes={sizes:?}");
        }
    }

    #[test]
    fn single_colour_is_one_cycle() {
        let h = lower_bound_instance(3, 1, Some(vec![7])).unwrap();
        assert_eq!(h.colour_counts(), vec![35]);
        assert_eq!(min_mono_partition(&h, None).unwrap().minimum, Some(1));
    }

    #[test]
    fn rejects_small_classes() {
        let err = lower_bound_instance(3, 2, Some(vec![2, 4])).unwrap_err();
        assert!(err.to_string().contains("|V_2| = 4"));
        assert!(lower_bound_instance(3, 2, Some(vec![0, 4])).is_err());
        assert!(lower_bound_instance(3, 2, Some(vec![1])).is_err());
    }
}
