use serde::{Deserialize, Serialize};

use super::search::{find_tight_cycle_within, SearchOutcome};
use crate::cycle::TightCycle;
use crate::error::{assertion, input, Result};
use crate::hypergraph::{ColouredKGraph, Colour, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCycle {
    pub order: Vec<Vertex>,
    pub colour: Option<Colour>,
    pub degenerate: bool,
}

impl CoverCycle {
    pub fn as_cycle(&self) -> TightCycle {
        if self.degenerate {
            TightCycle::degenerate(self.order.clone())
        } else {
            TightCycle::new(self.order.clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverStep {
    /// Colour with the most edges on the remaining vertices.
    pub preferred: Colour,
    pub colour: Colour,
    pub length: usize,
    /// e(colour on remaining) / C(remaining, k) before the removal.
    pub density_before: f64,
    /// Colours tried before this one yielded a cycle.
    pub fallbacks: usize,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub cycles: Vec<CoverCycle>,
    pub leftover: Vec<Vertex>,
    pub steps: Vec<CoverStep>,
    pub epsilon: f64,
    /// Some search ran out of budget; the report is partial.
    pub inconclusive: bool,
    /// 2r·ln(1/ε), for comparison only.
    pub reference_count: f64,
}

impl CoverReport {
    /// The cover completed to a partition by chopping the leftover into
    /// degenerate cycles of at most `k` vertices.
    pub fn to_partition(&self, k: usize) -> Vec<CoverCycle> {
        let mut out = self.cycles.clone();
        for chunk in self.leftover.chunks(k) {
            out.push(CoverCycle { order: chunk.to_vec(), colour: None, degenerate: true });
        }
        out
    }

    pub fn partition_size(&self, k: usize) -> usize {
        self.cycles.len() + self.leftover.len().div_ceil(k)
    }
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Repeatedly removes a longest monochromatic tight cycle, of length
/// divisible by `k`, in the colour with the most edges on what remains.
/// `budget` bounds the nodes of each individual search.
pub fn greedy_mono_cover(h: &ColouredKGraph, epsilon: f64, budget: u64) -> Result<CoverReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return input(format!("epsilon must lie in (0, 1), got {epsilon}"));
    }
    let n = h.n();
    let k = h.k();
    let mut allowed = vec![true; n];
    let mut remaining = n;
    let mut report = CoverReport {
        cycles: Vec::new(),
        leftover: Vec::new(),
        steps: Vec::new(),
        epsilon,
        inconclusive: false,
        reference_count: 2.0 * h.r() as f64 * (1.0 / epsilon).ln(),
    };
    'outer: while remaining as f64 > epsilon * n as f64 {
        let mut counts = vec![0usize; h.r()];
        for (e, c) in h.edges() {
            if e.iter().all(|&v| allowed[v]) {
                counts[c] += 1;
            }
        }
        let mut order: Vec<Colour> = (0..h.r()).filter(|&c| counts[c] > 0).collect();
        order.sort_by_key(|&c| (std::cmp::Reverse(counts[c]), c));
        let top = remaining / k * k;
        for (fallbacks, &c) in order.iter().enumerate() {
            let mut nodes = 0;
            let mut length = top;
            while length > k {
                let res = find_tight_cycle_within(h, &allowed, length, Some(c), budget)?;
                nodes += res.nodes;
                match res.outcome {
                    SearchOutcome::Found(cycle) => {
                        if cycle.len() < k + 1 {
                            return assertion("cover step removed fewer than k + 1 vertices");
                        }
                        for &v in &cycle.order {
                            if !allowed[v] {
                                return assertion(format!("cover reused vertex {v}"));
                            }
                            allowed[v] = false;
                        }
                        report.steps.push(CoverStep {
                            preferred: order[0],
                            colour: c,
                            length,
                            density_before: counts[c] as f64 / binom(remaining, k),
                            fallbacks,
                            nodes,
                        });
                        remaining -= cycle.len();
                        report.cycles.push(CoverCycle { order: cycle.order, colour: Some(c), degenerate: false });
                        continue 'outer;
                    }
                    SearchOutcome::BudgetExhausted => {
                        report.inconclusive = true;
                        break 'outer;
                    }
                    SearchOutcome::NotFound => length -= k,
                }
            }
        }
        break;
    }
    report.leftover = (0..n).filter(|&v| allowed[v]).collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::verify_mono_cycle;
    use crate::rng::rng_for;
    use crate::testutil::random_kgraph;

    fn check_report(h: &ColouredKGraph, rep: &CoverReport) {
        let mut seen = vec![false; h.n()];
        for c in &rep.cycles {
            assert!(!c.degenerate);
            assert!(verify_mono_cycle(h, &c.as_cycle(), c.colour).ok);
            assert_eq!(c.order.len() % h.k(), 0);
            for &v in &c.order {
                assert!(!seen[v]);
                seen[v] = true;
            }
        }
        let left: Vec<Vertex> = (0..h.n()).filter(|&v| !seen[v]).collect();
        assert_eq!(left, rep.leftover);
        assert_eq!(rep.steps.len(), rep.cycles.len());
    }

    #[test]
    fn monochromatic_k6() {
        let h = ColouredKGraph::complete(3, 6, 1, |_| 0).unwrap();
        let rep = greedy_mono_cover(&h, 0.1, 1_000_000).unwrap();
        assert_eq!(rep.cycles.len(), 1);
        assert_eq!(rep.cycles[0].order.len(), 6);
        assert!(rep.leftover.is_empty());
        check_report(&h, &rep);
    }

    #[test]
    fn picks_colour_with_more_edges() {
        // colour 0 = edges through vertex 0; on 7 vertices that is 15 of 35
        let h = ColouredKGraph::complete(3, 7, 2, |e| usize::from(e[0] != 0)).unwrap();
        assert_eq!(h.colour_counts(), vec![15, 20]);
        let rep = greedy_mono_cover(&h, 0.1, 1_000_000).unwrap();
        assert_eq!(rep.steps[0].preferred, 1);
        assert_eq!(rep.steps[0].colour, 1);
    }

    #[test]
    fn star_colour_on_k6_ties() {
        // both colours have 10 edges; the tie goes to colour 0, and neither
        // class holds a tight cycle of length 6
        let h = ColouredKGraph::complete(3, 6, 2, |e| usize::from(e[0] != 0)).unwrap();
        assert_eq!(h.colour_counts(), vec![10, 10]);
        let rep = greedy_mono_cover(&h, 0.1, 1_000_000).unwrap();
        assert!(rep.cycles.is_empty());
        assert_eq!(rep.leftover.len(), 6);
    }

    #[test]
    fn falls_back_when_preferred_colour_has_no_cycle() {
        // colour 0: the star at 0 plus a linear Pasch configuration, 19 edges
        // and no two consecutive windows off vertex 0
        let pasch = [[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]];
        let h = ColouredKGraph::complete(3, 7, 2, |e| usize::from(e[0] != 0 && !pasch.iter().any(|p| p == e))).unwrap();
        assert_eq!(h.colour_counts(), vec![19, 16]);
        let rep = greedy_mono_cover(&h, 0.1, 1_000_000).unwrap();
        assert_eq!(rep.steps[0].preferred, 0);
        assert_eq!(rep.steps[0].colour, 1);
        assert_eq!(rep.steps[0].fallbacks, 1);
        check_report(&h, &rep);
    }

    #[test]
    fn random_two_colouring_k12() {
        let mut rng = rng_for(5, 0);
        let h = random_kgraph(&mut rng, 3, 12, 1.0, 2);
        let rep = greedy_mono_cover(&h, 0.25, 2_000_000).unwrap();
        assert!(!rep.inconclusive);
        check_report(&h, &rep);
        assert!(rep.to_partition(3).iter().map(|c| c.order.len()).sum::<usize>() == 12);
    }

    #[test]
    fn rejects_bad_epsilon() {
        let h = ColouredKGraph::complete(3, 6, 1, |_| 0).unwrap();
        assert!(greedy_mono_cover(&h, 0.0, 10).is_err());
        assert!(greedy_mono_cover(&h, 1.0, 10).is_err());
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let mut rng = rng_for(8, 0);
        let h = random_kgraph(&mut rng, 3, 10, 0.7, 2);
        let rep = greedy_mono_cover(&h, 0.05, 1).unwrap();
        assert!(rep.inconclusive);
        check_report(&h, &rep);
    }
}
