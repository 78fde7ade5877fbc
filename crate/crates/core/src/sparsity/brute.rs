use alloc::vec::Vec;

use super::counts::{scan, CountReport};
use crate::graph::ColoredGraph;
use crate::{Error, Result};

/// Largest edge count accepted by the subset enumerations.
pub const BRUTE_FORCE_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `m' <= 2f - 1` on nonempty subsets.
    Laman,
    /// `m' <= 2f` on all subsets.
    TwoTwoTwo,
    /// `m' <= 2n' - 2`, and `m' <= 2n' - 3` when the `Z^2`-rank is 0.
    Ross,
}

impl Family {
    fn bound(self, r: &CountReport) -> i64 {
        match self {
            Family::Laman => r.bound232,
            Family::TwoTwoTwo => r.bound222,
            Family::Ross => 2 * r.vertices as i64 - 2 - i64::from(r.rank == 0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteVerdict {
    pub sparse: bool,
    /// The subset with the largest excess `m' - bound`; ties go to the
    /// smaller subset, then to the earlier one in enumeration order.
    pub worst_violation: Option<Vec<usize>>,
    pub excess: i64,
}

fn budget(graph: &ColoredGraph) -> Result<usize> {
    let m = graph.edge_count();
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::Budget { edges: m, limit: BRUTE_FORCE_LIMIT });
    }
    Ok(m)
}

fn members(mask: u32, m: usize) -> impl Iterator<Item = usize> {
    (0..m).filter(move |i| mask >> i & 1 == 1)
}

/// Checks the family's count on every nonempty edge subset.
pub fn brute_force_sparsity(graph: &ColoredGraph, family: Family) -> Result<BruteVerdict> {
    let m = budget(graph)?;
    let mut worst: Option<(i64, u32, u32)> = None;
    for mask in 1u32..(1u32 << m) {
        let r = scan(graph, members(mask, m));
        let excess = r.edges as i64 - family.bound(&r);
        if excess <= 0 {
            continue;
        }
        let size = mask.count_ones();
        let better = match worst {
            None => true,
            Some((e, s, _)) => excess > e || (excess == e && size < s),
        };
        if better {
            worst = Some((excess, size, mask));
        }
    }
    Ok(match worst {
        None => BruteVerdict { sparse: true, worst_violation: None, excess: 0 },
        Some((e, _, mask)) => {
            BruteVerdict { sparse: false, worst_violation: Some(members(mask, m).collect()), excess: e }
        }
    })
}

/// Rank of the whole edge set in `M_f v M_f`, from the union rank formula
/// `min over Y of |E - Y| + 2 f(Y)`.
pub fn brute_union_rank(graph: &ColoredGraph) -> Result<usize> {
    let m = budget(graph)?;
    let best = (0u32..(1u32 << m))
        .map(|mask| {
            let r = scan(graph, members(mask, m));
            m - r.edges + 2 * r.f as usize
        })
        .min()
        .unwrap_or(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_violation_is_three_collinear_loops() {
        let g = ColoredGraph::from_edges(1, [(0, 0, (1, 0)), (0, 0, (2, 0)), (0, 0, (3, 0)), (0, 0, (0, 1))])
            .unwrap();
        let v = brute_force_sparsity(&g, Family::TwoTwoTwo).unwrap();
        assert!(!v.sparse);
        assert_eq!(v.worst_violation.as_deref(), Some(&[0, 1, 2][..]));
        assert_eq!(brute_union_rank(&g).unwrap(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let g = ColoredGraph::from_edges(2, (0..23).map(|i| (0, 1, (i, 0)))).unwrap();
        assert!(matches!(brute_force_sparsity(&g, Family::Laman), Err(Error::Budget { .. })));
    }
}
