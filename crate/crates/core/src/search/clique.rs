//! Maximum cliques by branch and bound with a greedy colouring bound, and
//! packings of pairwise line-disjoint quadrangle sections.

use super::{Budget, SearchBudget};
use crate::analysis::LineSet;
use crate::constructions::{hyperplane_section_lines, HyperplaneSection, SectionKind};
use crate::error::{Error, Result};
use crate::polar::{Family, PolarSpace};
use serde::Serialize;

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

/// A maximum clique of the graph, with a completeness flag.
pub fn max_clique(adj: &[Vec<bool>], budget: &SearchBudget) -> (Vec<usize>, bool, u64) {
    let n = adj.len();
    let words = n.div_ceil(64);
    let rows: Vec<Bits> = adj
        .iter()
        .map(|r| {
            let mut b = vec![0u64; words];
            for (j, &x) in r.iter().enumerate() {
                if x {
                    set_bit(&mut b, j);
                }
            }
            b
        })
        .collect();
    let b = Budget::new(budget);
    let mut best = Vec::new();
    let mut cur = Vec::new();
    let cand: Vec<usize> = (0..n).collect();
    expand(&rows, &cand, &mut cur, &mut best, &b);
    (best, !b.exhausted(), b.nodes())
}

/// Greedy colouring of `cand`; returns vertices in colour order with their colour.
fn colour(rows: &[Bits], cand: &[usize]) -> Vec<(usize, usize)> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match classes.iter_mut().find(|c| c.iter().all(|&u| !bit(&rows[v], u))) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes.into_iter().enumerate().flat_map(|(k, c)| c.into_iter().map(move |v| (v, k + 1))).collect()
}

fn expand(rows: &[Bits], cand: &[usize], cur: &mut Vec<usize>, best: &mut Vec<usize>, b: &Budget) {
    if !b.tick() {
        return;
    }
    let order = colour(rows, cand);
    let mut remaining: Vec<usize> = cand.to_vec();
    for &(v, c) in order.iter().rev() {
        if cur.len() + c <= best.len() {
            return;
        }
        cur.push(v);
        let next: Vec<usize> = remaining.iter().copied().filter(|&u| bit(&rows[v], u)).collect();
        if next.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand(rows, &next, cur, best, b);
        }
        cur.pop();
        remaining.retain(|&u| u != v);
        if b.stopped() {
            return;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Packing {
    pub size: usize,
    pub sections: Vec<HyperplaneSection>,
    /// Union of the section line sets.
    pub lines: LineSet,
    /// Number of quadrangle sections considered.
    pub candidates: usize,
    pub complete: bool,
    pub nodes: u64,
}

/// Largest family of pairwise line-disjoint quadrangle sections of `O+(6, q)`.
pub fn disjoint_section_packing(space: &PolarSpace, budget: &SearchBudget) -> Result<Packing> {
    if space.family() != Family::O6Plus {
        return Err(Error::Precondition("section packings are defined for O+(6, q)".into()));
    }
    let sections = HyperplaneSection::all_of_kind(space, SectionKind::Quadrangle, None)?;
    let sets: Vec<LineSet> = sections.iter().map(|s| hyperplane_section_lines(space, s)).collect::<Result<_>>()?;
    let adj: Vec<Vec<bool>> = (0..sets.len())
        .map(|i| (0..sets.len()).map(|j| i != j && sets[i].is_disjoint(&sets[j])).collect())
        .collect();
    let (clique, complete, nodes) = max_clique(&adj, budget);
    let mut lines = LineSet::empty(space);
    for &i in &clique {
        lines = lines.union(&sets[i]);
    }
    Ok(Packing {
        size: clique.len(),
        sections: clique.iter().map(|&i| sections[i].clone()).collect(),
        lines: lines.named("section packing"),
        candidates: sets.len(),
        complete,
        nodes,
    })
}
