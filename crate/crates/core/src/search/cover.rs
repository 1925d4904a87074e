//! Exact cover by backtracking, and line spreads of (sections of) a space.

use super::{Budget, SearchBudget};
use crate::analysis::LineSet;
use crate::constructions::HyperplaneSection;
use crate::error::{Error, Result};
use crate::polar::PolarSpace;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CoverResult {
    /// Indices into the candidate list.
    pub cover: Option<Vec<usize>>,
    pub complete: bool,
    pub nodes: u64,
}

/// Finds subsets covering `0..universe` exactly once, choosing at each step
/// the uncovered element with the fewest candidates.
pub fn exact_cover(universe: usize, subsets: &[Vec<usize>], budget: &SearchBudget) -> CoverResult {
    let mut containing = vec![Vec::new(); universe];
    for (s, set) in subsets.iter().enumerate() {
        for &e in set {
            containing[e].push(s);
        }
    }
    let b = Budget::new(budget);
    let mut covered = vec![false; universe];
    let mut chosen = Vec::new();
    let found = rec(subsets, &containing, &mut covered, &mut chosen, &b);
    CoverResult { complete: found || !b.exhausted(), cover: found.then_some(chosen), nodes: b.nodes() }
}

fn rec(
    subsets: &[Vec<usize>],
    containing: &[Vec<usize>],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    b: &Budget,
) -> bool {
    if !b.tick() {
        return false;
    }
    let free = |s: usize, covered: &[bool]| subsets[s].iter().all(|&e| !covered[e]);
    let mut best: Option<(usize, usize)> = None;
    for e in (0..covered.len()).filter(|&e| !covered[e]) {
        let k = containing[e].iter().filter(|&&s| free(s, covered)).count();
        if best.is_none_or(|(_, bk)| k < bk) {
            best = Some((e, k));
            if k == 0 {
                break;
            }
        }
    }
    let Some((e, k)) = best else { return true };
    if k == 0 {
        return false;
    }
    for &s in &containing[e] {
        if !free(s, covered) {
            continue;
        }
        for &x in &subsets[s] {
            covered[x] = true;
        }
        chosen.push(s);
        if rec(subsets, containing, covered, chosen, b) {
            return true;
        }
        chosen.pop();
        for &x in &subsets[s] {
            covered[x] = false;
        }
        if b.stopped() {
            return false;
        }
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct SpreadSearch {
    pub lines: Option<LineSet>,
    pub complete: bool,
    pub nodes: u64,
}

/// A set of lines partitioning the points of the space, or of a section.
pub fn line_spread_search(
    space: &PolarSpace,
    section: Option<&HyperplaneSection>,
    budget: &SearchBudget,
) -> Result<SpreadSearch> {
    let points: Vec<usize> = match section {
        Some(s) => s.points(space),
        None => (0..space.num_points()).collect(),
    };
    let q1 = space.q() as usize + 1;
    if points.len() % q1 != 0 {
        return Err(Error::Precondition(format!("{} points cannot be partitioned into lines of size {q1}", points.len())));
    }
    let mut pos = vec![usize::MAX; space.num_points()];
    for (i, &p) in points.iter().enumerate() {
        pos[p] = i;
    }
    let lines: Vec<usize> = (0..space.num_lines())
        .filter(|&l| match section {
            Some(s) => s.contains_line(space, l),
            None => true,
        })
        .collect();
    let subsets: Vec<Vec<usize>> = lines.iter().map(|&l| space.line_points(l).iter().map(|&p| pos[p as usize]).collect()).collect();
    let r = exact_cover(points.len(), &subsets, budget);
    let lines = match r.cover {
        Some(c) => Some(LineSet::new(space, c.into_iter().map(|i| lines[i]))?.named("line spread")),
        None => None,
    };
    Ok(SpreadSearch { lines, complete: r.complete, nodes: r.nodes })
}
