//! Regular-set enumeration, support feasibility probes and the census of
//! regular sets in small spaces.

use super::cover::exact_cover;
use super::engine::{run, Model, Targets};
use super::span::{span_search, SpanModel};
use super::SearchBudget;
use crate::algebra::rational::{big, Rational};
use crate::analysis::{
    degree_table, eigenspace_support, inner_distribution, plane_profile, regular_set_check, support_of,
    weighted_inner_distribution, LineSet,
};
use crate::constructions::{
    hyperplane_section_lines, point_pencil, weighted_pencil, HyperplaneSection, PencilMode, SectionKind,
};
use crate::error::{Error, Result};
use crate::polar::{Eigenspace, Family, PolarSpace};
use crate::scheme::SchemeTables;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::BTreeMap;

const SPLIT_DEPTH: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct RegularSearch {
    pub eigenspace: Eigenspace,
    pub size: usize,
    pub sets: Vec<LineSet>,
    /// True iff the search space was exhausted within the budget.
    pub complete: bool,
    pub nodes: u64,
}

/// All regular sets of size `size` in `<j> + V_j`.
pub fn enumerate_regular_sets(
    space: &PolarSpace,
    tables: &SchemeTables,
    j: Eigenspace,
    size: usize,
    budget: &SearchBudget,
) -> Result<RegularSearch> {
    let n = space.num_lines();
    if size == 0 || size >= n {
        return Err(Error::NotProperSubset { size, n });
    }
    let d = degree_table(tables, j, size)
        .ok_or_else(|| Error::Precondition(format!("no integral degree table for size {size} in V{}", j.label())))?;
    let targets = Targets::Regular { inside: to_i64(&d.inside), outside: to_i64(&d.outside) };
    let model = Model::new(space, size, targets);
    let (found, complete, nodes) = run(&model, budget, SPLIT_DEPTH);
    let mut sets = Vec::with_capacity(found.len());
    for f in found {
        let y = LineSet::new(space, f.into_iter().map(|x| x as usize))?;
        let v = regular_set_check(space, tables, &y)?;
        if v.eigenspace != Some(j) {
            return Err(Error::Consistency(format!("search returned a set with support {:?}", v.support)));
        }
        sets.push(y);
    }
    Ok(RegularSearch { eigenspace: j, size, sets, complete, nodes })
}

fn to_i64(v: &[i128; 5]) -> [i64; 5] {
    v.map(|x| x as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeVerdict {
    Witness,
    None,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub verdict: ProbeVerdict,
    pub witness: Option<LineSet>,
    /// Why `None` was decided without searching, if it was.
    pub reason: Option<String>,
    pub nodes: u64,
}

/// Searches for `Y` of the given size with eigenspace support inside `s`.
pub fn feasibility_probe(
    space: &PolarSpace,
    tables: &SchemeTables,
    s: &[Eigenspace],
    size: usize,
    budget: &SearchBudget,
) -> Result<ProbeResult> {
    if s.contains(&Eigenspace::V00) {
        return Err(Error::InvalidInput("the support lives in the nontrivial eigenspaces".into()));
    }
    let n = space.num_lines();
    if size > n {
        return Err(Error::InvalidInput(format!("size {size} exceeds n = {n}")));
    }
    let none = |reason: String| ProbeResult { verdict: ProbeVerdict::None, witness: None, reason: Some(reason), nodes: 0 };
    if size == 0 || size == n {
        let y = if size == 0 { LineSet::empty(space) } else { LineSet::all(space) };
        return Ok(ProbeResult { verdict: ProbeVerdict::Witness, witness: Some(y), reason: None, nodes: 0 });
    }
    if let Some(reason) = witness_prefilter(space, tables, s, size)? {
        return Ok(none(reason));
    }
    let mut set: Vec<Eigenspace> = s.to_vec();
    set.sort();
    set.dedup();
    let (found, complete, nodes) = match set.as_slice() {
        [] => return Ok(none("only the empty and full sets have empty support".into())),
        [j] => match degree_table(tables, *j, size) {
            Some(d) => {
                let targets = Targets::Regular { inside: to_i64(&d.inside), outside: to_i64(&d.outside) };
                run(&Model::new(space, size, targets), &budget.clone().with_results(1), SPLIT_DEPTH)
            }
            None => return Ok(none(format!("degree table for V{} is not integral", j.label()))),
        },
        _ => match SpanModel::new(space, tables, &set, size) {
            Some(m) => span_search(&m, &budget.clone().with_results(1)),
            None => {
                let targets = Targets::Linear(orthogonality_weights(tables, &set));
                run(&Model::new(space, size, targets), &budget.clone().with_results(1), SPLIT_DEPTH)
            }
        },
    };
    if let Some(f) = found.into_iter().next() {
        let y = LineSet::new(space, f.into_iter().map(|x| x as usize))?;
        let sup = eigenspace_support(space, tables, &y)?;
        if !sup.iter().all(|j| set.contains(j)) || y.len() != size {
            return Err(Error::Consistency(format!("probe witness has support {sup:?} and size {}", y.len())));
        }
        return Ok(ProbeResult { verdict: ProbeVerdict::Witness, witness: Some(y), reason: None, nodes });
    }
    let verdict = if complete { ProbeVerdict::None } else { ProbeVerdict::Unknown };
    Ok(ProbeResult { verdict, witness: None, reason: None, nodes })
}

/// Integer weights `w_i ∝ Q[i][k]` for every nontrivial `k ∉ s`, so that
/// `χ_Y ⊥ V_k` reads `sum_i w_i |Y ∩ R_i(x)| = 0` at every line `x`.
pub(crate) fn orthogonality_weights(tables: &SchemeTables, s: &[Eigenspace]) -> Vec<[i64; 5]> {
    let q = tables.q();
    Eigenspace::NONTRIVIAL
        .into_iter()
        .filter(|k| !s.contains(k))
        .map(|k| {
            let col: Vec<&Rational> = (0..5).map(|i| &q[i][k.index()]).collect();
            let l = col.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            std::array::from_fn(|i| (col[i] * big(l.clone())).to_integer().to_i64().expect("small weights"))
        })
        .collect()
}

/// Rules out sizes with the orthogonality argument against concrete sets
/// of known support: if `supp(W) ∩ s = ∅` then `|Y| |W| / n` must be an integer.
fn witness_prefilter(space: &PolarSpace, tables: &SchemeTables, s: &[Eigenspace], size: usize) -> Result<Option<String>> {
    let n = space.num_lines() as i128;
    let mut witnesses: Vec<(&str, Vec<(usize, i64)>)> = vec![
        ("plane", space.plane_lines(0).iter().map(|&l| (l as usize, 1)).collect()),
        ("pencil", point_pencil(space, 0, PencilMode::Through)?.indices().map(|l| (l, 1)).collect()),
        ("perp-avoiding pencil", point_pencil(space, 0, PencilMode::PerpAvoiding)?.indices().map(|l| (l, 1)).collect()),
        ("weighted pencil", weighted_pencil(space, 0)?),
    ];
    if space.family() == Family::O6Plus {
        let h = HyperplaneSection::first_of_kind(space, SectionKind::Quadrangle)?;
        witnesses.push(("quadrangle section", hyperplane_section_lines(space, &h)?.indices().map(|l| (l, 1)).collect()));
    }
    for (name, w) in witnesses {
        let a = weighted_inner_distribution(space, &w)?;
        let t = support_of(&tables.dual(&a));
        if t.iter().any(|j| s.contains(j)) {
            continue;
        }
        let total: i128 = w.iter().map(|&(_, x)| x as i128).sum();
        if (size as i128 * total) % n != 0 {
            return Ok(Some(format!("{name} of weight {total} has support {t:?}, and {size}·{total} is not a multiple of {n}")));
        }
    }
    Ok(None)
}

/// How a set found by the census decomposes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decomposition {
    /// Disjoint union of quadrangle sections and pencil unions (counts).
    Union { sections: usize, pencil_unions: usize },
    /// Complement of such a union.
    Complement { sections: usize, pencil_unions: usize },
    Unclassified,
}

/// Building blocks of the `O+(6, q)` catalog: quadrangle sections and pencil
/// unions over every ovoid.
pub struct Catalog {
    blocks: Vec<(LineSet, bool)>,
}

impl Catalog {
    pub fn new(space: &PolarSpace) -> Result<Self> {
        if space.family() != Family::O6Plus {
            return Err(Error::Precondition("the catalog is built for O+(6, q)".into()));
        }
        let mut blocks = Vec::new();
        for h in HyperplaneSection::all_of_kind(space, SectionKind::Quadrangle, None)? {
            blocks.push((hyperplane_section_lines(space, &h)?, true));
        }
        for o in enumerate_ovoids(space) {
            let lines = o.iter().flat_map(|&p| space.point_lines(p).iter().map(|&l| l as usize));
            blocks.push((LineSet::new(space, lines)?, false));
        }
        Ok(Catalog { blocks })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn union_of_blocks(&self, y: &LineSet) -> Option<(usize, usize)> {
        let pos: BTreeMap<u32, usize> = y.as_slice().iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let inside: Vec<usize> =
            (0..self.blocks.len()).filter(|&b| self.blocks[b].0.as_slice().iter().all(|l| pos.contains_key(l))).collect();
        let subsets: Vec<Vec<usize>> = inside.iter().map(|&b| self.blocks[b].0.as_slice().iter().map(|l| pos[l]).collect()).collect();
        let r = exact_cover(y.len(), &subsets, &SearchBudget::nodes(10_000_000));
        let cover = r.cover?;
        let sections = cover.iter().filter(|&&c| self.blocks[inside[c]].1).count();
        Some((sections, cover.len() - sections))
    }

    pub fn decompose(&self, space: &PolarSpace, y: &LineSet) -> Decomposition {
        if let Some((sections, pencil_unions)) = self.union_of_blocks(y) {
            return Decomposition::Union { sections, pencil_unions };
        }
        if let Some((sections, pencil_unions)) = self.union_of_blocks(&y.complement(space)) {
            return Decomposition::Complement { sections, pencil_unions };
        }
        Decomposition::Unclassified
    }
}

/// Every ovoid: `q^{e+2}+1` pairwise non-collinear points (one per plane follows).
pub fn enumerate_ovoids(space: &PolarSpace) -> Vec<Vec<usize>> {
    let target = (space.params().qe(2) + 1) as usize;
    let np = space.num_points();
    let mut out = Vec::new();
    fn rec(space: &PolarSpace, cand: Vec<usize>, cur: &mut Vec<usize>, target: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == target {
            out.push(cur.clone());
            return;
        }
        if cur.len() + cand.len() < target {
            return;
        }
        for (i, &p) in cand.iter().enumerate() {
            let col = space.collinear_points(p);
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&x| col.binary_search(&(x as u32)).is_err()).collect();
            cur.push(p);
            rec(space, next, cur, target, out);
            cur.pop();
        }
    }
    rec(space, (0..np).collect(), &mut Vec::new(), target, &mut out);
    out
}

/// Census line for one `(j, size)`.
#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub eigenspace: Eigenspace,
    pub size: usize,
    pub count: usize,
    pub complete: bool,
    pub nodes: u64,
    /// Distinct `(inner distribution, plane histogram)` signatures.
    pub signatures: usize,
    pub decompositions: BTreeMap<String, usize>,
}

/// Classifies a regular set of `O+(6, q)` against the catalog.
pub fn classify_o6plus_set(catalog: &Catalog, space: &PolarSpace, y: &LineSet) -> Decomposition {
    catalog.decompose(space, y)
}

/// Every regular set of every admissible `(j, size)`: the sizes are those
/// with a nonnegative integral degree table.
pub fn regular_census(
    space: &PolarSpace,
    tables: &SchemeTables,
    catalog: Option<&Catalog>,
    budget: &SearchBudget,
) -> Result<Vec<CensusEntry>> {
    let n = space.num_lines();
    let mut out = Vec::new();
    for j in Eigenspace::NONTRIVIAL {
        for size in 1..n {
            if degree_table(tables, j, size).is_none() {
                continue;
            }
            let r = enumerate_regular_sets(space, tables, j, size, budget)?;
            let mut sigs = std::collections::BTreeSet::new();
            let mut decompositions = BTreeMap::new();
            for y in &r.sets {
                let a = inner_distribution(space, y)?;
                let h = plane_profile(space, y).histogram;
                sigs.insert((format!("{a:?}"), format!("{h:?}")));
                if let Some(c) = catalog {
                    let key = match c.decompose(space, y) {
                        Decomposition::Union { sections, pencil_unions } => format!("union({sections} sections, {pencil_unions} pencil unions)"),
                        Decomposition::Complement { sections, pencil_unions } => {
                            format!("complement(union({sections} sections, {pencil_unions} pencil unions))")
                        }
                        Decomposition::Unclassified => "unclassified".into(),
                    };
                    *decompositions.entry(key).or_insert(0) += 1;
                }
            }
            out.push(CensusEntry {
                eigenspace: j,
                size,
                count: r.sets.len(),
                complete: r.complete,
                nodes: r.nodes,
                signatures: sigs.len(),
                decompositions,
            });
        }
    }
    Ok(out)
}
