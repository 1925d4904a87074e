//! The example families, built inside an enumerated space and checked
//! against their closed-form distributions.

pub mod expected;
pub mod hexagon;
pub mod ovoid;
pub mod section;
pub mod spread;
pub mod twoweight;

pub use expected::Example;
pub use hexagon::{hexagon_lines, incidence_girth};
pub use ovoid::{elliptic_ovoid, m_ovoid_lift, pencil_union, section_through_elliptic_ovoid, OvoidSet, PencilUnion};
pub use section::{hyperplane_section_lines, HyperplaneSection, SectionDef, SectionKind};
pub use spread::{symplectic_spread_lines, symplectic_spread_planes};
pub use twoweight::{srg_parameters, two_weight_profile, SrgParams, TwoWeightProfile};

use crate::algebra::rational::{to_string, Rational};
use crate::analysis::{inner_distribution, LineSet};
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::polar::PolarSpace;
use crate::scheme::SchemeTables;
use serde::{Deserialize, Serialize};

/// Lines of plane `p`.
pub fn plane_lines(space: &PolarSpace, p: usize) -> Result<LineSet> {
    if p >= space.num_planes() {
        return Err(Error::InvalidInput(format!("plane index {p} out of range")));
    }
    Ok(LineSet::new(space, space.plane_lines(p).iter().map(|&l| l as usize))?.named("plane"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PencilMode {
    /// Lines through the point.
    Through,
    /// Lines of `P^⊥` not through `P`.
    PerpAvoiding,
}

pub fn point_pencil(space: &PolarSpace, point: usize, mode: PencilMode) -> Result<LineSet> {
    if point >= space.num_points() {
        return Err(Error::InvalidInput(format!("point index {point} out of range")));
    }
    let through: Vec<usize> = space.point_lines(point).iter().map(|&l| l as usize).collect();
    match mode {
        PencilMode::Through => Ok(LineSet::new(space, through)?.named("pencil")),
        PencilMode::PerpAvoiding => {
            let x = space.point(point);
            let f = space.form().functional(space.field(), x);
            let lines = (0..space.num_lines()).filter(|&l| {
                through.binary_search(&l).is_err()
                    && space.line(l).basis().iter().all(|r| space.field().dot(r, &f) == 0)
            });
            Ok(LineSet::new(space, lines)?.named("perp-avoiding pencil"))
        }
    }
}

/// Weights `(q^e+1)` on the pencil through `point` and `1` on the
/// perp-avoiding lines; this combination lies in `<j> + V10`.
pub fn weighted_pencil(space: &PolarSpace, point: usize) -> Result<Vec<(usize, i64)>> {
    let w = space.params().qe(0) as i64 + 1;
    let mut out: Vec<(usize, i64)> = point_pencil(space, point, PencilMode::Through)?.indices().map(|l| (l, w)).collect();
    out.extend(point_pencil(space, point, PencilMode::PerpAvoiding)?.indices().map(|l| (l, 1)));
    Ok(out)
}

/// Outcome of comparing a construction with its closed forms.
#[derive(Clone, Debug, Serialize)]
pub struct ExampleCheck {
    pub example: Example,
    pub size: usize,
    pub inner: Vec<String>,
    pub expected_inner: Vec<String>,
    pub dual: Vec<String>,
    pub expected_dual: Option<Vec<String>>,
    pub passed: bool,
}

/// Compares `Y` with the closed forms of `example` at `params`; for
/// sections the closed forms are those of the host space.
pub fn check_example(
    space: &PolarSpace,
    tables: &SchemeTables,
    y: &LineSet,
    example: Example,
    params: &SchemeParams,
) -> Result<ExampleCheck> {
    let a = inner_distribution(space, y)?;
    let want = example
        .inner(params)
        .ok_or_else(|| Error::Precondition(format!("{example:?} is undefined at {params}")))?;
    let aq = tables.dual(&a);
    let want_dual = example.dual(params);
    let passed = a == want && want_dual.as_ref().is_none_or(|d| *d == aq);
    let s = |v: &[Rational]| v.iter().map(to_string).collect::<Vec<_>>();
    Ok(ExampleCheck {
        example,
        size: y.len(),
        inner: s(&a),
        expected_inner: s(&want),
        dual: s(&aq),
        expected_dual: want_dual.as_deref().map(s),
        passed,
    })
}

/// Like [`check_example`] but fails unless the check passes.
pub fn assert_example(space: &PolarSpace, tables: &SchemeTables, y: &LineSet, example: Example) -> Result<()> {
    let c = check_example(space, tables, y, example, &space.params())?;
    if !c.passed {
        return Err(Error::Consistency(format!(
            "{example:?}: a = {:?}, expected {:?}",
            c.inner, c.expected_inner
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
