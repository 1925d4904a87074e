//! Ovoids, m-ovoids of quadrangle sections, and the line sets built from them.

use super::section::{HyperplaneSection, SectionDef, SectionKind};
use crate::algebra::matrix::Subspace;
use crate::analysis::LineSet;
use crate::error::{Error, Result};
use crate::polar::{form::irreducible_binary_quadratic, Family, PolarSpace};
use serde::{Deserialize, Serialize};

/// A set of points of one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvoidSet {
    pub space: String,
    pub points: Vec<usize>,
}

impl OvoidSet {
    pub fn new(space: &PolarSpace, mut points: Vec<usize>) -> Result<Self> {
        points.sort_unstable();
        points.dedup();
        if let Some(&p) = points.iter().find(|&&p| p >= space.num_points()) {
            return Err(Error::InvalidInput(format!("point index {p} out of range")));
        }
        Ok(OvoidSet { space: space.fingerprint(), points })
    }

    /// Resolves coordinate vectors to point indices.
    pub fn from_vectors(space: &PolarSpace, vectors: &[Vec<u8>]) -> Result<Self> {
        let pts = vectors
            .iter()
            .map(|v| space.point_index(v).ok_or_else(|| Error::InvalidInput(format!("{v:?} is not a point of the space"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, pts)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks that this is an ovoid of the space: `q^{e+2}+1` pairwise
    /// non-collinear points, one on every plane.
    pub fn validate_ovoid(&self, space: &PolarSpace) -> Result<()> {
        if self.space != space.fingerprint() {
            return Err(Error::FingerprintMismatch { expected: space.fingerprint(), found: self.space.clone() });
        }
        let want = space.params().qe(2) + 1;
        if self.len() as i128 != want {
            return Err(Error::Precondition(format!("ovoid needs {want} points, got {}", self.len())));
        }
        for (i, &a) in self.points.iter().enumerate() {
            for &b in &self.points[i + 1..] {
                if space.collinear_points(a).binary_search(&(b as u32)).is_ok() {
                    return Err(Error::Precondition(format!("points {a} and {b} are collinear")));
                }
            }
        }
        for p in 0..space.num_planes() {
            let k = space.plane_points(p).iter().filter(|x| self.points.binary_search(&(**x as usize)).is_ok()).count();
            if k != 1 {
                return Err(Error::Precondition(format!("plane {p} meets the set in {k} points")));
            }
        }
        Ok(())
    }

    /// Checks that this is an m-ovoid of the quadrangle section and returns `m`.
    pub fn validate_m_ovoid(&self, space: &PolarSpace, section: &HyperplaneSection) -> Result<usize> {
        if self.space != space.fingerprint() {
            return Err(Error::FingerprintMismatch { expected: space.fingerprint(), found: self.space.clone() });
        }
        if section.kind != SectionKind::Quadrangle {
            return Err(Error::Precondition("m-ovoids live in quadrangle sections".into()));
        }
        if let Some(&p) = self.points.iter().find(|&&p| !section.contains_point(space, p)) {
            return Err(Error::Precondition(format!("point {p} is not in the section")));
        }
        let mut m = None;
        for l in (0..space.num_lines()).filter(|&l| section.contains_line(space, l)) {
            let k = space.line_points(l).iter().filter(|x| self.points.binary_search(&(**x as usize)).is_ok()).count();
            match m {
                None => m = Some(k),
                Some(m0) if m0 != k => {
                    return Err(Error::Precondition(format!("section lines meet the set in {m0} and {k} points")))
                }
                _ => {}
            }
        }
        m.filter(|&m| m > 0).ok_or_else(|| Error::Precondition("not an m-ovoid with m > 0".into()))
    }
}

/// The `q²+1` singular points of a fixed elliptic 4-space of `O+(6, q)`.
pub fn elliptic_ovoid(space: &PolarSpace) -> Result<OvoidSet> {
    let w = elliptic_subspace(space)?;
    let f = space.field();
    let pts: Vec<usize> = (0..space.num_points()).filter(|&p| w.contains_vector(f, space.point(p))).collect();
    let o = OvoidSet::new(space, pts)?;
    o.validate_ovoid(space).map_err(|e| Error::Consistency(format!("elliptic ovoid: {e}")))?;
    Ok(o)
}

/// `<e0, e1, u1, u2>` with `<u1, u2>` anisotropic inside `<e2, .., e5>`.
fn elliptic_subspace(space: &PolarSpace) -> Result<Subspace> {
    if space.family() != Family::O6Plus {
        return Err(Error::Precondition("the elliptic ovoid is built in O+(6, q)".into()));
    }
    let f = space.field();
    let (b, c) = irreducible_binary_quadratic(f);
    let rows = vec![
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 0, 0],
        vec![0, 0, 0, b, 1, c],
    ];
    Subspace::span(f, 6, &rows)
}

/// A quadrangle section of `O+(6, q)` that contains [`elliptic_ovoid`],
/// which is then a classical ovoid of the section.
pub fn section_through_elliptic_ovoid(space: &PolarSpace) -> Result<HyperplaneSection> {
    let w = elliptic_subspace(space)?;
    let wp = space.perp(&w);
    let f = space.field();
    let pole = wp
        .points(f)
        .into_iter()
        .find(|v| !space.form().is_singular(f, v))
        .ok_or_else(|| Error::Consistency("perp of an elliptic 4-space has no anisotropic vector".into()))?;
    let s = HyperplaneSection::from_pole(space, &pole)?;
    if s.kind != SectionKind::Quadrangle {
        return Err(Error::Consistency("section through the ovoid is not a quadrangle".into()));
    }
    Ok(s)
}

/// Pencil-union report: formula size against the enumerated one.
#[derive(Clone, Debug, Serialize)]
pub struct PencilUnion {
    pub lines: LineSet,
    pub formula_size: i128,
    pub enumerated_size: usize,
}

/// Union of the pencils through the points of an ovoid.
pub fn pencil_union(space: &PolarSpace, ovoid: &OvoidSet) -> Result<PencilUnion> {
    ovoid.validate_ovoid(space)?;
    let mut lines = Vec::new();
    for &p in &ovoid.points {
        lines.extend(space.point_lines(p).iter().map(|&l| l as usize));
    }
    let total = lines.len();
    let set = LineSet::new(space, lines).map_err(|_| Error::Precondition("pencils through the ovoid meet".into()))?;
    debug_assert_eq!(set.len(), total);
    let p = space.params();
    Ok(PencilUnion {
        enumerated_size: set.len(),
        formula_size: (p.q() as i128 + 1) * (p.qe(1) + 1) * (p.qe(2) + 1),
        lines: set.named("pencil union"),
    })
}

/// Lines meeting the quadrangle section in exactly one point, that point in
/// the m-ovoid.
pub fn m_ovoid_lift(space: &PolarSpace, section: &HyperplaneSection, ovoid: &OvoidSet) -> Result<LineSet> {
    if space.q() % 2 == 0 {
        return Err(Error::Precondition("the m-ovoid lift needs q odd".into()));
    }
    if !matches!(section.def, SectionDef::Pole(_)) {
        return Err(Error::Precondition("the m-ovoid lift needs a hyperplane section".into()));
    }
    let m = ovoid.validate_m_ovoid(space, section)?;
    let mut lines = Vec::new();
    for &p in &ovoid.points {
        lines.extend(space.point_lines(p).iter().map(|&l| l as usize).filter(|&l| !section.contains_line(space, l)));
    }
    let set = LineSet::new(space, lines)?.named(format!("{m}-ovoid lift"));
    let pr = space.params();
    let want = m as i128 * pr.q() as i128 * (pr.qe(1) + 1) * (pr.qe(2) + 1);
    if set.len() as i128 != want {
        return Err(Error::Consistency(format!("lift has {} lines, expected {want}", set.len())));
    }
    Ok(set)
}
