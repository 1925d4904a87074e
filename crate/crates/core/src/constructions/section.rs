//! Hyperplane sections and the lines they contain.

use crate::analysis::LineSet;
use crate::error::{Error, Result};
use crate::polar::{Family, PolarSpace};
use serde::{Deserialize, Serialize};

/// How a section is cut out of the space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionDef {
    /// The hyperplane `v^⊥`.
    Pole(Vec<u8>),
    /// For `Sp(6, q)` with `q` even: the quadric
    /// `Q(x) = x0 x1 + x2 x3 + x4 x5 + (a . x)^2`, whose polarization is the
    /// symplectic form. This realizes the hyperplane sections of `O(7, q)`.
    Quadric(Vec<u8>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    /// Degenerate, with radical `<v>`.
    Degenerate,
    /// Nondegenerate of rank 3 (parameter `e - 1`).
    Rank3,
    /// Nondegenerate of rank 2 (parameter `e + 1`).
    Quadrangle,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperplaneSection {
    pub def: SectionDef,
    pub kind: SectionKind,
}

impl HyperplaneSection {
    pub fn from_pole(space: &PolarSpace, v: &[u8]) -> Result<Self> {
        let f = space.field();
        let v = f
            .normalize(v)
            .filter(|v| v.len() == space.dim())
            .ok_or_else(|| Error::InvalidInput("pole must be a nonzero vector of the ambient space".into()))?;
        let form = space.form();
        let degenerate = match form.quadratic_value(f, &v) {
            Some(x) => x == 0,
            None if form.is_hermitian() => form.bilinear(f, &v, &v) == 0,
            None => true,
        };
        let def = SectionDef::Pole(v);
        if degenerate {
            return Ok(HyperplaneSection { def, kind: SectionKind::Degenerate });
        }
        let mut s = HyperplaneSection { def, kind: SectionKind::Quadrangle };
        if (0..space.num_planes()).any(|p| space.plane(p).basis().iter().all(|r| s.contains_vector(space, r))) {
            s.kind = SectionKind::Rank3;
        }
        Ok(s)
    }

    /// Compatible quadric of `Sp(6, q)`, `q` even, twisted by `a`.
    pub fn from_quadric(space: &PolarSpace, a: &[u8]) -> Result<Self> {
        if space.family() != Family::Sp6 || space.field().characteristic() != 2 {
            return Err(Error::Precondition("quadric sections need Sp(6, q) with q even".into()));
        }
        if a.len() != 6 {
            return Err(Error::InvalidInput("quadric twist must have 6 coordinates".into()));
        }
        let mut s = HyperplaneSection { def: SectionDef::Quadric(a.to_vec()), kind: SectionKind::Quadrangle };
        let singular = (0..space.num_points()).filter(|&p| s.contains_vector(space, space.point(p))).count();
        let q = space.q() as usize;
        s.kind = if singular == (q * q + 1) * (q * q + q + 1) {
            SectionKind::Rank3
        } else if singular == (q * q * q + 1) * (q + 1) {
            SectionKind::Quadrangle
        } else {
            return Err(Error::Consistency(format!("compatible quadric with {singular} singular points")));
        };
        Ok(s)
    }

    /// First section of the requested kind, scanning poles (or quadric
    /// twists) in lexicographic order.
    pub fn first_of_kind(space: &PolarSpace, kind: SectionKind) -> Result<Self> {
        Self::all_of_kind(space, kind, Some(1))?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Precondition(format!("{} has no {kind:?} section", space.fingerprint())))
    }

    /// Every section of `kind`, one per hyperplane, up to `limit`.
    pub fn all_of_kind(space: &PolarSpace, kind: SectionKind, limit: Option<usize>) -> Result<Vec<Self>> {
        let f = space.field();
        let quadrics = space.family() == Family::Sp6 && f.characteristic() == 2 && kind != SectionKind::Degenerate;
        let mut out = Vec::new();
        let candidates: Vec<Vec<u8>> = if quadrics {
            let q = f.order() as usize;
            (0..q.pow(6))
                .map(|mut i| {
                    (0..6)
                        .map(|_| {
                            let c = (i % q) as u8;
                            i /= q;
                            c
                        })
                        .collect()
                })
                .collect()
        } else {
            f.projective_points(space.dim())
        };
        for v in candidates {
            let s = if quadrics { Self::from_quadric(space, &v)? } else { Self::from_pole(space, &v)? };
            if s.kind == kind {
                out.push(s);
                if limit.is_some_and(|l| out.len() >= l) {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Whether the vector lies in the hyperplane, or is singular for the quadric.
    pub fn contains_vector(&self, space: &PolarSpace, x: &[u8]) -> bool {
        let f = space.field();
        match &self.def {
            SectionDef::Pole(v) => space.form().bilinear(f, x, v) == 0,
            SectionDef::Quadric(a) => {
                let base = (0..6).step_by(2).fold(0u8, |acc, i| f.add(acc, f.mul(x[i], x[i + 1])));
                let l = f.dot(a, x);
                f.add(base, f.mul(l, l)) == 0
            }
        }
    }

    pub fn contains_point(&self, space: &PolarSpace, p: usize) -> bool {
        self.contains_vector(space, space.point(p))
    }

    /// Whether line `l` lies in the section. For quadrics a totally
    /// isotropic line is singular as soon as its two basis vectors are.
    pub fn contains_line(&self, space: &PolarSpace, l: usize) -> bool {
        space.line(l).basis().iter().all(|r| self.contains_vector(space, r))
    }

    /// Points of the space in the section.
    pub fn points(&self, space: &PolarSpace) -> Vec<usize> {
        (0..space.num_points()).filter(|&p| self.contains_point(space, p)).collect()
    }

    /// Twice the parameter `e` of the section, when nondegenerate.
    pub fn twice_e(&self, space: &PolarSpace) -> Option<u32> {
        let e = space.params().twice_e();
        match self.kind {
            SectionKind::Degenerate => None,
            SectionKind::Rank3 => Some(e - 2),
            SectionKind::Quadrangle => Some(e + 2),
        }
    }
}

/// All lines of the space inside the section.
pub fn hyperplane_section_lines(space: &PolarSpace, section: &HyperplaneSection) -> Result<LineSet> {
    if section.kind == SectionKind::Degenerate {
        return Err(Error::Precondition("section is degenerate".into()));
    }
    let lines = (0..space.num_lines()).filter(|&l| section.contains_line(space, l));
    Ok(LineSet::new(space, lines)?.named(match section.kind {
        SectionKind::Rank3 => "rank-3 section",
        _ => "quadrangle section",
    }))
}
