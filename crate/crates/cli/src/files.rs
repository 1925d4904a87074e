//! Line-set files: a versioned JSON document naming the space and listing
//! lines by index or by basis rows.

use polar_lines::algebra::Subspace;
use polar_lines::analysis::LineSet;
use polar_lines::{Error, Family, PolarSpace, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const LINESET_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceRef {
    pub family: Family,
    pub p: u32,
    pub h: u32,
}

impl SpaceRef {
    pub fn of(space: &PolarSpace) -> Self {
        SpaceRef { family: space.family(), p: space.field().characteristic(), h: space.field().degree() }
    }

    pub fn tag(&self) -> String {
        format!("{}_q{}", self.family.tag(), self.p.pow(self.h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSetFile {
    pub version: u32,
    pub space: SpaceRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<usize>>,
    /// Each line as two row vectors of field element codes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<Vec<u8>>>>,
}

impl LineSetFile {
    pub fn from_set(space: &PolarSpace, y: &LineSet) -> Self {
        LineSetFile {
            version: LINESET_VERSION,
            space: SpaceRef::of(space),
            name: y.name.clone(),
            lines: Some(y.indices().collect()),
            bases: None,
        }
    }

    pub fn with_bases(space: &PolarSpace, y: &LineSet) -> Self {
        LineSetFile {
            bases: Some(y.indices().map(|l| space.line(l).basis().to_vec()).collect()),
            lines: None,
            ..Self::from_set(space, y)
        }
    }

    /// Resolves the file against `space`.
    pub fn resolve(&self, space: &PolarSpace) -> Result<LineSet> {
        if self.version != LINESET_VERSION {
            return Err(Error::InvalidInput(format!("unsupported line-set file version {}", self.version)));
        }
        let here = SpaceRef::of(space);
        if self.space != here {
            return Err(Error::FingerprintMismatch { expected: here.tag(), found: self.space.tag() });
        }
        let mut idx: Vec<usize> = self.lines.clone().unwrap_or_default();
        for rows in self.bases.iter().flatten() {
            let s = Subspace::span(space.field(), space.dim(), rows)?;
            if s.dim() != 2 {
                return Err(Error::InvalidInput(format!("basis {rows:?} does not span a line")));
            }
            let l = space
                .line_index(&s)
                .ok_or_else(|| Error::InvalidInput(format!("basis {rows:?} is not a line of {}", space.fingerprint())))?;
            idx.push(l);
        }
        if self.lines.is_some() && self.bases.is_some() {
            return Err(Error::InvalidInput("give either lines or bases, not both".into()));
        }
        let y = LineSet::new(space, idx)?;
        Ok(match &self.name {
            Some(n) => y.named(n.clone()),
            None => y,
        })
    }
}

pub fn parse_lineset_file(path: &Path, space: &PolarSpace) -> Result<LineSet> {
    let text = std::fs::read_to_string(path)?;
    let file: LineSetFile = serde_json::from_str(&text)?;
    file.resolve(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polar_lines::constructions::plane_lines;

    #[test]
    fn bases_round_trip() {
        let s = PolarSpace::build(Family::O6Plus, 2).unwrap();
        let y = plane_lines(&s, 3).unwrap();
        let f = LineSetFile::with_bases(&s, &y);
        let text = serde_json::to_string(&f).unwrap();
        let back: LineSetFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.resolve(&s).unwrap().as_slice(), y.as_slice());
        let g = LineSetFile::from_set(&s, &y);
        assert_eq!(g.resolve(&s).unwrap().as_slice(), y.as_slice());
    }

    #[test]
    fn rejects_bad_input() {
        let s = PolarSpace::build(Family::O6Plus, 2).unwrap();
        let mut f = LineSetFile::from_set(&s, &LineSet::new(&s, [0, 1, 2]).unwrap());
        f.space = SpaceRef { family: Family::O7, p: 3, h: 1 };
        assert!(matches!(f.resolve(&s), Err(Error::FingerprintMismatch { .. })));
        let mut f = LineSetFile::from_set(&s, &LineSet::new(&s, [0]).unwrap());
        f.lines = None;
        f.bases = Some(vec![vec![vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0]]]);
        assert!(matches!(f.resolve(&s), Err(Error::InvalidInput(_))));
    }
}
