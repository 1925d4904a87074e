//! Scheme relations between lines and the eigenspace labels.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Relation between two lines `L`, `M`, named after
/// `(dim(L ∩ M), dim(L ∩ M^⊥))`-derived indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Relation {
    R00 = 0,
    R10 = 1,
    R11 = 2,
    R20 = 3,
    R21 = 4,
}

impl Relation {
    pub const ALL: [Relation; 5] = [Relation::R00, Relation::R10, Relation::R11, Relation::R20, Relation::R21];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Maps `(s, t) = (dim(L ∩ M), dim(L ∩ M^⊥))` to a relation.
    pub fn from_dims(s: usize, t: usize) -> Result<Self> {
        match (s, t) {
            (2, 2) => Ok(Relation::R00),
            (1, 2) => Ok(Relation::R10),
            (1, 1) => Ok(Relation::R11),
            (0, 1) => Ok(Relation::R20),
            (0, 0) => Ok(Relation::R21),
            _ => Err(Error::Consistency(format!("illegal line pair statistics (s, t) = ({s}, {t})"))),
        }
    }

    pub fn name(self) -> &'static str {
        ["R00", "R10", "R11", "R20", "R21"][self.index()]
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['R', 'r']);
        Relation::ALL
            .into_iter()
            .find(|r| &r.name()[1..] == t)
            .ok_or_else(|| Error::InvalidInput(format!("unknown relation '{s}'")))
    }
}

/// Common eigenspace `V_j` of the scheme, ordered like [`Relation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Eigenspace {
    V00 = 0,
    V10 = 1,
    V11 = 2,
    V20 = 3,
    V21 = 4,
}

impl Eigenspace {
    pub const ALL: [Eigenspace; 5] =
        [Eigenspace::V00, Eigenspace::V10, Eigenspace::V11, Eigenspace::V20, Eigenspace::V21];
    pub const NONTRIVIAL: [Eigenspace; 4] = [Eigenspace::V10, Eigenspace::V11, Eigenspace::V20, Eigenspace::V21];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Two-digit label, e.g. `"20"`.
    pub fn label(self) -> &'static str {
        ["00", "10", "11", "20", "21"][self.index()]
    }
}

impl fmt::Display for Eigenspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}", self.label())
    }
}

impl FromStr for Eigenspace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['V', 'v']);
        Eigenspace::ALL
            .into_iter()
            .find(|j| j.label() == t)
            .ok_or_else(|| Error::InvalidInput(format!("unknown eigenspace '{s}'")))
    }
}

/// Packed `n × n` relation table, 4 bits per entry.
#[derive(Clone)]
pub struct LabelTable {
    n: usize,
    data: Vec<u8>,
}

impl LabelTable {
    pub(crate) fn from_rows(n: usize, rows: Vec<Vec<Relation>>) -> Self {
        let stride = n.div_ceil(2);
        let mut data = vec![0u8; n * stride];
        for (i, row) in rows.into_iter().enumerate() {
            let base = i * stride;
            for (j, r) in row.into_iter().enumerate() {
                data[base + j / 2] |= (r as u8) << (4 * (j % 2));
            }
        }
        LabelTable { n, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Relation {
        let stride = self.n.div_ceil(2);
        let v = (self.data[i * stride + j / 2] >> (4 * (j % 2))) & 0xf;
        Relation::ALL[v as usize]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bytes(&self) -> usize {
        self.data.len()
    }
}

impl fmt::Debug for LabelTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabelTable({}x{})", self.n, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_map_to_the_five_relations() {
        assert_eq!(Relation::from_dims(2, 2).unwrap(), Relation::R00);
        assert_eq!(Relation::from_dims(1, 2).unwrap(), Relation::R10);
        assert_eq!(Relation::from_dims(1, 1).unwrap(), Relation::R11);
        assert_eq!(Relation::from_dims(0, 1).unwrap(), Relation::R20);
        assert_eq!(Relation::from_dims(0, 0).unwrap(), Relation::R21);
        assert!(Relation::from_dims(2, 1).is_err());
        assert!(Relation::from_dims(0, 2).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!("R20".parse::<Relation>().unwrap(), Relation::R20);
        assert_eq!("11".parse::<Relation>().unwrap(), Relation::R11);
        assert_eq!("V21".parse::<Eigenspace>().unwrap(), Eigenspace::V21);
        assert!("R22".parse::<Relation>().is_err());
    }

    #[test]
    fn packed_table_round_trip() {
        let n = 5;
        let rows: Vec<Vec<Relation>> =
            (0..n).map(|i| (0..n).map(|j| Relation::ALL[(i + 2 * j) % 5]).collect()).collect();
        let t = LabelTable::from_rows(n, rows.clone());
        for i in 0..n {
            for j in 0..n {
                assert_eq!(t.get(i, j), rows[i][j]);
            }
        }
    }
}
