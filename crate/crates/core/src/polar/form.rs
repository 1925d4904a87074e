//! The six families of rank-3 polar spaces and their standard forms.

use crate::algebra::{GaloisField, GfMatrix};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Family of a classical rank-3 polar space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sp6,
    O6Plus,
    O7,
    O8Minus,
    U6,
    U7,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Sp6, Family::O6Plus, Family::O7, Family::O8Minus, Family::U6, Family::U7];

    /// Dimension of the ambient vector space.
    pub fn ambient_dim(self) -> usize {
        match self {
            Family::Sp6 | Family::O6Plus | Family::U6 => 6,
            Family::O7 | Family::U7 => 7,
            Family::O8Minus => 8,
        }
    }

    /// The parameter `e` doubled, so half-integers stay integral.
    pub fn twice_e(self) -> u32 {
        match self {
            Family::O6Plus => 0,
            Family::U6 => 1,
            Family::Sp6 | Family::O7 => 2,
            Family::U7 => 3,
            Family::O8Minus => 4,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::Sp6 => "sp6",
            Family::O6Plus => "o6plus",
            Family::O7 => "o7",
            Family::O8Minus => "o8minus",
            Family::U6 => "u6",
            Family::U7 => "u7",
        }
    }

    pub fn is_hermitian(self) -> bool {
        matches!(self, Family::U6 | Family::U7)
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::O6Plus | Family::O7 | Family::O8Minus)
    }

    /// Checks the family can be built over GF(q).
    pub fn check_field(self, field: &GaloisField) -> Result<()> {
        let q = field.order();
        if self.is_hermitian() && !field.has_conjugation() {
            return Err(Error::IncompatibleFamily(format!("{self} needs a square q, got q = {q}")));
        }
        if self == Family::O7 && field.characteristic() == 2 {
            return Err(Error::IncompatibleFamily(format!(
                "O(7,{q}) with q even is isomorphic to Sp(6,{q}); build sp6 instead"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_lowercase();
        Ok(match norm.as_str() {
            "sp6" => Family::Sp6,
            "o6plus" | "o6" | "oplus6" => Family::O6Plus,
            "o7" => Family::O7,
            "o8minus" | "o8" | "ominus8" => Family::O8Minus,
            "u6" | "h5" => Family::U6,
            "u7" | "h6" => Family::U7,
            _ => return Err(Error::InvalidInput(format!("unknown family '{s}'"))),
        })
    }
}

/// A reflexive form on `GF(q)^d`, optionally with a quadratic form.
///
/// `B(x, y) = sum_ij x_i G_ij sigma(y_j)`, where `sigma` is conjugation for
/// Hermitian forms and the identity otherwise. For orthogonal families the
/// quadratic form `Q(x) = sum_{i<=j} c_ij x_i x_j` decides singularity and `G`
/// is its polarization, which keeps characteristic 2 correct.
#[derive(Clone, Debug)]
pub struct FormSpec {
    family: Family,
    gram: GfMatrix,
    quadratic: Option<GfMatrix>,
    hermitian: bool,
}

impl FormSpec {
    /// The fixed standard form of `family` over `field`.
    pub fn standard(family: Family, field: &GaloisField) -> Result<Self> {
        family.check_field(field)?;
        let d = family.ambient_dim();
        let one = 1u8;
        match family {
            Family::Sp6 => {
                let mut g = GfMatrix::zeros(d, d);
                for i in (0..d).step_by(2) {
                    g[(i, i + 1)] = one;
                    g[(i + 1, i)] = field.neg(one);
                }
                Ok(FormSpec { family, gram: g, quadratic: None, hermitian: false })
            }
            Family::U6 | Family::U7 => {
                Ok(FormSpec { family, gram: GfMatrix::identity(d), quadratic: None, hermitian: true })
            }
            Family::O6Plus | Family::O7 | Family::O8Minus => {
                let mut c = GfMatrix::zeros(d, d);
                for i in (0..6).step_by(2) {
                    c[(i, i + 1)] = one;
                }
                match family {
                    Family::O7 => c[(6, 6)] = one,
                    Family::O8Minus => {
                        let (b, cc) = irreducible_binary_quadratic(field);
                        c[(6, 6)] = one;
                        c[(6, 7)] = b;
                        c[(7, 7)] = cc;
                    }
                    _ => {}
                }
                Ok(Self::from_quadratic(family, field, c))
            }
        }
    }

    /// Orthogonal form from upper-triangular quadratic coefficients.
    pub fn from_quadratic(family: Family, field: &GaloisField, c: GfMatrix) -> Self {
        let d = c.rows();
        let mut g = GfMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = c[(i, j)];
                if i == j {
                    g[(i, i)] = field.add(v, v);
                } else {
                    g[(i, j)] = field.add(g[(i, j)], v);
                    g[(j, i)] = field.add(g[(j, i)], v);
                }
            }
        }
        FormSpec { family, gram: g, quadratic: Some(c), hermitian: false }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &GfMatrix {
        &self.gram
    }

    pub fn quadratic(&self) -> Option<&GfMatrix> {
        self.quadratic.as_ref()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Vector `f_y` with `B(x, y) = x . f_y` for every `x`.
    pub fn functional(&self, field: &GaloisField, y: &[u8]) -> Vec<u8> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d).fold(0u8, |acc, j| {
                    let yj = if self.hermitian { field.conj(y[j]) } else { y[j] };
                    field.add(acc, field.mul(self.gram[(i, j)], yj))
                })
            })
            .collect()
    }

    pub fn bilinear(&self, field: &GaloisField, x: &[u8], y: &[u8]) -> u8 {
        field.dot(x, &self.functional(field, y))
    }

    /// `Q(x)` for orthogonal forms; `None` otherwise.
    pub fn quadratic_value(&self, field: &GaloisField, x: &[u8]) -> Option<u8> {
        let c = self.quadratic.as_ref()?;
        let d = c.rows();
        let mut acc = 0u8;
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in i..d {
                let cij = c[(i, j)];
                if cij != 0 && x[j] != 0 {
                    acc = field.add(acc, field.mul(cij, field.mul(x[i], x[j])));
                }
            }
        }
        Some(acc)
    }

    /// Whether the 1-space `<x>` is totally isotropic (singular).
    pub fn is_singular(&self, field: &GaloisField, x: &[u8]) -> bool {
        match self.quadratic_value(field, x) {
            Some(v) => v == 0,
            None => self.bilinear(field, x, x) == 0,
        }
    }
}

/// First `(b, c)` in lexicographic order with `x^2 + b x + c` irreducible.
pub fn irreducible_binary_quadratic(field: &GaloisField) -> (u8, u8) {
    for b in field.elements() {
        for c in field.elements() {
            let has_root = field.elements().any(|x| field.add(field.add(field.mul(x, x), field.mul(b, x)), c) == 0);
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_parameters() {
        let e: Vec<u32> = Family::ALL.iter().map(|f| f.twice_e()).collect();
        assert_eq!(e, vec![2, 0, 2, 4, 1, 3]);
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn compatibility() {
        let gf2 = GaloisField::from_order(2).unwrap();
        let gf3 = GaloisField::from_order(3).unwrap();
        let gf4 = GaloisField::from_order(4).unwrap();
        assert!(FormSpec::standard(Family::O7, &gf2).is_err());
        assert!(FormSpec::standard(Family::O7, &gf3).is_ok());
        assert!(FormSpec::standard(Family::U6, &gf3).is_err());
        assert!(FormSpec::standard(Family::U6, &gf4).is_ok());
    }

    #[test]
    fn gram_matrices_have_the_right_symmetry() {
        for q in [2, 3, 4, 5, 9] {
            let f = GaloisField::from_order(q).unwrap();
            for fam in Family::ALL {
                let Ok(form) = FormSpec::standard(fam, &f) else { continue };
                let g = form.gram();
                let d = form.dim();
                for i in 0..d {
                    for j in 0..d {
                        let (a, b) = (g[(i, j)], g[(j, i)]);
                        match fam {
                            Family::Sp6 => {
                                assert_eq!(a, f.neg(b));
                                assert_eq!(g[(i, i)], 0);
                            }
                            Family::U6 | Family::U7 => assert_eq!(a, f.conj(b)),
                            _ => assert_eq!(a, b),
                        }
                    }
                }
                // nondegenerate in odd characteristic and for Sp/U
                if f.characteristic() != 2 || !fam.is_orthogonal() {
                    assert_eq!(g.rank(&f), d, "{fam} over GF({q})");
                }
            }
        }
    }

    #[test]
    fn o8minus_quadratic_is_anisotropic_on_the_last_pair() {
        for q in [2, 3, 4, 5] {
            let f = GaloisField::from_order(q).unwrap();
            let form = FormSpec::standard(Family::O8Minus, &f).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let mut v = vec![0u8; 8];
                    v[6] = a;
                    v[7] = b;
                    assert_eq!(form.is_singular(&f, &v), a == 0 && b == 0);
                }
            }
        }
    }
}
