//! Closed-form inner distributions and dual distributions of the example
//! families, used to validate every construction.

use crate::algebra::rational::{big, Rational};
use crate::params::SchemeParams;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Example families with a known inner distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Example {
    Plane,
    Pencil,
    /// Lines of `P^⊥` not through `P`.
    PerpAvoiding,
    OneSystem,
    Ekr,
    /// Lines of a nondegenerate rank-3 hyperplane section (needs `e ≥ 1`).
    SubRank3,
    /// Lines of a generalized quadrangle section.
    Quadrangle,
    Spread,
    Hexagon,
}

impl Example {
    pub const ALL: [Example; 9] = [
        Example::Plane,
        Example::Pencil,
        Example::PerpAvoiding,
        Example::OneSystem,
        Example::Ekr,
        Example::SubRank3,
        Example::Quadrangle,
        Example::Spread,
        Example::Hexagon,
    ];

    /// Inner distribution at `params`, or `None` when undefined there.
    pub fn inner(self, p: &SchemeParams) -> Option<Vec<Rational>> {
        let q = p.q() as i128;
        let v: [i128; 5] = match self {
            Example::Plane => [1, q * q + q, 0, 0, 0],
            Example::Pencil => [1, p.qe(1) + q, p.qe(2), 0, 0],
            Example::PerpAvoiding => [1, q * q - 1, p.qe(1) * (q + 1), (q * q - 1) * p.qe(1), p.pow_half(2 * p.twice_e() + 6)],
            Example::OneSystem => [1, 0, 0, 0, p.qe(2)],
            Example::Ekr => [1, p.qe(1) + q * q + q, p.qe(2), p.qe(3), 0],
            Example::SubRank3 => {
                if p.twice_e() < 2 {
                    return None;
                }
                let sub = p.qe(-1) + 1;
                [1, q * (q + 1) * sub, p.qe(1) * (q + 1), p.qe(2) * (q + 1) * sub, p.pow_half(2 * p.twice_e() + 6)]
            }
            Example::Quadrangle => [1, 0, p.qe(1) * (q + 1), 0, p.pow_half(2 * p.twice_e() + 6)],
            Example::Spread => [1, q * q + q, 0, p.qe(2) * (q + 1), p.qe(4)],
            Example::Hexagon => {
                if p.twice_e() != 2 {
                    return None;
                }
                [1, q * q + q, 0, q.pow(4) + q.pow(3), q.pow(5)]
            }
        };
        Some(to_rationals(&v))
    }

    /// Closed-form dual distribution `aQ`, where one is known.
    pub fn dual(self, p: &SchemeParams) -> Option<Vec<Rational>> {
        let q = p.q() as i128;
        let r = |x: i128| big(BigInt::from(x));
        let th = r(p.theta());
        let qe = r(p.qe(0));
        let qe1 = r(p.qe(1));
        let qe2 = r(p.qe(2));
        let one = r(1);
        let a = &qe1 + &one;
        let nu = &qe2 + &one;
        let qr = r(q);
        let zero = r(0);
        let v = match self {
            Example::Plane => vec![
                th.clone(),
                &qe1 * r(q + 1) * &th * &a / (&qe + &one),
                zero.clone(),
                r(p.pow_half(2 * p.twice_e() + 2)) * &th * &nu / (&qe + &one),
                zero,
            ],
            Example::Pencil => vec![
                r(q + 1) * &a,
                &qe2 * &th * (&qe + &one) * &a / (&qe + &qr),
                r(q.pow(3)) * &a * &nu / (&qe + &qr),
                zero.clone(),
                zero,
            ],
            Example::PerpAvoiding => vec![
                r(q * q) * (&qe + &one) * &a,
                &qe * r((q + 1) * (q - 1) * (q - 1)) * &th * &a / (&qe + &qr),
                r(q * (q + 1)) * (&qe + &one) * &a * &nu / (&qe + &qr),
                zero.clone(),
                zero,
            ],
            Example::OneSystem => vec![
                nu.clone(),
                zero,
                r(q * (q + 1)) * &nu,
                &qe1 * &th * (&qe + &one) * &nu / (&qe + r(q * q)),
                &qe1 * r(q * q - 1) * &th * &nu / (&qe + r(q * q)),
            ],
            Example::SubRank3 => {
                self.inner(p)?;
                vec![&th * (&qe + &one) * &a, &qe * r(q * q - 1) * &th * &a, zero.clone(), zero.clone(), zero]
            }
            Example::Quadrangle => vec![&a * &nu, zero.clone(), r(q * (q + 1)) * &a * &nu, zero.clone(), zero],
            Example::Spread => vec![&th * &nu, zero.clone(), zero.clone(), &qe1 * &th * &nu, zero],
            Example::Hexagon => {
                self.inner(p)?;
                let c = r(q.pow(3) + 1);
                vec![&th * &c, zero.clone(), zero.clone(), r(q * q) * &th * &c, zero]
            }
            Example::Ekr => return None,
        };
        Some(v)
    }

    /// Number of lines of the example.
    pub fn size(self, p: &SchemeParams) -> Option<i128> {
        let q = p.q() as i128;
        Some(match self {
            Example::Plane => p.theta(),
            Example::Pencil => (q + 1) * (p.qe(1) + 1),
            Example::PerpAvoiding => q * q * (p.qe(0) + 1) * (p.qe(1) + 1),
            Example::OneSystem => p.qe(2) + 1,
            Example::Ekr => (p.qe(1) + 1) * p.theta(),
            Example::SubRank3 => {
                self.inner(p)?;
                (p.qe(0) + 1) * (p.qe(1) + 1) * p.theta()
            }
            Example::Quadrangle => (p.qe(1) + 1) * (p.qe(2) + 1),
            Example::Spread => (p.qe(2) + 1) * p.theta(),
            Example::Hexagon => {
                self.inner(p)?;
                (q.pow(3) + 1) * p.theta()
            }
        })
    }
}

fn to_rationals(v: &[i128]) -> Vec<Rational> {
    v.iter().map(|&x| big(BigInt::from(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::SchemeTables;

    #[test]
    fn closed_form_duals_match_the_q_matrix() {
        for p in SchemeParams::all_up_to(9) {
            let t = SchemeTables::new(p).unwrap();
            for ex in Example::ALL {
                let (Some(a), Some(aq)) = (ex.inner(&p), ex.dual(&p)) else { continue };
                assert_eq!(t.dual(&a), aq, "{ex:?} at {p}");
            }
        }
    }

    #[test]
    fn sizes_are_distribution_sums() {
        for p in SchemeParams::all_up_to(9) {
            for ex in Example::ALL {
                let Some(a) = ex.inner(&p) else { continue };
                let s: Rational = a.iter().sum();
                assert_eq!(s, big(BigInt::from(ex.size(&p).unwrap())), "{ex:?} at {p}");
            }
        }
    }

    #[test]
    fn spot_values() {
        let p = SchemeParams::new(2, 0).unwrap();
        assert_eq!(Example::PerpAvoiding.inner(&p).unwrap(), to_rationals(&[1, 3, 6, 6, 8]));
        assert_eq!(Example::Quadrangle.dual(&p).unwrap(), to_rationals(&[15, 0, 90, 0, 0]));
        let p = SchemeParams::new(3, 2).unwrap();
        assert_eq!(Example::Hexagon.inner(&p).unwrap(), to_rationals(&[1, 12, 0, 108, 243]));
    }
}
