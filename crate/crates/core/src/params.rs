//! The pair `(q, e)` and the closed-form counts that depend only on it.

use crate::algebra::field::prime_power;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Legal parameters of a rank-3 polar space: field order `q` and `e` stored
/// as `twice_e = 2e ∈ {0, 1, 2, 3, 4}`. Odd `twice_e` requires square `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchemeParams {
    q: u32,
    twice_e: u32,
    sqrt_q: Option<u32>,
}

impl SchemeParams {
    pub fn new(q: u32, twice_e: u32) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::IllegalParameters(format!("q = {q} is not a prime power")));
        }
        if twice_e > 4 {
            return Err(Error::IllegalParameters(format!("e = {}/2 is not one of 0, 1/2, 1, 3/2, 2", twice_e)));
        }
        let sqrt_q = (1..=q).find(|r| r * r == q);
        let sqrt_q = sqrt_q.filter(|_| prime_power(q).is_some_and(|(_, h)| h % 2 == 0));
        if twice_e % 2 == 1 && sqrt_q.is_none() {
            return Err(Error::IllegalParameters(format!("half-integer e needs square q, got q = {q}")));
        }
        Ok(SchemeParams { q, twice_e, sqrt_q })
    }

    /// Parses `e` from text such as `"1"`, `"1/2"`, `"1.5"` or `"3/2"`.
    pub fn parse_e(s: &str) -> Result<u32> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot parse e = '{s}'"));
        let twice = if let Some((n, d)) = s.split_once('/') {
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            match d.trim() {
                "2" => n,
                "1" => 2 * n,
                _ => return Err(bad()),
            }
        } else if let Some((i, f)) = s.split_once('.') {
            let i: u32 = i.parse().map_err(|_| bad())?;
            match f.trim_end_matches('0') {
                "" => 2 * i,
                "5" => 2 * i + 1,
                _ => return Err(bad()),
            }
        } else {
            2 * s.parse::<u32>().map_err(|_| bad())?
        };
        Ok(twice)
    }

    /// Every legal `(q, e)` with `q ≤ max_q`, ordered by `q` then `e`.
    pub fn all_up_to(max_q: u32) -> Vec<SchemeParams> {
        (2..=max_q)
            .flat_map(|q| (0..=4).filter_map(move |e| SchemeParams::new(q, e).ok()))
            .collect()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn twice_e(&self) -> u32 {
        self.twice_e
    }

    /// `e` as text: `"0"`, `"1/2"`, ...
    pub fn e_string(&self) -> String {
        if self.twice_e % 2 == 0 {
            (self.twice_e / 2).to_string()
        } else {
            format!("{}/2", self.twice_e)
        }
    }

    /// `q^(k/2)`. Panics for odd `k` when `q` is not a square, which
    /// [`SchemeParams::new`] rules out for every exponent the formulas use.
    pub fn pow_half(&self, k: u32) -> i128 {
        if k % 2 == 0 {
            (self.q as i128).pow(k / 2)
        } else {
            (self.sqrt_q.expect("square q for half-integer exponent") as i128).pow(k)
        }
    }

    /// `q^(e + k)` for integer `k ≥ -e`.
    pub fn qe(&self, k: i32) -> i128 {
        let t = self.twice_e as i32 + 2 * k;
        assert!(t >= 0, "negative exponent");
        self.pow_half(t as u32)
    }

    pub fn qi(&self, k: u32) -> i128 {
        (self.q as i128).pow(k)
    }

    /// Number of lines, `(q^{e+1}+1)(q^{e+2}+1)(q²+q+1)`.
    pub fn n(&self) -> i128 {
        (self.qe(1) + 1) * (self.qe(2) + 1) * self.theta()
    }

    /// `q² + q + 1`, the number of lines (and points) in a plane.
    pub fn theta(&self) -> i128 {
        let q = self.q as i128;
        q * q + q + 1
    }

    pub fn num_points(&self) -> i128 {
        (self.qe(2) + 1) * self.theta()
    }

    pub fn num_planes(&self) -> i128 {
        (self.qe(0) + 1) * (self.qe(1) + 1) * (self.qe(2) + 1)
    }

    /// Lines through a point: `(q+1)(q^{e+1}+1)`.
    pub fn lines_per_point(&self) -> i128 {
        (self.q as i128 + 1) * (self.qe(1) + 1)
    }

    pub fn planes_per_line(&self) -> i128 {
        self.qe(0) + 1
    }
}

impl fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q, e) = ({}, {})", self.q, self.e_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_counts() {
        assert_eq!(SchemeParams::new(2, 0).unwrap().n(), 105);
        assert_eq!(SchemeParams::new(3, 2).unwrap().n(), 3640);
        assert_eq!(SchemeParams::new(4, 1).unwrap().n(), 6237);
        assert_eq!(SchemeParams::new(2, 0).unwrap().num_points(), 35);
    }

    #[test]
    fn legality() {
        assert!(SchemeParams::new(2, 1).is_err());
        assert!(SchemeParams::new(4, 1).is_ok());
        assert!(SchemeParams::new(6, 0).is_err());
        assert!(SchemeParams::new(9, 5).is_err());
        assert_eq!(SchemeParams::all_up_to(4).len(), 3 + 3 + 5);
    }

    #[test]
    fn parse_e() {
        assert_eq!(SchemeParams::parse_e("0").unwrap(), 0);
        assert_eq!(SchemeParams::parse_e("1/2").unwrap(), 1);
        assert_eq!(SchemeParams::parse_e("1.5").unwrap(), 3);
        assert_eq!(SchemeParams::parse_e("2").unwrap(), 4);
        assert!(SchemeParams::parse_e("1/3").is_err());
    }

    #[test]
    fn double_counting_identities() {
        for p in SchemeParams::all_up_to(9) {
            let q1 = p.q() as i128 + 1;
            assert_eq!(p.num_points() * p.lines_per_point(), p.n() * q1);
            assert_eq!(p.num_planes() * p.theta(), p.n() * p.planes_per_line());
        }
    }
}
