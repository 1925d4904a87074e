//! Shared fixtures and independent closed-form oracles for integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use polar_lines::{Eigenspace, Family, PolarSpace, Relation, SchemeParams, SchemeTables};
use std::sync::{Mutex, OnceLock};

pub type Q = BigRational;

pub fn r(n: i128) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn rf(n: i128, d: i128) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Builds each space once per test binary.
pub fn space(family: Family, q: u32) -> &'static (PolarSpace, SchemeTables) {
    type Cache = Mutex<Vec<(Family, u32, &'static (PolarSpace, SchemeTables))>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some((_, _, s)) = cache.lock().unwrap().iter().find(|(f, qq, _)| *f == family && *qq == q) {
        return s;
    }
    // build outside the lock so different spaces build concurrently
    let s = PolarSpace::build(family, q).unwrap_or_else(|e| panic!("{family:?} q={q}: {e}"));
    let t = SchemeTables::for_space(&s).unwrap();
    let mut guard = cache.lock().unwrap();
    if let Some((_, _, s)) = guard.iter().find(|(f, qq, _)| *f == family && *qq == q) {
        return s;
    }
    let leaked: &'static _ = Box::leak(Box::new((s, t)));
    guard.push((family, q, leaked));
    leaked
}

/// `q^{k/2}` for the exponent bookkeeping used by the oracles below.
pub struct Pw {
    pub q: i128,
    pub twice_e: u32,
}

impl Pw {
    pub fn new(p: &SchemeParams) -> Self {
        Pw { q: p.q() as i128, twice_e: p.twice_e() }
    }

    fn half(&self, k: u32) -> i128 {
        let s = (1..=self.q).find(|s| s * s == self.q);
        match (k % 2, s) {
            (0, _) => self.q.pow(k / 2),
            (_, Some(s)) => s.pow(k),
            _ => panic!("odd power of a non-square"),
        }
    }

    /// `q^{e + k}`.
    pub fn qe(&self, k: i32) -> i128 {
        self.half((self.twice_e as i32 + 2 * k) as u32)
    }

    pub fn theta(&self) -> i128 {
        self.q * self.q + self.q + 1
    }

    pub fn n(&self) -> i128 {
        (self.qe(1) + 1) * (self.qe(2) + 1) * self.theta()
    }
}

/// Closed-form LP bounds stated for the forbidden-relation cases, written
/// from the statements only. `None` where no closed form is stated.
pub fn lp_closed_form(forbid: &[Relation], p: &SchemeParams) -> Option<Q> {
    use Relation::*;
    let w = Pw::new(p);
    let q = w.q;
    let e0 = w.twice_e == 0;
    let gq = r((w.qe(1) + 1) * (w.qe(2) + 1));
    let r11r20 = rf((w.qe(2) + 1) * (w.qe(2) + q * q * q + q - 1), w.qe(1) + 2 * q - 1);
    Some(match forbid {
        [R10] | [R10, R20] => gq,
        [R11] => r((w.qe(2) + 1) * w.theta()),
        [R20] if !e0 || q == 2 => gq,
        [R20] => r11r20,
        [R10, R11] => rf(w.theta() * (w.qe(2) + 1), q + 1),
        [R10, R21] if !e0 || q == 2 => {
            rf(w.theta() * (w.qe(1) + 1) * (w.qe(1) + 2 * q - 1), w.qe(2) + q * q * q + q - 1)
        }
        [R10, R21] => rf(2 * q * q + q - 1, q - 1),
        [R11, R20] => r11r20,
        [R11, R21] | [R10, R11, R21] | [R11, R20, R21] => r(w.theta()),
        [R10, R20, R21] => r(w.qe(1) + 1),
        _ => return None,
    })
}

/// The stated integrality pattern: `Some(true)` if the bound is claimed to
/// be an integer at `p`, `Some(false)` if claimed not to be.
pub fn lp_integrality_claim(forbid: &[Relation], p: &SchemeParams) -> Option<bool> {
    use Relation::*;
    let (q, te) = (p.q(), p.twice_e());
    match forbid {
        [R10, R21] if te > 0 || q == 2 => Some(false),
        [R10, R21] => Some(q == 3),
        [R11, R20] => Some(matches!((te, q), (0, 2) | (0, 5) | (0, 7) | (2, 3))),
        _ => None,
    }
}

/// Admissible sizes for `<j> + V_j` as summarized by the divisibility
/// statement, with the exclusion for `j = 20`, `q` odd taken as the
/// complement of `m = 1` (`2q^{e+1}+1`).
pub fn admissible_size(size: i128, j: Eigenspace, p: &SchemeParams) -> bool {
    let w = Pw::new(p);
    let (q, n) = (w.q, w.n());
    if !(0..=n).contains(&size) {
        return false;
    }
    let in_range = |unit: i128, ok: &dyn Fn(i128) -> bool| size % unit == 0 && ok(size / unit);
    match j {
        Eigenspace::V00 => true,
        Eigenspace::V10 => in_range((w.qe(1) + 1) * w.theta(), &|m| m != 1 && m != w.qe(2)),
        Eigenspace::V11 => in_range((w.qe(1) + 1) * (w.qe(2) + 1), &|_| true),
        Eigenspace::V20 if w.twice_e == 2 => in_range(q.pow(4) + q * q + 1, &|m| {
            m == 0 || (q + 1..=q * q * (q + 1)).contains(&m) || m == (q * q + 1) * (q + 1)
        }),
        Eigenspace::V20 if q % 2 == 0 => in_range(w.theta() * (w.qe(2) + 1), &|_| true),
        Eigenspace::V20 => in_range(w.theta() * (w.qe(2) + 1) / 2, &|m| m != 1 && m != 2 * w.qe(1) + 1),
        Eigenspace::V21 => size == 0 || size == n,
    }
}

/// The printed exclusion `m ≠ 2q^{e+2}+1` for `j = 20`, `q` odd, `e ≠ 1`.
pub fn printed_v20_exclusion(p: &SchemeParams) -> i128 {
    let w = Pw::new(p);
    2 * w.qe(2) + 1
}
