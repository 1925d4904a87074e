//! Hyperplane intersection profiles of line unions, and the strongly
//! regular graphs they give.

use crate::algebra::rational::{big, int, to_string, Rational};
use crate::analysis::{eigenspace_support, LineSet};
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::polar::{Eigenspace, Family, PolarSpace};
use crate::scheme::SchemeTables;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct TwoWeightProfile {
    /// Number of hyperplanes per covered-point count.
    pub counts: BTreeMap<usize, usize>,
    /// `m = |Y| / (q^{e+2}+1)` as `"num/den"`.
    pub m: String,
    /// Count for nondegenerate hyperplanes and those whose radical is uncovered.
    pub full: String,
    /// Count for degenerate hyperplanes whose radical is covered.
    pub reduced: String,
    /// Every hyperplane hit its predicted count.
    pub matches: bool,
}

/// Counts the points on lines of `Y` in every hyperplane `v^⊥`.
pub fn two_weight_profile(space: &PolarSpace, tables: &SchemeTables, y: &LineSet) -> Result<TwoWeightProfile> {
    if !matches!(space.family(), Family::Sp6 | Family::U7 | Family::O8Minus) {
        return Err(Error::Precondition("two-weight profiles need Sp(6,q), U(7,q) or O-(8,q)".into()));
    }
    let mut covered = vec![false; space.num_points()];
    for l in y.indices() {
        for &p in space.line_points(l) {
            if std::mem::replace(&mut covered[p as usize], true) {
                return Err(Error::Precondition("lines of Y meet".into()));
            }
        }
    }
    if eigenspace_support(space, tables, y)?.contains(&Eigenspace::V10) {
        return Err(Error::Precondition("χ_Y is not orthogonal to V10".into()));
    }
    let p = space.params();
    let m = int(y.len() as i64) / big(BigInt::from(p.qe(2) + 1));
    let full = &m * big(BigInt::from((p.q() as i128 + 1) * (p.qe(1) + 1)));
    let reduced = &full - big(BigInt::from(p.qe(1)));
    let f = space.field();
    let pts: Vec<&[u8]> = (0..space.num_points()).filter(|&i| covered[i]).map(|i| space.point(i)).collect();
    let hyperplanes = f.projective_points(space.dim());
    let rows: Vec<(usize, bool)> = hyperplanes
        .par_iter()
        .map(|v| {
            let fv = space.form().functional(f, v);
            let c = pts.iter().filter(|x| f.dot(x, &fv) == 0).count();
            let radical_covered = space.point_index(v).is_some_and(|i| covered[i]);
            (c, radical_covered)
        })
        .collect();
    let mut counts = BTreeMap::new();
    let mut matches = true;
    for (c, rad) in rows {
        *counts.entry(c).or_insert(0) += 1;
        let want = if rad { &reduced } else { &full };
        matches &= int(c as i64) == *want;
    }
    Ok(TwoWeightProfile { counts, m: to_string(&m), full: to_string(&full), reduced: to_string(&reduced), matches })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: i128,
    pub k: i128,
    pub r: i128,
    pub s: i128,
    pub lambda: i128,
    pub mu: i128,
}

/// Parameters `(v, k, r, s)` of the strongly regular graph attached to a
/// line family of size `m(q^{e+2}+1)`, plus `λ = k + r + s + rs` and
/// `μ = k + rs`.
pub fn srg_parameters(m: &Rational, params: &SchemeParams) -> Result<SrgParams> {
    let nu = big(BigInt::from(params.qe(2) + 1));
    let size = m * &nu;
    if !size.is_integer() || m <= &Rational::zero() {
        return Err(Error::Precondition(format!("m = {} must be positive with m(q^(e+2)+1) integral", to_string(m))));
    }
    let q = params.q() as i128;
    let v = params.pow_half(2 * params.twice_e() + 8);
    let as_int = |x: Rational| -> Result<i128> {
        if x.is_integer() {
            x.to_integer().to_i128().ok_or_else(|| Error::Precondition("overflow".into()))
        } else {
            Err(Error::Precondition(format!("m = {} gives non-integral parameters", to_string(m))))
        }
    };
    let k = as_int(&size * big(BigInt::from(q * q - 1)))?;
    let r = as_int(m * big(BigInt::from(q * q - 1)))?;
    let s = r - params.qe(2);
    let mu = k + r * s;
    let lambda = mu + r + s;
    if mu < 0 || lambda < 0 {
        return Err(Error::Consistency(format!("infeasible strongly regular parameters λ = {lambda}, μ = {mu}")));
    }
    Ok(SrgParams { v, k, r, s, lambda, mu })
}
