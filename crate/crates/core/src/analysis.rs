//! Inner and dual distributions of line sets, regularity, divisibility and
//! geometric profiles.

use crate::algebra::rational::{self, big, int, Rational};
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::polar::{Eigenspace, PolarSpace, Relation};
use crate::scheme::SchemeTables;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A set of lines of one space, stored as sorted distinct indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineSet {
    pub space: String,
    lines: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl LineSet {
    /// Sorts `lines`; rejects duplicates and out-of-range indices.
    pub fn new(space: &PolarSpace, lines: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = space.num_lines();
        let mut v: Vec<u32> = Vec::new();
        for l in lines {
            if l >= n {
                return Err(Error::InvalidInput(format!("line index {l} out of range (n = {n})")));
            }
            v.push(l as u32);
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate line index".into()));
        }
        Ok(LineSet { space: space.fingerprint(), lines: v, name: None })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn all(space: &PolarSpace) -> Self {
        LineSet { space: space.fingerprint(), lines: (0..space.num_lines() as u32).collect(), name: None }
    }

    pub fn empty(space: &PolarSpace) -> Self {
        LineSet { space: space.fingerprint(), lines: vec![], name: None }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.lines.iter().map(|&l| l as usize)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.lines
    }

    pub fn contains(&self, l: usize) -> bool {
        self.lines.binary_search(&(l as u32)).is_ok()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for l in self.indices() {
            m[l] = true;
        }
        m
    }

    pub fn complement(&self, space: &PolarSpace) -> Self {
        let mask = self.mask(space.num_lines());
        LineSet {
            space: self.space.clone(),
            lines: (0..space.num_lines()).filter(|&l| !mask[l]).map(|l| l as u32).collect(),
            name: self.name.as_ref().map(|n| format!("complement of {n}")),
        }
    }

    /// Union of two sets of the same space.
    pub fn union(&self, other: &LineSet) -> Self {
        let mut v: Vec<u32> = self.lines.iter().chain(&other.lines).copied().collect();
        v.sort_unstable();
        v.dedup();
        LineSet { space: self.space.clone(), lines: v, name: None }
    }

    pub fn is_disjoint(&self, other: &LineSet) -> bool {
        other.lines.iter().all(|l| self.lines.binary_search(l).is_err())
    }

    fn check_space(&self, space: &PolarSpace) -> Result<()> {
        if self.space != space.fingerprint() {
            return Err(Error::FingerprintMismatch { expected: space.fingerprint(), found: self.space.clone() });
        }
        Ok(())
    }
}

/// Relation counts `c[i] = |{y ∈ Y : (x, y) ∈ R_i}|` for a single line `x`.
pub fn relation_counts(space: &PolarSpace, x: usize, y: &LineSet) -> [u64; 5] {
    let mut c = [0u64; 5];
    if space.has_label_table() {
        for m in y.indices() {
            c[space.relation(x, m).index()] += 1;
        }
    } else {
        let row = space.relation_row(x);
        for m in y.indices() {
            c[row[m].index()] += 1;
        }
    }
    c
}

/// Inner distribution `a_i = |{(x,y) ∈ R_i : x,y ∈ Y}| / |Y|`.
pub fn inner_distribution(space: &PolarSpace, y: &LineSet) -> Result<Vec<Rational>> {
    y.check_space(space)?;
    if y.is_empty() {
        return Err(Error::EmptySet);
    }
    let totals = y
        .as_slice()
        .par_iter()
        .map(|&x| relation_counts(space, x as usize, y))
        .reduce(|| [0; 5], |mut a, b| {
            for (s, t) in a.iter_mut().zip(b) {
                *s += t;
            }
            a
        });
    let size = int(y.len() as i64);
    Ok(totals.iter().map(|&c| int(c as i64) / &size).collect())
}

/// Inner distribution of a weighted set `sum w_x e_x`:
/// `a_i = w^T A_i w / (j^T w)`.
pub fn weighted_inner_distribution(space: &PolarSpace, weights: &[(usize, i64)]) -> Result<Vec<Rational>> {
    let total: i64 = weights.iter().map(|&(_, w)| w).sum();
    if total == 0 {
        return Err(Error::EmptySet);
    }
    let mut acc = [0i128; 5];
    for &(x, wx) in weights {
        let row = space.relation_row(x);
        for &(y, wy) in weights {
            acc[row[y].index()] += wx as i128 * wy as i128;
        }
    }
    Ok(acc.iter().map(|&c| big(BigInt::from(c)) / int(total)).collect())
}

/// `aQ`, asserting the Delsarte inequalities and `sum_j (aQ)_j = n a_00`.
pub fn dual_distribution(tables: &SchemeTables, a: &[Rational]) -> Result<Vec<Rational>> {
    let aq = tables.dual(a);
    if let Some(j) = aq.iter().position(|x| x.is_negative()) {
        return Err(Error::Consistency(format!(
            "(aQ)_{} = {} is negative",
            Eigenspace::ALL[j].label(),
            rational::to_string(&aq[j])
        )));
    }
    let n = big(BigInt::from(tables.n()));
    if aq.iter().sum::<Rational>() != &a[0] * n {
        return Err(Error::Consistency("dual distribution does not sum to n".into()));
    }
    Ok(aq)
}

/// Nontrivial eigenspaces with `(aQ)_j ≠ 0`.
pub fn support_of(aq: &[Rational]) -> Vec<Eigenspace> {
    Eigenspace::NONTRIVIAL.into_iter().filter(|j| !aq[j.index()].is_zero()).collect()
}

/// Eigenspace support of `Y`; empty for the empty set.
pub fn eigenspace_support(space: &PolarSpace, tables: &SchemeTables, y: &LineSet) -> Result<Vec<Eigenspace>> {
    if y.is_empty() {
        return Ok(vec![]);
    }
    let a = inner_distribution(space, y)?;
    Ok(support_of(&dual_distribution(tables, &a)?))
}

/// Inside/outside relation degrees of a regular set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTable {
    pub inside: [i128; 5],
    pub outside: [i128; 5],
}

/// Predicted degrees for a regular set of size `size` in `V_j`, or `None`
/// when some entry is not a nonnegative integer.
pub fn degree_table(tables: &SchemeTables, j: Eigenspace, size: usize) -> Option<DegreeTable> {
    let n = tables.n();
    let p = tables.p();
    let mut inside = [0i128; 5];
    let mut outside = [0i128; 5];
    for i in 0..5 {
        let num = size as i128 * (p[0][i] - p[j.index()][i]);
        if num % n != 0 {
            return None;
        }
        outside[i] = num / n;
        inside[i] = outside[i] + p[j.index()][i];
        if outside[i] < 0 || inside[i] < 0 {
            return None;
        }
    }
    Some(DegreeTable { inside, outside })
}

/// Result of [`regular_set_check`].
#[derive(Clone, Debug, Serialize)]
pub struct RegularVerdict {
    pub regular: bool,
    pub eigenspace: Option<Eigenspace>,
    pub support: Vec<Eigenspace>,
    pub degrees: Option<DegreeTable>,
    /// First vertex whose counts break constancy, when not regular.
    pub witness: Option<usize>,
}

/// Decides regularity twice: from the eigenspace support and from
/// vertexwise relation counts. The two must agree.
pub fn regular_set_check(space: &PolarSpace, tables: &SchemeTables, y: &LineSet) -> Result<RegularVerdict> {
    y.check_space(space)?;
    let n = space.num_lines();
    if y.is_empty() || y.len() == n {
        return Err(Error::NotProperSubset { size: y.len(), n });
    }
    let support = eigenspace_support(space, tables, y)?;
    let by_support = (support.len() == 1).then(|| support[0]);

    let mask = y.mask(n);
    let counts: Vec<[u64; 5]> = (0..n).into_par_iter().map(|x| relation_counts(space, x, y)).collect();
    let first_in = counts[y.as_slice()[0] as usize];
    let first_out = counts[(0..n).find(|&x| !mask[x]).expect("proper subset")];
    let witness = (0..n).find(|&x| counts[x] != if mask[x] { first_in } else { first_out });

    let by_counts = if witness.is_none() {
        Eigenspace::NONTRIVIAL.into_iter().find(|&j| {
            degree_table(tables, j, y.len()).is_some_and(|d| {
                d.inside.iter().zip(&first_in).all(|(&a, &b)| a == b as i128)
                    && d.outside.iter().zip(&first_out).all(|(&a, &b)| a == b as i128)
            })
        })
    } else {
        None
    };
    if by_support != by_counts || (witness.is_none() && by_counts.is_none()) {
        return Err(Error::Consistency(format!(
            "regularity routes disagree: support gives {by_support:?}, vertex counts give {by_counts:?}"
        )));
    }
    Ok(RegularVerdict {
        regular: by_support.is_some(),
        eigenspace: by_support,
        degrees: by_support.map(|_| DegreeTable {
            inside: first_in.map(|c| c as i128),
            outside: first_out.map(|c| c as i128),
        }),
        support,
        witness,
    })
}

/// Outcome of [`divisibility_report`].
#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityReport {
    pub size: u64,
    pub eigenspace: Eigenspace,
    pub consistent: bool,
    /// Sizes must be `m * modulus`.
    pub modulus: String,
    pub m: Option<i128>,
    pub max_m: i128,
    pub excluded_m: Vec<String>,
    pub reason: String,
}

/// Necessary conditions on `|Y|` for `χ_Y ∈ <j> + V_j`.
pub fn divisibility_report(size: u64, j: Eigenspace, params: &SchemeParams) -> Result<DivisibilityReport> {
    let q = params.q() as i128;
    let n = params.n();
    let theta = params.theta();
    let s = size as i128;
    let mk = |consistent: bool, modulus: i128, m: Option<i128>, max_m: i128, excluded: Vec<String>, reason: String| {
        DivisibilityReport {
            size,
            eigenspace: j,
            consistent,
            modulus: modulus.to_string(),
            m,
            max_m,
            excluded_m: excluded,
            reason,
        }
    };
    if s > n {
        return Ok(mk(false, 1, None, n, vec![], format!("size exceeds n = {n}")));
    }
    let divide = |modulus: i128| -> (Option<i128>, i128) {
        ((s % modulus == 0).then_some(s / modulus), n / modulus)
    };
    let report = match j {
        Eigenspace::V00 => return Err(Error::Precondition("j must be a nontrivial eigenspace".into())),
        Eigenspace::V10 => {
            let modulus = (params.qe(1) + 1) * theta;
            let (m, max_m) = divide(modulus);
            let bad = [1, params.qe(2)];
            let consistent = m.is_some_and(|m| !bad.contains(&m));
            let reason = match m {
                None => format!("{size} is not a multiple of {modulus}"),
                Some(m) if bad.contains(&m) => format!("m = {m} is excluded"),
                Some(_) => "ok".into(),
            };
            mk(consistent, modulus, m, max_m, bad.iter().map(|b| b.to_string()).collect(), reason)
        }
        Eigenspace::V11 => {
            let modulus = (params.qe(1) + 1) * (params.qe(2) + 1);
            let (m, max_m) = divide(modulus);
            let reason = if m.is_some() { "ok".into() } else { format!("{size} is not a multiple of {modulus}") };
            mk(m.is_some(), modulus, m, max_m, vec![], reason)
        }
        Eigenspace::V20 => {
            let nu = params.qe(2) + 1;
            if params.twice_e() == 2 {
                let modulus = q.pow(4) + q * q + 1;
                let (m, max_m) = divide(modulus);
                let lo = q + 1;
                let hi = q * q * (q + 1);
                let top = (q * q + 1) * (q + 1);
                let allowed = |m: i128| m == 0 || (lo..=hi).contains(&m) || m == top;
                let consistent = m.is_some_and(allowed);
                let reason = match m {
                    None => format!("{size} is not a multiple of {modulus}"),
                    Some(m) if !allowed(m) => format!("m = {m} is outside {{0}} ∪ [{lo}, {hi}] ∪ {{{top}}}"),
                    Some(_) => "ok".into(),
                };
                let excluded = vec![format!("[1, {}]", q), format!("[{}, {}]", hi + 1, top - 1)];
                mk(consistent, modulus, m, max_m, excluded, reason)
            } else if q % 2 == 0 {
                let modulus = theta * nu;
                let (m, max_m) = divide(modulus);
                let reason = if m.is_some() { "ok".into() } else { format!("{size} is not a multiple of {modulus}") };
                mk(m.is_some(), modulus, m, max_m, vec![], reason)
            } else {
                let modulus = theta * nu / 2;
                let (m, max_m) = divide(modulus);
                // m = 1 leaves a negative R11 count inside Y; its complement is m = max_m - 1
                let bad = [1, 2 * params.qe(1) + 1];
                let consistent = m.is_some_and(|m| !bad.contains(&m));
                let reason = match m {
                    None => format!("{size} is not a multiple of {modulus}"),
                    Some(m) if bad.contains(&m) => format!("m = {m} is excluded"),
                    Some(_) => "ok".into(),
                };
                mk(consistent, modulus, m, max_m, bad.iter().map(|b| b.to_string()).collect(), reason)
            }
        }
        Eigenspace::V21 => {
            let consistent = s == 0 || s == n;
            let reason = if consistent { "ok".into() } else { format!("only 0 and n = {n} are possible") };
            mk(consistent, n, consistent.then_some(if s == 0 { 0 } else { 1 }), 1, vec![], reason)
        }
    };
    Ok(report)
}

/// Side conditions for [`span_orthogonal_divisor`].
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct DivisorFlags {
    /// Some point of the space lies on no line of `Z`.
    pub uncovered_point: bool,
    /// The space has a plane spread.
    pub has_spread: bool,
}

/// Divisibility modulus for `|Z|` when `χ_Z ⊥ sum_{s ∈ S} V_s`.
#[derive(Clone, Debug, Serialize)]
pub struct DivisorReport {
    pub lemma: String,
    /// Modulus as stated for this case.
    pub printed: String,
    /// Modulus forced by the witness family `W` in `<j> + sum V_s`:
    /// the numerator of `n / |W|` in lowest terms.
    pub derived: Option<String>,
    pub agree: bool,
}

/// Numerator of `n / w` in lowest terms.
fn derived_modulus(n: &Rational, w: &Rational) -> Rational {
    big((n / w).numer().clone())
}

pub fn span_orthogonal_divisor(s: &[Eigenspace], params: &SchemeParams, flags: DivisorFlags) -> Result<DivisorReport> {
    use Eigenspace::*;
    let mut set: Vec<Eigenspace> = s.to_vec();
    set.sort();
    set.dedup();
    let q = params.q() as i128;
    let qr = |x: i128| big(BigInt::from(x));
    let n = qr(params.n());
    let theta = qr(params.theta());
    let nu = qr(params.qe(2) + 1);
    let a = qr(params.qe(1) + 1);
    let e2 = params.twice_e();
    let report = |lemma: &str, printed: Rational, derived: Option<Rational>| DivisorReport {
        lemma: lemma.into(),
        agree: derived.as_ref().is_none_or(|d| *d == printed),
        printed: rational::to_string(&printed),
        derived: derived.as_ref().map(rational::to_string),
    };
    match set.as_slice() {
        [V10, V20] => Ok(report("plane", &a * &nu, Some(derived_modulus(&n, &theta)))),
        [V10, V11] => {
            let printed = if e2 == 2 {
                qr(q.pow(4) + q * q + 1)
            } else if q % 2 == 0 {
                &theta * &nu
            } else {
                &theta * &nu / int(2)
            };
            let pencil = qr(q + 1) * &a;
            Ok(report("point-pencil", printed, Some(derived_modulus(&n, &pencil))))
        }
        [V10] if flags.uncovered_point => {
            let printed = match e2 {
                0 | 4 if q % 2 == 0 => nu.clone(),
                0 | 4 => &nu / int(2),
                1 | 3 => &nu / qr(params.qe(0) + 1),
                _ => qr(q * q - q + 1),
            };
            // the weighted pencil combination has size (q^e+1)(q^{e+1}+1)ϑ and
            // meets Z only in lines off the uncovered point
            let w = qr(params.qe(0) + 1) * &a * &theta;
            Ok(report("uncovered point", printed, Some(derived_modulus(&n, &w))))
        }
        [V11] => {
            let printed = match e2 {
                1 => qr(params.pow_half(1) + 1) * qr(params.pow_half(5) + 1),
                3 if q % 3 == 2 => qr(params.pow_half(5) + 1) * qr(params.pow_half(7) + 1) / int(3),
                _ => &a * &nu,
            };
            // the GQ witness only exists for e ≤ 1
            let derived = (e2 <= 2).then(|| derived_modulus(&n, &(&a * &nu)));
            Ok(report("generalized quadrangle", printed, derived))
        }
        [V20] if flags.has_spread => {
            Ok(report("spread", a.clone(), Some(derived_modulus(&n, &(&theta * &nu)))))
        }
        _ => Err(Error::NoDivisorKnown(format!("{set:?} with {flags:?}"))),
    }
}

/// Histogram of `|Y ∩ Π|` over planes `Π`.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneProfile {
    pub histogram: BTreeMap<usize, usize>,
    /// Every plane meeting `Y` in exactly `q+1` lines meets it in a pencil.
    pub pencil_condition: bool,
}

pub fn plane_profile(space: &PolarSpace, y: &LineSet) -> PlaneProfile {
    let mask = y.mask(space.num_lines());
    let q1 = space.q() as usize + 1;
    let mut histogram = BTreeMap::new();
    let mut pencil_condition = true;
    for p in 0..space.num_planes() {
        let inside: Vec<usize> = space.plane_lines(p).iter().map(|&l| l as usize).filter(|&l| mask[l]).collect();
        *histogram.entry(inside.len()).or_insert(0) += 1;
        if inside.len() == q1 && q1 > 1 {
            let common = space
                .line_points(inside[0])
                .iter()
                .any(|pt| inside.iter().all(|&l| space.line_points(l).contains(pt)));
            pencil_condition &= common;
        }
    }
    PlaneProfile { histogram, pencil_condition }
}

/// Combinatorial design level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignLevel {
    Points,
    Planes,
}

#[derive(Clone, Debug, Serialize)]
pub struct DesignVerdict {
    pub level: DesignLevel,
    /// Constant number of lines of `Y` per point/plane, if any.
    pub m: Option<u64>,
    /// Size formula and support restriction both hold (vacuous if `m` is `None`).
    pub consistent: bool,
}

pub fn design_check(space: &PolarSpace, tables: &SchemeTables, y: &LineSet, level: DesignLevel) -> Result<DesignVerdict> {
    let mask = y.mask(space.num_lines());
    let counts: Vec<u64> = match level {
        DesignLevel::Points => (0..space.num_points())
            .map(|p| space.point_lines(p).iter().filter(|&&l| mask[l as usize]).count() as u64)
            .collect(),
        DesignLevel::Planes => (0..space.num_planes())
            .map(|p| space.plane_lines(p).iter().filter(|&&l| mask[l as usize]).count() as u64)
            .collect(),
    };
    let m = counts.iter().all(|&c| c == counts[0]).then(|| counts[0]);
    let Some(m) = m else {
        return Ok(DesignVerdict { level, m: None, consistent: true });
    };
    let p = space.params();
    let (size_ok, allowed) = match level {
        DesignLevel::Points => {
            let want = m as i128 * (p.qe(2) + 1) * p.theta();
            (want == y.len() as i128 * (p.q() as i128 + 1), [Eigenspace::V20, Eigenspace::V21])
        }
        DesignLevel::Planes => {
            let want = m as i128 * (p.qe(1) + 1) * (p.qe(2) + 1);
            (want == y.len() as i128, [Eigenspace::V11, Eigenspace::V21])
        }
    };
    let support = eigenspace_support(space, tables, y)?;
    let consistent = size_ok && support.iter().all(|j| allowed.contains(j));
    Ok(DesignVerdict { level, m: Some(m), consistent })
}

/// `|Y ∩ Z|` for two sets of the same space.
pub fn intersection_size(y: &LineSet, z: &LineSet) -> usize {
    z.as_slice().iter().filter(|l| y.as_slice().binary_search(l).is_ok()).count()
}

/// Converts a distribution to integers when every entry is integral.
pub fn as_integers(v: &[Rational]) -> Option<Vec<i128>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer().to_i128()).flatten()).collect()
}

/// Relation names in display order.
pub fn relation_labels() -> [&'static str; 5] {
    Relation::ALL.map(|r| r.name())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::Family;

    fn o6() -> (PolarSpace, SchemeTables) {
        let s = PolarSpace::build(Family::O6Plus, 2).unwrap();
        let t = SchemeTables::for_space(&s).unwrap();
        (s, t)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn plane_distribution_and_support() {
        let (s, t) = o6();
        let y = LineSet::new(&s, s.plane_lines(0).iter().map(|&l| l as usize)).unwrap();
        let a = inner_distribution(&s, &y).unwrap();
        assert_eq!(a, ints(&[1, 6, 0, 0, 0]));
        assert_eq!(eigenspace_support(&s, &t, &y).unwrap(), vec![Eigenspace::V10, Eigenspace::V20]);
        let prof = plane_profile(&s, &y);
        assert_eq!(prof.histogram.get(&7), Some(&1));
    }

    #[test]
    fn empty_set_conventions() {
        let (s, t) = o6();
        let e = LineSet::empty(&s);
        assert!(matches!(inner_distribution(&s, &e), Err(Error::EmptySet)));
        assert!(eigenspace_support(&s, &t, &e).unwrap().is_empty());
        assert!(regular_set_check(&s, &t, &e).is_err());
        assert!(matches!(regular_set_check(&s, &t, &LineSet::all(&s)), Err(Error::NotProperSubset { .. })));
        assert_eq!(plane_profile(&s, &e).histogram.get(&0), Some(&30));
    }

    #[test]
    fn pencil_is_not_regular() {
        let (s, t) = o6();
        let y = LineSet::new(&s, s.point_lines(0).iter().map(|&l| l as usize)).unwrap();
        let v = regular_set_check(&s, &t, &y).unwrap();
        assert!(!v.regular);
        assert_eq!(v.support, vec![Eigenspace::V10, Eigenspace::V11]);
        assert!(v.witness.is_some());
    }

    #[test]
    fn full_set_is_a_point_design() {
        let (s, t) = o6();
        let d = design_check(&s, &t, &LineSet::all(&s), DesignLevel::Points).unwrap();
        assert_eq!(d.m, Some(9));
        assert!(d.consistent);
    }

    #[test]
    fn divisibility_table_examples() {
        let p = SchemeParams::new(2, 0).unwrap();
        assert!(!divisibility_report(21, Eigenspace::V10, &p).unwrap().consistent);
        assert!(divisibility_report(0, Eigenspace::V21, &p).unwrap().consistent);
        assert!(divisibility_report(105, Eigenspace::V21, &p).unwrap().consistent);
        assert!(!divisibility_report(15, Eigenspace::V21, &p).unwrap().consistent);
        for m in 0..=3 {
            assert!(divisibility_report(35 * m, Eigenspace::V20, &p).unwrap().consistent);
        }
        assert!(!divisibility_report(36, Eigenspace::V20, &p).unwrap().consistent);
    }

    #[test]
    fn divisor_lemmas() {
        use Eigenspace::*;
        let p = SchemeParams::new(2, 0).unwrap();
        let f = DivisorFlags::default();
        let r = span_orthogonal_divisor(&[V10, V20], &p, f).unwrap();
        assert_eq!(r.printed, "15/1");
        assert!(r.agree);
        let p1 = SchemeParams::new(3, 2).unwrap();
        assert_eq!(span_orthogonal_divisor(&[V11, V10], &p1, f).unwrap().printed, "91/1");
        let p32 = SchemeParams::new(4, 3).unwrap();
        assert_eq!(span_orthogonal_divisor(&[V11], &p32, f).unwrap().printed, format!("{}/1", 33 * 129));
        assert!(matches!(span_orthogonal_divisor(&[V21], &p, f), Err(Error::NoDivisorKnown(_))));
        // the GQ case is contradicted by a plane: 7 lines orthogonal to V11
        let gq = span_orthogonal_divisor(&[V11], &p, f).unwrap();
        assert_eq!(gq.printed, "15/1");
        assert_eq!(gq.derived.as_deref(), Some("7/1"));
        assert!(!gq.agree);
    }

    #[test]
    fn line_set_validation() {
        let (s, _) = o6();
        assert!(LineSet::new(&s, [1, 1]).is_err());
        assert!(LineSet::new(&s, [105]).is_err());
        let y = LineSet::new(&s, [5, 2, 9]).unwrap();
        assert_eq!(y.as_slice(), &[2, 5, 9]);
        assert_eq!(y.complement(&s).len(), 102);
    }
}
