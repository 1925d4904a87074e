//! Exact Delsarte linear programming bounds for line sets avoiding some
//! relations.
//!
//! The programs have at most four variables, so both the primal and the
//! dual are solved by enumerating vertices over the rationals. The dual
//! optimum is returned as a certificate: multipliers `y_j ≥ 0` with
//! `-sum_j y_j Q[i][j] ≥ 1` for every allowed relation `i`, which bound
//! every feasible `|Y|` by `1 + sum_j y_j Q[0][j]`.

use crate::algebra::rational::{self, int, Rational};
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::polar::{Eigenspace, Relation};
use crate::scheme::SchemeTables;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// A Delsarte program: maximize `sum a_i` subject to `a_00 = 1`, `a_i = 0`
/// on forbidden relations, `a ≥ 0` and `aQ ≥ 0`.
#[derive(Clone, Debug)]
pub struct LpInstance {
    pub params: SchemeParams,
    pub forbidden: Vec<Relation>,
}

#[derive(Clone, Debug)]
pub struct LpResult {
    pub instance: LpInstance,
    pub optimum: Rational,
    /// An optimal inner distribution, all five entries.
    pub a: Vec<Rational>,
    /// Eigenspaces `j ≠ 00` with `(aQ)_j = 0` at every optimal vertex.
    pub tight: Vec<Eigenspace>,
    /// Dual multipliers `y_j`, one per eigenspace.
    pub certificate: Vec<Rational>,
}

impl LpInstance {
    pub fn new(params: SchemeParams, forbidden: &[Relation]) -> Result<Self> {
        let mut f: Vec<Relation> = forbidden.to_vec();
        f.sort();
        f.dedup();
        if f.contains(&Relation::R00) {
            return Err(Error::InvalidInput("R00 cannot be forbidden".into()));
        }
        if f.is_empty() || f.len() == 4 {
            return Err(Error::InvalidInput("forbidden set must be a nonempty proper subset of R10..R21".into()));
        }
        Ok(LpInstance { params, forbidden: f })
    }

    /// Relations with a free variable.
    pub fn allowed(&self) -> Vec<Relation> {
        Relation::ALL[1..].iter().copied().filter(|r| !self.forbidden.contains(r)).collect()
    }
}

/// Every vertex of `{x : A x ≤ b}` attaining the maximum of `c·x`.
/// Returns `None` if there are no vertices.
fn optimal_vertices(rows: &[(Vec<Rational>, Rational)], c: &[Rational]) -> Option<(Rational, Vec<Vec<Rational>>)> {
    let k = c.len();
    let mut best: Option<(Rational, Vec<Vec<Rational>>)> = None;
    for subset in combinations(rows.len(), k) {
        let Some(x) = solve(&subset.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>()) else { continue };
        let feasible = rows.iter().all(|(a, b)| dot(a, &x) <= *b);
        if !feasible {
            continue;
        }
        let v = dot(c, &x);
        match &mut best {
            Some((bv, xs)) if v == *bv => {
                if !xs.contains(&x) {
                    xs.push(x);
                }
            }
            Some((bv, _)) if v < *bv => {}
            _ => best = Some((v, vec![x])),
        }
    }
    best
}

fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// Unique solution of the square system, if any.
fn solve(rows: &[(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
    let k = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(a, b)| {
            let mut r = a.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=k {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[k].clone()).collect())
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Solves the instance exactly and certifies the optimum by duality.
pub fn delsarte_lp_bound(instance: &LpInstance) -> Result<LpResult> {
    let tables = SchemeTables::new(instance.params)?;
    let q = tables.q();
    let free: Vec<usize> = instance.allowed().iter().map(|r| r.index()).collect();
    let k = free.len();

    // primal: -sum_i x_i Q[i][j] ≤ Q[0][j], -x_i ≤ 0
    let mut rows = Vec::new();
    for j in 0..5 {
        rows.push((free.iter().map(|&i| -&q[i][j]).collect::<Vec<_>>(), q[0][j].clone()));
    }
    for t in 0..k {
        let mut a = vec![int(0); k];
        a[t] = int(-1);
        rows.push((a, int(0)));
    }
    let ones = vec![int(1); k];
    let (value, vertices) =
        optimal_vertices(&rows, &ones).ok_or_else(|| Error::Consistency("primal LP has no vertex".into()))?;
    let optimum = value + int(1);

    // dual: minimize sum_j y_j Q[0][j] with sum_j y_j Q[i][j] ≤ -1, y ≥ 0
    let mut drows = Vec::new();
    for &i in &free {
        drows.push(((0..5).map(|j| q[i][j].clone()).collect::<Vec<_>>(), int(-1)));
    }
    for j in 0..5 {
        let mut a = vec![int(0); 5];
        a[j] = int(-1);
        drows.push((a, int(0)));
    }
    let obj: Vec<Rational> = (0..5).map(|j| -&q[0][j]).collect();
    let (dval, dverts) =
        optimal_vertices(&drows, &obj).ok_or_else(|| Error::Consistency("dual LP has no vertex".into()))?;
    let certificate = dverts[0].clone();
    let bound = int(1) - dval;
    if bound != optimum {
        return Err(Error::Consistency(format!(
            "duality gap: primal {} vs dual {}",
            rational::to_string(&optimum),
            rational::to_string(&bound)
        )));
    }

    let full = |x: &[Rational]| {
        let mut a = vec![int(0); 5];
        a[0] = int(1);
        for (t, &i) in free.iter().enumerate() {
            a[i] = x[t].clone();
        }
        a
    };
    let duals: Vec<Vec<Rational>> = vertices.iter().map(|x| tables.dual(&full(x))).collect();
    let tight = Eigenspace::NONTRIVIAL.into_iter().filter(|j| duals.iter().all(|d| d[j.index()].is_zero())).collect();
    let result = LpResult { instance: instance.clone(), optimum, a: full(&vertices[0]), tight, certificate };
    verify_certificate(&tables, &result)?;
    Ok(result)
}

/// Rechecks a result from scratch: primal feasibility, dual feasibility and
/// equal objective values.
pub fn verify_certificate(tables: &SchemeTables, r: &LpResult) -> Result<()> {
    let q = tables.q();
    let fail = |m: &str| Err(Error::Consistency(format!("LP certificate: {m}")));
    if r.a[0] != int(1) || r.a.iter().any(|x| x.is_negative()) {
        return fail("a is not a nonnegative vector with a_00 = 1");
    }
    if r.instance.forbidden.iter().any(|f| !r.a[f.index()].is_zero()) {
        return fail("a uses a forbidden relation");
    }
    if tables.dual(&r.a).iter().any(|x| x.is_negative()) {
        return fail("aQ has a negative entry");
    }
    if r.a.iter().sum::<Rational>() != r.optimum {
        return fail("objective mismatch");
    }
    let y = &r.certificate;
    if y.iter().any(|x| x.is_negative()) {
        return fail("negative multiplier");
    }
    for rel in r.instance.allowed() {
        let s: Rational = (0..5).map(|j| &y[j] * &q[rel.index()][j]).sum();
        if -s < int(1) {
            return fail("dual constraint violated");
        }
    }
    let bound: Rational = int(1) + (0..5).map(|j| &y[j] * &q[0][j]).sum::<Rational>();
    if bound != r.optimum {
        return fail("bound differs from optimum");
    }
    Ok(())
}

#[derive(Serialize)]
struct LpJson {
    q: u32,
    e: String,
    forbidden: Vec<String>,
    optimum: String,
    a: Vec<String>,
    tight: Vec<String>,
    certificate: Vec<String>,
}

impl Serialize for LpResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LpJson {
            q: self.instance.params.q(),
            e: self.instance.params.e_string(),
            forbidden: self.instance.forbidden.iter().map(|r| r.name().to_string()).collect(),
            optimum: rational::to_string(&self.optimum),
            a: rational::vec_to_strings(&self.a),
            tight: self.tight.iter().map(|j| j.to_string()).collect(),
            certificate: rational::vec_to_strings(&self.certificate),
        }
        .serialize(s)
    }
}

/// The forbidden sets with a dedicated case in the analysis of extremal
/// families.
pub fn standard_cases() -> Vec<Vec<Relation>> {
    use Relation::*;
    vec![
        vec![R10],
        vec![R11],
        vec![R20],
        vec![R21],
        vec![R10, R11],
        vec![R10, R20],
        vec![R10, R21],
        vec![R11, R20],
        vec![R11, R21],
        vec![R20, R21],
        vec![R10, R11, R20],
        vec![R10, R11, R21],
        vec![R10, R20, R21],
        vec![R11, R20, R21],
    ]
}
