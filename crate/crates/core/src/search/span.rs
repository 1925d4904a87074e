//! Search for 0/1 vectors of given weight inside a sum of eigenspaces.
//!
//! The projection onto `<j> + sum_{k in S} V_k` is row reduced once. A
//! characteristic vector in that span is then fixed by its values on the
//! pivot coordinates, and every other coordinate is an integer combination
//! of them that must end at 0 or 1.

use super::{Budget, SearchBudget};
use crate::algebra::rational::big;
use crate::algebra::Rational;
use crate::polar::{Eigenspace, PolarSpace};
use crate::scheme::SchemeTables;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// A linear row `sum_t a_t x_t` with a range and a final target set.
#[derive(Clone, Debug)]
struct Row {
    terms: Vec<(usize, i64)>,
    lo: i64,
    hi: i64,
    /// Final value must be `lo` or `hi` (coordinate rows), or lie anywhere in
    /// `[lo, hi]` (the size row, where `lo == hi`).
    endpoints: bool,
}

#[derive(Clone, Debug)]
pub struct SpanModel {
    n: usize,
    pivots: Vec<usize>,
    /// Row per non-pivot coordinate, then the size row.
    rows: Vec<Row>,
    coord_of_row: Vec<usize>,
    var_rows: Vec<Vec<(usize, i64)>>,
}

impl SpanModel {
    pub fn new(space: &PolarSpace, tables: &SchemeTables, s: &[Eigenspace], size: usize) -> Option<Self> {
        let n = space.num_lines();
        let q = tables.q();
        let mut keep = vec![Eigenspace::V00];
        keep.extend(s.iter().copied().filter(|&j| j != Eigenspace::V00));
        // n E_S[x][y] depends only on the relation between x and y
        let f: Vec<Rational> =
            (0..5).map(|i| keep.iter().map(|j| q[i][j.index()].clone()).sum::<Rational>()).collect();
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|x| space.relation_row(x).into_iter().map(|r| f[r.index()].clone()).collect())
            .collect();
        let pivots = rref(&mut m);
        let r = pivots.len();
        let basis = &m[..r];
        let is_pivot = {
            let mut v = vec![false; n];
            pivots.iter().for_each(|&p| v[p] = true);
            v
        };
        let mut rows = Vec::new();
        let mut coord_of_row = Vec::new();
        for k in (0..n).filter(|&k| !is_pivot[k]) {
            let coefs: Vec<&Rational> = basis.iter().map(|b| &b[k]).collect();
            let d = lcm_denoms(&coefs);
            let terms = scaled(&coefs, &d)?;
            let d = d.to_i64()?;
            rows.push(Row { terms, lo: 0, hi: d, endpoints: true });
            coord_of_row.push(k);
        }
        // |Y| = sum_t x_t (1 + sum_k b_t[k])
        let weights: Vec<Rational> = basis.iter().map(|b| b.iter().sum::<Rational>()).collect();
        let wr: Vec<&Rational> = weights.iter().collect();
        let d = lcm_denoms(&wr);
        let terms = scaled(&wr, &d)?;
        let target = (big(d) * big(BigInt::from(size))).to_integer().to_i64()?;
        rows.push(Row { terms, lo: target, hi: target, endpoints: false });
        let mut var_rows = vec![Vec::new(); r];
        for (ri, row) in rows.iter().enumerate() {
            for &(t, a) in &row.terms {
                var_rows[t].push((ri, a));
            }
        }
        Some(SpanModel { n, pivots, rows, coord_of_row, var_rows })
    }

    /// Dimension of the span.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn lcm_denoms(v: &[&Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled(v: &[&Rational], d: &BigInt) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for (t, x) in v.iter().enumerate() {
        if !x.is_zero() {
            out.push((t, (*x * big(d.clone())).to_integer().to_i64()?));
        }
    }
    Some(out)
}

/// Reduced row echelon form in place; returns the pivot columns and leaves
/// the nonzero rows first.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let (rows, cols) = (m.len(), m.first().map_or(0, |r| r.len()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

struct State<'m> {
    m: &'m SpanModel,
    val: Vec<i8>,
    sum: Vec<i64>,
    neg: Vec<i64>,
    pos: Vec<i64>,
    trail: Vec<usize>,
}

impl<'m> State<'m> {
    fn new(m: &'m SpanModel) -> Self {
        let neg = m.rows.iter().map(|r| r.terms.iter().map(|&(_, a)| a.min(0)).sum()).collect();
        let pos = m.rows.iter().map(|r| r.terms.iter().map(|&(_, a)| a.max(0)).sum()).collect();
        State { m, val: vec![-1; m.rank()], sum: vec![0; m.rows.len()], neg, pos, trail: Vec::new() }
    }

    fn assign(&mut self, t: usize, b: i8) {
        self.val[t] = b;
        for &(ri, a) in &self.m.var_rows[t] {
            if a < 0 {
                self.neg[ri] -= a;
            } else {
                self.pos[ri] -= a;
            }
            if b == 1 {
                self.sum[ri] += a;
            }
        }
        self.trail.push(t);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let t = self.trail.pop().expect("trail");
            let b = self.val[t];
            for &(ri, a) in &self.m.var_rows[t] {
                if a < 0 {
                    self.neg[ri] += a;
                } else {
                    self.pos[ri] += a;
                }
                if b == 1 {
                    self.sum[ri] -= a;
                }
            }
            self.val[t] = -1;
        }
    }

    fn propagate(&mut self) -> bool {
        loop {
            let mut moves = Vec::new();
            for (ri, row) in self.m.rows.iter().enumerate() {
                let (s, lo, hi) = (self.sum[ri], self.sum[ri] + self.neg[ri], self.sum[ri] + self.pos[ri]);
                if lo > row.hi || hi < row.lo {
                    return false;
                }
                if row.endpoints && lo == hi && s != row.lo && s != row.hi {
                    return false;
                }
                for &(t, a) in &row.terms {
                    if self.val[t] != -1 {
                        continue;
                    }
                    let d = a.abs();
                    // taking x_t = 1 (a > 0) or 0 (a < 0) raises the minimum by |a|
                    if lo + d > row.hi {
                        moves.push((t, (a < 0) as i8));
                    } else if hi - d < row.lo {
                        moves.push((t, (a > 0) as i8));
                    }
                }
            }
            if moves.is_empty() {
                return true;
            }
            for (t, b) in moves {
                match self.val[t] {
                    -1 => self.assign(t, b),
                    v if v != b => return false,
                    _ => {}
                }
            }
        }
    }

    fn solution(&self) -> Vec<u32> {
        let mut y: Vec<u32> =
            self.m.pivots.iter().zip(&self.val).filter(|(_, &v)| v == 1).map(|(&p, _)| p as u32).collect();
        for (ri, &k) in self.m.coord_of_row.iter().enumerate() {
            if self.sum[ri] == self.m.rows[ri].hi {
                y.push(k as u32);
            }
        }
        y.sort_unstable();
        y
    }

    fn dfs(&mut self, b: &Budget, out: &mut Vec<Vec<u32>>) {
        if !b.tick() {
            return;
        }
        let mark = self.trail.len();
        if self.propagate() {
            match self.val.iter().position(|&v| v == -1) {
                None => {
                    if b.record() {
                        out.push(self.solution());
                    }
                }
                Some(t) => {
                    for v in [1, 0] {
                        let m2 = self.trail.len();
                        self.assign(t, v);
                        self.dfs(b, out);
                        self.undo_to(m2);
                        if b.stopped() {
                            break;
                        }
                    }
                }
            }
        }
        self.undo_to(mark);
    }
}

/// All characteristic vectors of the model, with completeness and node count.
pub fn span_search(model: &SpanModel, budget: &SearchBudget) -> (Vec<Vec<u32>>, bool, u64) {
    let b = Budget::new(budget);
    let mut st = State::new(model);
    let mut out = Vec::new();
    st.dfs(&b, &mut out);
    debug_assert!(out.iter().all(|y| y.iter().all(|&l| (l as usize) < model.n)));
    out.sort();
    (out, !b.exhausted(), b.nodes())
}
