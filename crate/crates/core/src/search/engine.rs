//! Depth-first search over line subsets with per-vertex count propagation.

use super::{Budget, SearchBudget};
use crate::polar::PolarSpace;
use rayon::prelude::*;

/// Per-vertex count constraints on a set `Y`. Counts are `c_i(x) = |Y ∩ R_i(x)|`,
/// with `c_0(x) = [x ∈ Y]`.
#[derive(Clone, Debug)]
pub enum Targets {
    /// Fixed counts for `i ≥ 1`, depending on whether `x ∈ Y`.
    Regular { inside: [i64; 5], outside: [i64; 5] },
    /// `sum_i w_i c_i(x) = 0` for every `x` and every weight vector.
    Linear(Vec<[i64; 5]>),
}

#[derive(Clone, Debug)]
pub struct Model {
    n: usize,
    nbr: Vec<[Vec<u32>; 5]>,
    size: usize,
    targets: Targets,
}

impl Model {
    pub fn new(space: &PolarSpace, size: usize, targets: Targets) -> Self {
        let n = space.num_lines();
        let nbr = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut c: [Vec<u32>; 5] = Default::default();
                for (m, r) in space.relation_row(x).into_iter().enumerate() {
                    c[r.index()].push(m as u32);
                }
                c
            })
            .collect();
        Model { n, nbr, size, targets }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

const UNDECIDED: i8 = -1;

#[derive(Clone)]
struct State<'m> {
    m: &'m Model,
    val: Vec<i8>,
    cnt: Vec<[i32; 5]>,
    rem: Vec<[i32; 5]>,
    chosen: usize,
    open: usize,
    trail: Vec<usize>,
}

enum Force {
    Conflict,
    Moves(Vec<(usize, i8)>),
}

impl<'m> State<'m> {
    fn new(m: &'m Model) -> Self {
        let rem = (0..m.n).map(|x| std::array::from_fn(|i| m.nbr[x][i].len() as i32)).collect();
        State { m, val: vec![UNDECIDED; m.n], cnt: vec![[0; 5]; m.n], rem, chosen: 0, open: m.n, trail: Vec::new() }
    }

    fn assign(&mut self, v: usize, b: i8) {
        self.val[v] = b;
        for i in 0..5 {
            for &x in &self.m.nbr[v][i] {
                let x = x as usize;
                self.rem[x][i] -= 1;
                if b == 1 {
                    self.cnt[x][i] += 1;
                }
            }
        }
        self.open -= 1;
        self.chosen += b as usize;
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail");
            let b = self.val[v];
            for i in 0..5 {
                for &x in &self.m.nbr[v][i] {
                    let x = x as usize;
                    self.rem[x][i] += 1;
                    if b == 1 {
                        self.cnt[x][i] -= 1;
                    }
                }
            }
            self.open += 1;
            self.chosen -= b as usize;
            self.val[v] = UNDECIDED;
        }
    }

    fn class_moves(&self, x: usize, i: usize, b: i8, out: &mut Vec<(usize, i8)>) {
        for &y in &self.m.nbr[x][i] {
            if self.val[y as usize] == UNDECIDED {
                out.push((y as usize, b));
            }
        }
    }

    /// Forced assignments implied by the current counts.
    fn forced(&self) -> Force {
        let size = self.m.size;
        if self.chosen > size || self.chosen + self.open < size {
            return Force::Conflict;
        }
        let mut moves = Vec::new();
        if self.open > 0 && (self.chosen == size || self.chosen + self.open == size) {
            let b = (self.chosen < size) as i8;
            moves.extend((0..self.m.n).filter(|&x| self.val[x] == UNDECIDED).map(|x| (x, b)));
            return Force::Moves(moves);
        }
        for x in 0..self.m.n {
            let (c, r) = (&self.cnt[x], &self.rem[x]);
            match &self.m.targets {
                Targets::Regular { inside, outside } => {
                    if self.val[x] == UNDECIDED {
                        let fits = |t: &[i64; 5]| (1..5).all(|i| c[i] as i64 <= t[i] && (c[i] + r[i]) as i64 >= t[i]);
                        match (fits(inside), fits(outside)) {
                            (false, false) => return Force::Conflict,
                            (true, false) => moves.push((x, 1)),
                            (false, true) => moves.push((x, 0)),
                            _ => {}
                        }
                    } else {
                        let t = if self.val[x] == 1 { inside } else { outside };
                        for i in 1..5 {
                            let (ci, ri) = (c[i] as i64, r[i] as i64);
                            if ci > t[i] || ci + ri < t[i] {
                                return Force::Conflict;
                            }
                            if ri > 0 && ci == t[i] {
                                self.class_moves(x, i, 0, &mut moves);
                            } else if ri > 0 && ci + ri == t[i] {
                                self.class_moves(x, i, 1, &mut moves);
                            }
                        }
                    }
                }
                Targets::Linear(ws) => {
                    // every undecided line lies in exactly one class of x, so
                    // exactly `add` more lines land among the classes of x
                    let add = (size - self.chosen) as i64;
                    let caps: [i64; 5] = std::array::from_fn(|i| r[i] as i64);
                    for w in ws {
                        let base: i64 = (0..5).map(|i| w[i] * c[i] as i64).sum();
                        if !zero_reachable(w, &caps, add, base) {
                            return Force::Conflict;
                        }
                        // moving one pick between classes shifts the range by at most `span`
                        let span = w.iter().max().unwrap() - w.iter().min().unwrap();
                        let (lo, hi) = sum_range(w, &caps, add, base);
                        if lo + span <= 0 && hi - span >= 0 {
                            continue;
                        }
                        for i in 0..5 {
                            if caps[i] == 0 || w[i] == 0 {
                                continue;
                            }
                            let mut less = caps;
                            less[i] -= 1;
                            let can_in = add > 0 && zero_reachable(w, &less, add - 1, base + w[i]);
                            let can_out = zero_reachable(w, &less, add, base);
                            match (can_in, can_out) {
                                (false, false) => return Force::Conflict,
                                (false, true) => self.class_moves(x, i, 0, &mut moves),
                                (true, false) => self.class_moves(x, i, 1, &mut moves),
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        Force::Moves(moves)
    }
}

/// Whether picking exactly `add` items, at most `caps[i]` from class `i`,
/// can bring `base + sum w_i (picks from i)` to zero, relaxed to the range
/// between the greedy minimum and maximum.
fn zero_reachable(w: &[i64; 5], caps: &[i64; 5], add: i64, base: i64) -> bool {
    if caps.iter().sum::<i64>() < add {
        return false;
    }
    let (lo, hi) = sum_range(w, caps, add, base);
    lo <= 0 && 0 <= hi
}

/// Greedy minimum and maximum of `base + sum w_i k_i` over `sum k_i = add`,
/// `0 <= k_i <= caps[i]`.
fn sum_range(w: &[i64; 5], caps: &[i64; 5], add: i64, base: i64) -> (i64, i64) {
    let mut order = [0, 1, 2, 3, 4];
    order.sort_by_key(|&i| w[i]);
    let greedy = |it: &mut dyn Iterator<Item = usize>| {
        let (mut left, mut total) = (add, base);
        for i in it {
            let k = left.min(caps[i]);
            total += k * w[i];
            left -= k;
        }
        total
    };
    (greedy(&mut order.iter().copied()), greedy(&mut order.iter().rev().copied()))
}

impl<'m> State<'m> {
    /// Applies forced moves to a fixpoint. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            match self.forced() {
                Force::Conflict => return false,
                Force::Moves(moves) if moves.is_empty() => return true,
                Force::Moves(moves) => {
                    for (v, b) in moves {
                        match self.val[v] {
                            UNDECIDED => self.assign(v, b),
                            cur if cur != b => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
    }

    fn branch_var(&self) -> Option<usize> {
        (0..self.m.n).find(|&x| self.val[x] == UNDECIDED)
    }

    fn solution(&self) -> Vec<u32> {
        (0..self.m.n).filter(|&x| self.val[x] == 1).map(|x| x as u32).collect()
    }

    fn dfs(&mut self, budget: &Budget, out: &mut Vec<Vec<u32>>) {
        if !budget.tick() {
            return;
        }
        let mark = self.trail.len();
        if !self.propagate() {
            self.undo_to(mark);
            return;
        }
        match self.branch_var() {
            None => {
                if budget.record() {
                    out.push(self.solution());
                }
            }
            Some(v) => {
                for b in [1, 0] {
                    let m2 = self.trail.len();
                    self.assign(v, b);
                    self.dfs(budget, out);
                    self.undo_to(m2);
                    if budget.stopped() {
                        break;
                    }
                }
            }
        }
        self.undo_to(mark);
    }

    /// Decision prefixes of length `depth` that survive propagation.
    fn prefixes(&mut self, depth: usize, cur: &mut Vec<(usize, i8)>, out: &mut Vec<Vec<(usize, i8)>>) {
        let mark = self.trail.len();
        if !self.propagate() {
            self.undo_to(mark);
            return;
        }
        match self.branch_var() {
            Some(v) if cur.len() < depth => {
                for b in [1, 0] {
                    let m2 = self.trail.len();
                    self.assign(v, b);
                    cur.push((v, b));
                    self.prefixes(depth, cur, out);
                    cur.pop();
                    self.undo_to(m2);
                }
            }
            _ => out.push(cur.clone()),
        }
        self.undo_to(mark);
    }
}

/// All sets satisfying the model, sorted, plus the completeness flag and
/// the node count.
pub fn run(model: &Model, budget: &SearchBudget, split_depth: usize) -> (Vec<Vec<u32>>, bool, u64) {
    let b = Budget::new(budget);
    let mut root = State::new(model);
    let mut prefixes = Vec::new();
    root.prefixes(split_depth, &mut Vec::new(), &mut prefixes);
    let mut found: Vec<Vec<u32>> = prefixes
        .par_iter()
        .flat_map_iter(|pre| {
            let mut s = root.clone();
            let mut out = Vec::new();
            for &(v, val) in pre {
                if s.val[v] == UNDECIDED {
                    s.assign(v, val);
                }
                if !s.propagate() {
                    return out.into_iter();
                }
            }
            s.dfs(&b, &mut out);
            out.into_iter()
        })
        .collect();
    found.sort();
    found.dedup();
    (found, !b.exhausted(), b.nodes())
}
