//! The split Cayley hexagon inside `O(7, q)` (q odd) or `Sp(6, q)` (q even).

use crate::analysis::LineSet;
use crate::error::{Error, Result};
use crate::polar::{Family, PolarSpace};
use std::collections::VecDeque;

/// Lifts a vector of the space to coordinates `X0..X6` on the quadric
/// `X0 X4 + X1 X5 + X2 X6 = X3²`.
fn lift(space: &PolarSpace, x: &[u8]) -> [u8; 7] {
    let f = space.field();
    match space.family() {
        Family::O7 => [
            f.neg(x[0]),
            f.neg(x[2]),
            f.neg(x[4]),
            x[6],
            x[1],
            x[3],
            x[5],
        ],
        _ => {
            // projection from the nucleus X3 identifies Q(6,q) with W(5,q)
            let s = f.add(f.add(f.mul(x[0], x[1]), f.mul(x[2], x[3])), f.mul(x[4], x[5]));
            [x[0], x[2], x[4], f.sqrt_char2(s), x[1], x[3], x[5]]
        }
    }
}

/// Whether the line spanned by `x, y` satisfies the hexagon's six linear
/// conditions on Grassmann coordinates `p_ij = X_i Y_j - X_j Y_i`.
fn is_hexagon_line(space: &PolarSpace, x: &[u8; 7], y: &[u8; 7]) -> bool {
    let f = space.field();
    let p = |i: usize, j: usize| f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i]));
    p(1, 2) == p(3, 4)
        && p(5, 4) == p(3, 2)
        && p(2, 0) == p(3, 5)
        && p(6, 5) == p(3, 0)
        && p(0, 1) == p(3, 6)
        && p(4, 6) == p(3, 1)
}

/// Lines of the split Cayley hexagon, validated by size, the point design
/// and the absence of short circuits.
pub fn hexagon_lines(space: &PolarSpace) -> Result<LineSet> {
    let q = space.q() as usize;
    match space.family() {
        Family::O7 if q % 2 == 1 => {}
        Family::Sp6 if q % 2 == 0 => {}
        _ => return Err(Error::Precondition("the hexagon needs O(7, q) with q odd or Sp(6, q) with q even".into())),
    }
    let lines: Vec<usize> = (0..space.num_lines())
        .filter(|&l| {
            let b = space.line(l).basis();
            is_hexagon_line(space, &lift(space, &b[0]), &lift(space, &b[1]))
        })
        .collect();
    let set = LineSet::new(space, lines)?.named("split Cayley hexagon");
    let want = (q.pow(3) + 1) * (q * q + q + 1);
    if set.len() != want {
        return Err(Error::Consistency(format!("hexagon has {} lines, expected {want}", set.len())));
    }
    let mask = set.mask(space.num_lines());
    for p in 0..space.num_points() {
        let k = space.point_lines(p).iter().filter(|&&l| mask[l as usize]).count();
        if k != q + 1 {
            return Err(Error::Consistency(format!("point {p} lies on {k} hexagon lines")));
        }
    }
    let g = incidence_girth(space, &set);
    if g < 12 {
        return Err(Error::Consistency(format!("hexagon incidence graph has girth {g}")));
    }
    Ok(set)
}

/// Girth of the point-line incidence graph restricted to the lines of `y`;
/// `usize::MAX` when acyclic. A girth of at least 12 rules out triangles,
/// quadrangles and pentagons.
pub fn incidence_girth(space: &PolarSpace, y: &LineSet) -> usize {
    let np = space.num_points();
    let mask = y.mask(space.num_lines());
    // vertices: points 0..np, then lines of y by rank
    let lines: Vec<usize> = y.indices().collect();
    let rank: std::collections::HashMap<usize, usize> = lines.iter().enumerate().map(|(i, &l)| (l, np + i)).collect();
    let neighbours = |v: usize| -> Vec<usize> {
        if v < np {
            space.point_lines(v).iter().filter(|&&l| mask[l as usize]).map(|&l| rank[&(l as usize)]).collect()
        } else {
            space.line_points(lines[v - np]).iter().map(|&p| p as usize).collect()
        }
    };
    let mut best = usize::MAX;
    let total = np + lines.len();
    for s in np..total {
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in neighbours(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    best
}
