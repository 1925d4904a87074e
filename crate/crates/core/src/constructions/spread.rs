//! The Desarguesian plane spread of `Sp(6, q)`.

use crate::algebra::field::GaloisField;
use crate::algebra::matrix::Subspace;
use crate::analysis::LineSet;
use crate::error::{Error, Result};
use crate::polar::{Family, PolarSpace};

/// `GF(q³)` as `GF(q)[w] / (w³ + c2 w² + c1 w + c0)`.
struct Cubic<'a> {
    f: &'a GaloisField,
    c: [u8; 3],
}

impl<'a> Cubic<'a> {
    fn new(f: &'a GaloisField) -> Self {
        for c0 in f.elements().filter(|&c| c != 0) {
            for c1 in f.elements() {
                for c2 in f.elements() {
                    let root = f.elements().any(|x| {
                        let x2 = f.mul(x, x);
                        let v = f.add(f.add(f.mul(x2, x), f.mul(c2, x2)), f.add(f.mul(c1, x), c0));
                        v == 0
                    });
                    if !root {
                        return Cubic { f, c: [c0, c1, c2] };
                    }
                }
            }
        }
        unreachable!("irreducible cubics exist over every finite field")
    }

    fn mul(&self, a: [u8; 3], b: [u8; 3]) -> [u8; 3] {
        let f = self.f;
        let mut prod = [0u8; 5];
        for i in 0..3 {
            for j in 0..3 {
                prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
            }
        }
        for k in (3..5).rev() {
            let t = prod[k];
            prod[k] = 0;
            for j in 0..3 {
                prod[k - 3 + j] = f.sub(prod[k - 3 + j], f.mul(t, self.c[j]));
            }
        }
        [prod[0], prod[1], prod[2]]
    }

    fn basis(i: usize) -> [u8; 3] {
        let mut b = [0u8; 3];
        b[i] = 1;
        b
    }

    /// Trace of multiplication by `z`.
    fn trace(&self, z: [u8; 3]) -> u8 {
        (0..3).fold(0, |acc, i| self.f.add(acc, self.mul(z, Self::basis(i))[i]))
    }

    fn elements(&self) -> Vec<[u8; 3]> {
        let els: Vec<u8> = self.f.elements().collect();
        let mut out = Vec::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }
}

/// The `q³+1` planes of the Desarguesian spread, as subspaces.
///
/// With `V = GF(q³)²` and `<(a,b),(c,d)> = Tr(ad - bc)`, the coordinates
/// `(a_0, b_0, a_1, b_1, a_2, b_2)` take `a` in the basis `1, w, w²` and
/// `b` in its trace-dual basis, so the pairing is the standard form.
pub fn symplectic_spread_planes(space: &PolarSpace) -> Result<Vec<Subspace>> {
    if space.family() != Family::Sp6 {
        return Err(Error::Precondition("the symplectic spread needs Sp(6, q)".into()));
    }
    let f = space.field();
    let k = Cubic::new(f);
    let mut planes = Vec::new();
    for m in k.elements() {
        let rows: Vec<Vec<u8>> = (0..3)
            .map(|i| {
                let mw = k.mul(m, Cubic::basis(i));
                let mut v = vec![0u8; 6];
                v[2 * i] = 1;
                for j in 0..3 {
                    v[2 * j + 1] = k.trace(k.mul(mw, Cubic::basis(j)));
                }
                v
            })
            .collect();
        planes.push(Subspace::span(f, 6, &rows)?);
    }
    let vertical: Vec<Vec<u8>> = (0..3)
        .map(|j| {
            let mut v = vec![0u8; 6];
            v[2 * j + 1] = 1;
            v
        })
        .collect();
    planes.push(Subspace::span(f, 6, &vertical)?);
    Ok(planes)
}

/// All lines inside the spread planes.
pub fn symplectic_spread_lines(space: &PolarSpace) -> Result<LineSet> {
    let planes = symplectic_spread_planes(space)?;
    let f = space.field();
    let mut lines = Vec::new();
    for (i, p) in planes.iter().enumerate() {
        for other in &planes[i + 1..] {
            if p.intersect(f, other)?.dim() != 0 {
                return Err(Error::Consistency("spread planes meet".into()));
            }
        }
        let idx = space
            .plane_index(p)
            .ok_or_else(|| Error::Consistency("spread element is not a plane of the space".into()))?;
        lines.extend(space.plane_lines(idx).iter().map(|&l| l as usize));
    }
    Ok(LineSet::new(space, lines)?.named("spread"))
}
