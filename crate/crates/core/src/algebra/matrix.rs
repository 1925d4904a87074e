//! Dense matrices over GF(q), row reduction and canonical subspaces.

use super::field::GaloisField;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Row-major dense matrix over a [`GaloisField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GfMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::AmbientMismatch(cols, r.len()));
            }
            data.extend_from_slice(r);
        }
        Ok(GfMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Checks every entry is an element of `field`.
    pub fn is_valid_over(&self, field: &GaloisField) -> bool {
        self.data.iter().all(|&x| (x as u32) < field.order())
    }

    pub fn mul(&self, field: &GaloisField, other: &GfMatrix) -> Result<GfMatrix> {
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch(self.cols, other.rows));
        }
        let mut out = GfMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out[(i, j)], field.mul(a, other[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Rank of the matrix.
    pub fn rank(&self, field: &GaloisField) -> usize {
        rref_rows(field, self.row_vecs()).len()
    }
}

impl std::ops::Index<(usize, usize)> for GfMatrix {
    type Output = u8;
    fn index(&self, (i, j): (usize, usize)) -> &u8 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for GfMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u8 {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form of a list of rows, zero rows dropped.
pub fn rref_rows(field: &GaloisField, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(sel) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, sel);
        let inv = field.inv(rows[pivot_row][col]).expect("nonzero pivot");
        for x in rows[pivot_row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col] == 0 {
                continue;
            }
            let c = field.neg(row[col]);
            for (x, &p) in row.iter_mut().zip(&pivot) {
                *x = field.add(*x, field.mul(c, p));
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Pivot column of each RREF row.
fn pivots(rows: &[Vec<u8>]) -> Vec<usize> {
    rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row")).collect()
}

/// Basis of `{x : r . x = 0 for every row r}` (standard dot product).
pub fn null_space(field: &GaloisField, ambient: usize, rows: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let red = rref_rows(field, rows.to_vec());
    let piv = pivots(&red);
    let mut out = Vec::with_capacity(ambient - red.len());
    for free in (0..ambient).filter(|c| !piv.contains(c)) {
        let mut v = vec![0u8; ambient];
        v[free] = 1;
        for (row, &pc) in red.iter().zip(&piv) {
            v[pc] = field.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// A subspace of `GF(q)^d`, stored by its canonical RREF basis.
///
/// Two subspaces are equal exactly when their bases are byte-identical, so
/// the basis doubles as a hash key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<u8>>,
}

impl Subspace {
    /// Canonicalizes the row space of `rows`.
    pub fn span(field: &GaloisField, ambient: usize, rows: &[Vec<u8>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::AmbientMismatch(ambient, bad.len()));
        }
        let basis = if rows.is_empty() { vec![] } else { rref_rows(field, rows.to_vec()) };
        Ok(Subspace { ambient, basis })
    }

    pub fn from_matrix(field: &GaloisField, m: &GfMatrix) -> Self {
        Self::span(field, m.cols(), &m.row_vecs()).expect("rows share the column count")
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: vec![] }
    }

    pub fn whole(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0u8; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    /// Canonical byte key: the concatenated RREF rows.
    pub fn key(&self) -> Vec<u8> {
        self.basis.concat()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn contains_vector(&self, field: &GaloisField, v: &[u8]) -> bool {
        // reduce v against the RREF basis
        let mut w = v.to_vec();
        for row in &self.basis {
            let pc = row.iter().position(|&x| x != 0).expect("nonzero row");
            if w[pc] != 0 {
                let c = field.neg(w[pc]);
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(c, r));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, field: &GaloisField, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(field, v))
    }

    pub fn sum(&self, field: &GaloisField, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let rows: Vec<Vec<u8>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(field, self.ambient, &rows)
    }

    /// Annihilator under the standard dot product.
    pub fn annihilator(&self, field: &GaloisField) -> Subspace {
        let rows = null_space(field, self.ambient, &self.basis);
        Subspace::span(field, self.ambient, &rows).expect("null space has ambient length")
    }

    /// `A ∩ B`, computed as the annihilator of `ann(A) + ann(B)`.
    pub fn intersect(&self, field: &GaloisField, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let sum = self.annihilator(field).sum(field, &other.annihilator(field))?;
        Ok(sum.annihilator(field))
    }

    /// Like [`Subspace::intersect`], also returning the dimension.
    pub fn intersect_dim(&self, field: &GaloisField, other: &Subspace) -> Result<(Subspace, usize)> {
        let s = self.intersect(field, other)?;
        let d = s.dim();
        Ok((s, d))
    }

    /// Normalized representatives of the projective points of the subspace,
    /// sorted.
    pub fn points(&self, field: &GaloisField) -> Vec<Vec<u8>> {
        let k = self.dim();
        let mut out = Vec::new();
        for coeffs in field.projective_points(k) {
            let mut v = vec![0u8; self.ambient];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                if *c == 0 {
                    continue;
                }
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(*c, r));
                }
            }
            out.push(field.normalize(&v).expect("independent rows"));
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> GaloisField {
        GaloisField::from_order(q).unwrap()
    }

    #[test]
    fn identity_is_canonical() {
        let f = gf(2);
        let s = Subspace::from_matrix(&f, &GfMatrix::identity(2));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &[vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn zero_rows_are_dropped() {
        let f = gf(2);
        let s = Subspace::span(&f, 2, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(s.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn hand_reduced_example() {
        let f = gf(2);
        let s = Subspace::span(&f, 3, &[vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        assert_eq!(s.basis(), &[vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn zero_matrix_gives_zero_subspace() {
        let f = gf(3);
        let s = Subspace::from_matrix(&f, &GfMatrix::zeros(3, 4));
        assert_eq!(s, Subspace::zero(4));
    }

    #[test]
    fn intersections() {
        let f = gf(3);
        let a = Subspace::span(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(a.intersect_dim(&f, &a).unwrap().1, 2);
        let b = Subspace::span(&f, 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(a.intersect(&f, &b).unwrap(), Subspace::zero(4));

        let c = Subspace::span(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 1, 2]]).unwrap();
        let (meet, d) = a.intersect_dim(&f, &c).unwrap();
        assert_eq!(d, 1);
        // brute force: the common projective points of a and c
        let pa = a.points(&f);
        let common: Vec<_> = c.points(&f).into_iter().filter(|p| pa.contains(p)).collect();
        assert_eq!(common, vec![vec![1, 0, 0, 0]]);
        assert_eq!(meet.basis(), &common[..]);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = gf(2);
        let a = Subspace::whole(3);
        let b = Subspace::whole(4);
        assert!(matches!(a.intersect(&f, &b), Err(Error::AmbientMismatch(3, 4))));
    }

    #[test]
    fn null_space_is_orthogonal() {
        let f = gf(5);
        let rows = vec![vec![1, 2, 3, 4, 0], vec![0, 1, 1, 1, 1]];
        let ns = null_space(&f, 5, &rows);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            for r in &rows {
                assert_eq!(f.dot(r, v), 0);
            }
        }
    }

    #[test]
    fn matrix_product_and_rank() {
        let f = gf(4);
        let m = GfMatrix::from_rows(3, &[vec![1, 2, 3], vec![2, 3, 1]]).unwrap();
        let id = GfMatrix::identity(3);
        assert_eq!(m.mul(&f, &id).unwrap(), m);
        assert_eq!(m.transpose().transpose(), m);
        // second row = 2 * first row in GF(4)
        assert_eq!(m.rank(&f), 1);
    }
}
