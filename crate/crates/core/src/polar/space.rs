//! Enumeration of points, lines and planes of a rank-3 polar space.

use super::form::{Family, FormSpec};
use super::relation::{LabelTable, Relation};
use crate::algebra::{GaloisField, Subspace};
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use rayon::prelude::*;
use std::collections::HashMap;

/// Limits applied while building a space.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Refuse to enumerate spaces with more lines than this.
    pub max_lines: u64,
    /// Precompute the packed relation table when `n` is at most this.
    pub label_table_max: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_lines: 200_000, label_table_max: 10_000 }
    }
}

/// A fully enumerated rank-3 polar space.
///
/// Points, lines and planes are indexed in lexicographic order of their
/// canonical RREF bases, so indices are reproducible.
pub struct PolarSpace {
    field: GaloisField,
    form: FormSpec,
    params: SchemeParams,
    points: Vec<Vec<u8>>,
    point_functionals: Vec<Vec<u8>>,
    lines: Vec<Subspace>,
    /// `2 * d` entries per line: functionals of the two basis rows.
    line_functionals: Vec<u8>,
    planes: Vec<Subspace>,
    point_index: HashMap<Vec<u8>, u32>,
    line_index: HashMap<Vec<u8>, u32>,
    plane_index: HashMap<Vec<u8>, u32>,
    collinear: Vec<Vec<u32>>,
    line_points: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
    plane_lines: Vec<Vec<u32>>,
    line_planes: Vec<Vec<u32>>,
    plane_points: Vec<Vec<u32>>,
    labels: Option<LabelTable>,
}

impl std::fmt::Debug for PolarSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PolarSpace({}: {} points, {} lines, {} planes)",
            self.fingerprint(),
            self.points.len(),
            self.lines.len(),
            self.planes.len()
        )
    }
}

/// Precomputed parts shared by enumeration and cache reload.
pub(crate) struct RawSpace {
    pub points: Vec<Vec<u8>>,
    pub lines: Vec<Subspace>,
    pub planes: Vec<Subspace>,
}

impl PolarSpace {
    /// Builds `family` over GF(q) with default options.
    pub fn build(family: Family, q: u32) -> Result<Self> {
        Self::build_with(family, q, BuildOptions::default())
    }

    pub fn build_with(family: Family, q: u32, opts: BuildOptions) -> Result<Self> {
        let field = GaloisField::from_order(q)?;
        let form = FormSpec::standard(family, &field)?;
        let params = SchemeParams::new(q, family.twice_e())?;
        let n = params.n();
        if n > opts.max_lines as i128 {
            return Err(Error::SizeBudget { what: "lines", needed: n as u64, budget: opts.max_lines });
        }
        let d = family.ambient_dim();

        let points: Vec<Vec<u8>> =
            field.projective_points(d).into_par_iter().filter(|v| form.is_singular(&field, v)).collect();
        let point_functionals: Vec<Vec<u8>> = points.par_iter().map(|p| form.functional(&field, p)).collect();
        let point_index: HashMap<Vec<u8>, u32> =
            points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let collinear = collinearity(&field, &points, &point_functionals);

        // Each line is emitted once, by its smallest point.
        let mut found: Vec<(Subspace, Vec<u32>)> = (0..points.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut covered = vec![false; points.len()];
                let mut out = Vec::new();
                for &j in &collinear[i] {
                    if covered[j as usize] {
                        continue;
                    }
                    let line = Subspace::span(&field, d, &[points[i].clone(), points[j as usize].clone()])
                        .expect("ambient");
                    let pts: Vec<u32> = line.points(&field).iter().map(|v| point_index[v]).collect();
                    for &k in &pts {
                        covered[k as usize] = true;
                    }
                    if pts.iter().min() == Some(&(i as u32)) {
                        out.push((line, sorted(pts)));
                    }
                }
                out
            })
            .collect();
        found.par_sort_by(|a, b| a.0.cmp(&b.0));
        let (lines, line_points): (Vec<_>, Vec<_>) = found.into_iter().unzip();

        let raw_planes = enumerate_planes(&field, &form, &points, &point_index, &collinear, &lines, &line_points);
        let raw = RawSpace { points, lines, planes: raw_planes };
        Self::assemble(field, form, params, raw, Some(point_functionals), Some(collinear), opts)
    }

    /// Computes indices and incidences from canonical bases and validates
    /// every closed-form count.
    pub(crate) fn assemble(
        field: GaloisField,
        form: FormSpec,
        params: SchemeParams,
        raw: RawSpace,
        point_functionals: Option<Vec<Vec<u8>>>,
        collinear: Option<Vec<Vec<u32>>>,
        opts: BuildOptions,
    ) -> Result<Self> {
        let RawSpace { points, lines, planes } = raw;
        let d = form.dim();
        let check = |what: &str, got: usize, want: i128| -> Result<()> {
            if got as i128 != want {
                return Err(Error::Consistency(format!("{what}: enumerated {got}, expected {want}")));
            }
            Ok(())
        };
        check("points", points.len(), params.num_points())?;
        check("lines", lines.len(), params.n())?;
        check("planes", planes.len(), params.num_planes())?;

        let point_functionals =
            point_functionals.unwrap_or_else(|| points.par_iter().map(|p| form.functional(&field, p)).collect());
        let point_index: HashMap<Vec<u8>, u32> =
            points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let collinear = collinear.unwrap_or_else(|| collinearity(&field, &points, &point_functionals));
        let line_index: HashMap<Vec<u8>, u32> =
            lines.iter().enumerate().map(|(i, l)| (l.key(), i as u32)).collect();
        let plane_index: HashMap<Vec<u8>, u32> =
            planes.iter().enumerate().map(|(i, p)| (p.key(), i as u32)).collect();

        let line_points: Vec<Vec<u32>> = lines
            .par_iter()
            .map(|l| sorted(l.points(&field).iter().map(|v| point_index[v]).collect()))
            .collect();
        let plane_points: Vec<Vec<u32>> = planes
            .par_iter()
            .map(|p| sorted(p.points(&field).iter().map(|v| point_index[v]).collect()))
            .collect();
        let mut point_lines = vec![Vec::new(); points.len()];
        for (l, pts) in line_points.iter().enumerate() {
            for &p in pts {
                point_lines[p as usize].push(l as u32);
            }
        }
        // a line lies in a plane iff all of its points do
        let plane_lines: Vec<Vec<u32>> = plane_points
            .par_iter()
            .map(|pts| {
                let mut ls: Vec<u32> = pts
                    .iter()
                    .flat_map(|&p| point_lines[p as usize].iter().copied())
                    .filter(|&l| line_points[l as usize].iter().all(|x| pts.binary_search(x).is_ok()))
                    .collect();
                ls.sort_unstable();
                ls.dedup();
                ls
            })
            .collect();
        let mut line_planes = vec![Vec::new(); lines.len()];
        for (pi, ls) in plane_lines.iter().enumerate() {
            for &l in ls {
                line_planes[l as usize].push(pi as u32);
            }
        }

        let line_functionals: Vec<u8> = lines
            .iter()
            .flat_map(|l| l.basis().iter().flat_map(|row| form.functional(&field, row)).collect::<Vec<_>>())
            .collect();
        debug_assert_eq!(line_functionals.len(), lines.len() * 2 * d);

        let mut space = PolarSpace {
            field,
            form,
            params,
            points,
            point_functionals,
            lines,
            line_functionals,
            planes,
            point_index,
            line_index,
            plane_index,
            collinear,
            line_points,
            point_lines,
            plane_lines,
            line_planes,
            plane_points,
            labels: None,
        };
        space.check_incidence()?;
        if space.num_lines() <= opts.label_table_max {
            let n = space.num_lines();
            let rows: Result<Vec<Vec<Relation>>> = (0..n).into_par_iter().map(|l| space.compute_row(l)).collect();
            space.labels = Some(LabelTable::from_rows(n, rows?));
        }
        Ok(space)
    }

    fn check_incidence(&self) -> Result<()> {
        let q1 = self.field.order() as usize + 1;
        let theta = self.params.theta() as usize;
        let lpp = self.params.lines_per_point() as usize;
        let ppl = self.params.planes_per_line() as usize;
        let bad = |what: &str| Err(Error::Consistency(format!("incidence check failed: {what}")));
        if self.line_points.iter().any(|p| p.len() != q1) {
            return bad("points per line");
        }
        if self.plane_lines.iter().any(|l| l.len() != theta) {
            return bad("lines per plane");
        }
        if self.line_planes.iter().any(|p| p.len() != ppl) {
            return bad("planes per line");
        }
        if self.point_lines.iter().any(|l| l.len() != lpp) {
            return bad("lines per point");
        }
        Ok(())
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn form(&self) -> &FormSpec {
        &self.form
    }

    pub fn family(&self) -> Family {
        self.form.family()
    }

    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// Identifier such as `o6plus_q2`.
    pub fn fingerprint(&self) -> String {
        format!("{}_q{}", self.family().tag(), self.q())
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn num_planes(&self) -> usize {
        self.planes.len()
    }

    pub fn point(&self, i: usize) -> &[u8] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    pub fn point_functional(&self, i: usize) -> &[u8] {
        &self.point_functionals[i]
    }

    pub fn line(&self, i: usize) -> &Subspace {
        &self.lines[i]
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    pub fn plane(&self, i: usize) -> &Subspace {
        &self.planes[i]
    }

    pub fn planes(&self) -> &[Subspace] {
        &self.planes
    }

    /// Index of the point spanned by `v` (any nonzero multiple).
    pub fn point_index(&self, v: &[u8]) -> Option<usize> {
        let nv = self.field.normalize(v)?;
        self.point_index.get(&nv).map(|&i| i as usize)
    }

    pub fn line_index(&self, s: &Subspace) -> Option<usize> {
        self.line_index.get(&s.key()).map(|&i| i as usize)
    }

    pub fn plane_index(&self, s: &Subspace) -> Option<usize> {
        self.plane_index.get(&s.key()).map(|&i| i as usize)
    }

    /// Points collinear with point `i` (excluding `i`), sorted.
    pub fn collinear_points(&self, i: usize) -> &[u32] {
        &self.collinear[i]
    }

    pub fn line_points(&self, l: usize) -> &[u32] {
        &self.line_points[l]
    }

    pub fn point_lines(&self, p: usize) -> &[u32] {
        &self.point_lines[p]
    }

    pub fn plane_lines(&self, p: usize) -> &[u32] {
        &self.plane_lines[p]
    }

    pub fn plane_points(&self, p: usize) -> &[u32] {
        &self.plane_points[p]
    }

    pub fn line_planes(&self, l: usize) -> &[u32] {
        &self.line_planes[l]
    }

    pub fn has_label_table(&self) -> bool {
        self.labels.is_some()
    }

    /// `S^⊥` with respect to the form.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        if s.dim() == 0 {
            return Subspace::whole(self.dim());
        }
        let fs: Vec<Vec<u8>> = s.basis().iter().map(|r| self.form.functional(&self.field, r)).collect();
        // x ⊥ s iff x . f_s = 0
        let rows = crate::algebra::matrix::null_space(&self.field, self.dim(), &fs);
        Subspace::span(&self.field, self.dim(), &rows).expect("ambient")
    }

    /// Whether `x ⊥ y`.
    pub fn perpendicular(&self, x: &[u8], y: &[u8]) -> bool {
        self.form.bilinear(&self.field, x, y) == 0
    }

    /// Relation between lines `l` and `m`.
    #[inline]
    pub fn relation(&self, l: usize, m: usize) -> Relation {
        match &self.labels {
            Some(t) => t.get(l, m),
            None => self.classify_indexed(l, m).expect("consistent geometry"),
        }
    }

    /// Relation of line `l` to every line, in index order.
    pub fn relation_row(&self, l: usize) -> Vec<Relation> {
        match &self.labels {
            Some(t) => (0..self.num_lines()).map(|m| t.get(l, m)).collect(),
            None => self.compute_row(l).expect("consistent geometry"),
        }
    }

    fn compute_row(&self, l: usize) -> Result<Vec<Relation>> {
        let n = self.num_lines();
        let mut meets = vec![false; n];
        for &p in &self.line_points[l] {
            for &m in &self.point_lines[p as usize] {
                meets[m as usize] = true;
            }
        }
        (0..n).map(|m| self.classify_with(l, m, if m == l { 2 } else { meets[m] as usize })).collect()
    }

    /// Classifies a pair from the geometry, ignoring any cached table.
    pub fn classify_indexed(&self, l: usize, m: usize) -> Result<Relation> {
        let s = if l == m {
            2
        } else {
            let (a, b) = (&self.line_points[l], &self.line_points[m]);
            let common = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
            match common {
                0 => 0,
                1 => 1,
                _ => return Err(Error::Consistency(format!("distinct lines {l}, {m} share {common} points"))),
            }
        };
        self.classify_with(l, m, s)
    }

    fn classify_with(&self, l: usize, m: usize, s: usize) -> Result<Relation> {
        let d = self.dim();
        let f = &self.field;
        let fl = &self.line_functionals[2 * d * l..2 * d * (l + 1)];
        let mb = self.lines[m].basis();
        let g = [
            f.dot(&mb[0], &fl[..d]),
            f.dot(&mb[0], &fl[d..]),
            f.dot(&mb[1], &fl[..d]),
            f.dot(&mb[1], &fl[d..]),
        ];
        let rank = if g.iter().all(|&x| x == 0) {
            0
        } else if f.sub(f.mul(g[0], g[3]), f.mul(g[1], g[2])) != 0 {
            2
        } else {
            1
        };
        Relation::from_dims(s, 2 - rank)
    }

    /// Classifies two totally isotropic lines given as subspaces, straight
    /// from `dim(L ∩ M)` and `dim(L ∩ M^⊥)`.
    pub fn classify_subspaces(&self, l: &Subspace, m: &Subspace) -> Result<Relation> {
        let s = l.intersect(&self.field, m)?.dim();
        let t = l.intersect(&self.field, &self.perp(m))?.dim();
        Relation::from_dims(s, t)
    }

    /// Census of relations from line `l` to all lines.
    pub fn valency_row(&self, l: usize) -> [u64; 5] {
        let mut c = [0u64; 5];
        for r in self.relation_row(l) {
            c[r.index()] += 1;
        }
        c
    }

    pub(crate) fn raw_parts(&self) -> (&[Vec<u8>], &[Subspace], &[Subspace]) {
        (&self.points, &self.lines, &self.planes)
    }
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn collinearity(field: &GaloisField, points: &[Vec<u8>], functionals: &[Vec<u8>]) -> Vec<Vec<u32>> {
    (0..points.len())
        .into_par_iter()
        .map(|i| {
            (0..points.len())
                .filter(|&j| j != i && field.dot(&points[j], &functionals[i]) == 0)
                .map(|j| j as u32)
                .collect()
        })
        .collect()
}

fn enumerate_planes(
    field: &GaloisField,
    form: &FormSpec,
    points: &[Vec<u8>],
    point_index: &HashMap<Vec<u8>, u32>,
    collinear: &[Vec<u32>],
    lines: &[Subspace],
    line_points: &[Vec<u32>],
) -> Vec<Subspace> {
    let d = form.dim();
    let mut planes: Vec<Subspace> = (0..lines.len())
        .into_par_iter()
        .flat_map_iter(|l| {
            let pts = &line_points[l];
            let basis = lines[l].basis();
            let f1 = form.functional(field, &basis[1]);
            let anchor = point_index[&basis[0]] as usize;
            let mut covered = vec![false; points.len()];
            for &p in pts {
                covered[p as usize] = true;
            }
            let mut out = Vec::new();
            for &r in &collinear[anchor] {
                let r = r as usize;
                if covered[r] || field.dot(&points[r], &f1) != 0 {
                    continue;
                }
                let rows = vec![basis[0].clone(), basis[1].clone(), points[r].clone()];
                let plane = Subspace::span(field, d, &rows).expect("ambient");
                for v in plane.points(field) {
                    covered[point_index[&v] as usize] = true;
                }
                out.push(plane);
            }
            out
        })
        .collect();
    planes.par_sort();
    planes.dedup();
    planes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn o6plus_q2_counts_and_valencies() {
        let s = PolarSpace::build(Family::O6Plus, 2).unwrap();
        assert_eq!((s.num_points(), s.num_lines(), s.num_planes()), (35, 105, 30));
        assert!(s.has_label_table());
        for l in 0..s.num_lines() {
            assert_eq!(s.valency_row(l), [1, 12, 12, 48, 32]);
        }
        assert_eq!(s.fingerprint(), "o6plus_q2");
    }

    #[test]
    fn relation_is_symmetric_and_matches_subspace_route() {
        let s = PolarSpace::build(Family::Sp6, 2).unwrap();
        for l in (0..s.num_lines()).step_by(7) {
            for m in (0..s.num_lines()).step_by(5) {
                let r = s.relation(l, m);
                assert_eq!(r, s.relation(m, l));
                assert_eq!(r, s.classify_subspaces(s.line(l), s.line(m)).unwrap());
            }
        }
    }

    #[test]
    fn lines_of_a_plane_are_r10() {
        let s = PolarSpace::build(Family::U6, 4).unwrap_or_else(|e| panic!("{e}"));
        let ls = s.plane_lines(0);
        assert_eq!(ls.len(), 21);
        assert_eq!(s.relation(ls[0] as usize, ls[0] as usize), Relation::R00);
        assert_eq!(s.relation(ls[0] as usize, ls[1] as usize), Relation::R10);
    }

    #[test]
    fn perp_of_a_line() {
        let s = PolarSpace::build(Family::O6Plus, 2).unwrap();
        let l = s.line(3);
        let lp = s.perp(l);
        assert_eq!(lp.dim(), 4);
        assert!(lp.contains(s.field(), l));
        let p = Subspace::span(s.field(), 6, &[s.point(0).to_vec()]).unwrap();
        let pp = s.perp(&p);
        assert_eq!(pp.dim(), 5);
        assert!(pp.contains(s.field(), &p));
        assert_eq!(s.perp(&Subspace::whole(6)).dim(), 0);
    }

    #[test]
    fn indices_are_lexicographic() {
        let s = PolarSpace::build(Family::O6Plus, 3).unwrap();
        assert!(s.lines().windows(2).all(|w| w[0] < w[1]));
        assert!(s.planes().windows(2).all(|w| w[0] < w[1]));
        assert!(s.points().windows(2).all(|w| w[0] < w[1]));
        for (i, l) in s.lines().iter().enumerate() {
            assert_eq!(s.line_index(l), Some(i));
        }
    }

    #[test]
    fn size_budget() {
        let opts = BuildOptions { max_lines: 100, label_table_max: 0 };
        assert!(matches!(PolarSpace::build_with(Family::O6Plus, 2, opts), Err(Error::SizeBudget { .. })));
    }

    #[test]
    fn on_demand_rows_match_table() {
        let with = PolarSpace::build(Family::O7, 3).unwrap();
        let opts = BuildOptions { label_table_max: 0, ..Default::default() };
        let without = PolarSpace::build_with(Family::O7, 3, opts).unwrap();
        assert!(!without.has_label_table());
        for l in [0, 17, 1234, 3639] {
            assert_eq!(with.relation_row(l), without.relation_row(l));
        }
    }
}
