use super::*;
use crate::algebra::rational::{frac, int};
use crate::analysis::{dual_distribution, eigenspace_support, regular_set_check, support_of, weighted_inner_distribution};
use crate::polar::{Eigenspace, Family};
use std::sync::OnceLock;

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn space(family: Family, q: u32) -> &'static (PolarSpace, SchemeTables) {
    static CACHE: OnceLock<std::sync::Mutex<Vec<(Family, u32, &'static (PolarSpace, SchemeTables))>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    if let Some((_, _, s)) = guard.iter().find(|(f, qq, _)| *f == family && *qq == q) {
        return s;
    }
    let s = PolarSpace::build(family, q).unwrap();
    let t = SchemeTables::for_space(&s).unwrap();
    let leaked: &'static _ = Box::leak(Box::new((s, t)));
    guard.push((family, q, leaked));
    leaked
}

#[test]
fn planes() {
    let (s, t) = space(Family::O6Plus, 2);
    let y = plane_lines(s, 0).unwrap();
    assert_eq!(y.len(), 7);
    assert_example(s, t, &y, Example::Plane).unwrap();
    // two planes on a common line share exactly that line
    let l = s.plane_lines(0)[0] as usize;
    let [p1, p2] = [s.line_planes(l)[0], s.line_planes(l)[1]];
    let (a, b) = (plane_lines(s, p1 as usize).unwrap(), plane_lines(s, p2 as usize).unwrap());
    assert_eq!(crate::analysis::intersection_size(&a, &b), 1);
    let (s3, _) = space(Family::Sp6, 3);
    assert_eq!(plane_lines(s3, 5).unwrap().len(), 13);
}

#[test]
fn pencils() {
    let (s, t) = space(Family::O6Plus, 2);
    let y = point_pencil(s, 3, PencilMode::Through).unwrap();
    assert_eq!(y.len(), 9);
    assert_example(s, t, &y, Example::Pencil).unwrap();
    let z = point_pencil(s, 3, PencilMode::PerpAvoiding).unwrap();
    assert_example(s, t, &z, Example::PerpAvoiding).unwrap();
    assert_eq!(eigenspace_support(s, t, &z).unwrap(), vec![Eigenspace::V10, Eigenspace::V11]);
    let w = weighted_pencil(s, 3).unwrap();
    let a = weighted_inner_distribution(s, &w).unwrap();
    assert_eq!(support_of(&dual_distribution(t, &a).unwrap()), vec![Eigenspace::V10]);
}

#[test]
fn weighted_pencil_in_sp6() {
    let (s, t) = space(Family::Sp6, 2);
    let a = weighted_inner_distribution(s, &weighted_pencil(s, 0).unwrap()).unwrap();
    assert_eq!(support_of(&t.dual(&a)), vec![Eigenspace::V10]);
}

#[test]
fn quadrangle_section_of_o6plus() {
    let (s, t) = space(Family::O6Plus, 2);
    let h = HyperplaneSection::first_of_kind(s, SectionKind::Quadrangle).unwrap();
    assert_eq!(h.twice_e(s), Some(2));
    let y = hyperplane_section_lines(s, &h).unwrap();
    assert_eq!(y.len(), 15);
    assert_eq!(inner_distribution(s, &y).unwrap(), ints(&[1, 0, 6, 0, 8]));
    assert_example(s, t, &y, Example::Quadrangle).unwrap();
    assert_eq!(regular_set_check(s, t, &y).unwrap().eigenspace, Some(Eigenspace::V11));
}

#[test]
fn degenerate_sections_are_rejected() {
    let (s, _) = space(Family::O6Plus, 2);
    let h = HyperplaneSection::from_pole(s, s.point(0)).unwrap();
    assert_eq!(h.kind, SectionKind::Degenerate);
    assert!(hyperplane_section_lines(s, &h).is_err());
}

#[test]
fn quadric_sections_of_sp6() {
    let (s, t) = space(Family::Sp6, 2);
    let ell = HyperplaneSection::first_of_kind(s, SectionKind::Quadrangle).unwrap();
    let y = hyperplane_section_lines(s, &ell).unwrap();
    assert_eq!(y.len(), 45);
    assert_example(s, t, &y, Example::Quadrangle).unwrap();
    let hyp = HyperplaneSection::first_of_kind(s, SectionKind::Rank3).unwrap();
    let z = hyperplane_section_lines(s, &hyp).unwrap();
    assert_eq!(z.len(), 105);
    assert_example(s, t, &z, Example::SubRank3).unwrap();
    assert_eq!(regular_set_check(s, t, &z).unwrap().eigenspace, Some(Eigenspace::V10));
}

#[test]
fn rank3_section_of_o8minus() {
    let (s, t) = space(Family::O8Minus, 2);
    let h = HyperplaneSection::first_of_kind(s, SectionKind::Rank3).unwrap();
    let y = hyperplane_section_lines(s, &h).unwrap();
    assert_eq!(y.len(), 315);
    assert_example(s, t, &y, Example::SubRank3).unwrap();
    assert_eq!(eigenspace_support(s, t, &y).unwrap(), vec![Eigenspace::V10]);
}

#[test]
fn ovoids_and_pencil_unions() {
    let (s, t) = space(Family::O6Plus, 2);
    let o = elliptic_ovoid(s).unwrap();
    assert_eq!(o.len(), 5);
    let pu = pencil_union(s, &o).unwrap();
    assert_eq!((pu.enumerated_size, pu.formula_size), (45, 45));
    assert_eq!(regular_set_check(s, t, &pu.lines).unwrap().eigenspace, Some(Eigenspace::V11));
    let c = pu.lines.complement(s);
    assert_eq!(regular_set_check(s, t, &c).unwrap().eigenspace, Some(Eigenspace::V11));
    let bad = OvoidSet::new(s, vec![0, 1, 2, 3, 4]).unwrap();
    assert!(pencil_union(s, &bad).is_err());
}

#[test]
fn ovoid_lift_in_o6plus_q3() {
    let (s, t) = space(Family::O6Plus, 3);
    let o = elliptic_ovoid(s).unwrap();
    assert_eq!(o.len(), 10);
    assert_eq!(pencil_union(s, &o).unwrap().enumerated_size, 160);
    let h = section_through_elliptic_ovoid(s).unwrap();
    assert_eq!(o.validate_m_ovoid(s, &h).unwrap(), 1);
    let y = m_ovoid_lift(s, &h, &o).unwrap();
    assert_eq!(y.len(), 120);
    assert_eq!(regular_set_check(s, t, &y).unwrap().eigenspace, Some(Eigenspace::V11));
    let all = OvoidSet::new(s, h.points(s)).unwrap();
    assert_eq!(all.validate_m_ovoid(s, &h).unwrap(), 4);
    assert_eq!(m_ovoid_lift(s, &h, &all).unwrap().len(), 480);
}

#[test]
fn ovoid_lift_needs_odd_q() {
    let (s, _) = space(Family::O6Plus, 2);
    let o = elliptic_ovoid(s).unwrap();
    let h = section_through_elliptic_ovoid(s).unwrap();
    assert!(matches!(m_ovoid_lift(s, &h, &o), Err(Error::Precondition(_))));
}

#[test]
fn symplectic_spreads() {
    let (s, t) = space(Family::Sp6, 2);
    assert_eq!(symplectic_spread_planes(s).unwrap().len(), 9);
    let y = symplectic_spread_lines(s).unwrap();
    assert_eq!(y.len(), 63);
    assert_eq!(inner_distribution(s, &y).unwrap(), ints(&[1, 6, 0, 24, 32]));
    assert_example(s, t, &y, Example::Spread).unwrap();
    assert_eq!(regular_set_check(s, t, &y).unwrap().eigenspace, Some(Eigenspace::V20));
    let (s3, t3) = space(Family::Sp6, 3);
    let y3 = symplectic_spread_lines(s3).unwrap();
    assert_eq!(y3.len(), 364);
    assert_eq!(regular_set_check(s3, t3, &y3).unwrap().eigenspace, Some(Eigenspace::V20));
    assert!(symplectic_spread_lines(&space(Family::O6Plus, 2).0).is_err());
}

#[test]
fn hexagon_in_sp6_q2() {
    let (s, t) = space(Family::Sp6, 2);
    let y = hexagon_lines(s).unwrap();
    assert_eq!(y.len(), 63);
    assert_example(s, t, &y, Example::Hexagon).unwrap();
    assert_eq!(regular_set_check(s, t, &y).unwrap().eigenspace, Some(Eigenspace::V20));
    let prof = crate::analysis::plane_profile(s, &y);
    assert!(prof.histogram.keys().all(|k| [0, 1, 3].contains(k)));
    assert!(prof.pencil_condition);
    assert_ne!(y, symplectic_spread_lines(s).unwrap());
}

#[test]
fn girth_detects_triangles() {
    let (s, _) = space(Family::O6Plus, 2);
    assert_eq!(incidence_girth(s, &plane_lines(s, 0).unwrap()), 6);
    assert_eq!(incidence_girth(s, &LineSet::new(s, [0]).unwrap()), usize::MAX);
}

#[test]
fn empty_two_weight_profile() {
    let (s, t) = space(Family::Sp6, 2);
    let p = two_weight_profile(s, t, &LineSet::empty(s)).unwrap();
    assert_eq!(p.counts.keys().copied().collect::<Vec<_>>(), vec![0]);
    assert!(p.matches);
    let pencil = point_pencil(s, 0, PencilMode::Through).unwrap();
    assert!(two_weight_profile(s, t, &pencil).is_err());
}

#[test]
fn srg_examples() {
    let p = SchemeParams::new(2, 2).unwrap();
    let g = srg_parameters(&int(1), &p).unwrap();
    assert_eq!((g.v, g.k, g.r, g.s), (64, 27, 3, -5));
    assert_eq!((g.lambda, g.mu), (10, 12));
    let p = SchemeParams::new(2, 4).unwrap();
    let g = srg_parameters(&int(1), &p).unwrap();
    assert_eq!((g.v, g.k, g.r, g.s), (256, 51, 3, -13));
    assert!(srg_parameters(&frac(1, 2), &SchemeParams::new(2, 2).unwrap()).is_err());
    assert!(srg_parameters(&int(0), &p).is_err());
}
