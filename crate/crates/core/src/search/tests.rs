use super::*;
use crate::analysis::inner_distribution;
use crate::constructions::{HyperplaneSection, SectionDef, SectionKind};
use crate::polar::{Eigenspace, Family, PolarSpace};
use crate::scheme::SchemeTables;
use std::sync::OnceLock;

fn o6plus2() -> &'static (PolarSpace, SchemeTables) {
    static S: OnceLock<(PolarSpace, SchemeTables)> = OnceLock::new();
    S.get_or_init(|| {
        let s = PolarSpace::build(Family::O6Plus, 2).unwrap();
        let t = SchemeTables::for_space(&s).unwrap();
        (s, t)
    })
}

#[test]
fn exact_cover_small() {
    let subsets = vec![vec![0, 1], vec![2], vec![1, 2], vec![0], vec![3]];
    let r = exact_cover(4, &subsets, &SearchBudget::default());
    let mut c = r.cover.unwrap();
    c.sort();
    let mut seen = [0; 4];
    for i in &c {
        for &e in &subsets[*i] {
            seen[e] += 1;
        }
    }
    assert_eq!(seen, [1; 4]);
    let r = exact_cover(3, &[vec![0, 1], vec![1, 2]], &SearchBudget::default());
    assert!(r.cover.is_none() && r.complete);
}

#[test]
fn clique_of_small_graphs() {
    // 5-cycle plus a chord 0-2: max clique {0,1,2}
    let mut adj = vec![vec![false; 5]; 5];
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)] {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let (mut c, complete, _) = max_clique(&adj, &SearchBudget::default());
    c.sort();
    assert_eq!(c, vec![0, 1, 2]);
    assert!(complete);
}

#[test]
fn quadrangle_sections_are_the_small_v11_sets() {
    let (s, t) = o6plus2();
    let r = enumerate_regular_sets(s, t, Eigenspace::V11, 15, &SearchBudget::default()).unwrap();
    assert!(r.complete);
    let sections = HyperplaneSection::all_of_kind(s, SectionKind::Quadrangle, None).unwrap();
    assert_eq!(r.sets.len(), sections.len());
    for y in &r.sets {
        assert_eq!(inner_distribution(s, y).unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["1", "0", "6", "0", "8"]);
    }
}

#[test]
fn no_small_v10_sets() {
    let (s, t) = o6plus2();
    let r = feasibility_probe(s, t, &[Eigenspace::V10], 21, &SearchBudget::default()).unwrap();
    assert_eq!(r.verdict, ProbeVerdict::None);
    let r = enumerate_regular_sets(s, t, Eigenspace::V10, 21, &SearchBudget::default()).unwrap();
    assert!(r.complete && r.sets.is_empty());
}

#[test]
fn probe_finds_plane_unions() {
    let (s, t) = o6plus2();
    let r = feasibility_probe(s, t, &[Eigenspace::V10, Eigenspace::V20], 7, &SearchBudget::default()).unwrap();
    assert_eq!(r.verdict, ProbeVerdict::Witness);
    assert_eq!(r.witness.unwrap().len(), 7);
    // 5 is coprime to everything a pencil forces
    let r = feasibility_probe(s, t, &[Eigenspace::V11], 5, &SearchBudget::default()).unwrap();
    assert_eq!(r.verdict, ProbeVerdict::None);
}

#[test]
fn spread_of_elliptic_section() {
    let s = PolarSpace::build(Family::Sp6, 2).unwrap();
    let t = SchemeTables::for_space(&s).unwrap();
    let sec = HyperplaneSection::all_of_kind(&s, SectionKind::Quadrangle, Some(1)).unwrap().remove(0);
    assert!(matches!(sec.def, SectionDef::Quadric(_)));
    let r = line_spread_search(&s, Some(&sec), &SearchBudget::default()).unwrap();
    let y = r.lines.unwrap();
    assert_eq!(y.len(), 9);
    let a = inner_distribution(&s, &y).unwrap();
    assert_eq!(a.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["1", "0", "0", "0", "8"]);
    let _ = t;
}

#[test]
fn packing_of_quadrangle_sections() {
    let (s, _) = o6plus2();
    let p = disjoint_section_packing(s, &SearchBudget::default()).unwrap();
    assert!(p.complete);
    assert_eq!(p.size, 7);
    assert_eq!(p.lines.len(), 105);
}

#[test]
fn ovoids_and_catalog() {
    let (s, _) = o6plus2();
    assert_eq!(enumerate_ovoids(s).len(), 56);
    let c = Catalog::new(s).unwrap();
    assert_eq!(c.len(), 28 + 56);
}

#[test]
fn three_routes_agree_on_quadrangle_sections() {
    let (s, t) = o6plus2();
    let by_degrees = enumerate_regular_sets(s, t, Eigenspace::V11, 15, &SearchBudget::default()).unwrap();
    let want: Vec<Vec<u32>> = by_degrees.sets.iter().map(|y| y.as_slice().to_vec()).collect();
    let m = SpanModel::new(s, t, &[Eigenspace::V11], 15).unwrap();
    assert_eq!(m.rank(), 1 + 20);
    let (by_span, complete, _) = span_search(&m, &SearchBudget::default());
    assert!(complete);
    assert_eq!(by_span, want);
    let w = super::regular::orthogonality_weights(t, &[Eigenspace::V11]);
    let model = super::engine::Model::new(s, 15, super::engine::Targets::Linear(w));
    let (first, _, _) = super::engine::run(&model, &SearchBudget::default().with_results(1), 4);
    assert!(want.contains(&first[0]));
}

#[test]
fn five_planes_of_one_family() {
    // a witness the plane divisibility lemma does not exclude: its own
    // witness, a plane, has support {10, 20}
    let (s, t) = o6plus2();
    let r = feasibility_probe(s, t, &[Eigenspace::V10, Eigenspace::V20], 35, &SearchBudget::default()).unwrap();
    assert_eq!(r.verdict, ProbeVerdict::Witness);
    let y = r.witness.unwrap();
    assert_eq!(y.len(), 35);
    let sup = crate::analysis::eigenspace_support(s, t, &y).unwrap();
    assert!(sup.iter().all(|j| [Eigenspace::V10, Eigenspace::V20].contains(j)));
    let r = feasibility_probe(s, t, &[Eigenspace::V10, Eigenspace::V11], 21, &SearchBudget::default()).unwrap();
    assert_eq!(r.verdict, ProbeVerdict::None);
}

#[test]
fn budget_exhaustion_is_reported() {
    let (s, t) = o6plus2();
    let r = feasibility_probe(s, t, &[Eigenspace::V10, Eigenspace::V21], 21, &SearchBudget::nodes(1000)).unwrap();
    assert_eq!(r.verdict, ProbeVerdict::Unknown);
    let r = enumerate_regular_sets(s, t, Eigenspace::V11, 45, &SearchBudget::nodes(100)).unwrap();
    assert!(!r.complete);
}

#[test]
fn complement_closure() {
    let (s, t) = o6plus2();
    let r = enumerate_regular_sets(s, t, Eigenspace::V11, 30, &SearchBudget::default()).unwrap();
    let c = enumerate_regular_sets(s, t, Eigenspace::V11, 75, &SearchBudget::default()).unwrap();
    let mut comp: Vec<Vec<u32>> = r.sets.iter().map(|y| y.complement(s).as_slice().to_vec()).collect();
    comp.sort();
    let found: Vec<Vec<u32>> = c.sets.iter().map(|y| y.as_slice().to_vec()).collect();
    assert_eq!(comp, found);
}
