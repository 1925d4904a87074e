mod common;

use common::*;
use num_traits::{Signed, Zero};
use polar_lines::analysis::{divisibility_report, eigenspace_support, inner_distribution, LineSet};
use polar_lines::scheme::q_matrix;
use polar_lines::{Eigenspace, Family, Relation, SchemeParams, SchemeTables};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SchemeParams> {
    prop::sample::select(SchemeParams::all_up_to(9))
}

fn o6plus2_subset() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(0usize..105, 1..105).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn p_times_q_is_n_identity(p in params()) {
        let t = SchemeTables::new(p).unwrap();
        let q = q_matrix(&p).unwrap();
        let n = r(t.n());
        for i in 0..5 {
            for j in 0..5 {
                let s: Q = (0..5).map(|k| r(t.p()[i][k]) * &q[k][j]).sum();
                prop_assert_eq!(s, if i == j { n.clone() } else { Q::zero() });
            }
        }
        prop_assert_eq!(t.valencies().iter().sum::<i128>(), t.n());
        prop_assert_eq!(t.multiplicities().iter().sum::<i128>(), t.n());
        prop_assert_eq!(Pw::new(&p).n(), t.n());
    }

    #[test]
    fn divisibility_is_closed_under_complement(p in params(), j in prop::sample::select(Eigenspace::ALL[1..].to_vec()), frac in 0.0f64..=1.0) {
        let n = Pw::new(&p).n() as u64;
        let size = (frac * n as f64) as u64;
        let a = divisibility_report(size, j, &p).unwrap().consistent;
        let b = divisibility_report(n - size, j, &p).unwrap().consistent;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn distributions_of_random_sets(lines in o6plus2_subset()) {
        let (s, t) = space(Family::O6Plus, 2);
        let y = LineSet::new(s, lines.iter().copied()).unwrap();
        let a = inner_distribution(s, &y).unwrap();
        prop_assert_eq!(&a[0], &r(1));
        prop_assert_eq!(a.iter().sum::<Q>(), r(y.len() as i128));
        let aq = t.dual(&a);
        prop_assert_eq!(&aq[0], &r(y.len() as i128));
        prop_assert!(aq.iter().all(|x| !x.is_negative()));
        if y.len() < s.num_lines() {
            let c = y.complement(s);
            prop_assert_eq!(eigenspace_support(s, t, &y).unwrap(), eigenspace_support(s, t, &c).unwrap());
        }
    }

    #[test]
    fn relations_are_symmetric(l in 0usize..315, m in 0usize..315) {
        let (s, _) = space(Family::Sp6, 2);
        prop_assert_eq!(s.relation(l, m), s.relation(m, l));
        prop_assert_eq!(s.relation(l, m) == Relation::R00, l == m);
    }
}
