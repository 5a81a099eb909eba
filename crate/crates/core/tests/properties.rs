//! Algebraic invariants on random concrete systems and on the census.

mod common;

use effectlab::classify::{is_omp, is_omp_by_joins, join};
use effectlab::concrete::closure;
use effectlab::enumerate::{canonical_form, enumerate_all};
use effectlab::format::{parse_ea, write_ea};
use effectlab::states::is_state;
use effectlab::{validate, EffectAlgebra, SetSystem};
use proptest::prelude::*;

fn concrete() -> impl Strategy<Value = SetSystem> {
    (2usize..=6)
        .prop_flat_map(|m| (Just(m), prop::collection::vec(1u64..(1 << m), 0..4)))
        .prop_map(|(m, seeds)| {
            let seeds: Vec<_> = seeds.into_iter().map(|s| (None, s)).collect();
            closure(m, &seeds).unwrap()
        })
        .prop_filter("keep carriers small", |s| s.len() <= 48)
}

fn check_axioms(alg: &EffectAlgebra) {
    for a in alg.elements() {
        assert_eq!(alg.supplement(alg.supplement(a)), a);
        assert_eq!(alg.sum(a, alg.zero()), Some(a));
        for b in alg.elements() {
            assert_eq!(alg.sum(a, b), alg.sum(b, a));
            if alg.leq(a, b) {
                assert!(alg.leq(alg.supplement(b), alg.supplement(a)));
                let d = alg.ominus(b, a).unwrap();
                assert_eq!(alg.sum(a, d), Some(b));
            } else {
                assert!(alg.ominus(b, a).is_err());
            }
            if let (Some(s), Some(j)) = (alg.sum(a, b), join(alg, a, b)) {
                assert!(alg.leq(j, s));
            }
            for c in alg.elements() {
                if b != c && alg.sum(a, b).is_some() {
                    assert_ne!(alg.sum(a, b), alg.sum(a, c));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn concrete_systems_satisfy_axioms(sys in concrete()) {
        let alg = sys.to_algebra().unwrap();
        check_axioms(&alg);
        prop_assert!(is_omp(&alg).holds());
        prop_assert_eq!(is_omp(&alg).holds(), is_omp_by_joins(&alg).holds());
    }

    #[test]
    fn order_is_inclusion(sys in concrete()) {
        let alg = sys.to_algebra().unwrap();
        for a in alg.elements() {
            for b in alg.elements() {
                let (ma, mb) = (sys.blocks()[a.index()], sys.blocks()[b.index()]);
                prop_assert_eq!(alg.leq(a, b), ma & !mb == 0);
                prop_assert_eq!(alg.orthogonal(a, b), ma & mb == 0);
            }
        }
    }

    #[test]
    fn closure_is_idempotent(sys in concrete()) {
        let again: Vec<_> = sys.blocks().iter().map(|&b| (None, b)).collect();
        let twice = closure(sys.ground(), &again).unwrap();
        let mut x = sys.blocks().to_vec();
        let mut y = twice.blocks().to_vec();
        x.sort_unstable();
        y.sort_unstable();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn point_states_are_states(sys in concrete()) {
        let alg = sys.to_algebra().unwrap();
        for s in sys.point_states() {
            prop_assert!(is_state(&alg, s.values()).is_ok());
            prop_assert!(common::state_oracle(&alg, s.values()));
            prop_assert!(s.is_two_valued());
        }
    }

    #[test]
    fn ea_round_trip_preserves_isomorphism_class(sys in concrete()) {
        let alg = sys.to_algebra().unwrap();
        prop_assume!(alg.n() <= 8);
        let back = validate(&parse_ea(&write_ea(&alg)).unwrap()).unwrap();
        prop_assert_eq!(canonical_form(&back), canonical_form(&alg));
    }
}

#[test]
fn census_satisfies_axioms() {
    for n in 2..=6 {
        for alg in enumerate_all(n).unwrap() {
            check_axioms(&alg);
            let back = validate(&parse_ea(&write_ea(&alg)).unwrap()).unwrap();
            assert_eq!(canonical_form(&back), canonical_form(&alg));
        }
    }
}
