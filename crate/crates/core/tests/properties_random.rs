//! Randomized properties: canonical-form idempotence, lattice laws for
//! partition meet/join, text round-trips, and generated-congruence
//! minimality under random pair sets.

use proptest::prelude::*;

use satkit_core::congruence::{all_congruences, congruence_generated, partition_meet};
use satkit_core::corpus;
use satkit_core::Partition;

fn labels_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..6, 1..12)
}

proptest! {
    #[test]
    fn canonicalization_is_idempotent(raw in labels_strategy()) {
        let p = Partition::from_labels(&raw);
        let again = Partition::from_labels(p.labels());
        prop_assert_eq!(p, again);
    }

    #[test]
    fn display_parse_roundtrip(raw in labels_strategy()) {
        let p = Partition::from_labels(&raw);
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(p, back);
    }

    #[test]
    fn meet_and_join_bound_the_operands(a in labels_strategy(), b in labels_strategy()) {
        let n = a.len().min(b.len());
        let p = Partition::from_labels(&a[..n]);
        let q = Partition::from_labels(&b[..n]);
        let meet = p.meet(&q).unwrap();
        let join = p.join(&q).unwrap();
        prop_assert!(meet.is_refinement_of(&p));
        prop_assert!(meet.is_refinement_of(&q));
        prop_assert!(p.is_refinement_of(&join));
        prop_assert!(q.is_refinement_of(&join));
        // absorption against the bounds
        prop_assert_eq!(p.meet(&Partition::indiscrete(n)).unwrap(), p.clone());
        prop_assert_eq!(p.join(&Partition::discrete(n)).unwrap(), p);
    }

    #[test]
    fn meet_is_commutative_and_associative(
        a in labels_strategy(),
        b in labels_strategy(),
        c in labels_strategy(),
    ) {
        let n = a.len().min(b.len()).min(c.len());
        let p = Partition::from_labels(&a[..n]);
        let q = Partition::from_labels(&b[..n]);
        let r = Partition::from_labels(&c[..n]);
        prop_assert_eq!(p.meet(&q).unwrap(), q.meet(&p).unwrap());
        prop_assert_eq!(
            p.meet(&q).unwrap().meet(&r).unwrap(),
            p.meet(&q.meet(&r).unwrap()).unwrap()
        );
    }

    #[test]
    fn generated_congruence_is_least_on_random_pair_sets(
        pick in 0usize..4,
        pairs in prop::collection::vec((0usize..8, 0usize..8), 0..6),
    ) {
        let algebras = [
            corpus::cyclic_group(6),
            corpus::symmetric_group_3(),
            corpus::z4_monoid(),
            corpus::quaternion_group(),
        ];
        let a = &algebras[pick];
        let n = a.size();
        let pairs: Vec<(usize, usize)> =
            pairs.into_iter().map(|(x, y)| (x % n, y % n)).collect();
        let generated = congruence_generated(a, &pairs).unwrap();
        let minimal = all_congruences(a)
            .into_iter()
            .filter(|t| pairs.iter().all(|&(x, y)| t.same_class(x, y)))
            .reduce(|p, q| partition_meet(&p, &q).unwrap())
            .expect("the indiscrete congruence always qualifies");
        prop_assert_eq!(generated, minimal);
    }
}
