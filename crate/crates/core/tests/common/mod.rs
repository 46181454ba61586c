//! Helpers shared by the integration suites.

#![allow(dead_code)]

use satkit_core::algebra::subalgebra;
use satkit_core::congruence::all_congruences;
use satkit_core::corpus;
use satkit_core::{FiniteAlgebra, Partition, SubUniverse};

/// The size ≤ 6 corpus used by the exhaustive saturation checks: small
/// groups, the listed monoids and semirings, braces from z2, z3, s3.
pub fn small_corpus() -> Vec<FiniteAlgebra> {
    let mut out = vec![
        corpus::cyclic_group(2),
        corpus::cyclic_group(3),
        corpus::cyclic_group(4),
        corpus::klein_group(),
        corpus::cyclic_group(5),
        corpus::cyclic_group(6),
        corpus::symmetric_group_3(),
    ];
    out.extend(corpus::monoids());
    out.extend(corpus::semirings());
    for g in [
        corpus::cyclic_group(2),
        corpus::cyclic_group(3),
        corpus::symmetric_group_3(),
    ] {
        let (b, bop) = satkit_core::varieties::braces_from_group(&g).expect("group corpus");
        out.push(b);
        out.push(bop);
    }
    out
}

/// Groups used by the centralizer criteria.
pub fn centralizer_groups() -> Vec<FiniteAlgebra> {
    vec![
        corpus::cyclic_group(4),
        corpus::klein_group(),
        corpus::cyclic_group(6),
        corpus::symmetric_group_3(),
        corpus::cyclic_group(8),
        corpus::dihedral_group_4(),
        corpus::quaternion_group(),
    ]
}

/// All congruences of the subalgebra induced on `u`, indexed by position.
pub fn congruences_on(a: &FiniteAlgebra, u: &SubUniverse) -> Vec<Partition> {
    let sub = subalgebra(a, u).expect("valid subuniverse");
    all_congruences(&sub)
}

/// Asserts that `result` belongs to `candidates` and dominates every
/// member (i.e. it is the maximum of the candidate set).
pub fn assert_is_maximum(candidates: &[Partition], result: &Partition, context: &str) {
    assert!(
        candidates.contains(result),
        "{context}: computed {result} is not a valid candidate"
    );
    for t in candidates {
        assert!(
            t.is_refinement_of(result),
            "{context}: candidate {t} is not below the computed {result}"
        );
    }
}

/// Conjugation stability of a subset of a group: `g k g⁻¹ ∈ K`.
pub fn is_conjugation_stable(g: &FiniteAlgebra, elems: &[usize]) -> bool {
    let mul = g.op_index("mul").expect("group shape");
    let inv = g.op_index("inv").expect("group shape");
    let in_set = |x: usize| elems.binary_search(&x).is_ok();
    for &k in elems {
        for x in g.elements() {
            let conj = g.apply(mul, &[g.apply(mul, &[x, k]), g.apply(inv, &[x])]);
            if !in_set(conj) {
                return false;
            }
        }
    }
    true
}

/// The preimage of a subuniverse of the target along a homomorphism,
/// as carrier elements of the source.
pub fn preimage_elements(h: &satkit_core::Homomorphism, v: &SubUniverse) -> Vec<usize> {
    (0..h.source().size())
        .filter(|&x| v.contains(h.apply(x)))
        .collect()
}
