//! Cross-module invariants exercised over the shipped corpus: lattice
//! structure of the congruence enumeration, order properties of the
//! saturation operator, kernel characterizations of normality, and the
//! coherence of the automata bridge.

mod common;

use common::*;
use satkit_core::algebra::{all_subuniverses, subalgebra};
use satkit_core::centralizer::{centralizer, is_connected};
use satkit_core::congruence::{
    all_congruences, congruence_generated, congruence_join, is_congruence, kernel_pair,
    partition_meet, quotient_algebra,
};
use satkit_core::corpus;
use satkit_core::lang::{accepting_subset, transition_monoid};
use satkit_core::saturation::{
    forall_u, is_saturated, restrict_congruence, syntactic_congruence, unit_class,
};
use satkit_core::varieties::{
    is_normal_submonoid, is_normal_subsemiring, monoid_reduct, semiring_syntactic,
};
use satkit_core::{FiniteAlgebra, Partition, SubUniverse};

fn lattice_corpus() -> Vec<FiniteAlgebra> {
    let mut out = small_corpus();
    out.push(corpus::cyclic_group(8));
    out.push(corpus::dihedral_group_4());
    out.push(corpus::quaternion_group());
    out.push(corpus::square_semilattice());
    out.push(corpus::flat_semilattice());
    out
}

#[test]
fn generated_congruence_is_minimal() {
    for a in lattice_corpus() {
        let congs = all_congruences(&a);
        let n = a.size();
        let mut seeds: Vec<Vec<(usize, usize)>> = vec![vec![]];
        for x in 0..n {
            for y in (x + 1)..n {
                seeds.push(vec![(x, y)]);
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
            .collect();
        for (i, &p) in pairs.iter().enumerate() {
            for &q in &pairs[i + 1..] {
                seeds.push(vec![p, q]);
            }
        }
        for seed in seeds {
            let generated = congruence_generated(&a, &seed).unwrap();
            let minimal = congs
                .iter()
                .filter(|t| seed.iter().all(|&(x, y)| t.same_class(x, y)))
                .fold(Partition::indiscrete(n), |acc, t| {
                    partition_meet(&acc, t).unwrap()
                });
            assert_eq!(
                generated,
                minimal,
                "{}: seed {seed:?} does not generate the least congruence",
                a.name()
            );
        }
    }
}

#[test]
fn quotient_projection_kernel_recovers_theta() {
    for a in lattice_corpus() {
        for theta in all_congruences(&a) {
            let (_, proj) = quotient_algebra(&a, &theta).unwrap();
            assert_eq!(kernel_pair(&proj), theta, "{}", a.name());
        }
    }
}

#[test]
fn congruence_set_is_a_lattice() {
    for a in lattice_corpus() {
        let congs = all_congruences(&a);
        let n = a.size();
        assert!(congs.contains(&Partition::discrete(n)), "{}", a.name());
        assert!(congs.contains(&Partition::indiscrete(n)), "{}", a.name());
        for p in &congs {
            assert!(is_congruence(&a, p).unwrap(), "{}: {p}", a.name());
        }
        for p in &congs {
            for q in &congs {
                let meet = partition_meet(p, q).unwrap();
                assert!(congs.contains(&meet), "{}: meet escapes", a.name());
                let join = congruence_join(&a, p, q).unwrap();
                assert!(congs.contains(&join), "{}: join escapes", a.name());
                // the relation-level join of congruences is the congruence join
                assert_eq!(join, p.join(q).unwrap(), "{}", a.name());
            }
        }
    }
}

#[test]
fn saturation_operator_is_monotone() {
    for a in small_corpus() {
        for u in all_subuniverses(&a) {
            let congs = congruences_on(&a, &u);
            for t in &congs {
                for s in &congs {
                    if !t.is_refinement_of(s) {
                        continue;
                    }
                    let ft = forall_u(&a, &u, t).unwrap();
                    let fs = forall_u(&a, &u, s).unwrap();
                    assert!(
                        ft.is_refinement_of(&fs),
                        "{}: monotonicity fails for {t} ⊆ {s} on U={:?}",
                        a.name(),
                        u.elements()
                    );
                }
            }
        }
    }
}

#[test]
fn saturation_composition_inclusion() {
    // U ⊆ V ⊆ X: applying the operator through V stays below the direct one
    for a in small_corpus() {
        let subs = all_subuniverses(&a);
        for v in &subs {
            let b = subalgebra(&a, v).unwrap();
            for u in &subs {
                if !u.elements().iter().all(|x| v.contains(*x)) {
                    continue;
                }
                let u_in_v: Vec<usize> = u
                    .elements()
                    .iter()
                    .map(|&x| v.index_of(x).expect("nested"))
                    .collect();
                let u_sub_b = SubUniverse::new(&b, &u_in_v).unwrap();
                for s in congruences_on(&a, u) {
                    let inner = forall_u(&b, &u_sub_b, &s).unwrap();
                    let outer = forall_u(&a, v, &inner).unwrap();
                    let direct = forall_u(&a, u, &s).unwrap();
                    assert!(
                        outer.is_refinement_of(&direct),
                        "{}: composition inclusion fails for U={:?} V={:?} S={s}",
                        a.name(),
                        u.elements(),
                        v.elements()
                    );
                }
            }
        }
    }
}

#[test]
fn saturation_pullback_inclusion() {
    // along each quotient projection h: X → Y, subuniverse V of Y:
    // h⁻¹(forall_v S) ⊆ forall_{h⁻¹(V)} (h⁻¹ S)
    let corpus_small: Vec<FiniteAlgebra> = vec![
        corpus::cyclic_group(4),
        corpus::cyclic_group(6),
        corpus::symmetric_group_3(),
        corpus::klein_group(),
        corpus::boolean_semiring(),
        corpus::z4_monoid(),
    ];
    for a in corpus_small {
        for theta in all_congruences(&a) {
            let (target, h) = quotient_algebra(&a, &theta).unwrap();
            for v in all_subuniverses(&target) {
                let u_elems = preimage_elements(&h, &v);
                let u = SubUniverse::new(&a, &u_elems).unwrap();
                for s in congruences_on(&target, &v) {
                    let fv = forall_u(&target, &v, &s).unwrap();
                    let lhs = satkit_core::congruence::preimage_congruence(&h, &fv).unwrap();
                    // s pulled back to positions of U
                    let labels: Vec<usize> = u
                        .elements()
                        .iter()
                        .map(|&x| s.label(v.index_of(h.apply(x)).expect("image in V")))
                        .collect();
                    let s_pulled = Partition::from_labels(&labels);
                    let rhs = forall_u(&a, &u, &s_pulled).unwrap();
                    assert!(
                        lhs.is_refinement_of(&rhs),
                        "{}: pullback inclusion fails along θ={theta}",
                        a.name()
                    );
                }
            }
        }
    }
}

#[test]
fn fixed_point_characterizes_restrictions() {
    // R on U is the restriction of a congruence saturating U
    // iff restrict(forall_u(R), U) = R
    for a in small_corpus() {
        let congs = all_congruences(&a);
        for u in all_subuniverses(&a) {
            for r in congruences_on(&a, &u) {
                let exists = congs.iter().any(|t| {
                    is_saturated(u.elements(), t).unwrap()
                        && restrict_congruence(t, &u).unwrap() == r
                });
                let fixed = restrict_congruence(&forall_u(&a, &u, &r).unwrap(), &u).unwrap() == r;
                assert_eq!(
                    exists,
                    fixed,
                    "{}: fixed-point characterization fails on U={:?} R={r}",
                    a.name(),
                    u.elements()
                );
            }
        }
    }
}

#[test]
fn group_saturation_characterization() {
    // U is saturated w.r.t. a congruence with nontrivial restriction iff
    // some nontrivial normal subgroup of G lies inside U
    for g in corpus::groups() {
        let congs = all_congruences(&g);
        for u in all_subuniverses(&g) {
            let saturated_nontrivially = congs.iter().any(|r| {
                is_saturated(u.elements(), r).unwrap()
                    && !restrict_congruence(r, &u).unwrap().is_discrete()
            });
            let has_nontrivial_normal_inside = all_subuniverses(&g).iter().any(|v| {
                v.len() > 1
                    && v.elements().iter().all(|x| u.contains(*x))
                    && is_conjugation_stable(&g, v.elements())
            });
            assert_eq!(
                saturated_nontrivially,
                has_nontrivial_normal_inside,
                "{}: saturation characterization fails on U={:?}",
                g.name(),
                u.elements()
            );
        }
    }
}

#[test]
fn normal_iff_kernel_for_monoids() {
    // K normal iff K is the unit class of its syntactic congruence;
    // checked on the listed monoids and on all monoids of order ≤ 5
    let mut monoids = corpus::monoids();
    for n in 1..=5 {
        monoids.extend(corpus::enumerate_monoids(n));
    }
    for m in monoids {
        let e = m.const_value("e").unwrap();
        for k in all_subuniverses(&m) {
            let normal = is_normal_submonoid(&m, &k).unwrap();
            let syn = syntactic_congruence(&m, k.elements()).unwrap();
            let kernel = unit_class(&m, &syn, e).unwrap() == k.elements();
            assert_eq!(normal, kernel, "{}: K={:?}", m.name(), k.elements());
        }
    }
}

#[test]
fn normal_iff_kernel_for_semirings() {
    for a in corpus::semirings() {
        let zero = a.const_value("zero").unwrap();
        for w in all_subuniverses(&a) {
            let normal = is_normal_subsemiring(&a, &w).unwrap();
            let syn = semiring_syntactic(&a, w.elements()).unwrap();
            let kernel = unit_class(&a, &syn, zero).unwrap() == w.elements();
            assert_eq!(normal, kernel, "{}: W={:?}", a.name(), w.elements());
        }
    }
}

#[test]
fn ring_normal_subsemirings_are_ideals() {
    for a in [corpus::z2_ring(), corpus::z4_ring()] {
        let add = a.op_index("add").unwrap();
        let mul = a.op_index("mul").unwrap();
        let neg = a.op_index("neg").unwrap();
        for w in all_subuniverses(&a) {
            let in_w = |x: usize| w.contains(x);
            // two-sided ideal: additive subgroup plus absorption
            let additive_subgroup = w
                .elements()
                .iter()
                .all(|&x| in_w(a.apply(neg, &[x])))
                && w.elements()
                    .iter()
                    .all(|&x| w.elements().iter().all(|&y| in_w(a.apply(add, &[x, y]))));
            let absorbing = w.elements().iter().all(|&k| {
                a.elements()
                    .all(|x| in_w(a.apply(mul, &[x, k])) && in_w(a.apply(mul, &[k, x])))
            });
            let ideal = additive_subgroup && absorbing;
            assert_eq!(
                is_normal_subsemiring(&a, &w).unwrap(),
                ideal,
                "{}: W={:?}",
                a.name(),
                w.elements()
            );
        }
    }
}

#[test]
fn congruences_correspond_to_normal_subgroups() {
    for g in corpus::groups() {
        let e = g.const_value("e").unwrap();
        let congs = all_congruences(&g);
        let unit_classes: Vec<Vec<usize>> = congs
            .iter()
            .map(|r| unit_class(&g, r, e).unwrap())
            .collect();
        // distinct congruences have distinct unit classes
        let mut sorted = unit_classes.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), congs.len(), "{}", g.name());
        // and they are exactly the normal subgroups
        let mut normal_subgroups: Vec<Vec<usize>> = all_subuniverses(&g)
            .into_iter()
            .filter(|v| is_conjugation_stable(&g, v.elements()))
            .map(|v| v.elements().to_vec())
            .collect();
        normal_subgroups.sort();
        assert_eq!(sorted, normal_subgroups, "{}", g.name());
    }
}

#[test]
fn centralizer_is_antitone() {
    for g in centralizer_groups() {
        let congs = all_congruences(&g);
        for r in &congs {
            for r2 in &congs {
                if !r.is_refinement_of(r2) {
                    continue;
                }
                let c = centralizer(&g, r).unwrap();
                let c2 = centralizer(&g, r2).unwrap();
                assert!(
                    c2.is_refinement_of(&c),
                    "{}: centralizer not antitone for {r} ⊆ {r2}",
                    g.name()
                );
            }
        }
    }
}

#[test]
fn discrete_congruence_centralizes_everything() {
    let mut algebras = small_corpus();
    algebras.push(corpus::cyclic_group(8));
    algebras.push(corpus::dihedral_group_4());
    algebras.push(corpus::quaternion_group());
    for a in algebras {
        let n = a.size();
        assert_eq!(
            centralizer(&a, &Partition::discrete(n)).unwrap(),
            Partition::indiscrete(n),
            "{}",
            a.name()
        );
        for r in all_congruences(&a) {
            assert!(
                is_connected(&a, &r, &Partition::discrete(n)).unwrap(),
                "{}: Δ does not centralize {r}",
                a.name()
            );
        }
    }
}

#[test]
fn accepted_subset_is_saturated_in_the_transition_monoid() {
    for d in corpus::dfas() {
        let tm = transition_monoid(&d);
        let w = accepting_subset(&d, &tm);
        if w.is_empty() {
            continue;
        }
        let syn = syntactic_congruence(tm.algebra(), &w).unwrap();
        assert!(is_saturated(&w, &syn).unwrap(), "{}", d.name());
    }
}

#[test]
fn saturation_matches_the_monoid_context_formula() {
    // on monoids the operator has a closed form: relate m, n iff for every
    // context (x, y), xmy and xny agree on membership in U and are
    // S-related whenever both lie in U
    for m in corpus::monoids() {
        let mul = m.op_index("mul").unwrap();
        let n = m.size();
        for u in all_subuniverses(&m) {
            for s in congruences_on(&m, &u) {
                let mut profiles: Vec<Vec<Option<usize>>> = Vec::with_capacity(n);
                for mid in 0..n {
                    let mut profile = Vec::with_capacity(n * n);
                    for x in 0..n {
                        let xm = m.apply(mul, &[x, mid]);
                        for y in 0..n {
                            let xmy = m.apply(mul, &[xm, y]);
                            profile.push(u.index_of(xmy).map(|pos| s.label(pos)));
                        }
                    }
                    profiles.push(profile);
                }
                let mut labels = Vec::with_capacity(n);
                let mut seen: Vec<&[Option<usize>]> = Vec::new();
                for p in &profiles {
                    let id = seen
                        .iter()
                        .position(|q| *q == p.as_slice())
                        .unwrap_or_else(|| {
                            seen.push(p.as_slice());
                            seen.len() - 1
                        });
                    labels.push(id);
                }
                let direct = Partition::from_labels(&labels);
                assert_eq!(
                    direct,
                    forall_u(&m, &u, &s).unwrap(),
                    "{}: context formula differs on U={:?} S={s}",
                    m.name(),
                    u.elements()
                );
            }
        }
    }
}

#[test]
fn monoid_congruences_of_groups_are_group_congruences() {
    for g in corpus::groups() {
        let reduct = monoid_reduct(&g).unwrap();
        assert_eq!(
            all_congruences(&reduct),
            all_congruences(&g),
            "{}",
            g.name()
        );
    }
}
