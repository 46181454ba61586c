//! The congruence toolbox: compatibility testing, generated congruences,
//! full enumeration, meets/joins, quotients, preimages and the Shifting
//! Lemma checker.
//!
//! Enumeration is deliberately brute force (principal congruences plus
//! binary-join closure); it backs every "largest" claim elsewhere and is
//! meant for desk-scale carriers.

use crate::algebra::{tuples_of_indices, FiniteAlgebra, Homomorphism, OpTable, SubUniverse};
use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};

/// True iff `p` is compatible with every operation of `a`.
///
/// Uses the translation criterion: an equivalence relation is a congruence
/// iff every unary translation maps related elements to related elements.
pub fn is_congruence(a: &FiniteAlgebra, p: &Partition) -> Result<bool> {
    if p.size() != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            found: p.size(),
        });
    }
    let translations = a.unary_translations();
    let blocks = p.blocks();
    for t in &translations {
        for block in &blocks {
            let first = t[block[0]];
            let class = p.label(first);
            for &x in &block[1..] {
                if p.label(t[x]) != class {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The least congruence of `a` containing all given pairs: union-find
/// seeded with the pairs, closed to a fixpoint under unary translations
/// with parameters over the full carrier.
pub fn congruence_generated(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Partition> {
    let n = a.size();
    for &(x, y) in pairs {
        for v in [x, y] {
            if v >= n {
                return Err(Error::OutOfRange { value: v, size: n });
            }
        }
    }
    let translations = a.unary_translations();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in pairs {
        if uf.union(x, y) {
            work.push((x, y));
        }
    }
    while let Some((x, y)) = work.pop() {
        for t in &translations {
            let (tx, ty) = (t[x], t[y]);
            if uf.union(tx, ty) {
                work.push((tx, ty));
            }
        }
    }
    Ok(uf.into_partition())
}

/// Every congruence of `a`: Δ, all principal congruences, and the closure
/// of that set under binary join. Sorted by (number of classes, labels).
pub fn all_congruences(a: &FiniteAlgebra) -> Vec<Partition> {
    let n = a.size();
    let mut set: std::collections::BTreeSet<Partition> = std::collections::BTreeSet::new();
    set.insert(Partition::discrete(n));
    for x in 0..n {
        for y in (x + 1)..n {
            set.insert(congruence_generated(a, &[(x, y)]).expect("in range"));
        }
    }
    // join closure; the join of two congruences is again a congruence
    loop {
        let current: Vec<Partition> = set.iter().cloned().collect();
        let mut added = false;
        for i in 0..current.len() {
            for j in (i + 1)..current.len() {
                let join = current[i].join(&current[j]).expect("same carrier");
                if set.insert(join) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<Partition> = set.into_iter().collect();
    out.sort_by(|p, q| {
        p.num_classes()
            .cmp(&q.num_classes())
            .then_with(|| p.labels().cmp(q.labels()))
    });
    out
}

/// Join in the congruence lattice, computed as the congruence generated by
/// the union of the two relations.
pub fn congruence_join(a: &FiniteAlgebra, p: &Partition, q: &Partition) -> Result<Partition> {
    if p.size() != a.size() || q.size() != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            found: if p.size() != a.size() { p.size() } else { q.size() },
        });
    }
    let mut pairs = Vec::new();
    for part in [p, q] {
        for block in part.blocks() {
            for w in block.windows(2) {
                pairs.push((w[0], w[1]));
            }
        }
    }
    congruence_generated(a, &pairs)
}

/// Meet of two partitions (common refinement); the meet of congruences is
/// again a congruence.
pub fn partition_meet(p: &Partition, q: &Partition) -> Result<Partition> {
    p.meet(q)
}

/// The quotient algebra `a/θ` with the projection homomorphism. Tables
/// are induced via class representatives; well-definedness is exactly the
/// congruence property, which is checked first.
pub fn quotient_algebra(
    a: &FiniteAlgebra,
    theta: &Partition,
) -> Result<(FiniteAlgebra, Homomorphism)> {
    if !is_congruence(a, theta)? {
        return Err(Error::NotACongruence {
            context: format!("{theta} on {}", a.name()),
        });
    }
    let k = theta.num_classes();
    // first-appearance labelling makes the minimum of each class its representative
    let mut reps = vec![usize::MAX; k];
    for x in 0..a.size() {
        let c = theta.label(x);
        if reps[c] == usize::MAX {
            reps[c] = x;
        }
    }
    let mut ops = Vec::new();
    for (op_idx, op) in a.ops().iter().enumerate() {
        let mut table = Vec::with_capacity(k.pow(op.arity as u32));
        for args in tuples_of_indices(k, op.arity) {
            let real: Vec<usize> = args.iter().map(|&c| reps[c]).collect();
            table.push(theta.label(a.apply(op_idx, &real)));
        }
        ops.push(OpTable {
            name: op.name.clone(),
            arity: op.arity,
            table,
        });
    }
    let consts = a
        .consts()
        .iter()
        .map(|(n, v)| (n.clone(), theta.label(*v)))
        .collect();
    let quotient = FiniteAlgebra::new(format!("{}_mod", a.name()), k, ops, consts)?;
    let projection = Homomorphism::new(a.clone(), quotient.clone(), theta.labels().to_vec())?;
    Ok((quotient, projection))
}

/// `x ≈ y iff h(x) R h(y)`; a congruence of the source whenever `R` is a
/// congruence of the target. With `R = Δ` this is the kernel pair of `h`.
pub fn preimage_congruence(h: &Homomorphism, r: &Partition) -> Result<Partition> {
    if r.size() != h.target().size() {
        return Err(Error::SizeMismatch {
            expected: h.target().size(),
            found: r.size(),
        });
    }
    let labels: Vec<usize> = h.map().iter().map(|&y| r.label(y)).collect();
    Ok(Partition::from_labels(&labels))
}

/// Kernel pair of a homomorphism.
pub fn kernel_pair(h: &Homomorphism) -> Partition {
    preimage_congruence(h, &Partition::discrete(h.target().size())).expect("sizes match")
}

/// Least subuniverse containing the seed and all constants.
pub fn subuniverse_generated(a: &FiniteAlgebra, seed: &[usize]) -> Result<SubUniverse> {
    let n = a.size();
    for &x in seed {
        if x >= n {
            return Err(Error::OutOfRange { value: x, size: n });
        }
    }
    let mut included = vec![false; n];
    for &x in seed {
        included[x] = true;
    }
    for (_, v) in a.consts() {
        included[*v] = true;
    }
    if !included.iter().any(|&b| b) {
        return Err(Error::EmptySubset {
            context: "empty subuniverse: empty seed and no constants".into(),
        });
    }
    loop {
        let elems: Vec<usize> = (0..n).filter(|&x| included[x]).collect();
        let mut grew = false;
        for (op_idx, op) in a.ops().iter().enumerate() {
            for args in crate::algebra::tuples(&elems, op.arity) {
                let v = a.apply(op_idx, &args);
                if !included[v] {
                    included[v] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let elems: Vec<usize> = (0..n).filter(|&x| included[x]).collect();
    SubUniverse::new(a, &elems)
}

/// Outcome of the Shifting Lemma test: either the implication holds for
/// all quadruples, or a violating quadruple is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftingLemma {
    Holds,
    Violated(ShiftingWitness),
}

/// A quadruple with `x S y`, `x' S y'`, `x R x'`, `y R y'`, `x T x'` but
/// not `y T y'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftingWitness {
    pub x: usize,
    pub y: usize,
    pub x_prime: usize,
    pub y_prime: usize,
}

/// Checks Gumm's Shifting Lemma for the congruence triple `(t, s, r)` with
/// `meet(r,s) ⊆ t`. A violated precondition is an error, not `Violated`.
pub fn check_shifting_lemma(
    a: &FiniteAlgebra,
    t: &Partition,
    s: &Partition,
    r: &Partition,
) -> Result<ShiftingLemma> {
    let n = a.size();
    for p in [t, s, r] {
        if p.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: p.size(),
            });
        }
        if !is_congruence(a, p)? {
            return Err(Error::NotACongruence {
                context: format!("{p} on {}", a.name()),
            });
        }
    }
    let meet = r.meet(s)?;
    if !meet.is_refinement_of(t) {
        let blocks = meet.blocks();
        let bad = blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
            .find(|&(x, y)| !t.same_class(x, y))
            .expect("a violating pair exists");
        return Err(Error::MeetNotBelow(bad.0, bad.1));
    }
    for x in 0..n {
        for y in 0..n {
            if !s.same_class(x, y) {
                continue;
            }
            for x1 in 0..n {
                if !r.same_class(x, x1) || !t.same_class(x, x1) {
                    continue;
                }
                for y1 in 0..n {
                    if s.same_class(x1, y1) && r.same_class(y, y1) && !t.same_class(y, y1) {
                        return Ok(ShiftingLemma::Violated(ShiftingWitness {
                            x,
                            y,
                            x_prime: x1,
                            y_prime: y1,
                        }));
                    }
                }
            }
        }
    }
    Ok(ShiftingLemma::Holds)
}
