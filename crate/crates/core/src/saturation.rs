//! The saturation engine.
//!
//! Everything here is driven by one primitive: [`largest_congruence_below`],
//! a generalized Moore refinement that computes the unique largest
//! congruence contained in an arbitrary partition. On top of it sit the
//! syntactic congruence of a subset, the saturation operator
//! [`forall_u`] for a pair (subuniverse, congruence-on-it), the supremum
//! of relations a subuniverse is normal to, and the saturation/normality
//! predicates.
//!
//! The refinement splits all classes per round using full signatures over
//! the unary translations; at a fixpoint the partition is closed under
//! every unary polynomial, which for an equivalence relation is the same
//! as being a congruence. Any congruence below the start partition is
//! never split apart, so the fixpoint is the largest one.

use crate::algebra::{restrict_partition, subalgebra, FiniteAlgebra, SubUniverse};
use crate::congruence::is_congruence;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// The unique largest congruence of `a` contained in the partition `e`.
pub fn largest_congruence_below(a: &FiniteAlgebra, e: &Partition) -> Result<Partition> {
    if e.size() != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            found: e.size(),
        });
    }
    let translations = a.unary_translations();
    let n = a.size();
    let mut current = e.clone();
    loop {
        let mut keys: Vec<Vec<usize>> = Vec::with_capacity(n);
        for x in 0..n {
            let mut key = Vec::with_capacity(translations.len() + 1);
            key.push(current.label(x));
            for t in &translations {
                key.push(current.label(t[x]));
            }
            keys.push(key);
        }
        let mut seen: std::collections::HashMap<&[usize], usize> =
            std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(n);
        for key in &keys {
            let next = seen.len();
            labels.push(*seen.entry(key.as_slice()).or_insert(next));
        }
        let refined = Partition::from_labels(&labels);
        if refined == current {
            return Ok(current);
        }
        current = refined;
    }
}

/// The syntactic congruence of a nonempty subset `w`: the largest
/// congruence for which `w` is a union of classes. `w` need not be a
/// subuniverse.
pub fn syntactic_congruence(a: &FiniteAlgebra, w: &[usize]) -> Result<Partition> {
    let n = a.size();
    if w.is_empty() {
        return Err(Error::EmptySubset {
            context: "syntactic congruence of the empty subset".into(),
        });
    }
    let mut inside = vec![false; n];
    for &x in w {
        if x >= n {
            return Err(Error::OutOfRange { value: x, size: n });
        }
        inside[x] = true;
    }
    let labels: Vec<usize> = inside.iter().map(|&b| usize::from(b)).collect();
    largest_congruence_below(a, &Partition::from_labels(&labels))
}

/// The R-class of a designated element, as a plain element set.
pub fn unit_class(a: &FiniteAlgebra, r: &Partition, z: usize) -> Result<Vec<usize>> {
    if r.size() != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            found: r.size(),
        });
    }
    if z >= a.size() {
        return Err(Error::OutOfRange {
            value: z,
            size: a.size(),
        });
    }
    Ok(r.class_containing(z))
}

/// The R-class of `z` as a subuniverse. Whenever `z` is idempotent for
/// every operation (unit of a monoid, zero of a semiring) and `r` is a
/// congruence, the class is closed; otherwise this reports the escape.
pub fn unit_class_subuniverse(
    a: &FiniteAlgebra,
    r: &Partition,
    z: usize,
) -> Result<SubUniverse> {
    let class = unit_class(a, r, z)?;
    SubUniverse::new(a, &class)
}

/// True iff `w` is a union of `r`-classes.
pub fn is_saturated(w: &[usize], r: &Partition) -> Result<bool> {
    let mut inside = vec![false; r.size()];
    for &x in w {
        if x >= r.size() {
            return Err(Error::OutOfRange {
                value: x,
                size: r.size(),
            });
        }
        inside[x] = true;
    }
    for block in r.blocks() {
        let first = inside[block[0]];
        if block[1..].iter().any(|&x| inside[x] != first) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The relation restricted to a subuniverse, re-indexed by position in
/// the subuniverse's element list.
pub fn restrict_congruence(r: &Partition, u: &SubUniverse) -> Result<Partition> {
    restrict_partition(r, u)
}

/// True iff `u` is exactly one `r`-class: the set reading of "normal to"
/// (the restriction is indiscrete and `u` is saturated).
pub fn is_normal_to(u: &SubUniverse, r: &Partition) -> Result<bool> {
    if r.size() != u.parent_size() {
        return Err(Error::SizeMismatch {
            expected: u.parent_size(),
            found: r.size(),
        });
    }
    let class = r.class_containing(u.elements()[0]);
    Ok(class == u.elements())
}

/// A validated triple: algebra, subuniverse `U`, and a congruence `S` of
/// the subalgebra induced on `U` (indexed by position in `U`).
#[derive(Debug, Clone)]
pub struct SaturationProblem<'a> {
    algebra: &'a FiniteAlgebra,
    subuniverse: &'a SubUniverse,
    relation: &'a Partition,
}

impl<'a> SaturationProblem<'a> {
    pub fn new(
        algebra: &'a FiniteAlgebra,
        subuniverse: &'a SubUniverse,
        relation: &'a Partition,
    ) -> Result<SaturationProblem<'a>> {
        if subuniverse.parent_size() != algebra.size() {
            return Err(Error::SizeMismatch {
                expected: algebra.size(),
                found: subuniverse.parent_size(),
            });
        }
        if relation.size() != subuniverse.len() {
            return Err(Error::SizeMismatch {
                expected: subuniverse.len(),
                found: relation.size(),
            });
        }
        let induced = subalgebra(algebra, subuniverse)?;
        if !is_congruence(&induced, relation)? {
            return Err(Error::NotACongruence {
                context: format!("{relation} on the subalgebra induced on {:?}", subuniverse.elements()),
            });
        }
        Ok(SaturationProblem {
            algebra,
            subuniverse,
            relation,
        })
    }

    /// The saturation operator: the largest congruence `T` with `U`
    /// saturated w.r.t. `T` and `T` restricted to `U` below `S`.
    ///
    /// The start partition has the S-classes of `U` (as carrier subsets)
    /// as classes, plus the complement of `U` as a single class.
    pub fn solve(&self) -> Partition {
        let n = self.algebra.size();
        let outside = self.relation.num_classes(); // label for carrier \ U
        let mut labels = vec![outside; n];
        for (pos, &x) in self.subuniverse.elements().iter().enumerate() {
            labels[x] = self.relation.label(pos);
        }
        let start = Partition::from_labels(&labels);
        largest_congruence_below(self.algebra, &start).expect("sizes validated")
    }
}

/// Convenience wrapper building and solving a [`SaturationProblem`].
pub fn forall_u(a: &FiniteAlgebra, u: &SubUniverse, s: &Partition) -> Result<Partition> {
    Ok(SaturationProblem::new(a, u, s)?.solve())
}

/// The supremum of the congruences to which `u` is normal, or `None`
/// when `u` is not normal to any congruence.
pub fn normal_sup(a: &FiniteAlgebra, u: &SubUniverse) -> Result<Option<Partition>> {
    let top = Partition::indiscrete(u.len());
    let sup = forall_u(a, u, &top)?;
    if is_normal_to(u, &sup)? {
        Ok(Some(sup))
    } else {
        Ok(None)
    }
}

/// The largest congruence `T` with `u` saturated w.r.t. `T`, restriction
/// below `r_on_u`, and `T ⊆ s_on_x`: the meet of `s_on_x` with the
/// saturation operator applied to `r_on_u`.
pub fn largest_below_pair(
    a: &FiniteAlgebra,
    u: &SubUniverse,
    s_on_x: &Partition,
    r_on_u: &Partition,
) -> Result<Partition> {
    if !is_congruence(a, s_on_x)? {
        return Err(Error::NotACongruence {
            context: format!("{s_on_x} on {}", a.name()),
        });
    }
    let f = forall_u(a, u, r_on_u)?;
    s_on_x.meet(&f)
}
