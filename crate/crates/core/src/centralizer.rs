//! Centralizers of congruences, computed by applying the saturation
//! operator to the diagonal of the pair algebra of a congruence.
//!
//! For a congruence R of A, the pair algebra carries the relation R as an
//! algebra (componentwise operations on related pairs). The diagonal is a
//! subuniverse; saturating it against the indiscrete relation yields the
//! largest congruence of R whose restriction to the diagonal pulls back
//! to the centralizer of R on A. A classical group-theoretic oracle
//! (`group_centralizer_oracle`) computes the same object independently
//! through the centralizer subgroup of the associated normal subgroup.

use crate::algebra::{FiniteAlgebra, OpTable, SubUniverse};
use crate::congruence::is_congruence;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::saturation::forall_u;
use crate::varieties::{check_variety, VarietyTag};

/// The relation R as an algebra: carrier = lexicographically sorted pairs
/// (x,y) with x R y, operations componentwise.
#[derive(Debug, Clone)]
pub struct PairAlgebra {
    algebra: FiniteAlgebra,
    pairs: Vec<(usize, usize)>,
    base_size: usize,
}

impl PairAlgebra {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.pairs.binary_search(&(x, y)).ok()
    }

    /// The diagonal {(x,x)} as a subuniverse of the pair algebra.
    pub fn diagonal(&self) -> SubUniverse {
        let elems: Vec<usize> = (0..self.base_size)
            .map(|x| self.index_of(x, x).expect("R is reflexive"))
            .collect();
        SubUniverse::new(&self.algebra, &elems).expect("the diagonal is a subuniverse")
    }
}

/// Builds the pair algebra of a congruence.
pub fn pair_algebra(a: &FiniteAlgebra, r: &Partition) -> Result<PairAlgebra> {
    if !is_congruence(a, r)? {
        return Err(Error::NotACongruence {
            context: format!("{r} on {}", a.name()),
        });
    }
    let n = a.size();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if r.same_class(x, y) {
                pairs.push((x, y));
            }
        }
    }
    let index = |x: usize, y: usize| pairs.binary_search(&(x, y)).expect("pair present");
    let mut ops = Vec::new();
    for (op_idx, op) in a.ops().iter().enumerate() {
        let k = pairs.len();
        let mut table = Vec::with_capacity(k.pow(op.arity as u32));
        for args in crate::algebra::tuples_of_indices(k, op.arity) {
            let xs: Vec<usize> = args.iter().map(|&i| pairs[i].0).collect();
            let ys: Vec<usize> = args.iter().map(|&i| pairs[i].1).collect();
            let rx = a.apply(op_idx, &xs);
            let ry = a.apply(op_idx, &ys);
            table.push(index(rx, ry));
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
        .map(|(name, v)| (name.clone(), index(*v, *v)))
        .collect();
    let algebra = FiniteAlgebra::new(format!("{}_pairs", a.name()), pairs.len(), ops, consts)?;
    Ok(PairAlgebra {
        algebra,
        pairs,
        base_size: n,
    })
}

fn pull_back_along_diagonal(p: &PairAlgebra, f: &Partition) -> Partition {
    let labels: Vec<usize> = (0..p.base_size())
        .map(|x| f.label(p.index_of(x, x).expect("diagonal pair")))
        .collect();
    Partition::from_labels(&labels)
}

/// The centralizer of R: the largest congruence S of A with `[R,S] = 0`.
/// Computed as the diagonal pull-back of the saturation of the diagonal
/// against the indiscrete relation on the pair algebra.
///
/// The `[R,S] = 0` reading is established for protomodular varieties
/// (groups, rings, skew braces); on other algebras the result is still a
/// well-defined partition, labelled "formal" by the CLI.
pub fn centralizer(a: &FiniteAlgebra, r: &Partition) -> Result<Partition> {
    let p = pair_algebra(a, r)?;
    let d = p.diagonal();
    let f = forall_u(p.algebra(), &d, &Partition::indiscrete(d.len()))?;
    Ok(pull_back_along_diagonal(&p, &f))
}

/// The largest congruence T with `[R,T] = 0` and T ⊆ S: same construction
/// with the diagonal congruence induced by S instead of the indiscrete
/// one.
pub fn largest_centralizing_below(
    a: &FiniteAlgebra,
    r: &Partition,
    s: &Partition,
) -> Result<Partition> {
    if !is_congruence(a, s)? {
        return Err(Error::NotACongruence {
            context: format!("{s} on {}", a.name()),
        });
    }
    let p = pair_algebra(a, r)?;
    let d = p.diagonal();
    // diagonal position x corresponds to base element x
    let f = forall_u(p.algebra(), &d, s)?;
    Ok(pull_back_along_diagonal(&p, &f))
}

/// Whether S is below the centralizer of R, i.e. `[R,S] = 0` in the
/// protomodular reading.
pub fn is_connected(a: &FiniteAlgebra, r: &Partition, s: &Partition) -> Result<bool> {
    if !is_congruence(a, s)? {
        return Err(Error::NotACongruence {
            context: format!("{s} on {}", a.name()),
        });
    }
    let c = centralizer(a, r)?;
    Ok(s.is_refinement_of(&c))
}

/// Independent group-theoretic oracle: the centralizer congruence of R is
/// the coset partition of C_G(N) where N is the class of the unit.
pub fn group_centralizer_oracle(g: &FiniteAlgebra, r: &Partition) -> Result<Partition> {
    if let Some(viol) = check_variety(g, VarietyTag::Group)? {
        return Err(Error::NotInVariety {
            variety: "group".into(),
            context: viol.to_string(),
        });
    }
    if !is_congruence(g, r)? {
        return Err(Error::NotACongruence {
            context: format!("{r} on {}", g.name()),
        });
    }
    let mul = g.op_index("mul").expect("group shape");
    let e = g.const_value("e").expect("group shape");
    let n = g.size();
    let unit_class: Vec<usize> = r.class_containing(e);
    let commutes_with_all = |x: usize| {
        unit_class
            .iter()
            .all(|&k| g.apply(mul, &[x, k]) == g.apply(mul, &[k, x]))
    };
    let centralizer_subgroup: Vec<usize> = (0..n).filter(|&x| commutes_with_all(x)).collect();
    let in_centralizer = |x: usize| centralizer_subgroup.binary_search(&x).is_ok();
    // cosets: label each x by the least element of C·x
    let labels: Vec<usize> = (0..n)
        .map(|x| {
            centralizer_subgroup
                .iter()
                .map(|&c| g.apply(mul, &[c, x]))
                .min()
                .expect("centralizer contains e")
        })
        .collect();
    debug_assert!(in_centralizer(e));
    Ok(Partition::from_labels(&labels))
}
