//! Concrete signatures and axiom checkers for monoids, groups, semirings,
//! rings and left skew braces, plus the variety-specific normality tests
//! and the finite-axiom fast path for semiring syntactic congruences.
//!
//! Signature shapes are fixed by name: monoids use `mul`/`e`; groups add
//! `inv`; semirings use `add`, `mul`, `zero`; rings add `neg`; skew braces
//! carry two group structures `star`/`starinv` and `circ`/`circinv`
//! sharing the unit `e`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{FiniteAlgebra, OpTable, SubUniverse};
use crate::congruence::is_congruence;
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarietyTag {
    Monoid,
    Group,
    Semiring,
    Ring,
    SkewBrace,
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VarietyTag::Monoid => "monoid",
            VarietyTag::Group => "group",
            VarietyTag::Semiring => "semiring",
            VarietyTag::Ring => "ring",
            VarietyTag::SkewBrace => "skew_brace",
        };
        write!(f, "{s}")
    }
}

impl FromStr for VarietyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<VarietyTag> {
        match s {
            "monoid" => Ok(VarietyTag::Monoid),
            "group" => Ok(VarietyTag::Group),
            "semiring" => Ok(VarietyTag::Semiring),
            "ring" => Ok(VarietyTag::Ring),
            "skew_brace" | "skew-brace" => Ok(VarietyTag::SkewBrace),
            other => Err(Error::SignatureMismatch(format!(
                "unknown variety tag `{other}`"
            ))),
        }
    }
}

/// First violated axiom found by [`check_variety`], with the violating
/// tuple of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyViolation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

impl fmt::Display for VarietyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple: Vec<String> = self.witness.iter().map(|v| v.to_string()).collect();
        write!(f, "{} at ({})", self.axiom, tuple.join(","))
    }
}

struct MonoidView {
    mul: usize,
    e: usize,
}

fn monoid_view(a: &FiniteAlgebra) -> Result<MonoidView> {
    let mul = a
        .op_index("mul")
        .filter(|&i| a.ops()[i].arity == 2)
        .ok_or_else(|| Error::SignatureMismatch("expected a binary op `mul`".into()))?;
    let e = a
        .const_value("e")
        .ok_or_else(|| Error::SignatureMismatch("expected a const `e`".into()))?;
    Ok(MonoidView { mul, e })
}

struct GroupView {
    mul: usize,
    inv: usize,
    e: usize,
}

fn group_view(a: &FiniteAlgebra) -> Result<GroupView> {
    let m = monoid_view(a)?;
    let inv = a
        .op_index("inv")
        .filter(|&i| a.ops()[i].arity == 1)
        .ok_or_else(|| Error::SignatureMismatch("expected a unary op `inv`".into()))?;
    Ok(GroupView {
        mul: m.mul,
        inv,
        e: m.e,
    })
}

struct SemiringView {
    add: usize,
    mul: usize,
    zero: usize,
}

fn semiring_view(a: &FiniteAlgebra) -> Result<SemiringView> {
    let add = a
        .op_index("add")
        .filter(|&i| a.ops()[i].arity == 2)
        .ok_or_else(|| Error::SignatureMismatch("expected a binary op `add`".into()))?;
    let mul = a
        .op_index("mul")
        .filter(|&i| a.ops()[i].arity == 2)
        .ok_or_else(|| Error::SignatureMismatch("expected a binary op `mul`".into()))?;
    let zero = a
        .const_value("zero")
        .ok_or_else(|| Error::SignatureMismatch("expected a const `zero`".into()))?;
    Ok(SemiringView { add, mul, zero })
}

struct BraceView {
    star: usize,
    starinv: usize,
    circ: usize,
    circinv: usize,
    e: usize,
}

fn brace_view(a: &FiniteAlgebra) -> Result<BraceView> {
    let get2 = |name: &str| {
        a.op_index(name)
            .filter(|&i| a.ops()[i].arity == 2)
            .ok_or_else(|| Error::SignatureMismatch(format!("expected a binary op `{name}`")))
    };
    let get1 = |name: &str| {
        a.op_index(name)
            .filter(|&i| a.ops()[i].arity == 1)
            .ok_or_else(|| Error::SignatureMismatch(format!("expected a unary op `{name}`")))
    };
    Ok(BraceView {
        star: get2("star")?,
        starinv: get1("starinv")?,
        circ: get2("circ")?,
        circinv: get1("circinv")?,
        e: a.const_value("e")
            .ok_or_else(|| Error::SignatureMismatch("expected a const `e`".into()))?,
    })
}

fn check_monoid_axioms(
    a: &FiniteAlgebra,
    mul: usize,
    e: usize,
    prefix: &'static str,
) -> Option<VarietyViolation> {
    let n = a.size();
    for x in 0..n {
        if a.apply(mul, &[e, x]) != x || a.apply(mul, &[x, e]) != x {
            return Some(VarietyViolation {
                axiom: unit_axiom_name(prefix),
                witness: vec![x],
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let xy = a.apply(mul, &[x, y]);
                let yz = a.apply(mul, &[y, z]);
                if a.apply(mul, &[xy, z]) != a.apply(mul, &[x, yz]) {
                    return Some(VarietyViolation {
                        axiom: assoc_axiom_name(prefix),
                        witness: vec![x, y, z],
                    });
                }
            }
        }
    }
    None
}

fn unit_axiom_name(prefix: &'static str) -> &'static str {
    match prefix {
        "star" => "star_unit",
        "circ" => "circ_unit",
        "add" => "add_unit",
        _ => "unit",
    }
}

fn assoc_axiom_name(prefix: &'static str) -> &'static str {
    match prefix {
        "star" => "star_assoc",
        "circ" => "circ_assoc",
        "add" => "add_assoc",
        "mul" => "mul_assoc",
        _ => "assoc",
    }
}

fn check_inverse_axiom(
    a: &FiniteAlgebra,
    mul: usize,
    inv: usize,
    e: usize,
    axiom: &'static str,
) -> Option<VarietyViolation> {
    for x in a.elements() {
        let xi = a.apply(inv, &[x]);
        if a.apply(mul, &[x, xi]) != e || a.apply(mul, &[xi, x]) != e {
            return Some(VarietyViolation {
                axiom,
                witness: vec![x],
            });
        }
    }
    None
}

/// Exhaustively checks the axioms of the tagged variety, reporting the
/// first violation (axiom name plus tuple). `Ok(None)` means the algebra
/// lies in the variety; a missing signature shape is an error.
pub fn check_variety(a: &FiniteAlgebra, tag: VarietyTag) -> Result<Option<VarietyViolation>> {
    match tag {
        VarietyTag::Monoid => {
            let v = monoid_view(a)?;
            Ok(check_monoid_axioms(a, v.mul, v.e, "mul"))
        }
        VarietyTag::Group => {
            let v = group_view(a)?;
            if let Some(viol) = check_monoid_axioms(a, v.mul, v.e, "mul") {
                return Ok(Some(viol));
            }
            Ok(check_inverse_axiom(a, v.mul, v.inv, v.e, "inverse"))
        }
        VarietyTag::Semiring => {
            let v = semiring_view(a)?;
            Ok(check_semiring_axioms(a, &v))
        }
        VarietyTag::Ring => {
            let v = semiring_view(a)?;
            if let Some(viol) = check_semiring_axioms(a, &v) {
                return Ok(Some(viol));
            }
            let neg = a
                .op_index("neg")
                .filter(|&i| a.ops()[i].arity == 1)
                .ok_or_else(|| Error::SignatureMismatch("expected a unary op `neg`".into()))?;
            for x in a.elements() {
                let nx = a.apply(neg, &[x]);
                if a.apply(v.add, &[x, nx]) != v.zero {
                    return Ok(Some(VarietyViolation {
                        axiom: "add_inverse",
                        witness: vec![x],
                    }));
                }
            }
            Ok(None)
        }
        VarietyTag::SkewBrace => {
            let v = brace_view(a)?;
            if let Some(viol) = check_monoid_axioms(a, v.star, v.e, "star") {
                return Ok(Some(viol));
            }
            if let Some(viol) = check_inverse_axiom(a, v.star, v.starinv, v.e, "star_inverse") {
                return Ok(Some(viol));
            }
            if let Some(viol) = check_monoid_axioms(a, v.circ, v.e, "circ") {
                return Ok(Some(viol));
            }
            if let Some(viol) = check_inverse_axiom(a, v.circ, v.circinv, v.e, "circ_inverse") {
                return Ok(Some(viol));
            }
            // a ∘ (b ∗ c) = (a ∘ b) ∗ a⁻* ∗ (a ∘ c)
            let n = a.size();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let lhs = a.apply(v.circ, &[x, a.apply(v.star, &[y, z])]);
                        let xb = a.apply(v.circ, &[x, y]);
                        let xinv = a.apply(v.starinv, &[x]);
                        let xc = a.apply(v.circ, &[x, z]);
                        let rhs =
                            a.apply(v.star, &[a.apply(v.star, &[xb, xinv]), xc]);
                        if lhs != rhs {
                            return Ok(Some(VarietyViolation {
                                axiom: "brace_compat",
                                witness: vec![x, y, z],
                            }));
                        }
                    }
                }
            }
            Ok(None)
        }
    }
}

fn check_semiring_axioms(a: &FiniteAlgebra, v: &SemiringView) -> Option<VarietyViolation> {
    if let Some(viol) = check_monoid_axioms_for_zero(a, v.add, v.zero) {
        return Some(viol);
    }
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            if a.apply(v.add, &[x, y]) != a.apply(v.add, &[y, x]) {
                return Some(VarietyViolation {
                    axiom: "add_comm",
                    witness: vec![x, y],
                });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let xy = a.apply(v.mul, &[x, y]);
                let yz = a.apply(v.mul, &[y, z]);
                if a.apply(v.mul, &[xy, z]) != a.apply(v.mul, &[x, yz]) {
                    return Some(VarietyViolation {
                        axiom: "mul_assoc",
                        witness: vec![x, y, z],
                    });
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = a.apply(v.mul, &[x, a.apply(v.add, &[y, z])]);
                let rhs = a.apply(v.add, &[a.apply(v.mul, &[x, y]), a.apply(v.mul, &[x, z])]);
                if lhs != rhs {
                    return Some(VarietyViolation {
                        axiom: "left_distr",
                        witness: vec![x, y, z],
                    });
                }
                let lhs = a.apply(v.mul, &[a.apply(v.add, &[x, y]), z]);
                let rhs = a.apply(v.add, &[a.apply(v.mul, &[x, z]), a.apply(v.mul, &[y, z])]);
                if lhs != rhs {
                    return Some(VarietyViolation {
                        axiom: "right_distr",
                        witness: vec![x, y, z],
                    });
                }
            }
        }
    }
    for x in 0..n {
        if a.apply(v.mul, &[x, v.zero]) != v.zero || a.apply(v.mul, &[v.zero, x]) != v.zero {
            return Some(VarietyViolation {
                axiom: "absorption",
                witness: vec![x],
            });
        }
    }
    None
}

fn check_monoid_axioms_for_zero(
    a: &FiniteAlgebra,
    add: usize,
    zero: usize,
) -> Option<VarietyViolation> {
    check_monoid_axioms(a, add, zero, "add")
}

/// The first protomodular tag (group, ring, skew brace) the algebra
/// fully satisfies, if any. Used to label centralizer output.
pub fn protomodular_tag(a: &FiniteAlgebra) -> Option<VarietyTag> {
    for tag in [VarietyTag::Group, VarietyTag::Ring, VarietyTag::SkewBrace] {
        if matches!(check_variety(a, tag), Ok(None)) {
            return Some(tag);
        }
    }
    None
}

/// Normal submonoid test: `∀k∈K ∀(x,y): xky ∈ K ⟺ xy ∈ K`.
pub fn is_normal_submonoid(m: &FiniteAlgebra, k: &SubUniverse) -> Result<bool> {
    let v = monoid_view(m)?;
    if k.parent_size() != m.size() {
        return Err(Error::SizeMismatch {
            expected: m.size(),
            found: k.parent_size(),
        });
    }
    if !k.contains(v.e) {
        return Err(Error::NotClosed {
            context: "submonoid must contain the unit".into(),
        });
    }
    let n = m.size();
    for &kk in k.elements() {
        for x in 0..n {
            let xk = m.apply(v.mul, &[x, kk]);
            for y in 0..n {
                let xky = m.apply(v.mul, &[xk, y]);
                let xy = m.apply(v.mul, &[x, y]);
                if k.contains(xky) != k.contains(xy) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Normal subsemiring test: for every `k ∈ W`,
/// 1) `∀x: x+k ∈ W ⟺ x ∈ W`, and 2) `∀x: kx ∈ W and xk ∈ W`.
pub fn is_normal_subsemiring(a: &FiniteAlgebra, w: &SubUniverse) -> Result<bool> {
    let v = semiring_view(a)?;
    if w.parent_size() != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            found: w.parent_size(),
        });
    }
    if !w.contains(v.zero) {
        return Err(Error::NotClosed {
            context: "subsemiring must contain zero".into(),
        });
    }
    for &k in w.elements() {
        for x in a.elements() {
            if w.contains(a.apply(v.add, &[x, k])) != w.contains(x) {
                return Ok(false);
            }
            if !w.contains(a.apply(v.mul, &[k, x])) || !w.contains(a.apply(v.mul, &[x, k])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The semiring syntactic congruence of a nonempty subset, by the
/// four-condition finite axiomatization: relate `m, n` iff for all
/// parameters
/// 1) `x+m ∈ W ⟺ x+n ∈ W`,
/// 2) `x+my ∈ W ⟺ x+ny ∈ W`,
/// 3) `x+ym ∈ W ⟺ x+yn ∈ W`,
/// 4) `x+ymz ∈ W ⟺ x+ynz ∈ W`.
///
/// Agrees with the generic engine on semirings; this is the fast path.
pub fn semiring_syntactic(a: &FiniteAlgebra, w: &[usize]) -> Result<Partition> {
    let v = semiring_view(a)?;
    let n = a.size();
    if w.is_empty() {
        return Err(Error::EmptySubset {
            context: "semiring syntactic congruence of the empty subset".into(),
        });
    }
    let mut inside = vec![false; n];
    for &x in w {
        if x >= n {
            return Err(Error::OutOfRange { value: x, size: n });
        }
        inside[x] = true;
    }
    let add = |x: usize, y: usize| a.apply(v.add, &[x, y]);
    let mul = |x: usize, y: usize| a.apply(v.mul, &[x, y]);
    // group elements by the boolean profile of all four conditions
    let mut profiles: Vec<Vec<bool>> = Vec::with_capacity(n);
    for m in 0..n {
        let mut p = Vec::new();
        for x in 0..n {
            p.push(inside[add(x, m)]);
        }
        for x in 0..n {
            for y in 0..n {
                p.push(inside[add(x, mul(m, y))]);
                p.push(inside[add(x, mul(y, m))]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    p.push(inside[add(x, mul(mul(y, m), z))]);
                }
            }
        }
        profiles.push(p);
    }
    let mut seen: std::collections::HashMap<&[bool], usize> = std::collections::HashMap::new();
    let mut labels = Vec::with_capacity(n);
    for p in &profiles {
        let next = seen.len();
        labels.push(*seen.entry(p.as_slice()).or_insert(next));
    }
    Ok(Partition::from_labels(&labels))
}

/// For a group algebra: is the monoid congruence `s` closed under
/// inverses? The point of the corpus suite is that this always holds.
pub fn is_group_internal(m: &FiniteAlgebra, s: &Partition) -> Result<bool> {
    let v = group_view(m)?;
    if s.size() != m.size() {
        return Err(Error::SizeMismatch {
            expected: m.size(),
            found: s.size(),
        });
    }
    // precondition: s is at least a monoid congruence (compatible with mul)
    let reduct = monoid_reduct(m)?;
    if !is_congruence(&reduct, s)? {
        return Err(Error::NotACongruence {
            context: format!("{s} is not compatible with mul on {}", m.name()),
        });
    }
    for x in m.elements() {
        for y in m.elements() {
            if s.same_class(x, y) {
                let xi = m.apply(v.inv, &[x]);
                let yi = m.apply(v.inv, &[y]);
                if !s.same_class(xi, yi) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Strips a group algebra to its monoid reduct (mul and e only).
pub fn monoid_reduct(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let v = monoid_view(a)?;
    let mul = a.ops()[v.mul].clone();
    FiniteAlgebra::new(
        format!("{}_monred", a.name()),
        a.size(),
        vec![mul],
        vec![("e".into(), v.e)],
    )
}

/// The two canonical skew braces on a group: `(G,∗,∗)` and `(G,∗,∗ᵒᵖ)`.
pub fn braces_from_group(g: &FiniteAlgebra) -> Result<(FiniteAlgebra, FiniteAlgebra)> {
    if let Some(viol) = check_variety(g, VarietyTag::Group)? {
        return Err(Error::NotInVariety {
            variety: "group".into(),
            context: viol.to_string(),
        });
    }
    let v = group_view(g)?;
    let n = g.size();
    let star = g.ops()[v.mul].table.clone();
    let starinv = g.ops()[v.inv].table.clone();
    let mut op_table = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            op_table[x * n + y] = g.apply(v.mul, &[y, x]);
        }
    }
    let make = |name: String, circ: Vec<usize>, circinv: Vec<usize>| {
        FiniteAlgebra::new(
            name,
            n,
            vec![
                OpTable {
                    name: "star".into(),
                    arity: 2,
                    table: star.clone(),
                },
                OpTable {
                    name: "starinv".into(),
                    arity: 1,
                    table: starinv.clone(),
                },
                OpTable {
                    name: "circ".into(),
                    arity: 2,
                    table: circ,
                },
                OpTable {
                    name: "circinv".into(),
                    arity: 1,
                    table: circinv,
                },
            ],
            vec![("e".into(), v.e)],
        )
    };
    let same = make(format!("{}brace", g.name()), star.clone(), starinv.clone())?;
    // the opposite law has the same inverses
    let opposite = make(format!("{}braceop", g.name()), op_table, starinv.clone())?;
    Ok((same, opposite))
}
