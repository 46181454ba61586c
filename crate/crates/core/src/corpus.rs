//! Shipped test structures: the group/monoid/semiring corpus, the
//! Shifting Lemma counterexample, and a brute-force enumerator for small
//! monoids up to isomorphism.
//!
//! Builders construct tables algorithmically; the `.alg`/`.cat`/`.dfa`
//! files under `corpus/` are their serializations and a test keeps the
//! two in sync.

use crate::algebra::{FiniteAlgebra, OpTable};
use crate::catfib::FiniteCategory;
use crate::lang::Dfa;

fn binary_table(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut t = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            t.push(f(i, j));
        }
    }
    t
}

fn unary_table(n: usize, f: impl Fn(usize) -> usize) -> Vec<usize> {
    (0..n).map(f).collect()
}

fn group(name: &str, n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteAlgebra {
    let mul_table = binary_table(n, &mul);
    let mut inv = vec![0usize; n];
    for (x, slot) in inv.iter_mut().enumerate() {
        *slot = (0..n)
            .find(|&y| mul(x, y) == 0)
            .expect("group element has an inverse");
    }
    FiniteAlgebra::new(
        name,
        n,
        vec![
            OpTable {
                name: "mul".into(),
                arity: 2,
                table: mul_table,
            },
            OpTable {
                name: "inv".into(),
                arity: 1,
                table: inv,
            },
        ],
        vec![("e".into(), 0)],
    )
    .expect("valid group tables")
}

pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    group(&format!("z{n}"), n, |a, b| (a + b) % n)
}

/// Klein four-group, encoded as pairs of bits with xor.
pub fn klein_group() -> FiniteAlgebra {
    group("v4", 4, |a, b| a ^ b)
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; k];
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

fn group_from_permutations(name: &str, perms: Vec<Vec<usize>>) -> FiniteAlgebra {
    let index: std::collections::HashMap<Vec<usize>, usize> = perms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let n = perms.len();
    group(name, n, |a, b| {
        // composition acts on points: (p·q)(x) = p(q(x))
        let composed: Vec<usize> = (0..perms[a].len()).map(|x| perms[a][perms[b][x]]).collect();
        index[&composed]
    })
}

/// Symmetric group on 3 points; elements are the permutations of
/// `{0,1,2}` in lexicographic order, so the identity is element 0.
pub fn symmetric_group_3() -> FiniteAlgebra {
    group_from_permutations("s3", permutations(3))
}

/// Dihedral group of order 8 as the symmetries of a square: the four
/// rotations followed by the four reflections `r^i·s`.
pub fn dihedral_group_4() -> FiniteAlgebra {
    let r = [1usize, 2, 3, 0];
    let s = [0usize, 3, 2, 1];
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = vec![0, 1, 2, 3];
    for _ in 0..4 {
        perms.push(cur.clone());
        cur = (0..4).map(|x| r[cur[x]]).collect();
    }
    for i in 0..4 {
        let rot = perms[i].clone();
        perms.push((0..4).map(|x| rot[s[x]]).collect());
    }
    group_from_permutations("d4", perms)
}

/// Quaternion group; elements 0..7 stand for 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion_group() -> FiniteAlgebra {
    // axis 0 is the scalar 1; axes 1,2,3 are i,j,k
    let decode = |x: usize| -> (bool, usize) { (x % 2 == 1, x / 2) };
    let encode = |neg: bool, axis: usize| -> usize { axis * 2 + usize::from(neg) };
    let mul = |a: usize, b: usize| -> usize {
        let (na, xa) = decode(a);
        let (nb, xb) = decode(b);
        let mut neg = na ^ nb;
        let axis;
        if xa == 0 {
            axis = xb;
        } else if xb == 0 {
            axis = xa;
        } else if xa == xb {
            axis = 0;
            neg = !neg;
        } else {
            // i*j=k, j*k=i, k*i=j; reversed products flip the sign
            let (lo, hi) = (xa.min(xb), xa.max(xb));
            axis = 6 - lo - hi; // {1,2}->3, {1,3}->2, {2,3}->1
            let forward = matches!((xa, xb), (1, 2) | (2, 3) | (3, 1));
            if !forward {
                neg = !neg;
            }
        }
        encode(neg, axis)
    };
    group("q8", 8, mul)
}

/// The standard group corpus.
pub fn groups() -> Vec<FiniteAlgebra> {
    vec![
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        klein_group(),
        cyclic_group(5),
        cyclic_group(6),
        symmetric_group_3(),
        cyclic_group(8),
        dihedral_group_4(),
        quaternion_group(),
    ]
}

fn monoid(
    name: &str,
    n: usize,
    unit: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> FiniteAlgebra {
    FiniteAlgebra::new(
        name,
        n,
        vec![OpTable {
            name: "mul".into(),
            arity: 2,
            table: binary_table(n, mul),
        }],
        vec![("e".into(), unit)],
    )
    .expect("valid monoid table")
}

/// Two-element join monoid ({0,1}, max, 0).
pub fn or_monoid() -> FiniteAlgebra {
    monoid("or2", 2, 0, |a, b| a.max(b))
}

/// The additive cyclic monoid on 4 elements (the group z4 without `inv`).
pub fn z4_monoid() -> FiniteAlgebra {
    monoid("z4mon", 4, 0, |a, b| (a + b) % 4)
}

/// Unit plus a left-zero pair: aa=ab=a, bb=ba=b.
pub fn left_zero_monoid() -> FiniteAlgebra {
    monoid("lz3", 3, 0, |a, b| if a == 0 { b } else { a })
}

/// Three-element chain under max, unit 0.
pub fn max_chain_monoid() -> FiniteAlgebra {
    monoid("max3", 3, 0, |a, b| a.max(b))
}

/// Three-element chain under min, unit 2.
pub fn min_chain_monoid() -> FiniteAlgebra {
    monoid("min3", 3, 2, |a, b| a.min(b))
}

/// The multiplicative monoid of s3 (group reduct without inverses).
pub fn s3_monoid() -> FiniteAlgebra {
    let g = symmetric_group_3();
    let mul = g.ops()[g.op_index("mul").unwrap()].clone();
    FiniteAlgebra::new("s3mon", g.size(), vec![mul], vec![("e".into(), 0)])
        .expect("valid monoid table")
}

/// The listed monoid corpus (exhaustive small monoids are produced
/// separately by [`enumerate_monoids`]).
pub fn monoids() -> Vec<FiniteAlgebra> {
    vec![
        or_monoid(),
        z4_monoid(),
        left_zero_monoid(),
        max_chain_monoid(),
        min_chain_monoid(),
    ]
}

fn semiring(
    name: &str,
    n: usize,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
) -> FiniteAlgebra {
    FiniteAlgebra::new(
        name,
        n,
        vec![
            OpTable {
                name: "add".into(),
                arity: 2,
                table: binary_table(n, add),
            },
            OpTable {
                name: "mul".into(),
                arity: 2,
                table: binary_table(n, mul),
            },
        ],
        vec![("zero".into(), 0)],
    )
    .expect("valid semiring tables")
}

fn ring(
    name: &str,
    n: usize,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
    neg: impl Fn(usize) -> usize,
) -> FiniteAlgebra {
    FiniteAlgebra::new(
        name,
        n,
        vec![
            OpTable {
                name: "add".into(),
                arity: 2,
                table: binary_table(n, add),
            },
            OpTable {
                name: "mul".into(),
                arity: 2,
                table: binary_table(n, mul),
            },
            OpTable {
                name: "neg".into(),
                arity: 1,
                table: unary_table(n, neg),
            },
        ],
        vec![("zero".into(), 0)],
    )
    .expect("valid ring tables")
}

/// Boolean semiring ({0,1}, or, and, 0).
pub fn boolean_semiring() -> FiniteAlgebra {
    semiring("boolsr", 2, |a, b| a | b, |a, b| a & b)
}

pub fn z2_ring() -> FiniteAlgebra {
    ring("z2ring", 2, |a, b| (a + b) % 2, |a, b| (a * b) % 2, |a| a)
}

pub fn z4_ring() -> FiniteAlgebra {
    ring(
        "z4ring",
        4,
        |a, b| (a + b) % 4,
        |a, b| (a * b) % 4,
        |a| (4 - a) % 4,
    )
}

/// Three-element chain as a semiring: add = max, mul = min, zero = 0.
pub fn chain3_semiring() -> FiniteAlgebra {
    semiring("chain3", 3, |a, b| a.max(b), |a, b| a.min(b))
}

pub fn semirings() -> Vec<FiniteAlgebra> {
    vec![boolean_semiring(), z2_ring(), z4_ring(), chain3_semiring()]
}

/// Meet-semilattice on the square 2×2 (elements are bit pairs, meet is
/// bitwise and). The recorded Shifting Lemma counterexample.
pub fn square_semilattice() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "sl22",
        4,
        vec![OpTable {
            name: "meet".into(),
            arity: 2,
            table: binary_table(4, |a, b| a & b),
        }],
        vec![],
    )
    .expect("valid semilattice")
}

/// Flat meet-semilattice: bottom 0 and two incomparable atoms.
pub fn flat_semilattice() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "flat3",
        3,
        vec![OpTable {
            name: "meet".into(),
            arity: 2,
            table: binary_table(3, |a, b| if a == b { a } else { 0 }),
        }],
        vec![],
    )
    .expect("valid semilattice")
}

/// Enumerates all monoids on `{0..n-1}` with unit 0, up to isomorphism.
///
/// Backtracks over the free cells of the multiplication table, pruning on
/// any fully-determined failed associativity triple; duplicates are
/// removed by minimizing the table over the (n-1)! unit-fixing
/// permutations. Counts for n = 1..4 are 1, 2, 7, 35.
pub fn enumerate_monoids(n: usize) -> Vec<FiniteAlgebra> {
    assert!(n >= 1, "carrier must be nonempty");
    let mut table = vec![usize::MAX; n * n];
    for x in 0..n {
        table[x] = x; // e * x = x
        table[x * n] = x; // x * e = x
    }
    let free: Vec<usize> = (1..n)
        .flat_map(|i| (1..n).map(move |j| i * n + j))
        .collect();
    let mut canon: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    let mut out = Vec::new();

    fn assoc_ok(table: &[usize], n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                if ab == usize::MAX {
                    continue;
                }
                for c in 0..n {
                    let bc = table[b * n + c];
                    if bc == usize::MAX {
                        continue;
                    }
                    let left = table[ab * n + c];
                    let right = table[a * n + bc];
                    if left != usize::MAX && right != usize::MAX && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn canonical_form(table: &[usize], n: usize, perms: &[Vec<usize>]) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for p in perms {
            let mut img = vec![0usize; n * n];
            for a in 0..n {
                for b in 0..n {
                    img[p[a] * n + p[b]] = p[table[a * n + b]];
                }
            }
            if best.as_ref().map(|b| img < *b).unwrap_or(true) {
                best = Some(img);
            }
        }
        best.expect("at least the identity permutation")
    }

    // permutations of 1..n-1 extended by fixing the unit 0
    let unit_fixing: Vec<Vec<usize>> = permutations(n - 1)
        .into_iter()
        .map(|p| {
            let mut q = vec![0usize];
            q.extend(p.into_iter().map(|v| v + 1));
            q
        })
        .collect();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        table: &mut Vec<usize>,
        free: &[usize],
        pos: usize,
        n: usize,
        perms: &[Vec<usize>],
        canon: &mut std::collections::BTreeSet<Vec<usize>>,
        out: &mut Vec<FiniteAlgebra>,
    ) {
        if pos == free.len() {
            let form = canonical_form(table, n, perms);
            if canon.insert(form) {
                let idx = out.len();
                out.push(
                    FiniteAlgebra::new(
                        format!("mon{n}_{idx}"),
                        n,
                        vec![OpTable {
                            name: "mul".into(),
                            arity: 2,
                            table: table.clone(),
                        }],
                        vec![("e".into(), 0)],
                    )
                    .expect("valid monoid table"),
                );
            }
            return;
        }
        let cell = free[pos];
        for v in 0..n {
            table[cell] = v;
            if assoc_ok(table, n) {
                rec(table, free, pos + 1, n, perms, canon, out);
            }
        }
        table[cell] = usize::MAX;
    }

    rec(
        &mut table,
        &free,
        0,
        n,
        &unit_fixing,
        &mut canon,
        &mut out,
    );
    out
}

/// Categories shipped for the fiber constructions.
pub fn categories() -> Vec<FiniteCategory> {
    vec![
        crate::catfib::monoid_as_category(&z4_monoid()).expect("monoid shape"),
        crate::catfib::monoid_as_category(&s3_monoid()).expect("monoid shape"),
        arrow_category(),
        parallel_pair_category(),
        discrete_category(2),
    ]
}

/// Two objects, identities and a single arrow 0 → 1.
pub fn arrow_category() -> FiniteCategory {
    FiniteCategory::new(
        "arrow",
        2,
        vec![0, 1, 0],
        vec![0, 1, 1],
        vec![0, 1],
        vec![
            // comp[g][f]: rows g, cols f
            Some(0),
            None,
            None,
            None,
            Some(1),
            Some(2),
            Some(2),
            None,
            None,
        ],
    )
    .expect("valid category")
}

/// Two objects with a parallel pair of arrows 0 ⇉ 1.
pub fn parallel_pair_category() -> FiniteCategory {
    FiniteCategory::new(
        "parallel2",
        2,
        vec![0, 1, 0, 0],
        vec![0, 1, 1, 1],
        vec![0, 1],
        vec![
            Some(0),
            None,
            None,
            None,
            None,
            Some(1),
            Some(2),
            Some(3),
            Some(2),
            None,
            None,
            None,
            Some(3),
            None,
            None,
            None,
        ],
    )
    .expect("valid category")
}

/// Identities only.
pub fn discrete_category(p: usize) -> FiniteCategory {
    let mut comp = vec![None; p * p];
    for o in 0..p {
        comp[o * p + o] = Some(o);
    }
    FiniteCategory::new(
        format!("discrete{p}"),
        p,
        (0..p).collect(),
        (0..p).collect(),
        (0..p).collect(),
        comp,
    )
    .expect("valid category")
}

/// DFA corpus. Languages: even-length unary words (minimal and redundant
/// automata), (ab)*, a*(b|ε), Σ*, the empty language, and an automaton
/// with an unreachable state.
pub fn dfas() -> Vec<Dfa> {
    vec![
        even_unary_dfa(),
        even_unary_redundant_dfa(),
        ab_star_dfa(),
        at_most_one_b_dfa(),
        sigma_star_dfa(),
        empty_language_dfa(),
        unreachable_state_dfa(),
    ]
}

pub fn even_unary_dfa() -> Dfa {
    Dfa::new("even2", 2, vec!["a".into()], vec![vec![1, 0]], 0, vec![0]).expect("valid dfa")
}

/// Four-state cycle accepting the same even-length unary language.
pub fn even_unary_redundant_dfa() -> Dfa {
    Dfa::new(
        "even4",
        4,
        vec!["a".into()],
        vec![vec![1, 2, 3, 0]],
        0,
        vec![0, 2],
    )
    .expect("valid dfa")
}

pub fn ab_star_dfa() -> Dfa {
    Dfa::new(
        "abstar",
        3,
        vec!["a".into(), "b".into()],
        vec![vec![1, 2, 2], vec![2, 0, 2]],
        0,
        vec![0],
    )
    .expect("valid dfa")
}

pub fn at_most_one_b_dfa() -> Dfa {
    Dfa::new(
        "atmostb",
        3,
        vec!["a".into(), "b".into()],
        vec![vec![0, 2, 2], vec![1, 2, 2]],
        0,
        vec![0, 1],
    )
    .expect("valid dfa")
}

pub fn sigma_star_dfa() -> Dfa {
    Dfa::new(
        "sigmastar",
        1,
        vec!["a".into(), "b".into()],
        vec![vec![0], vec![0]],
        0,
        vec![0],
    )
    .expect("valid dfa")
}

pub fn empty_language_dfa() -> Dfa {
    Dfa::new("emptylang", 1, vec!["a".into()], vec![vec![0]], 0, vec![]).expect("valid dfa")
}

/// The even-length automaton plus an unreachable third state.
pub fn unreachable_state_dfa() -> Dfa {
    Dfa::new(
        "unreach",
        3,
        vec!["a".into()],
        vec![vec![1, 0, 2]],
        0,
        vec![0],
    )
    .expect("valid dfa")
}

/// All corpus files as (relative path, contents); used to keep the
/// checked-in `corpus/` directory in sync with the builders.
pub fn corpus_files() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = Vec::new();
    let mut algebras: Vec<FiniteAlgebra> = Vec::new();
    algebras.extend(groups());
    algebras.extend(monoids());
    algebras.extend(semirings());
    algebras.push(square_semilattice());
    algebras.push(flat_semilattice());
    for g in [cyclic_group(2), cyclic_group(3), symmetric_group_3()] {
        let (same, opposite) = crate::varieties::braces_from_group(&g).expect("group corpus");
        algebras.push(same);
        algebras.push(opposite);
    }
    for a in algebras {
        files.push((format!("{}.alg", a.name()), a.to_alg_string()));
    }
    for c in categories() {
        files.push((format!("{}.cat", c.name()), c.to_cat_string()));
    }
    for d in dfas() {
        files.push((format!("{}.dfa", d.name()), d.to_dfa_string()));
    }
    files
}
