//! Partitions of `{0..n-1}` in canonical form.
//!
//! A [`Partition`] stands for an equivalence relation on a finite carrier.
//! Class ids are always assigned in order of first appearance while
//! scanning elements `0..n`, so two partitions over the same carrier are
//! equal as relations iff they are structurally equal. The block form
//! printed by [`Display`](std::fmt::Display) lists blocks sorted by their
//! minimum element with elements ascending, e.g. `[[0,2],[1,3]]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
    num_classes: usize,
}

impl Partition {
    /// Builds a partition from an arbitrary label vector, canonicalizing
    /// the class ids by first appearance.
    pub fn from_labels(raw: &[usize]) -> Partition {
        let mut labels = Vec::with_capacity(raw.len());
        let mut next = 0usize;
        // raw labels may be arbitrary usizes; map them densely
        let mut seen: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for &r in raw {
            let id = *seen.entry(r).or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            labels.push(id);
        }
        Partition {
            labels,
            num_classes: next,
        }
    }

    /// The discrete partition Δ: every element alone.
    pub fn discrete(n: usize) -> Partition {
        Partition {
            labels: (0..n).collect(),
            num_classes: n,
        }
    }

    /// The indiscrete partition ∇: a single class.
    pub fn indiscrete(n: usize) -> Partition {
        Partition {
            labels: vec![0; n],
            num_classes: if n == 0 { 0 } else { 1 },
        }
    }

    /// Builds a partition from explicit blocks, which must cover `0..n`
    /// exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Partition> {
        let mut labels = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::BadBlocks("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::OutOfRange { value: x, size: n });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::BadBlocks(format!("element {x} listed twice")));
                }
                labels[x] = id;
            }
        }
        if let Some(missing) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::BadBlocks(format!("element {missing} not covered")));
        }
        Ok(Partition::from_labels(&labels))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn label(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes == self.labels.len()
    }

    pub fn is_indiscrete(&self) -> bool {
        self.num_classes <= 1
    }

    /// Blocks sorted by minimum element, elements ascending. With
    /// first-appearance labels this is exactly class-id order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_classes];
        for (x, &c) in self.labels.iter().enumerate() {
            blocks[c].push(x);
        }
        blocks
    }

    pub fn class_containing(&self, x: usize) -> Vec<usize> {
        let c = self.labels[x];
        (0..self.size()).filter(|&y| self.labels[y] == c).collect()
    }

    /// Relation inclusion: `self ⊆ other`, i.e. every class of `self`
    /// lies inside a class of `other`.
    pub fn is_refinement_of(&self, other: &Partition) -> bool {
        assert_eq!(self.size(), other.size(), "partition carriers differ");
        let mut image = vec![usize::MAX; self.num_classes];
        for x in 0..self.size() {
            let c = self.labels[x];
            if image[c] == usize::MAX {
                image[c] = other.labels[x];
            } else if image[c] != other.labels[x] {
                return false;
            }
        }
        true
    }

    /// Common refinement (intersection of the relations).
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        let mut seen: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(self.size());
        for x in 0..self.size() {
            let key = (self.labels[x], other.labels[x]);
            let next = seen.len();
            labels.push(*seen.entry(key).or_insert(next));
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Join as equivalence relations: transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        let mut uf = UnionFind::new(self.size());
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.num_classes];
            for x in 0..p.size() {
                let c = p.labels[x];
                if first[c] == usize::MAX {
                    first[c] = x;
                } else {
                    uf.union(first[c], x);
                }
            }
        }
        Ok(uf.into_partition())
    }

    /// The relation restricted to the listed elements, re-indexed by
    /// position in the list.
    pub fn restrict_to(&self, elements: &[usize]) -> Result<Partition> {
        let mut labels = Vec::with_capacity(elements.len());
        for &x in elements {
            if x >= self.size() {
                return Err(Error::OutOfRange {
                    value: x,
                    size: self.size(),
                });
            }
            labels.push(self.labels[x]);
        }
        Ok(Partition::from_labels(&labels))
    }

    /// All partitions of an `n`-set, enumerated as restricted-growth
    /// strings in lexicographic order. Bell(n) results; meant for small n.
    pub fn enumerate_all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        if n == 0 {
            out.push(Partition::discrete(0));
            return out;
        }
        let mut labels = vec![0usize; n];
        fn rec(labels: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Partition>) {
            if pos == labels.len() {
                out.push(Partition::from_labels(labels));
                return;
            }
            for c in 0..=max_used + 1 {
                labels[pos] = c;
                rec(labels, pos + 1, max_used.max(c), out);
            }
        }
        // element 0 always gets label 0
        rec(&mut labels, 1, 0, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Parses either the block form `[[0,2],[1,3]]` or the label form
/// `labels 0 1 0 1`. The carrier size is inferred from the input.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("labels") {
            let mut labels = Vec::new();
            for tok in rest.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::BadBlocks(format!("bad label `{tok}`")))?;
                labels.push(v);
            }
            if labels.is_empty() {
                return Err(Error::BadBlocks("no labels given".into()));
            }
            return Ok(Partition::from_labels(&labels));
        }
        parse_blocks(s)
    }
}

fn parse_blocks(s: &str) -> Result<Partition> {
    let bad = |msg: &str| Error::BadBlocks(msg.to_string());
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| bad("expected outer [ ... ]"))?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        if !rest.starts_with('[') {
            return Err(bad("expected `[` starting a block"));
        }
        let end = rest.find(']').ok_or_else(|| bad("unterminated block"))?;
        let body = &rest[1..end];
        let mut block = Vec::new();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::BadBlocks(format!("bad element `{tok}`")))?;
            block.push(v);
        }
        if block.is_empty() {
            return Err(bad("empty block"));
        }
        blocks.push(block);
        rest = rest[end + 1..].trim();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim();
        } else if !rest.is_empty() {
            return Err(bad("expected `,` between blocks"));
        }
    }
    if blocks.is_empty() {
        return Err(bad("no blocks"));
    }
    let n = blocks
        .iter()
        .flat_map(|b| b.iter())
        .max()
        .map(|&m| m + 1)
        .unwrap_or(0);
    Partition::from_blocks(n, &blocks)
}

/// Plain union-find with path halving; used for joins and congruence
/// generation.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two classes were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        // attach the larger root to the smaller so labels stay stable
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let labels: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}
