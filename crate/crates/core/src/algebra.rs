//! Finite algebras: carrier `{0..n-1}`, total operation tables, named
//! constants. Also subuniverses, homomorphisms and the `.alg` text format.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// An operation symbol with its table, stored row-major with the last
/// index fastest: `table[i1*n^(r-1) + ... + ir]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

/// Operation and constant symbols only, without tables. Two algebras are
/// comparable (homomorphisms, variety checks) when their signatures match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub ops: Vec<(String, usize)>,
    pub consts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    ops: Vec<OpTable>,
    consts: Vec<(String, usize)>,
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.is_ascii()
        && s.chars().next().map(|c| c.is_ascii_alphabetic() || c == '_') == Some(true)
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        size: usize,
        ops: Vec<OpTable>,
        consts: Vec<(String, usize)>,
    ) -> Result<FiniteAlgebra> {
        let name = name.into();
        if size == 0 {
            return Err(Error::EmptySubset {
                context: "algebra carrier must be nonempty".into(),
            });
        }
        let mut names: Vec<&str> = Vec::new();
        for op in &ops {
            if !is_identifier(&op.name) {
                return Err(Error::SignatureMismatch(format!(
                    "op name `{}` is not an identifier",
                    op.name
                )));
            }
            if op.arity == 0 {
                return Err(Error::SignatureMismatch(format!(
                    "op `{}` has arity 0; declare it as a const",
                    op.name
                )));
            }
            let expected = size.pow(op.arity as u32);
            if op.table.len() != expected {
                return Err(Error::SignatureMismatch(format!(
                    "op `{}` table has {} entries, expected {}",
                    op.name,
                    op.table.len(),
                    expected
                )));
            }
            if let Some(&bad) = op.table.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange {
                    value: bad,
                    size,
                });
            }
            names.push(&op.name);
        }
        for (cname, value) in &consts {
            if !is_identifier(cname) {
                return Err(Error::SignatureMismatch(format!(
                    "const name `{cname}` is not an identifier"
                )));
            }
            if *value >= size {
                return Err(Error::OutOfRange {
                    value: *value,
                    size,
                });
            }
            names.push(cname);
        }
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::SignatureMismatch("duplicate symbol name".into()));
        }
        Ok(FiniteAlgebra {
            name,
            size,
            ops,
            consts,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ops(&self) -> &[OpTable] {
        &self.ops
    }

    pub fn consts(&self) -> &[(String, usize)] {
        &self.consts
    }

    pub fn signature(&self) -> Signature {
        Signature {
            ops: self
                .ops
                .iter()
                .map(|o| (o.name.clone(), o.arity))
                .collect(),
            consts: self.consts.iter().map(|(n, _)| n.clone()).collect(),
        }
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn const_value(&self, name: &str) -> Option<usize> {
        self.consts
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    /// Applies operation `op` to `args` (length must equal the arity).
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let t = &self.ops[op];
        debug_assert_eq!(args.len(), t.arity);
        let mut idx = 0usize;
        for &a in args {
            idx = idx * self.size + a;
        }
        t.table[idx]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// All unary translations `x ↦ f(c₁,…,x@i,…,c_r)` for every op `f`,
    /// argument position `i` and parameter tuple over the full carrier,
    /// returned as lookup tables. Duplicates are dropped (first occurrence
    /// kept) so the result is deterministic.
    pub fn unary_translations(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for (op_idx, op) in self.ops.iter().enumerate() {
            let r = op.arity;
            let mut params = vec![0usize; r.saturating_sub(1)];
            loop {
                for pos in 0..r {
                    let mut args = vec![0usize; r];
                    let mut pi = 0;
                    for (j, slot) in args.iter_mut().enumerate() {
                        if j != pos {
                            *slot = params[pi];
                            pi += 1;
                        }
                    }
                    let mut table = Vec::with_capacity(n);
                    for x in 0..n {
                        args[pos] = x;
                        table.push(self.apply(op_idx, &args));
                    }
                    if seen.insert(table.clone()) {
                        out.push(table);
                    }
                }
                // advance the parameter tuple, last index fastest
                let mut k = params.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    params[k] += 1;
                    if params[k] < n {
                        break;
                    }
                    params[k] = 0;
                }
                if params.iter().all(|&p| p == 0) {
                    break;
                }
            }
        }
        out
    }

    /// Serializes to the `.alg` text format.
    pub fn to_alg_string(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("algebra {}\n", self.name));
        s.push_str(&format!("size {}\n", self.size));
        for op in &self.ops {
            s.push_str(&format!("op {} {}\n", op.name, op.arity));
            let row = self.size;
            for chunk in op.table.chunks(row) {
                let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
                s.push_str(&line.join(" "));
                s.push('\n');
            }
        }
        for (name, value) in &self.consts {
            s.push_str(&format!("const {name} {value}\n"));
        }
        s.push_str("end\n");
        s
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (size {})", self.name, self.size)
    }
}

/// Options for the `.alg` parser. Tables of arity above `max_arity`
/// explode as `n^r`, so they are rejected unless the cap is lifted.
#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    pub max_arity: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_arity: 3 }
    }
}

/// Parses the `.alg` text format with the default arity cap.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    parse_algebra_with(text, ParseOptions::default())
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Tokens<'a> {
        let mut items = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                items.push((i + 1, tok));
            }
        }
        Tokens { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn last_line(&self) -> usize {
        self.items.last().map(|&(l, _)| l).unwrap_or(1)
    }

    fn expect_word(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next()
            .ok_or_else(|| Error::parse(self.last_line(), format!("expected {what}, found end of input")))
    }

    fn expect_usize(&mut self, what: &str) -> Result<(usize, usize)> {
        let (line, tok) = self.expect_word(what)?;
        let v = tok
            .parse::<usize>()
            .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))?;
        Ok((line, v))
    }
}

/// Parses the `.alg` text format.
pub fn parse_algebra_with(text: &str, opts: ParseOptions) -> Result<FiniteAlgebra> {
    let mut toks = Tokens::new(text);
    let (line, kw) = toks.expect_word("`algebra`")?;
    if kw != "algebra" {
        return Err(Error::parse(line, format!("expected `algebra`, found `{kw}`")));
    }
    let (_, name) = toks.expect_word("algebra name")?;
    let (line, kw) = toks.expect_word("`size`")?;
    if kw != "size" {
        return Err(Error::parse(line, format!("expected `size`, found `{kw}`")));
    }
    let (size_line, size) = toks.expect_usize("carrier size")?;
    if size == 0 {
        return Err(Error::parse(size_line, "size must be at least 1"));
    }

    let mut ops: Vec<OpTable> = Vec::new();
    let mut consts: Vec<(String, usize)> = Vec::new();
    loop {
        let (line, kw) = toks.expect_word("`op`, `const` or `end`")?;
        match kw {
            "end" => break,
            "op" => {
                let (nline, opname) = toks.expect_word("op name")?;
                if !is_identifier(opname) {
                    return Err(Error::parse(nline, format!("bad op name `{opname}`")));
                }
                let (aline, arity) = toks.expect_usize("op arity")?;
                if arity == 0 {
                    return Err(Error::parse(aline, "arity 0 symbols must be declared as consts"));
                }
                if arity > opts.max_arity {
                    return Err(Error::parse(
                        aline,
                        format!(
                            "op `{opname}` has arity {arity}, above the cap of {} (lift with --max-arity)",
                            opts.max_arity
                        ),
                    ));
                }
                let len = size.pow(arity as u32);
                let mut table = Vec::with_capacity(len);
                for _ in 0..len {
                    let (eline, entry) = match toks.peek() {
                        Some((l, t)) if t.parse::<usize>().is_ok() => {
                            toks.next();
                            (l, t.parse::<usize>().unwrap())
                        }
                        Some((l, t)) => {
                            return Err(Error::parse(
                                l,
                                format!("table length: op `{opname}` needs {len} entries, found `{t}`"),
                            ))
                        }
                        None => {
                            return Err(Error::parse(
                                toks.last_line(),
                                format!("table length: op `{opname}` needs {len} entries"),
                            ))
                        }
                    };
                    if entry >= size {
                        return Err(Error::parse(
                            eline,
                            format!("entry out of range: {entry} on a size-{size} carrier"),
                        ));
                    }
                    table.push(entry);
                }
                if ops.iter().any(|o| o.name == opname)
                    || consts.iter().any(|(c, _)| c == opname)
                {
                    return Err(Error::parse(nline, format!("duplicate name `{opname}`")));
                }
                ops.push(OpTable {
                    name: opname.to_string(),
                    arity,
                    table,
                });
            }
            "const" => {
                let (nline, cname) = toks.expect_word("const name")?;
                if !is_identifier(cname) {
                    return Err(Error::parse(nline, format!("bad const name `{cname}`")));
                }
                let (vline, value) = toks.expect_usize("const value")?;
                if value >= size {
                    return Err(Error::parse(
                        vline,
                        format!("entry out of range: {value} on a size-{size} carrier"),
                    ));
                }
                if ops.iter().any(|o| o.name == cname)
                    || consts.iter().any(|(c, _)| c == cname)
                {
                    return Err(Error::parse(nline, format!("duplicate name `{cname}`")));
                }
                consts.push((cname.to_string(), value));
            }
            other => {
                return Err(Error::parse(
                    line,
                    format!("expected `op`, `const` or `end`, found `{other}`"),
                ))
            }
        }
    }
    if let Some((line, tok)) = toks.peek() {
        return Err(Error::parse(line, format!("trailing input `{tok}` after `end`")));
    }
    FiniteAlgebra::new(name, size, ops, consts)
}

/// A subset of the carrier closed under all operations and containing
/// every declared constant. Elements are kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubUniverse {
    parent_size: usize,
    elements: Vec<usize>,
}

impl SubUniverse {
    pub fn new(algebra: &FiniteAlgebra, elements: &[usize]) -> Result<SubUniverse> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::EmptySubset {
                context: "empty subuniverse".into(),
            });
        }
        for &x in &elems {
            if x >= algebra.size() {
                return Err(Error::OutOfRange {
                    value: x,
                    size: algebra.size(),
                });
            }
        }
        for (cname, cval) in algebra.consts() {
            if elems.binary_search(cval).is_err() {
                return Err(Error::NotClosed {
                    context: format!("missing constant {cname}={cval}"),
                });
            }
        }
        for (op_idx, op) in algebra.ops().iter().enumerate() {
            for args in tuples(&elems, op.arity) {
                let v = algebra.apply(op_idx, &args);
                if elems.binary_search(&v).is_err() {
                    return Err(Error::NotClosed {
                        context: format!(
                            "{}({}) = {} escapes the subset",
                            op.name,
                            args.iter()
                                .map(|a| a.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                            v
                        ),
                    });
                }
            }
        }
        Ok(SubUniverse {
            parent_size: algebra.size(),
            elements: elems,
        })
    }

    pub fn parent_size(&self) -> usize {
        self.parent_size
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of a carrier element in the element list.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent_size
    }
}

/// All tuples of the given length over a sorted element list.
pub(crate) fn tuples(elems: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for t in &out {
            for &e in elems {
                let mut t2 = t.clone();
                t2.push(e);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// The algebra induced on a subuniverse, with elements re-indexed by
/// position in the subuniverse list.
pub fn subalgebra(algebra: &FiniteAlgebra, sub: &SubUniverse) -> Result<FiniteAlgebra> {
    if sub.parent_size() != algebra.size() {
        return Err(Error::SizeMismatch {
            expected: algebra.size(),
            found: sub.parent_size(),
        });
    }
    let k = sub.len();
    let mut ops = Vec::new();
    for (op_idx, op) in algebra.ops().iter().enumerate() {
        let mut table = Vec::with_capacity(k.pow(op.arity as u32));
        for args in tuples_of_indices(k, op.arity) {
            let real: Vec<usize> = args.iter().map(|&i| sub.elements()[i]).collect();
            let v = algebra.apply(op_idx, &real);
            table.push(sub.index_of(v).expect("subuniverse is closed"));
        }
        ops.push(OpTable {
            name: op.name.clone(),
            arity: op.arity,
            table,
        });
    }
    let consts = algebra
        .consts()
        .iter()
        .map(|(n, v)| (n.clone(), sub.index_of(*v).expect("constants present")))
        .collect();
    FiniteAlgebra::new(format!("{}_sub", algebra.name()), k, ops, consts)
}

/// All tuples over `0..k`, last position fastest, in table order.
pub(crate) fn tuples_of_indices(k: usize, len: usize) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..k).collect();
    tuples(&all, len)
}

/// Every subuniverse of the algebra, by filtering all subsets of the
/// carrier. Exponential; meant for the desk-scale corpus.
pub fn all_subuniverses(algebra: &FiniteAlgebra) -> Vec<SubUniverse> {
    let n = algebra.size();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let elems: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        if let Ok(sub) = SubUniverse::new(algebra, &elems) {
            out.push(sub);
        }
    }
    out
}

/// A homomorphism between algebras of the same signature, validated to
/// commute with every operation and preserve every constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        map: Vec<usize>,
    ) -> Result<Homomorphism> {
        if map.len() != source.size() {
            return Err(Error::SizeMismatch {
                expected: source.size(),
                found: map.len(),
            });
        }
        if source.signature() != target.signature() {
            return Err(Error::SignatureMismatch(
                "source and target have different signatures".into(),
            ));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::OutOfRange {
                value: bad,
                size: target.size(),
            });
        }
        for (op_idx, op) in source.ops().iter().enumerate() {
            for args in tuples_of_indices(source.size(), op.arity) {
                let lhs = map[source.apply(op_idx, &args)];
                let imgs: Vec<usize> = args.iter().map(|&a| map[a]).collect();
                let rhs = target.apply(op_idx, &imgs);
                if lhs != rhs {
                    return Err(Error::SignatureMismatch(format!(
                        "map does not commute with `{}` at ({})",
                        op.name,
                        args.iter()
                            .map(|a| a.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )));
                }
            }
        }
        for (cname, cval) in source.consts() {
            let tval = target.const_value(cname).expect("same signature");
            if map[*cval] != tval {
                return Err(Error::SignatureMismatch(format!(
                    "map does not preserve const `{cname}`"
                )));
            }
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn identity(algebra: &FiniteAlgebra) -> Homomorphism {
        Homomorphism {
            source: algebra.clone(),
            target: algebra.clone(),
            map: (0..algebra.size()).collect(),
        }
    }
}

/// Re-exported here because several validations state their results as
/// partitions over the subuniverse positions.
pub fn restrict_partition(p: &Partition, sub: &SubUniverse) -> Result<Partition> {
    if p.size() != sub.parent_size() {
        return Err(Error::SizeMismatch {
            expected: sub.parent_size(),
            found: p.size(),
        });
    }
    p.restrict_to(sub.elements())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const Z4_ADD: &str = "
# additive cyclic group of order 4, written as a plain algebra
algebra z4add
size 4
op add 2
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
const e 0
end
";

    #[test]
    fn parse_z4_table_readback() {
        let a = parse_algebra(Z4_ADD).unwrap();
        assert_eq!(a.size(), 4);
        let add = a.op_index("add").unwrap();
        assert_eq!(a.apply(add, &[1, 3]), 0);
        assert_eq!(a.const_value("e"), Some(0));
    }

    #[test]
    fn parse_entry_out_of_range() {
        let text = "algebra bad\nsize 4\nop add 2\n0 1 2 3\n1 2 3 0\n2 3 0 7\n3 0 1 2\nend\n";
        let err = parse_algebra(text).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 6);
                assert!(message.contains("entry out of range"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_wrong_table_length() {
        // one entry short of n^2
        let text = "algebra bad\nsize 4\nop add 2\n0 1 2 3 1 2 3 0 2 3 0 1 3 0 1\nend\n";
        let err = parse_algebra(text).unwrap_err();
        match err {
            Error::Parse { message, .. } => {
                assert!(message.contains("table length"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_high_arity_by_default() {
        let text = "algebra bad\nsize 1\nop f 4\n0\nend\n";
        assert!(parse_algebra(text).is_err());
        assert!(parse_algebra_with(text, ParseOptions { max_arity: 4 }).is_ok());
    }

    #[test]
    fn alg_roundtrip() {
        let a = parse_algebra(Z4_ADD).unwrap();
        let b = parse_algebra(&a.to_alg_string()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subuniverse_validation() {
        let a = parse_algebra(Z4_ADD).unwrap();
        assert!(SubUniverse::new(&a, &[0, 2]).is_ok());
        // 1+1=2 escapes {0,1}
        assert!(SubUniverse::new(&a, &[0, 1]).is_err());
        // missing the constant 0
        assert!(SubUniverse::new(&a, &[2]).is_err());
        assert!(SubUniverse::new(&a, &[]).is_err());
    }

    #[test]
    fn subalgebra_reindexes() {
        let a = parse_algebra(Z4_ADD).unwrap();
        let u = SubUniverse::new(&a, &[0, 2]).unwrap();
        let s = subalgebra(&a, &u).unwrap();
        assert_eq!(s.size(), 2);
        let add = s.op_index("add").unwrap();
        // 2+2 = 0 in z4, i.e. 1+1 = 0 in positions
        assert_eq!(s.apply(add, &[1, 1]), 0);
    }

    #[test]
    fn homomorphism_validation() {
        let a = parse_algebra(Z4_ADD).unwrap();
        let id = Homomorphism::identity(&a);
        assert_eq!(id.apply(3), 3);
        // x ↦ x+1 does not commute with add
        assert!(Homomorphism::new(a.clone(), a.clone(), vec![1, 2, 3, 0]).is_err());
    }
}
