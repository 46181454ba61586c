//! Finite categories over a fixed object set: validation, wide
//! subcategories, hom-congruences, and the generalized syntactic relation
//! on parallel pairs of morphisms.
//!
//! A hom-congruence relates only parallel morphisms and is compatible
//! with composition on both sides; for a one-object category this is
//! exactly a monoid congruence, and [`cat_syntactic`] then coincides with
//! the saturation operator on the underlying monoid.

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// A finite category presented by dom/cod vectors, an identity per
/// object, and an m×m composition table defined exactly on composable
/// pairs (`comp[g][f] = g∘f` when `cod(f) = dom(g)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    id: Vec<usize>,
    comp: Vec<Option<usize>>,
}

impl FiniteCategory {
    pub fn new(
        name: impl Into<String>,
        objects: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        id: Vec<usize>,
        comp: Vec<Option<usize>>,
    ) -> Result<FiniteCategory> {
        let name = name.into();
        let m = dom.len();
        let fail = |msg: String| Err(Error::SignatureMismatch(msg));
        if cod.len() != m {
            return fail(format!("dom has {m} entries but cod has {}", cod.len()));
        }
        if id.len() != objects {
            return fail(format!("id has {} entries for {objects} objects", id.len()));
        }
        if comp.len() != m * m {
            return fail(format!("comp has {} entries, expected {}", comp.len(), m * m));
        }
        for &o in dom.iter().chain(cod.iter()) {
            if o >= objects {
                return Err(Error::OutOfRange {
                    value: o,
                    size: objects,
                });
            }
        }
        for (o, &i) in id.iter().enumerate() {
            if i >= m {
                return Err(Error::OutOfRange { value: i, size: m });
            }
            if dom[i] != o || cod[i] != o {
                return fail(format!("identity of object {o} is not an endomorphism of it"));
            }
        }
        let cat = FiniteCategory {
            name,
            objects,
            dom,
            cod,
            id,
            comp,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        let m = self.morphism_count();
        let fail = |msg: String| Err(Error::SignatureMismatch(msg));
        for g in 0..m {
            for f in 0..m {
                let entry = self.comp[g * m + f];
                let composable = self.cod[f] == self.dom[g];
                match entry {
                    None if composable => {
                        return fail(format!("undefined required composite {g}∘{f}"));
                    }
                    Some(_) if !composable => {
                        return fail(format!(
                            "defined non-composable entry {g}∘{f} (cod({f}) ≠ dom({g}))"
                        ));
                    }
                    Some(h) => {
                        if h >= m {
                            return Err(Error::OutOfRange { value: h, size: m });
                        }
                        if self.dom[h] != self.dom[f] || self.cod[h] != self.cod[g] {
                            return fail(format!("composite {g}∘{f} has inconsistent endpoints"));
                        }
                    }
                    None => {}
                }
            }
        }
        for f in 0..m {
            let left = self.compose(self.id[self.cod[f]], f);
            let right = self.compose(f, self.id[self.dom[f]]);
            if left != Some(f) || right != Some(f) {
                return fail(format!("identity is not neutral on morphism {f}"));
            }
        }
        for h in 0..m {
            for g in 0..m {
                if self.cod[g] != self.dom[h] {
                    continue;
                }
                for f in 0..m {
                    if self.cod[f] != self.dom[g] {
                        continue;
                    }
                    let hg = self.compose(h, g).expect("composable");
                    let gf = self.compose(g, f).expect("composable");
                    if self.compose(hg, f) != self.compose(h, gf) {
                        return fail(format!("associativity fails on the triple ({h},{g},{f})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.dom[f]
    }

    pub fn cod(&self, f: usize) -> usize {
        self.cod[f]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.id[object]
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphism_count() + f]
    }

    pub fn is_parallel(&self, f: usize, g: usize) -> bool {
        self.dom[f] == self.dom[g] && self.cod[f] == self.cod[g]
    }

    /// The two-sided inverse of a morphism, when it exists.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        (0..self.morphism_count()).find(|&g| {
            self.compose(g, f) == Some(self.id[self.dom[f]])
                && self.compose(f, g) == Some(self.id[self.cod[f]])
        })
    }

    /// Serializes to the `.cat` text format.
    pub fn to_cat_string(&self) -> String {
        let m = self.morphism_count();
        let ints = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = String::new();
        s.push_str(&format!("category {}\n", self.name));
        s.push_str(&format!("objects {}\n", self.objects));
        s.push_str(&format!("morphisms {m}\n"));
        s.push_str(&format!("dom {}\n", ints(&self.dom)));
        s.push_str(&format!("cod {}\n", ints(&self.cod)));
        s.push_str(&format!("id {}\n", ints(&self.id)));
        s.push_str("comp\n");
        for g in 0..m {
            let row: Vec<String> = (0..m)
                .map(|f| match self.comp[g * m + f] {
                    Some(h) => h.to_string(),
                    None => "-1".to_string(),
                })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s.push_str("end\n");
        s
    }
}

/// Parses the `.cat` text format ('#' comments allowed).
pub fn parse_category(text: &str) -> Result<FiniteCategory> {
    let mut toks: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            toks.push((i + 1, tok));
        }
    }
    let mut pos = 0usize;
    let last_line = toks.last().map(|&(l, _)| l).unwrap_or(1);
    let mut next = |what: &str| -> Result<(usize, &str)> {
        if pos < toks.len() {
            let t = toks[pos];
            pos += 1;
            Ok(t)
        } else {
            Err(Error::parse(last_line, format!("expected {what}, found end of input")))
        }
    };
    let expect_kw = |t: (usize, &str), kw: &str| -> Result<()> {
        if t.1 == kw {
            Ok(())
        } else {
            Err(Error::parse(t.0, format!("expected `{kw}`, found `{}`", t.1)))
        }
    };
    let parse_usize = |t: (usize, &str), what: &str| -> Result<usize> {
        t.1.parse::<usize>()
            .map_err(|_| Error::parse(t.0, format!("expected {what}, found `{}`", t.1)))
    };

    expect_kw(next("`category`")?, "category")?;
    let (_, name) = next("category name")?;
    expect_kw(next("`objects`")?, "objects")?;
    let objects = parse_usize(next("object count")?, "object count")?;
    expect_kw(next("`morphisms`")?, "morphisms")?;
    let m = parse_usize(next("morphism count")?, "morphism count")?;

    let mut read_vec = |kw: &'static str, len: usize| -> Result<Vec<usize>> {
        expect_kw(next(kw)?, kw)?;
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(parse_usize(next("an integer")?, "an integer")?);
        }
        Ok(v)
    };
    let dom = read_vec("dom", m)?;
    let cod = read_vec("cod", m)?;
    let id = read_vec("id", objects)?;

    expect_kw(next("`comp`")?, "comp")?;
    let mut comp = Vec::with_capacity(m * m);
    for _ in 0..m * m {
        let (line, tok) = next("a comp entry")?;
        if tok == "-1" {
            comp.push(None);
        } else {
            let v = tok
                .parse::<usize>()
                .map_err(|_| Error::parse(line, format!("expected a comp entry, found `{tok}`")))?;
            comp.push(Some(v));
        }
    }
    expect_kw(next("`end`")?, "end")?;
    if pos < toks.len() {
        let (line, tok) = toks[pos];
        return Err(Error::parse(line, format!("trailing input `{tok}` after `end`")));
    }
    FiniteCategory::new(name, objects, dom, cod, id, comp)
}

/// True iff every morphism has a two-sided inverse.
pub fn is_groupoid(d: &FiniteCategory) -> bool {
    (0..d.morphism_count()).all(|f| d.inverse(f).is_some())
}

/// A wide (bijective-on-objects) subcategory: a morphism subset that
/// contains every identity and is closed under composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideSubcategory {
    morphisms: Vec<usize>,
}

impl WideSubcategory {
    pub fn new(d: &FiniteCategory, morphisms: &[usize]) -> Result<WideSubcategory> {
        let mut ms: Vec<usize> = morphisms.to_vec();
        ms.sort_unstable();
        ms.dedup();
        for &f in &ms {
            if f >= d.morphism_count() {
                return Err(Error::OutOfRange {
                    value: f,
                    size: d.morphism_count(),
                });
            }
        }
        for o in 0..d.object_count() {
            if ms.binary_search(&d.identity(o)).is_err() {
                return Err(Error::NotClosed {
                    context: format!("missing identity of object {o}"),
                });
            }
        }
        for &g in &ms {
            for &f in &ms {
                if let Some(h) = d.compose(g, f) {
                    if ms.binary_search(&h).is_err() {
                        return Err(Error::NotClosed {
                            context: format!("composite {g}∘{f} = {h} escapes the subset"),
                        });
                    }
                }
            }
        }
        Ok(WideSubcategory { morphisms: ms })
    }

    pub fn morphisms(&self) -> &[usize] {
        &self.morphisms
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn contains(&self, f: usize) -> bool {
        self.morphisms.binary_search(&f).is_ok()
    }

    pub fn index_of(&self, f: usize) -> Option<usize> {
        self.morphisms.binary_search(&f).ok()
    }

    /// The subcategory as a category of its own, morphisms re-indexed by
    /// position in the subset list.
    pub fn to_category(&self, d: &FiniteCategory) -> FiniteCategory {
        let k = self.morphisms.len();
        let dom = self.morphisms.iter().map(|&f| d.dom(f)).collect();
        let cod = self.morphisms.iter().map(|&f| d.cod(f)).collect();
        let id = (0..d.object_count())
            .map(|o| self.index_of(d.identity(o)).expect("identities present"))
            .collect();
        let mut comp = vec![None; k * k];
        for (gi, &g) in self.morphisms.iter().enumerate() {
            for (fi, &f) in self.morphisms.iter().enumerate() {
                if let Some(h) = d.compose(g, f) {
                    comp[gi * k + fi] = Some(self.index_of(h).expect("closed under composition"));
                }
            }
        }
        FiniteCategory::new(
            format!("{}_wide", d.name()),
            d.object_count(),
            dom,
            cod,
            id,
            comp,
        )
        .expect("a wide subcategory is a category")
    }
}

/// True iff `p` relates only parallel pairs and is compatible with
/// composition on both sides.
pub fn is_hom_congruence(d: &FiniteCategory, p: &Partition) -> Result<bool> {
    let m = d.morphism_count();
    if p.size() != m {
        return Err(Error::SizeMismatch {
            expected: m,
            found: p.size(),
        });
    }
    for block in p.blocks() {
        let f0 = block[0];
        if block[1..].iter().any(|&f| !d.is_parallel(f0, f)) {
            return Ok(false);
        }
    }
    for f in 0..m {
        for f1 in 0..m {
            if !p.same_class(f, f1) {
                continue;
            }
            for h in 0..m {
                if d.cod(f) != d.dom(h) {
                    continue;
                }
                for h1 in 0..m {
                    if !p.same_class(h, h1) {
                        continue;
                    }
                    let hf = d.compose(h, f).expect("composable");
                    let h1f1 = d.compose(h1, f1).expect("parallel classes compose");
                    if !p.same_class(hf, h1f1) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// A validated hom-congruence on a category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCongruence {
    partition: Partition,
}

impl HomCongruence {
    pub fn new(d: &FiniteCategory, partition: Partition) -> Result<HomCongruence> {
        if !is_hom_congruence(d, &partition)? {
            return Err(Error::NotACongruence {
                context: format!("{partition} is not a hom-congruence of {}", d.name()),
            });
        }
        Ok(HomCongruence { partition })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn into_partition(self) -> Partition {
        self.partition
    }
}

/// The coarsest hom-congruence: all parallel pairs related.
pub fn parallel_indiscrete(d: &FiniteCategory) -> Partition {
    let labels: Vec<usize> = (0..d.morphism_count())
        .map(|f| d.dom(f) * d.object_count() + d.cod(f))
        .collect();
    Partition::from_labels(&labels)
}

/// All hom-congruences of `d`, by brute force: partitions of each
/// parallel class combined in all ways, filtered by compatibility.
/// Exponential in hom-set sizes; intended for small categories.
pub fn all_hom_congruences(d: &FiniteCategory) -> Vec<Partition> {
    let m = d.morphism_count();
    let mut class_of: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
        std::collections::BTreeMap::new();
    for f in 0..m {
        class_of.entry((d.dom(f), d.cod(f))).or_default().push(f);
    }
    let classes: Vec<Vec<usize>> = class_of.into_values().collect();
    let per_class: Vec<Vec<Partition>> = classes
        .iter()
        .map(|c| Partition::enumerate_all(c.len()))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; classes.len()];
    loop {
        let mut labels = vec![0usize; m];
        let mut offset = 0usize;
        for (ci, class) in classes.iter().enumerate() {
            let p = &per_class[ci][choice[ci]];
            for (pos, &f) in class.iter().enumerate() {
                labels[f] = offset + p.label(pos);
            }
            offset += p.num_classes();
        }
        let candidate = Partition::from_labels(&labels);
        if is_hom_congruence(d, &candidate).expect("sizes match") {
            out.push(candidate);
        }
        // advance the per-class odometer
        let mut i = 0usize;
        loop {
            if i == classes.len() {
                out.sort();
                out.dedup();
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_class[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The generalized syntactic relation of a wide subcategory `c` with a
/// hom-congruence `s` on it: parallel `f, f'` are related iff for every
/// context `(g, k)` with `dom(g) = cod(f)` and `cod(k) = dom(f)`,
/// membership of `g∘f∘k` and `g∘f'∘k` in `c` agrees, and the two
/// composites are `s`-related whenever they land in `c`. Identities are
/// among the contexts, so the trivial context is always covered.
///
/// This is the largest hom-congruence of `d` for which `c` is saturated
/// and whose restriction to `c` lies below `s`.
pub fn cat_syntactic(
    d: &FiniteCategory,
    c: &WideSubcategory,
    s: &Partition,
) -> Result<HomCongruence> {
    let sub = c.to_category(d);
    if s.size() != c.len() {
        return Err(Error::SizeMismatch {
            expected: c.len(),
            found: s.size(),
        });
    }
    if !is_hom_congruence(&sub, s)? {
        return Err(Error::NotACongruence {
            context: format!("{s} is not a hom-congruence of the wide subcategory"),
        });
    }
    let m = d.morphism_count();
    // profile of f over its contexts: None = composite outside c,
    // Some(class) = inside c with that s-class
    let mut profiles: Vec<Vec<Option<usize>>> = Vec::with_capacity(m);
    for f in 0..m {
        let mut profile = Vec::new();
        for g in 0..m {
            if d.dom(g) != d.cod(f) {
                continue;
            }
            for k in 0..m {
                if d.cod(k) != d.dom(f) {
                    continue;
                }
                let fk = d.compose(f, k).expect("composable");
                let gfk = d.compose(g, fk).expect("composable");
                profile.push(c.index_of(gfk).map(|pos| s.label(pos)));
            }
        }
        profiles.push(profile);
    }
    let mut seen: std::collections::HashMap<(usize, usize, &[Option<usize>]), usize> =
        std::collections::HashMap::new();
    let mut labels = Vec::with_capacity(m);
    for (f, profile) in profiles.iter().enumerate() {
        let key = (d.dom(f), d.cod(f), profile.as_slice());
        let fresh = seen.len();
        labels.push(*seen.entry(key).or_insert(fresh));
    }
    let partition = Partition::from_labels(&labels);
    HomCongruence::new(d, partition)
}

/// A monoid as a one-object category: morphisms are the carrier and
/// `g∘f = g·f`.
pub fn monoid_as_category(m: &FiniteAlgebra) -> Result<FiniteCategory> {
    let mul = m
        .op_index("mul")
        .filter(|&i| m.ops()[i].arity == 2)
        .ok_or_else(|| Error::SignatureMismatch("expected a binary op `mul`".into()))?;
    let e = m
        .const_value("e")
        .ok_or_else(|| Error::SignatureMismatch("expected a const `e`".into()))?;
    let n = m.size();
    let mut comp = Vec::with_capacity(n * n);
    for g in 0..n {
        for f in 0..n {
            comp.push(Some(m.apply(mul, &[g, f])));
        }
    }
    FiniteCategory::new(m.name(), 1, vec![0; n], vec![0; n], vec![e], comp)
}

/// For a groupoid: is the hom-congruence closed under inverses? The
/// invariant suite asserts this always holds.
pub fn groupoid_inverse_check(d: &FiniteCategory, s: &Partition) -> Result<bool> {
    if !is_groupoid(d) {
        return Err(Error::NotInVariety {
            variety: "groupoid".into(),
            context: "a morphism has no two-sided inverse".into(),
        });
    }
    if !is_hom_congruence(d, s)? {
        return Err(Error::NotACongruence {
            context: format!("{s} is not a hom-congruence of {}", d.name()),
        });
    }
    let m = d.morphism_count();
    let inverse: Vec<usize> = (0..m)
        .map(|f| d.inverse(f).expect("groupoid"))
        .collect();
    for f in 0..m {
        for f1 in 0..m {
            if s.same_class(f, f1) && !s.same_class(inverse[f], inverse[f1]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
