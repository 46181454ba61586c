//! The automata bridge: DFAs, transition monoids, syntactic monoids, and
//! Moore minimization as an independent cross-check.
//!
//! The transition monoid collects the distinct state transformations
//! generated by the letters (the identity is the empty word); the
//! syntactic monoid is its quotient by the syntactic congruence of the
//! accepting transformation set. The transition monoid of the minimal
//! DFA is isomorphic to that quotient, which the test suite verifies.

use crate::algebra::{FiniteAlgebra, OpTable};
use crate::congruence::quotient_algebra;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::saturation::syntactic_congruence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    name: String,
    states: usize,
    alphabet: Vec<String>,
    /// One transition vector per symbol, indexed like `alphabet`.
    trans: Vec<Vec<usize>>,
    start: usize,
    finals: Vec<usize>,
}

impl Dfa {
    pub fn new(
        name: impl Into<String>,
        states: usize,
        alphabet: Vec<String>,
        trans: Vec<Vec<usize>>,
        start: usize,
        finals: Vec<usize>,
    ) -> Result<Dfa> {
        let name = name.into();
        if states == 0 {
            return Err(Error::EmptySubset {
                context: "a DFA needs at least one state".into(),
            });
        }
        if alphabet.is_empty() {
            return Err(Error::EmptySubset {
                context: "a DFA needs a nonempty alphabet".into(),
            });
        }
        let mut symbols = alphabet.clone();
        symbols.sort();
        symbols.dedup();
        if symbols.len() != alphabet.len() {
            return Err(Error::SignatureMismatch("duplicate alphabet symbol".into()));
        }
        if trans.len() != alphabet.len() {
            return Err(Error::SignatureMismatch(format!(
                "{} transition rows for {} symbols",
                trans.len(),
                alphabet.len()
            )));
        }
        for row in &trans {
            if row.len() != states {
                return Err(Error::SizeMismatch {
                    expected: states,
                    found: row.len(),
                });
            }
            for &t in row {
                if t >= states {
                    return Err(Error::OutOfRange {
                        value: t,
                        size: states,
                    });
                }
            }
        }
        if start >= states {
            return Err(Error::OutOfRange {
                value: start,
                size: states,
            });
        }
        let mut finals = finals;
        finals.sort_unstable();
        finals.dedup();
        for &f in &finals {
            if f >= states {
                return Err(Error::OutOfRange {
                    value: f,
                    size: states,
                });
            }
        }
        Ok(Dfa {
            name,
            states,
            alphabet,
            trans,
            start,
            finals,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals.binary_search(&state).is_ok()
    }

    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.trans[symbol][state]
    }

    /// Serializes to the `.dfa` text format.
    pub fn to_dfa_string(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("dfa {}\n", self.name));
        s.push_str(&format!("states {}\n", self.states));
        s.push_str(&format!("alphabet {}\n", self.alphabet.join(" ")));
        s.push_str(&format!("start {}\n", self.start));
        let finals: Vec<String> = self.finals.iter().map(|f| f.to_string()).collect();
        s.push_str(&format!("final {}\n", finals.join(" ")));
        for (i, symbol) in self.alphabet.iter().enumerate() {
            let row: Vec<String> = self.trans[i].iter().map(|t| t.to_string()).collect();
            s.push_str(&format!("trans {} {}\n", symbol, row.join(" ")));
        }
        s.push_str("end\n");
        s
    }
}

/// Parses the `.dfa` text format ('#' comments allowed). The `final`
/// line may be empty; every symbol needs exactly one `trans` line.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    // line-oriented: `final` and `alphabet` are variable-length
    let mut name: Option<String> = None;
    let mut states: Option<usize> = None;
    let mut alphabet: Vec<String> = Vec::new();
    let mut start: Option<usize> = None;
    let mut finals: Option<Vec<usize>> = None;
    let mut trans_lines: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut saw_end = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if saw_end {
            return Err(Error::parse(lineno, format!("trailing input `{line}` after `end`")));
        }
        let mut toks = line.split_whitespace();
        let kw = toks.next().expect("nonempty line");
        let rest: Vec<&str> = toks.collect();
        let parse_int = |tok: &str| -> Result<usize> {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("expected an integer, found `{tok}`")))
        };
        match kw {
            "dfa" => {
                if rest.len() != 1 {
                    return Err(Error::parse(lineno, "expected `dfa <name>`"));
                }
                name = Some(rest[0].to_string());
            }
            "states" => {
                if rest.len() != 1 {
                    return Err(Error::parse(lineno, "expected `states <q>`"));
                }
                states = Some(parse_int(rest[0])?);
            }
            "alphabet" => {
                if rest.is_empty() {
                    return Err(Error::parse(lineno, "alphabet must list at least one symbol"));
                }
                alphabet = rest.iter().map(|s| s.to_string()).collect();
            }
            "start" => {
                if rest.len() != 1 {
                    return Err(Error::parse(lineno, "expected `start <state>`"));
                }
                start = Some(parse_int(rest[0])?);
            }
            "final" => {
                let mut f = Vec::new();
                for tok in &rest {
                    f.push(parse_int(tok)?);
                }
                finals = Some(f);
            }
            "trans" => {
                if rest.is_empty() {
                    return Err(Error::parse(lineno, "expected `trans <symbol> <targets>`"));
                }
                let symbol = rest[0].to_string();
                let mut row = Vec::new();
                for tok in &rest[1..] {
                    row.push(parse_int(tok)?);
                }
                trans_lines.push((lineno, symbol, row));
            }
            "end" => saw_end = true,
            other => {
                return Err(Error::parse(lineno, format!("unknown keyword `{other}`")));
            }
        }
    }
    if !saw_end {
        return Err(Error::parse(text.lines().count().max(1), "missing `end`"));
    }
    let name = name.ok_or_else(|| Error::parse(1, "missing `dfa <name>`"))?;
    let states = states.ok_or_else(|| Error::parse(1, "missing `states`"))?;
    let start = start.ok_or_else(|| Error::parse(1, "missing `start`"))?;
    let finals = finals.ok_or_else(|| Error::parse(1, "missing `final`"))?;
    if alphabet.is_empty() {
        return Err(Error::parse(1, "missing `alphabet`"));
    }
    let mut trans = vec![Vec::new(); alphabet.len()];
    let mut seen = vec![false; alphabet.len()];
    for (lineno, symbol, row) in trans_lines {
        let idx = alphabet
            .iter()
            .position(|s| *s == symbol)
            .ok_or_else(|| Error::parse(lineno, format!("unknown symbol `{symbol}`")))?;
        if seen[idx] {
            return Err(Error::parse(lineno, format!("duplicate trans line for `{symbol}`")));
        }
        if row.len() != states {
            return Err(Error::parse(
                lineno,
                format!("trans `{symbol}` lists {} targets for {states} states", row.len()),
            ));
        }
        seen[idx] = true;
        trans[idx] = row;
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::parse(
            1,
            format!("missing trans line for `{}`", alphabet[missing]),
        ));
    }
    Dfa::new(name, states, alphabet, trans, start, finals)
}

/// The transition monoid of a DFA together with the transformations and
/// the letter map.
#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    algebra: FiniteAlgebra,
    transforms: Vec<Vec<usize>>,
    letter_elements: Vec<usize>,
}

impl TransitionMonoid {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn transforms(&self) -> &[Vec<usize>] {
        &self.transforms
    }

    /// Monoid element of each alphabet symbol.
    pub fn letter_elements(&self) -> &[usize] {
        &self.letter_elements
    }
}

/// BFS closure of the letter transformations under composition, starting
/// from the identity (the empty word). Discovery order is normalized by
/// sorting the transformations before the table is built.
pub fn transition_monoid(d: &Dfa) -> TransitionMonoid {
    let q = d.state_count();
    let identity: Vec<usize> = (0..q).collect();
    let letters: Vec<Vec<usize>> = (0..d.alphabet().len())
        .map(|s| (0..q).map(|x| d.step(x, s)).collect())
        .collect();
    let mut known: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    let mut queue: std::collections::VecDeque<Vec<usize>> = std::collections::VecDeque::new();
    known.insert(identity.clone());
    queue.push_back(identity.clone());
    while let Some(t) = queue.pop_front() {
        for l in &letters {
            // "t then l": apply t first, then the letter
            let u: Vec<usize> = (0..q).map(|x| l[t[x]]).collect();
            if known.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    let mut transforms: Vec<Vec<usize>> = known.into_iter().collect();
    transforms.sort();
    let index: std::collections::HashMap<&[usize], usize> = transforms
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let n = transforms.len();
    let mut table = Vec::with_capacity(n * n);
    for s in &transforms {
        for t in &transforms {
            // product = "s then t" so that words multiply by concatenation
            let composed: Vec<usize> = (0..q).map(|x| t[s[x]]).collect();
            table.push(index[composed.as_slice()]);
        }
    }
    let e = index[identity.as_slice()];
    let letter_elements: Vec<usize> = letters.iter().map(|l| index[l.as_slice()]).collect();
    let algebra = FiniteAlgebra::new(
        format!("{}_tm", d.name()),
        n,
        vec![OpTable {
            name: "mul".into(),
            arity: 2,
            table,
        }],
        vec![("e".into(), e)],
    )
    .expect("valid monoid table");
    TransitionMonoid {
        algebra,
        transforms,
        letter_elements,
    }
}

/// The transformations sending the start state into the final set; the
/// image of the accepted language in the transition monoid. May be empty
/// (empty language), which downstream constructions flag.
pub fn accepting_subset(d: &Dfa, tm: &TransitionMonoid) -> Vec<usize> {
    tm.transforms()
        .iter()
        .enumerate()
        .filter(|(_, t)| d.is_final(t[d.start()]))
        .map(|(i, _)| i)
        .collect()
}

/// The syntactic monoid: the transition monoid modulo the syntactic
/// congruence of the accepting subset. Errors on the empty language.
pub fn syntactic_monoid(d: &Dfa) -> Result<FiniteAlgebra> {
    let tm = transition_monoid(d);
    let w = accepting_subset(d, &tm);
    if w.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let cong = syntactic_congruence(tm.algebra(), &w)?;
    let (quotient, _) = quotient_algebra(tm.algebra(), &cong)?;
    let mut q = quotient;
    q = rename(q, format!("{}_syn", d.name()));
    Ok(q)
}

fn rename(a: FiniteAlgebra, name: String) -> FiniteAlgebra {
    FiniteAlgebra::new(
        name,
        a.size(),
        a.ops().to_vec(),
        a.consts().to_vec(),
    )
    .expect("already validated")
}

/// Classical minimization: drop unreachable states, then refine by
/// acceptance and successor classes until stable. States of the result
/// are numbered by first appearance in reachability (BFS) order, so the
/// start state is 0.
pub fn minimize_dfa(d: &Dfa) -> Dfa {
    let q = d.state_count();
    let symbols = d.alphabet().len();
    // reachable states in BFS order
    let mut order: Vec<usize> = Vec::new();
    let mut pos = vec![usize::MAX; q];
    order.push(d.start());
    pos[d.start()] = 0;
    let mut head = 0;
    while head < order.len() {
        let s = order[head];
        head += 1;
        for a in 0..symbols {
            let t = d.step(s, a);
            if pos[t] == usize::MAX {
                pos[t] = order.len();
                order.push(t);
            }
        }
    }
    let k = order.len();
    // Moore refinement over the reachable part
    let initial: Vec<usize> = order
        .iter()
        .map(|&s| usize::from(d.is_final(s)))
        .collect();
    let mut current = Partition::from_labels(&initial);
    loop {
        let mut keys: Vec<Vec<usize>> = Vec::with_capacity(k);
        for i in 0..k {
            let mut key = vec![current.label(i)];
            for a in 0..symbols {
                key.push(current.label(pos[d.step(order[i], a)]));
            }
            keys.push(key);
        }
        let mut seen: std::collections::HashMap<&[usize], usize> =
            std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(k);
        for key in &keys {
            let fresh = seen.len();
            labels.push(*seen.entry(key.as_slice()).or_insert(fresh));
        }
        let refined = Partition::from_labels(&labels);
        if refined == current {
            break;
        }
        current = refined;
    }
    let classes = current.num_classes();
    let mut trans = vec![vec![0usize; classes]; symbols];
    for i in 0..k {
        let c = current.label(i);
        for (a, row) in trans.iter_mut().enumerate() {
            row[c] = current.label(pos[d.step(order[i], a)]);
        }
    }
    let finals: Vec<usize> = (0..classes)
        .filter(|&c| {
            let rep = (0..k).find(|&i| current.label(i) == c).expect("class nonempty");
            d.is_final(order[rep])
        })
        .collect();
    Dfa::new(
        format!("{}_min", d.name()),
        classes,
        d.alphabet().to_vec(),
        trans,
        current.label(0),
        finals,
    )
    .expect("minimization preserves validity")
}

/// Monoid isomorphism by backtracking over element images. Both algebras
/// must expose `mul`/`e`; feasible for the corpus sizes.
pub fn monoids_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<bool> {
    let view = |x: &FiniteAlgebra| -> Result<(usize, usize)> {
        let mul = x
            .op_index("mul")
            .filter(|&i| x.ops()[i].arity == 2)
            .ok_or_else(|| Error::SignatureMismatch("expected a binary op `mul`".into()))?;
        let e = x
            .const_value("e")
            .ok_or_else(|| Error::SignatureMismatch("expected a const `e`".into()))?;
        Ok((mul, e))
    };
    let (mul_a, e_a) = view(a)?;
    let (mul_b, e_b) = view(b)?;
    if a.size() != b.size() {
        return Ok(false);
    }
    let n = a.size();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[e_a] = e_b;
    used[e_b] = true;

    fn consistent(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        mul_a: usize,
        mul_b: usize,
        image: &[usize],
    ) -> bool {
        let n = a.size();
        for x in 0..n {
            if image[x] == usize::MAX {
                continue;
            }
            for y in 0..n {
                if image[y] == usize::MAX {
                    continue;
                }
                let p = a.apply(mul_a, &[x, y]);
                if image[p] == usize::MAX {
                    continue;
                }
                if b.apply(mul_b, &[image[x], image[y]]) != image[p] {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        mul_a: usize,
        mul_b: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = a.size();
        let Some(x) = (next..n).find(|&x| image[x] == usize::MAX) else {
            return true;
        };
        for y in 0..n {
            if used[y] {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if consistent(a, b, mul_a, mul_b, image)
                && search(a, b, mul_a, mul_b, image, used, x + 1)
            {
                return true;
            }
            image[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    Ok(consistent(a, b, mul_a, mul_b, &image)
        && search(a, b, mul_a, mul_b, &mut image, &mut used, 0))
}
