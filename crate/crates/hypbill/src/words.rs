//! Billiard words: grammar rules, vertex-sequence equivalence and the
//! correspondence between words and tiling paths.
//!
//! Letters are `1..=p`. Two letters are *adjacent* when they differ by one
//! cyclically, so `p` and `1` are adjacent. An *alternation* of length `L`
//! is a factor `a b a b ...` of `L` letters with `a`, `b` adjacent; a
//! single letter counts as an alternation of length 1.
//!
//! Adjacency follows the cyclic order of labels around the base tile. The
//! standard order is `1, 2, ..., p`; the `*_in` variants accept any other
//! cyclic labeling through a [`LetterOrder`].

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::TilingPath;
use crate::tiling::{EdgeLabeling, Frame, TilingGraph, TilingParams};

/// Default cap on the size of a word class closure.
pub const DEFAULT_CLASS_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<u8>,
    pub params: TilingParams,
}

impl Word {
    pub fn new(letters: Vec<u8>, params: TilingParams) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as u32 > params.p) {
            return Err(Error::Parameter(format!(
                "letter {bad} outside the alphabet 1..={}",
                params.p
            )));
        }
        Ok(Word { letters, params })
    }

    /// Parses digits (`"1212"`) or, for alphabets past 9, a comma or
    /// space separated list (`"10,3,10"`).
    pub fn parse(s: &str, params: TilingParams) -> Result<Self> {
        let s = s.trim();
        let letters: Result<Vec<u8>> = if s.contains([',', ' ']) {
            s.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| Error::Parameter(format!("bad letter {t:?}")))
                })
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parameter(format!("bad letter {c:?}")))
                })
                .collect()
        };
        Word::new(letters?, params)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.params.p > 9 { "," } else { "" };
        let parts: Vec<String> = self.letters.iter().map(u8::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

/// The cyclic order of the letters around the base tile.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LetterOrder {
    order: Vec<u8>,
    rank: Vec<u8>,
}

impl LetterOrder {
    pub fn standard(p: u32) -> Self {
        LetterOrder::new((1..=p as u8).collect(), p).unwrap()
    }

    /// `order` lists the letters counter-clockwise around the base tile and
    /// must be a permutation of `1..=p`.
    pub fn new(order: Vec<u8>, p: u32) -> Result<Self> {
        let mut rank = vec![0u8; p as usize + 1];
        if order.len() != p as usize {
            return Err(Error::Parameter(format!("letter order needs {p} letters")));
        }
        for (i, &l) in order.iter().enumerate() {
            if l == 0 || l as u32 > p || rank[l as usize] != 0 {
                return Err(Error::Parameter(format!(
                    "letter order {order:?} is not a permutation of 1..={p}"
                )));
            }
            rank[l as usize] = i as u8 + 1;
        }
        Ok(LetterOrder { order, rank })
    }

    pub fn is_standard(&self) -> bool {
        self.order.iter().enumerate().all(|(i, &l)| l as usize == i + 1)
    }

    /// Renames letters to their positions in the order.
    pub fn to_standard(&self, w: &[u8]) -> Vec<u8> {
        w.iter().map(|&l| self.rank[l as usize]).collect()
    }

    pub fn from_standard(&self, w: &[u8]) -> Vec<u8> {
        w.iter().map(|&k| self.order[k as usize - 1]).collect()
    }
}

/// Which rule family to check a word against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleSet {
    /// `q` even: E1 and E2.
    E,
    /// `q` odd, necessary conditions: O1 and O2.
    OUpper,
    /// `q` odd, sufficient conditions.
    OLower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    E1,
    E2,
    O1,
    O2,
    OLower,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::E1 => "E1",
            Rule::E2 => "E2",
            Rule::O1 => "O1",
            Rule::O2 => "O2",
            Rule::OLower => "O-lower",
        })
    }
}

/// A forbidden factor: its rule, 1-based start position and length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub position: usize,
    pub length: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub admissible: bool,
    pub violation: Option<Violation>,
}

pub fn letters_adjacent(a: u8, b: u8, p: u32) -> bool {
    let p = p as i32;
    let d = (a as i32 - b as i32).rem_euclid(p);
    d == 1 || d == p - 1
}

/// Length of the longest alternation ending at each position.
fn alternation_runs(w: &[u8], p: u32) -> Vec<usize> {
    let mut run = Vec::with_capacity(w.len());
    for i in 0..w.len() {
        let r = if i == 0 || !letters_adjacent(w[i - 1], w[i], p) {
            1
        } else if i >= 2 && run[i - 1] >= 2 && w[i - 2] == w[i] {
            run[i - 1] + 1
        } else {
            2
        };
        run.push(r);
    }
    run
}

/// Forbidden alternation length for a rule set, together with the rule ids
/// reported for repeated letters and for alternations.
fn rule_shape(params: TilingParams, rules: RuleSet) -> Result<(usize, Rule, Rule)> {
    let q = params.q as usize;
    match (rules, params.q_even()) {
        (RuleSet::E, true) => Ok((q / 2 + 1, Rule::E1, Rule::E2)),
        (RuleSet::OUpper, false) => Ok(((q + 3) / 2, Rule::O1, Rule::O2)),
        (RuleSet::OLower, false) => Ok(((q - 1) / 2, Rule::O1, Rule::OLower)),
        _ => Err(Error::Parameter(format!(
            "rule set {rules:?} does not match the parity of q = {q}"
        ))),
    }
}

/// First violation in `w`: the forbidden factor that ends earliest, and the
/// shortest one among those.
pub fn first_violation(w: &[u8], params: TilingParams, rules: RuleSet) -> Result<Option<Violation>> {
    let (alt_len, repeat_rule, alt_rule) = rule_shape(params, rules)?;
    let runs = alternation_runs(w, params.p);
    for i in 0..w.len() {
        let mut found: Option<Violation> = None;
        if i >= 1 && w[i - 1] == w[i] {
            found = Some(Violation {
                rule: repeat_rule,
                position: i,
                length: 2,
            });
        }
        if runs[i] >= alt_len && found.map_or(true, |v| v.length > alt_len) {
            found = Some(Violation {
                rule: alt_rule,
                position: i + 2 - alt_len,
                length: alt_len,
            });
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

pub fn check_admissible(w: &Word, rules: RuleSet) -> Result<Verdict> {
    check_admissible_in(w, rules, &LetterOrder::standard(w.params.p))
}

pub fn check_admissible_in(w: &Word, rules: RuleSet, order: &LetterOrder) -> Result<Verdict> {
    let violation = first_violation(&order.to_standard(&w.letters), w.params, rules)?;
    Ok(Verdict {
        admissible: violation.is_none(),
        violation,
    })
}

fn swap_neighbors(w: &[u8], p: u32, h: usize) -> Vec<Vec<u8>> {
    if w.len() < h {
        return Vec::new();
    }
    let runs = alternation_runs(w, p);
    let mut out = Vec::new();
    for end in h - 1..w.len() {
        if runs[end] < h {
            continue;
        }
        let start = end + 1 - h;
        let (a, b) = (w[start], if h >= 2 { w[start + 1] } else { continue });
        let mut v = w.to_vec();
        for x in &mut v[start..=end] {
            *x = if *x == a { b } else { a };
        }
        out.push(v);
    }
    out
}

/// Words reachable by exchanging one vertex sequence, an alternating factor
/// of length `q/2`, for its opposite phase.
pub fn vertex_sequence_neighbors(w: &Word) -> Result<Vec<Word>> {
    vertex_sequence_neighbors_in(w, &LetterOrder::standard(w.params.p))
}

pub fn vertex_sequence_neighbors_in(w: &Word, order: &LetterOrder) -> Result<Vec<Word>> {
    if !w.params.q_even() {
        return Err(Error::Unsupported("vertex sequences need even q".into()));
    }
    let mut ns: Vec<Vec<u8>> =
        swap_neighbors(&order.to_standard(&w.letters), w.params.p, w.params.q as usize / 2)
            .into_iter()
            .map(|v| order.from_standard(&v))
            .collect();
    ns.sort();
    ns.dedup();
    Ok(ns
        .into_iter()
        .map(|letters| Word {
            letters,
            params: w.params,
        })
        .collect())
}

/// The closure of a word under vertex-sequence exchanges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordClass {
    /// All members in lexicographic order.
    pub members: Vec<Word>,
    pub canonical: Word,
    pub class_admissible: bool,
    /// An inadmissible member closest to the input word (ties broken
    /// lexicographically) with its first violation.
    pub witness: Option<(Word, Violation)>,
}

impl WordClass {
    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }
}

/// Breadth-first closure; members are returned layer by layer from `start`.
fn closure(start: &[u8], p: u32, h: usize, cap: usize) -> Result<Vec<Vec<Vec<u8>>>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::from([start.to_vec()]);
    let mut layers = vec![vec![start.to_vec()]];
    loop {
        let mut next = Vec::new();
        for w in layers.last().unwrap() {
            for n in swap_neighbors(w, p, h) {
                if seen.insert(n.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Resource(format!(
                            "word class exceeds {cap} members"
                        )));
                    }
                    next.push(n);
                }
            }
        }
        if next.is_empty() {
            return Ok(layers);
        }
        next.sort();
        layers.push(next);
    }
}

pub fn word_class(w: &Word, cap: usize) -> Result<WordClass> {
    word_class_in(w, cap, &LetterOrder::standard(w.params.p))
}

pub fn word_class_in(w: &Word, cap: usize, order: &LetterOrder) -> Result<WordClass> {
    if !w.params.q_even() {
        return Err(Error::Unsupported("word classes need even q".into()));
    }
    let params = w.params;
    let layers = closure(&order.to_standard(&w.letters), params.p, params.q as usize / 2, cap)?;
    let mut witness = None;
    for layer in &layers {
        let mut bad: Vec<(Vec<u8>, Violation)> = Vec::new();
        for m in layer {
            if let Some(v) = first_violation(m, params, RuleSet::E)? {
                bad.push((order.from_standard(m), v));
            }
        }
        if let Some((letters, v)) = bad.into_iter().min_by(|a, b| a.0.cmp(&b.0)) {
            witness = Some((Word { letters, params }, v));
            break;
        }
    }
    let mut members: Vec<Word> = layers
        .into_iter()
        .flatten()
        .map(|m| Word {
            letters: order.from_standard(&m),
            params,
        })
        .collect();
    members.sort();
    Ok(WordClass {
        canonical: members[0].clone(),
        class_admissible: witness.is_none(),
        members,
        witness,
    })
}

/// Admissible word classes of one length, by canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEnumeration {
    pub length: usize,
    pub count: u64,
    pub representatives: Vec<Word>,
}

/// Enumerates admissible word classes of length `n` by depth-first search
/// over admissible words, closing each new word into its class.
///
/// `budget` bounds the total number of words visited.
pub fn enumerate_admissible_classes(
    params: TilingParams,
    n: usize,
    budget: usize,
) -> Result<ClassEnumeration> {
    if !params.q_even() {
        return Err(Error::Unsupported("word classes need even q".into()));
    }
    let p = params.p;
    let h = params.q as usize / 2;
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    let mut reps: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut work = 0usize;
    let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        work += 1;
        if work > budget {
            return Err(Error::Resource(format!(
                "class enumeration exceeded a budget of {budget} words"
            )));
        }
        if w.len() == n {
            if visited.contains(&w) {
                continue;
            }
            let members: Vec<Vec<u8>> = closure(&w, p, h, budget)?.into_iter().flatten().collect();
            work += members.len();
            let ok = members
                .iter()
                .all(|m| first_violation(m, params, RuleSet::E).map_or(false, |v| v.is_none()));
            if ok {
                reps.insert(members.iter().min().unwrap().clone());
            }
            visited.extend(members);
            continue;
        }
        for l in (1..=p as u8).rev() {
            let mut v = w.clone();
            v.push(l);
            let runs = alternation_runs(&v, p);
            let k = v.len() - 1;
            let repeat = k >= 1 && v[k - 1] == v[k];
            if !repeat && runs[k] <= h {
                stack.push(v);
            }
        }
    }
    Ok(ClassEnumeration {
        length: n,
        count: reps.len() as u64,
        representatives: reps
            .into_iter()
            .map(|letters| Word { letters, params })
            .collect(),
    })
}

/// Follows a word from `base`, reflecting the label frame across each
/// crossed edge. `frame` labels the base tile; for even `q` the result
/// agrees with the global labeling that starts from the same frame.
pub fn word_to_path(w: &Word, g: &TilingGraph, base: u32, frame: Frame) -> Result<TilingPath> {
    if w.params != g.params {
        return Err(Error::Parameter("word and tiling have different (p, q)".into()));
    }
    let p = g.p() as usize;
    let mut tiles = vec![base];
    let mut edges = Vec::with_capacity(w.len());
    let mut cur = base;
    let mut f = frame;
    for &k in &w.letters {
        if !g.tile_complete(cur) {
            return Err(Error::OutOfDepth {
                needed: g.tile_distance[cur as usize].unwrap_or(u32::MAX),
                available: g.trusted_radius(),
            });
        }
        let ja = f.index_of(k, p);
        let e = g.tiles[cur as usize].edges[ja];
        let next = g.other_tile(e, cur).ok_or(Error::OutOfDepth {
            needed: g.tile_distance[cur as usize].unwrap_or(0) + 1,
            available: g.trusted_radius(),
        })?;
        let jb = g.edge_index_in_tile(next, e).unwrap();
        f = f.reflect(ja, jb, p);
        edges.push(e);
        tiles.push(next);
        cur = next;
    }
    Ok(TilingPath { tiles, edges })
}

/// Reads the word of a path using path-local frames starting from `frame`.
pub fn path_to_word(path: &TilingPath, g: &TilingGraph, frame: Frame) -> Result<Word> {
    let p = g.p() as usize;
    let mut f = frame;
    let mut letters = Vec::with_capacity(path.edges.len());
    for (i, &e) in path.edges.iter().enumerate() {
        let (a, b) = (path.tiles[i], path.tiles[i + 1]);
        let ja = g
            .edge_index_in_tile(a, e)
            .ok_or_else(|| Error::Inconsistent(format!("edge {e} is not on tile {a}")))?;
        letters.push(f.label(ja, p));
        let jb = g
            .edge_index_in_tile(b, e)
            .ok_or_else(|| Error::Inconsistent(format!("edge {e} is not on tile {b}")))?;
        f = f.reflect(ja, jb, p);
    }
    Word::new(letters, g.params)
}

/// Reads the word of a path from a global labeling (even `q`).
pub fn path_to_word_labeled(path: &TilingPath, g: &TilingGraph, labels: &EdgeLabeling) -> Result<Word> {
    let letters: Option<Vec<u8>> = path.edges.iter().map(|&e| labels.label(e)).collect();
    let letters = letters.ok_or(Error::OutOfDepth {
        needed: path.len() as u32,
        available: g.trusted_radius(),
    })?;
    Word::new(letters, g.params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, p: u32, q: u32) -> Word {
        Word::parse(s, TilingParams::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn repeated_letters_and_long_alternations() {
        let v = check_admissible(&word("11", 4, 8), RuleSet::E).unwrap();
        assert_eq!(
            v.violation,
            Some(Violation {
                rule: Rule::E1,
                position: 1,
                length: 2
            })
        );
        assert!(check_admissible(&word("1212", 4, 8), RuleSet::E).unwrap().admissible);
        let v = check_admissible(&word("12121", 4, 8), RuleSet::E).unwrap();
        assert_eq!(
            v.violation,
            Some(Violation {
                rule: Rule::E2,
                position: 1,
                length: 5
            })
        );
    }

    #[test]
    fn cyclic_adjacency() {
        assert!(letters_adjacent(4, 1, 4));
        assert!(!letters_adjacent(4, 1, 8));
        assert!(!check_admissible(&word("41414", 4, 8), RuleSet::E).unwrap().admissible);
    }

    #[test]
    fn odd_rules() {
        let upper = |s| check_admissible(&word(s, 4, 7), RuleSet::OUpper).unwrap();
        assert!(upper("1212").admissible);
        assert_eq!(upper("12121").violation.unwrap().rule, Rule::O2);
        let lower = check_admissible(&word("1213", 4, 7), RuleSet::OLower).unwrap();
        assert_eq!(
            lower.violation,
            Some(Violation {
                rule: Rule::OLower,
                position: 1,
                length: 3
            })
        );
        assert!(check_admissible(&word("1212", 4, 7), RuleSet::E).is_err());
        assert!(check_admissible(&word("1212", 4, 8), RuleSet::OUpper).is_err());
    }

    #[test]
    fn neighbors() {
        let ns = vertex_sequence_neighbors(&word("1212", 4, 8)).unwrap();
        assert_eq!(ns, vec![word("2121", 4, 8)]);
        assert!(vertex_sequence_neighbors(&word("123", 4, 8)).unwrap().is_empty());
        // 3 and 1 are only adjacent when the square is labeled 1, 2, 4, 3
        let order = LetterOrder::new(vec![1, 2, 4, 3], 4).unwrap();
        let ns = vertex_sequence_neighbors_in(&word("12123131", 4, 8), &order).unwrap();
        assert!(ns.contains(&word("12121313", 4, 8)));
        let ns = vertex_sequence_neighbors(&word("12123131", 4, 8)).unwrap();
        assert!(!ns.contains(&word("12121313", 4, 8)));
    }

    #[test]
    fn class_witness() {
        let order = LetterOrder::new(vec![1, 2, 4, 3], 4).unwrap();
        let c = word_class_in(&word("12123131", 4, 8), DEFAULT_CLASS_CAP, &order).unwrap();
        assert!(!c.class_admissible);
        assert_eq!(c.witness.unwrap().0, word("12121313", 4, 8));
        let c = word_class(&word("12124141", 4, 8), DEFAULT_CLASS_CAP).unwrap();
        assert!(!c.class_admissible);
        assert_eq!(c.witness.unwrap().0, word("12121414", 4, 8));
        let single = word_class(&word("1231", 4, 8), DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(single.members.len(), 1);
        assert!(single.class_admissible);
    }

    #[test]
    fn small_enumerations() {
        let t = TilingParams::new(4, 8).unwrap();
        assert_eq!(enumerate_admissible_classes(t, 0, 1000).unwrap().count, 1);
        assert_eq!(enumerate_admissible_classes(t, 1, 1000).unwrap().count, 4);
        assert!(matches!(
            enumerate_admissible_classes(t, 6, 10),
            Err(Error::Resource(_))
        ));
    }
}
