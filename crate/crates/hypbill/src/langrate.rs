//! Growth rates of languages given by finitely many forbidden words.
//!
//! Letters here are `0..p`, matching the worked examples that use a
//! zero-based alphabet. The growth rate of a language is the Perron root of
//! its de Bruijn transfer graph.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::tiling_growth_rate;
use crate::tiling::TilingParams;

/// Which forbidden set to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LanguageRule {
    /// `q` odd: repeated letters and alternations of length `(q+3)/2`.
    OUpper,
    /// `q` odd: repeated letters and alternations of length `(q-1)/2`.
    OLower,
    /// `q` even: repeated letters and alternations of length `q/2 + 1`.
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenLanguage {
    pub alphabet: u32,
    pub forbidden: BTreeSet<Vec<u8>>,
    pub max_len: usize,
}

impl ForbiddenLanguage {
    pub fn new(alphabet: u32, forbidden: BTreeSet<Vec<u8>>) -> Result<Self> {
        if forbidden.is_empty() {
            return Err(Error::Parameter("forbidden set is empty".into()));
        }
        if forbidden.iter().flatten().any(|&l| l as u32 >= alphabet) {
            return Err(Error::Parameter("forbidden word outside the alphabet".into()));
        }
        let max_len = forbidden.iter().map(Vec::len).max().unwrap();
        Ok(ForbiddenLanguage {
            alphabet,
            forbidden,
            max_len,
        })
    }

    /// True if some forbidden word is a suffix of `w`.
    fn forbidden_suffix(&self, w: &[u8]) -> bool {
        (1..=w.len().min(self.max_len)).any(|k| self.forbidden.contains(&w[w.len() - k..]))
    }

    /// True if `w` contains no forbidden factor.
    pub fn allows(&self, w: &[u8]) -> bool {
        (1..=w.len()).all(|end| !self.forbidden_suffix(&w[..end]))
    }
}

fn alternations(p: u32, len: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    for a in 0..p as u8 {
        if len == 1 {
            out.insert(vec![a]);
            continue;
        }
        for b in [(a + 1) % p as u8, (a + p as u8 - 1) % p as u8] {
            out.insert((0..len).map(|i| if i % 2 == 0 { a } else { b }).collect());
        }
    }
    out
}

pub fn forbidden_set(params: TilingParams, rule: LanguageRule) -> Result<ForbiddenLanguage> {
    let q = params.q as usize;
    let alt = match (rule, params.q_even()) {
        (LanguageRule::E, true) => q / 2 + 1,
        (LanguageRule::OUpper, false) => (q + 3) / 2,
        (LanguageRule::OLower, false) => (q - 1) / 2,
        _ => {
            return Err(Error::Parameter(format!(
                "rule {rule:?} does not match the parity of q = {q}"
            )))
        }
    };
    let mut f = alternations(params.p, alt);
    for a in 0..params.p as u8 {
        f.insert(vec![a, a]);
    }
    ForbiddenLanguage::new(params.p, f)
}

/// Transfer graph on factor-free words of length `m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeBruijnGraph {
    pub word_len: usize,
    /// Vertex words in lexicographic order.
    pub vertices: Vec<Vec<u8>>,
    /// Edges as index pairs, sorted.
    pub edges: Vec<(u32, u32)>,
}

impl DeBruijnGraph {
    pub fn index_of(&self, w: &[u8]) -> Option<u32> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(w)).ok().map(|i| i as u32)
    }

    pub fn has_edge(&self, u: &[u8], v: &[u8]) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.edges.binary_search(&(a, b)).is_ok(),
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dense 0/1 transition matrix.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0u8; n]; n];
        for &(a, b) in &self.edges {
            m[a as usize][b as usize] = 1;
        }
        m
    }
}

fn allowed_words(f: &ForbiddenLanguage, len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() == len {
            out.push(w);
            continue;
        }
        for l in (0..f.alphabet as u8).rev() {
            let mut v = w.clone();
            v.push(l);
            if !f.forbidden_suffix(&v) {
                stack.push(v);
            }
        }
    }
    out
}

pub fn debruijn(f: &ForbiddenLanguage) -> Result<DeBruijnGraph> {
    let m = f.max_len;
    if m < 2 {
        return Err(Error::Precondition("forbidden words must have length at least 2".into()));
    }
    let vertices = allowed_words(f, m - 1);
    let index: HashMap<&[u8], u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i as u32))
        .collect();
    let mut edges = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        for l in 0..f.alphabet as u8 {
            let mut amalgam = u.clone();
            amalgam.push(l);
            if f.forbidden_suffix(&amalgam) {
                continue;
            }
            if let Some(&j) = index.get(&amalgam[1..]) {
                edges.push((i as u32, j));
            }
        }
    }
    edges.sort_unstable();
    Ok(DeBruijnGraph {
        word_len: m - 1,
        vertices,
        edges,
    })
}

const MAX_ITERATIONS: usize = 1_000_000;

/// Spectral radius of one strongly connected component, by power iteration
/// on `A + I` with Collatz-Wielandt bounds. The bracket cannot shrink below
/// a few ulps of the rate, so smaller tolerances are raised to that floor.
fn component_radius(nodes: &[usize], adj: &[Vec<usize>], tol: f64) -> Result<f64> {
    let local: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let succ: Vec<Vec<usize>> = nodes
        .iter()
        .map(|v| adj[*v].iter().filter_map(|w| local.get(w).copied()).collect())
        .collect();
    if succ.iter().all(Vec::is_empty) {
        return Ok(0.0);
    }
    let n = nodes.len();
    let mut x = vec![1.0; n];
    for _ in 0..MAX_ITERATIONS {
        let mut y = x.clone();
        for (i, ss) in succ.iter().enumerate() {
            for &j in ss {
                y[i] += x[j];
            }
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if hi - lo < tol.max(8.0 * f64::EPSILON * hi) {
            return Ok(0.5 * (lo + hi) - 1.0);
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Err(Error::Numeric(format!(
        "power iteration did not reach tolerance {tol} in {MAX_ITERATIONS} steps"
    )))
}

/// Perron root of the transfer graph: the largest spectral radius over its
/// strongly connected components. An empty graph has rate 0.
pub fn perron_rate(g: &DeBruijnGraph, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Parameter("tolerance must be positive".into()));
    }
    let n = g.vertices.len();
    let mut dg: DiGraph<(), ()> = DiGraph::with_capacity(n, g.edges.len());
    let nodes: Vec<_> = (0..n).map(|_| dg.add_node(())).collect();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &g.edges {
        dg.add_edge(nodes[a as usize], nodes[b as usize], ());
        adj[a as usize].push(b as usize);
    }
    let mut best = 0.0f64;
    for comp in tarjan_scc(&dg) {
        let idx: Vec<usize> = comp.iter().map(|v| v.index()).collect();
        best = best.max(component_radius(&idx, &adj, tol)?);
    }
    Ok(best)
}

/// Exact number of words of length `n` avoiding every forbidden factor.
pub fn word_count(f: &ForbiddenLanguage, n: usize) -> Result<BigUint> {
    let k = f.max_len.saturating_sub(1);
    if n <= k || f.max_len < 2 {
        return Ok(BigUint::from(allowed_words(f, n).len()));
    }
    let g = debruijn(f)?;
    let mut counts = vec![BigUint::one(); g.vertices.len()];
    for _ in k..n {
        let mut next = vec![BigUint::zero(); counts.len()];
        for &(a, b) in &g.edges {
            next[b as usize] += &counts[a as usize];
        }
        counts = next;
    }
    Ok(counts.into_iter().sum())
}

/// Growth-rate bounds for odd `q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub p: u32,
    pub q: u32,
    /// Lower bound from the sufficient rules; never below 1.
    pub ell: f64,
    /// Perron rate of the lower language itself, possibly 0.
    pub lower_language_rate: f64,
    /// `alpha^((q-1)/(q+1))`.
    pub alpha_pow: f64,
    pub alpha: f64,
    pub u: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ComplexityReport {
    /// `q` even: the language growth rate equals `alpha`. The rate of the
    /// rule-E word language is reported alongside; it counts words rather
    /// than classes and so is an upper bound only.
    Even {
        p: u32,
        q: u32,
        alpha: f64,
        e_language_rate: f64,
    },
    Odd(BoundsReport),
}

pub fn language_rate(params: TilingParams, rule: LanguageRule, tol: f64) -> Result<f64> {
    let f = forbidden_set(params, rule)?;
    perron_rate(&debruijn(&f)?, tol)
}

/// The growth rate (even `q`) or its known bounds (odd `q`).
///
/// The lower language can be empty (for `q = 3` every single letter is
/// forbidden); its rate is then 0, and `ell` is reported as 1 because
/// languages of billiard words are infinite.
pub fn complexity_report(params: TilingParams, tol: f64) -> Result<ComplexityReport> {
    let alpha = tiling_growth_rate(params, tol.min(1e-12))?.alpha;
    let (p, q) = (params.p, params.q);
    if params.q_even() {
        return Ok(ComplexityReport::Even {
            p,
            q,
            alpha,
            e_language_rate: language_rate(params, LanguageRule::E, tol)?,
        });
    }
    let lower = language_rate(params, LanguageRule::OLower, tol)?;
    let u = language_rate(params, LanguageRule::OUpper, tol)?;
    Ok(ComplexityReport::Odd(BoundsReport {
        p,
        q,
        ell: lower.max(1.0),
        lower_language_rate: lower,
        alpha_pow: alpha.powf((q as f64 - 1.0) / (q as f64 + 1.0)),
        alpha,
        u,
    }))
}
