//! Reduced signatures, crystal operators and the combinatorics built on
//! them: restricted multipartitions, the crystal graph, the Mullineux map
//! and extremal sequences of characters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{Params, Residue, RootElement};
use crate::character::QCharacter;
use crate::error::{Error, Result};
use crate::laurent::{quantum_factorial, LaurentPoly};
use crate::multipartition::{Multipartition, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

/// Addable (`+`) and removable (`-`) `i`-nodes, top to bottom, after
/// cancelling every `-` that sits left of a `+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSignature {
    pub items: Vec<(Node, Sign)>,
}

impl ReducedSignature {
    pub fn new(mu: &Multipartition, params: &Params, i: Residue) -> Self {
        let (rem, add) = mu.i_nodes(params, params.reduce(i));
        let mut items: Vec<(Node, Sign)> = rem
            .into_iter()
            .map(|n| (n, Sign::Minus))
            .chain(add.into_iter().map(|n| (n, Sign::Plus)))
            .collect();
        items.sort_by(|a, b| {
            if a.0.is_above(&b.0) {
                std::cmp::Ordering::Less
            } else if b.0.is_above(&a.0) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        // Unmatched minuses wait on the stack; a plus cancels the nearest one.
        let mut open: Vec<usize> = Vec::new();
        for k in 0..items.len() {
            match items[k].1 {
                Sign::Minus => open.push(k),
                Sign::Plus => {
                    if let Some(m) = open.pop() {
                        items[m].1 = Sign::Zero;
                        items[k].1 = Sign::Zero;
                    }
                }
                Sign::Zero => {}
            }
        }
        Self { items }
    }

    pub fn epsilon(&self) -> usize {
        self.items.iter().filter(|(_, s)| *s == Sign::Minus).count()
    }

    pub fn phi(&self) -> usize {
        self.items.iter().filter(|(_, s)| *s == Sign::Plus).count()
    }

    /// Node of the leftmost surviving `-`.
    pub fn good_node(&self) -> Option<Node> {
        self.items.iter().find(|(_, s)| *s == Sign::Minus).map(|(n, _)| *n)
    }

    /// Node of the rightmost surviving `+`.
    pub fn cogood_node(&self) -> Option<Node> {
        self.items.iter().rev().find(|(_, s)| *s == Sign::Plus).map(|(n, _)| *n)
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.items.iter().map(|(_, s)| *s).collect()
    }
}

impl fmt::Display for ReducedSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .items
            .iter()
            .map(|(n, s)| {
                let c = match s {
                    Sign::Plus => '+',
                    Sign::Minus => '-',
                    Sign::Zero => '0',
                };
                format!("{c}{n}")
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn epsilon(mu: &Multipartition, params: &Params, i: Residue) -> usize {
    ReducedSignature::new(mu, params, i).epsilon()
}

pub fn phi(mu: &Multipartition, params: &Params, i: Residue) -> usize {
    ReducedSignature::new(mu, params, i).phi()
}

/// Removes the good `i`-node, if any.
pub fn e_tilde(mu: &Multipartition, params: &Params, i: Residue) -> Option<Multipartition> {
    let node = ReducedSignature::new(mu, params, i).good_node()?;
    Some(mu.remove_node(&node).expect("good node is removable"))
}

/// Adds the cogood `i`-node, if any.
pub fn f_tilde(mu: &Multipartition, params: &Params, i: Residue) -> Option<Multipartition> {
    let node = ReducedSignature::new(mu, params, i).cogood_node()?;
    Some(mu.add_node(&node).expect("cogood node is addable"))
}

/// Residues worth trying with `f_tilde`: those of addable nodes.
fn addable_residues(mu: &Multipartition, params: &Params) -> Vec<Residue> {
    let mut r: Vec<Residue> = mu.addable_nodes().iter().map(|n| params.residue(n).expect("in level")).collect();
    r.sort_unstable();
    r.dedup();
    r
}

fn removable_residues(mu: &Multipartition, params: &Params) -> Vec<Residue> {
    let mut r: Vec<Residue> = mu.removable_nodes().iter().map(|n| params.residue(n).expect("in level")).collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// Descends by good nodes. Every `e_tilde` stays inside the connected
/// component, so `mu` is restricted exactly when the descent reaches the
/// empty multipartition.
pub fn is_restricted(mu: &Multipartition, params: &Params) -> bool {
    let mut cur = mu.clone();
    loop {
        if cur.is_empty() {
            return true;
        }
        match removable_residues(&cur, params).into_iter().find_map(|i| e_tilde(&cur, params, i)) {
            Some(next) => cur = next,
            None => return false,
        }
    }
}

/// Edges `(source, target, i)` with `target = f_tilde_i(source)`, sorted.
type Edges = Vec<(Multipartition, Multipartition, Residue)>;

fn bfs(d: usize, params: &Params) -> (Vec<Vec<Multipartition>>, Edges) {
    let mut layers = vec![vec![Multipartition::empty(params.level())]];
    let mut edges = Vec::new();
    for _ in 0..d {
        let last = layers.last().expect("nonempty");
        let found: Vec<Edges> = last
            .par_iter()
            .map(|mu| {
                addable_residues(mu, params)
                    .into_iter()
                    .filter_map(|i| f_tilde(mu, params, i).map(|nu| (mu.clone(), nu, i)))
                    .collect()
            })
            .collect();
        let mut next = BTreeSet::new();
        for es in found {
            for (src, dst, i) in es {
                next.insert(dst.clone());
                edges.push((src, dst, i));
            }
        }
        layers.push(next.into_iter().rev().collect());
    }
    edges.sort_by(|a, b| (&b.0, a.2, &b.1).cmp(&(&a.0, b.2, &a.1)));
    (layers, edges)
}

/// Restricted multipartitions of size at most `d`, by size and then
/// lexicographically descending.
pub fn enumerate_restricted(d: usize, params: &Params) -> Vec<Multipartition> {
    bfs(d, params).0.into_iter().flatten().collect()
}

/// Restricted multipartitions of size exactly `d`, lexicographically descending.
pub fn restricted_of_size(d: usize, params: &Params) -> Vec<Multipartition> {
    bfs(d, params).0.pop().unwrap_or_default()
}

/// Restricted multipartitions of content `alpha`, lexicographically descending.
pub fn restricted_with_content(alpha: &RootElement, params: &Params) -> Vec<Multipartition> {
    restricted_of_size(alpha.height() as usize, params)
        .into_iter()
        .filter(|mu| &mu.content(params) == alpha)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalEdge {
    pub source: Multipartition,
    pub target: Multipartition,
    pub i: Residue,
}

/// The crystal of restricted multipartitions up to a given size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph {
    pub vertices: Vec<Multipartition>,
    pub edges: Vec<CrystalEdge>,
}

impl CrystalGraph {
    pub fn new(d: usize, params: &Params) -> Self {
        let (layers, edges) = bfs(d, params);
        Self {
            vertices: layers.into_iter().flatten().collect(),
            edges: edges
                .into_iter()
                .map(|(source, target, i)| CrystalEdge { source, target, i })
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for e in &self.edges {
            out.push_str(&format!("  \"{}\" -> \"{}\" [label=\"i={}\"];\n", e.source, e.target, e.i));
        }
        out.push_str("}\n");
        out
    }
}

/// Residues `i_1, ..., i_d` with `mu = f_{i_1} ... f_{i_d}` applied to the
/// empty multipartition (so `i_d` acts first). Removes good nodes, taking
/// the smallest residue available at each step.
pub fn good_node_path(mu: &Multipartition, params: &Params) -> Result<Vec<Residue>> {
    let mut path = Vec::with_capacity(mu.size());
    let mut cur = mu.clone();
    while !cur.is_empty() {
        let (i, next) = removable_residues(&cur, params)
            .into_iter()
            .find_map(|i| e_tilde(&cur, params, i).map(|n| (i, n)))
            .ok_or_else(|| Error::Domain(format!("{mu} is not restricted")))?;
        path.push(i);
        cur = next;
    }
    Ok(path)
}

/// Applies `f_tilde` along `path`, last entry first.
pub fn apply_path(path: &[Residue], params: &Params) -> Result<Multipartition> {
    let mut cur = Multipartition::empty(params.level());
    for &i in path.iter().rev() {
        cur = f_tilde(&cur, params, i)
            .ok_or_else(|| Error::Inconsistent(format!("f_{i} vanishes on {cur}")))?;
    }
    Ok(cur)
}

/// The Mullineux image: negate every residue of the good-node path.
pub fn mullineux(mu: &Multipartition, params: &Params) -> Result<Multipartition> {
    if params.level() != 1 {
        return Err(Error::Domain("the Mullineux map is defined at level one".into()));
    }
    let path = good_node_path(mu, params)?;
    let negated: Vec<Residue> = path.iter().map(|&i| params.reduce(-i)).collect();
    apply_path(&negated, params)
}

/// An extremal sequence `j_1^{m_1} ... j_n^{m_n}` and the multipartition
/// it labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalSequence {
    pub runs: Vec<(Residue, usize)>,
    pub mu: Multipartition,
}

impl ExtremalSequence {
    /// The runs written out as one residue sequence.
    pub fn sequence(&self) -> Vec<Residue> {
        self.runs.iter().flat_map(|&(j, m)| std::iter::repeat_n(j, m)).collect()
    }

    /// `[m_1]! ... [m_n]!`
    pub fn factorial(&self) -> LaurentPoly {
        self.runs
            .iter()
            .fold(LaurentPoly::one(), |acc, &(_, m)| acc * quantum_factorial(m as u32))
    }

    fn from_runs(runs: Vec<(Residue, usize)>, params: &Params) -> Result<Self> {
        let mut mu = Multipartition::empty(params.level());
        for &(j, m) in &runs {
            for _ in 0..m {
                mu = f_tilde(&mu, params, j)
                    .ok_or_else(|| Error::Inconsistent(format!("f_{j} vanishes on {mu} along an extremal sequence")))?;
            }
        }
        Ok(Self { runs, mu })
    }
}

/// Final residues of the supported sequences, with their trailing-run `epsilon`.
fn trailing_runs(ch: &QCharacter) -> BTreeMap<Residue, usize> {
    let mut out = BTreeMap::new();
    for (seq, _) in ch.iter() {
        if let Some(&j) = seq.last() {
            out.entry(j).or_insert_with(|| ch.epsilon(j));
        }
    }
    out
}

/// Builds an extremal sequence right to left. At each step it takes the
/// residue with the longest trailing run, breaking ties by the smallest
/// residue.
pub fn extremal_sequence(ch: &QCharacter, params: &Params) -> Result<ExtremalSequence> {
    if ch.is_zero() {
        return Err(Error::Domain("extremal sequence of the zero character".into()));
    }
    let mut cur = ch.clone();
    let mut runs = Vec::new();
    while cur.len() > 0 {
        let (j, m) = trailing_runs(&cur)
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("nonzero character");
        cur = cur.strip_trailing(j, m);
        runs.push((j, m));
    }
    runs.reverse();
    ExtremalSequence::from_runs(runs, params)
}

/// Every extremal sequence of `ch`, one per sequence of choices.
pub fn all_extremal_sequences(ch: &QCharacter, params: &Params) -> Result<Vec<ExtremalSequence>> {
    fn go(cur: &QCharacter, tail: &mut Vec<(Residue, usize)>, out: &mut Vec<Vec<(Residue, usize)>>) {
        if cur.len() == 0 {
            out.push(tail.iter().rev().copied().collect());
            return;
        }
        for (j, m) in trailing_runs(cur) {
            tail.push((j, m));
            go(&cur.strip_trailing(j, m), tail, out);
            tail.pop();
        }
    }
    if ch.is_zero() {
        return Err(Error::Domain("extremal sequence of the zero character".into()));
    }
    let mut all = Vec::new();
    go(ch, &mut Vec::new(), &mut all);
    all.into_iter().map(|r| ExtremalSequence::from_runs(r, params)).collect()
}

/// `[M : D(mu)]_q = qdim e(i) M / ([m_1]! ... [m_n]!)` for the extremal `i`.
pub fn multiplicity_along(ch: &QCharacter, ext: &ExtremalSequence) -> Result<LaurentPoly> {
    ch.coeff(&ext.sequence()).div_exact_or_err(&ext.factorial())
}

pub fn extremal_multiplicity(ch: &QCharacter, params: &Params) -> Result<(Multipartition, LaurentPoly)> {
    let ext = extremal_sequence(ch, params)?;
    let mult = multiplicity_along(ch, &ext)?;
    Ok((ext.mu, mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipartition::{is_restricted_closed_form, multipartitions, partitions};
    use crate::tableaux::specht_qcharacter;

    fn p(e: u32, k: &[i64]) -> Params {
        Params::new(e, k).unwrap()
    }

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn signature_examples() {
        let e2 = p(2, &[0]);
        let sig = ReducedSignature::new(&Multipartition::empty(1), &p(3, &[0]), 0);
        assert_eq!(sig.signs(), vec![Sign::Plus]);
        assert_eq!(ReducedSignature::new(&mp("2"), &e2, 1).signs(), vec![Sign::Zero, Sign::Zero]);
        assert_eq!(ReducedSignature::new(&mp("1,1"), &e2, 1).signs(), vec![Sign::Plus, Sign::Minus]);
        assert_eq!(epsilon(&mp("2"), &e2, 1), 0);
        assert_eq!(epsilon(&mp("1,1"), &e2, 1), 1);
        assert_eq!(e_tilde(&mp("1,1"), &e2, 1), Some(mp("1")));
        assert_eq!(f_tilde(&Multipartition::empty(1), &e2, 0), Some(mp("1")));
        assert_eq!(phi(&Multipartition::empty(1), &e2, 0), 1);
    }

    // Brute-force reduction: repeatedly cancel a '-' followed (after zeros) by '+'.
    fn reduce_naive(mut s: Vec<Sign>) -> Vec<Sign> {
        loop {
            let nz: Vec<usize> = (0..s.len()).filter(|&k| s[k] != Sign::Zero).collect();
            let hit = nz.windows(2).find(|w| s[w[0]] == Sign::Minus && s[w[1]] == Sign::Plus);
            match hit {
                Some(w) => {
                    let (a, b) = (w[0], w[1]);
                    s[a] = Sign::Zero;
                    s[b] = Sign::Zero;
                }
                None => return s,
            }
        }
    }

    #[test]
    fn stack_scan_matches_naive_reduction() {
        for (e, k) in [(2, vec![0]), (3, vec![0, 1]), (0, vec![0, 1])] {
            let params = p(e, &k);
            for d in 0..=5 {
                for mu in multipartitions(d, k.len()) {
                    for i in -3..4 {
                        let sig = ReducedSignature::new(&mu, &params, i);
                        let raw: Vec<Sign> = sig
                            .items
                            .iter()
                            .map(|(n, _)| if mu.is_removable(n) { Sign::Minus } else { Sign::Plus })
                            .collect();
                        assert_eq!(sig.signs(), reduce_naive(raw));
                    }
                }
            }
        }
    }

    #[test]
    fn crystal_axioms() {
        for (e, k) in [(2, vec![0]), (3, vec![0]), (3, vec![0, 1]), (0, vec![0, 2])] {
            let params = p(e, &k);
            for d in 0..=5 {
                for mu in multipartitions(d, k.len()) {
                    for i in -2..4 {
                        let i = params.reduce(i);
                        let w = params.weight_pairing_simple(&mu.content(&params), i);
                        assert_eq!(phi(&mu, &params, i) as i64 - epsilon(&mu, &params, i) as i64, w);
                        if let Some(nu) = f_tilde(&mu, &params, i) {
                            assert_eq!(e_tilde(&nu, &params, i), Some(mu.clone()));
                            let cogood = ReducedSignature::new(&mu, &params, i).cogood_node().unwrap();
                            assert_eq!(ReducedSignature::new(&nu, &params, i).good_node(), Some(cogood));
                        }
                        if let Some(nu) = e_tilde(&mu, &params, i) {
                            assert_eq!(f_tilde(&nu, &params, i), Some(mu.clone()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_enumeration() {
        assert_eq!(enumerate_restricted(0, &p(2, &[0])), vec![Multipartition::empty(1)]);
        assert_eq!(restricted_of_size(2, &p(2, &[0])), vec![mp("1,1")]);
        for e in [2, 3, 5] {
            let params = p(e, &[0]);
            let found: BTreeSet<_> = enumerate_restricted(8, &params).into_iter().collect();
            for d in 0..=8 {
                for part in partitions(d) {
                    let mu = Multipartition::single(&part);
                    let closed = is_restricted_closed_form(&mu, &params).unwrap();
                    assert_eq!(found.contains(&mu), closed, "{mu}");
                    assert_eq!(is_restricted(&mu, &params), closed);
                }
            }
        }
        for k in [[0, 3], [2, 0]] {
            let params = p(0, &k);
            let found: BTreeSet<_> = enumerate_restricted(5, &params).into_iter().collect();
            for d in 0..=5 {
                for mu in multipartitions(d, 2) {
                    let closed = is_restricted_closed_form(&mu, &params).unwrap();
                    assert_eq!(found.contains(&mu), closed, "{mu} {k:?}");
                }
            }
        }
    }

    #[test]
    fn graph_shape() {
        let params = p(3, &[0]);
        let g = CrystalGraph::new(0, &params);
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());
        let g = CrystalGraph::new(1, &params);
        assert_eq!(g.edges.len(), 1);
        assert!(g.to_dot().contains("\"0\" -> \"1\" [label=\"i=0\"]"));

        let params = p(3, &[0, 1]);
        let g = CrystalGraph::new(6, &params);
        for e in &g.edges {
            assert_eq!(e.target.size(), e.source.size() + 1);
            let c = e.target.content(&params).sub_simple(e.i).unwrap();
            assert_eq!(c, e.source.content(&params));
        }
        for v in g.vertices.iter().filter(|v| !v.is_empty()) {
            assert!((0..3).any(|i| e_tilde(v, &params, i).is_some_and(|u| g.vertices.contains(&u))));
        }
    }

    #[test]
    fn mullineux_examples() {
        assert_eq!(mullineux(&mp("2,1"), &p(3, &[0])).unwrap(), mp("1,1,1"));
        assert!(mullineux(&mp("3"), &p(3, &[0])).is_err());
        for e in [2, 3, 5] {
            let params = p(e, &[0]);
            for mu in enumerate_restricted(8, &params) {
                let m = mullineux(&mu, &params).unwrap();
                if e == 2 {
                    assert_eq!(m, mu);
                }
                assert_eq!(mullineux(&m, &params).unwrap(), mu);
            }
        }
    }

    #[test]
    fn extremal_on_semisimple_characters() {
        let params = p(0, &[0]);
        let empty = specht_qcharacter(&Multipartition::empty(1), &params).unwrap();
        let ext = extremal_sequence(&empty, &params).unwrap();
        assert!(ext.runs.is_empty());
        assert!(ext.mu.is_empty());
        assert!(extremal_sequence(&QCharacter::zero(2), &params).is_err());
        for d in 1..=6 {
            for part in partitions(d) {
                let mu = Multipartition::single(&part);
                let ch = specht_qcharacter(&mu, &params).unwrap();
                let (nu, m) = extremal_multiplicity(&ch, &params).unwrap();
                assert_eq!(nu, mu);
                assert!(m.is_one());
                let doubled = ch.scale(&LaurentPoly::from(2));
                assert_eq!(extremal_multiplicity(&doubled, &params).unwrap().1, LaurentPoly::from(2));
            }
        }
    }
}
