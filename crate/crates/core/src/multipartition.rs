//! Multipartitions, their nodes, residues and boundary combinatorics.
//!
//! Nodes are ordered top to bottom by `(component, row)`. A row can carry
//! both a removable and an addable node, but those have residues differing
//! by one, so among nodes of a fixed residue the order is strict.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{Params, Residue, RootElement};
use crate::error::{Error, Result};

/// A node `(row, col, comp)`, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    pub fn new(row: usize, col: usize, comp: usize) -> Self {
        Self { row, col, comp }
    }

    /// Position in the top-to-bottom order.
    fn height_key(&self) -> (usize, usize) {
        (self.comp, self.row)
    }

    pub fn is_above(&self, other: &Node) -> bool {
        self.height_key() < other.height_key()
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

impl Params {
    /// `k_m + (b - a)` reduced mod `e`.
    pub fn residue(&self, node: &Node) -> Result<Residue> {
        let k = self
            .kappa
            .kappa()
            .get(node.comp.wrapping_sub(1))
            .ok_or_else(|| Error::Domain(format!("node {node} outside level {}", self.level())))?;
        Ok(self.reduce(k + node.col as i64 - node.row as i64))
    }

    fn res(&self, node: &Node) -> Residue {
        self.residue(node).expect("node component within level")
    }
}

/// An ordered tuple of partitions. Parts are positive and weakly decreasing.
///
/// The derived ordering is the lexicographic order: component by
/// component, then part by part (missing parts count as zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    parts: Vec<Vec<usize>>,
}

impl Multipartition {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("a multipartition needs at least one component".into()));
        }
        let mut parts = parts;
        for comp in &mut parts {
            while comp.last() == Some(&0) {
                comp.pop();
            }
            if comp.contains(&0) || comp.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Domain(format!("{comp:?} is not a partition")));
            }
        }
        Ok(Self { parts })
    }

    pub fn empty(level: usize) -> Self {
        Self {
            parts: vec![Vec::new(); level],
        }
    }

    /// A level-one multipartition.
    pub fn single(parts: &[usize]) -> Self {
        Self::new(vec![parts.to_vec()]).expect("valid partition")
    }

    pub fn level(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().flatten().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(Vec::is_empty)
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// `mu^{(comp)}_row`, zero past the end.
    pub fn part(&self, comp: usize, row: usize) -> usize {
        self.parts[comp - 1].get(row - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, node: &Node) -> bool {
        node.comp >= 1 && node.comp <= self.level() && node.col >= 1 && node.row >= 1 && node.col <= self.part(node.comp, node.row)
    }

    /// All nodes, in row-reading order (component, row, column).
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.parts.iter().enumerate().flat_map(|(m, comp)| {
            comp.iter()
                .enumerate()
                .flat_map(move |(a, &len)| (1..=len).map(move |b| Node::new(a + 1, b, m + 1)))
        })
    }

    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (m, comp) in self.parts.iter().enumerate() {
            for (a, &len) in comp.iter().enumerate() {
                if comp.get(a + 1).copied().unwrap_or(0) < len {
                    out.push(Node::new(a + 1, len, m + 1));
                }
            }
        }
        out
    }

    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (m, comp) in self.parts.iter().enumerate() {
            for a in 0..=comp.len() {
                let len = comp.get(a).copied().unwrap_or(0);
                if a == 0 || comp[a - 1] > len {
                    out.push(Node::new(a + 1, len + 1, m + 1));
                }
            }
        }
        out
    }

    /// `(removable, addable)`, each ordered top to bottom.
    pub fn boundary_nodes(&self) -> (Vec<Node>, Vec<Node>) {
        (self.removable_nodes(), self.addable_nodes())
    }

    pub fn is_removable(&self, node: &Node) -> bool {
        self.removable_nodes().contains(node)
    }

    pub fn is_addable(&self, node: &Node) -> bool {
        self.addable_nodes().contains(node)
    }

    /// `mu_A`
    pub fn remove_node(&self, node: &Node) -> Result<Self> {
        if !self.is_removable(node) {
            return Err(Error::Domain(format!("{node} is not removable for {self}")));
        }
        let mut parts = self.parts.clone();
        let comp = &mut parts[node.comp - 1];
        comp[node.row - 1] -= 1;
        if comp[node.row - 1] == 0 {
            comp.pop();
        }
        Ok(Self { parts })
    }

    /// `mu^B`
    pub fn add_node(&self, node: &Node) -> Result<Self> {
        if !self.is_addable(node) {
            return Err(Error::Domain(format!("{node} is not addable for {self}")));
        }
        let mut parts = self.parts.clone();
        let comp = &mut parts[node.comp - 1];
        if node.row > comp.len() {
            comp.push(1);
        } else {
            comp[node.row - 1] += 1;
        }
        Ok(Self { parts })
    }

    /// Residue content `sum_{A in mu} alpha_{res A}`.
    pub fn content(&self, params: &Params) -> RootElement {
        let mut a = RootElement::zero();
        for node in self.nodes() {
            a.add_simple(params.res(&node), 1);
        }
        a
    }

    /// Dominance `self >= other`.
    pub fn dominates(&self, other: &Multipartition) -> Result<bool> {
        if self.level() != other.level() || self.size() != other.size() {
            return Err(Error::Domain(format!("cannot compare {self} and {other} in dominance order")));
        }
        let (mut before_a, mut before_b) = (0usize, 0usize);
        for m in 1..=self.level() {
            let rows = self.parts[m - 1].len().max(other.parts[m - 1].len());
            let (mut sa, mut sb) = (before_a, before_b);
            for c in 1..=rows.max(1) {
                sa += self.part(m, c);
                sb += other.part(m, c);
                if sa < sb {
                    return Ok(false);
                }
            }
            before_a += self.parts[m - 1].iter().sum::<usize>();
            before_b += other.parts[m - 1].iter().sum::<usize>();
        }
        Ok(true)
    }

    /// Strict dominance `self > other`.
    pub fn strictly_dominates(&self, other: &Multipartition) -> Result<bool> {
        Ok(self != other && self.dominates(other)?)
    }

    pub fn lex_less(&self, other: &Multipartition) -> bool {
        self < other
    }

    pub fn transpose(&self) -> Self {
        let parts = self
            .parts
            .iter()
            .rev()
            .map(|comp| {
                let width = comp.first().copied().unwrap_or(0);
                (1..=width).map(|c| comp.iter().filter(|&&p| p >= c).count()).collect()
            })
            .collect();
        Self { parts }
    }

    /// Removable `i`-nodes followed by addable `i`-nodes, each top to bottom.
    pub fn i_nodes(&self, params: &Params, i: Residue) -> (Vec<Node>, Vec<Node>) {
        let (rem, add) = self.boundary_nodes();
        let keep = |v: Vec<Node>| v.into_iter().filter(|n| params.res(n) == i).collect::<Vec<_>>();
        (keep(rem), keep(add))
    }

    /// `d_A(mu)`: addable minus removable `i`-nodes strictly below `A`.
    pub fn d_below(&self, params: &Params, node: &Node) -> Result<i64> {
        if !self.is_removable(node) {
            return Err(Error::Domain(format!("{node} is not removable for {self}")));
        }
        let i = params.residue(node)?;
        let (rem, add) = self.i_nodes(params, i);
        let below = |v: &[Node]| v.iter().filter(|n| node.is_above(n)).count() as i64;
        Ok(below(&add) - below(&rem))
    }

    /// `d^B(mu)`: addable minus removable `i`-nodes strictly above `B`.
    pub fn d_above(&self, params: &Params, node: &Node) -> Result<i64> {
        if !self.is_addable(node) {
            return Err(Error::Domain(format!("{node} is not addable for {self}")));
        }
        let i = params.residue(node)?;
        let (rem, add) = self.i_nodes(params, i);
        let above = |v: &[Node]| v.iter().filter(|n| n.is_above(node)).count() as i64;
        Ok(above(&add) - above(&rem))
    }

    /// `d_i(mu)`: addable minus removable `i`-nodes.
    pub fn d_total(&self, params: &Params, i: Residue) -> i64 {
        let (rem, add) = self.i_nodes(params, params.reduce(i));
        add.len() as i64 - rem.len() as i64
    }

    /// Residues carried by addable or removable nodes, sorted and deduplicated.
    pub fn boundary_residues(&self, params: &Params) -> Vec<Residue> {
        let (rem, add) = self.boundary_nodes();
        let mut out: Vec<Residue> = rem.iter().chain(&add).map(|n| params.res(n)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Closed-form restrictedness tests for the configurations that have one:
/// level one with `e > 0`, and `e = 0` with monotone `kappa`.
///
/// Returns `None` when no closed form applies.
pub fn is_restricted_closed_form(mu: &Multipartition, params: &Params) -> Option<bool> {
    let e = params.e.get() as usize;
    let kappa = params.kappa.kappa();
    if params.level() == 1 && e > 0 {
        let p = &mu.components()[0];
        return Some((0..p.len()).all(|a| p[a] - p.get(a + 1).copied().unwrap_or(0) < e));
    }
    if e != 0 {
        return None;
    }
    let rows = mu.components().iter().map(Vec::len).max().unwrap_or(0) + 1;
    if kappa.windows(2).all(|w| w[0] >= w[1]) {
        // mu^{(m)}_{a + k_m - k_{m+1}} <= mu^{(m+1)}_a
        return Some((1..mu.level()).all(|m| {
            let shift = (kappa[m - 1] - kappa[m]) as usize;
            (1..=rows).all(|a| mu.part(m, a + shift) <= mu.part(m + 1, a))
        }));
    }
    if kappa.windows(2).all(|w| w[0] <= w[1]) {
        // mu^{(m)}_a <= mu^{(m+1)}_a + k_{m+1} - k_m
        return Some((1..mu.level()).all(|m| {
            let shift = kappa[m] - kappa[m - 1];
            (1..=rows).all(|a| mu.part(m, a) as i64 <= mu.part(m + 1, a) as i64 + shift)
        }));
    }
    None
}

/// Partitions of `n`, lexicographically descending.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            go(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `l`-multipartitions of `d`, lexicographically descending.
pub fn multipartitions(d: usize, level: usize) -> Vec<Multipartition> {
    fn go(d: usize, level: usize, prefix: &mut Vec<Vec<usize>>, out: &mut Vec<Multipartition>) {
        if prefix.len() + 1 == level {
            for p in partitions(d) {
                prefix.push(p);
                out.push(Multipartition { parts: prefix.clone() });
                prefix.pop();
            }
            return;
        }
        for size in (0..=d).rev() {
            for p in partitions(size) {
                prefix.push(p);
                go(d - size, level, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if level > 0 {
        go(d, level, &mut Vec::new(), &mut out);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Multipartitions of size `ht(alpha)` with content `alpha`, lex descending.
pub fn multipartitions_with_content(alpha: &RootElement, params: &Params) -> Vec<Multipartition> {
    multipartitions(alpha.height() as usize, params.level())
        .into_iter()
        .filter(|mu| &mu.content(params) == alpha)
        .collect()
}

impl fmt::Display for Multipartition {
    /// `3,1|0|4,2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .parts
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "0".to_string()
                } else {
                    c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
                }
            })
            .collect();
        f.write_str(&comps.join("|"))
    }
}

impl FromStr for Multipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .split('|')
            .map(|comp| {
                let comp = comp.trim();
                if comp == "0" || comp.is_empty() {
                    return Ok(Vec::new());
                }
                comp.split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("malformed multipartition `{s}`")))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::new(parts).map_err(|e| Error::Parse(format!("malformed multipartition `{s}`: {e}")))
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<Vec<usize>>::deserialize(deserializer)?;
        Self::new(parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn example() -> (Multipartition, Params) {
        (mp("3,1|0|4,2"), Params::new(3, &[0, 1, 1]).unwrap())
    }

    /// Brute-force node scan: walks every cell of a bounding box and
    /// classifies it, independently of the part-sequence logic.
    fn scan(mu: &Multipartition) -> (Vec<Node>, Vec<Node>) {
        let size = mu.size() + 2;
        let (mut rem, mut add) = (Vec::new(), Vec::new());
        for comp in 1..=mu.level() {
            for row in 1..=size {
                for col in 1..=size {
                    let n = Node::new(row, col, comp);
                    let inside = mu.contains(&n);
                    let right = mu.contains(&Node::new(row, col + 1, comp));
                    let down = mu.contains(&Node::new(row + 1, col, comp));
                    let left = col == 1 || mu.contains(&Node::new(row, col - 1, comp));
                    let up = row == 1 || mu.contains(&Node::new(row - 1, col, comp));
                    if inside && !right && !down {
                        rem.push(n);
                    }
                    if !inside && left && up {
                        add.push(n);
                    }
                }
            }
        }
        rem.sort_by_key(Node::height_key);
        add.sort_by_key(Node::height_key);
        (rem, add)
    }

    fn scan_d(mu: &Multipartition, p: &Params, node: &Node, below: bool) -> i64 {
        let i = p.residue(node).unwrap();
        let (rem, add) = scan(mu);
        let side = |n: &&Node| if below { node.is_above(n) } else { n.is_above(node) };
        let count = |v: &[Node]| v.iter().filter(|n| p.residue(n).unwrap() == i).filter(side).count() as i64;
        count(&add) - count(&rem)
    }

    #[test]
    fn residues_of_example() {
        let (_, p) = example();
        assert_eq!(p.residue(&Node::new(1, 1, 1)).unwrap(), 0);
        assert_eq!(p.residue(&Node::new(1, 3, 1)).unwrap(), 2);
        assert_eq!(p.residue(&Node::new(2, 1, 3)).unwrap(), 0);
        assert!(p.residue(&Node::new(1, 1, 4)).is_err());
    }

    #[test]
    fn boundary_of_example() {
        let (mu, _) = example();
        let (rem, add) = mu.boundary_nodes();
        let n = |a, b, m| Node::new(a, b, m);
        assert_eq!(rem, vec![n(1, 3, 1), n(2, 1, 1), n(1, 4, 3), n(2, 2, 3)]);
        assert_eq!(add, vec![n(1, 4, 1), n(2, 2, 1), n(3, 1, 1), n(1, 1, 2), n(1, 5, 3), n(2, 3, 3), n(3, 1, 3)]);
        assert_eq!(scan(&mu), (rem, add));

        let empty = Multipartition::empty(3);
        assert!(empty.removable_nodes().is_empty());
        assert_eq!(empty.addable_nodes(), vec![n(1, 1, 1), n(1, 1, 2), n(1, 1, 3)]);
    }

    #[test]
    fn content_examples() {
        let p2 = Params::new(2, &[0]).unwrap();
        assert!(Multipartition::empty(1).content(&p2).is_zero());
        assert_eq!(mp("2").content(&p2), RootElement::from_pairs([(0, 1), (1, 1)]));
        let (mu, p) = example();
        assert_eq!(mu.content(&p), RootElement::from_pairs([(0, 3), (1, 4), (2, 3)]));
    }

    #[test]
    fn dominance_examples() {
        assert!(mp("2,1").dominates(&mp("2,1")).unwrap());
        assert!(mp("2").dominates(&mp("1,1")).unwrap());
        assert!(!mp("2,2").dominates(&mp("3,1")).unwrap());
        assert!(mp("1|1").dominates(&mp("0|2")).unwrap());
        assert!(!mp("0|2").dominates(&mp("1|1")).unwrap());
        assert!(mp("2").dominates(&mp("1")).is_err());
    }

    #[test]
    fn lex_examples() {
        assert!(mp("1,1").lex_less(&mp("2")));
        assert!(!mp("2,1").lex_less(&mp("2,1")));
        assert!(mp("0|2").lex_less(&mp("1|1")));
    }

    #[test]
    fn dominance_is_partial_order_refined_by_lex() {
        for d in 0..=6 {
            for level in 1..=2 {
                let all = multipartitions(d, level);
                for a in &all {
                    for b in &all {
                        let ab = a.dominates(b).unwrap();
                        let ba = b.dominates(a).unwrap();
                        if ab && ba {
                            assert_eq!(a, b);
                        }
                        if ab && a != b {
                            assert!(b.lex_less(a), "{b} should be lex below {a}");
                        }
                        if d <= 4 && ab {
                            for c in &all {
                                if b.dominates(c).unwrap() {
                                    assert!(a.dominates(c).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration() {
        assert_eq!(multipartitions(0, 1), vec![Multipartition::empty(1)]);
        assert_eq!(multipartitions(2, 1), vec![mp("2"), mp("1,1")]);
        let two = multipartitions(2, 2);
        assert_eq!(two, vec![mp("2|0"), mp("1,1|0"), mp("1|1"), mp("0|2"), mp("0|1,1")]);
        // strictly descending lex, no duplicates
        for d in 0..=6 {
            let all = multipartitions(d, 3);
            assert!(all.windows(2).all(|w| w[1] < w[0]));
            assert!(all.iter().all(|m| m.size() == d));
        }
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn blocks_partition_the_set() {
        for (e, kappa) in [(2, vec![0]), (3, vec![0, 1]), (0, vec![0, 2])] {
            let p = Params::new(e, &kappa).unwrap();
            for d in 0..=5 {
                let all = multipartitions(d, p.level());
                let mut contents: Vec<RootElement> = all.iter().map(|m| m.content(&p)).collect();
                contents.sort();
                contents.dedup();
                let total: usize = contents.iter().map(|a| multipartitions_with_content(a, &p).len()).sum();
                assert_eq!(total, all.len());
            }
        }
    }

    #[test]
    fn add_remove_round_trip() {
        for mu in multipartitions(5, 2) {
            for a in mu.removable_nodes() {
                assert_eq!(mu.remove_node(&a).unwrap().add_node(&a).unwrap(), mu);
            }
            for b in mu.addable_nodes() {
                assert_eq!(mu.add_node(&b).unwrap().remove_node(&b).unwrap(), mu);
            }
        }
        assert!(mp("2").remove_node(&Node::new(1, 1, 1)).is_err());
        assert!(mp("2").add_node(&Node::new(2, 2, 1)).is_err());
    }

    #[test]
    fn d_statistics_examples() {
        let p2 = Params::new(2, &[0]).unwrap();
        assert_eq!(mp("1").d_below(&p2, &Node::new(1, 1, 1)).unwrap(), 0);
        // (2,2,1) has residue 0; the addable 0-node (3,1) lies below it
        let a = Node::new(2, 2, 1);
        assert_eq!(p2.residue(&a).unwrap(), 0);
        assert_eq!(mp("2,2").d_below(&p2, &a).unwrap(), scan_d(&mp("2,2"), &p2, &a, true));
        assert_eq!(mp("2,2").d_below(&p2, &a).unwrap(), 1);
        assert_eq!(Multipartition::empty(1).d_above(&p2, &Node::new(1, 1, 1)).unwrap(), 0);
        // (1): 1-nodes are addable (1,2) and (2,1); (1,2) lies above (2,1)
        assert_eq!(mp("1").d_above(&p2, &Node::new(2, 1, 1)).unwrap(), 1);
        assert_eq!(scan_d(&mp("1"), &p2, &Node::new(2, 1, 1), false), 1);

        let p00 = Params::new(2, &[0, 0]).unwrap();
        let b = Node::new(1, 1, 2);
        assert_eq!(mp("1|0").d_above(&p00, &b).unwrap(), scan_d(&mp("1|0"), &p00, &b, false));
        assert_eq!(mp("1|0").d_above(&p00, &b).unwrap(), -1);

        let (mu, p) = example();
        let a = Node::new(1, 3, 1);
        assert_eq!(mu.d_below(&p, &a).unwrap(), scan_d(&mu, &p, &a, true));
        // below (1,3,1): removable (2,1,1); addable (1,5,3), (2,3,3), (3,1,3)
        assert_eq!(mu.d_below(&p, &a).unwrap(), 2);
        assert!(mu.d_below(&p, &Node::new(1, 1, 1)).is_err());
        assert!(mu.d_above(&p, &Node::new(1, 1, 1)).is_err());
    }

    #[test]
    fn d_statistics_match_scan() {
        for (e, kappa) in [(2, vec![0]), (3, vec![0, 1]), (0, vec![0, 1]), (3, vec![1, 1])] {
            let p = Params::new(e, &kappa).unwrap();
            for d in 0..=5 {
                for mu in multipartitions(d, p.level()) {
                    for a in mu.removable_nodes() {
                        assert_eq!(mu.d_below(&p, &a).unwrap(), scan_d(&mu, &p, &a, true));
                    }
                    for b in mu.addable_nodes() {
                        assert_eq!(mu.d_above(&p, &b).unwrap(), scan_d(&mu, &p, &b, false));
                    }
                }
            }
        }
    }

    #[test]
    fn d_total_matches_weight_pairing() {
        for (e, kappa) in [(2, vec![0]), (3, vec![0]), (4, vec![1]), (3, vec![0, 1]), (2, vec![0, 0]), (0, vec![0]), (0, vec![0, 2])] {
            let p = Params::new(e, &kappa).unwrap();
            let residues: Vec<i64> = p.e.residues().unwrap_or_else(|| (-8..=10).collect());
            for d in 0..=6 {
                for mu in multipartitions(d, p.level()) {
                    let alpha = mu.content(&p);
                    for &i in &residues {
                        assert_eq!(mu.d_total(&p, i), p.weight_pairing_simple(&alpha, i), "{mu} i={i}");
                    }
                }
            }
        }
        let p = Params::new(3, &[0]).unwrap();
        assert_eq!(Multipartition::empty(1).d_total(&p, 0), 1);
        assert_eq!(Multipartition::empty(1).d_total(&p, 1), 0);
    }

    #[test]
    fn closed_form_examples() {
        let p2 = Params::new(2, &[0]).unwrap();
        assert_eq!(is_restricted_closed_form(&mp("2"), &p2), Some(false));
        assert_eq!(is_restricted_closed_form(&mp("1,1"), &p2), Some(true));
        let p3 = Params::new(3, &[0]).unwrap();
        assert_eq!(is_restricted_closed_form(&mp("3,1"), &p3), Some(true));
        let p = Params::new(3, &[0, 1]).unwrap();
        assert_eq!(is_restricted_closed_form(&mp("1|1"), &p), None);
        let p0 = Params::new(0, &[1, 0, 2]).unwrap();
        assert_eq!(is_restricted_closed_form(&mp("1|1|1"), &p0), None);
    }

    #[test]
    fn text_and_json() {
        let (mu, _) = example();
        assert_eq!(mu.to_string(), "3,1|0|4,2");
        assert_eq!(serde_json::to_string(&mu).unwrap(), "[[3,1],[],[4,2]]");
        assert_eq!(mp("0").to_string(), "0");
        assert!("3,x".parse::<Multipartition>().is_err());
        assert!("1,2".parse::<Multipartition>().is_err());
        assert_eq!(mp("1,1").transpose(), mp("2"));
        assert_eq!(mp("2|1").transpose(), mp("1|1,1"));
    }
}
