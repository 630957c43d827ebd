//! Standard tableaux, residue sequences, tableau degrees and the graded
//! characters built from them.

use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::{Params, Residue, RootElement};
use crate::character::{seq_content, QCharacter, ResidueSeq};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::multipartition::{multipartitions_with_content, Multipartition, Node};

/// A filling of the nodes of `shape` by `1..=d`, each used once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Multipartition,
    // node_of[r - 1] is the node holding r
    node_of: Vec<Node>,
}

impl Tableau {
    /// Builds a tableau from `node_of[r - 1]` = node containing `r`.
    pub fn from_nodes(shape: Multipartition, node_of: Vec<Node>) -> Result<Self> {
        if node_of.len() != shape.size() {
            return Err(Error::Domain(format!(
                "{} entries for a shape of size {}",
                node_of.len(),
                shape.size()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in &node_of {
            if !shape.contains(n) || !seen.insert(*n) {
                return Err(Error::Domain(format!("node {n} repeated or outside {shape}")));
            }
        }
        Ok(Self { shape, node_of })
    }

    /// Builds a tableau from its rows: `rows[comp][row]` lists the entries.
    pub fn from_rows(rows: &[Vec<Vec<usize>>]) -> Result<Self> {
        let shape = Multipartition::new(rows.iter().map(|c| c.iter().map(Vec::len).collect()).collect())?;
        let d = shape.size();
        let mut node_of = vec![None; d];
        for (m, comp) in rows.iter().enumerate() {
            for (a, row) in comp.iter().enumerate() {
                for (b, &r) in row.iter().enumerate() {
                    if r == 0 || r > d || node_of[r - 1].is_some() {
                        return Err(Error::Domain(format!("entry {r} invalid or repeated")));
                    }
                    node_of[r - 1] = Some(Node::new(a + 1, b + 1, m + 1));
                }
            }
        }
        Self::from_nodes(shape, node_of.into_iter().map(Option::unwrap).collect())
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.node_of.len()
    }

    /// Node occupied by `r` (1-based).
    pub fn node_of(&self, r: usize) -> Node {
        self.node_of[r - 1]
    }

    pub fn entry_at(&self, node: &Node) -> Option<usize> {
        self.node_of.iter().position(|n| n == node).map(|p| p + 1)
    }

    /// `rows[comp][row]` lists the entries of that row.
    pub fn rows(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = self
            .shape
            .components()
            .iter()
            .map(|c| c.iter().map(|&len| vec![0; len]).collect())
            .collect();
        for (r, n) in self.node_of.iter().enumerate() {
            out[n.comp - 1][n.row - 1][n.col - 1] = r + 1;
        }
        out
    }

    pub fn is_standard(&self) -> bool {
        self.node_of.iter().enumerate().all(|(r, n)| {
            let left = Node::new(n.row, n.col.wrapping_sub(1), n.comp);
            let up = Node::new(n.row.wrapping_sub(1), n.col, n.comp);
            let ok = |m: &Node| !self.shape.contains(m) || self.entry_at(m).is_some_and(|s| s < r + 1);
            ok(&left) && ok(&up)
        })
    }

    /// The subtableau holding `1..=m`.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        let mut shape = self.shape.clone();
        for r in (m + 1..=self.size()).rev() {
            shape = shape.remove_node(&self.node_of(r))?;
        }
        Ok(Self {
            shape,
            node_of: self.node_of[..m].to_vec(),
        })
    }

    /// `i^T`: residues of the nodes holding `1, 2, ..., d`.
    pub fn residue_sequence(&self, params: &Params) -> Result<ResidueSeq> {
        self.node_of.iter().map(|n| params.residue(n)).collect()
    }

    /// Recursive degree: `deg(T) = d_A(shape) + deg(T without d)`, `A` the node of `d`.
    pub fn degree(&self, params: &Params) -> Result<i64> {
        if !self.is_standard() {
            return Err(Error::Domain(format!("tableau {self} is not standard")));
        }
        let mut shape = self.shape.clone();
        let mut deg = 0;
        for n in self.node_of.iter().rev() {
            deg += shape.d_below(params, n)?;
            shape = shape.remove_node(n)?;
        }
        Ok(deg)
    }

    /// `w . T`: replaces each entry `r` by `w(r)`.
    pub fn act(&self, w: &Permutation) -> Result<Self> {
        if w.degree() != self.size() {
            return Err(Error::Domain("permutation and tableau sizes differ".into()));
        }
        let mut node_of = self.node_of.clone();
        for (r, n) in self.node_of.iter().enumerate() {
            node_of[w.apply(r + 1) - 1] = *n;
        }
        Ok(Self {
            shape: self.shape.clone(),
            node_of,
        })
    }
}

/// Rows separated by `/`, components by `|`, e.g. `2,5,6/3||1,4,9,10/7,8`.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .rows()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|row| row.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
                    .collect::<Vec<_>>()
                    .join("/")
            })
            .collect();
        write!(f, "{}", comps.join("|"))
    }
}

/// A permutation of `{1, ..., n}` in one-line form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// `images[k - 1] = w(k)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if sorted != (1..=images.len()).collect::<Vec<_>>() {
            return Err(Error::Domain(format!("{images:?} is not a permutation")));
        }
        Ok(Self(images))
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::Domain(format!("{a} outside 1..{n}")));
                }
                images[a - 1] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(images)
    }

    /// The simple transposition `s_r = (r r+1)` in `S_n`.
    pub fn simple(n: usize, r: usize) -> Self {
        let mut w = Self::identity(n);
        w.0.swap(r - 1, r);
        w
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// `self * other`, applying `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&k| self.apply(k)).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Self(inv)
    }

    /// Nontrivial cycles, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 1..=self.0.len() {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start - 1] = true;
            let mut k = self.apply(start);
            while k != start {
                seen[k - 1] = true;
                cyc.push(k);
                k = self.apply(k);
            }
            out.push(cyc);
        }
        out
    }
}

/// Cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// All standard `mu`-tableaux, built by placing `d` in each removable node
/// in turn and recursing on the rest.
pub fn standard_tableaux(mu: &Multipartition) -> Vec<Tableau> {
    let mut out = Vec::new();
    let mut stack = vec![Node::new(0, 0, 0); mu.size()];
    fill(mu, &mut stack, &mut |nodes| {
        out.push(Tableau {
            shape: mu.clone(),
            node_of: nodes.to_vec(),
        })
    });
    out
}

fn fill(shape: &Multipartition, nodes: &mut Vec<Node>, emit: &mut dyn FnMut(&[Node])) {
    let d = shape.size();
    if d == 0 {
        emit(nodes);
        return;
    }
    for a in shape.removable_nodes() {
        nodes[d - 1] = a;
        let smaller = shape.remove_node(&a).expect("removable node");
        fill(&smaller, nodes, emit);
    }
}

/// `T^mu`: `1..d` along the rows, top to bottom.
pub fn leading_tableau(mu: &Multipartition) -> Tableau {
    Tableau {
        shape: mu.clone(),
        node_of: mu.nodes().collect(),
    }
}

/// `w_T`, the permutation with `w_T T^mu = T`.
pub fn tableau_permutation(t: &Tableau) -> Permutation {
    let lead = leading_tableau(t.shape());
    let mut images = vec![0; t.size()];
    for (r, n) in lead.node_of.iter().enumerate() {
        images[r] = t.entry_at(n).expect("same shape");
    }
    Permutation(images)
}

/// `ch_q S(mu) = sum_T q^{deg T} i^T` over standard `mu`-tableaux.
pub fn specht_qcharacter(mu: &Multipartition, params: &Params) -> Result<QCharacter> {
    if mu.level() != params.level() {
        return Err(Error::Domain(format!("{mu} has level {}, expected {}", mu.level(), params.level())));
    }
    let mut ch = QCharacter::zero(mu.size());
    let mut seq = vec![0; mu.size()];
    specht_terms(mu, params, &mut seq, 0, &mut ch);
    Ok(ch)
}

// Places d, d-1, ... in turn; `deg` accumulates the d_A contributions.
fn specht_terms(shape: &Multipartition, params: &Params, seq: &mut Vec<Residue>, deg: i64, ch: &mut QCharacter) {
    let d = shape.size();
    if d == 0 {
        ch.add_term(seq.clone(), &LaurentPoly::q_pow(deg));
        return;
    }
    for a in shape.removable_nodes() {
        seq[d - 1] = params.residue(&a).expect("level checked");
        let da = shape.d_below(params, &a).expect("removable node");
        let smaller = shape.remove_node(&a).expect("removable node");
        specht_terms(&smaller, params, seq, deg + da, ch);
    }
}

/// Drops the last residue of every sequence.
pub fn restrict_character(ch: &QCharacter) -> Result<QCharacter> {
    ch.restrict()
}

fn check_sequences(alpha: &RootElement, i: &[Residue], j: &[Residue]) -> Result<()> {
    for s in [i, j] {
        if &seq_content(s) != alpha {
            return Err(Error::Domain(format!("sequence {s:?} does not have content {alpha}")));
        }
    }
    Ok(())
}

/// `qdim e(i) H_alpha e(j) = sum_mu sum_{S,T} q^{deg S + deg T}` with
/// `i^S = i`, `i^T = j`.
pub fn block_graded_dimension(params: &Params, alpha: &RootElement, i: &[Residue], j: &[Residue]) -> Result<LaurentPoly> {
    check_sequences(alpha, i, j)?;
    let mut total = LaurentPoly::zero();
    for mu in multipartitions_with_content(alpha, params) {
        let ch = specht_qcharacter(&mu, params)?;
        total += &(ch.coeff(i) * ch.coeff(j));
    }
    Ok(total)
}

/// The same dimension via codegrees: `sum q^{2 def(alpha) - deg S - deg T}`.
pub fn block_graded_dimension_codegree(
    params: &Params,
    alpha: &RootElement,
    i: &[Residue],
    j: &[Residue],
) -> Result<LaurentPoly> {
    check_sequences(alpha, i, j)?;
    let shift = 2 * params.defect(alpha);
    let mut total = LaurentPoly::zero();
    for mu in multipartitions_with_content(alpha, params) {
        let ch = specht_qcharacter(&mu, params)?;
        total += &(ch.coeff(i).bar() * ch.coeff(j).bar()).shift(shift);
    }
    Ok(total)
}

/// Every nonzero `qdim e(i) H_alpha e(j)` of the block, keyed by `(i, j)`.
pub fn block_graded_dimensions(params: &Params, alpha: &RootElement) -> Result<BTreeMap<(ResidueSeq, ResidueSeq), LaurentPoly>> {
    let mut out: BTreeMap<(ResidueSeq, ResidueSeq), LaurentPoly> = BTreeMap::new();
    for mu in multipartitions_with_content(alpha, params) {
        let ch = specht_qcharacter(&mu, params)?;
        for (i, p) in ch.iter() {
            for (j, r) in ch.iter() {
                *out.entry((i.clone(), j.clone())).or_default() += &(p * r);
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipartition::{multipartitions, partitions};
    use num_bigint::BigInt;

    fn example_mu() -> Multipartition {
        "3,1|0|4,2".parse().unwrap()
    }

    fn example_params() -> Params {
        Params::new(3, &[0, 1, 1]).unwrap()
    }

    fn example_t() -> Tableau {
        Tableau::from_rows(&[vec![vec![2, 5, 6], vec![3]], vec![], vec![vec![1, 4, 9, 10], vec![7, 8]]]).unwrap()
    }

    // Brute force: every bijection of nodes to 1..d, kept if standard.
    fn brute_standard(mu: &Multipartition) -> Vec<Tableau> {
        fn perms(v: &mut Vec<Node>, k: usize, out: &mut Vec<Vec<Node>>) {
            if k == v.len() {
                out.push(v.clone());
                return;
            }
            for i in k..v.len() {
                v.swap(k, i);
                perms(v, k + 1, out);
                v.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut mu.nodes().collect(), 0, &mut all);
        all.into_iter()
            .map(|n| Tableau::from_nodes(mu.clone(), n).unwrap())
            .filter(Tableau::is_standard)
            .collect()
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(standard_tableaux(&Multipartition::single(&[4])).len(), 1);
        assert_eq!(standard_tableaux(&Multipartition::single(&[2, 1])).len(), 2);
        assert_eq!(standard_tableaux(&Multipartition::empty(2)).len(), 1);
        for mu in multipartitions(4, 2) {
            let mut a = standard_tableaux(&mu);
            let mut b = brute_standard(&mu);
            a.sort();
            b.sort();
            assert_eq!(a, b, "{mu}");
        }
    }

    #[test]
    fn squares_of_counts_sum_to_factorial() {
        let mut fact = 1usize;
        for d in 1..=6 {
            fact *= d;
            let total: usize = partitions(d)
                .iter()
                .map(|p| standard_tableaux(&Multipartition::single(p)).len().pow(2))
                .sum();
            assert_eq!(total, fact);
        }
    }

    #[test]
    fn worked_example_sequences_and_permutation() {
        let mu = example_mu();
        let params = example_params();
        let lead = leading_tableau(&mu);
        assert_eq!(lead.to_string(), "1,2,3/4||5,6,7,8/9,10");
        assert_eq!(lead.residue_sequence(&params).unwrap(), vec![0, 1, 2, 2, 1, 2, 0, 1, 0, 1]);

        let t = example_t();
        assert!(t.is_standard());
        assert_eq!(t.residue_sequence(&params).unwrap(), vec![1, 0, 2, 2, 1, 2, 0, 1, 0, 1]);
        let w = tableau_permutation(&t);
        assert_eq!(w.to_string(), "(1 2 5)(3 6 4)(7 9)(8 10)");
        assert_eq!(lead.act(&w).unwrap(), t);
        assert!(tableau_permutation(&lead).is_identity());
    }

    #[test]
    fn permutation_round_trip() {
        let mu = Multipartition::new(vec![vec![3, 2], vec![2]]).unwrap();
        let lead = leading_tableau(&mu);
        for t in standard_tableaux(&mu) {
            let w = tableau_permutation(&t);
            assert_eq!(lead.act(&w).unwrap(), t);
            assert!(w.compose(&w.inverse()).is_identity());
        }
        let c = Permutation::from_cycles(5, &[&[1, 2, 5], &[3, 4]]).unwrap();
        assert_eq!(c.to_string(), "(1 2 5)(3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn degrees() {
        let p0 = Params::new(0, &[0]).unwrap();
        for d in 0..=5 {
            for p in partitions(d) {
                for t in standard_tableaux(&Multipartition::single(&p)) {
                    assert_eq!(t.degree(&p0).unwrap(), 0);
                }
            }
        }
        // e=2, (1,1): placing 2 at (2,1) leaves addable (1,2) of residue 1
        // above and nothing below, so d_A = 0; then (1,1) over empty gives 0.
        let p2 = Params::new(2, &[0]).unwrap();
        let t = leading_tableau(&Multipartition::single(&[1, 1]));
        assert_eq!(t.degree(&p2).unwrap(), 0);
        // e=2, (2): node (1,2) has the addable 1-node (2,1) below it.
        let t = leading_tableau(&Multipartition::single(&[2]));
        assert_eq!(t.degree(&p2).unwrap(), 1);

        let bad = Tableau::from_rows(&[vec![vec![2, 1]]]).unwrap();
        assert!(bad.degree(&p2).is_err());
    }

    #[test]
    fn specht_character_matches_per_tableau_degrees() {
        for (e, kappa) in [(2, vec![0]), (3, vec![0, 1]), (0, vec![0, 2])] {
            let params = Params::new(e, &kappa).unwrap();
            for mu in multipartitions(4, kappa.len()) {
                let ch = specht_qcharacter(&mu, &params).unwrap();
                let mut oracle = QCharacter::zero(mu.size());
                for t in standard_tableaux(&mu) {
                    oracle.add_term(t.residue_sequence(&params).unwrap(), &LaurentPoly::q_pow(t.degree(&params).unwrap()));
                }
                assert_eq!(ch, oracle, "{mu}");
                assert!(ch.supported_on(&mu.content(&params)));
                assert_eq!(ch.mass(), BigInt::from(standard_tableaux(&mu).len()));
            }
        }
    }

    #[test]
    fn specht_small_examples() {
        let p0 = Params::new(0, &[0]).unwrap();
        let ch = specht_qcharacter(&Multipartition::single(&[2, 1]), &p0).unwrap();
        assert_eq!(ch.num_terms(), 2);
        assert!(ch.coeff(&[0, 1, -1]).is_one());
        assert!(ch.coeff(&[0, -1, 1]).is_one());

        let empty = specht_qcharacter(&Multipartition::empty(1), &p0).unwrap();
        assert_eq!(empty.len(), 0);
        assert!(empty.coeff(&[]).is_one());
    }

    #[test]
    fn e0_sequences_are_distinct() {
        let p0 = Params::new(0, &[0]).unwrap();
        for d in 1..=6 {
            let mut seen = std::collections::BTreeSet::new();
            for p in partitions(d) {
                for t in standard_tableaux(&Multipartition::single(&p)) {
                    assert!(seen.insert(t.residue_sequence(&p0).unwrap()));
                }
            }
        }
    }

    #[test]
    fn graded_dimension_edge_cases() {
        let params = Params::new(2, &[0]).unwrap();
        let zero = RootElement::zero();
        assert!(block_graded_dimension(&params, &zero, &[], &[]).unwrap().is_one());
        let alpha = RootElement::from_pairs([(0, 1), (1, 1)]);
        assert!(block_graded_dimension(&params, &alpha, &[0, 0], &[0, 1]).is_err());
        // (2) contributes q at (0,1), (1,1) contributes 1.
        let g = block_graded_dimension(&params, &alpha, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(g, "1 + q^2".parse().unwrap());
        assert_eq!(g, block_graded_dimension_codegree(&params, &alpha, &[0, 1], &[0, 1]).unwrap());
    }
}
