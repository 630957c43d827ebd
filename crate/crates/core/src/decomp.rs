//! Graded decomposition numbers in characteristic zero, computed three
//! independent ways: the level-one row-by-row algorithm with the Basic
//! Task, bar-invariance of Specht characters modulo known irreducibles,
//! and peeling irreducibles off by extremal sequences.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{Params, Residue, RootElement};
use crate::character::{QCharacter, ResidueSeq};
use crate::crystal::{all_extremal_sequences, extremal_sequence, is_restricted, multiplicity_along};
use crate::error::{Error, Result};
use crate::laurent::{quantum_factorial, LaurentPoly};
use crate::multipartition::{is_restricted_closed_form, multipartitions, multipartitions_with_content, Multipartition};
use crate::tableaux::{specht_qcharacter, standard_tableaux};

/// A block: its Specht labels, restricted labels and Specht characters.
#[derive(Clone, Debug)]
pub struct Block {
    pub params: Params,
    pub alpha: RootElement,
    /// All multipartitions of content `alpha`, lexicographically descending.
    pub rows: Vec<Multipartition>,
    /// The restricted ones, in the same order.
    pub cols: Vec<Multipartition>,
    specht: HashMap<Multipartition, QCharacter>,
}

impl Block {
    pub fn new(params: &Params, alpha: &RootElement) -> Result<Self> {
        let rows = multipartitions_with_content(alpha, params);
        let cols: Vec<Multipartition> = rows.iter().filter(|mu| is_restricted(mu, params)).cloned().collect();
        let specht = rows
            .par_iter()
            .map(|mu| Ok((mu.clone(), specht_qcharacter(mu, params)?)))
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(Self {
            params: params.clone(),
            alpha: alpha.clone(),
            rows,
            cols,
            specht,
        })
    }

    /// Contents of all multipartitions of size `d`, sorted.
    pub fn contents_of_size(d: usize, params: &Params) -> Vec<RootElement> {
        let mut out: Vec<RootElement> = multipartitions(d, params.level()).iter().map(|mu| mu.content(params)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn specht(&self, mu: &Multipartition) -> &QCharacter {
        &self.specht[mu]
    }

    pub fn size(&self) -> usize {
        self.alpha.height() as usize
    }

    fn strictly_dominates(&self, a: &Multipartition, b: &Multipartition) -> bool {
        a.strictly_dominates(b).expect("same size and level")
    }
}

/// Rows by Specht labels, columns by restricted labels, entries `d_{mu,nu}(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    pub e: u32,
    pub kappa: Vec<Residue>,
    pub alpha: RootElement,
    pub rows: Vec<Multipartition>,
    pub cols: Vec<Multipartition>,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl DecompositionMatrix {
    fn empty(block: &Block) -> Self {
        Self {
            e: block.params.e.get(),
            kappa: block.params.kappa.kappa().to_vec(),
            alpha: block.alpha.clone(),
            rows: block.rows.clone(),
            cols: block.cols.clone(),
            entries: BTreeMap::new(),
        }
    }

    fn row_index(&self, mu: &Multipartition) -> Option<usize> {
        self.rows.iter().position(|r| r == mu)
    }

    fn col_index(&self, nu: &Multipartition) -> Option<usize> {
        self.cols.iter().position(|c| c == nu)
    }

    pub fn get(&self, mu: &Multipartition, nu: &Multipartition) -> LaurentPoly {
        match (self.row_index(mu), self.col_index(nu)) {
            (Some(r), Some(c)) => self.entries.get(&(r, c)).cloned().unwrap_or_default(),
            _ => LaurentPoly::zero(),
        }
    }

    fn set(&mut self, mu: &Multipartition, nu: &Multipartition, p: LaurentPoly) {
        let key = (self.row_index(mu).expect("row"), self.col_index(nu).expect("col"));
        if p.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, p);
        }
    }

    /// Nonzero entries as `(row, col, d)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Multipartition, &Multipartition, &LaurentPoly)> {
        self.entries.iter().map(|(&(r, c), p)| (&self.rows[r], &self.cols[c], p))
    }

    /// Unitriangularity, `d_{mu,mu} = 1` and off-diagonal entries in `q Z_{>=0}[q]`.
    pub fn check_invariants(&self) -> Result<()> {
        for nu in &self.cols {
            if !self.get(nu, nu).is_one() {
                return Err(Error::Inconsistent(format!("d[{nu},{nu}] = {}", self.get(nu, nu))));
            }
        }
        for (mu, nu, p) in self.nonzero() {
            if mu == nu {
                continue;
            }
            if !mu.strictly_dominates(nu)? {
                return Err(Error::Inconsistent(format!("d[{mu},{nu}] = {p} but {nu} is not below {mu}")));
            }
            if !p.in_q_nonneg_poly() {
                return Err(Error::Inconsistent(format!("d[{mu},{nu}] = {p} is not in qZ>=0[q]")));
            }
        }
        Ok(())
    }

    /// `d_{mu,nu}(1)`, rows by columns.
    pub fn at_q1(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows.len())
            .map(|r| {
                (0..self.cols.len())
                    .map(|c| self.entries.get(&(r, c)).map(LaurentPoly::eval_one).unwrap_or_default())
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixRepr::from(self)).expect("plain data")
    }

    pub fn from_json(v: serde_json::Value) -> Result<Self> {
        serde_json::from_value::<MatrixRepr>(v)?.try_into()
    }

    fn write_csv(&self, cell: impl Fn(usize, usize) -> String) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("mu".to_string()).chain(self.cols.iter().map(ToString::to_string));
        w.write_record(header).map_err(csv_error)?;
        for (r, mu) in self.rows.iter().enumerate() {
            let rec = std::iter::once(mu.to_string()).chain((0..self.cols.len()).map(|c| cell(r, c)));
            w.write_record(rec).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("utf8 input"))
    }

    pub fn to_csv(&self) -> Result<String> {
        self.write_csv(|r, c| self.entries.get(&(r, c)).cloned().unwrap_or_default().to_string())
    }

    pub fn to_csv_q1(&self) -> Result<String> {
        let m = self.at_q1();
        self.write_csv(|r, c| m[r][c].to_string())
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = std::iter::once(
            std::iter::once(String::new()).chain(self.cols.iter().map(ToString::to_string)).collect(),
        )
        .chain(self.rows.iter().enumerate().map(|(r, mu)| {
            std::iter::once(mu.to_string())
                .chain((0..self.cols.len()).map(|c| match self.entries.get(&(r, c)) {
                    Some(p) => p.to_string(),
                    None => ".".into(),
                }))
                .collect()
        }))
        .collect();
        let ncols = cells[0].len();
        let widths: Vec<usize> = (0..ncols).map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    e: u32,
    kappa: Vec<Residue>,
    alpha: RootElement,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<(String, String, LaurentPoly)>,
}

impl From<&DecompositionMatrix> for MatrixRepr {
    fn from(m: &DecompositionMatrix) -> Self {
        Self {
            e: m.e,
            kappa: m.kappa.clone(),
            alpha: m.alpha.clone(),
            rows: m.rows.iter().map(ToString::to_string).collect(),
            cols: m.cols.iter().map(ToString::to_string).collect(),
            entries: m.nonzero().map(|(r, c, p)| (r.to_string(), c.to_string(), p.clone())).collect(),
        }
    }
}

impl TryFrom<MatrixRepr> for DecompositionMatrix {
    type Error = Error;
    fn try_from(r: MatrixRepr) -> Result<Self> {
        let parse = |v: &[String]| v.iter().map(|s| s.parse()).collect::<Result<Vec<Multipartition>>>();
        let mut m = Self {
            e: r.e,
            kappa: r.kappa,
            alpha: r.alpha,
            rows: parse(&r.rows)?,
            cols: parse(&r.cols)?,
            entries: BTreeMap::new(),
        };
        for (row, col, p) in r.entries {
            let (mu, nu): (Multipartition, Multipartition) = (row.parse()?, col.parse()?);
            if m.row_index(&mu).is_none() || m.col_index(&nu).is_none() {
                return Err(Error::Parse(format!("entry ({row}, {col}) outside the matrix")));
            }
            m.set(&mu, &nu, p);
        }
        Ok(m)
    }
}

fn require_level_one(params: &Params) -> Result<()> {
    if params.level() != 1 || params.e.get() == 0 {
        return Err(Error::Domain("this construction needs level one and e > 0".into()));
    }
    Ok(())
}

fn require_restricted(lam: &Multipartition, params: &Params) -> Result<()> {
    require_level_one(params)?;
    if is_restricted_closed_form(lam, params) != Some(true) {
        return Err(Error::Domain(format!("{lam} is not {}-restricted", params.e)));
    }
    Ok(())
}

/// The bottom removable node `A` of `lam` with `lam_A` still restricted.
fn bottom_restricted_removable(lam: &Multipartition, params: &Params) -> Result<crate::multipartition::Node> {
    lam.removable_nodes()
        .into_iter()
        .rev()
        .find(|a| is_restricted_closed_form(&lam.remove_node(a).expect("removable"), params) == Some(true))
        .ok_or_else(|| Error::Inconsistent(format!("{lam} has no removable node leaving a restricted partition")))
}

/// `j^lam`: `j_d = res A` and the prefix is `j^{lam_A}`.
pub fn j_sequence(lam: &Multipartition, params: &Params) -> Result<ResidueSeq> {
    require_restricted(lam, params)?;
    let mut seq = Vec::with_capacity(lam.size());
    let mut cur = lam.clone();
    while !cur.is_empty() {
        let a = bottom_restricted_removable(&cur, params)?;
        seq.push(params.residue(&a)?);
        cur = cur.remove_node(&a)?;
    }
    seq.reverse();
    Ok(seq)
}

/// Sizes `r_1, r_2, ...` of the successive bottom removable sequences.
pub fn bottom_sequence_sizes(lam: &Multipartition, params: &Params) -> Result<Vec<usize>> {
    require_restricted(lam, params)?;
    let mut sizes = Vec::new();
    let mut cur = lam.clone();
    while !cur.is_empty() {
        let a = bottom_restricted_removable(&cur, params)?;
        let seq: Vec<_> = cur.removable_nodes().into_iter().filter(|n| !n.is_above(&a)).collect();
        sizes.push(seq.len());
        for n in seq.iter().rev() {
            cur = cur.remove_node(n)?;
        }
    }
    Ok(sizes)
}

/// `r_lam = [r_1]! [r_2]! ... [r_t]!`
pub fn r_lambda(lam: &Multipartition, params: &Params) -> Result<LaurentPoly> {
    Ok(bottom_sequence_sizes(lam, params)?
        .into_iter()
        .fold(LaurentPoly::one(), |acc, r| acc * quantum_factorial(r as u32)))
}

/// `m_lam(M)`: the coefficient of `j^lam` in the character.
pub fn m_mult(ch: &QCharacter, lam: &Multipartition, params: &Params) -> Result<LaurentPoly> {
    if ch.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    if ch.len() != lam.size() {
        return Err(Error::Domain(format!("character of length {} against {lam}", ch.len())));
    }
    Ok(ch.coeff(&j_sequence(lam, params)?))
}

/// Splits `t = d r + m` with `d` in `q Z_{>=0}[q]` and `m` bar-invariant
/// and nonnegative, given bar-invariant nonnegative `r != 0`.
pub fn solve_basic_task(t: &LaurentPoly, r: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    if r.is_zero() || !r.is_bar_invariant() || !r.is_nonnegative() {
        return Err(Error::Domain(format!("basic task needs a nonzero bar-invariant nonnegative r, got {r}")));
    }
    let big_r = r.max_exp().expect("nonzero");
    let b = r.coeff(big_r);
    let inconsistent = |why: &str| Error::Inconsistent(format!("basic task for t = {t}, r = {r}: {why}"));

    let mut rest = t.clone();
    let mut d = LaurentPoly::zero();
    let mut m = LaurentPoly::zero();
    while !rest.is_zero() {
        let top = rest.max_exp().expect("nonzero");
        let n = -rest.min_exp().expect("nonzero");
        if top <= 0 {
            // d r would reach exponent >= 1 with no cancellation, so d is done.
            m += &rest;
            break;
        }
        if top < n {
            return Err(inconsistent("lowest exponent outweighs the highest"));
        }
        if top > n {
            let a = rest.coeff(top);
            let (quot, remainder) = a.div_rem(&b);
            if !remainder.is_zero() || top - big_r < 1 {
                return Err(inconsistent("top term does not come from d r"));
            }
            let term = LaurentPoly::monomial(quot, top - big_r);
            rest -= &(&term * r);
            d += &term;
        } else {
            let a = rest.coeff(-n);
            let pair = LaurentPoly::from_terms([(-n, a.clone()), (n, a)]);
            rest -= &pair;
            m += &pair;
        }
    }
    if !m.is_bar_invariant() || !m.is_nonnegative() || !d.in_q_nonneg_poly() {
        return Err(inconsistent("solution violates the positivity constraints"));
    }
    Ok((d, m))
}

/// Row-by-row computation for level one: columns in decreasing dominance,
/// rows increasing, tracking `m_kappa(D(nu))` alongside `d_{nu,kappa}`.
pub fn decomposition_matrix_llt(block: &Block) -> Result<DecompositionMatrix> {
    let params = &block.params;
    require_level_one(params)?;
    let mut out = DecompositionMatrix::empty(block);
    let mut ascending = block.rows.clone();
    ascending.reverse();

    for lam in &block.cols {
        let r_lam = r_lambda(lam, params)?;
        let j = j_sequence(lam, params)?;
        // m_lam(D(nu)) for restricted nu computed so far in this column
        let mut m_irr: HashMap<&Multipartition, LaurentPoly> = HashMap::new();
        for mu in ascending.iter().filter(|mu| *mu == lam || block.strictly_dominates(mu, lam)) {
            let mut t = block.specht(mu).coeff(&j);
            for nu in block.cols.iter().filter(|nu| {
                *nu != mu && block.strictly_dominates(mu, nu) && block.strictly_dominates(nu, lam)
            }) {
                t -= &(out.get(mu, nu) * m_irr.get(nu).cloned().unwrap_or_default());
            }
            if mu == lam {
                if t != r_lam {
                    return Err(Error::Inconsistent(format!("m_lam(S({lam})) = {t} but r_lam = {r_lam}")));
                }
                out.set(mu, lam, LaurentPoly::one());
                m_irr.insert(mu, r_lam.clone());
            } else if block.cols.contains(mu) {
                let (d, m) = solve_basic_task(&t, &r_lam)?;
                out.set(mu, lam, d);
                m_irr.insert(mu, m);
            } else {
                let d = t
                    .exact_div(&r_lam)?
                    .ok_or_else(|| Error::Inconsistent(format!("r_lam = {r_lam} does not divide {t}")))?;
                out.set(mu, lam, d);
            }
        }
    }
    out.check_invariants()?;
    Ok(out)
}

/// Incremental reduced row echelon form over the rationals.
struct Echelon {
    unknowns: usize,
    // (pivot column, row with a trailing right-hand side)
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            rows: Vec::new(),
        }
    }

    /// Adds an equation; `Err` when it contradicts the earlier ones.
    fn insert(&mut self, mut row: Vec<BigRational>) -> Result<()> {
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = (0..self.unknowns).find(|&k| !row[k].is_zero()) else {
            if row[self.unknowns].is_zero() {
                return Ok(());
            }
            return Err(Error::Inconsistent("bar-invariance system has no solution".into()));
        };
        let inv = row[p].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, row));
        Ok(())
    }

    fn solution(&self) -> Result<Vec<BigRational>> {
        if self.rows.len() < self.unknowns {
            return Err(Error::Inconsistent("bar-invariance system is underdetermined".into()));
        }
        let mut x = vec![BigRational::zero(); self.unknowns];
        for (p, r) in &self.rows {
            x[*p] = r[self.unknowns].clone();
        }
        Ok(x)
    }
}

/// The unique `d_{mu,nu}` in `q Z[q]` making `ch S(mu) - sum d ch D(nu)`
/// bar-invariant, given `ch D(nu)` for every restricted `nu` below `mu`.
fn bar_step(
    block: &Block,
    mu: &Multipartition,
    ch: &QCharacter,
    irr: &HashMap<Multipartition, QCharacter>,
) -> Result<(Vec<(Multipartition, LaurentPoly)>, QCharacter)> {
    let below: Vec<&Multipartition> = block.cols.iter().filter(|nu| block.strictly_dominates(mu, nu)).collect();
    let top = ch.max_exp().unwrap_or(0).max(0);
    let unknowns = below.len() * top as usize;
    let mut residual = ch.clone();
    let mut found = Vec::new();

    if unknowns > 0 {
        // Unknown (s, k) is the coefficient of q^k in d_{mu, below[s]}.
        let var = |s: usize, k: i64| s * top as usize + (k - 1) as usize;
        let mut seqs: BTreeMap<&ResidueSeq, ()> = BTreeMap::new();
        for (i, _) in ch.iter() {
            seqs.insert(i, ());
        }
        for nu in &below {
            for (i, _) in irr[*nu].iter() {
                seqs.insert(i, ());
            }
        }
        let mut max_exp = top;
        for nu in &below {
            max_exp = max_exp.max(top + irr[*nu].max_exp().unwrap_or(0));
        }
        let mut system = Echelon::new(unknowns);
        for i in seqs.keys() {
            let s_coeff = ch.coeff(i);
            let d_coeffs: Vec<LaurentPoly> = below.iter().map(|nu| irr[*nu].coeff(i)).collect();
            for n in 1..=max_exp {
                // [q^n] - [q^-n] of the residual vanishes.
                let mut row = vec![BigRational::zero(); unknowns + 1];
                let mut any = false;
                for (s, c) in d_coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for k in 1..=top {
                        let v = c.coeff(n - k) - c.coeff(-n - k);
                        if !v.is_zero() {
                            row[var(s, k)] = BigRational::from_integer(-v);
                            any = true;
                        }
                    }
                }
                let rhs = s_coeff.coeff(n) - s_coeff.coeff(-n);
                if !any && rhs.is_zero() {
                    continue;
                }
                row[unknowns] = BigRational::from_integer(-rhs);
                system.insert(row)?;
            }
        }
        let x = system.solution()?;
        for (s, nu) in below.iter().enumerate() {
            let mut d = LaurentPoly::zero();
            for k in 1..=top {
                let v = &x[var(s, k)];
                if !v.is_integer() || v.is_negative() {
                    return Err(Error::Inconsistent(format!("d[{mu},{nu}] has coefficient {v} at q^{k}")));
                }
                d.add_term(k, v.to_integer());
            }
            if !d.is_zero() {
                residual -= &irr[*nu].scale(&d);
                found.push(((*nu).clone(), d));
            }
        }
    }
    if !residual.is_bar_invariant() {
        return Err(Error::Inconsistent(format!("residual of {mu} is not bar-invariant")));
    }
    Ok((found, residual))
}

/// Works up the block in increasing lexicographic order, which refines
/// dominance. Valid for every level and every `e`.
pub fn decomposition_matrix_bar(block: &Block) -> Result<DecompositionMatrix> {
    let mut out = DecompositionMatrix::empty(block);
    let mut irr: HashMap<Multipartition, QCharacter> = HashMap::new();
    for mu in block.rows.iter().rev() {
        let (found, residual) = bar_step(block, mu, block.specht(mu), &irr)?;
        for (nu, d) in found {
            out.set(mu, &nu, d);
        }
        if block.cols.contains(mu) {
            if !residual.is_nonnegative() || residual.is_zero() {
                return Err(Error::Inconsistent(format!("residual for D({mu}) is zero or has negative coefficients")));
            }
            out.set(mu, mu, LaurentPoly::one());
            irr.insert(mu.clone(), residual);
        } else if !residual.is_zero() {
            return Err(Error::Inconsistent(format!("nonzero residual for the unrestricted {mu}")));
        }
    }
    out.check_invariants()?;
    Ok(out)
}

/// How often extremal peeling stalled and needed the bar-invariance fallback.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PeelingStats {
    pub extremal_steps: usize,
    pub fallback_rows: usize,
}

/// Peels `ch S(mu)` apart by extremal sequences. Each step prefers an
/// extremal sequence labelling an irreducible whose character is already
/// known. When every extremal sequence labels `mu` itself, the remaining
/// known constituents are invisible to extremal sequences; their
/// multiplicities are then fixed by bar-invariance of `ch D(mu)`.
pub fn decomposition_matrix_extremal(block: &Block) -> Result<DecompositionMatrix> {
    decomposition_matrix_extremal_with_stats(block).map(|(m, _)| m)
}

pub fn decomposition_matrix_extremal_with_stats(block: &Block) -> Result<(DecompositionMatrix, PeelingStats)> {
    let params = &block.params;
    let mut out = DecompositionMatrix::empty(block);
    let mut stats = PeelingStats::default();
    let mut irr: HashMap<Multipartition, QCharacter> = HashMap::new();
    for mu in block.rows.iter().rev() {
        let mut residual = block.specht(mu).clone();
        let mut row: BTreeMap<Multipartition, LaurentPoly> = BTreeMap::new();
        while !residual.is_zero() {
            let greedy = extremal_sequence(&residual, params)?;
            let ext = if irr.contains_key(&greedy.mu) {
                Some(greedy)
            } else {
                let all = all_extremal_sequences(&residual, params)?;
                if let Some(x) = all.iter().find(|x| &x.mu != mu && !irr.contains_key(&x.mu)) {
                    return Err(Error::Inconsistent(format!("extremal constituent {} of S({mu}) is unknown", x.mu)));
                }
                all.into_iter().find(|x| irr.contains_key(&x.mu))
            };
            let Some(ext) = ext else {
                // Only D(mu) is visible.
                let greedy = extremal_sequence(&residual, params)?;
                let mult = multiplicity_along(&residual, &greedy)?;
                if !mult.is_one() {
                    return Err(Error::Inconsistent(format!("D({mu}) occurs in S({mu}) with multiplicity {mult}")));
                }
                if !residual.is_bar_invariant() {
                    stats.fallback_rows += 1;
                    let (hidden, rest) = bar_step(block, mu, &residual, &irr)?;
                    for (nu, d) in hidden {
                        *row.entry(nu).or_default() += &d;
                    }
                    residual = rest;
                }
                if !residual.is_nonnegative() {
                    return Err(Error::Inconsistent(format!("ch D({mu}) has negative coefficients")));
                }
                row.insert(mu.clone(), mult);
                irr.insert(mu.clone(), std::mem::replace(&mut residual, QCharacter::zero(mu.size())));
                break;
            };
            stats.extremal_steps += 1;
            let mult = multiplicity_along(&residual, &ext)?;
            if mult.is_zero() || !mult.is_nonnegative() {
                return Err(Error::Inconsistent(format!("multiplicity {mult} of D({}) in S({mu})", ext.mu)));
            }
            residual -= &irr[&ext.mu].scale(&mult);
            if residual.has_negative_coefficient() {
                return Err(Error::Inconsistent(format!("peeling S({mu}) left negative coefficients")));
            }
            *row.entry(ext.mu).or_default() += &mult;
        }
        if block.cols.contains(mu) && !irr.contains_key(mu) {
            return Err(Error::Inconsistent(format!("S({mu}) has no composition factor D({mu})")));
        }
        for (nu, d) in row {
            out.set(mu, &nu, d);
        }
    }
    out.check_invariants()?;
    Ok((out, stats))
}

/// `ch D(nu)` for every restricted `nu`, by unitriangular back-substitution.
pub fn irreducible_qcharacters(block: &Block, matrix: &DecompositionMatrix) -> Result<BTreeMap<Multipartition, QCharacter>> {
    let mut irr: BTreeMap<Multipartition, QCharacter> = BTreeMap::new();
    for nu in block.cols.iter().rev() {
        let mut ch = block.specht(nu).clone();
        for (mu, lam, d) in matrix.nonzero() {
            if mu == nu && lam != nu {
                let known = irr
                    .get(lam)
                    .ok_or_else(|| Error::Inconsistent(format!("d[{nu},{lam}] nonzero above the diagonal")))?;
                ch -= &known.scale(d);
            }
        }
        irr.insert(nu.clone(), ch);
    }
    Ok(irr)
}

/// `sum_nu d_{mu,nu}(1) dim D(nu) = |T(mu)|` for every row.
pub fn check_column_consistency(matrix: &DecompositionMatrix, irr: &BTreeMap<Multipartition, QCharacter>) -> Result<()> {
    let q1 = matrix.at_q1();
    for (r, mu) in matrix.rows.iter().enumerate() {
        let total: BigInt = matrix.cols.iter().enumerate().map(|(c, nu)| &q1[r][c] * irr[nu].mass()).sum();
        let count = BigInt::from(standard_tableaux(mu).len());
        if total != count {
            return Err(Error::Inconsistent(format!("row {mu}: {total} != {count} tableaux")));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Llt,
    Bar,
    Extremal,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Llt => "llt",
            Method::Bar => "bar",
            Method::Extremal => "extremal",
        }
    }
}

pub fn decomposition_matrix(block: &Block, method: Method) -> Result<DecompositionMatrix> {
    match method {
        Method::Llt => decomposition_matrix_llt(block),
        Method::Bar => decomposition_matrix_bar(block),
        Method::Extremal => decomposition_matrix_extremal(block),
    }
}

/// Bumped whenever the stored format or the algorithms change.
pub const CACHE_VERSION: u32 = 1;

/// On-disk matrix cache at `<dir>/<e>/<kappa>/<alpha>.json`.
#[derive(Clone, Debug)]
pub struct MatrixCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    matrix: serde_json::Value,
}

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path(&self, params: &Params, alpha: &RootElement) -> PathBuf {
        self.dir
            .join(params.e.get().to_string())
            .join(params.kappa.key())
            .join(format!("{}.json", alpha.key()))
    }

    /// A cached matrix, or `None` if absent, unreadable or stale.
    pub fn load(&self, params: &Params, alpha: &RootElement) -> Option<DecompositionMatrix> {
        let text = fs::read_to_string(self.path(params, alpha)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.version != CACHE_VERSION {
            return None;
        }
        DecompositionMatrix::from_json(file.matrix).ok()
    }

    /// Writes to a temporary file and renames it into place.
    pub fn store(&self, params: &Params, matrix: &DecompositionMatrix) -> Result<()> {
        let path = self.path(params, &matrix.alpha);
        let parent = path.parent().expect("nested path");
        fs::create_dir_all(parent)?;
        let file = CacheFile {
            version: CACHE_VERSION,
            matrix: matrix.to_json(),
        };
        let tmp = tmp_path(&path);
        fs::write(&tmp, serde_json::to_vec(&file)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Loads or computes (then stores) the matrix of a block.
    pub fn get_or_compute(&self, block: &Block, method: Method) -> Result<DecompositionMatrix> {
        if let Some(m) = self.load(&block.params, &block.alpha) {
            return Ok(m);
        }
        let m = decomposition_matrix(block, method)?;
        self.store(&block.params, &m)?;
        Ok(m)
    }
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().expect("file").to_os_string();
    name.push(format!(".tmp{}", std::process::id()));
    path.with_file_name(name)
}
