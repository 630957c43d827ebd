//! Explicit KLR representations as exact rational matrices, the graded
//! seminormal representations in the semisimple level-one case, and a
//! verifier for the defining relations.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{Adjacency, Params, Residue};
use crate::character::ResidueSeq;
use crate::error::{Error, Result};
use crate::multipartition::Multipartition;
use crate::tableaux::{standard_tableaux, Permutation};

/// A dense square matrix over the rationals. Acts on column vectors:
/// entry `(row, col)` is the coefficient of basis vector `row` in the
/// image of basis vector `col`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for k in 0..n {
            m.set(k, k, BigRational::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: BigRational) {
        self.data[row * self.n + col] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigRational::from_integer(BigInt::from(c));
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * &c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.n, k % self.n, v))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVector {
    pub label: String,
    pub seq: ResidueSeq,
    pub degree: i64,
}

/// Matrices for every generator of the KLR algebra on a finite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KLRRep {
    pub d: usize,
    pub basis: Vec<BasisVector>,
    /// `e(i)` for each sequence with a nonzero weight space.
    pub idempotents: BTreeMap<ResidueSeq, Matrix>,
    /// `y_1, ..., y_d`
    pub y: Vec<Matrix>,
    /// `psi_1, ..., psi_{d-1}`
    pub psi: Vec<Matrix>,
}

impl KLRRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Projections onto the basis vectors sharing each residue sequence.
    pub fn weight_idempotents(basis: &[BasisVector]) -> BTreeMap<ResidueSeq, Matrix> {
        let mut out: BTreeMap<ResidueSeq, Matrix> = BTreeMap::new();
        for (k, b) in basis.iter().enumerate() {
            out.entry(b.seq.clone())
                .or_insert_with(|| Matrix::zero(basis.len()))
                .set(k, k, BigRational::one());
        }
        out
    }

    fn idempotent(&self, seq: &[Residue]) -> Matrix {
        self.idempotents.get(seq).cloned().unwrap_or_else(|| Matrix::zero(self.dim()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn sparse(m: &Matrix) -> Vec<(usize, usize, String)> {
            m.entries().map(|(r, c, v)| (r, c, v.to_string())).collect()
        }
        serde_json::json!({
            "d": self.d,
            "basis": self.basis,
            "idempotents": self.idempotents.iter().map(|(s, m)| serde_json::json!({"seq": s, "entries": sparse(m)})).collect::<Vec<_>>(),
            "y": self.y.iter().map(sparse).collect::<Vec<_>>(),
            "psi": self.psi.iter().map(sparse).collect::<Vec<_>>(),
        })
    }
}

/// The graded seminormal representation of `S(mu)` for `e = 0`, level one:
/// `y_r = 0` and `psi_r v_T = v_{s_r T}` when `s_r T` is standard.
pub fn build_seminormal(mu: &Multipartition, params: &Params) -> Result<KLRRep> {
    if params.e.get() != 0 || params.level() != 1 || mu.level() != 1 {
        return Err(Error::Domain("seminormal representations need e = 0 and level one".into()));
    }
    let d = mu.size();
    let tableaux = standard_tableaux(mu);
    let index: HashMap<_, _> = tableaux.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
    let basis: Vec<BasisVector> = tableaux
        .iter()
        .map(|t| {
            Ok(BasisVector {
                label: t.to_string(),
                seq: t.residue_sequence(params)?,
                degree: t.degree(params)?,
            })
        })
        .collect::<Result<_>>()?;
    let n = basis.len();
    let mut psi = Vec::with_capacity(d.saturating_sub(1));
    for r in 1..d {
        let s = Permutation::simple(d, r);
        let mut m = Matrix::zero(n);
        for (k, t) in tableaux.iter().enumerate() {
            let swapped = t.act(&s)?;
            if let Some(&target) = index.get(&swapped) {
                m.set(target, k, BigRational::one());
            }
        }
        psi.push(m);
    }
    Ok(KLRRep {
        d,
        idempotents: KLRRep::weight_idempotents(&basis),
        basis,
        y: vec![Matrix::zero(n); d],
        psi,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlrViolation {
    pub relation: String,
    pub r: Option<usize>,
    pub seq: Option<ResidueSeq>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlrReport {
    pub checks: usize,
    pub violations: Vec<KlrViolation>,
    /// Pairs `(r, i)` with `i_r = i_{r+1}` on a nonzero weight space.
    pub equal_adjacent_residues: usize,
}

impl KlrReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, relation: &str, r: Option<usize>, seq: Option<&ResidueSeq>) {
        self.checks += 1;
        if !ok {
            self.violations.push(KlrViolation {
                relation: relation.into(),
                r,
                seq: seq.cloned(),
            });
        }
    }

    fn merge(&mut self, other: KlrReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self.equal_adjacent_residues += other.equal_adjacent_residues;
    }
}

/// Evaluates every defining relation, the cyclotomic relation and degree
/// homogeneity on `rep`. Generators are 1-based as in the presentation.
pub fn verify_klr_relations(rep: &KLRRep, params: &Params) -> KlrReport {
    let n = rep.dim();
    let d = rep.d;
    let id = Matrix::identity(n);
    let y = |r: usize| &rep.y[r - 1];
    let psi = |r: usize| &rep.psi[r - 1];
    let mut report = KlrReport::default();

    let shapes_ok = rep.y.len() == d && rep.psi.len() == d.saturating_sub(1);
    report.check(shapes_ok, "generator count", None, None);
    if !shapes_ok {
        return report;
    }

    // Idempotents.
    let mut sum = Matrix::zero(n);
    for (i, ei) in &rep.idempotents {
        sum = &sum + ei;
        for (j, ej) in &rep.idempotents {
            let expect = if i == j { ei.clone() } else { Matrix::zero(n) };
            report.check((ei * ej) == expect, "e(i)e(j) = delta e(i)", None, Some(i));
        }
    }
    report.check(sum == id, "sum e(i) = 1", None, None);

    // Commutation among the y's and the far-apart psi's.
    for r in 1..=d {
        for s in 1..=d {
            report.check((y(r) * y(s)) == (y(s) * y(r)), "y_r y_s = y_s y_r", Some(r), None);
        }
    }
    for r in 1..d {
        for s in (1..=d).filter(|&s| s != r && s != r + 1) {
            report.check((psi(r) * y(s)) == (y(s) * psi(r)), "psi_r y_s = y_s psi_r", Some(r), None);
        }
        for s in (1..d).filter(|&s| s.abs_diff(r) > 1) {
            report.check((psi(r) * psi(s)) == (psi(s) * psi(r)), "psi_r psi_s = psi_s psi_r", Some(r), None);
        }
    }

    let seqs: Vec<&ResidueSeq> = rep.idempotents.keys().collect();
    let per_seq: Vec<KlrReport> = seqs
        .par_iter()
        .map(|&i| {
            let mut rep_i = KlrReport::default();
            let ei = &rep.idempotents[i];
            for r in 1..=d {
                rep_i.check((y(r) * ei) == (ei * y(r)), "y_r e(i) = e(i) y_r", Some(r), Some(i));
            }
            for r in 1..d {
                let (a, b) = (i[r - 1], i[r]);
                let mut si = i.clone();
                si.swap(r - 1, r);
                rep_i.check((psi(r) * ei) == (&rep.idempotent(&si) * psi(r)), "psi_r e(i) = e(s_r i) psi_r", Some(r), Some(i));

                let eq = a == b;
                if eq {
                    rep_i.equal_adjacent_residues += 1;
                }
                let plus = if eq { ei.clone() } else { Matrix::zero(n) };
                let lhs = &(psi(r) * y(r + 1)) * ei;
                let rhs = &(&(y(r) * psi(r)) * ei) + &plus;
                rep_i.check(lhs == rhs, "psi_r y_{r+1} e(i)", Some(r), Some(i));
                let lhs = &(y(r + 1) * psi(r)) * ei;
                let rhs = &(&(psi(r) * y(r)) * ei) + &plus;
                rep_i.check(lhs == rhs, "y_{r+1} psi_r e(i)", Some(r), Some(i));

                let sq = &(psi(r) * psi(r)) * ei;
                let diff = y(r + 1) - y(r);
                let expect = match params.adjacency(a, b) {
                    Adjacency::Equal => Matrix::zero(n),
                    Adjacency::Unlinked => ei.clone(),
                    Adjacency::Forward => &diff * ei,
                    Adjacency::Backward => &diff.scale(-1) * ei,
                    Adjacency::Double => &(&diff * &diff.scale(-1)) * ei,
                };
                rep_i.check(sq == expect, "psi_r^2 e(i)", Some(r), Some(i));
            }
            for r in 1..d.saturating_sub(1) {
                let (a, b, c) = (i[r - 1], i[r], i[r + 1]);
                let lhs = &(&(psi(r) * psi(r + 1)) * psi(r)) * ei;
                let braid = &(&(psi(r + 1) * psi(r)) * psi(r + 1)) * ei;
                let correction = if a != c {
                    Matrix::zero(n)
                } else {
                    match params.adjacency(a, b) {
                        Adjacency::Forward => ei.clone(),
                        Adjacency::Backward => ei.scale(-1),
                        Adjacency::Double => &(&(y(r) + y(r + 2)) - &y(r + 1).scale(2)) * ei,
                        _ => Matrix::zero(n),
                    }
                };
                rep_i.check(lhs == &braid + &correction, "braid psi_r psi_{r+1} psi_r e(i)", Some(r), Some(i));
            }
            let m = params.kappa.multiplicity(i[0]);
            if d > 0 {
                rep_i.check((&y(1).pow(m as u32) * ei).is_zero(), "cyclotomic y_1^(Lambda, alpha_i1) e(i) = 0", Some(1), Some(i));
            }
            rep_i
        })
        .collect();
    for r in per_seq {
        report.merge(r);
    }

    // Degrees: y_r raises by 2, psi_r e(i) shifts by -a_{i_r, i_{r+1}}.
    let deg = |k: usize| rep.basis[k].degree;
    for r in 1..=d {
        let ok = y(r).entries().all(|(to, from, _)| deg(to) == deg(from) + 2);
        report.check(ok, "deg y_r = 2", Some(r), None);
    }
    for r in 1..d {
        let ok = psi(r).entries().all(|(to, from, _)| {
            let s = &rep.basis[from].seq;
            deg(to) == deg(from) - params.cartan(s[r - 1], s[r])
        });
        report.check(ok, "deg psi_r e(i) = -a", Some(r), None);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e0() -> Params {
        Params::new(0, &[0]).unwrap()
    }

    #[test]
    fn single_row_has_zero_psi() {
        let rep = build_seminormal(&Multipartition::single(&[4]), &e0()).unwrap();
        assert_eq!(rep.dim(), 1);
        assert!(rep.psi.iter().all(Matrix::is_zero));
        assert!(verify_klr_relations(&rep, &e0()).passed());
    }

    #[test]
    fn two_one_psi_action() {
        let rep = build_seminormal(&Multipartition::single(&[2, 1]), &e0()).unwrap();
        let lead = rep.basis.iter().position(|b| b.label == "1,2/3").unwrap();
        let other = rep.basis.iter().position(|b| b.label == "1,3/2").unwrap();
        // psi_1 on T^mu swaps 1 and 2, which is not standard.
        assert!((0..2).all(|k| rep.psi[0].get(k, lead).is_zero()));
        assert!(rep.psi[1].get(other, lead).is_one());
    }

    #[test]
    fn rejects_other_configurations() {
        let mu = Multipartition::single(&[2]);
        assert!(build_seminormal(&mu, &Params::new(3, &[0]).unwrap()).is_err());
        assert!(build_seminormal(&"1|1".parse().unwrap(), &Params::new(0, &[0, 1]).unwrap()).is_err());
    }

    #[test]
    fn corrupted_rep_is_caught() {
        let mut rep = build_seminormal(&Multipartition::single(&[2, 2]), &e0()).unwrap();
        assert!(verify_klr_relations(&rep, &e0()).passed());
        let (to, from) = rep.psi[1].entries().map(|(a, b, _)| (a, b)).next().unwrap();
        rep.psi[1].set(to, from, BigRational::from_integer(BigInt::from(-1)));
        assert!(!verify_klr_relations(&rep, &e0()).passed());
    }

    #[test]
    fn json_dump() {
        let rep = build_seminormal(&Multipartition::single(&[2, 1]), &e0()).unwrap();
        let v = rep.to_json();
        assert_eq!(v["basis"].as_array().unwrap().len(), 2);
        assert_eq!(v["psi"][1], serde_json::json!([[0, 1, "1"], [1, 0, "1"]]));
    }
}
