//! The level-`l` Fock space with its Chevalley action, and a verifier for
//! the quantum-group relations on truncations.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{Params, Residue};
use crate::error::{Error, Result};
use crate::laurent::{quantum_binomial, quantum_factorial, LaurentPoly};
use crate::multipartition::{multipartitions, Multipartition};

/// A finite combination of basis vectors `M_mu`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<Multipartition, LaurentPoly>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(mu: Multipartition) -> Self {
        let mut v = Self::zero();
        v.add_term(mu, &LaurentPoly::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mu: Multipartition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let mut p = self.terms.remove(&mu).unwrap_or_default();
        p += c;
        if !p.is_zero() {
            self.terms.insert(mu, p);
        }
    }

    pub fn coeff(&self, mu: &Multipartition) -> LaurentPoly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multipartition, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (mu, p) in &self.terms {
            out.add_term(mu.clone(), &(p * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, p) in &other.terms {
            out.add_term(mu.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::from(-1)))
    }

    fn map_basis(&self, f: impl Fn(&Multipartition) -> Vec<(Multipartition, LaurentPoly)>) -> Self {
        let mut out = Self::zero();
        for (mu, p) in &self.terms {
            for (nu, c) in f(mu) {
                out.add_term(nu, &(p * &c));
            }
        }
        out
    }
}

/// `E_i M_mu = sum_A q^{d_A(mu)} M_{mu_A}` over removable `i`-nodes `A`.
pub fn fock_e(params: &Params, i: Residue, v: &FockVector) -> FockVector {
    let i = params.reduce(i);
    v.map_basis(|mu| {
        mu.i_nodes(params, i)
            .0
            .iter()
            .map(|a| {
                let d = mu.d_below(params, a).expect("removable");
                (mu.remove_node(a).expect("removable"), LaurentPoly::q_pow(d))
            })
            .collect()
    })
}

/// `F_i M_mu = sum_B q^{-d^B(mu)} M_{mu^B}` over addable `i`-nodes `B`.
pub fn fock_f(params: &Params, i: Residue, v: &FockVector) -> FockVector {
    let i = params.reduce(i);
    v.map_basis(|mu| {
        mu.i_nodes(params, i)
            .1
            .iter()
            .map(|b| {
                let d = mu.d_above(params, b).expect("addable");
                (mu.add_node(b).expect("addable"), LaurentPoly::q_pow(-d))
            })
            .collect()
    })
}

/// `K_i M_mu = q^{d_i(mu)} M_mu`.
pub fn fock_k(params: &Params, i: Residue, v: &FockVector) -> FockVector {
    v.map_basis(|mu| vec![(mu.clone(), LaurentPoly::q_pow(mu.d_total(params, i)))])
}

pub fn fock_k_inv(params: &Params, i: Residue, v: &FockVector) -> FockVector {
    v.map_basis(|mu| vec![(mu.clone(), LaurentPoly::q_pow(-mu.d_total(params, i)))])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chevalley {
    E,
    F,
}

fn apply(params: &Params, op: Chevalley, i: Residue, v: &FockVector) -> FockVector {
    match op {
        Chevalley::E => fock_e(params, i, v),
        Chevalley::F => fock_f(params, i, v),
    }
}

/// `X^n / [n]!`, dividing each coefficient exactly.
pub fn fock_divided_power(params: &Params, op: Chevalley, i: Residue, n: u32, v: &FockVector) -> Result<FockVector> {
    if n == 0 {
        return Err(Error::Domain("divided powers need n >= 1".into()));
    }
    let mut w = v.clone();
    for _ in 0..n {
        w = apply(params, op, i, &w);
    }
    let fact = quantum_factorial(n);
    let mut out = FockVector::zero();
    for (mu, p) in w.iter() {
        out.add_term(mu.clone(), &p.div_exact_or_err(&fact)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub relation: String,
    pub mu: String,
    pub i: Residue,
    pub j: Residue,
    /// Left side minus right side, applied to `M_mu`.
    pub defect: FockVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Residues the checks range over. For `e = 0` this is a window around
/// `kappa` wide enough that every residue outside acts by zero on all
/// multipartitions in the truncation, apart from the trivial `K`s.
pub fn relation_residues(params: &Params, dmax: usize) -> Vec<Residue> {
    match params.e.residues() {
        Some(r) => r,
        None => {
            let k = params.kappa.kappa();
            let pad = dmax as i64 + 4;
            let lo = k.iter().min().expect("nonempty") - pad;
            let hi = k.iter().max().expect("nonempty") + pad;
            (lo..=hi).collect()
        }
    }
}

fn serre(params: &Params, op: Chevalley, i: Residue, j: Residue, v: &FockVector) -> Result<FockVector> {
    let n = (1 - params.cartan(i, j)) as u32;
    let mut total = FockVector::zero();
    for m in 0..=n {
        let mut w = v.clone();
        for _ in 0..m {
            w = apply(params, op, i, &w);
        }
        w = apply(params, op, j, &w);
        for _ in 0..n - m {
            w = apply(params, op, i, &w);
        }
        let mut c = quantum_binomial(n, m)?;
        if m % 2 == 1 {
            c = -c;
        }
        total = total.add(&w.scale(&c));
    }
    Ok(total)
}

/// Checks the weight, commutator and Serre relations on every `M_mu`
/// with `|mu| <= dmax`.
pub fn verify_uqg_relations(dmax: usize, params: &Params) -> Result<RelationReport> {
    let residues = relation_residues(params, dmax);
    let basis: Vec<Multipartition> = (0..=dmax).flat_map(|d| multipartitions(d, params.level())).collect();
    let q_minus = LaurentPoly::from_terms([(1, 1), (-1, -1)]);

    let per_mu: Vec<Result<RelationReport>> = basis
        .par_iter()
        .map(|mu| {
            let v = FockVector::basis(mu.clone());
            let mut report = RelationReport::default();
            let mut check = |relation: &str, i: Residue, j: Residue, lhs: FockVector, rhs: FockVector| {
                report.checks += 1;
                let defect = lhs.sub(&rhs);
                if !defect.is_zero() {
                    report.violations.push(Violation {
                        relation: relation.into(),
                        mu: mu.to_string(),
                        i,
                        j,
                        defect,
                    });
                }
            };
            for &i in &residues {
                for &j in &residues {
                    let a = params.cartan(i, j);
                    let ke = fock_k(params, i, &fock_e(params, j, &fock_k_inv(params, i, &v)));
                    check("K E K^-1", i, j, ke, fock_e(params, j, &v).scale(&LaurentPoly::q_pow(a)));
                    let kf = fock_k(params, i, &fock_f(params, j, &fock_k_inv(params, i, &v)));
                    check("K F K^-1", i, j, kf, fock_f(params, j, &v).scale(&LaurentPoly::q_pow(-a)));

                    let ef = fock_e(params, i, &fock_f(params, j, &v));
                    let fe = fock_f(params, j, &fock_e(params, i, &v));
                    let rhs = if i == j {
                        fock_k(params, i, &v).sub(&fock_k_inv(params, i, &v))
                    } else {
                        FockVector::zero()
                    };
                    check("[E, F]", i, j, ef.sub(&fe).scale(&q_minus), rhs);

                    if i != j {
                        check("Serre E", i, j, serre(params, Chevalley::E, i, j, &v)?, FockVector::zero());
                        check("Serre F", i, j, serre(params, Chevalley::F, i, j, &v)?, FockVector::zero());
                    }
                }
            }
            Ok(report)
        })
        .collect();

    let mut report = RelationReport::default();
    for r in per_mu {
        let r = r?;
        report.checks += r.checks;
        report.violations.extend(r.violations);
    }
    Ok(report)
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(mu, p)| format!("({p}) M[{mu}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mp: String,
    coeff: LaurentPoly,
}

impl Serialize for FockVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let items: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(mu, p)| TermRepr {
                mp: mu.to_string(),
                coeff: p.clone(),
            })
            .collect();
        items.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FockVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut v = FockVector::zero();
        for t in items {
            let mu: Multipartition = t.mp.parse().map_err(serde::de::Error::custom)?;
            v.add_term(mu, &t.coeff);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn empty(l: usize) -> FockVector {
        FockVector::basis(Multipartition::empty(l))
    }

    #[test]
    fn basic_actions() {
        let p = Params::new(2, &[0]).unwrap();
        assert!(fock_e(&p, 0, &empty(1)).is_zero());
        assert_eq!(fock_e(&p, 0, &FockVector::basis(mp("1"))), empty(1));
        assert_eq!(fock_f(&p, 0, &empty(1)), FockVector::basis(mp("1")));
        assert!(fock_f(&p, 1, &empty(1)).is_zero());

        // Addable 1-nodes of (1): (1,2) and (2,1). (2,1) has (1,2) above it.
        let f1 = fock_f(&p, 1, &FockVector::basis(mp("1")));
        assert!(f1.coeff(&mp("2")).is_one());
        assert_eq!(f1.coeff(&mp("1,1")), LaurentPoly::q_pow(-1));
    }

    #[test]
    fn k_eigenvalues() {
        let p = Params::new(3, &[0, 0]).unwrap();
        let k = fock_k(&p, 0, &empty(2));
        assert_eq!(k.coeff(&Multipartition::empty(2)), LaurentPoly::q_pow(2));
        let v = FockVector::basis(mp("2,1|1")).add(&FockVector::basis(mp("1|1,1")));
        assert_eq!(fock_k_inv(&p, 1, &fock_k(&p, 1, &v)), v);
        for mu in multipartitions(4, 2) {
            for i in 0..3 {
                let w = p.weight_pairing_simple(&mu.content(&p), i);
                let kv = fock_k(&p, i, &FockVector::basis(mu.clone()));
                assert_eq!(kv.coeff(&mu), LaurentPoly::q_pow(w));
            }
        }
    }

    #[test]
    fn divided_powers_are_integral() {
        for (e, k) in [(2, vec![0]), (3, vec![0]), (2, vec![0, 1]), (3, vec![1, 1])] {
            let p = Params::new(e, &k).unwrap();
            for i in 0..e as i64 {
                for n in 1..=3 {
                    let v = fock_divided_power(&p, Chevalley::F, i, n, &empty(k.len())).unwrap();
                    if n == 1 {
                        assert_eq!(v, fock_f(&p, i, &empty(k.len())));
                    }
                }
            }
        }
        let p = Params::new(2, &[0]).unwrap();
        let v = fock_divided_power(&p, Chevalley::F, 0, 1, &empty(1)).unwrap();
        let w = fock_divided_power(&p, Chevalley::F, 1, 1, &v).unwrap();
        assert_eq!(w.num_terms(), 2);
        assert!(fock_divided_power(&p, Chevalley::E, 0, 0, &v).is_err());
    }

    #[test]
    fn relations_hold_small() {
        let p = Params::new(2, &[0]).unwrap();
        let r = verify_uqg_relations(2, &p).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
        assert!(r.checks > 0);
        let r = verify_uqg_relations(0, &Params::new(0, &[0]).unwrap()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn json_shape() {
        let v = FockVector::basis(mp("2,1|0")).scale(&LaurentPoly::q_pow(2));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[{"mp":"2,1|0","coeff":"q^2"}]"#);
        assert_eq!(serde_json::from_str::<FockVector>(&s).unwrap(), v);
    }
}
