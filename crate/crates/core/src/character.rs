//! Formal q-characters: finitely supported maps from residue sequences to
//! Laurent polynomials.

use std::collections::BTreeMap;
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{Params, Residue, RootElement};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub type ResidueSeq = Vec<Residue>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCharacter {
    len: usize,
    terms: BTreeMap<ResidueSeq, LaurentPoly>,
}

impl QCharacter {
    pub fn zero(len: usize) -> Self {
        Self {
            len,
            terms: BTreeMap::new(),
        }
    }

    /// Length of the residue sequences (not the number of terms).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, seq: ResidueSeq, coeff: &LaurentPoly) {
        assert_eq!(seq.len(), self.len, "residue sequence length mismatch");
        if coeff.is_zero() {
            return;
        }
        let mut p = self.terms.remove(&seq).unwrap_or_default();
        p += coeff;
        if !p.is_zero() {
            self.terms.insert(seq, p);
        }
    }

    pub fn coeff(&self, seq: &[Residue]) -> LaurentPoly {
        self.terms.get(seq).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ResidueSeq, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.len);
        if c.is_zero() {
            return out;
        }
        for (seq, p) in &self.terms {
            out.terms.insert(seq.clone(), p * c);
        }
        out
    }

    /// Restriction along `H_{d-1} -> H_d`: drop the last residue.
    pub fn restrict(&self) -> Result<Self> {
        if self.len == 0 {
            return Err(Error::Domain("cannot restrict a character of length 0".into()));
        }
        let mut out = Self::zero(self.len - 1);
        for (seq, p) in &self.terms {
            out.add_term(seq[..self.len - 1].to_vec(), p);
        }
        Ok(out)
    }

    /// Largest number of trailing `i`s among supported sequences.
    pub fn epsilon(&self, i: Residue) -> usize {
        self.terms
            .keys()
            .map(|s| s.iter().rev().take_while(|&&r| r == i).count())
            .max()
            .unwrap_or(0)
    }

    /// Character of `E_i^m M`: keep sequences ending in `i^m` and drop that tail.
    pub fn strip_trailing(&self, i: Residue, m: usize) -> Self {
        let mut out = Self::zero(self.len.saturating_sub(m));
        if m > self.len {
            return out;
        }
        for (seq, p) in &self.terms {
            let cut = self.len - m;
            if seq[cut..].iter().all(|&r| r == i) {
                out.add_term(seq[..cut].to_vec(), p);
            }
        }
        out
    }

    /// Sum of all coefficients (the graded dimension).
    pub fn qdim(&self) -> LaurentPoly {
        let mut total = LaurentPoly::zero();
        for p in self.terms.values() {
            total += p;
        }
        total
    }

    /// Total mass at `q = 1`.
    pub fn mass(&self) -> BigInt {
        self.terms.values().map(LaurentPoly::eval_one).sum()
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_bar_invariant)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_nonnegative)
    }

    pub fn bar(&self) -> Self {
        Self {
            len: self.len,
            terms: self.terms.iter().map(|(s, p)| (s.clone(), p.bar())).collect(),
        }
    }

    /// True if every supported sequence has content `alpha`.
    pub fn supported_on(&self, alpha: &RootElement) -> bool {
        self.terms.keys().all(|s| &seq_content(s) == alpha)
    }

    /// Highest exponent of `q` among all coefficients.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.values().filter_map(LaurentPoly::max_exp).max()
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.terms.values().any(|p| p.terms().any(|(_, c)| c < &BigInt::zero()))
    }
}

/// Content `sum alpha_{i_r}` of a residue sequence.
pub fn seq_content(seq: &[Residue]) -> RootElement {
    RootElement::from_pairs(seq.iter().map(|&r| (r, 1)))
}

/// Residue sequences of content `alpha` (all orderings of the multiset).
pub fn sequences_of_content(alpha: &RootElement) -> Vec<ResidueSeq> {
    fn go(left: &mut BTreeMap<Residue, u32>, prefix: &mut ResidueSeq, out: &mut Vec<ResidueSeq>, len: usize) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let keys: Vec<Residue> = left.iter().filter(|(_, c)| **c > 0).map(|(r, _)| *r).collect();
        for r in keys {
            *left.get_mut(&r).unwrap() -= 1;
            prefix.push(r);
            go(left, prefix, out, len);
            prefix.pop();
            *left.get_mut(&r).unwrap() += 1;
        }
    }
    let mut left: BTreeMap<Residue, u32> = alpha.iter().collect();
    let mut out = Vec::new();
    go(&mut left, &mut Vec::new(), &mut out, alpha.height() as usize);
    out
}

impl AddAssign<&QCharacter> for QCharacter {
    fn add_assign(&mut self, rhs: &QCharacter) {
        assert_eq!(self.len, rhs.len, "character length mismatch");
        for (seq, p) in &rhs.terms {
            self.add_term(seq.clone(), p);
        }
    }
}

impl SubAssign<&QCharacter> for QCharacter {
    fn sub_assign(&mut self, rhs: &QCharacter) {
        assert_eq!(self.len, rhs.len, "character length mismatch");
        for (seq, p) in &rhs.terms {
            self.add_term(seq.clone(), &-p);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    seq: ResidueSeq,
    coeff: LaurentPoly,
}

impl Serialize for QCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let items: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(s, p)| TermRepr {
                seq: s.clone(),
                coeff: p.clone(),
            })
            .collect();
        items.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QCharacter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<TermRepr>::deserialize(deserializer)?;
        let len = items.first().map_or(0, |t| t.seq.len());
        if items.iter().any(|t| t.seq.len() != len) {
            return Err(serde::de::Error::custom("residue sequences of different lengths"));
        }
        let mut ch = QCharacter::zero(len);
        for t in items {
            ch.add_term(t.seq, &t.coeff);
        }
        Ok(ch)
    }
}

impl Params {
    /// Parses a residue sequence such as `0,1,1`.
    pub fn parse_sequence(&self, s: &str) -> Result<ResidueSeq> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map(|r| self.reduce(r))
                    .map_err(|_| Error::Parse(format!("bad residue `{t}`")))
            })
            .collect()
    }
}
