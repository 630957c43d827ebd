//! Index set, quiver, Cartan matrix and the root/weight pairings.
//!
//! Residues live in `Z/eZ` for `e >= 2` (canonical representatives
//! `0..e`) and in `Z` for `e = 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Residue = i64;

/// Quantum characteristic `e`. Never 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct QuantumChar(u32);

impl QuantumChar {
    pub fn new(e: u32) -> Result<Self> {
        if e == 1 {
            return Err(Error::InvalidQuantumChar(e));
        }
        Ok(Self(e))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_affine(self) -> bool {
        self.0 > 0
    }

    /// Canonical representative of a residue.
    pub fn reduce(self, r: i64) -> Residue {
        if self.0 == 0 {
            r
        } else {
            r.rem_euclid(i64::from(self.0))
        }
    }

    /// All residues when `e > 0`; `None` for the infinite index set.
    pub fn residues(self) -> Option<Vec<Residue>> {
        (self.0 > 0).then(|| (0..i64::from(self.0)).collect())
    }
}

impl TryFrom<u32> for QuantumChar {
    type Error = Error;
    fn try_from(e: u32) -> Result<Self> {
        Self::new(e)
    }
}

impl From<QuantumChar> for u32 {
    fn from(e: QuantumChar) -> u32 {
        e.0
    }
}

impl fmt::Display for QuantumChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How two vertices of the quiver are joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    Equal,
    /// `j` is neither `i` nor a neighbour of `i`.
    Unlinked,
    /// `i -> j`, i.e. `j = i + 1`.
    Forward,
    /// `i <- j`, i.e. `i = j + 1`.
    Backward,
    /// `i <=> j`, the double edge of `e = 2`.
    Double,
}

pub fn adjacency(i: Residue, j: Residue, e: QuantumChar) -> Adjacency {
    let (i, j) = (e.reduce(i), e.reduce(j));
    if i == j {
        Adjacency::Equal
    } else if e.get() == 2 {
        Adjacency::Double
    } else if e.reduce(i + 1) == j {
        Adjacency::Forward
    } else if e.reduce(j + 1) == i {
        Adjacency::Backward
    } else {
        Adjacency::Unlinked
    }
}

/// Entry `a_{ij}` of the Cartan matrix.
pub fn cartan_entry(i: Residue, j: Residue, e: QuantumChar) -> i64 {
    match adjacency(i, j, e) {
        Adjacency::Equal => 2,
        Adjacency::Unlinked => 0,
        Adjacency::Forward | Adjacency::Backward => -1,
        Adjacency::Double => -2,
    }
}

/// An element `sum c_i alpha_i` of the positive root lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootElement {
    coeffs: BTreeMap<Residue, u32>,
}

impl RootElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn simple(i: Residue) -> Self {
        let mut a = Self::zero();
        a.add_simple(i, 1);
        a
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Residue, u32)>) -> Self {
        let mut a = Self::zero();
        for (i, c) in pairs {
            a.add_simple(i, c);
        }
        a
    }

    pub fn add_simple(&mut self, i: Residue, c: u32) {
        if c > 0 {
            *self.coeffs.entry(i).or_default() += c;
        }
    }

    /// Subtract `alpha_i`; `None` if the coefficient is already zero.
    pub fn sub_simple(&self, i: Residue) -> Option<Self> {
        let mut out = self.clone();
        let c = out.coeffs.get_mut(&i)?;
        *c -= 1;
        if *c == 0 {
            out.coeffs.remove(&i);
        }
        Some(out)
    }

    pub fn coeff(&self, i: Residue) -> u32 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Residue, u32)> + '_ {
        self.coeffs.iter().map(|(i, c)| (*i, *c))
    }

    pub fn height(&self) -> u32 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Compact key used in cache file names, e.g. `0-2_1-1`.
    pub fn key(&self) -> String {
        if self.is_zero() {
            return "zero".into();
        }
        self.coeffs
            .iter()
            .map(|(i, c)| format!("{i}-{c}"))
            .collect::<Vec<_>>()
            .join("_")
    }

    /// Parses `0:2,1:1` (residue:coefficient pairs).
    pub fn parse(s: &str, e: QuantumChar) -> Result<Self> {
        let mut a = Self::zero();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (i, c) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected residue:coefficient, got `{item}`")))?;
            let i: i64 = i.trim().parse().map_err(|_| Error::Parse(format!("bad residue `{i}`")))?;
            let c: u32 = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            a.add_simple(e.reduce(i), c);
        }
        Ok(a)
    }
}

impl fmt::Display for RootElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| if *c == 1 { format!("a{i}") } else { format!("{c}*a{i}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `(a, b) = sum_{i,j} a_i b_j a_{ij}`
pub fn sym_form(a: &RootElement, b: &RootElement, e: QuantumChar) -> i64 {
    a.iter()
        .flat_map(|(i, x)| b.iter().map(move |(j, y)| i64::from(x) * i64::from(y) * cartan_entry(i, j, e)))
        .sum()
}

/// The dominant weight `Lambda_{k_1} + ... + Lambda_{k_l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantWeight {
    kappa: Vec<Residue>,
}

impl DominantWeight {
    pub fn new(kappa: Vec<Residue>, e: QuantumChar) -> Result<Self> {
        if kappa.is_empty() {
            return Err(Error::Domain("kappa must have at least one entry".into()));
        }
        Ok(Self {
            kappa: kappa.into_iter().map(|k| e.reduce(k)).collect(),
        })
    }

    pub fn level(&self) -> usize {
        self.kappa.len()
    }

    pub fn kappa(&self) -> &[Residue] {
        &self.kappa
    }

    /// Multiplicity of `Lambda_i`.
    pub fn multiplicity(&self, i: Residue) -> i64 {
        self.kappa.iter().filter(|&&k| k == i).count() as i64
    }

    /// `(Lambda, alpha)`
    pub fn pairing(&self, a: &RootElement) -> i64 {
        a.iter().map(|(i, c)| self.multiplicity(i) * i64::from(c)).sum()
    }

    /// Text key such as `0,1,1`.
    pub fn key(&self) -> String {
        self.kappa.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The pair `(e, kappa)` every residue computation is relative to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub e: QuantumChar,
    pub kappa: DominantWeight,
}

impl Params {
    pub fn new(e: u32, kappa: &[i64]) -> Result<Self> {
        let e = QuantumChar::new(e)?;
        Ok(Self {
            e,
            kappa: DominantWeight::new(kappa.to_vec(), e)?,
        })
    }

    pub fn level(&self) -> usize {
        self.kappa.level()
    }

    pub fn reduce(&self, r: i64) -> Residue {
        self.e.reduce(r)
    }

    pub fn cartan(&self, i: Residue, j: Residue) -> i64 {
        cartan_entry(i, j, self.e)
    }

    pub fn adjacency(&self, i: Residue, j: Residue) -> Adjacency {
        adjacency(i, j, self.e)
    }

    pub fn sym_form(&self, a: &RootElement, b: &RootElement) -> i64 {
        sym_form(a, b, self.e)
    }

    /// `def(alpha) = (Lambda, alpha) - (alpha, alpha)/2`
    pub fn defect(&self, a: &RootElement) -> i64 {
        let aa = self.sym_form(a, a);
        debug_assert!(aa % 2 == 0);
        self.kappa.pairing(a) - aa / 2
    }

    /// `(Lambda - alpha, alpha_i)`
    pub fn weight_pairing_simple(&self, a: &RootElement, i: Residue) -> i64 {
        self.kappa.multiplicity(i) - self.sym_form(a, &RootElement::simple(i))
    }
}
