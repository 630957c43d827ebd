//! Exact arithmetic in `Z[q, q^-1]`.
//!
//! Coefficients are arbitrary precision integers. The textual form used by
//! every external surface lists terms in ascending exponent order with an
//! explicit `*` between coefficient and variable, e.g. `3*q^-2 + 1 + q^4`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A Laurent polynomial with integer coefficients.
///
/// The coefficient map never stores zeros, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^k`
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c.into());
        p
    }

    /// `q^k`
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// True when every exponent is at least 1 and every coefficient is
    /// nonnegative, i.e. the polynomial lies in `q Z_{>=0}[q]`.
    pub fn in_q_nonneg_poly(&self) -> bool {
        self.is_nonnegative() && self.min_exp().is_none_or(|k| k >= 1)
    }

    /// Long division from the top exponent.
    ///
    /// Returns `Ok(Some(h))` with `h * g == self` when the quotient exists in
    /// `Z[q, q^-1]`, `Ok(None)` when it does not.
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<Option<LaurentPoly>, Error> {
        let (Some(g_top), Some(g_bot)) = (g.max_exp(), g.min_exp()) else {
            return Err(Error::DivisionByZero);
        };
        let lead = &g.coeffs[&g_top];
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let (Some(top), Some(bot)) = (rem.max_exp(), rem.min_exp()) {
            let k = top - g_top;
            // the quotient term would have to cover rem's bottom too
            if k + g_bot < bot {
                return Ok(None);
            }
            let (c, r) = rem.coeffs[&top].div_rem(lead);
            if !r.is_zero() {
                return Ok(None);
            }
            let term = LaurentPoly::monomial(c, k);
            rem -= &(&term * g);
            quot += &term;
        }
        Ok(Some(quot))
    }

    /// Like [`exact_div`](Self::exact_div) but treats inexactness as an
    /// arithmetic failure.
    pub fn div_exact_or_err(&self, g: &LaurentPoly) -> Result<LaurentPoly, Error> {
        self.exact_div(g)?.ok_or_else(|| Error::InexactDivision {
            numerator: self.to_string(),
            denominator: g.to_string(),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

/// `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`
pub fn quantum_int(n: u32) -> LaurentPoly {
    let n = i64::from(n);
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1)))
}

/// `[n]! = [n][n-1]...[1]`
pub fn quantum_factorial(n: u32) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &quantum_int(k))
}

/// `[n]! / ([n-m]! [m]!)`, computed by exact division.
pub fn quantum_binomial(n: u32, m: u32) -> Result<LaurentPoly, Error> {
    if m > n {
        return Err(Error::Domain(format!("quantum binomial [{n} choose {m}] needs m <= n")));
    }
    let denom = &quantum_factorial(n - m) * &quantum_factorial(m);
    quantum_factorial(n).div_exact_or_err(&denom)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "q^{k}")?;
            } else {
                write!(f, "{abs}*q^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("malformed Laurent polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms; a '-' directly after '^' belongs to the exponent
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);

        let mut p = LaurentPoly::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff_txt, var_txt) = match body.split_once('*') {
                Some((c, v)) => (Some(c), Some(v)),
                None if body.starts_with('q') => (None, Some(body)),
                None => (Some(body), None),
            };
            let coeff: BigInt = match coeff_txt {
                Some(c) => c.parse().map_err(|_| bad())?,
                None => BigInt::one(),
            };
            let exp: i64 = match var_txt {
                None => 0,
                Some("q") => 1,
                Some(v) => v
                    .strip_prefix("q^")
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?,
            };
            p.add_term(exp, coeff * sign);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
