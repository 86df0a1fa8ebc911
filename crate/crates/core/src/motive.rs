//! Classes of cellular varieties as polynomials in the Lefschetz class `L`.
//!
//! `L` stays a formal variable throughout; numeric values only come from
//! explicit [`LPolynomial::eval`] calls.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::weyl::{ParabolicSubset, WeylError, WeylGroup};

/// Integer polynomial in `L`, stored sparsely without zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, i64)>", into = "Vec<(u32, i64)>")]
pub struct LPolynomial {
    coeffs: BTreeMap<u32, i64>,
}

impl LPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The class `L = [A^1]`.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(degree: u32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff);
        p
    }

    /// `[P^n] = 1 + L + ... + L^n`.
    pub fn projective_space(n: u32) -> Self {
        (0..=n).map(|k| Self::monomial(k, 1)).fold(Self::zero(), |a, b| a + b)
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in coeffs {
            p.add_term(d, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, degree: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    /// Dense coefficient list `[c_0, c_1, ..., c_deg]`.
    pub fn dense(&self) -> Vec<i64> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff(k)).collect(),
        }
    }

    /// Multiply by `L^k`.
    pub fn shift(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&d, &c)| (d + k, c)).collect(),
        }
    }

    /// Point-count style realization `L -> q`.
    pub fn eval(&self, q: i64) -> i128 {
        let q = q as i128;
        // Horner over the dense form.
        self.dense()
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * q + c as i128)
    }

    pub fn is_palindromic(&self) -> bool {
        let dense = self.dense();
        dense.iter().eq(dense.iter().rev())
    }
}

impl TryFrom<Vec<(u32, i64)>> for LPolynomial {
    type Error = String;

    fn try_from(pairs: Vec<(u32, i64)>) -> Result<Self, Self::Error> {
        let mut seen = std::collections::BTreeSet::new();
        for (d, c) in &pairs {
            if !seen.insert(*d) {
                return Err(format!("degree {d} listed twice"));
            }
            if *c == 0 {
                return Err(format!("zero coefficient stored at degree {d}"));
            }
        }
        Ok(Self::from_coeffs(pairs))
    }
}

impl From<LPolynomial> for Vec<(u32, i64)> {
    fn from(p: LPolynomial) -> Self {
        p.coeffs.into_iter().collect()
    }
}

impl Add for LPolynomial {
    type Output = LPolynomial;

    fn add(mut self, rhs: LPolynomial) -> LPolynomial {
        for (d, c) in rhs.coeffs {
            self.add_term(d, c);
        }
        self
    }
}

impl Neg for LPolynomial {
    type Output = LPolynomial;

    fn neg(self) -> LPolynomial {
        LPolynomial {
            coeffs: self.coeffs.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl Sub for LPolynomial {
    type Output = LPolynomial;

    fn sub(self, rhs: LPolynomial) -> LPolynomial {
        self + (-rhs)
    }
}

impl Mul for &LPolynomial {
    type Output = LPolynomial;

    fn mul(self, rhs: &LPolynomial) -> LPolynomial {
        let mut out = LPolynomial::zero();
        for (&d1, &c1) in &self.coeffs {
            for (&d2, &c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LPolynomial {
    type Output = LPolynomial;

    fn mul(self, rhs: LPolynomial) -> LPolynomial {
        &self * &rhs
    }
}

/// `L^d` as text; empty for `d = 0`.
pub(crate) fn fmt_l_power(degree: u32) -> String {
    match degree {
        0 => String::new(),
        1 => "L".to_string(),
        d => format!("L^{d}"),
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&d, &c)) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => f.write_str(&fmt_l_power(d))?,
                _ => write!(f, "{a}{}", fmt_l_power(d))?,
            }
        }
        Ok(())
    }
}

/// `[G/P] = sum over w in W^P of L^{l(w)}` (Bruhat decomposition).
pub fn poincare_polynomial(g: &WeylGroup, p: &ParabolicSubset) -> Result<LPolynomial, WeylError> {
    let reps = g.min_coset_reps(p)?;
    let mut out = LPolynomial::zero();
    for w in reps {
        out.add_term(w.length() as u32, 1);
    }
    Ok(out)
}

/// Class of a Zariski-locally trivial `P^{rank-1}`-bundle over `base`.
pub fn projective_bundle_poly(base: &LPolynomial, rank: u32) -> LPolynomial {
    assert!(rank >= 1, "projective bundle of a rank-0 sheaf");
    base * &LPolynomial::projective_space(rank - 1)
}
