//! Laurent polynomials in the state-sum variable `A` with integer
//! coefficients, stored sparsely as exponent -> coefficient.
//!
//! Coefficients are arbitrary-precision: cabled polynomials reach
//! coefficients in the thousands through intermediate sums that are
//! larger still.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};

/// Laurent polynomial in `A` over the integers.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i32, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(0, 1)
    }

    /// The single term `c * A^exp`.
    pub fn monomial(exp: i32, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Laurent { coeffs }
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents sum.
    pub fn from_pairs(pairs: &[(i32, i64)]) -> Self {
        let mut p = Laurent::zero();
        for &(e, c) in pairs {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    /// The loop value `delta = -A^2 - A^-2`.
    pub fn delta() -> Self {
        Laurent::from_pairs(&[(-2, -1), (2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Iterate `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiply in place by `c * A^exp`.
    pub fn scale(&mut self, exp: i32, c: &BigInt) {
        if c.is_zero() {
            self.coeffs.clear();
            return;
        }
        let old = std::mem::take(&mut self.coeffs);
        for (e, mut k) in old {
            k *= c;
            self.coeffs.insert(e + exp, k);
        }
    }

    /// Multiply in place by `A^exp`.
    pub fn shift(&mut self, exp: i32) {
        if exp == 0 {
            return;
        }
        let old = std::mem::take(&mut self.coeffs);
        for (e, k) in old {
            self.coeffs.insert(e + exp, k);
        }
    }

    /// The substitution `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect();
        Laurent { coeffs }
    }

    /// `(-A^3)^k * self`, the framing factor used by writhe normalization.
    pub fn framing_scaled(&self, k: i32) -> Self {
        let mut p = self.clone();
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        p.scale(3 * k, &BigInt::from(sign));
        p
    }

    /// `max_exp - min_exp`; `None` on the zero polynomial.
    pub fn breadth(&self) -> Option<i32> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn add_assign_ref(&mut self, other: &Laurent) {
        for (&e, c) in &other.coeffs {
            self.add_term(e, c.clone());
        }
    }

    pub fn mul_ref(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::monomial(0, c)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self.add_assign_ref(&rhs);
        self
    }
}

impl AddAssign for Laurent {
    fn add_assign(&mut self, rhs: Laurent) {
        self.add_assign_ref(&rhs);
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        self.mul_ref(&rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.mul_ref(rhs)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for c in self.coeffs.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

/// Writes one Laurent term in canonical form. `lead` suppresses the sign
/// separator for the first term of a polynomial; `tail` is extra variable
/// text (already starting with `*`) appended after the `A` part.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    lead: bool,
    c: &BigInt,
    exp: i32,
    tail: &str,
) -> fmt::Result {
    if lead {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mag = c.magnitude();
    let apart = match exp {
        0 => String::new(),
        1 => "A".to_string(),
        e => format!("A^{e}"),
    };
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || (apart.is_empty() && tail.is_empty()) {
        parts.push(mag.to_string());
    }
    if !apart.is_empty() {
        parts.push(apart);
    }
    if !tail.is_empty() {
        parts.push(tail.to_string());
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            write_term(f, i == 0, c, e, "")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
