//! The coefficient ring of the homological arrow polynomial: integer
//! Laurent polynomials in `A` times monomials in loop variables
//! `X[i1,...,im]`, one variable per sign-normalized index vector.
//!
//! The scalar arrow polynomial is the one-slot case: its variables
//! `X[2n]` print as `K[n]`.

use crate::laurent::{write_term, Laurent};
use num_bigint::BigInt;
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("breadth of the zero polynomial is undefined")]
    ZeroBreadth,
    #[error("index vector of length {got} exceeds matrix width {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("not an arrow polynomial: factor {0} is not a single even entry")]
    NotArrowForm(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Integer vector indexed by label slots, trailing zeros trimmed.
/// Directed: reversing the underlying strand negates it.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SlotVec(SmallVec<[i32; 2]>);

impl SlotVec {
    pub fn new(entries: impl Into<SmallVec<[i32; 2]>>) -> Self {
        let mut v = SlotVec(entries.into());
        v.trim();
        v
    }

    /// Unit vector for 1-based label `slot`.
    pub fn unit(slot: u32) -> Self {
        assert!(slot >= 1, "label slots are 1-based");
        let mut e = SmallVec::new();
        e.resize(slot as usize, 0);
        e[slot as usize - 1] = 1;
        SlotVec(e)
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn entry_sum(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn add(&self, other: &SlotVec) -> SlotVec {
        let n = self.0.len().max(other.0.len());
        let mut e = SmallVec::with_capacity(n);
        for i in 0..n {
            e.push(self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0));
        }
        SlotVec::new(e)
    }

    pub fn sub(&self, other: &SlotVec) -> SlotVec {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SlotVec {
        SlotVec(self.0.iter().map(|&x| -x).collect())
    }
}

impl fmt::Debug for SlotVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A loop variable index: nonzero `SlotVec` normalized so its first
/// nonzero entry is positive. `X[v] = X[-v]` because state loops are
/// unoriented.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexVector(SlotVec);

impl IndexVector {
    /// `None` for the zero vector, which denotes the unit `X[] = 1`.
    pub fn from_slots(v: SlotVec) -> Option<IndexVector> {
        let first = v.entries().iter().find(|&&x| x != 0)?;
        Some(IndexVector(if *first < 0 { v.neg() } else { v }))
    }

    /// Single-slot index `X[n]`, n != 0.
    pub fn single(n: i32) -> IndexVector {
        IndexVector::from_slots(SlotVec::new(vec![n])).expect("nonzero entry")
    }

    pub fn entries(&self) -> &[i32] {
        self.0.entries()
    }

    pub fn slots(&self) -> &SlotVec {
        &self.0
    }

    pub fn entry_sum(&self) -> i64 {
        self.0.entry_sum()
    }

    /// Sum of absolute entries, the weight used by the crossing bound.
    pub fn abs_sum(&self) -> i64 {
        self.entries().iter().map(|&x| (x as i64).abs()).sum()
    }
}

impl fmt::Debug for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{:?}", self.0)
    }
}

/// Sorted multiset of `IndexVector` factors; empty means the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<IndexVector>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn factor(iv: IndexVector) -> Monomial {
        Monomial(vec![iv])
    }

    pub fn from_factors(mut factors: Vec<IndexVector>) -> Monomial {
        factors.sort();
        Monomial(factors)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[IndexVector] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = self.0.clone();
        factors.extend(other.0.iter().cloned());
        Monomial::from_factors(factors)
    }

    pub fn push(&mut self, iv: IndexVector) {
        let pos = self.0.partition_point(|x| x <= &iv);
        self.0.insert(pos, iv);
    }

    /// Factors grouped as `(index, multiplicity)` pairs.
    pub fn powers(&self) -> Vec<(&IndexVector, u32)> {
        let mut out: Vec<(&IndexVector, u32)> = Vec::new();
        for iv in &self.0 {
            match out.last_mut() {
                Some((prev, k)) if *prev == iv => *k += 1,
                _ => out.push((iv, 1)),
            }
        }
        out
    }

    /// Variable part as text, `K[n]` or `X[...]` per `k_form`; `1` when empty.
    pub fn write_vars(&self, k_form: bool) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        for (iv, mult) in self.powers() {
            if !s.is_empty() {
                s.push('*');
            }
            if k_form {
                write!(s, "K[{}]", iv.entries()[0] / 2).unwrap();
            } else {
                let body: Vec<String> = iv.entries().iter().map(|x| x.to_string()).collect();
                write!(s, "X[{}]", body.join(",")).unwrap();
            }
            if mult > 1 {
                write!(s, "^{mult}").unwrap();
            }
        }
        s
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.write_vars(false))
        }
    }
}

/// Homological arrow polynomial: a finite sum of `Laurent * Monomial`
/// terms keyed by monomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HArrowPoly {
    terms: BTreeMap<Monomial, Laurent>,
}

impl HArrowPoly {
    pub fn zero() -> Self {
        HArrowPoly::default()
    }

    pub fn one() -> Self {
        HArrowPoly::scalar(Laurent::one())
    }

    pub fn scalar(c: Laurent) -> Self {
        let mut p = HArrowPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn term(m: Monomial, c: Laurent) -> Self {
        let mut p = HArrowPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(monomial, coefficient)` in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Laurent {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Laurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(entry) => {
                entry.add_assign_ref(&c);
                if entry.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &HArrowPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn mul_ref(&self, other: &HArrowPoly) -> HArrowPoly {
        let mut out = HArrowPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }

    /// Multiply every coefficient by `c`.
    pub fn mul_laurent(&mut self, c: &Laurent) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (m, k) in old {
            let prod = k.mul_ref(c);
            if !prod.is_zero() {
                self.terms.insert(m, prod);
            }
        }
    }

    /// Multiply every coefficient by `A^exp`.
    pub fn shift(&mut self, exp: i32) {
        for c in self.terms.values_mut() {
            c.shift(exp);
        }
    }

    /// Multiply every monomial by the factor `X[iv]`.
    pub fn mul_factor(&mut self, iv: &IndexVector) {
        let old = std::mem::take(&mut self.terms);
        for (mut m, c) in old {
            m.push(iv.clone());
            self.terms.insert(m, c);
        }
    }

    /// The substitution `A -> A^-1`; loop variables are untouched.
    pub fn mirror_subst(&self) -> HArrowPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.mirror()))
            .collect();
        HArrowPoly { terms }
    }

    /// `(-A^3)^(-w) * self`: removes the framing dependence of a diagram
    /// with writhe `w`.
    pub fn writhe_normalize(&self, w: i32) -> HArrowPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.framing_scaled(-w)))
            .collect();
        HArrowPoly { terms }
    }

    /// Span of `A`-exponents over all terms; errors on the zero polynomial.
    pub fn breadth_a(&self) -> Result<i32, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroBreadth);
        }
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for c in self.terms.values() {
            lo = lo.min(c.min_exp().expect("stored coefficients are nonzero"));
            hi = hi.max(c.max_exp().expect("stored coefficients are nonzero"));
        }
        Ok(hi - lo)
    }

    /// Apply the integer matrix `rows` (one row per output slot) to every
    /// index vector; collided monomials sum, zero images drop out.
    pub fn pushforward(&self, rows: &[Vec<i32>]) -> Result<HArrowPoly, PolyError> {
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(PolyError::DimensionMismatch { got: 0, want: width });
        }
        let mut out = HArrowPoly::zero();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for iv in m.factors() {
                let v = iv.entries();
                if v.len() > width {
                    return Err(PolyError::DimensionMismatch {
                        got: v.len(),
                        want: width,
                    });
                }
                let image: SmallVec<[i32; 2]> = rows
                    .iter()
                    .map(|row| v.iter().zip(row).map(|(a, b)| a * b).sum())
                    .collect();
                if let Some(iv2) = IndexVector::from_slots(SlotVec::new(image)) {
                    factors.push(iv2);
                }
            }
            out.add_term(Monomial::from_factors(factors), c.clone());
        }
        Ok(out)
    }

    /// Set every loop variable to 1, leaving a plain Laurent polynomial.
    pub fn bracket(&self) -> Laurent {
        let mut out = Laurent::zero();
        for c in self.terms.values() {
            out.add_assign_ref(c);
        }
        out
    }

    /// `bracket` followed by `A -> t^(-1/4)`: returns coefficients in
    /// `q = t^(1/4)`, so exponent `4` means `t`.
    pub fn jones_t(&self) -> Laurent {
        self.bracket().mirror()
    }

    /// Interpret as a scalar arrow polynomial, requiring every factor to
    /// be a single even entry.
    pub fn to_arrow(&self) -> Result<ArrowPoly, PolyError> {
        for m in self.terms.keys() {
            for iv in m.factors() {
                if iv.entries().len() != 1 || iv.entries()[0] % 2 != 0 {
                    return Err(PolyError::NotArrowForm(format!("{iv:?}")));
                }
            }
        }
        Ok(ArrowPoly(self.clone()))
    }

    /// Structured form: monomial text -> { exponent -> coefficient }.
    /// Coefficients are serialized as strings to stay exact.
    pub fn to_json(&self, k_form: bool) -> serde_json::Value {
        let mut terms = serde_json::Map::new();
        for (m, c) in &self.terms {
            let key = if m.is_one() {
                "1".to_string()
            } else {
                m.write_vars(k_form)
            };
            let mut coeffs = serde_json::Map::new();
            for (e, k) in c.terms() {
                coeffs.insert(e.to_string(), serde_json::Value::String(k.to_string()));
            }
            terms.insert(key, serde_json::Value::Object(coeffs));
        }
        serde_json::Value::Object(terms)
    }

    fn write_canonical(&self, f: &mut fmt::Formatter<'_>, k_form: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut lead = true;
        for (m, c) in &self.terms {
            let vars = m.write_vars(k_form);
            for (e, k) in c.terms() {
                write_term(f, lead, k, e, &vars)?;
                lead = false;
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<HArrowPoly, PolyError> {
        parse_poly(text, false)
    }
}

impl fmt::Display for HArrowPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_canonical(f, false)
    }
}

impl fmt::Debug for HArrowPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Scalar arrow polynomial: a `HArrowPoly` whose index vectors all have a
/// single even entry. `X[2n]` prints as `K[n]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ArrowPoly(HArrowPoly);

impl ArrowPoly {
    pub fn as_harrow(&self) -> &HArrowPoly {
        &self.0
    }

    pub fn into_harrow(self) -> HArrowPoly {
        self.0
    }

    /// Coefficient of `K[n]^e1 * K[m]^e2 * ...` given as `(n, power)` pairs.
    pub fn coeff_k(&self, ks: &[(i32, u32)]) -> Laurent {
        let mut factors = Vec::new();
        for &(n, pow) in ks {
            for _ in 0..pow {
                factors.push(IndexVector::single(2 * n));
            }
        }
        self.0.coeff(&Monomial::from_factors(factors))
    }

    pub fn mirror_subst(&self) -> ArrowPoly {
        ArrowPoly(self.0.mirror_subst())
    }

    pub fn writhe_normalize(&self, w: i32) -> ArrowPoly {
        ArrowPoly(self.0.writhe_normalize(w))
    }

    pub fn parse(text: &str) -> Result<ArrowPoly, PolyError> {
        Ok(ArrowPoly(parse_poly(text, true)?))
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.0.to_json(true)
    }
}

impl From<HArrowPoly> for ArrowPoly {
    /// Engine-internal: callers must guarantee arrow form.
    fn from(p: HArrowPoly) -> ArrowPoly {
        debug_assert!(p.to_arrow().is_ok());
        ArrowPoly(p)
    }
}

impl fmt::Display for ArrowPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_canonical(f, true)
    }
}

impl fmt::Debug for ArrowPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------
// Canonical-text parser. Accepts exactly what Display emits, with
// arbitrary whitespace around separators, so printed polynomials
// round-trip.

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), PolyError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn integer(&mut self) -> Result<i64, PolyError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn unsigned(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}

fn parse_poly(text: &str, k_form: bool) -> Result<HArrowPoly, PolyError> {
    let mut cur = Cursor {
        text: text.as_bytes(),
        pos: 0,
    };
    cur.skip_ws();
    let mut out = HArrowPoly::zero();
    if cur.eat(b'0') {
        cur.skip_ws();
        if cur.pos != cur.text.len() {
            return Err(cur.err("trailing input after 0"));
        }
        return Ok(out);
    }
    let mut negative = cur.eat(b'-');
    loop {
        cur.skip_ws();
        let (m, exp, coeff) = parse_term(&mut cur, k_form)?;
        let signed = if negative { -coeff } else { coeff };
        out.add_term(m, Laurent::monomial(exp, signed));
        cur.skip_ws();
        match cur.peek() {
            None => return Ok(out),
            Some(b'+') => {
                cur.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            _ => return Err(cur.err("expected '+', '-', or end of input")),
        }
    }
}

fn parse_term(cur: &mut Cursor, k_form: bool) -> Result<(Monomial, i32, BigInt), PolyError> {
    let mut coeff: Option<BigInt> = None;
    let mut exp: Option<i32> = None;
    let mut factors: Vec<IndexVector> = Vec::new();
    let mut first = true;
    loop {
        if !first {
            cur.skip_ws();
            if !cur.eat(b'*') {
                break;
            }
            cur.skip_ws();
        }
        match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                if !first || coeff.is_some() {
                    return Err(cur.err("unexpected integer"));
                }
                coeff = Some(BigInt::from(cur.unsigned()?));
            }
            Some(b'A') => {
                if exp.is_some() {
                    return Err(cur.err("repeated A part"));
                }
                cur.pos += 1;
                exp = Some(if cur.eat(b'^') {
                    cur.integer()? as i32
                } else {
                    1
                });
            }
            Some(b'X') if !k_form => {
                cur.pos += 1;
                parse_var(cur, false, &mut factors)?;
            }
            Some(b'K') if k_form => {
                cur.pos += 1;
                parse_var(cur, true, &mut factors)?;
            }
            _ => return Err(cur.err("expected term")),
        }
        first = false;
    }
    Ok((
        Monomial::from_factors(factors),
        exp.unwrap_or(0),
        coeff.unwrap_or_else(|| BigInt::from(1)),
    ))
}

fn parse_var(cur: &mut Cursor, k_form: bool, factors: &mut Vec<IndexVector>) -> Result<(), PolyError> {
    cur.expect(b'[')?;
    let mut entries = Vec::new();
    loop {
        cur.skip_ws();
        entries.push(cur.integer()? as i32);
        cur.skip_ws();
        if !cur.eat(b',') {
            break;
        }
    }
    cur.expect(b']')?;
    if k_form {
        if entries.len() != 1 {
            return Err(cur.err("K takes a single index"));
        }
        entries[0] *= 2;
    }
    let iv = IndexVector::from_slots(SlotVec::new(entries))
        .ok_or_else(|| cur.err("zero index vector"))?;
    let power = if cur.eat(b'^') { cur.unsigned()? } else { 1 };
    for _ in 0..power {
        factors.push(iv.clone());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(entries: &[i32]) -> IndexVector {
        IndexVector::from_slots(SlotVec::new(entries.to_vec())).unwrap()
    }

    #[test]
    fn slotvec_norm() {
        assert!(SlotVec::new(vec![0, 0]).is_zero());
        assert_eq!(SlotVec::new(vec![1, 0]).entries(), &[1]);
        assert_eq!(SlotVec::unit(3).entries(), &[0, 0, 1]);
        let a = SlotVec::new(vec![1, -1]);
        let b = SlotVec::new(vec![-1, 1]);
        assert!(a.add(&b).is_zero());
        assert_eq!(a.sub(&b).entries(), &[2, -2]);
    }

    #[test]
    fn index_sign_normalization() {
        assert_eq!(x(&[-1, 1]), x(&[1, -1]));
        assert_eq!(x(&[-1, 1]).entries(), &[1, -1]);
        assert_eq!(x(&[0, -2]).entries(), &[0, 2]);
        assert!(IndexVector::from_slots(SlotVec::new(vec![0, 0])).is_none());
    }

    #[test]
    fn monomial_order() {
        // X[1,-1] sorts before X[1,1] sorts before X[2]
        let m = Monomial::from_factors(vec![x(&[2]), x(&[1, -1]), x(&[1, 1])]);
        let names: Vec<String> = m.factors().iter().map(|iv| format!("{iv:?}")).collect();
        assert_eq!(names, ["X[1, -1]", "X[1, 1]", "X[2]"]);
    }

    #[test]
    fn ring_ops() {
        let p = HArrowPoly::term(Monomial::factor(x(&[2])), Laurent::one());
        let q = HArrowPoly::scalar(Laurent::delta());
        let prod = p.mul_ref(&q);
        assert_eq!(prod.to_string(), "-A^-2*X[2] - A^2*X[2]");
        let mut sum = p.clone();
        sum.add_assign_ref(&p);
        assert_eq!(sum.to_string(), "2*X[2]");
    }

    #[test]
    fn display_canonical() {
        assert_eq!(HArrowPoly::zero().to_string(), "0");
        assert_eq!(HArrowPoly::one().to_string(), "1");
        let mut p = HArrowPoly::scalar(Laurent::from_pairs(&[(-2, 1)]));
        p.add_term(
            Monomial::factor(x(&[2])),
            Laurent::from_pairs(&[(0, 1), (4, -1)]),
        );
        assert_eq!(p.to_string(), "A^-2 + X[2] - A^4*X[2]");
        let a = p.to_arrow().unwrap();
        assert_eq!(a.to_string(), "A^-2 + K[1] - A^4*K[1]");
    }

    #[test]
    fn display_powers() {
        let m = Monomial::from_factors(vec![x(&[1, -1]), x(&[1, -1]), x(&[2])]);
        let p = HArrowPoly::term(m, Laurent::monomial(0, 3));
        assert_eq!(p.to_string(), "3*X[1,-1]^2*X[2]");
    }

    #[test]
    fn parse_round_trip() {
        let texts = [
            "0",
            "1",
            "-A^-2 - A^2",
            "A^-2 + X[2] - A^4*X[2]",
            "3*X[1,-1]^2*X[2] + A*X[1,1]",
            "-5*A^-3 + 2*A^11*X[2,0,-4]",
        ];
        for t in texts {
            let p = HArrowPoly::parse(t).unwrap();
            assert_eq!(p.to_string(), t, "round trip failed");
        }
        let a = ArrowPoly::parse("A^-2 + K[1] - A^4*K[1]").unwrap();
        assert_eq!(a.to_string(), "A^-2 + K[1] - A^4*K[1]");
        assert_eq!(a.as_harrow().to_string(), "A^-2 + X[2] - A^4*X[2]");
    }

    #[test]
    fn parse_errors() {
        assert!(HArrowPoly::parse("A^").is_err());
        assert!(HArrowPoly::parse("X[]").is_err());
        assert!(HArrowPoly::parse("X[0]").is_err());
        assert!(HArrowPoly::parse("K[1]").is_err());
        assert!(ArrowPoly::parse("X[2]").is_err());
        assert!(HArrowPoly::parse("2 2").is_err());
    }

    #[test]
    fn mirror_subst_involution() {
        let p = HArrowPoly::parse("A^-2 + X[2] - A^4*X[2]").unwrap();
        assert_eq!(p.mirror_subst().to_string(), "A^2 - A^-4*X[2] + X[2]");
        assert_eq!(p.mirror_subst().mirror_subst(), p);
    }

    #[test]
    fn writhe_normalize_inverse() {
        let p = HArrowPoly::parse("A^-2 + X[2] - A^4*X[2]").unwrap();
        let n = p.writhe_normalize(-2);
        assert_eq!(n.to_string(), "A^4 + A^6*X[2] - A^10*X[2]");
        assert_eq!(n.writhe_normalize(2), p);
    }

    #[test]
    fn breadth() {
        let p = HArrowPoly::parse("A^-2 + X[2] - A^4*X[2]").unwrap();
        assert_eq!(p.breadth_a(), Ok(6));
        assert_eq!(HArrowPoly::zero().breadth_a(), Err(PolyError::ZeroBreadth));
    }

    #[test]
    fn pushforward_sum() {
        // Collapsing both slots onto one: X[1,-1] -> 1, X[1,1] -> X[2].
        let p = HArrowPoly::parse("A*X[1,-1] + A^3*X[1,1]").unwrap();
        let q = p.pushforward(&[vec![1, 1]]).unwrap();
        assert_eq!(q.to_string(), "A + A^3*X[2]");
    }

    #[test]
    fn pushforward_collision() {
        let p = HArrowPoly::parse("X[1,-1] + X[1,1]").unwrap();
        // Slot swap followed by sign normalization collides the two.
        let q = p.pushforward(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(q.to_string(), "X[1,-1] + X[1,1]");
        let r = p.pushforward(&[vec![1, 0]]).unwrap();
        assert_eq!(r.to_string(), "2*X[1]");
    }

    #[test]
    fn pushforward_dimension_error() {
        let p = HArrowPoly::parse("X[1,0,-1]").unwrap();
        assert!(matches!(
            p.pushforward(&[vec![1, 1]]),
            Err(PolyError::DimensionMismatch { got: 3, want: 2 })
        ));
    }

    #[test]
    fn specializations() {
        let p = HArrowPoly::parse("A^-2 + X[2] - A^4*X[2]").unwrap();
        assert_eq!(p.bracket().to_string(), "A^-2 + 1 - A^4");
        // q = t^(1/4): A^-2 -> q^2 etc.
        assert_eq!(p.jones_t().to_string(), "-A^-4 + 1 + A^2");
        assert!(p.to_arrow().is_ok());
        let bad = HArrowPoly::parse("X[1,1]").unwrap();
        assert!(bad.to_arrow().is_err());
    }

    #[test]
    fn coeff_k_lookup() {
        let a = ArrowPoly::parse("A^-2 + K[1] - A^4*K[1] + 2*K[2]^2*K[1]").unwrap();
        assert_eq!(a.coeff_k(&[(1, 1)]).to_string(), "1 - A^4");
        assert_eq!(a.coeff_k(&[(1, 1), (2, 2)]).to_string(), "2");
        assert_eq!(a.coeff_k(&[(3, 1)]).to_string(), "0");
    }

    #[test]
    fn json_form() {
        let p = HArrowPoly::parse("A^-2 + X[2] - A^4*X[2]").unwrap();
        let v = p.to_json(false);
        assert_eq!(v["1"]["-2"], "1");
        assert_eq!(v["X[2]"]["4"], "-1");
    }
}
