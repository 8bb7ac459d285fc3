//! Diagram-independent consequences of a computed polynomial: genus and
//! crossing number lower bounds, a checkerboard colorability obstruction,
//! and which face-numbering moduli stay possible.

use crate::poly::{ArrowPoly, HArrowPoly, Monomial, PolyError};
use num_integer::Integer;
use std::fmt;

/// Why a monomial rules out checkerboard colorability.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ColorRule {
    /// a monomial consisting of a single loop variable
    LoneFactor,
    /// variable indices summing to something not divisible by 4
    IndexSumNotDivisibleByFour,
    /// one index larger than the sum of all the others
    DominantFactor,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorObstruction {
    pub monomial: Monomial,
    pub rule: ColorRule,
}

impl fmt::Display for ColorObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.rule {
            ColorRule::LoneFactor => "is a lone loop variable",
            ColorRule::IndexSumNotDivisibleByFour => "has index sum not divisible by 4",
            ColorRule::DominantFactor => "has one index exceeding the sum of the rest",
        };
        write!(f, "monomial {} {}", self.monomial.write_vars(true), what)
    }
}

/// First monomial (in term order) violating a necessary condition for
/// checkerboard colorability; `None` leaves colorability open.
pub fn checkerboard_obstruction(p: &ArrowPoly) -> Option<ColorObstruction> {
    for (m, _) in p.as_harrow().terms() {
        if m.is_one() {
            continue;
        }
        // single-slot variables: each factor is X[2n] for one n > 0
        let indices: Vec<i64> = m.factors().iter().map(|iv| iv.entries()[0] as i64).collect();
        let rule = if indices.len() == 1 {
            Some(ColorRule::LoneFactor)
        } else if indices.iter().sum::<i64>() % 4 != 0 {
            Some(ColorRule::IndexSumNotDivisibleByFour)
        } else if 2 * indices.iter().max().copied().unwrap() > indices.iter().sum::<i64>() {
            Some(ColorRule::DominantFactor)
        } else {
            None
        };
        if let Some(rule) = rule {
            return Some(ColorObstruction {
                monomial: m.clone(),
                rule,
            });
        }
    }
    None
}

/// Genus the supporting surface must have: a monomial with m distinct
/// loop variables forces m when m <= 1, and ceil(m/3) + 1 beyond that.
pub fn genus_lower_bound(p: &HArrowPoly) -> usize {
    p.terms()
        .map(|(m, _)| {
            let distinct = m.powers().len();
            match distinct {
                0 | 1 => distinct,
                m => m.div_ceil(3) + 1,
            }
        })
        .max()
        .unwrap_or(0)
}

/// Crossings any diagram of the link must have: half the total absolute
/// index weight of a monomial, rounded up.
pub fn crossing_lower_bound(p: &HArrowPoly) -> usize {
    p.terms()
        .map(|(m, _)| {
            let weight: u64 = m.factors().iter().map(|iv| iv.abs_sum() as u64).sum();
            weight.div_ceil(2) as usize
        })
        .max()
        .unwrap_or(0)
}

/// Breadth in A after every loop variable is rescaled by 1/delta. Each
/// coefficient is divisible by delta once per factor, so the rescaled
/// extremes sit exactly 2k inside the raw ones. For a connected
/// alternating diagram on its genus-g surface (reduced in the homological
/// sense) this equals 4c - 4g + 4.
pub fn breadth_prime(p: &HArrowPoly) -> Result<i32, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroBreadth);
    }
    let mut hi = i32::MIN;
    let mut lo = i32::MAX;
    for (m, c) in p.terms() {
        let k = 2 * m.factors().len() as i32;
        hi = hi.max(c.max_exp().expect("stored coefficients are nonzero") - k);
        lo = lo.min(c.min_exp().expect("stored coefficients are nonzero") + k);
    }
    Ok(hi - lo)
}

/// Gcd of every loop-variable index entry, 0 when none appear. A face
/// numbering mod n is not excluded by the polynomial iff n divides this.
pub fn index_gcd(p: &HArrowPoly) -> u64 {
    let mut g = 0u64;
    for (m, _) in p.terms() {
        for iv in m.factors() {
            for &e in iv.entries() {
                g = g.gcd(&(e.unsigned_abs() as u64));
            }
        }
    }
    g
}

/// Everything read off one normalized arrow polynomial.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub genus_lb: usize,
    pub crossing_lb: usize,
    /// `None`: checkerboard colorability is not excluded
    pub checkerboard: Option<ColorObstruction>,
    /// no loop variables at all: no homological information
    pub arrow_trivial: bool,
    pub index_gcd: u64,
}

pub fn analyze(p: &ArrowPoly) -> BoundReport {
    let h = p.as_harrow();
    BoundReport {
        genus_lb: genus_lower_bound(h),
        crossing_lb: crossing_lower_bound(h),
        checkerboard: checkerboard_obstruction(p),
        arrow_trivial: h.terms().all(|(m, _)| m.is_one()),
        index_gcd: index_gcd(h),
    }
}
