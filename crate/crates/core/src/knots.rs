//! Continued fractions of 2-bridge knots.
//!
//! Expansions are read as `[b₁, …, b_k] = 1/(b₁ + 1/(b₂ + …))` with the empty
//! tail contributing 0. A fraction `K(numerator/denominator)` is stored with
//! both parts named explicitly; the knot criterion and the modular symmetry
//! test use `p := denominator`, `q := numerator`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An integer coefficient list `[b₁, …, b_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    pub coeffs: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact rational value; a vanishing partial denominator is reported with
    /// the offending suffix.
    pub fn value(&self) -> Result<BigRational> {
        let mut x = BigRational::zero();
        for (i, &b) in self.coeffs.iter().enumerate().rev() {
            let d = BigRational::from_integer(BigInt::from(b)) + x;
            if d.is_zero() {
                return Err(Error::Degenerate(format!(
                    "expansion suffix {} evaluates to 1/0",
                    ContinuedFraction::new(self.coeffs[i..].to_vec())
                )));
            }
            x = d.recip();
        }
        Ok(x)
    }

    pub fn is_palindrome(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().copied().collect())
    }

    pub fn scaled(&self, eps: i64) -> Self {
        Self::new(self.coeffs.iter().map(|&b| eps * b).collect())
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

impl std::str::FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses comma separated integers, optionally in brackets.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        body.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Domain(format!("not an integer coefficient: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// A reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoBridgeFraction {
    pub numerator: BigInt,
    pub denominator: BigInt,
}

impl TwoBridgeFraction {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let (n, d) = (numerator.into(), denominator.into());
        if d.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::from_rational(&BigRational::new(n, d)))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        // Ratio keeps itself reduced with a positive denominator.
        Self { numerator: r.numer().clone(), denominator: r.denom().clone() }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }

    /// A 2-bridge fraction describes a knot (rather than a two-component
    /// link) when its denominator is odd.
    pub fn is_knot(&self) -> bool {
        self.denominator.is_odd()
    }

    /// Numerators `q′ ∈ [0, p)` with `q′ ≡ q^{±1} mod p`, `p` the
    /// denominator: the fractions over the same denominator giving the same
    /// 2-bridge knot up to orientation-preserving equivalence.
    pub fn equivalent_numerators(&self) -> Vec<BigInt> {
        let p = &self.denominator;
        let q = self.numerator.mod_floor(p);
        let mut out = vec![q.clone()];
        if let Some(inv) = mod_inverse(&q, p) {
            if inv != q {
                out.push(inv);
            }
        }
        out.sort();
        out
    }

    /// Whether `other` names the same knot: equal denominators and
    /// numerators related by `q′ ≡ q^{±1} mod p`.
    pub fn is_equivalent(&self, other: &TwoBridgeFraction) -> bool {
        self.denominator == other.denominator
            && self.equivalent_numerators().contains(&other.numerator.mod_floor(&other.denominator))
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl std::str::FromStr for TwoBridgeFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::Domain(format!("expected numerator/denominator, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim().parse::<BigInt>().map_err(|_| Error::Domain(format!("not an integer: {t:?}")))
        };
        Self::new(parse(n)?, parse(d)?)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

pub fn cf_value(cf: &ContinuedFraction) -> Result<TwoBridgeFraction> {
    cf.value().map(|r| TwoBridgeFraction::from_rational(&r))
}

/// The all-positive expansion of `numerator/denominator`, requiring
/// `0 < numerator < denominator`.
pub fn fraction_to_cf(fr: &TwoBridgeFraction) -> Result<ContinuedFraction> {
    if !fr.numerator.is_positive() || fr.numerator >= fr.denominator {
        return Err(Error::Domain(format!("expected 0 < numerator < denominator, got {fr}")));
    }
    let (mut num, mut den) = (fr.numerator.clone(), fr.denominator.clone());
    let mut coeffs = Vec::new();
    while !num.is_zero() {
        let (b, r) = den.div_mod_floor(&num);
        let b = i64::try_from(b)
            .map_err(|_| Error::Domain(format!("coefficient of {fr} exceeds i64")))?;
        coeffs.push(b);
        den = num;
        num = r;
    }
    Ok(ContinuedFraction::new(coeffs))
}

/// Removes zero coefficients via `[…, a, 0, b, …] → […, a+b, …]`, always
/// collapsing the leftmost interior zero first. Zeros left at either end, or
/// an empty result, are reported as degenerate.
pub fn collapse_zeros(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    let mut c = cf.coeffs.clone();
    while let Some(i) = (1..c.len().saturating_sub(1)).find(|&i| c[i] == 0) {
        let merged = c[i - 1]
            .checked_add(c[i + 1])
            .ok_or_else(|| Error::Domain("coefficient overflow while collapsing".into()))?;
        c.splice(i - 1..=i + 1, [merged]);
    }
    if c.is_empty() {
        return Err(Error::Degenerate(format!("collapsing {cf} leaves an empty expansion")));
    }
    if c.contains(&0) {
        return Err(Error::Degenerate(format!(
            "collapsing {cf} leaves a zero at an end: {}",
            ContinuedFraction::new(c)
        )));
    }
    Ok(ContinuedFraction::new(c))
}

/// Raw and collapsed forms of the Ohtsuki-Riley-Sakuma expansion
/// `2c + [ε₁b, 2c₁, ε₂b⁻¹, 2c₂, ε₃b, …]`, where `b⁻¹` is `b` reversed.
#[derive(Clone, Debug)]
pub struct OrsExpansion {
    pub raw: ContinuedFraction,
    pub c: i64,
    /// `2c + [raw]`, or the degenerate condition.
    pub raw_value: Result<TwoBridgeFraction>,
    pub collapsed: Result<ContinuedFraction>,
    /// `2c + [collapsed]`, or the degenerate condition.
    pub collapsed_value: Result<TwoBridgeFraction>,
    pub degree: i64,
}

pub fn ors_substitute(
    b: &ContinuedFraction,
    c: i64,
    cs: &[i64],
    eps: &[i64],
) -> Result<OrsExpansion> {
    if c < 0 {
        return Err(Error::Domain(format!("c must be non-negative, got {c}")));
    }
    if eps.len() != cs.len() + 1 {
        return Err(Error::Domain(format!(
            "expected {} signs for {} interleaved integers, got {}",
            cs.len() + 1,
            cs.len(),
            eps.len()
        )));
    }
    if let Some(e) = eps.iter().find(|e| e.abs() != 1) {
        return Err(Error::Domain(format!("signs must be ±1, got {e}")));
    }
    let rev = b.reversed();
    let mut raw = Vec::new();
    for (j, &e) in eps.iter().enumerate() {
        if j > 0 {
            raw.push(2 * cs[j - 1]);
        }
        let block = if j % 2 == 0 { b } else { &rev };
        raw.extend(block.scaled(e).coeffs);
    }
    let raw = ContinuedFraction::new(raw);
    let shift = BigRational::from_integer(BigInt::from(2 * c));
    let eval = |cf: &ContinuedFraction| {
        cf.value().map(|v| TwoBridgeFraction::from_rational(&(v + shift.clone())))
    };
    let raw_value = eval(&raw);
    let collapsed = collapse_zeros(&raw);
    let collapsed_value = collapsed.as_ref().map_err(Clone::clone).and_then(eval);
    Ok(OrsExpansion { raw, c, raw_value, collapsed, collapsed_value, degree: ors_degree(eps) })
}

/// Mapping degree `Σⱼ (−1)^{j+1} εⱼ` of the induced fold map.
pub fn ors_degree(eps: &[i64]) -> i64 {
    eps.iter().enumerate().map(|(j, &e)| if j % 2 == 0 { e } else { -e }).sum()
}

/// `Lₙ`: the expansion with `2·3^{n−1}` coefficients equal to 2.
pub fn ln_family(n: u32) -> Result<ContinuedFraction> {
    if n == 0 {
        return Err(Error::Domain("the family starts at n = 1".into()));
    }
    let len = 3usize
        .checked_pow(n - 1)
        .and_then(|k| k.checked_mul(2))
        .ok_or_else(|| Error::Domain(format!("n = {n} is too large")))?;
    Ok(ContinuedFraction::new(vec![2; len]))
}

/// Number of twist boxes in the standard diagram of an expansion whose
/// coefficients are nonzero and share one sign (the alternating case).
pub fn twist_number(cf: &ContinuedFraction) -> Result<usize> {
    let all_pos = cf.coeffs.iter().all(|&b| b > 0);
    let all_neg = cf.coeffs.iter().all(|&b| b < 0);
    if cf.is_empty() || !(all_pos || all_neg) {
        return Err(Error::Domain(format!(
            "twist number needs nonzero coefficients of one sign, got {cf}"
        )));
    }
    Ok(cf.len())
}

/// `(C₁·tw − C₂, C₃·tw + C₄)` for user supplied constants.
pub fn volume_bounds(tw: usize, c: [f64; 4]) -> (f64, f64) {
    let t = tw as f64;
    (c[0] * t - c[1], c[2] * t + c[3])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub fraction: TwoBridgeFraction,
    pub symmetric: bool,
    /// `q² ≡ −1 mod p` with `p` the denominator and `q` the numerator.
    pub q_squared_check: bool,
    pub cs_vanishes: bool,
}

/// Palindrome and modular tests; a palindromic expansion implies vanishing
/// PSL(2,ℂ) Chern-Simons invariant of the knot complement.
pub fn symmetry_and_cs(cf: &ContinuedFraction) -> Result<SymmetryReport> {
    let fraction = cf_value(cf)?;
    let p = &fraction.denominator;
    let q = &fraction.numerator;
    let q_squared_check = ((q * q) + BigInt::one()).mod_floor(p).is_zero();
    let symmetric = cf.is_palindrome();
    Ok(SymmetryReport { fraction, symmetric, q_squared_check, cs_vanishes: symmetric })
}
