//! Dense truncated power series with exact coefficients.
//!
//! A `TruncatedSeries` stores `c_0, …, c_D` for a fixed truncation degree
//! `D`. Binary operations on series with different truncations use the
//! minimum and record it in the result. Everything is immutable after
//! construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::poly::PoincarePolynomial;
use super::ring::{Coeff, CoefficientRing};
use super::{coeff_from_json, coeff_to_json, ring_from_json, ring_to_json, SeriesError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: CoefficientRing,
    /// Coefficients `c_0..c_D`, dense; length is `trunc + 1`.
    coeffs: Vec<Coeff>,
}

impl TruncatedSeries {
    pub fn zero(ring: CoefficientRing, trunc: usize) -> Self {
        TruncatedSeries {
            ring,
            coeffs: vec![ring.zero(); trunc + 1],
        }
    }

    pub fn one(ring: CoefficientRing, trunc: usize) -> Self {
        Self::monomial(ring, ring.one(), 0, trunc)
    }

    /// `c · t^k`, truncated. A power beyond the truncation yields zero.
    pub fn monomial(ring: CoefficientRing, c: Coeff, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(ring, trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(ring: CoefficientRing, coeffs: Vec<Coeff>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        TruncatedSeries { ring, coeffs }
    }

    /// Convenience: integer coefficients `c_0..c_n` in the given ring.
    pub fn from_i64(ring: CoefficientRing, coeffs: &[i64], trunc: usize) -> Self {
        let mut s = Self::zero(ring, trunc);
        for (k, &c) in coeffs.iter().enumerate() {
            if k <= trunc {
                s.coeffs[k] = ring.from_i64(c);
            }
        }
        s
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Coeff {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn truncate_to(&self, trunc: usize) -> Self {
        let d = trunc.min(self.truncation());
        TruncatedSeries {
            ring: self.ring,
            coeffs: self.coeffs[..=d].to_vec(),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring != other.ring {
            return Err(SeriesError::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let d = self.truncation().min(other.truncation());
        let coeffs = (0..=d)
            .map(|k| self.ring.add(&self.coeffs[k], &other.coeffs[k]))
            .collect();
        Ok(TruncatedSeries {
            ring: self.ring,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        TruncatedSeries {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect(),
        }
    }

    /// Cauchy product, truncated at the smaller truncation degree.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let d = self.truncation().min(other.truncation());
        let mut coeffs = vec![self.ring.zero(); d + 1];
        for i in 0..=d {
            if self.ring.is_zero(&self.coeffs[i]) {
                continue;
            }
            for j in 0..=(d - i) {
                if self.ring.is_zero(&other.coeffs[j]) {
                    continue;
                }
                let term = self.ring.mul(&self.coeffs[i], &other.coeffs[j]);
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &term);
            }
        }
        Ok(TruncatedSeries {
            ring: self.ring,
            coeffs,
        })
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0_inv = self
            .ring
            .inv(&self.coeffs[0])
            .map_err(|_| SeriesError::NonInvertibleConstant)?;
        let d = self.truncation();
        let mut coeffs = vec![self.ring.zero(); d + 1];
        coeffs[0] = c0_inv.clone();
        for n in 1..=d {
            // c_n = -c0⁻¹ · Σ_{k=1..n} a_k c_{n-k}
            let mut acc = self.ring.zero();
            for k in 1..=n {
                if self.ring.is_zero(&self.coeffs[k]) {
                    continue;
                }
                let term = self.ring.mul(&self.coeffs[k], &coeffs[n - k]);
                acc = self.ring.add(&acc, &term);
            }
            coeffs[n] = self.ring.neg(&self.ring.mul(&c0_inv, &acc));
        }
        Ok(TruncatedSeries {
            ring: self.ring,
            coeffs,
        })
    }

    /// `self · other⁻¹`, truncated.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring, self.truncation());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Shift by `t^k` (coefficients beyond the truncation fall off).
    pub fn shift(&self, k: usize) -> Self {
        let d = self.truncation();
        let mut coeffs = vec![self.ring.zero(); d + 1];
        if k <= d {
            coeffs[k..=d].clone_from_slice(&self.coeffs[..=d - k]);
        }
        TruncatedSeries {
            ring: self.ring,
            coeffs,
        }
    }

    pub fn eq_up_to(&self, other: &Self, d: usize) -> bool {
        if self.ring != other.ring {
            return false;
        }
        (0..=d).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// First degree `≤ d` where the two series differ.
    pub fn first_difference(&self, other: &Self, d: usize) -> Option<usize> {
        (0..=d).find(|&k| self.coeff(k) != other.coeff(k))
    }

    /// Reads the series as an exact polynomial: every stored coefficient
    /// beyond `degree` must vanish. Returns `None` when the tail is
    /// nonzero, i.e. the data does not certify a polynomial of that
    /// degree within the truncation window.
    pub fn polynomial_part(&self, degree: usize) -> Option<PoincarePolynomial> {
        if degree > self.truncation() {
            return None;
        }
        for k in degree + 1..=self.truncation() {
            if !self.ring.is_zero(&self.coeffs[k]) {
                return None;
            }
        }
        Some(PoincarePolynomial::from_coeffs(
            self.ring,
            self.coeffs[..=degree].to_vec(),
        ))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": ring_to_json(self.ring),
            "trunc": self.truncation(),
            "coeffs": self.coeffs.iter().map(coeff_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let ring = ring_from_json(v.get("ring").ok_or(SeriesError::Malformed("ring"))?)?;
        let trunc = v
            .get("trunc")
            .and_then(Value::as_u64)
            .ok_or(SeriesError::Malformed("trunc"))? as usize;
        let raw = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or(SeriesError::Malformed("coeffs"))?;
        let mut coeffs = Vec::with_capacity(trunc + 1);
        for item in raw {
            coeffs.push(coeff_from_json(ring, item)?);
        }
        coeffs.resize(trunc + 1, ring.zero());
        Ok(TruncatedSeries { ring, coeffs })
    }
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.truncation() + 1)
    }
}

/// Expands `∏ (1 + sign·t^k)^exponent` to the requested truncation.
/// Negative exponents expand through the geometric series; every factor
/// has unit constant term, so inversion is always possible.
pub fn series_from_product(
    factors: &[(i8, u32, i64)],
    ring: CoefficientRing,
    trunc: usize,
) -> Result<TruncatedSeries, SeriesError> {
    let mut acc = TruncatedSeries::one(ring, trunc);
    for &(sign, k, exponent) in factors {
        if k == 0 {
            return Err(SeriesError::Malformed("factor power must be positive"));
        }
        let unit = match sign {
            1 => ring.one(),
            -1 => ring.neg(&ring.one()),
            _ => return Err(SeriesError::Malformed("factor sign must be ±1")),
        };
        let base = TruncatedSeries::one(ring, trunc)
            .add(&TruncatedSeries::monomial(ring, unit, k as usize, trunc))?;
        let powered = if exponent >= 0 {
            base.pow(exponent as u64)
        } else {
            base.inverse()?.pow((-exponent) as u64)
        };
        acc = acc.mul(&powered)?;
    }
    Ok(acc)
}

/// Projects a character-ring series onto its `χ`-invariant part: each
/// coefficient `a + bχ` maps to the rational `a`, which equals half the
/// sum of the evaluations at `χ = 1` and `χ = −1`.
pub fn char_invariant_part(s: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if s.ring() != CoefficientRing::CharacterRing {
        return Err(SeriesError::CharacterRingExpected { found: s.ring() });
    }
    let coeffs = s
        .coeffs()
        .iter()
        .map(|c| match c {
            Coeff::Char(a, _) => Coeff::Rat(a.clone()),
            _ => unreachable!("ring checked above"),
        })
        .collect();
    Ok(TruncatedSeries::from_coeffs(
        CoefficientRing::Rationals,
        coeffs,
    ))
}

/// Evaluates a rational series' coefficientwise integer content; errors
/// when any coefficient has a nontrivial denominator. Used to certify
/// that a Betti series is a genuine dimension count.
pub fn integer_coefficients(s: &TruncatedSeries) -> Result<Vec<BigInt>, SeriesError> {
    let mut out = Vec::with_capacity(s.truncation() + 1);
    for c in s.coeffs() {
        let r: &BigRational = c.as_rational().ok_or(SeriesError::RationalsExpected {
            found: s.ring(),
        })?;
        if !r.is_integer() {
            return Err(SeriesError::NonIntegerCoefficient);
        }
        out.push(r.to_integer());
    }
    Ok(out)
}
