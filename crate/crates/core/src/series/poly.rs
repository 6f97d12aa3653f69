//! Exact polynomials with a true degree (no truncation).
//!
//! These carry the Poincaré polynomials of the closed moduli manifolds,
//! where exact division, palindromy and evaluation at `t = −1` are
//! meaningful. The zero polynomial is stored as an empty coefficient
//! list; otherwise the leading coefficient is nonzero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::ring::{Coeff, CoefficientRing};
use super::truncated::TruncatedSeries;
use super::{coeff_from_json, coeff_to_json, ring_from_json, ring_to_json, SeriesError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincarePolynomial {
    ring: CoefficientRing,
    /// Coefficients in degree order; trailing zeros trimmed.
    coeffs: Vec<Coeff>,
}

impl PoincarePolynomial {
    pub fn zero(ring: CoefficientRing) -> Self {
        PoincarePolynomial {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: CoefficientRing) -> Self {
        Self::from_coeffs(ring, vec![ring.one()])
    }

    pub fn from_coeffs(ring: CoefficientRing, mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        PoincarePolynomial { ring, coeffs }
    }

    pub fn from_i64(ring: CoefficientRing, coeffs: &[i64]) -> Self {
        Self::from_coeffs(ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    /// `c · t^k`.
    pub fn monomial(ring: CoefficientRing, c: Coeff, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(ring, coeffs)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
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
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.ring.add(&self.coeff(k), &other.coeff(k)))
            .collect();
        Ok(Self::from_coeffs(self.ring, coeffs))
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(
            self.ring,
            self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::from_coeffs(
            self.ring,
            self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring));
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let term = self.ring.mul(a, b);
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &term);
            }
        }
        Ok(Self::from_coeffs(self.ring, coeffs))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.ring);
        let mut base = self.clone();
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

    /// Exact Euclidean division: `self = q·den + r` with
    /// `deg r < deg den`. The divisor's leading coefficient must be a
    /// unit (always the case over a field; over the character ring this
    /// can fail).
    pub fn divrem(&self, den: &Self) -> Result<(Self, Self), SeriesError> {
        self.check_ring(den)?;
        let dd = den.degree().ok_or(SeriesError::DivisionByZeroPolynomial)?;
        let lead_inv = self
            .ring
            .inv(&den.coeffs[dd])
            .map_err(|_| SeriesError::NonInvertible)?;
        let mut rem = self.coeffs.clone();
        let mut quot: Vec<Coeff> = Vec::new();
        while rem.len() > dd {
            let k = rem.len() - 1 - dd; // quotient degree for this step
            let factor = self.ring.mul(rem.last().unwrap(), &lead_inv);
            if quot.len() < k + 1 {
                quot.resize(k + 1, self.ring.zero());
            }
            quot[k] = self.ring.add(&quot[k], &factor);
            for (j, dc) in den.coeffs.iter().enumerate() {
                let term = self.ring.mul(&factor, dc);
                rem[k + j] = self.ring.sub(&rem[k + j], &term);
            }
            while rem.last().is_some_and(|c| self.ring.is_zero(c)) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        Ok((
            Self::from_coeffs(self.ring, quot),
            Self::from_coeffs(self.ring, rem),
        ))
    }

    /// Exact Horner evaluation at a rational point. Defined for
    /// rational-coefficient polynomials.
    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational, SeriesError> {
        if self.ring != CoefficientRing::Rationals {
            return Err(SeriesError::RationalsExpected { found: self.ring });
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.as_rational().expect("ring checked");
        }
        Ok(acc)
    }

    pub fn evaluate_i64(&self, x: i64) -> Result<BigRational, SeriesError> {
        self.evaluate(&BigRational::from_integer(BigInt::from(x)))
    }

    /// True iff `coeff(k) = coeff(dim − k)` for all `k` and the degree
    /// does not exceed `dim`. The zero polynomial is vacuously
    /// palindromic.
    pub fn palindrome_check(&self, dim: usize) -> bool {
        match self.degree() {
            None => true,
            Some(d) if d > dim => false,
            Some(_) => (0..=dim).all(|k| self.coeff(k) == self.coeff(dim - k)),
        }
    }

    pub fn to_series(&self, trunc: usize) -> TruncatedSeries {
        let mut coeffs = vec![self.ring.zero(); trunc + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k <= trunc {
                coeffs[k] = c.clone();
            }
        }
        TruncatedSeries::from_coeffs(self.ring, coeffs)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": ring_to_json(self.ring),
            "coeffs": self.coeffs.iter().map(coeff_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let ring = ring_from_json(v.get("ring").ok_or(SeriesError::Malformed("ring"))?)?;
        let raw = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or(SeriesError::Malformed("coeffs"))?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for item in raw {
            coeffs.push(coeff_from_json(ring, item)?);
        }
        Ok(Self::from_coeffs(ring, coeffs))
    }
}

impl std::fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let unit = c == &self.ring.one();
            match (k, unit) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "({c})t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoefficientRing {
        CoefficientRing::Rationals
    }

    #[test]
    fn divrem_exact() {
        // (1−t²)/(1−t) = (1+t, 0).
        let num = PoincarePolynomial::from_i64(q(), &[1, 0, -1]);
        let den = PoincarePolynomial::from_i64(q(), &[1, -1]);
        let (qt, r) = num.divrem(&den).unwrap();
        assert_eq!(qt, PoincarePolynomial::from_i64(q(), &[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divrem_moduli_numerator() {
        // (1−t²−t⁴+t⁶)/((1−t)(1−t²)) = (1+t+t²+t³, 0): reconciles the
        // genus-2 single-circle golden row with its closed numerator.
        let num = PoincarePolynomial::from_i64(q(), &[1, 0, -1, 0, -1, 0, 1]);
        let den = PoincarePolynomial::from_i64(q(), &[1, -1])
            .mul(&PoincarePolynomial::from_i64(q(), &[1, 0, -1]))
            .unwrap();
        let (qt, r) = num.divrem(&den).unwrap();
        assert_eq!(qt, PoincarePolynomial::from_i64(q(), &[1, 1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divrem_with_remainder() {
        // (1+6t²+12t⁴+10t⁶+3t⁸)/(1+t³) leaves a nonzero remainder; the
        // Euclidean identity must hold regardless.
        let num = PoincarePolynomial::from_i64(q(), &[1, 0, 6, 0, 12, 0, 10, 0, 3]);
        let den = PoincarePolynomial::from_i64(q(), &[1, 0, 0, 1]);
        let (qt, r) = num.divrem(&den).unwrap();
        assert!(!r.is_zero());
        // Division identity holds regardless.
        let back = qt.mul(&den).unwrap().add(&r).unwrap();
        assert_eq!(back, num);
    }

    #[test]
    fn palindromes() {
        // 1+2t³+t⁶ w.r.t. dim 6; golden odd-characteristic row.
        assert!(PoincarePolynomial::from_i64(q(), &[1, 0, 0, 2, 0, 0, 1]).palindrome_check(6));
        assert!(!PoincarePolynomial::from_i64(q(), &[1, 1]).palindrome_check(3));
        // Golden mod-2 row at genus 3, four circles.
        assert!(PoincarePolynomial::from_i64(q(), &[1, 4, 11, 16, 11, 4, 1]).palindrome_check(6));
    }

    #[test]
    fn evaluation() {
        let p = PoincarePolynomial::from_i64(q(), &[1, 0, 0, 2, 0, 0, 1]);
        assert!(p.evaluate_i64(-1).unwrap().is_zero());
        assert_eq!(p.evaluate_i64(0).unwrap(), BigRational::from_integer(1.into()));
        let p = PoincarePolynomial::from_i64(q(), &[1, 1, 1, 1]);
        assert_eq!(p.evaluate_i64(1).unwrap(), BigRational::from_integer(4.into()));
    }
}
