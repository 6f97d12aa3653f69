//! Coefficient rings and their elements.
//!
//! Three rings cover every computation in this crate: the rationals, a
//! prime field `𝔽_p` with canonical residues, and the character ring of
//! `Z/2` — the commutative `ℚ`-algebra with basis `{1, χ}` and `χ² = 1`.
//! Arithmetic is exact everywhere; there is no floating point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SeriesError;

/// A coefficient ring tag. Carries the modulus for prime fields, so a
/// `Coeff` paired with its ring is a complete description of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRing {
    /// Arbitrary-precision rationals.
    Rationals,
    /// Integers modulo a prime, stored as canonical residues in `0..p`.
    PrimeField(u64),
    /// `ℚ[χ]/(χ² − 1)`: elements `a + bχ` with rational `a`, `b`.
    CharacterRing,
}

impl CoefficientRing {
    /// Builds the `𝔽_p` tag, rejecting composite or oversized moduli.
    /// The modulus is capped so products fit in `u128` intermediates.
    pub fn prime_field(p: u64) -> Result<Self, SeriesError> {
        if p < 2 || !is_prime(p) {
            return Err(SeriesError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(SeriesError::ModulusTooLarge(p));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientRing::Rationals => Coeff::Rat(BigRational::zero()),
            CoefficientRing::PrimeField(_) => Coeff::Mod(0),
            CoefficientRing::CharacterRing => {
                Coeff::Char(BigRational::zero(), BigRational::zero())
            }
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoefficientRing::Rationals => Coeff::Rat(BigRational::one()),
            CoefficientRing::PrimeField(_) => Coeff::Mod(1),
            CoefficientRing::CharacterRing => Coeff::Char(BigRational::one(), BigRational::zero()),
        }
    }

    /// The element `χ`. Only meaningful in the character ring.
    pub fn chi(&self) -> Result<Coeff, SeriesError> {
        match self {
            CoefficientRing::CharacterRing => {
                Ok(Coeff::Char(BigRational::zero(), BigRational::one()))
            }
            other => Err(SeriesError::CharacterRingExpected { found: *other }),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            CoefficientRing::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
            CoefficientRing::PrimeField(p) => {
                let p = *p as i128;
                let r = ((n as i128 % p) + p) % p;
                Coeff::Mod(r as u64)
            }
            CoefficientRing::CharacterRing => Coeff::Char(
                BigRational::from_integer(BigInt::from(n)),
                BigRational::zero(),
            ),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            CoefficientRing::Rationals => Coeff::Rat(BigRational::from_integer(n.clone())),
            CoefficientRing::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let mut r = n % &p_big;
                if r < BigInt::zero() {
                    r += &p_big;
                }
                let (_, digits) = r.to_u64_digits();
                Coeff::Mod(digits.first().copied().unwrap_or(0))
            }
            CoefficientRing::CharacterRing => {
                Coeff::Char(BigRational::from_integer(n.clone()), BigRational::zero())
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Mod(x) => *x == 0,
            Coeff::Char(x, y) => x.is_zero() && y.is_zero(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientRing::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (CoefficientRing::PrimeField(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod((x + y) % p)
            }
            (CoefficientRing::CharacterRing, Coeff::Char(x1, y1), Coeff::Char(x2, y2)) => {
                Coeff::Char(x1 + x2, y1 + y2)
            }
            _ => panic!("coefficient does not belong to ring {self:?}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoefficientRing::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (CoefficientRing::PrimeField(p), Coeff::Mod(x)) => {
                Coeff::Mod(if *x == 0 { 0 } else { p - x })
            }
            (CoefficientRing::CharacterRing, Coeff::Char(x, y)) => Coeff::Char(-x, -y),
            _ => panic!("coefficient does not belong to ring {self:?}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientRing::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (CoefficientRing::PrimeField(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            // (a + bχ)(c + dχ) = (ac + bd) + (ad + bc)χ
            (CoefficientRing::CharacterRing, Coeff::Char(a1, b1), Coeff::Char(a2, b2)) => {
                Coeff::Char(a1 * a2 + b1 * b2, a1 * b2 + b1 * a2)
            }
            _ => panic!("coefficient does not belong to ring {self:?}"),
        }
    }

    /// Multiplicative inverse. In the character ring `a + bχ` is a unit
    /// iff `a² ≠ b²`.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff, SeriesError> {
        match (self, a) {
            (CoefficientRing::Rationals, Coeff::Rat(x)) => {
                if x.is_zero() {
                    Err(SeriesError::NonInvertible)
                } else {
                    Ok(Coeff::Rat(x.recip()))
                }
            }
            (CoefficientRing::PrimeField(p), Coeff::Mod(x)) => {
                if *x == 0 {
                    Err(SeriesError::NonInvertible)
                } else {
                    Ok(Coeff::Mod(mod_inverse(*x, *p)))
                }
            }
            (CoefficientRing::CharacterRing, Coeff::Char(a1, b1)) => {
                let det = a1 * a1 - b1 * b1;
                if det.is_zero() {
                    Err(SeriesError::NonInvertible)
                } else {
                    Ok(Coeff::Char(a1 / &det, -(b1 / &det)))
                }
            }
            _ => panic!("coefficient does not belong to ring {self:?}"),
        }
    }
}

/// A ring element. The variant must match the ring it is used with; the
/// series and polynomial types enforce this at their public boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Mod(u64),
    /// `a + bχ` stored as `(a, b)`.
    Char(BigRational, BigRational),
}

impl Coeff {
    /// The rational value, when this is a plain rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rat(x) => Some(x),
            _ => None,
        }
    }

    /// The `(1, χ)` components, when this lives in the character ring.
    pub fn char_parts(&self) -> Option<(&BigRational, &BigRational)> {
        match self {
            Coeff::Char(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(x) => write!(f, "{x}"),
            Coeff::Mod(x) => write!(f, "{x}"),
            Coeff::Char(a, b) => {
                if b.is_zero() {
                    write!(f, "{a}")
                } else if a.is_zero() {
                    write!(f, "{b}χ")
                } else {
                    write!(f, "{a}+{b}χ")
                }
            }
        }
    }
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    // Extended Euclid; p is prime and x ≢ 0.
    let (mut r0, mut r1) = (p as i128, x as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    (((s0 % p as i128) + p as i128) % p as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
