//! Topological types of real curves and of smooth Real vector bundles.
//!
//! A real curve is classified by its Weichold invariants `(g, a, eps)`:
//! genus, number of real circles, and `eps = 1` when the complement of
//! the real locus is connected. A type exists iff
//! `1 − eps ≤ a ≤ g + 1 − eps`, with `g + 1 ≡ a (mod 2)` when `eps = 0`.
//!
//! A Real bundle restricts over each real circle to an `ℝ^r`-bundle; the
//! circle is odd or even according to its first Stiefel-Whitney class.
//! The number of odd circles `b` must satisfy `d ≡ b (mod 2)`.

use num_integer::Integer;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("eps must be 0 or 1, got {0}")]
    InvalidEps(u8),
    #[error("circle count out of range: 1 - eps <= a <= g + 1 - eps fails for (g, a, eps) = ({g}, {a}, {eps})")]
    CircleCountRange { g: u32, a: u32, eps: u8 },
    #[error("dividing-curve parity: g + 1 ≡ a (mod 2) fails for (g, a) = ({g}, {a}) with eps = 0")]
    DividingParity { g: u32, a: u32 },
    #[error("rank must be at least 1")]
    RankZero,
    #[error("circle class list has length {got}, expected a = {expected}")]
    ClassLengthMismatch { expected: u32, got: usize },
    #[error("degree parity: d ≡ (number of odd circles) mod 2 fails for d = {d}, b = {b}")]
    DegreeParity { d: i64, b: u32 },
    #[error("no real circles and odd degree: only Quaternionic components exist, which are not modeled")]
    QuaternionicUnsupported,
}

/// Weichold invariants of a real curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RealCurve {
    pub g: u32,
    pub a: u32,
    pub eps: u8,
}

impl RealCurve {
    pub fn is_connected_complement(&self) -> bool {
        self.eps == 1
    }

    pub fn to_json(&self) -> Value {
        json!({ "g": self.g, "a": self.a, "eps": self.eps })
    }
}

impl std::fmt::Display for RealCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(g={}, a={}, eps={})", self.g, self.a, self.eps)
    }
}

/// Validates the Weichold constraints.
pub fn validate_curve(g: u32, a: u32, eps: u8) -> Result<RealCurve, TopologyError> {
    if eps > 1 {
        return Err(TopologyError::InvalidEps(eps));
    }
    let lower = 1 - eps as i64;
    let upper = g as i64 + 1 - eps as i64;
    if (a as i64) < lower || (a as i64) > upper {
        return Err(TopologyError::CircleCountRange { g, a, eps });
    }
    if eps == 0 && (g + 1) % 2 != a % 2 {
        return Err(TopologyError::DividingParity { g, a });
    }
    Ok(RealCurve { g, a, eps })
}

/// All real curve types of genus `g`: the non-dividing types (`eps = 1`)
/// in increasing `a`, then the dividing types.
pub fn enumerate_curves(g: u32) -> Vec<RealCurve> {
    let mut out = Vec::new();
    for eps in [1u8, 0u8] {
        for a in 0..=(g + 1) {
            if let Ok(c) = validate_curve(g, a, eps) {
                out.push(c);
            }
        }
    }
    out
}

/// Topological type of a smooth Real vector bundle over a real curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBundle {
    pub r: u32,
    pub d: i64,
    /// Per-circle restriction of the Stiefel-Whitney class, one bit per
    /// real circle. The invariants depend only on the counts below;
    /// ordering is preserved for reporting.
    pub circle_classes: Vec<u8>,
    /// Number of odd circles.
    pub b: u32,
    /// Number of even circles, `a − b`.
    pub c: u32,
}

impl RealBundle {
    pub fn gcd_rd(&self) -> u64 {
        (self.r as i64).gcd(&self.d).unsigned_abs()
    }

    /// Whether the coprimality hypothesis `gcd(r, d) = 1` holds.
    pub fn is_coprime(&self) -> bool {
        self.gcd_rd() == 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "d": self.d,
            "classes": self.circle_classes,
            "b": self.b,
            "c": self.c,
            "gcd_rd": self.gcd_rd(),
            "coprime": self.is_coprime(),
        })
    }
}

/// Validates a bundle type over a given curve: the class list must have
/// one bit per real circle and the degree parity must match the odd
/// circle count.
pub fn validate_bundle(
    curve: &RealCurve,
    r: u32,
    d: i64,
    circle_classes: &[u8],
) -> Result<RealBundle, TopologyError> {
    if r == 0 {
        return Err(TopologyError::RankZero);
    }
    if circle_classes.len() != curve.a as usize {
        return Err(TopologyError::ClassLengthMismatch {
            expected: curve.a,
            got: circle_classes.len(),
        });
    }
    let b = circle_classes.iter().filter(|&&w| w != 0).count() as u32;
    if d.rem_euclid(2) != (b as i64).rem_euclid(2) {
        if curve.a == 0 {
            return Err(TopologyError::QuaternionicUnsupported);
        }
        return Err(TopologyError::DegreeParity { d, b });
    }
    Ok(RealBundle {
        r,
        d,
        circle_classes: circle_classes.to_vec(),
        b,
        c: curve.a - b,
    })
}

/// Constructs a bundle type directly from the counts `(b, c)`, choosing
/// the smallest admissible degree of the requested parity coprime to
/// `r` when possible. Convenience for the verification suites.
pub fn bundle_from_counts(
    curve: &RealCurve,
    r: u32,
    b: u32,
    prefer_coprime: bool,
) -> Result<RealBundle, TopologyError> {
    let mut classes = vec![0u8; curve.a as usize];
    for w in classes.iter_mut().take(b as usize) {
        *w = 1;
    }
    let mut d = (b % 2) as i64;
    if prefer_coprime {
        // Scan the parity class for a coprime degree; for r even and b
        // even none exists, so fall back to the minimal parity match.
        let mut candidate = d;
        for _ in 0..=r {
            if (r as i64).gcd(&candidate) == 1 {
                d = candidate;
                break;
            }
            candidate += 2;
        }
    }
    validate_bundle(curve, r, d, &classes)
}

/// The top of the range of degrees where moduli-space cohomology agrees
/// with the gauge classifying space: `g(r − 1) − 2`. Meaningful for
/// `r ≥ 2`, `g ≥ 2`.
pub fn stable_range(r: u32, g: u32) -> i64 {
    g as i64 * (r as i64 - 1) - 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_validation_examples() {
        assert!(validate_curve(2, 3, 0).is_ok()); // 1 ≤ 3 ≤ 3, 3 ≡ 3 (2)
        assert_eq!(
            validate_curve(2, 3, 1),
            Err(TopologyError::CircleCountRange { g: 2, a: 3, eps: 1 })
        );
        assert_eq!(
            validate_curve(2, 2, 0),
            Err(TopologyError::DividingParity { g: 2, a: 2 })
        );
    }

    #[test]
    fn enumeration_matches_constraints() {
        let got = enumerate_curves(2);
        let expect: Vec<(u32, u32, u8)> =
            vec![(2, 0, 1), (2, 1, 1), (2, 2, 1), (2, 1, 0), (2, 3, 0)];
        assert_eq!(
            got.iter().map(|c| (c.g, c.a, c.eps)).collect::<Vec<_>>(),
            expect
        );
        assert_eq!(enumerate_curves(3).len(), 6);
        // Exhaustive agreement with validate_curve over a padded grid.
        for g in 0..=6 {
            let listed = enumerate_curves(g);
            let mut count = 0;
            for eps in [0u8, 1u8] {
                for a in 0..=(g + 2) {
                    if validate_curve(g, a, eps).is_ok() {
                        count += 1;
                        assert!(listed.iter().any(|c| c.a == a && c.eps == eps));
                    }
                }
            }
            assert_eq!(listed.len(), count);
        }
        // Genus 0: the conjugation sphere and the antipodal sphere.
        assert_eq!(
            enumerate_curves(0)
                .iter()
                .map(|c| (c.a, c.eps))
                .collect::<Vec<_>>(),
            vec![(0, 1), (1, 0)]
        );
    }

    #[test]
    fn bundle_validation_examples() {
        let curve = validate_curve(3, 3, 1).unwrap();
        let bundle = validate_bundle(&curve, 2, 1, &[1, 0, 0]).unwrap();
        assert_eq!((bundle.b, bundle.c), (1, 2));
        assert!(bundle.is_coprime());

        assert_eq!(
            validate_bundle(&curve, 2, 1, &[0, 0, 0]),
            Err(TopologyError::DegreeParity { d: 1, b: 0 })
        );

        let pointless = validate_curve(2, 0, 1).unwrap();
        let trivial = validate_bundle(&pointless, 2, 0, &[]).unwrap();
        assert_eq!((trivial.b, trivial.c), (0, 0));
        assert!(!trivial.is_coprime());
        assert_eq!(
            validate_bundle(&pointless, 2, 1, &[]),
            Err(TopologyError::QuaternionicUnsupported)
        );
    }

    #[test]
    fn bundle_counts_invariants() {
        for g in 2..=5u32 {
            for curve in enumerate_curves(g) {
                for b in 0..=curve.a {
                    let bundle = bundle_from_counts(&curve, 2, b, false).unwrap();
                    assert_eq!(bundle.b + bundle.c, curve.a);
                    assert_eq!(bundle.d.rem_euclid(2), (bundle.b % 2) as i64);
                }
            }
        }
    }

    #[test]
    fn even_rank_coprime_forces_odd_b() {
        // gcd(r, d) = 1 with r even makes d odd, so b is odd and a > c.
        for g in 2..=5u32 {
            for curve in enumerate_curves(g) {
                for b in 0..=curve.a {
                    if let Ok(bundle) = bundle_from_counts(&curve, 2, b, true) {
                        if bundle.is_coprime() {
                            assert_eq!(bundle.b % 2, 1);
                            assert!(curve.a > bundle.c);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stable_range_examples() {
        assert_eq!(stable_range(2, 6), 4);
        assert_eq!(stable_range(4, 3), 7);
        assert_eq!(stable_range(2, 2), 0);
    }
}
