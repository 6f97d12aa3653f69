//! Fundamental groups of the fixed-determinant real moduli spaces and
//! component groups of the real gauge groups.
//!
//! Everything in sight is a `Z/2`-extension of `(Z/2)^b × ℤ^{a−b}`, with
//! the quotient acting by `−1` exactly on the free factors. The printed
//! statement writes the extension as a direct product while describing a
//! nontrivial diagonal action; the proof routes through a semidirect
//! product, which is what this module models.

use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("the fundamental group is not computed for rank 2 at genus 2")]
    UnsupportedRank2Genus2,
}

/// A finitely generated abelian group: free rank plus cyclic torsion
/// orders (each at least 2), kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGAbelianGroup {
    pub free_rank: u32,
    pub torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: u32, mut torsion: Vec<u64>) -> Self {
        assert!(torsion.iter().all(|&t| t >= 2), "torsion orders are >= 2");
        torsion.sort_unstable();
        FGAbelianGroup { free_rank, torsion }
    }

    /// `(Z/2)^n`.
    pub fn elementary_two(n: u32) -> Self {
        Self::new(0, vec![2; n as usize])
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of `Z/2` factors.
    pub fn two_torsion_count(&self) -> usize {
        self.torsion.iter().filter(|&&t| t == 2).count()
    }

    pub fn to_json(&self) -> Value {
        json!({ "free_rank": self.free_rank, "torsion": self.torsion })
    }
}

impl std::fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        let twos = self.two_torsion_count();
        if twos == 1 {
            parts.push("Z/2".to_string());
        } else if twos > 1 {
            parts.push(format!("(Z/2)^{twos}"));
        }
        for &t in self.torsion.iter().filter(|&&t| t != 2) {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// How the extension splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    Direct,
    Semidirect,
}

/// A group of the form `Z/2 ⋉ ((Z/2)^{base_torsion} × ℤ^{base_free})`,
/// with the per-factor action recorded: `+1` on every torsion factor,
/// `±1` on the free factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub base_torsion: u32,
    pub base_free: u32,
    /// One sign per base factor, torsion factors first.
    pub action: Vec<i8>,
}

impl GroupDescriptor {
    fn new(base_torsion: u32, base_free: u32, free_action: i8) -> Self {
        let mut action = vec![1i8; base_torsion as usize];
        action.extend(std::iter::repeat_n(free_action, base_free as usize));
        GroupDescriptor {
            base_torsion,
            base_free,
            action,
        }
    }

    pub fn kind(&self) -> ExtensionKind {
        if self.action.iter().all(|&s| s == 1) {
            ExtensionKind::Direct
        } else {
            ExtensionKind::Semidirect
        }
    }

    pub fn base(&self) -> FGAbelianGroup {
        FGAbelianGroup::new(self.base_free, vec![2; self.base_torsion as usize])
    }

    /// Abelianization: the quotient `Z/2` survives, torsion factors
    /// survive, and each free factor becomes `Z/2` when acted on by `−1`
    /// (it stays free otherwise).
    pub fn abelianize(&self) -> FGAbelianGroup {
        let negated = self.action.iter().filter(|&&s| s == -1).count() as u32;
        let free_kept = self.base_free - negated.min(self.base_free);
        FGAbelianGroup::new(free_kept, vec![2; (1 + self.base_torsion + negated) as usize])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": match self.kind() {
                ExtensionKind::Direct => "direct",
                ExtensionKind::Semidirect => "semidirect",
            },
            "base": { "z2": self.base_torsion, "z": self.base_free },
            "action": self.action,
        })
    }
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let base = self.base();
        match self.kind() {
            ExtensionKind::Direct => {
                if base.is_trivial() {
                    write!(f, "Z/2")
                } else {
                    write!(f, "Z/2 x ({base})")
                }
            }
            ExtensionKind::Semidirect => write!(f, "Z/2 ⋉ ({base})"),
        }
    }
}

fn check_gauge_params(r: u32, a: u32, b: u32) -> Result<(), GroupsError> {
    if r < 2 {
        return Err(GroupsError::InvalidParams(
            "rank must be at least 2".into(),
        ));
    }
    if b > a {
        return Err(GroupsError::InvalidParams(format!(
            "odd circle count {b} exceeds circle count {a}"
        )));
    }
    Ok(())
}

/// Component group of the determinant-one real gauge group:
/// `(Z/2)^a` for rank at least 3, `(Z/2)^b × ℤ^{a−b}` for rank 2.
pub fn pi0_sgauge(r: u32, a: u32, b: u32) -> Result<FGAbelianGroup, GroupsError> {
    check_gauge_params(r, a, b)?;
    Ok(if r >= 3 {
        FGAbelianGroup::elementary_two(a)
    } else {
        FGAbelianGroup::new(a - b, vec![2; b as usize])
    })
}

/// Component group of the constant-determinant real gauge group:
/// `Z/2 ⋉ π₀(SG)`, acting by `−1` exactly on the free factors.
pub fn pi0_cgauge(r: u32, a: u32, b: u32) -> Result<GroupDescriptor, GroupsError> {
    check_gauge_params(r, a, b)?;
    Ok(if r >= 3 {
        GroupDescriptor::new(a, 0, 1)
    } else {
        GroupDescriptor::new(b, a - b, -1)
    })
}

/// Fundamental group of the rank-`r` fixed-determinant real moduli
/// space of a genus-`g` curve with `a` real circles, `b` of them odd.
/// Not computed for rank 2 at genus 2.
pub fn pi1_fixed_det_moduli(r: u32, g: u32, a: u32, b: u32) -> Result<GroupDescriptor, GroupsError> {
    check_gauge_params(r, a, b)?;
    if g < 2 {
        return Err(GroupsError::InvalidParams(
            "genus must be at least 2".into(),
        ));
    }
    if r == 2 && g == 2 {
        return Err(GroupsError::UnsupportedRank2Genus2);
    }
    pi0_cgauge(r, a, b)
}

/// First integral homology of the moduli space: `(Z/2)^a`. Asserted
/// equal to the abelianized fundamental group minus the central `Z/2`.
pub fn h1_fixed_det_moduli(r: u32, g: u32, a: u32, b: u32) -> Result<FGAbelianGroup, GroupsError> {
    let pi1 = pi1_fixed_det_moduli(r, g, a, b)?;
    let ab = pi1.abelianize();
    debug_assert_eq!(ab.free_rank, 0);
    debug_assert_eq!(ab.two_torsion_count(), a as usize + 1);
    Ok(FGAbelianGroup::elementary_two(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi0_sgauge_examples() {
        assert_eq!(
            pi0_sgauge(3, 2, 1).unwrap(),
            FGAbelianGroup::elementary_two(2)
        );
        assert_eq!(
            pi0_sgauge(2, 3, 1).unwrap(),
            FGAbelianGroup::new(2, vec![2])
        );
        assert!(pi0_sgauge(2, 0, 0).unwrap().is_trivial());
    }

    #[test]
    fn pi0_cgauge_examples() {
        let d = pi0_cgauge(3, 2, 1).unwrap();
        assert_eq!(d.kind(), ExtensionKind::Direct);
        assert_eq!((d.base_torsion, d.base_free), (2, 0));

        let s = pi0_cgauge(2, 2, 1).unwrap();
        assert_eq!(s.kind(), ExtensionKind::Semidirect);
        assert_eq!((s.base_torsion, s.base_free), (1, 1));
        assert_eq!(s.action, vec![1, -1]);

        let d = pi0_cgauge(2, 1, 1).unwrap();
        assert_eq!(d.kind(), ExtensionKind::Direct);
    }

    #[test]
    fn pi1_examples() {
        let d = pi1_fixed_det_moduli(3, 3, 2, 1).unwrap();
        assert_eq!(d.kind(), ExtensionKind::Direct);
        assert_eq!(d.to_string(), "Z/2 x ((Z/2)^2)");

        let s = pi1_fixed_det_moduli(2, 3, 2, 1).unwrap();
        assert_eq!(s.kind(), ExtensionKind::Semidirect);
        assert_eq!(s.to_string(), "Z/2 ⋉ (Z x Z/2)");

        assert_eq!(
            pi1_fixed_det_moduli(2, 2, 1, 1),
            Err(GroupsError::UnsupportedRank2Genus2)
        );
    }

    #[test]
    fn abelianization_examples() {
        // Z/2 ⋉ (Z/2 × ℤ) with −1 on ℤ abelianizes to (Z/2)³: the
        // infinite dihedral factor contributes (Z/2)².
        let s = pi0_cgauge(2, 2, 1).unwrap();
        assert_eq!(s.abelianize(), FGAbelianGroup::elementary_two(3));
        // Direct Z/2 × (Z/2)².
        let d = pi0_cgauge(3, 2, 1).unwrap();
        assert_eq!(d.abelianize(), FGAbelianGroup::elementary_two(3));
        // Trivial base.
        let t = pi0_cgauge(2, 0, 0).unwrap();
        assert_eq!(t.abelianize(), FGAbelianGroup::elementary_two(1));
    }

    #[test]
    fn h1_is_elementary_of_rank_a() {
        for r in [2u32, 3, 4] {
            for g in 2..=5u32 {
                if r == 2 && g == 2 {
                    continue;
                }
                for a in 0..=4u32 {
                    for b in 0..=a {
                        let h1 = h1_fixed_det_moduli(r, g, a, b).unwrap();
                        assert_eq!(h1, FGAbelianGroup::elementary_two(a));
                        let ab = pi1_fixed_det_moduli(r, g, a, b).unwrap().abelianize();
                        assert_eq!(ab.free_rank, 0);
                        assert_eq!(ab.two_torsion_count(), a as usize + 1);
                    }
                }
            }
        }
    }
}
