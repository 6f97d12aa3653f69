//! Brute-force homology oracle for bigraded differential
//! graded-commutative algebras.
//!
//! A complex is presented by free generators with a column (0 or −1), an
//! internal degree, a flavor (exterior, polynomial, divided power), an
//! optional power cap, a `Z/2` character weight, and a differential given
//! as an integer combination of monomials in the other generators. The
//! differential raises the column by one and preserves the internal
//! degree and the character weight; `δ∘δ = 0` is checked on every basis
//! monomial, never assumed.
//!
//! Monomial bases are enumerated per internal degree, boundary matrices
//! are built per `(degree, weight)` block, and homology dimensions come
//! from exact ranks over the chosen field. Koszul signs are computed
//! from the total degree (column + internal degree); divided powers
//! differentiate by `δ(z^[d]) = δ(z)·z^[d−1]`, which is what separates
//! them from polynomial generators in positive characteristic.

mod build;
mod homology;

pub use build::{standard_complex, ComplexId, ComplexParams};
pub use homology::{compare_hilbert, homology_hilbert, HilbertComparison, HilbertTable};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::series::{Coeff, CoefficientRing};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("the oracle works over a field; the character ring is not one")]
    NotAField,
    #[error("monomial basis exceeds the cap of {cap} (counted {counted} so far)")]
    BasisCapExceeded { counted: usize, cap: usize },
    #[error("differential does not square to zero on {monomial}")]
    NotSquareZero { monomial: String },
    #[error("no generator named {0}")]
    UnknownGenerator(String),
    #[error("differential term index {index} out of range for {name}")]
    TermIndexOutOfRange { name: String, index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Exterior,
    Polynomial,
    DividedPower,
}

impl Flavor {
    fn as_str(self) -> &'static str {
        match self {
            Flavor::Exterior => "exterior",
            Flavor::Polynomial => "polynomial",
            Flavor::DividedPower => "divided_power",
        }
    }
}

/// A free generator of the bigraded algebra.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    /// Column grading; 0 for base classes, −1 for relation killers.
    pub column: i32,
    /// Internal degree, strictly positive.
    pub internal_degree: u32,
    pub flavor: Flavor,
    /// Maximum exponent; exterior generators always cap at 1. A cap of
    /// 1 on an even-degree polynomial generator imposes a square-zero
    /// truncation.
    pub cap: Option<u32>,
    /// Character weight under the disconnecting involution.
    pub chi_weight: u8,
    /// Integer combination of monomials one column up, same degree.
    pub differential: Vec<(i64, Monomial)>,
}

impl Generator {
    fn total_parity(&self) -> u8 {
        (((self.column + self.internal_degree as i32) % 2) + 2) as u8 % 2
    }
}

/// An exponent vector over the generator list of its complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, u32)]) -> Self {
        let mut m = Self::unit(n);
        for &(i, e) in pairs {
            m.exps[i] += e;
        }
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
}

/// A presented differential graded-commutative algebra over a field.
#[derive(Clone, Debug)]
pub struct Dga {
    pub field: CoefficientRing,
    gens: Vec<Generator>,
    /// Cached parity per generator.
    parity: Vec<u8>,
}

impl Dga {
    pub fn new(field: CoefficientRing, gens: Vec<Generator>) -> Result<Self, OracleError> {
        if field == CoefficientRing::CharacterRing {
            return Err(OracleError::NotAField);
        }
        for g in &gens {
            if g.internal_degree == 0 {
                return Err(OracleError::InvalidParams(format!(
                    "generator {} has internal degree 0",
                    g.name
                )));
            }
            if g.flavor == Flavor::Exterior && g.cap != Some(1) {
                return Err(OracleError::InvalidParams(format!(
                    "exterior generator {} must cap at 1",
                    g.name
                )));
            }
            // Odd total degree squares to zero in any characteristic we
            // care about; insist the presentation says so.
            if (g.column + g.internal_degree as i32).rem_euclid(2) == 1 && g.cap != Some(1) {
                return Err(OracleError::InvalidParams(format!(
                    "odd-degree generator {} must cap at 1",
                    g.name
                )));
            }
        }
        let parity = gens.iter().map(Generator::total_parity).collect();
        Ok(Dga {
            field,
            gens,
            parity,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn column(&self, m: &Monomial) -> i32 {
        m.exps
            .iter()
            .zip(&self.gens)
            .map(|(&e, g)| e as i32 * g.column)
            .sum()
    }

    pub fn internal_degree(&self, m: &Monomial) -> u32 {
        m.exps
            .iter()
            .zip(&self.gens)
            .map(|(&e, g)| e * g.internal_degree)
            .sum()
    }

    pub fn chi_weight(&self, m: &Monomial) -> u8 {
        (m.exps
            .iter()
            .zip(&self.gens)
            .map(|(&e, g)| e * g.chi_weight as u32)
            .sum::<u32>()
            % 2) as u8
    }

    pub fn render(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.gens[i].name.clone()),
                _ => parts.push(format!("{}^{}", self.gens[i].name, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    /// Graded-commutative product of two monomials presented in order
    /// `x · y`. Returns the interleaving sign times any divided-power
    /// binomials, or `None` when a cap is exceeded (the product is 0).
    pub fn mono_mul(&self, x: &Monomial, y: &Monomial) -> Option<(BigInt, Monomial)> {
        // Sign: each odd factor of x at slot i passes the odd factors of
        // y sitting at strictly earlier slots.
        let mut inversions = 0u32;
        let mut y_odds_before = 0u32;
        for i in 0..self.gens.len() {
            if self.parity[i] == 1 {
                if x.exps[i] > 0 {
                    inversions += y_odds_before;
                }
                if y.exps[i] > 0 {
                    y_odds_before += 1;
                }
            }
        }
        let mut coeff = if inversions.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let mut exps = Vec::with_capacity(self.gens.len());
        for i in 0..self.gens.len() {
            let e = x.exps[i] + y.exps[i];
            if let Some(cap) = self.gens[i].cap {
                if e > cap {
                    return None;
                }
            }
            if self.gens[i].flavor == Flavor::DividedPower && x.exps[i] > 0 && y.exps[i] > 0 {
                coeff *= binomial(x.exps[i] + y.exps[i], x.exps[i]);
            }
            exps.push(e);
        }
        Some((coeff, Monomial { exps }))
    }

    /// Differential of a basis monomial as a collapsed field combination.
    pub fn differential(&self, m: &Monomial) -> Vec<(Coeff, Monomial)> {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let mut odd_prefix = 0u32; // odd-degree factors strictly before the slot
        for j in 0..self.gens.len() {
            let e = m.exps[j];
            if e == 0 {
                continue;
            }
            let g = &self.gens[j];
            if !g.differential.is_empty() {
                // Leibniz: for an odd slot the sign is the prefix
                // parity; for an even slot the δ-term is odd and the two
                // prefix signs cancel.
                let sign_neg = self.parity[j] == 1 && odd_prefix % 2 == 1;
                let slot_coeff: BigInt = match g.flavor {
                    Flavor::Exterior | Flavor::DividedPower => BigInt::one(),
                    Flavor::Polynomial => BigInt::from(e),
                };
                let mut rest = m.clone();
                rest.exps[j] -= 1;
                for (c, dmono) in &g.differential {
                    if let Some((merge_coeff, merged)) = self.mono_mul(dmono, &rest) {
                        let mut total = merge_coeff * slot_coeff.clone() * BigInt::from(*c);
                        if sign_neg {
                            total = -total;
                        }
                        let entry = acc.entry(merged).or_insert_with(BigInt::zero);
                        *entry += total;
                    }
                }
            }
            if self.parity[j] == 1 {
                odd_prefix += 1; // odd generators carry exponent ≤ 1
            }
        }
        acc.into_iter()
            .filter_map(|(mono, c)| {
                let scalar = self.field.from_bigint(&c);
                if self.field.is_zero(&scalar) {
                    None
                } else {
                    Some((scalar, mono))
                }
            })
            .collect()
    }

    /// All monomials of internal degree at most `q_cap`, lexicographic
    /// in the exponent vectors, guarded by a total-count cap.
    pub fn enumerate_basis(&self, q_cap: u32, count_cap: usize) -> Result<Vec<Monomial>, OracleError> {
        let mut out = Vec::new();
        let mut current = Monomial::unit(self.gens.len());
        self.enumerate_rec(0, q_cap, count_cap, &mut current, &mut out)?;
        Ok(out)
    }

    fn enumerate_rec(
        &self,
        slot: usize,
        budget: u32,
        count_cap: usize,
        current: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) -> Result<(), OracleError> {
        if slot == self.gens.len() {
            if out.len() >= count_cap {
                return Err(OracleError::BasisCapExceeded {
                    counted: out.len(),
                    cap: count_cap,
                });
            }
            out.push(current.clone());
            return Ok(());
        }
        let g = &self.gens[slot];
        let max_by_budget = budget / g.internal_degree;
        let max_e = match g.cap {
            Some(cap) => cap.min(max_by_budget),
            None => max_by_budget,
        };
        for e in 0..=max_e {
            current.exps[slot] = e;
            self.enumerate_rec(slot + 1, budget - e * g.internal_degree, count_cap, current, out)?;
        }
        current.exps[slot] = 0;
        Ok(())
    }

    /// Monomial counts per `(column, internal degree, weight)` block.
    pub fn basis_census(
        &self,
        q_cap: u32,
        count_cap: usize,
    ) -> Result<BTreeMap<(i32, u32, u8), usize>, OracleError> {
        let mut census = BTreeMap::new();
        for m in self.enumerate_basis(q_cap, count_cap)? {
            let key = (self.column(&m), self.internal_degree(&m), self.chi_weight(&m));
            *census.entry(key).or_insert(0) += 1;
        }
        Ok(census)
    }

    /// Verifies `δ∘δ = 0` on every monomial of the list.
    pub fn check_square_zero(&self, basis: &[Monomial]) -> Result<(), OracleError> {
        for m in basis {
            let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
            for (c1, m1) in self.differential(m) {
                for (c2, m2) in self.differential(&m1) {
                    let term = self.field.mul(&c1, &c2);
                    let entry = acc.entry(m2).or_insert_with(|| self.field.zero());
                    *entry = self.field.add(entry, &term);
                }
            }
            if acc.values().any(|c| !self.field.is_zero(c)) {
                return Err(OracleError::NotSquareZero {
                    monomial: self.render(m),
                });
            }
        }
        Ok(())
    }

    /// Drops one term of a generator's differential. The negative
    /// control of the verification suite uses this to confirm that a
    /// corrupted complex is loudly detected.
    pub fn drop_differential_term(&mut self, name: &str, index: usize) -> Result<(), OracleError> {
        let idx = self
            .generator_index(name)
            .ok_or_else(|| OracleError::UnknownGenerator(name.to_string()))?;
        if index >= self.gens[idx].differential.len() {
            return Err(OracleError::TermIndexOutOfRange {
                name: name.to_string(),
                index,
            });
        }
        self.gens[idx].differential.remove(index);
        Ok(())
    }

    /// Auditable JSON manifest of the presentation.
    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .gens
            .iter()
            .map(|g| {
                let diff: Vec<Value> = g
                    .differential
                    .iter()
                    .map(|(c, m)| json!([c, self.render(m)]))
                    .collect();
                json!({
                    "name": g.name,
                    "column": g.column,
                    "degree": g.internal_degree,
                    "flavor": g.flavor.as_str(),
                    "cap": g.cap,
                    "chi": g.chi_weight,
                    "differential": diff,
                })
            })
            .collect();
        json!({
            "field": crate::series::ring_json(self.field),
            "generators": gens,
        })
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    debug_assert!((&num % &den).is_zero() || !num.is_negative());
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exterior(name: &str, q: u32) -> Generator {
        Generator {
            name: name.into(),
            column: 0,
            internal_degree: q,
            flavor: Flavor::Exterior,
            cap: Some(1),
            chi_weight: 0,
            differential: Vec::new(),
        }
    }

    #[test]
    fn exterior_sign_rule() {
        // Two odd generators anticommute: u·v = −(v·u) read through the
        // canonical order.
        let dga = Dga::new(
            CoefficientRing::Rationals,
            vec![exterior("u", 1), exterior("v", 1)],
        )
        .unwrap();
        let u = Monomial::from_pairs(2, &[(0, 1)]);
        let v = Monomial::from_pairs(2, &[(1, 1)]);
        let (c_uv, uv) = dga.mono_mul(&u, &v).unwrap();
        let (c_vu, vu) = dga.mono_mul(&v, &u).unwrap();
        assert_eq!(uv, vu);
        assert_eq!(c_uv, BigInt::from(1));
        assert_eq!(c_vu, BigInt::from(-1));
        assert!(dga.mono_mul(&u, &u).is_none());
    }

    #[test]
    fn divided_power_merge_binomials() {
        let z = Generator {
            name: "z".into(),
            column: -1,
            internal_degree: 3,
            flavor: Flavor::DividedPower,
            cap: None,
            chi_weight: 0,
            differential: Vec::new(),
        };
        let dga = Dga::new(CoefficientRing::Rationals, vec![z]).unwrap();
        let z1 = Monomial::from_pairs(1, &[(0, 1)]);
        let z2 = Monomial::from_pairs(1, &[(0, 2)]);
        let (c, m) = dga.mono_mul(&z1, &z2).unwrap();
        assert_eq!(c, BigInt::from(3)); // z^[1]·z^[2] = 3 z^[3]
        assert_eq!(m, Monomial::from_pairs(1, &[(0, 3)]));
    }

    #[test]
    fn homology_is_independent_of_generator_order() {
        // The same two-step pair presented in both generator orders.
        let make = |swapped: bool| {
            let ebar = exterior("ebar", 1);
            let e = Generator {
                name: "e".into(),
                column: 0,
                internal_degree: 2,
                flavor: Flavor::Polynomial,
                cap: Some(1),
                chi_weight: 0,
                differential: Vec::new(),
            };
            let gens = if swapped {
                vec![e.clone(), ebar.clone()]
            } else {
                vec![ebar, e]
            };
            let dga = Dga::new(CoefficientRing::Rationals, gens).unwrap();
            let (i_ebar, i_e) = (
                dga.generator_index("ebar").unwrap(),
                dga.generator_index("e").unwrap(),
            );
            let z = Generator {
                name: "z".into(),
                column: -1,
                internal_degree: 3,
                flavor: Flavor::DividedPower,
                cap: None,
                chi_weight: 0,
                differential: vec![(1, Monomial::from_pairs(3, &[(i_ebar, 1), (i_e, 1)]))],
            };
            let mut gens = dga.gens.clone();
            gens.push(z);
            Dga::new(CoefficientRing::Rationals, gens).unwrap()
        };
        let a = crate::dga::homology_hilbert(&make(false), 12, 10_000).unwrap();
        let b = crate::dga::homology_hilbert(&make(true), 12, 10_000).unwrap();
        for ((s, q, chi), dim) in a.entries() {
            assert_eq!(b.get(s.to_owned(), *q, *chi), *dim);
        }
        for ((s, q, chi), dim) in b.entries() {
            assert_eq!(a.get(s.to_owned(), *q, *chi), *dim);
        }
    }

    #[test]
    fn census_counts_blocks() {
        let dga = Dga::new(
            CoefficientRing::Rationals,
            vec![exterior("u", 1), exterior("v", 2)],
        )
        .unwrap();
        let census = dga.basis_census(3, 100).unwrap();
        assert_eq!(census.get(&(0, 0, 0)), Some(&1));
        assert_eq!(census.get(&(0, 3, 0)), Some(&1)); // u·v
        assert_eq!(census.values().sum::<usize>(), 4);
    }

    #[test]
    fn basis_enumeration_examples() {
        // A single divided power of degree 3 to q ≤ 9: 1, z, z^[2], z^[3].
        let z = Generator {
            name: "z".into(),
            column: -1,
            internal_degree: 3,
            flavor: Flavor::DividedPower,
            cap: None,
            chi_weight: 0,
            differential: Vec::new(),
        };
        let dga = Dga::new(CoefficientRing::Rationals, vec![z]).unwrap();
        assert_eq!(dga.enumerate_basis(9, 1000).unwrap().len(), 4);
        // The empty generator list has exactly the unit.
        let empty = Dga::new(CoefficientRing::Rationals, vec![]).unwrap();
        assert_eq!(empty.enumerate_basis(5, 10).unwrap(), vec![Monomial::unit(0)]);
    }
}
