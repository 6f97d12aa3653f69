//! Homology Hilbert tables by exact linear algebra.
//!
//! The differential preserves the internal degree and the character
//! weight, so each `(q, χ)` block is a finite complex indexed by the
//! column. Blocks are independent; ranks are computed per block with
//! Gaussian elimination over the field.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use crate::series::{Coeff, CoefficientRing, TruncatedSeries};

use super::{Dga, Monomial, OracleError};

/// Dimensions of the homology per `(column, internal degree, weight)`.
#[derive(Clone, Debug)]
pub struct HilbertTable {
    dims: BTreeMap<(i32, u32, u8), usize>,
    q_cap: u32,
    reliable_total: usize,
}

impl HilbertTable {
    pub fn get(&self, column: i32, q: u32, chi: u8) -> usize {
        self.dims.get(&(column, q, chi)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i32, u32, u8), &usize)> {
        self.dims.iter()
    }

    pub fn q_cap(&self) -> u32 {
        self.q_cap
    }

    /// Largest total degree `column + q` for which every contributing
    /// block fits under the internal-degree cap.
    pub fn reliable_total_degree(&self) -> usize {
        self.reliable_total
    }

    /// Collapses to a total-degree Poincaré series over `ℚ`, optionally
    /// keeping only the weight-0 (χ-invariant) classes.
    pub fn total_series(&self, project_chi: bool) -> TruncatedSeries {
        let ring = CoefficientRing::Rationals;
        let trunc = self.reliable_total;
        let mut coeffs = vec![0i64; trunc + 1];
        for (&(s, q, chi), &dim) in &self.dims {
            if project_chi && chi != 0 {
                continue;
            }
            let total = s + q as i32;
            if total >= 0 && (total as usize) <= trunc {
                coeffs[total as usize] += dim as i64;
            }
        }
        TruncatedSeries::from_i64(ring, &coeffs, trunc)
    }
}

/// Row-echelon rank over the field.
fn matrix_rank(field: CoefficientRing, mut rows: Vec<Vec<Coeff>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row >= rows.len() {
            break;
        }
        let pivot = (row..rows.len()).find(|&i| !field.is_zero(&rows[i][col]));
        let Some(p) = pivot else { continue };
        rows.swap(row, p);
        let inv = field.inv(&rows[row][col]).expect("nonzero over a field");
        let pivot_row = rows[row][col..].to_vec();
        for (i, other) in rows.iter_mut().enumerate() {
            if i != row && !field.is_zero(&other[col]) {
                let factor = field.mul(&other[col], &inv);
                for (offset, pv) in pivot_row.iter().enumerate() {
                    if field.is_zero(pv) {
                        continue;
                    }
                    let sub = field.mul(&factor, pv);
                    other[col + offset] = field.sub(&other[col + offset], &sub);
                }
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Computes the homology table of a complex for internal degrees up to
/// `q_cap`, with the basis enumeration capped at `basis_cap` monomials.
/// `δ² = 0` is verified on the whole enumerated basis first.
pub fn homology_hilbert(
    dga: &Dga,
    q_cap: u32,
    basis_cap: usize,
) -> Result<HilbertTable, OracleError> {
    let basis = dga.enumerate_basis(q_cap, basis_cap)?;
    dga.check_square_zero(&basis)?;

    // Bucket by (q, chi), then by column.
    let mut blocks: HashMap<(u32, u8), BTreeMap<i32, Vec<Monomial>>> = HashMap::new();
    for m in basis {
        let q = dga.internal_degree(&m);
        let chi = dga.chi_weight(&m);
        let s = dga.column(&m);
        blocks
            .entry((q, chi))
            .or_default()
            .entry(s)
            .or_default()
            .push(m);
    }

    let mut dims = BTreeMap::new();
    for ((q, chi), columns) in &blocks {
        // Ranks of δ: column s → column s + 1.
        let mut ranks: HashMap<i32, usize> = HashMap::new();
        for (&s, monos) in columns {
            let Some(target) = columns.get(&(s + 1)) else {
                continue;
            };
            let index: HashMap<&Monomial, usize> =
                target.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::with_capacity(monos.len());
            for m in monos {
                let image = dga.differential(m);
                if image.is_empty() {
                    continue;
                }
                let mut row = vec![dga.field.zero(); target.len()];
                for (c, im) in image {
                    let j = *index
                        .get(&im)
                        .expect("differential image is inside the enumerated basis");
                    row[j] = dga.field.add(&row[j], &c);
                }
                rows.push(row);
            }
            if !rows.is_empty() {
                ranks.insert(s, matrix_rank(dga.field, rows));
            }
        }
        for (&s, monos) in columns {
            let out_rank = ranks.get(&s).copied().unwrap_or(0);
            let in_rank = ranks.get(&(s - 1)).copied().unwrap_or(0);
            let h = monos.len() - out_rank - in_rank;
            if h > 0 {
                dims.insert((s, *q, *chi), h);
            }
        }
    }

    // Reliability bound for total-degree collapse: a monomial in column
    // −m uses at least m column generators, each of internal degree at
    // least q_min, so q ≤ total·q_min/(q_min − 1).
    let q_min = dga
        .generators()
        .iter()
        .filter(|g| g.column < 0)
        .map(|g| g.internal_degree)
        .min();
    let reliable_total = match q_min {
        None => q_cap as usize,
        Some(q_min) => {
            debug_assert!(q_min >= 2, "column generators have degree >= 2");
            (q_cap as usize) * (q_min as usize - 1) / q_min as usize
        }
    };

    Ok(HilbertTable {
        dims,
        q_cap,
        reliable_total,
    })
}

/// Outcome of a table-versus-closed-form comparison.
#[derive(Clone, Debug)]
pub struct HilbertComparison {
    /// Degrees `0..=compared_to` were checked.
    pub compared_to: usize,
    /// First disagreeing degree with the two coefficients, if any.
    pub first_mismatch: Option<(usize, BigRational, BigRational)>,
}

impl HilbertComparison {
    pub fn matches(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl std::fmt::Display for HilbertComparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.first_mismatch {
            None => write!(f, "match <= {}", self.compared_to),
            Some((d, got, want)) => {
                write!(f, "mismatch at degree {d}: oracle {got}, closed form {want}")
            }
        }
    }
}

/// Diffs the total-degree collapse of a table against a closed-form
/// series, optionally projecting to the χ-invariant part first.
pub fn compare_hilbert(
    table: &HilbertTable,
    closed_form: &TruncatedSeries,
    project_chi: bool,
) -> HilbertComparison {
    let collapsed = table.total_series(project_chi);
    let compared_to = collapsed
        .truncation()
        .min(closed_form.truncation());
    let as_rat = |c: Coeff| -> BigRational {
        match c {
            Coeff::Rat(r) => r,
            Coeff::Mod(m) => BigRational::from_integer((m as i64).into()),
            Coeff::Char(a, _) => a,
        }
    };
    for d in 0..=compared_to {
        let got = as_rat(collapsed.coeff(d));
        let want = as_rat(closed_form.coeff(d));
        if got != want {
            return HilbertComparison {
                compared_to,
                first_mismatch: Some((d, got, want)),
            };
        }
    }
    HilbertComparison {
        compared_to,
        first_mismatch: None,
    }
}
