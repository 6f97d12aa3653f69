//! The Betti-number separation engine for pairs of bundle types.
//!
//! Two fixed-determinant moduli spaces with isomorphic cohomology must
//! share the genus and circle count; for even rank the leading
//! coefficients of `G_t` then separate the even-circle counts and, for
//! even genus, the two dividing types. The verdict is staged the same
//! way: global invariants first, leading coefficients second, then the
//! full series through the stable range.

use serde_json::{json, Value};

use crate::betti::{bcg_odd, beta_leading, BettiError};
use crate::topology::{stable_range, RealBundle, RealCurve};

use super::{Report, Status, Witness};

/// Verdict of a staged comparison.
#[derive(Clone, Debug)]
pub struct DistinguishOutcome {
    pub distinguished: bool,
    /// 1 = global invariants, 2 = leading coefficients, 3 = full series.
    pub stage: Option<u8>,
    /// First cohomological degree exhibiting the difference, for stages
    /// 2 and 3.
    pub witness_degree: Option<usize>,
    pub detail: String,
    pub left_series: Value,
    pub right_series: Value,
}

impl DistinguishOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "distinguished": self.distinguished,
            "stage": self.stage,
            "witness_degree": self.witness_degree,
            "detail": self.detail,
            "left": self.left_series,
            "right": self.right_series,
        })
    }

    pub fn to_report(&self, params: String) -> Report {
        Report {
            check: "distinguish".into(),
            params,
            status: Status::Pass,
            witness: Some(Witness {
                degree: self.witness_degree,
                left: self.left_series.to_string(),
                right: self.right_series.to_string(),
                note: self.detail.clone(),
            }),
            expected_flagged: false,
        }
    }
}

/// Staged comparison of two types of the same rank. Hypotheses: both
/// bundles valid over their curves, equal rank, coprime degree; the
/// leading-coefficient stage needs even rank.
pub fn distinguish(
    left: (&RealCurve, &RealBundle),
    right: (&RealCurve, &RealBundle),
    trunc: usize,
) -> Result<DistinguishOutcome, BettiError> {
    let (lc, lb) = left;
    let (rc, rb) = right;
    if lb.r != rb.r {
        return Err(BettiError::InvalidParams(
            "the comparison requires equal ranks".into(),
        ));
    }
    let r = lb.r;
    if !lb.is_coprime() || !rb.is_coprime() {
        return Err(BettiError::InvalidParams(
            "the comparison requires gcd(r, d) = 1 on both sides".into(),
        ));
    }

    let bound = stable_range(r, lc.g.min(rc.g)).max(0) as usize;
    let depth = trunc.min(bound.max(2 * r as usize));
    let l_res = bcg_odd(r, lc, lb, depth)?;
    let r_res = bcg_odd(r, rc, rb, depth)?;
    let l_series = l_res.series.as_series(depth);
    let r_series = r_res.series.as_series(depth);
    let left_json = l_series.to_json();
    let right_json = r_series.to_json();

    // Stage 1: manifold dimension (genus) and first homology (circles).
    if lc.g != rc.g {
        return Ok(DistinguishOutcome {
            distinguished: true,
            stage: Some(1),
            witness_degree: None,
            detail: format!("genus differs: {} vs {}", lc.g, rc.g),
            left_series: left_json,
            right_series: right_json,
        });
    }
    if lc.a != rc.a {
        return Ok(DistinguishOutcome {
            distinguished: true,
            stage: Some(1),
            witness_degree: None,
            detail: format!("circle count differs: {} vs {}", lc.a, rc.a),
            left_series: left_json,
            right_series: right_json,
        });
    }

    // Stage 2: leading coefficients of G_t for even rank.
    if r % 2 == 0 {
        let l_beta = beta_leading(r, lc, lb.c)?;
        let r_beta = beta_leading(r, rc, rb.c)?;
        if l_beta != r_beta {
            let degree = if l_beta.0 != r_beta.0 {
                2 * r as usize - 2
            } else {
                2 * r as usize - 1
            };
            return Ok(DistinguishOutcome {
                distinguished: true,
                stage: Some(2),
                witness_degree: Some(degree),
                detail: format!(
                    "leading coefficients differ: {:?} vs {:?} (even circles {} vs {})",
                    l_beta, r_beta, lb.c, rb.c
                ),
                left_series: left_json,
                right_series: right_json,
            });
        }
    }

    // Stage 3: full series through the stable range.
    if let Some(degree) = l_series.first_difference(&r_series, depth) {
        return Ok(DistinguishOutcome {
            distinguished: true,
            stage: Some(3),
            witness_degree: Some(degree),
            detail: format!(
                "series differ at degree {degree}: {} vs {}",
                l_series.coeff(degree),
                r_series.coeff(degree)
            ),
            left_series: left_json,
            right_series: right_json,
        });
    }

    Ok(DistinguishOutcome {
        distinguished: false,
        stage: None,
        witness_degree: None,
        detail: "indistinguishable by these invariants".into(),
        left_series: left_json,
        right_series: right_json,
    })
}
