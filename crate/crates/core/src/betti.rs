//! Closed-form Poincaré series for the real gauge classifying spaces and
//! the fixed-determinant moduli spaces, evaluated exactly.
//!
//! Mod-2 series are products of cyclotomic-style factors; odd- and
//! zero-characteristic series split by rank parity, and for even rank
//! factor as `F_t · G_t` with `G_t` selected by the bundle data
//! `(a, c, eps)`. Every result carries the case label that was used and
//! any anomalies met along the way (negative formal exponents, division
//! remainders, negative coefficients).
//!
//! Two printed variants of the even-rank `a = c` case formulas circulate;
//! the ones implemented here are the ones consistent with the character
//! ring assembly `G_t = ½(P^{χ=1} + P^{χ=−1})·(…)` and with the
//! brute-force homology of the defining complexes (see `dga`); the
//! leading-coefficient table in [`beta_leading`] is adjusted to match.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};
use thiserror::Error;

use crate::series::{
    char_invariant_part, series_from_product, Coeff, CoefficientRing, PoincarePolynomial,
    SeriesError, TruncatedSeries,
};
use crate::topology::{RealBundle, RealCurve};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BettiError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Either an exact polynomial (closed manifolds) or a truncated series
/// (classifying spaces).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesOrPoly {
    Series(TruncatedSeries),
    Poly(PoincarePolynomial),
}

impl SeriesOrPoly {
    pub fn coeff(&self, k: usize) -> Coeff {
        match self {
            SeriesOrPoly::Series(s) => s.coeff(k),
            SeriesOrPoly::Poly(p) => p.coeff(k),
        }
    }

    pub fn coeff_i64(&self, k: usize) -> Option<i64> {
        match self.coeff(k) {
            Coeff::Rat(r) if r.is_integer() => i64::try_from(r.to_integer()).ok(),
            Coeff::Mod(m) => Some(m as i64),
            _ => None,
        }
    }

    pub fn as_series(&self, trunc: usize) -> TruncatedSeries {
        match self {
            SeriesOrPoly::Series(s) => s.truncate_to(trunc),
            SeriesOrPoly::Poly(p) => p.to_series(trunc),
        }
    }

    pub fn as_poly(&self) -> Option<&PoincarePolynomial> {
        match self {
            SeriesOrPoly::Poly(p) => Some(p),
            SeriesOrPoly::Series(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SeriesOrPoly::Series(s) => s.to_json(),
            SeriesOrPoly::Poly(p) => p.to_json(),
        }
    }
}

impl std::fmt::Display for SeriesOrPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesOrPoly::Series(s) => s.fmt(f),
            SeriesOrPoly::Poly(p) => p.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BettiWarning {
    /// A formal exponent went negative; the result is an honest series
    /// but not a polynomial.
    NegativeExponent { exponent: i64 },
    /// A coefficient of the result is negative: the expression cannot be
    /// a Poincaré series in that range.
    NegativeCoefficient { degree: usize },
    /// A coefficient of the result is not an integer: it cannot be a
    /// dimension count.
    NonIntegerCoefficient { degree: usize },
    /// A division expected to be exact left a remainder.
    NonzeroRemainder { context: String },
    /// The printed exponent variant fails exact division at these
    /// parameters; the reconciled exponent was used.
    PrintedVariantRemainder,
    /// The series tail past the expected polynomial degree does not
    /// vanish within the truncation window.
    TailNotVanishing { expected_degree: usize },
}

impl std::fmt::Display for BettiWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BettiWarning::NegativeExponent { exponent } => {
                write!(f, "negative formal exponent {exponent}; evaluated as a series")
            }
            BettiWarning::NegativeCoefficient { degree } => {
                write!(f, "negative coefficient at degree {degree}")
            }
            BettiWarning::NonIntegerCoefficient { degree } => {
                write!(f, "non-integer coefficient at degree {degree}")
            }
            BettiWarning::NonzeroRemainder { context } => {
                write!(f, "nonzero division remainder: {context}")
            }
            BettiWarning::PrintedVariantRemainder => write!(
                f,
                "printed exponent variant fails exact division; reconciled exponent used"
            ),
            BettiWarning::TailNotVanishing { expected_degree } => {
                write!(f, "tail beyond expected degree {expected_degree} does not vanish")
            }
        }
    }
}

/// A computed Betti series plus its provenance.
#[derive(Clone, Debug)]
pub struct BettiResult {
    pub series: SeriesOrPoly,
    pub case_label: String,
    pub factors: Vec<(String, SeriesOrPoly)>,
    pub warnings: Vec<BettiWarning>,
}

impl BettiResult {
    pub fn to_json(&self) -> Value {
        let factors: serde_json::Map<String, Value> = self
            .factors
            .iter()
            .map(|(name, s)| (name.clone(), s.to_json()))
            .collect();
        json!({
            "series": self.series.to_json(),
            "case": self.case_label,
            "factors": factors,
            "warnings": self.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Enforces the result invariant: without warnings, every
    /// coefficient is a non-negative integer (a dimension).
    fn scan_negative(&mut self) {
        let coeffs: Vec<Coeff> = match &self.series {
            SeriesOrPoly::Series(s) => s.coeffs().to_vec(),
            SeriesOrPoly::Poly(p) => p.coeffs().to_vec(),
        };
        let mut seen_negative = false;
        let mut seen_fraction = false;
        for (k, c) in coeffs.iter().enumerate() {
            if let Coeff::Rat(r) = c {
                if !seen_negative && r.is_negative() {
                    self.warnings.push(BettiWarning::NegativeCoefficient { degree: k });
                    seen_negative = true;
                }
                if !seen_fraction && !r.is_integer() {
                    self.warnings.push(BettiWarning::NonIntegerCoefficient { degree: k });
                    seen_fraction = true;
                }
            }
        }
    }
}

const Q: CoefficientRing = CoefficientRing::Rationals;

fn check(cond: bool, msg: &str) -> Result<(), BettiError> {
    if cond {
        Ok(())
    } else {
        Err(BettiError::InvalidParams(msg.to_string()))
    }
}

fn finish(mut result: BettiResult) -> BettiResult {
    result.scan_negative();
    result
}

/// The shared product `∏_{k=2}^r (1+t^{k−1})^a (1+t^k)^a
/// (1+t^{2k−1})^{g+1−a} / ((1−t^{2k})(1−t^{2k−2}))` behind all three
/// mod-2 classifying-space series.
fn gauge_product_factors(r: u32, g: u32, a: u32) -> Vec<(i8, u32, i64)> {
    let mut f = Vec::new();
    for k in 2..=r {
        f.push((1, k - 1, a as i64));
        f.push((1, k, a as i64));
        f.push((1, 2 * k - 1, (g + 1) as i64 - a as i64));
        f.push((-1, 2 * k, -1));
        f.push((-1, 2 * k - 2, -1));
    }
    f
}

fn validate_mod2_params(r: u32, g: u32, a: u32) -> Result<(), BettiError> {
    check(r >= 1, "rank must be at least 1")?;
    check(g >= 2, "genus must be at least 2")?;
    check(a <= g + 1, "circle count must satisfy a <= g + 1")
}

/// Mod-2 Poincaré series of the full real gauge classifying space:
/// `(1+t)^g/(1−t)` times the gauge product.
pub fn bg_z2(r: u32, g: u32, a: u32, trunc: usize) -> Result<BettiResult, BettiError> {
    validate_mod2_params(r, g, a)?;
    let mut factors = vec![(1i8, 1u32, g as i64), (-1i8, 1u32, -1i64)];
    factors.extend(gauge_product_factors(r, g, a));
    let series = series_from_product(&factors, Q, trunc)?;
    Ok(finish(BettiResult {
        series: SeriesOrPoly::Series(series),
        case_label: "full gauge group, mod 2".into(),
        factors: Vec::new(),
        warnings: Vec::new(),
    }))
}

/// Mod-2 Poincaré series of the determinant-one gauge classifying space:
/// the bare gauge product.
pub fn bsg_z2(r: u32, g: u32, a: u32, trunc: usize) -> Result<BettiResult, BettiError> {
    validate_mod2_params(r, g, a)?;
    let series = series_from_product(&gauge_product_factors(r, g, a), Q, trunc)?;
    Ok(finish(BettiResult {
        series: SeriesOrPoly::Series(series),
        case_label: "determinant-one gauge group, mod 2".into(),
        factors: Vec::new(),
        warnings: Vec::new(),
    }))
}

/// Mod-2 Poincaré series of the constant-determinant gauge classifying
/// space: `1/(1−t)` times the gauge product.
pub fn bcg_z2(r: u32, g: u32, a: u32, trunc: usize) -> Result<BettiResult, BettiError> {
    validate_mod2_params(r, g, a)?;
    let mut factors = vec![(-1i8, 1u32, -1i64)];
    factors.extend(gauge_product_factors(r, g, a));
    let series = series_from_product(&factors, Q, trunc)?;
    Ok(finish(BettiResult {
        series: SeriesOrPoly::Series(series),
        case_label: "constant-determinant gauge group, mod 2".into(),
        factors: Vec::new(),
        warnings: Vec::new(),
    }))
}

/// `(1 + χ·sign·t^k)` as a character-ring series.
fn chi_factor(sign: i8, k: u32, trunc: usize) -> TruncatedSeries {
    let ring = CoefficientRing::CharacterRing;
    let chi = ring.chi().expect("character ring");
    let unit = if sign >= 0 { chi.clone() } else { ring.neg(&chi) };
    TruncatedSeries::one(ring, trunc)
        .add(&TruncatedSeries::monomial(ring, unit, k as usize, trunc))
        .expect("same ring")
}

/// `(1 + t^k)^e` over `ℚ`, with geometric expansion for negative `e`.
fn plus_tk_pow(k: u32, e: i64, trunc: usize) -> TruncatedSeries {
    series_from_product(&[(1, k, e)], Q, trunc).expect("unit constant term")
}

/// The `G_t` factor of the even-rank odd-characteristic series, together
/// with its case label. `r` is even; `(a, b, c, eps)` describe the
/// bundle over the curve.
fn even_rank_g_factor(
    r: u32,
    g: u32,
    a: u32,
    c: u32,
    eps: u8,
    trunc: usize,
) -> Result<(TruncatedSeries, String, Vec<BettiWarning>), BettiError> {
    let ring = CoefficientRing::CharacterRing;
    let mut warnings = Vec::new();
    let rm1 = r - 1;
    let two_rm1 = 2 * r - 1;

    // Labelled by the case split on (a, c, eps).
    let (inv_part, label, outer_exp) = if a == 0 {
        // (1 + t^{2r−1})^g / (1 − t^{2r})
        let s = series_from_product(&[(1, two_rm1, g as i64), (-1, 2 * r, -1)], Q, trunc)?;
        return Ok((s, "a = 0".into(), warnings));
    } else if eps == 1 && a > c {
        // ½[(1+t^{r−1})^c(1+t^r)^c + (−)] · (1+t^{2r−1})^{g−c−1}
        let h = chi_factor(1, rm1, trunc)
            .pow(c as u64)
            .mul(&chi_factor(1, r, trunc).pow(c as u64))?;
        (
            char_invariant_part(&h)?,
            "a > c >= 0 connected".to_string(),
            g as i64 - c as i64 - 1,
        )
    } else if eps == 1 {
        // a = c > 0, connected:
        // ½-average of (1+χt^{r−1})^c(1+χt^r)^{c−1}/(1−χt^r), then
        // (1+t^{2r−1})^{g−c}.
        let geom = TruncatedSeries::one(ring, trunc)
            .sub(&TruncatedSeries::monomial(
                ring,
                ring.chi().expect("character ring"),
                r as usize,
                trunc,
            ))?
            .inverse()?;
        let h = chi_factor(1, rm1, trunc)
            .pow(c as u64)
            .mul(&chi_factor(1, r, trunc).pow(c as u64 - 1))?
            .mul(&geom)?;
        (
            char_invariant_part(&h)?,
            "a = c > 0 connected".to_string(),
            g as i64 - c as i64,
        )
    } else if c == 0 {
        // (1 + t^{2r−1})^g / (1 − t^{2r−2})
        let s = series_from_product(&[(1, two_rm1, g as i64), (-1, 2 * r - 2, -1)], Q, trunc)?;
        return Ok((s, "a > c = 0 disconnected".into(), warnings));
    } else if a > c {
        // Disconnected with a > c > 0. The χ-assembly handles the odd
        // and even c bullets uniformly: the tower term carries weight
        // χ^c and survives projection only for even c.
        let tower = {
            // t^{2r−2}(1+t) · (χ(t^{r−1} + t^r))^c / (1 − t^{2r−2})
            let chi = ring.chi().expect("character ring");
            let step = TruncatedSeries::monomial(ring, chi.clone(), rm1 as usize, trunc).add(
                &TruncatedSeries::monomial(ring, chi, r as usize, trunc),
            )?;
            let front = TruncatedSeries::monomial(ring, ring.one(), (2 * r - 2) as usize, trunc)
                .add(&TruncatedSeries::monomial(
                    ring,
                    ring.one(),
                    (2 * r - 1) as usize,
                    trunc,
                ))?;
            let geo = TruncatedSeries::one(ring, trunc)
                .sub(&TruncatedSeries::monomial(
                    ring,
                    ring.one(),
                    (2 * r - 2) as usize,
                    trunc,
                ))?
                .inverse()?;
            front.mul(&step.pow(c as u64))?.mul(&geo)?
        };
        let avg = chi_factor(1, rm1, trunc)
            .pow(c as u64)
            .mul(&chi_factor(1, r, trunc).pow(c as u64))?
            .add(&tower)?;
        let label = if c % 2 == 1 {
            "a > c > 0, c odd, disconnected"
        } else {
            "a > c > 0, c even, disconnected"
        };
        (
            char_invariant_part(&avg)?,
            label.to_string(),
            g as i64 - c as i64 - 1,
        )
    } else {
        // a = c > 0, disconnected: same χ-assembly as the connected
        // a = c case; the two printed variants differ only by typo.
        let geom = TruncatedSeries::one(ring, trunc)
            .sub(&TruncatedSeries::monomial(
                ring,
                ring.chi().expect("character ring"),
                r as usize,
                trunc,
            ))?
            .inverse()?;
        let h = chi_factor(1, rm1, trunc)
            .pow(c as u64)
            .mul(&chi_factor(1, r, trunc).pow(c as u64 - 1))?
            .mul(&geom)?;
        (
            char_invariant_part(&h)?,
            "a = c > 0 disconnected".to_string(),
            g as i64 - c as i64,
        )
    };

    if outer_exp < 0 {
        warnings.push(BettiWarning::NegativeExponent { exponent: outer_exp });
    }
    let outer = plus_tk_pow(two_rm1, outer_exp, trunc);
    Ok((inv_part.mul(&outer)?, label, warnings))
}

/// Odd/zero-characteristic Poincaré series of the constant-determinant
/// real gauge classifying space. Odd rank depends only on `(r, g)`; even
/// rank factors as `F_t · G_t` with the `G_t` case recorded.
pub fn bcg_odd(
    r: u32,
    curve: &RealCurve,
    bundle: &RealBundle,
    trunc: usize,
) -> Result<BettiResult, BettiError> {
    check(r >= 2, "rank must be at least 2")?;
    check(bundle.r == r, "bundle rank must match r")?;
    check(curve.g >= 2, "genus must be at least 2")?;
    check(
        bundle.b + bundle.c == curve.a,
        "bundle circle data must match the curve",
    )?;
    let g = curve.g;
    if r % 2 == 1 {
        // ∏_{k'=1}^{r'} (1+t^{4k'−1})^g (1+t^{4k'+1})^g / (1−t^{4k'})²
        let rp = (r - 1) / 2;
        let mut factors = Vec::new();
        for kp in 1..=rp {
            factors.push((1i8, 4 * kp - 1, g as i64));
            factors.push((1i8, 4 * kp + 1, g as i64));
            factors.push((-1i8, 4 * kp, -2i64));
        }
        let series = series_from_product(&factors, Q, trunc)?;
        return Ok(finish(BettiResult {
            series: SeriesOrPoly::Series(series),
            case_label: "odd rank".into(),
            factors: Vec::new(),
            warnings: Vec::new(),
        }));
    }

    // Even rank: F depends only on (r, g).
    let rp = r / 2;
    let mut f_factors = Vec::new();
    for kpp in 1..rp {
        f_factors.push((1i8, 4 * kpp - 1, g as i64));
        f_factors.push((1i8, 4 * kpp + 1, g as i64));
        f_factors.push((-1i8, 4 * kpp, -2i64));
    }
    let f_series = series_from_product(&f_factors, Q, trunc)?;
    let (g_series, label, warnings) =
        even_rank_g_factor(r, g, curve.a, bundle.c, curve.eps, trunc)?;
    let total = f_series.mul(&g_series)?;
    let mut result = BettiResult {
        series: SeriesOrPoly::Series(total),
        case_label: label,
        factors: vec![
            ("F".into(), SeriesOrPoly::Series(f_series)),
            ("G".into(), SeriesOrPoly::Series(g_series)),
        ],
        warnings,
    };
    result.scan_negative();
    Ok(result)
}

/// The two leading coefficients `(β_{2r−2}, β_{2r−1})` of the even-rank
/// `G_t` factor, from the closed case table. The dual computation —
/// expanding `G_t` and reading the coefficients — must agree; the
/// verification suite enforces this.
pub fn beta_leading(r: u32, curve: &RealCurve, c: u32) -> Result<(i64, i64), BettiError> {
    check(r >= 2 && r.is_multiple_of(2), "rank must be even")?;
    check(c <= curve.a, "even circle count must satisfy c <= a")?;
    let g = curve.g as i64;
    let a = curve.a;
    let connected = curve.eps == 1;
    let c64 = c as i64;
    let beta_even = if c >= 1 {
        c64 * (c64 - 1) / 2
    } else if a >= 1 && !connected {
        1
    } else {
        0
    };
    let beta_odd = if a > c && c > 0 {
        g + c64 * c64 - c64 - 1
    } else if a > c {
        // c = 0
        if connected {
            g - 1
        } else {
            g
        }
    } else if c > 0 {
        // a = c: connected and disconnected agree.
        g + c64 * c64 - c64
    } else {
        g
    };
    Ok((beta_even, beta_odd))
}

/// Exponent convention for the rank-2 fixed-determinant mod-2 numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Rank2Mode {
    /// The exponent `g − a` as printed; fails exact division.
    AsPrinted,
    /// The exponent `g − a + 1`, which reproduces every golden table row.
    #[default]
    TableReconciled,
}

/// Mod-2 Poincaré polynomial of the rank-2 odd-degree fixed-determinant
/// moduli space:
/// `[(1+t)^{a−1}(1+t²)^{a−1}(1+t³)^E − 2^{a−1} t^g (1+t)^g] / ((1−t)(1−t²))`.
pub fn fixed_det_rank2_z2(g: u32, a: u32, mode: Rank2Mode) -> Result<BettiResult, BettiError> {
    check(g >= 2, "genus must be at least 2")?;
    check(a >= 1 && a <= g + 1, "circle count must satisfy 1 <= a <= g + 1")?;
    let exponent = match mode {
        Rank2Mode::AsPrinted => g as i64 - a as i64,
        Rank2Mode::TableReconciled => g as i64 - a as i64 + 1,
    };
    let mut warnings = Vec::new();

    let numerator = |e: i64| -> Result<PoincarePolynomial, BettiError> {
        check(e >= 0, "negative exponent in polynomial numerator")?;
        let lead = PoincarePolynomial::from_i64(Q, &[1, 1])
            .pow((a - 1) as u64)
            .mul(&PoincarePolynomial::from_i64(Q, &[1, 0, 1]).pow((a - 1) as u64))?
            .mul(&PoincarePolynomial::from_i64(Q, &[1, 0, 0, 1]).pow(e as u64))?;
        let two_pow = Q.from_i64(1i64 << (a - 1));
        let sub = PoincarePolynomial::monomial(Q, two_pow, g as usize)
            .mul(&PoincarePolynomial::from_i64(Q, &[1, 1]).pow(g as u64))?;
        Ok(lead.sub(&sub)?)
    };
    let denominator = PoincarePolynomial::from_i64(Q, &[1, -1])
        .mul(&PoincarePolynomial::from_i64(Q, &[1, 0, -1]))?;

    // In reconciled mode, report whether the printed exponent would have
    // divided exactly; this is the always-on discrepancy report.
    if mode == Rank2Mode::TableReconciled && g as i64 - (a as i64) >= 0 {
        let printed = numerator(g as i64 - a as i64)?;
        let (_, rem) = printed.divrem(&denominator)?;
        if !rem.is_zero() {
            warnings.push(BettiWarning::PrintedVariantRemainder);
        }
    }

    if exponent < 0 {
        // Only reachable as printed with a = g + 1: fall back to series.
        warnings.push(BettiWarning::NegativeExponent { exponent });
        let trunc = 3 * g as usize + 6;
        let lead = series_from_product(
            &[
                (1, 1, (a - 1) as i64),
                (1, 2, (a - 1) as i64),
                (1, 3, exponent),
            ],
            Q,
            trunc,
        )?;
        let two_pow = Q.from_i64(1i64 << (a - 1));
        let sub = TruncatedSeries::monomial(Q, two_pow, g as usize, trunc)
            .mul(&series_from_product(&[(1, 1, g as i64)], Q, trunc)?)?;
        let den = series_from_product(&[(-1, 1, 1), (-1, 2, 1)], Q, trunc)?;
        let series = lead.sub(&sub)?.div(&den)?;
        let mut result = BettiResult {
            series: SeriesOrPoly::Series(series),
            case_label: "rank 2 fixed determinant, mod 2 (series fallback)".into(),
            factors: Vec::new(),
            warnings,
        };
        result.scan_negative();
        return Ok(result);
    }

    let (quotient, remainder) = numerator(exponent)?.divrem(&denominator)?;
    if !remainder.is_zero() {
        warnings.push(BettiWarning::NonzeroRemainder {
            context: format!("exponent {exponent} at (g, a) = ({g}, {a})"),
        });
    }
    let label = match mode {
        Rank2Mode::AsPrinted => "rank 2 fixed determinant, mod 2 (printed exponent)",
        Rank2Mode::TableReconciled => "rank 2 fixed determinant, mod 2",
    };
    let mut result = BettiResult {
        series: SeriesOrPoly::Poly(quotient),
        case_label: label.into(),
        factors: Vec::new(),
        warnings,
    };
    result.scan_negative();
    Ok(result)
}

/// Mod-2 Poincaré series of the rank-3 fixed-determinant moduli space
/// for degree coprime to 3, assembled from the equivariantly perfect
/// stratification:
///
/// `P = σ₃ − 2^{a−1} t^{2g−2} [ (t + t⁵)·C + (t² + t⁴)·Dv ] − 4^{a−1}·T₃`
///
/// where `σ₃` is the determinant-one gauge product, `C` the coprime
/// rank-2 stratum series `(1+t)^g P₂(g,a)/(1−t)`, `Dv` the non-coprime
/// rank-2 stratum series, and `T₃` the full-flag stratum series. The
/// printed three-term closed form is reproduced by this assembly up to
/// transcription defects; the golden tables pin it down.
pub fn fixed_det_rank3_z2(g: u32, b: u32, trunc: usize) -> Result<BettiResult, BettiError> {
    check(g >= 2, "genus must be at least 2")?;
    check(b <= g + 1, "circle count must satisfy b <= g + 1")?;
    let a = b; // the closed form depends on the circle count alone
    let expected_degree = 8 * (g as usize - 1);
    let work = trunc.max(expected_degree + 8);

    let sigma3 = series_from_product(&gauge_product_factors(3, g, a), Q, work)?;

    let correction = if a >= 1 {
        // Coprime rank-2 pieces: (1+t)^g · P₂(g, a) / (1−t).
        let p2 = fixed_det_rank2_z2(g, a, Rank2Mode::TableReconciled)?;
        let p2_series = p2.series.as_series(work);
        let c_series = p2_series
            .mul(&series_from_product(&[(1, 1, g as i64), (-1, 1, -1)], Q, work)?)?;
        // Non-coprime rank-2 pieces:
        // bg₂ − 2^{a−1} t^{g+1} (1+t)^{2g} / ((1−t²)(1−t)²).
        let bg2 = bg_z2(2, g, a, work)?.series.as_series(work);
        let two_pow = Q.from_i64(1i64 << (a - 1));
        let dv = bg2.sub(
            &TruncatedSeries::monomial(Q, two_pow.clone(), (g + 1) as usize, work).mul(
                &series_from_product(&[(1, 1, 2 * g as i64), (-1, 2, -1), (-1, 1, -2)], Q, work)?,
            )?,
        )?;
        // [(t + t⁵)·C + (t² + t⁴)·Dv] / (1 − t⁶), shifted by t^{2g−2},
        // times 2^{a−1}: the destabilizing degrees step by six within
        // each parity class.
        let line_pairs = c_series
            .shift(1)
            .add(&c_series.shift(5))?
            .add(&dv.shift(2))?
            .add(&dv.shift(4))?
            .mul(&series_from_product(&[(-1, 6, -1)], Q, work)?)?
            .shift(2 * g as usize - 2)
            .scale(&two_pow);
        // Full flags: 4^{a−1} t^{3g+3} (1+t²+t⁴)(1+t)^{2g} / ((1−t)²(1−t⁶)²).
        let four_pow = Q.from_i64(1i64 << (2 * (a - 1)));
        let flags = TruncatedSeries::from_i64(Q, &[1, 0, 1, 0, 1], work)
            .mul(&series_from_product(
                &[(1, 1, 2 * g as i64), (-1, 1, -2), (-1, 6, -2)],
                Q,
                work,
            )?)?
            .shift(3 * g as usize + 3)
            .scale(&four_pow);
        line_pairs.add(&flags)?
    } else {
        // No real circles: every splitting piece has even degree, so
        // the rank-2 sub-strata come in two flavors by the residue of
        // the piece degree mod 4, and all destabilizing sums step by
        // twelve.
        let bg2 = bg_z2(2, g, 0, work)?.series.as_series(work);
        let torus = series_from_product(&[(1, 1, 2 * g as i64), (-1, 4, -1), (-1, 1, -2)], Q, work)?;
        let dv_near = bg2.sub(&torus.shift(g as usize + 1))?;
        let dv_far = bg2.sub(&torus.shift(g as usize + 3))?;
        let line_pairs = dv_near
            .shift(2)
            .add(&dv_near.shift(10))?
            .add(&dv_far.shift(4))?
            .add(&dv_far.shift(8))?
            .mul(&series_from_product(&[(-1, 12, -1)], Q, work)?)?
            .shift(2 * g as usize - 2);
        let flags = TruncatedSeries::from_i64(Q, &[1, 0, 0, 0, 1, 0, 0, 0, 1], work)
            .mul(&series_from_product(
                &[(1, 1, 2 * g as i64), (-1, 1, -2), (-1, 12, -2)],
                Q,
                work,
            )?)?
            .shift(3 * g as usize - 3 + 12);
        line_pairs.add(&flags)?
    };

    let series = sigma3.sub(&correction)?;
    let mut warnings = Vec::new();
    let value = match series.polynomial_part(expected_degree) {
        Some(poly) => SeriesOrPoly::Poly(poly),
        None => {
            warnings.push(BettiWarning::TailNotVanishing {
                expected_degree,
            });
            SeriesOrPoly::Series(series.truncate_to(trunc))
        }
    };
    let mut result = BettiResult {
        series: value,
        case_label: "rank 3 fixed determinant, mod 2".into(),
        factors: Vec::new(),
        warnings,
    };
    result.scan_negative();
    Ok(result)
}

/// Poincaré polynomial of the rank-2 odd-degree fixed-determinant moduli
/// space in odd or zero characteristic, for odd genus:
/// `½ (1+t³)^{g−c−1} [ (1+t)^c (1+t²)^c + (1−t)^c (1−t²)^c ]`.
pub fn fixed_det_rank2_odd(g: u32, c: u32) -> Result<BettiResult, BettiError> {
    check(g % 2 == 1 && g >= 3, "genus must be odd and at least 3")?;
    check(c <= g, "even circle count must satisfy c <= g")?;
    let half = Coeff::Rat(BigRational::new(BigInt::from(1), BigInt::from(2)));
    let plus = PoincarePolynomial::from_i64(Q, &[1, 1])
        .pow(c as u64)
        .mul(&PoincarePolynomial::from_i64(Q, &[1, 0, 1]).pow(c as u64))?;
    let minus = PoincarePolynomial::from_i64(Q, &[1, -1])
        .pow(c as u64)
        .mul(&PoincarePolynomial::from_i64(Q, &[1, 0, -1]).pow(c as u64))?;
    let avg = plus.add(&minus)?.scale(&half);
    if c == g {
        // Boundary: the formal exponent g − c − 1 = −1. Flagged, and
        // resolved by exact division: numerically the averaged numerator
        // is divisible by (1 + t³), so the result is still an honest
        // polynomial whenever the remainder vanishes.
        let mut warnings = vec![BettiWarning::NegativeExponent { exponent: -1 }];
        let den = PoincarePolynomial::from_i64(Q, &[1, 0, 0, 1]);
        let (quotient, remainder) = avg.divrem(&den)?;
        let series = if remainder.is_zero() {
            SeriesOrPoly::Poly(quotient)
        } else {
            warnings.push(BettiWarning::NonzeroRemainder {
                context: format!("boundary c = g at g = {g}"),
            });
            let trunc = 3 * g as usize + 4;
            SeriesOrPoly::Series(avg.to_series(trunc).mul(&plus_tk_pow(3, -1, trunc))?)
        };
        let mut result = BettiResult {
            series,
            case_label: "rank 2 fixed determinant, odd characteristic (boundary c = g)".into(),
            factors: Vec::new(),
            warnings,
        };
        result.scan_negative();
        return Ok(result);
    }
    let poly = avg.mul(&PoincarePolynomial::from_i64(Q, &[1, 0, 0, 1]).pow((g - c - 1) as u64))?;
    Ok(finish(BettiResult {
        series: SeriesOrPoly::Poly(poly),
        case_label: "rank 2 fixed determinant, odd characteristic".into(),
        factors: Vec::new(),
        warnings: Vec::new(),
    }))
}

/// Loop-group classifying-space series used by the homology oracle and
/// the odd-characteristic case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopGroupKind {
    /// `∏_{k=2}^r (1+t^{2k−1})/(1−t^{2k})`.
    Blsu,
    /// Orthogonal loop classifying space in odd characteristic.
    Blso,
    /// Its invariant subring under the disconnecting involution.
    BlsoInvariant,
    /// Mod-2 module factor over the special unitary base, trivial or
    /// Möbius real structure: `∏_{k=2}^r (1+t^{k−1})(1+t^k)`.
    TauAlphaZ2Fiber,
    /// Mod-2 module factor, quaternionic-type real structure:
    /// `∏_{k=2}^r (1+t^{2k−1})`.
    TauGammaZ2Fiber,
    /// Odd characteristic, Möbius type: orthogonal of rank `r−1` for
    /// even `r`, of rank `r` for odd `r`.
    TauBeta,
    /// Odd characteristic, quaternionic type: the invariant subring for
    /// even `r`, the full orthogonal for odd `r`.
    TauGammaOddChar,
}

fn blso_factors(rank: u32) -> Vec<(i8, u32, i64)> {
    let mut f = Vec::new();
    if rank % 2 == 1 {
        let rp = (rank - 1) / 2;
        for kp in 1..=rp {
            f.push((1, 4 * kp - 1, 1));
            f.push((-1, 4 * kp, -1));
        }
    } else {
        let rp = rank / 2;
        for kp in 1..rp {
            f.push((1, 4 * kp - 1, 1));
            f.push((-1, 4 * kp, -1));
        }
        f.push((1, rank - 1, 1));
        f.push((-1, rank, -1));
    }
    f
}

pub fn loop_group_series(
    kind: LoopGroupKind,
    r: u32,
    trunc: usize,
) -> Result<TruncatedSeries, BettiError> {
    check(r >= 2, "rank must be at least 2")?;
    let factors: Vec<(i8, u32, i64)> = match kind {
        LoopGroupKind::Blsu => (2..=r)
            .flat_map(|k| [(1i8, 2 * k - 1, 1i64), (-1i8, 2 * k, -1i64)])
            .collect(),
        LoopGroupKind::Blso => blso_factors(r),
        LoopGroupKind::BlsoInvariant => {
            let rp = r / 2;
            (1..=rp)
                .flat_map(|kp| [(1i8, 4 * kp - 1, 1i64), (-1i8, 4 * kp, -1i64)])
                .collect()
        }
        LoopGroupKind::TauAlphaZ2Fiber => (2..=r)
            .flat_map(|k| [(1i8, k - 1, 1i64), (1i8, k, 1i64)])
            .collect(),
        LoopGroupKind::TauGammaZ2Fiber => (2..=r).map(|k| (1i8, 2 * k - 1, 1i64)).collect(),
        LoopGroupKind::TauBeta => {
            if r.is_multiple_of(2) {
                blso_factors(r - 1)
            } else {
                blso_factors(r)
            }
        }
        LoopGroupKind::TauGammaOddChar => {
            if r.is_multiple_of(2) {
                let rp = r / 2;
                (1..=rp)
                    .flat_map(|kp| [(1i8, 4 * kp - 1, 1i64), (-1i8, 4 * kp, -1i64)])
                    .collect()
            } else {
                blso_factors(r)
            }
        }
    };
    Ok(series_from_product(&factors, Q, trunc)?)
}
