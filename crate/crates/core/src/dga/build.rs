//! Builders for the standard bigraded complexes.
//!
//! Each builder transcribes one generator/differential table. The base
//! surface has genus `g_hat` with `n` boundary circles, so the closed
//! double has genus `g = 2·g_hat + n − 1`; `a` of the circles are real
//! with `b` of those odd. Exterior blocks named `A` carry the `2·g_hat`
//! wedge factors per column-zero degree.
//!
//! Complexes:
//! - `koszul_tate`: the free resolution of the restriction map for the
//!   special unitary mapping space; homology is the mapping-space
//!   cohomology `∏_k (1+t^{2k−1})^g/(1−t^{2k})`.
//! - `case1`: the odd-rank page after substituting the orthogonal
//!   loop-group cohomology; homology matches the odd-rank closed form.
//! - `case2_s` / `case2_t`: the two tensor factors of the even-rank
//!   page. The `T` factor carries the rank-level Euler classes, the
//!   character weights, and the three-way split of the top `x`
//!   differential.
//! - `lemma314_s`: the two-step multiplication-by-`p̄` complex whose
//!   homology feeds the divided-power tower.
//! - `prop38`: the mod-2 page, where the restriction map hits the
//!   symmetric generators only.

use crate::series::CoefficientRing;

use super::{Dga, Flavor, Generator, Monomial, OracleError};

/// Which standard complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexId {
    KoszulTate,
    Case1,
    Case2S,
    Case2T,
    Lemma314S,
    Prop38,
}

impl ComplexId {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "koszul_tate" => Some(ComplexId::KoszulTate),
            "case1" => Some(ComplexId::Case1),
            "case2_s" => Some(ComplexId::Case2S),
            "case2_t" => Some(ComplexId::Case2T),
            "lemma314_s" => Some(ComplexId::Lemma314S),
            "prop38" => Some(ComplexId::Prop38),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ComplexId::KoszulTate => "koszul_tate",
            ComplexId::Case1 => "case1",
            ComplexId::Case2S => "case2_s",
            ComplexId::Case2T => "case2_t",
            ComplexId::Lemma314S => "lemma314_s",
            ComplexId::Prop38 => "prop38",
        }
    }
}

/// Parameters shared by the builders; unused fields are ignored per
/// complex. `n` counts boundary circles, `a ≤ n` real ones, `b ≤ a` odd
/// ones, and `g_hat` is the genus of the bounded surface.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComplexParams {
    pub r: u32,
    pub n: u32,
    pub g_hat: u32,
    pub a: u32,
    pub b: u32,
}

struct Builder {
    gens: Vec<Generator>,
}

impl Builder {
    fn new() -> Self {
        Builder { gens: Vec::new() }
    }

    fn add(
        &mut self,
        name: String,
        column: i32,
        degree: u32,
        flavor: Flavor,
        cap: Option<u32>,
        chi: u8,
    ) -> usize {
        self.gens.push(Generator {
            name,
            column,
            internal_degree: degree,
            flavor,
            cap,
            chi_weight: chi,
            differential: Vec::new(),
        });
        self.gens.len() - 1
    }

    fn exterior(&mut self, name: String, column: i32, degree: u32, chi: u8) -> usize {
        self.add(name, column, degree, Flavor::Exterior, Some(1), chi)
    }

    fn polynomial(&mut self, name: String, degree: u32, chi: u8) -> usize {
        self.add(name, 0, degree, Flavor::Polynomial, None, chi)
    }

    fn divided(&mut self, name: String, degree: u32) -> usize {
        self.add(name.clone(), -1, degree, Flavor::DividedPower, None, 0)
    }

    /// Sets the differential from `(coefficient, [(index, exponent)…])`
    /// term descriptions.
    fn set_diff(&mut self, idx: usize, terms: Vec<(i64, Vec<(usize, u32)>)>) {
        let n = self.gens.len();
        self.gens[idx].differential = terms
            .into_iter()
            .map(|(c, pairs)| (c, Monomial::from_pairs(n, &pairs)))
            .collect();
    }

    /// Pads every differential monomial out to the final generator
    /// count and assembles the complex.
    fn finish(mut self, field: CoefficientRing) -> Result<Dga, OracleError> {
        let n = self.gens.len();
        for g in &mut self.gens {
            for (_, m) in &mut g.differential {
                m.exps.resize(n, 0);
            }
        }
        Dga::new(field, self.gens)
    }
}

fn ensure(cond: bool, msg: &str) -> Result<(), OracleError> {
    if cond {
        Ok(())
    } else {
        Err(OracleError::InvalidParams(msg.to_string()))
    }
}

/// The `A` exterior block: `2·g_hat` generators in each degree `2k − 1`
/// for `k = 2..=r`.
fn add_surface_block(b: &mut Builder, r: u32, g_hat: u32) {
    for j in 1..=(2 * g_hat) {
        for k in 2..=r {
            b.exterior(format!("A_{j}_{k}"), 0, 2 * k - 1, 0);
        }
    }
}

fn build_koszul_tate(p: ComplexParams, field: CoefficientRing) -> Result<Dga, OracleError> {
    ensure(p.r >= 2, "rank must be at least 2")?;
    ensure(p.n >= 1, "at least one boundary circle")?;
    let mut b = Builder::new();
    let mut cbar: Vec<Vec<usize>> = Vec::new();
    let mut c: Vec<Vec<usize>> = Vec::new();
    for i in 1..=p.n {
        let mut row_bar = Vec::new();
        let mut row = Vec::new();
        for k in 2..=p.r {
            row_bar.push(b.exterior(format!("cbar_{i}_{k}"), 0, 2 * k - 1, 0));
            row.push(b.polynomial(format!("c_{i}_{k}"), 2 * k, 0));
        }
        cbar.push(row_bar);
        c.push(row);
    }
    for ip in 2..=p.n {
        for k in 2..=p.r {
            let x = b.exterior(format!("x_{ip}_{k}"), -1, 2 * k, 0);
            let kk = (k - 2) as usize;
            b.set_diff(
                x,
                vec![
                    (1, vec![(c[(ip - 1) as usize][kk], 1)]),
                    (-1, vec![(c[0][kk], 1)]),
                ],
            );
        }
    }
    for k in 2..=p.r {
        let z = b.divided(format!("z_{k}"), 2 * k - 1);
        let kk = (k - 2) as usize;
        let terms = (0..p.n as usize)
            .map(|i| (1i64, vec![(cbar[i][kk], 1u32)]))
            .collect();
        b.set_diff(z, terms);
    }
    add_surface_block(&mut b, p.r, p.g_hat);
    b.finish(field)
}

fn build_case1(p: ComplexParams, field: CoefficientRing) -> Result<Dga, OracleError> {
    ensure(p.r >= 3 && p.r % 2 == 1, "rank must be odd and at least 3")?;
    ensure(p.n >= 1, "at least one boundary circle")?;
    let rp = (p.r - 1) / 2;
    let mut b = Builder::new();
    let mut pbar = Vec::new();
    let mut pp = Vec::new();
    for i in 1..=p.n {
        let mut row_bar = Vec::new();
        let mut row = Vec::new();
        for kp in 1..=rp {
            row_bar.push(b.exterior(format!("pbar_{i}_{kp}"), 0, 4 * kp - 1, 0));
            row.push(b.polynomial(format!("p_{i}_{kp}"), 4 * kp, 0));
        }
        pbar.push(row_bar);
        pp.push(row);
    }
    for ip in 2..=p.n {
        for k in 2..=p.r {
            let x = b.exterior(format!("x_{ip}_{k}"), -1, 2 * k, 0);
            if k % 2 == 0 {
                let kp = (k / 2 - 1) as usize;
                b.set_diff(
                    x,
                    vec![
                        (1, vec![(pp[(ip - 1) as usize][kp], 1)]),
                        (-1, vec![(pp[0][kp], 1)]),
                    ],
                );
            }
        }
    }
    for k in 2..=p.r {
        let z = b.divided(format!("z_{k}"), 2 * k - 1);
        if k % 2 == 0 {
            let kp = (k / 2 - 1) as usize;
            let terms = (0..p.n as usize)
                .map(|i| (1i64, vec![(pbar[i][kp], 1u32)]))
                .collect();
            b.set_diff(z, terms);
        }
    }
    add_surface_block(&mut b, p.r, p.g_hat);
    b.finish(field)
}

fn build_case2_s(p: ComplexParams, field: CoefficientRing) -> Result<Dga, OracleError> {
    ensure(p.r >= 2 && p.r.is_multiple_of(2), "rank must be even")?;
    ensure(p.n >= 1, "at least one boundary circle")?;
    let rp = p.r / 2;
    let mut b = Builder::new();
    let mut pbar = Vec::new();
    let mut pp = Vec::new();
    for i in 1..=p.n {
        let mut row_bar = Vec::new();
        let mut row = Vec::new();
        for kpp in 1..rp {
            row_bar.push(b.exterior(format!("pbar_{i}_{kpp}"), 0, 4 * kpp - 1, 0));
            row.push(b.polynomial(format!("p_{i}_{kpp}"), 4 * kpp, 0));
        }
        pbar.push(row_bar);
        pp.push(row);
    }
    // Levels k < r only; the top level lives in the T factor.
    for ip in 2..=p.n {
        for k in 2..p.r {
            let x = b.exterior(format!("x_{ip}_{k}"), -1, 2 * k, 0);
            if k % 2 == 0 {
                let kpp = (k / 2 - 1) as usize;
                b.set_diff(
                    x,
                    vec![
                        (1, vec![(pp[(ip - 1) as usize][kpp], 1)]),
                        (-1, vec![(pp[0][kpp], 1)]),
                    ],
                );
            }
        }
    }
    for k in 2..p.r {
        let z = b.divided(format!("z_{k}"), 2 * k - 1);
        if k % 2 == 0 {
            let kpp = (k / 2 - 1) as usize;
            let terms = (0..p.n as usize)
                .map(|i| (1i64, vec![(pbar[i][kpp], 1u32)]))
                .collect();
            b.set_diff(z, terms);
        }
    }
    add_surface_block(&mut b, p.r, p.g_hat);
    b.finish(field)
}

fn build_case2_t(p: ComplexParams, field: CoefficientRing) -> Result<Dga, OracleError> {
    ensure(p.r >= 2 && p.r.is_multiple_of(2), "rank must be even")?;
    ensure(p.b <= p.a && p.a <= p.n, "need b <= a <= n")?;
    ensure(p.n >= 1, "at least one boundary circle")?;
    let r = p.r;
    let mut b = Builder::new();

    // Even real circles carry the rank-level Euler pair with character
    // weight one; the remaining circles carry the symmetric pair.
    let mut ebar = vec![None; p.n as usize];
    let mut e = vec![None; p.n as usize];
    let mut pbar_top = vec![None; p.n as usize];
    let mut p_top = vec![None; p.n as usize];
    for i in (p.b + 1)..=p.a {
        ebar[(i - 1) as usize] = Some(b.exterior(format!("ebar_{i}"), 0, r - 1, 1));
        e[(i - 1) as usize] = Some(b.polynomial(format!("e_{i}"), r, 1));
    }
    for i in (p.a + 1)..=p.n {
        pbar_top[(i - 1) as usize] = Some(b.exterior(format!("pbar_{i}"), 0, 2 * r - 1, 0));
        p_top[(i - 1) as usize] = Some(b.polynomial(format!("p_{i}"), 2 * r, 0));
    }

    // Image of the top symmetric class over circle i: the Euler square
    // on even circles, the top class on doubled circles, zero on odd
    // circles.
    let image_p = |i: u32| -> Option<Vec<(usize, u32)>> {
        let idx = (i - 1) as usize;
        if let Some(ei) = e[idx] {
            Some(vec![(ei, 2)])
        } else {
            p_top[idx].map(|pi| vec![(pi, 1)])
        }
    };

    for ip in 2..=p.n {
        let x = b.exterior(format!("x_{ip}_{r}"), -1, 2 * r, 0);
        let mut terms: Vec<(i64, Vec<(usize, u32)>)> = Vec::new();
        if let Some(m) = image_p(ip) {
            terms.push((1, m));
        }
        if let Some(m) = image_p(1) {
            terms.push((-1, m));
        }
        b.set_diff(x, terms);
    }

    let z = b.divided(format!("z_{r}"), 2 * r - 1);
    let mut terms: Vec<(i64, Vec<(usize, u32)>)> = Vec::new();
    for i in (p.b + 1)..=p.n {
        let idx = (i - 1) as usize;
        if let (Some(eb), Some(ei)) = (ebar[idx], e[idx]) {
            // p̄ at the top level is 2·ē·e on even circles.
            terms.push((2, vec![(eb, 1), (ei, 1)]));
        } else if let Some(pb) = pbar_top[idx] {
            terms.push((1, vec![(pb, 1)]));
        }
    }
    b.set_diff(z, terms);
    b.finish(field)
}

fn build_lemma314_s(p: ComplexParams, field: CoefficientRing) -> Result<Dga, OracleError> {
    ensure(p.r >= 2, "rank must be at least 2")?;
    ensure(p.b < p.n, "need at least one factor: b < n")?;
    let r = p.r;
    let mut b = Builder::new();
    let lo = if p.b > 0 { p.b + 1 } else { 1 };
    let mut pairs = Vec::new();
    for i in lo..=p.n {
        let eb = b.exterior(format!("ebar_{i}"), 0, r - 1, 1);
        // With an odd circle present every Euler generator is truncated
        // square-zero; without one the first stays polynomial.
        let cap = if p.b == 0 && i == 1 { None } else { Some(1) };
        let e = b.add(format!("e_{i}"), 0, r, Flavor::Polynomial, cap, 1);
        pairs.push((eb, e));
    }
    let z = b.divided(format!("z_{r}"), 2 * r - 1);
    let terms = pairs
        .iter()
        .map(|&(eb, e)| (1i64, vec![(eb, 1u32), (e, 1u32)]))
        .collect();
    b.set_diff(z, terms);
    b.finish(field)
}

fn build_prop38(p: ComplexParams, field: CoefficientRing) -> Result<Dga, OracleError> {
    ensure(p.r >= 2, "rank must be at least 2")?;
    ensure(p.n >= 1, "at least one boundary circle")?;
    ensure(p.a <= p.n, "need a <= n")?;
    let mut b = Builder::new();
    let mut c = Vec::new();
    for i in 1..=p.n {
        // Real circles contribute the orthogonal fiber pair in degrees
        // (k−1, k); doubled circles the special unitary fiber in degree
        // 2k−1. All are cocycles.
        for k in 2..=p.r {
            if i <= p.a {
                b.exterior(format!("v_{i}_{k}a"), 0, k - 1, 0);
                b.exterior(format!("v_{i}_{k}b"), 0, k, 0);
            } else {
                b.exterior(format!("w_{i}_{k}"), 0, 2 * k - 1, 0);
            }
        }
        let mut row = Vec::new();
        for k in 2..=p.r {
            row.push(b.polynomial(format!("c_{i}_{k}"), 2 * k, 0));
        }
        c.push(row);
    }
    for ip in 2..=p.n {
        for k in 2..=p.r {
            let x = b.exterior(format!("x_{ip}_{k}"), -1, 2 * k, 0);
            let kk = (k - 2) as usize;
            b.set_diff(
                x,
                vec![
                    (1, vec![(c[(ip - 1) as usize][kk], 1)]),
                    (-1, vec![(c[0][kk], 1)]),
                ],
            );
        }
    }
    for k in 2..=p.r {
        b.divided(format!("z_{k}"), 2 * k - 1);
    }
    add_surface_block(&mut b, p.r, p.g_hat);
    b.finish(field)
}

/// Builds one of the standard complexes.
pub fn standard_complex(
    id: ComplexId,
    params: ComplexParams,
    field: CoefficientRing,
) -> Result<Dga, OracleError> {
    match id {
        ComplexId::KoszulTate => build_koszul_tate(params, field),
        ComplexId::Case1 => build_case1(params, field),
        ComplexId::Case2S => build_case2_s(params, field),
        ComplexId::Case2T => build_case2_t(params, field),
        ComplexId::Lemma314S => build_lemma314_s(params, field),
        ComplexId::Prop38 => build_prop38(params, field),
    }
}
