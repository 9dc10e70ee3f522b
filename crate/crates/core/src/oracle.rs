//! Exhaustive searches over bounded-degree polynomials.
//!
//! Norms satisfy `||cα|| = ||α||` for `c ∈ F_p*`, so only monic `x` are
//! enumerated. Work is split across threads per degree and merged in
//! enumeration order, so results do not depend on the thread count.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::algebraic::QuadraticSurd;
use crate::error::{Error, Result};
use crate::exponent::{QExp, Valuation};
use crate::field::FieldConfig;
use crate::laurent::LaurentSeries;
use crate::linforms::{GammaInstance, IntegralPoint};
use crate::poly::{enumerate_monic, Poly};
use crate::rational::RationalFn;
use crate::{QExponent, RationalQExponent};

/// A coefficient `θ_i`: a series, or a rational function kept exact so
/// that `||xθ|| = 0` is observable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Series(LaurentSeries),
    Rational(RationalFn),
}

impl Element {
    pub fn surd(s: &QuadraticSurd, prec: i64) -> Result<Element> {
        Ok(Element::Series(s.to_series(prec)?))
    }

    pub fn field(&self) -> FieldConfig {
        match self {
            Element::Series(s) => s.field(),
            Element::Rational(r) => r.field(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Element::Rational(_))
    }

    /// `v(||xθ||)`; errors when the series runs out of precision.
    pub fn norm(&self, x: &Poly) -> Result<Valuation> {
        match self {
            Element::Rational(r) => Ok(match r.mul_poly(x).frac_valuation() {
                Some(v) => Valuation::Exact(v),
                None => Valuation::Infinite,
            }),
            Element::Series(s) => {
                let prod = s.mul_poly(x);
                match prod.frac_norm()? {
                    Valuation::AtLeast(_) if !prod.is_exact() => Err(Error::precision(
                        format!("||xθ|| for x = {x}"),
                        prod.prec().as_i64() + 1,
                        prod.prec().as_i64(),
                    )),
                    v => Ok(v),
                }
            }
        }
    }
}

impl From<LaurentSeries> for Element {
    fn from(s: LaurentSeries) -> Self {
        Element::Series(s)
    }
}

impl From<RationalFn> for Element {
    fn from(r: RationalFn) -> Self {
        Element::Rational(r)
    }
}

fn require_field(theta: &[Element]) -> Result<FieldConfig> {
    let first = theta
        .first()
        .ok_or_else(|| Error::Precondition("empty coefficient vector".into()))?;
    let f = first.field();
    for t in theta {
        if t.field() != f {
            return Err(Error::FieldMismatch(f.p(), t.field().p()));
        }
    }
    Ok(f)
}

/// Monic polynomials of degree exactly `d`, checked against `q^d`.
fn monic_of_degree(f: FieldConfig, d: usize) -> Result<Vec<Poly>> {
    let all: Vec<Poly> = enumerate_monic(f, d).collect();
    let expected = (f.p() as usize).pow(d as u32);
    if all.len() != expected {
        return Err(Error::Verification(format!(
            "enumerated {} monic polynomials of degree {d}, expected {expected}",
            all.len()
        )));
    }
    Ok(all)
}

/// Per-degree maximum of a score, with all monic witnesses. `None` scores
/// mean the value is exactly zero (the best possible).
fn best_per_degree<S>(f: FieldConfig, d: usize, score: S) -> Result<(Option<Ratio<i64>>, Vec<Poly>)>
where
    S: Fn(&Poly) -> Result<Option<Ratio<i64>>> + Sync,
{
    let xs = monic_of_degree(f, d)?;
    let scored: Vec<Option<Ratio<i64>>> = xs.par_iter().map(&score).collect::<Result<_>>()?;
    // None ranks above every finite exponent
    let rank = |s: &Option<Ratio<i64>>| (s.is_none(), *s);
    let top = scored.iter().map(rank).max().expect("nonempty degree class");
    let witnesses = xs
        .into_iter()
        .zip(&scored)
        .filter(|(_, s)| rank(s) == top)
        .map(|(x, _)| x)
        .collect();
    Ok((top.1, witnesses))
}

fn to_qexp(s: Option<Ratio<i64>>) -> RationalQExponent {
    s.map_or(QExp::Zero, QExp::Finite)
}

/// `min_i v(||xθ_i||)`, `None` when every norm vanishes.
fn worst_norm(theta: &[Element], x: &Poly) -> Result<Option<i64>> {
    let mut worst: Option<i64> = None;
    for t in theta {
        match t.norm(x)? {
            Valuation::Exact(v) | Valuation::AtLeast(v) => worst = Some(worst.map_or(v, |w| w.min(v))),
            Valuation::Infinite => {}
        }
    }
    Ok(worst)
}

/// Best `max_i ||xθ_i||` over monic `x` of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRow {
    pub deg: usize,
    /// `max_i ||xθ_i|| = q^(-e)`, minimized over `x` of this degree.
    pub best: QExponent,
    pub witnesses: Vec<Poly>,
}

impl DegreeRow {
    /// Exponent of `|x|^(1/n) max_i ||xθ_i||` at the best `x`.
    pub fn scaled(&self, n: usize) -> RationalQExponent {
        match self.best {
            QExp::Finite(e) => QExp::Finite(Ratio::from_integer(e) - Ratio::new(self.deg as i64, n as i64)),
            QExp::Zero => QExp::Zero,
        }
    }
}

pub fn best_simultaneous(theta: &[Element], max_deg: usize) -> Result<Vec<DegreeRow>> {
    let f = require_field(theta)?;
    (0..=max_deg)
        .map(|d| {
            let (best, witnesses) =
                best_per_degree(f, d, |x| Ok(worst_norm(theta, x)?.map(Ratio::from_integer)))?;
            Ok(DegreeRow {
                deg: d,
                best: best.map_or(QExp::Zero, |r| QExp::Finite(r.to_integer())),
                witnesses,
            })
        })
        .collect()
}

/// `min` over `deg x <= h` of `max_i ||xθ_i||`, as a q-exponent.
pub fn best_up_to(table: &[DegreeRow], h: usize) -> QExponent {
    table[..=h.min(table.len() - 1)]
        .iter()
        .map(|r| r.best)
        .fold(QExp::Finite(i64::MIN), |a, b| a.min_value(b))
}

/// Per-degree `min (max_i ||xθ_i||) |x|^(1/n)` and their overall minimum,
/// an empirical `γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundEstimate {
    pub per_degree: Vec<(usize, RationalQExponent)>,
    pub gamma: RationalQExponent,
}

impl LowerBoundEstimate {
    /// `γ_last >= γ_first / 2`, i.e. `q^(E_last - E_first) <= 2`.
    pub fn no_decay(&self, q: u64) -> bool {
        let (Some((_, first)), Some((_, last))) = (self.per_degree.first(), self.per_degree.last()) else {
            return true;
        };
        match (first, last) {
            (_, QExp::Zero) => false,
            (QExp::Zero, _) => true,
            (QExp::Finite(a), QExp::Finite(b)) => {
                let diff = *b - *a;
                if diff <= Ratio::from_integer(0) {
                    return true;
                }
                // q^(num/den) <= 2  ⟺  q^num <= 2^den
                let (num, den) = (*diff.numer() as u32, *diff.denom() as u32);
                match ((q as u128).checked_pow(num), 2u128.checked_pow(den)) {
                    (Some(l), Some(r)) => l <= r,
                    (None, _) => false,
                    (Some(_), None) => true,
                }
            }
        }
    }
}

pub fn verify_lower_bound(theta: &[Element], max_deg: usize) -> Result<LowerBoundEstimate> {
    let n = theta.len();
    let table = best_simultaneous(theta, max_deg)?;
    let per_degree: Vec<(usize, RationalQExponent)> = table.iter().map(|r| (r.deg, r.scaled(n))).collect();
    let gamma = per_degree
        .iter()
        .map(|(_, e)| *e)
        .fold(QExp::Finite(Ratio::from_integer(i64::MIN)), |a, b| a.min_value(b));
    Ok(LowerBoundEstimate { per_degree, gamma })
}

/// Finite-horizon view of `B(θ, λ)`: for each window start `w`,
/// `min |x|^λ Π ||xθ_j||` over `w <= deg x <= max_deg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BEstimate {
    pub windows: Vec<(usize, RationalQExponent)>,
    /// The full window `[0, max_deg]`. An estimate, not the limit.
    pub estimate: RationalQExponent,
}

pub fn estimate_b(theta: &[Element], lambda: Ratio<i64>, max_deg: usize) -> Result<BEstimate> {
    let f = require_field(theta)?;
    let mut per_deg = Vec::with_capacity(max_deg + 1);
    for d in 0..=max_deg {
        let (best, _) = best_per_degree(f, d, |x| {
            let mut sum = 0i64;
            for t in theta {
                match t.norm(x)? {
                    Valuation::Exact(v) | Valuation::AtLeast(v) => sum += v,
                    Valuation::Infinite => return Ok(None),
                }
            }
            Ok(Some(Ratio::from_integer(sum) - lambda * Ratio::from_integer(d as i64)))
        })?;
        per_deg.push(to_qexp(best));
    }
    let mut windows = Vec::with_capacity(max_deg + 1);
    let mut acc = QExp::Finite(Ratio::from_integer(i64::MIN));
    for w in (0..=max_deg).rev() {
        acc = acc.min_value(per_deg[w]);
        windows.push((w, acc));
    }
    windows.reverse();
    Ok(BEstimate {
        estimate: windows[0].1,
        windows,
    })
}

/// `α = Σ_(h>=0) T^(-p^h)` to absolute precision `prec`.
pub fn mahler_series(f: FieldConfig, prec: i64) -> LaurentSeries {
    let p = f.p() as i64;
    let mut coeffs = vec![0u32; (prec - 1).max(0) as usize];
    let mut e = 1i64;
    while e < prec {
        coeffs[(e - 1) as usize] = 1;
        e *= p;
    }
    LaurentSeries::from_terms(f, 1, coeffs, crate::Precision::Abs(prec))
}

/// Monic `Q` with `1 <= deg Q <= max_deg` and `v(||Qα||) = (p-1) deg Q`.
pub fn mahler_extremal_check(f: FieldConfig, max_deg: usize, prec: i64) -> Result<Vec<Poly>> {
    let p = f.p() as i64;
    let need = p * max_deg as i64 + 2;
    if prec < need {
        return Err(Error::precision("Mahler series", need, prec));
    }
    let alpha = mahler_series(f, prec);
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for q in monic_of_degree(f, d)? {
            let v = alpha.mul_poly(&q).frac_norm()?;
            if v == Valuation::Exact((p - 1) * d as i64) {
                out.push(q);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Verification("no extremal Mahler witness".into()));
    }
    Ok(out)
}

/// Largest instance (in candidate points) the exhaustive Γ search accepts.
pub const GAMMA_SEARCH_LIMIT: u64 = 1_000_000;

/// First nonzero point of `inst` in enumeration order, by brute force over
/// every coefficient vector within the degree bounds.
pub fn exhaustive_gamma(inst: &GammaInstance) -> Result<Option<IntegralPoint>> {
    let f = inst.field();
    let p = f.p() as u64;
    let nvars: usize = inst.deg_bounds().iter().map(|d| d + 1).sum();
    let total = p
        .checked_pow(nvars as u32)
        .filter(|&t| t <= GAMMA_SEARCH_LIMIT)
        .ok_or_else(|| Error::Precondition(format!("search space p^{nvars} is too large")))?;
    let decode = |mut idx: u64| -> IntegralPoint {
        let coords = inst
            .deg_bounds()
            .iter()
            .map(|&d| {
                let c: Vec<u32> = (0..=d)
                    .map(|_| {
                        let c = (idx % p) as u32;
                        idx /= p;
                        c
                    })
                    .collect();
                Poly::from_coeffs(f, c)
            })
            .collect();
        IntegralPoint::new(coords)
    };
    let mask = inst.nonzero_mask();
    Ok((1..total)
        .into_par_iter()
        .map(decode)
        .find_first(|x| {
            let nonzero = match mask {
                None => !x.is_zero(),
                Some(m) => x.coords.iter().zip(m).any(|(c, &on)| on && !c.is_zero()),
            };
            nonzero && inst.satisfies(x)
        }))
}
