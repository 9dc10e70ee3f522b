//! Continued fractions in k_∞.
//!
//! Three engines share one output type: exact Euclid for rationals, the
//! periodic state recurrence for quadratic surds, and a certified engine
//! for truncated series that stops as soon as a quotient is in doubt.

use std::collections::HashMap;

use crate::algebraic::QuadraticSurd;
use crate::error::{Error, Result};
use crate::exponent::{QExp, Valuation};
use crate::laurent::LaurentSeries;
use crate::poly::{enumerate_monic, Poly};
use crate::rational::RationalFn;
use crate::QExponent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CfStatus {
    /// The expansion terminated: the element is in k.
    CompleteRational,
    /// Quotients from `preperiod` on repeat with the given period.
    Periodic { preperiod: usize, period: usize },
    /// The next quotient is not certified at the available precision.
    PrecisionExhausted(usize),
    /// Stopped at the requested number of terms.
    Truncated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub quotients: Vec<Poly>,
    pub status: CfStatus,
    pub convergents: Vec<(Poly, Poly)>,
}

impl CfExpansion {
    fn new(quotients: Vec<Poly>, status: CfStatus) -> Self {
        let convergents = convergents(&quotients);
        CfExpansion {
            quotients,
            status,
            convergents,
        }
    }

    /// `a_k`, unrolling the period when there is one.
    pub fn quotient(&self, k: usize) -> Option<Poly> {
        if let Some(a) = self.quotients.get(k) {
            return Some(a.clone());
        }
        match self.status {
            CfStatus::Periodic { preperiod, period } => {
                Some(self.quotients[preperiod + (k - preperiod) % period].clone())
            }
            _ => None,
        }
    }

    /// The first `count` quotients (fewer if the expansion is shorter).
    pub fn quotients_upto(&self, count: usize) -> Vec<Poly> {
        (0..count).map_while(|k| self.quotient(k)).collect()
    }

    /// `(P_k, Q_k)` for `k < count`.
    pub fn convergents_upto(&self, count: usize) -> Vec<(Poly, Poly)> {
        convergents(&self.quotients_upto(count))
    }

    /// `D(α)`: the largest quotient degree over one period.
    pub fn largest_period_degree(&self) -> Option<usize> {
        match self.status {
            CfStatus::Periodic { preperiod, .. } => self.quotients[preperiod..]
                .iter()
                .filter_map(Poly::degree)
                .max(),
            _ => None,
        }
    }

    /// `τ(α) = q^(-D(α))` for periodic expansions, `0` for rationals.
    pub fn tau(&self) -> Option<QExponent> {
        match self.status {
            CfStatus::CompleteRational => Some(QExp::Zero),
            CfStatus::Periodic { .. } => self
                .largest_period_degree()
                .map(|d| QExp::Finite(d as i64)),
            _ => None,
        }
    }
}

/// `P_k = a_k P_{k-1} + P_{k-2}`, `Q_k = a_k Q_{k-1} + Q_{k-2}` from the
/// seeds `(P_{-2}, Q_{-2}) = (0, 1)`, `(P_{-1}, Q_{-1}) = (1, 0)`.
pub fn convergents(quotients: &[Poly]) -> Vec<(Poly, Poly)> {
    let Some(first) = quotients.first() else {
        return Vec::new();
    };
    let f = first.field();
    let (mut p2, mut q2) = (Poly::zero(f), Poly::one(f));
    let (mut p1, mut q1) = (Poly::one(f), Poly::zero(f));
    quotients
        .iter()
        .map(|a| {
            let p = &(a * &p1) + &p2;
            let q = &(a * &q1) + &q2;
            p2 = std::mem::replace(&mut p1, p.clone());
            q2 = std::mem::replace(&mut q1, q.clone());
            (p, q)
        })
        .collect()
}

/// Value of `[a_0; a_1, ..., a_n]` by backward evaluation.
pub fn evaluate(quotients: &[Poly]) -> Result<RationalFn> {
    let mut it = quotients.iter().rev();
    let last = it
        .next()
        .ok_or_else(|| Error::Precondition("empty continued fraction".into()))?;
    let mut acc = RationalFn::from_poly(last.clone());
    for a in it {
        acc = RationalFn::from_poly(a.clone()).add(&acc.inv()?);
    }
    Ok(acc)
}

/// Exact Euclidean expansion of a rational function.
pub fn cf_rational(r: &RationalFn) -> CfExpansion {
    let (mut num, mut den) = (r.num().clone(), r.den().clone());
    let mut quotients = Vec::new();
    loop {
        let (a, rem) = num.divmod(&den).expect("nonzero denominator");
        quotients.push(a);
        if rem.is_zero() {
            break;
        }
        num = std::mem::replace(&mut den, rem);
    }
    CfExpansion::new(quotients, CfStatus::CompleteRational)
}

/// Certified expansion of a series: iterate `a = [A]`, `A <- 1/(A - a)`.
///
/// A quotient is emitted only when `A` is known through exponent 0 and the
/// residual `A - a` is certified nonzero or exactly zero. Exact inputs are
/// rational and go through [`cf_rational`].
pub fn cf_series(alpha: &LaurentSeries, max_terms: usize) -> CfExpansion {
    if let Some(r) = alpha.to_rational() {
        let mut e = cf_rational(&r);
        if e.quotients.len() > max_terms {
            e = CfExpansion::new(e.quotients[..max_terms].to_vec(), CfStatus::Truncated(max_terms));
        }
        return e;
    }
    let mut quotients = Vec::new();
    let mut a_k = alpha.clone();
    let status = loop {
        if quotients.len() == max_terms {
            break CfStatus::Truncated(max_terms);
        }
        let (Ok(a), Ok(rest)) = (a_k.integral_part(), a_k.frac_part()) else {
            break CfStatus::PrecisionExhausted(quotients.len());
        };
        match rest.valuation() {
            Valuation::Infinite => {
                quotients.push(a);
                break CfStatus::CompleteRational;
            }
            Valuation::AtLeast(_) => break CfStatus::PrecisionExhausted(quotients.len()),
            Valuation::Exact(_) => {
                quotients.push(a);
                match rest.inv() {
                    Ok(next) => a_k = next,
                    Err(_) => break CfStatus::PrecisionExhausted(quotients.len()),
                }
            }
        }
    };
    CfExpansion::new(quotients, status)
}

/// Safety cap on the surd recurrence; periods are far shorter in practice.
const SURD_STEP_CAP: usize = 100_000;

/// Exact periodic expansion of a quadratic surd.
///
/// With `α = (P + sqrt D)/Q` and `Q | D - P²`, each step is
/// `a = [(P + sqrt D)/Q]`, `P' = aQ - P`, `Q' = (D - P'²)/Q`, all in K. The
/// radicand never changes, so a repeated `(P, Q)` pair is a repeated complete
/// quotient.
pub fn cf_surd(alpha: &QuadraticSurd) -> Result<CfExpansion> {
    let d = alpha.d().clone();
    let root = alpha.sqrt_d_floor();
    let (mut p, mut q) = alpha.plus_form();
    let mut seen: HashMap<(Poly, Poly), usize> = HashMap::new();
    let mut quotients = Vec::new();
    for step in 0..SURD_STEP_CAP {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            return Ok(CfExpansion::new(
                quotients,
                CfStatus::Periodic {
                    preperiod: start,
                    period: step - start,
                },
            ));
        }
        seen.insert((p.clone(), q.clone()), step);
        let a = (&p + &root).divmod(&q)?.0;
        let p_next = &(&a * &q) - &p;
        let q_next = (&d - &(&p_next * &p_next)).div_exact(&q)?;
        quotients.push(a);
        p = p_next;
        q = q_next;
    }
    Err(Error::Verification(format!(
        "no period found within {SURD_STEP_CAP} steps"
    )))
}

/// `τ(α) = q^(-D(α))` from the surd's period.
pub fn tau_of_surd(alpha: &QuadraticSurd) -> Result<QExponent> {
    cf_surd(alpha)?
        .tau()
        .ok_or_else(|| Error::Verification("surd expansion is not periodic".into()))
}

/// Check of `|α - P_n/Q_n| = q^(-(deg a_{n+1} + 2 deg Q_n))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentQuality {
    pub n: usize,
    pub expected: i64,
    pub actual: Valuation,
    pub holds: bool,
    /// Competitors with `1 <= |Q| < |Q_n|` examined, and whether all did
    /// strictly worse; `None` when not requested.
    pub best_approximation: Option<(usize, bool)>,
}

pub fn convergent_quality(
    exp: &CfExpansion,
    alpha: &LaurentSeries,
    n: usize,
    check_best: bool,
) -> Result<ConvergentQuality> {
    let next = exp
        .quotient(n + 1)
        .ok_or_else(|| Error::Precondition(format!("quotient a_{} is not available", n + 1)))?;
    let conv = exp.convergents_upto(n + 1);
    let (pn, qn) = &conv[n];
    let dq = qn.degree().unwrap() as i64;
    let expected = next.degree().unwrap() as i64 + 2 * dq;
    if !alpha.prec().covers(expected + 1) {
        return Err(Error::precision(
            format!("convergent quality at n = {n}"),
            expected + 1,
            alpha.prec().as_i64(),
        ));
    }
    let approx = LaurentSeries::from_rational(&RationalFn::new(pn.clone(), qn.clone())?, expected + 1);
    let actual = alpha.sub(&approx).valuation();
    let holds = actual == Valuation::Exact(expected);
    let best_approximation = if check_best {
        let f = alpha.field();
        let mut count = 0;
        let mut all_worse = true;
        for deg in 0..dq as usize {
            for cand in enumerate_monic(f, deg) {
                count += 1;
                // min_P |α - P/Q| = ||Qα|| / |Q|
                let v = alpha.mul_poly(&cand).frac_norm()?.shift(deg as i64);
                if !matches!(v, Valuation::Exact(e) if e < expected) {
                    all_worse = false;
                }
            }
        }
        Some((count, all_worse))
    } else {
        None
    };
    Ok(ConvergentQuality {
        n,
        expected,
        actual,
        holds,
        best_approximation,
    })
}
