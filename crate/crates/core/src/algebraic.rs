//! Algebraic elements of k_∞: quadratic surds and Newton-lifted roots.

use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::Valuation;
use crate::field::FieldConfig;
use crate::laurent::{LaurentSeries, Precision};
use crate::poly::Poly;
use crate::rational::RationalFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `(P + sign * sqrt(D)) / Q`, with `sqrt(D)` the canonical branch.
///
/// Construction guarantees `Q | D - P^2`, which keeps the continued-fraction
/// recurrence inside K.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: Poly,
    q: Poly,
    d: Poly,
    sign: Sign,
}

impl QuadraticSurd {
    pub fn new(p: Poly, q: Poly, d: Poly, sign: Sign) -> Result<Self> {
        p.check_field(&q)?;
        p.check_field(&d)?;
        let f = p.field();
        f.require_odd("quadratic surd")?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        check_radicand(&d)?;
        if (&d - &(&p * &p)).div_rem(&q)?.is_zero() {
            return Ok(QuadraticSurd { p, q, d, sign });
        }
        // sqrt(D Q^2) = ±Q sqrt(D); the sign flips when lc(Q)·lc(sqrt D) is
        // not the canonical representative.
        let root_lead = f.sqrt(d.leading()).unwrap();
        let sign = if f.is_canonical_sign(f.mul(q.leading(), root_lead)) {
            sign
        } else {
            sign.flip()
        };
        let q2 = &q * &q;
        Ok(QuadraticSurd {
            p: &p * &q,
            d: &d * &q2,
            q: q2,
            sign,
        })
    }

    /// `sqrt(D)` itself.
    pub fn sqrt_of(d: Poly) -> Result<Self> {
        let f = d.field();
        QuadraticSurd::new(Poly::zero(f), Poly::one(f), d, Sign::Plus)
    }

    pub fn field(&self) -> FieldConfig {
        self.p.field()
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `(P, Q)` rewritten so that the radical enters with a plus sign.
    pub fn plus_form(&self) -> (Poly, Poly) {
        match self.sign {
            Sign::Plus => (self.p.clone(), self.q.clone()),
            Sign::Minus => (-&self.p, -&self.q),
        }
    }

    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd {
            sign: self.sign.flip(),
            ..self.clone()
        }
    }

    /// `α + ᾱ = 2P/Q`.
    pub fn trace(&self) -> RationalFn {
        RationalFn::new(self.p.scale(2), self.q.clone()).expect("Q nonzero")
    }

    /// `α ᾱ = (P^2 - D)/Q^2`.
    pub fn norm(&self) -> RationalFn {
        RationalFn::new(&(&self.p * &self.p) - &self.d, &self.q * &self.q).expect("Q nonzero")
    }

    /// Half the degree of `D`: `v(sqrt D) = -half_deg`.
    pub fn half_deg(&self) -> i64 {
        self.d.degree().unwrap() as i64 / 2
    }

    /// `[sqrt D]`.
    pub fn sqrt_d_floor(&self) -> Poly {
        let h = self.half_deg();
        LaurentSeries::from_poly(&self.d)
            .truncate(1 - h)
            .sqrt()
            .and_then(|s| s.integral_part())
            .expect("radicand validated at construction")
    }

    /// `[α]`, computed exactly as the quotient of `P ± [sqrt D]` by `Q`.
    pub fn integral_part(&self) -> Poly {
        let (p, q) = self.plus_form();
        let num = &p + &self.sqrt_d_floor();
        num.divmod(&q).expect("Q nonzero").0
    }

    /// Laurent expansion to absolute precision `prec`.
    pub fn to_series(&self, prec: i64) -> Result<LaurentSeries> {
        let h = self.half_deg();
        let dq = self.q.degree().unwrap() as i64;
        let dp = self.p.degree().map_or(0, |d| d as i64);
        let root = LaurentSeries::from_poly(&self.d)
            .truncate(prec - dq - h)
            .sqrt()?;
        let root = match self.sign {
            Sign::Plus => root,
            Sign::Minus => root.neg(),
        };
        let num = LaurentSeries::from_poly(&self.p).add(&root);
        let inv_q = LaurentSeries::from_poly(&self.q).inv_to(prec + h.max(dp))?;
        let out = num.mul(&inv_q);
        if !out.prec().covers(prec) {
            return Err(Error::precision("surd expansion", prec, out.prec().as_i64()));
        }
        Ok(out.truncate(prec))
    }

    /// Residual of `Q α² - 2P α + (P² - D)/Q` on the series view.
    pub fn defining_residual(&self, prec: i64) -> Result<LaurentSeries> {
        let a = self.to_series(prec)?;
        let c0 = (&(&self.p * &self.p) - &self.d).div_exact(&self.q)?;
        Ok(a
            .mul(&a)
            .mul_poly(&self.q)
            .sub(&a.mul_poly(&self.p.scale(2)))
            .add(&LaurentSeries::from_poly(&c0)))
    }

    /// Parses `surd:(<P>+sqrt(<D>))/<Q>`; the sign before `sqrt` may be
    /// written `+`, `-`, `+1*`, `-1*`, `++`, `+-` or `+s*` (plus).
    pub fn parse(field: FieldConfig, text: &str) -> Result<Self> {
        let lead_ws = text.len() - text.trim_start().len();
        let t = text.trim();
        let body = t
            .strip_prefix("surd:")
            .ok_or_else(|| Error::parse(lead_ws, "expected 'surd:'"))?;
        let base = lead_ws + 5;
        let inner = body.trim_start();
        let base = base + body.len() - inner.len();
        if !inner.starts_with('(') {
            return Err(Error::parse(base, "expected '('"));
        }
        let s_at = inner
            .find("sqrt(")
            .ok_or_else(|| Error::parse(base + 1, "expected 'sqrt('"))?;
        let d_start = s_at + 5;
        let d_end = inner[d_start..]
            .find(')')
            .map(|i| d_start + i)
            .ok_or_else(|| Error::parse(base + inner.len(), "unclosed 'sqrt('"))?;
        let pre = &inner[1..s_at];
        let pre_trim = pre.trim_end();
        let seps = [
            ("+s*", Sign::Plus),
            ("+1*", Sign::Plus),
            ("-1*", Sign::Minus),
            ("+-", Sign::Minus),
            ("++", Sign::Plus),
            ("+", Sign::Plus),
            ("-", Sign::Minus),
        ];
        let (p_text, sign) = seps
            .iter()
            .find_map(|(s, sg)| pre_trim.strip_suffix(s).map(|rest| (rest, *sg)))
            .unwrap_or((pre_trim, Sign::Plus));
        let p = if p_text.trim().is_empty() {
            Poly::zero(field)
        } else {
            Poly::parse_at(field, p_text, base + 1)?
        };
        let d = Poly::parse_at(field, &inner[d_start..d_end], base + d_start)?;
        let rest = inner[d_end + 1..].trim_start();
        let rest_pos = base + inner.len() - rest.len();
        let rest = rest
            .strip_prefix(')')
            .ok_or_else(|| Error::parse(rest_pos, "expected ')'"))?;
        let rest_t = rest.trim_start();
        let q = if rest_t.is_empty() {
            Poly::one(field)
        } else {
            let q_text = rest_t
                .strip_prefix('/')
                .ok_or_else(|| Error::parse(rest_pos + 1, "expected '/<Q>'"))?;
            Poly::parse_at(field, q_text, base + inner.len() - q_text.len())?
        };
        if q.is_zero() {
            return Err(Error::parse(base + inner.len() - 1, "zero denominator"));
        }
        QuadraticSurd::new(p, q, d, sign)
    }
}

fn check_radicand(d: &Poly) -> Result<()> {
    let f = d.field();
    let Some(deg) = d.degree() else {
        return Err(Error::PerfectSquare("0".into()));
    };
    if d.is_square()?.is_some() {
        return Err(Error::PerfectSquare(d.to_string()));
    }
    if deg % 2 != 0 {
        return Err(Error::OddValuation(-(deg as i64)));
    }
    if !f.is_square(d.leading()) {
        return Err(Error::NonResidue(d.leading(), f.p()));
    }
    Ok(())
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(out, "surd:({}{}sqrt({}))/{}", self.p, s, self.d, self.q)
    }
}

/// A polynomial in `x` with coefficients in K, `coeffs[i]` multiplying `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyOverK {
    coeffs: Vec<Poly>,
}

impl PolyOverK {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Precondition("empty polynomial in x".into()));
        };
        for c in &coeffs {
            first.check_field(c)?;
        }
        Ok(PolyOverK { coeffs })
    }

    pub fn field(&self) -> FieldConfig {
        self.coeffs[0].field()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `f^[k]`, the k-th Taylor coefficient: `Σ C(i,k) c_i x^(i-k)`.
    pub fn hasse_derivative(&self, k: usize) -> PolyOverK {
        let f = self.field();
        let coeffs = if k > self.degree() {
            vec![Poly::zero(f)]
        } else {
            (k..=self.degree())
                .map(|i| self.coeffs[i].scale(binomial_mod(i, k, f)))
                .collect()
        };
        PolyOverK { coeffs }
    }

    /// Horner evaluation on a series.
    pub fn eval(&self, x: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::exact_zero(self.field());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&LaurentSeries::from_poly(c));
        }
        acc
    }
}

fn binomial_mod(n: usize, k: usize, f: FieldConfig) -> u32 {
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for j in 1..row.len() {
            next[j] = f.add(row[j - 1], row[j]);
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// Checks the Newton condition at `x0` in scale-free form: for every `k >= 2`,
/// `v(f^[k](x0)) + (k-1) v(f(x0)) - k v(f'(x0)) > 0`.
pub fn newton_condition(f: &PolyOverK, x0: &LaurentSeries) -> Result<()> {
    let x0 = x0.clone().into_exact();
    let vf = f.eval(&x0).valuation();
    let vd = f.hasse_derivative(1).eval(&x0).valuation();
    let (vf, vd) = match (vf, vd) {
        (Valuation::Infinite, _) => return Ok(()),
        (_, Valuation::Infinite) => {
            return Err(Error::Precondition("f'(x0) is zero".into()));
        }
        (a, b) => (a.exact().unwrap(), b.exact().unwrap()),
    };
    for k in 2..=f.degree() {
        if let Some(vk) = f.hasse_derivative(k).eval(&x0).valuation().exact() {
            if vk + (k as i64 - 1) * vf - k as i64 * vd <= 0 {
                return Err(Error::NewtonCondition {
                    residual: vf,
                    derivative: vd,
                });
            }
        }
    }
    Ok(())
}

/// Newton iteration from `x0` until `v(f(x)) >= target`.
///
/// Iterates are finite series, so every residual is evaluated exactly. The
/// returned series carries the certified distance to the true root,
/// `v(f(x)) - v(f'(x))`, as its precision.
pub fn hensel_root(f: &PolyOverK, x0: &LaurentSeries, target: i64) -> Result<LaurentSeries> {
    newton_condition(f, x0)?;
    let deriv = f.hasse_derivative(1);
    let mut x = x0.clone().into_exact();
    let mut last = None;
    for _ in 0..64 {
        let fx = f.eval(&x);
        let dx = deriv.eval(&x);
        let vd = dx
            .valuation()
            .exact()
            .ok_or_else(|| Error::Precondition("f'(x) vanished during Newton iteration".into()))?;
        let vf = match fx.valuation() {
            Valuation::Infinite => return Ok(x),
            v => v.exact().unwrap(),
        };
        if vf >= target {
            return Ok(x.truncate(vf - vd));
        }
        if last.is_some_and(|l| vf <= l) {
            return Err(Error::precision("Newton iteration", target, vf));
        }
        last = Some(vf);
        let work = target - vd + 2;
        let step = fx.mul(&dx.inv_to(work - vf)?);
        x = x.sub(&step).truncate(work).into_exact();
    }
    Err(Error::precision("Newton iteration", target, last.unwrap_or(i64::MIN)))
}

/// First start point, over prefixes `c0 (1/T)^e + c1 (1/T)^(e+1)` with
/// `e` in `[-2, 2]`, at which the Newton condition holds.
pub fn find_newton_start(f: &PolyOverK) -> Option<LaurentSeries> {
    let fc = f.field();
    for e in -2..=2i64 {
        for c0 in 1..fc.p() {
            for c1 in 0..fc.p() {
                let x0 = LaurentSeries::from_terms(fc, e, vec![c0, c1], Precision::Exact);
                if newton_condition(f, &x0).is_ok() {
                    return Some(x0);
                }
            }
        }
    }
    None
}
