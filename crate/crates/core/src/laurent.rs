//! Truncated Laurent series in `1/T`: the completion k_∞ = F_p((1/T)).
//!
//! A series stores the coefficients of `(1/T)^e` starting at its leading
//! exponent, together with an absolute precision `N`: every coefficient with
//! `e < N` is certified, nothing is known beyond. Precision propagates
//! conservatively:
//!
//! * add/sub: `min(N_a, N_b)`
//! * mul: `min(N_a + v(b), N_b + v(a))`
//! * inv: `N_a - 2 v(a)`
//! * sqrt: `N_a - v(a) / 2`

use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::{Certainty, Valuation};
use crate::field::FieldConfig;
use crate::poly::Poly;
use crate::rational::RationalFn;

/// Absolute precision. `Exact` series are finite sums known completely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Precision {
    Abs(i64),
    Exact,
}

impl Precision {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Precision::Abs(n) => Some(*n),
            Precision::Exact => None,
        }
    }

    pub fn shift(&self, k: i64) -> Precision {
        match self {
            Precision::Abs(n) => Precision::Abs(n + k),
            Precision::Exact => Precision::Exact,
        }
    }

    /// `self >= n`.
    pub fn covers(&self, n: i64) -> bool {
        match self {
            Precision::Abs(m) => *m >= n,
            Precision::Exact => true,
        }
    }

    /// Finite value for error messages (`i64::MAX` for exact).
    pub fn as_i64(&self) -> i64 {
        self.finite().unwrap_or(i64::MAX)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Abs(n) => write!(out, "{n}"),
            Precision::Exact => write!(out, "inf"),
        }
    }
}

/// Element of F_p((1/T)) known to a certified precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    field: FieldConfig,
    /// Exponent (in `1/T`) of `coeffs[0]`.
    lead: i64,
    /// `coeffs[0] != 0` and the last entry is nonzero, unless empty.
    coeffs: Vec<u32>,
    prec: Precision,
}

impl LaurentSeries {
    /// Builds from coefficients of `(1/T)^lead, (1/T)^(lead+1), ...`.
    ///
    /// Coefficients at or beyond the precision are discarded.
    pub fn from_terms(field: FieldConfig, lead: i64, coeffs: Vec<u32>, prec: Precision) -> Self {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % field.p()).collect();
        if let Precision::Abs(n) = prec {
            let keep = (n - lead).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let skip = coeffs.iter().take_while(|&&c| c == 0).count();
        coeffs.drain(..skip);
        let lead = if coeffs.is_empty() { 0 } else { lead + skip as i64 };
        LaurentSeries {
            field,
            lead,
            coeffs,
            prec,
        }
    }

    /// Zero certified through precision `prec`.
    pub fn zero(field: FieldConfig, prec: Precision) -> Self {
        Self::from_terms(field, 0, Vec::new(), prec)
    }

    pub fn exact_zero(field: FieldConfig) -> Self {
        Self::zero(field, Precision::Exact)
    }

    pub fn one(field: FieldConfig) -> Self {
        Self::from_terms(field, 0, vec![1], Precision::Exact)
    }

    /// `c * (1/T)^e`, exact.
    pub fn monomial(field: FieldConfig, c: u32, e: i64) -> Self {
        Self::from_terms(field, e, vec![c], Precision::Exact)
    }

    /// A polynomial as an exact series.
    pub fn from_poly(p: &Poly) -> Self {
        let field = p.field();
        match p.degree() {
            None => Self::exact_zero(field),
            Some(d) => {
                let coeffs = p.coeffs().iter().rev().copied().collect();
                Self::from_terms(field, -(d as i64), coeffs, Precision::Exact)
            }
        }
    }

    /// Expansion of `num/den` by long division in descending powers of `T`.
    ///
    /// When `den` is a power of `T` the expansion is finite and the result is
    /// exact.
    pub fn from_rational(r: &RationalFn, prec: i64) -> Self {
        let field = r.field();
        let num = r.num();
        let den = r.den();
        let dd = den.degree().unwrap();
        if den.coeffs()[..dd].iter().all(|&c| c == 0) {
            return Self::from_poly(num).shift(dd as i64);
        }
        let Some(dn) = num.degree() else {
            return Self::zero(field, Precision::Abs(prec));
        };
        let lead = dd as i64 - dn as i64;
        let count = (prec - lead).max(0) as usize;
        let n_rel = |k: usize| if k <= dn { num.coeff(dn - k) } else { 0 };
        let d_rel: Vec<u32> = (0..=dd).map(|k| den.coeff(dd - k)).collect();
        let inv_d0 = field.inv_nonzero(d_rel[0]);
        let mut c: Vec<u32> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = n_rel(k);
            for j in 1..=k.min(dd) {
                acc = field.sub(acc, field.mul(d_rel[j], c[k - j]));
            }
            c.push(field.mul(acc, inv_d0));
        }
        Self::from_terms(field, lead, c, Precision::Abs(prec))
    }

    #[inline]
    pub fn field(&self) -> FieldConfig {
        self.field
    }

    #[inline]
    pub fn prec(&self) -> Precision {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Precision::Exact
    }

    /// True when no nonzero coefficient is certified.
    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first stored coefficient, if any.
    pub fn lead_exp(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lead)
        }
    }

    /// Stored coefficients, starting at [`lead_exp`](Self::lead_exp).
    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.coeffs.first().copied()
    }

    /// Coefficient of `(1/T)^e`, `None` when `e` is beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<u32> {
        if !self.prec.covers(e + 1) {
            return None;
        }
        let i = e - self.lead;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Some(0)
        } else {
            Some(self.coeffs[i as usize])
        }
    }

    /// `v(α)`; a series that vanishes to precision `N` reports `>= N`.
    pub fn valuation(&self) -> Valuation {
        if let Some(v) = self.lead_exp() {
            Valuation::Exact(v)
        } else {
            match self.prec {
                Precision::Abs(n) => Valuation::AtLeast(n),
                Precision::Exact => Valuation::Infinite,
            }
        }
    }

    /// Absolute value `q^(-v)`, when certified.
    pub fn abs(&self) -> Option<crate::QExponent> {
        self.valuation().abs()
    }

    /// Lowers the precision to `min(prec, n)`.
    pub fn truncate(&self, n: i64) -> Self {
        let prec = self.prec.min(Precision::Abs(n));
        Self::from_terms(self.field, self.lead, self.coeffs.clone(), prec)
    }

    /// Declares the stored terms exact (used for finite approximants).
    pub fn into_exact(self) -> Self {
        LaurentSeries {
            prec: Precision::Exact,
            ..self
        }
    }

    /// Multiplication by `(1/T)^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.coeffs.is_empty() {
            out.lead += k;
        }
        out.prec = self.prec.shift(k);
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self::from_terms(
            f,
            self.lead,
            self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            self.prec,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(1))
    }

    fn assert_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "series over different fields (p = {} vs p = {})",
            self.field.p(),
            other.field.p()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        self.assert_field(other);
        let f = self.field;
        let prec = self.prec.min(other.prec);
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return Self::zero(f, prec);
        }
        let lo = match (self.lead_exp(), other.lead_exp()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let end_of = |s: &Self| s.lead + s.coeffs.len() as i64;
        let mut hi = end_of(self).max(end_of(other));
        if let Precision::Abs(n) = prec {
            hi = hi.min(n);
        }
        let get = |s: &Self, e: i64| -> u32 {
            let i = e - s.lead;
            if s.coeffs.is_empty() || i < 0 || i >= s.coeffs.len() as i64 {
                0
            } else {
                s.coeffs[i as usize]
            }
        };
        let coeffs = (lo..hi.max(lo))
            .map(|e| {
                let b = get(other, e);
                let b = if subtract { f.neg(b) } else { b };
                f.add(get(self, e), b)
            })
            .collect();
        Self::from_terms(f, lo, coeffs, prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_field(other);
        let f = self.field;
        let va = self.valuation();
        let vb = other.valuation();
        let term = |prec: Precision, v: Valuation| match v.lower_bound() {
            None => Precision::Exact,
            Some(v) => prec.shift(v),
        };
        let prec = term(self.prec, vb).min(term(other.prec, va));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(f, prec);
        }
        let lead = self.lead + other.lead;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match prec {
            Precision::Abs(n) => ((n - lead).max(0) as usize).min(full),
            Precision::Exact => full,
        };
        let p = f.p() as u64;
        let mut acc = vec![0u64; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_terms(f, lead, acc.into_iter().map(|c| c as u32).collect(), prec)
    }

    pub fn mul_poly(&self, x: &Poly) -> Self {
        self.mul(&Self::from_poly(x))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1/α` at the propagated precision `N - 2 v(α)`.
    ///
    /// Exact inputs are only invertible here when they are monomials; use
    /// [`inv_to`](Self::inv_to) to request a finite precision.
    pub fn inv(&self) -> Result<Self> {
        match self.prec {
            Precision::Exact if self.coeffs.len() == 1 => {
                let c = self.field.inv_nonzero(self.coeffs[0]);
                Ok(Self::monomial(self.field, c, -self.lead))
            }
            Precision::Exact if self.coeffs.is_empty() => Err(Error::InverseOfZero(i64::MAX)),
            Precision::Exact => Err(Error::UnboundedPrecision("series inverse")),
            Precision::Abs(n) => self.inv_impl(n - 2 * self.lead_or_zero_err()?),
        }
    }

    /// `1/α` to absolute precision `min(target, N - 2 v(α))`.
    pub fn inv_to(&self, target: i64) -> Result<Self> {
        let v = self.lead_or_zero_err()?;
        let prec = match self.prec {
            Precision::Abs(n) => target.min(n - 2 * v),
            Precision::Exact => target,
        };
        self.inv_impl(prec)
    }

    fn lead_or_zero_err(&self) -> Result<i64> {
        self.lead_exp()
            .ok_or(Error::InverseOfZero(self.prec.as_i64()))
    }

    fn inv_impl(&self, out_prec: i64) -> Result<Self> {
        let f = self.field;
        let v = self.lead_or_zero_err()?;
        let count = (out_prec + v).max(0) as usize;
        let inv_a0 = f.inv_nonzero(self.coeffs[0]);
        let mut b: Vec<u32> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = if k == 0 { 1 } else { 0 };
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = f.sub(acc, f.mul(self.coeffs[j], b[k - j]));
            }
            b.push(f.mul(acc, inv_a0));
        }
        Ok(Self::from_terms(f, -v, b, Precision::Abs(out_prec)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Square root with leading coefficient in `[1, (p-1)/2]`.
    ///
    /// Computed coefficient by coefficient from `β² = α`, which is the
    /// binomial expansion of `sqrt(1 + x)` for `v(x) >= 1`.
    pub fn sqrt(&self) -> Result<Self> {
        let f = self.field;
        f.require_odd("series square root")?;
        let Some(v) = self.lead_exp() else {
            return Err(Error::SqrtOfZero(self.prec.as_i64()));
        };
        if v % 2 != 0 {
            return Err(Error::OddValuation(v));
        }
        let a0 = self.coeffs[0];
        let b0 = f.sqrt(a0).ok_or(Error::NonResidue(a0, f.p()))?;
        let n = match self.prec {
            Precision::Abs(n) => n,
            Precision::Exact => {
                if self.coeffs.len() == 1 {
                    return Ok(Self::monomial(f, b0, v / 2));
                }
                return Err(Error::UnboundedPrecision("series square root"));
            }
        };
        let out_prec = n - v / 2;
        let count = (n - v).max(0) as usize;
        let inv_2b0 = f.inv_nonzero(f.mul(2, b0));
        let a = |k: usize| self.coeffs.get(k).copied().unwrap_or(0);
        let mut b: Vec<u32> = Vec::with_capacity(count);
        for k in 0..count {
            if k == 0 {
                b.push(b0);
                continue;
            }
            let mut acc = a(k);
            for j in 1..k {
                acc = f.sub(acc, f.mul(b[j], b[k - j]));
            }
            b.push(f.mul(acc, inv_2b0));
        }
        Ok(Self::from_terms(f, v / 2, b, Precision::Abs(out_prec)))
    }

    /// Square root after lowering an exact input to precision `n`.
    pub fn sqrt_to(&self, n: i64) -> Result<Self> {
        self.truncate(n).sqrt()
    }

    fn require_integral_prec(&self, what: &str) -> Result<()> {
        if self.prec.covers(1) {
            Ok(())
        } else {
            Err(Error::precision(what.to_string(), 1, self.prec.as_i64()))
        }
    }

    /// `[α]`: the polynomial part (all terms `(1/T)^e` with `e <= 0`).
    pub fn integral_part(&self) -> Result<Poly> {
        self.require_integral_prec("integral part")?;
        let f = self.field;
        if self.coeffs.is_empty() || self.lead > 0 {
            return Ok(Poly::zero(f));
        }
        let deg = (-self.lead) as usize;
        let mut coeffs = vec![0u32; deg + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let e = self.lead + i as i64;
            if e > 0 {
                break;
            }
            coeffs[(-e) as usize] = c;
        }
        Ok(Poly::from_coeffs(f, coeffs))
    }

    /// `α - [α]`.
    pub fn frac_part(&self) -> Result<Self> {
        self.require_integral_prec("fractional part")?;
        let keep_from = (1 - self.lead).max(0) as usize;
        if self.coeffs.is_empty() || keep_from >= self.coeffs.len() {
            return Ok(Self::zero(self.field, self.prec));
        }
        Ok(Self::from_terms(
            self.field,
            self.lead + keep_from as i64,
            self.coeffs[keep_from..].to_vec(),
            self.prec,
        ))
    }

    /// `||α|| = |α - [α]|` as a valuation (always `>= 1`).
    pub fn frac_norm(&self) -> Result<Valuation> {
        Ok(self.frac_part()?.valuation())
    }

    /// Whether `α ∈ K`, three-valued.
    pub fn is_polynomial(&self) -> Result<Certainty> {
        Ok(match self.frac_norm()? {
            Valuation::Infinite => Certainty::Yes,
            Valuation::Exact(_) => Certainty::No,
            Valuation::AtLeast(_) => Certainty::Unknown,
        })
    }

    /// The exact value as `num / T^k`; `None` unless the series is exact.
    pub fn to_rational(&self) -> Option<RationalFn> {
        if !self.is_exact() {
            return None;
        }
        let f = self.field;
        let Some(v) = self.lead_exp() else {
            return Some(RationalFn::from_poly(Poly::zero(f)));
        };
        let last = v + self.coeffs.len() as i64 - 1;
        let k = last.max(0);
        // Σ c_e T^(-e) = Σ c_e T^(k-e) / T^k
        let mut num = vec![0u32; (k - v) as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            num[(k - (v + i as i64)) as usize] = c;
        }
        let den = Poly::monomial(f, 1, k as usize);
        Some(RationalFn::new(Poly::from_coeffs(f, num), den).expect("nonzero denominator"))
    }

    /// True when both series certify the same coefficients for all `e < n`.
    pub fn agrees_below(&self, other: &Self, n: i64) -> bool {
        if !self.prec.covers(n) || !other.prec.covers(n) {
            return false;
        }
        let lo = [self.lead_exp(), other.lead_exp()]
            .into_iter()
            .flatten()
            .min()
            .unwrap_or(n);
        (lo..n).all(|e| self.coeff(e) == other.coeff(e))
    }

    /// Parses `rat:<num>/<den>@<prec>` or `ser:<exp0>:<c0>,<c1>,...@<prec>`.
    ///
    /// `@inf` marks an exact series.
    pub fn parse(field: FieldConfig, text: &str) -> Result<Self> {
        let t = text.trim_end();
        let lead_ws = t.len() - t.trim_start().len();
        let t = t.trim_start();
        if let Some(body) = t.strip_prefix("rat:") {
            let base = lead_ws + 4;
            let (r, prec) = parse_rational_spec(field, body, base)?;
            match prec {
                Precision::Abs(n) => Ok(Self::from_rational(&r, n)),
                Precision::Exact => {
                    let s = Self::from_rational(&r, 0);
                    if s.is_exact() {
                        Ok(s)
                    } else {
                        Err(Error::parse(base, "only a T^k denominator has an exact expansion"))
                    }
                }
            }
        } else if let Some(body) = t.strip_prefix("ser:") {
            let base = lead_ws + 4;
            let (main, prec) = split_prec(body, base)?;
            let colon = main
                .find(':')
                .ok_or_else(|| Error::parse(base, "expected ':' after the leading exponent"))?;
            let exp0: i64 = main[..colon]
                .trim()
                .parse()
                .map_err(|_| Error::parse(base, "invalid leading exponent"))?;
            let list = &main[colon + 1..];
            let mut coeffs = Vec::new();
            if !list.trim().is_empty() {
                let mut off = base + colon + 1;
                for item in list.split(',') {
                    let c: i64 = item
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(off, format!("invalid coefficient '{}'", item.trim())))?;
                    coeffs.push(field.reduce(c));
                    off += item.len() + 1;
                }
            }
            Ok(Self::from_terms(field, exp0, coeffs, prec))
        } else {
            Err(Error::parse(lead_ws, "expected 'rat:' or 'ser:'"))
        }
    }

    /// The `ser:` text form; re-parses to an identical series.
    pub fn to_spec(&self) -> String {
        let lead = if self.coeffs.is_empty() {
            self.prec.finite().unwrap_or(0)
        } else {
            self.lead
        };
        let list: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("ser:{}:{}@{}", lead, list.join(","), self.prec)
    }
}

fn split_prec(body: &str, base: usize) -> Result<(&str, Precision)> {
    let at = body
        .rfind('@')
        .ok_or_else(|| Error::parse(base + body.len(), "missing '@<prec>'"))?;
    let ptxt = body[at + 1..].trim();
    let prec = if ptxt == "inf" {
        Precision::Exact
    } else {
        Precision::Abs(
            ptxt.parse()
                .map_err(|_| Error::parse(base + at + 1, format!("invalid precision '{ptxt}'")))?,
        )
    };
    Ok((&body[..at], prec))
}

/// The exact element behind a `rat:` spec; the precision suffix is ignored.
pub fn parse_rational(field: FieldConfig, text: &str) -> Result<RationalFn> {
    let lead_ws = text.len() - text.trim_start().len();
    let body = text
        .trim()
        .strip_prefix("rat:")
        .ok_or_else(|| Error::parse(lead_ws, "expected 'rat:'"))?;
    Ok(parse_rational_spec(field, body, lead_ws + 4)?.0)
}

pub(crate) fn parse_rational_spec(
    field: FieldConfig,
    body: &str,
    base: usize,
) -> Result<(RationalFn, Precision)> {
    let (main, prec) = split_prec(body, base)?;
    let (num, den) = match main.find('/') {
        Some(i) => (
            Poly::parse_at(field, &main[..i], base)?,
            Poly::parse_at(field, &main[i + 1..], base + i + 1)?,
        ),
        None => (Poly::parse_at(field, main, base)?, Poly::one(field)),
    };
    if den.is_zero() {
        return Err(Error::parse(base, "zero denominator"));
    }
    Ok((RationalFn::new(num, den)?, prec))
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = -(self.lead + i as i64);
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(out, "{c}")?,
                (1, 1) => write!(out, "T")?,
                (k, 1) => write!(out, "T^{k}")?,
                (1, c) => write!(out, "{c}*T")?,
                (k, c) => write!(out, "{c}*T^{k}")?,
            }
        }
        match self.prec {
            Precision::Abs(n) => {
                if !first {
                    write!(out, " + ")?;
                }
                write!(out, "O(T^{})", -n)
            }
            Precision::Exact if first => write!(out, "0"),
            Precision::Exact => Ok(()),
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Laurent[{}](F_{})", self, self.field.p())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldConfig {
        FieldConfig::new(p).unwrap()
    }

    fn poly(f: FieldConfig, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    fn rat(f: FieldConfig, n: &str, d: &str) -> RationalFn {
        RationalFn::new(poly(f, n), poly(f, d)).unwrap()
    }

    #[test]
    fn valuations() {
        let f = fp(5);
        assert_eq!(LaurentSeries::monomial(f, 1, 1).valuation(), Valuation::Exact(1));
        assert_eq!(
            LaurentSeries::from_poly(&poly(f, "T^2+1")).valuation(),
            Valuation::Exact(-2)
        );
        assert_eq!(
            LaurentSeries::zero(f, Precision::Abs(10)).valuation(),
            Valuation::AtLeast(10)
        );
    }

    #[test]
    fn integral_parts() {
        let f3 = fp(3);
        let a = LaurentSeries::from_poly(&poly(f3, "T^2+1"));
        assert_eq!(a.integral_part().unwrap(), poly(f3, "T^2+1"));
        let b = LaurentSeries::from_rational(&rat(f3, "T^2+1", "T"), 4);
        assert_eq!(b.integral_part().unwrap(), Poly::t(f3));
        let f5 = fp(5);
        let s = LaurentSeries::from_poly(&poly(f5, "T^2+4")).sqrt_to(8).unwrap();
        assert_eq!(s.integral_part().unwrap(), Poly::t(f5));
        let low = LaurentSeries::from_rational(&rat(f5, "1", "T+1"), 0);
        assert!(matches!(
            low.integral_part(),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn fractional_norms() {
        let f3 = fp(3);
        let t3 = LaurentSeries::from_poly(&poly(f3, "T^3"));
        assert_eq!(t3.frac_norm().unwrap(), Valuation::Infinite);
        assert_eq!(t3.is_polynomial().unwrap(), Certainty::Yes);
        let r = LaurentSeries::from_rational(&rat(f3, "1", "T+1"), 6);
        assert_eq!(r.frac_norm().unwrap(), Valuation::Exact(1));
        assert_eq!(r.is_polynomial().unwrap(), Certainty::No);
        let z = LaurentSeries::from_poly(&poly(f3, "T^2+1")).truncate(6);
        assert_eq!(z.is_polynomial().unwrap(), Certainty::Unknown);
    }

    #[test]
    fn inverse_of_t_plus_one() {
        let f = fp(3);
        let a = LaurentSeries::from_poly(&poly(f, "T+1")).truncate(3);
        let inv = a.inv().unwrap();
        // prec 3 - 2*(-1) = 5
        assert_eq!(inv.prec(), Precision::Abs(5));
        assert_eq!(inv.lead_exp(), Some(1));
        assert_eq!(inv.coefficients(), &[1, 2, 1, 2]);
        let back = inv.mul(&LaurentSeries::from_poly(&poly(f, "T+1")));
        assert!(back.agrees_below(&LaurentSeries::one(f), back.prec().finite().unwrap()));
        assert!(LaurentSeries::zero(f, Precision::Abs(4)).inv().is_err());
    }

    #[test]
    fn products_and_cancellation() {
        let f = fp(7);
        let t1 = LaurentSeries::monomial(f, 1, 1);
        assert_eq!(t1.mul(&t1).valuation(), Valuation::Exact(2));
        let a = LaurentSeries::from_rational(&rat(f, "T+3", "T^2+1"), 9);
        let z = a.add(&a.neg());
        assert!(z.is_zero_to_prec());
        assert_eq!(z.prec(), Precision::Abs(9));
    }

    #[test]
    fn rational_expansion() {
        let f3 = fp(3);
        let a = LaurentSeries::from_rational(&rat(f3, "T^2+1", "T"), 4);
        assert_eq!(a.lead_exp(), Some(-1));
        assert_eq!(a.coefficients(), &[1, 0, 1]);
        assert!(a.prec().covers(4));
        assert_eq!(a.to_rational().unwrap(), rat(f3, "T^2+1", "T"));
        let inv_t2 = LaurentSeries::from_rational(&rat(f3, "1", "T^2"), 6);
        assert_eq!(inv_t2.lead_exp(), Some(2));
        assert_eq!(inv_t2.coefficients(), &[1]);
        let f5 = fp(5);
        let b = LaurentSeries::from_rational(&rat(f5, "1", "T^2+1"), 8);
        let back = b.mul(&LaurentSeries::from_poly(&poly(f5, "T^2+1")));
        assert_eq!(back.prec(), Precision::Abs(6));
        assert!(back.agrees_below(&LaurentSeries::one(f5), 6));
        // alternating signs: T^-2 - T^-4 + T^-6 - ...
        assert_eq!(b.coefficients(), &[1, 0, 4, 0, 1]);
    }

    #[test]
    fn sqrt_examples() {
        let f5 = fp(5);
        assert_eq!(
            LaurentSeries::one(f5).sqrt().unwrap(),
            LaurentSeries::one(f5)
        );
        let s = LaurentSeries::from_poly(&poly(f5, "T^2+4")).sqrt_to(8).unwrap();
        assert_eq!(s.prec(), Precision::Abs(9));
        assert_eq!(s.lead_exp(), Some(-1));
        // T + 2 T^-1 + 3 T^-3 + ...
        assert_eq!(s.coeff(-1), Some(1));
        assert_eq!(s.coeff(1), Some(2));
        assert_eq!(s.coeff(3), Some(3));
        let sq = s.mul(&s);
        assert!(sq.agrees_below(&LaurentSeries::from_poly(&poly(f5, "T^2+4")), 8));
    }

    #[test]
    fn sqrt_errors() {
        let f5 = fp(5);
        let t = LaurentSeries::from_poly(&Poly::t(f5)).truncate(6);
        assert_eq!(t.sqrt(), Err(Error::OddValuation(-1)));
        let two = LaurentSeries::monomial(f5, 2, 0).truncate(4);
        assert_eq!(two.sqrt(), Err(Error::NonResidue(2, 5)));
        let f2 = fp(2);
        assert!(matches!(
            LaurentSeries::one(f2).sqrt(),
            Err(Error::CharacteristicTwo(_))
        ));
        assert!(matches!(
            LaurentSeries::zero(f5, Precision::Abs(3)).sqrt(),
            Err(Error::SqrtOfZero(3))
        ));
    }

    #[test]
    fn text_round_trip() {
        let f = fp(5);
        let a = LaurentSeries::parse(f, "rat:T^2+1/T^3+2@12").unwrap();
        let b = LaurentSeries::parse(f, &a.to_spec()).unwrap();
        assert_eq!(a, b);
        let c = LaurentSeries::parse(f, "ser:-1:1,0,2@6").unwrap();
        assert_eq!(c.coeff(1), Some(2));
        assert_eq!(c.prec(), Precision::Abs(6));
        let z = LaurentSeries::parse(f, "ser:0:@10").unwrap();
        assert_eq!(z.valuation(), Valuation::AtLeast(10));
        assert_eq!(LaurentSeries::parse(f, &z.to_spec()).unwrap(), z);
        let p = LaurentSeries::parse(f, "rat:T^2@inf").unwrap();
        assert!(p.is_exact());
        assert!(matches!(
            LaurentSeries::parse(f, "rat:1/T"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            LaurentSeries::parse(f, "ser:1:1,x@4"),
            Err(Error::Parse { pos: 8, .. })
        ));
    }
}
