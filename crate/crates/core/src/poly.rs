//! Dense univariate polynomials over F_p, the ring K = F_p[T].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::FieldConfig;

/// A polynomial `c_0 + c_1 T + ... + c_d T^d` with `c_d != 0`.
///
/// The zero polynomial has an empty coefficient vector and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u32>,
    field: FieldConfig,
}

impl Poly {
    pub fn zero(field: FieldConfig) -> Self {
        Poly {
            coeffs: Vec::new(),
            field,
        }
    }

    pub fn one(field: FieldConfig) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: FieldConfig, c: u32) -> Self {
        Self::from_coeffs(field, vec![c % field.p()])
    }

    /// `c * T^k`.
    pub fn monomial(field: FieldConfig, c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % field.p();
        Self::from_coeffs(field, coeffs)
    }

    /// The variable `T`.
    pub fn t(field: FieldConfig) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// Builds from residues, low degree first; trailing zeros are dropped.
    pub fn from_coeffs(field: FieldConfig, mut coeffs: Vec<u32>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= field.p();
        }
        let mut p = Poly { coeffs, field };
        p.trim();
        p
    }

    /// Builds from signed integers reduced mod p, low degree first.
    pub fn from_ints(field: FieldConfig, ints: &[i64]) -> Self {
        Self::from_coeffs(field, ints.iter().map(|&c| field.reduce(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> FieldConfig {
        self.field
    }

    /// Degree; `None` stands for the degree of zero (minus infinity).
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient, 0 for the zero polynomial.
    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Valuation at infinity: `-deg`, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.degree().map(|d| -(d as i64))
    }

    pub(crate) fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(self.field.p(), other.field.p()))
        } else {
            Ok(())
        }
    }

    fn assert_field(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields (p = {} vs p = {})",
            self.field.p(),
            other.field.p()
        );
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            coeffs,
            field: self.field,
        }
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i as u64 % f.p() as u64) as u32))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let inv_lead = f.inv_nonzero(b.leading());
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if da < db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = f.mul(rem[i + db], inv_lead);
            quot[i] = c;
            if c != 0 {
                for (j, &bj) in b.coeffs.iter().enumerate() {
                    rem[i + j] = f.sub(rem[i + j], f.mul(c, bj));
                }
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn div_rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Exact quotient; fails unless `b` divides `self`.
    pub fn div_exact(&self, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Precondition(format!("{b} does not divide {self}")))
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, b: &Poly) -> Result<Poly> {
        Ok(self.ext_gcd(b)?.0)
    }

    /// Returns `(g, u, v)` with `u*self + v*b = g`, `g` monic or zero.
    pub fn ext_gcd(&self, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_field(b)?;
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.leading()) {
            Some(inv) => Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv))),
            None => Ok((r0, s0, t0)),
        }
    }

    /// Square root in F_p[T], if one exists.
    ///
    /// The returned root has leading coefficient in `[1, (p-1)/2]`.
    pub fn is_square(&self) -> Result<Option<Poly>> {
        self.field.require_odd("polynomial square root")?;
        let f = self.field;
        let Some(d) = self.degree() else {
            return Ok(Some(self.clone()));
        };
        if d % 2 == 1 {
            return Ok(None);
        }
        let Some(lead_root) = f.sqrt(self.leading()) else {
            return Ok(None);
        };
        // Top half of the root from the leading d/2 + 1 coefficients,
        // by the same recurrence as the Laurent square root.
        let half = d / 2;
        let inv2b = f.inv_nonzero(f.mul(2, lead_root));
        let mut root = vec![0u32; half + 1];
        root[half] = lead_root;
        for k in 1..=half {
            let mut acc = self.coeff(d - k);
            for j in 1..k {
                acc = f.sub(acc, f.mul(root[half - j], root[half - (k - j)]));
            }
            root[half - k] = f.mul(acc, inv2b);
        }
        let s = Poly::from_coeffs(f, root);
        if &(&s * &s) == self {
            Ok(Some(s))
        } else {
            Ok(None)
        }
    }

    /// Parses the text grammar `c`, `T`, `T^k`, `c*T^k` joined by `+`/`-`.
    pub fn parse(field: FieldConfig, text: &str) -> Result<Poly> {
        PolyParser::new(field, text, 0).parse_all()
    }

    /// Same as [`Poly::parse`] with error positions shifted by `offset`.
    pub(crate) fn parse_at(field: FieldConfig, text: &str, offset: usize) -> Result<Poly> {
        PolyParser::new(field, text, offset).parse_all()
    }
}

struct PolyParser {
    field: FieldConfig,
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl PolyParser {
    fn new(field: FieldConfig, text: &str, offset: usize) -> Self {
        let chars: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + offset, c))
            .collect();
        PolyParser {
            field,
            chars,
            pos: 0,
            end: offset + text.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn here(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.end)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.here();
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| Error::parse(start, "integer literal too large"))?;
            any = true;
            self.pos += 1;
        }
        if any {
            Ok(value)
        } else {
            Err(Error::parse(start, "expected an integer"))
        }
    }

    fn term(&mut self) -> Result<(u32, usize)> {
        let f = self.field;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = (self.number()? % f.p() as u64) as u32;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    let k = self.variable()?;
                    Ok((c, k))
                } else {
                    Ok((c, 0))
                }
            }
            Some('T') => Ok((1, self.variable()?)),
            Some(other) => Err(Error::parse(
                self.here(),
                format!("unexpected character '{other}'"),
            )),
            None => Err(Error::parse(self.here(), "unexpected end of polynomial")),
        }
    }

    fn variable(&mut self) -> Result<usize> {
        if self.peek() != Some('T') {
            return Err(Error::parse(self.here(), "expected 'T'"));
        }
        self.pos += 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.here();
            let k = self.number()?;
            if k > 1 << 20 {
                return Err(Error::parse(at, "exponent too large"));
            }
            Ok(k as usize)
        } else {
            Ok(1)
        }
    }

    fn parse_all(mut self) -> Result<Poly> {
        let f = self.field;
        let mut coeffs: Vec<u32> = Vec::new();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                None if first => return Err(Error::parse(self.here(), "empty polynomial")),
                None => break,
                Some(_) if first => false,
                Some(c) => {
                    return Err(Error::parse(
                        self.here(),
                        format!("expected '+' or '-', found '{c}'"),
                    ))
                }
            };
            first = false;
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            let c = if negate { f.neg(c) } else { c };
            coeffs[k] = f.add(coeffs[k], c);
        }
        Ok(Poly::from_coeffs(f, coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(out, "{c}")?,
                (1, 1) => write!(out, "T")?,
                (1, c) => write!(out, "{c}*T")?,
                (k, 1) => write!(out, "T^{k}")?,
                (k, c) => write!(out, "{c}*T^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Poly[{}](F_{})", self, self.field.p())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let p = f.p() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Poly::from_coeffs(f, acc.into_iter().map(|c| c as u32).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { $tr::$m(&self, &rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { $tr::$m(&self, rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { $tr::$m(self, &rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Every polynomial of degree `<= max_deg`, constant term varying fastest.
///
/// Yields `q^(max_deg + 1)` items.
pub fn enumerate_polys(field: FieldConfig, max_deg: usize) -> impl Iterator<Item = Poly> {
    let p = field.p();
    let len = max_deg + 1;
    let mut digits = vec![0u32; len];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = Poly::from_coeffs(field, digits.clone());
        // odometer increment, least significant digit first
        let mut i = 0;
        loop {
            if i == len {
                done = true;
                break;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

/// Every monic polynomial of degree exactly `deg` (`q^deg` items).
pub fn enumerate_monic(field: FieldConfig, deg: usize) -> impl Iterator<Item = Poly> {
    let lower: Box<dyn Iterator<Item = Poly>> = if deg == 0 {
        Box::new(std::iter::once(Poly::zero(field)))
    } else {
        Box::new(enumerate_polys(field, deg - 1))
    };
    let top = Poly::monomial(field, 1, deg);
    lower.map(move |low| &top + &low)
}

/// Every polynomial of degree exactly `deg` (`(q-1) q^deg` items).
pub fn enumerate_exact_degree(field: FieldConfig, deg: usize) -> impl Iterator<Item = Poly> {
    (1..field.p()).flat_map(move |c| enumerate_monic(field, deg).map(move |m| m.scale(c)))
}

/// Nonzero tuples of `len` polynomials of degree `<= max_deg`, one per
/// scalar class: the first nonzero coordinate is monic.
pub fn enumerate_points(field: FieldConfig, len: usize, max_deg: usize) -> impl Iterator<Item = Vec<Poly>> {
    let width = max_deg + 1;
    (0..len).flat_map(move |k| {
        let tail = (len - k - 1) * width;
        let count = (field.p() as u64).pow(tail as u32);
        (0..=max_deg).flat_map(move |d| enumerate_monic(field, d)).flat_map(move |lead| {
            (0..count).map(move |mut idx| {
                let mut coords = vec![Poly::zero(field); k];
                coords.push(lead.clone());
                for _ in k + 1..len {
                    let mut c = Vec::with_capacity(width);
                    for _ in 0..width {
                        c.push((idx % field.p() as u64) as u32);
                        idx /= field.p() as u64;
                    }
                    coords.push(Poly::from_coeffs(field, c));
                }
                coords
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn fp(p: u64) -> FieldConfig {
        FieldConfig::new(p).unwrap()
    }

    #[test]
    fn point_classes_cover_projective_space() {
        let f = fp(3);
        let pts: Vec<Vec<Poly>> = enumerate_points(f, 2, 1).collect();
        // (9^2 - 1) / 2 scalar classes
        assert_eq!(pts.len(), 40);
        let set: HashSet<Vec<Poly>> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 40);
        for p in &pts {
            let lead = p.iter().find(|c| !c.is_zero()).unwrap();
            assert_eq!(lead.leading(), 1);
        }
    }

    #[test]
    fn product_over_f3() {
        let f = fp(3);
        let a = Poly::parse(f, "T+1").unwrap();
        let b = Poly::parse(f, "T+2").unwrap();
        assert_eq!(&a * &b, Poly::parse(f, "T^2+2").unwrap());
    }

    #[test]
    fn long_division() {
        let f = fp(5);
        let a = Poly::parse(f, "T^2+1").unwrap();
        let (q, r) = a.divmod(&Poly::t(f)).unwrap();
        assert_eq!(q, Poly::t(f));
        assert_eq!(r, Poly::one(f));
        assert_eq!(a.divmod(&Poly::zero(f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn bezout_pair() {
        let f3 = fp(3);
        let (g, u, v) = Poly::parse(f3, "T^2+1")
            .unwrap()
            .ext_gcd(&Poly::parse(f3, "T+2").unwrap())
            .unwrap();
        assert!(g.is_one());
        assert_eq!(
            &(&u * &Poly::parse(f3, "T^2+1").unwrap()) + &(&v * &Poly::parse(f3, "T+2").unwrap()),
            g
        );
        let f = fp(5);
        let a = Poly::parse(f, "T^2+1").unwrap();
        let b = Poly::parse(f, "T+2").unwrap();
        let (g, u, v) = a.ext_gcd(&b).unwrap();
        // -2 is a root of T^2+1 mod 5, so the gcd is T+2 itself
        assert_eq!(g, b);
        assert_eq!(&(&u * &a) + &(&v * &b), g);
    }

    #[test]
    fn square_roots() {
        let f = fp(5);
        let s = Poly::parse(f, "T^2+4*T+4").unwrap().is_square().unwrap();
        assert_eq!(s, Some(Poly::parse(f, "T+2").unwrap()));
        assert_eq!(
            Poly::constant(f, 4).is_square().unwrap(),
            Some(Poly::constant(f, 2))
        );
        assert_eq!(Poly::zero(f).is_square().unwrap(), Some(Poly::zero(f)));
        assert!(Poly::one(fp(2)).is_square().is_err());
    }

    #[test]
    fn t2_plus_1_not_square_over_f3_exhaustive() {
        let f = fp(3);
        let target = Poly::parse(f, "T^2+1").unwrap();
        let found = enumerate_polys(f, 1).any(|s| &s * &s == target);
        assert!(!found);
        assert_eq!(target.is_square().unwrap(), None);
    }

    #[test]
    fn enumeration_counts() {
        let f3 = fp(3);
        let consts: Vec<_> = enumerate_polys(f3, 0).collect();
        assert_eq!(consts, vec![Poly::zero(f3), Poly::one(f3), Poly::constant(f3, 2)]);
        assert_eq!(enumerate_polys(f3, 1).count(), 9);
        let f5 = fp(5);
        let set: HashSet<Poly> = enumerate_polys(f5, 2).collect();
        assert_eq!(set.len(), 125);
        assert_eq!(enumerate_monic(f5, 2).count(), 25);
        assert_eq!(enumerate_exact_degree(f5, 2).count(), 4 * 25);
        assert!(enumerate_exact_degree(f5, 2).all(|x| x.degree() == Some(2)));
    }

    #[test]
    fn parse_and_display() {
        let f = fp(7);
        let a = Poly::parse(f, " T^2 + 2*T - 1 ").unwrap();
        assert_eq!(a.to_string(), "T^2+2*T+6");
        assert_eq!(Poly::parse(f, &a.to_string()).unwrap(), a);
        assert_eq!(Poly::parse(f, "-T").unwrap(), Poly::t(f).scale(6));
        assert_eq!(Poly::parse(f, "10").unwrap(), Poly::constant(f, 3));
        assert_eq!(Poly::parse(f, "0").unwrap(), Poly::zero(f));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let f = fp(7);
        match Poly::parse(f, "T^2 + *T") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Poly::parse(f, ""), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse(f, "T^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(Poly::parse(f, "2T"), Err(Error::Parse { pos: 1, .. })));
    }
}
