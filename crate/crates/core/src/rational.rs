//! The rational function field k = F_p(T).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::poly::Poly;

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        num.check_field(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den)?;
        let g = if g.is_zero() { Poly::one(den.field()) } else { g };
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lead_inv = den.field().inv_nonzero(den.leading());
        Ok(RationalFn {
            num: num.scale(lead_inv),
            den: den.scale(lead_inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.field());
        RationalFn { num: p, den: one }
    }

    pub fn field(&self) -> FieldConfig {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `v(num/den) = deg den - deg num`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.den.degree().unwrap() as i64 - dn)
    }

    /// Integral part `[num/den]`: the polynomial quotient.
    pub fn integral_part(&self) -> Poly {
        self.num.divmod(&self.den).expect("nonzero denominator").0
    }

    /// Valuation of the fractional part, `None` when the value is a polynomial.
    pub fn frac_valuation(&self) -> Option<i64> {
        let r = self.num.div_rem(&self.den).expect("nonzero denominator");
        r.degree()
            .map(|dr| self.den.degree().unwrap() as i64 - dr as i64)
    }

    pub fn mul_poly(&self, x: &Poly) -> RationalFn {
        RationalFn::new(&self.num * x, self.den.clone()).expect("nonzero denominator")
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("nonzero denominator")
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &other.num, &self.den * &other.den)
            .expect("nonzero denominator")
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RationalFn> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(out, "{}", self.num)
        } else {
            write!(out, "{}/{}", self.num, self.den)
        }
    }
}
