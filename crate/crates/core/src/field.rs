//! The prime field F_p.
//!
//! Elements are plain `u32` residues in `[0, p)`; all arithmetic goes through a
//! [`FieldConfig`], which also carries the order `q` used by absolute values.

use crate::error::{Error, Result};

/// Ground field parameters.
///
/// `q` is kept separate from `p` so that every absolute value is written in
/// terms of the field order; for the prime fields built here they coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldConfig {
    p: u32,
    q: u64,
}

impl FieldConfig {
    /// Largest accepted modulus; keeps products of residues inside `u64`.
    pub const MAX_P: u32 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= Self::MAX_P as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldConfig {
            p: p as u32,
            q: p,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub(crate) fn require_odd(&self, what: &'static str) -> Result<()> {
        if self.is_odd() {
            Ok(())
        } else {
            Err(Error::CharacteristicTwo(what))
        }
    }

    #[inline]
    pub fn reduce(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// Inverse of a residue already known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: u32) -> u32 {
        self.inv(a).expect("inverse of zero residue")
    }

    /// `c` read as an integer in `[1, (p-1)/2]`.
    pub fn is_canonical_sign(&self, c: u32) -> bool {
        c != 0 && (!self.is_odd() || c <= (self.p - 1) / 2)
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || !self.is_odd() || self.pow(a, (self.p as u64 - 1) / 2) == 1
    }

    /// Square root with representative in `[1, (p-1)/2]` (or 0 for 0).
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        let r = tonelli_shanks(self, a);
        Some(if self.is_canonical_sign(r) { r } else { self.neg(r) })
    }

    /// Iterator over all residues `0..p`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.p
    }

    /// Signed representative in `(-p/2, p/2]`, used for display.
    pub fn signed(&self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn tonelli_shanks(f: &FieldConfig, a: u32) -> u32 {
    let p = f.p as u64;
    if p == 2 {
        return a;
    }
    if p % 4 == 3 {
        return f.pow(a, (p + 1) / 4);
    }
    let mut s = 0;
    let mut q = p - 1;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..f.p).find(|&z| !f.is_square(z)).unwrap();
    let mut m = s;
    let mut c = f.pow(z, q);
    let mut t = f.pow(a, q);
    let mut r = f.pow(a, q.div_ceil(2));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = f.mul(tt, tt);
            i += 1;
        }
        let b = f.pow(c, 1u64 << (m - i - 1));
        m = i;
        c = f.mul(b, b);
        t = f.mul(t, c);
        r = f.mul(r, b);
    }
    r
}
