//! Seeded generators for randomized instances.

#![allow(dead_code)]

use fqdioph::algebraic::{hensel_root, find_newton_start, PolyOverK};
use fqdioph::quadform::BinaryQuadraticForm;
use fqdioph::{FieldConfig, LaurentSeries, Poly, Precision, QuadraticSurd, RationalFn, Sign};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fp(p: u64) -> FieldConfig {
    FieldConfig::new(p).unwrap()
}

/// Uniform polynomial of degree `<= deg`.
pub fn poly(rng: &mut TestRng, f: FieldConfig, deg: usize) -> Poly {
    Poly::from_coeffs(f, (0..=deg).map(|_| rng.gen_range(0..f.p())).collect())
}

pub fn nonzero_poly(rng: &mut TestRng, f: FieldConfig, deg: usize) -> Poly {
    loop {
        let p = poly(rng, f, deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Irrational quadratic `(P ± sqrt D)/Q` with `deg D = 2 * half`.
pub fn surd(rng: &mut TestRng, f: FieldConfig, half: usize) -> QuadraticSurd {
    loop {
        let s = rng.gen_range(1..f.p());
        let mut d = poly(rng, f, 2 * half - 1);
        d = &d + &Poly::monomial(f, f.mul(s, s), 2 * half);
        let p = poly(rng, f, half);
        let q = nonzero_poly(rng, f, half);
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        if let Ok(a) = QuadraticSurd::new(p, q, d, sign) {
            return a;
        }
    }
}

/// Random series `c T^(-e) + ...` with `e` in `-2..=2`.
pub fn series(rng: &mut TestRng, f: FieldConfig, prec: i64) -> LaurentSeries {
    let lead = rng.gen_range(-2..=2i64);
    let mut coeffs: Vec<u32> = (0..(prec - lead).max(1)).map(|_| rng.gen_range(0..f.p())).collect();
    coeffs[0] = rng.gen_range(1..f.p());
    LaurentSeries::from_terms(f, lead, coeffs, Precision::Abs(prec))
}

pub fn rational(rng: &mut TestRng, f: FieldConfig) -> RationalFn {
    let den = nonzero_poly(rng, f, 2);
    RationalFn::new(poly(rng, f, 2), den).unwrap()
}

/// One coefficient from surds, rationals or random series.
pub fn mixed(rng: &mut TestRng, f: FieldConfig, prec: i64) -> LaurentSeries {
    match rng.gen_range(0..3) {
        0 => surd(rng, f, 1).to_series(prec).unwrap(),
        1 => LaurentSeries::from_rational(&rational(rng, f), prec),
        _ => series(rng, f, prec),
    }
}

/// Integral form with `sqrt δ` in the completion, `deg δ` in `degs`.
pub fn form(rng: &mut TestRng, f: FieldConfig, coeff_deg: usize, degs: &[usize]) -> BinaryQuadraticForm {
    loop {
        let a = nonzero_poly(rng, f, coeff_deg);
        let b = poly(rng, f, coeff_deg);
        let c = poly(rng, f, coeff_deg);
        let Ok(g) = BinaryQuadraticForm::new(a, b, c) else { continue };
        if degs.contains(&g.discriminant().degree().unwrap()) && g.roots().is_ok() {
            return g;
        }
    }
}

/// Root of `T x^3 - T x - 1` over F_5 by Newton lifting: a cubic
/// irrationality.
pub fn hensel_cubic(prec: i64) -> LaurentSeries {
    let f = fp(5);
    let t = Poly::t(f);
    let poly_x = PolyOverK::new(vec![-&Poly::one(f), -&t, Poly::zero(f), t]).unwrap();
    let x0 = find_newton_start(&poly_x).expect("Newton start");
    hensel_root(&poly_x, &x0, prec).unwrap()
}
