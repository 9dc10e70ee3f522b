//! Binary quadratic forms `a x² + b xy + c y²` over K.

use std::fmt;

use rayon::prelude::*;

use crate::algebraic::{QuadraticSurd, Sign};
use crate::cfrac::{cf_surd, convergents, tau_of_surd, CfStatus};
use crate::error::{Error, Result};
use crate::exponent::{QExp, Valuation};
use crate::field::FieldConfig;
use crate::laurent::LaurentSeries;
use crate::poly::{enumerate_monic, enumerate_polys, Poly};
use crate::QExponent;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryQuadraticForm {
    a: Poly,
    b: Poly,
    c: Poly,
    delta: Poly,
}

impl BinaryQuadraticForm {
    pub fn new(a: Poly, b: Poly, c: Poly) -> Result<Self> {
        a.check_field(&b)?;
        a.check_field(&c)?;
        a.field().require_odd("binary quadratic form")?;
        if a.is_zero() {
            return Err(Error::Precondition("leading coefficient a is zero".into()));
        }
        let delta = &(&b * &b) - &(&a * &c).scale(4);
        if delta.is_zero() || delta.is_square()?.is_some() {
            return Err(Error::PerfectSquare(delta.to_string()));
        }
        Ok(BinaryQuadraticForm { a, b, c, delta })
    }

    /// Parses `"<a>;<b>;<c>"`.
    pub fn parse(field: FieldConfig, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, "expected three coefficients '<a>;<b>;<c>'"));
        }
        let mut off = 0;
        let mut polys = Vec::with_capacity(3);
        for part in parts {
            polys.push(Poly::parse_at(field, part, off)?);
            off += part.len() + 1;
        }
        let c = polys.pop().unwrap();
        let b = polys.pop().unwrap();
        let a = polys.pop().unwrap();
        BinaryQuadraticForm::new(a, b, c)
    }

    pub fn field(&self) -> FieldConfig {
        self.a.field()
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn c(&self) -> &Poly {
        &self.c
    }

    /// `δ = b² - 4ac`.
    pub fn discriminant(&self) -> &Poly {
        &self.delta
    }

    /// `deg δ / 2`; only meaningful when `deg δ` is even.
    pub fn half_deg_delta(&self) -> i64 {
        self.delta.degree().unwrap() as i64 / 2
    }

    pub fn eval(&self, x: &Poly, y: &Poly) -> Poly {
        &(&(&self.a * &(x * x)) + &(&self.b * &(x * y))) + &(&self.c * &(y * y))
    }

    pub fn scale(&self, k: &Poly) -> Result<Self> {
        BinaryQuadraticForm::new(&self.a * k, &self.b * k, &self.c * k)
    }

    /// The form `f(px + qy, rx + sy)`.
    pub fn substitute(&self, p: &Poly, q: &Poly, r: &Poly, s: &Poly) -> Result<Self> {
        let na = self.eval(p, r);
        let nc = self.eval(q, s);
        let nb = &(&(&self.a * &(p * q)).scale(2) + &(&self.b * &(&(p * s) + &(q * r))))
            + &(&self.c * &(r * s)).scale(2);
        BinaryQuadraticForm::new(na, nb, nc)
    }

    /// `θ, φ = (-b ± sqrt δ)/(2a)`, with θ on the canonical branch.
    pub fn roots(&self) -> Result<FormRoots> {
        let theta = QuadraticSurd::new(-&self.b, self.a.scale(2), self.delta.clone(), Sign::Plus)?;
        let phi = theta.conjugate();
        Ok(FormRoots { theta, phi })
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{};{};{}", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormRoots {
    pub theta: QuadraticSurd,
    pub phi: QuadraticSurd,
}

/// `σ(f) = q^(-exponent)`, with the pairs that attain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sigma {
    pub exponent: i64,
    pub witnesses: Vec<(Poly, Poly)>,
    /// Degree bound of the exhaustive search.
    pub search_deg: usize,
}

impl Sigma {
    pub fn value(&self) -> QExponent {
        QExp::Finite(self.exponent)
    }
}

/// Exhaustive `max v(f(x,y))` over nonzero pairs of degree `<= bound`.
///
/// Pairs are taken up to a scalar (`|f(λx, λy)| = |f(x, y)|`): `x` monic, or
/// `x = 0` and `y` monic.
pub fn sigma_brute_force(f: &BinaryQuadraticForm, bound: usize) -> Sigma {
    let fc = f.field();
    let xs: Vec<Poly> = (0..=bound).flat_map(|d| enumerate_monic(fc, d)).collect();
    let ys: Vec<Poly> = enumerate_polys(fc, bound).collect();
    let per_x: Vec<(i64, Vec<(Poly, Poly)>)> = xs
        .par_iter()
        .map(|x| {
            let mut best = i64::MIN;
            let mut wit = Vec::new();
            for y in &ys {
                let v = -(f.eval(x, y).degree().expect("δ is not a square") as i64);
                if v > best {
                    best = v;
                    wit.clear();
                }
                if v == best {
                    wit.push((x.clone(), y.clone()));
                }
            }
            (best, wit)
        })
        .collect();
    let zero = Poly::zero(fc);
    let mut best = i64::MIN;
    let mut witnesses = Vec::new();
    let x_zero = (0..=bound).flat_map(|d| enumerate_monic(fc, d)).map(|y| {
        let v = -(f.eval(&zero, &y).degree().unwrap() as i64);
        (v, vec![(zero.clone(), y)])
    });
    for (v, wit) in x_zero.chain(per_x) {
        if v > best {
            best = v;
            witnesses.clear();
        }
        if v == best {
            witnesses.extend(wit);
        }
    }
    Sigma {
        exponent: best,
        witnesses,
        search_deg: bound,
    }
}

/// Default search bound `deg δ / 2 + 2`.
pub fn default_sigma_bound(f: &BinaryQuadraticForm) -> usize {
    f.half_deg_delta() as usize + 2
}

/// `σ(f)` from `τ(θ)` by `τ = |δ|^(-1/2) σ`, checked against exhaustive
/// search to degree `bound`.
pub fn sigma_with_bound(f: &BinaryQuadraticForm, bound: usize) -> Result<Sigma> {
    let roots = f.roots()?;
    let tau = tau_exponent(&roots.theta)?;
    let from_tau = tau - f.half_deg_delta();
    let brute = sigma_brute_force(f, bound);
    if brute.exponent != from_tau {
        return Err(Error::Verification(format!(
            "σ routes disagree for {f}: τ gives exponent {from_tau}, search gives {}",
            brute.exponent
        )));
    }
    Ok(brute)
}

pub fn sigma(f: &BinaryQuadraticForm) -> Result<Sigma> {
    sigma_with_bound(f, default_sigma_bound(f))
}

fn tau_exponent(theta: &QuadraticSurd) -> Result<i64> {
    match tau_of_surd(theta)? {
        QExp::Finite(e) => Ok(e),
        QExp::Zero => Err(Error::Verification("quadratic root with τ = 0".into())),
    }
}

/// `τ(θ)` as `exponent(σ) + deg δ / 2`, with σ from exhaustive search,
/// cross-checked against the period of θ.
pub fn tau_theta(f: &BinaryQuadraticForm) -> Result<QExponent> {
    let roots = f.roots()?;
    let brute = sigma_brute_force(f, default_sigma_bound(f));
    let tau = brute.exponent + f.half_deg_delta();
    let direct = tau_exponent(&roots.theta)?;
    if tau != direct {
        return Err(Error::Verification(format!(
            "τ routes disagree for {f}: σ gives exponent {tau}, period gives {direct}"
        )));
    }
    Ok(QExp::Finite(tau))
}

/// `Q` with `deg Q <= max_deg` and `|Q| ||Qθ|| = q^(-tau_exp)`, monic.
pub fn tau_witnesses(theta: &LaurentSeries, tau_exp: i64, max_deg: usize) -> Result<Vec<Poly>> {
    let f = theta.field();
    let mut out = Vec::new();
    for d in 0..=max_deg {
        for q in enumerate_monic(f, d) {
            if theta.mul_poly(&q).frac_norm()? == Valuation::Exact(tau_exp + d as i64) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// `f` moved by a unimodular matrix so that `f(a0, b0)` leads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub form: BinaryQuadraticForm,
    /// Substitution `(x, y) -> (a0 x + c y, b0 x + d y)`, `a0 d - b0 c = 1`.
    pub matrix: [Poly; 4],
}

/// New form `α'x² + β'xy + γ'y²` with `α' = f(a0, b0)` and `deg β' < deg α'`.
pub fn reduce_with_representation(f: &BinaryQuadraticForm, a0: &Poly, b0: &Poly) -> Result<Reduction> {
    let (g, u, v) = a0.ext_gcd(b0)?;
    if !g.is_one() {
        return Err(Error::Precondition(format!("gcd({a0}, {b0}) = {g} is not 1")));
    }
    let alpha = f.eval(a0, b0);
    if alpha.is_zero() {
        return Err(Error::Precondition("f(a0, b0) = 0".into()));
    }
    let (c, d) = (-&v, u);
    let first = f.substitute(a0, &c, b0, &d)?;
    let fc = f.field();
    let half = fc.inv(2).expect("p > 2");
    let big_a = -&first.b().divmod(&alpha)?.0;
    let shift = big_a.scale(half);
    let c1 = &c + &(&shift * a0);
    let d1 = &d + &(&shift * b0);
    let form = f.substitute(a0, &c1, b0, &d1)?;
    Ok(Reduction {
        form,
        matrix: [a0.clone(), c1, b0.clone(), d1],
    })
}

/// A unimodular substitution fixing `f` that scales `L = x - θy` by `η`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorph {
    /// `(x, y) -> (a x + b y, c x + d y)`.
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
    /// `v(η) >= 1`.
    pub eta_exp: i64,
}

impl Automorph {
    pub fn det(&self) -> Poly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn compose(&self, other: &Automorph) -> Automorph {
        Automorph {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
            eta_exp: self.eta_exp + other.eta_exp,
        }
    }

    pub fn pow(&self, n: u32) -> Automorph {
        let f = self.a.field();
        let mut acc = Automorph {
            a: Poly::one(f),
            b: Poly::zero(f),
            c: Poly::zero(f),
            d: Poly::one(f),
            eta_exp: 0,
        };
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// `(x, y)` moved by the substitution.
    pub fn apply(&self, x: &Poly, y: &Poly) -> (Poly, Poly) {
        (
            &(&self.a * x) + &(&self.b * y),
            &(&self.c * x) + &(&self.d * y),
        )
    }

    /// `η = a - θc`, to absolute precision `prec`.
    pub fn eta(&self, theta: &QuadraticSurd, prec: i64) -> Result<LaurentSeries> {
        let dc = self.c.degree().map_or(0, |d| d as i64);
        let th = theta.to_series(prec + dc)?;
        Ok(LaurentSeries::from_poly(&self.a).sub(&th.mul_poly(&self.c)))
    }
}

/// Automorph from one period of the continued fraction of θ.
///
/// With `M_k = [[P_k, P_{k-1}], [Q_k, Q_{k-1}]]`, the matrix
/// `N = M_{s+m-1} M_{s-1}^(-1)` fixes θ as a Möbius map; its adjugate is a
/// substitution with `L(SX) = (n21 θ + n22) L(X)`. A determinant of `-1`
/// would send `f` to `-f`, so the square is taken instead.
pub fn automorph(f: &BinaryQuadraticForm) -> Result<Automorph> {
    let theta = f.roots()?.theta;
    let exp = cf_surd(&theta)?;
    let CfStatus::Periodic { preperiod: s, period: m } = exp.status else {
        return Err(Error::Verification("root expansion is not periodic".into()));
    };
    let fc = f.field();
    let conv = convergents(&exp.quotients_upto(s + m));
    let mat = |k: isize| -> [Poly; 4] {
        let get = |i: isize| -> (Poly, Poly) {
            match i {
                -2 => (Poly::zero(fc), Poly::one(fc)),
                -1 => (Poly::one(fc), Poly::zero(fc)),
                i => conv[i as usize].clone(),
            }
        };
        let (p1, q1) = get(k);
        let (p0, q0) = get(k - 1);
        [p1, p0, q1, q0]
    };
    let ma = mat(s as isize - 1);
    let mb = mat((s + m) as isize - 1);
    // M_a^(-1) = adj(M_a) / det(M_a), det = ±1
    let det_a = &(&ma[0] * &ma[3]) - &(&ma[1] * &ma[2]);
    let inv_det = fc.inv(det_a.coeff(0)).expect("unimodular convergent matrix");
    let ia = [
        ma[3].scale(inv_det),
        (-&ma[1]).scale(inv_det),
        (-&ma[2]).scale(inv_det),
        ma[0].scale(inv_det),
    ];
    let n = [
        &(&mb[0] * &ia[0]) + &(&mb[1] * &ia[2]),
        &(&mb[0] * &ia[1]) + &(&mb[1] * &ia[3]),
        &(&mb[2] * &ia[0]) + &(&mb[3] * &ia[2]),
        &(&mb[2] * &ia[1]) + &(&mb[3] * &ia[3]),
    ];
    let mut s_mat = Automorph {
        a: n[3].clone(),
        b: -&n[1],
        c: -&n[2],
        d: n[0].clone(),
        eta_exp: 0,
    };
    let det = s_mat.det();
    if !det.is_one() {
        s_mat = s_mat.compose(&s_mat);
    }
    let eta_exp = eta_valuation(&s_mat, &theta)?;
    if eta_exp < 0 {
        // the inverse substitution scales by 1/η
        s_mat = Automorph {
            a: s_mat.d.clone(),
            b: -&s_mat.b,
            c: -&s_mat.c,
            d: s_mat.a.clone(),
            eta_exp: 0,
        };
    }
    s_mat.eta_exp = eta_exp.abs();
    verify_automorph(f, &theta, &s_mat)?;
    Ok(s_mat)
}

fn eta_valuation(s: &Automorph, theta: &QuadraticSurd) -> Result<i64> {
    let mut prec = 16;
    loop {
        let eta = s.eta(theta, prec)?;
        if let Some(v) = eta.valuation().exact() {
            return Ok(v);
        }
        if prec > 1 << 16 {
            return Err(Error::Verification("η vanishes to working precision".into()));
        }
        prec *= 2;
    }
}

/// `det = 1`, `f(SX) = f(X)` coefficientwise, and `L(SX) = η L(X)` on the
/// basis vectors with `v(η) = eta_exp >= 1`.
pub fn verify_automorph(f: &BinaryQuadraticForm, theta: &QuadraticSurd, s: &Automorph) -> Result<()> {
    if !s.det().is_one() {
        return Err(Error::Verification(format!("automorph determinant is {}", s.det())));
    }
    let moved = f.substitute(&s.a, &s.b, &s.c, &s.d)?;
    if moved != *f {
        return Err(Error::Verification(format!("automorph sends {f} to {moved}")));
    }
    if s.eta_exp < 1 {
        return Err(Error::Verification(format!("v(η) = {} is not positive", s.eta_exp)));
    }
    let prec = s.eta_exp + 12;
    let eta = s.eta(theta, prec)?;
    if eta.valuation() != Valuation::Exact(s.eta_exp) {
        return Err(Error::Verification(format!(
            "v(η) is {}, recorded {}",
            eta.valuation(),
            s.eta_exp
        )));
    }
    // second basis vector: b - θd = -ηθ
    let dd = s.d.degree().map_or(0, |d| d as i64);
    let th = theta.to_series(prec + dd + 2 * theta.half_deg() + 4)?;
    let lhs = LaurentSeries::from_poly(&s.b).sub(&th.mul_poly(&s.d));
    let rhs = eta.mul(&th).neg();
    let n = lhs.prec().min(rhs.prec()).as_i64();
    if !lhs.agrees_below(&rhs, n) {
        return Err(Error::Verification("L(SX) = ηL(X) fails on (0, 1)".into()));
    }
    Ok(())
}

/// `D(α) = deg δ / 2 + t(f)` with `t(f) = exponent(σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientDegreeReport {
    pub d_alpha: i64,
    pub half_deg_delta: i64,
    pub t_f: i64,
    pub holds: bool,
}

pub fn largest_quotient_degree(f: &BinaryQuadraticForm) -> Result<QuotientDegreeReport> {
    let theta = f.roots()?.theta;
    let d_alpha = cf_surd(&theta)?
        .largest_period_degree()
        .ok_or_else(|| Error::Verification("root expansion is not periodic".into()))? as i64;
    let t_f = sigma_brute_force(f, default_sigma_bound(f)).exponent;
    let half = f.half_deg_delta();
    Ok(QuotientDegreeReport {
        d_alpha,
        half_deg_delta: half,
        t_f,
        holds: d_alpha == half + t_f,
    })
}

/// Exhaustive check of: `||Qθ|| < |θ-φ| |Q|` implies `|Q| ||Qθ|| >= |δ|^(-1/2) σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub checked: usize,
    pub premise_held: usize,
    pub exceptions: Vec<Poly>,
}

pub fn check_quadratic_lower_bound(f: &BinaryQuadraticForm, max_deg: usize) -> Result<LowerBoundReport> {
    let theta = f.roots()?.theta;
    let sig = sigma(f)?;
    let half = f.half_deg_delta();
    // v(θ - φ) = v(sqrt δ / a)
    let v_gap = f.a().degree().unwrap() as i64 - half;
    let bound = sig.exponent + half;
    // ||Qθ|| at deg Q = d needs precision past bound + 2d
    let series = theta.to_series(2 * max_deg as i64 + bound.max(0) + 4)?;
    let fc = f.field();
    let mut report = LowerBoundReport {
        checked: 0,
        premise_held: 0,
        exceptions: Vec::new(),
    };
    for d in 0..=max_deg {
        for q in enumerate_monic(fc, d) {
            report.checked += 1;
            let dq = d as i64;
            let norm = series.mul_poly(&q).frac_norm()?;
            // premise: v(||Qθ||) > v(θ-φ) - deg Q
            match norm.at_least(v_gap - dq + 1) {
                crate::Certainty::No => continue,
                crate::Certainty::Unknown => {
                    return Err(Error::precision("quadratic lower bound", v_gap - dq + 1, series.prec().as_i64()));
                }
                crate::Certainty::Yes => {}
            }
            report.premise_held += 1;
            // conclusion: v(||Qθ||) - deg Q <= exponent(σ) + deg δ / 2
            match norm {
                Valuation::Exact(v) if v - dq <= bound => {}
                Valuation::AtLeast(v) if v - dq <= bound => {
                    return Err(Error::precision("quadratic lower bound", bound + dq, series.prec().as_i64()));
                }
                _ => report.exceptions.push(q),
            }
        }
    }
    Ok(report)
}
