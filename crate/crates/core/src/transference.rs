//! Transference between the forms `L_i(x) = Σ_j θ_ij x_j` and their
//! transposes `M_j(y) = Σ_i θ_ij y_i`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exponent::{Certainty, QExp, Valuation};
use crate::laurent::LaurentSeries;
use crate::linforms::{eval_forms, series_det, solve_gamma, transpose, verify_forms, GammaInstance, IntegralPoint};
use crate::poly::{enumerate_points, Poly};
use crate::QExponent;

/// `⌊(v(d) + n + λ - 2) / (n - 1)⌋`, the bound on `v(g_i(w))`.
pub fn lemma_exponent(n: usize, d_val: i64, lambda_exp: i64) -> i64 {
    let n = n as i64;
    (d_val + n + lambda_exp - 2).div_euclid(n - 1)
}

fn require(c: Certainty, what: impl FnOnce() -> String) -> Result<()> {
    match c {
        Certainty::Yes => Ok(()),
        Certainty::No => Err(Error::Precondition(what())),
        Certainty::Unknown => Err(Error::Precondition(format!("{} (undecided at working precision)", what()))),
    }
}

/// Given `|f_i(z)| <= q^(-λ)`, a nonzero integral `w` with
/// `v(g_i(w)) >= lemma_exponent(n, v(d), λ)` for every `i`.
///
/// `f_forms[i][k]` is the coefficient of `z_k` in `f_i`, likewise for `g`.
/// `ψ(z, w) = Σ f_i(z) g_i(w)` must have polynomial coefficients; this is
/// checked to working precision only.
pub fn transfer_lemma(
    f_forms: &[Vec<LaurentSeries>],
    g_forms: &[Vec<LaurentSeries>],
    d_val: i64,
    z: &IntegralPoint,
    lambda_exp: i64,
) -> Result<IntegralPoint> {
    let n = f_forms.len();
    if n < 2 {
        return Err(Error::Precondition(format!("transfer lemma needs n >= 2, got {n}")));
    }
    let square = |a: &[Vec<LaurentSeries>]| a.len() == n && a.iter().all(|r| r.len() == n);
    if !square(f_forms) || !square(g_forms) || z.len() != n {
        return Err(Error::Precondition("forms must be n forms in n variables".into()));
    }
    if z.is_zero() {
        return Err(Error::Precondition("z is zero".into()));
    }
    let field = f_forms[0][0].field();
    // coefficient of z_k w_j in ψ
    let mut psi = vec![vec![LaurentSeries::exact_zero(field); n]; n];
    for (k, row) in psi.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            for i in 0..n {
                *c = c.add(&f_forms[i][k].mul(&g_forms[i][j]));
            }
            if c.is_polynomial()? == Certainty::No {
                return Err(Error::Precondition(format!("ψ coefficient of z_{k} w_{j} is not polynomial")));
            }
        }
    }
    let fz = eval_forms(f_forms, &z.coords);
    for (i, v) in fz.iter().enumerate() {
        require(v.valuation().at_least(lambda_exp), || {
            format!("|f_{i}(z)| exceeds q^{}", -lambda_exp)
        })?;
    }
    if let Some(v) = series_det(g_forms).valuation().exact() {
        if v != d_val {
            return Err(Error::Precondition(format!("v(det g) is {v}, given {d_val}")));
        }
    }
    // ψ(z, ·) as a row of polynomials
    let mut row0 = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = LaurentSeries::exact_zero(field);
        for (row, zk) in psi.iter().zip(&z.coords) {
            c = c.add(&row[j].mul_poly(zk));
        }
        if !c.frac_part()?.is_zero_to_prec() {
            return Err(Error::Precondition(format!("ψ(z, w) coefficient of w_{j} is not polynomial")));
        }
        row0.push(LaurentSeries::from_poly(&c.integral_part()?));
    }
    // the form with the smallest v(f_i(z)) is the one eliminated
    let pivot = fz
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.valuation().exact().map(|e| (e, i)))
        .min()
        .map(|(_, i)| i)
        .ok_or_else(|| Error::precision("f(z) is zero to working precision", 0, 0))?;
    let e = lemma_exponent(n, d_val, lambda_exp);
    let mut a = vec![row0];
    let mut r = vec![1];
    for (i, g) in g_forms.iter().enumerate() {
        if i != pivot {
            a.push(g.clone());
            r.push(e);
        }
    }
    let inst = GammaInstance::from_square(a, r)?;
    let w = solve_gamma(&inst)?
        .ok_or_else(|| Error::Verification("transfer system has only the zero point".into()))?;
    let mut psi_zw = Poly::zero(field);
    for (j, wj) in w.coords.iter().enumerate() {
        psi_zw = &psi_zw + &(&inst.matrix()[0][j].integral_part()? * wj);
    }
    if !psi_zw.is_zero() {
        return Err(Error::Verification("ψ(z, w) is not zero".into()));
    }
    for (i, g) in eval_forms(g_forms, &w.coords).iter().enumerate() {
        match g.valuation().at_least(e) {
            Certainty::Yes => {}
            Certainty::No => {
                return Err(Error::Verification(format!("v(g_{i}(w)) = {} < {e}", g.valuation())));
            }
            Certainty::Unknown => return Err(Error::precision(format!("g_{i}(w)"), e, g.prec().as_i64())),
        }
    }
    Ok(w)
}

/// The pair of form families from a solution `x` of the `L_i` problem:
/// `f_i = C^(-1)(L_i(x) + w_i)`, `f_(n+j) = X^(-1) x_j`, `g_i = C y_i`,
/// `g_(n+j) = X(u_j - M_j(y))`, with `C = T^(-C_exp)`, `X = T^(X_exp)`.
/// Variables are ordered `(x, w)` and `(y, u)`.
pub struct Construction {
    pub f_forms: Vec<Vec<LaurentSeries>>,
    pub g_forms: Vec<Vec<LaurentSeries>>,
    pub d_val: i64,
    pub z: IntegralPoint,
}

pub fn construction(theta: &[Vec<LaurentSeries>], x: &IntegralPoint, c_exp: i64, x_exp: i64) -> Result<Construction> {
    let n = theta.len();
    let m = x.len();
    let field = theta[0][0].field();
    let l = n + m;
    let zero = LaurentSeries::exact_zero(field);
    let mut f_forms = vec![vec![zero.clone(); l]; l];
    let mut g_forms = vec![vec![zero; l]; l];
    let c_inv = LaurentSeries::monomial(field, 1, -c_exp);
    let x_inv = LaurentSeries::monomial(field, 1, x_exp);
    for i in 0..n {
        for j in 0..m {
            f_forms[i][j] = theta[i][j].shift(-c_exp);
            g_forms[n + j][i] = theta[i][j].shift(-x_exp).neg();
        }
        f_forms[i][m + i] = c_inv.clone();
        g_forms[i][i] = LaurentSeries::monomial(field, 1, c_exp);
    }
    for j in 0..m {
        f_forms[n + j][j] = x_inv.clone();
        g_forms[n + j][n + j] = LaurentSeries::monomial(field, 1, -x_exp);
    }
    let w = eval_forms(theta, &x.coords)
        .iter()
        .map(|l| l.integral_part().map(|p| -&p))
        .collect::<Result<Vec<_>>>()?;
    let mut z = x.coords.clone();
    z.extend(w);
    Ok(Construction {
        f_forms,
        g_forms,
        d_val: n as i64 * c_exp - m as i64 * x_exp,
        z: IntegralPoint::new(z),
    })
}

/// A transposed solution: `||M_j(y)|| <= q^(-d_exp)`, `|y_i| <= q^(y_exp)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferCertificate {
    pub y: IntegralPoint,
    pub d_exp: i64,
    pub y_exp: i64,
    /// The unrounded exponents `|D| = q^(-promised_d)`, `|Y| = q^(promised_y)`.
    pub promised_d: Ratio<i64>,
    pub promised_y: Ratio<i64>,
    /// Recomputed `v(||M_j(y)||)`.
    pub achieved: Vec<Valuation>,
}

/// From `||L_i(x)|| <= q^(-c_exp)`, `|x_j| <= q^(x_exp)` to a nonzero `y`
/// for the transposed forms.
pub fn transfer(theta: &[Vec<LaurentSeries>], x: &IntegralPoint, c_exp: i64, x_exp: i64) -> Result<TransferCertificate> {
    let n = theta.len();
    if n == 0 || theta[0].is_empty() || theta.iter().any(|r| r.len() != theta[0].len()) {
        return Err(Error::Precondition("coefficient matrix shape mismatch".into()));
    }
    let m = theta[0].len();
    if x.len() != m {
        return Err(Error::Precondition(format!("x has {} coordinates, expected {m}", x.len())));
    }
    if c_exp < 1 {
        return Err(Error::Precondition(format!("need |C| <= 1/q, got C_exp = {c_exp}")));
    }
    if x_exp < 0 {
        return Err(Error::Precondition(format!("need |X| >= 1, got X_exp = {x_exp}")));
    }
    if x.is_zero() {
        return Err(Error::Precondition("x is zero".into()));
    }
    if x.max_degree().unwrap_or(0) as i64 > x_exp {
        return Err(Error::Precondition(format!("|x_j| exceeds q^{x_exp}")));
    }
    verify_forms(theta, x, &vec![c_exp; n]).map_err(|e| match e {
        Error::Verification(msg) => Error::Precondition(msg),
        other => other,
    })?;
    let l = n + m;
    let cons = construction(theta, x, c_exp, x_exp)?;
    let yu = transfer_lemma(&cons.f_forms, &cons.g_forms, cons.d_val, &cons.z, 0)?;
    let e = lemma_exponent(l, cons.d_val, 0);
    let d_exp = e + x_exp;
    let y_exp = c_exp - e;
    if d_exp < 1 {
        return Err(Error::Verification(format!("|D| = q^{} is not below 1", -d_exp)));
    }
    let y = IntegralPoint::new(yu.coords[..n].to_vec());
    if y.is_zero() {
        return Err(Error::Verification("transferred point has y = 0".into()));
    }
    if y.max_degree().unwrap_or(0) as i64 > y_exp {
        return Err(Error::Verification(format!("|y_i| exceeds q^{y_exp}")));
    }
    let achieved = verify_forms(&transpose(theta), &y, &vec![d_exp; m])?;
    let (ni, mi, li) = (n as i64, m as i64, l as i64);
    Ok(TransferCertificate {
        y,
        d_exp,
        y_exp,
        promised_d: Ratio::new(li - 2 + (ni - 1) * x_exp + ni * c_exp, li - 1),
        promised_y: Ratio::new(2 - li + mi * x_exp + (mi - 1) * c_exp, li - 1),
        achieved,
    })
}

/// Empirical minima of `(max ||L_i(x)||)^n (max |x_j|)^m` and of the
/// transposed product over points of degree `<= search_deg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadApproxReport {
    pub min_l: QExponent,
    pub min_m: QExponent,
    /// Whether every norm entering the minima was exact.
    pub certified: bool,
    /// `min_l >= q^(-r_exp)`.
    pub r_holds: bool,
    /// `q^((l-2)l) min_m^(l-1)`, the constant the transposed minimum implies.
    pub implied_r: QExponent,
    pub implication_holds: bool,
}

fn empirical_min(theta: &[Vec<LaurentSeries>], search_deg: usize) -> Result<(QExponent, bool)> {
    let a = theta.len() as i64;
    let b = theta[0].len();
    let field = theta[0][0].field();
    let mut best: Option<i64> = None;
    let mut certified = true;
    for x in enumerate_points(field, b, search_deg) {
        let deg = x.iter().filter_map(|c| c.degree()).max().unwrap() as i64;
        let mut worst = i64::MAX;
        for l in eval_forms(theta, &x) {
            match l.frac_norm()? {
                Valuation::Exact(v) => worst = worst.min(v),
                Valuation::AtLeast(v) => {
                    certified = false;
                    worst = worst.min(v);
                }
                Valuation::Infinite => {}
            }
        }
        if worst == i64::MAX {
            return Ok((QExp::Zero, certified));
        }
        let e = a * worst - b as i64 * deg;
        best = Some(best.map_or(e, |b| b.max(e)));
    }
    Ok((QExp::Finite(best.expect("at least one point")), certified))
}

/// Report, not proof, of the two sides of the transference equivalence.
pub fn check_badly_approximable_transfer(theta: &[Vec<LaurentSeries>], r_exp: i64, search_deg: usize) -> Result<BadApproxReport> {
    if theta.is_empty() || theta[0].is_empty() {
        return Err(Error::Precondition("empty coefficient matrix".into()));
    }
    let l = (theta.len() + theta[0].len()) as i64;
    let (min_l, c1) = empirical_min(theta, search_deg)?;
    let (min_m, c2) = empirical_min(&transpose(theta), search_deg)?;
    let implied_r = match min_m {
        QExp::Finite(e) => QExp::Finite((l - 1) * e - (l - 2) * l),
        QExp::Zero => QExp::Zero,
    };
    Ok(BadApproxReport {
        min_l,
        min_m,
        certified: c1 && c2,
        r_holds: QExp::Finite(r_exp).value_le(&min_l),
        implied_r,
        implication_holds: implied_r.value_le(&min_l),
    })
}
