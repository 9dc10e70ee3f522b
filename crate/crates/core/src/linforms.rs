//! Systems of valuation inequalities `v(L_i(x)) >= r_i` over polynomial
//! unknowns, and the approximation theorems built on them.
//!
//! Writing `x_j = Σ_k x_jk T^k`, the coefficient of `(1/T)^e` in
//! `θ_ij x_j` is `Σ_k coeff_{e+k}(θ_ij) x_jk`, so each inequality is a finite
//! set of F_p-linear equations on the `x_jk`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::Valuation;
use crate::field::FieldConfig;
use crate::laurent::LaurentSeries;
use crate::linalg::{first_kernel_vector, Matrix};
use crate::poly::Poly;

/// A vector of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralPoint {
    pub coords: Vec<Poly>,
}

impl IntegralPoint {
    pub fn new(coords: Vec<Poly>) -> Self {
        IntegralPoint { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    /// `max_j deg x_j`, i.e. the exponent of `max |x_j|`.
    pub fn max_degree(&self) -> Option<usize> {
        self.coords.iter().filter_map(Poly::degree).max()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for IntegralPoint {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(out, ", ")?;
            }
            write!(out, "{c}")?;
        }
        write!(out, ")")
    }
}

/// `L_i(x) = Σ_j a[i][j] x_j`, by plain series arithmetic.
pub fn eval_forms(a: &[Vec<LaurentSeries>], x: &[Poly]) -> Vec<LaurentSeries> {
    a.iter()
        .map(|row| {
            let f = row[0].field();
            row.iter()
                .zip(x)
                .fold(LaurentSeries::exact_zero(f), |acc, (t, xj)| {
                    acc.add(&t.mul_poly(xj))
                })
        })
        .collect()
}

/// `A^T`, used for the transposed forms `M_j(y) = Σ_i θ_ij y_i`.
pub fn transpose(a: &[Vec<LaurentSeries>]) -> Vec<Vec<LaurentSeries>> {
    let m = a[0].len();
    (0..m)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn series_det(a: &[Vec<LaurentSeries>]) -> LaurentSeries {
    let n = a.len();
    let f = a[0][0].field();
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = LaurentSeries::exact_zero(f);
    for j in 0..n {
        let term = a[0][j].mul(&series_det(&minor(a, 0, j)));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn minor(a: &[Vec<LaurentSeries>], skip_i: usize, skip_j: usize) -> Vec<Vec<LaurentSeries>> {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_i)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_j)
                .map(|(_, c)| c.clone())
                .collect()
        })
        .collect()
}

/// `Γ(A, r)` cut down to `deg x_j <= d_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaInstance {
    a: Vec<Vec<LaurentSeries>>,
    r: Vec<i64>,
    deg_bounds: Vec<usize>,
    nonzero_mask: Option<Vec<bool>>,
}

impl GammaInstance {
    pub fn new(a: Vec<Vec<LaurentSeries>>, r: Vec<i64>, deg_bounds: Vec<usize>) -> Result<Self> {
        let n = a.len();
        if n == 0 || a[0].is_empty() {
            return Err(Error::Precondition("empty coefficient matrix".into()));
        }
        let m = a[0].len();
        if a.iter().any(|row| row.len() != m) {
            return Err(Error::Precondition("ragged coefficient matrix".into()));
        }
        if r.len() != n {
            return Err(Error::Precondition(format!("{} targets for {} forms", r.len(), n)));
        }
        if deg_bounds.len() != m {
            return Err(Error::Precondition(format!(
                "{} degree bounds for {} unknowns",
                deg_bounds.len(),
                m
            )));
        }
        let f = a[0][0].field();
        for row in &a {
            for c in row {
                if c.field() != f {
                    return Err(Error::FieldMismatch(f.p(), c.field().p()));
                }
            }
        }
        Ok(GammaInstance {
            a,
            r,
            deg_bounds,
            nonzero_mask: None,
        })
    }

    /// Square instance whose degree bounds lose no solution: from
    /// `x = A^(-1) L(x)`, `v(x_j) >= min_i (v(b_ji) + r_i)`.
    pub fn from_square(a: Vec<Vec<LaurentSeries>>, r: Vec<i64>) -> Result<Self> {
        let n = a.len();
        if a.iter().any(|row| row.len() != n) {
            return Err(Error::Precondition("matrix is not square".into()));
        }
        let det = series_det(&a);
        let vdet = det.valuation().exact().ok_or_else(|| {
            Error::Precondition(format!("det A is not certified nonzero ({})", det.valuation()))
        })?;
        let f = a[0][0].field();
        let mut bounds = Vec::with_capacity(n);
        for j in 0..n {
            let mut d = 0i64;
            for (i, ri) in r.iter().enumerate() {
                let cof = if n == 1 {
                    LaurentSeries::one(f)
                } else {
                    series_det(&minor(&a, i, j))
                };
                if let Some(vc) = cof.valuation().lower_bound() {
                    d = d.max(-(vc - vdet) - ri);
                }
            }
            bounds.push(d as usize);
        }
        GammaInstance::new(a, r, bounds)
    }

    /// Require the solution to be nonzero on the flagged unknowns.
    pub fn with_nonzero_mask(mut self, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != self.m() {
            return Err(Error::Precondition("mask length differs from unknown count".into()));
        }
        self.nonzero_mask = Some(mask);
        Ok(self)
    }

    pub fn field(&self) -> FieldConfig {
        self.a[0][0].field()
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn m(&self) -> usize {
        self.a[0].len()
    }

    pub fn matrix(&self) -> &[Vec<LaurentSeries>] {
        &self.a
    }

    pub fn targets(&self) -> &[i64] {
        &self.r
    }

    pub fn deg_bounds(&self) -> &[usize] {
        &self.deg_bounds
    }

    pub fn nonzero_mask(&self) -> Option<&[bool]> {
        self.nonzero_mask.as_deref()
    }

    /// Every entry needs `prec >= r_i + d_j`.
    pub fn check_precision(&self) -> Result<()> {
        for (i, row) in self.a.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                let need = self.r[i] + self.deg_bounds[j] as i64;
                if !t.prec().covers(need) {
                    return Err(Error::precision(
                        format!("entry A[{i}][{j}]"),
                        need,
                        t.prec().as_i64(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Whether `x` meets every constraint and the degree bounds.
    pub fn satisfies(&self, x: &IntegralPoint) -> bool {
        if x.coords.len() != self.m() {
            return false;
        }
        let degs_ok = x
            .coords
            .iter()
            .zip(&self.deg_bounds)
            .all(|(c, &d)| c.degree().is_none_or(|k| k <= d));
        degs_ok
            && eval_forms(&self.a, &x.coords)
                .iter()
                .zip(&self.r)
                .all(|(l, &r)| l.valuation().at_least(r).is_yes())
    }
}

/// A nonzero point of the instance, or `None` when only zero qualifies.
///
/// The kernel vector is chosen deterministically: elimination pivots on
/// the first nonzero entry scanning columns in variable order
/// (`x_0` coefficients of `T^0, T^1, ...`, then `x_1`, ...), and the answer
/// is the basis vector of the first free variable, subject to the nonzero
/// mask.
pub fn solve_gamma(inst: &GammaInstance) -> Result<Option<IntegralPoint>> {
    inst.check_precision()?;
    let f = inst.field();
    let mut offsets = Vec::with_capacity(inst.m());
    let mut nvars = 0;
    for &d in &inst.deg_bounds {
        offsets.push(nvars);
        nvars += d + 1;
    }
    let mut mat = Matrix::zeros(f, 0, nvars);
    for (i, row) in inst.a.iter().enumerate() {
        let lo = row
            .iter()
            .zip(&inst.deg_bounds)
            .filter_map(|(t, &d)| t.lead_exp().map(|v| v - d as i64))
            .min();
        let Some(lo) = lo else { continue };
        for e in lo..inst.r[i] {
            let mut eq = vec![0u32; nvars];
            for (j, t) in row.iter().enumerate() {
                for k in 0..=inst.deg_bounds[j] {
                    eq[offsets[j] + k] = t.coeff(e + k as i64).expect("precision checked");
                }
            }
            if eq.iter().any(|&c| c != 0) {
                mat.push_row(&eq);
            }
        }
    }
    let mask: Vec<bool> = match &inst.nonzero_mask {
        None => vec![true; nvars],
        Some(mask) => (0..inst.m())
            .flat_map(|j| std::iter::repeat_n(mask[j], inst.deg_bounds[j] + 1))
            .collect(),
    };
    Ok(first_kernel_vector(&mat, Some(&mask)).map(|v| {
        IntegralPoint::new(
            (0..inst.m())
                .map(|j| {
                    Poly::from_coeffs(f, v[offsets[j]..offsets[j] + inst.deg_bounds[j] + 1].to_vec())
                })
                .collect(),
        )
    }))
}

/// Solution of `||L_i(x)|| <= q^(-r_i)` with its independently recomputed
/// fractional-norm exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormsSolution {
    /// The point `x`.
    pub x: IntegralPoint,
    /// `y_i = -[L_i(x)]`.
    pub y: Vec<Poly>,
    /// Targets `r_i`.
    pub targets: Vec<i64>,
    /// Degree bounds imposed on `x`.
    pub x_deg_bounds: Vec<usize>,
    /// Valuation of `||L_i(x)||`.
    pub achieved: Vec<Valuation>,
}

impl LinearFormsSolution {
    /// Worst achieved exponent, `min_i v(||L_i(x)||)`.
    pub fn worst(&self) -> Valuation {
        Valuation::min_bound(self.achieved.iter().copied())
    }
}

/// Solves `v(L_i(x) + y_i) >= r_i` with `deg x_j <= x_deg[j]`, `x != 0`.
///
/// The auxiliary `y_i` get the bound `max(0, max_j (x_deg[j] - v(θ_ij)))`,
/// which no solution can exceed.
pub fn solve_with_aux(
    theta: &[Vec<LaurentSeries>],
    r: &[i64],
    x_deg: &[usize],
) -> Result<Option<LinearFormsSolution>> {
    let n = theta.len();
    let m = x_deg.len();
    if n == 0 || theta.iter().any(|row| row.len() != m) {
        return Err(Error::Precondition("coefficient matrix shape mismatch".into()));
    }
    let f = theta[0][0].field();
    let y_deg: Vec<usize> = theta
        .iter()
        .map(|row| {
            row.iter()
                .zip(x_deg)
                .filter_map(|(t, &d)| t.valuation().lower_bound().map(|v| d as i64 - v))
                .max()
                .unwrap_or(0)
                .max(0) as usize
        })
        .collect();
    let a: Vec<Vec<LaurentSeries>> = theta
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut full = row.clone();
            full.extend((0..n).map(|k| {
                if k == i {
                    LaurentSeries::one(f)
                } else {
                    LaurentSeries::exact_zero(f)
                }
            }));
            full
        })
        .collect();
    let mut bounds = x_deg.to_vec();
    bounds.extend(&y_deg);
    let mut mask = vec![true; m];
    mask.extend(vec![false; n]);
    let inst = GammaInstance::new(a, r.to_vec(), bounds)?.with_nonzero_mask(mask)?;
    let Some(sol) = solve_gamma(&inst)? else {
        return Ok(None);
    };
    let x = IntegralPoint::new(sol.coords[..m].to_vec());
    let y = sol.coords[m..].to_vec();
    let achieved = verify_forms(theta, &x, r)?;
    Ok(Some(LinearFormsSolution {
        x,
        y,
        targets: r.to_vec(),
        x_deg_bounds: x_deg.to_vec(),
        achieved,
    }))
}

/// Recomputes `||L_i(x)||` from scratch and checks it against `r_i`.
pub fn verify_forms(theta: &[Vec<LaurentSeries>], x: &IntegralPoint, r: &[i64]) -> Result<Vec<Valuation>> {
    let mut out = Vec::with_capacity(r.len());
    for (i, l) in eval_forms(theta, &x.coords).iter().enumerate() {
        let v = l.frac_norm()?;
        if !v.at_least(r[i]).is_yes() {
            return Err(Error::Verification(format!(
                "form {i}: ||L(x)|| has exponent {v}, target {}",
                r[i]
            )));
        }
        out.push(v);
    }
    Ok(out)
}

fn guaranteed(sol: Option<LinearFormsSolution>, what: &str) -> Result<LinearFormsSolution> {
    sol.ok_or_else(|| Error::Verification(format!("{what}: solver found no point the theorem guarantees")))
}

/// `x` with `1 <= |x| < q^h` and `||xθ|| <= q^(-h)`.
pub fn dirichlet_single(theta: &LaurentSeries, h: i64) -> Result<LinearFormsSolution> {
    if h < 1 {
        return Err(Error::Precondition(format!("h = {h} must be at least 1")));
    }
    let sol = solve_with_aux(&[vec![theta.clone()]], &[h], &[(h - 1) as usize])?;
    guaranteed(sol, "single approximation")
}

/// Target exponent `⌊h/n⌋ + 1` of the simultaneous system.
pub fn simultaneous_target(n: usize, h: i64) -> i64 {
    h.div_euclid(n as i64) + 1
}

/// `x` with `1 <= |x| <= q^h` and every `||xθ_i|| <= q^(-⌊h/n⌋-1)`.
pub fn dirichlet_simultaneous(theta: &[LaurentSeries], h: i64) -> Result<LinearFormsSolution> {
    if h < 0 || theta.is_empty() {
        return Err(Error::Precondition("need h >= 0 and at least one θ".into()));
    }
    let n = theta.len();
    let a: Vec<Vec<LaurentSeries>> = theta.iter().map(|t| vec![t.clone()]).collect();
    let r = vec![simultaneous_target(n, h); n];
    guaranteed(solve_with_aux(&a, &r, &[h as usize])?, "simultaneous approximation")
}

/// `(x_1..x_n)` with `1 <= max|x_i| <= q^h` and `||Σ x_i θ_i|| <= q^(-n(h+1))`.
pub fn transpose_form(theta: &[LaurentSeries], h: i64) -> Result<LinearFormsSolution> {
    if h < 0 || theta.is_empty() {
        return Err(Error::Precondition("need h >= 0 and at least one θ".into()));
    }
    let n = theta.len();
    let r = [n as i64 * (h + 1)];
    guaranteed(
        solve_with_aux(&[theta.to_vec()], &r, &vec![h as usize; n])?,
        "transposed approximation",
    )
}

/// Target exponent `⌊(mh + m - 1)/n⌋ + 1` of the general system.
pub fn general_target(n: usize, m: usize, h: i64) -> i64 {
    let (n, m) = (n as i64, m as i64);
    (m * h + m - 1).div_euclid(n) + 1
}

/// `x ∈ K^m` with `1 <= max|x_j| <= q^h` and every
/// `||L_i(x)|| <= q^(-⌊(mh+m-1)/n⌋-1)`.
pub fn general_linear_forms(theta: &[Vec<LaurentSeries>], h: i64) -> Result<LinearFormsSolution> {
    if h < 0 || theta.is_empty() || theta[0].is_empty() {
        return Err(Error::Precondition("need h >= 0 and a nonempty matrix".into()));
    }
    let n = theta.len();
    let m = theta[0].len();
    let r = vec![general_target(n, m, h); n];
    guaranteed(
        solve_with_aux(theta, &r, &vec![h as usize; m])?,
        "linear forms approximation",
    )
}

/// `||L_i(x)|| <= q^(-t_i-1-δ_i)` and `|x_j| <= q^(t_{n+j})`, given
/// `Σ_{i<=n} t_i = Σ_j t_{n+j}` and `Σ δ_i <= m - 1`.
pub fn flexible_bounds(
    theta: &[Vec<LaurentSeries>],
    t: &[i64],
    delta: &[i64],
) -> Result<LinearFormsSolution> {
    let n = theta.len();
    let m = theta.first().map_or(0, Vec::len);
    if n == 0 || m == 0 {
        return Err(Error::Precondition("empty coefficient matrix".into()));
    }
    if t.len() != n + m || delta.len() != n {
        return Err(Error::Precondition(format!(
            "need {} exponents t and {} exponents δ",
            n + m,
            n
        )));
    }
    if t.iter().chain(delta).any(|&v| v < 0) {
        return Err(Error::Precondition("t and δ must be nonnegative".into()));
    }
    let lhs: i64 = t[..n].iter().sum();
    let rhs: i64 = t[n..].iter().sum();
    if lhs != rhs {
        return Err(Error::Precondition(format!(
            "balance condition fails: Σ t_i = {lhs} but Σ t_(n+j) = {rhs}"
        )));
    }
    let dsum: i64 = delta.iter().sum();
    if dsum > m as i64 - 1 {
        return Err(Error::Precondition(format!("Σ δ = {dsum} exceeds m - 1 = {}", m - 1)));
    }
    let r: Vec<i64> = (0..n).map(|i| t[i] + 1 + delta[i]).collect();
    let x_deg: Vec<usize> = t[n..].iter().map(|&v| v as usize).collect();
    guaranteed(solve_with_aux(theta, &r, &x_deg)?, "flexible bounds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::QuadraticSurd;
    use crate::laurent::Precision;
    use crate::poly::enumerate_polys;
    use crate::rational::RationalFn;

    fn fp(p: u64) -> FieldConfig {
        FieldConfig::new(p).unwrap()
    }

    fn poly(f: FieldConfig, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    fn surd(f: FieldConfig, d: &str, prec: i64) -> LaurentSeries {
        QuadraticSurd::sqrt_of(poly(f, d)).unwrap().to_series(prec).unwrap()
    }

    #[test]
    fn identity_has_no_small_points() {
        let f = fp(3);
        let one = LaurentSeries::one(f);
        let zero = LaurentSeries::exact_zero(f);
        let inst = GammaInstance::new(
            vec![vec![one.clone(), zero.clone()], vec![zero, one]],
            vec![1, 1],
            vec![2, 2],
        )
        .unwrap();
        assert_eq!(solve_gamma(&inst).unwrap(), None);
    }

    #[test]
    fn surd_pair_against_enumeration() {
        let f = fp(3);
        let alpha = surd(f, "T^2+1", 10);
        for r in [2, 3] {
            let inst = GammaInstance::new(
                vec![vec![LaurentSeries::one(f), alpha.neg()]],
                vec![r],
                vec![2, 2],
            )
            .unwrap();
            let sol = solve_gamma(&inst).unwrap();
            let mut found = 0;
            for y in enumerate_polys(f, 2) {
                for x in enumerate_polys(f, 2) {
                    let pt = IntegralPoint::new(vec![y.clone(), x]);
                    if !pt.is_zero() && inst.satisfies(&pt) {
                        found += 1;
                    }
                }
            }
            // r = 3 would need ||xα|| <= q^-3 with deg x <= 1, beyond the
            // convergent of degree 1
            assert_eq!(sol.is_some(), found > 0, "r = {r}");
            assert_eq!(found > 0, r == 2);
            if let Some(pt) = sol {
                assert!(inst.satisfies(&pt));
            }
        }
    }

    #[test]
    fn precision_deficit_is_named() {
        let f = fp(3);
        let alpha = surd(f, "T^2+1", 4);
        let inst = GammaInstance::new(vec![vec![LaurentSeries::one(f), alpha]], vec![3], vec![2, 2]).unwrap();
        match solve_gamma(&inst) {
            Err(Error::InsufficientPrecision {
                context,
                required,
                available,
            }) => {
                assert_eq!(context, "entry A[0][1]");
                assert_eq!((required, available), (5, 4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tightness_example() {
        let f = fp(3);
        let theta = LaurentSeries::from_rational(
            &RationalFn::new(Poly::one(f), poly(f, "T^2")).unwrap(),
            10,
        );
        let sol = dirichlet_single(&theta, 2).unwrap();
        assert_eq!(sol.x.coords[0].degree(), Some(0));
        assert_eq!(sol.achieved[0], Valuation::Exact(2));
        // no x of degree <= 1 does better than exponent 2
        for x in enumerate_polys(f, 1).filter(|x| !x.is_zero()) {
            let v = theta.mul_poly(&x).frac_norm().unwrap();
            assert!(!v.at_least(3).is_yes());
        }
    }

    #[test]
    fn polynomial_theta_gives_zero_norm() {
        let f = fp(5);
        let theta = LaurentSeries::from_poly(&poly(f, "T^3+2"));
        let sol = dirichlet_single(&theta, 3).unwrap();
        assert_eq!(sol.achieved[0], Valuation::Infinite);
        let all = dirichlet_simultaneous(&[theta.clone(), theta], 2).unwrap();
        assert!(all.achieved.iter().all(|v| *v == Valuation::Infinite));
    }

    #[test]
    fn simultaneous_pair() {
        let f = fp(5);
        let th = [surd(f, "T^2+1", 12), surd(f, "T^2+2", 12)];
        let sol = dirichlet_simultaneous(&th, 2).unwrap();
        assert!(sol.x.max_degree().unwrap() <= 2);
        assert!(sol.achieved.iter().all(|v| v.at_least(2).is_yes()));
    }

    #[test]
    fn transpose_pair() {
        let f = fp(3);
        let r = RationalFn::new(Poly::one(f), poly(f, "T^3+T+1")).unwrap();
        let th = [surd(f, "T^2+1", 12), LaurentSeries::from_rational(&r, 12)];
        let sol = transpose_form(&th, 1).unwrap();
        assert!(sol.achieved[0].at_least(4).is_yes());
        assert!(sol.x.max_degree().unwrap() <= 1);
    }

    #[test]
    fn specializations_share_targets() {
        for n in 1..5 {
            for h in 0..6 {
                assert_eq!(general_target(n, 1, h), simultaneous_target(n, h));
                assert_eq!(general_target(1, n, h), n as i64 * (h + 1));
            }
        }
    }

    #[test]
    fn zero_matrix_takes_first_basis_vector() {
        let f = fp(3);
        let z = LaurentSeries::exact_zero(f);
        let sol = general_linear_forms(&[vec![z.clone(), z]], 1).unwrap();
        assert_eq!(sol.x.coords, vec![Poly::one(f), Poly::zero(f)]);
    }

    #[test]
    fn flexible_bound_checks() {
        let f = fp(5);
        let th = surd(f, "T^2+1", 12).shift(2).truncate(12);
        let sol = flexible_bounds(&[vec![th.clone()]], &[0, 0], &[0]).unwrap();
        assert_eq!(sol.x.coords[0].degree(), Some(0));
        assert!(matches!(
            flexible_bounds(&[vec![th.clone()]], &[1, 0], &[0]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            flexible_bounds(&[vec![th.clone(), th]], &[1, 1, 0], &[2]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn extra_delta_gains_one_exponent() {
        let f = fp(3);
        let a = surd(f, "T^2+1", 14);
        let b = surd(f, "T^4+T+1", 14);
        let row = vec![vec![a, b]];
        let base = flexible_bounds(&row, &[2, 1, 1], &[0]).unwrap();
        let more = flexible_bounds(&row, &[2, 1, 1], &[1]).unwrap();
        assert_eq!(base.targets[0] + 1, more.targets[0]);
        assert!(more.achieved[0].at_least(4).is_yes());
    }

    #[test]
    fn square_instances_have_points() {
        let f = fp(3);
        let a = vec![
            vec![surd(f, "T^2+1", 20), LaurentSeries::one(f)],
            vec![LaurentSeries::monomial(f, 1, -1), surd(f, "T^2+2", 20)],
        ];
        let det = series_det(&a);
        let vdet = det.valuation().exact().unwrap();
        let r = vec![vdet, 1];
        let inst = GammaInstance::from_square(a, r).unwrap();
        let sol = solve_gamma(&inst).unwrap().unwrap();
        assert!(!sol.is_zero());
        assert!(inst.satisfies(&sol));
        assert_eq!(inst.matrix()[0][0].prec(), Precision::Abs(20));
    }
}
