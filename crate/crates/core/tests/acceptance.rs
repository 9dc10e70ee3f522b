//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use fqdioph::cfrac::{cf_surd, convergent_quality, tau_of_surd, CfStatus};
use fqdioph::linforms::{
    dirichlet_simultaneous, general_linear_forms, general_target, series_det, simultaneous_target, solve_gamma,
    transpose,
};
use fqdioph::oracle::{
    best_simultaneous, best_up_to, estimate_b, exhaustive_gamma, mahler_extremal_check, verify_lower_bound, Element,
};
use fqdioph::quadform::{check_quadratic_lower_bound, largest_quotient_degree, sigma_brute_force};
use fqdioph::transference::transfer;
use fqdioph::{GammaInstance, LaurentSeries, Poly, QExp, QuadraticSurd, Valuation};
use num_rational::Ratio;
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

/// Independent `v(||xθ||)`: rationals by polynomial remainder, series by
/// multiplication and truncation.
fn norm_of(theta: &Element, x: &Poly) -> Result<Valuation, String> {
    theta.norm(x).map_err(e)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(1);
    let mut by_kind = [0usize; 3];
    for case in 0..200 {
        let p = [3u64, 5, 7][case % 3];
        let f = fp(p);
        let n = rng.gen_range(1..=3usize);
        let h = rng.gen_range(0..=4i64);
        let mut theta = Vec::new();
        let mut exact = Vec::new();
        for _ in 0..n {
            let kind = rng.gen_range(0..3);
            by_kind[kind] += 1;
            match kind {
                0 => {
                    let s = surd(&mut rng, f, 1).to_series(40).map_err(e)?;
                    exact.push(Element::Series(s.clone()));
                    theta.push(s);
                }
                1 => {
                    let r = rational(&mut rng, f);
                    theta.push(LaurentSeries::from_rational(&r, 40));
                    exact.push(Element::Rational(r));
                }
                _ => {
                    let s = series(&mut rng, f, 40);
                    exact.push(Element::Series(s.clone()));
                    theta.push(s);
                }
            }
        }
        let sol = dirichlet_simultaneous(&theta, h).map_err(|err| format!("case {case}: {err}"))?;
        let target = simultaneous_target(n, h);
        // max ||xθ_i|| <= (q|H|)^(-1/n) with integer valuations: v >= ceil((h+1)/n)
        check(target == (h + 1 + n as i64 - 1).div_euclid(n as i64), || format!("target {target}"))?;
        let x = &sol.x.coords[0];
        check(!x.is_zero() && x.degree().unwrap() as i64 <= h, || {
            format!("case {case}: x = {x} outside 1 <= |x| <= q^{h}")
        })?;
        for t in &exact {
            let v = norm_of(t, x)?;
            check(v.at_least(target).is_yes(), || {
                format!("case {case} (p={p}, n={n}, h={h}): ||xθ|| exponent {v} < {target}")
            })?;
        }
        // the oracle's best over deg <= h is at least as good
        let table = best_simultaneous(&exact, h as usize).map_err(e)?;
        check(best_up_to(&table, h as usize).value_le(&QExp::Finite(target)), || {
            format!("case {case}: oracle best worse than theorem bound")
        })?;
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!(
        "200 instances (surd/rational/series coefficients {by_kind:?}), 0 failures, {:.1}s",
        took.as_secs_f64()
    ))
}

fn random_square(rng: &mut TestRng, p: u64, n: usize, prec: i64) -> Option<(Vec<Vec<LaurentSeries>>, i64)> {
    let f = fp(p);
    let a: Vec<Vec<LaurentSeries>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| match rng.gen_range(0..3) {
                    0 => LaurentSeries::from_poly(&poly(rng, f, 1)),
                    1 => surd(rng, f, 1).to_series(prec).unwrap(),
                    _ => series(rng, f, prec),
                })
                .collect()
        })
        .collect();
    let vdet = series_det(&a).valuation().exact()?;
    Some((a, vdet))
}

fn split_targets(rng: &mut TestRng, n: usize, total: i64) -> Vec<i64> {
    let mut r: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=2)).collect();
    let rest: i64 = r[..n - 1].iter().sum();
    r[n - 1] = total - rest;
    r
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut solved = 0;
    while solved < 200 {
        let p = [3u64, 5, 7][solved % 3];
        let n = rng.gen_range(1..=3usize);
        let Some((a, vdet)) = random_square(&mut rng, p, n, 60) else { continue };
        let slack = rng.gen_range(0..=2);
        let r = split_targets(&mut rng, n, vdet + n as i64 - 1 - slack);
        let inst = GammaInstance::from_square(a, r.clone()).map_err(e)?;
        let x = solve_gamma(&inst)
            .map_err(|err| format!("instance {solved}: {err}"))?
            .ok_or_else(|| format!("instance {solved}: no point below threshold (r = {r:?}, v(det) = {vdet})"))?;
        check(!x.is_zero() && inst.satisfies(&x), || format!("instance {solved}: bad point {x}"))?;
        solved += 1;
    }
    let mut absent = 0;
    let mut present = 0;
    let mut attempts = 0;
    while absent < 50 {
        attempts += 1;
        if attempts > 20_000 {
            return Err(format!("only {absent} absent instances found"));
        }
        let n = rng.gen_range(1..=2usize);
        let Some((a, vdet)) = random_square(&mut rng, 3, n, 60) else { continue };
        let over = rng.gen_range(0..=1);
        let r = split_targets(&mut rng, n, vdet + n as i64 + over);
        let Ok(inst) = GammaInstance::from_square(a, r) else { continue };
        let vars: usize = inst.deg_bounds().iter().map(|d| d + 1).sum();
        if vars > 12 {
            continue;
        }
        let brute = exhaustive_gamma(&inst).map_err(e)?;
        let solver = solve_gamma(&inst).map_err(e)?;
        check(brute.is_some() == solver.is_some(), || {
            format!("solver and exhaustive search disagree on existence ({brute:?} vs {solver:?})")
        })?;
        if brute.is_some() {
            present += 1;
        } else {
            absent += 1;
        }
    }
    Ok(format!(
        "200/200 solved below threshold; 50 absent instances confirmed by exhaustive search (+{present} present agreeing)"
    ))
}

fn criterion_3() -> Outcome {
    let f5 = fp(5);
    let a10 = QuadraticSurd::parse(f5, "surd:(-T+sqrt(T^2+4))/2").map_err(e)?;
    let exp = cf_surd(&a10).map_err(e)?;
    let t = Poly::t(f5);
    check(exp.quotients_upto(6) == [vec![Poly::zero(f5)], vec![t.clone(); 5]].concat(), || {
        format!("α(1,0) quotients {:?}", exp.quotients_upto(6))
    })?;
    check(exp.status == CfStatus::Periodic { preperiod: 1, period: 1 }, || format!("{:?}", exp.status))?;
    check(tau_of_surd(&a10).map_err(e)? == QExp::Finite(1), || "τ(α(1,0))".into())?;

    let f3 = fp(3);
    let d = Poly::parse(f3, "T^2+1").map_err(e)?;
    let ad = QuadraticSurd::parse(f3, "surd:(-T^2-1+sqrt(T^4+2*T^2+2))/2").map_err(e)?;
    let exp = cf_surd(&ad).map_err(e)?;
    check(exp.quotients_upto(5) == [vec![Poly::zero(f3)], vec![d.clone(); 4]].concat(), || {
        format!("d = T^2+1 quotients {:?}", exp.quotients_upto(5))
    })?;
    check(matches!(exp.status, CfStatus::Periodic { period: 1, .. }), || format!("{:?}", exp.status))?;
    check(tau_of_surd(&ad).map_err(e)? == QExp::Finite(2), || "τ exponent for d = T^2+1".into())?;

    let root = QuadraticSurd::sqrt_of(Poly::parse(f5, "T^2+4").map_err(e)?).map_err(e)?;
    check(root.integral_part() == t, || format!("[sqrt(T^2+4)] = {}", root.integral_part()))?;
    Ok("α(1,0) = [0; T, T, ...] with τ = q^-1; [0; T^2+1, ...] with τ = q^-2; [sqrt(T^2+4)] = T".into())
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let mut done = 0;
    let mut competitors = 0;
    let mut skipped = 0;
    while done < 10 {
        let f = fp(if done % 2 == 0 { 3 } else { 5 });
        let a = surd(&mut rng, f, 1);
        let exp = cf_surd(&a).map_err(e)?;
        let conv = exp.convergents_upto(4);
        if conv[3].1.degree().unwrap() > 6 {
            skipped += 1;
            continue;
        }
        let q8 = exp.convergents_upto(10)[9].1.degree().unwrap() as i64;
        let alpha = a.to_series(3 * q8 + 20).map_err(e)?;
        for n in 0..8 {
            let qual = convergent_quality(&exp, &alpha, n, n == 3).map_err(e)?;
            check(qual.holds, || {
                format!("{a}: convergent {n} exponent {} expected {}", qual.actual, qual.expected)
            })?;
            if let Some((count, ok)) = qual.best_approximation {
                competitors += count;
                check(ok, || format!("{a}: a competitor beats Q_3"))?;
            }
        }
        done += 1;
    }
    Ok(format!(
        "10 surds x 8 convergents exact; {competitors} competitors below |Q_3| all worse ({skipped} surds with deg Q_3 > 6 resampled)"
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    let mut lines = Vec::new();
    for (p, degs, coeff_deg) in [(3u64, &[2usize, 4][..], 2usize), (5, &[2][..], 1)] {
        let f = fp(p);
        let mut t_neg = 0;
        for i in 0..20 {
            let g = form(&mut rng, f, coeff_deg, degs);
            let half = g.discriminant().degree().unwrap() as i64 / 2;
            let sigma = sigma_brute_force(&g, half as usize + 2).exponent;
            let theta = g.roots().map_err(e)?.theta;
            let tau = tau_of_surd(&theta).map_err(e)?;
            check(tau == QExp::Finite(sigma + half), || {
                format!("F_{p} form {i} ({g}): τ {tau:?}, σ exponent {sigma}, deg δ / 2 = {half}")
            })?;
            let rep = largest_quotient_degree(&g).map_err(e)?;
            check(rep.holds && rep.t_f == sigma, || format!("F_{p} form {i} ({g}): {rep:?}"))?;
            if sigma < 0 {
                t_neg += 1;
            }
        }
        lines.push(format!("F_{p}: 20 forms ({t_neg} with content, t(f) < 0)"));
    }
    Ok(format!("τ = |δ|^(-1/2) σ and D(α) = deg δ/2 + t(f) exact; {}", lines.join(", ")))
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let f = fp(3);
    let mut checked = 0;
    let mut premise = 0;
    let mut narrow = 0;
    for i in 0..10 {
        // deg a > deg δ / 2 makes |θ - φ| < 1, so the premise is not automatic
        let g = loop {
            let g = form(&mut rng, f, 2, &[2, 4]);
            if i % 2 == 1 || g.a().degree().unwrap() as i64 > g.half_deg_delta() {
                break g;
            }
        };
        if g.a().degree().unwrap() as i64 > g.half_deg_delta() {
            narrow += 1;
        }
        let rep = check_quadratic_lower_bound(&g, 6).map_err(e)?;
        check(rep.exceptions.is_empty(), || {
            format!("surd {i} ({g}): exceptions {:?}", rep.exceptions)
        })?;
        checked += rep.checked;
        premise += rep.premise_held;
    }
    Ok(format!(
        "10 surds ({narrow} with |θ-φ| < 1), {checked} monic Q with deg <= 6, premise held {premise} times, 0 exceptions"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    let mut l2 = 0;
    for case in 0..50 {
        let p = [3u64, 5][case % 2];
        let f = fp(p);
        let n = rng.gen_range(1..=2usize);
        let m = rng.gen_range(1..=2usize);
        let h = rng.gen_range(0..=3i64);
        let theta: Vec<Vec<LaurentSeries>> = (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            surd(&mut rng, f, 1).to_series(60).unwrap()
                        } else {
                            series(&mut rng, f, 60)
                        }
                    })
                    .collect()
            })
            .collect();
        let sol = general_linear_forms(&theta, h).map_err(|err| format!("case {case}: {err}"))?;
        let c = general_target(n, m, h);
        let cert = transfer(&theta, &sol.x, c, h).map_err(|err| format!("case {case}: {err}"))?;
        // independent re-verification
        check(!cert.y.is_zero(), || format!("case {case}: y = 0"))?;
        check(cert.y.max_degree().unwrap() as i64 <= cert.y_exp, || format!("case {case}: |y| too large"))?;
        check(cert.d_exp == cert.promised_d.floor().to_integer(), || {
            format!("case {case}: D exponent {} vs promised {}", cert.d_exp, cert.promised_d)
        })?;
        check(cert.y_exp == cert.promised_y.ceil().to_integer(), || {
            format!("case {case}: Y exponent {} vs promised {}", cert.y_exp, cert.promised_y)
        })?;
        let mt = transpose(&theta);
        for (j, row) in mt.iter().enumerate() {
            let mut acc = LaurentSeries::exact_zero(f);
            for (t, y) in row.iter().zip(&cert.y.coords) {
                acc = acc.add(&t.mul_poly(y));
            }
            let v = acc.frac_norm().map_err(e)?;
            check(v.at_least(cert.d_exp).is_yes(), || {
                format!("case {case}: ||M_{j}(y)|| exponent {v} < {}", cert.d_exp)
            })?;
        }
        if n + m == 2 {
            l2 += 1;
            check((cert.d_exp, cert.y_exp) == (c, h), || {
                format!("case {case}: l = 2 bounds ({}, {}) differ from (C, X) = ({c}, {h})", cert.d_exp, cert.y_exp)
            })?;
        }
    }
    check(l2 > 0, || "no l = 2 instance drawn".into())?;
    Ok(format!("50 transfers verified; {l2} l = 2 cases returned (C, X) exactly"))
}

fn criterion_8() -> Outcome {
    let f = fp(3);
    let w = mahler_extremal_check(f, 4, 40).map_err(e)?;
    check(w.contains(&Poly::t(f)), || "T is not a witness".into())?;
    let degs: Vec<usize> = w.iter().map(|q| q.degree().unwrap()).collect();
    Ok(format!("{} witnesses, degrees {:?}, T included", w.len(), degs))
}

fn criterion_9() -> Outcome {
    let alpha = hensel_cubic(60);
    let theta = [Element::Series(alpha.clone()), Element::Series(alpha.mul(&alpha))];
    let est = verify_lower_bound(&theta, 5).map_err(e)?;
    check(matches!(est.gamma, QExp::Finite(_)), || "γ is zero".into())?;
    check(est.no_decay(5), || format!("per-degree exponents decay: {:?}", est.per_degree))?;
    let shown: Vec<String> = est
        .per_degree
        .iter()
        .map(|(d, q)| match q {
            QExp::Finite(r) => format!("{d}:{r}"),
            QExp::Zero => format!("{d}:zero"),
        })
        .collect();
    Ok(format!("γ = q^-({}) > 0, per-degree exponents [{}]", match est.gamma {
        QExp::Finite(r) => r.to_string(),
        QExp::Zero => "inf".into(),
    }, shown.join(", ")))
}

fn criterion_10() -> Outcome {
    let mut rng = rng(10);
    let mut zero = 0;
    let mut surd_cases = 0;
    for case in 0..10 {
        let f = fp([3u64, 5][case % 2]);
        let lambda = Ratio::new(rng.gen_range(-2..=4), rng.gen_range(1..=2));
        let mut theta = vec![Element::surd(&surd(&mut rng, f, 1), 40).map_err(e)?];
        theta.push(Element::Rational(rational(&mut rng, f)));
        let est = estimate_b(&theta, lambda, 4).map_err(e)?;
        check(est.estimate == QExp::Zero, || format!("case {case}: estimate {:?}", est.estimate))?;
        zero += 1;
    }
    for case in 0..10 {
        let f = fp(3);
        let theta = vec![
            Element::surd(&surd(&mut rng, f, 1), 40).map_err(e)?,
            Element::surd(&surd(&mut rng, f, 1), 40).map_err(e)?,
        ];
        let est = estimate_b(&theta, Ratio::from_integer(1), 5).map_err(e)?;
        check(est.estimate.value_le(&QExp::Finite(Ratio::from_integer(1))), || {
            format!("case {case}: estimate {:?} above q^-1", est.estimate)
        })?;
        surd_cases += 1;
    }
    Ok(format!("{zero} instances with a rational give exactly 0; {surd_cases} surd pairs at λ = 1 give <= q^-1"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("Dirichlet suite", criterion_1),
        ("Minkowski threshold and oracle equivalence", criterion_2),
        ("continued fraction regressions", criterion_3),
        ("convergent exponent equality", criterion_4),
        ("τ, σ and D(α) identities", criterion_5),
        ("quadratic lower bound", criterion_6),
        ("transference", criterion_7),
        ("Mahler extremal witness", criterion_8),
        ("lower bound shadow for (α, α²)", criterion_9),
        ("B estimator", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
