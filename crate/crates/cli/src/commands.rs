use std::io::Read as _;

use fqdioph::cfrac::{cf_rational, cf_series, cf_surd, convergent_quality};
use fqdioph::laurent::parse_rational;
use fqdioph::linforms::{
    dirichlet_simultaneous, dirichlet_single, eval_forms, general_linear_forms, solve_gamma, transpose_form,
};
use fqdioph::oracle::estimate_b;
use fqdioph::quadform::{automorph, largest_quotient_degree, sigma, tau_theta, verify_automorph};
use fqdioph::transference::transfer;
use fqdioph::{
    BinaryQuadraticForm, CfExpansion, CfStatus, Element, Error, FieldConfig, GammaInstance, IntegralPoint,
    LaurentSeries, LinearFormsSolution, Poly, QuadraticSurd,
};
use num_rational::Ratio;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::out::{self, Failure};

/// Above this degree of `Q_n` the best-approximation scan is skipped.
const BEST_SCAN_MAX_DEG: usize = 6;

pub struct Ctx {
    pub p: Option<u64>,
    pub prec: i64,
}

/// A payload and the exit code it carries; verification reports exit 5
/// without being errors.
pub struct Done {
    pub value: Value,
    pub code: u8,
}

impl From<Value> for Done {
    fn from(value: Value) -> Self {
        Done { value, code: 0 }
    }
}

pub type Run = Result<Done, Failure>;

impl Ctx {
    /// The field from `--p`, falling back to the `p` of an input file.
    pub fn field(&self, from_file: Option<u64>) -> Result<FieldConfig, Failure> {
        let p = match (self.p, from_file) {
            (Some(a), Some(b)) if a != b => {
                return Err(Failure::Usage(format!("--p {a} conflicts with p = {b} in the input file")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Failure::Usage("--p <prime> is required".into())),
        };
        FieldConfig::new(p).map_err(Failure::input("--p", &p.to_string()))
    }
}

pub fn series_arg(f: FieldConfig, arg: &str, text: &str, prec: i64) -> Result<LaurentSeries, Failure> {
    let wrap = Failure::input(arg, text);
    let parsed = if text.trim_start().starts_with("surd:") {
        QuadraticSurd::parse(f, text).and_then(|s| s.to_series(prec))
    } else {
        LaurentSeries::parse(f, text)
    };
    parsed.map_err(wrap)
}

/// Like [`series_arg`], but a `rat:` spec stays an exact rational.
pub fn element_arg(f: FieldConfig, arg: &str, text: &str, prec: i64) -> Result<Element, Failure> {
    if text.trim_start().starts_with("rat:") {
        parse_rational(f, text)
            .map(Element::Rational)
            .map_err(Failure::input(arg, text))
    } else {
        series_arg(f, arg, text, prec).map(Element::Series)
    }
}

fn poly_arg(f: FieldConfig, arg: &str, text: &str) -> Result<Poly, Failure> {
    Poly::parse(f, text).map_err(Failure::input(arg, text))
}

pub fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {path}: {e}")))?;
    }
    Ok(s)
}

fn parse_json<T: DeserializeOwned>(path: &str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| {
        let offset: usize = text
            .split_inclusive('\n')
            .take(e.line().saturating_sub(1))
            .map(str::len)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        Failure::Input {
            arg: "--input".into(),
            text: path.into(),
            err: Error::parse(offset, e.to_string()),
        }
    })
}

fn specs(m: &[Vec<LaurentSeries>]) -> Value {
    m.iter()
        .map(|row| row.iter().map(LaurentSeries::to_spec).collect::<Vec<_>>())
        .collect()
}

fn matrix_arg(f: FieldConfig, rows: &[Vec<String>], prec: i64) -> Result<Vec<Vec<LaurentSeries>>, Failure> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, t)| series_arg(f, &format!("theta[{i}][{j}]"), t, prec))
                .collect()
        })
        .collect()
}

fn solution_json(sol: &LinearFormsSolution) -> Value {
    let tight = sol
        .achieved
        .iter()
        .zip(&sol.targets)
        .all(|(v, &t)| v.exact() == Some(t));
    json!({
        "x": out::polys(&sol.x.coords),
        "y": out::polys(&sol.y),
        "x_deg_bounds": sol.x_deg_bounds,
        "targets": sol.targets,
        "achieved": out::valuations(&sol.achieved),
        "tight": tight,
    })
}

fn with_header(command: &str, f: FieldConfig, body: Value) -> Value {
    let mut v = json!({ "schema": out::SCHEMA, "command": command, "p": f.p() });
    if let (Value::Object(head), Value::Object(rest)) = (&mut v, body) {
        head.extend(rest);
    }
    v
}

fn status_json(s: &CfStatus) -> Value {
    match *s {
        CfStatus::CompleteRational => json!({ "kind": "rational" }),
        CfStatus::Periodic { preperiod, period } => {
            json!({ "kind": "periodic", "preperiod": preperiod, "period": period })
        }
        CfStatus::PrecisionExhausted(k) => json!({ "kind": "precision_exhausted", "certified": k }),
        CfStatus::Truncated(k) => json!({ "kind": "truncated", "terms": k }),
    }
}

pub fn cf(ctx: &Ctx, input: &str, max_terms: usize, verify_quality: Option<usize>) -> Run {
    let f = ctx.field(None)?;
    let t = input.trim_start();
    let wrap = || Failure::input("--input", input);
    let (exp, alpha): (CfExpansion, LaurentSeries) = if t.starts_with("surd:") {
        let s = QuadraticSurd::parse(f, input).map_err(wrap())?;
        (cf_surd(&s)?, s.to_series(ctx.prec)?)
    } else if t.starts_with("rat:") {
        let r = parse_rational(f, input).map_err(wrap())?;
        (cf_rational(&r), LaurentSeries::from_rational(&r, ctx.prec))
    } else {
        let a = LaurentSeries::parse(f, input).map_err(wrap())?;
        (cf_series(&a, max_terms), a)
    };
    let shown = exp.quotients_upto(max_terms.max(exp.quotients.len()));
    let convergents: Vec<Value> = exp
        .convergents_upto(shown.len())
        .iter()
        .map(|(p, q)| json!({ "p": p.to_string(), "q": q.to_string() }))
        .collect();
    let mut body = json!({
        "input": input,
        "quotients": out::polys(&exp.quotients),
        "status": status_json(&exp.status),
        "unrolled": out::polys(&shown),
        "convergents": convergents,
        "tau": exp.tau().as_ref().map_or(Value::Null, out::qexp),
        "d_alpha": exp.largest_period_degree(),
    });
    let mut code = 0;
    if let Some(n) = verify_quality {
        let mut rows = Vec::new();
        for k in 0..n {
            let qk_deg = exp.convergents_upto(k + 1).last().and_then(|(_, q)| q.degree());
            let scan = qk_deg.is_some_and(|d| d <= BEST_SCAN_MAX_DEG);
            let q = convergent_quality(&exp, &alpha, k, scan)?;
            let best_ok = q.best_approximation.is_none_or(|(_, ok)| ok);
            if !q.holds || !best_ok {
                code = 5;
            }
            rows.push(json!({
                "n": k,
                "expected": q.expected,
                "actual": out::valuation(&q.actual),
                "holds": q.holds,
                "best_approximation": q.best_approximation.map(|(checked, ok)| json!({"competitors": checked, "holds": ok})),
            }));
        }
        body["quality"] = Value::Array(rows);
    }
    Ok(Done {
        value: with_header("cf", f, body),
        code,
    })
}

pub fn approx(ctx: &Ctx, h: i64, thetas: &[String], simultaneous: bool) -> Run {
    let f = ctx.field(None)?;
    let s: Vec<LaurentSeries> = thetas
        .iter()
        .map(|t| series_arg(f, "--theta", t, ctx.prec))
        .collect::<Result<_, _>>()?;
    let (theorem, sol) = if s.len() == 1 && !simultaneous {
        ("single", dirichlet_single(&s[0], h)?)
    } else {
        ("simultaneous", dirichlet_simultaneous(&s, h)?)
    };
    let mut body = json!({
        "theorem": theorem,
        "h": h,
        "theta": s.iter().map(LaurentSeries::to_spec).collect::<Vec<_>>(),
    });
    merge(&mut body, solution_json(&sol));
    Ok(with_header("approx", f, body).into())
}

pub fn approx_transpose(ctx: &Ctx, h: i64, thetas: &[String]) -> Run {
    let f = ctx.field(None)?;
    let s: Vec<LaurentSeries> = thetas
        .iter()
        .map(|t| series_arg(f, "--theta", t, ctx.prec))
        .collect::<Result<_, _>>()?;
    let sol = transpose_form(&s, h)?;
    let mut body = json!({
        "h": h,
        "theta": s.iter().map(LaurentSeries::to_spec).collect::<Vec<_>>(),
    });
    merge(&mut body, solution_json(&sol));
    Ok(with_header("approx-transpose", f, body).into())
}

#[derive(Deserialize)]
struct GeneralFile {
    p: Option<u64>,
    h: Option<i64>,
    theta: Vec<Vec<String>>,
}

pub fn approx_general(ctx: &Ctx, h: Option<i64>, rows: &[String], input: Option<&str>) -> Run {
    let file = match input {
        Some(path) => Some(parse_json::<GeneralFile>(path, &read_input(path)?)?),
        None => None,
    };
    let f = ctx.field(file.as_ref().and_then(|g| g.p))?;
    let h = h
        .or(file.as_ref().and_then(|g| g.h))
        .ok_or_else(|| Failure::Usage("--h is required".into()))?;
    let raw: Vec<Vec<String>> = match file {
        Some(g) if rows.is_empty() => g.theta,
        Some(_) => return Err(Failure::Usage("give either --row or --input, not both".into())),
        None => rows
            .iter()
            .map(|r| r.split(';').map(|s| s.trim().to_string()).collect())
            .collect(),
    };
    if raw.is_empty() {
        return Err(Failure::Usage("no coefficient rows given".into()));
    }
    let theta = matrix_arg(f, &raw, ctx.prec)?;
    let sol = general_linear_forms(&theta, h)?;
    let mut body = json!({
        "h": h,
        "n": theta.len(),
        "m": theta[0].len(),
        "theta": specs(&theta),
    });
    merge(&mut body, solution_json(&sol));
    Ok(with_header("approx-general", f, body).into())
}

#[derive(Deserialize)]
struct SolutionFile {
    p: Option<u64>,
    h: i64,
    theta: Vec<Vec<String>>,
    x: Vec<String>,
    targets: Vec<i64>,
}

pub fn transfer_cmd(ctx: &Ctx, input: &str) -> Run {
    let sol: SolutionFile = parse_json(input, &read_input(input)?)?;
    let f = ctx.field(sol.p)?;
    let theta = matrix_arg(f, &sol.theta, ctx.prec)?;
    let x = IntegralPoint::new(
        sol.x
            .iter()
            .enumerate()
            .map(|(j, t)| poly_arg(f, &format!("x[{j}]"), t))
            .collect::<Result<_, _>>()?,
    );
    let c_exp = *sol
        .targets
        .iter()
        .min()
        .ok_or_else(|| Failure::Usage("solution has no targets".into()))?;
    let cert = transfer(&theta, &x, c_exp, sol.h)?;
    let body = json!({
        "theta": specs(&theta),
        "x": out::polys(&x.coords),
        "c_exp": c_exp,
        "x_exp": sol.h,
        "y": out::polys(&cert.y.coords),
        "d_exp": cert.d_exp,
        "y_exp": cert.y_exp,
        "promised_d": out::ratio(cert.promised_d),
        "promised_y": out::ratio(cert.promised_y),
        "achieved": out::valuations(&cert.achieved),
    });
    Ok(with_header("transfer", f, body).into())
}

#[derive(Deserialize)]
struct GammaFile {
    p: Option<u64>,
    matrix: Vec<Vec<String>>,
    r: Vec<i64>,
    deg_bounds: Vec<usize>,
    #[serde(default)]
    nonzero_mask: Option<Vec<bool>>,
}

pub fn solve_gamma_cmd(ctx: &Ctx, input: &str) -> Run {
    let g: GammaFile = parse_json(input, &read_input(input)?)?;
    let f = ctx.field(g.p)?;
    let a = matrix_arg(f, &g.matrix, ctx.prec)?;
    let mut inst = GammaInstance::new(a, g.r, g.deg_bounds)?;
    if let Some(mask) = g.nonzero_mask {
        inst = inst.with_nonzero_mask(mask)?;
    }
    let Some(x) = solve_gamma(&inst)? else {
        return Err(Failure::NoSolution(
            "no nonzero point satisfies every constraint within the degree bounds".into(),
        ));
    };
    let achieved: Vec<_> = eval_forms(inst.matrix(), &x.coords)
        .iter()
        .map(LaurentSeries::valuation)
        .collect();
    let body = json!({
        "matrix": specs(inst.matrix()),
        "r": inst.targets(),
        "deg_bounds": inst.deg_bounds(),
        "x": out::polys(&x.coords),
        "achieved": out::valuations(&achieved),
    });
    Ok(with_header("solve-gamma", f, body).into())
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum FormOp {
    Sigma,
    Tau,
    Automorph,
    #[value(name = "D")]
    D,
}

pub fn form(ctx: &Ctx, text: &str, op: FormOp) -> Run {
    let f = ctx.field(None)?;
    let g = BinaryQuadraticForm::parse(f, text).map_err(Failure::input("--f", text))?;
    let roots = g.roots()?;
    let mut body = json!({
        "form": g.to_string(),
        "discriminant": g.discriminant().to_string(),
        "half_deg_delta": g.half_deg_delta(),
        "theta": roots.theta.to_string(),
    });
    let mut code = 0;
    match op {
        FormOp::Sigma => {
            let s = sigma(&g)?;
            let w: Vec<Value> = s.witnesses.iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect();
            body["op"] = json!("sigma");
            body["sigma"] = json!(s.exponent);
            body["search_deg"] = json!(s.search_deg);
            body["witnesses"] = Value::Array(w);
        }
        FormOp::Tau => {
            body["op"] = json!("tau");
            body["tau"] = out::qexp(&tau_theta(&g)?);
        }
        FormOp::Automorph => {
            let s = automorph(&g)?;
            verify_automorph(&g, &roots.theta, &s)?;
            body["op"] = json!("automorph");
            body["matrix"] = out::polys([&s.a, &s.b, &s.c, &s.d]);
            body["eta_exp"] = json!(s.eta_exp);
        }
        FormOp::D => {
            let r = largest_quotient_degree(&g)?;
            if !r.holds {
                code = 5;
            }
            body["op"] = json!("D");
            body["d_alpha"] = json!(r.d_alpha);
            body["t_f"] = json!(r.t_f);
            body["holds"] = json!(r.holds);
        }
    }
    Ok(Done {
        value: with_header("form", f, body),
        code,
    })
}

pub fn estimate_b_cmd(ctx: &Ctx, thetas: &[String], lambda: &str, max_deg: usize) -> Run {
    let f = ctx.field(None)?;
    let lam: Ratio<i64> = lambda
        .trim()
        .parse()
        .map_err(|_| Failure::input("--lambda", lambda)(Error::parse(0, "expected an integer or a/b")))?;
    let els: Vec<Element> = thetas
        .iter()
        .map(|t| element_arg(f, "--theta", t, ctx.prec))
        .collect::<Result<_, _>>()?;
    let est = estimate_b(&els, lam, max_deg)?;
    let windows: Vec<Value> = est
        .windows
        .iter()
        .map(|(w, e)| json!({ "from_deg": w, "exponent": out::qexp_ratio(e) }))
        .collect();
    let body = json!({
        "lambda": out::ratio(lam),
        "max_deg": max_deg,
        "windows": windows,
        "estimate": out::qexp_ratio(&est.estimate),
    });
    Ok(with_header("estimate-b", f, body).into())
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}
