//! JSON shapes shared by every subcommand.
//!
//! Exponents are integers or `{num, den}`; the exponent of the value `0`
//! is the string `"inf"`, matching the `@inf` precision marker.

use std::fmt::Write as _;

use fqdioph::{Error, Poly, QExponent, RationalQExponent, Valuation};
use num_rational::Ratio;
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

pub fn ratio(r: Ratio<i64>) -> Value {
    if *r.denom() == 1 {
        json!(r.numer())
    } else {
        json!({ "num": r.numer(), "den": r.denom() })
    }
}

pub fn qexp(e: &QExponent) -> Value {
    match e.exponent() {
        Some(v) => json!(v),
        None => json!("inf"),
    }
}

pub fn qexp_ratio(e: &RationalQExponent) -> Value {
    match e.exponent() {
        Some(v) => ratio(*v),
        None => json!("inf"),
    }
}

pub fn valuation(v: &Valuation) -> Value {
    match v {
        Valuation::Exact(e) => json!(e),
        Valuation::AtLeast(e) => json!({ "at_least": e }),
        Valuation::Infinite => json!("inf"),
    }
}

pub fn valuations(vs: &[Valuation]) -> Value {
    Value::Array(vs.iter().map(valuation).collect())
}

pub fn polys<'a>(ps: impl IntoIterator<Item = &'a Poly>) -> Value {
    Value::Array(ps.into_iter().map(|p| json!(p.to_string())).collect())
}

/// Why a command stopped, and the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    /// A library error raised while handling the named input.
    Input { arg: String, text: String, err: Error },
    Lib(Error),
    Usage(String),
    NoSolution(String),
}

impl Failure {
    pub fn input(arg: &str, text: &str) -> impl FnOnce(Error) -> Failure {
        let (arg, text) = (arg.to_string(), text.to_string());
        move |err| Failure::Input { arg, text, err }
    }

    fn error(&self) -> Option<&Error> {
        match self {
            Failure::Input { err, .. } | Failure::Lib(err) => Some(err),
            _ => None,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::NoSolution(_) => 4,
            _ => match self.error() {
                Some(Error::InsufficientPrecision { .. } | Error::UnboundedPrecision(_)) => 3,
                Some(Error::Verification(_)) => 5,
                _ => 2,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            3 => "precision",
            4 => "no_solution",
            5 => "verification",
            _ if matches!(self.error(), Some(Error::Parse { .. })) => "parse",
            _ => "input",
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Input { arg, text, err } => format!("{arg} '{text}': {err}"),
            Failure::Lib(err) => err.to_string(),
            Failure::Usage(msg) | Failure::NoSolution(msg) => msg.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut err = Map::new();
        err.insert("kind".into(), json!(self.kind()));
        err.insert("message".into(), json!(self.message()));
        if let Failure::Input { arg, text, .. } = self {
            err.insert("argument".into(), json!(arg));
            err.insert("input".into(), json!(text));
        }
        match self.error() {
            Some(Error::Parse { pos, .. }) => {
                err.insert("position".into(), json!(pos));
            }
            Some(Error::InsufficientPrecision { required, available, .. }) => {
                err.insert("required".into(), json!(required));
                err.insert("available".into(), json!(available));
            }
            _ => {}
        }
        Value::Object(err)
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Lib(err)
    }
}

/// Indented `key: value` rendering for the non-JSON mode.
pub fn text(v: &Value) -> String {
    let mut s = String::new();
    render(&mut s, v, 0);
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(o) if o.len() == 2 && o.contains_key("num") && o.contains_key("den") => {
            Some(format!("{}/{}", o["num"], o["den"]))
        }
        Value::Object(o) if o.len() == 1 && o.contains_key("at_least") => Some(format!(">={}", o["at_least"])),
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn render(s: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(t) => writeln!(s, "{pad}{k}: {t}").unwrap(),
                    None => {
                        writeln!(s, "{pad}{k}:").unwrap();
                        render(s, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(t) => writeln!(s, "{pad}- {t}").unwrap(),
                    None => {
                        writeln!(s, "{pad}- [{i}]").unwrap();
                        render(s, x, depth + 1);
                    }
                }
            }
        }
        other => writeln!(s, "{pad}{}", scalar(other).unwrap()).unwrap(),
    }
}
