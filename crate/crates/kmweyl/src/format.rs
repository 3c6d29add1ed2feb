//! Output formatting shared by all subcommands.

use std::fmt::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use kmweyl_core::{BigInt, BigRational, Complex64};

const SIG: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tsv,
    Json,
}

/// C-style `%.12g`.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // the exponent after rounding to SIG digits decides the style
    let sci = format!("{:.*e}", SIG - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -4 || exp >= SIG as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A JSON number holding `x` rounded to 12 significant digits.
pub fn json_f64(x: f64) -> Value {
    match fmt_g(x).parse::<f64>() {
        Ok(r) if r.is_finite() => serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number),
        _ => Value::String(fmt_g(x)),
    }
}

pub fn json_complex(z: Complex64) -> Value {
    serde_json::json!({ "re": json_f64(z.re), "im": json_f64(z.im) })
}

/// Integers that fit in `i64` become numbers, bigger ones strings.
pub fn json_int(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

pub fn json_rational(r: &BigRational) -> Value {
    if r.is_integer() {
        json_int(r.numer())
    } else {
        Value::String(r.to_string())
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_g(z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", fmt_g(z.re), fmt_g(z.im))
    } else {
        format!("{}-{}i", fmt_g(z.re), fmt_g(-z.im))
    }
}

/// Tab-separated table with a `#` header line and optional trailing
/// `#` comment lines.
#[derive(Clone, Debug, Default)]
pub struct Tsv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    footer: Vec<String>,
}

impl Tsv {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Tsv { header: header.into_iter().map(Into::into).collect(), ..Tsv::default() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn footer(&mut self, line: impl Into<String>) {
        self.footer.push(line.into());
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.header.is_empty() {
            let _ = writeln!(out, "# {}", self.header.join("\t"));
        }
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join("\t"));
        }
        for f in &self.footer {
            let _ = writeln!(out, "# {f}");
        }
        out
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
