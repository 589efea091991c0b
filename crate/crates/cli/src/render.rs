//! Output records and their text / JSON renderings.

use mtzeta::identities::CheckReport;
use mtzeta::numerics::{decimal, ValueWithError};
use rug::{Float, Rational};
use serde_json::{json, Map, Value};

/// Digits the precision can carry: `floor(P log10 2) - 2`.
pub fn precision_digits(prec: u32) -> usize {
    ((prec as f64 * std::f64::consts::LOG10_2).floor() as usize).saturating_sub(2).max(1)
}

/// Significant digits of `x` covered by an absolute error `err`, capped by the precision.
fn certified_digits(x: &Float, err: &Float, prec: u32) -> usize {
    let cap = precision_digits(prec);
    if x.is_zero() || err.is_zero() {
        return cap;
    }
    let mag = Float::with_val(64, x.abs_ref()).log10();
    let e = Float::with_val(64, err.log10_ref());
    let d = Float::with_val(64, &mag - &e).floor().to_f64();
    if d < 1.0 {
        1
    } else {
        (d as usize).min(cap)
    }
}

/// Text form of a nonnegative error or residual.
pub fn small(x: &Float) -> String {
    decimal(x, 3)
}

/// A value at precision `prec` with certified and round-trip renderings.
pub struct Rendered {
    pub re: String,
    pub im: String,
    pub re_digits: usize,
    pub im_digits: usize,
    pub re_exact: String,
    pub im_exact: String,
    pub abs_error: String,
    pub rigorous: bool,
}

impl Rendered {
    pub fn new(v: &ValueWithError, prec: u32) -> Self {
        let rounded = v.estimate.with_prec(prec);
        let re_digits = certified_digits(&rounded.re, &v.abs_error, prec);
        let im_digits = certified_digits(&rounded.im, &v.abs_error, prec);
        Self {
            re: decimal(&rounded.re, re_digits),
            im: decimal(&rounded.im, im_digits),
            re_digits,
            im_digits,
            re_exact: exact_string(&rounded.re),
            im_exact: exact_string(&rounded.im),
            abs_error: small(&v.abs_error),
            rigorous: v.rigorous,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im == "0"
    }

    /// `re` or `re+imi`.
    pub fn text(&self) -> String {
        if self.is_real() {
            self.re.clone()
        } else if self.im.starts_with('-') {
            format!("{}{}i", self.re, self.im)
        } else {
            format!("{}+{}i", self.re, self.im)
        }
    }

    pub fn json(&self) -> Value {
        json!({
            "value": { "re": self.re, "im": self.im },
            "digits": { "re": self.re_digits, "im": self.im_digits },
            "value_exact": { "re": self.re_exact, "im": self.im_exact },
            "abs_error": self.abs_error,
            "rigorous": self.rigorous,
        })
    }
}

/// Shortest decimal that parses back to exactly `x` at its precision.
pub fn exact_string(x: &Float) -> String {
    if x.is_zero() {
        "0".to_string()
    } else {
        x.to_string_radix(10, None)
    }
}

fn parameters_json(params: &[(String, String)]) -> Value {
    let mut map = Map::new();
    for (k, v) in params {
        map.insert(k.clone(), Value::String(v.clone()));
    }
    Value::Object(map)
}

pub struct EvalRecord {
    pub command: String,
    pub kind: &'static str,
    pub label: String,
    pub parameters: Vec<(String, String)>,
    pub prec: u32,
    pub value: Rendered,
    pub elapsed_ms: f64,
}

impl EvalRecord {
    pub fn json(&self) -> Value {
        let mut out = json!({
            "command": self.command,
            "kind": self.kind,
            "parameters": parameters_json(&self.parameters),
            "prec": self.prec,
        });
        let Value::Object(fields) = self.value.json() else { unreachable!() };
        out.as_object_mut().expect("object").extend(fields);
        out["elapsed_ms"] = json!(self.elapsed_ms);
        out
    }

    pub fn text(&self) -> String {
        let v = &self.value;
        let digits = if v.is_real() {
            v.re_digits.to_string()
        } else {
            format!("{}/{}", v.re_digits, v.im_digits)
        };
        let rigor = if v.rigorous { "rigorous" } else { "estimated" };
        format!(
            "{} = {}\n  abs error {} ({rigor}), {digits} digits at {} bits, {:.1} ms\n",
            self.label,
            v.text(),
            v.abs_error,
            self.prec,
            self.elapsed_ms
        )
    }
}

pub struct CoeffTable {
    pub command: String,
    pub index: String,
    pub rows: Vec<Rational>,
    pub elapsed_ms: f64,
}

impl CoeffTable {
    pub fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(m, c)| json!({ "m": m, "numerator": c.numer().to_string(), "denominator": c.denom().to_string() }))
            .collect();
        json!({ "command": self.command, "index": self.index, "rows": rows, "elapsed_ms": self.elapsed_ms })
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("m,numerator,denominator\n");
        for (m, c) in self.rows.iter().enumerate() {
            out += &format!("{m},{},{}\n", c.numer(), c.denom());
        }
        out
    }

    pub fn text(&self) -> String {
        let cells: Vec<(String, String)> = self.rows.iter().map(|c| (c.numer().to_string(), c.denom().to_string())).collect();
        let wm = (self.rows.len().saturating_sub(1)).to_string().len().max(1);
        let wn = cells.iter().map(|c| c.0.len()).max().unwrap_or(0).max("numerator".len());
        let mut out = format!("{:>wm$}  {:>wn$}  denominator\n", "m", "numerator");
        for (m, (n, d)) in cells.iter().enumerate() {
            out += &format!("{m:>wm$}  {n:>wn$}  {d}\n");
        }
        out
    }
}

pub fn report_json(r: &CheckReport, elapsed_ms: f64) -> Value {
    let sides: Vec<Value> = r
        .side_conditions
        .iter()
        .map(|c| json!({ "name": c.name, "detail": c.detail, "holds": c.holds }))
        .collect();
    json!({
        "identity": r.identity_id,
        "parameters": parameters_json(&r.parameters),
        "prec": r.prec,
        "lhs": Rendered::new(&r.lhs, r.prec).json(),
        "rhs": Rendered::new(&r.rhs, r.prec).json(),
        "residual": small(&r.residual()),
        "budget": small(&r.budget()),
        "slack": r.slack,
        "side_conditions": sides,
        "pass": r.pass(),
        "elapsed_ms": elapsed_ms,
    })
}

pub fn report_line(r: &CheckReport) -> String {
    let verdict = if r.pass() { "PASS" } else { "FAIL" };
    let mut line = format!(
        "{verdict}  {:<12} {:<24} residual {:<10} budget {}",
        r.identity_id,
        r.parameter_string(),
        small(&r.residual()),
        small(&r.budget())
    );
    for c in r.side_conditions.iter() {
        line += &format!("  {}={}{}", c.name, c.detail, if c.holds { "" } else { "(violated)" });
    }
    line
}
