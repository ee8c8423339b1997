//! Report envelope and the fixed-format JSON writer.
//!
//! Numbers are written with 17 significant digits, positionally when the
//! decimal exponent lies in `[-5, 17)` and in scientific form otherwise, so
//! every `f64` survives a round trip and equal inputs give equal bytes.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub entity: String,
    pub code: String,
    pub message: String,
}

impl Failure {
    pub fn new(entity: impl Into<String>, code: impl Into<String>, message: impl Into<String>) -> Self {
        Failure {
            entity: entity.into(),
            code: code.into(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// What every command prints. `ok` is false iff `failures` is nonempty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub failures: Vec<Failure>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, result: Value, failures: Vec<Failure>) -> Self {
        let inputs = match inputs {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".to_string(), other);
                m
            }
        };
        Report {
            command: command.to_string(),
            inputs,
            ok: failures.is_empty(),
            result,
            failures,
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// One `path: value` line per leaf.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("report is serializable");
        let mut out = String::new();
        flatten("", &v, &mut out);
        out
    }
}

/// Formats a finite `f64` with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    let s = format!("{v:.16e}");
    let (mant, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if mant.starts_with('-') { "-" } else { "" };
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    if (-5..17).contains(&exp) {
        if exp >= 0 {
            let (int, frac) = digits.split_at(exp as usize + 1);
            let frac = if frac.is_empty() { "0" } else { frac };
            format!("{sign}{int}.{frac}")
        } else {
            format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
        }
    } else {
        format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
    }
}

struct Fixed17<'a>(PrettyFormatter<'a>);

impl Formatter for Fixed17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(format_f64(v).as_bytes())
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        w.write_all(format_f64(f64::from(v)).as_bytes())
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON (two-space indent, trailing newline) in the fixed number
/// format.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed17(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser).expect("serializable");
    buf.push(b'\n');
    String::from_utf8(buf).expect("utf-8")
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        Value::Object(_) => out.push_str(&format!("{path}: {{}}\n")),
        Value::Array(_) => out.push_str(&format!("{path}: []\n")),
        Value::String(s) => out.push_str(&format!("{path}: {s}\n")),
        Value::Number(n) => {
            let s = if n.is_f64() {
                format_f64(n.as_f64().expect("f64"))
            } else {
                n.to_string()
            };
            out.push_str(&format!("{path}: {s}\n"));
        }
        other => out.push_str(&format!("{path}: {other}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(4.0), "4.0000000000000000");
        assert_eq!(format_f64(0.1), "0.10000000000000001");
        assert_eq!(format_f64(-2.5e-3), "-0.0025000000000000001");
        assert_eq!(format_f64(1e-7), "9.9999999999999995e-8");
        assert_eq!(format_f64(1e20), "1.0000000000000000e20");
        assert_eq!(format_f64(0.0), "0.0000000000000000");
    }

    #[test]
    fn formatted_numbers_round_trip() {
        for v in [
            0.1,
            1.0 / 3.0,
            -7.25e-300,
            6.02e23,
            f64::MAX,
            f64::MIN_POSITIVE,
            123456789.123,
        ] {
            let back: f64 = format_f64(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v}");
        }
    }

    #[test]
    fn key_order_is_preserved() {
        let r = Report::new(
            "x",
            json!({"zeta": 1, "alpha": 2}),
            json!({"b": 1.5, "a": true}),
            vec![],
        );
        let s = r.to_json();
        assert!(s.find("zeta").unwrap() < s.find("alpha").unwrap());
        assert!(s.find("\"command\"").unwrap() < s.find("\"inputs\"").unwrap());
        assert!(s.contains("1.5000000000000000"));
        assert!(!s.contains("timings"));
    }

    #[test]
    fn text_lines() {
        let r = Report::new("x", json!({"path": "a.json"}), json!({"n": [1, 2]}), vec![]);
        let t = r.to_text();
        assert!(t.contains("inputs.path: a.json\n"));
        assert!(t.contains("result.n[1]: 2\n"));
        assert!(t.contains("failures: []\n"));
    }
}
