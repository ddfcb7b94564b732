//! Deterministic text encodings for everything this crate emits: floats in
//! fixed `%.15e` scientific notation and a tiny JSON writer with
//! lexicographically ordered object keys. Byte-identical output across
//! runs and platforms is a contract, so nothing here consults locale,
//! hash ordering, or shortest-round-trip float printing.

/// Render a finite float as `d.ddddddddddddddde±XX` (15 fractional
/// digits, sign always present on the exponent, at least two exponent
/// digits). Negative zero folds to positive zero.
#[must_use]
pub fn format_e15(x: f64) -> String {
    debug_assert!(x.is_finite(), "refusing to format a non-finite value");
    if x == 0.0 {
        return "0.000000000000000e+00".to_owned();
    }
    let raw = format!("{x:.15e}");
    let (mantissa, exponent) = raw.split_once('e').expect("exponent always present");
    let (sign, digits) = match exponent.strip_prefix('-') {
        Some(d) => ('-', d),
        None => ('+', exponent),
    };
    format!("{mantissa}e{sign}{digits:0>2}")
}

/// A JSON value with deterministic rendering: object keys sort by byte
/// order, floats use [`format_e15`], integers print plainly. Parsing is
/// out of scope (serde_json handles input); this type only writes.
#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<JsonValue>),
    Object(Vec<(String, JsonValue)>),
}

impl JsonValue {
    /// Complex number as a two-element `[re, im]` array.
    #[must_use]
    pub fn complex(z: num_complex::Complex64) -> JsonValue {
        JsonValue::Array(vec![JsonValue::Float(z.re), JsonValue::Float(z.im)])
    }

    /// Compact single-line rendering with sorted object keys.
    #[must_use]
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            JsonValue::Null => out.push_str("null"),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Int(i) => out.push_str(&i.to_string()),
            JsonValue::Float(x) => out.push_str(&format_e15(*x)),
            JsonValue::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\r' => out.push_str("\\r"),
                        '\t' => out.push_str("\\t"),
                        c if (c as u32) < 0x20 => {
                            out.push_str(&format!("\\u{:04x}", c as u32));
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            JsonValue::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            JsonValue::Object(fields) => {
                let mut ordered: Vec<&(String, JsonValue)> = fields.iter().collect();
                ordered.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
                out.push('{');
                for (i, (key, value)) in ordered.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    JsonValue::Str((*key).clone()).write(out);
                    out.push(':');
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}
