use serde::Serialize;
use serde_json::Value;

/// Largest integer every JSON reader holds exactly.
const JSON_SAFE_INTEGER: u64 = 1 << 53;

/// One command's result in both output shapes.
pub struct Outcome {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    /// False when the command is a check and the check failed.
    pub ok: bool,
}

impl Outcome {
    pub fn new<T: Serialize>(header: Vec<&'static str>, rows: Vec<Vec<String>>, json: &T) -> Self {
        let mut json = serde_json::to_value(json).expect("results serialize");
        protect_integers(&mut json);
        Outcome { header, rows, json, ok: true }
    }

    pub fn with_status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(self.header.iter().map(|h| h.to_string()).collect::<Vec<_>>())
            .chain(self.rows.iter().cloned())
        {
            let cells: Vec<String> = line.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Rewrites integers beyond 2^53 in magnitude as decimal strings.
pub fn protect_integers(value: &mut Value) {
    match value {
        Value::Number(n) => {
            let large = n.as_u64().map(|v| v > JSON_SAFE_INTEGER).or_else(|| n.as_i64().map(|v| v.unsigned_abs() > JSON_SAFE_INTEGER));
            if large == Some(true) {
                *value = Value::String(n.to_string());
            }
        }
        Value::Array(items) => items.iter_mut().for_each(protect_integers),
        Value::Object(map) => map.values_mut().for_each(protect_integers),
        _ => {}
    }
}

/// 17 significant digits, positional for ordinary magnitudes.
pub fn float(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let exponent = v.abs().log10().floor() as i32;
    if (-5..17).contains(&exponent) {
        format!("{:.*}", (16 - exponent) as usize, v)
    } else {
        format!("{:.16e}", v)
    }
}

pub fn opt_float(v: Option<f64>) -> String {
    v.map(float).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn large_integers_become_strings() {
        let mut v = json!({"a": 9007199254740992u64, "b": 9007199254740993u64, "c": [-9007199254740993i64, 1.5]});
        protect_integers(&mut v);
        assert_eq!(v, json!({"a": 9007199254740992u64, "b": "9007199254740993", "c": ["-9007199254740993", 1.5]}));
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(float(0.1), "0.10000000000000001");
        assert_eq!(float(37419.25), "37419.250000000000");
        assert_eq!(float(-0.75), "-0.75000000000000000");
        assert_eq!(float(1e-9), "1.0000000000000001e-9");
        assert_eq!(float(0.0), "0");
        for v in [1.0 / 3.0, 6.02e23, 1e-300, 123456.789] {
            assert_eq!(float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_quoting() {
        let o = Outcome::new(vec!["terms", "value"], vec![vec!["mu@0,mu@1".into(), "12".into()]], &json!({}));
        assert_eq!(o.csv(), "terms,value\n\"mu@0,mu@1\",12\n");
    }
}
