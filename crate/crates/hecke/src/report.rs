//! Reports and their JSON / TSV renderings.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// Output of one command: the echoed command and inputs, then the results.
/// `ok = Some(false)` marks a check that ran and came out false.
#[derive(Clone, Debug)]
pub struct Report {
    pub fields: Map<String, Value>,
    pub ok: Option<bool>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), Value::String(command.into()));
        fields.insert("inputs".into(), inputs);
        Report { fields, ok: None }
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.insert(key.into(), value);
        self
    }

    pub fn verdict(&mut self, ok: bool) -> &mut Self {
        self.ok = Some(self.ok.unwrap_or(true) && ok);
        self.fields.insert("ok".into(), Value::Bool(self.ok.unwrap()));
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.ok {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        let value = Value::Object(self.fields.clone());
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&value).expect("reports serialize");
                out.push('\n');
                out
            }
            Format::Tsv => {
                let mut out = String::new();
                flatten("", &value, &mut out);
                out
            }
        }
    }
}

/// One `path<TAB>value` line per leaf, paths joined by `.`.
fn flatten(path: &str, v: &Value, out: &mut String) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) if !a.is_empty() => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push_str(&format!("{path}\t{}\n", s.replace(['\t', '\n'], " "))),
        Value::Object(_) => out.push_str(&format!("{path}\t{{}}\n")),
        Value::Array(_) => out.push_str(&format!("{path}\t[]\n")),
        other => out.push_str(&format!("{path}\t{other}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tsv_flattens_paths() {
        let mut r = Report::new("x y", json!({"n": "2"}));
        r.set("list", json!(["a", ["b"]])).verdict(true);
        assert_eq!(r.render(Format::Tsv), "command\tx y\ninputs.n\t2\nlist.0\ta\nlist.1.0\tb\nok\ttrue\n");
        assert_eq!(r.exit_code(), 0);
        r.verdict(false).verdict(true);
        assert_eq!(r.exit_code(), 1);
    }
}
