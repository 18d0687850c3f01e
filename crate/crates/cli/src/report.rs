use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub value: Value,
    pub expected: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Section {
            name: name.to_string(),
            seconds: None,
            checks: Vec::new(),
            data: Value::Null,
        }
    }

    /// Records `value == expected`.
    pub fn expect_eq<T: Serialize + PartialEq>(&mut self, id: &str, value: T, expected: T) {
        let ok = value == expected;
        self.push(id, ok, &value, &expected);
    }

    /// Records a check whose pass condition is computed by the caller.
    pub fn expect<T: Serialize, U: Serialize>(&mut self, id: &str, ok: bool, value: T, expected: U) {
        self.push(id, ok, &value, &expected);
    }

    pub fn skip(&mut self, id: &str, reason: &str) {
        self.checks.push(Check {
            id: id.to_string(),
            status: Status::Skipped,
            value: Value::String(reason.to_string()),
            expected: Value::Null,
        });
    }

    fn push<T: Serialize, U: Serialize>(&mut self, id: &str, ok: bool, value: &T, expected: &U) {
        self.checks.push(Check {
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            value: serde_json::to_value(value).expect("serializable"),
            expected: serde_json::to_value(expected).expect("serializable"),
        });
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub p: u32,
    pub h: u32,
    pub n: u32,
    pub passed: bool,
    pub failed: Vec<String>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, (p, h, n): (u32, u32, u32), sections: Vec<Section>) -> Self {
        let failed: Vec<String> = sections
            .iter()
            .flat_map(|s| s.failed().map(move |c| format!("{}/{}", s.name, c.id)))
            .collect();
        Report {
            command: command.to_string(),
            p,
            h,
            n,
            passed: failed.is_empty(),
            failed,
            sections,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// One row per check.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "check", "status", "value", "expected"])?;
        for s in &self.sections {
            for c in &s.checks {
                w.write_record([
                    s.name.as_str(),
                    c.id.as_str(),
                    c.status.label(),
                    &compact(&c.value),
                    &compact(&c.expected),
                ])?;
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("maxcurves {} (p={}, h={}, n={})\n", self.command, self.p, self.h, self.n);
        for s in &self.sections {
            match s.seconds {
                Some(t) => out.push_str(&format!("[{}] {t:.2} s\n", s.name)),
                None => out.push_str(&format!("[{}]\n", s.name)),
            }
            for c in &s.checks {
                let expected = if c.expected.is_null() {
                    String::new()
                } else {
                    format!(" (expected {})", compact(&c.expected))
                };
                out.push_str(&format!("  {} {} = {}{expected}\n", c.status.label(), c.id, compact(&c.value)));
            }
        }
        out.push_str(if self.passed { "result: PASS\n" } else { "result: FAIL\n" });
        for f in &self.failed {
            out.push_str(&format!("  failed: {f}\n"));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
