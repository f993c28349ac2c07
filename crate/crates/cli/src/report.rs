use std::collections::BTreeMap;
use std::io::{self, Write};
use std::time::Instant;

use serde_json::{json, Map, Value};

/// A JSON-lines report: item lines in order, then one summary object.
#[derive(Debug)]
pub struct Report {
    command: &'static str,
    n_range: Option<[u32; 2]>,
    lines: Vec<Value>,
    pass: u64,
    fail: u64,
    timing: BTreeMap<String, f64>,
    extra: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str, n_range: Option<[u32; 2]>) -> Self {
        Report {
            command,
            n_range,
            lines: Vec::new(),
            pass: 0,
            fail: 0,
            timing: BTreeMap::new(),
            extra: Map::new(),
        }
    }

    /// Appends an item tagged `"item": kind`; `ok` feeds the tallies.
    pub fn item(&mut self, kind: &str, value: Value, ok: Option<bool>) {
        let mut obj = match value {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        obj.insert("item".into(), Value::String(kind.into()));
        match ok {
            Some(true) => self.pass += 1,
            Some(false) => self.fail += 1,
            None => {}
        }
        self.lines.push(Value::Object(obj));
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.extra.insert(key.into(), value);
    }

    /// Runs `f` and records its wall time under `name`.
    pub fn phase<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        *self.timing.entry(name.into()).or_default() += ms;
        out
    }

    pub fn failures(&self) -> u64 {
        self.fail
    }

    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            crate::EXIT_FAIL
        } else {
            crate::EXIT_PASS
        }
    }

    pub fn summary(&self) -> Value {
        let mut s = Map::new();
        s.insert("item".into(), json!("summary"));
        s.insert("command".into(), json!(self.command));
        s.insert("n_range".into(), json!(self.n_range));
        s.insert("items".into(), json!(self.lines.len()));
        s.insert("pass".into(), json!(self.pass));
        s.insert("fail".into(), json!(self.fail));
        s.insert("exit".into(), json!(self.exit_code()));
        for (k, v) in &self.extra {
            s.insert(k.clone(), v.clone());
        }
        let timing: Map<String, Value> = self
            .timing
            .iter()
            .map(|(k, v)| (k.clone(), json!((v * 1e3).round() / 1e3)))
            .collect();
        s.insert("timing_ms".into(), Value::Object(timing));
        Value::Object(s)
    }

    pub fn write_to(&self, w: &mut dyn Write) -> io::Result<()> {
        for line in &self.lines {
            serde_json::to_writer(&mut *w, line)?;
            w.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut *w, &self.summary())?;
        w.write_all(b"\n")?;
        w.flush()
    }
}
