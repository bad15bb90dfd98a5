use std::collections::BTreeMap;
use std::fmt;

/// Line-oriented machine output: `key=value` lines, and named blocks
/// delimited by `begin <name>` / `end <name>` holding file-format text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MachineReport {
    body: String,
}

impl MachineReport {
    pub fn new(command: &str) -> Self {
        let mut r = MachineReport::default();
        r.kv("command", command);
        r
    }

    pub fn kv(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.body.push_str(&format!("{key}={value}\n"));
        self
    }

    pub fn block(&mut self, name: &str, text: &str) -> &mut Self {
        self.body.push_str(&format!("begin {name}\n"));
        self.body.push_str(text);
        if !text.ends_with('\n') {
            self.body.push('\n');
        }
        self.body.push_str(&format!("end {name}\n"));
        self
    }

    pub fn as_str(&self) -> &str {
        &self.body
    }
}

impl fmt::Display for MachineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.body)
    }
}

/// Contents of block `name`, ready to be parsed again.
pub fn extract_block(text: &str, name: &str) -> Option<String> {
    let begin = format!("begin {name}");
    let end = format!("end {name}");
    let mut lines = text.lines().skip_while(|l| l.trim() != begin).skip(1);
    let mut out = String::new();
    for l in lines.by_ref() {
        if l.trim() == end {
            return Some(out);
        }
        out.push_str(l);
        out.push('\n');
    }
    None
}

/// Top-level `key=value` pairs; lines inside blocks are skipped.
pub fn parse_key_values(text: &str) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut in_block = false;
    for l in text.lines() {
        if l.starts_with("begin ") {
            in_block = true;
        } else if l.starts_with("end ") {
            in_block = false;
        } else if !in_block {
            if let Some((k, v)) = l.split_once('=') {
                out.insert(k.to_string(), v.to_string());
            }
        }
    }
    out
}
