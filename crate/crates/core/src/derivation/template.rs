//! Parametrised derivation scripts.
//!
//! Scripts are stored as JSON with `{expr}` placeholders, where `expr` is
//! integer arithmetic (`+ - *`, parentheses) over named variables such as
//! `x`, `p`, `beta`. A string that is exactly one placeholder becomes a JSON
//! number; otherwise the value is spliced into the text.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::Value;

use super::DerivationScript;
use crate::error::Error;

const BUILTIN: &[(&str, &str)] = &[
    ("relation_torus", include_str!("../../scripts/relation_torus.json")),
    ("lemma_same_sign", include_str!("../../scripts/lemma_same_sign.json")),
    ("eq10", include_str!("../../scripts/eq10.json")),
    ("eq11", include_str!("../../scripts/eq11.json")),
    ("eq12", include_str!("../../scripts/eq12.json")),
    ("grand_total_product", include_str!("../../scripts/grand_total_product.json")),
    ("endpoint_lower", include_str!("../../scripts/endpoint_lower.json")),
    ("endpoint_upper", include_str!("../../scripts/endpoint_upper.json")),
    ("cramer_interior", include_str!("../../scripts/cramer_interior.json")),
    ("surgery_axiom", include_str!("../../scripts/surgery_axiom.json")),
];

/// Integer variables available to placeholders.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vars(BTreeMap<String, i128>);

impl Vars {
    pub fn new() -> Vars {
        Vars::default()
    }

    pub fn set(&mut self, name: &str, value: impl Into<i128>) -> &mut Vars {
        self.0.insert(name.to_string(), value.into());
        self
    }

    pub fn with(mut self, name: &str, value: impl Into<i128>) -> Vars {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<i128> {
        self.0.get(name).copied()
    }

    /// Evaluates `expr`.
    pub fn eval(&self, expr: &str) -> Result<i128, Error> {
        let mut p = ExprParser { src: expr, bytes: expr.as_bytes(), pos: 0, vars: self };
        let v = p.sum()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

struct ExprParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Template(format!("{{{}}}: {msg} at offset {}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn overflow(&self) -> Error {
        self.err("arithmetic overflow")
    }

    fn sum(&mut self) -> Result<i128, Error> {
        let mut v = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            v = if op == b'+' { v.checked_add(rhs) } else { v.checked_sub(rhs) }.ok_or_else(|| self.overflow())?;
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<i128, Error> {
        let mut v = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            v = v.checked_mul(rhs).ok_or_else(|| self.overflow())?;
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<i128, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.unary()?.checked_neg().ok_or_else(|| self.overflow())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                self.src[start..self.pos].parse().map_err(|_| self.overflow())
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                self.vars.get(name).ok_or_else(|| self.err(&format!("unbound variable {name:?}")))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

fn splice_str(s: &str, vars: &Vars) -> Result<Value, Error> {
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        if !inner.contains(['{', '}']) {
            let v = vars.eval(inner)?;
            let v = i64::try_from(v).map_err(|_| Error::Template(format!("{s}: value {v} does not fit in i64")))?;
            return Ok(Value::from(v));
        }
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..]
            .find('}')
            .map(|c| open + c)
            .ok_or_else(|| Error::Template(format!("{s:?}: unclosed '{{'")))?;
        out.push_str(&vars.eval(&rest[open + 1..close])?.to_string());
        rest = &rest[close + 1..];
    }
    if rest.contains('}') {
        return Err(Error::Template(format!("{s:?}: unmatched '}}'")));
    }
    out.push_str(rest);
    Ok(Value::String(out))
}

fn splice(v: &Value, vars: &Vars) -> Result<Value, Error> {
    Ok(match v {
        Value::String(s) => splice_str(s, vars)?,
        Value::Array(items) => Value::Array(items.iter().map(|i| splice(i, vars)).collect::<Result<_, _>>()?),
        Value::Object(map) => {
            Value::Object(map.iter().map(|(k, i)| Ok((k.clone(), splice(i, vars)?))).collect::<Result<_, Error>>()?)
        }
        other => other.clone(),
    })
}

/// Script templates keyed by id.
#[derive(Clone, Debug)]
pub struct ScriptLibrary {
    templates: BTreeMap<String, Value>,
}

impl ScriptLibrary {
    /// The scripts shipped with the crate.
    pub fn builtin() -> ScriptLibrary {
        let templates = BUILTIN
            .iter()
            .map(|(id, text)| {
                let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("builtin script {id}: {e}"));
                (id.to_string(), v)
            })
            .collect();
        ScriptLibrary { templates }
    }

    /// The builtin scripts, overridden by every `*.json` file in `dir`
    /// (keyed by the file's `id` field).
    pub fn from_dir(dir: &Path) -> Result<ScriptLibrary, Error> {
        let mut lib = ScriptLibrary::builtin();
        let entries = std::fs::read_dir(dir).map_err(|e| Error::Template(format!("{}: {e}", dir.display())))?;
        let mut paths: Vec<_> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
        paths.sort();
        for path in paths.into_iter().filter(|p| p.extension().is_some_and(|e| e == "json")) {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Template(format!("{}: {e}", path.display())))?;
            lib.insert_json(&text).map_err(|e| Error::Template(format!("{}: {e}", path.display())))?;
        }
        Ok(lib)
    }

    /// Adds or replaces a template given as JSON text.
    pub fn insert_json(&mut self, text: &str) -> Result<(), Error> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Template(e.to_string()))?;
        let id = v
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Template("script template has no string \"id\"".into()))?
            .to_string();
        self.templates.insert(id, v);
        Ok(())
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.templates.keys().map(String::as_str)
    }

    pub fn template(&self, id: &str) -> Option<&Value> {
        self.templates.get(id)
    }

    /// The script `id` with every placeholder evaluated.
    pub fn instantiate(&self, id: &str, vars: &Vars) -> Result<DerivationScript, Error> {
        let t = self.templates.get(id).ok_or_else(|| Error::Template(format!("no script {id:?}")))?;
        let v = splice(t, vars).map_err(|e| Error::Template(format!("script {id}: {e}")))?;
        serde_json::from_value(v).map_err(|e| Error::Template(format!("script {id}: {e}")))
    }
}

impl Default for ScriptLibrary {
    fn default() -> ScriptLibrary {
        ScriptLibrary::builtin()
    }
}
