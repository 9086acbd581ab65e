use std::collections::BTreeMap;
use std::fmt;

use crate::error::{config_err, CliResult};

/// A typed scenario parameter; overrides are parsed against the type of
/// the default.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Float(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    Floats(Vec<f64>),
    Ints(Vec<usize>),
}

impl Value {
    pub fn parse_like(&self, raw: &str) -> Result<Value, String> {
        let raw = raw.trim();
        let float = |s: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{s}' is not a finite number"))
        };
        let int = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("'{s}' is not a non-negative integer"));
        let list = |s: &str| s.split(',').filter(|p| !p.trim().is_empty()).map(str::to_owned).collect::<Vec<_>>();
        Ok(match self {
            Value::Float(_) => Value::Float(float(raw)?),
            Value::Int(_) => Value::Int(int(raw)?),
            Value::Bool(_) => match raw {
                "true" => Value::Bool(true),
                "false" => Value::Bool(false),
                _ => return Err(format!("'{raw}' is not true/false")),
            },
            Value::Text(_) => Value::Text(raw.to_owned()),
            Value::Floats(_) => Value::Floats(list(raw).iter().map(|s| float(s)).collect::<Result<_, _>>()?),
            Value::Ints(_) => Value::Ints(list(raw).iter().map(|s| int(s)).collect::<Result<_, _>>()?),
        })
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Float(v) => write!(f, "{v}"),
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(v) => write!(f, "{v}"),
            Value::Text(v) => f.write_str(v),
            Value::Floats(v) => f.write_str(&join(v)),
            Value::Ints(v) => f.write_str(&join(v)),
        }
    }
}

/// Resolved parameters of one scenario, ordered by key.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet {
    values: BTreeMap<String, Value>,
}

impl ParamSet {
    pub fn new(defaults: &[(&str, Value)]) -> Self {
        Self { values: defaults.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect() }
    }

    /// Apply `key = value`; unknown keys are rejected.
    pub fn set(&mut self, key: &str, raw: &str) -> CliResult<()> {
        let key = key.trim();
        let slot = self.values.get_mut(key).ok_or_else(|| config_err(format!("unknown key '{key}'")))?;
        *slot = slot.parse_like(raw).map_err(|e| config_err(format!("{key}: {e}")))?;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn get(&self, key: &str) -> CliResult<&Value> {
        self.values.get(key).ok_or_else(|| config_err(format!("missing parameter '{key}'")))
    }

    pub fn f64(&self, key: &str) -> CliResult<f64> {
        match self.get(key)? {
            Value::Float(v) => Ok(*v),
            other => Err(config_err(format!("{key} = {other} is not a number"))),
        }
    }

    pub fn usize(&self, key: &str) -> CliResult<usize> {
        match self.get(key)? {
            Value::Int(v) => Ok(*v),
            other => Err(config_err(format!("{key} = {other} is not an integer"))),
        }
    }

    pub fn bool(&self, key: &str) -> CliResult<bool> {
        match self.get(key)? {
            Value::Bool(v) => Ok(*v),
            other => Err(config_err(format!("{key} = {other} is not a boolean"))),
        }
    }

    pub fn text(&self, key: &str) -> CliResult<&str> {
        match self.get(key)? {
            Value::Text(v) => Ok(v),
            other => Err(config_err(format!("{key} = {other} is not text"))),
        }
    }

    pub fn ints(&self, key: &str) -> CliResult<&[usize]> {
        match self.get(key)? {
            Value::Ints(v) => Ok(v),
            other => Err(config_err(format!("{key} = {other} is not an integer list"))),
        }
    }

    pub fn floats(&self, key: &str) -> CliResult<&[f64]> {
        match self.get(key)? {
            Value::Floats(v) => Ok(v),
            other => Err(config_err(format!("{key} = {other} is not a number list"))),
        }
    }

    /// `key = value` lines in key order.
    pub fn canonical(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn typed_overrides() {
        let mut p = ParamSet::new(&[
            ("a", Value::Float(1.0)),
            ("n", Value::Int(3)),
            ("flag", Value::Bool(false)),
            ("ls", Value::Ints(vec![1])),
        ]);
        p.set("a", " 2.5e-3 ").unwrap();
        p.set("n", "7").unwrap();
        p.set("flag", "true").unwrap();
        p.set("ls", "3, 5").unwrap();
        assert_eq!(p.f64("a").unwrap(), 2.5e-3);
        assert_eq!(p.usize("n").unwrap(), 7);
        assert!(p.bool("flag").unwrap());
        assert_eq!(p.ints("ls").unwrap(), &[3, 5]);
        assert!(p.set("missing", "1").is_err());
        assert!(p.set("n", "-1").is_err());
        assert!(p.set("a", "nan").is_err());
        assert!(p.set("flag", "yes").is_err());
        assert_eq!(p.canonical(), "a = 0.0025\nflag = true\nls = 3,5\nn = 7\n");
    }
}
