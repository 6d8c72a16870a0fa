//! The flat `key = v1, v2, ...` file holding every published value the
//! reports compare against.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const EMBEDDED: &str = include_str!("../../data/expectations.txt");

/// A number as it was printed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Printed {
    pub value: f64,
    /// Digits after the decimal point; `None` for exact entries such as
    /// `sqrt(2)` and for exponent notation.
    pub decimals: Option<u32>,
}

impl Printed {
    pub fn exact(value: f64) -> Self {
        Self { value, decimals: None }
    }

    /// Half a unit in the last printed digit (zero for exact entries).
    pub fn half_unit(&self) -> f64 {
        match self.decimals {
            Some(d) => 0.5 * 10f64.powi(-(d as i32)),
            None => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Expectations {
    rows: BTreeMap<String, Vec<Option<Printed>>>,
}

impl Expectations {
    /// The values shipped with the crate.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded expectations parse")
    }

    pub fn embedded_text() -> &'static str {
        EMBEDDED
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line, message };
            let (key, values) = content
                .rsplit_once('=')
                .ok_or_else(|| err(format!("expected `key = values`, got `{content}`")))?;
            let key = key.trim();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(err(format!("invalid key `{key}`")));
            }
            let values = values
                .split(',')
                .map(|v| parse_value(v.trim()).map_err(&err))
                .collect::<Result<Vec<_>>>()?;
            if rows.insert(key.to_string(), values).is_some() {
                return Err(err(format!("duplicate key `{key}`")));
            }
        }
        Ok(Self { rows })
    }

    pub fn get(&self, key: &str) -> Result<&[Option<Printed>]> {
        self.rows
            .get(key)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Argument(format!("expectations have no entry `{key}`")))
    }

    /// Entry `key` with every value present.
    pub fn values(&self, key: &str) -> Result<Vec<Printed>> {
        self.get(key)?
            .iter()
            .map(|v| v.ok_or_else(|| Error::Argument(format!("`{key}` has a blank value"))))
            .collect()
    }

    /// The single value of `key`.
    pub fn scalar(&self, key: &str) -> Result<Printed> {
        match self.values(key)?.as_slice() {
            [v] => Ok(*v),
            other => Err(Error::Argument(format!(
                "`{key}` should hold one value, has {}",
                other.len()
            ))),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.rows.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn parse_value(s: &str) -> std::result::Result<Option<Printed>, String> {
    if s == "-" {
        return Ok(None);
    }
    if s.is_empty() {
        return Err("empty value".into());
    }
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let x = parse_number(inner.trim())?;
        if x < 0.0 {
            return Err(format!("square root of negative number `{inner}`"));
        }
        return Ok(Some(Printed::exact(x.sqrt())));
    }
    let value = parse_number(s)?;
    let decimals = if s.contains(['e', 'E']) {
        None
    } else {
        Some(s.split_once('.').map_or(0, |(_, frac)| frac.len() as u32))
    };
    Ok(Some(Printed { value, decimals }))
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    // f64::from_str also accepts `inf` and `nan`, which have no place here
    if !s.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+' || c == '.') {
        return Err(format!("not a number: `{s}`"));
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("not a number: `{s}`")),
    }
}
