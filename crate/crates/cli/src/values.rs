//! Flag value types shared by the subcommands.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Inclusive index range, written `a..b`, `a..=b` or a single `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub start: usize,
    pub end: usize,
}

impl IndexRange {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid index '{t}' in range '{s}'"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range '{s}': start exceeds end"));
        }
        Ok(Self { start, end })
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl Serialize for IndexRange {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RangeRepr {
    Single(usize),
    Text(String),
}

impl<'de> Deserialize<'de> for IndexRange {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        match RangeRepr::deserialize(de)? {
            RangeRepr::Single(v) => Ok(Self::new(v, v)),
            RangeRepr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Comma-separated reals; each item is a number, a fraction `a/b` or a grid `lo:hi:count`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

fn parse_real(t: &str) -> Result<f64, String> {
    let t = t.trim();
    let v = match t.split_once('/') {
        Some((a, b)) => {
            let num: f64 = a.trim().parse().map_err(|_| format!("invalid number '{t}'"))?;
            let den: f64 = b.trim().parse().map_err(|_| format!("invalid number '{t}'"))?;
            num / den
        }
        None => t.parse().map_err(|_| format!("invalid number '{t}'"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number '{t}'"))
    }
}

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for item in s.split(',') {
            let parts: Vec<&str> = item.split(':').collect();
            match parts.as_slice() {
                [one] => out.push(parse_real(one)?),
                [lo, hi, count] => {
                    let (lo, hi) = (parse_real(lo)?, parse_real(hi)?);
                    let n: usize = count.trim().parse().map_err(|_| format!("invalid grid count in '{item}'"))?;
                    match n {
                        0 => return Err(format!("grid '{item}' has no points")),
                        1 => out.push(lo),
                        _ => out.extend((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)),
                    }
                }
                _ => return Err(format!("cannot parse '{item}'; expected x, a/b or lo:hi:count")),
            }
        }
        Ok(Self(out))
    }
}

impl Serialize for RealList {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(ser)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RealsRepr {
    One(f64),
    Many(Vec<f64>),
    Text(String),
}

impl<'de> Deserialize<'de> for RealList {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        match RealsRepr::deserialize(de)? {
            RealsRepr::One(v) => Ok(Self(vec![v])),
            RealsRepr::Many(v) => Ok(Self(v)),
            RealsRepr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Comma-separated `(m, j)` slots written `m:j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeList(pub Vec<(usize, usize)>);

impl FromStr for ModeList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|item| {
                let (m, j) = item.split_once(':').ok_or_else(|| format!("mode '{item}' is not of the form m:j"))?;
                let m = m.trim().parse().map_err(|_| format!("invalid degree in mode '{item}'"))?;
                let j = j.trim().parse().map_err(|_| format!("invalid slot in mode '{item}'"))?;
                Ok((m, j))
            })
            .collect::<Result<_, _>>()
            .map(Self)
    }
}

impl Serialize for ModeList {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(ser)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ModesRepr {
    Pairs(Vec<(usize, usize)>),
    Text(String),
}

impl<'de> Deserialize<'de> for ModeList {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        match ModesRepr::deserialize(de)? {
            ModesRepr::Pairs(v) => Ok(Self(v)),
            ModesRepr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
