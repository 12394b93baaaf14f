//! Text and record forms of ring elements.
//!
//! Text: decimal coefficients joined by commas, no spaces
//! (`a,b,c,u,v` for `E_p`, `a,b,c,v` for `Ebar_p`). The prime travels
//! separately. Records carry the prime and every coefficient as a decimal
//! string so that values of any size survive a JSON round trip.

use serde::{Deserialize, Serialize};

use super::{EbarElement, EpElement};
use crate::error::{Error, Result};
use crate::modmath::Natural;

pub(crate) fn parse_natural(s: &str) -> Result<Natural> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("{s:?} is not a decimal natural number")));
    }
    s.parse()
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

fn parse_fields<const N: usize>(text: &str) -> Result<[Natural; N]> {
    let fields: Vec<&str> = text.split(',').collect();
    if fields.len() != N {
        return Err(Error::Parse(format!(
            "expected {N} comma-separated coefficients, found {} in {text:?}",
            fields.len()
        )));
    }
    let parsed = fields
        .into_iter()
        .map(parse_natural)
        .collect::<Result<Vec<_>>>()?;
    Ok(parsed.try_into().expect("length checked above"))
}

impl EpElement {
    /// Parses `a,b,c,u,v` for the prime `p`.
    pub fn parse(p: &Natural, text: &str) -> Result<Self> {
        let [a, b, c, u, v] = parse_fields::<5>(text)?;
        Self::new(p.clone(), a, b, c, u, v)
    }

    pub fn to_record(&self) -> EpRecord {
        self.clone().into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("records serialize")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl EbarElement {
    /// Parses `a,b,c,v` for the prime `p`.
    pub fn parse(p: &Natural, text: &str) -> Result<Self> {
        let [a, b, c, v] = parse_fields::<4>(text)?;
        Self::new(p.clone(), a, b, c, v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&EbarRecord::from(self.clone())).expect("records serialize")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Flat record `{p, a, b, c, u, v}` for an [`EpElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpRecord {
    pub p: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub u: String,
    pub v: String,
}

impl From<EpElement> for EpRecord {
    fn from(g: EpElement) -> Self {
        Self {
            p: g.p.to_string(),
            a: g.a.to_string(),
            b: g.b.to_string(),
            c: g.c.to_string(),
            u: g.u.to_string(),
            v: g.v.to_string(),
        }
    }
}

impl TryFrom<EpRecord> for EpElement {
    type Error = Error;

    fn try_from(r: EpRecord) -> Result<Self> {
        EpElement::new(
            parse_natural(&r.p)?,
            parse_natural(&r.a)?,
            parse_natural(&r.b)?,
            parse_natural(&r.c)?,
            parse_natural(&r.u)?,
            parse_natural(&r.v)?,
        )
    }
}

/// Flat record `{p, a, b, c, v}` for an [`EbarElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EbarRecord {
    pub p: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub v: String,
}

impl From<EbarElement> for EbarRecord {
    fn from(g: EbarElement) -> Self {
        Self {
            p: g.p().to_string(),
            a: g.a().to_string(),
            b: g.b().to_string(),
            c: g.c().to_string(),
            v: g.v().to_string(),
        }
    }
}

impl TryFrom<EbarRecord> for EbarElement {
    type Error = Error;

    fn try_from(r: EbarRecord) -> Result<Self> {
        EbarElement::new(
            parse_natural(&r.p)?,
            parse_natural(&r.a)?,
            parse_natural(&r.b)?,
            parse_natural(&r.c)?,
            parse_natural(&r.v)?,
        )
    }
}
