//! A small catalog of knots given by braid words, with their Alexander
//! polynomials checked when the catalog is loaded.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramError, MorseWord};
use crate::knotgroup::{alexander, KnotGroupError, WirtingerData};
use crate::laurent::{parse_univariate, LaurentPoly};

const BUILTIN: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub braid: Vec<i32>,
    pub strands: usize,
    /// Expected Alexander polynomial, possibly as a product of
    /// parenthesized factors with powers: `(1 - t + t^2)^2*(1 - 3*t + t^2)`.
    pub alexander: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CatalogFile {
    version: u32,
    knots: Vec<CatalogEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{path}: {reason}")]
    Read { path: String, reason: String },
    #[error("knot {name}: {source}")]
    Diagram { name: String, source: DiagramError },
    #[error("knot {name}: {source}")]
    KnotGroup { name: String, source: KnotGroupError },
    #[error("knot {name}: bad Alexander polynomial `{text}`")]
    BadPolynomial { name: String, text: String },
    #[error("knot {name}: Alexander polynomial is {computed}, catalog says {expected}")]
    AlexanderMismatch { name: String, computed: String, expected: String },
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("duplicate knot `{0}`")]
    Duplicate(String),
}

impl CatalogEntry {
    pub fn diagram(&self) -> Result<MorseWord, CatalogError> {
        if self.braid.is_empty() && self.strands <= 1 {
            return Ok(MorseWord::trivial());
        }
        MorseWord::from_braid(&self.braid, self.strands).map_err(|source| CatalogError::Diagram { name: self.name.clone(), source })
    }

    pub fn expected_alexander(&self) -> Result<LaurentPoly, CatalogError> {
        parse_factored(&self.alexander).ok_or_else(|| CatalogError::BadPolynomial { name: self.name.clone(), text: self.alexander.clone() })
    }

    /// Crossings of the braid closure.
    pub fn crossing_count(&self) -> usize {
        self.braid.len()
    }

    /// The crossing number, read from names like `8_10` or `11a_5`.
    pub fn crossing_number(&self) -> Option<usize> {
        let head: String = self.name.chars().take_while(|c| c.is_ascii_digit()).collect();
        head.parse().ok()
    }
}

/// Parses `p`, `(p)`, `(p)^k` and `*`-separated products of those.
pub fn parse_factored(text: &str) -> Option<LaurentPoly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if !s.contains('(') {
        return parse_univariate(&s, 't').ok();
    }
    let mut acc = LaurentPoly::one();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        rest = rest.strip_prefix('*').unwrap_or(rest);
        let inner = rest.strip_prefix('(')?;
        let close = inner.find(')')?;
        let factor = parse_univariate(&inner[..close], 't').ok()?;
        rest = &inner[close + 1..];
        let mut power = 1u32;
        if let Some(r) = rest.strip_prefix('^') {
            let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
            power = digits.parse().ok()?;
            rest = &r[digits.len()..];
        }
        acc = &acc * &factor.pow(power);
    }
    Some(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        Self::from_json(BUILTIN, "builtin catalog").expect("the builtin catalog is valid")
    }

    pub fn load(path: &Path) -> Result<Catalog, CatalogError> {
        let where_ = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Read { path: where_.clone(), reason: e.to_string() })?;
        Self::from_json(&text, &where_)
    }

    /// Parses and validates: every braid closes to a long knot whose
    /// Alexander polynomial matches the listed one up to units.
    pub fn from_json(text: &str, origin: &str) -> Result<Catalog, CatalogError> {
        let file: CatalogFile = serde_json::from_str(text).map_err(|e| CatalogError::Read { path: origin.into(), reason: e.to_string() })?;
        let mut seen = std::collections::HashSet::new();
        for e in &file.knots {
            if !seen.insert(e.name.clone()) {
                return Err(CatalogError::Duplicate(e.name.clone()));
            }
            let w = WirtingerData::of_knot(&e.diagram()?).map_err(|source| CatalogError::KnotGroup { name: e.name.clone(), source })?;
            let computed = alexander(&w).map_err(|source| CatalogError::KnotGroup { name: e.name.clone(), source })?;
            let expected = e.expected_alexander()?;
            if !computed.eq_up_to_units(&expected) {
                return Err(CatalogError::AlexanderMismatch {
                    name: e.name.clone(),
                    computed: computed.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
        Ok(Catalog { entries: file.knots })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Looks up a knot by name. `0_1` and `unknot` always name the trivial knot.
    pub fn get(&self, name: &str) -> Result<CatalogEntry, CatalogError> {
        if let Some(e) = self.entries.iter().find(|e| e.name == name) {
            return Ok(e.clone());
        }
        if name == "0_1" || name == "unknot" {
            return Ok(CatalogEntry { name: name.into(), braid: vec![], strands: 1, alexander: "1".into() });
        }
        Err(CatalogError::UnknownKnot(name.into()))
    }

    /// Resolves a knot name, falling back to reading a diagram file.
    pub fn diagram(&self, name_or_path: &str) -> Result<(String, MorseWord), CatalogError> {
        match self.get(name_or_path) {
            Ok(e) => Ok((e.name.clone(), e.diagram()?)),
            Err(err) => {
                let path = Path::new(name_or_path);
                if !path.exists() {
                    return Err(err);
                }
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CatalogError::Read { path: name_or_path.into(), reason: e.to_string() })?;
                let d = MorseWord::parse(&text).map_err(|source| CatalogError::Diagram { name: name_or_path.into(), source })?;
                Ok((name_or_path.into(), d))
            }
        }
    }
}
