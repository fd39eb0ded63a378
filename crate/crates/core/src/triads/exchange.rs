//! Text exchange format for triads.
//!
//! ```json
//! {
//!   "ambient_dim": 1,
//!   "sigma_tilde": [["1"], ["-1"], ["2"], ["-2"]],
//!   "sigma": [["1"], ["-1"]],
//!   "w": [["1"], ["-1"], ["2"], ["-2"]],
//!   "m": [{"root": ["1"], "mult": 1}],
//!   "n": [{"root": ["1"], "mult": 1}, {"root": ["2"], "mult": 1}]
//! }
//! ```
//!
//! Coordinates are exact fractions written `"p"` or `"p/q"`. The `m` and `n`
//! maps are optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SymmetricTriad;
use crate::error::{Error, Result};
use crate::exact::ExactVector;

/// Upper bounds applied while parsing untrusted documents.
pub const MAX_AMBIENT_DIM: usize = 32;
pub const MAX_ROOTS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultEntry {
    pub root: Vec<String>,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriadDocument {
    pub ambient_dim: usize,
    pub sigma_tilde: Vec<Vec<String>>,
    pub sigma: Vec<Vec<String>>,
    pub w: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<MultEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<MultEntry>>,
}

fn vectors(list: &[Vec<String>], dim: usize, field: &str) -> Result<Vec<ExactVector>> {
    if list.len() > MAX_ROOTS {
        return Err(Error::Parse(format!("{field}: more than {MAX_ROOTS} vectors")));
    }
    list.iter()
        .map(|coords| {
            if coords.len() != dim {
                return Err(Error::Parse(format!(
                    "{field}: vector of length {} in ambient dimension {dim}",
                    coords.len()
                )));
            }
            ExactVector::from_strings(coords)
        })
        .collect()
}

fn mult_map(entries: &Option<Vec<MultEntry>>, dim: usize, field: &str) -> Result<Option<BTreeMap<ExactVector, u32>>> {
    let Some(entries) = entries else {
        return Ok(None);
    };
    if entries.len() > MAX_ROOTS {
        return Err(Error::Parse(format!("{field}: more than {MAX_ROOTS} entries")));
    }
    let mut map = BTreeMap::new();
    for e in entries {
        let root = vectors(std::slice::from_ref(&e.root), dim, field)?.remove(0);
        if e.mult == 0 {
            return Err(Error::Parse(format!("{field}: multiplicity of {root} must be positive")));
        }
        if map.insert(root.clone(), e.mult).is_some() {
            return Err(Error::Parse(format!("{field}: duplicate entry for {root}")));
        }
    }
    Ok(Some(map))
}

impl TriadDocument {
    pub fn into_triad(self) -> Result<SymmetricTriad> {
        let d = self.ambient_dim;
        if d == 0 || d > MAX_AMBIENT_DIM {
            return Err(Error::Parse(format!("ambient_dim must be in 1..={MAX_AMBIENT_DIM}")));
        }
        let sigma_tilde = vectors(&self.sigma_tilde, d, "sigma_tilde")?;
        let sigma = vectors(&self.sigma, d, "sigma")?;
        let w = vectors(&self.w, d, "w")?;
        let m = mult_map(&self.m, d, "m")?;
        let n = mult_map(&self.n, d, "n")?;
        Ok(SymmetricTriad::new(d, sigma_tilde, sigma, w)?.with_multiplicities(m, n))
    }

    pub fn from_triad(t: &SymmetricTriad) -> Self {
        let list = |s: &[ExactVector]| s.iter().map(ExactVector::to_strings).collect();
        let mults = |m: Option<&BTreeMap<ExactVector, u32>>| {
            m.map(|m| {
                m.iter()
                    .map(|(r, k)| MultEntry {
                        root: r.to_strings(),
                        mult: *k,
                    })
                    .collect()
            })
        };
        Self {
            ambient_dim: t.ambient_dim(),
            sigma_tilde: list(t.sigma_tilde()),
            sigma: list(t.sigma()),
            w: list(t.w()),
            m: mults(t.m()),
            n: mults(t.n()),
        }
    }
}

/// Parses a triad document. Sizes are capped by [`MAX_AMBIENT_DIM`] and
/// [`MAX_ROOTS`].
pub fn parse_triad(text: &str) -> Result<SymmetricTriad> {
    let doc: TriadDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_triad()
}

pub fn emit_triad(t: &SymmetricTriad) -> String {
    serde_json::to_string_pretty(&TriadDocument::from_triad(t)).expect("document serializes")
}
