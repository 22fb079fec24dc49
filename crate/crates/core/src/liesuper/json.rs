//! Line-oriented JSON serialization of [`AlgebraModel`].
//!
//! The writer is hand-rolled so that each basis descriptor and each bracket
//! entry sits on its own line; the reader goes through serde.

use std::fmt::Write as _;

use serde::Deserialize;

use super::{AlgebraModel, BasisDesc, FamilyTag, WeightVec};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseVec};

pub const MODEL_SCHEMA_VERSION: u32 = 1;

/// `[i, j, [[k, "p/q"], …]]`: the nonzero entries of `[e_i, e_j]`.
type RawBracket = (usize, usize, Vec<(usize, String)>);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(default)]
    schema_version: Option<u32>,
    family: String,
    n: usize,
    #[serde(default)]
    grading_modulus: Option<i64>,
    basis: Vec<String>,
    bracket: Vec<RawBracket>,
    parity: Vec<u8>,
    degree: Vec<i64>,
    weight: Vec<Vec<i64>>,
    cartan: Vec<usize>,
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn json_list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl AlgebraModel {
    pub fn to_json(&self) -> String {
        let dim = self.dim();
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"schema_version\": {MODEL_SCHEMA_VERSION},");
        let _ = writeln!(out, "  \"family\": {},", json_str(&self.family.to_string()));
        let _ = writeln!(out, "  \"n\": {},", self.n);
        match self.grading_modulus {
            Some(m) => {
                let _ = writeln!(out, "  \"grading_modulus\": {m},");
            }
            None => out.push_str("  \"grading_modulus\": null,\n"),
        }
        out.push_str("  \"basis\": [");
        for (k, b) in self.basis.iter().enumerate() {
            out.push_str(if k == 0 { "\n    " } else { ",\n    " });
            out.push_str(&json_str(&b.to_string()));
        }
        out.push_str(if dim == 0 { "],\n" } else { "\n  ],\n" });
        out.push_str("  \"bracket\": [");
        let mut first = true;
        for i in 0..dim {
            for j in 0..dim {
                let v = self.bracket_basis(i, j);
                if v.is_zero() {
                    continue;
                }
                out.push_str(if first { "\n    " } else { ",\n    " });
                first = false;
                let terms: Vec<String> =
                    v.iter().map(|(k, c)| format!("[{k},{}]", json_str(&c.to_fraction_string()))).collect();
                let _ = write!(out, "[{i},{j},[{}]]", terms.join(","));
            }
        }
        out.push_str(if first { "],\n" } else { "\n  ],\n" });
        let _ = writeln!(out, "  \"parity\": {},", json_list(&self.parity));
        let _ = writeln!(out, "  \"degree\": {},", json_list(&self.degree));
        let weights: Vec<String> = self.weight.iter().map(|w| json_list(&w.0)).collect();
        let _ = writeln!(out, "  \"weight\": [{}],", weights.join(","));
        let _ = writeln!(out, "  \"cartan\": {}", json_list(&self.cartan));
        out.push_str("}\n");
        out
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawModel = serde_json::from_str(s).map_err(|e| Error::Parse(format!("model JSON: {e}")))?;
        if let Some(v) = raw.schema_version {
            if v != MODEL_SCHEMA_VERSION {
                return Err(Error::Parse(format!("unsupported schema_version {v}")));
            }
        }
        let family: FamilyTag = raw.family.parse()?;
        let basis = raw.basis.iter().map(|b| b.parse()).collect::<Result<Vec<BasisDesc>>>()?;
        let dim = basis.len();
        let mut table = vec![SparseVec::new(); dim * dim];
        for (i, j, terms) in raw.bracket {
            if i >= dim || j >= dim {
                return Err(Error::InvalidModel(format!("bracket entry ({i}, {j}) out of range")));
            }
            let entries =
                terms.into_iter().map(|(k, c)| Ok((k, c.parse::<Rational>()?))).collect::<Result<Vec<_>>>()?;
            table[i * dim + j] = table[i * dim + j].add(&SparseVec::from_entries(entries));
        }
        AlgebraModel::from_parts(
            family,
            raw.n,
            basis,
            table,
            raw.parity,
            raw.degree,
            raw.weight.into_iter().map(WeightVec).collect(),
            raw.cartan,
            raw.grading_modulus,
        )
    }
}
