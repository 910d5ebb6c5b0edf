//! JSON structure files.
//!
//! ```json
//! {
//!   "group": {"kind": "permutation", "degree": 10,
//!             "generators": ["(1,2,3,4,5)", "(1,2,3)"],
//!             "orbit_blocks": [[1,2,3,4,5],[6,7,8,9,10]]},
//!   "pairs": [{"x": "...", "y": "..."}, {"x": "...", "y": "..."}],
//!   "witness": {"kind": "overgroup_conjugation", "tau": "(1,5)(2,4)"}
//! }
//! ```
//!
//! Matrix groups use `"kind": "suzuki_matrix"` with
//! `"field": {"m": 3, "modulus": "0xb"}` and elements in hex notation
//! (16 masks per block, blocks separated by `|`). `matrix_blocks` gives the
//! number of diagonal blocks and defaults to 1.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::element::{Element, ElementKind};
use crate::field::FieldSpec;
use crate::group::{Family, Group, GroupError};
use crate::structure::{Automorphism, BeauvilleStructure, StronglyRealWitness};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field { field: field.into(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub m: u32,
    /// Hex, e.g. `"0xb"` for x³+x+1.
    pub modulus: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_blocks: Option<usize>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_blocks: Option<Vec<Vec<usize>>>,
    /// Decimal string, since orders overflow JSON numbers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub group: GroupSpec,
    pub pairs: Vec<PairSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl GroupSpec {
    pub fn from_group(g: &Group) -> GroupSpec {
        let (kind, degree, field, matrix_blocks) = match g.kind() {
            ElementKind::Permutation { degree } => ("permutation", Some(degree), None, None),
            ElementKind::Matrix { spec, blocks } => (
                "suzuki_matrix",
                None,
                Some(FieldDesc { m: spec.m(), modulus: format!("{:#x}", spec.modulus()) }),
                (blocks != 1).then_some(blocks),
            ),
        };
        GroupSpec {
            kind: kind.to_string(),
            degree,
            field,
            matrix_blocks,
            generators: g.generators().iter().map(Element::notation).collect(),
            orbit_blocks: g.blocks().map(<[Vec<usize>]>::to_vec),
            expected_order: g.expected_order().map(BigUint::to_string),
            name: g.name().map(str::to_string),
            family: g.family().map(|Family::Suzuki| "suzuki".to_string()),
        }
    }

    pub fn element_kind(&self) -> Result<ElementKind, FormatError> {
        match self.kind.as_str() {
            "permutation" => {
                let degree = self.degree.ok_or_else(|| field_err("group.degree", "required for permutation groups"))?;
                if degree == 0 {
                    return Err(field_err("group.degree", "must be positive"));
                }
                Ok(ElementKind::Permutation { degree })
            }
            "suzuki_matrix" => {
                let f = self.field.as_ref().ok_or_else(|| field_err("group.field", "required for matrix groups"))?;
                let hex = f.modulus.trim_start_matches("0x").trim_start_matches("0X");
                let modulus = u32::from_str_radix(hex, 16)
                    .map_err(|_| field_err("group.field.modulus", format!("not hex: '{}'", f.modulus)))?;
                let spec = FieldSpec::new(f.m, modulus).map_err(|e| field_err("group.field", e.to_string()))?;
                let blocks = self.matrix_blocks.unwrap_or(1);
                if blocks == 0 {
                    return Err(field_err("group.matrix_blocks", "must be positive"));
                }
                Ok(ElementKind::Matrix { spec, blocks })
            }
            other => Err(field_err("group.kind", format!("unknown kind '{other}'"))),
        }
    }

    pub fn to_group(&self) -> Result<Group, FormatError> {
        let kind = self.element_kind()?;
        if self.generators.is_empty() {
            return Err(field_err("group.generators", "at least one generator is required"));
        }
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, s)| parse_element(kind, s, &format!("group.generators[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut g = Group::new(gens)?;
        if let Some(blocks) = &self.orbit_blocks {
            g = g.with_blocks(blocks.clone())?;
        }
        if let Some(o) = &self.expected_order {
            let o: BigUint =
                o.parse().map_err(|_| field_err("group.expected_order", format!("not an integer: '{o}'")))?;
            g = g.with_expected_order(o);
        }
        if let Some(n) = &self.name {
            g = g.with_name(n.clone());
        }
        match self.family.as_deref() {
            None => {}
            Some("suzuki") => g = g.with_family(Family::Suzuki),
            Some(other) => return Err(field_err("group.family", format!("unknown family '{other}'"))),
        }
        Ok(g)
    }
}

fn parse_element(kind: ElementKind, text: &str, field: &str) -> Result<Element, FormatError> {
    Element::parse(kind, text).map_err(|e| field_err(field, e))
}

impl WitnessSpec {
    pub fn from_witness(w: &StronglyRealWitness) -> WitnessSpec {
        let n = |e: &Option<Element>| e.as_ref().map(Element::notation);
        match &w.automorphism {
            Automorphism::OvergroupConjugation { tau, ambient } => WitnessSpec {
                kind: "overgroup_conjugation".to_string(),
                ambient: ambient.as_ref().map(GroupSpec::from_group),
                tau: Some(tau.notation()),
                g1: n(&w.g1),
                g2: n(&w.g2),
            },
            Automorphism::AbelianInversion => WitnessSpec {
                kind: "abelian_inversion".to_string(),
                ambient: None,
                tau: None,
                g1: n(&w.g1),
                g2: n(&w.g2),
            },
        }
    }

    pub fn to_witness(&self, kind: ElementKind) -> Result<StronglyRealWitness, FormatError> {
        let opt = |s: &Option<String>, f: &str| s.as_deref().map(|t| parse_element(kind, t, f)).transpose();
        let automorphism = match self.kind.as_str() {
            "overgroup_conjugation" => {
                let tau = self.tau.as_deref().ok_or_else(|| field_err("witness.tau", "required for conjugation"))?;
                let ambient = self.ambient.as_ref().map(GroupSpec::to_group).transpose()?;
                Automorphism::OvergroupConjugation { tau: parse_element(kind, tau, "witness.tau")?, ambient }
            }
            "abelian_inversion" => Automorphism::AbelianInversion,
            other => return Err(field_err("witness.kind", format!("unknown kind '{other}'"))),
        };
        Ok(StronglyRealWitness { automorphism, g1: opt(&self.g1, "witness.g1")?, g2: opt(&self.g2, "witness.g2")? })
    }
}

impl StructureFile {
    pub fn new(s: &BeauvilleStructure, w: Option<&StronglyRealWitness>, notes: Vec<String>) -> StructureFile {
        StructureFile {
            group: GroupSpec::from_group(&s.group),
            pairs: s.pairs.iter().map(|(x, y)| PairSpec { x: x.notation(), y: y.notation() }).collect(),
            witness: w.map(WitnessSpec::from_witness),
            notes,
        }
    }

    pub fn parse(text: &str) -> Result<StructureFile, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_structure(&self) -> Result<(BeauvilleStructure, Option<StronglyRealWitness>), FormatError> {
        let group = self.group.to_group()?;
        let kind = group.kind();
        if self.pairs.len() != 2 {
            return Err(field_err("pairs", format!("expected 2 pairs, found {}", self.pairs.len())));
        }
        let pair = |i: usize| -> Result<(Element, Element), FormatError> {
            let p = &self.pairs[i];
            Ok((
                parse_element(kind, &p.x, &format!("pairs[{i}].x"))?,
                parse_element(kind, &p.y, &format!("pairs[{i}].y"))?,
            ))
        };
        let s = BeauvilleStructure::new(group, pair(0)?, pair(1)?);
        let w = self.witness.as_ref().map(|w| w.to_witness(kind)).transpose()?;
        Ok((s, w))
    }
}

/// A group file is either a bare group description or any object with a
/// `group` field (so structure files double as group files).
pub fn parse_group_file(text: &str) -> Result<Group, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let spec_value = match value.get("group") {
        Some(g) => g.clone(),
        None => value,
    };
    let spec: GroupSpec = serde_json::from_value(spec_value)?;
    spec.to_group()
}

/// Witness files hold one witness object or a list of them.
pub fn parse_witness_file(text: &str, kind: ElementKind) -> Result<Vec<StronglyRealWitness>, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let specs: Vec<WitnessSpec> = match value {
        serde_json::Value::Array(_) => serde_json::from_value(value)?,
        other => vec![serde_json::from_value(other)?],
    };
    specs.iter().map(|w| w.to_witness(kind)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{mathieu_double, suzuki_structure, MathieuGroup};

    #[test]
    fn permutation_round_trip() {
        let c = mathieu_double(MathieuGroup::A5).unwrap();
        let e = c.emitted();
        let file = StructureFile::new(&e.structure, Some(&e.witness), e.notes.clone());
        let text = file.to_json();
        let back = StructureFile::parse(&text).unwrap();
        assert_eq!(back, file);
        let (s, w) = back.to_structure().unwrap();
        assert_eq!(s.pairs, e.structure.pairs);
        assert_eq!(s.group.blocks(), e.structure.group.blocks());
        assert_eq!(w.unwrap().tau(), e.witness.tau());
        assert_eq!(StructureFile::new(&s, None, vec![]).group, file.group);
    }

    #[test]
    fn matrix_round_trip() {
        let c = suzuki_structure(3).unwrap();
        let e = c.emitted();
        let file = StructureFile::new(&e.structure, Some(&e.witness), vec![]);
        assert_eq!(file.group.field.as_ref().unwrap().modulus, "0xb");
        let (s, w) = StructureFile::parse(&file.to_json()).unwrap().to_structure().unwrap();
        assert_eq!(s.pairs, e.structure.pairs);
        assert_eq!(s.group.family(), Some(Family::Suzuki));
        assert_eq!(w.unwrap().tau(), e.witness.tau());
    }

    #[test]
    fn errors_name_the_field() {
        let bad = r#"{"group": {"kind": "permutation", "degree": 3, "generators": ["(1,2,4)"]}, "pairs": []}"#;
        let err = StructureFile::parse(bad).unwrap().to_structure().unwrap_err();
        assert!(err.to_string().starts_with("group.generators[0]"), "{err}");
        let bad = r#"{"group": {"kind": "permutation", "degree": 3, "generators": ["(1,2)"]}, "pairs": []}"#;
        let err = StructureFile::parse(bad).unwrap().to_structure().unwrap_err();
        assert!(err.to_string().starts_with("pairs"), "{err}");
        assert!(StructureFile::parse("{").is_err());
    }

    #[test]
    fn group_files() {
        let g = parse_group_file(r#"{"kind": "permutation", "degree": 5, "generators": ["(1,2,3,4,5)", "(1,2,3)"]}"#)
            .unwrap();
        assert_eq!(g.order_u64(), Some(60));
        let w = parse_witness_file(r#"[{"kind": "abelian_inversion"}]"#, g.kind()).unwrap();
        assert_eq!(w.len(), 1);
    }
}
