//! JSON documents for multimaps and structures.
//!
//! A multimap document lists items and skills and maps each item to its
//! competencies; a competency maps skills to decimal grade strings, and
//! omitted skills have grade 0:
//!
//! ```json
//! {"items": ["a", "b"], "skills": ["s1", "s2"],
//!  "mu": {"a": [{"s1": "0.2"}], "b": [{"s1": "0.3", "s2": "0.7"}]}}
//! ```
//!
//! A structure document lists items and states:
//! `{"items": ["a", "b"], "states": [[], ["a"], ["a", "b"]]}`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, Grade, SkillDomain};
use crate::multimap::FuzzySkillMultimap;
use crate::structure::KnowledgeStructure;

pub type CompetencyDocument = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultimapDocument {
    pub items: Vec<String>,
    pub skills: Vec<String>,
    pub mu: BTreeMap<String, Vec<CompetencyDocument>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub items: Vec<String>,
    pub states: Vec<Vec<String>>,
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn competency_document(c: &FuzzySet) -> CompetencyDocument {
    c.support().map(|(s, g)| (s.to_string(), g.to_string())).collect()
}

impl MultimapDocument {
    pub fn from_multimap(mm: &FuzzySkillMultimap) -> Self {
        MultimapDocument {
            items: mm.items().to_vec(),
            skills: mm.domain().skills().to_vec(),
            mu: mm
                .items()
                .iter()
                .zip(mm.families())
                .map(|(q, fam)| (q.clone(), fam.iter().map(competency_document).collect()))
                .collect(),
        }
    }

    pub fn to_multimap(&self) -> Result<FuzzySkillMultimap> {
        let domain = Arc::new(SkillDomain::new(self.skills.iter().cloned())?);
        if let Some(q) = self.mu.keys().find(|q| !self.items.contains(q)) {
            return Err(Error::UnknownItem(q.clone()));
        }
        let mu = self
            .items
            .iter()
            .map(|q| {
                self.mu
                    .get(q)
                    .map(Vec::as_slice)
                    .unwrap_or_default()
                    .iter()
                    .map(|c| {
                        let pairs = c
                            .iter()
                            .map(|(s, g)| Ok((s.as_str(), g.parse::<Grade>()?)))
                            .collect::<Result<Vec<_>>>()?;
                        FuzzySet::from_pairs(&domain, &pairs)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FuzzySkillMultimap::new(self.items.clone(), domain, mu)
    }
}

impl StructureDocument {
    pub fn from_structure(ks: &KnowledgeStructure) -> Self {
        StructureDocument {
            items: ks.items().to_vec(),
            states: ks.named_states(),
        }
    }

    pub fn to_structure(&self) -> Result<KnowledgeStructure> {
        let states = self
            .states
            .iter()
            .map(|s| {
                s.iter()
                    .map(|q| {
                        self.items
                            .iter()
                            .position(|x| x == q)
                            .ok_or_else(|| Error::UnknownItem(q.clone()))
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        KnowledgeStructure::new(self.items.clone(), states)
    }
}

pub fn parse_multimap(text: &str) -> Result<FuzzySkillMultimap> {
    serde_json::from_str::<MultimapDocument>(text).map_err(syntax)?.to_multimap()
}

pub fn parse_structure(text: &str) -> Result<KnowledgeStructure> {
    serde_json::from_str::<StructureDocument>(text).map_err(syntax)?.to_structure()
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn serialize_multimap(mm: &FuzzySkillMultimap) -> String {
    pretty(&MultimapDocument::from_multimap(mm))
}

pub fn serialize_structure(ks: &KnowledgeStructure) -> String {
    pretty(&StructureDocument::from_structure(ks))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// A file holding either document kind.
pub enum Document {
    Multimap(FuzzySkillMultimap),
    Structure(KnowledgeStructure),
}

/// Parses a document, telling the kinds apart by the `states` key.
pub fn parse_any(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(syntax)?;
    if value.get("states").is_some() {
        parse_structure(text).map(Document::Structure)
    } else {
        parse_multimap(text).map(Document::Multimap)
    }
}
