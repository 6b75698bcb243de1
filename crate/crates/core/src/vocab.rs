//! Closed relation vocabulary organized as negation pairs.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::graph::normalize_text;

const DEFAULT_RELATIONS: &str = include_str!("../data/relations.txt");

const NEGATION_PREFIX: &str = "not ";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VocabError {
    #[error("line {line}: empty relation name")]
    Empty { line: usize },
    #[error("line {line}: duplicate relation {name:?}")]
    Duplicate { line: usize, name: String },
    #[error("relation {0:?} has no negated counterpart")]
    Unpaired(String),
    #[error("negated relation {0:?} has no positive counterpart")]
    Orphan(String),
    #[error("vocabulary is empty")]
    NoRelations,
    #[error("reading vocabulary file: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negated,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    name: String,
    polarity: Polarity,
    counterpart: String,
}

impl Relation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn counterpart(&self) -> &str {
        &self.counterpart
    }

    pub fn is_negated(&self) -> bool {
        self.polarity == Polarity::Negated
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// An ordered set of relations in which every positive relation `r` is
/// paired with exactly one negated relation `not r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationVocabulary {
    relations: Vec<Relation>,
    index: HashMap<String, usize>,
}

impl RelationVocabulary {
    /// Parses the one-relation-per-line format. Blank lines and lines starting
    /// with `#` are ignored. Names are normalized (lowercased, whitespace
    /// collapsed); order of first appearance is kept.
    pub fn parse(text: &str) -> Result<Self, VocabError> {
        let mut names: Vec<String> = Vec::new();
        let mut index = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.starts_with('#') {
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let name = normalize_text(line);
            if name.is_empty() {
                return Err(VocabError::Empty { line: i + 1 });
            }
            if index.contains_key(&name) {
                return Err(VocabError::Duplicate { line: i + 1, name });
            }
            index.insert(name.clone(), names.len());
            names.push(name);
        }
        if names.is_empty() {
            return Err(VocabError::NoRelations);
        }

        let mut relations = Vec::with_capacity(names.len());
        for name in &names {
            let relation = match name.strip_prefix(NEGATION_PREFIX) {
                Some(positive) if index.contains_key(positive) => Relation {
                    name: name.clone(),
                    polarity: Polarity::Negated,
                    counterpart: positive.to_string(),
                },
                Some(_) if !index.contains_key(&format!("{NEGATION_PREFIX}{name}")) => {
                    return Err(VocabError::Orphan(name.clone()));
                }
                _ => {
                    let negated = format!("{NEGATION_PREFIX}{name}");
                    if !index.contains_key(&negated) {
                        return Err(VocabError::Unpaired(name.clone()));
                    }
                    Relation {
                        name: name.clone(),
                        polarity: Polarity::Positive,
                        counterpart: negated,
                    }
                }
            };
            relations.push(relation);
        }
        Ok(Self { relations, index })
    }

    pub fn load(path: &Path) -> Result<Self, VocabError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| VocabError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.index
            .get(&normalize_text(name))
            .map(|&i| &self.relations[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(&normalize_text(name)).copied()
    }

    pub fn counterpart(&self, name: &str) -> Option<&Relation> {
        self.get(name).and_then(|r| self.get(&r.counterpart))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.relations {
            out.push_str(&r.name);
            out.push('\n');
        }
        out
    }
}

impl Default for RelationVocabulary {
    fn default() -> Self {
        Self::parse(DEFAULT_RELATIONS).expect("bundled relation list is well-formed")
    }
}
