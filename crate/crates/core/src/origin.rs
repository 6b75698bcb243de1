//! Internal vs. external concepts.
//!
//! A node is internal to a text when its token sequence occurs contiguously
//! in that text after lowercasing and stripping punctuation from every token.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Concept, ExplanationGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeOrigin {
    Belief,
    Argument,
    Both,
    External,
}

impl NodeOrigin {
    pub fn in_belief(self) -> bool {
        matches!(self, NodeOrigin::Belief | NodeOrigin::Both)
    }

    pub fn in_argument(self) -> bool {
        matches!(self, NodeOrigin::Argument | NodeOrigin::Both)
    }

    pub fn is_external(self) -> bool {
        self == NodeOrigin::External
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NodeOrigin::Belief => "belief",
            NodeOrigin::Argument => "argument",
            NodeOrigin::Both => "both",
            NodeOrigin::External => "external",
        }
    }
}

impl fmt::Display for NodeOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NodeOrigin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "belief" => Ok(NodeOrigin::Belief),
            "argument" => Ok(NodeOrigin::Argument),
            "both" => Ok(NodeOrigin::Both),
            "external" => Ok(NodeOrigin::External),
            other => Err(format!("unknown node origin {other:?}")),
        }
    }
}

/// Lowercased tokens with punctuation removed; tokens that become empty are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|w| {
            w.chars()
                .filter(|c| !c.is_ascii_punctuation() && !c.is_ascii_control())
                .flat_map(char::to_lowercase)
                .collect::<String>()
        })
        .filter(|t| !t.is_empty())
        .collect()
}

fn contains_run(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty()
        && needle.len() <= haystack.len()
        && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Pre-tokenized belief/argument pair for classifying many labels.
#[derive(Debug, Clone)]
pub struct OriginMatcher {
    belief: Vec<String>,
    argument: Vec<String>,
}

impl OriginMatcher {
    pub fn new(belief: &str, argument: &str) -> Self {
        Self {
            belief: tokenize(belief),
            argument: tokenize(argument),
        }
    }

    pub fn classify(&self, label: &str) -> NodeOrigin {
        let tokens = tokenize(label);
        match (
            contains_run(&self.belief, &tokens),
            contains_run(&self.argument, &tokens),
        ) {
            (true, true) => NodeOrigin::Both,
            (true, false) => NodeOrigin::Belief,
            (false, true) => NodeOrigin::Argument,
            (false, false) => NodeOrigin::External,
        }
    }
}

pub fn classify_origins(
    g: &ExplanationGraph,
    belief: &str,
    argument: &str,
) -> HashMap<Concept, NodeOrigin> {
    let m = OriginMatcher::new(belief, argument);
    g.nodes()
        .iter()
        .map(|n| (n.clone(), m.classify(n.label())))
        .collect()
}

/// Origins in node order.
pub fn node_origins(g: &ExplanationGraph, belief: &str, argument: &str) -> Vec<NodeOrigin> {
    let m = OriginMatcher::new(belief, argument);
    g.nodes().iter().map(|n| m.classify(n.label())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::parse_graph;
    use proptest::prelude::*;

    #[test]
    fn factory_farming_origins() {
        let g = parse_graph(FACTORY_FARMING).unwrap();
        let o = classify_origins(&g, FF_BELIEF, FF_ARGUMENT);
        let get = |s: &str| o[&Concept::new(s).unwrap()];
        assert_eq!(get("factory farming"), NodeOrigin::Both);
        assert_eq!(get("food"), NodeOrigin::External);
        assert_eq!(get("banned"), NodeOrigin::Belief);
        assert_eq!(get("millions"), NodeOrigin::Argument);
        assert_eq!(get("necessary"), NodeOrigin::External);
    }

    #[test]
    fn requires_contiguous_tokens() {
        let m = OriginMatcher::new("Factory farming should be banned", "x");
        assert_eq!(m.classify("farming should"), NodeOrigin::Belief);
        assert_eq!(m.classify("factory banned"), NodeOrigin::External);
        assert_eq!(m.classify("farm"), NodeOrigin::External);
    }

    #[test]
    fn punctuation_is_stripped() {
        let m = OriginMatcher::new("Zoos are cruel, and should close.", "Animals don't belong in cages!");
        assert_eq!(m.classify("cruel"), NodeOrigin::Belief);
        assert_eq!(m.classify("close"), NodeOrigin::Belief);
        assert_eq!(m.classify("cages"), NodeOrigin::Argument);
        assert_eq!(m.classify("don't belong"), NodeOrigin::Argument);
    }

    proptest! {
        #[test]
        fn case_invariant(label in "[a-zA-Z]{1,6}( [a-zA-Z]{1,6}){0,2}",
                          belief in "[a-zA-Z ]{1,40}",
                          argument in "[a-zA-Z ]{1,40}") {
            let lower = OriginMatcher::new(&belief.to_lowercase(), &argument.to_lowercase())
                .classify(&label.to_lowercase());
            let upper = OriginMatcher::new(&belief.to_uppercase(), &argument.to_uppercase())
                .classify(&label.to_uppercase());
            let mixed = OriginMatcher::new(&belief, &argument).classify(&label);
            prop_assert_eq!(lower, upper);
            prop_assert_eq!(lower, mixed);
        }
    }
}
