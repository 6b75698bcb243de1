//! Explanation graphs: concepts, labeled edges, and the linearized text form
//! `(head; relation; tail)(head; relation; tail)...`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

/// Lowercases and collapses runs of whitespace to a single space.
pub fn normalize_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for (i, word) in s.split_whitespace().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

const FORBIDDEN: [char; 3] = [';', '(', ')'];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConceptError {
    #[error("concept label is empty")]
    Empty,
    #[error("concept label {0:?} contains a reserved character (one of ';', '(', ')')")]
    Reserved(String),
}

/// A node label. Two concepts are equal when their normalized forms are.
#[derive(Debug, Clone)]
pub struct Concept {
    label: String,
    key: String,
}

impl Concept {
    pub fn new(label: &str) -> Result<Self, ConceptError> {
        let label = label.trim();
        if label.contains(FORBIDDEN) {
            return Err(ConceptError::Reserved(label.to_string()));
        }
        let key = normalize_text(label);
        if key.is_empty() {
            return Err(ConceptError::Empty);
        }
        Ok(Self {
            label: label.to_string(),
            key,
        })
    }

    /// The label as written, trimmed.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn normalized(&self) -> &str {
        &self.key
    }

    pub fn word_count(&self) -> usize {
        self.label.split_whitespace().count()
    }
}

impl PartialEq for Concept {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Concept {}

impl Hash for Concept {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for Concept {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Concept {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub head: Concept,
    relation: String,
    relation_key: String,
    pub tail: Concept,
}

impl Edge {
    /// Builds an edge. Self-loops are rejected; the relation is not checked
    /// against any vocabulary.
    pub fn new(head: Concept, relation: &str, tail: Concept) -> Result<Self, GraphError> {
        if head == tail {
            return Err(GraphError::SelfLoop(head.label().to_string()));
        }
        let relation = relation.trim();
        if relation.contains(FORBIDDEN) {
            return Err(GraphError::Concept(ConceptError::Reserved(relation.to_string())));
        }
        let relation_key = normalize_text(relation);
        if relation_key.is_empty() {
            return Err(GraphError::EmptyRelation);
        }
        Ok(Self {
            head,
            relation: relation.to_string(),
            relation_key,
            tail,
        })
    }

    /// Convenience constructor from three raw strings.
    pub fn from_parts(head: &str, relation: &str, tail: &str) -> Result<Self, GraphError> {
        Self::new(Concept::new(head)?, relation, Concept::new(tail)?)
    }

    pub fn relation(&self) -> &str {
        &self.relation
    }

    pub fn relation_key(&self) -> &str {
        &self.relation_key
    }

    /// The edge rendered as a plain sentence: `head relation tail`.
    pub fn sentence(&self) -> String {
        format!("{} {} {}", self.head.label(), self.relation, self.tail.label())
    }

    pub fn with_relation(&self, relation: &str) -> Result<Self, GraphError> {
        Self::new(self.head.clone(), relation, self.tail.clone())
    }

    fn write_to(&self, out: &mut String) {
        out.push('(');
        out.push_str(self.head.label());
        out.push_str("; ");
        out.push_str(&self.relation);
        out.push_str("; ");
        out.push_str(self.tail.label());
        out.push(')');
    }
}

impl PartialEq for Edge {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head && self.relation_key == other.relation_key && self.tail == other.tail
    }
}

impl Eq for Edge {}

impl Hash for Edge {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.head.hash(state);
        self.relation_key.hash(state);
        self.tail.hash(state);
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("self-loop on concept {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("graph has no edges")]
    Empty,
    #[error("empty relation")]
    EmptyRelation,
    #[error(transparent)]
    Concept(#[from] ConceptError),
}

/// An ordered list of labeled directed edges. The node set is exactly the
/// concepts mentioned by the edges, in order of first mention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplanationGraph {
    edges: Vec<Edge>,
    nodes: Vec<Concept>,
}

impl ExplanationGraph {
    pub fn new(edges: Vec<Edge>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.to_string()));
            }
        }
        let nodes = collect_nodes(&edges);
        Ok(Self { edges, nodes })
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        parse_graph(text)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn nodes(&self) -> &[Concept] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, c: &Concept) -> Option<usize> {
        self.nodes.iter().position(|n| n == c)
    }

    /// Edges as `(head index, tail index)` pairs into [`Self::nodes`].
    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        let lookup: HashMap<&str, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.normalized(), i))
            .collect();
        self.edges
            .iter()
            .map(|e| (lookup[e.head.normalized()], lookup[e.tail.normalized()]))
            .collect()
    }

    pub fn serialize(&self) -> String {
        serialize_edges(&self.edges)
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }
}

impl fmt::Display for ExplanationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl std::str::FromStr for ExplanationGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}

fn collect_nodes(edges: &[Edge]) -> Vec<Concept> {
    let mut seen = HashSet::new();
    let mut nodes = Vec::new();
    for e in edges {
        for c in [&e.head, &e.tail] {
            if seen.insert(c.normalized().to_string()) {
                nodes.push(c.clone());
            }
        }
    }
    nodes
}

/// Concatenates edges in the given order. An empty slice yields "".
pub fn serialize_edges(edges: &[Edge]) -> String {
    let mut out = String::new();
    for e in edges {
        e.write_to(&mut out);
    }
    out
}

pub fn serialize_graph(g: &ExplanationGraph) -> String {
    g.serialize()
}

/// Parses `(head; relation; tail)` groups, optionally separated by whitespace.
pub fn parse_graph(text: &str) -> Result<ExplanationGraph, GraphError> {
    let edges = parse_edges(text)?;
    if edges.is_empty() {
        return Err(GraphError::Empty);
    }
    ExplanationGraph::new(edges)
}

fn parse_edges(text: &str) -> Result<Vec<Edge>, GraphError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut edges = Vec::new();
    loop {
        pos = skip_ws(text, pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(syntax(pos, "expected '('"));
        }
        let open = pos;
        pos += 1;
        let mut parts: [&str; 3] = [""; 3];
        for (slot, part) in parts.iter_mut().enumerate() {
            let start = pos;
            let terminator = if slot < 2 { b';' } else { b')' };
            loop {
                match bytes.get(pos) {
                    None => return Err(syntax(pos, "unterminated edge")),
                    Some(&b) if b == terminator => break,
                    Some(b';') => return Err(syntax(pos, "too many fields in edge")),
                    Some(b')') => return Err(syntax(pos, "edge needs three fields")),
                    Some(b'(') => return Err(syntax(pos, "nested '('")),
                    Some(_) => pos += 1,
                }
            }
            let field = &text[start..pos];
            if field.trim().is_empty() {
                return Err(syntax(start, "empty field"));
            }
            *part = field;
            pos += 1;
        }
        let head = Concept::new(parts[0]).map_err(|e| syntax(open, &e.to_string()))?;
        let tail = Concept::new(parts[2]).map_err(|e| syntax(open, &e.to_string()))?;
        edges.push(Edge::new(head, parts[1], tail)?);
    }
    Ok(edges)
}

fn skip_ws(text: &str, mut pos: usize) -> usize {
    while let Some(c) = text[pos..].chars().next() {
        if !c.is_whitespace() {
            break;
        }
        pos += c.len_utf8();
    }
    pos
}

fn syntax(offset: usize, message: &str) -> GraphError {
    GraphError::Syntax {
        offset,
        message: message.to_string(),
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_factory_farming_graph() {
        let g = parse_graph(FACTORY_FARMING).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edges()[3].relation(), "not desires");
        assert_eq!(g.serialize(), FACTORY_FARMING);
    }

    #[test]
    fn parses_minimal_graph() {
        let g = parse_graph("(a; causes; b)").unwrap();
        assert_eq!((g.edge_count(), g.node_count()), (1, 2));
        assert_eq!(g.serialize(), "(a; causes; b)");
    }

    #[test]
    fn keeps_case_but_compares_normalized() {
        let g = parse_graph("( Factory  Farming ;causes; Food )(factory farming; causes; millions)").unwrap();
        assert_eq!(g.edges()[0].head.label(), "Factory  Farming");
        assert_eq!(g.node_count(), 3);
    }

    #[test]
    fn rejects_self_loop() {
        assert_eq!(
            parse_graph("(a; causes; a)"),
            Err(GraphError::SelfLoop("a".into()))
        );
        assert!(matches!(parse_graph("(A; causes; a )"), Err(GraphError::SelfLoop(_))));
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(matches!(
            parse_graph("(a; causes; b) (A; Causes; b)"),
            Err(GraphError::DuplicateEdge(_))
        ));
        assert_eq!(parse_graph(""), Err(GraphError::Empty));
        assert_eq!(parse_graph("  \n"), Err(GraphError::Empty));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let cases = [
            ("(a; causes; b", 13),
            ("(a; causes; b)x", 14),
            ("(a; causes)", 10),
            ("(a; causes; b; c)", 13),
            ("(a; ; b)", 3),
            ("(a; (causes; b)", 4),
        ];
        for (text, offset) in cases {
            match parse_graph(text) {
                Err(GraphError::Syntax { offset: o, .. }) => assert_eq!(o, offset, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn sentence_rendering() {
        let g = parse_graph(FACTORY_FARMING).unwrap();
        assert_eq!(g.edges()[3].sentence(), "necessary not desires banned");
    }

    fn label() -> impl Strategy<Value = String> {
        "[a-zA-Z][a-zA-Z ]{0,12}[a-z]"
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(raw in prop::collection::vec((label(), label(), label()), 1..9)) {
            let mut edges = Vec::new();
            let mut seen = HashSet::new();
            for (h, r, t) in &raw {
                if let Ok(e) = Edge::from_parts(h, r, t) {
                    if seen.insert(e.clone()) {
                        edges.push(e);
                    }
                }
            }
            prop_assume!(!edges.is_empty());
            let g = ExplanationGraph::new(edges).unwrap();
            let text = g.serialize();
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            for (a, b) in back.edges().iter().zip(g.edges()) {
                prop_assert_eq!(a.head.label(), b.head.label());
                prop_assert_eq!(a.relation(), b.relation());
                prop_assert_eq!(a.tail.label(), b.tail.label());
            }
            prop_assert_eq!(back.serialize(), text);
        }
    }
}
