use std::collections::HashMap;

use crate::metrics::scorer::{EdgeSimilarityScorer, ScorerError};

/// Harmonic mean of token precision and recall with multiset overlap over
/// lowercased whitespace tokens.
pub fn token_f1(a: &str, b: &str) -> f64 {
    let ta: Vec<String> = a.split_whitespace().map(str::to_lowercase).collect();
    let tb: Vec<String> = b.split_whitespace().map(str::to_lowercase).collect();
    if ta.is_empty() && tb.is_empty() {
        return 1.0;
    }
    if ta.is_empty() || tb.is_empty() {
        return 0.0;
    }
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for t in &tb {
        *counts.entry(t.as_str()).or_default() += 1;
    }
    let mut common = 0usize;
    for t in &ta {
        if let Some(c) = counts.get_mut(t.as_str()) {
            if *c > 0 {
                *c -= 1;
                common += 1;
            }
        }
    }
    if common == 0 {
        return 0.0;
    }
    let p = common as f64 / ta.len() as f64;
    let r = common as f64 / tb.len() as f64;
    2.0 * p * r / (p + r)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TokenF1Scorer;

impl EdgeSimilarityScorer for TokenF1Scorer {
    fn score(&self, a: &str, b: &str) -> Result<f64, ScorerError> {
        Ok(token_f1(a, b))
    }
}
