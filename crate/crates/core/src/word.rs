//! Letters and words over the alphabet of all non-trivial node group
//! elements.
//!
//! Word syntax: whitespace-separated tokens, each either a generator symbol
//! or `node:element-literal`. Tokens map one-to-one onto letters; use
//! [`GWord::bracketed`] to merge runs of same-node letters.

use std::fmt;

use crate::error::{Error, Result};
use crate::node_group::Element;
use crate::spec::{GraphProductSpec, NodeId};

/// A non-identity element of one node group, tagged with its node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub node: NodeId,
    pub element: Element,
}

impl Letter {
    pub fn new(spec: &GraphProductSpec, node: NodeId, element: Element) -> Result<Self> {
        if node.0 >= spec.len() {
            return Err(Error::UnknownNode(node.to_string()));
        }
        let group = spec.group(node);
        group.validate(&element)?;
        if group.is_identity(&element) {
            return Err(Error::InvalidWord(format!(
                "identity letter on node {}",
                spec.node_name(node)
            )));
        }
        Ok(Letter { node, element })
    }

    pub fn inverse(&self, spec: &GraphProductSpec) -> Letter {
        Letter {
            node: self.node,
            element: spec.group(self.node).invert(&self.element),
        }
    }
}

/// A word over letters; the empty word denotes the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GWord(pub Vec<Letter>);

impl GWord {
    pub fn empty() -> Self {
        GWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters on `node`.
    pub fn node_len(&self, node: NodeId) -> usize {
        self.0.iter().filter(|l| l.node == node).count()
    }

    /// Letter counts per node, indexed by node id.
    pub fn node_counts(&self, nodes: usize) -> Vec<usize> {
        let mut counts = vec![0; nodes];
        for l in &self.0 {
            counts[l.node.0] += 1;
        }
        counts
    }

    /// The set of nodes occurring in the word, sorted.
    pub fn alph(&self) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self.0.iter().map(|l| l.node).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn concat(&self, other: &GWord) -> GWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        GWord(v)
    }

    pub fn power(&self, k: usize) -> GWord {
        GWord(self.0.iter().cloned().cycle().take(self.0.len() * k).collect())
    }

    /// Formal inverse: reverse the word and invert every letter.
    pub fn inverse(&self, spec: &GraphProductSpec) -> GWord {
        GWord(self.0.iter().rev().map(|l| l.inverse(spec)).collect())
    }

    /// Merges maximal runs of same-node letters into single letters and drops
    /// letters that multiply out to the identity.
    pub fn bracketed(&self, spec: &GraphProductSpec) -> GWord {
        let mut out: Vec<Letter> = Vec::new();
        let mut run: Option<(NodeId, Element)> = None;
        let flush = |run: &mut Option<(NodeId, Element)>, out: &mut Vec<Letter>| {
            if let Some((node, element)) = run.take() {
                if !spec.group(node).is_identity(&element) {
                    out.push(Letter { node, element });
                }
            }
        };
        for l in &self.0 {
            match &mut run {
                Some((node, acc)) if *node == l.node => {
                    *acc = spec.group(l.node).mul_unchecked(acc, &l.element);
                }
                _ => {
                    flush(&mut run, &mut out);
                    run = Some((l.node, l.element.clone()));
                }
            }
        }
        flush(&mut run, &mut out);
        GWord(out)
    }

    /// Maps node ids through `map`, dropping letters whose node is unmapped.
    pub fn remap(&self, map: &[Option<NodeId>]) -> GWord {
        GWord(
            self.0
                .iter()
                .filter_map(|l| {
                    map[l.node.0].map(|node| Letter {
                        node,
                        element: l.element.clone(),
                    })
                })
                .collect(),
        )
    }

    /// Parses the word syntax against `spec`.
    pub fn parse(spec: &GraphProductSpec, text: &str) -> Result<GWord> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if let Some(g) = spec.symbol(token) {
                letters.push(Letter {
                    node: g.node,
                    element: spec.sigma_element(g).clone(),
                });
                continue;
            }
            let (node, lit) = token
                .split_once(':')
                .ok_or_else(|| Error::UnknownSymbol(token.to_string()))?;
            let node = spec.node_by_name(node)?;
            let element = spec.group(node).parse_element(lit)?;
            letters.push(Letter::new(spec, node, element)?);
        }
        Ok(GWord(letters))
    }

    /// Parses a word given as generator symbols only.
    pub fn from_symbols(spec: &GraphProductSpec, symbols: &[&str]) -> Result<GWord> {
        symbols
            .iter()
            .map(|s| {
                let g = spec.symbol(s).ok_or_else(|| Error::UnknownSymbol(s.to_string()))?;
                Ok(Letter {
                    node: g.node,
                    element: spec.sigma_element(g).clone(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(GWord)
    }

    /// Renders the word in word syntax. Letters equal to a generator print
    /// as its symbol, others as `node:literal`.
    pub fn display<'a>(&'a self, spec: &'a GraphProductSpec) -> WordDisplay<'a> {
        WordDisplay { spec, word: self }
    }
}

pub struct WordDisplay<'a> {
    spec: &'a GraphProductSpec,
    word: &'a GWord,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", letter_text(self.spec, l))?;
        }
        Ok(())
    }
}

pub(crate) fn letter_text(spec: &GraphProductSpec, l: &Letter) -> String {
    let group = spec.group(l.node);
    match group.generators().iter().find(|g| g.element == l.element) {
        Some(g) => g.symbol.clone(),
        None => format!("{}:{}", spec.node_name(l.node), l.element),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn parse_and_display() {
        let g = corpus::fig2();
        let w = GWord::parse(&g, "a b a- alpha:3 c").unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.display(&g).to_string(), "a b a- alpha:3 c");
        assert!(matches!(GWord::parse(&g, "q"), Err(Error::UnknownSymbol(_))));
        assert!(GWord::parse(&g, "alpha:0").is_err());
        assert!(matches!(GWord::parse(&g, "omega:1"), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn bracketing_merges_runs() {
        let g = corpus::fig2();
        let w = GWord::parse(&g, "a a b a- a c c-").unwrap().bracketed(&g);
        assert_eq!(w.display(&g).to_string(), "alpha:2 b");
    }

    #[test]
    fn inverse_and_alphabet() {
        let g = corpus::fig2();
        let w = GWord::parse(&g, "a b- c").unwrap();
        assert_eq!(w.inverse(&g).display(&g).to_string(), "c- b a-");
        assert_eq!(w.alph(), vec![NodeId(0), NodeId(1), NodeId(2)]);
        assert_eq!(w.node_len(NodeId(1)), 1);
    }
}
