//! Node groups: the vertex groups of a graph product.
//!
//! Four concrete kinds are supported: the integers, finite cyclic groups,
//! finite groups given by a Cayley table, and free groups of finite rank.
//! Every node group carries a finite generating alphabet that is closed under
//! inversion and linearly ordered; that order drives shortlex normal forms.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of a node group. The payload depends on the group kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Int(BigInt),
    /// Residue in `[0, modulus)`.
    Residue(u64),
    /// Row index into a Cayley table.
    Index(usize),
    /// Freely reduced word; `k` is the k-th free generator, `-k` its inverse.
    Free(Vec<i64>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(n) => write!(f, "{n}"),
            Element::Residue(r) => write!(f, "{r}"),
            Element::Index(i) => write!(f, "{i}"),
            Element::Free(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Multiplication table of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl CayleyTable {
    /// Checks the group axioms and derives identity and inverses.
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroupTable("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroupTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidGroupTable(format!("entry {bad} out of range")));
        }
        let at = |x: usize, y: usize| table[x * order + y];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        let mut inverse = vec![0; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| Error::InvalidGroupTable(format!("element {x} has no inverse")))?;
        }
        for x in 0..order {
            for y in 0..order {
                let xy = at(x, y);
                for z in 0..order {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(Error::InvalidGroupTable(format!(
                            "not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(CayleyTable {
            order,
            table,
            inverse,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn entries(&self) -> &[usize] {
        &self.table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeGroupKind {
    Integers,
    Cyclic { modulus: u64 },
    Finite(CayleyTable),
    Free { rank: usize },
}

impl NodeGroupKind {
    pub fn name(&self) -> &'static str {
        match self {
            NodeGroupKind::Integers => "z",
            NodeGroupKind::Cyclic { .. } => "cyclic",
            NodeGroupKind::Finite(_) => "finite",
            NodeGroupKind::Free { .. } => "free",
        }
    }

    /// Checks that `x` is a canonical payload for this group.
    pub fn validate(&self, x: &Element) -> Result<()> {
        match (self, x) {
            (NodeGroupKind::Integers, Element::Int(_)) => Ok(()),
            (NodeGroupKind::Cyclic { modulus }, Element::Residue(r)) if r < modulus => Ok(()),
            (NodeGroupKind::Finite(t), Element::Index(i)) if *i < t.order() => Ok(()),
            (NodeGroupKind::Free { rank }, Element::Free(w)) => {
                if w.iter().any(|&k| k == 0 || k.unsigned_abs() as usize > *rank) {
                    return Err(Error::InvalidElement(format!("free letter out of range in {x}")));
                }
                if w.windows(2).any(|p| p[0] == -p[1]) {
                    return Err(Error::InvalidElement(format!("{x} is not freely reduced")));
                }
                Ok(())
            }
            _ => Err(Error::InvalidElement(format!(
                "{x} is not an element of a {} node group",
                self.name()
            ))),
        }
    }

    /// Parses an element literal: an integer for `z` and `cyclic` (reduced
    /// modulo n), an index for `finite`, and comma-separated signed basis
    /// numbers for `free` (`e` is the empty word).
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let bad = || Error::InvalidElement(format!("cannot parse `{text}` as a {} element", self.name()));
        let x = match self {
            NodeGroupKind::Integers => Element::Int(text.parse::<BigInt>().map_err(|_| bad())?),
            NodeGroupKind::Cyclic { modulus } => {
                let n = text.parse::<BigInt>().map_err(|_| bad())?;
                let m = BigInt::from(*modulus);
                let r = ((n % &m) + &m) % &m;
                Element::Residue(r.try_into().map_err(|_| bad())?)
            }
            NodeGroupKind::Finite(_) => Element::Index(text.parse().map_err(|_| bad())?),
            NodeGroupKind::Free { .. } => {
                if text == "e" || text.is_empty() {
                    Element::Free(Vec::new())
                } else {
                    let letters = text
                        .split(',')
                        .map(|s| s.trim().parse::<i64>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>>>()?;
                    Element::Free(free_reduce(letters))
                }
            }
        };
        self.validate(&x)?;
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub symbol: String,
    pub element: Element,
}

/// A node group together with its ordered generating alphabet.
#[derive(Clone, Debug)]
pub struct NodeGroupSpec {
    kind: NodeGroupKind,
    generators: Vec<Generator>,
    /// Shortlex words (as generator positions) for every element of a
    /// finite kind, indexed by element number.
    shortlex_table: Option<Vec<Vec<usize>>>,
}

impl PartialEq for NodeGroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.generators == other.generators
    }
}

impl Eq for NodeGroupSpec {}

impl NodeGroupSpec {
    /// Builds a node group. `generators` must be listed in shortlex order.
    pub fn new(kind: NodeGroupKind, generators: Vec<Generator>) -> Result<Self> {
        if let NodeGroupKind::Cyclic { modulus } = kind {
            if modulus == 0 {
                return Err(Error::InvalidElement("cyclic modulus must be positive".into()));
            }
        }
        if let NodeGroupKind::Free { rank } = kind {
            if rank == 0 {
                return Err(Error::InvalidElement("free rank must be positive".into()));
            }
        }
        let mut spec = NodeGroupSpec {
            kind,
            generators,
            shortlex_table: None,
        };
        spec.check_generators()?;
        if spec.finite_order().is_some() {
            spec.shortlex_table = Some(spec.build_shortlex_table()?);
        }
        Ok(spec)
    }

    pub fn kind(&self) -> &NodeGroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    fn check_generators(&self) -> Result<()> {
        if self.generators.is_empty() {
            return Err(Error::InvalidGenerator("node group has no generators".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            self.validate(&g.element)
                .map_err(|e| Error::InvalidGenerator(format!("{}: {e}", g.symbol)))?;
            if self.is_identity(&g.element) {
                return Err(Error::InvalidGenerator(format!(
                    "{} is the identity",
                    g.symbol
                )));
            }
            if self.generators[..i].iter().any(|h| h.symbol == g.symbol) {
                return Err(Error::InvalidGenerator(format!(
                    "duplicate symbol {}",
                    g.symbol
                )));
            }
            let inv = self.invert(&g.element);
            if !self.generators.iter().any(|h| h.element == inv) {
                return Err(Error::InvalidGenerator(format!(
                    "inverse of {} is not declared",
                    g.symbol
                )));
            }
        }
        match &self.kind {
            NodeGroupKind::Integers => {
                let standard = [BigInt::one(), -BigInt::one()];
                if self.generators.len() != 2
                    || !standard
                        .iter()
                        .all(|s| self.generators.iter().any(|g| g.element == Element::Int(s.clone())))
                {
                    return Err(Error::InvalidGenerator(
                        "integer nodes use exactly the generators 1 and -1".into(),
                    ));
                }
            }
            NodeGroupKind::Free { rank } => {
                let rank = *rank as i64;
                let ok = self.generators.len() as i64 == 2 * rank
                    && self
                        .generators
                        .iter()
                        .all(|g| matches!(&g.element, Element::Free(w) if w.len() == 1));
                if !ok {
                    return Err(Error::InvalidGenerator(
                        "free nodes use exactly the basis letters and their inverses".into(),
                    ));
                }
            }
            NodeGroupKind::Cyclic { .. } | NodeGroupKind::Finite(_) => {}
        }
        Ok(())
    }

    /// Order of the group when it is finite.
    pub fn finite_order(&self) -> Option<usize> {
        match &self.kind {
            NodeGroupKind::Cyclic { modulus } => Some(*modulus as usize),
            NodeGroupKind::Finite(t) => Some(t.order()),
            _ => None,
        }
    }

    /// Enumerates all elements of a finite kind.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match &self.kind {
            NodeGroupKind::Cyclic { modulus } => Some((0..*modulus).map(Element::Residue).collect()),
            NodeGroupKind::Finite(t) => Some((0..t.order()).map(Element::Index).collect()),
            _ => None,
        }
    }

    fn element_number(&self, x: &Element) -> usize {
        match x {
            Element::Residue(r) => *r as usize,
            Element::Index(i) => *i,
            _ => unreachable!("element_number on infinite kind"),
        }
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            NodeGroupKind::Integers => Element::Int(BigInt::zero()),
            NodeGroupKind::Cyclic { .. } => Element::Residue(0),
            NodeGroupKind::Finite(t) => Element::Index(t.identity()),
            NodeGroupKind::Free { .. } => Element::Free(Vec::new()),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    /// Checks that `x` is a canonical payload for this group.
    pub fn validate(&self, x: &Element) -> Result<()> {
        self.kind.validate(x)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        self.kind.parse_element(text)
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &Element, y: &Element) -> Element {
        match (&self.kind, x, y) {
            (NodeGroupKind::Integers, Element::Int(a), Element::Int(b)) => Element::Int(a + b),
            (NodeGroupKind::Cyclic { modulus }, Element::Residue(a), Element::Residue(b)) => {
                Element::Residue(((*a as u128 + *b as u128) % *modulus as u128) as u64)
            }
            (NodeGroupKind::Finite(t), Element::Index(a), Element::Index(b)) => Element::Index(t.mul(*a, *b)),
            (NodeGroupKind::Free { .. }, Element::Free(a), Element::Free(b)) => {
                Element::Free(free_reduce(a.iter().chain(b.iter()).copied()))
            }
            _ => panic!("element kind mismatch in node group multiplication"),
        }
    }

    pub fn invert(&self, x: &Element) -> Element {
        match (&self.kind, x) {
            (NodeGroupKind::Integers, Element::Int(a)) => Element::Int(-a),
            (NodeGroupKind::Cyclic { modulus }, Element::Residue(a)) => {
                Element::Residue((modulus - a) % modulus)
            }
            (NodeGroupKind::Finite(t), Element::Index(a)) => Element::Index(t.inv(*a)),
            (NodeGroupKind::Free { .. }, Element::Free(w)) => {
                Element::Free(w.iter().rev().map(|k| -k).collect())
            }
            _ => panic!("element kind mismatch in node group inversion"),
        }
    }

    pub fn try_invert(&self, x: &Element) -> Result<Element> {
        self.validate(x)?;
        Ok(self.invert(x))
    }

    /// Evaluates a word given as generator positions.
    pub fn evaluate(&self, word: &[usize]) -> Element {
        word.iter().fold(self.identity(), |acc, &g| {
            self.mul_unchecked(&acc, &self.generators[g].element)
        })
    }

    fn generator_position(&self, x: &Element) -> Option<usize> {
        self.generators.iter().position(|g| g.element == *x)
    }

    fn build_shortlex_table(&self) -> Result<Vec<Vec<usize>>> {
        let order = self.finite_order().expect("finite kind");
        let mut words: Vec<Option<Vec<usize>>> = vec![None; order];
        let id = self.identity();
        words[self.element_number(&id)] = Some(Vec::new());
        let mut queue = VecDeque::from([id]);
        // Level-by-level BFS, expanding shortlex-least words in order and
        // appending generators in order, discovers every element first
        // through its shortlex-least word.
        while let Some(x) = queue.pop_front() {
            let base = words[self.element_number(&x)].clone().expect("visited");
            for (gi, g) in self.generators.iter().enumerate() {
                let y = self.mul_unchecked(&x, &g.element);
                let slot = &mut words[self.element_number(&y)];
                if slot.is_none() {
                    let mut w = base.clone();
                    w.push(gi);
                    *slot = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
            .into_iter()
            .map(|w| w.ok_or_else(|| Error::InvalidGenerator("generators do not generate the group".into())))
            .collect()
    }

    /// Shortlex-least generator word (as positions into `generators()`)
    /// evaluating to `x`.
    pub fn shortlex(&self, x: &Element) -> Result<Vec<usize>> {
        self.validate(x)?;
        if self.is_identity(x) {
            return Err(Error::IdentityElement);
        }
        match (&self.kind, x) {
            (NodeGroupKind::Integers, Element::Int(n)) => {
                let unit = if n.is_positive() { BigInt::one() } else { -BigInt::one() };
                let g = self
                    .generator_position(&Element::Int(unit))
                    .expect("standard generators");
                let count: usize = n
                    .abs()
                    .try_into()
                    .map_err(|_| Error::InvalidElement("integer too large to spell out".into()))?;
                Ok(vec![g; count])
            }
            (NodeGroupKind::Free { .. }, Element::Free(w)) => Ok(w
                .iter()
                .map(|&k| {
                    self.generator_position(&Element::Free(vec![k]))
                        .expect("standard generators")
                })
                .collect()),
            _ => {
                let table = self.shortlex_table.as_ref().expect("finite kind");
                Ok(table[self.element_number(x)].clone())
            }
        }
    }

    /// Shortlex word as generator symbols.
    pub fn shortlex_symbols(&self, x: &Element) -> Result<Vec<&str>> {
        Ok(self
            .shortlex(x)?
            .into_iter()
            .map(|g| self.generators[g].symbol.as_str())
            .collect())
    }

    /// Decides whether `x` and `y` are conjugate in this group.
    pub fn is_conjugate(&self, x: &Element, y: &Element) -> Result<bool> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(match (&self.kind, x, y) {
            (NodeGroupKind::Integers, _, _) | (NodeGroupKind::Cyclic { .. }, _, _) => x == y,
            (NodeGroupKind::Finite(t), Element::Index(a), Element::Index(b)) => {
                (0..t.order()).any(|z| t.mul(t.mul(t.inv(z), *a), z) == *b)
            }
            (NodeGroupKind::Free { .. }, Element::Free(a), Element::Free(b)) => {
                let a = cyclic_free_reduce(a);
                let b = cyclic_free_reduce(b);
                a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b.iter())))
            }
            _ => unreachable!("validated"),
        })
    }
}

/// Stack-based free reduction.
pub fn free_reduce(letters: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_free_reduce(w: &[i64]) -> Vec<i64> {
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}
