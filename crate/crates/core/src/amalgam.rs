//! Word problem in `G = P *_A (A x B)`, where `A` is the sub-product over
//! the link of the removed node `B`.
//!
//! A word `g_0 b_1 g_1 ... b_m g_m` is trivial iff three things hold: its
//! image `g_0 ... g_m` is trivial in `P`, `b_1 ... b_m` is trivial in `B`,
//! and the word it induces over the basis `X = {(i, g, 0)}` of a free
//! subgroup is trivial. The last test embeds `F(X)` into `F(x, y)` and then
//! into `SL(2, Z)`, and is cross-checked by free reduction.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::node_group::{free_reduce, Element, NodeGroupSpec};
use crate::normal_form;
use crate::spec::{Decomposition, GraphProductSpec, NodeId};
use crate::trace::project;
use crate::word::{GWord, Letter};

/// How word problems in `P` are answered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PSolver {
    /// Recurse through further decompositions of `P`.
    #[default]
    Decomposition,
    /// Use the reduced normal form of `P`.
    NormalForm,
}

/// The data `(P, A, B)` of an amalgamated product.
#[derive(Clone, Debug)]
pub struct AmalgamInstance {
    pub p: GraphProductSpec,
    pub b: NodeGroupSpec,
    /// Nodes of `P` spanning `A`.
    pub link: Vec<NodeId>,
    pub solver: PSolver,
}

impl AmalgamInstance {
    pub fn new(p: GraphProductSpec, b: NodeGroupSpec, link: Vec<NodeId>, solver: PSolver) -> Result<Self> {
        if let Some(bad) = link.iter().find(|a| a.0 >= p.len()) {
            return Err(Error::UnknownNode(bad.to_string()));
        }
        Ok(AmalgamInstance { p, b, link, solver })
    }

    pub fn from_decomposition(d: &Decomposition, solver: PSolver) -> Self {
        AmalgamInstance {
            p: d.p.clone(),
            b: d.b.clone(),
            link: d.link.clone(),
            solver,
        }
    }

    /// Word problem in `P`.
    pub fn p_trivial(&self, w: &GWord) -> Result<bool> {
        match self.solver {
            PSolver::Decomposition => try_wp_via_decomposition(&self.p, w),
            PSolver::NormalForm => Ok(normal_form::word_problem(&self.p, w)),
        }
    }

    /// Membership in `A`: `w` lies in `A` iff `w` equals its projection.
    pub fn in_link(&self, w: &GWord) -> Result<bool> {
        self.p_trivial(&w.concat(&project(w, &self.link).inverse(&self.p)))
    }
}

/// `g_0 b_1 g_1 ... b_m g_m` with `g_i` words over `P` and `b_j` in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyllableWord {
    pub g: Vec<GWord>,
    pub b: Vec<Element>,
}

impl SyllableWord {
    /// Validates the shape and merges around identity `b`s.
    pub fn new(inst: &AmalgamInstance, g: Vec<GWord>, b: Vec<Element>) -> Result<Self> {
        if g.len() != b.len() + 1 {
            return Err(Error::InvalidSyllableWord(format!(
                "{} P-syllables for {} B-syllables",
                g.len(),
                b.len()
            )));
        }
        for x in &b {
            inst.b
                .validate(x)
                .map_err(|e| Error::InvalidSyllableWord(e.to_string()))?;
        }
        for gi in &g {
            for l in gi.letters() {
                Letter::new(&inst.p, l.node, l.element.clone())
                    .map_err(|e| Error::InvalidSyllableWord(e.to_string()))?;
            }
        }
        let mut out_g = vec![g[0].clone()];
        let mut out_b = Vec::new();
        for (bj, gj) in b.into_iter().zip(g.into_iter().skip(1)) {
            if inst.b.is_identity(&bj) {
                let last = out_g.last_mut().expect("non-empty");
                *last = last.concat(&gj);
            } else {
                out_b.push(bj);
                out_g.push(gj);
            }
        }
        Ok(SyllableWord { g: out_g, b: out_b })
    }

    /// Splits a word over the full graph product at the base node of `d`.
    pub fn from_word(d: &Decomposition, w: &GWord) -> Self {
        let mut g = vec![GWord::empty()];
        let mut b: Vec<Element> = Vec::new();
        let mut last_was_b = false;
        for l in w.letters() {
            if l.node == d.base {
                if last_was_b {
                    let acc = b.last_mut().expect("b run");
                    *acc = d.b.mul_unchecked(acc, &l.element);
                } else {
                    b.push(l.element.clone());
                    g.push(GWord::empty());
                }
                last_was_b = true;
            } else {
                let node = d.to_p[l.node.0].expect("non-base node maps into P");
                g.last_mut().expect("non-empty").0.push(Letter {
                    node,
                    element: l.element.clone(),
                });
                last_was_b = false;
            }
        }
        // Drop identity B-syllables produced by merging.
        let mut out_g = vec![g[0].clone()];
        let mut out_b = Vec::new();
        for (bj, gj) in b.into_iter().zip(g.into_iter().skip(1)) {
            if d.b.is_identity(&bj) {
                let last = out_g.last_mut().expect("non-empty");
                *last = last.concat(&gj);
            } else {
                out_b.push(bj);
                out_g.push(gj);
            }
        }
        SyllableWord { g: out_g, b: out_b }
    }

    /// Reassembles the word over the full graph product.
    pub fn flatten(&self, d: &Decomposition) -> GWord {
        let mut from_p = vec![NodeId(0); d.p.len()];
        for (old, new) in d.to_p.iter().enumerate() {
            if let Some(new) = new {
                from_p[new.0] = NodeId(old);
            }
        }
        let lift = |u: &GWord| -> Vec<Letter> {
            u.letters()
                .iter()
                .map(|l| Letter {
                    node: from_p[l.node.0],
                    element: l.element.clone(),
                })
                .collect()
        };
        let mut out: Vec<Letter> = lift(&self.g[0]);
        for (bj, gj) in self.b.iter().zip(&self.g[1..]) {
            out.push(Letter {
                node: d.base,
                element: bj.clone(),
            });
            out.extend(lift(gj));
        }
        GWord(out)
    }

    pub fn b_len(&self) -> usize {
        self.b.len()
    }
}

/// A word over the basis `X`: letter `k` is the `k`-th basis symbol, `-k` its
/// inverse. `basis[k - 1]` records the pair `(coset index, g)` of `(i, g, 0)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeWord {
    pub basis: Vec<(usize, Element)>,
    pub letters: Vec<i64>,
}

impl FreeWord {
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Coset indices `nu(i)`: the least `j` with `p_j^-1 p_i` in `A`, for the
/// prefixes `p_i = g_0 ... g_i`, `0 <= i < m`.
pub fn coset_indices(inst: &AmalgamInstance, w: &SyllableWord) -> Result<Vec<usize>> {
    let m = w.b_len();
    let mut prefixes: Vec<GWord> = Vec::with_capacity(m);
    let mut acc = GWord::empty();
    for gi in w.g.iter().take(m) {
        acc = acc.concat(gi);
        prefixes.push(acc.clone());
    }
    let mut nu = Vec::with_capacity(m);
    let mut representatives: Vec<usize> = Vec::new();
    for i in 0..m {
        // The least such j is itself a representative, so only those are tried.
        let mut found = None;
        for &j in &representatives {
            if inst.in_link(&prefixes[j].inverse(&inst.p).concat(&prefixes[i]))? {
                found = Some(j);
                break;
            }
        }
        let j = found.unwrap_or_else(|| {
            representatives.push(i);
            i
        });
        nu.push(j);
    }
    Ok(nu)
}

/// Rewrites a word of the kernel of `G -> P x B` over the basis `X`.
pub fn to_basis_word(inst: &AmalgamInstance, w: &SyllableWord) -> Result<FreeWord> {
    let projection: GWord = w.g.iter().fold(GWord::empty(), |acc, gi| acc.concat(gi));
    if !inst.p_trivial(&projection)? {
        return Err(Error::NotInKernel);
    }
    let b_product = w
        .b
        .iter()
        .fold(inst.b.identity(), |acc, x| inst.b.mul_unchecked(&acc, x));
    if !inst.b.is_identity(&b_product) {
        return Err(Error::NotInKernel);
    }
    let m = w.b_len();
    if m == 0 {
        return Ok(FreeWord::default());
    }
    // The k-th B-letter (1-based) lives in copy nu(k - 1).
    let copies = coset_indices(inst, w)?;
    let mut basis: Vec<(usize, Element)> = Vec::new();
    let mut index: HashMap<(usize, Element), i64> = HashMap::new();
    let mut symbol = |copy: usize, g: &Element| -> i64 {
        *index.entry((copy, g.clone())).or_insert_with(|| {
            basis.push((copy, g.clone()));
            basis.len() as i64
        })
    };
    let mut letters = Vec::new();
    let mut g = inst.b.identity();
    for i in 1..m {
        g = inst.b.mul_unchecked(&g, &w.b[i - 1]);
        let (from, to) = (copies[i - 1], copies[i]);
        if inst.b.is_identity(&g) || from == to {
            continue;
        }
        // (i, g, j) = (i, g, 0) (j, g, 0)^-1, and (0, g, 0) is trivial.
        if from != 0 {
            letters.push(symbol(from, &g));
        }
        if to != 0 {
            letters.push(-symbol(to, &g));
        }
    }
    Ok(FreeWord { basis, letters })
}

/// 2x2 integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2(pub [[BigInt; 2]; 2]);

impl Matrix2 {
    pub fn from_i64(m: [[i64; 2]; 2]) -> Self {
        Matrix2([
            [BigInt::from(m[0][0]), BigInt::from(m[0][1])],
            [BigInt::from(m[1][0]), BigInt::from(m[1][1])],
        ])
    }

    pub fn identity() -> Self {
        Matrix2::from_i64([[1, 0], [0, 1]])
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        let a = &self.0;
        let b = &o.0;
        Matrix2([
            [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
            [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
        ])
    }

    pub fn det(&self) -> BigInt {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    /// Inverse of a determinant-one matrix.
    pub fn sl2_inverse(&self) -> Matrix2 {
        let m = &self.0;
        Matrix2([[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]])
    }

    pub fn is_identity(&self) -> bool {
        self.0[0][0].is_one() && self.0[1][1].is_one() && self.0[0][1].is_zero() && self.0[1][0].is_zero()
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1])
    }
}

/// Image of the free generator `x`.
pub fn x_matrix() -> Matrix2 {
    Matrix2::from_i64([[0, 1], [-1, -2]])
}

/// Image of the free generator `y`.
pub fn y_matrix() -> Matrix2 {
    Matrix2::from_i64([[2, -1], [1, 0]])
}

/// Letters over `{x, y}`: 1 is `x`, 2 is `y`, negatives are inverses.
pub fn encode_in_xy(u: &[i64]) -> Vec<i64> {
    let mut out = Vec::new();
    for &k in u {
        let n = k.unsigned_abs() as usize;
        out.extend(std::iter::repeat_n(1, n));
        out.push(if k > 0 { 2 } else { -2 });
        out.extend(std::iter::repeat_n(-1, n));
    }
    out
}

/// Evaluates a word over `{x, y}` in `SL(2, Z)`.
pub fn evaluate_xy(word: &[i64]) -> Matrix2 {
    let x = x_matrix();
    let y = y_matrix();
    let xi = x.sl2_inverse();
    let yi = y.sl2_inverse();
    word.iter().fold(Matrix2::identity(), |acc, &l| {
        let m = match l {
            1 => &x,
            -1 => &xi,
            2 => &y,
            -2 => &yi,
            _ => panic!("letter {l} is not over {{x, y}}"),
        };
        acc.mul(m)
    })
}

/// Evaluates a basis word in `SL(2, Z)` (basis symbol `k` maps to
/// `x^k y x^-k`) and reports whether it is the identity. The answer is
/// checked against free reduction of the word.
pub fn f2_encode_eval(u: &FreeWord) -> Result<(Matrix2, bool)> {
    let matrix = evaluate_xy(&encode_in_xy(&u.letters));
    let trivial = matrix.is_identity();
    let reduced_empty = free_reduce(u.letters.iter().copied()).is_empty();
    if trivial != reduced_empty {
        return Err(Error::CrossCheck(format!(
            "matrix evaluation says {trivial}, free reduction says {reduced_empty}"
        )));
    }
    Ok((matrix, trivial))
}

/// Decides `w = 1` in `P *_A (A x B)`.
pub fn amalgam_wp(inst: &AmalgamInstance, w: &SyllableWord) -> Result<bool> {
    let projection: GWord = w.g.iter().fold(GWord::empty(), |acc, gi| acc.concat(gi));
    if !inst.p_trivial(&projection)? {
        return Ok(false);
    }
    let b_product = w
        .b
        .iter()
        .fold(inst.b.identity(), |acc, x| inst.b.mul_unchecked(&acc, x));
    if !inst.b.is_identity(&b_product) {
        return Ok(false);
    }
    let u = to_basis_word(inst, w)?;
    Ok(f2_encode_eval(&u)?.1)
}

/// Word problem of a graph product by recursion on the number of nodes,
/// splitting off the last node each time.
pub fn try_wp_via_decomposition(spec: &GraphProductSpec, w: &GWord) -> Result<bool> {
    match spec.len() {
        0 => Ok(w.is_empty()),
        1 => {
            let group = spec.group(NodeId(0));
            let product = w
                .letters()
                .iter()
                .fold(group.identity(), |acc, l| group.mul_unchecked(&acc, &l.element));
            Ok(group.is_identity(&product))
        }
        n => {
            let d = spec.decompose(NodeId(n - 1))?;
            let inst = AmalgamInstance::from_decomposition(&d, PSolver::Decomposition);
            amalgam_wp(&inst, &SyllableWord::from_word(&d, w))
        }
    }
}

/// Word problem via decomposition. Panics if the matrix evaluation and free
/// reduction ever disagree.
pub fn wp_via_decomposition(spec: &GraphProductSpec, w: &GWord) -> bool {
    try_wp_via_decomposition(spec, w).expect("amalgam cross-check failed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn setup() -> (GraphProductSpec, Decomposition, AmalgamInstance) {
        let g = corpus::fig2();
        let d = g.decompose(NodeId(1)).unwrap();
        let inst = AmalgamInstance::from_decomposition(&d, PSolver::NormalForm);
        (g, d, inst)
    }

    fn sw(g: &GraphProductSpec, d: &Decomposition, s: &str) -> SyllableWord {
        SyllableWord::from_word(d, &GWord::parse(g, s).unwrap())
    }

    #[test]
    fn commuting_pair_is_trivial() {
        let (g, d, inst) = setup();
        let w = sw(&g, &d, "b a b- a-");
        assert_eq!(w.b_len(), 2);
        assert!(amalgam_wp(&inst, &w).unwrap());
        assert!(to_basis_word(&inst, &w).unwrap().is_empty());
        assert_eq!(coset_indices(&inst, &w).unwrap(), vec![0, 0]);
    }

    #[test]
    fn dependent_commutator_is_not() {
        let (g, d, inst) = setup();
        let w = sw(&g, &d, "c b c- b-");
        assert_eq!(coset_indices(&inst, &w).unwrap(), vec![0, 1]);
        let u = to_basis_word(&inst, &w).unwrap();
        assert_eq!(u.letters, vec![-1]);
        assert_eq!(u.basis, vec![(1, Element::Int(1.into()))]);
        assert!(!amalgam_wp(&inst, &w).unwrap());
    }

    #[test]
    fn projection_obstruction() {
        let (g, d, inst) = setup();
        let w = sw(&g, &d, "a b a");
        assert!(!amalgam_wp(&inst, &w).unwrap());
        assert_eq!(to_basis_word(&inst, &w), Err(Error::NotInKernel));
        let empty = sw(&g, &d, "a a-");
        assert_eq!(empty.b_len(), 0);
        assert!(to_basis_word(&inst, &empty).unwrap().is_empty());
    }

    #[test]
    fn syllable_shape_is_checked() {
        let (_, _, inst) = setup();
        let err = SyllableWord::new(&inst, vec![GWord::empty()], vec![Element::Int(1.into())]);
        assert!(matches!(err, Err(Error::InvalidSyllableWord(_))));
        let merged = SyllableWord::new(
            &inst,
            vec![GWord::empty(), GWord::empty()],
            vec![Element::Int(0.into())],
        )
        .unwrap();
        assert_eq!(merged.b_len(), 0);
    }

    #[test]
    fn flatten_round_trip() {
        let (g, d, _) = setup();
        let w = GWord::parse(&g, "c b a b b c- a-").unwrap();
        let s = SyllableWord::from_word(&d, &w);
        assert_eq!(s.flatten(&d).display(&g).to_string(), "c b a beta:2 c- a-");
    }

    #[test]
    fn matrices() {
        let xy = evaluate_xy(&[1, 2]);
        assert_eq!(xy, Matrix2::from_i64([[1, 0], [-4, 1]]));
        let comm = evaluate_xy(&[1, 2, -1, -2]);
        assert!(!comm.is_identity());
        assert_eq!(comm.det(), BigInt::one());
        let (m, trivial) = f2_encode_eval(&FreeWord {
            basis: vec![],
            letters: vec![1, -1],
        })
        .unwrap();
        assert!(m.is_identity() && trivial);
    }

    #[test]
    fn recursive_word_problem() {
        let g = corpus::fig2();
        let t = |s: &str| wp_via_decomposition(&g, &GWord::parse(&g, s).unwrap());
        assert!(t("a b a- b-"));
        assert!(!t("a c a- c-"));
        assert!(t(""));
        assert!(t("c a b a- b- c-"));
        assert!(!t("c a b a- c- b-"));
    }
}
