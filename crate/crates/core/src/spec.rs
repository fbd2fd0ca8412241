//! Graph product specifications: the node list, the independence relation,
//! node groups and the ordered generating alphabet.
//!
//! Spec files are UTF-8, line based, with `#` comments:
//!
//! ```text
//! node <name> z | cyclic <n> | finite <k> | free <r>
//! table <name> <k*k space-separated indices>
//! edge <name1> <name2>
//! gen <symbol> <node> <element-literal>
//! order <sym1> <sym2> ...
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::node_group::{CayleyTable, Element, Generator, NodeGroupKind, NodeGroupSpec};

/// Position of a node in the node order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub group: NodeGroupSpec,
}

/// A generator of the whole graph product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaGenerator {
    pub symbol: String,
    pub node: NodeId,
    /// Position in the node group's generator list.
    pub local: usize,
}

/// A validated graph product `G(L, I; (G_a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphProductSpec {
    nodes: Vec<Node>,
    independent: Vec<Vec<bool>>,
    dependent: Vec<Vec<bool>>,
    sigma: Vec<SigmaGenerator>,
    symbols: HashMap<String, usize>,
}

impl GraphProductSpec {
    /// Builds a graph product from nodes in node order and a list of
    /// independence pairs. Generator order is node order, then each node
    /// group's own generator order.
    pub fn new(nodes: Vec<Node>, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let n = nodes.len();
        let mut independent = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a.0 >= n || b.0 >= n {
                return Err(Error::UnknownNode(format!("{}", a.max(b))));
            }
            if a == b {
                return Err(Error::InvalidIndependence(format!(
                    "self-loop on node {}",
                    nodes[a.0].name
                )));
            }
            independent[a.0][b.0] = true;
            independent[b.0][a.0] = true;
        }
        for (i, node) in nodes.iter().enumerate() {
            if nodes[..i].iter().any(|m| m.name == node.name) {
                return Err(Error::InvalidIndependence(format!("duplicate node {}", node.name)));
            }
        }
        let dependent = independent
            .iter()
            .map(|row| row.iter().map(|&x| !x).collect())
            .collect();
        let mut sigma = Vec::new();
        let mut symbols = HashMap::new();
        for (i, node) in nodes.iter().enumerate() {
            for (local, g) in node.group.generators().iter().enumerate() {
                if symbols.insert(g.symbol.clone(), sigma.len()).is_some() {
                    return Err(Error::InvalidGenerator(format!("symbol {} used twice", g.symbol)));
                }
                sigma.push(SigmaGenerator {
                    symbol: g.symbol.clone(),
                    node: NodeId(i),
                    local,
                });
            }
        }
        Ok(GraphProductSpec {
            nodes,
            independent,
            dependent,
            sigma,
            symbols,
        })
    }

    /// Parses and validates a spec file.
    pub fn parse(text: &str) -> Result<Self> {
        parse_spec(text)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn group(&self, id: NodeId) -> &NodeGroupSpec {
        &self.nodes[id.0].group
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        &self.nodes[id.0].name
    }

    pub fn node_by_name(&self, name: &str) -> Result<NodeId> {
        self.nodes
            .iter()
            .position(|n| n.name == name)
            .map(NodeId)
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn is_independent(&self, a: NodeId, b: NodeId) -> bool {
        self.independent[a.0][b.0]
    }

    pub fn is_dependent(&self, a: NodeId, b: NodeId) -> bool {
        self.dependent[a.0][b.0]
    }

    /// Independence pairs `(a, b)` with `a < b`.
    pub fn independence_pairs(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.independent[a][b] {
                    out.push((NodeId(a), NodeId(b)));
                }
            }
        }
        out
    }

    /// All ordered pairs in `D`, the diagonal included.
    pub fn dependence_pairs(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.dependent[a][b] {
                    out.push((NodeId(a), NodeId(b)));
                }
            }
        }
        out
    }

    /// Nodes independent from `node`; their letters form the alphabet of
    /// `I(node)`.
    pub fn link(&self, node: NodeId) -> Vec<NodeId> {
        self.node_ids().filter(|&a| self.is_independent(a, node)).collect()
    }

    /// The generating alphabet in shortlex order.
    pub fn sigma(&self) -> &[SigmaGenerator] {
        &self.sigma
    }

    pub fn symbol(&self, symbol: &str) -> Option<&SigmaGenerator> {
        self.symbols.get(symbol).map(|&i| &self.sigma[i])
    }

    pub fn sigma_element(&self, g: &SigmaGenerator) -> &Element {
        &self.group(g.node).generators()[g.local].element
    }

    /// Position of a node group generator in the global alphabet.
    pub fn sigma_index(&self, node: NodeId, local: usize) -> usize {
        self.symbols[&self.group(node).generators()[local].symbol]
    }

    /// True when every node group is finite and all nodes commute, which
    /// is exactly when the graph product is finite.
    pub fn is_finite(&self) -> bool {
        self.nodes.iter().all(|n| n.group.finite_order().is_some())
            && (0..self.len()).all(|a| (0..self.len()).all(|b| a == b || self.independent[a][b]))
    }

    /// The graph product over the nodes in `subset`, together with the map
    /// from old node ids to new ones.
    pub fn induced(&self, subset: &[NodeId]) -> (GraphProductSpec, Vec<Option<NodeId>>) {
        let mut keep: Vec<NodeId> = subset.to_vec();
        keep.sort();
        keep.dedup();
        let mut map = vec![None; self.len()];
        for (new, old) in keep.iter().enumerate() {
            map[old.0] = Some(NodeId(new));
        }
        let nodes = keep.iter().map(|&id| self.nodes[id.0].clone()).collect();
        let mut edges = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.is_independent(a, b) {
                    edges.push((NodeId(i), NodeId(j)));
                }
            }
        }
        let spec = GraphProductSpec::new(nodes, &edges).expect("sub-spec of a valid spec is valid");
        (spec, map)
    }

    /// Splits the graph product at `base` as `P *_A (A x B)`.
    pub fn decompose(&self, base: NodeId) -> Result<Decomposition> {
        if base.0 >= self.len() {
            return Err(Error::UnknownNode(base.to_string()));
        }
        let rest: Vec<NodeId> = self.node_ids().filter(|&a| a != base).collect();
        let (p, to_p) = self.induced(&rest);
        let link = self
            .link(base)
            .into_iter()
            .map(|a| to_p[a.0].expect("link avoids base"))
            .collect();
        Ok(Decomposition {
            base,
            p,
            link,
            b: self.group(base).clone(),
            to_p,
        })
    }

    /// Connected components of `subset` in the dependence graph `(L, D)`,
    /// each sorted, ordered by least node.
    pub fn connected_components(&self, subset: &[NodeId]) -> Vec<Vec<NodeId>> {
        let mut members: Vec<NodeId> = subset.to_vec();
        members.sort();
        members.dedup();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for &start in &members {
            if seen[start.0] {
                continue;
            }
            seen[start.0] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &members {
                    if !seen[y.0] && self.is_dependent(x, y) {
                        seen[y.0] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Renders the spec back into the file format.
    pub fn to_spec_text(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            let kind = match node.group.kind() {
                NodeGroupKind::Integers => "z".to_string(),
                NodeGroupKind::Cyclic { modulus } => format!("cyclic {modulus}"),
                NodeGroupKind::Finite(t) => format!("finite {}", t.order()),
                NodeGroupKind::Free { rank } => format!("free {rank}"),
            };
            out.push_str(&format!("node {} {kind}\n", node.name));
            if let NodeGroupKind::Finite(t) = node.group.kind() {
                let entries: Vec<String> = t.entries().iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("table {} {}\n", node.name, entries.join(" ")));
            }
        }
        for (a, b) in self.independence_pairs() {
            out.push_str(&format!("edge {} {}\n", self.node_name(a), self.node_name(b)));
        }
        for g in &self.sigma {
            out.push_str(&format!(
                "gen {} {} {}\n",
                g.symbol,
                self.node_name(g.node),
                self.sigma_element(g)
            ));
        }
        let order: Vec<&str> = self.sigma.iter().map(|g| g.symbol.as_str()).collect();
        out.push_str(&format!("order {}\n", order.join(" ")));
        out
    }
}

/// `G = P *_A (A x B)` obtained by removing the base node.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub base: NodeId,
    /// Graph product over the remaining nodes.
    pub p: GraphProductSpec,
    /// The link of the base node, as node ids of `p`.
    pub link: Vec<NodeId>,
    /// Node group of the base node.
    pub b: NodeGroupSpec,
    /// Maps node ids of the full spec to node ids of `p`.
    pub to_p: Vec<Option<NodeId>>,
}

struct RawNode {
    name: String,
    kind: String,
    param: usize,
    line: usize,
    table: Option<Vec<usize>>,
}

fn parse_spec(text: &str) -> Result<GraphProductSpec> {
    let mut raw_nodes: Vec<RawNode> = Vec::new();
    let mut edges: Vec<(String, String, usize)> = Vec::new();
    let mut gens: Vec<(String, String, String, usize)> = Vec::new();
    let mut order: Option<(Vec<String>, usize)> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "node" => {
                let (name, kind) = match tokens.as_slice() {
                    [_, name, kind, ..] => (*name, *kind),
                    _ => return Err(err("expected `node <name> <kind>`".into())),
                };
                let param = match (kind, tokens.get(3)) {
                    ("z", None) => 0,
                    ("cyclic" | "finite" | "free", Some(p)) if tokens.len() == 4 => p
                        .parse::<usize>()
                        .ok()
                        .filter(|&p| p > 0)
                        .ok_or_else(|| err(format!("`{p}` is not a positive integer")))?,
                    _ => return Err(err(format!("bad node kind in `{line}`"))),
                };
                if raw_nodes.iter().any(|n| n.name == name) {
                    return Err(err(format!("node {name} declared twice")));
                }
                raw_nodes.push(RawNode {
                    name: name.to_string(),
                    kind: kind.to_string(),
                    param,
                    line: line_no,
                    table: None,
                });
            }
            "table" => {
                let name = tokens.get(1).ok_or_else(|| err("expected `table <name> ...`".into()))?;
                let entries = tokens[2..]
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad table entry `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let node = raw_nodes
                    .iter_mut()
                    .find(|n| n.name == *name)
                    .ok_or_else(|| err(format!("table for undeclared node {name}")))?;
                if node.kind != "finite" {
                    return Err(err(format!("node {name} is not finite")));
                }
                node.table = Some(entries);
            }
            "edge" => match tokens.as_slice() {
                [_, a, b] => edges.push((a.to_string(), b.to_string(), line_no)),
                _ => return Err(err("expected `edge <name1> <name2>`".into())),
            },
            "gen" => match tokens.as_slice() {
                [_, sym, node, lit] => gens.push((sym.to_string(), node.to_string(), lit.to_string(), line_no)),
                _ => return Err(err("expected `gen <symbol> <node> <element>`".into())),
            },
            "order" => {
                if order.is_some() {
                    return Err(err("more than one order line".into()));
                }
                order = Some((tokens[1..].iter().map(|s| s.to_string()).collect(), line_no));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let mut kinds: BTreeMap<String, NodeGroupKind> = BTreeMap::new();
    for n in &raw_nodes {
        let kind = match n.kind.as_str() {
            "z" => NodeGroupKind::Integers,
            "cyclic" => NodeGroupKind::Cyclic { modulus: n.param as u64 },
            "free" => NodeGroupKind::Free { rank: n.param },
            "finite" => {
                let table = n.table.clone().ok_or_else(|| Error::Parse {
                    line: n.line,
                    msg: format!("finite node {} has no table", n.name),
                })?;
                NodeGroupKind::Finite(CayleyTable::new(n.param, table)?)
            }
            _ => unreachable!(),
        };
        kinds.insert(n.name.clone(), kind);
    }

    let mut bound: Vec<(String, String, Element)> = Vec::new();
    for (sym, node, lit, line) in &gens {
        let kind = kinds.get(node).ok_or_else(|| Error::Parse {
            line: *line,
            msg: format!("generator {sym} on undeclared node {node}"),
        })?;
        let element = kind.parse_element(lit).map_err(|e| Error::Parse {
            line: *line,
            msg: e.to_string(),
        })?;
        if bound.iter().any(|(s, _, _)| s == sym) {
            return Err(Error::Parse {
                line: *line,
                msg: format!("generator {sym} declared twice"),
            });
        }
        bound.push((sym.clone(), node.clone(), element));
    }

    let symbol_order: Vec<String> = match order {
        Some((syms, line)) => {
            for s in &syms {
                if !bound.iter().any(|(b, _, _)| b == s) {
                    return Err(Error::Parse {
                        line,
                        msg: format!("order mentions unknown generator {s}"),
                    });
                }
            }
            for (b, _, _) in &bound {
                if syms.iter().filter(|s| *s == b).count() != 1 {
                    return Err(Error::InvalidOrder(format!(
                        "generator {b} must appear exactly once in the order line"
                    )));
                }
            }
            syms
        }
        None => bound.iter().map(|(s, _, _)| s.clone()).collect(),
    };

    // Node order is the order of first appearance in the generator order;
    // each node's generators must be contiguous there.
    let mut node_order: Vec<String> = Vec::new();
    for s in &symbol_order {
        let node = &bound.iter().find(|(b, _, _)| b == s).expect("checked").1;
        match node_order.iter().position(|n| n == node) {
            None => node_order.push(node.clone()),
            Some(p) if p + 1 == node_order.len() => {}
            Some(_) => {
                return Err(Error::InvalidOrder(format!(
                    "generators of node {node} are not contiguous in the order"
                )))
            }
        }
    }
    for n in &raw_nodes {
        if !node_order.contains(&n.name) {
            return Err(Error::InvalidGenerator(format!("node {} has no generators", n.name)));
        }
    }

    let mut nodes = Vec::new();
    for name in &node_order {
        let generators = symbol_order
            .iter()
            .filter_map(|s| bound.iter().find(|(b, n, _)| b == s && n == name))
            .map(|(s, _, e)| Generator {
                symbol: s.clone(),
                element: e.clone(),
            })
            .collect();
        let group = NodeGroupSpec::new(kinds[name].clone(), generators)?;
        nodes.push(Node {
            name: name.clone(),
            group,
        });
    }

    let id_of = |name: &str, line: usize| -> Result<NodeId> {
        node_order
            .iter()
            .position(|n| n == name)
            .map(NodeId)
            .ok_or_else(|| Error::Parse {
                line,
                msg: format!("edge mentions undeclared node {name}"),
            })
    };
    let mut pairs = Vec::new();
    for (a, b, line) in &edges {
        pairs.push((id_of(a, *line)?, id_of(b, *line)?));
    }
    GraphProductSpec::new(nodes, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: &str = "\
node alpha z
node beta z
node gamma z
edge alpha beta
gen a alpha 1
gen a- alpha -1
gen b beta 1
gen b- beta -1
gen c gamma 1
gen c- gamma -1
order a a- b b- c c-
";

    fn fig2() -> GraphProductSpec {
        GraphProductSpec::parse(FIG2).unwrap()
    }

    #[test]
    fn fig2_dependence_relation() {
        let g = fig2();
        let (a, b, c) = (NodeId(0), NodeId(1), NodeId(2));
        assert!(g.is_independent(a, b));
        let d = g.dependence_pairs();
        for pair in [(a, c), (b, c), (c, a), (c, b), (a, a), (b, b), (c, c)] {
            assert!(d.contains(&pair));
        }
        assert_eq!(d.len(), 7);
        for x in g.node_ids() {
            for y in g.node_ids() {
                assert_ne!(g.is_independent(x, y), g.is_dependent(x, y));
            }
        }
    }

    #[test]
    fn self_loop_rejected() {
        let text = "node alpha z\nedge alpha alpha\ngen a alpha 1\ngen a- alpha -1\n";
        assert!(matches!(GraphProductSpec::parse(text), Err(Error::InvalidIndependence(_))));
    }

    #[test]
    fn identity_generator_rejected() {
        let text = "node alpha cyclic 2\ngen a alpha 1\ngen e alpha 0\n";
        assert!(matches!(GraphProductSpec::parse(text), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn bad_table_rejected() {
        let text = "node s finite 2\ntable s 0 1 1 1\ngen x s 1\n";
        assert!(matches!(GraphProductSpec::parse(text), Err(Error::InvalidGroupTable(_))));
    }

    #[test]
    fn empty_independence_is_free_product() {
        let text = "node p cyclic 2\nnode q cyclic 3\ngen x p 1\ngen y q 1\ngen y- q 2\n";
        let g = GraphProductSpec::parse(text).unwrap();
        assert!(g.independence_pairs().is_empty());
        assert!(!g.is_finite());
    }

    #[test]
    fn node_order_follows_generator_order() {
        let text = "node p z\nnode q z\ngen x p 1\ngen x- p -1\ngen y q 1\ngen y- q -1\norder y y- x- x\n";
        let g = GraphProductSpec::parse(text).unwrap();
        assert_eq!(g.node_name(NodeId(0)), "q");
        let order: Vec<&str> = g.sigma().iter().map(|s| s.symbol.as_str()).collect();
        assert_eq!(order, ["y", "y-", "x-", "x"]);
        let interleaved = "node p z\nnode q z\ngen x p 1\ngen x- p -1\ngen y q 1\ngen y- q -1\norder x y x- y-\n";
        assert!(matches!(GraphProductSpec::parse(interleaved), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn example_graph_link() {
        // alpha-delta, alpha-beta, delta-gamma, delta-eta, gamma-eta, gamma-beta
        let mut text = String::new();
        for n in ["alpha", "beta", "gamma", "delta", "eta"] {
            text.push_str(&format!("node {n} z\ngen {n}1 {n} 1\ngen {n}1- {n} -1\n"));
        }
        for (a, b) in [("alpha", "delta"), ("alpha", "beta"), ("delta", "gamma"), ("delta", "eta"), ("gamma", "eta"), ("gamma", "beta")] {
            text.push_str(&format!("edge {a} {b}\n"));
        }
        let g = GraphProductSpec::parse(&text).unwrap();
        let beta = g.node_by_name("beta").unwrap();
        let d = g.decompose(beta).unwrap();
        let link: Vec<&str> = d.link.iter().map(|&x| d.p.node_name(x)).collect();
        assert_eq!(link, ["alpha", "gamma"]);
        let p_nodes: Vec<&str> = d.p.nodes().iter().map(|n| n.name.as_str()).collect();
        assert_eq!(p_nodes, ["alpha", "gamma", "delta", "eta"]);
    }

    #[test]
    fn fig2_decomposition_and_components() {
        let g = fig2();
        let d = g.decompose(NodeId(1)).unwrap();
        assert_eq!(d.link, vec![NodeId(0)]);
        assert_eq!(d.p.len(), 2);
        assert!(d.p.independence_pairs().is_empty());
        assert_eq!(g.connected_components(&[NodeId(0), NodeId(1), NodeId(2)]).len(), 1);
        assert_eq!(
            g.connected_components(&[NodeId(1), NodeId(0)]),
            vec![vec![NodeId(0)], vec![NodeId(1)]]
        );
        assert!(g.connected_components(&[]).is_empty());
        assert!(matches!(g.decompose(NodeId(7)), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn single_node_decomposition() {
        let g = GraphProductSpec::parse("node a z\ngen x a 1\ngen x- a -1\n").unwrap();
        let d = g.decompose(NodeId(0)).unwrap();
        assert!(d.p.is_empty());
        assert!(d.link.is_empty());
        assert_eq!(d.b, *g.group(NodeId(0)));
    }

    #[test]
    fn spec_text_round_trip() {
        let g = fig2();
        assert_eq!(GraphProductSpec::parse(&g.to_spec_text()).unwrap(), g);
    }
}
