//! Kronrod-Reeb graphs of model pieces and their root-fixing automorphisms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::model::{Piece, Subtree};

/// Largest tree accepted by [`aut_count_rooted`].
pub const MAX_AUT_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KrError {
    #[error("graph has {0} vertices, above the limit of {MAX_AUT_VERTICES}")]
    TooLarge(usize),
}

/// A rooted tree with labelled vertices numbered in pre-order; vertex 0 is
/// the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrGraph {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

impl KrGraph {
    fn with_root(label: &str) -> Self {
        KrGraph {
            parent: vec![None],
            children: vec![Vec::new()],
            labels: vec![label.to_string()],
        }
    }

    fn push(&mut self, parent: usize, label: String) -> usize {
        let v = self.labels.len();
        self.parent.push(Some(parent));
        self.children.push(Vec::new());
        self.labels.push(label);
        self.children[parent].push(v);
        v
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// Edges as `(parent, child)` pairs in child order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
    }

    /// Graphviz rendering with pre-order vertex numbers.
    pub fn to_dot(&self) -> String {
        self.to_dot_named("kr")
    }

    pub fn to_dot_named(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for (v, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for (p, c) in self.edges() {
            let _ = writeln!(s, "  {p} -> {c};");
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the Kronrod-Reeb tree of a piece, expanding each orbit family into
/// its `m` copies.
///
/// Vertex labels record the vertex kind and, below the root, whether the
/// vertex is an invariant child (`inv`) or an orbit copy (`orb`) of its
/// parent. Orbit copies share a level; invariant children do not, so only
/// equally labelled subtrees may be exchanged.
pub fn build_kr(p: &Piece) -> KrGraph {
    let mut g = KrGraph::with_root("root");
    add_subtree(&mut g, 0, &p.root, "inv");
    g
}

fn add_subtree(g: &mut KrGraph, parent: usize, t: &Subtree, role: &str) {
    match t {
        Subtree::Leaf(k) => {
            g.push(parent, format!("{role}:{}", k.label()));
        }
        Subtree::Node(n) => {
            let v = g.push(
                parent,
                format!("{role}:node(V={},chi={})", n.saddles, n.chi_k()),
            );
            for c in &n.invariant {
                add_subtree(g, v, c, "inv");
            }
            for _ in 0..n.m {
                for c in &n.orbits {
                    add_subtree(g, v, c, "orb");
                }
            }
        }
    }
}

/// Number of automorphisms of the rooted labelled tree that fix the root.
///
/// Subtrees are classified bottom-up by canonical codes; at each vertex the
/// count multiplies the children's counts by `k!` for every class of `k`
/// identical children.
pub fn aut_count_rooted(g: &KrGraph) -> Result<BigUint, KrError> {
    let n = g.vertex_count();
    if n > MAX_AUT_VERTICES {
        return Err(KrError::TooLarge(n));
    }
    let mut code: Vec<usize> = vec![0; n];
    let mut aut: Vec<BigUint> = vec![BigUint::one(); n];
    let mut classes: BTreeMap<(String, Vec<usize>), usize> = BTreeMap::new();
    // Pre-order numbering puts every child after its parent.
    for v in (0..n).rev() {
        let mut kids: Vec<usize> = g.children(v).iter().map(|&c| code[c]).collect();
        kids.sort_unstable();
        let mut count = BigUint::one();
        for &c in g.children(v) {
            count *= &aut[c];
        }
        let mut i = 0;
        while i < kids.len() {
            let j = kids[i..].iter().take_while(|&&k| k == kids[i]).count();
            count *= factorial(j);
            i += j;
        }
        aut[v] = count;
        let next = classes.len();
        code[v] = *classes.entry((g.labels[v].clone(), kids)).or_insert(next);
    }
    Ok(aut.swap_remove(0))
}

fn factorial(k: usize) -> BigUint {
    (2..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}
