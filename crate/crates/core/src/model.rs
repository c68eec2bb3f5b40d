//! Combinatorial Morse models on compact orientable surfaces.
//!
//! A model is a list of disk or cylinder pieces. Each piece is a rooted
//! tree: the root is the boundary circle of the piece, internal nodes are
//! critical components (a level-set component with `saddles` critical
//! points) and leaves are local extremes or the second boundary circle of a
//! cylinder. A node with symmetry order `m` has invariant children, fixed by
//! the symmetry, and orbit families, each stored once and implicitly
//! repeated `m` times.
//!
//! Level values are not modeled, only the tree order.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LeafKind {
    /// A non-degenerate local extreme.
    #[serde(rename = "nondeg")]
    NondegExtreme,
    /// A degenerate local extreme (allowed for non-Morse maps).
    #[serde(rename = "degen")]
    DegenExtreme,
    /// The second boundary circle of a cylinder piece.
    #[serde(rename = "collar")]
    RegularCollar,
}

impl LeafKind {
    pub fn is_extreme(self) -> bool {
        !matches!(self, LeafKind::RegularCollar)
    }

    pub fn label(self) -> &'static str {
        match self {
            LeafKind::NondegExtreme => "nondeg",
            LeafKind::DegenExtreme => "degen",
            LeafKind::RegularCollar => "collar",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub saddles: u64,
    pub m: u64,
    /// Euler characteristic of the critical component; `-saddles` if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(default)]
    pub invariant: Vec<Subtree>,
    #[serde(default)]
    pub orbits: Vec<Subtree>,
}

impl Node {
    pub fn chi_k(&self) -> i64 {
        self.chi.unwrap_or(-(self.saddles as i64))
    }

    pub fn has_default_chi(&self) -> bool {
        self.chi_k() == -(self.saddles as i64)
    }

    /// Number of boundary circles of a regular neighbourhood of the critical
    /// component, counting orbit copies.
    pub fn boundary_count(&self) -> u64 {
        1 + self.invariant.len() as u64 + self.m * self.orbits.len() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subtree {
    Leaf(LeafKind),
    Node(Node),
}

impl Subtree {
    pub fn leaf(kind: LeafKind) -> Self {
        Subtree::Leaf(kind)
    }

    pub fn nondeg() -> Self {
        Subtree::Leaf(LeafKind::NondegExtreme)
    }

    pub fn degen() -> Self {
        Subtree::Leaf(LeafKind::DegenExtreme)
    }

    pub fn collar() -> Self {
        Subtree::Leaf(LeafKind::RegularCollar)
    }

    pub fn node(saddles: u64, m: u64, invariant: Vec<Subtree>, orbits: Vec<Subtree>) -> Self {
        Subtree::Node(Node {
            saddles,
            m,
            chi: None,
            invariant,
            orbits,
        })
    }

    /// Counts over the tree with orbit families expanded.
    pub fn stats(&self) -> TreeStats {
        match self {
            Subtree::Leaf(k) => {
                let mut s = TreeStats::default();
                match k {
                    LeafKind::NondegExtreme => s.nondeg = 1,
                    LeafKind::DegenExtreme => s.degen = 1,
                    LeafKind::RegularCollar => s.collars = 1,
                }
                s
            }
            Subtree::Node(n) => {
                let mut s = TreeStats {
                    nodes: 1,
                    saddles: n.saddles,
                    chi_sum: n.chi_k(),
                    custom_chi: !n.has_default_chi(),
                    ..TreeStats::default()
                };
                for c in &n.invariant {
                    s.add(&c.stats(), 1);
                }
                for c in &n.orbits {
                    s.add(&c.stats(), n.m);
                }
                s
            }
        }
    }

    /// Visits every node once (orbit representatives are not repeated).
    pub fn for_each_node<'a>(&'a self, f: &mut impl FnMut(&'a Node)) {
        if let Subtree::Node(n) = self {
            f(n);
            for c in n.invariant.iter().chain(&n.orbits) {
                c.for_each_node(f);
            }
        }
    }
}

/// Expanded counts over a subtree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub nodes: u64,
    pub saddles: u64,
    pub nondeg: u64,
    pub degen: u64,
    pub collars: u64,
    pub chi_sum: i64,
    pub custom_chi: bool,
}

impl TreeStats {
    fn add(&mut self, other: &TreeStats, times: u64) {
        self.nodes += times * other.nodes;
        self.saddles += times * other.saddles;
        self.nondeg += times * other.nondeg;
        self.degen += times * other.degen;
        self.collars += times * other.collars;
        self.chi_sum += times as i64 * other.chi_sum;
        self.custom_chi |= other.custom_chi;
    }

    pub fn extremes(&self) -> u64 {
        self.nondeg + self.degen
    }

    pub fn leaves(&self) -> u64 {
        self.nondeg + self.degen + self.collars
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Disk,
    Cylinder,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub kind: PieceKind,
    pub root: Subtree,
}

impl Piece {
    pub fn disk(root: Subtree) -> Self {
        Piece {
            kind: PieceKind::Disk,
            root,
        }
    }

    pub fn cylinder(root: Subtree) -> Self {
        Piece {
            kind: PieceKind::Cylinder,
            root,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "S1")]
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Surface {
    pub genus: u32,
    pub boundary: u32,
    pub target: Target,
}

impl Surface {
    /// The sphere and the torus are outside the scope of the computation.
    pub fn is_excluded(&self) -> bool {
        self.boundary == 0 && self.genus <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceModel {
    pub surface: Surface,
    pub pieces: Vec<Piece>,
}

impl SurfaceModel {
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    fn error(path: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            path: path.to_string(),
            message: message.into(),
        }
    }

    fn warning(path: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            path: path.to_string(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev} at {}: {}", self.path, self.message)
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// Checks every structural invariant of a model. Returns an empty list iff
/// the model is valid and raises no warnings.
pub fn validate(model: &SurfaceModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let s = &model.surface;
    if s.is_excluded() {
        let name = if s.genus == 0 { "2-sphere" } else { "2-torus" };
        out.push(Diagnostic::error(
            "surface",
            format!(
                "surface excluded: genus {} without boundary is the {name}",
                s.genus
            ),
        ));
    }
    for (i, p) in model.pieces.iter().enumerate() {
        validate_piece_at(p, &format!("pieces[{i}]"), &mut out);
    }
    out
}

/// Validates a single piece.
pub fn validate_piece(p: &Piece) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    validate_piece_at(p, "piece", &mut out);
    out
}

fn validate_piece_at(p: &Piece, path: &str, out: &mut Vec<Diagnostic>) {
    validate_subtree(&p.root, &format!("{path}.root"), out);
    let stats = p.root.stats();
    let (want_collars, want_chi) = match p.kind {
        PieceKind::Disk => (0, 1),
        PieceKind::Cylinder => (1, 0),
    };
    if stats.collars != want_collars {
        out.push(Diagnostic::error(
            path,
            format!(
                "{:?} piece must have {want_collars} collar leaves, found {} (orbit copies counted)",
                p.kind, stats.collars
            )
            .to_lowercase(),
        ));
    }
    if stats.custom_chi || stats.degen > 0 {
        out.push(Diagnostic::warning(
            path,
            "euler characteristic check skipped: non-default chi or degenerate extremes",
        ));
    } else {
        let chi = stats.extremes() as i64 + stats.chi_sum;
        if chi != want_chi {
            out.push(Diagnostic::error(
                path,
                format!("euler characteristic is {chi}, expected {want_chi}"),
            ));
        }
    }
}

fn validate_subtree(t: &Subtree, path: &str, out: &mut Vec<Diagnostic>) {
    let Subtree::Node(n) = t else { return };
    let path = format!("{path}.node");
    if n.saddles == 0 {
        out.push(Diagnostic::error(&path, "saddles must be at least 1"));
    }
    if n.m == 0 {
        out.push(Diagnostic::error(&path, "m must be at least 1"));
    }
    if n.m == 1 && !n.orbits.is_empty() {
        out.push(Diagnostic::error(
            &path,
            "m = 1 requires an empty orbit list; list every child as invariant",
        ));
    }
    if n.m >= 1 && n.has_default_chi() && n.boundary_count() != n.saddles + 2 {
        out.push(Diagnostic::error(
            &path,
            format!(
                "boundary count 1 + {} + {}*{} = {} differs from saddles + 2 = {}",
                n.invariant.len(),
                n.m,
                n.orbits.len(),
                n.boundary_count(),
                n.saddles + 2
            ),
        ));
    }
    if n.m >= 2 && n.saddles % n.m != 0 {
        out.push(Diagnostic::warning(
            &path,
            format!("m = {} does not divide saddles = {}", n.m, n.saddles),
        ));
    }
    for (i, c) in n.invariant.iter().enumerate() {
        validate_subtree(c, &format!("{path}.invariant[{i}]"), out);
    }
    for (i, c) in n.orbits.iter().enumerate() {
        validate_subtree(c, &format!("{path}.orbits[{i}]"), out);
    }
}

/// Number of extremes plus the Euler characteristics of the critical
/// components, with orbit copies counted.
pub fn euler_char(p: &Piece) -> i64 {
    let s = p.root.stats();
    s.extremes() as i64 + s.chi_sum
}
