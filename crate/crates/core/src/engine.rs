//! Fundamental group of the orbit of a model map, its image on the
//! Kronrod-Reeb graph, and the converse realization of any class-P term.
//!
//! For a node with invariant children `I_1..I_a`, orbit families
//! `Y_1..Y_b` and symmetry order `m`, the piece contributes
//!
//! ```text
//! π(I_1) x ... x π(I_a) x (π(Y_1) x ... x π(Y_b)) wr[m] Z
//! ```
//!
//! Non-degenerate extremes and collars contribute `1`, a degenerate extreme
//! contributes `Z`. The graph group uses the same recursion with `wr Z_m`
//! and every leaf mapped to `1`.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::model::{
    self, validate, validate_piece, Diagnostic, LeafKind, Piece, Subtree, Surface, SurfaceModel,
    Target,
};
use crate::term::{self, normalize_valid, order_r, solvable_length_bound, Order, Term, TermError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid model: {}", .0.iter().filter(|d| d.is_error()).map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("surface excluded: genus {genus} with {boundary} boundary components")]
    ExcludedSurface { genus: u32, boundary: u32 },
}

fn ensure_valid(diags: Vec<Diagnostic>) -> Result<(), EngineError> {
    if model::has_errors(&diags) {
        Err(EngineError::Invalid(diags))
    } else {
        Ok(())
    }
}

fn pi1_raw(t: &Subtree) -> Term {
    match t {
        Subtree::Leaf(LeafKind::DegenExtreme) => Term::Z,
        Subtree::Leaf(_) => Term::Unit,
        Subtree::Node(n) => {
            let mut fs: Vec<Term> = n.invariant.iter().map(pi1_raw).collect();
            fs.push(Term::wr_z(
                Term::Prod(n.orbits.iter().map(pi1_raw).collect()),
                n.m,
            ));
            Term::Prod(fs)
        }
    }
}

fn graph_raw(t: &Subtree) -> Term {
    match t {
        Subtree::Leaf(_) => Term::Unit,
        Subtree::Node(n) => {
            let mut fs: Vec<Term> = n.invariant.iter().map(graph_raw).collect();
            fs.push(Term::wr_zm(
                Term::Prod(n.orbits.iter().map(graph_raw).collect()),
                n.m,
            ));
            Term::Prod(fs)
        }
    }
}

/// The term produced by the node recursion before normalization.
/// [`term::graph_image`] of this term is the graph group of the model.
pub fn model_term_raw(model: &SurfaceModel) -> Term {
    Term::Prod(model.pieces.iter().map(|p| pi1_raw(&p.root)).collect())
}

/// `π_0` of the identity component of the stabilizer of the piece's map,
/// relative to the boundary, as a canonical P-term.
pub fn compute_piece(p: &Piece) -> Result<Term, EngineError> {
    ensure_valid(validate_piece(p))?;
    Ok(normalize_valid(&pi1_raw(&p.root)))
}

/// `π_1` of the orbit of the model map.
pub fn compute_model(model: &SurfaceModel) -> Result<Term, EngineError> {
    ensure_valid(validate(model))?;
    Ok(normalize_valid(&model_term_raw(model)))
}

/// Graph group of a single piece, as a canonical R-term.
pub fn graph_group_piece(p: &Piece) -> Result<Term, EngineError> {
    ensure_valid(validate_piece(p))?;
    Ok(normalize_valid(&graph_raw(&p.root)))
}

/// Group of Kronrod-Reeb graph automorphisms induced by isotopically
/// trivial symmetries of the model map.
pub fn graph_group(model: &SurfaceModel) -> Result<Term, EngineError> {
    ensure_valid(validate(model))?;
    Ok(normalize_valid(&Term::Prod(
        model.pieces.iter().map(|p| graph_raw(&p.root)).collect(),
    )))
}

/// A Morse disk piece whose computed group is `normalize(t)`.
///
/// The canonical term is a product of atoms `Z` and `B wr[m] Z` (m ≥ 2).
/// One atom is peeled per node, wreath atoms with the largest `m` first:
/// `B wr[m] Z` becomes a node with `m` saddles, the rest as the single
/// invariant child and `B` as the orbit family; `Z` becomes a single-saddle
/// node with a bare maximum and the rest as invariant children.
pub fn realize_disk(t: &Term) -> Result<Piece, EngineError> {
    t.validate()?;
    if !t.is_in_p() {
        return Err(TermError::NotInP(t.to_string()).into());
    }
    Ok(Piece::disk(realize_tree(&normalize_valid(t))))
}

fn realize_tree(t: &Term) -> Subtree {
    let atoms = t.factors();
    if atoms.is_empty() {
        return Subtree::nondeg();
    }
    let pick = atoms
        .iter()
        .enumerate()
        .max_by_key(|(i, a)| match a {
            Term::WrZ(_, m) => (1, *m, std::cmp::Reverse(*i)),
            _ => (0, 0, std::cmp::Reverse(*i)),
        })
        .map(|(i, _)| i)
        .unwrap();
    let mut rest: Vec<Term> = atoms.to_vec();
    let atom = rest.remove(pick);
    let rest = match rest.len() {
        0 => Term::Unit,
        1 => rest.pop().unwrap(),
        _ => Term::Prod(rest),
    };
    match atom {
        Term::WrZ(base, m) => {
            Subtree::node(m, m, vec![realize_tree(&rest)], vec![realize_tree(&base)])
        }
        Term::Z => Subtree::node(1, 1, vec![Subtree::nondeg(), realize_tree(&rest)], vec![]),
        other => unreachable!("non-atom {other} in canonical P-term"),
    }
}

/// Number of trivial disk pieces added by [`realize_surface`].
///
/// The realized disk replaces a neighbourhood of one maximum of a base
/// function whose saddles share one level. On the disk itself nothing else
/// remains; on every other admissible surface the base function keeps one
/// more extreme, modeled as a trivial disk. Fillers contribute `1`.
pub fn filler_count(genus: u32, boundary: u32) -> usize {
    if genus == 0 && boundary == 1 {
        0
    } else {
        1
    }
}

/// A model on the given surface whose computed group is `normalize(t)`.
pub fn realize_surface(
    t: &Term,
    genus: u32,
    boundary: u32,
    target: Target,
) -> Result<SurfaceModel, EngineError> {
    let surface = Surface {
        genus,
        boundary,
        target,
    };
    if surface.is_excluded() {
        return Err(EngineError::ExcludedSurface { genus, boundary });
    }
    let mut pieces = vec![realize_disk(t)?];
    pieces.extend((0..filler_count(genus, boundary)).map(|_| Piece::disk(Subtree::nondeg())));
    Ok(SurfaceModel { surface, pieces })
}

/// For a model in which every critical component has one saddle and no
/// symmetry, the rank `k` with `π_1 = Z^k`; `None` otherwise.
pub fn generic_rank(model: &SurfaceModel) -> Option<usize> {
    let mut generic = true;
    let mut nodes = 0;
    let mut degen = 0;
    for p in &model.pieces {
        p.root.for_each_node(&mut |n| {
            generic &= n.saddles == 1 && n.m == 1;
        });
        let s = p.root.stats();
        nodes += s.nodes as usize;
        degen += s.degen as usize;
    }
    generic.then_some(nodes + degen)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub pi1: String,
    pub graph_group: String,
    pub graph_order: serde_json::Value,
    pub solvable_bound: usize,
    pub generic_rank: Option<usize>,
    pub notes: Vec<String>,
}

fn order_json(o: &Order) -> serde_json::Value {
    match o {
        Order::Infinite => serde_json::Value::from("infinite"),
        Order::Finite(n) => match u64::try_from(n) {
            Ok(k) => serde_json::Value::from(k),
            Err(_) => serde_json::Value::from(n.to_string()),
        },
    }
}

pub fn report(model: &SurfaceModel) -> Result<Report, EngineError> {
    let diags = validate(model);
    ensure_valid(diags.clone())?;
    let pi1 = normalize_valid(&model_term_raw(model));
    let g = graph_group(model)?;
    let mut notes = vec![
        "pi_1 O(f) is isomorphic to pi_0 of the identity component of the stabilizer relative to the boundary".to_string(),
        "pi_2 O(f) = 0 and pi_n O(f) = pi_n M for n >= 3".to_string(),
        "pi_i O(f, X) = 0 for i >= 2".to_string(),
        "the graph group is a quotient of pi_1 O(f) and is solvable".to_string(),
    ];
    notes.extend(diags.iter().map(|d| d.to_string()));
    Ok(Report {
        pi1: pi1.to_string(),
        graph_group: g.to_string(),
        graph_order: order_json(&order_r(&g)),
        solvable_bound: solvable_length_bound(&pi1),
        generic_rank: generic_rank(model),
        notes,
    })
}

/// `|graph group|` as a `BigUint`; graph groups are always finite.
pub fn graph_order(t: &Term) -> BigUint {
    match term::order_r(t) {
        Order::Finite(n) => n,
        Order::Infinite => unreachable!("graph groups are finite R-terms"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Target;
    use crate::syntax::parse_term;
    use crate::term::struct_eq;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn fig5() -> Piece {
        Piece::disk(Subtree::node(
            3,
            3,
            vec![Subtree::nondeg()],
            vec![Subtree::nondeg()],
        ))
    }

    fn two_maxima() -> Piece {
        Piece::disk(Subtree::node(
            1,
            1,
            vec![Subtree::nondeg(), Subtree::nondeg()],
            vec![],
        ))
    }

    fn on_disk(pieces: Vec<Piece>) -> SurfaceModel {
        SurfaceModel {
            surface: Surface {
                genus: 0,
                boundary: 1,
                target: Target::Real,
            },
            pieces,
        }
    }

    #[test]
    fn compute_piece_examples() {
        assert_eq!(
            compute_piece(&Piece::disk(Subtree::nondeg())).unwrap(),
            Term::Unit
        );
        assert_eq!(
            compute_piece(&Piece::disk(Subtree::degen())).unwrap(),
            Term::Z
        );
        assert_eq!(compute_piece(&fig5()).unwrap(), Term::Z);
        let fig5_degen = Piece::disk(Subtree::node(
            3,
            3,
            vec![Subtree::nondeg()],
            vec![Subtree::degen()],
        ));
        assert_eq!(compute_piece(&fig5_degen).unwrap(), p("Z wr[3] Z"));
        assert_eq!(compute_piece(&two_maxima()).unwrap(), Term::Z);
        assert_eq!(
            compute_piece(&Piece::cylinder(Subtree::collar())).unwrap(),
            Term::Unit
        );
    }

    #[test]
    fn invalid_piece_rejected() {
        let bad = Piece::disk(Subtree::node(5, 1, vec![Subtree::nondeg()], vec![]));
        assert!(matches!(compute_piece(&bad), Err(EngineError::Invalid(_))));
    }

    #[test]
    fn compute_model_examples() {
        let m = on_disk(vec![fig5(), Piece::disk(Subtree::nondeg())]);
        assert_eq!(compute_model(&m).unwrap(), Term::Z);
        assert_eq!(compute_model(&on_disk(vec![])).unwrap(), Term::Unit);
        let m = on_disk(vec![
            Piece::disk(Subtree::degen()),
            Piece::disk(Subtree::degen()),
        ]);
        assert_eq!(compute_model(&m).unwrap(), p("Z x Z"));
    }

    #[test]
    fn graph_group_examples() {
        let generic = on_disk(vec![two_maxima(), Piece::disk(Subtree::degen())]);
        assert_eq!(graph_group(&generic).unwrap(), Term::Unit);
        assert_eq!(graph_group(&on_disk(vec![fig5()])).unwrap(), Term::Cyc(3));
        let degen = on_disk(vec![Piece::disk(Subtree::degen())]);
        assert_eq!(graph_group(&degen).unwrap(), Term::Unit);
    }

    #[test]
    fn graph_group_is_image_of_raw_term() {
        let m = on_disk(vec![fig5(), two_maxima()]);
        assert_eq!(
            graph_group(&m).unwrap(),
            term::graph_image(&model_term_raw(&m)).unwrap()
        );
    }

    #[test]
    fn realize_disk_examples() {
        assert_eq!(
            realize_disk(&Term::Unit).unwrap(),
            Piece::disk(Subtree::nondeg())
        );
        assert_eq!(realize_disk(&Term::Z).unwrap(), two_maxima());
        let r = realize_disk(&p("Z wr[3] Z")).unwrap();
        assert_eq!(
            r,
            Piece::disk(Subtree::node(
                3,
                3,
                vec![Subtree::nondeg()],
                vec![two_maxima().root]
            ))
        );
        assert_eq!(compute_piece(&r).unwrap(), p("Z wr[3] Z"));
        assert!(realize_disk(&Term::Cyc(2)).is_err());
    }

    #[test]
    fn realize_peels_largest_modulus_first() {
        let t = p("Z x (Z wr[2] Z) x (Z wr[5] Z)");
        let Subtree::Node(n) = realize_disk(&t).unwrap().root else {
            panic!("expected node")
        };
        assert_eq!(n.m, 5);
        assert!(struct_eq(
            &compute_piece(&realize_disk(&t).unwrap()).unwrap(),
            &t
        ));
    }

    #[test]
    fn realize_surface_examples() {
        let m = realize_surface(&Term::Z, 2, 0, Target::Real).unwrap();
        assert_eq!(m.pieces.len(), 2);
        assert_eq!(compute_model(&m).unwrap(), Term::Z);

        let m = realize_surface(&Term::Unit, 0, 1, Target::Real).unwrap();
        assert_eq!(m.pieces, vec![Piece::disk(Subtree::nondeg())]);
        assert_eq!(compute_model(&m).unwrap(), Term::Unit);

        let t = p("(Z wr[2] Z) x Z");
        let m = realize_surface(&t, 0, 2, Target::Circle).unwrap();
        assert!(struct_eq(&compute_model(&m).unwrap(), &t));
        assert!(validate(&m).is_empty());

        assert!(matches!(
            realize_surface(&Term::Z, 1, 0, Target::Real),
            Err(EngineError::ExcludedSurface { .. })
        ));
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(&on_disk(vec![two_maxima()])), Some(1));
        assert_eq!(generic_rank(&on_disk(vec![fig5()])), None);
        // Three generic saddles in a chain ending in a degenerate extreme.
        let chain = Subtree::node(
            1,
            1,
            vec![
                Subtree::nondeg(),
                Subtree::node(
                    1,
                    1,
                    vec![
                        Subtree::nondeg(),
                        Subtree::node(1, 1, vec![Subtree::nondeg(), Subtree::degen()], vec![]),
                    ],
                    vec![],
                ),
            ],
            vec![],
        );
        let m = on_disk(vec![Piece::disk(chain)]);
        assert_eq!(generic_rank(&m), Some(4));
        assert_eq!(compute_model(&m).unwrap(), Term::free_abelian(4));
    }

    #[test]
    fn report_examples() {
        let r = report(&on_disk(vec![fig5()])).unwrap();
        assert_eq!(r.pi1, "Z");
        assert_eq!(r.graph_group, "Z_3");
        assert_eq!(r.graph_order, serde_json::json!(3));
        assert_eq!(r.solvable_bound, 1);
        assert_eq!(r.generic_rank, None);

        let r = report(&on_disk(vec![Piece::disk(Subtree::nondeg())])).unwrap();
        assert_eq!((r.pi1.as_str(), r.graph_group.as_str()), ("1", "1"));
        assert_eq!(r.graph_order, serde_json::json!(1));

        let r = report(&on_disk(vec![Piece::disk(Subtree::degen())])).unwrap();
        assert_eq!((r.pi1.as_str(), r.graph_group.as_str()), ("Z", "1"));
    }
}
