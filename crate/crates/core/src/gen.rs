//! Seeded random terms and models for property checks and the CLI's
//! randomized subcommands.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::model::{Piece, PieceKind, Subtree, Surface, SurfaceModel, Target};
use crate::term::{normalize_valid, order_r, Term};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Any well-formed term, mixing both classes, with wreath nesting at most
/// `depth`. Products have at least two factors.
pub fn any_term(rng: &mut impl Rng, depth: usize) -> Term {
    let choice = if depth == 0 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..7)
    };
    match choice {
        0 => Term::Unit,
        1 => Term::Z,
        2 => Term::Cyc(rng.gen_range(1..=7)),
        3 | 4 => {
            let k = rng.gen_range(2..=3);
            Term::Prod((0..k).map(|_| any_term(rng, depth - 1)).collect())
        }
        5 => Term::wr_z(any_term(rng, depth - 1), rng.gen_range(1..=5)),
        _ => Term::wr_zm(any_term(rng, depth - 1), rng.gen_range(1..=5)),
    }
}

/// A P-term, not normalized.
pub fn p_term(rng: &mut impl Rng, depth: usize, max_m: u64) -> Term {
    let choice = if depth == 0 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..5)
    };
    match choice {
        0 => Term::Unit,
        1 => Term::Z,
        2 => {
            let k = rng.gen_range(2..=3);
            Term::Prod((0..k).map(|_| p_term(rng, depth - 1, max_m)).collect())
        }
        _ => Term::wr_z(p_term(rng, depth - 1, max_m), rng.gen_range(1..=max_m)),
    }
}

/// A canonical P-term with wreath depth at most `depth`, moduli at most
/// `max_m` and at most `max_atoms` atoms.
pub fn canonical_p_term(rng: &mut impl Rng, depth: usize, max_m: u64, max_atoms: usize) -> Term {
    loop {
        let t = normalize_valid(&p_term(rng, depth, max_m));
        if t.wreath_depth() <= depth && t.atom_count() <= max_atoms {
            return t;
        }
    }
}

/// An R-term, not normalized, of order at most `max_order`.
pub fn r_term(rng: &mut impl Rng, depth: usize, max_m: u64, max_order: u64) -> Term {
    loop {
        let t = r_term_raw(rng, depth, max_m);
        if order_r(&t).to_u64().is_some_and(|n| n <= max_order) {
            return t;
        }
    }
}

fn r_term_raw(rng: &mut impl Rng, depth: usize, max_m: u64) -> Term {
    let choice = if depth == 0 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..5)
    };
    match choice {
        0 => Term::Unit,
        1 => Term::Cyc(rng.gen_range(1..=max_m)),
        2 => {
            let k = rng.gen_range(2..=3);
            Term::Prod((0..k).map(|_| r_term_raw(rng, depth - 1, max_m)).collect())
        }
        _ => Term::wr_zm(r_term_raw(rng, depth - 1, max_m), rng.gen_range(1..=max_m)),
    }
}

fn extreme(rng: &mut impl Rng, degen_rate: f64) -> Subtree {
    if rng.gen_bool(degen_rate) {
        Subtree::degen()
    } else {
        Subtree::nondeg()
    }
}

/// A random disk tree satisfying the planar boundary-count identity.
fn disk_tree(rng: &mut impl Rng, depth: usize, generic: bool) -> Subtree {
    if depth == 0 || rng.gen_bool(0.35) {
        return extreme(rng, 0.2);
    }
    let m: u64 = if generic {
        1
    } else {
        *[1, 1, 2, 2, 3, 4].choose(rng).unwrap()
    };
    let (n_inv, n_orb) = if m == 1 {
        (if generic { 2 } else { rng.gen_range(2..=3) }, 0)
    } else {
        (rng.gen_range(0..=2), rng.gen_range(1..=2))
    };
    let saddles = n_inv + m as usize * n_orb - 1;
    let invariant = (0..n_inv)
        .map(|_| disk_tree(rng, depth - 1, generic))
        .collect();
    let orbits = (0..n_orb)
        .map(|_| disk_tree(rng, depth - 1, generic))
        .collect();
    Subtree::node(saddles as u64, m, invariant, orbits)
}

// Replaces one leaf reachable through invariant children with a collar.
fn plant_collar(rng: &mut impl Rng, t: &mut Subtree) -> bool {
    match t {
        Subtree::Leaf(_) => {
            *t = Subtree::collar();
            true
        }
        Subtree::Node(n) => {
            let mut idx: Vec<usize> = (0..n.invariant.len()).collect();
            idx.shuffle(rng);
            idx.into_iter()
                .any(|i| plant_collar(rng, &mut n.invariant[i]))
        }
    }
}

fn kr_size(t: &Subtree) -> u64 {
    let s = t.stats();
    1 + s.nodes + s.leaves()
}

fn piece(rng: &mut impl Rng, max_vertices: u64, generic: bool) -> Piece {
    loop {
        let mut root = disk_tree(rng, 4, generic);
        let kind = if rng.gen_bool(0.3) {
            PieceKind::Cylinder
        } else {
            PieceKind::Disk
        };
        if kind == PieceKind::Cylinder && !plant_collar(rng, &mut root) {
            continue;
        }
        if kr_size(&root) <= max_vertices {
            return Piece { kind, root };
        }
    }
}

/// A valid disk or cylinder piece whose Kronrod-Reeb graph has at most
/// `max_vertices` vertices.
pub fn valid_piece(rng: &mut impl Rng, max_vertices: u64) -> Piece {
    piece(rng, max_vertices, false)
}

fn admissible_surface(rng: &mut impl Rng) -> Surface {
    loop {
        let s = Surface {
            genus: rng.gen_range(0..=3),
            boundary: rng.gen_range(0..=3),
            target: if rng.gen_bool(0.5) {
                Target::Real
            } else {
                Target::Circle
            },
        };
        if !s.is_excluded() {
            return s;
        }
    }
}

/// A model where every node has one saddle and trivial symmetry.
pub fn generic_model(rng: &mut impl Rng) -> SurfaceModel {
    let n = rng.gen_range(1..=3);
    SurfaceModel {
        surface: admissible_surface(rng),
        pieces: (0..n).map(|_| piece(rng, 64, true)).collect(),
    }
}

/// A random element of `t` with integer coordinates in `-window..=window`.
pub fn element(rng: &mut impl Rng, t: &Term, window: i64) -> Element {
    match t {
        Term::Unit => Element::Unit,
        Term::Z => Element::Int(rng.gen_range(-window..=window)),
        Term::Cyc(m) => Element::Mod(rng.gen_range(0..*m)),
        Term::Prod(fs) => Element::Tuple(fs.iter().map(|f| element(rng, f, window)).collect()),
        Term::WrZ(b, m) => Element::Wr {
            table: (0..*m).map(|_| element(rng, b, window)).collect(),
            shift: rng.gen_range(-window..=window),
        },
        Term::WrZm(b, m) => Element::Wr {
            table: (0..*m).map(|_| element(rng, b, window)).collect(),
            shift: rng.gen_range(0..*m as i64),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate, validate_piece};

    #[test]
    fn generated_pieces_validate() {
        let mut r = rng(7);
        for _ in 0..200 {
            let p = valid_piece(&mut r, 64);
            let d = validate_piece(&p);
            assert!(!crate::model::has_errors(&d), "{d:?}");
        }
        for _ in 0..50 {
            assert!(!crate::model::has_errors(&validate(&generic_model(&mut r))));
        }
    }

    #[test]
    fn generators_are_reproducible() {
        let a: Vec<Term> = (0..20)
            .map({
                let mut r = rng(3);
                move |_| any_term(&mut r, 4)
            })
            .collect();
        let b: Vec<Term> = (0..20)
            .map({
                let mut r = rng(3);
                move |_| any_term(&mut r, 4)
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_terms_respect_limits() {
        let mut r = rng(11);
        for _ in 0..100 {
            let t = canonical_p_term(&mut r, 4, 5, 12);
            assert!(t.is_canonical() && t.is_in_p());
            assert!(t.wreath_depth() <= 4 && t.atom_count() <= 12);
        }
    }
}
