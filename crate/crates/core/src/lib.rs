//! Fundamental groups of orbits of Morse maps on surfaces, as wreath-product
//! terms, together with the group arithmetic needed to check them.
//!
//! - [`term`]: terms for the classes P and R, normalization, orders.
//! - [`syntax`]: text grammar for terms.
//! - [`element`]: element arithmetic, the quotient map, finite enumeration.
//! - [`model`]: combinatorial Morse models and their validation.
//! - [`kr`]: Kronrod-Reeb trees and root-fixing automorphism counts.
//! - [`engine`]: computing groups from models and realizing terms as models.
//! - [`gen`]: seeded random terms and models.

pub mod element;
pub mod engine;
pub mod gen;
pub mod kr;
pub mod model;
pub mod syntax;
pub mod term;

pub use element::Element;
pub use engine::{
    compute_model, compute_piece, graph_group, realize_disk, realize_surface, Report,
};
pub use kr::{aut_count_rooted, build_kr, KrGraph};
pub use model::{Piece, SurfaceModel};
pub use syntax::{parse_term, print_term, ParseError};
pub use term::{normalize, struct_eq, Order, Term, TermError};
