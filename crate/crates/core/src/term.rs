//! Algebraic terms over the atoms `1`, `Z`, `Z_m`, closed under direct
//! products and the two wreath constructions `A wr[m] Z` and `A wr Z_m`.
//!
//! Terms built only from `1`, `Z`, products and `wr[m] Z` form the class P;
//! terms built only from `1`, `Z_m`, products and `wr Z_m` form the class R.
//! A single [`Term`] type hosts both so that the quotient map between them
//! can be expressed without conversions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use thiserror::Error;

/// A group-valued algebraic term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// The trivial group.
    Unit,
    /// The infinite cyclic group.
    Z,
    /// The cyclic group of order `m`.
    Cyc(u64),
    /// Direct product of the factors, in order.
    Prod(Vec<Term>),
    /// `base wr[m] Z`, i.e. `Maps(Z_m, base) ⋊ Z`.
    WrZ(Box<Term>, u64),
    /// `base wr Z_m`, i.e. `Maps(Z_m, base) ⋊ Z_m`.
    WrZm(Box<Term>, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("cyclic order must be at least 1, got {0}")]
    BadModulus(u64),
    #[error("term `{0}` is not in class P")]
    NotInP(String),
    #[error("term `{0}` is not in class R")]
    NotInR(String),
}

/// Order of a group term: finite with an exact value, or infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    /// The order as a `u64`, if finite and small enough.
    pub fn to_u64(&self) -> Option<u64> {
        self.finite().and_then(|n| u64::try_from(n).ok())
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl Term {
    pub fn wr_z(base: Term, m: u64) -> Term {
        Term::WrZ(Box::new(base), m)
    }

    pub fn wr_zm(base: Term, m: u64) -> Term {
        Term::WrZm(Box::new(base), m)
    }

    pub fn prod(factors: impl IntoIterator<Item = Term>) -> Term {
        Term::Prod(factors.into_iter().collect())
    }

    /// `Z x Z x ... x Z` with `k` factors, in canonical form.
    pub fn free_abelian(k: usize) -> Term {
        match k {
            0 => Term::Unit,
            1 => Term::Z,
            _ => Term::Prod(vec![Term::Z; k]),
        }
    }

    /// Checks that every modulus is at least 1.
    pub fn validate(&self) -> Result<(), TermError> {
        match self {
            Term::Unit | Term::Z => Ok(()),
            Term::Cyc(m) => check_modulus(*m),
            Term::Prod(fs) => fs.iter().try_for_each(Term::validate),
            Term::WrZ(b, m) | Term::WrZm(b, m) => {
                check_modulus(*m)?;
                b.validate()
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Term::Unit)
    }

    /// True iff the term uses only `1`, `Z`, products and `wr[m] Z`.
    pub fn is_in_p(&self) -> bool {
        match self {
            Term::Unit | Term::Z => true,
            Term::Cyc(_) | Term::WrZm(..) => false,
            Term::Prod(fs) => fs.iter().all(Term::is_in_p),
            Term::WrZ(b, _) => b.is_in_p(),
        }
    }

    /// True iff the term uses only `1`, `Z_m`, products and `wr Z_m`.
    pub fn is_in_r(&self) -> bool {
        match self {
            Term::Unit | Term::Cyc(_) => true,
            Term::Z | Term::WrZ(..) => false,
            Term::Prod(fs) => fs.iter().all(Term::is_in_r),
            Term::WrZm(b, _) => b.is_in_r(),
        }
    }

    /// Whether the term is already in canonical form.
    pub fn is_canonical(&self) -> bool {
        match self {
            Term::Unit | Term::Z => true,
            Term::Cyc(m) => *m >= 2,
            Term::Prod(fs) => {
                fs.len() >= 2
                    && fs
                        .iter()
                        .all(|f| f.is_canonical() && !matches!(f, Term::Unit | Term::Prod(_)))
                    && fs
                        .windows(2)
                        .all(|w| sort_key_cmp(&w[0], &w[1]) != Ordering::Greater)
            }
            Term::WrZ(b, m) | Term::WrZm(b, m) => *m >= 2 && !b.is_unit() && b.is_canonical(),
        }
    }

    /// Number of nodes in the term tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Unit | Term::Z | Term::Cyc(_) => 1,
            Term::Prod(fs) => 1 + fs.iter().map(Term::size).sum::<usize>(),
            Term::WrZ(b, _) | Term::WrZm(b, _) => 1 + b.size(),
        }
    }

    /// Nesting depth of wreath constructors.
    pub fn wreath_depth(&self) -> usize {
        match self {
            Term::Unit | Term::Z | Term::Cyc(_) => 0,
            Term::Prod(fs) => fs.iter().map(Term::wreath_depth).max().unwrap_or(0),
            Term::WrZ(b, _) | Term::WrZm(b, _) => 1 + b.wreath_depth(),
        }
    }

    /// Count of `Z`, `Z_m` and wreath nodes.
    pub fn atom_count(&self) -> usize {
        match self {
            Term::Unit => 0,
            Term::Z | Term::Cyc(_) => 1,
            Term::Prod(fs) => fs.iter().map(Term::atom_count).sum(),
            Term::WrZ(b, _) | Term::WrZm(b, _) => 1 + b.atom_count(),
        }
    }

    /// The factors of a canonical term seen as a product: `[]` for the unit,
    /// the factor list for a product, `[self]` otherwise.
    pub fn factors(&self) -> &[Term] {
        match self {
            Term::Unit => &[],
            Term::Prod(fs) => fs,
            other => std::slice::from_ref(other),
        }
    }
}

fn check_modulus(m: u64) -> Result<(), TermError> {
    if m == 0 {
        Err(TermError::BadModulus(m))
    } else {
        Ok(())
    }
}

/// Bytewise order on the canonical serialization.
pub fn sort_key_cmp(a: &Term, b: &Term) -> Ordering {
    a.to_string().as_bytes().cmp(b.to_string().as_bytes())
}

/// Rewrites a term to canonical form.
///
/// Products are flattened, unit factors dropped and the remaining factors
/// sorted by their serialization; `1 wr[m] Z` becomes `Z`, `A wr[1] Z`
/// becomes `A x Z`, `1 wr Z_m` becomes `Z_m`, `A wr Z_1` becomes `A` and
/// `Z_1` becomes `1`.
pub fn normalize(t: &Term) -> Result<Term, TermError> {
    t.validate()?;
    Ok(normalize_valid(t))
}

pub(crate) fn normalize_valid(t: &Term) -> Term {
    match t {
        Term::Unit | Term::Z => t.clone(),
        Term::Cyc(1) => Term::Unit,
        Term::Cyc(_) => t.clone(),
        Term::Prod(fs) => make_product(fs.iter().map(normalize_valid)),
        Term::WrZ(b, m) => {
            let base = normalize_valid(b);
            if base.is_unit() {
                Term::Z
            } else if *m == 1 {
                make_product([base, Term::Z])
            } else {
                Term::wr_z(base, *m)
            }
        }
        Term::WrZm(b, m) => {
            let base = normalize_valid(b);
            if base.is_unit() {
                Term::Cyc(*m).normalized_cyc()
            } else if *m == 1 {
                base
            } else {
                Term::wr_zm(base, *m)
            }
        }
    }
}

impl Term {
    fn normalized_cyc(self) -> Term {
        match self {
            Term::Cyc(1) => Term::Unit,
            other => other,
        }
    }
}

/// Assembles a canonical product from already canonical factors.
fn make_product(factors: impl IntoIterator<Item = Term>) -> Term {
    let mut flat = Vec::new();
    for f in factors {
        match f {
            Term::Unit => {}
            Term::Prod(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    let mut keyed: Vec<(String, Term)> = flat.into_iter().map(|f| (f.to_string(), f)).collect();
    keyed.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
    let mut flat: Vec<Term> = keyed.into_iter().map(|(_, f)| f).collect();
    match flat.len() {
        0 => Term::Unit,
        1 => flat.pop().unwrap(),
        _ => Term::Prod(flat),
    }
}

/// Structural equality of canonical forms. A sufficient test for
/// isomorphism only.
pub fn struct_eq(s: &Term, t: &Term) -> bool {
    match (normalize(s), normalize(t)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// Order of the group denoted by `t`.
pub fn order_r(t: &Term) -> Order {
    match t {
        Term::Unit => Order::Finite(BigUint::one()),
        Term::Z | Term::WrZ(..) => Order::Infinite,
        Term::Cyc(m) => Order::Finite(BigUint::from(*m)),
        Term::Prod(fs) => {
            let mut acc = BigUint::one();
            for f in fs {
                match order_r(f) {
                    Order::Finite(n) => acc *= n,
                    Order::Infinite => return Order::Infinite,
                }
            }
            Order::Finite(acc)
        }
        Term::WrZm(b, m) => match order_r(b) {
            Order::Finite(n) => Order::Finite(Pow::pow(n, *m) * BigUint::from(*m)),
            Order::Infinite => Order::Infinite,
        },
    }
}

/// Upper bound on the derived length of the group denoted by `t`.
pub fn solvable_length_bound(t: &Term) -> usize {
    match t {
        Term::Unit => 0,
        Term::Z | Term::Cyc(_) => 1,
        Term::Prod(fs) => fs.iter().map(solvable_length_bound).max().unwrap_or(0),
        Term::WrZ(b, _) | Term::WrZm(b, _) => solvable_length_bound(b) + 1,
    }
}

/// Levelwise image of a P-term under `(α, n) ↦ (α, n mod m)`.
///
/// The input is NOT normalized first: `1 wr[3] Z` maps to `Z_3` even though
/// it normalizes to `Z`, which maps to `1`. The result is canonical.
pub fn graph_image(t: &Term) -> Result<Term, TermError> {
    t.validate()?;
    if !t.is_in_p() {
        return Err(TermError::NotInP(t.to_string()));
    }
    Ok(normalize_valid(&graph_image_raw(t)))
}

pub(crate) fn graph_image_raw(t: &Term) -> Term {
    match t {
        Term::Unit | Term::Z => Term::Unit,
        Term::Prod(fs) => Term::Prod(fs.iter().map(graph_image_raw).collect()),
        Term::WrZ(b, m) => Term::wr_zm(graph_image_raw(b), *m),
        Term::Cyc(_) | Term::WrZm(..) => unreachable!("graph_image_raw on non-P term"),
    }
}
