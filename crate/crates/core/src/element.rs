//! Concrete group elements for any [`Term`].
//!
//! A wreath element is a pair `(table, shift)` where `table: Z_m -> A` and
//! the product is
//!
//! ```text
//! (α, a)(β, b) = (γ, a + b),    γ(i) = α(i + b) · β(i)
//! ```
//!
//! with indices taken mod `m`. For `A wr Z_m` the shift is also reduced
//! mod `m`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::term::{self, order_r, Order, Term, TermError};

/// Default cap on the order of groups that are enumerated.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Unit,
    Int(i64),
    Mod(u64),
    Tuple(Vec<Element>),
    Wr { table: Vec<Element>, shift: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("element `{element}` does not match term `{term}`")]
    ShapeMismatch { term: String, element: String },
    #[error("term `{0}` has infinite order")]
    Infinite(String),
    #[error("term `{term}` has order {order}, above the enumeration bound {bound}")]
    OverBound {
        term: String,
        order: String,
        bound: u64,
    },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("element syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

fn mismatch(t: &Term, x: &Element) -> ElementError {
    ElementError::ShapeMismatch {
        term: t.to_string(),
        element: x.to_string(),
    }
}

/// Checks that `x` has the shape of `t`, with residues reduced.
pub fn check(t: &Term, x: &Element) -> Result<(), ElementError> {
    let ok = match (t, x) {
        (Term::Unit, Element::Unit) | (Term::Z, Element::Int(_)) => true,
        (Term::Cyc(m), Element::Mod(k)) => k < m,
        (Term::Prod(fs), Element::Tuple(es)) if fs.len() == es.len() => {
            for (f, e) in fs.iter().zip(es) {
                check(f, e)?;
            }
            true
        }
        (Term::WrZ(b, m), Element::Wr { table, .. }) if table.len() as u64 == *m => {
            table.iter().try_for_each(|e| check(b, e))?;
            true
        }
        (Term::WrZm(b, m), Element::Wr { table, shift }) if table.len() as u64 == *m => {
            table.iter().try_for_each(|e| check(b, e))?;
            *shift >= 0 && (*shift as u64) < *m
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(mismatch(t, x))
    }
}

/// The neutral element `(ε, 0)` at every level.
pub fn identity(t: &Term) -> Element {
    match t {
        Term::Unit => Element::Unit,
        Term::Z => Element::Int(0),
        Term::Cyc(_) => Element::Mod(0),
        Term::Prod(fs) => Element::Tuple(fs.iter().map(identity).collect()),
        Term::WrZ(b, m) | Term::WrZm(b, m) => Element::Wr {
            table: vec![identity(b); *m as usize],
            shift: 0,
        },
    }
}

pub fn multiply(t: &Term, x: &Element, y: &Element) -> Result<Element, ElementError> {
    check(t, x)?;
    check(t, y)?;
    Ok(mul(t, x, y))
}

pub fn inverse(t: &Term, x: &Element) -> Result<Element, ElementError> {
    check(t, x)?;
    Ok(inv(t, x))
}

/// `x^k` for any integer `k`.
pub fn power(t: &Term, x: &Element, k: i64) -> Result<Element, ElementError> {
    check(t, x)?;
    let base = if k < 0 { inv(t, x) } else { x.clone() };
    let mut acc = identity(t);
    let mut sq = base;
    let mut n = k.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc = mul(t, &acc, &sq);
        }
        sq = mul(t, &sq, &sq);
        n >>= 1;
    }
    Ok(acc)
}

/// `x⁻¹ y⁻¹ x y`.
pub fn commutator(t: &Term, x: &Element, y: &Element) -> Result<Element, ElementError> {
    check(t, x)?;
    check(t, y)?;
    Ok(comm(t, x, y))
}

fn comm(t: &Term, x: &Element, y: &Element) -> Element {
    let xi = inv(t, x);
    let yi = inv(t, y);
    mul(t, &mul(t, &xi, &yi), &mul(t, x, y))
}

// Shape-checked callers only.
pub(crate) fn mul(t: &Term, x: &Element, y: &Element) -> Element {
    match (t, x, y) {
        (Term::Unit, _, _) => Element::Unit,
        (Term::Z, Element::Int(a), Element::Int(b)) => Element::Int(a + b),
        (Term::Cyc(m), Element::Mod(a), Element::Mod(b)) => Element::Mod((a + b) % m),
        (Term::Prod(fs), Element::Tuple(xs), Element::Tuple(ys)) => Element::Tuple(
            fs.iter()
                .zip(xs.iter().zip(ys))
                .map(|(f, (a, b))| mul(f, a, b))
                .collect(),
        ),
        (
            Term::WrZ(base, m) | Term::WrZm(base, m),
            Element::Wr {
                table: alpha,
                shift: a,
            },
            Element::Wr {
                table: beta,
                shift: b,
            },
        ) => {
            let m = *m as i64;
            let gamma = (0..m)
                .map(|i| {
                    let j = (i + b).rem_euclid(m) as usize;
                    mul(base, &alpha[j], &beta[i as usize])
                })
                .collect();
            let shift = match t {
                Term::WrZm(..) => (a + b).rem_euclid(m),
                _ => a + b,
            };
            Element::Wr {
                table: gamma,
                shift,
            }
        }
        _ => unreachable!("mul on unchecked element"),
    }
}

// (α, a)⁻¹ = (β, -a) with β(i) = α(i - a)⁻¹.
pub(crate) fn inv(t: &Term, x: &Element) -> Element {
    match (t, x) {
        (Term::Unit, _) => Element::Unit,
        (Term::Z, Element::Int(a)) => Element::Int(-a),
        (Term::Cyc(m), Element::Mod(a)) => Element::Mod((m - a) % m),
        (Term::Prod(fs), Element::Tuple(xs)) => {
            Element::Tuple(fs.iter().zip(xs).map(|(f, a)| inv(f, a)).collect())
        }
        (Term::WrZ(base, m) | Term::WrZm(base, m), Element::Wr { table, shift }) => {
            let m = *m as i64;
            let beta = (0..m)
                .map(|i| inv(base, &table[(i - shift).rem_euclid(m) as usize]))
                .collect();
            let shift = match t {
                Term::WrZm(..) => (-shift).rem_euclid(m),
                _ => -shift,
            };
            Element::Wr { table: beta, shift }
        }
        _ => unreachable!("inv on unchecked element"),
    }
}

/// Carries an element along [`term::normalize`], returning the canonical
/// term and the corresponding element. The map is a group isomorphism.
pub fn normalize_element(t: &Term, x: &Element) -> Result<(Term, Element), ElementError> {
    t.validate()?;
    check(t, x)?;
    Ok(norm_elem(t, x))
}

fn norm_elem(t: &Term, x: &Element) -> (Term, Element) {
    match (t, x) {
        (Term::Cyc(1), _) => (Term::Unit, Element::Unit),
        (Term::Unit | Term::Z | Term::Cyc(_), _) => (t.clone(), x.clone()),
        (Term::Prod(fs), Element::Tuple(xs)) => {
            product_elem(fs.iter().zip(xs).map(|(f, e)| norm_elem(f, e)))
        }
        (Term::WrZ(b, m), Element::Wr { table, shift }) => {
            let parts: Vec<(Term, Element)> = table.iter().map(|e| norm_elem(b, e)).collect();
            let base = parts[0].0.clone();
            if base.is_unit() {
                (Term::Z, Element::Int(*shift))
            } else if *m == 1 {
                let a = parts.into_iter().next().unwrap();
                product_elem([a, (Term::Z, Element::Int(*shift))])
            } else {
                (
                    Term::wr_z(base, *m),
                    Element::Wr {
                        table: parts.into_iter().map(|(_, e)| e).collect(),
                        shift: *shift,
                    },
                )
            }
        }
        (Term::WrZm(b, m), Element::Wr { table, shift }) => {
            let parts: Vec<(Term, Element)> = table.iter().map(|e| norm_elem(b, e)).collect();
            let base = parts[0].0.clone();
            if base.is_unit() {
                if *m == 1 {
                    (Term::Unit, Element::Unit)
                } else {
                    (Term::Cyc(*m), Element::Mod(*shift as u64))
                }
            } else if *m == 1 {
                parts.into_iter().next().unwrap()
            } else {
                (
                    Term::wr_zm(base, *m),
                    Element::Wr {
                        table: parts.into_iter().map(|(_, e)| e).collect(),
                        shift: *shift,
                    },
                )
            }
        }
        _ => unreachable!("norm_elem on unchecked element"),
    }
}

// Mirrors the product assembly in `term::normalize`, permuting the tuple
// entries along with their factors.
fn product_elem(parts: impl IntoIterator<Item = (Term, Element)>) -> (Term, Element) {
    let mut flat = Vec::new();
    for (t, e) in parts {
        match (t, e) {
            (Term::Unit, _) => {}
            (Term::Prod(fs), Element::Tuple(es)) => flat.extend(fs.into_iter().zip(es)),
            other => flat.push(other),
        }
    }
    let mut keyed: Vec<(String, (Term, Element))> =
        flat.into_iter().map(|p| (p.0.to_string(), p)).collect();
    keyed.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
    let mut flat: Vec<(Term, Element)> = keyed.into_iter().map(|(_, p)| p).collect();
    match flat.len() {
        0 => (Term::Unit, Element::Unit),
        1 => flat.pop().unwrap(),
        _ => {
            let (ts, es) = flat.into_iter().unzip();
            (Term::Prod(ts), Element::Tuple(es))
        }
    }
}

/// The quotient map applied at every `wr[m] Z` level: `(α, n) ↦ (α, n mod m)`
/// and `Z ↦ 1`. Returns the target term (equal to `graph_image(t)`) and the
/// image of `x`.
pub fn full_q(t: &Term, x: &Element) -> Result<(Term, Element), ElementError> {
    t.validate()?;
    if !t.is_in_p() {
        return Err(TermError::NotInP(t.to_string()).into());
    }
    check(t, x)?;
    let raw_target = term::graph_image_raw(t);
    let raw = q_raw(t, x);
    Ok(norm_elem(&raw_target, &raw))
}

fn q_raw(t: &Term, x: &Element) -> Element {
    match (t, x) {
        (Term::Unit | Term::Z, _) => Element::Unit,
        (Term::Prod(fs), Element::Tuple(xs)) => {
            Element::Tuple(fs.iter().zip(xs).map(|(f, e)| q_raw(f, e)).collect())
        }
        (Term::WrZ(b, m), Element::Wr { table, shift }) => Element::Wr {
            table: table.iter().map(|e| q_raw(b, e)).collect(),
            shift: shift.rem_euclid(*m as i64),
        },
        _ => unreachable!("q_raw on non-P term"),
    }
}

fn bounded_order(t: &Term, bound: u64) -> Result<u64, ElementError> {
    match order_r(t) {
        Order::Infinite => Err(ElementError::Infinite(t.to_string())),
        Order::Finite(n) => match u64::try_from(&n) {
            Ok(k) if k <= bound => Ok(k),
            _ => Err(ElementError::OverBound {
                term: t.to_string(),
                order: n.to_string(),
                bound,
            }),
        },
    }
}

/// All elements of a finite term, in a fixed lexicographic order.
pub fn enumerate(t: &Term, bound: u64) -> Result<Vec<Element>, ElementError> {
    t.validate()?;
    bounded_order(t, bound)?;
    Ok(enum_all(t))
}

fn enum_all(t: &Term) -> Vec<Element> {
    match t {
        Term::Unit => vec![Element::Unit],
        Term::Cyc(m) => (0..*m).map(Element::Mod).collect(),
        Term::Prod(fs) => cartesian(fs.iter().map(enum_all).collect())
            .into_iter()
            .map(Element::Tuple)
            .collect(),
        Term::WrZm(b, m) => {
            let base = enum_all(b);
            let tables = cartesian(vec![base; *m as usize]);
            let mut out = Vec::with_capacity(tables.len() * *m as usize);
            for table in tables {
                for s in 0..*m as i64 {
                    out.push(Element::Wr {
                        table: table.clone(),
                        shift: s,
                    });
                }
            }
            out
        }
        Term::Z | Term::WrZ(..) => unreachable!("enum_all on infinite term"),
    }
}

fn cartesian(lists: Vec<Vec<Element>>) -> Vec<Vec<Element>> {
    let mut acc: Vec<Vec<Element>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for prefix in &acc {
            for e in &list {
                let mut v = prefix.clone();
                v.push(e.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Elements of a P-term whose `Z` coordinates are 0 and whose wreath shifts
/// lie in `0..m`. The quotient map sends this set bijectively onto the
/// quotient of the unnormalized term, so its image exhausts `graph_image(t)`.
pub fn quotient_transversal(t: &Term, bound: u64) -> Result<Vec<Element>, ElementError> {
    t.validate()?;
    if !t.is_in_p() {
        return Err(TermError::NotInP(t.to_string()).into());
    }
    bounded_order(&term::graph_image_raw(t), bound)?;
    Ok(transversal(t))
}

fn transversal(t: &Term) -> Vec<Element> {
    match t {
        Term::Unit => vec![Element::Unit],
        Term::Z => vec![Element::Int(0)],
        Term::Prod(fs) => cartesian(fs.iter().map(transversal).collect())
            .into_iter()
            .map(Element::Tuple)
            .collect(),
        Term::WrZ(b, m) => {
            let tables = cartesian(vec![transversal(b); *m as usize]);
            let mut out = Vec::new();
            for table in tables {
                for s in 0..*m as i64 {
                    out.push(Element::Wr {
                        table: table.clone(),
                        shift: s,
                    });
                }
            }
            out
        }
        Term::Cyc(_) | Term::WrZm(..) => unreachable!("transversal on non-P term"),
    }
}

/// Subgroup generated by `gens`, as a set.
fn closure(t: &Term, gens: &[Element]) -> HashSet<Element> {
    let id = identity(t);
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(t, &x, g);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    seen
}

/// A small generating set for the group with the given elements.
fn generators(t: &Term, elements: &[Element]) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut span = closure(t, &gens);
    for x in elements {
        if !span.contains(x) {
            gens.push(x.clone());
            span = closure(t, &gens);
            if span.len() == elements.len() {
                break;
            }
        }
    }
    gens
}

/// Derived subgroup of `⟨gens⟩`: the normal closure of the commutators of
/// the generators. Returns generators of the derived subgroup and its
/// element set.
fn derived_subgroup(t: &Term, gens: &[Element]) -> (Vec<Element>, HashSet<Element>) {
    let id = identity(t);
    let mut ngens: Vec<Element> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = comm(t, a, b);
            if c != id && !ngens.contains(&c) {
                ngens.push(c);
            }
        }
    }
    let mut sub = closure(t, &ngens);
    loop {
        let mut added = false;
        let mut i = 0;
        while i < ngens.len() {
            for s in gens {
                let c = mul(t, &mul(t, &inv(t, s), &ngens[i]), s);
                if !sub.contains(&c) {
                    ngens.push(c);
                    sub = closure(t, &ngens);
                    added = true;
                }
            }
            i += 1;
        }
        if !added {
            break;
        }
    }
    (ngens, sub)
}

/// Orders of `G ⊇ G' ⊇ G'' ⊇ ...`, stopping at the trivial group or when the
/// series stabilizes.
pub fn derived_series(t: &Term, bound: u64) -> Result<Vec<u64>, ElementError> {
    let all = enumerate(t, bound)?;
    let mut orders = vec![all.len() as u64];
    let mut gens = generators(t, &all);
    while *orders.last().unwrap() > 1 {
        let (next, sub) = derived_subgroup(t, &gens);
        let n = sub.len() as u64;
        if n == *orders.last().unwrap() {
            break;
        }
        orders.push(n);
        gens = next;
    }
    Ok(orders)
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Unit => f.write_str("u"),
            Element::Int(n) => write!(f, "{n}"),
            Element::Mod(k) => write!(f, "{k}"),
            Element::Tuple(es) => {
                f.write_str("<")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(">")
            }
            Element::Wr { table, shift } => {
                f.write_str("([")?;
                for (i, e) in table.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "];{shift})")
            }
        }
    }
}

/// Parses an element literal against its term: integers for `Z` and `Z_m`
/// (reduced mod `m`), `u` for the unit group, `<a,b,...>` for products and
/// `([a,b,...];s)` for wreath levels.
pub fn parse_element(t: &Term, src: &str) -> Result<Element, ElementError> {
    t.validate()?;
    let mut p = ElemParser {
        src: src.as_bytes(),
        pos: 0,
    };
    let x = p.element(t)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    check(t, &x)?;
    Ok(x)
}

struct ElemParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ElemParser<'_> {
    fn err(&self, message: &str) -> ElementError {
        ElementError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<(), ElementError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64, ElementError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ElementError::Syntax {
                offset: start,
                message: "expected integer".into(),
            })
    }

    fn list(&mut self, base: &Term, close: u8, len: usize) -> Result<Vec<Element>, ElementError> {
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            if i > 0 {
                self.eat(b',')?;
            }
            out.push(self.element(base)?);
        }
        self.eat(close)?;
        Ok(out)
    }

    fn element(&mut self, t: &Term) -> Result<Element, ElementError> {
        match t {
            Term::Unit => {
                self.eat(b'u')?;
                Ok(Element::Unit)
            }
            Term::Z => Ok(Element::Int(self.int()?)),
            Term::Cyc(m) => Ok(Element::Mod(self.int()?.rem_euclid(*m as i64) as u64)),
            Term::Prod(fs) => {
                self.eat(b'<')?;
                let mut out = Vec::with_capacity(fs.len());
                for (i, f) in fs.iter().enumerate() {
                    if i > 0 {
                        self.eat(b',')?;
                    }
                    out.push(self.element(f)?);
                }
                self.eat(b'>')?;
                Ok(Element::Tuple(out))
            }
            Term::WrZ(b, m) | Term::WrZm(b, m) => {
                self.eat(b'(')?;
                self.eat(b'[')?;
                let table = self.list(b, b']', *m as usize)?;
                self.eat(b';')?;
                let mut shift = self.int()?;
                self.eat(b')')?;
                if matches!(t, Term::WrZm(..)) {
                    shift = shift.rem_euclid(*m as i64);
                }
                Ok(Element::Wr { table, shift })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn e(t: &Term, s: &str) -> Element {
        parse_element(t, s).unwrap()
    }

    #[test]
    fn identity_examples() {
        assert_eq!(identity(&Term::Z), Element::Int(0));
        assert_eq!(identity(&p("Z_3 wr Z_2")).to_string(), "([0,0];0)");
        assert_eq!(identity(&p("Z x Z_2")).to_string(), "<0,0>");
    }

    #[test]
    fn multiply_examples() {
        let t = p("Z_3 wr Z_2");
        let r = multiply(&t, &e(&t, "([1,2];1)"), &e(&t, "([2,0];1)")).unwrap();
        assert_eq!(r, e(&t, "([1,1];0)"));

        let t = p("Z wr[2] Z");
        let r = multiply(&t, &e(&t, "([3,-1];2)"), &e(&t, "([0,5];-1)")).unwrap();
        assert_eq!(r, e(&t, "([-1,8];1)"));
    }

    #[test]
    fn inverse_examples() {
        let t = p("Z_3 wr Z_2");
        let x = e(&t, "([1,2];1)");
        assert_eq!(inverse(&t, &x).unwrap(), x);
        assert_eq!(
            inverse(&Term::Z, &Element::Int(7)).unwrap(),
            Element::Int(-7)
        );
        for s in ["Z_2 wr Z_3", "Z wr[3] Z x Z_4", "1"] {
            let t = p(s);
            assert_eq!(inverse(&t, &identity(&t)).unwrap(), identity(&t));
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let t = p("Z_3 wr Z_2");
        let bad = Element::Wr {
            table: vec![Element::Mod(0)],
            shift: 0,
        };
        assert!(multiply(&t, &bad, &identity(&t)).is_err());
        assert!(inverse(&Term::Z, &Element::Mod(0)).is_err());
        assert!(check(&Term::Cyc(3), &Element::Mod(3)).is_err());
        let unreduced = Element::Wr {
            table: vec![Element::Mod(0); 2],
            shift: 2,
        };
        assert!(check(&t, &unreduced).is_err());
    }

    #[test]
    fn power_matches_repeated_product() {
        let t = p("Z_2 wr Z_3");
        let x = e(&t, "([1,0,1];1)");
        let mut acc = identity(&t);
        for k in 0..7 {
            assert_eq!(power(&t, &x, k).unwrap(), acc);
            acc = mul(&t, &acc, &x);
        }
        let xi = inverse(&t, &x).unwrap();
        assert_eq!(power(&t, &x, -2).unwrap(), mul(&t, &xi, &xi));
    }

    #[test]
    fn full_q_examples() {
        let t = p("1 wr[3] Z");
        let (target, img) = full_q(&t, &e(&t, "([u,u,u];7)")).unwrap();
        assert_eq!(target, Term::Cyc(3));
        assert_eq!(img, Element::Mod(1));

        let (target, img) = full_q(&Term::Z, &Element::Int(5)).unwrap();
        assert_eq!(target, Term::Unit);
        assert_eq!(img, Element::Unit);

        assert!(full_q(&Term::Cyc(2), &Element::Mod(1)).is_err());
    }

    #[test]
    fn full_q_homomorphism_on_window() {
        // Every pair with shifts in -4..=4 and table entries in -2..=2.
        let t = p("Z wr[2] Z");
        let mut xs = Vec::new();
        for s in -4..=4 {
            for a in -2..=2 {
                for b in -2..=2 {
                    xs.push(Element::Wr {
                        table: vec![Element::Int(a), Element::Int(b)],
                        shift: s,
                    });
                }
            }
        }
        let target = term::graph_image(&t).unwrap();
        for x in &xs {
            for y in &xs {
                let (_, qxy) = full_q(&t, &mul(&t, x, y)).unwrap();
                let (_, qx) = full_q(&t, x).unwrap();
                let (_, qy) = full_q(&t, y).unwrap();
                assert_eq!(qxy, mul(&target, &qx, &qy));
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(&Term::Cyc(4), 100).unwrap().len(), 4);
        assert_eq!(enumerate(&p("Z_2 wr Z_2"), 100).unwrap().len(), 8);
        assert_eq!(enumerate(&p("Z_2 wr Z_3"), 100).unwrap().len(), 24);
        assert!(matches!(
            enumerate(&Term::Z, 100),
            Err(ElementError::Infinite(_))
        ));
        assert!(matches!(
            enumerate(&p("Z_2 wr Z_3"), 10),
            Err(ElementError::OverBound { .. })
        ));
    }

    #[test]
    fn derived_series_examples() {
        assert_eq!(derived_series(&Term::Cyc(6), 100).unwrap(), vec![6, 1]);
        assert_eq!(derived_series(&Term::Unit, 100).unwrap(), vec![1]);
        assert_eq!(
            derived_series(&p("Z_2 wr Z_3"), 100).unwrap(),
            vec![24, 4, 1]
        );
        assert!(derived_series(&Term::Z, 100).is_err());
    }

    #[test]
    fn element_literals() {
        let t = p("(Z wr[2] Z) x Z_3 x 1");
        let x = e(&t, "< ([4,-2];-3) , 5 , u >");
        assert_eq!(x.to_string(), "<([4,-2];-3),2,u>");
        assert_eq!(parse_element(&t, &x.to_string()).unwrap(), x);
        assert!(parse_element(&t, "<([4];1),0,u>").is_err());
        assert!(parse_element(&t, "<([4,1];1),0,u> x").is_err());
    }

    #[test]
    fn normalize_element_tracks_term_normalization() {
        let t = p("(Z_3 x 1) wr Z_1 x Z wr[1] Z");
        let x = e(&t, "<([<2,u>];0),([-4];9)>");
        let (nt, nx) = normalize_element(&t, &x).unwrap();
        assert_eq!(nt, term::normalize(&t).unwrap());
        assert_eq!(nt.to_string(), "Z x Z x Z_3");
        assert_eq!(nx.to_string(), "<-4,9,2>");
    }
}
