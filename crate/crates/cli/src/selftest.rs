//! Seeded consistency checks behind `orbitgroup selftest`.

use std::collections::HashSet;
use std::thread;

use num_traits::Zero;

use orbitgroup::element::{self, Element};
use orbitgroup::engine::{self, compute_piece, graph_group_piece, realize_disk};
use orbitgroup::model::{self, euler_char, validate_piece, LeafKind, Subtree};
use orbitgroup::term::{self, order_r, solvable_length_bound, struct_eq, Term};
use orbitgroup::{gen, kr, parse_term};

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

type Check = fn(u64) -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("wreath-laws", wreath_laws),
    ("order-formula", order_formula),
    ("q-quotient", q_quotient),
    ("solvability", solvability),
    ("round-trip", round_trip),
    ("m1-collapse", m1_collapse),
    ("generic-rank", generic_rank),
    ("lagrange", lagrange),
    ("worked-figures", worked_figures),
    ("parser", parser),
];

/// Runs every check on its own thread; results come back in a fixed order.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|&(name, check)| (name, s.spawn(move || check(seed))))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| CheckResult {
                name,
                outcome: h.join().unwrap_or_else(|_| Err("panicked".into())),
            })
            .collect()
    })
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

/// One realize-then-compute round trip.
pub fn round_trip_one(t: &Term) -> Result<(), String> {
    let piece = realize_disk(t).map_err(|e| e.to_string())?;
    let diags = validate_piece(&piece);
    ensure(!model::has_errors(&diags), || {
        format!("invalid realization: {diags:?}")
    })?;
    let mut morse_only = true;
    piece.root.for_each_node(&mut |n| {
        for c in n.invariant.iter().chain(&n.orbits) {
            if let Subtree::Leaf(k) = c {
                morse_only &= *k == LeafKind::NondegExtreme;
            }
        }
    });
    if let Subtree::Leaf(k) = piece.root {
        morse_only &= k == LeafKind::NondegExtreme;
    }
    ensure(morse_only, || "realization has a non-Morse leaf".into())?;
    ensure(euler_char(&piece) == 1, || {
        "euler characteristic is not 1".into()
    })?;
    let back = compute_piece(&piece).map_err(|e| e.to_string())?;
    ensure(struct_eq(&back, t), || format!("computed {back}"))
}

fn group_axioms(t: &Term) -> Result<(), String> {
    let all = element::enumerate(t, 5000).map_err(|e| e.to_string())?;
    let e = element::identity(t);
    let mul = |x: &Element, y: &Element| element::multiply(t, x, y).unwrap();
    for x in &all {
        let xi = element::inverse(t, x).unwrap();
        ensure(mul(x, &e) == *x && mul(&e, x) == *x, || {
            format!("identity fails at {x}")
        })?;
        ensure(mul(x, &xi) == e && mul(&xi, x) == e, || {
            format!("inverse fails at {x}")
        })?;
        for y in &all {
            let xy = mul(x, y);
            for z in &all {
                ensure(mul(&xy, z) == mul(x, &mul(y, z)), || {
                    format!("associativity fails at {x}, {y}, {z}")
                })?;
            }
        }
    }
    Ok(())
}

fn wreath_laws(_seed: u64) -> Result<(), String> {
    group_axioms(&Term::wr_zm(Term::Cyc(3), 2))?;
    group_axioms(&Term::wr_zm(Term::Cyc(2), 3))
}

fn order_formula(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    for _ in 0..20 {
        let t = gen::r_term(&mut rng, 3, 4, 500);
        let n = element::enumerate(&t, 5000)
            .map_err(|e| e.to_string())?
            .len() as u64;
        ensure(order_r(&t).to_u64() == Some(n), || {
            format!("{t}: enumerated {n}")
        })?;
    }
    Ok(())
}

fn q_quotient(_seed: u64) -> Result<(), String> {
    for s in [
        "1 wr[3] Z",
        "Z wr[3] Z",
        "(1 wr[2] Z) wr[3] Z",
        "Z x 1 wr[4] Z",
        "(Z wr[1] Z) wr[2] Z",
    ] {
        let t = parse_term(s).unwrap();
        let target = term::graph_image(&t).map_err(|e| e.to_string())?;
        let lifts = element::quotient_transversal(&t, 200).map_err(|e| e.to_string())?;
        let image: HashSet<Element> = lifts
            .iter()
            .map(|x| element::full_q(&t, x).unwrap().1)
            .collect();
        ensure(
            order_r(&target).to_u64() == Some(image.len() as u64),
            || format!("{s}: image has {} elements", image.len()),
        )?;
        for x in &lifts {
            for y in &lifts {
                let xy = element::multiply(&t, x, y).unwrap();
                let lhs = element::full_q(&t, &xy).unwrap().1;
                let rhs = element::multiply(
                    &target,
                    &element::full_q(&t, x).unwrap().1,
                    &element::full_q(&t, y).unwrap().1,
                )
                .unwrap();
                ensure(lhs == rhs, || {
                    format!("{s}: not a homomorphism at {x}, {y}")
                })?;
            }
        }
    }
    Ok(())
}

fn solvability(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed ^ 0x5eed);
    for _ in 0..10 {
        let t = gen::r_term(&mut rng, 3, 4, 500);
        let series = element::derived_series(&t, 5000).map_err(|e| e.to_string())?;
        ensure(series.last() == Some(&1), || {
            format!("{t}: series {series:?}")
        })?;
        ensure(series.len() - 1 <= solvable_length_bound(&t), || {
            format!("{t}: series {series:?} longer than bound")
        })?;
    }
    Ok(())
}

fn round_trip(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    for _ in 0..100 {
        let t = gen::canonical_p_term(&mut rng, 4, 5, 12);
        round_trip_one(&t).map_err(|e| format!("{t}: {e}"))?;
    }
    Ok(())
}

fn m1_collapse(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    for base in [Term::Z, Term::Cyc(3), Term::wr_zm(Term::Cyc(2), 2)] {
        let wr = Term::wr_z(base.clone(), 1);
        let prod = Term::prod([base.clone(), Term::Z]);
        let to_prod = |x: &Element| match x {
            Element::Wr { table, shift } => {
                Element::Tuple(vec![table[0].clone(), Element::Int(*shift)])
            }
            _ => unreachable!(),
        };
        for _ in 0..200 {
            let x = gen::element(&mut rng, &wr, 8);
            let y = gen::element(&mut rng, &wr, 8);
            let xy = element::multiply(&wr, &x, &y).unwrap();
            let img = element::multiply(&prod, &to_prod(&x), &to_prod(&y)).unwrap();
            ensure(to_prod(&xy) == img, || format!("{wr}: product of {x}, {y}"))?;
            let xi = element::inverse(&wr, &x).unwrap();
            ensure(
                to_prod(&xi) == element::inverse(&prod, &to_prod(&x)).unwrap(),
                || format!("{wr}: inverse of {x}"),
            )?;
        }
    }
    Ok(())
}

fn generic_rank(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    for _ in 0..50 {
        let m = gen::generic_model(&mut rng);
        let k = engine::generic_rank(&m).ok_or("generic model not recognized")?;
        let pi1 = engine::compute_model(&m).map_err(|e| e.to_string())?;
        ensure(pi1 == Term::free_abelian(k), || {
            format!("rank {k} but computed {pi1}")
        })?;
    }
    Ok(())
}

fn lagrange(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    for _ in 0..50 {
        let p = gen::valid_piece(&mut rng, 64);
        let g = graph_group_piece(&p).map_err(|e| e.to_string())?;
        let aut = kr::aut_count_rooted(&kr::build_kr(&p)).map_err(|e| e.to_string())?;
        let order = engine::graph_order(&g);
        ensure((&aut % &order).is_zero(), || {
            format!("|{g}| = {order} does not divide {aut}")
        })?;
    }
    Ok(())
}

fn worked_figures(_seed: u64) -> Result<(), String> {
    use orbitgroup::model::Piece;
    let cases = [
        (
            "fig5",
            Piece::disk(Subtree::node(
                3,
                3,
                vec![Subtree::nondeg()],
                vec![Subtree::nondeg()],
            )),
            "Z",
            "Z_3",
        ),
        (
            "two-maxima",
            Piece::disk(Subtree::node(
                1,
                1,
                vec![Subtree::nondeg(), Subtree::nondeg()],
                vec![],
            )),
            "Z",
            "1",
        ),
        (
            "nondegenerate extreme",
            Piece::disk(Subtree::nondeg()),
            "1",
            "1",
        ),
        (
            "degenerate extreme",
            Piece::disk(Subtree::degen()),
            "Z",
            "1",
        ),
    ];
    for (name, piece, pi1, g) in cases {
        let got = (
            compute_piece(&piece)
                .map_err(|e| e.to_string())?
                .to_string(),
            graph_group_piece(&piece)
                .map_err(|e| e.to_string())?
                .to_string(),
        );
        ensure(got == (pi1.to_string(), g.to_string()), || {
            format!("{name}: got {got:?}")
        })?;
    }
    Ok(())
}

fn parser(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    for _ in 0..200 {
        let t = gen::any_term(&mut rng, 5);
        let back = parse_term(&t.to_string()).map_err(|e| e.to_string())?;
        ensure(back == t, || format!("{t} parsed back as {back:?}"))?;
    }
    Ok(())
}
