//! Shared oracles and random diagram generators for the integration tests.
#![allow(dead_code)]

use mirrorcat::algebra::AlgebraObject;
use mirrorcat::category::{Engine, Expr, Move, Morphism, RibbonCategory, Side};
use mirrorcat::cyclo::CycNumber;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every path into `e`, root first.
pub fn paths(e: &Expr) -> Vec<Vec<Side>> {
    let mut out = vec![Vec::new()];
    if let Expr::Node(l, r) = e {
        for (side, sub) in [(Side::L, l), (Side::R, r)] {
            for mut p in paths(sub) {
                p.insert(0, side);
                out.push(p);
            }
        }
    }
    out
}

fn applies(mv: &Move, e: &Expr) -> bool {
    match (mv, e) {
        (Move::Associator, Expr::Node(l, _)) => matches!(l.as_ref(), Expr::Node(..)),
        (Move::AssociatorInverse, Expr::Node(_, r)) => matches!(r.as_ref(), Expr::Node(..)),
        (Move::Braid | Move::BraidInverse, Expr::Node(..)) => true,
        (Move::Twist | Move::TwistInverse, _) => true,
        _ => false,
    }
}

fn inverse(mv: &Move) -> Move {
    match mv {
        Move::Associator => Move::AssociatorInverse,
        Move::AssociatorInverse => Move::Associator,
        Move::Braid => Move::BraidInverse,
        Move::BraidInverse => Move::Braid,
        Move::Twist => Move::TwistInverse,
        Move::TwistInverse => Move::Twist,
        other => panic!("no inverse recorded for {other:?}"),
    }
}

fn random_leaf(rng: &mut StdRng, rank: usize) -> Expr {
    let size = if rng.gen_bool(0.25) && rank > 1 { 2 } else { 1 };
    let mut labels: Vec<usize> = (0..rank).collect();
    labels.shuffle(rng);
    Expr::sum(labels.into_iter().take(size))
}

fn random_bracketing(rng: &mut StdRng, leaves: &[Expr]) -> Expr {
    if leaves.len() == 1 {
        return leaves[0].clone();
    }
    let cut = rng.gen_range(1..leaves.len());
    Expr::node(random_bracketing(rng, &leaves[..cut]), random_bracketing(rng, &leaves[cut..]))
}

/// Three or four leaves, each one or two simple labels, randomly bracketed.
pub fn random_diagram(rng: &mut StdRng, c: &RibbonCategory) -> Expr {
    let n = rng.gen_range(3..=4);
    let leaves: Vec<Expr> = (0..n).map(|_| random_leaf(rng, c.rank())).collect();
    random_bracketing(rng, &leaves)
}

/// Apply associators at random admissible positions until the target is right-bracketed.
fn walk_to_normal_form(e: &Engine, m: Morphism, rng: &mut StdRng) -> Result<Morphism, String> {
    let mut m = m;
    loop {
        let spots: Vec<Vec<Side>> = paths(m.target())
            .into_iter()
            .filter(|p| applies(&Move::Associator, m.target().at(p).unwrap()))
            .collect();
        let Some(p) = spots.choose(rng) else { return Ok(m) };
        m = e.apply_move(&m, &Move::Associator, p).map_err(|x| x.to_string())?;
    }
}

fn leaves_of(e: &Expr) -> Vec<Expr> {
    match e {
        Expr::Leaf(_) => vec![e.clone()],
        Expr::Node(l, r) => {
            let mut v = leaves_of(l);
            v.extend(leaves_of(r));
            v
        }
    }
}

/// Coherence checks on one diagram:
/// two random associator walks to the right-bracketed form agree;
/// a random word in invertible moves followed by its inverse is the identity;
/// braid relation and balancing on the first leaves.
pub fn coherence_case(c: &RibbonCategory, d: &Expr, rng: &mut StdRng) -> Result<(), String> {
    let e = Engine::new(c).map_err(|x| x.to_string())?;
    let show = e.show(d);
    let id = e.identity(d).map_err(|x| x.to_string())?;

    let a = walk_to_normal_form(&e, id.clone(), rng)?;
    let b = walk_to_normal_form(&e, id.clone(), rng)?;
    if !e.equal(&a, &b) {
        return Err(format!("associator walks disagree on {show}"));
    }

    let moves = [Move::Associator, Move::AssociatorInverse, Move::Braid, Move::BraidInverse, Move::Twist, Move::TwistInverse];
    let mut m = id.clone();
    let mut word = Vec::new();
    for _ in 0..rng.gen_range(1..=8) {
        let options: Vec<(Move, Vec<Side>)> = paths(m.target())
            .into_iter()
            .flat_map(|p| moves.iter().map(move |mv| (mv.clone(), p.clone())))
            .filter(|(mv, p)| applies(mv, m.target().at(p).unwrap()))
            .collect();
        let (mv, p) = options.choose(rng).unwrap().clone();
        m = e.apply_move(&m, &mv, &p).map_err(|x| x.to_string())?;
        word.push((mv, p));
    }
    for (mv, p) in word.iter().rev() {
        m = e.apply_move(&m, &inverse(mv), p).map_err(|x| x.to_string())?;
    }
    if !e.equal(&m, &id) {
        return Err(format!("word {word:?} and its inverse do not cancel on {show}"));
    }

    let ls = leaves_of(d);
    let (x, y, z) = (ls[0].clone(), ls[1].clone(), ls[2].clone());
    let xyz = Expr::node(Expr::node(x.clone(), y.clone()), z);
    let step = |m: Morphism, mv: Move, p: &[Side]| e.apply_move(&m, &mv, p).map_err(|x| x.to_string());
    let start = e.identity(&xyz).map_err(|x| x.to_string())?;
    use Side::{L, R};
    let mut lhs = start.clone();
    for (mv, p) in [
        (Move::Braid, vec![L]),
        (Move::Associator, vec![]),
        (Move::Braid, vec![R]),
        (Move::AssociatorInverse, vec![]),
        (Move::Braid, vec![L]),
    ] {
        lhs = step(lhs, mv, &p)?;
    }
    let mut rhs = start;
    for (mv, p) in [
        (Move::Associator, vec![]),
        (Move::Braid, vec![R]),
        (Move::AssociatorInverse, vec![]),
        (Move::Braid, vec![L]),
        (Move::Associator, vec![]),
        (Move::Braid, vec![R]),
        (Move::AssociatorInverse, vec![]),
    ] {
        rhs = step(rhs, mv, &p)?;
    }
    if !e.equal(&lhs, &rhs) {
        return Err(format!("braid relation fails on {}", e.show(&xyz)));
    }

    let xy = Expr::node(x, y);
    let id = e.identity(&xy).map_err(|x| x.to_string())?;
    let whole = step(id.clone(), Move::Twist, &[])?;
    let mut parts = step(id, Move::Twist, &[L])?;
    parts = step(parts, Move::Twist, &[R])?;
    parts = step(parts, Move::Braid, &[])?;
    parts = step(parts, Move::Braid, &[])?;
    if !e.equal(&whole, &parts) {
        return Err(format!("balancing fails on {}", e.show(&xy)));
    }
    Ok(())
}

/// `d_i d_j - Σ_k N_{ij}^k d_k` for every pair, as failure messages.
pub fn dimension_defects(c: &RibbonCategory) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            let lhs = c.qdim(i) * c.qdim(j);
            let mut rhs = CycNumber::zero();
            for k in 0..c.rank() {
                rhs = &rhs + &(&CycNumber::from_integer(c.n(i, j, k) as i64) * c.qdim(k));
            }
            if lhs != rhs {
                out.push(format!("{}: d_{} d_{} = {lhs}, fusion gives {rhs}", c.name(), c.label_name(i), c.label_name(j)));
            }
        }
    }
    out
}

/// `Σ_x d_x²`, the expected categorical dimension of a canonical algebra.
pub fn sum_of_squares(c: &RibbonCategory) -> CycNumber {
    (0..c.rank()).fold(CycNumber::zero(), |s, x| &s + &(c.qdim(x) * c.qdim(x)))
}

/// Quantum dimensions of the two factors of component `i`.
pub fn factor_dims(a: &AlgebraObject, i: usize) -> (CycNumber, CycNumber) {
    let (u, w) = a.factors().expect("product ambient");
    let (x, y) = a.split(i).expect("product label");
    (u.qdim(x).clone(), w.qdim(y).clone())
}

/// Ordered pairs of the given categories whose product has rank at most `cap`.
pub fn small_pairs(cs: &[RibbonCategory], cap: usize) -> Vec<(RibbonCategory, RibbonCategory)> {
    let mut out = Vec::new();
    for a in cs {
        for b in cs {
            if a.rank() * b.rank() <= cap {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}
