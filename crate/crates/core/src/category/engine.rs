//! Fusion-tree morphism engine.
//!
//! A morphism `f: S → T` between iterated tensor products is stored as one
//! matrix per total label `c`: column `β` holds the coordinates of `f ∘ β` in
//! the splitting-tree basis of `Hom(c, T)`, where `β` runs over the basis of
//! `Hom(c, S)`. Leaves of an expression are direct sums of distinct simples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use super::{CategoryError, Label, RibbonCategory};
use crate::cyclo::CycNumber;
use crate::matrix::Matrix;

/// Longest tensor expression the engine accepts.
pub const MAX_LEAVES: usize = 4;

/// A direct sum of distinct simple labels, kept sorted.
pub type Obj = Vec<Label>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Leaf(Obj),
    Node(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

impl Expr {
    pub fn leaf(l: Label) -> Self {
        Expr::Leaf(vec![l])
    }

    pub fn sum(labels: impl IntoIterator<Item = Label>) -> Self {
        let mut v: Vec<Label> = labels.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Expr::Leaf(v)
    }

    pub fn unit() -> Self {
        Expr::leaf(0)
    }

    pub fn node(a: Expr, b: Expr) -> Self {
        Expr::Node(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Expr::Leaf(_) => 1,
            Expr::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Expr::Leaf(v) if v.as_slice() == [0])
    }

    pub fn at(&self, path: &[Side]) -> Option<&Expr> {
        match (path.split_first(), self) {
            (None, e) => Some(e),
            (Some((Side::L, rest)), Expr::Node(a, _)) => a.at(rest),
            (Some((Side::R, rest)), Expr::Node(_, b)) => b.at(rest),
            _ => None,
        }
    }

    pub fn replace(&self, path: &[Side], new: Expr) -> Option<Expr> {
        match (path.split_first(), self) {
            (None, _) => Some(new),
            (Some((Side::L, rest)), Expr::Node(a, b)) => Some(Expr::Node(Box::new(a.replace(rest, new)?), b.clone())),
            (Some((Side::R, rest)), Expr::Node(a, b)) => Some(Expr::Node(a.clone(), Box::new(b.replace(rest, new)?))),
            _ => None,
        }
    }

    pub fn as_obj(&self) -> Option<&Obj> {
        match self {
            Expr::Leaf(o) => Some(o),
            Expr::Node(..) => None,
        }
    }
}

/// Splitting tree: a leaf chooses one simple summand of its leaf object, and
/// an internal node records the total label of its subtree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(Label),
    Node(Label, Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn label(&self) -> Label {
        match self {
            Tree::Leaf(l) | Tree::Node(l, _, _) => *l,
        }
    }

    pub fn node(c: Label, a: Tree, b: Tree) -> Self {
        Tree::Node(c, Box::new(a), Box::new(b))
    }

    pub fn at(&self, path: &[Side]) -> Option<&Tree> {
        match (path.split_first(), self) {
            (None, t) => Some(t),
            (Some((Side::L, rest)), Tree::Node(_, a, _)) => a.at(rest),
            (Some((Side::R, rest)), Tree::Node(_, _, b)) => b.at(rest),
            _ => None,
        }
    }

    fn replace(&self, path: &[Side], new: Tree) -> Tree {
        match (path.split_first(), self) {
            (None, _) => new,
            (Some((Side::L, rest)), Tree::Node(c, a, b)) => Tree::Node(*c, Box::new(a.replace(rest, new)), b.clone()),
            (Some((Side::R, rest)), Tree::Node(c, a, b)) => Tree::Node(*c, a.clone(), Box::new(b.replace(rest, new))),
            _ => unreachable!("tree shape follows its expression"),
        }
    }
}

/// Elementary structure maps, applied at a position of a morphism's target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// `((X Y) Z) → (X (Y Z))`
    Associator,
    /// `(X (Y Z)) → ((X Y) Z)`
    AssociatorInverse,
    /// `c_{X,Y}: (X Y) → (Y X)`
    Braid,
    /// `c_{Y,X}^{-1}: (X Y) → (Y X)`
    BraidInverse,
    Twist,
    TwistInverse,
    /// `i_X: 1 → (X X*)`
    Cup(Obj),
    /// `e_X: (X* X) → 1`
    Cap,
    /// `ĩ_X: 1 → (X* X)`
    PivotalCup(Obj),
    /// `ẽ_X: (X X*) → 1`
    PivotalCap,
    /// `X → (1 X)` or `X → (X 1)`
    UnitInsert(Side),
    /// `(1 X) → X` or `(X 1) → X`
    UnitRemove,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Expr,
    target: Expr,
    blocks: BTreeMap<Label, Matrix>,
}

impl Morphism {
    pub fn source(&self) -> &Expr {
        &self.source
    }

    pub fn target(&self) -> &Expr {
        &self.target
    }

    pub fn block(&self, c: Label) -> Option<&Matrix> {
        self.blocks.get(&c)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Label, &Matrix)> {
        self.blocks.iter().map(|(c, m)| (*c, m))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// `Some(s)` when this is `s · Id`, with the same `s` in every block.
    pub fn scalar_identity(&self) -> Option<CycNumber> {
        if self.source != self.target {
            return None;
        }
        let mut s: Option<CycNumber> = None;
        for m in self.blocks.values() {
            if m.rows() == 0 {
                continue;
            }
            let d = m.get(0, 0).clone();
            if !m.sub(&Matrix::identity(m.rows()).scale(&d)).is_zero() {
                return None;
            }
            match &s {
                Some(prev) if *prev != d => return None,
                Some(_) => {}
                None => s = Some(d),
            }
        }
        s.or_else(|| Some(CycNumber::zero()))
    }

    pub fn scale(&self, s: &CycNumber) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|(c, m)| (*c, m.scale(s))).collect(),
        }
    }
}

struct Basis {
    trees: Vec<Tree>,
    index: HashMap<Tree, usize>,
}

/// Evaluates morphisms in a fixed multiplicity-free category.
pub struct Engine<'a> {
    cat: &'a RibbonCategory,
    cache: RwLock<HashMap<(Expr, Label), Arc<Basis>>>,
}

fn inadmissible(msg: impl Into<String>) -> CategoryError {
    CategoryError::Inadmissible(msg.into())
}

impl<'a> Engine<'a> {
    pub fn new(cat: &'a RibbonCategory) -> Result<Self, CategoryError> {
        cat.check_multiplicity_free()?;
        Ok(Engine { cat, cache: RwLock::new(HashMap::new()) })
    }

    pub fn category(&self) -> &'a RibbonCategory {
        self.cat
    }

    fn check_len(&self, e: &Expr) -> Result<(), CategoryError> {
        if e.leaves() > MAX_LEAVES {
            return Err(inadmissible(format!("{} has more than {MAX_LEAVES} tensor factors", self.show(e))));
        }
        if let Some(bad) = leaf_labels(e).into_iter().find(|&l| l >= self.cat.rank()) {
            return Err(inadmissible(format!("label index {bad} out of range")));
        }
        Ok(())
    }

    fn basis(&self, e: &Expr, c: Label) -> Arc<Basis> {
        let key = (e.clone(), c);
        if let Some(b) = self.cache.read().unwrap().get(&key) {
            return b.clone();
        }
        let trees = self.enumerate(e, c);
        let index = trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let b = Arc::new(Basis { trees, index });
        self.cache.write().unwrap().insert(key, b.clone());
        b
    }

    fn enumerate(&self, e: &Expr, c: Label) -> Vec<Tree> {
        match e {
            Expr::Leaf(obj) => {
                if obj.contains(&c) {
                    vec![Tree::Leaf(c)]
                } else {
                    Vec::new()
                }
            }
            Expr::Node(l, r) => {
                let n = self.cat.rank();
                let mut out = Vec::new();
                for a in 0..n {
                    let left = self.basis(l, a);
                    if left.trees.is_empty() {
                        continue;
                    }
                    for b in 0..n {
                        if self.cat.n(a, b, c) == 0 {
                            continue;
                        }
                        let right = self.basis(r, b);
                        for tl in &left.trees {
                            for tr in &right.trees {
                                out.push(Tree::node(c, tl.clone(), tr.clone()));
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Ordered splitting-tree basis of `Hom(c, expr)`.
    pub fn hom_basis(&self, e: &Expr, c: Label) -> Result<Vec<Tree>, CategoryError> {
        self.check_len(e)?;
        Ok(self.basis(e, c).trees.clone())
    }

    pub fn hom_dim(&self, e: &Expr, c: Label) -> usize {
        self.basis(e, c).trees.len()
    }

    /// Decomposition of an expression into simples, as `(label, multiplicity)`.
    pub fn decompose(&self, e: &Expr) -> Vec<(Label, usize)> {
        (0..self.cat.rank())
            .map(|c| (c, self.hom_dim(e, c)))
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    /// Build a morphism from its action on source basis trees.
    pub fn from_fn<F>(&self, source: &Expr, target: &Expr, f: F) -> Result<Morphism, CategoryError>
    where
        F: Fn(&Tree) -> Result<Vec<(CycNumber, Tree)>, CategoryError>,
    {
        self.check_len(source)?;
        self.check_len(target)?;
        let mut blocks = BTreeMap::new();
        for c in 0..self.cat.rank() {
            let sb = self.basis(source, c);
            let tb = self.basis(target, c);
            if sb.trees.is_empty() || tb.trees.is_empty() {
                continue;
            }
            let mut m = Matrix::zeros(tb.trees.len(), sb.trees.len());
            for (col, beta) in sb.trees.iter().enumerate() {
                for (coef, gamma) in f(beta)? {
                    if coef.is_zero() {
                        continue;
                    }
                    let row = *tb.index.get(&gamma).ok_or_else(|| {
                        inadmissible(format!("image tree {gamma:?} not in the basis of {}", self.show(target)))
                    })?;
                    let v = m.get(row, col) + &coef;
                    m.set(row, col, v);
                }
            }
            blocks.insert(c, m);
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), blocks })
    }

    /// Image of one source basis tree.
    pub fn apply_tree(&self, m: &Morphism, beta: &Tree) -> Vec<(CycNumber, Tree)> {
        let c = beta.label();
        let Some(block) = m.blocks.get(&c) else {
            return Vec::new();
        };
        let sb = self.basis(&m.source, c);
        let tb = self.basis(&m.target, c);
        let Some(&col) = sb.index.get(beta) else {
            return Vec::new();
        };
        (0..block.rows())
            .filter(|&r| !block.get(r, col).is_zero())
            .map(|r| (block.get(r, col).clone(), tb.trees[r].clone()))
            .collect()
    }

    pub fn identity(&self, e: &Expr) -> Result<Morphism, CategoryError> {
        self.from_fn(e, e, |t| Ok(vec![(CycNumber::one(), t.clone())]))
    }

    pub fn zero(&self, source: &Expr, target: &Expr) -> Result<Morphism, CategoryError> {
        self.from_fn(source, target, |_| Ok(Vec::new()))
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism, CategoryError> {
        if f.target != g.source {
            return Err(inadmissible(format!(
                "cannot compose: {} does not match {}",
                self.show(&f.target),
                self.show(&g.source)
            )));
        }
        let mut blocks = BTreeMap::new();
        for c in 0..self.cat.rank() {
            let (ds, dt) = (self.hom_dim(&f.source, c), self.hom_dim(&g.target, c));
            if ds == 0 || dt == 0 {
                continue;
            }
            let m = match (g.blocks.get(&c), f.blocks.get(&c)) {
                (Some(gm), Some(fm)) => gm.mul(fm),
                _ => Matrix::zeros(dt, ds),
            };
            blocks.insert(c, m);
        }
        Ok(Morphism { source: f.source.clone(), target: g.target.clone(), blocks })
    }

    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, CategoryError> {
        let source = Expr::node(f.source.clone(), g.source.clone());
        let target = Expr::node(f.target.clone(), g.target.clone());
        self.from_fn(&source, &target, |t| {
            let Tree::Node(c, a, b) = t else { unreachable!() };
            let mut out = Vec::new();
            for (x, ga) in self.apply_tree(f, a) {
                for (y, gb) in self.apply_tree(g, b) {
                    if self.cat.n(ga.label(), gb.label(), *c) > 0 {
                        out.push((&x * &y, Tree::node(*c, ga.clone(), gb)));
                    }
                }
            }
            Ok(out)
        })
    }

    pub fn add(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, CategoryError> {
        if f.source != g.source || f.target != g.target {
            return Err(inadmissible("cannot add morphisms with different shapes"));
        }
        let blocks = f.blocks.iter().map(|(c, m)| (*c, m.add(&g.blocks[c]))).collect();
        Ok(Morphism { source: f.source.clone(), target: f.target.clone(), blocks })
    }

    /// Exact equality; morphisms of different shapes are unequal.
    pub fn equal(&self, f: &Morphism, g: &Morphism) -> bool {
        f == g
    }

    /// `id ⊗ h ⊗ id` acting on `expr`, with `h` applied at `path`.
    pub fn whisker(&self, expr: &Expr, path: &[Side], h: &Morphism) -> Result<Morphism, CategoryError> {
        let sub = expr.at(path).ok_or_else(|| inadmissible(format!("no position {path:?} in {}", self.show(expr))))?;
        if *sub != h.source {
            return Err(inadmissible(format!(
                "local map expects {}, found {} at {path:?}",
                self.show(&h.source),
                self.show(sub)
            )));
        }
        if path.is_empty() {
            return Ok(h.clone());
        }
        let target = expr.replace(path, h.target.clone()).expect("path exists");
        self.from_fn(expr, &target, |t| {
            let sub_tree = t.at(path).expect("tree shape follows expression");
            Ok(self
                .apply_tree(h, sub_tree)
                .into_iter()
                .map(|(x, s)| (x, t.replace(path, s)))
                .collect())
        })
    }

    /// Post-compose `m` with `h` applied at `path` of its target.
    pub fn apply_at(&self, m: &Morphism, path: &[Side], h: &Morphism) -> Result<Morphism, CategoryError> {
        let w = self.whisker(&m.target, path, h)?;
        self.compose(&w, m)
    }

    pub fn apply_move(&self, m: &Morphism, mv: &Move, path: &[Side]) -> Result<Morphism, CategoryError> {
        let sub = m
            .target
            .at(path)
            .ok_or_else(|| inadmissible(format!("no position {path:?} in {}", self.show(&m.target))))?
            .clone();
        let h = self.local(mv, &sub)?;
        self.apply_at(m, path, &h)
    }

    /// The structure map `mv` with source `sub`.
    pub fn local(&self, mv: &Move, sub: &Expr) -> Result<Morphism, CategoryError> {
        let cat = self.cat;
        let bad = || inadmissible(format!("{mv:?} does not apply to {}", self.show(sub)));
        let one = CycNumber::one;
        match mv {
            Move::Associator => {
                let Expr::Node(xy, z) = sub else { return Err(bad()) };
                let Expr::Node(x, y) = xy.as_ref() else { return Err(bad()) };
                let target = Expr::node((**x).clone(), Expr::node((**y).clone(), (**z).clone()));
                self.from_fn(sub, &target, |t| {
                    let Tree::Node(m, txy, tz) = t else { unreachable!() };
                    let Tree::Node(e, tx, ty) = txy.as_ref() else { unreachable!() };
                    let (i, j, k) = (tx.label(), ty.label(), tz.label());
                    Ok(cat
                        .fuse(j, k)
                        .into_iter()
                        .filter(|&f| cat.n(i, f, *m) > 0)
                        .map(|f| {
                            (
                                cat.f_entry(i, j, k, *m, *e, f),
                                Tree::node(*m, (**tx).clone(), Tree::node(f, (**ty).clone(), (**tz).clone())),
                            )
                        })
                        .collect())
                })
            }
            Move::AssociatorInverse => {
                let Expr::Node(x, yz) = sub else { return Err(bad()) };
                let Expr::Node(y, z) = yz.as_ref() else { return Err(bad()) };
                let target = Expr::node(Expr::node((**x).clone(), (**y).clone()), (**z).clone());
                self.from_fn(sub, &target, |t| {
                    let Tree::Node(m, tx, tyz) = t else { unreachable!() };
                    let Tree::Node(f, ty, tz) = tyz.as_ref() else { unreachable!() };
                    let (i, j, k) = (tx.label(), ty.label(), tz.label());
                    Ok(cat
                        .fuse(i, j)
                        .into_iter()
                        .filter(|&e| cat.n(e, k, *m) > 0)
                        .map(|e| {
                            (
                                cat.f_inv_entry(i, j, k, *m, *f, e),
                                Tree::node(*m, Tree::node(e, (**tx).clone(), (**ty).clone()), (**tz).clone()),
                            )
                        })
                        .collect())
                })
            }
            Move::Braid | Move::BraidInverse => {
                let Expr::Node(x, y) = sub else { return Err(bad()) };
                let target = Expr::node((**y).clone(), (**x).clone());
                let inverse = *mv == Move::BraidInverse;
                self.from_fn(sub, &target, |t| {
                    let Tree::Node(c, tx, ty) = t else { unreachable!() };
                    let (a, b) = (tx.label(), ty.label());
                    let coef = if inverse { cat.r_scalar(b, a, *c).inverse()? } else { cat.r_scalar(a, b, *c) };
                    Ok(vec![(coef, Tree::node(*c, (**ty).clone(), (**tx).clone()))])
                })
            }
            Move::Twist | Move::TwistInverse => {
                let inverse = *mv == Move::TwistInverse;
                self.from_fn(sub, sub, |t| {
                    let th = cat.theta(t.label());
                    Ok(vec![(if inverse { th.inverse()? } else { th.clone() }, t.clone())])
                })
            }
            Move::Cup(obj) | Move::PivotalCup(obj) => {
                if !sub.is_unit() {
                    return Err(bad());
                }
                let duals = Expr::sum(obj.iter().map(|&a| cat.dual(a)));
                let pivotal = matches!(mv, Move::PivotalCup(_));
                let target = if pivotal {
                    Expr::node(duals, Expr::Leaf(obj.clone()))
                } else {
                    Expr::node(Expr::Leaf(obj.clone()), duals)
                };
                self.from_fn(sub, &target, |_| {
                    let mut out = Vec::new();
                    for &a in obj {
                        let ad = cat.dual(a);
                        if pivotal {
                            let coef = cat.cup_coefficient(ad).checked_div(cat.pivotal(a))?;
                            out.push((coef, Tree::node(0, Tree::Leaf(ad), Tree::Leaf(a))));
                        } else {
                            out.push((cat.cup_coefficient(a), Tree::node(0, Tree::Leaf(a), Tree::Leaf(ad))));
                        }
                    }
                    Ok(out)
                })
            }
            Move::Cap | Move::PivotalCap => {
                let Expr::Node(p, q) = sub else { return Err(bad()) };
                if p.as_obj().is_none() || q.as_obj().is_none() {
                    return Err(bad());
                }
                let pivotal = *mv == Move::PivotalCap;
                self.from_fn(sub, &Expr::unit(), |t| {
                    let Tree::Node(c, a, b) = t else { unreachable!() };
                    if *c != 0 || cat.dual(b.label()) != a.label() {
                        return Ok(Vec::new());
                    }
                    let coef = if pivotal { cat.pivotal(a.label()).clone() } else { one() };
                    Ok(vec![(coef, Tree::Leaf(0))])
                })
            }
            Move::UnitInsert(side) => {
                let target = match side {
                    Side::L => Expr::node(Expr::unit(), sub.clone()),
                    Side::R => Expr::node(sub.clone(), Expr::unit()),
                };
                let side = *side;
                self.from_fn(sub, &target, |t| {
                    let c = t.label();
                    Ok(vec![(
                        one(),
                        match side {
                            Side::L => Tree::node(c, Tree::Leaf(0), t.clone()),
                            Side::R => Tree::node(c, t.clone(), Tree::Leaf(0)),
                        },
                    )])
                })
            }
            Move::UnitRemove => {
                let Expr::Node(a, b) = sub else { return Err(bad()) };
                let left = a.is_unit();
                if !left && !b.is_unit() {
                    return Err(bad());
                }
                let target = if left { (**b).clone() } else { (**a).clone() };
                self.from_fn(sub, &target, |t| {
                    let Tree::Node(_, ta, tb) = t else { unreachable!() };
                    Ok(vec![(one(), if left { (**tb).clone() } else { (**ta).clone() })])
                })
            }
        }
    }

    /// Vertex map `(P Q) → O` sending the tree `(p q)_c` to `coef(p, q, c)·c`.
    pub fn fuse_map<F>(&self, source: &Expr, target: &Obj, coef: F) -> Result<Morphism, CategoryError>
    where
        F: Fn(Label, Label, Label) -> CycNumber,
    {
        let Expr::Node(p, q) = source else {
            return Err(inadmissible("fuse_map needs a pair of leaves"));
        };
        if p.as_obj().is_none() || q.as_obj().is_none() {
            return Err(inadmissible("fuse_map needs a pair of leaves"));
        }
        self.from_fn(source, &Expr::Leaf(target.clone()), |t| {
            let Tree::Node(c, a, b) = t else { unreachable!() };
            if !target.contains(c) {
                return Ok(Vec::new());
            }
            Ok(vec![(coef(a.label(), b.label(), *c), Tree::Leaf(*c))])
        })
    }

    /// Splitting map `O → (P Q)` sending `c` to `Σ coef(p, q, c)·(p q)_c`.
    pub fn split_map<F>(&self, source: &Obj, target: &Expr, coef: F) -> Result<Morphism, CategoryError>
    where
        F: Fn(Label, Label, Label) -> CycNumber,
    {
        let Expr::Node(p, q) = target else {
            return Err(inadmissible("split_map needs a pair of leaves"));
        };
        let (Some(p), Some(q)) = (p.as_obj(), q.as_obj()) else {
            return Err(inadmissible("split_map needs a pair of leaves"));
        };
        self.from_fn(&Expr::Leaf(source.clone()), target, |t| {
            let c = t.label();
            let mut out = Vec::new();
            for &a in p {
                for &b in q {
                    if self.cat.n(a, b, c) > 0 {
                        out.push((coef(a, b, c), Tree::node(c, Tree::Leaf(a), Tree::Leaf(b))));
                    }
                }
            }
            Ok(out)
        })
    }

    /// Diagonal map between leaf objects: `c ↦ coef(c)·c` for `c` in both.
    pub fn leaf_map<F>(&self, source: &Obj, target: &Obj, coef: F) -> Result<Morphism, CategoryError>
    where
        F: Fn(Label) -> CycNumber,
    {
        self.from_fn(&Expr::Leaf(source.clone()), &Expr::Leaf(target.clone()), |t| {
            let c = t.label();
            Ok(if target.contains(&c) { vec![(coef(c), Tree::Leaf(c))] } else { Vec::new() })
        })
    }

    pub fn show(&self, e: &Expr) -> String {
        ExprDisplay { cat: self.cat, expr: e }.to_string()
    }
}

fn leaf_labels(e: &Expr) -> Vec<Label> {
    match e {
        Expr::Leaf(o) => o.clone(),
        Expr::Node(a, b) => {
            let mut v = leaf_labels(a);
            v.extend(leaf_labels(b));
            v
        }
    }
}

struct ExprDisplay<'a> {
    cat: &'a RibbonCategory,
    expr: &'a Expr,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            Expr::Leaf(o) => {
                let names: Vec<&str> = o.iter().map(|&l| self.cat.label_name(l)).collect();
                if names.len() == 1 {
                    write!(f, "{}", names[0])
                } else {
                    write!(f, "[{}]", names.join("+"))
                }
            }
            Expr::Node(a, b) => write!(
                f,
                "({} ⊗ {})",
                ExprDisplay { cat: self.cat, expr: a },
                ExprDisplay { cat: self.cat, expr: b }
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin;

    #[test]
    fn basis_sizes() {
        let fib = builtin("fib").unwrap();
        let e = Engine::new(&fib).unwrap();
        let t = fib.label("τ").unwrap();
        let tt = Expr::node(Expr::leaf(t), Expr::leaf(t));
        assert_eq!(e.hom_basis(&tt, 0).unwrap().len(), 1);
        let ising = builtin("ising").unwrap();
        let e = Engine::new(&ising).unwrap();
        let s = ising.label("σ").unwrap();
        let sss = Expr::node(Expr::node(Expr::leaf(s), Expr::leaf(s)), Expr::leaf(s));
        assert_eq!(e.hom_basis(&sss, s).unwrap().len(), 2);
        assert!(e.hom_basis(&sss, 0).unwrap().is_empty());
    }

    #[test]
    fn zigzags_and_loops() {
        for name in ["fib", "ising", "pointed:3:1"] {
            let c = builtin(name).unwrap();
            let e = Engine::new(&c).unwrap();
            for a in 0..c.rank() {
                let ad = c.dual(a);
                let x = Expr::leaf(a);
                // (id ⊗ e) ∘ α ∘ (i ⊗ id) = id
                let m = e.local(&Move::UnitInsert(Side::L), &x).unwrap();
                let m = e.apply_move(&m, &Move::Cup(vec![a]), &[Side::L]).unwrap();
                let m = e.apply_move(&m, &Move::Associator, &[]).unwrap();
                let m = e.apply_move(&m, &Move::Cap, &[Side::R]).unwrap();
                let m = e.apply_move(&m, &Move::UnitRemove, &[]).unwrap();
                assert!(m.scalar_identity().unwrap().is_one(), "{name} zigzag at {a}");
                // (ẽ ⊗ id) ∘ α^{-1} ∘ (id ⊗ ĩ) = id
                let m = e.local(&Move::UnitInsert(Side::R), &x).unwrap();
                let m = e.apply_move(&m, &Move::PivotalCup(vec![a]), &[Side::R]).unwrap();
                let m = e.apply_move(&m, &Move::AssociatorInverse, &[]).unwrap();
                let m = e.apply_move(&m, &Move::PivotalCap, &[Side::L]).unwrap();
                let m = e.apply_move(&m, &Move::UnitRemove, &[]).unwrap();
                assert!(m.scalar_identity().unwrap().is_one(), "{name} pivotal zigzag at {a}");
                // loop: ẽ ∘ i = d_a, e ∘ ĩ = d_a
                let cup = e.local(&Move::Cup(vec![a]), &Expr::unit()).unwrap();
                let lp = e.apply_move(&cup, &Move::PivotalCap, &[]).unwrap();
                assert_eq!(lp.scalar_identity().unwrap(), *c.qdim(a));
                let cup = e.local(&Move::PivotalCup(vec![a]), &Expr::unit()).unwrap();
                let lp = e.apply_move(&cup, &Move::Cap, &[]).unwrap();
                assert_eq!(lp.scalar_identity().unwrap(), *c.qdim(ad));
            }
        }
    }

    #[test]
    fn braid_twice_is_monodromy() {
        let c = builtin("ising").unwrap();
        let e = Engine::new(&c).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let x = Expr::node(Expr::leaf(i), Expr::leaf(j));
                let id = e.identity(&x).unwrap();
                let m = e.apply_move(&id, &Move::Braid, &[]).unwrap();
                let m = e.apply_move(&m, &Move::Braid, &[]).unwrap();
                for k in c.fuse(i, j) {
                    let want = c.theta(k).checked_div(&(c.theta(i) * c.theta(j))).unwrap();
                    assert_eq!(*m.block(k).unwrap().get(0, 0), want);
                }
            }
        }
    }

    #[test]
    fn associator_round_trip_and_shape_errors() {
        let c = builtin("fib").unwrap();
        let e = Engine::new(&c).unwrap();
        let t = Expr::leaf(1);
        let x = Expr::node(Expr::node(t.clone(), t.clone()), t.clone());
        let id = e.identity(&x).unwrap();
        let m = e.apply_move(&id, &Move::Associator, &[]).unwrap();
        let m = e.apply_move(&m, &Move::AssociatorInverse, &[]).unwrap();
        assert_eq!(m, id);
        assert!(e.apply_move(&id, &Move::AssociatorInverse, &[]).is_err());
        let five = Expr::node(x.clone(), Expr::node(t.clone(), t.clone()));
        assert!(e.identity(&five).is_err());
    }
}
