//! Induced left modules, Frobenius reciprocity, locality and the Key Lemma maps.

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraObject};
use crate::category::{CategoryError, Engine, Expr, Label, Morphism, Move, Side, Tree};
use crate::cyclo::CycNumber;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("module axiom fails for F({seed}): {axiom}")]
    Axiom { seed: String, axiom: &'static str },
    #[error("adjunction violated for W = {seed}, X = F({module}): Rep A gives {rep}, fusion counting gives {fusion}")]
    Adjunction { seed: String, module: String, rep: usize, fusion: usize },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("dim_U U_i vanishes at component {0}")]
    ZeroDimension(String),
    #[error("{0}")]
    NotScalar(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

impl From<crate::cyclo::CycError> for RepError {
    fn from(e: crate::cyclo::CycError) -> Self {
        RepError::Category(e.into())
    }
}

/// The free module `F(W) = A ⊗ W` with action `(μ ⊗ id) ∘ α^{-1}`.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub algebra: AlgebraObject,
    pub seed: Label,
    /// Decomposition of `A ⊗ W` as `(label, multiplicity)`.
    pub carrier: Vec<(Label, usize)>,
    /// `A ⊗ (A ⊗ W) → A ⊗ W`.
    pub action: Morphism,
}

impl InducedModule {
    pub fn object(&self) -> Expr {
        Expr::node(self.algebra.object(), Expr::leaf(self.seed))
    }

    pub fn seed_name(&self) -> &str {
        self.algebra.ambient().label_name(self.seed)
    }

    /// Nonzero action coefficients as `(component, source tree, target tree, value)`.
    pub fn coefficients(&self) -> Vec<(usize, Tree, Tree, CycNumber)> {
        let e = Engine::new(self.algebra.ambient()).expect("engine accepted this ambient before");
        let mut out = Vec::new();
        for c in 0..self.algebra.ambient().rank() {
            for beta in e.hom_basis(self.action.source(), c).unwrap_or_default() {
                let Tree::Node(_, a, _) = &beta else { unreachable!() };
                let i = self.algebra.component_with_label(a.label()).expect("leaf of A");
                for (v, gamma) in e.apply_tree(&self.action, &beta) {
                    out.push((i, beta.clone(), gamma, v));
                }
            }
        }
        out
    }

    pub fn carrier_names(&self) -> Vec<String> {
        let c = self.algebra.ambient();
        self.carrier
            .iter()
            .map(|&(l, m)| if m == 1 { c.label_name(l).to_string() } else { format!("{m}·{}", c.label_name(l)) })
            .collect()
    }
}

fn module_action(e: &Engine, a: &AlgebraObject, seed: &Expr) -> Result<Morphism, RepError> {
    let ao = a.object();
    let src = Expr::node(ao.clone(), Expr::node(ao, seed.clone()));
    let mu = a.mu_morphism(e)?;
    let m = e.identity(&src)?;
    let m = e.apply_move(&m, &Move::AssociatorInverse, &[])?;
    Ok(e.apply_at(&m, &[Side::L], &mu)?)
}

/// `F(W)` for a simple seed `W`, with the module axioms checked.
pub fn induce(a: &AlgebraObject, w: Label) -> Result<InducedModule, RepError> {
    let e = Engine::new(a.ambient())?;
    if w >= a.ambient().rank() {
        return Err(CategoryError::Inadmissible(format!("label index {w} out of range")).into());
    }
    let seed = Expr::leaf(w);
    let action = module_action(&e, a, &seed)?;
    let x = Expr::node(a.object(), seed);
    let name = a.ambient().label_name(w).to_string();
    let fail = |axiom| RepError::Axiom { seed: name.clone(), axiom };

    // unit: act ∘ (ι ⊗ id) ∘ l^{-1} = id
    let iota = a.unit_morphism(&e)?;
    let id = e.identity(&x)?;
    let m = e.apply_move(&id, &Move::UnitInsert(Side::L), &[])?;
    let m = e.apply_at(&m, &[Side::L], &iota)?;
    if e.compose(&action, &m)? != id {
        return Err(fail("unit"));
    }

    // associativity: act ∘ (μ ⊗ id) = act ∘ (id ⊗ act) ∘ α
    let ao = a.object();
    let src = Expr::node(Expr::node(ao.clone(), ao.clone()), x.clone());
    let mu = a.mu_morphism(&e)?;
    let id3 = e.identity(&src)?;
    let lhs = e.compose(&action, &e.apply_at(&id3, &[Side::L], &mu)?)?;
    let r = e.apply_move(&id3, &Move::Associator, &[])?;
    let r = e.apply_at(&r, &[Side::R], &action)?;
    let rhs = e.compose(&action, &r)?;
    if lhs != rhs {
        return Err(fail("associativity"));
    }

    Ok(InducedModule { algebra: a.clone(), seed: w, carrier: e.decompose(&x), action })
}

/// Entries of every block, in a fixed order determined by the shapes.
fn flatten(e: &Engine, m: &Morphism, out: &mut Vec<CycNumber>) {
    for c in 0..e.category().rank() {
        let (r, s) = (e.hom_dim(m.target(), c), e.hom_dim(m.source(), c));
        for i in 0..r {
            for j in 0..s {
                out.push(m.block(c).map(|b| b.get(i, j).clone()).unwrap_or_default());
            }
        }
    }
}

/// `dim Hom_{Rep A}(F(W), X)` by solving `G ∘ act_{F(W)} = act_X ∘ (id ⊗ G)`.
fn rep_hom_dim(e: &Engine, fw: &InducedModule, x: &InducedModule) -> Result<usize, RepError> {
    let (s, t) = (fw.object(), x.object());
    let ao = fw.algebra.object();
    let big = Expr::node(ao, s.clone());
    let mut rows = Vec::new();
    for c in 0..e.category().rank() {
        let sb = e.hom_basis(&s, c)?;
        let tb = e.hom_basis(&t, c)?;
        for beta in &sb {
            for gamma in &tb {
                let g = e.from_fn(&s, &t, |tr| {
                    Ok(if tr == beta { vec![(CycNumber::one(), gamma.clone())] } else { Vec::new() })
                })?;
                let lhs = e.compose(&g, &fw.action)?;
                let rhs = e.compose(&x.action, &e.whisker(&big, &[Side::R], &g)?)?;
                let diff = e.add(&lhs, &rhs.scale(&-CycNumber::one()))?;
                let mut v = Vec::new();
                flatten(e, &diff, &mut v);
                rows.push(v);
            }
        }
    }
    if rows.is_empty() {
        return Ok(0);
    }
    let n = rows.len();
    Ok(n - Matrix::from_rows(rows).rank())
}

/// `(dim Hom_{Rep A}(F(W), X), dim Hom_C(W, X))`; errors if they differ.
pub fn frobenius_dim(a: &AlgebraObject, w: Label, x: &InducedModule) -> Result<(usize, usize), RepError> {
    let e = Engine::new(a.ambient())?;
    let fw = induce(a, w)?;
    let rep = rep_hom_dim(&e, &fw, x)?;
    let fusion = x.carrier.iter().find(|(l, _)| *l == w).map_or(0, |(_, m)| *m);
    if rep != fusion {
        return Err(RepError::Adjunction {
            seed: a.ambient().label_name(w).to_string(),
            module: x.seed_name().to_string(),
            rep,
            fusion,
        });
    }
    Ok((rep, fusion))
}

/// Every `(W, X = F(W'))` pair over the ambient labels, in parallel.
pub fn frobenius_table(a: &AlgebraObject) -> Result<Vec<(Label, Label, usize)>, RepError> {
    let n = a.ambient().rank();
    let modules: Vec<InducedModule> = (0..n).into_par_iter().map(|w| induce(a, w)).collect::<Result<_, _>>()?;
    (0..n * n)
        .into_par_iter()
        .map(|t| {
            let (w, x) = (t / n, t % n);
            frobenius_dim(a, w, &modules[x]).map(|(d, _)| (w, x, d))
        })
        .collect()
}

/// `μ_X ∘ c_{X,A} ∘ c_{A,X} = μ_X`.
pub fn is_local(x: &InducedModule) -> Result<bool, RepError> {
    let e = Engine::new(x.algebra.ambient())?;
    let src = x.action.source().clone();
    let m = e.identity(&src)?;
    let m = e.apply_move(&m, &Move::Braid, &[])?;
    let m = e.apply_move(&m, &Move::Braid, &[])?;
    Ok(e.compose(&x.action, &m)? == x.action)
}

/// Output of [`key_lemma`] for one component.
#[derive(Clone, Debug)]
pub struct KeyLemma {
    pub component: usize,
    /// `Φ: F(M_{i0}) → F(M_{0i}*)`.
    pub phi: Morphism,
    /// `Ψ: F(M_{0i}*) → F(M_{i0})`.
    pub psi: Morphism,
    /// `Φ∘Ψ = scalar₁·Id`.
    pub scalar1: CycNumber,
    /// `Ψ∘Φ = scalar₂·Id`.
    pub scalar2: CycNumber,
    pub sign: i8,
    pub dim_u: CycNumber,
    pub dim_v: CycNumber,
}

fn key_hypotheses(a: &AlgebraObject) -> Result<(), RepError> {
    let comm = a.check_commutativity();
    let checks = [a.check_haploid(), a.check_dual_pair(), comm.commutativity, comm.twist, a.check_simple()];
    let failed: Vec<String> = checks.iter().filter(|v| !v.passed).map(|v| v.line()).collect();
    if failed.is_empty() { Ok(()) } else { Err(RepError::Hypothesis(failed.join("; "))) }
}

/// The isomorphism `F(M_{i0}) ≅ F(M_{0i}*)` and its two scalar identities.
pub fn key_lemma(a: &AlgebraObject, i: usize) -> Result<KeyLemma, RepError> {
    key_hypotheses(a)?;
    let (u, w) = a.factors().ok_or(AlgebraError::NotAProduct)?;
    let c = a.ambient();
    let e = Engine::new(c)?;
    let nw = w.rank();
    let pair = |x: Label, y: Label| x * nw + y;
    let (ui, vi) = a.split(i).expect("product ambient");
    let dim_u = u.qdim(ui).clone();
    let dim_v = w.qdim(vi).clone();
    if dim_u.is_zero() {
        return Err(RepError::ZeroDimension(a.component_name(i)));
    }
    let m_i0 = pair(ui, 0);
    let m_0i = pair(0, vi);
    let m_0i_dual = pair(0, w.dual(vi));
    let l_dual = pair(u.dual(ui), w.dual(vi));
    let ip = a
        .component_with_label(l_dual)
        .ok_or_else(|| RepError::Hypothesis(format!("involution undefined at {}", a.component_name(i))))?;
    let phi_i = a.mu(ip, i, 0);
    let phi_inv = phi_i
        .inverse()
        .map_err(|_| RepError::Hypothesis(format!("μ restricted to M_{{i'i'}} ⊗ M_{{ii}} → 1 vanishes at {}", a.component_name(i))))?;
    let ao = a.object();
    let labels = a.labels();
    let comp = |l: Label| a.component_with_label(l).expect("leaf of A");
    let restricted_mu = |k: usize, lab: Label| {
        e.fuse_map(&Expr::node(ao.clone(), Expr::leaf(lab)), &labels, |x, _, z| a.mu(comp(x), k, comp(z)))
    };

    // Φ
    let src = Expr::node(ao.clone(), Expr::leaf(m_i0));
    let m = e.identity(&src)?;
    let m = e.apply_move(&m, &Move::UnitInsert(Side::R), &[])?;
    let m = e.apply_move(&m, &Move::Cup(vec![m_0i]), &[Side::R])?;
    let m = e.apply_move(&m, &Move::AssociatorInverse, &[])?;
    let m = e.apply_move(&m, &Move::Associator, &[Side::L])?;
    let fuse = e.fuse_map(&Expr::node(Expr::leaf(m_i0), Expr::leaf(m_0i)), &vec![a.components()[i].label], |_, _, _| {
        CycNumber::one()
    })?;
    let m = e.apply_at(&m, &[Side::L, Side::R], &fuse)?;
    let phi = e.apply_at(&m, &[Side::L], &restricted_mu(i, a.components()[i].label)?)?;

    // Ψ, with ĩ_{M_{i0}*} = c ∘ (θ ⊗ id) ∘ i_{M_{i0}}
    let src = Expr::node(ao.clone(), Expr::leaf(m_0i_dual));
    let m = e.identity(&src)?;
    let m = e.apply_move(&m, &Move::UnitInsert(Side::R), &[])?;
    let m = e.apply_move(&m, &Move::Cup(vec![m_i0]), &[Side::R])?;
    let m = e.apply_move(&m, &Move::Twist, &[Side::R, Side::L])?;
    let m = e.apply_move(&m, &Move::Braid, &[Side::R])?;
    let m = e.apply_move(&m, &Move::AssociatorInverse, &[])?;
    let m = e.apply_move(&m, &Move::Associator, &[Side::L])?;
    let fuse = e.fuse_map(
        &Expr::node(Expr::leaf(m_0i_dual), Expr::leaf(c.dual(m_i0))),
        &vec![l_dual],
        |_, _, _| phi_inv.clone(),
    )?;
    let m = e.apply_at(&m, &[Side::L, Side::R], &fuse)?;
    let psi = e.apply_at(&m, &[Side::L], &restricted_mu(ip, l_dual)?)?;

    let pp = e.compose(&phi, &psi)?;
    let qq = e.compose(&psi, &phi)?;
    let name = a.component_name(i);
    let scalar1 = pp
        .scalar_identity()
        .ok_or_else(|| RepError::NotScalar(format!("Φ∘Ψ is not a scalar identity at {name}")))?;
    let scalar2 = qq
        .scalar_identity()
        .ok_or_else(|| RepError::NotScalar(format!("Ψ∘Φ is not a scalar identity at {name}")))?;
    let sign = if scalar2 == dim_v {
        1
    } else if scalar2 == -&dim_v {
        -1
    } else {
        return Err(RepError::NotScalar(format!("Ψ∘Φ = {scalar2}·Id is not ±d_V = ±{dim_v} at {name}")));
    };
    Ok(KeyLemma { component: i, phi, psi, scalar1, scalar2, sign, dim_u, dim_v })
}

/// Sign the Key Lemma predicts: `−1` exactly for wrong statistics on odd components.
pub fn expected_sign(a: &AlgebraObject, i: usize) -> i8 {
    if a.check_commutativity().class.is_wrong() && a.components()[i].parity == 1 { -1 } else { 1 }
}
