//! Canonical algebras and the braid-reversed equivalence they encode.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, AlgebraObject, DimensionReport, StatisticsClass, Verdict};
use crate::category::{CategoryError, Engine, Expr, Label, Move, RibbonCategory, Side};
use crate::constructions::reverse;
use crate::cyclo::CycNumber;
use crate::repa::{expected_sign, key_lemma};

/// Braiding used in the pairing that defines the canonical multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pairing {
    Braid,
    BraidInverse,
}

/// Check that `d` is compatible with `C^rev` under `tau`; returns the failures.
pub fn reversal_compatibility(c: &RibbonCategory, d: &RibbonCategory, tau: &[Label]) -> Vec<String> {
    let mut out = Vec::new();
    if tau.len() != c.rank() || d.rank() != c.rank() {
        out.push(format!("object map must be a bijection between rank {} and rank {}", c.rank(), d.rank()));
        return out;
    }
    let mut seen = vec![false; d.rank()];
    for &t in tau {
        if t >= d.rank() || seen[t] {
            out.push("object map is not a bijection".into());
            return out;
        }
        seen[t] = true;
    }
    if tau[0] != 0 {
        out.push("object map does not fix the unit".into());
    }
    for x in 0..c.rank() {
        if d.dual(tau[x]) != tau[c.dual(x)] {
            out.push(format!("duality at {}", c.label_name(x)));
        }
        let want = c.theta(x).inverse().expect("twists are invertible");
        if *d.theta(tau[x]) != want {
            out.push(format!(
                "twist at {}: θ_D = {}, expected {}",
                c.label_name(x),
                d.theta(tau[x]),
                want
            ));
        }
        for y in 0..c.rank() {
            for z in 0..c.rank() {
                if c.n(x, y, z) != d.n(tau[x], tau[y], tau[z]) {
                    out.push(format!("fusion at ({},{};{})", c.label_name(x), c.label_name(y), c.label_name(z)));
                }
            }
        }
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum CanonicalError {
    #[error("target is not braid-reverse compatible: {}", .0.join("; "))]
    Incompatible(Vec<String>),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `A = ⊕_x x* ⊠ τ(x)` in `C ⊠ D`, with `D = C^rev` and `τ = id` by default.
pub fn canonical_algebra(
    c: &RibbonCategory,
    target: Option<&RibbonCategory>,
    object_map: Option<&[Label]>,
) -> Result<AlgebraObject, CanonicalError> {
    let rev;
    let d = match target {
        Some(d) => d,
        None => {
            rev = reverse(c);
            &rev
        }
    };
    let ident: Vec<Label> = (0..c.rank()).collect();
    let tau = object_map.unwrap_or(&ident);
    let bad = reversal_compatibility(c, d, tau);
    if !bad.is_empty() {
        return Err(CanonicalError::Incompatible(bad));
    }
    let mut last = None;
    for pairing in [Pairing::Braid, Pairing::BraidInverse] {
        let a = build(c, d, tau, pairing)?;
        let comm = a.check_commutativity();
        if comm.commutativity.passed {
            return Ok(a);
        }
        last = Some(a);
    }
    Ok(last.expect("at least one pairing was tried"))
}

fn build(c: &RibbonCategory, d: &RibbonCategory, tau: &[Label], pairing: Pairing) -> Result<AlgebraObject, CanonicalError> {
    let e = Engine::new(c)?;
    let n = c.rank();
    let comps: Vec<(Label, Label, u8)> = (0..n).map(|x| (c.dual(x), tau[x], 0)).collect();
    let mut mu = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let p = pairing_values(&e, x, y, pairing)?;
            for (z, v) in p {
                mu.insert((x, y, z), v);
            }
        }
    }
    // unit normalization: rescale the unit component so that μ^{00}_0 = 1
    if let Some(u) = mu.get(&(0, 0, 0)).cloned() {
        let a0 = u.inverse().map_err(CategoryError::from)?;
        for ((i, j, _), v) in mu.iter_mut() {
            if *i == 0 || *j == 0 {
                *v = &*v * &a0;
            }
        }
    }
    let name = if d.name() == format!("rev({})", c.name()) {
        format!("canonical({})", c.name())
    } else {
        format!("canonical({} → {})", c.name(), d.name())
    };
    Ok(AlgebraObject::in_product(name, c.clone(), d.clone(), &comps, mu)?)
}

/// Values `P(z)` of the pairing `((x* y*)_{z*} (x y)_z)_1 → 1` obtained by braiding
/// `x ⊗ y` and contracting `y*` with `y`, then `x*` with `x`.
fn pairing_values(e: &Engine, x: Label, y: Label, pairing: Pairing) -> Result<Vec<(Label, CycNumber)>, CategoryError> {
    let c = e.category();
    let (xd, yd) = (c.dual(x), c.dual(y));
    let src = Expr::node(
        Expr::node(Expr::leaf(xd), Expr::leaf(yd)),
        Expr::node(Expr::leaf(x), Expr::leaf(y)),
    );
    let braid = match pairing {
        Pairing::Braid => Move::Braid,
        Pairing::BraidInverse => Move::BraidInverse,
    };
    let m = e.identity(&src)?;
    let m = e.apply_move(&m, &braid, &[Side::R])?;
    let m = e.apply_move(&m, &Move::Associator, &[])?;
    let m = e.apply_move(&m, &Move::AssociatorInverse, &[Side::R])?;
    let m = e.apply_move(&m, &Move::Cap, &[Side::R, Side::L])?;
    let m = e.apply_move(&m, &Move::UnitRemove, &[Side::R])?;
    let m = e.apply_move(&m, &Move::Cap, &[])?;
    let basis = e.hom_basis(&src, 0)?;
    let block = m.block(0);
    let mut out = Vec::new();
    for (col, t) in basis.iter().enumerate() {
        let crate::category::Tree::Node(_, _, right) = t else { unreachable!() };
        let v = block.map(|b| b.get(0, col).clone()).unwrap_or_default();
        out.push((right.label(), v));
    }
    Ok(out)
}

/// `φ_i` and the partner `i′` with `U_{i′} = U_i*`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutionEntry {
    pub component: String,
    pub partner: Option<String>,
    pub phi: Option<CycNumber>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRow {
    pub component: String,
    pub parity: u8,
    pub theta_u: CycNumber,
    pub theta_v: CycNumber,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub component: String,
    pub dim_u: CycNumber,
    pub dim_v: CycNumber,
    pub sign: i8,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyLemmaRow {
    pub component: String,
    pub scalar1: Option<CycNumber>,
    pub scalar2: Option<CycNumber>,
    pub sign: Option<i8>,
    pub expected_sign: i8,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyLemmaSection {
    /// Reason the maps were not built, when a hypothesis failed.
    pub skipped: Option<String>,
    pub rows: Vec<KeyLemmaRow>,
}

/// Everything the analyzer extracts from a qualifying algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MirrorReport {
    pub algebra: String,
    pub class: StatisticsClass,
    /// Algebra axioms assumed by the analysis.
    pub preconditions: Vec<Verdict>,
    pub hypotheses: Vec<Verdict>,
    pub involution: Vec<InvolutionEntry>,
    /// `τ(U_i) = V_i*` as label names.
    pub tau: Vec<(String, String)>,
    /// Every object map satisfying the certificates.
    pub object_maps: Vec<Vec<(String, String)>>,
    pub fusion_table: Vec<String>,
    pub twist_reversal: Vec<TwistRow>,
    pub dim_match: Vec<DimRow>,
    pub key_lemma: KeyLemmaSection,
    pub dimension: Option<DimensionReport>,
    /// Involution, fusion match, semisimplicity, dimension match, Key Lemma.
    pub derived: Vec<Verdict>,
    pub certificates: Vec<Verdict>,
}

impl MirrorReport {
    fn analysis_verdicts(&self) -> impl Iterator<Item = &Verdict> {
        let dims = self.dimension.iter().flat_map(|d| [&d.positive, &d.trace_products]);
        self.hypotheses.iter().chain(self.derived.iter()).chain(dims)
    }

    /// All preconditions, hypotheses and derived verdicts pass and the Key Lemma ran.
    pub fn passed(&self) -> bool {
        self.preconditions.iter().all(|v| v.passed)
            && self.analysis_verdicts().all(|v| v.passed)
            && self.key_lemma.skipped.is_none()
            && self.dimension.is_some()
    }

    /// Names of failing hypothesis, derived and certificate checks, without repeats.
    pub fn failing(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .analysis_verdicts()
            .chain(self.certificates.iter())
            .filter(|v| !v.passed)
            .map(|v| v.name.clone())
            .collect();
        out.dedup();
        let mut seen = std::collections::BTreeSet::new();
        out.retain(|n| seen.insert(n.clone()));
        out
    }

    pub fn render(&self) -> String {
        let mut out = format!("mirror analysis of {}\nstatistics: {}\n", self.algebra, self.class.describe());
        let mut section = |title: &str, vs: &[Verdict]| {
            out.push_str(&format!("[{title}]\n"));
            for v in vs {
                out.push_str(&v.line());
                out.push('\n');
            }
        };
        section("preconditions", &self.preconditions);
        section("hypotheses", &self.hypotheses);
        section("derived", &self.derived);
        section("certificates", &self.certificates);
        out.push_str("[involution]\n");
        for e in &self.involution {
            let partner = e.partner.as_deref().unwrap_or("undefined");
            let phi = e.phi.as_ref().map_or("-".to_string(), |p| p.to_string());
            out.push_str(&format!("{} ↦ {}  φ = {}\n", e.component, partner, phi));
        }
        out.push_str("[object map]\n");
        for (a, b) in &self.tau {
            out.push_str(&format!("{a} ↦ {b}\n"));
        }
        if self.object_maps.len() > 1 {
            out.push_str(&format!("{} object maps satisfy the certificates\n", self.object_maps.len()));
        }
        out.push_str("[fusion]\n");
        for l in &self.fusion_table {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str("[twists]\n");
        for r in &self.twist_reversal {
            out.push_str(&format!(
                "{}: θ_U = {}, θ_V = {}, parity {} {}\n",
                r.component,
                r.theta_u,
                r.theta_v,
                r.parity,
                if r.holds { "ok" } else { "FAIL" }
            ));
        }
        out.push_str("[key lemma]\n");
        if let Some(s) = &self.key_lemma.skipped {
            out.push_str(&format!("skipped: {s}\n"));
        }
        for r in &self.key_lemma.rows {
            match (&r.scalar1, &r.scalar2, r.sign) {
                (Some(a), Some(b), Some(s)) => {
                    out.push_str(&format!("{}: Φ∘Ψ = {a}, Ψ∘Φ = {b}, sign {s:+}\n", r.component))
                }
                _ => out.push_str(&format!("{}: {}\n", r.component, r.error.as_deref().unwrap_or("not computed"))),
            }
        }
        if let Some(d) = &self.dimension {
            out.push_str(&format!("dimension: {} ≈ {:.4}\n", d.value, d.approx));
            out.push_str(&d.positive.line());
            out.push('\n');
            out.push_str(&d.trace_products.line());
            out.push('\n');
        }
        out
    }
}

/// Monodromy scalar `R^{ab}_c R^{ba}_c`.
fn monodromy(c: &RibbonCategory, a: Label, b: Label, k: Label) -> CycNumber {
    c.r_scalar(a, b, k) * c.r_scalar(b, a, k)
}

/// Certificates for `σ: U ⊇ dom → W` to be (the object part of) a braid-reversed equivalence.
/// `sign[x]` is `(−1)^{parity}` of the component carrying `dom[x]`.
pub fn braid_reversal_certificates(
    u: &RibbonCategory,
    w: &RibbonCategory,
    dom: &[Label],
    sigma: &[Label],
    sign: &[i8],
) -> Vec<Verdict> {
    let (mut fusion, mut twist, mut mono) = (Vec::new(), Vec::new(), Vec::new());
    let triple = |i: usize, j: usize, k: usize| {
        format!("({},{};{})", u.label_name(dom[i]), u.label_name(dom[j]), u.label_name(dom[k]))
    };
    for x in 0..dom.len() {
        let want = signed(&u.theta(dom[x]).inverse().expect("twists are invertible"), sign[x]);
        if *w.theta(sigma[x]) != want {
            twist.push(format!("θ at {}: {} ≠ {}", u.label_name(dom[x]), w.theta(sigma[x]), want));
        }
    }
    for i in 0..dom.len() {
        for j in 0..dom.len() {
            for k in 0..dom.len() {
                let n = u.n(dom[i], dom[j], dom[k]);
                if n != w.n(sigma[i], sigma[j], sigma[k]) {
                    fusion.push(triple(i, j, k));
                }
                if n == 0 {
                    continue;
                }
                let mu = monodromy(u, dom[i], dom[j], dom[k]);
                let mw = monodromy(w, sigma[i], sigma[j], sigma[k]);
                if &mu * &mw != CycNumber::one() {
                    mono.push(triple(i, j, k));
                }
            }
        }
    }
    vec![
        Verdict::new("fusion", fusion),
        Verdict::new("twist partition", twist),
        Verdict::new("monodromy", mono),
    ]
}

fn signed(x: &CycNumber, s: i8) -> CycNumber {
    if s < 0 { -x } else { x.clone() }
}

/// All bijections `dom → cod` fixing the unit that pass every certificate.
fn consistent_maps(u: &RibbonCategory, w: &RibbonCategory, dom: &[Label], cod: &[Label], sign: &[i8]) -> Vec<Vec<Label>> {
    const LIMIT: usize = 64;
    let mut out = Vec::new();
    if dom.len() != cod.len() {
        return out;
    }
    let mut cur: Vec<Label> = Vec::new();
    let mut used = vec![false; cod.len()];
    fn ok_prefix(u: &RibbonCategory, w: &RibbonCategory, dom: &[Label], cur: &[Label], sign: &[i8]) -> bool {
        let x = cur.len() - 1;
        if (dom[x] == 0) != (cur[x] == 0) {
            return false;
        }
        let want = signed(&u.theta(dom[x]).inverse().expect("twists are invertible"), sign[x]);
        if *w.theta(cur[x]) != want {
            return false;
        }
        for i in 0..=x {
            for j in 0..=x {
                for k in 0..=x {
                    if i != x && j != x && k != x {
                        continue;
                    }
                    let n = u.n(dom[i], dom[j], dom[k]);
                    if n != w.n(cur[i], cur[j], cur[k]) {
                        return false;
                    }
                    if n > 0 && monodromy(u, dom[i], dom[j], dom[k]) * monodromy(w, cur[i], cur[j], cur[k]) != CycNumber::one() {
                        return false;
                    }
                }
            }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        u: &RibbonCategory,
        w: &RibbonCategory,
        dom: &[Label],
        cod: &[Label],
        sign: &[i8],
        cur: &mut Vec<Label>,
        used: &mut [bool],
        out: &mut Vec<Vec<Label>>,
    ) {
        if out.len() >= LIMIT {
            return;
        }
        if cur.len() == dom.len() {
            out.push(cur.clone());
            return;
        }
        for t in 0..cod.len() {
            if used[t] {
                continue;
            }
            cur.push(cod[t]);
            if ok_prefix(u, w, dom, cur, sign) {
                used[t] = true;
                go(u, w, dom, cod, sign, cur, used, out);
                used[t] = false;
            }
            cur.pop();
        }
    }
    go(u, w, dom, cod, sign, &mut cur, &mut used, &mut out);
    out
}

/// Extract `i ↦ i′`, `τ` and the numerical invariants of the braid-reversed equivalence.
pub fn mirror_analyze(a: &AlgebraObject) -> Result<MirrorReport, AlgebraError> {
    let (u, w) = a.factors().ok_or(AlgebraError::NotAProduct)?;
    let n = a.components().len();
    let split: Vec<(Label, Label)> = (0..n).map(|i| a.split(i).unwrap()).collect();
    let parity: Vec<u8> = a.components().iter().map(|c| c.parity).collect();
    let cname = |i: usize| a.component_name(i);
    let comm = a.check_commutativity();
    let class = comm.class;

    let preconditions = vec![
        a.check_unit(),
        a.check_associativity(),
        comm.commutativity.clone(),
        comm.parity.clone(),
        a.check_even(),
    ];

    // hypotheses
    let mut dup_u = Vec::new();
    for i in 0..n {
        for j in 0..i {
            if split[i].0 == split[j].0 {
                dup_u.push(format!("{} and {} share {}", cname(j), cname(i), u.label_name(split[i].0)));
            }
        }
    }
    let twist_reversal: Vec<TwistRow> = (0..n)
        .map(|i| {
            let (x, y) = split[i];
            let want = signed(&u.theta(x).inverse().expect("twists are invertible"), if parity[i] == 1 { -1 } else { 1 });
            TwistRow {
                component: cname(i),
                parity: parity[i],
                theta_u: u.theta(x).clone(),
                theta_v: w.theta(y).clone(),
                holds: *w.theta(y) == want,
            }
        })
        .collect();
    let mut partition = Vec::new();
    for r in &twist_reversal {
        if !r.holds {
            partition.push(format!("{}: θ_V = {} but θ_U^-1 = {} (parity {})", r.component, r.theta_v, r.theta_u.inverse()?, r.parity));
        }
    }
    if partition.is_empty() && class == StatisticsClass::None {
        partition.push("twists match the parities but no statistics class fits the sign law".into());
    }
    let hypotheses = vec![
        a.check_haploid(),
        a.check_dual_pair(),
        Verdict::new("distinct simple U_i", dup_u),
        Verdict::new("twist partition", partition),
        a.check_simple(),
    ];

    // involution
    let mut inv_fail = Vec::new();
    let partner: Vec<Option<usize>> = (0..n)
        .map(|i| {
            let want = u.dual(split[i].0);
            let hits: Vec<usize> = (0..n).filter(|&j| split[j].0 == want).collect();
            match hits.as_slice() {
                [j] => Some(*j),
                _ => {
                    inv_fail.push(format!("involution undefined at {}", cname(i)));
                    None
                }
            }
        })
        .collect();
    let mut involution = Vec::new();
    for i in 0..n {
        let phi = partner[i].map(|j| a.mu(j, i, 0));
        if let Some(j) = partner[i] {
            if split[j].1 != w.dual(split[i].1) {
                inv_fail.push(format!("V at {} is not dual to V at {}", cname(j), cname(i)));
            }
            if partner[j] != Some(i) {
                inv_fail.push(format!("not an involution at {}", cname(i)));
            }
            if parity[j] != parity[i] {
                inv_fail.push(format!("parity differs between {} and {}", cname(i), cname(j)));
            }
            if phi.as_ref().is_some_and(CycNumber::is_zero) {
                inv_fail.push(format!("φ vanishes at {}", cname(i)));
            }
        }
        involution.push(InvolutionEntry { component: cname(i), partner: partner[i].map(cname), phi });
    }
    if partner[0] != Some(0) {
        inv_fail.push("involution does not fix the unit".into());
    }

    // τ(U_i) = V_i*
    let dom: Vec<Label> = split.iter().map(|p| p.0).collect();
    let sigma: Vec<Label> = split.iter().map(|p| w.dual(p.1)).collect();
    let tau: Vec<(String, String)> =
        (0..n).map(|i| (u.label_name(dom[i]).to_string(), w.label_name(sigma[i]).to_string())).collect();

    // V_j ⊗ V_i ≅ ⊕_k N^{u_k*}_{u_j u_i} V_{k′}
    let mut fusion_fail = Vec::new();
    let mut fusion_table = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut lhs = vec![0u32; w.rank()];
            for z in w.fuse(split[j].1, split[i].1) {
                lhs[z] += w.n(split[j].1, split[i].1, z);
            }
            let mut rhs = vec![0u32; w.rank()];
            for k in 0..n {
                let m = u.n(split[j].0, split[i].0, u.dual(split[k].0));
                if m > 0 {
                    let v = partner[k].map_or(w.dual(split[k].1), |kp| split[kp].1);
                    rhs[v] += m;
                }
            }
            let show = |v: &[u32]| {
                let parts: Vec<String> = (0..v.len())
                    .filter(|&z| v[z] > 0)
                    .map(|z| if v[z] == 1 { w.label_name(z).to_string() } else { format!("{}·{}", v[z], w.label_name(z)) })
                    .collect();
                if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }
            };
            let (vj, vi) = (w.label_name(split[j].1), w.label_name(split[i].1));
            fusion_table.push(format!("{vj} ⊗ {vi} = {}", show(&lhs)));
            if lhs != rhs {
                fusion_fail.push(format!("{vj} ⊗ {vi} = {} but the U side predicts {}", show(&lhs), show(&rhs)));
            }
        }
    }

    let mut dup_v = Vec::new();
    for i in 0..n {
        for j in 0..i {
            if split[i].1 == split[j].1 {
                dup_v.push(format!("{} and {} share {}", cname(j), cname(i), w.label_name(split[i].1)));
            }
        }
    }

    let dim_match: Vec<DimRow> = (0..n)
        .map(|i| {
            let sign = expected_sign(a, i);
            let (du, dv) = (u.qdim(split[i].0).clone(), w.qdim(split[i].1).clone());
            DimRow { component: cname(i), holds: du == signed(&dv, sign), dim_u: du, dim_v: dv, sign }
        })
        .collect();
    let dim_fail =
        dim_match.iter().filter(|r| !r.holds).map(|r| format!("{}: d_U = {}, d_V = {}", r.component, r.dim_u, r.dim_v)).collect();

    // Key Lemma, only under its hypotheses
    let blocked: Vec<String> = preconditions
        .iter()
        .chain(hypotheses.iter())
        .filter(|v| !v.passed)
        .map(|v| v.name.clone())
        .collect();
    let key = if blocked.is_empty() {
        let rows: Vec<KeyLemmaRow> = (0..n)
            .into_par_iter()
            .map(|i| {
                let expected_sign = expected_sign(a, i);
                match key_lemma(a, i) {
                    Ok(k) => KeyLemmaRow {
                        component: cname(i),
                        error: (k.scalar1 != k.dim_u || k.sign != expected_sign).then(|| {
                            format!("expected Φ∘Ψ = {} and sign {expected_sign:+}", k.dim_u)
                        }),
                        scalar1: Some(k.scalar1),
                        scalar2: Some(k.scalar2),
                        sign: Some(k.sign),
                        expected_sign,
                    },
                    Err(e) => KeyLemmaRow {
                        component: cname(i),
                        scalar1: None,
                        scalar2: None,
                        sign: None,
                        expected_sign,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect();
        KeyLemmaSection { skipped: None, rows }
    } else {
        KeyLemmaSection { skipped: Some(format!("hypotheses failed: {}", blocked.join(", "))), rows: Vec::new() }
    };
    let key_fail: Vec<String> =
        key.rows.iter().filter_map(|r| r.error.as_ref().map(|e| format!("{}: {e}", r.component))).collect();

    let mut derived = vec![
        Verdict::new("involution", inv_fail),
        Verdict::new("fusion match", fusion_fail),
        Verdict::new("W semisimple", dup_v),
        Verdict::new("dimension match", dim_fail),
    ];
    if key.skipped.is_none() {
        derived.push(Verdict::new("key lemma", key_fail));
    }

    let signs: Vec<i8> = parity.iter().map(|&p| if p == 1 { -1 } else { 1 }).collect();
    let certificates = braid_reversal_certificates(u, w, &dom, &sigma, &signs);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| dom[i]);
    let dom_sorted: Vec<Label> = order.iter().map(|&i| dom[i]).collect();
    let sign_sorted: Vec<i8> = order.iter().map(|&i| signs[i]).collect();
    let mut cod: Vec<Label> = sigma.clone();
    cod.sort_unstable();
    cod.dedup();
    let object_maps = consistent_maps(u, w, &dom_sorted, &cod, &sign_sorted)
        .into_iter()
        .map(|m| {
            dom_sorted.iter().zip(m).map(|(&x, y)| (u.label_name(x).to_string(), w.label_name(y).to_string())).collect()
        })
        .collect();

    Ok(MirrorReport {
        algebra: a.name().to_string(),
        class,
        preconditions,
        hypotheses,
        involution,
        tau,
        object_maps,
        fusion_table,
        twist_reversal,
        dim_match,
        key_lemma: key,
        dimension: a.categorical_dimension().ok(),
        derived,
        certificates,
    })
}

/// Outcome of [`certify_braid_reversal`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub certified: bool,
    pub verdicts: Vec<Verdict>,
}

impl Certification {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&v.line());
            out.push('\n');
        }
        out.push_str(if self.certified { "braid-reversed equivalence: certified\n" } else { "braid-reversed equivalence: not certified\n" });
        out
    }
}

/// Requires an all-pass report and the fusion, twist and monodromy certificates for `τ`.
pub fn certify_braid_reversal(report: &MirrorReport) -> Certification {
    let mut verdicts = Vec::new();
    let failing: Vec<String> = report
        .preconditions
        .iter()
        .chain(report.analysis_verdicts())
        .filter(|v| !v.passed)
        .map(|v| v.name.clone())
        .collect();
    let mut pre = failing.iter().map(|n| format!("{n} failed")).collect::<Vec<_>>();
    if let Some(s) = &report.key_lemma.skipped {
        pre.push(format!("key lemma {s}"));
    }
    verdicts.push(Verdict::new("report", pre));
    verdicts.extend(report.certificates.iter().cloned());
    let certified = verdicts.iter().all(|v| v.passed);
    Certification { certified, verdicts }
}

/// Certificates for a label bijection `tau: C → D` between whole categories.
pub fn certify_categories(c: &RibbonCategory, d: &RibbonCategory, tau: &[Label]) -> Certification {
    let dom: Vec<Label> = (0..c.rank()).collect();
    let mut verdicts = Vec::new();
    if tau.len() != c.rank() || c.rank() != d.rank() {
        verdicts.push(Verdict::new("object map", vec!["not a bijection".into()]));
    } else {
        verdicts = braid_reversal_certificates(c, d, &dom, tau, &vec![1; c.rank()]);
    }
    let certified = verdicts.iter().all(|v| v.passed);
    Certification { certified, verdicts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{builtin, deligne_product, fib, BUILTIN_NAMES};

    #[test]
    fn canonical_algebras_pass_the_battery() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            let a = canonical_algebra(&c, None, None).unwrap();
            let r = a.report();
            assert!(r.passed(), "{name}\n{}", r.render());
        }
    }

    #[test]
    fn round_trip_on_builtins() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            let a = canonical_algebra(&c, None, None).unwrap();
            let r = mirror_analyze(&a).unwrap();
            assert!(r.passed(), "{}", r.render());
            assert!(certify_braid_reversal(&r).certified, "{}", r.render());
            for (i, e) in r.involution.iter().enumerate() {
                assert_eq!(e.partner.as_deref(), Some(a.component_name(a.dual_component(i).unwrap()).as_str()));
            }
            // τ(x*) = x*
            for (x, y) in &r.tau {
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn fib_against_fib_fails_monodromy() {
        let c = fib();
        let cert = certify_categories(&c, &c, &[0, 1]);
        assert!(!cert.certified);
        let mono = cert.verdicts.iter().find(|v| v.name == "monodromy").unwrap();
        assert!(mono.details.contains(&"(τ,τ;τ)".to_string()));
        assert!(certify_categories(&c, &reverse(&c), &[0, 1]).certified);
    }

    #[test]
    fn z3_forms_are_braid_reversed() {
        let c = builtin("pointed:3:1").unwrap();
        let d = builtin("pointed:3:-1").unwrap();
        assert!(certify_categories(&c, &d, &[0, 1, 2]).certified);
    }

    #[test]
    fn report_json_round_trip() {
        let a = canonical_algebra(&builtin("ising").unwrap(), None, None).unwrap();
        let r = mirror_analyze(&a).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: MirrorReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn non_reversed_product_fails_twist_and_monodromy() {
        let c = fib();
        let canon = canonical_algebra(&c, None, None).unwrap();
        let a = canon
            .with_twisted_ambient(deligne_product(&c, &c).unwrap(), Some((c.clone(), c.clone())))
            .unwrap();
        let r = mirror_analyze(&a).unwrap();
        assert_eq!(r.failing(), vec!["twist partition".to_string(), "monodromy".to_string()], "{}", r.render());
    }
}
