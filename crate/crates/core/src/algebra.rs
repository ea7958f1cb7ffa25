//! Commutative algebra objects in a ribbon category or a Deligne product.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{parse_key, CategoryError, Engine, Expr, Label, Morphism, Move, RibbonCategory, Side, Tree};
use crate::constructions::{deligne_product, reverse};
use crate::cyclo::{is_real_positive_with_cap, CycError, CycNumber, DEFAULT_PRECISION_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("ambient category is not a Deligne product")]
    NotAProduct,
    #[error("components repeat an ambient label: {0}")]
    RepeatedLabel(String),
    #[error("non-real dimension: {0}")]
    NonReal(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: Label,
    pub parity: u8,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl Verdict {
    pub fn new(name: &str, details: Vec<String>) -> Self {
        Verdict { name: name.to_string(), passed: details.is_empty(), details }
    }

    pub fn line(&self) -> String {
        let mut s = format!("{}: {}", self.name, if self.passed { "pass" } else { "FAIL" });
        if !self.details.is_empty() {
            s.push_str(&format!(" ({})", self.details.join("; ")));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatisticsClass {
    CorrectAlgebra,
    WrongAlgebra,
    CorrectSuperalgebra,
    WrongSuperalgebra,
    None,
}

impl StatisticsClass {
    pub fn is_wrong(self) -> bool {
        matches!(self, StatisticsClass::WrongAlgebra | StatisticsClass::WrongSuperalgebra)
    }

    pub fn describe(self) -> &'static str {
        match self {
            StatisticsClass::CorrectAlgebra => "algebra of correct statistics",
            StatisticsClass::WrongAlgebra => "algebra of wrong statistics",
            StatisticsClass::CorrectSuperalgebra => "superalgebra of correct statistics",
            StatisticsClass::WrongSuperalgebra => "superalgebra of wrong statistics",
            StatisticsClass::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutativityReport {
    pub commutativity: Verdict,
    pub twist: Verdict,
    pub parity: Verdict,
    pub class: StatisticsClass,
    /// Parity read off the twist, `None` where θ is not ±1.
    pub twist_parity: Vec<Option<u8>>,
    /// Parity read off the braiding sign on the pairing with the dual component.
    pub braid_parity: Vec<Option<u8>>,
}

/// `table[i][j]` lists the components `k` with nonzero `μ^{ij}_k`.
pub type MultiplicationTable = Vec<Vec<BTreeSet<usize>>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub value: CycNumber,
    pub approx: f64,
    pub positive: Verdict,
    pub trace_products: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub algebra: String,
    pub components: Vec<String>,
    pub verdicts: Vec<Verdict>,
    pub class: StatisticsClass,
    pub multiplication: Vec<String>,
    pub dimension: Option<DimensionReport>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed) && self.dimension.as_ref().is_none_or(|d| d.positive.passed && d.trace_products.passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("algebra {}\ncomponents: {}\n", self.algebra, self.components.join(", "));
        for v in &self.verdicts {
            out.push_str(&v.line());
            out.push('\n');
        }
        out.push_str(&format!("statistics: {}\n", self.class.describe()));
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

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraObject {
    name: String,
    ambient: RibbonCategory,
    factors: Option<Box<(RibbonCategory, RibbonCategory)>>,
    components: Vec<Component>,
    mu: BTreeMap<(usize, usize, usize), CycNumber>,
}

impl AlgebraObject {
    /// An algebra in `ambient`; `mu[(i, j, k)]` is keyed by component indices.
    pub fn new(
        name: impl Into<String>,
        ambient: RibbonCategory,
        components: Vec<Component>,
        mu: BTreeMap<(usize, usize, usize), CycNumber>,
    ) -> Result<Self, AlgebraError> {
        let a = AlgebraObject { name: name.into(), ambient, factors: None, components, mu };
        a.check_shape()?;
        Ok(a)
    }

    /// An algebra in `u ⊠ w`; components are given as `(u_label, v_label, parity)`.
    pub fn in_product(
        name: impl Into<String>,
        u: RibbonCategory,
        w: RibbonCategory,
        components: &[(Label, Label, u8)],
        mu: BTreeMap<(usize, usize, usize), CycNumber>,
    ) -> Result<Self, AlgebraError> {
        let ambient = deligne_product(&u, &w)?;
        let nw = w.rank();
        let components = components
            .iter()
            .map(|&(a, b, parity)| Component { label: a * nw + b, parity })
            .collect();
        let a = AlgebraObject { name: name.into(), ambient, factors: Some(Box::new((u, w))), components, mu };
        a.check_shape()?;
        Ok(a)
    }

    fn check_shape(&self) -> Result<(), AlgebraError> {
        let n = self.components.len();
        let mal = |m: String| Err(AlgebraError::Malformed(m));
        match self.components.first() {
            Some(Component { label: 0, parity: 0 }) => {}
            _ => return mal("the first component must be the unit with parity 0".into()),
        }
        for c in &self.components {
            if c.label >= self.ambient.rank() || c.parity > 1 {
                return mal(format!("bad component {c:?}"));
            }
        }
        for (&(i, j, k), v) in &self.mu {
            if i >= n || j >= n || k >= n {
                return mal(format!("mu key ({i},{j};{k}) out of range"));
            }
            let (a, b, c) = (self.components[i].label, self.components[j].label, self.components[k].label);
            if !v.is_zero() && self.ambient.n(a, b, c) == 0 {
                return mal(format!("mu ({i},{j};{k}) is nonzero but N = 0"));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &RibbonCategory {
        &self.ambient
    }

    pub fn factors(&self) -> Option<(&RibbonCategory, &RibbonCategory)> {
        self.factors.as_deref().map(|(u, w)| (u, w))
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn mu_entries(&self) -> &BTreeMap<(usize, usize, usize), CycNumber> {
        &self.mu
    }

    pub fn mu(&self, i: usize, j: usize, k: usize) -> CycNumber {
        self.mu.get(&(i, j, k)).cloned().unwrap_or_default()
    }

    pub fn set_mu(&mut self, i: usize, j: usize, k: usize, v: CycNumber) {
        self.mu.insert((i, j, k), v);
    }

    /// Drop component `i` together with every μ entry touching it.
    pub fn without_component(&self, i: usize) -> Result<Self, AlgebraError> {
        let remap = |x: usize| if x > i { x - 1 } else { x };
        let mut out = self.clone();
        out.components.remove(i);
        out.mu = self
            .mu
            .iter()
            .filter(|((a, b, c), _)| *a != i && *b != i && *c != i)
            .map(|(&(a, b, c), v)| ((remap(a), remap(b), remap(c)), v.clone()))
            .collect();
        out.name = format!("{} without component {i}", self.name);
        out.check_shape()?;
        Ok(out)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_twisted_ambient(&self, ambient: RibbonCategory, factors: Option<(RibbonCategory, RibbonCategory)>) -> Result<Self, AlgebraError> {
        let mut out = self.clone();
        out.ambient = ambient;
        out.factors = factors.map(Box::new);
        out.check_shape()?;
        Ok(out)
    }

    /// `(u, v)` labels of a component in the product ambient.
    pub fn split(&self, i: usize) -> Option<(Label, Label)> {
        let (_, w) = self.factors()?;
        let l = self.components[i].label;
        Some((l / w.rank(), l % w.rank()))
    }

    pub fn component_name(&self, i: usize) -> String {
        self.ambient.label_name(self.components[i].label).to_string()
    }

    pub fn component_names(&self) -> Vec<String> {
        (0..self.components.len())
            .map(|i| {
                let p = self.components[i].parity;
                if p == 0 { self.component_name(i) } else { format!("{}[odd]", self.component_name(i)) }
            })
            .collect()
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut v: Vec<Label> = self.components.iter().map(|c| c.label).collect();
        v.sort_unstable();
        v
    }

    fn component_of(&self) -> Result<HashMap<Label, usize>, AlgebraError> {
        let mut m = HashMap::new();
        for (i, c) in self.components.iter().enumerate() {
            if m.insert(c.label, i).is_some() {
                return Err(AlgebraError::RepeatedLabel(self.ambient.label_name(c.label).to_string()));
            }
        }
        Ok(m)
    }

    /// Index of the component carrying ambient label `l`.
    pub fn component_with_label(&self, l: Label) -> Option<usize> {
        self.components.iter().position(|c| c.label == l)
    }

    /// The leaf object `A`.
    pub fn object(&self) -> Expr {
        Expr::sum(self.labels())
    }

    /// `μ: A ⊗ A → A`.
    pub fn mu_morphism(&self, e: &Engine) -> Result<Morphism, AlgebraError> {
        let comp = self.component_of()?;
        let a = self.object();
        Ok(e.fuse_map(&Expr::node(a.clone(), a), &self.labels(), |x, y, z| {
            self.mu(comp[&x], comp[&y], comp[&z])
        })?)
    }

    /// `ι: 1 → A`.
    pub fn unit_morphism(&self, e: &Engine) -> Result<Morphism, AlgebraError> {
        Ok(e.leaf_map(&vec![0], &self.labels(), |_| CycNumber::one())?)
    }

    /// `ε: A → 1`, the projection to the unit component.
    pub fn counit(&self, e: &Engine) -> Result<Morphism, AlgebraError> {
        Ok(e.leaf_map(&self.labels(), &vec![0], |_| CycNumber::one())?)
    }

    pub fn check_unit(&self) -> Verdict {
        let mut details = Vec::new();
        for k in 0..self.components.len() {
            for (left, v) in [(true, self.mu(0, k, k)), (false, self.mu(k, 0, k))] {
                if !v.is_one() {
                    details.push(format!(
                        "{} unit at {}: μ = {v}",
                        if left { "left" } else { "right" },
                        self.component_name(k)
                    ));
                }
            }
        }
        if details.is_empty() {
            // the same statement through the engine
            match self.engine_unit_check() {
                Ok(true) => {}
                Ok(false) => details.push("engine evaluation of μ∘(ι⊗id) differs from id".into()),
                Err(e) => details.push(e.to_string()),
            }
        }
        Verdict::new("unit", details)
    }

    fn engine_unit_check(&self) -> Result<bool, AlgebraError> {
        let e = Engine::new(&self.ambient)?;
        let a = self.object();
        let mu = self.mu_morphism(&e)?;
        let iota = self.unit_morphism(&e)?;
        let id = e.identity(&a)?;
        let mut ok = true;
        for side in [Side::L, Side::R] {
            let m = e.apply_move(&id, &Move::UnitInsert(side), &[])?;
            let m = e.apply_at(&m, &[side], &iota)?;
            let m = e.compose(&mu, &m)?;
            ok &= m == id;
        }
        Ok(ok)
    }

    pub fn check_associativity(&self) -> Verdict {
        match self.associativity_failures() {
            Ok(d) => Verdict::new("associativity", d),
            Err(e) => Verdict::new("associativity", vec![e.to_string()]),
        }
    }

    fn associativity_failures(&self) -> Result<Vec<String>, AlgebraError> {
        let e = Engine::new(&self.ambient)?;
        let a = self.object();
        let mu = self.mu_morphism(&e)?;
        let src = Expr::node(Expr::node(a.clone(), a.clone()), a.clone());
        let id = e.identity(&src)?;
        // μ ∘ (μ ⊗ id)
        let lhs = e.compose(&mu, &e.apply_at(&id, &[Side::L], &mu)?)?;
        // μ ∘ (id ⊗ μ) ∘ α
        let r = e.apply_move(&id, &Move::Associator, &[])?;
        let r = e.apply_at(&r, &[Side::R], &mu)?;
        let rhs = e.compose(&mu, &r)?;
        let mut out = Vec::new();
        for c in self.labels() {
            let (Some(l), Some(r)) = (lhs.block(c), rhs.block(c)) else { continue };
            let basis = e.hom_basis(&src, c)?;
            for (col, t) in basis.iter().enumerate() {
                if (0..l.rows()).any(|row| l.get(row, col) != r.get(row, col)) {
                    let Tree::Node(_, ab, z) = t else { unreachable!() };
                    let Tree::Node(_, x, y) = ab.as_ref() else { unreachable!() };
                    let nm = |t: &Tree| self.ambient.label_name(t.label()).to_string();
                    out.push(format!("({},{},{};{})", nm(x), nm(y), nm(z), self.ambient.label_name(c)));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Component `j` whose label is dual to that of component `i`.
    pub fn dual_component(&self, i: usize) -> Option<usize> {
        let d = self.ambient.dual(self.components[i].label);
        self.component_with_label(d)
    }

    pub fn check_commutativity(&self) -> CommutativityReport {
        let n = self.components.len();
        let c = &self.ambient;
        let p = |i: usize| self.components[i].parity;
        let mut plain = Vec::new();
        let mut sup = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, z) = (self.components[i].label, self.components[j].label, self.components[k].label);
                    if c.n(a, b, z) == 0 {
                        continue;
                    }
                    // μ ∘ c on the tree (a b)_z
                    let lhs = &c.r_scalar(a, b, z) * &self.mu(j, i, k);
                    let rhs = self.mu(i, j, k);
                    let at = || format!("({},{};{})", self.component_name(i), self.component_name(j), self.component_name(k));
                    if lhs != rhs {
                        plain.push(at());
                    }
                    let s = if p(i) * p(j) == 1 { -&rhs } else { rhs };
                    if lhs != s {
                        sup.push(at());
                    }
                }
            }
        }
        let theta = |i: usize| c.theta(self.components[i].label);
        let twist_parity: Vec<Option<u8>> = (0..n)
            .map(|i| {
                let t = theta(i);
                if t.is_one() {
                    Some(0)
                } else if (t + &CycNumber::one()).is_zero() {
                    Some(1)
                } else {
                    None
                }
            })
            .collect();
        let braid_parity: Vec<Option<u8>> = (0..n)
            .map(|i| {
                let j = self.dual_component(i)?;
                let (a, b) = (self.components[i].label, self.components[j].label);
                let rhs = self.mu(i, j, 0);
                if rhs.is_zero() {
                    return None;
                }
                let lhs = &c.r_scalar(a, b, 0) * &self.mu(j, i, 0);
                if lhs == rhs {
                    Some(0)
                } else if lhs == -&rhs {
                    Some(1)
                } else {
                    None
                }
            })
            .collect();
        let odd_exists = self.components.iter().any(|c| c.parity == 1);
        let trivial_twist = (0..n).all(|i| theta(i).is_one());
        let parity_twist = (0..n).all(|i| twist_parity[i] == Some(p(i)));
        let class = match (plain.is_empty(), sup.is_empty()) {
            (true, _) if trivial_twist => StatisticsClass::CorrectAlgebra,
            (true, _) if parity_twist && odd_exists => StatisticsClass::WrongAlgebra,
            (_, true) if parity_twist && odd_exists => StatisticsClass::CorrectSuperalgebra,
            (_, true) if trivial_twist && odd_exists => StatisticsClass::WrongSuperalgebra,
            _ => StatisticsClass::None,
        };
        let commutativity = if plain.is_empty() || sup.is_empty() {
            Verdict::new("commutativity", Vec::new())
        } else if odd_exists {
            Verdict::new("commutativity", sup.iter().map(|s| format!("super sign law fails at {s}")).collect())
        } else {
            Verdict::new("commutativity", plain.iter().map(|s| format!("μ∘R ≠ μ at {s}")).collect())
        };
        let mut twist_details = Vec::new();
        if class == StatisticsClass::None {
            for i in 0..n {
                let expected_one = trivial_twist || (!parity_twist && p(i) == 0);
                let want = if expected_one || p(i) == 0 { CycNumber::one() } else { -CycNumber::one() };
                if *theta(i) != want {
                    twist_details.push(format!("θ at {} = {} (parity {})", self.component_name(i), theta(i), p(i)));
                }
            }
            if twist_details.is_empty() {
                twist_details.push("twist pattern incompatible with the sign law".into());
            }
        }
        let twist = Verdict::new("twist", twist_details);
        let declared: Vec<Option<u8>> = (0..n).map(|i| Some(p(i))).collect();
        let parity = if declared == twist_parity || declared == braid_parity {
            Verdict::new("parity", Vec::new())
        } else {
            Verdict::new(
                "parity",
                vec![format!(
                    "declared {:?} matches neither twist {:?} nor braiding {:?}",
                    declared, twist_parity, braid_parity
                )],
            )
        };
        CommutativityReport { commutativity, twist, parity, class, twist_parity, braid_parity }
    }

    /// Parity is additive under nonzero μ.
    pub fn check_even(&self) -> Verdict {
        let details = self
            .mu
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .filter(|((i, j, k), _)| {
                (self.components[*i].parity + self.components[*j].parity) % 2 != self.components[*k].parity
            })
            .map(|((i, j, k), _)| format!("({},{};{})", self.component_name(*i), self.component_name(*j), self.component_name(*k)))
            .collect();
        Verdict::new("even multiplication", details)
    }

    pub fn check_distinct(&self) -> Verdict {
        let mut seen = HashMap::new();
        let mut details = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            if let Some(j) = seen.insert(c.label, i) {
                details.push(format!("components {j} and {i} both carry {}", self.component_name(i)));
            }
        }
        Verdict::new("distinct components", details)
    }

    pub fn check_haploid(&self) -> Verdict {
        let units = self.components.iter().filter(|c| c.label == 0).count();
        if units == 1 {
            Verdict::new("haploid", Vec::new())
        } else {
            Verdict::new("haploid", vec![format!("unit occurs {units} times")])
        }
    }

    pub fn check_dual_pair(&self) -> Verdict {
        let Some((u, w)) = self.factors() else {
            return Verdict::new("dual pair", vec!["ambient is not a Deligne product".into()]);
        };
        let mut details = Vec::new();
        for i in 1..self.components.len() {
            let (a, b) = self.split(i).unwrap();
            if a == 0 && b != 0 {
                details.push(format!("W side: {} pairs the unit of U with {}", self.component_name(i), w.label_name(b)));
            } else if b == 0 && a != 0 {
                details.push(format!("U side: {} pairs {} with the unit of W", self.component_name(i), u.label_name(a)));
            }
        }
        Verdict::new("dual pair", details)
    }

    /// `table[i][j]` = components `k` with `μ^{ij}_k ≠ 0`.
    pub fn multiplication_rules(&self) -> MultiplicationTable {
        let n = self.components.len();
        let mut t = vec![vec![BTreeSet::new(); n]; n];
        for (&(i, j, k), v) in &self.mu {
            if !v.is_zero() {
                t[i][j].insert(k);
            }
        }
        t
    }

    /// Minimal nonzero ideals other than `A` itself; empty iff `A` is simple.
    pub fn proper_ideals(&self) -> Vec<BTreeSet<usize>> {
        let n = self.components.len();
        let table = self.multiplication_rules();
        let closure = |s: usize| {
            let mut set = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for j in 0..n {
                    for &k in &table[j][x] {
                        if set.insert(k) {
                            stack.push(k);
                        }
                    }
                }
            }
            set
        };
        let closures: Vec<BTreeSet<usize>> = (1..n).map(closure).filter(|s| s.len() < n).collect();
        let mut minimal: Vec<BTreeSet<usize>> = closures
            .iter()
            .filter(|s| !closures.iter().any(|t| t.len() < s.len() && t.is_subset(s)))
            .cloned()
            .collect();
        minimal.sort();
        minimal.dedup();
        minimal
    }

    pub fn check_simple(&self) -> Verdict {
        let details = self
            .proper_ideals()
            .into_iter()
            .map(|s| {
                let names: Vec<String> = s.iter().map(|&i| self.component_name(i)).collect();
                format!("ideal {{{}}}", names.join(", "))
            })
            .collect();
        Verdict::new("simple", details)
    }

    pub fn categorical_dimension(&self) -> Result<DimensionReport, AlgebraError> {
        let (u, w) = self.factors().ok_or(AlgebraError::NotAProduct)?;
        let urev = reverse(u);
        let mut value = CycNumber::zero();
        let mut bad = Vec::new();
        for i in 0..self.components.len() {
            let (a, b) = self.split(i).unwrap();
            value = &value + &(u.qdim(a) * w.qdim(b));
            // Tr_{U_i} · Tr_{U_i'} computed in U^rev
            let tp = u.qdim(a) * urev.qdim(u.dual(a));
            match is_real_positive_with_cap(&tp, DEFAULT_PRECISION_CAP) {
                Ok(true) => {}
                Ok(false) => bad.push(format!("{}: {tp}", self.component_name(i))),
                Err(e) => bad.push(format!("{}: {e}", self.component_name(i))),
            }
        }
        let positive = match is_real_positive_with_cap(&value, DEFAULT_PRECISION_CAP) {
            Ok(true) => Verdict::new("dimension positive", Vec::new()),
            Ok(false) => Verdict::new("dimension positive", vec![format!("{value} is not positive")]),
            Err(CycError::NotReal(s)) => return Err(AlgebraError::NonReal(s)),
            Err(e) => return Err(e.into()),
        };
        Ok(DimensionReport {
            approx: value.to_complex().re,
            value,
            positive,
            trace_products: Verdict::new("trace products positive", bad),
        })
    }

    /// The full verdict battery.
    pub fn report(&self) -> AlgebraReport {
        let comm = self.check_commutativity();
        let mut verdicts = vec![
            self.check_distinct(),
            self.check_unit(),
            self.check_associativity(),
            comm.commutativity.clone(),
            comm.twist.clone(),
            comm.parity.clone(),
            self.check_even(),
        ];
        if self.factors().is_some() {
            verdicts.push(self.check_haploid());
            verdicts.push(self.check_dual_pair());
        }
        verdicts.push(self.check_simple());
        let table = self.multiplication_rules();
        let mut multiplication = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, ks) in row.iter().enumerate() {
                if !ks.is_empty() {
                    let names: Vec<String> = ks.iter().map(|&k| self.component_name(k)).collect();
                    multiplication.push(format!("{} · {} → {}", self.component_name(i), self.component_name(j), names.join(" + ")));
                }
            }
        }
        let dimension = match self.categorical_dimension() {
            Ok(d) => Some(d),
            Err(AlgebraError::NotAProduct) => None,
            Err(e) => {
                verdicts.push(Verdict::new("dimension", vec![e.to_string()]));
                None
            }
        };
        AlgebraReport {
            algebra: self.name.clone(),
            components: self.component_names(),
            verdicts,
            class: comm.class,
            multiplication,
            dimension,
        }
    }
}

/// Reference to a category inside an algebra file: a builtin name, a path, or inline data.
pub type CategoryRef = serde_json::Value;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Ambient {
    Product { u: CategoryRef, w: CategoryRef },
    Single { category: CategoryRef },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub ambient: Ambient,
    /// `[u, v, parity]` for a product ambient, `[label, parity]` otherwise.
    pub components: Vec<Vec<serde_json::Value>>,
    pub mu: BTreeMap<String, CycNumber>,
}

fn as_str(v: &serde_json::Value) -> Result<String, AlgebraError> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(AlgebraError::Malformed(format!("expected a label, found {other}"))),
    }
}

fn as_parity(v: &serde_json::Value) -> Result<u8, AlgebraError> {
    v.as_u64()
        .filter(|p| *p <= 1)
        .map(|p| p as u8)
        .ok_or_else(|| AlgebraError::Malformed(format!("parity must be 0 or 1, found {v}")))
}

impl AlgebraFile {
    pub fn to_algebra<F>(&self, resolve: F) -> Result<AlgebraObject, AlgebraError>
    where
        F: Fn(&CategoryRef) -> Result<RibbonCategory, CategoryError>,
    {
        let mut mu = BTreeMap::new();
        for (key, v) in &self.mu {
            let (head, tail) = parse_key(key).map_err(AlgebraError::Malformed)?;
            let idx = |s: &str| s.parse::<usize>().map_err(|_| AlgebraError::Malformed(format!("mu key {key:?} must use component indices")));
            if head.len() != 2 || tail.len() != 1 {
                return Err(AlgebraError::Malformed(format!("mu key {key:?} must look like \"i,j;k\"")));
            }
            mu.insert((idx(&head[0])?, idx(&head[1])?, idx(&tail[0])?), v.clone());
        }
        match &self.ambient {
            Ambient::Product { u, w } => {
                let (u, w) = (resolve(u)?, resolve(w)?);
                let mut comps = Vec::new();
                for c in &self.components {
                    let [a, b, p] = c.as_slice() else {
                        return Err(AlgebraError::Malformed("product components are [u, v, parity]".into()));
                    };
                    comps.push((u.label(&as_str(a)?)?, w.label(&as_str(b)?)?, as_parity(p)?));
                }
                AlgebraObject::in_product(self.name.clone(), u, w, &comps, mu)
            }
            Ambient::Single { category } => {
                let c = resolve(category)?;
                let mut comps = Vec::new();
                for x in &self.components {
                    let [a, p] = x.as_slice() else {
                        return Err(AlgebraError::Malformed("components are [label, parity]".into()));
                    };
                    comps.push(Component { label: c.label(&as_str(a)?)?, parity: as_parity(p)? });
                }
                AlgebraObject::new(self.name.clone(), c, comps, mu)
            }
        }
    }

    /// Encode an algebra; `reference` turns each category into a reference value.
    pub fn from_algebra<F>(a: &AlgebraObject, reference: F) -> Self
    where
        F: Fn(&RibbonCategory) -> CategoryRef,
    {
        let s = |x: &str| serde_json::Value::String(x.to_string());
        let (ambient, components) = match a.factors() {
            Some((u, w)) => (
                Ambient::Product { u: reference(u), w: reference(w) },
                (0..a.components.len())
                    .map(|i| {
                        let (x, y) = a.split(i).unwrap();
                        vec![s(u.label_name(x)), s(w.label_name(y)), a.components[i].parity.into()]
                    })
                    .collect(),
            ),
            None => (
                Ambient::Single { category: reference(&a.ambient) },
                a.components
                    .iter()
                    .map(|c| vec![s(a.ambient.label_name(c.label)), c.parity.into()])
                    .collect(),
            ),
        };
        AlgebraFile {
            name: a.name.clone(),
            ambient,
            components,
            mu: a
                .mu
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((i, j, k), v)| (format!("{i},{j};{k}"), v.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin;

    fn z2_algebra(k: i64, mu_ss: i64) -> AlgebraObject {
        let c = builtin(&format!("pointed:2:{k}")).unwrap();
        let mut mu = BTreeMap::new();
        for (i, j, l) in [(0, 0, 0), (0, 1, 1), (1, 0, 1)] {
            mu.insert((i, j, l), CycNumber::one());
        }
        mu.insert((1, 1, 0), CycNumber::from(mu_ss));
        let parity = if k == 1 { 1 } else { 0 };
        AlgebraObject::new("z2", c, vec![Component { label: 0, parity: 0 }, Component { label: 1, parity }], mu).unwrap()
    }

    #[test]
    fn fermion_is_correct_superalgebra() {
        let a = z2_algebra(1, 1);
        let r = a.check_commutativity();
        assert_eq!(r.class, StatisticsClass::CorrectSuperalgebra);
        assert!(r.commutativity.passed && r.twist.passed && r.parity.passed);
    }

    #[test]
    fn zero_product_is_not_simple() {
        let a = z2_algebra(0, 0);
        assert!(a.check_associativity().passed);
        assert_eq!(a.proper_ideals(), vec![BTreeSet::from([1])]);
        assert!(!a.check_simple().passed);
        assert!(z2_algebra(0, 1).check_simple().passed);
    }

    #[test]
    fn scaled_unit_fails() {
        let mut a = z2_algebra(0, 1);
        a.set_mu(0, 1, 1, CycNumber::from(2));
        let v = a.check_unit();
        assert!(!v.passed && v.details[0].contains("left unit at 1"));
    }

    #[test]
    fn rank_one_algebra() {
        let c = builtin("trivial").unwrap();
        let a = AlgebraObject::new(
            "one",
            c,
            vec![Component { label: 0, parity: 0 }],
            BTreeMap::from([((0, 0, 0), CycNumber::one())]),
        )
        .unwrap();
        assert!(a.check_unit().passed && a.check_simple().passed);
    }
}
