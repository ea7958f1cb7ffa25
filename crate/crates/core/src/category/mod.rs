//! Skeletal ribbon categories: data model, loading and structural checks.

mod engine;
mod file;
mod validate;

use std::collections::HashMap;

use thiserror::Error;

use crate::cyclo::{CycError, CycNumber};
use crate::matrix::Matrix;

pub use engine::{Engine, Expr, Morphism, Move, Obj, Side, Tree};
pub use file::{parse_key, CategoryFile, Entry};
pub use validate::{validate_all, CoherenceReport, Failure, ValidationReport};

pub type Label = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("malformed category: {0}")]
    Malformed(String),
    #[error("{axiom} violated at {at}")]
    Axiom { axiom: String, at: String },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("multiplicity not supported: N^{{{k}}}_{{{i},{j}}} = {n}")]
    Multiplicity { i: String, j: String, k: String, n: u32 },
    #[error("qdim mismatch at label {label}: stored {stored}, computed {computed}")]
    QdimMismatch { label: String, stored: String, computed: String },
    #[error("combined rank {0} exceeds the cap of {1}")]
    RankCap(usize, usize),
    #[error("inadmissible move: {0}")]
    Inadmissible(String),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

fn axiom(axiom: &str, at: impl Into<String>) -> CategoryError {
    CategoryError::Axiom { axiom: axiom.to_string(), at: at.into() }
}

/// Raw skeletal data indexed by label numbers. The unit is label 0.
#[derive(Clone, Debug, Default)]
pub struct CategoryData {
    pub name: String,
    pub order: u32,
    pub labels: Vec<String>,
    pub dual: Vec<Label>,
    /// `fusion[i][j][k] = N_{ij}^k`.
    pub fusion: Vec<Vec<Vec<u32>>>,
    pub f: HashMap<[Label; 4], Matrix>,
    pub r: HashMap<[Label; 3], Matrix>,
    pub theta: Vec<CycNumber>,
    pub pivotal: Option<Vec<CycNumber>>,
    pub qdim: Option<Vec<CycNumber>>,
}

/// One F-matrix with its row and column bases. For multiplicity-free data a
/// basis entry is just the intermediate label; higher multiplicities repeat it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBlock {
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonCategory {
    name: String,
    order: u32,
    labels: Vec<String>,
    index: HashMap<String, Label>,
    dual: Vec<Label>,
    fusion: Vec<Vec<Vec<u32>>>,
    f: HashMap<[Label; 4], FBlock>,
    r: HashMap<[Label; 3], Matrix>,
    theta: Vec<CycNumber>,
    pivotal: Vec<CycNumber>,
    qdim: Vec<CycNumber>,
}

impl RibbonCategory {
    pub fn from_data(data: CategoryData) -> Result<Self, CategoryError> {
        let n = data.labels.len();
        if n == 0 {
            return Err(CategoryError::Malformed("no labels".into()));
        }
        if data.order == 0 {
            return Err(CategoryError::Malformed("cyclotomic_order must be positive".into()));
        }
        let mut index = HashMap::new();
        for (i, l) in data.labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(CategoryError::Malformed(format!("duplicate label {l:?}")));
            }
        }
        let name = |i: Label| data.labels[i].clone();
        if data.dual.len() != n || data.theta.len() != n {
            return Err(CategoryError::Malformed("dual/theta must cover every label".into()));
        }
        if data.fusion.len() != n || data.fusion.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(CategoryError::Malformed("fusion table has wrong shape".into()));
        }
        for i in 0..n {
            let d = data.dual[i];
            if d >= n || data.dual[d] != i {
                return Err(axiom("duality involution", name(i)));
            }
        }
        if data.dual[0] != 0 {
            return Err(axiom("unit self-duality", name(0)));
        }
        let nn = |i: Label, j: Label, k: Label| data.fusion[i][j][k];
        for i in 0..n {
            for j in 0..n {
                let want = u32::from(i == j);
                if nn(0, i, j) != want || nn(i, 0, j) != want {
                    return Err(axiom("unit axiom", format!("N({},{};{}) / N({},{};{})", name(0), name(i), name(j), name(i), name(0), name(j))));
                }
                if nn(i, j, 0) != u32::from(j == data.dual[i]) {
                    return Err(axiom("dual axiom", format!("N({},{};{})", name(i), name(j), name(0))));
                }
            }
        }

        // F-symbols: fill defaults, check shapes, invert.
        for key in data.f.keys() {
            if key.iter().any(|&x| x >= n) {
                return Err(CategoryError::Malformed(format!("F key {key:?} out of range")));
            }
        }
        let mut f = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let rows = basis_left(&data.fusion, i, j, k, l);
                        let cols = basis_right(&data.fusion, i, j, k, l);
                        let at = || format!("F({},{},{};{})", name(i), name(j), name(k), name(l));
                        if rows.len() != cols.len() {
                            return Err(axiom("fusion associativity", at()));
                        }
                        let given = data.f.get(&[i, j, k, l]);
                        if rows.is_empty() {
                            if given.is_some_and(|m| !m.is_zero() || m.rows() > 0) {
                                return Err(axiom("F admissibility", at()));
                            }
                            continue;
                        }
                        let matrix = match given {
                            Some(m) => m.clone(),
                            None => Matrix::identity(rows.len()),
                        };
                        if matrix.rows() != rows.len() || matrix.cols() != cols.len() {
                            return Err(axiom("F shape", format!("{} (expected {}x{})", at(), rows.len(), cols.len())));
                        }
                        if (i == 0 || j == 0 || k == 0) && !matrix.is_identity() {
                            return Err(axiom("unit F-matrix is identity", at()));
                        }
                        let inverse = matrix.inverse().map_err(|_| axiom("F invertibility", at()))?;
                        f.insert([i, j, k, l], FBlock { rows, cols, matrix, inverse });
                    }
                }
            }
        }

        let mut r = HashMap::new();
        for (key, m) in &data.r {
            let [i, j, k] = *key;
            if i >= n || j >= n || k >= n {
                return Err(CategoryError::Malformed(format!("R key {key:?} out of range")));
            }
            let d = nn(i, j, k) as usize;
            if d == 0 {
                if !m.is_zero() {
                    return Err(axiom("R admissibility", format!("R({},{};{})", name(i), name(j), name(k))));
                }
                continue;
            }
            if m.rows() != d || m.cols() != d {
                return Err(axiom("R shape", format!("R({},{};{})", name(i), name(j), name(k))));
            }
            r.insert(*key, m.clone());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = nn(i, j, k) as usize;
                    if d > 0 {
                        r.entry([i, j, k]).or_insert_with(|| Matrix::identity(d));
                    }
                }
            }
        }

        let mut cat = RibbonCategory {
            name: data.name.clone(),
            order: data.order,
            labels: data.labels.clone(),
            index,
            dual: data.dual.clone(),
            fusion: data.fusion.clone(),
            f,
            r,
            theta: data.theta.clone(),
            pivotal: Vec::new(),
            qdim: Vec::new(),
        };
        cat.pivotal = match &data.pivotal {
            Some(p) if p.len() == n => p.clone(),
            Some(_) => return Err(CategoryError::Malformed("pivotal must cover every label".into())),
            None => (0..n).map(|a| cat.induced_pivotal(a)).collect(),
        };
        let mut qdim = Vec::with_capacity(n);
        for a in 0..n {
            let f00 = cat.f_entry(a, cat.dual[a], a, a, 0, 0);
            if f00.is_zero() {
                return Err(axiom("rigidity", format!("F({},{},{};{})[0,0] = 0", name(a), name(cat.dual[a]), name(a), name(a))));
            }
            qdim.push(cat.pivotal[a].checked_div(&f00)?);
        }
        if let Some(stored) = &data.qdim {
            if stored.len() != n {
                return Err(CategoryError::Malformed("qdim must cover every label".into()));
            }
            for a in 0..n {
                if stored[a] != qdim[a] {
                    return Err(CategoryError::QdimMismatch {
                        label: name(a),
                        stored: stored[a].to_string(),
                        computed: qdim[a].to_string(),
                    });
                }
            }
        }
        cat.qdim = qdim;
        Ok(cat)
    }

    /// Pivotal coefficient induced by the ribbon structure, `θ_a · R^{a a*}_0`.
    pub fn induced_pivotal(&self, a: Label) -> CycNumber {
        &self.theta[a] * &self.r_scalar(a, self.dual[a], 0)
    }

    pub fn to_data(&self) -> CategoryData {
        CategoryData {
            name: self.name.clone(),
            order: self.order,
            labels: self.labels.clone(),
            dual: self.dual.clone(),
            fusion: self.fusion.clone(),
            f: self.f.iter().map(|(k, b)| (*k, b.matrix.clone())).collect(),
            r: self.r.clone(),
            theta: self.theta.clone(),
            pivotal: Some(self.pivotal.clone()),
            qdim: Some(self.qdim.clone()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_name(&self, i: Label) -> &str {
        &self.labels[i]
    }

    pub fn label(&self, name: &str) -> Result<Label, CategoryError> {
        self.index.get(name).copied().ok_or_else(|| CategoryError::UnknownLabel(name.to_string()))
    }

    pub fn dual(&self, i: Label) -> Label {
        self.dual[i]
    }

    pub fn n(&self, i: Label, j: Label, k: Label) -> u32 {
        self.fusion[i][j][k]
    }

    /// Labels `k` with `N_{ij}^k > 0`, increasing.
    pub fn fuse(&self, i: Label, j: Label) -> Vec<Label> {
        (0..self.rank()).filter(|&k| self.fusion[i][j][k] > 0).collect()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.fusion.iter().flatten().flatten().copied().max().unwrap_or(0)
    }

    pub fn check_multiplicity_free(&self) -> Result<(), CategoryError> {
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                for k in 0..self.rank() {
                    let n = self.fusion[i][j][k];
                    if n > 1 {
                        return Err(CategoryError::Multiplicity {
                            i: self.labels[i].clone(),
                            j: self.labels[j].clone(),
                            k: self.labels[k].clone(),
                            n,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn f_block(&self, i: Label, j: Label, k: Label, l: Label) -> Option<&FBlock> {
        self.f.get(&[i, j, k, l])
    }

    /// `F^{ijk}_l[e][f]` by intermediate labels (multiplicity-free lookup); zero
    /// when inadmissible.
    pub fn f_entry(&self, i: Label, j: Label, k: Label, l: Label, e: Label, f: Label) -> CycNumber {
        self.f_lookup(i, j, k, l, e, f, false)
    }

    /// Entry of the inverse F-matrix, indexed `[f][e]`.
    pub fn f_inv_entry(&self, i: Label, j: Label, k: Label, l: Label, f: Label, e: Label) -> CycNumber {
        self.f_lookup(i, j, k, l, f, e, true)
    }

    #[allow(clippy::too_many_arguments)]
    fn f_lookup(&self, i: Label, j: Label, k: Label, l: Label, a: Label, b: Label, inv: bool) -> CycNumber {
        let Some(block) = self.f.get(&[i, j, k, l]) else {
            return CycNumber::zero();
        };
        let (rows, cols, m) = if inv {
            (&block.cols, &block.rows, &block.inverse)
        } else {
            (&block.rows, &block.cols, &block.matrix)
        };
        match (rows.iter().position(|&x| x == a), cols.iter().position(|&x| x == b)) {
            (Some(p), Some(q)) => m.get(p, q).clone(),
            _ => CycNumber::zero(),
        }
    }

    pub fn r_matrix(&self, i: Label, j: Label, k: Label) -> Option<&Matrix> {
        self.r.get(&[i, j, k])
    }

    /// Scalar `R^{ij}_k`, zero when inadmissible. Multiplicity-free only.
    pub fn r_scalar(&self, i: Label, j: Label, k: Label) -> CycNumber {
        self.r.get(&[i, j, k]).map_or_else(CycNumber::zero, |m| m.get(0, 0).clone())
    }

    pub fn theta(&self, i: Label) -> &CycNumber {
        &self.theta[i]
    }

    pub fn pivotal(&self, i: Label) -> &CycNumber {
        &self.pivotal[i]
    }

    pub fn qdim(&self, i: Label) -> &CycNumber {
        &self.qdim[i]
    }

    /// Cup coefficient `η_a` of `i_a: 1 → a ⊗ a*`, fixed by the zigzag identity.
    pub fn cup_coefficient(&self, a: Label) -> CycNumber {
        self.f_entry(a, self.dual[a], a, a, 0, 0)
            .inverse()
            .expect("nonzero by load-time rigidity check")
    }

    pub fn global_dimension(&self) -> CycNumber {
        self.qdim.iter().map(|d| d * d).sum()
    }
}

/// Intermediate labels `e` of `((i j)_e k)_l`.
fn basis_left(fusion: &[Vec<Vec<u32>>], i: Label, j: Label, k: Label, l: Label) -> Vec<Label> {
    let mut out = Vec::new();
    for e in 0..fusion.len() {
        let m = fusion[i][j][e] * fusion[e][k][l];
        out.extend(std::iter::repeat_n(e, m as usize));
    }
    out
}

/// Intermediate labels `f` of `(i (j k)_f)_l`.
fn basis_right(fusion: &[Vec<Vec<u32>>], i: Label, j: Label, k: Label, l: Label) -> Vec<Label> {
    let mut out = Vec::new();
    for f in 0..fusion.len() {
        let m = fusion[j][k][f] * fusion[i][f][l];
        out.extend(std::iter::repeat_n(f, m as usize));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pointed2() -> CategoryData {
        let mut fusion = vec![vec![vec![0; 2]; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                fusion[a][b][(a + b) % 2] = 1;
            }
        }
        CategoryData {
            name: "z2".into(),
            order: 2,
            labels: vec!["0".into(), "1".into()],
            dual: vec![0, 1],
            fusion,
            theta: vec![CycNumber::one(), CycNumber::one()],
            ..Default::default()
        }
    }

    #[test]
    fn defaults_are_filled() {
        let c = RibbonCategory::from_data(pointed2()).unwrap();
        assert!(c.f_entry(1, 1, 1, 1, 0, 0).is_one());
        assert!(c.r_scalar(1, 1, 0).is_one());
        assert!(c.qdim(1).is_one());
    }

    #[test]
    fn unit_axiom_is_checked() {
        let mut d = pointed2();
        d.fusion[0][1][1] = 0;
        let e = RibbonCategory::from_data(d).unwrap_err();
        assert!(e.to_string().contains("unit axiom violated"), "{e}");
    }

    #[test]
    fn qdim_mismatch_names_label() {
        let mut d = pointed2();
        d.qdim = Some(vec![CycNumber::one(), CycNumber::from_integer(2)]);
        let e = RibbonCategory::from_data(d).unwrap_err();
        assert!(matches!(e, CategoryError::QdimMismatch { ref label, .. } if label == "1"));
    }
}
