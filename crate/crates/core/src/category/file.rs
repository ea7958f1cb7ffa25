//! Category data files.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{CategoryData, CategoryError, Label, RibbonCategory};
use crate::cyclo::CycNumber;
use crate::matrix::Matrix;

/// A scalar or a matrix of cyclotomic numbers.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Entry {
    Scalar(CycNumber),
    Matrix(Vec<Vec<CycNumber>>),
}

impl Entry {
    pub fn to_matrix(&self) -> Matrix {
        match self {
            Entry::Scalar(x) => Matrix::scalar(x.clone()),
            Entry::Matrix(rows) => Matrix::from_rows(rows.clone()),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        if m.rows() == 1 && m.cols() == 1 {
            Entry::Scalar(m.get(0, 0).clone())
        } else {
            Entry::Matrix(m.to_rows())
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[allow(non_snake_case)]
pub struct CategoryFile {
    pub name: String,
    pub cyclotomic_order: u32,
    pub labels: Vec<String>,
    pub unit: String,
    pub dual: BTreeMap<String, String>,
    pub fusion: Vec<(String, String, String, u32)>,
    #[serde(default)]
    pub F: BTreeMap<String, Entry>,
    #[serde(default)]
    pub R: BTreeMap<String, Entry>,
    pub theta: BTreeMap<String, CycNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivotal: Option<BTreeMap<String, CycNumber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qdim: Option<BTreeMap<String, CycNumber>>,
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    out.push(cur.trim().to_string());
    out
}

/// Split a key such as `"a,b,(c,d);e"` into its comma-separated head and the
/// part after the semicolon. Commas inside parentheses belong to the label.
pub fn parse_key(key: &str) -> Result<(Vec<String>, Vec<String>), String> {
    let parts = split_top(key, ';');
    match parts.as_slice() {
        [head, tail] => Ok((split_top(head, ','), split_top(tail, ','))),
        _ => Err(format!("key {key:?} must contain exactly one top-level ';'")),
    }
}

pub(crate) fn format_key(head: &[&str], tail: &[&str]) -> String {
    format!("{};{}", head.join(","), tail.join(","))
}

impl CategoryFile {
    pub fn to_category(&self) -> Result<RibbonCategory, CategoryError> {
        let mal = |m: String| CategoryError::Malformed(m);
        // the unit always becomes label 0
        let mut labels = self.labels.clone();
        let pos = labels
            .iter()
            .position(|l| *l == self.unit)
            .ok_or_else(|| mal(format!("unit {:?} is not a label", self.unit)))?;
        let u = labels.remove(pos);
        labels.insert(0, u);
        let index: HashMap<&str, Label> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if index.len() != labels.len() {
            return Err(mal("duplicate labels".into()));
        }
        let look = |s: &str| index.get(s).copied().ok_or_else(|| CategoryError::UnknownLabel(s.to_string()));
        let n = labels.len();

        let mut dual = vec![usize::MAX; n];
        for (a, b) in &self.dual {
            dual[look(a)?] = look(b)?;
        }
        if let Some(i) = dual.iter().position(|&d| d == usize::MAX) {
            return Err(mal(format!("dual missing for label {:?}", labels[i])));
        }

        let mut fusion = vec![vec![vec![0u32; n]; n]; n];
        for (i, j, k, m) in &self.fusion {
            fusion[look(i)?][look(j)?][look(k)?] = *m;
        }

        let mut f = HashMap::new();
        for (key, entry) in &self.F {
            let (head, tail) = parse_key(key).map_err(mal)?;
            if head.len() != 3 || tail.len() != 1 {
                return Err(mal(format!("F key {key:?} must look like \"i,j,k;l\"")));
            }
            let k = [look(&head[0])?, look(&head[1])?, look(&head[2])?, look(&tail[0])?];
            f.insert(k, entry.to_matrix());
        }
        let mut r = HashMap::new();
        for (key, entry) in &self.R {
            let (head, tail) = parse_key(key).map_err(mal)?;
            if head.len() != 2 || tail.len() != 1 {
                return Err(mal(format!("R key {key:?} must look like \"i,j;k\"")));
            }
            r.insert([look(&head[0])?, look(&head[1])?, look(&tail[0])?], entry.to_matrix());
        }

        let per_label = |m: &BTreeMap<String, CycNumber>, what: &str| -> Result<Vec<CycNumber>, CategoryError> {
            let mut out = vec![None; n];
            for (k, v) in m {
                out[look(k)?] = Some(v.clone());
            }
            out.into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| mal(format!("{what} missing for label {:?}", labels[i]))))
                .collect()
        };
        let theta = per_label(&self.theta, "theta")?;
        let pivotal = self.pivotal.as_ref().map(|p| per_label(p, "pivotal")).transpose()?;
        let qdim = self.qdim.as_ref().map(|p| per_label(p, "qdim")).transpose()?;

        RibbonCategory::from_data(CategoryData {
            name: self.name.clone(),
            order: self.cyclotomic_order,
            labels,
            dual,
            fusion,
            f,
            r,
            theta,
            pivotal,
            qdim,
        })
    }

    pub fn from_category(c: &RibbonCategory) -> Self {
        let name = |i: Label| c.label_name(i);
        let n = c.rank();
        let mut fusion = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c.n(i, j, k) > 0 {
                        fusion.push((name(i).into(), name(j).into(), name(k).into(), c.n(i, j, k)));
                    }
                }
            }
        }
        let mut f = BTreeMap::new();
        let mut r = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if let Some(b) = c.f_block(i, j, k, l) {
                            if !b.matrix.is_identity() {
                                f.insert(format_key(&[name(i), name(j), name(k)], &[name(l)]), Entry::from_matrix(&b.matrix));
                            }
                        }
                    }
                    if let Some(m) = c.r_matrix(i, j, k) {
                        r.insert(format_key(&[name(i), name(j)], &[name(k)]), Entry::from_matrix(m));
                    }
                }
            }
        }
        let per = |g: &dyn Fn(Label) -> CycNumber| (0..n).map(|i| (name(i).to_string(), g(i))).collect::<BTreeMap<_, _>>();
        CategoryFile {
            name: c.name().to_string(),
            cyclotomic_order: c.order(),
            labels: c.labels().to_vec(),
            unit: name(0).to_string(),
            dual: (0..n).map(|i| (name(i).to_string(), name(c.dual(i)).to_string())).collect(),
            fusion,
            F: f,
            R: r,
            theta: per(&|i| c.theta(i).clone()),
            pivotal: Some(per(&|i| c.pivotal(i).clone())),
            qdim: Some(per(&|i| c.qdim(i).clone())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_respect_parentheses() {
        let (h, t) = parse_key("(a,b), (c,d),x;(e,f)").unwrap();
        assert_eq!(h, vec!["(a,b)", "(c,d)", "x"]);
        assert_eq!(t, vec!["(e,f)"]);
        assert!(parse_key("a,b").is_err());
    }
}
