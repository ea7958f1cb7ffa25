//! Exact coherence validators: pentagon, both hexagons, ribbon structure.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Label, RibbonCategory};
use crate::cyclo::CycNumber;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub instance: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub axiom: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: pass ({} instances)", self.axiom, self.instances)
        } else {
            format!("{}: FAIL ({} of {} instances)", self.axiom, self.failures.len(), self.instances)
        }
    }

    fn unsupported(axiom: &str, c: &RibbonCategory) -> Option<Self> {
        c.check_multiplicity_free().err().map(|e| ValidationReport {
            axiom: axiom.into(),
            instances: 0,
            failures: vec![Failure { check: axiom.into(), instance: "category".into(), residual: e.to_string() }],
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoherenceReport {
    pub category: String,
    pub pentagon: ValidationReport,
    pub hexagon: ValidationReport,
    pub ribbon: ValidationReport,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.pentagon.passed() && self.hexagon.passed() && self.ribbon.passed()
    }

    pub fn render(&self) -> String {
        let mut out = format!("category {}\n", self.category);
        for r in [&self.pentagon, &self.hexagon, &self.ribbon] {
            out.push_str(&r.summary());
            out.push('\n');
            for f in &r.failures {
                out.push_str(&format!("  {} at {}: residual {}\n", f.check, f.instance, f.residual));
            }
        }
        out
    }
}

pub fn validate_all(c: &RibbonCategory) -> CoherenceReport {
    CoherenceReport {
        category: c.name().to_string(),
        pentagon: validate_pentagon(c),
        hexagon: validate_hexagon(c),
        ribbon: validate_ribbon(c),
    }
}

fn names(c: &RibbonCategory, ls: &[Label]) -> String {
    ls.iter().map(|&l| c.label_name(l)).collect::<Vec<_>>().join(",")
}

/// dim Hom(m, ((w x) y) z)
fn hom4(c: &RibbonCategory, w: Label, x: Label, y: Label, z: Label, m: Label) -> usize {
    let mut n = 0;
    for a in c.fuse(w, x) {
        for b in c.fuse(a, y) {
            if c.n(b, z, m) > 0 {
                n += 1;
            }
        }
    }
    n
}

fn hom3(c: &RibbonCategory, x: Label, y: Label, z: Label, m: Label) -> usize {
    c.fuse(x, y).into_iter().filter(|&a| c.n(a, z, m) > 0).count()
}

pub fn validate_pentagon(c: &RibbonCategory) -> ValidationReport {
    if let Some(r) = ValidationReport::unsupported("pentagon", c) {
        return r;
    }
    let n = c.rank();
    let tuples: Vec<[Label; 5]> = (0..n.pow(5))
        .map(|t| [t % n, (t / n) % n, (t / n / n) % n, (t / n / n / n) % n, t / n / n / n / n])
        .filter(|&[w, x, y, z, m]| hom4(c, w, x, y, z, m) > 0)
        .collect();
    let mut failures: Vec<(usize, Failure)> = tuples
        .par_iter()
        .enumerate()
        .filter_map(|(idx, &[w, x, y, z, m])| pentagon_instance(c, w, x, y, z, m).map(|f| (idx, f)))
        .collect();
    failures.sort_by_key(|(i, _)| *i);
    ValidationReport {
        axiom: "pentagon".into(),
        instances: tuples.len(),
        failures: failures.into_iter().map(|(_, f)| f).collect(),
    }
}

fn pentagon_instance(c: &RibbonCategory, w: Label, x: Label, y: Label, z: Label, m: Label) -> Option<Failure> {
    for a in c.fuse(w, x) {
        for b in c.fuse(a, y) {
            if c.n(b, z, m) == 0 {
                continue;
            }
            for cc in c.fuse(y, z) {
                for d in c.fuse(x, cc) {
                    if c.n(w, d, m) == 0 {
                        continue;
                    }
                    let lhs = &c.f_entry(a, y, z, m, b, cc) * &c.f_entry(w, x, cc, m, a, d);
                    let rhs: CycNumber = c
                        .fuse(x, y)
                        .into_iter()
                        .map(|e| {
                            &(&c.f_entry(w, x, y, b, a, e) * &c.f_entry(w, e, z, m, b, d)) * &c.f_entry(x, y, z, d, e, cc)
                        })
                        .sum();
                    let res = &lhs - &rhs;
                    if !res.is_zero() {
                        return Some(Failure {
                            check: "pentagon".into(),
                            instance: format!(
                                "({};{}) [a={}, b={}, c={}, d={}]",
                                names(c, &[w, x, y, z]),
                                c.label_name(m),
                                c.label_name(a),
                                c.label_name(b),
                                c.label_name(cc),
                                c.label_name(d)
                            ),
                            residual: res.to_string(),
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn validate_hexagon(c: &RibbonCategory) -> ValidationReport {
    if let Some(r) = ValidationReport::unsupported("hexagon", c) {
        return r;
    }
    let n = c.rank();
    let tuples: Vec<[Label; 4]> = (0..n.pow(4))
        .map(|t| [t % n, (t / n) % n, (t / n / n) % n, t / n / n / n])
        .filter(|&[x, y, z, m]| hom3(c, x, y, z, m) > 0)
        .collect();
    let mut failures: Vec<(usize, Failure)> = tuples
        .par_iter()
        .enumerate()
        .flat_map_iter(|(idx, &[x, y, z, m])| {
            [false, true]
                .into_iter()
                .filter_map(move |inv| hexagon_instance(c, x, y, z, m, inv).map(|f| (idx, f)))
        })
        .collect();
    failures.sort_by_key(|(i, _)| *i);
    ValidationReport {
        axiom: "hexagon".into(),
        instances: 2 * tuples.len(),
        failures: failures.into_iter().map(|(_, f)| f).collect(),
    }
}

fn hexagon_instance(c: &RibbonCategory, x: Label, y: Label, z: Label, m: Label, inverse: bool) -> Option<Failure> {
    let r = |p: Label, q: Label, e: Label| -> CycNumber {
        if inverse {
            c.r_scalar(q, p, e).inverse().unwrap_or_default()
        } else {
            c.r_scalar(p, q, e)
        }
    };
    for a in c.fuse(x, y) {
        if c.n(a, z, m) == 0 {
            continue;
        }
        for cc in c.fuse(z, x) {
            if c.n(y, cc, m) == 0 {
                continue;
            }
            let lhs: CycNumber = c
                .fuse(y, z)
                .into_iter()
                .map(|b| &(&c.f_entry(x, y, z, m, a, b) * &r(x, b, m)) * &c.f_entry(y, z, x, m, b, cc))
                .sum();
            let rhs = &(&r(x, y, a) * &c.f_entry(y, x, z, m, a, cc)) * &r(x, z, cc);
            let res = &lhs - &rhs;
            if !res.is_zero() {
                return Some(Failure {
                    check: if inverse { "hexagon (inverse braiding)" } else { "hexagon" }.into(),
                    instance: format!(
                        "({};{}) [a={}, c={}]",
                        names(c, &[x, y, z]),
                        c.label_name(m),
                        c.label_name(a),
                        c.label_name(cc)
                    ),
                    residual: res.to_string(),
                });
            }
        }
    }
    None
}

pub fn validate_ribbon(c: &RibbonCategory) -> ValidationReport {
    if let Some(r) = ValidationReport::unsupported("ribbon", c) {
        return r;
    }
    let n = c.rank();
    let mut failures = Vec::new();
    let mut instances = 0;
    let mut fail = |check: &str, instance: String, residual: CycNumber| {
        failures.push(Failure { check: check.into(), instance, residual: residual.to_string() });
    };

    instances += 1;
    if !c.theta(0).is_one() {
        fail("unit twist", c.label_name(0).to_string(), c.theta(0) - &CycNumber::one());
    }
    for i in 0..n {
        instances += 1;
        let res = c.theta(i) - c.theta(c.dual(i));
        if !res.is_zero() {
            fail("twist duality", c.label_name(i).to_string(), res);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in c.fuse(i, j) {
                instances += 1;
                let lhs = &c.r_scalar(j, i, k) * &c.r_scalar(i, j, k);
                let Ok(rhs) = c.theta(k).checked_div(&(c.theta(i) * c.theta(j))) else {
                    fail("balancing", format!("({};{})", names(c, &[i, j]), c.label_name(k)), CycNumber::zero());
                    continue;
                };
                let res = &lhs - &rhs;
                if !res.is_zero() {
                    fail("balancing", format!("({};{})", names(c, &[i, j]), c.label_name(k)), res);
                }
            }
        }
    }
    for a in 0..n {
        instances += 2;
        let res = c.pivotal(a) - &c.induced_pivotal(a);
        if !res.is_zero() {
            fail("pivotal", c.label_name(a).to_string(), res);
        }
        let ad = c.dual(a);
        let res = &c.f_inv_entry(ad, a, ad, ad, 0, 0) - &c.f_entry(a, ad, a, a, 0, 0);
        if !res.is_zero() {
            fail("rigidity", c.label_name(a).to_string(), res);
        }
    }
    for i in 0..n {
        instances += 2;
        if c.qdim(i).is_zero() {
            fail("nonzero dimension", c.label_name(i).to_string(), CycNumber::zero());
        }
        let res = c.qdim(i) - c.qdim(c.dual(i));
        if !res.is_zero() {
            fail("dimension duality", c.label_name(i).to_string(), res);
        }
        for j in 0..n {
            instances += 1;
            let sum: CycNumber = c.fuse(i, j).into_iter().map(|k| c.qdim(k) * &CycNumber::from(c.n(i, j, k) as i64)).sum();
            let res = &(c.qdim(i) * c.qdim(j)) - &sum;
            if !res.is_zero() {
                fail("dimension fusion", names(c, &[i, j]), res);
            }
        }
    }
    ValidationReport { axiom: "ribbon".into(), instances, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin;

    #[test]
    fn trivial_category_passes_vacuously() {
        let c = builtin("trivial").unwrap();
        let r = validate_all(&c);
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.pentagon.instances, 1);
    }
}
