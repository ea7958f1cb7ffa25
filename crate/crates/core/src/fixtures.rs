//! Regression fixtures: single-entry coherence defects and algebra defects.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraObject, Component};
use crate::category::{CategoryData, RibbonCategory};
use crate::constructions::{builtin, deligne_product, fib, ising, BUILTIN_NAMES};
use crate::cyclo::CycNumber;
use crate::matrix::Matrix;
use crate::mirror::canonical_algebra;

/// A perturbed category with the validator expected to catch it.
pub struct CoherenceFixture {
    pub name: &'static str,
    pub category: RibbonCategory,
    /// `pentagon`, `hexagon` or `ribbon`.
    pub axiom: &'static str,
    /// The defective instance, as named in the validation report.
    pub instance: &'static str,
}

/// An algebra with one injected defect and the checks it must flip.
pub struct AlgebraFixture {
    pub name: &'static str,
    pub algebra: AlgebraObject,
    /// Failing preconditions (algebra axioms).
    pub preconditions: &'static [&'static str],
    /// Failing hypothesis, derived and certificate checks.
    pub failing: &'static [&'static str],
}

fn rebuild(data: CategoryData, name: &str) -> RibbonCategory {
    let mut data = data;
    data.name = name.to_string();
    RibbonCategory::from_data(data).expect("fixture perturbations keep structural invariants")
}

pub fn coherence_fixtures() -> Vec<CoherenceFixture> {
    let mut out = Vec::new();

    // F^{τττ}_τ[τ,τ] → −F^{τττ}_τ[τ,τ]
    let c = fib();
    let mut d = c.to_data();
    let m = d.f.get_mut(&[1, 1, 1, 1]).unwrap();
    let v = -m.get(1, 1);
    m.set(1, 1, v);
    out.push(CoherenceFixture {
        name: "fib-f-negated",
        category: rebuild(d, "fib-f-negated"),
        axiom: "pentagon",
        instance: "(τ,τ,τ,τ;τ)",
    });

    // R^{σσ}_1 → 1
    let c = ising();
    let mut d = c.to_data();
    d.r.insert([2, 2, 0], Matrix::scalar(CycNumber::one()));
    out.push(CoherenceFixture {
        name: "ising-r-sigma",
        category: rebuild(d, "ising-r-sigma"),
        axiom: "hexagon",
        instance: "(σ,σ,σ;σ)",
    });

    // F^{σψσ}_ψ → +1
    let mut d = c.to_data();
    d.f.insert([2, 1, 2, 1], Matrix::scalar(CycNumber::one()));
    out.push(CoherenceFixture {
        name: "ising-f-perturbed",
        category: rebuild(d, "ising-f-perturbed"),
        axiom: "pentagon",
        instance: "(σ,ψ,σ,ψ;1)",
    });

    // θ_1 = −1
    let c = fib();
    let mut d = c.to_data();
    d.theta[0] = -CycNumber::one();
    out.push(CoherenceFixture {
        name: "fib-unit-twist",
        category: rebuild(d, "fib-unit-twist"),
        axiom: "ribbon",
        instance: "1",
    });

    // θ_τ = ζ_5^3
    let mut d = c.to_data();
    d.theta[1] = CycNumber::zeta(5, 3);
    out.push(CoherenceFixture {
        name: "fib-twist",
        category: rebuild(d, "fib-twist"),
        axiom: "ribbon",
        instance: "(τ,τ;τ)",
    });
    out
}

/// `1 ⊕ (1,1)` in `pointed:2:1:flip ⊠ pointed:2:0` with the odd component:
/// a superalgebra of wrong statistics.
pub fn wrong_statistics() -> AlgebraObject {
    let u = builtin("pointed:2:1:flip").unwrap();
    let w = builtin("pointed:2:0").unwrap();
    let mut mu = BTreeMap::new();
    for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        mu.insert((i, j, k), CycNumber::one());
    }
    AlgebraObject::in_product("fermion-wrong-statistics", u, w, &[(0, 0, 0), (1, 1, 1)], mu).unwrap()
}

/// The fermion `1 ⊕ s` in pointed Z/2 with `θ_s = −1`.
pub fn fermion() -> AlgebraObject {
    let c = builtin("pointed:2:1").unwrap();
    let mut mu = BTreeMap::new();
    for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        mu.insert((i, j, k), CycNumber::one());
    }
    let comps = vec![Component { label: 0, parity: 0 }, Component { label: 1, parity: 1 }];
    AlgebraObject::new("fermion", c, comps, mu).unwrap()
}

pub fn algebra_fixtures() -> Vec<AlgebraFixture> {
    let mut out = Vec::new();
    let f = fib();

    // canonical μ carried into Fib ⊠ Fib, where the second factor is not reversed
    let canon = canonical_algebra(&f, None, None).unwrap();
    let a = canon
        .with_twisted_ambient(deligne_product(&f, &f).unwrap(), Some((f.clone(), f.clone())))
        .unwrap()
        .with_name("fib-not-reversed");
    out.push(AlgebraFixture {
        name: "twist",
        algebra: a,
        preconditions: &["commutativity", "parity"],
        failing: &["twist partition", "monodromy"],
    });

    // μ^{(τ,τ)(τ,τ)}_{(τ,τ)} doubled
    let mut a = canon.clone().with_name("fib-mu-doubled");
    let v = a.mu(1, 1, 1);
    a.set_mu(1, 1, 1, &v + &v);
    out.push(AlgebraFixture { name: "mu-entry", algebra: a, preconditions: &["associativity"], failing: &[] });

    out.push(AlgebraFixture {
        name: "fusion",
        algebra: swapped_z5(),
        preconditions: &["associativity"],
        failing: &["fusion match", "fusion", "monodromy"],
    });

    // component (2*,2) removed
    let z5 = builtin("pointed:5:1").unwrap();
    let a = canonical_algebra(&z5, None, None).unwrap().without_component(2).unwrap().with_name("z5-missing-component");
    out.push(AlgebraFixture {
        name: "component-removed",
        algebra: a,
        preconditions: &["associativity"],
        failing: &["involution", "fusion match"],
    });

    // 1 ⊕ (1,g): the unit of U is paired with a nontrivial label of W
    let u = builtin("pointed:2:0").unwrap();
    let mut mu = BTreeMap::new();
    for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        mu.insert((i, j, k), CycNumber::one());
    }
    let a = AlgebraObject::in_product("w-side-group-algebra", u.clone(), u, &[(0, 0, 0), (0, 1, 0)], mu).unwrap();
    out.push(AlgebraFixture {
        name: "dual-pair",
        algebra: a,
        preconditions: &[],
        failing: &["dual pair", "distinct simple U_i", "involution", "fusion match", "fusion", "monodromy"],
    });
    out
}

/// Canonical Z/5 labels with `V` swapped on `{1, 4}` only: twists and duals still
/// match, but `u ↦ v*` is not additive. μ is 1 wherever fusion allows.
fn swapped_z5() -> AlgebraObject {
    let u = builtin("pointed:5:1").unwrap();
    let w = crate::constructions::reverse(&u);
    let comps = [(0, 0, 0), (4, 4, 0), (3, 2, 0), (2, 3, 0), (1, 1, 0)];
    let p = deligne_product(&u, &w).unwrap();
    let mut mu = BTreeMap::new();
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                let l = |t: (usize, usize, u8)| t.0 * 5 + t.1;
                if p.n(l(comps[i]), l(comps[j]), l(comps[k])) > 0 {
                    mu.insert((i, j, k), CycNumber::one());
                }
            }
        }
    }
    AlgebraObject::in_product("z5-swapped", u, w, &comps, mu).unwrap()
}

/// Canonical algebras of the built-in categories, keyed by builtin name.
pub fn canonical_fixtures() -> Vec<(&'static str, AlgebraObject)> {
    BUILTIN_NAMES
        .iter()
        .map(|&n| (n, canonical_algebra(&builtin(n).unwrap(), None, None).unwrap()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_all;
    use crate::mirror::mirror_analyze;

    #[test]
    fn coherence_defects_are_named() {
        for fx in coherence_fixtures() {
            let r = validate_all(&fx.category);
            let rep = [&r.pentagon, &r.hexagon, &r.ribbon].into_iter().find(|v| v.axiom == fx.axiom).unwrap();
            assert!(
                rep.failures.iter().any(|f| f.instance.starts_with(fx.instance)),
                "{}: {}",
                fx.name,
                r.render()
            );
        }
    }

    #[test]
    fn algebra_defects_flip_their_checks() {
        for fx in algebra_fixtures() {
            let r = mirror_analyze(&fx.algebra).unwrap();
            let pre: Vec<&str> = r.preconditions.iter().filter(|v| !v.passed).map(|v| v.name.as_str()).collect();
            assert_eq!(pre, fx.preconditions, "{}", fx.name);
            assert_eq!(r.failing(), fx.failing, "{}\n{}", fx.name, r.render());
        }
    }
}
