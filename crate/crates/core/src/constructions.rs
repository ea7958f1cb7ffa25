//! Braid reversal, Deligne products and the built-in example categories.

use std::collections::HashMap;

use num::integer::lcm;

use crate::category::{CategoryData, CategoryError, CategoryFile, Label, RibbonCategory};
use crate::cyclo::CycNumber;
use crate::matrix::Matrix;

/// Largest rank a Deligne product may have.
pub const PRODUCT_RANK_CAP: usize = 64;

const FIB_JSON: &str = include_str!("../data/fib.json");
const ISING_JSON: &str = include_str!("../data/ising.json");

/// Names accepted by [`builtin`] with their default parameters.
pub const BUILTIN_NAMES: &[&str] = &["trivial", "pointed:2:0", "pointed:2:1", "pointed:3:1", "fib", "ising"];

/// `C^rev`: inverse-transposed braiding and inverse twist.
pub fn reverse(c: &RibbonCategory) -> RibbonCategory {
    let mut d = c.to_data();
    let mut r = HashMap::new();
    for &[i, j, k] in d.r.keys() {
        let m = c.r_matrix(j, i, k).expect("N_ij^k = N_ji^k in a braided category");
        r.insert([i, j, k], m.inverse().expect("R-matrices are invertible"));
    }
    d.r = r;
    d.theta = d.theta.iter().map(|t| t.inverse().expect("twists are invertible")).collect();
    d.name = match c.name().strip_prefix("rev(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("rev({})", c.name()),
    };
    d.qdim = None;
    RibbonCategory::from_data(d).expect("reversal preserves structural invariants")
}

/// `C ⊠ D` with label `(i,a)` at index `i·rank(D) + a`.
pub fn deligne_product(c: &RibbonCategory, d: &RibbonCategory) -> Result<RibbonCategory, CategoryError> {
    let (nc, nd) = (c.rank(), d.rank());
    let n = nc * nd;
    if n > PRODUCT_RANK_CAP {
        return Err(CategoryError::RankCap(n, PRODUCT_RANK_CAP));
    }
    let pair = |i: Label, a: Label| i * nd + a;
    let mut labels = Vec::with_capacity(n);
    let mut dual = Vec::with_capacity(n);
    let mut theta = Vec::with_capacity(n);
    let mut pivotal = Vec::with_capacity(n);
    let mut qdim = Vec::with_capacity(n);
    for i in 0..nc {
        for a in 0..nd {
            labels.push(format!("({},{})", c.label_name(i), d.label_name(a)));
            dual.push(pair(c.dual(i), d.dual(a)));
            theta.push(c.theta(i) * d.theta(a));
            pivotal.push(c.pivotal(i) * d.pivotal(a));
            qdim.push(c.qdim(i) * d.qdim(a));
        }
    }
    let mut fusion = vec![vec![vec![0u32; n]; n]; n];
    for i in 0..nc {
        for j in 0..nc {
            for k in c.fuse(i, j) {
                for a in 0..nd {
                    for b in 0..nd {
                        for cc in d.fuse(a, b) {
                            fusion[pair(i, a)][pair(j, b)][pair(k, cc)] = c.n(i, j, k) * d.n(a, b, cc);
                        }
                    }
                }
            }
        }
    }
    let mut f = HashMap::new();
    let mut r = HashMap::new();
    let cf: Vec<([Label; 4], &Matrix)> = (0..nc.pow(4))
        .filter_map(|t| {
            let k = [t % nc, t / nc % nc, t / nc / nc % nc, t / nc / nc / nc];
            c.f_block(k[0], k[1], k[2], k[3]).map(|b| (k, &b.matrix))
        })
        .collect();
    let df: Vec<([Label; 4], &Matrix)> = (0..nd.pow(4))
        .filter_map(|t| {
            let k = [t % nd, t / nd % nd, t / nd / nd % nd, t / nd / nd / nd];
            d.f_block(k[0], k[1], k[2], k[3]).map(|b| (k, &b.matrix))
        })
        .collect();
    for (ck, cm) in &cf {
        for (dk, dm) in &df {
            if cm.is_identity() && dm.is_identity() {
                continue;
            }
            let key = [pair(ck[0], dk[0]), pair(ck[1], dk[1]), pair(ck[2], dk[2]), pair(ck[3], dk[3])];
            f.insert(key, cm.kron(dm));
        }
    }
    for i in 0..nc {
        for j in 0..nc {
            for k in c.fuse(i, j) {
                let rc = c.r_matrix(i, j, k).unwrap();
                for a in 0..nd {
                    for b in 0..nd {
                        for cc in d.fuse(a, b) {
                            let rd = d.r_matrix(a, b, cc).unwrap();
                            r.insert([pair(i, a), pair(j, b), pair(k, cc)], rc.kron(rd));
                        }
                    }
                }
            }
        }
    }
    RibbonCategory::from_data(CategoryData {
        name: format!("{}⊠{}", c.name(), d.name()),
        order: lcm(c.order(), d.order()),
        labels,
        dual,
        fusion,
        f,
        r,
        theta,
        pivotal: Some(pivotal),
        qdim: Some(qdim),
    })
}

/// Rename labels, keeping all structure.
pub fn relabel(c: &RibbonCategory, names: &[String]) -> Result<RibbonCategory, CategoryError> {
    if names.len() != c.rank() {
        return Err(CategoryError::Malformed("relabel needs one name per label".into()));
    }
    let mut d = c.to_data();
    d.labels = names.to_vec();
    RibbonCategory::from_data(d)
}

pub fn trivial() -> RibbonCategory {
    pointed(1, 0, false).expect("the trivial category is valid")
}

/// Pointed category on `Z/n` with trivial associator, `R(a,b) = ζ_n^{k·a·b}` and
/// `θ(a) = ζ_n^{k·a²}`, optionally times the character `(−1)^a` (even `n` only).
pub fn pointed(n: u32, k: i64, flip: bool) -> Result<RibbonCategory, CategoryError> {
    if n == 0 {
        return Err(CategoryError::Malformed("pointed modulus must be positive".into()));
    }
    if flip && n % 2 == 1 {
        return Err(CategoryError::Malformed(format!(
            "invalid quadratic form: the sign character on Z/{n} fails θ(a*) = θ(a)"
        )));
    }
    let nn = n as usize;
    let mut fusion = vec![vec![vec![0u32; nn]; nn]; nn];
    let mut r = HashMap::new();
    for a in 0..nn {
        for b in 0..nn {
            let c = (a + b) % nn;
            fusion[a][b][c] = 1;
            r.insert([a, b, c], Matrix::scalar(CycNumber::zeta(n, k * (a * b) as i64)));
        }
    }
    let theta = (0..nn)
        .map(|a| {
            let t = CycNumber::zeta(n, k * (a * a) as i64);
            if flip && a % 2 == 1 { -t } else { t }
        })
        .collect();
    let name = match (n, flip) {
        (1, _) => "trivial".to_string(),
        (_, false) => format!("pointed:{n}:{k}"),
        (_, true) => format!("pointed:{n}:{k}:flip"),
    };
    RibbonCategory::from_data(CategoryData {
        name,
        order: n,
        labels: (0..nn).map(|a| a.to_string()).collect(),
        dual: (0..nn).map(|a| (nn - a) % nn).collect(),
        fusion,
        f: HashMap::new(),
        r,
        theta,
        pivotal: None,
        qdim: None,
    })
}

pub fn load_json(text: &str) -> Result<RibbonCategory, CategoryError> {
    let file: CategoryFile = serde_json::from_str(text).map_err(|e| {
        CategoryError::Malformed(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    file.to_category()
}

pub fn fib() -> RibbonCategory {
    load_json(FIB_JSON).expect("shipped Fibonacci data loads")
}

pub fn ising() -> RibbonCategory {
    load_json(ISING_JSON).expect("shipped Ising data loads")
}

/// `trivial`, `fib`, `ising`, `pointed:<n>[:<k>][:flip]`; `rev(<name>)` reverses.
pub fn builtin(name: &str) -> Result<RibbonCategory, CategoryError> {
    if let Some(inner) = name.strip_prefix("rev(").and_then(|s| s.strip_suffix(')')) {
        return Ok(reverse(&builtin(inner)?));
    }
    match name {
        "trivial" | "vec" => Ok(trivial()),
        "fib" => Ok(fib()),
        "ising" => Ok(ising()),
        _ => {
            let parts: Vec<&str> = name.split(':').collect();
            if parts.first() != Some(&"pointed") || parts.len() < 2 || parts.len() > 4 {
                return Err(CategoryError::Malformed(format!("unknown builtin {name:?}")));
            }
            let n: u32 = parts[1].parse().map_err(|_| CategoryError::Malformed(format!("bad modulus in {name:?}")))?;
            let k: i64 = match parts.get(2) {
                Some(s) => s.parse().map_err(|_| CategoryError::Malformed(format!("bad form exponent in {name:?}")))?,
                None => 1,
            };
            let flip = match parts.get(3) {
                None => false,
                Some(&"flip") => true,
                Some(other) => return Err(CategoryError::Malformed(format!("unknown pointed option {other:?}"))),
            };
            pointed(n, k, flip)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_all;

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            let r = validate_all(&c);
            assert!(r.passed(), "{}", r.render());
        }
    }

    #[test]
    fn fib_data() {
        let c = fib();
        let t = c.label("τ").unwrap();
        assert_eq!(*c.theta(t), CycNumber::zeta(5, 2));
        let phi = CycNumber::one() + CycNumber::zeta(5, 1) + CycNumber::zeta(5, 4);
        assert_eq!(*c.qdim(t), phi);
        let rev = reverse(&c);
        assert_eq!(*rev.theta(t), CycNumber::zeta(5, -2));
        assert_eq!(reverse(&rev), c);
    }

    #[test]
    fn ising_sigma_dimension() {
        let c = ising();
        let s = c.label("σ").unwrap();
        assert_eq!(*c.qdim(s), CycNumber::zeta(8, 1) + CycNumber::zeta(8, 7));
    }

    #[test]
    fn pointed_z3() {
        let c = builtin("pointed:3:1").unwrap();
        let z = |k| CycNumber::zeta(3, k);
        assert_eq!(c.theta(1), &z(1));
        assert_eq!(c.theta(2), &z(1));
        assert_eq!(c.r_scalar(1, 2, 0), z(2));
        assert!(pointed(3, 1, true).is_err());
        assert!(builtin("nonsense").is_err());
    }

    #[test]
    fn product_with_trivial_is_a_relabeling() {
        let c = ising();
        let p = deligne_product(&trivial(), &c).unwrap();
        let names: Vec<String> = c.labels().to_vec();
        let mut p = relabel(&p, &names).unwrap();
        p.set_name(c.name());
        let mut c2 = c.clone();
        c2.set_name(c.name());
        assert_eq!(p.to_data().theta, c2.to_data().theta);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(p.r_scalar(i, j, k), c.r_scalar(i, j, k));
                    for l in 0..3 {
                        assert_eq!(p.f_block(i, j, k, l), c.f_block(i, j, k, l));
                    }
                }
            }
        }
    }

    #[test]
    fn fib_times_reverse() {
        let c = fib();
        let p = deligne_product(&c, &reverse(&c)).unwrap();
        assert_eq!(p.rank(), 4);
        let tt = p.label("(τ,τ)").unwrap();
        let phi = c.qdim(1);
        assert_eq!(*p.qdim(tt), phi * phi);
        assert!(p.theta(tt).is_one());
        assert!(validate_all(&p).passed());
    }
}
