//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Every scalar in the crate (F- and R-symbols, twists, dimensions, morphism
//! matrix entries) is a [`CycNumber`]. Elements are stored in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` with a common positive denominator, so two elements
//! of the same order are equal iff their stored forms coincide. Elements of
//! different orders are compared and combined after lifting both to the
//! least common multiple of the orders.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num::bigint::Sign;
use num::complex::Complex64;
use num::integer::lcm;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a real element: {0}")]
    NotReal(String),
    #[error("sign of {value} undecided after {bits} bits of precision")]
    PrecisionExhausted { value: String, bits: u32 },
    #[error("invalid cyclotomic order {0}")]
    InvalidOrder(i64),
}

/// Reduction data for one order `N`: `reduce[k]` is `x^k mod Φ_N(x)` for `k < N`.
struct Table {
    phi: usize,
    reduce: Vec<Vec<(usize, BigInt)>>,
}

fn tables() -> &'static RwLock<HashMap<u32, Arc<Table>>> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<Table>>>> = OnceLock::new();
    TABLES.get_or_init(|| RwLock::new(HashMap::new()))
}

fn table(order: u32) -> Arc<Table> {
    if let Some(t) = tables().read().unwrap().get(&order) {
        return t.clone();
    }
    let t = Arc::new(build_table(order));
    tables().write().unwrap().insert(order, t.clone());
    t
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    fn go(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut p = vec![BigInt::zero(); n as usize + 1];
        p[0] = -BigInt::one();
        p[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d < n {
                let q = go(d, memo);
                p = exact_div_monic(&p, &q);
            }
        }
        memo.insert(n, p.clone());
        p
    }
    go(n, &mut HashMap::new())
}

fn exact_div_monic(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut rem = p.to_vec();
    let dq = q.len() - 1;
    let dp = p.len() - 1;
    let mut quot = vec![BigInt::zero(); dp - dq + 1];
    for i in (0..=dp - dq).rev() {
        let c = rem[i + dq].clone();
        if c.is_zero() {
            continue;
        }
        for (j, qj) in q.iter().enumerate() {
            rem[i + j] -= &c * qj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn build_table(order: u32) -> Table {
    let n = order as usize;
    let cyc = cyclotomic_polynomial(order);
    let phi = cyc.len() - 1;
    let mut reduce = Vec::with_capacity(n);
    let mut current = vec![BigInt::zero(); phi];
    for k in 0..n {
        if k < phi {
            reduce.push(vec![(k, BigInt::one())]);
            if k + 1 == phi {
                // x^phi = -(Φ - x^phi)
                current = cyc[..phi].iter().map(|c| -c).collect();
            }
            continue;
        }
        reduce.push(
            current
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, c.clone()))
                .collect(),
        );
        // multiply by x and reduce the overflow coefficient
        let top = current[phi - 1].clone();
        for j in (1..phi).rev() {
            current[j] = current[j - 1].clone();
        }
        current[0] = BigInt::zero();
        if !top.is_zero() {
            for j in 0..phi {
                current[j] -= &top * &cyc[j];
            }
        }
    }
    Table { phi, reduce }
}

/// Euler's totient of `n`, read off the degree of `Φ_n`.
pub fn totient(order: u32) -> usize {
    table(order).phi
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u32,
    den: BigInt,
    num: Vec<(u32, BigInt)>,
}

impl CycNumber {
    pub fn zero() -> Self {
        CycNumber { order: 1, den: BigInt::one(), num: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let (n, d) = (q.numer().clone(), q.denom().clone());
        CycNumber { order: 1, den: d, num: vec![(0, n)] }.normalized()
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta(order: u32, k: i64) -> Self {
        Self::from_terms(order, [(k, BigRational::one())])
    }

    /// `Σ c·ζ_N^e` for arbitrary integer exponents and rational coefficients.
    pub fn from_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(order >= 1, "cyclotomic order must be positive");
        let terms: Vec<(i64, BigRational)> = terms.into_iter().collect();
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let n = order as usize;
        let mut acc = vec![BigInt::zero(); n];
        for (e, c) in &terms {
            let idx = e.rem_euclid(order as i64) as usize;
            acc[idx] += c.numer() * (&den / c.denom());
        }
        Self::reduce_dense(order, acc, den)
    }

    fn reduce_dense(order: u32, mut acc: Vec<BigInt>, den: BigInt) -> Self {
        let t = table(order);
        for k in (t.phi..acc.len()).rev() {
            if acc[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut acc[k]);
            for (j, r) in &t.reduce[k] {
                acc[*j] += &c * r;
            }
        }
        let num = acc
            .into_iter()
            .take(t.phi)
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u32, c))
            .collect();
        CycNumber { order, den, num }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_empty() {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_negative() {
            self.den = -self.den;
            for (_, c) in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for (_, c) in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for (_, c) in self.num.iter_mut() {
                *c /= &g;
            }
        }
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.len() == 1 && self.num[0].0 == 0 && self.num[0].1.is_one()
    }

    /// Canonical terms `(exponent, coefficient)` with exponents below `φ(N)`.
    pub fn terms(&self) -> Vec<(u32, BigRational)> {
        self.num
            .iter()
            .map(|(e, c)| (*e, BigRational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, c)] => Some(BigRational::new(c.clone(), self.den.clone())),
            _ => None,
        }
    }

    /// Re-express at order `target`, which must be a multiple of the current order.
    pub fn lift(&self, target: u32) -> Self {
        assert!(target.is_multiple_of(self.order), "lift target {target} not a multiple of {}", self.order);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut acc = vec![BigInt::zero(); target as usize];
        for (e, c) in &self.num {
            acc[*e as usize * step] += c;
        }
        Self::reduce_dense(target, acc, self.den.clone())
    }

    /// Smallest-order representation of the same field element.
    pub fn reduce_order(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        for d in divisors(self.order) {
            if d == self.order {
                break;
            }
            if let Some(x) = self.descend(d) {
                return x;
            }
        }
        self.clone()
    }

    /// Try to write `self` as the lift of an element of order `d`.
    fn descend(&self, d: u32) -> Option<Self> {
        let phi_n = totient(self.order);
        let phi_d = totient(d);
        // columns: lifts of ζ_d^j
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi_d + 1]; phi_n];
        for j in 0..phi_d {
            let col = CycNumber::zeta(d, j as i64).lift(self.order);
            for (e, c) in col.terms() {
                m[e as usize][j] = c;
            }
        }
        for (e, c) in self.terms() {
            m[e as usize][phi_d] = c;
        }
        let sol = solve_rational(m, phi_d)?;
        Some(CycNumber::from_terms(
            d,
            sol.into_iter().enumerate().map(|(j, c)| (j as i64, c)),
        ))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = lcm(self.order, other.order);
        (self.lift(l), other.lift(l))
    }

    fn add_same(a: &Self, b: &Self, negate_b: bool) -> Self {
        debug_assert_eq!(a.order, b.order);
        let mut out: Vec<(u32, BigInt)> = Vec::with_capacity(a.num.len() + b.num.len());
        let (fa, fb) = if a.den == b.den {
            (BigInt::one(), BigInt::one())
        } else {
            (b.den.clone(), a.den.clone())
        };
        let den = if a.den == b.den { a.den.clone() } else { &a.den * &b.den };
        let (mut i, mut j) = (0, 0);
        let sb = |c: &BigInt| if negate_b { -(c * &fb) } else { c * &fb };
        while i < a.num.len() || j < b.num.len() {
            let ea = a.num.get(i).map(|t| t.0);
            let eb = b.num.get(j).map(|t| t.0);
            match (ea, eb) {
                (Some(x), Some(y)) if x == y => {
                    let c = &a.num[i].1 * &fa + sb(&b.num[j].1);
                    if !c.is_zero() {
                        out.push((x, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push((x, &a.num[i].1 * &fa));
                    i += 1;
                }
                (Some(x), None) => {
                    out.push((x, &a.num[i].1 * &fa));
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push((y, sb(&b.num[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        CycNumber { order: a.order, den, num: out }.normalized()
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        debug_assert_eq!(a.order, b.order);
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let n = a.order as usize;
        let mut acc = vec![BigInt::zero(); n];
        for (ea, ca) in &a.num {
            for (eb, cb) in &b.num {
                acc[(*ea as usize + *eb as usize) % n] += ca * cb;
            }
        }
        Self::reduce_dense(a.order, acc, &a.den * &b.den)
    }

    pub fn inverse(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let [(e, c)] = self.num.as_slice() {
            let coeff = BigRational::new(self.den.clone(), c.clone());
            return Ok(Self::from_terms(self.order, [(-(*e as i64), coeff)]));
        }
        // Solve (self · x = 1) as a rational linear system in the power basis.
        let phi = totient(self.order);
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self * &CycNumber::zeta(self.order, j as i64);
            for (e, c) in col.terms() {
                m[e as usize][j] = c;
            }
        }
        m[0][phi] = BigRational::one();
        let sol = solve_rational(m, phi).expect("nonzero field element is invertible");
        Ok(Self::from_terms(
            self.order,
            sol.into_iter().enumerate().map(|(j, c)| (j as i64, c)),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, CycError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        let n = self.order as usize;
        let mut acc = vec![BigInt::zero(); n];
        for (e, c) in &self.num {
            acc[(n - *e as usize) % n] += c;
        }
        Self::reduce_dense(self.order, acc, self.den.clone())
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Floating-point image under `ζ_N ↦ exp(2πi/N)`.
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut z = Complex64::new(0.0, 0.0);
        for (e, c) in &self.num {
            let angle = 2.0 * std::f64::consts::PI * (*e as f64) / (self.order as f64);
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            z += Complex64::from_polar(c, angle);
        }
        z
    }

    /// Sign of a real element, certified by fixed-point interval evaluation at
    /// escalating precision.
    pub fn real_sign(&self, max_bits: u32) -> Result<Ordering, CycError> {
        if !self.is_self_conjugate() {
            return Err(CycError::NotReal(self.to_string()));
        }
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        let mut bits = 64;
        loop {
            if let Some(s) = self.real_sign_at(bits) {
                return Ok(s);
            }
            if bits >= max_bits {
                return Err(CycError::PrecisionExhausted { value: self.to_string(), bits });
            }
            bits = (bits * 2).min(max_bits);
        }
    }

    fn real_sign_at(&self, bits: u32) -> Option<Ordering> {
        let g = bits + 64;
        let pi = fixed_pi(g);
        // Per-cosine error budget, in units of 2^-g; generous relative to the
        // rounding actually incurred by `fixed_pi` and `fixed_cos`.
        let ulp_budget = BigInt::from(64u64 * g as u64 + 64);
        let mut sum = BigInt::zero();
        let mut err = BigInt::zero();
        for (e, c) in &self.num {
            let mut k = *e as u64;
            let n = self.order as u64;
            if 2 * k > n {
                k = n - k;
            }
            let x = (&pi * BigInt::from(2 * k)) / BigInt::from(n);
            let cosx = fixed_cos(&x, g);
            sum += c * cosx;
            err += c.abs() * &ulp_budget;
        }
        match sum.abs().cmp(&err) {
            Ordering::Greater => Some(if sum.sign() == Sign::Minus { Ordering::Less } else { Ordering::Greater }),
            _ => None,
        }
    }
}

/// π·2^g, accurate to a few dozen units in the last place (Machin's formula).
fn fixed_pi(g: u32) -> BigInt {
    fn atan_inv(x: u64, g: u32) -> BigInt {
        let one = BigInt::one() << g;
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut term = one / &x;
        let mut sum = term.clone();
        let mut k = 1u64;
        while !term.is_zero() {
            term /= &x2;
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    }
    atan_inv(5, g) * 16 - atan_inv(239, g) * 4
}

/// cos(x)·2^g for fixed-point `x = x_real·2^g` with `0 ≤ x_real ≤ π`.
fn fixed_cos(x: &BigInt, g: u32) -> BigInt {
    let one = BigInt::one() << g;
    let x2 = (x * x) >> g;
    let mut term = one.clone();
    let mut sum = one;
    let mut m = 1u64;
    while !term.is_zero() {
        term = (&term * &x2) >> g;
        term /= BigInt::from((2 * m - 1) * (2 * m));
        if m % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        m += 1;
    }
    sum
}

/// Gaussian elimination on an augmented `rows × (unknowns+1)` system; returns
/// a solution if the system is consistent and has full column rank.
fn solve_rational(mut m: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(unknowns);
    for col in 0..unknowns {
        let Some(r) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            return None;
        };
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=unknowns {
                    let t = &f * &m[pivot_row][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| !m[r][unknowns].is_zero()) {
        return None;
    }
    Some(pivots.into_iter().map(|r| m[r][unknowns].clone()).collect())
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.common(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNumber {}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b) = self.common(rhs);
        CycNumber::add_same(&a, &b, false)
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b) = self.common(rhs);
        CycNumber::add_same(&a, &b, true)
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() || rhs.is_zero() {
            return CycNumber::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.order == 1 || rhs.order == 1 {
            // rational scaling never needs reduction
            let (q, x) = if self.order == 1 { (self, rhs) } else { (rhs, self) };
            let c = &q.num[0].1;
            return CycNumber {
                order: x.order,
                den: &q.den * &x.den,
                num: x.num.iter().map(|(e, v)| (*e, v * c)).collect(),
            }
            .normalized();
        }
        let (a, b) = self.common(rhs);
        CycNumber::mul_same(&a, &b)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            den: self.den.clone(),
            num: self.num.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> Self {
        iter.fold(CycNumber::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let c = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if e == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{c}·")?;
            }
            write!(f, "ζ{}", self.order)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// The four field operations behind one entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(a: &CycNumber, b: &CycNumber, op: ArithOp) -> Result<CycNumber, CycError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

pub fn embed_complex(a: &CycNumber) -> Complex64 {
    a.to_complex()
}

/// Default cap on the interval-evaluation precision used by [`is_real_positive`].
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

pub fn is_real_positive(a: &CycNumber) -> Result<bool, CycError> {
    is_real_positive_with_cap(a, DEFAULT_PRECISION_CAP)
}

pub fn is_real_positive_with_cap(a: &CycNumber, max_bits: u32) -> Result<bool, CycError> {
    Ok(a.real_sign(max_bits)? == Ordering::Greater)
}

/// Wire form `{"order": N, "terms": [[num, den, exp], ...]}`; a bare integer
/// or a `"p/q"` string is accepted on input as a rational.
#[derive(Serialize, Deserialize)]
struct CycWire {
    order: u32,
    terms: Vec<(serde_json::Value, serde_json::Value, i64)>,
}

fn int_value(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

fn parse_int(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("non-integer coefficient {n}")),
        serde_json::Value::String(s) => s.trim().parse().map_err(|_| format!("bad integer {s:?}")),
        other => Err(format!("expected integer, found {other}")),
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| format!("bad rational {s:?}"))?)),
    }
}

impl Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let wire = CycWire {
            order: self.order,
            terms: self
                .num
                .iter()
                .map(|(e, c)| {
                    let q = BigRational::new(c.clone(), self.den.clone());
                    (int_value(q.numer()), int_value(q.denom()), *e as i64)
                })
                .collect(),
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(de)?;
        CycNumber::from_json(&v).map_err(D::Error::custom)
    }
}

impl CycNumber {
    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::Number(_) => Ok(CycNumber::from_rational(BigRational::from_integer(parse_int(v)?))),
            serde_json::Value::String(s) => Ok(CycNumber::from_rational(parse_rational(s)?)),
            serde_json::Value::Object(_) => {
                let wire: CycWire = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
                if wire.order == 0 {
                    return Err(CycError::InvalidOrder(0).to_string());
                }
                let mut terms = Vec::with_capacity(wire.terms.len());
                for (n, d, e) in &wire.terms {
                    let d = parse_int(d)?;
                    if d.is_zero() {
                        return Err("zero denominator".into());
                    }
                    terms.push((*e, BigRational::new(parse_int(n)?, d)));
                }
                Ok(CycNumber::from_terms(wire.order, terms))
            }
            other => Err(format!("expected a cyclotomic number, found {other}")),
        }
    }
}
