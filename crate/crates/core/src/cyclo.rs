//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! An element of Q(ζ_N) is stored by its coordinates in the power basis
//! `1, ζ, …, ζ^(φ(N)-1)`. Every operation reduces modulo the cyclotomic
//! polynomial Φ_N immediately, so zero testing is a coefficient check and
//! two elements of the same order are equal iff their coordinates are equal.
//!
//! Elements of different orders can be mixed freely; the operands are first
//! embedded into Q(ζ_lcm).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational; always kept in lowest terms with a
/// positive denominator.
pub type Rational = num::BigRational;

/// Precomputed data for Q(ζ_N).
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    phi: usize,
    /// Coefficients of Φ_N, lowest degree first (monic, length φ+1).
    modulus: Vec<i64>,
    /// ζ^k reduced into the power basis, for 0 ≤ k < N.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree φ(N) of the field over Q.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    fn build(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let phi = modulus.len() - 1;
        let n = order as usize;
        let mut powers = Vec::with_capacity(n);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then eliminate x^phi
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
            if top != 0 {
                for (t, m) in modulus[..phi].iter().enumerate() {
                    next[t] = next[t]
                        .checked_sub(top.checked_mul(*m).expect("cyclotomic overflow"))
                        .expect("cyclotomic overflow");
                }
            }
            cur = next;
        }
        CyclotomicField {
            order,
            phi,
            modulus,
            powers,
        }
    }
}

/// Returns the shared field descriptor for Q(ζ_N).
pub fn field(order: u32) -> &'static CyclotomicField {
    static REGISTRY: OnceLock<Mutex<HashMap<u32, &'static CyclotomicField>>> = OnceLock::new();
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = registry.lock().expect("field registry poisoned");
    map.entry(order)
        .or_insert_with(|| Box::leak(Box::new(CyclotomicField::build(order))))
}

/// Coefficients of Φ_n (lowest degree first), from x^n - 1 = ∏_{d|n} Φ_d.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    fn go(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut num = vec![0i64; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                let div = go(d, memo);
                num = exact_div_monic(&num, &div);
            }
        }
        memo.insert(n, num.clone());
        num
    }
    go(n, &mut HashMap::new())
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (t, d) in den.iter().enumerate() {
                rem[k + t] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "non-exact polynomial division");
    quo
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An exact element of Q(ζ_N).
#[derive(Clone)]
pub struct CycloNumber {
    field: &'static CyclotomicField,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn zero(order: u32) -> Self {
        let field = field(order);
        CycloNumber {
            field,
            coeffs: vec![Rational::zero(); field.phi],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational_in(Rational::one(), order)
    }

    /// A rational number as an element of Q = Q(ζ_1).
    pub fn from_rational(q: Rational) -> Self {
        Self::from_rational_in(q, 1)
    }

    pub fn from_rational_in(q: Rational, order: u32) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_N^k, canonically reduced. Negative `k` is allowed.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let field = field(order);
        let e = k.rem_euclid(order as i64) as usize;
        CycloNumber {
            field,
            coeffs: field.powers[e]
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Builds an element from power-basis coordinates. Longer inputs are
    /// reduced modulo Φ_N.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        let mut z = Self::zero(order);
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                z.add_term(&c, k);
            }
        }
        z
    }

    /// Adds `c · ζ^k` in place.
    fn add_term(&mut self, c: &Rational, k: usize) {
        let n = self.field.order as usize;
        let k = k % n;
        if k < self.field.phi {
            self.coeffs[k] += c;
        } else {
            for (t, m) in self.field.powers[k].iter().enumerate() {
                if *m != 0 {
                    self.coeffs[t] += c * Rational::from_integer(BigInt::from(*m));
                }
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Represents the same element in Q(ζ_M) using ζ_N = ζ_M^(M/N).
    pub fn embed(&self, target: u32) -> Result<Self> {
        let from = self.field.order;
        if target == 0 || !target.is_multiple_of(from) {
            return Err(Error::OrderNotDivisible { from, to: target });
        }
        if target == from {
            return Ok(self.clone());
        }
        let step = (target / from) as usize;
        let mut out = Self::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(c, k * step);
            }
        }
        Ok(out)
    }

    /// Re-expresses the element in the subfield Q(ζ_n), when it lies there.
    pub fn try_restrict(&self, n: u32) -> Option<Self> {
        let big = self.field.order;
        if n == 0 || !big.is_multiple_of(n) {
            return None;
        }
        let small = field(n);
        // columns: images of ζ_n^k in Q(ζ_big)
        let cols: Vec<Vec<Rational>> = (0..small.phi)
            .map(|k| {
                CycloNumber::root_of_unity(n, k as i64)
                    .embed(big)
                    .expect("divisible order")
                    .coeffs
            })
            .collect();
        let rows = self.field.phi;
        let mut aug: Vec<Vec<Rational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let x = solve_augmented(&mut aug, small.phi)?;
        Some(CycloNumber::from_coeffs(n, x))
    }

    /// Complex conjugation, ζ ↦ ζ^(N-1).
    pub fn conjugate(&self) -> Self {
        let n = self.field.order as usize;
        let mut out = Self::zero(self.field.order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(c, (n - k) % n);
            }
        }
        out
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational_in(q.recip(), self.order()));
        }
        // Solve (multiplication by self) · x = 1 over Q.
        let phi = self.field.phi;
        let columns: Vec<Vec<Rational>> = (0..phi)
            .map(|j| mul_same(self.field, &self.coeffs, &Self::root_of_unity(self.order(), j as i64).coeffs))
            .collect();
        let mut aug: Vec<Vec<Rational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        let x = solve_augmented(&mut aug, phi).ok_or(Error::DivisionByZero)?;
        Ok(CycloNumber {
            field: self.field,
            coeffs: x,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloNumber {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Floating-point value with ζ_N = exp(2πi/N).
    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Nonzero terms as (coefficient, exponent), exponent ascending.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, usize)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, k))
    }

    /// Total order on elements of the same field (order first, then
    /// coordinates). Used only to sort canonical data deterministically.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.field
            .order
            .cmp(&other.field.order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm(a.order(), b.order());
        (a.embed(l).expect("lcm"), b.embed(l).expect("lcm"))
    }
}

fn mul_same(field: &'static CyclotomicField, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let phi = field.phi;
    let n = field.order as usize;
    let mut acc = vec![Rational::zero(); phi];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let p = x * y;
            let k = (i + j) % n;
            if k < phi {
                acc[k] += p;
            } else {
                for (t, m) in field.powers[k].iter().enumerate() {
                    match *m {
                        0 => {}
                        1 => acc[t] += &p,
                        -1 => acc[t] -= &p,
                        m => acc[t] += &p * Rational::from_integer(BigInt::from(m)),
                    }
                }
            }
        }
    }
    acc
}

/// Gauss-Jordan on an augmented rational system with `unknowns` columns.
/// Returns one solution (free variables zero) or `None` if inconsistent.
fn solve_augmented(aug: &mut [Vec<Rational>], unknowns: usize) -> Option<Vec<Rational>> {
    let rows = aug.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for v in aug[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][unknowns].clone();
    }
    Some(x)
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.field.order == other.field.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::unify(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNumber[{}]({})", self.field.order, self)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, k) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{k}", self.field.order)?,
                (_, false) => write!(f, "{mag}*z{}^{k}", self.field.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add<&CycloNumber> for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        if self.field.order != rhs.field.order {
            let (a, b) = CycloNumber::unify(self, rhs);
            return &a + &b;
        }
        CycloNumber {
            field: self.field,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub<&CycloNumber> for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        if self.field.order != rhs.field.order {
            let (a, b) = CycloNumber::unify(self, rhs);
            return &a - &b;
        }
        CycloNumber {
            field: self.field,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul<&CycloNumber> for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        if self.field.order == rhs.field.order {
            return CycloNumber {
                field: self.field,
                coeffs: mul_same(self.field, &self.coeffs, &rhs.coeffs),
            };
        }
        // rational operands scale without changing field
        if rhs.field.phi == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.field.phi == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        let (a, b) = CycloNumber::unify(self, rhs);
        &a * &b
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: &CycloNumber) -> CycloNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        if self.field.order == rhs.field.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, rhs: &CycloNumber) {
        if self.field.order == rhs.field.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl From<i64> for CycloNumber {
    fn from(v: i64) -> Self {
        CycloNumber::from_int(v)
    }
}
