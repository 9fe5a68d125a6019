//! sl(n,C) as a structure-constant algebra.
//!
//! Basis order: `E_ij` for `i != j` in lexicographic order, then
//! `H_k = E_kk - E_{k+1,k+1}` for `k = 1..n-1`.

use std::fmt;

use crate::cyclo::{CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

/// Sparse structure constants: `[b_i, b_j] = Σ_k c^k_ij b_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Vec<(usize, CycloNumber)>>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            dim,
            table: vec![Vec::new(); dim * dim],
        }
    }

    /// Builds the table from dense bracket images `images[i*dim + j]`.
    pub fn from_dense(dim: usize, images: Vec<Vector>) -> Self {
        let table = images
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        StructureConstants { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero entries of `[b_i, b_j]`.
    pub fn bracket_of_basis(&self, i: usize, j: usize) -> &[(usize, CycloNumber)] {
        &self.table[i * self.dim + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> CycloNumber {
        self.bracket_of_basis(i, j)
            .iter()
            .find(|(t, _)| *t == k)
            .map_or_else(|| CycloNumber::zero(1), |(_, c)| c.clone())
    }

    /// Overwrites `c^k_ij` (and nothing else; antisymmetry is the caller's
    /// business).
    pub fn set_coefficient(&mut self, i: usize, j: usize, k: usize, value: CycloNumber) {
        let entry = &mut self.table[i * self.dim + j];
        entry.retain(|(t, _)| *t != k);
        if !value.is_zero() {
            entry.push((k, value));
            entry.sort_by_key(|(t, _)| *t);
        }
    }

    /// Multiplies the whole block `[b_i, b_j]` by `s`.
    pub fn scale_block(&mut self, i: usize, j: usize, s: &CycloNumber) {
        let entry = &mut self.table[i * self.dim + j];
        if s.is_zero() {
            entry.clear();
        } else {
            for (_, c) in entry.iter_mut() {
                *c = &*c * s;
            }
        }
    }

    pub fn bracket(&self, x: &[CycloNumber], y: &[CycloNumber]) -> Vector {
        let mut out = vec![CycloNumber::zero(1); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_of_basis(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    fn bracket_basis_with(&self, v: &[CycloNumber], j: usize) -> Vector {
        let mut out = vec![CycloNumber::zero(1); self.dim];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, c) in self.bracket_of_basis(i, j) {
                out[*k] += &(a * c);
            }
        }
        out
    }

    /// Exhaustive Jacobi identity check over all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// First basis triple `(i, j, k)` violating the Jacobi identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        let basis_bracket = |i: usize, j: usize| -> Vector {
            let mut v = vec![CycloNumber::zero(1); d];
            for (k, c) in self.bracket_of_basis(i, j) {
                v[*k] = c.clone();
            }
            v
        };
        for i in 0..d {
            for j in 0..d {
                let ij = basis_bracket(i, j);
                for k in 0..d {
                    let jk = basis_bracket(j, k);
                    let ki = basis_bracket(k, i);
                    let t1 = self.bracket_basis_with(&ij, k);
                    let t2 = self.bracket_basis_with(&jk, i);
                    let t3 = self.bracket_basis_with(&ki, j);
                    let zero = t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .all(|((a, b), c)| (&(a + b) + c).is_zero());
                    if !zero {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let a = self.bracket_of_basis(i, j);
                let b = self.bracket_of_basis(j, i);
                a.len() == b.len()
                    && a.iter().all(|(k, c)| b.iter().any(|(t, d)| t == k && *d == -c))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "StructureConstants(dim {})", self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.bracket_of_basis(i, j);
                if !e.is_empty() {
                    let terms: Vec<String> = e.iter().map(|(k, c)| format!("({c})b{k}")).collect();
                    writeln!(f, "  [b{i},b{j}] = {}", terms.join(" + "))?;
                }
            }
        }
        Ok(())
    }
}

/// The Lie algebra sl(n,C) with a fixed basis and cached structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    n: usize,
    basis: Vec<Matrix>,
    names: Vec<String>,
    structure: StructureConstants,
}

impl LieAlgebra {
    pub fn sl(n: usize) -> Self {
        assert!(n >= 2, "sl(n) needs n >= 2");
        let mut basis = Vec::new();
        let mut names = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    basis.push(Matrix::unit(n, i, j));
                    names.push(format!("E{}{}", i + 1, j + 1));
                }
            }
        }
        for k in 0..n - 1 {
            basis.push(Matrix::unit(n, k, k).sub(&Matrix::unit(n, k + 1, k + 1)).expect("shape"));
            names.push(format!("H{}", k + 1));
        }
        let dim = basis.len();
        let mut alg = LieAlgebra {
            n,
            basis,
            names,
            structure: StructureConstants::zero(dim),
        };
        let mut images = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let c = commutator(&alg.basis[i], &alg.basis[j]);
                images.push(alg.from_matrix(&c).expect("commutator is traceless").coords);
            }
        }
        alg.structure = StructureConstants::from_dense(dim, images);
        alg
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrices(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    /// Index of the off-diagonal basis element E_ij (0-based).
    pub fn offdiag_index(&self, i: usize, j: usize) -> usize {
        assert!(i != j);
        i * (self.n - 1) + if j > i { j - 1 } else { j }
    }

    pub fn basis_element(&self, idx: usize) -> AlgebraElement {
        let mut coords = vec![CycloNumber::zero(1); self.dim()];
        coords[idx] = CycloNumber::one(1);
        AlgebraElement { coords }
    }

    pub fn from_matrix(&self, m: &Matrix) -> Result<AlgebraElement> {
        let n = self.n;
        if m.rows() != n || m.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "expected {n}x{n}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.trace().is_zero() {
            return Err(Error::NonzeroTrace);
        }
        let mut coords = Vec::with_capacity(self.dim());
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    coords.push(m.get(i, j).clone());
                }
            }
        }
        // diag(d) = Σ h_k (e_k - e_{k+1})  ⇒  h_k = d_1 + … + d_k
        let mut acc = CycloNumber::zero(m.order());
        for k in 0..n - 1 {
            acc += m.get(k, k);
            coords.push(acc.clone());
        }
        Ok(AlgebraElement { coords })
    }

    pub fn to_matrix(&self, x: &AlgebraElement) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n, 1);
        for (c, b) in x.coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c)).expect("shape");
            }
        }
        m
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: self.structure.bracket(&x.coords, &y.coords),
        }
    }

    pub fn jacobi_check(&self) -> bool {
        self.structure.jacobi_holds()
    }

    /// Named-basis text form; non-rational coefficients are parenthesized.
    pub fn format_element(&self, coords: &[CycloNumber]) -> String {
        let mut out = String::new();
        for (c, name) in coords.iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            let (negative, body) = match c.as_rational() {
                Some(q) if q == Rational::from_integer(1.into()) => (false, name.clone()),
                Some(q) if q == Rational::from_integer((-1).into()) => (true, name.clone()),
                Some(q) if q < Rational::from_integer(0.into()) => (true, format!("{}*{name}", -q)),
                Some(q) => (false, format!("{q}*{name}")),
                None => (false, format!("({c})*{name}")),
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses the named-basis text form, e.g. `E12 + E21`, `2*H1 - 1/3*E23`.
    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement> {
        let mut coords = vec![CycloNumber::zero(1); self.dim()];
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&cleaned[start..i]);
                start = i;
            }
        }
        terms.push(&cleaned[start..]);
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let (coef, name) = match body.rsplit_once('*') {
                Some((c, n)) => (parse_rational(c)?, n),
                None => (crate::cyclo::Rational::from_integer(1.into()), body),
            };
            let idx = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown basis element `{name}`")))?;
            let c = CycloNumber::from_rational(coef * crate::cyclo::Rational::from_integer(sign.into()));
            coords[idx] += &c;
        }
        Ok(AlgebraElement { coords })
    }
}

fn parse_rational(s: &str) -> Result<crate::cyclo::Rational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num::BigInt = n.parse().map_err(|_| bad())?;
    let d: num::BigInt = d.parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(crate::cyclo::Rational::new(n, d))
}

pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b)
        .and_then(|ab| b.mul(a).and_then(|ba| ab.sub(&ba)))
        .expect("square matrices of equal size")
}

/// Coordinates of an element of sl(n) in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coords: Vector,
}

impl AlgebraElement {
    pub fn new(coords: Vector) -> Self {
        AlgebraElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycloNumber::is_zero)
    }

    pub fn scale(&self, s: &CycloNumber) -> Self {
        AlgebraElement {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }
}
