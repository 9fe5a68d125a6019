//! Dense exact linear algebra over [`CycloNumber`].
//!
//! Elimination is plain Gauss-Jordan with the first nonzero entry of each
//! column as pivot; exact arithmetic removes any need for pivoting strategy.

use std::cmp::Ordering;
use std::fmt;

use crate::cyclo::{lcm, CycloNumber};
use crate::error::{Error, Result};

pub type Vector = Vec<CycloNumber>;

/// Row-major matrix whose entries all live in one cyclotomic field.
#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<CycloNumber>,
}

impl Matrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<CycloNumber>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let order = data.iter().fold(1, |acc, x| lcm(acc, x.order()));
        let data = data
            .into_iter()
            .map(|x| x.embed(order).expect("lcm order"))
            .collect();
        Ok(Matrix {
            rows,
            cols,
            order,
            data,
        })
    }

    pub fn from_rows(rows: Vec<Vec<CycloNumber>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&v| CycloNumber::from_int(v)).collect())
            .expect("shape")
    }

    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        Matrix {
            rows,
            cols,
            order,
            data: vec![CycloNumber::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.data[i * n + i] = CycloNumber::one(order);
        }
        m
    }

    pub fn diag(entries: Vec<CycloNumber>) -> Self {
        let n = entries.len();
        let mut data = vec![CycloNumber::zero(1); n * n];
        for (i, e) in entries.into_iter().enumerate() {
            data[i * n + i] = e;
        }
        Self::from_vec(n, n, data).expect("square")
    }

    /// The matrix unit E_ij (0-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n, 1);
        m.data[i * n + j] = CycloNumber::one(1);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNumber {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNumber) {
        let l = lcm(self.order, v.order());
        if l != self.order {
            *self = self.embed(l).expect("lcm");
        }
        self.data[r * self.cols + c] = v.embed(l).expect("lcm");
    }

    pub fn entries(&self) -> &[CycloNumber] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[CycloNumber] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn embed(&self, order: u32) -> Result<Self> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            order,
            data: self.data.iter().map(|x| x.embed(order)).collect::<Result<_>>()?,
        })
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm(a.order, b.order);
        (a.embed(l).expect("lcm"), b.embed(l).expect("lcm"))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.order != other.order {
            let (a, b) = Self::unify(self, other);
            return a.mul(&b);
        }
        let mut out = Self::zeros(self.rows, other.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&CycloNumber, &CycloNumber) -> CycloNumber) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("elementwise operands differ in shape".into()));
        }
        Matrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        )
    }

    pub fn scale(&self, s: &CycloNumber) -> Matrix {
        Matrix::from_vec(self.rows, self.cols, self.data.iter().map(|x| x * s).collect())
            .expect("shape")
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            order: self.order,
            data,
        }
    }

    pub fn apply(&self, v: &[CycloNumber]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = CycloNumber::zero(self.order);
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn trace(&self) -> CycloNumber {
        let mut acc = CycloNumber::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloNumber::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// Returns `c` with `self = c · other`, if such a scalar exists.
    pub fn scalar_multiple_of(&self, other: &Matrix) -> Option<CycloNumber> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let idx = other.data.iter().position(|x| !x.is_zero())?;
        let c = self.data[idx].checked_div(&other.data[idx]).ok()?;
        let matches = self
            .data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| *a == &c * b);
        matches.then_some(c)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let p = m.get(r, j);
                    if !p.is_zero() {
                        let v = m.get(i, j) - &(&f * p);
                        m.data[i * m.cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The null space {v : self · v = 0}.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free.iter().map(|&f| {
            let mut v = vec![CycloNumber::zero(self.order); self.cols];
            v[f] = CycloNumber::one(self.order);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f);
            }
            v
        });
        Subspace::span(self.cols, vectors).expect("matching dimension")
    }

    pub fn det(&self) -> Result<CycloNumber> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = CycloNumber::one(self.order);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(CycloNumber::zero(self.order));
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in (c + 1)..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.data[i * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.order);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c).clone();
            }
            aug.data[r * 2 * n + n + r] = CycloNumber::one(self.order);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = Matrix::zeros(n, n, self.order);
        for r in 0..n {
            for c in 0..n {
                out.data[r * n + c] = red.get(r, n + c).clone();
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.rows, self.order);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over Q(z{}):", self.rows, self.cols, self.order)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A linear subspace stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    pivots: Vec<usize>,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            pivots: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(
            ambient_dim,
            (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)),
        )
        .expect("dimension")
    }

    /// The span of the given vectors.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vector>,
    {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        if let Some(bad) = rows.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::AmbientMismatch(bad.len(), ambient_dim));
        }
        if rows.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = Matrix::from_rows(rows)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace {
            ambient_dim,
            pivots,
            basis,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: usize) -> Result<()> {
        if self.ambient_dim != other {
            Err(Error::AmbientMismatch(self.ambient_dim, other))
        } else {
            Ok(())
        }
    }

    /// Residual of `w` after eliminating the pivot coordinates.
    fn reduce(&self, w: &[CycloNumber]) -> Vector {
        let mut r = w.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, w: &[CycloNumber]) -> Result<bool> {
        self.check_ambient(w.len())?;
        Ok(self.reduce(w).iter().all(CycloNumber::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient_dim)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim)?;
        Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Solve Σ a_i u_i - Σ b_j v_j = 0; the intersection is {Σ a_i u_i}.
        let p = self.dim();
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()))
            .collect();
        let m = Matrix::from_rows(cols)?.transpose();
        let ker = m.kernel();
        let vectors = ker.basis.iter().map(|k| {
            let mut acc = vec![CycloNumber::zero(1); self.ambient_dim];
            for (a, u) in k[..p].iter().zip(&self.basis) {
                if a.is_zero() {
                    continue;
                }
                for (x, y) in acc.iter_mut().zip(u) {
                    *x += &(a * y);
                }
            }
            acc
        });
        Subspace::span(self.ambient_dim, vectors)
    }

    /// Same subspace? Equivalent to `==` once both sides share a field;
    /// this version also compares across cyclotomic orders.
    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient_dim)?;
        Ok(self.pivots == other.pivots && self.basis == other.basis)
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::AmbientMismatch(m.cols(), self.ambient_dim));
        }
        Subspace::span(
            m.rows(),
            self.basis.iter().map(|v| m.apply(v)).collect::<Result<Vec<_>>>()?,
        )
    }

    /// Deterministic total order: dimension, pivots, then coordinates.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        other
            .dim()
            .cmp(&self.dim())
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| {
                for (a, b) in self.basis.iter().flatten().zip(other.basis.iter().flatten()) {
                    let o = a.canonical_cmp(b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: ", self.dim(), self.ambient_dim)?;
        for v in &self.basis {
            let s: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", s.join(", "))?;
        }
        write!(f, ")")
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![CycloNumber::zero(1); n];
    v[i] = CycloNumber::one(1);
    v
}

pub fn scale_vector(v: &[CycloNumber], s: &CycloNumber) -> Vector {
    v.iter().map(|x| x * s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(n: usize, i: usize) -> Vector {
        unit_vector(n, i)
    }

    fn b1() -> Matrix {
        Matrix::from_ints(3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0])
    }

    #[test]
    fn det_of_cyclic_permutation() {
        // cofactor expansion along the first row: -1 * det[[0,1],[1,0]] = 1
        assert_eq!(b1().det().unwrap(), CycloNumber::from_int(1));
        let b2 = Matrix::from_ints(3, 3, &[1, 0, 0, 0, 0, 1, 0, 1, 0]);
        assert_eq!(b2.det().unwrap(), CycloNumber::from_int(-1));
    }

    #[test]
    fn inverse_and_transpose() {
        let id = Matrix::identity(3, 1);
        assert_eq!(id.inverse().unwrap(), id);
        assert_eq!(Matrix::unit(3, 0, 1).transpose(), Matrix::unit(3, 1, 0));
        let inv = b1().inverse().unwrap();
        assert!(b1().mul(&inv).unwrap().is_identity());
        assert_eq!(Matrix::from_ints(2, 2, &[1, 2, 2, 4]).inverse(), Err(Error::Singular));
        assert!(matches!(b1().mul(&Matrix::zeros(2, 2, 1)), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn kernels() {
        assert!(Matrix::identity(4, 1).kernel().is_zero());
        assert_eq!(Matrix::zeros(2, 3, 1).kernel().dim(), 3);
        let d = Matrix::diag(vec![0.into(), 1.into(), 1.into()]);
        assert_eq!(d.kernel(), Subspace::span(3, [e(3, 0)]).unwrap());
    }

    #[test]
    fn lattice_operations() {
        let s1 = Subspace::span(3, [e(3, 0)]).unwrap();
        let s2 = Subspace::span(3, [e(3, 1)]).unwrap();
        assert_eq!(s1.sum(&s2).unwrap(), Subspace::span(3, [e(3, 0), e(3, 1)]).unwrap());
        let u = Subspace::span(3, [e(3, 0), e(3, 1)]).unwrap();
        let v = Subspace::span(3, [e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(u.intersect(&v).unwrap(), s2);
        let w: Vector = vec![1.into(), 1.into(), 0.into()];
        let line = Subspace::span(3, [w.clone()]).unwrap();
        let scaled = scale_vector(&w, &CycloNumber::root_of_unity(3, 1));
        assert!(line.contains(&scaled).unwrap());
        assert!(matches!(line.contains(&e(2, 0)), Err(Error::AmbientMismatch(..))));
    }

    #[test]
    fn scalar_multiples() {
        let a = b1();
        let w = CycloNumber::root_of_unity(3, 1);
        assert_eq!(a.scale(&w).scalar_multiple_of(&a), Some(w));
        assert_eq!(Matrix::identity(3, 1).scalar_multiple_of(&a), None);
    }

    fn small() -> impl Strategy<Value = CycloNumber> {
        (-3i64..=3, 0i64..12).prop_map(|(c, k)| {
            &CycloNumber::from_int(c) * &CycloNumber::root_of_unity(12, k)
        })
    }

    fn vectors(n: usize, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vector>> {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![3 => Just(CycloNumber::zero(1)), 2 => small()], n),
            count,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn dimension_formula(a in vectors(8, 0..6), b in vectors(8, 0..6)) {
            let u = Subspace::span(8, a).unwrap();
            let v = Subspace::span(8, b).unwrap();
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
            prop_assert!(u.contains_subspace(&i).unwrap() && v.contains_subspace(&i).unwrap());
        }

        #[test]
        fn rref_idempotent_and_kernel_sound(rows in vectors(5, 1..5)) {
            let m = Matrix::from_rows(rows).unwrap();
            let (r, p) = m.rref();
            let (rr, pp) = r.rref();
            prop_assert_eq!(&rr, &r);
            prop_assert_eq!(&pp, &p);
            let k = m.kernel();
            prop_assert_eq!(k.dim(), m.cols() - p.len());
            for v in k.basis() {
                prop_assert!(m.apply(v).unwrap().iter().all(CycloNumber::is_zero));
            }
        }

        #[test]
        fn det_multiplicative(a in vectors(3, 3..4), b in vectors(3, 3..4)) {
            let a = Matrix::from_rows(a).unwrap();
            let b = Matrix::from_rows(b).unwrap();
            prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        }
    }
}
