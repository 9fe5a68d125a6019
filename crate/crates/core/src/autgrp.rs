//! Automorphisms of sl(n,C): `Ad_A X = A⁻¹XA` and `Out_A X = -(A⁻¹XA)ᵀ`.
//!
//! Representatives are projective: `A` and `cA` give the same automorphism,
//! and equality is equality of the induced action on algebra coordinates.

use std::fmt;

use crate::cyclo::{lcm, CycloNumber};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};

/// Order detection gives up after this many powers.
pub const DEFAULT_ORDER_CAP: usize = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Inner,
    Outer,
}

impl Kind {
    pub fn compose(self, other: Kind) -> Kind {
        if self == other {
            Kind::Inner
        } else {
            Kind::Outer
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Inner => "inner",
            Kind::Outer => "outer",
        }
    }
}

#[derive(Clone)]
pub struct Automorphism {
    kind: Kind,
    rep: Matrix,
    action: Matrix,
}

/// An eigenvalue `ζ_m^k` together with its eigenspace.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub root: (u32, u32),
    pub eigenvalue: CycloNumber,
    pub space: Subspace,
}

impl Automorphism {
    pub fn new(alg: &LieAlgebra, kind: Kind, rep: Matrix) -> Result<Self> {
        let n = alg.n();
        if rep.rows() != n || rep.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "representative must be {n}x{n}, got {}x{}",
                rep.rows(),
                rep.cols()
            )));
        }
        let inv = rep.inverse()?;
        let dim = alg.dim();
        let mut columns = Vec::with_capacity(dim);
        for b in alg.basis_matrices() {
            let conj = inv.mul(b)?.mul(&rep)?;
            let image = match kind {
                Kind::Inner => conj,
                Kind::Outer => conj.transpose().neg(),
            };
            columns.push(alg.from_matrix(&image)?.coords);
        }
        let action = Matrix::from_rows(columns)?.transpose();
        Ok(Automorphism { kind, rep, action })
    }

    pub fn ad(alg: &LieAlgebra, a: Matrix) -> Result<Self> {
        Self::new(alg, Kind::Inner, a)
    }

    pub fn out(alg: &LieAlgebra, a: Matrix) -> Result<Self> {
        Self::new(alg, Kind::Outer, a)
    }

    pub fn identity(alg: &LieAlgebra) -> Self {
        Automorphism {
            kind: Kind::Inner,
            rep: Matrix::identity(alg.n(), 1),
            action: Matrix::identity(alg.dim(), 1),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rep(&self) -> &Matrix {
        &self.rep
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub fn is_identity(&self) -> bool {
        self.action.is_identity()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        // Ad_A∘Ad_B = Ad_{BA}, Out_A∘Ad_B = Out_{BA},
        // Ad_A∘Out_B = Out_{BA^{-T}}, Out_A∘Out_B = Ad_{BA^{-T}}.
        let left = match other.kind {
            Kind::Inner => self.rep.clone(),
            Kind::Outer => self.rep.inverse().expect("invertible rep").transpose(),
        };
        Automorphism {
            kind: self.kind.compose(other.kind),
            rep: other.rep.mul(&left).expect("same n"),
            action: self.action.mul(&other.action).expect("same dim"),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let rep_inv = self.rep.inverse().expect("invertible rep");
        let rep = match self.kind {
            Kind::Inner => rep_inv,
            Kind::Outer => self.rep.transpose(),
        };
        Automorphism {
            kind: self.kind,
            rep,
            action: self.action.inverse().expect("automorphisms are invertible"),
        }
    }

    /// `h⁻¹ ∘ self ∘ h`.
    pub fn conjugate_by(&self, h: &Automorphism) -> Automorphism {
        h.inverse().compose(&self.compose(h))
    }

    pub fn commutes_with(&self, other: &Automorphism) -> bool {
        self.action.mul(&other.action).expect("dim") == other.action.mul(&self.action).expect("dim")
    }

    pub fn power(&self, e: u32) -> Automorphism {
        let mut acc = Automorphism {
            kind: Kind::Inner,
            rep: Matrix::identity(self.rep.rows(), 1),
            action: Matrix::identity(self.action.rows(), 1),
        };
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// Smallest `m ≤ cap` with `action^m = 1`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut p = self.action.clone();
        for m in 1..=cap {
            if p.is_identity() {
                return Some(m);
            }
            p = p.mul(&self.action).expect("square");
        }
        None
    }

    /// Eigenspace decomposition of a finite-order automorphism. Eigenvalues
    /// are the `m`-th roots of unity, `m` the order; only nonzero spaces are
    /// returned, ordered by exponent.
    pub fn eigenspaces(&self, cap: usize) -> Result<Vec<Eigenspace>> {
        let m = self.order(cap).ok_or(Error::InfiniteOrder { cap })? as u32;
        let order = lcm(self.action.order(), m);
        let action = self.action.embed(order)?;
        let dim = action.rows();
        let mut out = Vec::new();
        for k in 0..m {
            let lambda = CycloNumber::root_of_unity(m, k as i64);
            let shifted = action.sub(&Matrix::identity(dim, order).scale(&lambda))?;
            let space = shifted.kernel();
            if !space.is_zero() {
                let g = gcd(k, m);
                out.push(Eigenspace {
                    root: (k / g, m / g),
                    eigenvalue: lambda,
                    space,
                });
            }
        }
        Ok(out)
    }

    /// Checks that the cached action agrees with the defining formula on `rep`.
    pub fn is_consistent(&self, alg: &LieAlgebra) -> bool {
        Automorphism::new(alg, self.kind, self.rep.clone())
            .map(|a| a.action == self.action)
            .unwrap_or(false)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for Automorphism {}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({}, rep = {:?})", self.kind.as_str(), self.rep)
    }
}

/// Closure of a set of automorphisms under composition.
pub fn closure(alg: &LieAlgebra, gens: &[Automorphism], cap: usize) -> Result<Vec<Automorphism>> {
    let mut elements = vec![Automorphism::identity(alg)];
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        frontier += 1;
        for g in gens {
            let next = g.compose(&current);
            if !elements.contains(&next) {
                if elements.len() >= cap {
                    return Err(Error::ClosureCap(cap));
                }
                elements.push(next);
            }
        }
    }
    Ok(elements)
}

/// Clock matrix `diag(1, ζ_n, …, ζ_n^{n-1})`.
pub fn clock(n: usize) -> Matrix {
    Matrix::diag((0..n as i64).map(|k| CycloNumber::root_of_unity(n as u32, k)).collect())
}

/// Cyclic shift with `Q e_{j+1} = e_j`.
pub fn shift(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n, 1);
    for j in 0..n {
        m.set(j, (j + 1) % n, CycloNumber::one(1));
    }
    m
}

/// Named matrices for sl(3): the permutation matrices B1, B2, the diagonal
/// H = diag(1,i,i), the clock P, shift Q, the (unnormalized) Sylvester matrix
/// S_jk = ω^{jk} and D = diag(1,1,ω), with ω = ζ_3.
pub mod named {
    use super::*;

    fn w(k: i64) -> CycloNumber {
        CycloNumber::root_of_unity(3, k)
    }

    pub fn b1() -> Matrix {
        Matrix::from_ints(3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0])
    }

    pub fn b2() -> Matrix {
        Matrix::from_ints(3, 3, &[1, 0, 0, 0, 0, 1, 0, 1, 0])
    }

    pub fn h() -> Matrix {
        let i = CycloNumber::root_of_unity(4, 1);
        Matrix::diag(vec![CycloNumber::one(4), i.clone(), i])
    }

    pub fn p() -> Matrix {
        Matrix::diag(vec![w(0), w(1), w(2)])
    }

    pub fn q() -> Matrix {
        b1()
    }

    pub fn s() -> Matrix {
        let rows = (0..3)
            .map(|j| (0..3).map(|k| w(j * k)).collect())
            .collect();
        Matrix::from_rows(rows).expect("3x3")
    }

    pub fn d() -> Matrix {
        Matrix::diag(vec![w(0), w(0), w(1)])
    }

    pub const NAMES: [&str; 8] = ["AdB1", "AdB2", "AdH", "AdS", "AdD", "AdP", "AdQ", "OutI"];

    /// Resolves one of [`NAMES`] to an automorphism of sl(3).
    pub fn lookup(alg: &LieAlgebra, name: &str) -> Result<Automorphism> {
        let a = match name {
            "AdB1" => Automorphism::ad(alg, b1()),
            "AdB2" => Automorphism::ad(alg, b2()),
            "AdH" => Automorphism::ad(alg, h()),
            "AdS" => Automorphism::ad(alg, s()),
            "AdD" => Automorphism::ad(alg, d()),
            "AdP" => Automorphism::ad(alg, p()),
            "AdQ" => Automorphism::ad(alg, q()),
            "OutI" => Automorphism::out(alg, Matrix::identity(3, 1)),
            "Id" => Ok(Automorphism::identity(alg)),
            other => Err(Error::Parse(format!(
                "unknown automorphism `{other}` (known: {})",
                NAMES.join(", ")
            ))),
        }?;
        Ok(a)
    }
}
