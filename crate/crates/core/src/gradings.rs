//! Gradings of sl(n,C): direct-sum decompositions `L = ⊕ L_i` such that
//! every `[L_i, L_j]` is zero or lies in a single `L_k`.

use std::fmt;
use std::sync::Arc;

use crate::autgrp::{Automorphism, Kind, DEFAULT_ORDER_CAP};
use crate::cyclo::CycloNumber;
use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace, Vector};

pub type GroupElement = Vec<u32>;

/// Direct product of cyclic groups `Z_{m_1} × … × Z_{m_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::InvalidLabeling(format!("bad cyclic orders {orders:?}")));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(m: u32) -> Self {
        AbelianGroup { orders: vec![m] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&m| m as usize).product()
    }

    pub fn zero(&self) -> GroupElement {
        vec![0; self.orders.len()]
    }

    pub fn is_element(&self, x: &[u32]) -> bool {
        x.len() == self.orders.len() && x.iter().zip(&self.orders).all(|(a, m)| a < m)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> GroupElement {
        a.iter().zip(&self.orders).map(|(x, m)| (m - x) % m).collect()
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::new()];
        for &m in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |v| {
                        let mut e = prefix.clone();
                        e.push(v);
                        e
                    })
                })
                .collect();
        }
        out
    }

    pub fn format_element(x: &[u32]) -> String {
        if x.len() == 1 {
            x[0].to_string()
        } else {
            let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(","))
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("xZ").replace("xZZ", "xZ"))
    }
}

/// Injective assignment of group elements to the parts of a grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub group: AbelianGroup,
    pub labels: Vec<GroupElement>,
}

impl Labeling {
    pub fn part_with_label(&self, x: &[u32]) -> Option<usize> {
        self.labels.iter().position(|l| l == x)
    }
}

/// Where the bracket of two parts lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockBracket {
    Zero,
    Into(usize),
    /// Nonzero and not inside any single part.
    Spread,
}

/// Result of checking the grading axiom, with the pair → part table as
/// certificate.
#[derive(Clone, Debug)]
pub struct GradingCheck {
    pub table: Vec<Vec<BlockBracket>>,
}

impl GradingCheck {
    pub fn is_grading(&self) -> bool {
        self.violation().is_none()
    }

    pub fn violation(&self) -> Option<(usize, usize)> {
        for (i, row) in self.table.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if *b == BlockBracket::Spread {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn get(&self, i: usize, j: usize) -> BlockBracket {
        self.table[i][j]
    }
}

#[derive(Clone)]
pub struct Grading {
    algebra: Arc<LieAlgebra>,
    parts: Vec<Subspace>,
    names: Vec<String>,
    labeling: Option<Labeling>,
}

impl Grading {
    /// Validates that the parts are nonzero and form a direct sum equal to
    /// the whole algebra.
    pub fn new(algebra: Arc<LieAlgebra>, parts: Vec<Subspace>) -> Result<Self> {
        let dim = algebra.dim();
        if parts.is_empty() {
            return Err(Error::NotDirectSum("no parts".into()));
        }
        for (i, p) in parts.iter().enumerate() {
            if p.ambient_dim() != dim {
                return Err(Error::AmbientMismatch(p.ambient_dim(), dim));
            }
            if p.is_zero() {
                return Err(Error::NotDirectSum(format!("part {i} is zero")));
            }
        }
        let total: usize = parts.iter().map(Subspace::dim).sum();
        let span = Subspace::span(dim, parts.iter().flat_map(|p| p.basis().iter().cloned()))?;
        if total != dim || span.dim() != dim {
            return Err(Error::NotDirectSum(format!(
                "part dimensions sum to {total}, span has dimension {}, algebra has {dim}",
                span.dim()
            )));
        }
        let names = (0..parts.len()).map(|i| format!("L{i}")).collect();
        Ok(Grading {
            algebra,
            parts,
            names,
            labeling: None,
        })
    }

    /// The coarsest grading, one part equal to the whole algebra.
    pub fn trivial(algebra: Arc<LieAlgebra>) -> Self {
        let dim = algebra.dim();
        Grading::new(algebra, vec![Subspace::full(dim)]).expect("whole algebra")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.parts.len());
        self.names = names;
        self
    }

    /// Attaches a labeling after checking it is well formed (not that it
    /// is additive; see [`Grading::verify_labeling`]).
    pub fn with_labeling(mut self, labeling: Labeling) -> Result<Self> {
        check_labels_well_formed(&self, &labeling.group, &labeling.labels)?;
        self.labeling = Some(labeling);
        Ok(self)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.labeling.as_ref()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    /// Basis of the algebra obtained by concatenating part bases, with the
    /// owning part of every vector.
    pub fn homogeneous_basis(&self) -> (Vec<Vector>, Vec<usize>) {
        let mut vectors = Vec::new();
        let mut owner = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            for v in p.basis() {
                vectors.push(v.clone());
                owner.push(i);
            }
        }
        (vectors, owner)
    }

    /// span{[u, v] : u ∈ L_i, v ∈ L_j}.
    pub fn bracket_span(&self, i: usize, j: usize) -> Subspace {
        let sc = self.algebra.structure();
        let dim = self.algebra.dim();
        let vectors = self.parts[i]
            .basis()
            .iter()
            .flat_map(|u| self.parts[j].basis().iter().map(move |v| sc.bracket(u, v)));
        Subspace::span(dim, vectors).expect("ambient dimension")
    }

    /// Checks `[L_i, L_j] ⊆ L_k` (or zero) for every ordered pair.
    #[allow(clippy::needless_range_loop)]
    pub fn verify(&self) -> GradingCheck {
        let k = self.parts.len();
        let mut table = vec![vec![BlockBracket::Zero; k]; k];
        for i in 0..k {
            for j in i..k {
                let span = self.bracket_span(i, j);
                let b = if span.is_zero() {
                    BlockBracket::Zero
                } else {
                    self.parts
                        .iter()
                        .position(|p| p.contains_subspace(&span).expect("ambient"))
                        .map_or(BlockBracket::Spread, BlockBracket::Into)
                };
                table[i][j] = b;
                table[j][i] = b;
            }
        }
        GradingCheck { table }
    }

    /// First pair `(i, j)` whose nonzero bracket is not inside the part
    /// labeled `l_i + l_j`.
    pub fn labeling_violation(&self, group: &AbelianGroup, labels: &[GroupElement]) -> Result<Option<(usize, usize)>> {
        check_labels_well_formed(self, group, labels)?;
        let k = self.parts.len();
        for i in 0..k {
            for j in i..k {
                let span = self.bracket_span(i, j);
                if span.is_zero() {
                    continue;
                }
                let target = group.add(&labels[i], &labels[j]);
                let ok = labels
                    .iter()
                    .position(|l| *l == target)
                    .is_some_and(|t| self.parts[t].contains_subspace(&span).expect("ambient"));
                if !ok {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// True iff every nonzero `[L_i, L_j]` lies in the part labeled `l_i + l_j`.
    pub fn verify_labeling(&self, group: &AbelianGroup, labels: &[GroupElement]) -> Result<bool> {
        Ok(self.labeling_violation(group, labels)?.is_none())
    }

    /// Backtracking search for an injective additive labeling by `group`.
    pub fn search_labeling(&self, group: &AbelianGroup) -> Option<Vec<GroupElement>> {
        let k = self.parts.len();
        if group.size() < k {
            return None;
        }
        let check = self.verify();
        if !check.is_grading() {
            return None;
        }
        // (i, j, target) for every nonzero bracket, i ≤ j
        let mut constraints = Vec::new();
        for i in 0..k {
            for j in i..k {
                if let BlockBracket::Into(t) = check.get(i, j) {
                    constraints.push((i, j, t));
                }
            }
        }
        // [L_i, L_j] ⊆ L_j forces l_i = 0
        let mut forced_zero = vec![false; k];
        for &(i, j, t) in &constraints {
            if t == j {
                forced_zero[i] = true;
            }
            if t == i {
                forced_zero[j] = true;
            }
        }
        if forced_zero.iter().filter(|&&z| z).count() > 1 {
            return None;
        }
        let mut order: Vec<usize> = (0..k).filter(|&i| forced_zero[i]).collect();
        order.extend((0..k).filter(|&i| !forced_zero[i]));

        let elements = group.elements();
        let mut assignment: Vec<Option<GroupElement>> = vec![None; k];
        let mut used = vec![false; elements.len()];
        let index_of = |x: &[u32]| elements.iter().position(|e| e.as_slice() == x).expect("element");

        fn consistent(
            group: &AbelianGroup,
            constraints: &[(usize, usize, usize)],
            assignment: &[Option<GroupElement>],
        ) -> bool {
            constraints.iter().all(|&(i, j, t)| {
                match (&assignment[i], &assignment[j], &assignment[t]) {
                    (Some(a), Some(b), Some(c)) => group.add(a, b) == *c,
                    (Some(a), Some(b), None) => {
                        let s = group.add(a, b);
                        // the sum must still be available for part t
                        !assignment.iter().any(|x| x.as_ref() == Some(&s))
                    }
                    _ => true,
                }
            })
        }

        #[allow(clippy::too_many_arguments)]
        fn go(
            depth: usize,
            order: &[usize],
            forced_zero: &[bool],
            group: &AbelianGroup,
            elements: &[GroupElement],
            constraints: &[(usize, usize, usize)],
            assignment: &mut Vec<Option<GroupElement>>,
            used: &mut Vec<bool>,
            index_of: &dyn Fn(&[u32]) -> usize,
        ) -> bool {
            if depth == order.len() {
                return true;
            }
            let part = order[depth];
            let candidates: Vec<usize> = if forced_zero[part] {
                vec![index_of(&group.zero())]
            } else {
                (0..elements.len()).collect()
            };
            for c in candidates {
                if used[c] {
                    continue;
                }
                assignment[part] = Some(elements[c].clone());
                used[c] = true;
                if consistent(group, constraints, assignment)
                    && go(depth + 1, order, forced_zero, group, elements, constraints, assignment, used, index_of)
                {
                    return true;
                }
                used[c] = false;
                assignment[part] = None;
            }
            false
        }

        let found = go(
            0,
            &order,
            &forced_zero,
            group,
            &elements,
            &constraints,
            &mut assignment,
            &mut used,
            &index_of,
        );
        if !found {
            return None;
        }
        let labels: Vec<GroupElement> = assignment.into_iter().map(|a| a.expect("assigned")).collect();
        debug_assert!(self.verify_labeling(group, &labels).unwrap_or(false));
        Some(labels)
    }

    /// Groups parts according to `partition`. The result is a direct-sum
    /// decomposition; whether it is a grading must be checked separately.
    pub fn coarsen(&self, partition: &[Vec<usize>]) -> Result<Grading> {
        let k = self.parts.len();
        let mut seen = vec![false; k];
        for block in partition {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in block {
                if i >= k {
                    return Err(Error::InvalidPartition(format!("part index {i} out of range")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!("part {i} appears twice")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("part {missing} not covered")));
        }
        let dim = self.algebra.dim();
        let parts = partition
            .iter()
            .map(|block| {
                Subspace::span(
                    dim,
                    block.iter().flat_map(|&i| self.parts[i].basis().iter().cloned()),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let names = partition
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|&i| self.names[i].as_str())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        Ok(Grading::new(self.algebra.clone(), parts)?.with_names(names))
    }

    /// Reorders parts (and names) so that new part `i` is old part `perm[i]`.
    pub(crate) fn reordered(&self, perm: &[usize]) -> Grading {
        Grading {
            algebra: self.algebra.clone(),
            parts: perm.iter().map(|&i| self.parts[i].clone()).collect(),
            names: perm.iter().map(|&i| self.names[i].clone()).collect(),
            labeling: None,
        }
    }
}

fn check_labels_well_formed(g: &Grading, group: &AbelianGroup, labels: &[GroupElement]) -> Result<()> {
    if labels.len() != g.parts.len() {
        return Err(Error::InvalidLabeling(format!(
            "{} labels for {} parts",
            labels.len(),
            g.parts.len()
        )));
    }
    for l in labels {
        if !group.is_element(l) {
            return Err(Error::InvalidLabeling(format!("{l:?} is not an element of {group}")));
        }
    }
    for (i, a) in labels.iter().enumerate() {
        if labels[i + 1..].contains(a) {
            return Err(Error::InvalidLabeling(format!("label {a:?} used twice")));
        }
    }
    Ok(())
}

impl fmt::Debug for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Grading of sl({}) into {} parts:", self.algebra.n(), self.parts.len())?;
        for (name, p) in self.names.iter().zip(&self.parts) {
            writeln!(f, "  {name}: {p:?}")?;
        }
        Ok(())
    }
}

/// Common eigenspace decomposition of pairwise commuting finite-order
/// automorphisms. Parts are sorted canonically, so the result does not
/// depend on the order of `gens`.
pub fn common_eigenspaces(algebra: Arc<LieAlgebra>, gens: &[Automorphism]) -> Result<Grading> {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].commutes_with(&gens[j]) {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    let dim = algebra.dim();
    let mut parts = vec![Subspace::full(dim)];
    for g in gens {
        let eig = g.eigenspaces(DEFAULT_ORDER_CAP)?;
        let mut next = Vec::new();
        for p in &parts {
            for e in &eig {
                let s = p.intersect(&e.space)?;
                if !s.is_zero() {
                    next.push(s);
                }
            }
        }
        parts = next;
    }
    parts.sort_by(Subspace::canonical_cmp);
    Grading::new(algebra, parts)
}

/// The shape of a MAD-group family, used as a membership predicate on
/// automorphism representatives (which are defined up to a scalar).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MadFamily {
    /// Inner, diagonal representative (maximal torus).
    Torus,
    /// Inner or outer, representative diagonal with entries ±1.
    SignDiagonal,
    /// Inner `diag(ε, α, α⁻¹)` or outer `[[ε,0,0],[0,0,α],[0,α⁻¹,0]]` (n = 3).
    TwistedTorus,
    /// Inner, representative a multiple of `P^k Q^j`.
    Pauli,
}

impl MadFamily {
    pub fn contains(self, f: &Automorphism) -> bool {
        let r = f.rep();
        let n = r.rows();
        match self {
            MadFamily::Torus => f.kind() == Kind::Inner && r.is_diagonal(),
            MadFamily::SignDiagonal => {
                if !r.is_diagonal() {
                    return false;
                }
                let d0 = r.get(0, 0);
                (1..n).all(|i| {
                    let ratio = r.get(i, i).checked_div(d0).expect("invertible rep");
                    ratio.is_one() || (-&ratio).is_one()
                })
            }
            MadFamily::TwistedTorus => {
                if n != 3 {
                    return false;
                }
                let nonzero: Vec<(usize, usize)> = (0..3)
                    .flat_map(|i| (0..3).map(move |j| (i, j)))
                    .filter(|&(i, j)| !r.get(i, j).is_zero())
                    .collect();
                match f.kind() {
                    Kind::Inner => {
                        nonzero == [(0, 0), (1, 1), (2, 2)]
                            && r.get(1, 1) * r.get(2, 2) == r.get(0, 0) * r.get(0, 0)
                    }
                    Kind::Outer => {
                        nonzero == [(0, 0), (1, 2), (2, 1)]
                            && r.get(1, 2) * r.get(2, 1) == r.get(0, 0) * r.get(0, 0)
                    }
                }
            }
            MadFamily::Pauli => {
                if f.kind() != Kind::Inner {
                    return false;
                }
                let p = crate::autgrp::clock(n);
                let q = crate::autgrp::shift(n);
                (0..n as u32).any(|k| {
                    (0..n as u32).any(|j| {
                        let m = p.pow(k).and_then(|pk| pk.mul(&q.pow(j)?)).expect("square");
                        r.scalar_multiple_of(&m).is_some()
                    })
                })
            }
        }
    }
}

/// A MAD-group described by finite separating generators, a structural
/// membership predicate, and (for infinite groups) extra generic members
/// used to probe normalizer candidates.
#[derive(Clone, Debug)]
pub struct MadGroupSpec {
    pub name: String,
    pub family: MadFamily,
    pub separating_generators: Vec<Automorphism>,
    pub probes: Vec<Automorphism>,
    pub is_infinite: bool,
}

impl MadGroupSpec {
    pub fn contains(&self, f: &Automorphism) -> bool {
        self.family.contains(f)
    }

    /// All elements of a finite MAD-group.
    pub fn elements(&self, alg: &LieAlgebra) -> Option<Vec<Automorphism>> {
        if self.is_infinite {
            return None;
        }
        crate::autgrp::closure(alg, &self.separating_generators, 10_000).ok()
    }

    /// Elements against which `h⁻¹ g h ∈ G` is tested: the whole group when
    /// finite, otherwise separating generators plus generic probes.
    pub fn test_elements(&self, alg: &LieAlgebra) -> Vec<Automorphism> {
        match self.elements(alg) {
            Some(all) => all,
            None => self
                .separating_generators
                .iter()
                .chain(&self.probes)
                .cloned()
                .collect(),
        }
    }
}

/// Convenience: integer or cyclotomic diagonal matrix.
pub fn diag(entries: &[CycloNumber]) -> Matrix {
    Matrix::diag(entries.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgrp::named;
    use crate::cyclo::CycloNumber as C;

    fn sl3() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::sl(3))
    }

    fn w(k: i64) -> C {
        C::root_of_unity(3, k)
    }

    fn cartan_generators(g: &LieAlgebra) -> Vec<Automorphism> {
        vec![
            Automorphism::ad(g, diag(&[C::one(1), w(1), C::one(1)])).unwrap(),
            Automorphism::ad(g, diag(&[C::one(1), C::one(1), w(1)])).unwrap(),
        ]
    }

    fn line(g: &LieAlgebra, text: &str) -> Subspace {
        Subspace::span(g.dim(), [g.parse_element(text).unwrap().coords]).unwrap()
    }

    #[test]
    fn group_arithmetic() {
        let z33 = AbelianGroup::new(vec![3, 3]).unwrap();
        assert_eq!(z33.size(), 9);
        assert_eq!(z33.add(&[2, 1], &[2, 2]), vec![1, 0]);
        assert_eq!(z33.neg(&[1, 0]), vec![2, 0]);
        assert_eq!(z33.elements().len(), 9);
        assert_eq!(z33.to_string(), "Z3xZ3");
        assert!(AbelianGroup::new(vec![]).is_err());
    }

    #[test]
    fn cartan_decomposition() {
        let g = sl3();
        let gr = common_eigenspaces(g.clone(), &cartan_generators(&g)).unwrap();
        assert_eq!(gr.part_count(), 7);
        let mut dims = gr.dims();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 1, 1, 2]);
        for name in ["E12", "E13", "E21", "E23", "E31", "E32"] {
            assert!(gr.parts().contains(&line(&g, name)), "{name}");
        }
        assert!(gr.verify().is_grading());
        // generator order does not matter
        let mut rev = cartan_generators(&g);
        rev.reverse();
        assert_eq!(common_eigenspaces(g.clone(), &rev).unwrap().parts(), gr.parts());
    }

    #[test]
    fn identity_gives_trivial_grading() {
        let g = sl3();
        let gr = common_eigenspaces(g.clone(), &[Automorphism::identity(&g)]).unwrap();
        assert_eq!(gr.part_count(), 1);
        assert!(gr.verify().is_grading());
        assert!(Grading::trivial(g).verify().is_grading());
    }

    #[test]
    fn non_commuting_generators_rejected() {
        let g = sl3();
        let gens = [
            Automorphism::ad(&g, named::p()).unwrap(),
            Automorphism::ad(&g, named::b2()).unwrap(),
        ];
        assert_eq!(common_eigenspaces(g, &gens).unwrap_err(), Error::NonCommuting(0, 1));
    }

    #[test]
    fn refinement_of_each_generator() {
        let g = sl3();
        let gens = cartan_generators(&g);
        let gr = common_eigenspaces(g.clone(), &gens).unwrap();
        for gen in &gens {
            let eig = gen.eigenspaces(DEFAULT_ORDER_CAP).unwrap();
            for part in gr.parts() {
                assert!(eig.iter().any(|e| e.space.contains_subspace(part).unwrap()));
            }
        }
    }

    #[test]
    fn arbitrary_split_is_not_a_grading() {
        // span{E12} ⊕ span{E13, E21+E12, E23, E31, E32, H1, H2}:
        // [E21+E12, H1] = 2E21 - 2E12 lies in neither part.
        let g = sl3();
        let w = Subspace::span(
            8,
            ["E13", "E21+E12", "E23", "E31", "E32", "H1", "H2"]
                .iter()
                .map(|t| g.parse_element(t).unwrap().coords),
        )
        .unwrap();
        let gr = Grading::new(g.clone(), vec![line(&g, "E12"), w]).unwrap();
        let check = gr.verify();
        assert!(!check.is_grading());
        assert_eq!(check.get(1, 1), BlockBracket::Spread);
        // [E12, H1] = -2 E12 and [E12, E23] = E13 land in different parts
        assert_eq!(check.violation(), Some((0, 1)));
    }

    #[test]
    fn direct_sum_is_enforced() {
        let g = sl3();
        let e12 = line(&g, "E12");
        assert!(matches!(
            Grading::new(g.clone(), vec![e12.clone(), e12]),
            Err(Error::NotDirectSum(_))
        ));
        assert!(matches!(
            Grading::new(g, vec![Subspace::zero(8), Subspace::full(8)]),
            Err(Error::NotDirectSum(_))
        ));
    }

    #[test]
    fn cartan_labelings_by_search() {
        let g = sl3();
        let gr = common_eigenspaces(g.clone(), &cartan_generators(&g)).unwrap();
        for group in [AbelianGroup::new(vec![3, 3]).unwrap(), AbelianGroup::cyclic(7)] {
            let labels = gr.search_labeling(&group).expect("labeling exists");
            assert!(gr.verify_labeling(&group, &labels).unwrap());
            // the Cartan part carries the neutral element
            let cartan = gr.dims().iter().position(|&d| d == 2).unwrap();
            assert_eq!(labels[cartan], group.zero());
        }
        assert!(gr.search_labeling(&AbelianGroup::cyclic(5)).is_none());
    }

    #[test]
    fn labeling_errors() {
        let g = sl3();
        let gr = common_eigenspaces(g.clone(), &cartan_generators(&g)).unwrap();
        let z7 = AbelianGroup::cyclic(7);
        assert!(matches!(gr.verify_labeling(&z7, &[vec![0]]), Err(Error::InvalidLabeling(_))));
        let dup = vec![vec![1]; 7];
        assert!(matches!(gr.verify_labeling(&z7, &dup), Err(Error::InvalidLabeling(_))));
    }

    #[test]
    fn coarsening() {
        let g = sl3();
        let gr = common_eigenspaces(g.clone(), &cartan_generators(&g)).unwrap();
        let all = gr.coarsen(&[(0..7).collect()]).unwrap();
        assert_eq!(all.part_count(), 1);
        assert!(all.verify().is_grading());
        assert!(matches!(gr.coarsen(&[vec![0, 1]]), Err(Error::InvalidPartition(_))));
        assert!(matches!(
            gr.coarsen(&[vec![0, 0], (1..7).collect()]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            gr.coarsen(&[vec![], (0..7).collect()]),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn family_predicates() {
        let g = sl3();
        let t = Automorphism::ad(&g, diag(&[C::from_int(2), C::from_int(3), C::from_int(5)])).unwrap();
        assert!(MadFamily::Torus.contains(&t));
        assert!(!MadFamily::SignDiagonal.contains(&t));
        assert!(!MadFamily::Torus.contains(&Automorphism::ad(&g, named::b1()).unwrap()));
        let out = Automorphism::out(&g, diag(&[C::from_int(-1), C::from_int(1), C::from_int(-1)])).unwrap();
        assert!(MadFamily::SignDiagonal.contains(&out));
        let twisted = Automorphism::out(
            &g,
            Matrix::from_rows(vec![
                vec![C::from_int(-1), C::zero(1), C::zero(1)],
                vec![C::zero(1), C::zero(1), C::from_int(4)],
                vec![C::zero(1), C::from_ratio(1, 4), C::zero(1)],
            ])
            .unwrap(),
        )
        .unwrap();
        assert!(MadFamily::TwistedTorus.contains(&twisted));
        let pq = named::p().mul(&named::q()).unwrap().scale(&w(1));
        assert!(MadFamily::Pauli.contains(&Automorphism::ad(&g, pq).unwrap()));
        assert!(!MadFamily::Pauli.contains(&Automorphism::ad(&g, named::d()).unwrap()));
    }
}
