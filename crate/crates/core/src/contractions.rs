//! Binary graded contractions: `[x, y]' = ε_ij [x, y]` for `x ∈ L_i`,
//! `y ∈ L_j`, with `ε` constrained by the Jacobi identity.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::cyclo::CycloNumber;
use crate::error::{Error, Result};
use crate::gradings::{BlockBracket, Grading};
use crate::liealg::StructureConstants;
use crate::linalg::{Matrix, Vector};
use crate::normalizers::{Permutation, PermutationGroup};

pub const DEFAULT_NODE_CAP: u64 = 50_000_000;
pub const MAX_PAIRS: usize = 128;

/// Node cap from `GRADELAB_NODE_CAP`, falling back to [`DEFAULT_NODE_CAP`].
pub fn node_cap_from_env() -> u64 {
    std::env::var("GRADELAB_NODE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_CAP)
}

/// Unordered pairs `{i, j}` of part indices, `i ≤ j`, numbered
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIndex {
    parts: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairIndex {
    pub fn new(parts: usize) -> Self {
        let pairs = (0..parts)
            .flat_map(|i| (i..parts).map(move |j| (i, j)))
            .collect();
        PairIndex { parts, pairs }
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        self.pairs[idx]
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..i hold parts, parts-1, ..., parts-i+1 pairs
        i * self.parts - i * (i + 1) / 2 + j
    }
}

/// A {0,1} value for every unordered pair, stored as a bitmask over pair
/// indices. Assignments order canonically by that mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonAssignment {
    parts: usize,
    bits: u128,
}

impl EpsilonAssignment {
    pub fn from_bits(parts: usize, bits: u128) -> Result<Self> {
        let n = parts * (parts + 1) / 2;
        if n > MAX_PAIRS {
            return Err(Error::TooManyVariables(n));
        }
        let mask = if n == MAX_PAIRS { u128::MAX } else { (1u128 << n) - 1 };
        Ok(EpsilonAssignment {
            parts,
            bits: bits & mask,
        })
    }

    pub fn all_zeros(parts: usize) -> Result<Self> {
        Self::from_bits(parts, 0)
    }

    pub fn all_ones(parts: usize) -> Result<Self> {
        Self::from_bits(parts, u128::MAX)
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn pair_count(&self) -> usize {
        self.parts * (self.parts + 1) / 2
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn get_index(&self, idx: usize) -> bool {
        self.bits >> idx & 1 == 1
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.get_index(PairIndex::new(self.parts).index(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let idx = PairIndex::new(self.parts).index(i, j);
        if value {
            self.bits |= 1 << idx;
        } else {
            self.bits &= !(1 << idx);
        }
    }

    /// `(p·ε)_{p(i) p(j)} = ε_{ij}`.
    pub fn pushforward(&self, p: &Permutation) -> EpsilonAssignment {
        pushforward_bits(self.bits, &pair_permutation(self.parts, p), self.parts)
    }

    /// Pair → bit map keyed `"i,j"`.
    pub fn to_map(&self) -> BTreeMap<String, u8> {
        PairIndex::new(self.parts)
            .pairs()
            .iter()
            .enumerate()
            .map(|(k, (i, j))| (format!("{i},{j}"), u8::from(self.get_index(k))))
            .collect()
    }
}

impl fmt::Debug for EpsilonAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.pair_count())
            .map(|k| if self.get_index(k) { '1' } else { '0' })
            .collect();
        write!(f, "ε[{s}]")
    }
}

/// Action of a part permutation on pair indices.
pub fn pair_permutation(parts: usize, p: &Permutation) -> Vec<usize> {
    let idx = PairIndex::new(parts);
    idx.pairs()
        .iter()
        .map(|&(i, j)| idx.index(p.apply(i), p.apply(j)))
        .collect()
}

fn pushforward_bits(bits: u128, pair_perm: &[usize], parts: usize) -> EpsilonAssignment {
    let mut out = 0u128;
    for (k, &target) in pair_perm.iter().enumerate() {
        if bits >> k & 1 == 1 {
            out |= 1 << target;
        }
    }
    EpsilonAssignment { parts, bits: out }
}

/// The algebra rewritten in a homogeneous basis (part bases concatenated),
/// with the grading's bracket certificate.
#[derive(Clone, Debug)]
pub struct GradedStructure {
    pub parts: usize,
    pub owner: Vec<usize>,
    pub structure: StructureConstants,
    pub table: Vec<Vec<BlockBracket>>,
}

impl GradedStructure {
    /// Requires a labeled grading whose labeling is additive.
    pub fn new(g: &Grading) -> Result<Self> {
        let labeling = g.labeling().ok_or(Error::Unlabeled)?;
        if let Some((i, j)) = g.labeling_violation(&labeling.group, &labeling.labels)? {
            return Err(Error::InvalidLabeling(format!(
                "[{}, {}] is not in the part labeled by the sum",
                g.names()[i],
                g.names()[j]
            )));
        }
        let parts = g.part_count();
        let pairs = parts * (parts + 1) / 2;
        if pairs > MAX_PAIRS {
            return Err(Error::TooManyVariables(pairs));
        }
        let (basis, owner) = g.homogeneous_basis();
        let dim = basis.len();
        let cols: Vec<CycloNumber> = (0..dim)
            .flat_map(|r| basis.iter().map(move |v| v[r].clone()))
            .collect();
        let b = Matrix::from_vec(dim, dim, cols)?;
        let b_inv = b.inverse()?;
        let sc = g.algebra().structure();
        let images: Vec<Vector> = (0..dim)
            .flat_map(|a| (0..dim).map(move |c| (a, c)))
            .map(|(a, c)| b_inv.apply(&sc.bracket(&basis[a], &basis[c])))
            .collect::<Result<_>>()?;
        Ok(GradedStructure {
            parts,
            owner,
            structure: StructureConstants::from_dense(dim, images),
            table: g.verify().table,
        })
    }

    pub fn dim(&self) -> usize {
        self.owner.len()
    }

    pub fn pair_index(&self) -> PairIndex {
        PairIndex::new(self.parts)
    }

    /// Structure constants with every block `[L_i, L_j]` scaled by `ε_ij`.
    pub fn contracted(&self, eps: &EpsilonAssignment) -> StructureConstants {
        let mut sc = self.structure.clone();
        let zero = CycloNumber::zero(1);
        for a in 0..self.dim() {
            for c in 0..self.dim() {
                if !eps.get(self.owner[a], self.owner[c]) {
                    sc.scale_block(a, c, &zero);
                }
            }
        }
        sc
    }

    /// Pairs whose block bracket is nonzero.
    pub fn active_pairs(&self) -> Vec<usize> {
        let idx = self.pair_index();
        idx.pairs()
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| self.table[i][j] != BlockBracket::Zero)
            .map(|(k, _)| k)
            .collect()
    }

    fn target(&self, i: usize, j: usize) -> Option<usize> {
        match self.table[i][j] {
            BlockBracket::Into(t) => Some(t),
            _ => None,
        }
    }

    fn triple_vectors(&self, a: usize, b: usize, c: usize) -> [Vector; 3] {
        let sc = &self.structure;
        let e = |k: usize| crate::linalg::unit_vector(self.dim(), k);
        let t1 = sc.bracket(&sc.bracket(&e(a), &e(b)), &e(c));
        let t2 = sc.bracket(&sc.bracket(&e(b), &e(c)), &e(a));
        let t3 = sc.bracket(&sc.bracket(&e(c), &e(a)), &e(b));
        [t1, t2, t3]
    }
}

/// Convenience wrapper over [`GradedStructure::contracted`].
pub fn contracted_structure(g: &Grading, eps: &EpsilonAssignment) -> Result<StructureConstants> {
    let gs = GradedStructure::new(g)?;
    if eps.parts() != gs.parts {
        return Err(Error::ShapeMismatch(format!(
            "assignment over {} parts, grading has {}",
            eps.parts(),
            gs.parts
        )));
    }
    Ok(gs.contracted(eps))
}

/// Exhaustive Jacobi check of a candidate structure.
pub fn jacobi_oracle(sc: &StructureConstants) -> bool {
    sc.jacobi_holds()
}

/// Product of two pair variables `ε_u ε_v`, stored with `u ≤ v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub usize, pub usize);

impl Monomial {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Monomial(u, v)
        } else {
            Monomial(v, u)
        }
    }

    pub fn eval(&self, bits: u128) -> bool {
        bits >> self.0 & 1 == 1 && bits >> self.1 & 1 == 1
    }
}

/// `lhs = rhs` between two monomials; `lhs < rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub lhs: Monomial,
    pub rhs: Monomial,
}

impl Relation {
    fn new(a: Monomial, b: Monomial) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Relation { lhs: a, rhs: b }),
            std::cmp::Ordering::Greater => Some(Relation { lhs: b, rhs: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn holds(&self, bits: u128) -> bool {
        self.lhs.eval(bits) == self.rhs.eval(bits)
    }

    pub fn variables(&self) -> [usize; 4] {
        [self.lhs.0, self.lhs.1, self.rhs.0, self.rhs.1]
    }
}

/// Basis triple of the homogeneous basis, the owning parts, and the rank of
/// `{T1, T2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub triple: [usize; 3],
    pub parts: [usize; 3],
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct ContractionSystem {
    pub pairs: PairIndex,
    pub relations: Vec<Relation>,
    pub provenance: Vec<Vec<Provenance>>,
    /// Basis triples whose three double brackets all vanish.
    pub inert_triples: Vec<[usize; 3]>,
}

impl ContractionSystem {
    pub fn variable_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn satisfied_by(&self, eps: &EpsilonAssignment) -> bool {
        self.relations.iter().all(|r| r.holds(eps.bits()))
    }

    /// Variables that occur in no relation.
    pub fn free_variables(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.relations.iter().flat_map(Relation::variables).collect();
        (0..self.pairs.len()).filter(|v| !used.contains(v)).collect()
    }
}

fn rank_of(t1: &[CycloNumber], t2: &[CycloNumber]) -> usize {
    let z1 = t1.iter().all(CycloNumber::is_zero);
    let z2 = t2.iter().all(CycloNumber::is_zero);
    match (z1, z2) {
        (true, true) => 0,
        (true, false) | (false, true) => 1,
        (false, false) => Matrix::from_rows(vec![t1.to_vec(), t2.to_vec()])
            .expect("equal lengths")
            .rank(),
    }
}

/// Derives the binary contraction equations from the Jacobi residual
/// `m1 T1 + m2 T2 + m3 T3` of every basis triple, where `T1 + T2 + T3 = 0`.
pub fn generate_equations(g: &Grading) -> Result<ContractionSystem> {
    let gs = GradedStructure::new(g)?;
    Ok(equations_for(&gs))
}

pub fn equations_for(gs: &GradedStructure) -> ContractionSystem {
    let idx = gs.pair_index();
    let dim = gs.dim();
    let mut found: BTreeMap<Relation, Vec<Provenance>> = BTreeMap::new();
    let mut inert = Vec::new();
    let mono = |x: usize, y: usize, z: usize| -> Option<Monomial> {
        let (px, py, pz) = (gs.owner[x], gs.owner[y], gs.owner[z]);
        let t = gs.target(px, py)?;
        Some(Monomial::new(idx.index(px, py), idx.index(t, pz)))
    };
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                let [t1, t2, t3] = gs.triple_vectors(a, b, c);
                let rank = rank_of(&t1, &t2);
                let prov = Provenance {
                    triple: [a, b, c],
                    parts: [gs.owner[a], gs.owner[b], gs.owner[c]],
                    rank,
                };
                let is_zero = |t: &Vector| t.iter().all(CycloNumber::is_zero);
                let (m1, m2, m3) = (mono(a, b, c), mono(b, c, a), mono(c, a, b));
                // monomials attached to nonzero T vectors always exist
                let pairs: Vec<(Option<Monomial>, Option<Monomial>)> = match rank {
                    0 => {
                        inert.push([a, b, c]);
                        vec![]
                    }
                    2 => vec![(m1, m3), (m2, m3)],
                    _ => {
                        if is_zero(&t1) {
                            vec![(m2, m3)]
                        } else if is_zero(&t2) {
                            vec![(m1, m3)]
                        } else if is_zero(&t3) {
                            vec![(m1, m2)]
                        } else {
                            // T1 = λ T2 with λ ≠ 0, -1: over {0,1} every
                            // weighted relation collapses to m1 = m2 = m3
                            vec![(m1, m3), (m2, m3)]
                        }
                    }
                };
                for (x, y) in pairs {
                    let (x, y) = (x.expect("nonzero term"), y.expect("nonzero term"));
                    if let Some(r) = Relation::new(x, y) {
                        found.entry(r).or_default().push(prov);
                    }
                }
            }
        }
    }
    let (relations, provenance) = found.into_iter().unzip();
    ContractionSystem {
        pairs: idx,
        relations,
        provenance,
        inert_triples: inert,
    }
}

/// Exact Jacobi test per basis triple, precompiled: for each distinct
/// monomial triple, the set of bit patterns `(b1, b2, b3)` with
/// `b1 T1 + b2 T2 + b3 T3 = 0` for every basis triple sharing it.
/// Independent of the equation derivation.
#[derive(Clone, Debug)]
pub struct TripleOracle {
    checks: Vec<([Option<Monomial>; 3], u8)>,
}

impl TripleOracle {
    pub fn new(gs: &GradedStructure) -> Self {
        let idx = gs.pair_index();
        let dim = gs.dim();
        let mut masks: BTreeMap<[Option<Monomial>; 3], u8> = BTreeMap::new();
        let mono = |x: usize, y: usize, z: usize| -> Option<Monomial> {
            let (px, py, pz) = (gs.owner[x], gs.owner[y], gs.owner[z]);
            gs.target(px, py).map(|t| Monomial::new(idx.index(px, py), idx.index(t, pz)))
        };
        for a in 0..dim {
            for b in a + 1..dim {
                for c in b + 1..dim {
                    let ts = gs.triple_vectors(a, b, c);
                    let mut mask = 0u8;
                    for pattern in 0..8u8 {
                        let ok = (0..dim).all(|r| {
                            let mut s = CycloNumber::zero(1);
                            for (k, t) in ts.iter().enumerate() {
                                if pattern >> k & 1 == 1 {
                                    s += &t[r];
                                }
                            }
                            s.is_zero()
                        });
                        if ok {
                            mask |= 1 << pattern;
                        }
                    }
                    let zero = |t: &Vector| t.iter().all(CycloNumber::is_zero);
                    let key = [
                        if zero(&ts[0]) { None } else { mono(a, b, c) },
                        if zero(&ts[1]) { None } else { mono(b, c, a) },
                        if zero(&ts[2]) { None } else { mono(c, a, b) },
                    ];
                    *masks.entry(key).or_insert(0xff) &= mask;
                }
            }
        }
        TripleOracle {
            checks: masks.into_iter().filter(|(_, m)| *m != 0xff).collect(),
        }
    }

    pub fn accepts(&self, bits: u128) -> bool {
        self.checks.iter().all(|(ms, mask)| {
            let mut pattern = 0u8;
            for (k, m) in ms.iter().enumerate() {
                if m.is_some_and(|m| m.eval(bits)) {
                    pattern |= 1 << k;
                }
            }
            mask >> pattern & 1 == 1
        })
    }
}

/// Binary solutions as `core × {0,1}^free`: `core` lists the solutions with
/// every free variable set to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub parts: usize,
    pub core: Vec<u128>,
    pub free: Vec<usize>,
    pub nodes: u64,
}

impl SolutionSet {
    pub fn total(&self) -> u128 {
        (self.core.len() as u128) << self.free.len()
    }

    pub fn contains(&self, eps: &EpsilonAssignment) -> bool {
        let free_mask = self.free.iter().fold(0u128, |m, &v| m | 1 << v);
        self.core.binary_search(&(eps.bits() & !free_mask)).is_ok()
    }

    /// All solutions in canonical order, or `None` above `limit`.
    pub fn expand(&self, limit: usize) -> Option<Vec<EpsilonAssignment>> {
        if self.total() > limit as u128 {
            return None;
        }
        let mut out = Vec::with_capacity(self.total() as usize);
        for &c in &self.core {
            for sub in 0..1u128 << self.free.len() {
                let mut bits = c;
                for (k, &v) in self.free.iter().enumerate() {
                    if sub >> k & 1 == 1 {
                        bits |= 1 << v;
                    }
                }
                out.push(EpsilonAssignment {
                    parts: self.parts,
                    bits,
                });
            }
        }
        out.sort();
        Some(out)
    }

    pub fn core_assignments(&self) -> impl Iterator<Item = EpsilonAssignment> + '_ {
        self.core.iter().map(move |&bits| EpsilonAssignment {
            parts: self.parts,
            bits,
        })
    }
}

struct Search<'a> {
    relations: &'a [Relation],
    occurs: Vec<Vec<usize>>,
    order: &'a [usize],
    value: Vec<i8>,
    trail: Vec<usize>,
    nodes: u64,
    cap: u64,
    solutions: Vec<u128>,
}

enum MonoState {
    Zero,
    One,
    Open,
}

impl<'a> Search<'a> {
    fn new(relations: &'a [Relation], order: &'a [usize], nvars: usize, cap: u64) -> Self {
        let mut occurs = vec![Vec::new(); nvars];
        for (r, rel) in relations.iter().enumerate() {
            let vars: BTreeSet<usize> = rel.variables().into_iter().collect();
            for v in vars {
                occurs[v].push(r);
            }
        }
        Search {
            relations,
            occurs,
            order,
            value: vec![-1; nvars],
            trail: Vec::new(),
            nodes: 0,
            cap,
            solutions: Vec::new(),
        }
    }

    fn state(&self, m: Monomial) -> MonoState {
        let (a, b) = (self.value[m.0], self.value[m.1]);
        if a == 0 || b == 0 {
            MonoState::Zero
        } else if a == 1 && b == 1 {
            MonoState::One
        } else {
            MonoState::Open
        }
    }

    fn assign(&mut self, v: usize, x: i8, queue: &mut Vec<usize>) -> bool {
        match self.value[v] {
            -1 => {
                self.value[v] = x;
                self.trail.push(v);
                queue.push(v);
                true
            }
            y => y == x,
        }
    }

    /// Forces `m = 1` or `m = 0` where determined; false on conflict.
    fn force(&mut self, m: Monomial, target: MonoState, queue: &mut Vec<usize>) -> bool {
        match target {
            MonoState::One => self.assign(m.0, 1, queue) && self.assign(m.1, 1, queue),
            MonoState::Zero => {
                let (a, b) = (self.value[m.0], self.value[m.1]);
                if m.0 == m.1 {
                    self.assign(m.0, 0, queue)
                } else if a == 1 && b == -1 {
                    self.assign(m.1, 0, queue)
                } else if b == 1 && a == -1 {
                    self.assign(m.0, 0, queue)
                } else {
                    true
                }
            }
            MonoState::Open => true,
        }
    }

    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            for k in 0..self.occurs[v].len() {
                let rel = self.relations[self.occurs[v][k]];
                let ok = match (self.state(rel.lhs), self.state(rel.rhs)) {
                    (MonoState::One, MonoState::Zero) | (MonoState::Zero, MonoState::One) => false,
                    (MonoState::One, MonoState::Open) => self.force(rel.rhs, MonoState::One, &mut queue),
                    (MonoState::Open, MonoState::One) => self.force(rel.lhs, MonoState::One, &mut queue),
                    (MonoState::Zero, MonoState::Open) => self.force(rel.rhs, MonoState::Zero, &mut queue),
                    (MonoState::Open, MonoState::Zero) => self.force(rel.lhs, MonoState::Zero, &mut queue),
                    _ => true,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail");
            self.value[v] = -1;
        }
    }

    fn try_value(&mut self, v: usize, x: i8) -> bool {
        let mut queue = Vec::new();
        self.assign(v, x, &mut queue) && self.propagate(queue)
    }

    fn run(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::NodeCap {
                cap: self.cap,
                nodes: self.nodes,
                solutions: self.solutions.len(),
            });
        }
        let Some(&v) = self.order.iter().find(|&&v| self.value[v] == -1) else {
            let bits = self
                .value
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == 1)
                .fold(0u128, |m, (k, _)| m | 1 << k);
            self.solutions.push(bits);
            return Ok(());
        };
        for x in [0, 1] {
            let mark = self.trail.len();
            if self.try_value(v, x) {
                self.run()?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// All {0,1} solutions of the system, by backtracking with unit
/// propagation in most-constrained-first variable order. With `jobs > 1`
/// the first decision levels are split across threads; the result does not
/// depend on `jobs`.
pub fn solve_binary(sys: &ContractionSystem, node_cap: u64, jobs: usize) -> Result<SolutionSet> {
    let nvars = sys.variable_count();
    if nvars > MAX_PAIRS {
        return Err(Error::TooManyVariables(nvars));
    }
    let free = sys.free_variables();
    let mut count = vec![0usize; nvars];
    for r in &sys.relations {
        for v in r.variables().into_iter().collect::<BTreeSet<_>>() {
            count[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..nvars).filter(|v| count[*v] > 0).collect();
    order.sort_by(|a, b| count[*b].cmp(&count[*a]).then(a.cmp(b)));

    let jobs = jobs.max(1);
    let split = if jobs == 1 {
        0
    } else {
        (usize::BITS - (jobs - 1).leading_zeros()) as usize + 2
    }
    .min(order.len());
    let prefixes: Vec<u32> = (0..1u32 << split).collect();

    let worker = |w: usize| -> Result<(Vec<u128>, u64)> {
        let mut solutions = Vec::new();
        let mut nodes = 0;
        for &prefix in prefixes.iter().skip(w).step_by(jobs) {
            let mut s = Search::new(&sys.relations, &order, nvars, node_cap);
            let consistent = (0..split).all(|k| s.try_value(order[k], ((prefix >> k) & 1) as i8));
            if consistent {
                s.run()?;
            }
            nodes += s.nodes;
            solutions.append(&mut s.solutions);
        }
        Ok((solutions, nodes))
    };

    let results: Vec<Result<(Vec<u128>, u64)>> = if jobs == 1 {
        vec![worker(0)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs).map(|w| scope.spawn(move || worker(w))).collect();
            handles.into_iter().map(|h| h.join().expect("solver thread")).collect()
        })
    };
    let mut core = Vec::new();
    let mut nodes = 0;
    for r in results {
        let (mut s, n) = r?;
        core.append(&mut s);
        nodes += n;
    }
    core.sort_unstable();
    core.dedup();
    Ok(SolutionSet {
        parts: sys.pairs.parts(),
        core,
        free,
        nodes,
    })
}

/// True iff every permutation of the group maps solutions to solutions.
pub fn is_invariant(solutions: &SolutionSet, group: &PermutationGroup) -> bool {
    group.elements.iter().all(|p| {
        let pp = pair_permutation(solutions.parts, p);
        let free: BTreeSet<usize> = solutions.free.iter().copied().collect();
        solutions.free.iter().all(|v| free.contains(&pp[*v]))
            && solutions
                .core
                .iter()
                .all(|&c| solutions.core.binary_search(&pushforward_bits(c, &pp, solutions.parts).bits).is_ok())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Least element of the orbit in canonical order.
    pub representative: EpsilonAssignment,
    pub size: usize,
}

/// Orbits of the core solutions under the pair action of `group`. The
/// free variables must form a group-invariant set, so the action descends
/// to the core; free variables scale zero blocks and never change the
/// contracted algebra.
pub fn symmetry_orbits(solutions: &SolutionSet, group: &PermutationGroup) -> Result<Vec<Orbit>> {
    let actions: Vec<Vec<usize>> = group
        .elements
        .iter()
        .map(|p| pair_permutation(solutions.parts, p))
        .collect();
    let free: BTreeSet<usize> = solutions.free.iter().copied().collect();
    for (p, pp) in group.elements.iter().zip(&actions) {
        if free.iter().any(|v| !free.contains(&pp[*v])) {
            return Err(Error::NotFaithful(format!(
                "{} does not preserve the free variables",
                p.cycle_notation()
            )));
        }
    }
    let mut seen: HashSet<u128> = HashSet::with_capacity(solutions.core.len());
    let mut orbits = Vec::new();
    for &s in &solutions.core {
        if seen.contains(&s) {
            continue;
        }
        let orbit: BTreeSet<u128> = actions
            .iter()
            .map(|pp| pushforward_bits(s, pp, solutions.parts).bits)
            .collect();
        seen.extend(orbit.iter().copied());
        // core is sorted, so the first unseen element is least in its orbit
        orbits.push(Orbit {
            representative: EpsilonAssignment {
                parts: solutions.parts,
                bits: s,
            },
            size: orbit.len(),
        });
    }
    Ok(orbits)
}
