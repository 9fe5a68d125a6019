//! Normalizer membership, induced permutations of grading parts, and the
//! quotient N(G)/G as an explicit permutation group.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::autgrp::{Automorphism, Kind};
use crate::error::{Error, Result};
use crate::gradings::{Grading, MadGroupSpec};
use crate::liealg::LieAlgebra;

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            mapping: (0..degree).collect(),
        }
    }

    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &j in &mapping {
            if j >= mapping.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Parse(format!("{mapping:?} is not a permutation")));
            }
        }
        Ok(Permutation { mapping })
    }

    pub fn degree(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &j) in self.mapping.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { mapping: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.mapping[i] == i
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.mapping.len()];
        let mut out = Vec::new();
        for start in 0..self.mapping.len() {
            if seen[start] || self.mapping[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.mapping[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// Cycle notation over 0-based indices, `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let items: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({})", items.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

#[derive(Clone, Debug)]
pub struct PermutationGroup {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    /// Sorted, starting with the identity.
    pub elements: Vec<Permutation>,
}

impl PermutationGroup {
    /// Breadth-first closure of `generators`.
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        let id = Permutation::identity(degree);
        let mut seen: BTreeSet<Permutation> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = g.compose(&p);
                if !seen.contains(&q) {
                    if seen.len() >= cap {
                        return Err(Error::ClosureCap(cap));
                    }
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Ok(Self::from_parts(degree, generators, seen))
    }

    fn from_parts(degree: usize, generators: Vec<Permutation>, elements: impl IntoIterator<Item = Permutation>) -> Self {
        let mut elements: Vec<Permutation> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        // the identity sorts first
        PermutationGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Element order → number of elements of that order.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in &self.elements {
            *out.entry(p.order()).or_insert(0) += 1;
        }
        out
    }

    pub fn exponent(&self) -> usize {
        self.order_profile().keys().fold(1, |acc, &k| num::integer::lcm(acc, k))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }
}

/// True iff `h⁻¹ g h` lies in the MAD-group for every test element `g`.
pub fn normalizes(alg: &LieAlgebra, h: &Automorphism, spec: &MadGroupSpec) -> bool {
    spec.test_elements(alg)
        .iter()
        .all(|g| spec.contains(&g.conjugate_by(h)))
}

/// The permutation `i ↦ j` with `h(L_i) = L_j`.
pub fn induced_permutation(h: &Automorphism, grading: &Grading) -> Result<Permutation> {
    let parts = grading.parts();
    let mapping = parts
        .iter()
        .enumerate()
        .map(|(i, part)| {
            let image = part.image(h.action())?;
            parts.iter().position(|p| *p == image).ok_or(Error::NotPermuting(i))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_mapping(mapping)
}

/// One element of N(G)/G: the permutation it induces, the kinds of
/// automorphisms realizing it, and a shortest generator word (applied left
/// to right) with its automorphism.
#[derive(Clone, Debug)]
pub struct QuotientElement {
    pub permutation: Permutation,
    pub kinds: BTreeSet<Kind>,
    pub word: Vec<String>,
    pub representative: Automorphism,
}

#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: PermutationGroup,
    pub generator_names: Vec<String>,
    /// Sorted by permutation.
    pub elements: Vec<QuotientElement>,
}

impl QuotientGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The subgroup of cosets containing an inner automorphism.
    pub fn inner(&self) -> PermutationGroup {
        let inner: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|e| e.kinds.contains(&Kind::Inner))
            .map(|e| e.permutation.clone())
            .collect();
        PermutationGroup::from_parts(self.group.degree, Vec::new(), inner)
    }
}

/// Builds N(G)/G from normalizer generators by breadth-first closure over
/// generator words, tracking the automorphism kind. Every pair of words
/// inducing the same permutation is checked to differ by an element of G.
pub fn quotient_group(
    spec: &MadGroupSpec,
    grading: &Grading,
    generators: &[(String, Automorphism)],
    cap: usize,
) -> Result<QuotientGroup> {
    let alg = grading.algebra();
    for (name, h) in generators {
        if !normalizes(alg, h, spec) {
            return Err(Error::NotNormalizing(name.clone()));
        }
    }
    let degree = grading.part_count();
    let gen_perms = generators
        .iter()
        .map(|(_, h)| induced_permutation(h, grading))
        .collect::<Result<Vec<_>>>()?;
    // elements of G are words too: they realize the identity permutation
    // with every kind present in G
    let g_kinds: BTreeSet<Kind> = spec
        .separating_generators
        .iter()
        .chain(&spec.probes)
        .map(Automorphism::kind)
        .chain([Kind::Inner])
        .collect();

    let identity = Automorphism::identity(alg);
    let mut first: HashMap<Permutation, usize> = HashMap::new();
    let mut elements: Vec<QuotientElement> = Vec::new();
    let mut queue: VecDeque<(Permutation, Kind)> = VecDeque::new();
    let mut states: HashMap<(Permutation, Kind), (Automorphism, Vec<String>)> = HashMap::new();

    let id_perm = Permutation::identity(degree);
    first.insert(id_perm.clone(), 0);
    elements.push(QuotientElement {
        permutation: id_perm.clone(),
        kinds: BTreeSet::from([Kind::Inner]),
        word: Vec::new(),
        representative: identity.clone(),
    });
    states.insert((id_perm.clone(), Kind::Inner), (identity, Vec::new()));
    queue.push_back((id_perm, Kind::Inner));

    while let Some(state) = queue.pop_front() {
        let (h, word) = states[&state].clone();
        for (k, (name, g)) in generators.iter().enumerate() {
            let next = g.compose(&h);
            let perm = gen_perms[k].compose(&state.0);
            let mut next_word = word.clone();
            next_word.push(name.clone());
            let mut kinds = vec![next.kind()];
            if g_kinds.contains(&Kind::Outer) {
                kinds.push(next.kind().compose(Kind::Outer));
            }
            match first.get(&perm) {
                Some(&idx) => {
                    let witness = &elements[idx].representative;
                    if !spec.contains(&witness.inverse().compose(&next)) {
                        return Err(Error::NotFaithful(format!(
                            "words [{}] and [{}] induce {} but differ outside {}",
                            elements[idx].word.join(" "),
                            next_word.join(" "),
                            perm.cycle_notation(),
                            spec.name
                        )));
                    }
                }
                None => {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCap(cap));
                    }
                    first.insert(perm.clone(), elements.len());
                    elements.push(QuotientElement {
                        permutation: perm.clone(),
                        kinds: BTreeSet::new(),
                        word: next_word.clone(),
                        representative: next.clone(),
                    });
                }
            }
            let idx = first[&perm];
            for kind in kinds {
                elements[idx].kinds.insert(kind);
                let key = (perm.clone(), kind);
                if let std::collections::hash_map::Entry::Vacant(e) = states.entry(key.clone()) {
                    e.insert((next.clone(), next_word.clone()));
                    queue.push_back(key);
                }
            }
        }
    }
    if g_kinds.contains(&Kind::Outer) {
        elements[0].kinds.insert(Kind::Outer);
    }

    elements.sort_by(|a, b| a.permutation.cmp(&b.permutation));
    let group = PermutationGroup::from_parts(
        degree,
        gen_perms,
        elements.iter().map(|e| e.permutation.clone()),
    );
    Ok(QuotientGroup {
        group,
        generator_names: generators.iter().map(|(n, _)| n.clone()).collect(),
        elements,
    })
}

/// The subgroup of N(G)/G formed by cosets of inner automorphisms.
pub fn inner_subquotient(
    spec: &MadGroupSpec,
    grading: &Grading,
    generators: &[(String, Automorphism)],
    cap: usize,
) -> Result<PermutationGroup> {
    Ok(quotient_group(spec, grading, generators, cap)?.inner())
}

pub type Mat2 = [[u32; 2]; 2];

/// The matrix `M` over Z_3 with `label(p(i)) = M · label(i)` for every
/// part, if the grading is labeled by Z_3 × Z_3 and such `M` exists.
pub fn linearize_on_labels(p: &Permutation, grading: &Grading) -> Option<Mat2> {
    let labeling = grading.labeling()?;
    if labeling.group.orders() != [3, 3] || p.degree() != labeling.labels.len() {
        return None;
    }
    all_mat2_z3().into_iter().find(|m| {
        labeling
            .labels
            .iter()
            .enumerate()
            .all(|(i, v)| labeling.labels[p.apply(i)] == mat2_apply(m, v))
    })
}

pub fn mat2_apply(m: &Mat2, v: &[u32]) -> Vec<u32> {
    (0..2).map(|r| (m[r][0] * v[0] + m[r][1] * v[1]) % 3).collect()
}

pub fn det_z3(m: &Mat2) -> u32 {
    (m[0][0] * m[1][1] + 2 * m[0][1] * m[1][0]) % 3
}

fn all_mat2_z3() -> Vec<Mat2> {
    (0..81u32)
        .map(|x| [[x % 3, x / 3 % 3], [x / 9 % 3, x / 27 % 3]])
        .collect()
}
