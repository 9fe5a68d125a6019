//! The four fine gradings of sl(3,C) with their MAD-groups, published part
//! spans and labelings, and normalizer generators.

use std::sync::Arc;

use crate::autgrp::{named, Automorphism};
use crate::cyclo::CycloNumber as C;
use crate::error::{Error, Result};
use crate::gradings::{common_eigenspaces, AbelianGroup, GroupElement, Grading, Labeling, MadFamily, MadGroupSpec};
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};

pub const NAMES: [&str; 4] = ["g1", "g2", "g3", "g4"];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub mad: MadGroupSpec,
    /// Computed fine grading, renumbered and labeled as published.
    pub grading: Grading,
    pub group: AbelianGroup,
    pub labels: Vec<GroupElement>,
    pub normalizer_generators: Vec<(String, Automorphism)>,
}

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let alg = Arc::new(LieAlgebra::sl(3));
    catalog_in(alg, name)
}

pub fn catalog_in(alg: Arc<LieAlgebra>, name: &str) -> Result<CatalogEntry> {
    let (name, mad, spans, group, labels, gens): (&'static str, _, _, _, Option<Vec<GroupElement>>, &[&str]) =
        match name {
            "g1" => (
                "g1",
                g1_spec(&alg),
                g1_spans(),
                AbelianGroup::new(vec![3, 3])?,
                None,
                &["OutI", "AdB1", "AdB2"],
            ),
            "g2" => (
                "g2",
                g2_spec(&alg),
                g2_spans(),
                AbelianGroup::new(vec![2, 2, 2])?,
                Some(
                    [[0, 0, 1], [1, 1, 1], [1, 0, 1], [0, 1, 1], [1, 1, 0], [0, 1, 0], [1, 0, 0]]
                        .iter()
                        .map(|l| l.to_vec())
                        .collect(),
                ),
                &["AdB1", "AdB2", "AdH"],
            ),
            "g3" => (
                "g3",
                g3_spec(&alg),
                g3_spans(),
                AbelianGroup::cyclic(8),
                Some((0..8).map(|k| vec![k]).collect()),
                &["AdB2", "AdH"],
            ),
            "g4" => (
                "g4",
                g4_spec(&alg),
                g4_spans(),
                AbelianGroup::new(vec![3, 3])?,
                Some(
                    [[1, 0], [2, 0], [0, 1], [0, 2], [1, 1], [2, 1], [1, 2], [2, 2]]
                        .iter()
                        .map(|l| l.to_vec())
                        .collect(),
                ),
                &["OutI", "AdS", "AdD"],
            ),
            other => return Err(Error::UnknownCatalog(other.to_string())),
        };

    let computed = common_eigenspaces(alg.clone(), &mad.separating_generators)?;
    let published = spans_to_subspaces(&alg, spans)?;
    if published.len() != computed.part_count() {
        return Err(Error::CatalogMismatch(format!(
            "{name}: computed {} parts, published {}",
            computed.part_count(),
            published.len()
        )));
    }
    let perm = published
        .iter()
        .map(|(n, s)| {
            computed
                .parts()
                .iter()
                .position(|p| p == s)
                .ok_or_else(|| Error::CatalogMismatch(format!("{name}: part {n} not among computed parts")))
        })
        .collect::<Result<Vec<_>>>()?;
    let grading = computed
        .reordered(&perm)
        .with_names(published.iter().map(|(n, _)| n.clone()).collect());

    let labels = match labels {
        Some(l) => l,
        None => grading
            .search_labeling(&group)
            .ok_or_else(|| Error::CatalogMismatch(format!("{name}: no labeling by {group}")))?,
    };
    let grading = grading.with_labeling(Labeling {
        group: group.clone(),
        labels: labels.clone(),
    })?;
    let normalizer_generators = gens
        .iter()
        .map(|g| Ok((g.to_string(), named::lookup(&alg, g)?)))
        .collect::<Result<_>>()?;
    Ok(CatalogEntry {
        name,
        mad,
        grading,
        group,
        labels,
        normalizer_generators,
    })
}

/// The published parts of a catalog grading, in published order.
pub fn published_parts(alg: &LieAlgebra, name: &str) -> Result<Vec<(String, Subspace)>> {
    let spans = match name {
        "g1" => g1_spans(),
        "g2" => g2_spans(),
        "g3" => g3_spans(),
        "g4" => g4_spans(),
        other => return Err(Error::UnknownCatalog(other.to_string())),
    };
    spans_to_subspaces(alg, spans)
}

fn spans_to_subspaces(alg: &LieAlgebra, spans: Spans) -> Result<Vec<(String, Subspace)>> {
    spans
        .into_iter()
        .map(|(n, texts)| {
            let vectors = texts
                .iter()
                .map(|t| parse_span_vector(alg, t))
                .collect::<Result<Vec<_>>>()?;
            Ok((n.to_string(), Subspace::span(alg.dim(), vectors)?))
        })
        .collect()
}

/// sl(3) basis syntax, or `pauli:a,b` for `P^a Q^b`.
fn parse_span_vector(alg: &LieAlgebra, text: &str) -> Result<Vec<C>> {
    if let Some(rest) = text.strip_prefix("pauli:") {
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| Error::Parse(text.to_string()))?;
        let a: u32 = a.parse().map_err(|_| Error::Parse(text.to_string()))?;
        let b: u32 = b.parse().map_err(|_| Error::Parse(text.to_string()))?;
        let m = named::p().pow(a)?.mul(&named::q().pow(b)?)?;
        return Ok(alg.from_matrix(&m)?.coords);
    }
    Ok(alg.parse_element(text)?.coords)
}

type Spans = Vec<(&'static str, Vec<&'static str>)>;

fn g1_spans() -> Spans {
    vec![
        ("N_0", vec!["H1", "H2"]),
        ("N_a1", vec!["E12"]),
        ("N_a2", vec!["E23"]),
        ("N_a1+a2", vec!["E13"]),
        ("N_-a1-a2", vec!["E31"]),
        ("N_-a2", vec!["E32"]),
        ("N_-a1", vec!["E21"]),
    ]
}

fn g2_spans() -> Spans {
    vec![
        ("K_001", vec!["H1", "H2"]),
        ("K_111", vec!["E21 + E12"]),
        ("K_101", vec!["E31 + E13"]),
        ("K_011", vec!["E23 + E32"]),
        ("K_110", vec!["E21 - E12"]),
        ("K_010", vec!["E23 - E32"]),
        ("K_100", vec!["E31 - E13"]),
    ]
}

fn g3_spans() -> Spans {
    // H1 = E11 - E22, H2 = E22 - E33
    vec![
        ("M_0", vec!["H2"]),
        ("M_1", vec!["E12 - E31"]),
        ("M_2", vec!["E23"]),
        ("M_3", vec!["E13 + E21"]),
        ("M_4", vec!["2*H1 + H2"]),
        ("M_5", vec!["E12 + E31"]),
        ("M_6", vec!["E32"]),
        ("M_7", vec!["E13 - E21"]),
    ]
}

fn g4_spans() -> Spans {
    vec![
        ("L_10", vec!["pauli:1,0"]),
        ("L_20", vec!["pauli:2,0"]),
        ("L_01", vec!["pauli:0,1"]),
        ("L_02", vec!["pauli:0,2"]),
        ("L_11", vec!["pauli:1,1"]),
        ("L_21", vec!["pauli:2,1"]),
        ("L_12", vec!["pauli:1,2"]),
        ("L_22", vec!["pauli:2,2"]),
    ]
}

fn ints(v: &[i64]) -> Vec<C> {
    v.iter().map(|&x| C::from_int(x)).collect()
}

fn g1_spec(alg: &LieAlgebra) -> MadGroupSpec {
    let w = C::root_of_unity(3, 1);
    let sep = vec![
        Automorphism::ad(alg, Matrix::diag(vec![C::one(1), w.clone(), C::one(1)])),
        Automorphism::ad(alg, Matrix::diag(vec![C::one(1), C::one(1), w])),
    ];
    let probes = vec![
        Automorphism::ad(alg, Matrix::diag(ints(&[1, 2, 5]))),
        Automorphism::ad(alg, Matrix::diag(ints(&[-3, 7, 11]))),
    ];
    MadGroupSpec {
        name: "G1".into(),
        family: MadFamily::Torus,
        separating_generators: sep.into_iter().map(|a| a.expect("invertible")).collect(),
        probes: probes.into_iter().map(|a| a.expect("invertible")).collect(),
        is_infinite: true,
    }
}

fn g2_spec(alg: &LieAlgebra) -> MadGroupSpec {
    let sep = vec![
        Automorphism::ad(alg, Matrix::diag(ints(&[-1, 1, 1]))),
        Automorphism::ad(alg, Matrix::diag(ints(&[1, -1, 1]))),
        Automorphism::out(alg, Matrix::identity(3, 1)),
    ];
    MadGroupSpec {
        name: "G2".into(),
        family: MadFamily::SignDiagonal,
        separating_generators: sep.into_iter().map(|a| a.expect("invertible")).collect(),
        probes: Vec::new(),
        is_infinite: false,
    }
}

/// `[[ε,0,0],[0,0,α],[0,α⁻¹,0]]`.
pub fn twisted(eps: C, alpha: C) -> Matrix {
    let inv = alpha.inv().expect("nonzero");
    let z = C::zero(1);
    Matrix::from_rows(vec![
        vec![eps, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), alpha],
        vec![z.clone(), inv, z],
    ])
    .expect("3x3")
}

fn g3_spec(alg: &LieAlgebra) -> MadGroupSpec {
    let i = C::root_of_unity(4, 1);
    // Out with α = ζ_8 has order 8 and its ζ_8^k eigenspace is M_k
    let sep = vec![
        Automorphism::out(alg, twisted(C::one(1), C::root_of_unity(8, 1))),
        Automorphism::ad(alg, Matrix::diag(vec![C::one(1), i.clone(), -i])),
    ];
    let probes = vec![
        Automorphism::ad(alg, Matrix::diag(vec![C::one(1), C::from_int(2), C::from_ratio(1, 2)])),
        Automorphism::ad(alg, Matrix::diag(vec![C::from_int(-1), C::from_int(3), C::from_ratio(1, 3)])),
        Automorphism::out(alg, twisted(C::one(1), C::from_int(2))),
        Automorphism::out(alg, twisted(C::from_int(-1), C::from_int(3))),
    ];
    MadGroupSpec {
        name: "G3".into(),
        family: MadFamily::TwistedTorus,
        separating_generators: sep.into_iter().map(|a| a.expect("invertible")).collect(),
        probes: probes.into_iter().map(|a| a.expect("invertible")).collect(),
        is_infinite: true,
    }
}

fn g4_spec(alg: &LieAlgebra) -> MadGroupSpec {
    let sep = vec![Automorphism::ad(alg, named::p()), Automorphism::ad(alg, named::q())];
    MadGroupSpec {
        name: "G4".into(),
        family: MadFamily::Pauli,
        separating_generators: sep.into_iter().map(|a| a.expect("invertible")).collect(),
        probes: Vec::new(),
        is_infinite: false,
    }
}
