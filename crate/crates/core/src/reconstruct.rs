//! Rebuilding a complex from `(Y, S, T)`: one simplex `(y, g)` per left coset
//! `g·S(y)`, named by its ι-minimal representative.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::action::{ActionError, GroupAction};
use crate::cog::{validate_triple, CompressedTriple, ValidationReport};
use crate::counters::OpCounts;
use crate::group::{uniqsort, ElementId};
use crate::simplicial::{SimplexId, SimplicialComplex};

/// Default cap on the number of relations examined by [`check_partial_order`].
pub const PARTIAL_ORDER_BOUND: usize = 10_000;

#[derive(Debug, Error)]
pub enum ReconstructError {
    #[error("triple is invalid: {}", first_violation(.0))]
    Invalid(ValidationReport),
    #[error("reconstruction integrity failure at {label}: {detail}")]
    Integrity { label: Label, detail: String },
    #[error("{relations} relations exceed the brute-force bound {bound}")]
    TooLarge { relations: usize, bound: usize },
}

fn first_violation(report: &ValidationReport) -> String {
    match report.violations.first() {
        Some(v) if report.violations.len() > 1 => {
            format!("{v} (and {} more)", report.violations.len() - 1)
        }
        Some(v) => v.to_string(),
        None => "no violations".to_string(),
    }
}

/// A reconstructed simplex: the quotient simplex and the minimal
/// representative of its coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub y: SimplexId,
    pub g: ElementId,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.y.0, self.g.0)
    }
}

/// The labeled cosets and their codimension-one attachments, before any
/// vertex sets are formed.
#[derive(Debug, Clone)]
pub struct LabeledPoset {
    triple: CompressedTriple,
    /// In `(y, g)` order; quotient ids are dimension-sorted, so labels are too.
    labels: Vec<Label>,
    /// Labels of `y` occupy `offsets[y]..offsets[y + 1]`.
    offsets: Vec<u32>,
    /// Per quotient simplex and group element, the position of its coset.
    coset_index: Vec<Box<[u32]>>,
    /// Facet label indices, aligned with `Y.faces_codim1(y)`.
    facets: Vec<Box<[u32]>>,
}

impl LabeledPoset {
    pub fn triple(&self) -> &CompressedTriple {
        &self.triple
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label indices of the codimension-one faces of label `i`.
    pub fn facets(&self, i: usize) -> &[u32] {
        &self.facets[i]
    }

    /// Index of the label `(y, minrep(S(y), g))`.
    pub fn index_of_coset(&self, y: SimplexId, g: ElementId) -> usize {
        (self.offsets[y.index()] + self.coset_index[y.index()][g.index()]) as usize
    }

    /// Replaces facet `pos` of label `i` with label `target`.
    pub fn reattach(&mut self, i: usize, pos: usize, target: usize) {
        self.facets[i][pos] = target as u32;
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        let i = self.index_of_coset(label.y, label.g);
        (self.labels[i] == label).then_some(i)
    }
}

/// Per-dimension counts from one reconstruction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReconstructStats {
    pub quotient_simplices: Vec<usize>,
    pub simplices: Vec<usize>,
    pub ops: Vec<OpCounts>,
}

impl ReconstructStats {
    pub fn minrep_per_dimension(&self) -> Vec<u64> {
        self.ops.iter().map(|o| o.minrep).collect()
    }
}

/// Coset representatives of one class, the coset index of every element,
/// and the facet labels of each coset.
type ClassCosets = (Vec<ElementId>, Box<[u32]>, Vec<Box<[u32]>>);

/// Builds the labeled poset without validating the triple first.
pub fn basic_construction(t: &CompressedTriple) -> (LabeledPoset, ReconstructStats) {
    let group = t.group();
    let y_complex = t.quotient();
    let k = group.order();
    let mut stats = ReconstructStats::default();
    let mut labels: Vec<Label> = Vec::new();
    let mut offsets: Vec<u32> = vec![0];
    let mut coset_index: Vec<Box<[u32]>> = Vec::with_capacity(y_complex.len());
    let mut facets: Vec<Box<[u32]>> = Vec::new();

    let dims = if y_complex.is_empty() {
        0
    } else {
        y_complex.dimension() + 1
    };
    for d in 0..dims {
        let before = group.op_counts();
        let ys: Vec<SimplexId> = y_complex.ids_of_dim(d).map(SimplexId).collect();
        let lower_offsets = &offsets;
        let lower_index = &coset_index;
        let built: Vec<ClassCosets> = ys
            .par_iter()
            .map(|&y| {
                let s = t.stabilizer(y);
                let reps: Vec<ElementId> = group.elements().map(|g| group.minrep(s, g)).collect();
                let m = uniqsort(reps.clone());
                let index: Box<[u32]> = reps
                    .iter()
                    .map(|r| m.binary_search(r).expect("representative is listed") as u32)
                    .collect();
                // The face of (y, g) in class y' is the coset of g·T⁻¹.
                let children = y_complex.faces_codim1(y);
                let inverses: Vec<ElementId> =
                    t.transfers_of(y).iter().map(|&tr| group.inv(tr)).collect();
                let own_facets = m
                    .iter()
                    .map(|&g| {
                        children
                            .iter()
                            .zip(&inverses)
                            .map(|(&child, &tinv)| {
                                let c = group.prod(g, tinv);
                                lower_offsets[child.index()] + lower_index[child.index()][c.index()]
                            })
                            .collect()
                    })
                    .collect();
                (m, index, own_facets)
            })
            .collect();

        let mut count = 0;
        for (&y, (m, index, own_facets)) in ys.iter().zip(built) {
            count += m.len();
            labels.extend(m.into_iter().map(|g| Label { y, g }));
            offsets.push(labels.len() as u32);
            coset_index.push(index);
            facets.extend(own_facets);
        }
        stats.quotient_simplices.push(ys.len());
        stats.simplices.push(count);
        stats.ops.push(group.op_counts() - before);
    }
    debug_assert_eq!(coset_index.len(), y_complex.len());
    debug_assert!(k == 0 || labels.len() <= k * y_complex.len());
    (
        LabeledPoset {
            triple: t.clone(),
            labels,
            offsets,
            coset_index,
            facets,
        },
        stats,
    )
}

/// A reconstructed complex with its labels. Vertex `v` of the complex is
/// the `v`-th dimension-0 label.
#[derive(Debug, Clone)]
pub struct ReconstructedComplex {
    poset: LabeledPoset,
    complex: Arc<SimplicialComplex>,
    /// Label index of each simplex id.
    label_of_simplex: Vec<u32>,
    /// Simplex id of each label index.
    simplex_of_label: Vec<SimplexId>,
}

impl ReconstructedComplex {
    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn poset(&self) -> &LabeledPoset {
        &self.poset
    }

    pub fn triple(&self) -> &CompressedTriple {
        &self.poset.triple
    }

    pub fn label(&self, z: SimplexId) -> Label {
        self.poset.labels[self.label_of_simplex[z.index()] as usize]
    }

    pub fn simplex_of(&self, label: Label) -> Option<SimplexId> {
        self.poset.index_of(label).map(|i| self.simplex_of_label[i])
    }

    /// Every simplex with its label, in simplex order.
    pub fn labeled_simplices(&self) -> impl Iterator<Item = (SimplexId, Label)> + '_ {
        self.complex.ids().map(move |z| (z, self.label(z)))
    }

    /// The simplex carrying `(y, minrep(S(y), h·g))` for the simplex `(y, g)`.
    pub fn act(&self, h: ElementId, z: SimplexId) -> SimplexId {
        let label = self.label(z);
        let group = self.poset.triple.group();
        let i = self.poset.index_of_coset(label.y, group.mul(h, label.g));
        self.simplex_of_label[i]
    }
}

pub fn reconstruct(t: &CompressedTriple) -> Result<ReconstructedComplex, ReconstructError> {
    reconstruct_with_stats(t).map(|(z, _)| z)
}

/// Validates the triple, then reconstructs.
pub fn reconstruct_with_stats(
    t: &CompressedTriple,
) -> Result<(ReconstructedComplex, ReconstructStats), ReconstructError> {
    let report = validate_triple(t);
    if !report.is_valid() {
        return Err(ReconstructError::Invalid(report));
    }
    let (poset, stats) = basic_construction(t);
    Ok((realize(poset)?, stats))
}

/// Reconstructs without validating the triple; the integrity checks on the
/// vertex sets still apply.
pub fn reconstruct_unchecked(
    t: &CompressedTriple,
) -> Result<ReconstructedComplex, ReconstructError> {
    realize(basic_construction(t).0)
}

/// Assigns each label the union of the vertices of its facets and checks
/// that the result is a simplicial complex with the same face structure.
pub fn realize(poset: LabeledPoset) -> Result<ReconstructedComplex, ReconstructError> {
    let y_complex = poset.triple.quotient();
    let mut sets: Vec<Vec<u32>> = Vec::with_capacity(poset.len());
    let mut vertex_count = 0;
    for (i, label) in poset.labels.iter().enumerate() {
        let d = y_complex.dim_of(label.y);
        if d == 0 {
            vertex_count += 1;
            sets.push(vec![i as u32]);
            continue;
        }
        let mut set: Vec<u32> = poset.facets[i]
            .iter()
            .flat_map(|&f| sets[f as usize].iter().copied())
            .collect();
        set.sort_unstable();
        set.dedup();
        if set.len() != d + 1 {
            return Err(ReconstructError::Integrity {
                label: *label,
                detail: format!("a {d}-simplex spans {} vertices", set.len()),
            });
        }
        sets.push(set);
    }
    let complex =
        SimplicialComplex::new(vertex_count, &sets).map_err(|e| ReconstructError::Integrity {
            label: poset.labels[0],
            detail: e.to_string(),
        })?;
    if complex.len() != poset.len() {
        let mut seen = HashSet::new();
        let dup = sets
            .iter()
            .position(|s| !seen.insert(s.as_slice()))
            .unwrap_or(0);
        return Err(ReconstructError::Integrity {
            label: poset.labels[dup],
            detail: format!(
                "{} labels realize only {} distinct simplices",
                poset.len(),
                complex.len()
            ),
        });
    }
    let simplex_of_label: Vec<SimplexId> = sets
        .iter()
        .map(|s| complex.find(s).expect("every label set is a simplex"))
        .collect();
    let mut label_of_simplex = vec![0u32; complex.len()];
    for (i, z) in simplex_of_label.iter().enumerate() {
        label_of_simplex[z.index()] = i as u32;
    }
    for (i, label) in poset.labels.iter().enumerate() {
        let mut attached: Vec<SimplexId> = poset.facets[i]
            .iter()
            .map(|&f| simplex_of_label[f as usize])
            .collect();
        attached.sort_unstable();
        if attached != complex.faces_codim1(simplex_of_label[i]) {
            return Err(ReconstructError::Integrity {
                label: *label,
                detail: "attached faces do not match the faces of the realized simplex".into(),
            });
        }
    }
    Ok(ReconstructedComplex {
        poset,
        complex: Arc::new(complex),
        label_of_simplex,
        simplex_of_label,
    })
}

/// The action `h·(y, g) = (y, minrep(S(y), h·g))` on the reconstructed
/// complex, validated as a group action.
pub fn recovered_action(z: &ReconstructedComplex) -> Result<GroupAction, ActionError> {
    let group = z.triple().group();
    let n = z.complex.vertex_count();
    let tables = group
        .elements()
        .map(|h| (0..n as u32).map(|v| z.act(h, SimplexId(v)).0).collect())
        .collect();
    GroupAction::from_vertex_tables(Arc::clone(group), Arc::clone(&z.complex), tables)
}

/// Outcome of checking that the relation generated from the transfers is
/// a well-defined partial order compatible with the attachments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartialOrderReport {
    pub relations: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub well_defined: bool,
    /// Every codimension-one attachment is one of the relations.
    pub consistent: bool,
}

impl PartialOrderReport {
    pub fn holds(&self) -> bool {
        self.reflexive
            && self.antisymmetric
            && self.transitive
            && self.well_defined
            && self.consistent
    }
}

/// Brute-force check of the face relation between labels: `(y, g)` lies
/// over `(y', g')` when `y'` is a face of `y` and `g'` names the coset of
/// `g·T⁻¹`, with `T` the transfer product along a descending path.
pub fn check_partial_order(poset: &LabeledPoset) -> Result<PartialOrderReport, ReconstructError> {
    check_partial_order_bounded(poset, PARTIAL_ORDER_BOUND)
}

pub fn check_partial_order_bounded(
    poset: &LabeledPoset,
    bound: usize,
) -> Result<PartialOrderReport, ReconstructError> {
    let t = &poset.triple;
    let group = t.group();
    let y_complex = t.quotient();
    let relations: usize = poset
        .labels
        .iter()
        .map(|l| (1usize << (y_complex.dim_of(l.y) + 1)) - 1)
        .sum();
    if relations > bound {
        return Err(ReconstructError::TooLarge { relations, bound });
    }

    // Transfer product from y down to each of its faces.
    let path_transfer = |y: SimplexId, face: SimplexId| -> ElementId {
        let mut cur = y;
        let mut acc = ElementId::IDENTITY;
        while cur != face {
            let (pos, &next) = y_complex
                .faces_codim1(cur)
                .iter()
                .enumerate()
                .find(|(_, &f)| y_complex.is_face(face, f))
                .expect("a proper face lies in some facet");
            acc = group.mul(t.transfers_of(cur)[pos], acc);
            cur = next;
        }
        acc
    };
    let below = |y: SimplexId, g: ElementId| -> Vec<(SimplexId, usize)> {
        y_complex
            .all_faces(y)
            .into_iter()
            .map(|face| {
                let tr = path_transfer(y, face);
                (
                    face,
                    poset.index_of_coset(face, group.mul(g, group.inverse(tr))),
                )
            })
            .collect()
    };

    let mut down: Vec<Vec<usize>> = Vec::with_capacity(poset.len());
    let mut well_defined = true;
    for label in &poset.labels {
        let related: Vec<usize> = below(label.y, label.g)
            .into_iter()
            .map(|(_, i)| i)
            .collect();
        for &s in t.stabilizer(label.y).members() {
            let other: Vec<usize> = below(label.y, group.mul(label.g, s))
                .into_iter()
                .map(|(_, i)| i)
                .collect();
            if other != related {
                well_defined = false;
            }
        }
        down.push(related);
    }
    let sets: Vec<HashSet<usize>> = down.iter().map(|d| d.iter().copied().collect()).collect();

    let reflexive = (0..poset.len()).all(|i| sets[i].contains(&i));
    let antisymmetric =
        (0..poset.len()).all(|a| sets[a].iter().all(|&b| b == a || !sets[b].contains(&a)));
    let transitive = (0..poset.len()).all(|a| {
        sets[a]
            .iter()
            .all(|&b| sets[b].iter().all(|c| sets[a].contains(c)))
    });
    let consistent = (0..poset.len()).all(|a| {
        poset.facets[a]
            .iter()
            .all(|&f| sets[a].contains(&(f as usize)))
    });
    Ok(PartialOrderReport {
        relations,
        reflexive,
        antisymmetric,
        transitive,
        well_defined,
        consistent,
    })
}
