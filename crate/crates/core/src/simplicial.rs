//! Finite abstract simplicial complexes over integer vertex ids.
//!
//! Every simplex carries a dense [`SimplexId`] assigned in canonical order:
//! by dimension first, then lexicographically on the sorted vertex list. All
//! vertices `0..vertex_count` are 0-simplices, so the id of vertex `v` is `v`.
//! Codimension-one face relations are precomputed in both directions.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimplexId(pub u32);

impl SimplexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("simplex {0:?} repeats a vertex")]
    MalformedSimplex(Vec<u32>),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("vertex {vertex} is outside 0..{count}")]
    VertexOutOfRange { vertex: u32, count: usize },
}

/// A codimension-one relation `parent ⪰ child`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceRelation {
    pub parent: SimplexId,
    pub child: SimplexId,
}

impl FaceRelation {
    pub fn codimension(&self) -> usize {
        1
    }
}

#[derive(Clone)]
pub struct SimplicialComplex {
    vertex_count: usize,
    vertices: Vec<u32>,
    offsets: Vec<u32>,
    dim_starts: Vec<u32>,
    index: HashMap<Box<[u32]>, SimplexId>,
    facets: Vec<Box<[SimplexId]>>,
    cofacets: Vec<Vec<SimplexId>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertex_count", &self.vertex_count)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.offsets == other.offsets
            && self.vertices == other.vertices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Downward closure of `maximal` over the vertex set `0..vertex_count`.
    pub fn new<S: AsRef<[u32]>>(
        vertex_count: usize,
        maximal: &[S],
    ) -> Result<Self, SimplicialError> {
        let mut closed: HashSet<Box<[u32]>> = HashSet::new();
        for v in 0..vertex_count as u32 {
            closed.insert(Box::new([v]));
        }
        let mut work: Vec<Box<[u32]>> = Vec::new();
        for simplex in maximal {
            let simplex = simplex.as_ref();
            if simplex.is_empty() {
                return Err(SimplicialError::EmptySimplex);
            }
            let mut sorted = simplex.to_vec();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::MalformedSimplex(simplex.to_vec()));
            }
            if let Some(&v) = sorted.iter().find(|&&v| v as usize >= vertex_count) {
                return Err(SimplicialError::VertexOutOfRange {
                    vertex: v,
                    count: vertex_count,
                });
            }
            work.push(sorted.into_boxed_slice());
        }
        while let Some(simplex) = work.pop() {
            if simplex.len() == 1 || closed.contains(&simplex) {
                continue;
            }
            for skip in 0..simplex.len() {
                let face: Box<[u32]> = simplex
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                if !closed.contains(&face) {
                    work.push(face);
                }
            }
            closed.insert(simplex);
        }

        let mut all: Vec<Box<[u32]>> = closed.into_iter().collect();
        all.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(Self::from_sorted(vertex_count, all))
    }

    /// Complex spanned by `maximal` with `max vertex + 1` vertices.
    pub fn from_maximal<S: AsRef<[u32]>>(maximal: &[S]) -> Result<Self, SimplicialError> {
        let count = maximal
            .iter()
            .flat_map(|s| s.as_ref().iter().copied())
            .max()
            .map_or(0, |v| v as usize + 1);
        Self::new(count, maximal)
    }

    fn from_sorted(vertex_count: usize, all: Vec<Box<[u32]>>) -> Self {
        let mut vertices = Vec::new();
        let mut offsets = vec![0u32];
        let mut dim_starts = Vec::new();
        let mut index = HashMap::with_capacity(all.len());
        for (i, simplex) in all.iter().enumerate() {
            while dim_starts.len() < simplex.len() {
                dim_starts.push(i as u32);
            }
            vertices.extend_from_slice(simplex);
            offsets.push(vertices.len() as u32);
        }
        dim_starts.push(all.len() as u32);

        let mut facets = Vec::with_capacity(all.len());
        let mut cofacets = vec![Vec::new(); all.len()];
        for (i, simplex) in all.iter().enumerate() {
            let id = SimplexId(i as u32);
            let mut own: Vec<SimplexId> = if simplex.len() == 1 {
                Vec::new()
            } else {
                (0..simplex.len())
                    .map(|skip| {
                        let face: Vec<u32> = simplex
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        index[face.as_slice()]
                    })
                    .collect()
            };
            own.sort_unstable();
            for &f in &own {
                cofacets[f.index()].push(id);
            }
            facets.push(own.into_boxed_slice());
            index.insert(simplex.clone(), id);
        }

        SimplicialComplex {
            vertex_count,
            vertices,
            offsets,
            dim_starts,
            index,
            facets,
            cofacets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Largest simplex dimension; 0 for the empty complex.
    pub fn dimension(&self) -> usize {
        self.dim_starts.len().saturating_sub(2)
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = SimplexId> + DoubleEndedIterator + Clone {
        (0..self.len() as u32).map(SimplexId)
    }

    /// Ids of the `d`-simplices, a contiguous range in canonical order.
    pub fn ids_of_dim(&self, d: usize) -> Range<u32> {
        if d + 1 >= self.dim_starts.len() {
            let end = self.len() as u32;
            return end..end;
        }
        self.dim_starts[d]..self.dim_starts[d + 1]
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.ids_of_dim(d).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        if self.is_empty() {
            return Vec::new();
        }
        (0..=self.dimension())
            .map(|d| self.count_of_dim(d))
            .collect()
    }

    pub fn vertices_of(&self, x: SimplexId) -> &[u32] {
        let i = x.index();
        &self.vertices[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn dim_of(&self, x: SimplexId) -> usize {
        self.vertices_of(x).len() - 1
    }

    /// Id of the simplex with exactly these (sorted) vertices.
    pub fn find(&self, sorted_vertices: &[u32]) -> Option<SimplexId> {
        self.index.get(sorted_vertices).copied()
    }

    /// The `d+1` codimension-one faces of a `d`-simplex, in canonical order.
    pub fn faces_codim1(&self, x: SimplexId) -> &[SimplexId] {
        &self.facets[x.index()]
    }

    pub fn cofaces_codim1(&self, x: SimplexId) -> &[SimplexId] {
        &self.cofacets[x.index()]
    }

    /// All faces of `x` including `x`, sorted by id.
    pub fn all_faces(&self, x: SimplexId) -> Vec<SimplexId> {
        let verts = self.vertices_of(x);
        let mut out: Vec<SimplexId> = (1..=verts.len())
            .flat_map(|k| verts.iter().copied().combinations(k))
            .map(|face| self.index[face.as_slice()])
            .collect();
        out.sort_unstable();
        out
    }

    /// True when `face` is a (not necessarily proper) face of `x`.
    pub fn is_face(&self, face: SimplexId, x: SimplexId) -> bool {
        let inner = self.vertices_of(face);
        let outer = self.vertices_of(x);
        inner.len() <= outer.len() && inner.iter().all(|v| outer.binary_search(v).is_ok())
    }

    pub fn face_relations(&self) -> impl Iterator<Item = FaceRelation> + '_ {
        self.ids().flat_map(move |parent| {
            self.faces_codim1(parent)
                .iter()
                .map(move |&child| FaceRelation { parent, child })
        })
    }

    pub fn maximal_simplices(&self) -> Vec<SimplexId> {
        self.ids()
            .filter(|x| self.cofacets[x.index()].is_empty())
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            vertices: self.vertex_count,
            maximal_simplices: self
                .maximal_simplices()
                .into_iter()
                .map(|x| self.vertices_of(x).to_vec())
                .collect(),
        }
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self, SimplicialError> {
        Self::new(doc.vertices, &doc.maximal_simplices)
    }
}

/// Label-sensitive equality: same vertex count and identical simplex sets.
pub fn complexes_equal(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    a == b
}

/// On-disk complex format. Maximal simplices are written in canonical order,
/// so serialization is byte-deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: usize,
    pub maximal_simplices: Vec<Vec<u32>>,
}

/// The barycentric subdivision of `source` together with its carrier map:
/// vertex `i` of the target is the barycenter of source simplex `i`.
#[derive(Debug, Clone)]
pub struct SubdivisionMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    carrier: Vec<SimplexId>,
}

impl SubdivisionMap {
    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    /// Source simplex whose barycenter is target vertex `v`.
    pub fn carrier(&self, v: u32) -> SimplexId {
        self.carrier[v as usize]
    }

    /// The chain of source simplices spanned by a target simplex.
    pub fn chain(&self, x: SimplexId) -> Vec<SimplexId> {
        self.target
            .vertices_of(x)
            .iter()
            .map(|&v| self.carrier(v))
            .collect()
    }
}

/// Subdivides along full flags: the target simplices are the strictly
/// ascending chains in the face poset of `source`.
pub fn barycentric_subdivision(source: &Arc<SimplicialComplex>) -> SubdivisionMap {
    let mut flags: Vec<Vec<u32>> = Vec::new();
    for x in source.maximal_simplices() {
        let verts = source.vertices_of(x);
        for order in verts.iter().copied().permutations(verts.len()) {
            let mut prefix = Vec::with_capacity(order.len());
            let mut chain = Vec::with_capacity(order.len());
            for v in order {
                prefix.push(v);
                let mut key = prefix.clone();
                key.sort_unstable();
                chain.push(source.index[key.as_slice()].0);
            }
            flags.push(chain);
        }
    }
    let target = SimplicialComplex::new(source.len(), &flags)
        .expect("flags of a valid complex form a valid complex");
    SubdivisionMap {
        source: Arc::clone(source),
        target: Arc::new(target),
        carrier: source.ids().collect(),
    }
}
