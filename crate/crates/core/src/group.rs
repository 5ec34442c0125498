//! Finite permutation groups with a fixed element enumeration.
//!
//! Elements are addressed by their position in the enumeration, which is the
//! breadth-first discovery order of the closure of the generators. Index 0 is
//! always the identity, so "ι-minimal" throughout the crate means "smallest
//! [`ElementId`]".

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counters::{OpCounters, OpCounts};

/// Groups up to this order get a materialized multiplication table.
pub const TABLE_LIMIT: usize = 4096;

/// Default bound on the order reached by [`FiniteGroup::from_generators`].
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

/// Index of a group element in the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator `{name}` is not a permutation of 0..{degree}")]
    NotAPermutation { name: String, degree: usize },
    #[error("generator `{name}` acts on {found} points, expected {degree}")]
    DegreeMismatch {
        name: String,
        degree: usize,
        found: usize,
    },
    #[error("group closure exceeds the maximum order {max}")]
    TooLarge { max: usize },
    #[error("group document is inconsistent: {0}")]
    Inconsistent(String),
}

/// A finite group given by permutation generators on `0..degree`.
///
/// Products follow function composition: `(g·h)(v) = g(h(v))`.
pub struct FiniteGroup {
    degree: usize,
    generator_names: Vec<String>,
    generators: Vec<ElementId>,
    /// Flat `order × degree` image table.
    perms: Vec<u32>,
    lookup: HashMap<Box<[u32]>, ElementId>,
    /// Breadth-first tree: `(parent, generator position)`; unused for the identity.
    parent: Vec<(ElementId, u32)>,
    table: Option<Vec<u32>>,
    inverses: Vec<ElementId>,
    counters: OpCounters,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("degree", &self.degree)
            .field("generators", &self.generator_names)
            .finish()
    }
}

impl FiniteGroup {
    /// The trivial group acting on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group is always valid")
    }

    pub fn from_generators(
        degree: usize,
        generators: Vec<(String, Vec<u32>)>,
    ) -> Result<Self, GroupError> {
        Self::from_generators_bounded(degree, generators, DEFAULT_MAX_ORDER)
    }

    /// Enumerates the closure of `generators` breadth-first from the identity,
    /// expanding each element by the generators in input order.
    pub fn from_generators_bounded(
        degree: usize,
        generators: Vec<(String, Vec<u32>)>,
        max_order: usize,
    ) -> Result<Self, GroupError> {
        for (name, images) in &generators {
            if images.len() != degree {
                return Err(GroupError::DegreeMismatch {
                    name: name.clone(),
                    degree,
                    found: images.len(),
                });
            }
            let mut seen = vec![false; degree];
            for &v in images {
                let v = v as usize;
                if v >= degree || seen[v] {
                    return Err(GroupError::NotAPermutation {
                        name: name.clone(),
                        degree,
                    });
                }
                seen[v] = true;
            }
        }

        let identity: Box<[u32]> = (0..degree as u32).collect();
        let mut perms: Vec<u32> = identity.to_vec();
        let mut lookup = HashMap::new();
        lookup.insert(identity, ElementId(0));
        let mut parent = vec![(ElementId(0), u32::MAX)];
        let mut queue = VecDeque::from([ElementId(0)]);
        let mut scratch = vec![0u32; degree];

        while let Some(current) = queue.pop_front() {
            for (pos, (_, images)) in generators.iter().enumerate() {
                {
                    let cur = &perms[current.index() * degree..(current.index() + 1) * degree];
                    for v in 0..degree {
                        scratch[v] = cur[images[v] as usize];
                    }
                }
                if lookup.contains_key(scratch.as_slice()) {
                    continue;
                }
                let next = lookup.len();
                if next >= max_order {
                    return Err(GroupError::TooLarge { max: max_order });
                }
                let id = ElementId(next as u32);
                lookup.insert(scratch.clone().into_boxed_slice(), id);
                perms.extend_from_slice(&scratch);
                parent.push((current, pos as u32));
                queue.push_back(id);
            }
        }

        let order = lookup.len();
        let generator_ids = generators
            .iter()
            .map(|(_, images)| lookup[images.as_slice()])
            .collect();
        let generator_names = generators.into_iter().map(|(name, _)| name).collect();

        let mut group = FiniteGroup {
            degree,
            generator_names,
            generators: generator_ids,
            perms,
            lookup,
            parent,
            table: None,
            inverses: Vec::new(),
            counters: OpCounters::default(),
        };

        let mut inverse = vec![0u32; degree];
        group.inverses = (0..order)
            .map(|g| {
                let p = group.permutation(ElementId(g as u32));
                for (v, &image) in p.iter().enumerate() {
                    inverse[image as usize] = v as u32;
                }
                group.lookup[inverse.as_slice()]
            })
            .collect();

        if order <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for g in 0..order {
                for h in 0..order {
                    table.push(group.compose(ElementId(g as u32), ElementId(h as u32)).0);
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    fn compose(&self, g: ElementId, h: ElementId) -> ElementId {
        let pg = self.permutation(g);
        let ph = self.permutation(h);
        let composed: Vec<u32> = ph.iter().map(|&v| pg[v as usize]).collect();
        self.lookup[composed.as_slice()]
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    /// Number of points the generators permute.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElementId> + Clone {
        (0..self.order() as u32).map(ElementId)
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Image table of `g` on `0..degree`.
    pub fn permutation(&self, g: ElementId) -> &[u32] {
        let start = g.index() * self.degree;
        &self.perms[start..start + self.degree]
    }

    /// Looks up the element acting as the given permutation.
    pub fn element_of(&self, images: &[u32]) -> Option<ElementId> {
        self.lookup.get(images).copied()
    }

    /// Generator word (positions into [`Self::generators`]) whose left-to-right
    /// product is `g`.
    pub fn word(&self, g: ElementId) -> Vec<u32> {
        let mut word = Vec::new();
        let mut cur = g;
        while !cur.is_identity() {
            let (up, gen) = self.parent[cur.index()];
            word.push(gen);
            cur = up;
        }
        word.reverse();
        word
    }

    /// Product without instrumentation; used by the crate's own bookkeeping.
    #[inline]
    pub(crate) fn mul(&self, g: ElementId, h: ElementId) -> ElementId {
        match &self.table {
            Some(table) => ElementId(table[g.index() * self.order() + h.index()]),
            None => self.compose(g, h),
        }
    }

    #[inline]
    pub(crate) fn inverse(&self, g: ElementId) -> ElementId {
        self.inverses[g.index()]
    }

    /// `g · h`.
    pub fn prod(&self, g: ElementId, h: ElementId) -> ElementId {
        self.counters.bump_prod();
        self.mul(g, h)
    }

    pub fn inv(&self, g: ElementId) -> ElementId {
        self.counters.bump_inv();
        self.inverse(g)
    }

    /// `g · h · g⁻¹`.
    pub fn conjugate(&self, g: ElementId, h: ElementId) -> ElementId {
        self.mul(self.mul(g, h), self.inverse(g))
    }

    /// The ι-minimal element of the left coset `g·H`.
    pub fn minrep(&self, subgroup: &Subgroup, g: ElementId) -> ElementId {
        self.counters.bump_minrep();
        self.min_in_coset(subgroup, g)
    }

    pub(crate) fn min_in_coset(&self, subgroup: &Subgroup, g: ElementId) -> ElementId {
        if subgroup.contains(g) {
            return ElementId::IDENTITY;
        }
        subgroup
            .members()
            .iter()
            .map(|&h| self.mul(g, h))
            .min()
            .expect("subgroups are nonempty")
    }

    pub fn is_member(&self, subgroup: &Subgroup, g: ElementId) -> bool {
        subgroup.contains(g)
    }

    /// True when both groups have the same order and agree on every product
    /// under their enumerations.
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.order() != other.order() {
            return false;
        }
        if let (Some(a), Some(b)) = (&self.table, &other.table) {
            return a == b;
        }
        // Right multiplication by a generating set determines the whole table.
        self.generators
            .iter()
            .all(|&s| self.elements().all(|g| self.mul(g, s) == other.mul(g, s)))
    }

    pub fn counters(&self) -> &OpCounters {
        &self.counters
    }

    pub fn op_counts(&self) -> OpCounts {
        self.counters.snapshot()
    }

    pub fn to_document(&self) -> GroupDocument {
        let generators = self
            .generator_names
            .iter()
            .zip(&self.generators)
            .map(|(name, &g)| (name.clone(), self.permutation(g).to_vec()))
            .collect();
        GroupDocument {
            order: self.order(),
            generators,
            elements: self.elements().map(|g| self.word(g)).collect(),
        }
    }

    /// Rebuilds the group from its generators and checks the recorded order
    /// and element words against the fresh enumeration.
    pub fn from_document(doc: &GroupDocument) -> Result<Self, GroupError> {
        let degree = doc.generators.values().next().map_or(0, Vec::len);
        let group = Self::from_generators(
            degree,
            doc.generators
                .iter()
                .map(|(name, images)| (name.clone(), images.clone()))
                .collect(),
        )?;
        if group.order() != doc.order {
            return Err(GroupError::Inconsistent(format!(
                "declared order {} but generators produce {}",
                doc.order,
                group.order()
            )));
        }
        if !doc.elements.is_empty() {
            if doc.elements.len() != group.order() {
                return Err(GroupError::Inconsistent(format!(
                    "{} element words for a group of order {}",
                    doc.elements.len(),
                    group.order()
                )));
            }
            for (index, word) in doc.elements.iter().enumerate() {
                let mut g = ElementId::IDENTITY;
                for &pos in word {
                    let s = *group.generators.get(pos as usize).ok_or_else(|| {
                        GroupError::Inconsistent(format!("element {index}: no generator {pos}"))
                    })?;
                    g = group.mul(g, s);
                }
                if g.index() != index {
                    return Err(GroupError::Inconsistent(format!(
                        "element word {index} evaluates to element {}",
                        g.0
                    )));
                }
            }
        }
        Ok(group)
    }
}

/// Removes duplicates and sorts along the enumeration.
pub fn uniqsort(mut elements: Vec<ElementId>) -> Vec<ElementId> {
    elements.sort_unstable();
    elements.dedup();
    elements
}

/// Serialized form of a group: named generator images, the order, and one
/// generator word per element in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub order: usize,
    pub generators: IndexMap<String, Vec<u32>>,
    #[serde(default)]
    pub elements: Vec<Vec<u32>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("element {0} is outside a group of order {1}")]
    OutOfRange(u32, usize),
    #[error("subgroup does not contain the identity")]
    MissingIdentity,
    #[error("not closed under products: {0} · {1} = {2} is missing")]
    NotClosed(ElementId, ElementId, ElementId),
}

/// A subgroup stored as a sorted member list plus a membership bitset.
#[derive(Clone)]
pub struct Subgroup {
    members: Vec<ElementId>,
    bits: FixedBitSet,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.members.iter().map(|g| g.0))
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(group_order: usize) -> Self {
        Self::from_members_unchecked(group_order, vec![ElementId::IDENTITY])
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_members_unchecked(group.order(), group.elements().collect())
    }

    /// Builds a subgroup without checking closure. Members are sorted and
    /// deduplicated; out-of-range members are rejected.
    pub fn try_from_members(
        group_order: usize,
        members: Vec<ElementId>,
    ) -> Result<Self, SubgroupError> {
        if let Some(bad) = members.iter().find(|g| g.index() >= group_order) {
            return Err(SubgroupError::OutOfRange(bad.0, group_order));
        }
        Ok(Self::from_members_unchecked(group_order, members))
    }

    pub(crate) fn from_members_unchecked(group_order: usize, members: Vec<ElementId>) -> Self {
        let members = uniqsort(members);
        let mut bits = FixedBitSet::with_capacity(group_order);
        for g in &members {
            bits.insert(g.index());
        }
        Subgroup { members, bits }
    }

    /// Builds and verifies a subgroup of `group`.
    pub fn new(group: &FiniteGroup, members: Vec<ElementId>) -> Result<Self, SubgroupError> {
        let subgroup = Self::try_from_members(group.order(), members)?;
        subgroup.check_closure(group)?;
        Ok(subgroup)
    }

    pub fn check_closure(&self, group: &FiniteGroup) -> Result<(), SubgroupError> {
        if !self.contains(ElementId::IDENTITY) {
            return Err(SubgroupError::MissingIdentity);
        }
        for &g in &self.members {
            for &h in &self.members {
                let gh = group.mul(g, h);
                if !self.contains(gh) {
                    return Err(SubgroupError::NotClosed(g, h, gh));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn contains(&self, g: ElementId) -> bool {
        self.bits.contains(g.index())
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        // Bow-tie reflections on {center, a1, a2, b1, b2}.
        FiniteGroup::from_generators(
            5,
            vec![
                ("sigma".into(), vec![0, 2, 1, 4, 3]),
                ("tau".into(), vec![0, 3, 4, 1, 2]),
            ],
        )
        .unwrap()
    }

    fn cyclic(n: u32) -> FiniteGroup {
        FiniteGroup::from_generators(
            n as usize,
            vec![("r".into(), (0..n).map(|v| (v + 1) % n).collect())],
        )
        .unwrap()
    }

    #[test]
    fn empty_generating_set_gives_trivial_group() {
        let g = FiniteGroup::from_generators(4, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(ElementId(0)), ElementId(0));
    }

    #[test]
    fn klein_four_enumeration() {
        let g = klein();
        assert_eq!(g.order(), 4);
        assert_eq!(g.generators(), &[ElementId(1), ElementId(2)]);
        assert_eq!(g.permutation(ElementId(3)), &[0, 4, 3, 2, 1]);
        assert_eq!(g.prod(ElementId(1), ElementId(2)), ElementId(3));
        for e in g.elements() {
            assert_eq!(g.inv(e), e);
        }
    }

    #[test]
    fn cyclic_enumeration_matches_powers() {
        let g = cyclic(6);
        for m in 0..6u32 {
            let expected: Vec<u32> = (0..6).map(|v| (v + m) % 6).collect();
            assert_eq!(g.permutation(ElementId(m)), expected.as_slice());
        }
        assert_eq!(g.prod(ElementId(2), ElementId(5)), ElementId(1));
        assert_eq!(g.inv(ElementId(2)), ElementId(4));
        assert_eq!(g.inv(ElementId(0)), ElementId(0));
    }

    #[test]
    fn minrep_on_klein_cosets() {
        let g = klein();
        let h = Subgroup::new(&g, vec![ElementId(0), ElementId(1)]).unwrap();
        assert_eq!(g.minrep(&h, ElementId(1)), ElementId(0));
        assert_eq!(g.minrep(&h, ElementId(3)), ElementId(2));
        let reps = uniqsort(g.elements().map(|e| g.minrep(&h, e)).collect());
        assert_eq!(reps, vec![ElementId(0), ElementId(2)]);
        let trivial = Subgroup::trivial(4);
        for e in g.elements() {
            assert_eq!(g.minrep(&trivial, e), e);
        }
    }

    #[test]
    fn membership() {
        let g = klein();
        let h = Subgroup::new(&g, vec![ElementId(0), ElementId(1)]).unwrap();
        assert!(g.is_member(&h, ElementId(0)));
        assert!(g.is_member(&h, ElementId(1)));
        assert!(!g.is_member(&h, ElementId(2)));
    }

    #[test]
    fn uniqsort_semantics() {
        assert!(uniqsort(vec![]).is_empty());
        let ids = |v: &[u32]| v.iter().map(|&x| ElementId(x)).collect::<Vec<_>>();
        assert_eq!(uniqsort(ids(&[3, 0, 3, 1])), ids(&[0, 1, 3]));
    }

    #[test]
    fn closure_is_checked() {
        let g = klein();
        assert_eq!(
            Subgroup::new(&g, vec![ElementId(1)]),
            Err(SubgroupError::MissingIdentity)
        );
        assert!(matches!(
            Subgroup::new(&g, vec![ElementId(0), ElementId(1), ElementId(2)]),
            Err(SubgroupError::NotClosed(..))
        ));
    }

    #[test]
    fn rejects_non_permutations_and_large_groups() {
        assert!(matches!(
            FiniteGroup::from_generators(3, vec![("x".into(), vec![0, 0, 1])]),
            Err(GroupError::NotAPermutation { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_generators(3, vec![("x".into(), vec![0, 1])]),
            Err(GroupError::DegreeMismatch { .. })
        ));
        let s5 = vec![
            ("a".to_string(), vec![1, 0, 2, 3, 4]),
            ("b".to_string(), vec![1, 2, 3, 4, 0]),
        ];
        assert_eq!(
            FiniteGroup::from_generators_bounded(5, s5.clone(), 100).unwrap_err(),
            GroupError::TooLarge { max: 100 }
        );
        assert_eq!(FiniteGroup::from_generators(5, s5).unwrap().order(), 120);
    }

    #[test]
    fn untabled_products_agree_with_table() {
        // S7 has order 5040 > TABLE_LIMIT.
        let s7 = FiniteGroup::from_generators(
            7,
            vec![
                ("a".into(), vec![1, 0, 2, 3, 4, 5, 6]),
                ("b".into(), vec![1, 2, 3, 4, 5, 6, 0]),
            ],
        )
        .unwrap();
        assert_eq!(s7.order(), 5040);
        assert!(!s7.has_table());
        for g in (0..5040).step_by(97).map(ElementId) {
            for h in (0..5040).step_by(131).map(ElementId) {
                let gh = s7.prod(g, h);
                let expected: Vec<u32> = s7
                    .permutation(h)
                    .iter()
                    .map(|&v| s7.permutation(g)[v as usize])
                    .collect();
                assert_eq!(s7.permutation(gh), expected.as_slice());
            }
            assert_eq!(s7.prod(g, s7.inv(g)), ElementId::IDENTITY);
        }
    }

    #[test]
    fn document_roundtrip_and_word_check() {
        let g = klein();
        let doc = g.to_document();
        assert_eq!(doc.elements, vec![vec![], vec![0], vec![1], vec![0, 1]]);
        let back = FiniteGroup::from_document(&doc).unwrap();
        assert!(back.same_group(&g));
        let mut bad = doc.clone();
        bad.elements.swap(1, 2);
        assert!(matches!(
            FiniteGroup::from_document(&bad),
            Err(GroupError::Inconsistent(_))
        ));
        let mut bad = doc;
        bad.order = 8;
        assert!(FiniteGroup::from_document(&bad).is_err());
    }
}
