//! Finite group actions on simplicial complexes by simplicial automorphisms.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use smallvec::SmallVec;
use thiserror::Error;

use crate::counters::{OpCounters, OpCounts};
use crate::group::{ElementId, FiniteGroup, Subgroup};
use crate::simplicial::{SimplexId, SimplicialComplex, SubdivisionMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("group acts on {degree} points but the complex has {vertices} vertices")]
    DegreeMismatch { degree: usize, vertices: usize },
    #[error("{found} vertex tables given for a group of order {order}")]
    TableCount { found: usize, order: usize },
    #[error("vertex table of element {0} is not a permutation of the vertices")]
    NotAPermutation(ElementId),
    #[error("the identity does not act trivially")]
    IdentityNotTrivial,
    #[error("vertex tables do not respect the product {0} · {1}")]
    NotAHomomorphism(ElementId, ElementId),
    #[error("element {element} maps simplex {simplex:?} onto a non-simplex")]
    NotAnAutomorphism {
        element: ElementId,
        simplex: Vec<u32>,
    },
    #[error("action is not regular: {0}")]
    Irregular(RegularityViolation),
    #[error("subdivision does not start from the acted complex")]
    SubdivisionMismatch,
}

/// A group acting on a complex. The group is abstract here: its permutation
/// degree need not match the complex, only its element enumeration is used.
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    complex: Arc<SimplicialComplex>,
    /// Flat `order × vertex_count` image table.
    vertex_tables: Vec<u32>,
    simplex_tables: Vec<OnceLock<Box<[SimplexId]>>>,
    orbit_of: Vec<u32>,
    orbits: Vec<Vec<SimplexId>>,
    counters: OpCounters,
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupAction")
            .field("group", &self.group)
            .field("complex", &self.complex)
            .field("orbits", &self.orbits.len())
            .finish()
    }
}

impl GroupAction {
    /// The action of a permutation group on the vertices of `complex`.
    pub fn from_permutation_group(
        group: Arc<FiniteGroup>,
        complex: Arc<SimplicialComplex>,
    ) -> Result<Self, ActionError> {
        if group.degree() != complex.vertex_count() {
            return Err(ActionError::DegreeMismatch {
                degree: group.degree(),
                vertices: complex.vertex_count(),
            });
        }
        let mut tables = Vec::with_capacity(group.order() * group.degree());
        for g in group.elements() {
            tables.extend_from_slice(group.permutation(g));
        }
        let action = Self::assemble(group, complex, tables);
        action.check_automorphisms()?;
        Ok(action.with_orbits())
    }

    /// An action given by one vertex table per group element, in
    /// enumeration order. Every table is validated.
    pub fn from_vertex_tables(
        group: Arc<FiniteGroup>,
        complex: Arc<SimplicialComplex>,
        tables: Vec<Vec<u32>>,
    ) -> Result<Self, ActionError> {
        if tables.len() != group.order() {
            return Err(ActionError::TableCount {
                found: tables.len(),
                order: group.order(),
            });
        }
        let n = complex.vertex_count();
        let mut seen = vec![false; n];
        for (i, table) in tables.iter().enumerate() {
            seen.iter_mut().for_each(|s| *s = false);
            let ok = table.len() == n
                && table
                    .iter()
                    .all(|&v| (v as usize) < n && !std::mem::replace(&mut seen[v as usize], true));
            if !ok {
                return Err(ActionError::NotAPermutation(ElementId(i as u32)));
            }
        }
        if tables[0].iter().enumerate().any(|(v, &w)| v as u32 != w) {
            return Err(ActionError::IdentityNotTrivial);
        }
        for g in group.elements() {
            for &s in group.generators() {
                let gs = group.mul(g, s);
                let (tg, ts, tgs) = (&tables[g.index()], &tables[s.index()], &tables[gs.index()]);
                if (0..n).any(|v| tg[ts[v] as usize] != tgs[v]) {
                    return Err(ActionError::NotAHomomorphism(g, s));
                }
            }
        }
        let action = Self::assemble(group, complex, tables.concat());
        action.check_automorphisms()?;
        Ok(action.with_orbits())
    }

    fn assemble(
        group: Arc<FiniteGroup>,
        complex: Arc<SimplicialComplex>,
        vertex_tables: Vec<u32>,
    ) -> Self {
        GroupAction {
            simplex_tables: (0..group.order()).map(|_| OnceLock::new()).collect(),
            group,
            complex,
            vertex_tables,
            orbit_of: Vec::new(),
            orbits: Vec::new(),
            counters: OpCounters::default(),
        }
    }

    /// Generators acting by automorphisms suffices for the whole group.
    fn check_automorphisms(&self) -> Result<(), ActionError> {
        for &s in self.group.generators() {
            for x in self.complex.ids() {
                if self.try_image(s, x).is_none() {
                    return Err(ActionError::NotAnAutomorphism {
                        element: s,
                        simplex: self.complex.vertices_of(x).to_vec(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Orbits by breadth-first search along the generators, numbered by
    /// their smallest member.
    fn with_orbits(mut self) -> Self {
        const UNSEEN: u32 = u32::MAX;
        let gens: Vec<&[SimplexId]> = self
            .group
            .generators()
            .iter()
            .map(|&s| self.simplex_table(s))
            .collect();
        let mut orbit_of = vec![UNSEEN; self.complex.len()];
        let mut orbits: Vec<Vec<SimplexId>> = Vec::new();
        for x in self.complex.ids() {
            if orbit_of[x.index()] != UNSEEN {
                continue;
            }
            let id = orbits.len() as u32;
            orbit_of[x.index()] = id;
            let mut members = vec![x];
            let mut head = 0;
            while head < members.len() {
                let cur = members[head];
                head += 1;
                for table in &gens {
                    let next = table[cur.index()];
                    if orbit_of[next.index()] == UNSEEN {
                        orbit_of[next.index()] = id;
                        members.push(next);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        self.orbit_of = orbit_of;
        self.orbits = orbits;
        self
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn vertex_table(&self, g: ElementId) -> &[u32] {
        let n = self.complex.vertex_count();
        &self.vertex_tables[g.index() * n..(g.index() + 1) * n]
    }

    #[inline]
    pub fn act_on_vertex(&self, g: ElementId, v: u32) -> u32 {
        self.vertex_tables[g.index() * self.complex.vertex_count() + v as usize]
    }

    /// Sorted images of the vertices of `x`.
    pub fn image_of(&self, g: ElementId, x: SimplexId) -> SmallVec<[u32; 8]> {
        let mut image: SmallVec<[u32; 8]> = self
            .complex
            .vertices_of(x)
            .iter()
            .map(|&v| self.act_on_vertex(g, v))
            .collect();
        image.sort_unstable();
        image
    }

    fn try_image(&self, g: ElementId, x: SimplexId) -> Option<SimplexId> {
        self.complex.find(&self.image_of(g, x))
    }

    /// `g · x`.
    pub fn act_on_simplex(&self, g: ElementId, x: SimplexId) -> SimplexId {
        if let Some(table) = self.simplex_tables[g.index()].get() {
            return table[x.index()];
        }
        self.try_image(g, x)
            .expect("validated actions map simplices to simplices")
    }

    /// The full simplex permutation of `g`, built on first use.
    pub fn simplex_table(&self, g: ElementId) -> &[SimplexId] {
        self.simplex_tables[g.index()].get_or_init(|| {
            self.complex
                .ids()
                .map(|x| self.try_image(g, x).expect("validated action"))
                .collect()
        })
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Orbit index of `x`; orbits are numbered by their smallest member.
    pub fn orbit_id(&self, x: SimplexId) -> usize {
        self.orbit_of[x.index()] as usize
    }

    /// All orbits, each sorted, in order of their smallest member.
    pub fn orbits(&self) -> &[Vec<SimplexId>] {
        &self.orbits
    }

    pub(crate) fn orbit_members(&self, x: SimplexId) -> &[SimplexId] {
        &self.orbits[self.orbit_id(x)]
    }

    pub fn same_orbit(&self, x: SimplexId, x2: SimplexId) -> bool {
        self.orbit_of[x.index()] == self.orbit_of[x2.index()]
    }

    /// The orbit `Gx`, sorted.
    pub fn orb(&self, x: SimplexId) -> Vec<SimplexId> {
        self.counters.bump_orb();
        self.orbit_members(x).to_vec()
    }

    /// The setwise stabilizer `G_x`.
    pub fn stab(&self, x: SimplexId) -> Subgroup {
        self.counters.bump_stab();
        self.stabilizer(x)
    }

    pub(crate) fn stabilizer(&self, x: SimplexId) -> Subgroup {
        let members = self
            .group
            .elements()
            .filter(|&g| self.act_on_simplex(g, x) == x)
            .collect();
        Subgroup::from_members_unchecked(self.group.order(), members)
    }

    /// The ι-minimal `g` with `g · x = x2`, or `None` when the two simplices
    /// lie in different orbits.
    pub fn trans(&self, x: SimplexId, x2: SimplexId) -> Option<ElementId> {
        self.counters.bump_trans();
        self.transporter(x, x2)
    }

    pub(crate) fn transporter(&self, x: SimplexId, x2: SimplexId) -> Option<ElementId> {
        if x == x2 {
            return Some(ElementId::IDENTITY);
        }
        if !self.same_orbit(x, x2) {
            return None;
        }
        self.group
            .elements()
            .find(|&g| self.act_on_simplex(g, x) == x2)
    }

    pub fn counters(&self) -> &OpCounters {
        &self.counters
    }

    /// Combined group and action invocation counts.
    pub fn op_counts(&self) -> OpCounts {
        self.group.op_counts().merge(self.counters.snapshot())
    }

    /// Generator names with their vertex tables, in generator order.
    pub fn generator_tables(&self) -> Vec<(String, Vec<u32>)> {
        self.group
            .generator_names()
            .iter()
            .zip(self.group.generators())
            .map(|(name, &s)| (name.clone(), self.vertex_table(s).to_vec()))
            .collect()
    }

    /// Checks regularity and reports the first violation.
    ///
    /// Checked in this order: stabilizers fix their simplices pointwise,
    /// vertices of each simplex lie in pairwise distinct orbits, and simplices
    /// with the same multiset of vertex orbits share an orbit. A stabilizer
    /// swapping two vertices also puts them in one orbit, so the pointwise
    /// test runs first to report the sharper failure.
    pub fn check_regularity(&self) -> RegularityReport {
        let violation = self
            .pointwise_violation()
            .or_else(|| self.distinct_orbit_violation())
            .or_else(|| self.orbit_closure_violation());
        RegularityReport { violation }
    }

    // Both of the first two conditions are orbit invariants, so testing the
    // smallest member of each orbit finds the canonical-order first failure.
    fn pointwise_violation(&self) -> Option<RegularityViolation> {
        for orbit in &self.orbits {
            let x = orbit[0];
            let verts = self.complex.vertices_of(x);
            for &g in self.stabilizer(x).members() {
                if verts.iter().any(|&v| self.act_on_vertex(g, v) != v) {
                    return Some(RegularityViolation {
                        condition: RegularityCondition::PointwiseFix,
                        simplices: vec![x],
                        elements: vec![g],
                    });
                }
            }
        }
        None
    }

    fn distinct_orbit_violation(&self) -> Option<RegularityViolation> {
        for orbit in &self.orbits {
            let x = orbit[0];
            let verts = self.complex.vertices_of(x);
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    if let Some(g) = self.transporter(SimplexId(u), SimplexId(v)) {
                        return Some(RegularityViolation {
                            condition: RegularityCondition::DistinctVertexOrbits,
                            simplices: vec![x, SimplexId(u), SimplexId(v)],
                            elements: vec![g],
                        });
                    }
                }
            }
        }
        None
    }

    /// Two simplices whose vertices match orbit by orbit must share an orbit.
    /// With distinct vertex orbits per simplex, such a matching exists
    /// exactly when the sorted vertex-orbit signatures agree.
    fn orbit_closure_violation(&self) -> Option<RegularityViolation> {
        let mut first: HashMap<SmallVec<[u32; 8]>, SimplexId> = HashMap::new();
        for x in self.complex.ids() {
            let signature = self.vertex_orbit_signature(x);
            match first.get(&signature) {
                Some(&x0) if !self.same_orbit(x0, x) => {
                    return Some(RegularityViolation {
                        condition: RegularityCondition::OrbitClosure,
                        simplices: vec![x0, x],
                        elements: Vec::new(),
                    });
                }
                Some(_) => {}
                None => {
                    first.insert(signature, x);
                }
            }
        }
        None
    }

    fn vertex_orbit_signature(&self, x: SimplexId) -> SmallVec<[u32; 8]> {
        let mut sig: SmallVec<[u32; 8]> = self
            .complex
            .vertices_of(x)
            .iter()
            .map(|&v| self.orbit_of[v as usize])
            .collect();
        sig.sort_unstable();
        sig
    }

    /// The orbit complex `X/G` and the orbit map. Quotient vertex `i` is
    /// the `i`-th vertex orbit in order of smallest member.
    pub fn quotient(&self) -> Result<Quotient, ActionError> {
        if let Some(v) = self.check_regularity().violation {
            return Err(ActionError::Irregular(v));
        }
        Ok(self.quotient_unchecked())
    }

    pub(crate) fn quotient_unchecked(&self) -> Quotient {
        let reps: Vec<SmallVec<[u32; 8]>> = self
            .orbits
            .iter()
            .map(|orbit| self.vertex_orbit_signature(orbit[0]))
            .collect();
        let vertex_orbits = self.complex.count_of_dim(0);
        let vertex_orbits = self.orbits[..]
            .iter()
            .take_while(|o| o[0].index() < vertex_orbits)
            .count();
        let y = SimplicialComplex::new(vertex_orbits, &reps)
            .expect("orbit signatures of a regular action form a complex");
        let class_of_orbit: Vec<SimplexId> = reps
            .iter()
            .map(|sig| y.find(sig).expect("every orbit has a quotient simplex"))
            .collect();
        let orbit_map = self
            .orbit_of
            .iter()
            .map(|&o| class_of_orbit[o as usize])
            .collect();
        Quotient {
            complex: Arc::new(y),
            orbit_map,
            class_of_orbit,
        }
    }
}

/// Quotient complex with the orbit map `p`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub complex: Arc<SimplicialComplex>,
    /// `p(x)` for every simplex of the acted complex.
    pub orbit_map: Vec<SimplexId>,
    /// Quotient simplex of each orbit, indexed like [`GroupAction::orbits`].
    pub class_of_orbit: Vec<SimplexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityCondition {
    /// A vertex orbit meets a simplex twice.
    DistinctVertexOrbits,
    /// A setwise stabilizer moves a vertex of its simplex.
    PointwiseFix,
    /// Two simplices with matching vertex orbits lie in different orbits.
    OrbitClosure,
}

impl fmt::Display for RegularityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegularityCondition::DistinctVertexOrbits => "distinct-vertex-orbits",
            RegularityCondition::PointwiseFix => "pointwise-fix",
            RegularityCondition::OrbitClosure => "orbit-closure",
        })
    }
}

/// A replayable regularity failure.
///
/// * pointwise-fix: `simplices = [x]`, `elements = [g]` with `g·x = x`
///   moving some vertex of `x`;
/// * distinct-vertex-orbits: `simplices = [x, u, v]` for vertices `u, v` of
///   `x`, `elements = [g]` with `g·u = v`;
/// * orbit-closure: `simplices = [x, x']`, no elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityViolation {
    pub condition: RegularityCondition,
    pub simplices: Vec<SimplexId>,
    pub elements: Vec<ElementId>,
}

impl fmt::Display for RegularityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at simplices [", self.condition)?;
        for (i, x) in self.simplices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", x.0)?;
        }
        f.write_str("]")?;
        if !self.elements.is_empty() {
            f.write_str(" with elements [")?;
            for (i, g) in self.elements.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", g.0)?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub violation: Option<RegularityViolation>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.violation.is_none()
    }
}

/// The action induced on a barycentric subdivision: `g` sends the barycenter
/// of `x` to the barycenter of `g·x`.
pub fn induced_action_on_subdivision(
    action: &GroupAction,
    sd: &SubdivisionMap,
) -> Result<GroupAction, ActionError> {
    if **sd.source() != **action.complex() {
        return Err(ActionError::SubdivisionMismatch);
    }
    let tables = action
        .group()
        .elements()
        .map(|g| action.simplex_table(g).iter().map(|x| x.0).collect())
        .collect();
    GroupAction::from_vertex_tables(Arc::clone(action.group()), Arc::clone(sd.target()), tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::barycentric_subdivision;

    fn bowtie() -> GroupAction {
        let x = SimplicialComplex::from_maximal(&[[0, 1, 2], [0, 3, 4]]).unwrap();
        let g = FiniteGroup::from_generators(
            5,
            vec![
                ("sigma".into(), vec![0, 2, 1, 4, 3]),
                ("tau".into(), vec![0, 3, 4, 1, 2]),
            ],
        )
        .unwrap();
        GroupAction::from_permutation_group(Arc::new(g), Arc::new(x)).unwrap()
    }

    fn rotation_cycle(n: u32, step: u32) -> GroupAction {
        let edges: Vec<[u32; 2]> = (0..n).map(|i| [i, (i + 1) % n]).collect();
        let x = SimplicialComplex::from_maximal(&edges).unwrap();
        let rot = (0..n).map(|v| (v + step) % n).collect();
        let g = FiniteGroup::from_generators(n as usize, vec![("r".into(), rot)]).unwrap();
        GroupAction::from_permutation_group(Arc::new(g), Arc::new(x)).unwrap()
    }

    fn id_of(a: &GroupAction, verts: &[u32]) -> SimplexId {
        a.complex().find(verts).unwrap()
    }

    #[test]
    fn acting_on_simplices() {
        let a = rotation_cycle(24, 4);
        let e = id_of(&a, &[0, 1]);
        assert_eq!(a.act_on_simplex(ElementId::IDENTITY, e), e);
        assert_eq!(a.act_on_simplex(ElementId(1), e), id_of(&a, &[4, 5]));
        let b = bowtie();
        assert_eq!(a.simplex_table(ElementId(2))[e.index()], id_of(&a, &[8, 9]));
        assert_eq!(b.act_on_simplex(ElementId(1), SimplexId(1)), SimplexId(2));
    }

    #[test]
    fn orbits_stabilizers_transporters() {
        let b = bowtie();
        assert_eq!(b.orb(SimplexId(0)), vec![SimplexId(0)]);
        assert_eq!(b.orb(SimplexId(1)).len(), 4);
        assert_eq!(b.stab(SimplexId(0)).order(), 4);
        assert_eq!(b.trans(SimplexId(0), SimplexId(1)), None);
        let a = rotation_cycle(24, 4);
        assert!(a.stab(SimplexId(0)).is_trivial());
        assert_eq!(a.trans(SimplexId(0), SimplexId(4)), Some(ElementId(1)));
        assert_eq!(
            a.trans(SimplexId(5), SimplexId(5)),
            Some(ElementId::IDENTITY)
        );
        let counts = a.op_counts();
        assert_eq!((counts.stab, counts.trans), (1, 2));
        for x in a.complex().ids() {
            assert_eq!(a.orb(x).len() * a.stab(x).order(), a.group().order());
        }
    }

    #[test]
    fn bowtie_fails_pointwise_fix() {
        let b = bowtie();
        let v = b.check_regularity().violation.unwrap();
        assert_eq!(v.condition, RegularityCondition::PointwiseFix);
        let edge = id_of(&b, &[1, 2]);
        assert_eq!((v.simplices[0], v.elements[0]), (edge, ElementId(1)));
        // Replay: sigma keeps the edge but swaps its ends.
        assert_eq!(b.act_on_simplex(v.elements[0], edge), edge);
        assert_eq!(b.act_on_vertex(v.elements[0], 1), 2);
    }

    #[test]
    fn free_hexagon_rotation_collapses_edges() {
        let a = rotation_cycle(6, 1);
        let v = a.check_regularity().violation.unwrap();
        assert_eq!(v.condition, RegularityCondition::DistinctVertexOrbits);
        assert!(a.quotient().is_err());
    }

    #[test]
    fn subdivided_hexagon_fails_orbit_closure() {
        let hex = rotation_cycle(6, 1);
        let sd = barycentric_subdivision(hex.complex());
        let a = induced_action_on_subdivision(&hex, &sd).unwrap();
        let v = a.check_regularity().violation.unwrap();
        assert_eq!(v.condition, RegularityCondition::OrbitClosure);
        let (x, x2) = (v.simplices[0], v.simplices[1]);
        assert_eq!(a.complex().vertices_of(x), &[0, 6]);
        assert_eq!(a.complex().vertices_of(x2), &[0, 7]);
        assert!(!a.same_orbit(x, x2));

        let twice = barycentric_subdivision(a.complex());
        let a2 = induced_action_on_subdivision(&a, &twice).unwrap();
        assert!(a2.check_regularity().is_regular());
        assert_eq!(a2.quotient().unwrap().complex.f_vector(), vec![4, 4]);
    }

    #[test]
    fn quotient_of_24_cycle() {
        let a = rotation_cycle(24, 4);
        let q = a.quotient().unwrap();
        assert_eq!(q.complex.f_vector(), vec![4, 4]);
        for x in a.complex().ids() {
            for g in a.group().elements() {
                let gx = a.act_on_simplex(g, x);
                assert_eq!(q.orbit_map[gx.index()], q.orbit_map[x.index()]);
            }
        }
        assert_eq!(q.orbit_map[id_of(&a, &[5]).index()], SimplexId(1));
    }

    #[test]
    fn subdivision_fixes_edge_barycenter() {
        let b = bowtie();
        let sd = barycentric_subdivision(b.complex());
        let a = induced_action_on_subdivision(&b, &sd).unwrap();
        let mid = id_of(&b, &[1, 2]).0;
        assert_eq!(a.act_on_vertex(ElementId(1), mid), mid);
        assert_eq!(a.group().order(), 4);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let x = Arc::new(SimplicialComplex::from_maximal(&[[0, 1], [1, 2]]).unwrap());
        let g =
            Arc::new(FiniteGroup::from_generators(3, vec![("s".into(), vec![2, 1, 0])]).unwrap());
        let ok = GroupAction::from_vertex_tables(
            Arc::clone(&g),
            Arc::clone(&x),
            vec![vec![0, 1, 2], vec![2, 1, 0]],
        );
        assert!(ok.is_ok());
        let swap01 = GroupAction::from_vertex_tables(
            Arc::clone(&g),
            Arc::clone(&x),
            vec![vec![0, 1, 2], vec![1, 0, 2]],
        );
        assert!(matches!(swap01, Err(ActionError::NotAnAutomorphism { .. })));
        let bad =
            GroupAction::from_vertex_tables(Arc::clone(&g), Arc::clone(&x), vec![vec![0, 1, 2]]);
        assert!(matches!(bad, Err(ActionError::TableCount { .. })));
        let rot =
            Arc::new(FiniteGroup::from_generators(3, vec![("r".into(), vec![1, 2, 0])]).unwrap());
        assert!(matches!(
            GroupAction::from_permutation_group(rot, x),
            Err(ActionError::NotAnAutomorphism { .. })
        ));
    }
}
