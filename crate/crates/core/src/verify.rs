//! Exact checks that a reconstruction is equivariantly isomorphic to the
//! complex it was compressed from.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::action::GroupAction;
use crate::cog::CompressionCertificate;
use crate::group::Subgroup;
use crate::reconstruct::{recovered_action, Label, ReconstructedComplex};
use crate::simplicial::{SimplexId, SimplicialComplex};

/// Default simplex count limit, per complex, for the isomorphism search.
pub const DEFAULT_ISOMORPHISM_BOUND: usize = 300;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("inputs do not match: {0}")]
    InputMismatch(String),
    #[error("complex with {size} simplices exceeds the search bound {bound}")]
    TooLarge { size: usize, bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    WellDefined,
    Injective,
    Surjective,
    Equivariant,
    Simplicial,
    FiberPreserving,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::WellDefined,
        Property::Injective,
        Property::Surjective,
        Property::Equivariant,
        Property::Simplicial,
        Property::FiberPreserving,
    ];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::WellDefined => "well-defined",
            Property::Injective => "injective",
            Property::Surjective => "surjective",
            Property::Equivariant => "equivariant",
            Property::Simplicial => "simplicial",
            Property::FiberPreserving => "fiber-preserving",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: Property,
    pub passed: bool,
    /// Number of individual checks made.
    pub checks: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub passed: bool,
    pub results: Vec<PropertyResult>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn result(&self, property: Property) -> &PropertyResult {
        self.results
            .iter()
            .find(|r| r.property == property)
            .expect("all properties are reported")
    }
}

/// Builds `s(y, g) = g · ℓ(y)` from the reconstruction to the original
/// complex and checks every property of an equivariant isomorphism over
/// the quotient, exhaustively.
pub fn verify_roundtrip(
    action: &GroupAction,
    cert: &CompressionCertificate,
    z: &ReconstructedComplex,
) -> Result<EquivarianceReport, VerifyError> {
    let group = action.group();
    let x = action.complex();
    let triple = z.triple();
    let y_complex = triple.quotient();
    if !group.same_group(triple.group()) {
        return Err(VerifyError::InputMismatch(
            "the reconstruction uses a different group".into(),
        ));
    }
    if cert.orbit_map.len() != x.len() || cert.lift.len() != y_complex.len() {
        return Err(VerifyError::InputMismatch(
            "certificate does not fit the complex and the quotient".into(),
        ));
    }
    if cert.lift.iter().any(|l| l.index() >= x.len())
        || cert.orbit_map.iter().any(|y| y.index() >= y_complex.len())
    {
        return Err(VerifyError::InputMismatch(
            "certificate refers to missing simplices".into(),
        ));
    }
    let zc = z.complex();
    let k = group.order() as u64;
    let s: Vec<SimplexId> = zc
        .ids()
        .map(|zi| {
            let label = z.label(zi);
            action.act_on_simplex(label.g, cert.lift(label.y))
        })
        .collect();

    let mut results = Vec::with_capacity(6);

    let ys: Vec<SimplexId> = y_complex.ids().collect();
    let bad = ys.par_iter().find_map_first(|&y| {
        let lift = cert.lift(y);
        group
            .elements()
            .find_map(|g| {
                let named = z.simplex_of(Label {
                    y,
                    g: group.min_in_coset(triple.stabilizer(y), g),
                })?;
                (s[named.index()] != action.act_on_simplex(g, lift))
                    .then(|| format!("y = {}, representative {} lands elsewhere", y.0, g.0))
            })
            .or_else(|| {
                // Every coset must be present.
                group.elements().find_map(|g| {
                    let rep = group.min_in_coset(triple.stabilizer(y), g);
                    z.simplex_of(Label { y, g: rep })
                        .is_none()
                        .then(|| format!("coset ({}, {}) is missing", y.0, rep.0))
                })
            })
    });
    results.push(result(Property::WellDefined, k * ys.len() as u64, bad));

    let mut preimage: Vec<Option<SimplexId>> = vec![None; x.len()];
    let mut collision = None;
    for (zi, &xi) in s.iter().enumerate() {
        if let Some(prev) = preimage[xi.index()] {
            if collision.is_none() {
                collision = Some(format!(
                    "{} and {} both map to {}",
                    z.label(prev),
                    z.label(SimplexId(zi as u32)),
                    xi.0
                ));
            }
        } else {
            preimage[xi.index()] = Some(SimplexId(zi as u32));
        }
    }
    results.push(result(Property::Injective, s.len() as u64, collision));

    let missing = preimage.iter().position(Option::is_none).map(|xi| {
        format!(
            "simplex {:?} has no preimage",
            x.vertices_of(SimplexId(xi as u32))
        )
    });
    results.push(result(Property::Surjective, x.len() as u64, missing));

    let zs: Vec<SimplexId> = zc.ids().collect();
    let bad = zs.par_iter().find_map_first(|&zi| {
        group.elements().find_map(|h| {
            (s[z.act(h, zi).index()] != action.act_on_simplex(h, s[zi.index()]))
                .then(|| format!("h = {}, simplex {}", h.0, z.label(zi)))
        })
    });
    results.push(result(Property::Equivariant, k * zs.len() as u64, bad));

    let bad = zs.par_iter().find_map_first(|&zi| {
        let image = s[zi.index()];
        if x.dim_of(image) != zc.dim_of(zi) {
            return Some(format!("{} changes dimension", z.label(zi)));
        }
        let mut verts: Vec<u32> = zc
            .vertices_of(zi)
            .iter()
            .map(|&v| s[v as usize].0)
            .collect();
        verts.sort_unstable();
        if verts != x.vertices_of(image) {
            return Some(format!(
                "vertices of {} do not map onto its image",
                z.label(zi)
            ));
        }
        zc.faces_codim1(zi).iter().find_map(|&f| {
            (!x.faces_codim1(image).contains(&s[f.index()])).then(|| {
                format!(
                    "face pair ({}, {}) is not preserved",
                    z.label(zi),
                    z.label(f)
                )
            })
        })
    });
    results.push(result(Property::Simplicial, zs.len() as u64, bad));

    let bad = zs.iter().find_map(|&zi| {
        let label = z.label(zi);
        (cert.p(s[zi.index()]) != label.y)
            .then(|| format!("{} maps outside the fiber of {}", label, label.y.0))
    });
    results.push(result(Property::FiberPreserving, zs.len() as u64, bad));

    Ok(EquivarianceReport {
        passed: results.iter().all(|r| r.passed),
        results,
    })
}

fn result(property: Property, checks: u64, counterexample: Option<String>) -> PropertyResult {
    PropertyResult {
        property,
        passed: counterexample.is_none(),
        checks,
        counterexample,
    }
}

/// Searches for an equivariant simplicial isomorphism between two actions
/// of the same group, returned as a vertex map from `a` to `b`.
pub fn find_equivariant_isomorphism(
    a: &GroupAction,
    b: &GroupAction,
) -> Result<Option<Vec<u32>>, VerifyError> {
    find_equivariant_isomorphism_bounded(a, b, DEFAULT_ISOMORPHISM_BOUND)
}

pub fn find_equivariant_isomorphism_bounded(
    a: &GroupAction,
    b: &GroupAction,
    bound: usize,
) -> Result<Option<Vec<u32>>, VerifyError> {
    for size in [a.complex().len(), b.complex().len()] {
        if size > bound {
            return Err(VerifyError::TooLarge { size, bound });
        }
    }
    if !a.group().same_group(b.group()) {
        return Err(VerifyError::InputMismatch(
            "the actions use different groups".into(),
        ));
    }
    let (xa, xb) = (a.complex(), b.complex());
    if xa.f_vector() != xb.f_vector() || xa.vertex_count() != xb.vertex_count() {
        return Ok(None);
    }
    Ok(Search::new(a, b).run())
}

struct Search<'a> {
    a: &'a GroupAction,
    b: &'a GroupAction,
    /// Vertex orbit representatives of `a`, in search order.
    order: Vec<u32>,
    /// Simplices of `a` whose last vertex orbit is assigned at each step.
    checks: Vec<Vec<SimplexId>>,
    stab_a: HashMap<u32, Subgroup>,
    stab_b: Vec<Subgroup>,
    profile_a: Vec<Vec<usize>>,
    profile_b: Vec<Vec<usize>>,
    map: Vec<Option<u32>>,
    used_b: Vec<bool>,
}

fn star_profile(x: &SimplicialComplex) -> Vec<Vec<usize>> {
    let mut profile = vec![vec![0; x.dimension() + 1]; x.vertex_count()];
    for s in x.ids() {
        let d = x.dim_of(s);
        for &v in x.vertices_of(s) {
            profile[v as usize][d] += 1;
        }
    }
    profile
}

impl<'a> Search<'a> {
    fn new(a: &'a GroupAction, b: &'a GroupAction) -> Self {
        let xa = a.complex();
        let nv = xa.vertex_count();
        // Vertex orbits visited breadth-first along edges so that constraints
        // bite as early as possible.
        let mut order = Vec::new();
        let mut seen_orbit = vec![false; a.orbit_count()];
        let mut seen_vertex = vec![false; nv];
        for start in 0..nv as u32 {
            if seen_vertex[start as usize] {
                continue;
            }
            seen_vertex[start as usize] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let o = a.orbit_id(SimplexId(v));
                if !seen_orbit[o] {
                    seen_orbit[o] = true;
                    order.push(a.orbits()[o][0].0);
                }
                for &e in xa.cofaces_codim1(SimplexId(v)) {
                    for &w in xa.vertices_of(e) {
                        if !seen_vertex[w as usize] {
                            seen_vertex[w as usize] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        let mut step_of_orbit = vec![usize::MAX; a.orbit_count()];
        for (i, &r) in order.iter().enumerate() {
            step_of_orbit[a.orbit_id(SimplexId(r))] = i;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for s in xa.ids() {
            let last = xa
                .vertices_of(s)
                .iter()
                .map(|&v| step_of_orbit[a.orbit_id(SimplexId(v))])
                .max()
                .expect("simplices are nonempty");
            checks[last].push(s);
        }
        let stab_a = order
            .iter()
            .map(|&r| (r, a.stabilizer(SimplexId(r))))
            .collect();
        let xb = b.complex();
        let stab_b = (0..xb.vertex_count() as u32)
            .map(|v| b.stabilizer(SimplexId(v)))
            .collect();
        Search {
            a,
            b,
            order,
            checks,
            stab_a,
            stab_b,
            profile_a: star_profile(xa),
            profile_b: star_profile(xb),
            map: vec![None; nv],
            used_b: vec![false; xb.vertex_count()],
        }
    }

    fn run(mut self) -> Option<Vec<u32>> {
        if self.extend(0) {
            Some(
                self.map
                    .into_iter()
                    .map(|v| v.expect("complete map"))
                    .collect(),
            )
        } else {
            None
        }
    }

    fn extend(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let r = self.order[step];
        let group = self.a.group();
        for c in 0..self.b.complex().vertex_count() as u32 {
            if self.used_b[c as usize]
                || self.profile_a[r as usize] != self.profile_b[c as usize]
                || self.stab_a[&r] != self.stab_b[c as usize]
            {
                continue;
            }
            let mut assigned = Vec::new();
            for g in group.elements() {
                let (from, to) = (self.a.act_on_vertex(g, r), self.b.act_on_vertex(g, c));
                if self.map[from as usize].is_none() {
                    self.map[from as usize] = Some(to);
                    self.used_b[to as usize] = true;
                    assigned.push(from);
                }
            }
            if self.consistent(step) && self.extend(step + 1) {
                return true;
            }
            for v in assigned {
                let to = self.map[v as usize].take().expect("assigned above");
                self.used_b[to as usize] = false;
            }
        }
        false
    }

    fn consistent(&self, step: usize) -> bool {
        let (xa, xb) = (self.a.complex(), self.b.complex());
        self.checks[step].iter().all(|&s| {
            let mut image: Vec<u32> = xa
                .vertices_of(s)
                .iter()
                .map(|&v| self.map[v as usize].expect("assigned"))
                .collect();
            image.sort_unstable();
            xb.find(&image).is_some()
        })
    }
}

/// Rebuilds the quotient of the recovered action and compares it with `y`
/// under the relabeling given by the label projection.
pub fn verify_quotient_identity(z: &ReconstructedComplex, y: &SimplicialComplex) -> bool {
    let Ok(action) = recovered_action(z) else {
        return false;
    };
    let Ok(q) = action.quotient() else {
        return false;
    };
    if q.complex.len() != y.len() || q.complex.vertex_count() != y.vertex_count() {
        return false;
    }
    let mut relabel: Vec<Option<SimplexId>> = vec![None; q.complex.len()];
    for zi in z.complex().ids() {
        let class = q.orbit_map[zi.index()];
        let target = z.label(zi).y;
        if target.index() >= y.len() {
            return false;
        }
        match relabel[class.index()] {
            None => relabel[class.index()] = Some(target),
            Some(t) if t != target => return false,
            Some(_) => {}
        }
    }
    let relabel: Vec<SimplexId> = match relabel.into_iter().collect::<Option<Vec<_>>>() {
        Some(r) => r,
        None => return false,
    };
    let mut hit = vec![false; y.len()];
    for &t in &relabel {
        if std::mem::replace(&mut hit[t.index()], true) {
            return false;
        }
    }
    q.complex.ids().all(|c| {
        let mut verts: Vec<u32> = q
            .complex
            .vertices_of(c)
            .iter()
            .map(|&v| relabel[v as usize].0)
            .collect();
        verts.sort_unstable();
        verts == y.vertices_of(relabel[c.index()])
    })
}
