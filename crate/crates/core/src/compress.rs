//! Compression of a regular action into `(Y, S, T)`.

use std::collections::VecDeque;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{ActionError, GroupAction};
use crate::cog::{CompressedTriple, CompressionCertificate};
use crate::counters::OpCounts;
use crate::group::{ElementId, Subgroup};
use crate::simplicial::SimplexId;

/// How the lift of each orbit is chosen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftPolicy {
    /// Smallest member in canonical order.
    #[default]
    LexMin,
    /// Largest member in canonical order.
    LexMax,
    /// Vertex lifts grow along edges by breadth-first search; a higher
    /// simplex lifts to the member with the most facets already chosen as
    /// lifts, so more transfers are the identity.
    EquivariantBfs,
}

impl LiftPolicy {
    pub fn name(self) -> &'static str {
        match self {
            LiftPolicy::LexMin => "lex-min",
            LiftPolicy::LexMax => "lex-max",
            LiftPolicy::EquivariantBfs => "equivariant-bfs",
        }
    }
}

impl FromStr for LiftPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex-min" => Ok(LiftPolicy::LexMin),
            "lex-max" => Ok(LiftPolicy::LexMax),
            "equivariant-bfs" => Ok(LiftPolicy::EquivariantBfs),
            other => Err(format!("unknown lift policy `{other}`")),
        }
    }
}

/// Subroutine calls made while compressing one dimension.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DimensionStats {
    pub dimension: usize,
    pub representatives: usize,
    pub ops: OpCounts,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CompressStats {
    pub per_dimension: Vec<DimensionStats>,
    pub identity_transfers: usize,
}

impl CompressStats {
    pub fn total(&self) -> OpCounts {
        self.per_dimension
            .iter()
            .fold(OpCounts::default(), |acc, d| acc.merge(d.ops))
    }
}

pub fn compress(
    action: &GroupAction,
) -> Result<(CompressedTriple, CompressionCertificate), ActionError> {
    compress_with_policy(action, LiftPolicy::LexMin)
}

pub fn compress_with_policy(
    action: &GroupAction,
    policy: LiftPolicy,
) -> Result<(CompressedTriple, CompressionCertificate), ActionError> {
    compress_with_stats(action, policy).map(|(t, c, _)| (t, c))
}

struct Piece {
    y: SimplexId,
    stabilizer: Subgroup,
    transfers: Vec<(SimplexId, ElementId)>,
}

/// Compresses dimension by dimension. Within a dimension the lifts are
/// claimed by a sequential sweep, then stabilizers and transfers of distinct
/// orbits are computed in parallel and merged in orbit order.
pub fn compress_with_stats(
    action: &GroupAction,
    policy: LiftPolicy,
) -> Result<(CompressedTriple, CompressionCertificate, CompressStats), ActionError> {
    if let Some(v) = action.check_regularity().violation {
        return Err(ActionError::Irregular(v));
    }
    let x = action.complex();
    let q = action.quotient_unchecked();
    let y_complex = Arc::clone(&q.complex);
    let orbit_map = q.orbit_map;

    let mut lift = vec![SimplexId(u32::MAX); y_complex.len()];
    let mut stabilizers: Vec<Option<Subgroup>> = vec![None; y_complex.len()];
    let mut transfers: Vec<Vec<ElementId>> = vec![Vec::new(); y_complex.len()];
    let mut stats = CompressStats::default();

    let dims = if x.is_empty() { 0 } else { x.dimension() + 1 };
    for d in 0..dims {
        let reps = claim_lifts(action, &orbit_map, &lift, d, policy);
        for &(y, rep) in &reps {
            lift[y.index()] = rep;
        }

        let before = action.op_counts();
        let lift_ref = &lift;
        let orbit_map_ref = &orbit_map;
        let pieces: Vec<Piece> = reps
            .par_iter()
            .map(|&(y, rep)| {
                let stabilizer = action.stab(rep);
                let orbit = action.orb(rep);
                debug_assert!(orbit.iter().all(|&m| orbit_map_ref[m.index()] == y));
                let transfers = x
                    .faces_codim1(rep)
                    .iter()
                    .map(|&z| {
                        let child = orbit_map_ref[z.index()];
                        let g = action
                            .trans(z, lift_ref[child.index()])
                            .expect("a face and the lift of its class share an orbit");
                        (child, g)
                    })
                    .collect();
                Piece {
                    y,
                    stabilizer,
                    transfers,
                }
            })
            .collect();
        let ops = action.op_counts() - before;
        stats.per_dimension.push(DimensionStats {
            dimension: d,
            representatives: reps.len(),
            ops,
        });

        for piece in pieces {
            let faces = y_complex.faces_codim1(piece.y);
            let mut row = vec![ElementId::IDENTITY; faces.len()];
            for (child, g) in piece.transfers {
                let pos = faces
                    .iter()
                    .position(|&f| f == child)
                    .expect("faces of a lift map onto faces of its class");
                row[pos] = g;
            }
            stats.identity_transfers += row.iter().filter(|g| g.is_identity()).count();
            stabilizers[piece.y.index()] = Some(piece.stabilizer);
            transfers[piece.y.index()] = row;
        }
    }

    let stabilizers = stabilizers
        .into_iter()
        .map(|s| s.expect("every class has a lift"))
        .collect();
    let triple = CompressedTriple::new(
        Arc::clone(action.group()),
        y_complex,
        stabilizers,
        transfers,
    )
    .expect("compression output is well formed");
    let cert = CompressionCertificate { orbit_map, lift };
    Ok((triple, cert, stats))
}

/// Chooses one lift per orbit of `d`-simplices, returned in order of the
/// orbits' smallest members.
fn claim_lifts(
    action: &GroupAction,
    orbit_map: &[SimplexId],
    lift: &[SimplexId],
    d: usize,
    policy: LiftPolicy,
) -> Vec<(SimplexId, SimplexId)> {
    let x = action.complex();
    let range = x.ids_of_dim(d);
    let orbits: Vec<&Vec<SimplexId>> = action
        .orbits()
        .iter()
        .filter(|o| range.contains(&o[0].0))
        .collect();
    match policy {
        LiftPolicy::LexMin => orbits
            .iter()
            .map(|o| (orbit_map[o[0].index()], o[0]))
            .collect(),
        LiftPolicy::LexMax => orbits
            .iter()
            .map(|o| {
                (
                    orbit_map[o[0].index()],
                    *o.last().expect("orbits are nonempty"),
                )
            })
            .collect(),
        LiftPolicy::EquivariantBfs if d == 0 => {
            let mut chosen: Vec<Option<SimplexId>> = vec![None; action.orbit_count()];
            let mut seen = vec![false; x.vertex_count()];
            for start in range.clone() {
                if seen[start as usize] {
                    continue;
                }
                seen[start as usize] = true;
                let mut queue = VecDeque::from([start]);
                while let Some(v) = queue.pop_front() {
                    let slot = &mut chosen[action.orbit_id(SimplexId(v))];
                    if slot.is_none() {
                        *slot = Some(SimplexId(v));
                    }
                    for &e in x.cofaces_codim1(SimplexId(v)) {
                        for &w in x.vertices_of(e) {
                            if !seen[w as usize] {
                                seen[w as usize] = true;
                                queue.push_back(w);
                            }
                        }
                    }
                }
            }
            orbits
                .iter()
                .map(|o| {
                    let rep = chosen[action.orbit_id(o[0])].expect("every vertex is reached");
                    (orbit_map[o[0].index()], rep)
                })
                .collect()
        }
        LiftPolicy::EquivariantBfs => orbits
            .iter()
            .map(|o| {
                let score = |m: SimplexId| {
                    x.faces_codim1(m)
                        .iter()
                        .filter(|&&z| lift[orbit_map[z.index()].index()] == z)
                        .count()
                };
                // Members are sorted, so the first maximum is the lex-min tie break.
                let mut best = o[0];
                let mut best_score = score(best);
                for &m in &o[1..] {
                    let s = score(m);
                    if s > best_score {
                        best = m;
                        best_score = s;
                    }
                }
                (orbit_map[o[0].index()], best)
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cog::{validate_against_action, validate_triple};
    use crate::group::FiniteGroup;
    use crate::simplicial::SimplicialComplex;

    fn rotation_cycle(n: u32, step: u32) -> GroupAction {
        let edges: Vec<[u32; 2]> = (0..n).map(|i| [i, (i + 1) % n]).collect();
        let x = SimplicialComplex::from_maximal(&edges).unwrap();
        let rot = (0..n).map(|v| (v + step) % n).collect();
        let g = FiniteGroup::from_generators(n as usize, vec![("r".into(), rot)]).unwrap();
        GroupAction::from_permutation_group(Arc::new(g), Arc::new(x)).unwrap()
    }

    #[test]
    fn trivial_group_keeps_the_complex() {
        let x = Arc::new(SimplicialComplex::from_maximal(&[[0, 1, 2]]).unwrap());
        let g = Arc::new(FiniteGroup::trivial(3));
        let a = GroupAction::from_permutation_group(g, Arc::clone(&x)).unwrap();
        let (t, cert) = compress(&a).unwrap();
        assert_eq!(**t.quotient(), *x);
        assert!(t.stabilizers().iter().all(Subgroup::is_trivial));
        assert!(t.transfer_entries().all(|(_, _, g)| g.is_identity()));
        assert_eq!(cert.lift, x.ids().collect::<Vec<_>>());
    }

    #[test]
    fn cycle_compresses_to_square() {
        let a = rotation_cycle(24, 4);
        for policy in [
            LiftPolicy::LexMin,
            LiftPolicy::LexMax,
            LiftPolicy::EquivariantBfs,
        ] {
            let (t, cert, stats) = compress_with_stats(&a, policy).unwrap();
            assert_eq!(t.quotient().f_vector(), vec![4, 4]);
            assert_eq!(t.total_index(), 48);
            assert!(validate_triple(&t).is_valid());
            assert!(validate_against_action(&t, &cert, &a).is_valid());
            assert_eq!(stats.per_dimension[1].ops.trans, 8);
            assert_eq!(stats.per_dimension[0].ops.stab, 4);
        }
        let (lexmax, _) = compress_with_policy(&a, LiftPolicy::LexMax).unwrap();
        let (lexmin, _) = compress(&a).unwrap();
        assert_eq!(lexmin.quotient(), lexmax.quotient());
        let (_, _, bfs) = compress_with_stats(&a, LiftPolicy::EquivariantBfs).unwrap();
        let (_, _, min) = compress_with_stats(&a, LiftPolicy::LexMin).unwrap();
        assert!(bfs.identity_transfers >= min.identity_transfers);
    }

    #[test]
    fn irregular_actions_are_refused() {
        assert!(matches!(
            compress(&rotation_cycle(6, 1)),
            Err(ActionError::Irregular(_))
        ));
    }

    #[test]
    fn corrupted_lift_is_caught() {
        let a = rotation_cycle(24, 4);
        let (t, mut cert) = compress(&a).unwrap();
        // Move the lift of vertex class 0 to another orbit member.
        cert.lift[0] = SimplexId(4);
        let report = validate_against_action(&t, &cert, &a);
        assert!(report.violations.iter().any(
            |v| matches!(v, crate::cog::Violation::Lift { simplex } if simplex.0 == 0)
                || matches!(v, crate::cog::Violation::TransferMismatch { .. })
        ));
    }
}
