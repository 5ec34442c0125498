#![allow(dead_code)]

use std::sync::Arc;

use cogcomp_core::{
    barycentric_subdivision, induced_action_on_subdivision, FiniteGroup, GroupAction,
    SimplicialComplex,
};

pub fn action(vertices: usize, maximal: &[Vec<u32>], gens: Vec<(&str, Vec<u32>)>) -> GroupAction {
    let x = SimplicialComplex::new(vertices, maximal).unwrap();
    let g = FiniteGroup::from_generators(
        vertices,
        gens.into_iter().map(|(n, p)| (n.to_string(), p)).collect(),
    )
    .unwrap();
    GroupAction::from_permutation_group(Arc::new(g), Arc::new(x)).unwrap()
}

pub fn cycle_edges(n: u32) -> Vec<Vec<u32>> {
    (0..n).map(|i| vec![i, (i + 1) % n]).collect()
}

/// Rotation by `step` on an `n`-cycle.
pub fn rotation(n: u32, step: u32) -> GroupAction {
    let rot = (0..n).map(|v| (v + step) % n).collect();
    action(n as usize, &cycle_edges(n), vec![("r", rot)])
}

/// Rotation by 4 and the reflection `v ↦ -v` on a `4m`-cycle.
pub fn dihedral(m: u32) -> GroupAction {
    let n = 4 * m;
    let rot = (0..n).map(|v| (v + 4) % n).collect();
    let refl = (0..n).map(|v| (n - v) % n).collect();
    action(n as usize, &cycle_edges(n), vec![("r", rot), ("s", refl)])
}

pub fn bowtie() -> GroupAction {
    action(
        5,
        &[vec![0, 1, 2], vec![0, 3, 4]],
        vec![("sigma", vec![0, 2, 1, 4, 3]), ("tau", vec![0, 3, 4, 1, 2])],
    )
}

pub fn triangle_rotation() -> GroupAction {
    action(3, &[vec![0, 1, 2]], vec![("r", vec![1, 2, 0])])
}

/// Three disjoint triangles permuted cyclically.
pub fn three_triangles() -> GroupAction {
    action(
        9,
        &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]],
        vec![("r", vec![3, 4, 5, 6, 7, 8, 0, 1, 2])],
    )
}

pub fn subdivide(a: &GroupAction, times: usize) -> GroupAction {
    let mut cur = induced_action_on_subdivision(a, &barycentric_subdivision(a.complex())).unwrap();
    for _ in 1..times {
        cur = induced_action_on_subdivision(&cur, &barycentric_subdivision(cur.complex())).unwrap();
    }
    cur
}
