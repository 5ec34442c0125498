//! Built-in example actions.

use std::sync::Arc;

use cogcomp_core::{
    barycentric_subdivision, induced_action_on_subdivision, FiniteGroup, GroupAction,
    SimplicialComplex,
};

pub fn action(vertices: usize, maximal: &[Vec<u32>], gens: Vec<(&str, Vec<u32>)>) -> GroupAction {
    let x = SimplicialComplex::new(vertices, maximal).expect("fixture complexes are valid");
    let g = FiniteGroup::from_generators(
        vertices,
        gens.into_iter().map(|(n, p)| (n.to_string(), p)).collect(),
    )
    .expect("fixture generators are permutations");
    GroupAction::from_permutation_group(Arc::new(g), Arc::new(x))
        .expect("fixture generators act simplicially")
}

/// The induced action after `times` barycentric subdivisions.
pub fn subdivide(a: &GroupAction, times: usize) -> GroupAction {
    let mut cur: Option<GroupAction> = None;
    for _ in 0..times {
        let base = cur.as_ref().unwrap_or(a);
        let sd = barycentric_subdivision(base.complex());
        cur = Some(induced_action_on_subdivision(base, &sd).expect("subdivision of own complex"));
    }
    cur.unwrap_or_else(|| {
        let tables = a
            .group()
            .elements()
            .map(|g| a.vertex_table(g).to_vec())
            .collect();
        GroupAction::from_vertex_tables(Arc::clone(a.group()), Arc::clone(a.complex()), tables)
            .expect("copy of a valid action")
    })
}

fn cycle_edges(n: u32) -> Vec<Vec<u32>> {
    (0..n).map(|i| vec![i, (i + 1) % n]).collect()
}

pub fn trivial_triangle() -> GroupAction {
    action(3, &[vec![0, 1, 2]], vec![])
}

/// C3 rotating the full 2-simplex; irregular until subdivided.
pub fn rotated_triangle() -> GroupAction {
    action(3, &[vec![0, 1, 2]], vec![("r", vec![1, 2, 0])])
}

/// C3 on the once-subdivided triangle: the rotation of a quotient that is
/// itself a subdivided triangle. Fails orbit closure.
pub fn rotated_subdivided_triangle() -> GroupAction {
    subdivide(&rotated_triangle(), 1)
}

/// C3 on the twice-subdivided triangle (regular).
pub fn c3_subdivided_triangle() -> GroupAction {
    subdivide(&rotated_triangle(), 2)
}

/// Klein four on two triangles sharing the vertex 0, reflecting each
/// triangle and swapping them.
pub fn klein_bowtie() -> GroupAction {
    action(
        5,
        &[vec![0, 1, 2], vec![0, 3, 4]],
        vec![("sigma", vec![0, 2, 1, 4, 3]), ("tau", vec![0, 3, 4, 1, 2])],
    )
}

pub fn klein_bowtie_sd2() -> GroupAction {
    subdivide(&klein_bowtie(), 2)
}

/// C_m on a `4m`-cycle by rotation through 4 vertices: the twice
/// subdivided `m`-gon with its rotation.
pub fn cyclic_cycle(m: u32) -> GroupAction {
    let n = 4 * m;
    let rot = (0..n).map(|v| (v + 4) % n).collect();
    action(n as usize, &cycle_edges(n), vec![("r", rot)])
}

/// D_m on a `4m`-cycle: rotation through 4 vertices and `v ↦ -v`.
pub fn dihedral_cycle(m: u32) -> GroupAction {
    let n = 4 * m;
    let rot = (0..n).map(|v| (v + 4) % n).collect();
    let refl = (0..n).map(|v| (n - v) % n).collect();
    action(n as usize, &cycle_edges(n), vec![("r", rot), ("s", refl)])
}

/// C_k rotating the cone over a `4k`-cycle; the apex is fixed.
pub fn cone_rotation(k: u32) -> GroupAction {
    let n = 4 * k;
    let apex = n;
    let triangles: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n, apex]).collect();
    let rot = (0..=n)
        .map(|v| if v == apex { apex } else { (v + 4) % n })
        .collect();
    action(n as usize + 1, &triangles, vec![("r", rot)])
}

pub fn hexagon_c6() -> GroupAction {
    action(
        6,
        &cycle_edges(6),
        vec![("r", (0..6).map(|v| (v + 1) % 6).collect())],
    )
}

pub fn hexagon_c6_sd1() -> GroupAction {
    subdivide(&hexagon_c6(), 1)
}

/// Every fixture that acceptance treats as regular, by name.
pub fn regular_corpus() -> Vec<(String, GroupAction)> {
    let mut out = vec![
        ("trivial-triangle".to_string(), trivial_triangle()),
        (
            "c3-subdivided-triangle".to_string(),
            c3_subdivided_triangle(),
        ),
        ("klein-bowtie-sd2".to_string(), klein_bowtie_sd2()),
    ];
    for m in [2, 3, 4, 6, 8, 12] {
        out.push((format!("cyclic-{m}"), cyclic_cycle(m)));
    }
    for m in [3, 4, 6] {
        out.push((format!("dihedral-{m}"), dihedral_cycle(m)));
    }
    out
}

/// Regular actions of groups of order at most 6 on complexes with at most
/// 20 simplices.
pub fn micro_corpus() -> Vec<(String, GroupAction)> {
    vec![
        ("trivial-triangle".to_string(), trivial_triangle()),
        ("c2-octagon".to_string(), cyclic_cycle(2)),
        ("d2-octagon".to_string(), dihedral_cycle(2)),
        (
            "d3-hexagon".to_string(),
            action(
                6,
                &cycle_edges(6),
                vec![
                    ("r", (0..6).map(|v| (v + 2) % 6).collect()),
                    ("s", (0..6).map(|v| (6 - v) % 6).collect()),
                ],
            ),
        ),
        (
            "c3-three-edges".to_string(),
            action(
                6,
                &[vec![0, 1], vec![2, 3], vec![4, 5]],
                vec![("r", vec![2, 3, 4, 5, 0, 1])],
            ),
        ),
        (
            "c2-two-triangles".to_string(),
            action(
                6,
                &[vec![0, 1, 2], vec![3, 4, 5]],
                vec![("s", vec![3, 4, 5, 0, 1, 2])],
            ),
        ),
        (
            "c2-subdivided-edge".to_string(),
            action(3, &[vec![0, 2], vec![1, 2]], vec![("s", vec![1, 0, 2])]),
        ),
    ]
}

/// Irregular actions with the condition each one violates first.
pub fn irregular_corpus() -> Vec<(String, GroupAction)> {
    vec![
        ("klein-bowtie".to_string(), klein_bowtie()),
        ("hexagon-c6-sd1".to_string(), hexagon_c6_sd1()),
        (
            "rotated-subdivided-triangle".to_string(),
            rotated_subdivided_triangle(),
        ),
    ]
}
