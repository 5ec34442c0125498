//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use cogcomp_cli::bench::{self, BenchConfig, Family};
use cogcomp_cli::fixtures;
use cogcomp_cli::io::{to_json, ActionDocument};
use cogcomp_core::compress::compress_with_stats;
use cogcomp_core::{
    compress, compress_with_policy, find_equivariant_isomorphism, reconstruct,
    reconstruct_with_stats, recovered_action, validate_triple, CompressedTriple, ElementId,
    GroupAction, LiftPolicy, RegularityCondition, SimplexId,
};

type Verdict = Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Verdict + 'a>;

fn cogcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cogcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_action(dir: &Path, name: &str, a: &GroupAction) -> PathBuf {
    let path = dir.join(format!("{name}.action.json"));
    std::fs::write(&path, to_json(&ActionDocument::from_action(a))).unwrap();
    path
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Roundtrip through the binary on every regular fixture, single worker.
fn roundtrip_correctness(dir: &Path) -> Verdict {
    let start = Instant::now();
    let corpus = fixtures::regular_corpus();
    for (name, a) in &corpus {
        let action = write_action(dir, name, a);
        let report = dir.join(format!("{name}.report.json"));
        let out = cogcomp(&[
            "--threads",
            "1",
            "roundtrip",
            "--action",
            action.to_str().unwrap(),
            "--out",
            report.to_str().unwrap(),
        ]);
        ensure(out.status.code() == Some(0), || {
            format!(
                "{name}: exit {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            )
        })?;
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
        let results = doc["results"].as_array().unwrap();
        ensure(results.len() == 6, || {
            format!("{name}: {} properties", results.len())
        })?;
        for r in results {
            ensure(
                r["passed"] == true && r["checks"].as_u64().unwrap() > 0,
                || format!("{name}: {r}"),
            )?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2}s"))?;
    Ok(format!(
        "{} fixtures, 6/6 properties each, {secs:.2}s",
        corpus.len()
    ))
}

fn orbit_stabilizer_accounting() -> Verdict {
    let corpus = fixtures::regular_corpus();
    for (name, a) in &corpus {
        let (t, cert) = compress(a).map_err(|e| format!("{name}: {e}"))?;
        let x = a.complex();
        ensure(t.total_index() == x.len(), || {
            format!(
                "{name}: sum of indices {} vs {} simplices",
                t.total_index(),
                x.len()
            )
        })?;
        let mut fibers = vec![0usize; t.quotient().len()];
        for s in x.ids() {
            fibers[cert.p(s).index()] += 1;
        }
        for y in t.quotient().ids() {
            let index = t.group().order() / t.stabilizer(y).order();
            ensure(fibers[y.index()] == index, || {
                format!(
                    "{name}: fiber of {y} has {} simplices, index {index}",
                    fibers[y.index()]
                )
            })?;
        }
    }
    Ok(format!("{} fixtures", corpus.len()))
}

fn algebraic_validity() -> Verdict {
    let mut triples = 0;
    for (name, a) in fixtures::regular_corpus() {
        for policy in [
            LiftPolicy::LexMin,
            LiftPolicy::LexMax,
            LiftPolicy::EquivariantBfs,
        ] {
            let (t, _) = compress_with_policy(&a, policy).map_err(|e| format!("{name}: {e}"))?;
            let report = validate_triple(&t);
            ensure(report.is_valid(), || {
                format!("{name} {}: {}", policy.name(), report.violations[0])
            })?;
            triples += 1;
        }
    }
    Ok(format!("{triples} triples valid"))
}

fn regularization() -> Verdict {
    let expected = [
        ("klein-bowtie", RegularityCondition::PointwiseFix),
        ("hexagon-c6-sd1", RegularityCondition::OrbitClosure),
        (
            "rotated-subdivided-triangle",
            RegularityCondition::OrbitClosure,
        ),
    ];
    let corpus = fixtures::irregular_corpus();
    ensure(corpus.len() == expected.len(), || "corpus changed".into())?;
    for ((name, a), (want_name, want)) in corpus.iter().zip(expected) {
        ensure(name == want_name, || format!("{name} vs {want_name}"))?;
        let v = a
            .check_regularity()
            .violation
            .ok_or_else(|| format!("{name} is regular"))?;
        ensure(v.condition == want, || format!("{name}: {v}"))?;
        let sd2 = fixtures::subdivide(a, 2);
        ensure(sd2.check_regularity().is_regular(), || {
            format!("{name}: second subdivision irregular")
        })?;
    }
    Ok(format!("{} irregular actions regularized", corpus.len()))
}

/// `map` is a vertex bijection carrying simplices onto simplices and
/// commuting with every generator.
fn is_equivariant_isomorphism(a: &GroupAction, b: &GroupAction, map: &[u32]) -> bool {
    let (xa, xb) = (a.complex(), b.complex());
    if xa.len() != xb.len() || map.len() != xa.vertex_count() {
        return false;
    }
    let image: BTreeSet<u32> = map.iter().copied().collect();
    if image.len() != map.len() {
        return false;
    }
    let simplices_ok = xa.ids().all(|s| {
        let mut img: Vec<u32> = xa.vertices_of(s).iter().map(|&v| map[v as usize]).collect();
        img.sort_unstable();
        xb.find(&img).is_some()
    });
    let generators_ok = a.group().generators().iter().all(|&g| {
        let (ta, tb) = (a.vertex_table(g), b.vertex_table(g));
        (0..map.len()).all(|v| map[ta[v] as usize] == tb[map[v] as usize])
    });
    simplices_ok && generators_ok
}

fn choice_independence() -> Verdict {
    let mut checked = 0;
    for (name, a) in fixtures::regular_corpus() {
        if a.complex().len() > 300 {
            continue;
        }
        let (t1, _) = compress_with_policy(&a, LiftPolicy::LexMin).unwrap();
        let (t2, _) = compress_with_policy(&a, LiftPolicy::LexMax).unwrap();
        let z1 = recovered_action(&reconstruct(&t1).unwrap()).unwrap();
        let z2 = recovered_action(&reconstruct(&t2).unwrap()).unwrap();
        let map = find_equivariant_isomorphism(&z1, &z2)
            .map_err(|e| format!("{name}: {e}"))?
            .ok_or_else(|| format!("{name}: no isomorphism found"))?;
        ensure(is_equivariant_isomorphism(&z1, &z2, &map), || {
            format!("{name}: returned map is not an equivariant isomorphism")
        })?;
        checked += 1;
    }
    ensure(checked > 0, || "no fixture within the size bound".into())?;
    Ok(format!("{checked} fixtures"))
}

/// Byte-compares compress and reconstruct outputs of the binary across
/// worker counts.
fn determinism(dir: &Path) -> Verdict {
    let corpus = fixtures::regular_corpus();
    for (name, a) in &corpus {
        let action = write_action(dir, name, a);
        let mut outputs: Vec<(usize, [Vec<u8>; 3])> = Vec::new();
        for w in [1usize, 2, 8] {
            let triple = dir.join(format!("{name}.{w}.triple.json"));
            let z = dir.join(format!("{name}.{w}.z.json"));
            let labels = dir.join(format!("{name}.{w}.labels.json"));
            let threads = w.to_string();
            let c = cogcomp(&[
                "--threads",
                &threads,
                "compress",
                "--action",
                action.to_str().unwrap(),
                "--out",
                triple.to_str().unwrap(),
            ]);
            ensure(c.status.success(), || {
                format!("{name}: compress failed with {w} workers")
            })?;
            let r = cogcomp(&[
                "--threads",
                &threads,
                "reconstruct",
                "--triple",
                triple.to_str().unwrap(),
                "--out",
                z.to_str().unwrap(),
                "--labels",
                labels.to_str().unwrap(),
            ]);
            ensure(r.status.success(), || {
                format!("{name}: reconstruct failed with {w} workers")
            })?;
            let read = |p: &Path| std::fs::read(p).unwrap();
            outputs.push((w, [read(&triple), read(&z), read(&labels)]));
        }
        let (_, first) = &outputs[0];
        for (w, files) in &outputs[1..] {
            ensure(files == first, || {
                format!("{name}: output with {w} workers differs from 1 worker")
            })?;
        }
    }
    Ok(format!("{} fixtures x workers 1, 2, 8", corpus.len()))
}

fn complexity_instrumentation() -> Verdict {
    let mut fixtures_checked = 0;
    let corpus = fixtures::regular_corpus()
        .into_iter()
        .chain([2, 3, 4].map(|k| (format!("cone-{k}"), fixtures::cone_rotation(k))));
    for (name, a) in corpus {
        let k = a.group().order() as u64;
        let n = a.complex().dimension() as u64;
        let (t, _, cstats) = compress_with_stats(&a, LiftPolicy::LexMin).unwrap();
        for d in &cstats.per_dimension {
            let reps = d.representatives as u64;
            ensure(d.ops.trans <= (n + 1) * reps, || {
                format!(
                    "{name}: dimension {} made {} trans calls for {reps} representatives",
                    d.dimension, d.ops.trans
                )
            })?;
            ensure(d.ops.trans == facet_count(d.dimension) * reps, || {
                format!(
                    "{name}: dimension {} trans {} vs {} facets",
                    d.dimension,
                    d.ops.trans,
                    facet_count(d.dimension) * reps
                )
            })?;
        }
        let (_, rstats) = reconstruct_with_stats(&t).unwrap();
        let per_dim = rstats.minrep_per_dimension();
        for (d, &calls) in per_dim.iter().enumerate() {
            let expected = k * t.quotient().count_of_dim(d) as u64;
            ensure(calls == expected, || {
                format!("{name}: dimension {d} made {calls} minrep calls, expected {expected}")
            })?;
        }
        fixtures_checked += 1;
    }

    let report = bench::run(&BenchConfig {
        family: Family::Cycle,
        orders: (2..=12).collect(),
        threads: vec![1],
        repeats: 15,
        policy: LiftPolicy::LexMin,
    })?;
    for r in &report.records {
        let expected = r.k as u64 * r.quotient_simplices as u64;
        ensure(r.reconstruct_minrep == expected, || {
            format!(
                "bench k={}: {} minrep calls, expected {expected}",
                r.k, r.reconstruct_minrep
            )
        })?;
        ensure(r.f <= r.k && r.h <= r.k, || {
            format!("bench k={}: f or h exceeds k", r.k)
        })?;
    }
    let mut fits = Vec::new();
    for fit in &report.fits {
        ensure(fit.within_bound(), || {
            format!(
                "{} exponent {:.3} exceeds {:.1} + {:.1}",
                fit.algorithm,
                fit.exponent,
                fit.bound,
                bench::EXPONENT_SLACK
            )
        })?;
        fits.push(format!("{} {:.2}", fit.algorithm, fit.exponent));
    }
    ensure(fits.len() == 2, || "missing growth fits".into())?;
    Ok(format!(
        "{fixtures_checked} fixtures exact; exponents {}",
        fits.join(", ")
    ))
}

/// A `d`-simplex has `d + 1` facets, except vertices, which have none.
fn facet_count(d: usize) -> u64 {
    if d == 0 {
        0
    } else {
        d as u64 + 1
    }
}

/// The poset of cosets and its face relation, enumerated from the
/// definitions with explicit coset sets and permutation composition.
struct Oracle {
    /// `(y, coset)` for every element of the poset.
    points: Vec<(SimplexId, BTreeSet<ElementId>)>,
    /// Points below each point, including itself.
    below: Vec<BTreeSet<usize>>,
}

impl Oracle {
    fn build(t: &CompressedTriple) -> Oracle {
        let g = t.group();
        let y = t.quotient();
        let perms: Vec<Vec<u32>> = g.elements().map(|e| g.permutation(e).to_vec()).collect();
        let by_perm: HashMap<Vec<u32>, ElementId> = g
            .elements()
            .map(|e| (perms[e.index()].clone(), e))
            .collect();
        let compose = |a: ElementId, b: ElementId| -> ElementId {
            let (pa, pb) = (&perms[a.index()], &perms[b.index()]);
            by_perm[&pb.iter().map(|&v| pa[v as usize]).collect::<Vec<u32>>()]
        };
        let invert = |a: ElementId| -> ElementId {
            let pa = &perms[a.index()];
            let mut inv = vec![0u32; pa.len()];
            for (v, &w) in pa.iter().enumerate() {
                inv[w as usize] = v as u32;
            }
            by_perm[&inv]
        };
        let coset = |yy: SimplexId, a: ElementId| -> BTreeSet<ElementId> {
            t.stabilizer(yy)
                .members()
                .iter()
                .map(|&s| compose(a, s))
                .collect()
        };

        // The inverse transfer for every face pair, along any chain of
        // codimension-one faces.
        let mut phi_inv: BTreeMap<(SimplexId, SimplexId), ElementId> = BTreeMap::new();
        for top in y.ids() {
            let mut stack = vec![(top, ElementId::IDENTITY)];
            while let Some((cur, acc)) = stack.pop() {
                if phi_inv.contains_key(&(top, cur)) {
                    continue;
                }
                phi_inv.insert((top, cur), acc);
                for &child in y.faces_codim1(cur) {
                    let step = t.transfer(cur, child).unwrap();
                    stack.push((child, compose(acc, invert(step))));
                }
            }
        }

        let mut points = Vec::new();
        let mut seen = BTreeSet::new();
        for yy in y.ids() {
            for a in g.elements() {
                let c = coset(yy, a);
                if seen.insert((yy, c.clone())) {
                    points.push((yy, c));
                }
            }
        }
        let below = points
            .iter()
            .map(|(yy, c)| {
                let rep = *c.iter().next().unwrap();
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, (y2, c2))| {
                        phi_inv
                            .get(&(*yy, *y2))
                            .is_some_and(|&pi| coset(*y2, compose(rep, pi)) == *c2)
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Oracle { points, below }
    }
}

fn oracle_equivalence() -> Verdict {
    let corpus = fixtures::micro_corpus();
    for (name, a) in &corpus {
        ensure(a.group().order() <= 6 && a.complex().len() <= 20, || {
            format!("{name} is outside the micro range")
        })?;
        let (t, _) = compress(a).unwrap();
        let z = reconstruct(&t).unwrap();
        let oracle = Oracle::build(&t);
        let zc = z.complex();
        ensure(oracle.points.len() == zc.len(), || {
            format!(
                "{name}: oracle has {} points, reconstruction {}",
                oracle.points.len(),
                zc.len()
            )
        })?;
        // Match points to simplices through their labels.
        let point_of: HashMap<(SimplexId, ElementId), usize> = oracle
            .points
            .iter()
            .enumerate()
            .map(|(i, (yy, c))| ((*yy, *c.iter().next().unwrap()), i))
            .collect();
        let to_point = |s: SimplexId| -> Option<usize> {
            let l = z.label(s);
            point_of.get(&(l.y, l.g)).copied()
        };
        for s in zc.ids() {
            let p = to_point(s)
                .ok_or_else(|| format!("{name}: label of {s} is not an oracle point"))?;
            // Vertices of the oracle point are the dimension-zero points below it.
            let oracle_vertices: BTreeSet<usize> = oracle.below[p]
                .iter()
                .copied()
                .filter(|&j| t.quotient().dim_of(oracle.points[j].0) == 0)
                .collect();
            let z_vertices: BTreeSet<usize> = zc
                .vertices_of(s)
                .iter()
                .map(|&v| to_point(SimplexId(v)).unwrap())
                .collect();
            ensure(oracle_vertices == z_vertices, || {
                format!("{name}: vertex sets of {s} differ")
            })?;
            // Faces of the oracle point are exactly the faces of the simplex.
            let z_faces: BTreeSet<usize> = zc
                .all_faces(s)
                .iter()
                .map(|&f| to_point(f).unwrap())
                .collect();
            ensure(z_faces == oracle.below[p], || {
                format!("{name}: faces of {s} differ")
            })?;
        }
    }
    Ok(format!("{} micro fixtures", corpus.len()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let criteria: Vec<(&str, Criterion)> = vec![
        (
            "roundtrip correctness",
            Box::new(|| roundtrip_correctness(dir.path())),
        ),
        (
            "orbit-stabilizer accounting",
            Box::new(orbit_stabilizer_accounting),
        ),
        ("algebraic validity", Box::new(algebraic_validity)),
        ("regularization", Box::new(regularization)),
        ("choice independence", Box::new(choice_independence)),
        (
            "determinism across worker counts",
            Box::new(|| determinism(dir.path())),
        ),
        (
            "complexity instrumentation",
            Box::new(complexity_instrumentation),
        ),
        (
            "oracle equivalence at micro scale",
            Box::new(oracle_equivalence),
        ),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}: {title} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {title} ({why})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
