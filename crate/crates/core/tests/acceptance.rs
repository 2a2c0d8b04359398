//! The nine acceptance criteria. Each prints one PASS/FAIL line; the process
//! exits non-zero if any fails. Everything is compared exactly.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;

use kgrid::decomposition::{cube_hull, cube_split_check, facet_dual_graph, hamiltonian_paths, ridge_cut_set, slice_plan, verify_additivity};
use kgrid::exact_linalg::{Field, Matrix};
use kgrid::grid_space::{build_grid, CellSet};
use kgrid::homology_ingest::{euler_characteristics, homology_functor, ingest};
use kgrid::io::{complex_from_json, parse_json};
use kgrid::k_theory::k1_class;
use kgrid::module_rep::{ModuleMorphism, PosetMorphism, PosetRep};
use kgrid::rank_exact::{
    compare, dropped_segments, iota, is_rank_exact, project, rank_along, rank_exactness, rank_invariant, segments,
    spine_cells, spine_to_cell, strata_count, strata_index, RankInvariant, Segment, SpineCell,
};
use kgrid::sampling::{random_automorphism, random_grid, random_module, random_poset_rep, random_space, random_split_ses, rng};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: kgrid::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn strata_census() -> Outcome {
    let axis = |n: i64| (0..=n).map(|v| BigRational::from_integer(BigInt::from(v))).collect::<Vec<_>>();
    let grid = lift(build_grid(vec![axis(6), axis(4)]))?;
    let hull = CellSet::hull(Arc::new(grid));
    let counts = hull.strata_counts();
    ensure(counts == vec![35, 58, 24] && hull.len() == 117, || format!("counts {counts:?}, total {}", hull.len()))?;
    Ok(format!("{counts:?}, total {}", hull.len()))
}

fn two_line() -> Outcome {
    let shape = [2];
    let strata = strata_index(&shape);
    let segs = segments(&shape);
    ensure(strata.len() == 5 && segs.len() == 6, || format!("{} strata, {} segments", strata.len(), segs.len()))?;
    let dropped = dropped_segments(&shape);
    let expected = lift(Segment::new(vec![0], vec![2]))?;
    ensure(dropped == vec![expected.clone()], || format!("dropped {dropped:?}"))?;
    // Each unit vector on an image segment projects to the unit vector on its stratum.
    for stratum in &strata {
        let target = lift(iota(stratum, &shape))?;
        let values: BTreeMap<Segment, usize> = segs.iter().map(|s| (s.clone(), usize::from(*s == target))).collect();
        let class = lift(project(&lift(RankInvariant::from_values(shape.to_vec(), values))?))?;
        let cell = spine_to_cell(stratum);
        let ok = class.values().iter().all(|(c, &v)| v == i64::from(*c == cell));
        ensure(ok, || format!("projection of the unit vector at {target} is {:?}", class.vector()))?;
    }
    // The dropped coordinate is invisible to the projection.
    let mut values: BTreeMap<Segment, usize> = segs.iter().map(|s| (s.clone(), 0)).collect();
    values.insert(expected.clone(), 7);
    let class = lift(project(&lift(RankInvariant::from_values(shape.to_vec(), values))?))?;
    ensure(class.is_zero(), || "dropped segment leaks into the projection".into())?;
    Ok(format!("5 strata, 6 segments, dropped {expected}"))
}

fn k0_additivity() -> Outcome {
    let mut r = rng(1001);
    let mut steps = 0;
    for i in 0..120 {
        let dim = 1 + i % 3;
        let field = if i % 2 == 0 { Field::F2 } else { Field::Q };
        let grid = random_grid(&mut r, dim, 4);
        let space = random_space(&mut r, &grid);
        let module = random_module(&mut r, &space, field, 3).module;
        ensure(module.is_valid() && module.dims().values().all(|&d| d <= 3), || format!("sample {i} is not a valid module"))?;
        let plan = slice_plan(&space);
        let report = lift(verify_additivity(&module, &plan))?;
        ensure(report.passed(), || format!("sample {i}: {report:?}"))?;
        steps += report.steps.len();
    }
    Ok(format!("120 modules, {steps} split steps"))
}

fn cube_paths() -> Outcome {
    let graph = lift(facet_dual_graph(3))?;
    let paths = hamiltonian_paths(&graph);
    ensure(!paths.is_empty(), || "no Hamiltonian paths".into())?;
    for path in &paths {
        let cut = lift(ridge_cut_set(&graph, path))?;
        ensure(cut.cut_ridges.len() == 7, || format!("path {path:?}: {} cut ridges", cut.cut_ridges.len()))?;
        ensure(cut.cells.is_closed() && cut.cells.is_connected(), || format!("path {path:?}: cut set not closed and connected"))?;
    }
    let hull = lift(cube_hull(3))?;
    let mut r = rng(4004);
    for i in 0..20 {
        let field = if i % 2 == 0 { Field::F2 } else { Field::Q };
        let module = random_module(&mut r, &hull, field, 3).module;
        let path = paths.choose(&mut r).expect("nonempty");
        let report = lift(cube_split_check(path, &module))?;
        ensure(report.passed, || format!("module {i} on path {path:?} does not re-assemble"))?;
    }
    Ok(format!("{} paths with 7 cut ridges, 20 modules re-assembled", paths.len()))
}

fn rank_exact_suite() -> Outcome {
    let mut r = rng(5005);
    for i in 0..60 {
        let dim = r.gen_range(1..=2);
        let shape: Vec<usize> = (0..dim).map(|_| r.gen_range(1..=3)).collect();
        let field = [Field::F2, Field::F5, Field::Q][i % 3];
        let (phi, psi) = lift(random_split_ses(&mut r, field, &shape))?;
        ensure(lift(is_rank_exact(&phi, &psi))?, || format!("split sequence {i} on {shape:?} rejected"))?;
    }
    let f = Field::F2;
    let sub = lift(PosetRep::interval(f, &[1], &[1], &[1]))?;
    let mid = lift(PosetRep::interval(f, &[1], &[0], &[1]))?;
    let quo = lift(PosetRep::interval(f, &[1], &[0], &[0]))?;
    let phi = [(vec![0], Matrix::zeros(f, 1, 0)), (vec![1], Matrix::identity(f, 1))];
    let psi = [(vec![0], Matrix::identity(f, 1)), (vec![1], Matrix::zeros(f, 0, 1))];
    let phi = lift(PosetMorphism::new(sub, mid.clone(), phi.into_iter().collect()))?;
    let psi = lift(PosetMorphism::new(mid, quo, psi.into_iter().collect()))?;
    let report = lift(rank_exactness(&phi, &psi))?;
    let expected = vec![(lift(Segment::new(vec![0], vec![1]))?, 1, 0)];
    ensure(!report.exact && report.failures == expected, || format!("non-example report {report:?}"))?;
    Ok("60 split sequences accepted; non-example rejected at (0)->(1) only".into())
}

fn k1_homomorphism() -> Outcome {
    let mut r = rng(6006);
    for field in [Field::F5, Field::Q] {
        for i in 0..50 {
            let dim = r.gen_range(1..=3);
            let grid = random_grid(&mut r, dim, 3);
            let space = random_space(&mut r, &grid);
            let sample = random_module(&mut r, &space, field, 3);
            let (a, b) = (random_automorphism(&mut r, &sample), random_automorphism(&mut r, &sample));
            let lhs = lift(k1_class(&lift(a.after(&b))?))?;
            let rhs = lift(lift(k1_class(&a))?.mul(&lift(k1_class(&b))?))?;
            ensure(lhs == rhs, || format!("{field} pair {i}: {lhs:?} vs {rhs:?}"))?;
            let id = lift(k1_class(&ModuleMorphism::identity(&sample.module)))?;
            ensure(id.is_identity() && id.units().values().all(|u| u.is_one()), || format!("{field} identity {i}"))?;
        }
    }
    Ok("100 pairs over F5 and Q".into())
}

fn homology_oracle() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut checked = 0;
    for name in ["single_vertex.json", "hollow_triangle.json", "merging_components.json"] {
        let text = std::fs::read_to_string(dir.join(name)).map_err(|e| e.to_string())?;
        let complex = lift(complex_from_json(&lift(parse_json(&text))?))?;
        let top = complex.max_dimension().unwrap_or(0);
        let points = kgrid::module_rep::grid_points(complex.shape());
        for k in 0..=top + 1 {
            let rep = lift(homology_functor(&complex, k, Field::F2))?;
            ensure(rep.is_valid(), || format!("{name}: H{k} representation invalid"))?;
            let module = lift(ingest(&complex, k, Field::F2))?;
            ensure(module.is_valid(), || format!("{name}: H{k} module invalid"))?;
            for p in &points {
                let oracle = common::f2_betti(&complex, k, p);
                ensure(rep.dim(p) == oracle, || format!("{name}: H{k} at {p:?} is {} but the oracle says {oracle}", rep.dim(p)))?;
                checked += 1;
            }
        }
        for (p, from_homology, from_simplices) in lift(euler_characteristics(&complex, Field::F2))? {
            ensure(from_homology == from_simplices, || format!("{name}: Euler characteristic at {p:?}"))?;
        }
    }
    Ok(format!("3 complexes, {checked} Betti numbers"))
}

/// Shapes with every entry at least 1 and at most `max_strata` strata, up to four axes.
fn small_shapes(max_strata: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..4 {
        let mut next = Vec::new();
        for s in &frontier {
            for n in 1.. {
                let mut t = s.clone();
                t.push(n);
                if strata_count(&t) > max_strata {
                    break;
                }
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn path_independence() -> Outcome {
    let shapes = small_shapes(200);
    for shape in &shapes {
        let strata = strata_index(shape);
        let images: BTreeSet<Segment> = strata.iter().map(|s| lift(iota(s, shape))).collect::<Result<_, _>>()?;
        ensure(images.len() == strata.len(), || format!("iota not injective on {shape:?}"))?;
        for s in &strata {
            let round = spine_cells(&spine_to_cell(s));
            ensure(&round == s, || format!("spine round trip fails on {shape:?}"))?;
        }
    }
    let mut r = rng(8008);
    let mut pairs = 0;
    for i in 0..60 {
        let dim = r.gen_range(1..=3);
        let shape: Vec<usize> = (0..dim).map(|_| r.gen_range(1..=3)).collect();
        let field = if i % 2 == 0 { Field::F3 } else { Field::Q };
        let rep = random_poset_rep(&mut r, field, &shape, 3);
        let rank = lift(rank_invariant(&rep))?;
        for seg in segments(&shape) {
            let mut steps = seg.axis_steps();
            steps.shuffle(&mut r);
            let a = lift(rank_along(&rep, &seg, &steps))?;
            steps.reverse();
            let b = lift(rank_along(&rep, &seg, &steps))?;
            ensure(a == b && Some(a) == rank.get(&seg), || format!("rep {i} on {shape:?}: paths disagree at {seg}"))?;
            pairs += 1;
        }
    }
    Ok(format!("iota injective on {} shapes; {pairs} path pairs on 60 representations", shapes.len()))
}

fn compare_transparency() -> Outcome {
    let f = Field::F2;
    let chain = lift(PosetRep::from_chain(f, &[1, 1, 0], &[Matrix::identity(f, 1), Matrix::zeros(f, 0, 1)]))?;
    let c = lift(compare(&chain))?;
    let e12 = spine_to_cell(&[SpineCell::Edge(1)]);
    ensure(SpineCell::Edge(1).to_string() == "e12", || "edge label".into())?;
    ensure(!c.equal && c.differing == vec![e12.clone()], || format!("equal {}, differing {:?}", c.equal, c.differing))?;
    let (p, k) = (c.projected.get(&e12), c.k0.get(&e12));
    ensure(p == Some(0) && k == Some(1), || format!("at e12 projected {p:?}, k0 {k:?}"))?;
    Ok("equal=false, differing only at e12 (projected 0, K0 1)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 strata census", strata_census),
        ("2 [2]-line comparison", two_line),
        ("3 K0 additivity", k0_additivity),
        ("4 cube proof path", cube_paths),
        ("5 rank-exact suite", rank_exact_suite),
        ("6 K1 homomorphism", k1_homomorphism),
        ("7 homology oracle", homology_oracle),
        ("8 path independence and iota", path_independence),
        ("9 compare transparency", compare_transparency),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
