//! Command-line front end. Every verb runs one library operation on a JSON
//! input file and prints a plain table, or JSON with `--json`.
//!
//! Exit codes: 0 on success, 1 when the input violates a precondition or a
//! check fails, 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::decomposition::{
    cube_hull, cube_split_check, facet_dual_graph, hamiltonian_paths, hyperplane_slice, slice_plan, split,
    verify_additivity,
};
use crate::error::{Error, Result};
use crate::exact_linalg::{parse_rational, Field};
use crate::grid_space::parse_tuple;
use crate::homology_ingest::ingest;
use crate::io::{
    complex_from_json, endomorphism_from_json, module_from_json, module_from_json_unchecked, module_to_json,
    parse_json, render_json, rep_from_json,
};
use crate::k_theory::{euler_eval, euler_export, k0_class, k1_class, K0Class};
use crate::module_rep::PersistenceModule;
use crate::rank_exact::{compare, project, rank_invariant, segments, RankInvariant};

#[derive(Debug, Parser)]
#[command(name = "kgrid", about = "Exact K-theory of modules on stratified grids")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Args)]
struct Common {
    /// Print machine-readable JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Check a module file and list every violation.
    Validate {
        module: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension vector of a module.
    K0 {
        module: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Determinant per cell of an automorphism file `{"module", "comps"}`.
    K1 {
        morphism: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Sample the Euler surface to CSV, or evaluate it at one point.
    Euler {
        module: PathBuf,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated rational coordinates, e.g. `1/2,3`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Segments of a grid poset.
    Seg {
        #[arg(long)]
        shape: String,
        #[command(flatten)]
        common: Common,
    },
    /// Rank invariant of a poset representation, as `p;p';value` rows.
    Rank {
        rep: PathBuf,
        /// Expected shape; a mismatch is an error.
        #[arg(long)]
        shape: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Project a rank invariant onto strata. Accepts a representation file,
    /// or a rank CSV together with `--shape`.
    Project {
        input: PathBuf,
        #[arg(long)]
        shape: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Projected rank invariant next to the dimension vector of the imported module.
    Compare {
        rep: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Split a module's space at the vertex level with grid value `--value` on `--axis`.
    Split {
        module: PathBuf,
        #[arg(long)]
        axis: usize,
        #[arg(long)]
        value: String,
        #[command(flatten)]
        common: Common,
    },
    /// Slice plan of a module's space with per-step additivity verdicts.
    Plan {
        module: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Split a cube along its boundary and an unfolding cut set.
    CubeSplit {
        /// Module on a full cube; without it the constant rank-one module is used.
        module: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Facet indices of a Hamiltonian path; defaults to the first one found.
        #[arg(long)]
        path: Option<String>,
        #[arg(long, default_value = "F2")]
        field: String,
        #[command(flatten)]
        common: Common,
    },
    /// Homology module of a bifiltration file, emitted as module JSON.
    Ingest {
        complex: PathBuf,
        #[arg(long, default_value_t = 0)]
        homology: usize,
        #[arg(long, default_value = "F2")]
        field: String,
    },
}

/// A finished command: what to print and whether it counts as success.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, ok: true }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.verb) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

fn load_module(path: &Path) -> Result<PersistenceModule> {
    module_from_json(&read_json(path)?)
}

fn parse_shape(s: &str) -> Result<Vec<usize>> {
    parse_tuple(s)
}

fn k0_table(class: &K0Class) -> String {
    let mut s = String::from("cell\tdim\n");
    for (c, v) in class.values() {
        let _ = writeln!(s, "{c}\t{v}");
    }
    s
}

fn execute(verb: Verb) -> Result<Outcome> {
    match verb {
        Verb::Validate { module, common } => {
            let m = module_from_json_unchecked(&read_json(&module)?)?;
            let violations: Vec<String> = m.validate().iter().map(ToString::to_string).collect();
            let text = if common.json {
                render_json(&json!({ "valid": violations.is_empty(), "violations": violations }))
            } else if violations.is_empty() {
                "ok\n".to_string()
            } else {
                violations.iter().map(|v| format!("violation: {v}\n")).collect()
            };
            Ok(Outcome { text, ok: violations.is_empty() })
        }
        Verb::K0 { module, common } => {
            let class = k0_class(&load_module(&module)?);
            Ok(Outcome::ok(if common.json { render_json(&class.to_json()) } else { k0_table(&class) }))
        }
        Verb::K1 { morphism, common } => {
            let class = k1_class(&endomorphism_from_json(&read_json(&morphism)?)?)?;
            let text = if common.json {
                render_json(&class.to_json())
            } else {
                let mut s = String::from("cell\tdet\n");
                for (c, u) in class.units() {
                    let _ = writeln!(s, "{c}\t{u}");
                }
                s
            };
            Ok(Outcome::ok(text))
        }
        Verb::Euler { module, samples, out, point } => {
            let m = load_module(&module)?;
            if let Some(point) = point {
                let q = point.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                return Ok(Outcome::ok(format!("{}\n", euler_eval(&m, &q)?)));
            }
            let csv = euler_export(&m, samples)?.to_csv();
            match out {
                Some(path) => {
                    std::fs::write(&path, csv).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    Ok(Outcome::ok(format!("wrote {}\n", path.display())))
                }
                None => Ok(Outcome::ok(csv)),
            }
        }
        Verb::Seg { shape, common } => {
            let segs = segments(&parse_shape(&shape)?);
            let text = if common.json {
                let list: Vec<Value> = segs.iter().map(|s| json!([s.source, s.target])).collect();
                render_json(&json!({ "count": segs.len(), "segments": list }))
            } else {
                segs.iter().map(|s| format!("{s}\n")).collect()
            };
            Ok(Outcome::ok(text))
        }
        Verb::Rank { rep, shape, common } => {
            let rep = rep_from_json(&read_json(&rep)?)?;
            if let Some(shape) = shape {
                let expected = parse_shape(&shape)?;
                if expected != rep.shape() {
                    return Err(Error::Shape(format!("representation has shape {:?}", rep.shape())));
                }
            }
            let r = rank_invariant(&rep)?;
            let text = if common.json {
                let rows: Vec<Value> = r.values().iter().map(|(s, v)| json!([s.source, s.target, v])).collect();
                render_json(&json!({ "shape": r.shape(), "ranks": rows }))
            } else {
                r.to_csv()
            };
            Ok(Outcome::ok(text))
        }
        Verb::Project { input, shape, common } => {
            let text = std::fs::read_to_string(&input).map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
            let rank = match parse_json(&text) {
                Ok(v) => rank_invariant(&rep_from_json(&v)?)?,
                Err(_) => {
                    let shape = shape.ok_or_else(|| Error::Parse("a rank CSV needs --shape".into()))?;
                    RankInvariant::from_csv(&parse_shape(&shape)?, &text)?
                }
            };
            let class = project(&rank)?;
            Ok(Outcome::ok(if common.json { render_json(&class.to_json()) } else { k0_table(&class) }))
        }
        Verb::Compare { rep, common } => {
            let c = compare(&rep_from_json(&read_json(&rep)?)?)?;
            let text = if common.json {
                render_json(&json!({
                    "cells": c.k0.space().to_json_cells(),
                    "projected": c.projected.vector(),
                    "k0": c.k0.vector(),
                    "equal": c.equal,
                    "differing": c.differing.iter().map(|d| d.coords().to_vec()).collect::<Vec<_>>(),
                }))
            } else {
                let mut s = String::from("cell\tprojected\tk0\n");
                for (cell, p) in c.projected.values() {
                    let k = c.k0.get(cell).unwrap_or(0);
                    let mark = if *p == k { "" } else { "\t*" };
                    let _ = writeln!(s, "{cell}\t{p}\t{k}{mark}");
                }
                let _ = writeln!(s, "equal: {}", c.equal);
                s
            };
            Ok(Outcome::ok(text))
        }
        Verb::Split { module, axis, value, common } => split_report(&load_module(&module)?, axis, &value, common.json),
        Verb::Plan { module, common } => plan_report(&load_module(&module)?, common.json),
        Verb::CubeSplit { module, dim, path, field, common } => {
            let m = match module {
                Some(p) => load_module(&p)?,
                None => PersistenceModule::constant(cube_hull(dim)?, field.parse::<Field>()?, 1),
            };
            let d = m.grid().dim();
            let graph = facet_dual_graph(d)?;
            let path = match path {
                Some(p) => parse_tuple(&p)?,
                None => hamiltonian_paths(&graph).into_iter().next().ok_or(Error::CubeDimension(d))?,
            };
            let r = cube_split_check(&path, &m)?;
            let text = if common.json {
                render_json(&json!({
                    "path": path,
                    "cut_ridges": r.cut_ridges,
                    "interior": r.interior.to_json(),
                    "cut": r.cut.to_json(),
                    "remainder": r.remainder.iter().map(K0Class::to_json).collect::<Vec<_>>(),
                    "assembled": r.assembled.to_json(),
                    "passed": r.passed,
                }))
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "path: {path:?}");
                let _ = writeln!(s, "cut ridges: {}", r.cut_ridges);
                let _ = writeln!(s, "interior cells: {}", r.interior.values().len());
                let _ = writeln!(s, "cut set cells: {}", r.cut.values().len());
                let _ = writeln!(s, "remainder components: {}", r.remainder.len());
                let _ = writeln!(s, "re-assembly: {}", if r.passed { "pass" } else { "FAIL" });
                s
            };
            Ok(Outcome { text, ok: r.passed })
        }
        Verb::Ingest { complex, homology, field } => {
            let k = complex_from_json(&read_json(&complex)?)?;
            let m = ingest(&k, homology, field.parse()?)?;
            Ok(Outcome::ok(render_json(&module_to_json(&m))))
        }
    }
}

fn split_report(m: &PersistenceModule, axis: usize, value: &str, as_json: bool) -> Result<Outcome> {
    let grid = m.grid();
    if axis >= grid.dim() {
        return Err(Error::AxisOutOfRange { axis, dim: grid.dim() });
    }
    let x = parse_rational(value)?;
    let coord = grid.axis(axis).locate(&x).filter(|c| c % 2 == 0).ok_or_else(|| {
        Error::OutsideHull(format!("{value} is not a grid value on axis {axis}"))
    })?;
    let space = m.space();
    let slice = hyperplane_slice(space, axis, coord / 2)?;
    let step = split(space, &slice)?;
    let slice_class = k0_class(&m.restrict(&step.slice)?);
    let parts = step
        .remainder_components
        .iter()
        .map(|c| Ok(k0_class(&m.restrict(c)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut pieces = vec![slice_class.clone()];
    pieces.extend(parts.iter().cloned());
    let passed = K0Class::disjoint_union(&pieces)? == k0_class(m);
    let text = if as_json {
        render_json(&json!({
            "axis": axis,
            "level": coord / 2,
            "slice": slice_class.to_json(),
            "components": parts.iter().map(K0Class::to_json).collect::<Vec<_>>(),
            "passed": passed,
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "slice at axis {axis}, level {}: {} cells", coord / 2, step.slice.len());
        for (i, p) in parts.iter().enumerate() {
            let _ = writeln!(s, "component {i}: {} cells, total dim {}", p.values().len(), p.vector().iter().sum::<i64>());
        }
        let _ = writeln!(s, "re-assembly: {}", if passed { "pass" } else { "FAIL" });
        s
    };
    Ok(Outcome { text, ok: passed })
}

fn plan_report(m: &PersistenceModule, as_json: bool) -> Result<Outcome> {
    let plan = slice_plan(m.space());
    let report = verify_additivity(m, &plan)?;
    let class = k0_class(m);
    let passed = report.passed();
    let text = if as_json {
        let steps: Vec<Value> = report
            .steps
            .iter()
            .map(|v| {
                json!({
                    "step": v.step,
                    "input": v.input_cells,
                    "slice": v.slice_cells,
                    "components": v.components,
                    "pass": v.passed(),
                    "mismatches": v.mismatches.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
                })
            })
            .collect();
        render_json(&json!({ "plan": plan.to_json(), "steps": steps, "k0": class.to_json(), "passed": passed }))
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "plan: {} cells, {} steps, {} leaves",
            m.space().len(),
            report.steps.len(),
            plan.leaves().len()
        );
        for (verdict, step) in report.steps.iter().zip(plan.steps()) {
            let at = match step.hyperplane {
                Some((k, l)) => format!("axis {k} level {l}"),
                None => "components".to_string(),
            };
            let _ = writeln!(
                s,
                "step {}: {at}: input {} slice {} components {}: {}",
                verdict.step,
                verdict.input_cells,
                verdict.slice_cells,
                verdict.components,
                if verdict.passed() { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(s, "additivity: {}", if passed { "pass" } else { "FAIL" });
        s.push_str(&k0_table(&class));
        s
    };
    Ok(Outcome { text, ok: passed })
}
