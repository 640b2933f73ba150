//! Graph and matrix exports: DOT for conjugation graphs, Matrix Market
//! coordinate text for constraint systems.

use std::fmt::Write as _;

use gderiv_core::constraints::{ConstraintSystem, Solution};
use gderiv_core::groupoid::{ConjGraph, PathKind};
use gderiv_core::text::render_word;
use gderiv_core::{GroupCtx, Word};
use serde_json::{json, Value};

use crate::format::{rational, SCHEMA_VERSION};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One cluster per orbit path. Boundary edges are dashed and lead to
/// dotted vertices outside the fragment.
pub fn conj_graph_dot(ctx: &GroupCtx, graph: &ConjGraph) -> String {
    let name = |w: &Word| quote(&render_word(ctx, w));
    let mut out = String::new();
    let _ = writeln!(
        out,
        "digraph gamma {{\n  label={};\n  node [shape=ellipse];",
        quote(&format!("conjugation by {} on the class of {}", render_word(ctx, &graph.mover), render_word(ctx, &graph.base)))
    );
    for (i, path) in graph.paths.iter().enumerate() {
        let kind = match path.kind {
            PathKind::Cycle => "cycle",
            PathKind::Truncated => "truncated",
        };
        let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label={};", quote(&format!("{kind} {i}")));
        for e in &path.edges {
            let _ = writeln!(out, "    {};", name(&e.from));
        }
        let _ = writeln!(out, "  }}");
    }
    for e in &graph.edges {
        if e.boundary {
            let _ = writeln!(out, "  {} [style=dotted];", name(&e.to));
            let _ = writeln!(out, "  {} -> {} [style=dashed];", name(&e.from), name(&e.to));
        } else {
            let _ = writeln!(out, "  {} -> {};", name(&e.from), name(&e.to));
        }
    }
    out.push_str("}\n");
    out
}

/// All rows, boundary rows included, in coordinate format with integer
/// entries. The legend tells them apart.
pub fn matrix_market(system: &ConstraintSystem) -> String {
    let nnz: usize = system.rows.iter().map(|r| r.entries.len()).sum();
    let integral = system.rows.iter().flat_map(|r| r.entries.values()).all(|c| c.is_integer());
    let field = if integral { "integer" } else { "rational" };
    let mut out = format!("%%MatrixMarket matrix coordinate {field} general\n");
    let boundary: Vec<String> = system
        .rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.boundary)
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    if !boundary.is_empty() {
        let _ = writeln!(out, "% boundary rows: {}", boundary.join(" "));
    }
    let _ = writeln!(out, "{} {} {}", system.rows.len(), system.unknowns.len(), nnz);
    for (i, row) in system.rows.iter().enumerate() {
        for (j, c) in &row.entries {
            let _ = writeln!(out, "{} {} {}", i + 1, j + 1, rational(c));
        }
    }
    out
}

/// Unknown and row indices (1-based, matching the matrix file).
pub fn legend(ctx: &GroupCtx, system: &ConstraintSystem) -> Value {
    let unknowns: Vec<Value> = system
        .unknowns
        .iter()
        .enumerate()
        .map(|(i, (obj, g))| {
            json!({
                "index": i + 1,
                "object": render_word(ctx, obj),
                "generator": ctx.name(*g).unwrap_or_default(),
            })
        })
        .collect();
    let rows: Vec<Value> = system
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "index": i + 1,
                "relator_index": r.relator_index,
                "relator": render_word(ctx, &r.relator),
                "object": render_word(ctx, &r.object),
                "boundary": r.boundary,
            })
        })
        .collect();
    json!({ "schema_version": SCHEMA_VERSION, "unknowns": unknowns, "rows": rows })
}

/// Basis vectors as sparse lists over the unknowns.
pub fn basis_json(ctx: &GroupCtx, system: &ConstraintSystem, solution: &Solution) -> Value {
    let basis: Vec<Value> = solution
        .basis
        .iter()
        .map(|v| {
            Value::Array(
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_integer() || *x.numer() != 0)
                    .map(|(i, x)| {
                        let (obj, g) = &system.unknowns[i];
                        json!({
                            "index": i + 1,
                            "object": render_word(ctx, obj),
                            "generator": ctx.name(*g).unwrap_or_default(),
                            "value": rational(x),
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "unknowns": system.unknowns.len(),
        "interior_rows": solution.interior_rows,
        "boundary_rows": solution.boundary_rows,
        "rank": solution.rank,
        "dimension": solution.dimension(),
        "basis": basis,
    })
}
