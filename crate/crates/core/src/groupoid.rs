//! The action groupoid of conjugation: objects are group elements, a
//! morphism `a -> b` is a witness `g` with `g a g^-1 = b`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{GroupCtx, Radius};
use crate::word::Word;

/// A morphism `source -> target` with witness `g`, `g source g^-1 = target`.
///
/// The target is stored redundantly and re-validated after every operation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub source: Word,
    pub witness: Word,
    pub target: Word,
}

impl Morphism {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    pub fn validate(&self, ctx: &GroupCtx) -> Result<()> {
        let t = ctx.conjugate(&self.witness, &self.source)?;
        if t != self.target {
            return Err(Error::InvalidMorphism(format!(
                "{:?} conjugates {:?} to {:?}, not {:?}",
                self.witness, self.source, t, self.target
            )));
        }
        Ok(())
    }
}

pub fn make_morphism(ctx: &GroupCtx, a: &Word, g: &Word) -> Result<Morphism> {
    let source = ctx.normal_form(a)?;
    let witness = ctx.normal_form(g)?;
    let target = ctx.conjugate(&witness, &source)?;
    Ok(Morphism { source, witness, target })
}

/// `eta * xi`: first `xi`, then `eta`. Witness `eta.witness · xi.witness`.
pub fn compose(ctx: &GroupCtx, eta: &Morphism, xi: &Morphism) -> Result<Morphism> {
    if eta.source != xi.target {
        return Err(Error::NotComposable(format!(
            "target {:?} of the first morphism differs from source {:?} of the second",
            xi.target, eta.source
        )));
    }
    let m = Morphism {
        source: xi.source.clone(),
        witness: ctx.multiply(&eta.witness, &xi.witness)?,
        target: eta.target.clone(),
    };
    m.validate(ctx)?;
    Ok(m)
}

pub fn invert(ctx: &GroupCtx, xi: &Morphism) -> Result<Morphism> {
    let m = Morphism {
        source: xi.target.clone(),
        witness: ctx.inverse(&xi.witness)?,
        target: xi.source.clone(),
    };
    m.validate(ctx)?;
    Ok(m)
}

/// `H_g` restricted to the given objects.
pub fn fiber<'a>(ctx: &GroupCtx, g: &Word, objects: impl IntoIterator<Item = &'a Word>) -> Result<Vec<Morphism>> {
    objects.into_iter().map(|a| make_morphism(ctx, a, g)).collect()
}

/// Morphisms with both ends in the class fragment of `a` (conjugators of
/// length at most `object_radius`) and witnesses in the ball of radius
/// `witness_radius`, ordered by (source, witness).
pub fn component_morphisms(
    ctx: &GroupCtx,
    a: &Word,
    object_radius: impl Into<Radius>,
    witness_radius: impl Into<Radius>,
) -> Result<Vec<Morphism>> {
    let objects = ctx.conjugacy_class_ball(a, object_radius)?;
    let witnesses = ctx.ball(witness_radius)?;
    let mut out = Vec::new();
    for source in &objects {
        for g in &witnesses {
            let target = ctx.conjugate(g, source)?;
            if objects.contains(&target) {
                out.push(Morphism { source: source.clone(), witness: g.clone(), target });
                if out.len() > ctx.cap() {
                    return Err(Error::CapExceeded { cap: ctx.cap() });
                }
            }
        }
    }
    Ok(out)
}

/// Morphisms with sources in `objects` and witnesses in `witnesses`
/// (targets unrestricted).
pub fn morphisms_over<'a>(
    ctx: &GroupCtx,
    objects: impl IntoIterator<Item = &'a Word>,
    witnesses: &[Word],
) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for a in objects {
        for g in witnesses {
            out.push(Morphism { source: a.clone(), witness: g.clone(), target: ctx.conjugate(g, a)? });
            if out.len() > ctx.cap() {
                return Err(Error::CapExceeded { cap: ctx.cap() });
            }
        }
    }
    Ok(out)
}

/// An edge `b -> g b g^-1` of a conjugation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: Word,
    pub to: Word,
    /// The target lies outside the materialized vertex set.
    pub boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// Closed orbit entirely inside the vertex set.
    Cycle,
    /// An orbit segment that leaves the vertex set.
    Truncated,
}

impl PathKind {
    pub fn name(self) -> &'static str {
        match self {
            PathKind::Cycle => "cycle",
            PathKind::Truncated => "truncated",
        }
    }
}

/// One orbit of conjugation by the mover, as a chain of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPath {
    pub kind: PathKind,
    pub edges: Vec<Edge>,
    /// For truncated paths, the predecessor of the first vertex when it lies
    /// outside the vertex set.
    pub entry: Option<Word>,
}

/// The graph on a conjugacy-class fragment with edges `b -> g b g^-1`,
/// decomposed into orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjGraph {
    pub mover: Word,
    pub base: Word,
    pub vertices: BTreeSet<Word>,
    pub edges: Vec<Edge>,
    pub paths: Vec<OrbitPath>,
}

impl ConjGraph {
    pub fn cycles(&self) -> impl Iterator<Item = &OrbitPath> {
        self.paths.iter().filter(|p| p.kind == PathKind::Cycle)
    }

    pub fn truncated(&self) -> impl Iterator<Item = &OrbitPath> {
        self.paths.iter().filter(|p| p.kind == PathKind::Truncated)
    }
}

pub fn gamma_graph(ctx: &GroupCtx, g: &Word, a: &Word, object_radius: impl Into<Radius>) -> Result<ConjGraph> {
    let g = ctx.normal_form(g)?;
    let a = ctx.normal_form(a)?;
    let vertices = ctx.conjugacy_class_ball(&a, object_radius)?;
    let ginv = ctx.inverse(&g)?;
    let mut succ: BTreeMap<&Word, Word> = BTreeMap::new();
    let mut edges = Vec::with_capacity(vertices.len());
    for b in &vertices {
        let to = ctx.conjugate(&g, b)?;
        let boundary = !vertices.contains(&to);
        edges.push(Edge { from: b.clone(), to: to.clone(), boundary });
        succ.insert(b, to);
    }
    let has_pred: BTreeSet<&Word> = succ.values().filter_map(|t| vertices.get(t)).collect();

    let mut visited: BTreeSet<&Word> = BTreeSet::new();
    let mut paths = Vec::new();
    let edge_of = |b: &Word| Edge {
        from: b.clone(),
        to: succ[b].clone(),
        boundary: !vertices.contains(&succ[b]),
    };
    // Chains entering from outside the vertex set.
    for start in vertices.iter().filter(|v| !has_pred.contains(v)) {
        let mut path_edges = Vec::new();
        let mut cur = start;
        loop {
            visited.insert(cur);
            let e = edge_of(cur);
            let next = vertices.get(&e.to);
            path_edges.push(e);
            match next {
                Some(n) => cur = n,
                None => break,
            }
        }
        let entry = Some(ctx.conjugate(&ginv, start)?);
        paths.push(OrbitPath { kind: PathKind::Truncated, edges: path_edges, entry });
    }
    // Whatever remains lies on closed orbits.
    for start in &vertices {
        if visited.contains(start) {
            continue;
        }
        let mut path_edges = Vec::new();
        let mut cur = start;
        loop {
            visited.insert(cur);
            let e = edge_of(cur);
            let next = vertices.get(&e.to).expect("closed orbit stays inside");
            path_edges.push(e);
            if next == start {
                break;
            }
            cur = next;
        }
        paths.push(OrbitPath { kind: PathKind::Cycle, edges: path_edges, entry: None });
    }
    paths.sort_by(|p, q| p.edges[0].from.cmp(&q.edges[0].from));
    Ok(ConjGraph { mover: g, base: a, vertices, edges, paths })
}
