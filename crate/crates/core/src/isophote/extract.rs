//! Level-set extraction of `g = c` by marching squares with Newton refinement.
//!
//! Cell scanning and vertex refinement run through [`Exec`]; chaining is a
//! single ordered pass over edge keys, so output order never depends on the
//! worker count.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::exec::Exec;
use crate::lorentz::{angle_invariant, AngleKind};
use crate::surface::{Domain, FieldGrid, IsophoteField};
use crate::tolerances::Tolerances;

const MAX_NEWTON: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub u: f64,
    pub v: f64,
    pub g: f64,
}

/// One connected component of `g = c` in parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct IsophoteCurve {
    pub vertices: Vec<Vertex>,
    pub c: f64,
    pub kind: Option<AngleKind>,
    /// The last vertex connects back to the first.
    pub closed: bool,
    /// `max |g - c|` over the vertices.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub curves: Vec<IsophoteCurve>,
    /// Cells with a lightlike or degenerate corner.
    pub skipped_cells: usize,
    /// Vertices dropped as critical or unconverged.
    pub dropped_vertices: usize,
}

/// Grid edge from node `(i, j)` to `(i+1, j)` (`U`) or `(i, j+1)` (`V`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Edge {
    U(usize, usize),
    V(usize, usize),
}

struct Axis {
    n: usize,
    dom: Domain,
}

impl Axis {
    fn cells(&self) -> usize {
        if self.dom.periodic {
            self.n
        } else {
            self.n - 1
        }
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % self.n
    }

    fn step(&self, xs: &[f64], i: usize) -> f64 {
        if i + 1 < self.n {
            xs[i + 1] - xs[i]
        } else {
            self.dom.min + self.dom.span() - xs[i]
        }
    }
}

type CellSegments = Vec<(Edge, Edge)>;

fn cell_segments(grid: &FieldGrid, ua: &Axis, va: &Axis, i: usize, j: usize, c: f64) -> Option<CellSegments> {
    let (i1, j1) = (ua.next(i), va.next(j));
    let g = [grid.at(i, j)?, grid.at(i1, j)?, grid.at(i1, j1)?, grid.at(i, j1)?];
    let above = g.map(|x| x >= c);
    // bottom, right, top, left
    let edges = [Edge::U(i, j), Edge::V(i1, j), Edge::U(i, j1), Edge::V(i, j)];
    let crossed: Vec<usize> = (0..4).filter(|&k| above[k] != above[(k + 1) % 4]).collect();
    let mut out = Vec::new();
    match crossed.len() {
        2 => out.push((edges[crossed[0]], edges[crossed[1]])),
        4 => {
            let centre = (g.iter().sum::<f64>() / 4.0) >= c;
            // isolate each corner whose state differs from the centre
            for k in 0..4 {
                if above[k] != centre {
                    out.push((edges[(k + 3) % 4], edges[k]));
                }
            }
        }
        _ => {}
    }
    Some(out)
}

fn edge_point(grid: &FieldGrid, ua: &Axis, va: &Axis, e: Edge, c: f64) -> (f64, f64) {
    let (i, j, di, dj) = match e {
        Edge::U(i, j) => (i, j, ua.step(&grid.us, i), 0.0),
        Edge::V(i, j) => (i, j, 0.0, va.step(&grid.vs, j)),
    };
    let (i1, j1) = match e {
        Edge::U(..) => (ua.next(i), j),
        Edge::V(..) => (i, va.next(j)),
    };
    let (ga, gb) = (grid.at(i, j).unwrap_or(c), grid.at(i1, j1).unwrap_or(c));
    let t = if gb == ga { 0.5 } else { ((c - ga) / (gb - ga)).clamp(0.0, 1.0) };
    (grid.us[i] + t * di, grid.vs[j] + t * dj)
}

/// Orders segments into polylines: open chains from degree-one edges first,
/// then the remaining cycles.
fn chain(segments: &[(Edge, Edge)]) -> Vec<(Vec<Edge>, bool)> {
    let mut adj: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    for &(a, b) in segments {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for v in adj.values_mut() {
        v.sort();
    }
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    let mut out = Vec::new();
    let walk = |start: Edge, seen: &mut BTreeSet<Edge>| -> Vec<Edge> {
        let mut path = vec![start];
        seen.insert(start);
        let mut cur = start;
        while let Some(&next) = adj[&cur].iter().find(|e| !seen.contains(e)) {
            seen.insert(next);
            path.push(next);
            cur = next;
        }
        path
    };
    let starts: Vec<Edge> = adj.iter().filter(|(_, n)| n.len() == 1).map(|(e, _)| *e).collect();
    for e in starts {
        if !seen.contains(&e) {
            out.push((walk(e, &mut seen), false));
        }
    }
    let rest: Vec<Edge> = adj.keys().copied().collect();
    for e in rest {
        if !seen.contains(&e) {
            let path = walk(e, &mut seen);
            let closed = path.len() > 2 && adj[path.last().unwrap_or(&e)].contains(&e);
            out.push((path, closed));
        }
    }
    out
}

/// Newton projection onto `g = c` along the gradient; `None` at critical
/// points, outside the domain, or without convergence.
fn refine(field: &IsophoteField, c: f64, mut u: f64, mut v: f64, tol: &Tolerances) -> Option<Vertex> {
    let (du, dv) = (&field.surface.u, &field.surface.v);
    for _ in 0..MAX_NEWTON {
        let g = field.value(u, v).ok()?;
        let r = g - c;
        if r.abs() <= tol.refine {
            let (gu, gv) = field.gradient(u, v).ok()?;
            if gu.hypot(gv) < tol.grad {
                return None;
            }
            return Some(Vertex { u: du.wrap(u), v: dv.wrap(v), g });
        }
        let (gu, gv) = field.gradient(u, v).ok()?;
        let n2 = gu * gu + gv * gv;
        if n2.sqrt() < tol.grad {
            return None;
        }
        u -= r * gu / n2;
        v -= r * gv / n2;
        let slack = |d: &Domain| 1e-9 * (1.0 + d.span());
        if (!du.periodic && (u < du.min - slack(du) || u > du.max + slack(du)))
            || (!dv.periodic && (v < dv.min - slack(dv) || v > dv.max + slack(dv)))
        {
            return None;
        }
        u = if du.periodic { u } else { u.clamp(du.min, du.max) };
        v = if dv.periodic { v } else { v.clamp(dv.min, dv.max) };
    }
    None
}

/// Extracts the components of `g = c` on an `nu x nv` grid.
pub fn extract_isophotes(
    field: &IsophoteField,
    c: f64,
    nu: usize,
    nv: usize,
    tol: &Tolerances,
    exec: Exec,
) -> Result<Extraction> {
    let (nu, nv) = (nu.max(2), nv.max(2));
    let grid = field.sample_grid(nu, nv, exec);
    let ua = Axis { n: nu, dom: field.surface.u };
    let va = Axis { n: nv, dom: field.surface.v };
    let (cu, cv) = (ua.cells(), va.cells());
    let cells = exec.map_range(cu * cv, |k| cell_segments(&grid, &ua, &va, k / cv, k % cv, c));
    let skipped_cells = cells.iter().filter(|s| s.is_none()).count();
    let segments: Vec<(Edge, Edge)> = cells.into_iter().flatten().flatten().collect();

    let chains = chain(&segments);
    let flat: Vec<Edge> = chains.iter().flat_map(|(p, _)| p.iter().copied()).collect();
    let refined = exec.map(&flat, |&e| {
        let (u, v) = edge_point(&grid, &ua, &va, e, c);
        refine(field, c, u, v, tol)
    });

    let kind_of = |vx: &Vertex| {
        let n = field.surface.normal(vx.u, vx.v, tol).ok()?.1;
        angle_invariant(n, field.d, tol.causal).ok().map(|a| a.kind)
    };
    let mut curves = Vec::new();
    let mut dropped_vertices = 0;
    let mut offset = 0;
    for (path, closed) in chains {
        let verts = &refined[offset..offset + path.len()];
        offset += path.len();
        dropped_vertices += verts.iter().filter(|v| v.is_none()).count();
        let pieces: Vec<(Vec<Vertex>, bool)> = match verts.iter().position(Option::is_none) {
            None => vec![(verts.iter().flatten().copied().collect(), closed)],
            Some(first_bad) => {
                // rotate closed chains so a break sits at the seam
                let order: Vec<Option<Vertex>> = if closed {
                    verts[first_bad..].iter().chain(&verts[..first_bad]).copied().collect()
                } else {
                    verts.to_vec()
                };
                order
                    .split(Option::is_none)
                    .map(|run| (run.iter().flatten().copied().collect::<Vec<_>>(), false))
                    .collect()
            }
        };
        for (vertices, closed) in pieces {
            if vertices.len() < 2 {
                continue;
            }
            let residual = vertices.iter().map(|x| (x.g - c).abs()).fold(0.0, f64::max);
            let kind = kind_of(&vertices[0]);
            curves.push(IsophoteCurve { vertices, c, kind, closed, residual });
        }
    }
    Ok(Extraction { curves, skipped_cells, dropped_vertices })
}
