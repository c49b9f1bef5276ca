//! Central cuts (both sides connected) enumerated as simple circuits of
//! the planar dual, and cut-condition checking against a demand set.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, PlanarGraph, Vertex};
use crate::metric::LengthFunction;
use crate::rational::{format_rat, rzero, Rat};

#[derive(Clone, Debug)]
pub struct CentralCut {
    /// Vertex side not containing vertex 0.
    pub side: BitSet,
    /// Edges crossing the cut; equals the primal preimage of a simple dual circuit.
    pub edges: BitSet,
}

/// Default cap on the number of enumerated cuts.
pub const DEFAULT_CUT_CAP: usize = 1_000_000;

/// Enumerate every central cut of a connected plane graph: bridges are
/// singleton cuts; every other central cut is the primal preimage of a
/// simple circuit in the dual of one bridgeless piece. Errors with
/// `InstanceTooLarge` past `cap`.
pub fn enumerate_central_cuts(g: &PlanarGraph, cap: usize) -> Result<Vec<CentralCut>> {
    let bridges: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&e| {
            let removed = BitSet::from_iter(g.edge_count(), [e]);
            g.components_without_edges(&removed).0 == 2
        })
        .collect();
    if bridges.is_empty() {
        return enumerate_bridgeless(g, cap, &mut Vec::new());
    }
    let mut out = Vec::new();
    for &e in &bridges {
        push_cut(g, &[e], &mut out, cap)?;
    }
    // bonds with >= 2 edges live inside one bridgeless piece; enumerate
    // each piece's dual circuits and lift the sides back to g
    let bridge_set = BitSet::from_iter(g.edge_count(), bridges.iter().copied());
    let (_, comp) = g.components_without_edges(&bridge_set);
    let mut pieces: std::collections::BTreeMap<usize, Vec<EdgeId>> = Default::default();
    for e in 0..g.edge_count() {
        if bridge_set.contains(e) {
            continue;
        }
        let (u, _) = g.endpoints(e);
        pieces.entry(comp[u]).or_default().push(e);
    }
    for es in pieces.values() {
        let (sub, map) = g.subgraph_from_edges(es)?;
        let remaining = cap.saturating_sub(out.len());
        let sub_cuts = enumerate_bridgeless(&sub, remaining, &mut Vec::new())?;
        for sc in sub_cuts {
            let edges: Vec<EdgeId> = sc.edges.iter().map(|se| map.sub_to_edge[se]).collect();
            push_cut(g, &edges, &mut out, cap)?;
        }
    }
    Ok(out)
}

fn enumerate_bridgeless(
    g: &PlanarGraph,
    cap: usize,
    _scratch: &mut Vec<usize>,
) -> Result<Vec<CentralCut>> {
    if g.edge_count() == 0 {
        return Ok(Vec::new());
    }
    let dual = g.dual()?;
    let mut out = Vec::new();
    let nf = dual.vertex_count();

    // adjacency grouped by neighbor, with parallel edge lists
    let mut adj: Vec<Vec<(Vertex, Vec<EdgeId>)>> = vec![Vec::new(); nf];
    for v in 0..nf {
        let mut by_nbr: std::collections::BTreeMap<Vertex, Vec<EdgeId>> = Default::default();
        for (w, e) in dual.neighbors(v) {
            by_nbr.entry(w).or_default().push(e);
        }
        for es in by_nbr.values_mut() {
            es.sort_unstable();
            es.dedup();
        }
        adj[v] = by_nbr.into_iter().collect();
    }

    // 2-circuits from parallel edges
    for v in 0..nf {
        for (w, es) in &adj[v] {
            if *w < v {
                continue;
            }
            for i in 0..es.len() {
                for j in (i + 1)..es.len() {
                    push_cut(g, &[es[i], es[j]], &mut out, cap)?;
                }
            }
        }
    }

    // vertex-simple circuits of length >= 3: DFS with pivot = minimum vertex
    for s in 0..nf {
        let mut path: Vec<Vertex> = vec![s];
        let mut on_path = vec![false; nf];
        on_path[s] = true;
        dfs_cycles(g, &dual, &adj, s, s, &mut path, &mut on_path, &mut out, cap)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs_cycles(
    g: &PlanarGraph,
    dual: &PlanarGraph,
    adj: &[Vec<(Vertex, Vec<EdgeId>)>],
    s: Vertex,
    v: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut Vec<bool>,
    out: &mut Vec<CentralCut>,
    cap: usize,
) -> Result<()> {
    for (w, _) in &adj[v] {
        let w = *w;
        if w < s {
            continue;
        }
        if w == s {
            // close a cycle of length >= 3, canonical direction
            if path.len() >= 3 && path[1] < *path.last().unwrap() {
                emit_cycle_combinations(g, adj, path, out, cap)?;
            }
            continue;
        }
        if on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        dfs_cycles(g, dual, adj, s, w, path, on_path, out, cap)?;
        path.pop();
        on_path[w] = false;
    }
    Ok(())
}

/// For a vertex cycle, emit one cut per combination of parallel-edge choices.
fn emit_cycle_combinations(
    g: &PlanarGraph,
    adj: &[Vec<(Vertex, Vec<EdgeId>)>],
    cycle: &[Vertex],
    out: &mut Vec<CentralCut>,
    cap: usize,
) -> Result<()> {
    let k = cycle.len();
    let mut choices: Vec<&[EdgeId]> = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (cycle[i], cycle[(i + 1) % k]);
        let es = adj[a]
            .iter()
            .find(|(w, _)| *w == b)
            .map(|(_, es)| es.as_slice())
            .expect("cycle edge must exist");
        choices.push(es);
    }
    let mut idx = vec![0usize; k];
    loop {
        let edges: Vec<EdgeId> = (0..k).map(|i| choices[i][idx[i]]).collect();
        push_cut(g, &edges, out, cap)?;
        // odometer
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(());
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn push_cut(g: &PlanarGraph, edges: &[EdgeId], out: &mut Vec<CentralCut>, cap: usize) -> Result<()> {
    if out.len() >= cap {
        return Err(Error::InstanceTooLarge(format!(
            "central cut enumeration exceeded the cap of {cap}"
        )));
    }
    let edge_set = BitSet::from_iter(g.edge_count(), edges.iter().copied());
    let (ncomp, comp) = g.components_without_edges(&edge_set);
    debug_assert_eq!(ncomp, 2, "a simple dual circuit must split the primal into 2 parts");
    if ncomp != 2 {
        return Err(Error::Internal("dual circuit did not induce a 2-part cut".into()));
    }
    let other = comp[0] ^ 1;
    let side = BitSet::from_iter(
        g.vertex_count(),
        (0..g.vertex_count()).filter(|&v| comp[v] == other),
    );
    out.push(CentralCut { side, edges: edge_set });
    Ok(())
}

#[derive(Clone, Debug)]
pub enum CutCheck {
    Holds,
    Violated {
        side: Vec<Vertex>,
        capacity: Rat,
        demand: Rat,
    },
}

/// Check the cut condition over all central cuts (Lemma: central cuts
/// suffice). Returns the first violating central set, if any.
pub fn check_cut_condition(
    g: &PlanarGraph,
    capacities: &LengthFunction,
    demands: &[(Vertex, Vertex, Rat)],
    cap: usize,
) -> Result<CutCheck> {
    let cuts = enumerate_central_cuts(g, cap)?;
    for cut in &cuts {
        let capacity: Rat = cut.edges.iter().map(|e| capacities[e].clone()).sum();
        let mut dem = rzero();
        for (u, v, val) in demands {
            if cut.side.separates(*u, *v) {
                dem += val;
            }
        }
        if capacity < dem {
            return Ok(CutCheck::Violated {
                side: cut.side.iter().collect(),
                capacity,
                demand: dem,
            });
        }
    }
    Ok(CutCheck::Holds)
}

/// Convenience: map a violation to the error type used by routing.
pub fn cut_check_to_error(check: &CutCheck) -> Option<Error> {
    match check {
        CutCheck::Holds => None,
        CutCheck::Violated { side, capacity, demand } => Some(Error::CutConditionViolated {
            witness: side.clone(),
            capacity: format_rat(capacity),
            demand: format_rat(demand),
        }),
    }
}
