//! Shortest-path metric with exact rational lengths.

use crate::bits::{BitSet, TieKey};
use crate::graph::{EdgeId, PlanarGraph, Vertex};
use crate::rational::{rzero, Rat};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Nonnegative edge lengths indexed by edge id.
pub type LengthFunction = Vec<Rat>;

#[derive(Clone, Debug)]
pub struct Metric {
    pub n: usize,
    dist: Vec<Vec<Rat>>,
    parent: Vec<Vec<Option<(Vertex, EdgeId)>>>,
}

impl Metric {
    pub fn dist(&self, u: Vertex, v: Vertex) -> &Rat {
        &self.dist[u][v]
    }

    /// Edge ids of a shortest u-v path.
    pub fn path(&self, u: Vertex, v: Vertex) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut cur = v;
        while cur != u {
            let (p, e) = self.parent[u][cur].expect("disconnected pair");
            out.push(e);
            cur = p;
        }
        out.reverse();
        out
    }
}

/// All-pairs shortest paths; exact rational Dijkstra from every source.
pub fn shortest_path_metric(g: &PlanarGraph, l: &LengthFunction) -> Metric {
    let n = g.vertex_count();
    let mut dist = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    for s in 0..n {
        let (d, p) = dijkstra(g, l, s);
        dist.push(d);
        parent.push(p);
    }
    Metric { n, dist, parent }
}

pub fn dijkstra(
    g: &PlanarGraph,
    l: &LengthFunction,
    src: Vertex,
) -> (Vec<Rat>, Vec<Option<(Vertex, EdgeId)>>) {
    let n = g.vertex_count();
    let mut dist: Vec<Option<Rat>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut heap: BinaryHeap<Reverse<(Rat, usize)>> = BinaryHeap::new();
    dist[src] = Some(rzero());
    heap.push(Reverse((rzero(), src)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v].as_ref() != Some(&d) {
            continue;
        }
        for (w, e) in g.neighbors(v) {
            let nd = &d + &l[e];
            if dist[w].as_ref().map_or(true, |cur| nd < *cur) {
                dist[w] = Some(nd.clone());
                parent[w] = Some((v, e));
                heap.push(Reverse((nd, w)));
            }
        }
    }
    (
        dist.into_iter()
            .map(|d| d.expect("graph must be connected"))
            .collect(),
        parent,
    )
}

/// Dijkstra with a deterministic tie-break emulating the infinitesimal
/// perturbation `l(e) + eps^(e+1)`: among equal-length paths the one whose
/// edge set is smallest under [`TieKey`] wins. Used to pick canonical
/// shortest paths for support-region construction.
pub fn dijkstra_canonical(
    g: &PlanarGraph,
    l: &LengthFunction,
    src: Vertex,
) -> (Vec<Rat>, Vec<Option<(Vertex, EdgeId)>>, Vec<TieKey>) {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut dist: Vec<Option<(Rat, TieKey)>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut heap: BinaryHeap<Reverse<(Rat, TieKey, usize)>> = BinaryHeap::new();
    let zero = (rzero(), TieKey(BitSet::new(m)));
    dist[src] = Some(zero.clone());
    heap.push(Reverse((zero.0, zero.1, src)));
    while let Some(Reverse((d, t, v))) = heap.pop() {
        match &dist[v] {
            Some((bd, bt)) if *bd == d && *bt == t => {}
            _ => continue,
        }
        for (w, e) in g.neighbors(v) {
            let nd = &d + &l[e];
            let mut nt = t.clone();
            nt.0.insert(e);
            let better = match &dist[w] {
                None => true,
                Some((bd, bt)) => (nd.clone(), nt.clone()) < (bd.clone(), bt.clone()),
            };
            if better {
                dist[w] = Some((nd.clone(), nt.clone()));
                parent[w] = Some((v, e));
                heap.push(Reverse((nd, nt, w)));
            }
        }
    }
    let mut ds = Vec::with_capacity(n);
    let mut ts = Vec::with_capacity(n);
    for d in dist {
        let (d, t) = d.expect("graph must be connected");
        ds.push(d);
        ts.push(t);
    }
    (ds, parent, ts)
}

/// Exhaustive simple-path search; test oracle for small graphs.
pub fn brute_force_distance(g: &PlanarGraph, l: &LengthFunction, u: Vertex, v: Vertex) -> Option<Rat> {
    fn rec(
        g: &PlanarGraph,
        l: &LengthFunction,
        cur: Vertex,
        goal: Vertex,
        visited: &mut Vec<bool>,
        acc: Rat,
        best: &mut Option<Rat>,
    ) {
        if cur == goal {
            if best.as_ref().map_or(true, |b| acc < *b) {
                *best = Some(acc);
            }
            return;
        }
        for (w, e) in g.neighbors(cur) {
            if !visited[w] {
                visited[w] = true;
                rec(g, l, w, goal, visited, &acc + &l[e], best);
                visited[w] = false;
            }
        }
    }
    let mut visited = vec![false; g.vertex_count()];
    visited[u] = true;
    let mut best = None;
    rec(g, l, u, v, &mut visited, rzero(), &mut best);
    best
}

pub fn unit_lengths(g: &PlanarGraph) -> LengthFunction {
    vec![crate::rational::rone(); g.edge_count()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle_graph, k23_graph, random_planar};
    use crate::rational::{rat, rint};

    #[test]
    fn four_cycle_antipode() {
        let g = cycle_graph(4);
        let m = shortest_path_metric(&g, &unit_lengths(&g));
        assert_eq!(*m.dist(0, 2), rint(2));
        assert_eq!(*m.dist(1, 3), rint(2));
        assert_eq!(*m.dist(0, 0), rint(0));
    }

    #[test]
    fn k23_distances() {
        let g = k23_graph();
        let m = shortest_path_metric(&g, &unit_lengths(&g));
        // degree-3 vertices 0,1 and degree-2 vertices 2,3,4
        assert_eq!(*m.dist(0, 1), rint(2));
        assert_eq!(*m.dist(2, 3), rint(2));
        assert_eq!(*m.dist(2, 4), rint(2));
    }

    #[test]
    fn metric_axioms_and_path_reconstruction() {
        let g = k23_graph();
        let l: LengthFunction = (0..g.edge_count()).map(|e| rat(e as i64 + 1, 2)).collect();
        let m = shortest_path_metric(&g, &l);
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                assert_eq!(m.dist(u, v), m.dist(v, u));
                for w in 0..n {
                    assert!(m.dist(u, v) <= &(m.dist(u, w) + m.dist(w, v)));
                }
                if u != v {
                    let p = m.path(u, v);
                    let total: Rat = p.iter().map(|&e| l[e].clone()).sum();
                    assert_eq!(&total, m.dist(u, v));
                }
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_random_planar() {
        for seed in 0..4u64 {
            let (g, l) = random_planar(10, seed, true);
            let m = shortest_path_metric(&g, &l);
            for u in 0..g.vertex_count() {
                for v in (u + 1)..g.vertex_count() {
                    let bf = brute_force_distance(&g, &l, u, v).unwrap();
                    assert_eq!(*m.dist(u, v), bf, "pair ({u},{v}) seed {seed}");
                }
            }
        }
    }

    #[test]
    fn canonical_tiebreak_is_deterministic() {
        let g = cycle_graph(6);
        let l = unit_lengths(&g);
        // antipodal pair has two equal-length paths; the tie-break picks one
        let (d1, p1, _) = dijkstra_canonical(&g, &l, 0);
        let (d2, p2, _) = dijkstra_canonical(&g, &l, 0);
        assert_eq!(d1, d2);
        let path_of = |p: &Vec<Option<(usize, usize)>>| {
            let mut cur = 3;
            let mut es = vec![];
            while cur != 0 {
                let (pv, e) = p[cur].unwrap();
                es.push(e);
                cur = pv;
            }
            es
        };
        assert_eq!(path_of(&p1), path_of(&p2));
    }
}
