//! Combinatorial planar multigraphs given by a rotation system.
//!
//! An edge `e` owns two darts `2e` and `2e+1` (one per endpoint). The
//! rotation lists the darts leaving each vertex in clockwise order; faces
//! are derived by next-dart traversal and validated with Euler's formula.

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;
pub type Dart = usize;
pub type FaceId = usize;

#[derive(Clone, Debug)]
pub struct Face {
    /// Darts in traversal order; the origin of each dart is a cycle vertex.
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct PlanarGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    rotation: Vec<Vec<Dart>>,
    faces: Vec<Face>,
    dart_face: Vec<FaceId>,
    outer_face: FaceId,
}

pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

impl PlanarGraph {
    /// Build from an edge list and rotation system; traverses faces and
    /// validates Euler's formula and connectivity.
    pub fn new(
        n: usize,
        edges: Vec<(Vertex, Vertex)>,
        rotation: Vec<Vec<Dart>>,
    ) -> Result<PlanarGraph> {
        if rotation.len() != n {
            return Err(Error::Parse(format!(
                "rotation has {} entries for {} vertices",
                rotation.len(),
                n
            )));
        }
        for (u, v) in &edges {
            if *u >= n || *v >= n {
                return Err(Error::Parse(format!("edge endpoint out of range: ({u},{v})")));
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop at vertex {u}")));
            }
        }
        // Each dart must appear exactly once, at its origin vertex.
        let mut seen = vec![false; 2 * edges.len()];
        for (v, darts) in rotation.iter().enumerate() {
            for &d in darts {
                if d >= 2 * edges.len() {
                    return Err(Error::Parse(format!("dart {d} out of range")));
                }
                let e = d / 2;
                let origin = if d % 2 == 0 { edges[e].0 } else { edges[e].1 };
                if origin != v {
                    return Err(Error::Parse(format!(
                        "dart {d} listed at vertex {v} but originates at {origin}"
                    )));
                }
                if seen[d] {
                    return Err(Error::Parse(format!("dart {d} listed twice")));
                }
                seen[d] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Parse("rotation is missing darts".into()));
        }

        let mut g = PlanarGraph {
            n,
            edges,
            rotation,
            faces: Vec::new(),
            dart_face: Vec::new(),
            outer_face: 0,
        };
        g.traverse_faces();

        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let euler = n as i64 - g.edges.len() as i64 + g.faces.len() as i64;
        if euler != 2 {
            return Err(Error::NonPlanarRotation { euler });
        }
        // Default outer face: longest boundary, ties by lowest id.
        let outer = (0..g.faces.len())
            .max_by_key(|&f| (g.faces[f].len(), usize::MAX - f))
            .unwrap_or(0);
        g.outer_face = outer;
        Ok(g)
    }

    /// Build the rotation system from straight-line coordinates by sorting
    /// darts clockwise around each vertex.
    pub fn from_coords(
        n: usize,
        edges: Vec<(Vertex, Vertex)>,
        coords: &[(f64, f64)],
    ) -> Result<PlanarGraph> {
        if coords.len() != n {
            return Err(Error::Parse("coords length != n".into()));
        }
        let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            rotation[u].push(2 * e);
            rotation[v].push(2 * e + 1);
        }
        for (v, darts) in rotation.iter_mut().enumerate() {
            let (vx, vy) = coords[v];
            darts.sort_by(|&a, &b| {
                let head = |d: Dart| {
                    let e = d / 2;
                    if d % 2 == 0 {
                        edges[e].1
                    } else {
                        edges[e].0
                    }
                };
                let (ax, ay) = coords[head(a)];
                let (bx, by) = coords[head(b)];
                let ang = |x: f64, y: f64| (y - vy).atan2(x - vx);
                ang(bx, by)
                    .partial_cmp(&ang(ax, ay))
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            });
        }
        PlanarGraph::new(n, edges, rotation)
    }

    fn traverse_faces(&mut self) {
        let nd = 2 * self.edges.len();
        // Successor of a dart in the rotation at its origin.
        let mut rot_next = vec![0usize; nd];
        for darts in &self.rotation {
            for (i, &d) in darts.iter().enumerate() {
                rot_next[d] = darts[(i + 1) % darts.len()];
            }
        }
        self.dart_face = vec![usize::MAX; nd];
        self.faces.clear();
        for start in 0..nd {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let fid = self.faces.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                self.dart_face[d] = fid;
                cycle.push(d);
                d = rot_next[twin(d)];
                if d == start {
                    break;
                }
            }
            self.faces.push(Face { darts: cycle });
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn rotation(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer_face
    }

    pub fn set_outer_face(&mut self, f: FaceId) {
        assert!(f < self.faces.len());
        self.outer_face = f;
    }

    pub fn dart_origin(&self, d: Dart) -> Vertex {
        let e = d / 2;
        if d % 2 == 0 {
            self.edges[e].0
        } else {
            self.edges[e].1
        }
    }

    pub fn dart_head(&self, d: Dart) -> Vertex {
        self.dart_origin(twin(d))
    }

    pub fn dart_face(&self, d: Dart) -> FaceId {
        self.dart_face[d]
    }

    /// The two faces bordering an edge (equal only for bridges).
    pub fn edge_faces(&self, e: EdgeId) -> (FaceId, FaceId) {
        (self.dart_face[2 * e], self.dart_face[2 * e + 1])
    }

    /// Vertices around a face, in traversal order (may repeat on
    /// non-simple face boundaries).
    pub fn face_vertices(&self, f: FaceId) -> Vec<Vertex> {
        self.faces[f].darts.iter().map(|&d| self.dart_origin(d)).collect()
    }

    /// Distinct vertices on a face, sorted.
    pub fn face_vertex_set(&self, f: FaceId) -> Vec<Vertex> {
        let mut vs = self.face_vertices(f);
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn face_edges(&self, f: FaceId) -> Vec<EdgeId> {
        let mut es: Vec<EdgeId> = self.faces[f].darts.iter().map(|&d| d / 2).collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn incident_darts(&self, v: Vertex) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        self.rotation[v].iter().map(move |&d| (self.dart_head(d), d / 2))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.rotation[v] {
                let w = self.dart_head(d);
                if !seen[w] {
                    seen[w] = true;
                    cnt += 1;
                    stack.push(w);
                }
            }
        }
        cnt == self.n
    }

    /// Connected components of the graph with `removed_edges` deleted,
    /// as a vertex -> component-id labeling.
    pub fn components_without_edges(&self, removed_edges: &crate::bits::BitSet) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n];
        let mut ncomp = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = ncomp;
            ncomp += 1;
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &d in &self.rotation[v] {
                    if removed_edges.contains(d / 2) {
                        continue;
                    }
                    let w = self.dart_head(d);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
        }
        (ncomp, comp)
    }

    /// Face whose vertex cycle matches `cycle` up to rotation and direction.
    pub fn face_matching_cycle(&self, cycle: &[Vertex]) -> Option<FaceId> {
        'faces: for f in 0..self.faces.len() {
            let vs = self.face_vertices(f);
            if vs.len() != cycle.len() {
                continue;
            }
            let k = vs.len();
            for dir in [false, true] {
                for shift in 0..k {
                    let ok = (0..k).all(|i| {
                        let j = if dir { (shift + k - i) % k } else { (shift + i) % k };
                        vs[j] == cycle[i]
                    });
                    if ok {
                        return Some(f);
                    }
                }
            }
            continue 'faces;
        }
        None
    }

    /// Planar dual: one vertex per face, one edge per primal edge (ids are
    /// shared), rotation induced by the face traversal order.
    pub fn dual(&self) -> Result<PlanarGraph> {
        let nf = self.faces.len();
        let edges: Vec<(Vertex, Vertex)> = (0..self.edges.len())
            .map(|e| (self.dart_face[2 * e], self.dart_face[2 * e + 1]))
            .collect();
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                return Err(Error::Internal(format!(
                    "bridge edge {e} would create a dual self-loop; preprocess to 2-connected first"
                )));
            }
        }
        let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); nf];
        for (f, face) in self.faces.iter().enumerate() {
            for &d in &face.darts {
                let e = d / 2;
                // dual dart whose origin is face f
                let dd = if self.dart_face[2 * e] == f && d == 2 * e {
                    2 * e
                } else {
                    2 * e + 1
                };
                rotation[f].push(dd);
            }
        }
        PlanarGraph::new(nf, edges, rotation)
    }

    /// Replace vertex `v` by `deg(v)` degree-one vertices, one per incident
    /// dart in rotation order. The k-th pendant takes the k-th dart; the
    /// first pendant reuses id `v`, the rest are appended.
    ///
    /// Returns the new graph and the pendant ids in rotation order.
    pub fn split_vertex(&self, v: Vertex) -> Result<(PlanarGraph, Vec<Vertex>)> {
        let deg = self.degree(v);
        if deg == 0 {
            return Err(Error::Internal("cannot split isolated vertex".into()));
        }
        let mut edges = self.edges.clone();
        let mut rotation: Vec<Vec<Dart>> = self.rotation.clone();
        let mut pendant_ids = Vec::with_capacity(deg);
        let darts_at_v = self.rotation[v].clone();
        rotation[v] = Vec::new();
        let mut next_id = self.n;
        for (k, &d) in darts_at_v.iter().enumerate() {
            let id = if k == 0 {
                v
            } else {
                let id = next_id;
                next_id += 1;
                rotation.push(Vec::new());
                id
            };
            pendant_ids.push(id);
            let e = d / 2;
            if d % 2 == 0 {
                edges[e].0 = id;
            } else {
                edges[e].1 = id;
            }
            rotation[id] = vec![d];
        }
        let g = PlanarGraph::new(next_id, edges, rotation)?;
        Ok((g, pendant_ids))
    }

    /// Sub-embedding induced by a subset of edges. Vertices not covered by
    /// any kept edge are dropped; ids are remapped densely.
    pub fn subgraph_from_edges(&self, keep: &[EdgeId]) -> Result<(PlanarGraph, SubMap)> {
        let mut keep_flag = vec![false; self.edges.len()];
        for &e in keep {
            keep_flag[e] = true;
        }
        let mut vertex_to_sub = vec![None; self.n];
        let mut sub_to_vertex = Vec::new();
        for v in 0..self.n {
            if self.rotation[v].iter().any(|&d| keep_flag[d / 2]) {
                vertex_to_sub[v] = Some(sub_to_vertex.len());
                sub_to_vertex.push(v);
            }
        }
        let mut edge_to_sub = vec![None; self.edges.len()];
        let mut sub_to_edge = Vec::new();
        let mut edges = Vec::new();
        for e in 0..self.edges.len() {
            if keep_flag[e] {
                edge_to_sub[e] = Some(sub_to_edge.len());
                sub_to_edge.push(e);
                let (u, v) = self.edges[e];
                edges.push((vertex_to_sub[u].unwrap(), vertex_to_sub[v].unwrap()));
            }
        }
        let mut rotation = vec![Vec::new(); sub_to_vertex.len()];
        for (v, &sv) in vertex_to_sub.iter().enumerate().filter_map(|(v, m)| m.as_ref().map(|s| (v, s))) {
            for &d in &self.rotation[v] {
                let e = d / 2;
                if let Some(se) = edge_to_sub[e] {
                    rotation[sv].push(2 * se + (d % 2));
                }
            }
        }
        let g = PlanarGraph::new(sub_to_vertex.len(), edges, rotation)?;
        Ok((
            g,
            SubMap {
                vertex_to_sub,
                sub_to_vertex,
                edge_to_sub,
                sub_to_edge,
            },
        ))
    }

    /// Replace each edge `e` by a path of `counts[e] >= 1` edges. Original
    /// vertices keep their ids; subdivision vertices are appended.
    pub fn subdivide(&self, counts: &[usize], vertex_cap: usize) -> Result<(PlanarGraph, SubdivMap)> {
        assert_eq!(counts.len(), self.edges.len());
        let extra: usize = counts.iter().map(|&c| c.saturating_sub(1)).sum();
        if self.n + extra > vertex_cap {
            return Err(Error::SubdivisionOverflow { cap: vertex_cap });
        }
        let mut edges = Vec::new();
        let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); self.n + extra];
        let mut next_v = self.n;
        // first/last sub-edge dart replacing each original dart
        let mut dart_repl = vec![0usize; 2 * self.edges.len()];
        let mut sub_edge_of = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let c = counts[e].max(1);
            let mut chain = vec![u];
            for _ in 0..c - 1 {
                chain.push(next_v);
                next_v += 1;
            }
            chain.push(v);
            let mut first_dart = 0;
            let mut prev_dart_in = None;
            for w in chain.windows(2) {
                let ne = edges.len();
                edges.push((w[0], w[1]));
                sub_edge_of.push(e);
                if w[0] == u {
                    first_dart = 2 * ne;
                }
                if let Some(pd) = prev_dart_in {
                    // interior vertex w[0]: darts [back, forward]
                    rotation[w[0]] = vec![pd, 2 * ne];
                }
                prev_dart_in = Some(2 * ne + 1);
            }
            dart_repl[2 * e] = first_dart;
            dart_repl[2 * e + 1] = prev_dart_in.unwrap();
        }
        for v in 0..self.n {
            rotation[v] = self.rotation[v].iter().map(|&d| dart_repl[d]).collect();
        }
        let g = PlanarGraph::new(self.n + extra, edges, rotation)?;
        Ok((
            g,
            SubdivMap {
                original_n: self.n,
                sub_edge_of,
            },
        ))
    }

    pub fn is_biconnected(&self) -> bool {
        self.n >= 2 && self.articulation_points().is_empty() && self.is_connected()
    }

    pub fn articulation_points(&self) -> Vec<Vertex> {
        let comps = biconnected_edge_components(self);
        let mut count = vec![0usize; self.n];
        for comp in &comps {
            let mut vs: Vec<Vertex> = comp
                .iter()
                .flat_map(|&e| {
                    let (u, v) = self.edges[e];
                    [u, v]
                })
                .collect();
            vs.sort_unstable();
            vs.dedup();
            for v in vs {
                count[v] += 1;
            }
        }
        (0..self.n).filter(|&v| count[v] >= 2).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SubMap {
    pub vertex_to_sub: Vec<Option<usize>>,
    pub sub_to_vertex: Vec<usize>,
    pub edge_to_sub: Vec<Option<usize>>,
    pub sub_to_edge: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SubdivMap {
    pub original_n: usize,
    /// For each subdivided edge, the original edge it came from.
    pub sub_edge_of: Vec<EdgeId>,
}

/// Edge sets of the biconnected components (blocks), Hopcroft-Tarjan.
pub fn biconnected_edge_components(g: &PlanarGraph) -> Vec<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut stack: Vec<EdgeId> = Vec::new();
    let mut comps = Vec::new();

    // iterative DFS
    struct Frame {
        v: Vertex,
        parent_edge: Option<EdgeId>,
        dart_idx: usize,
    }
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut frames = vec![Frame {
            v: root,
            parent_edge: None,
            dart_idx: 0,
        }];
        while let Some(fr) = frames.last_mut() {
            let v = fr.v;
            if fr.dart_idx < g.incident_darts(v).len() {
                let d = g.incident_darts(v)[fr.dart_idx];
                fr.dart_idx += 1;
                let e = d / 2;
                if Some(e) == fr.parent_edge {
                    continue;
                }
                let w = g.dart_head(d);
                if disc[w] == usize::MAX {
                    stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push(Frame {
                        v: w,
                        parent_edge: Some(e),
                        dart_idx: 0,
                    });
                } else if disc[w] < disc[v] {
                    stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let parent_edge = fr.parent_edge;
                frames.pop();
                if let Some(pf) = frames.last() {
                    let u = pf.v;
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // u is an articulation point (or root); pop the block
                        let pe = parent_edge.unwrap();
                        let mut comp = Vec::new();
                        while let Some(&top) = stack.last() {
                            stack.pop();
                            comp.push(top);
                            if top == pe {
                                break;
                            }
                        }
                        comps.push(comp);
                    }
                }
            }
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn triangle() -> PlanarGraph {
        // vertices 0,1,2; edges (0,1),(1,2),(2,0)
        PlanarGraph::from_coords(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            &[(0.0, 0.0), (1.0, 0.0), (0.5, 1.0)],
        )
        .unwrap()
    }

    pub fn k23() -> PlanarGraph {
        // parts {0,1} (degree 3) and {2,3,4}; standard embedding
        PlanarGraph::from_coords(
            5,
            vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
            &[(0.0, 0.0), (2.0, 0.0), (1.0, 1.0), (1.0, 0.0), (1.0, -1.0)],
        )
        .unwrap()
    }

    #[test]
    fn triangle_faces() {
        let g = triangle();
        assert_eq!(g.face_count(), 2);
        assert_eq!(g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64, 2);
    }

    #[test]
    fn k23_faces_are_quads() {
        let g = k23();
        assert_eq!(g.face_count(), 3);
        for f in 0..3 {
            assert_eq!(g.faces()[f].len(), 4, "face {f} should be a 4-cycle");
        }
    }

    #[test]
    fn bad_rotation_fails_euler() {
        // K4 with a deliberately scrambled rotation at one vertex: the
        // traversal yields a face count violating Euler's formula.
        let edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let good = PlanarGraph::from_coords(
            4,
            edges.clone(),
            &[(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)],
        )
        .unwrap();
        let mut rot = good.rotation().to_vec();
        rot[3].swap(0, 1);
        let res = PlanarGraph::new(4, edges, rot);
        assert!(matches!(res, Err(Error::NonPlanarRotation { .. })));
    }

    #[test]
    fn disconnected_rejected() {
        let res = PlanarGraph::new(4, vec![(0, 1), (2, 3)], vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(matches!(res, Err(Error::Disconnected)));
    }

    #[test]
    fn triangle_dual_two_vertices_three_parallel() {
        let g = triangle();
        let d = g.dual().unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 3);
        for e in 0..3 {
            let (a, b) = d.endpoints(e);
            assert_ne!(a, b);
        }
    }

    #[test]
    fn four_cycle_dual() {
        let g = PlanarGraph::from_coords(
            4,
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        )
        .unwrap();
        let d = g.dual().unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 4);
    }

    #[test]
    fn k23_dual_three_vertices() {
        let g = k23();
        let d = g.dual().unwrap();
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.edge_count(), 6);
        // each pair of faces shares exactly 2 edges
        let mut pair_count = std::collections::HashMap::new();
        for e in 0..6 {
            let (a, b) = d.endpoints(e);
            let key = (a.min(b), a.max(b));
            *pair_count.entry(key).or_insert(0) += 1;
        }
        assert_eq!(pair_count.len(), 3);
        assert!(pair_count.values().all(|&c| c == 2));
    }

    #[test]
    fn split_vertex_pendants_on_one_face() {
        let g = PlanarGraph::from_coords(
            4,
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        )
        .unwrap();
        let d = g.dual().unwrap();
        // split the dual vertex of the outer face (degree 4)
        let outer = d
            .endpoints(0)
            .0
            .max(d.endpoints(0).1)
            .min(if d.degree(0) == 4 { 0 } else { 1 });
        let big = if d.degree(0) >= d.degree(1) { 0 } else { 1 };
        let _ = outer;
        let (s, pendants) = d.split_vertex(big).unwrap();
        assert_eq!(pendants.len(), 4);
        for &p in &pendants {
            assert_eq!(s.degree(p), 1);
        }
        // all pendants appear on a single face
        let found = (0..s.face_count()).any(|f| {
            let vs = s.face_vertex_set(f);
            pendants.iter().all(|p| vs.contains(p))
        });
        assert!(found);
    }

    #[test]
    fn single_boundary_edge_split_is_rename() {
        // path as a degenerate split: a vertex of degree 1 splits to itself
        let g = triangle();
        let d = g.dual().unwrap();
        let (s, pendants) = d.split_vertex(0).unwrap();
        assert_eq!(pendants.len(), 3);
        assert_eq!(s.vertex_count(), d.vertex_count() + 2);
    }

    #[test]
    fn blocks_of_two_triangles_sharing_a_vertex() {
        // triangles 0-1-2 and 2-3-4 sharing vertex 2
        let g = PlanarGraph::from_coords(
            5,
            vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)],
            &[(0.0, 0.0), (1.0, 0.0), (0.5, 1.0), (1.5, 2.0), (0.5, 2.5)],
        )
        .unwrap();
        let comps = biconnected_edge_components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(g.articulation_points(), vec![2]);
        assert!(g.is_connected());
        assert!(!g.is_biconnected());
    }

    #[test]
    fn subgraph_induced_rotation() {
        let g = k23();
        // remove one edge: still connected, planar
        let keep: Vec<usize> = (0..g.edge_count()).filter(|&e| e != 5).collect();
        let (s, map) = g.subgraph_from_edges(&keep).unwrap();
        assert_eq!(s.edge_count(), 5);
        assert_eq!(s.vertex_count(), 5);
        assert_eq!(map.sub_to_edge.len(), 5);
    }

    #[test]
    fn subdivide_preserves_planarity() {
        let g = triangle();
        let (s, map) = g.subdivide(&[2, 3, 1], 100).unwrap();
        assert_eq!(s.vertex_count(), 3 + 1 + 2);
        assert_eq!(s.edge_count(), 6);
        assert_eq!(s.face_count(), 2);
        assert_eq!(map.sub_edge_of.len(), 6);
    }
}
