//! Instance generators and small graph builders used across tests and the CLI.

use crate::error::{Error, Result};
use crate::graph::PlanarGraph;
use crate::instance::Instance;
use crate::metric::{unit_lengths, LengthFunction};
use crate::rational::{rat, rint, rone, Rat};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn path_graph(k: usize) -> PlanarGraph {
    assert!(k >= 2);
    let edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
    let coords: Vec<(f64, f64)> = (0..k).map(|i| (i as f64, 0.0)).collect();
    PlanarGraph::from_coords(k, edges, &coords).unwrap()
}

pub fn cycle_graph(k: usize) -> PlanarGraph {
    assert!(k >= 3);
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let coords: Vec<(f64, f64)> = (0..k)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            (a.cos(), a.sin())
        })
        .collect();
    PlanarGraph::from_coords(k, edges, &coords).unwrap()
}

pub fn star_graph(leaves: usize) -> PlanarGraph {
    assert!(leaves >= 1);
    let edges: Vec<(usize, usize)> = (1..=leaves).map(|i| (0, i)).collect();
    let mut coords = vec![(0.0, 0.0)];
    for i in 0..leaves {
        let a = 2.0 * std::f64::consts::PI * i as f64 / leaves as f64;
        coords.push((a.cos(), a.sin()));
    }
    PlanarGraph::from_coords(leaves + 1, edges, &coords).unwrap()
}

pub fn wheel_graph(rim: usize) -> PlanarGraph {
    assert!(rim >= 3);
    let mut edges: Vec<(usize, usize)> = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)).collect();
    for i in 0..rim {
        edges.push((0, 1 + i));
    }
    let mut coords = vec![(0.0, 0.0)];
    for i in 0..rim {
        let a = 2.0 * std::f64::consts::PI * i as f64 / rim as f64;
        coords.push((a.cos(), a.sin()));
    }
    PlanarGraph::from_coords(rim + 1, edges, &coords).unwrap()
}

pub fn k23_graph() -> PlanarGraph {
    PlanarGraph::from_coords(
        5,
        vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        &[(0.0, 0.0), (2.0, 0.0), (1.0, 1.0), (1.0, 0.0), (1.0, -1.0)],
    )
    .unwrap()
}

/// `rows x cols` unit grid; vertex (r,c) has id r*cols + c.
pub fn grid_graph(rows: usize, cols: usize) -> PlanarGraph {
    assert!(rows >= 2 && cols >= 2);
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let coords: Vec<(f64, f64)> = (0..rows * cols)
        .map(|v| ((v % cols) as f64, -((v / cols) as f64)))
        .collect();
    PlanarGraph::from_coords(rows * cols, edges, &coords).unwrap()
}

/// Random 2-connected plane graph: a stacked triangulation thinned by
/// random edge deletions that keep 2-connectivity. Deterministic per seed.
pub fn random_planar(n: usize, seed: u64, rational_lengths: bool) -> (PlanarGraph, LengthFunction) {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1));
    let mut coords: Vec<(f64, f64)> = vec![(0.0, 0.0), (4.0, 0.0), (2.0, 3.0)];
    let mut tris: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    while coords.len() < n {
        let t = rng.gen_range(0..tris.len());
        let [a, b, c] = tris[t];
        // random convex combination strictly inside the triangle
        let (wa, wb, wc) = loop {
            let x: f64 = rng.gen_range(0.2..0.8);
            let y: f64 = rng.gen_range(0.1..(1.0 - x - 0.05).max(0.11));
            let z = 1.0 - x - y;
            if z > 0.05 {
                break (x, y, z);
            }
        };
        let p = (
            wa * coords[a].0 + wb * coords[b].0 + wc * coords[c].0,
            wa * coords[a].1 + wb * coords[b].1 + wc * coords[c].1,
        );
        let v = coords.len();
        coords.push(p);
        edges.push((v, a));
        edges.push((v, b));
        edges.push((v, c));
        tris.swap_remove(t);
        tris.push([v, a, b]);
        tris.push([v, b, c]);
        tris.push([v, a, c]);
    }
    let mut g = PlanarGraph::from_coords(n, edges.clone(), &coords).unwrap();
    // thin it out while keeping 2-connectivity
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(&mut rng);
    let target = (3 * n / 2).max(n + 1);
    let mut kept: Vec<bool> = vec![true; g.edge_count()];
    for e in order {
        if g.edge_count() - kept.iter().filter(|&&k| !k).count() <= target {
            break;
        }
        kept[e] = false;
        let keep_list: Vec<usize> = (0..edges.len()).filter(|&i| kept[i]).collect();
        match g.subgraph_from_edges(&keep_list) {
            Ok((sub, _)) if sub.vertex_count() == n && sub.is_biconnected() => {}
            _ => kept[e] = true,
        }
    }
    let keep_list: Vec<usize> = (0..edges.len()).filter(|&i| kept[i]).collect();
    let (sub, _) = g.subgraph_from_edges(&keep_list).unwrap();
    g = sub;
    let lengths: LengthFunction = (0..g.edge_count())
        .map(|_| {
            if rational_lengths {
                rat(rng.gen_range(1..=8), rng.gen_range(1..=4))
            } else {
                rone()
            }
        })
        .collect();
    (g, lengths)
}

/// `depth + 2` concentric u-v paths with geometrically spaced lengths.
/// Produces `depth` nested non-geodesic faces whose support cycles are
/// loose with margin 2 at the given `alpha`.
pub fn concentric_shortcuts(depth: usize, alpha: &Rat) -> (PlanarGraph, LengthFunction) {
    assert!(depth >= 1);
    let paths = depth + 2;
    // vertices: 0 = u, 1 = v, then one middle vertex per path
    let n = 2 + paths;
    let mut edges = Vec::new();
    let mut lengths = Vec::new();
    // path i has length 2 * M_i with M_i = (2 alpha)^(paths-1-i); innermost
    // path (i = 0) is the longest
    for i in 0..paths {
        let mid = 2 + i;
        let mut m = rone();
        for _ in 0..(paths - 1 - i) {
            m = &m * &(rint(2) * alpha);
        }
        edges.push((0, mid));
        lengths.push(m.clone());
        edges.push((mid, 1));
        lengths.push(m);
    }
    let mut coords = vec![(-1.0, 0.0), (1.0, 0.0)];
    for i in 0..paths {
        coords.push((0.0, (paths - i) as f64));
    }
    let mut g = PlanarGraph::from_coords(n, edges, &coords).unwrap();
    // outer face: innermost (tallest) and outermost (lowest) paths
    let outer = g
        .face_matching_cycle(&[0, 2, 1, 2 + paths - 1])
        .expect("outer face of the concentric construction");
    g.set_outer_face(outer);
    (g, lengths)
}

/// Generator parameter bag.
#[derive(Clone, Debug, Default)]
pub struct GenParams {
    pub rows: usize,
    pub cols: usize,
    pub n: usize,
    pub depth: usize,
    pub rational_lengths: bool,
    pub demand_count: usize,
}

/// The exact instance from the Okamura-Seymour four-demand example:
/// unit K23 with demands between the two degree-3 vertices and among the
/// three degree-2 vertices.
pub fn k23_golden() -> Instance {
    let g = k23_graph();
    let l = unit_lengths(&g);
    let demands = vec![
        (0, 1, rone()),
        (2, 3, rone()),
        (3, 4, rone()),
        (2, 4, rone()),
    ];
    Instance::new(g, l, &demands).unwrap()
}

pub fn generate(kind: &str, params: &GenParams, seed: u64) -> Result<Instance> {
    match kind {
        "k23-golden" => Ok(k23_golden()),
        "grid" => {
            let rows = params.rows.max(2);
            let cols = params.cols.max(2);
            if rows * cols > 100 {
                return Err(Error::ParamsInvalid("grid larger than 100 vertices".into()));
            }
            let g = grid_graph(rows, cols);
            let l = unit_lengths(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let demands = sample_same_face_demands(&g, params.demand_count.max(2), &mut rng);
            Instance::new(g, l, &demands)
        }
        "random-planar" => {
            let n = params.n.clamp(4, 24);
            let (g, l) = random_planar(n, seed, params.rational_lengths);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(17));
            let demands = sample_same_face_demands(&g, params.demand_count.max(2), &mut rng);
            Instance::new(g, l, &demands)
        }
        "nested-shortcut" => {
            let depth = params.depth.clamp(1, 4);
            // alpha stand-in for generation; looseness margins scale with it
            let alpha = rint(24);
            let (g, l) = concentric_shortcuts(depth, &alpha);
            let demands = vec![(0usize, 1usize, rat(1, 2))];
            Instance::new(g, l, &demands)
        }
        other => Err(Error::ParamsInvalid(format!("unknown kind {other:?}"))),
    }
}

fn sample_same_face_demands(
    g: &PlanarGraph,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, usize, Rat)> {
    let pairs = crate::instance::same_face_pairs(g);
    let mut out = Vec::new();
    for _ in 0..count {
        let &(u, v) = pairs.choose(rng).expect("graph has same-face pairs");
        out.push((u, v, rat(rng.gen_range(1..=2), rng.gen_range(1..=2))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_planar_is_biconnected() {
        for seed in 0..6 {
            let (g, l) = random_planar(12, seed, true);
            assert!(g.is_biconnected(), "seed {seed}");
            assert_eq!(l.len(), g.edge_count());
        }
    }

    #[test]
    fn generate_deterministic_per_seed() {
        let p = GenParams { n: 10, demand_count: 3, rational_lengths: true, ..Default::default() };
        let a = generate("random-planar", &p, 5).unwrap();
        let b = generate("random-planar", &p, 5).unwrap();
        assert_eq!(crate::instance::to_json(&a), crate::instance::to_json(&b));
        let c = generate("random-planar", &p, 6).unwrap();
        assert_ne!(crate::instance::to_json(&a), crate::instance::to_json(&c));
    }

    #[test]
    fn concentric_builds() {
        let (g, l) = concentric_shortcuts(2, &rint(4));
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(l.len(), 8);
        assert_eq!(g.face_count(), 4);
    }

    #[test]
    fn unknown_kind_rejected() {
        let r = generate("moebius", &GenParams::default(), 0);
        assert!(matches!(r, Err(Error::ParamsInvalid(_))));
    }
}
