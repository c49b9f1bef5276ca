//! Weighted cut collections: the universal representation for L1
//! embeddings, with the algebra used throughout the pipeline
//! (distances, coordinates, scaling, centralization, uncrossing).

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::PlanarGraph;
use crate::metric::{LengthFunction, Metric};
use crate::rational::{format_rat, parse_rat, rzero, Rat};
use num::Zero;

#[derive(Clone, Debug)]
pub struct Cut {
    pub side: BitSet,
    pub weight: Rat,
}

#[derive(Clone, Debug)]
pub struct WeightedCutCollection {
    ground: usize,
    cuts: Vec<Cut>,
}

impl WeightedCutCollection {
    pub fn new(ground: usize) -> Self {
        WeightedCutCollection { ground, cuts: Vec::new() }
    }

    /// Add a cut. Zero-weight cuts are dropped eagerly; the side must be a
    /// proper nonempty subset of the ground set and the weight nonnegative.
    pub fn push(&mut self, side: BitSet, weight: Rat) {
        assert_eq!(side.universe_len(), self.ground, "ground set mismatch");
        assert!(weight >= rzero(), "negative cut weight");
        let c = side.count();
        assert!(c > 0 && c < self.ground, "cut must be a proper nonempty subset");
        if weight.is_zero() {
            return;
        }
        self.cuts.push(Cut { side, weight });
    }

    pub fn push_vertices(&mut self, vs: impl IntoIterator<Item = usize>, weight: Rat) {
        self.push(BitSet::from_iter(self.ground, vs), weight);
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn total_weight(&self) -> Rat {
        self.cuts.iter().map(|c| c.weight.clone()).sum()
    }

    /// Sum of weights of cuts separating `u` and `v`.
    pub fn delta(&self, u: usize, v: usize) -> Rat {
        let mut acc = rzero();
        for c in &self.cuts {
            if c.side.separates(u, v) {
                acc += &c.weight;
            }
        }
        acc
    }

    /// Scale all weights by `alpha >= 0`.
    pub fn scale(&self, alpha: &Rat) -> WeightedCutCollection {
        assert!(*alpha >= rzero());
        let mut out = WeightedCutCollection::new(self.ground);
        for c in &self.cuts {
            let w = &c.weight * alpha;
            if !w.is_zero() {
                out.cuts.push(Cut { side: c.side.clone(), weight: w });
            }
        }
        out
    }

    /// Disjoint union: distances add.
    pub fn union(&self, other: &WeightedCutCollection) -> WeightedCutCollection {
        assert_eq!(self.ground, other.ground);
        let mut out = self.clone();
        out.cuts.extend(other.cuts.iter().cloned());
        out
    }

    /// Intersect every cut with `s`, dropping cuts that become empty or
    /// cover all of `s`. Distances between elements of `s` are unchanged.
    pub fn restrict(&self, s: &BitSet) -> WeightedCutCollection {
        assert_eq!(s.universe_len(), self.ground);
        let scount = s.count();
        let mut out = WeightedCutCollection::new(self.ground);
        for c in &self.cuts {
            let mut side = c.side.clone();
            side.intersect_with(s);
            let k = side.count();
            if k > 0 && k < scount {
                out.cuts.push(Cut { side, weight: c.weight.clone() });
            }
        }
        out
    }

    /// Canonical partition key: the side not containing element 0.
    fn partition_key(&self, i: usize) -> BitSet {
        let side = &self.cuts[i].side;
        if side.contains(0) {
            side.complement()
        } else {
            side.clone()
        }
    }

    /// Merge cuts inducing the same partition (summing weights).
    pub fn dedup(&self) -> WeightedCutCollection {
        let mut map: std::collections::HashMap<BitSet, Rat> = std::collections::HashMap::new();
        let mut order = Vec::new();
        for i in 0..self.cuts.len() {
            let key = self.partition_key(i);
            if !map.contains_key(&key) {
                order.push(key.clone());
            }
            *map.entry(key).or_insert_with(rzero) += &self.cuts[i].weight;
        }
        let mut out = WeightedCutCollection::new(self.ground);
        for key in order {
            let w = map.remove(&key).unwrap();
            if !w.is_zero() {
                out.cuts.push(Cut { side: key, weight: w });
            }
        }
        out
    }
}

/// Two cuts cross when all four intersection quadrants of the two
/// partitions are nonempty.
pub fn cuts_cross(a: &BitSet, b: &BitSet) -> bool {
    let ac = a.complement();
    let bc = b.complement();
    a.intersects(b) && a.intersects(&bc) && ac.intersects(b) && ac.intersects(&bc)
}

pub fn is_laminar(c: &WeightedCutCollection) -> bool {
    for i in 0..c.cuts.len() {
        for j in (i + 1)..c.cuts.len() {
            if cuts_cross(&c.cuts[i].side, &c.cuts[j].side) {
                return false;
            }
        }
    }
    true
}

/// Uncross until no two cuts cross: a crossing pair `(A, w_A), (B, w_B)`
/// with `w_A >= w_B` becomes `(A&B, w_B), (A|B, w_B), (A, w_A - w_B)`.
/// Total weight is conserved and pairwise distances never increase.
/// Picks the lowest-index crossing pair each round.
pub fn uncross(c: &WeightedCutCollection) -> Result<WeightedCutCollection> {
    let mut cuts: Vec<Cut> = c.cuts.clone();
    let m = cuts.len().max(2);
    let budget = 64 * m * m * m * m;
    for _ in 0..budget {
        let mut found = None;
        'outer: for i in 0..cuts.len() {
            for j in (i + 1)..cuts.len() {
                if cuts_cross(&cuts[i].side, &cuts[j].side) {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = found else {
            let mut out = WeightedCutCollection::new(c.ground);
            out.cuts = cuts;
            return Ok(out);
        };
        let (ai, bi) = if cuts[i].weight >= cuts[j].weight { (i, j) } else { (j, i) };
        let (a, wa) = (cuts[ai].side.clone(), cuts[ai].weight.clone());
        let (b, wb) = (cuts[bi].side.clone(), cuts[bi].weight.clone());
        let mut inter = a.clone();
        inter.intersect_with(&b);
        let mut uni = a.clone();
        uni.union_with(&b);
        // remove higher index first
        let (hi, lo) = if ai > bi { (ai, bi) } else { (bi, ai) };
        cuts.remove(hi);
        cuts.remove(lo);
        let rem = &wa - &wb;
        if !rem.is_zero() {
            cuts.push(Cut { side: a, weight: rem });
        }
        if inter.count() > 0 && inter.count() < c.ground {
            cuts.push(Cut { side: inter, weight: wb.clone() });
        }
        if uni.count() > 0 && uni.count() < c.ground {
            cuts.push(Cut { side: uni, weight: wb });
        }
    }
    Err(Error::Internal(format!(
        "uncrossing did not terminate within the iteration budget {budget}"
    )))
}

/// Replace every non-central cut by central ones (components of the cut's
/// sides in `g`) until every cut induces connected halves. Edge distances
/// are preserved; pair distances never decrease.
pub fn centralize(c: &WeightedCutCollection, g: &PlanarGraph) -> WeightedCutCollection {
    assert_eq!(c.ground, g.vertex_count());
    let no_edges = BitSet::new(g.edge_count());
    let (_, comp_all) = g.components_without_edges(&no_edges);
    let _ = comp_all;
    let mut out = WeightedCutCollection::new(c.ground);
    let mut work: Vec<Cut> = c.cuts.clone();
    while let Some(cut) = work.pop() {
        let side_comps = induced_components(g, &cut.side);
        if side_comps.len() > 1 {
            for comp in side_comps {
                work.push(Cut { side: comp, weight: cut.weight.clone() });
            }
            continue;
        }
        let co = cut.side.complement();
        let co_comps = induced_components(g, &co);
        if co_comps.len() > 1 {
            for comp in co_comps {
                work.push(Cut { side: comp, weight: cut.weight.clone() });
            }
            continue;
        }
        out.cuts.push(cut);
    }
    out.cuts.reverse();
    out
}

/// Connected components of the subgraph induced by `vs`.
fn induced_components(g: &PlanarGraph, vs: &BitSet) -> Vec<BitSet> {
    let mut seen = vec![false; g.vertex_count()];
    let mut comps = Vec::new();
    for s in vs.iter() {
        if seen[s] {
            continue;
        }
        let mut comp = BitSet::new(g.vertex_count());
        let mut stack = vec![s];
        seen[s] = true;
        comp.insert(s);
        while let Some(v) = stack.pop() {
            for (w, _) in g.neighbors(v) {
                if vs.contains(w) && !seen[w] {
                    seen[w] = true;
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Per-element coordinates equivalent to a cut collection: one dimension
/// per cut, value `w_i` inside the cut and `0` outside.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingCoordinates {
    pub ground: usize,
    /// coords[element][dimension]
    pub coords: Vec<Vec<Rat>>,
}

impl EmbeddingCoordinates {
    pub fn l1_distance(&self, u: usize, v: usize) -> Rat {
        self.coords[u]
            .iter()
            .zip(&self.coords[v])
            .map(|(a, b)| if a >= b { a - b } else { b - a })
            .sum()
    }

    pub fn dimensions(&self) -> usize {
        self.coords.first().map_or(0, |c| c.len())
    }
}

pub fn to_coordinates(c: &WeightedCutCollection) -> EmbeddingCoordinates {
    let mut coords = vec![Vec::with_capacity(c.cuts.len()); c.ground];
    for cut in &c.cuts {
        for (v, coord) in coords.iter_mut().enumerate() {
            coord.push(if cut.side.contains(v) { cut.weight.clone() } else { rzero() });
        }
    }
    EmbeddingCoordinates { ground: c.ground, coords }
}

/// Standard threshold decomposition, one dimension at a time. Round-trips
/// through [`to_coordinates`] preserve all pairwise distances exactly.
pub fn from_coordinates(x: &EmbeddingCoordinates) -> WeightedCutCollection {
    let mut out = WeightedCutCollection::new(x.ground);
    for dim in 0..x.dimensions() {
        let mut vals: Vec<Rat> = (0..x.ground).map(|v| x.coords[v][dim].clone()).collect();
        let mut sorted = vals.clone();
        sorted.sort();
        sorted.dedup();
        for t in sorted.windows(2) {
            let side = BitSet::from_iter(
                x.ground,
                (0..x.ground).filter(|&v| vals[v] > t[0]),
            );
            let k = side.count();
            if k > 0 && k < x.ground {
                out.push(side, &t[1] - &t[0]);
            }
        }
        vals.clear();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Finite(String),
    Infinite,
}

#[derive(Clone, Debug)]
pub struct DistortionReport {
    /// max over edges of delta / l  (None when no edge has positive length)
    pub expansion: Option<Rat>,
    pub expansion_infinite: bool,
    /// max over target pairs of d_G / delta
    pub contraction: Option<Rat>,
    pub contraction_infinite: bool,
    pub worst_edge: Option<(usize, usize)>,
    pub worst_pairs: Vec<(usize, usize)>,
}

impl DistortionReport {
    pub fn expansion_at_most(&self, bound: &Rat) -> bool {
        !self.expansion_infinite && self.expansion.as_ref().map_or(true, |e| e <= bound)
    }

    pub fn contraction_at_most(&self, bound: &Rat) -> bool {
        !self.contraction_infinite && self.contraction.as_ref().map_or(true, |c| c <= bound)
    }
}

/// Exact expansion / contraction audit of a cut metric against the
/// shortest-path metric, over an explicit set of target pairs.
pub fn distortion_report(
    c: &WeightedCutCollection,
    g: &PlanarGraph,
    l: &LengthFunction,
    metric: &Metric,
    pairs: &[(usize, usize)],
) -> DistortionReport {
    let mut expansion: Option<Rat> = None;
    let mut expansion_infinite = false;
    let mut worst_edge = None;
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let d = c.delta(u, v);
        if l[e].is_zero() {
            if !d.is_zero() {
                expansion_infinite = true;
                worst_edge = Some((u, v));
            }
            continue;
        }
        let ratio = &d / &l[e];
        if expansion.as_ref().map_or(true, |b| ratio > *b) {
            worst_edge = Some((u, v));
            expansion = Some(ratio);
        }
    }
    let mut contraction: Option<Rat> = None;
    let mut contraction_infinite = false;
    let mut worst_pairs = Vec::new();
    for &(u, v) in pairs {
        let dg = metric.dist(u, v);
        if dg.is_zero() {
            continue;
        }
        let d = c.delta(u, v);
        if d.is_zero() {
            contraction_infinite = true;
            worst_pairs.push((u, v));
            continue;
        }
        let ratio = dg / &d;
        if contraction.as_ref().map_or(true, |b| ratio > *b) {
            contraction = Some(ratio.clone());
            worst_pairs = vec![(u, v)];
        }
    }
    DistortionReport {
        expansion,
        expansion_infinite,
        contraction,
        contraction_infinite,
        worst_edge,
        worst_pairs,
    }
}

/// JSON export: `[{"cut":[ids],"w":["num","den"]},...]`.
pub fn cuts_to_json(c: &WeightedCutCollection) -> serde_json::Value {
    serde_json::Value::Array(
        c.cuts
            .iter()
            .map(|cut| {
                serde_json::json!({
                    "cut": cut.side.iter().collect::<Vec<_>>(),
                    "w": [cut.weight.numer().to_string(), cut.weight.denom().to_string()],
                })
            })
            .collect(),
    )
}

pub fn cuts_from_json(v: &serde_json::Value, ground: usize) -> Result<WeightedCutCollection> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected array".into()))?;
    let mut out = WeightedCutCollection::new(ground);
    for item in arr {
        let ids = item["cut"]
            .as_array()
            .ok_or_else(|| Error::Parse("cut must be an array".into()))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("cut ids must be integers".into()))?;
        let w = item["w"]
            .as_array()
            .ok_or_else(|| Error::Parse("w must be [num,den]".into()))?;
        let num = w[0]
            .as_str()
            .map(str::to_owned)
            .or_else(|| w[0].as_i64().map(|x| x.to_string()))
            .ok_or_else(|| Error::Parse("bad numerator".into()))?;
        let den = w[1]
            .as_str()
            .map(str::to_owned)
            .or_else(|| w[1].as_i64().map(|x| x.to_string()))
            .ok_or_else(|| Error::Parse("bad denominator".into()))?;
        let weight = parse_rat(&format!("{num}/{den}"))
            .ok_or_else(|| Error::Parse("bad weight".into()))?;
        out.push(BitSet::from_iter(ground, ids), weight);
    }
    Ok(out)
}

pub fn coordinates_to_csv(x: &EmbeddingCoordinates) -> String {
    let mut s = String::new();
    for v in 0..x.ground {
        s.push_str(&v.to_string());
        for c in &x.coords[v] {
            s.push(',');
            s.push_str(&format_rat(c));
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle_graph, path_graph};
    use crate::rational::{rat, rint, rone};

    fn wcc(ground: usize, cuts: &[(&[usize], Rat)]) -> WeightedCutCollection {
        let mut c = WeightedCutCollection::new(ground);
        for (vs, w) in cuts {
            c.push_vertices(vs.iter().copied(), w.clone());
        }
        c
    }

    #[test]
    fn delta_single_cut() {
        let c = wcc(3, &[(&[1, 2], rint(3))]);
        assert_eq!(c.delta(1, 0), rint(3));
        assert_eq!(c.delta(1, 2), rint(0));
    }

    #[test]
    fn delta_empty_collection() {
        let c = WeightedCutCollection::new(4);
        assert_eq!(c.delta(0, 3), rint(0));
    }

    #[test]
    fn delta_overlapping() {
        let c = wcc(3, &[(&[0], rint(1)), (&[0, 1], rint(2))]);
        assert_eq!(c.delta(0, 2), rint(3));
        assert_eq!(c.delta(1, 2), rint(2));
        assert_eq!(c.delta(0, 1), rint(1));
    }

    #[test]
    fn coordinates_roundtrip() {
        let c = wcc(5, &[(&[0, 2], rat(3, 2)), (&[1, 2, 3], rint(1)), (&[4], rat(1, 3))]);
        let x = to_coordinates(&c);
        let back = from_coordinates(&x);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(c.delta(u, v), back.delta(u, v));
                assert_eq!(x.l1_distance(u, v), c.delta(u, v));
            }
        }
    }

    #[test]
    fn single_cut_coordinates() {
        let c = wcc(2, &[(&[1], rat(7, 3))]);
        let x = to_coordinates(&c);
        assert_eq!(x.coords[0][0], rint(0));
        assert_eq!(x.coords[1][0], rat(7, 3));
    }

    #[test]
    fn all_equal_coordinates_give_empty_collection() {
        let x = EmbeddingCoordinates {
            ground: 3,
            coords: vec![vec![rat(5, 2)], vec![rat(5, 2)], vec![rat(5, 2)]],
        };
        assert!(from_coordinates(&x).is_empty());
    }

    #[test]
    fn scale_union_restrict() {
        let c = wcc(4, &[(&[0], rint(1)), (&[0, 1], rint(2))]);
        let z = c.scale(&rint(0));
        assert!(z.is_empty());
        let doubled = c.union(&c);
        let scaled = c.scale(&rint(2));
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(doubled.delta(u, v), scaled.delta(u, v));
            }
        }
        let s = BitSet::from_iter(4, [0, 1, 2]);
        let r = c.restrict(&s);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(r.delta(u, v), c.delta(u, v));
            }
        }
    }

    #[test]
    fn centralize_path_cut() {
        // path 0-1-2, cut {0,2} has a disconnected side
        let g = path_graph(3);
        let c = wcc(3, &[(&[0, 2], rint(1))]);
        let out = centralize(&c, &g);
        assert_eq!(out.len(), 2);
        assert!(is_laminar(&out));
        for e in 0..g.edge_count() {
            let (u, v) = g.endpoints(e);
            assert_eq!(out.delta(u, v), c.delta(u, v));
        }
        // pair deltas never decrease
        for u in 0..3 {
            for v in 0..3 {
                assert!(out.delta(u, v) >= c.delta(u, v));
            }
        }
    }

    #[test]
    fn centralize_already_central_unchanged() {
        let g = path_graph(3);
        let c = wcc(3, &[(&[0], rint(1)), (&[0, 1], rat(1, 2))]);
        let out = centralize(&c, &g);
        assert_eq!(out.len(), 2);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(out.delta(u, v), c.delta(u, v));
            }
        }
    }

    #[test]
    fn centralize_five_cycle_arcs() {
        let g = cycle_graph(5);
        // {0,2} leaves complement {1,3,4} disconnected
        let c = wcc(5, &[(&[0, 2], rone())]);
        let out = centralize(&c, &g);
        assert!(out.len() >= 2);
        for cut in out.cuts() {
            let comps = induced_components(&g, &cut.side);
            assert_eq!(comps.len(), 1);
            let co = cut.side.complement();
            assert_eq!(induced_components(&g, &co).len(), 1);
        }
        for e in 0..g.edge_count() {
            let (u, v) = g.endpoints(e);
            assert_eq!(out.delta(u, v), c.delta(u, v));
        }
    }

    #[test]
    fn uncross_paper_example() {
        // A={1,2} w=2, B={2,3} w=1 over {1,2,3,4}  (0-indexed ground of 5
        // would shift ids; use ground {0..3} with A={0,1}, B={1,2})
        let c = wcc(4, &[(&[0, 1], rint(2)), (&[1, 2], rint(1))]);
        let out = uncross(&c).unwrap();
        assert_eq!(out.total_weight(), rint(3));
        assert!(is_laminar(&out));
        let mut sides: Vec<Vec<usize>> = out
            .cuts()
            .iter()
            .map(|c| c.side.iter().collect())
            .collect();
        sides.sort();
        assert_eq!(sides, vec![vec![0, 1], vec![0, 1, 2], vec![1]]);
        for cut in out.cuts() {
            assert_eq!(cut.weight, rint(1));
        }
    }

    #[test]
    fn uncross_laminar_input_unchanged() {
        let c = wcc(4, &[(&[0], rint(1)), (&[0, 1], rint(2))]);
        let out = uncross(&c).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.total_weight(), c.total_weight());
    }

    #[test]
    fn uncross_random_property() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let ground = 8;
            let ncuts = rng.gen_range(2..=20);
            let mut c = WeightedCutCollection::new(ground);
            for _ in 0..ncuts {
                let mut side = BitSet::new(ground);
                for v in 0..ground {
                    if rng.gen_bool(0.5) {
                        side.insert(v);
                    }
                }
                let k = side.count();
                if k == 0 || k == ground {
                    continue;
                }
                c.push(side, rat(rng.gen_range(1..=16), rng.gen_range(1..=4)));
            }
            let out = uncross(&c).unwrap();
            assert!(is_laminar(&out));
            assert_eq!(out.total_weight(), c.total_weight());
            for u in 0..ground {
                for v in 0..ground {
                    assert!(out.delta(u, v) <= c.delta(u, v));
                }
            }
        }
    }

    #[test]
    fn distortion_isometric() {
        let g = path_graph(3);
        let l = vec![rone(), rone()];
        let m = crate::metric::shortest_path_metric(&g, &l);
        let c = wcc(3, &[(&[0], rone()), (&[0, 1], rone())]);
        let rep = distortion_report(&c, &g, &l, &m, &[(0, 2), (0, 1)]);
        assert_eq!(rep.expansion, Some(rone()));
        assert_eq!(rep.contraction, Some(rone()));
    }

    #[test]
    fn distortion_empty_collection_flags_infinite() {
        let g = path_graph(2);
        let l = vec![rone()];
        let m = crate::metric::shortest_path_metric(&g, &l);
        let c = WeightedCutCollection::new(2);
        let rep = distortion_report(&c, &g, &l, &m, &[(0, 1)]);
        assert!(rep.contraction_infinite);
    }

    #[test]
    fn json_roundtrip() {
        let c = wcc(5, &[(&[0, 2], rat(3, 2)), (&[1], rint(4))]);
        let j = cuts_to_json(&c);
        let back = cuts_from_json(&j, 5).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(c.delta(u, v), back.delta(u, v));
            }
        }
    }
}
