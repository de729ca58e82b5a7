//! Edge cycles and the orientation character.
//!
//! A simple edge cycle either preserves or reverses orientation; the bit is
//! written w1. Two independent computations are provided: a band-walk that
//! tracks a transverse marker through the vertex fans along the cycle, and a
//! lift test on the orientation double cover. The engine consumes w1 through
//! a fundamental cycle basis and GF(2) linearity; tests and the certificate
//! verifier use the double cover.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::surface::SimplicialSurface;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle has fewer than 3 vertices")]
    TooShort,
    #[error("cycle repeats vertex {0}")]
    RepeatedVertex(u32),
    #[error("consecutive cycle vertices ({0},{1}) are not an edge")]
    NotAnEdge(u32, u32),
    #[error("edge set is not an element of the cycle space")]
    NotInCycleSpace,
    #[error("cycle length limit {0} outside supported range 3..=6")]
    LengthLimitOutOfRange(usize),
}

/// A simple closed cycle in the edge graph, stored as dense vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeCycle {
    vertices: Vec<usize>,
}

impl EdgeCycle {
    /// Validate a cyclic vertex sequence (dense indices) on a surface.
    pub fn new(s: &SimplicialSurface, vertices: Vec<usize>) -> Result<Self, CycleError> {
        if vertices.len() < 3 {
            return Err(CycleError::TooShort);
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(CycleError::RepeatedVertex(s.label(v)));
            }
        }
        for i in 0..vertices.len() {
            let a = vertices[i];
            let b = vertices[(i + 1) % vertices.len()];
            if s.edge_id([a, b]).is_none() {
                return Err(CycleError::NotAnEdge(s.label(a), s.label(b)));
            }
        }
        Ok(EdgeCycle { vertices })
    }

    /// Validate a cyclic sequence of original labels.
    pub fn from_labels(s: &SimplicialSurface, labels: &[u32]) -> Result<Self, CycleError> {
        let mut vs = Vec::with_capacity(labels.len());
        for &l in labels {
            vs.push(s.vertex(l).map_err(|_| CycleError::NotAnEdge(l, l))?);
        }
        EdgeCycle::new(s, vs)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self, s: &SimplicialSurface) -> Vec<u32> {
        self.vertices.iter().map(|&v| s.label(v)).collect()
    }

    /// Edge ids traversed by the cycle.
    pub fn edge_ids(&self, s: &SimplicialSurface) -> Vec<usize> {
        (0..self.vertices.len())
            .map(|i| {
                s.edge_id([self.vertices[i], self.vertices[(i + 1) % self.vertices.len()]])
                    .expect("validated cycle")
            })
            .collect()
    }

    /// Canonical form: the lexicographically least rotation/reflection.
    pub fn canonical(&self) -> Vec<usize> {
        canonical_cycle(&self.vertices)
    }
}

pub(crate) fn canonical_cycle(vs: &[usize]) -> Vec<usize> {
    let k = vs.len();
    let pos = vs
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .unwrap();
    let fwd: Vec<usize> = (0..k).map(|i| vs[(pos + i) % k]).collect();
    let bwd: Vec<usize> = (0..k).map(|i| vs[(pos + k - i) % k]).collect();
    if fwd <= bwd {
        fwd
    } else {
        bwd
    }
}

/// Orientation character of a simple edge cycle, via band-walk.
///
/// A marker triangle incident to the current cycle edge is carried around the
/// cycle; at each corner the vertex fan determines which triangle the marker
/// continues into. Returning to the start edge on the other side means the
/// band of triangles along the cycle is a Möbius strip.
pub fn is_orientation_reversing(s: &SimplicialSurface, c: &EdgeCycle) -> bool {
    let vs = c.vertices();
    let k = vs.len();
    let first_edge = s.edge_id([vs[0], vs[1]]).expect("validated cycle");
    let start_marker = s.edge_triangles(first_edge)[0];
    let mut marker = start_marker;
    for i in 0..k {
        // corner at vertex vs[(i+1)%k]: entering from vs[i], leaving to vs[(i+2)%k]
        let v = vs[(i + 1) % k];
        let prev = vs[i];
        let next = vs[(i + 2) % k];
        marker = fan_transfer(s, v, prev, next, marker);
    }
    marker != start_marker
}

/// Transfer a marker triangle (incident to edge (prev,v)) through the fan at v
/// to the side-respecting triangle incident to edge (v,next).
fn fan_transfer(
    s: &SimplicialSurface,
    v: usize,
    prev: usize,
    next: usize,
    marker: usize,
) -> usize {
    let link = s.link(v);
    let k = link.len();
    let ia = link.iter().position(|&u| u == prev).expect("prev in link");
    let ib = link.iter().position(|&u| u == next).expect("next in link");
    // fan triangle j is {v, link[j], link[j+1]}
    let fan = |j: usize| -> usize {
        let t = [v, link[j % k], link[(j + 1) % k]];
        s.triangle_id(t).expect("fan triangle")
    };
    // the two triangles incident to edge (v,prev) are fan(ia-1) and fan(ia);
    // side A is the arc fan(ia)..fan(ib-1), side B the arc fan(ib)..fan(ia-1)
    let t_fwd = fan(ia);
    let t_bwd = fan((ia + k - 1) % k);
    if marker == t_fwd {
        fan((ib + k - 1) % k)
    } else {
        debug_assert_eq!(marker, t_bwd, "marker not incident to entry edge");
        fan(ib)
    }
}

/// The orientation double cover, built on oriented triangles.
///
/// Node `2t+s` is triangle `t` with orientation `s` (0 = ascending vertex
/// order, 1 = reversed). Nodes are glued across shared edges so that the two
/// orientations traverse the edge oppositely. Cover vertices are corner
/// classes under this gluing; the cover is connected iff the base surface is
/// non-orientable.
#[derive(Debug, Clone)]
pub struct DoubleCover {
    /// per oriented triangle, the adjacent oriented triangle across each of
    /// its 3 edges (edge order matches `SimplicialSurface::triangle_edges`)
    adjacency: Vec<[usize; 3]>,
    /// connected components of the oriented-triangle graph
    pub components: usize,
    /// per (oriented triangle, corner 0..3): cover-vertex class id
    corner_class: Vec<[usize; 3]>,
    pub cover_vertices: usize,
    pub cover_edges: usize,
    pub cover_faces: usize,
    /// per (edge id, side 0/1): cover-edge class, each with its two endpoints
    edge_lifts: Vec<[CoverEdge; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct CoverEdge {
    /// cover-vertex classes at the endpoints, indexed by base endpoints
    /// (class over edge[0], class over edge[1])
    ends: [usize; 2],
}

impl DoubleCover {
    pub fn euler_characteristic(&self) -> i64 {
        self.cover_vertices as i64 - self.cover_edges as i64 + self.cover_faces as i64
    }
}

/// Directed boundary of an oriented triangle.
fn directed_edges(s: &SimplicialSurface, tri: usize, sheet: usize) -> [[usize; 2]; 3] {
    let t = s.triangles()[tri];
    if sheet == 0 {
        [[t[0], t[1]], [t[1], t[2]], [t[2], t[0]]]
    } else {
        [[t[1], t[0]], [t[2], t[1]], [t[0], t[2]]]
    }
}

pub fn orientation_double_cover(s: &SimplicialSurface) -> DoubleCover {
    let nt = s.triangles().len();
    let mut adjacency = vec![[usize::MAX; 3]; 2 * nt];
    for tri in 0..nt {
        for sheet in 0..2 {
            let node = 2 * tri + sheet;
            for (slot, de) in directed_edges(s, tri, sheet).into_iter().enumerate() {
                let e = s.edge_id(de).unwrap();
                let [p, q] = s.edge_triangles(e);
                let other = if p == tri { q } else { p };
                // the neighbor must traverse the edge as (de[1], de[0])
                let want = [de[1], de[0]];
                let osheet = (0..2)
                    .find(|&os| directed_edges(s, other, os).contains(&want))
                    .unwrap();
                // store in the slot order of this triangle's edges
                let eslot = s
                    .triangle_edges(tri)
                    .iter()
                    .position(|&ei| ei == e)
                    .unwrap();
                let _ = slot;
                adjacency[node][eslot] = 2 * other + osheet;
            }
        }
    }

    // connected components of oriented triangles
    let mut comp = vec![usize::MAX; 2 * nt];
    let mut components = 0;
    for start in 0..2 * nt {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = components;
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if comp[y] == usize::MAX {
                    comp[y] = components;
                    stack.push(y);
                }
            }
        }
        components += 1;
    }

    // corner classes: corner (node, local vertex i) is glued to the matching
    // corner of the neighbor across each incident edge
    let mut uf = UnionFind::new(6 * nt);
    let corner_id = |node: usize, slot: usize| 3 * node + slot;
    for tri in 0..nt {
        let t = s.triangles()[tri];
        for sheet in 0..2 {
            let node = 2 * tri + sheet;
            for (eslot, &e) in s.triangle_edges(tri).iter().enumerate() {
                let nb = adjacency[node][eslot];
                let nbt = nb / 2;
                let nt_tri = s.triangles()[nbt];
                let [ea, eb] = s.edges()[e];
                for v in [ea, eb] {
                    let my = t.iter().position(|&x| x == v).unwrap();
                    let theirs = nt_tri.iter().position(|&x| x == v).unwrap();
                    uf.union(corner_id(node, my), corner_id(nb, theirs));
                }
            }
        }
    }
    let mut class_ids = BTreeMap::new();
    let mut corner_class = vec![[0usize; 3]; 2 * nt];
    for node in 0..2 * nt {
        for slot in 0..3 {
            let root = uf.find(corner_id(node, slot));
            let next = class_ids.len();
            let id = *class_ids.entry(root).or_insert(next);
            corner_class[node][slot] = id;
        }
    }
    let cover_vertices = class_ids.len();

    // lifted edges: per base edge, the two cover edges with their endpoint classes
    let mut edge_lifts = Vec::with_capacity(s.edges().len());
    for (e, &[ea, eb]) in s.edges().iter().enumerate() {
        let [p, _q] = s.edge_triangles(e);
        let mut lifts = Vec::new();
        for sheet in 0..2 {
            let node = 2 * p + sheet;
            let tp = s.triangles()[p];
            let sa = tp.iter().position(|&x| x == ea).unwrap();
            let sb = tp.iter().position(|&x| x == eb).unwrap();
            lifts.push(CoverEdge {
                ends: [corner_class[node][sa], corner_class[node][sb]],
            });
        }
        edge_lifts.push([lifts[0], lifts[1]]);
    }

    DoubleCover {
        adjacency,
        components,
        corner_class,
        cover_vertices,
        cover_edges: 3 * nt,
        cover_faces: 2 * nt,
        edge_lifts,
    }
}

impl DoubleCover {
    /// Lift test: a simple cycle lifts to a loop in the cover iff it is
    /// orientation-preserving. Walks cover vertices along lifted edges.
    pub fn cycle_reverses(&self, s: &SimplicialSurface, c: &EdgeCycle) -> bool {
        let vs = c.vertices();
        let k = vs.len();
        let e0 = s.edge_id([vs[0], vs[1]]).unwrap();
        // start at the lift of the first edge in sheet 0 of its first triangle
        let lift0 = self.edge_lifts[e0][0];
        let start_class = if s.edges()[e0][0] == vs[0] {
            lift0.ends[0]
        } else {
            lift0.ends[1]
        };
        let mut cur = start_class;
        for i in 0..k {
            let a = vs[i];
            let b = vs[(i + 1) % k];
            let e = s.edge_id([a, b]).unwrap();
            let (a_slot, b_slot) = if s.edges()[e][0] == a { (0, 1) } else { (1, 0) };
            let lift = self.edge_lifts[e]
                .iter()
                .find(|l| l.ends[a_slot] == cur)
                .expect("cover vertex incident to a lift of each star edge");
            cur = lift.ends[b_slot];
        }
        cur != start_class
    }

    pub fn adjacency(&self) -> &[[usize; 3]] {
        &self.adjacency
    }

    pub fn corner_classes(&self) -> &[[usize; 3]] {
        &self.corner_class
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Fundamental cycle basis over a deterministic BFS spanning tree.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    tree_edges: BTreeSet<usize>,
    cycles: Vec<FundamentalCycle>,
    /// non-tree edge id -> index into `cycles`
    by_edge: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone)]
pub struct FundamentalCycle {
    pub nontree_edge: usize,
    pub cycle: EdgeCycle,
    pub edge_set: BTreeSet<usize>,
    pub reversing: bool,
}

impl CycleBasis {
    pub fn cycles(&self) -> &[FundamentalCycle] {
        &self.cycles
    }

    pub fn tree_edges(&self) -> &BTreeSet<usize> {
        &self.tree_edges
    }

    pub fn fundamental_for(&self, edge: usize) -> Option<&FundamentalCycle> {
        self.by_edge.get(&edge).map(|&i| &self.cycles[i])
    }
}

/// Build the fundamental cycle basis: BFS tree from the smallest label with
/// neighbors visited in ascending order, one induced cycle per non-tree edge,
/// w1 evaluated by the band-walk.
pub fn fundamental_cycle_basis(s: &SimplicialSurface) -> CycleBasis {
    let n = s.vertex_count();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut tree_edges = BTreeSet::new();
    let mut queue = std::collections::VecDeque::new();
    visited[0] = true;
    queue.push_back(0usize);
    while let Some(v) = queue.pop_front() {
        for &u in s.adjacency(v) {
            if !visited[u] {
                visited[u] = true;
                parent[u] = Some(v);
                depth[u] = depth[v] + 1;
                tree_edges.insert(s.edge_id([v, u]).unwrap());
                queue.push_back(u);
            }
        }
    }

    let mut cycles = Vec::new();
    let mut by_edge = BTreeMap::new();
    for (e, &[a, b]) in s.edges().iter().enumerate() {
        if tree_edges.contains(&e) {
            continue;
        }
        // tree path a..lca followed by lca..b reversed, then edge (b,a)
        let (mut x, mut y) = (a, b);
        let mut xs = vec![x];
        let mut ys = vec![y];
        while depth[x] > depth[y] {
            x = parent[x].unwrap();
            xs.push(x);
        }
        while depth[y] > depth[x] {
            y = parent[y].unwrap();
            ys.push(y);
        }
        while x != y {
            x = parent[x].unwrap();
            y = parent[y].unwrap();
            xs.push(x);
            ys.push(y);
        }
        // xs ends at lca; ys too. cycle: a .. lca .. b
        ys.pop();
        let mut vs = xs;
        vs.extend(ys.into_iter().rev());
        let cycle = EdgeCycle::new(s, vs).expect("fundamental cycle is simple");
        let edge_set: BTreeSet<usize> = cycle.edge_ids(s).into_iter().collect();
        let reversing = is_orientation_reversing(s, &cycle);
        by_edge.insert(e, cycles.len());
        cycles.push(FundamentalCycle { nontree_edge: e, cycle, edge_set, reversing });
    }
    CycleBasis { tree_edges, cycles, by_edge }
}

/// w1 of an arbitrary cycle-space element, by GF(2) linearity over the basis.
///
/// The element must decompose exactly as the symmetric difference of the
/// fundamental cycles of its non-tree edges.
pub fn w1_of(basis: &CycleBasis, edges: &BTreeSet<usize>) -> Result<bool, CycleError> {
    let mut acc: BTreeSet<usize> = BTreeSet::new();
    let mut w1 = false;
    for &e in edges {
        if let Some(fc) = basis.fundamental_for(e) {
            for &f in &fc.edge_set {
                if !acc.remove(&f) {
                    acc.insert(f);
                }
            }
            w1 ^= fc.reversing;
        }
    }
    if &acc != edges {
        return Err(CycleError::NotInCycleSpace);
    }
    Ok(w1)
}

/// All simple cycles of length 3..=max_len, deduplicated up to
/// rotation/reflection, annotated with w1 and sorted canonically.
pub fn enumerate_simple_cycles(
    s: &SimplicialSurface,
    max_len: usize,
) -> Result<Vec<(EdgeCycle, bool)>, CycleError> {
    if !(3..=6).contains(&max_len) {
        return Err(CycleError::LengthLimitOutOfRange(max_len));
    }
    let basis = fundamental_cycle_basis(s);
    let n = s.vertex_count();
    let mut out = Vec::new();
    // canonical generation: cycles start at their minimum vertex and take the
    // direction with the smaller second vertex
    let mut path = Vec::new();
    for start in 0..n {
        path.clear();
        path.push(start);
        dfs_cycles(s, start, &mut path, max_len, &mut out);
    }
    let mut annotated: Vec<(EdgeCycle, bool)> = Vec::with_capacity(out.len());
    for vs in out {
        let cycle = EdgeCycle::new(s, vs).expect("generated simple cycle");
        let edge_set: BTreeSet<usize> = cycle.edge_ids(s).into_iter().collect();
        let w1 = w1_of(&basis, &edge_set).expect("simple cycle is in the cycle space");
        annotated.push((cycle, w1));
    }
    annotated.sort_by(|a, b| {
        (a.0.len(), a.0.canonical()).cmp(&(b.0.len(), b.0.canonical()))
    });
    Ok(annotated)
}

fn dfs_cycles(
    s: &SimplicialSurface,
    start: usize,
    path: &mut Vec<usize>,
    max_len: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    for &u in s.adjacency(last) {
        if u == start && path.len() >= 3 {
            // reflection dedup: second vertex must be smaller than last
            if path[1] < *path.last().unwrap() {
                out.push(path.clone());
            }
            continue;
        }
        if u <= start || path.contains(&u) || path.len() >= max_len {
            continue;
        }
        path.push(u);
        dfs_cycles(s, start, path, max_len, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_surface, parse_lutz};

    fn tetrahedron() -> SimplicialSurface {
        build_surface(&parse_lutz("[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]").unwrap()).unwrap()
    }

    #[test]
    fn tetrahedron_cycles_all_preserving() {
        let s = tetrahedron();
        let cycles = enumerate_simple_cycles(&s, 3).unwrap();
        assert_eq!(cycles.len(), 4);
        assert!(cycles.iter().all(|(_, w1)| !w1));
    }

    #[test]
    fn tetrahedron_cover_disconnected() {
        let s = tetrahedron();
        let cover = orientation_double_cover(&s);
        assert_eq!(cover.components, 2);
        assert_eq!(cover.cover_vertices, 8);
        assert_eq!(cover.euler_characteristic(), 4);
    }

    #[test]
    fn tetrahedron_basis() {
        let s = tetrahedron();
        let basis = fundamental_cycle_basis(&s);
        assert_eq!(basis.cycles().len(), 3); // E - V + 1
        assert!(basis.cycles().iter().all(|c| !c.reversing));
    }

    #[test]
    fn w1_of_empty_set_is_zero() {
        let s = tetrahedron();
        let basis = fundamental_cycle_basis(&s);
        assert_eq!(w1_of(&basis, &BTreeSet::new()).unwrap(), false);
    }

    #[test]
    fn w1_of_rejects_non_cycle() {
        let s = tetrahedron();
        let basis = fundamental_cycle_basis(&s);
        let single: BTreeSet<usize> = [0].into_iter().collect();
        assert_eq!(w1_of(&basis, &single).unwrap_err(), CycleError::NotInCycleSpace);
    }

    #[test]
    fn face_boundaries_preserving() {
        let s = tetrahedron();
        let basis = fundamental_cycle_basis(&s);
        for t in 0..s.triangles().len() {
            let set: BTreeSet<usize> = s.triangle_edges(t).into_iter().collect();
            assert_eq!(w1_of(&basis, &set).unwrap(), false);
        }
    }

    #[test]
    fn cycle_validation() {
        let s = tetrahedron();
        assert_eq!(
            EdgeCycle::from_labels(&s, &[1, 2]).unwrap_err(),
            CycleError::TooShort
        );
        assert_eq!(
            EdgeCycle::from_labels(&s, &[1, 2, 1, 3]).unwrap_err(),
            CycleError::RepeatedVertex(1)
        );
    }

    #[test]
    fn length_limit_guardrail() {
        let s = tetrahedron();
        assert!(matches!(
            enumerate_simple_cycles(&s, 7),
            Err(CycleError::LengthLimitOutOfRange(7))
        ));
        assert!(matches!(
            enumerate_simple_cycles(&s, 2),
            Err(CycleError::LengthLimitOutOfRange(2))
        ));
    }

    #[test]
    fn band_walk_agrees_with_cover_on_tetrahedron() {
        let s = tetrahedron();
        let cover = orientation_double_cover(&s);
        for (c, w1) in enumerate_simple_cycles(&s, 3).unwrap() {
            assert_eq!(is_orientation_reversing(&s, &c), w1);
            assert_eq!(cover.cycle_reverses(&s, &c), w1);
        }
    }
}
