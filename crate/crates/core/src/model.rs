//! The intersection table: which edge can pierce which triangle.
//!
//! An edge ab is a piercing candidate against a vertex-disjoint triangle def
//! iff none of the spanning triangles abd, abe, abf is a face (edge-cut
//! analysis). Candidates are grouped into boxes, one per vertex-disjoint
//! triangle pair; a generic intersection of two triangles involves exactly 0
//! or 2 piercing edges per box, which is the engine's central rule.

use std::collections::{BTreeMap, BTreeSet};

use crate::surface::SimplicialSurface;

/// Assignment status of one pierce variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    Unknown,
    Yes,
    No,
}

impl TriState {
    pub fn as_str(&self) -> &'static str {
        match self {
            TriState::Unknown => "unknown",
            TriState::Yes => "yes",
            TriState::No => "no",
        }
    }
}

/// A candidate (edge, triangle) pierce pair, in dense ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CandidatePair {
    pub edge: usize,
    pub triangle: usize,
}

/// One box of the intersection table: an unordered vertex-disjoint triangle
/// pair with the candidate-pair labels it contains.
#[derive(Debug, Clone)]
pub struct IntersectionBox {
    /// triangle ids with `t1 < t2`
    pub t1: usize,
    pub t2: usize,
    /// variable ids of the candidate pairs labelling this box
    pub labels: Vec<usize>,
}

/// A combinatorially coupled edge pair: each edge's only candidate triangles
/// are the other edge's incident triangles, and one diagonal of the four
/// shared boxes carries exactly these two labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoupledPair {
    pub e1: usize,
    pub e2: usize,
}

/// Candidate pierce structure of a surface.
#[derive(Debug, Clone)]
pub struct IntersectionModel {
    /// all candidate pairs, sorted by (edge, triangle); index = variable id
    pairs: Vec<CandidatePair>,
    pair_ids: BTreeMap<(usize, usize), usize>,
    /// per edge: variable ids of its candidates (ascending triangle)
    edge_vars: Vec<Vec<usize>>,
    /// all vertex-disjoint triangle pairs, sorted by (t1, t2)
    boxes: Vec<IntersectionBox>,
    box_ids: BTreeMap<(usize, usize), usize>,
    /// per variable: the two box ids containing its label
    var_boxes: Vec<[usize; 2]>,
    coupled: Vec<CoupledPair>,
}

/// All candidate pairs by the edge-cut rule.
pub fn candidate_pairs(s: &SimplicialSurface) -> Vec<CandidatePair> {
    let mut out = Vec::new();
    for (e, &[a, b]) in s.edges().iter().enumerate() {
        for (t, tri) in s.triangles().iter().enumerate() {
            if tri.contains(&a) || tri.contains(&b) {
                continue;
            }
            let spanned = tri.iter().any(|&v| {
                let mut key = [a, b, v];
                key.sort_unstable();
                s.triangle_id(key).is_some()
            });
            if !spanned {
                out.push(CandidatePair { edge: e, triangle: t });
            }
        }
    }
    out.sort();
    out
}

impl IntersectionModel {
    pub fn build(s: &SimplicialSurface) -> Self {
        let pairs = candidate_pairs(s);
        let pair_ids: BTreeMap<(usize, usize), usize> = pairs
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.edge, p.triangle), i))
            .collect();
        let mut edge_vars = vec![Vec::new(); s.edges().len()];
        for (i, p) in pairs.iter().enumerate() {
            edge_vars[p.edge].push(i);
        }

        // boxes: all vertex-disjoint triangle pairs
        let nt = s.triangles().len();
        let mut boxes = Vec::new();
        let mut box_ids = BTreeMap::new();
        for t1 in 0..nt {
            for t2 in t1 + 1..nt {
                let a = s.triangles()[t1];
                let b = s.triangles()[t2];
                if a.iter().any(|v| b.contains(v)) {
                    continue;
                }
                let mut labels = Vec::new();
                for (eg, opp) in [(t1, t2), (t2, t1)] {
                    for e in s.triangle_edges(eg) {
                        if let Some(&var) = pair_ids.get(&(e, opp)) {
                            labels.push(var);
                        }
                    }
                }
                labels.sort_unstable();
                box_ids.insert((t1, t2), boxes.len());
                boxes.push(IntersectionBox { t1, t2, labels });
            }
        }

        let mut var_boxes = vec![[usize::MAX; 2]; pairs.len()];
        for (bi, bx) in boxes.iter().enumerate() {
            for &v in &bx.labels {
                let slot = if var_boxes[v][0] == usize::MAX { 0 } else { 1 };
                var_boxes[v][slot] = bi;
            }
        }
        debug_assert!(var_boxes.iter().all(|b| b[1] != usize::MAX));

        let mut model = IntersectionModel {
            pairs,
            pair_ids,
            edge_vars,
            boxes,
            box_ids,
            var_boxes,
            coupled: Vec::new(),
        };
        model.coupled = model.detect_coupled(s);
        model
    }

    /// Detect combinatorially coupled pairs: mutual exclusivity of candidate
    /// triangles plus a diagonal of two-label boxes.
    fn detect_coupled(&self, s: &SimplicialSurface) -> Vec<CoupledPair> {
        let mut out = Vec::new();
        for e1 in 0..s.edges().len() {
            let c1: Vec<usize> = self.edge_vars[e1]
                .iter()
                .map(|&v| self.pairs[v].triangle)
                .collect();
            if c1.len() != 2 {
                continue;
            }
            // candidate triangles of e1 must be exactly the triangles
            // incident to a single edge e2
            let shared: Vec<usize> = s
                .triangle_edges(c1[0])
                .iter()
                .copied()
                .filter(|e| s.triangle_edges(c1[1]).contains(e))
                .collect();
            let e2 = match shared.as_slice() {
                &[e2] => e2,
                _ => continue,
            };
            if e2 <= e1 {
                continue; // handle each unordered pair once, smaller first
            }
            let incident = |e: usize| s.edge_triangles(e);
            if [c1[0], c1[1]] != {
                let mut i = incident(e2);
                i.sort_unstable();
                i
            } {
                continue;
            }
            let c2: Vec<usize> = self.edge_vars[e2]
                .iter()
                .map(|&v| self.pairs[v].triangle)
                .collect();
            let mut i1 = incident(e1);
            i1.sort_unstable();
            if c2.len() != 2 || [c2[0], c2[1]] != i1 {
                continue;
            }
            // one diagonal pairing of the four boxes must carry exactly the
            // two labels {e1 vs *, e2 vs *}
            let [t1a, t1b] = i1;
            let mut i2 = incident(e2);
            i2.sort_unstable();
            let [t2a, t2b] = i2;
            let box_label_count = |x: usize, y: usize| -> Option<usize> {
                let key = (x.min(y), x.max(y));
                self.box_ids.get(&key).map(|&b| self.boxes[b].labels.len())
            };
            let diag = |p: (usize, usize), q: (usize, usize)| -> bool {
                matches!(
                    (box_label_count(p.0, p.1), box_label_count(q.0, q.1)),
                    (Some(2), Some(2))
                )
            };
            if diag((t1a, t2a), (t1b, t2b)) || diag((t1a, t2b), (t1b, t2a)) {
                out.push(CoupledPair { e1, e2 });
            }
        }
        out.sort();
        out
    }

    pub fn pairs(&self) -> &[CandidatePair] {
        &self.pairs
    }

    pub fn var_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn var_id(&self, edge: usize, triangle: usize) -> Option<usize> {
        self.pair_ids.get(&(edge, triangle)).copied()
    }

    pub fn edge_vars(&self, edge: usize) -> &[usize] {
        &self.edge_vars[edge]
    }

    pub fn boxes(&self) -> &[IntersectionBox] {
        &self.boxes
    }

    pub fn box_id(&self, t1: usize, t2: usize) -> Option<usize> {
        self.box_ids.get(&(t1.min(t2), t1.max(t2))).copied()
    }

    /// The two boxes whose label set contains a variable.
    pub fn var_boxes(&self, var: usize) -> [usize; 2] {
        self.var_boxes[var]
    }

    pub fn coupled_pairs(&self) -> &[CoupledPair] {
        &self.coupled
    }

    /// Per edge, the number of candidate triangles (an upper bound on its
    /// intersections with the singular set).
    pub fn max_pierce_count(&self, edge: usize) -> usize {
        self.edge_vars[edge].len()
    }
}

fn label_edge(s: &SimplicialSurface, edge: usize) -> String {
    let [a, b] = s.edge_labels(edge);
    if s.labels().iter().any(|&l| l > 9) {
        format!("{a},{b}")
    } else {
        format!("{a}{b}")
    }
}

fn label_triangle(s: &SimplicialSurface, tri: usize) -> String {
    let [a, b, c] = s.triangle_labels(tri);
    if s.labels().iter().any(|&l| l > 9) {
        format!("{a},{b},{c}")
    } else {
        format!("{a}{b}{c}")
    }
}

/// Render the intersection table as text. Boxes sit above the diagonal; the
/// row's triangle label occupies the diagonal cell. Empty boxes are blank and
/// triangles without any non-empty box are cropped. With an assignment,
/// labels carry `(yes)` / `(no)` suffixes.
pub fn render_table_text(
    s: &SimplicialSurface,
    model: &IntersectionModel,
    state: Option<&[TriState]>,
) -> String {
    let mut involved = BTreeSet::new();
    for bx in model.boxes() {
        if !bx.labels.is_empty() {
            involved.insert(bx.t1);
            involved.insert(bx.t2);
        }
    }
    if involved.is_empty() {
        return "intersection table: no vertex-disjoint triangle pairs\n".to_string();
    }
    let tris: Vec<usize> = involved.into_iter().collect();
    let k = tris.len();
    let cell = |i: usize, j: usize| -> String {
        if i == j {
            return format!("[{}]", label_triangle(s, tris[i]));
        }
        if i > j {
            return String::new();
        }
        match model.box_id(tris[i], tris[j]) {
            Some(b) => {
                let bx = &model.boxes()[b];
                bx.labels
                    .iter()
                    .map(|&v| {
                        let p = model.pairs()[v];
                        let suffix = match state.map(|st| st[v]) {
                            Some(TriState::Yes) => "(yes)",
                            Some(TriState::No) => "(no)",
                            _ => "",
                        };
                        format!("{}{}", label_edge(s, p.edge), suffix)
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
            None => String::new(),
        }
    };
    let mut grid = vec![vec![String::new(); k]; k];
    for i in 0..k {
        for j in i..k {
            grid[i][j] = cell(i, j);
        }
    }
    let mut widths = vec![0usize; k];
    for (j, w) in widths.iter_mut().enumerate() {
        for row in &grid {
            *w = (*w).max(row[j].len());
        }
    }
    let mut out = String::new();
    for (i, row) in grid.iter().enumerate() {
        let mut line = String::new();
        for (j, c) in row.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:width$}", c, width = widths[j]));
        }
        let _ = i;
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// CSV rendering: one row per (box, label): `t1,t2,label,status`.
pub fn render_table_csv(
    s: &SimplicialSurface,
    model: &IntersectionModel,
    state: Option<&[TriState]>,
) -> String {
    let mut out = String::from("t1,t2,label,status\n");
    for bx in model.boxes() {
        for &v in &bx.labels {
            let p = model.pairs()[v];
            let status = state.map_or(TriState::Unknown, |st| st[v]);
            out.push_str(&format!(
                "{},{},{},{}\n",
                label_triangle(s, bx.t1),
                label_triangle(s, bx.t2),
                label_edge(s, p.edge),
                status.as_str(),
            ));
        }
    }
    out
}

/// JSON rendering of the non-empty boxes.
pub fn render_table_json(
    s: &SimplicialSurface,
    model: &IntersectionModel,
    state: Option<&[TriState]>,
) -> serde_json::Value {
    let boxes: Vec<serde_json::Value> = model
        .boxes()
        .iter()
        .filter(|bx| !bx.labels.is_empty())
        .map(|bx| {
            let labels: Vec<serde_json::Value> = bx
                .labels
                .iter()
                .map(|&v| {
                    let p = model.pairs()[v];
                    let e = s.edge_labels(p.edge);
                    serde_json::json!({
                        "edge": [e[0], e[1]],
                        "status": state.map_or(TriState::Unknown, |st| st[v]).as_str(),
                    })
                })
                .collect();
            let t1 = s.triangle_labels(bx.t1);
            let t2 = s.triangle_labels(bx.t2);
            serde_json::json!({
                "t1": [t1[0], t1[1], t1[2]],
                "t2": [t2[0], t2[1], t2[2]],
                "labels": labels,
            })
        })
        .collect();
    serde_json::json!({ "boxes": boxes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_surface, parse_lutz};

    fn tetrahedron() -> SimplicialSurface {
        build_surface(&parse_lutz("[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]").unwrap()).unwrap()
    }

    #[test]
    fn tetrahedron_has_no_candidates() {
        let s = tetrahedron();
        assert!(candidate_pairs(&s).is_empty());
        let model = IntersectionModel::build(&s);
        assert!(model.boxes().is_empty());
        assert!(model.coupled_pairs().is_empty());
        assert_eq!(model.max_pierce_count(0), 0);
    }

    #[test]
    fn tetrahedron_table_text() {
        let s = tetrahedron();
        let model = IntersectionModel::build(&s);
        let txt = render_table_text(&s, &model, None);
        assert!(txt.contains("no vertex-disjoint triangle pairs"));
    }

    #[test]
    fn candidate_symmetry_two_boxes_per_variable() {
        // an octahedron has vertex-disjoint opposite faces
        let s = build_surface(
            &parse_lutz("[[1,2,3],[1,3,4],[1,4,5],[1,2,5],[2,3,6],[3,4,6],[4,5,6],[2,5,6]]")
                .unwrap(),
        )
        .unwrap();
        let model = IntersectionModel::build(&s);
        for v in 0..model.var_count() {
            let [b1, b2] = model.var_boxes(v);
            let p = model.pairs()[v];
            let tris = s.edge_triangles(p.edge);
            for b in [b1, b2] {
                let bx = &model.boxes()[b];
                assert!(bx.t1 == p.triangle || bx.t2 == p.triangle);
                let other = if bx.t1 == p.triangle { bx.t2 } else { bx.t1 };
                assert!(tris.contains(&other));
            }
        }
    }
}
