//! Triangulated closed surfaces: parsing, validation, combinatorial invariants.
//!
//! A surface is given as a list of vertex triples. Construction checks the
//! closed-surface conditions (every edge in exactly two triangles, every
//! vertex link a single cycle, connected dual graph) and precomputes edge and
//! triangle incidences plus the cyclic vertex links.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Errors from the triangle-list parsers.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: degenerate triangle ({a},{b},{c}) has a repeated vertex")]
    DegenerateTriangle { line: usize, col: usize, a: u32, b: u32, c: u32 },
    #[error("line {line}, column {col}: duplicate triangle ({a},{b},{c})")]
    DuplicateTriangle { line: usize, col: usize, a: u32, b: u32, c: u32 },
}

/// Errors from surface construction and queries.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("empty triangle list")]
    Empty,
    #[error("edge ({0},{1}) lies in {2} triangles, expected exactly 2")]
    EdgeNotInTwoTriangles(u32, u32, usize),
    #[error("link of vertex {0} is not a single cycle")]
    LinkNotSingleCycle(u32),
    #[error("triangle set is not connected across shared edges")]
    DisconnectedSurface,
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
}

/// A validated list of triangles over positive integer vertex labels.
///
/// Triples are stored in input order with vertices sorted within each triple.
/// No triple is degenerate and no triple occurs twice as a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleList {
    triangles: Vec<[u32; 3]>,
}

impl TriangleList {
    /// Build from raw triples, enforcing the list invariants.
    pub fn new(raw: Vec<[u32; 3]>) -> Result<Self, ParseError> {
        let mut seen = BTreeSet::new();
        let mut triangles = Vec::with_capacity(raw.len());
        for (i, t) in raw.into_iter().enumerate() {
            let mut s = t;
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(ParseError::DegenerateTriangle {
                    line: i + 1,
                    col: 1,
                    a: t[0],
                    b: t[1],
                    c: t[2],
                });
            }
            if !seen.insert(s) {
                return Err(ParseError::DuplicateTriangle {
                    line: i + 1,
                    col: 1,
                    a: s[0],
                    b: s[1],
                    c: s[2],
                });
            }
            triangles.push(s);
        }
        Ok(TriangleList { triangles })
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

/// Parse the catalog face-list format: `[[1,2,3],[1,2,4],...]`, optionally
/// wrapped in an assignment like `name=[[...]]`. Whitespace is insignificant.
pub fn parse_lutz(text: &str) -> Result<TriangleList, ParseError> {
    let mut lexer = Lexer::new(text);
    // tolerate a leading `name=` prefix before the outer bracket
    if let Some(eq) = text.find('=') {
        if !text[..eq].contains('[') {
            lexer.skip_to(eq + 1);
        }
    }
    lexer.skip_ws();
    lexer.expect('[')?;
    let mut raw = Vec::new();
    let mut positions = Vec::new();
    loop {
        lexer.skip_ws();
        if lexer.peek() == Some(']') {
            lexer.bump();
            break;
        }
        positions.push(lexer.line_col());
        lexer.expect('[')?;
        let a = lexer.integer()?;
        lexer.comma()?;
        let b = lexer.integer()?;
        lexer.comma()?;
        let c = lexer.integer()?;
        lexer.skip_ws();
        lexer.expect(']')?;
        raw.push([a, b, c]);
        lexer.skip_ws();
        match lexer.peek() {
            Some(',') => {
                lexer.bump();
            }
            Some(']') => {}
            other => {
                return Err(lexer.syntax(format!(
                    "expected ',' or ']' after triangle, found {}",
                    describe(other)
                )))
            }
        }
    }
    lexer.skip_ws();
    // trailing semicolons or newlines after the list are tolerated
    while matches!(lexer.peek(), Some(';')) {
        lexer.bump();
        lexer.skip_ws();
    }
    if let Some(ch) = lexer.peek() {
        return Err(lexer.syntax(format!("unexpected trailing input starting at '{ch}'")));
    }
    attach_positions(TriangleList::new(raw), &positions)
}

/// Parse the plain format: one `i j k` triple per line, `#` starts a comment.
pub fn parse_plain(text: &str) -> Result<TriangleList, ParseError> {
    let mut raw = Vec::new();
    let mut positions = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if body.trim().is_empty() {
            continue;
        }
        let mut vals = Vec::new();
        for tok in body.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| ParseError::Syntax {
                line: lineno + 1,
                col: line.find(tok).map_or(1, |c| c + 1),
                msg: format!("expected positive integer, found '{tok}'"),
            })?;
            if v == 0 {
                return Err(ParseError::Syntax {
                    line: lineno + 1,
                    col: line.find(tok).map_or(1, |c| c + 1),
                    msg: "vertex labels must be positive".into(),
                });
            }
            vals.push(v);
        }
        if vals.len() != 3 {
            return Err(ParseError::Syntax {
                line: lineno + 1,
                col: 1,
                msg: format!("expected 3 vertices per line, found {}", vals.len()),
            });
        }
        raw.push([vals[0], vals[1], vals[2]]);
        positions.push((lineno + 1, 1));
    }
    attach_positions(TriangleList::new(raw), &positions)
}

/// Parse either supported format, deciding by the first significant character.
pub fn parse_auto(text: &str) -> Result<TriangleList, ParseError> {
    let looks_lutz = text
        .lines()
        .map(|l| l.trim())
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.starts_with('[') || l.contains("=["))
        .unwrap_or(false);
    if looks_lutz {
        parse_lutz(text)
    } else {
        parse_plain(text)
    }
}

fn attach_positions(
    r: Result<TriangleList, ParseError>,
    positions: &[(usize, usize)],
) -> Result<TriangleList, ParseError> {
    // TriangleList::new reports the triple index; translate to source position
    r.map_err(|e| match e {
        ParseError::DegenerateTriangle { line, a, b, c, .. } => {
            let (l, c2) = positions.get(line - 1).copied().unwrap_or((line, 1));
            ParseError::DegenerateTriangle { line: l, col: c2, a, b, c }
        }
        ParseError::DuplicateTriangle { line, a, b, c, .. } => {
            let (l, c2) = positions.get(line - 1).copied().unwrap_or((line, 1));
            ParseError::DuplicateTriangle { line: l, col: c2, a, b, c }
        }
        other => other,
    })
}

fn describe(c: Option<char>) -> String {
    match c {
        Some(c) => format!("'{c}'"),
        None => "end of input".into(),
    }
}

struct Lexer<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text, chars: text.char_indices().collect(), pos: 0 }
    }

    fn skip_to(&mut self, byte: usize) {
        while self.pos < self.chars.len() && self.chars[self.pos].0 < byte {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn line_col(&self) -> (usize, usize) {
        let byte = self.chars.get(self.pos).map_or(self.text.len(), |&(b, _)| b);
        let mut line = 1;
        let mut col = 1;
        for (i, c) in self.text.char_indices() {
            if i >= byte {
                break;
            }
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn syntax(&self, msg: String) -> ParseError {
        let (line, col) = self.line_col();
        ParseError::Syntax { line, col, msg }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(format!("expected '{c}', found {}", describe(self.peek()))))
        }
    }

    fn comma(&mut self) -> Result<(), ParseError> {
        self.expect(',')
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.syntax(format!(
                "expected integer, found {}",
                describe(self.peek())
            )));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let v: u32 = s
            .parse()
            .map_err(|_| self.syntax(format!("integer '{s}' out of range")))?;
        if v == 0 {
            return Err(self.syntax("vertex labels must be positive".into()));
        }
        Ok(v)
    }
}

/// A validated triangulation of a closed surface.
///
/// Vertices are compacted to dense indices `0..n`; `labels` maps back to the
/// original positive integer labels. All derived data (edges, incidences,
/// links) is in dense index space and deterministically ordered.
#[derive(Debug, Clone)]
pub struct SimplicialSurface {
    labels: Vec<u32>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    edge_ids: BTreeMap<[usize; 2], usize>,
    tri_ids: BTreeMap<[usize; 3], usize>,
    edge_tris: Vec<[usize; 2]>,
    tri_edges: Vec<[usize; 3]>,
    links: Vec<Vec<usize>>,
    adjacency: Vec<BTreeSet<usize>>,
}

/// Headline invariants of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceInfo {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    /// Orientable genus g (χ = 2 − 2g) or non-orientable genus h (χ = 2 − h).
    pub genus: i64,
    pub neighborly: bool,
}

impl fmt::Display for SurfaceInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} chi={} {} {}={}{}",
            self.vertices,
            self.edges,
            self.faces,
            self.euler_characteristic,
            if self.orientable { "orientable" } else { "non-orientable" },
            if self.orientable { "g" } else { "h" },
            self.genus,
            if self.neighborly { " neighborly" } else { "" },
        )
    }
}

/// Build and validate a surface from a triangle list.
pub fn build_surface(list: &TriangleList) -> Result<SimplicialSurface, SurfaceError> {
    if list.is_empty() {
        return Err(SurfaceError::Empty);
    }
    let mut label_set = BTreeSet::new();
    for t in list.triangles() {
        label_set.extend(t.iter().copied());
    }
    let labels: Vec<u32> = label_set.into_iter().collect();
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let mut triangles: Vec<[usize; 3]> = list
        .triangles()
        .iter()
        .map(|t| {
            let mut d = [index[&t[0]], index[&t[1]], index[&t[2]]];
            d.sort_unstable();
            d
        })
        .collect();
    triangles.sort_unstable();
    let tri_ids: BTreeMap<[usize; 3], usize> =
        triangles.iter().enumerate().map(|(i, &t)| (t, i)).collect();

    let mut edge_map: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for (ti, t) in triangles.iter().enumerate() {
        for e in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
            edge_map.entry(e).or_default().push(ti);
        }
    }
    for (e, tris) in &edge_map {
        if tris.len() != 2 {
            return Err(SurfaceError::EdgeNotInTwoTriangles(
                labels[e[0]],
                labels[e[1]],
                tris.len(),
            ));
        }
    }
    let edges: Vec<[usize; 2]> = edge_map.keys().copied().collect();
    let edge_ids: BTreeMap<[usize; 2], usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_tris: Vec<[usize; 2]> = edges
        .iter()
        .map(|e| {
            let t = &edge_map[e];
            [t[0], t[1]]
        })
        .collect();
    let tri_edges: Vec<[usize; 3]> = triangles
        .iter()
        .map(|t| {
            [
                edge_ids[&[t[0], t[1]]],
                edge_ids[&[t[0], t[2]]],
                edge_ids[&[t[1], t[2]]],
            ]
        })
        .collect();

    let n = labels.len();
    let mut adjacency = vec![BTreeSet::new(); n];
    for e in &edges {
        adjacency[e[0]].insert(e[1]);
        adjacency[e[1]].insert(e[0]);
    }

    // links by fan-walking: at v, neighbors a,b of each incident triangle
    // {v,a,b} are adjacent in the link; the link must close into one cycle
    let mut links = Vec::with_capacity(n);
    for v in 0..n {
        let mut link_adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (t, _) in tri_ids.iter().filter(|(t, _)| t.contains(&v)) {
            let others: Vec<usize> = t.iter().copied().filter(|&u| u != v).collect();
            link_adj.entry(others[0]).or_default().push(others[1]);
            link_adj.entry(others[1]).or_default().push(others[0]);
        }
        // every edge (v,u) is in exactly 2 triangles, so each u has degree 2
        debug_assert!(link_adj.values().all(|l| l.len() == 2));
        let first = *link_adj.keys().next().ok_or(SurfaceError::LinkNotSingleCycle(labels[v]))?;
        let mut cycle = vec![first];
        let mut prev = first;
        let mut cur = *link_adj[&first].iter().min().unwrap();
        while cur != first {
            cycle.push(cur);
            let nbrs = &link_adj[&cur];
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = cur;
            cur = next;
        }
        if cycle.len() != link_adj.len() {
            return Err(SurfaceError::LinkNotSingleCycle(labels[v]));
        }
        links.push(cycle);
    }

    // connectivity of the dual graph
    let mut seen = vec![false; triangles.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        for &e in &tri_edges[t] {
            for &o in &edge_tris[e] {
                if !seen[o] {
                    seen[o] = true;
                    stack.push(o);
                }
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(SurfaceError::DisconnectedSurface);
    }

    Ok(SimplicialSurface {
        labels,
        triangles,
        edges,
        edge_ids,
        tri_ids,
        edge_tris,
        tri_edges,
        links,
        adjacency,
    })
}

impl SimplicialSurface {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    /// Dense index of an original label.
    pub fn vertex(&self, label: u32) -> Result<usize, SurfaceError> {
        self.labels
            .binary_search(&label)
            .map_err(|_| SurfaceError::UnknownVertex(label))
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_id(&self, e: [usize; 2]) -> Option<usize> {
        let key = if e[0] < e[1] { e } else { [e[1], e[0]] };
        self.edge_ids.get(&key).copied()
    }

    pub fn triangle_id(&self, t: [usize; 3]) -> Option<usize> {
        let mut key = t;
        key.sort_unstable();
        self.tri_ids.get(&key).copied()
    }

    /// The two triangles incident to an edge.
    pub fn edge_triangles(&self, edge: usize) -> [usize; 2] {
        self.edge_tris[edge]
    }

    pub fn triangle_edges(&self, tri: usize) -> [usize; 3] {
        self.tri_edges[tri]
    }

    pub fn adjacency(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    /// Cyclic fan order of the neighbors of a dense vertex.
    pub fn link(&self, v: usize) -> &[usize] {
        &self.links[v]
    }

    /// Cyclic fan order of the neighbors of an original label.
    pub fn vertex_link(&self, label: u32) -> Result<Vec<u32>, SurfaceError> {
        let v = self.vertex(label)?;
        Ok(self.links[v].iter().map(|&u| self.labels[u]).collect())
    }

    pub fn contains_triangle_labels(&self, t: [u32; 3]) -> bool {
        let mut d = [0usize; 3];
        for (i, l) in t.iter().enumerate() {
            match self.vertex(*l) {
                Ok(v) => d[i] = v,
                Err(_) => return false,
            }
        }
        self.triangle_id(d).is_some()
    }

    pub fn edge_labels(&self, edge: usize) -> [u32; 2] {
        let e = self.edges[edge];
        [self.labels[e[0]], self.labels[e[1]]]
    }

    pub fn triangle_labels(&self, tri: usize) -> [u32; 3] {
        let t = self.triangles[tri];
        [self.labels[t[0]], self.labels[t[1]], self.labels[t[2]]]
    }

    /// Canonical byte encoding of the triangle list: triples sorted, list
    /// sorted, original labels, no whitespace. Used for content hashing.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = String::from("[");
        for (i, t) in self.triangles.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!(
                "[{},{},{}]",
                self.labels[t[0]], self.labels[t[1]], self.labels[t[2]]
            ));
        }
        out.push(']');
        out.into_bytes()
    }

    /// SHA-256 hex digest of `canonical_bytes`.
    pub fn content_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(self.canonical_bytes());
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Compute Euler characteristic, orientability, genus and neighborliness.
pub fn surface_info(s: &SimplicialSurface) -> SurfaceInfo {
    let v = s.vertex_count() as i64;
    let e = s.edges.len() as i64;
    let f = s.triangles.len() as i64;
    let chi = v - e + f;
    let orientable = is_orientable(s);
    let genus = if orientable { (2 - chi) / 2 } else { 2 - chi };
    SurfaceInfo {
        vertices: v as usize,
        edges: e as usize,
        faces: f as usize,
        euler_characteristic: chi,
        orientable,
        genus,
        neighborly: e == v * (v - 1) / 2,
    }
}

/// Decide orientability by propagating a consistent orientation over the dual
/// graph; a conflict on some shared edge means non-orientable.
fn is_orientable(s: &SimplicialSurface) -> bool {
    // orientation per triangle: directed vertex cycle, stored as (a,b,c)
    let mut orient: Vec<Option<[usize; 3]>> = vec![None; s.triangles.len()];
    let t0 = s.triangles[0];
    orient[0] = Some(t0);
    let mut stack = vec![0usize];
    while let Some(t) = stack.pop() {
        let o = orient[t].unwrap();
        for (x, y) in [(o[0], o[1]), (o[1], o[2]), (o[2], o[0])] {
            let e = s.edge_id([x, y]).unwrap();
            let [p, q] = s.edge_tris[e];
            let other = if p == t { q } else { p };
            let z = s.triangles[other]
                .iter()
                .copied()
                .find(|&w| w != x && w != y)
                .unwrap();
            // the adjacent triangle must traverse the shared edge as (y,x)
            let want = [y, x, z];
            match orient[other] {
                None => {
                    orient[other] = Some(want);
                    stack.push(other);
                }
                Some(cur) => {
                    let rot = [
                        cur,
                        [cur[1], cur[2], cur[0]],
                        [cur[2], cur[0], cur[1]],
                    ];
                    if !rot.contains(&want) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Least vertex count admitted by the Heawood bound for Euler characteristic
/// `chi`, i.e. the least n with n ≥ (7 + sqrt(49 − 24χ)) / 2. Exact integer
/// arithmetic throughout.
pub fn heawood_minimum(chi: i64) -> u64 {
    assert!(chi <= 2, "Heawood bound applies to chi <= 2");
    let d = (49 - 24 * chi) as u64;
    let s = d.isqrt();
    if s * s == d {
        (8 + s) / 2
    } else {
        (7 + s) / 2 + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TETRA: &str = "[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]";

    fn tetrahedron() -> SimplicialSurface {
        build_surface(&parse_lutz(TETRA).unwrap()).unwrap()
    }

    #[test]
    fn parse_lutz_tetrahedron() {
        let t = parse_lutz(TETRA).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.triangles()[0], [1, 2, 3]);
    }

    #[test]
    fn parse_lutz_tolerates_assignment_and_whitespace() {
        let t = parse_lutz("surf = [ [1, 2,3],\n [1,2,4],[1,3,4],\n[2,3,4] ]\n").unwrap();
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn parse_lutz_duplicate_triangle() {
        let err = parse_lutz("[[1,2,3],[1,2,3]]").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateTriangle { .. }), "{err}");
    }

    #[test]
    fn parse_lutz_malformed_brackets() {
        let err = parse_lutz("[[1,2,3],[1,2]]").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }), "{err}");
    }

    #[test]
    fn parse_plain_tetrahedron() {
        let t = parse_plain("1 2 3\n1 2 4\n1 3 4\n2 3 4").unwrap();
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn parse_plain_degenerate() {
        let err = parse_plain("1 2 2").unwrap_err();
        assert!(matches!(err, ParseError::DegenerateTriangle { .. }), "{err}");
    }

    #[test]
    fn parse_plain_comments_skipped() {
        let t = parse_plain("# comment\n1 2 3 # trailing\n1 2 4\n1 3 4\n2 3 4").unwrap();
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn build_tetrahedron_links() {
        let s = tetrahedron();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edges().len(), 6);
        for v in 1..=4 {
            assert_eq!(s.vertex_link(v).unwrap().len(), 3);
        }
    }

    #[test]
    fn build_rejects_open_surface() {
        let t = parse_lutz("[[1,2,3],[1,2,4],[1,3,4]]").unwrap();
        let err = build_surface(&t).unwrap_err();
        assert!(matches!(err, SurfaceError::EdgeNotInTwoTriangles(2, 3, 1)), "{err}");
    }

    #[test]
    fn build_rejects_disconnected() {
        let t = parse_lutz(
            "[[1,2,3],[1,2,4],[1,3,4],[2,3,4],[5,6,7],[5,6,8],[5,7,8],[6,7,8]]",
        )
        .unwrap();
        let err = build_surface(&t).unwrap_err();
        assert_eq!(err, SurfaceError::DisconnectedSurface);
    }

    #[test]
    fn build_rejects_pinched_vertex() {
        // two tetrahedra sharing vertex 1: edge condition holds at shared
        // vertex's edges, but the link of vertex 1 is two disjoint cycles
        let t = parse_lutz(
            "[[1,2,3],[1,2,4],[1,3,4],[2,3,4],[1,5,6],[1,5,7],[1,6,7],[5,6,7]]",
        )
        .unwrap();
        let err = build_surface(&t).unwrap_err();
        assert_eq!(err, SurfaceError::LinkNotSingleCycle(1));
    }

    #[test]
    fn tetrahedron_info() {
        let info = surface_info(&tetrahedron());
        assert_eq!(info.euler_characteristic, 2);
        assert!(info.orientable);
        assert_eq!(info.genus, 0);
        assert!(info.neighborly);
    }

    #[test]
    fn heawood_examples() {
        assert_eq!(heawood_minimum(2), 4);
        assert_eq!(heawood_minimum(0), 7);
        assert_eq!(heawood_minimum(-3), 9);
        assert_eq!(heawood_minimum(1), 6);
        assert_eq!(heawood_minimum(-5), 10);
        assert_eq!(heawood_minimum(-10), 12);
    }

    #[test]
    fn heawood_matches_integer_search() {
        // oracle: least n >= 4 with (2n-7)^2 >= 49-24*chi
        for chi in -30..=2i64 {
            let d = 49 - 24 * chi;
            let mut n = 4u64;
            while ((2 * n as i64 - 7) * (2 * n as i64 - 7)) < d {
                n += 1;
            }
            assert_eq!(heawood_minimum(chi), n, "chi={chi}");
        }
    }

    #[test]
    fn canonicalization_is_order_independent() {
        let a = build_surface(&parse_lutz(TETRA).unwrap()).unwrap();
        let b = build_surface(&parse_lutz("[[2,3,4],[1,3,4],[1,2,4],[1,2,3]]").unwrap()).unwrap();
        assert_eq!(a.canonical_bytes(), b.canonical_bytes());
        assert_eq!(a.content_hash(), b.content_hash());
    }

    #[test]
    fn unknown_vertex_link() {
        let s = tetrahedron();
        assert_eq!(s.vertex_link(9).unwrap_err(), SurfaceError::UnknownVertex(9));
    }
}
