//! Automorphisms of a triangulation and orbit machinery for
//! without-loss-of-generality case reduction.
//!
//! Groups at this scale are tiny; they are represented as explicit
//! permutation lists, found by backtracking over vertex images with degree
//! and adjacency pruning.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::surface::SimplicialSurface;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("automorphism search supports at most 16 vertices, surface has {0}")]
    TooManyVertices(usize),
}

/// A vertex permutation mapping triangles to triangles. Stored over dense
/// indices; `perm[v]` is the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism { perm: (0..n).collect() }
    }

    pub fn from_perm(perm: Vec<usize>) -> Self {
        Automorphism { perm }
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_edge(&self, e: [usize; 2]) -> [usize; 2] {
        let mut out = [self.perm[e[0]], self.perm[e[1]]];
        out.sort_unstable();
        out
    }

    pub fn apply_triangle(&self, t: [usize; 3]) -> [usize; 3] {
        let mut out = [self.perm[t[0]], self.perm[t[1]], self.perm[t[2]]];
        out.sort_unstable();
        out
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        // (self ∘ other)(v) = self(other(v))
        Automorphism { perm: other.perm.iter().map(|&v| self.perm[v]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v] = i;
        }
        Automorphism { perm: inv }
    }

    /// Render in cycle notation over original labels, e.g. `(184293)(567)`.
    /// Fixed points are omitted; the identity renders as `()`.
    pub fn cycle_notation(&self, s: &SimplicialSurface) -> String {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        let multi_digit = s.labels().iter().any(|&l| l > 9);
        for start in 0..n {
            if seen[start] || self.perm[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cyc.push(s.label(v).to_string());
                v = self.perm[v];
            }
            out.push('(');
            out.push_str(&cyc.join(if multi_digit { " " } else { "" }));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// The full automorphism group, identity included, sorted canonically.
pub fn automorphism_group(s: &SimplicialSurface) -> Result<Vec<Automorphism>, SymmetryError> {
    let n = s.vertex_count();
    if n > 16 {
        return Err(SymmetryError::TooManyVertices(n));
    }
    let degree: Vec<usize> = (0..n).map(|v| s.adjacency(v).len()).collect();
    let faces: BTreeSet<[usize; 3]> = s.triangles().iter().copied().collect();
    let mut group = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(s, &degree, &faces, 0, &mut image, &mut used, &mut group);
    group.sort();
    // group axioms are cheap to confirm at this scale
    let set: BTreeSet<&[usize]> = group.iter().map(|g| g.perm()).collect();
    for g in &group {
        debug_assert!(set.contains(g.inverse().perm()));
        for h in &group {
            debug_assert!(set.contains(g.compose(h).perm()));
        }
    }
    let _ = set;
    Ok(group)
}

fn search(
    s: &SimplicialSurface,
    degree: &[usize],
    faces: &BTreeSet<[usize; 3]>,
    v: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Automorphism>,
) {
    let n = s.vertex_count();
    if v == n {
        out.push(Automorphism::from_perm(image.clone()));
        return;
    }
    'cand: for w in 0..n {
        if used[w] || degree[w] != degree[v] {
            continue;
        }
        // adjacency consistency with already-assigned vertices
        for u in 0..v {
            if s.adjacency(v).contains(&u) != s.adjacency(w).contains(&image[u]) {
                continue 'cand;
            }
        }
        // face consistency: any face fully assigned must map to a face
        for t in s.triangles() {
            if t.contains(&v) && t.iter().all(|&x| x == v || x < v) {
                let mut img = [0usize; 3];
                for (i, &x) in t.iter().enumerate() {
                    img[i] = if x == v { w } else { image[x] };
                }
                img.sort_unstable();
                if !faces.contains(&img) {
                    continue 'cand;
                }
            }
        }
        image[v] = w;
        used[w] = true;
        search(s, degree, faces, v + 1, image, used, out);
        image[v] = usize::MAX;
        used[w] = false;
    }
}

/// Orbit partition of a set of objects under a group action. Classes are
/// sorted; each class is sorted with its least element as representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition<T> {
    classes: Vec<Vec<T>>,
}

impl<T: Ord + Clone> OrbitPartition<T> {
    pub fn classes(&self) -> &[Vec<T>] {
        &self.classes
    }

    pub fn representatives(&self) -> Vec<&T> {
        self.classes.iter().map(|c| &c[0]).collect()
    }

    pub fn class_of(&self, x: &T) -> Option<&[T]> {
        self.classes.iter().find(|c| c.contains(x)).map(|c| c.as_slice())
    }

    pub fn representative_of(&self, x: &T) -> Option<&T> {
        self.class_of(x).map(|c| &c[0])
    }
}

/// Generic orbit computation over any ordered object set.
pub fn orbits<T, F>(group: &[Automorphism], objects: &[T], act: F) -> OrbitPartition<T>
where
    T: Ord + Clone,
    F: Fn(&Automorphism, &T) -> T,
{
    let object_set: BTreeSet<T> = objects.iter().cloned().collect();
    let mut remaining = object_set.clone();
    let mut classes = Vec::new();
    while let Some(seed) = remaining.iter().next().cloned() {
        let mut class = BTreeSet::new();
        let mut frontier = vec![seed];
        while let Some(x) = frontier.pop() {
            if !class.insert(x.clone()) {
                continue;
            }
            for g in group {
                let y = act(g, &x);
                debug_assert!(
                    object_set.contains(&y),
                    "group action must preserve the object set"
                );
                if !class.contains(&y) {
                    frontier.push(y);
                }
            }
        }
        for x in &class {
            remaining.remove(x);
        }
        classes.push(class.into_iter().collect());
    }
    OrbitPartition { classes }
}

pub fn vertex_orbits(group: &[Automorphism], s: &SimplicialSurface) -> OrbitPartition<usize> {
    let objects: Vec<usize> = (0..s.vertex_count()).collect();
    orbits(group, &objects, |g, &v| g.apply(v))
}

pub fn edge_orbits(group: &[Automorphism], s: &SimplicialSurface) -> OrbitPartition<[usize; 2]> {
    orbits(group, s.edges(), |g, &e| g.apply_edge(e))
}

/// Orbits of canonical cycles (vertex sequences in canonical rotation form).
pub fn cycle_orbits(
    group: &[Automorphism],
    cycles: &[Vec<usize>],
) -> OrbitPartition<Vec<usize>> {
    orbits(group, cycles, |g, c| {
        let mapped: Vec<usize> = c.iter().map(|&v| g.apply(v)).collect();
        crate::cycles::canonical_cycle(&mapped)
    })
}

/// A symmetric-state summary: per-edge facts asserted so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeFact {
    Parity(bool),
    Count(u32),
}

/// Subgroup of elements mapping the fact set to itself.
pub fn stabilizer_filter(
    group: &[Automorphism],
    facts: &[([usize; 2], EdgeFact)],
) -> Vec<Automorphism> {
    let fact_set: BTreeSet<([usize; 2], EdgeFact)> = facts
        .iter()
        .map(|&(e, f)| {
            let key = if e[0] < e[1] { e } else { [e[1], e[0]] };
            (key, f)
        })
        .collect();
    group
        .iter()
        .filter(|g| {
            fact_set
                .iter()
                .all(|&(e, f)| fact_set.contains(&(g.apply_edge(e), f)))
        })
        .cloned()
        .collect()
}

/// Subgroup preserving an edge set setwise.
pub fn edge_set_stabilizer(
    group: &[Automorphism],
    edges: &BTreeSet<[usize; 2]>,
) -> Vec<Automorphism> {
    group
        .iter()
        .filter(|g| edges.iter().all(|&e| edges.contains(&g.apply_edge(e))))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_surface, parse_lutz};

    fn tetrahedron() -> SimplicialSurface {
        build_surface(&parse_lutz("[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]").unwrap()).unwrap()
    }

    #[test]
    fn tetrahedron_group_is_s4() {
        let s = tetrahedron();
        let g = automorphism_group(&s).unwrap();
        assert_eq!(g.len(), 24);
        assert!(g.iter().any(|a| a.is_identity()));
    }

    #[test]
    fn group_closed_under_composition_and_inverse() {
        let s = tetrahedron();
        let g = automorphism_group(&s).unwrap();
        let set: BTreeSet<Vec<usize>> = g.iter().map(|a| a.perm().to_vec()).collect();
        for a in &g {
            assert!(set.contains(&a.inverse().perm().to_vec()));
            for b in &g {
                assert!(set.contains(&a.compose(b).perm().to_vec()));
            }
        }
    }

    #[test]
    fn identity_only_group_gives_singletons() {
        let s = tetrahedron();
        let id = vec![Automorphism::identity(4)];
        let p = vertex_orbits(&id, &s);
        assert_eq!(p.classes().len(), 4);
        assert!(p.classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn orbit_sizes_divide_group_order() {
        let s = tetrahedron();
        let g = automorphism_group(&s).unwrap();
        for class in edge_orbits(&g, &s).classes() {
            assert_eq!(g.len() % class.len(), 0);
        }
    }

    #[test]
    fn stabilizer_of_empty_facts_is_whole_group() {
        let s = tetrahedron();
        let g = automorphism_group(&s).unwrap();
        assert_eq!(stabilizer_filter(&g, &[]).len(), g.len());
    }

    #[test]
    fn cycle_notation_rendering() {
        let s = tetrahedron();
        let a = Automorphism::from_perm(vec![1, 0, 2, 3]);
        assert_eq!(a.cycle_notation(&s), "(12)");
        assert_eq!(Automorphism::identity(4).cycle_notation(&s), "()");
    }
}
