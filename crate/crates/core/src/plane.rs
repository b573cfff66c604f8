//! Combinatorial plane embeddings as rotation systems.
//!
//! Every edge is a pair of darts. A dart `d` leaves vertex `vertex(d)`, and
//! the rotation at a vertex lists its darts in clockwise order. The face to
//! the left of `d` continues with `rot_next(twin(d))`. Loops and parallel
//! edges are allowed; a loop contributes two darts, hence 2 to the degree.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::{Error, Graph, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rot: Vec<Vec<usize>>,
    twin: Vec<usize>,
    vert: Vec<usize>,
    pos: Vec<usize>,
}

/// Face boundaries as dart sequences. Faces are numbered by their smallest
/// dart and each walk starts at that dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceReport {
    pub faces: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    /// Face containing each dart on its boundary.
    pub face_of: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneStats {
    pub min_face_size: usize,
    pub triangle_free_map: bool,
    pub is_npm: bool,
    pub min_degree: usize,
}

impl PlaneGraph {
    /// Builds an embedding from per-vertex clockwise dart lists and twin pairs.
    pub fn from_rotations(rotations: Vec<Vec<usize>>, twins: &[(usize, usize)]) -> Result<PlaneGraph> {
        let darts: usize = rotations.iter().map(Vec::len).sum();
        let mut vert = vec![usize::MAX; darts];
        let mut pos = vec![0; darts];
        for (v, list) in rotations.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::input(format!("vertex {v} has an empty rotation")));
            }
            for (i, &d) in list.iter().enumerate() {
                if d >= darts {
                    return Err(Error::input(format!(
                        "dart {d} at vertex {v} is outside 0..{darts}"
                    )));
                }
                if vert[d] != usize::MAX {
                    return Err(Error::input(format!("dart {d} appears twice in the rotations")));
                }
                vert[d] = v;
                pos[d] = i;
            }
        }
        let mut twin = vec![usize::MAX; darts];
        for &(a, b) in twins {
            if a >= darts || b >= darts {
                return Err(Error::input(format!("twin pair {a} {b} names an unknown dart")));
            }
            if a == b {
                return Err(Error::input(format!("dart {a} cannot be its own twin")));
            }
            if twin[a] != usize::MAX || twin[b] != usize::MAX {
                return Err(Error::input(format!("twin pair {a} {b} reuses a dart")));
            }
            twin[a] = b;
            twin[b] = a;
        }
        if let Some(d) = twin.iter().position(|&t| t == usize::MAX) {
            return Err(Error::input(format!("dart {d} has no twin")));
        }
        Ok(PlaneGraph { rot: rotations, twin, vert, pos })
    }

    /// Builds an embedding of a simple graph from its oriented face cycles.
    ///
    /// Each face is a vertex cycle; every edge must be traversed once in each
    /// direction. Darts are numbered `2i` (from the smaller end) and `2i + 1`
    /// for the `i`-th edge in lexicographic order.
    pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<PlaneGraph> {
        let mut directed = HashSet::new();
        for face in faces {
            for i in 0..face.len() {
                let (u, v) = (face[i], face[(i + 1) % face.len()]);
                if u >= n || v >= n || u == v {
                    return Err(Error::input(format!("face edge {u}-{v} is invalid")));
                }
                if !directed.insert((u, v)) {
                    return Err(Error::input(format!("edge {u}->{v} is traversed twice")));
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = directed.iter().filter(|(u, v)| u < v).copied().collect();
        edges.sort_unstable();
        if edges.len() * 2 != directed.len() || edges.iter().any(|&(u, v)| !directed.contains(&(v, u))) {
            return Err(Error::input("every edge must be traversed once in each direction"));
        }
        let mut dart_of = BTreeMap::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            dart_of.insert((u, v), 2 * i);
            dart_of.insert((v, u), 2 * i + 1);
        }
        // rotation successor of v->u is v->w for each face corner (u, v, w)
        let mut succ = vec![usize::MAX; 2 * edges.len()];
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (u, v, w) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
                succ[dart_of[&(v, u)]] = dart_of[&(v, w)];
            }
        }
        let mut by_vertex = vec![Vec::new(); n];
        for (&(u, _), &d) in &dart_of {
            by_vertex[u].push(d);
        }
        let mut rotations = Vec::with_capacity(n);
        for (v, darts) in by_vertex.iter().enumerate() {
            let start = *darts
                .iter()
                .min()
                .ok_or_else(|| Error::input(format!("vertex {v} lies on no face")))?;
            let mut list = vec![start];
            let mut d = succ[start];
            while d != start {
                if d == usize::MAX || list.len() > darts.len() {
                    return Err(Error::input(format!("faces around vertex {v} do not close up")));
                }
                list.push(d);
                d = succ[d];
            }
            if list.len() != darts.len() {
                return Err(Error::input(format!("faces around vertex {v} form more than one disk")));
            }
            rotations.push(list);
        }
        let twins: Vec<(usize, usize)> = (0..edges.len()).map(|i| (2 * i, 2 * i + 1)).collect();
        PlaneGraph::from_rotations(rotations, &twins)
    }

    /// The cycle `0 1 … n-1` embedded with its two faces.
    pub fn cycle(n: usize) -> Result<PlaneGraph> {
        if n < 3 {
            return Err(Error::input("a simple plane cycle needs at least 3 vertices"));
        }
        let fwd: Vec<usize> = (0..n).collect();
        let bwd: Vec<usize> = (0..n).rev().collect();
        PlaneGraph::from_faces(n, &[fwd, bwd])
    }

    /// The `k`-gonal prism: bottom cycle `0..k`, top cycle `k..2k`.
    pub fn prism(k: usize) -> Result<PlaneGraph> {
        if k < 3 {
            return Err(Error::input("a prism needs k >= 3"));
        }
        let mut faces = vec![(0..k).map(|i| (k - i) % k).collect::<Vec<_>>(), (k..2 * k).collect()];
        for i in 0..k {
            let j = (i + 1) % k;
            faces.push(vec![i, j, k + j, k + i]);
        }
        PlaneGraph::from_faces(2 * k, &faces)
    }

    pub fn cube() -> PlaneGraph {
        PlaneGraph::prism(4).expect("the cube is a valid prism")
    }

    /// Icosahedron with apex 0, upper ring 1..=5, lower ring 6..=10, base 11.
    pub fn icosahedron() -> PlaneGraph {
        let up = |k: usize| 1 + k % 5;
        let low = |k: usize| 6 + k % 5;
        let mut faces = Vec::new();
        for k in 0..5 {
            faces.push(vec![0, up(k), up(k + 1)]);
            faces.push(vec![up(k), low(k), up(k + 1)]);
            faces.push(vec![up(k + 1), low(k), low(k + 1)]);
            faces.push(vec![11, low(k + 1), low(k)]);
        }
        PlaneGraph::from_faces(12, &faces).expect("the icosahedron faces are consistent")
    }

    pub fn dodecahedron() -> PlaneGraph {
        PlaneGraph::icosahedron()
            .dual()
            .expect("the icosahedron is connected")
    }

    pub fn order(&self) -> usize {
        self.rot.len()
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.rot.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    /// Vertex the dart leaves from.
    pub fn vertex(&self, d: usize) -> usize {
        self.vert[d]
    }

    /// Vertex the dart points to.
    pub fn head(&self, d: usize) -> usize {
        self.vert[self.twin[d]]
    }

    pub fn rot_next(&self, d: usize) -> usize {
        let list = &self.rot[self.vert[d]];
        list[(self.pos[d] + 1) % list.len()]
    }

    pub fn rot_prev(&self, d: usize) -> usize {
        let list = &self.rot[self.vert[d]];
        list[(self.pos[d] + list.len() - 1) % list.len()]
    }

    /// Next dart along the boundary of the face left of `d`.
    pub fn face_next(&self, d: usize) -> usize {
        self.rot_next(self.twin[d])
    }

    /// Previous dart along the boundary of the face left of `d`.
    pub fn face_prev(&self, d: usize) -> usize {
        self.twin[self.rot_prev(d)]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.rot[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Face boundaries; fails on disconnected or non-planar rotation systems.
    pub fn faces(&self) -> Result<FaceReport> {
        if !self.is_connected() {
            return Err(Error::input("face extraction needs a connected embedding"));
        }
        let darts = self.dart_count();
        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                walk.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
        let (v, e, f) = (self.order() as i64, self.edge_count() as i64, faces.len() as i64);
        if v - e + f != 2 {
            return Err(Error::input(format!(
                "rotation system is not planar: V - E + F = {}",
                v - e + f
            )));
        }
        let sizes = faces.iter().map(Vec::len).collect();
        Ok(FaceReport { faces, sizes, face_of })
    }

    pub fn stats(&self) -> Result<PlaneStats> {
        let report = self.faces()?;
        let min_face_size = report.sizes.iter().copied().min().unwrap_or(0);
        let min_degree = self.min_degree();
        let triangle_free_map = min_face_size >= 4 && !self.has_triangle();
        Ok(PlaneStats {
            min_face_size,
            triangle_free_map,
            is_npm: min_degree >= 3 && min_face_size >= 3,
            min_degree,
        })
    }

    /// Whether three distinct vertices are pairwise joined.
    fn has_triangle(&self) -> bool {
        let adj = self.neighbor_sets();
        (0..self.order()).any(|u| {
            adj[u].iter().any(|&v| {
                v > u && adj[v].iter().any(|&w| w > v && adj[u].contains(&w))
            })
        })
    }

    fn neighbor_sets(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|v| {
                let mut ns: Vec<usize> = self.rot[v]
                    .iter()
                    .map(|&d| self.head(d))
                    .filter(|&w| w != v)
                    .collect();
                ns.sort_unstable();
                ns.dedup();
                ns
            })
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        (0..self.order()).all(|v| {
            let heads: Vec<usize> = self.rot[v].iter().map(|&d| self.head(d)).collect();
            let distinct: HashSet<usize> = heads.iter().copied().collect();
            !distinct.contains(&v) && distinct.len() == heads.len()
        })
    }

    /// The underlying simple graph; fails if the embedding has loops or
    /// parallel edges.
    pub fn to_graph(&self) -> Result<Graph> {
        if !self.is_simple() {
            return Err(Error::input("the embedding has loops or parallel edges"));
        }
        let edges: Vec<(usize, usize)> = (0..self.dart_count())
            .filter(|&d| d < self.twin[d])
            .map(|d| (self.vertex(d), self.head(d)))
            .collect();
        Graph::new(self.order(), &edges)
    }

    /// Dual embedding: one vertex per face, darts keep their ids and twins.
    pub fn dual(&self) -> Result<PlaneGraph> {
        let report = self.faces()?;
        let twins: Vec<(usize, usize)> = (0..self.dart_count())
            .filter(|&d| d < self.twin[d])
            .map(|d| (d, self.twin[d]))
            .collect();
        PlaneGraph::from_rotations(report.faces, &twins)
    }

    fn rebuild(&mut self) {
        let darts: usize = self.rot.iter().map(Vec::len).sum();
        self.vert = vec![0; darts];
        self.pos = vec![0; darts];
        for (v, list) in self.rot.iter().enumerate() {
            for (i, &d) in list.iter().enumerate() {
                self.vert[d] = v;
                self.pos[d] = i;
            }
        }
    }

    /// Inserts a new 2-vertex on the edge of dart `d`. The new vertex gets the
    /// next vertex id; `d` then points to it. Returns the new dart leaving the
    /// new vertex toward the old head of `d`.
    pub fn subdivide_edge(&mut self, d: usize) -> Result<usize> {
        if d >= self.dart_count() {
            return Err(Error::input(format!("unknown dart {d}")));
        }
        let t = self.twin[d];
        let base = self.dart_count();
        let (back, fwd) = (base, base + 1);
        self.twin.extend([d, t]);
        self.twin[d] = back;
        self.twin[t] = fwd;
        self.rot.push(vec![back, fwd]);
        self.rebuild();
        Ok(fwd)
    }

    /// Inserts `t` new vertices on the edge of dart `d`, numbered in order
    /// from the tail of `d` to its head.
    pub fn subdivide_edge_times(&mut self, d: usize, t: usize) -> Result<()> {
        let mut cur = d;
        for _ in 0..t {
            cur = self.subdivide_edge(cur)?;
        }
        Ok(())
    }

    /// Adds an edge inside a face between the corners at the tails of `d1`
    /// and `d2`, which must lie on the same face and at distinct vertices.
    /// Returns the new dart leaving `vertex(d1)`.
    pub fn add_chord(&mut self, d1: usize, d2: usize) -> Result<usize> {
        let report = self.faces()?;
        if d1 >= self.dart_count() || d2 >= self.dart_count() {
            return Err(Error::input("chord uses an unknown dart"));
        }
        if report.face_of[d1] != report.face_of[d2] {
            return Err(Error::input(format!("darts {d1} and {d2} lie on different faces")));
        }
        let (u, v) = (self.vert[d1], self.vert[d2]);
        if u == v {
            return Err(Error::input("chord endpoints coincide"));
        }
        let (e, e_back) = (self.dart_count(), self.dart_count() + 1);
        self.twin.extend([e_back, e]);
        let p1 = self.pos[d1];
        self.rot[u].insert(p1, e);
        let p2 = self.rot[v].iter().position(|&x| x == d2).expect("dart lies in its rotation");
        self.rot[v].insert(p2, e_back);
        self.rebuild();
        Ok(e)
    }

    /// Adds a new vertex inside a face, joined to the tails of the given
    /// corner darts, which must all lie on one face in boundary order.
    pub fn add_vertex_in_face(&mut self, corners: &[usize]) -> Result<usize> {
        let Some((&first, rest)) = corners.split_first() else {
            return Err(Error::input("a new vertex needs at least one corner"));
        };
        let report = self.faces()?;
        if corners.iter().any(|&c| c >= self.dart_count()) {
            return Err(Error::input("corner uses an unknown dart"));
        }
        let face = report.face_of[first];
        let walk = &report.faces[face];
        let mut last_index = None;
        for &c in corners {
            let Some(i) = walk.iter().position(|&d| d == c).filter(|_| report.face_of[c] == face) else {
                return Err(Error::input("corners lie on different faces"));
            };
            let offset = (i + walk.len() - walk.iter().position(|&d| d == first).unwrap()) % walk.len();
            if last_index.is_some_and(|l| offset <= l) {
                return Err(Error::input("corners must be distinct and in boundary order"));
            }
            last_index = Some(offset);
        }
        // pendant edge to the first corner, then chords from the new vertex
        let x = self.order();
        let u = self.vert[first];
        let (e, back) = (self.dart_count(), self.dart_count() + 1);
        self.twin.extend([back, e]);
        let p = self.pos[first];
        self.rot[u].insert(p, e);
        self.rot.push(vec![back]);
        self.rebuild();
        let mut at_x = back;
        for &c in rest {
            at_x = self.add_chord(at_x, c)?;
        }
        Ok(x)
    }

    /// Canonical text: rotation lines, a blank line, then twin pairs.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, list) in self.rot.iter().enumerate() {
            let darts: Vec<String> = list.iter().map(usize::to_string).collect();
            writeln!(out, "{v}: {}", darts.join(" ")).unwrap();
        }
        out.push('\n');
        for d in 0..self.dart_count() {
            if d < self.twin[d] {
                writeln!(out, "{d} {}", self.twin[d]).unwrap();
            }
        }
        out
    }

    /// Parses the rotation file format written by [`PlaneGraph::to_text`].
    /// Text after `#` is ignored.
    pub fn parse(text: &str) -> Result<PlaneGraph> {
        let mut rotations = Vec::new();
        let mut twins = Vec::new();
        let mut in_twins = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let had_comment = raw.contains('#');
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                if !had_comment && !rotations.is_empty() {
                    in_twins = true;
                }
                continue;
            }
            let bad = |what: &str| Error::input(format!("line {line_no}: {what}"));
            if !in_twins {
                let (head, tail) = line.split_once(':').ok_or_else(|| bad("expected `v: darts`"))?;
                let v: usize = head.trim().parse().map_err(|_| bad("bad vertex id"))?;
                if v != rotations.len() {
                    return Err(bad("rotation lines must list vertices 0, 1, 2, … in order"));
                }
                let darts = tail
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| bad("bad dart id")))
                    .collect::<Result<Vec<_>>>()?;
                rotations.push(darts);
            } else {
                let nums = line
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| bad("bad dart id")))
                    .collect::<Result<Vec<_>>>()?;
                let [a, b] = nums[..] else {
                    return Err(bad("expected `dart twin`"));
                };
                twins.push((a, b));
            }
        }
        PlaneGraph::from_rotations(rotations, &twins)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(pg: &PlaneGraph) -> (usize, usize, usize) {
        (pg.order(), pg.edge_count(), pg.faces().unwrap().faces.len())
    }

    #[test]
    fn polyhedra() {
        assert_eq!(counts(&PlaneGraph::cube()), (8, 12, 6));
        assert_eq!(counts(&PlaneGraph::icosahedron()), (12, 30, 20));
        assert_eq!(counts(&PlaneGraph::dodecahedron()), (20, 30, 12));
        assert!(PlaneGraph::cube().faces().unwrap().sizes.iter().all(|&s| s == 4));
        assert!(PlaneGraph::icosahedron().faces().unwrap().sizes.iter().all(|&s| s == 3));
        let ico = PlaneGraph::icosahedron().to_graph().unwrap();
        assert!(ico.degrees().iter().all(|&d| d == 5));
    }

    #[test]
    fn single_loop() {
        let pg = PlaneGraph::from_rotations(vec![vec![0, 1]], &[(0, 1)]).unwrap();
        assert_eq!(counts(&pg), (1, 1, 2));
        assert_eq!(pg.degree(0), 2);
        assert!(!pg.is_simple());
    }

    #[test]
    fn heptagon() {
        let pg = PlaneGraph::cycle(7).unwrap();
        assert_eq!(pg.faces().unwrap().sizes, vec![7, 7]);
        let s = pg.stats().unwrap();
        assert_eq!(
            s,
            PlaneStats { min_face_size: 7, triangle_free_map: true, is_npm: false, min_degree: 2 }
        );
    }

    #[test]
    fn stats_of_polyhedra() {
        let cube = PlaneGraph::cube().stats().unwrap();
        assert_eq!(
            cube,
            PlaneStats { min_face_size: 4, triangle_free_map: true, is_npm: true, min_degree: 3 }
        );
        let ico = PlaneGraph::icosahedron().stats().unwrap();
        assert_eq!(
            ico,
            PlaneStats { min_face_size: 3, triangle_free_map: false, is_npm: true, min_degree: 5 }
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PlaneGraph::from_rotations(vec![vec![0, 1]], &[]).is_err());
        assert!(PlaneGraph::from_rotations(vec![vec![0, 0]], &[(0, 1)]).is_err());
        assert!(PlaneGraph::from_rotations(vec![vec![0], vec![]], &[(0, 1)]).is_err());
        // two disjoint loops: valid darts but disconnected
        let two = PlaneGraph::from_rotations(vec![vec![0, 1], vec![2, 3]], &[(0, 1), (2, 3)]).unwrap();
        assert!(two.faces().is_err());
        // flipping one rotation of the prism leaves the plane
        let mut rot = PlaneGraph::prism(3).unwrap().rot.clone();
        rot[0].swap(0, 1);
        let twins: Vec<_> = (0..9).map(|i| (2 * i, 2 * i + 1)).collect();
        let twisted = PlaneGraph::from_rotations(rot, &twins).unwrap();
        assert!(twisted.faces().is_err());
    }

    #[test]
    fn text_round_trip() {
        for pg in [PlaneGraph::cube(), PlaneGraph::icosahedron(), PlaneGraph::dodecahedron()] {
            let text = pg.to_text();
            let back = PlaneGraph::parse(&text).unwrap();
            assert_eq!(back, pg);
            assert_eq!(back.to_text(), text);
        }
        let commented = "# loop\n0: 0 1\n\n0 1 # pair\n";
        assert_eq!(PlaneGraph::parse(commented).unwrap().edge_count(), 1);
    }

    #[test]
    fn subdivision_keeps_faces() {
        let mut pg = PlaneGraph::cube();
        let edges: Vec<usize> = (0..24).filter(|&d| d < pg.twin(d)).collect();
        for d in edges {
            pg.subdivide_edge_times(d, 2).unwrap();
        }
        let report = pg.faces().unwrap();
        assert_eq!(report.sizes, vec![12; 6]);
        assert_eq!(pg.order(), 8 + 24);
        let g = pg.to_graph().unwrap();
        assert_eq!(g.girth(), Some(12));
    }

    #[test]
    fn chords_and_inner_vertices() {
        let mut pg = PlaneGraph::prism(6).unwrap();
        let report = pg.faces().unwrap();
        let hexagon = report.sizes.iter().position(|&s| s == 6).unwrap();
        let walk = report.faces[hexagon].clone();
        pg.add_chord(walk[0], walk[3]).unwrap();
        let sizes = pg.faces().unwrap().sizes;
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 8);
        assert_eq!(pg.edge_count(), 19);

        let mut pg = PlaneGraph::prism(6).unwrap();
        let x = pg.add_vertex_in_face(&[walk[0], walk[2], walk[4]]).unwrap();
        assert_eq!(pg.degree(x), 3);
        let report = pg.faces().unwrap();
        assert_eq!(report.faces.len(), 10);
        assert!(pg.stats().unwrap().triangle_free_map);
    }

    #[test]
    fn dual_of_cube_is_octahedron() {
        let oct = PlaneGraph::cube().dual().unwrap();
        assert_eq!(counts(&oct), (6, 12, 8));
        assert!((0..6).all(|v| oct.degree(v) == 4));
    }
}
