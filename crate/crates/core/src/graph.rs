//! Plane graphs given as rotation systems.
//!
//! A graph on vertices `0..n` is described by listing, for every vertex, its
//! neighbours in clockwise order. Faces are traced with the next-dart rule:
//! the dart `(u, v)` is followed by `(v, w)` where `w` immediately *precedes*
//! `u` in the rotation at `v`. A rotation system is accepted as a plane
//! embedding exactly when the traced faces satisfy Euler's formula
//! `|V| - |E| + |F| = 2`; the graph must also be simple and connected.
//! Bridges are allowed — a bridge contributes both of its darts to the same
//! face walk.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

/// A vertex or an edge of a plane graph. Edges are canonical: the smaller
/// endpoint always comes first.
///
/// The derived order (all vertices ascending, then all edges in
/// lexicographic endpoint order) is the iteration order used throughout the
/// crate whenever elements are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    Edge(usize, usize),
}

impl Element {
    /// Canonical edge element for an endpoint pair in either order.
    pub fn edge(u: usize, v: usize) -> Element {
        if u <= v {
            Element::Edge(u, v)
        } else {
            Element::Edge(v, u)
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{}", v),
            Element::Edge(u, v) => write!(f, "e{}-{}", u, v),
        }
    }
}

/// One traced face: the cyclic sequence of darts `(from, to)` visited by the
/// next-dart rule. The walk of a face incident to a bridge passes the bridge
/// twice, once per direction, so walk length counts edge *sides*.
///
/// The only face with an empty walk is the single face of the one-vertex
/// graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<(usize, usize)>,
}

impl FaceWalk {
    /// Walk length `ℓ(f)`: the number of darts on the boundary.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices on the walk, in walk order, with repetitions (one entry per
    /// dart source).
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|d| d.0)
    }

    /// The set of distinct vertices on the walk.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices().collect()
    }

    /// Does the walk use the edge `{u, v}` (in either direction)?
    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.darts.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }
}

/// Errors from embedding construction and queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphError {
    /// `u` lists `v` as a neighbour but `v` does not list `u`.
    AsymmetricAdjacency { u: usize, v: usize },
    /// A rotation lists the vertex itself or repeats a neighbour.
    LoopOrMultiEdge { v: usize },
    /// The rotation system describes a disconnected graph.
    Disconnected,
    /// Face tracing contradicts Euler's formula, so the rotation system is
    /// not an embedding in the plane.
    NonPlanarEmbedding { vertices: usize, edges: usize, faces: usize },
    /// A vertex id outside `0..n` was referenced.
    UnknownVertex { v: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphError::AsymmetricAdjacency { u, v } => {
                write!(f, "asymmetric adjacency: {} lists {} but not conversely", u, v)
            }
            GraphError::LoopOrMultiEdge { v } => {
                write!(f, "loop or repeated neighbour in the rotation of {}", v)
            }
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::NonPlanarEmbedding { vertices, edges, faces } => write!(
                f,
                "not a plane embedding: |V|={}, |E|={}, traced |F|={} violate Euler's formula",
                vertices, edges, faces
            ),
            GraphError::UnknownVertex { v } => write!(f, "unknown vertex id {}", v),
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for GraphError {}

/// Per-vertex degree and incidence statistics.
///
/// `n_k` counts neighbours of degree `k`. `m_k` counts incidences with faces
/// of length `k` *with multiplicity*: a vertex appearing twice on one face
/// walk (possible along bridges) is counted twice, so the `m_k` always sum
/// to `d(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degree: usize,
    neighbor_degrees: BTreeMap<usize, usize>,
    face_lengths: BTreeMap<usize, usize>,
}

impl DegreeStats {
    /// Number of neighbours of degree exactly `k`.
    pub fn n_k(&self, k: usize) -> usize {
        self.neighbor_degrees.get(&k).copied().unwrap_or(0)
    }

    /// Number of incidences with faces of length exactly `k`.
    pub fn m_k(&self, k: usize) -> usize {
        self.face_lengths.get(&k).copied().unwrap_or(0)
    }

    /// Number of neighbours with degree in `range`.
    pub fn n_in(&self, range: core::ops::RangeInclusive<usize>) -> usize {
        self.neighbor_degrees
            .iter()
            .filter(|(k, _)| range.contains(k))
            .map(|(_, c)| c)
            .sum()
    }

    pub fn neighbor_degree_counts(&self) -> &BTreeMap<usize, usize> {
        &self.neighbor_degrees
    }

    pub fn face_length_counts(&self) -> &BTreeMap<usize, usize> {
        &self.face_lengths
    }
}

/// A validated plane embedding: simple, connected, with faces traced by the
/// next-dart rule and certified by Euler's formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotations: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    faces: Vec<FaceWalk>,
    dart_face: BTreeMap<(usize, usize), usize>,
}

/// Validate a rotation system and trace its faces. See
/// [`PlanarEmbedding::build`].
pub fn build_embedding(rotations: Vec<Vec<usize>>) -> Result<PlanarEmbedding, GraphError> {
    PlanarEmbedding::build(rotations)
}

impl PlanarEmbedding {
    /// Validate a rotation system (one clockwise neighbour list per vertex)
    /// and trace its faces.
    ///
    /// Rejects loops, repeated neighbours, asymmetric adjacency,
    /// disconnected graphs and rotation systems whose traced faces fail
    /// Euler's formula. The single-vertex graph is accepted with one empty
    /// face walk.
    pub fn build(rotations: Vec<Vec<usize>>) -> Result<PlanarEmbedding, GraphError> {
        let n = rotations.len();

        for (u, rot) in rotations.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &v in rot {
                if v >= n {
                    return Err(GraphError::UnknownVertex { v });
                }
                if v == u || !seen.insert(v) {
                    return Err(GraphError::LoopOrMultiEdge { v: u });
                }
            }
        }
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if !rotations[v].contains(&u) {
                    return Err(GraphError::AsymmetricAdjacency { u, v });
                }
            }
        }

        // Connectivity over the undirected graph.
        if n > 0 {
            let mut seen = alloc::vec![false; n];
            let mut stack = alloc::vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &v in &rotations[u] {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        stack.push(v);
                    }
                }
            }
            if count != n {
                return Err(GraphError::Disconnected);
            }
        }

        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();

        // Position of u within the rotation at v, for the next-dart rule.
        let mut pos: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                pos.insert((v, u), i);
            }
        }

        let mut dart_face: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut faces: Vec<FaceWalk> = Vec::new();
        let mut darts: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in &edges {
            darts.push((u, v));
            darts.push((v, u));
        }
        darts.sort_unstable();

        for &start in &darts {
            if dart_face.contains_key(&start) {
                continue;
            }
            let face_id = faces.len();
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                walk.push(cur);
                dart_face.insert(cur, face_id);
                let (u, v) = cur;
                let rot = &rotations[v];
                let i = pos[&(v, u)];
                let w = rot[(i + rot.len() - 1) % rot.len()];
                cur = (v, w);
                if cur == start {
                    break;
                }
            }
            faces.push(FaceWalk { darts: walk });
        }

        if n == 1 && edges.is_empty() {
            // One vertex on the sphere still leaves one face.
            faces.push(FaceWalk { darts: Vec::new() });
        }

        let f = faces.len();
        if n as i64 - edges.len() as i64 + f as i64 != 2 {
            return Err(GraphError::NonPlanarEmbedding {
                vertices: n,
                edges: edges.len(),
                faces: f,
            });
        }

        Ok(PlanarEmbedding { rotations, edges, faces, dart_face })
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Edges in canonical (sorted) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Traced faces, in the deterministic order produced by
    /// [`PlanarEmbedding::build`].
    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    /// Clockwise neighbour list of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// Maximum degree Δ(G); 0 for the one-vertex graph.
    pub fn max_degree(&self) -> usize {
        self.rotations.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.rotations.len() {
            return false;
        }
        self.rotations[u].contains(&v)
    }

    /// The face on the left of dart `(u, v)` under the next-dart rule.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }

    /// The two face slots of edge `{u, v}` — equal ids when the edge is a
    /// bridge.
    pub fn faces_of_edge(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        Some((self.face_of_dart(u, v)?, self.face_of_dart(v, u)?))
    }

    /// Id of a length-3 face whose vertices are exactly `{a, b, c}`, if any.
    pub fn triangle_face(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        let want: BTreeSet<usize> = [a, b, c].into_iter().collect();
        if want.len() != 3 {
            return None;
        }
        // Any 3-face through edge {a, b} has exactly three distinct
        // vertices, so checking the two faces of one edge suffices.
        let (f1, f2) = self.faces_of_edge(a, b)?;
        for f in [f1, f2] {
            if self.faces[f].len() == 3 && self.faces[f].vertex_set() == want {
                return Some(f);
            }
        }
        None
    }

    /// Lengths of every face containing edge `{u, v}` (two entries, equal
    /// for a bridge's single face counted from both sides).
    pub fn edge_face_lengths(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        let (f1, f2) = self.faces_of_edge(u, v)?;
        Some((self.faces[f1].len(), self.faces[f2].len()))
    }

    /// Degree and incidence statistics for `v`.
    pub fn degree_stats(&self, v: usize) -> Result<DegreeStats, GraphError> {
        if v >= self.rotations.len() {
            return Err(GraphError::UnknownVertex { v });
        }
        let mut neighbor_degrees = BTreeMap::new();
        for &u in &self.rotations[v] {
            *neighbor_degrees.entry(self.degree(u)).or_insert(0) += 1;
        }
        let mut face_lengths = BTreeMap::new();
        for face in &self.faces {
            let hits = face.vertices().filter(|&w| w == v).count();
            if hits > 0 {
                *face_lengths.entry(face.len()).or_insert(0) += hits;
            }
        }
        Ok(DegreeStats { degree: self.degree(v), neighbor_degrees, face_lengths })
    }

    /// All elements (vertices ascending, then edges lexicographic).
    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.num_vertices() + self.num_edges());
        for v in 0..self.num_vertices() {
            out.push(Element::Vertex(v));
        }
        for &(u, v) in &self.edges {
            out.push(Element::Edge(u, v));
        }
        out
    }

    /// The embedding with edge `{u, v}` removed from both rotations.
    ///
    /// Removing a non-bridge edge merges two faces and keeps the embedding
    /// valid; removing a bridge disconnects the graph and yields
    /// [`GraphError::Disconnected`].
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<PlanarEmbedding, GraphError> {
        let mut rotations = self.rotations.clone();
        rotations[u].retain(|&x| x != v);
        rotations[v].retain(|&x| x != u);
        PlanarEmbedding::build(rotations)
    }
}
