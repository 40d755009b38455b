//! Total colorings: one palette `1..=k` shared by vertices and edges, with
//! adjacent vertices, incident edges, and edge/endpoint pairs required to
//! differ.
//!
//! Colorings are kept as ordered maps from [`Element`] to color, so a
//! partial coloring is simply a map that misses some elements. The solver
//! is exact backtracking with forward checking over the conflict pairs; its
//! element order (vertices ascending, then edges in lexicographic endpoint
//! order) and ascending color order make the emitted coloring reproducible.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Element, PlanarEmbedding};
use crate::rng::SplitMix64;

pub type Color = u8;

/// Upper bound on palette sizes accepted by the solver (colors are tracked
/// in a 64-bit domain mask).
pub const MAX_COLORS: u8 = 63;

/// A partial or total assignment of colors `1..=k` to graph elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalColoring {
    k: Color,
    map: BTreeMap<Element, Color>,
}

impl TotalColoring {
    pub fn new(k: Color) -> TotalColoring {
        TotalColoring { k, map: BTreeMap::new() }
    }

    /// Palette size `k`.
    pub fn palette(&self) -> Color {
        self.k
    }

    pub fn get(&self, e: Element) -> Option<Color> {
        self.map.get(&e).copied()
    }

    /// Assign or overwrite a color (the raw map operation; scripted moves
    /// go through `extension::apply_move` instead, which validates).
    pub fn set(&mut self, e: Element, c: Color) {
        self.map.insert(e, c);
    }

    pub fn unset(&mut self, e: Element) -> Option<Color> {
        self.map.remove(&e)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Colored elements in element order.
    pub fn iter(&self) -> impl Iterator<Item = (Element, Color)> + '_ {
        self.map.iter().map(|(&e, &c)| (e, c))
    }
}

/// The vertex/edge structure coloring operations run on.
///
/// This is deliberately weaker than [`PlanarEmbedding`]: reduction
/// surgeries delete vertices and edges or add edges, and the result may be
/// disconnected or lack a meaningful embedding, yet it still has to be
/// colored. Vertex ids are arbitrary (not necessarily contiguous) so that
/// elements keep their identity across a surgery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementGraph {
    verts: Vec<usize>,
    edges: Vec<(usize, usize)>,
    adj: BTreeMap<usize, Vec<usize>>,
}

impl ElementGraph {
    /// Build from explicit parts. Endpoints are canonicalized; edge
    /// endpoints must appear in `verts`.
    pub fn from_parts(mut verts: Vec<usize>, raw_edges: Vec<(usize, usize)>) -> ElementGraph {
        verts.sort_unstable();
        verts.dedup();
        let mut edges: Vec<(usize, usize)> = raw_edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adj: BTreeMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in &edges {
            assert!(adj.contains_key(&u) && adj.contains_key(&v), "edge endpoint not in vertex list");
            adj.get_mut(&u).unwrap().push(v);
            adj.get_mut(&v).unwrap().push(u);
        }
        for (_, ns) in adj.iter_mut() {
            ns.sort_unstable();
        }
        ElementGraph { verts, edges, adj }
    }

    pub fn from_embedding(g: &PlanarEmbedding) -> ElementGraph {
        ElementGraph::from_parts((0..g.num_vertices()).collect(), g.edges().to_vec())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.get(&v).map_or(0, |ns| ns.len())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.adj.get(&v).map_or(&[], |ns| ns.as_slice())
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.binary_search(&v).is_ok())
    }

    pub fn max_degree(&self) -> usize {
        self.verts.iter().map(|&v| self.degree(v)).max().unwrap_or(0)
    }

    /// All elements: vertices ascending, then edges lexicographic.
    pub fn elements(&self) -> Vec<Element> {
        let mut out: Vec<Element> = self.verts.iter().map(|&v| Element::Vertex(v)).collect();
        out.extend(self.edges.iter().map(|&(u, v)| Element::Edge(u, v)));
        out
    }

    /// The elements conflicting with `e` (must all receive colors different
    /// from `e`'s): for a vertex its neighbours and incident edges, for an
    /// edge its endpoints and the edges sharing an endpoint.
    pub fn conflicting(&self, e: Element) -> Vec<Element> {
        let mut out = Vec::new();
        match e {
            Element::Vertex(v) => {
                for &u in self.neighbors(v) {
                    out.push(Element::Vertex(u));
                    out.push(Element::edge(u, v));
                }
            }
            Element::Edge(a, b) => {
                out.push(Element::Vertex(a));
                out.push(Element::Vertex(b));
                for &u in self.neighbors(a) {
                    if u != b {
                        out.push(Element::edge(a, u));
                    }
                }
                for &u in self.neighbors(b) {
                    if u != a {
                        out.push(Element::edge(b, u));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// All conflicting element pairs `(a, b)` with `a < b`, in lexicographic
/// order: adjacent vertex pairs, edge/endpoint incidences, and edge pairs
/// sharing an endpoint.
pub fn conflict_pairs_graph(g: &ElementGraph) -> Vec<(Element, Element)> {
    let mut out: Vec<(Element, Element)> = Vec::new();
    for &(u, v) in g.edges() {
        out.push((Element::Vertex(u), Element::Vertex(v)));
        out.push((Element::Vertex(u), Element::Edge(u, v)));
        out.push((Element::Vertex(v), Element::Edge(u, v)));
    }
    for &v in g.vertices() {
        let ns = g.neighbors(v);
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                out.push((Element::edge(v, ns[i]), Element::edge(v, ns[j])));
            }
        }
    }
    let mut out: Vec<(Element, Element)> = out
        .into_iter()
        .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// [`conflict_pairs_graph`] for an embedding.
pub fn conflict_pairs(g: &PlanarEmbedding) -> Vec<(Element, Element)> {
    conflict_pairs_graph(&ElementGraph::from_embedding(g))
}

/// A defect found by the verifier, in the deterministic order the verifier
/// emits them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// A color outside `1..=k`.
    OutOfRange { element: Element, color: Color },
    /// An element without a color (total verification only).
    Uncolored { element: Element },
    /// Two conflicting elements share a color.
    Conflict { a: Element, b: Element, color: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::OutOfRange { element, color } => {
                write!(f, "color {} on {} is outside the palette", color, element)
            }
            Violation::Uncolored { element } => write!(f, "{} is uncolored", element),
            Violation::Conflict { a, b, color } => {
                write!(f, "{} and {} both have color {}", a, b, color)
            }
        }
    }
}

fn verify_on(g: &ElementGraph, phi: &TotalColoring, require_total: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    for e in g.elements() {
        match phi.get(e) {
            Some(c) if c == 0 || c > phi.palette() => {
                out.push(Violation::OutOfRange { element: e, color: c })
            }
            Some(_) => {}
            None if require_total => out.push(Violation::Uncolored { element: e }),
            None => {}
        }
    }
    for (a, b) in conflict_pairs_graph(g) {
        if let (Some(ca), Some(cb)) = (phi.get(a), phi.get(b)) {
            if ca == cb {
                out.push(Violation::Conflict { a, b, color: ca });
            }
        }
    }
    out
}

/// Check a total coloring of `g`: every element colored, colors within the
/// palette, no conflicting pair sharing a color. Empty result means proper.
pub fn verify_total_coloring(g: &PlanarEmbedding, phi: &TotalColoring) -> Vec<Violation> {
    verify_on(&ElementGraph::from_embedding(g), phi, true)
}

/// Like [`verify_total_coloring`] but ignoring uncolored elements, for
/// partial colorings mid-script.
pub fn verify_partial_coloring(g: &PlanarEmbedding, phi: &TotalColoring) -> Vec<Violation> {
    verify_on(&ElementGraph::from_embedding(g), phi, false)
}

/// Graph-level variants used on reduced (post-surgery) structures.
pub fn verify_total_on(g: &ElementGraph, phi: &TotalColoring) -> Vec<Violation> {
    verify_on(g, phi, true)
}

pub fn verify_partial_on(g: &ElementGraph, phi: &TotalColoring) -> Vec<Violation> {
    verify_on(g, phi, false)
}

/// Errors from the solver-side operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringError {
    /// `total_chromatic_number` refuses instances with more than 60
    /// elements (the exact search is exponential).
    InstanceTooLarge { elements: usize },
    /// Palette size beyond [`MAX_COLORS`].
    PaletteTooLarge { k: Color },
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ColoringError::InstanceTooLarge { elements } => {
                write!(f, "instance has {} elements, exact search is capped at 60", elements)
            }
            ColoringError::PaletteTooLarge { k } => {
                write!(f, "palette size {} exceeds the supported maximum {}", k, MAX_COLORS)
            }
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for ColoringError {}

/// Shared backtracking machinery. Elements are indexed in the fixed order
/// `g.elements()`; domains are 64-bit masks with bit `c-1` for color `c`.
struct Search {
    elements: Vec<Element>,
    index: BTreeMap<Element, usize>,
    conflicts: Vec<Vec<usize>>,
    k: Color,
}

impl Search {
    fn new(g: &ElementGraph, k: Color) -> Search {
        let elements = g.elements();
        let index: BTreeMap<Element, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let conflicts = elements
            .iter()
            .map(|&e| g.conflicting(e).into_iter().filter_map(|x| index.get(&x).copied()).collect())
            .collect();
        Search { elements, index, conflicts, k }
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.k) - 1
    }
}

/// Outcome of a capped enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// Every proper coloring was visited; the count is exact.
    Complete(u64),
    /// The cap was hit; enumeration stopped after `cap` colorings.
    Overflow,
}

struct Backtracker {
    search: Search,
    // Assignment per element index; 0 = uncolored.
    colors: Vec<Color>,
    // Free element indices in assignment order.
    order: Vec<usize>,
    // domains[i] = colors not yet excluded by colored conflicting elements.
    domains: Vec<u64>,
}

enum ValueOrder<'r> {
    Ascending,
    /// Ascending over used colors plus the single next unused one — valid
    /// only when the whole palette is symmetric (no preset colors).
    SymmetryBreaking,
    Shuffled(&'r mut SplitMix64),
}

impl Backtracker {
    fn new(
        g: &ElementGraph,
        k: Color,
        preset: Option<&TotalColoring>,
        skip: &BTreeSet<Element>,
    ) -> Option<Backtracker> {
        assert!(k >= 1 && k <= MAX_COLORS, "palette size {} unsupported", k);
        let search = Search::new(g, k);
        let full = search.full_mask();
        let mut colors = alloc::vec![0 as Color; search.elements.len()];
        let mut domains = alloc::vec![full; search.elements.len()];
        if let Some(pre) = preset {
            for (e, c) in pre.iter() {
                if let Some(&i) = search.index.get(&e) {
                    if c == 0 || c > k {
                        return None; // preset color outside palette: no solution
                    }
                    colors[i] = c;
                }
            }
        }
        // Preset conflicts make the instance infeasible up front.
        for i in 0..colors.len() {
            if colors[i] != 0 {
                for &j in &search.conflicts[i] {
                    if colors[j] != 0 && colors[j] == colors[i] && j != i {
                        return None;
                    }
                }
            }
        }
        for i in 0..colors.len() {
            if colors[i] != 0 {
                let bit = 1u64 << (colors[i] - 1);
                for &j in &search.conflicts[i] {
                    domains[j] &= !bit;
                }
            }
        }
        let order: Vec<usize> = (0..search.elements.len())
            .filter(|&i| colors[i] == 0 && !skip.contains(&search.elements[i]))
            .collect();
        Some(Backtracker { search, colors, order, domains })
    }

    /// Exhaustive DFS. `emit` receives each completed assignment; returning
    /// `false` stops the search. Returns `false` when stopped early.
    fn run(
        &mut self,
        pos: usize,
        value_order: &mut ValueOrder<'_>,
        max_used: Color,
        emit: &mut dyn FnMut(&[Color], &[Element]) -> bool,
    ) -> bool {
        if pos == self.order.len() {
            return emit(&self.colors, &self.search.elements);
        }
        let i = self.order[pos];
        let domain = self.domains[i];
        let mut candidates: Vec<Color> = (1..=self.search.k)
            .filter(|&c| domain & (1u64 << (c - 1)) != 0)
            .collect();
        match value_order {
            ValueOrder::Ascending => {}
            ValueOrder::SymmetryBreaking => {
                candidates.retain(|&c| c <= max_used.saturating_add(1));
            }
            ValueOrder::Shuffled(rng) => rng.shuffle(&mut candidates),
        }
        for c in candidates {
            let bit = 1u64 << (c - 1);
            self.colors[i] = c;
            let mut touched: Vec<usize> = Vec::new();
            let mut dead = false;
            for &j in &self.search.conflicts[i] {
                if self.colors[j] == 0 && self.domains[j] & bit != 0 {
                    self.domains[j] &= !bit;
                    touched.push(j);
                    if self.domains[j] == 0 {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead {
                let next_max = if c > max_used { c } else { max_used };
                if !self.run(pos + 1, value_order, next_max, emit) {
                    return false;
                }
            }
            for j in touched {
                self.domains[j] |= bit;
            }
            self.colors[i] = 0;
        }
        true
    }
}

fn collect(colors: &[Color], elements: &[Element], k: Color) -> TotalColoring {
    let mut phi = TotalColoring::new(k);
    for (i, &c) in colors.iter().enumerate() {
        if c != 0 {
            phi.set(elements[i], c);
        }
    }
    phi
}

/// First proper total `k`-coloring of `g` in the deterministic search
/// order, or `None`. Colors ascend and, since an empty start is
/// color-symmetric, each new color is only introduced in ascending order.
pub fn solve_graph(g: &ElementGraph, k: Color) -> Option<TotalColoring> {
    let mut bt = Backtracker::new(g, k, None, &BTreeSet::new())?;
    let mut found = None;
    bt.run(0, &mut ValueOrder::SymmetryBreaking, 0, &mut |colors, elements| {
        found = Some(collect(colors, elements, k));
        false
    });
    found
}

/// Deterministic solve that respects an existing partial coloring.
pub fn solve_extending(g: &ElementGraph, k: Color, partial: &TotalColoring) -> Option<TotalColoring> {
    let mut bt = Backtracker::new(g, k, Some(partial), &BTreeSet::new())?;
    let mut found = None;
    bt.run(0, &mut ValueOrder::Ascending, 0, &mut |colors, elements| {
        found = Some(collect(colors, elements, k));
        false
    });
    found
}

/// Deterministic solve leaving the elements in `skip` uncolored.
pub fn solve_skipping(g: &ElementGraph, k: Color, skip: &BTreeSet<Element>) -> Option<TotalColoring> {
    let mut bt = Backtracker::new(g, k, None, skip)?;
    let mut found = None;
    bt.run(0, &mut ValueOrder::Ascending, 0, &mut |colors, elements| {
        found = Some(collect(colors, elements, k));
        false
    });
    found
}

/// Seeded random proper coloring (first leaf of a value-shuffled search),
/// leaving `skip` uncolored. Same seed, same coloring.
pub fn sample_coloring(
    g: &ElementGraph,
    k: Color,
    skip: &BTreeSet<Element>,
    rng: &mut SplitMix64,
) -> Option<TotalColoring> {
    let mut bt = Backtracker::new(g, k, None, skip)?;
    let mut found = None;
    bt.run(0, &mut ValueOrder::Shuffled(rng), 0, &mut |colors, elements| {
        found = Some(collect(colors, elements, k));
        false
    });
    found
}

/// Visit every proper `k`-coloring of `g` that leaves `skip` uncolored, in
/// deterministic order, stopping after `cap` colorings.
pub fn enumerate_colorings(
    g: &ElementGraph,
    k: Color,
    skip: &BTreeSet<Element>,
    cap: u64,
    mut visit: impl FnMut(&TotalColoring),
) -> Enumeration {
    let Some(mut bt) = Backtracker::new(g, k, None, skip) else {
        return Enumeration::Complete(0);
    };
    let mut count = 0u64;
    let complete = bt.run(0, &mut ValueOrder::Ascending, 0, &mut |colors, elements| {
        count += 1;
        visit(&collect(colors, elements, k));
        count < cap
    });
    if complete {
        Enumeration::Complete(count)
    } else {
        Enumeration::Overflow
    }
}

/// Like [`solve_graph`] on an embedding.
pub fn solve(g: &PlanarEmbedding, k: Color) -> Option<TotalColoring> {
    solve_graph(&ElementGraph::from_embedding(g), k)
}

/// Exact total chromatic number by ascending exact solves from `Δ + 1`.
/// Capped at 60 elements; see [`ColoringError::InstanceTooLarge`].
pub fn total_chromatic_number(g: &PlanarEmbedding) -> Result<Color, ColoringError> {
    let eg = ElementGraph::from_embedding(g);
    let elements = eg.vertices().len() + eg.edges().len();
    if elements > 60 {
        return Err(ColoringError::InstanceTooLarge { elements });
    }
    let mut k = (eg.max_degree() + 1) as Color;
    loop {
        if k > MAX_COLORS {
            return Err(ColoringError::PaletteTooLarge { k });
        }
        if solve_graph(&eg, k).is_some() {
            return Ok(k);
        }
        k += 1;
    }
}
