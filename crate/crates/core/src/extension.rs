//! Undoing a reduction: recoloring scripts that extend a coloring of a
//! reduced graph back to the whole graph.
//!
//! Every reducible structure in [`crate::patterns`] comes with a recipe: a
//! reduction (usually deleting one edge), and a short list of *plays* — move
//! sequences that repair the coloring after the deleted edge returns.  A play
//! is speculative: its moves are applied to a scratch copy without
//! intermediate checking, and the result is kept only when the final state is
//! conflict-free and the returning edge got a color.  The first play that
//! lands wins; if none lands the engine reports a case miss rather than
//! guessing.
//!
//! Scripts for structures anchored at a high-degree hub are written against a
//! fixed *figure palette* (the hub's star colored 1,2,3,… and the hub itself
//! with the next label).  Before running those plays, the engine builds the
//! unique palette bijection that carries the actual coloring onto the figure
//! labels, so the literal colors in each play land on the right actual
//! colors.  Properness is invariant under any palette bijection, so a play
//! that repairs the figure repairs every host the same way.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{
    solve_graph, solve_skipping, verify_partial_on, verify_total_on, Color, ElementGraph,
    TotalColoring, Violation,
};
use crate::graph::{Element, PlanarEmbedding};
use crate::patterns::{catalog, ConfigurationPattern, MatchWitness, WitnessKind};

/// Why an extension operation could not proceed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    /// `available_colors` was asked about an element that already has one.
    ElementAlreadyColored(Element),
    /// A move referenced an element outside the graph.
    NoSuchElement(Element),
    /// A move was structurally impossible (swap of an uncolored edge,
    /// non-alternating path, color outside the palette, …).
    InapplicableMove { mv: Move, reason: &'static str },
    /// Greedy finishing found an element with no remaining color.
    NoAvailableColor(Element),
    /// No script is registered under the requested identifier.
    UnknownLemma(String),
    /// The witness does not fit the script (wrong kind, wrong degrees,
    /// missing edges, unusable supplied coloring, wrong palette).
    BadWitness(String),
    /// The reduced graph admits no proper coloring, so there is nothing to
    /// extend.
    ReducedGraphNotColorable,
    /// Every play of the script failed on this coloring.
    ScriptCaseMiss { lemma: String, detail: String },
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::ElementAlreadyColored(e) => write!(f, "{} is already colored", e),
            ExtensionError::NoSuchElement(e) => write!(f, "{} is not in the graph", e),
            ExtensionError::InapplicableMove { mv, reason } => {
                write!(f, "cannot apply `{}`: {}", mv, reason)
            }
            ExtensionError::NoAvailableColor(e) => {
                write!(f, "no color is available for {}", e)
            }
            ExtensionError::UnknownLemma(id) => write!(f, "no script for `{}`", id),
            ExtensionError::BadWitness(why) => write!(f, "unusable witness: {}", why),
            ExtensionError::ReducedGraphNotColorable => {
                write!(f, "the reduced graph has no proper coloring")
            }
            ExtensionError::ScriptCaseMiss { lemma, detail } => {
                write!(f, "no play of `{}` applies: {}", lemma, detail)
            }
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for ExtensionError {}

/// One recoloring step, in graph space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Give `element` this color, overwriting any previous one.
    Assign(Element, Color),
    /// Remove the color of `element`.
    Uncolor(Element),
    /// Exchange the colors of two colored edges.
    Swap(Element, Element),
    /// Flip the two colors along an alternating edge path, given by its
    /// vertices in order.
    Alternate(Vec<usize>),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Assign(e, c) => write!(f, "assign {} <- {}", e, c),
            Move::Uncolor(e) => write!(f, "uncolor {}", e),
            Move::Swap(a, b) => write!(f, "swap {} {}", a, b),
            Move::Alternate(path) => {
                write!(f, "alternate")?;
                for v in path {
                    write!(f, " v{}", v)?;
                }
                Ok(())
            }
        }
    }
}

fn in_graph(g: &ElementGraph, e: Element) -> bool {
    match e {
        Element::Vertex(v) => g.vertices().contains(&v),
        Element::Edge(u, v) => g.contains_edge(u, v),
    }
}

/// Colors in `1..=k` not blocked by any colored neighbour of `e`.
fn free_colors(g: &ElementGraph, phi: &TotalColoring, e: Element) -> Vec<Color> {
    let blocked: BTreeSet<Color> = g
        .conflicting(e)
        .into_iter()
        .filter_map(|o| phi.get(o))
        .collect();
    (1..=phi.palette()).filter(|c| !blocked.contains(c)).collect()
}

/// The colors that could legally be given to the uncolored element `e`.
pub fn available_colors(
    g: &ElementGraph,
    phi: &TotalColoring,
    e: Element,
) -> Result<Vec<Color>, ExtensionError> {
    if !in_graph(g, e) {
        return Err(ExtensionError::NoSuchElement(e));
    }
    if phi.get(e).is_some() {
        return Err(ExtensionError::ElementAlreadyColored(e));
    }
    Ok(free_colors(g, phi, e))
}

/// Apply one move structurally, without judging the result.
fn apply_raw(
    g: &ElementGraph,
    phi: &mut TotalColoring,
    mv: &Move,
) -> Result<(), ExtensionError> {
    let fail = |reason| Err(ExtensionError::InapplicableMove { mv: mv.clone(), reason });
    match mv {
        Move::Assign(e, c) => {
            if !in_graph(g, *e) {
                return Err(ExtensionError::NoSuchElement(*e));
            }
            if *c == 0 || *c > phi.palette() {
                return fail("color is outside the palette");
            }
            phi.set(*e, *c);
            Ok(())
        }
        Move::Uncolor(e) => {
            if !in_graph(g, *e) {
                return Err(ExtensionError::NoSuchElement(*e));
            }
            if phi.unset(*e).is_none() {
                return fail("element has no color to remove");
            }
            Ok(())
        }
        Move::Swap(a, b) => {
            for e in [a, b] {
                if !matches!(e, Element::Edge(..)) {
                    return fail("swaps act on edges");
                }
                if !in_graph(g, *e) {
                    return Err(ExtensionError::NoSuchElement(*e));
                }
            }
            if a == b {
                return fail("swap needs two distinct edges");
            }
            let (Some(ca), Some(cb)) = (phi.get(*a), phi.get(*b)) else {
                return fail("swap needs two colored edges");
            };
            phi.set(*a, cb);
            phi.set(*b, ca);
            Ok(())
        }
        Move::Alternate(path) => {
            if path.len() < 3 {
                return fail("alternating path needs at least two edges");
            }
            let mut edges = Vec::with_capacity(path.len() - 1);
            for w in path.windows(2) {
                let e = Element::edge(w[0], w[1]);
                if !in_graph(g, e) {
                    return Err(ExtensionError::NoSuchElement(e));
                }
                if edges.contains(&e) {
                    return fail("alternating path repeats an edge");
                }
                edges.push(e);
            }
            let colors: Vec<Color> = match edges.iter().map(|&e| phi.get(e)).collect() {
                Some(cs) => cs,
                None => return fail("alternating path has an uncolored edge"),
            };
            let a = colors[0];
            let Some(&b) = colors.iter().find(|&&c| c != a) else {
                return fail("path edges all share one color");
            };
            for (i, &c) in colors.iter().enumerate() {
                let want = if i % 2 == 0 { a } else { b };
                if c != want {
                    return fail("path edges do not alternate two colors");
                }
            }
            for (&e, &c) in edges.iter().zip(&colors) {
                phi.set(e, if c == a { b } else { a });
            }
            Ok(())
        }
    }
}

/// Apply one move and report every defect of the resulting partial coloring.
/// An empty report means the move kept the coloring proper.
pub fn apply_move(
    g: &ElementGraph,
    phi: &TotalColoring,
    mv: &Move,
) -> Result<(TotalColoring, Vec<Violation>), ExtensionError> {
    let mut next = phi.clone();
    apply_raw(g, &mut next, mv)?;
    let report = verify_partial_on(g, &next);
    Ok((next, report))
}

fn greedy_fill(
    g: &ElementGraph,
    phi: &mut TotalColoring,
    log: &mut Vec<Move>,
) -> Result<(), ExtensionError> {
    for &v in g.vertices() {
        let e = Element::Vertex(v);
        if phi.get(e).is_none() && g.degree(v) <= 4 {
            let c = *free_colors(g, phi, e)
                .first()
                .ok_or(ExtensionError::NoAvailableColor(e))?;
            phi.set(e, c);
            log.push(Move::Assign(e, c));
        }
    }
    Ok(())
}

/// Color every uncolored vertex of degree at most four, in ascending order,
/// each with its smallest available color.  Such vertices see at most eight
/// occupied colors, so with nine colors this cannot get stuck on a proper
/// partial coloring.
pub fn greedy_finish_small(
    g: &ElementGraph,
    phi: &TotalColoring,
) -> Result<TotalColoring, ExtensionError> {
    let mut out = phi.clone();
    greedy_fill(g, &mut out, &mut Vec::new())?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Scripts.

type Role = &'static str;
type RoleEdge = (Role, Role);

/// One step of a play, in figure space.  Colors are figure labels; the
/// palette bijection turns them into actual colors when the play runs.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Step {
    /// Color this edge with a figure label, overwriting.
    Set(RoleEdge, Color),
    /// Color this uncolored edge with its smallest available color.
    Free(RoleEdge),
    /// Exchange the colors of two edges.
    Swap(RoleEdge, RoleEdge),
    /// Flip the two colors along this alternating path of roles.
    Alt(Vec<Role>),
}

fn set(a: Role, b: Role, label: Color) -> Step {
    Step::Set((a, b), label)
}

fn free(a: Role, b: Role) -> Step {
    Step::Free((a, b))
}

fn swap(a: RoleEdge, b: RoleEdge) -> Step {
    Step::Swap(a, b)
}

type Play = Vec<Step>;

/// How an off-star pinned edge is located: a named far endpoint, or the one
/// colored edge of `at` that no other pin claimed.
#[derive(Debug, Clone, Copy)]
struct ForcedPin {
    at: Role,
    toward: Option<Role>,
    label: Color,
}

/// A recoloring script for one reducible structure: the reduction target,
/// the vertices left for greedy finishing, the figure palette pins, and the
/// ordered plays.
struct Script {
    lemma: &'static str,
    /// Pattern variant this script serves; `"*"` serves every variant.
    variant: &'static str,
    /// Role pair of the edge removed by the reduction.
    target: RoleEdge,
    /// Roles of the vertices kept uncolored until greedy finishing.
    uncolor: &'static [Role],
    /// Figure labels of the hub's named star edges, as `(far role, label)`.
    star: &'static [(Role, Color)],
    /// Figure label of the hub's own color.
    hub_label: Color,
    /// Off-star pinned edges.
    forced: &'static [ForcedPin],
    plays: Vec<Play>,
}

fn seven_two_threes(variant: &'static str) -> Script {
    // Both forms share one play list; the split form names one more hub
    // neighbour, so its star edge gets a pinned label there.
    let star: &'static [(Role, Color)] =
        if variant == "split" { &[("w", 5), ("x", 6), ("y", 4)] } else { &[("w", 5), ("x", 6)] };
    Script {
        lemma: "lem:7-two-3s",
        variant,
        target: ("u", "v"),
        uncolor: &["u", "w"],
        star,
        hub_label: 7,
        forced: &[
            ForcedPin { at: "u", toward: Some("x"), label: 8 },
            ForcedPin { at: "u", toward: None, label: 9 },
        ],
        plays: vec![
            vec![free("u", "v")],
            vec![set("v", "w", 9), set("u", "v", 5)],
            vec![set("v", "w", 8), set("u", "v", 5)],
            vec![swap(("x", "v"), ("x", "u")), set("v", "w", 6), set("u", "v", 5)],
        ],
    }
}

fn eight_2and3(variant: &'static str) -> Script {
    let mut plays = vec![
        vec![free("u", "v")],
        vec![set("v", "w", 9), set("u", "v", 6)],
        vec![swap(("x", "v"), ("x", "u")), set("v", "w", 7), set("u", "v", 6)],
    ];
    let star: &'static [(Role, Color)] = if variant == "split" {
        plays.push(vec![swap(("y", "v"), ("y", "w")), set("u", "v", 5)]);
        plays.push(vec![
            swap(("y", "v"), ("y", "w")),
            swap(("x", "v"), ("x", "u")),
            set("u", "v", 5),
        ]);
        &[("w", 6), ("x", 7), ("y", 5)]
    } else {
        &[("w", 6), ("x", 7)]
    };
    Script {
        lemma: "lem:8-2and3",
        variant,
        target: ("u", "v"),
        uncolor: &["u", "w"],
        star,
        hub_label: 8,
        forced: &[ForcedPin { at: "u", toward: Some("x"), label: 9 }],
        plays,
    }
}

fn eight_diamond3_no2() -> Script {
    Script {
        lemma: "lem:8-diamond3-no2",
        variant: "",
        target: ("u", "v"),
        uncolor: &["u", "w"],
        star: &[("w", 6), ("x", 7), ("y", 5)],
        hub_label: 8,
        forced: &[ForcedPin { at: "u", toward: None, label: 9 }],
        plays: vec![
            vec![free("u", "v")],
            vec![set("v", "w", 9), set("u", "v", 6)],
            vec![swap(("x", "v"), ("x", "w")), set("u", "v", 7)],
            vec![swap(("y", "v"), ("y", "w")), set("u", "v", 5)],
            vec![swap(("x", "v"), ("x", "w")), swap(("y", "v"), ("y", "w")), set("u", "v", 5)],
            vec![swap(("x", "v"), ("x", "w")), swap(("y", "v"), ("y", "w")), set("u", "v", 7)],
        ],
    }
}

fn eight_two_diamonds() -> Script {
    Script {
        lemma: "lem:8-two-diamonds",
        variant: "",
        target: ("v", "z"),
        uncolor: &["u", "w", "z"],
        star: &[("s", 1), ("w", 2), ("p", 3), ("x", 5), ("u", 6), ("y", 7)],
        hub_label: 8,
        forced: &[],
        plays: vec![
            vec![free("v", "z")],
            vec![set("v", "u", 9), set("v", "z", 6)],
            vec![swap(("x", "u"), ("x", "v")), set("v", "z", 5)],
            vec![swap(("y", "v"), ("y", "u")), set("v", "z", 7)],
            vec![set("v", "w", 9), set("v", "z", 2)],
            vec![swap(("s", "w"), ("s", "v")), set("v", "z", 1)],
            vec![swap(("p", "v"), ("p", "w")), set("v", "z", 3)],
            // Corner repairs beyond the six main plays.  The double swaps
            // rotate both outer edges of one diamond through the hub; which
            // spoke label that frees depends on which outer edge carried 9,
            // so each double swap appears once per freeable label.
            vec![swap(("x", "v"), ("x", "u")), swap(("y", "v"), ("y", "u")), set("v", "z", 7)],
            vec![swap(("y", "v"), ("y", "z")), swap(("y", "u"), ("y", "z")), set("v", "z", 7)],
            vec![swap(("s", "v"), ("s", "w")), swap(("p", "v"), ("p", "w")), set("v", "z", 3)],
            vec![swap(("x", "v"), ("x", "u")), swap(("y", "v"), ("y", "u")), set("v", "z", 5)],
            vec![swap(("s", "v"), ("s", "w")), swap(("p", "v"), ("p", "w")), set("v", "z", 1)],
        ],
    }
}

const VS: [Role; 7] = ["v1", "v2", "v3", "v4", "v5", "v6", "v7"];
const PS: [Role; 4] = ["p1", "p2", "p3", "p4"];

/// The boundary chain of the stacked quadrilaterals: `v3, p1, v4, p2, …,
/// v(i-1), p(i-3)`, ending just before the 2-vertex `vi`.
fn chain_233383(i: usize) -> Vec<Role> {
    let mut chain = Vec::new();
    for j in 3..i {
        chain.push(VS[j - 1]);
        chain.push(PS[j - 3]);
    }
    chain
}

fn family_233383(i: usize) -> Script {
    let variant: &'static str = match i {
        4 => "i4",
        5 => "i5",
        6 => "i6",
        7 => "i7",
        _ => unreachable!("the stacked family exists for 4..=7"),
    };
    let vi = VS[i - 1];
    let mut plays: Vec<Play> = vec![
        vec![free("v", vi)],
        vec![set("v", "v1", 9), set("v", vi, 2)],
    ];
    // Recoloring a still-pinned spoke: frees its label for the target when
    // label 9 misses both chain edges at that 3-vertex.
    for j in 3..i {
        plays.push(vec![set("v", VS[j - 1], 9), set("v", vi, (j + 1) as Color)]);
    }
    // Ladder: rotate the 3 out of the hub's star and walk it down the chain.
    for k in 0..=(i - 4) {
        let mut play = vec![swap(("v2", "v"), ("v2", "v3"))];
        for j in 1..=k {
            play.push(swap((PS[j - 1], VS[j + 1]), (PS[j - 1], VS[j + 2])));
        }
        play.push(set("v", vi, 3));
        plays.push(play);
    }
    // Everything blocked: flip the whole boundary chain.
    let mut path: Vec<Role> = vec!["v", "v2"];
    path.extend(chain_233383(i));
    path.push(vi);
    plays.push(vec![Step::Alt(path), set("v", "v1", 3), set("v", vi, 2)]);
    let star: &'static [(Role, Color)] = match i {
        4 => &[("v1", 2), ("v2", 3), ("v3", 4)],
        5 => &[("v1", 2), ("v2", 3), ("v3", 4), ("v4", 5)],
        6 => &[("v1", 2), ("v2", 3), ("v3", 4), ("v4", 5), ("v5", 6)],
        _ => &[("v1", 2), ("v2", 3), ("v3", 4), ("v4", 5), ("v5", 6), ("v6", 7)],
    };
    let uncolor: &'static [Role] = match i {
        4 => &["v1", "v3", "v4"],
        5 => &["v1", "v3", "v4", "v5"],
        6 => &["v1", "v3", "v4", "v5", "v6"],
        _ => &["v1", "v3", "v4", "v5", "v6", "v7"],
    };
    let forced: &'static [ForcedPin] = match i {
        4 => &[ForcedPin { at: "v4", toward: None, label: 9 }],
        5 => &[ForcedPin { at: "v5", toward: None, label: 9 }],
        6 => &[ForcedPin { at: "v6", toward: None, label: 9 }],
        _ => &[ForcedPin { at: "v7", toward: None, label: 9 }],
    };
    Script {
        lemma: "lem:8-233383",
        variant,
        target: ("v", vi),
        uncolor,
        star,
        hub_label: 8,
        forced,
        plays,
    }
}

fn cfg_4a() -> Script {
    Script {
        lemma: "cfg:4a",
        variant: "",
        target: ("v", "t"),
        uncolor: &["t", "y", "z"],
        star: &[("x", 1), ("u", 4), ("z", 5), ("y", 6), ("w", 7)],
        hub_label: 8,
        forced: &[],
        plays: vec![
            vec![free("v", "t")],
            vec![set("v", "y", 9), set("v", "t", 6)],
            vec![set("v", "z", 9), set("v", "t", 5)],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                set("v", "y", 7),
                set("v", "t", 6),
            ],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                set("v", "z", 7),
                set("v", "t", 5),
            ],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                swap(("u", "v"), ("u", "z")),
                set("v", "t", 4),
            ],
            vec![swap(("x", "v"), ("x", "t")), set("v", "z", 1), set("v", "t", 5)],
            vec![swap(("u", "v"), ("u", "z")), set("v", "t", 4)],
            vec![swap(("u", "v"), ("u", "z")), swap(("x", "v"), ("x", "t")), set("v", "t", 4)],
            vec![swap(("x", "v"), ("x", "t")), set("v", "y", 1), set("v", "t", 6)],
            vec![swap(("w", "v"), ("w", "y")), set("v", "t", 7)],
            vec![swap(("w", "v"), ("w", "y")), swap(("x", "v"), ("x", "t")), set("v", "t", 7)],
            vec![swap(("w", "v"), ("w", "t")), set("v", "z", 7), set("v", "t", 5)],
            vec![swap(("u", "v"), ("u", "z")), swap(("w", "v"), ("w", "t")), set("v", "t", 4)],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                set("v", "z", 1),
                set("v", "t", 5),
            ],
            vec![swap(("w", "v"), ("w", "t")), set("v", "y", 7), set("v", "t", 6)],
        ],
    }
}

fn cfg_4b() -> Script {
    Script {
        lemma: "cfg:4b",
        variant: "",
        target: ("v", "t"),
        uncolor: &["t", "y", "z", "u"],
        star: &[("x", 1), ("r", 3), ("u", 4), ("z", 5), ("y", 6), ("w", 7)],
        hub_label: 8,
        forced: &[],
        plays: vec![
            vec![free("v", "t")],
            vec![set("v", "y", 9), set("v", "t", 6)],
            vec![set("v", "z", 9), set("v", "t", 5)],
            vec![set("v", "u", 9), set("v", "t", 4)],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                set("v", "y", 7),
                set("v", "t", 6),
            ],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                set("v", "z", 7),
                set("v", "t", 5),
            ],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                set("v", "u", 7),
                set("v", "t", 4),
            ],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                swap(("r", "v"), ("r", "u")),
                set("v", "t", 3),
            ],
            vec![swap(("x", "v"), ("x", "t")), set("v", "u", 1), set("v", "t", 4)],
            vec![swap(("r", "v"), ("r", "u")), set("v", "t", 3)],
            vec![swap(("r", "v"), ("r", "u")), swap(("x", "v"), ("x", "t")), set("v", "t", 3)],
            vec![swap(("x", "v"), ("x", "t")), set("v", "y", 1), set("v", "t", 6)],
            vec![swap(("w", "v"), ("w", "y")), set("v", "t", 7)],
            vec![swap(("w", "v"), ("w", "y")), swap(("x", "v"), ("x", "t")), set("v", "t", 7)],
            vec![swap(("w", "v"), ("w", "t")), set("v", "u", 7), set("v", "t", 4)],
            vec![swap(("r", "v"), ("r", "u")), swap(("w", "v"), ("w", "t")), set("v", "t", 3)],
            vec![swap(("w", "v"), ("w", "t")), set("v", "y", 7), set("v", "t", 6)],
            vec![
                swap(("x", "v"), ("x", "t")),
                swap(("w", "v"), ("w", "t")),
                set("v", "u", 1),
                set("v", "t", 4),
            ],
        ],
    }
}

fn cfg_4c() -> Script {
    Script {
        lemma: "cfg:4c",
        variant: "",
        target: ("v", "z"),
        uncolor: &["x", "y", "z", "t"],
        star: &[("w", 1), ("t", 2), ("x", 5), ("u", 6), ("y", 7)],
        hub_label: 8,
        forced: &[],
        plays: vec![
            vec![free("v", "z")],
            vec![set("v", "y", 9), set("v", "z", 7)],
            vec![swap(("w", "v"), ("w", "z")), set("v", "y", 1), set("v", "z", 7)],
            vec![swap(("u", "v"), ("u", "y")), swap(("w", "v"), ("w", "z")), set("v", "z", 6)],
            vec![swap(("u", "v"), ("u", "y")), set("v", "z", 6)],
            vec![set("v", "t", 9), set("v", "z", 2)],
            vec![swap(("w", "v"), ("w", "z")), set("v", "t", 1), set("v", "z", 2)],
            vec![
                swap(("p", "y"), ("p", "z")),
                swap(("w", "v"), ("w", "z")),
                set("v", "t", 1),
                set("v", "z", 2),
            ],
            vec![
                swap(("u", "v"), ("u", "y")),
                Step::Alt(vec!["y", "p", "z", "w", "v"]),
                set("v", "z", 6),
            ],
            vec![
                swap(("u", "v"), ("u", "y")),
                swap(("p", "y"), ("p", "z")),
                set("v", "t", 6),
                set("v", "z", 2),
            ],
            vec![
                swap(("w", "v"), ("w", "t")),
                swap(("u", "v"), ("u", "y")),
                swap(("p", "y"), ("p", "z")),
                set("v", "z", 1),
            ],
            vec![swap(("w", "v"), ("w", "t")), set("v", "z", 1)],
            vec![set("v", "x", 9), set("v", "z", 5)],
            vec![swap(("p", "y"), ("p", "z")), set("v", "z", 9)],
            vec![
                swap(("u", "v"), ("u", "y")),
                swap(("p", "y"), ("p", "z")),
                set("v", "x", 6),
                set("v", "z", 5),
            ],
            // When the quad traps {6,9} on both edges at p while u-y holds 9
            // and z-w holds 6, rotate all three white corners at once: u's
            // spoke takes the 9, the quad flips, and w hands its 1 to the z
            // side.  Afterwards y's chords carry {6,9} and z's carry {1,6},
            // so y's spoke takes the freed 1 and z takes the freed 7.
            vec![
                swap(("u", "v"), ("u", "y")),
                swap(("p", "y"), ("p", "z")),
                swap(("w", "v"), ("w", "z")),
                set("v", "y", 1),
                set("v", "z", 7),
            ],
        ],
    }
}

fn cfg_4d() -> Script {
    Script {
        lemma: "cfg:4d",
        variant: "",
        target: ("v", "z"),
        uncolor: &["x", "z", "t"],
        star: &[("y", 1), ("x", 3), ("r", 6), ("t", 7)],
        hub_label: 8,
        forced: &[],
        plays: vec![
            vec![free("v", "z")],
            vec![set("v", "t", 9), set("v", "z", 7)],
            vec![swap(("y", "v"), ("y", "z")), set("v", "t", 1), set("v", "z", 7)],
            vec![swap(("r", "v"), ("r", "t")), set("v", "z", 6)],
            vec![
                swap(("y", "v"), ("y", "z")),
                swap(("p", "z"), ("p", "t")),
                swap(("r", "v"), ("r", "t")),
                set("v", "z", 6),
            ],
            vec![set("v", "x", 9), set("v", "z", 3)],
            vec![swap(("y", "v"), ("y", "z")), set("v", "x", 1), set("v", "z", 3)],
            vec![
                swap(("y", "v"), ("y", "z")),
                swap(("p", "z"), ("p", "t")),
                set("v", "x", 1),
                set("v", "z", 3),
            ],
            vec![
                swap(("r", "v"), ("r", "t")),
                swap(("y", "v"), ("y", "z")),
                swap(("p", "z"), ("p", "t")),
                set("v", "z", 6),
            ],
            vec![set("v", "x", 9), set("v", "t", 3), set("v", "z", 7)],
            vec![
                swap(("r", "v"), ("r", "t")),
                swap(("p", "z"), ("p", "t")),
                set("v", "x", 6),
                set("v", "t", 3),
                set("v", "z", 7),
            ],
            vec![swap(("p", "z"), ("p", "t")), set("v", "z", 9)],
            vec![
                swap(("r", "v"), ("r", "t")),
                swap(("p", "z"), ("p", "t")),
                set("v", "x", 6),
                set("v", "z", 3),
            ],
            vec![swap(("r", "v"), ("r", "t")), set("v", "x", 6), set("v", "z", 3)],
            vec![
                Step::Alt(vec!["v", "r", "t", "p", "z"]),
                set("v", "x", 6),
                set("v", "z", 3),
            ],
            vec![
                Step::Alt(vec!["v", "r", "t", "p", "z"]),
                swap(("y", "v"), ("y", "z")),
                set("v", "x", 1),
                set("v", "z", 3),
            ],
        ],
    }
}

fn cfg_4e() -> Script {
    Script {
        lemma: "cfg:4e",
        variant: "",
        target: ("v", "u"),
        uncolor: &["w", "u", "z"],
        star: &[("z", 3), ("t", 4), ("y", 6), ("w", 7)],
        hub_label: 8,
        forced: &[ForcedPin { at: "u", toward: Some("x"), label: 9 }],
        plays: vec![
            vec![free("v", "u")],
            vec![set("v", "w", 9), set("v", "u", 7)],
            vec![swap(("y", "v"), ("y", "w")), set("v", "u", 6)],
            vec![set("v", "z", 9), set("v", "u", 3)],
            vec![swap(("t", "v"), ("t", "z")), set("v", "u", 4)],
            vec![
                swap(("y", "v"), ("y", "w")),
                swap(("x", "u"), ("x", "w")),
                set("v", "z", 6),
                set("v", "u", 3),
            ],
            vec![
                swap(("y", "v"), ("y", "w")),
                swap(("x", "u"), ("x", "w")),
                swap(("t", "v"), ("t", "z")),
                set("v", "u", 4),
            ],
        ],
    }
}

/// Every figure-palette script, in catalog order.
fn scripts() -> Vec<Script> {
    vec![
        seven_two_threes("adjacent"),
        seven_two_threes("split"),
        eight_2and3("adjacent"),
        eight_2and3("split"),
        eight_diamond3_no2(),
        eight_two_diamonds(),
        family_233383(4),
        family_233383(5),
        family_233383(6),
        family_233383(7),
        cfg_4a(),
        cfg_4b(),
        cfg_4c(),
        cfg_4d(),
        cfg_4e(),
    ]
}

// ---------------------------------------------------------------------------
// Palette normalization.

/// A bijection from figure labels to actual colors.
struct Palette {
    to_color: [Color; 10],
}

impl Palette {
    fn identity() -> Palette {
        let mut to_color = [0; 10];
        for (label, c) in to_color.iter_mut().enumerate() {
            *c = label as Color;
        }
        Palette { to_color }
    }

    fn color(&self, label: Color) -> Color {
        self.to_color[label as usize]
    }

    /// The figure label of an actual color.
    fn label(&self, color: Color) -> Color {
        self.to_color
            .iter()
            .position(|&c| c == color)
            .map(|i| i as Color)
            .unwrap_or(0)
    }
}

/// Locate the one colored edge at `at` that no earlier pin claimed.
fn sole_remaining_edge(
    g: &ElementGraph,
    phi: &TotalColoring,
    at: usize,
    taken: &BTreeSet<Element>,
) -> Result<Element, String> {
    let mut found = None;
    for &nb in g.neighbors(at) {
        let e = Element::edge(at, nb);
        if phi.get(e).is_some() && !taken.contains(&e) {
            if found.is_some() {
                return Err(format!("v{} has more than one unpinned colored edge", at));
            }
            found = Some(e);
        }
    }
    found.ok_or_else(|| format!("v{} has no unpinned colored edge left", at))
}

/// Build the palette bijection carrying `phi` onto the script's figure.
///
/// Star pins and the hub's own color bind first; the hub's unnamed star
/// edges take the smallest labels still free (ascending color to ascending
/// label); forced pins bind next; whatever colors remain map onto whatever
/// labels remain, ascending.  Any clash means the coloring cannot be the
/// figure — the free-extension play must already have covered it — and is
/// reported as text for the case-miss diagnosis.
fn normalize(
    g: &ElementGraph,
    phi: &TotalColoring,
    script: &Script,
    roles: &BTreeMap<String, usize>,
    hub: usize,
) -> Result<Palette, String> {
    let k = phi.palette();
    if k != 9 {
        return Err(format!("figure palettes have nine colors, got {}", k));
    }
    let mut to_color = [0 as Color; 10];
    let mut color_bound = [false; 10];
    let bind = |label: Color, c: Color, to_color: &mut [Color; 10], color_bound: &mut [bool; 10]| {
        if c == 0 || c > 9 {
            return Err(format!("color {} is outside the figure palette", c));
        }
        if to_color[label as usize] != 0 {
            return Err(format!("label {} pinned twice", label));
        }
        if color_bound[c as usize] {
            return Err(format!("color {} pinned twice", c));
        }
        to_color[label as usize] = c;
        color_bound[c as usize] = true;
        Ok(())
    };

    // Named star edges.
    let mut named_hosts = BTreeSet::new();
    for &(role, label) in script.star {
        let far = roles[role];
        named_hosts.insert(far);
        let e = Element::edge(hub, far);
        let c = phi.get(e).ok_or_else(|| format!("star edge {} is uncolored", e))?;
        bind(label, c, &mut to_color, &mut color_bound)?;
    }
    // The hub's own color.
    let hub_color = phi
        .get(Element::Vertex(hub))
        .ok_or_else(|| format!("hub v{} is uncolored", hub))?;
    bind(script.hub_label, hub_color, &mut to_color, &mut color_bound)?;

    // Unnamed star edges take the smallest free labels, in color order.
    let forced_labels: BTreeSet<Color> = script.forced.iter().map(|p| p.label).collect();
    let mut unnamed: Vec<Color> = g
        .neighbors(hub)
        .iter()
        .filter(|nb| !named_hosts.contains(nb))
        .filter_map(|&nb| phi.get(Element::edge(hub, nb)))
        .collect();
    unnamed.sort_unstable();
    let pool: Vec<Color> = (1..=9)
        .filter(|l| to_color[*l as usize] == 0 && !forced_labels.contains(l))
        .collect();
    if unnamed.len() > pool.len() {
        return Err(format!(
            "{} unnamed star edges but only {} free labels",
            unnamed.len(),
            pool.len()
        ));
    }
    for (&label, &c) in pool.iter().zip(unnamed.iter()) {
        bind(label, c, &mut to_color, &mut color_bound)?;
    }

    // Forced pins.
    let mut taken: BTreeSet<Element> = BTreeSet::new();
    for pin in script.forced {
        let at = roles[pin.at];
        let e = match pin.toward {
            Some(far) => Element::edge(at, roles[far]),
            None => {
                // The star edge at `at` is spoken for, like earlier pins.
                taken.insert(Element::edge(at, hub));
                sole_remaining_edge(g, phi, at, &taken)?
            }
        };
        taken.insert(e);
        let c = phi.get(e).ok_or_else(|| format!("pinned edge {} is uncolored", e))?;
        bind(pin.label, c, &mut to_color, &mut color_bound)?;
    }

    // Leftovers, ascending onto ascending.
    let rest_labels: Vec<Color> = (1..=9).filter(|l| to_color[*l as usize] == 0).collect();
    let rest_colors: Vec<Color> = (1..=9).filter(|c| !color_bound[*c as usize]).collect();
    debug_assert_eq!(rest_labels.len(), rest_colors.len());
    for (&label, &c) in rest_labels.iter().zip(rest_colors.iter()) {
        bind(label, c, &mut to_color, &mut color_bound)?;
    }
    Ok(Palette { to_color })
}

/// Run one play speculatively.  Structural failure of any step, a leftover
/// conflict, or an uncolored target all discard the attempt.
fn run_play(
    g: &ElementGraph,
    start: &TotalColoring,
    pal: &Palette,
    roles: &BTreeMap<String, usize>,
    play: &[Step],
    target: Element,
) -> Option<(TotalColoring, Vec<Move>)> {
    let hedge = |(a, b): RoleEdge| Element::edge(roles[a], roles[b]);
    let mut phi = start.clone();
    let mut moves = Vec::with_capacity(play.len());
    for step in play {
        let mv = match step {
            Step::Set(e, label) => Move::Assign(hedge(*e), pal.color(*label)),
            Step::Free(e) => {
                let el = hedge(*e);
                if phi.get(el).is_some() {
                    return None;
                }
                let c = *free_colors(g, &phi, el).first()?;
                Move::Assign(el, c)
            }
            Step::Swap(a, b) => Move::Swap(hedge(*a), hedge(*b)),
            Step::Alt(path) => Move::Alternate(path.iter().map(|r| roles[*r]).collect()),
        };
        if apply_raw(g, &mut phi, &mv).is_err() {
            return None;
        }
        moves.push(mv);
    }
    if phi.get(target).is_none() || !verify_partial_on(g, &phi).is_empty() {
        return None;
    }
    Some((phi, moves))
}

// ---------------------------------------------------------------------------
// Reduce and extend.

/// What one reduction-and-extension did: which script branch ran and the
/// moves it made, greedy finishing included.
#[derive(Debug, Clone)]
pub struct ExtensionLog {
    pub lemma: String,
    pub branch: String,
    pub moves: Vec<Move>,
}

/// A finished extension: the proper total coloring of the whole graph and
/// the log of how it was reached.
#[derive(Debug, Clone)]
pub struct Extended {
    pub coloring: TotalColoring,
    pub log: ExtensionLog,
}

fn strip(phi: &TotalColoring, drop: &[Element]) -> TotalColoring {
    let mut out = phi.clone();
    for e in drop {
        out.unset(*e);
    }
    out
}

fn without_edge(g: &ElementGraph, a: usize, b: usize) -> ElementGraph {
    let e = Element::edge(a, b);
    ElementGraph::from_parts(
        g.vertices().to_vec(),
        g.edges()
            .iter()
            .copied()
            .filter(|&(x, y)| Element::edge(x, y) != e)
            .collect(),
    )
}

/// Drop vertices (with their edges) and add replacement edges.
fn surgery(g: &ElementGraph, drop: &[usize], add: &[(usize, usize)]) -> ElementGraph {
    let verts: Vec<usize> = g.vertices().iter().copied().filter(|v| !drop.contains(v)).collect();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(x, y)| !drop.contains(&x) && !drop.contains(&y))
        .collect();
    edges.extend_from_slice(add);
    ElementGraph::from_parts(verts, edges)
}

/// Check a supplied coloring of the reduced graph: proper, within the
/// palette, and complete away from the skipped vertices.
fn validate_reduced(
    reduced: &ElementGraph,
    phi: &TotalColoring,
    skip: &BTreeSet<Element>,
    k: Color,
) -> Result<(), ExtensionError> {
    if phi.palette() != k {
        return Err(ExtensionError::BadWitness(format!(
            "supplied coloring uses a {}-color palette, expected {}",
            phi.palette(),
            k
        )));
    }
    if !verify_partial_on(reduced, phi).is_empty() {
        return Err(ExtensionError::BadWitness(
            "supplied coloring of the reduced graph is not proper".to_string(),
        ));
    }
    for e in reduced.elements() {
        if !skip.contains(&e) && phi.get(e).is_none() {
            return Err(ExtensionError::BadWitness(format!(
                "supplied coloring leaves {} uncolored",
                e
            )));
        }
    }
    Ok(())
}

/// Color the reduced graph: adopt the supplied coloring (skipped vertices
/// and the returning edge cleared first) or search for one.
fn reduced_coloring(
    reduced: &ElementGraph,
    skip: &BTreeSet<Element>,
    cleared: &[Element],
    k: Color,
    supplied: Option<&TotalColoring>,
) -> Result<TotalColoring, ExtensionError> {
    match supplied {
        Some(s) => {
            let mut base = strip(s, cleared);
            for e in skip {
                base.unset(*e);
            }
            validate_reduced(reduced, &base, skip, k)?;
            Ok(base)
        }
        None => solve_skipping(reduced, k, skip).ok_or(ExtensionError::ReducedGraphNotColorable),
    }
}

fn finish(
    g: &PlanarEmbedding,
    full: &ElementGraph,
    mut phi: TotalColoring,
    mut moves: Vec<Move>,
    lemma: &str,
    branch: String,
) -> Result<Extended, ExtensionError> {
    greedy_fill(full, &mut phi, &mut moves)?;
    let defects = crate::coloring::verify_total_coloring(g, &phi);
    if !defects.is_empty() {
        return Err(ExtensionError::ScriptCaseMiss {
            lemma: lemma.to_string(),
            detail: format!("extension left {} defects behind", defects.len()),
        });
    }
    Ok(Extended {
        coloring: phi,
        log: ExtensionLog { lemma: lemma.to_string(), branch, moves },
    })
}

/// Figure labels of the environment edges, for diagnosing a case miss.
fn miss_detail(
    phi: &TotalColoring,
    pal: &Palette,
    pattern: &ConfigurationPattern,
    roles: &BTreeMap<String, usize>,
    hub: usize,
) -> String {
    let mut parts = Vec::new();
    for &(i, j) in &pattern.edges {
        let (a, b) = (&pattern.vertices[i].name, &pattern.vertices[j].name);
        let (ha, hb) = (roles[a.as_str()], roles[b.as_str()]);
        if ha == hub || hb == hub {
            continue;
        }
        if let Some(c) = phi.get(Element::edge(ha, hb)) {
            parts.push(format!("{}-{}={}", a, b, pal.label(c)));
        }
    }
    if parts.is_empty() {
        parts.push("no environment edges".to_string());
    }
    parts.join(" ")
}

/// Resolve a configuration witness against its catalog pattern into a
/// role-to-host map, checking shape.
fn resolve_roles(
    g: &ElementGraph,
    lemma: &str,
    witness: &WitnessKind,
) -> Result<(ConfigurationPattern, MatchWitness, BTreeMap<String, usize>), ExtensionError> {
    let WitnessKind::Configuration(w) = witness else {
        return Err(ExtensionError::BadWitness(
            "this script wants a configuration witness".to_string(),
        ));
    };
    if w.pattern_id != lemma {
        return Err(ExtensionError::BadWitness(format!(
            "witness is for `{}`, not `{}`",
            w.pattern_id, lemma
        )));
    }
    let pattern = catalog()
        .into_iter()
        .find(|p| p.id == lemma && p.variant == w.variant)
        .ok_or_else(|| ExtensionError::UnknownLemma(lemma.to_string()))?;
    if w.map.len() != pattern.vertices.len() {
        return Err(ExtensionError::BadWitness(format!(
            "witness names {} vertices, pattern has {}",
            w.map.len(),
            pattern.vertices.len()
        )));
    }
    let mut roles = BTreeMap::new();
    for (i, pv) in pattern.vertices.iter().enumerate() {
        let host = w.map[i];
        if !g.vertices().contains(&host) {
            return Err(ExtensionError::BadWitness(format!("v{} is not in the graph", host)));
        }
        if !pv.bound.admits(g.degree(host)) {
            return Err(ExtensionError::BadWitness(format!(
                "v{} has degree {}, role `{}` does not allow it",
                host,
                g.degree(host),
                pv.name
            )));
        }
        roles.insert(pv.name.clone(), host);
    }
    let distinct: BTreeSet<usize> = w.map.iter().copied().collect();
    if distinct.len() != w.map.len() {
        return Err(ExtensionError::BadWitness("witness repeats a vertex".to_string()));
    }
    for &(i, j) in &pattern.edges {
        let (a, b) = (w.map[i], w.map[j]);
        if !g.contains_edge(a, b) {
            return Err(ExtensionError::BadWitness(format!(
                "edge v{}-v{} required by the pattern is missing",
                a, b
            )));
        }
    }
    Ok((pattern, w.clone(), roles))
}

/// Undo the reduction for `lemma` at `witness`: color the reduced graph
/// (or adopt `supplied`), run the script's plays, and finish greedily.
/// Returns the proper total coloring of `g` and the move log.
pub fn reduce_and_extend(
    g: &PlanarEmbedding,
    lemma: &str,
    witness: &WitnessKind,
    k: Color,
    supplied: Option<&TotalColoring>,
) -> Result<Extended, ExtensionError> {
    if k != 9 {
        return Err(ExtensionError::BadWitness(format!(
            "the recoloring scripts are built for nine colors, got {}",
            k
        )));
    }
    let full = ElementGraph::from_embedding(g);
    match lemma {
        "lem:min-deg" => extend_min_deg(g, &full, witness, k, supplied),
        "lem:uv-10" => extend_uv10(g, &full, witness, k, supplied),
        "lem:8-has-one-2" => extend_has_one_2(g, &full, witness, k, supplied),
        _ => extend_scripted(g, &full, lemma, witness, k, supplied),
    }
}

/// The smaller instance a script colors before extending: the graph the
/// base coloring lives on and the elements it leaves open.
///
/// A proper coloring of `graph` that is total away from `skip` is exactly
/// what `reduce_and_extend` accepts as its supplied coloring for the same
/// lemma and witness.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: ElementGraph,
    pub skip: BTreeSet<Element>,
}

/// Describe the reduction `reduce_and_extend` would perform, without
/// running any recoloring.
pub fn reduction_of(
    g: &PlanarEmbedding,
    lemma: &str,
    witness: &WitnessKind,
) -> Result<Reduction, ExtensionError> {
    let full = ElementGraph::from_embedding(g);
    let single = |reduced: ElementGraph, open: &[Element]| Reduction {
        graph: reduced,
        skip: open.iter().copied().collect(),
    };
    match lemma {
        "lem:min-deg" => {
            let &WitnessKind::Vertex(u) = witness else {
                return Err(ExtensionError::BadWitness(
                    "this script wants a vertex witness".to_string(),
                ));
            };
            if !full.vertices().contains(&u) {
                return Err(ExtensionError::BadWitness(format!("v{} is not in the graph", u)));
            }
            match full.degree(u) {
                0 => Ok(single(surgery(&full, &[u], &[]), &[])),
                1 => {
                    let v = full.neighbors(u)[0];
                    Ok(single(without_edge(&full, u, v), &[Element::Vertex(u)]))
                }
                d => Err(ExtensionError::BadWitness(format!(
                    "v{} has degree {}, the script reduces 1⁻-vertices",
                    u, d
                ))),
            }
        }
        "lem:uv-10" => {
            let &WitnessKind::Edge(a, b) = witness else {
                return Err(ExtensionError::BadWitness(
                    "this script wants an edge witness".to_string(),
                ));
            };
            if !full.contains_edge(a, b) {
                return Err(ExtensionError::BadWitness(format!(
                    "edge v{}-v{} is not in the graph",
                    a, b
                )));
            }
            let mut open = Vec::new();
            if full.degree(a) <= 4 {
                open.push(Element::Vertex(a));
            }
            if full.degree(b) <= 4 {
                open.push(Element::Vertex(b));
            }
            Ok(single(without_edge(&full, a, b), &open))
        }
        "lem:8-has-one-2" => {
            let TwoSpokes { v, x1, x2, y1, y2 } = classify_two_spokes(&full, witness)?;
            if full.contains_edge(v, y1) {
                Ok(single(
                    without_edge(&full, v, x2),
                    &[Element::Vertex(x1), Element::Vertex(x2)],
                ))
            } else if y1 == y2 {
                Ok(single(surgery(&full, &[x1, x2], &[(v, y1)]), &[]))
            } else {
                Ok(single(surgery(&full, &[x1, x2], &[(v, y1), (v, y2)]), &[]))
            }
        }
        _ => {
            let (_, w, roles) = resolve_roles(&full, lemma, witness)?;
            let script = scripts()
                .into_iter()
                .find(|s| s.lemma == lemma && (s.variant == "*" || s.variant == w.variant))
                .ok_or_else(|| ExtensionError::UnknownLemma(lemma.to_string()))?;
            let open: Vec<Element> =
                script.uncolor.iter().map(|r| Element::Vertex(roles[*r])).collect();
            Ok(single(
                without_edge(&full, roles[script.target.0], roles[script.target.1]),
                &open,
            ))
        }
    }
}

fn extend_scripted(
    g: &PlanarEmbedding,
    full: &ElementGraph,
    lemma: &str,
    witness: &WitnessKind,
    k: Color,
    supplied: Option<&TotalColoring>,
) -> Result<Extended, ExtensionError> {
    let (pattern, w, roles) = resolve_roles(full, lemma, witness)?;
    let script = scripts()
        .into_iter()
        .find(|s| s.lemma == lemma && (s.variant == "*" || s.variant == w.variant))
        .ok_or_else(|| ExtensionError::UnknownLemma(lemma.to_string()))?;
    let hub = roles["v"];
    let target = Element::edge(roles[script.target.0], roles[script.target.1]);
    let Element::Edge(ta, tb) = target else { unreachable!() };
    let reduced = without_edge(full, ta, tb);
    let skip: BTreeSet<Element> =
        script.uncolor.iter().map(|r| Element::Vertex(roles[*r])).collect();
    let base = reduced_coloring(&reduced, &skip, &[target], k, supplied)?;

    // The free-extension play runs on the raw colors; the figure palette is
    // only defined once it has failed.
    if let Some((phi, moves)) = run_play(full, &base, &Palette::identity(), &roles, &script.plays[0], target) {
        return finish(g, full, phi, moves, lemma, "play 0".to_string());
    }
    let pal = normalize(full, &base, &script, &roles, hub).map_err(|detail| {
        ExtensionError::ScriptCaseMiss { lemma: lemma.to_string(), detail }
    })?;
    for (i, play) in script.plays.iter().enumerate().skip(1) {
        if let Some((phi, moves)) = run_play(full, &base, &pal, &roles, play, target) {
            return finish(g, full, phi, moves, lemma, format!("play {}", i));
        }
    }
    Err(ExtensionError::ScriptCaseMiss {
        lemma: lemma.to_string(),
        detail: miss_detail(&base, &pal, &pattern, &roles, hub),
    })
}

fn extend_min_deg(
    g: &PlanarEmbedding,
    full: &ElementGraph,
    witness: &WitnessKind,
    k: Color,
    supplied: Option<&TotalColoring>,
) -> Result<Extended, ExtensionError> {
    let &WitnessKind::Vertex(u) = witness else {
        return Err(ExtensionError::BadWitness("this script wants a vertex witness".to_string()));
    };
    if !full.vertices().contains(&u) {
        return Err(ExtensionError::BadWitness(format!("v{} is not in the graph", u)));
    }
    match full.degree(u) {
        0 => {
            let reduced = surgery(full, &[u], &[]);
            let base = match supplied {
                Some(s) => {
                    let base = strip(s, &[Element::Vertex(u)]);
                    validate_reduced(&reduced, &base, &BTreeSet::new(), k)?;
                    base
                }
                None => solve_graph(&reduced, k).ok_or(ExtensionError::ReducedGraphNotColorable)?,
            };
            finish(g, full, base, Vec::new(), "lem:min-deg", "isolated".to_string())
        }
        1 => {
            let v = full.neighbors(u)[0];
            let target = Element::edge(u, v);
            let reduced = without_edge(full, u, v);
            let skip: BTreeSet<Element> = [Element::Vertex(u)].into_iter().collect();
            let base = reduced_coloring(&reduced, &skip, &[target], k, supplied)?;
            let roles: BTreeMap<String, usize> =
                [("u".to_string(), u), ("v".to_string(), v)].into_iter().collect();
            let play = vec![free("u", "v")];
            let (phi, moves) = run_play(full, &base, &Palette::identity(), &roles, &play, target)
                .ok_or_else(|| ExtensionError::ScriptCaseMiss {
                    lemma: "lem:min-deg".to_string(),
                    detail: "no color left for the pendant edge".to_string(),
                })?;
            finish(g, full, phi, moves, "lem:min-deg", "pendant".to_string())
        }
        d => Err(ExtensionError::BadWitness(format!(
            "v{} has degree {}, the script reduces 1⁻-vertices",
            u, d
        ))),
    }
}

fn extend_uv10(
    g: &PlanarEmbedding,
    full: &ElementGraph,
    witness: &WitnessKind,
    k: Color,
    supplied: Option<&TotalColoring>,
) -> Result<Extended, ExtensionError> {
    let &WitnessKind::Edge(a, b) = witness else {
        return Err(ExtensionError::BadWitness("this script wants an edge witness".to_string()));
    };
    if !full.contains_edge(a, b) {
        return Err(ExtensionError::BadWitness(format!("edge v{}-v{} is not in the graph", a, b)));
    }
    let (da, db) = (full.degree(a), full.degree(b));
    if da + db > 9 || da.min(db) > 4 {
        return Err(ExtensionError::BadWitness(format!(
            "edge v{}-v{} has degree sum {}, the script needs a 4⁻-endpoint and sum at most 9",
            a,
            b,
            da + db
        )));
    }
    let target = Element::edge(a, b);
    let reduced = without_edge(full, a, b);
    let mut skip = BTreeSet::new();
    if da <= 4 {
        skip.insert(Element::Vertex(a));
    }
    if db <= 4 {
        skip.insert(Element::Vertex(b));
    }
    let base = reduced_coloring(&reduced, &skip, &[target], k, supplied)?;
    let roles: BTreeMap<String, usize> =
        [("u".to_string(), a), ("v".to_string(), b)].into_iter().collect();
    let play = vec![free("u", "v")];
    let (phi, moves) = run_play(full, &base, &Palette::identity(), &roles, &play, target)
        .ok_or_else(|| ExtensionError::ScriptCaseMiss {
            lemma: "lem:uv-10".to_string(),
            detail: "no color left for the light edge".to_string(),
        })?;
    finish(g, full, phi, moves, "lem:uv-10", "direct".to_string())
}

/// Try a fixed move list speculatively, like a play but already in graph
/// space.
fn try_moves(
    g: &ElementGraph,
    start: &TotalColoring,
    moves: &[Move],
    must_color: &[Element],
) -> Option<(TotalColoring, Vec<Move>)> {
    let mut phi = start.clone();
    for mv in moves {
        if apply_raw(g, &mut phi, mv).is_err() {
            return None;
        }
    }
    if must_color.iter().any(|e| phi.get(*e).is_none()) {
        return None;
    }
    if !verify_partial_on(g, &phi).is_empty() {
        return None;
    }
    Some((phi, moves.to_vec()))
}

/// The two 2-vertices of a `lem:8-has-one-2` witness with their far
/// endpoints, canonicalized so that when exactly one far endpoint is the
/// hub's own neighbour it is `y1`.
struct TwoSpokes {
    v: usize,
    x1: usize,
    x2: usize,
    y1: usize,
    y2: usize,
}

fn classify_two_spokes(
    full: &ElementGraph,
    witness: &WitnessKind,
) -> Result<TwoSpokes, ExtensionError> {
    let (_, _, roles) = resolve_roles(full, "lem:8-has-one-2", witness)?;
    let v = roles["v"];
    let (mut x1, mut x2) = (roles["x1"], roles["x2"]);
    let other = |x: usize| -> Result<usize, ExtensionError> {
        let nbs = full.neighbors(x);
        if nbs.len() != 2 || !nbs.contains(&v) {
            return Err(ExtensionError::BadWitness(format!(
                "v{} should have exactly v{} and one more neighbour",
                x, v
            )));
        }
        Ok(*nbs.iter().find(|&&n| n != v).unwrap())
    };
    let (mut y1, mut y2) = (other(x1)?, other(x2)?);
    if full.contains_edge(v, y2) && !full.contains_edge(v, y1) {
        core::mem::swap(&mut x1, &mut x2);
        core::mem::swap(&mut y1, &mut y2);
    }
    Ok(TwoSpokes { v, x1, x2, y1, y2 })
}

fn extend_has_one_2(
    g: &PlanarEmbedding,
    full: &ElementGraph,
    witness: &WitnessKind,
    k: Color,
    supplied: Option<&TotalColoring>,
) -> Result<Extended, ExtensionError> {
    let lemma = "lem:8-has-one-2";
    let TwoSpokes { v, x1, x2, y1, y2 } = classify_two_spokes(full, witness)?;

    if full.contains_edge(v, y1) {
        // One far endpoint is the hub's own neighbour: drop the other spoke.
        let target = Element::edge(v, x2);
        let reduced = without_edge(full, v, x2);
        let skip: BTreeSet<Element> =
            [Element::Vertex(x1), Element::Vertex(x2)].into_iter().collect();
        let base = reduced_coloring(&reduced, &skip, &[target], k, supplied)?;
        let vx1 = Element::edge(v, x1);
        let vy1 = Element::edge(v, y1);
        let x1y1 = Element::edge(x1, y1);
        let x2y2 = Element::edge(x2, y2);
        let mut plays: Vec<Vec<Move>> = Vec::new();
        if let Some(&c) = free_colors(full, &base, target).first() {
            plays.push(vec![Move::Assign(target, c)]);
        }
        if let Some(c) = base.get(vy1) {
            plays.push(vec![Move::Swap(x1y1, vy1), Move::Assign(target, c)]);
        }
        if let (Some(c_far), Some(c_old)) = (base.get(x2y2), base.get(vx1)) {
            plays.push(vec![Move::Assign(vx1, c_far), Move::Assign(target, c_old)]);
        }
        for (i, moves) in plays.iter().enumerate() {
            if let Some((phi, moves)) = try_moves(full, &base, moves, &[target]) {
                return finish(g, full, phi, moves, lemma, format!("adjacent play {}", i));
            }
        }
        return Err(ExtensionError::ScriptCaseMiss {
            lemma: lemma.to_string(),
            detail: "no adjacent-form play applies".to_string(),
        });
    }

    if y1 == y2 {
        // Shared far endpoint: splice the two spokes into one edge.
        let y = y1;
        let reduced = surgery(full, &[x1, x2], &[(v, y)]);
        let vy = Element::edge(v, y);
        let base_red = match supplied {
            Some(s) => {
                let base = s.clone();
                validate_reduced(&reduced, &base, &BTreeSet::new(), k)?;
                base
            }
            None => solve_graph(&reduced, k).ok_or(ExtensionError::ReducedGraphNotColorable)?,
        };
        let c = base_red.get(vy).expect("validated colorings are total");
        let base = strip(&base_red, &[vy]);
        let vx1 = Element::edge(v, x1);
        let vx2 = Element::edge(v, x2);
        let x1y = Element::edge(x1, y);
        let x2y = Element::edge(x2, y);
        let mut phi = base.clone();
        let mut moves = vec![Move::Assign(vx1, c), Move::Assign(x2y, c)];
        for mv in moves.clone() {
            apply_raw(full, &mut phi, &mv).expect("splice edges exist");
        }
        for e in [vx2, x1y] {
            let c = *free_colors(full, &phi, e).first().ok_or_else(|| {
                ExtensionError::ScriptCaseMiss {
                    lemma: lemma.to_string(),
                    detail: format!("no color left for {}", e),
                }
            })?;
            let mv = Move::Assign(e, c);
            apply_raw(full, &mut phi, &mv).expect("splice edges exist");
            moves.push(mv);
        }
        if !verify_partial_on(full, &phi).is_empty() {
            return Err(ExtensionError::ScriptCaseMiss {
                lemma: lemma.to_string(),
                detail: "splice recoloring left a conflict".to_string(),
            });
        }
        return finish(g, full, phi, moves, lemma, "merged".to_string());
    }

    // Distinct far endpoints: reroute both spokes and color crosswise.
    let reduced = surgery(full, &[x1, x2], &[(v, y1), (v, y2)]);
    let vy1 = Element::edge(v, y1);
    let vy2 = Element::edge(v, y2);
    let base_red = match supplied {
        Some(s) => {
            let base = s.clone();
            validate_reduced(&reduced, &base, &BTreeSet::new(), k)?;
            base
        }
        None => solve_graph(&reduced, k).ok_or(ExtensionError::ReducedGraphNotColorable)?,
    };
    let c1 = base_red.get(vy1).expect("validated colorings are total");
    let c2 = base_red.get(vy2).expect("validated colorings are total");
    let base = strip(&base_red, &[vy1, vy2]);
    let moves = vec![
        Move::Assign(Element::edge(v, x2), c1),
        Move::Assign(Element::edge(x1, y1), c1),
        Move::Assign(Element::edge(v, x1), c2),
        Move::Assign(Element::edge(x2, y2), c2),
    ];
    let (phi, moves) =
        try_moves(full, &base, &moves, &[]).ok_or_else(|| ExtensionError::ScriptCaseMiss {
            lemma: lemma.to_string(),
            detail: "crosswise recoloring left a conflict".to_string(),
        })?;
    finish(g, full, phi, moves, lemma, "split".to_string())
}

// ---------------------------------------------------------------------------
// Bounded search.

/// Maximal alternating two-colored edge paths, one per path component of
/// each color-pair subgraph.  Each vertex carries at most one edge of each
/// color, so these components are simple paths or cycles.
fn kempe_paths(g: &ElementGraph, phi: &TotalColoring, k: Color) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let colored = |u: usize, c: Color| -> Option<usize> {
        g.neighbors(u)
            .iter()
            .copied()
            .find(|&w| phi.get(Element::edge(u, w)) == Some(c))
    };
    for a in 1..=k {
        for b in (a + 1)..=k {
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            for &start in g.vertices() {
                if seen.contains(&start) {
                    continue;
                }
                // Path components only: start walking from an endpoint,
                // a vertex missing one of the two colors.
                let (first, second) = (colored(start, a), colored(start, b));
                if first.is_some() && second.is_some() {
                    continue;
                }
                let Some(mut next) = first.or(second) else { continue };
                let mut want = if first.is_some() { b } else { a };
                let mut path = vec![start];
                seen.insert(start);
                loop {
                    path.push(next);
                    seen.insert(next);
                    let prev = path[path.len() - 2];
                    match colored(next, want) {
                        Some(w) if w != prev => {
                            next = w;
                            want = if want == a { b } else { a };
                        }
                        _ => break,
                    }
                }
                if path.len() >= 3 {
                    out.push(path);
                }
            }
        }
    }
    out
}

fn candidate_moves(g: &ElementGraph, phi: &TotalColoring, k: Color) -> Vec<Move> {
    let mut out = Vec::new();
    for e in g.elements() {
        if phi.get(e).is_none() {
            for c in free_colors(g, phi, e) {
                out.push(Move::Assign(e, c));
            }
        }
    }
    let colored_edges: Vec<Element> = g
        .elements()
        .into_iter()
        .filter(|e| matches!(e, Element::Edge(..)) && phi.get(*e).is_some())
        .collect();
    for (i, &a) in colored_edges.iter().enumerate() {
        for &b in &colored_edges[i + 1..] {
            let (Element::Edge(a1, a2), Element::Edge(b1, b2)) = (a, b) else { continue };
            let shares = a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2;
            if shares && phi.get(a) != phi.get(b) {
                out.push(Move::Swap(a, b));
            }
        }
    }
    for path in kempe_paths(g, phi, k) {
        out.push(Move::Alternate(path));
    }
    out
}

fn search_inner(
    g: &ElementGraph,
    phi: &TotalColoring,
    k: Color,
    budget: usize,
    seen: &mut BTreeSet<Vec<(Element, Color)>>,
) -> Option<(Vec<Move>, TotalColoring)> {
    if verify_total_on(g, phi).is_empty() {
        return Some((Vec::new(), phi.clone()));
    }
    if budget == 0 {
        return None;
    }
    for mv in candidate_moves(g, phi, k) {
        let mut next = phi.clone();
        if apply_raw(g, &mut next, &mv).is_err() {
            continue;
        }
        if !verify_partial_on(g, &next).is_empty() {
            continue;
        }
        let key: Vec<(Element, Color)> = next.iter().collect();
        if !seen.insert(key) {
            continue;
        }
        if let Some((mut moves, done)) = search_inner(g, &next, k, budget - 1, seen) {
            moves.insert(0, mv);
            return Some((moves, done));
        }
    }
    None
}

/// Depth-first search for a move sequence completing `phi` into a proper
/// total coloring, trying assignments before swaps before alternations and
/// keeping every intermediate coloring proper.  `move_budget` bounds the
/// sequence length.  Deterministic; returns the first completion found.
pub fn search_extension(
    g: &ElementGraph,
    phi: &TotalColoring,
    k: Color,
    move_budget: usize,
) -> Option<(Vec<Move>, TotalColoring)> {
    if !verify_partial_on(g, phi).is_empty() {
        return None;
    }
    let mut seen = BTreeSet::new();
    search_inner(g, phi, k, move_budget, &mut seen)
}

#[cfg(test)]
#[path = "extension_tests.rs"]
mod tests;
