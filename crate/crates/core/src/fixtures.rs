//! Ready-made host graphs, one per catalog configuration, shaped exactly
//! like the source figures: a hub vertex with its neighbors on a ring,
//! chords between consecutive ring vertices where the figure draws a
//! 3-face, an outer vertex spanning two consecutive ring vertices where
//! it draws a 4-face, and radial pendants for edges that leave the
//! picture.
//!
//! Each fixture carries the role map tying pattern-vertex names to host
//! vertex ids, so tests can point the matcher and the recoloring scripts
//! at known ground truth.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::graph::PlanarEmbedding;

/// How one ring position connects onward.
struct Slot {
    name: &'static str,
    /// Edge to the next ring vertex (draws a 3-face with the hub).
    chord: bool,
    /// Outer vertex joined to this ring vertex and the next one (draws a
    /// 4-face with the hub).
    outer: Option<&'static str>,
    /// Pendant neighbors pointing away from the hub.
    radials: &'static [&'static str],
}

const fn slot(name: &'static str) -> Slot {
    Slot { name, chord: false, outer: None, radials: &[] }
}

const fn chord(name: &'static str) -> Slot {
    Slot { name, chord: true, outer: None, radials: &[] }
}

const fn via(name: &'static str, outer: &'static str) -> Slot {
    Slot { name, chord: false, outer: Some(outer), radials: &[] }
}

const fn tipped(name: &'static str, radials: &'static [&'static str]) -> Slot {
    Slot { name, chord: false, outer: None, radials }
}

const fn chord_tipped(name: &'static str, radials: &'static [&'static str]) -> Slot {
    Slot { name, chord: true, outer: None, radials }
}

/// Assemble the rotation system for a hub-and-ring figure. Counter-
/// clockwise rotations fall out mechanically: the hub sees the ring in
/// order; a ring vertex sees the hub, then its clockwise-side attachment,
/// its radials, and its counterclockwise-side attachment; an outer vertex
/// sees its two ring vertices leading with the counterclockwise one.
fn ring_graph(hub: &'static str, slots: &[Slot]) -> (PlanarEmbedding, BTreeMap<String, usize>) {
    let mut ids: BTreeMap<String, usize> = BTreeMap::new();
    let fresh = |ids: &mut BTreeMap<String, usize>, name: &str| {
        let id = ids.len();
        let previous = ids.insert(name.to_string(), id);
        assert!(previous.is_none(), "duplicate fixture vertex {}", name);
        id
    };
    fresh(&mut ids, hub);
    for s in slots {
        fresh(&mut ids, s.name);
    }
    for s in slots {
        if let Some(o) = s.outer {
            fresh(&mut ids, o);
        }
        for r in s.radials {
            fresh(&mut ids, r);
        }
    }

    let n = ids.len();
    let mut rot: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    rot[0] = slots.iter().map(|s| ids[s.name]).collect();
    let len = slots.len();
    for (j, s) in slots.iter().enumerate() {
        let me = ids[s.name];
        let mut order: Vec<usize> = alloc::vec![0];
        let prev = &slots[(j + len - 1) % len];
        if prev.chord {
            order.push(ids[prev.name]);
        } else if let Some(o) = prev.outer {
            order.push(ids[o]);
        }
        for &r in s.radials {
            order.push(ids[r]);
            rot[ids[r]] = alloc::vec![me];
        }
        if s.chord {
            order.push(ids[slots[(j + 1) % len].name]);
        } else if let Some(o) = s.outer {
            order.push(ids[o]);
            rot[ids[o]] = alloc::vec![ids[slots[(j + 1) % len].name], me];
        }
        rot[me] = order;
    }
    let g = PlanarEmbedding::build(rot).expect("figure layouts embed");
    (g, ids)
}

/// A catalog configuration realized as a concrete host.
pub struct Fixture {
    pub name: &'static str,
    /// Catalog id whose pattern this host contains.
    pub lemma: &'static str,
    /// Pattern variant (empty when the lemma has only one shape).
    pub variant: &'static str,
    pub graph: PlanarEmbedding,
    /// Pattern role name to host vertex id.
    pub roles: BTreeMap<String, usize>,
}

fn keep(roles: &BTreeMap<String, usize>, names: &[&str]) -> BTreeMap<String, usize> {
    names
        .iter()
        .map(|&n| (n.to_string(), roles[n]))
        .collect()
}

fn min_deg() -> Fixture {
    let g = PlanarEmbedding::build(alloc::vec![
        alloc::vec![1],
        alloc::vec![0, 2],
        alloc::vec![1],
    ])
    .unwrap();
    let mut roles = BTreeMap::new();
    roles.insert("u".to_string(), 0);
    roles.insert("v".to_string(), 1);
    Fixture { name: "min-deg", lemma: "lem:min-deg", variant: "", graph: g, roles }
}

fn uv10() -> Fixture {
    // Path on four vertices; the middle edge has degree sum 4.
    let g = PlanarEmbedding::build(alloc::vec![
        alloc::vec![1],
        alloc::vec![0, 2],
        alloc::vec![1, 3],
        alloc::vec![2],
    ])
    .unwrap();
    let mut roles = BTreeMap::new();
    roles.insert("u".to_string(), 1);
    roles.insert("v".to_string(), 2);
    Fixture { name: "uv-10", lemma: "lem:uv-10", variant: "", graph: g, roles }
}

fn has_one_2_merged() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            via("x1", "y"),
            slot("x2"),
            slot("q1"),
            slot("q2"),
            slot("q3"),
            slot("q4"),
            slot("q5"),
            slot("q6"),
        ],
    );
    let roles = keep(&ids, &["v", "x1", "x2", "y"]);
    Fixture { name: "8-has-one-2-merged", lemma: "lem:8-has-one-2", variant: "", graph, roles }
}

fn has_one_2_split() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            tipped("x1", &["y1"]),
            tipped("x2", &["y2"]),
            slot("q1"),
            slot("q2"),
            slot("q3"),
            slot("q4"),
            slot("q5"),
            slot("q6"),
        ],
    );
    let roles = keep(&ids, &["v", "x1", "x2", "y1", "y2"]);
    Fixture { name: "8-has-one-2-split", lemma: "lem:8-has-one-2", variant: "", graph, roles }
}

fn has_one_2_adjacent() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord("y1"),
            slot("x1"),
            tipped("x2", &["y2"]),
            slot("q1"),
            slot("q2"),
            slot("q3"),
            slot("q4"),
            slot("q5"),
        ],
    );
    let roles = keep(&ids, &["v", "x1", "x2", "y1", "y2"]);
    Fixture { name: "8-has-one-2-adjacent", lemma: "lem:8-has-one-2", variant: "", graph, roles }
}

fn seven_two3s_adjacent() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord_tipped("u", &["eu"]),
            chord("x"),
            tipped("w", &["ew"]),
            slot("q1"),
            slot("q2"),
            slot("q3"),
            slot("q4"),
        ],
    );
    let roles = keep(&ids, &["v", "u", "w", "x"]);
    Fixture { name: "7-two-3s-adjacent", lemma: "lem:7-two-3s", variant: "adjacent", graph, roles }
}

fn seven_two3s_split() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord_tipped("u", &["eu"]),
            slot("x"),
            slot("q1"),
            chord_tipped("w", &["ew"]),
            slot("y"),
            slot("q2"),
            slot("q3"),
        ],
    );
    let roles = keep(&ids, &["v", "u", "w", "x", "y"]);
    Fixture { name: "7-two-3s-split", lemma: "lem:7-two-3s", variant: "split", graph, roles }
}

fn eight_2and3_adjacent() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord("u"),
            chord("x"),
            tipped("w", &["ew"]),
            slot("q1"),
            slot("q2"),
            slot("q3"),
            slot("q4"),
            slot("q5"),
        ],
    );
    let roles = keep(&ids, &["v", "u", "w", "x"]);
    Fixture { name: "8-2and3-adjacent", lemma: "lem:8-2and3", variant: "adjacent", graph, roles }
}

fn eight_2and3_split() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord("u"),
            slot("x"),
            slot("q1"),
            chord_tipped("w", &["ew"]),
            slot("y"),
            slot("q2"),
            slot("q3"),
            slot("q4"),
        ],
    );
    let roles = keep(&ids, &["v", "u", "w", "x", "y"]);
    Fixture { name: "8-2and3-split", lemma: "lem:8-2and3", variant: "split", graph, roles }
}

fn eight_diamond() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord("x"),
            chord("w"),
            slot("y"),
            tipped("u", &["eu"]),
            slot("q1"),
            slot("q2"),
            slot("q3"),
            slot("q4"),
        ],
    );
    let roles = keep(&ids, &["v", "w", "u", "x", "y"]);
    Fixture { name: "8-diamond3-no2", lemma: "lem:8-diamond3-no2", variant: "", graph, roles }
}

fn eight_two_diamonds() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord("x"),
            chord("u"),
            chord("y"),
            tipped("z", &["r"]),
            slot("t"),
            chord("s"),
            chord("w"),
            slot("p"),
        ],
    );
    let roles = keep(&ids, &["v", "u", "w", "z", "x", "y", "s", "p"]);
    Fixture { name: "8-two-diamonds", lemma: "lem:8-two-diamonds", variant: "", graph, roles }
}

fn family_233383(i: usize) -> Fixture {
    // Ring: v1 (chord, with the leaving edge), v2 (chord), then v3..v(i-1)
    // each carried to the next by an outer vertex, ending at the 2-vertex
    // vi; pendants pad the hub to degree 8.
    static NAMES: [&str; 7] = ["v1", "v2", "v3", "v4", "v5", "v6", "v7"];
    static OUTERS: [&str; 4] = ["p1", "p2", "p3", "p4"];
    static PADS: [&str; 4] = ["q1", "q2", "q3", "q4"];
    let mut slots: Vec<Slot> = Vec::new();
    slots.push(Slot { name: NAMES[0], chord: true, outer: None, radials: &["e1"] });
    slots.push(chord(NAMES[1]));
    for j in 3..i {
        slots.push(via(NAMES[j - 1], OUTERS[j - 3]));
    }
    slots.push(slot(NAMES[i - 1]));
    for pad in PADS.iter().take(8 - i) {
        slots.push(slot(pad));
    }
    let (graph, ids) = ring_graph("v", &slots);
    let mut wanted: Vec<&str> = alloc::vec!["v"];
    wanted.extend(&NAMES[..i]);
    wanted.extend(&OUTERS[..i - 3]);
    let roles = keep(&ids, &wanted);
    let (name, variant) = match i {
        4 => ("8-233383-i4", "i4"),
        5 => ("8-233383-i5", "i5"),
        6 => ("8-233383-i6", "i6"),
        _ => ("8-233383-i7", "i7"),
    };
    Fixture { name, lemma: "lem:8-233383", variant, graph, roles }
}

fn cfg_4a() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord("x"),
            chord("t"),
            chord("w"),
            via("y", "p"),
            chord("z"),
            slot("u"),
            slot("q1"),
            slot("q2"),
        ],
    );
    let roles = keep(&ids, &["v", "t", "y", "z", "x", "w", "p", "u"]);
    Fixture { name: "cfg-4a", lemma: "cfg:4a", variant: "", graph, roles }
}

fn cfg_4b() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord("x"),
            chord("t"),
            chord("w"),
            via("y", "p"),
            via("z", "q"),
            chord("u"),
            slot("r"),
            slot("q1"),
        ],
    );
    let roles = keep(&ids, &["v", "t", "y", "z", "u", "x", "w", "p", "q", "r"]);
    Fixture { name: "cfg-4b", lemma: "cfg:4b", variant: "", graph, roles }
}

fn cfg_4c() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            Slot { name: "x", chord: true, outer: None, radials: &["ex"] },
            chord("u"),
            via("y", "p"),
            chord("z"),
            chord("w"),
            Slot { name: "t", chord: false, outer: None, radials: &["et"] },
            slot("q1"),
            slot("q2"),
        ],
    );
    let roles = keep(&ids, &["v", "x", "y", "z", "t", "u", "w", "p"]);
    Fixture { name: "cfg-4c", lemma: "cfg:4c", variant: "", graph, roles }
}

fn cfg_4d() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            chord("y"),
            via("z", "p"),
            chord("t"),
            slot("r"),
            tipped("x", &["ex"]),
            slot("q1"),
            slot("q2"),
            slot("q3"),
        ],
    );
    let roles = keep(&ids, &["v", "z", "t", "x", "y", "r", "p"]);
    Fixture { name: "cfg-4d", lemma: "cfg:4d", variant: "", graph, roles }
}

fn cfg_4e() -> Fixture {
    let (graph, ids) = ring_graph(
        "v",
        &[
            via("u", "x"),
            chord("w"),
            slot("y"),
            chord_tipped("z", &["ez"]),
            slot("t"),
            slot("q1"),
            slot("q2"),
            slot("q3"),
        ],
    );
    let roles = keep(&ids, &["v", "u", "w", "z", "x", "y", "t"]);
    Fixture { name: "cfg-4e", lemma: "cfg:4e", variant: "", graph, roles }
}

/// Every fixture, in catalog order.
pub fn all() -> Vec<Fixture> {
    alloc::vec![
        min_deg(),
        uv10(),
        has_one_2_merged(),
        has_one_2_split(),
        has_one_2_adjacent(),
        seven_two3s_adjacent(),
        seven_two3s_split(),
        eight_2and3_adjacent(),
        eight_2and3_split(),
        eight_diamond(),
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

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
