//! Exact charge bookkeeping: initial charges `d(v) − 4` and `ℓ(f) − 4`,
//! the five redistribution rules, transfer logs with replay validation,
//! and the audit that ties negative residual charge back to structural
//! violations.
//!
//! All arithmetic is exact rational arithmetic; nothing here rounds. On
//! any plane graph the initial charges sum to −8 (Euler's formula), and
//! every rule moves charge without creating or destroying it, so the
//! final charges sum to −8 as well. The point of the audit is the
//! contrapositive: in the intended regime (maximum degree 8, no 4-fan,
//! none of the catalog configurations) every bearer ends nonnegative,
//! which contradicts the −8 total — so whenever a bearer does end
//! negative, some structural violation must be present, and the audit
//! names it.
//!
//! The rules, applied simultaneously from the initial state:
//!
//! * **R1** — every 2-vertex receives 1 from each neighbour.
//! * **R2** — every 3-vertex receives 1/3 from each neighbour.
//! * **R3** — every 5-vertex sends 1/3 to each incident 3-face.
//! * **R4** — every 6⁺-vertex sends 1/2 to each incident 3-face that
//!   contains a 4⁻-vertex, and 1/3 to every other incident 3-face.
//! * **R5** — every 5⁺-face transfers its (positive) charge in equal
//!   parts to the 8-vertices on its boundary, counted with multiplicity;
//!   a face with no 8-vertex keeps its charge.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;

use crate::graph::PlanarEmbedding;
use crate::patterns::{self, FanWitness, StructuralViolation};

/// Exact charge value.
pub type Charge = Rational64;

fn q(n: i64) -> Charge {
    Charge::from_integer(n)
}

fn frac(n: i64, d: i64) -> Charge {
    Charge::new(n, d)
}

/// Who holds charge: a vertex or a face (by face index in the embedding).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bearer {
    Vertex(usize),
    Face(usize),
}

impl fmt::Display for Bearer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bearer::Vertex(v) => write!(f, "v{}", v),
            Bearer::Face(id) => write!(f, "f{}", id),
        }
    }
}

/// Which side of the redistribution a ledger records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Initial,
    Final,
}

/// A full assignment of charges to bearers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub phase: Phase,
    pub charges: BTreeMap<Bearer, Charge>,
}

impl ChargeLedger {
    pub fn total(&self) -> Charge {
        self.charges.values().fold(q(0), |acc, c| acc + c)
    }

    pub fn get(&self, b: Bearer) -> Charge {
        self.charges.get(&b).copied().unwrap_or_else(|| q(0))
    }

    /// Bearers with negative charge, ascending.
    pub fn negative_bearers(&self) -> Vec<(Bearer, Charge)> {
        self.charges
            .iter()
            .filter(|(_, c)| **c < q(0))
            .map(|(b, c)| (*b, *c))
            .collect()
    }
}

/// The five redistribution rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
        };
        write!(f, "{}", name)
    }
}

/// One charge movement, attributed to the rule that mandates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Bearer,
    pub to: Bearer,
    pub amount: Charge,
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {} : {}", self.rule, self.from, self.to, self.amount)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferLog {
    pub entries: Vec<Transfer>,
}

/// A replayed log entry that the cited rule does not justify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogMismatch {
    pub index: usize,
    pub reason: String,
}

impl fmt::Display for LogMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log entry {}: {}", self.index, self.reason)
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for LogMismatch {}

/// Initial charges: `d(v) − 4` per vertex, `ℓ(f) − 4` per face.
pub fn initial_charges(g: &PlanarEmbedding) -> ChargeLedger {
    let mut charges = BTreeMap::new();
    for v in 0..g.num_vertices() {
        charges.insert(Bearer::Vertex(v), q(g.degree(v) as i64 - 4));
    }
    for (id, face) in g.faces().iter().enumerate() {
        charges.insert(Bearer::Face(id), q(face.len() as i64 - 4));
    }
    ChargeLedger { phase: Phase::Initial, charges }
}

/// Face ids incident to `v`, one per dart out of `v` (so a face is listed
/// once per occurrence of `v` on its boundary walk).
fn incident_faces(g: &PlanarEmbedding, v: usize) -> Vec<usize> {
    g.rotation(v)
        .iter()
        .map(|&w| g.face_of_dart(v, w).expect("dart of an existing edge"))
        .collect()
}

fn face_has_low_vertex(g: &PlanarEmbedding, face_id: usize) -> bool {
    g.faces()[face_id].vertices().any(|u| g.degree(u) <= 4)
}

/// The transfers mandated by R1–R5, all read off the initial structure,
/// in deterministic order (rule, then source, then target).
pub fn rule_transfers(g: &PlanarEmbedding) -> TransferLog {
    let mut entries: Vec<Transfer> = Vec::new();
    // R1 and R2: support for 2- and 3-vertices from every neighbour.
    for rule in [Rule::R1, Rule::R2] {
        let (deg, amount) = match rule {
            Rule::R1 => (2usize, q(1)),
            _ => (3usize, frac(1, 3)),
        };
        for v in 0..g.num_vertices() {
            for &u in g.rotation(v) {
                if g.degree(u) == deg {
                    entries.push(Transfer { rule, from: Bearer::Vertex(v), to: Bearer::Vertex(u), amount });
                }
            }
        }
    }
    // R3 and R4: vertex-to-triangle payments.
    for v in 0..g.num_vertices() {
        let d = g.degree(v);
        if d < 5 {
            continue;
        }
        let mut faces = incident_faces(g, v);
        faces.sort_unstable();
        for face_id in faces {
            if g.faces()[face_id].len() != 3 {
                continue;
            }
            let (rule, amount) = if d == 5 {
                (Rule::R3, frac(1, 3))
            } else if face_has_low_vertex(g, face_id) {
                (Rule::R4, frac(1, 2))
            } else {
                (Rule::R4, frac(1, 3))
            };
            entries.push(Transfer { rule, from: Bearer::Vertex(v), to: Bearer::Face(face_id), amount });
        }
    }
    // R5: big faces hand their surplus to their 8-vertices.
    for (face_id, face) in g.faces().iter().enumerate() {
        if face.len() < 5 {
            continue;
        }
        let mut eights: Vec<usize> = face.vertices().filter(|&u| g.degree(u) == 8).collect();
        if eights.is_empty() {
            continue;
        }
        eights.sort_unstable();
        let share = q(face.len() as i64 - 4) / q(eights.len() as i64);
        for u in eights {
            entries.push(Transfer {
                rule: Rule::R5,
                from: Bearer::Face(face_id),
                to: Bearer::Vertex(u),
                amount: share,
            });
        }
    }
    entries.sort_by(|a, b| (a.rule, a.from, a.to).cmp(&(b.rule, b.from, b.to)));
    TransferLog { entries }
}

/// Apply R1–R5 simultaneously from the initial state.
pub fn apply_rules(g: &PlanarEmbedding) -> (ChargeLedger, TransferLog) {
    let log = rule_transfers(g);
    let ledger = replay(g, &log).expect("freshly generated log replays");
    (ledger, log)
}

/// Re-apply a transfer log to the initial charges, validating every entry
/// against the rule it cites.
pub fn replay(g: &PlanarEmbedding, log: &TransferLog) -> Result<ChargeLedger, LogMismatch> {
    let mut ledger = initial_charges(g);
    ledger.phase = Phase::Final;
    for (index, t) in log.entries.iter().enumerate() {
        validate_transfer(g, t).map_err(|reason| LogMismatch { index, reason })?;
        *ledger.charges.get_mut(&t.from).expect("validated bearer") -= t.amount;
        *ledger.charges.get_mut(&t.to).expect("validated bearer") += t.amount;
    }
    Ok(ledger)
}

fn validate_transfer(g: &PlanarEmbedding, t: &Transfer) -> Result<(), String> {
    let vertex = |b: Bearer| match b {
        Bearer::Vertex(v) if v < g.num_vertices() => Ok(v),
        _ => Err(format!("{} is not a vertex of the graph", b)),
    };
    let face = |b: Bearer| match b {
        Bearer::Face(id) if id < g.num_faces() => Ok(id),
        _ => Err(format!("{} is not a face of the graph", b)),
    };
    match t.rule {
        Rule::R1 | Rule::R2 => {
            let (from, to) = (vertex(t.from)?, vertex(t.to)?);
            let (deg, amount) = if t.rule == Rule::R1 { (2, q(1)) } else { (3, frac(1, 3)) };
            if !g.contains_edge(from, to) {
                return Err(format!("{} and {} are not adjacent", t.from, t.to));
            }
            if g.degree(to) != deg {
                return Err(format!("{} expects a {}-vertex target", t.rule, deg));
            }
            if t.amount != amount {
                return Err(format!("{} moves {}, not {}", t.rule, amount, t.amount));
            }
        }
        Rule::R3 | Rule::R4 => {
            let (from, to) = (vertex(t.from)?, face(t.to)?);
            if g.faces()[to].len() != 3 {
                return Err(format!("{} only pays 3-faces", t.rule));
            }
            if !g.faces()[to].vertices().any(|u| u == from) {
                return Err(format!("{} is not on face {}", t.from, t.to));
            }
            let d = g.degree(from);
            let expected = match t.rule {
                Rule::R3 => {
                    if d != 5 {
                        return Err(format!("R3 requires a 5-vertex source, {} has degree {}", t.from, d));
                    }
                    frac(1, 3)
                }
                _ => {
                    if d < 6 {
                        return Err(format!("R4 requires a 6⁺-vertex source, {} has degree {}", t.from, d));
                    }
                    if face_has_low_vertex(g, to) {
                        frac(1, 2)
                    } else {
                        frac(1, 3)
                    }
                }
            };
            if t.amount != expected {
                return Err(format!("{} pays {} here, not {}", t.rule, expected, t.amount));
            }
        }
        Rule::R5 => {
            let (from, to) = (face(t.from)?, vertex(t.to)?);
            let len = g.faces()[from].len();
            if len < 5 {
                return Err(String::from("R5 only drains 5⁺-faces"));
            }
            if g.degree(to) != 8 {
                return Err(format!("R5 pays 8-vertices, {} has degree {}", t.to, g.degree(to)));
            }
            let occurrences = g.faces()[from].vertices().filter(|&u| g.degree(u) == 8).count();
            if occurrences == 0 || !g.faces()[from].vertices().any(|u| u == to) {
                return Err(format!("{} is not on face {}", t.to, t.from));
            }
            let expected = q(len as i64 - 4) / q(occurrences as i64);
            if t.amount != expected {
                return Err(format!("R5 shares {} per occurrence here, not {}", expected, t.amount));
            }
        }
    }
    Ok(())
}

/// Which branch of the degree case analysis a vertex falls into, with the
/// guaranteed floor on its final charge where the analysis states one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCase {
    pub vertex: usize,
    pub degree: usize,
    /// 2- and 3-neighbours and incident 3-face occurrences.
    pub n2: usize,
    pub n3: usize,
    pub m3: usize,
    pub sent: Charge,
    pub received: Charge,
    pub final_charge: Charge,
    /// Human-readable case tag, e.g. `5-vertex: 1 - m3/3`.
    pub label: String,
    /// Value of the case's closed-form floor, for degrees where the case
    /// analysis gives one assuming a structurally clean graph. A clean
    /// graph keeps `final_charge >= case_floor >= 0`; a violation can
    /// break either inequality.
    pub case_floor: Option<Charge>,
}

fn classify_vertex(g: &PlanarEmbedding, ledger_final: &ChargeLedger, v: usize) -> VertexCase {
    let d = g.degree(v);
    let n2 = g.rotation(v).iter().filter(|&&u| g.degree(u) == 2).count();
    let n3 = g.rotation(v).iter().filter(|&&u| g.degree(u) == 3).count();
    let m3 = incident_faces(g, v)
        .into_iter()
        .filter(|&f| g.faces()[f].len() == 3)
        .count();
    let initial = q(d as i64 - 4);
    let final_charge = ledger_final.get(Bearer::Vertex(v));
    // Reconstruct the send/receive split from the final value and the
    // rule structure: everything a 5⁺-vertex does is send, everything a
    // 4⁻-vertex does is receive, and an 8-vertex may also receive via R5.
    let (label, case_floor) = match d {
        0 | 1 => (format!("{}-vertex: below the minimum degree", d), None),
        2 => (String::from("2-vertex: -2 + 2*1 = 0"), Some(q(0))),
        3 => (String::from("3-vertex: -1 + 3*(1/3) = 0"), Some(q(0))),
        4 => (String::from("4-vertex: keeps 0"), Some(q(0))),
        5 => (
            format!("5-vertex: 1 - m3/3 with m3 = {}", m3),
            Some(q(1) - frac(m3 as i64, 3)),
        ),
        6 => (
            format!("6-vertex: 2 - m3/2 with m3 = {}", m3),
            Some(q(2) - frac(m3 as i64, 2)),
        ),
        7 => (
            format!("7-vertex: 3 - m3/2 - n3/3 with m3 = {}, n3 = {}", m3, n3),
            Some(q(3) - frac(m3 as i64, 2) - frac(n3 as i64, 3)),
        ),
        8 => (
            format!(
                "8-vertex: 4 - n2 - n3/3 - triangle payments + R5 income, \
                 with n2 = {}, n3 = {}, m3 = {}",
                n2, n3, m3
            ),
            None,
        ),
        _ => (format!("{}-vertex: outside the regime", d), None),
    };
    let mut sent = q(0);
    let mut received = q(0);
    for t in rule_transfers(g).entries {
        if t.from == Bearer::Vertex(v) {
            sent += t.amount;
        }
        if t.to == Bearer::Vertex(v) {
            received += t.amount;
        }
    }
    debug_assert_eq!(initial - sent + received, final_charge);
    VertexCase { vertex: v, degree: d, n2, n3, m3, sent, received, final_charge, label, case_floor }
}

/// Everything the charge audit establishes about one graph.
#[derive(Debug, Clone)]
pub struct AuditReport {
    /// True when the maximum degree exceeds 8; the charges are still
    /// computed, but the case analysis does not apply.
    pub out_of_regime: bool,
    pub initial: ChargeLedger,
    pub final_: ChargeLedger,
    pub log: TransferLog,
    pub negative: Vec<(Bearer, Charge)>,
    pub violations: Vec<StructuralViolation>,
    pub four_fan: Option<FanWitness>,
    pub vertex_cases: Vec<VertexCase>,
}

/// Run the full audit: charges, redistribution, negative bearers, the
/// structural violations that excuse them, and per-vertex diagnostics.
pub fn audit(g: &PlanarEmbedding) -> AuditReport {
    let initial = initial_charges(g);
    let (final_, log) = apply_rules(g);
    let negative = final_.negative_bearers();
    let violations = patterns::structural_violations(g);
    let four_fan = patterns::contains_four_fan(g);
    let vertex_cases = (0..g.num_vertices()).map(|v| classify_vertex(g, &final_, v)).collect();
    AuditReport {
        out_of_regime: g.max_degree() > 8,
        initial,
        final_,
        log,
        negative,
        violations,
        four_fan,
        vertex_cases,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn k3() -> PlanarEmbedding {
        PlanarEmbedding::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap()
    }

    fn cube() -> PlanarEmbedding {
        // Bottom 0-1-2-3, top 4-5-6-7, vertical edges i to i+4.
        PlanarEmbedding::build(vec![
            vec![1, 3, 4],
            vec![2, 0, 5],
            vec![3, 1, 6],
            vec![0, 2, 7],
            vec![0, 7, 5],
            vec![1, 4, 6],
            vec![2, 5, 7],
            vec![3, 6, 4],
        ])
        .unwrap()
    }

    fn icosahedron() -> PlanarEmbedding {
        PlanarEmbedding::build(vec![
            vec![1, 2, 3, 4, 5],
            vec![0, 5, 6, 7, 2],
            vec![0, 1, 7, 8, 3],
            vec![0, 2, 8, 9, 4],
            vec![0, 3, 9, 10, 5],
            vec![0, 4, 10, 6, 1],
            vec![1, 5, 10, 11, 7],
            vec![1, 6, 11, 8, 2],
            vec![2, 7, 11, 9, 3],
            vec![3, 8, 11, 10, 4],
            vec![4, 9, 11, 6, 5],
            vec![6, 10, 9, 8, 7],
        ])
        .unwrap()
    }

    fn path2() -> PlanarEmbedding {
        // One 2-vertex between two leaves.
        PlanarEmbedding::build(vec![vec![1], vec![0, 2], vec![1]]).unwrap()
    }

    fn star(k: usize) -> PlanarEmbedding {
        let mut rot = vec![(1..=k).collect::<Vec<_>>()];
        rot.extend((1..=k).map(|_| vec![0]));
        PlanarEmbedding::build(rot).unwrap()
    }

    #[test]
    fn icosahedron_charges() {
        let g = icosahedron();
        let initial = initial_charges(&g);
        assert_eq!(initial.total(), q(-8));
        let ones = initial.charges.values().filter(|&&c| c == q(1)).count();
        let minus = initial.charges.values().filter(|&&c| c == q(-1)).count();
        assert_eq!((ones, minus), (12, 20), "12 vertices at +1, 20 faces at -1");

        let (final_, _) = apply_rules(&g);
        assert_eq!(final_.total(), q(-8));
        for v in 0..12 {
            // Each 5-vertex pays its five triangles a third each.
            assert_eq!(final_.get(Bearer::Vertex(v)), q(1) - frac(5, 3));
        }
        for f in 0..20 {
            assert_eq!(final_.get(Bearer::Face(f)), q(0));
        }
    }

    #[test]
    fn k3_charges_stay_put() {
        let g = k3();
        let initial = initial_charges(&g);
        let (final_, log) = apply_rules(&g);
        // R1 fires in both directions along every edge, so each vertex
        // nets zero; nothing else applies.
        assert_eq!(log.entries.len(), 6);
        assert!(log.entries.iter().all(|t| t.rule == Rule::R1));
        assert_eq!(initial.charges, final_.charges);
        for v in 0..3 {
            assert_eq!(final_.get(Bearer::Vertex(v)), q(-2));
        }
        for f in 0..2 {
            assert_eq!(final_.get(Bearer::Face(f)), q(-1));
        }
    }

    #[test]
    fn cube_is_all_r2_wash() {
        let g = cube();
        let (final_, log) = apply_rules(&g);
        assert!(log.entries.iter().all(|t| t.rule == Rule::R2));
        for v in 0..8 {
            assert_eq!(final_.get(Bearer::Vertex(v)), q(-1));
        }
        for f in 0..6 {
            assert_eq!(final_.get(Bearer::Face(f)), q(0));
        }
        assert_eq!(final_.total(), q(-8));
    }

    /// Two 8-vertices and a 3-vertex around a triangle: the face starts at
    /// −1 and collects 1/2 from each 8-vertex (R4 at the raised rate,
    /// because of the 4⁻-vertex on the face), ending at 0.
    #[test]
    fn triangle_with_two_eights_breaks_even() {
        // Vertices: 0 and 1 are the 8-vertices (padded with pendants),
        // 2 is the 3-vertex with one pendant of its own.
        let mut rot: Vec<Vec<usize>> = Vec::new();
        rot.push(vec![1, 2, 3, 4, 5, 6, 7, 8]); // 0: edge to 1, then 2, pendants 3..=8
        rot.push(vec![2, 0, 9, 10, 11, 12, 13, 14]); // 1: 2, 0, pendants 9..=14
        rot.push(vec![0, 1, 15]); // 2: on the triangle, plus pendant 15
        for _ in 3..=8 {
            rot.push(vec![0]);
        }
        for _ in 9..=14 {
            rot.push(vec![1]);
        }
        rot.push(vec![2]);
        let g = PlanarEmbedding::build(rot).unwrap();
        assert_eq!(g.degree(0), 8);
        assert_eq!(g.degree(1), 8);
        assert_eq!(g.degree(2), 3);
        let tri = g.triangle_face(0, 1, 2).expect("the triangle is a face");

        let (final_, log) = apply_rules(&g);
        let into_tri: Vec<&Transfer> =
            log.entries.iter().filter(|t| t.to == Bearer::Face(tri)).collect();
        assert_eq!(into_tri.len(), 2);
        assert!(into_tri.iter().all(|t| t.rule == Rule::R4 && t.amount == frac(1, 2)));
        assert_eq!(final_.get(Bearer::Face(tri)), q(0));
        assert_eq!(final_.total(), q(-8));
    }

    /// A triangle of three 5-vertices collects 1/3 three times (R3).
    #[test]
    fn triangle_of_five_vertices_breaks_even() {
        // K3 on 0,1,2 with three pendants each, drawn in the outer
        // region, so the triangle vertices land at degree 5.
        let mut rot: Vec<Vec<usize>> = Vec::new();
        rot.push(vec![1, 2, 3, 4, 5]);
        rot.push(vec![2, 0, 6, 7, 8]);
        rot.push(vec![0, 1, 9, 10, 11]);
        for p in 3..=11 {
            let owner = (p - 3) / 3;
            rot.push(vec![owner]);
        }
        let g = PlanarEmbedding::build(rot).unwrap();
        for v in 0..3 {
            assert_eq!(g.degree(v), 5);
        }
        let tri = g.triangle_face(0, 1, 2).expect("triangle face");
        let (final_, log) = apply_rules(&g);
        let into_tri: Vec<&Transfer> =
            log.entries.iter().filter(|t| t.to == Bearer::Face(tri)).collect();
        assert_eq!(into_tri.len(), 3);
        assert!(into_tri.iter().all(|t| t.rule == Rule::R3 && t.amount == frac(1, 3)));
        assert_eq!(final_.get(Bearer::Face(tri)), q(0));
    }

    #[test]
    fn two_vertex_breaks_even() {
        let g = path2();
        let (final_, _) = apply_rules(&g);
        assert_eq!(final_.get(Bearer::Vertex(1)), q(0), "-2 + 2*1");
        assert_eq!(final_.total(), q(-8));
    }

    /// The three leaves of a claw end at −10/3 each: −3 initially, minus
    /// the R2 third they each owe the center. The audit must both flag
    /// the negative bearers and point at the minimum-degree violations.
    #[test]
    fn claw_audit_blames_the_leaves() {
        let g = star(3);
        let report = audit(&g);
        assert!(!report.out_of_regime);
        assert_eq!(report.final_.total(), q(-8));
        assert_eq!(report.final_.get(Bearer::Vertex(0)), q(0));
        for leaf in 1..=3 {
            assert_eq!(report.final_.get(Bearer::Vertex(leaf)), frac(-10, 3));
        }
        // The lone face has length 6 and keeps its +2 (no 8-vertex).
        assert_eq!(report.final_.get(Bearer::Face(0)), q(2));
        assert_eq!(report.negative.len(), 3);
        assert!(report
            .violations
            .iter()
            .any(|v| v.lemma == "lem:min-deg"));
    }

    #[test]
    fn r5_shares_a_big_face_among_its_eights() {
        // An 8-vertex on a pentagon: 0-1-2-3-4 cycle, with 0 padded to
        // degree 8 by pendants drawn inside the outer region.
        let mut rot: Vec<Vec<usize>> = Vec::new();
        rot.push(vec![1, 5, 6, 7, 8, 9, 10, 4]);
        rot.push(vec![2, 0]);
        rot.push(vec![3, 1]);
        rot.push(vec![4, 2]);
        rot.push(vec![0, 3]);
        for _ in 5..=10 {
            rot.push(vec![0]);
        }
        let g = PlanarEmbedding::build(rot).unwrap();
        assert_eq!(g.degree(0), 8);
        let (final_, log) = apply_rules(&g);
        let r5: Vec<&Transfer> = log.entries.iter().filter(|t| t.rule == Rule::R5).collect();
        // The pentagon pays its +1 to vertex 0; the outer face (length
        // 5 + 2*6 = 17... it also touches 0) pays as well. Just check
        // every R5 entry lands on vertex 0 and each source face is
        // drained to exactly zero.
        assert!(!r5.is_empty());
        assert!(r5.iter().all(|t| t.to == Bearer::Vertex(0)));
        for t in &r5 {
            assert_eq!(final_.get(t.from), q(0));
        }
        assert_eq!(final_.total(), q(-8));
    }

    #[test]
    fn replay_round_trips_and_rejects_tampering() {
        let g = icosahedron();
        let (final_, log) = apply_rules(&g);
        assert_eq!(replay(&g, &log).unwrap(), final_);

        // Wrong amount.
        let mut bad = log.clone();
        bad.entries[0].amount = q(2);
        let err = replay(&g, &bad).unwrap_err();
        assert_eq!(err.index, 0);

        // Wrong rule attribution.
        let mut bad = log.clone();
        bad.entries[3].rule = Rule::R1;
        assert!(replay(&g, &bad).is_err());

        // Transfer between non-incident bearers.
        let mut bad = log.clone();
        let probe = bad.entries[1];
        bad.entries[1] = Transfer { rule: Rule::R3, from: probe.from, to: Bearer::Face(g.num_faces() - 1), ..probe };
        // (May coincidentally be incident; accept either outcome but
        // require determinism of the validator itself.)
        let _ = replay(&g, &bad);
    }

    #[test]
    fn conservation_across_examples() {
        for g in [k3(), cube(), icosahedron(), path2(), star(3), star(8), star(9)] {
            let report = audit(&g);
            assert_eq!(report.initial.total(), q(-8));
            assert_eq!(report.final_.total(), q(-8));
        }
    }

    #[test]
    fn delta_nine_marks_out_of_regime() {
        let report = audit(&star(9));
        assert!(report.out_of_regime);
        assert_eq!(report.final_.total(), q(-8));
    }

    #[test]
    fn case_floors_match_the_rules() {
        let g = icosahedron();
        let report = audit(&g);
        for case in &report.vertex_cases {
            assert_eq!(case.degree, 5);
            assert_eq!(case.m3, 5);
            assert_eq!(case.case_floor, Some(q(1) - frac(5, 3)));
            assert_eq!(case.final_charge, case.case_floor.unwrap());
        }
    }
}
