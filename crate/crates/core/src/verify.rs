//! Exhaustive verification: enumerate legal starts, branch over every crash
//! scenario and check the transition diagram and lemma invariants on every
//! trace.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemmas;
use crate::ring::{arc_len, dist, Direction, GroundState, ObservedConfig, Symmetry};
use crate::sim::{
    default_max_rounds, run_with_cache, Crash, DecisionCache, Outcome, Trace, TraceEntry,
};
use crate::suig::{compute_moves, AlgorithmVariant, Branch};
use crate::symmetry::{analyze, is_periodic, m_set, node_edge_axis, ConfigClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrashMode {
    None,
    All,
}

/// Named invariants. Each is counted when checked and when violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Check {
    Gathers,
    GathersAtCrashNode,
    RoundBound,
    Transition,
    Conservation,
    CrashImmobility,
    NonPeriodicSuccessor,
    NoCrashClosure,
    SecondaryCrashRecovery,
    MainCrashProgress,
    L2OneRound,
    L4ToL3,
    L3Gathers,
    L2HostsCrash,
    GapParity,
    Equivariance,
    EvenGapUniqueness,
    OrientationCount,
    MoveOppositeSoundness,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: Check,
    pub round: Option<usize>,
    pub detail: String,
}

/// How often each invariant was checked and violated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: BTreeMap<Check, usize>,
    pub violated: BTreeMap<Check, usize>,
}

impl Tally {
    fn hit(&mut self, check: Check) {
        *self.checked.entry(check).or_default() += 1;
    }

    fn merge(&mut self, other: &Tally) {
        for (&k, &v) in &other.checked {
            *self.checked.entry(k).or_default() += v;
        }
        for (&k, &v) in &other.violated {
            *self.violated.entry(k).or_default() += v;
        }
    }

    pub fn checked(&self, check: Check) -> usize {
        self.checked.get(&check).copied().unwrap_or(0)
    }

    pub fn violated(&self, check: Check) -> usize {
        self.violated.get(&check).copied().unwrap_or(0)
    }
}

/// Collects violations and check counts for one trace.
#[derive(Debug, Default)]
struct Checker {
    tally: Tally,
    violations: Vec<Violation>,
}

impl Checker {
    fn check(
        &mut self,
        check: Check,
        round: Option<usize>,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.tally.hit(check);
        if !ok {
            *self.tally.violated.entry(check).or_default() += 1;
            self.violations.push(Violation {
                check,
                round,
                detail: detail(),
            });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioReport {
    pub n: usize,
    pub k: usize,
    pub initial: ObservedConfig,
    pub crash: Option<Crash>,
    pub outcome: Outcome,
    pub rounds: usize,
    pub violations: Vec<Violation>,
}

impl ScenarioReport {
    pub fn success(&self) -> bool {
        matches!(self.outcome, Outcome::GatheredAt { .. }) && self.violations.is_empty()
    }

    pub fn record(&self) -> ScenarioRecord {
        ScenarioRecord {
            n: self.n,
            k: self.k,
            initial: self.initial.to_string(),
            crash: self.crash,
            outcome: self.outcome,
            rounds: self.rounds,
            violations: self.violations.clone(),
        }
    }
}

/// Serialised form of a [`ScenarioReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioRecord {
    pub n: usize,
    pub k: usize,
    pub initial: String,
    pub crash: Option<Crash>,
    pub outcome: Outcome,
    pub rounds: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub scenarios: usize,
    pub gathered: usize,
    pub max_rounds: usize,
    pub violations: usize,
    pub visited_configs: usize,
    pub tally: Tally,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.gathered == self.scenarios && self.violations == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "scenarios={} gathered={} max_rounds={} violations={} visited_configs={}",
            self.scenarios, self.gathered, self.max_rounds, self.violations, self.visited_configs
        )?;
        for (check, checked) in &self.tally.checked {
            let bad = self.tally.violated(*check);
            writeln!(f, "  {check:<24} checked={checked:<9} violated={bad}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub scenarios: Vec<ScenarioReport>,
    /// Violations of properties checked over the visited population rather
    /// than along a single trace.
    pub population_violations: Vec<Violation>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.summary.passed()
    }

    /// JSON lines: one scenario per line, then a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.scenarios {
            out.push_str(&serde_json::to_string(&s.record()).expect("records serialise"));
            out.push('\n');
        }
        for v in &self.population_violations {
            let line = serde_json::json!({ "population_violation": v });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let line = serde_json::json!({ "summary": self.summary });
        out.push_str(&line.to_string());
        out.push('\n');
        out
    }
}

fn check_odd_ring(n: usize) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::WrongParity { n, expected: "odd" });
    }
    if n < 5 {
        return Err(Error::RingTooSmall { n, min: 5 });
    }
    Ok(())
}

/// One representative per dihedral orbit of the non-periodic `k`-robot
/// configurations symmetric about an axis through a node, sorted.
pub fn enumerate_initial(n: usize, k: usize) -> Result<Vec<ObservedConfig>> {
    if n.is_multiple_of(2) {
        return Err(Error::WrongParity { n, expected: "odd" });
    }
    if n < 3 {
        return Err(Error::RingTooSmall { n, min: 3 });
    }
    if !(2..=n).contains(&k) {
        return Err(Error::Precondition {
            what: "enumerate_initial",
            reason: format!("k={k} outside [2, {n}]"),
        });
    }
    let half = (n - 1) / 2;
    let pairs = k / 2;
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << half {
        if mask.count_ones() as usize != pairs {
            continue;
        }
        let mut occ: Vec<usize> = (0..half)
            .filter(|d| mask >> d & 1 == 1)
            .flat_map(|d| [d + 1, n - d - 1])
            .collect();
        if k % 2 == 1 {
            occ.push(0);
        }
        let c = ObservedConfig::new(n, occ)?;
        if !is_periodic(&c) {
            out.insert(c.canonical_form());
        }
    }
    Ok(out.into_iter().collect())
}

/// Whether `a` and `b` are equal up to rotation.
pub fn equal_up_to_rotation(a: &ObservedConfig, b: &ObservedConfig) -> bool {
    a.n() == b.n() && a.count() == b.count() && (0..a.n()).any(|x| a.rotate(x as isize) == *b)
}

/// A diagram edge: `from` to `to`, solid or crash-only (dashed).
#[derive(Debug, Clone, Copy)]
pub struct TransitionRule {
    pub name: &'static str,
    pub dashed: bool,
    pub matches: fn(ConfigClass, ConfigClass) -> bool,
}

fn ne_like(c: ConfigClass) -> Option<usize> {
    match c {
        ConfigClass::L3 | ConfigClass::L3Second | ConfigClass::L4 => None,
        other => other.ne_count(),
    }
}

fn qne_like(c: ConfigClass) -> Option<usize> {
    c.qne_count()
}

fn shrinks_by_at_most_two(from: usize, to: usize) -> bool {
    to <= from && from - to <= 2
}

/// Largest ring size exempt from the transition diagram. The diagram assumes
/// room to spare: on 7 nodes four-robot runs pass through `NE(3)`, and crash
/// runs on 5 nodes step from `L4` to `L4` and from `L3` to `L3`.
pub const SMALL_RING: usize = 7;

/// The transition diagram between configuration classes.
pub const TRANSITION_RULES: &[TransitionRule] = &[
    TransitionRule {
        name: "NE(k) -> NE(k'), k' in {k, k-1, k-2}",
        dashed: false,
        matches: |a, b| match (ne_like(a), ne_like(b)) {
            (Some(k), Some(k2)) if k >= 5 => shrinks_by_at_most_two(k, k2) && k2 >= 5,
            _ => false,
        },
    },
    TransitionRule {
        name: "L5 -> L3",
        dashed: false,
        matches: |a, b| a == ConfigClass::L5 && b == ConfigClass::L3,
    },
    TransitionRule {
        name: "NE(4) -> NE(4) | L4",
        dashed: false,
        matches: |a, b| {
            a == ConfigClass::Ne(4) && matches!(b, ConfigClass::Ne(4) | ConfigClass::L4)
        },
    },
    TransitionRule {
        name: "NE(k) -> QNE(k) | QNE(k-1)",
        dashed: true,
        matches: |a, b| match (ne_like(a), qne_like(b)) {
            (Some(k), Some(k2)) if k >= 5 => k2 == k || k2 + 1 == k,
            _ => false,
        },
    },
    TransitionRule {
        name: "NE(4) -> QNE(4)",
        dashed: true,
        matches: |a, b| a == ConfigClass::Ne(4) && qne_like(b) == Some(4),
    },
    TransitionRule {
        name: "QNE -> NE(k'), k' in {k, k-1, k-2}",
        dashed: true,
        matches: |a, b| match (qne_like(a), b) {
            (Some(4), b) => matches!(b, ConfigClass::Ne(4) | ConfigClass::L4),
            (Some(k), b) => ne_like(b).is_some_and(|k2| shrinks_by_at_most_two(k, k2) && k2 >= 4),
            _ => false,
        },
    },
    TransitionRule {
        name: "L4 -> L3",
        dashed: false,
        matches: |a, b| a == ConfigClass::L4 && b == ConfigClass::L3,
    },
    TransitionRule {
        name: "L4 -> L4'",
        dashed: true,
        matches: |a, b| a == ConfigClass::L4 && b == ConfigClass::L4Prime,
    },
    TransitionRule {
        name: "L4' -> L3",
        dashed: true,
        matches: |a, b| a == ConfigClass::L4Prime && b == ConfigClass::L3,
    },
    TransitionRule {
        name: "L4' -> L3'",
        dashed: true,
        matches: |a, b| a == ConfigClass::L4Prime && b == ConfigClass::L3Prime,
    },
    TransitionRule {
        name: "L3 -> L3''",
        dashed: false,
        matches: |a, b| a == ConfigClass::L3 && b == ConfigClass::L3Second,
    },
    TransitionRule {
        name: "L3 -> L3'",
        dashed: true,
        matches: |a, b| a == ConfigClass::L3 && b == ConfigClass::L3Prime,
    },
    TransitionRule {
        name: "L3' -> L3''",
        dashed: true,
        matches: |a, b| a == ConfigClass::L3Prime && b == ConfigClass::L3Second,
    },
    TransitionRule {
        name: "L3'' -> L2",
        dashed: true,
        matches: |a, b| a == ConfigClass::L3Second && b == ConfigClass::L2,
    },
    TransitionRule {
        name: "L3'' -> Gathered",
        dashed: false,
        matches: |a, b| a == ConfigClass::L3Second && b == ConfigClass::Gathered,
    },
    TransitionRule {
        name: "L2 -> Gathered",
        dashed: false,
        matches: |a, b| a == ConfigClass::L2 && b == ConfigClass::Gathered,
    },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionViolation {
    pub prev: ConfigClass,
    pub next: ConfigClass,
    pub crash_active: bool,
    /// The edge exists but only when the crashed robot was ordered to move.
    pub needs_crash: bool,
}

impl fmt::Display for TransitionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.needs_crash {
            write!(
                f,
                "{} -> {} requires a crashed robot ordered to move",
                self.prev, self.next
            )
        } else {
            write!(f, "no transition {} -> {}", self.prev, self.next)
        }
    }
}

/// Accepts exactly the diagram edges; dashed ones need `crash_active`.
pub fn check_transition(
    prev: ConfigClass,
    next: ConfigClass,
    crash_active: bool,
) -> std::result::Result<(), TransitionViolation> {
    let mut dashed_only = false;
    for rule in TRANSITION_RULES {
        if (rule.matches)(prev, next) {
            if !rule.dashed || crash_active {
                return Ok(());
            }
            dashed_only = true;
        }
    }
    Err(TransitionViolation {
        prev,
        next,
        crash_active,
        needs_crash: dashed_only,
    })
}

/// The crashed robot sits on a node that received a move order.
fn crash_active(e: &TraceEntry) -> bool {
    e.crashed_node()
        .is_some_and(|v| e.moves.get(v) != Direction::Stay)
}

fn check_trace(trace: &Trace, outcome: &Outcome, crash: Option<Crash>, k0: u32, chk: &mut Checker) {
    let entries = &trace.entries;

    chk.check(
        Check::Gathers,
        None,
        matches!(outcome, Outcome::GatheredAt { .. }),
        || format!("outcome {outcome}"),
    );
    if let (Some(c), Outcome::GatheredAt { node, .. }) = (crash, outcome) {
        chk.check(Check::GathersAtCrashNode, None, *node == c.node, || {
            format!("gathered at {node}, crash at {}", c.node)
        });
    }

    let mut crash_seen: Option<(usize, u32)> = None;
    for (t, e) in entries.iter().enumerate() {
        chk.check(Check::Conservation, Some(t), e.ground.total() == k0, || {
            format!("{} robots instead of {k0}", e.ground.total())
        });
        if let Some(v) = e.crashed_node() {
            let count = e.ground.crashed_at(v);
            let ok = crash_seen.is_none_or(|(w, c)| w == v && count >= c);
            chk.check(Check::CrashImmobility, Some(t), ok, || {
                format!("crash moved from {crash_seen:?} to {v}")
            });
            crash_seen = Some((v, count));
        } else {
            chk.check(
                Check::CrashImmobility,
                Some(t),
                crash_seen.is_none(),
                || "crash vanished".into(),
            );
        }
        if e.class == ConfigClass::L2 {
            let hosts = e
                .observed
                .nodes()
                .any(|v| e.ground.correct_at(v) == 0 && e.ground.crashed_at(v) > 0);
            chk.check(Check::L2HostsCrash, Some(t), hosts, || {
                format!("{} has no node with only crashed robots", e.observed)
            });
        }
    }

    let gathered_by = |t: usize, within: usize| {
        entries
            .iter()
            .skip(t)
            .take(within + 1)
            .any(|e| e.class == ConfigClass::Gathered)
    };

    for t in 0..entries.len() {
        let e = &entries[t];
        match e.class {
            ConfigClass::L2 => chk.check(
                Check::L2OneRound,
                Some(t),
                gathered_by(t, 1) && !gathered_by(t, 0),
                || "L2 did not gather in exactly one round".into(),
            ),
            ConfigClass::L4 => {
                let ok = entries
                    .iter()
                    .skip(t + 1)
                    .take(2)
                    .any(|e| e.class == ConfigClass::L3);
                chk.check(Check::L4ToL3, Some(t), ok, || {
                    "L4 did not reach L3 within two rounds".into()
                })
            }
            ConfigClass::L3 => chk.check(Check::L3Gathers, Some(t), gathered_by(t, 4), || {
                "L3 did not gather within four rounds".into()
            }),
            _ => {}
        }
        let Some(next) = entries.get(t + 1) else {
            continue;
        };
        let active = crash_active(e);

        // rings of 5 and 7 nodes fall outside the diagram's argument
        // the diagram describes the odd-ring algorithm only
        if e.observed.n() % 2 == 1 && e.observed.n() > SMALL_RING {
            let edge = check_transition(e.class, next.class, active);
            chk.check(Check::Transition, Some(t), edge.is_ok(), || {
                format!(
                    "{} -> {}: {}",
                    e.observed,
                    next.observed,
                    edge.clone().unwrap_err()
                )
            });
        }

        let k = e.observed.count();
        let ne = e.class.ne_count().is_some();
        if ne && k > 3 {
            chk.check(
                Check::NonPeriodicSuccessor,
                Some(t),
                next.class != ConfigClass::Periodic,
                || format!("{} -> periodic {}", e.observed, next.observed),
            );
        }
        if ne && k > 4 && !active {
            let k2 = next.class.ne_count();
            let ok = match k2 {
                Some(k2) if k2 <= 4 => e.class == ConfigClass::L5 && next.class == ConfigClass::L3,
                Some(k2) => shrinks_by_at_most_two(k, k2),
                None => false,
            };
            chk.check(Check::NoCrashClosure, Some(t), ok, || {
                format!(
                    "{} ({}) -> {} ({})",
                    e.observed, e.class, next.observed, next.class
                )
            });
        }
        if ne && active {
            check_crash_step(entries, t, chk);
        }
    }
}

/// Checks for a round in which the crashed robot was ordered to
/// move from a node-edge symmetric configuration.
fn check_crash_step(entries: &[TraceEntry], t: usize, chk: &mut Checker) {
    let e = &entries[t];
    let next = &entries[t + 1];
    let n = e.observed.n();
    let k = e.observed.count();
    let v = e.crashed_node().expect("active crash");
    let a = analyze(&e.observed);
    let (Some(roles), Some(axis)) = (&a.roles, &a.axis) else {
        return;
    };
    let main_moves = matches!(e.branch, Branch::MoveMain | Branch::MoveMainAndSecondary);
    let secondary_moves = matches!(
        e.branch,
        Branch::MoveSecondary | Branch::MoveMainAndSecondary
    );
    let is_main = main_moves && (roles.main.0 == v || roles.main.1 == v);
    let is_secondary =
        !is_main && secondary_moves && roles.secondary.is_some_and(|(x, y)| x == v || y == v);

    if is_secondary {
        let adjacent = roles.secondary.is_some_and(|(x, y)| dist(n, x, y) == 1);
        if k > 4 || (k == 4 && !adjacent) {
            let no_crash = e.observed.apply_moves(&e.moves);
            let ok = entries
                .get(t + 2)
                .is_some_and(|e2| equal_up_to_rotation(&e2.observed, &no_crash));
            chk.check(Check::SecondaryCrashRecovery, Some(t), ok, || {
                format!(
                    "{} with secondary {v} crashed: round +2 is {:?}, no-crash successor {no_crash}",
                    e.observed,
                    entries.get(t + 2).map(|e2| e2.observed.to_string())
                )
            });
        }
    }

    if is_main && k > 4 && next.class.ne_count() == Some(k) {
        let na = analyze(&next.observed);
        let still_main = na
            .roles
            .as_ref()
            .is_some_and(|r| r.main.0 == v || r.main.1 == v);
        if still_main {
            if let Ok((p, q)) = m_set(&e.observed, v) {
                let p2 = crate::ring::shift(n, p, e.moves.get(p).offset());
                let q2 = crate::ring::shift(n, q, e.moves.get(q).offset());
                let before = arc_len(n, v, p, Direction::Pos) + arc_len(n, v, q, Direction::Neg);
                let after = arc_len(n, v, p2, Direction::Pos) + arc_len(n, v, q2, Direction::Neg);
                chk.check(Check::MainCrashProgress, Some(t), after < before, || {
                    format!(
                        "{} crash {v}: M(C)={{{p},{q}}} arc {before} -> {after}",
                        e.observed
                    )
                });
            }
        }
    }

    if (is_main || is_secondary) && next.class.qne_count().is_some() {
        let na = analyze(&next.observed);
        let parity = na
            .quasi
            .iter()
            .find(|q| q.axis.c == axis.c)
            .map(|q| q.gap_distance % 2);
        let expected = if is_main { 1 } else { 0 };
        chk.check(Check::GapParity, Some(t), parity == Some(expected), || {
            format!(
                "{} -> {}: {} crash gives gap parity {parity:?} on axis {}",
                e.observed,
                next.observed,
                if is_main { "main" } else { "secondary" },
                axis.c
            )
        });
    }
}

fn scenario(
    initial: &ObservedConfig,
    g: &GroundState,
    offset: usize,
    crash: Option<Crash>,
    max_rounds: usize,
    cache: &mut DecisionCache,
) -> Result<(ScenarioReport, Tally)> {
    let local = crash.map(|c| Crash {
        round: 0,
        node: c.node,
    });
    let (trace, outcome) = run_with_cache(g, local, max_rounds.saturating_sub(offset), cache)?;
    let mut chk = Checker::default();
    check_trace(&trace, &outcome, local, g.total(), &mut chk);
    let rounds = offset + trace.len() - 1;
    chk.check(Check::RoundBound, None, rounds <= max_rounds, || {
        format!("{rounds} rounds > {max_rounds}")
    });
    let outcome = match outcome {
        Outcome::GatheredAt { node, round } => Outcome::GatheredAt {
            node,
            round: round + offset,
        },
        Outcome::Stuck { round } => Outcome::Stuck {
            round: round + offset,
        },
        Outcome::CycleDetected { first_repeat_round } => Outcome::CycleDetected {
            first_repeat_round: first_repeat_round + offset,
        },
        other => other,
    };
    let report = ScenarioReport {
        n: initial.n(),
        k: initial.count(),
        initial: initial.clone(),
        crash,
        outcome,
        rounds,
        violations: chk.violations,
    };
    Ok((report, chk.tally))
}

struct FamilyResult {
    reports: Vec<ScenarioReport>,
    tally: Tally,
    visited: Vec<ObservedConfig>,
}

/// Crash-free run from `initial`, then every crash branching of that run.
fn verify_family(
    initial: &ObservedConfig,
    variant: AlgorithmVariant,
    crash_mode: CrashMode,
    max_rounds: usize,
) -> Result<FamilyResult> {
    let mut cache = DecisionCache::new(variant);
    let g0 = GroundState::distinct(initial)?;
    let mut tally = Tally::default();
    let mut reports = Vec::new();
    let (trace, _) = run_with_cache(&g0, None, max_rounds, &mut cache)?;
    let (report, t) = scenario(initial, &g0, 0, None, max_rounds, &mut cache)?;
    tally.merge(&t);
    reports.push(report);
    if crash_mode == CrashMode::All {
        for e in &trace.entries {
            for v in e.observed.nodes() {
                let crash = Some(Crash {
                    round: e.round,
                    node: v,
                });
                let (report, t) =
                    scenario(initial, &e.ground, e.round, crash, max_rounds, &mut cache)?;
                tally.merge(&t);
                reports.push(report);
            }
        }
    }
    Ok(FamilyResult {
        reports,
        tally,
        visited: cache.configs().cloned().collect(),
    })
}

/// Properties checked once per distinct visited configuration.
pub fn population_checks(configs: &[ObservedConfig]) -> (Tally, Vec<Violation>) {
    let results: Vec<(Tally, Vec<Violation>)> = configs
        .par_iter()
        .map(|c| {
            let mut chk = Checker::default();
            if c.n() % 2 == 1 && c.n() >= 5 {
                if let Ok(m) = compute_moves(c) {
                    for g in Symmetry::all(c.n()) {
                        let image = compute_moves(&c.transform(g));
                        let ok = image
                            .as_ref()
                            .is_ok_and(|img| *img == m.transform(c.n(), g));
                        chk.check(Check::Equivariance, None, ok, || format!("{c} under {g:?}"));
                    }
                }
                if lemmas::even_gap_premise(c) {
                    let bad = lemmas::even_gap_uniqueness(c);
                    chk.check(Check::EvenGapUniqueness, None, bad.is_none(), || {
                        bad.unwrap_or_default()
                    });
                }
                if lemmas::orientation_premise(c, &analyze(c).quasi) {
                    let bad = lemmas::orientation_count(c);
                    chk.check(Check::OrientationCount, None, bad.is_none(), || {
                        bad.unwrap_or_default()
                    });
                }
                let a = analyze(c);
                let opposite =
                    a.quasi.len() == 2 && a.quasi[0].orientation != a.quasi[1].orientation;
                if opposite && node_edge_axis(c).is_none() && !is_periodic(c) {
                    let bad = lemmas::move_opposite_soundness(c);
                    chk.check(Check::MoveOppositeSoundness, None, bad.is_none(), || {
                        bad.unwrap_or_default()
                    });
                }
            }
            (chk.tally, chk.violations)
        })
        .collect();
    let mut tally = Tally::default();
    let mut violations = Vec::new();
    for (t, v) in results {
        tally.merge(&t);
        violations.extend(v);
    }
    (tally, violations)
}

fn assemble(families: Vec<FamilyResult>) -> VerifyReport {
    let mut summary = Summary::default();
    let mut scenarios = Vec::new();
    let mut visited = BTreeSet::new();
    for f in families {
        summary.tally.merge(&f.tally);
        scenarios.extend(f.reports);
        visited.extend(f.visited);
    }
    let visited: Vec<ObservedConfig> = visited.into_iter().collect();
    let (tally, population_violations) = population_checks(&visited);
    summary.tally.merge(&tally);
    scenarios.sort_by(|a, b| {
        (a.n, a.k, a.initial.canonical_form().to_bits(), a.crash).cmp(&(
            b.n,
            b.k,
            b.initial.canonical_form().to_bits(),
            b.crash,
        ))
    });
    summary.scenarios = scenarios.len();
    summary.gathered = scenarios
        .iter()
        .filter(|s| s.outcome.gathered_node().is_some())
        .count();
    summary.max_rounds = scenarios.iter().map(|s| s.rounds).max().unwrap_or(0);
    summary.violations =
        scenarios.iter().map(|s| s.violations.len()).sum::<usize>() + population_violations.len();
    summary.visited_configs = visited.len();
    VerifyReport {
        scenarios,
        population_violations,
        summary,
    }
}

/// Every legal start on an odd ring with robot counts in `ks`, crash-free and
/// (with [`CrashMode::All`]) under every single-crash scenario.
pub fn verify_suig(
    n: usize,
    ks: RangeInclusive<usize>,
    crash_mode: CrashMode,
) -> Result<VerifyReport> {
    check_odd_ring(n)?;
    let (lo, hi) = (*ks.start(), *ks.end());
    if lo < 3 || hi > n || lo > hi {
        return Err(Error::Precondition {
            what: "verify_suig",
            reason: format!("robot counts {lo}..{hi} outside [3, {n}]"),
        });
    }
    if lo == 3 && n.is_multiple_of(3) {
        return Err(Error::Precondition {
            what: "verify_suig",
            reason: format!("3 robots cannot gather when n={n} is a multiple of 3"),
        });
    }
    let mut starts = Vec::new();
    for k in ks {
        for c in enumerate_initial(n, k)? {
            starts.push((c, default_max_rounds(n, k)));
        }
    }
    let families = starts
        .par_iter()
        .map(|(c, bound)| verify_family(c, AlgorithmVariant::SuigRing, crash_mode, *bound))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(families))
}

/// Two-robot starts on an even ring: both arcs even and of different lengths.
pub fn enumerate_suir(n: usize) -> Result<Vec<ObservedConfig>> {
    if n % 2 == 1 {
        return Err(Error::WrongParity {
            n,
            expected: "even",
        });
    }
    if n < 4 {
        return Err(Error::RingTooSmall { n, min: 4 });
    }
    (2..n / 2)
        .step_by(2)
        .map(|d| ObservedConfig::new(n, [0, d]))
        .collect()
}

/// Every start of [`enumerate_suir`], crash-free and with every crash, all
/// within `n` rounds.
pub fn verify_suir(n: usize) -> Result<VerifyReport> {
    let starts = enumerate_suir(n)?;
    let mut families = starts
        .par_iter()
        .map(|c| verify_family(c, AlgorithmVariant::SuirShortestPath, CrashMode::All, n))
        .collect::<Result<Vec<_>>>()?;
    // the ring algorithm's population properties do not apply here
    for f in &mut families {
        f.visited.clear();
    }
    Ok(assemble(families))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, occ: &[usize]) -> ObservedConfig {
        ObservedConfig::new(n, occ.iter().copied()).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        assert!(enumerate_initial(5, 5).unwrap().is_empty());
        let two = enumerate_initial(9, 2).unwrap();
        assert_eq!(two.len(), 4);
        assert!(matches!(
            enumerate_initial(8, 2),
            Err(Error::WrongParity { .. })
        ));
    }

    #[test]
    fn enumerate_matches_orbit_oracle() {
        for n in [5usize, 7, 9, 11] {
            for k in 2..=n {
                let oracle: BTreeSet<ObservedConfig> = lemmas::all_configs(n)
                    .filter(|c| c.count() == k && !is_periodic(c) && node_edge_axis(c).is_some())
                    .map(|c| c.canonical_form())
                    .collect();
                let got: BTreeSet<ObservedConfig> =
                    enumerate_initial(n, k).unwrap().into_iter().collect();
                assert_eq!(got, oracle, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn nine_four_count() {
        // pinned by the orbit oracle above
        assert_eq!(enumerate_initial(9, 4).unwrap().len(), 6);
    }

    #[test]
    fn transition_examples() {
        let qne = ConfigClass::Qne { a: 1, b: 0, k: 8 };
        assert!(check_transition(ConfigClass::Ne(8), qne, true).is_ok());
        assert!(
            check_transition(ConfigClass::Ne(8), qne, false)
                .unwrap_err()
                .needs_crash
        );
        assert!(check_transition(ConfigClass::L2, ConfigClass::Gathered, false).is_ok());
        assert!(check_transition(ConfigClass::L2, ConfigClass::Gathered, true).is_ok());
        let v = check_transition(ConfigClass::L3, ConfigClass::Ne(6), true).unwrap_err();
        assert!(!v.needs_crash);
        assert!(check_transition(ConfigClass::L4, ConfigClass::L3, false).is_ok());
        assert!(check_transition(ConfigClass::L3Second, ConfigClass::L2, false).is_err());
    }

    #[test]
    fn rotation_equality() {
        assert!(equal_up_to_rotation(
            &cfg(21, &[0, 5, 8, 9, 10, 11, 14, 19]),
            &cfg(21, &[1, 6, 9, 10, 11, 12, 15, 20])
        ));
        assert!(!equal_up_to_rotation(
            &cfg(9, &[0, 1, 3]),
            &cfg(9, &[0, 2, 3])
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(verify_suig(9, 3..=3, CrashMode::None).is_err());
        assert!(verify_suig(8, 4..=4, CrashMode::None).is_err());
        assert!(verify_suig(9, 4..=10, CrashMode::None).is_err());
    }

    #[test]
    fn suir_starts() {
        assert!(enumerate_suir(4).unwrap().is_empty());
        assert_eq!(enumerate_suir(8).unwrap(), vec![cfg(8, &[0, 2])]);
        assert_eq!(
            enumerate_suir(12).unwrap(),
            vec![cfg(12, &[0, 2]), cfg(12, &[0, 4])]
        );
    }

    #[test]
    fn small_sweep_passes() {
        let r = verify_suig(11, 4..=5, CrashMode::All).unwrap();
        assert!(r.passed(), "{}", r.summary);
    }

    #[test]
    fn nine_nodes_break_secondary_recovery_but_still_gather() {
        let r = verify_suig(9, 5..=5, CrashMode::All).unwrap();
        let t = &r.summary.tally;
        assert!(t.violated(Check::SecondaryCrashRecovery) > 0);
        assert_eq!(t.violated(Check::Gathers), 0);
        assert_eq!(t.violated(Check::GathersAtCrashNode), 0);
    }
}
