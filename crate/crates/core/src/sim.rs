//! Fully synchronous execution with at most one crash location.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{dist, shift, Direction, GroundState, MoveSet, ObservedConfig};
use crate::suig::{compute_suir_moves, decide, AlgorithmVariant, Branch};
use crate::symmetry::{is_periodic, ConfigClass};

/// Crash one correct robot on `node` just before the move of `round`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crash {
    pub round: usize,
    pub node: usize,
}

pub type CrashSchedule = Option<Crash>;

/// What one compute phase produced; shared between runs through [`DecisionCache`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDecision {
    pub class: ConfigClass,
    pub branch: Branch,
    pub moves: MoveSet,
    /// Target nodes of the axis or of every quasi-axis.
    pub targets: Vec<usize>,
}

fn compute(c: &ObservedConfig, variant: AlgorithmVariant) -> Result<StepDecision> {
    match variant {
        AlgorithmVariant::SuigRing => {
            let d = decide(c)?;
            let targets = match (&d.analysis.roles, d.analysis.quasi.is_empty()) {
                (Some(r), _) => vec![r.target],
                (None, false) => d.analysis.quasi.iter().map(|q| q.target).collect(),
                _ => Vec::new(),
            };
            Ok(StepDecision {
                class: d.analysis.class,
                branch: d.branch,
                moves: d.moves,
                targets,
            })
        }
        AlgorithmVariant::SuirShortestPath => {
            let moves = compute_suir_moves(c)?;
            let (class, branch) = if c.count() == 1 {
                (ConfigClass::Gathered, Branch::Gathered)
            } else if c.count() == 2
                && dist(c.n(), c.nodes().next().unwrap(), c.nodes().last().unwrap()) == 1
            {
                (ConfigClass::L2, Branch::MoveLTwo)
            } else {
                (ConfigClass::Other, Branch::MoveLTwo)
            };
            Ok(StepDecision {
                class,
                branch,
                moves,
                targets: Vec::new(),
            })
        }
    }
}

/// Memoised compute phase. Decisions depend only on the observed
/// configuration, so runs from the same family may share one cache.
#[derive(Debug)]
pub struct DecisionCache {
    variant: AlgorithmVariant,
    map: HashMap<ObservedConfig, StepDecision>,
}

impl DecisionCache {
    pub fn new(variant: AlgorithmVariant) -> Self {
        DecisionCache {
            variant,
            map: HashMap::new(),
        }
    }

    pub fn variant(&self) -> AlgorithmVariant {
        self.variant
    }

    pub fn get(&mut self, c: &ObservedConfig) -> Result<&StepDecision> {
        if !self.map.contains_key(c) {
            let d = compute(c, self.variant)?;
            self.map.insert(c.clone(), d);
        }
        Ok(&self.map[c])
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Every configuration decided so far.
    pub fn configs(&self) -> impl Iterator<Item = &ObservedConfig> {
        self.map.keys()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub round: usize,
    /// Ground truth before the move, with this round's crash already injected.
    pub ground: GroundState,
    pub observed: ObservedConfig,
    pub class: ConfigClass,
    pub branch: Branch,
    pub moves: MoveSet,
    pub targets: Vec<usize>,
}

impl TraceEntry {
    pub fn crashed_node(&self) -> Option<usize> {
        self.ground.crash_node()
    }

    pub fn record(&self) -> TraceRecord {
        TraceRecord {
            round: self.round,
            occupied: self.observed.nodes().collect(),
            class: self.class.to_string(),
            orders: self.moves.orders().clone(),
            crashed_node: self.crashed_node(),
        }
    }

    /// One ring row (`o` occupied, `.` empty, `X` crashed) and a marker row
    /// with `^` under each target node.
    pub fn render(&self) -> String {
        let n = self.observed.n();
        let ring: String = (0..n)
            .map(|i| {
                if self.ground.crashed_at(i) > 0 {
                    'X'
                } else if self.observed.is_occupied(i) {
                    'o'
                } else {
                    '.'
                }
            })
            .collect();
        let marks: String = (0..n)
            .map(|i| if self.targets.contains(&i) { '^' } else { ' ' })
            .collect();
        format!(
            "round {:>3} {:<14} {}\n{}{}",
            self.round,
            self.class.to_string(),
            ring,
            " ".repeat(25),
            marks.trim_end()
        )
    }
}

/// Serialised form of one trace round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub round: usize,
    pub occupied: Vec<usize>,
    pub class: String,
    pub orders: BTreeMap<usize, Direction>,
    pub crashed_node: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
}

impl Trace {
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(&e.record()).expect("trace records serialise"));
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Outcome {
    GatheredAt { node: usize, round: usize },
    CycleDetected { first_repeat_round: usize },
    RoundLimit { bound: usize },
    Stuck { round: usize },
}

impl Outcome {
    pub fn gathered_node(&self) -> Option<usize> {
        match self {
            Outcome::GatheredAt { node, .. } => Some(*node),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::GatheredAt { node, round } => {
                write!(f, "GatheredAt(node={node}, round={round})")
            }
            Outcome::CycleDetected { first_repeat_round } => {
                write!(f, "CycleDetected(first_repeat_round={first_repeat_round})")
            }
            Outcome::RoundLimit { bound } => write!(f, "RoundLimit({bound})"),
            Outcome::Stuck { round } => write!(f, "Stuck(round={round})"),
        }
    }
}

pub fn default_max_rounds(n: usize, k: usize) -> usize {
    4 * n * k + 20
}

/// One synchronous move: correct robots obey, crashed robots stay.
pub fn step(g: &GroundState, moves: &MoveSet) -> Result<GroundState> {
    let n = g.n();
    let mut next = g.clone();
    for (i, _) in moves.iter() {
        if i >= n || g.correct_at(i) + g.crashed_at(i) == 0 {
            return Err(Error::OrderOnEmptyNode(i));
        }
    }
    let correct = next.correct_mut();
    correct.iter_mut().for_each(|c| *c = 0);
    for i in 0..n {
        let to = shift(n, i, moves.get(i).offset());
        correct[to] += g.correct_at(i);
    }
    Ok(next)
}

/// The node hosting every robot, if there is one.
pub fn is_gathered(g: &GroundState) -> Option<usize> {
    let c = g.observe();
    if c.count() == 1 {
        c.nodes().next()
    } else {
        None
    }
}

fn check_legal_start(g: &GroundState, variant: AlgorithmVariant) -> Result<()> {
    let n = g.n();
    let c = g.observe();
    if !g.is_distinct() {
        return Err(Error::IllegalStart(format!(
            "{c}: robots must start on distinct nodes"
        )));
    }
    match variant {
        AlgorithmVariant::SuigRing => {
            if n.is_multiple_of(2) {
                return Err(Error::WrongParity { n, expected: "odd" });
            }
            if n < 5 {
                return Err(Error::RingTooSmall { n, min: 5 });
            }
            let class = crate::symmetry::classify(&c);
            if c.count() < 3 || class.ne_count().is_none() || is_periodic(&c) {
                return Err(Error::IllegalStart(format!(
                    "{c} is {class}; expected a non-periodic node-edge symmetric configuration with at least 3 robots"
                )));
            }
        }
        AlgorithmVariant::SuirShortestPath => {
            if n % 2 == 1 {
                return Err(Error::WrongParity {
                    n,
                    expected: "even",
                });
            }
            let v: Vec<usize> = c.nodes().collect();
            if v.len() != 2 || 2 * dist(n, v[0], v[1]) == n {
                return Err(Error::IllegalStart(format!(
                    "{c}: expected two non-antipodal robots"
                )));
            }
        }
    }
    Ok(())
}

/// Runs from a legal initial state.
pub fn run(
    g0: &GroundState,
    crash: CrashSchedule,
    variant: AlgorithmVariant,
    max_rounds: usize,
) -> Result<(Trace, Outcome)> {
    check_legal_start(g0, variant)?;
    run_with_cache(g0, crash, max_rounds, &mut DecisionCache::new(variant))
}

/// Runs from any state, sharing decisions through `cache`.
pub fn run_with_cache(
    g0: &GroundState,
    crash: CrashSchedule,
    max_rounds: usize,
    cache: &mut DecisionCache,
) -> Result<(Trace, Outcome)> {
    let mut g = g0.clone();
    let mut trace = Trace::default();
    let mut seen: HashMap<GroundState, usize> = HashMap::new();
    let mut t = 0;
    loop {
        let observed = g.observe();
        let d = cache.get(&observed)?;
        let pending = crash.filter(|c| c.round >= t);
        if let Some(c) = pending {
            let gathered_early = c.round > t && d.moves.is_empty() && observed.count() == 1;
            if c.round == t || gathered_early {
                // a gathered configuration never moves again, so a later
                // crash can be injected now
                g.crash_one(c.node)?;
            }
        }
        trace.entries.push(TraceEntry {
            round: t,
            ground: g.clone(),
            observed: observed.clone(),
            class: d.class,
            branch: d.branch,
            moves: d.moves.clone(),
            targets: d.targets.clone(),
        });
        if observed.count() == 1 && d.moves.is_empty() {
            let node = observed.nodes().next().unwrap();
            return Ok((trace, Outcome::GatheredAt { node, round: t }));
        }
        if d.moves.is_empty() {
            return Ok((trace, Outcome::Stuck { round: t }));
        }
        if t >= max_rounds {
            return Ok((trace, Outcome::RoundLimit { bound: max_rounds }));
        }
        let crash_pending = crash.is_some() && g.crash_node().is_none();
        if !crash_pending {
            if let Some(&first) = seen.get(&g) {
                return Ok((
                    trace,
                    Outcome::CycleDetected {
                        first_repeat_round: first,
                    },
                ));
            }
            seen.insert(g.clone(), t);
        }
        let moves = d.moves.clone();
        g = step(&g, &moves)?;
        t += 1;
    }
}
