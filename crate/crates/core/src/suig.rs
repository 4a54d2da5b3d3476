//! The compute phase: movement orders for the ring gathering algorithm (odd
//! rings) and for the two-robot shortest-path rule (even rings).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{dist, shift, Direction, MoveSet, ObservedConfig};
use crate::symmetry::{
    analyze, is_periodic, Analysis, ConfigClass, NeRoles, Orientation, QuasiAxis,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AlgorithmVariant {
    /// Odd rings, `k > 3`.
    SuigRing,
    /// Even rings, two robots.
    SuirShortestPath,
}

/// Which rule produced a move set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    Gathered,
    MoveLTwo,
    MoveSecondary,
    MoveMain,
    MoveMainAndSecondary,
    MoveSame,
    MoveOpposite,
    Stuck,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub analysis: Analysis,
    pub branch: Branch,
    pub moves: MoveSet,
}

impl Decision {
    pub fn class(&self) -> ConfigClass {
        self.analysis.class
    }
}

fn check_suig_input(c: &ObservedConfig) -> Result<()> {
    let n = c.n();
    if n.is_multiple_of(2) {
        return Err(Error::WrongParity { n, expected: "odd" });
    }
    if n < 5 {
        return Err(Error::RingTooSmall { n, min: 5 });
    }
    if c.count() == 0 {
        return Err(Error::EmptyConfiguration);
    }
    Ok(())
}

fn main_moves(n: usize, roles: &NeRoles) -> MoveSet {
    let (a, b) = roles.main;
    [a, b]
        .into_iter()
        .map(|i| (i, Direction::toward(n, i, roles.target)))
        .collect()
}

fn secondary_moves(c: &ObservedConfig, roles: &NeRoles) -> MoveSet {
    let n = c.n();
    let Some((a, b)) = roles.secondary else {
        return MoveSet::default();
    };
    [a, b]
        .into_iter()
        .map(|i| {
            let toward = Direction::toward(n, i, roles.target);
            if c.is_occupied(shift(n, i, toward.offset())) {
                (i, toward.reversed())
            } else {
                (i, toward)
            }
        })
        .collect()
}

/// Configuration after both main robots advance one step toward the target.
fn advance_mains(c: &ObservedConfig, roles: &NeRoles) -> ObservedConfig {
    c.apply_moves(&main_moves(c.n(), roles))
}

/// Whether advancing the main robots one step would make `c` periodic.
pub fn would_create_periodic(c: &ObservedConfig) -> Result<bool> {
    check_suig_input(c)?;
    let analysis = analyze(c);
    match (&analysis.roles, analysis.class.ne_count()) {
        (Some(roles), Some(_)) => Ok(is_periodic(&advance_mains(c, roles))),
        _ => Err(Error::NotSymmetric(c.to_string())),
    }
}

fn ne_decision(c: &ObservedConfig, analysis: &Analysis) -> (Branch, MoveSet) {
    let n = c.n();
    let Some(roles) = &analysis.roles else {
        return (Branch::Stuck, MoveSet::default());
    };
    let k = c.count();
    let small_exception = matches!(k, 4 | 5)
        && (n, k) != (7, 4)
        && !matches!(analysis.class, ConfigClass::L4 | ConfigClass::L5)
        && roles.main_distance == 1;
    if small_exception {
        return (Branch::MoveSecondary, secondary_moves(c, roles));
    }
    let mains = main_moves(n, roles);
    if !is_periodic(&c.apply_moves(&mains)) {
        return (Branch::MoveMain, mains);
    }
    let mut moves = secondary_moves(c, roles);
    for (i, d) in mains.iter() {
        moves.set(i, d);
    }
    (Branch::MoveMainAndSecondary, moves)
}

/// Robots whose crash during one round from some node-edge symmetric
/// configuration explains the quasi-axis `q` of `c`.
///
/// Each reading of the pair has one member that moved off the mirror image
/// of the other, which stayed put because it crashed.
pub fn crash_explanations(c: &ObservedConfig, q: &QuasiAxis) -> Vec<usize> {
    let n = c.n();
    let mut found = Vec::new();
    for (moved, crashed) in [(q.r, q.r_prime), (q.r_prime, q.r)] {
        let from = q.axis.mirror(n, crashed);
        if from == crashed || dist(n, from, moved) != 1 {
            continue;
        }
        // the mover may have landed on a node that was already occupied
        let vacated = c.nodes().filter(|&i| i != moved).chain([from]);
        let merged = c.nodes().chain([from]);
        for before in [
            ObservedConfig::new(n, vacated),
            ObservedConfig::new(n, merged),
        ] {
            let Ok(before) = before else { continue };
            if explains(&before, c, from, crashed) {
                found.push(crashed);
                break;
            }
        }
    }
    found.sort_unstable();
    found.dedup();
    found
}

fn explains(before: &ObservedConfig, after: &ObservedConfig, from: usize, crashed: usize) -> bool {
    let analysis = analyze(before);
    if analysis.class.ne_count().is_none() {
        return false;
    }
    let (_, moves) = ne_decision(before, &analysis);
    moves.get(from) != Direction::Stay
        && moves.get(crashed) != Direction::Stay
        && before.apply_moves_frozen(&moves, Some(crashed)) == *after
}

/// `L4'` is a block `b0 b1 b2`, a hole, then a single robot. It arises from
/// `L4` with the main robot `b1` crashed, or from a block of four whose end
/// `b0` crashed while the other end stepped out. Each candidate heads for its
/// own target (`b1` inward, `b0` outward) and the two certainly correct robots
/// close the hole, giving `L3` around `b1` or `L3'` isolating `b0`.
fn l4_prime_moves(c: &ObservedConfig) -> Option<MoveSet> {
    let n = c.n();
    for b0 in c.nodes() {
        for dir in [Direction::Pos, Direction::Neg] {
            let node = |o: isize| shift(n, b0, dir.offset() * o);
            if [0, 1, 2, 4].iter().all(|&o| c.is_occupied(node(o))) && !c.is_occupied(node(3)) {
                let back = dir.reversed();
                return Some(
                    [
                        (node(0), back),
                        (node(1), dir),
                        (node(2), dir),
                        (node(4), back),
                    ]
                    .into_iter()
                    .collect(),
                );
            }
        }
    }
    None
}

fn qne_decision(c: &ObservedConfig, analysis: &Analysis) -> (Branch, MoveSet) {
    let n = c.n();
    if analysis.class == ConfigClass::L4Prime {
        if let Some(moves) = l4_prime_moves(c) {
            return (Branch::MoveSame, moves);
        }
    }
    let explained: Vec<(&QuasiAxis, Vec<usize>)> = analysis
        .quasi
        .iter()
        .map(|q| (q, crash_explanations(c, q)))
        .filter(|(_, crashed)| !crashed.is_empty())
        .collect();
    let pos = explained
        .iter()
        .filter(|(q, _)| q.orientation == Orientation::Pos)
        .count();
    let neg = explained.len() - pos;
    if explained.is_empty() {
        return (Branch::Stuck, MoveSet::default());
    }
    if pos == 0 || neg == 0 {
        let dir = explained[0].0.orientation.opposite().direction();
        return (Branch::MoveSame, c.nodes().map(|i| (i, dir)).collect());
    }
    if (pos, neg) == (1, 1) {
        let mut moves = MoveSet::default();
        for (q, crashed) in &explained {
            for &i in crashed {
                let d = Direction::toward(n, i, q.target);
                if moves.get(i) != Direction::Stay && moves.get(i) != d {
                    // contradictory orders for the same robot: refuse to guess
                    return (Branch::Stuck, MoveSet::default());
                }
                moves.set(i, d);
            }
        }
        return (Branch::MoveOpposite, moves);
    }
    (Branch::Stuck, MoveSet::default())
}

/// Classify `c` and pick the branch and move set of the ring algorithm.
pub fn decide(c: &ObservedConfig) -> Result<Decision> {
    check_suig_input(c)?;
    let analysis = analyze(c);
    let n = c.n();
    let (branch, moves) = match analysis.class {
        ConfigClass::Gathered => (Branch::Gathered, MoveSet::default()),
        ConfigClass::L2 => {
            let v: Vec<usize> = c.nodes().collect();
            let moves = [
                (v[0], Direction::toward(n, v[0], v[1])),
                (v[1], Direction::toward(n, v[1], v[0])),
            ]
            .into_iter()
            .collect();
            (Branch::MoveLTwo, moves)
        }
        class if class.ne_count().is_some() => ne_decision(c, &analysis),
        class if class.qne_count().is_some() => qne_decision(c, &analysis),
        _ => (Branch::Stuck, MoveSet::default()),
    };
    let branch = if moves.is_empty() && branch != Branch::Gathered {
        Branch::Stuck
    } else {
        branch
    };
    Ok(Decision {
        analysis,
        branch,
        moves,
    })
}

pub fn compute_moves(c: &ObservedConfig) -> Result<MoveSet> {
    decide(c).map(|d| d.moves)
}

/// Two robots on an even ring walk toward each other along the shorter arc.
pub fn compute_suir_moves(c: &ObservedConfig) -> Result<MoveSet> {
    let n = c.n();
    if n % 2 == 1 {
        return Err(Error::WrongParity {
            n,
            expected: "even",
        });
    }
    let v: Vec<usize> = c.nodes().collect();
    match v.len() {
        0 => Err(Error::EmptyConfiguration),
        1 => Ok(MoveSet::default()),
        2 => {
            if 2 * dist(n, v[0], v[1]) == n {
                return Err(Error::Precondition {
                    what: "compute_suir_moves",
                    reason: format!("{c} has two arcs of equal length"),
                });
            }
            Ok([
                (v[0], Direction::toward(n, v[0], v[1])),
                (v[1], Direction::toward(n, v[1], v[0])),
            ]
            .into_iter()
            .collect())
        }
        k => Err(Error::Precondition {
            what: "compute_suir_moves",
            reason: format!("expected at most 2 occupied nodes, got {k}"),
        }),
    }
}

pub fn moves_for(c: &ObservedConfig, variant: AlgorithmVariant) -> Result<MoveSet> {
    match variant {
        AlgorithmVariant::SuigRing => compute_moves(c),
        AlgorithmVariant::SuirShortestPath => compute_suir_moves(c),
    }
}

/// The order received by the robots on node `i`.
pub fn decide_per_robot(
    c: &ObservedConfig,
    i: usize,
    variant: AlgorithmVariant,
) -> Result<Direction> {
    if i >= c.n() || !c.is_occupied(i) {
        return Err(Error::NotOccupied(i));
    }
    moves_for(c, variant).map(|m| m.get(i))
}
