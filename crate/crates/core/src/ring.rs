//! Ring geometry and configuration representation.
//!
//! Nodes are indexed `0..n` and node `i` is adjacent to `i-1` and `i+1`
//! (mod `n`). Robots never see these indices; they are a global frame used by
//! the simulator. Every decision rule built on top of this module must commute
//! with the dihedral group acting on the indices (see [`Symmetry`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest ring on which the geometric operations are defined.
pub const MIN_RING: usize = 3;

/// `i + x (mod n)` for a signed offset.
pub fn shift(n: usize, i: usize, x: isize) -> usize {
    (i as isize + x).rem_euclid(n as isize) as usize
}

/// Number of edges on a shortest path between `i` and `j`.
pub fn dist(n: usize, i: usize, j: usize) -> usize {
    let d = (j + n - i) % n;
    d.min(n - d)
}

/// Length of the arc walked from `from` to `to` in direction `dir`.
pub fn arc_len(n: usize, from: usize, to: usize, dir: Direction) -> usize {
    match dir {
        Direction::Pos => (to + n - from) % n,
        Direction::Neg => (from + n - to) % n,
        Direction::Stay => 0,
    }
}

/// Movement order of one occupied node: index-increasing, index-decreasing, or none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    Pos,
    Neg,
    Stay,
}

impl Direction {
    pub fn offset(self) -> isize {
        match self {
            Direction::Pos => 1,
            Direction::Neg => -1,
            Direction::Stay => 0,
        }
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::Pos => Direction::Neg,
            Direction::Neg => Direction::Pos,
            Direction::Stay => Direction::Stay,
        }
    }

    /// The direction of the first step of a shortest path from `from` to `to`.
    /// Ties (antipodal nodes on an even ring) and `from == to` give `Stay`.
    pub fn toward(n: usize, from: usize, to: usize) -> Direction {
        let pos = arc_len(n, from, to, Direction::Pos);
        let neg = n - pos;
        if pos == 0 || pos == neg {
            Direction::Stay
        } else if pos < neg {
            Direction::Pos
        } else {
            Direction::Neg
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Pos => "POS",
            Direction::Neg => "NEG",
            Direction::Stay => "STAY",
        })
    }
}

/// An element of the dihedral group `D_n` acting on node indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `i ↦ i + x`
    Rotate(usize),
    /// `i ↦ c − i`
    Reflect(usize),
}

impl Symmetry {
    /// All `2n` elements of `D_n`.
    pub fn all(n: usize) -> impl Iterator<Item = Symmetry> {
        (0..n)
            .map(Symmetry::Rotate)
            .chain((0..n).map(Symmetry::Reflect))
    }

    pub fn map_node(self, n: usize, i: usize) -> usize {
        match self {
            Symmetry::Rotate(x) => (i + x) % n,
            Symmetry::Reflect(c) => (c % n + n - i % n) % n,
        }
    }

    pub fn map_direction(self, d: Direction) -> Direction {
        match self {
            Symmetry::Rotate(_) => d,
            Symmetry::Reflect(_) => d.reversed(),
        }
    }
}

/// The binary occupancy view of the ring: which nodes host at least one robot.
///
/// Robots have no multiplicity detection, so this is all they ever sense.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObservedConfig {
    n: usize,
    occupied: BTreeSet<usize>,
}

impl ObservedConfig {
    pub fn new(n: usize, occupied: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < MIN_RING {
            return Err(Error::RingTooSmall { n, min: MIN_RING });
        }
        let occupied: BTreeSet<usize> = occupied.into_iter().collect();
        if let Some(&node) = occupied.iter().find(|&&i| i >= n) {
            return Err(Error::NodeOutOfRange { node, n });
        }
        Ok(ObservedConfig { n, occupied })
    }

    /// Parses a `0|1` string of length `n`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let mut occ = Vec::new();
        for (i, ch) in bits.chars().enumerate() {
            match ch {
                '1' => occ.push(i),
                '0' => {}
                _ => return Err(Error::MalformedLiteral(bits.to_string())),
            }
        }
        ObservedConfig::new(bits.chars().count(), occ)
    }

    pub(crate) fn from_set_unchecked(n: usize, occupied: BTreeSet<usize>) -> Self {
        debug_assert!(occupied.iter().all(|&i| i < n));
        ObservedConfig { n, occupied }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn occupied(&self) -> &BTreeSet<usize> {
        &self.occupied
    }

    /// Number of occupied nodes.
    pub fn count(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_occupied(&self, i: usize) -> bool {
        self.occupied.contains(&(i % self.n))
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.occupied.iter().copied()
    }

    pub fn to_bits(&self) -> String {
        (0..self.n)
            .map(|i| if self.is_occupied(i) { '1' } else { '0' })
            .collect()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.is_occupied(i)).collect()
    }

    pub fn transform(&self, g: Symmetry) -> ObservedConfig {
        let occupied = self
            .occupied
            .iter()
            .map(|&i| g.map_node(self.n, i))
            .collect();
        ObservedConfig {
            n: self.n,
            occupied,
        }
    }

    /// Rotation by `x` (taken mod `n`).
    pub fn rotate(&self, x: isize) -> ObservedConfig {
        self.transform(Symmetry::Rotate(shift(self.n, 0, x)))
    }

    /// Reflection `i ↦ (c − i) mod n`.
    pub fn reflect(&self, c: usize) -> ObservedConfig {
        self.transform(Symmetry::Reflect(c % self.n))
    }

    /// The same set with `from` removed and `to` added.
    pub fn with_moved(&self, from: usize, to: usize) -> ObservedConfig {
        let mut occupied = self.occupied.clone();
        occupied.remove(&from);
        occupied.insert(to % self.n);
        ObservedConfig {
            n: self.n,
            occupied,
        }
    }

    /// Occupancy after every robot obeys `moves` (nobody crashed).
    pub fn apply_moves(&self, moves: &MoveSet) -> ObservedConfig {
        self.apply_moves_frozen(moves, None)
    }

    /// Occupancy after `moves`, with every robot on node `frozen` staying put.
    pub fn apply_moves_frozen(&self, moves: &MoveSet, frozen: Option<usize>) -> ObservedConfig {
        let occupied = self
            .occupied
            .iter()
            .map(|&i| {
                if frozen == Some(i) {
                    i
                } else {
                    shift(self.n, i, moves.get(i).offset())
                }
            })
            .collect();
        ObservedConfig {
            n: self.n,
            occupied,
        }
    }

    /// Maximal circular runs of occupied (blocks) and empty (holes) nodes,
    /// sorted by start index.
    pub fn blocks_and_holes(&self) -> Vec<Run> {
        let n = self.n;
        if self.occupied.is_empty() || self.count() == n {
            let kind = if self.occupied.is_empty() {
                RunKind::Hole
            } else {
                RunKind::Block
            };
            return vec![Run {
                kind,
                start: 0,
                len: n,
            }];
        }
        // start at the first node whose predecessor differs from it
        let start = (0..n)
            .find(|&i| self.is_occupied(i) != self.is_occupied(shift(n, i, -1)))
            .expect("mixed configuration has a boundary");
        let mut runs = Vec::new();
        let mut i = start;
        let mut walked = 0;
        while walked < n {
            let occ = self.is_occupied(i);
            let mut len = 0;
            while walked < n && self.is_occupied(i) == occ {
                len += 1;
                walked += 1;
                i = (i + 1) % n;
            }
            let run_start = shift(n, i, -(len as isize));
            let kind = if occ { RunKind::Block } else { RunKind::Hole };
            runs.push(Run {
                kind,
                start: run_start,
                len,
            });
        }
        runs.sort_by_key(|r| r.start);
        runs
    }

    /// The view of the robot(s) at `i`: both reading directions as bit strings,
    /// lexicographically ordered.
    pub fn robot_view(&self, i: usize) -> Result<(String, String)> {
        if !self.is_occupied(i) || i >= self.n {
            return Err(Error::NotOccupied(i));
        }
        let read = |dir: isize| -> String {
            (0..self.n)
                .map(|j| {
                    if self.is_occupied(shift(self.n, i, dir * j as isize)) {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect()
        };
        let (plus, minus) = (read(1), read(-1));
        Ok(if plus <= minus {
            (plus, minus)
        } else {
            (minus, plus)
        })
    }

    /// Orbit representative: the image with the smallest bit string among all
    /// `2n` dihedral images.
    pub fn canonical_form(&self) -> ObservedConfig {
        Symmetry::all(self.n)
            .map(|g| self.transform(g))
            .min_by(|a, b| a.to_bools().cmp(&b.to_bools()))
            .expect("D_n is non-empty")
    }
}

impl fmt::Display for ObservedConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};occ=", self.n)?;
        let mut first = true;
        for i in &self.occupied {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for ObservedConfig {
    type Err = Error;

    /// Accepts `n=<int>;occ=<i,j,...>` (strictly increasing, no whitespace)
    /// or a raw `0|1` string.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedLiteral(s.to_string());
        if !s.is_empty() && s.chars().all(|c| c == '0' || c == '1') {
            return ObservedConfig::from_bits(s);
        }
        let (n_part, occ_part) = s.split_once(';').ok_or_else(bad)?;
        let n: usize = n_part
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)?;
        let occ_list = occ_part.strip_prefix("occ=").ok_or_else(bad)?;
        let mut occ = Vec::new();
        if !occ_list.is_empty() {
            for tok in occ_list.split(',') {
                let i: usize = tok.parse().map_err(|_| bad())?;
                if occ.last().is_some_and(|&prev| prev >= i) {
                    return Err(bad());
                }
                occ.push(i);
            }
        }
        ObservedConfig::new(n, occ)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunKind {
    Block,
    Hole,
}

/// A maximal run of equal node states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub kind: RunKind,
    pub start: usize,
    pub len: usize,
}

/// Per-node movement orders from one COMPUTE phase. Absent nodes stay.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveSet {
    orders: BTreeMap<usize, Direction>,
}

impl MoveSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records an order; `Stay` clears any previous order.
    pub fn set(&mut self, node: usize, dir: Direction) {
        if dir == Direction::Stay {
            self.orders.remove(&node);
        } else {
            self.orders.insert(node, dir);
        }
    }

    pub fn get(&self, node: usize) -> Direction {
        self.orders.get(&node).copied().unwrap_or(Direction::Stay)
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &BTreeMap<usize, Direction> {
        &self.orders
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Direction)> + '_ {
        self.orders.iter().map(|(&k, &v)| (k, v))
    }

    pub fn transform(&self, n: usize, g: Symmetry) -> MoveSet {
        let orders = self
            .orders
            .iter()
            .map(|(&i, &d)| (g.map_node(n, i), g.map_direction(d)))
            .collect();
        MoveSet { orders }
    }
}

impl FromIterator<(usize, Direction)> for MoveSet {
    fn from_iter<T: IntoIterator<Item = (usize, Direction)>>(iter: T) -> Self {
        let mut m = MoveSet::new();
        for (i, d) in iter {
            m.set(i, d);
        }
        m
    }
}

/// Simulator truth: how many correct and crashed robots sit on each node.
///
/// All crashed robots share one node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundState {
    n: usize,
    correct: Vec<u32>,
    crashed: Option<(usize, u32)>,
}

impl GroundState {
    pub fn new(n: usize, correct: Vec<u32>, crashed: Option<(usize, u32)>) -> Result<Self> {
        if n < MIN_RING {
            return Err(Error::RingTooSmall { n, min: MIN_RING });
        }
        if correct.len() != n {
            return Err(Error::Precondition {
                what: "ground state",
                reason: format!("expected {n} node counts, got {}", correct.len()),
            });
        }
        if let Some((node, _)) = crashed {
            if node >= n {
                return Err(Error::NodeOutOfRange { node, n });
            }
        }
        let crashed = crashed.filter(|&(_, c)| c > 0);
        let g = GroundState {
            n,
            correct,
            crashed,
        };
        if g.total() == 0 {
            return Err(Error::EmptyConfiguration);
        }
        Ok(g)
    }

    /// One correct robot on every occupied node of `c`.
    pub fn distinct(c: &ObservedConfig) -> Result<Self> {
        let mut correct = vec![0; c.n()];
        for i in c.nodes() {
            correct[i] = 1;
        }
        GroundState::new(c.n(), correct, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn correct_at(&self, i: usize) -> u32 {
        self.correct[i]
    }

    pub fn crashed_at(&self, i: usize) -> u32 {
        match self.crashed {
            Some((node, c)) if node == i => c,
            _ => 0,
        }
    }

    pub fn crash_node(&self) -> Option<usize> {
        self.crashed.map(|(node, _)| node)
    }

    pub fn total(&self) -> u32 {
        self.correct.iter().sum::<u32>() + self.crashed.map_or(0, |(_, c)| c)
    }

    /// What the robots see.
    pub fn observe(&self) -> ObservedConfig {
        let occupied = (0..self.n)
            .filter(|&i| self.correct[i] + self.crashed_at(i) > 0)
            .collect();
        ObservedConfig::from_set_unchecked(self.n, occupied)
    }

    /// Whether every node hosts at most one robot and nobody crashed.
    pub fn is_distinct(&self) -> bool {
        self.crashed.is_none() && self.correct.iter().all(|&c| c <= 1)
    }

    /// Turns one correct robot at `node` into a crashed one.
    pub fn crash_one(&mut self, node: usize) -> Result<()> {
        if node >= self.n {
            return Err(Error::NodeOutOfRange { node, n: self.n });
        }
        if self.correct[node] == 0 {
            return Err(Error::NotOccupied(node));
        }
        match self.crashed {
            Some((other, _)) if other != node => Err(Error::Precondition {
                what: "crash injection",
                reason: format!("crashed robots already sit on node {other}"),
            }),
            Some((_, c)) => {
                self.correct[node] -= 1;
                self.crashed = Some((node, c + 1));
                Ok(())
            }
            None => {
                self.correct[node] -= 1;
                self.crashed = Some((node, 1));
                Ok(())
            }
        }
    }

    pub(crate) fn correct_mut(&mut self) -> &mut Vec<u32> {
        &mut self.correct
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, occ: &[usize]) -> ObservedConfig {
        ObservedConfig::new(n, occ.iter().copied()).unwrap()
    }

    #[test]
    fn rotate_examples() {
        let c = cfg(21, &[2, 6, 9, 10, 11, 12, 15, 19]);
        assert_eq!(c.rotate(0), c);
        assert_eq!(cfg(5, &[0, 2]).rotate(3), cfg(5, &[3, 0]));
        // modular-arithmetic oracle
        let expected: Vec<usize> = [1, 6, 9, 10, 11, 12, 15, 19]
            .iter()
            .map(|&i| (i + 21 - 1) % 21)
            .collect();
        assert_eq!(
            cfg(21, &[1, 6, 9, 10, 11, 12, 15, 19]).rotate(-1),
            cfg(21, &expected)
        );
        assert_eq!(
            expected.iter().copied().collect::<BTreeSet<_>>(),
            BTreeSet::from([0, 5, 8, 9, 10, 11, 14, 18])
        );
    }

    #[test]
    fn reflect_examples() {
        let c = cfg(21, &[2, 6, 9, 10, 11, 12, 15, 19]);
        assert_eq!(c.reflect(0), c);
        assert_eq!(cfg(5, &[1]).reflect(2), cfg(5, &[1]));
        assert_eq!(cfg(9, &[0, 2, 7]).reflect(0), cfg(9, &[0, 2, 7]));
        let d = cfg(11, &[1, 3, 4]);
        for c in 0..11 {
            assert_eq!(d.reflect(c).reflect(c), d);
        }
    }

    #[test]
    fn runs_examples() {
        let runs = cfg(9, &[0, 2, 7]).blocks_and_holes();
        let blocks: Vec<_> = runs
            .iter()
            .filter(|r| r.kind == RunKind::Block)
            .map(|r| (r.start, r.len))
            .collect();
        let holes: Vec<_> = runs
            .iter()
            .filter(|r| r.kind == RunKind::Hole)
            .map(|r| (r.start, r.len))
            .collect();
        assert_eq!(blocks, vec![(0, 1), (2, 1), (7, 1)]);
        assert_eq!(holes, vec![(1, 1), (3, 4), (8, 1)]);

        let runs = cfg(7, &[1, 2, 3, 4, 5]).blocks_and_holes();
        assert_eq!(
            runs,
            vec![
                Run {
                    kind: RunKind::Block,
                    start: 1,
                    len: 5
                },
                Run {
                    kind: RunKind::Hole,
                    start: 6,
                    len: 2
                },
            ]
        );

        let runs = cfg(21, &[9, 10, 11, 12]).blocks_and_holes();
        assert_eq!(
            runs,
            vec![
                Run {
                    kind: RunKind::Block,
                    start: 9,
                    len: 4
                },
                Run {
                    kind: RunKind::Hole,
                    start: 13,
                    len: 17
                },
            ]
        );

        assert_eq!(
            cfg(5, &[]).blocks_and_holes(),
            vec![Run {
                kind: RunKind::Hole,
                start: 0,
                len: 5
            }]
        );
        assert_eq!(
            cfg(3, &[0, 1, 2]).blocks_and_holes(),
            vec![Run {
                kind: RunKind::Block,
                start: 0,
                len: 3
            }]
        );
    }

    #[test]
    fn runs_wrapping_block() {
        let runs = cfg(8, &[7, 0, 1, 4]).blocks_and_holes();
        assert_eq!(
            runs,
            vec![
                Run {
                    kind: RunKind::Hole,
                    start: 2,
                    len: 2
                },
                Run {
                    kind: RunKind::Block,
                    start: 4,
                    len: 1
                },
                Run {
                    kind: RunKind::Hole,
                    start: 5,
                    len: 2
                },
                Run {
                    kind: RunKind::Block,
                    start: 7,
                    len: 3
                },
            ]
        );
    }

    #[test]
    fn view_examples() {
        assert_eq!(
            cfg(5, &[0]).robot_view(0).unwrap(),
            ("10000".into(), "10000".into())
        );
        assert_eq!(
            cfg(5, &[0, 1]).robot_view(0).unwrap(),
            ("10001".into(), "11000".into())
        );
        let (a, b) = cfg(9, &[0, 2, 7]).robot_view(0).unwrap();
        assert_eq!(a, b);
        assert_eq!(cfg(9, &[0, 2, 7]).robot_view(1), Err(Error::NotOccupied(1)));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            cfg(5, &[3, 0]).canonical_form(),
            cfg(5, &[0, 2]).canonical_form()
        );
        let c = cfg(9, &[0, 2, 7]);
        assert_eq!(c.canonical_form(), c.reflect(4).canonical_form());
    }

    #[test]
    fn literal_parsing() {
        let c: ObservedConfig = "n=21;occ=2,6,9,10,11,12,15,19".parse().unwrap();
        assert_eq!(c, cfg(21, &[2, 6, 9, 10, 11, 12, 15, 19]));
        assert_eq!(c.to_string(), "n=21;occ=2,6,9,10,11,12,15,19");
        assert_eq!(
            "101000000".parse::<ObservedConfig>().unwrap(),
            cfg(9, &[0, 2])
        );
        assert_eq!("n=5;occ=".parse::<ObservedConfig>().unwrap(), cfg(5, &[]));
        for bad in [
            "n=5;occ=2,1",
            "n=5;occ=1,1",
            "n=5; occ=1",
            "n=5;occ=5",
            "n=x;occ=1",
            "occ=1",
            "10201",
        ] {
            assert!(bad.parse::<ObservedConfig>().is_err(), "{bad}");
        }
    }

    #[test]
    fn toward_and_dist() {
        assert_eq!(Direction::toward(21, 2, 0), Direction::Neg);
        assert_eq!(Direction::toward(21, 19, 0), Direction::Pos);
        assert_eq!(Direction::toward(8, 0, 4), Direction::Stay);
        assert_eq!(dist(9, 1, 8), 2);
    }

    #[test]
    fn ground_state_crash() {
        let mut g = GroundState::distinct(&cfg(9, &[0, 2, 7])).unwrap();
        assert!(g.is_distinct());
        g.crash_one(2).unwrap();
        assert_eq!(g.crash_node(), Some(2));
        assert_eq!(g.total(), 3);
        assert_eq!(g.observe(), cfg(9, &[0, 2, 7]));
        assert!(g.crash_one(0).is_err());
        assert_eq!(g.crash_one(3), Err(Error::NotOccupied(3)));
    }

    #[test]
    fn frozen_node_stays_occupied() {
        let c = cfg(9, &[0, 2, 7]);
        let m: MoveSet = [(2, Direction::Neg), (7, Direction::Pos)]
            .into_iter()
            .collect();
        assert_eq!(c.apply_moves(&m), cfg(9, &[0, 1, 8]));
        assert_eq!(c.apply_moves_frozen(&m, Some(2)), cfg(9, &[0, 2, 8]));
    }
}
