//! Periodicity, reflection axes, quasi-node-edge symmetry and configuration
//! classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{arc_len, dist, shift, Direction, ObservedConfig, Symmetry};

/// Rotation amounts that map `c` onto itself. Always contains 0.
pub fn periods(c: &ObservedConfig) -> Vec<usize> {
    (0..c.n())
        .filter(|&x| x == 0 || c.transform(Symmetry::Rotate(x)) == *c)
        .collect()
}

/// Invariant under some non-trivial rotation.
pub fn is_periodic(c: &ObservedConfig) -> bool {
    let n = c.n();
    // the smallest period divides n, so proper divisors suffice
    (1..n)
        .filter(|x| n.is_multiple_of(*x))
        .any(|x| c.transform(Symmetry::Rotate(x)) == *c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisKind {
    NodeNode,
    NodeEdge,
    EdgeEdge,
}

/// Axis of the reflection `i ↦ (c − i) mod n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axis {
    pub c: usize,
    pub kind: AxisKind,
    pub fixed_nodes: Vec<usize>,
}

impl Axis {
    pub fn new(n: usize, c: usize) -> Axis {
        let c = c % n;
        let fixed_nodes: Vec<usize> = if n % 2 == 1 {
            vec![if c.is_multiple_of(2) {
                c / 2
            } else {
                (c + n) / 2
            }]
        } else if c.is_multiple_of(2) {
            vec![c / 2, c / 2 + n / 2]
        } else {
            vec![]
        };
        let kind = match fixed_nodes.len() {
            0 => AxisKind::EdgeEdge,
            1 => AxisKind::NodeEdge,
            _ => AxisKind::NodeNode,
        };
        Axis {
            c,
            kind,
            fixed_nodes,
        }
    }

    /// The node-edge axis whose only fixed node is `node` (odd rings).
    pub fn through_node(n: usize, node: usize) -> Axis {
        Axis::new(n, (2 * node) % n)
    }

    /// The single node on a node-edge axis.
    pub fn target(&self) -> Option<usize> {
        match self.kind {
            AxisKind::NodeEdge => Some(self.fixed_nodes[0]),
            _ => None,
        }
    }

    pub fn mirror(&self, n: usize, i: usize) -> usize {
        Symmetry::Reflect(self.c).map_node(n, i)
    }
}

/// Every reflection that maps `c` onto itself.
pub fn reflection_axes(c: &ObservedConfig) -> Vec<Axis> {
    (0..c.n())
        .filter(|&a| c.reflect(a) == *c)
        .map(|a| Axis::new(c.n(), a))
        .collect()
}

/// The node-edge axis of a non-periodic configuration on an odd ring, if any.
pub fn node_edge_axis(c: &ObservedConfig) -> Option<Axis> {
    if c.n().is_multiple_of(2) {
        return None;
    }
    let mut axes = reflection_axes(c);
    if axes.len() == 1 {
        axes.pop()
    } else {
        None
    }
}

/// Target, main and secondary robots of a node-edge symmetric configuration.
///
/// Pairs are `(target − d, target + d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeRoles {
    pub target: usize,
    pub main: (usize, usize),
    pub main_distance: usize,
    pub secondary: Option<(usize, usize)>,
    pub secondary_distance: Option<usize>,
}

pub fn ne_roles(c: &ObservedConfig, axis: &Axis) -> Result<NeRoles> {
    let n = c.n();
    let target = match axis.target() {
        Some(t) if c.reflect(axis.c) == *c => t,
        _ => return Err(Error::NotSymmetric(c.to_string())),
    };
    let off_target: Vec<usize> = c.nodes().filter(|&i| i != target).collect();
    let main_distance = off_target
        .iter()
        .map(|&i| dist(n, target, i))
        .min()
        .ok_or_else(|| Error::AllOnTarget(c.to_string()))?;
    let has_empty_neighbor =
        |i: usize| !c.is_occupied(shift(n, i, 1)) || !c.is_occupied(shift(n, i, -1));
    let secondary_distance = off_target
        .iter()
        .filter(|&&i| has_empty_neighbor(i))
        .map(|&i| dist(n, target, i))
        .max();
    let pair = |d: usize| {
        (
            shift(n, target, -(d as isize)),
            shift(n, target, d as isize),
        )
    };
    Ok(NeRoles {
        target,
        main: pair(main_distance),
        main_distance,
        secondary: secondary_distance.map(pair),
        secondary_distance,
    })
}

/// Orientation of a quasi-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Pos,
    Neg,
}

impl Orientation {
    pub fn direction(self) -> Direction {
        match self {
            Orientation::Pos => Direction::Pos,
            Orientation::Neg => Direction::Neg,
        }
    }

    pub fn opposite(self) -> Orientation {
        match self {
            Orientation::Pos => Orientation::Neg,
            Orientation::Neg => Orientation::Pos,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.direction().fmt(f)
    }
}

/// A `{r, r'}`-quasi-node-edge symmetry: moving `r` to the mirror image of
/// `r'` makes the configuration symmetric about `axis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiAxis {
    pub r: usize,
    pub r_prime: usize,
    pub axis: Axis,
    pub r_bar: usize,
    pub target: usize,
    pub gap_distance: usize,
    /// Direction in which the gap path is walked from the non-leading member.
    pub gap_direction: Direction,
    pub leading: usize,
    pub orientation: Orientation,
}

impl QuasiAxis {
    /// The member of `{r, r'}` that is not leading.
    pub fn trailing(&self) -> usize {
        if self.leading == self.r {
            self.r_prime
        } else {
            self.r
        }
    }

    /// Interior nodes of the gap path.
    pub fn gap_path_interior(&self, n: usize) -> Vec<usize> {
        let from = self.trailing();
        (1..self.gap_distance)
            .map(|s| shift(n, from, s as isize * self.gap_direction.offset()))
            .collect()
    }
}

/// `(c, r, r')` is a quasi-axis witness: `r̄` empty, `r̄'` empty (or equal to
/// `r'` when `on_axis` is set), `r'` adjacent to `r̄`, and `C ∖ {r} ∪ {r̄'}`
/// symmetric about the axis.
fn is_witness(
    cfg: &ObservedConfig,
    axis_c: usize,
    r: usize,
    r_prime: usize,
    on_axis: bool,
) -> bool {
    let n = cfg.n();
    let s = |i: usize| Symmetry::Reflect(axis_c).map_node(n, i);
    if r == r_prime || !cfg.is_occupied(r) || !cfg.is_occupied(r_prime) {
        return false;
    }
    let (r_bar, rp_bar) = (s(r), s(r_prime));
    // r' may sit on the axis itself (its own mirror); otherwise its mirror is empty
    let rp_bar_taken = cfg.is_occupied(rp_bar) && !(on_axis && rp_bar == r_prime);
    if cfg.is_occupied(r_bar) || rp_bar_taken || dist(n, r_prime, r_bar) != 1 {
        return false;
    }
    let completed = cfg.with_moved(r, rp_bar);
    completed.reflect(axis_c) == completed
}

fn annotate(cfg: &ObservedConfig, axis: Axis, r: usize, r_prime: usize) -> QuasiAxis {
    let n = cfg.n();
    let target = axis.target().expect("odd ring axes have one fixed node");
    let r_bar = axis.mirror(n, r);
    let interior = |dir: Direction, len: usize| -> Vec<usize> {
        (1..len)
            .map(|s| shift(n, r, s as isize * dir.offset()))
            .collect()
    };
    let pos_len = arc_len(n, r, r_prime, Direction::Pos);
    let (odd_dir, odd_len) = if pos_len % 2 == 1 {
        (Direction::Pos, pos_len)
    } else {
        (Direction::Neg, n - pos_len)
    };
    let odd_interior = interior(odd_dir, odd_len);
    let odd_is_clear = odd_interior
        .iter()
        .all(|&v| v == target || !cfg.is_occupied(v));
    let (path_dir, gap, path) = if odd_is_clear {
        (odd_dir, odd_len, odd_interior)
    } else {
        let even_dir = odd_dir.reversed();
        (even_dir, n - odd_len, interior(even_dir, n - odd_len))
    };
    let leading = if path.contains(&r_bar) { r } else { r_prime };
    let other = if leading == r { r_prime } else { r };
    let orientation = if shift(n, other, gap as isize) == leading {
        Orientation::Pos
    } else {
        Orientation::Neg
    };
    // the path above was walked from r; re-express it from the trailing robot
    let gap_direction = if other == r {
        path_dir
    } else {
        path_dir.reversed()
    };
    QuasiAxis {
        r,
        r_prime,
        axis,
        r_bar,
        target,
        gap_distance: gap,
        gap_direction,
        leading,
        orientation,
    }
}

/// All quasi-axes of `cfg` (odd rings only; empty otherwise), also admitting
/// an `r'` that is its own mirror image.
///
/// Each unordered pair `{r, r'}` on an axis is reported once; when both
/// orderings satisfy the definition, `r` is the leading robot.
pub fn quasi_axes(cfg: &ObservedConfig) -> Vec<QuasiAxis> {
    collect_quasi_axes(cfg, true)
}

/// Quasi-axes under the plain definition, where `r'` never sits on the axis.
/// This misses the crash of a main robot adjacent to the target.
pub fn strict_quasi_axes(cfg: &ObservedConfig) -> Vec<QuasiAxis> {
    collect_quasi_axes(cfg, false)
}

fn collect_quasi_axes(cfg: &ObservedConfig, on_axis: bool) -> Vec<QuasiAxis> {
    let n = cfg.n();
    if n.is_multiple_of(2) || cfg.count() < 2 {
        return Vec::new();
    }
    let mut found: BTreeMap<(usize, usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for c in 0..n {
        for r in cfg.nodes() {
            let r_bar = Symmetry::Reflect(c).map_node(n, r);
            if cfg.is_occupied(r_bar) {
                continue;
            }
            for r_prime in [shift(n, r_bar, -1), shift(n, r_bar, 1)] {
                if is_witness(cfg, c, r, r_prime, on_axis) {
                    let key = (c, r.min(r_prime), r.max(r_prime));
                    found.entry(key).or_default().push((r, r_prime));
                }
            }
        }
    }
    found
        .into_iter()
        .map(|((c, _, _), reps)| {
            let axis = Axis::new(n, c);
            let (r, rp) = reps[0];
            let q = annotate(cfg, axis.clone(), r, rp);
            if q.leading != q.r && reps.contains(&(rp, r)) {
                annotate(cfg, axis, rp, r)
            } else {
                q
            }
        })
        .collect()
}

/// Configuration classes used by the movement rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigClass {
    Gathered,
    L2,
    L3,
    /// `L3'`: two adjacent occupied nodes, an empty node, one occupied node.
    L3Prime,
    /// `L3''`: a block of three.
    L3Second,
    L4,
    /// `L4'`: a block of three, an empty node, one occupied node.
    L4Prime,
    L5,
    Ne(usize),
    /// `a` quasi-axes of one orientation, `b` of the other, `a ≥ b`.
    Qne {
        a: usize,
        b: usize,
        k: usize,
    },
    Periodic,
    Other,
}

impl ConfigClass {
    /// Node-edge symmetric with `k` occupied nodes (including the L-subclasses).
    pub fn ne_count(self) -> Option<usize> {
        match self {
            ConfigClass::Ne(k) => Some(k),
            ConfigClass::L5 => Some(5),
            ConfigClass::L4 => Some(4),
            ConfigClass::L3 | ConfigClass::L3Second => Some(3),
            _ => None,
        }
    }

    /// Quasi-node-edge symmetric with `k` occupied nodes (including `L4'`, `L3'`).
    pub fn qne_count(self) -> Option<usize> {
        match self {
            ConfigClass::Qne { k, .. } => Some(k),
            ConfigClass::L4Prime => Some(4),
            ConfigClass::L3Prime => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for ConfigClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigClass::Gathered => f.write_str("Gathered"),
            ConfigClass::L2 => f.write_str("L2"),
            ConfigClass::L3 => f.write_str("L3"),
            ConfigClass::L3Prime => f.write_str("L3'"),
            ConfigClass::L3Second => f.write_str("L3''"),
            ConfigClass::L4 => f.write_str("L4"),
            ConfigClass::L4Prime => f.write_str("L4'"),
            ConfigClass::L5 => f.write_str("L5"),
            ConfigClass::Ne(k) => write!(f, "NE({k})"),
            ConfigClass::Qne { a, b, k } => write!(f, "QNE({a},{b})({k})"),
            ConfigClass::Periodic => f.write_str("Periodic"),
            ConfigClass::Other => f.write_str("Other"),
        }
    }
}

impl FromStr for ConfigClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedLiteral(s.to_string());
        let simple = match s {
            "Gathered" => Some(ConfigClass::Gathered),
            "L2" => Some(ConfigClass::L2),
            "L3" => Some(ConfigClass::L3),
            "L3'" => Some(ConfigClass::L3Prime),
            "L3''" => Some(ConfigClass::L3Second),
            "L4" => Some(ConfigClass::L4),
            "L4'" => Some(ConfigClass::L4Prime),
            "L5" => Some(ConfigClass::L5),
            "Periodic" => Some(ConfigClass::Periodic),
            "Other" => Some(ConfigClass::Other),
            _ => None,
        };
        if let Some(c) = simple {
            return Ok(c);
        }
        if let Some(k) = s.strip_prefix("NE(").and_then(|r| r.strip_suffix(')')) {
            return k.parse().map(ConfigClass::Ne).map_err(|_| bad());
        }
        let rest = s.strip_prefix("QNE(").ok_or_else(bad)?;
        let (ab, k) = rest.split_once(")(").ok_or_else(bad)?;
        let (a, b) = ab.split_once(',').ok_or_else(bad)?;
        let k = k.strip_suffix(')').ok_or_else(bad)?;
        Ok(ConfigClass::Qne {
            a: a.parse().map_err(|_| bad())?,
            b: b.parse().map_err(|_| bad())?,
            k: k.parse().map_err(|_| bad())?,
        })
    }
}

/// Whether some rotation of `pattern` (read in either direction) lies on
/// the ring starting at some node, with every other node empty.
fn has_exact_pattern(c: &ObservedConfig, pattern: &[usize]) -> bool {
    let n = c.n();
    if c.count() != pattern.len() {
        return false;
    }
    c.nodes().any(|s| {
        [1isize, -1].iter().any(|&dir| {
            pattern
                .iter()
                .all(|&off| c.is_occupied(shift(n, s, dir * off as isize)))
        })
    })
}

/// Everything the movement rules need to know about one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub class: ConfigClass,
    /// The node-edge axis when the configuration is in `NE`.
    pub axis: Option<Axis>,
    pub roles: Option<NeRoles>,
    pub quasi: Vec<QuasiAxis>,
}

pub fn analyze(c: &ObservedConfig) -> Analysis {
    let plain = |class| Analysis {
        class,
        axis: None,
        roles: None,
        quasi: Vec::new(),
    };
    let k = c.count();
    let n = c.n();
    match k {
        0 => return plain(ConfigClass::Other),
        1 => return plain(ConfigClass::Gathered),
        2 => {
            let v: Vec<usize> = c.nodes().collect();
            if dist(n, v[0], v[1]) == 1 {
                return plain(ConfigClass::L2);
            }
        }
        _ => {}
    }
    if is_periodic(c) {
        return plain(ConfigClass::Periodic);
    }
    if n.is_multiple_of(2) {
        return plain(ConfigClass::Other);
    }
    if let Some(axis) = node_edge_axis(c) {
        let class = if has_exact_pattern(c, &[0, 1, 2, 3, 4]) {
            ConfigClass::L5
        } else if has_exact_pattern(c, &[0, 1, 3, 4]) {
            ConfigClass::L4
        } else if has_exact_pattern(c, &[0, 2, 4]) {
            ConfigClass::L3
        } else if has_exact_pattern(c, &[0, 1, 2]) {
            ConfigClass::L3Second
        } else {
            ConfigClass::Ne(k)
        };
        let roles = ne_roles(c, &axis).ok();
        return Analysis {
            class,
            axis: Some(axis),
            roles,
            quasi: Vec::new(),
        };
    }
    let quasi = quasi_axes(c);
    if quasi.is_empty() {
        return plain(ConfigClass::Other);
    }
    let class = if has_exact_pattern(c, &[0, 1, 2, 4]) {
        ConfigClass::L4Prime
    } else if has_exact_pattern(c, &[0, 1, 3]) {
        ConfigClass::L3Prime
    } else {
        let pos = quasi
            .iter()
            .filter(|q| q.orientation == Orientation::Pos)
            .count();
        let neg = quasi.len() - pos;
        ConfigClass::Qne {
            a: pos.max(neg),
            b: pos.min(neg),
            k,
        }
    };
    Analysis {
        class,
        axis: None,
        roles: None,
        quasi,
    }
}

pub fn classify(c: &ObservedConfig) -> ConfigClass {
    analyze(c).class
}

/// The two robots that can be the partner of a crashed main robot on
/// `crashed_candidate`: nearest occupied node in each direction when the
/// number of occupied nodes is even, second nearest when it is odd.
///
/// Returned as `(found walking POS, found walking NEG)`.
pub fn m_set(c: &ObservedConfig, crashed_candidate: usize) -> Result<(usize, usize)> {
    if node_edge_axis(c).is_none() {
        return Err(Error::NotSymmetric(c.to_string()));
    }
    if !c.is_occupied(crashed_candidate) || crashed_candidate >= c.n() {
        return Err(Error::NotOccupied(crashed_candidate));
    }
    let k = c.count();
    if k < 3 {
        return Err(Error::Precondition {
            what: "m_set",
            reason: format!("needs at least 3 occupied nodes, got {k}"),
        });
    }
    let rank = if k.is_multiple_of(2) { 1 } else { 2 };
    let n = c.n();
    let scan = |dir: isize| {
        (1..n)
            .map(|s| shift(n, crashed_candidate, dir * s as isize))
            .filter(|&i| c.is_occupied(i))
            .nth(rank - 1)
            .expect("k >= 3 leaves two other occupied nodes")
    };
    Ok((scan(1), scan(-1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, occ: &[usize]) -> ObservedConfig {
        ObservedConfig::new(n, occ.iter().copied()).unwrap()
    }

    fn worked() -> ObservedConfig {
        cfg(21, &[2, 6, 9, 10, 11, 12, 15, 19])
    }

    fn after_main_crash() -> ObservedConfig {
        cfg(21, &[1, 6, 9, 10, 11, 12, 15, 19])
    }

    #[test]
    fn periods_examples() {
        assert_eq!(periods(&cfg(9, &[0, 3, 6])), vec![0, 3, 6]);
        assert_eq!(periods(&cfg(9, &[0, 2, 7])), vec![0]);
        let c = cfg(15, &[0, 5, 10]);
        let brute: Vec<usize> = (0..15).filter(|&x| c.rotate(x as isize) == c).collect();
        assert_eq!(periods(&c), brute);
        assert_eq!(brute, vec![0, 5, 10]);
        assert!(is_periodic(&c));
        assert!(!is_periodic(&cfg(9, &[4])));
    }

    #[test]
    fn axes_examples() {
        let axes = reflection_axes(&worked());
        assert_eq!(axes.len(), 1);
        assert_eq!(axes[0].kind, AxisKind::NodeEdge);
        assert_eq!(axes[0].fixed_nodes, vec![0]);

        let brute = (0..9)
            .filter(|&c| cfg(9, &[0, 3, 6]).reflect(c) == cfg(9, &[0, 3, 6]))
            .count();
        assert_eq!(reflection_axes(&cfg(9, &[0, 3, 6])).len(), brute);
        assert_eq!(brute, 3);

        let axes = reflection_axes(&cfg(5, &[0, 1, 2]));
        assert_eq!(axes.len(), 1);
        assert_eq!(axes[0].target(), Some(1));
    }

    #[test]
    fn axis_fixed_nodes() {
        assert_eq!(Axis::new(9, 4).fixed_nodes, vec![2]);
        assert_eq!(Axis::new(9, 3).fixed_nodes, vec![6]);
        assert_eq!(Axis::new(8, 2).kind, AxisKind::NodeNode);
        assert_eq!(Axis::new(8, 2).fixed_nodes, vec![1, 5]);
        assert_eq!(Axis::new(8, 3).kind, AxisKind::EdgeEdge);
        for n in [5usize, 7, 9, 11] {
            for node in 0..n {
                assert_eq!(Axis::through_node(n, node).target(), Some(node));
            }
        }
    }

    #[test]
    fn roles_examples() {
        let r = ne_roles(&worked(), &Axis::new(21, 0)).unwrap();
        assert_eq!(r.target, 0);
        assert_eq!(r.main, (19, 2));
        assert_eq!(r.secondary, Some((12, 9)));

        let r = ne_roles(&cfg(9, &[0, 2, 7]), &Axis::new(9, 0)).unwrap();
        assert_eq!(r.target, 0);
        assert_eq!(r.main, (7, 2));
        assert_eq!(r.secondary, Some((7, 2)));

        // a layout on 33 nodes
        let offs = [2, 3, 4, 7, 8, 10, 12, 14, 15];
        let occ: Vec<usize> = offs.iter().flat_map(|&d| [d, 33 - d]).collect();
        let r = ne_roles(&cfg(33, &occ), &Axis::new(33, 0)).unwrap();
        assert_eq!(r.main, (31, 2));
        assert_eq!(r.secondary, Some((18, 15)));

        assert!(matches!(
            ne_roles(&after_main_crash(), &Axis::new(21, 0)),
            Err(Error::NotSymmetric(_))
        ));
        assert!(matches!(
            ne_roles(&cfg(9, &[0]), &Axis::new(9, 0)),
            Err(Error::AllOnTarget(_))
        ));
    }

    #[test]
    fn quasi_axis_after_main_crash() {
        let q = quasi_axes(&after_main_crash());
        assert_eq!(q.len(), 1, "{q:?}");
        let q = &q[0];
        assert_eq!((q.r, q.r_prime, q.r_bar, q.target), (1, 19, 20, 0));
        assert_eq!(q.axis.target(), Some(0));
        assert_eq!(q.gap_distance, 3);
        assert_eq!(q.leading, 1);
        assert_eq!(q.orientation, Orientation::Pos);
        assert_eq!(q.trailing(), 19);
        assert_eq!(q.gap_path_interior(21), vec![20, 0]);
    }

    #[test]
    fn symmetric_and_gathered_quasi_axes() {
        assert!(quasi_axes(&cfg(9, &[4])).is_empty());
        // quasi-axes of a symmetric configuration come in mirror pairs
        for c in [worked(), cfg(9, &[0, 2, 7]), cfg(11, &[0, 1, 3, 8, 10])] {
            let axis = node_edge_axis(&c).unwrap();
            let q = quasi_axes(&c);
            let mirrored: Vec<_> = quasi_axes(&c.reflect(axis.c));
            assert_eq!(q.len(), mirrored.len());
            assert_eq!(q.len() % 2, 0, "{c}: {q:?}");
        }
    }

    #[test]
    fn two_opposite_quasi_axes_on_25_nodes() {
        // robots at ±4, ±9, ±11, 1 and -2 on 25 nodes
        let c = cfg(25, &[1, 23, 4, 21, 9, 16, 11, 14]);
        let q = quasi_axes(&c);
        assert_eq!(q.len(), 2, "{q:?}");
        assert_ne!(q[0].orientation, q[1].orientation);
        assert_eq!(classify(&c), ConfigClass::Qne { a: 1, b: 1, k: 8 });
    }

    #[test]
    fn two_opposite_quasi_axes_on_31_nodes() {
        let c = cfg(31, &[30, 2, 14, 17, 5, 10, 26, 21]);
        let q = quasi_axes(&c);
        assert_eq!(q.len(), 2, "{q:?}");
        let trailing: Vec<usize> = q.iter().map(QuasiAxis::trailing).collect();
        assert!(trailing.contains(&2) && trailing.contains(&5));
        assert_eq!(classify(&c), ConfigClass::Qne { a: 1, b: 1, k: 8 });
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&worked()), ConfigClass::Ne(8));
        assert_eq!(classify(&cfg(9, &[0, 2, 7])), ConfigClass::L3);
        assert_eq!(classify(&cfg(9, &[0, 1])), ConfigClass::L2);
        assert_eq!(classify(&cfg(9, &[4])), ConfigClass::Gathered);
        assert_eq!(
            classify(&after_main_crash()),
            ConfigClass::Qne { a: 1, b: 0, k: 8 }
        );
        assert_eq!(classify(&cfg(9, &[0, 3, 6])), ConfigClass::Periodic);
        assert_eq!(classify(&cfg(7, &[1, 2, 3, 4, 5])), ConfigClass::L5);
        assert_eq!(classify(&cfg(9, &[7, 8, 1, 2])), ConfigClass::L4);
        assert_eq!(classify(&cfg(9, &[8, 0, 1])), ConfigClass::L3Second);
        assert_eq!(classify(&cfg(9, &[7, 8, 0, 2])), ConfigClass::L4Prime);
        assert_eq!(classify(&cfg(9, &[7, 0, 1])), ConfigClass::L3Prime);
    }

    #[test]
    fn class_tags_round_trip() {
        for tag in [
            "NE(8)",
            "QNE(1,1)(8)",
            "L3",
            "L4'",
            "L3''",
            "Gathered",
            "Periodic",
            "Other",
        ] {
            assert_eq!(tag.parse::<ConfigClass>().unwrap().to_string(), tag);
        }
        assert!("QNE(1,1)".parse::<ConfigClass>().is_err());
    }

    #[test]
    fn m_set_examples() {
        // nearest-occupied scan oracle
        let scan = |c: &ObservedConfig, from: usize, dir: isize, rank: usize| {
            (1..c.n())
                .map(|s| shift(c.n(), from, dir * s as isize))
                .filter(|&i| c.is_occupied(i))
                .nth(rank)
                .unwrap()
        };
        let c = worked();
        assert_eq!(
            m_set(&c, 19).unwrap(),
            (scan(&c, 19, 1, 0), scan(&c, 19, -1, 0))
        );
        assert_eq!(m_set(&c, 19).unwrap(), (2, 15));

        let c = cfg(9, &[0, 2, 7]);
        assert_eq!(
            m_set(&c, 2).unwrap(),
            (scan(&c, 2, 1, 1), scan(&c, 2, -1, 1))
        );
        assert_eq!(m_set(&c, 2).unwrap(), (0, 7));

        assert!(m_set(&cfg(9, &[0, 3]), 0).is_err());
        assert!(m_set(&after_main_crash(), 1).is_err());
    }
}
