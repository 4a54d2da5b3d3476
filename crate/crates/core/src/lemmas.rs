//! Brute-force checkable geometric properties of ring configurations.
//!
//! Each check returns `None` when the property holds for the given input and
//! a human-readable counterexample otherwise.

use crate::ring::{shift, ObservedConfig};
use crate::suig::{decide, Branch};
use crate::symmetry::{
    analyze, is_periodic, ne_roles, node_edge_axis, reflection_axes, strict_quasi_axes,
    Orientation, QuasiAxis,
};

/// Every subset of an `n`-node ring, as configurations.
pub fn all_configs(n: usize) -> impl Iterator<Item = ObservedConfig> {
    assert!(n < usize::BITS as usize);
    (0u64..1 << n).map(move |mask| {
        ObservedConfig::new(n, (0..n).filter(|i| mask >> i & 1 == 1)).expect("indices in range")
    })
}

/// Two periodic configurations with equal counts that agree on more than
/// `n/3` consecutive nodes are equal.
pub fn periodic_determination(a: &ObservedConfig, b: &ObservedConfig) -> Option<String> {
    let n = a.n();
    if a == b || a.count() != b.count() || !is_periodic(a) || !is_periodic(b) {
        return None;
    }
    let window = n / 3 + 1;
    let agrees_from = |s: usize| {
        (0..window).all(|o| {
            let i = shift(n, s, o as isize);
            a.is_occupied(i) == b.is_occupied(i)
        })
    };
    (0..n)
        .find(|&s| agrees_from(s))
        .map(|s| format!("{a} and {b} agree on {window} nodes from {s} but differ"))
}

/// Exhaustive scan of [`periodic_determination`] over all periodic pairs.
pub fn scan_periodic_determination(n: usize) -> (usize, Vec<String>) {
    let periodic: Vec<ObservedConfig> = all_configs(n).filter(is_periodic).collect();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for a in &periodic {
        for b in &periodic {
            if a.count() == b.count() && a != b {
                pairs += 1;
                bad.extend(periodic_determination(a, b));
            }
        }
    }
    (pairs, bad)
}

/// On odd rings: if `c` has two reflection axes, the axis bisecting them is
/// an axis too.
pub fn bisector_axis(c: &ObservedConfig) -> Option<String> {
    let n = c.n();
    if n.is_multiple_of(2) {
        return None;
    }
    let axes: Vec<usize> = reflection_axes(c).iter().map(|a| a.c).collect();
    // 2 is invertible modulo odd n
    let half = n.div_ceil(2);
    for &c1 in &axes {
        for &c2 in &axes {
            if c1 < c2 {
                let b = (c1 + c2) * half % n;
                if !axes.contains(&b) {
                    return Some(format!(
                        "{c}: axes {c1} and {c2} but bisector {b} is not an axis"
                    ));
                }
            }
        }
    }
    None
}

/// Moving `r` to one of its neighbours yields a periodic configuration.
pub fn is_quasi_periodic_at(c: &ObservedConfig, r: usize) -> bool {
    let n = c.n();
    [1isize, -1].iter().any(|&d| {
        let to = shift(n, r, d);
        !c.is_occupied(to) && is_periodic(&c.with_moved(r, to))
    })
}

/// A configuration with more than 3 occupied nodes, an even-gap quasi-axis
/// and quasi-periodic at that axis's `r` has no other quasi-axis.
pub fn even_gap_uniqueness(c: &ObservedConfig) -> Option<String> {
    if c.count() <= 3 {
        return None;
    }
    let quasi = strict_quasi_axes(c);
    let witness = quasi
        .iter()
        .find(|q| q.gap_distance % 2 == 0 && is_quasi_periodic_at(c, q.r))?;
    if quasi.len() == 1 {
        None
    } else {
        Some(format!(
            "{c}: even-gap quasi-axis {{{},{}}} at target {} plus {} other quasi-axes",
            witness.r,
            witness.r_prime,
            witness.target,
            quasi.len() - 1
        ))
    }
}

/// Whether the even-gap uniqueness premise holds for `c`.
pub fn even_gap_premise(c: &ObservedConfig) -> bool {
    c.count() > 3
        && strict_quasi_axes(c)
            .iter()
            .any(|q| q.gap_distance % 2 == 0 && is_quasi_periodic_at(c, q.r))
}

/// Quasi-symmetric, not symmetric, not periodic, more than 3 occupied nodes
/// and only odd gap distances.
pub fn orientation_premise(c: &ObservedConfig, quasi: &[QuasiAxis]) -> bool {
    c.n() % 2 == 1
        && c.count() > 3
        && !quasi.is_empty()
        && quasi.iter().all(|q| q.gap_distance % 2 == 1)
        && reflection_axes(c).is_empty()
        && !is_periodic(c)
}

/// Under [`orientation_premise`], quasi-axes all share one orientation or
/// there are exactly two with opposite orientations.
pub fn orientation_count(c: &ObservedConfig) -> Option<String> {
    let quasi = strict_quasi_axes(c);
    if !orientation_premise(c, &quasi) {
        return None;
    }
    let pos = quasi
        .iter()
        .filter(|q| q.orientation == Orientation::Pos)
        .count();
    let neg = quasi.len() - pos;
    if pos == 0 || neg == 0 || (pos, neg) == (1, 1) {
        None
    } else {
        Some(format!("{c}: {pos} POS and {neg} NEG quasi-axes"))
    }
}

/// When the rule for two opposite quasi-axes fires, freezing either ordered
/// robot (each is a crash candidate) and applying the orders gives a
/// non-periodic node-edge symmetric configuration whose main robots do not
/// include the frozen one.
pub fn move_opposite_soundness(c: &ObservedConfig) -> Option<String> {
    let d = decide(c).ok()?;
    if d.branch != Branch::MoveOpposite {
        return None;
    }
    for frozen in d.moves.orders().keys().copied() {
        let next = c.apply_moves_frozen(&d.moves, Some(frozen));
        let Some(axis) = node_edge_axis(&next).filter(|_| !is_periodic(&next)) else {
            return Some(format!("{c}: freezing {frozen} gives non-symmetric {next}"));
        };
        match ne_roles(&next, &axis) {
            Ok(roles) if roles.main.0 == frozen || roles.main.1 == frozen => {
                return Some(format!(
                    "{c}: freezing {frozen} leaves it a main robot of {next}"
                ));
            }
            Ok(_) => {}
            Err(e) => return Some(format!("{c}: freezing {frozen}: {e}")),
        }
    }
    None
}

/// Numbers of POS- and NEG-oriented quasi-axes.
pub fn orientation_counts(c: &ObservedConfig) -> (usize, usize) {
    let q = analyze(c).quasi;
    let pos = q
        .iter()
        .filter(|q| q.orientation == Orientation::Pos)
        .count();
    (pos, q.len() - pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, occ: &[usize]) -> ObservedConfig {
        ObservedConfig::new(n, occ.iter().copied()).unwrap()
    }

    #[test]
    fn all_configs_counts() {
        assert_eq!(all_configs(5).count(), 32);
        assert_eq!(all_configs(7).filter(|c| c.count() == 3).count(), 35);
    }

    #[test]
    fn periodic_determination_small() {
        let (pairs, bad) = scan_periodic_determination(9);
        assert!(pairs > 0);
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn bisector_examples() {
        assert_eq!(bisector_axis(&cfg(9, &[0, 3, 6])), None);
        assert_eq!(bisector_axis(&cfg(9, &[0, 2, 7])), None);
        for c in all_configs(9) {
            assert_eq!(bisector_axis(&c), None, "{c}");
        }
    }

    #[test]
    fn orientation_count_two_opposite() {
        let c = cfg(25, &[1, 23, 4, 21, 9, 16, 11, 14]);
        assert!(orientation_premise(&c, &strict_quasi_axes(&c)));
        assert_eq!(orientation_count(&c), None);
        assert_eq!(orientation_counts(&c), (1, 1));
    }

    #[test]
    fn move_opposite_sound_on_31_nodes() {
        let c = cfg(31, &[30, 2, 14, 17, 5, 10, 26, 21]);
        assert_eq!(move_opposite_soundness(&c), None);
    }

    #[test]
    fn quasi_periodic_detection() {
        // moving 1 to 0 gives {0,3,6}
        assert!(is_quasi_periodic_at(&cfg(9, &[1, 3, 6]), 1));
        assert!(!is_quasi_periodic_at(&cfg(9, &[0, 2, 7]), 2));
    }
}
