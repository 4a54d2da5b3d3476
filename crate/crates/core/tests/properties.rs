use proptest::prelude::*;
use suig::ring::{GroundState, ObservedConfig, Symmetry};
use suig::sim::{default_max_rounds, run, Crash, Outcome};
use suig::suig::{compute_moves, AlgorithmVariant};
use suig::symmetry::{classify, is_periodic, reflection_axes};
use suig::verify::enumerate_initial;

fn any_config() -> impl Strategy<Value = ObservedConfig> {
    (2usize..=12).prop_map(|h| 2 * h + 1).prop_flat_map(|n| {
        proptest::collection::btree_set(0..n, 1..=n)
            .prop_map(move |occ| ObservedConfig::new(n, occ).unwrap())
    })
}

fn any_symmetry(n: usize) -> impl Strategy<Value = Symmetry> {
    prop_oneof![
        (0..n).prop_map(Symmetry::Rotate),
        (0..n).prop_map(Symmetry::Reflect)
    ]
}

fn config_and_symmetry() -> impl Strategy<Value = (ObservedConfig, Symmetry)> {
    any_config().prop_flat_map(|c| {
        let n = c.n();
        (Just(c), any_symmetry(n))
    })
}

/// A legal start together with a crash round fraction and node choice.
fn start_with_crash() -> impl Strategy<Value = (ObservedConfig, usize, usize)> {
    (
        prop_oneof![Just(9usize), Just(11), Just(13)],
        4usize..=9,
        any::<usize>(),
    )
        .prop_filter_map("no legal start", |(n, k, pick)| {
            let starts = enumerate_initial(n, k).ok()?;
            (!starts.is_empty()).then(|| starts[pick % starts.len()].clone())
        })
        .prop_flat_map(|c| (Just(c), 0usize..30, any::<usize>()))
}

proptest! {
    #[test]
    fn group_action_matches_node_map((c, g) in config_and_symmetry()) {
        let n = c.n();
        let image = c.transform(g);
        let expected = ObservedConfig::new(n, c.nodes().map(|i| g.map_node(n, i))).unwrap();
        prop_assert_eq!(&image, &expected);
        prop_assert_eq!(image.count(), c.count());
        if let Symmetry::Reflect(_) = g {
            prop_assert_eq!(image.transform(g), c.clone());
        }
        prop_assert_eq!(image.canonical_form(), c.canonical_form());
    }

    #[test]
    fn classification_is_dihedrally_invariant((c, g) in config_and_symmetry()) {
        let image = c.transform(g);
        prop_assert_eq!(classify(&image), classify(&c));
        prop_assert_eq!(is_periodic(&image), is_periodic(&c));
        prop_assert_eq!(reflection_axes(&image).len(), reflection_axes(&c).len());
    }

    #[test]
    fn moves_commute_with_symmetries((c, g) in config_and_symmetry()) {
        let n = c.n();
        match (compute_moves(&c), compute_moves(&c.transform(g))) {
            (Ok(m), Ok(img)) => prop_assert_eq!(img, m.transform(n, g)),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{} under {:?}: {:?} vs {:?}", c, g, a, b),
        }
    }

    #[test]
    fn crash_only_diverts_the_future((c, frac, node_pick) in start_with_crash()) {
        let n = c.n();
        let bound = default_max_rounds(n, c.count());
        let g0 = GroundState::distinct(&c).unwrap();
        let (free, _) = run(&g0, None, AlgorithmVariant::SuigRing, bound).unwrap();
        let t = frac % free.len();
        let at = &free.entries[t].observed;
        let node = at.nodes().nth(node_pick % at.count()).unwrap();
        let crash = Crash { round: t, node };
        let (crashed, outcome) = run(&g0, Some(crash), AlgorithmVariant::SuigRing, bound).unwrap();
        // identical up to the crash round
        for r in 0..=t.min(crashed.len() - 1) {
            prop_assert_eq!(&crashed.entries[r].observed, &free.entries[r].observed);
        }
        // the crashed robot never leaves its node
        for e in crashed.entries.iter().skip(t) {
            prop_assert!(e.observed.is_occupied(node));
            prop_assert_eq!(e.ground.total() as usize, c.count());
        }
        prop_assert!(matches!(outcome, Outcome::GatheredAt { node: v, .. } if v == node),
            "{} crash {:?}: {}", c, crash, outcome);
    }
}
