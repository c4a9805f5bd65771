//! Randomized invariants over the core algebra.

use std::collections::HashMap;

use interactions::{
    analyze_config_space, box_product, canonical_form, completion, compute_consv, equivalent,
    is_exchangeable, merge, shuffle, weakly_equivalent, wedge, Configuration, Interaction,
    SiteGraph, StateSet, Verdict, WedgeSpec,
};
use proptest::prelude::*;

type RawEdge = (u8, u8, u8, u8);

fn materialize(n: usize, raw: Vec<RawEdge>) -> Interaction {
    let m = n as u8;
    let edges: Vec<_> = raw
        .into_iter()
        .map(|(a, b, c, d)| {
            (
                ((a % m) as usize, (b % m) as usize),
                ((c % m) as usize, (d % m) as usize),
            )
        })
        .collect();
    Interaction::new(StateSet::indexed(n).unwrap(), edges).unwrap()
}

fn arb_interaction(max_states: usize, max_edges: usize) -> impl Strategy<Value = Interaction> {
    (1..=max_states, prop::collection::vec(any::<RawEdge>(), 0..=max_edges))
        .prop_map(|(n, raw)| materialize(n, raw))
}

fn arb_relabeled(max_states: usize) -> impl Strategy<Value = (Interaction, Vec<usize>)> {
    arb_interaction(max_states, 10).prop_flat_map(|inter| {
        let n = inter.size();
        (Just(inter), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

fn config_index(values: &[usize], states: usize) -> u64 {
    values.iter().fold(0u64, |acc, &v| acc * states as u64 + v as u64)
}

fn component_ids(analysis: &interactions::ConfigSpaceAnalysis) -> HashMap<u64, usize> {
    let mut map = HashMap::new();
    for (cid, cell) in analysis.component_partition().iter().enumerate() {
        for &cfg in cell {
            map.insert(cfg, cid);
        }
    }
    map
}

proptest! {
    #[test]
    fn basis_ignores_edge_presentation(
        (inter, order) in arb_interaction(5, 12).prop_flat_map(|inter| {
            let edges: Vec<_> = inter.edges().copied().collect();
            (Just(inter), Just(edges).prop_shuffle())
        })
    ) {
        let reordered = Interaction::new(inter.states().clone(), order).unwrap();
        prop_assert_eq!(compute_consv(&inter), compute_consv(&reordered));
    }

    #[test]
    fn rebuilding_from_edges_is_identity(inter in arb_interaction(5, 12)) {
        let rebuilt =
            Interaction::new(inter.states().clone(), inter.edges().copied()).unwrap();
        prop_assert_eq!(&rebuilt, &inter);
    }

    #[test]
    fn edges_connect_their_endpoints(inter in arb_interaction(5, 12)) {
        for &(u, v) in inter.edges() {
            prop_assert!(inter.same_component(u, v).unwrap());
        }
    }

    #[test]
    fn self_loops_leave_components_alone(inter in arb_interaction(4, 10)) {
        let n = inter.size();
        let mut edges: Vec<_> = inter.edges().copied().collect();
        for a in 0..n {
            for b in 0..n {
                edges.push(((a, b), (a, b)));
            }
        }
        let looped = Interaction::new(inter.states().clone(), edges).unwrap();
        prop_assert_eq!(looped.components(), inter.components());
    }

    #[test]
    fn canonical_form_survives_relabeling((inter, perm) in arb_relabeled(5)) {
        let relabeled = inter.relabeled(&perm).unwrap();
        prop_assert_eq!(
            canonical_form(&inter).unwrap(),
            canonical_form(&relabeled).unwrap()
        );
        prop_assert!(equivalent(&inter, &relabeled).unwrap());
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(
        a in arb_interaction(5, 10),
        b in arb_interaction(5, 10)
    ) {
        prop_assert!(equivalent(&a, &a).unwrap());
        prop_assert_eq!(equivalent(&a, &b).unwrap(), equivalent(&b, &a).unwrap());
    }

    #[test]
    fn equivalent_pairs_are_weakly_equivalent((inter, perm) in arb_relabeled(5)) {
        let relabeled = inter.relabeled(&perm).unwrap();
        prop_assert!(weakly_equivalent(&inter, &relabeled).unwrap().is_some());
    }

    #[test]
    fn completion_is_idempotent_and_conservative(inter in arb_interaction(4, 10)) {
        let hat = completion(&inter);
        prop_assert_eq!(compute_consv(&hat), compute_consv(&inter));
        prop_assert_eq!(&completion(&hat), &hat);
    }

    #[test]
    fn merge_drops_dimension_by_exactly_one(inter in arb_interaction(5, 10)) {
        let basis = compute_consv(&inter);
        prop_assume!(basis.dim() >= 1);
        let n = inter.size();
        let all: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let u = all[0];
        let target = all
            .iter()
            .find(|&&v| basis.vertex_values(v) != basis.vertex_values(u));
        prop_assume!(target.is_some());
        let &v = target.unwrap();
        let merged = merge(&inter, u, v).unwrap();
        prop_assert_eq!(compute_consv(&merged).dim(), basis.dim() - 1);
    }

    #[test]
    fn wedge_dimension_is_additive(
        a in arb_interaction(4, 8),
        b in arb_interaction(4, 8)
    ) {
        let w = wedge(&WedgeSpec {
            left: a.clone(),
            right: b.clone(),
            base_left: 0,
            base_right: 0,
        })
        .unwrap();
        prop_assert_eq!(
            compute_consv(&w).dim(),
            compute_consv(&a).dim() + compute_consv(&b).dim()
        );
    }

    #[test]
    fn box_dimension_is_additive_with_an_exchangeable_factor(
        a in arb_interaction(3, 8),
        b in arb_interaction(3, 8)
    ) {
        // Force exchangeability of one factor by adding every swap.
        let n = a.size();
        let mut edges: Vec<_> = a.edges().copied().collect();
        for s in 0..n {
            for t in 0..n {
                edges.push(((s, t), (t, s)));
            }
        }
        let a = Interaction::new(a.states().clone(), edges).unwrap();
        prop_assert!(is_exchangeable(&a));
        let p = box_product(&a, &b).unwrap();
        prop_assert_eq!(
            compute_consv(&p).dim(),
            compute_consv(&a).dim() + compute_consv(&b).dim()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_site_path_reproduces_the_mirrored_interaction_graph(inter in arb_interaction(4, 10)) {
        // Two sites admit moves in both orientations of the single edge, so
        // the configuration graph is the interaction together with its
        // mirror image under the coordinate swap. For swap-invariant edge
        // sets (every named construction here) the mirror adds nothing.
        let mirrored = Interaction::new(
            inter.states().clone(),
            inter
                .edges()
                .copied()
                .chain(inter.edges().map(|&((a, b), (c, d))| ((b, a), (d, c)))),
        )
        .unwrap();
        let g = SiteGraph::path(2).unwrap();
        let analysis = analyze_config_space(&inter, &g, 1_000_000).unwrap();
        let ids = component_ids(&analysis);
        let n = inter.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let same_cfg = ids[&config_index(&[a, b], n)]
                            == ids[&config_index(&[c, d], n)];
                        prop_assert_eq!(
                            same_cfg,
                            mirrored.same_component((a, b), (c, d)).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn exchangeable_interactions_reach_all_shuffles(
        (inter, g, eta, sigma) in (2..=3usize, prop::collection::vec(any::<RawEdge>(), 0..=8))
            .prop_flat_map(|(n, raw)| {
                let base = materialize(n, raw);
                // Adding every swap makes the interaction exchangeable.
                let mut edges: Vec<_> = base.edges().copied().collect();
                for s in 0..n {
                    for t in 0..n {
                        edges.push(((s, t), (t, s)));
                    }
                }
                let inter = Interaction::new(base.states().clone(), edges).unwrap();
                (Just(inter), 1..=4usize)
            })
            .prop_flat_map(|(inter, sites)| {
                let n = inter.size();
                let tree = prop::collection::vec(0..sites.max(1), sites.saturating_sub(1));
                let values = prop::collection::vec(0..n, sites);
                let perm = Just((0..sites).collect::<Vec<usize>>()).prop_shuffle();
                (Just(inter), (Just(sites), tree), values, perm)
            })
            .prop_map(|(inter, (sites, tree), values, perm)| {
                let edges: Vec<(usize, usize)> = tree
                    .into_iter()
                    .enumerate()
                    .map(|(i, parent)| (parent % (i + 1), i + 1))
                    .collect();
                let g = SiteGraph::new(sites, edges).unwrap();
                (inter, g, Configuration::new(values), perm)
            })
    ) {
        prop_assert!(is_exchangeable(&inter));
        let analysis = analyze_config_space(&inter, &g, 1_000_000).unwrap();
        let ids = component_ids(&analysis);
        let n = inter.size();
        let shuffled = shuffle(&eta, &sigma).unwrap();
        prop_assert_eq!(
            ids[&config_index(eta.values(), n)],
            ids[&config_index(shuffled.values(), n)]
        );
    }

    #[test]
    fn verdict_match_means_partitions_coincide(inter in arb_interaction(3, 8)) {
        let g = SiteGraph::path(3).unwrap();
        let analysis = analyze_config_space(&inter, &g, 1_000_000).unwrap();
        let components = analysis.component_partition().len();
        let fibers = analysis.fiber_partition().len();
        match analysis.verdict() {
            Verdict::Match => prop_assert_eq!(components, fibers),
            Verdict::Mismatch { .. } => prop_assert!(components > fibers),
        }
    }
}
