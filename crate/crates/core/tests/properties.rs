use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use spswitch::bitset::Bitset;
use spswitch::graph::{build_symplectic, SympGraph};
use spswitch::graph6;
use spswitch::orbits::SpecialQuadruple;
use spswitch::switching::apply_switch;
use spswitch::triples::{
    classify_triple_case, predict_switched_count, triple_count, SwitchContext,
};
use spswitch::variants::{switch_variant, Variant, VariantGraph};

struct Fixture {
    base: SympGraph,
    variants: Vec<(VariantGraph, SwitchContext)>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let base = build_symplectic(4).unwrap();
        let q = SpecialQuadruple::canonical(4).unwrap();
        let variants = Variant::SWITCHED
            .iter()
            .map(|&v| {
                let vg = switch_variant(&base, v, &q).unwrap();
                let p = vg.partition.clone().unwrap();
                let ctx = SwitchContext::new(&base, &p, p.designated().unwrap()).unwrap();
                (vg, ctx)
            })
            .collect();
        Fixture { base, variants }
    })
}

fn triple(n: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (0..n, 0..n, 0..n).prop_filter("distinct", |(x, y, z)| x != y && y != z && x != z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn prediction_equals_direct_count((x, y, z) in triple(255), which in 0usize..4) {
        let f = fixture();
        let (vg, ctx) = &f.variants[which];
        prop_assert_eq!(
            predict_switched_count(&f.base, ctx, x, y, z).unwrap(),
            triple_count(&vg.graph, x, y, z).unwrap()
        );
    }

    #[test]
    fn case_depends_only_on_the_set((x, y, z) in triple(255), which in 0usize..4) {
        let ctx = &fixture().variants[which].1;
        let a = classify_triple_case(ctx, x, y, z).unwrap();
        for (p, q, r) in [(y, x, z), (z, y, x), (y, z, x), (x, z, y), (z, x, y)] {
            let b = classify_triple_case(ctx, p, q, r).unwrap();
            prop_assert_eq!(a.case, b.case);
            prop_assert_eq!(
                a.roles.iter().collect::<BTreeSet<_>>(),
                b.roles.iter().collect::<BTreeSet<_>>()
            );
        }
    }

    #[test]
    fn triple_count_is_symmetric((x, y, z) in triple(255), which in 0usize..4) {
        let g = &fixture().variants[which].0.graph;
        let c = triple_count(g, x, y, z).unwrap();
        prop_assert_eq!(c, triple_count(g, z, x, y).unwrap());
        prop_assert_eq!(c, triple_count(g, y, z, x).unwrap());
    }

    #[test]
    fn graph6_round_trips(n in 1usize..90, seed_edges in prop::collection::vec((0usize..90, 0usize..90), 0..300)) {
        let edges: Vec<(usize, usize)> = seed_edges
            .into_iter()
            .filter(|&(a, b)| a < n && b < n && a != b)
            .collect();
        let g = SympGraph::from_edges(n, edges).unwrap();
        let back = graph6::decode(&graph6::encode(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn bitset_matches_set_model(
        len in 1usize..200,
        a in prop::collection::vec(0usize..200, 0..60),
        b in prop::collection::vec(0usize..200, 0..60),
    ) {
        let a: BTreeSet<usize> = a.into_iter().filter(|&v| v < len).collect();
        let b: BTreeSet<usize> = b.into_iter().filter(|&v| v < len).collect();
        let sa = Bitset::from_indices(len, a.iter().copied());
        let sb = Bitset::from_indices(len, b.iter().copied());
        prop_assert_eq!(sa.count(), a.len());
        prop_assert_eq!(sa.intersection_count(&sb), a.intersection(&b).count());
        let mut u = sa.clone();
        u.union_with(sb.words());
        prop_assert_eq!(u.iter().collect::<BTreeSet<_>>(), a.union(&b).copied().collect());
        let mut d = sa.clone();
        d.difference_with(sb.words());
        prop_assert_eq!(d.iter().collect::<BTreeSet<_>>(), a.difference(&b).copied().collect());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn switching_twice_restores_graph(which in 0usize..4) {
        let f = fixture();
        let vg = &f.variants[which].0;
        let p = vg.partition.as_ref().unwrap();
        let (back, _) = apply_switch(&vg.graph, p, p.designated().unwrap()).unwrap();
        prop_assert_eq!(&back, &f.base);
    }
}
