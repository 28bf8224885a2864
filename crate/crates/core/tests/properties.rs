mod common;

use common::oracle;
use infodist::code::random_code;
use infodist::gf::PrimeField;
use infodist::graph::{edge_disjoint_paths, enumerate_min_cutsets, is_cut, min_cut, Edge, Network, Session};
use infodist::rate::{max_scaled_rate, RateVector, Q};
use infodist::witness::{decide_information_distributive, SearchConfig, Status};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random DAG: sources first, sinks last, relays between, edges only
/// forward; parallel edges allowed.
fn network(sessions: usize, relays: usize, max_edges: usize) -> impl Strategy<Value = Network> {
    let n = 2 * sessions + relays;
    prop::collection::vec((0..n, 0..n), 1..=max_edges).prop_filter_map("sessions disconnected", move |pairs| {
        let sinks = sessions + relays;
        let mut edges: Vec<Edge> = Vec::new();
        for (a, b) in pairs {
            let (tail, head) = (a.min(b), a.max(b));
            if tail == head || tail >= sinks || head < sessions {
                continue;
            }
            let index = edges.iter().filter(|e| e.tail == tail && e.head == head).count() as u32;
            edges.push(Edge { tail, head, index });
        }
        let names = (0..n).map(|v| format!("n{v}")).collect();
        let sessions = (0..sessions).map(|i| Session { source: i, sink: sinks + i }).collect();
        let net = Network::build(names, edges, sessions).ok()?;
        let open = vec![false; net.edge_count()];
        net.sessions().iter().all(|s| oracle::reaches(&net, s.source, s.sink, &open)).then_some(net)
    })
}

fn config(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

proptest! {
    #![proptest_config(config(64, 1))]

    #[test]
    fn menger_and_cut_enumeration_match_subsets(net in network(2, 3, 10)) {
        for s in net.sessions() {
            let (size, cuts) = oracle::min_cuts_by_subsets(&net, s.source, s.sink);
            let mc = min_cut(&net, s.source, s.sink);
            prop_assert_eq!(mc.value, size);
            prop_assert!(is_cut(&net, s.source, s.sink, &mc.cut));
            prop_assert_eq!(&enumerate_min_cutsets(&net, s.source, s.sink, usize::MAX).items, &cuts);
            let paths = edge_disjoint_paths(&net, s.source, s.sink, &mc.cut).unwrap();
            prop_assert_eq!(paths.len(), size);
            let mut used: Vec<usize> = paths.iter().flat_map(|p| p.edges().to_vec()).collect();
            let total = used.len();
            used.sort_unstable();
            used.dedup();
            prop_assert_eq!(used.len(), total);
        }
    }

    #[test]
    fn alpha_never_decreases_along_edges(net in network(3, 3, 12)) {
        let alpha = net.alpha_all();
        for (e, edge) in net.edges().iter().enumerate() {
            prop_assert_eq!(alpha[e], net.alpha(e));
            for &f in net.out_edges(edge.head) {
                prop_assert!(alpha[e] <= alpha[f]);
            }
        }
    }

    #[test]
    fn single_session_is_always_certified(net in network(1, 4, 10)) {
        let v = decide_information_distributive(&net, &SearchConfig::default());
        prop_assert_eq!(v.status, Status::Yes);
    }
}

proptest! {
    #![proptest_config(config(48, 2))]

    #[test]
    fn lp_matches_vertices_and_duality(net in network(2, 2, 7), d in prop::collection::vec(1i64..=3, 2)) {
        let dir = RateVector::from_integers(&d);
        let lp = max_scaled_rate(&net, &dir).unwrap();
        prop_assert_eq!(&lp.lambda, &oracle::max_lambda_by_vertices(&net, &dir.0));
        let priced: Q = lp.edge_prices.iter().sum();
        prop_assert_eq!(&priced, &lp.lambda);
        prop_assert!(lp.edge_prices.iter().all(|p| *p >= Q::zero()));
    }

    #[test]
    fn lp_optimum_grows_with_edges(net in network(2, 2, 8), extra in (0usize..6, 0usize..6)) {
        let dir = RateVector::from_integers(&[1, 1]);
        let before = max_scaled_rate(&net, &dir).unwrap().lambda;
        let raw = net.to_raw();
        let mut edges = net.edges().to_vec();
        let (a, b) = (extra.0.min(extra.1), extra.0.max(extra.1));
        let mut grown = None;
        if a != b && a < net.node_count() - 2 && b >= 2 {
            let index = edges.iter().filter(|e| e.tail == a && e.head == b).count() as u32;
            edges.push(Edge { tail: a, head: b, index });
            grown = Network::build(raw.nodes.clone(), edges, net.sessions().to_vec()).ok();
        }
        if let Some(bigger) = grown {
            prop_assert!(max_scaled_rate(&bigger, &dir).unwrap().lambda >= before);
        }
    }

}

proptest! {
    #![proptest_config(config(256, 4))]

    #[test]
    fn search_agrees_with_exhaustive_witness_search(net in network(2, 3, 10)) {
        let v = decide_information_distributive(&net, &SearchConfig::default());
        prop_assert_ne!(v.status, Status::Unknown);
        prop_assert_eq!(v.status == Status::Yes, oracle::brute_force_distributive(&net));
    }
}

proptest! {
    #![proptest_config(config(64, 3))]

    #[test]
    fn information_is_symmetric_and_chains(seed in any::<u64>(), q in prop::sample::select(vec![2u32, 3, 5])) {
        let net = common::load("fig1b.json");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rates: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
        let code = random_code(&net, PrimeField::new(q).unwrap(), &rates, &mut rng).unwrap();
        let dim = code.dimension();
        let rows = |rng: &mut ChaCha8Rng| -> Vec<Vec<u32>> {
            (0..rng.gen_range(0..=3)).map(|_| (0..dim).map(|_| rng.gen_range(0..q)).collect()).collect()
        };
        let (x, y, z, w) = (rows(&mut rng), rows(&mut rng), rows(&mut rng), rows(&mut rng));
        let info = |a: &[Vec<u32>], b: &[Vec<u32>], c: &[Vec<u32>]| code.cond_mutual_info_rows(a, b, c);
        prop_assert_eq!(info(&x, &y, &z), info(&y, &x, &z));
        let yw: Vec<Vec<u32>> = y.iter().chain(&w).cloned().collect();
        let zy: Vec<Vec<u32>> = z.iter().chain(&y).cloned().collect();
        prop_assert_eq!(info(&x, &yw, &z), info(&x, &y, &z) + info(&x, &w, &zy));
        prop_assert!(code.cond_entropy_rows(&x, &z) >= code.cond_entropy_rows(&x, &zy));
    }
}
