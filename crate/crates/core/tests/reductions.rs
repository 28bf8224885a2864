mod common;

use infodist::reduction::{
    deadline_to_time_extended, decide_index_rawness, index_to_network, reduce_deadline, side_information_graph,
    DeadlineEdgeJson, DeadlineInstance, DeadlineJson, IndexCodingInstance,
};
use infodist::witness::{is_cumulative, Status};
use infodist::Error;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn delay_instance() -> impl Strategy<Value = DeadlineJson> {
    let names = ["s", "a", "b", "c", "d"];
    (prop::collection::vec((0usize..4, 1usize..5, 1u64..4), 2..7), 2u64..5, Just(0u32)).prop_map(
        move |(raw, tau, memory)| DeadlineJson {
            edges: [(0, 1, 1), (1, 4, 1)]
                .into_iter()
                .chain(raw)
                .filter(|(t, h, _)| t != h)
                .map(|(t, h, delay)| DeadlineEdgeJson {
                    tail: names[t].into(),
                    head: names[h].into(),
                    delay,
                    name: None,
                })
                .collect(),
            source: "s".into(),
            sink: "d".into(),
            tau,
            horizon: None,
            memory: Some(memory),
            cut: None,
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, rng_seed: RngSeed::Fixed(7), ..ProptestConfig::default() })]

    #[test]
    fn shift_conditions_imply_generic_checks(json in delay_instance()) {
        let Ok(inst) = DeadlineInstance::from_json(&json) else { return Ok(()) };
        let (tnet, v) = match reduce_deadline(&inst) {
            Err(Error::DeadlineTooSmall { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(tnet.alpha_mismatches().is_empty());
        prop_assert!(v.shift_invariant);
        prop_assert!(v.cumulative && v.cuts_minimum);
        if v.c0_ordering.is_some() {
            prop_assert!(v.distributive, "{json:?}");
        }
        if v.p_extendable {
            prop_assert!(v.extendable, "{json:?}");
        }
    }
}

fn fig4() -> DeadlineInstance {
    DeadlineInstance::from_json(&serde_json::from_str(&common::read_corpus("fig4-deadline.json")).unwrap()).unwrap()
}

#[test]
fn fig4_corpus_reproduces_known_paths() {
    let (tnet, v) = reduce_deadline(&fig4()).unwrap();
    assert_eq!(v.status, Status::Yes);
    let paths: Vec<Vec<String>> = v.witness.paths.0[0]
        .iter()
        .map(|p| p.edges().iter().map(|&e| tnet.label(e)).filter(|l| l.starts_with('e')).collect())
        .collect();
    assert_eq!(
        paths,
        [
            vec!["e1[0]", "e2[2]", "e3[3]", "e8[5]"],
            vec!["e4[0]", "e5[1]", "e6[2]", "e7[4]"],
            vec!["e1[1]", "e2[3]", "e3[4]", "e8[6]"],
        ]
    );
}

#[test]
fn fig4_without_named_cut_still_certifies() {
    let mut inst = fig4();
    inst.cut = None;
    let (_, v) = reduce_deadline(&inst).unwrap();
    assert_eq!(v.status, Status::Yes);
    assert!(v.audit_failures.is_empty());
}

#[test]
fn fig4_time_extension_shape() {
    let tnet = deadline_to_time_extended(&fig4()).unwrap();
    // Slots 0..=21 for eight base nodes plus fifteen source and sink copies.
    assert_eq!(tnet.net.node_count(), 8 * 22 + 2 * 15);
    for (e, l) in tnet.labels.iter().enumerate() {
        let edge = tnet.net.edge(e);
        if let infodist::reduction::EdgeKind::Base { edge: b } = l.kind {
            let base = &tnet.instance.edges[b];
            let tail = format!("{}[{}]", tnet.instance.nodes[base.tail], l.time);
            let head = format!("{}[{}]", tnet.instance.nodes[base.head], l.time + base.delay);
            assert_eq!(tnet.net.node_name(edge.tail), tail);
            assert_eq!(tnet.net.node_name(edge.head), head);
        }
    }
}

#[test]
fn index_corpus_entries() {
    let fig3: IndexCodingInstance =
        IndexCodingInstance::from_json(&serde_json::from_str(&common::read_corpus("fig3-index.json")).unwrap())
            .unwrap();
    let r = decide_index_rawness(&fig3);
    assert!(r.raw);
    assert_eq!(r.l_min, Some(4 * fig3.message_length()));
    let (net, w) = index_to_network(&fig3);
    assert!(is_cumulative(&net, &w.cuts).is_none());

    let mutual =
        IndexCodingInstance::from_json(&serde_json::from_str(&common::read_corpus("mutual-index.json")).unwrap())
            .unwrap();
    assert_eq!(side_information_graph(&mutual), [(0, 1), (1, 0)]);
    assert!(!decide_index_rawness(&mutual).raw);
}
