//! Problems that become multi-unicast networks: index coding and
//! deadline-constrained unicast.

mod deadline;
mod index;

pub use deadline::{
    check_c0_distributive, check_p_extendable, deadline_to_time_extended, deadline_verdict, find_extendable_paths,
    reduce_deadline, BaseEdge, DeadlineEdgeJson, DeadlineInstance, DeadlineJson, DeadlineVerdict, EdgeKind,
    ShiftViolation, TimeExtendedNetwork, TimeLabel,
};
pub use index::{
    acyclic_reindex, decide_index_rawness, index_to_network, side_information_graph, IndexCodingInstance, IndexJson,
    Rawness, Reindex,
};
