//! Twisted right-angled Artin groups (T-RAAGs) from mixed graphs.
//!
//! * [`graph`]: mixed graphs, the `.tg` text format and graph constructions.
//! * [`classify`]: induced P4/C4 search, transitive forests, chordality, class ℛ.
//! * [`word`]: words, the twisted shuffle rules and normal forms.
//! * [`subgroup`]: the index-2 subgroup at a universal vertex.
//! * [`report`]: separability, coherence and membership verdicts.
//! * [`cli`]: the `traag` command.

pub mod classify;
pub mod cli;
pub mod graph;
pub mod report;
pub mod subgroup;
pub mod word;

pub use classify::{
    find_induced_c4, find_induced_p4, is_chordal, is_in_class_r, is_transitive_forest, ConeDecomposition,
};
pub use graph::{parse_graph, serialize_graph, ConeKind, EdgeKind, GraphError, Link, MixedGraph};
pub use report::{analyze, batch_analyze, Decidability, PropertyReport};
pub use subgroup::{apex_subgroup_graph, SubgroupGraphResult};
pub use word::{equals, is_identity, normal_form, parse_word, Syllable, Word, WordError};
