//! Finite frames, their sublocale lattices, and localic unicoherence checks.

pub mod bitset;
pub mod connectivity;
pub mod frame;
pub mod harness;
pub mod lemmas;
pub mod space;
pub mod sublocale;
pub mod unicoherence;

pub use bitset::ElemSet;
pub use connectivity::{ComponentSet, ConnectivityError, ConnectivityMethod, SublocaleFlags};
pub use frame::{BoundKind, ElementId, FiniteFrame, FrameError, FrameFlags};
pub use lemmas::{run_lemma_suite, LemmaOutcome, LemmaReport};
pub use space::{
    classical_connected, classical_continuum, classical_unicoherent, cross_check,
    enumerate_topologies, frame_of_opens, point_labels, validate_space, ClassicalVerdict,
    CrossCheck, CrossCheckError, FiniteSpace, SpaceError,
};
pub use sublocale::{Locale, Sublocale, SublocaleError, SublocaleKind, DEFAULT_ENUM_CAP};
pub use unicoherence::{
    check_property, replay_witness, verify_equivalences, verify_selected, CheckOptions,
    EquivalenceReport, PropertyChecker, PropertyError, PropertyId, PropertyResult, ReplayError,
    Separation, SeparationError, SeparationTable, SetMode, Witness,
};
