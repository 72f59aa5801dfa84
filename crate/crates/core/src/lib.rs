//! Parking functions under the k-Naples rule: simulation, exact counting,
//! characterizations, lattice-path bijections and batch experiments.

pub mod characterization;
pub mod counting;
pub mod error;
pub mod experiment;
pub mod lattice;
pub mod parking;
pub mod space;
pub mod stats;

pub use characterization::{is_naples_via_t, psi, psi_inverse, tau_transform, TauTrace};
pub use counting::{
    count_brute, count_decreasing_brute, count_decreasing_closed, count_pf_closed, count_recursive,
    count_second_closed, count_star, count_top_closed, star_profile, BigCount, BruteConfig, Counter,
    DiskCache,
};
pub use error::{Error, Result};
pub use experiment::{run_experiment, Dataset, Experiment, Method};
pub use lattice::{
    decreasing_from_path, is_k_lattice_path, is_s_dyck, path_from_decreasing, ribbon_cells,
    signature_for, LatticePath, Ribbon, Signature, Step,
};
pub use parking::{
    circle_park, is_contained, is_decreasing_k_naples_fast, is_k_naples, is_parking_function, park_k,
    CircleOutcome, LookbackRule, ParkingOutcome, PreferenceVector,
};
pub use stats::{adt_stats, aggregate_adt, summarize_adt, AdtSummary, AdtTriple, PreferenceSet};
