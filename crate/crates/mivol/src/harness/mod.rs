//! Experiment harness: instance generators, Monte Carlo cross-checks,
//! end-to-end theorem checks, and deterministic record reporting.
//!
//! The harness turns the exact geometric machinery into reproducible
//! experiments.  Instances are generated from named families keyed by a
//! seed, each check emits [`records::ExperimentRecord`] rows, and reports
//! render those rows to CSV or JSON byte-identically across reruns.

pub mod families;
pub mod lemmas;
pub mod mc;
pub mod records;
pub mod theorems;

pub use families::{generate_instance, InstanceFamily};
pub use lemmas::{run_lemma_suite, LemmaRow, LEMMA_TOKENS};
pub use mc::mc_volume;
pub use records::{render_csv, render_json, ExperimentRecord, ReportFormat, Satisfied};
pub use theorems::{check_corollary_width, check_theorem_general, check_theorem_n1};
