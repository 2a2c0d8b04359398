pub mod cli;
pub mod decomposition;
pub mod error;
pub mod exact_linalg;
pub mod grid_space;
pub mod homology_ingest;
pub mod io;
pub mod k_theory;
pub mod module_rep;
pub mod rank_exact;
pub mod sampling;

pub use error::{Error, Result};
