//! File formats, the polynomial cache and the command line for `jtheta-core`.

pub mod cache;
pub mod cli;
pub mod json;
pub mod polyfile;

pub use cache::Cache;
pub use polyfile::PolyFile;
