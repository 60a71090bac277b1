//! Inter-word distance distributions of DNA words and the dissimilarity
//! between each word and its reverse complement.

pub mod analysis;
pub mod dissim;
pub mod error;
pub mod ingest;
pub mod pipeline;
pub mod refmodel;
pub mod report;
pub mod scan;
pub mod store;
pub mod synth;
pub mod word;

pub use error::{Error, Result};
