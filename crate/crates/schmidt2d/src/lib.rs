pub mod error;

pub mod analysis;
pub mod angular;
pub mod config;
pub mod geometry;
pub mod grid;
pub mod models;
pub mod oracle;
pub mod pipeline;
pub mod solver;
pub mod special;

pub use error::{Error, Result};
