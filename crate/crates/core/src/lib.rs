pub mod action;
pub mod caps;
pub mod central;
pub mod cert;
pub mod chern;
pub mod cli;
pub mod error;
pub mod exact;
pub mod ghys;
pub mod groups;
pub mod waring;

pub use error::{NawError, Result};
