//! Command-line front end for `gregory-core`.
//!
//! Exit codes: [`EXIT_OK`] on success, [`EXIT_DOMAIN`] on usage or domain
//! errors, [`EXIT_VERIFY`] when a verification (cross-check, strict probe,
//! numeric derivative check) fails.

mod app;
pub mod render;

pub use app::{run, Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
