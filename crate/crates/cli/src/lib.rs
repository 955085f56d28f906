//! Library half of the `kzosc` command-line tool: config parsing, sweep
//! execution, table serialization and the selftest property suites. The
//! binary in main.rs is a thin dispatcher over these.

pub mod config;
pub mod error;
pub mod output;
pub mod runs;
pub mod selftest;

pub use error::CliError;
