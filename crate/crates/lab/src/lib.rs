//! Std companion to `ffsi-core`: parallel scan drivers, machine-readable
//! reports, verification suites, and the `ffsi` command-line binary.

pub mod drivers;
pub mod report;
pub mod suites;
