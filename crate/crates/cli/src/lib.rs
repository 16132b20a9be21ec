//! Configuration, check orchestration and report emission for `qgroup-frt`.

pub mod config;
pub mod report;
pub mod run;
