//! Report types shared by the `indexcoding` binary and its tests.

pub mod report;
