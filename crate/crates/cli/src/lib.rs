//! Front end for `singeta-core`: report building and the subcommand logic.

pub mod analyze;
pub mod maslov;
pub mod report;
pub mod table;
