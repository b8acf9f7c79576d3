//! Recursive group presentations with a regular file basis: relator
//! construction, van Kampen diagram checks and budgeted decision procedures.

pub mod cli;
pub mod construction;
pub mod decision;
pub mod diagram;
pub mod words;
