//! Command-line front end: JSON records, OBJ export and table reproduction.

pub mod commands;
pub mod obj;
pub mod record;
pub mod reproduce;
