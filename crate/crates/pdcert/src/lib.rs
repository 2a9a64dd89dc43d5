//! Command-line front end, table files, certificate rendering and the
//! numerical oracle for `pdcert-core`.

pub mod cli;
pub mod oracle;
pub mod render;
pub mod table;
