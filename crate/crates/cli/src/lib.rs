//! IO, file formats, and the verification runner behind the `pf` binary.

pub mod format;
pub mod verify;
