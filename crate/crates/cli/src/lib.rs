//! Library side of the command-line crate: the embedded fixture corpus,
//! shared between the `dubrovnik` binary and the integration tests.

pub mod fixtures;
