//! Compiles every listing in the guide as a doc test. Each chapter becomes
//! an empty module so a failure points at the chapter it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}
#[doc = include_str!("../../../book/src/decomposition.md")]
pub mod decomposition {}
#[doc = include_str!("../../../book/src/paths.md")]
pub mod paths {}
#[doc = include_str!("../../../book/src/extraction.md")]
pub mod extraction {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
