//! Every chapter of the guide in `book/src` is pulled in as module docs so
//! that `cargo test` runs its listings.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/bias-families.md")]
pub mod bias_families {}
#[doc = include_str!("../../../book/src/conditions.md")]
pub mod conditions {}
#[doc = include_str!("../../../book/src/dynamics.md")]
pub mod dynamics {}
#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}
