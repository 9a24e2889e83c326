//! Guide chapters compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/lorentz-cone.md")]
pub mod lorentz_cone {}
#[doc = include_str!("../../../book/src/alternative.md")]
pub mod alternative {}
#[doc = include_str!("../../../book/src/constructive.md")]
pub mod constructive {}
#[doc = include_str!("../../../book/src/special-classes.md")]
pub mod special_classes {}
#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
