/*!
This crate makes the guide's code examples testable.

Each chapter of the book (in `src/`) is attached to an empty module as its
documentation, so `cargo test` compiles and runs every `rust` code block in
every chapter. A failure points at the module, and therefore the chapter,
that contains the broken example.
*/

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("src/ring.md")]
pub mod ring {}

#[doc = include_str!("src/cartan.md")]
pub mod cartan {}

#[doc = include_str!("src/weyl.md")]
pub mod weyl {}

#[doc = include_str!("src/braid.md")]
pub mod braid {}

#[doc = include_str!("src/inversion.md")]
pub mod inversion {}

#[doc = include_str!("src/pairing.md")]
pub mod pairing {}

#[doc = include_str!("src/cli.md")]
pub mod cli {}
