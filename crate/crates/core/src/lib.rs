//! Most-intersection of finite and countably infinite collections.
//!
//! An element belongs to the most-intersection of a collection when it is a
//! member of "most" of the sets: more than half of them for finite
//! collections, and an index set whose natural density exceeds that of its
//! complement for infinite ones.
//!
//! The crate is split into four layers:
//!
//! - [`density`]: eventually periodic subsets of ℕ, their exact natural
//!   density, the `Most` predicate and a partial-density estimator for sets
//!   only available as membership oracles.
//! - [`collections`]: most-intersection of finite collections and of indexed
//!   families through characteristic acceptance sequences.
//! - [`automata`]: regular expressions, DFAs, the majority product that
//!   recognizes the density language of a finite collection, and the
//!   cumulative `0ⁿ1ⁿ` family whose density language is not regular.
//! - [`hypergraph`]: the average state of finite and certified infinite
//!   hypergraphs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod automata;
pub mod collections;
pub mod density;
mod element;
mod error;
pub mod hypergraph;

pub use element::Element;
pub use error::{Error, Result};
