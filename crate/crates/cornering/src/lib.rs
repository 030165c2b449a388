//! Terms for interacting processes over a free monoidal category, rewriting
//! modulo the structural equations, and a decision procedure for equality of
//! vertical cells.

// Base morphisms fill write-once caches of their canonical key and hash,
// computed from immutable content, so keys never change while hashed.
#![allow(clippy::mutable_key_type)]

pub mod base;
pub mod coherence;
pub mod context;
pub mod dsl;
pub mod engine;
pub mod harness;
pub mod protocol;
pub mod term;
