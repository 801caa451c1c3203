//! Locally alternating groups acting on semiregular trees: legal colorings,
//! window specs and their diagram sets, the invariants that classify them,
//! and finite verification of the accompanying counterexample and number
//! theory.

pub mod coloring;
pub mod counterexample;
pub mod gf2;
pub mod groupspec;
pub mod invariants;
pub mod permgrp;
pub mod theta;
pub mod tree_core;
