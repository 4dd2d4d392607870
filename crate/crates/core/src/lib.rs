//! Finite-level quotients, clopen colorings and symbolic graph families on
//! zero-dimensional spaces.

pub mod cli;
pub mod colorings;
pub mod dynamics;
pub mod families;
pub mod homs;
pub mod quotients;
pub mod report;
pub mod subshift;
pub mod words;
