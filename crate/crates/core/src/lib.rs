//! Modified binary tilings of the hyperbolic plane.
//!
//! The crate builds finite approximants of horoball packings decorated with
//! dyadic indices, checks the group actions that govern their labels, and
//! estimates packing densities.

pub mod algebra;
pub mod cf;
pub mod density;
pub mod geom;
pub mod tiling;
pub mod treeaction;
mod json;
