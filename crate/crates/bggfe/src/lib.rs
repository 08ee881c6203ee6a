//! Exact construction and verification of finite element spaces for
//! form-valued forms on simplices and simplicial meshes.

pub mod bgg_ops;
pub mod exterior;
pub mod linalg;
pub mod geometry;
pub mod polyspaces;
pub mod bubbles;
pub mod elements;
pub mod meshcomplex;
pub mod catalog;
pub mod verify;
pub mod report;
