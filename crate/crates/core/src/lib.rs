//! Exact construction and certification of lattice-isomorphic pairs of
//! complex projective line arrangements built from splitting polygons.

pub mod numberfield;
pub mod projgeom;
pub mod arrangement;
pub mod splitting;
pub mod fixtures;
pub mod pipeline;
pub mod io;
