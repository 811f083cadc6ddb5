//! Numerical laboratory for vacuum radiation from moving boundaries.
//!
//! The crate covers dissipative vacuum forces on single mirrors, the
//! one-dimensional Moore equation for an oscillating cavity, coupled-mode
//! photon creation in three-dimensional cavities, quantum friction between
//! sheared dielectric surfaces, and the plasma-sheet model of an
//! optically modulated cavity wall.
//!
//! All internal computation is in natural units (hbar = c = 1, lengths in
//! meters); `domain::units` converts to and from SI.

pub mod cavity3d;
pub mod domain;
pub mod error;
pub mod friction;
pub mod mirror_vacuum;
pub mod moore1d;
pub mod numerics;
pub mod plasma_sheet;
pub mod scenario;

pub use error::{Error, Result};
