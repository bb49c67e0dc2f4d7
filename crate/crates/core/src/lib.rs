//! Exact computations with central extensions of surface mapping class
//! groups.
//!
//! The extended mapping class group is handled two ways: algebraically, via
//! Maslov indices and Turaev's bilinear forms on H₁(Σ; ℚ), and topologically,
//! via signatures of linking matrices of framed links built from words in
//! Dehn twists. The [`cyclo`] module carries the exact scalar arithmetic of
//! the associated TQFT phase factors.

pub mod cyclo;
pub mod exact;
pub mod extension;
pub mod mcg;
pub mod surgery;
pub mod symplectic;
pub mod verify;
