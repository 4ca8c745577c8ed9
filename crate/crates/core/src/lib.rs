//! Exact-arithmetic construction of the two-parameter type-B Hecke algebra,
//! its parabolic bar-invariant bases for arbitrary weight functions, the
//! coideal subalgebras acting on tensor powers of the natural representation,
//! the truncated intertwiner, and the resulting canonical bases on tensor
//! space — together with machine verification that the two basis
//! constructions coincide.

pub mod canonicalize;
pub mod coideal;
pub mod hecke;
pub mod intertwiner;
pub mod qgroup;
pub mod ring;
pub mod schur;
pub mod weylb;
