//! Cohn–Leavitt path algebras `CL_K(E, S)` of finite graphs over `ℚ` and
//! `ℚ(i)`, computed exactly.
//!
//! * [`scalar`]: the coefficient fields with their involutions and positive cones
//! * [`graph`]: graphs, paths, cycles and exits, `E_S`, complete subobjects
//! * [`algebra`]: elements in (SCK2) normal form, involution, grading, gauge
//!   action, direct finiteness and the isomorphism `L_K(E_S) ≅ CL_K(E, S)`
//! * [`trace`]: graph traces, canonical traces and a solver for faithful ones
//! * [`oracle`]: matrix and Laurent representations for cross-checking

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod corpus;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod sample;
pub mod scalar;
pub mod trace;
