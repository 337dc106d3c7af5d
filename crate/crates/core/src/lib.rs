//! Intersection-theory engine for the space of conics through two general
//! points on a complete intersection.
//!
//! - [`chow`]: exact truncated cycle-class algebra for the universal conic
//!   family and its pushforward.
//! - [`grr`]: Todd/Chern-character series and the Riemann-Roch comparison
//!   that fixes the boundary divisor class.
//! - [`ci`]: complete-intersection type calculus (fiber type, dimension,
//!   canonical class, conic counts).
//! - [`oracle`]: numeric cross-check of the cubic-threefold count by
//!   homotopy continuation.

pub mod chow;
pub mod ci;
pub mod grr;
pub mod oracle;
