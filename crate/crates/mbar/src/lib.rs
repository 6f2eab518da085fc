//! Exact arithmetic for numerical curve classes on the moduli space of
//! stable n-pointed rational curves.
//!
//! The crate is organized around a small tower of exact arithmetic
//! ([`arith`]), the boundary-class calculus ([`classes`]), compilers that
//! turn plane geometry into curve classes ([`config`], [`pencil`]),
//! reduction-mod-p analysis ([`redmod`]), an exact rational LP over the
//! F-curve generators ([`fcone`]), the degeneracy-locus verification for
//! the dual Hesse pencil ([`hesse`]), and a fixture-driven verification
//! harness ([`harness`]) with a batch CLI ([`cli`]).

pub mod arith;
pub mod classes;
pub mod config;
pub mod fcone;
pub mod harness;
pub mod hesse;
pub mod pencil;
pub mod redmod;
pub mod serial;

pub mod cli;

pub use arith::{NumberRing, Rat, ReductionMap, RingElem};
