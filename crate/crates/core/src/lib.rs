#![no_std]

extern crate alloc;

pub mod cartan;
pub mod dcross;
pub mod error;
pub mod frt;
pub mod grouplike;
pub mod matrix;
pub mod params;
pub mod scalar;
pub mod uq;
pub mod ybr;

pub use error::{Error, Result};
pub use scalar::{Cyclo, CycloField, RatFunc, RootOrder, Scalar};
