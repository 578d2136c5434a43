pub mod braid;
pub mod coeff;
pub mod diagram;
pub mod formal;
pub mod framed;
pub mod homotopy;
pub mod jonesq;
pub mod link;
pub mod loops;
pub mod selftest;
pub mod skein;

pub use link::{Ambient, Presentation};
