//! Exact coefficient arithmetic: Laurent polynomials, the Rees ring and
//! `h`-adic truncations.

mod poly;
mod rees;
mod series;
mod text;

use thiserror::Error;

pub use poly::{Exponent, LaurentTerm, Poly, Var};
pub use rees::{ArithOp, EmbedTarget, ReesElement, Variant};
pub use series::{truncate_h, TruncatedSeries};
pub use text::{format_poly, parse_poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("variant mismatch")]
    VariantMismatch,
    #[error("negative z, h or u exponent in {0}")]
    NegativeExponent(String),
    #[error("not h-adically truncatable")]
    NotTruncatable,
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}
