//! Associated Legendre functions of integer degree and order, their
//! derivatives with respect to the degree, and the second-kind functions
//! built from them.
//!
//! Every quantity is produced as an exact [`canonical::CanonicalForm`] and
//! evaluated numerically from it, so independent representations can be
//! compared for exact equality before any rounding happens.

pub mod canonical;
pub mod exactnum;
pub mod jacobi;
pub mod poly;
pub mod zdomain;
pub mod cache;
pub mod dnu_p;
pub mod error;
pub mod legendre_p;
pub mod legendre_q;
pub mod method;
pub mod oracles;

pub use error::{Error, Result};
pub use method::MethodId;
