//! Exact computation of flag-major, length and inversion statistics on the
//! colored permutation groups `G_{c,n} = Z_c ≀ S_n`, and exhaustive
//! verification of the signed Mahonian and derangement identities they satisfy.
//!
//! ```
//! use mahonian::{colored::{parse_word, GroupParams}, statistics};
//!
//! let params = GroupParams::new(4, 5).unwrap();
//! let p = parse_word("2[3] 1[1] 3 4[2] 5", params).unwrap();
//! assert_eq!(statistics::length(&p), 19);
//! assert_eq!(statistics::fmaj(&p), 18);
//! ```

pub mod colored;
pub mod derangements;
pub mod enumerate;
pub mod error;
pub mod identities;
pub mod qpoly;
pub mod report;
pub mod statistics;

pub use error::{Error, ParseError, Result};
