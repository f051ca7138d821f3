//! Exact computation of nuclei of Veronese varieties over finite fields.
//!
//! The nucleus of the Veronese variety `V^t_m` (the image of `P(F^{m+1})` under all
//! degree-`t` monomials) is the intersection of its osculating hyperplanes. This
//! crate computes it two ways and compares them:
//!
//! * by brute force, intersecting every osculating hyperplane with exact linear
//!   algebra over GF(p^k) ([`vero::VeroContext::nucleus_bruteforce`]);
//! * from the base-p digits of `t`: the nucleus is spanned by the base points whose
//!   multinomial coefficient vanishes mod p, and has projective dimension
//!   `C(m+t, t) - prod C(m + t_i, t_i) - 1` ([`mono::nucleus_dim_formula`]).
//!
//! Modules, bottom up: [`gf`] finite fields, [`mono`] exponent tuples and
//! multinomials, [`exlin`] exact matrices and subspaces, [`vero`] the Veronese
//! machinery, [`report`] grid scans and reports, [`cli`] the `nucleus` binary.

pub mod cli;
pub mod exlin;
pub mod gf;
pub mod mono;
pub mod report;
pub mod vero;

pub use exlin::{Matrix, Subspace};
pub use gf::{Field, FieldElement};
pub use mono::{EmptyCase, ExponentTuple};
pub use report::{Report, ScanGrid};
pub use vero::{NucleusReport, VeroContext};
