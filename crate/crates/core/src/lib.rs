//! Exact-arithmetic toolkit for polyomino ideals.
//!
//! The crate models finite collections of grid cells, builds their inner 2-minor
//! binomial ideals, and checks certificates about those ideals: Gröbner bases under
//! the relevant monomial orders, lattice-based primality, König-type generator
//! selections and Knutson determinant products.

pub mod grid;
pub mod polyring;
pub mod groebner;
pub mod lattice;
pub mod certificates;
pub mod harness;

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}
