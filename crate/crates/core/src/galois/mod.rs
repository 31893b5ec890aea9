//! Small finite fields and coordinatewise symbol actions on `[v]^t`.

mod action;
mod field;
mod orbit;

pub use action::{constant_rows, develop, GroupAction, GroupElement};
pub use field::{field_make, is_prime_power, prime_power, Field};
pub use orbit::{orbits, OrbitStructure};
