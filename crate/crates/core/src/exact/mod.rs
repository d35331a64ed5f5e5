//! Exact rational coherence of the PSFW and Sierpinski families.
//!
//! Two independent routes are provided for the PSFW: the truncated
//! characteristic-polynomial recursion reduced by Vieta's formulas, and the
//! closed-form theorem expressions. The Sierpinski gasket has the closed form
//! only.

mod closed;
mod poly;
mod recursion;

pub use closed::{
    closed_coeffs, psfw_closed_form, sierpinski_closed_form, ClosedCoefficients,
    CLOSED_MAX_GENERATION,
};
pub use poly::{determinant, TruncPoly, TRUNCATION};
pub use recursion::{
    normalize, polyquad_at, raw_polyquad_at, recursion_step, seed_polyquad, vieta_sums, PolyQuad,
    RAW_MAX_GENERATION,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::generators::{vertex_count, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    First,
    Second,
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "first" => Ok(Order::First),
            "2" | "second" => Ok(Order::Second),
            other => Err(Error::InvalidConfig(format!("unknown order {other:?}"))),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::First => "first",
            Order::Second => "second",
        })
    }
}

/// Reciprocal eigenvalue sums and coherences at one generation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactCoherence {
    pub generation: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub s: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub t: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub h_fo: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub h_so: BigRational,
}

impl ExactCoherence {
    pub fn h_fo_f64(&self) -> f64 {
        to_f64(&self.h_fo)
    }

    pub fn h_so_f64(&self) -> f64 {
        to_f64(&self.h_so)
    }
}

/// `numerator/denominator` in lowest terms, denominator always present.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn serialize_rational<S: Serializer>(
    r: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn two_n(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(2 * vertex_count(n)))
}

pub fn exact_sums(pq: &PolyQuad) -> Result<ExactCoherence> {
    let (s, t) = vieta_sums(&pq.p).ok_or_else(|| Error::RecursionInconsistency {
        generation: pq.generation,
        detail: "constant coefficient of P/l vanishes".into(),
    })?;
    let denom = two_n(pq.generation);
    Ok(ExactCoherence {
        generation: pq.generation,
        h_fo: &s / &denom,
        h_so: &t / &denom,
        s,
        t,
    })
}

/// PSFW coherence at generation `n` through the recursion.
pub fn psfw_exact(n: u32) -> Result<ExactCoherence> {
    exact_sums(&polyquad_at(n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactMethod {
    Recursion,
    Closed,
}

/// Coherence of a family member by the requested route. Sierpinski graphs
/// only have the closed form.
pub fn family_exact(family: Family, n: u32, method: ExactMethod) -> Result<ExactCoherence> {
    let (h_fo, h_so) = match (family, method) {
        (Family::Psfw, ExactMethod::Recursion) => return psfw_exact(n),
        (Family::Psfw, ExactMethod::Closed) => psfw_closed_form(n)?,
        (Family::Sierpinski, ExactMethod::Closed) => sierpinski_closed_form(n)?,
        (Family::Sierpinski, ExactMethod::Recursion) => {
            return Err(Error::InvalidConfig(
                "the recursion is only available for psfw; use the closed method".into(),
            ))
        }
    };
    let two_n = two_n(n);
    Ok(ExactCoherence {
        generation: n,
        s: &h_fo * &two_n,
        t: &h_so * &two_n,
        h_fo,
        h_so,
    })
}

/// Default route: the recursion for the PSFW, the closed form for the gasket.
pub fn default_method(family: Family) -> ExactMethod {
    match family {
        Family::Psfw => ExactMethod::Recursion,
        Family::Sierpinski => ExactMethod::Closed,
    }
}

/// Leading-order large-`N` behavior:
///
/// | family     | first order                | second order                  |
/// |------------|----------------------------|-------------------------------|
/// | PSFW       | `25/84`                    | `25/432 N^(log_3 4 - 1)`      |
/// | Sierpinski | `7/90 N^(log_3 5 - 1)`     | `1/450 N^(log_3 25 - 1)`      |
pub fn asymptote(family: Family, order: Order, n_vertices: f64) -> f64 {
    let log3 = |x: f64| x.ln() / 3f64.ln();
    match (family, order) {
        (Family::Psfw, Order::First) => 25.0 / 84.0,
        (Family::Psfw, Order::Second) => 25.0 / 432.0 * n_vertices.powf(log3(4.0) - 1.0),
        (Family::Sierpinski, Order::First) => 7.0 / 90.0 * n_vertices.powf(log3(5.0) - 1.0),
        (Family::Sierpinski, Order::Second) => 1.0 / 450.0 * n_vertices.powf(log3(25.0) - 1.0),
    }
}

/// Exponent of `N` in [`asymptote`].
pub fn asymptotic_exponent(family: Family, order: Order) -> f64 {
    let log3 = |x: f64| x.ln() / 3f64.ln();
    match (family, order) {
        (Family::Psfw, Order::First) => 0.0,
        (Family::Psfw, Order::Second) => log3(4.0) - 1.0,
        (Family::Sierpinski, Order::First) => log3(5.0) - 1.0,
        (Family::Sierpinski, Order::Second) => log3(25.0) - 1.0,
    }
}
