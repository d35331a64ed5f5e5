//! Characteristic-polynomial recursion for the PSFW.
//!
//! With `P_n(l) = det(L_n - l I)`, `Q_n` the minor with one hub removed, `R_n`
//! the minor with two hubs removed and `X_n` the off-diagonal cofactor for a
//! pair of hubs:
//!
//! ```text
//! P' = 2Q^3 + 6PQR + 9lQ^2R + 3lPR^2 + 6l^2QR^2 + l^3R^3 + 2X^3
//! Q' = 3Q^2R + PR^2 + 4lQR^2 + l^2R^3
//! R' = 2R^2Q + lR^3
//! X' = 2QRX + lR^2X - RX^2
//! ```
//!
//! Only the lowest coefficients are needed for the reciprocal eigenvalue
//! sums, so every polynomial is truncated after `l^3`, and `P` is carried as
//! `p = P / l`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::{determinant, TruncPoly};
use crate::error::{Error, Result};

/// Largest generation for the unnormalized chain; its coefficients have on
/// the order of `3^n` bits.
pub const RAW_MAX_GENERATION: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQuad {
    pub generation: u32,
    /// `P_n / l`; only the first three coefficients are meaningful.
    pub p: TruncPoly,
    pub q: TruncPoly,
    pub r: TruncPoly,
    pub x: TruncPoly,
}

/// Generation 0 from the triangle: `P` is the determinant of `L - l I`, `Q`
/// deletes hub 0, `R` deletes hubs 0 and 1, and `X` deletes row 0 and
/// column 1.
pub fn seed_polyquad() -> PolyQuad {
    let diag = TruncPoly::from_integers([2, -1, 0, 0]);
    let off = TruncPoly::constant(-1);
    let m: Vec<Vec<TruncPoly>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| if i == j { diag.clone() } else { off.clone() })
                .collect()
        })
        .collect();
    let sub = |rows: &[usize], cols: &[usize]| -> Vec<Vec<TruncPoly>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
            .collect()
    };
    PolyQuad {
        generation: 0,
        p: determinant(&m).shift_down(),
        q: determinant(&sub(&[1, 2], &[1, 2])),
        r: determinant(&sub(&[2], &[2])),
        x: determinant(&sub(&[1, 2], &[0, 2])),
    }
}

/// One exact step `n -> n + 1` without rescaling.
pub fn recursion_step(pq: &PolyQuad) -> Result<PolyQuad> {
    let PolyQuad { p, q, r, x, .. } = pq;
    let big_p = p.shift_up(1);
    let q2 = q * q;
    let r2 = r * r;
    let r3 = &r2 * r;
    let qr = q * r;
    let qr2 = q * &r2;

    let next_big_p = [
        (&q2 * q).scale_int(2),
        (&big_p * &qr).scale_int(6),
        (&q2 * r).scale_int(9).shift_up(1),
        (&big_p * &r2).scale_int(3).shift_up(1),
        qr2.scale_int(6).shift_up(2),
        r3.shift_up(3),
        x.pow(3).scale_int(2),
    ]
    .iter()
    .fold(TruncPoly::zero(), |acc, t| &acc + t);
    let next_q = [
        (&q2 * r).scale_int(3),
        &big_p * &r2,
        qr2.scale_int(4).shift_up(1),
        r3.shift_up(2),
    ]
    .iter()
    .fold(TruncPoly::zero(), |acc, t| &acc + t);
    let next_r = &(&r2 * q).scale_int(2) + &r3.shift_up(1);
    let next_x = &(&(&qr * x).scale_int(2) + &(&r2 * x).shift_up(1)) - &(r * &(x * x));

    let generation = pq.generation + 1;
    if !next_big_p.coeff(0).is_zero() {
        return Err(Error::RecursionInconsistency {
            generation,
            detail: format!(
                "characteristic polynomial has constant term {}",
                next_big_p.coeff(0)
            ),
        });
    }
    let next_p = next_big_p.shift_down();
    if next_p.coeff(0).is_zero() {
        return Err(Error::RecursionInconsistency {
            generation,
            detail: "zero eigenvalue is not simple".into(),
        });
    }
    Ok(PolyQuad {
        generation,
        p: next_p,
        q: next_q,
        r: next_r,
        x: next_x,
    })
}

/// Divides all four polynomials by `r.c0`. The step is homogeneous of degree
/// three, so this leaves every coefficient ratio unchanged.
pub fn normalize(pq: &PolyQuad) -> PolyQuad {
    let r0 = pq.r.coeff(0);
    if r0.is_zero() {
        return pq.clone();
    }
    let k = r0.abs().recip();
    PolyQuad {
        generation: pq.generation,
        p: pq.p.scale(&k),
        q: pq.q.scale(&k),
        r: pq.r.scale(&k),
        x: pq.x.scale(&k),
    }
}

/// Generation `n` with rescaling after every step; suitable for any `n`.
pub fn polyquad_at(n: u32) -> Result<PolyQuad> {
    let mut pq = seed_polyquad();
    for _ in 0..n {
        pq = normalize(&recursion_step(&pq)?);
    }
    Ok(pq)
}

/// Generation `n` with the true coefficients of `P_n / l, Q_n, R_n, X_n`.
pub fn raw_polyquad_at(n: u32) -> Result<PolyQuad> {
    if n > RAW_MAX_GENERATION {
        return Err(Error::GenerationTooLarge {
            n,
            limit: RAW_MAX_GENERATION,
        });
    }
    let mut pq = seed_polyquad();
    for _ in 0..n {
        pq = recursion_step(&pq)?;
    }
    Ok(pq)
}

/// `(S_n, T_n)` from the lowest coefficients of `P_n / l`:
/// `S = -p1/p0`, `T = S^2 - 2 p2/p0`.
pub fn vieta_sums(p: &TruncPoly) -> Option<(BigRational, BigRational)> {
    let p0 = p.coeff(0);
    if p0.is_zero() {
        return None;
    }
    let s = -(p.coeff(1) / p0);
    let t = &s * &s - (p.coeff(2) / p0) * BigRational::from_integer(2.into());
    Some((s, t))
}
