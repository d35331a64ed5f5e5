//! Closed-form expressions for the lowest recursion coefficients and for the
//! coherence of both fractal families.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::{Error, Result};

/// Largest generation [`closed_coeffs`] evaluates; the prefactors have on the
/// order of `3^n` bits.
pub const CLOSED_MAX_GENERATION: u32 = 12;

/// Coefficients of `l^0..l^2` in `P_n / l`, `Q_n`, `R_n` and `X_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedCoefficients {
    pub generation: u32,
    pub p: [BigRational; 3],
    pub q: [BigRational; 3],
    pub r: [BigRational; 3],
    pub x: [BigRational; 3],
}

fn big(b: i64, e: u32) -> BigInt {
    BigInt::from(b).pow(e)
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `2^(e2/4) * 3^(e3/4)`, refusing exponents that are not whole.
fn quarter_powers(n: u32, e2: i64, e3: i64) -> Result<BigRational> {
    let mut out = BigRational::from_integer(int(1));
    for (base, num) in [(2, e2), (3, e3)] {
        if num % 4 != 0 {
            return Err(Error::ClosedFormExponent {
                n,
                detail: format!("exponent of {base} is {num}/4"),
            });
        }
        let e = i32::try_from(num / 4).map_err(|_| Error::GenerationTooLarge {
            n,
            limit: CLOSED_MAX_GENERATION,
        })?;
        out *= BigRational::from_integer(int(base)).pow(e);
    }
    Ok(out)
}

fn frac(num: BigInt, den: i64) -> BigRational {
    BigRational::new(num, int(den))
}

pub fn closed_coeffs(n: u32) -> Result<ClosedCoefficients> {
    if n > CLOSED_MAX_GENERATION {
        return Err(Error::GenerationTooLarge {
            n,
            limit: CLOSED_MAX_GENERATION,
        });
    }
    let t = 3i64.pow(n + 1);
    let m = i64::from(n);
    let qp = |e2: i64, e3: i64| quarter_powers(n, e2, e3);

    let p0 = -qp(-7 + t - 2 * m, 5 + t + 2 * m)? * frac(int(1) + big(3, n), 1);
    let q0 = qp(-3 + t - 2 * m, 1 + t + 2 * m)?;
    let r0 = qp(1 + t + 2 * m, -3 + t - 2 * m)?;
    let x0 = -q0.clone();

    let p1 = qp(-15 + t - 2 * m, 1 + t - 2 * m)?
        * frac(
            25 * big(2, n) - 7 * big(3, n)
                + 8 * big(3, 1 + 2 * n)
                + 25 * big(3, 1 + 3 * n)
                + 5 * big(6, 1 + n)
                - 35 * big(18, n),
            7,
        );
    let q1 = qp(-11 + t - 2 * m, -3 + t - 2 * m)?
        * frac(
            -11 * big(2, 2 + n) + 7 * big(3, n) - 25 * big(3, 1 + 2 * n),
            7,
        );
    let r1 = qp(-7 + t + 2 * m, -7 + t - 6 * m)?
        * frac(
            3 * big(2, 2 + n) - 25 * big(3, 1 + 2 * n) + 7 * big(3, n) * (big(2, 2 + n) - 1),
            7,
        );
    let x1 = qp(-11 + t - 2 * m, -3 + t - 2 * m)?
        * frac(
            big(2, 1 + n) - 7 * big(3, n) + 25 * big(3, 1 + 2 * n) - 7 * big(6, 1 + n),
            7,
        );

    let p2 = qp(-27 + t - 2 * m, -7 + t - 6 * m)?
        * frac(
            -41 * big(2, 7 + 2 * n) * big(3, 1 + n) - 9775 * big(2, 1 + n) * big(3, 3 + 2 * n)
                + 129283 * big(3, 1 + 3 * n)
                - 71875 * big(3, 3 + 5 * n)
                + 9039 * big(4, 2 + n)
                - 20125 * big(6, 1 + n)
                + 93541 * big(9, n)
                + 79373 * big(4, 2 + n) * big(9, n)
                + 147163 * big(9, 1 + 2 * n)
                + 100625 * big(2, 1 + n) * big(9, 1 + 2 * n)
                - 64975 * big(54, 1 + n),
            5635,
        );
    let q2 = qp(-23 + t - 2 * m, -11 + t - 6 * m)?
        * frac(
            8855 * big(2, 3 + n) * big(3, 1 + n) - 1127 * big(2, 7 + 2 * n) * big(3, 1 + n)
                + 71875 * big(3, 3 + 4 * n)
                - 18819 * big(4, 2 + n)
                - 93541 * big(9, n)
                - 61985 * big(4, 2 + n) * big(9, n)
                + 31625 * big(2, 3 + n) * big(9, 1 + n)
                - 36596 * big(27, 1 + n),
            5635,
        );
    let r2 = qp(-19 + t + 2 * m, -15 + t - 10 * m)?
        * frac(
            18873 * big(2, 3 + 2 * n) + 161 * big(2, 4 + 2 * n) * big(3, 3 + n)
                - 115 * big(2, 9 + n) * big(3, 1 + 2 * n)
                - 29288 * big(3, 2 + 3 * n)
                - 20125 * big(2, 3 + n) * big(3, 2 + 3 * n)
                + 71875 * big(3, 3 + 4 * n)
                - 805 * big(6, 3 + n)
                + 127351 * big(9, n)
                - 28175 * big(2, 3 + 2 * n) * big(9, n),
            5635,
        );
    let x2 = qp(-23 + t - 2 * m, -11 + t - 6 * m)?
        * frac(
            1413 * big(2, 3 + 2 * n) - 805 * big(2, 2 + n) * big(3, 1 + n)
                + 1771 * big(2, 4 + 2 * n) * big(3, 1 + n)
                - 71875 * big(3, 3 + 4 * n)
                + 93541 * big(9, n)
                - 28175 * big(2, 3 + 2 * n) * big(9, n)
                - 8165 * big(2, 4 + n) * big(9, 1 + n)
                + 36596 * big(27, 1 + n)
                + 20125 * big(2, 2 + n) * big(27, 1 + n),
            5635,
        );

    Ok(ClosedCoefficients {
        generation: n,
        p: [p0, p1, p2],
        q: [q0, q1, q2],
        r: [r0, r1, r2],
        x: [x0, x1, x2],
    })
}

fn theorem_domain(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::OutsideTheoremDomain { n })
    } else {
        Ok(())
    }
}

/// First- and second-order coherence of the PSFW `G_n`, `n >= 1`.
pub fn psfw_closed_form(n: u32) -> Result<(BigRational, BigRational)> {
    theorem_domain(n)?;
    let one_plus = |e: u32| (int(1) + big(3, n)).pow(e);

    let fo_num = 25 * big(2, n) - 7 * big(3, n)
        + 8 * big(3, 1 + 2 * n)
        + 25 * big(3, 1 + 3 * n)
        + 5 * big(6, 1 + n)
        - 35 * big(18, n);
    let fo_den = 28 * one_plus(2) * big(3, 2 + n);

    let so_num = 69538 * big(3, 2 + 5 * n)
        + 360249 * big(4, n)
        + 35 * big(2, 2 + n) * big(3, 1 + n) * (1539 * big(2, n) - 575)
        + 322 * big(27, n) * (int(1135) - 3225 * big(2, 1 + n) + 847 * big(2, 1 + 2 * n))
        + big(3, 1 + 4 * n) * (int(516262) - 60375 * big(2, 2 + n) + 140875 * big(4, n))
        + 2 * big(9, n) * (int(55223) - 94875 * big(2, 1 + n) + 480487 * big(4, n));
    let so_den = 90160 * one_plus(3) * big(3, 4 + 2 * n);

    Ok((
        BigRational::new(fo_num, fo_den),
        BigRational::new(so_num, so_den),
    ))
}

/// First- and second-order coherence of the Sierpinski gasket `S_n`, `n >= 1`.
pub fn sierpinski_closed_form(n: u32) -> Result<(BigRational, BigRational)> {
    theorem_domain(n)?;
    let one_plus = |e: u32| (int(1) + big(3, n)).pow(e);

    let fo_num = 4 * big(3, n) + 2 * big(3, 1 + 2 * n) - big(3, 1 + 3 * n)
        + 13 * big(3, 1 + n) * big(5, n)
        + 4 * big(5, 1 + n)
        + 14 * big(45, n);
    let fo_den = 20 * big(3, 2 + n) * one_plus(2);

    let so_num = 86 * big(3, 1 + 4 * n) - 2 * big(3, 2 + 5 * n)
        + 754 * big(3, 1 + 2 * n) * big(5, n)
        + 568 * big(3, 1 + 3 * n) * big(5, n)
        + 32 * big(3, 2 + n) * big(5, 1 + 2 * n)
        + 119 * big(9, n)
        + 28 * big(5, n) * big(9, 1 + 2 * n)
        + 64 * big(15, 1 + n)
        + 8 * big(9, 1 + 2 * n) * big(25, n)
        + 24 * big(25, 1 + n)
        + 320 * big(27, n)
        + 1237 * big(225, n)
        + 394 * big(675, n);
    let so_den = 400 * one_plus(3) * big(9, 2 + n);

    Ok((
        BigRational::new(fo_num, fo_den),
        BigRational::new(so_num, so_den),
    ))
}
