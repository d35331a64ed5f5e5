use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Number of retained coefficients; everything from `lambda^4` up is dropped.
pub const TRUNCATION: usize = 4;

/// Polynomial in `lambda` truncated after the cubic term, with exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly {
    coeffs: [BigRational; TRUNCATION],
}

impl TruncPoly {
    pub fn new(coeffs: [BigRational; TRUNCATION]) -> Self {
        Self { coeffs }
    }

    pub fn from_integers(coeffs: [i64; TRUNCATION]) -> Self {
        Self {
            coeffs: coeffs.map(|c| BigRational::from_integer(BigInt::from(c))),
        }
    }

    pub fn zero() -> Self {
        Self::from_integers([0; TRUNCATION])
    }

    pub fn constant(c: i64) -> Self {
        Self::from_integers([c, 0, 0, 0])
    }

    /// The monomial `lambda`.
    pub fn lambda() -> Self {
        Self::from_integers([0, 1, 0, 0])
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational; TRUNCATION] {
        &self.coeffs
    }

    /// Multiplication by `lambda^k`, truncated.
    pub fn shift_up(&self, k: usize) -> Self {
        Self {
            coeffs: std::array::from_fn(|i| {
                if i >= k {
                    self.coeffs[i - k].clone()
                } else {
                    BigRational::zero()
                }
            }),
        }
    }

    /// Division by `lambda`, discarding the constant term; the top coefficient
    /// becomes 0 because the term it needs was truncated away.
    pub fn shift_down(&self) -> Self {
        Self {
            coeffs: std::array::from_fn(|i| {
                self.coeffs
                    .get(i + 1)
                    .cloned()
                    .unwrap_or_else(BigRational::zero)
            }),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] * k),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl Add for &TruncPoly {
    type Output = TruncPoly;
    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        TruncPoly {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]),
        }
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;
    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        TruncPoly {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]),
        }
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly {
            coeffs: std::array::from_fn(|i| -&self.coeffs[i]),
        }
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;
    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        let mut coeffs: [BigRational; TRUNCATION] = std::array::from_fn(|_| BigRational::zero());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..TRUNCATION - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncPoly { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for TruncPoly {
            type Output = TruncPoly;
            fn $method(self, rhs: TruncPoly) -> TruncPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => f.write_str("l")?,
                1 => write!(f, "({c})l")?,
                _ => write!(f, "({c})l^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Determinant by cofactor expansion along the first row. Fine for the 3x3
/// seed matrices; exponential in general.
pub fn determinant(m: &[Vec<TruncPoly>]) -> TruncPoly {
    match m.len() {
        0 => TruncPoly::constant(1),
        1 => m[0][0].clone(),
        n => {
            let mut acc = TruncPoly::zero();
            for col in 0..n {
                let minor: Vec<Vec<TruncPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor);
                acc = if col % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_truncates() {
        let a = TruncPoly::from_integers([1, 1, 0, 0]);
        // (1 + l)^4 = 1 + 4l + 6l^2 + 4l^3 + l^4
        assert_eq!(a.pow(4), TruncPoly::from_integers([1, 4, 6, 4]));
        let b = TruncPoly::from_integers([0, 0, 1, 1]);
        assert_eq!(&b * &b, TruncPoly::zero());
    }

    #[test]
    fn shifts() {
        let a = TruncPoly::from_integers([1, 2, 3, 4]);
        assert_eq!(a.shift_up(1), TruncPoly::from_integers([0, 1, 2, 3]));
        assert_eq!(a.shift_up(3), TruncPoly::from_integers([0, 0, 0, 1]));
        assert_eq!(a.shift_down(), TruncPoly::from_integers([2, 3, 4, 0]));
        assert_eq!(&a * &TruncPoly::lambda(), a.shift_up(1));
    }

    #[test]
    fn ring_identities() {
        let a = TruncPoly::from_integers([3, -1, 2, 5]);
        let b = TruncPoly::from_integers([-2, 7, 0, 1]);
        let c = TruncPoly::from_integers([1, 1, -4, 2]);
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a - &b) + &b, a);
        assert_eq!(-&(-&a), a);
    }

    #[test]
    fn determinant_of_triangle_laplacian() {
        let d = TruncPoly::from_integers([2, -1, 0, 0]);
        let o = TruncPoly::constant(-1);
        let m = vec![
            vec![d.clone(), o.clone(), o.clone()],
            vec![o.clone(), d.clone(), o.clone()],
            vec![o.clone(), o.clone(), d.clone()],
        ];
        assert_eq!(determinant(&m), TruncPoly::from_integers([0, -9, 6, -1]));
    }

    #[test]
    fn display() {
        assert_eq!(
            TruncPoly::from_integers([-9, 6, -1, 0]).to_string(),
            "-9 + (6)l + (-1)l^2"
        );
        assert_eq!(TruncPoly::zero().to_string(), "0");
    }
}
