//! Univariate polynomials with exact rational coefficients.

use super::{rat_to_string, Rational};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `z^k`.
/// The zero polynomial is the empty list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `z`.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `c * z^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `s*z + t`.
    pub fn linear(s: Rational, t: Rational) -> Self {
        Poly::from_coeffs(vec![t, s])
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute `z -> s*z`, i.e. `p(s*z)`.
    pub fn compose_scale(&self, s: &Rational) -> Poly {
        let mut pow = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &pow;
                pow = &pow * s;
                out
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Synthetic division by `(z - a)`: returns `(quotient, remainder)`
    /// with `self = (z - a) * quotient + remainder`.
    pub fn div_rem_linear(&self, a: &Rational) -> (Poly, Rational) {
        if self.is_zero() {
            return (Poly::zero(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (0..n).rev() {
            let val = &self.coeffs[k] + &carry * a;
            if k == 0 {
                return (Poly::from_coeffs(quot), val);
            }
            quot[k - 1] = val.clone();
            carry = val;
        }
        unreachable!()
    }

    /// Exact division by `(z - a)`; `None` if the remainder is nonzero.
    pub fn div_linear_exact(&self, a: &Rational) -> Option<Poly> {
        let (q, r) = self.div_rem_linear(a);
        r.is_zero().then_some(q)
    }

    /// Render with an explicit variable name, highest degree first.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let mag_str = rat_to_string(&mag);
            match k {
                0 => out.push_str(&mag_str),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag_str);
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

use num_traits::Signed;

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2]); // 1 + 2z
        let b = p(&[-1, 1]); // z - 1
        assert_eq!(&a * &b, p(&[-1, -1, 2]));
        assert_eq!(&a + &b, p(&[0, 3]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(a.eval(&rat_int(2)), rat_int(5));
    }

    #[test]
    fn derivative_and_scale() {
        let q = p(&[4, 0, 3]); // 3z^2 + 4
        assert_eq!(q.derivative(), p(&[0, 6]));
        assert_eq!(q.compose_scale(&rat(1, 2)), Poly::from_coeffs(vec![
            rat_int(4),
            rat_int(0),
            rat(3, 4),
        ]));
    }

    #[test]
    fn linear_division() {
        let q = p(&[4, -4, 1]); // (z-2)^2
        let (quot, rem) = q.div_rem_linear(&rat_int(2));
        assert_eq!(quot, p(&[-2, 1]));
        assert!(rem.is_zero());
        assert!(q.div_linear_exact(&rat_int(3)).is_none());
    }

    #[test]
    fn rendering() {
        let q = Poly::from_coeffs(vec![rat(3, 2), rat(-1, 2)]);
        assert_eq!(q.to_string_var("y"), "-1/2*y + 3/2");
        assert_eq!(Poly::zero().to_string_var("x"), "0");
        assert_eq!(p(&[0, 0, 1]).to_string_var("x"), "x^2");
    }
}
