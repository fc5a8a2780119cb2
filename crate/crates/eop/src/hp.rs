//! High-precision floating-point cross-validation layer.
//!
//! Exact identities are additionally spot-checked numerically: every
//! quasi-polynomial can be evaluated to (well beyond) 50 significant
//! digits, derivatives are compared against central finite differences,
//! and orthogonality integrals are computed with high-order
//! Gauss-Legendre quadrature. Numerical evaluation requires every factor
//! base to be positive at the evaluation point; fractional powers stay
//! formal everywhere else.

use crate::error::{Error, Result};
use crate::exact::{Poly, QuasiPoly, Rational};
use astro_float::{BigFloat, Consts, RoundingMode, Sign as FpSign};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits; about 115 decimal digits, leaving
/// generous guard digits over the 50 the checks require.
pub const DEFAULT_PREC_BITS: usize = 384;

/// Evaluation context carrying precision and the constants cache.
pub struct HpCtx {
    prec: usize,
    cc: Consts,
}

impl HpCtx {
    pub fn new(prec_bits: usize) -> Self {
        HpCtx {
            prec: prec_bits,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn default_prec() -> Self {
        HpCtx::new(DEFAULT_PREC_BITS)
    }

    pub fn prec_bits(&self) -> usize {
        self.prec
    }

    pub fn from_bigint(&self, n: &BigInt) -> BigFloat {
        let neg = n.is_negative();
        let limbs = n.magnitude().to_u64_digits();
        if limbs.is_empty() {
            return BigFloat::from_i64(0, self.prec);
        }
        // working precision large enough to hold the integer exactly
        let wp = (limbs.len() * 64 + 64).max(self.prec);
        let two32 = BigFloat::from_u64(1 << 32, wp);
        let two64 = two32.mul(&two32, wp, RM);
        let mut acc = BigFloat::from_u64(*limbs.last().expect("nonempty"), wp);
        for limb in limbs.iter().rev().skip(1) {
            acc = acc
                .mul(&two64, wp, RM)
                .add(&BigFloat::from_u64(*limb, wp), wp, RM);
        }
        acc.set_precision(self.prec, RM).expect("precision");
        if neg {
            acc.inv_sign();
        }
        acc
    }

    pub fn from_rational(&self, r: &Rational) -> BigFloat {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        num.div(&den, self.prec, RM)
    }

    pub fn from_i64(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.prec)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    /// `base^e` for positive base and rational exponent.
    pub fn pow_rational(&mut self, base: &BigFloat, e: &Rational) -> BigFloat {
        if e.is_zero() {
            return self.from_i64(1);
        }
        if e.is_integer() {
            if let Some(k) = e.numer().to_i64() {
                let p = base.powi(k.unsigned_abs() as usize, self.prec, RM);
                return if k < 0 {
                    p.reciprocal(self.prec, RM)
                } else {
                    p
                };
            }
        }
        let ef = self.from_rational(e);
        base.pow(&ef, self.prec, RM, &mut self.cc)
    }

    pub fn eval_poly(&self, p: &Poly, z: &BigFloat) -> BigFloat {
        let mut acc = self.from_i64(0);
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, z), &self.from_rational(c));
        }
        acc
    }

    /// Evaluate a quasi-polynomial at a rational point with the domain
    /// check done exactly: every factor base must be strictly positive.
    pub fn eval_quasi(&mut self, f: &QuasiPoly, z: &Rational) -> Result<BigFloat> {
        for fac in f.factors() {
            let base = match fac.orientation {
                crate::exact::Sign::Plus => z - &fac.root,
                crate::exact::Sign::Minus => &fac.root - z,
            };
            if !base.is_positive() {
                return Err(Error::DomainViolation {
                    base: fac
                        .render_base_for_error()
                        .unwrap_or_else(|| "factor".into()),
                    point: crate::exact::rat_to_string(z),
                });
            }
        }
        let zf = self.from_rational(z);
        Ok(self.eval_quasi_unchecked(f, &zf))
    }

    /// Evaluate at a float point; bases are checked in float arithmetic.
    pub fn eval_quasi_float(&mut self, f: &QuasiPoly, z: &BigFloat) -> Result<BigFloat> {
        for fac in f.factors() {
            let root = self.from_rational(&fac.root);
            let base = match fac.orientation {
                crate::exact::Sign::Plus => self.sub(z, &root),
                crate::exact::Sign::Minus => self.sub(&root, z),
            };
            if !base.is_positive() {
                return Err(Error::DomainViolation {
                    base: fac
                        .render_base_for_error()
                        .unwrap_or_else(|| "factor".into()),
                    point: format!("{z:?}"),
                });
            }
        }
        Ok(self.eval_quasi_unchecked(f, z))
    }

    fn eval_quasi_unchecked(&mut self, f: &QuasiPoly, zf: &BigFloat) -> BigFloat {
        if f.is_zero() {
            return self.from_i64(0);
        }
        let mut acc = self.eval_poly(f.poly(), zf);
        if !f.exp_rate().is_zero() {
            let lam = self.from_rational(f.exp_rate());
            let e = self.mul(&lam, zf).exp(self.prec, RM, &mut self.cc);
            acc = self.mul(&acc, &e);
        }
        for fac in f.factors() {
            let root = self.from_rational(&fac.root);
            let base = match fac.orientation {
                crate::exact::Sign::Plus => self.sub(zf, &root),
                crate::exact::Sign::Minus => self.sub(&root, zf),
            };
            let powed = self.pow_rational(&base, &fac.exponent);
            acc = self.mul(&acc, &powed);
        }
        acc
    }

    /// Central finite difference `(f(z+h) - f(z-h)) / (2h)` with
    /// `h = 10^h_exp10`.
    pub fn central_difference(
        &mut self,
        f: &QuasiPoly,
        z: &Rational,
        h_exp10: i32,
    ) -> Result<BigFloat> {
        let h = self.pow10(h_exp10);
        let zf = self.from_rational(z);
        let hi = self.add(&zf, &h);
        let lo = self.sub(&zf, &h);
        let fhi = self.eval_quasi_float(f, &hi)?;
        let flo = self.eval_quasi_float(f, &lo)?;
        let num = self.sub(&fhi, &flo);
        let den = self.add(&h, &h);
        Ok(self.div(&num, &den))
    }

    pub fn pow10(&mut self, e: i32) -> BigFloat {
        let ten = self.from_i64(10);
        let p = ten.powi(e.unsigned_abs() as usize, self.prec, RM);
        if e < 0 {
            p.reciprocal(self.prec, RM)
        } else {
            p
        }
    }

    /// Relative difference `|a - b| / max(|a|, |b|)`; falls back to the
    /// absolute difference when both magnitudes are below 1.
    pub fn rel_diff(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        let diff = self.sub(a, b).abs();
        let scale = a.abs().max(&b.abs());
        let one = self.from_i64(1);
        if scale.cmp(&one).unwrap_or(0) < 0 {
            diff
        } else {
            self.div(&diff, &scale)
        }
    }

    /// `|x| < 10^exp10`?
    pub fn below_pow10(&mut self, x: &BigFloat, exp10: i32) -> bool {
        let bound = self.pow10(exp10);
        x.abs().cmp(&bound).map(|c| c < 0).unwrap_or(false)
    }

    /// Gauss-Legendre nodes and weights on (-1, 1).
    pub fn gauss_legendre(&mut self, n: usize) -> (Vec<BigFloat>, Vec<BigFloat>) {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let one = self.from_i64(1);
        for i in 1..=n {
            // f64 seed, then Newton in high precision
            let seed =
                (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut x = BigFloat::from_f64(seed, self.prec);
            for _ in 0..64 {
                let (pn, dpn) = self.legendre_pair(n, &x);
                let step = self.div(&pn, &dpn);
                let next = self.sub(&x, &step);
                let done = step
                    .abs()
                    .cmp(&self.pow10(-(self.prec as i32 / 4)))
                    .map(|c| c <= 0)
                    .unwrap_or(true);
                x = next;
                if done {
                    break;
                }
            }
            let (_, dpn) = self.legendre_pair(n, &x);
            let x2 = self.mul(&x, &x);
            let denom = self.mul(&self.sub(&one, &x2), &self.mul(&dpn, &dpn));
            let w = self.div(&self.from_i64(2), &denom);
            nodes.push(x);
            weights.push(w);
        }
        (nodes, weights)
    }

    /// `(P_n(x), P_n'(x))` by the three-term recurrence.
    fn legendre_pair(&self, n: usize, x: &BigFloat) -> (BigFloat, BigFloat) {
        let mut p_prev = self.from_i64(1);
        let mut p = x.clone();
        if n == 0 {
            return (p_prev, self.from_i64(0));
        }
        for k in 1..n {
            let kf = self.from_i64(k as i64);
            let k1f = self.from_i64((k + 1) as i64);
            let two_k1 = self.from_i64((2 * k + 1) as i64);
            let next = self.div(
                &self.sub(
                    &self.mul(&self.mul(&two_k1, x), &p),
                    &self.mul(&kf, &p_prev),
                ),
                &k1f,
            );
            p_prev = p;
            p = next;
        }
        // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
        let nf = self.from_i64(n as i64);
        let num = self.mul(&nf, &self.sub(&self.mul(x, &p), &p_prev));
        let den = self.sub(&self.mul(x, x), &self.from_i64(1));
        let dp = self.div(&num, &den);
        (p, dp)
    }

    /// Short decimal rendering for reports (round-trip is not required).
    pub fn to_decimal_string(&mut self, x: &BigFloat, digits: usize) -> String {
        let mut v = x.clone();
        let bits = (digits as f64 * 3.33).ceil() as usize + 8;
        let _ = v.set_precision(bits.min(self.prec), RM);
        format!("{v}")
    }
}

impl crate::exact::FactorSpec {
    fn render_base_for_error(&self) -> Option<String> {
        Some(match self.orientation {
            crate::exact::Sign::Plus => {
                format!("(z - {})", crate::exact::rat_to_string(&self.root))
            }
            crate::exact::Sign::Minus => {
                format!("({} - z)", crate::exact::rat_to_string(&self.root))
            }
        })
    }
}

/// Convenience wrapper: sign of a BigFloat as -1/0/+1.
pub fn float_sign(x: &BigFloat) -> i32 {
    match x.sign() {
        Some(FpSign::Pos) if !x.is_zero() => 1,
        Some(FpSign::Neg) => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, FactorSpec, Sign};

    #[test]
    fn eval_examples() {
        let mut ctx = HpCtx::default_prec();
        // poly z^2 at 2 -> 4
        let f = QuasiPoly::from_poly(Poly::monomial(rat_int(1), 2));
        let v = ctx.eval_quasi(&f, &rat_int(2)).unwrap();
        assert!(ctx.below_pow10(&ctx.sub(&v, &ctx.from_i64(4)), -100));
        // (1-z)^{1/2} at 3/4 -> 1/2
        let g = QuasiPoly::with_factor(
            FactorSpec::new(rat_int(1), Sign::Minus, rat(1, 2)),
            Poly::one(),
        );
        let v = ctx.eval_quasi(&g, &rat(3, 4)).unwrap();
        let half = ctx.from_rational(&rat(1, 2));
        assert!(ctx.below_pow10(&ctx.sub(&v, &half), -100));
        // exp(-z/2) * z at 0 -> 0
        let h = QuasiPoly::new(rat(-1, 2), vec![], Poly::var()).unwrap();
        let v = ctx.eval_quasi(&h, &rat_int(0)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn domain_violation_detected() {
        let mut ctx = HpCtx::default_prec();
        let g = QuasiPoly::with_factor(
            FactorSpec::new(rat_int(1), Sign::Minus, rat(1, 2)),
            Poly::one(),
        );
        assert!(matches!(
            ctx.eval_quasi(&g, &rat_int(2)),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn derivative_matches_central_difference() {
        let mut ctx = HpCtx::default_prec();
        // f = exp(-3z/2) (z-1)^{5/2} (3z^2+1)
        let f = QuasiPoly::new(
            rat(-3, 2),
            vec![FactorSpec::new(rat_int(1), Sign::Plus, rat(5, 2))],
            Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(3)]),
        )
        .unwrap();
        let df = f.derivative();
        let z = rat(9, 4);
        let exact = ctx.eval_quasi(&df, &z).unwrap();
        let approx = ctx.central_difference(&f, &z, -25).unwrap();
        let rel = ctx.rel_diff(&exact, &approx);
        assert!(ctx.below_pow10(&rel, -20), "rel diff too large: {rel:?}");
    }

    #[test]
    fn quadrature_integrates_polynomials() {
        let mut ctx = HpCtx::new(256);
        let (nodes, weights) = ctx.gauss_legendre(24);
        // integral of z^4 over (-1,1) = 2/5
        let mut acc = ctx.from_i64(0);
        for (x, w) in nodes.iter().zip(&weights) {
            let v = x.powi(4, ctx.prec, RM);
            acc = ctx.add(&acc, &ctx.mul(w, &v));
        }
        let expect = ctx.from_rational(&rat(2, 5));
        let rel = ctx.rel_diff(&acc, &expect);
        assert!(ctx.below_pow10(&rel, -60), "quadrature off: {rel:?}");
    }

    #[test]
    fn bigint_conversion_is_exact() {
        let ctx = HpCtx::new(256);
        let n: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let f = ctx.from_bigint(&n);
        let back = ctx.from_bigint(&-&n);
        assert!(f.add_full_prec(&back).is_zero());
    }
}
