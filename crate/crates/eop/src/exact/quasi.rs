//! Quasi-polynomials: `exp(lambda z) * prod_i base_i^{e_i} * poly(z)` with
//! `base_i = orientation_i * (z - root_i)` and rational exponents.
//!
//! This class is closed under differentiation, multiplication, and addition
//! on compatible supports, which is exactly what the separated
//! eigenfunctions and every ladder/shift operator of the model need.
//! Fractional powers are formal: algebraic rules apply symbolically and
//! numerical evaluation is restricted to regions where every base is
//! positive.
//!
//! Canonical form: the polynomial part does not vanish at any factor root
//! (integer content is absorbed into the exponent), roots are strictly
//! increasing, exponents are nonzero, and any scalar scale is folded into
//! the polynomial part. Equality is therefore structural.

use super::poly::Poly;
use super::{is_integer, rat_to_string, Rational};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Base orientation of a factor: `Plus` stores `(z - root)`, `Minus`
/// stores `(root - z)`. On a fixed domain the orientation is chosen so
/// the base is positive, e.g. `(1 - z)` and `(1 + z)` on `(-1, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn unit(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }
}

/// One factor `(orientation * (z - root))^exponent`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorSpec {
    pub root: Rational,
    pub orientation: Sign,
    pub exponent: Rational,
}

impl FactorSpec {
    pub fn new(root: Rational, orientation: Sign, exponent: Rational) -> Self {
        FactorSpec {
            root,
            orientation,
            exponent,
        }
    }

    /// The base as a degree-1 polynomial.
    fn base_poly(&self) -> Poly {
        match self.orientation {
            Sign::Plus => Poly::linear(Rational::one(), -self.root.clone()),
            Sign::Minus => Poly::linear(-Rational::one(), self.root.clone()),
        }
    }

    fn render(&self, var: &str) -> String {
        let base = self.base_poly().to_string_var(var);
        if self.exponent.is_one() {
            format!("({base})")
        } else {
            format!("({base})^({})", rat_to_string(&self.exponent))
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct QuasiPoly {
    exp_rate: Rational,
    factors: Vec<FactorSpec>,
    poly: Poly,
}

impl QuasiPoly {
    pub fn zero() -> Self {
        QuasiPoly {
            exp_rate: Rational::zero(),
            factors: Vec::new(),
            poly: Poly::zero(),
        }
    }

    pub fn one() -> Self {
        QuasiPoly::from_poly(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        QuasiPoly::from_poly(Poly::constant(c))
    }

    pub fn from_poly(poly: Poly) -> Self {
        QuasiPoly {
            exp_rate: Rational::zero(),
            factors: Vec::new(),
            poly,
        }
    }

    /// General constructor; canonicalizes. Same-root factors are merged
    /// (their exponents add) and must agree on orientation unless the
    /// folded exponent is an integer.
    pub fn new(
        exp_rate: Rational,
        factors: Vec<FactorSpec>,
        poly: Poly,
    ) -> Result<Self> {
        let mut qp = QuasiPoly {
            exp_rate,
            factors: Vec::new(),
            poly,
        };
        for f in factors {
            qp = qp.mul_factor(f)?;
        }
        qp.canonicalize();
        Ok(qp)
    }

    /// Single factor times a polynomial, a common construction shape.
    pub fn with_factor(factor: FactorSpec, poly: Poly) -> Self {
        QuasiPoly::new(Rational::zero(), vec![factor], poly)
            .expect("single factor cannot clash")
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn exp_rate(&self) -> &Rational {
        &self.exp_rate
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Exponent at `root`, zero if absent.
    pub fn exponent_at(&self, root: &Rational) -> Rational {
        self.factors
            .iter()
            .find(|f| &f.root == root)
            .map(|f| f.exponent.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn mul_factor(mut self, f: FactorSpec) -> Result<Self> {
        if f.exponent.is_zero() {
            return Ok(self);
        }
        match self.factors.iter_mut().find(|g| g.root == f.root) {
            None => {
                self.factors.push(f);
                Ok(self)
            }
            Some(g) => {
                if g.orientation == f.orientation {
                    g.exponent = &g.exponent + &f.exponent;
                } else if is_integer(&f.exponent) {
                    // (z-a)^k = (-1)^k (a-z)^k: fold the sign into poly
                    if f.exponent.numer().is_odd() {
                        self.poly = -&self.poly;
                    }
                    g.exponent = &g.exponent + &f.exponent;
                } else if is_integer(&g.exponent) {
                    if g.exponent.numer().is_odd() {
                        self.poly = -&self.poly;
                    }
                    g.exponent = &g.exponent + &f.exponent;
                    g.orientation = f.orientation;
                } else {
                    return Err(Error::OrientationClash {
                        root: rat_to_string(&f.root),
                    });
                }
                Ok(self)
            }
        }
    }

    /// Restore canonical form: drop zero exponents, absorb polynomial
    /// roots into factor exponents, sort by root, normalize zero.
    fn canonicalize(&mut self) {
        if self.poly.is_zero() {
            *self = QuasiPoly::zero();
            return;
        }
        self.factors.retain(|f| !f.exponent.is_zero());
        loop {
            let mut absorbed = false;
            for f in &mut self.factors {
                while let Some(q) = self.poly.div_linear_exact(&f.root) {
                    // poly = (z - root) * q = base * (orientation * q)
                    self.poly = match f.orientation {
                        Sign::Plus => q,
                        Sign::Minus => -q,
                    };
                    f.exponent = &f.exponent + Rational::one();
                    absorbed = true;
                }
            }
            if !absorbed {
                break;
            }
            self.factors.retain(|f| !f.exponent.is_zero());
        }
        self.factors.sort_by(|a, b| a.root.cmp(&b.root));
    }

    /// d/dz, exact. Each factor exponent drops by one and the polynomial
    /// part absorbs the product rule:
    /// `lambda*P*B + P'*B + sum_i e_i s_i P prod_{j!=i} base_j`
    /// where `B = prod_i base_i`.
    pub fn derivative(&self) -> QuasiPoly {
        if self.is_zero() {
            return QuasiPoly::zero();
        }
        let bases: Vec<Poly> = self.factors.iter().map(|f| f.base_poly()).collect();
        let full: Poly = bases
            .iter()
            .fold(Poly::one(), |acc, b| &acc * b);
        let mut new_poly = &self.poly.derivative() * &full;
        if !self.exp_rate.is_zero() {
            new_poly = &new_poly + &(&self.poly * &full).scale(&self.exp_rate);
        }
        for (i, f) in self.factors.iter().enumerate() {
            let mut partial = self.poly.scale(&(&f.exponent * f.orientation.unit()));
            for (j, b) in bases.iter().enumerate() {
                if j != i {
                    partial = &partial * b;
                }
            }
            new_poly = &new_poly + &partial;
        }
        let factors = self
            .factors
            .iter()
            .map(|f| {
                FactorSpec::new(
                    f.root.clone(),
                    f.orientation,
                    &f.exponent - Rational::one(),
                )
            })
            .collect();
        QuasiPoly::new(self.exp_rate.clone(), factors, new_poly)
            .expect("derivative preserves orientations")
    }

    pub fn nth_derivative(&self, n: u32) -> QuasiPoly {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.derivative();
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QuasiPoly {
        if c.is_zero() || self.is_zero() {
            return QuasiPoly::zero();
        }
        QuasiPoly {
            exp_rate: self.exp_rate.clone(),
            factors: self.factors.clone(),
            poly: self.poly.scale(c),
        }
    }

    pub fn neg(&self) -> QuasiPoly {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &QuasiPoly) -> Result<QuasiPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(QuasiPoly::zero());
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        QuasiPoly::new(
            &self.exp_rate + &other.exp_rate,
            factors,
            &self.poly * &other.poly,
        )
    }

    /// Multiply by a plain polynomial.
    pub fn mul_poly(&self, p: &Poly) -> QuasiPoly {
        self.mul(&QuasiPoly::from_poly(p.clone()))
            .expect("polynomial factor cannot clash")
    }

    /// Align two quasi-polynomials onto a shared factor support: returns
    /// `(exp_rate, common factors, poly_self, poly_other)` such that each
    /// operand equals `exp * common * poly`. Roots missing on one side are
    /// treated as exponent zero; every per-root exponent gap must be an
    /// integer, with integer-exponent factors re-oriented as needed.
    fn align(&self, other: &QuasiPoly) -> Result<(Rational, Vec<FactorSpec>, Poly, Poly)> {
        if self.exp_rate != other.exp_rate {
            return Err(Error::IncompatibleSupport {
                detail: format!(
                    "exponential rates differ: {} vs {}",
                    rat_to_string(&self.exp_rate),
                    rat_to_string(&other.exp_rate)
                ),
            });
        }
        let mut roots: Vec<Rational> = self
            .factors
            .iter()
            .chain(other.factors.iter())
            .map(|f| f.root.clone())
            .collect();
        roots.sort();
        roots.dedup();

        let mut common = Vec::new();
        let mut pa = self.poly.clone();
        let mut pb = other.poly.clone();
        for root in roots {
            let fa = self.factors.iter().find(|f| f.root == root);
            let fb = other.factors.iter().find(|f| f.root == root);
            let ea = fa.map(|f| f.exponent.clone()).unwrap_or_else(Rational::zero);
            let eb = fb.map(|f| f.exponent.clone()).unwrap_or_else(Rational::zero);
            let gap = &ea - &eb;
            if !is_integer(&gap) {
                return Err(Error::IncompatibleSupport {
                    detail: format!(
                        "exponent gap {} at root {} is not an integer",
                        rat_to_string(&gap),
                        rat_to_string(&root)
                    ),
                });
            }
            // Resolve orientation: prefer the orientation of a
            // fractional-exponent side; integer-exponent sides fold signs.
            let orient = match (fa, fb) {
                (Some(a), Some(b)) if a.orientation != b.orientation => {
                    if is_integer(&eb) {
                        if eb.numer().is_odd() {
                            pb = -&pb;
                        }
                        a.orientation
                    } else if is_integer(&ea) {
                        if ea.numer().is_odd() {
                            pa = -&pa;
                        }
                        b.orientation
                    } else {
                        return Err(Error::OrientationClash {
                            root: rat_to_string(&root),
                        });
                    }
                }
                (Some(a), _) => a.orientation,
                (_, Some(b)) => b.orientation,
                (None, None) => unreachable!(),
            };
            let min = ea.clone().min(eb.clone());
            let base = FactorSpec::new(root.clone(), orient, Rational::one()).base_poly();
            let push_excess = |p: &mut Poly, e: &Rational| {
                let mut k = e - &min;
                while k.is_positive() {
                    *p = &*p * &base;
                    k -= Rational::one();
                }
            };
            push_excess(&mut pa, &ea);
            push_excess(&mut pb, &eb);
            if !min.is_zero() {
                common.push(FactorSpec::new(root, orient, min));
            }
        }
        Ok((self.exp_rate.clone(), common, pa, pb))
    }

    pub fn add(&self, other: &QuasiPoly) -> Result<QuasiPoly> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (rate, common, pa, pb) = self.align(other)?;
        QuasiPoly::new(rate, common, &pa + &pb)
    }

    pub fn sub(&self, other: &QuasiPoly) -> Result<QuasiPoly> {
        self.add(&other.neg())
    }

    /// Exact scalar `c` with `self = c * other`, or `NotProportional`.
    pub fn ratio(&self, other: &QuasiPoly) -> Result<Rational> {
        if other.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let (_, _, pa, pb) = self.align(other).map_err(|_| Error::NotProportional)?;
        if pa.degree() != pb.degree() {
            return Err(Error::NotProportional);
        }
        let c = pa.leading().expect("nonzero") / pb.leading().expect("nonzero");
        if pa == pb.scale(&c) {
            Ok(c)
        } else {
            Err(Error::NotProportional)
        }
    }

    /// Invert a pure prefactor (constant polynomial part): exponents and
    /// the exponential rate negate. Errors when the polynomial part is
    /// non-constant, since the inverse would leave the class.
    pub fn invert_prefactor(&self) -> Result<QuasiPoly> {
        if self.is_zero() || self.poly.degree() != Some(0) {
            return Err(Error::NonInvertibleGroundState);
        }
        let c = self.poly.coeff(0);
        let factors = self
            .factors
            .iter()
            .map(|f| FactorSpec::new(f.root.clone(), f.orientation, -f.exponent.clone()))
            .collect();
        QuasiPoly::new(
            -self.exp_rate.clone(),
            factors,
            Poly::constant(c.recip()),
        )
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        if !self.exp_rate.is_zero() {
            parts.push(format!("exp({}*{var})", rat_to_string(&self.exp_rate)));
        }
        for f in &self.factors {
            parts.push(f.render(var));
        }
        let poly = self.poly.to_string_var(var);
        if parts.is_empty() || poly != "1" {
            parts.push(if self.poly.degree() == Some(0) {
                poly
            } else {
                format!("({poly})")
            });
        }
        parts.join("*")
    }
}

impl fmt::Debug for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}
