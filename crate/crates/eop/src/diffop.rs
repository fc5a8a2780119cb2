//! Linear differential operators of order <= 2 with quasi-polynomial
//! coefficients, and stage-wise composition chains.
//!
//! Compositions are never expanded into a single higher-order operator:
//! a chain applies its stages one after another, which keeps every
//! intermediate inside the quasi-polynomial closure and sidesteps
//! operator-ordering mistakes. Ground-state conjugation `g . D . g^{-1}`
//! is a chain with pre/post multiplier functions.

use crate::error::{Error, Result};
use crate::exact::{QuasiPoly, Rational};

/// Differential operator `sum_k c_k(z) d^k/dz^k`, order k <= 2,
/// at most one coefficient per order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    terms: Vec<(u8, QuasiPoly)>,
}

impl DiffOp {
    /// Operator from coefficients of order 0, 1, 2; zero coefficients are
    /// dropped. The zero operator has no terms.
    pub fn from_coeffs(c0: QuasiPoly, c1: QuasiPoly, c2: QuasiPoly) -> Self {
        let mut terms = Vec::new();
        for (k, c) in [(0u8, c0), (1, c1), (2, c2)] {
            if !c.is_zero() {
                terms.push((k, c));
            }
        }
        DiffOp { terms }
    }

    /// First-order operator `c1 d/dz + c0`.
    pub fn first_order(c1: QuasiPoly, c0: QuasiPoly) -> Self {
        DiffOp::from_coeffs(c0, c1, QuasiPoly::zero())
    }

    /// Pure multiplication operator.
    pub fn multiplier(c0: QuasiPoly) -> Self {
        DiffOp::from_coeffs(c0, QuasiPoly::zero(), QuasiPoly::zero())
    }

    /// d/dz.
    pub fn derivative() -> Self {
        DiffOp::first_order(QuasiPoly::one(), QuasiPoly::zero())
    }

    pub fn terms(&self) -> &[(u8, QuasiPoly)] {
        &self.terms
    }

    pub fn coeff(&self, order: u8) -> QuasiPoly {
        self.terms
            .iter()
            .find(|(k, _)| *k == order)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(QuasiPoly::zero)
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp {
            terms: self
                .terms
                .iter()
                .map(|(k, q)| (*k, q.scale(c)))
                .collect(),
        }
    }

    /// Apply to a quasi-polynomial: `sum_k c_k f^{(k)}`, exact.
    pub fn apply(&self, f: &QuasiPoly) -> Result<QuasiPoly> {
        let mut acc = QuasiPoly::zero();
        let mut df = f.clone();
        let mut order = 0u8;
        for (k, c) in &self.terms {
            while order < *k {
                df = df.derivative();
                order += 1;
            }
            acc = acc.add(&c.mul(&df)?)?;
        }
        Ok(acc)
    }
}

/// Composition chain with optional conjugation multipliers. Stages are
/// stored in application order: `stages[0]` acts first.
#[derive(Clone, Debug)]
pub struct OpChain {
    pre: Option<QuasiPoly>,
    stages: Vec<DiffOp>,
    post: Option<QuasiPoly>,
}

impl OpChain {
    pub fn single(op: DiffOp) -> Self {
        OpChain {
            pre: None,
            stages: vec![op],
            post: None,
        }
    }

    /// Chain from stages in application order (first applied first).
    pub fn from_stages(stages: Vec<DiffOp>) -> Self {
        assert!(!stages.is_empty(), "chain must be nonempty");
        OpChain {
            pre: None,
            stages,
            post: None,
        }
    }

    pub fn stages(&self) -> &[DiffOp] {
        &self.stages
    }

    /// Wrap the chain in a ground-state conjugation: the returned chain
    /// computes `g * C(g^{-1} * f)`. `g` must be a pure prefactor
    /// (constant polynomial part), otherwise its inverse leaves the class.
    pub fn conjugated(self, g: &QuasiPoly) -> Result<OpChain> {
        if self.pre.is_some() || self.post.is_some() {
            return Err(Error::NonInvertibleGroundState);
        }
        let inv = g.invert_prefactor()?;
        Ok(OpChain {
            pre: Some(inv),
            stages: self.stages,
            post: Some(g.clone()),
        })
    }

    /// Apply the chain stage-wise.
    pub fn apply(&self, f: &QuasiPoly) -> Result<QuasiPoly> {
        let mut cur = match &self.pre {
            Some(g) => g.mul(f)?,
            None => f.clone(),
        };
        for stage in &self.stages {
            cur = stage.apply(&cur)?;
        }
        match &self.post {
            Some(g) => g.mul(&cur),
            None => Ok(cur),
        }
    }
}

/// Conjugate a single operator by a ground-state prefactor:
/// realizes `g . D . g^{-1}`.
pub fn op_conjugate(op: DiffOp, g: &QuasiPoly) -> Result<OpChain> {
    OpChain::single(op).conjugated(g)
}

/// `A(B(f)) - B(A(f))`, exact.
pub fn commutator_action(a: &OpChain, b: &OpChain, f: &QuasiPoly) -> Result<QuasiPoly> {
    let ab = a.apply(&b.apply(f)?)?;
    let ba = b.apply(&a.apply(f)?)?;
    ab.sub(&ba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, FactorSpec, Poly, Sign};
    use crate::hp::HpCtx;

    #[test]
    fn apply_basics() {
        // d/dz on z^2 -> 2z
        let d = DiffOp::derivative();
        let f = QuasiPoly::from_poly(Poly::monomial(rat_int(1), 2));
        assert_eq!(
            d.apply(&f).unwrap(),
            QuasiPoly::from_poly(Poly::monomial(rat_int(2), 1))
        );
        // (1-z^2) d/dz - z on the constant 1 -> -z
        let op = DiffOp::first_order(
            QuasiPoly::from_poly(Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(-1)])),
            QuasiPoly::from_poly(Poly::linear(-rat_int(1), rat_int(0))),
        );
        let res = op.apply(&QuasiPoly::one()).unwrap();
        assert_eq!(res, QuasiPoly::from_poly(Poly::linear(-rat_int(1), rat_int(0))));
    }

    #[test]
    fn linearity() {
        let op = DiffOp::from_coeffs(
            QuasiPoly::from_poly(Poly::var()),
            QuasiPoly::from_poly(Poly::linear(rat_int(2), rat_int(1))),
            QuasiPoly::one(),
        );
        let f = QuasiPoly::from_poly(Poly::from_coeffs(vec![rat_int(1), rat_int(3)]));
        let g = QuasiPoly::from_poly(Poly::monomial(rat(1, 2), 3));
        let lhs = op.apply(&f.add(&g).unwrap()).unwrap();
        let rhs = op.apply(&f).unwrap().add(&op.apply(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn singleton_chain_equals_op_apply() {
        let op = DiffOp::first_order(
            QuasiPoly::one(),
            QuasiPoly::from_poly(Poly::var()),
        );
        let f = QuasiPoly::from_poly(Poly::monomial(rat_int(1), 2));
        assert_eq!(
            OpChain::single(op.clone()).apply(&f).unwrap(),
            op.apply(&f).unwrap()
        );
    }

    #[test]
    fn identity_conjugation_is_inert() {
        let op = DiffOp::derivative();
        let f = QuasiPoly::from_poly(Poly::monomial(rat_int(1), 3));
        let plain = op.apply(&f).unwrap();
        let conj = op_conjugate(op, &QuasiPoly::one()).unwrap();
        assert_eq!(conj.apply(&f).unwrap(), plain);
    }

    #[test]
    fn conjugation_product_rule() {
        // g = (z-1)^{1/2}: g (g^{-1} f)' = f' - e f/(z-1) with e = 1/2
        let g = QuasiPoly::with_factor(
            FactorSpec::new(rat_int(1), Sign::Plus, rat(1, 2)),
            Poly::one(),
        );
        let chain = op_conjugate(DiffOp::derivative(), &g).unwrap();
        let f = QuasiPoly::from_poly(Poly::var());
        let measured = chain.apply(&f).unwrap();
        // f' - (1/2) z (z-1)^{-1}
        let expect = QuasiPoly::one()
            .sub(
                &QuasiPoly::with_factor(
                    FactorSpec::new(rat_int(1), Sign::Plus, rat_int(-1)),
                    Poly::var(),
                )
                .scale(&rat(1, 2)),
            )
            .unwrap();
        assert_eq!(measured, expect);
    }

    #[test]
    fn conjugation_consistency() {
        // chain(conj(D,g), f) = g * D(g^{-1} f) for assorted f
        let g = QuasiPoly::new(
            rat(-1, 3),
            vec![FactorSpec::new(rat_int(2), Sign::Minus, rat(3, 4))],
            Poly::constant(rat(5, 2)),
        )
        .unwrap();
        let op = DiffOp::from_coeffs(
            QuasiPoly::from_poly(Poly::linear(rat_int(1), rat_int(4))),
            QuasiPoly::from_poly(Poly::var()),
            QuasiPoly::one(),
        );
        let chain = op_conjugate(op.clone(), &g).unwrap();
        for f in [
            QuasiPoly::from_poly(Poly::var()),
            QuasiPoly::from_poly(Poly::from_coeffs(vec![rat_int(2), rat(1, 3), rat_int(1)])),
        ] {
            let lhs = chain.apply(&f).unwrap();
            let rhs = g
                .mul(&op.apply(&g.invert_prefactor().unwrap().mul(&f).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn commutator_antisymmetry_and_trivial_cases() {
        let a = OpChain::single(DiffOp::first_order(
            QuasiPoly::from_poly(Poly::var()),
            QuasiPoly::one(),
        ));
        let b = OpChain::single(DiffOp::from_coeffs(
            QuasiPoly::from_poly(Poly::linear(rat_int(1), rat_int(-1))),
            QuasiPoly::zero(),
            QuasiPoly::one(),
        ));
        let f = QuasiPoly::from_poly(Poly::from_coeffs(vec![rat_int(1), rat_int(1), rat_int(1)]));
        let ab = commutator_action(&a, &b, &f).unwrap();
        let ba = commutator_action(&b, &a, &f).unwrap();
        assert_eq!(ab, ba.neg());
        // [A, A] = 0
        assert!(commutator_action(&a, &a, &f).unwrap().is_zero());
        // order-0 multipliers commute
        let m1 = OpChain::single(DiffOp::multiplier(QuasiPoly::from_poly(Poly::var())));
        let m2 = OpChain::single(DiffOp::multiplier(QuasiPoly::from_poly(Poly::linear(
            rat_int(2),
            rat_int(3),
        ))));
        assert!(commutator_action(&m1, &m2, &f).unwrap().is_zero());
    }

    #[test]
    fn exact_application_matches_float_differentiation() {
        // op = (z-1)^{1/2} d^2/dz^2 + z(z-1)^{1/2} d/dz + 3(z-1)^{1/2},
        // applied to f = exp(z/2)(z-1)^{3/2}(z^2+1); all term supports
        // close, cross-checked at 3 points
        let half = |poly: Poly| {
            QuasiPoly::with_factor(
                FactorSpec::new(rat_int(1), Sign::Plus, rat(1, 2)),
                poly,
            )
        };
        let coeffs = [
            half(Poly::constant(rat_int(3))),
            half(Poly::var()),
            half(Poly::one()),
        ];
        let op = DiffOp::from_coeffs(
            coeffs[0].clone(),
            coeffs[1].clone(),
            coeffs[2].clone(),
        );
        let f = QuasiPoly::new(
            rat(1, 2),
            vec![FactorSpec::new(rat_int(1), Sign::Plus, rat(3, 2))],
            Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(1)]),
        )
        .unwrap();
        let exact = op.apply(&f).unwrap();
        let mut ctx = HpCtx::default_prec();
        for z in [rat(3, 2), rat(7, 4), rat(5, 2)] {
            let lhs = ctx.eval_quasi(&exact, &z).unwrap();
            // evaluate sum_k c_k(z) f^(k)(z) term by term in floats
            let mut total = ctx.from_i64(0);
            let mut dk = f.clone();
            for c in &coeffs {
                let cv = ctx.eval_quasi(c, &z).unwrap();
                let fv = ctx.eval_quasi(&dk, &z).unwrap();
                total = ctx.add(&total, &ctx.mul(&cv, &fv));
                dk = dk.derivative();
            }
            let rel = ctx.rel_diff(&lhs, &total);
            assert!(ctx.below_pow10(&rel, -30), "float mismatch at {z}: {rel:?}");
        }
    }
}
