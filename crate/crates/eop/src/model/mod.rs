//! The physical model: parameters, basis states, separated
//! eigenfunctions, reduced coordinate operators, and the exact
//! eigenfunction certificates.
//!
//! Coordinates and algebraic variables: radial `r` on (0, inf), polar
//! `z = cos(theta)` on (-1, 1), azimuthal `y = cos(phi)` on (-1, 1).
//! Trigonometric operators are transformed into these variables before
//! entry; no trigonometry survives into the exact layer.
//!
//! Separation constants thread from the azimuthal factor inward: the
//! azimuthal eigenvalue `k1 = mu^2` feeds the polar operator, whose
//! eigenvalue `k2 = m(m+1)` feeds the radial operator. The reduced
//! operators are fixed by the separated ODEs:
//!
//! - radial: `H_r^(k2) = -(1/2)[d^2/dr^2 + (2/r) d/dr + alpha/r - k2/r^2]`
//!   with eigenvalue `E = -alpha^2 / (2 (2N + rho + 1)^2)`,
//! - polar: `H_theta(k1) = 1 - 4[(1-z^2) d^2/dz^2 - 2z d/dz - k1/(1-z^2)]`
//!   with eigenvalue `rho^2 = (2m+1)^2`,
//! - azimuthal: `H_phi` with eigenvalue `mu^2`.

pub mod ladder;
pub mod operators;
pub mod verify;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exact::{is_integer, rat_int, FactorSpec, Poly, QuasiPoly, Rational, Sign};
use crate::orthopoly;
use num_traits::{One, Signed, Zero};

/// Model parameters `(alpha, gamma, delta)` with the grid constraints
/// honored: `alpha > 0`, `delta > gamma > 0`, and `gamma + delta` an odd
/// integer so the azimuthal order `mu = n + (gamma + delta - 1)/2` is an
/// integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    alpha: Rational,
    gamma: Rational,
    delta: Rational,
}

impl ModelParams {
    pub fn new(alpha: Rational, gamma: Rational, delta: Rational) -> Result<Self> {
        let fail = |constraint: &str| Error::InvalidQuantumNumbers {
            constraint: constraint.to_string(),
        };
        if !alpha.is_positive() {
            return Err(fail("alpha must be positive"));
        }
        if !gamma.is_positive() {
            return Err(fail("gamma must be positive"));
        }
        if delta <= gamma {
            return Err(fail("delta must exceed gamma"));
        }
        let sum = &gamma + &delta;
        if !is_integer(&sum) || (sum.numer() % 2i32).is_zero() {
            return Err(fail("gamma + delta must be an odd integer"));
        }
        Ok(ModelParams {
            alpha,
            gamma,
            delta,
        })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    /// `b = (delta + gamma) / (delta - gamma) > 1`.
    pub fn b(&self) -> Rational {
        orthopoly::root_b(&self.delta, &self.gamma)
    }

    /// Integer `(gamma + delta - 1) / 2`, the azimuthal order offset.
    pub fn mu_shift(&self) -> u32 {
        let s = (&self.gamma + &self.delta - Rational::one())
            / Rational::from_integer(2.into());
        let val = s.numer();
        u32::try_from(val).expect("mu shift fits in u32")
    }
}

/// Basis state labels `(N, m, n)` over fixed parameters, with all
/// derived quantities exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisState {
    pub params: ModelParams,
    /// Radial (Laguerre) index N >= 0; the default grids start at 1.
    pub big_n: u32,
    /// Polar degree index m >= 0.
    pub m: u32,
    /// Azimuthal exceptional-Jacobi index n >= 1.
    pub n: u32,
}

impl BasisState {
    /// `rho = 2m + 1`.
    pub fn rho(&self) -> Rational {
        rat_int(2 * self.m as i64 + 1)
    }

    /// `mu = n + (gamma + delta - 1)/2`, an integer on valid states.
    pub fn mu(&self) -> u32 {
        self.n + self.params.mu_shift()
    }

    pub fn mu_rat(&self) -> Rational {
        rat_int(self.mu() as i64)
    }

    /// `eps = 2 alpha / (2N + rho + 1)`.
    pub fn eps(&self) -> Rational {
        rat_int(2) * self.params.alpha() / (rat_int(2 * self.big_n as i64) + self.rho() + Rational::one())
    }

    /// `E = -alpha^2 / (2 (2N + rho + 1)^2) = -alpha^2 / (8 (N + m + 1)^2)`.
    pub fn energy(&self) -> Rational {
        let denom = rat_int(2 * self.big_n as i64) + self.rho() + Rational::one();
        -(self.params.alpha() * self.params.alpha()) / (rat_int(2) * &denom * &denom)
    }

    /// `k2 = m(m+1)`.
    pub fn k2(&self) -> Rational {
        rat_int(self.m as i64) * rat_int(self.m as i64 + 1)
    }

    /// `k1 = mu^2`.
    pub fn k1(&self) -> Rational {
        let mu = self.mu_rat();
        &mu * &mu
    }

    pub fn label(&self) -> String {
        format!("N={},m={},n={}", self.big_n, self.m, self.n)
    }
}

/// Validate quantum numbers and build a state. `n >= 1` and `mu <= m`
/// are required; everything else lives in the parameter invariants.
pub fn make_state(params: &ModelParams, big_n: u32, m: u32, n: u32) -> Result<BasisState> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumbers {
            constraint: "n must be >= 1 (X1 family starts at degree 1)".into(),
        });
    }
    let state = BasisState {
        params: params.clone(),
        big_n,
        m,
        n,
    };
    if state.mu() > m {
        return Err(Error::InvalidQuantumNumbers {
            constraint: format!("mu = {} exceeds m = {} (polar factor vanishes)", state.mu(), m),
        });
    }
    Ok(state)
}

/// The separated eigenfunction: one quasi-polynomial factor per
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedEigenfunction {
    pub radial: QuasiPoly,
    pub polar: QuasiPoly,
    pub azimuthal: QuasiPoly,
}

/// Azimuthal ground-state prefactor
/// `(1-y)^{(2 gamma + 1)/4} (1+y)^{(2 delta + 1)/4} (b-y)^{-1}`,
/// stored with positive bases on (-1, 1).
pub fn azimuthal_prefactor(params: &ModelParams) -> QuasiPoly {
    let four = rat_int(4);
    let eg = (rat_int(2) * params.gamma() + Rational::one()) / &four;
    let ed = (rat_int(2) * params.delta() + Rational::one()) / &four;
    QuasiPoly::new(
        Rational::zero(),
        vec![
            FactorSpec::new(rat_int(1), Sign::Minus, eg),
            FactorSpec::new(rat_int(-1), Sign::Plus, ed),
            FactorSpec::new(params.b(), Sign::Minus, -Rational::one()),
        ],
        Poly::one(),
    )
    .expect("distinct roots")
}

/// Azimuthal factor `Zhat_n = prefactor * Phat_n(y)`.
pub fn azimuthal_factor(params: &ModelParams, n: u32) -> Result<QuasiPoly> {
    let phat = orthopoly::xjacobi(n, params.delta(), params.gamma())?;
    Ok(azimuthal_prefactor(params).mul_poly(&phat))
}

/// Radial factor `psi^rho_N = exp(-eps r / 2) (eps r)^{(rho-1)/2} L^rho_N(eps r)`
/// for arbitrary radial/polar labels sharing the state's eps.
pub fn radial_factor_with(eps: &Rational, big_n: u32, m: u32) -> QuasiPoly {
    let rho = rat_int(2 * m as i64 + 1);
    let lag = orthopoly::laguerre(big_n, &rho).compose_scale(eps);
    let mut scale = Rational::one();
    for _ in 0..m {
        scale *= eps;
    }
    QuasiPoly::new(
        -eps / rat_int(2),
        vec![FactorSpec::new(
            Rational::zero(),
            Sign::Plus,
            rat_int(m as i64),
        )],
        lag.scale(&scale),
    )
    .expect("radial factor is well-formed")
}

/// Polar factor `Theta^mu_m` with an explicit order (used for shifted
/// targets whose order differs from the state's own `mu`).
pub fn polar_factor_with(m: u32, mu: u32) -> Result<QuasiPoly> {
    orthopoly::assoc_legendre(m, mu)
}

/// Build the separated eigenfunction of a state. Each factor satisfies
/// its reduced eigen-equation exactly (certified by
/// [`hamiltonian_residual`] and the test suite).
pub fn build_eigenfunction(state: &BasisState) -> Result<SeparatedEigenfunction> {
    Ok(SeparatedEigenfunction {
        radial: radial_factor_with(&state.eps(), state.big_n, state.m),
        polar: polar_factor_with(state.m, state.mu())?,
        azimuthal: azimuthal_factor(&state.params, state.n)?,
    })
}

/// Radial equation operator in the (2.4) normalization:
/// `d^2/dr^2 + (2/r) d/dr + alpha/r + 2E - k2/r^2`; annihilates the
/// radial factor.
pub fn op_radial_eq(alpha: &Rational, energy: &Rational, k2: &Rational) -> DiffOp {
    let c1 = QuasiPoly::with_factor(
        FactorSpec::new(Rational::zero(), Sign::Plus, -Rational::one()),
        Poly::constant(rat_int(2)),
    );
    // alpha/r + 2E - k2/r^2 = (2E r^2 + alpha r - k2) / r^2
    let c0 = QuasiPoly::with_factor(
        FactorSpec::new(Rational::zero(), Sign::Plus, rat_int(-2)),
        Poly::from_coeffs(vec![-k2.clone(), alpha.clone(), rat_int(2) * energy]),
    );
    DiffOp::from_coeffs(c0, c1, QuasiPoly::one())
}

/// Reduced radial Hamiltonian
/// `H_r^(k2) = -(1/2)[d^2 + (2/r)d + alpha/r - k2/r^2]` with eigenvalue E.
pub fn op_hr(alpha: &Rational, k2: &Rational) -> DiffOp {
    let half = Rational::new(1.into(), 2.into());
    let c2 = QuasiPoly::constant(-half.clone());
    let c1 = QuasiPoly::with_factor(
        FactorSpec::new(Rational::zero(), Sign::Plus, -Rational::one()),
        Poly::constant(-Rational::one()),
    );
    let c0 = QuasiPoly::with_factor(
        FactorSpec::new(Rational::zero(), Sign::Plus, rat_int(-2)),
        Poly::linear(-alpha * &half, k2 * &half),
    );
    DiffOp::from_coeffs(c0, c1, c2)
}

/// Polar equation operator in the associated-Legendre form:
/// `(1-z^2) d^2 - 2z d + k2 - k1/(1-z^2)`; annihilates the polar factor.
pub fn op_polar_eq(k2: &Rational, k1: &Rational) -> DiffOp {
    let one_minus_z2 =
        Poly::from_coeffs(vec![Rational::one(), Rational::zero(), -Rational::one()]);
    let c2 = QuasiPoly::from_poly(one_minus_z2.clone());
    let c1 = QuasiPoly::from_poly(Poly::linear(rat_int(-2), Rational::zero()));
    let c0 = QuasiPoly::new(
        Rational::zero(),
        vec![
            FactorSpec::new(rat_int(1), Sign::Minus, -Rational::one()),
            FactorSpec::new(rat_int(-1), Sign::Plus, -Rational::one()),
        ],
        &one_minus_z2.scale(k2) - &Poly::constant(k1.clone()),
    )
    .expect("polar coefficients well-formed");
    DiffOp::from_coeffs(c0, c1, c2)
}

/// Reduced polar operator `H_theta(k1) = 1 - 4 L_theta(k1)` with
/// eigenvalue `rho^2` when `k1` matches the azimuthal eigenvalue.
pub fn op_htheta(k1: &Rational) -> DiffOp {
    let one_minus_z2 =
        Poly::from_coeffs(vec![Rational::one(), Rational::zero(), -Rational::one()]);
    let c2 = QuasiPoly::from_poly(one_minus_z2.scale(&rat_int(-4)));
    let c1 = QuasiPoly::from_poly(Poly::linear(rat_int(8), Rational::zero()));
    // 1 + 4 k1 / (1 - z^2)
    let c0 = QuasiPoly::new(
        Rational::zero(),
        vec![
            FactorSpec::new(rat_int(1), Sign::Minus, -Rational::one()),
            FactorSpec::new(rat_int(-1), Sign::Plus, -Rational::one()),
        ],
        &one_minus_z2 + &Poly::constant(rat_int(4) * k1),
    )
    .expect("polar coefficients well-formed");
    DiffOp::from_coeffs(c0, c1, c2)
}

/// Azimuthal operator `H_phi` in the variable `y = cos(phi)`:
/// `-(1-y^2) d^2 + y d + (gamma^2 - 1/4)/(2(1-y)) + (delta^2 - 1/4)/(2(1+y))
///  + 2(1 - b y)/(b - y)^2`, with eigenvalue `mu^2` on `Zhat_n`.
pub fn op_hphi(params: &ModelParams) -> DiffOp {
    let b = params.b();
    let one_minus_y2 =
        Poly::from_coeffs(vec![Rational::one(), Rational::zero(), -Rational::one()]);
    let c2 = QuasiPoly::from_poly(one_minus_y2.scale(&-Rational::one()));
    let c1 = QuasiPoly::from_poly(Poly::var());
    // potential over common support (1-y)^{-1} (1+y)^{-1} (b-y)^{-2}
    let half = Rational::new(1.into(), 2.into());
    let quarter = Rational::new(1.into(), 4.into());
    let cg = (params.gamma() * params.gamma() - &quarter) * &half;
    let cd = (params.delta() * params.delta() - &quarter) * &half;
    let one_plus_y = Poly::linear(Rational::one(), Rational::one());
    let one_minus_y = Poly::linear(-Rational::one(), Rational::one());
    let b_minus_y = Poly::linear(-Rational::one(), b.clone());
    let b_minus_y2 = &b_minus_y * &b_minus_y;
    let one_minus_by = Poly::linear(-b.clone(), Rational::one());
    let numerator = &(&(&one_plus_y * &b_minus_y2).scale(&cg)
        + &(&one_minus_y * &b_minus_y2).scale(&cd))
        + &(&(&one_minus_by * &one_minus_y) * &one_plus_y).scale(&rat_int(2));
    let c0 = QuasiPoly::new(
        Rational::zero(),
        vec![
            FactorSpec::new(rat_int(1), Sign::Minus, -Rational::one()),
            FactorSpec::new(rat_int(-1), Sign::Plus, -Rational::one()),
            FactorSpec::new(b, Sign::Minus, rat_int(-2)),
        ],
        numerator,
    )
    .expect("azimuthal coefficients well-formed");
    DiffOp::from_coeffs(c0, c1, c2)
}

/// Claimed eigenvalues for a residual computation.
#[derive(Clone, Debug)]
pub struct EigenClaims {
    pub energy: Rational,
    pub rho_sq: Rational,
    pub mu_sq: Rational,
}

impl EigenClaims {
    pub fn of_state(state: &BasisState) -> Self {
        let rho = state.rho();
        EigenClaims {
            energy: state.energy(),
            rho_sq: &rho * &rho,
            mu_sq: state.k1(),
        }
    }
}

/// Per-coordinate residual triple with the threaded separation constants
/// that were actually used.
#[derive(Clone, Debug)]
pub struct ResidualTriple {
    pub radial: QuasiPoly,
    pub polar: QuasiPoly,
    pub azimuthal: QuasiPoly,
    /// Azimuthal eigenvalue measured and threaded into the polar
    /// operator; `None` if the azimuthal factor is not an eigenfunction
    /// (the claimed `mu^2` is used as a fallback).
    pub threaded_k1: Option<Rational>,
    /// Polar separation constant threaded into the radial operator.
    pub threaded_k2: Option<Rational>,
}

impl ResidualTriple {
    pub fn is_zero(&self) -> bool {
        self.radial.is_zero() && self.polar.is_zero() && self.azimuthal.is_zero()
    }
}

/// Residuals of `(H - E)`, `(H_theta - rho^2)`, `(H_phi - mu^2)`
/// evaluated factor-wise with separation constants threaded from the
/// azimuthal factor inward. A zero triple certifies a genuine
/// eigenfunction of the commuting triple.
pub fn hamiltonian_residual(
    params: &ModelParams,
    claims: &EigenClaims,
    f: &SeparatedEigenfunction,
) -> Result<ResidualTriple> {
    // azimuthal: (H_phi - mu^2) Zhat
    let hphi = op_hphi(params);
    let az_applied = hphi.apply(&f.azimuthal)?;
    let az_res = az_applied.sub(&f.azimuthal.scale(&claims.mu_sq))?;
    let threaded_k1 = if f.azimuthal.is_zero() {
        None
    } else {
        az_applied.ratio(&f.azimuthal).ok()
    };
    let k1 = threaded_k1.clone().unwrap_or_else(|| claims.mu_sq.clone());

    // polar: (H_theta(k1) - rho^2) Theta
    let htheta = op_htheta(&k1);
    let pol_applied = htheta.apply(&f.polar)?;
    let pol_res = pol_applied.sub(&f.polar.scale(&claims.rho_sq))?;
    let threaded_k2 = if f.polar.is_zero() {
        None
    } else {
        pol_applied
            .ratio(&f.polar)
            .ok()
            .map(|h| (h - Rational::one()) / rat_int(4))
    };
    let k2 = threaded_k2
        .clone()
        .unwrap_or_else(|| (&claims.rho_sq - Rational::one()) / rat_int(4));

    // radial: (H_r(k2) - E) psi
    let hr = op_hr(params.alpha(), &k2);
    let rad_res = hr
        .apply(&f.radial)?
        .sub(&f.radial.scale(&claims.energy))?;

    Ok(ResidualTriple {
        radial: rad_res,
        polar: pol_res,
        azimuthal: az_res,
        threaded_k1,
        threaded_k2,
    })
}
