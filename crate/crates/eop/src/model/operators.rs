//! Ladder, shift, and integral-of-motion operators, built per basis
//! state (several operators carry the state's quantum numbers in their
//! coefficients).
//!
//! The azimuthal forward/backward pair needs care. As printed, the two
//! operators do not map the resolved X1 family anywhere useful: the
//! backward operator's denominator root and its target family, and the
//! forward operator's zeroth-order coefficient, are mangled by the same
//! gamma/delta mirror that the X1 convention resolution already
//! uncovered. Both operators are therefore *derived* here: their printed
//! first-order shapes are kept as an ansatz (numerator `(p y + q) d + v`
//! over a linear denominator for the backward operator, quadratic-times-d
//! plus linear for the forward one) and the coefficients are solved for
//! exactly by requiring genuine ladder behavior on the X1 family. The
//! solved operators are unique up to scale, verified well past the
//! solving range, and recorded in the convention ledger of every report.

use super::{azimuthal_prefactor, BasisState, ModelParams};
use crate::diffop::{DiffOp, OpChain};
use crate::error::{Error, Result};
use crate::exact::{rat_int, FactorSpec, Poly, QuasiPoly, Rational, Sign};
use crate::orthopoly::{self, jacobi_std};
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Coordinate a chain acts in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinate {
    Radial,
    Polar,
    Azimuthal,
}

/// Every operator the model exposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorId {
    LN,
    RN,
    Lrho,
    Rrho,
    LnBare,
    RnBare,
    Fwd,
    Bwd,
    LnConj,
    RnConj,
    Lmu,
    Rmu,
    D1Minus,
    D1Plus,
    D2Minus,
    D2Plus,
    Hr,
    Htheta,
    Hphi,
}

impl OperatorId {
    pub const ALL: [OperatorId; 19] = [
        OperatorId::LN,
        OperatorId::RN,
        OperatorId::Lrho,
        OperatorId::Rrho,
        OperatorId::LnBare,
        OperatorId::RnBare,
        OperatorId::Fwd,
        OperatorId::Bwd,
        OperatorId::LnConj,
        OperatorId::RnConj,
        OperatorId::Lmu,
        OperatorId::Rmu,
        OperatorId::D1Minus,
        OperatorId::D1Plus,
        OperatorId::D2Minus,
        OperatorId::D2Plus,
        OperatorId::Hr,
        OperatorId::Htheta,
        OperatorId::Hphi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OperatorId::LN => "LN",
            OperatorId::RN => "RN",
            OperatorId::Lrho => "Lrho",
            OperatorId::Rrho => "Rrho",
            OperatorId::LnBare => "LnBare",
            OperatorId::RnBare => "RnBare",
            OperatorId::Fwd => "Fwd",
            OperatorId::Bwd => "Bwd",
            OperatorId::LnConj => "LnConj",
            OperatorId::RnConj => "RnConj",
            OperatorId::Lmu => "Lmu",
            OperatorId::Rmu => "Rmu",
            OperatorId::D1Minus => "D1minus",
            OperatorId::D1Plus => "D1plus",
            OperatorId::D2Minus => "D2minus",
            OperatorId::D2Plus => "D2plus",
            OperatorId::Hr => "Hr",
            OperatorId::Htheta => "Htheta",
            OperatorId::Hphi => "Hphi",
        }
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        OperatorId::ALL
            .into_iter()
            .find(|id| id.name().to_ascii_lowercase() == lower)
            .ok_or_else(|| Error::UnknownOperator { name: s.to_string() })
    }
}

/// A model operator: one chain per coordinate it touches.
#[derive(Clone, Debug)]
pub struct ModelOperator {
    pub id: OperatorId,
    pub parts: Vec<(Coordinate, OpChain)>,
}

impl ModelOperator {
    pub fn chain_for(&self, coord: Coordinate) -> Option<&OpChain> {
        self.parts
            .iter()
            .find(|(c, _)| *c == coord)
            .map(|(_, ch)| ch)
    }
}

// ---------------------------------------------------------------------
// exact linear algebra for the resolver
// ---------------------------------------------------------------------

/// Nullspace basis of an exact rational matrix (rows x cols), via
/// fraction-preserving Gaussian elimination.
pub(crate) fn nullspace(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone().recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let sub = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Rational::zero(); cols];
        v[fc] = Rational::one();
        for (pi, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[pi][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Append the coefficient-wise equations of `poly == 0` as rows over the
/// unknown vector structure captured by `builders`: each builder maps an
/// unknown index to that unknown's polynomial multiplier.
fn poly_identity_rows(
    terms: &[(usize, Poly)],
    num_unknowns: usize,
    max_deg: usize,
) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for d in 0..=max_deg {
        let mut row = vec![Rational::zero(); num_unknowns];
        for (idx, p) in terms {
            row[*idx] = &row[*idx] + &p.coeff(d);
        }
        rows.push(row);
    }
    rows
}

// ---------------------------------------------------------------------
// azimuthal forward/backward resolution
// ---------------------------------------------------------------------

/// The resolved azimuthal machinery for one parameter set.
#[derive(Clone, Debug)]
pub struct AzimuthalLadders {
    /// Backward operator `[(p y + q) d/dy + v] / (y - den_root)`.
    pub backward: DiffOp,
    pub backward_numerator: (Rational, Rational, Rational),
    pub backward_den_root: Rational,
    /// Forward operator `f1(y) d/dy + f0(y)` with `f1` quadratic monic.
    pub forward: DiffOp,
    pub forward_coeffs: (Poly, Poly),
    /// Standard Jacobi parameters of the intermediate family the
    /// backward operator lands in.
    pub src_family: (Rational, Rational),
}

fn inv_linear(root: &Rational) -> QuasiPoly {
    // 1/(y - root) with a positive base on (-1, 1)
    if root > &Rational::one() {
        QuasiPoly::with_factor(
            FactorSpec::new(root.clone(), Sign::Minus, -Rational::one()),
            Poly::constant(-Rational::one()),
        )
    } else {
        QuasiPoly::with_factor(
            FactorSpec::new(root.clone(), Sign::Plus, -Rational::one()),
            Poly::one(),
        )
    }
}

/// Solve for the backward operator against one `(den_root, family)`
/// candidate. Unknowns `(p, q, v, c_1..c_4)`; returns the normalized
/// generator when the nullspace is one-dimensional and the operator
/// verifies as an exact ladder for n = 1..7.
fn solve_backward(
    params: &ModelParams,
    den_root: &Rational,
    fam: &(Rational, Rational),
) -> Option<(Rational, Rational, Rational)> {
    let delta = params.delta();
    let gamma = params.gamma();
    let phat: Vec<Poly> = (1..=7)
        .map(|n| orthopoly::xjacobi(n, delta, gamma).ok())
        .collect::<Option<_>>()?;
    let cols = 7; // p, q, v, c1..c4
    let mut rows = Vec::new();
    for n in 1..=4usize {
        let y = &phat[n - 1];
        let dy = y.derivative();
        let target = &Poly::linear(Rational::one(), -den_root.clone())
            * &jacobi_std(n as u32 - 1, &fam.0, &fam.1);
        // (p*y + q) dy + v*y - c_n * target = 0
        let terms = vec![
            (0usize, &Poly::var() * &dy),
            (1, dy.clone()),
            (2, y.clone()),
            (2 + n, -&target),
        ];
        let max_deg = n + 1;
        rows.extend(poly_identity_rows(&terms, cols, max_deg));
    }
    let basis = nullspace(rows, cols);
    if basis.len() != 1 {
        return None;
    }
    let v = &basis[0];
    // normalize: leading derivative coefficient p = 1 (or q = 1)
    let scale = if !v[0].is_zero() {
        v[0].clone().recip()
    } else if !v[1].is_zero() {
        v[1].clone().recip()
    } else {
        return None;
    };
    let (p, q, vv) = (&v[0] * &scale, &v[1] * &scale, &v[2] * &scale);
    // verify as a genuine ladder well past the solving range
    let op = backward_diffop(&p, &q, &vv, den_root);
    for n in 2..=7u32 {
        let result = op.apply(&QuasiPoly::from_poly(phat[n as usize - 1].clone())).ok()?;
        let target = QuasiPoly::from_poly(jacobi_std(n - 1, &fam.0, &fam.1));
        result.ratio(&target).ok()?;
    }
    Some((p, q, vv))
}

fn backward_diffop(p: &Rational, q: &Rational, v: &Rational, den_root: &Rational) -> DiffOp {
    let inv = inv_linear(den_root);
    let c1 = inv.mul_poly(&Poly::linear(p.clone(), q.clone()));
    let c0 = inv.mul_poly(&Poly::constant(v.clone()));
    DiffOp::first_order(c1, c0)
}

/// Solve for the forward operator mapping the intermediate family back
/// into the X1 family. Unknowns `(a2, a1, a0, b1, b0, c_0..c_3)`.
fn solve_forward(params: &ModelParams, fam: &(Rational, Rational)) -> Option<(Poly, Poly)> {
    let delta = params.delta();
    let gamma = params.gamma();
    let phat: Vec<Poly> = (1..=8)
        .map(|n| orthopoly::xjacobi(n, delta, gamma).ok())
        .collect::<Option<_>>()?;
    let cols = 9;
    let mut rows = Vec::new();
    for k in 0..=3usize {
        let src = jacobi_std(k as u32, &fam.0, &fam.1);
        let dsrc = src.derivative();
        let y2 = Poly::monomial(Rational::one(), 2);
        let terms = vec![
            (0usize, &y2 * &dsrc),
            (1, &Poly::var() * &dsrc),
            (2, dsrc.clone()),
            (3, &Poly::var() * &src),
            (4, src.clone()),
            (5 + k, -&phat[k]),
        ];
        rows.extend(poly_identity_rows(&terms, cols, k + 2));
    }
    let basis = nullspace(rows, cols);
    if basis.len() != 1 {
        return None;
    }
    let v = &basis[0];
    let scale = if !v[0].is_zero() {
        v[0].clone().recip()
    } else {
        return None;
    };
    let f1 = Poly::from_coeffs(vec![&v[2] * &scale, &v[1] * &scale, &v[0] * &scale]);
    let f0 = Poly::linear(&v[3] * &scale, &v[4] * &scale);
    // verify past the solving range
    let op = DiffOp::first_order(
        QuasiPoly::from_poly(f1.clone()),
        QuasiPoly::from_poly(f0.clone()),
    );
    for k in 4..=7u32 {
        let src = QuasiPoly::from_poly(jacobi_std(k, &fam.0, &fam.1));
        let result = op.apply(&src).ok()?;
        let target = QuasiPoly::from_poly(phat[k as usize].clone());
        result.ratio(&target).ok()?;
    }
    Some((f1, f0))
}

/// Resolve the azimuthal forward/backward pair for a parameter set.
/// Candidates: denominator root in `{b, -b}` crossed with intermediate
/// family in `{(gamma+1, delta-1), (gamma-1, delta+1)}` (standard-first
/// order). Exactly one candidate must survive; preference falls on the
/// printed numerator shape `(1+y) d + const` when two mirrors coexist.
pub fn resolve_azimuthal_ladders(params: &ModelParams) -> Result<AzimuthalLadders> {
    let b = params.b();
    let fam_a = (params.gamma() + Rational::one(), params.delta() - Rational::one());
    let fam_b = (params.gamma() - Rational::one(), params.delta() + Rational::one());
    let mut winners = Vec::new();
    for den_root in [b.clone(), -b.clone()] {
        for fam in [fam_a.clone(), fam_b.clone()] {
            if let Some(num) = solve_backward(params, &den_root, &fam) {
                if let Some(fwd) = solve_forward(params, &fam) {
                    winners.push((den_root.clone(), fam.clone(), num, fwd));
                }
            }
        }
    }
    // prefer the printed numerator shape (p, q) = (1, 1)
    let pick = winners
        .iter()
        .position(|(_, _, (p, q, _), _)| p == q)
        .or(if winners.len() == 1 { Some(0) } else { None });
    let Some(idx) = pick else {
        return Err(Error::ConventionUnresolved {
            detail: format!(
                "azimuthal ladder resolution found {} candidates",
                winners.len()
            ),
        });
    };
    let (den_root, fam, (p, q, v), (f1, f0)) = winners.swap_remove(idx);
    Ok(AzimuthalLadders {
        backward: backward_diffop(&p, &q, &v, &den_root),
        backward_numerator: (p, q, v),
        backward_den_root: den_root,
        forward: DiffOp::first_order(
            QuasiPoly::from_poly(f1.clone()),
            QuasiPoly::from_poly(f0.clone()),
        ),
        forward_coeffs: (f1, f0),
        src_family: fam,
    })
}

// ---------------------------------------------------------------------
// operator construction
// ---------------------------------------------------------------------

fn radial_ladder(state: &BasisState, lowering: bool) -> DiffOp {
    let rho = state.rho();
    let alpha = state.params.alpha();
    let c1 = if lowering {
        QuasiPoly::constant(&rho + Rational::one())
    } else {
        QuasiPoly::constant(Rational::one() - &rho)
    };
    // alpha - (rho^2 - 1)/(2r) = (alpha r - (rho^2-1)/2) / r
    let c0 = QuasiPoly::with_factor(
        FactorSpec::new(Rational::zero(), Sign::Plus, -Rational::one()),
        Poly::linear(
            alpha.clone(),
            -(&rho * &rho - Rational::one()) / rat_int(2),
        ),
    );
    DiffOp::first_order(c1, c0)
}

fn polar_rho_ladder(state: &BasisState, lowering: bool) -> DiffOp {
    let rho = state.rho();
    let c1 = QuasiPoly::from_poly(Poly::from_coeffs(vec![
        Rational::one(),
        Rational::zero(),
        -Rational::one(),
    ]));
    let z_coeff = if lowering {
        (&rho - Rational::one()) / rat_int(2)
    } else {
        -(&rho + Rational::one()) / rat_int(2)
    };
    let c0 = QuasiPoly::from_poly(Poly::linear(z_coeff, Rational::zero()));
    DiffOp::first_order(c1, c0)
}

fn polar_mu_ladder(state: &BasisState, lowering: bool) -> DiffOp {
    let mu = state.mu_rat();
    let half = Rational::new(1.into(), 2.into());
    let c1 = QuasiPoly::new(
        Rational::zero(),
        vec![
            FactorSpec::new(rat_int(1), Sign::Minus, half.clone()),
            FactorSpec::new(rat_int(-1), Sign::Plus, half.clone()),
        ],
        Poly::one(),
    )
    .expect("sqrt(1-z^2)");
    let sign = if lowering { -Rational::one() } else { Rational::one() };
    let c0 = QuasiPoly::new(
        Rational::zero(),
        vec![
            FactorSpec::new(rat_int(1), Sign::Minus, -half.clone()),
            FactorSpec::new(rat_int(-1), Sign::Plus, -half),
        ],
        Poly::linear(&mu * &sign, Rational::zero()),
    )
    .expect("mu z / sqrt(1-z^2)");
    DiffOp::first_order(c1, c0)
}

fn bare_azimuthal_chain(
    ladders: &AzimuthalLadders,
    n: u32,
    lowering: bool,
) -> OpChain {
    let (a, b) = &ladders.src_family;
    let mid = if lowering {
        orthopoly::jacobi_lowering(n - 1, a, b)
    } else {
        orthopoly::jacobi_raising(n - 1, a, b)
    };
    OpChain::from_stages(vec![
        ladders.backward.clone(),
        mid,
        ladders.forward.clone(),
    ])
}

/// Build an operator for a state. Quantum-number-dependent coefficients
/// (`rho`, `mu`, `n`) are read off the state; azimuthal ladders use the
/// resolved forward/backward pair (pass a cached one to avoid re-solving).
pub fn build_operator_with(
    id: OperatorId,
    state: &BasisState,
    az: Option<&AzimuthalLadders>,
) -> Result<ModelOperator> {
    use Coordinate::*;
    let params = &state.params;
    let az_resolved;
    let az_ladders = match az {
        Some(l) => l,
        None => {
            az_resolved = resolve_azimuthal_ladders(params)?;
            &az_resolved
        }
    };
    let parts = match id {
        OperatorId::LN => vec![(Radial, OpChain::single(radial_ladder(state, true)))],
        OperatorId::RN => vec![(Radial, OpChain::single(radial_ladder(state, false)))],
        OperatorId::Lrho => vec![(Polar, OpChain::single(polar_rho_ladder(state, true)))],
        OperatorId::Rrho => vec![(Polar, OpChain::single(polar_rho_ladder(state, false)))],
        OperatorId::Lmu => vec![(Polar, OpChain::single(polar_mu_ladder(state, true)))],
        OperatorId::Rmu => vec![(Polar, OpChain::single(polar_mu_ladder(state, false)))],
        OperatorId::Fwd => vec![(Azimuthal, OpChain::single(az_ladders.forward.clone()))],
        OperatorId::Bwd => vec![(Azimuthal, OpChain::single(az_ladders.backward.clone()))],
        OperatorId::LnBare => vec![(
            Azimuthal,
            bare_azimuthal_chain(az_ladders, state.n, true),
        )],
        OperatorId::RnBare => vec![(
            Azimuthal,
            bare_azimuthal_chain(az_ladders, state.n, false),
        )],
        OperatorId::LnConj => vec![(
            Azimuthal,
            bare_azimuthal_chain(az_ladders, state.n, true)
                .conjugated(&azimuthal_prefactor(params))?,
        )],
        OperatorId::RnConj => vec![(
            Azimuthal,
            bare_azimuthal_chain(az_ladders, state.n, false)
                .conjugated(&azimuthal_prefactor(params))?,
        )],
        OperatorId::D1Minus => vec![
            (Radial, OpChain::single(radial_ladder(state, true))),
            (Polar, OpChain::single(polar_rho_ladder(state, false))),
        ],
        OperatorId::D1Plus => vec![
            (Radial, OpChain::single(radial_ladder(state, false))),
            (Polar, OpChain::single(polar_rho_ladder(state, true))),
        ],
        OperatorId::D2Minus => vec![
            (Polar, OpChain::single(polar_mu_ladder(state, false))),
            (
                Azimuthal,
                bare_azimuthal_chain(az_ladders, state.n, true)
                    .conjugated(&azimuthal_prefactor(params))?,
            ),
        ],
        OperatorId::D2Plus => vec![
            (Polar, OpChain::single(polar_mu_ladder(state, true))),
            (
                Azimuthal,
                bare_azimuthal_chain(az_ladders, state.n, false)
                    .conjugated(&azimuthal_prefactor(params))?,
            ),
        ],
        OperatorId::Hr => vec![(
            Radial,
            OpChain::single(super::op_hr(params.alpha(), &state.k2())),
        )],
        OperatorId::Htheta => {
            vec![(Polar, OpChain::single(super::op_htheta(&state.k1())))]
        }
        OperatorId::Hphi => vec![(Azimuthal, OpChain::single(super::op_hphi(params)))],
    };
    Ok(ModelOperator { id, parts })
}

/// `build_operator` with the azimuthal machinery resolved on the fly.
pub fn build_operator(id: OperatorId, state: &BasisState) -> Result<ModelOperator> {
    build_operator_with(id, state, None)
}

/// Apply a model operator factor-wise to a separated triple.
pub fn apply_operator(
    op: &ModelOperator,
    f: &super::SeparatedEigenfunction,
) -> Result<super::SeparatedEigenfunction> {
    let mut out = f.clone();
    for (coord, chain) in &op.parts {
        match coord {
            Coordinate::Radial => out.radial = chain.apply(&f.radial)?,
            Coordinate::Polar => out.polar = chain.apply(&f.polar)?,
            Coordinate::Azimuthal => out.azimuthal = chain.apply(&f.azimuthal)?,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_to_string};
    use crate::model::make_state;

    fn params() -> ModelParams {
        ModelParams::new(rat_int(1), rat_int(2), rat_int(3)).unwrap()
    }

    #[test]
    fn nullspace_small() {
        // x + y = 0 has a 1-dim nullspace spanned by (1, -1)
        let rows = vec![vec![rat_int(1), rat_int(1)]];
        let basis = nullspace(rows, 2);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert_eq!(&v[0] + &v[1], rat_int(0));
    }

    #[test]
    fn ln_operator_shape() {
        // LN with rho = 3: 4 d/dr + alpha - 4/r
        let p = params();
        let s = make_state(&p, 1, 3, 1).unwrap();
        // use m=1 shape check directly on the builder
        let s1 = crate::model::BasisState {
            params: p.clone(),
            big_n: 1,
            m: 1,
            n: 1,
        };
        let op = radial_ladder(&s1, true);
        assert_eq!(op.coeff(1), QuasiPoly::constant(rat_int(4)));
        // c0 = (r - 4)/r at alpha = 1
        let c0 = op.coeff(0);
        assert_eq!(c0.exponent_at(&rat_int(0)), rat_int(-1));
        assert_eq!(c0.poly(), &Poly::linear(rat_int(1), rat_int(-4)));
        let _ = s;
    }

    #[test]
    fn lmu_operator_shape() {
        // Lmu with mu = 1: sqrt(1-z^2) d - z/sqrt(1-z^2)
        let p = params();
        let s1 = crate::model::BasisState {
            params: p,
            big_n: 1,
            m: 3,
            n: 1,
        };
        // state's mu is n + 2 = 3; build with a synthetic mu=1 state
        // via直接 coefficient check on the shape instead
        let op = polar_mu_ladder(&s1, true);
        let c0 = op.coeff(0);
        assert_eq!(c0.exponent_at(&rat_int(1)), rat(-1, 2));
        assert_eq!(
            c0.poly(),
            &Poly::linear(rat_int(-3), rat_int(0)),
            "c0 = -mu z with mu = 3"
        );
    }

    #[test]
    fn azimuthal_resolution_structure() {
        let p = params();
        let l = resolve_azimuthal_ladders(&p).unwrap();
        // backward: numerator (1+y) d + delta over (y - b)
        let (pp, qq, vv) = &l.backward_numerator;
        assert_eq!(pp, &rat_int(1), "numerator leading");
        assert_eq!(qq, &rat_int(1), "numerator constant");
        assert_eq!(vv, p.delta(), "zeroth term is delta: {}", rat_to_string(vv));
        assert_eq!(&l.backward_den_root, &p.b());
        // intermediate family (gamma+1, delta-1)
        assert_eq!(l.src_family.0, rat_int(3));
        assert_eq!(l.src_family.1, rat_int(2));
        // forward: monic quadratic (y-1)(y-b) and zeroth gamma*(y - C),
        // C = b + 2/(delta-gamma)
        let (f1, f0) = &l.forward_coeffs;
        let b = p.b();
        let expect_f1 = &Poly::linear(Rational::one(), -Rational::one())
            * &Poly::linear(Rational::one(), -b.clone());
        assert_eq!(f1, &expect_f1, "forward derivative coefficient");
        let c = &b + rat_int(2) / (p.delta() - p.gamma());
        assert_eq!(
            f0,
            &Poly::linear(Rational::one(), -c).scale(p.gamma()),
            "forward zeroth"
        );
    }

    #[test]
    fn azimuthal_resolution_shape_across_params() {
        // same structural shapes at other admissible parameter pairs
        for (g, d) in [(2i64, 5i64), (4, 5), (1, 4)] {
            let p = ModelParams::new(rat_int(1), rat_int(g), rat_int(d)).unwrap();
            let l = resolve_azimuthal_ladders(&p).unwrap();
            let (pp, qq, vv) = &l.backward_numerator;
            assert_eq!((pp, qq), (&rat_int(1), &rat_int(1)), "({g},{d})");
            assert_eq!(vv, p.delta(), "({g},{d})");
            assert_eq!(&l.backward_den_root, &p.b(), "({g},{d})");
            assert_eq!(l.src_family.0, p.gamma() + Rational::one());
            assert_eq!(l.src_family.1, p.delta() - Rational::one());
            let (f1, f0) = &l.forward_coeffs;
            let b = p.b();
            let expect_f1 = &Poly::linear(Rational::one(), -Rational::one())
                * &Poly::linear(Rational::one(), -b.clone());
            assert_eq!(f1, &expect_f1, "({g},{d})");
            let c = &b + rat_int(2) / (p.delta() - p.gamma());
            assert_eq!(f0, &Poly::linear(Rational::one(), -c).scale(p.gamma()));
        }
    }

    #[test]
    fn operator_id_round_trip() {
        for id in OperatorId::ALL {
            assert_eq!(OperatorId::from_str(id.name()).unwrap(), id);
        }
        assert!(OperatorId::from_str("nope").is_err());
    }
}
