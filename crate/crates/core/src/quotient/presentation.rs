//! Finite matrix models: the algebra `B1` generated by `u, v, x` and the
//! `q2 × q2` block presentation of `U', V', W, X1` over it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::monomial::MonomialMatrix;
use super::phase::Phase;
use super::QuotientProfile;
use crate::error::{Error, Result};
use crate::group::GroupParams;

pub const DEFAULT_MAX_DIM: usize = 500;

/// `NIL53_MAX_DIM`, or 500 when unset or unparsable.
pub fn max_dim_from_env() -> usize {
    std::env::var("NIL53_MAX_DIM")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    pub tol: f64,
    pub unitarity_tol: f64,
    pub max_dim: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            unitarity_tol: 1e-12,
            max_dim: max_dim_from_env(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RelationSet {
    Cr1,
    Cr2,
    StarStar,
    B1,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationResidual {
    pub relation: String,
    /// Holds exactly in the monomial representation.
    pub exact: bool,
    /// Largest entry of `|LHS - RHS|` in double precision.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPresentation {
    pub relation_set: RelationSet,
    pub dimension: usize,
    /// Generator names and matrices, in the order `U, V, W, X` (no `W` for `B1`).
    pub generators: Vec<(&'static str, MonomialMatrix)>,
    /// Scalar of the `UV` relation: `ξ'` for `B1`, `ξ` for the block presentation.
    pub uv_scalar: Phase,
    pub residuals: Vec<RelationResidual>,
    pub unitarity: f64,
}

impl MatrixPresentation {
    pub fn get(&self, name: &str) -> Option<&MonomialMatrix> {
        self.generators.iter().find(|(n, _)| *n == name).map(|(_, m)| m)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

/// `lhs = scalar · rhs`, words over generator indices.
struct Rel {
    name: &'static str,
    lhs: Vec<(usize, i64)>,
    scalar: Phase,
    rhs: Vec<(usize, i64)>,
}

fn rel(name: &'static str, lhs: &[(usize, i64)], scalar: Phase, rhs: &[(usize, i64)]) -> Rel {
    Rel {
        name,
        lhs: lhs.to_vec(),
        scalar,
        rhs: rhs.to_vec(),
    }
}

fn exact_word(gens: &[MonomialMatrix], word: &[(usize, i64)]) -> MonomialMatrix {
    word.iter()
        .fold(MonomialMatrix::identity(gens[0].dim()), |acc, &(g, e)| acc.mul(&gens[g].pow(e)))
}

fn dense_pow(m: &DMatrix<Complex64>, e: i64) -> DMatrix<Complex64> {
    let mut base = if e < 0 { m.adjoint() } else { m.clone() };
    let mut acc = DMatrix::identity(m.nrows(), m.ncols());
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

fn dense_word(dense: &[DMatrix<Complex64>], word: &[(usize, i64)]) -> DMatrix<Complex64> {
    let n = dense[0].nrows();
    word.iter()
        .fold(DMatrix::identity(n, n), |acc, &(g, e)| acc * dense_pow(&dense[g], e))
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Checks every relation exactly and in double precision, plus unitarity.
fn verify(
    names: &[&'static str],
    gens: &[MonomialMatrix],
    rels: &[Rel],
    opts: &BuildOptions,
) -> Result<(Vec<RelationResidual>, f64)> {
    let dense: Vec<_> = gens.iter().map(MonomialMatrix::to_dense).collect();
    let n = gens[0].dim();
    let eye = DMatrix::<Complex64>::identity(n, n);
    let mut unitarity = 0.0f64;
    for (name, m) in names.iter().zip(&dense) {
        let u = max_abs(&(m.adjoint() * m - &eye));
        if u > opts.unitarity_tol {
            return Err(Error::Construction {
                relation: format!("unitarity of {name}"),
                residual: u,
                tol: opts.unitarity_tol,
            });
        }
        unitarity = unitarity.max(u);
    }
    let mut out = Vec::with_capacity(rels.len());
    for r in rels {
        let exact = exact_word(gens, &r.lhs) == exact_word(gens, &r.rhs).scale(r.scalar);
        let diff = dense_word(&dense, &r.lhs) - dense_word(&dense, &r.rhs) * r.scalar.to_complex();
        let residual = max_abs(&diff);
        if !exact || residual > opts.tol {
            return Err(Error::Construction {
                relation: r.name.to_string(),
                residual,
                tol: opts.tol,
            });
        }
        out.push(RelationResidual {
            relation: r.name.to_string(),
            exact,
            residual,
        });
    }
    Ok((out, unitarity))
}

fn check_dim(dim: usize, opts: &BuildOptions) -> Result<()> {
    if dim > opts.max_dim {
        return Err(Error::DimensionTooLarge {
            dim,
            cap: opts.max_dim,
        });
    }
    Ok(())
}

/// Clock and shift model of `U''V'' = ξ'' x^{α q2} V''U''`, `U''x = λ' x U''`,
/// `V''x = xV''` on `C^{q3} ⊗ C^n`, followed by the inverse of the second
/// change of variables. Returns `(u, v, x)`.
fn b1_generators(
    prof: &QuotientProfile,
    params: &GroupParams,
    xi2: Phase,
    opts: &BuildOptions,
) -> Result<[MonomialMatrix; 3]> {
    let q3 = prof.q3 as usize;
    let omega = prof.lambda_prime();
    let aq2 = params.alpha() * prof.q2;
    let kappa = xi2 + omega.scaled(aq2 * (prof.q3 - 1), 2);
    let n = kappa.order() as usize;
    check_dim(q3 * n, opts)?;

    let clock = |base: Phase, len: usize| {
        MonomialMatrix::diagonal((0..len as i64).map(|t| base.pow(t)).collect())
    };
    let u2 = MonomialMatrix::cyclic_shift(q3, -1).kron(&clock(kappa, n));
    let mut f = vec![Phase::zero(); q3];
    for i in 1..q3 {
        f[i] = f[i - 1] + xi2 - kappa + omega.pow(aq2 * (i as i64 - 1));
    }
    let v2 = MonomialMatrix::diagonal(f).kron(&MonomialMatrix::cyclic_shift(n, 1));
    let x = clock(omega, q3).kron(&MonomialMatrix::identity(n));

    let [a2, b2, c2, d2] = prof.cov2;
    let u = u2.pow(d2).mul(&v2.pow(-b2));
    let v = u2.pow(-c2).mul(&v2.pow(a2));
    Ok([u, v, x])
}

/// `uv = ξ' x^{q2 α} vu`, `ux = λ^{q2 a γ} xu`, `vx = λ^{cγ} xv`, `x^{q3} = 1`.
pub fn build_b1(
    prof: &QuotientProfile,
    params: &GroupParams,
    xi_prime: Phase,
    opts: &BuildOptions,
) -> Result<MatrixPresentation> {
    let aq2 = params.alpha() * prof.q2;
    // The u, v scalar is ξ'' times a constant fixed by the integers alone.
    let [u, v, x] = b1_generators(prof, params, Phase::zero(), opts)?;
    let lhs = u.mul(&v);
    let rhs = x.pow(aq2).mul(&v).mul(&u);
    let c0 = lhs
        .scalar_ratio(&rhs)
        .ok_or_else(|| Error::Internal("uv and x^(q2 α) vu differ by more than a scalar".into()))?;
    let gens = b1_generators(prof, params, xi_prime - c0, opts)?;

    let [a, _, c, _] = prof.cov1;
    let ga = params.gamma();
    let rels = [
        rel("uv", &[(0, 1), (1, 1)], xi_prime, &[(2, aq2), (1, 1), (0, 1)]),
        rel("ux", &[(0, 1), (2, 1)], prof.lambda(prof.q2 * a * ga), &[(2, 1), (0, 1)]),
        rel("vx", &[(1, 1), (2, 1)], prof.lambda(c * ga), &[(2, 1), (1, 1)]),
        rel("x^q3", &[(2, prof.q3)], Phase::zero(), &[]),
    ];
    let names = ["u", "v", "x"];
    let (residuals, unitarity) = verify(&names, &gens, &rels, opts)?;
    let dimension = gens[0].dim();
    Ok(MatrixPresentation {
        relation_set: RelationSet::B1,
        dimension,
        generators: names.into_iter().zip(gens).collect(),
        uv_scalar: xi_prime,
        residuals,
        unitarity,
    })
}

/// `τ_j = ξ^{-(j-1)} λ^{a α γ j(j-1)/2}` for `j = 1..=q2`.
pub fn tau(prof: &QuotientProfile, params: &GroupParams, xi: Phase) -> Vec<Phase> {
    let aag = prof.cov1[0] * params.alpha() * params.gamma();
    (1..=prof.q2)
        .map(|j| -xi.pow(j - 1) + prof.lambda(aag * (j * (j - 1) / 2)))
        .collect()
}

/// `U'` (block companion with `u` in the corner), `V' = diag(τ_j x^{-(j-1)α} v)`,
/// `W = diag(ζ^{-(j-1)})`, `X1 = diag(λ^{-(j-1)aγ} x)`, checked against
/// `U'V' = ξ X1^α V'U'`, `U'X1 = λ^{aγ} X1 U'`, `U'W = λ^{δ'} W U'`,
/// `V'X1 = λ^{cγ} X1 V'`, the commuting pairs, `W^{q2} = 1` and `X1^{q1} = 1`.
pub fn build_block_presentation(
    prof: &QuotientProfile,
    params: &GroupParams,
    b1: &MatrixPresentation,
    xi: Phase,
    opts: &BuildOptions,
) -> Result<MatrixPresentation> {
    let q2 = prof.q2;
    let xi_prime = xi.pow(q2) + prof.lambda(prof.scalars.s_prime);
    if b1.relation_set != RelationSet::B1 || b1.uv_scalar != xi_prime {
        return Err(Error::InvalidParams(format!(
            "B1 scalar {} does not match ξ^q2 λ^s' = {xi_prime}",
            b1.uv_scalar
        )));
    }
    let m = b1.dimension;
    check_dim(m * q2 as usize, opts)?;
    let (u, v, x) = (
        b1.get("u").expect("B1 has u"),
        b1.get("v").expect("B1 has v"),
        b1.get("x").expect("B1 has x"),
    );
    let [a, _, c, _] = prof.cov1;
    let (al, ga) = (params.alpha(), params.gamma());
    let eye = MonomialMatrix::identity(m);
    let zeta = prof.lambda(prof.delta_prime);

    let q2u = q2 as usize;
    let mut blocks = vec![(0, q2u - 1, u)];
    blocks.extend((1..q2u).map(|j| (j, j - 1, &eye)));
    let big_u = MonomialMatrix::from_blocks(q2u, &blocks);
    let taus = tau(prof, params, xi);
    let big_v = MonomialMatrix::block_diagonal(
        &(0..q2)
            .map(|j| x.pow(-j * al).mul(v).scale(taus[j as usize]))
            .collect::<Vec<_>>(),
    );
    let big_w = MonomialMatrix::block_diagonal(
        &(0..q2).map(|j| eye.scale(-zeta.pow(j))).collect::<Vec<_>>(),
    );
    let big_x = MonomialMatrix::block_diagonal(
        &(0..q2).map(|j| x.scale(prof.lambda(-j * a * ga))).collect::<Vec<_>>(),
    );

    let (iu, iv, iw, ix) = (0, 1, 2, 3);
    let rels = [
        rel("U'V'", &[(iu, 1), (iv, 1)], xi, &[(ix, al), (iv, 1), (iu, 1)]),
        rel("U'X1", &[(iu, 1), (ix, 1)], prof.lambda(a * ga), &[(ix, 1), (iu, 1)]),
        rel("U'W", &[(iu, 1), (iw, 1)], zeta, &[(iw, 1), (iu, 1)]),
        rel("V'X1", &[(iv, 1), (ix, 1)], prof.lambda(c * ga), &[(ix, 1), (iv, 1)]),
        rel("V'W", &[(iv, 1), (iw, 1)], Phase::zero(), &[(iw, 1), (iv, 1)]),
        rel("WX1", &[(iw, 1), (ix, 1)], Phase::zero(), &[(ix, 1), (iw, 1)]),
        rel("W^q2", &[(iw, q2)], Phase::zero(), &[]),
        rel("X1^q1", &[(ix, prof.q1)], Phase::zero(), &[]),
    ];
    let names = ["U'", "V'", "W", "X1"];
    let gens = [big_u, big_v, big_w, big_x];
    let (residuals, unitarity) = verify(&names, &gens, &rels, opts)?;
    Ok(MatrixPresentation {
        relation_set: RelationSet::Cr2,
        dimension: gens[0].dim(),
        generators: names.into_iter().zip(gens).collect(),
        uv_scalar: xi,
        residuals,
        unitarity,
    })
}

#[derive(Debug, Clone)]
pub struct QuotientModel {
    pub profile: QuotientProfile,
    pub xi: Phase,
    pub xi_prime: Phase,
    pub b1: MatrixPresentation,
    pub block: MatrixPresentation,
}

/// Profile, `B1` and block presentation for `λ = e^{2πi p/q}` and a given `μ`.
/// `ξ` defaults to `λ^{β'} μ^α`; `None` for `μ` means it is not a root of unity.
pub fn build_model(
    q: i64,
    p: i64,
    params: &GroupParams,
    mu: Option<Phase>,
    xi_override: Option<Phase>,
    opts: &BuildOptions,
) -> Result<QuotientModel> {
    let profile = super::derive_profile(q, p, params)?;
    let xi = match (xi_override, mu) {
        (Some(xi), _) => xi,
        (None, Some(mu)) => profile.eval(profile.scalars.xi, mu),
        (None, None) => {
            return Err(Error::UnsupportedRegime(
                "μ is not a root of unity, so ξ' has no finite-dimensional model".into(),
            ))
        }
    };
    let xi_prime = xi.pow(profile.q2) + profile.lambda(profile.scalars.s_prime);
    let b1 = build_b1(&profile, params, xi_prime, opts)?;
    let block = build_block_presentation(&profile, params, &b1, xi, opts)?;
    Ok(QuotientModel {
        profile,
        xi,
        xi_prime,
        b1,
        block,
    })
}
