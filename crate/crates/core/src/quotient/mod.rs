//! Simple quotients at a root of unity `λ = e^{2πi p/q}`: derived orders, the
//! two unimodular changes of variables and finite matrix models.

mod monomial;
mod phase;
mod presentation;

pub use monomial::MonomialMatrix;
pub use phase::Phase;
pub use presentation::{
    build_b1, build_block_presentation, build_model, max_dim_from_env, BuildOptions,
    MatrixPresentation, QuotientModel, RelationResidual, RelationSet,
};

use num_rational::Ratio;
use serde::Serialize;

use crate::arith::{bezout, gcd, lcm};
use crate::canon::canonicalize;
use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::rep::{measure_phase, Generator, GeneratorWord, OperatorFamily, PhasedMonomial};

pub use crate::arith::order_of_power;

/// A scalar `λ^{lambda_exp} μ^{mu_exp}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScalarExp {
    pub lambda_exp: i64,
    pub mu_exp: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarExponents {
    /// Scalar of the `U'V'` relation after the first change of variables.
    pub xi: ScalarExp,
    /// `ξ^{q2} λ^{s'}`, the scalar of the `u v` relation.
    pub xi_prime: ScalarExp,
    /// `λ^{δ'}`.
    pub zeta: ScalarExp,
    /// `ξ = λ^{β} μ^{α} λ^{s}`.
    pub s: i64,
    pub s_prime: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientProfile {
    pub q: i64,
    pub lambda_exp: i64,
    pub q1: i64,
    pub q2: i64,
    pub q3: i64,
    /// `(a, b, c, d)` with `ad - bc = 1` and `dδ + cε = 0`.
    pub cov1: [i64; 4],
    pub delta_prime: i64,
    /// `(a', b', c', d')` with `a'd' - b'c' = 1` and `cd' + a q2 c' = 0`.
    pub cov2: [i64; 4],
    /// `λ' = λ^{lambda_prime_exp}`.
    pub lambda_prime_exp: i64,
    pub scalars: ScalarExponents,
}

/// `(a, b, c, d)` with `ad - bc = 1` and `d·x + c·y = 0`, with `d >= 0` and
/// `(d, c) = (0, 1)` when `y = 0`.
fn unimodular_annihilator(x: i64, y: i64) -> Result<[i64; 4]> {
    let (d, c) = if y == 0 {
        (0, 1)
    } else {
        let g = gcd(x, y);
        let (d, c) = (y / g, -x / g);
        if d < 0 {
            (-d, -c)
        } else {
            (d, c)
        }
    };
    let (g, a, b) = bezout(d, -c);
    if g != 1 {
        return Err(Error::Internal(format!("({d}, {c}) not coprime")));
    }
    debug_assert_eq!(a * d - b * c, 1);
    Ok([a, b, c, d])
}

fn checked(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// A handful of fixed monomials; the actions are affine, so these pin down
/// any scalar relation.
fn probe_monomials() -> Vec<PhasedMonomial> {
    [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (3, -2, 5), (-4, 7, -3)]
        .into_iter()
        .map(|(k, a, b)| PhasedMonomial::new(k, a, b))
        .collect()
}

/// The `λ` exponent `e` with `lhs = λ^e rhs` in the monomial model.
fn scalar_between(params: &GroupParams, lhs: &GeneratorWord, rhs: &GeneratorWord) -> Result<i64> {
    match measure_phase(OperatorFamily::FGeneral, params, lhs, rhs, &probe_monomials())? {
        Some((l, 0)) => Ok(l),
        other => Err(Error::Internal(format!("{lhs} vs {rhs}: no scalar relation ({other:?})"))),
    }
}

/// Orders, changes of variables and scalar exponents for `λ = e^{2πi p/q}`.
pub fn derive_profile(q: i64, p: i64, params: &GroupParams) -> Result<QuotientProfile> {
    if q < 1 {
        return Err(Error::InvalidParams(format!("q must be positive, got {q}")));
    }
    if gcd(p, q) != 1 {
        return Err(Error::InvalidParams(format!("gcd(p, q) = gcd({p}, {q}) must be 1")));
    }
    let [_, _, ga, de, ep] = params.as_array();
    let q1 = order_of_power(q, ga);
    let q2 = lcm(order_of_power(q, de), order_of_power(q, ep));

    let [a, b, c, d] = unimodular_annihilator(de, ep)?;
    let delta_prime = checked(i128::from(b) * i128::from(de) + i128::from(a) * i128::from(ep), "δ'")?;
    if d * de + c * ep != 0 || delta_prime.abs() != gcd(de, ep) {
        return Err(Error::Internal("first change of variables".into()));
    }
    if order_of_power(q, delta_prime) != q2 {
        return Err(Error::Internal(format!("λ^δ' does not have order q2 = {q2}")));
    }

    let aq2 = checked(i128::from(a) * i128::from(q2), "a q2")?;
    let [a2, b2, c2, d2] = unimodular_annihilator(c, aq2)?;
    if c * d2 + aq2 * c2 != 0 {
        return Err(Error::Internal("second change of variables".into()));
    }
    let big_g = checked(
        i128::from(aq2) * i128::from(a2) + i128::from(c) * i128::from(b2),
        "λ' exponent",
    )?;
    // d'G' = a q2 and -c'G' = c, so λ'^{d'} and λ'^{-c'} are the u, v phases on x.
    if d2 * big_g != aq2 || -c2 * big_g != c {
        return Err(Error::Internal("second change of variables exponents".into()));
    }
    let lambda_prime_exp = checked(i128::from(ga) * i128::from(big_g), "λ' exponent")?;
    let q3 = order_of_power(q, lambda_prime_exp);
    let q3_lcm = lcm(
        order_of_power(q, checked(i128::from(aq2) * i128::from(ga), "q3")?),
        order_of_power(q, checked(i128::from(c) * i128::from(ga), "q3")?),
    );
    if q3 != q3_lcm || q1 % q3 != 0 {
        return Err(Error::Internal(format!("q3 = {q3}, lcm form {q3_lcm}, q1 = {q1}")));
    }

    let scalars = scalar_exponents(params, [a, b, c, d], delta_prime, q2)?;
    Ok(QuotientProfile {
        q,
        lambda_exp: p,
        q1,
        q2,
        q3,
        cov1: [a, b, c, d],
        delta_prime,
        cov2: [a2, b2, c2, d2],
        lambda_prime_exp,
        scalars,
    })
}

/// Reads the relations of `U' = U^a V^b`, `V' = U^c V^d` off the monomial model.
fn scalar_exponents(
    params: &GroupParams,
    [a, b, c, d]: [i64; 4],
    delta_prime: i64,
    q2: i64,
) -> Result<ScalarExponents> {
    use Generator::*;
    let [al, be, ga, _, _] = params.as_array();
    let u1 = GeneratorWord::letter(U, a).then(V, b);
    let v1 = GeneratorWord::letter(U, c).then(V, d);
    let w = GeneratorWord::letter(W, 1);
    let x = GeneratorWord::letter(X, 1);
    let x_al = GeneratorWord::letter(X, al);

    let beta_prime = scalar_between(params, &u1.concat(&v1), &x_al.concat(&v1).concat(&u1))?;
    let checks = [
        (scalar_between(params, &u1.concat(&w), &w.concat(&u1))?, delta_prime, "U'W"),
        (scalar_between(params, &v1.concat(&w), &w.concat(&v1))?, 0, "V'W"),
        (scalar_between(params, &u1.concat(&x), &x.concat(&u1))?, a * ga, "U'X"),
        (scalar_between(params, &v1.concat(&x), &x.concat(&v1))?, c * ga, "V'X"),
    ];
    for (got, want, name) in checks {
        if got != want {
            return Err(Error::Internal(format!("{name}: phase {got}, expected {want}")));
        }
    }

    let s_prime = checked(
        i128::from(a) * i128::from(al) * i128::from(ga) * i128::from(q2) * i128::from(q2 - 1) / 2,
        "s'",
    )?;
    // U'^{q2} V' = ξ^{q2} λ^{s'} X^{α q2} V' U'^{q2}
    let u_q2 = u1.pow(q2);
    let star = scalar_between(
        params,
        &u_q2.concat(&v1),
        &GeneratorWord::letter(X, al * q2).concat(&v1).concat(&u_q2),
    )?;
    let xi_prime_lambda = checked(i128::from(q2) * i128::from(beta_prime) + i128::from(s_prime), "ξ'")?;
    if star != xi_prime_lambda {
        return Err(Error::Internal(format!("(U')^q2 V' phase {star}, expected {xi_prime_lambda}")));
    }
    Ok(ScalarExponents {
        xi: ScalarExp {
            lambda_exp: beta_prime,
            mu_exp: al,
        },
        xi_prime: ScalarExp {
            lambda_exp: xi_prime_lambda,
            mu_exp: al * q2,
        },
        zeta: ScalarExp {
            lambda_exp: delta_prime,
            mu_exp: 0,
        },
        s: beta_prime - be,
        s_prime,
    })
}

impl QuotientProfile {
    pub fn lambda(&self, e: i64) -> Phase {
        Phase::lambda_pow(self.lambda_exp, self.q, e)
    }

    /// Evaluates `λ^l μ^m` for a root-of-unity `μ`.
    pub fn eval(&self, s: ScalarExp, mu: Phase) -> Phase {
        self.lambda(s.lambda_exp) + mu.pow(s.mu_exp)
    }

    pub fn lambda_prime(&self) -> Phase {
        self.lambda(self.lambda_prime_exp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuotientCase {
    FiniteDim,
    MatrixOverRotation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub case: QuotientCase,
    /// The canonical representative the report was computed on.
    pub canonical_params: [i64; 5],
    pub q1: i64,
    pub q2: i64,
    pub q3: i64,
    pub block_size: i64,
    /// `λ'` as a turn in `[0, 1/2]`, identifying `θ` with `-θ`.
    #[serde(serialize_with = "ser_ratio")]
    pub lambda_prime_turn: Ratio<i64>,
    /// Exponents of the scalar in `U''V'' = ξ1 X^{α q2} V''U''`.
    pub xi1: ScalarExp,
    pub description: String,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Classifies the simple quotient at `λ = e^{2πi p/q}`. Orders depend on the
/// presentation, so the report is computed on the canonical representative.
pub fn analyze_quotient(
    q: i64,
    p: i64,
    params: &GroupParams,
    mu_is_root_of_unity: bool,
) -> Result<StructureReport> {
    let canon = canonicalize(params)?;
    let prof = derive_profile(q, p, &canon)?;
    let lambda_prime_turn = prof.lambda_prime().up_to_sign();
    let (case, description) = if mu_is_root_of_unity {
        (
            QuotientCase::FiniteDim,
            format!(
                "finite dimensional: M_{}(B1) with B1 generated by u, v, x, x^{} = 1",
                prof.q2, prof.q3
            ),
        )
    } else {
        (
            QuotientCase::MatrixOverRotation,
            format!(
                "M_{}(D), D a crossed product of C(Z_{} x T) by the flow (w, v) -> (λ'w, ξ1 λ^(γα q2) v), λ' of order {}",
                prof.q2, prof.q1, prof.q3
            ),
        )
    };
    Ok(StructureReport {
        case,
        canonical_params: canon.as_array(),
        q1: prof.q1,
        q2: prof.q2,
        q3: prof.q3,
        block_size: prof.q2,
        lambda_prime_turn,
        xi1: prof.scalars.xi_prime,
        description,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: [i64; 5]) -> GroupParams {
        GroupParams::try_from(a).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_of_power(12, 3), 4);
        assert_eq!(order_of_power(12, 1), 12);
        assert_eq!(order_of_power(12, 0), 1);
    }

    #[test]
    fn profile_q12() {
        let prof = derive_profile(12, 1, &p([1, 0, 3, 4, 6])).unwrap();
        assert_eq!((prof.q1, prof.q2), (4, 6));
        assert_eq!(prof.cov1, [1, -1, -2, 3]);
        assert_eq!(prof.delta_prime, 2);
        assert_eq!(order_of_power(12, prof.delta_prime), prof.q2);
        assert_eq!(prof.q1 % prof.q3, 0);
    }

    #[test]
    fn profile_epsilon_zero() {
        let prof = derive_profile(5, 2, &p([2, 1, 3, 1, 0])).unwrap();
        assert_eq!(prof.cov1[2..], [1, 0]);
        assert_eq!(prof.cov1[1], -1);
        assert_eq!(prof.delta_prime, -1);
        assert_eq!(prof.q2, 5);
    }

    #[test]
    fn profile_q1() {
        let prof = derive_profile(1, 0, &p([2, 1, 3, 4, 5])).unwrap();
        assert_eq!((prof.q1, prof.q2, prof.q3), (1, 1, 1));
        assert!(prof.lambda(prof.scalars.xi.lambda_exp).is_zero());
    }

    #[test]
    fn profile_rejects_bad_roots() {
        assert!(derive_profile(0, 1, &p([1, 0, 1, 1, 0])).is_err());
        assert!(derive_profile(12, 4, &p([1, 0, 1, 1, 0])).is_err());
    }

    #[test]
    fn second_change_of_variables() {
        for params in [[1, 0, 3, 4, 6], [2, 3, 2, 6, 4], [3, 1, 1, 1, 0], [2, 1, 4, 2, 3]] {
            for q in [1, 2, 3, 4, 6, 8, 12] {
                let prof = derive_profile(q, 1, &p(params)).unwrap();
                let [a, _, c, _] = prof.cov1;
                let [a2, b2, c2, d2] = prof.cov2;
                assert_eq!(a2 * d2 - b2 * c2, 1);
                assert_eq!(c * d2 + a * prof.q2 * c2, 0);
                assert!(d2 >= 0);
            }
        }
    }

    #[test]
    fn analysis_cases() {
        let q = p([2, 1, 3, 4, 5]);
        let finite = analyze_quotient(12, 5, &q, true).unwrap();
        assert_eq!(finite.case, QuotientCase::FiniteDim);
        let rot = analyze_quotient(12, 5, &q, false).unwrap();
        assert_eq!(rot.case, QuotientCase::MatrixOverRotation);
        assert_eq!(rot.block_size, rot.q2);
        let trivial = analyze_quotient(1, 0, &q, true).unwrap();
        assert_eq!(trivial.case, QuotientCase::FiniteDim);
        assert_eq!((trivial.q1, trivial.q2, trivial.q3), (1, 1, 1));
    }
}
