//! Monomial model of the unitaries `U, V, W, X` acting on `w^a v^b`.
//!
//! A monomial `λ^k μ^l w^a v^b` is stored as its four exponents, and each
//! generator acts by an affine map on `(k, a, b)`. Operator identities become
//! integer identities that can be checked exactly on samples.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhasedMonomial {
    pub lambda_exp: i64,
    pub mu_exp: i64,
    pub w_exp: i64,
    pub v_exp: i64,
}

impl PhasedMonomial {
    pub const fn new(lambda_exp: i64, w_exp: i64, v_exp: i64) -> Self {
        Self {
            lambda_exp,
            mu_exp: 0,
            w_exp,
            v_exp,
        }
    }

    /// Uniform sample with `|w_exp|, |v_exp|, |lambda_exp| <= bound`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Self::new(
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        )
    }
}

impl fmt::Display for PhasedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "λ^{} μ^{} w^{} v^{}",
            self.lambda_exp, self.mu_exp, self.w_exp, self.v_exp
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    U,
    V,
    W,
    X,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::U => "U",
            Generator::V => "V",
            Generator::W => "W",
            Generator::X => "X",
        };
        f.write_str(s)
    }
}

/// `λ^{lambda_exp} μ^{mu_exp} g1^{e1} g2^{e2} …`, acting right to left.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GeneratorWord {
    pub letters: Vec<(Generator, i64)>,
    pub lambda_exp: i64,
    pub mu_exp: i64,
}

impl GeneratorWord {
    pub fn scalar(lambda_exp: i64, mu_exp: i64) -> Self {
        Self {
            letters: Vec::new(),
            lambda_exp,
            mu_exp,
        }
    }

    pub fn letter(g: Generator, e: i64) -> Self {
        Self::default().then(g, e)
    }

    /// Appends `g^e` on the right, merging with a trailing letter of the same generator.
    pub fn then(mut self, g: Generator, e: i64) -> Self {
        if e == 0 {
            return self;
        }
        match self.letters.last_mut() {
            Some((last, exp)) if *last == g => {
                *exp += e;
                if *exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
        self
    }

    pub fn times_lambda(mut self, e: i64) -> Self {
        self.lambda_exp += e;
        self
    }

    pub fn concat(&self, other: &GeneratorWord) -> Self {
        let mut out = self.clone();
        out.lambda_exp += other.lambda_exp;
        out.mu_exp += other.mu_exp;
        for &(g, e) in &other.letters {
            out = out.then(g, e);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::scalar(-self.lambda_exp, -self.mu_exp);
        for &(g, e) in self.letters.iter().rev() {
            out = out.then(g, -e);
        }
        out
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::default();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn is_scalar(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.lambda_exp != 0 {
            parts.push(format!("λ^{}", self.lambda_exp));
        }
        if self.mu_exp != 0 {
            parts.push(format!("μ^{}", self.mu_exp));
        }
        for (g, e) in &self.letters {
            if *e == 1 {
                parts.push(g.to_string());
            } else {
                parts.push(format!("{g}^{e}"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Which set of unitaries the generators stand for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OperatorFamily {
    /// The `ε = 0` model.
    FPrime,
    FGeneral,
}

impl OperatorFamily {
    pub fn check(self, params: &GroupParams) -> Result<()> {
        if self == OperatorFamily::FPrime && params.epsilon() != 0 {
            return Err(Error::FamilyMismatch(params.epsilon()));
        }
        Ok(())
    }
}

fn fit(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("monomial exponent"))
}

/// Action of `g^e` on `x`, in closed form (valid for negative `e`).
pub fn apply_generator_pow(
    family: OperatorFamily,
    params: &GroupParams,
    g: Generator,
    e: i64,
    x: &PhasedMonomial,
) -> Result<PhasedMonomial> {
    family.check(params)?;
    let [al, be, ga, de, ep] = params.as_array().map(i128::from);
    let (k, a, b, e) = (
        i128::from(x.lambda_exp),
        i128::from(x.w_exp),
        i128::from(x.v_exp),
        i128::from(e),
    );
    let tri = e * (e - 1) / 2;
    let (k2, a2, b2) = match (family, g) {
        (OperatorFamily::FPrime, Generator::U) => {
            (k + ga * (e * a + al * b * tri) + e * be * b, a + e * al * b, b)
        }
        (OperatorFamily::FGeneral, Generator::U) => {
            (k + e * a + al * ga * b * tri + e * be * b, a + e * al * ga * b, b)
        }
        (_, Generator::V) => (k, a, b + e),
        (OperatorFamily::FPrime, Generator::W) => (k - e * de * b, a, b),
        (OperatorFamily::FGeneral, Generator::W) => (k - e * de * b, a + e * ep, b),
        (OperatorFamily::FPrime, Generator::X) => (k, a + e, b),
        (OperatorFamily::FGeneral, Generator::X) => (k, a + e * ga, b),
    };
    Ok(PhasedMonomial {
        lambda_exp: fit(k2)?,
        mu_exp: x.mu_exp,
        w_exp: fit(a2)?,
        v_exp: fit(b2)?,
    })
}

pub fn apply_generator(
    family: OperatorFamily,
    params: &GroupParams,
    g: Generator,
    x: &PhasedMonomial,
) -> Result<PhasedMonomial> {
    apply_generator_pow(family, params, g, 1, x)
}

pub fn apply_word(
    family: OperatorFamily,
    params: &GroupParams,
    word: &GeneratorWord,
    x: &PhasedMonomial,
) -> Result<PhasedMonomial> {
    let mut cur = *x;
    for &(g, e) in word.letters.iter().rev() {
        cur = apply_generator_pow(family, params, g, e, &cur)?;
    }
    cur.lambda_exp = fit(i128::from(cur.lambda_exp) + i128::from(word.lambda_exp))?;
    cur.mu_exp = fit(i128::from(cur.mu_exp) + i128::from(word.mu_exp))?;
    Ok(cur)
}

/// First sample on which `lhs` and `rhs` disagree.
pub fn find_counterexample(
    family: OperatorFamily,
    params: &GroupParams,
    lhs: &GeneratorWord,
    rhs: &GeneratorWord,
    samples: &[PhasedMonomial],
) -> Result<Option<PhasedMonomial>> {
    for x in samples {
        if apply_word(family, params, lhs, x)? != apply_word(family, params, rhs, x)? {
            return Ok(Some(*x));
        }
    }
    Ok(None)
}

pub fn verify_relation(
    family: OperatorFamily,
    params: &GroupParams,
    lhs: &GeneratorWord,
    rhs: &GeneratorWord,
    samples: &[PhasedMonomial],
) -> Result<bool> {
    Ok(find_counterexample(family, params, lhs, rhs, samples)?.is_none())
}

/// The constant `(λ, μ)` exponents `p` with `lhs = λ^{p.0} μ^{p.1} rhs` on every
/// sample, or `None` if the two sides differ by more than a scalar.
pub fn measure_phase(
    family: OperatorFamily,
    params: &GroupParams,
    lhs: &GeneratorWord,
    rhs: &GeneratorWord,
    samples: &[PhasedMonomial],
) -> Result<Option<(i64, i64)>> {
    let mut found: Option<(i64, i64)> = None;
    for x in samples {
        let l = apply_word(family, params, lhs, x)?;
        let r = apply_word(family, params, rhs, x)?;
        if (l.w_exp, l.v_exp) != (r.w_exp, r.v_exp) {
            return Ok(None);
        }
        let d = (l.lambda_exp - r.lambda_exp, l.mu_exp - r.mu_exp);
        match found {
            None => found = Some(d),
            Some(prev) if prev != d => return Ok(None),
            _ => {}
        }
    }
    Ok(found)
}

/// A named relation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: GeneratorWord,
    pub rhs: GeneratorWord,
}

fn rel(name: &'static str, lhs: GeneratorWord, rhs: GeneratorWord) -> Relation {
    Relation { name, lhs, rhs }
}

fn w2(g: Generator, h: Generator) -> GeneratorWord {
    GeneratorWord::letter(g, 1).then(h, 1)
}

/// The defining relations for the family: `UV = λ^β X^α VU`, `UX = λ^γ XU`,
/// `VW = λ^δ WV`, `UW = λ^ε WU`, and `X` commuting with `V` and `W`.
pub fn defining_relations(family: OperatorFamily, params: &GroupParams) -> Result<Vec<Relation>> {
    use Generator::*;
    family.check(params)?;
    let uv_rhs = GeneratorWord::scalar(params.beta(), 0)
        .then(X, params.alpha())
        .then(V, 1)
        .then(U, 1);
    Ok(vec![
        rel("UV", w2(U, V), uv_rhs),
        rel("UX", w2(U, X), w2(X, U).times_lambda(params.gamma())),
        rel("VW", w2(V, W), w2(W, V).times_lambda(params.delta())),
        rel("UW", w2(U, W), w2(W, U).times_lambda(params.epsilon())),
        rel("VX", w2(V, X), w2(X, V)),
        rel("WX", w2(W, X), w2(X, W)),
    ])
}

/// `π(h,j,k,m,n) = λ^h X^j W^k V^m U^n`.
pub fn group_rep(s: &Element) -> Result<GeneratorWord> {
    let [h, j, k, m, n] = s.to_i64().ok_or(Error::Overflow("group_rep coordinates"))?;
    Ok(GeneratorWord::scalar(h, 0)
        .then(Generator::X, j)
        .then(Generator::W, k)
        .then(Generator::V, m)
        .then(Generator::U, n))
}

/// Exponents read off from the transformed generators
/// `U1 = U^s V^{b1} W^{c1}`, `V1 = V^s W^{c2}`, `W1 = W`, `X1 = X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformReport {
    pub u1: GeneratorWord,
    pub v1: GeneratorWord,
    /// `U1 V1 = λ^{uv} X^α V1 U1`.
    pub uv_exponent: Option<i64>,
    pub ux_exponent: Option<i64>,
    pub vw_exponent: Option<i64>,
    pub uw_exponent: Option<i64>,
    /// `V1` and `W1` still commute with `X`, and `U1`, `V1` with nothing else new.
    pub commuting_ok: bool,
    pub gamma_unchanged: bool,
    pub delta_unchanged: bool,
}

pub fn canonical_transform(
    params: &GroupParams,
    b1: i64,
    c1: i64,
    c2: i64,
    sign: i64,
    samples: &[PhasedMonomial],
) -> Result<TransformReport> {
    use Generator::*;
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParams(format!("sign must be +1 or -1, got {sign}")));
    }
    let fam = OperatorFamily::FGeneral;
    let u1 = GeneratorWord::letter(U, sign).then(V, b1).then(W, c1);
    let v1 = GeneratorWord::letter(V, sign).then(W, c2);
    let w1 = GeneratorWord::letter(W, 1);
    let x1 = GeneratorWord::letter(X, 1);
    let comm = |p: &GeneratorWord, q: &GeneratorWord, middle: &GeneratorWord| {
        let lhs = p.concat(q);
        let rhs = middle.concat(q).concat(p);
        measure_phase(fam, params, &lhs, &rhs, samples)
    };
    let one = GeneratorWord::default();
    let x_alpha = GeneratorWord::letter(X, params.alpha());
    let first = |p: Option<(i64, i64)>| p.map(|(l, _)| l);
    let uv = first(comm(&u1, &v1, &x_alpha)?);
    let ux = first(comm(&u1, &x1, &one)?);
    let vw = first(comm(&v1, &w1, &one)?);
    let uw = first(comm(&u1, &w1, &one)?);
    let commuting_ok = comm(&v1, &x1, &one)? == Some((0, 0)) && comm(&w1, &x1, &one)? == Some((0, 0));
    Ok(TransformReport {
        gamma_unchanged: ux.map(i64::abs) == Some(params.gamma()),
        delta_unchanged: vw.map(i64::abs) == Some(params.delta()),
        u1,
        v1,
        uv_exponent: uv,
        ux_exponent: ux,
        vw_exponent: vw,
        uw_exponent: uw,
        commuting_ok,
    })
}

pub fn random_monomials<R: Rng + ?Sized>(rng: &mut R, count: usize, bound: i64) -> Vec<PhasedMonomial> {
    (0..count).map(|_| PhasedMonomial::random(rng, bound)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use Generator::*;

    fn p(a: [i64; 5]) -> GroupParams {
        GroupParams::try_from(a).unwrap()
    }
    const G: OperatorFamily = OperatorFamily::FGeneral;
    const P: OperatorFamily = OperatorFamily::FPrime;

    fn samples(seed: u64) -> Vec<PhasedMonomial> {
        random_monomials(&mut ChaCha8Rng::seed_from_u64(seed), 100, 50)
    }

    #[test]
    fn action_examples() {
        let q = p([2, 1, 3, 4, 5]);
        let m = |k, a, b| PhasedMonomial::new(k, a, b);
        assert_eq!(apply_generator(G, &q, U, &m(0, 1, 0)).unwrap(), m(1, 1, 0));
        assert_eq!(apply_generator(G, &q, W, &m(0, 0, 1)).unwrap(), m(-4, 5, 1));
        assert_eq!(apply_generator(G, &q, V, &m(0, 0, 0)).unwrap(), m(0, 0, 1));
        let q0 = p([2, 1, 3, 4, 0]);
        assert_eq!(apply_generator(P, &q0, X, &m(0, 0, 0)).unwrap(), m(0, 1, 0));
        assert!(apply_generator(P, &q, X, &m(0, 0, 0)).is_err());
    }

    #[test]
    fn word_examples() {
        let q = p([2, 1, 3, 4, 5]);
        let zero = PhasedMonomial::new(0, 0, 0);
        let x = PhasedMonomial::new(3, -2, 7);
        assert_eq!(apply_word(G, &q, &GeneratorWord::default(), &x).unwrap(), x);
        let uv = GeneratorWord::letter(U, 1).then(V, 1);
        assert_eq!(apply_word(G, &q, &uv, &zero).unwrap(), PhasedMonomial::new(1, 6, 1));
        let rhs = GeneratorWord::scalar(1, 0).then(X, 2).then(V, 1).then(U, 1);
        assert_eq!(apply_word(G, &q, &rhs, &zero).unwrap(), PhasedMonomial::new(1, 6, 1));
    }

    #[test]
    fn powers_match_repeated_application() {
        let q = p([2, -3, 3, 4, 5]);
        let q0 = p([3, 2, 2, 5, 0]);
        let x = PhasedMonomial::new(4, -3, 5);
        for (fam, params) in [(G, q), (P, q0)] {
            for g in [U, V, W, X] {
                let mut cur = x;
                for _ in 0..4 {
                    cur = apply_generator(fam, &params, g, &cur).unwrap();
                }
                assert_eq!(apply_generator_pow(fam, &params, g, 4, &x).unwrap(), cur);
                let back = apply_generator_pow(fam, &params, g, -4, &cur).unwrap();
                assert_eq!(back, x);
            }
        }
    }

    #[test]
    fn defining_relations_hold() {
        let s = samples(1);
        for params in [[2, 1, 3, 4, 5], [1, 0, 1, 1, 0], [3, -7, 2, 6, -4]] {
            let q = p(params);
            for r in defining_relations(G, &q).unwrap() {
                assert!(verify_relation(G, &q, &r.lhs, &r.rhs, &s).unwrap(), "{}", r.name);
            }
        }
        let q0 = p([3, 2, 2, 5, 0]);
        for r in defining_relations(P, &q0).unwrap() {
            assert!(verify_relation(P, &q0, &r.lhs, &r.rhs, &s).unwrap(), "{}", r.name);
        }
    }

    #[test]
    fn perturbed_relation_fails() {
        let q = p([2, 1, 3, 4, 5]);
        let lhs = GeneratorWord::letter(U, 1).then(X, 1);
        let rhs = GeneratorWord::scalar(4, 0).then(X, 1).then(U, 1);
        assert!(!verify_relation(G, &q, &lhs, &rhs, &samples(2)).unwrap());
        assert_eq!(measure_phase(G, &q, &lhs, &rhs, &samples(2)).unwrap(), Some((-1, 0)));
    }

    #[test]
    fn group_rep_examples() {
        assert!(group_rep(&Element::identity()).unwrap() == GeneratorWord::default());
        let l = group_rep(&Element::generator(1)).unwrap();
        assert!(l.is_scalar() && l.lambda_exp == 1);
        let q = p([2, 1, 3, 4, 5]);
        let (e5, e4) = (Element::generator(5), Element::generator(4));
        let lhs = group_rep(&e5).unwrap().concat(&group_rep(&e4).unwrap());
        let rhs = group_rep(&q.multiply(&e5, &e4)).unwrap();
        assert!(verify_relation(G, &q, &lhs, &rhs, &samples(3)).unwrap());
    }

    #[test]
    fn transform_examples() {
        let q = p([2, 1, 3, 4, 5]);
        let s = samples(4);
        let r = canonical_transform(&q, 0, 0, 0, 1, &s).unwrap();
        assert_eq!(
            (r.uv_exponent, r.ux_exponent, r.vw_exponent, r.uw_exponent),
            (Some(1), Some(3), Some(4), Some(5))
        );
        let r = canonical_transform(&q, 1, 0, 0, 1, &s).unwrap();
        assert_eq!(r.uw_exponent, Some(9));
        let r = canonical_transform(&q, 2, -1, 3, -1, &s).unwrap();
        assert_eq!(r.uw_exponent, Some(8 - 5));
        assert!(r.gamma_unchanged && r.delta_unchanged && r.commuting_ok);
    }

    fn params_strategy() -> impl Strategy<Value = GroupParams> {
        (1i64..7, -10i64..10, 1i64..7, 1i64..7, -10i64..10)
            .prop_map(|(a, b, c, d, e)| GroupParams::try_from([a, b, c, d, e]).unwrap())
    }

    fn mono_strategy() -> impl Strategy<Value = PhasedMonomial> {
        (-100i64..100, -100i64..100, -100i64..100).prop_map(|(k, a, b)| PhasedMonomial::new(k, a, b))
    }

    proptest! {
        #[test]
        fn generators_are_invertible(q in params_strategy(), x in mono_strategy(), e in -5i64..5) {
            for g in [U, V, W, X] {
                let y = apply_generator_pow(G, &q, g, e, &x).unwrap();
                prop_assert_eq!(apply_generator_pow(G, &q, g, -e, &y).unwrap(), x);
            }
        }

        #[test]
        fn phases_are_additive(q in params_strategy(), x in mono_strategy(), shift in -50i64..50) {
            // Scaling the input by λ^shift scales every output by λ^shift.
            let shifted = PhasedMonomial { lambda_exp: x.lambda_exp + shift, ..x };
            for g in [U, V, W, X] {
                let a = apply_generator(G, &q, g, &x).unwrap();
                let b = apply_generator(G, &q, g, &shifted).unwrap();
                prop_assert_eq!(b.lambda_exp - a.lambda_exp, shift);
                prop_assert_eq!((a.w_exp, a.v_exp), (b.w_exp, b.v_exp));
            }
        }

        #[test]
        fn u_and_w_commute_up_to_epsilon(q in params_strategy(), x in mono_strategy()) {
            let uw = GeneratorWord::letter(U, 1).then(W, 1);
            let wu = GeneratorWord::letter(W, 1).then(U, 1);
            prop_assert_eq!(
                measure_phase(G, &q, &uw, &wu, &[x]).unwrap(),
                Some((q.epsilon(), 0))
            );
        }

        #[test]
        fn pi_is_multiplicative(
            q in params_strategy(),
            s in prop::array::uniform5(-20i64..20),
            t in prop::array::uniform5(-20i64..20),
            x in mono_strategy(),
        ) {
            let (s, t) = (Element::from(s), Element::from(t));
            let lhs = group_rep(&s).unwrap().concat(&group_rep(&t).unwrap());
            let rhs = group_rep(&q.multiply(&s, &t)).unwrap();
            prop_assert!(verify_relation(G, &q, &lhs, &rhs, &[x]).unwrap());
        }

        #[test]
        fn transform_keeps_gamma_and_delta(
            q in params_strategy(),
            b1 in -3i64..=3, c1 in -3i64..=3, c2 in -3i64..=3,
            neg in any::<bool>(),
        ) {
            let sign = if neg { -1 } else { 1 };
            let r = canonical_transform(&q, b1, c1, c2, sign, &samples(5)).unwrap();
            prop_assert!(r.gamma_unchanged && r.delta_unchanged && r.commuting_ok);
            prop_assert_eq!(r.uw_exponent, Some(q.delta() * b1 + sign * q.epsilon()));
            prop_assert!(r.uv_exponent.is_some());
        }
    }
}
