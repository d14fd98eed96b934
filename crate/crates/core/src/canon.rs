//! Canonical parameters and explicit base-change isomorphisms.
//!
//! A [`BaseChangeWitness`] stores five elements of the *source* group that
//! satisfy the commutator table of the *target* group. Sending the target's
//! generators to them gives an isomorphism `H(target) -> H(source)`; the two
//! flips are involutive coordinate maps, so for them the same formula also
//! runs `H(source) -> H(target)`.

use serde::{Deserialize, Serialize};

use crate::arith::{bezout, bezout_all, gcd, gcd_all};
use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    /// `e3 -> e2^d e3`, `e5 -> e4^e e5`; `epsilon += d*gamma + e*delta`.
    EpsShift { d: i64, e: i64 },
    /// `(h,j,k,m,n) -> (-h,-j,k,-m,n)`; `epsilon -> -epsilon`.
    EpsFlip,
    /// `e2 -> e1^-q e2`, `e4 -> e2^r e3^g e4`, `e5 -> e3^-f e5`;
    /// `beta += q*alpha + r*gamma + f*delta + g*epsilon`.
    BetaShift { q: i64, r: i64, f: i64, g: i64 },
    /// `(h,j,k,m,n) -> (-h,j,k,-m,-n)`; `beta -> alpha*gamma - beta`.
    BetaFlip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseChangeWitness {
    pub kind: WitnessKind,
    pub source: GroupParams,
    pub target: GroupParams,
    /// Images of `e1..e5`, as elements of `H(source)`.
    pub generator_images: [Element; 5],
}

impl BaseChangeWitness {
    /// The induced map `H(target) -> H(source)`, by generator-word expansion.
    pub fn map(&self, x: &Element) -> Element {
        self.source.evaluate_word(&self.generator_images, x)
    }

    /// The first commutator relation of `target` violated by the images, if any.
    pub fn check(&self) -> Option<(usize, usize, Element)> {
        self.source
            .check_relations_of(&self.target, &self.generator_images)
    }
}

fn checked_sum(terms: &[(i64, i64)], base: i64, what: &'static str) -> Result<i64> {
    let mut acc = base as i128;
    for &(a, b) in terms {
        acc += a as i128 * b as i128;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow(what))
}

pub fn apply_eps_shift(params: &GroupParams, d: i64, e: i64) -> Result<BaseChangeWitness> {
    let eps = checked_sum(
        &[(d, params.gamma()), (e, params.delta())],
        params.epsilon(),
        "shifted epsilon",
    )?;
    let g = Element::generators();
    let mut images = g.clone();
    images[2] = params.multiply(&params.power(&g[1], d), &g[2]);
    images[4] = params.multiply(&params.power(&g[3], e), &g[4]);
    Ok(BaseChangeWitness {
        kind: WitnessKind::EpsShift { d, e },
        source: *params,
        target: params.with_epsilon(eps),
        generator_images: images,
    })
}

pub fn apply_eps_flip(params: &GroupParams) -> Result<BaseChangeWitness> {
    let eps = params
        .epsilon()
        .checked_neg()
        .ok_or(Error::Overflow("flipped epsilon"))?;
    Ok(BaseChangeWitness {
        kind: WitnessKind::EpsFlip,
        source: *params,
        target: params.with_epsilon(eps),
        generator_images: [
            Element::from([-1, 0, 0, 0, 0]),
            Element::from([0, -1, 0, 0, 0]),
            Element::from([0, 0, 1, 0, 0]),
            Element::from([0, 0, 0, -1, 0]),
            Element::from([0, 0, 0, 0, 1]),
        ],
    })
}

pub fn apply_beta_shift(
    params: &GroupParams,
    q: i64,
    r: i64,
    f: i64,
    g: i64,
) -> Result<BaseChangeWitness> {
    let beta = checked_sum(
        &[
            (q, params.alpha()),
            (r, params.gamma()),
            (f, params.delta()),
            (g, params.epsilon()),
        ],
        params.beta(),
        "shifted beta",
    )?;
    let e = Element::generators();
    let mut images = e.clone();
    images[1] = params.multiply(&params.power(&e[0], -q), &e[1]);
    images[3] = params.multiply(
        &params.multiply(&params.power(&e[1], r), &params.power(&e[2], g)),
        &e[3],
    );
    images[4] = params.multiply(&params.power(&e[2], -f), &e[4]);
    Ok(BaseChangeWitness {
        kind: WitnessKind::BetaShift { q, r, f, g },
        source: *params,
        target: params.with_beta(beta),
        generator_images: images,
    })
}

pub fn apply_beta_flip(params: &GroupParams) -> Result<BaseChangeWitness> {
    let neg = params
        .beta()
        .checked_neg()
        .ok_or(Error::Overflow("flipped beta"))?;
    let beta = checked_sum(&[(params.alpha(), params.gamma())], neg, "flipped beta")?;
    Ok(BaseChangeWitness {
        kind: WitnessKind::BetaFlip,
        source: *params,
        target: params.with_beta(beta),
        generator_images: [
            Element::from([-1, 0, 0, 0, 0]),
            Element::from([0, 1, 0, 0, 0]),
            Element::from([0, 0, 1, 0, 0]),
            Element::from([0, 0, 0, -1, 0]),
            Element::from([0, 0, 0, 0, -1]),
        ],
    })
}

/// Applies a witness kind to `params`.
pub fn apply(params: &GroupParams, kind: WitnessKind) -> Result<BaseChangeWitness> {
    match kind {
        WitnessKind::EpsShift { d, e } => apply_eps_shift(params, d, e),
        WitnessKind::EpsFlip => apply_eps_flip(params),
        WitnessKind::BetaShift { q, r, f, g } => apply_beta_shift(params, q, r, f, g),
        WitnessKind::BetaFlip => apply_beta_flip(params),
    }
}

/// The canonical representative together with the chain of witnesses reaching it.
///
/// Epsilon is reduced first (modulo `gcd(gamma, delta)`, then flipped into the
/// lower half), then beta modulo `gcd(alpha, gamma, delta, epsilon)` using the
/// already reduced epsilon.
pub fn canonicalize_with_witnesses(
    params: &GroupParams,
) -> Result<(GroupParams, Vec<BaseChangeWitness>)> {
    let mut chain = Vec::new();
    let mut cur = *params;
    let mut push = |w: BaseChangeWitness, cur: &mut GroupParams| {
        *cur = w.target;
        chain.push(w);
    };

    let g = gcd(cur.gamma(), cur.delta());
    let (_, x, y) = bezout(cur.gamma(), cur.delta());
    let r = cur.epsilon().rem_euclid(g);
    if r != cur.epsilon() {
        let t = (r - cur.epsilon()) / g;
        let (d, e) = (mul(t, x)?, mul(t, y)?);
        push(apply_eps_shift(&cur, d, e)?, &mut cur);
    }
    if 2 * r > g {
        push(apply_eps_flip(&cur)?, &mut cur);
        push(apply_eps_shift(&cur, x, y)?, &mut cur);
    }

    let gens = [cur.alpha(), cur.gamma(), cur.delta(), cur.epsilon()];
    let big_g = gcd_all(&gens);
    let (_, c) = bezout_all(&gens);
    let shift_by = |cur: &GroupParams, t: i64| -> Result<BaseChangeWitness> {
        apply_beta_shift(cur, mul(t, c[0])?, mul(t, c[1])?, mul(t, c[2])?, mul(t, c[3])?)
    };
    let r = cur.beta().rem_euclid(big_g);
    if r != cur.beta() {
        let t = (r - cur.beta()) / big_g;
        let w = shift_by(&cur, t)?;
        push(w, &mut cur);
    }
    if 2 * r > big_g {
        push(apply_beta_flip(&cur)?, &mut cur);
        // alpha*gamma - r  ->  G - r
        let t = (big_g - r - cur.beta()) / big_g;
        let w = shift_by(&cur, t)?;
        push(w, &mut cur);
    }
    debug_assert!(cur.check_canonical_range().is_canonical());
    Ok((cur, chain))
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("witness coefficient"))
}

pub fn canonicalize(params: &GroupParams) -> Result<GroupParams> {
    canonicalize_with_witnesses(params).map(|(p, _)| p)
}

/// Isomorphism test: equality of canonical forms.
pub fn are_isomorphic(p1: &GroupParams, p2: &GroupParams) -> Result<bool> {
    Ok(canonicalize(p1)? == canonicalize(p2)?)
}
