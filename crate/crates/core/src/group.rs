//! Group law of `H_{5,3}(alpha, beta, gamma, delta, epsilon)`.
//!
//! Elements are points `(h, j, k, m, n)` of `Z^5`; the point equals the normal
//! word `e1^h e2^j e3^k e4^m e5^n` in the generators. The lattice subgroup
//! `H_{5,3}` of `G_{5,3}` is the member with parameters `(1, 0, 1, 1, 0)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, gcd_all, half_pronic};
use crate::error::{Error, Result};

/// The five integers selecting one group of the family.
///
/// `alpha`, `gamma` and `delta` are positive; `beta` and `epsilon` are free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 5]", into = "[i64; 5]")]
pub struct GroupParams {
    alpha: i64,
    beta: i64,
    gamma: i64,
    delta: i64,
    epsilon: i64,
}

impl GroupParams {
    pub fn new(alpha: i64, beta: i64, gamma: i64, delta: i64, epsilon: i64) -> Result<Self> {
        if alpha <= 0 || gamma <= 0 || delta <= 0 {
            return Err(Error::InvalidParams(format!(
                "alpha, gamma, delta must be positive, got ({alpha},{beta},{gamma},{delta},{epsilon})"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
        })
    }

    /// The lattice subgroup `H_{5,3} = H_{5,3}(1,0,1,1,0)`.
    pub fn lattice() -> Self {
        Self {
            alpha: 1,
            beta: 0,
            gamma: 1,
            delta: 1,
            epsilon: 0,
        }
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }
    pub fn beta(&self) -> i64 {
        self.beta
    }
    pub fn gamma(&self) -> i64 {
        self.gamma
    }
    pub fn delta(&self) -> i64 {
        self.delta
    }
    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.alpha, self.beta, self.gamma, self.delta, self.epsilon]
    }

    pub fn with_beta(&self, beta: i64) -> Self {
        Self { beta, ..*self }
    }

    pub fn with_epsilon(&self, epsilon: i64) -> Self {
        Self { epsilon, ..*self }
    }

    /// Product `a·b`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let (al, be, ga, de, ep) = self.big();
        let n = &a.n;
        let h = &a.h
            + &b.h
            + &ga * n * &b.j
            + &al * &ga * &b.m * half_pronic(n)
            + &be * n * &b.m
            + &de * &a.m * &b.k
            + &ep * n * &b.k;
        let j = &a.j + &b.j + &al * n * &b.m;
        Element {
            h,
            j,
            k: &a.k + &b.k,
            m: &a.m + &b.m,
            n: &a.n + &b.n,
        }
    }

    /// Inverse by back-substitution of `a * x = 1`: `n, m, k` first, then `j`, then `h`.
    pub fn inverse(&self, a: &Element) -> Element {
        let (al, be, ga, de, ep) = self.big();
        let (n_inv, m_inv, k_inv) = (-&a.n, -&a.m, -&a.k);
        let j_inv = -&a.j - &al * &a.n * &m_inv;
        let h_inv = -&a.h
            - &ga * &a.n * &j_inv
            - &al * &ga * &m_inv * half_pronic(&a.n)
            - &be * &a.n * &m_inv
            - &de * &a.m * &k_inv
            - &ep * &a.n * &k_inv;
        Element {
            h: h_inv,
            j: j_inv,
            k: k_inv,
            m: m_inv,
            n: n_inv,
        }
    }

    /// `a^n` by repeated squaring; negative exponents go through the inverse.
    pub fn power(&self, a: &Element, n: i64) -> Element {
        let mut base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Element::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// Power with an arbitrary-precision exponent.
    pub fn power_big(&self, a: &Element, n: &BigInt) -> Element {
        let mut base = if n.is_negative() {
            self.inverse(a)
        } else {
            a.clone()
        };
        let mut e = n.abs();
        let mut acc = Element::identity();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = self.multiply(&acc, &base);
            }
            e /= &two;
            if !e.is_zero() {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ab = self.multiply(a, b);
        let ab_ai = self.multiply(&ab, &self.inverse(a));
        self.multiply(&ab_ai, &self.inverse(b))
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: &Element, x: &Element) -> Element {
        self.multiply(&self.multiply(g, x), &self.inverse(g))
    }

    /// Evaluates the word `img[0]^h img[1]^j img[2]^k img[3]^m img[4]^n` in this group.
    pub fn evaluate_word(&self, images: &[Element; 5], exps: &Element) -> Element {
        exps.coords()
            .iter()
            .zip(images)
            .fold(Element::identity(), |acc, (e, g)| {
                self.multiply(&acc, &self.power_big(g, e))
            })
    }

    /// Checks the commutator table of this group on five candidate generator images.
    /// Returns the first failing pair `(i, j)` (1-based) with the computed commutator.
    pub fn check_commutator_table(&self, images: &[Element; 5]) -> Option<(usize, usize, Element)> {
        self.check_relations_of(self, images)
    }

    /// Like [`check_commutator_table`](Self::check_commutator_table), but the images are
    /// multiplied in `self` while the relations are those of `relations`.
    pub fn check_relations_of(
        &self,
        relations: &GroupParams,
        images: &[Element; 5],
    ) -> Option<(usize, usize, Element)> {
        let e1 = &images[0];
        for i in 1..5 {
            for j in 0..i {
                let got = self.commutator(&images[i], &images[j]);
                let want = match (i + 1, j + 1) {
                    (5, 4) => self.multiply(
                        &self.power(e1, relations.beta),
                        &self.power(&images[1], relations.alpha),
                    ),
                    (5, 3) => self.power(e1, relations.epsilon),
                    (5, 2) => self.power(e1, relations.gamma),
                    (4, 3) => self.power(e1, relations.delta),
                    _ => Element::identity(),
                };
                if got != want {
                    return Some((i + 1, j + 1, got));
                }
            }
        }
        None
    }

    pub fn check_canonical_range(&self) -> CanonicalRangeReport {
        let gcd_gamma_delta = gcd(self.gamma, self.delta);
        let gcd_all_four = gcd_all(&[self.alpha, self.gamma, self.delta, self.epsilon]);
        CanonicalRangeReport {
            satisfies_star: 0 <= self.epsilon && 2 * self.epsilon <= gcd_gamma_delta,
            satisfies_double_star: 0 <= self.beta && 2 * self.beta <= gcd_all_four,
            gcd_gamma_delta,
            gcd_all_four,
        }
    }

    fn big(&self) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
        (
            BigInt::from(self.alpha),
            BigInt::from(self.beta),
            BigInt::from(self.gamma),
            BigInt::from(self.delta),
            BigInt::from(self.epsilon),
        )
    }
}

impl TryFrom<[i64; 5]> for GroupParams {
    type Error = Error;
    fn try_from(v: [i64; 5]) -> Result<Self> {
        GroupParams::new(v[0], v[1], v[2], v[3], v[4])
    }
}

impl From<GroupParams> for [i64; 5] {
    fn from(p: GroupParams) -> Self {
        p.as_array()
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.alpha, self.beta, self.gamma, self.delta, self.epsilon
        )
    }
}

impl FromStr for GroupParams {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_five::<i64>(s)?;
        GroupParams::try_from(v)
    }
}

/// Which of the two canonical-range constraints hold (on `ε`, then on `β`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalRangeReport {
    pub satisfies_star: bool,
    pub satisfies_double_star: bool,
    pub gcd_gamma_delta: i64,
    pub gcd_all_four: i64,
}

impl CanonicalRangeReport {
    pub fn is_canonical(&self) -> bool {
        self.satisfies_star && self.satisfies_double_star
    }
}

/// A point `(h, j, k, m, n)`; only meaningful together with a [`GroupParams`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Element {
    pub h: BigInt,
    pub j: BigInt,
    pub k: BigInt,
    pub m: BigInt,
    pub n: BigInt,
}

impl Element {
    pub fn new(
        h: impl Into<BigInt>,
        j: impl Into<BigInt>,
        k: impl Into<BigInt>,
        m: impl Into<BigInt>,
        n: impl Into<BigInt>,
    ) -> Self {
        Self {
            h: h.into(),
            j: j.into(),
            k: k.into(),
            m: m.into(),
            n: n.into(),
        }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// The generator `e_i`, `1 <= i <= 5`.
    pub fn generator(i: usize) -> Self {
        let mut c = [0i64; 5];
        assert!((1..=5).contains(&i), "generator index out of range: {i}");
        c[i - 1] = 1;
        Self::from(c)
    }

    pub fn generators() -> [Element; 5] {
        [1, 2, 3, 4, 5].map(Element::generator)
    }

    pub fn coords(&self) -> [&BigInt; 5] {
        [&self.h, &self.j, &self.k, &self.m, &self.n]
    }

    pub fn is_identity(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    /// Smallest member of `K1 ⊂ K2 ⊂ K3 ⊂ K4 ⊂ H` containing this element.
    pub fn subgroup_level(&self) -> SubgroupLevel {
        if !self.n.is_zero() {
            SubgroupLevel::Full
        } else if !self.m.is_zero() {
            SubgroupLevel::K4
        } else if !self.k.is_zero() {
            SubgroupLevel::K3
        } else if !self.j.is_zero() {
            SubgroupLevel::K2
        } else {
            SubgroupLevel::K1
        }
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<[i64; 5]> {
        use num_traits::ToPrimitive;
        Some([
            self.h.to_i64()?,
            self.j.to_i64()?,
            self.k.to_i64()?,
            self.m.to_i64()?,
            self.n.to_i64()?,
        ])
    }
}

impl From<[i64; 5]> for Element {
    fn from(c: [i64; 5]) -> Self {
        Element::new(c[0], c[1], c[2], c[3], c[4])
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.h, self.j, self.k, self.m, self.n)
    }
}

impl FromStr for Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let [h, j, k, m, n] = parse_five::<BigInt>(s)?;
        Ok(Element { h, j, k, m, n })
    }
}

fn parse_five<T: FromStr>(s: &str) -> Result<[T; 5]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(Error::Parse(format!(
            "expected 5 comma-separated integers, got {:?}",
            s
        )));
    }
    let mut out = Vec::with_capacity(5);
    for p in parts {
        out.push(
            p.parse::<T>()
                .map_err(|_| Error::Parse(format!("not an integer: {p:?}")))?,
        );
    }
    out.try_into()
        .map_err(|_| Error::Parse("expected 5 entries".into()))
}

/// The coordinate subgroups `K1 = (Z,0,0,0,0)` up to `K4 = (Z,Z,Z,Z,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SubgroupLevel {
    K1,
    K2,
    K3,
    K4,
    Full,
}
