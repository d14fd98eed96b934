//! Embeddings between `H_{5,3}(α,β,γ,δ,ε)` and the lattice `H_{5,3}`, plus the
//! finite coset structure of the image inside the lattice.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::half_pronic;
use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};

/// Generator images of `φ` and their diagonal pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingData {
    /// `αγε` when `ε > 0`, else `αγ`.
    pub d_frak: BigInt,
    /// `e1'..e5'` in the lattice.
    pub generator_images: [Element; 5],
    /// `(δ𝔡², γδ𝔡, δε𝔡 or δ𝔡, αγδ, 𝔡)`.
    pub pivots: [BigInt; 5],
}

impl EmbeddingData {
    pub fn new(params: &GroupParams) -> Result<Self> {
        if params.epsilon() < 0 {
            return Err(Error::InvalidParams(format!(
                "embedding needs epsilon >= 0 (got {}); flip epsilon first",
                params.epsilon()
            )));
        }
        let big = |x: i64| BigInt::from(x);
        let (al, be, ga, de, ep) = (
            big(params.alpha()),
            big(params.beta()),
            big(params.gamma()),
            big(params.delta()),
            big(params.epsilon()),
        );
        let d = if ep.is_zero() {
            &al * &ga
        } else {
            &al * &ga * &ep
        };
        // e3' = (0, δε𝔡, δε𝔡, 0, 0), or (0, 0, δ𝔡, 0, 0) when ε = 0
        let (e3_j, e3_k) = if ep.is_zero() {
            (BigInt::zero(), &de * &d)
        } else {
            (&de * &ep * &d, &de * &ep * &d)
        };
        let z = BigInt::zero;
        let images = [
            Element::new(&de * &d * &d, z(), z(), z(), z()),
            Element::new(&ga * &de * half_pronic(&d), &ga * &de * &d, z(), z(), z()),
            Element::new(z(), e3_j, e3_k.clone(), z(), z()),
            Element::new(z(), &be * &de * &d, z(), &al * &ga * &de, z()),
            Element::new(z(), z(), z(), z(), d.clone()),
        ];
        let pivots = [
            &de * &d * &d,
            &ga * &de * &d,
            e3_k,
            &al * &ga * &de,
            d.clone(),
        ];
        Ok(Self {
            d_frak: d,
            generator_images: images,
            pivots,
        })
    }

    /// Index of the image in the lattice: the product of the pivots.
    pub fn index(&self) -> BigInt {
        self.pivots.iter().product()
    }
}

/// `φ : H(params) -> H_{5,3}` in closed form.
pub fn phi(params: &GroupParams, x: &Element) -> Result<Element> {
    let data = EmbeddingData::new(params)?;
    Ok(apply_linear(&data.generator_images, x))
}

// The images are lower-triangular with first-two-coordinate entries only, and
// e1'^h e2'^j e3'^k e4'^m e5'^n never picks up a correction term, so the word
// evaluates to the coordinate-wise linear combination.
fn apply_linear(images: &[Element; 5], x: &Element) -> Element {
    let mut out = Element::identity();
    for (c, g) in x.coords().into_iter().zip(images) {
        out.h += c * &g.h;
        out.j += c * &g.j;
        out.k += c * &g.k;
        out.m += c * &g.m;
        out.n += c * &g.n;
    }
    out
}

/// Generator images of `φ' : H_{5,3} -> H(params)`.
pub fn phi_prime_images(params: &GroupParams) -> [Element; 5] {
    let big = |x: i64| BigInt::from(x);
    let (al, be, ga, de, ep) = (
        big(params.alpha()),
        big(params.beta()),
        big(params.gamma()),
        big(params.delta()),
        big(params.epsilon()),
    );
    let z = BigInt::zero;
    [
        Element::new(&al * &ga * &ga * &de * &de, z(), z(), z(), z()),
        Element::new(
            &al * &ga * &ga * half_pronic(&de),
            &al * &ga * &de,
            z(),
            z(),
            z(),
        ),
        Element::new(z(), -(&al * &de * &ep), &al * &de * &ga, z(), z()),
        Element::new(z(), -be, z(), ga, z()),
        Element::new(z(), z(), z(), z(), de),
    ]
}

/// `φ' : H_{5,3} -> H(params)` in closed form.
pub fn phi_prime(params: &GroupParams, x: &Element) -> Element {
    apply_linear(&phi_prime_images(params), x)
}

/// Preimage under `φ` by back-substitution on the pivots, if `s` is in the image.
pub fn preimage(params: &GroupParams, s: &Element) -> Result<Option<Element>> {
    let data = EmbeddingData::new(params)?;
    let img = &data.generator_images;
    let exact = |num: &BigInt, den: &BigInt| -> Option<BigInt> {
        let (q, r) = num.div_rem(den);
        r.is_zero().then_some(q)
    };
    let Some(n) = exact(&s.n, &img[4].n) else { return Ok(None) };
    let Some(m) = exact(&s.m, &img[3].m) else { return Ok(None) };
    let Some(k) = exact(&s.k, &img[2].k) else { return Ok(None) };
    let rest_j = &s.j - &k * &img[2].j - &m * &img[3].j;
    let Some(j) = exact(&rest_j, &img[1].j) else { return Ok(None) };
    let rest_h = &s.h - &j * &img[1].h;
    let Some(h) = exact(&rest_h, &img[0].h) else { return Ok(None) };
    Ok(Some(Element { h, j, k, m, n }))
}

/// Whether `s` lies in `φ(H(params))`.
pub fn image_membership(params: &GroupParams, s: &Element) -> Result<bool> {
    Ok(preimage(params, s)?.is_some())
}

/// Representative of the left coset `s·H1` inside the box
/// `K = [0,p1) × … × [0,p5)`, reached by right-multiplying with powers of
/// `e5', e4', e3', e2', e1'` in that order.
pub fn coset_reduce(params: &GroupParams, s: &Element) -> Result<Element> {
    let data = EmbeddingData::new(params)?;
    Ok(coset_reduce_with(&data, s))
}

pub fn coset_reduce_with(data: &EmbeddingData, s: &Element) -> Element {
    let lat = GroupParams::lattice();
    let mut cur = s.clone();
    for idx in (0..5).rev() {
        let coord = cur.coords()[idx].clone();
        let pivot = &data.pivots[idx];
        let r = -coord.div_floor(pivot);
        if !r.is_zero() {
            let step = lat.power_big(&data.generator_images[idx], &r);
            cur = lat.multiply(&cur, &step);
        }
    }
    cur
}

/// Product of the pivots.
pub fn index_of_image(params: &GroupParams) -> Result<BigInt> {
    Ok(EmbeddingData::new(params)?.index())
}

/// Counts cosets of the image by walking the Schreier graph of the lattice
/// generators from the trivial coset, keyed by [`coset_reduce`]. Gives up and
/// returns `None` once more than `limit` cosets have been seen.
pub fn enumerate_cosets(params: &GroupParams, limit: usize) -> Result<Option<Vec<Element>>> {
    let data = EmbeddingData::new(params)?;
    let lat = GroupParams::lattice();
    let gens: Vec<Element> = Element::generators()
        .into_iter()
        .flat_map(|g| [lat.inverse(&g), g])
        .collect();
    let start = coset_reduce_with(&data, &Element::identity());
    let mut seen = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(rep) = queue.pop_front() {
        for g in &gens {
            let next = coset_reduce_with(&data, &lat.multiply(g, &rep));
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return Ok(None);
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(Some(order))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Normality {
    Normal,
    /// `conjugator · e_{image}' · conjugator⁻¹` is outside the image.
    Witness {
        image: usize,
        conjugator: usize,
        #[serde(serialize_with = "ser_element")]
        conjugate: Element,
    },
}

fn ser_element<S: serde::Serializer>(e: &Element, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// Conjugates each generator image by each lattice generator and reports the
/// first conjugate that leaves the image.
pub fn check_normal(params: &GroupParams) -> Result<Normality> {
    let data = EmbeddingData::new(params)?;
    let lat = GroupParams::lattice();
    for (i, img) in data.generator_images.iter().enumerate() {
        for (c, g) in Element::generators().iter().enumerate() {
            let conj = lat.conjugate(g, img);
            if preimage(params, &conj)?.is_none() {
                return Ok(Normality::Witness {
                    image: i + 1,
                    conjugator: c + 1,
                    conjugate: conj,
                });
            }
        }
    }
    Ok(Normality::Normal)
}

/// Whether every pivot equals one, i.e. `φ` is onto.
pub fn is_surjective(params: &GroupParams) -> Result<bool> {
    Ok(EmbeddingData::new(params)?.pivots.iter().all(One::is_one))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: [i64; 5]) -> GroupParams {
        GroupParams::try_from(a).unwrap()
    }
    fn e(c: [i64; 5]) -> Element {
        Element::from(c)
    }

    #[test]
    fn phi_examples() {
        let q = p([1, 0, 2, 2, 1]);
        let data = EmbeddingData::new(&q).unwrap();
        assert_eq!(data.d_frak, BigInt::from(2));
        assert_eq!(phi(&q, &Element::identity()).unwrap(), Element::identity());
        assert_eq!(phi(&q, &e([1, 0, 0, 0, 0])).unwrap(), e([8, 0, 0, 0, 0]));
        assert_eq!(phi(&q, &e([0, 1, 0, 0, 0])).unwrap(), e([4, 8, 0, 0, 0]));
        assert_eq!(phi(&q, &e([0, 0, 1, 0, 0])).unwrap(), e([0, 4, 4, 0, 0]));
        assert_eq!(phi(&q, &e([0, 0, 0, 1, 0])).unwrap(), e([0, 0, 0, 4, 0]));
        assert_eq!(phi(&q, &e([0, 0, 0, 0, 1])).unwrap(), e([0, 0, 0, 0, 2]));
        assert_eq!(GroupParams::lattice().check_relations_of(&q, &data.generator_images), None);
    }

    #[test]
    fn phi_rejects_negative_epsilon() {
        assert!(phi(&p([1, 0, 3, 3, -1]), &Element::identity()).is_err());
    }

    #[test]
    fn phi_closed_form_matches_word_evaluation() {
        let lat = GroupParams::lattice();
        for params in [[1, 0, 2, 2, 1], [2, 1, 3, 4, 1], [3, -2, 2, 5, 0], [1, 3, 6, 4, 2]] {
            let q = p(params);
            let data = EmbeddingData::new(&q).unwrap();
            for x in [[1, -2, 3, 4, -5], [0, 7, -1, -3, 6], [-4, 0, 2, 9, 3]] {
                assert_eq!(
                    phi(&q, &e(x)).unwrap(),
                    lat.evaluate_word(&data.generator_images, &e(x))
                );
                assert_eq!(
                    phi_prime(&q, &e(x)),
                    q.evaluate_word(&phi_prime_images(&q), &e(x))
                );
            }
        }
    }

    #[test]
    fn phi_prime_examples() {
        let q = p([2, 3, 5, 7, 1]);
        assert_eq!(phi_prime(&q, &e([1, 0, 0, 0, 0])), e([2 * 25 * 49, 0, 0, 0, 0]));
        assert_eq!(phi_prime(&q, &e([0, 0, 0, 1, 0])), e([0, -3, 0, 5, 0]));
        assert_eq!(phi_prime(&q, &Element::identity()), Element::identity());
        assert_eq!(q.check_relations_of(&GroupParams::lattice(), &phi_prime_images(&q)), None);
    }

    #[test]
    fn membership_examples() {
        let q = p([1, 0, 2, 2, 1]);
        assert!(!image_membership(&q, &e([2, 0, 0, 0, 0])).unwrap());
        assert!(!image_membership(&q, &e([1, 0, 0, 0, 0])).unwrap());
        let x = e([3, -1, 2, 5, -7]);
        let y = phi(&q, &x).unwrap();
        assert_eq!(preimage(&q, &y).unwrap(), Some(x));
    }

    #[test]
    fn coset_reduce_examples() {
        let q = p([1, 0, 2, 2, 1]);
        let k = e([3, 5, 1, 2, 1]);
        assert_eq!(coset_reduce(&q, &k).unwrap(), k);
        let lat_params = GroupParams::lattice();
        for s in [[4, -3, 9, 2, -8], [0, 0, 0, 0, 0], [-11, 2, 3, 5, 7]] {
            assert!(coset_reduce(&lat_params, &e(s)).unwrap().is_identity());
        }
        let lat = GroupParams::lattice();
        for x in [[1, -2, 3, 4, -5], [0, 7, -1, -3, 6]] {
            let shifted = lat.multiply(&k, &phi(&q, &e(x)).unwrap());
            assert_eq!(coset_reduce(&q, &shifted).unwrap(), k);
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_of_image(&p([1, 0, 1, 1, 0])).unwrap(), BigInt::from(1));
        let data = EmbeddingData::new(&p([1, 0, 2, 2, 1])).unwrap();
        assert_eq!(data.pivots, [8, 8, 4, 4, 2].map(BigInt::from));
        assert_eq!(data.index(), BigInt::from(2048));
        let data = EmbeddingData::new(&p([1, 0, 1, 2, 0])).unwrap();
        assert_eq!(data.pivots, [2, 2, 2, 2, 1].map(BigInt::from));
        assert_eq!(
            enumerate_cosets(&p([1, 0, 1, 2, 0]), 100).unwrap().unwrap().len(),
            16
        );
        assert_eq!(enumerate_cosets(&p([1, 0, 2, 2, 1]), 100).unwrap(), None);
    }

    #[test]
    fn normality_examples() {
        assert_eq!(check_normal(&p([1, 0, 1, 1, 0])).unwrap(), Normality::Normal);
        assert!(matches!(
            check_normal(&p([1, 0, 1, 2, 0])).unwrap(),
            Normality::Witness { .. }
        ));
        assert!(matches!(
            check_normal(&p([1, 0, 2, 2, 1])).unwrap(),
            Normality::Witness { .. }
        ));
    }

    #[test]
    fn conjugating_e5_image_by_e3_is_trivial_but_by_e2_is_not() {
        // e3 and e5 commute in the lattice, so e3 e5' e3^-1 = e5'. Conjugating by
        // e2 instead gives e1^{-𝔡} e5', which leaves the image.
        let q = p([1, 0, 2, 2, 1]);
        let lat = GroupParams::lattice();
        let e5p = phi(&q, &e([0, 0, 0, 0, 1])).unwrap();
        assert_eq!(lat.conjugate(&Element::generator(3), &e5p), e5p);
        let c = lat.conjugate(&Element::generator(2), &e5p);
        assert_eq!(c, e([-2, 0, 0, 0, 2]));
        assert!(!image_membership(&q, &c).unwrap());
        assert!(!image_membership(&q, &e([2, 0, 0, 0, 0])).unwrap());
    }
}
