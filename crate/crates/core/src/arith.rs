//! Small integer helpers shared by the reduction and quotient code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Non-negative gcd; `gcd(x, 0) = |x|`.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// gcd of a list, with the empty gcd equal to 0.
pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0, |g, &x| gcd(g, x))
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g` and `g >= 0`.
pub fn bezout(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Bezout coefficients for a whole list: `sum(c_i * x_i) = gcd_all(xs)`.
pub fn bezout_all(xs: &[i64]) -> (i64, Vec<i64>) {
    let mut coeffs = vec![0i64; xs.len()];
    let mut g = 0i64;
    for (i, &x) in xs.iter().enumerate() {
        let (ng, s, t) = bezout(g, x);
        for c in coeffs.iter_mut().take(i) {
            *c *= s;
        }
        coeffs[i] = t;
        g = ng;
    }
    (g, coeffs)
}

/// `n(n-1)/2` computed exactly.
pub fn half_pronic(n: &BigInt) -> BigInt {
    let prod: BigInt = n * (n - BigInt::one());
    let (q, r) = prod.div_rem(&BigInt::from(2));
    assert!(r == BigInt::from(0), "n(n-1) is always even");
    q
}

/// Order of `lambda^e` for a primitive `q`-th root of unity `lambda`.
pub fn order_of_power(q: i64, e: i64) -> i64 {
    assert!(q >= 1, "root of unity order must be positive");
    q / gcd(q, e)
}
