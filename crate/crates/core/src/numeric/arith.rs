//! Integer helpers: square roots, primality, squarefree decomposition.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

/// Floor of the square root.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    let r = isqrt(n);
    &r * &r == *n
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Splits `n > 0` as `root^2 * core` with `core` squarefree.
///
/// Trial division runs up to the cube root; whatever cofactor survives has at
/// most two prime factors, so it is either a prime square or squarefree.
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "squarefree decomposition of zero");
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut core = BigUint::one();
    let bound = n.cbrt();
    let mut p = BigUint::from(2u32);
    while p <= bound && !rest.is_one() {
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            root *= p.pow(e / 2);
            if e % 2 == 1 {
                core *= &p;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if is_perfect_square(&rest) {
        root *= isqrt(&rest);
    } else {
        core *= rest;
    }
    (root, core)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && squarefree_decompose(&BigUint::from(n)).0.is_one()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn gcd_all(xs: &[u64]) -> u64 {
    xs.iter().fold(0, |g, &x| g.gcd(&x))
}

pub(crate) fn biguint_to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}
