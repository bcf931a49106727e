//! Prime signatures of 128-bit integers and Ω(n) censuses.
//!
//! Factorization strips primes below 10⁴ by trial division, then splits the
//! cofactor with Brent's variant of Pollard rho. Primality is Miller–Rabin
//! with fixed bases:
//!
//! * n < 2⁶⁴: the seven-base set {2, 325, 9375, 28178, 450775, 9780504,
//!   1795265022}, exact for every 64-bit input.
//! * n ≥ 2⁶⁴: the first 13 primes (2..=41), exact below
//!   3 317 044 064 679 887 385 961 981 ≈ 2^81.4; the first 20 primes
//!   (2..=71) are used beyond that, where the answer is deterministic but
//!   not proven.

mod census;
mod modarith;

use std::sync::OnceLock;

pub use census::{census, census_with, omega_table, CensusResult, OmegaRow};
use modarith::{Mont128, Mont64, MontRing};

const TRIAL_LIMIT: u32 = 10_000;
const BASES_64: [u128; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];
const BASES_PROVEN_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;
const BASES_SMALL_PRIMES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
            i += 1;
        }
        (0..limit).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Exact primality for n < 2⁶⁵ (and far beyond, see module docs).
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES_SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 71 * 71 {
        return true;
    }
    if n <= u64::MAX as u128 {
        miller_rabin(Mont64::new(n as u64), &BASES_64)
    } else if n < BASES_PROVEN_LIMIT {
        miller_rabin(Mont128::new(n), &BASES_SMALL_PRIMES[..13])
    } else {
        miller_rabin(Mont128::new(n), &BASES_SMALL_PRIMES)
    }
}

fn miller_rabin<R: MontRing>(ring: R, bases: &[u128]) -> bool {
    let n = ring.modulus();
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let one = ring.one();
    let minus_one = ring.sub(ring.encode(0), one);
    'bases: for &a in bases {
        if a % n == 0 {
            continue;
        }
        let mut x = ring.pow(ring.encode(a), d);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = ring.mul(x, x);
            if x == minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's cycle detection on x ↦ x² + c with batched gcds. Returns a
/// nontrivial factor, or `None` if this polynomial only finds `n` itself.
fn brent_rho<R: MontRing>(ring: R, c: u128, x0: u128) -> Option<u128> {
    const BATCH: u64 = 128;
    let n = ring.modulus();
    let c = ring.encode(c);
    let f = |x: R::Elem| ring.add(ring.mul(x, x), c);

    let mut y = ring.encode(x0);
    let mut x = y;
    let mut ys = y;
    let mut q = ring.one();
    let mut g = 1u128;
    let mut r: u64 = 1;

    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = ring.mul(q, ring.sub(x, y));
            }
            g = gcd(ring.decode(q), n);
            k += steps;
        }
        r *= 2;
    }
    if g == n {
        // The batch overshot; replay it one step at a time.
        loop {
            ys = f(ys);
            g = gcd(ring.decode(ring.sub(x, ys)), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

/// Some nontrivial factor of an odd composite `n` with no prime factor
/// below 10⁴. Restarts walk the polynomial constant c = 1, 2, 3, …
fn find_factor(n: u128) -> u128 {
    for c in 1u128.. {
        let x0 = c + 1;
        let found = if n <= u64::MAX as u128 {
            brent_rho(Mont64::new(n as u64), c, x0)
        } else {
            brent_rho(Mont128::new(n), c, x0)
        };
        if let Some(d) = found {
            return d;
        }
    }
    unreachable!("polynomial constants exhausted")
}

fn integer_sqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

fn split_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    let limit = TRIAL_LIMIT as u128;
    if n < limit * limit || is_prime(n) {
        out.push(n);
        return;
    }
    // Prime squares make x² + c collide modulo p and p² together too often.
    let r = integer_sqrt(n);
    if r * r == n {
        split_into(r, out);
        split_into(r, out);
        return;
    }
    let d = find_factor(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Multiset of prime factors of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSignature {
    n: u128,
    factors: Vec<(u128, u32)>,
}

impl PrimeSignature {
    pub fn n(&self) -> u128 {
        self.n
    }

    /// (prime, multiplicity), primes strictly increasing.
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    /// Ω(n): prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, k)| k).sum()
    }

    /// ω(n): distinct prime factors.
    pub fn small_omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Product of prime^multiplicity, `None` on overflow.
    pub fn product(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &(p, k)| {
            (0..k).try_fold(acc, |a, _| a.checked_mul(p))
        })
    }
}

/// Complete factorization of `n ≥ 1`; `factorize(1)` has no factors.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn factorize(n: u128) -> PrimeSignature {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;
    for &p in small_primes() {
        let p = p as u128;
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            factors.push((p, k));
        }
    }
    let mut large = Vec::new();
    split_into(rest, &mut large);
    large.sort_unstable();
    for p in large {
        match factors.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => factors.push((p, 1)),
        }
    }
    PrimeSignature { n, factors }
}
