//! Montgomery arithmetic modulo odd 64- and 128-bit integers.
//!
//! The 128-bit ring forms full 256-bit products from 64-bit limbs before
//! reducing, so nothing overflows for moduli anywhere below 2¹²⁸.

/// Arithmetic in Z/nZ for odd `n`, with elements kept in Montgomery form.
pub(crate) trait MontRing: Copy {
    type Elem: Copy + Eq;

    fn modulus(&self) -> u128;
    fn encode(&self, x: u128) -> Self::Elem;
    fn decode(&self, x: Self::Elem) -> u128;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;

    fn pow(&self, mut base: Self::Elem, mut exp: u128) -> Self::Elem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Mont64 {
    n: u64,
    n_neg_inv: u64,
    r2: u64,
    one: u64,
}

impl Mont64 {
    pub(crate) fn new(n: u64) -> Self {
        assert!(
            n % 2 == 1 && n > 1,
            "Montgomery modulus must be odd and > 1"
        );
        // Newton iteration for n⁻¹ mod 2⁶⁴.
        let mut inv: u64 = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = ((u64::MAX % n) + 1) % n;
        let r2 = ((r as u128 * r as u128) % n as u128) as u64;
        Self {
            n,
            n_neg_inv: inv.wrapping_neg(),
            r2,
            one: r,
        }
    }

    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.n_neg_inv);
        let mn = m as u128 * self.n as u128;
        let (s, carry) = t.overflowing_add(mn);
        let mut r = (s >> 64) | ((carry as u128) << 64);
        if r >= self.n as u128 {
            r -= self.n as u128;
        }
        r as u64
    }
}

impl MontRing for Mont64 {
    type Elem = u64;

    fn modulus(&self) -> u128 {
        self.n as u128
    }

    fn encode(&self, x: u128) -> u64 {
        let x = (x % self.n as u128) as u64;
        self.redc(x as u128 * self.r2 as u128)
    }

    fn decode(&self, x: u64) -> u128 {
        self.redc(x as u128) as u128
    }

    fn one(&self) -> u64 {
        self.one
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (s, c) = a.overflowing_add(b);
        if c || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.n)
        }
    }
}

/// Full 128×128 → 256-bit product as (high, low).
pub(crate) fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a0, a1) = (a & MASK, a >> 64);
    let (b0, b1) = (b & MASK, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Mont128 {
    n: u128,
    n_neg_inv: u128,
    r2: u128,
    one: u128,
}

impl Mont128 {
    pub(crate) fn new(n: u128) -> Self {
        assert!(
            n % 2 == 1 && n > 1,
            "Montgomery modulus must be odd and > 1"
        );
        let mut inv: u128 = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = ((u128::MAX % n) + 1) % n;
        // R² mod n by 128 modular doublings of R.
        let mut r2 = r;
        for _ in 0..128 {
            r2 = add_mod(r2, r2, n);
        }
        Self {
            n,
            n_neg_inv: inv.wrapping_neg(),
            r2,
            one: r,
        }
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mh, ml) = mul_wide(m, self.n);
        let (_, c1) = lo.overflowing_add(ml);
        let (t, c2) = hi.overflowing_add(mh);
        let (t, c3) = t.overflowing_add(c1 as u128);
        if c2 || c3 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    let (s, c) = a.overflowing_add(b);
    if c || s >= n {
        s.wrapping_sub(n)
    } else {
        s
    }
}

impl MontRing for Mont128 {
    type Elem = u128;

    fn modulus(&self) -> u128 {
        self.n
    }

    fn encode(&self, x: u128) -> u128 {
        let (hi, lo) = mul_wide(x % self.n, self.r2);
        self.redc(hi, lo)
    }

    fn decode(&self, x: u128) -> u128 {
        self.redc(0, x)
    }

    fn one(&self) -> u128 {
        self.one
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        add_mod(a, b, self.n)
    }

    fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.n)
        }
    }
}
