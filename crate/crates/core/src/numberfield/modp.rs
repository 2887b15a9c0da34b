//! Reduction of field elements modulo a prime.
//!
//! A ring map from the elements with `p`-integral coordinates to `F_p`
//! sends `w` to a root of its minimal polynomial. Ranks can only drop
//! under such a map, so a full rank found mod `p` is a proof of full rank.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::field::{Field, FieldElement};
use super::rational::Rational;

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

/// Miller-Rabin with the bases that are exact below 2^64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for b in BASES {
        let mut x = pow(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Primes `3 mod 4` just below 2^62, so that square roots are one power.
fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 4;
        }
        let p = n;
        n -= 4;
        Some(p)
    })
}

#[derive(Debug, Clone, Copy)]
pub struct Reduction {
    pub p: u64,
    /// Image of the generator (zero over Q).
    root: u64,
}

impl Reduction {
    /// A prime where the minimal polynomial has a root and its
    /// coefficients are integral.
    pub fn for_field(field: &Field) -> Option<Reduction> {
        for p in primes().take(32) {
            let Some((c0, c1)) = field.min_poly() else {
                return Some(Reduction { p, root: 0 });
            };
            let (Some(c0), Some(c1)) = (rational_mod(c0, p), rational_mod(c1, p)) else {
                continue;
            };
            let disc = (mul(c1, c1, p) + p - mul(4, c0, p)) % p;
            let s = pow(disc, (p + 1) / 4, p);
            if mul(s, s, p) != disc {
                continue;
            }
            let root = mul((p - c1 + s) % p, inv(2, p), p);
            return Some(Reduction { p, root });
        }
        None
    }

    pub fn reduce(&self, x: &FieldElement) -> Option<u64> {
        let a0 = rational_mod(x.a0(), self.p)?;
        let a1 = rational_mod(x.a1(), self.p)?;
        Some((a0 + mul(a1, self.root, self.p)) % self.p)
    }

    pub fn reduce_triple(&self, t: &[FieldElement; 3]) -> Option<[u64; 3]> {
        Some([self.reduce(&t[0])?, self.reduce(&t[1])?, self.reduce(&t[2])?])
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn det3(&self, t: &[[u64; 3]; 3]) -> u64 {
        let p = self.p;
        let minor = |j: usize, k: usize| (mul(t[1][j], t[2][k], p) + p - mul(t[1][k], t[2][j], p)) % p;
        let pos = self.add(mul(t[0][0], minor(1, 2), p), mul(t[0][2], minor(0, 1), p));
        (pos + p - mul(t[0][1], minor(0, 2), p)) % p
    }

    /// Rank of a matrix over `F_p`.
    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let p = self.p;
        let width = rows.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..width {
            let Some(k) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let iv = inv(rows[r][c], p);
            let pivot: Vec<u64> = rows[r].iter().map(|&x| mul(x, iv, p)).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                        *x = (*x + p - mul(f, y, p)) % p;
                    }
                }
            }
            rows[r] = pivot;
            r += 1;
        }
        r
    }
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("residue below p")
}

fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let d = big_mod(q.denom(), p);
    (d != 0).then(|| mul(big_mod(q.numer(), p), inv(d, p), p))
}
