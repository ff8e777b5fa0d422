//! Exact modular arithmetic: powers, inverses, Legendre symbols, modular
//! square roots, multiplicative orders and indices, and Fermat quotients.
//!
//! Width contract: moduli up to 2^62, with intermediate products taken in
//! u128. Fermat quotients lift to modulus p^2 and therefore require p < 2^31.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A residue together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Residue {
        Residue { value: reduce(value, modulus), modulus }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An exact rational u/v in lowest terms with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedRational {
    num: i64,
    den: u64,
}

impl ReducedRational {
    pub fn new(num: i64, den: i64) -> Result<ReducedRational> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        let mut n = num as i128;
        let mut d = den as i128;
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Ok(ReducedRational { num: 0, den: 1 });
        }
        let g = gcd(n.unsigned_abs() as u64, d as u64) as i128;
        n /= g;
        d /= g;
        Ok(ReducedRational { num: n as i64, den: d as u64 })
    }

    pub fn from_integer(n: i64) -> ReducedRational {
        ReducedRational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn inverse(&self) -> Result<ReducedRational> {
        if self.num == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        ReducedRational::new(self.den as i64, self.num)
    }

    pub fn mul(&self, other: &ReducedRational) -> Result<ReducedRational> {
        let num = (self.num as i128) * (other.num as i128);
        let den = (self.den as i128) * (other.den as i128);
        if num.unsigned_abs() > i64::MAX as u128 || den > i64::MAX as i128 {
            return Err(Error::Capacity("rational product overflow".into()));
        }
        ReducedRational::new(num as i64, den as i64)
    }

    /// Whether p divides the numerator or denominator.
    pub fn bad_at(&self, p: u64) -> bool {
        self.num.unsigned_abs() % p == 0 || self.den % p == 0
    }

    /// num * den^{-1} mod m; requires gcd(den, m) = 1.
    pub fn residue(&self, m: u64) -> Result<Residue> {
        if self.den % m == 0 || gcd(self.den, m) != 1 {
            return Err(Error::BadPrime { p: m, reason: "modulus divides denominator".into() });
        }
        let n = reduce(self.num, m);
        let d_inv = inv_mod(self.den % m, m)?;
        Ok(Residue { value: mul_mod(n, d_inv, m), modulus: m })
    }

    /// Parse "u/v" or "u".
    pub fn parse(s: &str) -> Result<ReducedRational> {
        let mut it = s.splitn(2, '/');
        let num: i64 = it
            .next()
            .unwrap()
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad rational {s:?}")))?;
        match it.next() {
            None => Ok(ReducedRational::from_integer(num)),
            Some(d) => {
                let den: i64 = d.trim().parse().map_err(|_| Error::Domain(format!("bad rational {s:?}")))?;
                ReducedRational::new(num, den)
            }
        }
    }
}

impl fmt::Display for ReducedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduce a signed integer into [0, m).
pub fn reduce(a: i64, m: u64) -> u64 {
    debug_assert!(m >= 1 && m <= i64::MAX as u64);
    a.rem_euclid(m as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    let a = a % m;
    let b = b % m;
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

/// base^exp mod m with exact u128 intermediates; m up to 2^62.
pub fn pow_mod(base: i64, exp: u64, m: u64) -> Residue {
    assert!(m >= 1 && m <= 1 << 62, "modulus outside width contract");
    let mut b = reduce(base, m);
    let mut e = exp;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    Residue { value: acc, modulus: m }
}

/// Modular inverse by extended Euclid; errors if gcd(a, m) != 1.
pub fn inv_mod(a: u64, m: u64) -> Result<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::Domain(format!("{a} is not invertible mod {m}")));
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    // Composite detection only within the sieve range; larger inputs are
    // the caller's responsibility (verifiers only feed sieve output).
    if p <= crate::primes::SWEEP_CEILING && !crate::primes::is_prime(p)? {
        return Err(Error::Domain(format!("{p} is composite")));
    }
    Ok(())
}

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i64> {
    check_odd_prime(p)?;
    let r = pow_mod(a, (p - 1) / 2, p).value;
    Ok(if r == 0 {
        0
    } else if r == 1 {
        1
    } else {
        -1
    })
}

/// All x in [0, p) with x^2 = a mod p, by Tonelli-Shanks.
pub fn sqrt_mod(a: i64, p: u64) -> Result<Vec<u64>> {
    check_odd_prime(p)?;
    let a = reduce(a, p);
    if a == 0 {
        return Ok(vec![0]);
    }
    if pow_mod(a as i64, (p - 1) / 2, p).value != 1 {
        return Ok(vec![]);
    }
    let x = if p % 4 == 3 {
        pow_mod(a as i64, (p + 1) / 4, p).value
    } else {
        // Tonelli-Shanks: write p - 1 = q * 2^s with q odd.
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        // Find a quadratic nonresidue z.
        let mut z = 2u64;
        while pow_mod(z as i64, (p - 1) / 2, p).value != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z as i64, q, p).value;
        let mut t = pow_mod(a as i64, q, p).value;
        let mut r = pow_mod(a as i64, (q + 1) / 2, p).value;
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mul_mod(b, b, p);
            }
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    let y = p - x;
    let mut roots = if x == y { vec![x] } else { vec![x.min(y), x.max(y)] };
    roots.dedup();
    Ok(roots)
}

/// Trial-division factorization of n <= 2^62 into (prime, multiplicity) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d as u128 * d as u128 <= n as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// ord_p(q): the multiplicative order of q mod p. Factors p - 1 by trial
/// division, then reduces the exponent prime-by-prime.
pub fn mult_order(q: &ReducedRational, p: u64) -> Result<u64> {
    if q.bad_at(p) {
        return Err(Error::BadPrime { p, reason: format!("p divides numerator or denominator of {q}") });
    }
    let qr = q.residue(p)?.value;
    let mut d = p - 1;
    for (l, _) in factorize(p - 1) {
        while d % l == 0 && pow_mod(qr as i64, d / l, p).value == 1 {
            d /= l;
        }
    }
    Ok(d)
}

/// I_p(q) = (p - 1) / ord_p(q), the index of <q mod p> in (Z/pZ)^x.
pub fn index(q: &ReducedRational, p: u64) -> Result<u64> {
    Ok((p - 1) / mult_order(q, p)?)
}

/// Fermat quotient q_p(a) mod p, computed by lifting to modulus p^2:
/// r = num^{p-1} * (den^{p-1})^{-1} mod p^2 satisfies r = 1 mod p, and the
/// quotient is (r - 1)/p mod p.
pub fn fermat_quotient(alpha: &ReducedRational, p: u64) -> Result<Residue> {
    if p >= 1 << 31 {
        return Err(Error::Capacity(format!("p = {p} puts p^2 outside the width contract")));
    }
    if p < 2 {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if alpha.bad_at(p) {
        return Err(Error::BadPrime { p, reason: format!("p divides numerator or denominator of {alpha}") });
    }
    let p2 = p * p;
    let num_pow = pow_mod(alpha.num(), p - 1, p2).value;
    let den_pow = pow_mod(alpha.den() as i64, p - 1, p2).value;
    let r = mul_mod(num_pow, inv_mod(den_pow, p2)?, p2);
    debug_assert_eq!(r % p, 1);
    Ok(Residue { value: ((r - 1) / p) % p, modulus: p })
}
