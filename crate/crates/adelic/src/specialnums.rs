//! Bernoulli, Euler, and Gregory numbers and polynomials: exact-rational
//! small-index oracles, mod-p fast paths, and the derived truncated elements
//! Z(k), the half-index Bernoulli/Euler elements, and the two-path Gregory
//! element.
//!
//! Bernoulli convention: the generating function t e^t/(e^t - 1) gives
//! B_1 = +1/2. Even-index values coincide with the usual convention, which is
//! all the congruences below ever consume.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::adele::TruncatedAdele;
use crate::error::{Error, Result};
use crate::modular::{
    add_mod, fermat_quotient, inv_mod, mul_mod, reduce, sub_mod, Residue, ReducedRational,
};
use crate::primes::PrimeWindow;

/// Index cap for the exact oracles.
pub const EXACT_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqKind {
    Bernoulli,
    Euler,
    Gregory,
}

/// A memoized exact sequence of rationals indexed from 0.
#[derive(Debug, Clone)]
pub struct ExactRationalSeq {
    pub kind: SeqKind,
    pub values: Vec<BigRational>,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn binom_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut c = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = BigInt::one();
        for j in 1..=i {
            c[i][j] = &c[i - 1][j - 1] + &c[i - 1][j];
        }
    }
    c
}

fn bernoulli_seq() -> &'static ExactRationalSeq {
    static SEQ: OnceLock<ExactRationalSeq> = OnceLock::new();
    SEQ.get_or_init(|| {
        let c = binom_table(EXACT_CAP + 1);
        let mut b: Vec<BigRational> = Vec::with_capacity(EXACT_CAP + 1);
        // sum_{j=0}^{n} C(n+1, j) B_j = n + 1
        for n in 0..=EXACT_CAP {
            let mut acc = big((n + 1) as i64);
            for (j, bj) in b.iter().enumerate() {
                acc -= BigRational::from_integer(c[n + 1][j].clone()) * bj;
            }
            b.push(acc / big((n + 1) as i64));
        }
        ExactRationalSeq { kind: SeqKind::Bernoulli, values: b }
    })
}

fn euler_seq() -> &'static ExactRationalSeq {
    static SEQ: OnceLock<ExactRationalSeq> = OnceLock::new();
    SEQ.get_or_init(|| {
        let c = binom_table(EXACT_CAP + 1);
        let mut e: Vec<BigRational> = vec![BigRational::one()];
        // sech t is even with sum_{k=0}^{m} C(2m, 2k) E_{2k} = 0 for m >= 1
        for n in 1..=EXACT_CAP {
            if n % 2 == 1 {
                e.push(BigRational::zero());
                continue;
            }
            let mut acc = BigRational::zero();
            for k in (0..n).step_by(2) {
                acc -= BigRational::from_integer(c[n][k].clone()) * &e[k];
            }
            e.push(acc);
        }
        ExactRationalSeq { kind: SeqKind::Euler, values: e }
    })
}

fn gregory_seq() -> &'static ExactRationalSeq {
    static SEQ: OnceLock<ExactRationalSeq> = OnceLock::new();
    SEQ.get_or_init(|| {
        // log(1+t)/t has coefficients (-1)^m/(m+1); divide 1 by it.
        let mut g: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=EXACT_CAP {
            let mut acc = BigRational::zero();
            for (k, gk) in g.iter().enumerate() {
                let m = n - k;
                let sign = if m % 2 == 0 { 1 } else { -1 };
                acc += gk * big(sign) / big((m + 1) as i64);
            }
            g.push(-acc);
        }
        ExactRationalSeq { kind: SeqKind::Gregory, values: g }
    })
}

fn check_cap(n: u64) -> Result<usize> {
    if n as usize > EXACT_CAP {
        return Err(Error::Capacity(format!("exact oracle caps at index {EXACT_CAP}, got {n}")));
    }
    Ok(n as usize)
}

/// Exact B_n under the B_1 = +1/2 convention.
pub fn bernoulli_exact(n: u64) -> Result<BigRational> {
    Ok(bernoulli_seq().values[check_cap(n)?].clone())
}

/// Exact E_n (always an integer).
pub fn euler_exact(n: u64) -> Result<BigInt> {
    let v = &euler_seq().values[check_cap(n)?];
    debug_assert!(v.is_integer());
    Ok(v.to_integer())
}

/// Exact Gregory coefficient G_n.
pub fn gregory_exact(n: u64) -> Result<BigRational> {
    Ok(gregory_seq().values[check_cap(n)?].clone())
}

/// Residue of an exact rational mod p; pole error when p divides the
/// denominator.
pub fn rational_mod(v: &BigRational, n: u64, p: u64) -> Result<Residue> {
    let pb = BigInt::from(p);
    if (v.denom() % &pb).is_zero() {
        return Err(Error::Pole { n, p });
    }
    let num = ((v.numer() % &pb) + &pb) % &pb;
    let den = ((v.denom() % &pb) + &pb) % &pb;
    let num: u64 = num.try_into().expect("reduced below p");
    let den: u64 = den.try_into().expect("reduced below p");
    Ok(Residue { value: mul_mod(num, inv_mod(den, p)?, p), modulus: p })
}

fn binom_row_mod(n: u64, p: u64) -> Vec<u64> {
    // Pascal row n mod p, valid for n < p
    let mut row = vec![0u64; n as usize + 1];
    row[0] = 1 % p;
    for i in 1..=n as usize {
        for j in (1..=i).rev() {
            row[j] = add_mod(row[j], row[j - 1], p);
        }
    }
    row
}

/// B_0..B_n mod p by the convolution recurrence; requires n <= p - 2 so no
/// intermediate index hits a von Staudt-Clausen pole.
pub fn bernoulli_mod_upto(n: u64, p: u64) -> Result<Vec<u64>> {
    if p <= 3 {
        return Err(Error::Domain(format!("bernoulli_mod requires p > 3, got {p}")));
    }
    if n % 2 == 0 && n > 0 && n % (p - 1) == 0 {
        return Err(Error::Pole { n, p });
    }
    if n > p - 2 {
        return Err(Error::Domain(format!("bernoulli_mod_upto needs n <= p - 2 (n = {n}, p = {p})")));
    }
    // factorials up to n + 1 < p
    let len = n as usize + 2;
    let mut fact = vec![1u64; len];
    for i in 1..len {
        fact[i] = mul_mod(fact[i - 1], i as u64 % p, p);
    }
    let mut inv_fact = vec![1u64; len];
    inv_fact[len - 1] = inv_mod(fact[len - 1], p)?;
    for i in (1..len).rev() {
        inv_fact[i - 1] = mul_mod(inv_fact[i], i as u64 % p, p);
    }
    let choose = |m: usize, j: usize| mul_mod(fact[m], mul_mod(inv_fact[j], inv_fact[m - j], p), p);

    let mut b = vec![0u64; n as usize + 1];
    b[0] = 1 % p;
    for i in 1..=n as usize {
        if i % 2 == 1 && i > 2 {
            continue; // odd Bernoulli numbers vanish
        }
        let mut acc = (i as u64 + 1) % p;
        for j in 0..i {
            if b[j] != 0 {
                acc = sub_mod(acc, mul_mod(choose(i + 1, j), b[j], p), p);
            }
        }
        b[i] = mul_mod(acc, inv_mod(i as u64 + 1, p)?, p);
    }
    Ok(b)
}

/// B_n mod p; zero immediately for odd n >= 3, pole error for even n with
/// (p - 1) | n.
pub fn bernoulli_mod(n: u64, p: u64) -> Result<Residue> {
    if n % 2 == 1 && n >= 3 {
        return Ok(Residue { value: 0, modulus: p });
    }
    let b = bernoulli_mod_upto(n, p)?;
    Ok(Residue { value: b[n as usize], modulus: p })
}

/// E_0..E_n mod p (integers, no poles); requires n < p for the binomials.
pub fn euler_mod_upto(n: u64, p: u64) -> Result<Vec<u64>> {
    if n >= p {
        return Err(Error::Domain(format!("euler_mod_upto needs n < p (n = {n}, p = {p})")));
    }
    let mut e = vec![0u64; n as usize + 1];
    e[0] = 1 % p;
    // Build Pascal rows only for even indices we touch.
    for m in 1..=(n as usize) {
        if m % 2 == 1 {
            continue;
        }
        let row = binom_row_mod(m as u64, p);
        let mut acc = 0u64;
        for k in (0..m).step_by(2) {
            acc = add_mod(acc, mul_mod(row[k], e[k], p), p);
        }
        e[m] = sub_mod(0, acc, p);
    }
    Ok(e)
}

pub fn euler_mod(n: u64, p: u64) -> Result<Residue> {
    if n % 2 == 1 {
        return Ok(Residue { value: 0, modulus: p });
    }
    let e = euler_mod_upto(n, p)?;
    Ok(Residue { value: e[n as usize], modulus: p })
}

/// G_0..G_n mod p; requires n <= p - 2 so every denominator n - k + 1 stays
/// below p.
pub fn gregory_mod_upto(n: u64, p: u64) -> Result<Vec<u64>> {
    if n > p - 2 {
        return Err(Error::Pole { n, p });
    }
    let mut inv = vec![0u64; n as usize + 2];
    for i in 1..=(n as usize + 1) {
        inv[i] = inv_mod(i as u64, p)?;
    }
    let mut g = vec![0u64; n as usize + 1];
    g[0] = 1 % p;
    for m in 1..=(n as usize) {
        let mut acc = 0u64;
        for k in 0..m {
            let d = m - k;
            let term = mul_mod(g[k], inv[d + 1], p);
            acc = if d % 2 == 0 { add_mod(acc, term, p) } else { sub_mod(acc, term, p) };
        }
        g[m] = sub_mod(0, acc, p);
    }
    Ok(g)
}

pub fn gregory_mod(n: u64, p: u64) -> Result<Residue> {
    let g = gregory_mod_upto(n, p)?;
    Ok(Residue { value: g[n as usize], modulus: p })
}

/// Gregory polynomial value G_n(x) mod p for integer x:
/// G_n(x) = sum_m binom(x, m) G_{n-m}.
pub fn gregory_poly_mod(n: u64, x: i64, p: u64) -> Result<Residue> {
    let g = gregory_mod_upto(n, p)?;
    let mut acc = 0u64;
    let mut falling = 1u64; // binom(x, m) mod p, built incrementally
    for m in 0..=(n as usize) {
        if m > 0 {
            let factor = reduce(x - (m as i64 - 1), p);
            falling = mul_mod(falling, factor, p);
            falling = mul_mod(falling, inv_mod(m as u64, p)?, p);
        }
        acc = add_mod(acc, mul_mod(falling, g[n as usize - m], p), p);
    }
    Ok(Residue { value: acc, modulus: p })
}

/// Z(k) = (B_{p-k}/k mod p)_p over the window; requires window.lo > k + 2.
pub fn z_a(k: u64, window: PrimeWindow) -> Result<TruncatedAdele> {
    if k < 2 {
        return Err(Error::Domain(format!("z_a requires k >= 2, got {k}")));
    }
    if window.lo <= k + 2 {
        return Err(Error::Domain(format!("z_a({k}) requires window.lo > {}", k + 2)));
    }
    TruncatedAdele::build(window, &format!("Z({k})"), |p| {
        let b = bernoulli_mod(p - k, p)?;
        Ok(mul_mod(b.value, inv_mod(k % p, p)?, p))
    })
}

/// The element (B_{(p+1)/2} mod p)_p.
pub fn script_b(window: PrimeWindow) -> Result<TruncatedAdele> {
    if window.lo < 5 {
        return Err(Error::Domain("script_b requires window.lo >= 5".into()));
    }
    TruncatedAdele::build(window, "B_half", |p| Ok(bernoulli_mod((p + 1) / 2, p)?.value))
}

/// The element (E_{(p-1)/2} mod p)_p.
pub fn script_e(window: PrimeWindow) -> Result<TruncatedAdele> {
    if window.lo < 5 {
        return Err(Error::Domain("script_e requires window.lo >= 5".into()));
    }
    TruncatedAdele::build(window, "E_half", |p| Ok(euler_mod((p - 1) / 2, p)?.value))
}

/// The Gregory element by two independent paths:
/// path A = (G_{p-k}(x) mod p)_p, and
/// path B = (-1)^{k-1} sum_j (-1)^j binom(k, j) (x + j + 1) q_p(x + j + 1).
pub fn g_a(k: u64, x: i64, window: PrimeWindow) -> Result<(TruncatedAdele, TruncatedAdele)> {
    if k < 2 {
        return Err(Error::Domain(format!("g_a requires k >= 2, got {k}")));
    }
    if (-(k as i64) - 1..=-1).contains(&x) {
        return Err(Error::Domain(format!("x = {x} lies in the excluded interval [-k-1, -1]")));
    }
    let min_lo = (k + 2).max(x.unsigned_abs() + k + 2);
    if window.lo <= min_lo {
        return Err(Error::Domain(format!("g_a({k}, {x}) requires window.lo > {min_lo}")));
    }
    let path_a = TruncatedAdele::build(window, &format!("G({k};{x}) direct"), |p| {
        Ok(gregory_poly_mod(p - k, x, p)?.value)
    })?;
    // binom(k, j) as exact integers, k is small
    let mut binoms = vec![1i64; k as usize + 1];
    for j in 1..=k as usize {
        binoms[j] = binoms[j - 1] * (k as i64 - j as i64 + 1) / j as i64;
    }
    let path_b = TruncatedAdele::build(window, &format!("G({k};{x}) log-sum"), |p| {
        let mut acc = 0u64;
        for j in 0..=k as usize {
            let base = x + j as i64 + 1;
            let fq = fermat_quotient(&ReducedRational::from_integer(base), p)?.value;
            let term = mul_mod(mul_mod(reduce(binoms[j], p), reduce(base, p), p), fq, p);
            acc = if j % 2 == 0 { add_mod(acc, term, p) } else { sub_mod(acc, term, p) };
        }
        Ok(if k % 2 == 1 { acc } else { sub_mod(0, acc, p) })
    })?;
    Ok((path_a, path_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> BigRational {
        big(n) / big(d)
    }

    #[test]
    fn bernoulli_exact_values() {
        assert_eq!(bernoulli_exact(0).unwrap(), big(1));
        assert_eq!(bernoulli_exact(1).unwrap(), rat(1, 2)); // +1/2 convention
        assert_eq!(bernoulli_exact(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_exact(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_exact(12).unwrap(), rat(-691, 2730));
        for n in (3..=63u64).step_by(2) {
            assert!(bernoulli_exact(n).unwrap().is_zero(), "B_{n}");
        }
        assert!(bernoulli_exact(65).is_err());
    }

    #[test]
    fn bernoulli_defining_recurrence() {
        // sum_{j=0}^{n} C(n+1, j) B_j = n + 1 exactly, n <= 40
        let c = binom_table(42);
        for n in 0..=40usize {
            let mut acc = BigRational::zero();
            for j in 0..=n {
                acc += BigRational::from_integer(c[n + 1][j].clone()) * bernoulli_exact(j as u64).unwrap();
            }
            assert_eq!(acc, big((n + 1) as i64), "recurrence at n = {n}");
        }
    }

    #[test]
    fn euler_exact_values() {
        assert_eq!(euler_exact(0).unwrap(), BigInt::from(1));
        assert_eq!(euler_exact(2).unwrap(), BigInt::from(-1));
        assert_eq!(euler_exact(4).unwrap(), BigInt::from(5));
        assert_eq!(euler_exact(6).unwrap(), BigInt::from(-61));
        assert_eq!(euler_exact(8).unwrap(), BigInt::from(1385));
        assert_eq!(euler_exact(3).unwrap(), BigInt::from(0));
    }

    #[test]
    fn gregory_exact_values() {
        assert_eq!(gregory_exact(0).unwrap(), big(1));
        assert_eq!(gregory_exact(1).unwrap(), rat(1, 2));
        assert_eq!(gregory_exact(2).unwrap(), rat(-1, 12));
        assert_eq!(gregory_exact(3).unwrap(), rat(1, 24));
        assert_eq!(gregory_exact(4).unwrap(), rat(-19, 720));
        // alternating signs from n = 2 onward
        for n in 2..=30u64 {
            let g = gregory_exact(n).unwrap();
            assert_eq!(g.is_positive(), n % 2 == 1, "sign of G_{n}");
        }
    }

    #[test]
    fn exact_vs_mod_agreement() {
        let primes = crate::primes::primes_in(PrimeWindow { lo: 5, hi: 200 }).unwrap();
        for &p in &primes {
            for n in 0..=50u64.min(p - 2) {
                // Bernoulli (skip poles)
                let exact = bernoulli_exact(n).unwrap();
                match bernoulli_mod(n, p) {
                    Ok(r) => assert_eq!(r, rational_mod(&exact, n, p).unwrap(), "B_{n} mod {p}"),
                    Err(Error::Pole { .. }) => {
                        assert!(n > 0 && n % 2 == 0 && n % (p - 1) == 0, "false pole B_{n} mod {p}");
                        assert!(rational_mod(&exact, n, p).is_err());
                    }
                    Err(e) => panic!("{e}"),
                }
                // Euler
                if n < p {
                    let exact = BigRational::from_integer(euler_exact(n).unwrap());
                    assert_eq!(euler_mod(n, p).unwrap(), rational_mod(&exact, n, p).unwrap(), "E_{n} mod {p}");
                }
                // Gregory
                let exact = gregory_exact(n).unwrap();
                assert_eq!(gregory_mod(n, p).unwrap(), rational_mod(&exact, n, p).unwrap(), "G_{n} mod {p}");
            }
        }
    }

    #[test]
    fn mod_path_examples() {
        // B_2 = 1/6: inverse of 6 mod 7 is 6
        assert_eq!(bernoulli_mod(2, 7).unwrap().value, 6);
        assert_eq!(bernoulli_mod(9, 101).unwrap().value, 0);
        // B_12 = -691/2730 mod 17
        let expect = rational_mod(&rat(-691, 2730), 12, 17).unwrap();
        assert_eq!(bernoulli_mod(12, 17).unwrap(), expect);
        // von Staudt-Clausen pole: 4 | (5 - 1)
        assert!(matches!(bernoulli_mod(4, 5), Err(Error::Pole { .. })));
        // E_2 = -1 mod 5
        assert_eq!(euler_mod(2, 5).unwrap().value, 4);
        // G_2 = -1/12 mod 7 = 4
        assert_eq!(gregory_mod(2, 7).unwrap().value, 4);
        assert!(matches!(gregory_mod(6, 7), Err(Error::Pole { .. })));
    }

    #[test]
    fn gregory_poly_at_zero() {
        for p in [11u64, 13, 101] {
            for n in 0..=8u64 {
                assert_eq!(gregory_poly_mod(n, 0, p).unwrap(), gregory_mod(n, p).unwrap());
            }
        }
    }

    #[test]
    fn z_a_even_is_zero() {
        let w = PrimeWindow { lo: 11, hi: 500 };
        assert!(z_a(2, w).unwrap().is_zero());
        assert!(z_a(4, w).unwrap().is_zero());
        // Z(3) is not identically zero on this window
        let z3 = z_a(3, PrimeWindow { lo: 11, hi: 200 }).unwrap();
        assert!(!z3.is_zero());
        assert!(z_a(4, PrimeWindow { lo: 5, hi: 100 }).is_err());
    }

    #[test]
    fn script_b_examples() {
        let b = script_b(PrimeWindow { lo: 7, hi: 200 }).unwrap();
        // B_4 = -1/30 mod 7 = 3
        assert_eq!(b.at(7), Some(3));
        for &p in b.primes() {
            if p % 4 == 1 {
                assert_eq!(b.at(p), Some(0), "odd Bernoulli index at p = {p}");
            } else {
                assert_ne!(b.at(p), Some(0), "Cauchy nonvanishing at p = {p}");
            }
        }
    }

    #[test]
    fn script_e_examples() {
        let e = script_e(PrimeWindow { lo: 5, hi: 200 }).unwrap();
        for &p in e.primes() {
            if p % 4 == 3 {
                assert_eq!(e.at(p), Some(0), "odd Euler index at p = {p}");
            } else {
                assert_ne!(e.at(p), Some(0), "Carlitz nonvanishing at p = {p}");
            }
        }
    }

    #[test]
    fn b_times_e_vanishes() {
        let w = PrimeWindow { lo: 7, hi: 500 };
        let be = script_b(w).unwrap().mul(&script_e(w).unwrap()).unwrap();
        assert!(be.is_zero());
    }

    #[test]
    fn g_a_two_paths_agree() {
        for &k in &[2u64, 3, 4] {
            for &x in &[0i64, 1, 2, 5] {
                let w = PrimeWindow { lo: 17, hi: 500 };
                let (a, b) = g_a(k, x, w).unwrap();
                assert_eq!(a.coords(), b.coords(), "k = {k}, x = {x}");
            }
        }
    }

    #[test]
    fn g_a_domain_checks() {
        let w = PrimeWindow { lo: 17, hi: 100 };
        assert!(g_a(2, -1, w).is_err());
        assert!(g_a(3, -4, w).is_err());
        // x = -5 is outside [-4, -1] for k = 3
        assert!(g_a(3, -5, PrimeWindow { lo: 13, hi: 100 }).is_ok());
        assert!(g_a(2, 0, PrimeWindow { lo: 3, hi: 100 }).is_err());
    }
}
