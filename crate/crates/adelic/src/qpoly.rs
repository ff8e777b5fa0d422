//! q-Pochhammer symbols, q-binomial coefficients, q-Fibonacci and Bressoud
//! polynomials modulo p, with verifiers for their prime-index congruences.
//!
//! q-binomials are computed by the q-Pascal recurrence
//! [n,k]_q = [n-1,k-1]_q + q^k [n-1,k]_q
//! rather than by the Pochhammer quotient: (q)_k may vanish mod p, and the
//! congruences of interest live exactly where it does.

use crate::error::{Error, Result};
use crate::modular::{
    add_mod, legendre, mul_mod, mult_order, pow_mod, sub_mod, Residue, ReducedRational,
};
use crate::report::{CongruenceReport, CongruenceRow};

/// A rational q reduced at a prime p with p dividing neither numerator nor
/// denominator.
#[derive(Debug, Clone, Copy)]
pub struct QContext {
    pub q: ReducedRational,
    pub p: u64,
    pub qres: u64,
}

impl QContext {
    pub fn new(q: ReducedRational, p: u64) -> Result<QContext> {
        if q.bad_at(p) {
            return Err(Error::BadPrime { p, reason: format!("p divides numerator or denominator of q = {q}") });
        }
        let qres = q.residue(p)?.value;
        Ok(QContext { q, p, qres })
    }
}

/// (q)_n = (1 - q)(1 - q^2) ... (1 - q^n) mod p; the empty product is 1.
pub fn q_pochhammer(ctx: &QContext, n: u64) -> Residue {
    let p = ctx.p;
    let mut acc = 1 % p;
    let mut qi = 1u64;
    for _ in 1..=n {
        qi = mul_mod(qi, ctx.qres, p);
        acc = mul_mod(acc, sub_mod(1, qi, p), p);
    }
    Residue { value: acc, modulus: p }
}

/// Binomial coefficient mod p for 0 <= k <= n < p, via factorial inverses.
pub fn binomial_mod(n: u64, k: u64, p: u64) -> Result<Residue> {
    if k > n {
        return Err(Error::Domain(format!("binomial({n}, {k}) needs k <= n")));
    }
    if n >= p {
        return Err(Error::Domain(format!("binomial_mod requires n < p (n = {n}, p = {p})")));
    }
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = mul_mod(num, (n - i) % p, p);
        den = mul_mod(den, (i + 1) % p, p);
    }
    Ok(Residue { value: mul_mod(num, crate::modular::inv_mod(den, p)?, p), modulus: p })
}

/// The Gaussian binomial [n, k]_q mod p, by the q-Pascal recurrence.
pub fn q_binomial(n: u64, k: u64, ctx: &QContext) -> Result<Residue> {
    if k > n {
        return Err(Error::Domain(format!("q_binomial({n}, {k}) needs 0 <= k <= n")));
    }
    let p = ctx.p;
    let kk = k as usize;
    // powers of q up to q^k
    let mut qpow = vec![1u64; kk + 1];
    for i in 1..=kk {
        qpow[i] = mul_mod(qpow[i - 1], ctx.qres, p);
    }
    // row-by-row: row[j] = [m, j]_q
    let mut row = vec![0u64; kk + 1];
    row[0] = 1 % p;
    for _m in 1..=n {
        for j in (1..=kk).rev() {
            row[j] = add_mod(row[j - 1], mul_mod(qpow[j], row[j], p), p);
        }
    }
    Ok(Residue { value: row[kk], modulus: p })
}

/// The full row [n, 0]_q .. [n, n]_q mod p.
pub fn q_binomial_row(n: u64, ctx: &QContext) -> Vec<u64> {
    let p = ctx.p;
    let nn = n as usize;
    let mut qpow = vec![1u64; nn + 1];
    for i in 1..=nn {
        qpow[i] = mul_mod(qpow[i - 1], ctx.qres, p);
    }
    let mut row = vec![0u64; nn + 1];
    row[0] = 1 % p;
    for m in 1..=nn {
        for j in (1..=m).rev() {
            row[j] = add_mod(row[j - 1], mul_mod(qpow[j], row[j], p), p);
        }
    }
    row
}

/// F_n(q) mod p by the defining recurrence F_{n+2} = F_{n+1} + q^n F_n.
pub fn q_fibonacci(n: u64, ctx: &QContext) -> Residue {
    let p = ctx.p;
    let (mut a, mut b) = (0u64, 1 % p); // F_0, F_1
    if n == 0 {
        return Residue { value: a, modulus: p };
    }
    let mut qn = 1u64; // q^m while computing F_{m+2}
    for _ in 1..n {
        let next = add_mod(b, mul_mod(qn, a, p), p);
        a = b;
        b = next;
        qn = mul_mod(qn, ctx.qres, p);
    }
    Residue { value: b, modulus: p }
}

/// Exact integer value F_n(q) for integer q, n <= 40.
pub fn q_fibonacci_exact(n: u64, q: i64) -> Result<i128> {
    if n > 40 {
        return Err(Error::Capacity(format!("q_fibonacci_exact caps at n = 40, got {n}")));
    }
    let (mut a, mut b) = (0i128, 1i128);
    if n == 0 {
        return Ok(0);
    }
    let mut qn = 1i128;
    for _ in 1..n {
        let t = qn
            .checked_mul(a)
            .and_then(|x| x.checked_add(b))
            .ok_or_else(|| Error::Capacity("q_fibonacci_exact overflow".into()))?;
        a = b;
        b = t;
        qn = qn.checked_mul(q as i128).ok_or_else(|| Error::Capacity("q_fibonacci_exact overflow".into()))?;
    }
    Ok(b)
}

/// Classical Fibonacci F_n mod m by fast doubling.
pub fn fibonacci_mod(n: u64, m: u64) -> Residue {
    fn doubling(n: u64, m: u64) -> (u64, u64) {
        if n == 0 {
            return (0, 1 % m);
        }
        let (a, b) = doubling(n >> 1, m);
        // F(2k) = F(k) (2 F(k+1) - F(k)); F(2k+1) = F(k)^2 + F(k+1)^2
        let c = mul_mod(a, sub_mod(mul_mod(2 % m, b, m), a, m), m);
        let d = add_mod(mul_mod(a, a, m), mul_mod(b, b, m), m);
        if n & 1 == 0 {
            (c, d)
        } else {
            (d, add_mod(c, d, m))
        }
    }
    Residue { value: doubling(n, m).0, modulus: m }
}

/// D_n(q) mod p by the three-term recurrence.
pub fn bressoud_recurrence(n: u64, ctx: &QContext) -> Residue {
    let p = ctx.p;
    let q = ctx.qres;
    let mut d0 = 1 % p; // D_0
    if n == 0 {
        return Residue { value: d0, modulus: p };
    }
    let mut d1 = add_mod(1, q, p); // D_1
    // track q^{m-1}, q^m, and q^{2m-1} as m advances
    let q2 = mul_mod(q, q, p);
    let mut qm1 = q; // q^{m-1} at m = 2
    let mut qm = mul_mod(q, q, p); // q^m at m = 2
    let mut q2m1 = mul_mod(qm, q, p); // q^{2m-1} at m = 2
    for _m in 2..=n {
        // (1 + q - q^m + q^{2m-1}) D_{m-1} - q (1 - q^{m-1}) D_{m-2}
        let lead = add_mod(sub_mod(add_mod(1, q, p), qm, p), q2m1, p);
        let tail = mul_mod(q, sub_mod(1, qm1, p), p);
        let next = sub_mod(mul_mod(lead, d1, p), mul_mod(tail, d0, p), p);
        d0 = d1;
        d1 = next;
        qm1 = mul_mod(qm1, q, p);
        qm = mul_mod(qm, q, p);
        q2m1 = mul_mod(q2m1, q2, p);
    }
    Residue { value: d1, modulus: p }
}

/// D_n(q) mod p by the Rogers-Ramanujan sum: sum_k q^{k^2} [n, k]_q.
pub fn bressoud_sum(n: u64, ctx: &QContext) -> Residue {
    let p = ctx.p;
    let row = q_binomial_row(n, ctx);
    let mut acc = 0u64;
    let mut qk2 = 1u64; // q^{k^2}
    let mut qodd = ctx.qres; // q^{2k+1}
    let q2 = mul_mod(ctx.qres, ctx.qres, p);
    for (k, &b) in row.iter().enumerate() {
        acc = add_mod(acc, mul_mod(qk2, b, p), p);
        let _ = k;
        qk2 = mul_mod(qk2, qodd, p);
        qodd = mul_mod(qodd, q2, p);
    }
    Residue { value: acc, modulus: p }
}

/// D_n(q) mod p computed both ways; path disagreement is an internal error.
pub fn bressoud(n: u64, ctx: &QContext) -> Result<Residue> {
    let a = bressoud_recurrence(n, ctx);
    let b = bressoud_sum(n, ctx);
    if a.value != b.value {
        return Err(Error::Inconsistency(format!(
            "Bressoud paths disagree at n = {n}, q = {}, p = {}: {} vs {}",
            ctx.q, ctx.p, a.value, b.value
        )));
    }
    Ok(a)
}

/// Check F_p(q) = F_{I_p(q) + (ord_p(q)/5)} mod p. Skips when 5 | ord_p(q)
/// (hypothesis of the congruence) or when p divides q.
pub fn verify_af_congruence(q: &ReducedRational, p: u64) -> Result<CongruenceRow> {
    let qs = q.to_string();
    if q.bad_at(p) {
        return Ok(CongruenceRow::skip(qs, p, "p divides numerator or denominator of q"));
    }
    if p < 3 {
        return Ok(CongruenceRow::skip(qs, p, "p too small"));
    }
    let ord = mult_order(q, p)?;
    if ord % 5 == 0 {
        return Ok(CongruenceRow::skip(qs, p, "5 divides ord_p(q)"));
    }
    let idx = (p - 1) / ord;
    let ctx = QContext::new(*q, p)?;
    let lhs = q_fibonacci(p, &ctx).value;
    let eps = legendre(ord as i64, 5)?;
    let target = (idx as i64 + eps) as u64;
    let rhs = fibonacci_mod(target, p).value;
    Ok(CongruenceRow::ok(qs, p, ord, idx, lhs, rhs))
}

/// Check the reduction of [p-1, k]_q: binom(I_p(q), k/ord) when ord | k,
/// zero otherwise.
pub fn verify_qbinom_congruence(q: &ReducedRational, p: u64, k: u64) -> Result<CongruenceRow> {
    let qs = q.to_string();
    if q.bad_at(p) {
        return Ok(CongruenceRow::skip(qs, p, "p divides numerator or denominator of q"));
    }
    if k > p - 1 {
        return Err(Error::Domain(format!("k = {k} out of range for p = {p}")));
    }
    let ord = mult_order(q, p)?;
    let idx = (p - 1) / ord;
    let ctx = QContext::new(*q, p)?;
    let lhs = q_binomial(p - 1, k, &ctx)?.value;
    let rhs = if k % ord == 0 { binomial_mod(idx, k / ord, p)?.value } else { 0 };
    Ok(CongruenceRow::ok(qs, p, ord, idx, lhs, rhs))
}

/// Check D_{p-1}(q) = 2^{I_p(q)} mod p, with the two Bressoud paths compared
/// at every evaluation.
pub fn verify_bressoud_congruence(q: &ReducedRational, p: u64) -> Result<CongruenceRow> {
    let qs = q.to_string();
    if q.bad_at(p) {
        return Ok(CongruenceRow::skip(qs, p, "p divides numerator or denominator of q"));
    }
    if p < 3 {
        return Ok(CongruenceRow::skip(qs, p, "p too small"));
    }
    let ord = mult_order(q, p)?;
    let idx = (p - 1) / ord;
    let ctx = QContext::new(*q, p)?;
    let lhs = bressoud(p - 1, &ctx)?.value;
    let rhs = pow_mod(2, idx, p).value;
    Ok(CongruenceRow::ok(qs, p, ord, idx, lhs, rhs))
}

/// Run a verifier over every prime of a window, ascending.
pub fn sweep<F>(lo: u64, hi: u64, mut verify: F) -> Result<CongruenceReport>
where
    F: FnMut(u64) -> Result<CongruenceRow>,
{
    let primes = crate::primes::primes_in(crate::primes::PrimeWindow { lo, hi })?;
    let mut rows = Vec::with_capacity(primes.len());
    for p in primes {
        rows.push(verify(p)?);
    }
    Ok(CongruenceReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn ctx(q: i64, p: u64) -> QContext {
        QContext::new(ReducedRational::from_integer(q), p).unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(&ctx(2, 1009), 0).value, 1);
        // (-1)(-3)(-7)(-15) = 315
        assert_eq!(q_pochhammer(&ctx(2, 1009), 4).value, 315);
        // ord_7(2) = 3, so the i = 3 factor vanishes
        assert_eq!(q_pochhammer(&ctx(2, 7), 3).value, 0);
        assert_eq!(q_pochhammer(&ctx(2, 7), 10).value, 0);
    }

    #[test]
    fn q_binomial_examples() {
        // [4, 2]_q = 1 + q + 2q^2 + q^3 + q^4 -> 35 at q = 2
        assert_eq!(q_binomial(4, 2, &ctx(2, 7)).unwrap().value, 0);
        assert_eq!(q_binomial(4, 2, &ctx(2, 101)).unwrap().value, 35);
        assert_eq!(q_binomial(9, 0, &ctx(3, 101)).unwrap().value, 1);
        // q = 1 degenerates to the classical binomial
        for n in 0..=10u64 {
            for k in 0..=n {
                assert_eq!(
                    q_binomial(n, k, &ctx(1, 1009)).unwrap().value,
                    binomial_mod(n, k, 1009).unwrap().value
                );
            }
        }
    }

    #[test]
    fn q_binomial_symmetry() {
        for &q in &[2i64, 3, 5] {
            for &p in &[101u64, 1009] {
                let c = ctx(q, p);
                for n in 0..=40u64 {
                    let row = q_binomial_row(n, &c);
                    for k in 0..=n {
                        assert_eq!(row[k as usize], row[(n - k) as usize], "symmetry at n={n} k={k} q={q} p={p}");
                        assert_eq!(row[k as usize], q_binomial(n, k, &c).unwrap().value);
                    }
                }
            }
        }
    }

    #[test]
    fn q_binomial_agrees_with_quotient_route() {
        // Where (q)_k is invertible the Pochhammer quotient is defined and
        // must agree with the q-Pascal recurrence.
        for &q in &[2i64, 3, 7] {
            let p = 999999937u64; // large prime, ord_p(q) far above 30
            let c = ctx(q, p);
            for n in 0..=30u64 {
                for k in 0..=n {
                    let num = q_pochhammer(&c, n).value;
                    let d1 = q_pochhammer(&c, k).value;
                    let d2 = q_pochhammer(&c, n - k).value;
                    assert_ne!(mul_mod(d1, d2, p), 0);
                    let quotient = mul_mod(
                        num,
                        crate::modular::inv_mod(mul_mod(d1, d2, p), p).unwrap(),
                        p,
                    );
                    assert_eq!(q_binomial(n, k, &c).unwrap().value, quotient);
                }
            }
        }
    }

    #[test]
    fn q_fibonacci_examples() {
        assert_eq!(q_fibonacci_exact(4, 2).unwrap(), 7); // 1 + q + q^2 at q = 2
        assert_eq!(q_fibonacci_exact(7, 2).unwrap(), 1135);
        assert_eq!(q_fibonacci(7, &ctx(2, 7)).value, 1135 % 7);
        assert_eq!(q_fibonacci_exact(7, 1).unwrap(), 13);
        assert_eq!(q_fibonacci_exact(0, 5).unwrap(), 0);
        assert_eq!(q_fibonacci_exact(1, 5).unwrap(), 1);
    }

    #[test]
    fn q_fibonacci_exact_matches_mod() {
        for &q in &[1i64, 2, 3] {
            for &p in &[101u64, 1009] {
                let c = ctx(q, p);
                for n in 0..=40u64 {
                    // the exact path may hit its width cap for larger q
                    let exact = match q_fibonacci_exact(n, q) {
                        Ok(v) => v,
                        Err(Error::Capacity(_)) => break,
                        Err(e) => panic!("{e}"),
                    };
                    let expect = exact.rem_euclid(p as i128) as u64;
                    assert_eq!(q_fibonacci(n, &c).value, expect, "n={n} q={q} p={p}");
                }
            }
        }
    }

    #[test]
    fn q_fibonacci_exact_caps() {
        assert!(matches!(q_fibonacci_exact(41, 2), Err(Error::Capacity(_))));
        assert!(matches!(q_fibonacci_exact(40, i64::MAX), Err(Error::Capacity(_))));
    }

    #[test]
    fn fibonacci_fast_doubling() {
        assert_eq!(fibonacci_mod(0, 97).value, 0);
        assert_eq!(fibonacci_mod(7, 7).value, 6); // F_7 = 13
        assert_eq!(fibonacci_mod(10, 1000).value, 55);
        // agreement with naive iteration
        let m = 10007u64;
        let (mut a, mut b) = (0u64, 1u64);
        for n in 0..300u64 {
            assert_eq!(fibonacci_mod(n, m).value, a, "F_{n}");
            (a, b) = (b, (a + b) % m);
        }
    }

    #[test]
    fn bressoud_examples() {
        for &q in &[2i64, 3, 5] {
            let c = ctx(q, 100003);
            assert_eq!(bressoud(0, &c).unwrap().value, 1);
            assert_eq!(bressoud(1, &c).unwrap().value, (1 + q) as u64);
        }
        // D_2(q) = 1 + q + q^2 + q^4 -> 23 at q = 2
        assert_eq!(bressoud(2, &ctx(2, 100003)).unwrap().value, 23);
    }

    #[test]
    fn bressoud_two_path_equality() {
        for &q in &[2i64, 3, 5] {
            for &p in &[101u64, 1009] {
                let c = ctx(q, p);
                for n in 0..=60u64 {
                    assert_eq!(
                        bressoud_recurrence(n, &c).value,
                        bressoud_sum(n, &c).value,
                        "n={n} q={q} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn af_congruence_examples() {
        let two = ReducedRational::from_integer(2);
        let row = verify_af_congruence(&two, 7).unwrap();
        assert_eq!(row.verdict, Verdict::Ok);
        assert_eq!((row.ord, row.index), (Some(3), Some(2)));
        assert_eq!(row.lhs, Some(1)); // 1135 mod 7
        assert_eq!(row.rhs, Some(1)); // F_1 = F_{2 + (3/5)} with (3/5) = -1

        // ord_31(2) = 5
        let row = verify_af_congruence(&two, 31).unwrap();
        assert_eq!(row.verdict, Verdict::Skip);
        assert_eq!(row.skip_reason, "5 divides ord_p(q)");

        // q = 1 runs through the same path; F_p(1) = F_p
        let one = ReducedRational::from_integer(1);
        for p in [7u64, 11, 13, 101] {
            assert_eq!(verify_af_congruence(&one, p).unwrap().verdict, Verdict::Ok);
        }
    }

    #[test]
    fn qbinom_congruence_examples() {
        let two = ReducedRational::from_integer(2);
        let row = verify_qbinom_congruence(&two, 7, 3).unwrap();
        assert_eq!(row.verdict, Verdict::Ok);
        assert_eq!(row.rhs, Some(2)); // binom(2, 1)
        let row = verify_qbinom_congruence(&two, 7, 2).unwrap();
        assert_eq!(row.verdict, Verdict::Ok);
        assert_eq!(row.rhs, Some(0));
        let row = verify_qbinom_congruence(&two, 7, 0).unwrap();
        assert_eq!((row.lhs, row.rhs), (Some(1), Some(1)));
        assert!(verify_qbinom_congruence(&two, 7, 7).is_err());
    }

    #[test]
    fn qbinom_congruence_sweep() {
        for &q in &[2i64, 3, 5] {
            let q = ReducedRational::from_integer(q);
            for &p in &[11u64, 13, 17, 19, 23] {
                if q.bad_at(p) {
                    continue;
                }
                for k in 0..p {
                    let row = verify_qbinom_congruence(&q, p, k).unwrap();
                    assert_eq!(row.verdict, Verdict::Ok, "q={q} p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn bressoud_congruence_examples() {
        let two = ReducedRational::from_integer(2);
        let row = verify_bressoud_congruence(&two, 7).unwrap();
        assert_eq!(row.verdict, Verdict::Ok);
        assert_eq!((row.lhs, row.rhs), (Some(4), Some(4)));

        let three = ReducedRational::from_integer(3);
        let row = verify_bressoud_congruence(&three, 5).unwrap();
        assert_eq!(row.verdict, Verdict::Ok);
        assert_eq!(row.rhs, Some(2)); // ord_5(3) = 4, I = 1

        // q = 1: D_{p-1}(1) = 2^{p-1} = 1 mod p
        let one = ReducedRational::from_integer(1);
        for p in [5u64, 7, 11, 13] {
            let row = verify_bressoud_congruence(&one, p).unwrap();
            assert_eq!(row.verdict, Verdict::Ok);
            assert_eq!(row.lhs, Some(1));
        }
    }

    #[test]
    fn half_rational_q() {
        // q = 3/2 at p = 7: 3 * inv(2) = 3 * 4 = 12 = 5 mod 7
        let q = ReducedRational::new(3, 2).unwrap();
        let c = QContext::new(q, 7).unwrap();
        assert_eq!(c.qres, 5);
        assert_eq!(verify_bressoud_congruence(&q, 7).unwrap().verdict, Verdict::Ok);
        assert!(QContext::new(q, 3).is_err());
        assert!(QContext::new(q, 2).is_err());
    }
}
