//! Element builders and empirical audits: transcendence-criterion checks,
//! the prime-counting element, root equidistribution and smoothness scans,
//! Wieferich searches, the rational-logarithm disproof, and the Phi_ell
//! machinery over arbitrary-precision integers.
//!
//! Audits return consistent / inconsistent / inconclusive, never "proved":
//! the criteria conclude from infinitary hypotheses that a finite window
//! cannot certify.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::adele::{IntPolynomial, TruncatedAdele};
use crate::error::{Error, Result};
use crate::modular::{
    fermat_quotient, index, inv_mod, mul_mod, mult_order, reduce, sqrt_mod, ReducedRational,
};
use crate::primes::{prime_count, primes_in, PrimeWindow};
use crate::qpoly::QContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditVerdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

impl AuditVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            AuditVerdict::Consistent => "consistent",
            AuditVerdict::Inconsistent => "inconsistent",
            AuditVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Measurement {
    pub x: String,
    pub value: f64,
}

/// One audit outcome: which criterion, with what parameters, what was
/// measured, and the verdict. Every count is reproducible from the window
/// alone; nothing is sampled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionAuditReport {
    pub criterion: String,
    pub params: String,
    pub measurements: Vec<Measurement>,
    pub verdict: AuditVerdict,
}

impl CriterionAuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

// ---------------------------------------------------------------------------
// Element builders
// ---------------------------------------------------------------------------

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r * r > n {
        r -= 1;
    }
    r
}

/// The n-th entry of the triangle sequence 1; 1,2; 1,2,3; ... (1-indexed).
/// With T(m) = m(m+1)/2, the entry at position T(m-1) + j is j.
pub fn triangle_entry(n: u64) -> u64 {
    debug_assert!(n >= 1);
    let mut m = ((2.0 * n as f64).sqrt()) as u64;
    while m * (m + 1) / 2 < n {
        m += 1;
    }
    while m > 1 && (m - 1) * m / 2 >= n {
        m -= 1;
    }
    n - (m - 1) * m / 2
}

/// (floor(log p) mod p)_p with the natural logarithm.
pub fn floor_log_element(window: PrimeWindow) -> Result<TruncatedAdele> {
    TruncatedAdele::build(window, "floorlog", |p| Ok(((p as f64).ln().floor() as u64) % p))
}

/// (floor(sqrt p) mod p)_p.
pub fn floor_sqrt_element(window: PrimeWindow) -> Result<TruncatedAdele> {
    TruncatedAdele::build(window, "floorsqrt", |p| Ok(isqrt(p) % p))
}

/// (I_p(q) mod p)_p; primes dividing q are bad.
pub fn index_element(q: &ReducedRational, window: PrimeWindow) -> Result<TruncatedAdele> {
    TruncatedAdele::build(window, &format!("index({q})"), |p| Ok(index(q, p)? % p))
}

/// (t_{pi(p)} mod p)_p over the triangle sequence.
pub fn t_pi_element(window: PrimeWindow) -> Result<TruncatedAdele> {
    TruncatedAdele::build(window, "tpi", |p| Ok(triangle_entry(prime_count(p)?) % p))
}

/// (pi(p) mod p)_p.
pub fn pi_p_element(window: PrimeWindow) -> Result<TruncatedAdele> {
    TruncatedAdele::build(window, "pip", |p| Ok(prime_count(p)? % p))
}

/// (F_p(q) mod p)_p: the q-Fibonacci element.
pub fn fib_element(q: &ReducedRational, window: PrimeWindow) -> Result<TruncatedAdele> {
    TruncatedAdele::build(window, &format!("fib({q})"), |p| {
        let ctx = QContext::new(*q, p)?;
        Ok(crate::qpoly::q_fibonacci(p, &ctx).value)
    })
}

/// (D_{p-1}(q) mod p)_p: the Bressoud element, two-path checked per prime.
pub fn bressoud_element(q: &ReducedRational, window: PrimeWindow) -> Result<TruncatedAdele> {
    TruncatedAdele::build(window, &format!("bressoud({q})"), |p| {
        let ctx = QContext::new(*q, p)?;
        Ok(crate::qpoly::bressoud(p - 1, &ctx)?.value)
    })
}

/// (q_p(alpha) mod p)_p: the truncated logarithm of alpha.
pub fn log_element(alpha: &ReducedRational, window: PrimeWindow) -> Result<TruncatedAdele> {
    TruncatedAdele::build(window, &format!("log({alpha})"), |p| Ok(fermat_quotient(alpha, p)?.value))
}

// ---------------------------------------------------------------------------
// Criterion audits
// ---------------------------------------------------------------------------

/// For each target b_n, count window primes with a_p = b_n mod p and
/// b_n < p; consistent iff every target is hit at least `min_hits` times.
pub fn af_criterion_audit(
    alpha: &TruncatedAdele,
    b: &[i64],
    min_hits: usize,
) -> Result<CriterionAuditReport> {
    if b.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("target list must be strictly increasing".into()));
    }
    let mut measurements = Vec::with_capacity(b.len());
    let mut all_hit = true;
    for &bn in b {
        let mut count = 0usize;
        for (&p, coord) in alpha.primes().iter().zip(alpha.coords()) {
            if let Some(v) = coord.value() {
                if bn >= 0 && (bn as u64) < p && v == bn as u64 {
                    count += 1;
                }
            }
        }
        all_hit &= count >= min_hits;
        measurements.push(Measurement { x: format!("b={bn}"), value: count as f64 });
    }
    let verdict = if all_hit { AuditVerdict::Consistent } else { AuditVerdict::Inconsistent };
    Ok(CriterionAuditReport {
        criterion: "af".into(),
        params: format!("targets={b:?} min_hits={min_hits}"),
        measurements,
        verdict,
    })
}

const DECADES: [u64; 3] = [100, 1_000, 10_000];

/// Growth criterion: a_p must grow without bound while a_p^d = o(p) for each
/// d <= d_max. Measured on the decades (X/10, X] for X in {10^2, 10^3, 10^4}:
/// consistent iff the decade maximum of a_p strictly increases and the decade
/// maximum of a_p^d / p strictly decreases for every d.
pub fn growth_audit(values: &[(u64, u64)], d_max: u32) -> Result<CriterionAuditReport> {
    if d_max == 0 {
        return Err(Error::Domain("d_max must be positive".into()));
    }
    let decade = |x: u64| values.iter().filter(move |(p, _)| *p > x / 10 && *p <= x);
    let usable: Vec<u64> = DECADES
        .iter()
        .copied()
        .filter(|&x| decade(x).next().is_some())
        .collect();
    let mut measurements = Vec::new();
    if usable.len() < 2 {
        return Ok(CriterionAuditReport {
            criterion: "growth".into(),
            params: format!("d_max={d_max}"),
            measurements,
            verdict: AuditVerdict::Inconclusive,
        });
    }
    let maxima: Vec<u64> =
        usable.iter().map(|&x| decade(x).map(|&(_, a)| a).max().unwrap()).collect();
    for (&x, &m) in usable.iter().zip(&maxima) {
        measurements.push(Measurement { x: format!("max a_p, X={x}"), value: m as f64 });
    }
    let mut ok = maxima.windows(2).all(|w| w[0] < w[1]);
    for d in 1..=d_max {
        let ratios: Vec<f64> = usable
            .iter()
            .map(|&x| {
                decade(x)
                    .map(|&(p, a)| (a as f64).powi(d as i32) / p as f64)
                    .fold(0.0, f64::max)
            })
            .collect();
        for (&x, &r) in usable.iter().zip(&ratios) {
            measurements.push(Measurement { x: format!("max a_p^{d}/p, X={x}"), value: r });
        }
        ok &= ratios.windows(2).all(|w| w[0] > w[1]);
    }
    let verdict = if ok { AuditVerdict::Consistent } else { AuditVerdict::Inconsistent };
    Ok(CriterionAuditReport {
        criterion: "growth".into(),
        params: format!("d_max={d_max}"),
        measurements,
        verdict,
    })
}

/// Second criterion: b_p = O(p^eps) on a prime set S that is at least
/// X^{eps'}-dense. Measured at the decades up to X: the decade maximum of
/// b_p / p^eps must not increase, and #(S up to X) / X^{eps'} must stay
/// bounded away from zero.
pub fn lz2_audit<S, B>(
    s: S,
    b: B,
    eps: f64,
    eps_prime: f64,
    x: u64,
) -> Result<CriterionAuditReport>
where
    S: Fn(u64) -> bool,
    B: Fn(u64) -> u64,
{
    if !(0.0..1.0).contains(&eps) || !(0.0..1.0).contains(&eps_prime) {
        return Err(Error::Domain("exponents must lie in (0, 1)".into()));
    }
    let primes = primes_in(PrimeWindow { lo: 2, hi: x })?;
    let in_s: Vec<u64> = primes.into_iter().filter(|&p| s(p)).collect();
    let decades: Vec<u64> = [1_000u64, 10_000, 100_000].iter().copied().filter(|&d| d <= x).collect();
    let mut measurements = Vec::new();
    if decades.len() < 2 {
        return Ok(CriterionAuditReport {
            criterion: "lz2".into(),
            params: format!("eps={eps} eps'={eps_prime} X={x}"),
            measurements,
            verdict: AuditVerdict::Inconclusive,
        });
    }
    let mut bound_ok = true;
    let mut density_ok = true;
    let mut prev_max = f64::INFINITY;
    for &d in &decades {
        let tail_max = in_s
            .iter()
            .filter(|&&p| p > d / 10 && p <= d)
            .map(|&p| b(p) as f64 / (p as f64).powf(eps))
            .fold(0.0, f64::max);
        let count = in_s.iter().filter(|&&p| p <= d).count();
        let density = count as f64 / (d as f64).powf(eps_prime);
        measurements.push(Measurement { x: format!("max b_p/p^eps, X={d}"), value: tail_max });
        measurements.push(Measurement { x: format!("#S/X^eps', X={d}"), value: density });
        bound_ok &= tail_max <= prev_max + 1e-12;
        prev_max = tail_max;
        density_ok &= density >= 0.1;
    }
    let verdict = if bound_ok && density_ok {
        AuditVerdict::Consistent
    } else {
        AuditVerdict::Inconsistent
    };
    Ok(CriterionAuditReport {
        criterion: "lz2".into(),
        params: format!("eps={eps} eps'={eps_prime} X={x}"),
        measurements,
        verdict,
    })
}

/// First criterion partition over p in [X, 2X] with p = 1 mod r, p = c mod N:
/// P requires ord_p(q) | (p-1)/r; P1 has small order, P2 small index, P3
/// both large, against the threshold sqrt(X)/log X.
pub fn lz1_partition_count(
    q: &ReducedRational,
    r: u64,
    c: u64,
    n: u64,
    x: u64,
) -> Result<CriterionAuditReport> {
    if n == 0 || c == 0 || gcd(n, c) != 1 {
        return Err(Error::Domain(format!("(N, c) = ({n}, {c}) must be coprime and positive")));
    }
    if r < 3 || r % 2 == 0 {
        return Err(Error::Domain(format!("r = {r} must be an odd prime")));
    }
    if x > 500_000 {
        return Err(Error::Capacity(format!("lz1 window start capped at 500000, got {x}")));
    }
    let threshold = (x as f64).sqrt() / (x as f64).ln();
    let (mut p_all, mut p1, mut p2, mut p3, mut overlap) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for p in primes_in(PrimeWindow { lo: x, hi: 2 * x })? {
        if p % r != 1 || p % n != c % n || q.bad_at(p) {
            continue;
        }
        let ord = mult_order(q, p)?;
        if (p - 1) / r % ord != 0 {
            continue;
        }
        p_all += 1;
        let idx = (p - 1) / ord;
        let small_ord = (ord as f64) <= threshold;
        let small_idx = (idx as f64) <= threshold;
        if small_ord {
            p1 += 1;
        }
        if small_idx {
            p2 += 1;
        }
        if small_ord && small_idx {
            overlap += 1;
        }
        if !small_ord && !small_idx {
            p3 += 1;
        }
    }
    let measurements = vec![
        Measurement { x: "#P".into(), value: p_all as f64 },
        Measurement { x: "#P1".into(), value: p1 as f64 },
        Measurement { x: "#P2".into(), value: p2 as f64 },
        Measurement { x: "#P3".into(), value: p3 as f64 },
        Measurement { x: "#(P1 and P2)".into(), value: overlap as f64 },
        Measurement { x: "X/log X".into(), value: x as f64 / (x as f64).ln() },
    ];
    let cover = p_all <= p1 + p2 + p3;
    let verdict = if !cover {
        AuditVerdict::Inconsistent
    } else if p_all == 0 {
        AuditVerdict::Inconclusive
    } else {
        AuditVerdict::Consistent
    };
    Ok(CriterionAuditReport {
        criterion: "lz1".into(),
        params: format!("q={q} r={r} c={c} N={n} X={x}"),
        measurements,
        verdict,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

// ---------------------------------------------------------------------------
// Equidistribution and smoothness
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquidistReport {
    pub count: u64,
    pub primes: u64,
    pub ratio: f64,
}

/// Count root pairs (p, nu) of the irreducible quadratic f with p <= x and
/// alpha <= nu/p < beta, divided by pi(x).
pub fn root_equidist(f: &IntPolynomial, x: u64, alpha: f64, beta: f64) -> Result<EquidistReport> {
    if f.degree() != Some(2) {
        return Err(Error::Domain("root_equidist requires a quadratic".into()));
    }
    let (c0, c1, c2) = (f.coeffs()[0], f.coeffs()[1], f.coeffs()[2]);
    let disc = (c1 as i128) * (c1 as i128) - 4 * (c2 as i128) * (c0 as i128);
    if disc >= 0 {
        let s = (disc as f64).sqrt() as i128;
        for r in s.saturating_sub(1)..=s + 1 {
            if r * r == disc {
                return Err(Error::Domain("discriminant is a perfect square; f is reducible".into()));
            }
        }
    }
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) || alpha > beta {
        return Err(Error::Domain("need 0 <= alpha <= beta <= 1".into()));
    }
    let disc64 = i64::try_from(disc).map_err(|_| Error::Capacity("discriminant overflow".into()))?;
    let primes = primes_in(PrimeWindow { lo: 2, hi: x })?;
    let n_primes = primes.len() as u64;
    let mut count = 0u64;
    for p in primes {
        let mut roots: Vec<u64> = Vec::with_capacity(2);
        if p == 2 || reduce(2 * c2, p) == 0 {
            // degenerate leading coefficient: brute force (only finitely
            // many such primes)
            roots = (0..p).filter(|&v| f.eval_mod(v, p) == 0).collect();
        } else {
            let inv2a = inv_mod(reduce(2 * c2, p), p)?;
            for s in sqrt_mod(disc64, p)? {
                let v = mul_mod(crate::modular::sub_mod(s, reduce(c1, p), p), inv2a, p);
                if !roots.contains(&v) {
                    roots.push(v);
                }
            }
        }
        for v in roots {
            let frac = v as f64 / p as f64;
            if frac >= alpha && frac < beta {
                count += 1;
            }
        }
    }
    Ok(EquidistReport { count, primes: n_primes, ratio: count as f64 / n_primes.max(1) as f64 })
}

/// Ascending n <= nmax for which every prime factor of f(n) is at most
/// n^theta (inclusive); |f(n)| <= 1 is vacuously smooth.
pub fn smooth_scan(f: &IntPolynomial, theta: f64, nmax: u64) -> Result<Vec<u64>> {
    if nmax > 100_000 {
        return Err(Error::Capacity(format!("smooth_scan capped at N = 100000, got {nmax}")));
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::Domain("smooth_scan requires a nonconstant polynomial".into()));
    }
    if !(0.0..1.0).contains(&theta) || theta == 0.0 {
        return Err(Error::Domain("theta must lie in (0, 1)".into()));
    }
    let mut out = Vec::new();
    for n in 1..=nmax {
        let v = f.eval_exact(n as i128).unsigned_abs();
        let v = u64::try_from(v).map_err(|_| Error::Capacity("f(n) exceeds 64 bits".into()))?;
        if v <= 1 {
            out.push(n);
            continue;
        }
        let lpf = crate::modular::factorize(v).last().unwrap().0;
        if (lpf as f64) <= (n as f64).powf(theta) + 1e-9 {
            out.push(n);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Logarithm machinery
// ---------------------------------------------------------------------------

/// Ascending primes p <= x with q_p(alpha) = target mod p, excluding primes
/// dividing the numerator or denominator.
pub fn wieferich_scan(alpha: &ReducedRational, target: i64, x: u64) -> Result<Vec<u64>> {
    if x > crate::primes::SWEEP_CEILING {
        return Err(Error::Capacity(format!("wieferich_scan capped at {}", crate::primes::SWEEP_CEILING)));
    }
    let mut out = Vec::new();
    for p in primes_in(PrimeWindow { lo: 3, hi: x })? {
        if alpha.bad_at(p) {
            continue;
        }
        if fermat_quotient(alpha, p)?.value == reduce(target, p) {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DisproofOutcome {
    /// Smallest prime where q_p(alpha) differs from a/b mod p.
    Witness(u64),
    /// No witness below the search bound.
    Exhausted,
}

/// Search for a witness against log(alpha) = a/b: the smallest prime
/// p <= x, coprime to numerator, denominator, and b, with
/// q_p(alpha) != a * b^{-1} mod p.
pub fn log_rational_disproof(
    alpha: &ReducedRational,
    a: i64,
    b: u64,
    x: u64,
) -> Result<DisproofOutcome> {
    if b == 0 || gcd(a.unsigned_abs(), b) != 1 {
        return Err(Error::Domain(format!("{a}/{b} must be in lowest terms with b > 0")));
    }
    if alpha.num() == 0 || (alpha.num().unsigned_abs() == 1 && alpha.den() == 1) {
        return Err(Error::Domain(format!("alpha = {alpha} is excluded (0 or a unit)")));
    }
    for p in primes_in(PrimeWindow { lo: 3, hi: x })? {
        if alpha.bad_at(p) || b % p == 0 {
            continue;
        }
        let rhs = mul_mod(reduce(a, p), inv_mod(b % p, p)?, p);
        if fermat_quotient(alpha, p)?.value != rhs {
            return Ok(DisproofOutcome::Witness(p));
        }
    }
    Ok(DisproofOutcome::Exhausted)
}

// ---------------------------------------------------------------------------
// Phi_ell analysis (arbitrary precision)
// ---------------------------------------------------------------------------

/// One prime factor p of Phi_ell(u, v) with its cofactor t_p = Phi/p and the
/// residue of (u-v) b t_p + a ell v^ell mod p.
#[derive(Debug, Clone)]
pub struct PhiFactor {
    pub prime: BigInt,
    pub multiplicity: u32,
    pub one_mod_ell: bool,
    pub t_p: BigInt,
    pub contra_residue: BigInt,
}

#[derive(Debug, Clone)]
pub struct PhiEllReport {
    pub u: u64,
    pub v: u64,
    pub ell: u64,
    pub a: i64,
    pub b: u64,
    pub phi: BigInt,
    pub factors: Vec<PhiFactor>,
    pub squarefree: bool,
    pub t_ell: BigInt,
    /// False when the factorization budget ran out.
    pub complete: bool,
}

impl PhiEllReport {
    pub fn to_json(&self) -> String {
        let factors: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|f| {
                serde_json::json!({
                    "prime": f.prime.to_string(),
                    "multiplicity": f.multiplicity,
                    "one_mod_ell": f.one_mod_ell,
                    "t_p": f.t_p.to_string(),
                    "contra_residue": f.contra_residue.to_string(),
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "u": self.u,
            "v": self.v,
            "ell": self.ell,
            "a": self.a,
            "b": self.b,
            "phi": self.phi.to_string(),
            "factors": factors,
            "squarefree": self.squarefree,
            "t_ell": self.t_ell.to_string(),
            "complete": self.complete,
        }))
        .expect("report serializes")
    }
}

fn big_pow(base: u64, exp: u64) -> BigInt {
    let mut acc = BigInt::one();
    let base = BigInt::from(base);
    for _ in 0..exp {
        acc *= &base;
    }
    acc
}

fn mod_pow_big(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Deterministic Miller-Rabin over the first twelve prime bases (proved
/// correct below 3.3e24; well past anything the budgeted rho can split).
fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for base in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let b = BigInt::from(base);
        if &b >= n {
            continue;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for base in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let b = BigInt::from(base);
        if &b >= n {
            continue;
        }
        let mut x = mod_pow_big(&b, &d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-style Pollard rho with deterministic parameters; None when the
/// iteration budget is exhausted.
fn rho_factor(n: &BigInt, budget: u64) -> Option<BigInt> {
    for c in 1u64..=8 {
        let cc = BigInt::from(c);
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        let mut steps = 0u64;
        while d.is_one() && steps < budget {
            x = (&x * &x + &cc) % n;
            y = (&y * &y + &cc) % n;
            y = (&y * &y + &cc) % n;
            d = (&x - &y).abs().gcd(n);
            steps += 1;
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Factor n completely if possible; returns (factors, complete).
fn factor_big(n: &BigInt) -> (Vec<(BigInt, u32)>, bool) {
    let mut n = n.clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, out: &mut Vec<(BigInt, u32)>| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    // trial division
    let mut d = 2u64;
    while d < 100_000 {
        let db = BigInt::from(d);
        if (&db * &db) > n {
            break;
        }
        while (&n % &db).is_zero() {
            n /= &db;
            push(db.clone(), &mut out);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut complete = true;
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(m, &mut out);
            continue;
        }
        match rho_factor(&m, 2_000_000) {
            Some(f) => {
                stack.push(&m / &f);
                stack.push(f);
            }
            None => {
                complete = false;
                push(m, &mut out); // recorded unsplit, flagged incomplete
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    (out, complete)
}

/// Exact analysis of Phi_ell(u, v) = (u^ell - v^ell)/(u - v): factorization,
/// the 1 mod ell residue of every factor, the cofactors t_p, and
/// T_ell = (u-v) b sum t_p + a ell v^ell together with the per-prime
/// congruence (u-v) b t_p + a ell v^ell mod p.
pub fn phi_ell_analysis(u: u64, v: u64, ell: u64, a: i64, b: u64) -> Result<PhiEllReport> {
    if v == 0 || u <= v || gcd(u, v) != 1 {
        return Err(Error::Domain(format!("need u > v >= 1 coprime, got ({u}, {v})")));
    }
    if !crate::primes::is_prime(ell)? || ell <= u.max(a.unsigned_abs()).max(b) {
        return Err(Error::Domain(format!("ell = {ell} must be prime and exceed max(u, |a|, b)")));
    }
    if ell > 2000 {
        return Err(Error::Capacity(format!("ell = {ell} beyond analysis budget")));
    }
    let diff = BigInt::from(u - v);
    let phi: BigInt = (big_pow(u, ell) - big_pow(v, ell)) / &diff;
    let (raw, complete) = factor_big(&phi);
    let v_ell = big_pow(v, ell);
    let tail = BigInt::from(a) * BigInt::from(ell) * &v_ell; // a ell v^ell
    let mut factors = Vec::with_capacity(raw.len());
    let mut sum_t = BigInt::zero();
    let mut squarefree = true;
    for (p, mult) in &raw {
        squarefree &= *mult == 1;
        let t_p = &phi / p;
        sum_t += &t_p;
        let contra = (&diff * BigInt::from(b) * &t_p + &tail).mod_floor(p);
        factors.push(PhiFactor {
            prime: p.clone(),
            multiplicity: *mult,
            one_mod_ell: (p.mod_floor(&BigInt::from(ell))).is_one(),
            t_p,
            contra_residue: contra,
        });
    }
    let t_ell = &diff * BigInt::from(b) * sum_t + tail;
    Ok(PhiEllReport { u, v, ell, a, b, phi, factors, squarefree, t_ell, complete })
}
