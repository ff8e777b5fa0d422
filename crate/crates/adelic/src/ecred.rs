//! Reduction of rational elliptic curves mod p: Frobenius traces by
//! character sums, the per-prime trace element, Sato-Tate angle statistics
//! with both candidate limiting measures, and quadratic twists.
//!
//! Model restriction: short Weierstrass y² = x³ + ax + b, with p ∈ {2, 3}
//! and primes dividing the discriminant always marked bad. Truncated elements
//! ignore finitely many coordinates, so minimal models and conductors buy
//! nothing here.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adele::TruncatedAdele;
use crate::error::{Error, Result};
use crate::modular::{add_mod, legendre, mul_mod, reduce};
use crate::primes::{primes_in, PrimeWindow};
use crate::report::{CongruenceReport, CongruenceRow};

/// Cap on the sweep upper bound for trace statistics.
pub const MAX_TRACE_SWEEP: u64 = 1_000_000;

/// E: y² = x³ + ax + b with 4a³ + 27b² ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortWeierstrassCurve {
    a: i64,
    b: i64,
}

impl ShortWeierstrassCurve {
    pub fn new(a: i64, b: i64) -> Result<ShortWeierstrassCurve> {
        let curve = ShortWeierstrassCurve { a, b };
        if curve.discriminant() == 0 {
            return Err(Error::Domain(format!("curve ({a}, {b}) is singular")));
        }
        Ok(curve)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// 4a³ + 27b², exact in i128.
    pub fn discriminant(&self) -> i128 {
        let a = self.a as i128;
        let b = self.b as i128;
        4 * a * a * a + 27 * b * b
    }

    /// Parse "a,b".
    pub fn parse(s: &str) -> Result<ShortWeierstrassCurve> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Config(format!("curve must be \"a,b\", got {s:?}")))?;
        let a = a.trim().parse().map_err(|_| Error::Config(format!("bad curve coefficient {a:?}")))?;
        let b = b.trim().parse().map_err(|_| Error::Config(format!("bad curve coefficient {b:?}")))?;
        ShortWeierstrassCurve::new(a, b)
    }
}

impl std::fmt::Display for ShortWeierstrassCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// One computed trace with its Sato-Tate angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub p: u64,
    pub ap: i64,
    pub theta: f64,
}

pub fn good_reduction(e: &ShortWeierstrassCurve, p: u64) -> bool {
    if p <= 3 {
        return false;
    }
    e.discriminant() % p as i128 != 0
}

/// a_p(E) = p + 1 - #E(F_p) via the character sum
/// a_p = -Σ_{x mod p} ((x³ + ax + b) | p), with a per-prime square table.
pub fn ap_trace(e: &ShortWeierstrassCurve, p: u64) -> Result<i64> {
    if !good_reduction(e, p) {
        return Err(Error::BadPrime { p, reason: format!("bad reduction for E = {e}") });
    }
    // chi[v] = Legendre symbol (v | p), built by marking squares once
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for x in 1..=(p - 1) / 2 {
        chi[mul_mod(x, x, p) as usize] = 1;
    }
    let a = reduce(e.a, p);
    let b = reduce(e.b, p);
    let mut sum = 0i64;
    for x in 0..p {
        let x2 = mul_mod(x, x, p);
        let rhs = add_mod(mul_mod(add_mod(x2, a, p), x, p), b, p);
        sum += chi[rhs as usize] as i64;
    }
    let ap = -sum;
    assert!(
        (ap * ap) as u128 <= 4 * p as u128,
        "Hasse bound violated: a_{p} = {ap} for E = {e}"
    );
    Ok(ap)
}

/// theta_p = arccos(a_p / (2 sqrt p)) in [0, pi].
pub fn theta_of(p: u64, ap: i64) -> f64 {
    let c = ap as f64 / (2.0 * (p as f64).sqrt());
    c.clamp(-1.0, 1.0).acos()
}

/// Traces at every good prime in the window, ascending.
pub fn trace_sweep(e: &ShortWeierstrassCurve, window: PrimeWindow) -> Result<Vec<TraceRecord>> {
    if window.hi > MAX_TRACE_SWEEP {
        return Err(Error::Capacity(format!("trace sweep capped at {MAX_TRACE_SWEEP}")));
    }
    let primes = primes_in(window)?;
    primes
        .par_iter()
        .filter(|&&p| good_reduction(e, p))
        .map(|&p| {
            let ap = ap_trace(e, p)?;
            Ok(TraceRecord { p, ap, theta: theta_of(p, ap) })
        })
        .collect()
}

/// The element alpha(E) = (a_p(E) mod p)_p; bad-reduction primes marked bad.
pub fn alpha_e(e: &ShortWeierstrassCurve, window: PrimeWindow) -> Result<TruncatedAdele> {
    // Compute traces in parallel first, then assemble in prime order.
    let records = trace_sweep(e, window)?;
    let mut by_prime = std::collections::HashMap::new();
    for r in &records {
        by_prime.insert(r.p, r.ap);
    }
    TruncatedAdele::build(window, &format!("alpha{e}"), |p| match by_prime.get(&p) {
        Some(&ap) => Ok(reduce(ap, p)),
        None => Err(Error::BadPrime { p, reason: "bad reduction".into() }),
    })
}

/// Empirical theta histogram over good p <= x, with both candidate limiting
/// measures (Sato-Tate sin² for non-CM; half-atom at pi/2 plus uniform for
/// CM) and the total-variation distance to each.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SatoTateHistogram {
    pub bins: usize,
    pub sample_size: usize,
    /// Empirical mass per bin; sums to 1.
    pub masses: Vec<f64>,
    pub noncm_overlay: Vec<f64>,
    pub cm_overlay: Vec<f64>,
    pub tv_noncm: f64,
    pub tv_cm: f64,
}

impl SatoTateHistogram {
    /// Name of the overlay with the smaller total-variation distance.
    pub fn closer(&self) -> &'static str {
        if self.tv_cm < self.tv_noncm {
            "cm"
        } else {
            "noncm"
        }
    }

    /// Empirical mass of [lo, hi] approximated by whole bins whose centers
    /// fall inside the interval.
    pub fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        let width = std::f64::consts::PI / self.bins as f64;
        self.masses
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let center = (*i as f64 + 0.5) * width;
                center >= lo && center <= hi
            })
            .map(|(_, m)| m)
            .sum()
    }
}

pub fn sato_tate_histogram(
    e: &ShortWeierstrassCurve,
    x: u64,
    bins: usize,
) -> Result<SatoTateHistogram> {
    if x > MAX_TRACE_SWEEP {
        return Err(Error::Capacity(format!("sato_tate_histogram capped at X = {MAX_TRACE_SWEEP}")));
    }
    if bins < 4 {
        return Err(Error::Domain(format!("need at least 4 bins, got {bins}")));
    }
    let records = trace_sweep(e, PrimeWindow { lo: 2, hi: x })?;
    if records.is_empty() {
        return Err(Error::Domain("no good primes in range".into()));
    }
    let pi = std::f64::consts::PI;
    let width = pi / bins as f64;
    let mut counts = vec![0usize; bins];
    for r in &records {
        let idx = ((r.theta / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let n = records.len() as f64;
    let masses: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();

    // non-CM: density (2/pi) sin² theta; integral over [a,b] is
    // (b - a)/pi - (sin 2b - sin 2a)/(2 pi)
    let noncm_overlay: Vec<f64> = (0..bins)
        .map(|i| {
            let a = i as f64 * width;
            let b = a + width;
            (b - a) / pi - ((2.0 * b).sin() - (2.0 * a).sin()) / (2.0 * pi)
        })
        .collect();
    // CM: half the mass is an atom at pi/2 (supersingular primes), the rest
    // uniform on [0, pi]
    let cm_overlay: Vec<f64> = (0..bins)
        .map(|i| {
            let a = i as f64 * width;
            let b = a + width;
            // Half-open [a, b) to match the empirical binning: theta = pi/2
            // exactly (a_p = 0) falls in the bin right of the edge.
            let atom = if a <= pi / 2.0 && pi / 2.0 < b { 0.5 } else { 0.0 };
            atom + (b - a) / (2.0 * pi)
        })
        .collect();
    let tv = |overlay: &[f64]| {
        0.5 * masses.iter().zip(overlay).map(|(m, o)| (m - o).abs()).sum::<f64>()
    };
    Ok(SatoTateHistogram {
        bins,
        sample_size: records.len(),
        tv_noncm: tv(&noncm_overlay),
        tv_cm: tv(&cm_overlay),
        masses,
        noncm_overlay,
        cm_overlay,
    })
}

fn is_squarefree_i64(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return false;
            }
        }
        f += 1;
    }
    true
}

/// The quadratic twist by squarefree d: (a d², b d³).
pub fn quadratic_twist(e: &ShortWeierstrassCurve, d: i64) -> Result<ShortWeierstrassCurve> {
    if d == 0 || !is_squarefree_i64(d) {
        return Err(Error::Domain(format!("twist parameter {d} must be squarefree and nonzero")));
    }
    let a = e
        .a
        .checked_mul(d)
        .and_then(|v| v.checked_mul(d))
        .ok_or_else(|| Error::Capacity("twist coefficient overflow".into()))?;
    let b = e
        .b
        .checked_mul(d)
        .and_then(|v| v.checked_mul(d))
        .and_then(|v| v.checked_mul(d))
        .ok_or_else(|| Error::Capacity("twist coefficient overflow".into()))?;
    ShortWeierstrassCurve::new(a, b)
}

/// Check a_p(E^d) = (d | p) a_p(E) at every prime in the window that is good
/// for both curves.
pub fn twist_trace_check(
    e: &ShortWeierstrassCurve,
    d: i64,
    window: PrimeWindow,
) -> Result<CongruenceReport> {
    let twist = quadratic_twist(e, d)?;
    let label = format!("twist{d}");
    let primes = primes_in(window)?;
    let mut rows = Vec::with_capacity(primes.len());
    for p in primes {
        if !good_reduction(e, p) || !good_reduction(&twist, p) {
            rows.push(CongruenceRow::skip(label.clone(), p, "bad reduction"));
            continue;
        }
        let lhs = reduce(ap_trace(&twist, p)?, p);
        let rhs = reduce(legendre(d, p)? * ap_trace(e, p)?, p);
        rows.push(CongruenceRow::ok(label.clone(), p, 0, 0, lhs, rhs));
    }
    Ok(CongruenceReport { rows })
}
