//! Truncated adele elements: a finite window of primes with one residue per
//! prime and an explicit bad-prime exception set, together with ring
//! operations, polynomial evaluation, and integer-polynomial relation
//! scanning.
//!
//! The ambient ring identifies elements that differ at finitely many
//! coordinates; the bad set is the operational mirror of that quotient.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{add_mod, gcd, mul_mod, reduce, sub_mod};
use crate::primes::{primes_in, PrimeWindow};

/// Default cap on the number of bad coordinates tolerated by `build`.
pub const DEFAULT_BAD_CAP: usize = 32;

/// Guardrails for relation scans.
pub const MAX_SCAN_DEGREE: u32 = 6;
pub const MAX_SCAN_HEIGHT: i64 = 64;
/// Hard cap on the number of candidate polynomials a scan may enumerate.
pub const MAX_SCAN_CANDIDATES: u128 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coord {
    /// Residue value in [0, p) at the prime key.
    Ok(u64),
    /// Excluded coordinate (generator failure, bad reduction, pole, ...).
    Bad,
}

impl Coord {
    pub fn value(&self) -> Option<u64> {
        match self {
            Coord::Ok(v) => Some(*v),
            Coord::Bad => None,
        }
    }
}

/// The computational stand-in for an element of the ambient ring: one residue
/// per window prime plus a finite bad set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedAdele {
    pub window: PrimeWindow,
    primes: Vec<u64>,
    coords: Vec<Coord>,
    pub provenance: String,
}

impl TruncatedAdele {
    /// Populate every window prime from a per-prime rule. Rule failures are
    /// recorded as bad coordinates; more than `bad_cap` of them is a
    /// structural error.
    pub fn build_with_cap<F>(
        window: PrimeWindow,
        provenance: &str,
        bad_cap: usize,
        mut gen: F,
    ) -> Result<TruncatedAdele>
    where
        F: FnMut(u64) -> Result<u64>,
    {
        let primes = primes_in(window)?;
        let mut coords = Vec::with_capacity(primes.len());
        let mut bad = 0usize;
        for &p in &primes {
            match gen(p) {
                Ok(v) => coords.push(Coord::Ok(v % p)),
                Err(Error::Capacity(msg)) => return Err(Error::Capacity(msg)),
                Err(_) => {
                    bad += 1;
                    if bad > bad_cap {
                        return Err(Error::Structural(format!(
                            "more than {bad_cap} bad coordinates while building {provenance:?}"
                        )));
                    }
                    coords.push(Coord::Bad);
                }
            }
        }
        Ok(TruncatedAdele { window, primes, coords, provenance: provenance.to_string() })
    }

    pub fn build<F>(window: PrimeWindow, provenance: &str, gen: F) -> Result<TruncatedAdele>
    where
        F: FnMut(u64) -> Result<u64>,
    {
        Self::build_with_cap(window, provenance, DEFAULT_BAD_CAP, gen)
    }

    /// The constant element c.
    pub fn constant(c: i64, window: PrimeWindow) -> Result<TruncatedAdele> {
        Self::build(window, &format!("const {c}"), |p| Ok(reduce(c, p)))
    }

    pub fn zero(window: PrimeWindow) -> Result<TruncatedAdele> {
        Self::constant(0, window)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// The residue at prime p, if p is in the window and not bad.
    pub fn at(&self, p: u64) -> Option<u64> {
        let i = self.primes.binary_search(&p).ok()?;
        match self.coords[i] {
            Coord::Ok(v) => Some(v),
            Coord::Bad => None,
        }
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        self.primes
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| matches!(c, Coord::Bad))
            .map(|(&p, _)| p)
            .collect()
    }

    /// Primes with a nonzero (non-bad) residue, ascending.
    pub fn nonzero_positions(&self) -> Vec<u64> {
        self.primes
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| matches!(c, Coord::Ok(v) if *v != 0))
            .map(|(&p, _)| p)
            .collect()
    }

    /// Zero at every non-bad coordinate.
    pub fn is_zero(&self) -> bool {
        self.nonzero_positions().is_empty()
    }

    fn zip_with<F>(&self, other: &TruncatedAdele, label: &str, f: F) -> Result<TruncatedAdele>
    where
        F: Fn(u64, u64, u64) -> u64,
    {
        if self.window != other.window {
            return Err(Error::Structural(format!(
                "window mismatch: [{},{}] vs [{},{}]",
                self.window.lo, self.window.hi, other.window.lo, other.window.hi
            )));
        }
        let coords = self
            .primes
            .iter()
            .zip(self.coords.iter().zip(&other.coords))
            .map(|(&p, (a, b))| match (a, b) {
                (Coord::Ok(x), Coord::Ok(y)) => Coord::Ok(f(*x, *y, p)),
                _ => Coord::Bad,
            })
            .collect();
        Ok(TruncatedAdele {
            window: self.window,
            primes: self.primes.clone(),
            coords,
            provenance: format!("({} {} {})", self.provenance, label, other.provenance),
        })
    }

    pub fn add(&self, other: &TruncatedAdele) -> Result<TruncatedAdele> {
        self.zip_with(other, "+", add_mod)
    }

    pub fn sub(&self, other: &TruncatedAdele) -> Result<TruncatedAdele> {
        self.zip_with(other, "-", sub_mod)
    }

    pub fn mul(&self, other: &TruncatedAdele) -> Result<TruncatedAdele> {
        self.zip_with(other, "*", mul_mod)
    }

    pub fn negate(&self) -> TruncatedAdele {
        let coords = self
            .primes
            .iter()
            .zip(&self.coords)
            .map(|(&p, c)| match c {
                Coord::Ok(v) => Coord::Ok(if *v == 0 { 0 } else { p - v }),
                Coord::Bad => Coord::Bad,
            })
            .collect();
        TruncatedAdele {
            window: self.window,
            primes: self.primes.clone(),
            coords,
            provenance: format!("(- {})", self.provenance),
        }
    }

    pub fn scalar_mul(&self, c: i64) -> TruncatedAdele {
        let coords = self
            .primes
            .iter()
            .zip(&self.coords)
            .map(|(&p, coord)| match coord {
                Coord::Ok(v) => Coord::Ok(mul_mod(reduce(c, p), *v, p)),
                Coord::Bad => Coord::Bad,
            })
            .collect();
        TruncatedAdele {
            window: self.window,
            primes: self.primes.clone(),
            coords,
            provenance: format!("({c} * {})", self.provenance),
        }
    }

    /// CSV with columns prime, residue, flag.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("prime,residue,flag\n");
        for (&p, c) in self.primes.iter().zip(&self.coords) {
            match c {
                Coord::Ok(v) => out.push_str(&format!("{p},{v},ok\n")),
                Coord::Bad => out.push_str(&format!("{p},,bad\n")),
            }
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<TruncatedAdele> {
        let mut primes = Vec::new();
        let mut coords = Vec::new();
        for (i, line) in s.lines().enumerate() {
            if i == 0 {
                continue; // header
            }
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Structural(format!("bad CSV line {:?}", line)));
            }
            let p: u64 = parts[0].parse().map_err(|_| Error::Structural(format!("bad prime {:?}", parts[0])))?;
            primes.push(p);
            match parts[2] {
                "ok" => {
                    let v: u64 =
                        parts[1].parse().map_err(|_| Error::Structural(format!("bad residue {:?}", parts[1])))?;
                    if v >= p {
                        return Err(Error::Structural(format!("residue {v} out of range at p = {p}")));
                    }
                    coords.push(Coord::Ok(v));
                }
                "bad" => coords.push(Coord::Bad),
                other => return Err(Error::Structural(format!("bad flag {other:?}"))),
            }
        }
        if primes.is_empty() {
            return Err(Error::Structural("empty CSV".into()));
        }
        let window = PrimeWindow { lo: primes[0], hi: *primes.last().unwrap() };
        let expected = primes_in(window)?;
        if expected != primes {
            return Err(Error::Structural("CSV primes do not form a complete window".into()));
        }
        Ok(TruncatedAdele { window, primes, coords, provenance: "csv".into() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialize")
    }

    pub fn from_json(s: &str) -> Result<TruncatedAdele> {
        let v: TruncatedAdele =
            serde_json::from_str(s).map_err(|e| Error::Structural(format!("bad JSON: {e}")))?;
        let expected = primes_in(v.window)?;
        if expected != v.primes || v.primes.len() != v.coords.len() {
            return Err(Error::Structural("JSON entries do not match window".into()));
        }
        for (&p, c) in v.primes.iter().zip(&v.coords) {
            if let Coord::Ok(r) = c {
                if *r >= p {
                    return Err(Error::Structural(format!("residue {r} out of range at p = {p}")));
                }
            }
        }
        Ok(v)
    }
}

/// An integer-coefficient polynomial, constant term first. Trailing zero
/// coefficients are normalized away; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> IntPolynomial {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree of a nonzero polynomial; the zero polynomial has none.
    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn content(&self) -> u64 {
        self.coeffs.iter().fold(0u64, |g, &c| gcd(g, c.unsigned_abs()))
    }

    /// Horner evaluation of f(x) mod m.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = add_mod(mul_mod(acc, x % m, m), reduce(c, m), m);
        }
        acc
    }

    /// Exact evaluation in i128.
    pub fn eval_exact(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * x + c as i128)
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Evaluate f coordinatewise at a truncated element.
pub fn eval_poly(f: &IntPolynomial, alpha: &TruncatedAdele) -> TruncatedAdele {
    let coords = alpha
        .primes
        .iter()
        .zip(&alpha.coords)
        .map(|(&p, c)| match c {
            Coord::Ok(v) => Coord::Ok(f.eval_mod(*v, p)),
            Coord::Bad => Coord::Bad,
        })
        .collect();
    TruncatedAdele {
        window: alpha.window,
        primes: alpha.primes.clone(),
        coords,
        provenance: format!("({f})({})", alpha.provenance),
    }
}

/// A bivariate integer polynomial as a dense coefficient vector over the
/// monomials of total degree <= d, ordered degree-first and then by
/// descending x-exponent: 1, x, y, x^2, xy, y^2, ...
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivarPolynomial {
    /// (x-exponent, y-exponent, coefficient), nonzero coefficients only,
    /// in monomial order.
    pub terms: Vec<(u32, u32, i64)>,
}

impl BivarPolynomial {
    pub fn eval_mod(&self, x: u64, y: u64, m: u64) -> u64 {
        let mut acc = 0u64;
        for &(i, j, c) in &self.terms {
            let mut t = reduce(c, m);
            for _ in 0..i {
                t = mul_mod(t, x % m, m);
            }
            for _ in 0..j {
                t = mul_mod(t, y % m, m);
            }
            acc = add_mod(acc, t, m);
        }
        acc
    }
}

impl std::fmt::Display for BivarPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomial first
        for (k, &(i, j, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if mag != 1 || (i == 0 && j == 0) {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{j}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanHit<P> {
    pub poly: P,
    /// Non-bad window primes where the polynomial does not vanish.
    pub exceptions: Vec<u64>,
}

/// Result of an exhaustive relation scan over a coefficient box.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationScanReport<P> {
    pub window: PrimeWindow,
    pub d_max: u32,
    pub h_max: i64,
    pub max_exceptions: usize,
    pub hits: Vec<ScanHit<P>>,
}

fn scan_guardrails(d_max: u32, h_max: i64, n_coeffs: u32) -> Result<()> {
    if d_max > MAX_SCAN_DEGREE || h_max < 1 || h_max > MAX_SCAN_HEIGHT {
        return Err(Error::Capacity(format!(
            "scan bounds d_max = {d_max}, h_max = {h_max} exceed guardrails (d <= {MAX_SCAN_DEGREE}, h <= {MAX_SCAN_HEIGHT})"
        )));
    }
    let candidates = (2 * h_max as u128 + 1).pow(n_coeffs);
    if candidates > MAX_SCAN_CANDIDATES {
        return Err(Error::Capacity(format!(
            "{candidates} candidate polynomials exceed the scan budget"
        )));
    }
    Ok(())
}

/// Odometer over coefficient vectors in [-h, h]^n, lexicographic from the
/// all-(-h) vector, first coordinate fastest.
struct CoeffBox {
    h: i64,
    state: Vec<i64>,
    done: bool,
}

impl CoeffBox {
    fn new(n: usize, h: i64) -> CoeffBox {
        CoeffBox { h, state: vec![-h; n], done: false }
    }
}

impl Iterator for CoeffBox {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.state.clone();
        let mut i = 0;
        loop {
            if i == self.state.len() {
                self.done = true;
                break;
            }
            if self.state[i] < self.h {
                self.state[i] += 1;
                break;
            }
            self.state[i] = -self.h;
            i += 1;
        }
        Some(out)
    }
}

fn vec_content(coeffs: &[i64]) -> u64 {
    coeffs.iter().fold(0u64, |g, &c| gcd(g, c.unsigned_abs()))
}

/// Exhaustively scan nonzero integer polynomials of degree <= d_max with
/// coefficients in [-h_max, h_max], content 1, and positive leading
/// coefficient, reporting those that vanish at all but at most
/// `max_exceptions` non-bad window primes. Deterministic order: degree
/// ascending, then coefficient vectors lexicographically (constant term
/// fastest).
pub fn relation_scan(
    alpha: &TruncatedAdele,
    d_max: u32,
    h_max: i64,
    max_exceptions: usize,
) -> Result<RelationScanReport<IntPolynomial>> {
    scan_guardrails(d_max, h_max, d_max + 1)?;
    let points: Vec<(u64, u64)> = alpha
        .primes
        .iter()
        .zip(&alpha.coords)
        .filter_map(|(&p, c)| match c {
            Coord::Ok(v) => Some((p, *v)),
            Coord::Bad => None,
        })
        .collect();
    let mut hits = Vec::new();
    for d in 0..=d_max {
        for mut coeffs in CoeffBox::new(d as usize + 1, h_max) {
            if coeffs[d as usize] <= 0 {
                continue; // positive leading coefficient
            }
            if vec_content(&coeffs) != 1 {
                continue;
            }
            let f = IntPolynomial { coeffs: std::mem::take(&mut coeffs) };
            let mut exceptions = Vec::new();
            let mut dead = false;
            for &(p, v) in &points {
                if f.eval_mod(v, p) != 0 {
                    exceptions.push(p);
                    if exceptions.len() > max_exceptions {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead {
                hits.push(ScanHit { poly: f, exceptions });
            }
        }
    }
    Ok(RelationScanReport { window: alpha.window, d_max, h_max, max_exceptions, hits })
}

/// Monomials of total degree <= d, degree-first, descending x-exponent.
fn bivar_monomials(d: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for t in 0..=d {
        for i in (0..=t).rev() {
            out.push((i, t - i));
        }
    }
    out
}

/// Bivariate analogue of `relation_scan` over monomials of total degree <=
/// `total_degree`, with the same normalization (content 1, positive
/// coefficient on the highest nonzero monomial).
pub fn relation_scan2(
    alpha: &TruncatedAdele,
    beta: &TruncatedAdele,
    total_degree: u32,
    h_max: i64,
    max_exceptions: usize,
) -> Result<RelationScanReport<BivarPolynomial>> {
    if alpha.window != beta.window {
        return Err(Error::Structural("bivariate scan requires identical windows".into()));
    }
    if total_degree > 3 {
        return Err(Error::Capacity(format!("bivariate total degree {total_degree} > 3")));
    }
    let monomials = bivar_monomials(total_degree);
    scan_guardrails(total_degree, h_max, monomials.len() as u32)?;
    let points: Vec<(u64, u64, u64)> = alpha
        .primes
        .iter()
        .zip(alpha.coords.iter().zip(&beta.coords))
        .filter_map(|(&p, (a, b))| match (a, b) {
            (Coord::Ok(x), Coord::Ok(y)) => Some((p, *x, *y)),
            _ => None,
        })
        .collect();
    let mut hits = Vec::new();
    for coeffs in CoeffBox::new(monomials.len(), h_max) {
        // highest nonzero monomial must have a positive coefficient
        match coeffs.iter().rev().find(|&&c| c != 0) {
            None => continue,
            Some(&c) if c < 0 => continue,
            _ => {}
        }
        if vec_content(&coeffs) != 1 {
            continue;
        }
        let poly = BivarPolynomial {
            terms: monomials
                .iter()
                .zip(&coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(&(i, j), &c)| (i, j, c))
                .collect(),
        };
        let mut exceptions = Vec::new();
        let mut dead = false;
        for &(p, x, y) in &points {
            if poly.eval_mod(x, y, p) != 0 {
                exceptions.push(p);
                if exceptions.len() > max_exceptions {
                    dead = true;
                    break;
                }
            }
        }
        if !dead {
            hits.push(ScanHit { poly, exceptions });
        }
    }
    Ok(RelationScanReport { window: alpha.window, d_max: total_degree, h_max, max_exceptions, hits })
}
