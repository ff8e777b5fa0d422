//! The prime-counting element resists every linear relation: whenever
//! 0 < b pi(p) - a < p, the congruence b pi(p) = a (mod p) is impossible,
//! and any congruence hit must therefore sit outside that window.

use adelic::primes::{primes_in, PrimeWindow};

#[test]
fn pi_p_linear_nonvanishing() {
    let primes = primes_in(PrimeWindow { lo: 2, hi: 100_000 }).unwrap();
    let pairs: Vec<(u64, u64)> = primes
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u64 + 1)) // pi(p) = index + 1
        .collect();
    for a in -50i64..=50 {
        for b in 1u64..=50 {
            for &(p, pi) in &pairs {
                let value = b as i64 * pi as i64 - a;
                let congruent = (b as i64 * pi as i64 - a).rem_euclid(p as i64) == 0;
                if value > 0 && (value as u64) < p {
                    assert!(
                        !congruent,
                        "b pi(p) = a mod p with 0 < b pi(p) - a < p at p = {p}, a = {a}, b = {b}"
                    );
                }
            }
        }
    }
}
