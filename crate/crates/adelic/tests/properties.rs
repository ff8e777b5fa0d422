//! Randomized property checks for the exact-arithmetic core.

use adelic::classnum::kronecker;
use adelic::modular::{legendre, mul_mod, pow_mod, reduce, sqrt_mod, ReducedRational};
use proptest::prelude::*;

const PRIMES: [u64; 8] = [3, 5, 7, 13, 101, 1009, 65537, 999999937];

proptest! {
    #[test]
    fn pow_mod_matches_naive(base in -1000i64..1000, exp in 0u64..12, m in 2u64..10_000) {
        let mut naive = 1 % m;
        for _ in 0..exp {
            naive = mul_mod(naive, reduce(base, m), m);
        }
        prop_assert_eq!(pow_mod(base, exp, m).value, naive);
    }

    #[test]
    fn reduce_is_canonical(a in any::<i64>(), m in 1u64..1_000_000) {
        let r = reduce(a, m);
        prop_assert!(r < m);
        prop_assert_eq!((a.rem_euclid(m as i64)) as u64, r);
    }

    #[test]
    fn sqrt_mod_roots_square_back(a in -5000i64..5000, idx in 0usize..PRIMES.len()) {
        let p = PRIMES[idx];
        let roots = sqrt_mod(a, p).unwrap();
        prop_assert!(roots.len() <= 2);
        for r in &roots {
            prop_assert_eq!(mul_mod(*r, *r, p), reduce(a, p));
        }
        // nonresidues yield no roots, residues yield the full set
        if reduce(a, p) != 0 {
            let expected = if legendre(a, p).unwrap() == 1 { 2 } else { 0 };
            prop_assert_eq!(roots.len(), expected);
        }
    }

    #[test]
    fn legendre_multiplicative(a in -300i64..300, b in -300i64..300, idx in 0usize..PRIMES.len()) {
        let p = PRIMES[idx];
        prop_assert_eq!(
            legendre(a.wrapping_mul(b), p).unwrap(),
            legendre(a, p).unwrap() * legendre(b, p).unwrap()
        );
    }

    #[test]
    fn kronecker_multiplicative_lower(d in -100i64..-1, m in 1i64..200, n in 1i64..200) {
        prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
    }

    #[test]
    fn rational_normal_form(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = ReducedRational::new(n, d).unwrap();
        prop_assert!(r.den() >= 1);
        let g = gcd(r.num().unsigned_abs(), r.den());
        prop_assert!(r.num() == 0 && r.den() == 1 || g == 1);
        // value preserved: n * r.den == d * r.num
        prop_assert_eq!(n as i128 * r.den() as i128, d as i128 * r.num() as i128);
    }

    #[test]
    fn rational_mul_commutes(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500) {
        let x = ReducedRational::new(a, b).unwrap();
        let y = ReducedRational::new(c, d).unwrap();
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
