//! Turning decimal approximations back into small-denominator rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Default denominator bound; certificate entries need up to `4·10⁶`.
pub const DEFAULT_MAX_DEN: u64 = 10_000_000;

/// The last continued-fraction convergent of `x` whose denominator is at most
/// `max_den`. Convergents approach `x` monotonically, so this is the closest
/// convergent within the bound; an `x` whose own denominator fits is returned
/// unchanged.
pub fn rational_reconstruct(x: &Rational, max_den: u64) -> Rational {
    assert!(max_den >= 1, "max_den must be positive");
    let bound = BigInt::from(max_den);
    // h/k convergents: h_{-1}=1, h_{-2}=0; k_{-1}=0, k_{-2}=1
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    let mut best: Option<Rational> = None;
    loop {
        let a = rest.floor();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > bound {
            break;
        }
        best = Some(Rational::new(h_next.clone(), k_next.clone()));
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let frac = rest - Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    // the first convergent floor(x)/1 always fits since max_den >= 1
    best.expect("denominator bound admits floor(x)")
}

/// Nearest multiple of `1/den` (ties round up), in lowest terms.
pub fn round_to_grid(x: &Rational, den: u64) -> Rational {
    assert!(den >= 1, "grid denominator must be positive");
    let d = Rational::from_integer(den as i64);
    let half = Rational::new(1, 2);
    let n = (x * &d + half).floor();
    Rational::new(n, den)
}
