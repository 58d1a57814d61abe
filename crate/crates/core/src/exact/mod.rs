//! Exact arithmetic: big rationals and elements of cyclotomic fields `Q(ζ_M)`.

mod cyclotomic;
mod poly;
mod rational;

pub use cyclotomic::{Cyclotomic, GaloisAuto};
pub use poly::cyclotomic_polynomial;
pub use rational::{format_rational, parse_rational, rational_serde, Rational};

/// Euler's totient, by trial division.
pub fn totient(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Units of `Z_M` in increasing order. `Z_1` has the single unit 0.
pub fn units_mod(m: usize) -> Vec<usize> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&u| num_integer::gcd(u, m) == 1).collect()
}
