use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// The `M`-th cyclotomic polynomial, coefficients from the constant term up.
///
/// Computed as `(x^M - 1) / Π_{d | M, d < M} Φ_d(x)` by exact division.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial needs M >= 1");
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = divide_exact(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

/// Quotient of `a` by the monic `b`; panics when the remainder is nonzero.
fn divide_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db];
        quot[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[i + j] -= c * bj;
            }
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn degrees_are_totients() {
        for m in 1..200 {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, super::super::totient(m), "M={m}");
        }
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }
}
