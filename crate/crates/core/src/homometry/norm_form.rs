use num_integer::{Integer, Roots};
use num_traits::Zero;
use serde::Serialize;

use crate::exact::{Cyclotomic, Rational};

/// An Eisenstein integer `x + y ζ_6`, norm `x² + xy + y²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Eisenstein {
    pub x: i64,
    pub y: i64,
}

impl Eisenstein {
    pub fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> i64 {
        self.x * self.x + self.x * self.y + self.y * self.y
    }

    /// Multiplication by `ζ_6`, using `ζ² = ζ - 1`.
    pub fn rotate(self) -> Self {
        Self::new(-self.y, self.x + self.y)
    }

    pub fn conjugate(self) -> Self {
        Self::new(self.x + self.y, -self.y)
    }

    /// The associate in the sector `y ≤ 0 < x + y`; two elements have equal sixth powers
    /// exactly when their representatives coincide.
    pub fn canonical(self) -> Self {
        let mut z = self;
        for _ in 0..6 {
            if z.y <= 0 && z.x + z.y > 0 {
                return z;
            }
            z = z.rotate();
        }
        z
    }

    pub fn is_real(self) -> bool {
        self.y == 0
    }

    pub fn to_cyclotomic(self) -> Cyclotomic {
        Cyclotomic::from_coeffs(6, vec![Rational::from_integer(self.x.into()), Rational::from_integer(self.y.into())])
            .expect("degree 2 basis")
    }

    /// Inverse of [`Eisenstein::to_cyclotomic`] for integral elements of `Q(ζ_6)`.
    pub fn from_cyclotomic(z: &Cyclotomic) -> Option<Self> {
        let z = z.lift(z.conductor().lcm(&6)).ok()?.descend(6)?;
        let c = z.coeffs();
        let get = |i: usize| -> Option<i64> {
            let v = c.get(i).cloned().unwrap_or_else(Rational::zero);
            if v.is_integer() {
                i64::try_from(v.to_integer()).ok()
            } else {
                None
            }
        };
        Some(Self::new(get(0)?, get(1)?))
    }
}

/// A solution of `x² + xy + y² = level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NormFormSolution {
    pub x: i64,
    pub y: i64,
    pub level: u64,
}

impl NormFormSolution {
    pub fn eisenstein(self) -> Eisenstein {
        Eisenstein::new(self.x, self.y)
    }
}

/// All integer solutions of `x² + xy + y² = level`, sorted by `(x, y)`.
pub fn norm_form_solutions(level: u64) -> Vec<NormFormSolution> {
    let l = i128::from(level);
    // |y| ≤ 2 sqrt(L/3) since 4L = (2x + y)² + 3y²
    let bound = ((4 * l) / 3).sqrt() + 1;
    let mut out = Vec::new();
    for y in -bound..=bound {
        let disc = 4 * l - 3 * y * y;
        if disc < 0 {
            continue;
        }
        let s = disc.sqrt();
        if s * s != disc {
            continue;
        }
        for root in if s == 0 { vec![0] } else { vec![s, -s] } {
            let twice_x = root - y;
            if twice_x % 2 == 0 {
                out.push(NormFormSolution {
                    x: (twice_x / 2) as i64,
                    y: y as i64,
                    level,
                });
            }
        }
    }
    out.sort();
    out
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, k)| u64::from(k) + 1).product()
}

/// Writes `L = 3^a · r · s` with `r` built from primes `≡ 1 (mod 3)` and `s` from primes
/// `≡ 2 (mod 3)`; the count is `6 d(r)` when `s` is a square and zero otherwise.
pub fn predicted_solution_count(level: u64) -> u64 {
    if level == 0 {
        return 1;
    }
    let mut d = 1;
    for (p, k) in factorize(level) {
        match p % 3 {
            1 => d *= u64::from(k) + 1,
            2 if k % 2 == 1 => return 0,
            _ => {}
        }
    }
    6 * d
}
