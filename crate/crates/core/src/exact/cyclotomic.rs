use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::cyclotomic_polynomial;
use super::rational::{format_rational, parse_rational, rational_serde, Rational};
use super::{totient, units_mod};
use crate::error::{Error, Result};

/// Precomputed reduction data for `Q(ζ_M)`: `powers[k]` is `ζ_M^k` in the power basis.
#[derive(Debug)]
struct FieldData {
    conductor: usize,
    degree: usize,
    powers: Vec<Vec<i64>>,
}

impl FieldData {
    fn build(m: usize) -> Self {
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(m);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..m {
            powers.push(current.clone());
            // multiply by ζ, then fold ζ^degree = -Σ phi_j ζ^j back in
            let carry = current[degree - 1];
            for j in (1..degree).rev() {
                current[j] = current[j - 1];
            }
            current[0] = 0;
            if carry != 0 {
                for j in 0..degree {
                    current[j] -= carry * phi[j];
                }
            }
        }
        Self { conductor: m, degree, powers }
    }

    fn get(m: usize) -> Arc<FieldData> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FieldData>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&m) {
            return Arc::clone(f);
        }
        let built = Arc::new(FieldData::build(m));
        cache
            .lock()
            .unwrap()
            .entry(m)
            .or_insert_with(|| Arc::clone(&built))
            .clone()
    }

    /// Reduces `Σ c_k ζ^k` (exponents taken mod `M`) into the power basis.
    fn reduce(&self, power_coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.degree];
        for (k, c) in power_coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k % self.conductor;
            if k < self.degree {
                out[k] += c;
                continue;
            }
            for (slot, &p) in out.iter_mut().zip(&self.powers[k]) {
                if p != 0 {
                    *slot += c * Rational::from_integer(BigInt::from(p));
                }
            }
        }
        out
    }
}

/// An exact element of `Q(ζ_M)`, stored as coefficients of `1, ζ_M, ..., ζ_M^{φ(M)-1}`.
///
/// The power-basis residue modulo `Φ_M` is unique, so equality is coefficient-wise once both
/// sides sit at a common conductor. Mixed-conductor arithmetic lifts to the lcm.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<FieldData>,
    coeffs: Vec<Rational>,
}

/// The automorphism `ζ_M ↦ ζ_M^u` of `Q(ζ_M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaloisAuto {
    conductor: usize,
    unit: usize,
}

impl GaloisAuto {
    pub fn new(conductor: usize, unit: i64) -> Result<Self> {
        assert!(conductor >= 1);
        let reduced = unit.rem_euclid(conductor as i64) as usize;
        if reduced.gcd(&conductor) != 1 {
            return Err(Error::InvalidAutomorphism { conductor, unit: reduced });
        }
        Ok(Self { conductor, unit: reduced })
    }

    /// Complex conjugation, `u = -1`.
    pub fn conjugation(conductor: usize) -> Self {
        Self::new(conductor, -1).expect("-1 is always a unit")
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// All automorphisms of `Q(ζ_M)`, in increasing unit order.
    pub fn all(conductor: usize) -> impl Iterator<Item = GaloisAuto> {
        units_mod(conductor)
            .into_iter()
            .map(move |u| GaloisAuto { conductor, unit: u })
    }

    pub fn apply(&self, z: &Cyclotomic) -> Result<Cyclotomic> {
        let z = z.lift(self.conductor)?;
        Ok(z.apply_unit(self.unit))
    }
}

impl Cyclotomic {
    pub fn zero(m: usize) -> Self {
        let field = FieldData::get(m);
        let coeffs = vec![Rational::zero(); field.degree];
        Self { field, coeffs }
    }

    pub fn one(m: usize) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: usize, value: Rational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = value;
        z
    }

    pub fn from_int(m: usize, value: i64) -> Self {
        Self::from_rational(m, Rational::from_integer(value.into()))
    }

    /// `ζ_M^k` reduced modulo `Φ_M`.
    pub fn root_of_unity(m: usize, k: i64) -> Self {
        let field = FieldData::get(m);
        let k = k.rem_euclid(m as i64) as usize;
        let coeffs = field.powers[k]
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        Self { field, coeffs }
    }

    /// `Σ_k c_k ζ_M^k` for any number of terms; exponents wrap modulo `M`.
    pub fn from_power_coeffs(m: usize, power_coeffs: &[Rational]) -> Self {
        let field = FieldData::get(m);
        let coeffs = field.reduce(power_coeffs);
        Self { field, coeffs }
    }

    /// Builds from power-basis coefficients, which must number exactly `φ(M)`.
    pub fn from_coeffs(m: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parse("conductor must be at least 1".into()));
        }
        let field = FieldData::get(m);
        if coeffs.len() != field.degree {
            return Err(Error::Parse(format!(
                "Q(zeta_{m}) needs {} coefficients, got {}",
                field.degree,
                coeffs.len()
            )));
        }
        Ok(Self { field, coeffs })
    }

    pub fn conductor(&self) -> usize {
        self.field.conductor
    }

    pub fn degree(&self) -> usize {
        self.field.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Embeds into `Q(ζ_to)` via `ζ_M = ζ_to^{to/M}`; `M` must divide `to`.
    pub fn lift(&self, to: usize) -> Result<Self> {
        let from = self.conductor();
        if to == from {
            return Ok(self.clone());
        }
        if to == 0 || !to.is_multiple_of(from) {
            return Err(Error::ConductorMismatch { from, to });
        }
        let step = to / from;
        let mut power = vec![Rational::zero(); to];
        for (j, c) in self.coeffs.iter().enumerate() {
            power[(j * step) % to] += c;
        }
        Ok(Self::from_power_coeffs(to, &power))
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor().lcm(&b.conductor());
        (a.lift(m).unwrap(), b.lift(m).unwrap())
    }

    fn with_common<T>(a: &Self, b: &Self, op: impl FnOnce(&Self, &Self) -> T) -> T {
        if a.conductor() == b.conductor() {
            op(a, b)
        } else {
            let (a, b) = Self::lift_pair(a, b);
            op(&a, &b)
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `σ_u` for a unit `u` already reduced modulo the conductor.
    fn apply_unit(&self, u: usize) -> Self {
        let m = self.conductor();
        if u == 1 % m {
            return self.clone();
        }
        let mut power = vec![Rational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            power[(j * u) % m] += c;
        }
        Self {
            field: Arc::clone(&self.field),
            coeffs: self.field.reduce(&power),
        }
    }

    pub fn galois(&self, sigma: &GaloisAuto) -> Result<Self> {
        sigma.apply(self)
    }

    /// Complex conjugate, i.e. the automorphism `u = -1`.
    pub fn conjugate(&self) -> Self {
        let m = self.conductor();
        self.apply_unit((m - 1) % m.max(1))
    }

    /// Field norm down to `Q`: the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let m = self.conductor();
        let mut acc = Self::one(m);
        for u in units_mod(m) {
            acc = &acc * &self.apply_unit(u);
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Multiplicative inverse via `z⁻¹ = Π_{u≠1} σ_u(z) / N(z)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.conductor();
        let mut others = Self::one(m);
        for u in units_mod(m).into_iter().filter(|&u| u != 1 % m) {
            others = &others * &self.apply_unit(u);
        }
        let norm = (self * &others)
            .as_rational()
            .expect("norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Rewrites the element over `Q(ζ_m)` when it lies there; `m` must divide the conductor.
    pub fn descend(&self, m: usize) -> Option<Self> {
        let big = self.conductor();
        if m == 0 || !big.is_multiple_of(m) {
            return None;
        }
        if m == big {
            return Some(self.clone());
        }
        // membership: fixed by Gal(Q(ζ_big)/Q(ζ_m)) = {u ≡ 1 mod m}
        for u in units_mod(big).into_iter().filter(|u| u % m == 1 % m) {
            if self.apply_unit(u) != *self {
                return None;
            }
        }
        let small_degree = totient(m);
        let step = big / m;
        let columns: Vec<&Vec<i64>> = (0..small_degree)
            .map(|j| &self.field.powers[(j * step) % big])
            .collect();
        let rows = self.degree();
        let mut aug: Vec<Vec<Rational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rational> = columns
                    .iter()
                    .map(|col| Rational::from_integer(col[r].into()))
                    .collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let solution = solve_full_column_rank(&mut aug, small_degree)?;
        Some(Self::from_coeffs(m, solution).expect("degree matches"))
    }

    /// Smallest conductor dividing the current one over which the element is defined.
    pub fn minimal_conductor(&self) -> usize {
        let big = self.conductor();
        (1..=big)
            .filter(|d| big.is_multiple_of(*d))
            .find(|&d| self.descend(d).is_some())
            .unwrap_or(big)
    }

    /// Complex embedding with `ζ_M = exp(2πi/M)`. Display and diagnostics only.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = std::f64::consts::TAU * j as f64 / m;
                Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Parses `a + b√-3` forms (`"39-9√-3"`, `"42"`, `"-√-3"`, `"1/2+sqrt(-3)/2"`) into `Q(ζ_6)`,
    /// using `√-3 = 2ζ_6 - 1`.
    pub fn parse_eisenstein(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not of the form a+b√-3: {text:?}"));
        let mut s: String = text
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .filter(|c| !c.is_whitespace())
            .collect();
        for token in ["sqrt(-3)", "√(-3)", "√-3", "i√3"] {
            s = s.replace(token, "s");
        }
        if s.is_empty() {
            return Err(bad());
        }
        let mut real = Rational::zero();
        let mut imag = Rational::zero();
        let mut start = 0;
        let bytes: Vec<char> = s.chars().collect();
        let mut terms = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '/') {
                terms.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-Rational::one(), rest.to_string()),
                None => (Rational::one(), term.trim_start_matches('+').to_string()),
            };
            if !body.contains('s') {
                real += sign * parse_rational(&body)?;
                continue;
            }
            // forms: s, cs, c*s, s/d, cs/d, c*s/d
            let (before, after) = body.split_once('s').ok_or_else(bad)?;
            let before = before.trim_end_matches('*');
            let mut coeff = if before.is_empty() {
                Rational::one()
            } else {
                parse_rational(before)?
            };
            if !after.is_empty() {
                let den = after.strip_prefix('/').ok_or_else(bad)?;
                let den = parse_rational(den)?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                coeff /= den;
            }
            imag += sign * coeff;
        }
        // a + b(2ζ - 1) = (a - b) + 2b ζ
        let two = Rational::from_integer(2.into());
        Self::from_coeffs(6, vec![&real - &imag, imag * two])
    }

    /// Renders an element of `Q(ζ_6)` as `a+b√-3`, or `None` outside that field.
    pub fn to_sqrt_minus3(&self) -> Option<String> {
        let z = self.lift(self.conductor().lcm(&6)).ok()?.descend(6)?;
        let half = Rational::new(1.into(), 2.into());
        let b = &z.coeffs[1] * &half;
        let a = &z.coeffs[0] + &b;
        if b.is_zero() {
            return Some(format_rational(&a));
        }
        let mut out = String::new();
        if !a.is_zero() {
            out.push_str(&format_rational(&a));
            out.push(if b.is_negative() { '-' } else { '+' });
        } else if b.is_negative() {
            out.push('-');
        }
        let mag = b.abs();
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
        }
        out.push_str("√-3");
        Some(out)
    }
}

/// Solves `A a = b` for the augmented matrix `[A | b]` with `cols` unknowns, when consistent.
fn solve_full_column_rank(aug: &mut [Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let rows = aug.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let found = (pivot_row..rows).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(pivot_row, found);
        let inv = aug[pivot_row][col].recip();
        for v in aug[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot = aug[pivot_row].clone();
                for (cell, p) in aug[r].iter_mut().zip(&pivot) {
                    *cell -= &factor * p;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if aug[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| aug[r][cols].clone()).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        Self::with_common(self, other, |a, b| a.coeffs == b.coeffs)
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.conductor(), self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.conductor();
        let mut wrote = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match j {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    write!(f, "z{m}")?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'b> Add<&'b Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'b Cyclotomic) -> Cyclotomic {
        Cyclotomic::with_common(self, rhs, |a, b| Cyclotomic {
            field: Arc::clone(&a.field),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        })
    }
}

impl<'b> Sub<&'b Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'b Cyclotomic) -> Cyclotomic {
        Cyclotomic::with_common(self, rhs, |a, b| Cyclotomic {
            field: Arc::clone(&a.field),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        })
    }
}

impl<'b> Mul<&'b Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'b Cyclotomic) -> Cyclotomic {
        Cyclotomic::with_common(self, rhs, |a, b| {
            let d = a.degree();
            if d == 1 {
                return Cyclotomic {
                    field: Arc::clone(&a.field),
                    coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
                };
            }
            let mut prod = vec![Rational::zero(); 2 * d - 1];
            for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    prod[i + j] += x * y;
                }
            }
            Cyclotomic {
                field: Arc::clone(&a.field),
                coeffs: a.field.reduce(&prod),
            }
        })
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'b Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: usize,
    #[serde(with = "rational_serde::vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            conductor: self.conductor(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(d)?;
        Cyclotomic::from_coeffs(repr.conductor, repr.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn z6(a: i64, b: i64) -> Cyclotomic {
        Cyclotomic::from_coeffs(6, vec![q(a), q(b)]).unwrap()
    }

    #[test]
    fn roots_of_unity_mod_phi6() {
        assert_eq!(Cyclotomic::root_of_unity(6, 0), Cyclotomic::one(6));
        assert_eq!(Cyclotomic::root_of_unity(6, 3), Cyclotomic::from_int(6, -1));
        assert_eq!(Cyclotomic::root_of_unity(6, 2), z6(-1, 1));
        assert_eq!(Cyclotomic::root_of_unity(6, -1), z6(1, -1));
    }

    #[test]
    fn conjugate_of_zeta6() {
        let zeta = Cyclotomic::root_of_unity(6, 1);
        assert_eq!(zeta.conjugate(), z6(1, -1));
        assert_eq!(zeta.conjugate(), Cyclotomic::root_of_unity(6, 5));
    }

    #[test]
    fn norm_of_paper_value() {
        let z = Cyclotomic::parse_eisenstein("39-9√-3").unwrap();
        assert_eq!(z, z6(48, -18));
        assert_eq!(&z * &z.conjugate(), Cyclotomic::from_int(6, 1764));
        assert_eq!(z.norm(), q(1764));
        assert_eq!(z.to_sqrt_minus3().unwrap(), "39-9√-3");
        assert_eq!(Cyclotomic::from_int(6, 42).to_sqrt_minus3().unwrap(), "42");
    }

    #[test]
    fn eisenstein_parser_forms() {
        let sqrt = Cyclotomic::parse_eisenstein("√-3").unwrap();
        assert_eq!(&sqrt * &sqrt, Cyclotomic::from_int(6, -3));
        assert_eq!(Cyclotomic::parse_eisenstein("-√−3").unwrap(), -&sqrt);
        let zeta = Cyclotomic::parse_eisenstein("1/2 + sqrt(-3)/2").unwrap();
        assert_eq!(zeta, Cyclotomic::root_of_unity(6, 1));
        assert_eq!(zeta.to_sqrt_minus3().unwrap(), "1/2+1/2√-3");
        assert!(Cyclotomic::parse_eisenstein("x").is_err());
    }

    #[test]
    fn identity_and_zero() {
        let z = z6(3, 5);
        assert_eq!(&z * &Cyclotomic::one(6), z);
        assert_eq!(&z + &Cyclotomic::zero(6), z);
        assert!((&z - &z).is_zero());
    }

    #[test]
    fn galois_examples() {
        let zeta = Cyclotomic::root_of_unity(6, 1);
        let id = GaloisAuto::new(6, 1).unwrap();
        assert_eq!(id.apply(&zeta).unwrap(), zeta);
        let s5 = GaloisAuto::new(6, 5).unwrap();
        assert_eq!(s5.apply(&zeta).unwrap(), Cyclotomic::root_of_unity(6, 5));
        assert!(matches!(
            GaloisAuto::new(6, 3),
            Err(Error::InvalidAutomorphism { conductor: 6, unit: 3 })
        ));
        // conductor 6 element acted on at conductor 30
        let s7 = GaloisAuto::new(30, 7).unwrap();
        assert_eq!(s7.apply(&zeta).unwrap(), zeta);
        let s11 = GaloisAuto::new(30, 11).unwrap();
        assert_eq!(s11.apply(&zeta).unwrap(), zeta.conjugate());
        // 30 does not divide 6
        assert!(GaloisAuto::new(6, 1)
            .unwrap()
            .apply(&Cyclotomic::root_of_unity(30, 1))
            .is_err());
    }

    #[test]
    fn lift_and_mixed_conductors() {
        let a = Cyclotomic::root_of_unity(6, 1);
        let b = Cyclotomic::root_of_unity(10, 1);
        let prod = &a * &b;
        assert_eq!(prod.conductor(), 30);
        assert_eq!(prod, Cyclotomic::root_of_unity(30, 5 + 3));
        assert!(matches!(a.lift(10), Err(Error::ConductorMismatch { from: 6, to: 10 })));
        assert_eq!(Cyclotomic::one(1), Cyclotomic::one(6));
        assert_eq!(Cyclotomic::root_of_unity(2, 1), Cyclotomic::from_int(12, -1));
    }

    #[test]
    fn descend_and_minimal_conductor() {
        let zeta6 = Cyclotomic::root_of_unity(6, 1).lift(30).unwrap();
        assert_eq!(zeta6.descend(6).unwrap(), Cyclotomic::root_of_unity(6, 1));
        assert_eq!(zeta6.minimal_conductor(), 3);
        assert!(Cyclotomic::root_of_unity(30, 1).descend(6).is_none());
        assert_eq!(Cyclotomic::from_int(30, 7).minimal_conductor(), 1);
    }

    #[test]
    fn inverse_and_division() {
        let z = z6(8, -3);
        let inv = z.inverse().unwrap();
        assert_eq!(&z * &inv, Cyclotomic::one(6));
        assert!(matches!(Cyclotomic::zero(5).inverse(), Err(Error::DivisionByZero)));
        let w = Cyclotomic::root_of_unity(5, 2);
        assert_eq!(z6(1, 1).checked_div(&w).unwrap() * w, z6(1, 1));
    }

    #[test]
    fn serde_shape() {
        let z = z6(48, -18);
        let text = serde_json::to_string(&z).unwrap();
        assert_eq!(text, r#"{"conductor":6,"coeffs":["48","-18"]}"#);
        let back: Cyclotomic = serde_json::from_str(&text).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"conductor":6,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(z6(48, -18).to_string(), "48 - 18*z6");
        assert_eq!(Cyclotomic::zero(5).to_string(), "0");
        assert_eq!(Cyclotomic::root_of_unity(5, 2).to_string(), "z5^2");
    }

    fn arb_cyclo(m: usize) -> impl Strategy<Value = Cyclotomic> {
        let d = totient(m);
        prop::collection::vec((-20i64..20, 1i64..5), d).prop_map(move |v| {
            let coeffs = v
                .into_iter()
                .map(|(n, den)| Rational::new(n.into(), den.into()))
                .collect();
            Cyclotomic::from_coeffs(m, coeffs).unwrap()
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
        prop::sample::select(vec![3usize, 4, 5, 6, 8, 9, 12, 15])
            .prop_flat_map(|m| (arb_cyclo(m), arb_cyclo(m), arb_cyclo(m)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), Cyclotomic::one(a.conductor()));
            }
        }

        #[test]
        fn conjugation_laws((a, _b, _c) in arb_triple()) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            let n = &a * &a.conjugate();
            prop_assert!(n.to_complex().im.abs() < 1e-9);
            prop_assert!(n.to_complex().re >= -1e-9);
        }

        #[test]
        fn galois_is_ring_hom((a, b, _c) in arb_triple(), pick in 0usize..100) {
            let m = a.conductor();
            let units = units_mod(m);
            let sigma = GaloisAuto::new(m, units[pick % units.len()] as i64).unwrap();
            let lhs = sigma.apply(&(&a * &b)).unwrap();
            let rhs = &sigma.apply(&a).unwrap() * &sigma.apply(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = sigma.apply(&(&a + &b)).unwrap();
            let rhs = &sigma.apply(&a).unwrap() + &sigma.apply(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
            // permutes primitive roots
            for k in units.iter() {
                let img = sigma.apply(&Cyclotomic::root_of_unity(m, *k as i64)).unwrap();
                let expected = Cyclotomic::root_of_unity(m, (*k * sigma.unit()) as i64);
                prop_assert_eq!(img, expected);
            }
        }

        #[test]
        fn complex_embedding_tracks_exact((a, b, c) in arb_triple()) {
            let exact = &(&a * &b) + &c;
            let approx = a.to_complex() * b.to_complex() + c.to_complex();
            let got = exact.to_complex();
            let scale = approx.norm().max(1.0);
            prop_assert!((got - approx).norm() / scale < 1e-10);
        }
    }
}
