//! Exact Fourier analysis on a finite abelian group.
//!
//! `f^(χ) = Σ_x f(x) conj(χ(x))` with no normalization; the inverse carries `1/|G|`.
//! Every spectrum value is stored in `Q(ζ_E)` with `E` the group exponent.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};

use crate::abelian::{Character, Element, Group};
use crate::error::{Error, Result};
use crate::exact::{rational_serde, units_mod, Cyclotomic, GaloisAuto, Rational};

/// A rational-valued function on a group, stored densely in canonical element order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SignalRepr")]
pub struct Signal {
    group: Group,
    #[serde(with = "rational_serde::vec")]
    values: Vec<Rational>,
}

#[derive(Deserialize)]
struct SignalRepr {
    group: Group,
    #[serde(with = "rational_serde::vec")]
    values: Vec<Rational>,
}

impl TryFrom<SignalRepr> for Signal {
    type Error = Error;
    fn try_from(repr: SignalRepr) -> Result<Self> {
        Signal::new(repr.group, repr.values)
    }
}

impl Signal {
    pub fn new(group: Group, values: Vec<Rational>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidGroup(format!(
                "signal has {} values but {} has order {}",
                values.len(),
                group,
                group.order()
            )));
        }
        Ok(Self { group, values })
    }

    pub fn from_ints(group: Group, values: &[i64]) -> Result<Self> {
        Self::new(
            group,
            values.iter().map(|&v| Rational::from_integer(v.into())).collect(),
        )
    }

    pub fn zeros(group: Group) -> Self {
        let values = vec![Rational::zero(); group.order()];
        Self { group, values }
    }

    /// Indicator of the identity element.
    pub fn delta(group: Group) -> Self {
        let mut s = Self::zeros(group);
        s.values[0] = Rational::one();
        s
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: &Element) -> &Rational {
        &self.values[self.group.index_of(x.coords())]
    }

    /// `x ↦ f(x + a)`.
    pub fn shift(&self, a: &Element) -> Self {
        let values = self
            .group
            .elements()
            .map(|x| self.value(&self.group.add(&x, a)).clone())
            .collect();
        Self { group: self.group.clone(), values }
    }

    /// `x ↦ f(-x)`.
    pub fn reflect(&self) -> Self {
        let values = self
            .group
            .elements()
            .map(|x| self.value(&self.group.neg(&x)).clone())
            .collect();
        Self { group: self.group.clone(), values }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Least common multiple of the value denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.values
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.to_integers()?.iter().map(|v| v.to_i64()).collect()
    }
}

/// A function on the dual group with values in `Q(ζ_E)`, indexed like [`Group::character`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    group: Group,
    values: Vec<Cyclotomic>,
}

impl Spectrum {
    pub fn zeros(group: Group) -> Self {
        let e = group.exponent();
        let values = vec![Cyclotomic::zero(e); group.order()];
        Self { group, values }
    }

    /// Values are lifted to conductor `E`; each must live in a subfield of `Q(ζ_E)`.
    pub fn new(group: Group, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidGroup(format!(
                "spectrum has {} values but {} has order {}",
                values.len(),
                group,
                group.order()
            )));
        }
        let e = group.exponent();
        let values = values
            .into_iter()
            .map(|v| v.lift(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { group, values })
    }

    /// Sparse construction; unspecified characters map to zero.
    pub fn from_entries(
        group: Group,
        entries: impl IntoIterator<Item = (Character, Cyclotomic)>,
    ) -> Result<Self> {
        let mut spec = Self::zeros(group);
        for (chi, value) in entries {
            spec.set(&chi, value)?;
        }
        Ok(spec)
    }

    pub fn set(&mut self, chi: &Character, value: Cyclotomic) -> Result<()> {
        self.group.check_coords(chi.coords())?;
        let i = self.group.index_of(chi.coords());
        self.values[i] = value.lift(self.group.exponent())?;
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn get(&self, chi: &Character) -> &Cyclotomic {
        &self.values[self.group.index_of(chi.coords())]
    }

    pub fn at(&self, index: usize) -> &Cyclotomic {
        &self.values[index]
    }

    pub fn support(&self) -> BTreeSet<Character> {
        support(self)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            group: &'a Group,
            values: Entries<'a>,
        }
        struct Entries<'a>(&'a Spectrum);
        impl Serialize for Entries<'_> {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let spec = self.0;
                let mut map = s.serialize_map(Some(spec.values.len()))?;
                for (i, v) in spec.values.iter().enumerate() {
                    map.serialize_entry(&coord_key(&spec.group.coords_of(i)), v)?;
                }
                map.end()
            }
        }
        Repr { group: &self.group, values: Entries(self) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            group: Group,
            values: BTreeMap<String, Cyclotomic>,
        }
        let repr = Repr::deserialize(d)?;
        let mut entries = Vec::with_capacity(repr.values.len());
        for (key, value) in repr.values {
            let coords = parse_coord_key(&key).map_err(D::Error::custom)?;
            let coords = repr.group.reduce_coords(&coords).map_err(D::Error::custom)?;
            entries.push((Character(coords), value));
        }
        Spectrum::from_entries(repr.group, entries).map_err(D::Error::custom)
    }
}

pub(crate) fn coord_key(coords: &[usize]) -> String {
    coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_coord_key(key: &str) -> Result<Vec<i64>> {
    key.split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad coordinate list {key:?}")))
        })
        .collect()
}

/// Exact forward transform.
pub fn fourier(f: &Signal) -> Spectrum {
    let group = f.group().clone();
    let n = group.order();
    let e = group.exponent();
    let table = group.pairing_table();
    let values = (0..n)
        .into_par_iter()
        .map(|chi| {
            let mut power = vec![Rational::zero(); e];
            for (x, v) in f.values().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let p = table[chi * n + x];
                power[(e - p) % e] += v;
            }
            Cyclotomic::from_power_coeffs(e, &power)
        })
        .collect();
    Spectrum { group, values }
}

/// Result of inverting a spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inverse {
    Rational(Signal),
    /// The first element (in canonical order) whose value is not rational.
    NonRational {
        element: Element,
        value: Cyclotomic,
        values: Vec<Cyclotomic>,
    },
}

impl Inverse {
    pub fn into_signal(self) -> Option<Signal> {
        match self {
            Inverse::Rational(s) => Some(s),
            Inverse::NonRational { .. } => None,
        }
    }
}

/// Exact inverse transform `f(x) = (1/|G|) Σ_χ F(χ) χ(x)`.
pub fn inverse_fourier(spec: &Spectrum) -> Inverse {
    let group = spec.group().clone();
    let n = group.order();
    let e = group.exponent();
    let table = group.pairing_table();
    let scale = Rational::new(BigInt::one(), BigInt::from(n));
    let values: Vec<Cyclotomic> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut power = vec![Rational::zero(); e];
            for (chi, value) in spec.values.iter().enumerate() {
                if value.is_zero() {
                    continue;
                }
                let p = table[chi * n + x];
                for (j, c) in value.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        power[(j + p) % e] += c;
                    }
                }
            }
            Cyclotomic::from_power_coeffs(e, &power).scale(&scale)
        })
        .collect();
    if let Some(bad) = values.iter().position(|v| !v.is_rational()) {
        return Inverse::NonRational {
            element: group.element(bad),
            value: values[bad].clone(),
            values,
        };
    }
    let rational = values.iter().map(|v| v.coeffs()[0].clone()).collect();
    Inverse::Rational(Signal { group, values: rational })
}

/// Characters with a nonzero value, in canonical order.
pub fn support(spec: &Spectrum) -> BTreeSet<Character> {
    spec.values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| spec.group.character(i))
        .collect()
}

/// Why a spectrum failed the Galois test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `F(e)` is not in `Q(ζ_M)`, `M` the order of `e`.
    NotInField,
    /// `σ_u(F(e)) ≠ F(e^u)` for a unit `u`.
    OrbitMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub character: Character,
    pub character_order: usize,
    /// The unit modulo the group exponent.
    pub unit: usize,
    /// The same unit reduced modulo the character order.
    pub unit_mod_order: usize,
    pub kind: ViolationKind,
    /// `σ_u(F(e))`.
    pub expected: Cyclotomic,
    /// `F(e^u)`.
    pub found: Cyclotomic,
}

/// Outcome of [`rationality_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "UPPERCASE")]
pub enum Certificate {
    Pass { checks: usize },
    Fail(Box<Violation>),
}

impl Certificate {
    pub fn passed(&self) -> bool {
        matches!(self, Certificate::Pass { .. })
    }
}

/// Tests `σ_u(F(e)) = F(e^u)` for every character `e` and every unit `u` of `Z_E`.
///
/// A unit with `u ≡ 1 (mod |e|)` fixes `e`, so those checks are exactly membership of `F(e)` in
/// `Q(ζ_{|e|})`; the remaining units cover all of `Z_{|e|}^×`. Passing is equivalent to the
/// inverse transform being rational.
pub fn rationality_check(spec: &Spectrum) -> Certificate {
    let group = spec.group();
    let e = group.exponent();
    let units = units_mod(e);
    let mut checks = 0;
    for (i, value) in spec.values.iter().enumerate() {
        let chi = group.character(i);
        let order = group.char_order(&chi);
        for &u in &units {
            checks += 1;
            let sigma = GaloisAuto::new(e, u as i64).expect("unit");
            let image = sigma.apply(value).expect("conductor E");
            let target = group.char_pow(&chi, u as i64);
            let found = spec.get(&target);
            if image != *found {
                let kind = if target == chi {
                    ViolationKind::NotInField
                } else {
                    ViolationKind::OrbitMismatch
                };
                return Certificate::Fail(Box::new(Violation {
                    character: chi,
                    character_order: order,
                    unit: u,
                    unit_mod_order: u % order,
                    kind,
                    expected: image,
                    found: found.clone(),
                }));
            }
        }
    }
    Certificate::Pass { checks }
}

/// Whether the support is a union of Galois orbits `{e^u : u ∈ Z_|e|^×}`.
///
/// Only meaningful for transforms of rational signals, which are rejected otherwise.
pub fn orbit_vanishing_check(spec: &Spectrum) -> Result<bool> {
    if !rationality_check(spec).passed() {
        return Err(Error::NotRational);
    }
    Ok(support_is_orbit_closed(spec.group(), &spec.support()))
}

pub(crate) fn support_is_orbit_closed(group: &Group, set: &BTreeSet<Character>) -> bool {
    let units = units_mod(group.exponent());
    set.iter()
        .all(|chi| units.iter().all(|&u| set.contains(&group.char_pow(chi, u as i64))))
}
