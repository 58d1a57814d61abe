//! Finite abelian groups `Z_{N_1} x ... x Z_{N_r}`, their elements and dual characters.
//!
//! The dual group is identified with the group itself: the character with coordinates
//! `(k_1, ..., k_r)` sends `x` to `exp(2πi Σ k_i x_i / N_i)`. Every other module goes
//! through [`Group::pairing`] for this convention.
//!
//! Elements and characters are also addressed by their row-major index (last coordinate
//! fastest), which coincides with lexicographic order on coordinates. The engines work on
//! indices; the coordinate newtypes are for the public surface.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian group given as an ordered list of cyclic factor moduli.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    factors: Vec<usize>,
    order: usize,
    exponent: usize,
    invariant_factors: Vec<usize>,
}

/// An element of a [`Group`], as residues `coords[i] ∈ [0, N_i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub Vec<usize>);

/// A character of a [`Group`], with the same coordinate representation as [`Element`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<usize>);

impl Element {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl Character {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

fn fmt_coords(f: &mut fmt::Formatter<'_>, coords: &[usize]) -> fmt::Result {
    if coords.len() == 1 {
        return write!(f, "{}", coords[0]);
    }
    write!(f, "(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(f, &self.0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_")?;
        fmt_coords(f, &self.0)
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_s` of a diagonal factor list, by pairwise gcd/lcm merging.
pub fn invariant_factors(factors: &[usize]) -> Vec<usize> {
    let mut chain: Vec<usize> = factors.iter().copied().filter(|&n| n > 1).collect();
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            let (a, b) = (chain[i], chain[j]);
            chain[i] = a.gcd(&b);
            chain[j] = a.lcm(&b);
        }
    }
    chain.retain(|&d| d > 1);
    chain
}

impl Group {
    /// Builds a group from its cyclic factor moduli. The empty list is the trivial group.
    pub fn new(factors: &[usize]) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidGroup(format!("modulus {bad} must be at least 1")));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        let exponent = factors.iter().fold(1usize, |acc, &n| acc.lcm(&n));
        Ok(Self {
            factors: factors.to_vec(),
            order,
            exponent,
            invariant_factors: invariant_factors(factors),
        })
    }

    /// Parses moduli from signed integers, rejecting non-positive values.
    pub fn from_signed(factors: &[i64]) -> Result<Self> {
        let mut moduli = Vec::with_capacity(factors.len());
        for &n in factors {
            if n < 1 {
                return Err(Error::InvalidGroup(format!("modulus {n} must be at least 1")));
            }
            moduli.push(n as usize);
        }
        Self::new(&moduli)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn invariant_factors(&self) -> &[usize] {
        &self.invariant_factors
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn check_coords(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.factors.len()
            || coords.iter().zip(&self.factors).any(|(&c, &n)| c >= n)
        {
            return Err(Error::InvalidCoords {
                coords: coords.to_vec(),
                factors: self.factors.clone(),
            });
        }
        Ok(())
    }

    /// Reduces arbitrary integer coordinates into range.
    pub fn reduce_coords(&self, coords: &[i64]) -> Result<Vec<usize>> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidCoords {
                coords: coords.iter().map(|&c| c.unsigned_abs() as usize).collect(),
                factors: self.factors.clone(),
            });
        }
        Ok(coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as usize)
            .collect())
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, &n)| acc * n + c)
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.factors.len()];
        for (slot, &n) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = index % n;
            index /= n;
        }
        coords
    }

    pub fn element(&self, index: usize) -> Element {
        Element(self.coords_of(index))
    }

    pub fn character(&self, index: usize) -> Character {
        Character(self.coords_of(index))
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    /// Elements in canonical (row-major) order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    /// Characters in canonical order.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order).map(|i| self.character(i))
    }

    fn combine(&self, a: &[usize], b: &[usize], sign: i64) -> Vec<usize> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &n)| {
                let n = n as i64;
                (x as i64 + sign * y as i64).rem_euclid(n) as usize
            })
            .collect()
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element(self.combine(&a.0, &b.0, 1))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element(self.combine(&a.0, &b.0, -1))
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.sub(&self.identity(), a)
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(self.combine(&a.0, &b.0, 1))
    }

    pub fn char_inv(&self, a: &Character) -> Character {
        Character(self.combine(&vec![0; self.rank()], &a.0, -1))
    }

    /// `χ^u`; negative powers go through the inverse.
    pub fn char_pow(&self, a: &Character, u: i64) -> Character {
        Character(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&k, &n)| {
                    let n = n as i128;
                    ((k as i128 * u as i128).rem_euclid(n)) as usize
                })
                .collect(),
        )
    }

    /// Exponent `p` with `χ(x) = ζ_E^p`, `E` the group exponent.
    pub fn pairing(&self, chi: &Character, x: &Element) -> usize {
        self.pairing_coords(&chi.0, &x.0)
    }

    fn pairing_coords(&self, k: &[usize], x: &[usize]) -> usize {
        let e = self.exponent;
        k.iter()
            .zip(x)
            .zip(&self.factors)
            .fold(0usize, |acc, ((&ki, &xi), &n)| {
                let term = ((ki * xi) % n) * (e / n);
                (acc + term) % e
            })
    }

    /// The full `|G| x |G|` table of pairing exponents, indexed `[χ * |G| + x]`.
    pub fn pairing_table(&self) -> Vec<usize> {
        let coords: Vec<Vec<usize>> = (0..self.order).map(|i| self.coords_of(i)).collect();
        let mut table = Vec::with_capacity(self.order * self.order);
        for k in &coords {
            for x in &coords {
                table.push(self.pairing_coords(k, x));
            }
        }
        table
    }

    /// Smallest `M >= 1` with `χ^M` trivial.
    pub fn char_order(&self, chi: &Character) -> usize {
        chi.0
            .iter()
            .zip(&self.factors)
            .fold(1usize, |acc, (&k, &n)| acc.lcm(&(n / k.gcd(&n))))
    }

    pub fn element_order(&self, x: &Element) -> usize {
        self.char_order(&Character(x.0.clone()))
    }

    pub fn addition_table(&self) -> AdditionTable {
        AdditionTable::new(self)
    }

    /// Closure of `S ∪ S⁻¹ ∪ {1}` under multiplication.
    pub fn subgroup_generated(&self, set: &BTreeSet<Character>) -> BTreeSet<Character> {
        let table = self.addition_table();
        let idx = self.indices(set);
        let mask = table.generated(&idx);
        self.mask_to_set(&mask)
    }

    /// Products of exactly `v` elements of `S`, repeats allowed. `v = 0` gives `{1}`.
    pub fn product_power_set(&self, set: &BTreeSet<Character>, v: usize) -> BTreeSet<Character> {
        let table = self.addition_table();
        let idx = self.indices(set);
        let mut layer = vec![false; self.order];
        layer[0] = true;
        for _ in 0..v {
            layer = table.sumset(&layer, &idx);
        }
        self.mask_to_set(&layer)
    }

    pub(crate) fn indices(&self, set: &BTreeSet<Character>) -> Vec<usize> {
        set.iter().map(|c| self.index_of(&c.0)).collect()
    }

    pub(crate) fn mask_to_set(&self, mask: &[bool]) -> BTreeSet<Character> {
        mask.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.character(i))
            .collect()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z_1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}

impl Serialize for Group {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Group {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(d)?;
        Group::from_signed(&raw).map_err(serde::de::Error::custom)
    }
}

/// Precomputed index arithmetic for hot loops.
#[derive(Clone, Debug)]
pub struct AdditionTable {
    order: usize,
    sum: Vec<usize>,
    neg: Vec<usize>,
}

impl AdditionTable {
    fn new(group: &Group) -> Self {
        let n = group.order();
        let coords: Vec<Vec<usize>> = (0..n).map(|i| group.coords_of(i)).collect();
        let mut sum = Vec::with_capacity(n * n);
        for a in &coords {
            for b in &coords {
                sum.push(group.index_of(&group.combine(a, b, 1)));
            }
        }
        let neg = (0..n).map(|a| (0..n).find(|&b| sum[a * n + b] == 0).unwrap()).collect();
        Self { order: n, sum, neg }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    /// `{a + s : a ∈ layer, s ∈ set}` as a membership mask.
    pub fn sumset(&self, layer: &[bool], set: &[usize]) -> Vec<bool> {
        let mut out = vec![false; self.order];
        for (a, _) in layer.iter().enumerate().filter(|(_, &m)| m) {
            for &s in set {
                out[self.add(a, s)] = true;
            }
        }
        out
    }

    /// Membership mask of the subgroup generated by `set`.
    pub fn generated(&self, set: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut frontier = vec![0usize];
        let mut gens: Vec<usize> = set.to_vec();
        gens.extend(set.iter().map(|&s| self.neg(s)));
        while let Some(a) = frontier.pop() {
            for &s in &gens {
                let b = self.add(a, s);
                if !mask[b] {
                    mask[b] = true;
                    frontier.push(b);
                }
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chars(g: &Group, ks: &[usize]) -> BTreeSet<Character> {
        ks.iter().map(|&k| g.character(k)).collect()
    }

    #[test]
    fn make_group_examples() {
        let g = Group::new(&[6]).unwrap();
        assert_eq!((g.order(), g.exponent()), (6, 6));
        assert_eq!(g.invariant_factors(), &[6]);

        let g = Group::new(&[2, 2]).unwrap();
        assert_eq!((g.order(), g.exponent()), (4, 2));
        assert_eq!(g.invariant_factors(), &[2, 2]);

        assert_eq!(Group::new(&[3, 6]).unwrap().invariant_factors(), &[3, 6]);
        assert_eq!(Group::new(&[6, 3]).unwrap().invariant_factors(), &[3, 6]);
        assert_eq!(Group::new(&[2, 3]).unwrap().invariant_factors(), &[6]);
        assert_eq!(Group::new(&[4, 6, 10]).unwrap().invariant_factors(), &[2, 2, 60]);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(Group::new(&[6, 0]), Err(Error::InvalidGroup(_))));
        assert!(matches!(Group::from_signed(&[-3]), Err(Error::InvalidGroup(_))));
        let parsed: std::result::Result<Group, _> = serde_json::from_str("[2, 0]");
        assert!(parsed.is_err());
        let g: Group = serde_json::from_str("[2,6]").unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), "[2,6]");
    }

    #[test]
    fn char_order_examples() {
        let g = Group::cyclic(6).unwrap();
        assert_eq!(g.char_order(&Character(vec![1])), 6);
        assert_eq!(g.char_order(&Character(vec![0])), 1);
        let g30 = Group::cyclic(30).unwrap();
        assert_eq!(g30.char_order(&Character(vec![19])), 30);
        let g26 = Group::new(&[2, 6]).unwrap();
        assert_eq!(g26.char_order(&Character(vec![1, 2])), 6);
        assert_eq!(g26.char_order(&Character(vec![1, 3])), 2);
    }

    #[test]
    fn pairing_convention() {
        let g = Group::new(&[2, 4]).unwrap();
        // exponent 4: (1,1) paired with (1,1) is 1*2 + 1*1 = 3
        assert_eq!(g.pairing(&Character(vec![1, 1]), &Element(vec![1, 1])), 3);
        assert_eq!(g.pairing(&Character(vec![1, 0]), &Element(vec![1, 3])), 2);
    }

    #[test]
    fn subgroup_generated_examples() {
        let g = Group::cyclic(6).unwrap();
        assert_eq!(g.subgroup_generated(&chars(&g, &[1])).len(), 6);
        assert_eq!(g.subgroup_generated(&chars(&g, &[2])), chars(&g, &[0, 2, 4]));
        let g30 = Group::cyclic(30).unwrap();
        assert_eq!(g30.subgroup_generated(&chars(&g30, &[3, 5])).len(), 30);
    }

    #[test]
    fn product_power_set_examples() {
        let g = Group::cyclic(6).unwrap();
        let s = chars(&g, &[1, 5]);
        assert_eq!(g.product_power_set(&s, 2), chars(&g, &[0, 2, 4]));
        assert_eq!(g.product_power_set(&s, 1), s);
        let g5 = Group::cyclic(5).unwrap();
        assert_eq!(g5.product_power_set(&chars(&g5, &[1, 2, 3, 4]), 2).len(), 5);
    }

    fn arb_group() -> impl Strategy<Value = Group> {
        prop::collection::vec(1usize..8, 1..4).prop_map(|f| Group::new(&f).unwrap())
    }

    fn arb_group_and_set() -> impl Strategy<Value = (Group, BTreeSet<Character>)> {
        arb_group().prop_flat_map(|g| {
            let n = g.order();
            (Just(g), prop::collection::btree_set(0..n, 1..4))
        })
        .prop_map(|(g, idx)| {
            let set = idx.into_iter().map(|i| g.character(i)).collect();
            (g, set)
        })
    }

    proptest! {
        #[test]
        fn invariant_factor_chain(factors in prop::collection::vec(1usize..40, 0..5)) {
            let g = Group::new(&factors).unwrap();
            prop_assume!(g.order() <= 10_000);
            let inv = g.invariant_factors();
            prop_assert_eq!(inv.iter().product::<usize>(), g.order());
            for w in inv.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert_eq!(inv.last().copied().unwrap_or(1), g.exponent());
            prop_assert_eq!(g.order() % g.exponent(), 0);
        }

        #[test]
        fn padding_with_inverse_pairs((g, s) in arb_group_and_set(), v in 1usize..4) {
            let mut closed = s.clone();
            closed.extend(s.iter().map(|c| g.char_inv(c)));
            let small = g.product_power_set(&closed, v);
            let big = g.product_power_set(&closed, v + 2);
            prop_assert!(small.is_subset(&big));
        }

        #[test]
        fn generated_is_union_of_powers((g, s) in arb_group_and_set()) {
            let mut closed = s.clone();
            closed.extend(s.iter().map(|c| g.char_inv(c)));
            let mut union = BTreeSet::new();
            for v in 1..=g.order() {
                union.extend(g.product_power_set(&closed, v));
            }
            prop_assert_eq!(union, g.subgroup_generated(&s));
        }

        #[test]
        fn char_pow_order((g, s) in arb_group_and_set()) {
            for c in &s {
                let m = g.char_order(c);
                prop_assert_eq!(g.char_pow(c, m as i64), g.trivial_character());
                for d in 1..m {
                    prop_assert_ne!(g.char_pow(c, d as i64), g.trivial_character());
                }
            }
        }
    }
}
