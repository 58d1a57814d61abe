//! Higher-order autocorrelations, computed directly and on the Fourier side.
//!
//! `ρ_n(f)(t_1, ..., t_{n-1}) = Σ_x f(x) f(x+t_1) ... f(x+t_{n-1})`, and on the Fourier side
//! `ρ^_n(f)(χ_1, ..., χ_n) = f^(χ_1) ... f^(χ_n)` for characters whose product is trivial.
//! `ρ_1` is the scalar `Σ_x f(x)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{AdditionTable, Character, Element, Group};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Cyclotomic, Rational};
use crate::spectral::{fourier, Signal, Spectrum};

/// Default cap on the number of direct-tensor entries.
pub const DEFAULT_MEM_CAP: u128 = 100_000_000;

/// Witness tuples kept for the first order of disagreement.
pub const WITNESS_CAP: usize = 256;

/// A dense `ρ_n` tensor indexed by `(n-1)`-tuples of elements in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutocorrTensor {
    order: usize,
    group: Group,
    values: Vec<Rational>,
}

impl AutocorrTensor {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn flat_index(&self, shifts: &[usize]) -> usize {
        let n = self.group.order();
        shifts.iter().fold(0, |acc, &t| acc * n + t)
    }

    /// Value at a tuple of element indices.
    pub fn at(&self, shifts: &[usize]) -> &Rational {
        assert_eq!(shifts.len() + 1, self.order, "tuple length must be n - 1");
        &self.values[self.flat_index(shifts)]
    }

    pub fn get(&self, shifts: &[Element]) -> &Rational {
        let idx: Vec<usize> = shifts.iter().map(|t| self.group.index_of(t.coords())).collect();
        self.at(&idx)
    }

    /// Shift tuples (as element index lists) in storage order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let n = self.group.order();
        let k = self.order - 1;
        (0..self.values.len()).map(move |mut flat| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = flat % n;
                flat /= n;
            }
            t
        })
    }
}

#[derive(Serialize)]
struct TensorEntry {
    t: Vec<Element>,
    value: String,
}

impl Serialize for AutocorrTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        #[derive(Serialize)]
        struct Repr<'a> {
            order: usize,
            group: &'a Group,
            entries: Vec<TensorEntry>,
        }
        if self.order > 3 {
            return Err(S::Error::custom("tensor export is limited to orders up to 3"));
        }
        let entries = self
            .tuples()
            .zip(&self.values)
            .map(|(t, v)| TensorEntry {
                t: t.iter().map(|&i| self.group.element(i)).collect(),
                value: format_rational(v),
            })
            .collect();
        Repr { order: self.order, group: &self.group, entries }.serialize(s)
    }
}

/// Number of entries in a direct `ρ_n` tensor.
pub fn tensor_entries(group: &Group, order: usize) -> u128 {
    (group.order() as u128).saturating_pow(order.saturating_sub(1) as u32)
}

/// Direct evaluation of `ρ_n(f)` over all shift tuples.
pub fn autocorr_direct(f: &Signal, order: usize) -> Result<AutocorrTensor> {
    autocorr_direct_capped(f, order, DEFAULT_MEM_CAP)
}

pub fn autocorr_direct_capped(f: &Signal, order: usize, cap: u128) -> Result<AutocorrTensor> {
    if order == 0 {
        return Err(Error::InvalidOrder);
    }
    let group = f.group().clone();
    let entries = tensor_entries(&group, order);
    if entries > cap {
        return Err(Error::MemoryCap { entries, cap });
    }
    let (ints, denom) = integer_scaling(f);
    let table = group.addition_table();
    let n = group.order();
    let k = order - 1;
    let raw: Vec<BigInt> = match small_ints(&ints, n, order) {
        Some(small) => (0..entries as usize)
            .into_par_iter()
            .map(|flat| BigInt::from(entry_i128(&small, &table, &decode(flat, n, k))))
            .collect(),
        None => (0..entries as usize)
            .into_par_iter()
            .map(|flat| entry_big(&ints, &table, &decode(flat, n, k)))
            .collect(),
    };
    let scale = num_traits::pow(denom, order);
    let values = raw
        .into_iter()
        .map(|v| Rational::new(v, scale.clone()))
        .collect();
    Ok(AutocorrTensor { order, group, values })
}

fn decode(mut flat: usize, n: usize, k: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = flat % n;
        flat /= n;
    }
    t
}

/// `f = h / D` with `h` integral.
pub(crate) fn integer_scaling(f: &Signal) -> (Vec<BigInt>, BigInt) {
    let denom = f.denominator_lcm();
    let ints = f
        .values()
        .iter()
        .map(|v| (v * Rational::from_integer(denom.clone())).to_integer())
        .collect();
    (ints, denom)
}

/// The values as `i128` when `|G| · max|h|^n` stays well inside range.
fn small_ints(ints: &[BigInt], group_order: usize, order: usize) -> Option<Vec<i128>> {
    let max_bits = ints.iter().map(|v| v.abs().bits()).max().unwrap_or(0);
    let bound = max_bits * order as u64 + (group_order as f64).log2().ceil() as u64;
    if bound >= 120 {
        return None;
    }
    ints.iter().map(|v| v.to_i128()).collect()
}

#[inline]
pub(crate) fn entry_i128(h: &[i128], table: &AdditionTable, shifts: &[usize]) -> i128 {
    let mut total = 0i128;
    for (x, &hx) in h.iter().enumerate() {
        if hx == 0 {
            continue;
        }
        let mut prod = hx;
        for &t in shifts {
            prod *= h[table.add(x, t)];
            if prod == 0 {
                break;
            }
        }
        total += prod;
    }
    total
}

fn entry_big(h: &[BigInt], table: &AdditionTable, shifts: &[usize]) -> BigInt {
    let mut total = BigInt::zero();
    for (x, hx) in h.iter().enumerate() {
        if hx.is_zero() {
            continue;
        }
        let mut prod = hx.clone();
        for &t in shifts {
            prod *= &h[table.add(x, t)];
        }
        total += prod;
    }
    total
}

/// `n` characters whose product is the trivial character.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct IdentityTuple(Vec<Character>);

impl IdentityTuple {
    pub fn new(group: &Group, chars: Vec<Character>) -> Result<Self> {
        for c in &chars {
            group.check_coords(c.coords())?;
        }
        let product = chars
            .iter()
            .fold(group.trivial_character(), |acc, c| group.char_mul(&acc, c));
        if product != group.trivial_character() || chars.is_empty() {
            return Err(Error::InvalidTuple(chars.into_iter().map(|c| c.0).collect()));
        }
        Ok(Self(chars))
    }

    pub fn characters(&self) -> &[Character] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `ρ^_n(f)` at an identity tuple: the product of the spectrum values.
pub fn autocorr_fourier(spec: &Spectrum, tuple: &[Character]) -> Result<Cyclotomic> {
    let tuple = IdentityTuple::new(spec.group(), tuple.to_vec())?;
    Ok(tuple
        .characters()
        .iter()
        .fold(Cyclotomic::one(spec.group().exponent()), |acc, c| {
            &acc * spec.get(c)
        }))
}

/// Enumerates non-decreasing index tuples of length `n` from `members` summing to the identity.
///
/// The last entry is determined by the others, so only `n - 1` positions are iterated.
pub(crate) struct TupleIndices<'a> {
    table: &'a AdditionTable,
    members: Vec<usize>,
    position: Vec<Option<usize>>,
    state: Vec<usize>,
    done: bool,
}

impl<'a> TupleIndices<'a> {
    pub(crate) fn new(table: &'a AdditionTable, members: &[usize], n: usize) -> Self {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut position = vec![None; table.order()];
        for (p, &m) in members.iter().enumerate() {
            position[m] = Some(p);
        }
        let done = n == 0 || members.is_empty();
        Self {
            table,
            members,
            position,
            state: vec![0; n.saturating_sub(1)],
            done,
        }
    }

    fn advance(&mut self) {
        let m = self.members.len();
        match self.state.iter().rposition(|&p| p + 1 < m) {
            Some(i) => {
                let next = self.state[i] + 1;
                for slot in &mut self.state[i..] {
                    *slot = next;
                }
            }
            None => self.done = true,
        }
    }
}

impl Iterator for TupleIndices<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while !self.done {
            let sum = self
                .state
                .iter()
                .fold(0, |acc, &p| self.table.add(acc, self.members[p]));
            let need = self.table.neg(sum);
            let floor = self.state.last().copied().unwrap_or(0);
            let candidate = match self.position[need] {
                Some(p) if p >= floor => {
                    let mut t: Vec<usize> = self.state.iter().map(|&p| self.members[p]).collect();
                    t.push(self.members[p]);
                    Some(t)
                }
                _ => None,
            };
            self.advance();
            if candidate.is_some() {
                return candidate;
            }
        }
        None
    }
}

/// Multisets of `n` characters from `restrict` (default: the full dual) with trivial product,
/// each listed once as a non-decreasing tuple in canonical order.
pub fn identity_tuples(
    group: &Group,
    n: usize,
    restrict: Option<&BTreeSet<Character>>,
) -> Vec<IdentityTuple> {
    let table = group.addition_table();
    let members: Vec<usize> = match restrict {
        Some(set) => set.iter().map(|c| group.index_of(c.coords())).collect(),
        None => (0..group.order()).collect(),
    };
    TupleIndices::new(&table, &members, n)
        .map(|t| IdentityTuple(t.into_iter().map(|i| group.character(i)).collect()))
        .collect()
}

/// Per-order verdict inside a [`CompareReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderVerdict {
    pub order: usize,
    pub equal: bool,
    /// First differing tuple in canonical order.
    pub witness: Option<Vec<Character>>,
    pub tuples_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub group: Group,
    pub max_order: usize,
    pub orders: Vec<OrderVerdict>,
    pub first_difference: Option<usize>,
    /// Differing tuples at the first differing order, canonical order, at most [`WITNESS_CAP`].
    pub witnesses: Vec<Vec<Character>>,
    pub translate_offset: Option<Element>,
    pub summary: String,
}

impl CompareReport {
    pub fn all_equal(&self) -> bool {
        self.first_difference.is_none()
    }

    pub fn equal_at(&self, order: usize) -> Option<bool> {
        self.orders.iter().find(|v| v.order == order).map(|v| v.equal)
    }

    /// Orders `1..=k` all agree.
    pub fn equal_through(&self, k: usize) -> bool {
        self.orders.iter().filter(|v| v.order <= k).all(|v| v.equal)
    }
}

fn format_ranges(orders: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < orders.len() {
        let start = orders[i];
        let mut end = start;
        while i + 1 < orders.len() && orders[i + 1] == end + 1 {
            i += 1;
            end = orders[i];
        }
        parts.push(if start == end {
            start.to_string()
        } else {
            format!("{start}-{end}")
        });
        i += 1;
    }
    parts.join(",")
}

fn summarize(orders: &[OrderVerdict]) -> String {
    let equal: Vec<usize> = orders.iter().filter(|v| v.equal).map(|v| v.order).collect();
    let differ: Vec<usize> = orders.iter().filter(|v| !v.equal).map(|v| v.order).collect();
    let mut parts = Vec::new();
    if !equal.is_empty() {
        parts.push(format!("equal:{}", format_ranges(&equal)));
    }
    if !differ.is_empty() {
        parts.push(format!("differ:{}", format_ranges(&differ)));
    }
    parts.join(", ")
}

/// Decides `ρ_n(f) = ρ_n(g)` for `n = 1..=max_order` on the Fourier side.
///
/// Tuples containing a character outside both supports vanish for both signals, so only
/// identity tuples drawn from the union of the supports are compared.
pub fn equal_through_order(f: &Signal, g: &Signal, max_order: usize) -> Result<CompareReport> {
    if f.group() != g.group() {
        return Err(Error::GroupMismatch(
            f.group().factors().to_vec(),
            g.group().factors().to_vec(),
        ));
    }
    if max_order == 0 {
        return Err(Error::InvalidOrder);
    }
    let group = f.group().clone();
    let (sf, sg) = (fourier(f), fourier(g));
    let mut union: Vec<usize> = (0..group.order())
        .filter(|&i| !sf.at(i).is_zero() || !sg.at(i).is_zero())
        .collect();
    union.sort_unstable();
    let table = group.addition_table();

    let mut orders = Vec::with_capacity(max_order);
    let mut witnesses = Vec::new();
    for n in 1..=max_order {
        let tuples: Vec<Vec<usize>> = TupleIndices::new(&table, &union, n).collect();
        let differs: Vec<bool> = tuples
            .par_iter()
            .map(|t| product(&sf, t) != product(&sg, t))
            .collect();
        let to_chars = |t: &Vec<usize>| t.iter().map(|&i| group.character(i)).collect::<Vec<_>>();
        let witness = differs.iter().position(|&d| d).map(|i| to_chars(&tuples[i]));
        if witness.is_some() && witnesses.is_empty() {
            witnesses = tuples
                .iter()
                .zip(&differs)
                .filter(|(_, &d)| d)
                .take(WITNESS_CAP)
                .map(|(t, _)| to_chars(t))
                .collect();
        }
        orders.push(OrderVerdict {
            order: n,
            equal: witness.is_none(),
            witness,
            tuples_checked: tuples.len(),
        });
    }
    let first_difference = orders.iter().find(|v| !v.equal).map(|v| v.order);
    let translate_offset = if first_difference.is_none() {
        is_translate(f, g)
    } else {
        None
    };
    let summary = summarize(&orders);
    Ok(CompareReport {
        group,
        max_order,
        orders,
        first_difference,
        witnesses,
        translate_offset,
        summary,
    })
}

fn product(spec: &Spectrum, tuple: &[usize]) -> Cyclotomic {
    let mut iter = tuple.iter();
    let first = spec.at(*iter.next().expect("non-empty tuple")).clone();
    iter.fold(first, |acc, &i| {
        if acc.is_zero() {
            acc
        } else {
            &acc * spec.at(i)
        }
    })
}

/// Per-order equality from full direct tensors; an independent check of the Fourier route.
pub fn equal_through_order_direct(
    f: &Signal,
    g: &Signal,
    max_order: usize,
    cap: u128,
) -> Result<Vec<bool>> {
    if f.group() != g.group() {
        return Err(Error::GroupMismatch(
            f.group().factors().to_vec(),
            g.group().factors().to_vec(),
        ));
    }
    (1..=max_order)
        .map(|n| Ok(autocorr_direct_capped(f, n, cap)? == autocorr_direct_capped(g, n, cap)?))
        .collect()
}

/// The smallest `a` in canonical order with `f(x) = g(x + a)` for all `x`.
pub fn is_translate(f: &Signal, g: &Signal) -> Option<Element> {
    if f.group() != g.group() {
        return None;
    }
    let group = f.group();
    let table = group.addition_table();
    let (fv, gv) = (f.values(), g.values());
    (0..group.order())
        .find(|&a| (0..group.order()).all(|x| fv[x] == gv[table.add(x, a)]))
        .map(|a| group.element(a))
}

/// `|E ∩ (E - t)|` style helper: indicator signal of a set of element indices.
pub fn indicator(group: &Group, members: &[usize]) -> Signal {
    let mut values = vec![Rational::zero(); group.order()];
    for &m in members {
        values[m] = Rational::one();
    }
    Signal::new(group.clone(), values).expect("sized to the group")
}
