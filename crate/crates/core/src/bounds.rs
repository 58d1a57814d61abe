//! Completeness-order bounds read off from a Fourier support set.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::abelian::{Character, Group};
use crate::error::{Error, Result};
use crate::homometry::factorize;

/// `c ≡ units[0] + ... (mod modulus)` with every entry coprime to the modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitsDecomposition {
    pub modulus: u64,
    pub target: u64,
    pub units: Vec<u64>,
}

impl UnitsDecomposition {
    /// Largest length allowed for this modulus.
    pub fn max_len(modulus: u64) -> usize {
        if modulus % 2 == 1 || modulus.is_power_of_two() {
            2
        } else {
            3
        }
    }

    pub fn is_valid(&self) -> bool {
        let n = self.modulus;
        !self.units.is_empty()
            && self.units.len() <= Self::max_len(n)
            && self.units.iter().all(|&u| u < n && u.gcd(&n) == 1)
            && self.units.iter().fold(0, |acc, &u| (acc + u) % n) == self.target % n
    }
}

fn is_unit(a: u64, n: u64) -> bool {
    a.gcd(&n) == 1
}

/// Solves `x ≡ residues[i] (mod moduli[i])` for pairwise coprime moduli.
fn crt(parts: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, q) in parts {
        let q = q as u128;
        // find t with x + m t ≡ r (mod q)
        let inv = mod_inverse((m % q) as i128, q as i128);
        let diff = ((r as i128 - x as i128) % q as i128 + q as i128) % q as i128;
        let t = (diff * inv).rem_euclid(q as i128) as u128;
        x += m * t;
        m *= q;
        x %= m;
    }
    x as u64
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Two units summing to `t`, for `t` even or `n` odd.
fn two_units(n: u64, t: u64) -> (u64, u64) {
    let mut a_parts = Vec::new();
    let mut b_parts = Vec::new();
    for (p, k) in factorize(n) {
        let q = p.pow(k);
        let local = t % q;
        let a = if p == 2 || is_unit((local + q - 1) % q, p) { 1 } else { 2 };
        a_parts.push((a % q, q));
        b_parts.push(((local + 2 * q - a) % q, q));
    }
    (crt(&a_parts), crt(&b_parts))
}

/// Writes `target` as a sum of at most three units modulo `modulus`.
///
/// Even residues split as `1 + (t - 1)` at each power of 2 and as `1 + (t - 1)` or `2 + (t - 2)`
/// at each odd prime power, glued by the Chinese remainder theorem. When `modulus` is odd every
/// residue is handled this way. An odd residue is a unit on its own when the modulus is a power
/// of 2, and otherwise is `1` plus an even residue.
pub fn units_sum_decompose(modulus: u64, target: i64) -> Result<UnitsDecomposition> {
    if modulus < 2 {
        return Err(Error::Precondition(format!("modulus must be at least 2, got {modulus}")));
    }
    let c = target.rem_euclid(modulus as i64) as u64;
    let units = if modulus % 2 == 1 || c.is_multiple_of(2) {
        let (a, b) = two_units(modulus, c);
        vec![a, b]
    } else if modulus.is_power_of_two() {
        vec![c]
    } else {
        let (a, b) = two_units(modulus, (c + modulus - 1) % modulus);
        vec![1, a, b]
    };
    Ok(UnitsDecomposition { modulus, target: c, units })
}

fn require_nonempty(set: &BTreeSet<Character>) -> Result<()> {
    if set.is_empty() {
        Err(Error::Precondition("support set is empty".into()))
    } else {
        Ok(())
    }
}

fn check_members(group: &Group, set: &BTreeSet<Character>) -> Result<()> {
    for c in set {
        group.check_coords(c.coords())?;
    }
    Ok(())
}

/// Smallest `v` such that every element of `⟨S⟩` is a product of between 1 and `v` elements
/// of `S`. The identity counts only when it is such a product.
pub fn min_cover_exponent(group: &Group, set: &BTreeSet<Character>) -> Result<usize> {
    require_nonempty(set)?;
    check_members(group, set)?;
    let table = group.addition_table();
    let idx = group.indices(set);
    let target = table.generated(&idx).iter().filter(|&&m| m).count();
    let mut power = vec![false; group.order()];
    for &s in &idx {
        power[s] = true;
    }
    let mut covered = power.clone();
    let mut v = 1;
    loop {
        if covered.iter().filter(|&&m| m).count() == target {
            return Ok(v);
        }
        power = table.sumset(&power, &idx);
        let before = covered.clone();
        for (c, &p) in covered.iter_mut().zip(&power) {
            *c |= p;
        }
        v += 1;
        // in a finite group the powers of S exhaust ⟨S⟩, so each round must grow the cover
        assert!(covered != before, "cover layering stalled");
    }
}

/// Smallest even `v` for which `S^v` is a subgroup of index 2 in `⟨S⟩`.
pub fn index2_exponent(group: &Group, set: &BTreeSet<Character>) -> Result<Option<usize>> {
    require_nonempty(set)?;
    check_members(group, set)?;
    let table = group.addition_table();
    let idx = group.indices(set);
    let h = table.generated(&idx).iter().filter(|&&m| m).count();
    if h % 2 == 1 {
        return Ok(None);
    }
    let mut power = vec![false; group.order()];
    power[0] = true;
    let mut history: Vec<Vec<bool>> = vec![power.clone()];
    for v in 1..=h {
        power = table.sumset(&power, &idx);
        history.push(power.clone());
        if v % 2 == 1 {
            continue;
        }
        let members: Vec<usize> = (0..power.len()).filter(|&i| power[i]).collect();
        if members.len() * 2 == h && is_closed(&table, &power, &members) {
            return Ok(Some(v));
        }
        if history[v - 2] == power {
            break;
        }
    }
    Ok(None)
}

fn is_closed(table: &crate::abelian::AdditionTable, mask: &[bool], members: &[usize]) -> bool {
    members
        .iter()
        .all(|&a| members.iter().all(|&b| mask[table.add(a, b)]))
}

/// Coordinates with respect to a fixed invariant-factor decomposition `Z_{d_1} ⊕ ... ⊕ Z_{d_r}`,
/// `d_1 | ... | d_r`.
///
/// When the factors already form such a chain the coordinates are unchanged. Otherwise each
/// factor is split into prime-power parts, the parts for each prime are sorted by size and
/// aligned with the end of the chain, and the slots are recombined by CRT.
pub(crate) struct InvariantCoordinates {
    factors: Vec<usize>,
    invariant: Vec<usize>,
    identity: bool,
    /// For each slot, the (factor index, prime power) pieces feeding into it.
    slots: Vec<Vec<(usize, usize)>>,
}

impl InvariantCoordinates {
    pub(crate) fn new(group: &Group) -> Self {
        let factors = group.factors().to_vec();
        let invariant = group.invariant_factors().to_vec();
        let nontrivial: Vec<usize> = factors.iter().copied().filter(|&f| f > 1).collect();
        let identity = nontrivial == invariant && nontrivial.len() == factors.len();
        let r = invariant.len();
        let mut by_prime: std::collections::BTreeMap<u64, Vec<(usize, usize)>> = Default::default();
        for (i, &f) in factors.iter().enumerate() {
            for (p, k) in factorize(f as u64) {
                by_prime.entry(p).or_default().push((p.pow(k) as usize, i));
            }
        }
        let mut slots = vec![Vec::new(); r];
        for pieces in by_prime.values_mut() {
            pieces.sort();
            let offset = r - pieces.len();
            for (j, &(q, i)) in pieces.iter().enumerate() {
                slots[offset + j].push((i, q));
            }
        }
        Self { factors, invariant, identity, slots }
    }

    pub(crate) fn invariant_factors(&self) -> &[usize] {
        &self.invariant
    }

    pub(crate) fn map(&self, coords: &[usize]) -> Vec<usize> {
        if self.identity {
            return coords.to_vec();
        }
        debug_assert_eq!(coords.len(), self.factors.len());
        self.slots
            .iter()
            .map(|pieces| {
                let parts: Vec<(u64, u64)> = pieces
                    .iter()
                    .map(|&(i, q)| ((coords[i] % q) as u64, q as u64))
                    .collect();
                crt(&parts) as usize
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound9r {
    pub invariant_factors: Vec<usize>,
    pub r: usize,
    /// Invariant factors that are odd or a power of 2.
    pub k: usize,
    pub bound: usize,
}

/// `3(3r - k)` when `S` contains every basis character of the invariant-factor decomposition.
pub fn bound_9r(group: &Group, set: &BTreeSet<Character>) -> Result<Option<Bound9r>> {
    check_members(group, set)?;
    let iso = InvariantCoordinates::new(group);
    let invariant = iso.invariant_factors().to_vec();
    let r = invariant.len();
    let mapped: BTreeSet<Vec<usize>> = set.iter().map(|c| iso.map(c.coords())).collect();
    let has_basis = (0..r).all(|j| {
        let mut e = vec![0; r];
        e[j] = 1;
        mapped.contains(&e)
    });
    if !has_basis {
        return Ok(None);
    }
    let k = invariant
        .iter()
        .filter(|&&d| d % 2 == 1 || d.is_power_of_two())
        .count();
    Ok(Some(Bound9r {
        bound: 3 * (3 * r - k),
        invariant_factors: invariant,
        r,
        k,
    }))
}

/// Every bound whose hypothesis holds for `S`, with the cited cyclic constant kept separate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub group: Group,
    pub support: Vec<Character>,
    pub generated_subgroup_size: usize,
    pub ak_v: usize,
    pub ak_bound: usize,
    pub index2_v: Option<usize>,
    pub index2_bound: Option<usize>,
    /// An element of `S` in the nontrivial coset of `S^v`.
    pub index2_special: Option<Character>,
    pub bound_9r: Option<Bound9r>,
    /// Literature value for cyclic groups, not derived here: 4 for odd order, else 6.
    pub cited_gm_bound: Option<usize>,
    pub notes: Vec<String>,
}

pub fn bounds_report(group: &Group, set: &BTreeSet<Character>) -> Result<BoundsReport> {
    let ak_v = min_cover_exponent(group, set)?;
    let index2_v = index2_exponent(group, set)?;
    let index2_special = index2_v.and_then(|v| {
        let power = group.product_power_set(set, v);
        set.iter().find(|c| !power.contains(*c)).cloned()
    });
    let b9r = bound_9r(group, set)?;
    let cited_gm_bound = group
        .is_cyclic()
        .then(|| if group.order() % 2 == 1 { 4 } else { 6 });
    let mut notes = vec![format!("every element of <S> is a product of at most {ak_v} elements of S")];
    match index2_v {
        Some(v) => notes.push(format!("S^{v} is an index 2 subgroup of <S>")),
        None => notes.push("no even power of S is an index 2 subgroup of <S>".into()),
    }
    if b9r.is_none() {
        notes.push("S does not contain the invariant-factor basis characters".into());
    }
    if cited_gm_bound.is_some() {
        notes.push("cited_gm_bound is quoted from the literature for cyclic groups".into());
    }
    Ok(BoundsReport {
        group: group.clone(),
        support: set.iter().cloned().collect(),
        generated_subgroup_size: group.subgroup_generated(set).len(),
        ak_v,
        ak_bound: 3 * ak_v,
        index2_v,
        index2_bound: index2_v.map(|v| 3 * v),
        index2_special,
        bound_9r: b9r,
        cited_gm_bound,
        notes,
    })
}

/// Characters `e_u` of `Z_N` with `u` a unit.
pub fn unit_characters(n: usize) -> BTreeSet<Character> {
    (0..n)
        .filter(|&u| n > 1 && u.gcd(&n) == 1)
        .map(|u| Character(vec![u]))
        .collect()
}
