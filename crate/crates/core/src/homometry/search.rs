use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{AdditionTable, Group};
use crate::autocorr::entry_i128;
use crate::error::{Error, Result};
use crate::spectral::Signal;

/// Largest number of signals [`brute_force_search`] will enumerate.
pub const SEARCH_GUARD: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchPair {
    pub f: Signal,
    pub g: Signal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub group: Group,
    pub bound: i64,
    pub max_order: usize,
    pub signals: u128,
    /// Signals that are the lexicographically smallest of their translates.
    pub translation_classes: usize,
    pub fingerprint_classes: usize,
    pub pairs: Vec<SearchPair>,
}

/// Smallest translate in lexicographic order.
fn canonical_translate(values: &[i64], table: &AdditionTable) -> Vec<i64> {
    let n = values.len();
    (0..n)
        .map(|a| (0..n).map(|x| values[table.add(x, a)]).collect::<Vec<_>>())
        .min()
        .expect("non-empty group")
}

/// Every integer signal with entries in `[-bound, bound]`, grouped by `ρ_1, ..., ρ_{max_order}`;
/// returns all pairs of distinct translation classes that share a fingerprint.
///
/// `ρ_n` is symmetric in its shift arguments, so only non-decreasing shift tuples enter the
/// fingerprint.
pub fn brute_force_search(group: &Group, bound: i64, max_order: usize) -> Result<SearchResult> {
    if bound < 0 {
        return Err(Error::Precondition(format!("bound must be non-negative, got {bound}")));
    }
    if max_order == 0 {
        return Err(Error::InvalidOrder);
    }
    let n = group.order();
    let width = (2 * bound + 1) as u128;
    let signals = width.checked_pow(n as u32).unwrap_or(u128::MAX);
    if signals > SEARCH_GUARD {
        return Err(Error::SearchTooLarge { signals, guard: SEARCH_GUARD });
    }
    let table = group.addition_table();
    let all: Vec<usize> = (0..n).collect();
    let shifts: Vec<Vec<usize>> = (1..=max_order)
        .flat_map(|order| non_decreasing(&all, order - 1))
        .collect();

    let decode = |mut idx: u128| -> Vec<i64> {
        let mut v = vec![0i64; n];
        for slot in v.iter_mut().rev() {
            *slot = (idx % width) as i64 - bound;
            idx /= width;
        }
        v
    };
    let fingerprints: Vec<(Vec<i64>, Vec<i128>)> = (0..signals)
        .into_par_iter()
        .filter_map(|idx| {
            let v = decode(idx);
            if canonical_translate(&v, &table) != v {
                return None;
            }
            let h: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
            let fp = shifts.iter().map(|t| entry_i128(&h, &table, t)).collect();
            Some((v, fp))
        })
        .collect();

    let translation_classes = fingerprints.len();
    let mut buckets: BTreeMap<Vec<i128>, Vec<Vec<i64>>> = BTreeMap::new();
    for (v, fp) in fingerprints {
        buckets.entry(fp).or_default().push(v);
    }
    let fingerprint_classes = buckets.len();
    let to_signal = |v: &[i64]| Signal::from_ints(group.clone(), v).expect("sized to the group");
    let mut pairs = Vec::new();
    for members in buckets.values() {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                pairs.push(SearchPair { f: to_signal(a), g: to_signal(b) });
            }
        }
    }
    pairs.sort_by(|p, q| (p.f.values(), p.g.values()).cmp(&(q.f.values(), q.g.values())));
    Ok(SearchResult {
        group: group.clone(),
        bound,
        max_order,
        signals,
        translation_classes,
        fingerprint_classes,
        pairs,
    })
}

fn non_decreasing(items: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; len];
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        match idx.iter().rposition(|&i| i + 1 < items.len()) {
            Some(p) => {
                let v = idx[p] + 1;
                for slot in &mut idx[p..] {
                    *slot = v;
                }
            }
            None => return out,
        }
    }
}
