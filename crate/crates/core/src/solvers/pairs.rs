use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::geometry::{IntFrame, Length};

/// All point pairs sorted by length and grouped into equal-length classes.
///
/// Equality is exact for norms with keys; otherwise lengths are grouped by
/// identical float values.
pub(crate) struct PairOrder {
    pub pairs: Vec<(u32, u32)>,
    /// Exclusive end of each group in `pairs`.
    pub group_end: Vec<usize>,
    /// Length of each group.
    pub lengths: Vec<Length>,
}

enum Keys {
    Small(Vec<u128>),
    Big(Vec<BigInt>),
    Float(Vec<f64>),
}

impl PairOrder {
    pub fn new(frame: &IntFrame) -> PairOrder {
        let n = frame.len();
        let all: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|i| (i + 1..n as u32).map(move |j| (i, j)))
            .collect();
        Self::from_pairs(frame, all)
    }

    pub fn from_pairs(frame: &IntFrame, mut pairs: Vec<(u32, u32)>) -> PairOrder {
        let keys = if frame.norm().is_exact() {
            let big: Vec<BigInt> = pairs
                .par_iter()
                .map(|&(i, j)| frame.key(i as usize, j as usize).expect("exact norm"))
                .collect();
            let small: Option<Vec<u128>> = big.par_iter().map(|k| k.to_u128()).collect();
            match small {
                Some(s) => Keys::Small(s),
                None => Keys::Big(big),
            }
        } else {
            Keys::Float(
                pairs
                    .par_iter()
                    .map(|&(i, j)| frame.dist(i as usize, j as usize))
                    .collect(),
            )
        };
        let mut idx: Vec<usize> = (0..pairs.len()).collect();
        let cmp = |a: &usize, b: &usize| -> Ordering {
            let by_key = match &keys {
                Keys::Small(k) => k[*a].cmp(&k[*b]),
                Keys::Big(k) => k[*a].cmp(&k[*b]),
                Keys::Float(k) => k[*a].total_cmp(&k[*b]),
            };
            by_key.then_with(|| pairs[*a].cmp(&pairs[*b]))
        };
        idx.par_sort_unstable_by(cmp);
        let same = |a: usize, b: usize| match &keys {
            Keys::Small(k) => k[a] == k[b],
            Keys::Big(k) => k[a] == k[b],
            Keys::Float(k) => k[a] == k[b],
        };
        let mut group_end = Vec::new();
        let mut lengths = Vec::new();
        for (pos, &e) in idx.iter().enumerate() {
            if pos + 1 == idx.len() || !same(e, idx[pos + 1]) {
                group_end.push(pos + 1);
                let (i, j) = pairs[e];
                lengths.push(frame.length(i as usize, j as usize));
            }
        }
        let sorted: Vec<(u32, u32)> = idx.iter().map(|&e| pairs[e]).collect();
        pairs = sorted;
        PairOrder {
            pairs,
            group_end,
            lengths,
        }
    }

    pub fn groups(&self) -> usize {
        self.group_end.len()
    }

    /// Pairs of length at most that of group `g`.
    pub fn prefix(&self, g: usize) -> &[(u32, u32)] {
        &self.pairs[..self.group_end[g]]
    }

    /// Pairs in group `g` only.
    pub fn group(&self, g: usize) -> &[(u32, u32)] {
        let start = if g == 0 { 0 } else { self.group_end[g - 1] };
        &self.pairs[start..self.group_end[g]]
    }

    /// Number of groups whose length is `≤ bound`.
    pub fn groups_within(&self, bound: &Length) -> usize {
        self.lengths.partition_point(|l| l.le(bound))
    }

    /// Smallest `g` such that `base` plus all pairs of groups `0..g`
    /// satisfies `pred` (`0` meaning no pair is needed); `None` when even
    /// all pairs do not suffice.
    pub fn smallest_prefix<P>(&self, n: usize, base: &[(usize, usize)], pred: P) -> Option<usize>
    where
        P: Fn(&[Vec<usize>]) -> bool,
    {
        let test = |g: usize| {
            let mut adj = vec![Vec::new(); n];
            for &(a, b) in base {
                adj[a].push(b);
                adj[b].push(a);
            }
            let upto = if g == 0 { 0 } else { self.group_end[g - 1] };
            for &(a, b) in &self.pairs[..upto] {
                adj[a as usize].push(b as usize);
                adj[b as usize].push(a as usize);
            }
            pred(&adj)
        };
        let total = self.groups();
        if !test(total) {
            return None;
        }
        let (mut lo, mut hi) = (0, total);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if test(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }
}
