//! Counting the graphs a system realizes with small natural-number labels.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{Pbs, PbsError};

/// Largest number of labelings `(B+1)^{kn}` the probe enumerates.
pub const MAX_PROBE_LABELINGS: u128 = 10_000_000;

/// Number of distinct loop-free labeled graphs on `n` vertices decoded from
/// labelings `[n-1]_0 → [B]_0^k`.
pub fn sign_pattern_probe(r: &Pbs, n: usize, bound: u64) -> Result<usize, PbsError> {
    let k = r.k();
    let d = (bound as u128 + 1).checked_pow(k as u32).unwrap_or(u128::MAX);
    let total = d.checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_PROBE_LABELINGS || n > 11 {
        return Err(PbsError::SizeLimit(format!("{total} labelings exceed the probe limit {MAX_PROBE_LABELINGS}")));
    }
    let d = d as usize;
    let vector = |mut i: usize| {
        let mut v = vec![0u64; k];
        for s in v.iter_mut().rev() {
            *s = (i % (bound as usize + 1)) as u64;
            i /= bound as usize + 1;
        }
        v
    };
    let labels: Vec<Vec<u64>> = (0..d).map(vector).collect();
    let adj: Vec<bool> = (0..d * d)
        .into_par_iter()
        .map(|p| r.accepts_nat(&labels[p / d], &labels[p % d]))
        .collect::<Result<_, _>>()?;
    // Bit (u·n + v) of a mask records the arc (u, v), u != v.
    let mask_of = |assign: &[usize]| {
        let mut m = 0u128;
        for u in 0..n {
            for v in 0..n {
                if u != v && adj[assign[u] * d + assign[v]] {
                    m |= 1u128 << (u * n + v);
                }
            }
        }
        m
    };
    if n == 0 {
        return Ok(1);
    }
    let sets: Vec<HashSet<u128>> = (0..d)
        .into_par_iter()
        .map(|first| {
            let mut seen = HashSet::new();
            let mut assign = vec![0usize; n];
            assign[0] = first;
            loop {
                seen.insert(mask_of(&assign));
                let Some(pos) = (1..n).rev().find(|&p| assign[p] + 1 < d) else { break };
                assign[pos] += 1;
                assign[pos + 1..].iter_mut().for_each(|a| *a = 0);
            }
            seen
        })
        .collect();
    let mut all = HashSet::new();
    for s in sets {
        all.extend(s);
    }
    Ok(all.len())
}
