//! Concurrent orbit memo and the parallel term matcher built on it.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use kmweyl_core::calogero::{MatchRow, MatchTable, OrbitGenerator, PotentialTerm};
use kmweyl_core::dynkin::CartanMatrix;
use kmweyl_core::roots::RootVector;
use kmweyl_core::weyl::{orbit, word_matrix, CoxeterMatrix};
use kmweyl_core::{BigInt, Error, Result};

type Key = (Vec<Vec<BigInt>>, RootVector, i64);

/// `(matrix, seed, k) → Cᵏ seed`, safe under concurrent insert-or-read.
#[derive(Debug, Default)]
pub struct OrbitCache {
    map: RwLock<HashMap<Key, RootVector>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl OrbitCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[(k, Cᵏ seed)]` for `lo ≤ k ≤ hi`, computing the window in one sweep
    /// when any entry is missing.
    pub fn orbit(&self, c: &CoxeterMatrix, seed: &RootVector, lo: i64, hi: i64) -> Result<Vec<(i64, RootVector)>> {
        if lo > hi {
            return Err(Error::InvalidBounds { lo, hi });
        }
        let mat = c.matrix().to_rows();
        {
            let map = self.map.read().expect("orbit cache poisoned");
            let mut key = (mat, seed.clone(), lo);
            let mut out = Vec::with_capacity((hi - lo + 1) as usize);
            for k in lo..=hi {
                key.2 = k;
                match map.get(&key) {
                    Some(r) => out.push((k, r.clone())),
                    None => break,
                }
            }
            if out.len() as i64 == hi - lo + 1 {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return Ok(out);
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let out = orbit(c, seed, lo, hi)?;
        let mut map = self.map.write().expect("orbit cache poisoned");
        let mat = c.matrix().to_rows();
        for (k, r) in &out {
            map.entry((mat.clone(), seed.clone(), *k)).or_insert_with(|| r.clone());
        }
        Ok(out)
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("orbit cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Same table as the sequential matcher: orbits are swept in parallel,
/// merged with the same tie-break, then terms are looked up in parallel.
pub fn match_terms_parallel(
    vd: &[PotentialTerm],
    gens: &[OrbitGenerator],
    k: &CartanMatrix,
    window: i64,
    cache: &OrbitCache,
) -> Result<MatchTable> {
    if window < 0 {
        return Err(Error::InvalidBounds { lo: -window, hi: window });
    }
    let mut matrices: BTreeMap<Vec<i64>, Arc<CoxeterMatrix>> = BTreeMap::new();
    for g in gens {
        if !matrices.contains_key(g.word.letters()) {
            matrices.insert(g.word.letters().to_vec(), Arc::new(word_matrix(&g.word, k)?));
        }
    }
    let orbits: Vec<Vec<(i64, RootVector)>> = gens
        .par_iter()
        .map(|g| cache.orbit(&matrices[g.word.letters()], &g.rep, -window, window))
        .collect::<Result<_>>()?;

    let mut index: BTreeMap<RootVector, (u64, usize, i64, i8)> = BTreeMap::new();
    for (i, orb) in orbits.iter().enumerate() {
        for (n, r) in orb {
            let c = r.canonical();
            let sign = if &c == r { 1 } else { -1 };
            let key = (n.unsigned_abs(), i, *n, sign);
            index.entry(c).and_modify(|e| *e = (*e).min(key)).or_insert(key);
        }
    }

    let hits: Vec<Option<MatchRow>> = vd
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let r = t.root()?;
            let c = r.canonical();
            let own = if &c == r { 1 } else { -1 };
            index.get(&c).map(|&(_, i, n, s)| MatchRow { vd_index: j, root: r.clone(), orbit: i, power: n, sign: s * own })
        })
        .collect();
    let mut table = MatchTable::default();
    for (j, h) in hits.into_iter().enumerate() {
        match h {
            Some(row) => table.rows.push(row),
            None => table.unmatched.push(j),
        }
    }
    Ok(table)
}
