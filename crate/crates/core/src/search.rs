//! Enumeration of all operator pairs (B1, B2) forming Rota-Baxter systems (or
//! merely associative descendent pairs) on a finite carrier: a naive oracle
//! for tiny carriers, pruned backtracking for the rest, and catalog
//! persistence.

use crate::rbs::{rbs_holds, OperatorMap};
use crate::tables::{is_bijective, is_hom, Kind, MulTable};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::time::Instant;
use thiserror::Error;

const UNSET: usize = usize::MAX;

/// Largest order the naive n^(2n) sweep accepts.
pub const NAIVE_MAX_ORDER: usize = 4;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {order} exceeds the naive enumeration cap {max}")]
    TooLarge { order: usize, max: usize },
    #[error("map {index} is not an automorphism of the carrier")]
    NotAutomorphism { index: usize },
    #[error("catalog digest does not match the carrier")]
    DigestMismatch,
}

/// What the catalog enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rbs,
    Associative,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
}

/// Search statistics. Wall time stays in memory only: catalogs must be
/// byte-identical across reruns and worker counts.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(skip)]
    pub wall_ms: u128,
}

/// An enumeration result: carrier digest, mode, completeness flag and the
/// lexicographically sorted entry list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Catalog {
    pub group: String,
    pub mode: Mode,
    pub complete: bool,
    pub entries: Vec<CatalogEntry>,
    pub stats: SearchStats,
}

impl Catalog {
    pub fn contains(&self, b1: &[usize], b2: &[usize]) -> bool {
        self.entries.iter().any(|e| e.b1 == b1 && e.b2 == b2)
    }
}

/// SHA-256 digest of order and table, hex-encoded.
pub fn carrier_digest(g: &MulTable) -> String {
    let mut hasher = Sha256::new();
    hasher.update(g.order().to_le_bytes());
    for &v in g.flat() {
        hasher.update(v.to_le_bytes());
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn entry_passes(g: &MulTable, b1: &[usize], b2: &[usize], mode: Mode) -> bool {
    let b1 = OperatorMap::new(b1.to_vec(), g.order()).expect("candidate maps are in range");
    let b2 = OperatorMap::new(b2.to_vec(), g.order()).expect("candidate maps are in range");
    match mode {
        Mode::Rbs => rbs_holds(g, &b1, &b2),
        Mode::Associative => crate::rbs::is_associative_descendent(g, &b1, &b2),
    }
}

fn next_map(m: &mut [usize], n: usize) -> bool {
    for i in (0..m.len()).rev() {
        m[i] += 1;
        if m[i] < n {
            return true;
        }
        m[i] = 0;
    }
    false
}

/// Exhaustive sweep of all n^n * n^n operator pairs against the full
/// verifier. Only tiny carriers are accepted.
pub fn enumerate_naive(g: &MulTable, mode: Mode) -> Result<Catalog, SearchError> {
    g.require_kind(Kind::Semigroup).expect("enumeration needs an associative carrier");
    let n = g.order();
    if n > NAIVE_MAX_ORDER {
        return Err(SearchError::TooLarge { order: n, max: NAIVE_MAX_ORDER });
    }
    let start = Instant::now();
    let mut entries = Vec::new();
    let mut nodes = 0u64;
    let mut b1 = vec![0usize; n];
    loop {
        let mut b2 = vec![0usize; n];
        loop {
            nodes += 1;
            if entry_passes(g, &b1, &b2, mode) {
                entries.push(CatalogEntry { b1: b1.clone(), b2: b2.clone() });
            }
            if !next_map(&mut b2, n) {
                break;
            }
        }
        if !next_map(&mut b1, n) {
            break;
        }
    }
    entries.sort();
    Ok(Catalog {
        group: carrier_digest(g),
        mode,
        complete: true,
        entries,
        stats: SearchStats { nodes, wall_ms: start.elapsed().as_millis() },
    })
}

/// Backtracking search state over the interleaved assignment order
/// B1(0), B2(0), B1(1), B2(1), ...
struct Dfs<'a> {
    g: &'a MulTable,
    mode: Mode,
    b1: Vec<usize>,
    b2: Vec<usize>,
    nodes: u64,
    quota: u64,
    exhausted: bool,
}

impl<'a> Dfs<'a> {
    fn new(g: &'a MulTable, mode: Mode, quota: u64) -> Self {
        let n = g.order();
        Dfs { g, mode, b1: vec![UNSET; n], b2: vec![UNSET; n], nodes: 0, quota, exhausted: false }
    }

    /// Every defining-identity (or associativity) instance whose inputs are
    /// fully determined under the current partial assignment must hold.
    fn consistent(&self) -> bool {
        let n = self.g.order();
        match self.mode {
            Mode::Rbs => {
                for a in 0..n {
                    let (x1, x2) = (self.b1[a], self.b2[a]);
                    if x1 == UNSET || x2 == UNSET {
                        continue;
                    }
                    for b in 0..n {
                        let arg = self.g.mul3(x1, b, x2);
                        let y1 = self.b1[b];
                        if y1 != UNSET {
                            let img = self.b1[arg];
                            if img != UNSET && self.g.mul(x1, y1) != img {
                                return false;
                            }
                        }
                        let y2 = self.b2[b];
                        if y2 != UNSET {
                            let img = self.b2[arg];
                            if img != UNSET && self.g.mul(y2, x2) != img {
                                return false;
                            }
                        }
                    }
                }
            }
            Mode::Associative => {
                for a in 0..n {
                    if self.b1[a] == UNSET || self.b2[a] == UNSET {
                        continue;
                    }
                    for b in 0..n {
                        if self.b1[b] == UNSET || self.b2[b] == UNSET {
                            continue;
                        }
                        let ab = self.g.mul3(self.b1[a], b, self.b2[a]);
                        if self.b1[ab] == UNSET || self.b2[ab] == UNSET {
                            continue;
                        }
                        for c in 0..n {
                            let bc = self.g.mul3(self.b1[b], c, self.b2[b]);
                            let lhs = self.g.mul3(self.b1[ab], c, self.b2[ab]);
                            let rhs = self.g.mul3(self.b1[a], bc, self.b2[a]);
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn slot(&mut self, depth: usize) -> &mut usize {
        let k = depth / 2;
        if depth % 2 == 0 {
            &mut self.b1[k]
        } else {
            &mut self.b2[k]
        }
    }

    fn dfs(&mut self, depth: usize, out: &mut Vec<CatalogEntry>) {
        let n = self.g.order();
        if self.exhausted {
            return;
        }
        if depth == 2 * n {
            out.push(CatalogEntry { b1: self.b1.clone(), b2: self.b2.clone() });
            return;
        }
        for v in 0..n {
            self.nodes += 1;
            if self.nodes > self.quota {
                self.exhausted = true;
                *self.slot(depth) = UNSET;
                return;
            }
            *self.slot(depth) = v;
            if self.consistent() {
                self.dfs(depth + 1, out);
                if self.exhausted {
                    *self.slot(depth) = UNSET;
                    return;
                }
            }
        }
        *self.slot(depth) = UNSET;
    }

    /// Runs the subtree rooted at the two top-level values; returns whether
    /// it was searched exhaustively.
    fn run_subtree(&mut self, v1: usize, v2: usize, out: &mut Vec<CatalogEntry>) -> bool {
        self.nodes += 2;
        self.b1[0] = v1;
        self.b2[0] = v2;
        if self.nodes <= self.quota && self.consistent() {
            self.dfs(2, out);
        }
        self.b1[0] = UNSET;
        self.b2[0] = UNSET;
        !self.exhausted
    }
}

/// Pruned backtracking enumeration. Assignments interleave B1(k), B2(k) so
/// that identity instances with a = b = k become checkable early; after each
/// assignment every fully determined instance is rechecked.
///
/// Work is split across `jobs` workers on the top-level (B1(0), B2(0)) pair
/// and merged by sorting, so the catalog is identical for every worker count.
/// The node budget is divided evenly across the top-level subtrees, which
/// keeps partial results deterministic as well; an exceeded budget yields a
/// catalog explicitly marked incomplete.
pub fn enumerate_pruned(g: &MulTable, mode: Mode, jobs: usize, budget: u64) -> Catalog {
    g.require_kind(Kind::Semigroup).expect("enumeration needs an associative carrier");
    let start = Instant::now();
    let n = g.order();
    let tasks: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let quota =
        if budget == u64::MAX { u64::MAX } else { (budget / tasks.len() as u64).max(1) };
    let jobs = jobs.max(1).min(tasks.len());

    let results: Vec<(Vec<CatalogEntry>, u64, bool)> = std::thread::scope(|scope| {
        let tasks = &tasks;
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                scope.spawn(move || {
                    let mut entries = Vec::new();
                    let mut nodes = 0u64;
                    let mut complete = true;
                    for idx in (w..tasks.len()).step_by(jobs) {
                        let (v1, v2) = tasks[idx];
                        let mut st = Dfs::new(g, mode, quota);
                        complete &= st.run_subtree(v1, v2, &mut entries);
                        nodes += st.nodes;
                    }
                    (entries, nodes, complete)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });

    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut nodes = 0u64;
    let mut complete = true;
    for (mut es, ns, cp) in results {
        entries.append(&mut es);
        nodes += ns;
        complete &= cp;
    }
    entries.sort();
    entries.dedup();
    Catalog {
        group: carrier_digest(g),
        mode,
        complete,
        entries,
        stats: SearchStats { nodes, wall_ms: start.elapsed().as_millis() },
    }
}

/// Keeps the lexicographically least representative of each orbit under
/// (B1, B2) ↦ (σ B1 σ^{-1}, σ B2 σ^{-1}). The identity automorphism is
/// always implicitly included; supplied maps are checked.
pub fn canonicalize(
    g: &MulTable,
    cat: &Catalog,
    automorphisms: &[OperatorMap],
) -> Result<Catalog, SearchError> {
    if carrier_digest(g) != cat.group {
        return Err(SearchError::DigestMismatch);
    }
    let mut sigmas: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (index, sigma) in automorphisms.iter().enumerate() {
        if !is_bijective(sigma.as_slice()) || !is_hom(sigma.as_slice(), g, g) {
            return Err(SearchError::NotAutomorphism { index });
        }
        let inv = sigma.inverse().expect("bijective map has an inverse");
        sigmas.push((sigma.as_slice().to_vec(), inv));
    }
    let n = g.order();
    let conjugate = |map: &[usize], sigma: &[usize], inv: &[usize]| -> Vec<usize> {
        (0..n).map(|a| sigma[map[inv[a]]]).collect()
    };
    let mut reps: Vec<CatalogEntry> = cat
        .entries
        .iter()
        .map(|e| {
            let mut least = e.clone();
            for (sigma, inv) in &sigmas {
                let cand = CatalogEntry {
                    b1: conjugate(&e.b1, sigma, inv),
                    b2: conjugate(&e.b2, sigma, inv),
                };
                if cand < least {
                    least = cand;
                }
            }
            least
        })
        .collect();
    reps.sort();
    reps.dedup();
    Ok(Catalog {
        group: cat.group.clone(),
        mode: cat.mode,
        complete: cat.complete,
        entries: reps,
        stats: cat.stats.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> MulTable {
        MulTable::cyclic(2)
    }

    fn z3() -> MulTable {
        MulTable::cyclic(3)
    }

    #[test]
    fn z2_census_is_five_known_pairs() {
        let cat = enumerate_naive(&z2(), Mode::Rbs).unwrap();
        let expected = vec![
            (vec![0, 0], vec![0, 0]),
            (vec![0, 0], vec![0, 1]),
            (vec![0, 0], vec![1, 0]),
            (vec![0, 1], vec![0, 0]),
            (vec![1, 0], vec![0, 0]),
        ];
        let got: Vec<(Vec<usize>, Vec<usize>)> =
            cat.entries.iter().map(|e| (e.b1.clone(), e.b2.clone())).collect();
        assert_eq!(got, expected);
        assert_eq!(cat.stats.nodes, 16);
        assert!(cat.complete);
    }

    #[test]
    fn z2_associative_mode_includes_identity_pair() {
        let cat = enumerate_naive(&z2(), Mode::Associative).unwrap();
        assert!(cat.contains(&[0, 1], &[0, 1]));
        let rbs = enumerate_naive(&z2(), Mode::Rbs).unwrap();
        assert!(!rbs.contains(&[0, 1], &[0, 1]));
    }

    #[test]
    fn trivial_group_has_one_entry() {
        let cat = enumerate_naive(&MulTable::trivial(), Mode::Rbs).unwrap();
        assert_eq!(cat.entries.len(), 1);
        let assoc = enumerate_naive(&MulTable::trivial(), Mode::Associative).unwrap();
        assert_eq!(assoc.entries.len(), 1);
        // on a trivial-center carrier every associative pair is already a
        // Rota-Baxter system
        assert_eq!(cat.entries, assoc.entries);
    }

    #[test]
    fn naive_rejects_large_carriers() {
        assert_eq!(
            enumerate_naive(&MulTable::symmetric(3), Mode::Rbs).unwrap_err(),
            SearchError::TooLarge { order: 6, max: NAIVE_MAX_ORDER }
        );
    }

    #[test]
    fn pruned_matches_naive_on_z2_and_z3() {
        for g in [z2(), z3()] {
            for mode in [Mode::Rbs, Mode::Associative] {
                let naive = enumerate_naive(&g, mode).unwrap();
                let pruned = enumerate_pruned(&g, mode, 1, u64::MAX);
                assert_eq!(naive.entries, pruned.entries);
                assert_eq!(naive.group, pruned.group);
            }
        }
    }

    #[test]
    fn universal_families_are_present() {
        for g in [z2(), z3(), MulTable::cyclic(4), MulTable::klein_four()] {
            let cat = enumerate_pruned(&g, Mode::Rbs, 2, u64::MAX);
            let n = g.order();
            let e = g.identity_unchecked();
            let id: Vec<usize> = (0..n).collect();
            let const_e = vec![e; n];
            assert!(cat.contains(&id, &const_e));
            assert!(cat.contains(&const_e, &id));
            assert!(cat.contains(&const_e, &const_e));
        }
    }

    #[test]
    fn every_entry_passes_its_verifier() {
        for mode in [Mode::Rbs, Mode::Associative] {
            let cat = enumerate_pruned(&z3(), mode, 1, u64::MAX);
            for e in &cat.entries {
                assert!(entry_passes(&z3(), &e.b1, &e.b2, mode));
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_the_catalog() {
        let g = MulTable::klein_four();
        let one = enumerate_pruned(&g, Mode::Rbs, 1, u64::MAX);
        let eight = enumerate_pruned(&g, Mode::Rbs, 8, u64::MAX);
        assert_eq!(one.entries, eight.entries);
        assert_eq!(one.stats.nodes, eight.stats.nodes);
    }

    #[test]
    fn budget_yields_incomplete_catalog() {
        let g = z3();
        let full = enumerate_pruned(&g, Mode::Rbs, 1, u64::MAX);
        let partial = enumerate_pruned(&g, Mode::Rbs, 1, 20);
        assert!(!partial.complete);
        assert!(partial.entries.iter().all(|e| full.entries.contains(e)));
        // identical partial catalog regardless of worker count
        let partial8 = enumerate_pruned(&g, Mode::Rbs, 8, 20);
        assert_eq!(partial.entries, partial8.entries);
    }

    #[test]
    fn canonicalize_z2_is_identity() {
        let cat = enumerate_naive(&z2(), Mode::Rbs).unwrap();
        let canon = canonicalize(&z2(), &cat, &[]).unwrap();
        assert_eq!(canon.entries, cat.entries);
        let canon =
            canonicalize(&z2(), &cat, &[OperatorMap::identity(2)]).unwrap();
        assert_eq!(canon.entries, cat.entries);
    }

    #[test]
    fn canonicalize_z3_with_negation() {
        let g = z3();
        let cat = enumerate_pruned(&g, Mode::Rbs, 1, u64::MAX);
        let sigma = OperatorMap::new(vec![0, 2, 1], 3).unwrap();
        let canon = canonicalize(&g, &cat, &[sigma.clone()]).unwrap();

        // oracle: conjugate every entry by σ, keep the least of each orbit
        let inv = sigma.inverse().unwrap();
        let conj = |m: &[usize]| -> Vec<usize> {
            (0..3).map(|a| sigma.apply(m[inv[a]])).collect()
        };
        let mut expected: Vec<CatalogEntry> = cat
            .entries
            .iter()
            .map(|e| {
                let cand = CatalogEntry { b1: conj(&e.b1), b2: conj(&e.b2) };
                if cand < *e {
                    cand
                } else {
                    e.clone()
                }
            })
            .collect();
        expected.sort();
        expected.dedup();
        assert_eq!(canon.entries, expected);
        assert!(canon.entries.len() < cat.entries.len());
    }

    #[test]
    fn canonicalize_rejects_non_automorphisms() {
        let cat = enumerate_naive(&z2(), Mode::Rbs).unwrap();
        let bad = OperatorMap::constant(2, 0);
        assert_eq!(
            canonicalize(&z2(), &cat, &[bad]).unwrap_err(),
            SearchError::NotAutomorphism { index: 0 }
        );
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        assert_eq!(carrier_digest(&z2()), carrier_digest(&z2()));
        assert_ne!(carrier_digest(&z2()), carrier_digest(&z3()));
    }
}
