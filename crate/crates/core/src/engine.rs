//! Inductive computation of `Intersecting(d, r, s)` and its refinements.
//!
//! A tuple `II ∈ Subsets(r, n, s)` is intersecting iff `edim II ≥ 0` and
//! `edim(II JJ) ≥ edim JJ` for every `JJ ∈ Intersecting⁰(d, r, s)`,
//! `d ∈ [r−1]`. The same statement holds inside the `σ`-stable tuples with
//! `σ`-stable test sets, so every table is keyed by a cycle type.
//!
//! Level `r` (all tuples of size `r`, for every ambient `n`) depends on the
//! tables `(d, r)` for `d < r`. For `JJ` with `edim JJ = 0` the inequality
//! reads `T_JJ(Γ(II)) ≤ d(n − r)`, which is what the inner loop evaluates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::TableCache;
use crate::combinat::{gamma_values, CycleType, Subset, SubsetTuple};
use crate::error::{HornError, Result};
use crate::schubert::{IntersectionKind, SchubertCalculator};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TableKey {
    pub d: u32,
    pub r: u32,
    pub cycle_type: CycleType,
}

impl TableKey {
    pub fn new(d: u32, r: u32, cycle_type: CycleType) -> Self {
        TableKey { d, r, cycle_type }
    }

    pub fn arity(&self) -> usize {
        self.cycle_type.arity()
    }
}

impl fmt::Display for TableKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Intersecting({},{},{})^[{}]",
            self.d,
            self.r,
            self.arity(),
            self.cycle_type
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum Provenance {
    ByRecursion,
    ByLr,
    CrossChecked,
}

/// Which of the equivalent test sets drives the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TestSet {
    Intersecting,
    #[default]
    Intersecting0,
    Intersecting00,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Recursion,
    /// Classify every candidate with the LR rule instead.
    Lr,
    /// Run both and fail on any disagreement.
    Both,
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub test_set: TestSet,
    pub backend: Backend,
    /// Compute the `⁰⁰` flag (point coefficient equal to 1) from the LR rule.
    pub flag_00: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            test_set: TestSet::Intersecting0,
            backend: Backend::Recursion,
            flag_00: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub tuple: SubsetTuple,
    pub in0: bool,
    /// `None` when the table was built without LR flags.
    pub in00: Option<bool>,
}

/// Published, immutable contents of `Intersecting(d, r, s)^σ`.
#[derive(Clone, Debug)]
pub struct HornTable {
    pub key: TableKey,
    pub entries: Vec<TableEntry>,
    pub provenance: Provenance,
}

impl HornTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, tuple: &SubsetTuple) -> bool {
        self.find(tuple).is_some()
    }

    pub fn find(&self, tuple: &SubsetTuple) -> Option<&TableEntry> {
        self.entries
            .binary_search_by(|e| e.tuple.cmp(tuple))
            .ok()
            .map(|i| &self.entries[i])
    }

    pub fn members(&self) -> impl Iterator<Item = &SubsetTuple> {
        self.entries.iter().map(|e| &e.tuple)
    }

    pub fn intersecting0(&self) -> impl Iterator<Item = &SubsetTuple> {
        self.entries.iter().filter(|e| e.in0).map(|e| &e.tuple)
    }

    /// Members flagged `⁰⁰`; empty when flags were not computed.
    pub fn intersecting00(&self) -> impl Iterator<Item = &SubsetTuple> {
        self.entries
            .iter()
            .filter(|e| e.in00 == Some(true))
            .map(|e| &e.tuple)
    }

    pub fn has_00_flags(&self) -> bool {
        self.entries.iter().all(|e| !e.in0 || e.in00.is_some())
    }

    pub fn count0(&self) -> usize {
        self.entries.iter().filter(|e| e.in0).count()
    }

    pub fn count00(&self) -> usize {
        self.entries.iter().filter(|e| e.in00 == Some(true)).count()
    }
}

/// All published tables plus a build log.
pub struct HornStore {
    tables: BTreeMap<TableKey, Arc<HornTable>>,
    log: Vec<String>,
    calculator: Arc<SchubertCalculator>,
}

impl Default for HornStore {
    fn default() -> Self {
        Self::new()
    }
}

impl HornStore {
    pub fn new() -> Self {
        HornStore {
            tables: BTreeMap::new(),
            log: Vec::new(),
            calculator: Arc::new(SchubertCalculator::new()),
        }
    }

    pub fn with_calculator(calculator: Arc<SchubertCalculator>) -> Self {
        HornStore {
            calculator,
            ..Self::new()
        }
    }

    pub fn calculator(&self) -> &SchubertCalculator {
        &self.calculator
    }

    pub fn log(&self) -> &[String] {
        &self.log
    }

    pub fn table(&self, d: u32, r: u32, cycle_type: &CycleType) -> Option<&Arc<HornTable>> {
        self.tables.get(&TableKey::new(d, r, cycle_type.clone()))
    }

    pub fn require(&self, d: u32, r: u32, cycle_type: &CycleType) -> Result<&Arc<HornTable>> {
        self.table(d, r, cycle_type)
            .ok_or(HornError::MissingDependency { d: d as usize, r: r as usize })
    }

    pub fn tables(&self) -> impl Iterator<Item = &Arc<HornTable>> {
        self.tables.values()
    }

    /// Publishes a table. Existing tables are never replaced.
    pub fn insert(&mut self, table: HornTable) -> Result<()> {
        for dep in 1..table.key.d {
            if self.table(dep, table.key.d, &table.key.cycle_type).is_none() {
                return Err(HornError::MissingDependency {
                    d: dep as usize,
                    r: table.key.d as usize,
                });
            }
        }
        self.log.push(format!(
            "published {} with {} members ({:?})",
            table.key,
            table.len(),
            table.provenance
        ));
        self.tables.entry(table.key.clone()).or_insert_with(|| Arc::new(table));
        Ok(())
    }

    /// Drops a table; for tests of dependency tracking.
    pub fn remove(&mut self, d: u32, r: u32, cycle_type: &CycleType) -> Option<Arc<HornTable>> {
        self.tables.remove(&TableKey::new(d, r, cycle_type.clone()))
    }

    /// Test tuples `JJ ∈ Subsets(d, r, s)^σ`, `d ∈ [r−1]`, for the Horn
    /// inequalities on tuples of size `r`.
    fn test_tuples(
        &self,
        r: u32,
        cycle_type: &CycleType,
        test_set: TestSet,
    ) -> Result<Vec<SubsetTuple>> {
        let mut out = Vec::new();
        for d in 1..r {
            let table = self.require(d, r, cycle_type)?;
            match test_set {
                TestSet::Intersecting => out.extend(table.members().cloned()),
                TestSet::Intersecting0 => out.extend(table.intersecting0().cloned()),
                TestSet::Intersecting00 => {
                    if !table.has_00_flags() {
                        return Err(HornError::MissingDependency {
                            d: d as usize,
                            r: r as usize,
                        });
                    }
                    out.extend(table.intersecting00().cloned())
                }
            }
        }
        Ok(out)
    }

    /// Horn criterion for `II`, evaluated through compositions:
    /// `edim II ≥ 0` and `edim(II JJ) ≥ edim JJ` for every test tuple.
    ///
    /// The `edim II ≥ 0` condition is the `d = r` case, `JJ = ([r])^s`.
    pub fn horn_check(
        &self,
        tuple: &SubsetTuple,
        cycle_type: &CycleType,
        test_set: TestSet,
    ) -> Result<bool> {
        if cycle_type.arity() != tuple.arity() {
            return Err(HornError::ArityMismatch {
                expected: cycle_type.arity(),
                got: tuple.arity(),
            });
        }
        if !tuple.is_stable_under(cycle_type) {
            return Err(HornError::NotSigmaStable(tuple.to_string()));
        }
        let r = tuple.size();
        let tests = self.test_tuples(r, cycle_type, test_set)?;
        if tuple.edim() < 0 {
            return Ok(false);
        }
        for jj in &tests {
            if tuple.compose(jj)?.edim() < jj.edim() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Builds the tables `(r, n)` for `n ∈ [r, n_max]`, skipping those
    /// already present.
    pub fn build_level(
        &mut self,
        r: u32,
        n_max: u32,
        cycle_type: &CycleType,
        options: BuildOptions,
    ) -> Result<()> {
        self.build_level_cached(r, n_max, cycle_type, options, None)
    }

    /// As [`build_level`](Self::build_level), reading tables from `cache`
    /// when present and writing freshly computed ones back.
    pub fn build_level_cached(
        &mut self,
        r: u32,
        n_max: u32,
        cycle_type: &CycleType,
        options: BuildOptions,
        cache: Option<&TableCache>,
    ) -> Result<()> {
        let needs_recursion = options.backend != Backend::Lr;
        let tests = if needs_recursion {
            Some(self.test_tuples(r, cycle_type, options.test_set)?)
        } else {
            None
        };
        for n in r..=n_max {
            if self.table(r, n, cycle_type).is_some() {
                continue;
            }
            let key = TableKey::new(r, n, cycle_type.clone());
            if let Some(cache) = cache {
                if let Some(table) = cache.load(&key)? {
                    if !options.flag_00 || table.has_00_flags() {
                        debug!("{key}: loaded from {}", cache.path(&key).display());
                        self.insert(table)?;
                        continue;
                    }
                }
            }
            let table = self.compute_table(r, n, cycle_type, tests.as_deref(), options)?;
            info!("{}: {} members", table.key, table.len());
            if let Some(cache) = cache {
                cache.save(&table)?;
            }
            self.insert(table)?;
        }
        Ok(())
    }

    /// Builds every table `(d, n)` with `d ≤ n ≤ n_max`.
    pub fn build_through(
        &mut self,
        n_max: u32,
        cycle_type: &CycleType,
        options: BuildOptions,
    ) -> Result<()> {
        self.build_through_cached(n_max, cycle_type, options, None)
    }

    pub fn build_through_cached(
        &mut self,
        n_max: u32,
        cycle_type: &CycleType,
        options: BuildOptions,
        cache: Option<&TableCache>,
    ) -> Result<()> {
        for r in 1..=n_max {
            self.build_level_cached(r, n_max, cycle_type, options, cache)?;
        }
        Ok(())
    }

    fn compute_table(
        &self,
        r: u32,
        n: u32,
        cycle_type: &CycleType,
        tests: Option<&[SubsetTuple]>,
        options: BuildOptions,
    ) -> Result<HornTable> {
        let key = TableKey::new(r, n, cycle_type.clone());
        let calc = &self.calculator;
        let (members, provenance) = match (tests, options.backend) {
            (Some(tests), Backend::Recursion) => {
                (recursion_members(r, n, cycle_type, tests), Provenance::ByRecursion)
            }
            (_, Backend::Lr) => (lr_members(r, n, cycle_type, calc), Provenance::ByLr),
            (Some(tests), Backend::Both) => {
                let by_recursion = recursion_members(r, n, cycle_type, tests);
                let by_lr = lr_members(r, n, cycle_type, calc);
                if by_recursion != by_lr {
                    return Err(HornError::InvalidTuple(format!(
                        "recursion and LR disagree on {key}: {} vs {} members",
                        by_recursion.len(),
                        by_lr.len()
                    )));
                }
                (by_recursion, Provenance::CrossChecked)
            }
            (None, _) => unreachable!("tests are computed unless the backend is LR"),
        };
        let entries = flag_entries(members, options.flag_00, calc);
        debug!("{key}: {} entries", entries.len());
        Ok(HornTable {
            key,
            entries,
            provenance,
        })
    }
}

/// Members by the LR rule, for cross-checks and the `Lr` backend.
fn lr_members(r: u32, n: u32, cycle_type: &CycleType, calc: &SchubertCalculator) -> Vec<SubsetTuple> {
    crate::combinat::stable_tuples(r, n, cycle_type)
        .into_par_iter()
        .filter(|t| calc.classify(t).is_intersecting())
        .collect()
}

fn flag_entries(
    members: Vec<SubsetTuple>,
    flag_00: bool,
    calc: &SchubertCalculator,
) -> Vec<TableEntry> {
    // The point coefficient is invariant under coordinate permutations, so it
    // is computed once per multiset of parts.
    let mut coeff_by_orbit: HashMap<SubsetTuple, bool> = HashMap::new();
    if flag_00 {
        let mut reps: Vec<SubsetTuple> = members
            .iter()
            .filter(|t| t.edim() == 0)
            .map(sorted_parts)
            .collect();
        reps.sort();
        reps.dedup();
        let flags: Vec<(SubsetTuple, bool)> = reps
            .into_par_iter()
            .map(|t| {
                let one = calc.point_coefficient(&t) == 1u32.into();
                (t, one)
            })
            .collect();
        coeff_by_orbit.extend(flags);
    }
    members
        .into_iter()
        .map(|tuple| {
            let in0 = tuple.edim() == 0;
            let in00 = if !in0 {
                flag_00.then_some(false)
            } else if flag_00 {
                Some(coeff_by_orbit[&sorted_parts(&tuple)])
            } else {
                None
            };
            TableEntry { tuple, in0, in00 }
        })
        .collect()
}

fn sorted_parts(t: &SubsetTuple) -> SubsetTuple {
    let mut parts = t.parts().to_vec();
    parts.sort();
    SubsetTuple::new(parts).expect("permuting parts keeps a valid tuple")
}

/// Precomputed data for the inner Horn loop at fixed `(r, n)`.
struct LevelKernel {
    s: usize,
    subsets: Vec<Subset>,
    codim: Vec<i64>,
    /// `sums[i * masks + m]` = `Σ_{j ∈ mask m} γ_{n−r}(I_i)(j)`.
    sums: Vec<i64>,
    masks: usize,
    /// Per test: bound `d(n−r)` and one mask id per coordinate.
    tests: Vec<(i64, Vec<usize>)>,
    budget: i64,
}

impl LevelKernel {
    fn new(r: u32, n: u32, s: usize, tests: &[SubsetTuple]) -> Self {
        let subsets = Subset::all(r, n);
        let shift = (n - r) as i64;
        let gammas: Vec<Vec<i64>> = subsets.iter().map(|i| gamma_values(i, shift)).collect();
        let codim = gammas.iter().map(|g| g.iter().sum()).collect();

        let mut mask_ids: HashMap<u64, usize> = HashMap::new();
        let mut compiled = Vec::with_capacity(tests.len());
        for jj in tests {
            let ids = jj
                .parts()
                .iter()
                .map(|p| {
                    let next = mask_ids.len();
                    *mask_ids.entry(p.mask()).or_insert(next)
                })
                .collect();
            compiled.push((jj.size() as i64 * shift, ids));
        }
        let mut by_id = vec![0u64; mask_ids.len()];
        for (&mask, &id) in &mask_ids {
            by_id[id] = mask;
        }
        let masks = by_id.len();
        let mut sums = vec![0i64; subsets.len() * masks];
        for (i, g) in gammas.iter().enumerate() {
            for (id, &mask) in by_id.iter().enumerate() {
                let mut total = 0;
                let mut rest = mask;
                while rest != 0 {
                    total += g[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                sums[i * masks + id] = total;
            }
        }
        LevelKernel {
            s,
            subsets,
            codim,
            sums,
            masks,
            tests: compiled,
            budget: r as i64 * shift,
        }
    }

    /// Horn inequalities for the tuple with coordinates `idx` (subset
    /// indices); `edim ≥ 0` is checked by the caller.
    #[inline]
    fn passes(&self, idx: &[usize]) -> bool {
        self.tests.iter().all(|(bound, ids)| {
            let mut total = 0;
            for l in 0..self.s {
                total += self.sums[idx[l] * self.masks + ids[l]];
            }
            total <= *bound
        })
    }

    fn tuple(&self, idx: &[usize]) -> SubsetTuple {
        SubsetTuple::new(idx.iter().map(|&i| self.subsets[i]).collect())
            .expect("parts share size and ambient")
    }
}

/// Members of `Intersecting(r, n, s)^σ` by the Horn recursion.
fn recursion_members(
    r: u32,
    n: u32,
    cycle_type: &CycleType,
    tests: &[SubsetTuple],
) -> Vec<SubsetTuple> {
    let kernel = LevelKernel::new(r, n, cycle_type.arity(), tests);
    let mut members = if cycle_type.is_identity() {
        symmetric_search(&kernel)
    } else {
        cycle_search(&kernel, cycle_type)
    };
    members.sort();
    members
}

/// Identity type: the criterion is invariant under coordinate permutations,
/// so only nondecreasing index sequences are tested and accepted ones are
/// expanded to their full orbit.
fn symmetric_search(kernel: &LevelKernel) -> Vec<SubsetTuple> {
    let s = kernel.s;
    let count = kernel.subsets.len();
    (0..count)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut idx = vec![first; s];
            let start = kernel.codim[first];
            if start <= kernel.budget {
                multiset_rec(kernel, &mut idx, 1, start, &mut found);
            }
            found.into_iter()
        })
        .collect()
}

fn multiset_rec(
    kernel: &LevelKernel,
    idx: &mut Vec<usize>,
    pos: usize,
    used: i64,
    found: &mut Vec<SubsetTuple>,
) {
    if pos == kernel.s {
        if kernel.passes(idx) {
            push_orbit(kernel, idx, found);
        }
        return;
    }
    for next in idx[pos - 1]..kernel.subsets.len() {
        let total = used + kernel.codim[next];
        if total > kernel.budget {
            continue;
        }
        idx[pos] = next;
        multiset_rec(kernel, idx, pos + 1, total, found);
    }
}

/// Pushes every distinct permutation of the nondecreasing sequence `idx`.
fn push_orbit(kernel: &LevelKernel, idx: &[usize], found: &mut Vec<SubsetTuple>) {
    let mut perm = idx.to_vec();
    loop {
        found.push(kernel.tuple(&perm));
        // Next lexicographic permutation of a multiset.
        let Some(i) = (0..perm.len() - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return;
        };
        let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// General type: one subset per cycle, propagated along the cycle.
fn cycle_search(kernel: &LevelKernel, cycle_type: &CycleType) -> Vec<SubsetTuple> {
    let cycles = cycle_type.cycles();
    let count = kernel.subsets.len();
    (0..count)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut idx = vec![0; kernel.s];
            let used = kernel.codim[first] * cycles[0].len() as i64;
            if used <= kernel.budget {
                for &l in &cycles[0] {
                    idx[l - 1] = first;
                }
                cycle_rec(kernel, &cycles, 1, used, &mut idx, &mut found);
            }
            found.into_iter()
        })
        .collect()
}

fn cycle_rec(
    kernel: &LevelKernel,
    cycles: &[Vec<usize>],
    c: usize,
    used: i64,
    idx: &mut Vec<usize>,
    found: &mut Vec<SubsetTuple>,
) {
    if c == cycles.len() {
        if kernel.passes(idx) {
            found.push(kernel.tuple(idx));
        }
        return;
    }
    let weight = cycles[c].len() as i64;
    for next in 0..kernel.subsets.len() {
        let total = used + weight * kernel.codim[next];
        if total > kernel.budget {
            continue;
        }
        for &l in &cycles[c] {
            idx[l - 1] = next;
        }
        cycle_rec(kernel, cycles, c + 1, total, idx, found);
    }
}

/// A disagreement between the recursion and the LR rule.
#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub tuple: SubsetTuple,
    pub by_recursion: bool,
    pub by_lr: IntersectionKind,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub key: TableKey,
    pub checked: usize,
    pub members: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the published table `(r, n)` with the LR classification of every
/// tuple in `Subsets(r, n, s)^σ`, including the `⁰` and `⁰⁰` flags.
pub fn cross_check(
    store: &HornStore,
    r: u32,
    n: u32,
    cycle_type: &CycleType,
) -> Result<CrossCheckReport> {
    let table = store.require(r, n, cycle_type)?;
    let calc = store.calculator();
    let candidates = crate::combinat::stable_tuples(r, n, cycle_type);
    let checked = candidates.len();
    let mut mismatches: Vec<Mismatch> = candidates
        .into_par_iter()
        .filter_map(|tuple| {
            let class = calc.classify(&tuple);
            let entry = table.find(&tuple);
            let detail = match entry {
                None if class.is_intersecting() => "missing from table",
                Some(_) if !class.is_intersecting() => "not intersecting by LR",
                Some(e) if e.in0 != class.is_intersecting0() => "in0 flag differs",
                Some(e) if e.in00.is_some_and(|f| f != class.is_intersecting00()) => {
                    "in00 flag differs"
                }
                _ => return None,
            };
            Some(Mismatch {
                by_recursion: entry.is_some(),
                by_lr: class.kind,
                detail: detail.to_string(),
                tuple,
            })
        })
        .collect();
    mismatches.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    Ok(CrossCheckReport {
        key: table.key.clone(),
        checked,
        members: table.len(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id3() -> CycleType {
        CycleType::identity(3)
    }

    fn cyc3() -> CycleType {
        CycleType::new(vec![3]).unwrap()
    }

    fn t(n: u32, parts: &[&[u32]]) -> SubsetTuple {
        SubsetTuple::from_elements(n, parts).unwrap()
    }

    fn built(n_max: u32, ct: &CycleType) -> HornStore {
        let mut store = HornStore::new();
        store.build_through(n_max, ct, BuildOptions::default()).unwrap();
        store
    }

    #[test]
    fn horn_check_examples() {
        let store = built(6, &id3());
        for n in 1..=6 {
            assert!(store
                .horn_check(&SubsetTuple::full(n, 3), &id3(), TestSet::Intersecting0)
                .unwrap());
        }
        assert!(!store
            .horn_check(&t(2, &[&[1], &[1], &[1]]), &id3(), TestSet::Intersecting0)
            .unwrap());
        let t246 = t(6, &[&[2, 4, 6], &[2, 4, 6], &[2, 4, 6]]);
        assert!(store.horn_check(&t246, &id3(), TestSet::Intersecting0).unwrap());
    }

    #[test]
    fn horn_check_errors() {
        let store = built(3, &id3());
        let four = t(4, &[&[1, 2], &[3, 4], &[3, 4]]);
        assert!(matches!(
            store.horn_check(&t(5, &[&[1, 2, 3, 4], &[1, 2, 3, 4], &[1, 2, 3, 4]]), &id3(), TestSet::Intersecting0),
            Err(HornError::MissingDependency { .. })
        ));
        assert!(store.horn_check(&four, &id3(), TestSet::Intersecting0).is_ok());
        assert!(matches!(
            store.horn_check(&four, &cyc3(), TestSet::Intersecting0),
            Err(HornError::NotSigmaStable(_))
        ));
    }

    #[test]
    fn small_tables_match_published_lists() {
        let store = built(3, &id3());
        let table = store.require(1, 2, &id3()).unwrap();
        let zero_zero: Vec<_> = table.intersecting00().cloned().collect();
        assert_eq!(
            zero_zero,
            vec![
                t(2, &[&[2], &[2], &[1]]),
                t(2, &[&[2], &[1], &[2]]),
                t(2, &[&[1], &[2], &[2]]),
            ]
            .into_iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect::<Vec<_>>()
        );
        let reps = |d| {
            let mut v: Vec<SubsetTuple> = store
                .require(d, 3, &id3())
                .unwrap()
                .intersecting00()
                .map(SubsetTuple::orbit_representative)
                .collect();
            v.sort_by(|a, b| a.cmp_lex(b));
            v.dedup();
            v
        };
        assert_eq!(reps(1), vec![t(3, &[&[1], &[3], &[3]]), t(3, &[&[2], &[2], &[3]])]);
        assert_eq!(
            reps(2),
            vec![t(3, &[&[1, 2], &[2, 3], &[2, 3]]), t(3, &[&[1, 3], &[1, 3], &[2, 3]])]
        );
    }

    #[test]
    fn symmetric_and_generic_search_agree() {
        let store = built(5, &id3());
        for r in 1..=5 {
            let tests = store.test_tuples(r, &id3(), TestSet::Intersecting0).unwrap();
            for n in r..=5 {
                let kernel = LevelKernel::new(r, n, 3, &tests);
                let mut a = symmetric_search(&kernel);
                let mut b = cycle_search(&kernel, &id3());
                a.sort();
                b.sort();
                assert_eq!(a, b, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn fast_kernel_matches_composition_route() {
        let store = built(5, &id3());
        for r in 1..=4 {
            for n in r..=5 {
                let table = store.require(r, n, &id3()).unwrap();
                for tuple in crate::combinat::stable_tuples(r, n, &id3()) {
                    let by_compose =
                        store.horn_check(&tuple, &id3(), TestSet::Intersecting0).unwrap();
                    assert_eq!(by_compose, table.contains(&tuple), "{tuple:?}");
                }
            }
        }
    }

    #[test]
    fn test_sets_give_the_same_tables() {
        let base = built(5, &id3());
        for test_set in [TestSet::Intersecting, TestSet::Intersecting00] {
            let mut other = HornStore::new();
            let options = BuildOptions {
                test_set,
                ..BuildOptions::default()
            };
            other.build_through(5, &id3(), options).unwrap();
            for table in base.tables() {
                let key = &table.key;
                let twin = other.require(key.d, key.r, &key.cycle_type).unwrap();
                assert_eq!(table.entries, twin.entries, "{key} with {test_set:?}");
            }
        }
    }

    #[test]
    fn missing_level_fails_deterministically() {
        let mut store = built(4, &id3());
        for d in 1..4 {
            let mut broken = HornStore::new();
            for table in store.tables() {
                if !(table.key.d == d && table.key.r == 4) && table.key.d < 4 {
                    broken.tables.insert(table.key.clone(), table.clone());
                }
            }
            for _ in 0..2 {
                let err = broken
                    .build_level(4, 4, &id3(), BuildOptions::default())
                    .unwrap_err();
                assert_eq!(err, HornError::MissingDependency { d: d as usize, r: 4 });
            }
        }
        assert!(store.remove(1, 4, &id3()).is_some());
        assert!(store.remove(4, 5, &id3()).is_none());
    }

    #[test]
    fn lr_and_both_backends() {
        let mut store = HornStore::new();
        let options = BuildOptions {
            backend: Backend::Both,
            ..BuildOptions::default()
        };
        store.build_through(5, &id3(), options).unwrap();
        assert!(store
            .tables()
            .all(|t| t.provenance == Provenance::CrossChecked));
        let mut lr = HornStore::new();
        let options = BuildOptions {
            backend: Backend::Lr,
            ..BuildOptions::default()
        };
        lr.build_through(4, &cyc3(), options).unwrap();
        assert_eq!(lr.require(2, 4, &cyc3()).unwrap().provenance, Provenance::ByLr);
    }

    #[test]
    fn cross_check_is_clean_at_small_scale() {
        let store = built(4, &id3());
        for r in 1..=4 {
            for n in r..=4 {
                let report = cross_check(&store, r, n, &id3()).unwrap();
                assert!(report.is_clean(), "{:?}", report.mismatches);
            }
        }
        let store = built(6, &cyc3());
        for r in 1..=6 {
            for n in r..=6 {
                assert!(cross_check(&store, r, n, &cyc3()).unwrap().is_clean());
            }
        }
    }
}
